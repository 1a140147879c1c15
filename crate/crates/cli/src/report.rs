//! The JSON report envelope shared by every command.

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};
use simiscalc::theorems::WitnessReport;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Timings {
    pub total_ms: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    /// SHA-256 of the input bytes, hex encoded.
    pub input_digest: String,
    pub result: Value,
    pub certificates: Vec<WitnessReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timings: Option<Timings>,
}

pub fn digest(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// What a command hands back: the structured result, its human-readable
/// rendering, any witness certificates and the process exit code.
pub struct Output {
    pub result: Value,
    pub pretty: String,
    pub certificates: Vec<WitnessReport>,
    pub exit: u8,
}

impl Output {
    pub fn new(result: impl Serialize, pretty: String) -> anyhow::Result<Self> {
        Ok(Output {
            result: serde_json::to_value(result)?,
            pretty,
            certificates: Vec::new(),
            exit: 0,
        })
    }
}
