//! Executable classification predicates for support-2 ideals.
//!
//! Each predicate checks its hypotheses on a [`Support2Profile`], returns an
//! explicit inapplicable verdict when they fail, and otherwise states its
//! predictions together with witness monomials whose membership claims are
//! re-verified by direct computation. [`cross_check`] compares predictions
//! against bounded direct computation.

mod predicates;
mod witness;

use serde::{Deserialize, Serialize};

use crate::decomposition::PrimeSummary;
use crate::error::Result;
use crate::ideal::MonomialIdeal;
use crate::monomial::Monomial;
use crate::symbolic;

pub use predicates::{
    multigen_second_power, prop_c3_maximal, prop_girth6, prop_girth6_any, prop_leaf_embedded, prop_leaf_embedded_any,
    thm_cycle_classification, thm_support2_simis, thm_whisker_cm, thm_whisker_second_power,
};
pub use witness::{
    witness_c4_weighting, witness_cycle_weighting, witness_multigen, witness_nonuniform,
    witness_small_cycle_multigen,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MembershipKind {
    /// `I^(s)`
    Symbolic,
    /// `I^s`
    Ordinary,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MembershipClaim {
    pub kind: MembershipKind,
    pub degree: u32,
}

impl MembershipClaim {
    pub fn symbolic(degree: u32) -> Self {
        MembershipClaim {
            kind: MembershipKind::Symbolic,
            degree,
        }
    }

    pub fn ordinary(degree: u32) -> Self {
        MembershipClaim {
            kind: MembershipKind::Ordinary,
            degree,
        }
    }

    /// Decides the claim by recomputing the relevant power from scratch.
    pub fn holds_for(&self, ideal: &MonomialIdeal, m: &Monomial) -> Result<bool> {
        match self.kind {
            MembershipKind::Symbolic => symbolic::symbolic_power_contains(ideal, self.degree, m),
            MembershipKind::Ordinary => Ok(ideal.power(self.degree)?.contains_monomial(m)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessReport {
    /// Which construction produced the monomial.
    pub construction: String,
    pub monomial: Monomial,
    pub rendered: String,
    pub claimed_in: MembershipClaim,
    pub claimed_not_in: MembershipClaim,
    pub verified: bool,
}

impl WitnessReport {
    pub fn check(
        construction: &str,
        ideal: &MonomialIdeal,
        monomial: Monomial,
        claimed_in: MembershipClaim,
        claimed_not_in: MembershipClaim,
    ) -> Result<Self> {
        let verified = claimed_in.holds_for(ideal, &monomial)? && !claimed_not_in.holds_for(ideal, &monomial)?;
        Ok(WitnessReport {
            construction: construction.to_string(),
            rendered: monomial.to_string(),
            monomial,
            claimed_in,
            claimed_not_in,
            verified,
        })
    }

    /// `f ∈ I^(s) \ I^s`
    pub fn symbolic_gap(construction: &str, ideal: &MonomialIdeal, f: Monomial, s: u32) -> Result<Self> {
        WitnessReport::check(
            construction,
            ideal,
            f,
            MembershipClaim::symbolic(s),
            MembershipClaim::ordinary(s),
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Claim {
    /// `I^(s) = I^s` for every `s`.
    Simis,
    /// `I^(2) = I^2`.
    SecondPowerEqual,
    NoEmbeddedPrimes,
    Unmixed,
    CohenMacaulay,
    /// The maximal ideal of the variables in play is associated.
    MaximalIdealAssociated,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Prediction {
    pub claim: Claim,
    pub value: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Finding {
    pub name: String,
    pub value: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Applicable,
    Inapplicable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremVerdict {
    pub predicate: String,
    pub status: Status,
    /// Hypotheses in the order they were checked; evaluation stops at the
    /// first failure.
    pub hypotheses: Vec<Finding>,
    pub reason: Option<String>,
    pub findings: Vec<Finding>,
    pub predictions: Vec<Prediction>,
    pub certificates: Vec<WitnessReport>,
    pub notes: Vec<String>,
}

impl TheoremVerdict {
    pub(crate) fn new(predicate: &str) -> Self {
        TheoremVerdict {
            predicate: predicate.to_string(),
            status: Status::Applicable,
            hypotheses: Vec::new(),
            reason: None,
            findings: Vec::new(),
            predictions: Vec::new(),
            certificates: Vec::new(),
            notes: Vec::new(),
        }
    }

    /// Records a hypothesis; returns whether it held.
    pub(crate) fn hypothesis(&mut self, name: &str, holds: bool) -> bool {
        self.hypotheses.push(Finding {
            name: name.to_string(),
            value: holds,
        });
        if !holds && self.status == Status::Applicable {
            self.status = Status::Inapplicable;
            self.reason = Some(format!("hypothesis failed: {name}"));
        }
        holds
    }

    pub(crate) fn inapplicable(mut self, reason: impl Into<String>) -> Self {
        self.status = Status::Inapplicable;
        self.reason = Some(reason.into());
        self
    }

    pub(crate) fn finding(&mut self, name: &str, value: bool) {
        self.findings.push(Finding {
            name: name.to_string(),
            value,
        });
    }

    pub(crate) fn predict(&mut self, claim: Claim, value: bool) {
        self.predictions.push(Prediction { claim, value });
    }

    pub fn is_applicable(&self) -> bool {
        self.status == Status::Applicable
    }

    pub fn prediction(&self, claim: Claim) -> Option<bool> {
        self.predictions.iter().find(|p| p.claim == claim).map(|p| p.value)
    }

    pub fn all_certificates_verified(&self) -> bool {
        self.certificates.iter().all(|c| c.verified)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Agrees,
    Disagrees,
    /// Bounded computation cannot confirm or refute the prediction.
    Inconclusive,
    /// The claim is certified by the theorem only.
    NotComputed,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckedPrediction {
    pub claim: Claim,
    pub predicted: bool,
    pub observed: Option<bool>,
    pub outcome: Outcome,
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossCheck {
    pub predicate: String,
    pub s_max: u32,
    pub checks: Vec<CheckedPrediction>,
    pub certificates_verified: bool,
}

impl CrossCheck {
    pub fn has_discrepancy(&self) -> bool {
        !self.certificates_verified || self.checks.iter().any(|c| c.outcome == Outcome::Disagrees)
    }
}

fn compare(predicted: bool, observed: bool) -> Outcome {
    if predicted == observed {
        Outcome::Agrees
    } else {
        Outcome::Disagrees
    }
}

/// Compares each prediction with direct computation. Simis claims are
/// checked for `s <= s_max` only.
pub fn cross_check(verdict: &TheoremVerdict, ideal: &MonomialIdeal, s_max: u32) -> Result<CrossCheck> {
    let mut checks = Vec::with_capacity(verdict.predictions.len());
    let mut summary: Option<PrimeSummary> = None;
    for p in &verdict.predictions {
        let mut detail = None;
        let (observed, outcome) = match p.claim {
            Claim::Simis => match symbolic::first_simis_failure(ideal, s_max)? {
                Some((s, w)) => {
                    detail = Some(format!("I^({s}) != I^{s}, witness {w}"));
                    (Some(false), compare(p.value, false))
                }
                None if p.value => {
                    detail = Some(format!("bounded: equal for s <= {s_max}"));
                    (Some(true), Outcome::Agrees)
                }
                None => {
                    detail = Some(format!("bounded: no failure found for s <= {s_max}"));
                    (None, Outcome::Inconclusive)
                }
            },
            Claim::SecondPowerEqual => {
                let v = symbolic::is_simis_in_degree(ideal, 2)?;
                if let Some(w) = &v.witness {
                    detail = Some(format!("witness {w}"));
                }
                (Some(v.holds), compare(p.value, v.holds))
            }
            Claim::CohenMacaulay => {
                detail = Some("certified by theorem equivalence only".to_string());
                (None, Outcome::NotComputed)
            }
            claim => {
                if summary.is_none() {
                    summary = Some(PrimeSummary::of(ideal)?);
                }
                let s = summary.as_ref().expect("just computed");
                let observed = match claim {
                    Claim::NoEmbeddedPrimes => s.embedded.is_empty(),
                    Claim::Unmixed => s.is_unmixed(),
                    Claim::MaximalIdealAssociated => {
                        let used = ideal.used_variables();
                        s.associated.iter().any(|q| q.vars() == used.as_slice())
                    }
                    _ => unreachable!("handled above"),
                };
                (Some(observed), compare(p.value, observed))
            }
        };
        checks.push(CheckedPrediction {
            claim: p.claim,
            predicted: p.value,
            observed,
            outcome,
            detail,
        });
    }
    Ok(CrossCheck {
        predicate: verdict.predicate.clone(),
        s_max,
        checks,
        certificates_verified: verdict.all_certificates_verified(),
    })
}
