//! Seeded fuzz campaigns: random support-2 instances per family, every
//! family predicate evaluated and cross-checked against direct computation.
//!
//! Each trial owns a ChaCha stream derived from `(seed, trial)`, so a run is
//! reproducible from its configuration regardless of scheduling. Trials run
//! in parallel and are merged in trial order.

use std::fmt;
use std::str::FromStr;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::graph::SimpleGraph;
use crate::ideal::MonomialIdeal;
use crate::monomial::{Exp, Monomial};
use crate::support2::{fold_identity_holds, Support2Profile};
use crate::theorems::{self, cross_check, CrossCheck, TheoremVerdict};

/// Resampling budget per trial when a predicate is required to apply.
pub const MAX_ATTEMPTS: usize = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    RandomSupport2,
    Cycle,
    Whisker,
    C3,
}

impl Family {
    pub fn predicates(self) -> &'static [&'static str] {
        match self {
            Family::RandomSupport2 => &[
                "multigen-second-power",
                "support2-simis",
                "leaf-edge-embedded",
                "girth-six-embedded",
            ],
            Family::Cycle => &["cycle-classification", "girth-six-embedded"],
            Family::Whisker => &["whisker-cohen-macaulay", "whisker-second-power", "leaf-edge-embedded"],
            Family::C3 => &["c3-maximal-ideal", "support2-simis"],
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::RandomSupport2 => "random-support2",
            Family::Cycle => "cycle",
            Family::Whisker => "whisker",
            Family::C3 => "c3",
        })
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "random-support2" => Ok(Family::RandomSupport2),
            "cycle" => Ok(Family::Cycle),
            "whisker" => Ok(Family::Whisker),
            "c3" => Ok(Family::C3),
            other => Err(Error::Domain(format!("unknown fuzz family '{other}'"))),
        }
    }
}

pub fn run_predicate(name: &str, p: &Support2Profile) -> Result<TheoremVerdict> {
    match name {
        "multigen-second-power" => theorems::multigen_second_power(p),
        "support2-simis" => theorems::thm_support2_simis(p),
        "leaf-edge-embedded" => theorems::prop_leaf_embedded_any(p),
        "girth-six-embedded" => theorems::prop_girth6_any(p),
        "cycle-classification" => theorems::thm_cycle_classification(p),
        "whisker-cohen-macaulay" => theorems::thm_whisker_cm(p),
        "whisker-second-power" => theorems::thm_whisker_second_power(p),
        "c3-maximal-ideal" => theorems::prop_c3_maximal(p),
        other => Err(Error::Domain(format!("unknown predicate '{other}'"))),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FuzzConfig {
    pub family: Family,
    pub trials: usize,
    pub seed: u64,
    pub max_exponent: Exp,
    pub max_alpha: usize,
    /// Vertex count `n`, or core size `m` for the whisker family.
    pub size: usize,
    pub s_max: u32,
    /// Resample each trial until this predicate applies.
    pub require: Option<String>,
}

impl FuzzConfig {
    pub fn new(family: Family, trials: usize, seed: u64) -> Self {
        FuzzConfig {
            family,
            trials,
            seed,
            max_exponent: 3,
            max_alpha: 1,
            size: match family {
                Family::Whisker => 2,
                Family::C3 => 3,
                _ => 4,
            },
            s_max: 3,
            require: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 || self.max_exponent == 0 || self.max_alpha == 0 || self.s_max == 0 || self.size == 0 {
            return Err(domain("fuzz bounds must be at least 1"));
        }
        let ok = match self.family {
            Family::RandomSupport2 => self.size >= 2,
            Family::Cycle => self.size >= 3,
            Family::Whisker => true,
            Family::C3 => self.size == 3,
        };
        if !ok {
            return Err(Error::Domain(format!("size {} does not fit family {}", self.size, self.family)));
        }
        if let Some(name) = &self.require {
            if !self.family.predicates().contains(&name.as_str()) {
                return Err(Error::Domain(format!("predicate '{name}' is not run for family {}", self.family)));
            }
        }
        Ok(())
    }

    /// Degree bound used for Simis cross-checks. A weighted odd cycle of
    /// length `2k+1` first fails at degree `k+1`, so odd cycles are checked
    /// at least that far.
    pub fn effective_s_max(&self) -> u32 {
        match self.family {
            Family::Cycle if self.size % 2 == 1 => self.s_max.max(self.size.div_ceil(2) as u32),
            _ => self.s_max,
        }
    }
}

fn trial_rng(seed: u64, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    rng
}

/// Strictly monotone exponent pairs for one edge: first coordinate
/// decreasing, second increasing.
fn edge_pairs(rng: &mut ChaCha8Rng, max_exp: Exp, max_alpha: usize) -> Vec<(Exp, Exp)> {
    let cap = max_alpha.min(max_exp as usize);
    let alpha = rng.gen_range(1..=cap);
    let mut xs: Vec<Exp> = sample(rng, max_exp as usize, alpha).into_iter().map(|v| v as Exp + 1).collect();
    let mut ys: Vec<Exp> = sample(rng, max_exp as usize, alpha).into_iter().map(|v| v as Exp + 1).collect();
    xs.sort_unstable_by(|a, b| b.cmp(a));
    ys.sort_unstable();
    xs.into_iter().zip(ys).collect()
}

/// An edge `(i, j)` with its `(x_i, x_j)` exponent pairs.
type WeightedEdge = ((usize, usize), Vec<(Exp, Exp)>);

fn assemble(n: usize, edges: &[WeightedEdge]) -> Result<MonomialIdeal> {
    let mut gens = Vec::new();
    for ((i, j), pairs) in edges {
        for &(a, b) in pairs {
            gens.push(Monomial::from_factors(n, &[(*i, a), (*j, b)])?);
        }
    }
    MonomialIdeal::from_generators(n, gens)
}

fn random_graph_edges(rng: &mut ChaCha8Rng, n: usize) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(0.5) {
                edges.push((i, j));
            }
        }
    }
    edges
}

/// Random instance of a family.
pub fn generate(config: &FuzzConfig, rng: &mut ChaCha8Rng) -> Result<MonomialIdeal> {
    let (e, a) = (config.max_exponent, config.max_alpha);
    match config.family {
        Family::RandomSupport2 => {
            let n = config.size;
            let mut graph = random_graph_edges(rng, n);
            if graph.is_empty() {
                let i = rng.gen_range(0..n - 1);
                graph.push((i, rng.gen_range(i + 1..n)));
            }
            let edges: Vec<_> = graph.into_iter().map(|ij| (ij, edge_pairs(rng, e, a))).collect();
            assemble(n, &edges)
        }
        Family::Cycle => {
            let n = config.size;
            // half the trials carry a standard weighting so both sides of
            // the classification are exercised
            let weights: Option<Vec<Exp>> = rng.gen_bool(0.5).then(|| (0..n).map(|_| rng.gen_range(1..=e)).collect());
            let edges: Vec<_> = (0..n)
                .map(|t| {
                    let (i, j) = (t, (t + 1) % n);
                    let pairs = match &weights {
                        Some(d) => vec![(d[i], d[j])],
                        None => edge_pairs(rng, e, a),
                    };
                    ((i.min(j), i.max(j)), if i < j { pairs } else { pairs.into_iter().map(|(x, y)| (y, x)).rev().collect() })
                })
                .collect();
            assemble(n, &edges)
        }
        Family::Whisker => {
            let m = config.size;
            let core = random_graph_edges(rng, m);
            let mut edges: Vec<_> = core.iter().map(|&ij| (ij, edge_pairs(rng, e, a))).collect();
            for c in 0..m {
                // half the whiskers dominate the core exponents at c
                let pairs = if rng.gen_bool(0.5) {
                    let mu = edges
                        .iter()
                        .filter(|((i, j), _)| *i == c || *j == c)
                        .map(|((i, _), ps)| if *i == c { ps[0].0 } else { ps[ps.len() - 1].1 })
                        .max()
                        .unwrap_or(1);
                    vec![(rng.gen_range(mu..=e), rng.gen_range(1..=e))]
                } else {
                    edge_pairs(rng, e, a)
                };
                edges.push(((c, m + c), pairs));
            }
            assemble(2 * m, &edges)
        }
        Family::C3 => {
            let edges: Vec<_> = [(0, 1), (1, 2), (0, 2)].into_iter().map(|ij| (ij, edge_pairs(rng, e, a))).collect();
            assemble(3, &edges)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PredicateOutcome {
    pub verdict: TheoremVerdict,
    pub cross_check: Option<CrossCheck>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtraCheck {
    pub name: String,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub trial: usize,
    pub seed: u64,
    pub attempts: usize,
    pub ideal: MonomialIdeal,
    pub rendered: String,
    pub outcomes: Vec<PredicateOutcome>,
    pub extra_checks: Vec<ExtraCheck>,
    pub error: Option<String>,
}

impl TrialRecord {
    pub fn has_discrepancy(&self) -> bool {
        self.outcomes
            .iter()
            .any(|o| o.cross_check.as_ref().is_some_and(CrossCheck::has_discrepancy))
            || self.extra_checks.iter().any(|c| !c.passed)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tally {
    pub predicate: String,
    pub evaluated: usize,
    pub applicable: usize,
    pub agreements: usize,
    pub inconclusive: usize,
    pub discrepancies: usize,
    pub witnesses: usize,
    pub witnesses_verified: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CampaignReport {
    pub config: FuzzConfig,
    pub effective_s_max: u32,
    /// Simis agreements only cover degrees up to `effective_s_max`.
    pub bounded: bool,
    pub tallies: Vec<Tally>,
    pub extra_checks_run: usize,
    pub extra_checks_failed: usize,
    pub errors: Vec<(usize, String)>,
    pub discrepancies: Vec<TrialRecord>,
}

impl CampaignReport {
    pub fn has_discrepancy(&self) -> bool {
        !self.discrepancies.is_empty()
    }

    pub fn tally(&self, predicate: &str) -> Option<&Tally> {
        self.tallies.iter().find(|t| t.predicate == predicate)
    }
}

fn evaluate(config: &FuzzConfig, ideal: &MonomialIdeal, s_max: u32) -> Result<(Vec<PredicateOutcome>, Vec<ExtraCheck>)> {
    let p = Support2Profile::analyze(ideal)?;
    let mut outcomes = Vec::new();
    for name in config.family.predicates() {
        let verdict = run_predicate(name, &p)?;
        let cross = if verdict.is_applicable() {
            Some(cross_check(&verdict, ideal, s_max)?)
        } else {
            None
        };
        outcomes.push(PredicateOutcome {
            verdict,
            cross_check: cross,
        });
    }
    let mut extra = Vec::new();
    if config.family == Family::Whisker {
        let cm = outcomes
            .iter()
            .find(|o| o.verdict.predicate == "whisker-cohen-macaulay")
            .expect("whisker family runs the Cohen-Macaulay predicate");
        if cm.verdict.findings.iter().any(|f| f.value) {
            let ws = p.graph().recognize_whisker().expect("applicable implies whiskered");
            extra.push(ExtraCheck {
                name: "fold-polarization-identity".to_string(),
                passed: fold_identity_holds(&p, &ws)?,
            });
        }
    }
    Ok((outcomes, extra))
}

fn requirement_met(config: &FuzzConfig, ideal: &MonomialIdeal) -> Result<bool> {
    match &config.require {
        None => Ok(true),
        Some(name) => Ok(run_predicate(name, &Support2Profile::analyze(ideal)?)?.is_applicable()),
    }
}

pub fn run_trial(config: &FuzzConfig, trial: usize) -> TrialRecord {
    let mut rng = trial_rng(config.seed, trial);
    let mut record = TrialRecord {
        trial,
        seed: config.seed,
        attempts: 0,
        ideal: MonomialIdeal::zero(0),
        rendered: String::new(),
        outcomes: Vec::new(),
        extra_checks: Vec::new(),
        error: None,
    };
    let result = (|| -> Result<()> {
        loop {
            record.attempts += 1;
            let ideal = generate(config, &mut rng)?;
            if requirement_met(config, &ideal)? {
                record.rendered = ideal.to_string();
                record.ideal = ideal;
                break;
            }
            if record.attempts >= MAX_ATTEMPTS {
                return Err(domain("no instance met the required hypotheses"));
            }
        }
        let (outcomes, extra) = evaluate(config, &record.ideal, config.effective_s_max())?;
        record.outcomes = outcomes;
        record.extra_checks = extra;
        Ok(())
    })();
    if let Err(e) = result {
        record.error = Some(e.to_string());
    }
    record
}

pub fn run_campaign(config: &FuzzConfig) -> Result<CampaignReport> {
    config.validate()?;
    let records: Vec<TrialRecord> = (0..config.trials).into_par_iter().map(|t| run_trial(config, t)).collect();
    let mut tallies: Vec<Tally> = config
        .family
        .predicates()
        .iter()
        .map(|name| Tally {
            predicate: name.to_string(),
            ..Tally::default()
        })
        .collect();
    let mut report = CampaignReport {
        config: config.clone(),
        effective_s_max: config.effective_s_max(),
        bounded: true,
        tallies: Vec::new(),
        extra_checks_run: 0,
        extra_checks_failed: 0,
        errors: Vec::new(),
        discrepancies: Vec::new(),
    };
    for r in records {
        if let Some(e) = &r.error {
            report.errors.push((r.trial, e.clone()));
            continue;
        }
        for (o, t) in r.outcomes.iter().zip(tallies.iter_mut()) {
            t.evaluated += 1;
            t.witnesses += o.verdict.certificates.len();
            t.witnesses_verified += o.verdict.certificates.iter().filter(|c| c.verified).count();
            let Some(c) = &o.cross_check else { continue };
            t.applicable += 1;
            if c.has_discrepancy() {
                t.discrepancies += 1;
            } else if c.checks.iter().any(|k| k.outcome == theorems::Outcome::Inconclusive) {
                t.inconclusive += 1;
            } else {
                t.agreements += 1;
            }
        }
        report.extra_checks_run += r.extra_checks.len();
        report.extra_checks_failed += r.extra_checks.iter().filter(|c| !c.passed).count();
        if r.has_discrepancy() {
            report.discrepancies.push(r);
        }
    }
    report.tallies = tallies;
    Ok(report)
}

/// Graph with each pair present with probability one half.
pub fn random_graph(rng: &mut ChaCha8Rng, n: usize) -> SimpleGraph {
    SimpleGraph::from_edges(n, &random_graph_edges(rng, n)).expect("valid edges")
}

pub fn seeded_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    trial_rng(seed, stream as usize)
}
