//! Command bodies. Each returns a structured result and its pretty rendering;
//! variables are always shown 1-based as `x1, x2, ...`.

use std::fmt::Write as _;
use std::fs;
use std::io::Read;
use std::path::Path;

use anyhow::{Context, Result};
use serde::Serialize;
use simiscalc::decomposition::{irreducible_decomposition, primary_from_summary, PrimeSummary};
use simiscalc::fuzz::{run_campaign, CampaignReport, Family, FuzzConfig, TrialRecord};
use simiscalc::parse::{parse_document, parse_monomial};
use simiscalc::support2::{detect_standard_weighting, polarize as polarize_ideal};
use simiscalc::symbolic::{component_powers, simis_profile, symbolic_power, symbolic_power_contains};
use simiscalc::theorems::{cross_check, CrossCheck, Outcome, TheoremVerdict, WitnessReport};
use simiscalc::{Exp, MonomialIdeal, PrimeSupport, Support2Profile};

use crate::report::{digest, Output};
use crate::FuzzArgs;

/// Every classification predicate, in report order.
const PREDICATES: [&str; 8] = [
    "support2-simis",
    "multigen-second-power",
    "cycle-classification",
    "whisker-cohen-macaulay",
    "whisker-second-power",
    "leaf-edge-embedded",
    "girth-six-embedded",
    "c3-maximal-ideal",
];

pub struct Loaded {
    pub ideal: MonomialIdeal,
    pub digest: String,
}

pub fn load(path: &Path) -> Result<Loaded> {
    let mut bytes = Vec::new();
    if path == Path::new("-") {
        std::io::stdin().read_to_end(&mut bytes).context("reading standard input")?;
    } else {
        bytes = fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    }
    let text = String::from_utf8(bytes).context("input is not UTF-8")?;
    let ideal = parse_document(&text)
        .and_then(|d| d.to_ideal())
        .with_context(|| format!("in {}", path.display()))?;
    Ok(Loaded {
        ideal,
        digest: digest(text.as_bytes()),
    })
}

fn var(v: usize) -> String {
    format!("x{}", v + 1)
}

fn names(vs: &[usize]) -> Vec<String> {
    vs.iter().map(|&v| var(v)).collect()
}

fn primes(ps: &[PrimeSupport]) -> Vec<String> {
    ps.iter().map(|p| p.to_string()).collect()
}

fn list_or_none(items: &[String]) -> String {
    if items.is_empty() {
        "none".to_string()
    } else {
        items.join(", ")
    }
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn gens(i: &MonomialIdeal) -> Vec<String> {
    i.generators().iter().map(|g| g.to_string()).collect()
}

#[derive(Serialize)]
struct PrimaryComponent {
    radical: String,
    component: String,
}

#[derive(Serialize)]
struct DecomposeResult {
    ideal: String,
    nvars: usize,
    irreducible: Vec<String>,
    primary: Vec<PrimaryComponent>,
    associated: Vec<String>,
    minimal: Vec<String>,
    embedded: Vec<String>,
    decomposition_minimal: bool,
    unmixed: bool,
}

pub fn decompose(doc: &Loaded) -> Result<Output> {
    let i = &doc.ideal;
    let summary = PrimeSummary::of(i)?;
    let irr = irreducible_decomposition(i)?;
    let primary = primary_from_summary(i, &summary)?;
    let r = DecomposeResult {
        ideal: i.to_string(),
        nvars: i.nvars(),
        irreducible: irr.components.iter().map(|c| format!("<{}>", c.ideal)).collect(),
        primary: primary
            .components
            .iter()
            .map(|c| PrimaryComponent {
                radical: c.radical.to_string(),
                component: format!("<{}>", c.ideal),
            })
            .collect(),
        associated: primes(&summary.associated),
        minimal: primes(&summary.minimal),
        embedded: primes(&summary.embedded),
        decomposition_minimal: summary.decomposition_minimal,
        unmixed: summary.is_unmixed(),
    };
    let mut s = String::new();
    writeln!(s, "ideal: <{}>", r.ideal)?;
    writeln!(s, "irreducible: {irr}")?;
    writeln!(s, "primary: {primary}")?;
    writeln!(s, "associated primes: {}", list_or_none(&r.associated))?;
    writeln!(s, "minimal primes: {}", list_or_none(&r.minimal))?;
    writeln!(s, "embedded primes: {}", list_or_none(&r.embedded))?;
    writeln!(s, "irreducible decomposition minimal: {}", yes(r.decomposition_minimal))?;
    writeln!(s, "unmixed: {}", yes(r.unmixed))?;
    Output::new(r, s)
}

#[derive(Serialize)]
struct PowerResult {
    degree: u32,
    symbolic: bool,
    count: usize,
    generators: Vec<String>,
}

pub fn power(doc: &Loaded, degree: u32, symbolic: bool) -> Result<Output> {
    let p = if symbolic {
        symbolic_power(&doc.ideal, degree)?
    } else {
        doc.ideal.power(degree)?
    };
    let r = PowerResult {
        degree,
        symbolic,
        count: p.len(),
        generators: gens(&p),
    };
    let label = if symbolic { format!("I^({degree})") } else { format!("I^{degree}") };
    let s = format!("{label} ({} generators): <{p}>\n", r.count);
    Output::new(r, s)
}

#[derive(Serialize)]
struct SymbolicPiece {
    prime: String,
    power: String,
}

#[derive(Serialize)]
struct SymbolicResult {
    degree: u32,
    pieces: Vec<SymbolicPiece>,
    count: usize,
    generators: Vec<String>,
    equals_ordinary: bool,
}

pub fn symbolic(doc: &Loaded, degree: u32) -> Result<Output> {
    let i = &doc.ideal;
    let pieces = component_powers(i, degree)?;
    let sym = MonomialIdeal::intersect_all(i.nvars(), &pieces.iter().map(|(_, q)| q.clone()).collect::<Vec<_>>())?;
    let equal = sym == i.power(degree)?;
    let r = SymbolicResult {
        degree,
        pieces: pieces
            .iter()
            .map(|(p, q)| SymbolicPiece {
                prime: p.to_string(),
                power: format!("<{q}>"),
            })
            .collect(),
        count: sym.len(),
        generators: gens(&sym),
        equals_ordinary: equal,
    };
    let mut s = String::new();
    for piece in &r.pieces {
        writeln!(s, "Q({})^{degree} = {}", piece.prime, piece.power)?;
    }
    writeln!(s, "I^({degree}) ({} generators): <{sym}>", r.count)?;
    writeln!(s, "I^({degree}) = I^{degree}: {}", yes(equal))?;
    Output::new(r, s)
}

#[derive(Serialize)]
struct MemberResult {
    monomial: String,
    degree: u32,
    symbolic: bool,
    member: bool,
}

pub fn member(doc: &Loaded, monomial: &str, degree: u32, symbolic: bool) -> Result<Output> {
    let i = &doc.ideal;
    let m = parse_monomial(monomial, i.nvars())?;
    let member = if symbolic {
        symbolic_power_contains(i, degree, &m)?
    } else {
        i.power(degree)?.contains_monomial(&m)
    };
    let label = if symbolic { format!("I^({degree})") } else { format!("I^{degree}") };
    let s = format!("{m} {} {label}\n", if member { "is in" } else { "is not in" });
    let mut out = Output::new(
        MemberResult {
            monomial: m.to_string(),
            degree,
            symbolic,
            member,
        },
        s,
    )?;
    out.exit = if member { 0 } else { 3 };
    Ok(out)
}

#[derive(Serialize)]
struct DegreeVerdict {
    degree: u32,
    holds: bool,
    witness: Option<String>,
}

#[derive(Serialize)]
struct SimisResult {
    max_degree: u32,
    /// Only degrees up to `max_degree` were examined.
    bounded: bool,
    degrees: Vec<DegreeVerdict>,
    first_failure: Option<u32>,
}

pub fn simis(doc: &Loaded, max_degree: u32) -> Result<Output> {
    let i = &doc.ideal;
    let verdicts = simis_profile(i, max_degree)?;
    let first = verdicts.iter().find(|v| !v.holds);
    let mut certificates = Vec::new();
    if let Some(v) = first {
        let w = v.witness.clone().expect("failures carry a witness");
        certificates.push(WitnessReport::symbolic_gap("least generator of I^(s) outside I^s", i, w, v.degree_checked)?);
    }
    let r = SimisResult {
        max_degree,
        bounded: true,
        degrees: verdicts
            .iter()
            .map(|v| DegreeVerdict {
                degree: v.degree_checked,
                holds: v.holds,
                witness: v.witness.as_ref().map(|w| w.to_string()),
            })
            .collect(),
        first_failure: first.map(|v| v.degree_checked),
    };
    let mut s = String::new();
    for d in &r.degrees {
        match &d.witness {
            None => writeln!(s, "s = {}: I^({0}) = I^{0}", d.degree)?,
            Some(w) => writeln!(s, "s = {}: I^({0}) != I^{0}, witness {w}", d.degree)?,
        }
    }
    match r.first_failure {
        None => writeln!(s, "Simis in every degree up to {max_degree} (bounded check)")?,
        Some(f) => writeln!(s, "not Simis: first failure at degree {f}")?,
    }
    let mut out = Output::new(r, s)?;
    out.exit = if first.is_some() { 2 } else { 0 };
    out.certificates = certificates;
    Ok(out)
}

#[derive(Serialize)]
struct EdgeRow {
    edge: String,
    pairs: Vec<(Exp, Exp)>,
    alpha: usize,
    mu: (Exp, Exp),
    nu: (Exp, Exp),
}

#[derive(Serialize)]
struct WhiskerFacts {
    core: Vec<String>,
    leaves: Vec<String>,
    ambiguous_k2: bool,
}

#[derive(Serialize)]
struct GraphFacts {
    vertices: Vec<String>,
    edges: Vec<String>,
    bipartite: bool,
    girth: Option<usize>,
    triangle_free: bool,
    path: Option<usize>,
    cycle: Option<usize>,
    whisker: Option<WhiskerFacts>,
}

#[derive(Serialize)]
struct Weighting {
    d: Vec<Exp>,
    defaulted: Vec<String>,
}

#[derive(Serialize)]
struct PrimeFacts {
    minimal: Vec<String>,
    embedded: Vec<String>,
    decomposition_minimal: bool,
    unmixed: bool,
}

#[derive(Serialize)]
struct PredicateReport {
    verdict: TheoremVerdict,
    cross_check: Option<CrossCheck>,
}

#[derive(Serialize)]
struct Support2Facts {
    profile: Vec<EdgeRow>,
    graph: GraphFacts,
    weighting: Option<Weighting>,
    predicates: Vec<PredicateReport>,
}

#[derive(Serialize)]
struct ClassifyResult {
    ideal: String,
    nvars: usize,
    primes: PrimeFacts,
    s_max: u32,
    support2: Option<Support2Facts>,
    not_support2: Option<String>,
}

fn graph_facts(p: &Support2Profile) -> GraphFacts {
    let g = p.graph();
    GraphFacts {
        vertices: names(&g.active_vertices()),
        edges: g.edges().into_iter().map(|(a, b)| format!("{}-{}", var(a), var(b))).collect(),
        bipartite: g.is_bipartite(),
        girth: g.girth(),
        triangle_free: g.is_triangle_free(),
        path: g.recognize_path(),
        cycle: g.recognize_cycle(),
        whisker: g.recognize_whisker().map(|w| WhiskerFacts {
            core: names(&w.core),
            leaves: names(&w.leaves),
            ambiguous_k2: w.ambiguous_k2,
        }),
    }
}

fn profile_rows(p: &Support2Profile) -> Vec<EdgeRow> {
    p.edges()
        .iter()
        .map(|e| {
            let (i, j) = (e.i, e.j);
            EdgeRow {
                edge: format!("{}-{}", var(i), var(j)),
                pairs: e.pairs.clone(),
                alpha: e.alpha(),
                mu: (p.mu(i, j).expect("edge"), p.mu(j, i).expect("edge")),
                nu: (p.nu(i, j).expect("edge"), p.nu(j, i).expect("edge")),
            }
        })
        .collect()
}

/// Simis predictions on odd cycles are checked far enough to reach the
/// first failing degree of a weighted cycle.
fn check_bound(name: &str, p: &Support2Profile, s_max: u32) -> u32 {
    match p.graph().recognize_cycle() {
        Some(n) if name == "cycle-classification" && n % 2 == 1 => s_max.max(n.div_ceil(2) as u32),
        _ => s_max,
    }
}

fn outcome_word(o: Outcome) -> &'static str {
    match o {
        Outcome::Agrees => "agrees",
        Outcome::Disagrees => "DISAGREES",
        Outcome::Inconclusive => "inconclusive",
        Outcome::NotComputed => "not computed",
    }
}

fn render_predicate(s: &mut String, r: &PredicateReport) -> std::fmt::Result {
    let v = &r.verdict;
    if !v.is_applicable() {
        return writeln!(s, "  {}: inapplicable ({})", v.predicate, v.reason.as_deref().unwrap_or("no reason"));
    }
    writeln!(s, "  {}: applicable", v.predicate)?;
    for f in &v.findings {
        writeln!(s, "    {}: {}", f.name, yes(f.value))?;
    }
    if let Some(c) = &r.cross_check {
        for k in &c.checks {
            write!(s, "    predicts {:?} = {}: {}", k.claim, k.predicted, outcome_word(k.outcome))?;
            match &k.detail {
                Some(d) => writeln!(s, " ({d})")?,
                None => writeln!(s)?,
            }
        }
    }
    for w in &v.certificates {
        let verified = if w.verified { "verified" } else { "NOT VERIFIED" };
        writeln!(s, "    witness {} [{}]: {verified}", w.rendered, w.construction)?;
    }
    for n in &v.notes {
        writeln!(s, "    note: {n}")?;
    }
    Ok(())
}

pub fn classify(doc: &Loaded, s_max: u32) -> Result<Output> {
    let i = &doc.ideal;
    let summary = PrimeSummary::of(i)?;
    let primes_facts = PrimeFacts {
        minimal: primes(&summary.minimal),
        embedded: primes(&summary.embedded),
        decomposition_minimal: summary.decomposition_minimal,
        unmixed: summary.is_unmixed(),
    };
    let mut certificates = Vec::new();
    let (support2, not_support2) = match Support2Profile::analyze(i) {
        Err(e @ simiscalc::Error::NotSupport2 { .. }) => (None, Some(e.to_string())),
        Err(e) => return Err(e.into()),
        Ok(p) => {
            let mut predicates = Vec::new();
            for name in PREDICATES {
                let verdict = simiscalc::fuzz::run_predicate(name, &p)?;
                let cross = if verdict.is_applicable() {
                    Some(cross_check(&verdict, i, check_bound(name, &p, s_max))?)
                } else {
                    None
                };
                certificates.extend(verdict.certificates.iter().cloned());
                predicates.push(PredicateReport {
                    verdict,
                    cross_check: cross,
                });
            }
            let weighting = detect_standard_weighting(&p).map(|w| Weighting {
                d: w.d,
                defaulted: names(&w.defaulted),
            });
            let facts = Support2Facts {
                profile: profile_rows(&p),
                graph: graph_facts(&p),
                weighting,
                predicates,
            };
            (Some((facts, p.render_table())), None)
        }
    };
    let mut s = String::new();
    writeln!(s, "ideal: <{i}>")?;
    writeln!(s, "minimal primes: {}", list_or_none(&primes_facts.minimal))?;
    writeln!(s, "embedded primes: {}", list_or_none(&primes_facts.embedded))?;
    writeln!(s, "irreducible decomposition minimal: {}", yes(primes_facts.decomposition_minimal))?;
    writeln!(s, "unmixed: {}", yes(primes_facts.unmixed))?;
    if let Some(reason) = &not_support2 {
        writeln!(s, "{reason}")?;
    }
    if let Some((f, table)) = &support2 {
        writeln!(s, "support-2 profile:")?;
        for line in table.lines() {
            writeln!(s, "  {line}")?;
        }
        let g = &f.graph;
        writeln!(s, "graph: vertices {}; edges {}", g.vertices.join(", "), g.edges.join(", "))?;
        writeln!(s, "  bipartite: {}", yes(g.bipartite))?;
        writeln!(s, "  girth: {}", g.girth.map_or("none (forest)".to_string(), |n| n.to_string()))?;
        writeln!(s, "  triangle-free: {}", yes(g.triangle_free))?;
        writeln!(s, "  path: {}", g.path.map_or("no".to_string(), |n| format!("P{n}")))?;
        writeln!(s, "  cycle: {}", g.cycle.map_or("no".to_string(), |n| format!("C{n}")))?;
        match &g.whisker {
            Some(w) => writeln!(s, "  whiskered: core {}, leaves {}", w.core.join(", "), w.leaves.join(", "))?,
            None => writeln!(s, "  whiskered: no")?,
        }
        match &f.weighting {
            Some(w) => {
                let d: Vec<String> = w.d.iter().map(|d| d.to_string()).collect();
                writeln!(s, "standard linear weighting: d = ({})", d.join(", "))?
            }
            None => writeln!(s, "standard linear weighting: none")?,
        }
        writeln!(s, "predicates (Simis cross-checks bounded by s <= {s_max}):")?;
        for r in &f.predicates {
            render_predicate(&mut s, r)?;
        }
    }
    let r = ClassifyResult {
        ideal: i.to_string(),
        nvars: i.nvars(),
        primes: primes_facts,
        s_max,
        support2: support2.map(|(f, _)| f),
        not_support2,
    };
    let mut out = Output::new(r, s)?;
    out.certificates = certificates;
    Ok(out)
}

#[derive(Serialize)]
struct PolarVariable {
    variable: String,
    original: String,
    copy: Exp,
}

#[derive(Serialize)]
struct PolarizeResult {
    ideal: String,
    polarized: String,
    nvars: usize,
    polarized_nvars: usize,
    variables: Vec<PolarVariable>,
}

pub fn polarize(doc: &Loaded) -> Result<Output> {
    let p = polarize_ideal(&doc.ideal)?;
    let r = PolarizeResult {
        ideal: doc.ideal.to_string(),
        polarized: p.ideal.to_string(),
        nvars: doc.ideal.nvars(),
        polarized_nvars: p.map.len(),
        variables: p
            .map
            .iter()
            .enumerate()
            .map(|(k, &(v, l))| PolarVariable {
                variable: var(k),
                original: var(v),
                copy: l,
            })
            .collect(),
    };
    let mut s = String::new();
    writeln!(s, "polarization: <{}>", r.polarized)?;
    for v in &r.variables {
        writeln!(s, "  {} = {}_{}", v.variable, v.original, v.copy)?;
    }
    Output::new(r, s)
}

#[derive(Serialize)]
struct Repro<'a> {
    config: &'a FuzzConfig,
    effective_s_max: u32,
    record: &'a TrialRecord,
}

fn dump_discrepancies(report: &CampaignReport, dir: &Path) -> Result<Vec<String>> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let mut written = Vec::new();
    for record in &report.discrepancies {
        let path = dir.join(format!(
            "{}-seed{}-trial{}.json",
            report.config.family, report.config.seed, record.trial
        ));
        let repro = Repro {
            config: &report.config,
            effective_s_max: report.effective_s_max,
            record,
        };
        fs::write(&path, serde_json::to_string_pretty(&repro)?).with_context(|| format!("writing {}", path.display()))?;
        written.push(path.display().to_string());
    }
    Ok(written)
}

#[derive(Serialize)]
struct FuzzResult {
    report: CampaignReport,
    dumps: Vec<String>,
}

pub fn fuzz(args: &FuzzArgs) -> Result<(String, Output)> {
    let mut config = FuzzConfig::new(args.family, args.trials, args.seed);
    if let Some(size) = args.n.or(args.m) {
        config.size = size;
    }
    if args.m.is_some() && args.family != Family::Whisker {
        anyhow::bail!("--m applies to the whisker family only");
    }
    config.max_exponent = args.max_exponent;
    config.max_alpha = args.max_alpha;
    config.s_max = args.s_max;
    config.require = args.require.clone();
    let input_digest = digest(serde_json::to_string(&config)?.as_bytes());
    let report = run_campaign(&config)?;
    let dumps = if report.has_discrepancy() {
        dump_discrepancies(&report, &args.dump_dir)?
    } else {
        Vec::new()
    };
    let mut s = String::new();
    writeln!(
        s,
        "family {}, {} trials, seed {}, size {}, E = {}, A = {}, Simis checked for s <= {} (bounded)",
        config.family,
        config.trials,
        config.seed,
        config.size,
        config.max_exponent,
        config.max_alpha,
        report.effective_s_max
    )?;
    for t in &report.tallies {
        writeln!(
            s,
            "  {:<24} applicable {:>5}/{:<5} agree {:>5}  inconclusive {:>4}  discrepancies {:>3}  witnesses {}/{}",
            t.predicate,
            t.applicable,
            t.evaluated,
            t.agreements,
            t.inconclusive,
            t.discrepancies,
            t.witnesses_verified,
            t.witnesses
        )?;
    }
    if report.extra_checks_run > 0 {
        writeln!(
            s,
            "  fold identity: {}/{} hold",
            report.extra_checks_run - report.extra_checks_failed,
            report.extra_checks_run
        )?;
    }
    for (trial, e) in &report.errors {
        writeln!(s, "  trial {trial}: error: {e}")?;
    }
    for d in &dumps {
        writeln!(s, "  discrepancy written to {d}")?;
    }
    let exit = if report.has_discrepancy() {
        2
    } else if !report.errors.is_empty() {
        1
    } else {
        0
    };
    let mut out = Output::new(FuzzResult { report, dumps }, s)?;
    out.exit = exit;
    Ok((input_digest, out))
}
