use crate::decomposition::PrimeSummary;
use crate::error::Result;
use crate::graph::{SimpleGraph, WhiskerStructure};
use crate::support2::{detect_standard_weighting, Support2Profile};

use super::witness::{
    c3_exponent_witness, c3_multigen_witness, girth6_witness, leaf_witness, twice, w1,
    whisker_second_power_witness, witness_c4_weighting, witness_cycle_weighting, witness_multigen,
    witness_nonuniform, witness_small_cycle_multigen,
};
use super::{Claim, TheoremVerdict};

fn label(v: usize) -> String {
    format!("x{}", v + 1)
}

/// A vertex `i` with neighbors `j`, `k` such that `w_{i,j} > w_{i,k}`.
fn nonuniform_vertex(p: &Support2Profile, g: &SimpleGraph) -> Option<(usize, usize, usize)> {
    for i in 0..g.n() {
        let nb = g.neighbors(i);
        for &j in nb {
            for &k in nb {
                if p.w1(i, j)? > p.w1(i, k)? {
                    return Some((i, j, k));
                }
            }
        }
    }
    None
}

fn first_multigen_edge(p: &Support2Profile) -> Option<(usize, usize)> {
    p.edges().iter().find(|e| e.alpha() >= 2).map(|e| (e.i, e.j))
}

/// Simis iff the graph is bipartite and a standard linear weighting exists,
/// under minimal decomposition and no embedded primes.
pub fn thm_support2_simis(p: &Support2Profile) -> Result<TheoremVerdict> {
    let mut v = TheoremVerdict::new("support2-simis");
    let summary = PrimeSummary::of(&p.to_ideal())?;
    if !v.hypothesis("irreducible decomposition is minimal", summary.decomposition_minimal)
        || !v.hypothesis("no embedded primes", summary.embedded.is_empty())
    {
        return Ok(v);
    }
    let g = p.graph();
    let bipartite = g.is_bipartite();
    let weighting = detect_standard_weighting(p);
    v.finding("bipartite", bipartite);
    v.finding("standard linear weighting", weighting.is_some());
    v.predict(Claim::Simis, bipartite && weighting.is_some());
    match &weighting {
        Some(w) if !w.defaulted.is_empty() => {
            let vars: Vec<String> = w.defaulted.iter().map(|&x| label(x)).collect();
            v.notes.push(format!("weight 1 assumed for unused variables {}", vars.join(", ")));
        }
        Some(_) => {}
        None => {
            if let Some((i, j)) = first_multigen_edge(p) {
                v.certificates.push(witness_multigen(p, i, j)?);
            } else if let Some((i, j, k)) = nonuniform_vertex(p, &g) {
                v.certificates.push(witness_nonuniform(p, i, j, k)?);
            }
        }
    }
    Ok(v)
}

/// An edge with two or more generators, under a minimal irreducible
/// decomposition, forces `I^(2) != I^2`.
pub fn multigen_second_power(p: &Support2Profile) -> Result<TheoremVerdict> {
    let mut v = TheoremVerdict::new("multigen-second-power");
    let edge = first_multigen_edge(p);
    if !v.hypothesis("some edge has two or more generators", edge.is_some())
        || !v.hypothesis(
            "irreducible decomposition is minimal",
            PrimeSummary::of(&p.to_ideal())?.decomposition_minimal,
        )
    {
        return Ok(v);
    }
    let (i, j) = edge.expect("checked");
    v.notes.push(format!("edge {{{}, {}}}", label(i), label(j)));
    v.predict(Claim::SecondPowerEqual, false);
    v.certificates.push(witness_multigen(p, i, j)?);
    Ok(v)
}

/// Cycles of length 4 or at least 6: no embedded primes iff a weighting
/// exists; Simis iff additionally the length is even.
pub fn thm_cycle_classification(p: &Support2Profile) -> Result<TheoremVerdict> {
    let mut v = TheoremVerdict::new("cycle-classification");
    let g = p.graph();
    let n = g.recognize_cycle();
    if !v.hypothesis("graph is a cycle", n.is_some()) {
        return Ok(v);
    }
    let n = n.expect("checked");
    if !v.hypothesis("cycle length is 4 or at least 6", n == 4 || n >= 6) {
        v.notes.push(format!("length {n}: the classification does not apply; direct computation still does"));
        return Ok(v);
    }
    let weighting = detect_standard_weighting(p).is_some();
    v.finding("standard linear weighting", weighting);
    v.finding("even length", n.is_multiple_of(2));
    v.predict(Claim::NoEmbeddedPrimes, weighting);
    v.predict(Claim::Simis, weighting && n.is_multiple_of(2));
    if !weighting {
        let cert = if let Some((i, j)) = first_multigen_edge(p) {
            if n == 4 {
                witness_small_cycle_multigen(p)?
            } else {
                girth6_witness(p, i, j)?
            }
        } else {
            let (i, _, _) = nonuniform_vertex(p, &g).expect("no weighting with single generators");
            if n == 4 {
                witness_c4_weighting(p, i)?
            } else {
                witness_cycle_weighting(p, i)?
            }
        };
        v.certificates.push(cert);
    }
    Ok(v)
}

fn whisker_hypothesis(v: &mut TheoremVerdict, g: &SimpleGraph) -> Option<WhiskerStructure> {
    let ws = g.recognize_whisker();
    if !v.hypothesis("graph is whiskered", ws.is_some()) {
        return None;
    }
    let ws = ws.expect("checked");
    if ws.ambiguous_k2 {
        v.notes.push("an isolated edge was split with its lower-indexed endpoint as core".to_string());
    }
    let core: Vec<String> = ws.core.iter().map(|&c| label(c)).collect();
    v.notes.push(format!("core vertices {}", core.join(", ")));
    Some(ws)
}

/// First core vertex breaking the whisker exponent condition, with its leaf.
fn whisker_violation(p: &Support2Profile, g: &SimpleGraph, ws: &WhiskerStructure) -> Option<(usize, usize)> {
    ws.core.iter().zip(&ws.leaves).find_map(|(&c, &l)| {
        let wl = p.w1(c, l).expect("whisker edge");
        let ok = p.alpha(c, l) == Some(1)
            && g.neighbors(c)
                .iter()
                .filter(|&&j| j != l)
                .all(|&j| wl >= p.mu(c, j).expect("edge"));
        (!ok).then_some((c, l))
    })
}

/// Whiskered graphs: Cohen-Macaulay iff unmixed iff no embedded primes iff
/// every whisker edge has one generator whose core exponent dominates the
/// core's other exponents.
pub fn thm_whisker_cm(p: &Support2Profile) -> Result<TheoremVerdict> {
    let mut v = TheoremVerdict::new("whisker-cohen-macaulay");
    let g = p.graph();
    let Some(ws) = whisker_hypothesis(&mut v, &g) else {
        return Ok(v);
    };
    let violation = whisker_violation(p, &g, &ws);
    let condition = violation.is_none();
    v.finding("whisker exponent condition", condition);
    v.predict(Claim::NoEmbeddedPrimes, condition);
    v.predict(Claim::Unmixed, condition);
    v.predict(Claim::CohenMacaulay, condition);
    if let Some((c, l)) = violation {
        v.notes.push(format!("condition fails at whisker edge {{{}, {}}}", label(c), label(l)));
        if let Some(cert) = leaf_witness(p, c, l)? {
            v.certificates.push(cert);
        }
    }
    Ok(v)
}

/// Whiskered, triangle-free, one generator per edge, no embedded primes:
/// `I^(2) = I^2` iff every core edge satisfies the exponent disjunction.
pub fn thm_whisker_second_power(p: &Support2Profile) -> Result<TheoremVerdict> {
    let mut v = TheoremVerdict::new("whisker-second-power");
    let g = p.graph();
    let Some(ws) = whisker_hypothesis(&mut v, &g) else {
        return Ok(v);
    };
    let summary = PrimeSummary::of(&p.to_ideal())?;
    if !v.hypothesis("no embedded primes", summary.embedded.is_empty())
        || !v.hypothesis("triangle-free", g.is_triangle_free())
        || !v.hypothesis("every edge has one generator", p.max_alpha() <= 1)
    {
        return Ok(v);
    }
    let mut failing = None;
    for (i, j) in ws.core_edges(&g) {
        let (li, lj) = (ws.leaf_of(i).expect("core"), ws.leaf_of(j).expect("core"));
        let (wij, wji, wil, wjl) = (w1(p, i, j)?, w1(p, j, i)?, w1(p, i, li)?, w1(p, j, lj)?);
        let equal = wil == wij && wjl == wji;
        let doubled = wil >= twice(wij)? && wjl >= twice(wji)?;
        if !(equal || doubled) {
            failing = Some((i, j, li, lj));
            break;
        }
    }
    v.finding("exponent disjunction on every core edge", failing.is_none());
    v.predict(Claim::SecondPowerEqual, failing.is_none());
    if let Some((i, j, li, lj)) = failing {
        v.notes.push(format!("disjunction fails on core edge {{{}, {}}}", label(i), label(j)));
        let cert = match whisker_second_power_witness(p, i, j, li, lj)? {
            Some(c) => Some(c),
            None => whisker_second_power_witness(p, j, i, lj, li)?,
        };
        match cert {
            Some(c) => v.certificates.push(c),
            None => v.notes.push("no witness case matched either orientation".to_string()),
        }
    }
    Ok(v)
}

/// An edge split by every minimal vertex cover, with a generator exceeding
/// the minimal exponent at one endpoint, forces embedded primes.
pub fn prop_leaf_embedded(p: &Support2Profile, i: usize, j: usize) -> Result<TheoremVerdict> {
    let mut v = TheoremVerdict::new("leaf-edge-embedded");
    let g = p.graph();
    if !v.hypothesis("is an edge", g.has_edge(i, j)) {
        return Ok(v);
    }
    v.notes.push(format!("edge {{{}, {}}}", label(i), label(j)));
    if !v.hypothesis("every minimal vertex cover splits the edge", g.cover_separates_edge(i, j)?) {
        return Ok(v);
    }
    match leaf_witness(p, i, j)? {
        Some(cert) => {
            v.finding("exponent trigger", true);
            v.predict(Claim::NoEmbeddedPrimes, false);
            v.certificates.push(cert);
        }
        None => {
            v.finding("exponent trigger", false);
            v.notes.push("trigger not met; no conclusion".to_string());
        }
    }
    Ok(v)
}

/// [`prop_leaf_embedded`] on the first split edge that triggers, else the
/// first split edge.
pub fn prop_leaf_embedded_any(p: &Support2Profile) -> Result<TheoremVerdict> {
    let mut first = None;
    for e in p.edges() {
        let v = prop_leaf_embedded(p, e.i, e.j)?;
        if !v.is_applicable() {
            continue;
        }
        if !v.predictions.is_empty() {
            return Ok(v);
        }
        first.get_or_insert(v);
    }
    Ok(first.unwrap_or_else(|| {
        TheoremVerdict::new("leaf-edge-embedded").inapplicable("no edge is split by every minimal vertex cover")
    }))
}

/// Girth at least six, an edge with two or more generators, and an endpoint
/// at distance at least two from every leaf force embedded primes.
pub fn prop_girth6(p: &Support2Profile, i: usize, j: usize) -> Result<TheoremVerdict> {
    let mut v = TheoremVerdict::new("girth-six-embedded");
    let g = p.graph();
    if !v.hypothesis("is an edge", g.has_edge(i, j)) {
        return Ok(v);
    }
    v.notes.push(format!("edge {{{}, {}}}", label(i), label(j)));
    if !v.hypothesis("girth at least six", g.girth().is_none_or(|l| l >= 6))
        || !v.hypothesis("edge has two or more generators", p.alpha(i, j).unwrap_or(0) >= 2)
    {
        return Ok(v);
    }
    let far = |a: usize| g.leaves().iter().all(|&l| g.distance(a, l).is_none_or(|d| d >= 2));
    let oriented = if far(i) {
        Some((i, j))
    } else if far(j) {
        Some((j, i))
    } else {
        None
    };
    if !v.hypothesis("an endpoint is at distance two or more from every leaf", oriented.is_some()) {
        return Ok(v);
    }
    let (a, b) = oriented.expect("checked");
    v.predict(Claim::NoEmbeddedPrimes, false);
    v.certificates.push(girth6_witness(p, a, b)?);
    Ok(v)
}

pub fn prop_girth6_any(p: &Support2Profile) -> Result<TheoremVerdict> {
    let mut last = None;
    for e in p.edges().iter().filter(|e| e.alpha() >= 2) {
        let v = prop_girth6(p, e.i, e.j)?;
        if v.is_applicable() {
            return Ok(v);
        }
        last = Some(v);
    }
    Ok(last.unwrap_or_else(|| {
        TheoremVerdict::new("girth-six-embedded").inapplicable("no edge has two or more generators")
    }))
}

const LABELINGS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

/// Triangles: when the maximal ideal is associated.
pub fn prop_c3_maximal(p: &Support2Profile) -> Result<TheoremVerdict> {
    let mut v = TheoremVerdict::new("c3-maximal-ideal");
    let g = p.graph();
    let active = g.active_vertices();
    if !v.hypothesis("graph is a triangle", active.len() == 3 && g.edge_count() == 3) {
        return Ok(v);
    }
    let alpha = |a: usize, b: usize| p.alpha(a, b).unwrap_or(0);
    let names = |i: usize, j: usize, k: usize| format!("(i, j, k) = ({}, {}, {})", label(i), label(j), label(k));
    for [a, b, c] in LABELINGS {
        let (i, j, k) = (active[a], active[b], active[c]);
        if alpha(i, j) >= 2 && alpha(j, k) >= 2 {
            v.finding("two edges with several generators", true);
            v.notes.push(format!("labeling {}", names(i, j, k)));
            v.predict(Claim::MaximalIdealAssociated, true);
            v.certificates.push(c3_multigen_witness(p, i, j, k)?);
            return Ok(v);
        }
    }
    for [a, b, c] in LABELINGS {
        let (i, j, k) = (active[a], active[b], active[c]);
        if alpha(i, j) >= 2 && alpha(i, k) == 1 && alpha(j, k) == 1 {
            let wik_ok = w1(p, i, k)? >= p.mu(i, j).expect("edge");
            let wjk_ok = w1(p, j, k)? >= p.mu(j, i).expect("edge");
            v.finding("one edge with several generators", true);
            v.finding("exponents towards k dominate", wik_ok && wjk_ok);
            v.notes.push(format!("labeling {}", names(i, j, k)));
            v.predict(Claim::MaximalIdealAssociated, !(wik_ok && wjk_ok));
            if !wik_ok {
                v.certificates.push(c3_exponent_witness(p, i, j, k)?);
            } else if !wjk_ok {
                v.certificates.push(c3_exponent_witness(p, j, i, k)?);
            }
            return Ok(v);
        }
    }
    Ok(v.inapplicable("no labeling meets the generator-count hypotheses"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideal::MonomialIdeal;
    use crate::monomial::Exp;
    use crate::support2::{apply_weighting, StandardWeighting};
    use crate::theorems::{cross_check, Outcome, Status};

    fn ideal(rows: &[&[Exp]]) -> MonomialIdeal {
        MonomialIdeal::from_exponent_rows(rows).unwrap()
    }

    fn profile(rows: &[&[Exp]]) -> Support2Profile {
        Support2Profile::analyze(&ideal(rows)).unwrap()
    }

    fn cycle_rows(n: usize, exps: &[(Exp, Exp)]) -> Vec<Vec<Exp>> {
        (0..n)
            .map(|t| {
                let mut row = vec![0; n];
                row[t] = exps[t].0;
                row[(t + 1) % n] = exps[t].1;
                row
            })
            .collect()
    }

    fn from_rows(rows: &[Vec<Exp>]) -> Support2Profile {
        let refs: Vec<&[Exp]> = rows.iter().map(Vec::as_slice).collect();
        profile(&refs)
    }

    fn no_discrepancy(v: &TheoremVerdict, p: &Support2Profile, s_max: u32) {
        let c = cross_check(v, &p.to_ideal(), s_max).unwrap();
        assert!(!c.has_discrepancy(), "{c:?}");
    }

    #[test]
    fn simis_weighted_c4() {
        let c4 = ideal(&[&[1, 1, 0, 0], &[0, 1, 1, 0], &[0, 0, 1, 1], &[1, 0, 0, 1]]);
        let w = StandardWeighting::new(vec![2, 3, 2, 1]).unwrap();
        let p = Support2Profile::analyze(&apply_weighting(&c4, &w).unwrap()).unwrap();
        let v = thm_support2_simis(&p).unwrap();
        assert_eq!(v.prediction(Claim::Simis), Some(true));
        let c = cross_check(&v, &p.to_ideal(), 3).unwrap();
        assert_eq!(c.checks[0].outcome, Outcome::Agrees);
    }

    #[test]
    fn simis_quartic_path_and_c5() {
        let p = profile(&[&[1, 4, 0, 0], &[0, 4, 1, 0], &[0, 1, 4, 0], &[0, 0, 4, 1]]);
        let v = thm_support2_simis(&p).unwrap();
        assert_eq!(v.prediction(Claim::Simis), Some(false));
        assert!(v.certificates[0].verified);
        no_discrepancy(&v, &p, 2);
        let c5 = from_rows(&cycle_rows(5, &[(1, 1); 5]));
        let v = thm_support2_simis(&c5).unwrap();
        assert_eq!(v.prediction(Claim::Simis), Some(false));
        no_discrepancy(&v, &c5, 3);
    }

    #[test]
    fn simis_inapplicable_with_embedded_primes() {
        let p = profile(&[&[1, 0, 1, 0], &[2, 1, 0, 0], &[0, 1, 0, 1]]);
        let v = thm_support2_simis(&p).unwrap();
        assert_eq!(v.status, Status::Inapplicable);
        assert!(v.predictions.is_empty());
    }

    #[test]
    fn cycle_c6_weighted() {
        let p = from_rows(&cycle_rows(6, &[(2, 3), (3, 1), (1, 2), (2, 2), (2, 1), (1, 2)]));
        let v = thm_cycle_classification(&p).unwrap();
        assert_eq!(v.prediction(Claim::NoEmbeddedPrimes), Some(true));
        assert_eq!(v.prediction(Claim::Simis), Some(true));
        no_discrepancy(&v, &p, 2);
    }

    #[test]
    fn cycle_c7_weighted_is_not_simis() {
        let p = from_rows(&cycle_rows(7, &[(1, 1); 7]));
        let v = thm_cycle_classification(&p).unwrap();
        assert_eq!(v.prediction(Claim::NoEmbeddedPrimes), Some(true));
        assert_eq!(v.prediction(Claim::Simis), Some(false));
    }

    #[test]
    fn cycle_c5_is_inapplicable() {
        let p = profile(&[&[1, 1, 0, 0, 0], &[0, 1, 2, 0, 0], &[0, 0, 1, 1, 0], &[0, 0, 0, 2, 1], &[1, 0, 0, 0, 1]]);
        let v = thm_cycle_classification(&p).unwrap();
        assert_eq!(v.status, Status::Inapplicable);
    }

    #[test]
    fn cycle_certificates() {
        let mut exps = [(1, 1); 6];
        exps[0] = (1, 2);
        let p = from_rows(&cycle_rows(6, &exps));
        let v = thm_cycle_classification(&p).unwrap();
        assert_eq!(v.prediction(Claim::NoEmbeddedPrimes), Some(false));
        assert!(v.certificates[0].verified);
        no_discrepancy(&v, &p, 1);
        let c4 = profile(&[&[1, 1, 0, 0], &[0, 1, 1, 0], &[0, 0, 1, 1], &[2, 0, 0, 1]]);
        let v = thm_cycle_classification(&c4).unwrap();
        assert_eq!(v.certificates[0].construction, "c4-weighting");
        no_discrepancy(&v, &c4, 2);
    }

    #[test]
    fn whisker_cm_examples() {
        let good = profile(&[&[3, 0, 1, 0], &[2, 1, 0, 0], &[0, 2, 0, 1]]);
        let v = thm_whisker_cm(&good).unwrap();
        assert_eq!(v.prediction(Claim::NoEmbeddedPrimes), Some(true));
        no_discrepancy(&v, &good, 1);
        let bad = profile(&[&[1, 0, 1, 0], &[2, 1, 0, 0], &[0, 1, 0, 1]]);
        let v = thm_whisker_cm(&bad).unwrap();
        assert_eq!(v.prediction(Claim::Unmixed), Some(false));
        assert!(v.certificates[0].verified);
        no_discrepancy(&v, &bad, 1);
        let edge = profile(&[&[1, 1, 0, 0, 0, 0], &[0, 1, 1, 0, 0, 0], &[1, 0, 0, 1, 0, 0], &[0, 1, 0, 0, 1, 0], &[0, 0, 1, 0, 0, 1]]);
        assert_eq!(thm_whisker_cm(&edge).unwrap().prediction(Claim::CohenMacaulay), Some(true));
    }

    #[test]
    fn whisker_second_power_examples() {
        let ones = profile(&[&[1, 1, 0, 0], &[1, 0, 1, 0], &[0, 1, 0, 1]]);
        assert_eq!(thm_whisker_second_power(&ones).unwrap().prediction(Claim::SecondPowerEqual), Some(true));
        let p = profile(&[&[2, 1, 0, 0], &[3, 0, 1, 0], &[0, 1, 0, 1]]);
        let v = thm_whisker_second_power(&p).unwrap();
        assert_eq!(v.prediction(Claim::SecondPowerEqual), Some(false));
        assert!(v.certificates[0].verified);
        no_discrepancy(&v, &p, 2);
        let mixed = profile(&[&[4, 0, 1, 0], &[2, 1, 0, 0], &[0, 1, 0, 1]]);
        let v = thm_whisker_second_power(&mixed).unwrap();
        assert_eq!(v.prediction(Claim::SecondPowerEqual), Some(false));
        no_discrepancy(&v, &mixed, 2);
    }

    #[test]
    fn leaf_and_girth_props() {
        let p = profile(&[&[1, 0, 1, 0], &[2, 1, 0, 0], &[0, 1, 0, 1]]);
        let v = prop_leaf_embedded(&p, 0, 2).unwrap();
        assert_eq!(v.prediction(Claim::NoEmbeddedPrimes), Some(false));
        no_discrepancy(&v, &p, 1);
        let c3 = profile(&[&[1, 1, 0], &[0, 1, 1], &[1, 0, 1]]);
        assert_eq!(prop_leaf_embedded(&c3, 0, 1).unwrap().status, Status::Inapplicable);
        let mut rows = cycle_rows(7, &[(1, 1); 7]);
        rows[0] = vec![2, 1, 0, 0, 0, 0, 0];
        rows.push(vec![1, 2, 0, 0, 0, 0, 0]);
        let c7 = from_rows(&rows);
        let v = prop_girth6(&c7, 0, 1).unwrap();
        assert_eq!(v.prediction(Claim::NoEmbeddedPrimes), Some(false));
        assert!(v.certificates[0].verified);
        assert!(prop_girth6_any(&c7).unwrap().is_applicable());
    }

    #[test]
    fn c3_examples() {
        let cubic_triangle = profile(&[&[1, 3, 0], &[0, 2, 1], &[0, 1, 2], &[1, 0, 3]]);
        let v = prop_c3_maximal(&cubic_triangle).unwrap();
        assert_eq!(v.prediction(Claim::MaximalIdealAssociated), Some(false));
        no_discrepancy(&v, &cubic_triangle, 1);
        let p = profile(&[&[1, 1, 0], &[0, 2, 1], &[0, 1, 2], &[1, 0, 2]]);
        let v = prop_c3_maximal(&p).unwrap();
        assert_eq!(v.prediction(Claim::MaximalIdealAssociated), Some(true));
        no_discrepancy(&v, &p, 1);
        let both = profile(&[&[2, 1, 0], &[1, 2, 0], &[0, 2, 1], &[0, 1, 2], &[1, 0, 1]]);
        let v = prop_c3_maximal(&both).unwrap();
        assert_eq!(v.prediction(Claim::MaximalIdealAssociated), Some(true));
        assert!(v.certificates[0].verified);
        let edge = profile(&[&[1, 1, 0], &[0, 1, 1], &[1, 0, 1]]);
        assert_eq!(prop_c3_maximal(&edge).unwrap().status, Status::Inapplicable);
    }
}
