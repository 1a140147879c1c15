//! Witness monomials behind each classification, verified by recomputation.
//!
//! Builders relabel vertices to the normalization of the corresponding proof
//! and build the monomial in the original labels.

use crate::decomposition;
use crate::error::{domain, Error, Result};
use crate::monomial::{Exp, Monomial};
use crate::support2::Support2Profile;

use super::{MembershipClaim, WitnessReport};

pub(crate) fn w1(p: &Support2Profile, a: usize, b: usize) -> Result<Exp> {
    p.w1(a, b)
        .ok_or_else(|| Error::Domain(format!("{{x{}, x{}}} is not an edge", a + 1, b + 1)))
}

pub(crate) fn nu(p: &Support2Profile, a: usize, b: usize) -> Result<Exp> {
    p.nu(a, b)
        .ok_or_else(|| Error::Domain(format!("{{x{}, x{}}} is not an edge", a + 1, b + 1)))
}

fn mu(p: &Support2Profile, a: usize, b: usize) -> Result<Exp> {
    w1(p, a, b)
}

pub(crate) fn twice(x: Exp) -> Result<Exp> {
    x.checked_mul(2).ok_or(Error::ExponentOverflow)
}

fn require(cond: bool, msg: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(domain(msg))
    }
}

fn alpha(p: &Support2Profile, a: usize, b: usize) -> usize {
    p.alpha(a, b).unwrap_or(0)
}

/// `f ∈ I^(1) \ I`
fn embedded_gap(construction: &str, p: &Support2Profile, f: Monomial) -> Result<WitnessReport> {
    WitnessReport::check(
        construction,
        &p.to_ideal(),
        f,
        MembershipClaim::symbolic(1),
        MembershipClaim::ordinary(1),
    )
}

/// A vertex with two differently weighted edges `{i,j}`, `{i,k}` with
/// `w_{i,j} > w_{i,k}` gives an element of `I^(2) \ I^2`.
pub fn witness_nonuniform(p: &Support2Profile, i: usize, j: usize, k: usize) -> Result<WitnessReport> {
    require(i != j && j != k && i != k, "vertices must be distinct")?;
    let (wij, wik) = (w1(p, i, j)?, w1(p, i, k)?);
    require(alpha(p, i, j) == 1 && alpha(p, i, k) == 1, "edges at the vertex need one generator each")?;
    let triangle = p.edge(j, k).is_some();
    require(!triangle || alpha(p, j, k) == 1, "edge {x_j, x_k} needs one generator")?;
    require(wij > wik, "needs w_{i,j} > w_{i,k}")?;
    let ideal = p.to_ideal();
    require(
        decomposition::is_decomposition_minimal(&ideal)?,
        "irreducible decomposition must be minimal",
    )?;
    let n = p.nvars();
    let (wji, wki) = (w1(p, j, i)?, w1(p, k, i)?);
    let f = Monomial::from_factors(n, &[(i, wij.max(twice(wik)?)), (j, wji), (k, wki)])?;
    if triangle {
        let (wjk, wkj) = (w1(p, j, k)?, w1(p, k, j)?);
        let square = Monomial::from_factors(n, &[(j, twice(wjk)?), (k, twice(wkj)?)])?;
        if square.divides(&f)? {
            let g = Monomial::from_factors(n, &[(k, wki.max(twice(wkj)?)), (i, wik), (j, wjk)])?;
            return WitnessReport::symbolic_gap("nonuniform-triangle-fallback", &ideal, g, 2);
        }
    }
    WitnessReport::symbolic_gap("nonuniform", &ideal, f, 2)
}

/// An edge with at least two generators gives an element of `I^(2) \ I^2`.
pub fn witness_multigen(p: &Support2Profile, i: usize, j: usize) -> Result<WitnessReport> {
    require(alpha(p, i, j) >= 2, "edge needs at least two generators")?;
    let ideal = p.to_ideal();
    require(
        decomposition::is_decomposition_minimal(&ideal)?,
        "irreducible decomposition must be minimal",
    )?;
    let pairs = p.oriented(i, j)?;
    let (a1, b1) = pairs[0];
    let (a2, b2) = pairs[1];
    let xi = a1.checked_add(a2).ok_or(Error::ExponentOverflow)?;
    let f = Monomial::from_factors(p.nvars(), &[(i, xi), (j, twice(b1)?.max(b2))])?;
    WitnessReport::symbolic_gap("multigen", &ideal, f, 2)
}

/// The other neighbor of `v` on a cycle.
fn next_on_cycle(p: &Support2Profile, v: usize, from: usize) -> usize {
    let g = p.graph();
    let nb = g.neighbors(v);
    if nb[0] == from {
        nb[1]
    } else {
        nb[0]
    }
}

/// On a cycle of length at least six, a vertex whose two edges carry
/// different exponents gives an element of `I^(1) \ I`.
pub fn witness_cycle_weighting(p: &Support2Profile, i: usize) -> Result<WitnessReport> {
    let n = p.graph().recognize_cycle().ok_or_else(|| domain("graph is not a cycle"))?;
    require(n >= 6, "cycle must have length at least six")?;
    require(p.max_alpha() <= 1, "every edge needs one generator")?;
    let g = p.graph();
    require(g.degree(i) == 2, "vertex is not on the cycle")?;
    let (u, v) = (g.neighbors(i)[0], g.neighbors(i)[1]);
    let (wu, wv) = (w1(p, i, u)?, w1(p, i, v)?);
    require(wu != wv, "vertex has a uniform weight")?;
    // x1 = heavier neighbor, x2 = i, x3 = lighter neighbor, then onward
    let (x1, x3) = if wu > wv { (u, v) } else { (v, u) };
    let x4 = next_on_cycle(p, x3, i);
    let x5 = next_on_cycle(p, x4, x3);
    let f = Monomial::from_factors(
        p.nvars(),
        &[(x1, w1(p, x1, i)?), (i, w1(p, i, x3)?), (x5, w1(p, x5, x4)?)],
    )?;
    embedded_gap("cycle-weighting", p, f)
}

/// On a 4-cycle, a vertex whose two edges carry different exponents gives an
/// element of `I^(1) \ I`.
pub fn witness_c4_weighting(p: &Support2Profile, v: usize) -> Result<WitnessReport> {
    require(p.graph().recognize_cycle() == Some(4), "graph is not a 4-cycle")?;
    require(p.max_alpha() <= 1, "every edge needs one generator")?;
    let g = p.graph();
    let (a, b) = (g.neighbors(v)[0], g.neighbors(v)[1]);
    let (wa, wb) = (w1(p, v, a)?, w1(p, v, b)?);
    require(wa != wb, "vertex has a uniform weight")?;
    // x1 = v with w_{1,2} < w_{1,4}
    let (x2, x4) = if wa < wb { (a, b) } else { (b, a) };
    let f = Monomial::from_factors(p.nvars(), &[(v, w1(p, v, x2)?), (x4, w1(p, x4, v)?)])?;
    embedded_gap("c4-weighting", p, f)
}

/// On a 4- or 5-cycle, an edge with at least two generators gives an element
/// of `I^(1) \ I`.
pub fn witness_small_cycle_multigen(p: &Support2Profile) -> Result<WitnessReport> {
    let n = p.graph().recognize_cycle().ok_or_else(|| domain("graph is not a cycle"))?;
    require(n == 4 || n == 5, "cycle must have length 4 or 5")?;
    let e = p
        .edges()
        .iter()
        .find(|e| e.alpha() >= 2)
        .ok_or_else(|| domain("no edge has two generators"))?;
    let (x1, x2) = (e.i, e.j);
    let mut factors = vec![(x1, nu(p, x1, x2)?), (x2, nu(p, x2, x1)?)];
    if n == 5 {
        let x3 = next_on_cycle(p, x2, x1);
        let x4 = next_on_cycle(p, x3, x2);
        factors.push((x4, nu(p, x4, x3)?));
    }
    let f = Monomial::from_factors(p.nvars(), &factors)?;
    embedded_gap(if n == 4 { "c4-multigen" } else { "c5-multigen" }, p, f)
}

/// A generator with `x_i^{ν_{i,j}+1}` dividing it, on an edge `{i,j}` split
/// by every minimal vertex cover, gives an element of `I^(1) \ I`. Tries `i`
/// then `j`; `None` when neither side triggers.
pub(crate) fn leaf_witness(p: &Support2Profile, i: usize, j: usize) -> Result<Option<WitnessReport>> {
    let ideal = p.to_ideal();
    for (a, b) in [(i, j), (j, i)] {
        let threshold = nu(p, a, b)?;
        let hit = ideal.generators().iter().find(|u| u.exponent(a) > threshold);
        if let Some(u) = hit {
            let k = u.support().find(|&v| v != a).expect("support-2 generator");
            let f = Monomial::from_factors(p.nvars(), &[(a, threshold), (k, nu(p, k, a)?)])?;
            return embedded_gap("leaf-edge", p, f).map(Some);
        }
    }
    Ok(None)
}

/// Product witness for an edge with at least two generators in a graph of
/// girth at least six; `i` is the endpoint away from every leaf.
pub(crate) fn girth6_witness(p: &Support2Profile, i: usize, j: usize) -> Result<WitnessReport> {
    let g = p.graph();
    let mut factors = vec![(i, nu(p, i, j)?), (j, nu(p, j, i)?)];
    for &k in g.neighbors(i).iter().filter(|&&k| k != j) {
        for &r in g.neighbors(k).iter().filter(|&&r| r != i) {
            factors.push((r, nu(p, r, k)?));
        }
    }
    let f = Monomial::from_factors(p.nvars(), &factors)?;
    embedded_gap("girth-six-product", p, f)
}

/// Triangle with `α_{i,j} ≥ 2` and `α_{j,k} ≥ 2`.
pub(crate) fn c3_multigen_witness(p: &Support2Profile, i: usize, j: usize, k: usize) -> Result<WitnessReport> {
    let factors = if nu(p, j, k)? <= nu(p, j, i)? {
        [(i, nu(p, i, j)?), (j, nu(p, j, i)?)]
    } else {
        [(j, nu(p, j, k)?), (k, nu(p, k, j)?)]
    };
    embedded_gap("c3-multigen", p, Monomial::from_factors(p.nvars(), &factors)?)
}

/// Triangle with `α_{i,j} ≥ 2`, single generators to `k`, and
/// `w_{i,k} < μ_{i,j}`.
pub(crate) fn c3_exponent_witness(p: &Support2Profile, i: usize, j: usize, k: usize) -> Result<WitnessReport> {
    require(w1(p, i, k)? < mu(p, i, j)?, "needs w_{i,k} < mu_{i,j}")?;
    let f = Monomial::from_factors(p.nvars(), &[(i, w1(p, i, k)?.max(nu(p, i, j)?)), (j, nu(p, j, i)?)])?;
    embedded_gap("c3-exponent", p, f)
}

/// Whiskered second power: for an edge `{i,j}` of the core with whisker
/// leaves `li`, `lj`, the failing cases of the exponent disjunction.
pub(crate) fn whisker_second_power_witness(
    p: &Support2Profile,
    i: usize,
    j: usize,
    li: usize,
    lj: usize,
) -> Result<Option<WitnessReport>> {
    let (wij, wji) = (w1(p, i, j)?, w1(p, j, i)?);
    let (wil, wjl) = (w1(p, i, li)?, w1(p, j, lj)?);
    let wlj = w1(p, lj, j)?;
    let i_side = wij <= wil && wil < twice(wij)?;
    let case_a = i_side && wji < wjl && wjl <= twice(wji)?;
    let case_b = i_side && wjl >= twice(wji)?;
    let (name, xj) = if case_a {
        ("whisker-second-power-a", twice(wji)?)
    } else if case_b {
        ("whisker-second-power-b", wjl)
    } else {
        return Ok(None);
    };
    let f = Monomial::from_factors(p.nvars(), &[(i, wil), (j, xj), (lj, wlj)])?;
    WitnessReport::symbolic_gap(name, &p.to_ideal(), f, 2).map(Some)
}
