//! Support-2 ideals: per-edge exponent tables, standard linear weightings,
//! polarization and the Artinian fold of a whiskered profile.
//!
//! For an edge `{a, b}` the generators with that support are listed with the
//! exponent of `x_a` strictly decreasing; `w(a, b, t)` is the exponent of
//! `x_a` in the `t`-th entry (1-based), so `mu(a, b) = w(a, b, 1)` and
//! `nu(a, b) = w(a, b, alpha)`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::graph::{SimpleGraph, WhiskerStructure};
use crate::ideal::MonomialIdeal;
use crate::monomial::{Exp, Monomial};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeProfile {
    pub i: usize,
    pub j: usize,
    /// `(exp of x_i, exp of x_j)`, first coordinate strictly decreasing.
    pub pairs: Vec<(Exp, Exp)>,
}

impl EdgeProfile {
    pub fn alpha(&self) -> usize {
        self.pairs.len()
    }

    /// Pairs `(exp of x_a, exp of x_b)` ordered by the exponent of `x_a`
    /// decreasing. `a` must be an endpoint.
    pub fn oriented(&self, a: usize) -> Vec<(Exp, Exp)> {
        if a == self.i {
            self.pairs.clone()
        } else {
            debug_assert_eq!(a, self.j);
            self.pairs.iter().rev().map(|&(x, y)| (y, x)).collect()
        }
    }

    pub fn other(&self, a: usize) -> usize {
        if a == self.i {
            self.j
        } else {
            self.i
        }
    }

    pub fn generators(&self, nvars: usize) -> Vec<Monomial> {
        self.pairs
            .iter()
            .map(|&(a, b)| Monomial::from_factors(nvars, &[(self.i, a), (self.j, b)]).expect("valid edge"))
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Support2Profile {
    nvars: usize,
    /// Sorted by `(i, j)`.
    edges: Vec<EdgeProfile>,
}

impl Support2Profile {
    pub fn analyze(ideal: &MonomialIdeal) -> Result<Self> {
        if ideal.is_zero() || ideal.is_unit() {
            return Err(domain("support-2 analysis needs a proper nonzero ideal"));
        }
        let mut edges: Vec<EdgeProfile> = Vec::new();
        for g in ideal.generators() {
            let support: Vec<usize> = g.support().collect();
            if support.len() != 2 {
                return Err(Error::NotSupport2 {
                    generator: g.to_string(),
                    support: support.len(),
                });
            }
            let (i, j) = (support[0], support[1]);
            let pair = (g.exponent(i), g.exponent(j));
            match edges.iter_mut().find(|e| e.i == i && e.j == j) {
                Some(e) => e.pairs.push(pair),
                None => edges.push(EdgeProfile { i, j, pairs: vec![pair] }),
            }
        }
        for e in &mut edges {
            e.pairs.sort_by_key(|&(a, _)| std::cmp::Reverse(a));
        }
        edges.sort_by_key(|e| (e.i, e.j));
        Ok(Support2Profile {
            nvars: ideal.nvars(),
            edges,
        })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn edges(&self) -> &[EdgeProfile] {
        &self.edges
    }

    pub fn edge(&self, a: usize, b: usize) -> Option<&EdgeProfile> {
        let key = (a.min(b), a.max(b));
        self.edges
            .binary_search_by_key(&key, |e| (e.i, e.j))
            .ok()
            .map(|k| &self.edges[k])
    }

    fn require_edge(&self, a: usize, b: usize) -> Result<&EdgeProfile> {
        self.edge(a, b)
            .ok_or_else(|| Error::Domain(format!("{{x{}, x{}}} is not an edge", a + 1, b + 1)))
    }

    pub fn alpha(&self, a: usize, b: usize) -> Option<usize> {
        self.edge(a, b).map(EdgeProfile::alpha)
    }

    /// Pairs of edge `{a, b}` oriented from `a`.
    pub fn oriented(&self, a: usize, b: usize) -> Result<Vec<(Exp, Exp)>> {
        Ok(self.require_edge(a, b)?.oriented(a))
    }

    /// `w^t_{a,b}` with `t` 1-based.
    pub fn w(&self, a: usize, b: usize, t: usize) -> Option<Exp> {
        let e = self.edge(a, b)?;
        let pairs = e.oriented(a);
        t.checked_sub(1).and_then(|k| pairs.get(k)).map(|p| p.0)
    }

    pub fn w1(&self, a: usize, b: usize) -> Option<Exp> {
        self.w(a, b, 1)
    }

    pub fn mu(&self, a: usize, b: usize) -> Option<Exp> {
        self.w(a, b, 1)
    }

    pub fn nu(&self, a: usize, b: usize) -> Option<Exp> {
        self.edge(a, b).and_then(|e| self.w(a, b, e.alpha()))
    }

    pub fn graph(&self) -> SimpleGraph {
        let edges: Vec<(usize, usize)> = self.edges.iter().map(|e| (e.i, e.j)).collect();
        SimpleGraph::from_edges(self.nvars, &edges).expect("profile edges are valid")
    }

    pub fn max_alpha(&self) -> usize {
        self.edges.iter().map(EdgeProfile::alpha).max().unwrap_or(0)
    }

    /// Reassembles the generators from the per-edge tables.
    pub fn to_ideal(&self) -> MonomialIdeal {
        let gens = self.edges.iter().flat_map(|e| e.generators(self.nvars));
        MonomialIdeal::from_generators(self.nvars, gens).expect("profile generators share the ambient")
    }

    /// Per-edge table, 1-based variable names.
    pub fn render_table(&self) -> String {
        let mut out = String::new();
        for e in &self.edges {
            let (i, j) = (e.i, e.j);
            let pairs: Vec<String> = e.pairs.iter().map(|(a, b)| format!("({a},{b})")).collect();
            out.push_str(&format!(
                "x{}-x{}: {}  alpha={} mu=({},{}) nu=({},{})\n",
                i + 1,
                j + 1,
                pairs.join(" "),
                e.alpha(),
                self.mu(i, j).unwrap(),
                self.mu(j, i).unwrap(),
                self.nu(i, j).unwrap(),
                self.nu(j, i).unwrap(),
            ));
        }
        out
    }
}

impl fmt::Display for Support2Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_table())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StandardWeighting {
    pub d: Vec<Exp>,
    /// Variables outside every edge; their `d_i = 1` is a convention.
    pub defaulted: Vec<usize>,
}

impl StandardWeighting {
    pub fn new(d: Vec<Exp>) -> Result<Self> {
        if d.contains(&0) {
            return Err(domain("weights must be positive"));
        }
        Ok(StandardWeighting { d, defaulted: Vec::new() })
    }
}

pub fn detect_standard_weighting(p: &Support2Profile) -> Option<StandardWeighting> {
    if p.max_alpha() > 1 {
        return None;
    }
    let mut d: Vec<Option<Exp>> = vec![None; p.nvars];
    for e in &p.edges {
        let (a, b) = e.pairs[0];
        for (v, x) in [(e.i, a), (e.j, b)] {
            match d[v] {
                None => d[v] = Some(x),
                Some(prev) if prev != x => return None,
                Some(_) => {}
            }
        }
    }
    let defaulted = (0..p.nvars).filter(|&v| d[v].is_none()).collect();
    Some(StandardWeighting {
        d: d.into_iter().map(|x| x.unwrap_or(1)).collect(),
        defaulted,
    })
}

/// `J_w`: replaces each `x_i` of a squarefree ideal by `x_i^{d_i}`.
pub fn apply_weighting(j: &MonomialIdeal, w: &StandardWeighting) -> Result<MonomialIdeal> {
    if !j.is_squarefree() {
        return Err(domain("weighting applies to squarefree ideals only"));
    }
    if w.d.len() != j.nvars() {
        return Err(Error::AmbientMismatch {
            left: j.nvars(),
            right: w.d.len(),
        });
    }
    let gens = j.generators().iter().map(|g| {
        Monomial::from_exponents(g.exponents().iter().zip(&w.d).map(|(&e, &d)| if e > 0 { d } else { 0 }))
    });
    MonomialIdeal::from_generators(j.nvars(), gens)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Polarization {
    pub ideal: MonomialIdeal,
    /// `map[k] = (i, l)`: flat variable `k` is `x_{i,l}` with `l` 1-based.
    pub map: Vec<(usize, Exp)>,
    /// Number of copies of each original variable.
    pub widths: Vec<Exp>,
}

impl Polarization {
    pub fn flat_index(&self, var: usize, copy: Exp) -> Option<usize> {
        if copy == 0 || copy > self.widths[var] {
            return None;
        }
        let offset: usize = self.widths[..var].iter().map(|&w| w as usize).sum();
        Some(offset + copy as usize - 1)
    }

    /// Substitutes `x_{i,l} -> x_i`.
    pub fn depolarize(&self, ideal: &MonomialIdeal) -> Result<MonomialIdeal> {
        if ideal.nvars() != self.map.len() {
            return Err(Error::AmbientMismatch {
                left: ideal.nvars(),
                right: self.map.len(),
            });
        }
        let n = self.widths.len();
        let gens: Result<Vec<Monomial>> = ideal
            .generators()
            .iter()
            .map(|g| {
                let mut exps = vec![0 as Exp; n];
                for k in g.support() {
                    let var = self.map[k].0;
                    exps[var] = exps[var].checked_add(g.exponent(k)).ok_or(Error::ExponentOverflow)?;
                }
                Ok(Monomial::from_exponents(exps))
            })
            .collect();
        MonomialIdeal::from_generators(n, gens?)
    }
}

pub fn polarize(ideal: &MonomialIdeal) -> Result<Polarization> {
    if ideal.is_zero() || ideal.is_unit() {
        return Err(domain("polarization needs a proper nonzero ideal"));
    }
    let n = ideal.nvars();
    let widths: Vec<Exp> = (0..n)
        .map(|v| ideal.generators().iter().map(|g| g.exponent(v)).max().unwrap_or(0))
        .collect();
    let map: Vec<(usize, Exp)> = widths
        .iter()
        .enumerate()
        .flat_map(|(v, &w)| (1..=w).map(move |l| (v, l)))
        .collect();
    let flat = map.len();
    let offsets: Vec<usize> = widths
        .iter()
        .scan(0usize, |acc, &w| {
            let o = *acc;
            *acc += w as usize;
            Some(o)
        })
        .collect();
    let gens = ideal.generators().iter().map(|g| {
        let mut exps = vec![0 as Exp; flat];
        for v in g.support() {
            for l in 0..g.exponent(v) as usize {
                exps[offsets[v] + l] = 1;
            }
        }
        Monomial::from_exponents(exps)
    });
    Ok(Polarization {
        ideal: MonomialIdeal::from_generators(flat, gens)?,
        map,
        widths,
    })
}

fn check_whisker_condition(p: &Support2Profile, ws: &WhiskerStructure) -> Result<()> {
    let g = p.graph();
    for (&c, &l) in ws.core.iter().zip(&ws.leaves) {
        if p.alpha(c, l) != Some(1) {
            return Err(Error::Domain(format!("whisker edge {{x{}, x{}}} needs exactly one generator", c + 1, l + 1)));
        }
        let wl = p.w1(c, l).expect("whisker edge");
        for &nb in g.neighbors(c) {
            if nb != l && p.mu(c, nb).expect("edge") > wl {
                return Err(Error::Domain(format!(
                    "whisker exponent at x{} is below mu on edge {{x{}, x{}}}",
                    c + 1,
                    c + 1,
                    nb + 1
                )));
            }
        }
    }
    Ok(())
}

fn check_structure(p: &Support2Profile, ws: &WhiskerStructure) -> Result<()> {
    let g = p.graph();
    let matches = g.recognize_whisker().is_some_and(|found| found.core == ws.core && found.leaves == ws.leaves);
    if !matches {
        return Err(domain("profile graph does not have the given whisker structure"));
    }
    Ok(())
}

/// The Artinian ideal on `u_0..u_{m-1}` obtained by identifying each core
/// variable with its whisker leaf.
pub fn artinian_fold(p: &Support2Profile, ws: &WhiskerStructure) -> Result<MonomialIdeal> {
    check_structure(p, ws)?;
    check_whisker_condition(p, ws)?;
    let m = ws.m;
    let mut gens = Vec::new();
    for (t, (&c, &l)) in ws.core.iter().zip(&ws.leaves).enumerate() {
        let e = p.w1(c, l).unwrap() + p.w1(l, c).unwrap();
        gens.push(Monomial::pure_power(m, t, e)?);
    }
    for e in p.edges() {
        let (Some(a), Some(b)) = (ws.relabel(e.i), ws.relabel(e.j)) else {
            continue;
        };
        if a >= m || b >= m {
            continue;
        }
        for &(x, y) in &e.pairs {
            gens.push(Monomial::from_factors(m, &[(a, x), (b, y)])?);
        }
    }
    let j = MonomialIdeal::from_generators(m, gens)?;
    for t in 0..m {
        let pure = j.generators().iter().any(|g| g.support_size() == 1 && g.exponent(t) > 0);
        if !pure {
            return Err(Error::Domain(format!("fold is not Artinian in u{}", t + 1)));
        }
    }
    Ok(j)
}

/// Image of `pol(J)` under `u_{t,l} -> x_{c,l}` for `l <= w_{c,leaf}` and
/// `x_{leaf, l - w_{c,leaf}}` otherwise, as an ideal in the ring of `pol(I)`.
pub fn fold_polarization_image(
    p: &Support2Profile,
    ws: &WhiskerStructure,
    pol_i: &Polarization,
) -> Result<MonomialIdeal> {
    let j = artinian_fold(p, ws)?;
    let pol_j = polarize(&j)?;
    let flat = pol_i.map.len();
    let mut target = vec![0usize; pol_j.map.len()];
    for (k, &(t, l)) in pol_j.map.iter().enumerate() {
        let (c, leaf) = (ws.core[t], ws.leaves[t]);
        let wc = p.w1(c, leaf).unwrap();
        let idx = if l <= wc {
            pol_i.flat_index(c, l)
        } else {
            pol_i.flat_index(leaf, l - wc)
        };
        target[k] = idx.ok_or_else(|| domain("fold variable has no image"))?;
    }
    let gens = pol_j.ideal.generators().iter().map(|g| {
        let mut exps = vec![0 as Exp; flat];
        for k in g.support() {
            exps[target[k]] = 1;
        }
        Monomial::from_exponents(exps)
    });
    MonomialIdeal::from_generators(flat, gens)
}

/// `pol(I) = phi(pol(J))`.
pub fn fold_identity_holds(p: &Support2Profile, ws: &WhiskerStructure) -> Result<bool> {
    let pol_i = polarize(&p.to_ideal())?;
    let image = fold_polarization_image(p, ws, &pol_i)?;
    Ok(image == pol_i.ideal)
}
