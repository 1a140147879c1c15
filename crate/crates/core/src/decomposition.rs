//! Irredundant irreducible decompositions and everything derived from them:
//! associated, minimal and embedded primes, primary components, minimality
//! of the decomposition, and unmixedness.
//!
//! The irreducible decomposition is computed by the splitting recursion
//! `I = (I' + <u1>) ∩ (I' + <u2>)` where `u = u1*u2` is a generator with
//! coprime non-unit factors and `I'` is `I` without `u`. The recursion bottoms
//! out at ideals generated by pure powers, which are irreducible.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::ideal::MonomialIdeal;
use crate::monomial::{Exp, Monomial};

/// The monomial prime `<x_i : i in vars>`; `vars` is sorted and 0-based.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PrimeSupport {
    vars: Vec<usize>,
}

impl PrimeSupport {
    pub fn new(vars: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut vars: Vec<usize> = vars.into_iter().collect();
        vars.sort_unstable();
        vars.dedup();
        if vars.is_empty() {
            return Err(domain("a prime support needs at least one variable"));
        }
        Ok(PrimeSupport { vars })
    }

    pub fn vars(&self) -> &[usize] {
        &self.vars
    }

    pub fn height(&self) -> usize {
        self.vars.len()
    }

    pub fn contains(&self, var: usize) -> bool {
        self.vars.binary_search(&var).is_ok()
    }

    pub fn is_subset(&self, other: &PrimeSupport) -> bool {
        self.vars.iter().all(|v| other.contains(*v))
    }

    pub fn to_ideal(&self, nvars: usize) -> Result<MonomialIdeal> {
        MonomialIdeal::prime(nvars, &self.vars)
    }
}

impl Ord for PrimeSupport {
    fn cmp(&self, other: &Self) -> Ordering {
        self.height()
            .cmp(&other.height())
            .then_with(|| self.vars.cmp(&other.vars))
    }
}

impl PartialOrd for PrimeSupport {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for PrimeSupport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("<")?;
        for (i, v) in self.vars.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "x{}", v + 1)?;
        }
        f.write_str(">")
    }
}

impl fmt::Debug for PrimeSupport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// An irreducible monomial ideal `<x_i^{a_i} : i in keys>`.
///
/// Stored as its corner monomial `prod x_i^{a_i}`; a zero exponent means the
/// variable does not occur.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IrreducibleComponent {
    corner: Monomial,
}

impl IrreducibleComponent {
    pub fn new(nvars: usize, entries: &[(usize, Exp)]) -> Result<Self> {
        if entries.is_empty() {
            return Err(domain("an irreducible component needs at least one variable"));
        }
        if entries.iter().any(|&(_, e)| e == 0) {
            return Err(domain("irreducible component exponents must be positive"));
        }
        Ok(IrreducibleComponent {
            corner: Monomial::from_factors(nvars, entries)?,
        })
    }

    pub fn nvars(&self) -> usize {
        self.corner.nvars()
    }

    /// `(variable, exponent)` pairs, ascending by variable.
    pub fn entries(&self) -> Vec<(usize, Exp)> {
        self.corner.support().map(|v| (v, self.corner.exponent(v))).collect()
    }

    pub fn radical(&self) -> PrimeSupport {
        PrimeSupport {
            vars: self.corner.support().collect(),
        }
    }

    pub fn to_ideal(&self) -> MonomialIdeal {
        let n = self.nvars();
        let gens = self
            .entries()
            .into_iter()
            .map(|(v, e)| Monomial::pure_power(n, v, e).expect("index within ring"));
        MonomialIdeal::from_generators(n, gens).expect("same ring")
    }

    /// `self ⊆ other` as ideals.
    pub fn is_contained_in(&self, other: &IrreducibleComponent) -> bool {
        self.corner.support().all(|v| {
            let b = other.corner.exponent(v);
            b > 0 && b <= self.corner.exponent(v)
        })
    }

    fn from_pure_power_ideal(ideal: &MonomialIdeal) -> Self {
        let mut corner = Monomial::one(ideal.nvars());
        for g in ideal.generators() {
            let v = g.support().next().expect("proper ideal has no unit generator");
            corner.exps_mut()[v] = g.exponent(v);
        }
        IrreducibleComponent { corner }
    }
}

impl Ord for IrreducibleComponent {
    fn cmp(&self, other: &Self) -> Ordering {
        self.radical()
            .cmp(&other.radical())
            .then_with(|| self.corner.exponents().cmp(other.corner.exponents()))
    }
}

impl PartialOrd for IrreducibleComponent {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for IrreducibleComponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}>", self.to_ideal())
    }
}

impl fmt::Debug for IrreducibleComponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DecompositionKind {
    Irreducible,
    Primary,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Component {
    pub radical: PrimeSupport,
    pub ideal: MonomialIdeal,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition {
    pub kind: DecompositionKind,
    pub components: Vec<Component>,
}

impl Decomposition {
    pub fn ideals(&self) -> Vec<MonomialIdeal> {
        self.components.iter().map(|c| c.ideal.clone()).collect()
    }

    /// Intersection of all components.
    pub fn recombine(&self, nvars: usize) -> Result<MonomialIdeal> {
        MonomialIdeal::intersect_all(nvars, &self.ideals())
    }
}

impl fmt::Display for Decomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.components.iter().enumerate() {
            if i > 0 {
                f.write_str(" ∩ ")?;
            }
            write!(f, "<{}>", c.ideal)?;
        }
        Ok(())
    }
}

fn require_proper_nonzero(ideal: &MonomialIdeal) -> Result<()> {
    if ideal.is_zero() {
        return Err(domain("the zero ideal has no irreducible decomposition here"));
    }
    if ideal.is_unit() {
        return Err(domain("the unit ideal has no irreducible decomposition"));
    }
    Ok(())
}

/// Sorts, deduplicates, and drops every component that contains another one.
///
/// Monomial ideals form a distributive lattice, so an irreducible component
/// is redundant in an intersection exactly when it contains some other
/// component; after this pass the list is irredundant.
fn prune(mut comps: Vec<IrreducibleComponent>) -> Vec<IrreducibleComponent> {
    comps.sort();
    comps.dedup();
    let keep: Vec<bool> = comps
        .iter()
        .enumerate()
        .map(|(i, c)| {
            !comps
                .iter()
                .enumerate()
                .any(|(j, d)| i != j && d.is_contained_in(c))
        })
        .collect();
    comps
        .into_iter()
        .zip(keep)
        .filter_map(|(c, k)| k.then_some(c))
        .collect()
}

fn split(
    ideal: &MonomialIdeal,
    memo: &mut HashMap<MonomialIdeal, Vec<IrreducibleComponent>>,
) -> Result<Vec<IrreducibleComponent>> {
    if let Some(hit) = memo.get(ideal) {
        return Ok(hit.clone());
    }
    let pivot = ideal.generators().iter().position(|g| g.support_size() >= 2);
    let comps = match pivot {
        None => vec![IrreducibleComponent::from_pure_power_ideal(ideal)],
        Some(idx) => {
            let u = &ideal.generators()[idx];
            let a = u.support().next().expect("support has at least two variables");
            let n = ideal.nvars();
            let u1 = Monomial::pure_power(n, a, u.exponent(a))?;
            let mut u2 = u.clone();
            u2.exps_mut()[a] = 0;
            let rest = ideal.without(idx);
            let left = rest.sum(&MonomialIdeal::from_generators(n, [u1])?)?;
            let right = rest.sum(&MonomialIdeal::from_generators(n, [u2])?)?;
            let mut comps = split(&left, memo)?;
            comps.extend(split(&right, memo)?);
            prune(comps)
        }
    };
    memo.insert(ideal.clone(), comps.clone());
    Ok(comps)
}

/// The irredundant irreducible components of a proper nonzero ideal, sorted
/// canonically.
pub fn irreducible_components(ideal: &MonomialIdeal) -> Result<Vec<IrreducibleComponent>> {
    require_proper_nonzero(ideal)?;
    let mut memo = HashMap::new();
    split(ideal, &mut memo)
}

pub fn irreducible_decomposition(ideal: &MonomialIdeal) -> Result<Decomposition> {
    let components = irreducible_components(ideal)?
        .into_iter()
        .map(|c| Component {
            radical: c.radical(),
            ideal: c.to_ideal(),
        })
        .collect();
    Ok(Decomposition {
        kind: DecompositionKind::Irreducible,
        components,
    })
}

/// Primes and minimality facts derived from one irreducible decomposition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeSummary {
    pub irreducible: Vec<IrreducibleComponent>,
    pub associated: Vec<PrimeSupport>,
    pub minimal: Vec<PrimeSupport>,
    pub embedded: Vec<PrimeSupport>,
    /// Radicals of the irreducible components are pairwise distinct.
    pub decomposition_minimal: bool,
}

impl PrimeSummary {
    pub fn of(ideal: &MonomialIdeal) -> Result<Self> {
        let irreducible = irreducible_components(ideal)?;
        let radicals: Vec<PrimeSupport> = irreducible.iter().map(|c| c.radical()).collect();
        let mut associated = radicals.clone();
        associated.sort();
        associated.dedup();
        let decomposition_minimal = associated.len() == radicals.len();
        let minimal: Vec<PrimeSupport> = associated
            .iter()
            .filter(|p| !associated.iter().any(|q| q != *p && q.is_subset(p)))
            .cloned()
            .collect();
        let embedded = associated
            .iter()
            .filter(|p| !minimal.contains(p))
            .cloned()
            .collect();
        Ok(PrimeSummary {
            irreducible,
            associated,
            minimal,
            embedded,
            decomposition_minimal,
        })
    }

    pub fn is_unmixed(&self) -> bool {
        self.associated
            .windows(2)
            .all(|w| w[0].height() == w[1].height())
    }
}

pub fn associated_primes(ideal: &MonomialIdeal) -> Result<Vec<PrimeSupport>> {
    Ok(PrimeSummary::of(ideal)?.associated)
}

pub fn minimal_primes(ideal: &MonomialIdeal) -> Result<Vec<PrimeSupport>> {
    Ok(PrimeSummary::of(ideal)?.minimal)
}

pub fn embedded_primes(ideal: &MonomialIdeal) -> Result<Vec<PrimeSupport>> {
    Ok(PrimeSummary::of(ideal)?.embedded)
}

pub fn is_decomposition_minimal(ideal: &MonomialIdeal) -> Result<bool> {
    Ok(PrimeSummary::of(ideal)?.decomposition_minimal)
}

pub fn is_unmixed(ideal: &MonomialIdeal) -> Result<bool> {
    Ok(PrimeSummary::of(ideal)?.is_unmixed())
}

/// `Q(P)`: the contraction of the localization at a minimal prime, i.e. the
/// generators with every variable outside `P` set to 1.
pub(crate) fn project_component(ideal: &MonomialIdeal, prime: &PrimeSupport) -> MonomialIdeal {
    ideal.project_to(prime.vars())
}

/// The primary component of `ideal` at the minimal prime `prime`.
pub fn primary_component(ideal: &MonomialIdeal, prime: &PrimeSupport) -> Result<MonomialIdeal> {
    let minimal = minimal_primes(ideal)?;
    if !minimal.contains(prime) {
        return Err(Error::Domain(format!("{prime} is not a minimal prime of the ideal")));
    }
    Ok(project_component(ideal, prime))
}

/// Irreducible components grouped by radical, each group intersected.
pub fn primary_decomposition(ideal: &MonomialIdeal) -> Result<Decomposition> {
    let summary = PrimeSummary::of(ideal)?;
    primary_from_summary(ideal, &summary)
}

pub fn primary_from_summary(ideal: &MonomialIdeal, summary: &PrimeSummary) -> Result<Decomposition> {
    let n = ideal.nvars();
    let mut groups: BTreeMap<PrimeSupport, Vec<MonomialIdeal>> = BTreeMap::new();
    for c in &summary.irreducible {
        groups.entry(c.radical()).or_default().push(c.to_ideal());
    }
    let mut components = Vec::with_capacity(groups.len());
    for (radical, parts) in groups {
        components.push(Component {
            radical,
            ideal: MonomialIdeal::intersect_all(n, &parts)?,
        });
    }
    let ideals: Vec<MonomialIdeal> = components.iter().map(|c| c.ideal.clone()).collect();
    if !is_irredundant(ideal, &ideals)? {
        return Err(domain("grouped primary decomposition is redundant"));
    }
    Ok(Decomposition {
        kind: DecompositionKind::Primary,
        components,
    })
}

/// Leave-one-out check: `parts` intersect to `ideal` and no part can be
/// dropped.
pub fn is_irredundant(ideal: &MonomialIdeal, parts: &[MonomialIdeal]) -> Result<bool> {
    let n = ideal.nvars();
    if MonomialIdeal::intersect_all(n, parts)? != *ideal {
        return Ok(false);
    }
    for i in 0..parts.len() {
        let others: Vec<MonomialIdeal> = parts
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, p)| p.clone())
            .collect();
        if MonomialIdeal::intersect_all(n, &others)? == *ideal {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ideal(rows: &[&[Exp]]) -> MonomialIdeal {
        MonomialIdeal::from_exponent_rows(rows).unwrap()
    }

    fn comp(n: usize, e: &[(usize, Exp)]) -> IrreducibleComponent {
        IrreducibleComponent::new(n, e).unwrap()
    }

    fn prime(v: &[usize]) -> PrimeSupport {
        PrimeSupport::new(v.iter().copied()).unwrap()
    }

    fn weighted_path() -> MonomialIdeal {
        ideal(&[&[1, 2, 0, 0], &[0, 1, 1, 0], &[0, 0, 2, 1]])
    }

    fn quartic_path() -> MonomialIdeal {
        ideal(&[&[1, 4, 0, 0], &[0, 4, 1, 0], &[0, 1, 4, 0], &[0, 0, 4, 1]])
    }

    #[test]
    fn irreducible_weighted_path() {
        let mut got = irreducible_components(&weighted_path()).unwrap();
        got.sort();
        let mut want = vec![
            comp(4, &[(0, 1), (2, 1)]),
            comp(4, &[(1, 1), (3, 1)]),
            comp(4, &[(1, 1), (2, 2)]),
            comp(4, &[(1, 2), (2, 1)]),
        ];
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn irreducible_of_irreducible_is_itself() {
        let q = ideal(&[&[0, 4, 0], &[0, 0, 4]]);
        assert_eq!(irreducible_components(&q).unwrap(), vec![comp(3, &[(1, 4), (2, 4)])]);
    }

    #[test]
    fn irreducible_quartic_path() {
        let got = irreducible_components(&quartic_path()).unwrap();
        let mut want = vec![
            comp(4, &[(0, 1), (2, 1)]),
            comp(4, &[(1, 1), (3, 1)]),
            comp(4, &[(1, 4), (2, 4)]),
        ];
        want.sort();
        assert_eq!(got, want);
        assert!(is_decomposition_minimal(&quartic_path()).unwrap());
    }

    #[test]
    fn zero_and_unit_are_domain_errors() {
        assert!(matches!(irreducible_components(&MonomialIdeal::zero(2)), Err(Error::Domain(_))));
        assert!(matches!(irreducible_components(&MonomialIdeal::unit(2)), Err(Error::Domain(_))));
    }

    #[test]
    fn primes_of_weighted_path() {
        let s = PrimeSummary::of(&weighted_path()).unwrap();
        assert_eq!(s.minimal, vec![prime(&[0, 2]), prime(&[1, 2]), prime(&[1, 3])]);
        assert!(s.embedded.is_empty());
        assert!(!s.decomposition_minimal);
        assert!(s.is_unmixed());
    }

    #[test]
    fn cubic_triangle_has_no_embedded_prime() {
        let i = ideal(&[&[1, 3, 0], &[0, 2, 1], &[0, 1, 2], &[1, 0, 3]]);
        assert!(embedded_primes(&i).unwrap().is_empty());
    }

    #[test]
    fn squarefree_path_primes_are_vertex_covers() {
        let i = ideal(&[&[1, 1, 0, 0], &[0, 1, 1, 0], &[0, 0, 1, 1]]);
        let s = PrimeSummary::of(&i).unwrap();
        assert_eq!(s.minimal, vec![prime(&[0, 2]), prime(&[1, 2]), prime(&[1, 3])]);
        assert_eq!(s.associated, s.minimal);
        assert!(s.decomposition_minimal);
    }

    #[test]
    fn primary_components_by_projection() {
        let q = primary_component(&weighted_path(), &prime(&[1, 2])).unwrap();
        assert_eq!(q, ideal(&[&[0, 2, 0, 0], &[0, 1, 1, 0], &[0, 0, 2, 0]]));
        let q = primary_component(&quartic_path(), &prime(&[1, 2])).unwrap();
        assert_eq!(q, ideal(&[&[0, 4, 0, 0], &[0, 0, 4, 0]]));
        let j = ideal(&[&[1, 4, 0], &[0, 3, 1], &[0, 2, 2], &[0, 1, 3], &[1, 0, 4]]);
        let q = primary_component(&j, &prime(&[1, 2])).unwrap();
        assert_eq!(q, ideal(&[&[0, 4, 0], &[0, 3, 1], &[0, 2, 2], &[0, 1, 3], &[0, 0, 4]]));
    }

    #[test]
    fn primary_component_rejects_non_minimal_prime() {
        let err = primary_component(&weighted_path(), &prime(&[0, 1, 2])).unwrap_err();
        assert!(matches!(err, Error::Domain(_)));
    }

    #[test]
    fn primary_decomposition_pentagon() {
        let i = ideal(&[
            &[1, 1, 0, 0, 0],
            &[0, 1, 2, 0, 0],
            &[0, 0, 1, 1, 0],
            &[0, 0, 0, 2, 1],
            &[1, 0, 0, 0, 1],
        ]);
        let d = primary_decomposition(&i).unwrap();
        let got: Vec<MonomialIdeal> = d.ideals();
        let want = vec![
            MonomialIdeal::prime(5, &[0, 1, 3]).unwrap(),
            MonomialIdeal::prime(5, &[1, 2, 4]).unwrap(),
            MonomialIdeal::prime(5, &[1, 3, 4]).unwrap(),
            MonomialIdeal::prime(5, &[0, 2, 4]).unwrap(),
            ideal(&[&[1, 0, 0, 0, 0], &[0, 0, 2, 0, 0], &[0, 0, 1, 1, 0], &[0, 0, 0, 2, 0]]),
        ];
        assert_eq!(got.len(), 5);
        for w in &want {
            assert!(got.contains(w), "missing component {w}");
        }
    }

    #[test]
    fn unmixedness() {
        let c4 = ideal(&[&[1, 1, 0, 0], &[0, 1, 1, 0], &[0, 0, 1, 1], &[1, 0, 0, 1]]);
        assert!(is_unmixed(&c4).unwrap());
        assert!(is_unmixed(&weighted_path()).unwrap());
        // x1*x2, x1^2*x3: associated primes <x1>, <x2,x3>
        let mixed = ideal(&[&[1, 1, 0], &[2, 0, 1]]);
        assert!(!is_unmixed(&mixed).unwrap());
    }

    #[test]
    fn irredundancy_leave_one_out() {
        let i = weighted_path();
        let parts: Vec<MonomialIdeal> = irreducible_components(&i)
            .unwrap()
            .iter()
            .map(IrreducibleComponent::to_ideal)
            .collect();
        assert!(is_irredundant(&i, &parts).unwrap());
        let mut padded = parts.clone();
        padded.push(MonomialIdeal::prime(4, &[0, 1, 2]).unwrap());
        assert!(!is_irredundant(&i, &padded).unwrap());
    }
}
