//! Monomial ideals in canonical form.
//!
//! A [`MonomialIdeal`] stores its minimal generating set as an antichain under
//! divisibility, sorted in the graded order of [`Monomial`]. Because the
//! minimal generating set is unique, structural equality is ideal equality.
//!
//! The zero ideal has no generators; the unit ideal has the single generator
//! `1`. Both are legal everywhere in this module.

use std::cmp::Reverse;
use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering as AtomicOrdering};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::monomial::{Exp, Monomial};

pub const DEFAULT_GENERATOR_LIMIT: usize = 100_000;

static GENERATOR_LIMIT: AtomicUsize = AtomicUsize::new(DEFAULT_GENERATOR_LIMIT);

/// Current ceiling on the generator count of any computed ideal.
pub fn generator_limit() -> usize {
    GENERATOR_LIMIT.load(AtomicOrdering::Relaxed)
}

/// Replaces the process-wide generator ceiling.
pub fn set_generator_limit(limit: usize) {
    GENERATOR_LIMIT.store(limit.max(1), AtomicOrdering::Relaxed);
}

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MonomialIdeal {
    #[serde(rename = "vars")]
    nvars: usize,
    #[serde(rename = "generators")]
    gens: Vec<Monomial>,
}

/// Support bitmask used as a cheap divisibility pre-filter.
#[inline]
fn support_mask(m: &Monomial) -> u64 {
    let mut mask = 0u64;
    for (i, &e) in m.exponents().iter().enumerate() {
        if e > 0 {
            mask |= 1u64 << (i % 64);
        }
    }
    mask
}

/// Reduces `cands` to the sorted antichain of its minimal elements.
pub(crate) fn minimize(mut cands: Vec<Monomial>, limit: usize) -> Result<Vec<Monomial>> {
    if cands.len() <= 1 {
        return Ok(cands);
    }
    let mut keyed: Vec<(u32, Monomial)> = cands.drain(..).map(|m| (m.degree(), m)).collect();
    keyed.sort_unstable_by(|(da, a), (db, b)| {
        da.cmp(db).then_with(|| Reverse(a.exponents()).cmp(&Reverse(b.exponents())))
    });
    keyed.dedup_by(|(_, a), (_, b)| a == b);

    let mut kept: Vec<(u64, Monomial)> = Vec::new();
    for (_, c) in keyed {
        let cm = support_mask(&c);
        let redundant = kept
            .iter()
            .any(|(gm, g)| gm & !cm == 0 && g.divides_unchecked(&c));
        if !redundant {
            kept.push((cm, c));
            if kept.len() > limit {
                return Err(Error::GeneratorLimit { limit });
            }
        }
    }
    Ok(kept.into_iter().map(|(_, m)| m).collect())
}

impl MonomialIdeal {
    /// Canonical ideal generated by `gens`; redundant generators are dropped.
    pub fn from_generators(nvars: usize, gens: impl IntoIterator<Item = Monomial>) -> Result<Self> {
        let gens: Vec<Monomial> = gens.into_iter().collect();
        for g in &gens {
            if g.nvars() != nvars {
                return Err(Error::AmbientMismatch {
                    left: nvars,
                    right: g.nvars(),
                });
            }
        }
        Ok(MonomialIdeal {
            nvars,
            gens: minimize(gens, usize::MAX)?,
        })
    }

    /// Convenience constructor from raw exponent rows.
    pub fn from_exponent_rows(rows: &[&[Exp]]) -> Result<Self> {
        let nvars = rows.first().map_or(0, |r| r.len());
        Self::from_generators(nvars, rows.iter().map(|r| Monomial::from_exponents(r.iter().copied())))
    }

    pub fn zero(nvars: usize) -> Self {
        MonomialIdeal {
            nvars,
            gens: Vec::new(),
        }
    }

    pub fn unit(nvars: usize) -> Self {
        MonomialIdeal {
            nvars,
            gens: vec![Monomial::one(nvars)],
        }
    }

    /// Ideal generated by the variables in `vars`.
    pub fn prime(nvars: usize, vars: &[usize]) -> Result<Self> {
        let gens = vars
            .iter()
            .map(|&v| Monomial::pure_power(nvars, v, 1))
            .collect::<Result<Vec<_>>>()?;
        Self::from_generators(nvars, gens)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.len() == 1 && self.gens[0].is_one()
    }

    fn check_ambient(&self, other: &MonomialIdeal) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::AmbientMismatch {
                left: self.nvars,
                right: other.nvars,
            });
        }
        Ok(())
    }

    /// Membership: some generator divides `m`.
    ///
    /// Panics if `m` lives in a different ring.
    pub fn contains_monomial(&self, m: &Monomial) -> bool {
        assert_eq!(m.nvars(), self.nvars, "monomial and ideal live in different rings");
        let mm = support_mask(m);
        self.gens
            .iter()
            .any(|g| support_mask(g) & !mm == 0 && g.divides_unchecked(m))
    }

    pub fn contains_ideal(&self, other: &MonomialIdeal) -> Result<bool> {
        self.check_ambient(other)?;
        Ok(other.gens.iter().all(|g| self.contains_monomial(g)))
    }

    pub fn equals(&self, other: &MonomialIdeal) -> Result<bool> {
        self.check_ambient(other)?;
        Ok(self.gens == other.gens)
    }

    pub fn sum(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.check_ambient(other)?;
        let cands = self.gens.iter().chain(&other.gens).cloned().collect();
        Ok(MonomialIdeal {
            nvars: self.nvars,
            gens: minimize(cands, generator_limit())?,
        })
    }

    pub fn intersect(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.intersect_limited(other, generator_limit())
    }

    pub fn intersect_limited(&self, other: &MonomialIdeal, limit: usize) -> Result<MonomialIdeal> {
        self.check_ambient(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(MonomialIdeal::zero(self.nvars));
        }
        if self.is_unit() {
            return Ok(other.clone());
        }
        if other.is_unit() {
            return Ok(self.clone());
        }
        // A generator already in the other ideal is its own contribution; only
        // pairs of "outside" generators need an lcm.
        let mut cands = Vec::new();
        let mut lhs_out = Vec::new();
        for u in &self.gens {
            if other.contains_monomial(u) {
                cands.push(u.clone());
            } else {
                lhs_out.push(u);
            }
        }
        let mut rhs_out = Vec::new();
        for v in &other.gens {
            if self.contains_monomial(v) {
                cands.push(v.clone());
            } else {
                rhs_out.push(v);
            }
        }
        for u in &lhs_out {
            for v in &rhs_out {
                cands.push(u.lcm_unchecked(v));
            }
        }
        Ok(MonomialIdeal {
            nvars: self.nvars,
            gens: minimize(cands, limit)?,
        })
    }

    /// Intersection of several ideals in the same ring, folded smallest
    /// first. An empty list yields the unit ideal of a ring with `nvars`
    /// variables.
    pub fn intersect_all(nvars: usize, ideals: &[MonomialIdeal]) -> Result<MonomialIdeal> {
        let mut order: Vec<&MonomialIdeal> = ideals.iter().collect();
        for i in &order {
            if i.nvars != nvars {
                return Err(Error::AmbientMismatch {
                    left: nvars,
                    right: i.nvars,
                });
            }
        }
        order.sort_by_key(|i| i.len());
        let mut acc = MonomialIdeal::unit(nvars);
        for i in order {
            acc = acc.intersect(i)?;
        }
        Ok(acc)
    }

    pub fn product(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.product_limited(other, generator_limit())
    }

    pub fn product_limited(&self, other: &MonomialIdeal, limit: usize) -> Result<MonomialIdeal> {
        self.check_ambient(other)?;
        let mut cands = Vec::with_capacity(self.len() * other.len());
        for u in &self.gens {
            for v in &other.gens {
                cands.push(u.mul_unchecked(v)?);
            }
        }
        Ok(MonomialIdeal {
            nvars: self.nvars,
            gens: minimize(cands, limit)?,
        })
    }

    /// `I^s` for `s >= 1`, minimized after every multiplication step.
    pub fn power(&self, s: u32) -> Result<MonomialIdeal> {
        self.power_limited(s, generator_limit())
    }

    pub fn power_limited(&self, s: u32, limit: usize) -> Result<MonomialIdeal> {
        if s == 0 {
            return Err(Error::Domain("power exponent must be at least 1".into()));
        }
        let mut acc = self.clone();
        for _ in 1..s {
            acc = acc.product_limited(self, limit)?;
        }
        Ok(acc)
    }

    pub fn radical(&self) -> MonomialIdeal {
        let cands = self.gens.iter().map(Monomial::radical).collect();
        MonomialIdeal {
            nvars: self.nvars,
            gens: minimize(cands, usize::MAX).expect("unbounded minimize cannot fail"),
        }
    }

    pub fn is_squarefree(&self) -> bool {
        self.gens.iter().all(Monomial::is_squarefree)
    }

    /// Generators obtained by projecting every generator onto `vars`.
    pub fn project_to(&self, vars: &[usize]) -> MonomialIdeal {
        let cands = self.gens.iter().map(|g| g.project_to(vars)).collect();
        MonomialIdeal {
            nvars: self.nvars,
            gens: minimize(cands, usize::MAX).expect("unbounded minimize cannot fail"),
        }
    }

    /// The ideal with generator `g` removed (not re-minimized: removing from
    /// an antichain leaves an antichain).
    pub(crate) fn without(&self, idx: usize) -> MonomialIdeal {
        let mut gens = self.gens.clone();
        gens.remove(idx);
        MonomialIdeal {
            nvars: self.nvars,
            gens,
        }
    }

    /// Variables appearing in some generator, ascending.
    pub fn used_variables(&self) -> Vec<usize> {
        (0..self.nvars)
            .filter(|&v| self.gens.iter().any(|g| g.exponent(v) > 0))
            .collect()
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.gens.is_empty() {
            return f.write_str("0");
        }
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{self}>")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(e: &[Exp]) -> Monomial {
        Monomial::from_exponents(e.iter().copied())
    }

    fn ideal(rows: &[&[Exp]]) -> MonomialIdeal {
        MonomialIdeal::from_exponent_rows(rows).unwrap()
    }

    fn quartic_path() -> MonomialIdeal {
        ideal(&[&[1, 4, 0, 0], &[0, 4, 1, 0], &[0, 1, 4, 0], &[0, 0, 4, 1]])
    }

    #[test]
    fn from_generators_drops_redundant() {
        let i = ideal(&[&[1, 2, 0], &[2, 3, 0], &[0, 1, 1]]);
        assert_eq!(i.generators(), &[m(&[0, 1, 1]), m(&[1, 2, 0])]);
        assert!(MonomialIdeal::from_generators(3, vec![]).unwrap().is_zero());
        let i = ideal(&[&[0, 4, 0, 0], &[0, 1, 4, 0], &[0, 0, 4, 0]]);
        assert_eq!(i, ideal(&[&[0, 4, 0, 0], &[0, 0, 4, 0]]));
    }

    #[test]
    fn from_generators_rejects_mixed_rings() {
        let err = MonomialIdeal::from_generators(3, vec![m(&[1, 0, 0]), m(&[1, 0])]).unwrap_err();
        assert_eq!(err, Error::AmbientMismatch { left: 3, right: 2 });
    }

    #[test]
    fn membership_examples() {
        let q = ideal(&[&[0, 4, 0, 0], &[0, 0, 4, 0]]);
        assert!(q.contains_monomial(&m(&[0, 4, 4, 0])));
        assert!(!MonomialIdeal::zero(3).contains_monomial(&Monomial::one(3)));
        let sq = quartic_path().power(2).unwrap();
        assert!(!sq.contains_monomial(&m(&[0, 4, 4, 0])));
    }

    #[test]
    fn intersection_examples() {
        let p13 = MonomialIdeal::prime(4, &[0, 2]).unwrap();
        let p24 = MonomialIdeal::prime(4, &[1, 3]).unwrap();
        let q = ideal(&[&[0, 2, 0, 0], &[0, 1, 1, 0], &[0, 0, 2, 0]]);
        let got = MonomialIdeal::intersect_all(4, &[p13, p24, q]).unwrap();
        assert_eq!(got, ideal(&[&[1, 2, 0, 0], &[0, 1, 1, 0], &[0, 0, 2, 1]]));

        let i = quartic_path();
        assert_eq!(i.intersect(&MonomialIdeal::unit(4)).unwrap(), i);

        let a = ideal(&[&[0, 1, 0], &[0, 0, 2]]);
        let b = ideal(&[&[0, 2, 0], &[0, 0, 1]]);
        assert_eq!(a.intersect(&b).unwrap(), ideal(&[&[0, 2, 0], &[0, 1, 1], &[0, 0, 2]]));
    }

    #[test]
    fn power_examples() {
        let sq = quartic_path().power(2).unwrap();
        assert!(sq.contains_monomial(&m(&[0, 5, 5, 0])));
        let i = quartic_path();
        assert_eq!(i.power(1).unwrap(), i);
        let p = MonomialIdeal::prime(3, &[0, 2]).unwrap();
        assert_eq!(p.power(2).unwrap(), ideal(&[&[2, 0, 0], &[1, 0, 1], &[0, 0, 2]]));
        assert!(i.power(0).is_err());
    }

    #[test]
    fn generator_limit_fails_fast() {
        let p = MonomialIdeal::prime(6, &[0, 1, 2, 3, 4, 5]).unwrap();
        // p^3 has C(8,3) = 56 generators
        assert_eq!(p.power_limited(3, 56).unwrap().len(), 56);
        assert_eq!(p.power_limited(3, 20).unwrap_err(), Error::GeneratorLimit { limit: 20 });
    }

    #[test]
    fn sum_examples() {
        let a = ideal(&[&[0, 1, 1]]);
        let b = ideal(&[&[0, 1, 0]]);
        assert_eq!(a.sum(&b).unwrap(), b);
        let i = quartic_path();
        assert_eq!(i.sum(&MonomialIdeal::zero(4)).unwrap(), i);
        let i = ideal(&[&[1, 2, 0, 0], &[0, 1, 1, 0], &[0, 0, 2, 1]]);
        let x2 = ideal(&[&[0, 1, 0, 0]]);
        assert_eq!(i.sum(&x2).unwrap(), ideal(&[&[0, 1, 0, 0], &[0, 0, 2, 1]]));
    }

    #[test]
    fn containment_and_equality() {
        let i = quartic_path();
        assert!(i.equals(&i).unwrap());
        assert!(i.contains_ideal(&i.power(2).unwrap()).unwrap());
        assert!(!i.power(2).unwrap().contains_ideal(&i).unwrap());
    }

    #[test]
    fn radical_examples() {
        let i = ideal(&[&[1, 2, 0, 0], &[0, 1, 1, 0], &[0, 0, 2, 1]]);
        assert_eq!(i.radical(), ideal(&[&[1, 1, 0, 0], &[0, 1, 1, 0], &[0, 0, 1, 1]]));
        let sf = ideal(&[&[1, 1, 0], &[0, 1, 1]]);
        assert_eq!(sf.radical(), sf);
        assert!(sf.is_squarefree());
        assert_eq!(ideal(&[&[0, 4, 0], &[0, 0, 4]]).radical(), ideal(&[&[0, 1, 0], &[0, 0, 1]]));
        assert!(!i.is_squarefree());
    }

    #[test]
    fn rendering() {
        let i = ideal(&[&[1, 2, 0, 0], &[0, 1, 1, 0], &[0, 0, 2, 1]]);
        assert_eq!(i.to_string(), "x2*x3, x1*x2^2, x3^2*x4");
        assert_eq!(MonomialIdeal::zero(2).to_string(), "0");
        assert_eq!(MonomialIdeal::unit(2).to_string(), "1");
    }

    fn arb_ideal() -> impl Strategy<Value = MonomialIdeal> {
        prop::collection::vec(prop::collection::vec(0u16..4, 4), 1..5).prop_map(|rows| {
            MonomialIdeal::from_generators(4, rows.into_iter().map(Monomial::from_exponents)).unwrap()
        })
    }

    fn arb_mono() -> impl Strategy<Value = Monomial> {
        prop::collection::vec(0u16..7, 4).prop_map(Monomial::from_exponents)
    }

    proptest! {
        #[test]
        fn canonical_form_is_an_idempotent_antichain(i in arb_ideal()) {
            let again = MonomialIdeal::from_generators(4, i.generators().to_vec()).unwrap();
            prop_assert_eq!(&again, &i);
            for (a, ga) in i.generators().iter().enumerate() {
                for (b, gb) in i.generators().iter().enumerate() {
                    if a != b {
                        prop_assert!(!ga.divides(gb).unwrap());
                    }
                }
            }
        }

        #[test]
        fn intersection_membership_is_conjunction(a in arb_ideal(), b in arb_ideal(), x in arb_mono()) {
            let ab = a.intersect(&b).unwrap();
            prop_assert_eq!(ab.contains_monomial(&x), a.contains_monomial(&x) && b.contains_monomial(&x));
        }

        #[test]
        fn product_laws(a in arb_ideal(), b in arb_ideal(), c in arb_ideal()) {
            prop_assert_eq!(a.product(&b).unwrap(), b.product(&a).unwrap());
            prop_assert_eq!(
                a.product(&b).unwrap().product(&c).unwrap(),
                a.product(&b.product(&c).unwrap()).unwrap()
            );
            prop_assert_eq!(a.power(3).unwrap(), a.power(1).unwrap().product(&a.power(2).unwrap()).unwrap());
        }

        #[test]
        fn radical_of_power(a in arb_ideal(), s in 1u32..5) {
            prop_assert_eq!(a.power(s).unwrap().radical(), a.radical());
        }

        #[test]
        fn equality_is_mutual_containment(a in arb_ideal(), b in arb_ideal()) {
            let mutual = a.contains_ideal(&b).unwrap() && b.contains_ideal(&a).unwrap();
            prop_assert_eq!(a.equals(&b).unwrap(), mutual);
        }
    }
}
