//! Monomials as dense exponent vectors.
//!
//! A [`Monomial`] over `n` variables is a vector of `n` nonnegative exponents;
//! the all-zero vector is the unit monomial `1`. Variables are indexed from 0
//! internally and rendered 1-based (`x1`, `x2`, ...).
//!
//! All binary operations require both operands to live in the same ambient
//! ring (same variable count) and fail with [`Error::AmbientMismatch`]
//! otherwise. Exponent arithmetic is checked: an overflow is an error, never
//! a silent wrap.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{Error, Result};

/// Exponent type. Exponents stay small in practice; `u16` keeps monomials inline.
pub type Exp = u16;

pub(crate) type ExpVec = SmallVec<[Exp; 16]>;

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Monomial {
    exps: ExpVec,
}

impl Monomial {
    /// The unit monomial `1` in a ring with `nvars` variables.
    pub fn one(nvars: usize) -> Self {
        Monomial {
            exps: SmallVec::from_elem(0, nvars),
        }
    }

    pub fn from_exponents(exps: impl IntoIterator<Item = Exp>) -> Self {
        Monomial {
            exps: exps.into_iter().collect(),
        }
    }

    /// `x_var^exp` (0-based `var`).
    pub fn pure_power(nvars: usize, var: usize, exp: Exp) -> Result<Self> {
        if var >= nvars {
            return Err(Error::VariableOutOfRange { index: var, nvars });
        }
        let mut m = Monomial::one(nvars);
        m.exps[var] = exp;
        Ok(m)
    }

    /// Builds a monomial from `(variable, exponent)` factors; repeated
    /// variables multiply.
    pub fn from_factors(nvars: usize, factors: &[(usize, Exp)]) -> Result<Self> {
        let mut m = Monomial::one(nvars);
        for &(var, exp) in factors {
            if var >= nvars {
                return Err(Error::VariableOutOfRange { index: var, nvars });
            }
            m.exps[var] = m.exps[var].checked_add(exp).ok_or(Error::ExponentOverflow)?;
        }
        Ok(m)
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn exponents(&self) -> &[Exp] {
        &self.exps
    }

    pub fn exponent(&self, var: usize) -> Exp {
        self.exps.get(var).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().map(|&e| u32::from(e)).sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn is_squarefree(&self) -> bool {
        self.exps.iter().all(|&e| e <= 1)
    }

    /// Variables with a positive exponent, ascending.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i)
    }

    pub fn support_size(&self) -> usize {
        self.exps.iter().filter(|&&e| e > 0).count()
    }

    fn check_ambient(&self, other: &Monomial) -> Result<()> {
        if self.nvars() != other.nvars() {
            return Err(Error::AmbientMismatch {
                left: self.nvars(),
                right: other.nvars(),
            });
        }
        Ok(())
    }

    /// `self | other`: coordinatewise `<=`.
    pub fn divides(&self, other: &Monomial) -> Result<bool> {
        self.check_ambient(other)?;
        Ok(self.divides_unchecked(other))
    }

    pub fn lcm(&self, other: &Monomial) -> Result<Monomial> {
        self.check_ambient(other)?;
        Ok(self.lcm_unchecked(other))
    }

    pub fn mul(&self, other: &Monomial) -> Result<Monomial> {
        self.check_ambient(other)?;
        self.mul_unchecked(other)
    }

    /// Exact quotient `self / other`, if `other | self`.
    pub fn checked_div(&self, other: &Monomial) -> Result<Option<Monomial>> {
        self.check_ambient(other)?;
        if !other.divides_unchecked(self) {
            return Ok(None);
        }
        Ok(Some(Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a - b).collect(),
        }))
    }

    /// Sets every variable outside `vars` to 1. The ambient ring is unchanged;
    /// indices beyond the ring have no effect.
    pub fn project_to(&self, vars: &[usize]) -> Monomial {
        let mut out = Monomial::one(self.nvars());
        for &v in vars {
            if v < self.nvars() {
                out.exps[v] = self.exps[v];
            }
        }
        out
    }

    /// Exponents clamped to 1.
    pub fn radical(&self) -> Monomial {
        Monomial {
            exps: self.exps.iter().map(|&e| e.min(1)).collect(),
        }
    }

    /// `self^k` with checked arithmetic.
    pub fn pow(&self, k: u32) -> Result<Monomial> {
        let mut exps = ExpVec::with_capacity(self.nvars());
        for &e in &self.exps {
            let p = u32::from(e) * k;
            exps.push(Exp::try_from(p).map_err(|_| Error::ExponentOverflow)?);
        }
        Ok(Monomial { exps })
    }

    #[inline]
    pub(crate) fn divides_unchecked(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    #[inline]
    pub(crate) fn lcm_unchecked(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(&a, &b)| a.max(b))
                .collect(),
        }
    }

    #[inline]
    pub(crate) fn mul_unchecked(&self, other: &Monomial) -> Result<Monomial> {
        let mut exps = ExpVec::with_capacity(self.nvars());
        for (&a, &b) in self.exps.iter().zip(&other.exps) {
            exps.push(a.checked_add(b).ok_or(Error::ExponentOverflow)?);
        }
        Ok(Monomial { exps })
    }

    pub(crate) fn exps_mut(&mut self) -> &mut ExpVec {
        &mut self.exps
    }
}

/// Graded order: lower total degree first; ties broken lexicographically
/// with `x1 > x2 > ...`, so `x1^2 < x1*x2 < x2^2` in canonical position.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.exps.cmp(&self.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let mut first = true;
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{}", i + 1)?;
            } else {
                write!(f, "x{}^{}", i + 1, e)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(e: &[Exp]) -> Monomial {
        Monomial::from_exponents(e.iter().copied())
    }

    #[test]
    fn divides_examples() {
        assert!(m(&[0, 1, 1]).divides(&m(&[0, 4, 4])).unwrap());
        assert!(Monomial::one(3).divides(&m(&[2, 0, 5])).unwrap());
        assert!(!m(&[1, 2, 0]).divides(&m(&[1, 1, 0])).unwrap());
    }

    #[test]
    fn ambient_mismatch_is_rejected() {
        let err = m(&[1, 0]).divides(&m(&[1, 0, 0])).unwrap_err();
        assert_eq!(err, Error::AmbientMismatch { left: 2, right: 3 });
        assert!(m(&[1]).lcm(&m(&[1, 1])).is_err());
        assert!(m(&[1]).mul(&m(&[1, 1])).is_err());
    }

    #[test]
    fn lcm_examples() {
        assert_eq!(m(&[0, 1, 0]).lcm(&m(&[0, 0, 2])).unwrap(), m(&[0, 1, 2]));
        let u = m(&[3, 0, 1]);
        assert_eq!(u.lcm(&Monomial::one(3)).unwrap(), u);
        assert_eq!(m(&[0, 2, 0]).lcm(&m(&[0, 1, 1])).unwrap(), m(&[0, 2, 1]));
    }

    #[test]
    fn mul_examples() {
        assert_eq!(m(&[1, 2, 0]).mul(&m(&[0, 1, 1])).unwrap(), m(&[1, 3, 1]));
        let u = m(&[2, 0, 7]);
        assert_eq!(u.mul(&Monomial::one(3)).unwrap(), u);
        // (x2^4 x3)(x2 x3^4) = x2^5 x3^5
        assert_eq!(m(&[0, 4, 1, 0]).mul(&m(&[0, 1, 4, 0])).unwrap(), m(&[0, 5, 5, 0]));
    }

    #[test]
    fn mul_overflow_fails_loudly() {
        let big = m(&[Exp::MAX, 0]);
        assert_eq!(big.mul(&m(&[1, 0])).unwrap_err(), Error::ExponentOverflow);
        assert_eq!(big.pow(2).unwrap_err(), Error::ExponentOverflow);
    }

    #[test]
    fn projection() {
        // x1*x2^2 -> x2^2 on {x2, x3}
        assert_eq!(m(&[1, 2, 0, 0]).project_to(&[1, 2]), m(&[0, 2, 0, 0]));
        assert_eq!(m(&[0, 4, 1, 0]).project_to(&[1, 2]), m(&[0, 4, 1, 0]));
        let gens = [m(&[1, 2, 0, 0]), m(&[0, 1, 1, 0]), m(&[0, 0, 2, 1])];
        let projected: Vec<_> = gens.iter().map(|g| g.project_to(&[1, 2])).collect();
        assert_eq!(projected, vec![m(&[0, 2, 0, 0]), m(&[0, 1, 1, 0]), m(&[0, 0, 2, 0])]);
    }

    #[test]
    fn rendering() {
        assert_eq!(m(&[1, 2, 0, 1]).to_string(), "x1*x2^2*x4");
        assert_eq!(Monomial::one(4).to_string(), "1");
    }

    #[test]
    fn canonical_order_is_graded_then_lex() {
        let mut v = vec![m(&[0, 0, 2]), m(&[1, 0, 1]), m(&[2, 0, 0]), m(&[0, 1, 0])];
        v.sort();
        assert_eq!(v, vec![m(&[0, 1, 0]), m(&[2, 0, 0]), m(&[1, 0, 1]), m(&[0, 0, 2])]);
    }

    fn arb_mono() -> impl Strategy<Value = Monomial> {
        prop::collection::vec(0u16..5, 4).prop_map(Monomial::from_exponents)
    }

    proptest! {
        #[test]
        fn divides_is_a_partial_order(a in arb_mono(), b in arb_mono(), c in arb_mono()) {
            prop_assert!(a.divides(&a).unwrap());
            if a.divides(&b).unwrap() && b.divides(&a).unwrap() {
                prop_assert_eq!(&a, &b);
            }
            if a.divides(&b).unwrap() && b.divides(&c).unwrap() {
                prop_assert!(a.divides(&c).unwrap());
            }
        }

        #[test]
        fn lcm_is_least_upper_bound(a in arb_mono(), b in arb_mono(), w in arb_mono()) {
            let l = a.lcm(&b).unwrap();
            prop_assert!(a.divides(&l).unwrap() && b.divides(&l).unwrap());
            if a.divides(&w).unwrap() && b.divides(&w).unwrap() {
                prop_assert!(l.divides(&w).unwrap());
            }
            prop_assert_eq!(a.divides(&b).unwrap(), l == b);
        }

        #[test]
        fn mul_is_commutative_associative(a in arb_mono(), b in arb_mono(), c in arb_mono()) {
            prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
            prop_assert_eq!(
                a.mul(&b).unwrap().mul(&c).unwrap(),
                a.mul(&b.mul(&c).unwrap()).unwrap()
            );
            prop_assert_eq!(a.mul(&Monomial::one(4)).unwrap(), a);
        }
    }
}
