//! Symbolic powers `I^(s) = ∩_{P ∈ MinAss(I)} Q(P)^s` and bounded Simis checks.

use serde::{Deserialize, Serialize};

use crate::decomposition::{self, PrimeSupport};
use crate::error::{domain, Result};
use crate::ideal::MonomialIdeal;
use crate::monomial::Monomial;

fn require_proper_nonzero(ideal: &MonomialIdeal) -> Result<()> {
    if ideal.is_zero() || ideal.is_unit() {
        return Err(domain("symbolic powers need a proper nonzero ideal"));
    }
    Ok(())
}

fn check_degree(s: u32) -> Result<()> {
    if s == 0 {
        return Err(domain("symbolic power degree must be at least 1"));
    }
    Ok(())
}

/// The `s`-th powers of the minimal primary components.
pub fn component_powers(ideal: &MonomialIdeal, s: u32) -> Result<Vec<(PrimeSupport, MonomialIdeal)>> {
    require_proper_nonzero(ideal)?;
    check_degree(s)?;
    decomposition::minimal_primes(ideal)?
        .into_iter()
        .map(|p| {
            let q = decomposition::project_component(ideal, &p);
            Ok((p, q.power(s)?))
        })
        .collect()
}

pub fn symbolic_power(ideal: &MonomialIdeal, s: u32) -> Result<MonomialIdeal> {
    let parts: Vec<MonomialIdeal> = component_powers(ideal, s)?.into_iter().map(|(_, q)| q).collect();
    MonomialIdeal::intersect_all(ideal.nvars(), &parts)
}

/// Membership in `I^(s)` checked component by component, without building
/// the intersection.
pub fn symbolic_power_contains(ideal: &MonomialIdeal, s: u32, m: &Monomial) -> Result<bool> {
    Ok(component_powers(ideal, s)?
        .iter()
        .all(|(_, q)| q.contains_monomial(m)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimisVerdict {
    pub degree_checked: u32,
    pub holds: bool,
    /// Canonically least generator of `I^(s)` outside `I^s`, when `holds` is false.
    pub witness: Option<Monomial>,
}

pub fn is_simis_in_degree(ideal: &MonomialIdeal, s: u32) -> Result<SimisVerdict> {
    let symbolic = symbolic_power(ideal, s)?;
    let ordinary = ideal.power(s)?;
    // ordinary ⊆ symbolic always, so equality is decided by the symbolic
    // generators alone; generators come sorted, so the first miss is least.
    let witness = symbolic
        .generators()
        .iter()
        .find(|g| !ordinary.contains_monomial(g))
        .cloned();
    Ok(SimisVerdict {
        degree_checked: s,
        holds: witness.is_none(),
        witness,
    })
}

/// Least `s <= s_max` where `I^(s) != I^s`, with its witness.
pub fn first_simis_failure(ideal: &MonomialIdeal, s_max: u32) -> Result<Option<(u32, Monomial)>> {
    for s in 1..=s_max {
        let v = is_simis_in_degree(ideal, s)?;
        if let Some(w) = v.witness {
            return Ok(Some((s, w)));
        }
    }
    Ok(None)
}

/// Verdicts for every degree `1..=s_max`.
pub fn simis_profile(ideal: &MonomialIdeal, s_max: u32) -> Result<Vec<SimisVerdict>> {
    (1..=s_max).map(|s| is_simis_in_degree(ideal, s)).collect()
}

/// `I^(1) != I`, decided by computing the first symbolic power.
pub fn has_embedded_primes_via_saturation_free_check(ideal: &MonomialIdeal) -> Result<bool> {
    Ok(symbolic_power(ideal, 1)? != *ideal)
}
