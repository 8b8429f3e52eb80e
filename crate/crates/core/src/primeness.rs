//! Deciding gr-primeness and primeness by enumeration.
//!
//! `aRb = {0}` iff `a e_k b = 0` for every basis vector `e_k`, since the
//! product is additive in the middle argument. The outer arguments are never
//! reduced: the predicate is not additive in `a` and `b` jointly.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::budget::{self, Budget};
use crate::error::{Error, Result};
use crate::grading::CertifiedGrading;
use crate::ring::Ring;

/// A pair of nonzero elements with `aRb = {0}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnnihilatingPair {
    pub a: Vec<u32>,
    pub b: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimenessReport {
    pub gr_prime: bool,
    pub prime: Option<bool>,
    /// Homogeneous witness against gr-primeness.
    pub gr_witness: Option<AnnihilatingPair>,
    /// Witness against primeness.
    pub prime_witness: Option<AnnihilatingPair>,
}

/// Whether `a x b = 0` for every basis vector `x`.
pub fn annihilates(ring: &Ring, a: &[u32], b: &[u32]) -> bool {
    (0..ring.dim()).all(|k| {
        let ak = ring.mul_basis_right(a, k);
        crate::modular::is_zero(&ring.mul_raw(&ak, b))
    })
}

/// Full middle quantifier: `a x b = 0` for every element `x` of `R`.
pub fn annihilates_exhaustive(ring: &Ring, a: &[u32], b: &[u32], budget: u64) -> Result<bool> {
    let all = ring.all_elements_raw(budget)?;
    Ok(all.iter().all(|x| crate::modular::is_zero(&ring.mul_raw(&ring.mul_raw(a, x), b))))
}

/// First pair in lexicographic order of `candidates × candidates` with
/// `aRb = {0}`. Parallel, but the answer does not depend on scheduling.
fn first_annihilating(ring: &Ring, candidates: &[Vec<u32>]) -> Option<AnnihilatingPair> {
    candidates.par_iter().find_map_first(|a| {
        candidates
            .iter()
            .find(|b| annihilates(ring, a, b))
            .map(|b| AnnihilatingPair {
                a: a.clone(),
                b: b.clone(),
            })
    })
}

/// gr-primeness over all pairs of nonzero homogeneous elements.
pub fn is_gr_prime(ring: &Ring, grading: &CertifiedGrading, budget: &Budget) -> Result<(bool, Option<AnnihilatingPair>)> {
    grading.check_ring(ring)?;
    let hom = grading.nonzero_homogeneous_raw(ring.modulus(), budget.elements)?;
    let n = hom.len() as u128;
    budget::check("homogeneous pairs", n * n, budget.pairs)?;
    let w = first_annihilating(ring, &hom);
    Ok((w.is_none(), w))
}

/// Primeness over all pairs of nonzero elements.
pub fn is_prime(ring: &Ring, budget: &Budget) -> Result<(bool, Option<AnnihilatingPair>)> {
    let all: Vec<Vec<u32>> = ring
        .all_elements_raw(budget.elements)?
        .into_iter()
        .filter(|x| !crate::modular::is_zero(x))
        .collect();
    let n = all.len() as u128;
    budget::check("element pairs", n * n, budget.pairs)?;
    let w = first_annihilating(ring, &all);
    Ok((w.is_none(), w))
}

/// Both legs. The prime leg is skipped (reported as `None`) when it exceeds
/// the budget; the gr leg is not optional.
pub fn primeness_report(ring: &Ring, grading: &CertifiedGrading, budget: &Budget) -> Result<PrimenessReport> {
    let (gr_prime, gr_witness) = is_gr_prime(ring, grading, budget)?;
    let (prime, prime_witness) = match is_prime(ring, budget) {
        Ok((p, w)) => (Some(p), w),
        Err(Error::BudgetExceeded { .. }) => (None, None),
        Err(e) => return Err(e),
    };
    if prime == Some(true) && !gr_prime {
        return Err(Error::Internal("ring reported prime but not gr-prime".into()));
    }
    Ok(PrimenessReport {
        gr_prime,
        prime,
        gr_witness,
        prime_witness,
    })
}
