//! One- and two-sided ideals as reduced spanning sets.

use serde::{Deserialize, Serialize};

use crate::budget;
use crate::error::{Error, Result};
use crate::grading::{CertifiedGrading, Degree};
use crate::linalg::Echelon;
use crate::modular::{self, span_elements};
use crate::ring::{Element, Ring, RingId};
use crate::verdict::Verdict;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Side {
    Left,
    Right,
    TwoSided,
}

impl Side {
    fn absorbs_left(self) -> bool {
        matches!(self, Side::Left | Side::TwoSided)
    }

    fn absorbs_right(self) -> bool {
        matches!(self, Side::Right | Side::TwoSided)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealHandle {
    ring: RingId,
    side: Side,
    span: Echelon,
    graded: Option<bool>,
}

/// A spanning element of an ideal whose homogeneous part falls outside it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedIdealViolation {
    pub element: Vec<u32>,
    pub degree: Degree,
    pub component: Vec<u32>,
}

/// The least ideal of the given side containing `gens`. Needs a prime modulus.
pub fn ideal_generate(ring: &Ring, gens: &[Element], side: Side) -> Result<IdealHandle> {
    modular::require_prime(ring.modulus())?;
    for g in gens {
        ring.check(g)?;
    }
    let n = ring.dim();
    let mut span = Echelon::from_vectors(ring.modulus(), n, gens.iter().map(|g| g.coords()));
    // Each productive round raises the rank, so n + 1 rounds always reach the fixpoint.
    for _round in 0..=n {
        let mut grown = false;
        let current: Vec<Vec<u32>> = span.rows().to_vec();
        for v in &current {
            for i in 0..n {
                if side.absorbs_left() {
                    grown |= span.insert(&ring.mul_basis_left(i, v));
                }
                if side.absorbs_right() {
                    grown |= span.insert(&ring.mul_basis_right(v, i));
                }
            }
        }
        if !grown {
            return Ok(IdealHandle {
                ring: ring.id(),
                side,
                span,
                graded: None,
            });
        }
    }
    Err(Error::Internal("ideal closure did not reach a fixpoint within dim rounds".into()))
}

/// The whole ring as a two-sided ideal.
pub fn whole_ring(ring: &Ring) -> Result<IdealHandle> {
    let gens: Vec<Element> = (0..ring.dim()).map(|i| ring.basis(i)).collect();
    ideal_generate(ring, &gens, Side::TwoSided)
}

impl IdealHandle {
    pub fn side(&self) -> Side {
        self.side
    }

    pub fn ring_id(&self) -> RingId {
        self.ring
    }

    pub fn rank(&self) -> usize {
        self.span.rank()
    }

    pub fn is_zero(&self) -> bool {
        self.span.rank() == 0
    }

    /// Reduced row-echelon basis of the ideal.
    pub fn basis_raw(&self) -> &[Vec<u32>] {
        self.span.rows()
    }

    pub fn basis(&self, ring: &Ring) -> Result<Vec<Element>> {
        self.check_ring(ring)?;
        Ok(self.span.rows().iter().map(|r| ring.wrap(r.clone())).collect())
    }

    pub(crate) fn contains_raw(&self, v: &[u32]) -> bool {
        self.span.contains(v)
    }

    /// Every element of the ideal, refusing when `m^rank` exceeds `budget`.
    pub fn elements_raw(&self, modulus: u32, budget: u64) -> Result<Vec<Vec<u32>>> {
        budget::check("ideal elements", budget::pow_count(modulus, self.rank()), budget)?;
        Ok(span_elements(self.span.rows(), self.span.width(), modulus))
    }

    /// Result of the last [`IdealHandle::certify_graded`] call, if any.
    pub fn graded_certificate(&self) -> Option<bool> {
        self.graded
    }

    pub fn certify_graded(mut self, grading: &CertifiedGrading) -> Self {
        self.graded = Some(is_graded_ideal(&self, grading).is_pass());
        self
    }

    /// Whether one more closure round adds nothing.
    pub fn is_closed(&self, ring: &Ring) -> bool {
        self.span.rows().iter().all(|v| {
            (0..ring.dim()).all(|i| {
                (!self.side.absorbs_left() || self.span.contains(&ring.mul_basis_left(i, v)))
                    && (!self.side.absorbs_right() || self.span.contains(&ring.mul_basis_right(v, i)))
            })
        })
    }

    fn check_ring(&self, ring: &Ring) -> Result<()> {
        if ring.id() == self.ring {
            Ok(())
        } else {
            Err(Error::MixedRings)
        }
    }
}

/// Whether every homogeneous component of every spanning element lies in `I`.
pub fn is_graded_ideal(ideal: &IdealHandle, grading: &CertifiedGrading) -> Verdict<GradedIdealViolation> {
    for v in ideal.basis_raw() {
        for (c, part) in grading.decompose_raw(v) {
            if !ideal.contains_raw(&part) {
                return Verdict::Fail(GradedIdealViolation {
                    element: v.clone(),
                    degree: grading.components()[c].0.clone(),
                    component: part,
                });
            }
        }
    }
    Verdict::Pass
}

pub fn membership(x: &Element, ideal: &IdealHandle) -> Result<bool> {
    if x.ring_id() != ideal.ring {
        return Err(Error::MixedRings);
    }
    Ok(ideal.contains_raw(x.coords()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grading::{DegreeGroup, Grading};
    use crate::ring::{make_ring, RingSpec};

    fn upper_triangular(m: u32) -> Ring {
        make_ring(&RingSpec {
            modulus: m,
            basis_names: vec!["E11".into(), "E12".into(), "E22".into()],
            structure_constants: vec![(0, 0, 0, 1), (0, 1, 1, 1), (1, 2, 1, 1), (2, 2, 2, 1)],
        })
        .unwrap()
    }

    #[test]
    fn zero_generators() {
        let r = upper_triangular(5);
        let i = ideal_generate(&r, &[r.zero()], Side::TwoSided).unwrap();
        assert!(i.is_zero());
        assert!(membership(&r.zero(), &i).unwrap());
    }

    #[test]
    fn strictly_upper_generates_itself() {
        let r = upper_triangular(5);
        let i = ideal_generate(&r, &[r.basis(1)], Side::TwoSided).unwrap();
        assert_eq!(i.basis_raw(), &[vec![0, 1, 0]]);
        assert!(membership(&r.basis(1), &i).unwrap());
        assert!(!membership(&r.basis(0), &i).unwrap());
        assert!(i.is_closed(&r));
    }

    #[test]
    fn one_sided_closure() {
        let r = upper_triangular(5);
        // R E11 = span{E11}, E11 R = span{E11, E12}
        let left = ideal_generate(&r, &[r.basis(0)], Side::Left).unwrap();
        assert_eq!(left.rank(), 1);
        let right = ideal_generate(&r, &[r.basis(0)], Side::Right).unwrap();
        assert_eq!(right.rank(), 2);
        assert!(right.is_closed(&r));
    }

    #[test]
    fn graded_and_non_graded_spans() {
        let r = upper_triangular(5);
        let g = Grading::new(DegreeGroup::cyclic(4), vec![vec![0], vec![2], vec![0]])
            .unwrap()
            .certify(&r)
            .unwrap();
        let zero = ideal_generate(&r, &[], Side::TwoSided).unwrap();
        assert!(is_graded_ideal(&zero, &g).is_pass());
        let strict = ideal_generate(&r, &[r.basis(1)], Side::TwoSided).unwrap();
        assert!(is_graded_ideal(&strict, &g).is_pass());
        // span{E11 + E12} is a left ideal line: E11 (E11+E12) = E11+E12, E22 (E11+E12) = 0.
        let line = ideal_generate(&r, &[r.element(vec![1, 1, 0]).unwrap()], Side::Left).unwrap();
        assert_eq!(line.rank(), 1);
        let v = is_graded_ideal(&line, &g);
        assert_eq!(v.witness().unwrap().component, vec![1, 0, 0]);
    }

    #[test]
    fn composite_modulus_is_refused() {
        let r = upper_triangular(4);
        assert_eq!(
            ideal_generate(&r, &[r.basis(1)], Side::TwoSided),
            Err(Error::UnsupportedModulus(4))
        );
    }
}
