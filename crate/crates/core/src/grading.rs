//! Degree groups, basis-aligned gradings, homogeneous decomposition, and the
//! product grading.
//!
//! Every basis vector is homogeneous, so the component `R_g` is the span of the
//! basis vectors of degree `g` and the direct-sum property holds by
//! construction. Multiplicativity `R_g R_h ⊆ R_{g+h}` does not, and a grading
//! must pass [`validate_grading`] (see [`Grading::certify`]) before the checks
//! that quantify over homogeneous elements will accept it.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Deref;

use serde::{Deserialize, Serialize};

use crate::budget::{self, pow_count};
use crate::error::{Error, Result};
use crate::modular::Counter;
use crate::ring::{direct_product, Element, Ring, RingId};
use crate::verdict::Verdict;

/// `Z^free_rank ⊕ Z_{t_1} ⊕ ... ⊕ Z_{t_s}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DegreeGroup {
    pub free_rank: usize,
    pub torsion: Vec<u32>,
}

/// Group element; free coordinates first, then torsion coordinates in `[0, t_i)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Degree(pub Vec<i64>);

impl fmt::Debug for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (idx, c) in self.0.iter().enumerate() {
            if idx > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl DegreeGroup {
    pub fn trivial() -> Self {
        DegreeGroup {
            free_rank: 0,
            torsion: Vec::new(),
        }
    }

    pub fn free(rank: usize) -> Self {
        DegreeGroup {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    pub fn cyclic(order: u32) -> Self {
        DegreeGroup {
            free_rank: 0,
            torsion: vec![order],
        }
    }

    pub fn rank(&self) -> usize {
        self.free_rank + self.torsion.len()
    }

    pub fn validate(&self) -> Result<()> {
        if let Some(pos) = self.torsion.iter().position(|&t| t < 2) {
            return Err(Error::malformed(
                format!("grading.torsion[{pos}]"),
                "torsion orders must be at least 2",
            ));
        }
        Ok(())
    }

    pub fn identity(&self) -> Degree {
        Degree(vec![0; self.rank()])
    }

    /// Reduces torsion coordinates; rejects vectors of the wrong length.
    pub fn degree(&self, coords: &[i64]) -> Result<Degree> {
        if coords.len() != self.rank() {
            return Err(Error::malformed(
                "degree",
                format!("expected {} coordinates, got {}", self.rank(), coords.len()),
            ));
        }
        Ok(self.normalize(coords.to_vec()))
    }

    fn normalize(&self, mut coords: Vec<i64>) -> Degree {
        for (c, &t) in coords[self.free_rank..].iter_mut().zip(&self.torsion) {
            *c = c.rem_euclid(t as i64);
        }
        Degree(coords)
    }

    pub fn add(&self, a: &Degree, b: &Degree) -> Degree {
        self.normalize(a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect())
    }

    /// `self ⊕ other`, laid out as (free, free', torsion, torsion').
    pub fn direct_sum(&self, other: &DegreeGroup) -> DegreeGroup {
        let mut torsion = self.torsion.clone();
        torsion.extend_from_slice(&other.torsion);
        DegreeGroup {
            free_rank: self.free_rank + other.free_rank,
            torsion,
        }
    }

    /// Image of `d ∈ self` under the left embedding into `self ⊕ other`.
    pub fn embed_left(&self, other: &DegreeGroup, d: &Degree) -> Degree {
        let mut v = d.0[..self.free_rank].to_vec();
        v.extend(std::iter::repeat(0).take(other.free_rank));
        v.extend_from_slice(&d.0[self.free_rank..]);
        v.extend(std::iter::repeat(0).take(other.torsion.len()));
        Degree(v)
    }

    /// Image of `d ∈ other` under the right embedding into `self ⊕ other`.
    pub fn embed_right(&self, other: &DegreeGroup, d: &Degree) -> Degree {
        let mut v = vec![0; self.free_rank];
        v.extend_from_slice(&d.0[..other.free_rank]);
        v.extend(std::iter::repeat(0).take(self.torsion.len()));
        v.extend_from_slice(&d.0[other.free_rank..]);
        Degree(v)
    }
}

/// Degree assignment for every basis vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grading {
    group: DegreeGroup,
    degrees: Vec<Degree>,
    components: Vec<(Degree, Vec<usize>)>,
    component_of: Vec<usize>,
}

/// A nonzero `e_i e_j` has a term outside `R_{deg i + deg j}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradingViolation {
    pub left: usize,
    pub right: usize,
    /// Basis index of the offending term of `e_left e_right`.
    pub term: usize,
    pub expected: Degree,
    pub found: Degree,
}

/// Answer of [`Grading::is_homogeneous`] for elements that are homogeneous.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Homogeneous {
    /// The zero element, which lies in every component.
    Zero,
    Of(Degree),
}

/// Raw-coordinate variant of [`Homogeneous`], using component indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Support {
    Zero,
    Component(usize),
    Mixed,
}

impl Grading {
    pub fn new(group: DegreeGroup, degrees: Vec<Vec<i64>>) -> Result<Grading> {
        group.validate()?;
        let degrees = degrees
            .iter()
            .enumerate()
            .map(|(idx, d)| {
                group.degree(d).map_err(|_| {
                    Error::malformed(
                        format!("grading.degrees[{idx}]"),
                        format!("expected {} coordinates, got {}", group.rank(), d.len()),
                    )
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Grading::from_degrees(group, degrees))
    }

    pub(crate) fn from_degrees(group: DegreeGroup, degrees: Vec<Degree>) -> Grading {
        let mut by_degree: BTreeMap<Degree, Vec<usize>> = BTreeMap::new();
        for (i, d) in degrees.iter().enumerate() {
            by_degree.entry(d.clone()).or_default().push(i);
        }
        let components: Vec<(Degree, Vec<usize>)> = by_degree.into_iter().collect();
        let mut component_of = vec![0; degrees.len()];
        for (c, (_, members)) in components.iter().enumerate() {
            for &i in members {
                component_of[i] = c;
            }
        }
        Grading {
            group,
            degrees,
            components,
            component_of,
        }
    }

    /// `R_e = R`, graded by the trivial group.
    pub fn trivial(dim: usize) -> Grading {
        Grading::from_degrees(DegreeGroup::trivial(), vec![Degree(Vec::new()); dim])
    }

    pub fn group(&self) -> &DegreeGroup {
        &self.group
    }

    pub fn dim(&self) -> usize {
        self.degrees.len()
    }

    pub fn degree_of_basis(&self, i: usize) -> &Degree {
        &self.degrees[i]
    }

    pub fn degrees(&self) -> &[Degree] {
        &self.degrees
    }

    /// Components in ascending degree order, each with its basis indices.
    pub fn components(&self) -> &[(Degree, Vec<usize>)] {
        &self.components
    }

    pub(crate) fn component_of(&self, i: usize) -> usize {
        self.component_of[i]
    }

    pub(crate) fn support(&self, x: &[u32]) -> Support {
        let mut found = None;
        for (i, &c) in x.iter().enumerate() {
            if c != 0 {
                let comp = self.component_of[i];
                match found {
                    None => found = Some(comp),
                    Some(prev) if prev != comp => return Support::Mixed,
                    _ => {}
                }
            }
        }
        match found {
            None => Support::Zero,
            Some(c) => Support::Component(c),
        }
    }

    pub(crate) fn is_homogeneous_raw(&self, x: &[u32]) -> bool {
        self.support(x) != Support::Mixed
    }

    /// The degree of `x` if it is homogeneous, [`Homogeneous::Zero`] for 0, and
    /// `None` when its support spans two or more degrees.
    pub fn is_homogeneous(&self, x: &Element) -> Option<Homogeneous> {
        match self.support(x.coords()) {
            Support::Zero => Some(Homogeneous::Zero),
            Support::Component(c) => Some(Homogeneous::Of(self.components[c].0.clone())),
            Support::Mixed => None,
        }
    }

    pub(crate) fn decompose_raw(&self, x: &[u32]) -> Vec<(usize, Vec<u32>)> {
        let mut parts: Vec<(usize, Vec<u32>)> = Vec::new();
        for (c, (_, members)) in self.components.iter().enumerate() {
            if members.iter().any(|&i| x[i] != 0) {
                let mut part = vec![0; x.len()];
                for &i in members {
                    part[i] = x[i];
                }
                parts.push((c, part));
            }
        }
        parts
    }

    /// Homogeneous components `g ↦ x_g`; only nonzero parts appear.
    pub fn decompose(&self, ring: &Ring, x: &Element) -> Result<BTreeMap<Degree, Element>> {
        if x.coords().len() != self.dim() {
            return Err(Error::MixedRings);
        }
        ring.element(x.coords().to_vec())?;
        Ok(self
            .decompose_raw(x.coords())
            .into_iter()
            .map(|(c, part)| (self.components[c].0.clone(), ring.wrap(part)))
            .collect())
    }

    /// Number of homogeneous elements, counting 0 once.
    pub fn homogeneous_count(&self, modulus: u32) -> u128 {
        let total: u128 = self
            .components
            .iter()
            .map(|(_, members)| pow_count(modulus, members.len()))
            .fold(0u128, |a, b| a.saturating_add(b));
        total - (self.components.len() as u128 - 1)
    }

    /// Nonzero homogeneous elements, component by component in degree order.
    pub(crate) fn nonzero_homogeneous_raw(&self, modulus: u32, budget: u64) -> Result<Vec<Vec<u32>>> {
        budget::check("homogeneous elements", self.homogeneous_count(modulus), budget)?;
        let mut out = Vec::new();
        for (_, members) in &self.components {
            for coeffs in Counter::new(members.len(), modulus).skip(1) {
                let mut v = vec![0; self.dim()];
                for (&i, &c) in members.iter().zip(&coeffs) {
                    v[i] = c;
                }
                out.push(v);
            }
        }
        Ok(out)
    }

    pub fn certify(self, ring: &Ring) -> Result<CertifiedGrading> {
        match validate_grading(ring, &self) {
            Verdict::Pass => Ok(CertifiedGrading {
                grading: self,
                ring: ring.id(),
            }),
            Verdict::Fail(v) => Err(Error::InvalidGrading(format!(
                "e{} e{} has a term in e{} of degree {} instead of {}",
                v.left, v.right, v.term, v.found, v.expected
            ))),
        }
    }
}

/// A grading that passed [`validate_grading`] for a particular ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertifiedGrading {
    grading: Grading,
    ring: RingId,
}

impl CertifiedGrading {
    pub fn ring_id(&self) -> RingId {
        self.ring
    }

    pub fn grading(&self) -> &Grading {
        &self.grading
    }

    pub fn into_grading(self) -> Grading {
        self.grading
    }

    pub(crate) fn check_ring(&self, ring: &Ring) -> Result<()> {
        if ring.id() == self.ring {
            Ok(())
        } else {
            Err(Error::MixedRings)
        }
    }
}

impl Deref for CertifiedGrading {
    type Target = Grading;
    fn deref(&self) -> &Grading {
        &self.grading
    }
}

pub fn validate_grading(ring: &Ring, grading: &Grading) -> Verdict<GradingViolation> {
    if grading.dim() != ring.dim() {
        // A grading for a different basis cannot be multiplicative here; report
        // the first basis vector it fails to describe.
        let term = grading.dim().min(ring.dim());
        return Verdict::Fail(GradingViolation {
            left: term,
            right: term,
            term,
            expected: grading.group.identity(),
            found: grading.group.identity(),
        });
    }
    let n = ring.dim();
    for i in 0..n {
        for j in 0..n {
            let expected = grading.group.add(&grading.degrees[i], &grading.degrees[j]);
            for &(k, _) in ring.product_terms(i, j) {
                if grading.degrees[k] != expected {
                    return Verdict::Fail(GradingViolation {
                        left: i,
                        right: j,
                        term: k,
                        expected,
                        found: grading.degrees[k].clone(),
                    });
                }
            }
        }
    }
    Verdict::Pass
}

/// Every element of every component, 0 exactly once, refusing when the count
/// exceeds `budget`.
pub fn enumerate_homogeneous<'r>(ring: &'r Ring, grading: &Grading, budget: u64) -> Result<impl Iterator<Item = Element> + 'r> {
    if grading.dim() != ring.dim() {
        return Err(Error::MixedRings);
    }
    let nonzero = grading.nonzero_homogeneous_raw(ring.modulus(), budget)?;
    Ok(std::iter::once(ring.zero()).chain(nonzero.into_iter().map(move |v| ring.wrap(v))))
}

/// Direct product of two graded rings with its product grading.
#[derive(Debug, Clone)]
pub struct ProductRing {
    pub ring: Ring,
    pub grading: CertifiedGrading,
    pub left_dim: usize,
    pub left: RingId,
    pub right: RingId,
}

/// `R × S` graded by `G_1 ⊕ G_2`: an `R`-basis vector of degree `g` gets
/// `(g, 0)`, an `S`-basis vector of degree `h` gets `(0, h)`, so `(a_g, b_h)`
/// splits into its `(g, 0)` and `(0, h)` parts.
pub fn product_ring(r: &Ring, gr: &Grading, s: &Ring, gs: &Grading) -> Result<ProductRing> {
    let gr = gr.clone().certify(r)?;
    let gs = gs.clone().certify(s)?;
    let ring = direct_product(r, s)?;
    let a = r.dim();
    let (g1, g2) = (gr.group(), gs.group());
    let group = g1.direct_sum(g2);
    let mut degrees: Vec<Degree> = gr.degrees().iter().map(|d| g1.embed_left(g2, d)).collect();
    degrees.extend(gs.degrees().iter().map(|d| g1.embed_right(g2, d)));
    let grading = Grading::from_degrees(group, degrees).certify(&ring).map_err(|e| {
        Error::Internal(format!("product of valid gradings failed validation: {e}"))
    })?;
    Ok(ProductRing {
        ring,
        grading,
        left_dim: a,
        left: r.id(),
        right: s.id(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{make_ring, RingSpec};

    fn upper_triangular(m: u32) -> Ring {
        make_ring(&RingSpec {
            modulus: m,
            basis_names: vec!["E11".into(), "E12".into(), "E22".into()],
            structure_constants: vec![(0, 0, 0, 1), (0, 1, 1, 1), (1, 2, 1, 1), (2, 2, 2, 1)],
        })
        .unwrap()
    }

    fn z4_grading() -> Grading {
        Grading::new(DegreeGroup::cyclic(4), vec![vec![0], vec![2], vec![0]]).unwrap()
    }

    #[test]
    fn torsion_reduces() {
        let g = DegreeGroup::cyclic(4);
        assert_eq!(g.add(&Degree(vec![3]), &Degree(vec![3])), Degree(vec![2]));
        assert_eq!(g.degree(&[-1]).unwrap(), Degree(vec![3]));
    }

    #[test]
    fn upper_triangular_z4_grading_is_valid() {
        let r = upper_triangular(5);
        assert!(validate_grading(&r, &z4_grading()).is_pass());
        assert!(validate_grading(&r, &Grading::trivial(3)).is_pass());
    }

    #[test]
    fn decomposition_splits_along_the_basis() {
        let r = upper_triangular(5);
        let g = z4_grading();
        // [[1,2],[0,3]]
        let x = r.element(vec![1, 2, 3]).unwrap();
        let parts = g.decompose(&r, &x).unwrap();
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[&Degree(vec![0])].coords(), &[1, 0, 3]);
        assert_eq!(parts[&Degree(vec![2])].coords(), &[0, 2, 0]);
        assert!(g.decompose(&r, &r.zero()).unwrap().is_empty());
    }

    #[test]
    fn homogeneity_answers() {
        let r = upper_triangular(5);
        let g = z4_grading();
        assert_eq!(g.is_homogeneous(&r.basis(1)), Some(Homogeneous::Of(Degree(vec![2]))));
        let mixed = r.add(&r.basis(0), &r.basis(1)).unwrap();
        assert_eq!(g.is_homogeneous(&mixed), None);
        assert_eq!(g.is_homogeneous(&r.zero()), Some(Homogeneous::Zero));
    }

    #[test]
    fn enumeration_counts() {
        // two 1-dimensional components over Z_2: {0, e0, e1}
        let null2 = make_ring(&RingSpec {
            modulus: 2,
            basis_names: vec!["e0".into(), "e1".into()],
            structure_constants: vec![],
        })
        .unwrap();
        let g = Grading::new(DegreeGroup::cyclic(2), vec![vec![0], vec![1]]).unwrap();
        let all: Vec<_> = enumerate_homogeneous(&null2, &g, 100).unwrap().collect();
        assert_eq!(all.len(), 3);

        let r = upper_triangular(3);
        let all: Vec<_> = enumerate_homogeneous(&r, &z4_grading(), 100).unwrap().collect();
        assert_eq!(all.len(), 11);
        let mut dedup = all.clone();
        dedup.sort();
        dedup.dedup();
        assert_eq!(dedup.len(), 11);
    }

    #[test]
    fn enumeration_refuses_over_budget() {
        let big = make_ring(&RingSpec {
            modulus: 5,
            basis_names: (0..12).map(|i| format!("e{i}")).collect(),
            structure_constants: vec![],
        })
        .unwrap();
        let g = Grading::trivial(12);
        assert!(matches!(
            enumerate_homogeneous(&big, &g, 10),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn antidiagonal_degree_three_is_not_multiplicative() {
        // M2 with diag in degree 0 and antidiag in degree 3 over Z.
        let idx = |a: usize, b: usize| a * 2 + b;
        let mut triples = Vec::new();
        for a in 0..2 {
            for b in 0..2 {
                for d in 0..2 {
                    triples.push((idx(a, b), idx(b, d), idx(a, d), 1));
                }
            }
        }
        let m2 = make_ring(&RingSpec {
            modulus: 5,
            basis_names: vec!["E11".into(), "E12".into(), "E21".into(), "E22".into()],
            structure_constants: triples,
        })
        .unwrap();
        let g = Grading::new(DegreeGroup::free(1), vec![vec![0], vec![3], vec![3], vec![0]]).unwrap();
        let v = validate_grading(&m2, &g);
        let w = v.witness().unwrap();
        assert_eq!((w.left, w.right, w.term), (1, 2, 0));
        assert_eq!(w.expected, Degree(vec![6]));
        assert_eq!(w.found, Degree(vec![0]));
        assert!(g.certify(&m2).is_err());
    }

    #[test]
    fn product_of_trivial_gradings() {
        let r = upper_triangular(5);
        let p = product_ring(&r, &Grading::trivial(3), &r, &Grading::trivial(3)).unwrap();
        assert_eq!(p.ring.dim(), 6);
        assert!(p.grading.components().len() == 1);
        assert!(crate::ring::validate_ring(&p.ring).is_pass());
    }

    #[test]
    fn product_of_z4_graded_factors() {
        let r = upper_triangular(5);
        let p = product_ring(&r, &z4_grading(), &r, &z4_grading()).unwrap();
        assert_eq!(p.grading.group(), &DegreeGroup { free_rank: 0, torsion: vec![4, 4] });
        assert_eq!(p.grading.degree_of_basis(1), &Degree(vec![2, 0]));
        assert_eq!(p.grading.degree_of_basis(4), &Degree(vec![0, 2]));
        assert_eq!(p.ring.basis_names()[0], "L.E11");
    }
}
