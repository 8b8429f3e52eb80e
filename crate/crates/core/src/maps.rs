//! Additive maps as coefficient matrices, and the four derivation classes.
//!
//! Every additive endomorphism of `Z_m^n` is `Z_m`-linear, so a map is stored
//! as the images of the basis vectors. The Leibniz defect
//! `D(xy) - D(x)y - xD(y)` and the generalized defect
//! `F(xy) - F(x)y - xd(y)` are biadditive, which is why checking them on basis
//! pairs decides them for all pairs.

use serde::{Deserialize, Serialize};

use crate::budget::{self, pow_count, Budget};
use crate::error::{Error, Result};
use crate::grading::{CertifiedGrading, Degree, Grading, ProductRing, Support};
use crate::linalg::{self, Affine};
use crate::modular::{self, axpy, Counter};
use crate::ring::{Element, Ring, RingId};
use crate::verdict::Verdict;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AdditiveMap {
    ring: RingId,
    dim: usize,
    modulus: u32,
    /// Column-major: entry `j * dim + k` is coordinate `k` of the image of `e_j`.
    cols: Vec<u32>,
}

impl std::fmt::Debug for AdditiveMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_list().entries((0..self.dim).map(|j| self.image(j))).finish()
    }
}

impl AdditiveMap {
    pub fn zero(ring: &Ring) -> Self {
        AdditiveMap {
            ring: ring.id(),
            dim: ring.dim(),
            modulus: ring.modulus(),
            cols: vec![0; ring.dim() * ring.dim()],
        }
    }

    pub fn identity(ring: &Ring) -> Self {
        let mut m = AdditiveMap::zero(ring);
        for j in 0..m.dim {
            m.cols[j * m.dim + j] = 1;
        }
        m
    }

    /// Map sending `e_j` to `images[j]`.
    pub fn from_images(ring: &Ring, images: &[Vec<u32>]) -> Result<Self> {
        let n = ring.dim();
        if images.len() != n {
            return Err(Error::malformed(
                "images",
                format!("expected {n} images, got {}", images.len()),
            ));
        }
        let mut cols = Vec::with_capacity(n * n);
        for (j, img) in images.iter().enumerate() {
            if img.len() != n {
                return Err(Error::malformed(
                    format!("images[{j}]"),
                    format!("expected {n} coordinates, got {}", img.len()),
                ));
            }
            if let Some(k) = img.iter().position(|&c| c >= ring.modulus()) {
                return Err(Error::malformed(
                    format!("images[{j}][{k}]"),
                    format!("coefficient {} is not below modulus {}", img[k], ring.modulus()),
                ));
            }
            cols.extend_from_slice(img);
        }
        Ok(AdditiveMap {
            ring: ring.id(),
            dim: n,
            modulus: ring.modulus(),
            cols,
        })
    }

    /// Map from integer images, reduced modulo `m`.
    pub fn from_int_images(ring: &Ring, images: &[Vec<i64>]) -> Result<Self> {
        let reduced: Vec<Vec<u32>> = images
            .iter()
            .map(|img| img.iter().map(|&c| modular::reduce(c, ring.modulus())).collect())
            .collect();
        AdditiveMap::from_images(ring, &reduced)
    }

    pub fn from_fn(ring: &Ring, mut f: impl FnMut(usize) -> Vec<u32>) -> Self {
        let n = ring.dim();
        let mut cols = Vec::with_capacity(n * n);
        for j in 0..n {
            let img = f(j);
            debug_assert_eq!(img.len(), n);
            cols.extend(img);
        }
        AdditiveMap {
            ring: ring.id(),
            dim: n,
            modulus: ring.modulus(),
            cols,
        }
    }

    pub(crate) fn from_flat(ring: &Ring, cols: Vec<u32>) -> Self {
        debug_assert_eq!(cols.len(), ring.dim() * ring.dim());
        AdditiveMap {
            ring: ring.id(),
            dim: ring.dim(),
            modulus: ring.modulus(),
            cols,
        }
    }

    pub fn ring_id(&self) -> RingId {
        self.ring
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn image(&self, j: usize) -> &[u32] {
        &self.cols[j * self.dim..(j + 1) * self.dim]
    }

    pub fn images(&self) -> Vec<Vec<u32>> {
        (0..self.dim).map(|j| self.image(j).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        modular::is_zero(&self.cols)
    }

    pub fn apply_raw(&self, x: &[u32]) -> Vec<u32> {
        let mut out = vec![0; self.dim];
        for (j, &xj) in x.iter().enumerate() {
            axpy(&mut out, xj, self.image(j), self.modulus);
        }
        out
    }

    pub fn apply(&self, ring: &Ring, x: &Element) -> Result<Element> {
        self.check(ring)?;
        ring.check(x)?;
        Ok(ring.wrap(self.apply_raw(x.coords())))
    }

    pub(crate) fn check(&self, ring: &Ring) -> Result<()> {
        if self.ring == ring.id() {
            Ok(())
        } else {
            Err(Error::MixedRings)
        }
    }

    fn same_ring(&self, other: &AdditiveMap) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::MixedRings)
        }
    }

    /// `self ∘ other`
    pub fn compose(&self, other: &AdditiveMap) -> Result<AdditiveMap> {
        self.same_ring(other)?;
        let mut cols = Vec::with_capacity(self.cols.len());
        for j in 0..self.dim {
            cols.extend(self.apply_raw(other.image(j)));
        }
        Ok(AdditiveMap { cols, ..self.clone() })
    }

    pub fn neg(&self) -> AdditiveMap {
        AdditiveMap {
            cols: modular::vneg(&self.cols, self.modulus),
            ..self.clone()
        }
    }

    /// Integer multiple `c D`.
    pub fn scale(&self, c: i64) -> AdditiveMap {
        let c = modular::reduce(c, self.modulus);
        AdditiveMap {
            cols: modular::vscale(c, &self.cols, self.modulus),
            ..self.clone()
        }
    }
}

/// Pointwise sum `D1 + D2`.
pub fn sum_map(d1: &AdditiveMap, d2: &AdditiveMap) -> Result<AdditiveMap> {
    d1.same_ring(d2)?;
    Ok(AdditiveMap {
        cols: modular::vadd(&d1.cols, &d2.cols, d1.modulus),
        ..d1.clone()
    })
}

/// `[D1, D2] = D1 ∘ D2 - D2 ∘ D1`
pub fn lie_bracket(d1: &AdditiveMap, d2: &AdditiveMap) -> Result<AdditiveMap> {
    let a = d1.compose(d2)?;
    let b = d2.compose(d1)?;
    Ok(AdditiveMap {
        cols: modular::vsub(&a.cols, &b.cols, d1.modulus),
        ..d1.clone()
    })
}

/// `d_r = [r, ·]`
pub fn inner_derivation(ring: &Ring, r: &Element) -> Result<AdditiveMap> {
    ring.check(r)?;
    Ok(inner_derivation_raw(ring, r.coords()))
}

pub(crate) fn inner_derivation_raw(ring: &Ring, r: &[u32]) -> AdditiveMap {
    AdditiveMap::from_fn(ring, |j| {
        let mut e = vec![0; ring.dim()];
        e[j] = 1;
        ring.commutator_raw(r, &e)
    })
}

/// Left multiplication `x ↦ r x`.
pub(crate) fn left_multiplication_raw(ring: &Ring, r: &[u32]) -> AdditiveMap {
    AdditiveMap::from_fn(ring, |j| ring.mul_basis_right(r, j))
}

/// Right multiplication `x ↦ x r`.
pub(crate) fn right_multiplication_raw(ring: &Ring, r: &[u32]) -> AdditiveMap {
    AdditiveMap::from_fn(ring, |j| ring.mul_basis_left(j, r))
}

/// `x ↦ r F(x)`
pub fn scalar_multiple(ring: &Ring, r: &Element, f: &AdditiveMap) -> Result<AdditiveMap> {
    ring.check(r)?;
    f.check(ring)?;
    Ok(AdditiveMap::from_fn(ring, |j| ring.mul_raw(r.coords(), f.image(j))))
}

/// Block-diagonal `(D1, D2)` on `R × S`.
pub fn pair_map(product: &ProductRing, d1: &AdditiveMap, d2: &AdditiveMap) -> Result<AdditiveMap> {
    if d1.ring != product.left || d2.ring != product.right {
        return Err(Error::MixedRings);
    }
    let a = product.left_dim;
    let n = product.ring.dim();
    Ok(AdditiveMap::from_fn(&product.ring, |j| {
        let mut img = vec![0; n];
        if j < a {
            img[..a].copy_from_slice(d1.image(j));
        } else {
            img[a..].copy_from_slice(d2.image(j - a));
        }
        img
    }))
}

/// Diagonal blocks of `D`, or `None` when `D` has a nonzero cross block.
/// The blocks come back as raw images over the factors' bases.
pub fn split_map(product: &ProductRing, d: &AdditiveMap) -> Result<Option<(Vec<Vec<u32>>, Vec<Vec<u32>>)>> {
    d.check(&product.ring)?;
    let a = product.left_dim;
    let n = product.ring.dim();
    let mut left = Vec::with_capacity(a);
    let mut right = Vec::with_capacity(n - a);
    for j in 0..n {
        let img = d.image(j);
        if j < a {
            if !modular::is_zero(&img[a..]) {
                return Ok(None);
            }
            left.push(img[..a].to_vec());
        } else {
            if !modular::is_zero(&img[..a]) {
                return Ok(None);
            }
            right.push(img[a..].to_vec());
        }
    }
    Ok(Some((left, right)))
}

/// Basis pair `(i, j)` at which an identity fails.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisPair {
    pub i: usize,
    pub j: usize,
}

fn leibniz_defect_raw(ring: &Ring, d: &AdditiveMap, i: usize, j: usize) -> bool {
    let m = ring.modulus();
    let lhs = d.apply_raw(&ring.basis_product(i, j));
    let a = ring.mul_basis_right(d.image(i), j);
    let b = ring.mul_basis_left(i, d.image(j));
    lhs != modular::vadd(&a, &b, m)
}

/// Leibniz rule on all basis pairs.
pub fn is_derivation(d: &AdditiveMap, ring: &Ring) -> Verdict<BasisPair> {
    if d.check(ring).is_err() {
        return Verdict::Fail(BasisPair { i: 0, j: 0 });
    }
    let n = ring.dim();
    for i in 0..n {
        for j in 0..n {
            if leibniz_defect_raw(ring, d, i, j) {
                return Verdict::Fail(BasisPair { i, j });
            }
        }
    }
    Verdict::Pass
}

/// `F(e_i e_j) = F(e_i) e_j + e_i d(e_j)` on all basis pairs.
pub fn satisfies_generalized_identity(f: &AdditiveMap, d: &AdditiveMap, ring: &Ring) -> Verdict<BasisPair> {
    if f.check(ring).is_err() || d.check(ring).is_err() {
        return Verdict::Fail(BasisPair { i: 0, j: 0 });
    }
    let n = ring.dim();
    let m = ring.modulus();
    for i in 0..n {
        for j in 0..n {
            let lhs = f.apply_raw(&ring.basis_product(i, j));
            let a = ring.mul_basis_right(f.image(i), j);
            let b = ring.mul_basis_left(i, d.image(j));
            if lhs != modular::vadd(&a, &b, m) {
                return Verdict::Fail(BasisPair { i, j });
            }
        }
    }
    Verdict::Pass
}

/// Why a map fails to send homogeneous elements to homogeneous elements.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum HomogeneityViolation {
    /// The image of one basis vector is already mixed.
    MixedImage { basis: usize },
    /// Two basis vectors of one component land in different components.
    SplitComponent {
        source: Degree,
        first: usize,
        second: usize,
    },
}

/// Per-component check: the nonzero images of the basis of each `R_g` are
/// homogeneous of one common degree. Components with all images zero are
/// homogeneous with an unconstrained shift.
pub fn is_homogeneous_map(d: &AdditiveMap, grading: &Grading) -> Verdict<HomogeneityViolation> {
    for (degree, members) in grading.components() {
        let mut target: Option<(usize, usize)> = None;
        for &j in members {
            match grading.support(d.image(j)) {
                Support::Zero => {}
                Support::Mixed => return Verdict::Fail(HomogeneityViolation::MixedImage { basis: j }),
                Support::Component(c) => match target {
                    None => target = Some((c, j)),
                    Some((t, first)) if t != c => {
                        return Verdict::Fail(HomogeneityViolation::SplitComponent {
                            source: degree.clone(),
                            first,
                            second: j,
                        })
                    }
                    _ => {}
                },
            }
        }
    }
    Verdict::Pass
}

/// Which half of the homogeneous-derivation definition failed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum HomogeneousDerivationFailure {
    Leibniz(BasisPair),
    Homogeneity(HomogeneityViolation),
}

pub fn is_homogeneous_derivation(
    d: &AdditiveMap,
    ring: &Ring,
    grading: &Grading,
) -> Verdict<HomogeneousDerivationFailure> {
    if let Verdict::Fail(w) = is_derivation(d, ring) {
        return Verdict::Fail(HomogeneousDerivationFailure::Leibniz(w));
    }
    is_homogeneous_map(d, grading).map_witness(HomogeneousDerivationFailure::Homogeneity)
}

/// Whether `(F, d)` is a generalized homogeneous pair: `d` a homogeneous
/// derivation, `F` homogeneous, and the generalized identity holds.
pub fn is_generalized_homogeneous_pair(f: &AdditiveMap, d: &AdditiveMap, ring: &Ring, grading: &Grading) -> bool {
    is_homogeneous_derivation(d, ring, grading).is_pass()
        && is_homogeneous_map(f, grading).is_pass()
        && satisfies_generalized_identity(f, d, ring).is_pass()
}

/// Solution set of the associated-derivation system for some `F`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssociatedDerivations {
    ring: RingId,
    dim: usize,
    modulus: u32,
    affine: Affine,
}

impl AssociatedDerivations {
    /// One solution.
    pub fn particular(&self, ring: &Ring) -> AdditiveMap {
        AdditiveMap::from_flat(ring, self.affine.particular.clone())
    }

    /// Dimension of the solution space over `F_p`.
    pub fn dimension(&self) -> usize {
        self.affine.kernel.len()
    }

    pub fn kernel(&self, ring: &Ring) -> Vec<AdditiveMap> {
        self.affine
            .kernel
            .iter()
            .map(|k| AdditiveMap::from_flat(ring, k.clone()))
            .collect()
    }

    pub fn contains(&self, d: &AdditiveMap) -> bool {
        if d.ring != self.ring {
            return false;
        }
        let diff = modular::vsub(&d.cols, &self.affine.particular, self.modulus);
        let span = linalg::Echelon::from_vectors(
            self.modulus,
            self.dim * self.dim,
            self.affine.kernel.iter().map(|k| k.as_slice()),
        );
        span.contains(&diff)
    }
}

/// All derivations `d` with `F(xy) = F(x)y + x d(y)`, or `None` when there is
/// none. Needs a prime modulus.
///
/// Unknown `j * n + l` is coordinate `l` of `d(e_j)`. Two families of linear
/// equations: the generalized identity on basis pairs, and the Leibniz rule
/// for `d` itself.
pub fn find_associated_derivation(f: &AdditiveMap, ring: &Ring) -> Result<Option<AssociatedDerivations>> {
    modular::require_prime(ring.modulus())?;
    f.check(ring)?;
    let n = ring.dim();
    let m = ring.modulus();
    let unknowns = n * n;
    let mut rows: Vec<Vec<u32>> = Vec::with_capacity(2 * n * n * n);
    let mut rhs: Vec<u32> = Vec::with_capacity(2 * n * n * n);
    for i in 0..n {
        for j in 0..n {
            // e_i d(e_j) = F(e_i e_j) - F(e_i) e_j
            let target = modular::vsub(
                &f.apply_raw(&ring.basis_product(i, j)),
                &ring.mul_basis_right(f.image(i), j),
                m,
            );
            for (k, &t) in target.iter().enumerate() {
                let mut row = vec![0u32; unknowns];
                for l in 0..n {
                    row[j * n + l] = ring.constant(i, l, k);
                }
                rows.push(row);
                rhs.push(t);
            }
            // d(e_i e_j) - d(e_i) e_j - e_i d(e_j) = 0
            for k in 0..n {
                let mut row = vec![0u32; unknowns];
                for &(l, c) in ring.product_terms(i, j) {
                    let at = l * n + k;
                    row[at] = modular::add(row[at], c, m);
                }
                for l in 0..n {
                    let at = i * n + l;
                    row[at] = modular::sub(row[at], ring.constant(l, j, k), m);
                    let at = j * n + l;
                    row[at] = modular::sub(row[at], ring.constant(i, l, k), m);
                }
                rows.push(row);
                rhs.push(0);
            }
        }
    }
    Ok(linalg::solve(m, unknowns, &rows, &rhs).map(|affine| AssociatedDerivations {
        ring: ring.id(),
        dim: n,
        modulus: m,
        affine,
    }))
}

/// Every homogeneous derivation associated with `F`, in enumeration order.
/// `Undecided` when the solution space has more points than the budget
/// allows; `No` when `F` is not a generalized derivation or not homogeneous.
pub fn homogeneous_associates(
    f: &AdditiveMap,
    ring: &Ring,
    grading: &Grading,
    budget: &Budget,
) -> Result<Decision<Vec<AdditiveMap>>> {
    if !is_homogeneous_map(f, grading).is_pass() {
        return Ok(Decision::No);
    }
    let Some(sols) = find_associated_derivation(f, ring)? else {
        return Ok(Decision::No);
    };
    let points = pow_count(ring.modulus(), sols.dimension());
    if budget::check("associated derivations", points, budget.solution_points).is_err() {
        return Ok(Decision::Undecided);
    }
    let mut out = Vec::new();
    for coeffs in Counter::new(sols.dimension(), ring.modulus()) {
        let mut v = sols.affine.particular.clone();
        for (c, k) in coeffs.iter().zip(&sols.affine.kernel) {
            axpy(&mut v, *c, k, ring.modulus());
        }
        let d = AdditiveMap::from_flat(ring, v);
        if is_homogeneous_map(&d, grading).is_pass() {
            out.push(d);
        }
    }
    Ok(if out.is_empty() { Decision::No } else { Decision::Yes(out) })
}

/// Three-valued answer for existence questions decided under a budget.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decision<W> {
    Yes(W),
    No,
    Undecided,
}

impl<W> Decision<W> {
    pub fn is_yes(&self) -> bool {
        matches!(self, Decision::Yes(_))
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            Decision::Yes(w) => Some(w),
            _ => None,
        }
    }
}

/// Where a map sits in the derivation lattice.
#[derive(Debug, Clone)]
pub struct Classification {
    pub derivation: Verdict<BasisPair>,
    pub homogeneous_map: Verdict<HomogeneityViolation>,
    pub homogeneous_derivation: bool,
    /// An associated derivation, when `F` is a generalized derivation.
    pub generalized_derivation: Option<AdditiveMap>,
    /// Dimension of the space of associated derivations (0 when unique).
    pub associated_dimension: Option<usize>,
    /// An associated homogeneous derivation, when one exists.
    pub generalized_homogeneous_derivation: Decision<AdditiveMap>,
}

impl Classification {
    pub fn is_derivation(&self) -> bool {
        self.derivation.is_pass()
    }

    pub fn is_homogeneous_map(&self) -> bool {
        self.homogeneous_map.is_pass()
    }

    pub fn is_generalized_derivation(&self) -> bool {
        self.generalized_derivation.is_some()
    }

    pub fn is_generalized_homogeneous(&self) -> bool {
        self.generalized_homogeneous_derivation.is_yes()
    }

    /// The four implications of the derivation lattice.
    pub fn respects_lattice(&self) -> bool {
        let hd = self.homogeneous_derivation;
        let implies = |a: bool, b: bool| !a || b;
        implies(hd, self.is_derivation() && self.is_homogeneous_map())
            && implies(self.is_derivation(), self.is_generalized_derivation())
            && implies(hd, self.is_generalized_homogeneous())
            && implies(self.is_generalized_homogeneous(), self.is_generalized_derivation())
    }
}

/// Fills every class flag for `F`. Needs a prime modulus.
///
/// The generalized-homogeneous flag asks for some associated derivation that
/// is homogeneous. Small solution spaces are scanned point by point; larger
/// ones are split by the target component of every source component, where
/// each case is a linear system.
pub fn classify_map(f: &AdditiveMap, ring: &Ring, grading: &CertifiedGrading, budget: &Budget) -> Result<Classification> {
    grading.check_ring(ring)?;
    let derivation = is_derivation(f, ring);
    let homogeneous_map = is_homogeneous_map(f, grading);
    let homogeneous_derivation = derivation.is_pass() && homogeneous_map.is_pass();
    let solutions = find_associated_derivation(f, ring)?;
    let generalized_derivation = solutions.as_ref().map(|s| {
        if derivation.is_pass() {
            f.clone()
        } else {
            s.particular(ring)
        }
    });
    let associated_dimension = solutions.as_ref().map(|s| s.dimension());
    let generalized_homogeneous_derivation = match &solutions {
        None => Decision::No,
        Some(_) if !homogeneous_map.is_pass() => Decision::No,
        Some(_) if homogeneous_derivation => Decision::Yes(f.clone()),
        Some(s) => find_homogeneous_solution(s, ring, grading, budget)?,
    };
    let c = Classification {
        derivation,
        homogeneous_map,
        homogeneous_derivation,
        generalized_derivation,
        associated_dimension,
        generalized_homogeneous_derivation,
    };
    if !c.respects_lattice() {
        return Err(Error::Internal("classification violates the derivation lattice".into()));
    }
    Ok(c)
}

fn find_homogeneous_solution(
    sols: &AssociatedDerivations,
    ring: &Ring,
    grading: &Grading,
    budget: &Budget,
) -> Result<Decision<AdditiveMap>> {
    let points = pow_count(ring.modulus(), sols.dimension());
    if budget::check("associated derivations", points, budget.solution_points).is_ok() {
        for coeffs in Counter::new(sols.dimension(), ring.modulus()) {
            let mut v = sols.affine.particular.clone();
            for (c, k) in coeffs.iter().zip(&sols.affine.kernel) {
                axpy(&mut v, *c, k, ring.modulus());
            }
            let d = AdditiveMap::from_flat(ring, v);
            if is_homogeneous_map(&d, grading).is_pass() {
                return Ok(Decision::Yes(d));
            }
        }
        return Ok(Decision::No);
    }
    search_by_shift(sols, ring, grading, budget.shift_cases)
}

/// Depth-first search over target components, one source component at a
/// time. Within a case every point is homogeneous, so feasibility decides it.
fn search_by_shift(
    sols: &AssociatedDerivations,
    ring: &Ring,
    grading: &Grading,
    case_budget: u64,
) -> Result<Decision<AdditiveMap>> {
    let mut search = ShiftSearch {
        sols,
        grading,
        n: ring.dim(),
        p: ring.modulus(),
        cases: 0,
        case_budget,
        chosen: Vec::new(),
    };
    match search.descend() {
        None => Ok(Decision::Undecided),
        Some(None) => Ok(Decision::No),
        Some(Some(coeffs)) => {
            let mut v = sols.affine.particular.clone();
            for (c, kv) in coeffs.iter().zip(&sols.affine.kernel) {
                axpy(&mut v, *c, kv, ring.modulus());
            }
            Ok(Decision::Yes(AdditiveMap::from_flat(ring, v)))
        }
    }
}

struct ShiftSearch<'a> {
    sols: &'a AssociatedDerivations,
    grading: &'a Grading,
    n: usize,
    p: u32,
    cases: u64,
    case_budget: u64,
    /// Target component for each of the first `chosen.len()` source components.
    chosen: Vec<usize>,
}

impl ShiftSearch<'_> {
    /// Kernel coefficients of a point meeting the current constraints, if any.
    /// Coordinate `at` of a point is `particular[at] + Σ c_i kernel_i[at]`.
    fn feasible(&self) -> Option<Vec<u32>> {
        let comps = self.grading.components();
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        for (src, &tgt) in self.chosen.iter().enumerate() {
            for &j in &comps[src].1 {
                for l in 0..self.n {
                    if self.grading.component_of(l) != tgt {
                        let at = j * self.n + l;
                        rows.push(self.sols.affine.kernel.iter().map(|kv| kv[at]).collect());
                        rhs.push(modular::neg(self.sols.affine.particular[at], self.p));
                    }
                }
            }
        }
        linalg::solve(self.p, self.sols.dimension(), &rows, &rhs).map(|a| a.particular)
    }

    /// `None` when the case budget runs out, `Some(None)` when no point exists.
    fn descend(&mut self) -> Option<Option<Vec<u32>>> {
        self.cases += 1;
        if self.cases > self.case_budget {
            return None;
        }
        let Some(point) = self.feasible() else {
            return Some(None);
        };
        let ncomp = self.grading.components().len();
        if self.chosen.len() == ncomp {
            return Some(Some(point));
        }
        for tgt in 0..ncomp {
            self.chosen.push(tgt);
            let found = self.descend()?;
            self.chosen.pop();
            if found.is_some() {
                return Some(found);
            }
        }
        Some(None)
    }
}
