//! Finite-rank rings over `Z_m` presented by structure constants.
//!
//! A ring of dimension `n` has basis `e_0, .., e_{n-1}` and products
//! `e_i e_j = sum_k c[i][j][k] e_k`. Multiplication is bilinear by
//! construction; associativity is the only axiom left to check, and it is
//! checked explicitly by [`validate_ring`], never at construction time.

use std::collections::hash_map::DefaultHasher;
use std::collections::HashSet;
use std::fmt;
use std::hash::{Hash, Hasher};

use serde::{Deserialize, Serialize};

use crate::budget::{self, pow_count};
use crate::error::{Error, Result};
use crate::linalg::{self, Echelon};
use crate::modular::{self, Counter, MAX_MODULUS};
use crate::verdict::Verdict;

/// Fingerprint of a ring's presentation, carried by elements and maps so that
/// operands from different rings are rejected.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RingId(u64);

/// Unvalidated description of a ring, as read from a document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingSpec {
    pub modulus: u32,
    pub basis_names: Vec<String>,
    /// Sparse `(i, j, k, c)` entries: `c` is the coefficient of `e_k` in `e_i e_j`.
    pub structure_constants: Vec<(usize, usize, usize, u32)>,
}

#[derive(Debug, Clone)]
pub struct Ring {
    id: RingId,
    modulus: u32,
    names: Vec<String>,
    dense: Vec<u32>,
    sparse: Vec<Vec<(usize, u32)>>,
}

/// A ring element in coordinates.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element {
    ring: RingId,
    coords: Vec<u32>,
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Element{:?}", self.coords)
    }
}

impl Element {
    pub fn coords(&self) -> &[u32] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<u32> {
        self.coords
    }

    pub fn ring_id(&self) -> RingId {
        self.ring
    }

    pub fn is_zero(&self) -> bool {
        modular::is_zero(&self.coords)
    }
}

/// `(e_i e_j) e_k != e_i (e_j e_k)`
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AssociativityViolation {
    pub i: usize,
    pub j: usize,
    pub k: usize,
}

/// `e_i e_j != e_j e_i`
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CommutativityViolation {
    pub i: usize,
    pub j: usize,
}

pub fn make_ring(spec: &RingSpec) -> Result<Ring> {
    let m = spec.modulus;
    if m < 2 {
        return Err(Error::malformed("modulus", "modulus must be at least 2"));
    }
    if m > MAX_MODULUS {
        return Err(Error::malformed("modulus", format!("modulus must not exceed {MAX_MODULUS}")));
    }
    let n = spec.basis_names.len();
    if n == 0 {
        return Err(Error::malformed("basis_names", "a ring needs at least one basis element"));
    }
    let mut seen = HashSet::new();
    for (idx, name) in spec.basis_names.iter().enumerate() {
        if name.is_empty() {
            return Err(Error::malformed(format!("basis_names[{idx}]"), "empty name"));
        }
        if !seen.insert(name.as_str()) {
            return Err(Error::malformed(format!("basis_names[{idx}]"), format!("duplicate name `{name}`")));
        }
    }
    let mut dense = vec![0u32; n * n * n];
    let mut filled = vec![false; n * n * n];
    for (idx, &(i, j, k, c)) in spec.structure_constants.iter().enumerate() {
        let path = format!("structure_constants[{idx}]");
        if i >= n || j >= n || k >= n {
            return Err(Error::malformed(path, format!("index out of range for dimension {n}")));
        }
        if c >= m {
            return Err(Error::malformed(path, format!("coefficient {c} is not below modulus {m}")));
        }
        let at = (i * n + j) * n + k;
        if filled[at] {
            return Err(Error::malformed(path, format!("duplicate entry ({i},{j},{k})")));
        }
        filled[at] = true;
        dense[at] = c;
    }
    Ok(Ring::from_dense(m, spec.basis_names.clone(), dense))
}

impl Ring {
    pub(crate) fn from_dense(modulus: u32, names: Vec<String>, dense: Vec<u32>) -> Ring {
        let n = names.len();
        let mut hasher = DefaultHasher::new();
        modulus.hash(&mut hasher);
        n.hash(&mut hasher);
        dense.hash(&mut hasher);
        let sparse = (0..n * n)
            .map(|ij| {
                (0..n)
                    .filter_map(|k| {
                        let c = dense[ij * n + k];
                        (c != 0).then_some((k, c))
                    })
                    .collect()
            })
            .collect();
        Ring {
            id: RingId(hasher.finish()),
            modulus,
            names,
            dense,
            sparse,
        }
    }

    pub fn id(&self) -> RingId {
        self.id
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn basis_names(&self) -> &[String] {
        &self.names
    }

    pub fn basis_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Structure constant `c[i][j][k]`.
    pub fn constant(&self, i: usize, j: usize, k: usize) -> u32 {
        let n = self.dim();
        self.dense[(i * n + j) * n + k]
    }

    /// Nonzero `(k, c)` terms of `e_i e_j`.
    pub fn product_terms(&self, i: usize, j: usize) -> &[(usize, u32)] {
        &self.sparse[i * self.dim() + j]
    }

    /// The presentation as sorted sparse triples.
    pub fn to_spec(&self) -> RingSpec {
        let n = self.dim();
        let mut triples = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for &(k, c) in self.product_terms(i, j) {
                    triples.push((i, j, k, c));
                }
            }
        }
        RingSpec {
            modulus: self.modulus,
            basis_names: self.names.clone(),
            structure_constants: triples,
        }
    }

    pub fn element(&self, coords: Vec<u32>) -> Result<Element> {
        if coords.len() != self.dim() {
            return Err(Error::malformed(
                "coords",
                format!("expected {} coordinates, got {}", self.dim(), coords.len()),
            ));
        }
        if let Some(pos) = coords.iter().position(|&c| c >= self.modulus) {
            return Err(Error::malformed(
                format!("coords[{pos}]"),
                format!("coefficient {} is not below modulus {}", coords[pos], self.modulus),
            ));
        }
        Ok(Element {
            ring: self.id,
            coords,
        })
    }

    /// Element from integer coordinates, reduced modulo `m`.
    pub fn element_from_ints(&self, coords: &[i64]) -> Result<Element> {
        self.element(coords.iter().map(|&c| modular::reduce(c, self.modulus)).collect())
    }

    pub(crate) fn wrap(&self, coords: Vec<u32>) -> Element {
        debug_assert_eq!(coords.len(), self.dim());
        Element {
            ring: self.id,
            coords,
        }
    }

    pub fn zero(&self) -> Element {
        self.wrap(vec![0; self.dim()])
    }

    pub fn basis(&self, i: usize) -> Element {
        let mut v = vec![0; self.dim()];
        v[i] = 1;
        self.wrap(v)
    }

    pub(crate) fn check(&self, x: &Element) -> Result<()> {
        if x.ring == self.id {
            Ok(())
        } else {
            Err(Error::MixedRings)
        }
    }

    /// Product of raw coordinate vectors.
    pub fn mul_raw(&self, x: &[u32], y: &[u32]) -> Vec<u32> {
        let n = self.dim();
        let m = self.modulus as u64;
        let mut acc = vec![0u64; n];
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, &yj) in y.iter().enumerate() {
                if yj == 0 {
                    continue;
                }
                let s = xi as u64 * yj as u64 % m;
                for &(k, c) in &self.sparse[i * n + j] {
                    acc[k] = (acc[k] + s * c as u64) % m;
                }
            }
        }
        acc.into_iter().map(|v| v as u32).collect()
    }

    /// `x e_j` for a raw `x`.
    pub(crate) fn mul_basis_right(&self, x: &[u32], j: usize) -> Vec<u32> {
        let n = self.dim();
        let m = self.modulus;
        let mut out = vec![0u32; n];
        for (i, &xi) in x.iter().enumerate() {
            if xi != 0 {
                for &(k, c) in &self.sparse[i * n + j] {
                    out[k] = modular::add(out[k], modular::mul(xi, c, m), m);
                }
            }
        }
        out
    }

    /// `e_i y` for a raw `y`.
    pub(crate) fn mul_basis_left(&self, i: usize, y: &[u32]) -> Vec<u32> {
        let n = self.dim();
        let m = self.modulus;
        let mut out = vec![0u32; n];
        for (j, &yj) in y.iter().enumerate() {
            if yj != 0 {
                for &(k, c) in &self.sparse[i * n + j] {
                    out[k] = modular::add(out[k], modular::mul(yj, c, m), m);
                }
            }
        }
        out
    }

    pub(crate) fn basis_product(&self, i: usize, j: usize) -> Vec<u32> {
        let mut out = vec![0u32; self.dim()];
        for &(k, c) in self.product_terms(i, j) {
            out[k] = c;
        }
        out
    }

    pub fn commutator_raw(&self, x: &[u32], y: &[u32]) -> Vec<u32> {
        modular::vsub(&self.mul_raw(x, y), &self.mul_raw(y, x), self.modulus)
    }

    /// Whether `z` commutes with every basis element, i.e. lies in the center.
    pub fn is_central_raw(&self, z: &[u32]) -> bool {
        (0..self.dim()).all(|j| {
            let mut e = vec![0; self.dim()];
            e[j] = 1;
            self.mul_raw(z, &e) == self.mul_raw(&e, z)
        })
    }

    pub fn add(&self, x: &Element, y: &Element) -> Result<Element> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.wrap(modular::vadd(&x.coords, &y.coords, self.modulus)))
    }

    pub fn sub(&self, x: &Element, y: &Element) -> Result<Element> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.wrap(modular::vsub(&x.coords, &y.coords, self.modulus)))
    }

    pub fn neg(&self, x: &Element) -> Result<Element> {
        self.check(x)?;
        Ok(self.wrap(modular::vneg(&x.coords, self.modulus)))
    }

    /// Integer multiple `c x`.
    pub fn scale(&self, c: i64, x: &Element) -> Result<Element> {
        self.check(x)?;
        let c = modular::reduce(c, self.modulus);
        Ok(self.wrap(modular::vscale(c, &x.coords, self.modulus)))
    }

    pub fn mul(&self, x: &Element, y: &Element) -> Result<Element> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.wrap(self.mul_raw(&x.coords, &y.coords)))
    }

    /// Lie product `[x, y] = xy - yx`.
    pub fn commutator(&self, x: &Element, y: &Element) -> Result<Element> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.wrap(self.commutator_raw(&x.coords, &y.coords)))
    }

    /// Jordan product `x o y = xy + yx`.
    pub fn jordan(&self, x: &Element, y: &Element) -> Result<Element> {
        self.check(x)?;
        self.check(y)?;
        let xy = self.mul_raw(&x.coords, &y.coords);
        let yx = self.mul_raw(&y.coords, &x.coords);
        Ok(self.wrap(modular::vadd(&xy, &yx, self.modulus)))
    }

    /// Number of elements, `m^dim`.
    pub fn cardinality(&self) -> u128 {
        pow_count(self.modulus, self.dim())
    }

    /// Every element in counter order; refuses when `m^dim` exceeds `budget`.
    pub fn all_elements_raw(&self, budget: u64) -> Result<Vec<Vec<u32>>> {
        budget::check("ring elements", self.cardinality(), budget)?;
        Ok(Counter::new(self.dim(), self.modulus).collect())
    }

    /// Multiplicative identity, when one exists. Needs a prime modulus.
    pub fn unity(&self) -> Result<Option<Element>> {
        modular::require_prime(self.modulus)?;
        let n = self.dim();
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        // u e_j = e_j and e_j u = e_j, coordinate by coordinate.
        for j in 0..n {
            for k in 0..n {
                rows.push((0..n).map(|i| self.constant(i, j, k)).collect());
                rhs.push(u32::from(j == k));
                rows.push((0..n).map(|i| self.constant(j, i, k)).collect());
                rhs.push(u32::from(j == k));
            }
        }
        Ok(linalg::solve(self.modulus, n, &rows, &rhs).map(|a| self.wrap(a.particular)))
    }

    /// Spanning set of the center `Z(R)`. Needs a prime modulus.
    pub fn center(&self) -> Result<Vec<Element>> {
        let basis: Vec<Element> = (0..self.dim()).map(|j| self.basis(j)).collect();
        self.centralizer(&basis)
    }

    /// Spanning set of `{z : zs = sz for all s in set}`. Needs a prime modulus.
    pub fn centralizer(&self, set: &[Element]) -> Result<Vec<Element>> {
        modular::require_prime(self.modulus)?;
        for s in set {
            self.check(s)?;
        }
        let n = self.dim();
        // Column i of the system holds [e_i, s]; rows run over (s, k).
        let brackets: Vec<Vec<Vec<u32>>> = set
            .iter()
            .map(|s| {
                (0..n)
                    .map(|i| {
                        let mut e = vec![0; n];
                        e[i] = 1;
                        self.commutator_raw(&e, &s.coords)
                    })
                    .collect()
            })
            .collect();
        let mut rows = Vec::new();
        for per_s in &brackets {
            for k in 0..n {
                rows.push((0..n).map(|i| per_s[i][k]).collect::<Vec<u32>>());
            }
        }
        let kernel = linalg::nullspace(self.modulus, n, &rows);
        let span = Echelon::from_vectors(self.modulus, n, kernel.iter().map(|v| v.as_slice()));
        Ok(span.rows().iter().map(|r| self.wrap(r.clone())).collect())
    }
}

/// `R × S` on the concatenated basis. Clashing basis names get `L.` and `R.`
/// prefixes.
pub fn direct_product(r: &Ring, s: &Ring) -> Result<Ring> {
    if r.modulus() != s.modulus() {
        return Err(Error::Precondition(format!(
            "factors have different moduli {} and {}",
            r.modulus(),
            s.modulus()
        )));
    }
    let (a, b) = (r.dim(), s.dim());
    let n = a + b;
    let clash = r.basis_names().iter().any(|x| s.basis_names().contains(x));
    let mut names = Vec::with_capacity(n);
    for x in r.basis_names() {
        names.push(if clash { format!("L.{x}") } else { x.clone() });
    }
    for x in s.basis_names() {
        names.push(if clash { format!("R.{x}") } else { x.clone() });
    }
    let mut dense = vec![0u32; n * n * n];
    for i in 0..a {
        for j in 0..a {
            for &(k, c) in r.product_terms(i, j) {
                dense[(i * n + j) * n + k] = c;
            }
        }
    }
    for i in 0..b {
        for j in 0..b {
            for &(k, c) in s.product_terms(i, j) {
                dense[((a + i) * n + (a + j)) * n + (a + k)] = c;
            }
        }
    }
    Ok(Ring::from_dense(r.modulus(), names, dense))
}

pub fn validate_ring(ring: &Ring) -> Verdict<AssociativityViolation> {
    let n = ring.dim();
    for i in 0..n {
        for j in 0..n {
            let ij = ring.basis_product(i, j);
            for k in 0..n {
                let left = ring.mul_basis_right(&ij, k);
                let jk = ring.basis_product(j, k);
                let right = ring.mul_basis_left(i, &jk);
                if left != right {
                    return Verdict::Fail(AssociativityViolation { i, j, k });
                }
            }
        }
    }
    Verdict::Pass
}

pub fn is_commutative(ring: &Ring) -> Verdict<CommutativityViolation> {
    let n = ring.dim();
    for i in 0..n {
        for j in (i + 1)..n {
            if ring.product_terms(i, j) != ring.product_terms(j, i) {
                return Verdict::Fail(CommutativityViolation { i, j });
            }
        }
    }
    Verdict::Pass
}
