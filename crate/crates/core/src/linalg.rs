//! Gaussian elimination over the prime field `F_p`.

use crate::modular::{axpy, inv, is_zero, mul, neg};

/// A subspace of `F_p^width` in reduced row-echelon form.
///
/// Rows are kept sorted by pivot column and every pivot equals 1, so two
/// spans are equal exactly when their row lists are equal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Echelon {
    p: u32,
    width: usize,
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(p: u32, width: usize) -> Self {
        Echelon {
            p,
            width,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn from_vectors<'a>(p: u32, width: usize, vs: impl IntoIterator<Item = &'a [u32]>) -> Self {
        let mut e = Echelon::new(p, width);
        for v in vs {
            e.insert(v);
        }
        e
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    /// Residue of `v` after clearing every pivot column.
    pub fn reduce(&self, v: &[u32]) -> Vec<u32> {
        let mut r = v.to_vec();
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            let c = r[pc];
            if c != 0 {
                axpy(&mut r, neg(c, self.p), row, self.p);
            }
        }
        r
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        is_zero(&self.reduce(v))
    }

    /// Adds `v` to the span; returns whether the span grew.
    pub fn insert(&mut self, v: &[u32]) -> bool {
        let mut r = self.reduce(v);
        let Some(pc) = r.iter().position(|&x| x != 0) else {
            return false;
        };
        let s = inv(r[pc], self.p);
        for x in r.iter_mut() {
            *x = mul(*x, s, self.p);
        }
        for row in self.rows.iter_mut() {
            let c = row[pc];
            if c != 0 {
                axpy(row, neg(c, self.p), &r, self.p);
            }
        }
        let at = self.pivots.partition_point(|&q| q < pc);
        self.rows.insert(at, r);
        self.pivots.insert(at, pc);
        true
    }
}

/// Solution set `particular + span(kernel)` of a linear system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Affine {
    pub particular: Vec<u32>,
    pub kernel: Vec<Vec<u32>>,
}

/// Solves `A x = b` over `F_p`, where `rows[r]` is row `r` of `A`.
pub fn solve(p: u32, ncols: usize, rows: &[Vec<u32>], rhs: &[u32]) -> Option<Affine> {
    // Augmented rows reduced on the fly; the last column carries the right-hand side.
    let mut aug = Echelon::new(p, ncols + 1);
    for (row, &b) in rows.iter().zip(rhs) {
        let mut v = row.clone();
        v.push(b);
        aug.insert(&v);
    }
    if aug.pivots.iter().any(|&pc| pc == ncols) {
        return None;
    }
    let mut particular = vec![0; ncols];
    for (row, &pc) in aug.rows.iter().zip(&aug.pivots) {
        particular[pc] = row[ncols];
    }
    let pivot_set: Vec<bool> = (0..ncols).map(|c| aug.pivots.contains(&c)).collect();
    let mut kernel = Vec::new();
    for free in (0..ncols).filter(|&c| !pivot_set[c]) {
        let mut k = vec![0; ncols];
        k[free] = 1;
        for (row, &pc) in aug.rows.iter().zip(&aug.pivots) {
            k[pc] = neg(row[free], p);
        }
        kernel.push(k);
    }
    Some(Affine { particular, kernel })
}

/// Basis of `{x : A x = 0}`.
pub fn nullspace(p: u32, ncols: usize, rows: &[Vec<u32>]) -> Vec<Vec<u32>> {
    let zeros = vec![0; rows.len()];
    solve(p, ncols, rows, &zeros)
        .map(|a| a.kernel)
        .unwrap_or_default()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn matvec(p: u32, rows: &[Vec<u32>], x: &[u32]) -> Vec<u32> {
        rows.iter()
            .map(|row| {
                row.iter()
                    .zip(x)
                    .fold(0u32, |acc, (&a, &b)| crate::modular::add(acc, mul(a, b, p), p))
            })
            .collect()
    }

    #[test]
    fn echelon_membership() {
        let mut e = Echelon::new(5, 3);
        assert!(e.insert(&[0, 1, 0]));
        assert!(!e.insert(&[0, 3, 0]));
        assert!(e.contains(&[0, 4, 0]));
        assert!(!e.contains(&[1, 0, 0]));
        assert_eq!(e.rank(), 1);
    }

    #[test]
    fn canonical_form_is_order_independent() {
        let a = Echelon::from_vectors(3, 3, [&[1u32, 1, 0][..], &[0, 1, 2][..]]);
        let b = Echelon::from_vectors(3, 3, [&[1u32, 2, 2][..], &[1, 1, 0][..]]);
        assert_eq!(a, b);
    }

    #[test]
    fn inconsistent_system() {
        // x = 1 and x = 2
        assert!(solve(5, 1, &[vec![1], vec![1]], &[1, 2]).is_none());
    }

    proptest! {
        #[test]
        fn solutions_satisfy_the_system(
            entries in proptest::collection::vec(0u32..7, 12),
            x in proptest::collection::vec(0u32..7, 4),
        ) {
            let p = 7;
            let rows: Vec<Vec<u32>> = entries.chunks(4).map(|c| c.to_vec()).collect();
            let b = matvec(p, &rows, &x);
            let sol = solve(p, 4, &rows, &b).expect("consistent by construction");
            prop_assert_eq!(matvec(p, &rows, &sol.particular), b.clone());
            for k in &sol.kernel {
                prop_assert!(is_zero(&matvec(p, &rows, k)));
            }
            let rank = Echelon::from_vectors(p, 4, rows.iter().map(|r| r.as_slice())).rank();
            prop_assert_eq!(sol.kernel.len(), 4 - rank);
        }
    }
}
