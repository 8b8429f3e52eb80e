//! Structure-constant constructions: matrix patterns, truncated polynomial
//! rings, and group algebras of small abelian groups.

use crate::error::{Error, Result};
use crate::grading::{Degree, DegreeGroup, Grading};
use crate::modular;
use crate::ring::{make_ring, Ring, RingSpec};

/// Name of the matrix unit at 0-based position `(i, j)`, e.g. `E12`.
pub fn matrix_unit_name(i: usize, j: usize) -> String {
    format!("E{}{}", i + 1, j + 1)
}

/// Whether `E_ij E_jl` stays inside the pattern for every composable pair.
pub fn is_closed_pattern(positions: &[(usize, usize)]) -> bool {
    positions.iter().all(|&(i, j)| {
        positions
            .iter()
            .filter(|&&(k, _)| k == j)
            .all(|&(_, l)| positions.contains(&(i, l)))
    })
}

/// Span of the matrix units at `positions` (0-based), in the given order.
pub fn matrix_pattern_ring(modulus: u32, positions: &[(usize, usize)]) -> Result<Ring> {
    if positions.is_empty() {
        return Err(Error::malformed("positions", "pattern is empty"));
    }
    if !is_closed_pattern(positions) {
        return Err(Error::malformed("positions", "pattern is not closed under multiplication"));
    }
    let mut constants = Vec::new();
    for (a, &(i, j)) in positions.iter().enumerate() {
        for (b, &(k, l)) in positions.iter().enumerate() {
            if j == k {
                let c = positions.iter().position(|&q| q == (i, l)).expect("closed pattern");
                constants.push((a, b, c, 1));
            }
        }
    }
    make_ring(&RingSpec {
        modulus,
        basis_names: positions.iter().map(|&(i, j)| matrix_unit_name(i, j)).collect(),
        structure_constants: constants,
    })
}

/// `deg E_ij = j - i` in `Z_n`, the elementary grading of an `n × n` pattern.
pub fn elementary_grading(n: usize, positions: &[(usize, usize)]) -> Result<Grading> {
    let degrees = positions.iter().map(|&(i, j)| vec![j as i64 - i as i64]).collect();
    Grading::new(DegreeGroup::cyclic(n as u32), degrees)
}

/// `Z_p[X]/(X^k)` on the basis `1, X, ..., X^{k-1}`, with `X^n` in degree
/// `n · step`.
pub fn truncated_poly_ring(p: u32, k: usize, group: DegreeGroup, step: &Degree) -> Result<(Ring, Grading)> {
    if k == 0 {
        return Err(Error::malformed("truncation", "k must be at least 1"));
    }
    let mut constants = Vec::new();
    for a in 0..k {
        for b in 0..k - a {
            constants.push((a, b, a + b, 1));
        }
    }
    let ring = make_ring(&RingSpec {
        modulus: p,
        basis_names: (0..k).map(power_name).collect(),
        structure_constants: constants,
    })?;
    let degrees = (0..k)
        .map(|n| step.0.iter().map(|&s| s * n as i64).collect())
        .collect();
    let grading = Grading::new(group, degrees)?;
    Ok((ring, grading))
}

pub fn power_name(n: usize) -> String {
    match n {
        0 => "1".into(),
        1 => "X".into(),
        _ => format!("X^{n}"),
    }
}

/// Formal derivative `X^n ↦ n X^{n-1}` as basis images, offset inside a
/// larger basis. Only a derivation of the truncation when `p` divides `k`.
pub(crate) fn derivative_images(p: u32, k: usize, offset: usize, width: usize, scale: u32) -> Vec<Vec<u32>> {
    (0..k)
        .map(|n| {
            let mut img = vec![0; width];
            if n > 0 {
                img[offset + n - 1] = modular::mul(scale, modular::reduce(n as i64, p), p);
            }
            img
        })
        .collect()
}

/// Elements of `Z_{t_1} ⊕ ... ⊕ Z_{t_s}` in mixed-radix order, first coordinate fastest.
fn group_elements(torsion: &[u32]) -> Vec<Vec<i64>> {
    let order: u32 = torsion.iter().product();
    (0..order)
        .map(|mut idx| {
            torsion
                .iter()
                .map(|&t| {
                    let a = idx % t;
                    idx /= t;
                    a as i64
                })
                .collect()
        })
        .collect()
}

/// `Z_p[A]` for `A = ⊕ Z_{t_i}`, graded by `A` with `g` in degree `g`.
/// Basis vector `g0` is the identity of `A`.
pub fn group_algebra(p: u32, torsion: &[u32]) -> Result<(Ring, Grading)> {
    let group = DegreeGroup {
        free_rank: 0,
        torsion: torsion.to_vec(),
    };
    group.validate()?;
    let elems = group_elements(torsion);
    let index = |v: &[i64]| elems.iter().position(|e| e == v).expect("group closed");
    let mut constants = Vec::new();
    for (a, x) in elems.iter().enumerate() {
        for (b, y) in elems.iter().enumerate() {
            let sum: Vec<i64> = x
                .iter()
                .zip(y)
                .zip(torsion)
                .map(|((u, v), &t)| (u + v) % t as i64)
                .collect();
            constants.push((a, b, index(&sum), 1));
        }
    }
    let ring = make_ring(&RingSpec {
        modulus: p,
        basis_names: (0..elems.len()).map(|i| format!("g{i}")).collect(),
        structure_constants: constants,
    })?;
    let grading = Grading::new(group, elems)?;
    Ok((ring, grading))
}
