//! Small graded instances for sweeps: matrix patterns, group algebras of
//! abelian groups of order at most 4, and every associative table of
//! dimension at most 2 over a small field.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::budget::{self, Budget};
use crate::error::{Error, Result};
use crate::grading::{validate_grading, CertifiedGrading, DegreeGroup, Grading};
use crate::modular::{self, Counter};
use crate::ring::{validate_ring, Ring};

use super::builders::{elementary_grading, group_algebra, is_closed_pattern, matrix_pattern_ring, matrix_unit_name};
use super::document::{document_from, RingSpecDocument};
use super::params::Params;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    MatrixPattern,
    GroupAlgebra,
    FreeSmall,
}

impl Family {
    pub const ALL: [Family; 3] = [Family::MatrixPattern, Family::GroupAlgebra, Family::FreeSmall];

    pub fn name(self) -> &'static str {
        match self {
            Family::MatrixPattern => "matrix-pattern",
            Family::GroupAlgebra => "group-algebra",
            Family::FreeSmall => "free-small",
        }
    }

    fn allowed_keys(self) -> &'static [&'static str] {
        match self {
            Family::MatrixPattern => &["n", "p", "grading", "max_dim"],
            Family::GroupAlgebra => &["order", "p", "max_dim"],
            Family::FreeSmall => &["dim", "p", "max_dim"],
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Family> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::Unknown {
                kind: "family",
                name: s.to_string(),
            })
    }
}

/// A ring with a certified grading, labelled for reports.
#[derive(Debug, Clone)]
pub struct Instance {
    pub family: Family,
    pub label: String,
    pub ring: Ring,
    pub grading: CertifiedGrading,
}

impl Instance {
    pub fn to_document(&self) -> RingSpecDocument {
        let mut doc = document_from(&self.ring, &self.grading);
        doc.provenance = format!("{}: {}", self.family, self.label);
        doc
    }
}

type DedupKey = (u32, Vec<(usize, usize, usize, u32)>, DegreeGroup, Vec<Vec<i64>>);

fn dedup_key(ring: &Ring, grading: &Grading) -> DedupKey {
    // A grading with every degree zero is the trivial grading whatever its group.
    let all_zero = grading.degrees().iter().all(|d| d.0.iter().all(|&c| c == 0));
    let (group, degrees) = if all_zero {
        (DegreeGroup::trivial(), vec![Vec::new(); ring.dim()])
    } else {
        (
            grading.group().clone(),
            grading.degrees().iter().map(|d| d.0.clone()).collect(),
        )
    };
    (ring.modulus(), ring.to_spec().structure_constants, group, degrees)
}

fn primes(params: &Params, default: &[u64]) -> Result<Vec<u32>> {
    let ps = params.ints_or("p", default)?;
    ps.into_iter()
        .map(|p| {
            if p <= modular::MAX_MODULUS as u64 && modular::is_prime(p as u32) {
                Ok(p as u32)
            } else {
                Err(Error::malformed("p", format!("{p} is not a prime")))
            }
        })
        .collect()
}

/// Every instance of `family` under `params`, valid and deduplicated, in a
/// fixed order: by modulus, then by the family's own parameters.
pub fn enumerate_instances(family: Family, params: &Params, budget: &Budget) -> Result<Vec<Instance>> {
    params.expect_keys(family.allowed_keys())?;
    let max_dim = params.int("max_dim")?.map(|d| d as usize);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let mut push = |label: String, ring: Ring, grading: Grading| -> Result<()> {
        if max_dim.is_some_and(|d| ring.dim() > d) {
            return Ok(());
        }
        if !validate_ring(&ring).is_pass() || !validate_grading(&ring, &grading).is_pass() {
            return Ok(());
        }
        if seen.insert(dedup_key(&ring, &grading)) {
            let grading = grading.certify(&ring)?;
            out.push(Instance {
                family,
                label,
                ring,
                grading,
            });
        }
        Ok(())
    };
    match family {
        Family::MatrixPattern => {
            let sizes = params.ints_or("n", &[1, 2])?;
            let kinds = params
                .words("grading")
                .unwrap_or_else(|| vec!["trivial".into(), "elementary".into()]);
            for k in &kinds {
                if k != "trivial" && k != "elementary" {
                    return Err(Error::Unknown {
                        kind: "grading",
                        name: k.clone(),
                    });
                }
            }
            for p in primes(params, &[2, 3])? {
                for &n in &sizes {
                    let n = n as usize;
                    if !(1..=3).contains(&n) {
                        return Err(Error::malformed("n", format!("{n} is outside 1..3")));
                    }
                    for positions in closed_patterns(n) {
                        let ring = matrix_pattern_ring(p, &positions)?;
                        let names: Vec<String> = positions.iter().map(|&(i, j)| matrix_unit_name(i, j)).collect();
                        let shape = format!("p={p} n={n} {{{}}}", names.join(","));
                        for k in &kinds {
                            let grading = if k == "trivial" {
                                Grading::trivial(ring.dim())
                            } else if n >= 2 {
                                elementary_grading(n, &positions)?
                            } else {
                                continue;
                            };
                            let label = if k == "trivial" {
                                format!("{shape} trivial")
                            } else {
                                format!("{shape} Z{n}-elementary")
                            };
                            push(label, ring.clone(), grading)?;
                        }
                    }
                }
            }
        }
        Family::GroupAlgebra => {
            let orders = params.ints_or("order", &[1, 2, 3, 4])?;
            for p in primes(params, &[2, 3])? {
                for &order in &orders {
                    for torsion in abelian_groups(order)? {
                        let (ring, grading) = group_algebra(p, &torsion)?;
                        let name = if torsion.is_empty() {
                            "1".to_string()
                        } else {
                            torsion.iter().map(|t| format!("Z{t}")).collect::<Vec<_>>().join("x")
                        };
                        push(format!("p={p} A={name}"), ring, grading)?;
                    }
                }
            }
        }
        Family::FreeSmall => {
            let dims = params.ints_or("dim", &[1, 2])?;
            for p in primes(params, &[2])? {
                for &dim in &dims {
                    let dim = dim as usize;
                    if !(1..=3).contains(&dim) {
                        return Err(Error::malformed("dim", format!("{dim} is outside 1..3")));
                    }
                    let cube = dim * dim * dim;
                    budget::check("structure tables", budget::pow_count(p, cube), budget.map_candidates)?;
                    for (idx, dense) in Counter::new(cube, p).enumerate() {
                        let ring = Ring::from_dense(p, (0..dim).map(|i| format!("e{i}")).collect(), dense);
                        let tag = format!("p={p} dim={dim} table#{idx}");
                        push(format!("{tag} trivial"), ring.clone(), Grading::trivial(dim))?;
                        if dim == 2 {
                            for degrees in [[0, 1], [1, 0]] {
                                let g = Grading::new(DegreeGroup::cyclic(2), degrees.iter().map(|&d| vec![d]).collect())?;
                                push(format!("{tag} Z2({},{})", degrees[0], degrees[1]), ring.clone(), g)?;
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Nonempty multiplicatively closed sets of positions in an `n × n` matrix,
/// each in row-major order.
fn closed_patterns(n: usize) -> Vec<Vec<(usize, usize)>> {
    let cells: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
    (1u32..1 << cells.len())
        .map(|mask| {
            cells
                .iter()
                .enumerate()
                .filter(|(b, _)| mask >> b & 1 == 1)
                .map(|(_, &c)| c)
                .collect::<Vec<_>>()
        })
        .filter(|pos| is_closed_pattern(pos))
        .collect()
}

/// Abelian groups of the given order up to isomorphism, as torsion lists.
fn abelian_groups(order: u64) -> Result<Vec<Vec<u32>>> {
    Ok(match order {
        1 => vec![vec![]],
        2 => vec![vec![2]],
        3 => vec![vec![3]],
        4 => vec![vec![4], vec![2, 2]],
        _ => {
            return Err(Error::malformed(
                "order",
                format!("group order {order} is outside 1..4"),
            ))
        }
    })
}
