//! Exhaustive desk-scale sweeps of the criteria over instance families.
//!
//! Per instance the candidate maps are every matrix when `dim ≤ 3`, and
//! otherwise the span of left and right multiplications and inner
//! derivations by basis elements (plus any declared maps). Each candidate
//! that preserves homogeneous elements is paired with every homogeneous
//! associated derivation. Ideals are the whole ring and the two-sided
//! ideals generated by one nonzero homogeneous element.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::budget::{self, Budget};
use crate::corpus::document::RingSpecDocument;
use crate::corpus::families::{enumerate_instances, Family, Instance};
use crate::corpus::params::Params;
use crate::error::Result;
use crate::grading::CertifiedGrading;
use crate::ideal::{ideal_generate, whole_ring, IdealHandle, Side};
use crate::linalg::Echelon;
use crate::maps::{
    homogeneous_associates, inner_derivation_raw, is_homogeneous_derivation, left_multiplication_raw,
    right_multiplication_raw, AdditiveMap, Decision,
};
use crate::modular::{axpy, Counter};
use crate::ring::Ring;
use crate::verdict::Verdict;

use super::condition::{check_condition, ConditionKind, Sign};
use super::criteria::{
    assemble, check_annihilator_lemma, one_sided_graded_ideals, Criterion, IdealFacts, RingFacts,
};

/// Largest dimension whose full matrix space is enumerated.
pub const FULL_MATRIX_DIM: usize = 3;

/// Dossiers kept per report; counts are always complete.
pub const DOSSIER_CAP: usize = 16;

/// Candidate additive maps for `ring`, in a fixed order.
pub fn candidate_maps(ring: &Ring, declared: &[AdditiveMap], budget: &Budget) -> Result<Vec<AdditiveMap>> {
    let n = ring.dim();
    let m = ring.modulus();
    if n <= FULL_MATRIX_DIM {
        budget::check("candidate maps", budget::pow_count(m, n * n), budget.map_candidates)?;
        return Ok(Counter::new(n * n, m).map(|flat| AdditiveMap::from_flat(ring, flat)).collect());
    }
    let mut span = Echelon::new(m, n * n);
    for i in 0..n {
        let e = ring.basis(i).into_coords();
        for f in [
            left_multiplication_raw(ring, &e),
            right_multiplication_raw(ring, &e),
            inner_derivation_raw(ring, &e),
        ] {
            span.insert(&f.images().concat());
        }
    }
    for f in declared {
        f.check(ring)?;
        span.insert(&f.images().concat());
    }
    budget::check("candidate maps", budget::pow_count(m, span.rank()), budget.map_candidates)?;
    Ok(Counter::new(span.rank(), m)
        .map(|coeffs| {
            let mut flat = vec![0; n * n];
            for (c, row) in coeffs.iter().zip(span.rows()) {
                axpy(&mut flat, *c, row, m);
            }
            AdditiveMap::from_flat(ring, flat)
        })
        .collect())
}

/// Generalized homogeneous candidates, each with all its homogeneous
/// associated derivations.
#[derive(Debug, Clone, Default)]
pub struct Qualifying {
    pub candidates: u64,
    pub maps: Vec<(AdditiveMap, Vec<AdditiveMap>)>,
    /// Candidates whose associate search exceeded the budget.
    pub undecided: u64,
}

impl Qualifying {
    pub fn pair_count(&self) -> u64 {
        self.maps.iter().map(|(_, ds)| ds.len() as u64).sum()
    }

    /// Pairs with `d = 0`.
    pub fn zero_associates(&self) -> u64 {
        self.maps
            .iter()
            .map(|(_, ds)| ds.iter().filter(|d| d.is_zero()).count() as u64)
            .sum()
    }

    /// Same maps with the zero associates dropped; maps left with none are removed.
    pub fn nonzero(&self) -> Vec<(AdditiveMap, Vec<AdditiveMap>)> {
        self.maps
            .iter()
            .filter_map(|(f, ds)| {
                let ds: Vec<_> = ds.iter().filter(|d| !d.is_zero()).cloned().collect();
                (!ds.is_empty()).then(|| (f.clone(), ds))
            })
            .collect()
    }
}

pub fn qualifying_pairs(
    ring: &Ring,
    grading: &CertifiedGrading,
    declared: &[AdditiveMap],
    budget: &Budget,
) -> Result<Qualifying> {
    let candidates = candidate_maps(ring, declared, budget)?;
    let decided: Vec<Decision<Vec<AdditiveMap>>> = candidates
        .par_iter()
        .map(|f| homogeneous_associates(f, ring, grading, budget))
        .collect::<Result<_>>()?;
    let mut out = Qualifying {
        candidates: candidates.len() as u64,
        ..Qualifying::default()
    };
    for (f, d) in candidates.into_iter().zip(decided) {
        match d {
            Decision::Yes(ds) => out.maps.push((f, ds)),
            Decision::No => {}
            Decision::Undecided => out.undecided += 1,
        }
    }
    Ok(out)
}

/// The whole ring, then the two-sided ideals generated by each nonzero
/// homogeneous element, deduplicated by span. All are graded and nonzero
/// (the whole ring only if `R ≠ 0`).
pub fn sweep_ideals(ring: &Ring, grading: &CertifiedGrading, budget: &Budget) -> Result<Vec<IdealHandle>> {
    let mut out: Vec<IdealHandle> = Vec::new();
    let whole = whole_ring(ring)?;
    if !whole.is_zero() {
        out.push(whole);
    }
    for g in grading.nonzero_homogeneous_raw(ring.modulus(), budget.elements)? {
        let ideal = ideal_generate(ring, &[ring.element(g)?], Side::TwoSided)?;
        if !ideal.is_zero() && out.iter().all(|j| j.basis_raw() != ideal.basis_raw()) {
            out.push(ideal);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceRow {
    pub label: String,
    pub dim: usize,
    pub modulus: u32,
    pub gr_prime: bool,
    pub commutative: bool,
    pub candidate_maps: u64,
    /// `(F, d)` pairs with `d` a homogeneous associate of `F`.
    pub qualifying_pairs: u64,
    pub zero_associates: u64,
    pub undecided_maps: u64,
    pub ideals: u64,
    /// Individual verdicts or statements evaluated.
    pub evaluated: u64,
    pub hypotheses_satisfied: u64,
    pub outside_hypotheses: u64,
    pub inconsistent: u64,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Totals {
    pub instances: u64,
    pub gr_prime_instances: u64,
    pub evaluated: u64,
    pub hypotheses_satisfied: u64,
    pub outside_hypotheses: u64,
    pub inconsistent: u64,
    pub undecided_maps: u64,
}

/// Everything needed to reproduce an inconsistency by hand.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Dossier {
    pub instance: String,
    pub detail: String,
    pub document: RingSpecDocument,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepReport {
    pub family: String,
    pub params: String,
    pub criterion: Criterion,
    pub instances: Vec<InstanceRow>,
    pub totals: Totals,
    pub dossiers: Vec<Dossier>,
    pub dossiers_truncated: bool,
}

impl SweepReport {
    pub fn is_clean(&self) -> bool {
        self.totals.inconsistent == 0
    }
}

/// Enumerates the family and sweeps `criterion` over it.
pub fn sweep(family: Family, params: &Params, criterion: Criterion, budget: &Budget) -> Result<SweepReport> {
    let instances = enumerate_instances(family, params, budget)?;
    sweep_instances(family.name(), params, &instances, criterion, budget)
}

pub fn sweep_instances(
    family: &str,
    params: &Params,
    instances: &[Instance],
    criterion: Criterion,
    budget: &Budget,
) -> Result<SweepReport> {
    let rows: Vec<(InstanceRow, Vec<Dossier>)> = instances
        .par_iter()
        .map(|inst| sweep_instance(inst, criterion, budget))
        .collect::<Result<_>>()?;
    let mut totals = Totals::default();
    let mut dossiers = Vec::new();
    let mut truncated = false;
    let mut out_rows = Vec::with_capacity(rows.len());
    for (row, ds) in rows {
        totals.instances += 1;
        totals.gr_prime_instances += row.gr_prime as u64;
        totals.evaluated += row.evaluated;
        totals.hypotheses_satisfied += row.hypotheses_satisfied;
        totals.outside_hypotheses += row.outside_hypotheses;
        totals.inconsistent += row.inconsistent;
        totals.undecided_maps += row.undecided_maps;
        for d in ds {
            if dossiers.len() < DOSSIER_CAP {
                dossiers.push(d);
            } else {
                truncated = true;
            }
        }
        out_rows.push(row);
    }
    Ok(SweepReport {
        family: family.to_string(),
        params: params.to_string(),
        criterion,
        instances: out_rows,
        totals,
        dossiers,
        dossiers_truncated: truncated,
    })
}

fn dossier(inst: &Instance, detail: String, fill: impl FnOnce(&mut RingSpecDocument)) -> Dossier {
    let mut document = inst.to_document();
    fill(&mut document);
    Dossier {
        instance: inst.label.clone(),
        detail,
        document,
    }
}

fn sweep_instance(inst: &Instance, criterion: Criterion, budget: &Budget) -> Result<(InstanceRow, Vec<Dossier>)> {
    let ring = &inst.ring;
    let grading = &inst.grading;
    let facts = RingFacts::compute(ring, grading, budget)?;
    let mut row = InstanceRow {
        label: inst.label.clone(),
        dim: ring.dim(),
        modulus: ring.modulus(),
        gr_prime: facts.gr_prime,
        commutative: facts.commutative.is_pass(),
        ..InstanceRow::default()
    };
    if !facts.gr_prime {
        // Every statement swept here assumes gr-primeness.
        row.outside_hypotheses = 1;
        return Ok((row, Vec::new()));
    }
    let mut dossiers = Vec::new();
    if criterion == Criterion::AnnihilatorLemma {
        let report = check_annihilator_lemma(ring, grading, budget)?;
        row.evaluated = 1;
        row.hypotheses_satisfied = 1;
        row.ideals = report.ideals_checked as u64;
        if !report.holds() {
            row.inconsistent = 1;
            dossiers.push(dossier(inst, format!("{report:?}"), |_| {}));
        }
        return Ok((row, dossiers));
    }
    let qualifying = qualifying_pairs(ring, grading, &[], budget)?;
    row.candidate_maps = qualifying.candidates;
    row.qualifying_pairs = qualifying.pair_count();
    row.zero_associates = qualifying.zero_associates();
    row.undecided_maps = qualifying.undecided;
    match criterion {
        Criterion::SingleMap | Criterion::TwoMap => {
            let ideals = sweep_ideals(ring, grading, budget)?;
            row.ideals = ideals.len() as u64;
            let pairs = qualifying.nonzero();
            for ideal in &ideals {
                let ideal_facts = IdealFacts::compute(ideal, grading);
                for sign in [Sign::Minus, Sign::Plus] {
                    let found = if criterion == Criterion::SingleMap {
                        single_map_hits(ring, ideal, &pairs, sign)?
                    } else {
                        two_map_hits(ring, ideal, &pairs, sign)?
                    };
                    let per_map: Vec<u64> = pairs.iter().map(|(_, ds)| ds.len() as u64).collect();
                    row.evaluated += if criterion == Criterion::SingleMap {
                        per_map.iter().sum::<u64>()
                    } else {
                        per_map.iter().sum::<u64>().pow(2)
                    };
                    for hit in found {
                        let (kind, maps, weight) = match hit {
                            Hit::One(a) => (
                                ConditionKind::FxyXy(sign),
                                vec![(&pairs[a].0, &pairs[a].1[0])],
                                per_map[a],
                            ),
                            Hit::Two(a, b) => (
                                ConditionKind::F1xF2yXy(sign),
                                vec![(&pairs[a].0, &pairs[a].1[0]), (&pairs[b].0, &pairs[b].1[0])],
                                per_map[a] * per_map[b],
                            ),
                        };
                        row.hypotheses_satisfied += weight;
                        let verdict = assemble(
                            kind,
                            &facts,
                            ideal_facts,
                            vec![true; maps.len()],
                            vec![true; maps.len()],
                            Verdict::Pass,
                        );
                        if !verdict.implication_holds {
                            row.inconsistent += weight;
                            if dossiers.len() < DOSSIER_CAP {
                                dossiers.push(dossier(inst, format!("{kind}: {}", verdict.summary()), |doc| {
                                    for (idx, (f, d)) in maps.iter().enumerate() {
                                        doc.add_map(&format!("F{}", idx + 1), f);
                                        doc.add_map(&format!("d{}", idx + 1), d);
                                    }
                                    doc.add_ideal("I", ideal);
                                }));
                            }
                        }
                    }
                }
            }
        }
        Criterion::NonzeroAssociate => {
            for (f, ds) in &qualifying.maps {
                for d in ds.iter().filter(|d| !d.is_zero()) {
                    row.evaluated += 1;
                    row.hypotheses_satisfied += 1;
                    if f.is_zero() {
                        row.inconsistent += 1;
                        if dossiers.len() < DOSSIER_CAP {
                            dossiers.push(dossier(inst, "F = 0 with nonzero homogeneous associate".into(), |doc| {
                                doc.add_map("F", f);
                                doc.add_map("d", d);
                            }));
                        }
                    }
                }
            }
        }
        Criterion::Restriction => {
            let mut ideals = sweep_ideals(ring, grading, budget)?;
            ideals.extend(one_sided_graded_ideals(ring, grading, budget)?.into_iter().map(|(_, i)| i));
            row.ideals = ideals.len() as u64;
            let derivations: Vec<&AdditiveMap> = qualifying
                .maps
                .iter()
                .map(|(f, _)| f)
                .filter(|f| !f.is_zero() && is_homogeneous_derivation(f, ring, grading).is_pass())
                .collect();
            for d in derivations {
                for ideal in &ideals {
                    row.evaluated += 1;
                    row.hypotheses_satisfied += 1;
                    let vanishes = ideal.basis_raw().iter().all(|b| d.apply_raw(b).iter().all(|&c| c == 0));
                    if vanishes {
                        row.inconsistent += 1;
                        if dossiers.len() < DOSSIER_CAP {
                            dossiers.push(dossier(inst, "derivation vanishes on the ideal".into(), |doc| {
                                doc.add_map("d", d);
                                doc.add_ideal("I", ideal);
                            }));
                        }
                    }
                }
            }
        }
        Criterion::AnnihilatorLemma => unreachable!("handled above"),
    }
    Ok((row, dossiers))
}

enum Hit {
    One(usize),
    Two(usize, usize),
}

/// Indices of maps with `F(xy) ± xy` central on the ideal.
fn single_map_hits(
    ring: &Ring,
    ideal: &IdealHandle,
    pairs: &[(AdditiveMap, Vec<AdditiveMap>)],
    sign: Sign,
) -> Result<Vec<Hit>> {
    let kind = ConditionKind::FxyXy(sign);
    let holds: Vec<bool> = pairs
        .par_iter()
        .map(|(f, _)| Ok(check_condition(kind, ring, &[f], ideal)?.is_pass()))
        .collect::<Result<_>>()?;
    Ok(holds
        .into_iter()
        .enumerate()
        .filter_map(|(a, h)| h.then_some(Hit::One(a)))
        .collect())
}

/// Index pairs with `F1(x)F2(y) ± xy` central on the ideal.
fn two_map_hits(
    ring: &Ring,
    ideal: &IdealHandle,
    pairs: &[(AdditiveMap, Vec<AdditiveMap>)],
    sign: Sign,
) -> Result<Vec<Hit>> {
    let kind = ConditionKind::F1xF2yXy(sign);
    let per_first: Vec<Vec<usize>> = pairs
        .par_iter()
        .map(|(f1, _)| {
            let mut hits = Vec::new();
            for (b, (f2, _)) in pairs.iter().enumerate() {
                if check_condition(kind, ring, &[f1, f2], ideal)?.is_pass() {
                    hits.push(b);
                }
            }
            Ok(hits)
        })
        .collect::<Result<_>>()?;
    Ok(per_first
        .into_iter()
        .enumerate()
        .flat_map(|(a, bs)| bs.into_iter().map(move |b| Hit::Two(a, b)))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::builders::group_algebra;

    #[test]
    fn candidate_counts() {
        let (ring, _) = group_algebra(2, &[2]).unwrap();
        assert_eq!(candidate_maps(&ring, &[], &Budget::default()).unwrap().len(), 16);
        let (big, _) = group_algebra(2, &[2, 2]).unwrap();
        // commutative: inner derivations vanish, left = right multiplications
        assert_eq!(candidate_maps(&big, &[], &Budget::default()).unwrap().len(), 16);
    }

    #[test]
    fn field_sweep_is_clean() {
        let params = Params::parse("p=3;order=1").unwrap();
        for c in Criterion::ALL {
            let r = sweep(Family::GroupAlgebra, &params, c, &Budget::default()).unwrap();
            assert!(r.is_clean(), "{c}");
            assert_eq!(r.totals.instances, 1);
        }
    }

    #[test]
    fn non_gr_prime_instances_are_outside() {
        let params = Params::parse("p=2;n=2;grading=trivial;max_dim=2").unwrap();
        let r = sweep(Family::MatrixPattern, &params, Criterion::SingleMap, &Budget::default()).unwrap();
        // {E11,E12} and {E12,E22} are not gr-prime
        assert!(r.instances.iter().any(|row| !row.gr_prime && row.outside_hypotheses == 1));
    }
}
