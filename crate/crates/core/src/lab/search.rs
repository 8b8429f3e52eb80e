//! Evidence searches for the open commutativity questions.
//!
//! Bounds pick families and their parameters; every (instance, ideal, maps)
//! triple meeting the hypotheses is counted, split by whether the ring is
//! commutative. Non-commutative survivors are reported with enough data to
//! reproduce them, as candidates only.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::corpus::document::RingSpecDocument;
use crate::corpus::families::{enumerate_instances, Family, Instance};
use crate::corpus::params::Params;
use crate::error::{Error, Result};
use crate::ideal::IdealHandle;
use crate::maps::AdditiveMap;

use super::condition::{check_condition, ConditionKind, Sign};
use super::criteria::RingFacts;
use super::sweep::{qualifying_pairs, sweep_ideals};

pub const SURVIVOR_CAP: usize = 20;

pub const SURVIVOR_NOTE: &str = "candidate counterexamples pending manual verification";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Problem {
    #[serde(rename = "pr1.i")]
    BracketWithSelf,
    #[serde(rename = "pr1.ii")]
    BracketPlusProduct,
    #[serde(rename = "pr1.iii")]
    ProductPlusBracket,
    #[serde(rename = "pr2")]
    ProductPlusJordan,
}

impl Problem {
    pub const ALL: [Problem; 4] = [
        Problem::BracketWithSelf,
        Problem::BracketPlusProduct,
        Problem::ProductPlusBracket,
        Problem::ProductPlusJordan,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Problem::BracketWithSelf => "pr1.i",
            Problem::BracketPlusProduct => "pr1.ii",
            Problem::ProductPlusBracket => "pr1.iii",
            Problem::ProductPlusJordan => "pr2",
        }
    }

    pub fn conditions(self) -> Vec<ConditionKind> {
        let both = |k: fn(Sign) -> ConditionKind| vec![k(Sign::Minus), k(Sign::Plus)];
        match self {
            Problem::BracketWithSelf => vec![ConditionKind::BracketF1xX],
            Problem::BracketPlusProduct => both(ConditionKind::BracketF1xF2yXy),
            Problem::ProductPlusBracket => both(ConditionKind::F1xF2yBracket),
            Problem::ProductPlusJordan => both(ConditionKind::F1xF2yJordan),
        }
    }

    /// Characteristic 2 is excluded.
    pub fn needs_odd_modulus(self) -> bool {
        self == Problem::ProductPlusJordan
    }
}

impl fmt::Display for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Problem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Problem> {
        Problem::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::Unknown {
                kind: "problem",
                name: s.to_string(),
            })
    }
}

/// What one family contributed under the bounds.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrontierRow {
    pub family: String,
    pub params: String,
    pub instances: u64,
    pub excluded_by_modulus: u64,
    pub gr_prime: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Survivor {
    pub instance: String,
    pub condition: ConditionKind,
    pub derivations_nonzero: bool,
    /// Ring, grading, maps `F1`, `d1` (and `F2`, `d2`), ideal `I`.
    pub document: RingSpecDocument,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvidenceReport {
    pub problem: Problem,
    pub conditions: Vec<ConditionKind>,
    pub bounds: String,
    pub frontier: Vec<FrontierRow>,
    /// Triples `(instance, ideal, maps)` evaluated, per condition sign.
    pub evaluated: u64,
    pub hypotheses_satisfied: u64,
    pub satisfied_commutative: u64,
    pub satisfied_noncommutative: u64,
    /// Maps whose associated-derivation search exceeded the budget.
    pub undecided: u64,
    pub note: String,
    pub survivors: Vec<Survivor>,
    pub survivors_truncated: bool,
}

const FAMILY_KEYS: [(Family, &[&str]); 3] = [
    (Family::MatrixPattern, &["n", "p", "max_dim", "grading"]),
    (Family::GroupAlgebra, &["order", "p", "max_dim"]),
    (Family::FreeSmall, &["dim", "p", "max_dim"]),
];

/// Splits search bounds into per-family parameters. `family` lists the
/// families (default: matrix-pattern and group-algebra); other keys go to
/// every family that takes them.
pub fn family_params(bounds: &Params) -> Result<Vec<(Family, Params)>> {
    let allowed: Vec<&str> = std::iter::once("family")
        .chain(FAMILY_KEYS.iter().flat_map(|(_, ks)| ks.iter().copied()))
        .collect();
    bounds.expect_keys(&allowed)?;
    let families: Vec<Family> = match bounds.words("family") {
        Some(ws) => ws.iter().map(|w| w.parse()).collect::<Result<_>>()?,
        None => vec![Family::MatrixPattern, Family::GroupAlgebra],
    };
    let mut out = Vec::new();
    for family in families {
        let keys = FAMILY_KEYS.iter().find(|(f, _)| *f == family).map(|(_, k)| *k).unwrap_or(&[]);
        let mut params = Params::default();
        for key in keys {
            if let Some(values) = bounds.values(key) {
                params.insert(key, values.to_vec());
            }
        }
        out.push((family, params));
    }
    Ok(out)
}

struct InstanceEvidence {
    evaluated: u64,
    satisfied: u64,
    undecided: u64,
    survivors: Vec<Survivor>,
    truncated: bool,
    gr_prime: bool,
    commutative: bool,
}

pub fn search_problem(problem: Problem, bounds: &Params, budget: &Budget) -> Result<EvidenceReport> {
    let mut frontier = Vec::new();
    let mut instances: Vec<Instance> = Vec::new();
    for (family, params) in family_params(bounds)? {
        let all = enumerate_instances(family, &params, budget)?;
        let total = all.len() as u64;
        let kept: Vec<Instance> = all
            .into_iter()
            .filter(|i| !problem.needs_odd_modulus() || i.ring.modulus() != 2)
            .collect();
        frontier.push(FrontierRow {
            family: family.name().to_string(),
            params: params.to_string(),
            instances: total,
            excluded_by_modulus: total - kept.len() as u64,
            gr_prime: 0,
        });
        instances.extend(kept);
    }
    let evidence: Vec<InstanceEvidence> = instances
        .par_iter()
        .map(|inst| instance_evidence(problem, inst, budget))
        .collect::<Result<_>>()?;
    let mut report = EvidenceReport {
        problem,
        conditions: problem.conditions(),
        bounds: bounds.to_string(),
        frontier,
        evaluated: 0,
        hypotheses_satisfied: 0,
        satisfied_commutative: 0,
        satisfied_noncommutative: 0,
        undecided: 0,
        note: SURVIVOR_NOTE.to_string(),
        survivors: Vec::new(),
        survivors_truncated: false,
    };
    for (inst, ev) in instances.iter().zip(evidence) {
        if ev.gr_prime {
            if let Some(row) = report.frontier.iter_mut().find(|r| r.family == inst.family.name()) {
                row.gr_prime += 1;
            }
        }
        report.evaluated += ev.evaluated;
        report.hypotheses_satisfied += ev.satisfied;
        if ev.commutative {
            report.satisfied_commutative += ev.satisfied;
        } else {
            report.satisfied_noncommutative += ev.satisfied;
        }
        report.undecided += ev.undecided;
        report.survivors_truncated |= ev.truncated;
        for s in ev.survivors {
            if report.survivors.len() < SURVIVOR_CAP {
                report.survivors.push(s);
            } else {
                report.survivors_truncated = true;
            }
        }
    }
    Ok(report)
}

fn instance_evidence(problem: Problem, inst: &Instance, budget: &Budget) -> Result<InstanceEvidence> {
    let ring = &inst.ring;
    let facts = RingFacts::compute(ring, &inst.grading, budget)?;
    let mut ev = InstanceEvidence {
        evaluated: 0,
        satisfied: 0,
        undecided: 0,
        survivors: Vec::new(),
        truncated: false,
        gr_prime: facts.gr_prime,
        commutative: facts.commutative.is_pass(),
    };
    if !facts.gr_prime {
        return Ok(ev);
    }
    let qualifying = qualifying_pairs(ring, &inst.grading, &[], budget)?;
    ev.undecided = qualifying.undecided;
    let pairs: Vec<(&AdditiveMap, &AdditiveMap)> = qualifying
        .maps
        .iter()
        .flat_map(|(f, ds)| ds.iter().map(move |d| (f, d)))
        .collect();
    let maps: Vec<&AdditiveMap> = qualifying.maps.iter().map(|(f, _)| f).collect();
    let weight: Vec<u64> = qualifying.maps.iter().map(|(_, ds)| ds.len() as u64).collect();
    let ideals = sweep_ideals(ring, &inst.grading, budget)?;
    for ideal in &ideals {
        for kind in problem.conditions() {
            // condition depends on the maps only, so evaluate per map tuple
            let hits: Vec<Vec<usize>> = if kind.arity() == 1 {
                maps.par_iter()
                    .map(|f| Ok(if check_condition(kind, ring, &[f], ideal)?.is_pass() { vec![0] } else { vec![] }))
                    .collect::<Result<_>>()?
            } else {
                maps.par_iter()
                    .map(|f1| {
                        let mut hits = Vec::new();
                        for (b, f2) in maps.iter().enumerate() {
                            if check_condition(kind, ring, &[f1, f2], ideal)?.is_pass() {
                                hits.push(b);
                            }
                        }
                        Ok(hits)
                    })
                    .collect::<Result<_>>()?
            };
            let total: u64 = weight.iter().sum();
            ev.evaluated += if kind.arity() == 1 { total } else { total * total };
            for (a, bs) in hits.iter().enumerate() {
                for &b in bs {
                    let w = if kind.arity() == 1 { weight[a] } else { weight[a] * weight[b] };
                    ev.satisfied += w;
                    if ev.commutative {
                        continue;
                    }
                    if ev.survivors.len() >= SURVIVOR_CAP {
                        ev.truncated = true;
                        continue;
                    }
                    let chosen: Vec<(&AdditiveMap, &AdditiveMap)> = if kind.arity() == 1 {
                        vec![first_pair(&pairs, maps[a])]
                    } else {
                        vec![first_pair(&pairs, maps[a]), first_pair(&pairs, maps[b])]
                    };
                    ev.survivors.push(survivor(inst, kind, ideal, &chosen));
                }
            }
        }
    }
    Ok(ev)
}

fn first_pair<'a>(pairs: &[(&'a AdditiveMap, &'a AdditiveMap)], f: &AdditiveMap) -> (&'a AdditiveMap, &'a AdditiveMap) {
    // prefer a nonzero associate
    pairs
        .iter()
        .filter(|(g, _)| *g == f)
        .max_by_key(|(_, d)| !d.is_zero())
        .copied()
        .expect("every qualifying map has an associate")
}

fn survivor(inst: &Instance, kind: ConditionKind, ideal: &IdealHandle, maps: &[(&AdditiveMap, &AdditiveMap)]) -> Survivor {
    let mut document = inst.to_document();
    for (idx, (f, d)) in maps.iter().enumerate() {
        document.add_map(&format!("F{}", idx + 1), f);
        document.add_map(&format!("d{}", idx + 1), d);
    }
    document.add_ideal("I", ideal);
    Survivor {
        instance: inst.label.clone(),
        condition: kind,
        derivations_nonzero: maps.iter().all(|(_, d)| !d.is_zero()),
        document,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_bounds_give_empty_report() {
        let bounds = Params::parse("family=group-algebra;order=2;p=2").unwrap();
        let r = search_problem(Problem::ProductPlusJordan, &bounds, &Budget::default()).unwrap();
        assert_eq!(r.evaluated, 0);
        assert_eq!(r.frontier[0].excluded_by_modulus, 1);
        assert!(r.survivors.is_empty());
    }

    #[test]
    fn commutative_bracket_with_self() {
        let bounds = Params::parse("family=group-algebra;order=1..3;p=3").unwrap();
        let r = search_problem(Problem::BracketWithSelf, &bounds, &Budget::default()).unwrap();
        assert!(r.evaluated > 0);
        assert_eq!(r.hypotheses_satisfied, r.evaluated);
        assert_eq!(r.satisfied_noncommutative, 0);
    }

    #[test]
    fn names() {
        for p in Problem::ALL {
            assert_eq!(p.name().parse::<Problem>().unwrap(), p);
        }
    }
}
