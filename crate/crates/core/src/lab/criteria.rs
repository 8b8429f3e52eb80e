//! Hypothesis and conclusion checks for the commutativity criteria, the
//! nonvanishing statements, and the annihilator lemma.
//!
//! A criterion check never asserts its conclusion. It evaluates the
//! hypotheses and the conclusion separately and reports whether the
//! implication holds, so counterexamples to dropped hypotheses come out as
//! consistent.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::budget::{self, Budget};
use crate::error::{Error, Result};
use crate::grading::CertifiedGrading;
use crate::ideal::{ideal_generate, is_graded_ideal, IdealHandle, Side};
use crate::linalg::Echelon;
use crate::maps::{is_generalized_homogeneous_pair, is_homogeneous_derivation, AdditiveMap};
use crate::primeness::{annihilates, is_gr_prime, AnnihilatingPair};
use crate::ring::{is_commutative, CommutativityViolation, Ring};
use crate::verdict::Verdict;

use super::condition::{check_condition, ConditionKind, ConditionWitness, Sign};

/// The checks exposed on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Criterion {
    /// `F(xy) ± xy ∈ Z(R)` on a nonzero graded ideal forces commutativity.
    SingleMap,
    /// `F1(x)F2(y) ± xy ∈ Z(R)` on a nonzero graded ideal forces commutativity.
    TwoMap,
    /// A generalized homogeneous derivation with nonzero associate is nonzero.
    NonzeroAssociate,
    /// A nonzero homogeneous derivation does not vanish on a nonzero graded ideal.
    Restriction,
    /// One homogeneous side suffices in `aRb = 0`; centralizers of graded
    /// one-sided ideals are the center.
    AnnihilatorLemma,
}

impl Criterion {
    pub const ALL: [Criterion; 5] = [
        Criterion::SingleMap,
        Criterion::TwoMap,
        Criterion::NonzeroAssociate,
        Criterion::Restriction,
        Criterion::AnnihilatorLemma,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Criterion::SingleMap => "single-map",
            Criterion::TwoMap => "two-map",
            Criterion::NonzeroAssociate => "nonzero-associate",
            Criterion::Restriction => "restriction",
            Criterion::AnnihilatorLemma => "annihilator-lemma",
        }
    }

    /// Alternative spellings accepted on input.
    fn aliases(self) -> &'static [&'static str] {
        match self {
            Criterion::SingleMap => &["4.1"],
            Criterion::TwoMap => &["4.2"],
            Criterion::NonzeroAssociate => &["prop-F-nonzero"],
            Criterion::Restriction => &["prop-restriction"],
            Criterion::AnnihilatorLemma => &["lemma-2.1"],
        }
    }
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Criterion {
    type Err = Error;

    fn from_str(s: &str) -> Result<Criterion> {
        Criterion::ALL
            .into_iter()
            .find(|c| c.name() == s || c.aliases().contains(&s))
            .ok_or_else(|| Error::Unknown {
                kind: "criterion",
                name: s.to_string(),
            })
    }
}

/// Per-hypothesis breakdown of a commutativity criterion.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hypotheses {
    pub gr_prime: bool,
    pub ideal_nonzero: bool,
    pub ideal_two_sided: bool,
    pub ideal_graded: bool,
    /// `(F_i, d_i)_h` for each supplied pair.
    pub pairs_generalized_homogeneous: Vec<bool>,
    pub derivations_nonzero: Vec<bool>,
    pub condition: bool,
}

impl Hypotheses {
    pub fn all(&self) -> bool {
        self.gr_prime
            && self.ideal_nonzero
            && self.ideal_two_sided
            && self.ideal_graded
            && self.pairs_generalized_homogeneous.iter().all(|&b| b)
            && self.derivations_nonzero.iter().all(|&b| b)
            && self.condition
    }

    /// Names of the failing hypotheses, in a fixed order.
    pub fn failures(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        let mut note = |ok: bool, what| {
            if !ok {
                out.push(what)
            }
        };
        note(self.gr_prime, "not gr-prime");
        note(self.ideal_nonzero, "ideal is zero");
        note(self.ideal_two_sided, "ideal is one-sided");
        note(self.ideal_graded, "ideal is not graded");
        note(
            self.pairs_generalized_homogeneous.iter().all(|&b| b),
            "map is not generalized homogeneous with the given derivation",
        );
        note(self.derivations_nonzero.iter().all(|&b| b), "derivation is zero");
        note(self.condition, "condition fails on the ideal");
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremVerdict {
    pub condition: ConditionKind,
    pub hypotheses: Hypotheses,
    pub hypotheses_satisfied: bool,
    /// Whether `R` is commutative.
    pub conclusion_holds: bool,
    /// `¬hypotheses ∨ conclusion`.
    pub implication_holds: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gr_prime_witness: Option<AnnihilatingPair>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub condition_witness: Option<ConditionWitness>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub commutativity_witness: Option<CommutativityViolation>,
}

impl TheoremVerdict {
    /// One line, e.g. `hypotheses unsatisfied (not gr-prime); conclusion fails; consistent`.
    pub fn summary(&self) -> String {
        let hyp = if self.hypotheses_satisfied {
            "hypotheses satisfied".to_string()
        } else {
            format!("hypotheses unsatisfied ({})", self.hypotheses.failures().join(", "))
        };
        let concl = if self.conclusion_holds {
            "conclusion holds"
        } else {
            "conclusion fails"
        };
        let cons = if self.implication_holds {
            "consistent"
        } else {
            "INCONSISTENT"
        };
        format!("{hyp}; {concl}; {cons}")
    }
}

/// Ring-level facts shared by every criterion check on one instance.
#[derive(Debug, Clone)]
pub struct RingFacts {
    pub gr_prime: bool,
    pub gr_prime_witness: Option<AnnihilatingPair>,
    pub commutative: Verdict<CommutativityViolation>,
}

impl RingFacts {
    pub fn compute(ring: &Ring, grading: &CertifiedGrading, budget: &Budget) -> Result<RingFacts> {
        let (gr_prime, gr_prime_witness) = is_gr_prime(ring, grading, budget)?;
        Ok(RingFacts {
            gr_prime,
            gr_prime_witness,
            commutative: is_commutative(ring),
        })
    }
}

/// Facts about an ideal that the criteria need.
#[derive(Debug, Clone, Copy)]
pub struct IdealFacts {
    pub nonzero: bool,
    pub two_sided: bool,
    pub graded: bool,
}

impl IdealFacts {
    pub fn compute(ideal: &IdealHandle, grading: &CertifiedGrading) -> IdealFacts {
        IdealFacts {
            nonzero: !ideal.is_zero(),
            two_sided: ideal.side() == Side::TwoSided,
            graded: is_graded_ideal(ideal, grading).is_pass(),
        }
    }
}

pub(crate) fn assemble(
    kind: ConditionKind,
    facts: &RingFacts,
    ideal: IdealFacts,
    pairs: Vec<bool>,
    nonzero: Vec<bool>,
    condition: Verdict<ConditionWitness>,
) -> TheoremVerdict {
    let hypotheses = Hypotheses {
        gr_prime: facts.gr_prime,
        ideal_nonzero: ideal.nonzero,
        ideal_two_sided: ideal.two_sided,
        ideal_graded: ideal.graded,
        pairs_generalized_homogeneous: pairs,
        derivations_nonzero: nonzero,
        condition: condition.is_pass(),
    };
    let hypotheses_satisfied = hypotheses.all();
    let conclusion_holds = facts.commutative.is_pass();
    TheoremVerdict {
        condition: kind,
        hypotheses,
        hypotheses_satisfied,
        conclusion_holds,
        implication_holds: !hypotheses_satisfied || conclusion_holds,
        gr_prime_witness: facts.gr_prime_witness.clone(),
        condition_witness: condition.witness().cloned(),
        commutativity_witness: facts.commutative.witness().copied(),
    }
}

fn check_inputs(ring: &Ring, grading: &CertifiedGrading, ideal: &IdealHandle, maps: &[&AdditiveMap]) -> Result<()> {
    grading.check_ring(ring)?;
    if ideal.ring_id() != ring.id() || maps.iter().any(|f| f.ring_id() != ring.id()) {
        return Err(Error::MixedRings);
    }
    Ok(())
}

/// `R` gr-prime, `I` a nonzero graded ideal, `(F, d)_h` with `d ≠ 0`, and
/// `F(xy) ± xy ∈ Z(R)` on `I` imply `R` commutative.
pub fn verify_single_map_criterion(
    ring: &Ring,
    grading: &CertifiedGrading,
    ideal: &IdealHandle,
    f: &AdditiveMap,
    d: &AdditiveMap,
    sign: Sign,
    budget: &Budget,
) -> Result<TheoremVerdict> {
    check_inputs(ring, grading, ideal, &[f, d])?;
    let facts = RingFacts::compute(ring, grading, budget)?;
    let kind = ConditionKind::FxyXy(sign);
    let condition = check_condition(kind, ring, &[f], ideal)?;
    Ok(assemble(
        kind,
        &facts,
        IdealFacts::compute(ideal, grading),
        vec![is_generalized_homogeneous_pair(f, d, ring, grading)],
        vec![!d.is_zero()],
        condition,
    ))
}

/// The two-map version with `F1(x)F2(y) ± xy ∈ Z(R)`.
#[allow(clippy::too_many_arguments)]
pub fn verify_two_map_criterion(
    ring: &Ring,
    grading: &CertifiedGrading,
    ideal: &IdealHandle,
    (f1, d1): (&AdditiveMap, &AdditiveMap),
    (f2, d2): (&AdditiveMap, &AdditiveMap),
    sign: Sign,
    budget: &Budget,
) -> Result<TheoremVerdict> {
    check_inputs(ring, grading, ideal, &[f1, d1, f2, d2])?;
    let facts = RingFacts::compute(ring, grading, budget)?;
    let kind = ConditionKind::F1xF2yXy(sign);
    let condition = check_condition(kind, ring, &[f1, f2], ideal)?;
    Ok(assemble(
        kind,
        &facts,
        IdealFacts::compute(ideal, grading),
        vec![
            is_generalized_homogeneous_pair(f1, d1, ring, grading),
            is_generalized_homogeneous_pair(f2, d2, ring, grading),
        ],
        vec![!d1.is_zero(), !d2.is_zero()],
        condition,
    ))
}

/// Outcome of a statement checked on one input.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", content = "detail", rename_all = "kebab-case")]
pub enum StatementOutcome {
    Consistent,
    /// The input does not meet the statement's hypotheses; nothing is claimed.
    OutsideHypotheses(String),
    Violation(String),
}

impl StatementOutcome {
    pub fn is_violation(&self) -> bool {
        matches!(self, StatementOutcome::Violation(_))
    }
}

/// On a gr-prime ring, `(F, d)_h` with `d ≠ 0` has `F ≠ 0`.
pub fn check_nonzero_associate(
    ring: &Ring,
    grading: &CertifiedGrading,
    f: &AdditiveMap,
    d: &AdditiveMap,
    budget: &Budget,
) -> Result<StatementOutcome> {
    grading.check_ring(ring)?;
    f.check(ring)?;
    d.check(ring)?;
    if !is_generalized_homogeneous_pair(f, d, ring, grading) {
        return Ok(StatementOutcome::OutsideHypotheses(
            "not a generalized homogeneous pair".into(),
        ));
    }
    let (gr_prime, _) = is_gr_prime(ring, grading, budget)?;
    if !gr_prime {
        return Ok(StatementOutcome::OutsideHypotheses("not gr-prime".into()));
    }
    if !d.is_zero() && f.is_zero() {
        return Ok(StatementOutcome::Violation(format!(
            "F = 0 with associated derivation {d:?}"
        )));
    }
    Ok(StatementOutcome::Consistent)
}

/// On a gr-prime ring, a nonzero homogeneous derivation does not vanish on a
/// nonzero graded one-sided ideal. The zero ideal is refused.
pub fn check_restriction_nonzero(
    ring: &Ring,
    grading: &CertifiedGrading,
    ideal: &IdealHandle,
    d: &AdditiveMap,
    budget: &Budget,
) -> Result<StatementOutcome> {
    check_inputs(ring, grading, ideal, &[d])?;
    if ideal.is_zero() {
        return Err(Error::Precondition("the ideal is zero".into()));
    }
    if !is_graded_ideal(ideal, grading).is_pass() {
        return Ok(StatementOutcome::OutsideHypotheses("ideal is not graded".into()));
    }
    if d.is_zero() || !is_homogeneous_derivation(d, ring, grading).is_pass() {
        return Ok(StatementOutcome::OutsideHypotheses(
            "not a nonzero homogeneous derivation".into(),
        ));
    }
    let (gr_prime, _) = is_gr_prime(ring, grading, budget)?;
    if !gr_prime {
        return Ok(StatementOutcome::OutsideHypotheses("not gr-prime".into()));
    }
    if ideal.basis_raw().iter().all(|b| d.apply_raw(b).iter().all(|&c| c == 0)) {
        return Ok(StatementOutcome::Violation(format!(
            "derivation vanishes on the ideal spanned by {:?}",
            ideal.basis_raw()
        )));
    }
    Ok(StatementOutcome::Consistent)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaReport {
    /// `aRb = 0` with one side homogeneous and both sides nonzero.
    pub one_side_homogeneous: Verdict<AnnihilatingPair>,
    /// Generator of a graded one-sided ideal whose centralizer is not the center.
    pub centralizer_is_center: Verdict<Vec<u32>>,
    pub ideals_checked: usize,
}

impl LemmaReport {
    pub fn holds(&self) -> bool {
        self.one_side_homogeneous.is_pass() && self.centralizer_is_center.is_pass()
    }
}

/// Graded one-sided ideals generated by one nonzero homogeneous element,
/// deduplicated by span, with their generators.
pub fn one_sided_graded_ideals(
    ring: &Ring,
    grading: &CertifiedGrading,
    budget: &Budget,
) -> Result<Vec<(Vec<u32>, IdealHandle)>> {
    let hom = grading.nonzero_homogeneous_raw(ring.modulus(), budget.elements)?;
    let mut seen: Vec<(Side, Vec<Vec<u32>>)> = Vec::new();
    let mut out = Vec::new();
    for side in [Side::Left, Side::Right] {
        for g in &hom {
            let ideal = ideal_generate(ring, &[ring.element(g.clone())?], side)?;
            let key = (side, ideal.basis_raw().to_vec());
            if ideal.is_zero() || seen.contains(&key) || !is_graded_ideal(&ideal, grading).is_pass() {
                continue;
            }
            seen.push(key);
            out.push((g.clone(), ideal));
        }
    }
    Ok(out)
}

/// Both parts of the annihilator lemma, exhaustively. Refuses rings that
/// are not gr-prime.
pub fn check_annihilator_lemma(ring: &Ring, grading: &CertifiedGrading, budget: &Budget) -> Result<LemmaReport> {
    let (gr_prime, _) = is_gr_prime(ring, grading, budget)?;
    if !gr_prime {
        return Err(Error::Precondition("the ring is not gr-prime".into()));
    }
    let all: Vec<Vec<u32>> = ring
        .all_elements_raw(budget.elements)?
        .into_iter()
        .filter(|x| x.iter().any(|&c| c != 0))
        .collect();
    let hom = grading.nonzero_homogeneous_raw(ring.modulus(), budget.elements)?;
    budget::check(
        "element-homogeneous pairs",
        2 * all.len() as u128 * hom.len() as u128,
        budget.pairs,
    )?;
    let one_side = all.par_iter().find_map_first(|a| {
        hom.iter().find_map(|b| {
            if annihilates(ring, a, b) {
                Some(AnnihilatingPair {
                    a: a.clone(),
                    b: b.clone(),
                })
            } else if annihilates(ring, b, a) {
                Some(AnnihilatingPair {
                    a: b.clone(),
                    b: a.clone(),
                })
            } else {
                None
            }
        })
    });
    let center = Echelon::from_vectors(
        ring.modulus(),
        ring.dim(),
        ring.center()?.iter().map(|z| z.coords()),
    );
    let ideals = one_sided_graded_ideals(ring, grading, budget)?;
    let mut bad = None;
    for (g, ideal) in &ideals {
        let cz = ring.centralizer(&ideal.basis(ring)?)?;
        let span = Echelon::from_vectors(ring.modulus(), ring.dim(), cz.iter().map(|z| z.coords()));
        if span != center {
            bad = Some(g.clone());
            break;
        }
    }
    Ok(LemmaReport {
        one_side_homogeneous: one_side.into(),
        centralizer_is_center: bad.into(),
        ideals_checked: ideals.len(),
    })
}
