//! A parsed document turned into live objects, and the self-check of its
//! declared expectations.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::grading::{validate_grading, CertifiedGrading, Grading, GradingViolation};
use crate::ideal::{ideal_generate, is_graded_ideal, IdealHandle};
use crate::lab::check_condition;
use crate::maps::{classify_map, is_derivation, is_generalized_homogeneous_pair, satisfies_generalized_identity, AdditiveMap};
use crate::primeness::primeness_report;
use crate::ring::{is_commutative, validate_ring, AssociativityViolation, Ring};
use crate::verdict::Verdict;

use super::document::{build_grading, build_ring, parse_spec, RingSpecDocument};

#[derive(Debug, Clone)]
pub struct Fixture {
    pub document: RingSpecDocument,
    pub ring: Ring,
    pub grading: Grading,
    pub maps: BTreeMap<String, AdditiveMap>,
    pub ideals: BTreeMap<String, IdealHandle>,
}

impl Fixture {
    pub fn from_document(document: RingSpecDocument) -> Result<Fixture> {
        let ring = build_ring(&document)?;
        let grading = build_grading(&document)?;
        let maps = document
            .maps
            .iter()
            .map(|(name, imgs)| Ok((name.clone(), AdditiveMap::from_images(&ring, imgs)?)))
            .collect::<Result<_>>()?;
        let ideals = document
            .ideals
            .iter()
            .map(|(name, doc)| {
                let gens = doc
                    .generators
                    .iter()
                    .map(|g| ring.element(g.clone()))
                    .collect::<Result<Vec<_>>>()?;
                Ok((name.clone(), ideal_generate(&ring, &gens, doc.side)?))
            })
            .collect::<Result<_>>()?;
        Ok(Fixture {
            document,
            ring,
            grading,
            maps,
            ideals,
        })
    }

    pub fn parse(text: &str) -> Result<Fixture> {
        Fixture::from_document(parse_spec(text)?)
    }

    pub fn ring_verdict(&self) -> Verdict<AssociativityViolation> {
        validate_ring(&self.ring)
    }

    pub fn grading_verdict(&self) -> Verdict<GradingViolation> {
        validate_grading(&self.ring, &self.grading)
    }

    /// The grading, once the ring and grading both validate.
    pub fn certified(&self) -> Result<CertifiedGrading> {
        if let Verdict::Fail(w) = self.ring_verdict() {
            return Err(Error::InvalidGrading(format!(
                "ring is not associative at basis triple ({}, {}, {})",
                w.i, w.j, w.k
            )));
        }
        self.grading.clone().certify(&self.ring)
    }

    pub fn map(&self, name: &str) -> Result<&AdditiveMap> {
        self.maps.get(name).ok_or_else(|| Error::Unknown {
            kind: "map",
            name: name.to_string(),
        })
    }

    pub fn ideal(&self, name: &str) -> Result<&IdealHandle> {
        self.ideals.get(name).ok_or_else(|| Error::Unknown {
            kind: "ideal",
            name: name.to_string(),
        })
    }
}

/// One expectation compared against recomputation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub found: String,
    pub pass: bool,
}

fn check<T: PartialEq + std::fmt::Debug>(out: &mut Vec<Check>, name: String, expected: T, found: T) {
    out.push(Check {
        pass: expected == found,
        expected: format!("{expected:?}"),
        found: format!("{found:?}"),
        name,
    });
}

/// Recomputes every declared expectation. Expectations that need a valid
/// grading fail with `found = "grading invalid"` when it is not.
pub fn run_expectations(fx: &Fixture, budget: &Budget) -> Result<Vec<Check>> {
    let e = &fx.document.expectations;
    let mut out = Vec::new();
    let ring_ok = fx.ring_verdict().is_pass();
    if let Some(v) = e.ring_valid {
        check(&mut out, "ring_valid".into(), v, ring_ok);
    }
    let grading = fx.grading_verdict();
    if let Some(v) = e.grading_valid {
        check(&mut out, "grading_valid".into(), v, grading.is_pass());
    }
    if let Some(w) = e.grading_witness {
        let found = grading.witness().map(|g| [g.left, g.right]);
        check(&mut out, "grading_witness".into(), Some(w), found);
    }
    let certified = match fx.certified() {
        Ok(c) => c,
        Err(_) => {
            for name in dependent_names(fx) {
                out.push(Check {
                    name,
                    expected: "evaluable".into(),
                    found: "grading invalid".into(),
                    pass: false,
                });
            }
            return Ok(out);
        }
    };
    let ring = &fx.ring;
    if let Some(v) = e.commutative {
        check(&mut out, "commutative".into(), v, is_commutative(ring).is_pass());
    }
    if e.gr_prime.is_some() || e.prime.is_some() {
        let report = primeness_report(ring, &certified, budget)?;
        if let Some(v) = e.gr_prime {
            check(&mut out, "gr_prime".into(), v, report.gr_prime);
        }
        if let Some(v) = e.prime {
            check(&mut out, "prime".into(), Some(v), report.prime);
        }
    }
    for (name, x) in &e.ideals {
        let ideal = fx.ideal(name)?;
        if let Some(v) = x.nonzero {
            check(&mut out, format!("ideals.{name}.nonzero"), v, !ideal.is_zero());
        }
        if let Some(v) = x.graded {
            check(
                &mut out,
                format!("ideals.{name}.graded"),
                v,
                is_graded_ideal(ideal, &certified).is_pass(),
            );
        }
        if let Some(v) = x.rank {
            check(&mut out, format!("ideals.{name}.rank"), v, ideal.rank());
        }
    }
    for (name, x) in &e.maps {
        let c = classify_map(fx.map(name)?, ring, &certified, budget)?;
        let mut field = |what: &str, want: Option<bool>, got: bool| {
            if let Some(v) = want {
                check(&mut out, format!("maps.{name}.{what}"), v, got);
            }
        };
        field("derivation", x.derivation, c.is_derivation());
        field("homogeneous_map", x.homogeneous_map, c.is_homogeneous_map());
        field("homogeneous_derivation", x.homogeneous_derivation, c.homogeneous_derivation);
        field("generalized_derivation", x.generalized_derivation, c.is_generalized_derivation());
        field("generalized_homogeneous", x.generalized_homogeneous, c.is_generalized_homogeneous());
        if let Some(v) = x.associated_dimension {
            check(
                &mut out,
                format!("maps.{name}.associated_dimension"),
                Some(v),
                c.associated_dimension,
            );
        }
    }
    for p in &e.pairs {
        let (f, d) = (fx.map(&p.map)?, fx.map(&p.derivation)?);
        let label = format!("pairs.({}, {})", p.map, p.derivation);
        check(
            &mut out,
            format!("{label}.holds"),
            p.holds,
            is_generalized_homogeneous_pair(f, d, ring, &certified),
        );
        if let Some(v) = p.identity {
            let found = is_derivation(d, ring).is_pass() && satisfies_generalized_identity(f, d, ring).is_pass();
            check(&mut out, format!("{label}.identity"), v, found);
        }
    }
    for (idx, img) in e.images.iter().enumerate() {
        let f = fx.map(&img.map)?;
        let found = f.apply_raw(&img.input);
        let label = format!("images[{idx}] {}({:?})", img.map, img.input);
        if let Some(v) = img.homogeneous {
            let hom = certified.is_homogeneous_raw(&found);
            check(&mut out, format!("{label}.homogeneous"), v, hom);
        }
        check(&mut out, label, img.output.clone(), found);
    }
    for (idx, c) in e.conditions.iter().enumerate() {
        let maps = c.maps.iter().map(|n| fx.map(n)).collect::<Result<Vec<_>>>()?;
        let verdict = check_condition(c.condition, ring, &maps, fx.ideal(&c.ideal)?)?;
        check(
            &mut out,
            format!("conditions[{idx}] {} on {}", c.condition, c.ideal),
            c.holds,
            verdict.is_pass(),
        );
    }
    Ok(out)
}

fn dependent_names(fx: &Fixture) -> Vec<String> {
    let e = &fx.document.expectations;
    let mut names = Vec::new();
    for (flag, name) in [
        (e.commutative.is_some(), "commutative"),
        (e.gr_prime.is_some(), "gr_prime"),
        (e.prime.is_some(), "prime"),
    ] {
        if flag {
            names.push(name.to_string());
        }
    }
    names.extend(e.ideals.keys().map(|k| format!("ideals.{k}")));
    names.extend(e.maps.keys().map(|k| format!("maps.{k}")));
    names.extend(e.pairs.iter().map(|p| format!("pairs.({}, {})", p.map, p.derivation)));
    names.extend((0..e.images.len()).map(|i| format!("images[{i}]")));
    names.extend((0..e.conditions.len()).map(|i| format!("conditions[{i}]")));
    names
}
