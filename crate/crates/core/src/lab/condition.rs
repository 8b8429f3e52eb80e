//! Central-valued identities over `I × I`.
//!
//! Every identity except `[F1(x), x]` is biadditive in `(x, y)` and `Z(R)` is
//! an additive subgroup, so it holds on `I × I` iff it holds on pairs of basis
//! vectors of `I`. For `q(x) = [F1(x), x]` the polarization
//! `q(u + v) - q(u) - q(v) = [F1(u), v] + [F1(v), u]` reduces the quadratic
//! condition to `q(b_s)` and the symmetrized cross terms.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::budget::{self, Budget};
use crate::error::{Error, Result};
use crate::ideal::IdealHandle;
use crate::maps::AdditiveMap;
use crate::modular::{self, span_elements};
use crate::ring::Ring;
use crate::verdict::Verdict;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    fn word(self) -> &'static str {
        match self {
            Sign::Plus => "plus",
            Sign::Minus => "minus",
        }
    }
}

impl FromStr for Sign {
    type Err = Error;

    fn from_str(s: &str) -> Result<Sign> {
        match s {
            "plus" | "+" => Ok(Sign::Plus),
            "minus" | "-" => Ok(Sign::Minus),
            _ => Err(Error::Unknown {
                kind: "sign",
                name: s.to_string(),
            }),
        }
    }
}

/// One displayed identity `E(x, y) ∈ Z(R)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ConditionKind {
    /// `F(xy) ± xy`
    FxyXy(Sign),
    /// `F1(x) F2(y) ± xy`
    F1xF2yXy(Sign),
    /// `[F1(x), x]`
    BracketF1xX,
    /// `[F1(x), F2(y)] ± xy`
    BracketF1xF2yXy(Sign),
    /// `F1(x) F2(y) ± [x, y]`
    F1xF2yBracket(Sign),
    /// `F1(x) F2(y) ± x∘y`
    F1xF2yJordan(Sign),
}

impl ConditionKind {
    pub const ALL_TAGS: [&'static str; 11] = [
        "F_xy_minus_xy_central",
        "F_xy_plus_xy_central",
        "F1x_F2y_minus_xy_central",
        "F1x_F2y_plus_xy_central",
        "bracket_F1x_x_central",
        "bracket_F1x_F2y_minus_xy_central",
        "bracket_F1x_F2y_plus_xy_central",
        "F1x_F2y_minus_bracket_central",
        "F1x_F2y_plus_bracket_central",
        "F1x_F2y_minus_jordan_central",
        "F1x_F2y_plus_jordan_central",
    ];

    /// Number of maps the identity mentions.
    pub fn arity(self) -> usize {
        match self {
            ConditionKind::FxyXy(_) | ConditionKind::BracketF1xX => 1,
            _ => 2,
        }
    }

    pub fn sign(self) -> Option<Sign> {
        match self {
            ConditionKind::FxyXy(s)
            | ConditionKind::F1xF2yXy(s)
            | ConditionKind::BracketF1xF2yXy(s)
            | ConditionKind::F1xF2yBracket(s)
            | ConditionKind::F1xF2yJordan(s) => Some(s),
            ConditionKind::BracketF1xX => None,
        }
    }

    pub fn with_sign(self, s: Sign) -> ConditionKind {
        match self {
            ConditionKind::FxyXy(_) => ConditionKind::FxyXy(s),
            ConditionKind::F1xF2yXy(_) => ConditionKind::F1xF2yXy(s),
            ConditionKind::BracketF1xX => ConditionKind::BracketF1xX,
            ConditionKind::BracketF1xF2yXy(_) => ConditionKind::BracketF1xF2yXy(s),
            ConditionKind::F1xF2yBracket(_) => ConditionKind::F1xF2yBracket(s),
            ConditionKind::F1xF2yJordan(_) => ConditionKind::F1xF2yJordan(s),
        }
    }

    fn is_biadditive(self) -> bool {
        !matches!(self, ConditionKind::BracketF1xX)
    }

    /// The element `E(x, y)` whose centrality is asserted.
    pub fn evaluate(self, ring: &Ring, maps: &[&AdditiveMap], x: &[u32], y: &[u32]) -> Vec<u32> {
        let m = ring.modulus();
        let signed = |s: Sign, a: Vec<u32>, b: Vec<u32>| match s {
            Sign::Plus => modular::vadd(&a, &b, m),
            Sign::Minus => modular::vsub(&a, &b, m),
        };
        match self {
            ConditionKind::FxyXy(s) => {
                let xy = ring.mul_raw(x, y);
                signed(s, maps[0].apply_raw(&xy), xy)
            }
            ConditionKind::F1xF2yXy(s) => {
                let lhs = ring.mul_raw(&maps[0].apply_raw(x), &maps[1].apply_raw(y));
                signed(s, lhs, ring.mul_raw(x, y))
            }
            ConditionKind::BracketF1xX => ring.commutator_raw(&maps[0].apply_raw(x), x),
            ConditionKind::BracketF1xF2yXy(s) => {
                let lhs = ring.commutator_raw(&maps[0].apply_raw(x), &maps[1].apply_raw(y));
                signed(s, lhs, ring.mul_raw(x, y))
            }
            ConditionKind::F1xF2yBracket(s) => {
                let lhs = ring.mul_raw(&maps[0].apply_raw(x), &maps[1].apply_raw(y));
                signed(s, lhs, ring.commutator_raw(x, y))
            }
            ConditionKind::F1xF2yJordan(s) => {
                let lhs = ring.mul_raw(&maps[0].apply_raw(x), &maps[1].apply_raw(y));
                let jordan = modular::vadd(&ring.mul_raw(x, y), &ring.mul_raw(y, x), m);
                signed(s, lhs, jordan)
            }
        }
    }
}

impl fmt::Display for ConditionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = self.sign().map(Sign::word).unwrap_or("");
        match self {
            ConditionKind::FxyXy(_) => write!(f, "F_xy_{sign}_xy_central"),
            ConditionKind::F1xF2yXy(_) => write!(f, "F1x_F2y_{sign}_xy_central"),
            ConditionKind::BracketF1xX => write!(f, "bracket_F1x_x_central"),
            ConditionKind::BracketF1xF2yXy(_) => write!(f, "bracket_F1x_F2y_{sign}_xy_central"),
            ConditionKind::F1xF2yBracket(_) => write!(f, "F1x_F2y_{sign}_bracket_central"),
            ConditionKind::F1xF2yJordan(_) => write!(f, "F1x_F2y_{sign}_jordan_central"),
        }
    }
}

impl FromStr for ConditionKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<ConditionKind> {
        use ConditionKind::*;
        let unknown = |name: String| Error::Unknown { kind: "condition", name };
        if s.contains("_pm_") {
            return Err(unknown(format!("{s} (spell the sign as plus or minus)")));
        }
        let sign = if s.contains("_plus_") { Sign::Plus } else { Sign::Minus };
        Ok(match s.replace("_plus_", "_pm_").replace("_minus_", "_pm_").as_str() {
            "F_xy_pm_xy_central" => FxyXy(sign),
            "F1x_F2y_pm_xy_central" => F1xF2yXy(sign),
            "bracket_F1x_x_central" => BracketF1xX,
            "bracket_F1x_F2y_pm_xy_central" => BracketF1xF2yXy(sign),
            "F1x_F2y_pm_bracket_central" => F1xF2yBracket(sign),
            "F1x_F2y_pm_jordan_central" => F1xF2yJordan(sign),
            _ => return Err(unknown(s.to_string())),
        })
    }
}

impl Serialize for ConditionKind {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ConditionKind {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A pair `(x, y)` from the ideal where `E(x, y)` is not central.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionWitness {
    pub x: Vec<u32>,
    pub y: Vec<u32>,
    pub value: Vec<u32>,
}

fn check_arity(kind: ConditionKind, ring: &Ring, maps: &[&AdditiveMap], ideal: &IdealHandle) -> Result<()> {
    if maps.len() != kind.arity() {
        return Err(Error::Precondition(format!(
            "{kind} takes {} maps, got {}",
            kind.arity(),
            maps.len()
        )));
    }
    if ideal.ring_id() != ring.id() || maps.iter().any(|f| f.ring_id() != ring.id()) {
        return Err(Error::MixedRings);
    }
    Ok(())
}

/// Whether `E(x, y) ∈ Z(R)` for all `x, y ∈ I`, decided on a basis of `I`.
///
/// A witness is a basis pair (for the quadratic identity, possibly a sum of
/// two basis vectors as `x = y`).
pub fn check_condition(
    kind: ConditionKind,
    ring: &Ring,
    maps: &[&AdditiveMap],
    ideal: &IdealHandle,
) -> Result<Verdict<ConditionWitness>> {
    check_arity(kind, ring, maps, ideal)?;
    let basis = ideal.basis_raw();
    let fail = |x: &[u32], y: &[u32], value: Vec<u32>| {
        Verdict::Fail(ConditionWitness {
            x: x.to_vec(),
            y: y.to_vec(),
            value,
        })
    };
    if kind.is_biadditive() {
        for u in basis {
            for v in basis {
                let e = kind.evaluate(ring, maps, u, v);
                if !ring.is_central_raw(&e) {
                    return Ok(fail(u, v, e));
                }
            }
        }
        return Ok(Verdict::Pass);
    }
    for u in basis {
        let e = kind.evaluate(ring, maps, u, u);
        if !ring.is_central_raw(&e) {
            return Ok(fail(u, u, e));
        }
    }
    for (s, u) in basis.iter().enumerate() {
        for v in &basis[s + 1..] {
            let cross = modular::vadd(
                &ring.commutator_raw(&maps[0].apply_raw(u), v),
                &ring.commutator_raw(&maps[0].apply_raw(v), u),
                ring.modulus(),
            );
            if !ring.is_central_raw(&cross) {
                let w = modular::vadd(u, v, ring.modulus());
                let e = kind.evaluate(ring, maps, &w, &w);
                return Ok(fail(&w, &w, e));
            }
        }
    }
    Ok(Verdict::Pass)
}

/// The same question by visiting every pair of `I × I`.
pub fn check_condition_exhaustive(
    kind: ConditionKind,
    ring: &Ring,
    maps: &[&AdditiveMap],
    ideal: &IdealHandle,
    budget: &Budget,
) -> Result<Verdict<ConditionWitness>> {
    check_arity(kind, ring, maps, ideal)?;
    let count = budget::pow_count(ring.modulus(), ideal.rank());
    budget::check("ideal pairs", count.saturating_mul(count), budget.pairs)?;
    let elems = span_elements(ideal.basis_raw(), ring.dim(), ring.modulus());
    for x in &elems {
        for y in &elems {
            let e = kind.evaluate(ring, maps, x, y);
            if !ring.is_central_raw(&e) {
                return Ok(Verdict::Fail(ConditionWitness {
                    x: x.clone(),
                    y: y.clone(),
                    value: e,
                }));
            }
        }
    }
    Ok(Verdict::Pass)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tags_round_trip() {
        for tag in ConditionKind::ALL_TAGS {
            let kind: ConditionKind = tag.parse().unwrap();
            assert_eq!(kind.to_string(), tag);
        }
        assert!("F_xy_pm_xy_central".parse::<ConditionKind>().is_err());
        assert!("nonsense".parse::<ConditionKind>().is_err());
    }

    #[test]
    fn sign_flip() {
        let k = ConditionKind::F1xF2yJordan(Sign::Plus);
        assert_eq!(k.with_sign(Sign::Plus.flip()), ConditionKind::F1xF2yJordan(Sign::Minus));
        assert_eq!(ConditionKind::BracketF1xX.sign(), None);
    }
}
