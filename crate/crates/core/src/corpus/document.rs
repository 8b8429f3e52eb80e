//! The `.ring.json` document: a strict JSON profile with integers only.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grading::{DegreeGroup, Grading};
use crate::ideal::{IdealHandle, Side};
use crate::lab::ConditionKind;
use crate::maps::AdditiveMap;
use crate::ring::{make_ring, Ring, RingSpec};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingSpecDocument {
    pub format_version: u32,
    pub modulus: u32,
    pub basis_names: Vec<String>,
    /// Sparse `[i, j, k, c]`: `e_i e_j` has coefficient `c` on `e_k`.
    pub structure_constants: Vec<[u32; 4]>,
    pub grading: GradingDocument,
    /// Basis images of each named map.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub maps: BTreeMap<String, Vec<Vec<u32>>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub ideals: BTreeMap<String, IdealDocument>,
    #[serde(default, skip_serializing_if = "Expectations::is_empty")]
    pub expectations: Expectations,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub provenance: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GradingDocument {
    pub free_rank: usize,
    #[serde(default)]
    pub torsion: Vec<u32>,
    pub degrees: Vec<Vec<i64>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IdealDocument {
    pub side: Side,
    pub generators: Vec<Vec<u32>>,
}

/// Verdicts a fixture asserts about itself. Every field is optional.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expectations {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ring_valid: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grading_valid: Option<bool>,
    /// Basis pair `[i, j]` at which the grading fails.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grading_witness: Option<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub commutative: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gr_prime: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prime: Option<bool>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub ideals: BTreeMap<String, IdealExpectation>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub maps: BTreeMap<String, MapExpectation>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub pairs: Vec<PairExpectation>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub images: Vec<ImageExpectation>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub conditions: Vec<ConditionExpectation>,
}

impl Expectations {
    pub fn is_empty(&self) -> bool {
        *self == Expectations::default()
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IdealExpectation {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nonzero: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub graded: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapExpectation {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub derivation: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub homogeneous_map: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub homogeneous_derivation: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generalized_derivation: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generalized_homogeneous: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub associated_dimension: Option<usize>,
}

/// `(F, d)_h` for two named maps.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairExpectation {
    pub map: String,
    pub derivation: String,
    pub holds: bool,
    /// Whether `d` is a derivation with `F(xy) = F(x)y + x d(y)`, homogeneous or not.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub identity: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ImageExpectation {
    pub map: String,
    pub input: Vec<u32>,
    pub output: Vec<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub homogeneous: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConditionExpectation {
    pub condition: ConditionKind,
    pub maps: Vec<String>,
    pub ideal: String,
    pub holds: bool,
}

/// Parses and checks a document. Syntax errors carry line and column,
/// everything else a field path.
pub fn parse_spec(text: &str) -> Result<RingSpecDocument> {
    let doc: RingSpecDocument = from_json(text)?;
    check_document(&doc)?;
    Ok(doc)
}

/// Strict JSON decoding with line/column for syntax errors and a field path
/// for everything else.
pub(crate) fn from_json<T: serde::de::DeserializeOwned>(text: &str) -> Result<T> {
    let mut de = serde_json::Deserializer::from_str(text);
    let value: T = serde_path_to_error::deserialize(&mut de).map_err(|e| {
        let inner = e.inner();
        if inner.is_syntax() || inner.is_eof() {
            Error::Syntax {
                line: inner.line(),
                column: inner.column(),
                message: inner.to_string(),
            }
        } else {
            let path = e.path().to_string();
            Error::malformed(if path == "." { "document".into() } else { path }, inner.to_string())
        }
    })?;
    de.end().map_err(|e| Error::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    Ok(value)
}

/// Canonical pretty JSON with a trailing newline.
pub fn emit_spec(doc: &RingSpecDocument) -> String {
    let mut out = serde_json::to_string_pretty(doc).expect("documents always serialize");
    out.push('\n');
    out
}

fn check_document(doc: &RingSpecDocument) -> Result<()> {
    if doc.format_version != FORMAT_VERSION {
        return Err(Error::malformed(
            "format_version",
            format!("unsupported version {}, expected {FORMAT_VERSION}", doc.format_version),
        ));
    }
    let n = doc.basis_names.len();
    let m = doc.modulus;
    for (idx, w) in doc.structure_constants.windows(2).enumerate() {
        let (a, b) = (&w[0][..3], &w[1][..3]);
        if a == b {
            return Err(Error::malformed(
                format!("structure_constants[{}]", idx + 1),
                format!("duplicate triple ({},{},{})", b[0], b[1], b[2]),
            ));
        }
        if a > b {
            return Err(Error::malformed(
                format!("structure_constants[{}]", idx + 1),
                "triples must be sorted lexicographically",
            ));
        }
    }
    for (idx, t) in doc.structure_constants.iter().enumerate() {
        if t[3] == 0 {
            return Err(Error::malformed(
                format!("structure_constants[{idx}]"),
                "zero coefficients are omitted in canonical form",
            ));
        }
    }
    // Range checks on the triples are make_ring's.
    build_ring(doc)?;
    let g = &doc.grading;
    if g.degrees.len() != n {
        return Err(Error::malformed(
            "grading.degrees",
            format!("expected {n} degrees, got {}", g.degrees.len()),
        ));
    }
    build_grading(doc)?;
    for (name, images) in &doc.maps {
        check_matrix(&format!("maps.{name}"), images, n, n, m)?;
    }
    for (name, ideal) in &doc.ideals {
        check_matrix(
            &format!("ideals.{name}.generators"),
            &ideal.generators,
            ideal.generators.len(),
            n,
            m,
        )?;
    }
    check_expectations(doc)
}

fn check_matrix(path: &str, rows: &[Vec<u32>], count: usize, width: usize, m: u32) -> Result<()> {
    if rows.len() != count {
        return Err(Error::malformed(path, format!("expected {count} vectors, got {}", rows.len())));
    }
    for (r, row) in rows.iter().enumerate() {
        if row.len() != width {
            return Err(Error::malformed(
                format!("{path}[{r}]"),
                format!("expected {width} coordinates, got {}", row.len()),
            ));
        }
        if let Some(c) = row.iter().position(|&x| x >= m) {
            return Err(Error::malformed(
                format!("{path}[{r}][{c}]"),
                format!("coefficient {} is not below modulus {m}", row[c]),
            ));
        }
    }
    Ok(())
}

fn check_expectations(doc: &RingSpecDocument) -> Result<()> {
    let e = &doc.expectations;
    let n = doc.basis_names.len();
    let map = |path: String, name: &str| -> Result<()> {
        if doc.maps.contains_key(name) {
            Ok(())
        } else {
            Err(Error::malformed(path, format!("unknown map `{name}`")))
        }
    };
    if let Some([i, j]) = e.grading_witness {
        if i >= n || j >= n {
            return Err(Error::malformed("expectations.grading_witness", "basis index out of range"));
        }
    }
    for name in e.ideals.keys() {
        if !doc.ideals.contains_key(name) {
            return Err(Error::malformed(format!("expectations.ideals.{name}"), "unknown ideal"));
        }
    }
    for name in e.maps.keys() {
        map(format!("expectations.maps.{name}"), name)?;
    }
    for (idx, p) in e.pairs.iter().enumerate() {
        map(format!("expectations.pairs[{idx}].map"), &p.map)?;
        map(format!("expectations.pairs[{idx}].derivation"), &p.derivation)?;
    }
    for (idx, img) in e.images.iter().enumerate() {
        map(format!("expectations.images[{idx}].map"), &img.map)?;
        check_matrix(
            &format!("expectations.images[{idx}]"),
            &[img.input.clone(), img.output.clone()],
            2,
            n,
            doc.modulus,
        )?;
    }
    for (idx, c) in e.conditions.iter().enumerate() {
        if c.maps.len() != c.condition.arity() {
            return Err(Error::malformed(
                format!("expectations.conditions[{idx}].maps"),
                format!("{} takes {} maps", c.condition, c.condition.arity()),
            ));
        }
        for (k, name) in c.maps.iter().enumerate() {
            map(format!("expectations.conditions[{idx}].maps[{k}]"), name)?;
        }
        if !doc.ideals.contains_key(&c.ideal) {
            return Err(Error::malformed(
                format!("expectations.conditions[{idx}].ideal"),
                format!("unknown ideal `{}`", c.ideal),
            ));
        }
    }
    Ok(())
}

pub(crate) fn build_ring(doc: &RingSpecDocument) -> Result<Ring> {
    make_ring(&RingSpec {
        modulus: doc.modulus,
        basis_names: doc.basis_names.clone(),
        structure_constants: doc
            .structure_constants
            .iter()
            .map(|t| (t[0] as usize, t[1] as usize, t[2] as usize, t[3]))
            .collect(),
    })
}

pub(crate) fn build_grading(doc: &RingSpecDocument) -> Result<Grading> {
    let g = &doc.grading;
    let group = DegreeGroup {
        free_rank: g.free_rank,
        torsion: g.torsion.clone(),
    };
    Grading::new(group, g.degrees.clone())
}

/// Document for a ring and grading, with no maps, ideals or expectations.
pub fn document_from(ring: &Ring, grading: &Grading) -> RingSpecDocument {
    let spec = ring.to_spec();
    let mut constants: Vec<[u32; 4]> = spec
        .structure_constants
        .iter()
        .map(|&(i, j, k, c)| [i as u32, j as u32, k as u32, c])
        .collect();
    constants.sort();
    RingSpecDocument {
        format_version: FORMAT_VERSION,
        modulus: ring.modulus(),
        basis_names: ring.basis_names().to_vec(),
        structure_constants: constants,
        grading: GradingDocument {
            free_rank: grading.group().free_rank,
            torsion: grading.group().torsion.clone(),
            degrees: grading.degrees().iter().map(|d| d.0.clone()).collect(),
        },
        maps: BTreeMap::new(),
        ideals: BTreeMap::new(),
        expectations: Expectations::default(),
        provenance: String::new(),
    }
}

impl RingSpecDocument {
    pub fn add_map(&mut self, name: &str, map: &AdditiveMap) {
        self.maps.insert(name.to_string(), map.images());
    }

    /// Stores the ideal by its module basis.
    pub fn add_ideal(&mut self, name: &str, ideal: &IdealHandle) {
        self.ideals.insert(
            name.to_string(),
            IdealDocument {
                side: ideal.side(),
                generators: ideal.basis_raw().to_vec(),
            },
        );
    }
}
