//! Serde types of the JSON file format.
//!
//! Every payload is stored in a raw form whose scalars are left as JSON
//! values; [`crate::codec`] turns them into library types once the field is
//! known. Index tuples are JSON arrays, matrices are arrays of rows.

use clap::ValueEnum;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::CliError;
use twistkit::FieldSpec;

/// The only format version this build reads and writes.
pub const FORMAT_VERSION: u32 = 1;

/// Top-level envelope of every file.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DescentFile {
    /// Format version, currently always 1.
    pub version: u32,
    /// `"rational"` or `"prime p"`.
    pub field: String,
    /// Payload tag.
    pub kind: Kind,
    /// Kind-specific payload.
    pub payload: Value,
}

/// Payload tags.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    /// Locally free data: complexes and edge isomorphisms.
    Locfree,
    /// A twisting cochain.
    Twist,
    /// Green data, validated as GTT-1 labellings.
    Green,
    /// A simplicial twisting cochain.
    Stc,
    /// A path of twisting cochains.
    Path,
    /// A weak equivalence of twisting cochains.
    Weq,
    /// A principal cocycle.
    Cocycle,
    /// Two edges of a 2-horn, input of `fill-horn`.
    Horn,
    /// A map of complexes, input of `strictify`.
    QuasiIso,
    /// Output of `strictify`.
    Strictification,
    /// A family of dg-nerve simplices indexed by tuples.
    Nerve,
}

impl Kind {
    /// The tag as written in files.
    pub fn name(self) -> &'static str {
        match self {
            Kind::Locfree => "locfree",
            Kind::Twist => "twist",
            Kind::Green => "green",
            Kind::Stc => "stc",
            Kind::Path => "path",
            Kind::Weq => "weq",
            Kind::Cocycle => "cocycle",
            Kind::Horn => "horn",
            Kind::QuasiIso => "quasi-iso",
            Kind::Strictification => "strictification",
            Kind::Nerve => "nerve",
        }
    }
}

/// Parses `"rational"` or `"prime p"`.
pub fn parse_field(s: &str) -> Result<FieldSpec, CliError> {
    let words: Vec<&str> = s.split_whitespace().collect();
    match words.as_slice() {
        ["rational"] => Ok(FieldSpec::Rational),
        ["prime", p] => p
            .parse()
            .map(FieldSpec::Prime)
            .map_err(|_| CliError::Malformed(format!("bad modulus in field {s:?}"))),
        _ => Err(CliError::Malformed(format!(
            "unknown field {s:?}; expected \"rational\" or \"prime p\""
        ))),
    }
}

/// A matrix as a list of rows; each entry is a string such as `"-3/4"` or
/// an integer.
pub type RawMatrix = Vec<Vec<Value>>;

/// A bounded complex: `dims[k]` is the dimension in degree `lo + k` and
/// `d[k]` the differential leaving that degree.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawComplex {
    pub lo: i64,
    pub dims: Vec<usize>,
    pub d: Vec<RawMatrix>,
}

/// One component of a graded map, keyed by its source degree.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawComponent {
    pub degree: i64,
    pub matrix: RawMatrix,
}

/// A graded map whose endpoints are implied by where it is stored; omitted
/// components are zero.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawMap {
    pub degree: i64,
    pub components: Vec<RawComponent>,
}

/// A cover given by its open names, the index sets generating its nerve and
/// optional level functions restricting valid tuples.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawCover {
    pub opens: Vec<String>,
    pub sets: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub levels: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TupleMap {
    pub tuple: Vec<usize>,
    pub map: RawMap,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TupleMatrix {
    pub tuple: Vec<usize>,
    pub matrix: RawMatrix,
}

/// Complexes on the opens and maps on tuples of opens.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawTwist {
    pub complexes: Vec<RawComplex>,
    pub maps: Vec<TupleMap>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TwistPayload {
    pub cover: RawCover,
    pub complexes: Vec<RawComplex>,
    pub maps: Vec<TupleMap>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LocFreePayload {
    pub cover: RawCover,
    pub complexes: Vec<RawComplex>,
    pub edges: Vec<TupleMap>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CocyclePayload {
    pub cover: RawCover,
    pub rank: usize,
    pub edges: Vec<TupleMatrix>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FaceMap {
    pub face: Vec<usize>,
    pub map: RawMap,
}

/// A dg-nerve simplex: one complex per vertex and one map per face with at
/// least two vertices, from its last vertex to its first.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawSimplex {
    pub objects: Vec<RawComplex>,
    pub maps: Vec<FaceMap>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawVertex {
    pub face: Vec<usize>,
    pub simplex: RawSimplex,
}

/// An elementary complement with its trivialisation and inverse.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawComplement {
    pub complex: RawComplex,
    /// `(span dimension, degree)` pairs.
    pub decl: Vec<(usize, i64)>,
    pub theta: RawMap,
    pub theta_inv: RawMap,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawCell {
    pub tau: Vec<usize>,
    pub sigma: Vec<usize>,
    pub complements: Vec<RawComplement>,
}

/// A GTT-labelling of the pair subdivision of `Δ[dim]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawGtt {
    pub dim: usize,
    pub vertices: Vec<RawVertex>,
    pub cells: Vec<RawCell>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TupleGtt {
    pub tuple: Vec<usize>,
    pub labelling: RawGtt,
}

/// Payload of the `stc` and `green` kinds.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StcPayload {
    pub cover: RawCover,
    pub max_len: usize,
    pub labellings: Vec<TupleGtt>,
}

/// A map on a tuple of the doubled cover, each entry `[open, level]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PrismMap {
    pub tuple: Vec<(usize, usize)>,
    pub map: RawMap,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PathPayload {
    pub cover: RawCover,
    pub bottom: Vec<RawComplex>,
    pub top: Vec<RawComplex>,
    pub maps: Vec<PrismMap>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeqPayload {
    pub cover: RawCover,
    pub target: RawTwist,
    pub source: RawTwist,
    pub components: Vec<TupleMap>,
    /// The path the equivalence was extracted from; informational only.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub origin: Option<PathPayload>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HornPayload {
    pub edges: [RawGtt; 2],
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuasiIsoPayload {
    pub source: RawComplex,
    pub target: RawComplex,
    pub map: RawMap,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawElementary {
    pub complex: RawComplex,
    pub decl: Vec<(usize, i64)>,
}

/// Output of `strictify`: the padded map `Ã -> B̃`, its inverse and the
/// result of the built-in self-check.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StrictificationPayload {
    pub input: QuasiIsoPayload,
    pub e_a: RawElementary,
    pub e_b: RawElementary,
    pub f_tilde: RawMap,
    pub f_tilde_inv: RawMap,
    pub check: ReportJson,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TupleSimplex {
    pub tuple: Vec<usize>,
    pub simplex: RawSimplex,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NervePayload {
    pub cover: RawCover,
    pub simplices: Vec<TupleSimplex>,
}

/// One failed check, as printed by every command that reports.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FindingJson {
    pub severity: String,
    pub kind: String,
    pub tuple: Option<Vec<usize>>,
    pub cell: Option<String>,
    pub bidegree: Option<(i64, i64)>,
    pub residual_nnz: usize,
    pub detail: String,
}

/// A validation report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportJson {
    pub valid: bool,
    pub errors: usize,
    pub warnings: usize,
    pub findings: Vec<FindingJson>,
}

impl ReportJson {
    /// Converts a library report.
    pub fn from_report(r: &twistkit::report::Report) -> Self {
        let findings: Vec<FindingJson> = r
            .findings()
            .iter()
            .map(|f| FindingJson {
                severity: match f.severity {
                    twistkit::report::Severity::Error => "error".into(),
                    twistkit::report::Severity::Warning => "warning".into(),
                },
                kind: f.kind.clone(),
                tuple: f.tuple.clone(),
                cell: f.cell.clone(),
                bidegree: f.bidegree,
                residual_nnz: f.residual_nnz,
                detail: f.detail.clone(),
            })
            .collect();
        ReportJson {
            valid: r.is_valid(),
            errors: r.error_count(),
            warnings: r.warnings().count(),
            findings,
        }
    }

    /// A report holding a single error.
    pub fn refusal(kind: &str, detail: impl Into<String>) -> Self {
        ReportJson::from_report(&{
            let mut r = twistkit::report::Report::new();
            r.push(twistkit::report::Finding::error(kind, detail));
            r
        })
    }
}
