//! JSON documents: forms, structure constants, loops, and the input files
//! read by the command-line tool.
//!
//! Exact values are written as `{"num": .., "den": ..}` integer pairs, real
//! values as decimal strings under `"value"`. Every document carries
//! `"format": 1`.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::conformal::{LoopSample, PointwiseConformalData};
use crate::error::{Error, Result};
use crate::forms::Form;
use crate::lie::StructureConstants;
use crate::scalar::{Scalar, ScalarRepr};

pub const FORMAT_VERSION: u64 = 1;

/// An integer written either as a JSON number or, when it does not fit, as a
/// string of digits.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum IntDoc {
    Small(i64),
    Big(String),
}

impl IntDoc {
    fn to_bigint(&self) -> Result<BigInt> {
        match self {
            IntDoc::Small(v) => Ok(BigInt::from(*v)),
            IntDoc::Big(s) => s
                .trim()
                .parse()
                .map_err(|_| Error::Schema(format!("`{s}` is not an integer"))),
        }
    }

    fn from_bigint(v: &BigInt) -> Self {
        i64::try_from(v).map(IntDoc::Small).unwrap_or_else(|_| IntDoc::Big(v.to_string()))
    }
}

/// A scalar: `num`/`den` (exact) or `value` (decimal or fraction string).
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ScalarDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub num: Option<IntDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub den: Option<IntDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<String>,
}

impl ScalarDoc {
    pub fn parse<S: Scalar>(&self) -> Result<S> {
        match (&self.num, &self.den, &self.value) {
            (Some(n), d, None) => {
                let den = match d {
                    Some(d) => d.to_bigint()?,
                    None => BigInt::from(1),
                };
                if den == BigInt::from(0) {
                    return Err(Error::Schema("zero denominator".into()));
                }
                Ok(S::from_bigints(&n.to_bigint()?, &den))
            }
            (None, None, Some(v)) => S::parse_decimal(v).map_err(|e| Error::Schema(e.to_string())),
            _ => Err(Error::Schema("a scalar needs either num/den or value".into())),
        }
    }

    pub fn from_scalar<S: Scalar>(v: &S) -> Self {
        match v.to_repr() {
            ScalarRepr::Rational { num, den } => ScalarDoc {
                num: Some(IntDoc::from_bigint(&num)),
                den: Some(IntDoc::from_bigint(&den)),
                value: None,
            },
            ScalarRepr::Real(x) => ScalarDoc {
                num: None,
                den: None,
                value: Some(format_real(x)),
            },
        }
    }
}

/// Shortest round-tripping decimal string.
pub fn format_real(x: f64) -> String {
    if x == 0.0 {
        "0".into()
    } else if x.abs() >= 1e-4 && x.abs() < 1e15 {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

/// JSON value of a scalar in the report conventions.
pub fn scalar_json<S: Scalar>(v: &S) -> Value {
    serde_json::to_value(ScalarDoc::from_scalar(v)).expect("scalar serializes")
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TermDoc {
    pub indices: Vec<usize>,
    #[serde(flatten)]
    pub coefficient: ScalarDoc,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormDoc {
    pub dimension: usize,
    pub degree: usize,
    pub terms: Vec<TermDoc>,
}

impl FormDoc {
    pub fn to_form<S: Scalar>(&self) -> Result<Form<S>> {
        let terms = self
            .terms
            .iter()
            .map(|t| {
                if t.indices.len() != self.degree {
                    return Err(Error::Schema(format!(
                        "term {:?} has length {} in a {}-form",
                        t.indices,
                        t.indices.len(),
                        self.degree
                    )));
                }
                Ok((t.indices.clone(), t.coefficient.parse::<S>()?))
            })
            .collect::<Result<Vec<_>>>()?;
        if self.dimension > crate::forms::MAX_DIM || self.degree > self.dimension {
            return Err(Error::Schema(format!(
                "degree {} in dimension {} is out of range",
                self.degree, self.dimension
            )));
        }
        let mut out = Form::zero(self.dimension, self.degree);
        for (indices, c) in terms {
            if indices.iter().any(|&i| i == 0 || i > self.dimension) {
                return Err(Error::Schema(format!(
                    "indices {indices:?} out of range 1..={}",
                    self.dimension
                )));
            }
            out = out + Form::basis(self.dimension, &indices).scale(&c);
        }
        Ok(out)
    }

    pub fn from_form<S: Scalar>(f: &Form<S>) -> Self {
        FormDoc {
            dimension: f.dim(),
            degree: f.degree(),
            terms: f
                .terms()
                .map(|(k, c)| TermDoc {
                    indices: k.indices(),
                    coefficient: ScalarDoc::from_scalar(c),
                })
                .collect(),
        }
    }
}

/// JSON value of a form in the report conventions.
pub fn form_json<S: Scalar>(f: &Form<S>) -> Value {
    serde_json::to_value(FormDoc::from_form(f)).expect("form serializes")
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BracketDoc {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    #[serde(flatten)]
    pub coefficient: ScalarDoc,
}

/// `[e_i, e_j] = Σ c^k_{ij} e_k`, listed for `i < j`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LieAlgebraDoc {
    pub dimension: usize,
    pub brackets: Vec<BracketDoc>,
}

impl LieAlgebraDoc {
    pub fn to_structure_constants<S: Scalar>(&self) -> Result<StructureConstants<S>> {
        let entries = self
            .brackets
            .iter()
            .map(|b| Ok((b.i, b.j, b.k, b.coefficient.parse::<S>()?)))
            .collect::<Result<Vec<_>>>()?;
        StructureConstants::from_brackets(self.dimension, &entries).map_err(|e| Error::Schema(e.to_string()))
    }

    pub fn from_structure_constants<S: Scalar>(sc: &StructureConstants<S>) -> Self {
        LieAlgebraDoc {
            dimension: sc.dim(),
            brackets: sc
                .nonzero_entries()
                .into_iter()
                .map(|(i, j, k, c)| BracketDoc {
                    i,
                    j,
                    k,
                    coefficient: ScalarDoc::from_scalar(&c),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    G2,
    Su3,
    LieAlgebra,
    Loop,
}

impl Kind {
    pub fn as_str(self) -> &'static str {
        match self {
            Kind::G2 => "g2",
            Kind::Su3 => "su3",
            Kind::LieAlgebra => "lie_algebra",
            Kind::Loop => "loop",
        }
    }
}

/// Fundamental forms; omitted entries default to the standard model forms.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormsDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phi: Option<FormDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega: Option<FormDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub psi_plus: Option<FormDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub psi_minus: Option<FormDoc>,
}

/// Exterior derivatives of the fundamental forms at a point.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DifferentialsDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dphi: Option<FormDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dstar_phi: Option<FormDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub domega: Option<FormDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dpsi_plus: Option<FormDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dpsi_minus: Option<FormDoc>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConformalDoc {
    /// `e^f`.
    pub scale: ScalarDoc,
    pub df: FormDoc,
}

impl ConformalDoc {
    pub fn to_data<S: Scalar>(&self) -> Result<PointwiseConformalData<S>> {
        PointwiseConformalData::new(self.scale.parse()?, self.df.to_form()?)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SampleDoc {
    pub alpha: Vec<String>,
    pub increment: Vec<String>,
    pub phi: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LoopDoc {
    pub samples: Vec<SampleDoc>,
}

fn parse_real(s: &str) -> Result<f64> {
    f64::parse_decimal(s).map_err(|e| Error::Schema(e.to_string()))
}

impl LoopDoc {
    pub fn to_samples(&self) -> Result<Vec<LoopSample>> {
        self.samples
            .iter()
            .map(|s| {
                Ok(LoopSample {
                    alpha: s.alpha.iter().map(|v| parse_real(v)).collect::<Result<_>>()?,
                    increment: s.increment.iter().map(|v| parse_real(v)).collect::<Result<_>>()?,
                    phi: parse_real(&s.phi)?,
                })
            })
            .collect()
    }

    pub fn from_samples(samples: &[LoopSample]) -> Self {
        let fmt = |v: &[f64]| v.iter().map(|x| format_real(*x)).collect();
        LoopDoc {
            samples: samples
                .iter()
                .map(|s| SampleDoc {
                    alpha: fmt(&s.alpha),
                    increment: fmt(&s.increment),
                    phi: format_real(s.phi),
                })
                .collect(),
        }
    }
}

/// An input file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Document {
    pub format: u64,
    pub kind: Kind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub notes: Option<String>,
    /// Frame the forms live on; differentials are computed from it.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lie_algebra: Option<LieAlgebraDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub forms: Option<FormsDoc>,
    /// Pointwise differentials, used when no frame is given.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub differentials: Option<DifferentialsDoc>,
    /// A conformal change applied before classification.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub conformal: Option<ConformalDoc>,
    /// 1-form tested by the (2,0) identity; every `e^i` when omitted.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theta: Option<FormDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected_class: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none", rename = "loop")]
    pub loop_data: Option<LoopDoc>,
}

impl Document {
    pub fn new(kind: Kind, name: &str) -> Self {
        Document {
            format: FORMAT_VERSION,
            kind,
            name: Some(name.to_string()),
            notes: None,
            lie_algebra: None,
            forms: None,
            differentials: None,
            conformal: None,
            theta: None,
            expected_class: None,
            loop_data: None,
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: Document = serde_json::from_str(text)
            .map_err(|e| Error::Schema(e.to_string()))?;
        if doc.format != FORMAT_VERSION {
            return Err(Error::Schema(format!(
                "unsupported format {} (expected {FORMAT_VERSION})",
                doc.format
            )));
        }
        Ok(doc)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes")
    }
}
