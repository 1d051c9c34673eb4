//! Problem files: typed payloads and their conversion to domain objects.

use serde::{Deserialize, Serialize};

use crate::cone::PolarizedModel;
use crate::monomial::{Ambient, MonomialIdeal};
use crate::scalar;
use crate::surface::{DualGraph, GraphEdge, GraphVertex, SurfaceLattice};
use crate::toric::{PointedCone, ToricDatum, ToricDivisor};
use crate::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Toric,
    Monomial,
    Surface,
    Cone,
    Fujita,
    Tcomp,
    Logconvexity,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Options {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m_max: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p_max: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<OutputFormat>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub kind: Kind,
    pub payload: serde_json::Value,
    #[serde(default)]
    pub options: Options,
}

/// An integer or a string such as `"3/2"` or `"-0.25"`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RationalInput {
    Int(i64),
    Text(String),
}

impl RationalInput {
    pub fn value(&self) -> Result<Rational, String> {
        match self {
            RationalInput::Int(v) => Ok(scalar::int(*v)),
            RationalInput::Text(s) => scalar::parse_rational(s).map_err(|e| format!("not a rational number: {}", e.0)),
        }
    }
}

fn values(v: &[RationalInput]) -> Result<Vec<Rational>, String> {
    v.iter().map(RationalInput::value).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ToricPayload {
    pub cone: Vec<Vec<i64>>,
    pub rays: Vec<Vec<i64>>,
    pub coefficients: Vec<RationalInput>,
}

/// Construction failures carry the domain error name.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputError {
    pub name: String,
    pub message: String,
}

impl InputError {
    fn new(name: &str, message: impl ToString) -> Self {
        InputError { name: name.into(), message: message.to_string() }
    }
}

fn parse_error(message: String) -> InputError {
    InputError::new("InvalidNumber", message)
}

fn toric_datum(cone: &[Vec<i64>], rays: &[Vec<i64>]) -> Result<ToricDatum, InputError> {
    ToricDatum::from_i64(cone, rays).map_err(|e| InputError::new(e.name(), e))
}

impl ToricPayload {
    pub fn divisor(&self) -> Result<ToricDivisor, InputError> {
        let datum = toric_datum(&self.cone, &self.rays)?;
        ToricDivisor::new(datum, values(&self.coefficients).map_err(parse_error)?).map_err(|e| InputError::new(e.name(), e))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LogConvexityPayload {
    pub cone: Vec<Vec<i64>>,
    pub rays: Vec<Vec<i64>>,
    pub first: Vec<RationalInput>,
    pub second: Vec<RationalInput>,
}

impl LogConvexityPayload {
    /// `(D₁, D₂, (D₁ + D₂)/2)`.
    pub fn divisors(&self) -> Result<[ToricDivisor; 3], InputError> {
        let datum = toric_datum(&self.cone, &self.rays)?;
        let a = values(&self.first).map_err(parse_error)?;
        let b = values(&self.second).map_err(parse_error)?;
        let mid: Vec<Rational> = a.iter().zip(&b).map(|(x, y)| (x + y) / scalar::int(2)).collect();
        let make = |c: Vec<Rational>| ToricDivisor::new(datum.clone(), c).map_err(|e| InputError::new(e.name(), e));
        Ok([make(a)?, make(b)?, make(mid)?])
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum AmbientInput {
    Orthant(usize),
    Cone(Vec<Vec<i64>>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MonomialPayload {
    pub ambient: AmbientInput,
    pub generators: Vec<Vec<i64>>,
}

impl MonomialPayload {
    pub fn ideal(&self) -> Result<MonomialIdeal, InputError> {
        let ambient = match &self.ambient {
            AmbientInput::Orthant(n) => Ambient::Orthant(*n),
            AmbientInput::Cone(rays) => {
                Ambient::Cone(PointedCone::from_i64(rays).map_err(|e| InputError::new(e.name(), e))?)
            }
        };
        MonomialIdeal::new(ambient, self.generators.clone()).map_err(|e| InputError::new(e.name(), e))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VertexInput {
    pub self_int: i64,
    #[serde(default)]
    pub genus: u64,
}

fn one() -> u64 {
    1
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeInput {
    pub i: usize,
    pub j: usize,
    #[serde(default = "one")]
    pub multiplicity: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SurfacePayload {
    pub vertices: Vec<VertexInput>,
    #[serde(default)]
    pub edges: Vec<EdgeInput>,
    /// Intersection numbers `D·E_i`; the log canonical class when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub divisor: Option<Vec<RationalInput>>,
}

impl SurfacePayload {
    pub fn graph(&self) -> Result<DualGraph, InputError> {
        let vertices = self.vertices.iter().map(|v| GraphVertex { self_int: v.self_int, genus: v.genus }).collect();
        let edges = self.edges.iter().map(|e| GraphEdge { i: e.i, j: e.j, multiplicity: e.multiplicity }).collect();
        DualGraph::new(vertices, edges).map_err(|e| InputError::new(e.name(), e))
    }

    pub fn divisor(&self) -> Result<Option<Vec<Rational>>, InputError> {
        self.divisor.as_ref().map(|d| values(d).map_err(parse_error)).transpose()
    }
}

fn two() -> i64 {
    2
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum ModelInput {
    Curve {
        genus: u64,
        deg_h: u64,
        #[serde(default)]
        general_position: bool,
    },
    ProjSpace {
        dim: usize,
        h: u64,
    },
    AbelianCover {
        d2: i64,
        dl: i64,
        l2: i64,
        #[serde(default = "two")]
        cover_multiplier: i64,
    },
    Lattice {
        gram: Vec<Vec<i64>>,
        canonical: Vec<i64>,
        ample: Vec<i64>,
        polarization: Vec<i64>,
        #[serde(default)]
        negative_curves: Vec<Vec<i64>>,
        #[serde(default)]
        psef_generators: Vec<Vec<i64>>,
        #[serde(default)]
        assert_nef_envelope: bool,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConePayload {
    pub model: ModelInput,
}

impl ConePayload {
    pub fn model(&self) -> Result<PolarizedModel, InputError> {
        let model = match &self.model {
            ModelInput::Curve { genus, deg_h, general_position } => {
                PolarizedModel::Curve { genus: *genus, deg_h: *deg_h, general_position: *general_position }
            }
            ModelInput::ProjSpace { dim, h } => PolarizedModel::ProjSpace { dim: *dim, h: *h },
            ModelInput::AbelianCover { d2, dl, l2, cover_multiplier } => {
                PolarizedModel::AbelianCover { d2: *d2, dl: *dl, l2: *l2, cover_multiplier: *cover_multiplier }
            }
            ModelInput::Lattice {
                gram,
                canonical,
                ample,
                polarization,
                negative_curves,
                psef_generators,
                assert_nef_envelope,
            } => {
                let surface = SurfaceLattice::new(
                    gram.clone(),
                    canonical.clone(),
                    ample.clone(),
                    negative_curves.clone(),
                    psef_generators.clone(),
                )
                .map_err(|e| InputError::new(e.name(), e))?;
                PolarizedModel::Lattice {
                    surface,
                    canonical: canonical.clone(),
                    polarization: polarization.clone(),
                    assert_nef_envelope: *assert_nef_envelope,
                }
            }
        };
        model.validate().map_err(|e| InputError::new(e.name(), e))?;
        Ok(model)
    }
}
