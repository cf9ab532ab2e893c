//! JSON run configuration. Complex numbers are `[re, im]` pairs.

use std::path::Path;

use ctqmc_core::channels::{eigenbasis, superop_of, EigenChannelBasis, KrausChannel, QubitDensity};
use ctqmc_core::generators::{Boundary, Geometry};
use ctqmc_core::kernels::GoalState;
use ctqmc_core::linalg::{c, DenseMatrix};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

pub type Complex = [f64; 2];
pub type Matrix2 = [[Complex; 2]; 2];

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(tag = "preset", rename_all = "snake_case", deny_unknown_fields)]
pub enum ChannelSpec {
    Depolarizing { s: f64 },
    Pq { p: f64, q: f64, r: f64 },
    SegmentExample,
    IdentityHalf,
    AmplitudeDamping { gamma: f64 },
    Kraus { matrices: Vec<Matrix2> },
}

impl Default for ChannelSpec {
    fn default() -> Self {
        ChannelSpec::Depolarizing { s: 1.0 / 3.0 }
    }
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
pub enum BoundarySpec {
    Absorbing,
    Reflecting,
}

impl From<BoundarySpec> for Boundary {
    fn from(b: BoundarySpec) -> Self {
        match b {
            BoundarySpec::Absorbing => Boundary::Absorbing,
            BoundarySpec::Reflecting => Boundary::Reflecting,
        }
    }
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
pub enum GeometryKind {
    Line,
    HalfLine,
    Segment,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(default, deny_unknown_fields)]
pub struct GeometrySpec {
    pub kind: GeometryKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub boundary: Option<BoundarySpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sites: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub left: Option<BoundarySpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub right: Option<BoundarySpec>,
}

impl Default for GeometrySpec {
    fn default() -> Self {
        Self {
            kind: GeometryKind::HalfLine,
            boundary: Some(BoundarySpec::Absorbing),
            sites: None,
            left: None,
            right: None,
        }
    }
}

impl GeometrySpec {
    pub fn build(&self) -> Result<Geometry, CliError> {
        match self.kind {
            GeometryKind::Line => Ok(Geometry::Line),
            GeometryKind::HalfLine => Ok(Geometry::HalfLine(self.boundary.unwrap_or(BoundarySpec::Absorbing).into())),
            GeometryKind::Segment => {
                let sites = self.sites.ok_or_else(|| CliError::Validation("segment geometry needs `sites`".into()))?;
                let left = self.left.or(self.boundary).unwrap_or(BoundarySpec::Absorbing);
                let right = self.right.or(self.boundary).unwrap_or(BoundarySpec::Absorbing);
                Ok(Geometry::segment(sites, left.into(), right.into())?)
            }
        }
    }
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq, Eq)]
pub enum DensityPreset {
    E11,
    E22,
    #[serde(rename = "uniform_plus")]
    UniformPlus,
    #[serde(rename = "maximally_mixed")]
    MaximallyMixed,
    /// The goal projector.
    #[serde(rename = "goal")]
    Goal,
    /// The projector orthogonal to the goal.
    #[serde(rename = "antipodal")]
    Antipodal,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct DensitySpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub preset: Option<DensityPreset>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bloch: Option<[f64; 3]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Matrix2>,
}

impl Default for DensitySpec {
    fn default() -> Self {
        Self { preset: Some(DensityPreset::E11), bloch: None, matrix: None }
    }
}

impl DensitySpec {
    pub fn build(&self, goal: &GoalState) -> Result<QubitDensity, CliError> {
        match (self.preset, self.bloch, self.matrix) {
            (Some(p), None, None) => Ok(match p {
                DensityPreset::E11 => QubitDensity::e11(),
                DensityPreset::E22 => QubitDensity::e22(),
                DensityPreset::UniformPlus => QubitDensity::uniform_plus(),
                DensityPreset::MaximallyMixed => QubitDensity::maximally_mixed(),
                DensityPreset::Goal => goal.density(),
                DensityPreset::Antipodal => goal.antipodal().density(),
            }),
            (None, Some([x, y, z]), None) => Ok(QubitDensity::from_bloch(x, y, z)?),
            (None, None, Some(m)) => Ok(QubitDensity::from_matrix(&matrix2(&m))?),
            _ => Err(CliError::Validation("density needs exactly one of `preset`, `bloch`, `matrix`".into())),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(default, deny_unknown_fields)]
pub struct GoalSpec {
    pub psi: [Complex; 2],
}

impl Default for GoalSpec {
    fn default() -> Self {
        Self { psi: [[0.5, 0.0], [3f64.sqrt() / 2.0, 0.0]] }
    }
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq)]
#[serde(default, deny_unknown_fields)]
pub struct SitesSpec {
    pub i: i64,
    pub j: i64,
}

impl Default for SitesSpec {
    fn default() -> Self {
        Self { i: 1, j: 0 }
    }
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq)]
#[serde(default, deny_unknown_fields)]
pub struct TimeGrid {
    pub start: f64,
    pub stop: f64,
    pub points: usize,
}

impl Default for TimeGrid {
    fn default() -> Self {
        Self { start: 0.0, stop: 10.0, points: 101 }
    }
}

impl TimeGrid {
    pub fn validate(&self) -> Result<(), CliError> {
        if !(self.start.is_finite() && self.stop.is_finite()) || self.start < 0.0 {
            return Err(CliError::Validation("time grid must be finite and start at t >= 0".into()));
        }
        match self.points {
            0 => Err(CliError::Validation("time grid needs at least one point".into())),
            1 => Ok(()),
            _ if self.stop > self.start => Ok(()),
            _ => Err(CliError::Validation(format!(
                "time grid must be strictly increasing (start {}, stop {})",
                self.start, self.stop
            ))),
        }
    }

    pub fn values(&self) -> Vec<f64> {
        if self.points == 1 {
            return vec![self.start];
        }
        let n = (self.points - 1) as f64;
        (0..self.points)
            .map(
                |k| if k + 1 == self.points { self.stop } else { self.start + (self.stop - self.start) * k as f64 / n },
            )
            .collect()
    }

    pub fn max(&self) -> f64 {
        if self.points == 1 {
            self.start
        } else {
            self.stop
        }
    }
}

#[derive(Debug, Clone, Copy, Default, Serialize, Deserialize, PartialEq, Eq, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum ProbMode {
    Site,
    #[default]
    State,
}

#[derive(Debug, Clone, Copy, Default, Serialize, Deserialize, PartialEq, Eq, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default)]
    pub channel: ChannelSpec,
    #[serde(default)]
    pub geometry: GeometrySpec,
    #[serde(default)]
    pub density: DensitySpec,
    #[serde(default)]
    pub goal: GoalSpec,
    #[serde(default)]
    pub sites: SitesSpec,
    #[serde(default)]
    pub time: TimeGrid,
    #[serde(default)]
    pub mode: ProbMode,
    /// Scalar off-diagonal for `measure`; the channel eigenvalues when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<f64>,
    /// Density sample count for `measure`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub truncation: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<Format>,
}

pub fn matrix2(m: &Matrix2) -> DenseMatrix {
    DenseMatrix::from_fn(2, 2, |a, b| c(m[a][b][0], m[a][b][1]))
}

impl ChannelSpec {
    pub fn build(&self) -> Result<KrausChannel, CliError> {
        Ok(match self {
            ChannelSpec::Depolarizing { s } => KrausChannel::depolarizing(*s)?,
            ChannelSpec::Pq { p, q, r } => KrausChannel::pq(*p, *q, *r)?,
            ChannelSpec::SegmentExample => KrausChannel::segment_example(),
            ChannelSpec::IdentityHalf => KrausChannel::identity_half(),
            ChannelSpec::AmplitudeDamping { gamma } => KrausChannel::amplitude_damping(*gamma)?,
            ChannelSpec::Kraus { matrices } => KrausChannel::new(matrices.iter().map(matrix2).collect())?,
        })
    }

    pub fn name(&self) -> String {
        match self {
            ChannelSpec::Depolarizing { s } => format!("depolarizing(s={s})"),
            ChannelSpec::Pq { p, q, r } => format!("pq(p={p}, q={q}, r={r})"),
            ChannelSpec::SegmentExample => "segment_example".into(),
            ChannelSpec::IdentityHalf => "identity_half".into(),
            ChannelSpec::AmplitudeDamping { gamma } => format!("amplitude_damping(gamma={gamma})"),
            ChannelSpec::Kraus { matrices } => format!("kraus({} matrices)", matrices.len()),
        }
    }
}

/// Validated configuration with the objects every command needs.
pub struct Resolved {
    pub config: RunConfig,
    pub channel: KrausChannel,
    pub geometry: Geometry,
    pub goal: GoalState,
    pub density: QubitDensity,
}

impl Resolved {
    /// Eigenbasis of the channel; fails for non-Hermitian representations.
    pub fn basis(&self) -> Result<EigenChannelBasis, CliError> {
        Ok(eigenbasis(&superop_of(&self.channel)?)?)
    }
}

impl RunConfig {
    pub fn load(path: Option<&Path>) -> Result<Self, CliError> {
        match path {
            None => Ok(Self::default()),
            Some(p) => {
                let text = std::fs::read_to_string(p).map_err(|e| CliError::Io(format!("{}: {e}", p.display())))?;
                Self::parse(&text)
            }
        }
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Validation(format!("config: {e}")))
    }

    pub fn resolve(self) -> Result<Resolved, CliError> {
        self.time.validate()?;
        let channel = self.channel.build()?;
        let geometry = self.geometry.build()?;
        geometry.check_site(self.sites.i)?;
        geometry.check_site(self.sites.j)?;
        let [p1, p2] = self.goal.psi;
        let goal = GoalState::new([c(p1[0], p1[1]), c(p2[0], p2[1])])?;
        let density = self.density.build(&goal)?;
        if let Some(l) = self.lambda {
            if !(l.is_finite() && l.abs() <= 0.5) {
                return Err(CliError::Validation(format!("lambda must satisfy |lambda| <= 1/2, got {l}")));
            }
        }
        if self.samples == Some(0) {
            return Err(CliError::Validation("samples must be positive".into()));
        }
        Ok(Resolved { config: self, channel, geometry, goal, density })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_resolve() {
        let r = RunConfig::default().resolve().unwrap();
        assert_eq!(r.geometry, Geometry::HalfLine(Boundary::Absorbing));
        assert_eq!(r.config.time.values().len(), 101);
        assert_eq!(*r.config.time.values().last().unwrap(), 10.0);
    }

    #[test]
    fn parses_presets_and_matrices() {
        let cfg = RunConfig::parse(
            r#"{
                "channel": {"preset": "pq", "p": 0.8, "q": 0.5, "r": 0.1},
                "geometry": {"kind": "segment", "sites": 5, "left": "reflecting", "right": "absorbing"},
                "density": {"matrix": [[[0.5, 0], [0, 0.5]], [[0, -0.5], [0.5, 0]]]},
                "sites": {"i": 2, "j": 4}
            }"#,
        )
        .unwrap();
        let r = cfg.resolve().unwrap();
        assert!(r.geometry.is_finite());
        assert_eq!(r.density.bloch(), [0.0, 0.0, 1.0]);
    }

    #[test]
    fn rejects_bad_inputs() {
        for text in [
            r#"{"time": {"start": 2, "stop": 1, "points": 5}}"#,
            r#"{"goal": {"psi": [[1, 0], [1, 0]]}}"#,
            r#"{"density": {"bloch": [1, 1, 0]}}"#,
            r#"{"channel": {"preset": "pq", "p": 0.5, "q": 0.9, "r": 0}}"#,
            r#"{"sites": {"i": -1, "j": 0}}"#,
            r#"{"unknown": 1}"#,
            r#"{"density": {"preset": "E11", "bloch": [0, 0, 0]}}"#,
        ] {
            let res = RunConfig::parse(text).and_then(RunConfig::resolve);
            assert!(matches!(res, Err(CliError::Validation(_))), "{text}");
        }
    }
}
