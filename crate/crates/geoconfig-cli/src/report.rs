//! JSON report types. Every float is rounded to 10 significant digits
//! before serialization so fixture output is stable and readable.

use serde::{Deserialize, Serialize};

use geoconfig::planner::PlannerRegion;
use geoconfig::vecgeo::OrderedConfig;

/// Rounds to 10 significant decimal digits.
pub fn round_sig(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.9e}").parse().unwrap_or(x)
}

pub fn round_all(v: &[f64]) -> Vec<f64> {
    v.iter().copied().map(round_sig).collect()
}

/// One sampled configuration along the reported path.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SampleConfig {
    pub first: Vec<f64>,
    pub second: Vec<f64>,
}

impl SampleConfig {
    pub fn from_config(c: &OrderedConfig, scale: f64) -> Self {
        Self {
            first: round_all(&c.first().coords().iter().map(|v| v * scale).collect::<Vec<_>>()),
            second: round_all(&c.second().coords().iter().map(|v| v * scale).collect::<Vec<_>>()),
        }
    }
}

/// Contact data of an arc-class geodesic: directions are dimensionless,
/// centers are reported in input scale.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ContactReport {
    pub u: Vec<f64>,
    pub v: Vec<f64>,
    pub x: Vec<f64>,
    pub y: Vec<f64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RegionReport {
    pub space: String,
    pub region_id: u32,
    pub descriptor: String,
}

impl RegionReport {
    pub fn from_region(r: &PlannerRegion) -> Self {
        Self {
            space: match r.space {
                geoconfig::planner::Space::OrderedF0 => "ordered".into(),
                geoconfig::planner::Space::UnorderedC => "unordered".into(),
            },
            region_id: r.region_id,
            descriptor: r.descriptor.clone(),
        }
    }
}

/// The JSON body printed by `geodesic` and `plan`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PathReport {
    /// "a" | "b" | "c" | "linear" | "alt".
    pub class: String,
    pub length: f64,
    /// Contact angle for classes b/c; sphere angle for the product metric;
    /// zero for linear classes.
    pub beta_or_alpha: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub contact: Option<ContactReport>,
    pub samples: Vec<SampleConfig>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub region: Option<RegionReport>,
}

/// Machine-readable failure body: `{code, message}`, printed on exit 2.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ErrorReport {
    pub code: String,
    pub message: String,
}
