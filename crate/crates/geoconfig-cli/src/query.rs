//! Query specification: which space, the two configurations, and options.
//!
//! Inputs may use any clearance value `scale_eps`; coordinates are rescaled
//! so the clearance becomes 2 before computing, and outputs are rescaled
//! back. Directions (`w`) are dimensionless and stay untouched.

use serde::{Deserialize, Serialize};

use geoconfig::vecgeo::{OrderedConfig, VecN};

use crate::commands::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpaceKind {
    Ordered,
    Unordered,
    Alt,
}

impl std::str::FromStr for SpaceKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "ordered" => Ok(SpaceKind::Ordered),
            "unordered" => Ok(SpaceKind::Unordered),
            "alt" => Ok(SpaceKind::Alt),
            other => Err(format!("unknown space '{other}' (ordered|unordered|alt)")),
        }
    }
}

impl SpaceKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            SpaceKind::Ordered => "ordered",
            SpaceKind::Unordered => "unordered",
            SpaceKind::Alt => "alt",
        }
    }
}

/// Built-in figure fixtures pinning the worked plane examples.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FigureFixture {
    Fig1,
    Fig2,
    Fig3,
}

impl std::str::FromStr for FigureFixture {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "fig1" => Ok(FigureFixture::Fig1),
            "fig2" => Ok(FigureFixture::Fig2),
            "fig3" => Ok(FigureFixture::Fig3),
            other => Err(format!("unknown fixture '{other}' (fig1|fig2|fig3)")),
        }
    }
}

fn default_samples() -> usize {
    256
}

fn default_scale_eps() -> f64 {
    2.0
}

/// One geodesic/plan query.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct QuerySpec {
    pub space: SpaceKind,
    pub n: usize,
    /// `2n` coordinates: first point, then second point.
    pub p: Vec<f64>,
    pub q: Vec<f64>,
    #[serde(default = "default_samples")]
    pub samples: usize,
    /// Transverse direction for antiparallel ordered queries.
    #[serde(default)]
    pub w: Option<Vec<f64>>,
    /// Clearance of the input data; internally normalized to 2.
    #[serde(default = "default_scale_eps")]
    pub scale_eps: f64,
}

/// Parses a whitespace-separated coordinate list.
pub fn parse_coords(text: &str) -> Result<Vec<f64>, CliError> {
    text.split_whitespace()
        .map(|tok| {
            tok.parse::<f64>()
                .map_err(|_| CliError::invalid_input(format!("bad coordinate '{tok}'")))
        })
        .collect()
}

impl QuerySpec {
    pub fn validate(&self) -> Result<(), CliError> {
        if self.n < 2 {
            return Err(CliError::invalid_input(format!(
                "dimension must be at least 2, got {}",
                self.n
            )));
        }
        for (name, coords) in [("p", &self.p), ("q", &self.q)] {
            if coords.len() != 2 * self.n {
                return Err(CliError::invalid_input(format!(
                    "--{name} needs {} coordinates for n = {}, got {}",
                    2 * self.n,
                    self.n,
                    coords.len()
                )));
            }
        }
        if let Some(w) = &self.w {
            if w.len() != self.n {
                return Err(CliError::invalid_input(format!(
                    "--w needs {} coordinates, got {}",
                    self.n,
                    w.len()
                )));
            }
        }
        if !self.scale_eps.is_finite() || self.scale_eps <= 0.0 {
            return Err(CliError::invalid_input(format!(
                "--scale-eps must be positive, got {}",
                self.scale_eps
            )));
        }
        if self.samples < 2 {
            return Err(CliError::invalid_input(format!(
                "--samples must be at least 2, got {}",
                self.samples
            )));
        }
        Ok(())
    }

    /// Factor taking input coordinates to clearance-2 coordinates.
    pub fn to_internal_scale(&self) -> f64 {
        2.0 / self.scale_eps
    }

    /// Factor taking internal lengths/coordinates back to input scale.
    pub fn to_input_scale(&self) -> f64 {
        self.scale_eps / 2.0
    }

    fn config_from(&self, coords: &[f64]) -> Result<OrderedConfig, CliError> {
        let s = self.to_internal_scale();
        let scaled: Vec<f64> = coords.iter().map(|c| c * s).collect();
        OrderedConfig::from_coords(&scaled[..self.n], &scaled[self.n..]).map_err(CliError::from)
    }

    /// The two configurations in internal (clearance-2) coordinates.
    pub fn configs(&self) -> Result<(OrderedConfig, OrderedConfig), CliError> {
        Ok((self.config_from(&self.p)?, self.config_from(&self.q)?))
    }

    pub fn transverse(&self) -> Result<Option<VecN>, CliError> {
        match &self.w {
            None => Ok(None),
            Some(w) => Ok(Some(VecN::new(w.clone()).map_err(CliError::from)?)),
        }
    }
}
