//! Dimension-generic vector arithmetic, configuration types, and
//! feasibility predicates shared by the other modules.
//!
//! The ambient space is `R^n` with a runtime dimension `n >= 2`; a
//! configuration is an ordered pair of points, a point of `R^{2n}` with the
//! Euclidean metric. The clearance-constrained space consists of the
//! configurations whose two points stay at distance at least 2 apart
//! (disjoint open unit balls).

use serde::{Deserialize, Serialize};
use std::ops::{Add, Index, Mul, Neg, Sub};

use crate::Error;

/// Absorbs rounding error in unit-norm and clearance checks. The closed
/// forms downstream are exact, so only floating-point noise needs covering.
pub const TOL_FEAS: f64 = 1e-12;

/// A real coordinate vector of runtime dimension `n >= 2`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VecN {
    coords: Vec<f64>,
}

impl VecN {
    /// Builds a vector, rejecting dimensions below 2 and non-finite entries.
    pub fn new(coords: Vec<f64>) -> Result<Self, Error> {
        if coords.len() < 2 {
            return Err(Error::DimensionTooSmall(coords.len()));
        }
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(Error::NonFiniteCoordinate);
        }
        Ok(Self { coords })
    }

    pub fn zeros(n: usize) -> Self {
        Self { coords: vec![0.0; n] }
    }

    /// The `i`-th standard basis vector of `R^n`.
    pub fn basis(n: usize, i: usize) -> Self {
        let mut coords = vec![0.0; n];
        coords[i] = 1.0;
        Self { coords }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn dot(&self, other: &Self) -> f64 {
        debug_assert_eq!(self.dim(), other.dim());
        self.coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a * b)
            .sum()
    }

    pub fn norm_sq(&self) -> f64 {
        self.dot(self)
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn dist(&self, other: &Self) -> f64 {
        (self - other).norm()
    }

    pub fn scale(&self, s: f64) -> Self {
        Self {
            coords: self.coords.iter().map(|c| c * s).collect(),
        }
    }

    pub fn normalized(&self) -> Result<Self, Error> {
        let n = self.norm();
        if n == 0.0 {
            return Err(Error::ZeroVector);
        }
        Ok(self.scale(1.0 / n))
    }

    pub fn lerp(&self, other: &Self, t: f64) -> Self {
        debug_assert_eq!(self.dim(), other.dim());
        Self {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| (1.0 - t) * a + t * b)
                .collect(),
        }
    }

    /// Weighted sum `Σ cᵢ·vᵢ` of same-dimension vectors.
    pub fn combination(terms: &[(f64, &VecN)]) -> Self {
        let n = terms[0].1.dim();
        let mut coords = vec![0.0; n];
        for (c, v) in terms {
            debug_assert_eq!(v.dim(), n);
            for (acc, x) in coords.iter_mut().zip(&v.coords) {
                *acc += c * x;
            }
        }
        Self { coords }
    }

    pub(crate) fn ensure_same_dim(&self, other: &Self) -> Result<(), Error> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: other.dim(),
            });
        }
        Ok(())
    }
}

impl Index<usize> for VecN {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.coords[i]
    }
}

impl Add for &VecN {
    type Output = VecN;
    fn add(self, rhs: &VecN) -> VecN {
        debug_assert_eq!(self.dim(), rhs.dim());
        VecN {
            coords: self
                .coords
                .iter()
                .zip(&rhs.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &VecN {
    type Output = VecN;
    fn sub(self, rhs: &VecN) -> VecN {
        debug_assert_eq!(self.dim(), rhs.dim());
        VecN {
            coords: self
                .coords
                .iter()
                .zip(&rhs.coords)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Add<&VecN> for VecN {
    type Output = VecN;
    fn add(self, rhs: &VecN) -> VecN {
        &self + rhs
    }
}

impl Sub<&VecN> for VecN {
    type Output = VecN;
    fn sub(self, rhs: &VecN) -> VecN {
        &self - rhs
    }
}

impl Neg for &VecN {
    type Output = VecN;
    fn neg(self) -> VecN {
        self.scale(-1.0)
    }
}

impl Mul<f64> for &VecN {
    type Output = VecN;
    fn mul(self, s: f64) -> VecN {
        self.scale(s)
    }
}

/// An ordered pair of points in `R^n`.
///
/// The type itself allows coincident points (the raw pair space needs them
/// as inputs); every clearance-constrained entry point re-checks the gap.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OrderedConfig {
    first: VecN,
    second: VecN,
}

impl OrderedConfig {
    pub fn new(first: VecN, second: VecN) -> Result<Self, Error> {
        first.ensure_same_dim(&second)?;
        Ok(Self { first, second })
    }

    /// Convenience constructor from raw coordinate slices.
    pub fn from_coords(first: &[f64], second: &[f64]) -> Result<Self, Error> {
        Self::new(VecN::new(first.to_vec())?, VecN::new(second.to_vec())?)
    }

    pub fn dim(&self) -> usize {
        self.first.dim()
    }

    pub fn first(&self) -> &VecN {
        &self.first
    }

    pub fn second(&self) -> &VecN {
        &self.second
    }

    /// Distance between the two component points.
    pub fn gap(&self) -> f64 {
        self.first.dist(&self.second)
    }

    /// Whether the configuration satisfies the clearance bound `gap >= 2`.
    pub fn is_clearance_feasible(&self) -> bool {
        self.gap() >= 2.0 - TOL_FEAS
    }

    pub fn ensure_clearance(&self) -> Result<(), Error> {
        if self.is_clearance_feasible() {
            Ok(())
        } else {
            Err(Error::ClearanceViolated { gap: self.gap() })
        }
    }

    /// Componentwise linear interpolation in `R^{2n}`.
    pub fn lerp(&self, other: &Self, t: f64) -> Self {
        Self {
            first: self.first.lerp(&other.first, t),
            second: self.second.lerp(&other.second, t),
        }
    }
}

/// A configuration on the clearance boundary, encoded as a center `x` and a
/// unit contact direction `u`: the pair `(x − u, x + u)`.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundaryPoint {
    center: VecN,
    unit: VecN,
}

impl BoundaryPoint {
    pub fn new(center: VecN, unit: VecN) -> Result<Self, Error> {
        center.ensure_same_dim(&unit)?;
        let norm = unit.norm();
        if (norm - 1.0).abs() > TOL_FEAS {
            return Err(Error::NotUnit { norm });
        }
        Ok(Self { center, unit })
    }

    pub fn center(&self) -> &VecN {
        &self.center
    }

    pub fn unit(&self) -> &VecN {
        &self.unit
    }

    /// The boundary configuration `(x − u, x + u)`.
    pub fn config(&self) -> OrderedConfig {
        OrderedConfig {
            first: &self.center - &self.unit,
            second: &self.center + &self.unit,
        }
    }
}

/// Euclidean distance in `R^{2n}` between two configurations.
pub fn config_distance(p: &OrderedConfig, q: &OrderedConfig) -> Result<f64, Error> {
    if p.dim() != q.dim() {
        return Err(Error::DimensionMismatch {
            expected: p.dim(),
            got: q.dim(),
        });
    }
    let d1 = (&p.first - &q.first).norm_sq();
    let d2 = (&p.second - &q.second).norm_sq();
    Ok((d1 + d2).sqrt())
}

/// Splits a pair into its half-difference `h = (a′ − a)/2` and midpoint
/// `A = (a′ + a)/2`; `(A − h, A + h)` recovers the pair up to rounding.
pub fn halving_data(p: &OrderedConfig) -> (VecN, VecN) {
    let h = (&p.second - &p.first).scale(0.5);
    let mid = (&p.second + &p.first).scale(0.5);
    (h, mid)
}

/// Rebuilds the pair `(A − h, A + h)` from halving data.
pub fn from_halving(h: &VecN, mid: &VecN) -> OrderedConfig {
    OrderedConfig {
        first: mid - h,
        second: mid + h,
    }
}

/// Whether the straight segment from `p` to the boundary configuration `c`
/// stays inside the clearance-constrained space.
///
/// The segment is feasible exactly when `h · u >= 1`, with `h` the
/// half-difference of `p` and `u` the contact direction of `c`.
pub fn segment_feasible(p: &OrderedConfig, c: &BoundaryPoint) -> Result<bool, Error> {
    p.ensure_clearance()?;
    p.first().ensure_same_dim(c.center())?;
    let (h, _) = halving_data(p);
    Ok(h.dot(c.unit()) >= 1.0 - TOL_FEAS)
}

/// Minimal gap between the two components over `samples` evenly spaced
/// parameter values of a path.
pub fn min_gap_along<F>(path: F, samples: usize) -> f64
where
    F: Fn(f64) -> OrderedConfig,
{
    assert!(samples >= 2, "need at least two samples");
    let mut min = f64::INFINITY;
    for i in 0..samples {
        let t = i as f64 / (samples - 1) as f64;
        let gap = path(t).gap();
        if gap < min {
            min = gap;
        }
    }
    min
}
