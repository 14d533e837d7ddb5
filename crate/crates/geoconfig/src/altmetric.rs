//! A product metric on the pair space without clearance, under which it is
//! geodesically complete.
//!
//! A pair `(a, a′)` with `a ≠ a′` is equivalent to midpoint × unit
//! direction × half-separation coordinates
//! `(A, ĥ, r) ∈ R^n × S^{n−1} × R⁺`. The metric is the product of the
//! Euclidean metrics on the first and last factors with the arclength
//! metric on the sphere:
//! `d′ = √(‖B − A‖² + d_S(ĥ, k̂)² + (r_Q − r_P)²)`.
//! Geodesics interpolate the midpoint and radius linearly while the
//! direction follows the spherical arc (slerp).

use serde::{Deserialize, Serialize};

use crate::planner::default_transverse;
use crate::vecgeo::{OrderedConfig, VecN};
use crate::Error;

/// Threshold on `π − d_S` below which directions count as antipodal and
/// the geodesic is no longer unique.
pub const TOL_ANTIPODAL: f64 = 1e-9;

/// Product-space coordinates of a pair: midpoint, unit direction, and
/// half-separation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AltCoords {
    pub midpoint: VecN,
    pub direction: VecN,
    pub radius: f64,
}

/// Converts a pair with distinct points to product coordinates.
pub fn to_alt(p: &OrderedConfig) -> Result<AltCoords, Error> {
    let diff = p.second() - p.first();
    let sep = diff.norm();
    if sep == 0.0 {
        return Err(Error::DegeneratePair);
    }
    Ok(AltCoords {
        midpoint: (p.second() + p.first()).scale(0.5),
        direction: diff.scale(1.0 / sep),
        radius: sep / 2.0,
    })
}

/// Inverse map: `(A, u, r) ↦ (A − r·u, A + r·u)`.
pub fn from_alt(c: &AltCoords) -> OrderedConfig {
    let offset = c.direction.scale(c.radius);
    OrderedConfig::new(&c.midpoint - &offset, &c.midpoint + &offset).expect("dims match")
}

/// Arclength between unit vectors as `2·atan2(‖u−v‖, ‖u+v‖)`; accurate at
/// both ends of the range, unlike the clamped arccosine.
fn sphere_angle(u: &VecN, v: &VecN) -> f64 {
    2.0 * (u - v).norm().atan2((u + v).norm())
}

/// The product metric between two pairs.
pub fn d_prime(p: &OrderedConfig, q: &OrderedConfig) -> Result<f64, Error> {
    if p.dim() != q.dim() {
        return Err(Error::DimensionMismatch {
            expected: p.dim(),
            got: q.dim(),
        });
    }
    let cp = to_alt(p)?;
    let cq = to_alt(q)?;
    let mid = (&cq.midpoint - &cp.midpoint).norm_sq();
    let ang = sphere_angle(&cp.direction, &cq.direction);
    let rad = cq.radius - cp.radius;
    Ok((mid + ang * ang + rad * rad).sqrt())
}

/// How the direction factor moves along the path.
#[derive(Clone, Debug)]
enum DirectionArc {
    /// Equal endpoint directions.
    Fixed(VecN),
    /// Spherical interpolation through the angle `alpha ∈ (0, π)`.
    Slerp { from: VecN, to: VecN, alpha: f64 },
    /// Great semicircle from `from` to `−from` through `via`.
    Semicircle { from: VecN, via: VecN },
}

impl DirectionArc {
    fn angle(&self) -> f64 {
        match self {
            DirectionArc::Fixed(_) => 0.0,
            DirectionArc::Slerp { alpha, .. } => *alpha,
            DirectionArc::Semicircle { .. } => std::f64::consts::PI,
        }
    }

    fn at(&self, t: f64) -> VecN {
        match self {
            DirectionArc::Fixed(u) => u.clone(),
            DirectionArc::Slerp { from, to, alpha } => {
                let s = alpha.sin();
                VecN::combination(&[
                    (((1.0 - t) * alpha).sin() / s, from),
                    ((t * alpha).sin() / s, to),
                ])
            }
            DirectionArc::Semicircle { from, via } => {
                let phase = std::f64::consts::PI * t;
                VecN::combination(&[(phase.cos(), from), (phase.sin(), via)])
            }
        }
    }
}

/// A geodesic of the product metric, with a constant-speed evaluator.
#[derive(Clone, Debug)]
pub struct AltPath {
    mid_from: VecN,
    mid_to: VecN,
    radius_from: f64,
    radius_to: f64,
    arc: DirectionArc,
}

impl AltPath {
    /// Length in the product metric.
    pub fn length(&self) -> f64 {
        self.scaled_length(1.0)
    }

    /// Length after rescaling the Euclidean factors (midpoint and radius)
    /// by `s`; the sphere factor is scale-free.
    pub fn scaled_length(&self, s: f64) -> f64 {
        let mid = (&self.mid_to - &self.mid_from).norm_sq();
        let ang = self.arc.angle();
        let rad = self.radius_to - self.radius_from;
        (s * s * (mid + rad * rad) + ang * ang).sqrt()
    }

    /// The sphere-factor angle traversed by the path.
    pub fn direction_angle(&self) -> f64 {
        self.arc.angle()
    }

    /// Product coordinates at parameter `t`.
    pub fn coords_at(&self, t: f64) -> AltCoords {
        let t = t.clamp(0.0, 1.0);
        AltCoords {
            midpoint: self.mid_from.lerp(&self.mid_to, t),
            direction: self.arc.at(t),
            radius: (1.0 - t) * self.radius_from + t * self.radius_to,
        }
    }

    /// The pair at parameter `t`.
    pub fn eval(&self, t: f64) -> OrderedConfig {
        from_alt(&self.coords_at(t))
    }

    /// Product-metric polyline length over `samples` evaluations. Along a
    /// geodesic the chords add up to the distance exactly.
    pub fn polyline_length(&self, samples: usize) -> f64 {
        assert!(samples >= 2);
        let mut prev = self.eval(0.0);
        let mut sum = 0.0;
        for i in 1..samples {
            let t = i as f64 / (samples - 1) as f64;
            let next = self.eval(t);
            sum += d_prime(&prev, &next).expect("same dimension");
            prev = next;
        }
        sum
    }
}

fn build_path(p: &OrderedConfig, q: &OrderedConfig, arc: DirectionArc) -> Result<AltPath, Error> {
    let cp = to_alt(p)?;
    let cq = to_alt(q)?;
    Ok(AltPath {
        mid_from: cp.midpoint,
        mid_to: cq.midpoint,
        radius_from: cp.radius,
        radius_to: cq.radius,
        arc,
    })
}

/// The unique product-metric geodesic between pairs with non-antipodal
/// directions. Antipodal directions are rejected; use [`plan_alt`].
pub fn geodesic_alt(p: &OrderedConfig, q: &OrderedConfig) -> Result<AltPath, Error> {
    if p.dim() != q.dim() {
        return Err(Error::DimensionMismatch {
            expected: p.dim(),
            got: q.dim(),
        });
    }
    let cp = to_alt(p)?;
    let cq = to_alt(q)?;
    let alpha = sphere_angle(&cp.direction, &cq.direction);
    if alpha >= std::f64::consts::PI - TOL_ANTIPODAL {
        return Err(Error::AntipodalDirections);
    }
    let arc = if alpha <= 1e-12 {
        DirectionArc::Fixed(cp.direction)
    } else {
        DirectionArc::Slerp {
            from: cp.direction,
            to: cq.direction,
            alpha,
        }
    };
    build_path(p, q, arc)
}

/// Total geodesic selector: the unique geodesic when directions are not
/// antipodal, otherwise the great semicircle through the planner's vector
/// field at `ĥ`. Never fails on distinct-point inputs, witnessing geodesic
/// completeness.
pub fn plan_alt(p: &OrderedConfig, q: &OrderedConfig) -> Result<AltPath, Error> {
    match geodesic_alt(p, q) {
        Err(Error::AntipodalDirections) => {
            let cp = to_alt(p)?;
            let via = default_transverse(&cp.direction);
            build_path(p, q, DirectionArc::Semicircle { from: cp.direction, via })
        }
        other => other,
    }
}
