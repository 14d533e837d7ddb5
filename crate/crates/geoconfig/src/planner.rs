//! Geodesic motion-planning rules: partitions of the query space into
//! regions, each carrying a continuous geodesic-valued rule.
//!
//! Ordered space: the antiparallel queries form region 0 and get their
//! transverse direction `w` from a tangent vector field on the unit sphere
//! (a global field for even `n`; for odd `n` a field on the punctured
//! sphere plus a fixed fallback on the axis-aligned set `Z`). All other
//! queries have a unique geodesic and form one region.
//!
//! Unordered space: queries with non-orthogonal separation directions have
//! a strictly better pairing (region 0). Orthogonal queries are split by an
//! orientation-transport rule: optimal counts for `n = 2` (one region,
//! quarter-turn transport) and `n = 3` (three regions, indexed by the first
//! salient coordinate of the cross product of the two directions); for
//! `n > 3` a correct but possibly non-optimal sign-canonical scheme indexed
//! by the first salient coordinates of the two directions.

use serde::{Deserialize, Serialize};

use crate::ordered::{self, GeodesicClass, GeodesicPath};
use crate::unordered::{self, Pairing, UnorderedConfig, UnorderedPath};
use crate::vecgeo::{OrderedConfig, VecN};
use crate::Error;

/// Angular tolerance for membership in the axis-aligned set `Z`
/// (measured through the transverse component of the unit axis).
pub const TOL_AXIS: f64 = 1e-9;

/// Salience threshold for "first nonzero coordinate" rules on unit vectors.
const TOL_SALIENT: f64 = 1e-12;

/// Which query space a region belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Space {
    OrderedF0,
    UnorderedC,
}

/// Identifier of the partition cell a query falls in.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlannerRegion {
    pub space: Space,
    pub region_id: u32,
    pub descriptor: String,
}

/// Unit tangent field on the sphere for even dimensions:
/// `(x₁, x₂, x₃, x₄, …) ↦ (−x₂, x₁, −x₄, x₃, …)`.
///
/// `V(x)·x = 0` exactly and `‖V(x)‖ = ‖x‖`.
pub fn tangent_field_even(x: &VecN) -> VecN {
    let n = x.dim();
    assert!(n.is_multiple_of(2), "even-dimension field");
    let mut coords = Vec::with_capacity(n);
    for i in (0..n).step_by(2) {
        coords.push(-x[i + 1]);
        coords.push(x[i]);
    }
    VecN::new(coords).expect("same dimension")
}

/// Unit tangent field on the sphere punctured at `±e₁` (odd dimensions):
/// `V(x) = normalize(e₁ − (e₁·x)x)`.
pub fn tangent_field_odd_punctured(x: &VecN) -> Result<VecN, Error> {
    let e1 = VecN::basis(x.dim(), 0);
    let tangent = &e1 - &x.scale(e1.dot(x));
    tangent.normalized().map_err(|_| Error::ZeroVector)
}

/// Whether the unit axis is aligned with `±e₁` within [`TOL_AXIS`],
/// measured through its transverse component.
fn is_axis_aligned(unit_axis: &VecN) -> bool {
    let e1 = VecN::basis(unit_axis.dim(), 0);
    let transverse = unit_axis - &e1.scale(e1.dot(unit_axis));
    transverse.norm() <= TOL_AXIS
}

/// The planner's transverse direction for an antiparallel query with unit
/// axis `hhat`: the even field, or for odd `n` the punctured field away
/// from the axis-aligned set and `e₂` on it.
pub fn default_transverse(hhat: &VecN) -> VecN {
    if hhat.dim().is_multiple_of(2) {
        tangent_field_even(hhat)
    } else if is_axis_aligned(hhat) {
        VecN::basis(hhat.dim(), 1)
    } else {
        tangent_field_odd_punctured(hhat).expect("axis not at the puncture")
    }
}

/// Region of an ordered query. Region 1 holds the unique-geodesic queries;
/// region 0 the antiparallel ones (minus, for odd `n`, the axis-aligned
/// set `Z`, which is region 2).
pub fn region_ordered(p: &OrderedConfig, q: &OrderedConfig) -> Result<PlannerRegion, Error> {
    let class = ordered::classify(p, q)?;
    let region = match class {
        GeodesicClass::TypeA | GeodesicClass::TypeB { .. } => PlannerRegion {
            space: Space::OrderedF0,
            region_id: 1,
            descriptor: "E1: unique geodesic (linear or single boundary arc)".into(),
        },
        GeodesicClass::TypeC { .. } => {
            let (h, _) = crate::vecgeo::halving_data(p);
            let hhat = h.normalized()?;
            if p.dim() % 2 == 1 && is_axis_aligned(&hhat) {
                PlannerRegion {
                    space: Space::OrderedF0,
                    region_id: 2,
                    descriptor: "Z: axis-aligned antiparallel pair, fixed transverse e2".into(),
                }
            } else {
                let field = if p.dim().is_multiple_of(2) {
                    "rotating tangent field"
                } else {
                    "punctured-sphere tangent field"
                };
                PlannerRegion {
                    space: Space::OrderedF0,
                    region_id: 0,
                    descriptor: format!("E0: antiparallel pair, {field}"),
                }
            }
        }
    };
    Ok(region)
}

/// The planner's geodesic for an ordered query: the unique geodesic when
/// one exists, otherwise the family member selected by the vector fields.
pub fn plan_ordered(p: &OrderedConfig, q: &OrderedConfig) -> Result<GeodesicPath, Error> {
    match ordered::classify(p, q)? {
        GeodesicClass::TypeA | GeodesicClass::TypeB { .. } => ordered::geodesic(p, q, None),
        GeodesicClass::TypeC { .. } => {
            let (h, _) = crate::vecgeo::halving_data(p);
            let w = default_transverse(&h.normalized()?);
            ordered::geodesic(p, q, Some(&w))
        }
    }
}

/// Index of the first coordinate of a unit vector exceeding the salience
/// threshold (one always exists).
fn first_salient_index(unit: &VecN) -> usize {
    for i in 0..unit.dim() {
        if unit[i].abs() > TOL_SALIENT {
            return i;
        }
    }
    unit.dim() - 1
}

/// Cross product of two 3-vectors.
fn cross3(a: &VecN, b: &VecN) -> VecN {
    VecN::new(vec![
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ])
    .expect("3d")
}

/// The pairing an orthogonal (tie) query receives from the region's
/// orientation-transport rule, on canonical representatives.
fn tie_pairing(e: &VecN, f: &VecN) -> Pairing {
    let n = e.dim();
    if n == 2 {
        // Quarter-turn transport: couple the orientations so that the
        // rotation from e to f is the positive quarter turn.
        let det = e[0] * f[1] - e[1] * f[0];
        if det > 0.0 {
            Pairing::Identity
        } else {
            Pairing::Swapped
        }
    } else if n == 3 {
        let g = cross3(e, f);
        let i = first_salient_index(&g.normalized().expect("independent directions"));
        if g[i] > 0.0 {
            Pairing::Identity
        } else {
            Pairing::Swapped
        }
    } else {
        // Sign-canonical transport: orient each direction so its first
        // salient coordinate is positive, then couple the positive ends.
        let i = first_salient_index(e);
        let j = first_salient_index(f);
        if e[i].signum() == f[j].signum() {
            Pairing::Identity
        } else {
            Pairing::Swapped
        }
    }
}

/// Region of an unordered query. Region 0 holds the queries with a
/// strictly better pairing; the orthogonal remainder is split by the
/// transport rule in use for the dimension.
pub fn region_unordered(
    up: &UnorderedConfig,
    uq: &UnorderedConfig,
) -> Result<PlannerRegion, Error> {
    let pairing = unordered::best_pairing(up, uq)?;
    if pairing != Pairing::Tie {
        return Ok(PlannerRegion {
            space: Space::UnorderedC,
            region_id: 0,
            descriptor: "E0: strictly better pairing (sign of separation dot)".into(),
        });
    }
    let e = up.separation().normalized()?;
    let f = uq.separation().normalized()?;
    let n = e.dim();
    let (region_id, descriptor) = if n == 2 {
        (1, "orthogonal lines: quarter-turn transport".to_string())
    } else if n == 3 {
        let g = cross3(&e, &f).normalized().expect("independent directions");
        let i = first_salient_index(&g);
        (
            1 + i as u32,
            format!("orthogonal lines: normal-axis transport (axis {})", i + 1),
        )
    } else {
        let i = first_salient_index(&e);
        let j = first_salient_index(&f);
        (
            1 + (i * n + j) as u32,
            format!(
                "orthogonal lines: sign-canonical transport (axes {}, {})",
                i + 1,
                j + 1
            ),
        )
    };
    Ok(PlannerRegion {
        space: Space::UnorderedC,
        region_id,
        descriptor,
    })
}

/// The planner's linear geodesic for an unordered query: the strictly
/// better pairing when one exists, otherwise the pairing chosen by the
/// region's orientation-transport rule.
pub fn plan_unordered(
    up: &UnorderedConfig,
    uq: &UnorderedConfig,
) -> Result<UnorderedPath, Error> {
    let pairing = match unordered::best_pairing(up, uq)? {
        Pairing::Tie => {
            let e = up.separation().normalized()?;
            let f = uq.separation().normalized()?;
            tie_pairing(&e, &f)
        }
        decided => decided,
    };
    unordered::geodesic_unordered(up, uq, Some(pairing))
}
