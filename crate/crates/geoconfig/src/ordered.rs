//! Classification of a query pair `(P, Q)` in the clearance-constrained
//! ordered space and construction of its minimal geodesic(s) in closed form.
//!
//! With `h, k` the half-differences and `A, B` the midpoints of the two
//! configurations, the minimal gap `δ` along the linear interpolation
//! decides the shape of the geodesic:
//!
//! - `δ ≥ 2`: the linear path is the unique geodesic (type a);
//! - `0 < δ ≤ 2`: the unique geodesic is linear–boundary-arc–linear,
//!   through contact configurations determined by unit vectors `u, v`
//!   solving `h·u = 1`, `k·v = 1` with minimal `‖u − v‖` (type b);
//! - `δ = 0` (h, k antiparallel): a family of equal-length geodesics, one
//!   for each unit direction `w ⟂ h` (type c).

use crate::vecgeo::{
    config_distance, halving_data, min_gap_along, BoundaryPoint, OrderedConfig, VecN,
};
use crate::Error;

/// Classification tolerance on `δ` and `δ − 2`. Queries within the
/// tolerance of a seam are assigned deterministically; the constructions
/// agree at the seams so this is safe.
pub const TOL_CLASS: f64 = 1e-9;

/// Scale-invariant parallelism threshold on `HK − D²` relative to `HK`.
pub const TOL_PAR: f64 = 1e-10;

/// Tolerance below which an endpoint counts as lying on the boundary
/// (`‖h‖ = 1`), triggering the constant-leg shortcut.
const TOL_BOUNDARY: f64 = 1e-12;

/// Derived scalars and vectors for a query pair.
#[derive(Clone, Debug)]
pub struct PairGeometry {
    /// Half-difference `(a′ − a)/2` of the start configuration.
    pub h: VecN,
    /// Half-difference `(b′ − b)/2` of the goal configuration.
    pub k: VecN,
    /// Midpoint of the start configuration.
    pub mid_p: VecN,
    /// Midpoint of the goal configuration.
    pub mid_q: VecN,
    /// `H = ‖h‖²` (at least 1 by clearance).
    pub h_sq: f64,
    /// `K = ‖k‖²`.
    pub k_sq: f64,
    /// `D = h·k`.
    pub hk: f64,
    /// `S₀ = √(H − 1)`, slack of the start pair against the boundary.
    pub s0: f64,
    /// `S₁ = √(K − 1)`.
    pub s1: f64,
    /// Minimal gap `δ` between the components along the linear path.
    pub delta: f64,
}

impl PairGeometry {
    pub fn dim(&self) -> usize {
        self.h.dim()
    }

    /// Scale-invariant test for parallel half-differences
    /// (Cauchy–Schwarz equality: `HK − D² ≈ 0`).
    pub fn is_parallel(&self) -> bool {
        self.h_sq * self.k_sq - self.hk * self.hk <= TOL_PAR * self.h_sq * self.k_sq
    }

    /// Antiparallel half-differences: the type-c condition.
    pub fn is_antiparallel(&self) -> bool {
        self.is_parallel() && self.hk < 0.0
    }
}

/// Which closed form applies to the contact angle `β`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BetaMode {
    /// `h` and `k` independent: unique `u, v`.
    NonParallel,
    /// `h` and `k` antiparallel: the `w`-family.
    Parallel,
}

/// Result of classifying a query pair.
#[derive(Clone, Debug)]
pub enum GeodesicClass {
    /// `δ ≥ 2`: the linear path is the unique geodesic.
    TypeA,
    /// `0 < δ ≤ 2`: unique geodesic through the contact configurations
    /// `(x − u, x + u)` and `(y − v, y + v)`.
    TypeB {
        u: VecN,
        v: VecN,
        beta: f64,
        x: VecN,
        y: VecN,
    },
    /// `δ = 0`: one geodesic per unit `w` orthogonal to `h`; the field
    /// stores an orthonormal basis of that subspace.
    TypeC { perp_basis: Vec<VecN> },
}

impl GeodesicClass {
    pub fn tag(&self) -> &'static str {
        match self {
            GeodesicClass::TypeA => "a",
            GeodesicClass::TypeB { .. } => "b",
            GeodesicClass::TypeC { .. } => "c",
        }
    }
}

/// A geodesic arc inside the clearance boundary: the midpoint moves
/// linearly from `x` to `y` while the contact direction rotates from `u`
/// to `v` through the angle `alpha` along the great circle.
#[derive(Clone, Debug)]
pub struct BoundaryArc {
    pub x: VecN,
    pub y: VecN,
    pub u: VecN,
    pub v: VecN,
    pub alpha: f64,
}

impl BoundaryArc {
    /// Builds the arc, computing `alpha` as the angle between `u` and `v`.
    /// Rejects non-unit directions and the antipodal case `alpha = π`.
    pub fn new(x: VecN, y: VecN, u: VecN, v: VecN) -> Result<Self, Error> {
        for dir in [&u, &v] {
            let norm = dir.norm();
            if (norm - 1.0).abs() > 1e-9 {
                return Err(Error::NotUnit { norm });
            }
        }
        let alpha = angle_between(&u, &v);
        if alpha >= std::f64::consts::PI {
            return Err(Error::AngleOutOfRange { alpha });
        }
        Ok(Self { x, y, u, v, alpha })
    }

    /// Contact direction at parameter `t`, the spherical interpolation of
    /// `u` and `v`; constant when `alpha = 0`.
    pub fn direction_at(&self, t: f64) -> VecN {
        if self.alpha <= 1e-12 {
            return self.u.clone();
        }
        let s = self.alpha.sin();
        VecN::combination(&[
            (((1.0 - t) * self.alpha).sin() / s, &self.u),
            ((t * self.alpha).sin() / s, &self.v),
        ])
    }

    /// The boundary configuration at parameter `t`.
    pub fn eval(&self, t: f64) -> OrderedConfig {
        let center = self.x.lerp(&self.y, t);
        let dir = self.direction_at(t);
        OrderedConfig::new(&center - &dir, &center + &dir).expect("dims match")
    }

    /// Closed-form length `√(2(‖x − y‖² + α²))`.
    pub fn length(&self) -> f64 {
        (2.0 * ((&self.x - &self.y).norm_sq() + self.alpha * self.alpha)).sqrt()
    }
}

/// One piece of a composite geodesic.
#[derive(Clone, Debug)]
pub enum PathSegment {
    Linear { from: OrderedConfig, to: OrderedConfig },
    Arc(BoundaryArc),
}

impl PathSegment {
    pub fn eval(&self, t: f64) -> OrderedConfig {
        match self {
            PathSegment::Linear { from, to } => from.lerp(to, t),
            PathSegment::Arc(arc) => arc.eval(t),
        }
    }

    pub fn length(&self) -> f64 {
        match self {
            PathSegment::Linear { from, to } => {
                config_distance(from, to).expect("same dimension")
            }
            PathSegment::Arc(arc) => arc.length(),
        }
    }
}

/// A piecewise geodesic with a constant-speed evaluator.
///
/// Segment time shares are proportional to segment lengths, so `eval` is
/// parametrized proportionally to arclength across the whole path.
#[derive(Clone, Debug)]
pub struct GeodesicPath {
    segments: Vec<PathSegment>,
    seg_lengths: Vec<f64>,
    total_length: f64,
    class_tag: &'static str,
}

impl GeodesicPath {
    fn from_segments(segments: Vec<PathSegment>, class_tag: &'static str) -> Self {
        let seg_lengths: Vec<f64> = segments.iter().map(PathSegment::length).collect();
        let total_length = seg_lengths.iter().sum();
        Self {
            segments,
            seg_lengths,
            total_length,
            class_tag,
        }
    }

    pub fn total_length(&self) -> f64 {
        self.total_length
    }

    pub fn segments(&self) -> &[PathSegment] {
        &self.segments
    }

    /// `"a"`, `"b"`, or `"c"`.
    pub fn class_tag(&self) -> &'static str {
        self.class_tag
    }

    /// Constant-speed evaluation; `t` is clamped to `[0, 1]` and the
    /// endpoints are returned exactly.
    pub fn eval(&self, t: f64) -> OrderedConfig {
        let t = t.clamp(0.0, 1.0);
        if self.total_length <= 0.0 || t == 0.0 {
            return self.segments[0].eval(0.0);
        }
        if t == 1.0 {
            return self.segments.last().unwrap().eval(1.0);
        }
        let target = t * self.total_length;
        let mut acc = 0.0;
        for (seg, &len) in self.segments.iter().zip(&self.seg_lengths) {
            if len > 0.0 && target <= acc + len {
                return seg.eval((target - acc) / len);
            }
            acc += len;
        }
        self.segments.last().unwrap().eval(1.0)
    }

    /// Polyline approximation of the length from `samples` evaluations.
    pub fn polyline_length(&self, samples: usize) -> f64 {
        assert!(samples >= 2);
        let mut prev = self.eval(0.0);
        let mut sum = 0.0;
        for i in 1..samples {
            let t = i as f64 / (samples - 1) as f64;
            let next = self.eval(t);
            sum += config_distance(&prev, &next).expect("same dimension");
            prev = next;
        }
        sum
    }
}

/// Angle between unit vectors as `2·atan2(‖u−v‖, ‖u+v‖)`; accurate at both
/// ends of the range, unlike the clamped arccosine.
fn angle_between(u: &VecN, v: &VecN) -> f64 {
    2.0 * (u - v).norm().atan2((u + v).norm())
}

/// Computes the derived scalars of a query pair, including the minimal
/// linear-path gap `δ`.
///
/// `δ² = 4·min(H, K)` when `h = k` or `min(H, K) ≤ D` (the quadratic gap
/// attains its minimum at an endpoint); otherwise
/// `δ² = 4(HK − D²)/(H + K − 2D)`.
pub fn pair_geometry(p: &OrderedConfig, q: &OrderedConfig) -> Result<PairGeometry, Error> {
    if p.dim() != q.dim() {
        return Err(Error::DimensionMismatch {
            expected: p.dim(),
            got: q.dim(),
        });
    }
    p.ensure_clearance()?;
    q.ensure_clearance()?;

    let (h, mid_p) = halving_data(p);
    let (k, mid_q) = halving_data(q);
    let h_sq = h.norm_sq();
    let k_sq = k.norm_sq();
    let hk = h.dot(&k);
    let s0 = (h_sq - 1.0).max(0.0).sqrt();
    let s1 = (k_sq - 1.0).max(0.0).sqrt();

    // `h = k` must take the endpoint branch: the interior formula is 0/0.
    let scale = h_sq.max(k_sq).sqrt();
    let h_eq_k = (&h - &k).norm() <= 1e-12 * scale.max(1.0);

    let delta_sq = if h_eq_k || h_sq.min(k_sq) <= hk {
        4.0 * h_sq.min(k_sq)
    } else {
        4.0 * (h_sq * k_sq - hk * hk) / (h_sq + k_sq - 2.0 * hk)
    };

    Ok(PairGeometry {
        h,
        k,
        mid_p,
        mid_q,
        h_sq,
        k_sq,
        hk,
        s0,
        s1,
        delta: delta_sq.max(0.0).sqrt(),
    })
}

/// Internal solver that also handles boundary endpoints (`‖h‖ = 1` makes
/// the start leg constant with `u = h`, and symmetrically for the goal).
fn solve_uv_inner(g: &PairGeometry) -> Result<(VecN, VecN), Error> {
    if g.is_parallel() {
        return Err(Error::ParallelDirections);
    }
    let u = if g.s0 <= TOL_BOUNDARY {
        g.h.normalized()?
    } else {
        // u = h/H + (S₀/√H)·normalize(k − (D/H)h); unit and h·u = 1 by
        // construction.
        let ell = &g.k - &g.h.scale(g.hk / g.h_sq);
        let ell_hat = ell.normalized().map_err(|_| Error::ParallelDirections)?;
        VecN::combination(&[(1.0 / g.h_sq, &g.h), (g.s0 / g.h_sq.sqrt(), &ell_hat)])
    };
    let v = if g.s1 <= TOL_BOUNDARY {
        g.k.normalized()?
    } else {
        let m = &g.h - &g.k.scale(g.hk / g.k_sq);
        let m_hat = m.normalized().map_err(|_| Error::ParallelDirections)?;
        VecN::combination(&[(1.0 / g.k_sq, &g.k), (g.s1 / g.k_sq.sqrt(), &m_hat)])
    };
    Ok((u, v))
}

/// Unique unit solutions of `h·u = 1`, `k·v = 1` with minimal `‖u − v‖`,
/// for independent `h, k` with both endpoints off the boundary.
///
/// Signals [`Error::ParallelDirections`] when `h, k` are (anti)parallel
/// (use [`solve_uv_parallel`]) and [`Error::BoundaryEndpoint`] when
/// `‖h‖ = 1` or `‖k‖ = 1` (callers apply the constant-leg shortcut, which
/// the classification entry point does automatically).
pub fn solve_uv(g: &PairGeometry) -> Result<(VecN, VecN), Error> {
    if g.is_parallel() {
        return Err(Error::ParallelDirections);
    }
    if g.s0 <= TOL_BOUNDARY || g.s1 <= TOL_BOUNDARY {
        return Err(Error::BoundaryEndpoint);
    }
    solve_uv_inner(g)
}

/// The antiparallel family: `u = h/‖h‖² + (S₀/‖h‖)w`,
/// `v = k/‖k‖² + (S₁/‖k‖)w` for a caller-chosen unit `w ⟂ h`.
pub fn solve_uv_parallel(g: &PairGeometry, w: &VecN) -> Result<(VecN, VecN), Error> {
    g.h.ensure_same_dim(w)?;
    let norm = w.norm();
    if (norm - 1.0).abs() > 1e-9 {
        return Err(Error::NotUnit { norm });
    }
    let dot = g.h.dot(w);
    if dot.abs() > 1e-9 * g.h_sq.sqrt().max(1.0) {
        return Err(Error::NotOrthogonal { dot });
    }
    let u = VecN::combination(&[(1.0 / g.h_sq, &g.h), (g.s0 / g.h_sq.sqrt(), w)]);
    let v = VecN::combination(&[(1.0 / g.k_sq, &g.k), (g.s1 / g.k_sq.sqrt(), w)]);
    Ok((u, v))
}

/// Contact angle `β ∈ [0, π)` between the optimal `u` and `v`.
///
/// Non-parallel mode: `cos β = ((S₀+S₁)√(HK−D²) + (1−S₀S₁)D)/(HK)`.
/// Parallel mode: `cos β = D/(HK) + S₀S₁/√(HK)`.
pub fn beta_of(g: &PairGeometry, mode: BetaMode) -> Result<f64, Error> {
    let hk_prod = g.h_sq * g.k_sq;
    match mode {
        BetaMode::NonParallel => {
            if g.is_parallel() {
                return Err(Error::ModeMismatch);
            }
            let root = (hk_prod - g.hk * g.hk).max(0.0).sqrt();
            let cos =
                ((g.s0 + g.s1) * root + (1.0 - g.s0 * g.s1) * g.hk) / hk_prod;
            Ok(cos.clamp(-1.0, 1.0).acos())
        }
        BetaMode::Parallel => {
            if !g.is_antiparallel() {
                return Err(Error::ModeMismatch);
            }
            let cos = g.hk / hk_prod + g.s0 * g.s1 / hk_prod.sqrt();
            Ok(cos.clamp(-1.0, 1.0).acos())
        }
    }
}

/// Contact centers
/// `x = (βA + S₀B + S₁A)/(β+S₀+S₁)`, `y = (βB + S₀B + S₁A)/(β+S₀+S₁)`.
///
/// When `β + S₀ + S₁ = 0` (both endpoints on the boundary with `β = 0`)
/// both centers collapse to the start midpoint.
pub fn contact_points(g: &PairGeometry, beta: f64) -> (VecN, VecN) {
    let denom = beta + g.s0 + g.s1;
    if denom <= 0.0 {
        return (g.mid_p.clone(), g.mid_p.clone());
    }
    let shared = VecN::combination(&[(g.s0, &g.mid_q), (g.s1, &g.mid_p)]);
    let x = VecN::combination(&[(beta / denom, &g.mid_p), (1.0 / denom, &shared)]);
    let y = VecN::combination(&[(beta / denom, &g.mid_q), (1.0 / denom, &shared)]);
    (x, y)
}

/// Orthonormal basis of the hyperplane orthogonal to `dir`.
fn orthonormal_complement(dir: &VecN) -> Vec<VecN> {
    let n = dir.dim();
    let d = dir.normalized().expect("nonzero direction");
    // Drop the axis most aligned with `d`, Gram-Schmidt the rest.
    let mut drop = 0;
    let mut best = -1.0;
    for i in 0..n {
        if d[i].abs() > best {
            best = d[i].abs();
            drop = i;
        }
    }
    let mut basis: Vec<VecN> = Vec::with_capacity(n - 1);
    for i in (0..n).filter(|&i| i != drop) {
        let mut w = VecN::basis(n, i);
        w = &w - &d.scale(d.dot(&w));
        for b in &basis {
            w = &w - &b.scale(b.dot(&w));
        }
        basis.push(w.normalized().expect("independent axis"));
    }
    basis
}

/// Classifies the query pair and computes the associated contact data.
pub fn classify(p: &OrderedConfig, q: &OrderedConfig) -> Result<GeodesicClass, Error> {
    let g = pair_geometry(p, q)?;
    classify_geometry(&g)
}

fn classify_geometry(g: &PairGeometry) -> Result<GeodesicClass, Error> {
    if g.delta >= 2.0 - TOL_CLASS {
        return Ok(GeodesicClass::TypeA);
    }
    // The scale-invariant antiparallel test subsumes `delta <= tol`; it also
    // absorbs the knife-edge band where the unique-solution formulas would
    // divide by a vanishing `HK - D²`.
    if g.is_antiparallel() || (g.delta <= TOL_CLASS && g.hk < 0.0) {
        return Ok(GeodesicClass::TypeC {
            perp_basis: orthonormal_complement(&g.h),
        });
    }
    let (u, v) = solve_uv_inner(g)?;
    let beta = beta_of(g, BetaMode::NonParallel)?;
    let (x, y) = contact_points(g, beta);
    Ok(GeodesicClass::TypeB { u, v, beta, x, y })
}

/// Wraps a boundary arc as a standalone single-segment path.
pub fn boundary_geodesic(arc: BoundaryArc) -> GeodesicPath {
    GeodesicPath::from_segments(vec![PathSegment::Arc(arc)], "b")
}

fn composite_path(
    p: &OrderedConfig,
    q: &OrderedConfig,
    u: VecN,
    v: VecN,
    x: VecN,
    y: VecN,
    tag: &'static str,
) -> Result<GeodesicPath, Error> {
    let c0 = BoundaryPoint::new(x.clone(), u.clone())?.config();
    let c1 = BoundaryPoint::new(y.clone(), v.clone())?.config();
    let arc = BoundaryArc::new(x, y, u, v)?;
    Ok(GeodesicPath::from_segments(
        vec![
            PathSegment::Linear { from: p.clone(), to: c0 },
            PathSegment::Arc(arc),
            PathSegment::Linear { from: c1, to: q.clone() },
        ],
        tag,
    ))
}

/// Constructs a minimal geodesic from `p` to `q`.
///
/// For the antiparallel class a transverse unit direction `w ⟂ h` must be
/// supplied (the planner chooses one continuously); all choices give the
/// same length.
pub fn geodesic(
    p: &OrderedConfig,
    q: &OrderedConfig,
    w_choice: Option<&VecN>,
) -> Result<GeodesicPath, Error> {
    let g = pair_geometry(p, q)?;
    match classify_geometry(&g)? {
        GeodesicClass::TypeA => Ok(GeodesicPath::from_segments(
            vec![PathSegment::Linear { from: p.clone(), to: q.clone() }],
            "a",
        )),
        GeodesicClass::TypeB { u, v, x, y, .. } => composite_path(p, q, u, v, x, y, "b"),
        GeodesicClass::TypeC { perp_basis } => {
            let w = w_choice.ok_or(Error::MissingTransverseChoice {
                subspace_dim: perp_basis.len(),
            })?;
            let (u, v) = solve_uv_parallel(&g, w)?;
            let beta = beta_of(&g, BetaMode::Parallel)?;
            let (x, y) = contact_points(&g, beta);
            composite_path(p, q, u, v, x, y, "c")
        }
    }
}

/// Closed-form minimal geodesic length.
///
/// Linear class: the straight-line distance. Otherwise
/// `√2·√(‖A − B‖² + (β + S₀ + S₁)²)`.
pub fn geodesic_length(p: &OrderedConfig, q: &OrderedConfig) -> Result<f64, Error> {
    let g = pair_geometry(p, q)?;
    match classify_geometry(&g)? {
        GeodesicClass::TypeA => config_distance(p, q),
        GeodesicClass::TypeB { beta, .. } => Ok(length_from_beta(&g, beta)),
        GeodesicClass::TypeC { .. } => {
            let beta = beta_of(&g, BetaMode::Parallel)?;
            Ok(length_from_beta(&g, beta))
        }
    }
}

pub(crate) fn length_from_beta(g: &PairGeometry, beta: f64) -> f64 {
    let mid_diff = (&g.mid_p - &g.mid_q).norm_sq();
    let s = beta + g.s0 + g.s1;
    std::f64::consts::SQRT_2 * (mid_diff + s * s).sqrt()
}

/// Self-test of the seam between the linear and arc classes: at `δ = 2`
/// the optimal directions collapse to `u = v = (S₁h + S₀k)/(S₀ + S₁)`.
pub fn convex_u_identity_check(g: &PairGeometry) -> Result<bool, Error> {
    if (g.delta - 2.0).abs() > 1e-6 {
        return Err(Error::Precondition(format!(
            "delta = {} is not within 1e-6 of 2",
            g.delta
        )));
    }
    if g.s0 + g.s1 <= 0.0 {
        return Err(Error::Precondition("S0 + S1 must be positive".into()));
    }
    let (u, v) = solve_uv_inner(g)?;
    let expected = VecN::combination(&[
        (g.s1 / (g.s0 + g.s1), &g.h),
        (g.s0 / (g.s0 + g.s1), &g.k),
    ]);
    let ok = (&u - &expected).norm() <= 1e-8 && (&u - &v).norm() <= 1e-8;
    Ok(ok)
}

/// Feasibility witness used by tests and reports: minimal gap of the
/// evaluated path at `samples` points.
pub fn path_min_gap(path: &GeodesicPath, samples: usize) -> f64 {
    min_gap_along(|t| path.eval(t), samples)
}
