//! Independent brute-force verification of the closed-form geodesics:
//! discretized constrained shortest-path optimization in the
//! clearance-constrained pair space.
//!
//! A path is a polyline of waypoints in `R^{2n}` with fixed endpoints.
//! Projected gradient descent minimizes the chord-sum length, projecting
//! every waypoint back onto the feasible set `gap >= 2` after each step
//! (radial push-apart about the waypoint's midpoint). Two deterministic
//! initializations are used — samples of the closed-form geodesic and a
//! perturbed linear path — and the better result is returned.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::ordered::{geodesic_length, path_min_gap};
use crate::planner::plan_ordered;
use crate::vecgeo::{config_distance, OrderedConfig, VecN};
use crate::Error;

/// Post-projection waypoints satisfy `gap >= 2 - TOL_PROJ`.
pub const TOL_PROJ: f64 = 1e-9;

/// Default iteration budget of the descent loop.
pub const DEFAULT_ITERS: usize = 50_000;

/// Default number of waypoints for verification campaigns.
pub const DEFAULT_WAYPOINTS: usize = 400;

/// A discrete path: waypoint configurations with fixed endpoints.
#[derive(Clone, Debug)]
pub struct Waypoints {
    pub points: Vec<OrderedConfig>,
}

impl Waypoints {
    /// Chord-sum length of the polyline in `R^{2n}`.
    pub fn polyline_length(&self) -> f64 {
        self.points
            .windows(2)
            .map(|w| config_distance(&w[0], &w[1]).expect("same dimension"))
            .sum()
    }

    /// Minimal gap over all waypoints.
    pub fn min_gap(&self) -> f64 {
        self.points
            .iter()
            .map(OrderedConfig::gap)
            .fold(f64::INFINITY, f64::min)
    }
}

/// Outcome of one optimization run.
#[derive(Clone, Debug)]
pub struct OptimizeResult {
    pub waypoints: Waypoints,
    pub length: f64,
    /// False when the iteration budget ran out while the length was still
    /// moving by more than a relative 1e-10.
    pub converged: bool,
}

/// Per-instance verification report.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct InstanceReport {
    pub analytic: f64,
    pub oracle: f64,
    pub rel_gap: f64,
    pub feasible: bool,
    pub converged: bool,
    pub pass: bool,
}

/// Campaign summary over many random instances.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CampaignReport {
    pub count: usize,
    pub dim: usize,
    pub waypoints: usize,
    pub seed: u64,
    pub instances: Vec<InstanceReport>,
    pub max_rel_gap: f64,
    pub min_rel_gap: f64,
    pub all_pass: bool,
}

/// Nearest feasible configuration: pushes the two points apart radially
/// about their midpoint until the gap is 2. A coincident waypoint is
/// separated along the first axis.
pub fn project_waypoint(c: &OrderedConfig) -> OrderedConfig {
    let gap = c.gap();
    if gap >= 2.0 {
        return c.clone();
    }
    let mid = (c.first() + c.second()).scale(0.5);
    let unit = if gap > 1e-12 {
        (c.second() - c.first()).scale(1.0 / gap)
    } else {
        VecN::basis(c.dim(), 0)
    };
    OrderedConfig::new(&mid - &unit, &mid + &unit).expect("dims match")
}

fn flatten(points: &[OrderedConfig]) -> Vec<f64> {
    let mut out = Vec::with_capacity(points.len() * 2 * points[0].dim());
    for p in points {
        out.extend_from_slice(p.first().coords());
        out.extend_from_slice(p.second().coords());
    }
    out
}

fn unflatten(data: &[f64], n: usize) -> Vec<OrderedConfig> {
    data.chunks(2 * n)
        .map(|chunk| OrderedConfig::from_coords(&chunk[..n], &chunk[n..]).expect("valid coords"))
        .collect()
}

/// Chord-sum length on flat storage.
fn flat_length(data: &[f64], stride: usize) -> f64 {
    data.windows(stride * 2)
        .step_by(stride)
        .map(|w| {
            let (a, b) = w.split_at(stride);
            a.iter()
                .zip(b)
                .map(|(x, y)| (x - y) * (x - y))
                .sum::<f64>()
                .sqrt()
        })
        .sum()
}

/// Projects every waypoint (in place, flat storage) onto `gap >= 2`.
fn flat_project(data: &mut [f64], n: usize) {
    let stride = 2 * n;
    for chunk in data.chunks_mut(stride) {
        let gap_sq: f64 = (0..n).map(|i| (chunk[n + i] - chunk[i]).powi(2)).sum();
        if gap_sq >= 4.0 {
            continue;
        }
        let gap = gap_sq.sqrt();
        for i in 0..n {
            let mid = 0.5 * (chunk[i] + chunk[n + i]);
            let dir = if gap > 1e-12 {
                (chunk[n + i] - chunk[i]) / gap
            } else if i == 0 {
                1.0
            } else {
                0.0
            };
            chunk[i] = mid - dir;
            chunk[n + i] = mid + dir;
        }
    }
}

/// Rubber-band relaxation: Gauss-Seidel sweeps moving each interior
/// waypoint to the projected midpoint of its neighbors. Converges to the
/// taut feasible polyline, which the gradient phase then polishes.
fn tighten(x: &mut [f64], n: usize, max_sweeps: usize) {
    let stride = 2 * n;
    let k = x.len() / stride;
    let mut prev_len = flat_length(x, stride);
    for _ in 0..max_sweeps {
        for w in 1..k - 1 {
            let base = w * stride;
            for d in 0..stride {
                x[base + d] = 0.5 * (x[base - stride + d] + x[base + stride + d]);
            }
            flat_project(&mut x[base..base + stride], n);
        }
        let len = flat_length(x, stride);
        if (prev_len - len).abs() <= 1e-13 * prev_len.max(1.0) {
            break;
        }
        prev_len = len;
    }
}

/// Resamples a waypoint list to `m` points by fractional-index linear
/// interpolation, projecting interior points back onto the feasible set.
fn resample(points: &[OrderedConfig], m: usize) -> Vec<OrderedConfig> {
    let last = points.len() - 1;
    (0..m)
        .map(|j| {
            let pos = j as f64 * last as f64 / (m - 1) as f64;
            let base = (pos.floor() as usize).min(last - 1);
            let frac = pos - base as f64;
            let c = points[base].lerp(&points[base + 1], frac);
            if j == 0 || j == m - 1 {
                c
            } else {
                project_waypoint(&c)
            }
        })
        .collect()
}

/// Coarse-to-fine descent: the chord-shortening flow is stiff at fine
/// resolution, so the path is first optimized on a coarse subsample and
/// then refined by doubling up to the requested waypoint count.
fn descend_multires(init: Vec<OrderedConfig>, iters: usize) -> OptimizeResult {
    let k_final = init.len();
    let mut ks = Vec::new();
    let mut k = k_final;
    while k > 40 {
        ks.push(k);
        k = k / 2 + 1;
    }
    ks.push(k);
    ks.reverse();

    let mut points = resample(&init, ks[0]);
    let mut result = descend(points, iters.min(4000));
    for &level in &ks[1..] {
        points = resample(&result.waypoints.points, level);
        let budget = if level == k_final { iters } else { iters.min(4000) };
        result = descend(points, budget);
    }
    result
}

/// One descent run from the given initialization; endpoints stay fixed.
fn descend(init: Vec<OrderedConfig>, iters: usize) -> OptimizeResult {
    let n = init[0].dim();
    let stride = 2 * n;
    let k = init.len();
    let mut x = flatten(&init);
    flat_project(&mut x[stride..(k - 1) * stride], n);
    tighten(&mut x, n, 4 * k);
    let mut len = flat_length(&x, stride);
    let mut grad = vec![0.0; x.len()];
    let mut chord = vec![0.0; k - 1];
    let mut cand = x.clone();
    let mut converged = false;
    let mut stall_iters = 0usize;

    for _ in 0..iters {
        for (c, w) in chord
            .iter_mut()
            .zip(x.windows(stride * 2).step_by(stride))
        {
            let (a, b) = w.split_at(stride);
            *c = a
                .iter()
                .zip(b)
                .map(|(p, q)| (p - q) * (p - q))
                .sum::<f64>()
                .sqrt();
        }
        grad.iter_mut().for_each(|g| *g = 0.0);
        let mut grad_norm_sq = 0.0;
        for w in 1..k - 1 {
            let base = w * stride;
            let dp = chord[w - 1];
            let dn = chord[w];
            for d in 0..stride {
                let mut g = 0.0;
                if dp > 1e-15 {
                    g += (x[base + d] - x[base - stride + d]) / dp;
                }
                if dn > 1e-15 {
                    g += (x[base + d] - x[base + stride + d]) / dn;
                }
                grad[base + d] = g;
                grad_norm_sq += g * g;
            }
        }
        if grad_norm_sq <= 1e-24 {
            converged = true;
            break;
        }

        let mut step = 0.5;
        let mut improved = false;
        while step > 1e-14 {
            cand.copy_from_slice(&x);
            for i in stride..(k - 1) * stride {
                cand[i] -= step * grad[i];
            }
            flat_project(&mut cand[stride..(k - 1) * stride], n);
            let cand_len = flat_length(&cand, stride);
            if cand_len < len {
                let rel_drop = (len - cand_len) / len.max(1e-300);
                x.copy_from_slice(&cand);
                len = cand_len;
                improved = true;
                if rel_drop < 1e-12 {
                    stall_iters += 1;
                } else {
                    stall_iters = 0;
                }
                break;
            }
            step *= 0.5;
        }
        if !improved || stall_iters >= 50 {
            converged = true;
            break;
        }
    }

    OptimizeResult {
        waypoints: Waypoints { points: unflatten(&x, n) },
        length: len,
        converged,
    }
}

/// Samples the closed-form geodesic at `k` evenly spaced parameters.
fn analytic_init(p: &OrderedConfig, q: &OrderedConfig, k: usize) -> Result<Vec<OrderedConfig>, Error> {
    let path = plan_ordered(p, q)?;
    Ok((0..k)
        .map(|i| path.eval(i as f64 / (k - 1) as f64))
        .collect())
}

/// Linear interpolation with a seeded, endpoint-preserving perturbation.
fn perturbed_linear_init(
    p: &OrderedConfig,
    q: &OrderedConfig,
    k: usize,
    seed: u64,
) -> Vec<OrderedConfig> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let span = config_distance(p, q).expect("same dimension");
    let sigma = 0.05 * (1.0 + span / 4.0);
    (0..k)
        .map(|i| {
            let t = i as f64 / (k - 1) as f64;
            let base = p.lerp(q, t);
            if i == 0 || i == k - 1 {
                return base;
            }
            let bump = (std::f64::consts::PI * t).sin();
            let jitter = |v: &VecN, rng: &mut ChaCha8Rng| {
                VecN::new(
                    v.coords()
                        .iter()
                        .map(|c| c + sigma * bump * rng.gen_range(-1.0..1.0))
                        .collect(),
                )
                .expect("finite")
            };
            let first = jitter(base.first(), &mut rng);
            let second = jitter(base.second(), &mut rng);
            project_waypoint(&OrderedConfig::new(first, second).expect("dims match"))
        })
        .collect()
}

/// Optimizes a discrete path between `p` and `q`, starting from both the
/// closed-form geodesic samples and a seeded perturbed linear path, and
/// returns the better result. Deterministic given the seed.
pub fn optimize_path(
    p: &OrderedConfig,
    q: &OrderedConfig,
    k: usize,
    iters: usize,
    seed: u64,
) -> Result<OptimizeResult, Error> {
    if k < 16 {
        return Err(Error::Precondition(format!("need at least 16 waypoints, got {k}")));
    }
    if iters < 1 {
        return Err(Error::Precondition("need at least one iteration".into()));
    }
    p.ensure_clearance()?;
    q.ensure_clearance()?;
    let from_analytic = descend(analytic_init(p, q, k)?, iters);
    let from_linear = descend_multires(perturbed_linear_init(p, q, k, seed), iters);
    Ok(if from_linear.length < from_analytic.length {
        from_linear
    } else {
        from_analytic
    })
}

/// Both optimizer limits, one per initialization (used to observe distinct
/// geodesics in the antiparallel class).
pub fn optimize_path_both(
    p: &OrderedConfig,
    q: &OrderedConfig,
    k: usize,
    iters: usize,
    seed: u64,
) -> Result<(OptimizeResult, OptimizeResult), Error> {
    p.ensure_clearance()?;
    q.ensure_clearance()?;
    let from_analytic = descend(analytic_init(p, q, k)?, iters);
    let from_linear = descend_multires(perturbed_linear_init(p, q, k, seed), iters);
    Ok((from_analytic, from_linear))
}

/// Compares the closed-form length against the oracle on one instance.
///
/// `rel_gap = (oracle − analytic)/analytic`; the instance passes when the
/// oracle does not beat the closed form by more than 0.1% and the
/// closed-form path is feasible at dense sampling.
pub fn verify_instance(
    p: &OrderedConfig,
    q: &OrderedConfig,
    k: usize,
    iters: usize,
    seed: u64,
) -> Result<InstanceReport, Error> {
    let analytic = geodesic_length(p, q)?;
    let path = plan_ordered(p, q)?;
    let feasible = path_min_gap(&path, 10_000) >= 2.0 - 1e-9;
    let oracle = optimize_path(p, q, k, iters, seed)?;
    let rel_gap = if analytic > 0.0 {
        (oracle.length - analytic) / analytic
    } else {
        oracle.length
    };
    Ok(InstanceReport {
        analytic,
        oracle: oracle.length,
        rel_gap,
        feasible,
        converged: oracle.converged,
        pass: rel_gap >= -1e-3 && feasible,
    })
}

/// Gaussian sample via Box-Muller (keeps the generator portable).
fn gaussian(rng: &mut ChaCha8Rng) -> f64 {
    let u1: f64 = rng.gen_range(f64::EPSILON..1.0);
    let u2: f64 = rng.gen_range(0.0..1.0);
    (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
}

fn random_unit(n: usize, rng: &mut ChaCha8Rng) -> VecN {
    loop {
        let v = VecN::new((0..n).map(|_| gaussian(rng)).collect()).expect("finite");
        if let Ok(u) = v.normalized() {
            if v.norm() > 1e-3 {
                return u;
            }
        }
    }
}

/// A random clearance-feasible instance: midpoints in a moderate box and
/// half-separations with norm in `[1.05, 3.5]`. The mix contains linear-
/// and arc-class queries; antiparallel queries have measure zero and are
/// injected separately where needed.
pub fn random_f0_pair(n: usize, rng: &mut ChaCha8Rng) -> (OrderedConfig, OrderedConfig) {
    let config = |rng: &mut ChaCha8Rng| {
        let mid = VecN::new((0..n).map(|_| rng.gen_range(-6.0..6.0)).collect()).expect("finite");
        let radius = rng.gen_range(1.05..3.5);
        let dir = random_unit(n, rng);
        crate::vecgeo::from_halving(&dir.scale(radius), &mid)
    };
    (config(rng), config(rng))
}

/// Runs `count` deterministic random instances in parallel.
pub fn run_campaign(count: usize, n: usize, seed: u64, k: usize, iters: usize) -> CampaignReport {
    let instances: Vec<InstanceReport> = (0..count)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(i as u64));
            let (p, q) = random_f0_pair(n, &mut rng);
            verify_instance(&p, &q, k, iters, seed.wrapping_add(1000 + i as u64))
                .expect("random instances are feasible")
        })
        .collect();
    let max_rel_gap = instances.iter().map(|r| r.rel_gap).fold(f64::NEG_INFINITY, f64::max);
    let min_rel_gap = instances.iter().map(|r| r.rel_gap).fold(f64::INFINITY, f64::min);
    let all_pass = instances.iter().all(|r| r.pass);
    CampaignReport {
        count,
        dim: n,
        waypoints: k,
        seed,
        instances,
        max_rel_gap,
        min_rel_gap,
        all_pass,
    }
}
