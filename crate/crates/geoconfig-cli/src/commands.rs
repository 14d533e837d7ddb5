//! Implementations of the four subcommands. Each returns serializable
//! report data; `main` handles printing and exit codes.

use std::path::Path;

use geoconfig::altmetric;
use geoconfig::oracle::{self, CampaignReport};
use geoconfig::ordered::{self, BetaMode, GeodesicClass, GeodesicPath};
use geoconfig::planner;
use geoconfig::unordered::{self, UnorderedConfig, UnorderedPath};
use geoconfig::vecgeo::{OrderedConfig, VecN};
use geoconfig::Error;

use crate::query::{FigureFixture, QuerySpec, SpaceKind};
use crate::report::{
    round_all, round_sig, ContactReport, ErrorReport, PathReport, RegionReport, SampleConfig,
};
use crate::svg::Scene;

/// Failure carrying a machine-readable code; printed as `{code, message}`.
#[derive(Debug, Clone)]
pub struct CliError {
    pub code: String,
    pub message: String,
}

impl CliError {
    pub fn invalid_input(message: impl Into<String>) -> Self {
        Self { code: "invalid_input".into(), message: message.into() }
    }

    pub fn io(message: impl Into<String>) -> Self {
        Self { code: "io_error".into(), message: message.into() }
    }

    pub fn report(&self) -> ErrorReport {
        ErrorReport { code: self.code.clone(), message: self.message.clone() }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::DimensionMismatch { .. }
            | Error::DimensionTooSmall(_)
            | Error::NonFiniteCoordinate
            | Error::ZeroVector => "invalid_input",
            Error::ClearanceViolated { .. } => "clearance_violated",
            Error::DegeneratePair => "degenerate_pair",
            Error::NotUnit { .. } | Error::NotOrthogonal { .. } => "bad_direction",
            Error::ParallelDirections | Error::BoundaryEndpoint => "solver_precondition",
            Error::AntipodalDirections => "antipodal_directions",
            Error::MissingTransverseChoice { .. } => "missing_transverse_choice",
            Error::AngleOutOfRange { .. } => "angle_out_of_range",
            Error::ModeMismatch => "mode_mismatch",
            Error::PairingCoincidence => "pairing_coincidence",
            Error::Precondition(_) => "precondition",
        };
        Self { code: code.into(), message: e.to_string() }
    }
}

/// Contact directions `u, v`, angle, and centers `x, y` of an arc-class
/// geodesic.
type ContactData = (VecN, VecN, f64, VecN, VecN);

/// Contact data of an arc-class query, from the classification (unique
/// case) or from the supplied transverse direction (antiparallel case).
fn ordered_contact(
    p: &OrderedConfig,
    q: &OrderedConfig,
    w: Option<&VecN>,
) -> Result<Option<ContactData>, Error> {
    match ordered::classify(p, q)? {
        GeodesicClass::TypeA => Ok(None),
        GeodesicClass::TypeB { u, v, beta, x, y } => Ok(Some((u, v, beta, x, y))),
        GeodesicClass::TypeC { perp_basis } => {
            let w = match w {
                Some(w) => w.clone(),
                None => return Err(Error::MissingTransverseChoice {
                    subspace_dim: perp_basis.len(),
                }),
            };
            let g = ordered::pair_geometry(p, q)?;
            let (u, v) = ordered::solve_uv_parallel(&g, &w)?;
            let beta = ordered::beta_of(&g, BetaMode::Parallel)?;
            let (x, y) = ordered::contact_points(&g, beta);
            Ok(Some((u, v, beta, x, y)))
        }
    }
}

fn scale_vec(v: &VecN, s: f64) -> Vec<f64> {
    round_all(&v.coords().iter().map(|c| c * s).collect::<Vec<_>>())
}

fn ordered_report(
    spec: &QuerySpec,
    path: &GeodesicPath,
    contact: Option<ContactData>,
    region: Option<RegionReport>,
) -> PathReport {
    let s = spec.to_input_scale();
    let (beta, contact) = match contact {
        None => (0.0, None),
        Some((u, v, beta, x, y)) => (
            beta,
            Some(ContactReport {
                u: round_all(u.coords()),
                v: round_all(v.coords()),
                x: scale_vec(&x, s),
                y: scale_vec(&y, s),
            }),
        ),
    };
    let samples = (0..spec.samples)
        .map(|i| {
            let t = i as f64 / (spec.samples - 1) as f64;
            SampleConfig::from_config(&path.eval(t), s)
        })
        .collect();
    PathReport {
        class: path.class_tag().to_string(),
        length: round_sig(path.total_length() * s),
        beta_or_alpha: round_sig(beta),
        contact,
        samples,
        region,
    }
}

fn unordered_report(
    spec: &QuerySpec,
    path: &UnorderedPath,
    region: Option<RegionReport>,
) -> PathReport {
    let s = spec.to_input_scale();
    let samples = (0..spec.samples)
        .map(|i| {
            let t = i as f64 / (spec.samples - 1) as f64;
            SampleConfig::from_config(&path.eval_rep(t), s)
        })
        .collect();
    PathReport {
        class: "linear".into(),
        length: round_sig(path.length() * s),
        beta_or_alpha: 0.0,
        contact: None,
        samples,
        region,
    }
}

fn alt_report(spec: &QuerySpec, path: &altmetric::AltPath) -> PathReport {
    let s = spec.to_input_scale();
    let samples = (0..spec.samples)
        .map(|i| {
            let t = i as f64 / (spec.samples - 1) as f64;
            SampleConfig::from_config(&path.eval(t), s)
        })
        .collect();
    PathReport {
        class: "alt".into(),
        // Midpoint and radius legs scale; the sphere leg does not. Report
        // the input-scale product length.
        length: round_sig(path.scaled_length(s)),
        beta_or_alpha: round_sig(path.direction_angle()),
        contact: None,
        samples,
        region: None,
    }
}

fn unordered_configs(spec: &QuerySpec) -> Result<(UnorderedConfig, UnorderedConfig), CliError> {
    let (p, q) = spec.configs()?;
    Ok((
        UnorderedConfig::from_ordered(&p).map_err(CliError::from)?,
        UnorderedConfig::from_ordered(&q).map_err(CliError::from)?,
    ))
}

fn normalized_transverse(spec: &QuerySpec) -> Result<Option<VecN>, CliError> {
    match spec.transverse()? {
        None => Ok(None),
        Some(w) => Ok(Some(w.normalized().map_err(CliError::from)?)),
    }
}

/// `geodesic`: the minimal geodesic of the requested space.
pub fn cmd_geodesic(spec: &QuerySpec) -> Result<PathReport, CliError> {
    spec.validate()?;
    match spec.space {
        SpaceKind::Ordered => {
            let (p, q) = spec.configs()?;
            let w = normalized_transverse(spec)?;
            let contact = ordered_contact(&p, &q, w.as_ref()).map_err(CliError::from)?;
            let path = ordered::geodesic(&p, &q, w.as_ref()).map_err(CliError::from)?;
            Ok(ordered_report(spec, &path, contact, None))
        }
        SpaceKind::Unordered => {
            let (up, uq) = unordered_configs(spec)?;
            let path =
                unordered::geodesic_unordered(&up, &uq, None).map_err(CliError::from)?;
            Ok(unordered_report(spec, &path, None))
        }
        SpaceKind::Alt => {
            let (p, q) = spec.configs()?;
            let path = altmetric::geodesic_alt(&p, &q).map_err(CliError::from)?;
            Ok(alt_report(spec, &path))
        }
    }
}

/// `plan`: the planner's geodesic plus the region the query falls in.
pub fn cmd_plan(spec: &QuerySpec) -> Result<PathReport, CliError> {
    spec.validate()?;
    match spec.space {
        SpaceKind::Ordered => {
            let (p, q) = spec.configs()?;
            let region = planner::region_ordered(&p, &q).map_err(CliError::from)?;
            let path = planner::plan_ordered(&p, &q).map_err(CliError::from)?;
            // The planner's transverse choice for reporting contact data.
            let w = match ordered::classify(&p, &q).map_err(CliError::from)? {
                GeodesicClass::TypeC { .. } => {
                    let (h, _) = geoconfig::vecgeo::halving_data(&p);
                    Some(planner::default_transverse(
                        &h.normalized().map_err(CliError::from)?,
                    ))
                }
                _ => None,
            };
            let contact = ordered_contact(&p, &q, w.as_ref()).map_err(CliError::from)?;
            Ok(ordered_report(
                spec,
                &path,
                contact,
                Some(RegionReport::from_region(&region)),
            ))
        }
        SpaceKind::Unordered => {
            let (up, uq) = unordered_configs(spec)?;
            let region = planner::region_unordered(&up, &uq).map_err(CliError::from)?;
            let path = planner::plan_unordered(&up, &uq).map_err(CliError::from)?;
            Ok(unordered_report(
                spec,
                &path,
                Some(RegionReport::from_region(&region)),
            ))
        }
        SpaceKind::Alt => {
            let (p, q) = spec.configs()?;
            let path = altmetric::plan_alt(&p, &q).map_err(CliError::from)?;
            Ok(alt_report(spec, &path))
        }
    }
}

/// `verify`: a deterministic random campaign comparing the closed forms
/// against the brute-force optimizer.
pub fn cmd_verify(
    count: usize,
    n: usize,
    seed: u64,
    waypoints: usize,
    iters: usize,
) -> Result<CampaignReport, CliError> {
    if count < 1 {
        return Err(CliError::invalid_input("--count must be at least 1"));
    }
    if n < 2 {
        return Err(CliError::invalid_input("--n must be at least 2"));
    }
    Ok(oracle::run_campaign(count, n, seed, waypoints, iters))
}

/// What `figure` should draw.
pub enum FigureTarget {
    Fixture(FigureFixture),
    Query(Box<QuerySpec>),
}

fn fixture_query(space: SpaceKind, p2: f64) -> QuerySpec {
    QuerySpec {
        space,
        n: 2,
        p: vec![-6.0, 4.0, 6.0, p2],
        q: vec![8.0, -6.0, 2.0, -10.0],
        samples: 192,
        w: None,
        scale_eps: 2.0,
    }
}

fn draw_ordered_path(
    scene: &mut Scene,
    path: &GeodesicPath,
    samples: usize,
    scale: f64,
    dashed: bool,
) {
    let mut first = Vec::with_capacity(samples);
    let mut second = Vec::with_capacity(samples);
    for i in 0..samples {
        let t = i as f64 / (samples - 1) as f64;
        let c = path.eval(t);
        first.push((c.first()[0] * scale, c.first()[1] * scale));
        second.push((c.second()[0] * scale, c.second()[1] * scale));
    }
    scene.polyline(first, "firebrick", 0.12, dashed);
    scene.polyline(second, "royalblue", 0.12, dashed);
}

fn draw_alt_path(scene: &mut Scene, path: &altmetric::AltPath, samples: usize, scale: f64) {
    let mut first = Vec::with_capacity(samples);
    let mut second = Vec::with_capacity(samples);
    for i in 0..samples {
        let t = i as f64 / (samples - 1) as f64;
        let c = path.eval(t);
        first.push((c.first()[0] * scale, c.first()[1] * scale));
        second.push((c.second()[0] * scale, c.second()[1] * scale));
    }
    scene.polyline(first, "firebrick", 0.12, false);
    scene.polyline(second, "royalblue", 0.12, false);
}

fn mark_endpoints(scene: &mut Scene, spec: &QuerySpec) {
    let pts = [
        (spec.p[0], spec.p[1], "P1"),
        (spec.p[2], spec.p[3], "P2"),
        (spec.q[0], spec.q[1], "Q1"),
        (spec.q[2], spec.q[3], "Q2"),
    ];
    for (x, y, name) in pts {
        scene.marker(x, y);
        scene.label(x + 0.5, y + 0.4, name);
    }
}

fn contact_circles(
    scene: &mut Scene,
    spec: &QuerySpec,
    w: Option<&VecN>,
) -> Result<(), CliError> {
    let (p, q) = spec.configs()?;
    if let Some((_, _, _, x, y)) = ordered_contact(&p, &q, w).map_err(CliError::from)? {
        let s = spec.to_input_scale();
        // Unit balls at the contact centers; radius follows the input
        // clearance.
        scene.circle(x[0] * s, x[1] * s, spec.scale_eps / 2.0);
        scene.circle(y[0] * s, y[1] * s, spec.scale_eps / 2.0);
    }
    Ok(())
}

fn figure_scene(target: &FigureTarget) -> Result<Scene, CliError> {
    let mut scene = Scene::default();
    match target {
        FigureTarget::Fixture(FigureFixture::Fig1) => {
            let spec = fixture_query(SpaceKind::Ordered, 8.0);
            let (p, q) = spec.configs()?;
            let path = ordered::geodesic(&p, &q, None).map_err(CliError::from)?;
            draw_ordered_path(&mut scene, &path, spec.samples, 1.0, false);
            contact_circles(&mut scene, &spec, None)?;
            mark_endpoints(&mut scene, &spec);
        }
        FigureTarget::Fixture(FigureFixture::Fig2) => {
            let spec = fixture_query(SpaceKind::Ordered, 12.0);
            let (p, q) = spec.configs()?;
            let w = VecN::new(vec![2.0, -3.0])
                .and_then(|v| v.normalized())
                .map_err(CliError::from)?;
            let plus = ordered::geodesic(&p, &q, Some(&w)).map_err(CliError::from)?;
            let minus =
                ordered::geodesic(&p, &q, Some(&w.scale(-1.0))).map_err(CliError::from)?;
            draw_ordered_path(&mut scene, &plus, spec.samples, 1.0, false);
            draw_ordered_path(&mut scene, &minus, spec.samples, 1.0, true);
            contact_circles(&mut scene, &spec, Some(&w))?;
            mark_endpoints(&mut scene, &spec);
        }
        FigureTarget::Fixture(FigureFixture::Fig3) => {
            let spec = fixture_query(SpaceKind::Alt, 8.0);
            let (p, q) = spec.configs()?;
            let path = altmetric::plan_alt(&p, &q).map_err(CliError::from)?;
            draw_alt_path(&mut scene, &path, spec.samples, 1.0);
            // Unit balls at the endpoint positions of both components.
            for c in [&p, &q] {
                scene.circle(c.first()[0], c.first()[1], 1.0);
                scene.circle(c.second()[0], c.second()[1], 1.0);
            }
            mark_endpoints(&mut scene, &spec);
        }
        FigureTarget::Query(spec) => {
            spec.validate()?;
            if spec.n != 2 {
                return Err(CliError::invalid_input("figures only in the plane"));
            }
            let s = spec.to_input_scale();
            match spec.space {
                SpaceKind::Ordered => {
                    let (p, q) = spec.configs()?;
                    let w = normalized_transverse(spec)?;
                    let path = match &w {
                        Some(w) => ordered::geodesic(&p, &q, Some(w)),
                        None => planner::plan_ordered(&p, &q),
                    }
                    .map_err(CliError::from)?;
                    let w_used = match (&w, ordered::classify(&p, &q).map_err(CliError::from)?) {
                        (Some(w), _) => Some(w.clone()),
                        (None, GeodesicClass::TypeC { .. }) => {
                            let (h, _) = geoconfig::vecgeo::halving_data(&p);
                            Some(planner::default_transverse(
                                &h.normalized().map_err(CliError::from)?,
                            ))
                        }
                        _ => None,
                    };
                    draw_ordered_path(&mut scene, &path, spec.samples, 1.0 / s, false);
                    contact_circles(&mut scene, spec, w_used.as_ref())?;
                    mark_endpoints(&mut scene, spec);
                }
                SpaceKind::Unordered => {
                    let (up, uq) = unordered_configs(spec)?;
                    let path = planner::plan_unordered(&up, &uq).map_err(CliError::from)?;
                    let mut first = Vec::new();
                    let mut second = Vec::new();
                    for i in 0..spec.samples {
                        let t = i as f64 / (spec.samples - 1) as f64;
                        let c = path.eval_rep(t);
                        first.push((c.first()[0] / s, c.first()[1] / s));
                        second.push((c.second()[0] / s, c.second()[1] / s));
                    }
                    scene.polyline(first, "firebrick", 0.12, false);
                    scene.polyline(second, "royalblue", 0.12, false);
                    mark_endpoints(&mut scene, spec);
                }
                SpaceKind::Alt => {
                    let (p, q) = spec.configs()?;
                    let path = altmetric::plan_alt(&p, &q).map_err(CliError::from)?;
                    draw_alt_path(&mut scene, &path, spec.samples, 1.0 / s);
                    mark_endpoints(&mut scene, spec);
                }
            }
        }
    }
    Ok(scene)
}

/// `figure`: renders the scene and writes a deterministic SVG file.
pub fn cmd_figure(target: &FigureTarget, out: &Path) -> Result<String, CliError> {
    let svg = figure_scene(target)?.render();
    std::fs::write(out, svg.as_bytes())
        .map_err(|e| CliError::io(format!("cannot write {}: {e}", out.display())))?;
    Ok(svg)
}
