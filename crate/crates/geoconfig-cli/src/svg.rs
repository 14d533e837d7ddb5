//! Deterministic SVG rendering of plane figures: axes, endpoint markers,
//! component trajectories, and contact circles.
//!
//! Math coordinates are used as-is inside a `scale(1,-1)` group so the
//! y-axis points up; numbers are written with four decimals, making the
//! output byte-stable for identical inputs.

use std::fmt::Write as _;

struct Polyline {
    points: Vec<(f64, f64)>,
    color: String,
    width: f64,
    dashed: bool,
}

/// A drawable scene in math coordinates.
#[derive(Default)]
pub struct Scene {
    polylines: Vec<Polyline>,
    circles: Vec<(f64, f64, f64)>,
    markers: Vec<(f64, f64)>,
    labels: Vec<(f64, f64, String)>,
}

fn fmt(v: f64) -> String {
    // Normalize negative zero so output bytes do not depend on rounding
    // direction.
    let v = if v == 0.0 { 0.0 } else { v };
    format!("{v:.4}")
}

impl Scene {
    pub fn polyline(&mut self, points: Vec<(f64, f64)>, color: &str, width: f64, dashed: bool) {
        self.polylines.push(Polyline {
            points,
            color: color.to_string(),
            width,
            dashed,
        });
    }

    pub fn circle(&mut self, cx: f64, cy: f64, r: f64) {
        self.circles.push((cx, cy, r));
    }

    pub fn marker(&mut self, x: f64, y: f64) {
        self.markers.push((x, y));
    }

    pub fn label(&mut self, x: f64, y: f64, text: &str) {
        self.labels.push((x, y, text.to_string()));
    }

    fn bounds(&self) -> (f64, f64, f64, f64) {
        let mut min_x = f64::INFINITY;
        let mut min_y = f64::INFINITY;
        let mut max_x = f64::NEG_INFINITY;
        let mut max_y = f64::NEG_INFINITY;
        let mut take = |x: f64, y: f64, pad: f64| {
            min_x = min_x.min(x - pad);
            min_y = min_y.min(y - pad);
            max_x = max_x.max(x + pad);
            max_y = max_y.max(y + pad);
        };
        for line in &self.polylines {
            for &(x, y) in &line.points {
                take(x, y, 0.0);
            }
        }
        for &(cx, cy, r) in &self.circles {
            take(cx, cy, r);
        }
        for &(x, y) in &self.markers {
            take(x, y, 0.3);
        }
        for (x, y, _) in &self.labels {
            take(*x, *y, 0.5);
        }
        if !min_x.is_finite() {
            (0.0, 0.0, 1.0, 1.0)
        } else {
            (min_x, min_y, max_x, max_y)
        }
    }

    /// Renders the scene to a standalone SVG 1.1 document with the viewBox
    /// fitted to the data plus a 10% margin.
    pub fn render(&self) -> String {
        let (min_x, min_y, max_x, max_y) = self.bounds();
        let margin = 0.1 * (max_x - min_x).max(max_y - min_y).max(1.0);
        let vb_x = min_x - margin;
        let vb_w = (max_x - min_x) + 2.0 * margin;
        let vb_h = (max_y - min_y) + 2.0 * margin;
        // The scale(1,-1) group maps math y to SVG -y.
        let vb_y = -(max_y + margin);

        let mut out = String::new();
        let _ = writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="640" height="640" viewBox="{} {} {} {}">"#,
            fmt(vb_x),
            fmt(vb_y),
            fmt(vb_w),
            fmt(vb_h)
        );
        let _ = writeln!(out, r#"<g transform="scale(1,-1)" fill="none">"#);

        // Axes through the origin, clipped to the data bounds.
        let axis_w = fmt(0.005 * vb_w.max(vb_h));
        let _ = writeln!(
            out,
            r#"<line x1="{}" y1="0" x2="{}" y2="0" stroke="gray" stroke-width="{axis_w}"/>"#,
            fmt(min_x),
            fmt(max_x)
        );
        let _ = writeln!(
            out,
            r#"<line x1="0" y1="{}" x2="0" y2="{}" stroke="gray" stroke-width="{axis_w}"/>"#,
            fmt(min_y),
            fmt(max_y)
        );

        for (cx, cy, r) in &self.circles {
            let _ = writeln!(
                out,
                r#"<circle cx="{}" cy="{}" r="{}" stroke="black" stroke-width="{}"/>"#,
                fmt(*cx),
                fmt(*cy),
                fmt(*r),
                fmt(0.008 * vb_w.max(vb_h))
            );
        }

        for line in &self.polylines {
            let coords: Vec<String> = line
                .points
                .iter()
                .map(|(x, y)| format!("{},{}", fmt(*x), fmt(*y)))
                .collect();
            let dash = if line.dashed {
                format!(r#" stroke-dasharray="{} {}""#, fmt(0.4), fmt(0.25))
            } else {
                String::new()
            };
            let _ = writeln!(
                out,
                r#"<polyline points="{}" stroke="{}" stroke-width="{}"{}/>"#,
                coords.join(" "),
                line.color,
                fmt(line.width),
                dash
            );
        }

        for (x, y) in &self.markers {
            let _ = writeln!(
                out,
                r#"<circle cx="{}" cy="{}" r="{}" fill="black"/>"#,
                fmt(*x),
                fmt(*y),
                fmt(0.012 * vb_w.max(vb_h))
            );
        }
        let _ = writeln!(out, "</g>");

        // Labels live outside the flipped group so the glyphs stay upright.
        for (x, y, text) in &self.labels {
            let _ = writeln!(
                out,
                r#"<text x="{}" y="{}" font-family="serif" font-size="{}" fill="black">{}</text>"#,
                fmt(*x),
                fmt(-*y),
                fmt(0.045 * vb_w.max(vb_h)),
                text
            );
        }
        out.push_str("</svg>\n");
        out
    }
}
