//! Minimal hand-written SVG for point patterns, graphs and bar charts.

use std::fmt::Write as _;

use crate::point_processes::{Point, PointPattern, Window};
use crate::spatial_graphs::{ComponentStats, SpatialGraph};

const MARGIN: f64 = 10.0;

/// Maps window coordinates onto a canvas with `y` pointing up.
pub struct Canvas {
    window: Window<f64>,
    scale: f64,
    width: f64,
    height: f64,
    body: String,
}

impl Canvas {
    pub fn new(window: Window<f64>, pixels_per_unit: f64) -> Self {
        Self {
            width: window.width() * pixels_per_unit + 2.0 * MARGIN,
            height: window.height() * pixels_per_unit + 2.0 * MARGIN,
            window,
            scale: pixels_per_unit,
            body: String::new(),
        }
    }

    fn map(&self, p: &Point<f64>) -> (f64, f64) {
        (
            MARGIN + (p.x - self.window.x_min) * self.scale,
            self.height - MARGIN - (p.y - self.window.y_min) * self.scale,
        )
    }

    pub fn frame(&mut self) {
        let _ = writeln!(
            self.body,
            r##"<rect x="{MARGIN}" y="{MARGIN}" width="{:.2}" height="{:.2}" fill="none" stroke="#444" stroke-width="1"/>"##,
            self.width - 2.0 * MARGIN,
            self.height - 2.0 * MARGIN
        );
    }

    pub fn circle(&mut self, p: &Point<f64>, radius_px: f64, class: &str) {
        let (x, y) = self.map(p);
        let _ = writeln!(self.body, r#"<circle cx="{x:.2}" cy="{y:.2}" r="{radius_px}" class="{class}"/>"#);
    }

    pub fn line(&mut self, a: &Point<f64>, b: &Point<f64>, class: &str) {
        let (x1, y1) = self.map(a);
        let (x2, y2) = self.map(b);
        let _ = writeln!(
            self.body,
            r#"<line x1="{x1:.2}" y1="{y1:.2}" x2="{x2:.2}" y2="{y2:.2}" class="{class}"/>"#
        );
    }

    /// Polygon through window points.
    pub fn polygon(&mut self, vertices: &[Point<f64>], class: &str) {
        let pts: Vec<String> = vertices
            .iter()
            .map(|v| {
                let (x, y) = self.map(v);
                format!("{x:.2},{y:.2}")
            })
            .collect();
        let _ = writeln!(self.body, r#"<polygon points="{}" class="{class}"/>"#, pts.join(" "));
    }

    pub fn label(&mut self, text: &str) {
        let _ = writeln!(
            self.body,
            r#"<text x="{MARGIN}" y="{:.2}" font-family="sans-serif" font-size="12">{}</text>"#,
            MARGIN - 1.0,
            escape(text)
        );
    }

    /// Bar chart of values in `[0, 1]` in the top-right corner.
    pub fn inset_bars(&mut self, values: &[f64], class: &str) {
        let (w, h) = (120.0, 60.0);
        let x0 = self.width - MARGIN - w - 4.0;
        let y0 = MARGIN + 4.0;
        let _ = writeln!(
            self.body,
            r##"<rect x="{x0:.2}" y="{y0:.2}" width="{w}" height="{h}" fill="white" fill-opacity="0.85" stroke="#444"/>"##
        );
        let bar = w / values.len().max(1) as f64;
        for (k, v) in values.iter().enumerate() {
            let bh = v.clamp(0.0, 1.0) * (h - 4.0);
            let _ = writeln!(
                self.body,
                r#"<rect x="{:.2}" y="{:.2}" width="{:.2}" height="{bh:.2}" class="{}"/>"#,
                x0 + k as f64 * bar + 1.0,
                y0 + h - 2.0 - bh,
                bar - 2.0,
                if k == 0 { class } else { "bar" }
            );
        }
    }

    pub fn finish(self) -> String {
        format!(
            concat!(
                r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w:.0}" height="{h:.0}" viewBox="0 0 {w:.2} {h:.2}">"#,
                "\n<style>\n",
                ".pt{{fill:#1f4e79}} .site{{fill:none;stroke:#bbb;stroke-width:0.6}} ",
                ".edge{{stroke:#9aa;stroke-width:0.6}} .giant{{stroke:#d62728;stroke-width:1.2}} ",
                ".giantpt{{fill:#d62728}} .bar{{fill:#7f7f7f}} .bargiant{{fill:#d62728}}\n",
                "</style>\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n{body}</svg>\n"
            ),
            w = self.width,
            h = self.height,
            body = self.body
        )
    }
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Scatter plot of a pattern, optionally over hexagonal cell outlines.
pub fn pattern_svg(pattern: &PointPattern<f64>, cells: &[Vec<Point<f64>>], title: &str) -> String {
    let mut c = Canvas::new(pattern.window, 14.0);
    for hex in cells {
        c.polygon(hex, "site");
    }
    c.frame();
    for p in &pattern.points {
        c.circle(p, 1.8, "pt");
    }
    c.label(title);
    c.finish()
}

/// Graph drawing with the largest component highlighted and an inset of
/// the ten largest component fractions.
pub fn graph_svg(pattern: &PointPattern<f64>, graph: &SpatialGraph<f64>, stats: &ComponentStats, title: &str) -> String {
    let mut c = Canvas::new(pattern.window, 14.0);
    c.frame();
    let giant = stats.largest_label();
    let metric = graph.metric();
    for &(i, j) in graph.edges() {
        let (a, b) = (&pattern.points[i], &pattern.points[j]);
        // wrapped torus edges are drawn only when short in the plane
        if a.euclidean_distance(b) > metric.distance(a, b) + 1e-9 {
            continue;
        }
        let class = if Some(stats.labels[i]) == giant { "giant" } else { "edge" };
        c.line(a, b, class);
    }
    for (k, p) in pattern.points.iter().enumerate() {
        let class = if Some(stats.labels[k]) == giant { "giantpt" } else { "pt" };
        c.circle(p, 1.5, class);
    }
    c.inset_bars(&stats.top10_fractions, "bargiant");
    c.label(title);
    c.finish()
}
