//! SVG plots of diagrams on the strip.
//!
//! Floating point appears only here, as drawing coordinates.

use std::f64::consts::PI;
use std::fmt::Write;

use stripcat::{Diagram, Kind};

const SCALE: f64 = 60.0;

struct View {
    x0: f64,
    y1: f64,
}

impl View {
    fn sx(&self, x: f64) -> f64 {
        (x - self.x0) * SCALE
    }

    fn sy(&self, y: f64) -> f64 {
        (self.y1 - y) * SCALE
    }

    fn line(&self, out: &mut String, a: (f64, f64), b: (f64, f64), class: &str) {
        let _ = writeln!(
            out,
            r#"<line class="{class}" x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}"/>"#,
            self.sx(a.0),
            self.sy(a.1),
            self.sx(b.0),
            self.sy(b.1)
        );
    }
}

fn t_power(p: (f64, f64), k: i64) -> (f64, f64) {
    let mut q = p;
    for _ in 0..k.abs() {
        q = if k > 0 {
            (-PI - q.1, PI - q.0)
        } else {
            (PI - q.1, -PI - q.0)
        };
    }
    q
}

fn colour(kind: Kind) -> &'static str {
    match kind {
        Kind::CC => "#1f4e79",
        Kind::CO => "#c55a11",
        Kind::OC => "#548235",
        Kind::OO => "#7030a0",
    }
}

/// The strip with its boundary lines, the tessellation into translates of the
/// degree-zero tile with their four regions, and one disc per diagram point.
pub fn svg(d: &Diagram) -> String {
    let points: Vec<(f64, f64, Kind, String, usize)> = d
        .iter()
        .map(|(p, m)| {
            let s = p.to_strip();
            (
                s.x.to_f64(),
                s.y.to_f64(),
                p.kind,
                format!("{} {}", p, p.sheaf_name()),
                m,
            )
        })
        .collect();
    let (mut x0, mut x1, mut y0, mut y1) = (-PI, 2.0 * PI, -2.0 * PI, PI);
    for (x, y, ..) in &points {
        x0 = x0.min(x - PI);
        x1 = x1.max(x + PI);
        y0 = y0.min(y - PI);
        y1 = y1.max(y + PI);
    }
    let view = View { x0, y1 };
    let (w, h) = ((x1 - x0) * SCALE, (y1 - y0) * SCALE);
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w:.0}" height="{h:.0}" viewBox="0 0 {w:.3} {h:.3}">"#
    );
    out.push_str(
        "<style>.bd{stroke:#000;stroke-width:2}.tile{stroke:#888;stroke-width:1}\
         .region{stroke:#bbb;stroke-width:1;stroke-dasharray:4 3}</style>\n",
    );

    // The strip between l0 (x + y = -π) and l1 (x + y = π).
    let far = (x1 - x0) + (y1 - y0);
    let (lo, hi) = (x0 - far, x1 + far);
    let strip = [(lo, -PI - lo), (hi, -PI - hi), (hi, PI - hi), (lo, PI - lo)];
    let poly: Vec<String> = strip
        .iter()
        .map(|&(x, y)| format!("{:.3},{:.3}", view.sx(x), view.sy(y)))
        .collect();
    let _ = writeln!(
        out,
        r##"<polygon points="{}" fill="#f4f4f4"/>"##,
        poly.join(" ")
    );

    // Tiles are bounded by the diagonals y = x + 2πk; the degree-zero tile is
    // split into four regions by x = π/2 and y = -π/2.
    let reach = ((far / PI).ceil() as i64) + 2;
    for k in -reach..=reach {
        let c = 2.0 * PI * k as f64;
        view.line(
            &mut out,
            ((-PI - c) / 2.0, (-PI + c) / 2.0),
            ((PI - c) / 2.0, (PI + c) / 2.0),
            "tile",
        );
        for (a, b) in [
            ((PI / 2.0, -1.5 * PI), (PI / 2.0, PI / 2.0)),
            ((-PI / 2.0, -PI / 2.0), (1.5 * PI, -PI / 2.0)),
        ] {
            view.line(&mut out, t_power(a, k), t_power(b, k), "region");
        }
    }
    view.line(&mut out, (lo, -PI - lo), (hi, -PI - hi), "bd");
    view.line(&mut out, (lo, PI - lo), (hi, PI - hi), "bd");

    for (x, y, kind, label, m) in &points {
        let r = 4.0 + 2.0 * (*m as f64 - 1.0).min(4.0);
        let _ = writeln!(
            out,
            r#"<circle cx="{:.3}" cy="{:.3}" r="{r:.1}" fill="{}"><title>{label} ×{m}</title></circle>"#,
            view.sx(*x),
            view.sy(*y),
            colour(*kind)
        );
    }
    out.push_str("</svg>\n");
    out
}
