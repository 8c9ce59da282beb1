//! Static SVG figure of a two-dimensional reduced unit ball with the
//! reduced characteristic lines drawn across it.

use std::fmt::Write;

use num_traits::ToPrimitive;
use splicenorm::fibration::Hyperplane;
use splicenorm::geometry::Polytope;
use splicenorm::rational::{self, Rational};

const SIZE: f64 = 560.0;
const MARGIN: f64 = 40.0;

fn f(q: &Rational) -> f64 {
    q.to_f64().unwrap_or(0.0)
}

pub fn render(name: &str, ball: &Polytope, lines: &[Hyperplane]) -> String {
    let pts: Vec<(f64, f64)> = ball.vertices().iter().map(|v| (f(&v[0]), f(&v[1]))).collect();
    let half_x = 1.2 * pts.iter().map(|p| p.0.abs()).fold(0.0, f64::max);
    let half_y = 1.2 * pts.iter().map(|p| p.1.abs()).fold(0.0, f64::max);
    let half = half_x.max(half_y).max(f64::MIN_POSITIVE);
    let scale = SIZE / (2.0 * half);
    let w = 2.0 * half_x * scale + 2.0 * MARGIN;
    let h = 2.0 * half_y * scale + 2.0 * MARGIN;
    let (cx, cy) = (w / 2.0, h / 2.0);
    let map = |x: f64, y: f64| (cx + x * scale, cy - y * scale);

    let mut order: Vec<usize> = (0..pts.len()).collect();
    order.sort_by(|&a, &b| {
        let ta = pts[a].1.atan2(pts[a].0);
        let tb = pts[b].1.atan2(pts[b].0);
        ta.total_cmp(&tb).then(a.cmp(&b))
    });

    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w:.1}" height="{h:.1}" viewBox="0 0 {w:.1} {h:.1}">"#
    );
    let _ = writeln!(s, "<title>reduced unit ball of {}</title>", escape(name));
    let _ = writeln!(s, r##"<rect x="0" y="0" width="{w:.1}" height="{h:.1}" fill="#ffffff"/>"##);
    let _ = writeln!(
        s,
        r##"<g stroke="#bbbbbb" stroke-width="1"><line x1="0" y1="{cy:.3}" x2="{w:.3}" y2="{cy:.3}"/><line x1="{cx:.3}" y1="0" x2="{cx:.3}" y2="{h:.3}"/></g>"##
    );

    let polygon: Vec<String> = order
        .iter()
        .map(|&i| {
            let (x, y) = map(pts[i].0, pts[i].1);
            format!("{x:.3},{y:.3}")
        })
        .collect();
    let _ = writeln!(
        s,
        r##"<polygon points="{}" fill="#dde8f4" stroke="#1f4e79" stroke-width="2"/>"##,
        polygon.join(" ")
    );

    let reach = 2.0 * w.max(h);
    let label_at = 0.4 * (w.min(h) - 2.0 * MARGIN);
    for line in lines {
        if line.primitive.len() != 2 {
            continue;
        }
        let a = line.primitive[0].to_f64().unwrap_or(0.0);
        let b = line.primitive[1].to_f64().unwrap_or(0.0);
        let len = (a * a + b * b).sqrt();
        if len == 0.0 {
            continue;
        }
        // unit direction of a x + b y = 0, in screen coordinates
        let (ux, uy) = (-b / len, -a / len);
        let _ = writeln!(
            s,
            r##"<line x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}" stroke="#c0392b" stroke-width="1.5"/>"##,
            cx - ux * reach,
            cy - uy * reach,
            cx + ux * reach,
            cy + uy * reach
        );
        let _ = writeln!(
            s,
            r##"<text x="{:.3}" y="{:.3}" font-family="sans-serif" font-size="12" fill="#c0392b">{}</text>"##,
            cx + ux * label_at + 4.0,
            cy + uy * label_at - 4.0,
            escape(&format!("{}: {}", line.node, equation(&line.primitive[0], &line.primitive[1])))
        );
    }

    for (i, v) in ball.vertices().iter().enumerate() {
        let (x, y) = map(pts[i].0, pts[i].1);
        let _ = writeln!(s, r##"<circle cx="{x:.3}" cy="{y:.3}" r="4" fill="#1f4e79"/>"##);
        let _ = writeln!(
            s,
            r##"<text x="{:.3}" y="{:.3}" font-family="sans-serif" font-size="12" fill="#1f4e79">{}</text>"##,
            x + 6.0,
            y - 6.0,
            escape(&rational::format_vec(v))
        );
    }
    s.push_str("</svg>\n");
    s
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// `a x + b y = 0` with unit coefficients suppressed.
fn equation(a: &num_bigint::BigInt, b: &num_bigint::BigInt) -> String {
    use num_traits::{One, Signed, Zero};
    let term = |c: &num_bigint::BigInt, var: &str, first: bool| -> String {
        if c.is_zero() {
            return String::new();
        }
        let sign = match (c.is_negative(), first) {
            (true, true) => "-",
            (true, false) => " - ",
            (false, true) => "",
            (false, false) => " + ",
        };
        let mag = c.abs();
        if mag.is_one() {
            format!("{sign}{var}")
        } else {
            format!("{sign}{mag}{var}")
        }
    };
    let first = term(a, "x", true);
    let second = term(b, "y", first.is_empty());
    format!("{first}{second} = 0")
}
