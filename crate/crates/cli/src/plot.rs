//! SVG figure of a two-dimensional `Λ_{N,d}` in its free coordinates.

use std::fmt::Write;

use anyhow::{bail, Result};
use eigensteps::condition::{ConditionId, ConditionKind};
use eigensteps::geometry::{dimension, enumerate_vertices, witness_point, HRep, Variant};
use eigensteps::rational::{self, Rational};
use eigensteps::{special_point, Params};

const SIZE: f64 = 480.0;
const MARGIN: f64 = 60.0;

/// Facet order for the labels: lower bound, then rows from `i = d` down,
/// columns ascending with horizontal before diagonal, upper bound last.
fn label_order(id: &ConditionId) -> (u8, std::cmp::Reverse<usize>, usize, u8) {
    match id.kind {
        ConditionKind::LowerBound => (0, std::cmp::Reverse(0), 0, 0),
        ConditionKind::UpperBound => (2, std::cmp::Reverse(0), 0, 0),
        kind => (
            1,
            std::cmp::Reverse(id.i.unwrap_or(0)),
            id.n.unwrap_or(0),
            u8::from(kind == ConditionKind::Diagonal),
        ),
    }
}

fn f(r: &Rational) -> f64 {
    rational::to_f64(r)
}

fn subscript(k: usize) -> String {
    const DIGITS: [char; 10] = ['₀', '₁', '₂', '₃', '₄', '₅', '₆', '₇', '₈', '₉'];
    k.to_string()
        .chars()
        .map(|c| DIGITS[c.to_digit(10).unwrap_or(0) as usize])
        .collect()
}

/// Facet lines `H_k`, the polygon, `λ̂` and the witnesses `P_k` violating
/// exactly `H_k`.
pub fn render(p: Params) -> Result<String> {
    if dimension(p) != 2 {
        bail!("plot2d needs a two-dimensional polytope, {p} has dimension {}", dimension(p));
    }
    let h = HRep::new(p, Variant::NonRedundant)?;
    let mut facets: Vec<_> = h.inequalities.iter().collect();
    facets.sort_by_key(|q| label_order(&q.id));

    let mut verts: Vec<(f64, f64)> = enumerate_vertices(p, 64)?
        .iter()
        .map(|v| {
            let x = h.coordinates(&v.tableau).expect("vertex in hull");
            (f(&x[0]), f(&x[1]))
        })
        .collect();
    let centre = (
        verts.iter().map(|v| v.0).sum::<f64>() / verts.len() as f64,
        verts.iter().map(|v| v.1).sum::<f64>() / verts.len() as f64,
    );
    verts.sort_by(|a, b| {
        let ta = (a.1 - centre.1).atan2(a.0 - centre.0);
        let tb = (b.1 - centre.1).atan2(b.0 - centre.0);
        ta.total_cmp(&tb)
    });

    let lam = h.coordinates(&special_point(p))?;
    let mut points = vec![("λ̂".to_string(), (f(&lam[0]), f(&lam[1])))];
    for (k, q) in facets.iter().enumerate() {
        let w = witness_point(p, q.id)?;
        let x = h.coordinates(&w)?;
        points.push((format!("P{}", subscript(k + 1)), (f(&x[0]), f(&x[1]))));
    }

    let all = verts.iter().chain(points.iter().map(|(_, c)| c));
    let (mut lo_x, mut hi_x, mut lo_y, mut hi_y) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
    for &(x, y) in all {
        lo_x = lo_x.min(x);
        hi_x = hi_x.max(x);
        lo_y = lo_y.min(y);
        hi_y = hi_y.max(y);
    }
    let (lo_x, hi_x, lo_y, hi_y) = (lo_x - 1.0, hi_x + 1.0, lo_y - 1.0, hi_y + 1.0);
    let scale = (SIZE / (hi_x - lo_x)).min(SIZE / (hi_y - lo_y));
    let to_px = |(x, y): (f64, f64)| (MARGIN + (x - lo_x) * scale, MARGIN + (hi_y - y) * scale);
    let total = SIZE + 2.0 * MARGIN;

    let mut out = String::new();
    writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#)?;
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{total}" height="{total}" viewBox="0 0 {total} {total}">"#
    )?;
    writeln!(out, "  <title>Λ_{{{},{}}} in free coordinates</title>", p.n(), p.d())?;
    writeln!(out, r#"  <rect width="100%" height="100%" fill="white"/>"#)?;

    let poly: Vec<String> = verts
        .iter()
        .map(|&v| {
            let (x, y) = to_px(v);
            format!("{x:.2},{y:.2}")
        })
        .collect();
    writeln!(
        out,
        r##"  <polygon points="{}" fill="#dde8f4" stroke="none"/>"##,
        poly.join(" ")
    )?;

    for (k, q) in facets.iter().enumerate() {
        let (a, b, c) = (f(&q.coeffs[0]), f(&q.coeffs[1]), f(&q.rhs));
        // Clip a·x + b·y = c to the plotting box.
        let mut ends: Vec<(f64, f64)> = Vec::new();
        if b != 0.0 {
            for x in [lo_x, hi_x] {
                let y = (c - a * x) / b;
                if (lo_y..=hi_y).contains(&y) {
                    ends.push((x, y));
                }
            }
        }
        if a != 0.0 {
            for y in [lo_y, hi_y] {
                let x = (c - b * y) / a;
                if (lo_x..=hi_x).contains(&x) {
                    ends.push((x, y));
                }
            }
        }
        ends.dedup_by(|u, v| (u.0 - v.0).abs() < 1e-9 && (u.1 - v.1).abs() < 1e-9);
        let [s, e] = [ends[0], ends[ends.len() - 1]];
        let ((x1, y1), (x2, y2)) = (to_px(s), to_px(e));
        writeln!(
            out,
            r##"  <line x1="{x1:.2}" y1="{y1:.2}" x2="{x2:.2}" y2="{y2:.2}" stroke="#1f4e79" stroke-width="1.5"/>"##
        )?;
        // Label beside the edge, on the outer side.
        let on_edge: Vec<&(f64, f64)> = verts
            .iter()
            .filter(|v| (a * v.0 + b * v.1 - c).abs() < 1e-9)
            .collect();
        let mid = if on_edge.len() >= 2 {
            ((on_edge[0].0 + on_edge[1].0) / 2.0, (on_edge[0].1 + on_edge[1].1) / 2.0)
        } else {
            ((s.0 + e.0) / 2.0, (s.1 + e.1) / 2.0)
        };
        let norm = (a * a + b * b).sqrt();
        let (lx, ly) = to_px((mid.0 + a / norm * 0.35, mid.1 + b / norm * 0.35));
        writeln!(
            out,
            r##"  <text x="{lx:.2}" y="{ly:.2}" font-family="serif" font-size="16" fill="#1f4e79" text-anchor="middle">H{} <tspan font-size="10">{}</tspan></text>"##,
            subscript(k + 1),
            q.id
        )?;
    }

    for (name, c) in &points {
        let (x, y) = to_px(*c);
        writeln!(out, r#"  <circle cx="{x:.2}" cy="{y:.2}" r="4" fill="black"/>"#)?;
        writeln!(
            out,
            r#"  <text x="{:.2}" y="{:.2}" font-family="serif" font-size="15">{name}</text>"#,
            x + 6.0,
            y - 6.0
        )?;
    }

    let (vx, vy) = (h.free_vars[0], h.free_vars[1]);
    writeln!(
        out,
        r#"  <text x="{:.2}" y="{:.2}" font-family="serif" font-size="14" text-anchor="middle">λ_{{{},{}}}</text>"#,
        MARGIN + SIZE / 2.0,
        total - 15.0,
        vx.0,
        vx.1
    )?;
    writeln!(
        out,
        r#"  <text x="15" y="{:.2}" font-family="serif" font-size="14" transform="rotate(-90 15 {:.2})" text-anchor="middle">λ_{{{},{}}}</text>"#,
        MARGIN + SIZE / 2.0,
        MARGIN + SIZE / 2.0,
        vy.0,
        vy.1
    )?;
    writeln!(out, "</svg>")?;
    Ok(out)
}
