//! Deterministic SVG rendering of a dissection: vertex `k` sits at angle
//! `90° - 360°(k-1)/m` on a circle centered in a 512x512 viewport. Outer
//! edges are dark and solid, diagonals get their own stroke color. Fixed
//! two-decimal coordinates keep the output byte-stable.

use interval_posets::Dissection;
use std::fmt::Write as _;

const SIZE: f64 = 512.0;
const CENTER: f64 = SIZE / 2.0;
const RADIUS: f64 = 210.0;
const LABEL_RADIUS: f64 = 236.0;

fn vertex(k: u32, m: usize, radius: f64) -> (f64, f64) {
    let theta = std::f64::consts::FRAC_PI_2
        - std::f64::consts::TAU * ((k - 1) as f64) / (m as f64);
    (CENTER + radius * theta.cos(), CENTER - radius * theta.sin())
}

pub fn render(d: &Dissection) -> String {
    let m = d.m();
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="512" height="512" viewBox="0 0 512 512">"#
    );
    let _ = writeln!(out, r#"  <rect width="512" height="512" fill="white"/>"#);

    let line = |a: u32, b: u32, stroke: &str, out: &mut String| {
        let (x1, y1) = vertex(a, m, RADIUS);
        let (x2, y2) = vertex(b, m, RADIUS);
        let _ = writeln!(
            out,
            r#"  <line x1="{x1:.2}" y1="{y1:.2}" x2="{x2:.2}" y2="{y2:.2}" stroke="{stroke}" stroke-width="2"/>"#
        );
    };

    for i in 1..m as u32 {
        line(i, i + 1, "#222222", &mut out);
    }
    if m > 2 {
        line(1, m as u32, "#222222", &mut out);
    }
    for dg in d.diagonals() {
        line(dg.a(), dg.b(), "#c0392b", &mut out);
    }

    for k in 1..=m as u32 {
        let (cx, cy) = vertex(k, m, RADIUS);
        let _ = writeln!(
            out,
            r##"  <circle cx="{cx:.2}" cy="{cy:.2}" r="4" fill="#222222"/>"##
        );
        let (tx, ty) = vertex(k, m, LABEL_RADIUS);
        let _ = writeln!(
            out,
            r#"  <text x="{tx:.2}" y="{ty:.2}" font-family="sans-serif" font-size="16" text-anchor="middle" dominant-baseline="central">{k}</text>"#
        );
    }
    out.push_str("</svg>\n");
    out
}
