//! Static figure emission (SVG and TikZ) for covering certificates.
//!
//! Rendering converts exact coordinates to f64 at the last moment; the
//! figures are illustrations, never part of a proof.

use quadeuclid_core::covering::Certificate;
use quadeuclid_core::exact::ExactNumber;
use quadeuclid_core::field::FieldData;
use quadeuclid_core::hyperbola::{Branch, Pm};

use num_traits::ToPrimitive;
use std::fmt::Write;

fn approx(x: &ExactNumber) -> f64 {
    let (lo, hi) = x.bounds(60);
    let mid = (lo + hi) / quadeuclid_core::exact::rat_int(2);
    mid.to_f64().unwrap_or(f64::NAN)
}

/// Sampled polyline of one branch over `0 <= a <= 1/2`, skipping samples
/// where the radicand is negative and points far outside the picture.
fn branch_samples(field: &FieldData, branch: &Branch, n: usize) -> Vec<(f64, f64)> {
    let m = field.m() as f64;
    let m1 = field
        .m1()
        .to_f64()
        .unwrap_or(0.5);
    let mut out = Vec::new();
    for i in 0..=n {
        let a = 0.5 * i as f64 / n as f64;
        let shifted = a + branch.u as f64;
        let eps = branch.epsilon.as_i8() as f64;
        let radicand = (shifted * shifted - eps * m1) / m;
        if radicand < 0.0 {
            continue;
        }
        let theta = branch.theta.as_i8() as f64;
        let y = -(branch.v as f64) + theta * radicand.sqrt();
        if (-0.25..=0.75).contains(&y) {
            out.push((a, y));
        }
    }
    out
}

fn branch_families(cert: &Certificate) -> Vec<Branch> {
    let mut out = Vec::new();
    for &(u, v) in &cert.pairs {
        for theta in [Pm::Plus, Pm::Minus] {
            for epsilon in [Pm::Plus, Pm::Minus] {
                out.push(Branch::new(u, v, theta, epsilon));
            }
        }
    }
    out
}

/// Renders the certificate as a standalone SVG document.
pub fn svg(cert: &Certificate) -> String {
    let field = cert.field_data();
    let size = 600.0;
    let margin = 60.0;
    let scale = (size - 2.0 * margin) / 0.5;
    let fx = |x: f64| margin + x * scale;
    let fy = |y: f64| size - margin - y * scale;
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<?xml version="1.0" encoding="UTF-8"?>
<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">"#
    );
    let _ = writeln!(
        out,
        r#"<rect x="{}" y="{}" width="{}" height="{}" fill="none" stroke="black" stroke-dasharray="6 4"/>"#,
        fx(0.0),
        fy(0.5),
        0.5 * scale,
        0.5 * scale
    );
    for branch in branch_families(cert) {
        let samples = branch_samples(&field, &branch, 128);
        if samples.len() < 2 {
            continue;
        }
        let points: Vec<String> = samples
            .iter()
            .map(|(x, y)| format!("{:.2},{:.2}", fx(*x), fy(*y)))
            .collect();
        let _ = writeln!(
            out,
            r#"<polyline fill="none" stroke="steelblue" stroke-width="1" points="{}"><title>{branch}</title></polyline>"#,
            points.join(" ")
        );
    }
    for p in &cert.points {
        let (x, y) = (approx(&p.x), approx(&p.y));
        let critical = matches!(p.label, quadeuclid_core::covering::PointLabel::C(_));
        let _ = writeln!(
            out,
            r#"<circle cx="{:.2}" cy="{:.2}" r="3" fill="{}" stroke="black"/>"#,
            fx(x),
            fy(y),
            if critical { "white" } else { "black" }
        );
        let _ = writeln!(
            out,
            r#"<text x="{:.2}" y="{:.2}" font-size="11">{}</text>"#,
            fx(x) + 5.0,
            fy(y) - 5.0,
            p.label
        );
    }
    let _ = writeln!(
        out,
        r#"<text x="{}" y="{}" font-size="14">m = {}, M = {}</text>"#,
        margin,
        margin / 2.0,
        cert.m,
        cert.m1
    );
    out.push_str("</svg>\n");
    out
}

/// Renders the certificate as a standalone TikZ document.
pub fn tikz(cert: &Certificate) -> String {
    let field = cert.field_data();
    let mut out = String::new();
    out.push_str("\\documentclass[tikz]{standalone}\n\\begin{document}\n");
    let _ = writeln!(out, "\\begin{{tikzpicture}}[scale=12]");
    let _ = writeln!(out, "\\draw[dashed] (0,0) rectangle (0.5,0.5);");
    let _ = writeln!(out, "\\draw[->] (-0.05,0) -- (0.55,0) node[right] {{$a$}};");
    let _ = writeln!(out, "\\draw[->] (0,-0.05) -- (0,0.55) node[above] {{$b$}};");
    for branch in branch_families(cert) {
        let samples = branch_samples(&field, &branch, 96);
        if samples.len() < 2 {
            continue;
        }
        let coords: Vec<String> = samples
            .iter()
            .map(|(x, y)| format!("({x:.5},{y:.5})"))
            .collect();
        let _ = writeln!(out, "\\draw plot coordinates {{{}}};", coords.join(" "));
    }
    for p in &cert.points {
        let (x, y) = (approx(&p.x), approx(&p.y));
        if !(0.0..=0.5).contains(&x) || !(0.0..=0.5).contains(&y) {
            continue;
        }
        let critical = matches!(p.label, quadeuclid_core::covering::PointLabel::C(_));
        let mark = if critical { "$\\circ$" } else { "$\\bullet$" };
        let _ = writeln!(out, "\\node at ({x:.5},{y:.5}) {{{mark}}};");
        let _ = writeln!(
            out,
            "\\node[anchor=south west, font=\\tiny] at ({x:.5},{y:.5}) {{{}}};",
            p.label
        );
    }
    let _ = writeln!(out, "\\end{{tikzpicture}}");
    out.push_str("\\end{document}\n");
    out
}
