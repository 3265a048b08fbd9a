//! Minimal SVG plot of scan results: one polyline per (l, nu) curve and a
//! marker per exact point.

use std::collections::BTreeMap;
use std::fmt::Write;

use crate::commands::ScanRow;

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 480.0;
const MARGIN: f64 = 60.0;
const COLORS: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"];

pub fn render(rows: &[ScanRow], b_range: (f64, f64), title: &str) -> String {
    let energies: Vec<f64> = rows.iter().filter_map(|r| r.e).filter(|e| e.is_finite()).collect();
    let (mut e_lo, mut e_hi) = energies.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &e| (lo.min(e), hi.max(e)));
    if !e_lo.is_finite() {
        (e_lo, e_hi) = (-1.0, 0.0);
    }
    if e_hi - e_lo < 1e-12 {
        e_lo -= 0.5;
        e_hi += 0.5;
    }
    let (b_lo, b_hi) = b_range;
    let x = |b: f64| MARGIN + (b - b_lo) / (b_hi - b_lo) * (WIDTH - 2.0 * MARGIN);
    let y = |e: f64| HEIGHT - MARGIN - (e - e_lo) / (e_hi - e_lo) * (HEIGHT - 2.0 * MARGIN);

    let mut s = String::new();
    let _ = writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#);
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(s, r#"<text x="{}" y="24" font-family="sans-serif" font-size="14" text-anchor="middle">{}</text>"#, WIDTH / 2.0, escape(title));
    let (x0, x1, y0, y1) = (MARGIN, WIDTH - MARGIN, HEIGHT - MARGIN, MARGIN);
    let _ = writeln!(s, r#"<path d="M{x0} {y1} L{x0} {y0} L{x1} {y0}" fill="none" stroke="black"/>"#);
    for k in 0..=4 {
        let t = k as f64 / 4.0;
        let b = b_lo + t * (b_hi - b_lo);
        let e = e_lo + t * (e_hi - e_lo);
        let _ = writeln!(s, r#"<text x="{:.1}" y="{:.1}" font-family="sans-serif" font-size="11" text-anchor="middle">{}</text>"#, x(b), y0 + 18.0, tick(b));
        let _ = writeln!(s, r#"<text x="{:.1}" y="{:.1}" font-family="sans-serif" font-size="11" text-anchor="end">{}</text>"#, x0 - 6.0, y(e) + 4.0, tick(e));
    }
    let _ = writeln!(s, r#"<text x="{}" y="{}" font-family="sans-serif" font-size="12" text-anchor="middle">b</text>"#, WIDTH / 2.0, HEIGHT - 16.0);
    let _ = writeln!(s, r#"<text x="16" y="{}" font-family="sans-serif" font-size="12" text-anchor="middle">E</text>"#, HEIGHT / 2.0);

    let mut curves: BTreeMap<(u32, usize), Vec<(f64, f64)>> = BTreeMap::new();
    for r in rows.iter().filter(|r| r.kind == "curve") {
        if let Some(e) = r.e {
            curves.entry((r.l, r.nu)).or_default().push((r.b, e));
        }
    }
    for (k, ((l, nu), pts)) in curves.iter().enumerate() {
        let color = COLORS[k % COLORS.len()];
        let d: Vec<String> = pts.iter().map(|&(b, e)| format!("{:.2},{:.2}", x(b), y(e))).collect();
        let _ = writeln!(s, r#"<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{}"><title>l={l} nu={nu}</title></polyline>"#, d.join(" "));
    }
    for r in rows.iter().filter(|r| r.kind == "point") {
        if let Some(e) = r.e {
            let label = format!("n={} i={} l={} nu={}", r.n.unwrap_or(0), r.i.unwrap_or(0), r.l, r.nu);
            let _ = writeln!(s, r#"<circle cx="{:.2}" cy="{:.2}" r="3.5" fill="black"><title>{label}</title></circle>"#, x(r.b), y(e));
        }
    }
    s.push_str("</svg>\n");
    s
}

fn tick(v: f64) -> String {
    let s = format!("{v:.3}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" { "0".into() } else { s.to_string() }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
