//! Minimal self-contained SVG line charts.

use std::fmt::Write;
use std::path::Path;

use crate::config::read_file;
use crate::error::CliError;
use crate::run::{read_csv, write_file};

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 500.0;
const LEFT: f64 = 70.0;
const RIGHT: f64 = 150.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 55.0;
const PALETTE: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf",
];

/// Round tick positions covering `[lo, hi]`, spaced 1, 2 or 5 times a power of ten.
pub fn nice_ticks(lo: f64, hi: f64, target: usize) -> Vec<f64> {
    let span = hi - lo;
    if !(span > 0.0) || !span.is_finite() {
        return vec![lo];
    }
    let raw = span / target.max(1) as f64;
    let mag = 10f64.powf(raw.log10().floor());
    let step = [1.0, 2.0, 5.0, 10.0]
        .iter()
        .map(|m| m * mag)
        .find(|s| *s >= raw)
        .unwrap_or(10.0 * mag);
    let first = (lo / step).ceil() as i64;
    let last = (hi / step).floor() as i64;
    (first..=last).map(|k| k as f64 * step).collect()
}

/// Tick label without float noise: `0.30000000000000004` prints as `0.3`.
fn tick_label(x: f64) -> String {
    let s = format!("{:.6}", x);
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".into()
    } else {
        s.to_string()
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

/// Renders `series` against `x`. NaN values break the curve.
pub fn render_svg(title: &str, x_label: &str, x: &[f64], series: &[(&str, &[f64])]) -> String {
    let finite = |v: &[f64]| {
        v.iter()
            .copied()
            .filter(|z| z.is_finite())
            .collect::<Vec<_>>()
    };
    let xs = finite(x);
    let (x_lo, x_hi) = bounds(&xs).unwrap_or((0.0, 1.0));
    let ys: Vec<f64> = series.iter().flat_map(|(_, v)| finite(v)).collect();
    let (mut y_lo, mut y_hi) = bounds(&ys).unwrap_or((0.0, 1.0));
    y_lo = y_lo.min(0.0);
    if y_hi - y_lo < 1e-9 {
        y_hi = y_lo + 1.0;
    }
    let y_ticks = nice_ticks(y_lo, y_hi, 5);
    // Extend the y range to the enclosing round ticks.
    let step = if y_ticks.len() > 1 {
        y_ticks[1] - y_ticks[0]
    } else {
        y_hi - y_lo
    };
    // Round-off below a tick (e.g. -4e-16 under 0) must not add a whole extra interval.
    y_lo = (y_lo / step + 1e-6).floor() * step;
    y_hi = (y_hi / step - 1e-6).ceil() * step;
    let y_ticks = nice_ticks(y_lo, y_hi, 5);
    let x_ticks = nice_ticks(x_lo, x_hi, 5);

    let pw = WIDTH - LEFT - RIGHT;
    let ph = HEIGHT - TOP - BOTTOM;
    let sx = |v: f64| LEFT + (v - x_lo) / (x_hi - x_lo).max(f64::MIN_POSITIVE) * pw;
    let sy = |v: f64| TOP + ph - (v - y_lo) / (y_hi - y_lo) * ph;

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {WIDTH} {HEIGHT}" width="{WIDTH}" height="{HEIGHT}" font-family="sans-serif" font-size="13">"#
    );
    let _ = writeln!(
        s,
        r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#
    );
    let _ = writeln!(
        s,
        r#"<text x="{:.2}" y="24" text-anchor="middle" font-size="15">{}</text>"#,
        LEFT + pw / 2.0,
        escape(title)
    );

    for &t in &x_ticks {
        let px = sx(t);
        let _ = writeln!(
            s,
            r##"<line x1="{px:.2}" y1="{TOP:.2}" x2="{px:.2}" y2="{:.2}" stroke="#e6e6e6"/>"##,
            TOP + ph
        );
        let _ = writeln!(
            s,
            r#"<text x="{px:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
            TOP + ph + 18.0,
            tick_label(t)
        );
    }
    for &t in &y_ticks {
        let py = sy(t);
        let _ = writeln!(
            s,
            r##"<line x1="{LEFT:.2}" y1="{py:.2}" x2="{:.2}" y2="{py:.2}" stroke="#e6e6e6"/>"##,
            LEFT + pw
        );
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{}</text>"#,
            LEFT - 8.0,
            py + 4.0,
            tick_label(t)
        );
    }
    let _ = writeln!(
        s,
        r#"<rect x="{LEFT:.2}" y="{TOP:.2}" width="{pw:.2}" height="{ph:.2}" fill="none" stroke="black"/>"#
    );
    let _ = writeln!(
        s,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
        LEFT + pw / 2.0,
        HEIGHT - 12.0,
        escape(x_label)
    );

    for (k, (name, v)) in series.iter().enumerate() {
        let color = PALETTE[k % PALETTE.len()];
        let mut segment: Vec<String> = Vec::new();
        let flush = |seg: &mut Vec<String>, s: &mut String| {
            if seg.len() > 1 {
                let _ = writeln!(
                    s,
                    r#"<polyline fill="none" stroke="{color}" stroke-width="1.8" points="{}"/>"#,
                    seg.join(" ")
                );
            }
            seg.clear();
        };
        for (&xi, &yi) in x.iter().zip(v.iter()) {
            if xi.is_finite() && yi.is_finite() {
                segment.push(format!("{:.2},{:.2}", sx(xi), sy(yi)));
            } else {
                flush(&mut segment, &mut s);
            }
        }
        flush(&mut segment, &mut s);

        let ly = TOP + 14.0 + 22.0 * k as f64;
        let lx = LEFT + pw + 14.0;
        let _ = writeln!(
            s,
            r#"<line x1="{lx:.2}" y1="{ly:.2}" x2="{:.2}" y2="{ly:.2}" stroke="{color}" stroke-width="2.5"/>"#,
            lx + 26.0
        );
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}">{}</text>"#,
            lx + 34.0,
            ly + 4.0,
            escape(name)
        );
    }
    s.push_str("</svg>\n");
    s
}

fn bounds(v: &[f64]) -> Option<(f64, f64)> {
    let lo = v.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    (lo.is_finite() && hi.is_finite()).then_some((lo, hi))
}

/// Selects `columns` from a trajectory CSV and renders them against `tau`.
pub fn plot_csv_text(csv: &str, columns: &[String], title: &str) -> Result<String, CliError> {
    if columns.is_empty() {
        return Err(CliError::Config("no columns selected for plotting".into()));
    }
    let (header, cols) = read_csv(csv).map_err(CliError::Config)?;
    let tau = header
        .iter()
        .position(|h| h == "tau")
        .ok_or_else(|| CliError::Config("CSV has no `tau` column".into()))?;
    if cols[tau].is_empty() {
        return Err(CliError::Config("CSV has no data rows".into()));
    }
    let mut series = Vec::with_capacity(columns.len());
    for c in columns {
        let i = header.iter().position(|h| h == c).ok_or_else(|| {
            CliError::Config(format!(
                "unknown column `{c}`; available columns: {}",
                header.join(", ")
            ))
        })?;
        series.push((c.as_str(), cols[i].as_slice()));
    }
    Ok(render_svg(title, "λt", &cols[tau], &series))
}

pub fn plot_file(
    csv: &Path,
    columns: &[String],
    out: &Path,
    title: Option<&str>,
) -> Result<(), CliError> {
    let text = read_file(csv)?;
    let default_title = csv
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    let svg = plot_csv_text(&text, columns, title.unwrap_or(&default_title))?;
    write_file(out, svg.as_bytes())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ticks_are_round() {
        let labels =
            |lo, hi| -> Vec<String> { nice_ticks(lo, hi, 5).into_iter().map(tick_label).collect() };
        assert_eq!(labels(0.0, 25.0), ["0", "5", "10", "15", "20", "25"]);
        assert_eq!(labels(0.0, 1.0), ["0", "0.2", "0.4", "0.6", "0.8", "1"]);
        assert_eq!(labels(-0.013, 0.04), ["0", "0.02", "0.04"]);
        assert_eq!(labels(-0.02, 0.04), ["-0.02", "0", "0.02", "0.04"]);
        assert_eq!(tick_label(0.6000000000000001), "0.6");
    }

    #[test]
    fn svg_structure() {
        let csv = "tau,A,B\n0,0,1\n1,0.5,nan\n2,1,0.2\n3,0.7,0.1\n";
        let svg = plot_csv_text(csv, &["A".into(), "B".into()], "t").unwrap();
        assert!(svg.starts_with("<svg"));
        assert!(svg.contains(r#"viewBox="0 0 800 500""#));
        // A is one polyline, B is split by the NaN into a lone point (dropped) and a segment.
        assert_eq!(svg.matches("<polyline").count(), 2);
        assert!(svg.contains(">A</text>") && svg.contains(">B</text>"));
        assert!(svg.trim_end().ends_with("</svg>"));
    }

    #[test]
    fn column_errors() {
        let csv = "tau,A\n0,1\n";
        let err = plot_csv_text(csv, &["Z".into()], "")
            .unwrap_err()
            .to_string();
        assert!(err.contains("unknown column `Z`") && err.contains("tau, A"));
        assert!(plot_csv_text(csv, &[], "").is_err());
        assert!(plot_csv_text("tau,A\n", &["A".into()], "").is_err());
    }
}
