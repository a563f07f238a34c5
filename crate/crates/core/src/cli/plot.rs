//! Static SVG 1.1 line plots of a profile table.

use std::fmt::Write;

use super::format::{sig9, Table};

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 420.0;
const LEFT: f64 = 70.0;
const RIGHT: f64 = 20.0;
const TOP: f64 = 30.0;
const BOTTOM: f64 = 55.0;

type Series<'a> = (&'a str, Vec<(f64, Option<f64>)>);

/// One path per value column, x from `x_column`. Missing cells break the
/// path. Coordinates come straight from the table.
pub fn render_svg(
    table: &Table,
    x_column: &str,
    y_columns: &[&str],
    title: &str,
    y_label: &str,
) -> String {
    let xi = table.column_index(x_column).expect("x column");
    let series: Vec<Series> = y_columns
        .iter()
        .map(|name| {
            let yi = table.column_index(name).expect("y column");
            let pts = table
                .rows
                .iter()
                .filter_map(|r| r[xi].as_f64().map(|x| (x, r[yi].as_f64())))
                .collect();
            (*name, pts)
        })
        .collect();

    let xs: Vec<f64> = series
        .iter()
        .flat_map(|(_, p)| p.iter().map(|(x, _)| *x))
        .collect();
    let ys: Vec<f64> = series
        .iter()
        .flat_map(|(_, p)| p.iter().filter_map(|(_, y)| *y))
        .collect();
    let (x_min, x_max) = bounds(&xs, 0.0, 1.0);
    let (mut y_min, mut y_max) = bounds(&ys, 0.0, 1.0);
    y_min = y_min.min(0.0);
    if y_max <= y_min {
        y_max = y_min + 1.0;
    }
    let x_span = if x_max > x_min { x_max - x_min } else { 1.0 };
    let y_span = y_max - y_min;
    let plot_w = WIDTH - LEFT - RIGHT;
    let plot_h = HEIGHT - TOP - BOTTOM;
    let sx = |x: f64| LEFT + (x - x_min) / x_span * plot_w;
    let sy = |y: f64| TOP + (y_max - y) / y_span * plot_h;

    let mut svg = String::new();
    let _ = writeln!(svg, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        svg,
        r#"<text x="{}" y="18" font-family="sans-serif" font-size="14" text-anchor="middle">{}</text>"#,
        WIDTH / 2.0,
        escape(title)
    );
    // axes
    let _ = writeln!(
        svg,
        r#"<g class="axes" stroke="black" stroke-width="1"><line x1="{LEFT}" y1="{b}" x2="{r}" y2="{b}"/><line x1="{LEFT}" y1="{TOP}" x2="{LEFT}" y2="{b}"/></g>"#,
        b = HEIGHT - BOTTOM,
        r = WIDTH - RIGHT
    );
    for i in 0..=5 {
        let yv = y_min + y_span * i as f64 / 5.0;
        let py = sy(yv);
        let _ = writeln!(
            svg,
            r#"<line x1="{}" y1="{py:.2}" x2="{LEFT}" y2="{py:.2}" stroke="black"/><text x="{}" y="{:.2}" font-family="sans-serif" font-size="11" text-anchor="end">{}</text>"#,
            LEFT - 5.0,
            LEFT - 8.0,
            py + 4.0,
            short(yv)
        );
    }
    for xv in x_ticks(x_min, x_max) {
        let px = sx(xv);
        let _ = writeln!(
            svg,
            r#"<line x1="{px:.2}" y1="{b}" x2="{px:.2}" y2="{}" stroke="black"/><text x="{px:.2}" y="{}" font-family="sans-serif" font-size="11" text-anchor="middle">{}</text>"#,
            HEIGHT - BOTTOM + 5.0,
            HEIGHT - BOTTOM + 18.0,
            xv,
            b = HEIGHT - BOTTOM
        );
    }
    let _ = writeln!(
        svg,
        r#"<text class="x-label" x="{}" y="{}" font-family="sans-serif" font-size="12" text-anchor="middle">{}</text>"#,
        LEFT + plot_w / 2.0,
        HEIGHT - 12.0,
        escape(x_column)
    );
    let _ = writeln!(
        svg,
        r#"<text class="y-label" x="16" y="{y}" font-family="sans-serif" font-size="12" text-anchor="middle" transform="rotate(-90 16 {y})">{}</text>"#,
        escape(y_label),
        y = TOP + plot_h / 2.0
    );

    const COLOURS: [&str; 4] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd"];
    for (idx, (name, pts)) in series.iter().enumerate() {
        let mut d = String::new();
        let mut pen_down = false;
        for (x, y) in pts {
            match y {
                Some(y) => {
                    let _ = write!(
                        d,
                        "{}{:.3},{:.3} ",
                        if pen_down { "L" } else { "M" },
                        sx(*x),
                        sy(*y)
                    );
                    pen_down = true;
                }
                None => pen_down = false,
            }
        }
        let _ = writeln!(
            svg,
            r#"<path class="profile" data-series="{}" d="{}" fill="none" stroke="{}" stroke-width="1.8"/>"#,
            escape(name),
            d.trim_end(),
            COLOURS[idx % COLOURS.len()]
        );
        for (x, y) in pts {
            if let Some(y) = y {
                let _ = writeln!(
                    svg,
                    r#"<circle cx="{:.3}" cy="{:.3}" r="2.2" fill="{}" data-x="{}" data-y="{}"/>"#,
                    sx(*x),
                    sy(*y),
                    COLOURS[idx % COLOURS.len()],
                    x,
                    sig9(*y)
                );
            }
        }
    }
    svg.push_str("</svg>\n");
    svg
}

fn bounds(values: &[f64], lo_default: f64, hi_default: f64) -> (f64, f64) {
    if values.is_empty() {
        return (lo_default, hi_default);
    }
    values
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
            (lo.min(*v), hi.max(*v))
        })
}

fn x_ticks(lo: f64, hi: f64) -> Vec<f64> {
    let span = (hi - lo).max(1.0);
    let raw = span / 8.0;
    let step = [1.0, 2.0, 3.0, 6.0, 12.0, 24.0, 50.0, 100.0, 250.0, 500.0]
        .into_iter()
        .find(|s| *s >= raw)
        .unwrap_or(raw.ceil());
    let mut ticks = Vec::new();
    let mut t = (lo / step).ceil() * step;
    while t <= hi + 1e-9 {
        ticks.push(t);
        t += step;
    }
    ticks
}

fn short(v: f64) -> String {
    let s = format!("{v:.3}");
    if s == "-0.000" {
        "0.000".into()
    } else {
        s
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}
