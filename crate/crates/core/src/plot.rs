//! Deterministic SVG rendering of error-rate curves: linear Eb/N0 axis,
//! logarithmic error axis, one marked series per scheme and unmarked
//! reference lines for bounds.

use crate::error::{Error, Result};
use std::fmt::Write as _;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesStyle {
    /// Markers plus connecting polyline.
    Marked,
    /// Plain line (used for converse bounds).
    Bound,
}

#[derive(Debug, Clone)]
pub struct Series {
    pub label: String,
    /// (ebn0_db, error_rate) points; non-positive rates are skipped.
    pub points: Vec<(f64, f64)>,
    pub style: SeriesStyle,
}

#[derive(Debug, Clone)]
pub struct FigureStyle {
    pub width: u32,
    pub height: u32,
    pub title: String,
    pub y_label: String,
    /// Lower clip for the log axis (rates below are dropped).
    pub y_floor: f64,
}

impl Default for FigureStyle {
    fn default() -> Self {
        FigureStyle {
            width: 760,
            height: 560,
            title: String::new(),
            y_label: "FER".into(),
            y_floor: 1e-8,
        }
    }
}

const PALETTE: [&str; 6] = [
    "#c1002a", // red
    "#5aa02c", // green
    "#7637a4", // purple
    "#1f6fb4", // blue
    "#666666", // grey
    "#b8860b", // ochre
];

const MARKERS: [char; 6] = ['o', 's', 'd', 't', 'v', 'x'];

fn fmt2(v: f64) -> String {
    format!("{v:.2}")
}

/// Renders the figure; byte-identical output for identical input.
pub fn render_figure(series: &[Series], style: &FigureStyle) -> Result<String> {
    if series.is_empty() || series.iter().all(|s| s.points.is_empty()) {
        return Err(Error::domain("nothing to plot"));
    }
    let live: Vec<(&Series, Vec<(f64, f64)>)> = series
        .iter()
        .map(|s| {
            let pts: Vec<(f64, f64)> = s
                .points
                .iter()
                .copied()
                .filter(|&(_, y)| y > style.y_floor)
                .collect();
            (s, pts)
        })
        .collect();
    let xs = live
        .iter()
        .flat_map(|(_, p)| p.iter().map(|&(x, _)| x))
        .collect::<Vec<_>>();
    let ys = live
        .iter()
        .flat_map(|(_, p)| p.iter().map(|&(_, y)| y))
        .collect::<Vec<_>>();
    if xs.is_empty() {
        return Err(Error::domain("nothing to plot above the floor"));
    }
    let (x_min, x_max) = nice_x_range(
        xs.iter().cloned().fold(f64::INFINITY, f64::min),
        xs.iter().cloned().fold(f64::NEG_INFINITY, f64::max),
    );
    let y_hi_dec = ys
        .iter()
        .cloned()
        .fold(f64::NEG_INFINITY, f64::max)
        .log10()
        .ceil() as i32;
    let y_lo_dec = ys
        .iter()
        .cloned()
        .fold(f64::INFINITY, f64::min)
        .log10()
        .floor() as i32;
    let y_hi_dec = y_hi_dec.max(y_lo_dec + 1).min(0);
    let (w, h) = (style.width as f64, style.height as f64);
    let (ml, mr, mt, mb) = (70.0, 20.0, 40.0, 50.0);
    let (pw, ph) = (w - ml - mr, h - mt - mb);
    let x_of = |x: f64| ml + (x - x_min) / (x_max - x_min) * pw;
    let y_of = |y: f64| {
        let t = (y.log10() - y_lo_dec as f64) / (y_hi_dec - y_lo_dec) as f64;
        mt + (1.0 - t) * ph
    };

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" viewBox="0 0 {} {}">"#,
        style.width, style.height, style.width, style.height
    );
    let _ = writeln!(
        s,
        r#"<rect width="{}" height="{}" fill="white"/>"#,
        style.width, style.height
    );
    if !style.title.is_empty() {
        let _ = writeln!(
            s,
            r#"<text x="{}" y="24" font-family="sans-serif" font-size="15" text-anchor="middle">{}</text>"#,
            fmt2(w / 2.0),
            xml_escape(&style.title)
        );
    }

    // Grid and ticks.
    let mut x_tick = x_min;
    let x_step = nice_x_step(x_max - x_min);
    while x_tick <= x_max + 1e-9 {
        let px = x_of(x_tick);
        let _ = writeln!(
            s,
            r##"<line x1="{0}" y1="{1}" x2="{0}" y2="{2}" stroke="#dddddd" stroke-width="1"/>"##,
            fmt2(px),
            fmt2(mt),
            fmt2(mt + ph)
        );
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{}" font-family="sans-serif" font-size="12" text-anchor="middle">{}</text>"#,
            fmt2(px),
            fmt2(mt + ph + 18.0),
            format_tick(x_tick)
        );
        x_tick += x_step;
    }
    for dec in y_lo_dec..=y_hi_dec {
        let py = y_of(10f64.powi(dec));
        let _ = writeln!(
            s,
            r##"<line x1="{0}" y1="{2}" x2="{1}" y2="{2}" stroke="#dddddd" stroke-width="1"/>"##,
            fmt2(ml),
            fmt2(ml + pw),
            fmt2(py)
        );
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{}" font-family="sans-serif" font-size="12" text-anchor="end">1e{}</text>"#,
            fmt2(ml - 6.0),
            fmt2(py + 4.0),
            dec
        );
        // Minor log grid.
        if dec < y_hi_dec {
            for m in 2..10 {
                let v = f64::from(m) * 10f64.powi(dec);
                let py = y_of(v);
                let _ = writeln!(
                    s,
                    r##"<line x1="{0}" y1="{2}" x2="{1}" y2="{2}" stroke="#f2f2f2" stroke-width="0.5"/>"##,
                    fmt2(ml),
                    fmt2(ml + pw),
                    fmt2(py)
                );
            }
        }
    }
    // Axes.
    let _ = writeln!(
        s,
        r#"<rect x="{}" y="{}" width="{}" height="{}" fill="none" stroke="black" stroke-width="1"/>"#,
        fmt2(ml),
        fmt2(mt),
        fmt2(pw),
        fmt2(ph)
    );
    let _ = writeln!(
        s,
        r#"<text x="{}" y="{}" font-family="sans-serif" font-size="13" text-anchor="middle">Eb/N0 [dB]</text>"#,
        fmt2(ml + pw / 2.0),
        fmt2(h - 12.0)
    );
    let _ = writeln!(
        s,
        r#"<text x="16" y="{}" font-family="sans-serif" font-size="13" text-anchor="middle" transform="rotate(-90 16 {})">{}</text>"#,
        fmt2(mt + ph / 2.0),
        fmt2(mt + ph / 2.0),
        xml_escape(&style.y_label)
    );

    // Series.
    let mut marked_idx = 0usize;
    for (spec, pts) in &live {
        if pts.is_empty() {
            continue;
        }
        let (color, marker) = match spec.style {
            SeriesStyle::Bound => ("#000000", None),
            SeriesStyle::Marked => {
                let c = PALETTE[marked_idx % PALETTE.len()];
                let m = MARKERS[marked_idx % MARKERS.len()];
                marked_idx += 1;
                (c, Some(m))
            }
        };
        let path: Vec<String> = pts
            .iter()
            .map(|&(x, y)| format!("{},{}", fmt2(x_of(x)), fmt2(y_of(y))))
            .collect();
        let dash = if spec.style == SeriesStyle::Bound {
            r#" stroke-dasharray="7,4""#
        } else {
            ""
        };
        let _ = writeln!(
            s,
            r#"<polyline points="{}" fill="none" stroke="{}" stroke-width="1.5"{}/>"#,
            path.join(" "),
            color,
            dash
        );
        if let Some(m) = marker {
            for &(x, y) in pts {
                draw_marker(&mut s, m, x_of(x), y_of(y), color);
            }
        }
    }

    // Legend.
    let legend_w = 8.0
        + 22.0
        + live
            .iter()
            .filter(|(_, p)| !p.is_empty())
            .map(|(sp, _)| sp.label.len())
            .max()
            .unwrap_or(0) as f64
            * 7.0;
    let legend_n = live.iter().filter(|(_, p)| !p.is_empty()).count();
    let (lx, ly) = (ml + pw - legend_w - 8.0, mt + 8.0);
    let _ = writeln!(
        s,
        r##"<rect x="{}" y="{}" width="{}" height="{}" fill="white" fill-opacity="0.85" stroke="#999999"/>"##,
        fmt2(lx),
        fmt2(ly),
        fmt2(legend_w),
        fmt2(legend_n as f64 * 18.0 + 8.0)
    );
    let mut row = 0usize;
    let mut marked_idx = 0usize;
    for (spec, pts) in &live {
        if pts.is_empty() {
            continue;
        }
        let y = ly + 17.0 + row as f64 * 18.0;
        let (color, marker) = match spec.style {
            SeriesStyle::Bound => ("#000000", None),
            SeriesStyle::Marked => {
                let c = PALETTE[marked_idx % PALETTE.len()];
                let m = MARKERS[marked_idx % MARKERS.len()];
                marked_idx += 1;
                (c, Some(m))
            }
        };
        let _ = writeln!(
            s,
            r#"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="{}" stroke-width="1.5"/>"#,
            fmt2(lx + 6.0),
            fmt2(y - 4.0),
            fmt2(lx + 24.0),
            fmt2(y - 4.0),
            color
        );
        if let Some(m) = marker {
            draw_marker(&mut s, m, lx + 15.0, y - 4.0, color);
        }
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{}" font-family="sans-serif" font-size="12">{}</text>"#,
            fmt2(lx + 30.0),
            fmt2(y),
            xml_escape(&spec.label)
        );
        row += 1;
    }

    let _ = writeln!(s, "</svg>");
    Ok(s)
}

fn draw_marker(s: &mut String, kind: char, x: f64, y: f64, color: &str) {
    match kind {
        'o' => {
            let _ = writeln!(
                s,
                r#"<circle cx="{}" cy="{}" r="3.2" fill="white" stroke="{}" stroke-width="1.3"/>"#,
                fmt2(x),
                fmt2(y),
                color
            );
        }
        's' => {
            let _ = writeln!(
                s,
                r#"<rect x="{}" y="{}" width="6" height="6" fill="white" stroke="{}" stroke-width="1.3"/>"#,
                fmt2(x - 3.0),
                fmt2(y - 3.0),
                color
            );
        }
        'd' => {
            let _ = writeln!(
                s,
                r#"<path d="M {} {} l 3.6 3.6 l -3.6 3.6 l -3.6 -3.6 z" fill="white" stroke="{}" stroke-width="1.3"/>"#,
                fmt2(x),
                fmt2(y - 3.6),
                color
            );
        }
        't' => {
            let _ = writeln!(
                s,
                r#"<path d="M {} {} l 3.6 6.2 l -7.2 0 z" fill="white" stroke="{}" stroke-width="1.3"/>"#,
                fmt2(x),
                fmt2(y - 3.6),
                color
            );
        }
        'v' => {
            let _ = writeln!(
                s,
                r#"<path d="M {} {} l 3.6 -6.2 l -7.2 0 z" fill="white" stroke="{}" stroke-width="1.3"/>"#,
                fmt2(x),
                fmt2(y + 3.6),
                color
            );
        }
        _ => {
            let _ = writeln!(
                s,
                r#"<path d="M {} {} l 5 5 m 0 -5 l -5 5" stroke="{}" stroke-width="1.3"/>"#,
                fmt2(x - 2.5),
                fmt2(y - 2.5),
                color
            );
        }
    }
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn nice_x_range(lo: f64, hi: f64) -> (f64, f64) {
    if (hi - lo).abs() < 1e-12 {
        return (lo - 0.5, hi + 0.5);
    }
    let step = nice_x_step(hi - lo);
    ((lo / step).floor() * step, (hi / step).ceil() * step)
}

fn nice_x_step(span: f64) -> f64 {
    if span <= 1.0 {
        0.25
    } else if span <= 2.5 {
        0.5
    } else if span <= 6.0 {
        1.0
    } else {
        2.0
    }
}

fn format_tick(v: f64) -> String {
    if (v - v.round()).abs() < 1e-9 {
        format!("{}", v.round() as i64)
    } else {
        format!("{v:.2}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one_series() -> Vec<Series> {
        vec![Series {
            label: "demo".into(),
            points: vec![(1.0, 1e-1), (2.0, 1e-3)],
            style: SeriesStyle::Marked,
        }]
    }

    #[test]
    fn single_series_produces_polyline() {
        let svg = render_figure(&one_series(), &FigureStyle::default()).unwrap();
        assert!(svg.contains("<polyline"));
        assert!(svg.contains("</svg>"));
        assert_eq!(svg.matches("<polyline").count(), 1);
    }

    #[test]
    fn identical_input_is_byte_identical() {
        let a = render_figure(&one_series(), &FigureStyle::default()).unwrap();
        let b = render_figure(&one_series(), &FigureStyle::default()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn empty_input_is_an_error() {
        assert!(render_figure(&[], &FigureStyle::default()).is_err());
        let empty = vec![Series {
            label: "e".into(),
            points: vec![],
            style: SeriesStyle::Marked,
        }];
        assert!(render_figure(&empty, &FigureStyle::default()).is_err());
    }

    #[test]
    fn bound_series_has_no_markers() {
        let series = vec![
            Series {
                label: "code".into(),
                points: vec![(1.0, 1e-1), (2.0, 1e-2)],
                style: SeriesStyle::Marked,
            },
            Series {
                label: "bound".into(),
                points: vec![(1.0, 1e-2), (2.0, 1e-4)],
                style: SeriesStyle::Bound,
            },
        ];
        let svg = render_figure(&series, &FigureStyle::default()).unwrap();
        // One marked series: its points plus one legend marker.
        assert_eq!(svg.matches("<circle").count(), 3);
        assert!(svg.contains("stroke-dasharray"));
    }
}
