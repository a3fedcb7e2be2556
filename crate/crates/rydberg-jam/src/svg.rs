//! Self-contained SVG 1.1 line plots.

use std::fmt::{self, Write as _};

const PALETTE: [&str; 10] = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
    "#bcbd22", "#17becf",
];

/// Closed interval `(lo, hi)` on one axis.
type Span = (f64, f64);

const MARGIN_LEFT: f64 = 70.0;
const MARGIN_RIGHT: f64 = 150.0;
const MARGIN_TOP: f64 = 40.0;
const MARGIN_BOTTOM: f64 = 55.0;

#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    pub label: String,
    pub points: Vec<(f64, f64)>,
}

/// A labelled reference line at a fixed coordinate.
#[derive(Debug, Clone, PartialEq)]
pub struct Marker {
    pub label: String,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PlotSpec {
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    pub width: u32,
    pub height: u32,
    pub series: Vec<Series>,
    /// Vertical lines `x = value`.
    pub x_markers: Vec<Marker>,
    /// Horizontal lines `y = value`.
    pub y_markers: Vec<Marker>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum PlotError {
    Empty,
    NonFinite { series: String },
    MarkerOutOfRange { label: String, value: f64 },
}

impl fmt::Display for PlotError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PlotError::Empty => write!(f, "plot has no data points"),
            PlotError::NonFinite { series } => write!(f, "series '{series}' has non-finite values"),
            PlotError::MarkerOutOfRange { label, value } => {
                write!(f, "marker '{label}' at {value} lies outside the axis range")
            }
        }
    }
}

impl std::error::Error for PlotError {}

impl PlotSpec {
    pub fn new(title: &str, x_label: &str, y_label: &str) -> Self {
        PlotSpec {
            title: title.to_string(),
            x_label: x_label.to_string(),
            y_label: y_label.to_string(),
            width: 800,
            height: 500,
            series: Vec::new(),
            x_markers: Vec::new(),
            y_markers: Vec::new(),
        }
    }

    /// Axis ranges `((x0, x1), (y0, y1))` covering all series and markers.
    fn ranges(&self) -> Result<(Span, Span), PlotError> {
        let mut xs = (f64::INFINITY, f64::NEG_INFINITY);
        let mut ys = (f64::INFINITY, f64::NEG_INFINITY);
        for s in &self.series {
            for &(x, y) in &s.points {
                if !x.is_finite() || !y.is_finite() {
                    return Err(PlotError::NonFinite {
                        series: s.label.clone(),
                    });
                }
                xs = (xs.0.min(x), xs.1.max(x));
                ys = (ys.0.min(y), ys.1.max(y));
            }
        }
        if !xs.0.is_finite() {
            return Err(PlotError::Empty);
        }
        // Horizontal markers widen the y range; vertical markers must fall
        // inside the data's x range.
        for m in &self.y_markers {
            if !m.value.is_finite() {
                return Err(PlotError::MarkerOutOfRange {
                    label: m.label.clone(),
                    value: m.value,
                });
            }
            ys = (ys.0.min(m.value), ys.1.max(m.value));
        }
        for m in &self.x_markers {
            if !(m.value >= xs.0 && m.value <= xs.1) {
                return Err(PlotError::MarkerOutOfRange {
                    label: m.label.clone(),
                    value: m.value,
                });
            }
        }
        let pad = |(lo, hi): (f64, f64)| {
            if hi > lo {
                let d = 0.05 * (hi - lo);
                (lo - d, hi + d)
            } else {
                (lo - 0.5, hi + 0.5)
            }
        };
        Ok((pad(xs), pad(ys)))
    }

    pub fn render(&self) -> Result<String, PlotError> {
        let ((x0, x1), (y0, y1)) = self.ranges()?;
        let (w, h) = (self.width as f64, self.height as f64);
        let pw = w - MARGIN_LEFT - MARGIN_RIGHT;
        let ph = h - MARGIN_TOP - MARGIN_BOTTOM;
        let sx = |x: f64| MARGIN_LEFT + (x - x0) / (x1 - x0) * pw;
        let sy = |y: f64| MARGIN_TOP + (1.0 - (y - y0) / (y1 - y0)) * ph;

        let mut s = String::new();
        let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}" font-family="sans-serif" font-size="12">"#
        );
        let _ = writeln!(s, r#"<rect width="{w}" height="{h}" fill="white"/>"#);
        let _ = writeln!(
            s,
            r#"<text x="{}" y="22" text-anchor="middle" font-size="15">{}</text>"#,
            MARGIN_LEFT + pw / 2.0,
            escape(&self.title)
        );
        let _ = writeln!(
            s,
            r#"<rect x="{MARGIN_LEFT}" y="{MARGIN_TOP}" width="{pw}" height="{ph}" fill="none" stroke="black"/>"#
        );
        for t in ticks(x0, x1) {
            let x = sx(t);
            let _ = writeln!(
                s,
                r#"<line x1="{x:.2}" y1="{:.2}" x2="{x:.2}" y2="{:.2}" stroke="black"/><text x="{x:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
                MARGIN_TOP + ph,
                MARGIN_TOP + ph + 5.0,
                MARGIN_TOP + ph + 19.0,
                tick_label(t)
            );
        }
        for t in ticks(y0, y1) {
            let y = sy(t);
            let _ = writeln!(
                s,
                r#"<line x1="{:.2}" y1="{y:.2}" x2="{MARGIN_LEFT}" y2="{y:.2}" stroke="black"/><text x="{:.2}" y="{:.2}" text-anchor="end">{}</text>"#,
                MARGIN_LEFT - 5.0,
                MARGIN_LEFT - 8.0,
                y + 4.0,
                tick_label(t)
            );
        }
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
            MARGIN_LEFT + pw / 2.0,
            h - 12.0,
            escape(&self.x_label)
        );
        let _ = writeln!(
            s,
            r#"<text x="18" y="{:.2}" text-anchor="middle" transform="rotate(-90 18 {:.2})">{}</text>"#,
            MARGIN_TOP + ph / 2.0,
            MARGIN_TOP + ph / 2.0,
            escape(&self.y_label)
        );

        // Labels step down so neighbouring markers stay legible.
        for (i, m) in self.x_markers.iter().enumerate() {
            let x = sx(m.value);
            let _ = writeln!(
                s,
                r##"<line x1="{x:.2}" y1="{MARGIN_TOP}" x2="{x:.2}" y2="{:.2}" stroke="#444" stroke-dasharray="5,4"/><text x="{:.2}" y="{:.2}">{}</text>"##,
                MARGIN_TOP + ph,
                x + 3.0,
                MARGIN_TOP + 12.0 + 14.0 * i as f64,
                escape(&m.label)
            );
        }
        for m in &self.y_markers {
            let y = sy(m.value);
            let _ = writeln!(
                s,
                r##"<line x1="{MARGIN_LEFT}" y1="{y:.2}" x2="{:.2}" y2="{y:.2}" stroke="#444" stroke-dasharray="2,3"/><text x="{:.2}" y="{:.2}">{}</text>"##,
                MARGIN_LEFT + pw,
                MARGIN_LEFT + pw + 4.0,
                y + 4.0,
                escape(&m.label)
            );
        }

        for (i, series) in self.series.iter().enumerate() {
            let color = PALETTE[i % PALETTE.len()];
            let pts: Vec<String> = series
                .points
                .iter()
                .map(|&(x, y)| format!("{:.2},{:.2}", sx(x), sy(y)))
                .collect();
            let _ = writeln!(
                s,
                r#"<polyline fill="none" stroke="{color}" stroke-width="1.6" points="{}"/>"#,
                pts.join(" ")
            );
            let ly = MARGIN_TOP + 10.0 + 16.0 * i as f64;
            let lx = MARGIN_LEFT + pw + 40.0;
            let _ = writeln!(
                s,
                r#"<line x1="{lx}" y1="{ly}" x2="{}" y2="{ly}" stroke="{color}" stroke-width="2"/><text x="{}" y="{}">{}</text>"#,
                lx + 18.0,
                lx + 22.0,
                ly + 4.0,
                escape(&series.label)
            );
        }
        s.push_str("</svg>\n");
        Ok(s)
    }
}

/// Round tick positions, about five per axis.
fn ticks(lo: f64, hi: f64) -> Vec<f64> {
    let raw = (hi - lo) / 5.0;
    let mag = 10f64.powf(raw.log10().floor());
    let step = [1.0, 2.0, 5.0, 10.0]
        .iter()
        .map(|m| m * mag)
        .find(|s| *s >= raw)
        .unwrap_or(10.0 * mag);
    let first = (lo / step).ceil() as i64;
    let last = (hi / step).floor() as i64;
    (first..=last).map(|i| i as f64 * step).collect()
}

fn tick_label(t: f64) -> String {
    let s = format!("{t:.6}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".to_string()
    } else {
        s.to_string()
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec() -> PlotSpec {
        let mut p = PlotSpec::new("f", "rho", "f(rho)");
        p.series.push(Series {
            label: "b = 1".into(),
            points: vec![(0.34, 0.1), (0.4, 0.27), (0.5, 0.0)],
        });
        p
    }

    #[test]
    fn renders_markup() {
        let mut p = spec();
        p.x_markers.push(Marker {
            label: "rho*".into(),
            value: 0.41,
        });
        p.y_markers.push(Marker {
            label: "ln w".into(),
            value: 0.28,
        });
        let svg = p.render().unwrap();
        assert!(svg.starts_with("<?xml"));
        assert!(svg.contains("<polyline"));
        assert!(svg.contains("rho*"));
        assert!(svg.trim_end().ends_with("</svg>"));
    }

    #[test]
    fn rejects_bad_input() {
        let mut p = spec();
        p.series[0].points.push((0.45, f64::NAN));
        assert!(matches!(p.render(), Err(PlotError::NonFinite { .. })));
        let mut p = spec();
        p.x_markers.push(Marker {
            label: "far".into(),
            value: 3.0,
        });
        assert!(matches!(
            p.render(),
            Err(PlotError::MarkerOutOfRange { .. })
        ));
        assert_eq!(PlotSpec::new("", "", "").render(), Err(PlotError::Empty));
    }

    #[test]
    fn tick_steps_are_round() {
        let labels: Vec<String> = ticks(0.0, 1.0).into_iter().map(tick_label).collect();
        assert_eq!(labels, ["0", "0.2", "0.4", "0.6", "0.8", "1"]);
    }
}
