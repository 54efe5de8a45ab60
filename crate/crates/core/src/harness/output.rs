//! CSV and SVG writers for sweep results.

use std::fmt::Write as _;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;
use std::str::FromStr;

use crate::entanglement::EntanglementReport;
use crate::error::{Error, Result};

pub const CSV_HEADER: &str =
    "t_ns,zeta_minus,lambda_minus,negativity,log_negativity,separable,uncertainty_ok";

/// Shortest decimal that round-trips through 12 significant digits.
pub fn format_float(x: f64) -> String {
    let rounded: f64 = format!("{x:.11e}").parse().expect("formatted float parses");
    if rounded == 0.0 {
        "0".to_owned()
    } else if rounded.abs() < 1e-5 || rounded.abs() >= 1e15 {
        format!("{rounded:e}")
    } else {
        rounded.to_string()
    }
}

pub fn emit_csv<W: Write>(reports: &[EntanglementReport], mut out: W) -> std::io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for r in reports {
        writeln!(
            out,
            "{},{},{},{},{},{},{}",
            format_float(r.time),
            format_float(r.zeta_minus),
            format_float(r.lambda_minus),
            format_float(r.negativity),
            format_float(r.log_negativity),
            r.separable,
            r.uncertainty_ok
        )?;
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quantity {
    Zeta,
    Lambda,
    Negativity,
}

impl Quantity {
    pub fn name(self) -> &'static str {
        match self {
            Quantity::Zeta => "zeta",
            Quantity::Lambda => "lambda",
            Quantity::Negativity => "negativity",
        }
    }
}

impl FromStr for Quantity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "zeta" | "zeta_minus" => Ok(Quantity::Zeta),
            "lambda" | "lambda_minus" => Ok(Quantity::Lambda),
            "negativity" | "n" => Ok(Quantity::Negativity),
            "" => Err(Error::config("quantity", "empty quantity name")),
            other => Err(Error::config(
                "quantity",
                format!("unknown quantity `{other}` (expected zeta, lambda or negativity)"),
            )),
        }
    }
}

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 400.0;
const MARGIN_LEFT: f64 = 70.0;
const MARGIN_RIGHT: f64 = 20.0;
const MARGIN_TOP: f64 = 30.0;
const MARGIN_BOTTOM: f64 = 50.0;

struct Frame {
    x0: f64,
    x1: f64,
    y0: f64,
    y1: f64,
}

impl Frame {
    fn px(&self, x: f64) -> f64 {
        let w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT;
        MARGIN_LEFT + (x - self.x0) / (self.x1 - self.x0) * w
    }

    fn py(&self, y: f64) -> f64 {
        let h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM;
        HEIGHT - MARGIN_BOTTOM - (y - self.y0) / (self.y1 - self.y0) * h
    }

    fn polyline(&self, xs: &[f64], ys: &[f64], style: &str) -> String {
        let pts: Vec<String> = xs
            .iter()
            .zip(ys)
            .map(|(&x, &y)| format!("{:.2},{:.2}", self.px(x), self.py(y)))
            .collect();
        format!(
            "<polyline fill=\"none\" {style} points=\"{}\"/>\n",
            pts.join(" ")
        )
    }
}

fn padded_range(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let (lo, hi) = values.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
        (lo.min(v), hi.max(v))
    });
    if !lo.is_finite() || !hi.is_finite() {
        return (0.0, 1.0);
    }
    let span = hi - lo;
    let pad = if span > 0.0 {
        0.05 * span
    } else {
        0.05 * hi.abs().max(1e-3)
    };
    (lo - pad, hi + pad)
}

/// Renders one quantity against time as a standalone SVG document.
pub fn emit_svg<W: Write>(
    reports: &[EntanglementReport],
    quantity: Quantity,
    mut out: W,
) -> std::io::Result<()> {
    let ts: Vec<f64> = reports.iter().map(|r| r.time).collect();
    let series: Vec<(&str, &str, Vec<f64>)> = match quantity {
        Quantity::Zeta => vec![(
            "zeta_minus",
            "stroke=\"#1f77b4\" stroke-width=\"2\"",
            reports.iter().map(|r| r.zeta_minus).collect(),
        )],
        Quantity::Lambda => vec![(
            "lambda_minus",
            "stroke=\"#d62728\" stroke-width=\"2\"",
            reports.iter().map(|r| r.lambda_minus).collect(),
        )],
        Quantity::Negativity => vec![
            (
                "N",
                "stroke=\"#2ca02c\" stroke-width=\"2\"",
                reports.iter().map(|r| r.negativity).collect(),
            ),
            (
                "E_N",
                "stroke=\"#9467bd\" stroke-width=\"2\" stroke-dasharray=\"2,3\"",
                reports.iter().map(|r| r.log_negativity).collect(),
            ),
        ],
    };
    let reference = matches!(quantity, Quantity::Zeta | Quantity::Lambda).then_some(0.5);

    let (x0, x1) = match (ts.first(), ts.last()) {
        (Some(&a), Some(&b)) if b > a => (a, b),
        _ => (0.0, 1.0),
    };
    let (y0, y1) = padded_range(
        series
            .iter()
            .flat_map(|(_, _, ys)| ys.iter().copied())
            .chain(reference),
    );
    let frame = Frame { x0, x1, y0, y1 };

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" viewBox=\"0 0 {WIDTH} {HEIGHT}\">"
    );
    let _ = writeln!(svg, "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>");
    let _ = writeln!(
        svg,
        "<rect x=\"{MARGIN_LEFT}\" y=\"{MARGIN_TOP}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"black\"/>",
        WIDTH - MARGIN_LEFT - MARGIN_RIGHT,
        HEIGHT - MARGIN_TOP - MARGIN_BOTTOM
    );
    for k in 0..=4 {
        let x = x0 + (x1 - x0) * k as f64 / 4.0;
        let y = y0 + (y1 - y0) * k as f64 / 4.0;
        let _ = writeln!(
            svg,
            "<text x=\"{:.2}\" y=\"{:.2}\" font-size=\"11\" text-anchor=\"middle\">{}</text>",
            frame.px(x),
            HEIGHT - MARGIN_BOTTOM + 16.0,
            format_tick(x)
        );
        let _ = writeln!(
            svg,
            "<text x=\"{:.2}\" y=\"{:.2}\" font-size=\"11\" text-anchor=\"end\">{}</text>",
            MARGIN_LEFT - 6.0,
            frame.py(y) + 4.0,
            format_tick(y)
        );
    }
    let _ = writeln!(
        svg,
        "<text x=\"{:.2}\" y=\"{:.2}\" font-size=\"13\" text-anchor=\"middle\">t (ns)</text>",
        0.5 * (MARGIN_LEFT + WIDTH - MARGIN_RIGHT),
        HEIGHT - 12.0
    );
    let _ = writeln!(
        svg,
        "<text x=\"16\" y=\"{:.2}\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 16 {:.2})\">{}</text>",
        0.5 * HEIGHT,
        0.5 * HEIGHT,
        series.iter().map(|s| s.0).collect::<Vec<_>>().join(", ")
    );
    if let Some(level) = reference {
        svg.push_str(&frame.polyline(
            &[x0, x1],
            &[level, level],
            "stroke=\"gray\" stroke-dasharray=\"6,4\"",
        ));
    }
    for (name, style, ys) in &series {
        let _ = write!(svg, "<g id=\"{name}\">");
        svg.push_str(&frame.polyline(&ts, ys, style));
        svg.push_str("</g>\n");
    }
    svg.push_str("</svg>\n");
    out.write_all(svg.as_bytes())
}

/// Writes the CSV for a sweep to `path`.
pub fn write_csv(reports: &[EntanglementReport], path: &Path) -> Result<()> {
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    let mut out = BufWriter::new(file);
    emit_csv(reports, &mut out)
        .and_then(|_| out.flush())
        .map_err(|e| Error::io(path, e))
}

/// Writes one SVG chart to `path`. An empty series is rejected before the
/// file is created.
pub fn write_svg(reports: &[EntanglementReport], quantity: Quantity, path: &Path) -> Result<()> {
    if reports.is_empty() {
        return Err(Error::config(
            "svg",
            "nothing to plot: the sweep produced no points",
        ));
    }
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    let mut out = BufWriter::new(file);
    emit_svg(reports, quantity, &mut out)
        .and_then(|_| out.flush())
        .map_err(|e| Error::io(path, e))
}

fn format_tick(v: f64) -> String {
    let s = format!("{v:.3}");
    if s == "-0.000" {
        "0.000".to_owned()
    } else {
        s
    }
}
