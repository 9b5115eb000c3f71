//! Hand-written SVG of the eigenvalue loci over a range of `ω`, drawn with the
//! unit circle and the essential spectrum.

use std::fmt::Write as _;
use std::process::ExitCode;

use defectwalk_core::spectrum::{eigenvalues, essential_spectrum_arcs, sigma0_points};
use defectwalk_core::{ComplexScalar, DefectParameter};

use crate::commands::{write_paired, Failure};
use crate::output::{num, version_line};
use crate::FigureArgs;

const SIZE: f64 = 600.0;
const CIRCLE_SAMPLES: usize = 361;
const ARC_SAMPLES: usize = 91;
/// `ω` this close to 0 or 1 is dropped.
const EXCLUSION: f64 = 1e-12;

struct Point {
    series: &'static str,
    omega: Option<f64>,
    index: Option<usize>,
    z: ComplexScalar,
}

pub fn parse_range(raw: &str) -> Result<(f64, f64), Failure> {
    let parts: Vec<&str> = raw.split(',').map(str::trim).collect();
    let [lo, hi] = parts.as_slice() else {
        return Err(Failure::usage(format!(
            "--omega-range expects `min,max`, got `{raw}`"
        )));
    };
    let parse = |s: &str| {
        s.parse::<f64>()
            .map_err(|_| Failure::usage(format!("--omega-range: `{s}` is not a number")))
    };
    let (lo, hi) = (parse(lo)?, parse(hi)?);
    if !lo.is_finite() || !hi.is_finite() || lo >= hi {
        return Err(Failure::usage(format!(
            "degenerate --omega-range {lo},{hi}: need finite min < max"
        )));
    }
    Ok((lo, hi))
}

/// Evenly spaced parameters plus geometric refinement towards 0 and 1 from both sides.
pub fn sample_omegas(lo: f64, hi: f64, samples: usize) -> Vec<f64> {
    let mut out: Vec<f64> = (0..samples)
        .map(|k| lo + (hi - lo) * k as f64 / (samples - 1) as f64)
        .collect();
    for k in 1..=8 {
        let d = 10f64.powi(-k);
        out.extend([1.0 - d, 1.0 + d, -d, d]);
    }
    out.retain(|&w| w >= lo && w <= hi && w.abs() > EXCLUSION && (w - 1.0).abs() > EXCLUSION);
    out.sort_by(f64::total_cmp);
    out.dedup();
    out
}

pub fn figure(a: FigureArgs) -> Result<ExitCode, Failure> {
    let (lo, hi) = parse_range(&a.omega_range)?;
    if a.samples < 2 {
        return Err(Failure::usage("--samples must be at least 2"));
    }
    let omegas = sample_omegas(lo, hi, a.samples);
    if omegas.is_empty() {
        return Err(Failure::usage(format!(
            "--omega-range {lo},{hi} contains no admissible omega"
        )));
    }

    let mut points = Vec::new();
    for k in 0..CIRCLE_SAMPLES {
        let t = 2.0 * std::f64::consts::PI * k as f64 / (CIRCLE_SAMPLES - 1) as f64;
        points.push(Point {
            series: "unit-circle",
            omega: None,
            index: None,
            z: ComplexScalar::from_polar(1.0, t),
        });
    }
    for z in essential_spectrum_arcs(ARC_SAMPLES)? {
        points.push(Point {
            series: "sigma-arc",
            omega: None,
            index: None,
            z,
        });
    }
    for z in sigma0_points() {
        points.push(Point {
            series: "sigma0",
            omega: None,
            index: None,
            z,
        });
    }
    for &w in &omegas {
        let quad = eigenvalues(DefectParameter::spectral(w)?)?;
        let series = if w > 0.0 {
            "locus-positive"
        } else {
            "locus-negative"
        };
        for (index, z) in quad.iter() {
            points.push(Point {
                series,
                omega: Some(w),
                index: Some(index),
                z,
            });
        }
    }
    for (index, z) in eigenvalues(DefectParameter::spectral(-1.0)?)?.iter() {
        points.push(Point {
            series: "marker-omega-minus-one",
            omega: Some(-1.0),
            index: Some(index),
            z,
        });
    }

    let svg = render(&points, lo, hi);
    let mut csv = version_line(
        "figure",
        &[
            ("omega_range", format!("{lo};{hi}")),
            ("samples", a.samples.to_string()),
        ],
    );
    csv.push_str("\nseries,omega,index,re,im\n");
    for p in &points {
        let _ = writeln!(
            csv,
            "{},{},{},{},{}",
            p.series,
            p.omega.map(num).unwrap_or_default(),
            p.index.map(|i| i.to_string()).unwrap_or_default(),
            num(p.z.re),
            num(p.z.im)
        );
    }
    let csv_path = a
        .csv
        .clone()
        .or_else(|| a.out.as_ref().map(|p| p.with_extension("csv")));
    write_paired(a.out.as_deref(), &svg, csv_path.as_deref(), &csv)?;
    Ok(ExitCode::SUCCESS)
}

fn render(points: &[Point], lo: f64, hi: f64) -> String {
    let extent = points
        .iter()
        .map(|p| p.z.re.abs().max(p.z.im.abs()))
        .fold(1.2, f64::max)
        * 1.08;
    let scale = SIZE / (2.0 * extent);
    let px = |z: ComplexScalar| (SIZE / 2.0 + z.re * scale, SIZE / 2.0 - z.im * scale);
    let polyline = |pts: &mut dyn Iterator<Item = ComplexScalar>| {
        pts.map(|z| {
            let (x, y) = px(z);
            format!("{x:.3},{y:.3}")
        })
        .collect::<Vec<_>>()
        .join(" ")
    };

    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(
        s,
        "<title>Eigenvalues and essential spectrum, omega in [{lo}, {hi}]</title>"
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let c = SIZE / 2.0;
    let _ = writeln!(
        s,
        r##"<g stroke="#dddddd" stroke-width="1"><line x1="0" y1="{c}" x2="{SIZE}" y2="{c}"/><line x1="{c}" y1="0" x2="{c}" y2="{SIZE}"/></g>"##
    );
    let _ = writeln!(
        s,
        r##"<circle id="unit-circle" cx="{c}" cy="{c}" r="{:.3}" fill="none" stroke="#999999" stroke-width="1.2"/>"##,
        scale
    );

    let arcs: Vec<ComplexScalar> = points
        .iter()
        .filter(|p| p.series == "sigma-arc")
        .map(|p| p.z)
        .collect();
    for arc in arcs.chunks(ARC_SAMPLES) {
        let _ = writeln!(
            s,
            r#"<polyline class="sigma-arc" points="{}" fill="none" stroke="black" stroke-width="2.5"/>"#,
            polyline(&mut arc.iter().copied())
        );
    }

    for (series, dash, color) in [
        ("locus-positive", "6,4", "#1f4e9c"),
        ("locus-negative", "1.5,3", "#a8321e"),
    ] {
        for index in 1..=4 {
            // the ω > 0 locus is broken at ω = 1
            for piece in [(f64::NEG_INFINITY, 1.0), (1.0, f64::INFINITY)] {
                let mut pts = points
                    .iter()
                    .filter(|p| p.series == series && p.index == Some(index))
                    .filter(|p| p.omega.is_some_and(|w| w > piece.0 && w < piece.1))
                    .map(|p| p.z)
                    .peekable();
                if pts.peek().is_none() {
                    continue;
                }
                let _ = writeln!(
                    s,
                    r#"<polyline class="{series}" points="{}" fill="none" stroke="{color}" stroke-width="1.5" stroke-dasharray="{dash}"/>"#,
                    polyline(&mut pts)
                );
            }
        }
    }

    for p in points.iter().filter(|p| p.series == "sigma0") {
        let (x, y) = px(p.z);
        let _ = writeln!(
            s,
            r#"<circle class="sigma0" cx="{x:.3}" cy="{y:.3}" r="3" fill="black"/>"#
        );
    }
    for p in points
        .iter()
        .filter(|p| p.series == "marker-omega-minus-one")
    {
        let (x, y) = px(p.z);
        let _ = writeln!(
            s,
            r#"<circle class="marker-omega-minus-one" cx="{x:.3}" cy="{y:.3}" r="5" fill="none" stroke="black" stroke-width="1.5"/>"#
        );
    }
    s.push_str("</svg>\n");
    s
}
