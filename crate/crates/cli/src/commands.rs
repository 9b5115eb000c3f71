use std::fmt::Write as _;
use std::path::Path;
use std::process::ExitCode;

use defectwalk_core::oracle::newton::GridSpec;
use defectwalk_core::spectrum::{classify_with, eigenvalues, eigenvector_by_index};
use defectwalk_core::validation::{run_validation, ValidationConfig, DEFAULT_OMEGA_GRID};
use defectwalk_core::walk::{eigen_residual, evolve, StepRecord};
use defectwalk_core::{DefectParameter, Error, InitialState, Tolerances, WaveFunction};
use serde::Serialize;

use crate::output::{emit, json, num, version_line};
use crate::{Command, Common, EigvecArgs, Format, SimulateArgs, SpectrumArgs, ValidateArgs};

pub const EXIT_VALIDATION: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    pub fn io(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let message = match e {
            Error::ZeroOmega | Error::HomogeneousOmega => {
                format!("{e} [hypothesis: omega in R \\ {{0, 1}}]")
            }
            other => other.to_string(),
        };
        Failure::usage(message)
    }
}

pub fn run(command: Command) -> Result<ExitCode, Failure> {
    match command {
        Command::Spectrum(a) => spectrum(a),
        Command::Eigvec(a) => eigvec(a),
        Command::Simulate(a) => simulate(a),
        Command::Validate(a) => validate(a),
        Command::Figure(a) => crate::figure::figure(a),
    }
}

fn tolerances(common: &Common) -> Result<Tolerances, Failure> {
    let base = Tolerances::from_env()?;
    Ok(match &common.tol {
        Some(raw) => base.with_overrides(raw)?,
        None => base,
    })
}

#[derive(Serialize)]
struct EigenvalueRow {
    index: usize,
    re: f64,
    im: f64,
    modulus: f64,
    region: &'static str,
}

#[derive(Serialize)]
struct SpectrumOut {
    generator: String,
    omega: f64,
    eigenvalues: Vec<EigenvalueRow>,
}

fn generator() -> String {
    format!("defectwalk {}", env!("CARGO_PKG_VERSION"))
}

fn spectrum(a: SpectrumArgs) -> Result<ExitCode, Failure> {
    let tol = tolerances(&a.common)?;
    let omega = DefectParameter::spectral(a.omega)?;
    let quad = eigenvalues(omega)?;
    let mut rows = Vec::new();
    for (index, l) in quad.iter() {
        rows.push(EigenvalueRow {
            index,
            re: l.re,
            im: l.im,
            modulus: l.norm(),
            region: classify_with(l, &tol)?.as_str(),
        });
    }
    let body = match a.common.format {
        Format::Json => json(&SpectrumOut {
            generator: generator(),
            omega: omega.value(),
            eigenvalues: rows,
        })?,
        Format::Csv => {
            let mut s = version_line("spectrum", &[("omega", omega.to_string())]);
            s.push_str("\nindex,re,im,modulus,region\n");
            for r in &rows {
                let _ = writeln!(
                    s,
                    "{},{},{},{},{}",
                    r.index,
                    num(r.re),
                    num(r.im),
                    num(r.modulus),
                    r.region
                );
            }
            s
        }
    };
    emit(a.common.out.as_deref(), &body)?;
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct SiteRow {
    x: i64,
    #[serde(rename = "reL")]
    re_l: f64,
    #[serde(rename = "imL")]
    im_l: f64,
    #[serde(rename = "reR")]
    re_r: f64,
    #[serde(rename = "imR")]
    im_r: f64,
}

fn site_rows(psi: &WaveFunction) -> Vec<SiteRow> {
    psi.sites()
        .map(|x| {
            let (l, r) = psi.get(x);
            SiteRow {
                x,
                re_l: l.re,
                im_l: l.im,
                re_r: r.re,
                im_r: r.im,
            }
        })
        .collect()
}

fn sites_csv(out: &mut String, psi: &WaveFunction) {
    out.push_str("x,reL,imL,reR,imR\n");
    for r in site_rows(psi) {
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            r.x,
            num(r.re_l),
            num(r.im_l),
            num(r.re_r),
            num(r.im_r)
        );
    }
}

#[derive(Serialize)]
struct EigvecOut {
    generator: String,
    omega: f64,
    index: usize,
    lambda_re: f64,
    lambda_im: f64,
    window: usize,
    interior_residual: f64,
    edge_residual: f64,
    sites: Vec<SiteRow>,
}

fn eigvec(a: EigvecArgs) -> Result<ExitCode, Failure> {
    let _ = tolerances(&a.common)?;
    let omega = DefectParameter::spectral(a.omega)?;
    let lambda = eigenvalues(omega)?.get(a.index)?;
    let psi = eigenvector_by_index(omega, a.index, a.window)?;
    let residual = eigen_residual(&psi, omega, lambda);
    let body = match a.common.format {
        Format::Json => json(&EigvecOut {
            generator: generator(),
            omega: omega.value(),
            index: a.index,
            lambda_re: lambda.re,
            lambda_im: lambda.im,
            window: a.window,
            interior_residual: residual.interior,
            edge_residual: residual.edge,
            sites: site_rows(&psi),
        })?,
        Format::Csv => {
            let mut s = version_line(
                "eigvec",
                &[
                    ("omega", omega.to_string()),
                    ("index", a.index.to_string()),
                    ("window", a.window.to_string()),
                    ("lambda_re", num(lambda.re)),
                    ("lambda_im", num(lambda.im)),
                ],
            );
            s.push('\n');
            sites_csv(&mut s, &psi);
            let _ = writeln!(s, "# interior_residual={}", num(residual.interior));
            let _ = writeln!(s, "# edge_residual={}", num(residual.edge));
            s
        }
    };
    emit(a.common.out.as_deref(), &body)?;
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct SimulateOut {
    generator: String,
    omega: f64,
    steps: usize,
    window: usize,
    initial: InitialState,
    light_cone_overflow: Option<usize>,
    records: Vec<StepRecord>,
}

fn simulate(a: SimulateArgs) -> Result<ExitCode, Failure> {
    let _ = tolerances(&a.common)?;
    let omega = DefectParameter::new(a.omega)?;
    let initial: InitialState = a.initial.into();
    let start = WaveFunction::delta(a.window, initial)?;
    let traj = evolve(&start, omega, a.steps)?;

    let warning = traj.light_cone_overflow.map(|t| {
        format!(
            "light cone leaves the window [-{w}, {w}] at t={t}; later rows are affected by truncation",
            w = a.window
        )
    });
    let body = match a.common.format {
        Format::Json => json(&SimulateOut {
            generator: generator(),
            omega: omega.value(),
            steps: a.steps,
            window: a.window,
            initial,
            light_cone_overflow: traj.light_cone_overflow,
            records: traj.records.clone(),
        })?,
        Format::Csv => {
            let initial_name = match a.initial {
                crate::Initial::OriginUp => "origin-up",
                crate::Initial::OriginDown => "origin-down",
                crate::Initial::OriginSymmetric => "origin-symmetric",
            };
            let mut s = version_line(
                "simulate",
                &[
                    ("omega", omega.to_string()),
                    ("steps", a.steps.to_string()),
                    ("window", a.window.to_string()),
                    ("initial", initial_name.to_string()),
                ],
            );
            s.push('\n');
            if let Some(w) = &warning {
                let _ = writeln!(s, "# warning: {w}");
            }
            s.push_str("t,norm,origin_weight,origin_prob_normalized,growth_rate_running\n");
            for r in &traj.records {
                let _ = writeln!(
                    s,
                    "{},{},{},{},{}",
                    r.t,
                    num(r.norm),
                    num(r.origin_weight),
                    num(r.origin_prob_normalized),
                    num(r.growth_rate_running)
                );
            }
            s
        }
    };
    if let Some(w) = &warning {
        eprintln!("warning: {w}");
    }
    emit(a.common.out.as_deref(), &body)?;
    if let Some(path) = &a.dump {
        let mut s = version_line(
            "simulate-final-state",
            &[("omega", omega.to_string()), ("t", a.steps.to_string())],
        );
        s.push('\n');
        sites_csv(&mut s, &traj.final_state);
        emit(Some(path.as_path()), &s)?;
    }
    Ok(ExitCode::SUCCESS)
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn validate(a: ValidateArgs) -> Result<ExitCode, Failure> {
    let tolerances = tolerances(&a.common)?;
    if a.seed_grid == 0 {
        return Err(Failure::usage("--seed-grid must be positive"));
    }
    let omegas = a
        .omega_grid
        .clone()
        .unwrap_or_else(|| DEFAULT_OMEGA_GRID.to_vec());
    if omegas.is_empty() {
        return Err(Failure::usage("--omega-grid is empty"));
    }
    let config = ValidationConfig {
        omegas,
        grid: GridSpec::square(a.seed_grid),
        tolerances,
        fault: a.inject_fault.map(Into::into),
        ..ValidationConfig::default()
    };
    let report = run_validation(&config)?;
    let body = match a.common.format {
        Format::Json => json(&report)?,
        Format::Csv => {
            let grid: Vec<String> = config.omegas.iter().map(|w| w.to_string()).collect();
            let mut s = version_line(
                "validate",
                &[
                    ("omega_grid", grid.join(";")),
                    ("seed_grid", a.seed_grid.to_string()),
                ],
            );
            s.push_str("\nomega,check,passed,value,tolerance,detail\n");
            for c in &report.checks {
                let _ = writeln!(
                    s,
                    "{},{},{},{},{},{}",
                    c.omega,
                    c.name,
                    c.passed,
                    num(c.value),
                    num(c.tolerance),
                    csv_field(c.detail.as_deref().unwrap_or(""))
                );
            }
            let _ = writeln!(s, "# all_passed={}", report.all_passed);
            s
        }
    };
    emit(a.common.out.as_deref(), &body)?;
    if report.all_passed {
        Ok(ExitCode::SUCCESS)
    } else {
        for c in report.failures() {
            eprintln!(
                "FAILED omega={} {} value={:e} tolerance={:e}",
                c.omega, c.name, c.value, c.tolerance
            );
        }
        Ok(ExitCode::from(EXIT_VALIDATION))
    }
}

pub fn write_paired(
    svg: Option<&Path>,
    svg_body: &str,
    csv: Option<&Path>,
    csv_body: &str,
) -> Result<(), Failure> {
    emit(svg, svg_body)?;
    if let Some(p) = csv {
        emit(Some(p), csv_body)?;
    }
    Ok(())
}
