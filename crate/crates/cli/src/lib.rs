//! Command-line front end for `lenslab`.
//!
//! [`run`] takes the argument list and the two output streams explicitly so
//! the whole program can be exercised in-process.

pub mod render;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use lenslab::contraction::{
    cavity_matrix, cavity_wigner, eta_quality, sign_quantity, sweep, wigner_from_lens,
    wigner_matrix,
};
use lenslab::sl2_optics::{
    classify, core_params, decompose, extract_params, focal_check, one_lens, LensSystem,
};
use lenslab::verify::{self, VerifyConfig};
use lenslab::{Error, DEFAULT_TOL};

use render::{
    matrix_doc, regime_str, sig12, CavityDocument, CavityResiduals, CoreDoc, Format, Input,
    LittleGroupDoc, OutputDocument, ParamsDocument, Residuals, WignerDoc,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "lenslab",
    version,
    about = "One-lens optics as Lorentz-group elements"
)]
pub struct Cli {
    /// Tolerance for regime bands and focal checks.
    #[arg(long, global = true, env = "LENSLAB_TOL", default_value_t = DEFAULT_TOL, value_parser = positive_finite)]
    pub tol: f64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compose a one-lens system and report its full decomposition.
    Compose {
        #[command(flatten)]
        lens: LensArgs,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Little-group and analytic parameters of a one-lens system.
    Params {
        #[command(flatten)]
        lens: LensArgs,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Sweep d2 at fixed f and d1, writing csv.
    Sweep {
        #[arg(long, default_value_t = 1.0)]
        f: f64,
        #[arg(long)]
        d1: f64,
        #[arg(long)]
        d2_min: f64,
        #[arg(long)]
        d2_max: f64,
        #[arg(long)]
        steps: usize,
        /// Output file; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Symmetric cavity with d1 = d2 = d.
    Cavity {
        /// Dimensionless ratio d / f.
        #[arg(long, conflicts_with = "d", required_unless_present = "d")]
        x: Option<f64>,
        #[arg(long)]
        d: Option<f64>,
        #[arg(long, default_value_t = 1.0, requires = "d")]
        f: f64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Randomized self-check of every identity the library relies on.
    Verify {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        cases: usize,
    },
}

#[derive(Debug, Clone, Copy, Args)]
pub struct LensArgs {
    #[arg(long)]
    pub d1: f64,
    #[arg(long)]
    pub d2: f64,
    #[arg(long, default_value_t = 1.0)]
    pub f: f64,
}

fn positive_finite(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(format!("must be positive and finite, got {v}"))
    }
}

#[derive(Debug)]
enum Failure {
    Lib(Error),
    Io(io::Error),
    Verification,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Io(e.into())
    }
}

/// Runs the program and returns its exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
                EXIT_USAGE
            } else {
                let _ = write!(out, "{}", e.render());
                EXIT_OK
            };
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(()) => EXIT_OK,
        Err(Failure::Verification) => EXIT_FAILED,
        Err(Failure::Lib(e)) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::Inconsistent(_) => EXIT_FAILED,
                _ => EXIT_USAGE,
            }
        }
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<(), Failure> {
    let tol = cli.tol;
    match &cli.command {
        Command::Compose { lens, format } => emit(out, *format, &compose_document(lens, tol)?),
        Command::Params { lens, format } => emit(out, *format, &params_document(lens, tol)?),
        Command::Sweep {
            f,
            d1,
            d2_min,
            d2_max,
            steps,
            out: path,
        } => {
            let records = sweep(*f, *d1, *d2_min, *d2_max, *steps, tol)?;
            match path {
                Some(p) => render::write_csv(BufWriter::new(File::create(p)?), &records)?,
                None => render::write_csv(&mut *out, &records)?,
            }
            Ok(())
        }
        Command::Cavity { x, d, f, format } => {
            let doc = cavity_document(*x, *d, *f, tol)?;
            emit(out, *format, &doc)
        }
        Command::Verify { seed, cases } => {
            let report = verify::run(&VerifyConfig {
                seed: *seed,
                cases: *cases,
                tol,
            });
            for c in &report.checks {
                let status = if c.passed { "PASS" } else { "FAIL" };
                write!(
                    out,
                    "{status}  {:<40} worst {:.3e}  threshold {:.1e}",
                    c.name, c.worst, c.threshold
                )?;
                if let Some(d) = &c.detail {
                    write!(out, "  ({d})")?;
                }
                writeln!(out)?;
            }
            let n_ok = report.checks.iter().filter(|c| c.passed).count();
            writeln!(
                out,
                "{n_ok}/{} checks passed (seed {seed}, {cases} cases)",
                report.checks.len()
            )?;
            if report.passed() {
                Ok(())
            } else {
                Err(Failure::Verification)
            }
        }
    }
}

fn emit<T: serde::Serialize>(out: &mut dyn Write, format: Format, doc: &T) -> Result<(), Failure> {
    match format {
        Format::Json => render::write_json(out, doc)?,
        Format::Text => render::write_text(out, doc)?,
    }
    Ok(())
}

fn lens_input(lens: &LensArgs) -> Input {
    Input::Lens {
        d1: sig12(lens.d1),
        d2: sig12(lens.d2),
        f: sig12(lens.f),
    }
}

pub fn compose_document(lens: &LensArgs, tol: f64) -> lenslab::Result<OutputDocument> {
    let sys = LensSystem::new(lens.d1, lens.d2, lens.f)?;
    let system = one_lens(&sys)?;
    let focal = focal_check(&sys, tol)?;
    let p = core_params(&sys)?;
    let dec = decompose(&sys)?;
    let regime = classify(&p, tol).regime;
    let little = extract_params(&dec.core, regime)?;
    let w = wigner_from_lens(&p)?;
    let reconstruction = dec
        .system()
        .rel_diff(&system)
        .max(dec.renormalized().max_abs_diff(&dec.camera_core()));
    Ok(OutputDocument {
        input: lens_input(lens),
        core: CoreDoc::from(&p),
        matrix: matrix_doc(&dec.core),
        system_matrix: matrix_doc(&system),
        regime: regime_str(regime),
        little_group: LittleGroupDoc::new(&little, eta_quality(&w)?),
        wigner: WignerDoc::from(&w),
        residuals: Residuals {
            focal: sig12(focal.residual),
            upper_right: sig12(focal.upper_right),
            reconstruction: sig12(reconstruction),
            determinant: sig12((system.det() - 1.0).abs()),
            dictionary: sig12(dec.core.max_abs_diff(&wigner_matrix(&w))),
        },
    })
}

pub fn params_document(lens: &LensArgs, tol: f64) -> lenslab::Result<ParamsDocument> {
    let sys = LensSystem::new(lens.d1, lens.d2, lens.f)?;
    let p = core_params(&sys)?;
    let dec = decompose(&sys)?;
    let regime = classify(&p, tol).regime;
    let little = extract_params(&dec.core, regime)?;
    let w = wigner_from_lens(&p)?;
    Ok(ParamsDocument {
        input: lens_input(lens),
        regime: regime_str(regime),
        little_group: LittleGroupDoc::new(&little, eta_quality(&w)?),
        wigner: WignerDoc::from(&w),
        sign_quantity: sig12(sign_quantity(&w)?),
    })
}

pub fn cavity_document(
    x: Option<f64>,
    d: Option<f64>,
    f: f64,
    tol: f64,
) -> lenslab::Result<CavityDocument> {
    let x = match (x, d) {
        (Some(x), None) => x,
        (None, Some(d)) => LensSystem::new(d, d, f)?.d1 / f,
        _ => {
            return Err(Error::InvalidInput(
                "give exactly one of --x and --d".into(),
            ))
        }
    };
    let w = cavity_wigner(x)?;
    let analytic = wigner_matrix(&w);
    let m = cavity_matrix(x);
    Ok(CavityDocument {
        input: Input::Cavity { x: sig12(x) },
        matrix: matrix_doc(&m),
        regime: regime_str(w.regime(tol)),
        wigner: WignerDoc::from(&w),
        residuals: CavityResiduals {
            cavity_identity: sig12((w.lambda.cosh() * w.theta.sin() - 1.0).abs()),
            matrix: sig12(m.max_abs_diff(&analytic)),
        },
    })
}
