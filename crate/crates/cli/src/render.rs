//! Output documents and their json / text / csv renderings.
//!
//! Every number is rounded to 12 significant digits before it is stored in a
//! document, so what is printed re-parses to exactly the stored value.

use std::io::{self, Write};

use serde::{Deserialize, Serialize};

use lenslab::contraction::{EtaQuality, SweepRecord, WignerParams};
use lenslab::little_group::LittleGroupParams;
use lenslab::sl2_optics::{CoreParams, Regime};
use lenslab::Mat2;

pub const CSV_HEADER: [&str; 12] = [
    "x", "x1", "x2", "cosh_rho", "z", "lambda", "theta", "regime", "m11", "m12", "m21", "m22",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Text,
}

/// Round to 12 significant digits; `-0` becomes `0`.
pub fn sig12(v: f64) -> f64 {
    if v == 0.0 || !v.is_finite() {
        return if v == 0.0 { 0.0 } else { v };
    }
    format!("{v:.11e}").parse().unwrap_or(v)
}

/// Plain decimal in the usual range, exponent notation outside it.
pub fn format_number(v: f64) -> String {
    let v = sig12(v);
    let a = v.abs();
    if v == 0.0 || (1e-5..1e15).contains(&a) {
        format!("{v}")
    } else {
        format!("{v:e}")
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Input {
    Lens { d1: f64, d2: f64, f: f64 },
    Cavity { x: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoreDoc {
    pub x1: f64,
    pub x2: f64,
    pub x: f64,
    pub cosh_rho: f64,
    pub z: f64,
    pub b: f64,
}

impl From<&CoreParams> for CoreDoc {
    fn from(p: &CoreParams) -> Self {
        Self {
            x1: sig12(p.x1),
            x2: sig12(p.x2),
            x: sig12(p.x),
            cosh_rho: sig12(p.cosh_rho),
            z: sig12(p.z),
            b: sig12(p.b),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum LittleGroupDoc {
    Elliptic { phi: f64, eta: f64, quality: String },
    Parabolic { u: f64 },
    Hyperbolic { chi: f64, eta: f64, quality: String },
}

impl LittleGroupDoc {
    pub fn new(p: &LittleGroupParams, quality: EtaQuality) -> Self {
        let quality = quality.as_str().to_string();
        match *p {
            LittleGroupParams::Elliptic { phi, eta } => LittleGroupDoc::Elliptic {
                phi: sig12(phi),
                eta: sig12(eta),
                quality,
            },
            LittleGroupParams::Parabolic { u } => LittleGroupDoc::Parabolic { u: sig12(u) },
            LittleGroupParams::Hyperbolic { chi, eta } => LittleGroupDoc::Hyperbolic {
                chi: sig12(chi),
                eta: sig12(eta),
                quality,
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WignerDoc {
    pub lambda: f64,
    pub theta: f64,
}

impl From<&WignerParams> for WignerDoc {
    fn from(w: &WignerParams) -> Self {
        Self {
            lambda: sig12(w.lambda),
            theta: sig12(w.theta),
        }
    }
}

pub fn matrix_doc(m: &Mat2) -> [f64; 4] {
    m.entries().map(sig12)
}

/// Measured residuals of a composed system.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Residuals {
    /// `1/x1 + 1/x2 - 1`
    pub focal: f64,
    /// Upper-right entry of the raw system matrix.
    pub upper_right: f64,
    pub reconstruction: f64,
    pub determinant: f64,
    /// Largest entry difference between the core and the analytic matrix.
    pub dictionary: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputDocument {
    pub input: Input,
    pub core: CoreDoc,
    /// Core matrix, row-major.
    pub matrix: [f64; 4],
    pub system_matrix: [f64; 4],
    pub regime: String,
    pub little_group: LittleGroupDoc,
    pub wigner: WignerDoc,
    pub residuals: Residuals,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParamsDocument {
    pub input: Input,
    pub regime: String,
    pub little_group: LittleGroupDoc,
    pub wigner: WignerDoc,
    pub sign_quantity: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CavityResiduals {
    /// `|cosh(lambda) sin(theta) - 1|`
    pub cavity_identity: f64,
    /// Largest entry difference between `[[x-1, x-2], [x, x-1]]` and the analytic matrix.
    pub matrix: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CavityDocument {
    pub input: Input,
    pub matrix: [f64; 4],
    pub regime: String,
    pub wigner: WignerDoc,
    pub residuals: CavityResiduals,
}

pub fn regime_str(r: Regime) -> String {
    r.as_str().to_string()
}

pub fn write_json<T: Serialize>(out: &mut dyn Write, doc: &T) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut *out, doc)?;
    writeln!(out)
}

/// Aligned `key  value` table of a serialized document, nested keys dotted.
pub fn write_text<T: Serialize>(out: &mut dyn Write, doc: &T) -> io::Result<()> {
    let value = serde_json::to_value(doc).map_err(io::Error::other)?;
    let mut rows = Vec::new();
    flatten("", &value, &mut rows);
    let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    for (k, v) in rows {
        writeln!(out, "{k:<width$}  {v}")?;
    }
    Ok(())
}

fn flatten(prefix: &str, v: &serde_json::Value, rows: &mut Vec<(String, String)>) {
    use serde_json::Value;
    let key = |k: &str| {
        if prefix.is_empty() {
            k.to_string()
        } else {
            format!("{prefix}.{k}")
        }
    };
    match v {
        Value::Object(map) => {
            for (k, v) in map {
                flatten(&key(k), v, rows);
            }
        }
        Value::Array(items) if items.len() == 4 && items.iter().all(Value::is_number) => {
            let n: Vec<String> = items
                .iter()
                .map(|x| format_number(x.as_f64().unwrap_or(f64::NAN)))
                .collect();
            rows.push((
                prefix.to_string(),
                format!("[[{}, {}], [{}, {}]]", n[0], n[1], n[2], n[3]),
            ));
        }
        Value::Number(n) => rows.push((
            prefix.to_string(),
            format_number(n.as_f64().unwrap_or(f64::NAN)),
        )),
        Value::String(s) => rows.push((prefix.to_string(), s.clone())),
        other => rows.push((prefix.to_string(), other.to_string())),
    }
}

pub fn write_csv<W: Write>(out: W, records: &[SweepRecord]) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in records {
        let nums = |vals: &[f64]| vals.iter().map(|&v| format_number(v)).collect::<Vec<_>>();
        let mut row = nums(&[r.x, r.x1, r.x2, r.cosh_rho, r.z, r.lambda, r.theta]);
        row.push(r.regime.as_str().to_string());
        row.extend(nums(&[r.m11, r.m12, r.m21, r.m22]));
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}
