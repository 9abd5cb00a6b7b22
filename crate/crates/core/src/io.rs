//! Text formats: integer/real matrix CSV (row-major, no header), vector
//! CSV (one value per line), the pattern table, and kernel/spectral dumps.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde::Serialize;

use crate::action::ActionKernel;
use crate::error::{Error, Result};
use crate::matrix::{IntMatrix, Matrix};
use crate::spectral::SpectralData;
use crate::twinslit::PatternRow;

pub fn int_matrix_csv(m: &IntMatrix) -> String {
    let mut out = String::new();
    for r in 0..m.rows() {
        let line: Vec<String> = m.row(r).iter().map(i64::to_string).collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    out
}

pub fn matrix_csv(m: &Matrix) -> String {
    let mut out = String::new();
    for r in 0..m.rows() {
        let line: Vec<String> = m.row(r).iter().map(f64::to_string).collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    out
}

pub fn vector_csv(v: &[f64]) -> String {
    let mut out = String::with_capacity(v.len() * 20);
    for x in v {
        let _ = writeln!(out, "{x}");
    }
    out
}

pub const PATTERN_HEADER: &str = "e_x_tilde,delta_phi,intensity,n_value,is_maximum";

pub fn pattern_csv(rows: &[PatternRow]) -> String {
    let mut out = String::from(PATTERN_HEADER);
    out.push('\n');
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            r.e_x_tilde, r.delta_phi, r.intensity, r.n_value, r.is_maximum
        );
    }
    out
}

/// Scalars stored next to the `A` and `J` CSV files.
#[derive(Clone, Debug, PartialEq, Serialize, serde::Deserialize)]
pub struct KernelSidecar {
    pub alpha: f64,
    pub beta: f64,
    pub hbar: f64,
    #[serde(rename = "N")]
    pub n: usize,
    pub edge_count: usize,
}

impl KernelSidecar {
    pub fn of(kernel: &ActionKernel) -> Self {
        Self {
            alpha: kernel.alpha(),
            beta: kernel.beta(),
            hbar: kernel.hbar(),
            n: kernel.vertex_count(),
            edge_count: kernel.graph().edge_count(),
        }
    }
}

/// Writes `kernel_A.csv`, `kernel_J.csv` and `kernel.json` into `dir`.
pub fn write_kernel_dump(dir: &Path, kernel: &ActionKernel) -> Result<()> {
    fs::create_dir_all(dir)?;
    fs::write(dir.join("kernel_A.csv"), matrix_csv(&kernel.a_matrix()))?;
    fs::write(dir.join("kernel_J.csv"), vector_csv(kernel.source()))?;
    let sidecar = serde_json::to_string_pretty(&KernelSidecar::of(kernel))?;
    fs::write(dir.join("kernel.json"), sidecar + "\n")?;
    Ok(())
}

/// Writes `eigenvalues.csv` and, when asked, `eigenvectors.csv` (one
/// column per mode).
pub fn write_spectral_dump(dir: &Path, spectral: &SpectralData, with_vectors: bool) -> Result<()> {
    fs::create_dir_all(dir)?;
    fs::write(
        dir.join("eigenvalues.csv"),
        vector_csv(spectral.eigenvalues()),
    )?;
    if with_vectors {
        fs::write(
            dir.join("eigenvectors.csv"),
            matrix_csv(&spectral.eigenvectors()),
        )?;
    }
    Ok(())
}

/// Parses numbers separated by commas and/or whitespace.
pub fn parse_values(text: &str) -> Result<Vec<f64>> {
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<f64>()
                .map_err(|_| Error::InvalidParameter(format!("not a number: {t:?}")))
        })
        .collect()
}
