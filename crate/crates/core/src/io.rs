//! File formats: matrix and parameter JSON, finding JSON lines and the
//! sweep CSV.
//!
//! Matrices are `{"rows": R, "cols": C, "data": [[re, im], ...]}` in
//! row-major order. `f64` values are written in shortest round-trip form,
//! so a written matrix reads back bit for bit.

use std::io::{Read, Write};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::chm::Angles;
use crate::entangle::SweepRow;
use crate::error::{Error, Result};
use crate::mub::ExclusionFinding;
use crate::numerics::{CMatrix, Tolerances};

/// Parse JSON text; syntax and schema errors carry line and column.
pub fn from_json<T: DeserializeOwned>(text: &str) -> Result<T> {
    Ok(serde_json::from_str(text)?)
}

pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string(value)?)
}

pub fn to_json_pretty<T: Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)?)
}

pub fn read_matrix(text: &str) -> Result<CMatrix> {
    from_json(text)
}

/// Angles of a controlled gate, optionally with the outer unitaries.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnglesJson {
    pub alpha: [f64; 3],
    pub beta: [f64; 3],
    pub gamma: [f64; 3],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub v: Option<CMatrix>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub w: Option<CMatrix>,
}

impl AnglesJson {
    pub fn angles(&self) -> Angles {
        Angles::new(self.alpha, self.beta, self.gamma)
    }
}

/// One finding per line.
pub fn write_findings<W: Write>(mut w: W, findings: &[ExclusionFinding]) -> Result<()> {
    for f in findings {
        writeln!(w, "{}", to_json(f)?)?;
    }
    Ok(())
}

pub fn read_findings(text: &str) -> Result<Vec<ExclusionFinding>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            serde_json::from_str(l).map_err(|e| Error::Json {
                line: i + 1,
                column: e.column(),
                message: e.to_string(),
            })
        })
        .collect()
}

/// `v` with 12 significant digits, like C's `%.12g`.
pub fn format_sig12(v: f64) -> String {
    if v == 0.0 || !v.is_finite() {
        return if v == 0.0 { "0".into() } else { v.to_string() };
    }
    let exp = v.abs().log10().floor() as i32;
    if (-5..12).contains(&exp) {
        let decimals = (11 - exp).max(0) as usize;
        let s = format!("{v:.decimals$}");
        let s = if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        };
        if s == "-0" {
            "0".into()
        } else {
            s
        }
    } else {
        format!("{v:.11e}")
    }
}

pub const SWEEP_HEADER: [&str; 3] = ["x", "value_ebits", "curve_label"];

/// One row of the sweep CSV.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepCsvRow {
    pub x: f64,
    pub value_ebits: f64,
    pub curve_label: String,
}

/// Write `x,value_ebits,curve_label` rows, curves in the given order.
pub fn write_sweep_csv<W: Write>(w: W, curves: &[(String, Vec<SweepRow>)]) -> Result<()> {
    let mut wr = csv::Writer::from_writer(w);
    wr.write_record(SWEEP_HEADER)?;
    for (label, rows) in curves {
        for r in rows {
            wr.write_record([
                format_sig12(r.x).as_str(),
                format_sig12(r.value_ebits).as_str(),
                label.as_str(),
            ])?;
        }
    }
    wr.flush()?;
    Ok(())
}

pub fn read_sweep_csv<R: Read>(r: R) -> Result<Vec<SweepCsvRow>> {
    let mut rd = csv::Reader::from_reader(r);
    let header = rd.headers()?.clone();
    if header.iter().ne(SWEEP_HEADER) {
        return Err(Error::Invalid(format!(
            "sweep CSV header must be x,value_ebits,curve_label, found {}",
            header.iter().collect::<Vec<_>>().join(",")
        )));
    }
    Ok(rd.deserialize().collect::<std::result::Result<_, _>>()?)
}

/// Tolerances as JSON, for reports.
pub fn tolerances_json(t: &Tolerances) -> serde_json::Value {
    serde_json::json!({
        "unitarity_tol": t.unitarity_tol,
        "modulus_tol": t.modulus_tol,
        "rank_rel_tol": t.rank_rel_tol,
        "eig_clamp": t.eig_clamp,
    })
}
