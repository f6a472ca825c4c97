use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

use serde::Serialize;

use super::{build_h3, fourier3, is_chm, H3Params};
use crate::error::{Error, Result};
use crate::numerics::{CMatrix, Tolerances, C64, ONE};

/// Entries of `V` below this modulus count as zeros.
pub const ZERO_THRESHOLD: f64 = 1e-9;

/// Entrywise tolerance when matching a dephased `W` against a Fourier form.
pub const FOURIER_MATCH_TOL: f64 = 1e-8;

/// Zero-pattern class of `V`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum VZeroPattern {
    NoZeros,
    OneZero,
    FourZeros,
    /// six zeros: `V` is monomial
    Monomial,
    Other,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WForm {
    Fourier,
    ConjugateFourier,
    General,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StructureReport {
    pub v_zero_pattern: VZeroPattern,
    pub zero_count: usize,
    /// `(row, col)` of every near-zero entry of `V`, 0-based.
    pub zero_positions: Vec<(usize, usize)>,
    /// `(constraint, residual)` pairs for the constraints that apply to the pattern.
    pub alpha_constraints: Vec<(String, f64)>,
    pub w_form: WForm,
    /// `| |v|^2 (cos 2a_c2 - cos 2a_c1) - cos 2a_c2 |` for a one-zero `V`, where
    /// `v` is the entry in the zero's row and column `c1`.
    pub g_modulus_residual: Option<f64>,
}

impl StructureReport {
    pub fn constraint(&self, name: &str) -> Option<f64> {
        self.alpha_constraints
            .iter()
            .find(|(n, _)| n == name)
            .map(|&(_, r)| r)
    }

    /// Largest residual over every reported constraint.
    pub fn max_residual(&self) -> f64 {
        self.alpha_constraints
            .iter()
            .map(|&(_, r)| r)
            .chain(self.g_modulus_residual)
            .fold(0.0, f64::max)
    }
}

/// Classify the zero pattern of `V` and evaluate the structural constraints
/// that a CHM with that pattern has to satisfy.
///
/// Fails with [`Error::NotChm`] when the parameters do not build a CHM.
pub fn structure_report(p: &H3Params, tol: &Tolerances) -> Result<StructureReport> {
    let h = build_h3(p, tol)?;
    let chk = is_chm(&h, tol);
    if !chk.is_chm {
        return Err(Error::NotChm {
            unitarity: chk.unitarity_residual,
            modulus: chk.modulus_deviation,
        });
    }

    let v = p.v();
    let alpha = p.angles().alpha;
    let zero_positions: Vec<(usize, usize)> = (0..3)
        .flat_map(|i| (0..3).map(move |j| (i, j)))
        .filter(|&(i, j)| v[(i, j)].norm() < ZERO_THRESHOLD)
        .collect();
    let pattern = match zero_positions.len() {
        0 => VZeroPattern::NoZeros,
        1 => VZeroPattern::OneZero,
        4 => VZeroPattern::FourZeros,
        6 => VZeroPattern::Monomial,
        _ => VZeroPattern::Other,
    };

    let mut constraints = Vec::new();
    let mut g_modulus_residual = None;
    match pattern {
        VZeroPattern::Monomial => {
            for (k, a) in alpha.iter().enumerate() {
                constraints.push((format!("alpha{}_pi_over_4", k + 1), (a - FRAC_PI_4).abs()));
            }
        }
        VZeroPattern::FourZeros => {
            // the isolated column holds a single nonzero entry
            let isolated =
                (0..3).find(|&c| zero_positions.iter().filter(|&&(_, j)| j == c).count() == 2);
            if let Some(c) = isolated {
                let others: Vec<usize> = (0..3).filter(|&k| k != c).collect();
                constraints.push((
                    format!("alpha{}_pi_over_4", c + 1),
                    (alpha[c] - FRAC_PI_4).abs(),
                ));
                constraints.push((
                    format!(
                        "alpha{}_plus_alpha{}_pi_over_2",
                        others[0] + 1,
                        others[1] + 1
                    ),
                    (alpha[others[0]] + alpha[others[1]] - FRAC_PI_2).abs(),
                ));
            }
        }
        VZeroPattern::OneZero => {
            let (r, c0) = zero_positions[0];
            let others: Vec<usize> = (0..3).filter(|&k| k != c0).collect();
            let (c1, c2) = (others[0], others[1]);
            let cos2 = |k: usize| (2.0 * alpha[k]).cos();
            let g2 = v[(r, c1)].norm_sqr();
            g_modulus_residual = Some((g2 * (cos2(c2) - cos2(c1)) - cos2(c2)).abs());
        }
        VZeroPattern::NoZeros | VZeroPattern::Other => {}
    }
    constraints.push((
        "cos2_sum_3_over_2".to_string(),
        p.angles().cos2_sum_residual(),
    ));

    Ok(StructureReport {
        v_zero_pattern: pattern,
        zero_count: zero_positions.len(),
        zero_positions,
        alpha_constraints: constraints,
        w_form: classify_w(p.w()),
        g_modulus_residual,
    })
}

/// Dephase `W` by its first row and column and compare with `F_3/sqrt(3)`
/// and its conjugate.
pub fn classify_w(w: &CMatrix) -> WForm {
    let phase = |z: C64| if z.norm() > 0.0 { z / z.norm() } else { ONE };
    let anchor = phase(w[(0, 0)]);
    let dephased = CMatrix::from_fn(3, 3, |i, j| {
        w[(i, j)] * anchor / (phase(w[(i, 0)]) * phase(w[(0, j)]))
    });
    let f = fourier3();
    if (&dephased - &f).max_abs() <= FOURIER_MATCH_TOL {
        WForm::Fourier
    } else if (&dephased - &f.conj()).max_abs() <= FOURIER_MATCH_TOL {
        WForm::ConjugateFourier
    } else {
        WForm::General
    }
}
