//! Mutual unbiasedness, submatrix exclusion scans, a numerical search for
//! MUB trio extensions and the grid scan of the one-zero closed forms.

mod appendix_c;
mod scan;
mod search;

pub use appendix_c::{appendix_c_scan, cos2_theta2, cos_theta1, AppendixCReport, RegionMinimum};
pub use scan::{
    exclusion_scan, exclusion_scan_products, exclusion_scan_with, ExclusionFinding, FindingKind,
    ScanMode,
};
pub use search::{
    givens_unitary, trio_extension_search, trio_penalty, TrioSearchConfig, TrioSearchResult,
    ANGLES_PER_UNITARY,
};

use serde::Serialize;

use crate::chm::{chm_modulus, is_chm};
use crate::error::{Error, Result};
use crate::numerics::{CMatrix, Tolerances};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct UnbiasedCheck {
    pub unbiased: bool,
    /// `max | |(a^dagger b)_jk| - 1/sqrt(6) |`
    pub max_deviation: f64,
}

/// Whether the columns of `a` and `b` form mutually unbiased bases.
pub fn unbiased(a: &CMatrix, b: &CMatrix, tol: &Tolerances) -> Result<UnbiasedCheck> {
    a.expect_shape(6, 6)?;
    b.expect_shape(6, 6)?;
    for (which, m) in [("a", a), ("b", b)] {
        let residual = m.unitarity_residual();
        if residual >= tol.unitarity_tol {
            return Err(Error::NotUnitary { which, residual });
        }
    }
    let s = chm_modulus();
    let max_deviation = (&a.adjoint() * b)
        .data()
        .iter()
        .map(|z| (z.norm() - s).abs())
        .fold(0.0, f64::max);
    Ok(UnbiasedCheck {
        unbiased: max_deviation <= tol.modulus_tol,
        max_deviation,
    })
}

/// Three CHMs that are pairwise unbiased, so that together with the identity
/// they would give four MUBs.
pub fn is_trio(b1: &CMatrix, b2: &CMatrix, b3: &CMatrix, tol: &Tolerances) -> bool {
    let all_chm = [b1, b2, b3].iter().all(|m| is_chm(m, tol).is_chm);
    all_chm
        && [(b1, b2), (b1, b3), (b2, b3)]
            .iter()
            .all(|(a, b)| unbiased(a, b, tol).is_ok_and(|c| c.unbiased))
}
