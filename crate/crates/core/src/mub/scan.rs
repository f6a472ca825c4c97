use serde::{Deserialize, Serialize};

use crate::numerics::{cis, svd_values, CMatrix, Tolerances, C64, ONE};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FindingKind {
    #[serde(rename = "real_3x2")]
    Real3x2,
    #[serde(rename = "real_2x3")]
    Real2x3,
    #[serde(rename = "subunitary_3x3")]
    Subunitary3x3,
    #[serde(rename = "rank_one_2x3")]
    RankOne2x3,
}

impl FindingKind {
    pub fn shape(self) -> (usize, usize) {
        match self {
            FindingKind::Real3x2 => (3, 2),
            FindingKind::Real2x3 | FindingKind::RankOne2x3 => (2, 3),
            FindingKind::Subunitary3x3 => (3, 3),
        }
    }
}

/// A submatrix that rules the scanned matrix out of any MUB trio.
/// Indices are 0-based.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExclusionFinding {
    pub kind: FindingKind,
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub residual: f64,
    /// `(i, j)` when the finding comes from the product `b_i^dagger b_j`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub product: Option<(usize, usize)>,
}

/// What counts as a "real" submatrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ScanMode {
    /// every entry real as given
    Strict,
    /// real after one common phase: all entry phases in `{phi, phi + pi}`
    #[default]
    GlobalPhase,
    /// real after independent row and column phases, fixed by the first
    /// column and first row (entries of a CHM are never zero)
    Dephased,
}

pub(crate) fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::with_capacity(k), &mut out);
    out
}

fn unit(z: C64) -> C64 {
    let r = z.norm();
    if r > 0.0 {
        z / r
    } else {
        ONE
    }
}

/// Largest imaginary part left after the mode's phase freedom is used up.
fn reality_residual(s: &CMatrix, mode: ScanMode) -> f64 {
    let max_im = |m: &CMatrix| m.data().iter().map(|z| z.im.abs()).fold(0.0, f64::max);
    match mode {
        ScanMode::Strict => max_im(s),
        ScanMode::GlobalPhase => {
            // squaring maps phi and phi + pi to the same point
            let axis: C64 = s.data().iter().map(|z| z * z).sum();
            if axis.norm() == 0.0 {
                return s.max_abs();
            }
            max_im(&s.scale(cis(-0.5 * axis.arg())))
        }
        ScanMode::Dephased => {
            let (r, c) = s.shape();
            let row_ph: Vec<C64> = (0..r).map(|i| unit(s[(i, 0)]).conj()).collect();
            let rows_fixed = CMatrix::from_fn(r, c, |i, j| s[(i, j)] * row_ph[i]);
            let col_ph: Vec<C64> = (0..c).map(|j| unit(rows_fixed[(0, j)]).conj()).collect();
            max_im(&CMatrix::from_fn(r, c, |i, j| {
                rows_fixed[(i, j)] * col_ph[j]
            }))
        }
    }
}

/// `|| S S^dagger - (tr(S S^dagger)/3) I ||_F`
fn subunitary_residual(s: &CMatrix) -> f64 {
    let g = s * &s.adjoint();
    let t = g.trace().re / 3.0;
    (&g - &CMatrix::real_diag(&[t, t, t])).frobenius_norm()
}

/// Scan with the default mode (real up to a global phase).
pub fn exclusion_scan(m: &CMatrix, tol: &Tolerances) -> Vec<ExclusionFinding> {
    exclusion_scan_with(m, tol, ScanMode::default())
}

/// Enumerate every 3x2 and 2x3 submatrix (300 each) and every 3x3
/// submatrix (400), flagging real, subunitary and rank-one ones.
///
/// Real findings need residual `<= modulus_tol`, subunitary ones
/// `<= unitarity_tol`, and rank-one ones `sigma_2/sigma_1 <= rank_rel_tol`.
/// Findings come out grouped by kind in a fixed enumeration order.
pub fn exclusion_scan_with(m: &CMatrix, tol: &Tolerances, mode: ScanMode) -> Vec<ExclusionFinding> {
    let n = m.rows().min(m.cols());
    let r2 = subsets(m.rows(), 2);
    let r3 = subsets(m.rows(), 3);
    let c2 = subsets(m.cols(), 2);
    let c3 = subsets(m.cols(), 3);
    let mut out = Vec::new();
    if n < 3 {
        return out;
    }
    let push = |out: &mut Vec<ExclusionFinding>, kind, rows: &[usize], cols: &[usize], residual| {
        out.push(ExclusionFinding {
            kind,
            rows: rows.to_vec(),
            cols: cols.to_vec(),
            residual,
            product: None,
        })
    };

    for rows in &r3 {
        for cols in &c2 {
            let r = reality_residual(&m.select(rows, cols), mode);
            if r <= tol.modulus_tol {
                push(&mut out, FindingKind::Real3x2, rows, cols, r);
            }
        }
    }
    for rows in &r2 {
        for cols in &c3 {
            let r = reality_residual(&m.select(rows, cols), mode);
            if r <= tol.modulus_tol {
                push(&mut out, FindingKind::Real2x3, rows, cols, r);
            }
        }
    }
    for rows in &r3 {
        for cols in &c3 {
            let r = subunitary_residual(&m.select(rows, cols));
            if r <= tol.unitarity_tol {
                push(&mut out, FindingKind::Subunitary3x3, rows, cols, r);
            }
        }
    }
    for rows in &r2 {
        for cols in &c3 {
            let sigma = svd_values(&m.select(rows, cols));
            if sigma[0] > 0.0 {
                let r = sigma[1] / sigma[0];
                if r <= tol.rank_rel_tol {
                    push(&mut out, FindingKind::RankOne2x3, rows, cols, r);
                }
            }
        }
    }
    out
}

/// Scan every basis and every product `b_i^dagger b_j` (`i < j`).
pub fn exclusion_scan_products(
    bases: &[CMatrix],
    tol: &Tolerances,
    mode: ScanMode,
) -> Vec<ExclusionFinding> {
    let mut out = Vec::new();
    for b in bases {
        out.extend(exclusion_scan_with(b, tol, mode));
    }
    for i in 0..bases.len() {
        for j in i + 1..bases.len() {
            let p = &bases[i].adjoint() * &bases[j];
            out.extend(exclusion_scan_with(&p, tol, mode).into_iter().map(|mut f| {
                f.product = Some((i, j));
                f
            }));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chm::{build_eq5, build_h3, fourier3, Angles, Eq5Params, H3Params};
    use crate::numerics::{random_unitary, I};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::{FRAC_PI_4, PI};

    #[test]
    fn subset_counts() {
        assert_eq!(subsets(6, 3).len(), 20);
        assert_eq!(subsets(6, 2).len(), 15);
        assert_eq!(subsets(4, 0), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn three_param_has_real_lower_left_block() {
        let m = build_eq5(&Eq5Params::ones());
        let f = exclusion_scan(&m, &Tolerances::default());
        assert!(f
            .iter()
            .any(|f| f.kind == FindingKind::Real3x2 && f.rows == [3, 4, 5] && f.cols == [0, 1]));
        for x in &f {
            assert_eq!((x.rows.len(), x.cols.len()), x.kind.shape());
        }
    }

    #[test]
    fn fourier_v_has_subunitary_corner() {
        let tol = Tolerances::default();
        let p = H3Params::new(
            Angles::new(
                [FRAC_PI_4; 3],
                [0.0, PI / 6.0, PI / 3.0],
                [0.0, PI / 3.0, 2.0 * PI / 3.0],
            ),
            fourier3(),
            CMatrix::identity(3),
            &tol,
        )
        .unwrap();
        let h = build_h3(&p, &tol).unwrap();
        let f = exclusion_scan(&h, &tol);
        assert!(f.iter().any(|f| f.kind == FindingKind::Subunitary3x3
            && f.rows == [0, 1, 2]
            && f.cols == [0, 1, 2]));
    }

    #[test]
    fn modes_are_nested() {
        // i * (real matrix): real only up to a phase
        let m = CMatrix::from_fn(6, 6, |i, j| {
            I * ([-2.0, -1.0, 1.0, 2.0][(i * 7 + j * 3) % 4])
        });
        let tol = Tolerances::default();
        let strict = exclusion_scan_with(&m, &tol, ScanMode::Strict);
        let global = exclusion_scan_with(&m, &tol, ScanMode::GlobalPhase);
        let dephased = exclusion_scan_with(&m, &tol, ScanMode::Dephased);
        let count = |v: &[ExclusionFinding], k| v.iter().filter(|f| f.kind == k).count();
        assert_eq!(count(&strict, FindingKind::Real3x2), 0);
        assert_eq!(count(&global, FindingKind::Real3x2), 300);
        assert_eq!(count(&dephased, FindingKind::Real3x2), 300);
    }

    #[test]
    fn random_unitary_scan_is_reproducible() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        let u = random_unitary(6, &mut rng);
        let tol = Tolerances::default();
        let a = exclusion_scan(&u, &tol);
        assert_eq!(a, exclusion_scan(&u, &tol));
        assert!(a.is_empty());
    }

    #[test]
    fn products_are_tagged() {
        let tol = Tolerances::default();
        let m = build_eq5(&Eq5Params::ones());
        let f = exclusion_scan_products(&[CMatrix::identity(6), m], &tol, ScanMode::GlobalPhase);
        assert!(f.iter().any(|f| f.product == Some((0, 1))));
    }
}
