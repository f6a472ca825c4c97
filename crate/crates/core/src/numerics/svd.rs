use super::{cis, CMatrix, C64};

const MAX_SWEEPS: usize = 80;

/// Singular values in descending order (`min(rows, cols)` of them), computed
/// with one-sided Jacobi rotations on the columns.
///
/// One-sided Jacobi keeps high relative accuracy on tiny singular values,
/// which the tolerance-based rank relies on.
pub fn svd_values(m: &CMatrix) -> Vec<f64> {
    let work = if m.cols() > m.rows() {
        m.adjoint()
    } else {
        m.clone()
    };
    let (rows, cols) = work.shape();
    let mut columns: Vec<Vec<C64>> = (0..cols).map(|j| work.column(j)).collect();

    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for i in 0..cols {
            for j in i + 1..cols {
                let alpha: f64 = columns[i].iter().map(|z| z.norm_sqr()).sum();
                let beta: f64 = columns[j].iter().map(|z| z.norm_sqr()).sum();
                let gamma: C64 = (0..rows)
                    .map(|k| columns[i][k].conj() * columns[j][k])
                    .sum();
                let g = gamma.norm();
                if g == 0.0 || g <= f64::EPSILON * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * g);
                let t = if zeta >= 0.0 {
                    1.0 / (zeta + (1.0 + zeta * zeta).sqrt())
                } else {
                    -1.0 / (-zeta + (1.0 + zeta * zeta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                let ph = cis(-gamma.arg());
                let (left, right) = columns.split_at_mut(j);
                for (x, y) in left[i].iter_mut().zip(right[0].iter_mut()) {
                    let (a, b) = (*x, *y);
                    *x = a * c - b * ph * s;
                    *y = a * s + b * ph * c;
                }
            }
        }
        if !rotated {
            break;
        }
    }

    let mut sigma: Vec<f64> = columns
        .iter()
        .map(|col| col.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt())
        .collect();
    sigma.sort_by(|a, b| b.total_cmp(a));
    sigma.truncate(rows.min(cols));
    sigma
}
