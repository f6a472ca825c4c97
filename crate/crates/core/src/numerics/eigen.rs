use super::{cis, CMatrix, C64};
use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 100;

/// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi
/// rotations.
///
/// Returns eigenvalues in ascending order and a unitary whose columns are the
/// matching eigenvectors. Inputs whose Hermiticity residual exceeds
/// `herm_tol` (max-norm of `m - m^dagger`) are rejected.
pub fn eig_hermitian(m: &CMatrix, herm_tol: f64) -> Result<(Vec<f64>, CMatrix)> {
    if !m.is_square() {
        return Err(Error::Shape {
            expected: (m.rows(), m.rows()),
            found: m.shape(),
        });
    }
    let residual = m.hermiticity_residual();
    if residual >= herm_tol.max(f64::MIN_POSITIVE) {
        return Err(Error::NotHermitian { residual });
    }
    let n = m.rows();
    // symmetrize so the rotations see an exactly Hermitian matrix
    let mut a = CMatrix::from_fn(n, n, |i, j| 0.5 * (m[(i, j)] + m[(j, i)].conj()));
    let mut v = CMatrix::identity(n);
    let scale = a.frobenius_norm();

    for _ in 0..MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[(i, j)].norm_sqr())
            .sum::<f64>()
            .sqrt();
        if off <= f64::EPSILON * 1e-2 * scale || off == 0.0 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let values = order.iter().map(|&i| a[(i, i)].re).collect();
    let vectors = CMatrix::from_fn(n, n, |r, c| v[(r, order[c])]);
    Ok((values, vectors))
}

/// One Jacobi step zeroing `a[p][q]`: `a <- G^dagger a G`, `v <- v G`.
fn rotate(a: &mut CMatrix, v: &mut CMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let mag = apq.norm();
    if mag == 0.0 {
        return;
    }
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let tau = (aqq - app) / (2.0 * mag);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    let ph = cis(-apq.arg());
    // G = diag(1, e^{-i phi}) applied after the real rotation [[c, s], [-s, c]]
    let g_pp = C64::new(c, 0.0);
    let g_pq = C64::new(s, 0.0);
    let g_qp = ph * (-s);
    let g_qq = ph * c;
    let n = a.rows();

    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * g_pp + akq * g_qp;
        a[(k, q)] = akp * g_pq + akq * g_qq;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = g_pp.conj() * apk + g_qp.conj() * aqk;
        a[(q, k)] = g_pq.conj() * apk + g_qq.conj() * aqk;
    }
    a[(p, q)] = C64::new(0.0, 0.0);
    a[(q, p)] = C64::new(0.0, 0.0);
    a[(p, p)] = C64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = C64::new(a[(q, q)].re, 0.0);

    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * g_pp + vkq * g_qp;
        v[(k, q)] = vkp * g_pq + vkq * g_qq;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{random_hermitian, ONE};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn diagonal_input() {
        let m = CMatrix::real_diag(&[0.5, 0.5, 0.0, 0.0]);
        let (vals, _) = eig_hermitian(&m, 1e-10).unwrap();
        assert_eq!(vals, vec![0.0, 0.0, 0.5, 0.5]);
    }

    #[test]
    fn rank_one_projector() {
        let m = CMatrix::from_rows(&[[ONE, ONE], [ONE, ONE]]).scale_real(0.5);
        let (vals, _) = eig_hermitian(&m, 1e-10).unwrap();
        assert!(vals[0].abs() < 1e-15);
        assert!((vals[1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn rejects_non_hermitian() {
        let m = CMatrix::from_rows(&[[ONE, ONE], [-ONE, ONE]]);
        assert!(matches!(
            eig_hermitian(&m, 1e-10),
            Err(Error::NotHermitian { .. })
        ));
    }

    #[test]
    fn reconstruction_and_orthonormality() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let m = random_hermitian(4, &mut rng);
            let (vals, vecs) = eig_hermitian(&m, 1e-10).unwrap();
            assert!(vals.windows(2).all(|w| w[0] <= w[1]));
            let lam = CMatrix::real_diag(&vals);
            let rec = &(&vecs * &lam) * &vecs.adjoint();
            assert!((&rec - &m).frobenius_norm() < 1e-10);
            assert!(vecs.unitarity_residual() < 1e-12);
            let tr: f64 = vals.iter().sum();
            assert!((tr - m.trace().re).abs() < 1e-10);
            for k in 0..4 {
                let col = CMatrix::from_fn(4, 1, |i, _| vecs[(i, k)]);
                let mv = &m * &col;
                let lv = col.scale_real(vals[k]);
                assert!((&mv - &lv).max_abs() < 1e-10);
            }
        }
    }
}
