//! Independent reference computations shared by the integration tests.
#![allow(dead_code)]

use chm_mub::numerics::{cis, kron, random_matrix, random_unitary};
use chm_mub::{CMatrix, C64};
use rand::seq::SliceRandom;
use rand::Rng;

/// `sum_{i<r} A_i ⊗ B_i` with Gaussian 2x2 and 3x3 factors.
pub fn planted_block_rank<R: Rng>(r: usize, rng: &mut R) -> CMatrix {
    let mut m = CMatrix::zeros(6, 6);
    for _ in 0..r {
        m = &m + &kron(&random_matrix(2, 2, rng), &random_matrix(3, 3, rng));
    }
    m
}

/// 4x9 realignment built directly from the entries: row `2a + b` holds
/// block `(a, b)` read row by row.
pub fn realign(m: &CMatrix) -> Vec<Vec<C64>> {
    let mut rows = Vec::new();
    for a in 0..2 {
        for b in 0..2 {
            let mut row = Vec::with_capacity(9);
            for i in 0..3 {
                for j in 0..3 {
                    row.push(m[(3 * a + i, 3 * b + j)]);
                }
            }
            rows.push(row);
        }
    }
    rows
}

/// Rank by Gaussian elimination with complete pivoting; pivots below
/// `rel` times the first pivot count as zero.
pub fn elimination_rank(mut a: Vec<Vec<C64>>, rel: f64) -> usize {
    let n_rows = a.len();
    let n_cols = a.first().map_or(0, Vec::len);
    let mut first = None;
    let mut rank = 0;
    for step in 0..n_rows.min(n_cols) {
        let mut best = (0.0, step, step);
        for (i, row) in a.iter().enumerate().skip(step) {
            for (j, z) in row.iter().enumerate().skip(step) {
                if z.norm() > best.0 {
                    best = (z.norm(), i, j);
                }
            }
        }
        let first = *first.get_or_insert(best.0);
        if first == 0.0 || best.0 <= rel * first {
            break;
        }
        a.swap(step, best.1);
        for row in a.iter_mut() {
            row.swap(step, best.2);
        }
        let pivot_row = a[step].clone();
        for row in a.iter_mut().skip(step + 1) {
            let f = row[step] / pivot_row[step];
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                *x -= f * p;
            }
        }
        rank += 1;
    }
    rank
}

/// `rho_Aa` from the full pure state on `A a B b` (2·2·3·2 = 24 amplitudes):
/// `sum_k d_k (U_k ⊗ I)|delta⟩ |k⟩_B |x_k⟩_b`, then trace out `B b`.
pub fn rho_from_state_vector(
    u: &[CMatrix; 3],
    delta: &[C64; 4],
    d: &[f64; 3],
    x: &[[C64; 2]; 3],
) -> CMatrix {
    let idx =
        |big_a: usize, a: usize, big_b: usize, b: usize| ((big_a * 2 + a) * 3 + big_b) * 2 + b;
    let mut psi = vec![C64::new(0.0, 0.0); 24];
    for k in 0..3 {
        for big_a in 0..2 {
            for a in 0..2 {
                let amp: C64 = (0..2).map(|s| u[k][(big_a, s)] * delta[2 * s + a]).sum();
                for b in 0..2 {
                    psi[idx(big_a, a, k, b)] += amp * d[k] * x[k][b];
                }
            }
        }
    }
    CMatrix::from_fn(4, 4, |i, j| {
        let mut s = C64::new(0.0, 0.0);
        for big_b in 0..3 {
            for b in 0..2 {
                s += psi[idx(i / 2, i % 2, big_b, b)] * psi[idx(j / 2, j % 2, big_b, b)].conj();
            }
        }
        s
    })
}

pub fn random_monomial<R: Rng>(n: usize, rng: &mut R) -> CMatrix {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    CMatrix::from_fn(n, n, |i, j| {
        if perm[i] == j {
            cis(rng.random_range(0.0..std::f64::consts::TAU))
        } else {
            C64::new(0.0, 0.0)
        }
    })
}

pub fn random_unit_vector<R: Rng, const N: usize>(rng: &mut R) -> [C64; N] {
    let u = random_unitary(N, rng);
    std::array::from_fn(|i| u[(i, 0)])
}

/// Nonnegative unit weights.
pub fn random_weights<R: Rng>(rng: &mut R) -> [f64; 3] {
    let d: [f64; 3] = std::array::from_fn(|_| rng.random_range(0.05..1.0));
    let n = d.iter().map(|x| x * x).sum::<f64>().sqrt();
    d.map(|x| x / n)
}
