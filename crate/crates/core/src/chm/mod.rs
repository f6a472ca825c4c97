//! Order-six complex Hadamard matrices (CHMs) viewed as bipartite operators
//! on `C^2 ⊗ C^3`.
//!
//! Row and column index `3a + j` corresponds to the basis state `|a⟩|j⟩`
//! with `a ∈ {0, 1}` on the qubit side and `j ∈ {0, 1, 2}` on the qutrit
//! side. The four 3x3 blocks `C, D, E, F` are the qubit-side matrix
//! elements `⟨a|M|b⟩`.

mod structure;

pub mod recipes;

use std::f64::consts::{FRAC_PI_2, PI};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{
    cis, is_monomial_unitary, kron, numerical_rank, omega, rank_of_values, svd_values, CMatrix,
    Tolerances, C64, ONE,
};

pub use structure::{structure_report, StructureReport, VZeroPattern, WForm};

/// Entry modulus of an order-six CHM.
pub fn chm_modulus() -> f64 {
    6f64.sqrt().recip()
}

/// `F_3 / sqrt(3)`.
pub fn fourier3() -> CMatrix {
    CMatrix::fourier(3).scale_real(3f64.sqrt().recip())
}

/// The three angle triples `(alpha, beta, gamma)` of the controlled
/// middle factor.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Angles {
    pub alpha: [f64; 3],
    pub beta: [f64; 3],
    pub gamma: [f64; 3],
}

impl Angles {
    pub fn new(alpha: [f64; 3], beta: [f64; 3], gamma: [f64; 3]) -> Self {
        Angles { alpha, beta, gamma }
    }

    /// Same angles with every phase reduced into `[0, 2 pi)`.
    pub fn wrapped(&self) -> Self {
        let w = |v: [f64; 3]| v.map(|t| t.rem_euclid(2.0 * PI));
        Angles {
            alpha: self.alpha,
            beta: w(self.beta),
            gamma: w(self.gamma),
        }
    }

    /// `|cos^2 a1 + cos^2 a2 + cos^2 a3 - 3/2|`; vanishes for every CHM in the family.
    pub fn cos2_sum_residual(&self) -> f64 {
        (self.alpha.iter().map(|a| a.cos().powi(2)).sum::<f64>() - 1.5).abs()
    }

    /// The 2x2 unitary `U_k` controlled on qutrit state `k`.
    pub fn block(&self, k: usize) -> CMatrix {
        controlled_block(self.alpha[k], self.beta[k], self.gamma[k])
    }

    /// Angles of the adjoint operator: `U_k^dagger` has the same template
    /// with `beta -> -gamma`, `gamma -> -beta`.
    pub fn adjoint(&self) -> Self {
        Angles {
            alpha: self.alpha,
            beta: self.gamma.map(|g| -g),
            gamma: self.beta.map(|b| -b),
        }
        .wrapped()
    }
}

/// `[[cos a, e^{ig} sin a], [e^{ib} sin a, -e^{i(b+g)} cos a]]`.
pub fn controlled_block(alpha: f64, beta: f64, gamma: f64) -> CMatrix {
    let (s, c) = alpha.sin_cos();
    CMatrix::from_rows(&[
        [C64::new(c, 0.0), cis(gamma) * s],
        [cis(beta) * s, -cis(beta + gamma) * c],
    ])
}

/// `sum_k U_k ⊗ |k⟩⟨k|`, the sparse middle factor of the family.
pub fn controlled_middle(angles: &Angles) -> CMatrix {
    let mut m = CMatrix::zeros(6, 6);
    for k in 0..3 {
        let u = angles.block(k);
        for a in 0..2 {
            for b in 0..2 {
                m[(3 * a + k, 3 * b + k)] = u[(a, b)];
            }
        }
    }
    m
}

/// Parameters of a Schmidt-rank-three CHM `(I2 ⊗ V) · Mid · (I2 ⊗ W)`.
///
/// The first column of `W` is kept nonnegative real; the compensating row
/// phases of `W` are moved into `V`, which is exact because diagonal
/// qutrit-side phases commute with the middle factor. Any extra diagonal
/// phases on the columns of `W` are simply part of `W`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "H3ParamsRaw", into = "H3ParamsRaw")]
pub struct H3Params {
    angles: Angles,
    v: CMatrix,
    w: CMatrix,
}

#[derive(Serialize, Deserialize)]
struct H3ParamsRaw {
    alpha: [f64; 3],
    beta: [f64; 3],
    gamma: [f64; 3],
    v: CMatrix,
    w: CMatrix,
}

impl TryFrom<H3ParamsRaw> for H3Params {
    type Error = Error;

    fn try_from(raw: H3ParamsRaw) -> Result<Self> {
        H3Params::new(
            Angles::new(raw.alpha, raw.beta, raw.gamma),
            raw.v,
            raw.w,
            &Tolerances::default(),
        )
    }
}

impl From<H3Params> for H3ParamsRaw {
    fn from(p: H3Params) -> Self {
        H3ParamsRaw {
            alpha: p.angles.alpha,
            beta: p.angles.beta,
            gamma: p.angles.gamma,
            v: p.v,
            w: p.w,
        }
    }
}

impl H3Params {
    pub fn new(angles: Angles, v: CMatrix, w: CMatrix, tol: &Tolerances) -> Result<Self> {
        for (k, &a) in angles.alpha.iter().enumerate() {
            if !(-1e-12..=FRAC_PI_2 + 1e-12).contains(&a) {
                return Err(Error::OutOfRange {
                    name: ["alpha1", "alpha2", "alpha3"][k],
                    value: a,
                    range: "[0, pi/2]",
                });
            }
        }
        v.expect_shape(3, 3)?;
        w.expect_shape(3, 3)?;
        check_unitary(&v, "V", tol)?;
        check_unitary(&w, "W", tol)?;
        let (v, w) = normalize_first_column(&v, &w);
        Ok(H3Params {
            angles: angles.wrapped(),
            v,
            w,
        })
    }

    pub fn angles(&self) -> &Angles {
        &self.angles
    }

    pub fn v(&self) -> &CMatrix {
        &self.v
    }

    pub fn w(&self) -> &CMatrix {
        &self.w
    }

    /// Parameters of `H3^dagger = (I ⊗ W^dagger) Mid^dagger (I ⊗ V^dagger)`.
    pub fn adjoint(&self) -> Self {
        let (v, w) = normalize_first_column(&self.w.adjoint(), &self.v.adjoint());
        H3Params {
            angles: self.angles.adjoint(),
            v,
            w,
        }
    }

    pub fn h4(&self) -> CMatrix {
        build_h4(&self.angles)
    }
}

fn check_unitary(m: &CMatrix, which: &'static str, tol: &Tolerances) -> Result<()> {
    let residual = m.unitarity_residual();
    if residual < tol.unitarity_tol {
        Ok(())
    } else {
        Err(Error::NotUnitary { which, residual })
    }
}

fn normalize_first_column(v: &CMatrix, w: &CMatrix) -> (CMatrix, CMatrix) {
    let phases: Vec<C64> = (0..3)
        .map(|k| {
            let z = w[(k, 0)];
            if z.norm() > 1e-15 {
                z / z.norm()
            } else {
                ONE
            }
        })
        .collect();
    let w = CMatrix::from_fn(3, 3, |i, j| {
        if j == 0 {
            // exact nonnegative real after dephasing
            C64::new(w[(i, 0)].norm(), 0.0)
        } else {
            phases[i].conj() * w[(i, j)]
        }
    });
    let v = CMatrix::from_fn(3, 3, |i, j| v[(i, j)] * phases[j]);
    (v, w)
}

/// `(I2 ⊗ V) · Mid(alpha, beta, gamma) · (I2 ⊗ W)`.
pub fn build_h3(p: &H3Params, tol: &Tolerances) -> Result<CMatrix> {
    check_unitary(&p.v, "V", tol)?;
    check_unitary(&p.w, "W", tol)?;
    let i2 = CMatrix::identity(2);
    let mid = controlled_middle(&p.angles);
    Ok(&(&kron(&i2, &p.v) * &mid) * &kron(&i2, &p.w))
}

/// The 3x4 matrix whose row `j` is
/// `(cos a_j, e^{ib_j} sin a_j, e^{ig_j} sin a_j, -e^{i(b_j+g_j)} cos a_j)`.
///
/// Row `j` is the column-major vectorization of `U_j`, so its rank is the
/// Schmidt rank of the middle factor.
pub fn build_h4(angles: &Angles) -> CMatrix {
    CMatrix::from_fn(3, 4, |j, col| {
        let (s, c) = angles.alpha[j].sin_cos();
        let (b, g) = (angles.beta[j], angles.gamma[j]);
        match col {
            0 => C64::new(c, 0.0),
            1 => cis(b) * s,
            2 => cis(g) * s,
            _ => -cis(b + g) * c,
        }
    })
}

/// Unit-modulus parameters of the explicit Schmidt-rank-three example.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Eq5Params {
    x: C64,
    y: C64,
    z: C64,
}

impl Eq5Params {
    pub fn new(x: C64, y: C64, z: C64, tol: &Tolerances) -> Result<Self> {
        let p = Self::allow_degenerate(x, y, z, tol)?;
        let distance = p.degeneracy_distance();
        if distance <= 1e-9 {
            return Err(Error::DegenerateEq5 { distance });
        }
        Ok(p)
    }

    /// Only the unit-modulus check. On the excluded set `z/y = -conj(z)/x`
    /// the matrix is still a CHM but its Schmidt rank drops to two.
    pub fn allow_degenerate(x: C64, y: C64, z: C64, tol: &Tolerances) -> Result<Self> {
        for (which, v) in [("x", x), ("y", y), ("z", z)] {
            let deviation = (v.norm() - 1.0).abs();
            if deviation.is_nan() || deviation > tol.modulus_tol {
                return Err(Error::Modulus { which, deviation });
            }
        }
        Ok(Eq5Params { x, y, z })
    }

    /// `|z/y + conj(z)/x|`
    pub fn degeneracy_distance(&self) -> f64 {
        (self.z / self.y + self.z.conj() / self.x).norm()
    }

    pub fn ones() -> Self {
        Eq5Params {
            x: ONE,
            y: ONE,
            z: ONE,
        }
    }

    pub fn x(&self) -> C64 {
        self.x
    }

    pub fn y(&self) -> C64 {
        self.y
    }

    pub fn z(&self) -> C64 {
        self.z
    }
}

pub fn build_eq5(p: &Eq5Params) -> CMatrix {
    let (x, y, z) = (p.x, p.y, p.z);
    let w = omega();
    let w2 = w * w;
    let zc = z.conj();
    CMatrix::from_rows(&[
        [y, -y, z, ONE, ONE, ONE],
        [y * w2, -y * w2, z * w, ONE, ONE, w],
        [y * w, -y * w, z * w2, ONE, ONE, w2],
        [ONE, ONE, ONE, x, -x, -zc],
        [ONE, ONE, w, x * w2, -x * w2, -zc * w],
        [ONE, ONE, w2, x * w, -x * w, -zc * w2],
    ])
    .scale_real(chm_modulus())
}

/// The four 3x3 blocks of a 6x6 matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockDecomposition {
    /// upper-left
    pub c: CMatrix,
    /// upper-right
    pub d: CMatrix,
    /// lower-left
    pub e: CMatrix,
    /// lower-right
    pub f: CMatrix,
}

impl BlockDecomposition {
    pub fn reassemble(&self) -> CMatrix {
        CMatrix::from_fn(6, 6, |i, j| {
            let blk = match (i / 3, j / 3) {
                (0, 0) => &self.c,
                (0, _) => &self.d,
                (_, 0) => &self.e,
                _ => &self.f,
            };
            blk[(i % 3, j % 3)]
        })
    }

    pub fn blocks(&self) -> [&CMatrix; 4] {
        [&self.c, &self.d, &self.e, &self.f]
    }

    /// 4x9 matrix whose rows are the row-major vectorized blocks.
    pub fn realignment(&self) -> CMatrix {
        self.realignment_of(&[0, 1, 2, 3])
    }

    /// Realignment restricted to a subset of the blocks (in `c, d, e, f` order).
    pub fn realignment_of(&self, which: &[usize]) -> CMatrix {
        let blocks = self.blocks();
        CMatrix::from_fn(which.len(), 9, |r, k| blocks[which[r]][(k / 3, k % 3)])
    }
}

pub fn split_blocks(m: &CMatrix) -> Result<BlockDecomposition> {
    m.expect_shape(6, 6)?;
    Ok(BlockDecomposition {
        c: m.block(0, 0, 3, 3),
        d: m.block(0, 3, 3, 3),
        e: m.block(3, 0, 3, 3),
        f: m.block(3, 3, 3, 3),
    })
}

/// Singular values of the block realignment, descending (four values).
pub fn realignment_singular_values(m: &CMatrix) -> Result<Vec<f64>> {
    Ok(svd_values(&split_blocks(m)?.realignment()))
}

/// Number of linearly independent blocks, i.e. the operator Schmidt rank
/// across the `C^2 : C^3` cut.
pub fn schmidt_rank(m: &CMatrix, tol: &Tolerances) -> Result<usize> {
    Ok(rank_of_values(
        &realignment_singular_values(m)?,
        tol.rank_rel_tol,
    ))
}

/// Ranks of the four 3-subsets of blocks, in the order
/// `{c,d,e}, {c,d,f}, {c,e,f}, {d,e,f}`.
pub fn block_triple_ranks(m: &CMatrix, tol: &Tolerances) -> Result<[usize; 4]> {
    let blocks = split_blocks(m)?;
    let triples = [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]];
    Ok(triples.map(|t| numerical_rank(&blocks.realignment_of(&t), tol)))
}

/// Outcome of the CHM predicate with its two diagnostics.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChmCheck {
    pub is_chm: bool,
    /// `max |M M^dagger - I|`
    pub unitarity_residual: f64,
    /// `max | |m_jk| - 1/sqrt(6) |`
    pub modulus_deviation: f64,
}

pub fn is_chm(m: &CMatrix, tol: &Tolerances) -> ChmCheck {
    if m.shape() != (6, 6) {
        return ChmCheck {
            is_chm: false,
            unitarity_residual: f64::INFINITY,
            modulus_deviation: f64::INFINITY,
        };
    }
    let unitarity_residual = m.unitarity_residual();
    let target = chm_modulus();
    let modulus_deviation = m
        .data()
        .iter()
        .map(|z| (z.norm() - target).abs())
        .fold(0.0, f64::max);
    ChmCheck {
        is_chm: unitarity_residual < tol.unitarity_tol && modulus_deviation <= tol.modulus_tol,
        unitarity_residual,
        modulus_deviation,
    }
}

/// `(p ⊗ q) · m · (r ⊗ s)` for monomial unitaries `p, r` (2x2) and `q, s` (3x3).
pub fn equivalence_transform(
    m: &CMatrix,
    p: &CMatrix,
    q: &CMatrix,
    r: &CMatrix,
    s: &CMatrix,
    tol: &Tolerances,
) -> Result<CMatrix> {
    m.expect_shape(6, 6)?;
    for (which, f, n) in [("p", p, 2), ("q", q, 3), ("r", r, 2), ("s", s, 3)] {
        f.expect_shape(n, n)?;
        if !is_monomial_unitary(f, tol.unitarity_tol) {
            return Err(Error::NotMonomial { which });
        }
    }
    Ok(&(&kron(p, q) * m) * &kron(r, s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{random_unitary, I};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::FRAC_PI_4;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    fn fourier_v_params() -> H3Params {
        H3Params::new(
            Angles::new(
                [FRAC_PI_4; 3],
                [0.0, PI / 6.0, PI / 3.0],
                [0.0, PI / 3.0, 2.0 * PI / 3.0],
            ),
            fourier3(),
            CMatrix::identity(3),
            &tol(),
        )
        .unwrap()
    }

    /// Rank of the realignment computed by brute force: Gaussian
    /// elimination with full pivoting on the 4x9 matrix.
    fn elimination_rank(m: &CMatrix) -> usize {
        let mut a = split_blocks(m).unwrap().realignment();
        let (rows, cols) = a.shape();
        let scale = a.max_abs().max(1e-300);
        let mut rank = 0;
        let mut used = vec![false; cols];
        for r in 0..rows {
            let mut best = (0.0, 0);
            for c in 0..cols {
                if !used[c] && a[(r, c)].norm() > best.0 {
                    best = (a[(r, c)].norm(), c);
                }
            }
            if best.0 <= 1e-9 * scale {
                continue;
            }
            let c = best.1;
            used[c] = true;
            rank += 1;
            for r2 in r + 1..rows {
                let f = a[(r2, c)] / a[(r, c)];
                for k in 0..cols {
                    let v = a[(r, k)];
                    a[(r2, k)] -= f * v;
                }
            }
        }
        rank
    }

    #[test]
    fn fourier_v_is_rank_three_chm() {
        let h = build_h3(&fourier_v_params(), &tol()).unwrap();
        let chk = is_chm(&h, &tol());
        assert!(chk.is_chm, "{chk:?}");
        assert_eq!(schmidt_rank(&h, &tol()).unwrap(), 3);
        assert_eq!(block_triple_ranks(&h, &tol()).unwrap(), [3, 3, 3, 3]);
        assert_eq!(numerical_rank(&fourier_v_params().h4(), &tol()), 3);
    }

    #[test]
    fn zero_angles_give_signed_identity() {
        let p = H3Params::new(
            Angles::new([0.0; 3], [0.0; 3], [0.0; 3]),
            CMatrix::identity(3),
            CMatrix::identity(3),
            &tol(),
        )
        .unwrap();
        let h = build_h3(&p, &tol()).unwrap();
        assert_eq!(h, CMatrix::real_diag(&[1.0, 1.0, 1.0, -1.0, -1.0, -1.0]));
        assert!(h.is_unitary(1e-12));
        assert!(!is_chm(&h, &tol()).is_chm);
    }

    #[test]
    fn equal_phases_collapse_to_rank_one() {
        let p = H3Params::new(
            Angles::new([FRAC_PI_4; 3], [0.0; 3], [0.0; 3]),
            CMatrix::identity(3),
            CMatrix::identity(3),
            &tol(),
        )
        .unwrap();
        let h = build_h3(&p, &tol()).unwrap();
        assert_eq!(elimination_rank(&h), 1);
        assert_eq!(schmidt_rank(&h, &tol()).unwrap(), 1);
    }

    #[test]
    fn h4_identical_rows_rank_one() {
        let a = Angles::new([0.4; 3], [1.1; 3], [2.3; 3]);
        assert_eq!(numerical_rank(&build_h4(&a), &tol()), 1);
    }

    #[test]
    fn h4_equal_angle_left_block() {
        // alpha_j = 1, beta1 = beta2, gamma1 = gamma2, beta3 - beta1 != gamma3 - gamma1
        let a = Angles::new([1.0; 3], [0.0, 0.0, FRAC_PI_2], [0.0, 0.0, FRAC_PI_4]);
        let h4 = build_h4(&a);
        let left = h4.select(&[0, 1, 2], &[0, 1, 2]);
        assert_eq!(numerical_rank(&left, &tol()), 2);
        for pair in [[0, 1], [0, 2], [1, 2]] {
            assert_eq!(numerical_rank(&left.select(&[0, 1, 2], &pair), &tol()), 2);
        }
    }

    #[test]
    fn three_param_examples() {
        let m = build_eq5(&Eq5Params::ones());
        assert!(is_chm(&m, &tol()).is_chm);
        assert_eq!(schmidt_rank(&m, &tol()).unwrap(), 3);
        let s = chm_modulus();
        for i in 3..6 {
            for j in 0..2 {
                assert!((m[(i, j)] - C64::new(s, 0.0)).norm() < 1e-15);
            }
        }
        let d = split_blocks(&m).unwrap().d;
        for i in 0..3 {
            for j in 0..2 {
                assert!((d[(i, j)] - C64::new(s, 0.0)).norm() < 1e-15);
            }
        }
        let p = Eq5Params::new(ONE, ONE, cis(0.3), &tol()).unwrap();
        let m = build_eq5(&p);
        assert!(m.unitarity_residual() < 1e-12);
        assert_eq!(schmidt_rank(&m, &tol()).unwrap(), 3);
    }

    #[test]
    fn three_param_on_excluded_set() {
        // z = i gives z/y = -conj(z)/x
        assert!(Eq5Params::new(ONE, ONE, I, &tol()).is_err());
        let p = Eq5Params::allow_degenerate(ONE, ONE, I, &tol()).unwrap();
        let m = build_eq5(&p);
        assert!(m.unitarity_residual() < 1e-12);
        assert!(is_chm(&m, &tol()).modulus_deviation < 1e-12);
        assert_eq!(schmidt_rank(&m, &tol()).unwrap(), 2);
    }

    #[test]
    fn three_param_rejects_bad_params() {
        assert!(matches!(
            Eq5Params::new(C64::new(2.0, 0.0), ONE, ONE, &tol()),
            Err(Error::Modulus { .. })
        ));
        // z/y = -conj(z)/x with x = -1, y = z = 1
        assert!(matches!(
            Eq5Params::new(-ONE, ONE, ONE, &tol()),
            Err(Error::DegenerateEq5 { .. })
        ));
    }

    #[test]
    fn identity_blocks() {
        let b = split_blocks(&CMatrix::identity(6)).unwrap();
        assert_eq!(b.c, CMatrix::identity(3));
        assert_eq!(b.f, CMatrix::identity(3));
        assert_eq!(b.d, CMatrix::zeros(3, 3));
        assert_eq!(b.e, CMatrix::zeros(3, 3));
        assert_eq!(schmidt_rank(&CMatrix::identity(6), &tol()).unwrap(), 1);
        assert!(split_blocks(&CMatrix::identity(5)).is_err());
    }

    #[test]
    fn blocks_reassemble_exactly() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let m = random_unitary(6, &mut rng);
        assert_eq!(split_blocks(&m).unwrap().reassemble(), m);
    }

    #[test]
    fn chm_predicate_negatives() {
        let i6 = is_chm(&CMatrix::identity(6), &tol());
        assert!(!i6.is_chm);
        assert!(i6.unitarity_residual < 1e-15);
        assert!(i6.modulus_deviation > 0.5);
        let ones = CMatrix::from_fn(6, 6, |_, _| C64::new(chm_modulus(), 0.0));
        let chk = is_chm(&ones, &tol());
        assert!(!chk.is_chm);
        assert!(chk.modulus_deviation < 1e-15);
        assert!(chk.unitarity_residual > 0.1);
    }

    #[test]
    fn swapping_qubit_basis_permutes_blocks() {
        let m = build_eq5(&Eq5Params::ones());
        let x = CMatrix::permutation(&[1, 0]);
        let i2 = CMatrix::identity(2);
        let i3 = CMatrix::identity(3);
        let t = equivalence_transform(&m, &x, &i3, &i2, &i3, &tol()).unwrap();
        let a = split_blocks(&m).unwrap();
        let b = split_blocks(&t).unwrap();
        assert_eq!((b.c, b.d, b.e, b.f), (a.e, a.f, a.c, a.d));
        let same = equivalence_transform(&m, &i2, &i3, &i2, &i3, &tol()).unwrap();
        assert_eq!(same, m);
    }

    #[test]
    fn equivalence_rejects_non_monomial() {
        let m = CMatrix::identity(6);
        let i2 = CMatrix::identity(2);
        let i3 = CMatrix::identity(3);
        let err = equivalence_transform(&m, &i2, &fourier3(), &i2, &i3, &tol()).unwrap_err();
        assert!(matches!(err, Error::NotMonomial { which: "q" }));
    }

    #[test]
    fn w_first_column_normalized_without_changing_h3() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let v = random_unitary(3, &mut rng);
        let w = random_unitary(3, &mut rng);
        let a = Angles::new(
            [rng.random_range(0.0..FRAC_PI_2); 3],
            [1.0, 2.0, 3.0],
            [0.5, 0.2, 4.0],
        );
        let p = H3Params::new(a, v.clone(), w.clone(), &tol()).unwrap();
        for k in 0..3 {
            assert!(p.w()[(k, 0)].im == 0.0 && p.w()[(k, 0)].re >= 0.0);
        }
        let i2 = CMatrix::identity(2);
        let direct = &(&kron(&i2, &v) * &controlled_middle(&a)) * &kron(&i2, &w);
        let built = build_h3(&p, &tol()).unwrap();
        assert!((&direct - &built).max_abs() < 1e-14);
    }

    #[test]
    fn adjoint_params_build_adjoint() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let p = H3Params::new(
            Angles::new([0.3, 0.9, 1.2], [0.1, 2.0, 5.0], [3.0, 0.4, 1.7]),
            random_unitary(3, &mut rng),
            random_unitary(3, &mut rng),
            &tol(),
        )
        .unwrap();
        let h = build_h3(&p, &tol()).unwrap();
        let ha = build_h3(&p.adjoint(), &tol()).unwrap();
        assert!((&ha - &h.adjoint()).max_abs() < 1e-14);
    }

    #[test]
    fn rejects_non_unitary_factors() {
        let bad = CMatrix::real_diag(&[1.0, 1.0, 2.0]);
        let a = Angles::new([0.1; 3], [0.0; 3], [0.0; 3]);
        assert!(matches!(
            H3Params::new(a, bad.clone(), CMatrix::identity(3), &tol()),
            Err(Error::NotUnitary { which: "V", .. })
        ));
        assert!(matches!(
            H3Params::new(a, CMatrix::identity(3), bad, &tol()),
            Err(Error::NotUnitary { which: "W", .. })
        ));
        let out = Angles::new([2.0, 0.1, 0.1], [0.0; 3], [0.0; 3]);
        assert!(H3Params::new(out, CMatrix::identity(3), CMatrix::identity(3), &tol()).is_err());
    }
}
