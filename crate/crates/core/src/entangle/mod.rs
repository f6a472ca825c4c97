//! Entangling power of the controlled unitary `U_AB = sum_k U_k ⊗ |k⟩⟨k|`
//! acting on a qubit `A` (controlled) and a qutrit `B` (control).
//!
//! The input is `|delta⟩_Aa ⊗ sum_k d_k |k⟩_B |x_k⟩_b` with
//! `|delta⟩ = c1|00⟩ + c2|01⟩ + c3|11⟩` (index `2A + a`). Tracing out `Bb`
//! leaves `rho_Aa = sum_k d_k^2 (U_k ⊗ I)|delta⟩⟨delta|(U_k ⊗ I)^dagger`
//! whatever the ancilla states `x_k` are, because the `|k⟩_B` are
//! orthonormal.

mod optimize;
mod sweep;

pub use optimize::{ep_optimize, grid_search, EpOptimum};
pub use sweep::{
    figure_curves, sweep, uab_family_angles, uab_family_x, x_grid, Alpha3Mode, SweepCurve,
    SweepRow, SweepSpec, X_MIN,
};

use serde::Serialize;

use crate::chm::{controlled_block, controlled_middle, Angles};
use crate::error::{Error, Result};
use crate::numerics::{eig_hermitian, kron, CMatrix, Tolerances, C64, ZERO};

/// `log2(3)`, the largest entanglement a Schmidt-rank-three gate can create.
pub fn log2_3() -> f64 {
    3f64.log2()
}

/// Floor under which a density matrix eigenvalue counts as a PSD violation.
pub const PSD_FLOOR: f64 = -1e-12;

/// The three 2x2 unitaries of a controlled gate.
#[derive(Debug, Clone, PartialEq)]
pub struct ControlledUnitary {
    u: [CMatrix; 3],
    source_angles: Option<Angles>,
}

impl ControlledUnitary {
    pub fn new(u1: CMatrix, u2: CMatrix, u3: CMatrix, tol: &Tolerances) -> Result<Self> {
        for (which, u) in [("U1", &u1), ("U2", &u2), ("U3", &u3)] {
            u.expect_shape(2, 2)?;
            let residual = u.unitarity_residual();
            if residual >= tol.unitarity_tol {
                return Err(Error::NotUnitary { which, residual });
            }
        }
        Ok(ControlledUnitary {
            u: [u1, u2, u3],
            source_angles: None,
        })
    }

    pub fn blocks(&self) -> &[CMatrix; 3] {
        &self.u
    }

    pub fn source_angles(&self) -> Option<&Angles> {
        self.source_angles.as_ref()
    }

    /// `sum_k U_k ⊗ |k⟩⟨k|` in the `3a + k` ordering.
    pub fn as_matrix6(&self) -> CMatrix {
        match &self.source_angles {
            Some(a) => controlled_middle(a),
            None => {
                let mut m = CMatrix::zeros(6, 6);
                for (k, u) in self.u.iter().enumerate() {
                    for a in 0..2 {
                        for b in 0..2 {
                            m[(3 * a + k, 3 * b + k)] = u[(a, b)];
                        }
                    }
                }
                m
            }
        }
    }
}

/// Controlled gate with `U_k = [[cos a, e^{ig} sin a], [e^{ib} sin a, -e^{i(b+g)} cos a]]`.
pub fn build_uab(angles: &Angles) -> ControlledUnitary {
    ControlledUnitary {
        u: [0, 1, 2].map(|k| controlled_block(angles.alpha[k], angles.beta[k], angles.gamma[k])),
        source_angles: Some(*angles),
    }
}

/// Product input `|delta⟩_Aa ⊗ sum_k d_k |k⟩_B |x_k⟩_b`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ProductInput {
    c1: f64,
    c2: f64,
    c3: C64,
    d: [f64; 3],
}

pub const INPUT_NORM_TOL: f64 = 1e-12;

impl ProductInput {
    pub fn new(c1: f64, c2: f64, c3: C64, d: [f64; 3]) -> Result<Self> {
        if c1 < 0.0 || c2 < 0.0 || d.iter().any(|&x| x < 0.0) {
            return Err(Error::Invalid("c1, c2 and d must be nonnegative".into()));
        }
        let nc = c1 * c1 + c2 * c2 + c3.norm_sqr();
        let nd: f64 = d.iter().map(|x| x * x).sum();
        if !((nc - 1.0).abs() <= INPUT_NORM_TOL && (nd - 1.0).abs() <= INPUT_NORM_TOL) {
            return Err(Error::Invalid(format!(
                "input not normalized: |c|^2 = {nc}, |d|^2 = {nd}"
            )));
        }
        Ok(ProductInput { c1, c2, c3, d })
    }

    /// `c = (1/sqrt 2, 0, 1/sqrt 2)` with the given `d`.
    pub fn canonical(d: [f64; 3]) -> Result<Self> {
        let s = 0.5f64.sqrt();
        Self::new(s, 0.0, C64::new(s, 0.0), d)
    }

    pub fn uniform_d() -> [f64; 3] {
        [3f64.sqrt().recip(); 3]
    }

    pub fn c1(&self) -> f64 {
        self.c1
    }

    pub fn c2(&self) -> f64 {
        self.c2
    }

    pub fn c3(&self) -> C64 {
        self.c3
    }

    pub fn d(&self) -> [f64; 3] {
        self.d
    }

    /// `|delta⟩` in the `2A + a` basis.
    pub fn delta(&self) -> [C64; 4] {
        [
            C64::new(self.c1, 0.0),
            C64::new(self.c2, 0.0),
            ZERO,
            self.c3,
        ]
    }
}

fn apply_a(u: &CMatrix, delta: &[C64; 4]) -> [C64; 4] {
    // (U ⊗ I) on index 2A + a
    let mut out = [ZERO; 4];
    for a_out in 0..2 {
        for a_in in 0..2 {
            for anc in 0..2 {
                out[2 * a_out + anc] += u[(a_out, a_in)] * delta[2 * a_in + anc];
            }
        }
    }
    out
}

fn inner(x: &[C64; 4], y: &[C64; 4]) -> C64 {
    x.iter().zip(y).map(|(a, b)| a.conj() * b).sum()
}

/// `rho_Aa` for an arbitrary normalized `|delta⟩` and weights `d_k`.
pub fn rho_aa_general(u: &ControlledUnitary, delta: &[C64; 4], d: &[f64; 3]) -> CMatrix {
    let mut rho = CMatrix::zeros(4, 4);
    for (k, uk) in u.u.iter().enumerate() {
        let phi = apply_a(uk, delta);
        let w = d[k] * d[k];
        for i in 0..4 {
            for j in 0..4 {
                rho[(i, j)] += phi[i] * phi[j].conj() * w;
            }
        }
    }
    rho
}

pub fn rho_aa(u: &ControlledUnitary, inp: &ProductInput) -> CMatrix {
    rho_aa_general(u, &inp.delta(), &inp.d)
}

/// `-sum lambda log2 lambda` with eigenvalues below `clamp` dropped.
pub fn entropy_of(eigenvalues: &[f64], clamp: f64) -> f64 {
    let s: f64 = eigenvalues
        .iter()
        .filter(|&&l| l > clamp)
        .map(|&l| -l * l.log2())
        .sum();
    s.max(0.0)
}

/// Eigenvalues (ascending) and von Neumann entropy in ebits.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EntanglementResult {
    pub eigenvalues: Vec<f64>,
    pub entropy_ebits: f64,
}

/// Validated spectrum and entropy of a density matrix.
pub fn entanglement(r: &CMatrix, tol: &Tolerances) -> Result<EntanglementResult> {
    if !r.is_square() {
        return Err(Error::Shape {
            expected: (r.rows(), r.rows()),
            found: r.shape(),
        });
    }
    let tr = r.trace();
    if (tr.re - 1.0).abs() > 1e-10 || tr.im.abs() > 1e-10 {
        return Err(Error::Invalid(format!("trace {tr} is not 1")));
    }
    let (eigenvalues, _) = eig_hermitian(r, tol.unitarity_tol)?;
    if eigenvalues[0] < PSD_FLOOR {
        return Err(Error::Invalid(format!(
            "density matrix has eigenvalue {}",
            eigenvalues[0]
        )));
    }
    let entropy_ebits = entropy_of(&eigenvalues, tol.eig_clamp);
    Ok(EntanglementResult {
        eigenvalues,
        entropy_ebits,
    })
}

/// Von Neumann entropy (base 2) of a density matrix.
pub fn entropy(r: &CMatrix, tol: &Tolerances) -> Result<f64> {
    Ok(entanglement(r, tol)?.entropy_ebits)
}

/// Entropy of `rho_Aa`, a lower bound on the entangling power of `u`.
pub fn ep_lower_bound(u: &ControlledUnitary, inp: &ProductInput, tol: &Tolerances) -> Result<f64> {
    entropy(&rho_aa(u, inp), tol)
}

/// `|⟨delta|(U_j ⊗ I)^dagger (U_k ⊗ I)|delta⟩|` for `(j, k) = (2,1), (3,2), (1,3)`.
///
/// The entropy reaches `log2 3` exactly when `d` is uniform and all three
/// vanish, i.e. the three branch states are pairwise orthogonal.
pub fn max_condition_residuals(u: &ControlledUnitary, inp: &ProductInput) -> [f64; 3] {
    let delta = inp.delta();
    let phi = u.u.each_ref().map(|uk| apply_a(uk, &delta));
    [(1, 0), (2, 1), (0, 2)].map(|(j, k)| inner(&phi[j], &phi[k]).norm())
}

/// `U_k ⊗ I_2` on the `Aa` space.
pub fn lift_a(u: &CMatrix) -> CMatrix {
    kron(u, &CMatrix::identity(2))
}
