//! Named parameter sets from the constructions the crate reproduces.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};
use std::fmt;
use std::str::FromStr;

use crate::chm::{build_eq5, build_h3, fourier3, Angles, Eq5Params, H3Params};
use crate::error::{Error, Result};
use crate::numerics::{CMatrix, Tolerances};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preset {
    /// explicit rank-three CHM with `x = y = z = 1`
    Eq5,
    /// `alpha = pi/4`, `beta = (0, pi/6, pi/3)`, `gamma = (0, pi/3, 2pi/3)`,
    /// `V = F_3/sqrt 3`, `W = I`
    Lemma2i,
    /// `alpha_j = 1`, `beta1 = beta2`, `gamma1 = gamma2`, `V = F_3/sqrt 3`, `W = I`
    Lemma2ii,
    /// the maximally entangling controlled gate, `V = W = I`
    Example1,
}

pub const ALL: [Preset; 4] = [
    Preset::Eq5,
    Preset::Lemma2i,
    Preset::Lemma2ii,
    Preset::Example1,
];

impl FromStr for Preset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ALL.into_iter().find(|p| p.name() == s).ok_or_else(|| {
            Error::Invalid(format!(
                "unknown preset {s:?} (eq5, lemma2i, lemma2ii, example1)"
            ))
        })
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Angles of the maximally entangling example:
/// `(pi/3, pi/3, 0)`, `beta = (0, -t, 0)`, `gamma = (0, t, -pi)`, `t = arccos(-1/3)`.
pub fn example1_angles() -> Angles {
    let t = (-1.0f64 / 3.0).acos();
    Angles::new([PI / 3.0, PI / 3.0, 0.0], [0.0, -t, 0.0], [0.0, t, -PI]).wrapped()
}

impl Preset {
    pub fn name(self) -> &'static str {
        match self {
            Preset::Eq5 => "eq5",
            Preset::Lemma2i => "lemma2i",
            Preset::Lemma2ii => "lemma2ii",
            Preset::Example1 => "example1",
        }
    }

    /// Parameters of the `(I ⊗ V) Mid (I ⊗ W)` form; `None` for `eq5`.
    pub fn h3_params(self) -> Option<H3Params> {
        let tol = Tolerances::default();
        let i3 = CMatrix::identity(3);
        let (angles, v, w) = match self {
            Preset::Eq5 => return None,
            Preset::Lemma2i => (
                Angles::new(
                    [FRAC_PI_4; 3],
                    [0.0, PI / 6.0, PI / 3.0],
                    [0.0, PI / 3.0, 2.0 * PI / 3.0],
                ),
                fourier3(),
                i3,
            ),
            Preset::Lemma2ii => (
                Angles::new([1.0; 3], [0.0, 0.0, FRAC_PI_2], [0.0, 0.0, FRAC_PI_4]),
                fourier3(),
                i3,
            ),
            Preset::Example1 => (example1_angles(), i3.clone(), i3),
        };
        Some(H3Params::new(angles, v, w, &tol).expect("preset factors are unitary"))
    }

    pub fn angles(self) -> Option<Angles> {
        self.h3_params().map(|p| *p.angles())
    }

    pub fn matrix(self, tol: &Tolerances) -> Result<CMatrix> {
        match self.h3_params() {
            Some(p) => build_h3(&p, tol),
            None => Ok(build_eq5(&Eq5Params::ones())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chm::{is_chm, schmidt_rank};

    #[test]
    fn names_round_trip() {
        for p in ALL {
            assert_eq!(p.name().parse::<Preset>().unwrap(), p);
        }
        assert!("eq6".parse::<Preset>().is_err());
    }

    #[test]
    fn preset_matrices() {
        let tol = Tolerances::default();
        for p in [Preset::Eq5, Preset::Lemma2i] {
            let m = p.matrix(&tol).unwrap();
            assert!(is_chm(&m, &tol).is_chm);
            assert_eq!(schmidt_rank(&m, &tol).unwrap(), 3);
        }
        // unitary, but neither of these is a CHM
        for p in [Preset::Lemma2ii, Preset::Example1] {
            let m = p.matrix(&tol).unwrap();
            assert!(m.is_unitary(1e-12));
            assert!(!is_chm(&m, &tol).is_chm);
        }
    }
}
