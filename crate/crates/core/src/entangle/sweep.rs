use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_4, FRAC_PI_6, PI};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use super::{build_uab, ep_lower_bound, ControlledUnitary, ProductInput};
use crate::chm::Angles;
use crate::error::{Error, Result};
use crate::numerics::{Tolerances, C64};

/// Left end of the sweep interval; the right end is 0.
pub const X_MIN: f64 = -FRAC_PI_6;

const X_SLACK: f64 = 1e-12;

/// How `alpha_3` follows `alpha_1 = alpha_2 = pi/3 + x`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Alpha3Mode {
    /// solve `cos^2 a1 + cos^2 a2 + cos^2 a3 = 3/2` (zero at `x = 0`)
    #[default]
    Chm,
    /// keep `alpha_3 = 0`
    Pinned,
}

impl FromStr for Alpha3Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "chm" => Ok(Alpha3Mode::Chm),
            "pinned" => Ok(Alpha3Mode::Pinned),
            other => Err(Error::Invalid(format!("unknown alpha3 mode {other:?}"))),
        }
    }
}

impl fmt::Display for Alpha3Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Alpha3Mode::Chm => "chm",
            Alpha3Mode::Pinned => "pinned",
        })
    }
}

/// One curve of the `U_AB(x)` family.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    /// ascending, inside `[-pi/6, 0]`
    pub x_grid: Vec<f64>,
    pub beta1: f64,
    pub beta3: f64,
    pub gamma1: f64,
    pub d: [f64; 3],
    /// `(c1, c2, c3)` of the input `|delta⟩`
    pub c: (f64, f64, C64),
    pub alpha3_mode: Alpha3Mode,
}

impl SweepSpec {
    /// `gamma1 = 0`, `c = (1/sqrt 2, 0, 1/sqrt 2)`, `alpha_3` from the CHM constraint.
    pub fn new(x_grid: Vec<f64>, beta1: f64, beta3: f64, d: [f64; 3]) -> Self {
        let s = 0.5f64.sqrt();
        SweepSpec {
            x_grid,
            beta1,
            beta3,
            gamma1: 0.0,
            d,
            c: (s, 0.0, C64::new(s, 0.0)),
            alpha3_mode: Alpha3Mode::Chm,
        }
    }

    pub fn validate(&self) -> Result<()> {
        for &x in &self.x_grid {
            check_x(x)?;
        }
        if self.x_grid.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::Invalid("x grid must be ascending".into()));
        }
        self.input().map(|_| ())
    }

    pub fn input(&self) -> Result<ProductInput> {
        ProductInput::new(self.c.0, self.c.1, self.c.2, self.d)
    }
}

fn check_x(x: f64) -> Result<()> {
    if (X_MIN - X_SLACK..=X_SLACK).contains(&x) {
        Ok(())
    } else {
        Err(Error::OutOfRange {
            name: "x",
            value: x,
            range: "[-pi/6, 0]",
        })
    }
}

/// `points` uniformly spaced values from `-pi/6` to `0`, both included.
/// A single point sits at `x = 0`.
pub fn x_grid(points: usize) -> Vec<f64> {
    match points {
        0 => Vec::new(),
        1 => vec![0.0],
        n => (0..n)
            .map(|i| X_MIN - X_MIN * i as f64 / (n - 1) as f64)
            .collect(),
    }
}

/// Angles of `U_AB(x)`: `alpha_1 = alpha_2 = pi/3 + x`,
/// `beta = (b1, b1 - t, b3)`, `gamma = (g1, g1 + t, b1 + g1 - b3 - pi)` with
/// `t = arccos(-1/3)`, phases reduced mod `2 pi`.
pub fn uab_family_angles(x: f64, spec: &SweepSpec) -> Result<Angles> {
    check_x(x)?;
    let a = FRAC_PI_3 + x;
    let a3 = match spec.alpha3_mode {
        Alpha3Mode::Chm => (1.5 - 2.0 * a.cos().powi(2)).max(0.0).sqrt().acos(),
        Alpha3Mode::Pinned => 0.0,
    };
    let t = (-1.0f64 / 3.0).acos();
    let (b1, b3, g1) = (spec.beta1, spec.beta3, spec.gamma1);
    Ok(Angles::new(
        [a, a, a3],
        [b1, b1 - t, b3],
        [g1, g1 + t, b1 + g1 - b3 - PI],
    )
    .wrapped())
}

pub fn uab_family_x(x: f64, spec: &SweepSpec) -> Result<ControlledUnitary> {
    Ok(build_uab(&uab_family_angles(x, spec)?))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepRow {
    pub x: f64,
    pub value_ebits: f64,
}

/// Entropy of `rho_Aa` along the grid, in grid order.
pub fn sweep(spec: &SweepSpec, tol: &Tolerances) -> Result<Vec<SweepRow>> {
    spec.validate()?;
    let inp = spec.input()?;
    spec.x_grid
        .par_iter()
        .map(|&x| {
            let u = uab_family_x(x, spec)?;
            Ok(SweepRow {
                x,
                value_ebits: ep_lower_bound(&u, &inp, tol)?,
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepCurve {
    pub label: String,
    pub spec: SweepSpec,
}

/// The curve sets selected by `--figure 3|4|5` on a `points`-point grid.
///
/// * 3: `beta1 = pi`, uniform `d`, seven values of `beta3`
/// * 4: `beta3 = 0`, uniform `d`, four values of `beta1`
/// * 5: `beta1 = beta3 = 0`, seven weight triples `d`
pub fn figure_curves(figure: u8, points: usize, mode: Alpha3Mode) -> Result<Vec<SweepCurve>> {
    let grid = x_grid(points);
    let uniform = ProductInput::uniform_d();
    let curve = |label: String, b1: f64, b3: f64, d: [f64; 3]| {
        let mut spec = SweepSpec::new(grid.clone(), b1, b3, d);
        spec.alpha3_mode = mode;
        SweepCurve { label, spec }
    };
    let curves = match figure {
        3 => [
            ("0", 0.0),
            ("pi/6", FRAC_PI_6),
            ("pi/4", FRAC_PI_4),
            ("pi/3", FRAC_PI_3),
            ("pi/2", FRAC_PI_2),
            ("pi", PI),
            ("3pi/2", 3.0 * FRAC_PI_2),
        ]
        .into_iter()
        .map(|(l, b3)| curve(format!("beta3={l}"), PI, b3, uniform))
        .collect(),
        4 => [
            ("0", 0.0),
            ("pi/6", FRAC_PI_6),
            ("pi/4", FRAC_PI_4),
            ("pi/2", FRAC_PI_2),
        ]
        .into_iter()
        .map(|(l, b1)| curve(format!("beta1={l}"), b1, 0.0, uniform))
        .collect(),
        5 => {
            let r = f64::sqrt;
            [
                ("1/sqrt3 1/sqrt3 1/sqrt3", uniform),
                ("1/2 1/2 sqrt2/2", [0.5, 0.5, r(2.0) / 2.0]),
                (
                    "1/sqrt5 1/sqrt5 sqrt3/sqrt5",
                    [1.0 / r(5.0), 1.0 / r(5.0), r(3.0 / 5.0)],
                ),
                (
                    "1/sqrt6 1/sqrt6 2/sqrt6",
                    [1.0 / r(6.0), 1.0 / r(6.0), 2.0 / r(6.0)],
                ),
                (
                    "1/sqrt3 1/sqrt6 1/sqrt2",
                    [1.0 / r(3.0), 1.0 / r(6.0), 1.0 / r(2.0)],
                ),
                (
                    "1/sqrt7 sqrt2/sqrt7 2/sqrt7",
                    [1.0 / r(7.0), r(2.0 / 7.0), 2.0 / r(7.0)],
                ),
                (
                    "1/(2sqrt2) 1/2 sqrt5/(2sqrt2)",
                    [1.0 / (2.0 * r(2.0)), 0.5, r(5.0) / (2.0 * r(2.0))],
                ),
            ]
            .into_iter()
            .map(|(l, d)| curve(format!("d=({l})"), 0.0, 0.0, d))
            .collect()
        }
        other => {
            return Err(Error::Invalid(format!(
                "figure must be 3, 4 or 5, got {other}"
            )))
        }
    };
    Ok(curves)
}
