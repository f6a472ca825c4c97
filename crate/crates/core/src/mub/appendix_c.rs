use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

use serde::Serialize;

use crate::error::{Error, Result};

/// Distance kept from the open-interval endpoints, where `cos 2a` vanishes.
pub const GRID_MARGIN: f64 = 1e-3;

/// Closed form for `cos theta_1` of the one-zero case.
pub fn cos_theta1(a1: f64, a2: f64) -> f64 {
    let (c1, c2) = ((2.0 * a1).cos(), (2.0 * a2).cos());
    let num =
        -(c1 - c2).powi(2) + 6.0 * c1 * c1 * a2.cos().powi(2) + 6.0 * a1.cos().powi(2) * c2 * c2;
    num / (12.0 * a1.cos() * c1 * a2.cos() * c2)
}

/// Closed form for `cos^2 theta_2` of the one-zero case.
pub fn cos2_theta2(a1: f64, a2: f64) -> f64 {
    let (c1, c2) = ((2.0 * a1).cos(), (2.0 * a2).cos());
    let sec2_a2 = a2.cos().powi(-2);
    let sec_2a2 = c2.recip();
    let num = (c1 - 2.0).powi(2) * sec2_a2 + 8.0 * c1 * sec_2a2 * (4.0 + c1 * (2.0 + sec_2a2));
    num / (24.0 * (1.0 + 3.0 * c1 + 3.0 * c2))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RegionMinimum {
    pub distance: f64,
    pub alpha1: f64,
    pub alpha2: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AppendixCReport {
    pub grid_n: usize,
    /// `min |(cos t1, cos^2 t2) - (-1, 1)|`, first over `(0, pi/4) x (pi/4, pi/2)`,
    /// then over the mirrored region.
    pub to_minus_one_one: [RegionMinimum; 2],
    /// `min |(cos t1, cos^2 t2) - (0, 0)|`, same two regions.
    pub to_origin: [RegionMinimum; 2],
    /// Grid points where either closed form is not finite.
    pub non_finite: usize,
}

impl AppendixCReport {
    pub fn min_to_minus_one_one(&self) -> f64 {
        self.to_minus_one_one[0]
            .distance
            .min(self.to_minus_one_one[1].distance)
    }

    pub fn min_to_origin(&self) -> f64 {
        self.to_origin[0].distance.min(self.to_origin[1].distance)
    }

    /// Both forbidden solution pairs stay strictly away from the grid values.
    pub fn no_solutions(&self) -> bool {
        self.non_finite == 0 && self.min_to_minus_one_one() > 0.0 && self.min_to_origin() > 0.0
    }
}

fn axis(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let (lo, hi) = (lo + GRID_MARGIN, hi - GRID_MARGIN);
    (0..n)
        .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
        .collect()
}

/// Evaluate both closed forms on a uniform `grid_n x grid_n` grid over
/// `(0, pi/4) x (pi/4, pi/2)` and its mirror image, each interval shrunk by
/// [`GRID_MARGIN`].
pub fn appendix_c_scan(grid_n: usize) -> Result<AppendixCReport> {
    if grid_n < 10 {
        return Err(Error::Invalid(format!(
            "grid_n must be at least 10, got {grid_n}"
        )));
    }
    let low = axis(0.0, FRAC_PI_4, grid_n);
    let high = axis(FRAC_PI_4, FRAC_PI_2, grid_n);
    let none = RegionMinimum {
        distance: f64::INFINITY,
        alpha1: f64::NAN,
        alpha2: f64::NAN,
    };
    let mut to_m = [none; 2];
    let mut to_o = [none; 2];
    let mut non_finite = 0;
    for (region, (xs, ys)) in [(&low, &high), (&high, &low)].into_iter().enumerate() {
        for &a1 in xs {
            for &a2 in ys {
                let (s, t) = (cos_theta1(a1, a2), cos2_theta2(a1, a2));
                if !(s.is_finite() && t.is_finite()) {
                    non_finite += 1;
                    continue;
                }
                let dm = (s + 1.0).hypot(t - 1.0);
                let d0 = s.hypot(t);
                if dm < to_m[region].distance {
                    to_m[region] = RegionMinimum {
                        distance: dm,
                        alpha1: a1,
                        alpha2: a2,
                    };
                }
                if d0 < to_o[region].distance {
                    to_o[region] = RegionMinimum {
                        distance: d0,
                        alpha1: a1,
                        alpha2: a2,
                    };
                }
            }
        }
    }
    Ok(AppendixCReport {
        grid_n,
        to_minus_one_one: to_m,
        to_origin: to_o,
        non_finite,
    })
}
