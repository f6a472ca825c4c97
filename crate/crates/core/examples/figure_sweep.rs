//! Write the beta1 sweep as CSV to stdout.

use chm_mub::entangle::{figure_curves, sweep, Alpha3Mode};
use chm_mub::Tolerances;

fn main() -> chm_mub::Result<()> {
    let tol = Tolerances::default();
    let mut rows = Vec::new();
    for c in figure_curves(4, 13, Alpha3Mode::Chm)? {
        rows.push((c.label, sweep(&c.spec, &tol)?));
    }
    chm_mub::io::write_sweep_csv(std::io::stdout().lock(), &rows)
}
