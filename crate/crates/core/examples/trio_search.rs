//! Short multistart search for a MUB trio containing a rank-three CHM.

use chm_mub::chm::{build_eq5, Eq5Params};
use chm_mub::mub::{trio_extension_search, TrioSearchConfig};
use chm_mub::Tolerances;

fn main() -> chm_mub::Result<()> {
    let m = build_eq5(&Eq5Params::ones());
    let cfg = TrioSearchConfig {
        restarts: 4,
        max_iters: 4000,
        seed: 42,
    };
    let r = trio_extension_search(&m, &cfg, &Tolerances::default())?;
    println!(
        "best penalty {:.6} from restart {} after {} iterations",
        r.best_penalty, r.best_restart, r.iterations
    );
    Ok(())
}
