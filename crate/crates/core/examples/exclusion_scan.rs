//! List the submatrices that exclude a CHM from any MUB trio.

use std::collections::BTreeMap;

use chm_mub::chm::{build_eq5, Eq5Params};
use chm_mub::mub::{exclusion_scan_with, ScanMode};
use chm_mub::Tolerances;

fn main() {
    let tol = Tolerances::default();
    let m = build_eq5(&Eq5Params::ones());
    for mode in [ScanMode::Strict, ScanMode::GlobalPhase, ScanMode::Dephased] {
        let mut counts = BTreeMap::new();
        for f in exclusion_scan_with(&m, &tol, mode) {
            *counts.entry(format!("{:?}", f.kind)).or_insert(0) += 1;
        }
        println!("{mode:?}: {counts:?}");
    }
}
