//! Grid check that the one-zero closed forms never reach the forbidden pairs.

use chm_mub::mub::appendix_c_scan;

fn main() -> chm_mub::Result<()> {
    let r = appendix_c_scan(200)?;
    println!("min distance to (-1, 1): {:.5}", r.min_to_minus_one_one());
    println!("min distance to (0, 0):  {:.5}", r.min_to_origin());
    println!("no solutions: {}", r.no_solutions());
    Ok(())
}
