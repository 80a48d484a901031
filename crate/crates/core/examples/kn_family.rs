// Connected sums of copies of 5_2 joined along equally colored edges.

use mincol::cocycle::invariant;
use mincol::families::{build_kn_colored, contribution_scaling_check};
use mincol::linalg::{knot_determinant, ColoringMatrix};

pub fn run_example() -> mincol::Result<()> {
    for n in 1..=3 {
        let (d, c) = build_kn_colored(n)?;
        let det = knot_determinant(&ColoringMatrix::from_diagram(&d))?;
        let zeros = invariant(&d, 7)?.zeros();
        println!(
            "K{n}: {} crossings, determinant {det}, zeros {zeros}, palette {:?}",
            d.crossing_count(),
            c.palette().0
        );
    }
    for n in [1, 2, 3, 7] {
        let s = contribution_scaling_check(n)?;
        let mut v: Vec<u64> = s.rows.iter().map(|r| r.induced[0]).collect();
        v.sort_unstable();
        v.dedup();
        println!(
            "n = {n}: induced contributions {v:?}, scaling holds {}",
            s.scaling_holds
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> mincol::Result<()> {
    run_example()
}
