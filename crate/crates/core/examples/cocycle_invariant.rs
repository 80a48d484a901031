// The cocycle multiset of 5_2 at p = 7 and the contribution of each
// nontrivial coloring.

use mincol::cocycle::{contribution_profile, invariant, PhiTable};
use mincol::coloring::colorings;
use mincol::pdcode::bundled;

pub fn run_example() -> mincol::Result<()> {
    let d = bundled("5_2")?;
    let m = invariant(&d, 7)?;
    println!("total {}, histogram {:?}", m.total, m.histogram);
    assert_eq!((m.total, m.zeros()), (343, 49));

    let phi = PhiTable::new(7)?;
    for c in colorings(&d, 7)?.filter(|c| !c.is_trivial()).take(6) {
        let prof = contribution_profile(&d, &c, &phi);
        println!("coloring {:?}: contribution per base color {:?}", c.values, prof);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> mincol::Result<()> {
    run_example()
}
