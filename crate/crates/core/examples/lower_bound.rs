// The zero-count lower bound: if Φ_p⁰ = p² for some prime p > 7, every
// diagram needs at least 5 colors for every prime q > 7.

use mincol::mincolor::theorem_lower_bound;
use mincol::pdcode::{bundled, torus2};

pub fn run_example() -> mincol::Result<()> {
    for name in ["3_1", "4_1", "5_2", "6_1", "7_1"] {
        let r = theorem_lower_bound(&bundled(name)?, 11, false)?;
        println!("{name}: zeros {} (floor {}), bound {:?}", r.phi0, r.floor, r.bound);
    }
    let hopf_ish = torus2(4)?;
    let r = theorem_lower_bound(&hopf_ish, 11, false)?;
    println!(
        "torus2_4 without assertion: {:?}, linking {:?}",
        r.bound, r.linking_numbers
    );
    let r = theorem_lower_bound(&hopf_ish, 11, true)?;
    println!("torus2_4 asserted non-split: {:?}", r.bound);
    Ok(())
}

#[allow(dead_code)]
fn main() -> mincol::Result<()> {
    run_example()
}
