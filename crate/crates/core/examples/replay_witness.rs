// Replay a stored 4-color certificate for 5_2 mod 7 and show that a
// tampered copy is rejected.

use mincol::mincolor::{verify_bundle, WitnessBundle};

pub fn run_example() -> mincol::Result<()> {
    let text = include_str!("../data/witnesses/5_2_p7_four.json");
    let b = WitnessBundle::from_json(text)?;
    let r = verify_bundle(&b);
    println!("{}", serde_json::to_string(&r)?);
    assert!(r.ok);

    let mut bad = b.clone();
    bad.coloring[0] = (bad.coloring[0] + 1) % b.p;
    println!("{}", serde_json::to_string(&verify_bundle(&bad))?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> mincol::Result<()> {
    run_example()
}
