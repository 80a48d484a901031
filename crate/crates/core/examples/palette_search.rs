// Search Reidemeister moves from the standard diagram of T(2,5) for a
// diagram colored mod 5 with only 4 colors, then check the certificate.

use mincol::mincolor::{palette_reduction_search, verify_witness, SearchOptions, WitnessBundle};
use mincol::pdcode::torus2;

pub fn run_example() -> mincol::Result<()> {
    let d = torus2(5)?;
    let out = palette_reduction_search(&d, 5, 4, SearchOptions::new(3, 9))?;
    println!("expanded {} diagrams", out.nodes);
    let w = out.witness.expect("found within three moves");
    for s in &w.trace.steps {
        println!("  {:?}", s.spec);
    }
    print!("{}", w.end.to_pd_text());
    println!("coloring {:?}, palette {:?}", w.coloring.values, w.coloring.palette().0);
    let report = verify_witness(&w.start, &w.trace, &w.end, &w.coloring);
    assert!(report.ok);
    let bundle = WitnessBundle::from_witness(&w);
    assert_eq!(bundle, WitnessBundle::from_json(&bundle.to_json())?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> mincol::Result<()> {
    run_example()
}
