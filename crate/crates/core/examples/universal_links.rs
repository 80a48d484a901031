// Braid closures colored by {0,1,2,3} for every prime at once, and the
// cancellation that makes their contributions vanish.

use mincol::cocycle::{contribution_profile, PhiTable};
use mincol::coloring::shadow_extend;
use mincol::families::search_universal_four_color;
use mincol::mincolor::smooth_constant_crossings;

pub fn run_example() -> mincol::Result<()> {
    let s = search_universal_four_color(10)?;
    println!("{} words, {} candidates", s.words_tried, s.candidates.len());
    let phi = PhiTable::new(11)?;
    for c in &s.candidates {
        let prof = contribution_profile(&c.diagram, &c.coloring, &phi);
        let sh = shadow_extend(&c.diagram, &c.coloring, 0, 0)?;
        let (_, _, r) = smooth_constant_crossings(&c.diagram, &sh)?;
        println!(
            "{}: {} components, linking {:?}, colors {:?}, contributions {:?}, {} pairs cancel",
            c.word_text(),
            c.diagram.components().len(),
            c.linking_numbers,
            c.coloring.values,
            prof,
            r.pairs
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> mincol::Result<()> {
    run_example()
}
