// Per-diagram palette minima and the normal form of a 4-color palette.

use mincol::coloring::affine;
use mincol::mincolor::{diagram_min_colors, normalize_four_palette};
use mincol::pdcode::{bundled, torus2};

pub fn run_example() -> mincol::Result<()> {
    for (name, d, p) in [
        ("torus2_5", torus2(5)?, 5),
        ("5_2", bundled("5_2")?, 7),
        ("3_1", bundled("3_1")?, 3),
        ("3_1", bundled("3_1")?, 5),
    ] {
        match diagram_min_colors(&d, p)? {
            Some(m) => println!("{name} mod {p}: {} colors, e.g. {:?}", m.palette_size, m.witness.values),
            None => println!("{name} mod {p}: only trivial colorings"),
        }
    }

    // A 4-color diagram from the palette search, scrambled by an affine map
    // and then put back into normal form.
    let text = include_str!("../data/witnesses/5_2_p7_four.json");
    let bundle = mincol::mincolor::WitnessBundle::from_json(text)?;
    let end = mincol::pdcode::parse_json(&serde_json::to_string(&bundle.end)?)?;
    let c = mincol::coloring::ArcColoring::new(&end, 7, bundle.coloring)?;
    let scrambled = affine(&c, 3, 5)?;
    let (n, tag) = normalize_four_palette(&end, &scrambled)?;
    println!("{:?} -> {:?} ({tag:?})", scrambled.palette().0, n.palette().0);
    Ok(())
}

#[allow(dead_code)]
fn main() -> mincol::Result<()> {
    run_example()
}
