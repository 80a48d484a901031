// Fox colorings and the determinant: a knot has nontrivial p-colorings
// exactly when p divides its determinant.

use mincol::coloring::{colorings, enumerate_colorings};
use mincol::linalg::{knot_determinant, ColoringMatrix};
use mincol::pdcode::bundled;

pub fn run_example() -> mincol::Result<()> {
    for name in ["3_1", "4_1", "5_2", "6_1"] {
        let d = bundled(name)?;
        let det = knot_determinant(&ColoringMatrix::from_diagram(&d))?;
        let colorable: Vec<u64> = [3, 5, 7, 11]
            .into_iter()
            .filter(|&p| colorings(&d, p).map(|c| c.kernel_dim() > 1).unwrap_or(false))
            .collect();
        println!("{name}: determinant {det}, nontrivially colorable mod {colorable:?}");
    }
    let trefoil = bundled("3_1")?;
    let all = enumerate_colorings(&trefoil, 3)?;
    println!("3_1 mod 3 has {} colorings:", all.len());
    for c in &all {
        println!("  {:?}", c.values);
    }
    assert_eq!(all.len(), 9);
    Ok(())
}

#[allow(dead_code)]
fn main() -> mincol::Result<()> {
    run_example()
}
