// Parse a PD code and print what the library derives from it.

use mincol::pdcode::parse_pd;

const FIGURE_EIGHT: &str = "\
name 4_1
# counterclockwise from the incoming under-edge
X 4 2 5 1
X 8 6 1 5
X 6 3 7 4
X 2 7 3 8
";

pub fn run_example() -> mincol::Result<()> {
    let d = parse_pd(FIGURE_EIGHT)?;
    println!(
        "{}: {} crossings, {} edges, {} arcs, {} faces",
        d.name().unwrap_or("?"),
        d.crossing_count(),
        d.edge_count(),
        d.arc_count(),
        d.region_count()
    );
    println!("writhe {}", d.writhe());
    for (i, f) in d.faces().iter().enumerate() {
        let edges: Vec<usize> = f.boundary.iter().map(|&(e, _)| e + 1).collect();
        println!("face {i}: edges {edges:?}");
    }
    assert_eq!(d.region_count(), d.crossing_count() + 2);
    assert_eq!(d.writhe(), 0);
    print!("{}", d.to_pd_text());
    Ok(())
}

#[allow(dead_code)]
fn main() -> mincol::Result<()> {
    run_example()
}
