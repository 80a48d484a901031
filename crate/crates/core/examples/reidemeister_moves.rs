// Apply Reidemeister moves and watch the invariant stay put.

use mincol::cocycle::invariant;
use mincol::pdcode::{braid_closure, bundled, legal_moves, BraidLetter, MoveKind, MoveTrace};

pub fn run_example() -> mincol::Result<()> {
    let d = bundled("3_1")?;
    let before = invariant(&d, 3)?;
    let mut cur = d.clone();
    let mut trace = MoveTrace::default();
    for kind in [MoveKind::R1Add, MoveKind::R2Add, MoveKind::R3] {
        let Some(m) = legal_moves(&cur).into_iter().find(|m| m.kind() == kind) else {
            println!("no {kind} site");
            continue;
        };
        let (next, step) = cur.apply_move(&m)?;
        println!(
            "{kind}: {} -> {} crossings",
            cur.crossing_count(),
            next.crossing_count()
        );
        trace.steps.push(step);
        cur = next;
    }
    assert_eq!(invariant(&cur, 3)?, before);
    assert_eq!(trace.replay(&d)?, cur);
    println!("invariant unchanged: {:?}", before.histogram);

    // The braid relation is a third move.
    let (a, b) = (BraidLetter::pos(1), BraidLetter::pos(2));
    let left = braid_closure(3, &[a, b, a])?;
    let right = braid_closure(3, &[b, a, b])?;
    let r3 = legal_moves(&left)
        .into_iter()
        .find(|m| m.kind() == MoveKind::R3)
        .expect("triangle");
    let (moved, _) = left.apply_move(&r3)?;
    println!(
        "s1 s2 s1 -> s2 s1 s2: {}",
        moved.canonical_key() == right.canonical_key()
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> mincol::Result<()> {
    run_example()
}
