use std::collections::HashMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coloring::{colorings, ArcColoring};
use crate::error::{Error, Result};
use crate::linalg::check_odd_prime;
use crate::pdcode::{move_sites, CanonicalKey, Diagram, MoveKind, MoveSpec, MoveStep, MoveTrace};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchOptions {
    /// Maximum number of moves.
    pub depth: usize,
    /// Diagrams with more crossings are not explored.
    pub max_crossings: usize,
    /// Workers for the first level of the search.
    pub threads: usize,
}

impl SearchOptions {
    pub fn new(depth: usize, max_crossings: usize) -> Self {
        SearchOptions {
            depth,
            max_crossings,
            threads: 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub p: u64,
    pub start: Diagram,
    pub trace: MoveTrace,
    pub end: Diagram,
    pub coloring: ArcColoring,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOutcome {
    pub witness: Option<Witness>,
    /// Diagrams expanded over all iterations.
    pub nodes: u64,
}

/// The first nontrivial coloring of `d` with exactly `target` colors.
fn coloring_with_palette(d: &Diagram, p: u64, target: usize) -> Option<ArcColoring> {
    let all = colorings(d, p).ok()?;
    if all.kernel_dim() < 2 {
        return None;
    }
    if all.kernel_dim() == 2 {
        // Nontrivial colorings are affine images of one another.
        let v = all.basis().iter().find(|b| b.windows(2).any(|w| w[0] != w[1]))?;
        let mut set = v.clone();
        set.sort_unstable();
        set.dedup();
        if set.len() != target {
            return None;
        }
    }
    all.into_iter().find(|c| !c.is_trivial() && c.palette().len() == target)
}

fn rank(kind: MoveKind) -> u8 {
    match kind {
        MoveKind::R3 => 0,
        MoveKind::R2Remove => 1,
        MoveKind::R1Remove => 2,
        MoveKind::R2Add => 3,
        MoveKind::R1Add => 4,
    }
}

fn children(d: &Diagram, max_crossings: usize) -> Vec<(MoveSpec, Diagram, MoveStep, CanonicalKey)> {
    let mut moves = move_sites(d);
    moves.sort_by_key(|m| rank(m.kind()));
    let n = d.crossing_count();
    moves
        .into_iter()
        .filter(|m| match m.kind() {
            MoveKind::R2Add => n + 2 <= max_crossings,
            MoveKind::R1Add => n < max_crossings,
            _ => true,
        })
        .filter_map(|m| {
            let (child, step) = d.apply_move(&m).ok()?;
            let key = child.canonical_key();
            Some((m, child, step, key))
        })
        .collect()
}

struct Dfs {
    p: u64,
    target: usize,
    max_crossings: usize,
    memo: HashMap<CanonicalKey, usize>,
    nodes: u64,
}

impl Dfs {
    fn run(&mut self, d: &Diagram, remaining: usize, path: &mut Vec<MoveStep>) -> Option<(Diagram, ArcColoring)> {
        self.nodes += 1;
        if let Some(c) = coloring_with_palette(d, self.p, self.target) {
            return Some((d.clone(), c));
        }
        if remaining == 0 {
            return None;
        }
        for (_, child, step, key) in children(d, self.max_crossings) {
            if self.memo.get(&key).is_some_and(|&r| r >= remaining - 1) {
                continue;
            }
            self.memo.insert(key, remaining - 1);
            path.push(step);
            if let Some(found) = self.run(&child, remaining - 1, path) {
                return Some(found);
            }
            path.pop();
        }
        None
    }
}

/// Iterative deepening over Reidemeister moves from `d` for a diagram with
/// a nontrivial `p`-coloring of exactly `target` colors.
pub fn palette_reduction_search(d: &Diagram, p: u64, target: usize, opts: SearchOptions) -> Result<SearchOutcome> {
    check_odd_prime(p)?;
    if opts.threads == 0 {
        return Err(Error::Io("thread count must be positive".into()));
    }
    let mut nodes = 0;
    let wrap = |trace: Vec<MoveStep>, end: Diagram, coloring: ArcColoring| Witness {
        p,
        start: d.clone(),
        trace: MoveTrace { steps: trace },
        end,
        coloring,
    };
    for limit in 0..=opts.depth {
        let root_key = d.canonical_key();
        if limit == 0 || opts.threads == 1 {
            let mut dfs = Dfs {
                p,
                target,
                max_crossings: opts.max_crossings,
                memo: HashMap::from([(root_key, limit)]),
                nodes: 0,
            };
            let mut path = Vec::new();
            let found = dfs.run(d, limit, &mut path);
            nodes += dfs.nodes;
            if let Some((end, c)) = found {
                return Ok(SearchOutcome {
                    witness: Some(wrap(path, end, c)),
                    nodes,
                });
            }
            continue;
        }
        // One independent search per first move; memo pruning only skips
        // failed states, so the first success in move order matches the
        // sequential search.
        if coloring_with_palette(d, p, target).is_some() {
            unreachable!("found at depth 0");
        }
        let kids = children(d, opts.max_crossings);
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(opts.threads)
            .build()
            .map_err(|e| Error::Io(e.to_string()))?;
        let results: Vec<(u64, Option<(Vec<MoveStep>, Diagram, ArcColoring)>)> = pool.install(|| {
            kids.par_iter()
                .map(|(_, child, step, key)| {
                    let mut dfs = Dfs {
                        p,
                        target,
                        max_crossings: opts.max_crossings,
                        memo: HashMap::from([(d.canonical_key(), limit), (key.clone(), limit - 1)]),
                        nodes: 0,
                    };
                    let mut path = vec![step.clone()];
                    let found = dfs.run(child, limit - 1, &mut path);
                    (dfs.nodes, found.map(|(e, c)| (path, e, c)))
                })
                .collect()
        });
        nodes += 1;
        let mut winner = None;
        for (n, r) in results {
            nodes += n;
            if winner.is_none() {
                winner = r;
            }
        }
        if let Some((path, end, c)) = winner {
            return Ok(SearchOutcome {
                witness: Some(wrap(path, end, c)),
                nodes,
            });
        }
    }
    Ok(SearchOutcome { witness: None, nodes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pdcode::bundled;

    #[test]
    fn depth_zero_trefoil() {
        let d = bundled("3_1").unwrap();
        let out = palette_reduction_search(&d, 3, 3, SearchOptions::new(0, 3)).unwrap();
        let w = out.witness.unwrap();
        assert!(w.trace.is_empty());
        assert_eq!(w.end, d);
        assert_eq!(w.coloring.palette().len(), 3);
    }

    #[test]
    fn exhaustion_returns_none() {
        let d = bundled("3_1").unwrap();
        let out = palette_reduction_search(&d, 5, 3, SearchOptions::new(1, 5)).unwrap();
        assert!(out.witness.is_none());
        assert!(out.nodes > 1);
    }
}
