use serde::{Deserialize, Serialize};

use super::{case_one_pattern_holds, crossing_colors};
use crate::cocycle::{contribution, LocalChoice, PhiTable};
use crate::coloring::{ArcColoring, ShadowColoring};
use crate::error::{Error, Result};
use crate::pdcode::{Dart, Diagram};

/// The diagram left after smoothing every constant crossing. It may be
/// split, so it is kept as crossings of the original diagram joined by
/// chains of original edges.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SmoothedDiagram {
    /// Surviving crossings, as indices into the original diagram.
    pub crossings: Vec<usize>,
    /// Each edge as its chain of original edges, from a surviving crossing
    /// to a surviving crossing.
    pub edges: Vec<Vec<usize>>,
    /// Closed curves through no surviving crossing.
    pub free_loops: usize,
    /// Color of each edge, inherited from the original arcs.
    pub edge_colors: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SmoothingReport {
    pub p: u64,
    pub smoothed: usize,
    pub remaining: usize,
    pub weight_before: u64,
    pub weight_after: u64,
    /// Crossings joined by an edge colored 0 or 3.
    pub pairs: usize,
    /// Pairs whose two weights, read from the shared face and under-arc,
    /// do not cancel.
    pub pair_failures: usize,
    /// Faces of the smoothed diagram whose inherited region colors differ.
    pub face_conflicts: usize,
    /// Surviving crossings not covered by exactly one pair.
    pub unpaired: usize,
}

impl SmoothingReport {
    pub fn weights_equal(&self) -> bool {
        self.weight_before == self.weight_after
    }

    pub fn cancellation_holds(&self) -> bool {
        self.pair_failures == 0 && self.face_conflicts == 0 && self.unpaired == 0
    }
}

/// Smoothing that respects orientation: incoming slots join the outgoing
/// slot of the other strand.
fn smoothing_partner(d: &Diagram, c: usize, slot: usize) -> usize {
    let pairs = if d.crossing(c).over_forward {
        [3, 2, 1, 0]
    } else {
        [1, 0, 3, 2]
    };
    pairs[slot]
}

/// Smooths every crossing whose three colors agree and checks that the
/// total weight is unchanged and cancels in pairs along arcs colored 0 or 3.
pub fn smooth_constant_crossings(
    d: &Diagram,
    s: &ShadowColoring,
) -> Result<(SmoothedDiagram, ArcColoring, SmoothingReport)> {
    let c = &s.base;
    if !case_one_pattern_holds(d, c) {
        return Err(Error::NotCaseOne);
    }
    let p = c.p;
    let phi = PhiTable::new(p)?;
    let n = d.crossing_count();
    let constant: Vec<bool> = (0..n)
        .map(|x| {
            let (z, a, b) = crossing_colors(d, c, x);
            z == a && a == b
        })
        .collect();
    let kept: Vec<usize> = (0..n).filter(|&x| !constant[x]).collect();
    let mut kept_index = vec![usize::MAX; n];
    for (i, &x) in kept.iter().enumerate() {
        kept_index[x] = i;
    }

    // Chains of original edges between surviving crossings.
    let m = d.edge_count();
    let mut used = vec![false; m];
    let mut edges: Vec<Vec<usize>> = Vec::new();
    let mut edge_colors = Vec::new();
    let mut edge_of_dart: Vec<[usize; 4]> = vec![[usize::MAX; 4]; n];
    let mut ends: Vec<(Dart, Dart)> = Vec::new();
    let mut conflicts = 0;
    let follow = |e: usize| -> Dart { d.head(e).expect("edge has a head") };
    let walk = |start: usize, used: &mut Vec<bool>| -> (Vec<usize>, Dart) {
        let mut chain = Vec::new();
        let mut e = start;
        loop {
            used[e] = true;
            chain.push(e);
            let h = follow(e);
            if !constant[h.crossing] {
                return (chain, h);
            }
            let out = smoothing_partner(d, h.crossing, h.slot);
            e = d.crossing(h.crossing).slots[out];
        }
    };
    if n > 0 {
        for &x in &kept {
            for slot in 0..4 {
                let tail = Dart { crossing: x, slot };
                let e = d.crossing(x).slots[slot];
                if d.tail(e) != Some(tail) {
                    continue;
                }
                let (chain, head) = walk(e, &mut used);
                let colors: Vec<u64> = chain.iter().map(|&e| c.values[d.arc_of(e)]).collect();
                if colors.iter().any(|&v| v != colors[0]) {
                    conflicts += 1;
                }
                let id = edges.len();
                edge_of_dart[x][slot] = id;
                edge_of_dart[head.crossing][head.slot] = id;
                ends.push((tail, head));
                edge_colors.push(colors[0]);
                edges.push(chain);
            }
        }
    }
    let mut free_loops = 0;
    for e in 0..m {
        if !used[e] && n > 0 {
            let mut f = e;
            loop {
                used[f] = true;
                let h = follow(f);
                f = d.crossing(h.crossing).slots[smoothing_partner(d, h.crossing, h.slot)];
                if f == e {
                    break;
                }
            }
            free_loops += 1;
        }
    }

    // Faces of the smoothed diagram, traced over surviving darts. Each
    // dart carries the color of its sector in the original diagram.
    let mut face_of = vec![[usize::MAX; 4]; kept.len()];
    let mut faces = 0;
    for (i, &x) in kept.iter().enumerate() {
        for slot in 0..4 {
            if face_of[i][slot] != usize::MAX {
                continue;
            }
            let color = s.regions[d.sector_region(x, slot)];
            let mut cur = Dart { crossing: x, slot };
            loop {
                let ci = kept_index[cur.crossing];
                face_of[ci][cur.slot] = faces;
                if s.regions[d.sector_region(cur.crossing, cur.slot)] != color {
                    conflicts += 1;
                }
                let id = edge_of_dart[cur.crossing][cur.slot];
                let (t, h) = ends[id];
                let o = if t == cur { h } else { t };
                cur = Dart {
                    crossing: o.crossing,
                    slot: (o.slot + 3) % 4,
                };
                if cur == (Dart { crossing: x, slot }) {
                    break;
                }
            }
            faces += 1;
        }
    }

    // Pair cancellation along edges colored 0 or 3: the source region is
    // the face left of the edge and the source under-arc is the edge.
    let mut pairs = 0;
    let mut pair_failures = 0;
    let mut cover = vec![0usize; n];
    let local = |dart: Dart, sector: usize| -> u64 {
        let xv = s.regions[d.sector_region(dart.crossing, sector)];
        let ch = LocalChoice {
            sector,
            under_slot: dart.slot,
        };
        let (z, _, _) = crossing_colors(d, c, dart.crossing);
        let y = c.values[d.arc_of(d.crossing(dart.crossing).slots[dart.slot])];
        let w = phi.get(xv, y, z);
        if ch.sign() > 0 {
            w
        } else {
            (p - w) % p
        }
    };
    for (id, &(t, h)) in ends.iter().enumerate() {
        let col = edge_colors[id];
        if col != 0 && col != 3 {
            continue;
        }
        pairs += 1;
        cover[t.crossing] += 1;
        cover[h.crossing] += 1;
        if t.slot % 2 == 1 || h.slot % 2 == 1 {
            pair_failures += 1;
            continue;
        }
        // Left of the edge: sector `slot` at its tail, `slot - 1` at its head.
        let w1 = local(t, t.slot);
        let w2 = local(h, (h.slot + 3) % 4);
        if face_of[kept_index[t.crossing]][t.slot] != face_of[kept_index[h.crossing]][(h.slot + 3) % 4] {
            pair_failures += 1;
        }
        if (w1 + w2) % p != 0 {
            pair_failures += 1;
        }
    }
    let unpaired = kept.iter().filter(|&&x| cover[x] != 1).count();

    let weight_before = contribution(d, s, &phi);
    let weight_after = kept
        .iter()
        .map(|&x| {
            let w = phi.get(
                s.regions[d.sector_region(x, 0)],
                c.values[d.arc_of(d.crossing(x).slots[0])],
                crossing_colors(d, c, x).0,
            );
            w
        })
        .fold(0, |a, w| (a + w) % p);

    let smoothed = SmoothedDiagram {
        crossings: kept.clone(),
        edges,
        free_loops,
        edge_colors,
    };
    let report = SmoothingReport {
        p,
        smoothed: n - kept.len(),
        remaining: kept.len(),
        weight_before,
        weight_after,
        pairs,
        pair_failures,
        face_conflicts: conflicts,
        unpaired,
    };
    Ok((smoothed, c.clone(), report))
}
