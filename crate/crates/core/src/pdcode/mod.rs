//! Planar diagram codes.
//!
//! A crossing is a quadruple of edge identifiers listed counterclockwise,
//! starting at the incoming under-edge. Internally edges are numbered from 0;
//! the textual and JSON forms use the usual 1-based labels.
//!
//! A [`Diagram`] is always validated: every edge occurs exactly twice, every
//! edge has one tail and one head, the underlying 4-valent graph is connected
//! and the traced rotation system has `crossings + 2` faces.

mod generate;
mod moves;
mod parse;
mod planar;
mod table;

pub use generate::{braid_closure, connected_sum, connected_sum_mapped, torus2, BraidLetter};
pub use moves::{legal_moves, move_sites, MoveKind, MoveSpec, MoveStep, MoveTrace};
pub use parse::{parse_json, parse_pd, parse_table, PdJson};
pub use planar::{CanonicalKey, PlanarCode};
pub use table::{bundled, bundled_table, BUNDLED_NAMES};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which side of an oriented edge a region lies on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }

    fn index(self) -> usize {
        match self {
            Side::Left => 0,
            Side::Right => 1,
        }
    }
}

/// An end of an edge at a crossing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Dart {
    pub crossing: usize,
    pub slot: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Crossing {
    /// Edges counterclockwise from the incoming under-edge.
    pub slots: [usize; 4],
    /// The over strand runs from slot 1 to slot 3.
    pub over_forward: bool,
}

impl Crossing {
    pub fn new(slots: [usize; 4], over_forward: bool) -> Self {
        Crossing { slots, over_forward }
    }

    pub fn under_in(&self) -> usize {
        self.slots[0]
    }

    pub fn under_out(&self) -> usize {
        self.slots[2]
    }

    pub fn over_in_slot(&self) -> usize {
        if self.over_forward {
            1
        } else {
            3
        }
    }

    pub fn over_in(&self) -> usize {
        self.slots[self.over_in_slot()]
    }

    pub fn over_out(&self) -> usize {
        self.slots[(self.over_in_slot() + 2) % 4]
    }

    pub fn is_incoming(&self, slot: usize) -> bool {
        slot == 0 || slot == self.over_in_slot()
    }

    /// Local model: slot 0 south, slot 1 east, slot 2 north, slot 3 west.
    /// The under strand runs north; the crossing is positive when the over
    /// strand runs east, i.e. enters at slot 3.
    pub fn sign(&self) -> i32 {
        if self.over_forward {
            -1
        } else {
            1
        }
    }

    /// The same crossing with over and under exchanged.
    pub fn mirrored(&self) -> Crossing {
        let [a, b, c, d] = self.slots;
        if self.over_forward {
            Crossing::new([b, c, d, a], false)
        } else {
            Crossing::new([d, a, b, c], true)
        }
    }
}

pub fn is_over_slot(slot: usize) -> bool {
    slot % 2 == 1
}

/// A face of the diagram, as the cyclic list of `(edge, side)` incidences
/// met when walking its boundary with the face on the left.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Region {
    pub boundary: Vec<(usize, Side)>,
}

#[derive(Clone, Debug)]
pub struct Diagram {
    name: Option<String>,
    crossings: Vec<Crossing>,
    edge_count: usize,
    closed_loop_count: usize,
    tails: Vec<Dart>,
    heads: Vec<Dart>,
    components: Vec<Vec<usize>>,
    edge_component: Vec<usize>,
    arcs: Vec<Vec<usize>>,
    edge_arc: Vec<usize>,
    regions: Vec<Region>,
    edge_regions: Vec<[usize; 2]>,
    dart_regions: Vec<[usize; 4]>,
}

impl PartialEq for Diagram {
    fn eq(&self, other: &Self) -> bool {
        self.crossings == other.crossings && self.closed_loop_count == other.closed_loop_count
    }
}

impl Eq for Diagram {}

impl Diagram {
    /// The 0-crossing round circle.
    pub fn unknot() -> Diagram {
        Diagram {
            name: Some("unknot".to_string()),
            crossings: Vec::new(),
            edge_count: 1,
            closed_loop_count: 1,
            tails: Vec::new(),
            heads: Vec::new(),
            components: vec![vec![0]],
            edge_component: vec![0],
            arcs: vec![vec![0]],
            edge_arc: vec![0],
            regions: vec![
                Region {
                    boundary: vec![(0, Side::Left)],
                },
                Region {
                    boundary: vec![(0, Side::Right)],
                },
            ],
            edge_regions: vec![[0, 1]],
            dart_regions: Vec::new(),
        }
    }

    /// Validates oriented crossings with 0-based edges `0..2n`.
    pub fn from_crossings(crossings: Vec<Crossing>, name: Option<String>) -> Result<Diagram> {
        let n = crossings.len();
        if n == 0 {
            return Err(Error::BadIncidence("no crossings".into()));
        }
        let edge_count = 2 * n;
        let mut tails: Vec<Option<Dart>> = vec![None; edge_count];
        let mut heads: Vec<Option<Dart>> = vec![None; edge_count];
        for (ci, x) in crossings.iter().enumerate() {
            for (slot, &e) in x.slots.iter().enumerate() {
                if e >= edge_count {
                    return Err(Error::BadIncidence(format!(
                        "edge label {} out of range 1..={}",
                        e + 1,
                        edge_count
                    )));
                }
                let dart = Dart { crossing: ci, slot };
                let end = if x.is_incoming(slot) {
                    &mut heads[e]
                } else {
                    &mut tails[e]
                };
                if end.is_some() {
                    return Err(Error::InconsistentOrientation(format!(
                        "edge {} has two {}",
                        e + 1,
                        if x.is_incoming(slot) { "heads" } else { "tails" }
                    )));
                }
                *end = Some(dart);
            }
        }
        let mut tails_v = Vec::with_capacity(edge_count);
        let mut heads_v = Vec::with_capacity(edge_count);
        for e in 0..edge_count {
            match (tails[e], heads[e]) {
                (Some(t), Some(h)) => {
                    tails_v.push(t);
                    heads_v.push(h);
                }
                _ => {
                    return Err(Error::BadIncidence(format!(
                        "edge label {} does not appear exactly twice",
                        e + 1
                    )))
                }
            }
        }

        let mut uf = UnionFind::new(n);
        for e in 0..edge_count {
            uf.union(tails_v[e].crossing, heads_v[e].crossing);
        }
        if (0..n).any(|c| uf.find(c) != uf.find(0)) {
            return Err(Error::SplitInput);
        }

        let mut d = Diagram {
            name,
            crossings,
            edge_count,
            closed_loop_count: 0,
            tails: tails_v,
            heads: heads_v,
            components: Vec::new(),
            edge_component: vec![usize::MAX; edge_count],
            arcs: Vec::new(),
            edge_arc: vec![usize::MAX; edge_count],
            regions: Vec::new(),
            edge_regions: vec![[usize::MAX; 2]; edge_count],
            dart_regions: vec![[usize::MAX; 4]; n],
        };
        d.trace_components();
        d.trace_arcs();
        d.trace_faces();
        if d.regions.len() != n + 2 {
            return Err(Error::NonPlanar {
                faces: d.regions.len(),
                expected: n + 2,
            });
        }
        Ok(d)
    }

    fn next_edge(&self, e: usize) -> usize {
        let h = self.heads[e];
        self.crossings[h.crossing].slots[(h.slot + 2) % 4]
    }

    fn trace_components(&mut self) {
        for start in 0..self.edge_count {
            if self.edge_component[start] != usize::MAX {
                continue;
            }
            let id = self.components.len();
            let mut comp = Vec::new();
            let mut e = start;
            loop {
                self.edge_component[e] = id;
                comp.push(e);
                e = self.next_edge(e);
                if e == start {
                    break;
                }
            }
            self.components.push(comp);
        }
    }

    fn trace_arcs(&mut self) {
        let mut arcs: Vec<Vec<usize>> = Vec::new();
        // Arcs begin where a strand leaves an under-crossing.
        for x in &self.crossings {
            let start = x.under_out();
            let id = arcs.len();
            let mut arc = Vec::new();
            let mut e = start;
            loop {
                self.edge_arc[e] = id;
                arc.push(e);
                let h = self.heads[e];
                if h.slot == 0 {
                    break;
                }
                e = self.next_edge(e);
            }
            arcs.push(arc);
        }
        // Components that never pass under form a single arc.
        for comp in &self.components {
            if self.edge_arc[comp[0]] == usize::MAX {
                let id = arcs.len();
                for &e in comp {
                    self.edge_arc[e] = id;
                }
                arcs.push(comp.clone());
            }
        }
        let mut order: Vec<usize> = (0..arcs.len()).collect();
        order.sort_by_key(|&i| arcs[i].iter().min().copied());
        let mut rank = vec![0; arcs.len()];
        for (r, &i) in order.iter().enumerate() {
            rank[i] = r;
        }
        for a in self.edge_arc.iter_mut() {
            *a = rank[*a];
        }
        self.arcs = order.into_iter().map(|i| std::mem::take(&mut arcs[i])).collect();
    }

    fn opposite(&self, d: Dart) -> Dart {
        let e = self.crossings[d.crossing].slots[d.slot];
        let t = self.tails[e];
        if t == d {
            self.heads[e]
        } else {
            t
        }
    }

    fn trace_faces(&mut self) {
        let n = self.crossings.len();
        for c in 0..n {
            for s in 0..4 {
                if self.dart_regions[c][s] != usize::MAX {
                    continue;
                }
                let id = self.regions.len();
                let mut boundary = Vec::new();
                let mut d = Dart { crossing: c, slot: s };
                loop {
                    self.dart_regions[d.crossing][d.slot] = id;
                    let e = self.crossings[d.crossing].slots[d.slot];
                    let side = if self.tails[e] == d { Side::Left } else { Side::Right };
                    self.edge_regions[e][side.index()] = id;
                    boundary.push((e, side));
                    let o = self.opposite(d);
                    d = Dart {
                        crossing: o.crossing,
                        slot: (o.slot + 3) % 4,
                    };
                    if d.crossing == c && d.slot == s {
                        break;
                    }
                }
                self.regions.push(Region { boundary });
            }
        }
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn crossing(&self, c: usize) -> &Crossing {
        &self.crossings[c]
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn closed_loop_count(&self) -> usize {
        self.closed_loop_count
    }

    pub fn is_unknot_circle(&self) -> bool {
        self.crossings.is_empty()
    }

    pub fn tail(&self, e: usize) -> Option<Dart> {
        self.tails.get(e).copied()
    }

    pub fn head(&self, e: usize) -> Option<Dart> {
        self.heads.get(e).copied()
    }

    /// Oriented edge cycles.
    pub fn components(&self) -> &[Vec<usize>] {
        &self.components
    }

    pub fn component_of(&self, e: usize) -> usize {
        self.edge_component[e]
    }

    /// Arcs, each as its run of edges in orientation order.
    pub fn arcs(&self) -> &[Vec<usize>] {
        &self.arcs
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn arc_of(&self, e: usize) -> usize {
        self.edge_arc[e]
    }

    /// The arc passing over crossing `c`, followed by the incoming and
    /// outgoing under-arcs.
    pub fn crossing_arcs(&self, c: usize) -> (usize, usize, usize) {
        let x = &self.crossings[c];
        (
            self.edge_arc[x.slots[1]],
            self.edge_arc[x.under_in()],
            self.edge_arc[x.under_out()],
        )
    }

    pub fn faces(&self) -> &[Region] {
        &self.regions
    }

    pub fn region_count(&self) -> usize {
        self.regions.len()
    }

    pub fn region_of(&self, edge: usize, side: Side) -> usize {
        self.edge_regions[edge][side.index()]
    }

    /// The region in the corner between slot `t` and slot `t + 1`
    /// (counterclockwise) of crossing `c`.
    pub fn sector_region(&self, c: usize, t: usize) -> usize {
        self.dart_regions[c][t % 4]
    }

    pub fn crossing_sign(&self, c: usize) -> i32 {
        self.crossings[c].sign()
    }

    pub fn writhe(&self) -> i32 {
        self.crossings.iter().map(Crossing::sign).sum()
    }

    /// Components `(over, under)` meeting at crossing `c`.
    pub fn crossing_components(&self, c: usize) -> (usize, usize) {
        let x = &self.crossings[c];
        (self.edge_component[x.slots[1]], self.edge_component[x.slots[0]])
    }

    pub fn linking_number(&self, a: usize, b: usize) -> Result<i32> {
        let k = self.components.len();
        if a >= k {
            return Err(Error::UnknownComponent(a));
        }
        if b >= k || a == b {
            return Err(Error::UnknownComponent(b));
        }
        let total: i32 = (0..self.crossings.len())
            .filter(|&c| {
                let (o, u) = self.crossing_components(c);
                (o == a && u == b) || (o == b && u == a)
            })
            .map(|c| self.crossing_sign(c))
            .sum();
        Ok(total / 2)
    }

    /// All pairwise linking numbers `(a, b, lk)` with `a < b`.
    pub fn linking_numbers(&self) -> Vec<(usize, usize, i32)> {
        let k = self.components.len();
        let mut out = Vec::new();
        for a in 0..k {
            for b in a + 1..k {
                out.push((a, b, self.linking_number(a, b).expect("valid components")));
            }
        }
        out
    }

    pub fn mirror(&self) -> Diagram {
        if self.crossings.is_empty() {
            return self.clone();
        }
        let xs = self.crossings.iter().map(Crossing::mirrored).collect();
        let mut d = Diagram::from_crossings(xs, self.name.clone()).expect("mirror stays valid");
        d.name = self.name.as_ref().map(|n| format!("{n}*"));
        d
    }

    /// Reverses the orientation of every component whose index is in `comps`.
    pub fn reverse_components(&self, comps: &[usize]) -> Diagram {
        if self.crossings.is_empty() {
            return self.clone();
        }
        let rev = |e: usize| comps.contains(&self.edge_component[e]);
        let xs = self
            .crossings
            .iter()
            .map(|x| {
                let under_rev = rev(x.slots[0]);
                let over_rev = rev(x.slots[1]);
                let mut y = *x;
                if under_rev {
                    y.slots = [x.slots[2], x.slots[3], x.slots[0], x.slots[1]];
                    y.over_forward = !y.over_forward;
                }
                if over_rev {
                    y.over_forward = !y.over_forward;
                }
                y
            })
            .collect();
        let code = PlanarCode::new(xs, 0);
        let (mut d, _) = code.normalize().expect("reversal stays valid");
        d.name = self.name.clone();
        d
    }

    pub fn to_planar_code(&self) -> PlanarCode {
        PlanarCode::new(self.crossings.clone(), self.closed_loop_count)
    }

    /// 1-based PD quadruples.
    pub fn pd_quads(&self) -> Vec<[usize; 4]> {
        self.crossings.iter().map(|x| x.slots.map(|e| e + 1)).collect()
    }

    pub fn to_pd_text(&self) -> String {
        let mut s = String::new();
        if let Some(n) = &self.name {
            s.push_str(&format!("name {n}\n"));
        }
        if self.crossings.is_empty() {
            s.push_str("unknot\n");
        }
        for q in self.pd_quads() {
            s.push_str(&format!("X {} {} {} {}\n", q[0], q[1], q[2], q[3]));
        }
        s
    }

    pub fn to_json(&self) -> PdJson {
        PdJson {
            name: self.name.clone(),
            crossings: self.pd_quads(),
        }
    }

    pub fn canonical_key(&self) -> CanonicalKey {
        self.to_planar_code().canonical_key()
    }
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}
