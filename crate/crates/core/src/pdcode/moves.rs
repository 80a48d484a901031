//! Reidemeister moves on PD codes.
//!
//! Every move is applied to a copy of the crossing list with fresh edge ids
//! for new edges, then relabeled by [`PlanarCode::normalize`]. The relabeling
//! is recorded so that a replayed trace can be checked step by step.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::{is_over_slot, Crossing, Diagram, PlanarCode, Side, UnionFind};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MoveKind {
    #[serde(rename = "R1+")]
    R1Add,
    #[serde(rename = "R1-")]
    R1Remove,
    #[serde(rename = "R2+")]
    R2Add,
    #[serde(rename = "R2-")]
    R2Remove,
    #[serde(rename = "R3")]
    R3,
}

impl fmt::Display for MoveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            MoveKind::R1Add => "R1+",
            MoveKind::R1Remove => "R1-",
            MoveKind::R2Add => "R2+",
            MoveKind::R2Remove => "R2-",
            MoveKind::R3 => "R3",
        };
        f.write_str(s)
    }
}

/// A move and its site. Edges, crossings and faces are 0-based indices into
/// the diagram the move is applied to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum MoveSpec {
    /// Add a kink on `edge`. `over_first`: the strand passes over on its
    /// first visit; `loop_left`: the loop lies left of the strand.
    #[serde(rename = "R1+")]
    R1Add {
        edge: usize,
        over_first: bool,
        loop_left: bool,
    },
    /// Remove the kink at `crossing`.
    #[serde(rename = "R1-")]
    R1Remove { crossing: usize },
    /// Push a finger of the under edge beneath the over edge across the face
    /// both of them bound on the given sides.
    #[serde(rename = "R2+")]
    R2Add {
        over_edge: usize,
        over_side: Side,
        under_edge: usize,
        under_side: Side,
    },
    /// Remove the bigon `face`.
    #[serde(rename = "R2-")]
    R2Remove { face: usize },
    /// Slide across the triangular `face`.
    #[serde(rename = "R3")]
    R3 { face: usize },
}

impl MoveSpec {
    pub fn kind(&self) -> MoveKind {
        match self {
            MoveSpec::R1Add { .. } => MoveKind::R1Add,
            MoveSpec::R1Remove { .. } => MoveKind::R1Remove,
            MoveSpec::R2Add { .. } => MoveKind::R2Add,
            MoveSpec::R2Remove { .. } => MoveKind::R2Remove,
            MoveSpec::R3 { .. } => MoveKind::R3,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoveStep {
    #[serde(flatten)]
    pub spec: MoveSpec,
    /// `(working id, final edge index)` pairs produced by relabeling.
    pub relabel: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoveTrace {
    pub steps: Vec<MoveStep>,
}

impl MoveTrace {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Replays every step from `start`, failing on an illegal site or on a
    /// relabeling that differs from the recorded one.
    pub fn replay(&self, start: &Diagram) -> Result<Diagram> {
        let mut d = start.clone();
        for (i, step) in self.steps.iter().enumerate() {
            let (next, got) = d.apply_move(&step.spec)?;
            if got.relabel != step.relabel {
                return Err(Error::IllegalSite(format!(
                    "step {i} relabels differently from the record"
                )));
            }
            d = next;
        }
        Ok(d)
    }
}

fn finish(code: PlanarCode, spec: &MoveSpec) -> Result<(Diagram, MoveStep)> {
    let (d, relabel) = code.normalize().map_err(|e| match e {
        Error::SplitInput => Error::IllegalSite(format!("{} would split the diagram", spec.kind())),
        other => other,
    })?;
    Ok((d, MoveStep { spec: *spec, relabel }))
}

/// Deletes `removed` crossings, joining the strands through them.
fn remove_crossings(xs: &[Crossing], removed: &[usize]) -> PlanarCode {
    let max_id = xs.iter().flat_map(|x| x.slots).max().unwrap_or(0);
    let mut uf = UnionFind::new(max_id + 1);
    for &c in removed {
        let s = xs[c].slots;
        uf.union(s[0], s[2]);
        uf.union(s[1], s[3]);
    }
    let kept: Vec<Crossing> = xs
        .iter()
        .enumerate()
        .filter(|(i, _)| !removed.contains(i))
        .map(|(_, x)| Crossing::new(x.slots.map(|e| uf.find(e)), x.over_forward))
        .collect();
    let mut classes: Vec<usize> = removed.iter().flat_map(|&c| xs[c].slots).map(|e| uf.find(e)).collect();
    classes.sort_unstable();
    classes.dedup();
    let loops = classes
        .iter()
        .filter(|&&r| !kept.iter().any(|x| x.slots.contains(&r)))
        .count();
    PlanarCode::new(kept, loops)
}

fn kink_loop_slot(x: &Crossing) -> Option<usize> {
    (0..4).find(|&s| x.slots[s] == x.slots[(s + 1) % 4])
}

impl Diagram {
    /// Applies one Reidemeister move, returning the relabeled diagram and the
    /// trace step that reproduces it.
    pub fn apply_move(&self, spec: &MoveSpec) -> Result<(Diagram, MoveStep)> {
        match *spec {
            MoveSpec::R1Add {
                edge,
                over_first,
                loop_left,
            } => self.r1_add(spec, edge, over_first, loop_left),
            MoveSpec::R1Remove { crossing } => {
                let x = self
                    .crossings()
                    .get(crossing)
                    .ok_or_else(|| Error::IllegalSite(format!("no crossing {crossing}")))?;
                if kink_loop_slot(x).is_none() {
                    return Err(Error::IllegalSite(format!("crossing {crossing} is not a kink")));
                }
                finish(remove_crossings(self.crossings(), &[crossing]), spec)
            }
            MoveSpec::R2Add {
                over_edge,
                over_side,
                under_edge,
                under_side,
            } => self.r2_add(spec, over_edge, over_side, under_edge, under_side),
            MoveSpec::R2Remove { face } => {
                let (c1, c2) = self.bigon_site(face)?;
                finish(remove_crossings(self.crossings(), &[c1, c2]), spec)
            }
            MoveSpec::R3 { face } => self.r3(spec, face),
        }
    }

    fn r1_add(&self, spec: &MoveSpec, e: usize, over_first: bool, loop_left: bool) -> Result<(Diagram, MoveStep)> {
        if e >= self.edge_count() {
            return Err(Error::IllegalSite(format!("no edge {e}")));
        }
        let mut xs = self.crossings().to_vec();
        let l = self.edge_count();
        let f = if xs.is_empty() { e } else { l + 1 };
        if let Some(h) = self.head(e) {
            xs[h.crossing].slots[h.slot] = f;
        }
        let x = match (over_first, loop_left) {
            (false, false) => Crossing::new([e, l, l, f], true),
            (false, true) => Crossing::new([e, f, l, l], false),
            (true, true) => Crossing::new([l, e, f, l], true),
            (true, false) => Crossing::new([l, l, f, e], false),
        };
        xs.push(x);
        finish(PlanarCode::new(xs, 0), spec)
    }

    fn r2_add(&self, spec: &MoveSpec, o: usize, o_side: Side, u: usize, u_side: Side) -> Result<(Diagram, MoveStep)> {
        let m = self.edge_count();
        if o >= m || u >= m || self.crossing_count() == 0 {
            return Err(Error::IllegalSite("R2+ needs two edges".into()));
        }
        if o == u {
            return Err(Error::IllegalSite("R2+ needs two distinct edges".into()));
        }
        if self.region_of(o, o_side) != self.region_of(u, u_side) {
            return Err(Error::IllegalSite(format!(
                "edges {o} and {u} do not bound a common face on the given sides"
            )));
        }
        // Local model: the face lies above the over edge, which runs east
        // along the face boundary; the under edge sits on top and dips a
        // finger down across it, meeting it at Q (east) then P (west) in
        // boundary order. `w*` is +1 when the real orientation agrees with
        // the boundary walk.
        let wo = o_side == Side::Left;
        let wu = u_side == Side::Left;
        let (o_new, o_mid, u_mid, u_new) = (m, m + 1, m + 2, m + 3);
        let (o_a, o_b) = if wo { (o, o_new) } else { (o_new, o) };
        let (u_a, u_b) = if wu { (u, u_new) } else { (u_new, u) };
        let mut xs = self.crossings().to_vec();
        let ho = self.head(o).expect("edge has a head");
        let hu = self.head(u).expect("edge has a head");
        xs[ho.crossing].slots[ho.slot] = o_new;
        xs[hu.crossing].slots[hu.slot] = u_new;
        let q = if wu {
            Crossing::new([u_a, o_mid, u_mid, o_b], wo)
        } else {
            Crossing::new([u_mid, o_b, u_a, o_mid], !wo)
        };
        let p = if wu {
            Crossing::new([u_mid, o_mid, u_b, o_a], !wo)
        } else {
            Crossing::new([u_b, o_a, u_mid, o_mid], wo)
        };
        xs.push(q);
        xs.push(p);
        finish(PlanarCode::new(xs, 0), spec)
    }

    /// Crossings of a removable bigon.
    fn bigon_site(&self, face: usize) -> Result<(usize, usize)> {
        let r = self
            .faces()
            .get(face)
            .ok_or_else(|| Error::IllegalSite(format!("no face {face}")))?;
        if r.boundary.len() != 2 || self.crossing_count() == 0 {
            return Err(Error::IllegalSite(format!("face {face} is not a bigon")));
        }
        let (e1, e2) = (r.boundary[0].0, r.boundary[1].0);
        if e1 == e2 {
            return Err(Error::IllegalSite(format!("face {face} is not a bigon")));
        }
        let ends = |e: usize| (self.tail(e).unwrap(), self.head(e).unwrap());
        let (t1, h1) = ends(e1);
        let (t2, h2) = ends(e2);
        if t1.crossing == h1.crossing {
            return Err(Error::IllegalSite(format!("face {face} is a monogon pair")));
        }
        let over = |e: (super::Dart, super::Dart)| (is_over_slot(e.0.slot), is_over_slot(e.1.slot));
        let pattern = (over((t1, h1)), over((t2, h2)));
        let ok = matches!(pattern, ((true, true), (false, false)) | ((false, false), (true, true)));
        if !ok {
            return Err(Error::IllegalSite(format!(
                "bigon {face} does not have one strand over at both crossings"
            )));
        }
        let mut cs = [t1.crossing, h1.crossing];
        cs.sort_unstable();
        let mut cs2 = [t2.crossing, h2.crossing];
        cs2.sort_unstable();
        debug_assert_eq!(cs, cs2);
        Ok((cs[0], cs[1]))
    }

    /// Darts at the three corners of a legal R3 triangle, one per edge, each
    /// as `(edge, tail dart, head dart)`.
    fn triangle_site(&self, face: usize) -> Result<[(usize, super::Dart, super::Dart); 3]> {
        let r = self
            .faces()
            .get(face)
            .ok_or_else(|| Error::IllegalSite(format!("no face {face}")))?;
        if r.boundary.len() != 3 {
            return Err(Error::IllegalSite(format!("face {face} is not a triangle")));
        }
        let mut out = [(0, self.tail(0).unwrap(), self.head(0).unwrap()); 3];
        let mut corners = Vec::new();
        for (i, &(e, side)) in r.boundary.iter().enumerate() {
            let (t, h) = (self.tail(e).unwrap(), self.head(e).unwrap());
            out[i] = (e, t, h);
            corners.push(if side == Side::Left { t.crossing } else { h.crossing });
        }
        let mut cs = corners.clone();
        cs.sort_unstable();
        cs.dedup();
        let mut es: Vec<usize> = out.iter().map(|t| t.0).collect();
        es.sort_unstable();
        es.dedup();
        if cs.len() != 3 || es.len() != 3 {
            return Err(Error::IllegalSite(format!(
                "face {face} is not bounded by three distinct crossings"
            )));
        }
        let mut all_over = 0;
        let mut all_under = 0;
        for &(_, t, h) in &out {
            match (is_over_slot(t.slot), is_over_slot(h.slot)) {
                (true, true) => all_over += 1,
                (false, false) => all_under += 1,
                _ => {}
            }
        }
        if all_over != 1 || all_under != 1 {
            return Err(Error::IllegalSite(format!(
                "triangle {face} does not admit a third move"
            )));
        }
        Ok(out)
    }

    fn r3(&self, spec: &MoveSpec, face: usize) -> Result<(Diagram, MoveStep)> {
        let tri = self.triangle_site(face)?;
        let old = self.crossings();
        let mut xs = old.to_vec();
        // Each strand keeps its crossings but meets them in the opposite
        // order: the triangle edge swaps places with the outer edges.
        for &(t, tail, head) in &tri {
            let outer_at_tail = old[tail.crossing].slots[(tail.slot + 2) % 4];
            let outer_at_head = old[head.crossing].slots[(head.slot + 2) % 4];
            xs[tail.crossing].slots[tail.slot] = outer_at_head;
            xs[tail.crossing].slots[(tail.slot + 2) % 4] = t;
            xs[head.crossing].slots[head.slot] = outer_at_tail;
            xs[head.crossing].slots[(head.slot + 2) % 4] = t;
        }
        finish(PlanarCode::new(xs, 0), spec)
    }
}

/// Every move of `d` that applies, in the order of [`move_sites`].
pub fn legal_moves(d: &Diagram) -> Vec<MoveSpec> {
    move_sites(d).into_iter().filter(|m| d.apply_move(m).is_ok()).collect()
}

/// Every move site of `d` that passes the local shape check, in a fixed
/// order: simplifying moves, third moves, then the growing moves. Some may
/// still fail to apply, for instance a second move that would split off a
/// component.
pub fn move_sites(d: &Diagram) -> Vec<MoveSpec> {
    let mut out = Vec::new();
    for (c, x) in d.crossings().iter().enumerate() {
        if kink_loop_slot(x).is_some() {
            out.push(MoveSpec::R1Remove { crossing: c });
        }
    }
    for face in 0..d.region_count() {
        if d.faces()[face].boundary.len() == 2 && d.bigon_site(face).is_ok() {
            out.push(MoveSpec::R2Remove { face });
        }
    }
    for face in 0..d.region_count() {
        if d.faces()[face].boundary.len() == 3 && d.triangle_site(face).is_ok() {
            out.push(MoveSpec::R3 { face });
        }
    }
    if d.crossing_count() > 0 {
        for r in d.faces() {
            for &(oe, os) in &r.boundary {
                for &(ue, us) in &r.boundary {
                    if oe != ue {
                        out.push(MoveSpec::R2Add {
                            over_edge: oe,
                            over_side: os,
                            under_edge: ue,
                            under_side: us,
                        });
                    }
                }
            }
        }
    }
    for edge in 0..d.edge_count() {
        for over_first in [false, true] {
            for loop_left in [false, true] {
                out.push(MoveSpec::R1Add {
                    edge,
                    over_first,
                    loop_left,
                });
            }
        }
    }
    out
}
