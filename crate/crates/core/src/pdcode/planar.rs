use std::collections::BTreeMap;

use super::{Crossing, Dart, Diagram};
use crate::error::{Error, Result};

/// Oriented crossings over arbitrary edge identifiers, plus a count of
/// crossingless loops. This is the scratch form that moves and generators
/// build before relabeling into a [`Diagram`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlanarCode {
    pub crossings: Vec<Crossing>,
    pub loops: usize,
}

/// Lexicographically minimal relabeling of a diagram, used to identify
/// diagrams that differ only by edge names.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey(pub Vec<[u32; 5]>);

impl PlanarCode {
    pub fn new(crossings: Vec<Crossing>, loops: usize) -> Self {
        PlanarCode { crossings, loops }
    }

    fn ends(&self) -> Result<BTreeMap<usize, (Option<Dart>, Option<Dart>)>> {
        let mut ends: BTreeMap<usize, (Option<Dart>, Option<Dart>)> = BTreeMap::new();
        for (ci, x) in self.crossings.iter().enumerate() {
            for (slot, &e) in x.slots.iter().enumerate() {
                let dart = Dart { crossing: ci, slot };
                let entry = ends.entry(e).or_default();
                let end = if x.is_incoming(slot) {
                    &mut entry.1
                } else {
                    &mut entry.0
                };
                if end.replace(dart).is_some() {
                    return Err(Error::InconsistentOrientation(format!(
                        "edge id {e} has two ends of the same kind"
                    )));
                }
            }
        }
        Ok(ends)
    }

    /// Relabels edges consecutively along components and validates.
    ///
    /// Components are taken in order of their smallest edge id and each is
    /// numbered from that edge; crossings are then sorted by their incoming
    /// under-edge. Returns the diagram and the `(old id, new index)` map.
    pub fn normalize(&self) -> Result<(Diagram, Vec<(usize, usize)>)> {
        if self.crossings.is_empty() {
            return match self.loops {
                1 => Ok((Diagram::unknot(), Vec::new())),
                0 => Err(Error::BadIncidence("empty diagram".into())),
                _ => Err(Error::SplitInput),
            };
        }
        if self.loops > 0 {
            return Err(Error::SplitInput);
        }
        let ends = self.ends()?;
        let mut heads = BTreeMap::new();
        for (&e, &(t, h)) in &ends {
            match (t, h) {
                (Some(_), Some(h)) => {
                    heads.insert(e, h);
                }
                _ => return Err(Error::BadIncidence(format!("edge id {e} does not have both ends"))),
            }
        }
        let mut label: BTreeMap<usize, usize> = BTreeMap::new();
        let mut next = 0;
        for &start in ends.keys() {
            if label.contains_key(&start) {
                continue;
            }
            let mut e = start;
            loop {
                label.insert(e, next);
                next += 1;
                let h = heads[&e];
                e = self.crossings[h.crossing].slots[(h.slot + 2) % 4];
                if e == start {
                    break;
                }
            }
        }
        let mut xs: Vec<Crossing> = self
            .crossings
            .iter()
            .map(|x| Crossing::new(x.slots.map(|e| label[&e]), x.over_forward))
            .collect();
        xs.sort_by_key(|x| x.slots[0]);
        let d = Diagram::from_crossings(xs, None)?;
        Ok((d, label.into_iter().collect()))
    }

    pub fn canonical_key(&self) -> CanonicalKey {
        let d = match self.normalize() {
            Ok((d, _)) => d,
            // Invalid codes never meet valid ones; key them by raw content.
            Err(_) => {
                let mut raw: Vec<[u32; 5]> = self.crossings.iter().map(|x| encode(x.slots, x.over_forward)).collect();
                raw.sort();
                raw.insert(0, [u32::MAX, self.loops as u32, 0, 0, 0]);
                return CanonicalKey(raw);
            }
        };
        canonical_key_of(&d)
    }
}

fn encode(slots: [usize; 4], over_forward: bool) -> [u32; 5] {
    [
        slots[0] as u32,
        slots[1] as u32,
        slots[2] as u32,
        slots[3] as u32,
        over_forward as u32,
    ]
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for rest in permutations(k - 1) {
        for i in 0..=rest.len() {
            let mut p = rest.clone();
            p.insert(i, k - 1);
            out.push(p);
        }
    }
    out
}

pub(crate) fn canonical_key_of(d: &Diagram) -> CanonicalKey {
    if d.crossing_count() == 0 {
        return CanonicalKey(Vec::new());
    }
    let comps = d.components();
    let mut pos = vec![(0usize, 0usize); d.edge_count()];
    for (ci, comp) in comps.iter().enumerate() {
        for (i, &e) in comp.iter().enumerate() {
            pos[e] = (ci, i);
        }
    }
    let mut best: Option<Vec<[u32; 5]>> = None;
    let mut label = vec![0usize; d.edge_count()];
    for perm in permutations(comps.len()) {
        let mut starts = vec![0usize; comps.len()];
        loop {
            let mut offset = 0;
            let mut base = vec![0usize; comps.len()];
            for &ci in &perm {
                base[ci] = offset;
                offset += comps[ci].len();
            }
            for e in 0..d.edge_count() {
                let (ci, i) = pos[e];
                let k = comps[ci].len();
                label[e] = base[ci] + (i + k - starts[ci]) % k;
            }
            let mut key: Vec<[u32; 5]> = d
                .crossings()
                .iter()
                .map(|x| encode(x.slots.map(|e| label[e]), x.over_forward))
                .collect();
            key.sort();
            if best.as_ref().is_none_or(|b| key < *b) {
                best = Some(key);
            }
            // odometer over start edges
            let mut i = 0;
            while i < comps.len() {
                starts[i] += 1;
                if starts[i] < comps[i].len() {
                    break;
                }
                starts[i] = 0;
                i += 1;
            }
            if i == comps.len() {
                break;
            }
        }
    }
    CanonicalKey(best.expect("at least one labeling"))
}
