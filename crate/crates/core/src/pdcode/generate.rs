use std::fmt;

use serde::{Deserialize, Serialize};

use super::{Crossing, Diagram, PlanarCode};
use crate::error::{Error, Result};

/// A braid generator `σ_i` or its inverse; `generator` is 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BraidLetter {
    pub generator: usize,
    pub positive: bool,
}

impl BraidLetter {
    pub fn pos(generator: usize) -> Self {
        BraidLetter {
            generator,
            positive: true,
        }
    }

    pub fn neg(generator: usize) -> Self {
        BraidLetter {
            generator,
            positive: false,
        }
    }

    pub fn inverse(self) -> Self {
        BraidLetter {
            generator: self.generator,
            positive: !self.positive,
        }
    }
}

impl fmt::Display for BraidLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.positive {
            write!(f, "s{}", self.generator)
        } else {
            write!(f, "S{}", self.generator)
        }
    }
}

/// Closure of a braid on `strands` strands drawn bottom to top.
///
/// `σ_i` is the positive crossing: the strand at position `i` passes over
/// the strand at `i + 1`.
pub fn braid_closure(strands: usize, word: &[BraidLetter]) -> Result<Diagram> {
    if strands == 0 || word.iter().any(|l| l.generator == 0 || l.generator >= strands) {
        return Err(Error::BadIncidence("braid generator out of range".into()));
    }
    let mut cur: Vec<usize> = (0..strands).collect();
    let mut next = strands;
    let mut xs = Vec::with_capacity(word.len());
    for l in word {
        let i = l.generator - 1;
        let (left, right) = (cur[i], cur[i + 1]);
        let (left_out, right_out) = (next, next + 1);
        next += 2;
        xs.push(if l.positive {
            Crossing::new([right, left_out, right_out, left], false)
        } else {
            Crossing::new([left, right, left_out, right_out], true)
        });
        cur[i] = right_out;
        cur[i + 1] = left_out;
    }
    let mut loops = 0;
    for (j, &top) in cur.iter().enumerate() {
        if top == j {
            loops += 1;
        }
    }
    for x in xs.iter_mut() {
        for s in x.slots.iter_mut() {
            if let Some(j) = cur.iter().position(|&t| t == *s) {
                *s = j;
            }
        }
    }
    if xs.is_empty() {
        loops = strands;
    }
    let (d, _) = PlanarCode::new(xs, loops).normalize()?;
    Ok(d)
}

/// The standard closed 2-braid diagram `σ_1^k`.
pub fn torus2(k: usize) -> Result<Diagram> {
    if k < 2 {
        return Err(Error::TooFewCrossings(k));
    }
    let word = vec![BraidLetter::pos(1); k];
    Ok(braid_closure(2, &word)?.with_name(format!("torus2_{k}")))
}

/// Cuts `e1` in `d1` and `e2` in `d2` and splices the loose ends so that
/// orientations agree.
pub fn connected_sum(d1: &Diagram, e1: usize, d2: &Diagram, e2: usize) -> Result<Diagram> {
    connected_sum_mapped(d1, e1, d2, e2).map(|(d, _, _)| d)
}

/// [`connected_sum`], also returning where each edge of `d1` and of `d2`
/// ends up.
pub fn connected_sum_mapped(
    d1: &Diagram,
    e1: usize,
    d2: &Diagram,
    e2: usize,
) -> Result<(Diagram, Vec<usize>, Vec<usize>)> {
    if e1 >= d1.edge_count() {
        return Err(Error::BadIncidence(format!("no edge {e1} in first diagram")));
    }
    if e2 >= d2.edge_count() {
        return Err(Error::BadIncidence(format!("no edge {e2} in second diagram")));
    }
    if d1.crossing_count() == 0 {
        return Ok((d2.clone(), vec![0; d1.edge_count()], (0..d2.edge_count()).collect()));
    }
    if d2.crossing_count() == 0 {
        return Ok((d1.clone(), (0..d1.edge_count()).collect(), vec![0; d2.edge_count()]));
    }
    let shift = d1.edge_count();
    let mut xs: Vec<Crossing> = d1.crossings().to_vec();
    let base = xs.len();
    xs.extend(
        d2.crossings()
            .iter()
            .map(|x| Crossing::new(x.slots.map(|e| e + shift), x.over_forward)),
    );
    let h1 = d1.head(e1).expect("edge has a head");
    let h2 = d2.head(e2).expect("edge has a head");
    xs[h1.crossing].slots[h1.slot] = e2 + shift;
    xs[base + h2.crossing].slots[h2.slot] = e1;
    let (d, relabel) = PlanarCode::new(xs, 0).normalize()?;
    let mut map = vec![0; shift + d2.edge_count()];
    for (old, new) in relabel {
        map[old] = new;
    }
    let map2 = map.split_off(shift);
    Ok((d, map, map2))
}
