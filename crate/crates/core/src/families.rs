//! Connected sums of 5₂ along equally colored edges, and a braid-closure
//! search for links carrying the `{0,1,2,3}` pattern.

use std::collections::HashSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cocycle::{contribution_profile, PhiTable};
use crate::coloring::{affine, colorings, ArcColoring};
use crate::error::{Error, Result};
use crate::mincolor::case_one_pattern_holds;
use crate::pdcode::{braid_closure, bundled, connected_sum_mapped, is_over_slot, BraidLetter, Diagram};

const P: u64 = 7;

/// 5₂ with its first nontrivial 7-coloring in enumeration order.
pub fn reference_coloring() -> Result<(Diagram, ArcColoring)> {
    let d = bundled("5_2")?;
    let c = colorings(&d, P)?.find(|c| !c.is_trivial()).expect("5_2 is 7-colorable");
    Ok((d, c))
}

fn edge_colors(d: &Diagram, c: &ArcColoring) -> Vec<u64> {
    (0..d.edge_count()).map(|e| c.values[d.arc_of(e)]).collect()
}

fn tail_is_over(d: &Diagram, e: usize) -> bool {
    is_over_slot(d.tail(e).expect("edge has a tail").slot)
}

/// Every edge runs from an over-crossing to an under-crossing or back.
pub fn is_alternating(d: &Diagram) -> bool {
    (0..d.edge_count()).all(|e| {
        let (t, h) = (d.tail(e).unwrap(), d.head(e).unwrap());
        is_over_slot(t.slot) != is_over_slot(h.slot)
    })
}

/// `K_n` with the coloring induced by the reference coloring on each copy.
///
/// Each new copy is spliced at the first pair of edges (in `K_{n-1}`, then
/// in 5₂) with equal colors whose tails are both over or both under, which
/// keeps the diagram alternating.
pub fn build_kn_colored(n: usize) -> Result<(Diagram, ArcColoring)> {
    if n == 0 {
        return Err(Error::EmptyFamily);
    }
    let (five, c) = reference_coloring()?;
    let five_colors = edge_colors(&five, &c);
    let mut d = five.clone();
    let mut colors = five_colors.clone();
    for _ in 1..n {
        let (e1, e2) = (0..d.edge_count())
            .flat_map(|e1| (0..five.edge_count()).map(move |e2| (e1, e2)))
            .find(|&(e1, e2)| colors[e1] == five_colors[e2] && tail_is_over(&d, e1) == tail_is_over(&five, e2))
            .expect("5_2 has edges of every color and type");
        let (next, m1, m2) = connected_sum_mapped(&d, e1, &five, e2)?;
        let mut next_colors = vec![0; next.edge_count()];
        for (e, &col) in colors.iter().enumerate() {
            next_colors[m1[e]] = col;
        }
        for (e, &col) in five_colors.iter().enumerate() {
            next_colors[m2[e]] = col;
        }
        d = next;
        colors = next_colors;
    }
    let mut values = vec![0; d.arc_count()];
    for (e, &col) in colors.iter().enumerate() {
        values[d.arc_of(e)] = col;
    }
    let c = ArcColoring::new(&d, P, values)?;
    Ok((d.with_name(format!("K{n}")), c))
}

pub fn build_kn(n: usize) -> Result<Diagram> {
    build_kn_colored(n).map(|(d, _)| d)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScalingRow {
    /// The 5₂ coloring, repeated on every copy.
    pub coloring: Vec<u64>,
    /// Contribution on 5₂ per base color of region 0.
    pub single: Vec<u64>,
    /// Contribution on `K_n` per base color of region 0.
    pub induced: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScalingReport {
    pub n: usize,
    pub p: u64,
    pub rows: Vec<ScalingRow>,
    /// Every profile is constant in the base color.
    pub base_independent: bool,
    /// Each induced contribution is `n` times the single one.
    pub scaling_holds: bool,
    /// Induced (coloring, base) pairs with contribution 0.
    pub induced_zeros: u128,
}

impl ScalingReport {
    /// The trivial colorings give `p²` zeros; each zero among the induced
    /// nontrivial colorings adds one.
    pub fn phi0_lower_bound(&self) -> u128 {
        (self.p * self.p) as u128 + self.induced_zeros
    }

    pub fn all_nonzero(&self) -> bool {
        self.induced_zeros == 0
    }
}

/// Compares contributions of every nontrivial 7-coloring of 5₂ with those
/// of the coloring it induces on `K_n`.
pub fn contribution_scaling_check(n: usize) -> Result<ScalingReport> {
    let (five, c) = reference_coloring()?;
    let (kn, induced) = build_kn_colored(n)?;
    let phi = PhiTable::new(P)?;
    let mut rows = Vec::new();
    for a in 1..P {
        for b in 0..P {
            let single_c = affine(&c, a, b)?;
            let kn_c = affine(&induced, a, b)?;
            rows.push(ScalingRow {
                single: contribution_profile(&five, &single_c, &phi),
                induced: contribution_profile(&kn, &kn_c, &phi),
                coloring: single_c.values,
            });
        }
    }
    let constant = |v: &[u64]| v.iter().all(|&x| x == v[0]);
    let base_independent = rows.iter().all(|r| constant(&r.single) && constant(&r.induced));
    let scaling_holds = rows
        .iter()
        .all(|r| r.single.iter().zip(&r.induced).all(|(&s, &i)| i == s * n as u64 % P));
    let induced_zeros = rows
        .iter()
        .map(|r| r.induced.iter().filter(|&&v| v == 0).count() as u128)
        .sum();
    Ok(ScalingReport {
        n,
        p: P,
        rows,
        base_independent,
        scaling_holds,
        induced_zeros,
    })
}

/// `(over; unders)` is constant, `(1; 0, 2)` or `(2; 1, 3)`.
fn allowed(z: u64, a: u64, b: u64) -> bool {
    let (lo, hi) = (a.min(b), a.max(b));
    (z == a && a == b) || (z == 1 && (lo, hi) == (0, 2)) || (z == 2 && (lo, hi) == (1, 3))
}

/// First assignment of `{0,1,2,3}` to arcs, using all four, in which every
/// crossing is constant, `(1; 0, 2)` or `(2; 1, 3)`. Arcs are filled in
/// order with the smallest colors first.
pub fn find_case_one_coloring(d: &Diagram) -> Option<Vec<u64>> {
    let k = d.arc_count();
    if k < 4 {
        return None;
    }
    // Crossings to check once their highest arc is set.
    let mut checks: Vec<Vec<(usize, usize, usize)>> = vec![Vec::new(); k];
    for x in 0..d.crossing_count() {
        let (z, a, b) = d.crossing_arcs(x);
        checks[z.max(a).max(b)].push((z, a, b));
    }
    fn go(i: usize, vals: &mut Vec<u64>, checks: &[Vec<(usize, usize, usize)>], used: &mut [usize; 4]) -> bool {
        let k = vals.len();
        if i == k {
            return used.iter().all(|&u| u > 0);
        }
        let missing = used.iter().filter(|&&u| u == 0).count();
        if missing > k - i {
            return false;
        }
        for v in 0..4u64 {
            vals[i] = v;
            used[v as usize] += 1;
            let ok = checks[i].iter().all(|&(z, a, b)| allowed(vals[z], vals[a], vals[b]));
            if ok && go(i + 1, vals, checks, used) {
                return true;
            }
            used[v as usize] -= 1;
        }
        false
    }
    let mut vals = vec![0; k];
    let mut used = [0usize; 4];
    go(0, &mut vals, &checks, &mut used).then_some(vals)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniversalCandidate {
    pub strands: usize,
    pub word: Vec<BraidLetter>,
    pub diagram: Diagram,
    /// Integer labels in `{0,1,2,3}`, stored mod 11.
    pub coloring: ArcColoring,
    pub linking_numbers: Vec<(usize, usize, i32)>,
}

impl UniversalCandidate {
    /// Some pair of components links; otherwise the candidate may be split.
    pub fn linked(&self) -> bool {
        self.linking_numbers.iter().any(|&(_, _, l)| l != 0)
    }

    pub fn word_text(&self) -> String {
        self.word.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(" ")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniversalSearch {
    pub max_length: usize,
    pub words_tried: usize,
    pub candidates: Vec<UniversalCandidate>,
}

/// Freely and cyclically reduced words on `strands` strands of each length
/// up to `max_len`, shortest first, letters ordered `s1, s1^-1, s2, ...`.
fn braid_words(strands: usize, max_len: usize) -> Vec<Vec<BraidLetter>> {
    let letters: Vec<BraidLetter> = (1..strands)
        .flat_map(|g| [BraidLetter::pos(g), BraidLetter::neg(g)])
        .collect();
    let mut out = Vec::new();
    let mut layer: Vec<Vec<BraidLetter>> = vec![Vec::new()];
    for _ in 1..=max_len {
        let mut next = Vec::new();
        for w in &layer {
            for &l in &letters {
                if w.last().is_some_and(|&last| last == l.inverse()) {
                    continue;
                }
                let mut v = w.clone();
                v.push(l);
                next.push(v);
            }
        }
        out.extend(
            next.iter()
                .filter(|w| w.len() < 2 || w[0] != w[w.len() - 1].inverse())
                .filter(|w| (1..strands).all(|g| w.iter().any(|l| l.generator == g)))
                .cloned(),
        );
        layer = next;
    }
    out
}

/// Closures of 2- and 3-strand braids up to `max_len` letters that carry a
/// 4-color `{0,1,2,3}` pattern coloring, deduplicated by canonical form.
///
/// Fails if a knot turns up, since no knot can carry the pattern.
pub fn search_universal_four_color(max_len: usize) -> Result<UniversalSearch> {
    let words: Vec<(usize, Vec<BraidLetter>)> = [2, 3]
        .into_iter()
        .flat_map(|s| braid_words(s, max_len).into_iter().map(move |w| (s, w)))
        .collect();
    let found: Vec<Option<(usize, Vec<BraidLetter>, Diagram, Vec<u64>)>> = words
        .par_iter()
        .map(|(s, w)| {
            let d = braid_closure(*s, w).ok()?;
            let vals = find_case_one_coloring(&d)?;
            Some((*s, w.clone(), d, vals))
        })
        .collect();
    let mut seen = HashSet::new();
    let mut candidates = Vec::new();
    for (strands, word, d, vals) in found.into_iter().flatten() {
        if d.components().len() == 1 {
            let text = word.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(" ");
            return Err(Error::CaseOneKnot(text));
        }
        if !seen.insert(d.canonical_key()) {
            continue;
        }
        let coloring = ArcColoring::new(&d, 11, vals)?;
        debug_assert!(case_one_pattern_holds(&d, &coloring));
        candidates.push(UniversalCandidate {
            strands,
            linking_numbers: d.linking_numbers(),
            word,
            diagram: d,
            coloring,
        });
    }
    Ok(UniversalSearch {
        max_length: max_len,
        words_tried: words.len(),
        candidates,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{knot_determinant, ColoringMatrix};
    use num_bigint::BigUint;

    #[test]
    fn k1_is_five_two() {
        let d = build_kn(1).unwrap();
        assert_eq!(d.crossings(), bundled("5_2").unwrap().crossings());
        assert_eq!(build_kn(0), Err(Error::EmptyFamily));
    }

    #[test]
    fn kn_sizes_and_determinants() {
        for n in 1..=3 {
            let (d, c) = build_kn_colored(n).unwrap();
            assert_eq!(d.crossing_count(), 5 * n);
            assert_eq!(d.components().len(), 1);
            assert!(is_alternating(&d));
            assert!(c.palette().len() <= 4 + 1);
            let det = knot_determinant(&ColoringMatrix::from_diagram(&d)).unwrap();
            assert_eq!(det, BigUint::from(7u32.pow(n as u32)));
        }
    }

    #[test]
    fn induced_coloring_keeps_the_palette() {
        let (_, c) = reference_coloring().unwrap();
        let (_, k3) = build_kn_colored(3).unwrap();
        assert_eq!(k3.palette(), c.palette());
    }

    #[test]
    fn scaling() {
        let r1 = contribution_scaling_check(1).unwrap();
        assert!(r1.rows.iter().all(|r| [1, 2, 4].contains(&r.single[0])));
        let r2 = contribution_scaling_check(2).unwrap();
        assert!(r2.scaling_holds && r2.all_nonzero());
        let r7 = contribution_scaling_check(7).unwrap();
        assert!(r7.scaling_holds);
        assert_eq!(r7.induced_zeros, 42 * 7);
        assert!(r7.phi0_lower_bound() > 49);
    }

    #[test]
    fn short_braids_carry_no_pattern() {
        let s = search_universal_four_color(2).unwrap();
        assert!(s.candidates.is_empty());
    }

    #[test]
    fn word_enumeration_is_reduced() {
        let ws = braid_words(3, 3);
        assert!(ws.iter().all(|w| w.windows(2).all(|p| p[0] != p[1].inverse())));
        assert!(ws.iter().all(|w| w.iter().any(|l| l.generator == 2)));
        assert_eq!(braid_words(2, 3).len(), 6);
    }
}
