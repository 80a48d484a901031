//! Minimal palettes: per-diagram minima, affine normalization of 4-color
//! palettes, the Case 1 cancellation check, the Φ⁰ lower bound and a bounded
//! Reidemeister search for diagrams with fewer colors.

mod bound;
mod search;
mod smoothing;
mod witness;

pub use bound::{theorem_lower_bound, BoundReport, Nonsplit};
pub use search::{palette_reduction_search, SearchOptions, SearchOutcome, Witness};
pub use smoothing::{smooth_constant_crossings, SmoothedDiagram, SmoothingReport};
pub use witness::{verify_bundle, verify_witness, WitnessBundle, WitnessFailure, WitnessReport};

use serde::{Deserialize, Serialize};

use crate::coloring::{affine, colorings, inverse, ArcColoring};
use crate::error::{Error, Result};
use crate::linalg::check_odd_prime;
use crate::pdcode::Diagram;

/// Smallest palette over the nontrivial colorings of one diagram, with the
/// first coloring attaining it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinColors {
    pub p: u64,
    pub palette_size: usize,
    pub witness: ArcColoring,
}

/// `None` when the diagram has only trivial colorings.
pub fn diagram_min_colors(d: &Diagram, p: u64) -> Result<Option<MinColors>> {
    check_odd_prime(p)?;
    let mut best: Option<MinColors> = None;
    for c in colorings(d, p)? {
        if c.is_trivial() {
            continue;
        }
        let k = c.palette().len();
        if best.as_ref().is_none_or(|b| k < b.palette_size) {
            best = Some(MinColors {
                p,
                palette_size: k,
                witness: c,
            });
        }
    }
    Ok(best)
}

/// Affine normal form of a 4-color palette.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CaseTag {
    /// `{0, 1, 2, 3}`
    Case1,
    /// `{0, 1, 2, 1/2}`
    Case2,
    /// `{0, 1, 2, 3/2}`
    Case3,
    /// `p <= 7`, where the normal forms collide.
    Unclassified,
}

/// Colors `(over, under_in, under_out)` at crossing `c`.
pub fn crossing_colors(d: &Diagram, c: &ArcColoring, x: usize) -> (u64, u64, u64) {
    let (z, y1, y2) = d.crossing_arcs(x);
    (c.values[z], c.values[y1], c.values[y2])
}

/// Translates, scales and shifts a 4-color coloring into one of the normal
/// forms `{0,1,2,w}`.
///
/// The first crossing with distinct colors has its incoming under-arc sent
/// to 0 and its over-arc to 1. The fourth color is read off the first
/// crossing where an arc colored 1 ends under an over-arc colored `c' != 1`.
pub fn normalize_four_palette(d: &Diagram, c: &ArcColoring) -> Result<(ArcColoring, CaseTag)> {
    let p = c.p;
    let k = c.palette().len();
    if k != 4 {
        return Err(Error::NotFourColors(k));
    }
    let tau = (0..d.crossing_count())
        .find(|&x| {
            let (z, y1, _) = crossing_colors(d, c, x);
            z != y1
        })
        .ok_or(Error::NoQualifyingCrossing)?;
    let (z, y1, _) = crossing_colors(d, c, tau);
    let shifted = affine(c, 1, (p - y1) % p)?;
    let scale = inverse((z + p - y1) % p, p)?;
    let n = affine(&shifted, scale, 0)?;
    debug_assert_eq!(crossing_colors(d, &n, tau), (1, 0, 2));

    let tau2 = (0..d.crossing_count()).find_map(|x| {
        let (over, u1, u2) = crossing_colors(d, &n, x);
        (over != 1 && (u1 == 1 || u2 == 1)).then_some(over)
    });
    let Some(cp) = tau2 else {
        return Err(Error::NoQualifyingCrossing);
    };
    if p <= 7 {
        return Ok((n, CaseTag::Unclassified));
    }
    let half = inverse(2, p)?;
    let (out, tag) = if cp == 0 {
        (affine(&n, 1, 1)?, CaseTag::Case1)
    } else if cp == 2 {
        (n, CaseTag::Case1)
    } else if cp == half {
        (n, CaseTag::Case2)
    } else if cp == 3 * half % p {
        (n, CaseTag::Case3)
    } else {
        (n, CaseTag::Unclassified)
    };
    let expected: Vec<u64> = match tag {
        CaseTag::Case1 => vec![0, 1, 2, 3],
        CaseTag::Case2 => sorted(vec![0, 1, 2, half]),
        CaseTag::Case3 => sorted(vec![0, 1, 2, 3 * half % p]),
        CaseTag::Unclassified => return Ok((out, tag)),
    };
    if out.palette().0 != expected {
        return Ok((out, CaseTag::Unclassified));
    }
    Ok((out, tag))
}

fn sorted(mut v: Vec<u64>) -> Vec<u64> {
    v.sort_unstable();
    v
}

/// Every crossing of a `{0,1,2,3}` coloring is constant, `(1; 0, 2)` or
/// `(2; 1, 3)`, as `(over; unders)`.
pub fn case_one_pattern_holds(d: &Diagram, c: &ArcColoring) -> bool {
    if c.values.iter().any(|&v| v > 3) {
        return false;
    }
    (0..d.crossing_count()).all(|x| {
        let (z, a, b) = crossing_colors(d, c, x);
        let (lo, hi) = (a.min(b), a.max(b));
        (z == a && a == b) || (z == 1 && (lo, hi) == (0, 2)) || (z == 2 && (lo, hi) == (1, 3))
    })
}

/// Re-reads integer labels as a coloring mod `q`.
pub fn revalidate_mod(d: &Diagram, c: &ArcColoring, q: u64) -> Result<ArcColoring> {
    ArcColoring::new(d, q, c.values.iter().map(|v| v % q).collect())
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::coloring::enumerate_colorings;
    use crate::pdcode::{braid_closure, bundled, torus2, BraidLetter as B};

    #[test]
    fn minima() {
        let t5 = torus2(5).unwrap();
        assert_eq!(diagram_min_colors(&t5, 5).unwrap().unwrap().palette_size, 5);
        let k = bundled("5_2").unwrap();
        assert_eq!(diagram_min_colors(&k, 7).unwrap().unwrap().palette_size, 5);
        let t = bundled("3_1").unwrap();
        assert_eq!(diagram_min_colors(&t, 5).unwrap(), None);
        assert_eq!(diagram_min_colors(&t, 3).unwrap().unwrap().palette_size, 3);
        assert_eq!(diagram_min_colors(&t, 9), Err(Error::NotPrime(9)));
    }

    #[test]
    fn five_two_minimum_by_brute_force() {
        let k = bundled("5_2").unwrap();
        let min = enumerate_colorings(&k, 7)
            .unwrap()
            .into_iter()
            .filter(|c| !c.is_trivial())
            .map(|c| c.palette().len())
            .min();
        assert_eq!(min, Some(5));
    }

    pub(crate) fn case_one_link() -> (Diagram, ArcColoring) {
        // Three-component closure found by the braid search; the first and
        // third components link once.
        let w = [
            B::pos(1),
            B::pos(1),
            B::pos(2),
            B::pos(1),
            B::neg(2),
            B::neg(1),
            B::neg(1),
            B::neg(2),
            B::pos(1),
            B::pos(2),
        ];
        let d = braid_closure(3, &w).unwrap();
        let c = ArcColoring::new(&d, 11, vec![1, 3, 1, 0, 2, 0, 2, 1, 3, 3]).unwrap();
        assert!(case_one_pattern_holds(&d, &c));
        (d, c)
    }

    #[test]
    fn case_one_recognized_after_affine_scrambling() {
        let (d, c) = case_one_link();
        for (a, b) in [(1, 4), (3, 7), (10, 0), (6, 5)] {
            let scrambled = affine(&c, a, b).unwrap();
            let (n, tag) = normalize_four_palette(&d, &scrambled).unwrap();
            assert_eq!(tag, CaseTag::Case1);
            assert_eq!(n.palette().0, vec![0, 1, 2, 3]);
            assert!(case_one_pattern_holds(&d, &n));
            for q in [11, 13, 17] {
                assert!(revalidate_mod(&d, &n, q).is_ok());
            }
        }
    }

    #[test]
    fn small_primes_unclassified() {
        let (d, c) = case_one_link();
        let c7 = revalidate_mod(&d, &c, 7).unwrap();
        assert_eq!(normalize_four_palette(&d, &c7).unwrap().1, CaseTag::Unclassified);
    }

    #[test]
    fn palette_size_checked() {
        let k = bundled("5_2").unwrap();
        let c = enumerate_colorings(&k, 7)
            .unwrap()
            .into_iter()
            .find(|c| !c.is_trivial())
            .unwrap();
        assert_eq!(normalize_four_palette(&k, &c), Err(Error::NotFourColors(5)));
    }

    #[test]
    fn half_is_six_mod_eleven() {
        assert_eq!(inverse(2, 11).unwrap(), 6);
    }
}
