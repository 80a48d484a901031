//! The Mochizuki 3-cocycle of the dihedral quandle and its state sum over
//! shadow colorings.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coloring::{colorings, region_parity, shadow_extend, ArcColoring, ShadowColoring};
use crate::error::{Error, Result};
use crate::linalg::check_odd_prime;
use crate::pdcode::Diagram;

fn pow_mod(mut b: u128, mut e: u64, m: u128) -> u128 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

/// `[2z^p - y^p - (2z - y)^p] / p mod p`, evaluated mod `p^2`.
fn bracket_over_p(p: u64, y: u64, z: u64) -> u64 {
    let m = (p as u128) * (p as u128);
    let w = (2 * z as i128 - y as i128).rem_euclid(m as i128) as u128;
    let b = (2 * pow_mod(z as u128, p, m) + 2 * m - pow_mod(y as u128, p, m) - pow_mod(w, p, m)) % m;
    assert_eq!(b % p as u128, 0, "bracket not divisible by p");
    (b / p as u128) as u64
}

/// `φ(x, y, z) = (x - y)[(2z^p - y^p) - (2z - y)^p]/p` in `Z_p`.
pub fn mochizuki_phi(p: u64, x: u64, y: u64, z: u64) -> Result<u64> {
    check_odd_prime(p)?;
    let (x, y, z) = (x % p, y % p, z % p);
    Ok((x + p - y) % p * bracket_over_p(p, y, z) % p)
}

/// Memoized φ for one prime: a full `p^3` table up to 97, otherwise the
/// `p^2` table of the bracket.
#[derive(Clone, Debug)]
pub struct PhiTable {
    p: u64,
    full: Option<Vec<u16>>,
    bracket: Vec<u64>,
}

impl PhiTable {
    pub fn new(p: u64) -> Result<Self> {
        check_odd_prime(p)?;
        let n = p as usize;
        let mut bracket = vec![0u64; n * n];
        for y in 0..p {
            for z in 0..p {
                bracket[y as usize * n + z as usize] = bracket_over_p(p, y, z);
            }
        }
        let full = (p <= 97).then(|| {
            let mut t = vec![0u16; n * n * n];
            for x in 0..n {
                for y in 0..n {
                    for z in 0..n {
                        let g = bracket[y * n + z];
                        t[(x * n + y) * n + z] = ((x + n - y) as u64 % p * g % p) as u16;
                    }
                }
            }
            t
        });
        Ok(PhiTable { p, full, bracket })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn get(&self, x: u64, y: u64, z: u64) -> u64 {
        let n = self.p as usize;
        match &self.full {
            Some(t) => t[(x as usize * n + y as usize) * n + z as usize] as u64,
            None => (x + self.p - y) % self.p * self.bracket[y as usize * n + z as usize] % self.p,
        }
    }
}

/// A source region (the sector between slots `sector` and `sector + 1`) and
/// a source under-arc (the under half at slot `under_slot`, 0 or 2).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LocalChoice {
    pub sector: usize,
    pub under_slot: usize,
}

impl LocalChoice {
    pub fn all() -> [LocalChoice; 8] {
        let mut out = [LocalChoice {
            sector: 0,
            under_slot: 0,
        }; 8];
        for (i, c) in out.iter_mut().enumerate() {
            *c = LocalChoice {
                sector: i / 2,
                under_slot: 2 * (i % 2),
            };
        }
        out
    }

    /// The under half bounding the sector: sectors 0 and 3 touch slot 0,
    /// sectors 1 and 2 touch slot 2.
    pub fn adjacent(sector: usize) -> LocalChoice {
        LocalChoice {
            sector,
            under_slot: if sector == 1 || sector == 2 { 2 } else { 0 },
        }
    }

    pub fn is_adjacent(&self) -> bool {
        *self == LocalChoice::adjacent(self.sector)
    }

    /// Normals pointing out of the sector across the over line and the
    /// under line: `(n_z, n_y)` is positively oriented in even sectors.
    pub fn sign(&self) -> i64 {
        if self.sector % 2 == 0 {
            1
        } else {
            -1
        }
    }

    fn validate(&self, crossing: usize) -> Result<()> {
        if self.sector >= 4 || (self.under_slot != 0 && self.under_slot != 2) {
            return Err(Error::BadChoice { crossing });
        }
        Ok(())
    }
}

/// The lowest-indexed region at `c`, with the under-arc bounding it.
pub fn canonical_choice(d: &Diagram, c: usize) -> LocalChoice {
    let t = (0..4)
        .min_by_key(|&t| (d.sector_region(c, t), t))
        .expect("four sectors");
    LocalChoice::adjacent(t)
}

fn weight(d: &Diagram, s: &ShadowColoring, c: usize, ch: LocalChoice, phi: &PhiTable) -> u64 {
    let p = phi.p();
    let x = d.crossing(c);
    let region = d.sector_region(c, ch.sector);
    let xv = s.regions[region];
    let yv = s.base.values[d.arc_of(x.slots[ch.under_slot])];
    let zv = s.base.values[d.arc_of(x.slots[1])];
    let w = phi.get(xv, yv, zv);
    if ch.sign() > 0 {
        w
    } else {
        (p - w) % p
    }
}

/// `ε φ(x, y, z)` at crossing `c` for the given choice.
pub fn crossing_weight(d: &Diagram, s: &ShadowColoring, c: usize, choice: LocalChoice, phi: &PhiTable) -> Result<u64> {
    if c >= d.crossing_count() {
        return Err(Error::BadChoice { crossing: c });
    }
    choice.validate(c)?;
    Ok(weight(d, s, c, choice, phi))
}

/// Weights under all eight choices, in [`LocalChoice::all`] order.
pub fn all_choice_weights(d: &Diagram, s: &ShadowColoring, c: usize, phi: &PhiTable) -> [u64; 8] {
    LocalChoice::all().map(|ch| weight(d, s, c, ch, phi))
}

/// Sum of canonical weights over all crossings.
pub fn contribution(d: &Diagram, s: &ShadowColoring, phi: &PhiTable) -> u64 {
    let p = phi.p();
    (0..d.crossing_count())
        .map(|c| weight(d, s, c, canonical_choice(d, c), phi))
        .fold(0, |a, w| (a + w) % p)
}

/// Precomputed per-crossing data for fast state sums.
struct Sweep {
    choices: Vec<(usize, usize, usize, bool)>,
    parity: Vec<bool>,
}

impl Sweep {
    fn new(d: &Diagram) -> Self {
        let choices = (0..d.crossing_count())
            .map(|c| {
                let ch = canonical_choice(d, c);
                let x = d.crossing(c);
                (
                    d.sector_region(c, ch.sector),
                    d.arc_of(x.slots[ch.under_slot]),
                    d.arc_of(x.slots[1]),
                    ch.sign() > 0,
                )
            })
            .collect();
        Sweep {
            choices,
            parity: region_parity(d),
        }
    }

    /// Contributions of `c` for base colors `0..p` on region 0.
    fn profile(&self, d: &Diagram, c: &ArcColoring, phi: &PhiTable) -> Vec<u64> {
        let p = phi.p();
        let s0 = shadow_extend(d, c, 0, 0).expect("colorings from the kernel are valid");
        (0..p)
            .map(|t| {
                let mut sum = 0;
                for &(r, y, z, pos) in &self.choices {
                    let x = if self.parity[r] {
                        (s0.regions[r] + t) % p
                    } else {
                        (s0.regions[r] + p - t) % p
                    };
                    let w = phi.get(x, c.values[y], c.values[z]);
                    sum += if pos { w } else { p - w };
                }
                sum % p
            })
            .collect()
    }
}

/// Contributions of one arc coloring for each base color `0..p` of region 0.
pub fn contribution_profile(d: &Diagram, c: &ArcColoring, phi: &PhiTable) -> Vec<u64> {
    Sweep::new(d).profile(d, c, phi)
}

/// The multiset `Φ_p` as a histogram of residues.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantMultiset {
    pub p: u64,
    pub total: u128,
    pub histogram: BTreeMap<u64, u128>,
}

impl InvariantMultiset {
    pub fn zeros(&self) -> u128 {
        self.histogram.get(&0).copied().unwrap_or(0)
    }

    /// Residues with nonzero multiplicity, other than 0.
    pub fn nonzero_support(&self) -> Vec<u64> {
        self.histogram.keys().copied().filter(|&k| k != 0).collect()
    }

    fn add(&mut self, v: u64) {
        *self.histogram.entry(v).or_default() += 1;
        self.total += 1;
    }

    fn merge(mut self, other: InvariantMultiset) -> InvariantMultiset {
        for (k, v) in other.histogram {
            *self.histogram.entry(k).or_default() += v;
        }
        self.total += other.total;
        self
    }

    fn empty(p: u64) -> Self {
        InvariantMultiset {
            p,
            total: 0,
            histogram: BTreeMap::new(),
        }
    }
}

pub fn invariant(d: &Diagram, p: u64) -> Result<InvariantMultiset> {
    invariant_with_threads(d, p, 1)
}

/// [`invariant`] with the enumeration split over `threads` workers by the
/// first kernel coordinate.
pub fn invariant_with_threads(d: &Diagram, p: u64, threads: usize) -> Result<InvariantMultiset> {
    let phi = PhiTable::new(p)?;
    let sweep = Sweep::new(d);
    let all = colorings(d, p)?;
    let dim = all.kernel_dim();
    let basis = all.basis().to_vec();
    let job = |first: u64| -> InvariantMultiset {
        let mut h = InvariantMultiset::empty(p);
        let rest = dim.saturating_sub(1);
        let count = (p as u128).pow(rest as u32);
        let mut coeffs = vec![0u64; dim];
        if dim > 0 {
            coeffs[0] = first;
        }
        let sub = crate::coloring::Colorings::from_basis(p, basis.clone());
        for k in 0..count {
            let mut x = k;
            for i in (1..dim).rev() {
                coeffs[i] = (x % p as u128) as u64;
                x /= p as u128;
            }
            let c = sub.combine(&coeffs);
            for v in sweep.profile(d, &c, &phi) {
                h.add(v);
            }
        }
        h
    };
    let firsts: Vec<u64> = if dim == 0 { vec![0] } else { (0..p).collect() };
    let result = if threads <= 1 {
        firsts
            .into_iter()
            .map(job)
            .fold(InvariantMultiset::empty(p), InvariantMultiset::merge)
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| Error::Io(e.to_string()))?;
        pool.install(|| {
            firsts
                .into_par_iter()
                .map(job)
                .reduce(|| InvariantMultiset::empty(p), InvariantMultiset::merge)
        })
    };
    Ok(result)
}

/// Multiplicity of 0 in `Φ_p`.
pub fn phi0(d: &Diagram, p: u64) -> Result<u128> {
    Ok(invariant(d, p)?.zeros())
}

/// Outcome of the exhaustive choice check over every shadow coloring.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChoiceReport {
    pub p: u64,
    pub crossings_checked: u64,
    /// Crossings where the four source regions with their bounding
    /// under-arcs disagree.
    pub adjacent_disagreements: u64,
    /// Crossings where the eight literal choices disagree.
    pub all_choice_disagreements: u64,
}

impl ChoiceReport {
    pub fn adjacent_ok(&self) -> bool {
        self.adjacent_disagreements == 0
    }

    pub fn all_choices_ok(&self) -> bool {
        self.all_choice_disagreements == 0
    }
}

pub fn verify_choices(d: &Diagram, p: u64) -> Result<ChoiceReport> {
    let phi = PhiTable::new(p)?;
    let mut rep = ChoiceReport {
        p,
        ..Default::default()
    };
    for c in colorings(d, p)? {
        for t in 0..p {
            let s = shadow_extend(d, &c, 0, t)?;
            for x in 0..d.crossing_count() {
                let w = all_choice_weights(d, &s, x, &phi);
                rep.crossings_checked += 1;
                let adj: Vec<u64> = LocalChoice::all()
                    .iter()
                    .zip(w)
                    .filter(|(ch, _)| ch.is_adjacent())
                    .map(|(_, v)| v)
                    .collect();
                if adj.iter().any(|&v| v != adj[0]) {
                    rep.adjacent_disagreements += 1;
                }
                if w.iter().any(|&v| v != w[0]) {
                    rep.all_choice_disagreements += 1;
                }
            }
        }
    }
    Ok(rep)
}

/// Exhaustive check of the degeneracies and the 3-cocycle identity
/// `φ(x,z,w) - φ(x*y,z,w) - φ(x,y,w) + φ(x*z,y*z,w) + φ(x,y,z) - φ(x*w,y*w,z*w) = 0`
/// with `x*y = 2y - x`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CocycleReport {
    pub p: u64,
    pub quadruples: u64,
    pub identity_failures: u64,
    pub degeneracy_failures: u64,
}

impl CocycleReport {
    pub fn passed(&self) -> bool {
        self.identity_failures == 0 && self.degeneracy_failures == 0
    }
}

pub fn check_cocycle_condition(p: u64) -> Result<CocycleReport> {
    let phi = PhiTable::new(p)?;
    let op = |a: u64, b: u64| (2 * b + p - a) % p;
    let mut rep = CocycleReport {
        p,
        quadruples: 0,
        identity_failures: 0,
        degeneracy_failures: 0,
    };
    for x in 0..p {
        for y in 0..p {
            if phi.get(x, y, y) != 0 || phi.get(x, x, y) != 0 {
                rep.degeneracy_failures += 1;
            }
            for z in 0..p {
                for w in 0..p {
                    rep.quadruples += 1;
                    let lhs = phi.get(x, z, w)
                        + (p - phi.get(op(x, y), z, w))
                        + (p - phi.get(x, y, w))
                        + phi.get(op(x, z), op(y, z), w)
                        + phi.get(x, y, z)
                        + (p - phi.get(op(x, w), op(y, w), op(z, w)));
                    if lhs % p != 0 {
                        rep.identity_failures += 1;
                    }
                }
            }
        }
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::enumerate_colorings;
    use crate::pdcode::{braid_closure, bundled, legal_moves, BraidLetter as B, MoveKind};

    fn phi_big(p: u64, x: u64, y: u64, z: u64) -> u64 {
        use num_bigint::BigInt;
        let (pb, yb, zb) = (BigInt::from(p), BigInt::from(y), BigInt::from(z));
        let e = p as u32;
        let br = BigInt::from(2) * zb.pow(e) - yb.pow(e) - (BigInt::from(2) * &zb - &yb).pow(e);
        assert_eq!(&br % &pb, BigInt::from(0));
        let v = (BigInt::from(x) - yb) * (br / &pb);
        let r = ((v % &pb) + &pb) % &pb;
        r.try_into().unwrap()
    }

    #[test]
    fn phi_matches_big_integer_evaluation() {
        for p in [3u64, 5, 7, 11] {
            for x in 0..p {
                for y in 0..p {
                    for z in 0..p {
                        assert_eq!(mochizuki_phi(p, x, y, z).unwrap(), phi_big(p, x, y, z));
                    }
                }
            }
        }
    }

    #[test]
    fn phi_values() {
        assert_eq!(mochizuki_phi(3, 0, 1, 2).unwrap(), 1);
        assert_eq!(mochizuki_phi(5, 1, 1, 3).unwrap(), 0);
        assert_eq!(mochizuki_phi(4, 1, 1, 3), Err(Error::NotPrime(4)));
        let t = PhiTable::new(101).unwrap();
        assert_eq!(t.get(3, 5, 8), mochizuki_phi(101, 3, 5, 8).unwrap());
    }

    #[test]
    fn cocycle_condition_small_primes() {
        for p in [3, 5, 7] {
            let r = check_cocycle_condition(p).unwrap();
            assert!(r.passed(), "{r:?}");
            assert_eq!(r.quadruples, p.pow(4));
        }
    }

    #[test]
    fn adjacent_choices_agree() {
        for name in ["3_1", "4_1", "5_2"] {
            let d = bundled(name).unwrap();
            for p in [3, 5, 7] {
                let r = verify_choices(&d, p).unwrap();
                assert!(r.adjacent_ok(), "{name} p={p}: {r:?}");
            }
        }
    }

    #[test]
    fn bad_choices_rejected() {
        let d = bundled("3_1").unwrap();
        let c = ArcColoring::constant(&d, 3, 0);
        let s = shadow_extend(&d, &c, 0, 0).unwrap();
        let phi = PhiTable::new(3).unwrap();
        let bad = LocalChoice {
            sector: 4,
            under_slot: 0,
        };
        assert_eq!(
            crossing_weight(&d, &s, 0, bad, &phi),
            Err(Error::BadChoice { crossing: 0 })
        );
        let bad = LocalChoice {
            sector: 0,
            under_slot: 1,
        };
        assert_eq!(
            crossing_weight(&d, &s, 1, bad, &phi),
            Err(Error::BadChoice { crossing: 1 })
        );
    }

    #[test]
    fn five_two_at_seven() {
        let d = bundled("5_2").unwrap();
        let inv = invariant(&d, 7).unwrap();
        assert_eq!(inv.total, 343);
        assert_eq!(inv.zeros(), 49);
        assert!(inv.nonzero_support().iter().all(|v| [1, 2, 4].contains(v)));
        assert_eq!(invariant_with_threads(&d, 7, 4).unwrap(), inv);
    }

    #[test]
    fn profile_matches_direct_sum() {
        let d = bundled("5_2").unwrap();
        let phi = PhiTable::new(7).unwrap();
        for c in enumerate_colorings(&d, 7).unwrap() {
            let prof = contribution_profile(&d, &c, &phi);
            for t in 0..7 {
                let s = shadow_extend(&d, &c, 0, t).unwrap();
                assert_eq!(prof[t as usize], contribution(&d, &s, &phi));
            }
        }
    }

    #[test]
    fn unknot_and_small_cases() {
        let o = Diagram::unknot();
        for p in [3, 5, 7] {
            let inv = invariant(&o, p).unwrap();
            assert_eq!(inv.histogram, BTreeMap::from([(0, (p * p) as u128)]));
        }
        let t = bundled("3_1").unwrap();
        let inv = invariant(&t, 5).unwrap();
        assert_eq!(inv.histogram, BTreeMap::from([(0, 25)]));
    }

    #[test]
    fn trivial_colorings_contribute_zero() {
        let d = bundled("6_1").unwrap();
        let phi = PhiTable::new(5).unwrap();
        for v in 0..5 {
            let c = ArcColoring::constant(&d, 5, v);
            assert!(contribution_profile(&d, &c, &phi).iter().all(|&w| w == 0));
            let s = shadow_extend(&d, &c, 0, 2).unwrap();
            for x in 0..d.crossing_count() {
                assert_eq!(all_choice_weights(&d, &s, x, &phi), [0; 8]);
            }
        }
    }

    #[test]
    fn third_move_preserves_invariant() {
        let d = braid_closure(3, &[B::pos(1), B::pos(2), B::pos(1), B::pos(2)]).unwrap();
        for p in [3, 5, 7] {
            let before = invariant(&d, p).unwrap();
            for m in legal_moves(&d).into_iter().filter(|m| m.kind() == MoveKind::R3) {
                let (e, _) = d.apply_move(&m).unwrap();
                assert_eq!(invariant(&e, p).unwrap(), before, "p={p} {m:?}");
            }
        }
    }

    #[test]
    fn orientation_reversal_preserves_invariant() {
        let d = bundled("torus2_6").unwrap();
        for p in [3, 5] {
            let before = invariant(&d, p).unwrap();
            for subset in [vec![0], vec![1], vec![0, 1]] {
                assert_eq!(invariant(&d.reverse_components(&subset), p).unwrap(), before);
            }
        }
    }
}
