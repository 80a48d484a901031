//! Fox colorings, palettes, affine transforms and region (shadow) colorings.

use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{check_odd_prime, inv_mod, kernel_basis_mod_p, ColoringMatrix};
use crate::pdcode::{Diagram, Side};

/// Residues mod `p` on the arcs of a diagram, indexed by arc.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ArcColoring {
    pub p: u64,
    pub values: Vec<u64>,
}

/// The sorted set of colors a coloring uses.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Palette(pub Vec<u64>);

impl Palette {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, c: u64) -> bool {
        self.0.binary_search(&c).is_ok()
    }
}

/// Checks the crossing relation `2z - y1 - y2 = 0 mod p` at every crossing.
pub fn check_relation(d: &Diagram, p: u64, values: &[u64]) -> Result<()> {
    let expected = d.arc_count();
    if values.len() != expected {
        return Err(Error::InconsistentColoring(format!(
            "{} values for {expected} arcs",
            values.len()
        )));
    }
    if let Some(v) = values.iter().find(|&&v| v >= p) {
        return Err(Error::InconsistentColoring(format!("{v} is not a residue mod {p}")));
    }
    for c in 0..d.crossing_count() {
        let (z, y1, y2) = d.crossing_arcs(c);
        if (2 * values[z] + 2 * p - values[y1] - values[y2]) % p != 0 {
            return Err(Error::InconsistentColoring(format!("relation fails at crossing {c}")));
        }
    }
    Ok(())
}

impl ArcColoring {
    /// Validates `values` against `d`.
    pub fn new(d: &Diagram, p: u64, values: Vec<u64>) -> Result<Self> {
        check_odd_prime(p)?;
        check_relation(d, p, &values)?;
        Ok(ArcColoring { p, values })
    }

    pub fn constant(d: &Diagram, p: u64, color: u64) -> Self {
        ArcColoring {
            p,
            values: vec![color % p; d.arc_count()],
        }
    }

    pub fn is_valid_on(&self, d: &Diagram) -> bool {
        check_relation(d, self.p, &self.values).is_ok()
    }

    pub fn color(&self, arc: usize) -> u64 {
        self.values[arc]
    }

    pub fn palette(&self) -> Palette {
        let set: BTreeSet<u64> = self.values.iter().copied().collect();
        Palette(set.into_iter().collect())
    }

    pub fn is_trivial(&self) -> bool {
        self.values.windows(2).all(|w| w[0] == w[1])
    }
}

/// `a·c + b` arcwise.
pub fn affine(c: &ArcColoring, a: u64, b: u64) -> Result<ArcColoring> {
    let p = c.p;
    if a % p == 0 {
        return Err(Error::ZeroScale(a));
    }
    Ok(ArcColoring {
        p,
        values: c.values.iter().map(|&v| (a % p * v + b % p) % p).collect(),
    })
}

/// Multiplicative inverse of a nonzero residue.
pub fn inverse(a: u64, p: u64) -> Result<u64> {
    inv_mod(a, p).ok_or(Error::ZeroScale(a))
}

/// Lazy enumeration of all colorings: the coefficient vectors over the
/// kernel basis in lexicographic order.
pub struct Colorings {
    p: u64,
    basis: Vec<Vec<u64>>,
    coeffs: Vec<u64>,
    done: bool,
}

impl Colorings {
    pub fn from_basis(p: u64, basis: Vec<Vec<u64>>) -> Self {
        let dim = basis.len();
        Colorings {
            p,
            basis,
            coeffs: vec![0; dim],
            done: false,
        }
    }

    pub fn kernel_dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<u64>] {
        &self.basis
    }

    /// Number of colorings, `p^dim`.
    pub fn size(&self) -> u128 {
        (self.p as u128).pow(self.basis.len() as u32)
    }

    pub fn combine(&self, coeffs: &[u64]) -> ArcColoring {
        let n = self.basis.first().map_or(0, Vec::len);
        let mut values = vec![0u64; n];
        for (k, b) in coeffs.iter().zip(&self.basis) {
            if *k != 0 {
                for (v, x) in values.iter_mut().zip(b) {
                    *v = (*v + k * x) % self.p;
                }
            }
        }
        ArcColoring { p: self.p, values }
    }
}

impl Iterator for Colorings {
    type Item = ArcColoring;

    fn next(&mut self) -> Option<ArcColoring> {
        if self.done {
            return None;
        }
        let out = self.combine(&self.coeffs);
        let mut i = self.coeffs.len();
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            self.coeffs[i] += 1;
            if self.coeffs[i] < self.p {
                break;
            }
            self.coeffs[i] = 0;
        }
        Some(out)
    }
}

pub fn colorings(d: &Diagram, p: u64) -> Result<Colorings> {
    let basis = kernel_basis_mod_p(&ColoringMatrix::from_diagram(d), p)?;
    Ok(Colorings::from_basis(p, basis))
}

pub fn enumerate_colorings(d: &Diagram, p: u64) -> Result<Vec<ArcColoring>> {
    Ok(colorings(d, p)?.collect())
}

/// An arc coloring with residues on all regions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShadowColoring {
    pub base: ArcColoring,
    pub regions: Vec<u64>,
}

impl ShadowColoring {
    pub fn p(&self) -> u64 {
        self.base.p
    }

    pub fn region(&self, r: usize) -> u64 {
        self.regions[r]
    }

    /// Checks `x' = 2y - x` across every edge.
    pub fn check(&self, d: &Diagram) -> Result<()> {
        let p = self.p();
        for e in 0..d.edge_count() {
            let y = self.base.values[d.arc_of(e)];
            let l = self.regions[d.region_of(e, Side::Left)];
            let r = self.regions[d.region_of(e, Side::Right)];
            if (l + r) % p != 2 * y % p {
                return Err(Error::InconsistentColoring(format!(
                    "regions across edge {e} violate the region rule"
                )));
            }
        }
        Ok(())
    }
}

/// Propagates region colors from `base_region` by breadth-first search.
pub fn shadow_extend(d: &Diagram, c: &ArcColoring, base_region: usize, base_color: u64) -> Result<ShadowColoring> {
    let p = c.p;
    let n = d.region_count();
    if base_region >= n {
        return Err(Error::InconsistentColoring(format!("no region {base_region}")));
    }
    if c.values.len() != d.arc_count() {
        return Err(Error::InconsistentColoring("coloring does not fit diagram".into()));
    }
    let mut regions = vec![u64::MAX; n];
    regions[base_region] = base_color % p;
    let mut queue = VecDeque::from([base_region]);
    while let Some(r) = queue.pop_front() {
        let x = regions[r];
        for &(e, side) in &d.faces()[r].boundary {
            let y = c.values[d.arc_of(e)];
            let other = d.region_of(e, side.flip());
            let x2 = (2 * y + p - x) % p;
            if regions[other] == u64::MAX {
                regions[other] = x2;
                queue.push_back(other);
            } else if regions[other] != x2 {
                return Err(Error::InconsistentColoring(format!(
                    "region {other} reached with two colors"
                )));
            }
        }
    }
    let s = ShadowColoring {
        base: c.clone(),
        regions,
    };
    s.check(d)?;
    Ok(s)
}

/// Checkerboard parity of regions: `true` for regions in the class of
/// region 0. Shifting the base color by `t` shifts these regions by `t`
/// and the others by `-t`.
pub fn region_parity(d: &Diagram) -> Vec<bool> {
    let n = d.region_count();
    let mut parity: Vec<Option<bool>> = vec![None; n];
    parity[0] = Some(true);
    let mut queue = VecDeque::from([0usize]);
    while let Some(r) = queue.pop_front() {
        let me = parity[r].expect("visited");
        for &(e, side) in &d.faces()[r].boundary {
            let o = d.region_of(e, side.flip());
            if parity[o].is_none() {
                parity[o] = Some(!me);
                queue.push_back(o);
            }
        }
    }
    parity.into_iter().map(|x| x.expect("connected dual")).collect()
}
