use serde::{Deserialize, Serialize};

use crate::cocycle::phi0;
use crate::error::{Error, Result};
use crate::linalg::check_odd_prime;
use crate::pdcode::Diagram;

/// How non-splitness is known.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Nonsplit {
    /// One component: a knot is never split.
    Knot,
    /// Asserted by the caller.
    Asserted,
    /// Neither; the bound is withheld.
    Unverified,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub p: u64,
    pub phi0: u128,
    pub floor: u128,
    pub nonsplit: Nonsplit,
    /// Pairwise linking numbers `(a, b, lk)`, evidence for links.
    pub linking_numbers: Vec<(usize, usize, i32)>,
    pub bound: Option<String>,
}

pub const BOUND_TEXT: &str = "mincol_q >= 5 for all primes q > 7";

/// If `Φ_p⁰ = p²` for a non-split diagram and a prime `p > 7`, no diagram
/// of the link carries a 4-color coloring for any prime `q > 7`.
pub fn theorem_lower_bound(d: &Diagram, p: u64, nonsplit_asserted: bool) -> Result<BoundReport> {
    check_odd_prime(p)?;
    if p <= 7 {
        return Err(Error::PrimeTooSmall(p));
    }
    let zeros = phi0(d, p)?;
    let floor = (p as u128) * (p as u128);
    let nonsplit = if d.components().len() == 1 {
        Nonsplit::Knot
    } else if nonsplit_asserted {
        Nonsplit::Asserted
    } else {
        Nonsplit::Unverified
    };
    let bound = (zeros == floor && nonsplit != Nonsplit::Unverified).then(|| BOUND_TEXT.to_string());
    Ok(BoundReport {
        p,
        phi0: zeros,
        floor,
        nonsplit,
        linking_numbers: d.linking_numbers(),
        bound,
    })
}
