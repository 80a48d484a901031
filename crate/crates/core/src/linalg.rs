//! Exact linear algebra over Z and F_p.

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::pdcode::Diagram;

/// One row per crossing, one column per arc: `+2` at the over-arc and `-1`
/// at each under-arc.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoringMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl ColoringMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ColoringMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        ColoringMatrix {
            rows: rows.len(),
            cols,
            data: rows.concat(),
        }
    }

    /// The coloring matrix of `d`; the round unknot gives the 1x1 zero matrix.
    pub fn from_diagram(d: &Diagram) -> Self {
        if d.crossing_count() == 0 {
            return ColoringMatrix::zeros(1, 1);
        }
        let mut m = ColoringMatrix::zeros(d.crossing_count(), d.arc_count());
        for c in 0..d.crossing_count() {
            let (z, y1, y2) = d.crossing_arcs(c);
            *m.at_mut(c, z) += 2;
            *m.at_mut(c, y1) -= 1;
            *m.at_mut(c, y2) -= 1;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> i64 {
        self.data[r * self.cols + c]
    }

    fn at_mut(&mut self, r: usize, c: usize) -> &mut i64 {
        &mut self.data[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[i64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    /// The matrix with row `r` and column `c` removed.
    pub fn minor(&self, r: usize, c: usize) -> ColoringMatrix {
        let mut data = Vec::with_capacity((self.rows - 1) * (self.cols - 1));
        for i in (0..self.rows).filter(|&i| i != r) {
            for j in (0..self.cols).filter(|&j| j != c) {
                data.push(self.at(i, j));
            }
        }
        ColoringMatrix {
            rows: self.rows - 1,
            cols: self.cols - 1,
            data,
        }
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Rejects anything but an odd prime.
pub fn check_odd_prime(p: u64) -> Result<()> {
    if p == 2 || !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    Ok(())
}

pub fn inv_mod(a: u64, p: u64) -> Option<u64> {
    let (mut r0, mut r1) = (p as i128, (a % p) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return None;
    }
    Some(t0.rem_euclid(p as i128) as u64)
}

pub fn reduce(v: i64, p: u64) -> u64 {
    v.rem_euclid(p as i64) as u64
}

/// Reduced row echelon form in place; returns the pivot columns.
fn rref_mod_p(m: &mut [Vec<u64>], cols: usize, p: u64) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(k) = (r..m.len()).find(|&k| m[k][c] != 0) else {
            continue;
        };
        m.swap(r, k);
        let inv = inv_mod(m[r][c], p).expect("p is prime");
        for v in m[r].iter_mut() {
            *v = *v * inv % p;
        }
        for k in 0..m.len() {
            if k != r && m[k][c] != 0 {
                let f = m[k][c];
                for j in 0..cols {
                    m[k][j] = (m[k][j] + (p - f) * m[r][j]) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    pivots
}

/// A basis of the null space of `m` over F_p, itself in reduced row echelon
/// form (leading 1s, leading columns increasing).
pub fn kernel_basis_mod_p(m: &ColoringMatrix, p: u64) -> Result<Vec<Vec<u64>>> {
    check_odd_prime(p)?;
    let cols = m.cols();
    let mut a: Vec<Vec<u64>> = (0..m.rows())
        .map(|r| m.row(r).iter().map(|&v| reduce(v, p)).collect())
        .collect();
    let pivots = rref_mod_p(&mut a, cols, p);
    let mut basis: Vec<Vec<u64>> = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![0u64; cols];
        v[free] = 1;
        for (i, &pc) in pivots.iter().enumerate() {
            v[pc] = (p - a[i][free]) % p;
        }
        basis.push(v);
    }
    rref_mod_p(&mut basis, cols, p);
    Ok(basis)
}

fn bareiss_i128(m: &ColoringMatrix) -> Option<i128> {
    let n = m.rows();
    let mut a: Vec<Vec<i128>> = (0..n).map(|r| m.row(r).iter().map(|&v| v as i128).collect()).collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        if a[k][k] == 0 {
            let Some(s) = (k + 1..n).find(|&s| a[s][k] != 0) else {
                return Some(0);
            };
            a.swap(k, s);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = a[i][j]
                    .checked_mul(a[k][k])?
                    .checked_sub(a[i][k].checked_mul(a[k][j])?)?;
                a[i][j] = t / prev;
            }
        }
        prev = a[k][k];
    }
    Some(sign * a[n - 1][n - 1])
}

fn bareiss_big(m: &ColoringMatrix) -> BigInt {
    let n = m.rows();
    let mut a: Vec<Vec<BigInt>> = (0..n)
        .map(|r| m.row(r).iter().map(|&v| BigInt::from(v)).collect())
        .collect();
    let mut negate = false;
    let mut prev = BigInt::from(1);
    for k in 0..n {
        if a[k][k].is_zero() {
            let Some(s) = (k + 1..n).find(|&s| !a[s][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, s);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = t / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

/// Exact determinant of a square integer matrix by fraction-free
/// elimination, widening to big integers if 128-bit arithmetic overflows.
pub fn determinant(m: &ColoringMatrix) -> BigInt {
    if m.rows() != m.cols() {
        return BigInt::zero();
    }
    if m.rows() == 0 {
        return BigInt::from(1);
    }
    match bareiss_i128(m) {
        Some(d) => BigInt::from(d),
        None => bareiss_big(m),
    }
}

/// `|det|` of the minor with row `r` and column `c` deleted.
pub fn first_minor_determinant(m: &ColoringMatrix, r: usize, c: usize) -> Result<BigUint> {
    if m.rows() < 1 || m.cols() < 1 || r >= m.rows() || c >= m.cols() {
        return Err(Error::DegenerateMatrix);
    }
    Ok(determinant(&m.minor(r, c)).abs().to_biguint().expect("non-negative"))
}

/// The knot determinant: `|det|` of the first minor deleting row 0 and
/// column 0.
pub fn knot_determinant(m: &ColoringMatrix) -> Result<BigUint> {
    first_minor_determinant(m, 0, 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pdcode::{bundled, torus2};

    fn brute_kernel_count(m: &ColoringMatrix, p: u64) -> usize {
        let n = m.cols();
        let total = (p as usize).pow(n as u32);
        (0..total)
            .filter(|&code| {
                let mut v = vec![0i64; n];
                let mut x = code;
                for slot in v.iter_mut() {
                    *slot = (x % p as usize) as i64;
                    x /= p as usize;
                }
                (0..m.rows()).all(|r| {
                    let s: i64 = m.row(r).iter().zip(&v).map(|(a, b)| a * b).sum();
                    reduce(s, p) == 0
                })
            })
            .count()
    }

    #[test]
    fn trefoil_kernels_match_brute_force() {
        let m = ColoringMatrix::from_diagram(&bundled("3_1").unwrap());
        assert_eq!(brute_kernel_count(&m, 3), 9);
        assert_eq!(kernel_basis_mod_p(&m, 3).unwrap().len(), 2);
        assert_eq!(brute_kernel_count(&m, 5), 5);
        assert_eq!(kernel_basis_mod_p(&m, 5).unwrap().len(), 1);
    }

    #[test]
    fn unknot_kernel() {
        let m = ColoringMatrix::from_diagram(&Diagram::unknot());
        assert_eq!(m, ColoringMatrix::zeros(1, 1));
        assert_eq!(kernel_basis_mod_p(&m, 7).unwrap(), vec![vec![1]]);
        assert_eq!(knot_determinant(&m).unwrap(), BigUint::from(1u32));
    }

    #[test]
    fn rejects_non_primes() {
        let m = ColoringMatrix::zeros(1, 1);
        assert_eq!(kernel_basis_mod_p(&m, 9), Err(Error::NotPrime(9)));
        assert_eq!(kernel_basis_mod_p(&m, 2), Err(Error::NotPrime(2)));
        assert_eq!(kernel_basis_mod_p(&m, 1), Err(Error::NotPrime(1)));
    }

    #[test]
    fn basis_is_reduced_and_contains_constants() {
        let m = ColoringMatrix::from_diagram(&bundled("5_2").unwrap());
        let b = kernel_basis_mod_p(&m, 7).unwrap();
        assert_eq!(b.len(), 2);
        let leads: Vec<usize> = b.iter().map(|v| v.iter().position(|&x| x != 0).unwrap()).collect();
        assert!(leads.windows(2).all(|w| w[0] < w[1]));
        for (i, &l) in leads.iter().enumerate() {
            assert_eq!(b[i][l], 1);
            for (k, v) in b.iter().enumerate() {
                if k != i {
                    assert_eq!(v[l], 0);
                }
            }
        }
        // leading 1s in a reduced basis make the all-ones vector its sum
        let mut ones = vec![0u64; m.cols()];
        for v in &b {
            for (j, x) in v.iter().enumerate() {
                ones[j] = (ones[j] + x) % 7;
            }
        }
        assert!(ones.iter().all(|&x| x == 1));
    }

    #[test]
    fn determinants() {
        let det = |name: &str| {
            let d = bundled(name).unwrap();
            knot_determinant(&ColoringMatrix::from_diagram(&d)).unwrap()
        };
        let expect = [
            ("3_1", 3u32),
            ("4_1", 5),
            ("5_1", 5),
            ("5_2", 7),
            ("6_1", 9),
            ("6_2", 11),
            ("7_1", 7),
            ("torus2_4", 4),
            ("torus2_2", 2),
        ];
        for (name, v) in expect {
            assert_eq!(det(name), BigUint::from(v), "{name}");
        }
        let t5 = knot_determinant(&ColoringMatrix::from_diagram(&torus2(5).unwrap())).unwrap();
        assert_eq!(t5, BigUint::from(5u32));
    }

    #[test]
    fn big_integer_fallback_agrees() {
        // Entries large enough that 128-bit Bareiss overflows.
        let k = 1i64 << 40;
        let rows: Vec<Vec<i64>> = (0..6)
            .map(|i| (0..6).map(|j| if i == j { k } else { (i * 7 + j) as i64 }).collect())
            .collect();
        let m = ColoringMatrix::from_rows(&rows);
        assert!(bareiss_i128(&m).is_none());
        let big = bareiss_big(&m);
        // dominated by the diagonal product
        let diag = BigInt::from(k).pow(6);
        let rel = (&big - &diag).abs() * BigInt::from(1000) / &diag;
        assert!(rel.is_zero(), "{big} vs {diag}");
        let small = ColoringMatrix::from_rows(&[vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]]);
        assert_eq!(bareiss_big(&small), BigInt::from(bareiss_i128(&small).unwrap()));
        assert_eq!(determinant(&small), BigInt::from(4));
    }

    #[test]
    fn non_square_and_empty() {
        assert_eq!(determinant(&ColoringMatrix::zeros(2, 3)), BigInt::zero());
        assert_eq!(
            knot_determinant(&ColoringMatrix::zeros(0, 0)),
            Err(Error::DegenerateMatrix)
        );
    }

    #[test]
    fn inverses() {
        for p in [3u64, 5, 7, 11, 13] {
            for a in 1..p {
                assert_eq!(a * inv_mod(a, p).unwrap() % p, 1);
            }
        }
        assert_eq!(inv_mod(6, 9), None);
    }
}
