//! Exact dense linear algebra over fields, plus integer Hermite normal form.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::cyclo::CycloElem;
use crate::error::{Error, Result};

/// Field operations needed by the elimination routines.
pub trait Scalar: Clone + PartialEq {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero_s(&self) -> bool;
    fn add_s(&self, o: &Self) -> Self;
    fn sub_s(&self, o: &Self) -> Self;
    fn mul_s(&self, o: &Self) -> Self;
    fn div_s(&self, o: &Self) -> Self;
    fn neg_s(&self) -> Self;
}

impl Scalar for BigRational {
    fn zero_like(&self) -> Self {
        BigRational::zero()
    }
    fn one_like(&self) -> Self {
        BigRational::one()
    }
    fn is_zero_s(&self) -> bool {
        self.is_zero()
    }
    fn add_s(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_s(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_s(&self, o: &Self) -> Self {
        self * o
    }
    fn div_s(&self, o: &Self) -> Self {
        self / o
    }
    fn neg_s(&self) -> Self {
        -self
    }
}

impl Scalar for CycloElem {
    fn zero_like(&self) -> Self {
        CycloElem::zero(self.field())
    }
    fn one_like(&self) -> Self {
        CycloElem::from_int(self.field(), 1)
    }
    fn is_zero_s(&self) -> bool {
        self.is_zero()
    }
    fn add_s(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_s(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_s(&self, o: &Self) -> Self {
        self * o
    }
    fn div_s(&self, o: &Self) -> Self {
        self / o
    }
    fn neg_s(&self) -> Self {
        -self
    }
}

/// An element of the prime field `F_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fp {
    pub v: u64,
    pub p: u64,
}

impl Fp {
    pub fn new(v: i64, p: u64) -> Fp {
        Fp { v: v.rem_euclid(p as i64) as u64, p }
    }

    pub fn inv(&self) -> Fp {
        assert!(self.v != 0, "inverse of zero in F_p");
        let mut r = 1u64;
        let mut b = self.v;
        let mut e = self.p - 2;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % self.p;
            }
            b = b * b % self.p;
            e >>= 1;
        }
        Fp { v: r, p: self.p }
    }
}

impl Scalar for Fp {
    fn zero_like(&self) -> Self {
        Fp { v: 0, p: self.p }
    }
    fn one_like(&self) -> Self {
        Fp { v: 1, p: self.p }
    }
    fn is_zero_s(&self) -> bool {
        self.v == 0
    }
    fn add_s(&self, o: &Self) -> Self {
        Fp { v: (self.v + o.v) % self.p, p: self.p }
    }
    fn sub_s(&self, o: &Self) -> Self {
        Fp { v: (self.v + self.p - o.v) % self.p, p: self.p }
    }
    fn mul_s(&self, o: &Self) -> Self {
        Fp { v: self.v * o.v % self.p, p: self.p }
    }
    fn div_s(&self, o: &Self) -> Self {
        self.mul_s(&o.inv())
    }
    fn neg_s(&self) -> Self {
        Fp { v: (self.p - self.v) % self.p, p: self.p }
    }
}

pub type Matrix<T> = Vec<Vec<T>>;

fn check_square<T>(m: &Matrix<T>) -> Result<usize> {
    let n = m.len();
    if m.iter().any(|r| r.len() != n) {
        return Err(Error::Invalid("matrix is not square".into()));
    }
    Ok(n)
}

/// Determinant by Gaussian elimination over a field.
pub fn det<T: Scalar>(m: &Matrix<T>, one: &T) -> Result<T> {
    let n = check_square(m)?;
    let mut a = m.clone();
    let mut acc = one.one_like();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !a[r][col].is_zero_s()) else {
            return Ok(one.zero_like());
        };
        if piv != col {
            a.swap(piv, col);
            acc = acc.neg_s();
        }
        let pv = a[col][col].clone();
        acc = acc.mul_s(&pv);
        for r in col + 1..n {
            if a[r][col].is_zero_s() {
                continue;
            }
            let f = a[r][col].div_s(&pv);
            for c in col..n {
                let t = f.mul_s(&a[col][c]);
                a[r][c] = a[r][c].sub_s(&t);
            }
        }
    }
    Ok(acc)
}

/// Reduced row echelon form in place; returns pivot columns.
pub fn rref<T: Scalar>(a: &mut Matrix<T>) -> Vec<usize> {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(piv) = (r..rows).find(|&i| !a[i][c].is_zero_s()) else {
            continue;
        };
        a.swap(piv, r);
        let pv = a[r][c].clone();
        for k in c..cols {
            a[r][k] = a[r][k].div_s(&pv);
        }
        for i in 0..rows {
            if i == r || a[i][c].is_zero_s() {
                continue;
            }
            let f = a[i][c].clone();
            for k in c..cols {
                let t = f.mul_s(&a[r][k]);
                a[i][k] = a[i][k].sub_s(&t);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<T: Scalar>(m: &Matrix<T>) -> usize {
    let mut a = m.clone();
    rref(&mut a).len()
}

/// Solve `m x = b` for square invertible `m`.
pub fn solve<T: Scalar>(m: &Matrix<T>, b: &[T]) -> Result<Vec<T>> {
    let n = check_square(m)?;
    if b.len() != n {
        return Err(Error::Invalid("right-hand side has the wrong length".into()));
    }
    let mut a: Matrix<T> = m
        .iter()
        .zip(b)
        .map(|(row, v)| {
            let mut r = row.clone();
            r.push(v.clone());
            r
        })
        .collect();
    let piv = rref(&mut a);
    if piv.len() != n || piv.last() == Some(&n) {
        return Err(Error::Singular);
    }
    Ok(a.into_iter().map(|mut r| r.pop().unwrap()).collect())
}

/// Inverse of a square matrix.
pub fn inverse<T: Scalar>(m: &Matrix<T>, one: &T) -> Result<Matrix<T>> {
    let n = check_square(m)?;
    let mut a: Matrix<T> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            for j in 0..n {
                r.push(if i == j { one.one_like() } else { one.zero_like() });
            }
            r
        })
        .collect();
    let piv = rref(&mut a);
    if piv.len() < n || piv[n - 1] != n - 1 {
        return Err(Error::Singular);
    }
    Ok(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn mat_mul<T: Scalar>(a: &Matrix<T>, b: &Matrix<T>, zero: &T) -> Matrix<T> {
    let inner = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    (0..inner).fold(zero.zero_like(), |acc, k| {
                        if row[k].is_zero_s() || b[k][j].is_zero_s() {
                            acc
                        } else {
                            acc.add_s(&row[k].mul_s(&b[k][j]))
                        }
                    })
                })
                .collect()
        })
        .collect()
}

pub fn transpose<T: Clone>(a: &Matrix<T>) -> Matrix<T> {
    let cols = a.first().map_or(0, |r| r.len());
    (0..cols).map(|j| a.iter().map(|r| r[j].clone()).collect()).collect()
}

/// Counts `(positive, negative)` eigenvalues of a symmetric rational matrix
/// by congruence diagonalization.
pub fn signature(m: &Matrix<BigRational>) -> Result<(usize, usize)> {
    let n = check_square(m)?;
    let mut a = m.clone();
    let mut pos = 0;
    let mut neg = 0;
    let mut k = 0;
    while k < n {
        if a[k][k].is_zero() {
            if let Some(j) = (k + 1..n).find(|&j| !a[j][j].is_zero()) {
                a.swap(k, j);
                for row in a.iter_mut() {
                    row.swap(k, j);
                }
            } else if let Some(j) = (k + 1..n).find(|&j| !a[k][j].is_zero()) {
                // Replace e_k by e_k + e_j, making the diagonal 2 a_kj != 0.
                for c in 0..n {
                    let t = a[j][c].clone();
                    a[k][c] += t;
                }
                for r in 0..n {
                    let t = a[r][j].clone();
                    a[r][k] += t;
                }
            } else {
                k += 1;
                continue;
            }
        }
        let pv = a[k][k].clone();
        if pv.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        for r in k + 1..n {
            if a[r][k].is_zero() {
                continue;
            }
            let f = &a[r][k] / &pv;
            for c in 0..n {
                let t = &f * &a[k][c];
                a[r][c] -= t;
            }
            for rr in 0..n {
                let t = &f * &a[rr][k];
                a[rr][r] -= t;
            }
        }
        k += 1;
    }
    Ok((pos, neg))
}

/// Row Hermite normal form over `Z`: nonzero rows only, positive pivots,
/// entries above each pivot reduced into `[0, pivot)`.
pub fn hnf(rows: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut a: Vec<Vec<BigInt>> = rows.iter().filter(|r| r.iter().any(|c| !c.is_zero())).cloned().collect();
    let mut r = 0;
    for c in 0..cols {
        if r == a.len() {
            break;
        }
        // Euclid on column c among rows r..
        loop {
            let mut best: Option<usize> = None;
            for i in r..a.len() {
                if !a[i][c].is_zero() && best.map_or(true, |b| a[i][c].abs() < a[b][c].abs()) {
                    best = Some(i);
                }
            }
            let Some(b) = best else { break };
            a.swap(r, b);
            let mut done = true;
            for i in r + 1..a.len() {
                if a[i][c].is_zero() {
                    continue;
                }
                let q = a[i][c].div_floor(&a[r][c]);
                let pr = a[r].clone();
                for (x, y) in a[i].iter_mut().zip(&pr).skip(c) {
                    *x -= &q * y;
                }
                if !a[i][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if r < a.len() && !a[r][c].is_zero() {
            if a[r][c].is_negative() {
                for x in a[r].iter_mut() {
                    *x = -&*x;
                }
            }
            let pr = a[r].clone();
            for i in 0..r {
                let q = a[i][c].div_floor(&pr[c]);
                if !q.is_zero() {
                    for (x, y) in a[i].iter_mut().zip(&pr).skip(c) {
                        *x -= &q * y;
                    }
                }
            }
            r += 1;
        }
    }
    a.truncate(r);
    a.retain(|row| row.iter().any(|c| !c.is_zero()));
    a
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn det_and_inverse() {
        let m = vec![vec![q(2), q(1)], vec![q(7), q(4)]];
        assert_eq!(det(&m, &q(1)).unwrap(), q(1));
        let inv = inverse(&m, &q(1)).unwrap();
        assert_eq!(mat_mul(&m, &inv, &q(0)), vec![vec![q(1), q(0)], vec![q(0), q(1)]]);
    }

    #[test]
    fn signature_of_hyperbolic_plane() {
        let m = vec![vec![q(0), q(1)], vec![q(1), q(0)]];
        assert_eq!(signature(&m).unwrap(), (1, 1));
    }

    #[test]
    fn hnf_basic() {
        let rows = vec![
            vec![BigInt::from(4), BigInt::from(6)],
            vec![BigInt::from(2), BigInt::from(2)],
        ];
        let h = hnf(&rows);
        assert_eq!(h, vec![vec![BigInt::from(2), BigInt::from(0)], vec![BigInt::from(0), BigInt::from(2)]]);
    }
}
