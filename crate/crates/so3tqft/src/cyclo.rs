//! Exact arithmetic in the cyclotomic field Q(ζ_4p) and its rings of integers.
//!
//! Every element is stored over the power basis `{x^j : j < 2(p-1)}` with
//! `x = ζ_4p`, so that `ζ_p = x^4` and `i = x^p`. The ring `O` is `Z[ζ_p]`
//! when `p ≡ 3 (mod 4)` and `Z[ζ_4p]` when `p ≡ 1 (mod 4)`; `O⁺ = Z[ζ_p]`.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Basis tag written into every serialized element.
pub const BASIS_TAG: &str = "zeta4p-power-basis";

/// Which ring plays the role of `O` for a given prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RingKind {
    /// `Z[ζ_p]`, used when `p ≡ 3 (mod 4)`.
    ZZetaP,
    /// `Z[ζ_4p]`, used when `p ≡ 1 (mod 4)`.
    ZZeta4P,
}

/// The two rings an ideal may live in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum IdealRing {
    O,
    OPlus,
}

/// Reduction data for `Q(ζ_4p) = Q[x]/Φ_4p(x)`.
#[derive(Debug)]
pub struct Field {
    p: usize,
    n: usize,
    deg: usize,
    /// `pow[e]` is `x^e` reduced, for `0 <= e < 4p`.
    pow: Vec<Vec<i64>>,
}

impl Field {
    fn new(p: usize) -> Field {
        let n = 4 * p;
        let deg = 2 * (p - 1);
        // Φ_4p(x) = Σ_{k<p} (-1)^k x^{2k}, so x^deg = -Σ_{k<p-1} (-1)^k x^{2k}.
        let mut top = vec![0i64; deg];
        for k in 0..p - 1 {
            top[2 * k] = if k % 2 == 0 { -1 } else { 1 };
        }
        let mut pow = Vec::with_capacity(n);
        let mut cur = vec![0i64; deg];
        cur[0] = 1;
        for _ in 0..n {
            pow.push(cur.clone());
            let carry = cur[deg - 1];
            let mut next = vec![0i64; deg];
            next[1..deg].copy_from_slice(&cur[..deg - 1]);
            if carry != 0 {
                for j in 0..deg {
                    next[j] += carry * top[j];
                }
            }
            cur = next;
        }
        Field { p, n, deg, pow }
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.deg
    }

    fn reduce(&self, wide: Vec<BigInt>) -> Vec<BigInt> {
        let mut out: Vec<BigInt> = vec![BigInt::zero(); self.deg];
        for (e, c) in wide.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if e < self.deg {
                out[e] += c;
            } else {
                for (j, &t) in self.pow[e % self.n].iter().enumerate() {
                    if t != 0 {
                        out[j] += &c * t;
                    }
                }
            }
        }
        out
    }
}

/// An exact element of `Q(ζ_4p)`: `num / den` over the `ζ_4p` power basis.
#[derive(Clone)]
pub struct CycloElem {
    field: Arc<Field>,
    num: Vec<BigInt>,
    den: BigInt,
}

impl PartialEq for CycloElem {
    fn eq(&self, other: &Self) -> bool {
        self.field.p == other.field.p && self.den == other.den && self.num == other.num
    }
}

impl Eq for CycloElem {}

impl fmt::Debug for CycloElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycloElem({self})")
    }
}

impl CycloElem {
    fn make(field: Arc<Field>, num: Vec<BigInt>, den: BigInt) -> CycloElem {
        let mut e = CycloElem { field, num, den };
        e.normalize();
        e
    }

    fn normalize(&mut self) {
        if self.den.is_negative() {
            self.den = -&self.den;
            for c in &mut self.num {
                *c = -&*c;
            }
        }
        if self.num.iter().all(|c| c.is_zero()) {
            self.den = BigInt::one();
            return;
        }
        let mut g = self.den.clone();
        for c in &self.num {
            if g.is_one() {
                break;
            }
            g = g.gcd(c);
        }
        if !g.is_one() {
            for c in &mut self.num {
                *c = &*c / &g;
            }
            self.den = &self.den / &g;
        }
    }

    pub fn zero(field: &Arc<Field>) -> CycloElem {
        CycloElem { field: field.clone(), num: vec![BigInt::zero(); field.deg], den: BigInt::one() }
    }

    pub fn from_int(field: &Arc<Field>, v: impl Into<BigInt>) -> CycloElem {
        let mut num = vec![BigInt::zero(); field.deg];
        num[0] = v.into();
        CycloElem { field: field.clone(), num, den: BigInt::one() }
    }

    pub fn from_rational(field: &Arc<Field>, q: &BigRational) -> CycloElem {
        let mut num = vec![BigInt::zero(); field.deg];
        num[0] = q.numer().clone();
        CycloElem::make(field.clone(), num, q.denom().clone())
    }

    /// `ζ_4p^e` for any integer exponent.
    pub fn x_pow(field: &Arc<Field>, e: i64) -> CycloElem {
        let n = field.n as i64;
        let r = e.rem_euclid(n) as usize;
        let num = field.pow[r].iter().map(|&v| BigInt::from(v)).collect();
        CycloElem { field: field.clone(), num, den: BigInt::one() }
    }

    /// Build from a numerator over the `ζ_4p` power basis and a denominator.
    pub fn from_parts(field: &Arc<Field>, num: Vec<BigInt>, den: BigInt) -> Result<CycloElem> {
        if num.len() != field.deg {
            return Err(Error::Invalid(format!(
                "coefficient vector has length {}, expected {}",
                num.len(),
                field.deg
            )));
        }
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(CycloElem::make(field.clone(), num, den))
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn numerators(&self) -> &[BigInt] {
        &self.num
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(|c| c.is_zero())
    }

    /// The rational value if the element lies in `Q`.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.num[1..].iter().all(|c| c.is_zero()) {
            Some(BigRational::new(self.num[0].clone(), self.den.clone()))
        } else {
            None
        }
    }

    pub fn scale_int(&self, k: &BigInt) -> CycloElem {
        let num = self.num.iter().map(|c| c * k).collect();
        CycloElem::make(self.field.clone(), num, self.den.clone())
    }

    pub fn scale_rational(&self, q: &BigRational) -> CycloElem {
        let num = self.num.iter().map(|c| c * q.numer()).collect();
        CycloElem::make(self.field.clone(), num, &self.den * q.denom())
    }

    /// Apply the Galois automorphism `ζ_4p ↦ ζ_4p^k`, `gcd(k, 4p) = 1`.
    pub fn galois(&self, k: i64) -> CycloElem {
        let n = self.field.n as i64;
        let mut wide = vec![BigInt::zero(); self.field.n];
        for (j, c) in self.num.iter().enumerate() {
            if !c.is_zero() {
                wide[(k * j as i64).rem_euclid(n) as usize] += c;
            }
        }
        CycloElem::make(self.field.clone(), self.field.reduce(wide), self.den.clone())
    }

    /// Complex conjugation `ζ ↦ ζ⁻¹`.
    pub fn conj(&self) -> CycloElem {
        self.galois(-1)
    }

    fn galois_exponents(&self) -> Vec<i64> {
        let n = self.field.n as i64;
        (1..n).filter(|k| k.gcd(&n) == 1).collect()
    }

    /// Product of all nontrivial Galois conjugates.
    fn conjugate_product(&self) -> CycloElem {
        let mut acc = CycloElem::from_int(&self.field, 1);
        for k in self.galois_exponents() {
            if k != 1 {
                acc = &acc * &self.galois(k);
            }
        }
        acc
    }

    /// Absolute norm `N_{Q(ζ_4p)/Q}`.
    pub fn field_norm(&self) -> BigRational {
        let prod = self.conjugate_product();
        (&prod * self).as_rational().expect("norm is rational")
    }

    /// Multiplicative inverse; errors on zero.
    pub fn inverse(&self) -> Result<CycloElem> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let prod = self.conjugate_product();
        let norm = (&prod * self).as_rational().expect("norm is rational");
        Ok(prod.scale_rational(&norm.recip()))
    }

    pub fn checked_div(&self, other: &CycloElem) -> Result<CycloElem> {
        Ok(self * &other.inverse()?)
    }

    pub fn pow(&self, e: u32) -> CycloElem {
        let mut acc = CycloElem::from_int(&self.field, 1);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Integer power allowing negative exponents.
    pub fn powi(&self, e: i64) -> Result<CycloElem> {
        if e >= 0 {
            Ok(self.pow(e as u32))
        } else {
            Ok(self.inverse()?.pow((-e) as u32))
        }
    }

    /// Split as `α + iβ` with `α, β ∈ Q(ζ_p)` given over `{ζ_p^j : j < p-1}`.
    pub fn split(&self) -> (Vec<BigRational>, Vec<BigRational>) {
        let p = self.field.p as i64;
        // x = ζ_p^s i^t with 4s ≡ 1 (mod p) and t ≡ p (mod 4).
        let s = modinv(4, p);
        let t = p % 4;
        let mut alpha = vec![BigInt::zero(); self.field.p];
        let mut beta = vec![BigInt::zero(); self.field.p];
        for (j, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let j = j as i64;
            let ze = (s * j).rem_euclid(p) as usize;
            match (t * j).rem_euclid(4) {
                0 => alpha[ze] += c,
                1 => beta[ze] += c,
                2 => alpha[ze] -= c,
                _ => beta[ze] -= c,
            }
        }
        let fold = |mut v: Vec<BigInt>| -> Vec<BigRational> {
            let top = v.pop().unwrap();
            v.iter()
                .map(|c| BigRational::new(c - &top, self.den.clone()))
                .collect()
        };
        (fold(alpha), fold(beta))
    }

    /// Integer coordinates over `{ζ_p^j : j < p-1}` if the element lies in `Z[ζ_p]`.
    pub fn oplus_coords(&self) -> Option<Vec<BigInt>> {
        let (alpha, beta) = self.split();
        if beta.iter().any(|c| !c.is_zero()) || alpha.iter().any(|c| !c.is_integer()) {
            return None;
        }
        Some(alpha.into_iter().map(|c| c.to_integer()).collect())
    }

    pub fn in_o_plus(&self) -> bool {
        self.oplus_coords().is_some()
    }

    /// Membership in `O` (the ring fixed by `p mod 4`).
    pub fn in_o(&self) -> bool {
        if self.field.p % 4 == 1 {
            self.den.is_one()
        } else {
            self.in_o_plus()
        }
    }

    /// Coordinates over the integral basis of the requested ring.
    pub fn ring_coords(&self, ring: IdealRing) -> Option<Vec<BigInt>> {
        match ring {
            IdealRing::O if self.field.p % 4 == 1 => {
                if self.den.is_one() {
                    Some(self.num.clone())
                } else {
                    None
                }
            }
            _ => self.oplus_coords(),
        }
    }

    /// Inverse of [`CycloElem::ring_coords`].
    pub fn from_ring_coords(field: &Arc<Field>, ring: IdealRing, coords: &[BigInt]) -> CycloElem {
        match ring {
            IdealRing::O if field.p % 4 == 1 => {
                CycloElem::make(field.clone(), coords.to_vec(), BigInt::one())
            }
            _ => {
                let mut wide = vec![BigInt::zero(); field.n];
                for (j, c) in coords.iter().enumerate() {
                    wide[4 * j] += c;
                }
                CycloElem::make(field.clone(), field.reduce(wide), BigInt::one())
            }
        }
    }

    /// Evaluate at `ζ_4p = exp(2πi/4p)` in floating point, for display and
    /// sign diagnostics only.
    pub fn approx(&self) -> (f64, f64) {
        let n = self.field.n as f64;
        let den = bigint_to_f64(&self.den);
        let mut re = 0.0;
        let mut im = 0.0;
        for (j, c) in self.num.iter().enumerate() {
            let v = bigint_to_f64(c) / den;
            let ang = 2.0 * std::f64::consts::PI * j as f64 / n;
            re += v * ang.cos();
            im += v * ang.sin();
        }
        (re, im)
    }

    pub fn to_repr(&self) -> CycloRepr {
        CycloRepr {
            basis: BASIS_TAG.to_string(),
            p: self.field.p,
            degree: self.field.deg,
            num: self.num.iter().map(|c| c.to_string()).collect(),
            den: self.den.to_string(),
        }
    }

    pub fn from_repr(field: &Arc<Field>, repr: &CycloRepr) -> Result<CycloElem> {
        if repr.basis != BASIS_TAG || repr.p != field.p || repr.degree != field.deg {
            return Err(Error::Invalid(format!(
                "element tagged ({}, p={}, degree={}) does not match field p={}",
                repr.basis, repr.p, repr.degree, field.p
            )));
        }
        let parse = |s: &str| {
            s.parse::<BigInt>()
                .map_err(|e| Error::Invalid(format!("bad integer {s:?}: {e}")))
        };
        let num = repr.num.iter().map(|s| parse(s)).collect::<Result<Vec<_>>>()?;
        CycloElem::from_parts(field, num, parse(&repr.den)?)
    }
}

fn bigint_to_f64(v: &BigInt) -> f64 {
    v.to_string().parse::<f64>().unwrap_or(f64::NAN)
}

/// Serialized form of a [`CycloElem`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycloRepr {
    pub basis: String,
    pub p: usize,
    pub degree: usize,
    pub num: Vec<String>,
    pub den: String,
}

impl Serialize for CycloElem {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_repr().serialize(s)
    }
}

impl fmt::Display for CycloElem {
    /// Prints `α + i·β` with `α, β` over powers of `ζ_p`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.field.p;
        let (alpha, beta) = self.split();
        let poly = |v: &[BigRational]| -> String {
            let mut parts = Vec::new();
            for (j, c) in v.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let mono = match j {
                    0 => String::new(),
                    1 => format!("z{p}"),
                    _ => format!("z{p}^{j}"),
                };
                let coef = if c.is_integer() {
                    c.to_integer().to_string()
                } else {
                    format!("({c})")
                };
                parts.push(if mono.is_empty() {
                    coef
                } else if c.is_one() {
                    mono
                } else if (-c).is_one() {
                    format!("-{mono}")
                } else {
                    format!("{coef}*{mono}")
                });
            }
            if parts.is_empty() {
                "0".to_string()
            } else {
                parts.join(" + ").replace("+ -", "- ")
            }
        };
        let a_zero = alpha.iter().all(|c| c.is_zero());
        let b_zero = beta.iter().all(|c| c.is_zero());
        match (a_zero, b_zero) {
            (true, true) => write!(f, "0"),
            (false, true) => write!(f, "{}", poly(&alpha)),
            (true, false) => write!(f, "i*({})", poly(&beta)),
            (false, false) => write!(f, "{} + i*({})", poly(&alpha), poly(&beta)),
        }
    }
}

impl<'a> Add<&'a CycloElem> for &'a CycloElem {
    type Output = CycloElem;
    fn add(self, o: &CycloElem) -> CycloElem {
        if self.den == o.den {
            let num = self.num.iter().zip(&o.num).map(|(a, b)| a + b).collect();
            return CycloElem::make(self.field.clone(), num, self.den.clone());
        }
        let num = self
            .num
            .iter()
            .zip(&o.num)
            .map(|(a, b)| a * &o.den + b * &self.den)
            .collect();
        CycloElem::make(self.field.clone(), num, &self.den * &o.den)
    }
}

impl<'a> Sub<&'a CycloElem> for &'a CycloElem {
    type Output = CycloElem;
    fn sub(self, o: &CycloElem) -> CycloElem {
        self + &(-o)
    }
}

impl Neg for &CycloElem {
    type Output = CycloElem;
    fn neg(self) -> CycloElem {
        CycloElem {
            field: self.field.clone(),
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }
}

impl<'a> Mul<&'a CycloElem> for &'a CycloElem {
    type Output = CycloElem;
    fn mul(self, o: &CycloElem) -> CycloElem {
        let deg = self.field.deg;
        let mut wide = vec![BigInt::zero(); 2 * deg - 1];
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.num.iter().enumerate() {
                if !b.is_zero() {
                    wide[i + j] += a * b;
                }
            }
        }
        CycloElem::make(self.field.clone(), self.field.reduce(wide), &self.den * &o.den)
    }
}

impl<'a> Div<&'a CycloElem> for &'a CycloElem {
    type Output = CycloElem;
    /// Panics on division by zero; use [`CycloElem::checked_div`] otherwise.
    fn div(self, o: &CycloElem) -> CycloElem {
        self.checked_div(o).expect("division by zero")
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<CycloElem> for CycloElem {
            type Output = CycloElem;
            fn $m(self, o: CycloElem) -> CycloElem {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a CycloElem> for CycloElem {
            type Output = CycloElem;
            fn $m(self, o: &CycloElem) -> CycloElem {
                (&self).$m(o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for CycloElem {
    type Output = CycloElem;
    fn neg(self) -> CycloElem {
        -&self
    }
}

impl std::iter::Sum for CycloElem {
    fn sum<I: Iterator<Item = CycloElem>>(mut iter: I) -> CycloElem {
        let first = iter.next().expect("sum of an empty iterator needs a field");
        iter.fold(first, |acc, x| &acc + &x)
    }
}

pub(crate) fn modinv(a: i64, m: i64) -> i64 {
    let (mut r0, mut r1) = (a.rem_euclid(m), m);
    let (mut s0, mut s1) = (1i64, 0i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    assert_eq!(r0, 1, "{a} is not invertible mod {m}");
    s0.rem_euclid(m)
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut k = 2;
    while k * k <= n {
        if n % k == 0 {
            return false;
        }
        k += 1;
    }
    true
}

struct Cache {
    d_const: OnceLock<CycloElem>,
    h_inv: OnceLock<CycloElem>,
}

struct Inner {
    p: usize,
    d: usize,
    ring_kind: RingKind,
    field: Arc<Field>,
    cache: Cache,
}

/// The prime `p` together with its field and frequently used constants.
#[derive(Clone)]
pub struct PrimeContext(Arc<Inner>);

impl fmt::Debug for PrimeContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PrimeContext")
            .field("p", &self.p())
            .field("d", &self.d())
            .field("ring_kind", &self.ring_kind())
            .field("degree", &self.degree())
            .finish()
    }
}

impl PartialEq for PrimeContext {
    fn eq(&self, other: &Self) -> bool {
        self.p() == other.p()
    }
}

/// Validate `p` and build its context.
pub fn make_context(p: u64) -> Result<PrimeContext> {
    PrimeContext::new(p)
}

impl PrimeContext {
    pub fn new(p: u64) -> Result<PrimeContext> {
        if p < 5 || !is_prime(p) {
            return Err(Error::InvalidPrime(p));
        }
        if p > 97 {
            return Err(Error::Invalid(format!("p = {p} is beyond the supported range")));
        }
        let p = p as usize;
        let ring_kind = if p % 4 == 1 { RingKind::ZZeta4P } else { RingKind::ZZetaP };
        Ok(PrimeContext(Arc::new(Inner {
            p,
            d: (p - 1) / 2,
            ring_kind,
            field: Arc::new(Field::new(p)),
            cache: Cache { d_const: OnceLock::new(), h_inv: OnceLock::new() },
        })))
    }

    pub fn p(&self) -> usize {
        self.0.p
    }

    pub fn d(&self) -> usize {
        self.0.d
    }

    pub fn ring_kind(&self) -> RingKind {
        self.0.ring_kind
    }

    /// Z-rank of `O`.
    pub fn degree(&self) -> usize {
        match self.0.ring_kind {
            RingKind::ZZeta4P => 2 * (self.0.p - 1),
            RingKind::ZZetaP => self.0.p - 1,
        }
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.0.field
    }

    pub fn int(&self, v: impl Into<BigInt>) -> CycloElem {
        CycloElem::from_int(&self.0.field, v)
    }

    pub fn zero(&self) -> CycloElem {
        CycloElem::zero(&self.0.field)
    }

    pub fn one(&self) -> CycloElem {
        self.int(1)
    }

    pub fn rational(&self, q: &BigRational) -> CycloElem {
        CycloElem::from_rational(&self.0.field, q)
    }

    /// `ζ_p^k`.
    pub fn zeta_pow(&self, k: i64) -> CycloElem {
        CycloElem::x_pow(&self.0.field, 4 * k)
    }

    pub fn zeta(&self) -> CycloElem {
        self.zeta_pow(1)
    }

    /// `ζ_4p^k`.
    pub fn zeta4p_pow(&self, k: i64) -> CycloElem {
        CycloElem::x_pow(&self.0.field, k)
    }

    pub fn i(&self) -> CycloElem {
        CycloElem::x_pow(&self.0.field, self.0.p as i64)
    }

    /// `h = 1 - ζ_p`.
    pub fn h(&self) -> CycloElem {
        &self.one() - &self.zeta()
    }

    pub fn h_inv(&self) -> &CycloElem {
        self.0.cache.h_inv.get_or_init(|| self.h().inverse().expect("h is nonzero"))
    }

    /// Exponent `k` with `A = ζ_p^k` written as a signed monomial: `A = -ζ_p^{d+1}`.
    pub fn a_exponent(&self) -> i64 {
        self.0.d as i64 + 1
    }

    /// `A^k` as a signed power of `ζ_p`: returns `(sign, exponent mod p)`.
    pub fn a_pow_monomial(&self, k: i64) -> (i64, i64) {
        let sign = if k.rem_euclid(2) == 0 { 1 } else { -1 };
        (sign, (k * self.a_exponent()).rem_euclid(self.0.p as i64))
    }

    /// `A^k`.
    pub fn a_pow(&self, k: i64) -> CycloElem {
        let (s, e) = self.a_pow_monomial(k);
        let z = self.zeta_pow(e);
        if s == 1 {
            z
        } else {
            -z
        }
    }

    /// `δ = -A² - A⁻² = -[2]`.
    pub fn delta(&self) -> CycloElem {
        -self.qint(2)
    }

    /// Quantum integer `[n] = Σ_{k<n} ζ_p^{n-1-2k}`; `[-n] = -[n]`.
    pub fn qint(&self, n: i64) -> CycloElem {
        if n < 0 {
            return -self.qint(-n);
        }
        let mut acc = self.zero();
        for k in 0..n {
            acc = &acc + &self.zeta_pow(n - 1 - 2 * k);
        }
        acc
    }

    /// Legendre symbol `(a / p)`.
    pub fn legendre(&self, a: i64) -> i64 {
        let p = self.0.p as i64;
        let a = a.rem_euclid(p);
        if a == 0 {
            return 0;
        }
        let mut r = 1i64;
        let mut b = a;
        let mut e = (p - 1) / 2;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        if r == 1 {
            1
        } else {
            -1
        }
    }

    /// Quadratic Gauss sum `Σ_a (a/p) ζ_p^a`.
    pub fn gauss_sum(&self) -> CycloElem {
        let p = self.0.p as i64;
        let mut acc = self.zero();
        for a in 1..p {
            let t = self.zeta_pow(a);
            acc = if self.legendre(a) == 1 { &acc + &t } else { &acc - &t };
        }
        acc
    }

    /// The square root `D` of `-p/(ζ_p - ζ_p⁻¹)²` that is positive under
    /// `ζ_4p ↦ exp(2πi/4p)`: `D = i^ε g / (ζ_p - ζ_p⁻¹)`, `ε = [p ≡ 1 mod 4]`.
    pub fn d_const(&self) -> &CycloElem {
        self.0.cache.d_const.get_or_init(|| {
            let g = self.gauss_sum();
            let num = if self.0.p % 4 == 1 { &self.i() * &g } else { g };
            let den = &self.zeta() - &self.zeta_pow(-1);
            num.checked_div(&den).expect("ζ - ζ⁻¹ is nonzero")
        })
    }

    /// Largest `k` with `x / h^k ∈ O`; `None` for zero.
    pub fn h_valuation(&self, x: &CycloElem) -> Result<Option<u32>> {
        if !x.in_o() {
            return Err(Error::NotInRing(x.to_string()));
        }
        if x.is_zero() {
            return Ok(None);
        }
        let hinv = self.h_inv();
        let mut k = 0;
        let mut cur = x.clone();
        loop {
            let next = &cur * hinv;
            if !next.in_o() {
                return Ok(Some(k));
            }
            cur = next;
            k += 1;
        }
    }

    /// `x ∈ O` and `|N(x)| = 1`.
    pub fn is_unit(&self, x: &CycloElem) -> Result<bool> {
        if !x.in_o() {
            return Err(Error::NotInRing(x.to_string()));
        }
        if x.is_zero() {
            return Ok(false);
        }
        Ok(x.field_norm().abs().is_one())
    }

    /// Norm from `Q(ζ_p)` to `Q` of an element of `Q(ζ_p)`.
    pub fn norm_p(&self, x: &CycloElem) -> Result<BigRational> {
        let (_, beta) = x.split();
        if beta.iter().any(|c| !c.is_zero()) {
            return Err(Error::Invalid("norm_p requires an element of Q(ζ_p)".into()));
        }
        let p = self.0.p as i64;
        let mut acc = self.one();
        for k in 1..p {
            // ζ_p ↦ ζ_p^k extends to ζ_4p ↦ ζ_4p^{k'} with k' ≡ k (mod p), k' ≡ 1 (mod 4).
            let kp = crt(k, p, 1, 4);
            acc = &acc * &x.galois(kp);
        }
        Ok(acc.as_rational().expect("norm is rational"))
    }

    /// Element `Σ c_j ζ_p^j` from small integer coefficients.
    pub fn from_zeta_coeffs(&self, coeffs: &[i64]) -> CycloElem {
        let mut acc = self.zero();
        for (j, &c) in coeffs.iter().enumerate() {
            if c != 0 {
                acc = &acc + &self.zeta_pow(j as i64).scale_int(&BigInt::from(c));
            }
        }
        acc
    }

    /// Reduction `O⁺ → O⁺/hO⁺ = F_p` (ζ_p ↦ 1); `None` if `x ∉ O⁺`.
    pub fn reduce_mod_h(&self, x: &CycloElem) -> Option<u64> {
        let coords = x.oplus_coords()?;
        let p = BigInt::from(self.0.p);
        let s: BigInt = coords.iter().sum();
        let r = s.mod_floor(&p);
        Some(r.to_string().parse().expect("residue fits"))
    }
}

fn crt(a: i64, m: i64, b: i64, n: i64) -> i64 {
    let inv = modinv(m, n);
    let t = ((b - a).rem_euclid(n) * inv).rem_euclid(n);
    a + m * t
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_relations() {
        let ctx = make_context(5).unwrap();
        let z = ctx.zeta();
        assert_eq!(z.pow(5), ctx.one());
        assert_eq!(ctx.i().pow(2), -ctx.one());
        let a = ctx.a_pow(1);
        assert_eq!(a.pow(2), z);
        assert_eq!(a.pow(10), ctx.one());
        assert_ne!(a.pow(5), ctx.one());
    }

    #[test]
    fn inverse_roundtrip() {
        let ctx = make_context(7).unwrap();
        let x = ctx.from_zeta_coeffs(&[3, -1, 4, 1, -5]);
        let y = x.inverse().unwrap();
        assert!((&x * &y).is_one());
    }

    #[test]
    fn split_recovers_element() {
        let ctx = make_context(5).unwrap();
        let x = &ctx.zeta4p_pow(3) + &ctx.zeta4p_pow(11).scale_int(&BigInt::from(2));
        let (alpha, beta) = x.split();
        let f = ctx.field();
        let mut back = ctx.zero();
        for (j, c) in alpha.iter().enumerate() {
            back = &back + &ctx.zeta_pow(j as i64).scale_rational(c);
        }
        for (j, c) in beta.iter().enumerate() {
            back = &back + &(&ctx.i() * &ctx.zeta_pow(j as i64)).scale_rational(c);
        }
        assert_eq!(back, x);
        assert_eq!(f.degree(), 8);
    }
}
