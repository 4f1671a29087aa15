//! Small fixed-width elements of `Z[ζ_p]` used inside the sweep.
//!
//! Every quantity the planar engine touches (A, δ, Jones–Wenzl coefficients)
//! lies in `Z[ζ_p]`, so the hot loop runs on `i128` arrays with checked
//! arithmetic instead of big rationals.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::cyclo::{CycloElem, PrimeContext};
use crate::error::{Error, Result};

/// Largest prime the planar engine accepts.
pub const MAX_P: usize = 13;

/// `Σ c_j ζ_p^j` with the canonical choice `c[p-1] = 0`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Coef {
    p: u8,
    c: [i128; MAX_P],
}

impl Coef {
    pub fn zero(p: usize) -> Coef {
        Coef { p: p as u8, c: [0; MAX_P] }
    }

    pub fn int(p: usize, v: i128) -> Coef {
        let mut z = Coef::zero(p);
        z.c[0] = v;
        z
    }

    pub fn one(p: usize) -> Coef {
        Coef::int(p, 1)
    }

    /// `s · ζ_p^e`.
    pub fn monomial(p: usize, s: i128, e: i64) -> Coef {
        let mut z = Coef::zero(p);
        z.c[e.rem_euclid(p as i64) as usize] = s;
        z.normalize()
    }

    pub fn p(&self) -> usize {
        self.p as usize
    }

    fn normalize(mut self) -> Coef {
        let p = self.p as usize;
        let top = self.c[p - 1];
        if top != 0 {
            for j in 0..p {
                self.c[j] -= top;
            }
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|&v| v == 0)
    }

    pub fn checked_add(&self, o: &Coef) -> Option<Coef> {
        let mut r = *self;
        for j in 0..self.p as usize {
            r.c[j] = r.c[j].checked_add(o.c[j])?;
        }
        Some(r)
    }

    pub fn checked_sub(&self, o: &Coef) -> Option<Coef> {
        let mut r = *self;
        for j in 0..self.p as usize {
            r.c[j] = r.c[j].checked_sub(o.c[j])?;
        }
        Some(r)
    }

    pub fn neg(&self) -> Coef {
        let mut r = *self;
        for v in r.c.iter_mut() {
            *v = -*v;
        }
        r
    }

    pub fn checked_mul(&self, o: &Coef) -> Option<Coef> {
        let p = self.p as usize;
        let mut r = Coef::zero(p);
        for i in 0..p {
            let a = self.c[i];
            if a == 0 {
                continue;
            }
            for j in 0..p {
                let b = o.c[j];
                if b == 0 {
                    continue;
                }
                let k = if i + j >= p { i + j - p } else { i + j };
                r.c[k] = r.c[k].checked_add(a.checked_mul(b)?)?;
            }
        }
        let top = r.c[p - 1];
        if top != 0 {
            for j in 0..p {
                r.c[j] = r.c[j].checked_sub(top)?;
            }
        }
        Some(r)
    }

    pub fn mul(&self, o: &Coef) -> Result<Coef> {
        self.checked_mul(o).ok_or(Error::Overflow)
    }

    pub fn add(&self, o: &Coef) -> Result<Coef> {
        self.checked_add(o).ok_or(Error::Overflow)
    }

    pub fn sub(&self, o: &Coef) -> Result<Coef> {
        self.checked_sub(o).ok_or(Error::Overflow)
    }

    pub fn pow(&self, e: u32) -> Result<Coef> {
        let mut acc = Coef::one(self.p as usize);
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    pub fn to_cyclo(&self, ctx: &PrimeContext) -> CycloElem {
        let p = self.p as usize;
        let mut acc = ctx.zero();
        for j in 0..p {
            if self.c[j] != 0 {
                acc = &acc + &ctx.zeta_pow(j as i64).scale_int(&BigInt::from(self.c[j]));
            }
        }
        acc
    }

    /// Converts an element of `Z[ζ_p]`; errors if `x` is outside it or too large.
    pub fn from_cyclo(ctx: &PrimeContext, x: &CycloElem) -> Result<Coef> {
        let coords = x.oplus_coords().ok_or_else(|| Error::NotInRing(x.to_string()))?;
        let mut r = Coef::zero(ctx.p());
        for (j, v) in coords.iter().enumerate() {
            if !v.is_zero() {
                r.c[j] = v.to_i128().ok_or(Error::Overflow)?;
            }
        }
        Ok(r)
    }
}

/// Frequently used scalars for one prime.
#[derive(Clone, Debug)]
pub struct CoefTable {
    pub p: usize,
    pub a: Coef,
    pub a_inv: Coef,
    pub delta: Coef,
}

impl CoefTable {
    pub fn new(p: usize) -> CoefTable {
        let d = (p as i64 - 1) / 2;
        CoefTable {
            p,
            a: Coef::monomial(p, -1, d + 1),
            a_inv: Coef::monomial(p, -1, -(d + 1)),
            delta: Coef::monomial(p, -1, 1).checked_add(&Coef::monomial(p, -1, -1)).unwrap(),
        }
    }

    /// `A^k`.
    pub fn a_pow(&self, k: i64) -> Coef {
        let d = (self.p as i64 - 1) / 2;
        let s = if k.rem_euclid(2) == 0 { 1 } else { -1 };
        Coef::monomial(self.p, s, k * (d + 1))
    }

    /// `[n]`.
    pub fn qint(&self, n: i64) -> Coef {
        let mut acc = Coef::zero(self.p);
        for k in 0..n.abs() {
            acc = acc.checked_add(&Coef::monomial(self.p, 1, n.abs() - 1 - 2 * k)).unwrap();
        }
        if n < 0 {
            acc.neg()
        } else {
            acc
        }
    }

    /// `[n]⁻¹` for `1 <= n <= p-1`: `ζ^{n-1} Σ_{k<r} ζ^{2nk}` with `r = n⁻¹ mod p`.
    pub fn qint_inv(&self, n: i64) -> Coef {
        let p = self.p as i64;
        assert!(n.rem_euclid(p) != 0, "[n] is not invertible for p | n");
        let sign = if n < 0 { -1 } else { 1 };
        let n = n.abs();
        let r = crate::cyclo::modinv(n, p);
        let mut acc = Coef::zero(self.p);
        for k in 0..r {
            acc = acc.checked_add(&Coef::monomial(self.p, sign, n - 1 + 2 * n * k)).unwrap();
        }
        acc
    }
}
