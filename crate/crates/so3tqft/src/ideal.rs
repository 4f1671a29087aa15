//! Ideals of `O` and `O⁺` as Hermite normal forms of their `Z`-lattices.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::cyclo::{CycloElem, IdealRing, PrimeContext};
use crate::error::{Error, Result};
use crate::linalg::hnf;

/// A finitely generated ideal, stored as the row HNF of its `Z`-lattice in
/// the integral power basis of `ring`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealLattice {
    pub p: usize,
    pub ring: IdealRing,
    pub rank: usize,
    pub hnf: Vec<Vec<BigInt>>,
}

/// Serialized form of an [`IdealLattice`].
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct IdealRepr {
    pub p: usize,
    pub ring: IdealRing,
    pub rank: usize,
    pub hnf: Vec<Vec<String>>,
    pub index: Option<String>,
    pub is_unit: bool,
}

/// Z-rank of the ring.
pub fn ring_rank(ctx: &PrimeContext, ring: IdealRing) -> usize {
    match ring {
        IdealRing::O => ctx.degree(),
        IdealRing::OPlus => ctx.p() - 1,
    }
}

/// The power basis `{x^j}` (for `Z[ζ_4p]`) or `{ζ_p^j}` of the ring.
pub fn ring_basis(ctx: &PrimeContext, ring: IdealRing) -> Vec<CycloElem> {
    let n = ring_rank(ctx, ring);
    (0..n)
        .map(|j| {
            let mut v = vec![BigInt::zero(); n];
            v[j] = BigInt::one();
            CycloElem::from_ring_coords(ctx.field(), ring, &v)
        })
        .collect()
}

impl IdealLattice {
    /// The ideal generated by `gens`; errors if a generator is outside the ring.
    pub fn from_generators(ctx: &PrimeContext, gens: &[CycloElem], ring: IdealRing) -> Result<IdealLattice> {
        let basis = ring_basis(ctx, ring);
        let mut rows = Vec::new();
        for g in gens {
            if g.ring_coords(ring).is_none() {
                return Err(Error::NotInRing(g.to_string()));
            }
            for b in &basis {
                rows.push((g * b).ring_coords(ring).expect("ring is closed under products"));
            }
        }
        Ok(IdealLattice::from_rows(ctx, ring, rows))
    }

    fn from_rows(ctx: &PrimeContext, ring: IdealRing, rows: Vec<Vec<BigInt>>) -> IdealLattice {
        IdealLattice { p: ctx.p(), ring, rank: ring_rank(ctx, ring), hnf: hnf(&rows) }
    }

    pub fn unit(ctx: &PrimeContext, ring: IdealRing) -> IdealLattice {
        IdealLattice::from_generators(ctx, &[ctx.one()], ring).expect("1 is in every ring")
    }

    pub fn is_zero(&self) -> bool {
        self.hnf.is_empty()
    }

    /// `[ring : ideal]`, or `None` for the zero ideal.
    pub fn index(&self) -> Option<BigInt> {
        if self.hnf.len() != self.rank {
            return None;
        }
        Some(self.hnf.iter().enumerate().map(|(i, r)| r[i].clone()).product())
    }

    pub fn is_unit(&self) -> bool {
        self.index().is_some_and(|i| i.is_one())
    }

    /// Membership test for an element of the fraction field.
    pub fn contains(&self, x: &CycloElem) -> bool {
        let Some(mut v) = x.ring_coords(self.ring) else {
            return false;
        };
        for row in &self.hnf {
            let c = row.iter().position(|e| !e.is_zero()).expect("hnf rows are nonzero");
            let (q, r) = v[c].div_mod_floor(&row[c]);
            if !r.is_zero() {
                return false;
            }
            if !q.is_zero() {
                for (a, b) in v.iter_mut().zip(row) {
                    *a -= &q * b;
                }
            }
        }
        v.iter().all(|e| e.is_zero())
    }

    pub fn contains_ideal(&self, other: &IdealLattice) -> bool {
        other.generators_as_elems().iter().all(|g| self.contains(g))
    }

    fn generators_as_elems(&self) -> Vec<CycloElem> {
        let ctx = crate::cyclo::PrimeContext::new(self.p as u64).expect("valid prime");
        self.hnf
            .iter()
            .map(|r| CycloElem::from_ring_coords(ctx.field(), self.ring, r))
            .collect()
    }

    /// `J ∩ O⁺` for an ideal `J` of `O`.
    pub fn intersect_oplus(&self, ctx: &PrimeContext) -> IdealLattice {
        if self.ring == IdealRing::OPlus || ctx.p() % 4 == 3 {
            return IdealLattice { ring: IdealRing::OPlus, ..self.clone() };
        }
        let elems = self.generators_as_elems();
        let m = elems.len();
        let splits: Vec<_> = elems.iter().map(|e| e.split()).collect();
        let w = ctx.p() - 1;
        // Left kernel of the i-part via HNF of [β | I].
        let rows: Vec<Vec<BigInt>> = splits
            .iter()
            .enumerate()
            .map(|(k, (_, beta))| {
                let mut r: Vec<BigInt> = beta.iter().map(|c| c.to_integer()).collect();
                r.extend((0..m).map(|j| if j == k { BigInt::one() } else { BigInt::zero() }));
                r
            })
            .collect();
        let h = hnf(&rows);
        let mut out = Vec::new();
        for row in h.iter().filter(|r| r[..w].iter().all(|c| c.is_zero())) {
            let mut acc = vec![BigInt::zero(); w];
            for (k, c) in row[w..].iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                for (a, b) in acc.iter_mut().zip(&splits[k].0) {
                    *a += c * b.to_integer();
                }
            }
            out.push(acc);
        }
        IdealLattice::from_rows(ctx, IdealRing::OPlus, out)
    }

    pub fn to_repr(&self) -> IdealRepr {
        IdealRepr {
            p: self.p,
            ring: self.ring,
            rank: self.rank,
            hnf: self.hnf.iter().map(|r| r.iter().map(|c| c.to_string()).collect()).collect(),
            index: self.index().map(|i| i.to_string()),
            is_unit: self.is_unit(),
        }
    }

    pub fn from_repr(r: &IdealRepr) -> Result<IdealLattice> {
        let hnf = r
            .hnf
            .iter()
            .map(|row| {
                row.iter()
                    .map(|s| s.parse::<BigInt>().map_err(|e| Error::Invalid(e.to_string())))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        if hnf.iter().any(|row| row.len() != r.rank) {
            return Err(Error::Invalid("hnf row length does not match rank".into()));
        }
        if hnf.iter().any(|row| row.iter().find(|c| !c.is_zero()).is_some_and(|c| c.is_negative())) {
            return Err(Error::Invalid("hnf pivots must be positive".into()));
        }
        Ok(IdealLattice { p: r.p, ring: r.ring, rank: r.rank, hnf })
    }
}

impl Serialize for IdealLattice {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_repr().serialize(s)
    }
}
