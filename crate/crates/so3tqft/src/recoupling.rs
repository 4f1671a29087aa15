//! Closed-form recoupling data at `A = -ζ_p^{d+1}`.
//!
//! Formulas follow Kauffman–Lins: loop values `Δ_n = (-1)^n [n+1]`, theta and
//! tetrahedral evaluations of Jones–Wenzl colored networks, 6j symbols, curl
//! coefficients `μ_n`, the Hopf matrix and the surgery element `ω`. Queries
//! on inadmissible colorings return zero.

use std::collections::HashMap;
use std::sync::RwLock;

use serde::Serialize;

use crate::cyclo::{CycloElem, PrimeContext};
use crate::error::{Error, Result};
use crate::linalg;

/// `i+j+k` even, triangle inequalities, and `i+j+k <= 2p-4`.
pub fn admissible(p: usize, i: i64, j: i64, k: i64) -> bool {
    i >= 0
        && j >= 0
        && k >= 0
        && (i + j + k) % 2 == 0
        && i <= j + k
        && j <= i + k
        && k <= i + j
        && i + j + k <= 2 * p as i64 - 4
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Key {
    Theta(i64, i64, i64),
    Tet([i64; 6]),
}

/// Memoized recoupling values for one prime.
pub struct RecouplingTable {
    ctx: PrimeContext,
    qfact: Vec<CycloElem>,
    memo: RwLock<HashMap<Key, CycloElem>>,
}

/// `ω` in the small torus basis `e_0, …, e_{d-1}`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OmegaElement {
    pub coords: Vec<CycloElem>,
}

impl RecouplingTable {
    pub fn new(ctx: &PrimeContext) -> RecouplingTable {
        let top = 4 * ctx.p();
        let mut qfact = vec![ctx.one()];
        for n in 1..=top {
            let next = &qfact[n - 1] * &ctx.qint(n as i64);
            qfact.push(next);
        }
        RecouplingTable { ctx: ctx.clone(), qfact, memo: RwLock::new(HashMap::new()) }
    }

    pub fn ctx(&self) -> &PrimeContext {
        &self.ctx
    }

    fn max_color(&self) -> i64 {
        self.ctx.p() as i64 - 2
    }

    fn check(&self, cs: &[i64]) -> Result<()> {
        for &c in cs {
            if c < 0 || c > self.max_color() {
                return Err(Error::ColorOutOfRange { color: c, max: self.max_color() });
            }
        }
        Ok(())
    }

    fn fact(&self, n: i64) -> &CycloElem {
        &self.qfact[n as usize]
    }

    pub fn admissible(&self, i: i64, j: i64, k: i64) -> bool {
        admissible(self.ctx.p(), i, j, k)
    }

    /// `Δ_n`, the bracket of an unknot colored `n`.
    pub fn loop_value(&self, n: i64) -> Result<CycloElem> {
        self.check(&[n])?;
        let q = self.ctx.qint(n + 1);
        Ok(if n % 2 == 0 { q } else { -q })
    }

    /// The theta network with edges colored `a, b, c`.
    pub fn theta(&self, a: i64, b: i64, c: i64) -> Result<CycloElem> {
        self.check(&[a, b, c])?;
        if !self.admissible(a, b, c) {
            return Ok(self.ctx.zero());
        }
        let mut key = [a, b, c];
        key.sort_unstable();
        let k = Key::Theta(key[0], key[1], key[2]);
        if let Some(v) = self.memo.read().unwrap().get(&k) {
            return Ok(v.clone());
        }
        let m = (a + b - c) / 2;
        let n = (b + c - a) / 2;
        let q = (a + c - b) / 2;
        let num = self.fact(m + n + q + 1) * self.fact(m) * self.fact(n) * self.fact(q);
        let den = self.fact(m + n) * self.fact(n + q) * self.fact(m + q);
        let mut v = num / den;
        if (m + n + q) % 2 == 1 {
            v = -v;
        }
        self.memo.write().unwrap().insert(k, v.clone());
        Ok(v)
    }

    /// Tetrahedral network `Tet[a b e; c d f]` whose vertices are the triples
    /// `(a,d,e)`, `(b,c,e)`, `(a,b,f)`, `(c,d,f)`.
    pub fn tet(&self, a: i64, b: i64, e: i64, c: i64, d: i64, f: i64) -> Result<CycloElem> {
        self.check(&[a, b, e, c, d, f])?;
        let triples = [(a, d, e), (b, c, e), (a, b, f), (c, d, f)];
        if triples.iter().any(|&(x, y, z)| !self.admissible(x, y, z)) {
            return Ok(self.ctx.zero());
        }
        let k = Key::Tet([a, b, e, c, d, f]);
        if let Some(v) = self.memo.read().unwrap().get(&k) {
            return Ok(v.clone());
        }
        let ai = triples.map(|(x, y, z)| (x + y + z) / 2);
        let bj = [(b + d + e + f) / 2, (a + c + e + f) / 2, (a + b + c + d) / 2];
        let mut inum = self.ctx.one();
        for &x in &ai {
            for &y in &bj {
                inum = &inum * self.fact(y - x);
            }
        }
        let mut eden = self.ctx.one();
        for x in [a, b, c, d, e, f] {
            eden = &eden * self.fact(x);
        }
        let lo = *ai.iter().max().unwrap();
        let hi = *bj.iter().min().unwrap();
        let mut sum = self.ctx.zero();
        for s in lo..=hi {
            let mut den = self.ctx.one();
            for &x in &ai {
                den = &den * self.fact(s - x);
            }
            for &y in &bj {
                den = &den * self.fact(y - s);
            }
            let t = self.fact(s + 1) / &den;
            sum = if s % 2 == 0 { &sum + &t } else { &sum - &t };
        }
        let v = &(&inum / &eden) * &sum;
        self.memo.write().unwrap().insert(k, v.clone());
        Ok(v)
    }

    /// Recoupling coefficient `{a b i; c d j} = Tet[a b i; c d j] Δ_i /
    /// (θ(a,d,i) θ(b,c,i))`.
    pub fn sixj(&self, a: i64, b: i64, i: i64, c: i64, d: i64, j: i64) -> Result<CycloElem> {
        self.check(&[a, b, i, c, d, j])?;
        if !self.admissible(a, d, i) || !self.admissible(b, c, i) {
            return Ok(self.ctx.zero());
        }
        let t = self.tet(a, b, i, c, d, j)?;
        if t.is_zero() {
            return Ok(t);
        }
        let num = &t * &self.loop_value(i)?;
        Ok(num / (&self.theta(a, d, i)? * &self.theta(b, c, i)?))
    }

    /// `μ_n = (-1)^n A^{n(n+2)}`: the factor produced by a positive curl on a
    /// strand colored `n`.
    pub fn twist(&self, n: i64) -> Result<CycloElem> {
        self.check(&[n])?;
        let v = self.ctx.a_pow(n * (n + 2));
        Ok(if n % 2 == 0 { v } else { -v })
    }

    /// Bracket of the zero-framed Hopf link colored `(i, j)`.
    pub fn hopf_entry(&self, i: i64, j: i64) -> Result<CycloElem> {
        self.check(&[i, j])?;
        let v = self.ctx.qint((i + 1) * (j + 1));
        Ok(if (i + j) % 2 == 0 { v } else { -v })
    }

    /// The `d × d` Hopf matrix over colors `0..d`.
    pub fn hopf_matrix(&self) -> Result<Vec<Vec<CycloElem>>> {
        let d = self.ctx.d() as i64;
        (0..d).map(|i| (0..d).map(|j| self.hopf_entry(i, j)).collect()).collect()
    }

    /// Scalar by which a circle colored `c` around a strand colored `j` acts.
    pub fn encircle_eigenvalue(&self, c: i64, j: i64) -> Result<CycloElem> {
        Ok(self.hopf_entry(c, j)? / self.loop_value(j)?)
    }

    /// The surgery element: solves `Σ_i c_i S_{ij} = D δ_{0j}`.
    pub fn omega(&self) -> Result<OmegaElement> {
        let s = self.hopf_matrix()?;
        let d = self.ctx.d();
        let mut rhs = vec![self.ctx.zero(); d];
        rhs[0] = self.ctx.d_const().clone();
        let st = linalg::transpose(&s);
        let coords = linalg::solve(&st, &rhs).map_err(|_| Error::Singular)?;
        Ok(OmegaElement { coords })
    }

    /// Action of `ω` encircling a strand colored `j`.
    pub fn omega_eigenvalue(&self, j: i64) -> Result<CycloElem> {
        let w = self.omega()?;
        let mut acc = self.ctx.zero();
        for (i, c) in w.coords.iter().enumerate() {
            acc = &acc + &(c * &self.encircle_eigenvalue(i as i64, j)?);
        }
        Ok(acc)
    }
}

/// Serializable dump of the main recoupling values for regression diffs.
#[derive(Serialize)]
pub struct TableDump {
    pub p: usize,
    pub loops: Vec<CycloElem>,
    pub thetas: Vec<([i64; 3], CycloElem)>,
    pub twists: Vec<CycloElem>,
    pub hopf: Vec<Vec<CycloElem>>,
    pub omega: OmegaElement,
}

impl RecouplingTable {
    pub fn dump(&self) -> Result<TableDump> {
        let m = self.max_color();
        let mut thetas = Vec::new();
        for a in 0..=m {
            for b in a..=m {
                for c in b..=m {
                    if self.admissible(a, b, c) {
                        thetas.push(([a, b, c], self.theta(a, b, c)?));
                    }
                }
            }
        }
        Ok(TableDump {
            p: self.ctx.p(),
            loops: (0..=m).map(|n| self.loop_value(n)).collect::<Result<_>>()?,
            thetas,
            twists: (0..=m).map(|n| self.twist(n)).collect::<Result<_>>()?,
            hopf: self.hopf_matrix()?,
            omega: self.omega()?,
        })
    }
}
