//! Temperley–Lieb matchings and Jones–Wenzl projectors.
//!
//! A matching on `2n` box ports is a partner array. Ports run
//! counterclockwise: bottom `i` is port `i`, top `i` is port `2n-1-i`.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, OnceLock, RwLock};

use serde::Serialize;

use super::coef::{Coef, CoefTable};
use crate::cyclo::{CycloElem, PrimeContext};
use crate::error::{Error, Result};

pub type Matching = Vec<u8>;

/// A formal linear combination of matchings, as used inside the engine.
pub type TlElem = Vec<(Matching, Coef)>;

pub fn identity(n: usize) -> Matching {
    (0..2 * n).map(|i| (2 * n - 1 - i) as u8).collect()
}

/// The generator joining strands `i` and `i+1` at the bottom and at the top.
pub fn cup_cap(n: usize, i: usize) -> Matching {
    let mut m = identity(n);
    let (b0, b1) = (i, i + 1);
    let (t0, t1) = (2 * n - 1 - i, 2 * n - 2 - i);
    m[b0] = b1 as u8;
    m[b1] = b0 as u8;
    m[t0] = t1 as u8;
    m[t1] = t0 as u8;
    m
}

/// Stack `x` on top of `y`; returns the product matching and the number of
/// closed loops.
pub fn compose(x: &Matching, y: &Matching, n: usize) -> (Matching, usize) {
    let m = 2 * n;
    // Points 0..m are y's ports, m..2m are x's ports.
    // y's top port 2n-1-i is glued to x's bottom port i.
    let glue = |pt: usize| -> Option<usize> {
        if pt < m {
            (pt >= n).then(|| m + (m - 1 - pt))
        } else {
            let q = pt - m;
            (q < n).then(|| m - 1 - q)
        }
    };
    let inner = |pt: usize| -> usize {
        if pt < m {
            y[pt] as usize
        } else {
            m + x[pt - m] as usize
        }
    };
    let out_index = |pt: usize| -> usize {
        if pt < m {
            pt
        } else {
            pt - m
        }
    };
    let mut res = vec![0u8; m];
    let mut seen = vec![false; 2 * m];
    let starts: Vec<usize> = (0..n).chain(m + n..2 * m).collect();
    for &s in &starts {
        if seen[s] {
            continue;
        }
        let mut cur = s;
        seen[cur] = true;
        loop {
            let nx = inner(cur);
            seen[nx] = true;
            match glue(nx) {
                Some(g) => {
                    seen[g] = true;
                    cur = g;
                }
                None => {
                    res[out_index(s)] = out_index(nx) as u8;
                    res[out_index(nx)] = out_index(s) as u8;
                    break;
                }
            }
        }
    }
    let mut loops = 0;
    for s in 0..2 * m {
        if seen[s] {
            continue;
        }
        loops += 1;
        let mut cur = s;
        loop {
            seen[cur] = true;
            let nx = inner(cur);
            seen[nx] = true;
            let g = glue(nx).expect("unvisited points are glued");
            if seen[g] {
                break;
            }
            cur = g;
        }
    }
    (res, loops)
}

/// Product of two linear combinations, `x` stacked on `y`.
pub fn mul(x: &TlElem, y: &TlElem, n: usize, tab: &CoefTable) -> Result<TlElem> {
    let mut acc: HashMap<Matching, Coef> = HashMap::new();
    let mut dpow = vec![Coef::one(tab.p)];
    for (mx, cx) in x {
        for (my, cy) in y {
            let (m, loops) = compose(mx, my, n);
            while dpow.len() <= loops {
                let last = *dpow.last().unwrap();
                dpow.push(last.mul(&tab.delta)?);
            }
            let c = cx.mul(cy)?.mul(&dpow[loops])?;
            let e = acc.entry(m).or_insert_with(|| Coef::zero(tab.p));
            *e = e.add(&c)?;
        }
    }
    let mut out: TlElem = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
    out.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(out)
}

/// `x ⊗ 1`: add a vertical strand on the right.
fn extend(x: &Matching, n: usize) -> Matching {
    let m = 2 * n;
    let map = |pt: usize| if pt < n { pt } else { pt + 2 };
    let mut r = vec![0u8; m + 2];
    for pt in 0..m {
        r[map(pt)] = map(x[pt] as usize) as u8;
    }
    r[n] = (n + 1) as u8;
    r[n + 1] = n as u8;
    r
}

type JwMemo = RwLock<HashMap<(usize, usize), Arc<TlElem>>>;

fn memo() -> &'static JwMemo {
    static MEMO: OnceLock<JwMemo> = OnceLock::new();
    MEMO.get_or_init(|| RwLock::new(HashMap::new()))
}

/// The Jones–Wenzl projector `f_n` over `Z[ζ_p]`, memoized per `(p, n)`.
pub fn jw(p: usize, n: usize) -> Result<Arc<TlElem>> {
    if n > p - 2 {
        return Err(Error::ColorOutOfRange { color: n as i64, max: p as i64 - 2 });
    }
    if let Some(v) = memo().read().unwrap().get(&(p, n)) {
        return Ok(v.clone());
    }
    let tab = CoefTable::new(p);
    let val = if n == 0 {
        vec![(Vec::new(), Coef::one(p))]
    } else if n == 1 {
        vec![(identity(1), Coef::one(p))]
    } else {
        let k = n - 1;
        let prev = jw(p, k)?;
        let f: TlElem = prev.iter().map(|(m, c)| (extend(m, k), *c)).collect();
        let e = vec![(cup_cap(n, k - 1), Coef::one(p))];
        let fef = mul(&mul(&f, &e, n, &tab)?, &f, n, &tab)?;
        // Δ_{k-1}/Δ_k = -[k]/[k+1].
        let c = tab.qint(k as i64).mul(&tab.qint_inv(k as i64 + 1))?.neg();
        let mut acc: HashMap<Matching, Coef> = f.into_iter().collect();
        for (m, v) in fef {
            let e = acc.entry(m).or_insert_with(|| Coef::zero(p));
            *e = e.sub(&v.mul(&c)?)?;
        }
        let mut out: TlElem = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        out.sort_by(|a, b| a.0.cmp(&b.0));
        out
    };
    let val = Arc::new(val);
    memo().write().unwrap().insert((p, n), val.clone());
    Ok(val)
}

/// An exact linear combination of crossingless matchings of boundary points.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TLVector {
    pub points: usize,
    pub terms: BTreeMap<Vec<usize>, CycloElem>,
}

impl TLVector {
    pub fn zero(points: usize) -> TLVector {
        TLVector { points, terms: BTreeMap::new() }
    }

    pub fn from_engine(points: usize, terms: &[(Matching, Coef)], ctx: &PrimeContext) -> TLVector {
        let mut v = TLVector::zero(points);
        for (m, c) in terms {
            v.add_term(m.iter().map(|&x| x as usize).collect(), c.to_cyclo(ctx));
        }
        v
    }

    pub fn add_term(&mut self, m: Vec<usize>, c: CycloElem) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(e) => {
                *e = &*e + &c;
                if e.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add(&self, o: &TLVector) -> TLVector {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(m.clone(), c.clone());
        }
        r
    }

    pub fn scale(&self, s: &CycloElem) -> TLVector {
        let mut r = TLVector::zero(self.points);
        for (m, c) in &self.terms {
            r.add_term(m.clone(), c * s);
        }
        r
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

/// `f_n` as a public [`TLVector`] over the `2n` box ports.
pub fn jw_projector(n: usize, ctx: &PrimeContext) -> Result<TLVector> {
    if ctx.p() > super::coef::MAX_P {
        return Err(Error::Invalid(format!("planar engine supports p <= {}", super::coef::MAX_P)));
    }
    let f = jw(ctx.p(), n)?;
    Ok(TLVector::from_engine(2 * n, &f, ctx))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn jw_is_idempotent_and_killed_by_turnbacks() {
        for p in [5usize, 7] {
            let tab = CoefTable::new(p);
            for n in 2..=p - 2 {
                let f = jw(p, n).unwrap();
                let ff = mul(&f, &f, n, &tab).unwrap();
                assert_eq!(&ff, &*f);
                for i in 0..n - 1 {
                    let e = vec![(cup_cap(n, i), Coef::one(p))];
                    assert!(mul(&e, &f, n, &tab).unwrap().is_empty());
                    assert!(mul(&f, &e, n, &tab).unwrap().is_empty());
                }
            }
        }
    }

    #[test]
    fn jw2_two_terms() {
        let p = 5;
        let tab = CoefTable::new(p);
        let f = jw(p, 2).unwrap();
        assert_eq!(f.len(), 2);
        let inv_delta = tab.qint_inv(2).neg();
        for (m, c) in f.iter() {
            if *m == identity(2) {
                assert_eq!(*c, Coef::one(p));
            } else {
                assert_eq!(*m, cup_cap(2, 0));
                assert_eq!(*c, inv_delta.neg());
            }
        }
    }
}
