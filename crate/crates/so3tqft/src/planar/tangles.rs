//! Four-point tangles with all legs colored 2 and their random closures,
//! used to check the skein identities behind the 3-ball lemma.
//!
//! Legs `a, b, c, d` exit at the top, left to right. `L0` pairs `(a,b)(c,d)`,
//! `L∞` pairs `(a,d)(b,c)`, `L+` is the crossing whose smoothings are those two,
//! `X` joins adjacent legs by four arcs colored 1, `VBar` is the I-graph
//! separating `(a,b)` from `(c,d)` and `HBar` the one separating `(a,d)` from
//! `(b,c)`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::diagram::ColoredDiagram;
use super::morse::Morse;
use crate::cyclo::{CycloElem, PrimeContext};
use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum FourTangle {
    L0,
    LInf,
    LPlus,
    X,
    VBar,
    HBar,
}

impl FourTangle {
    pub const ALL: [FourTangle; 6] =
        [FourTangle::L0, FourTangle::LInf, FourTangle::LPlus, FourTangle::X, FourTangle::VBar, FourTangle::HBar];

    /// Build the tangle at strand position 0 of an empty builder.
    pub fn build(self) -> Morse {
        let mut m = Morse::new();
        match self {
            FourTangle::L0 => {
                m.cup(0, 2, None).cup(2, 2, None);
            }
            FourTangle::LInf => {
                m.cup(0, 2, None).cup(1, 2, None);
            }
            FourTangle::LPlus => {
                m.cup(0, 2, None).cup(2, 2, None).cross(1, false);
            }
            FourTangle::X => {
                m.cup(0, 1, None).cup(1, 1, None).cup(3, 1, None).cup(5, 1, None);
                m.merge(0, 2, None).merge(1, 2, None).merge(2, 2, None).merge(3, 2, None);
            }
            FourTangle::VBar => {
                m.cup(0, 2, None).split(0, (2, None), (2, None)).split(2, (2, None), (2, None));
            }
            FourTangle::HBar => {
                m.cup(0, 2, None).split(0, (2, None), (2, None)).split(1, (2, None), (2, None));
            }
        }
        m
    }
}

/// A closure of the four legs: extra circles colored 2 inserted at the given
/// positions, a braid word, then caps from the left.
#[derive(Clone, Debug, Serialize)]
pub struct Closure {
    pub circles: Vec<usize>,
    pub word: Vec<(usize, bool)>,
}

impl Closure {
    pub fn random(rng: &mut ChaCha8Rng) -> Closure {
        let k = rng.gen_range(0..=1);
        let mut width = 4;
        let mut circles = Vec::new();
        for _ in 0..k {
            circles.push(rng.gen_range(0..=width));
            width += 2;
        }
        let len = rng.gen_range(2..=7);
        let word = (0..len).map(|_| (rng.gen_range(0..width - 1), rng.gen_bool(0.5))).collect();
        Closure { circles, word }
    }

    pub fn apply(&self, t: FourTangle) -> ColoredDiagram {
        let mut m = t.build();
        for &pos in &self.circles {
            m.cup(pos, 2, None);
        }
        for &(pos, s) in &self.word {
            m.cross(pos, s);
        }
        while m.width() > 0 {
            m.cap(0);
        }
        m.finish()
    }
}

/// Brackets of all six tangles under one closure.
pub fn closed_values(ctx: &PrimeContext, c: &Closure) -> Result<Vec<CycloElem>> {
    FourTangle::ALL.iter().map(|&t| c.apply(t).bracket(ctx)).collect()
}

/// Residuals of the three identities (each zero when it holds), given the
/// brackets `[L0, L∞, L+, X, VBar, HBar]` of one closure:
/// `L+ = A⁴L0 + A⁻⁴L∞ − δX`;
/// `VBar = (A⁴−1)δ⁻¹L0 + A⁻⁴δ⁻¹L∞ − δ⁻¹L+`;
/// `(A⁴−1+A⁻⁴)L0 = A⁻⁴δ HBar + (1−A⁻⁴)δ VBar + L+`.
pub fn residuals(ctx: &PrimeContext, v: &[CycloElem]) -> [CycloElem; 3] {
    let (l0, li, lp, x, vb, hb) = (&v[0], &v[1], &v[2], &v[3], &v[4], &v[5]);
    let a4 = ctx.a_pow(4);
    let am4 = ctx.a_pow(-4);
    let one = ctx.one();
    let delta = ctx.delta();
    let dinv = delta.inverse().expect("δ is invertible");
    let kl = lp - &(&(&(&a4 * l0) + &(&am4 * li)) - &(&delta * x));
    let ibar = vb - &(&(&(&(&(&a4 - &one) * &dinv) * l0) + &(&(&am4 * &dinv) * li)) - &(&dinv * lp));
    let lhs = &(&(&a4 - &one) + &am4) * l0;
    let rhs = &(&(&(&am4 * &delta) * hb) + &(&(&(&one - &am4) * &delta) * vb)) + lp;
    [kl, ibar, &lhs - &rhs]
}

/// Outcome of the skein identity checks at one prime.
#[derive(Clone, Debug, Serialize)]
pub struct LemmaReport {
    pub p: usize,
    pub seed: u64,
    pub closures: usize,
    pub crossing_expansion: bool,
    pub ibar_expansion: bool,
    pub two_y_identity: bool,
}

impl LemmaReport {
    pub fn pass(&self) -> bool {
        self.crossing_expansion && self.ibar_expansion && self.two_y_identity
    }
}

/// Check the identities under `count` seeded random closures, skipping
/// closures where every bracket vanishes.
pub fn check_lemmas(ctx: &PrimeContext, count: usize, seed: u64) -> Result<LemmaReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ok = [true; 3];
    let mut done = 0;
    while done < count {
        let c = Closure::random(&mut rng);
        let v = closed_values(ctx, &c)?;
        if v.iter().all(CycloElem::is_zero) {
            continue;
        }
        for (k, r) in residuals(ctx, &v).iter().enumerate() {
            ok[k] &= r.is_zero();
        }
        done += 1;
    }
    Ok(LemmaReport {
        p: ctx.p(),
        seed,
        closures: count,
        crossing_expansion: ok[0],
        ibar_expansion: ok[1],
        two_y_identity: ok[2],
    })
}
