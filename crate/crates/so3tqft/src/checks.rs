//! Named end-to-end checks, one per headline property, shared by the CLI and
//! the acceptance suite.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cyclo::{make_context, CycloElem, PrimeContext};
use crate::error::{Error, Result};
use crate::fkb::{fkb_ideal, one_plus_two_zeta_cubed, KnotInSolidTorus};
use crate::invariants::{
    eval_surgery, lollipop_divisibility_suite, mapping_torus_closed, mapping_torus_trace, split_basic_lollipop,
    InvariantResult, SurgeryPresentation,
};
use crate::lattice::{det_valuation, GramMethod, Space};
use crate::lollipop::LollipopTree;
use crate::planar::{shapes, tangles};
use crate::recoupling::RecouplingTable;

/// Optional narrowing of a check to one prime or genus, plus the seed for
/// sampled checks.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct Scope {
    pub p: Option<u64>,
    pub genus: Option<usize>,
    pub seed: u64,
    pub samples: usize,
}

impl Default for Scope {
    fn default() -> Scope {
        Scope { p: None, genus: None, seed: 2024, samples: 100 }
    }
}

impl Scope {
    fn primes(&self, all: &[u64]) -> Vec<u64> {
        match self.p {
            Some(p) => vec![p],
            None => all.to_vec(),
        }
    }

    fn genera(&self, max: usize) -> Vec<usize> {
        match self.genus {
            Some(g) => vec![g],
            None => (0..=max).collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckOutcome {
    pub key: &'static str,
    pub title: &'static str,
    pub pass: bool,
    pub detail: String,
}

type CheckFn = fn(&Scope) -> Result<(bool, String)>;

/// A named check with accepted aliases.
pub struct Check {
    pub key: &'static str,
    pub aliases: &'static [&'static str],
    pub title: &'static str,
    pub run: CheckFn,
}

pub const CHECKS: &[Check] = &[
    Check { key: "dims", aliases: &["dimensions"], title: "dimension counts", run: check_dims },
    Check { key: "index-identity", aliases: &["prop9.1"], title: "N + N' = g(d-1) dim", run: check_index },
    Check { key: "recoupling-oracle", aliases: &[], title: "recoupling values match the planar engine", run: check_recoupling },
    Check { key: "skein-lemmas", aliases: &[], title: "three-ball skein identities", run: check_skein },
    Check { key: "lattice-duality", aliases: &[], title: "integrality and unimodular duality", run: check_duality },
    Check { key: "lollipop-suite", aliases: &[], title: "lollipop divisibility", run: check_lollipop },
    Check { key: "mapping-torus", aliases: &[], title: "mapping-torus family", run: check_mapping_torus },
    Check { key: "surgery-calibration", aliases: &[], title: "surgery calibration and handle slides", run: check_surgery },
    Check { key: "fkb-l9a12", aliases: &[], title: "obstruction ideal of N(k)", run: check_fkb },
    Check { key: "torsion", aliases: &[], title: "mod-h forms at p = 7, genus 2", run: check_torsion },
];

pub fn find(key: &str) -> Option<&'static Check> {
    CHECKS.iter().find(|c| c.key == key || c.aliases.contains(&key))
}

pub fn run(check: &Check, scope: &Scope) -> CheckOutcome {
    let (pass, detail) = match (check.run)(scope) {
        Ok(r) => r,
        Err(e) => (false, format!("error: {e}")),
    };
    CheckOutcome { key: check.key, title: check.title, pass, detail }
}

pub fn run_all(scope: &Scope) -> Vec<CheckOutcome> {
    CHECKS.iter().map(|c| run(c, scope)).collect()
}

fn ctx(p: u64) -> Result<PrimeContext> {
    make_context(p)
}

/// Nondecreasing `s`-tuples of point colors in `[0, p − 2]`.
fn point_tuples(p: u64, s: usize) -> Vec<Vec<i64>> {
    let m = p as i64 - 2;
    let mut out = vec![vec![]];
    for _ in 0..s {
        let mut next = Vec::new();
        for t in &out {
            let lo = t.last().copied().unwrap_or(0);
            for c in lo..=m {
                let mut u = t.clone();
                u.push(c);
                next.push(u);
            }
        }
        out = next;
    }
    out
}

fn sweep(scope: &Scope, mut f: impl FnMut(u64, usize, &[i64]) -> Result<bool>) -> Result<(bool, usize)> {
    let mut ok = true;
    let mut count = 0;
    for p in scope.primes(&[5, 7, 11, 13]) {
        for g in scope.genera(3) {
            for s in 0..=4 {
                for pts in point_tuples(p, s) {
                    if g == 0 && pts.is_empty() {
                        continue;
                    }
                    ok &= f(p, g, &pts)?;
                    count += 1;
                }
            }
        }
    }
    Ok((ok, count))
}

/// Verlinde count `Σ_j (Δ_j / D)^{2−2g} Π_k S_{c_k j} / Δ_j` over even `j`,
/// with the per-prime factors cached.
struct Verlinde {
    ctx: PrimeContext,
    genus_factor: Vec<Vec<CycloElem>>,
    point_factor: Vec<Vec<CycloElem>>,
    memo: HashMap<Vec<i64>, Vec<CycloElem>>,
}

impl Verlinde {
    fn new(p: u64) -> Result<Verlinde> {
        let ctx = make_context(p)?;
        let t = RecouplingTable::new(&ctx);
        let js: Vec<i64> = (0..=p as i64 - 3).step_by(2).collect();
        let mut genus_factor = Vec::new();
        for g in 0..=3i64 {
            let row = js
                .iter()
                .map(|&j| (&t.loop_value(j)? / ctx.d_const()).powi(2 - 2 * g))
                .collect::<Result<Vec<_>>>()?;
            genus_factor.push(row);
        }
        let point_factor = (0..=p as i64 - 2)
            .map(|c| js.iter().map(|&j| t.encircle_eigenvalue(c, j)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(Verlinde { ctx, genus_factor, point_factor, memo: HashMap::new() })
    }

    /// `Π_k S_{c_k j} / Δ_j` for each `j`, memoized on prefixes of `pts`.
    fn point_product(&mut self, pts: &[i64]) -> Vec<CycloElem> {
        if let Some(v) = self.memo.get(pts) {
            return v.clone();
        }
        let v = match pts.split_last() {
            None => vec![self.ctx.one(); self.point_factor[0].len()],
            Some((&c, rest)) => {
                let head = self.point_product(rest);
                head.iter().zip(&self.point_factor[c as usize]).map(|(a, b)| a * b).collect()
            }
        };
        self.memo.insert(pts.to_vec(), v.clone());
        v
    }

    fn count(&mut self, g: usize, pts: &[i64]) -> Option<u128> {
        let prod = self.point_product(pts);
        let acc = self.genus_factor[g].iter().zip(&prod).fold(self.ctx.zero(), |acc, (a, b)| &acc + &(a * b));
        acc.as_rational().filter(|q| q.is_integer()).and_then(|q| q.to_integer().try_into().ok())
    }
}

/// Listing every coloring is skipped above this dimension.
const LISTING_CAP: u128 = 10_000;

fn check_dims(scope: &Scope) -> Result<(bool, String)> {
    let mut ok = true;
    for p in scope.primes(&[5, 7, 11, 13]) {
        let d = (p as usize - 1) / 2;
        ok &= LollipopTree::torus().dim(p as usize)? == d;
        ok &= LollipopTree::eyeglass().dim(p as usize)? == d * (d + 1) * (2 * d + 1) / 6;
    }
    if scope.p.is_none() || scope.p == Some(5) {
        ok &= LollipopTree::eyeglass().dim(5)? == 5;
    }
    let mut cache: Vec<(u64, Verlinde)> = Vec::new();
    let mut listed = 0;
    let (agree, n) = sweep(scope, |p, g, pts| {
        if !cache.iter().any(|(q, _)| *q == p) {
            cache.push((p, Verlinde::new(p)?));
        }
        let v = &mut cache.iter_mut().find(|(q, _)| *q == p).expect("cached").1;
        let tree = LollipopTree::standard(g, pts);
        let dim = tree.stats(p as usize)?.dim;
        // Vertex parity forces an even total point color.
        let mut same = if pts.iter().sum::<i64>() % 2 == 0 { v.count(g, pts) == Some(dim) } else { dim == 0 };
        if dim <= LISTING_CAP {
            same &= tree.small_colorings(p as usize)?.len() as u128 == dim;
            listed += 1;
        }
        Ok(same)
    })?;
    Ok((
        ok && agree,
        format!("{n} trees agree with the Verlinde count (odd point totals: dimension 0), {listed} also by listing colorings"),
    ))
}

fn check_index(scope: &Scope) -> Result<(bool, String)> {
    let (ok, n) = sweep(scope, |p, g, pts| Ok(LollipopTree::standard(g, pts).stats(p as usize)?.holds()))?;
    Ok((ok, format!("{n} trees")))
}

fn check_recoupling(scope: &Scope) -> Result<(bool, String)> {
    let mut ok = true;
    let mut count = 0;
    for p in scope.primes(&[5, 7]) {
        let c = ctx(p)?;
        let t = RecouplingTable::new(&c);
        let m = p as i64 - 2;
        let mut cmp = |a: CycloElem, b: CycloElem| {
            ok &= a == b;
            count += 1;
        };
        if p == 5 {
            for n in 0..=m {
                cmp(shapes::unknot(n, 0).bracket(&c)?, t.loop_value(n)?);
                cmp(shapes::unknot(n, 1).bracket(&c)?, &t.twist(n)? * &t.loop_value(n)?);
                for j in 0..=m {
                    cmp(shapes::hopf(n, j).bracket(&c)?, t.hopf_entry(n, j)?);
                    for k in 0..=m {
                        if t.admissible(n, j, k) {
                            cmp(shapes::theta(n, j, k).bracket(&c)?, t.theta(n, j, k)?);
                        }
                    }
                }
            }
            let k = m + 1;
            for x in 0..k.pow(6) {
                let v: Vec<i64> = (0..6).map(|i| x / k.pow(i) % k).collect();
                let (a, b, e, cc, d, f) = (v[0], v[1], v[2], v[3], v[4], v[5]);
                if [(a, d, e), (b, cc, e), (a, b, f), (cc, d, f)].iter().all(|&(u, w, z)| t.admissible(u, w, z)) {
                    cmp(shapes::tetrahedron(a, b, e, cc, d, f).bracket(&c)?, t.tet(a, b, e, cc, d, f)?);
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(scope.seed);
            let mut done = 0;
            while done < 50 {
                let x: [i64; 6] = std::array::from_fn(|_| rng.gen_range(0..=m));
                let [a, b, e, cc, d, f] = x;
                if ![(a, d, e), (b, cc, e), (a, b, f), (cc, d, f)].iter().all(|&(u, w, z)| t.admissible(u, w, z)) {
                    continue;
                }
                done += 1;
                cmp(shapes::tetrahedron(a, b, e, cc, d, f).bracket(&c)?, t.tet(a, b, e, cc, d, f)?);
                cmp(shapes::theta(a, d, e).bracket(&c)?, t.theta(a, d, e)?);
                cmp(shapes::hopf(a, b).bracket(&c)?, t.hopf_entry(a, b)?);
                cmp(shapes::unknot(f, 0).bracket(&c)?, t.loop_value(f)?);
                cmp(shapes::unknot(cc, 1).bracket(&c)?, &t.twist(cc)? * &t.loop_value(cc)?);
            }
        }
    }
    Ok((ok, format!("{count} comparisons")))
}

fn check_skein(scope: &Scope) -> Result<(bool, String)> {
    let mut ok = true;
    let mut parts = Vec::new();
    for p in scope.primes(&[5, 7]) {
        let r = tangles::check_lemmas(&ctx(p)?, 5, scope.seed)?;
        ok &= r.pass();
        parts.push(format!("p={p}: {} closures", r.closures));
    }
    Ok((ok, parts.join(", ")))
}

fn duality_at(tree: &LollipopTree, p: u64) -> Result<bool> {
    let s = Space::new(tree, &ctx(p)?)?;
    let c = s.ctx();
    let g = s.gram_graph(GramMethod::Fusion)?;
    let expect = (s.genus() * (c.d() - 1) * s.dim()) as u32;
    let val_ok = det_valuation(c, &g)? == Some(expect);
    let gb = s.gram_b()?;
    let dp = s.dual_pairing()?;
    Ok(val_ok && gb.all_in_o() && dp.all_in_o() && c.is_unit(&dp.det(c)?)?)
}

fn check_duality(scope: &Scope) -> Result<(bool, String)> {
    let mut ok = true;
    let mut n = 0;
    for (g, p) in [(1, 5), (1, 7), (2, 5)] {
        if scope.p.is_some_and(|q| q != p) || scope.genus.is_some_and(|h| h != g) {
            continue;
        }
        ok &= duality_at(&LollipopTree::standard(g, &[]), p)?;
        n += 1;
    }
    Ok((ok && n > 0, format!("{n} surfaces")))
}

fn check_lollipop(scope: &Scope) -> Result<(bool, String)> {
    let c = ctx(scope.p.unwrap_or(5))?;
    let split_zero = split_basic_lollipop(c.p()).evaluate(&c)?.is_zero();
    let r = lollipop_divisibility_suite(&c, scope.samples.max(100), scope.seed)?;
    let nonzero = r.samples.iter().filter(|s| s.valuation.is_some()).count();
    Ok((
        split_zero && r.pass,
        format!("{} v-graphs ({nonzero} nonzero), split lollipop zero: {split_zero}", r.samples.len()),
    ))
}

fn check_mapping_torus(scope: &Scope) -> Result<(bool, String)> {
    let mut ok = true;
    let mut n_checked = 0;
    for p in scope.primes(&[5, 7, 11, 13]) {
        let t = RecouplingTable::new(&ctx(p)?);
        let c = t.ctx();
        let d = c.d() as u32;
        for n in 0..=2 * p as i64 {
            let closed = mapping_torus_closed(c, n);
            ok &= closed == mapping_torus_trace(&t, n)?;
            if n % p as i64 != 0 {
                let r = InvariantResult::new(c, closed)?;
                ok &= r.o_p == Some(2 * d - 2) && r.cut_bound == Some(2);
            }
            n_checked += 1;
        }
    }
    Ok((ok, format!("{n_checked} (p, n) pairs")))
}

fn check_surgery(scope: &Scope) -> Result<(bool, String)> {
    let mut ok = true;
    for p in scope.primes(&[5, 7]) {
        let t = RecouplingTable::new(&ctx(p)?);
        let val = |pres: SurgeryPresentation| eval_surgery(&pres, &t).map(|r| r.value);
        ok &= val(SurgeryPresentation::unlink(&[])?)?.is_one();
        ok &= val(SurgeryPresentation::unlink(&[1])?)?.is_one();
        ok &= val(SurgeryPresentation::unlink(&[-1])?)?.is_one();
        ok &= &val(SurgeryPresentation::unlink(&[0])?)? == t.ctx().d_const();
        for ((a, b), (c, e)) in [((1, 1), (2, 1)), ((0, 1), (1, 1)), ((1, -1), (0, -1))] {
            let u = val(SurgeryPresentation::unlink(&[a, b])?)?;
            for positive in [true, false] {
                ok &= u == val(SurgeryPresentation::hopf(c, e, positive)?)?;
            }
        }
    }
    Ok((ok, "S^3 from three presentations, S^1 x S^2 = D, 3 handle-slide pairs".into()))
}

fn check_fkb(_scope: &Scope) -> Result<(bool, String)> {
    let t = RecouplingTable::new(&ctx(5)?);
    let target = one_plus_two_zeta_cubed(t.ctx());
    let mut ok = target.index() == Some(11.into());
    let mut non_unit = Vec::new();
    for k in 1..=10 {
        let j = fkb_ideal(&KnotInSolidTorus::l9a12(k), &t, true)?;
        if k % 5 == 0 {
            ok &= j == target;
            non_unit.push(k);
        } else {
            ok &= j.is_unit();
        }
    }
    Ok((ok, format!("k in {non_unit:?}: (1+2z^3) of index 11; other k in 1..=10: unit ideal")))
}

fn check_torsion(scope: &Scope) -> Result<(bool, String)> {
    let p = scope.p.unwrap_or(7);
    let g = scope.genus.unwrap_or(2);
    if p % 4 != 3 {
        return Err(Error::Invalid("torsion check needs p ≡ 3 (mod 4)".into()));
    }
    let s = Space::new(&LollipopTree::standard(g, &[]), &ctx(p)?)?;
    let r = s.torsion_report()?;
    Ok((
        r.holds(),
        format!(
            "dim {}, radical {}, odd colorings {}, symmetric {}, skew {}, non-degenerate {}",
            r.dim, r.radical_dim, r.odd_colorings, r.symmetric, r.skew, r.skew_nondegenerate
        ),
    ))
}
