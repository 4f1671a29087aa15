//! Quantum invariants of closed 3-manifolds from surgery presentations, the
//! mapping-torus family, valuations and the cut-number bound, and the
//! lollipop divisibility suite.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cyclo::{CycloElem, PrimeContext};
use crate::error::{Error, Result};
use crate::linalg;
use crate::lollipop::LollipopTree;
use crate::planar::{ColoredDiagram, Component, Morse, Role};
use crate::recoupling::RecouplingTable;

/// A framed link in `S³` whose `Surgery` components are ω-colored at
/// evaluation time; all other components keep their colors.
#[derive(Clone, Debug)]
pub struct SurgeryPresentation {
    pub link: ColoredDiagram,
}

/// Value of `I_p` with its `h`-valuation and the derived cut-number bound.
#[derive(Clone, Debug, Serialize)]
pub struct InvariantResult {
    pub value: CycloElem,
    /// `None` when the value is zero.
    pub o_p: Option<u32>,
    pub cut_bound: Option<u32>,
}

impl InvariantResult {
    pub fn new(ctx: &PrimeContext, value: CycloElem) -> Result<InvariantResult> {
        let o_p = ctx.h_valuation(&value)?;
        let cut_bound = o_p.map(|o| cut_bound(o, ctx.d()));
        Ok(InvariantResult { value, o_p, cut_bound })
    }
}

/// `⌊o_p / (d − 1)⌋`.
pub fn cut_bound(o_p: u32, d: usize) -> u32 {
    o_p / (d as u32 - 1)
}

impl SurgeryPresentation {
    pub fn new(link: ColoredDiagram) -> SurgeryPresentation {
        SurgeryPresentation { link }
    }

    /// One representative edge per surgery component.
    pub fn surgery_edges(&self) -> Vec<usize> {
        self.link.components.iter().filter(|c| c.role == Role::Surgery).map(|c| c.edge).collect()
    }

    /// Linking matrix of the surgery components, with the target framings
    /// (or blackboard writhes) on the diagonal.
    pub fn framing_matrix(&self) -> Result<Vec<Vec<i64>>> {
        let comps: Vec<_> = self.link.components.iter().filter(|c| c.role == Role::Surgery).collect();
        let n = comps.len();
        let mut m = vec![vec![0; n]; n];
        for i in 0..n {
            m[i][i] = match comps[i].framing {
                Some(f) => f,
                None => self.link.writhe(comps[i].edge)?,
            };
            for j in i + 1..n {
                let l = self.link.linking(comps[i].edge, comps[j].edge)?;
                m[i][j] = l;
                m[j][i] = l;
            }
        }
        Ok(m)
    }

    /// Mark the closed component carrying `label` as a surgery component.
    pub fn mark_surgery(&mut self, label: usize, framing: i64) -> Result<()> {
        let edge = *self
            .link
            .labels
            .iter()
            .find(|(_, &l)| l == label)
            .ok_or_else(|| Error::Diagram(format!("no component labelled {label}")))?
            .0;
        self.link.components.push(Component { edge, framing: Some(framing), role: Role::Surgery, name: None });
        Ok(())
    }

    /// Unlink with the given framings.
    pub fn unlink(framings: &[i64]) -> Result<SurgeryPresentation> {
        let mut m = Morse::new();
        for k in 0..framings.len() {
            m.cup(2 * k, 1, Some(k));
        }
        for k in (0..framings.len()).rev() {
            m.cap(2 * k);
        }
        let mut pres = SurgeryPresentation::new(m.finish());
        for (k, &f) in framings.iter().enumerate() {
            pres.mark_surgery(k, f)?;
        }
        Ok(pres)
    }

    /// Hopf link with linking number `+1` (`positive`) or `−1` and the
    /// given framings.
    pub fn hopf(f1: i64, f2: i64, positive: bool) -> Result<SurgeryPresentation> {
        let mut m = Morse::new();
        m.cup(0, 1, Some(0)).cup(2, 1, Some(1)).pure_braid(1, 2, positive).cap(2).cap(0);
        let mut pres = SurgeryPresentation::new(m.finish());
        pres.mark_surgery(0, f1)?;
        pres.mark_surgery(1, f2)?;
        Ok(pres)
    }

    /// `(σ₊, σ₋)` of the framing matrix.
    pub fn signature(&self) -> Result<(usize, usize)> {
        let m: Vec<Vec<BigRational>> = self
            .framing_matrix()?
            .into_iter()
            .map(|r| r.into_iter().map(|x| BigRational::from_integer(BigInt::from(x))).collect())
            .collect();
        linalg::signature(&m)
    }
}

/// Bracket with the given closed components colored ω, expanded linearly.
pub fn omega_bracket(link: &ColoredDiagram, omega_edges: &[usize], table: &RecouplingTable) -> Result<CycloElem> {
    let ctx = table.ctx();
    let w = table.omega()?;
    let d = ctx.d();
    let n = omega_edges.len();
    let mut acc = ctx.zero();
    let mut idx = vec![0usize; n];
    loop {
        let mut coef = ctx.one();
        for &k in &idx {
            coef = &coef * &w.coords[k];
        }
        if !coef.is_zero() {
            let mut g = link.clone();
            for (e, &k) in omega_edges.iter().zip(&idx) {
                g.recolor_component(*e, k as i64)?;
            }
            acc = &acc + &(&coef * &g.bracket(ctx)?);
        }
        // Next multi-index.
        let mut t = 0;
        while t < n {
            idx[t] += 1;
            if idx[t] < d {
                break;
            }
            idx[t] = 0;
            t += 1;
        }
        if t == n {
            return Ok(acc);
        }
    }
}

/// `⟨U_±(ω)⟩ = Σ_k ω_k μ_k^{±1} Δ_k`.
pub fn omega_unknot(table: &RecouplingTable, positive: bool) -> Result<CycloElem> {
    let ctx = table.ctx();
    let w = table.omega()?;
    let mut acc = ctx.zero();
    for (k, c) in w.coords.iter().enumerate() {
        let mu = table.twist(k as i64)?.powi(if positive { 1 } else { -1 })?;
        acc = &acc + &(&(c * &mu) * &table.loop_value(k as i64)?);
    }
    Ok(acc)
}

/// `I_p(M, L)`: the ω-expanded bracket divided by `⟨U_+(ω)⟩^{σ₊} ⟨U_−(ω)⟩^{σ₋}`.
/// The empty presentation gives 1 and the 0-framed unknot gives `D`.
pub fn eval_surgery(pres: &SurgeryPresentation, table: &RecouplingTable) -> Result<InvariantResult> {
    let ctx = table.ctx();
    let raw = omega_bracket(&pres.link, &pres.surgery_edges(), table)?;
    let (sp, sn) = pres.signature()?;
    let up = omega_unknot(table, true)?;
    let un = omega_unknot(table, false)?;
    if up.is_zero() || un.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let norm = &up.powi(sp as i64)? * &un.powi(sn as i64)?;
    let value = raw.checked_div(&norm)?;
    InvariantResult::new(ctx, value)
}

/// Closed form `D Σ_{j<d} ζ^{2nj(j+1)} (d − j)²`.
pub fn mapping_torus_closed(ctx: &PrimeContext, n: i64) -> CycloElem {
    let d = ctx.d() as i64;
    let mut acc = ctx.zero();
    for j in 0..d {
        let m = (d - j) * (d - j);
        acc = &acc + &ctx.zeta_pow(2 * n * j * (j + 1)).scale_int(&BigInt::from(m));
    }
    &acc * ctx.d_const()
}

/// `D · tr(τⁿ)` with τ the twist on the separating curve of the genus-two
/// surface, acting on the eyeglass basis by `μ_{2a}`.
pub fn mapping_torus_trace(table: &RecouplingTable, n: i64) -> Result<CycloElem> {
    let ctx = table.ctx();
    let mut acc = ctx.zero();
    for col in LollipopTree::eyeglass().small_colorings(ctx.p())? {
        acc = &acc + &table.twist(2 * col.a[0])?.powi(n)?;
    }
    Ok(&acc * ctx.d_const())
}

/// The mapping torus `M_n` of the `n`-th power of a separating twist on a
/// genus-two surface. Both computation paths must agree.
pub fn mapping_torus_invariant(table: &RecouplingTable, n: i64) -> Result<InvariantResult> {
    let ctx = table.ctx();
    let closed = mapping_torus_closed(ctx, n);
    let trace = mapping_torus_trace(table, n)?;
    if closed != trace {
        return Err(Error::Invalid(format!("mapping torus paths disagree at n = {n}")));
    }
    InvariantResult::new(ctx, closed)
}

/// One sample of the lollipop suite.
#[derive(Clone, Debug, Serialize)]
pub struct LollipopSample {
    pub index: usize,
    pub sticks: Vec<i64>,
    pub v_circles: usize,
    pub crossings: usize,
    pub bound: u32,
    pub valuation: Option<u32>,
    pub in_o: bool,
    pub pass: bool,
}

/// Summary of the lollipop divisibility suite.
#[derive(Clone, Debug, Serialize)]
pub struct LollipopReport {
    pub p: usize,
    pub seed: u64,
    pub samples: Vec<LollipopSample>,
    pub split_basic_zero: bool,
    pub pass: bool,
}

/// A v-graph in `S³` built from dumbbells (two lollipops sharing a stick),
/// `v`-colored circles and colored circles, tangled by pure braids.
#[derive(Clone, Debug)]
pub struct VGraph {
    pub diagram: ColoredDiagram,
    /// Representative edges of the `v`-colored circles.
    pub v_edges: Vec<usize>,
    /// Half stick colors `a_i`, one per lollipop.
    pub a: Vec<i64>,
}

impl VGraph {
    /// `⟨L⟩` with each `v` circle expanded as `h⁻¹(2 + z)`.
    pub fn evaluate(&self, ctx: &PrimeContext) -> Result<CycloElem> {
        let n = self.v_edges.len();
        let mut acc = ctx.zero();
        for mask in 0u32..(1 << n) {
            let mut g = self.diagram.clone();
            let mut coef = ctx.one();
            for (k, &e) in self.v_edges.iter().enumerate() {
                if mask >> k & 1 == 1 {
                    g.recolor_component(e, 1)?;
                } else {
                    g.recolor_component(e, 0)?;
                    coef = coef.scale_int(&BigInt::from(2));
                }
            }
            acc = &acc + &(&coef * &g.bracket(ctx)?);
        }
        Ok(&acc * &ctx.h_inv().powi(n as i64)?)
    }

    /// Lower bound `⌈½ Σ a_i⌉` on the `h`-valuation.
    pub fn bound(&self) -> u32 {
        let s: i64 = self.a.iter().sum();
        ((s + 1) / 2) as u32
    }
}

/// Pieces of a random v-graph, in left-to-right order.
#[derive(Clone, Debug)]
enum Piece {
    /// Loops colored `l1`, `l2` joined by a stick colored `2a`.
    Dumbbell { l1: i64, l2: i64, a: i64 },
    VCircle,
    Circle(i64),
}

impl Piece {
    fn width(&self) -> usize {
        match self {
            Piece::Dumbbell { .. } => 4,
            _ => 2,
        }
    }
}

/// Random v-graph at prime `p` whose cabled width stays within `max_width`.
pub fn random_vgraph(p: usize, rng: &mut ChaCha8Rng, max_width: i64) -> VGraph {
    let m = p as i64 - 2;
    loop {
        let mut pieces = Vec::new();
        let mut width = 0i64;
        let count = rng.gen_range(1..=3);
        for _ in 0..count {
            let piece = match rng.gen_range(0..5) {
                0..=2 => {
                    // Stick 2a with loops l >= a and l + a <= p - 2.
                    let a = rng.gen_range(0..=m / 2);
                    let l1 = rng.gen_range(a.max(1)..=(m - a).max(a.max(1)));
                    let l2 = rng.gen_range(a.max(1)..=(m - a).max(a.max(1)));
                    Piece::Dumbbell { l1, l2, a }
                }
                3 => Piece::VCircle,
                _ => Piece::Circle(rng.gen_range(1..=m)),
            };
            width += match &piece {
                Piece::Dumbbell { l1, l2, .. } => 2 * (l1 + l2),
                Piece::VCircle => 2,
                Piece::Circle(c) => 2 * c,
            };
            pieces.push(piece);
        }
        if width > max_width {
            continue;
        }
        if !pieces.iter().any(|x| matches!(x, Piece::Dumbbell { a, .. } if *a > 0)) {
            continue;
        }
        let total: usize = pieces.iter().map(Piece::width).sum();
        let braids = rng.gen_range(1..=4);
        let moves: Vec<(usize, usize, bool)> = (0..braids)
            .map(|_| {
                let i = rng.gen_range(0..total - 1);
                let j = rng.gen_range(i + 1..total);
                (i, j, rng.gen_bool(0.5))
            })
            .collect();
        return build_vgraph(&pieces, &moves);
    }
}

fn build_vgraph(pieces: &[Piece], moves: &[(usize, usize, bool)]) -> VGraph {
    let mut mo = Morse::new();
    let mut pos = 0;
    let mut a = Vec::new();
    let mut v_labels = Vec::new();
    for (k, piece) in pieces.iter().enumerate() {
        match *piece {
            Piece::Dumbbell { l1, l2, a: s } => {
                mo.cup(pos, l1, None).cup(pos + 2, l2, None);
                if s > 0 {
                    mo.split(pos + 1, (l1, None), (2 * s, None)).merge(pos + 2, l2, None);
                }
                a.push(s);
                a.push(s);
            }
            Piece::VCircle => {
                mo.cup(pos, 1, Some(k));
                v_labels.push(k);
            }
            Piece::Circle(c) => {
                mo.cup(pos, c, None);
            }
        }
        pos += piece.width();
    }
    for &(i, j, s) in moves {
        mo.pure_braid(i, j, s);
    }
    for piece in pieces.iter().rev() {
        pos -= piece.width();
        if piece.width() == 4 {
            mo.cap(pos + 2);
        }
        mo.cap(pos);
    }
    let diagram = mo.finish();
    let v_edges = v_labels
        .iter()
        .map(|l| *diagram.labels.iter().find(|(_, &x)| x == *l).expect("labelled v circle").0)
        .collect();
    VGraph { diagram, v_edges, a }
}

/// A basic lollipop (stick 2, loop 1) split off from a dumbbell whose other
/// loop is tangled with a colored circle.
pub fn split_basic_lollipop(p: usize) -> VGraph {
    let m = p as i64 - 2;
    let pieces = [Piece::Dumbbell { l1: 1, l2: 1, a: 1 }, Piece::Circle(m.min(2))];
    // Tangle only the far loop (strands 2, 3) with the circle (strands 4, 5).
    build_vgraph(&pieces, &[(3, 4, true), (2, 5, false)])
}

/// Checks `v_h(⟨L⟩) ≥ ⌈½ Σ a_i⌉` on seeded random v-graphs, and that a split
/// basic lollipop evaluates to zero.
pub fn lollipop_divisibility_suite(ctx: &PrimeContext, samples: usize, seed: u64) -> Result<LollipopReport> {
    use rayon::prelude::*;
    let p = ctx.p();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let graphs: Vec<VGraph> = (0..samples).map(|_| random_vgraph(p, &mut rng, 16)).collect();
    let out: Result<Vec<LollipopSample>> = graphs
        .par_iter()
        .enumerate()
        .map(|(index, g)| {
            let val = g.evaluate(ctx)?;
            let in_o = val.in_o();
            let valuation = if in_o { ctx.h_valuation(&val)? } else { None };
            let bound = g.bound();
            let pass = in_o && valuation.map_or(true, |v| v >= bound);
            Ok(LollipopSample {
                index,
                sticks: g.a.iter().map(|x| 2 * x).collect(),
                v_circles: g.v_edges.len(),
                crossings: g.diagram.crossings.len(),
                bound,
                valuation,
                in_o,
                pass,
            })
        })
        .collect();
    let samples = out?;
    let split_basic_zero = split_basic_lollipop(p).evaluate(ctx)?.is_zero();
    let pass = split_basic_zero && samples.iter().all(|s| s.pass);
    Ok(LollipopReport { p, seed, samples, split_basic_zero, pass })
}
