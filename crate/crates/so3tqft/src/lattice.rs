//! Coordinates on the space of a lollipop tree, multiplication by the hole
//! curves `z_i`, the bases `B` and `B♯`, their Gram matrices and the mod-`h`
//! torsion forms.
//!
//! Vectors are coordinate vectors over the small graph basis `g(a,b,c)` in
//! canonical order. The hermitian form conjugates its second argument.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cyclo::{CycloElem, PrimeContext, RingKind};
use crate::error::{Error, Result};
use crate::invariants::omega_bracket;
use crate::linalg::{self, Fp, Matrix};
use crate::lollipop::{exponent_b, exponent_bsharp, EdgeKind, Graph, LollipopTree, SmallColoring};
use crate::planar::Morse;
use crate::recoupling::RecouplingTable;

/// A vector of the space attached to a tree, in small graph basis coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct HandlebodyVector {
    pub coords: Vec<CycloElem>,
}

impl HandlebodyVector {
    pub fn scale(&self, c: &CycloElem) -> HandlebodyVector {
        HandlebodyVector { coords: self.coords.iter().map(|x| x * c).collect() }
    }

    pub fn add(&self, o: &HandlebodyVector) -> HandlebodyVector {
        HandlebodyVector { coords: self.coords.iter().zip(&o.coords).map(|(x, y)| x + y).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(CycloElem::is_zero)
    }

    /// Indices of nonzero coordinates.
    pub fn support(&self) -> Vec<usize> {
        (0..self.coords.len()).filter(|&i| !self.coords[i].is_zero()).collect()
    }
}

/// Which hermitian form a Gram matrix represents.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum FormKind {
    Standard,
    /// Multiplied by `i^g`; `(−1)^g`-hermitian.
    Plus,
}

/// A Gram matrix with its row labels.
#[derive(Clone, Debug)]
pub struct GramMatrix {
    pub labels: Vec<SmallColoring>,
    pub entries: Matrix<CycloElem>,
    pub form_kind: FormKind,
}

impl GramMatrix {
    pub fn is_hermitian(&self) -> bool {
        let sign = match self.form_kind {
            FormKind::Standard => 1,
            FormKind::Plus => if self.labels.first().map_or(0, |c| c.a.len()) % 2 == 0 { 1 } else { -1 },
        };
        let n = self.entries.len();
        (0..n).all(|i| {
            (0..n).all(|j| {
                let c = self.entries[j][i].conj();
                if sign == 1 {
                    self.entries[i][j] == c
                } else {
                    self.entries[i][j] == -c
                }
            })
        })
    }

    pub fn all_in_o(&self) -> bool {
        self.entries.iter().flatten().all(CycloElem::in_o)
    }

    pub fn det(&self, ctx: &PrimeContext) -> Result<CycloElem> {
        linalg::det(&self.entries, &ctx.one())
    }
}

/// How the diagonal Gram entries of the small graph basis are computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GramMethod {
    /// `D^g Π_v θ_v / Π_e Δ_e` over the vertices and non-point edges.
    Fusion,
    /// Doubled graph in `#g S¹×S²` with ω-colored surgery circles.
    /// Available for the torus and the eyeglass.
    Surgery,
}

/// The space of a lollipop tree at a prime, with its small graph basis.
pub struct Space {
    pub tree: LollipopTree,
    pub graph: Graph,
    pub colorings: Vec<SmallColoring>,
    index: HashMap<Vec<i64>, usize>,
    table: RecouplingTable,
    /// Coordinates of loop color `d` in terms of colors `0..d` on a free loop.
    fold: Vec<CycloElem>,
}

impl Space {
    pub fn new(tree: &LollipopTree, ctx: &PrimeContext) -> Result<Space> {
        let colorings = tree.small_colorings(ctx.p())?;
        let index = colorings.iter().enumerate().map(|(i, c)| (c.edges.clone(), i)).collect();
        let table = RecouplingTable::new(ctx);
        let fold = torus_fold(&table)?;
        Ok(Space { tree: tree.clone(), graph: tree.graph(), colorings, index, table, fold })
    }

    pub fn ctx(&self) -> &PrimeContext {
        self.table.ctx()
    }

    pub fn table(&self) -> &RecouplingTable {
        &self.table
    }

    pub fn dim(&self) -> usize {
        self.colorings.len()
    }

    pub fn genus(&self) -> usize {
        self.graph.sticks.len()
    }

    pub fn index_of(&self, edges: &[i64]) -> Option<usize> {
        self.index.get(edges).copied()
    }

    pub fn zero(&self) -> HandlebodyVector {
        HandlebodyVector { coords: vec![self.ctx().zero(); self.dim()] }
    }

    pub fn basis_vector(&self, i: usize) -> HandlebodyVector {
        let mut v = self.zero();
        v.coords[i] = self.ctx().one();
        v
    }

    /// Index of `g(a, 0, c)` for the coloring `col`.
    pub fn base_index(&self, col: &SmallColoring) -> usize {
        let mut edges = col.edges.clone();
        for (i, &l) in self.graph.loop_edges.iter().enumerate() {
            edges[l] = col.a[i];
        }
        self.index[&edges]
    }

    /// Coefficient of loop color `l2` in `z · (loop l)` at a loop whose stick
    /// is colored `2a`: `Δ_{l2}/θ(1,l,l2) · Tet[l l 1; l2 l2 2a]/θ(l2,l2,2a)`.
    pub fn z_coefficient(&self, l: i64, l2: i64, a: i64) -> Result<CycloElem> {
        let t = &self.table;
        let s = 2 * a;
        if l2 < 0 || l2 > self.ctx().p() as i64 - 2 || !t.admissible(1, l, l2) || !t.admissible(l2, l2, s) {
            return Ok(self.ctx().zero());
        }
        let num = &t.loop_value(l2)? * &t.tet(l, l, 1, l2, l2, s)?;
        Ok(num / (&t.theta(1, l, l2)? * &t.theta(l2, l2, s)?))
    }

    /// Multiplication by the curve around hole `hole`.
    pub fn z_multiply(&self, v: &HandlebodyVector, hole: usize) -> Result<HandlebodyVector> {
        if hole >= self.genus() {
            return Err(Error::Invalid(format!("hole {hole} out of range")));
        }
        let d = self.ctx().d() as i64;
        let le = self.graph.loop_edges[hole];
        let mut out = self.zero();
        for (i, x) in v.coords.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let col = &self.colorings[i];
            let l = col.edges[le];
            let a = col.a[hole];
            for l2 in [l - 1, l + 1] {
                let c = self.z_coefficient(l, l2, a)?;
                if c.is_zero() {
                    continue;
                }
                let cx = &c * x;
                if l2 < d {
                    let mut e = col.edges.clone();
                    e[le] = l2;
                    let j = self.index[&e];
                    out.coords[j] = &out.coords[j] + &cx;
                } else if a == 0 {
                    // A free loop colored d, rewritten over colors 0..d.
                    for (k, f) in self.fold.iter().enumerate() {
                        if f.is_zero() {
                            continue;
                        }
                        let mut e = col.edges.clone();
                        e[le] = k as i64;
                        let j = self.index[&e];
                        out.coords[j] = &out.coords[j] + &(&cx * f);
                    }
                } else {
                    return Err(Error::Invalid(format!("loop color {l2} above the small range at a stick 2a = {}", 2 * a)));
                }
            }
        }
        Ok(out)
    }

    /// `(2 + z_i) v`.
    pub fn two_plus_z(&self, v: &HandlebodyVector, hole: usize) -> Result<HandlebodyVector> {
        Ok(self.z_multiply(v, hole)?.add(&v.scale(&self.ctx().int(2))))
    }

    /// `v_i = h⁻¹(2 + z_i)` applied to `v`.
    pub fn v_multiply(&self, v: &HandlebodyVector, hole: usize) -> Result<HandlebodyVector> {
        Ok(self.two_plus_z(v, hole)?.scale(self.ctx().h_inv()))
    }

    fn rescaled_basis(&self, exponent: fn(&SmallColoring) -> i64) -> Result<Vec<HandlebodyVector>> {
        let ctx = self.ctx();
        self.colorings
            .iter()
            .map(|col| {
                let mut v = self.basis_vector(self.base_index(col));
                for (hole, &b) in col.b.iter().enumerate() {
                    for _ in 0..b {
                        v = self.two_plus_z(&v, hole)?;
                    }
                }
                Ok(v.scale(&ctx.h_inv().powi(exponent(col))?))
            })
            .collect()
    }

    /// `b(a,b,c) = h^{−exponent_b} Π (2 + z_i)^{b_i} g(a,0,c)`.
    pub fn basis_b(&self) -> Result<Vec<HandlebodyVector>> {
        self.rescaled_basis(exponent_b)
    }

    /// `b♯(a,b,c) = h^{−exponent_b♯} Π (2 + z_i)^{b_i} g(a,0,c)`.
    pub fn basis_bsharp(&self) -> Result<Vec<HandlebodyVector>> {
        self.rescaled_basis(exponent_bsharp)
    }

    /// Diagonal of the Gram matrix of the small graph basis.
    pub fn gram_graph_diagonal(&self, method: GramMethod) -> Result<Vec<CycloElem>> {
        match method {
            GramMethod::Fusion => self.colorings.iter().map(|c| self.fusion_norm(c)).collect(),
            GramMethod::Surgery => {
                (0..self.dim()).map(|i| self.surgery_pairing(i, i, &[])).collect()
            }
        }
    }

    /// Gram matrix of the small graph basis.
    pub fn gram_graph(&self, method: GramMethod) -> Result<GramMatrix> {
        let diag = self.gram_graph_diagonal(method)?;
        let n = self.dim();
        let mut entries = vec![vec![self.ctx().zero(); n]; n];
        for (i, x) in diag.into_iter().enumerate() {
            entries[i][i] = x;
        }
        Ok(GramMatrix { labels: self.colorings.clone(), entries, form_kind: FormKind::Standard })
    }

    fn fusion_norm(&self, col: &SmallColoring) -> Result<CycloElem> {
        let t = &self.table;
        let ctx = self.ctx();
        let mut num = ctx.d_const().pow(self.genus() as u32);
        for v in &self.graph.vertices {
            num = &num * &t.theta(col.edges[v[0]], col.edges[v[1]], col.edges[v[2]])?;
        }
        let mut den = ctx.one();
        for (e, k) in self.graph.kinds.iter().enumerate() {
            let point = matches!(k, EdgeKind::PointEdge(_)) || (e == self.graph.trunk && self.graph.trunk_point.is_some());
            if !point {
                den = &den * &t.loop_value(col.edges[e])?;
            }
        }
        Ok(num / den)
    }

    /// `(x, y) = Σ_σ x_σ conj(y_σ) G_σ` for the diagonal `G`.
    pub fn pairing(&self, diag: &[CycloElem], x: &HandlebodyVector, y: &HandlebodyVector) -> CycloElem {
        let mut acc = self.ctx().zero();
        for (k, g) in diag.iter().enumerate() {
            if x.coords[k].is_zero() || y.coords[k].is_zero() {
                continue;
            }
            acc = &acc + &(&(&x.coords[k] * &y.coords[k].conj()) * g);
        }
        acc
    }

    /// Matrix of `(x_i, y_j)`.
    pub fn gram_of(&self, diag: &[CycloElem], xs: &[HandlebodyVector], ys: &[HandlebodyVector]) -> Matrix<CycloElem> {
        use rayon::prelude::*;
        xs.par_iter().map(|x| ys.iter().map(|y| self.pairing(diag, x, y)).collect()).collect()
    }

    /// Gram matrix of `B`.
    pub fn gram_b(&self) -> Result<GramMatrix> {
        let diag = self.gram_graph_diagonal(GramMethod::Fusion)?;
        let b = self.basis_b()?;
        Ok(GramMatrix { labels: self.colorings.clone(), entries: self.gram_of(&diag, &b, &b), form_kind: FormKind::Standard })
    }

    /// Matrix of `(b(σ), b♯(σ′))`.
    pub fn dual_pairing(&self) -> Result<GramMatrix> {
        let diag = self.gram_graph_diagonal(GramMethod::Fusion)?;
        let b = self.basis_b()?;
        let bs = self.basis_bsharp()?;
        Ok(GramMatrix { labels: self.colorings.clone(), entries: self.gram_of(&diag, &b, &bs), form_kind: FormKind::Standard })
    }

    /// Coordinates of `x` in the basis `basis` (rows of coordinates).
    pub fn coordinates_in(&self, basis: &[HandlebodyVector], x: &HandlebodyVector) -> Result<Vec<CycloElem>> {
        let m: Matrix<CycloElem> = linalg::transpose(&basis.iter().map(|b| b.coords.clone()).collect::<Vec<_>>());
        linalg::solve(&m, &x.coords).map_err(|_| Error::Singular)
    }

    /// Pairing of two small graph basis vectors, with extra 1-colored curves
    /// on the first, evaluated by surgery on the doubled handlebody.
    pub fn surgery_pairing(&self, i: usize, j: usize, curves: &[HoleCurve]) -> Result<CycloElem> {
        let x = &self.colorings[i];
        let y = &self.colorings[j];
        let genus = self.genus();
        let closed = self.graph.point_colors.is_empty();
        let (diagram, omega) = match (genus, closed) {
            (1, true) => doubled_torus(x.edges[self.graph.loop_edges[0]], y.edges[self.graph.loop_edges[0]], curves),
            (2, true) if self.tree == LollipopTree::eyeglass() => {
                let l = |c: &SmallColoring| (c.edges[self.graph.loop_edges[0]], c.edges[self.graph.loop_edges[1]], c.a[0]);
                doubled_eyeglass(l(x), l(y), curves)
            }
            _ => return Err(Error::Invalid("surgery pairing is implemented for the torus and the eyeglass".into())),
        };
        let labels: Vec<usize> = omega;
        let edges: Vec<usize> = labels
            .iter()
            .map(|l| *diagram.labels.iter().find(|(_, &x)| x == *l).expect("ω circle").0)
            .collect();
        omega_bracket(&diagram, &edges, &self.table)
    }

    /// `z · v` for a curve on the eyeglass (or torus), obtained by pairing
    /// against the graph basis through the surgery engine.
    pub fn curve_multiply_surgery(&self, v: &HandlebodyVector, curve: HoleCurve) -> Result<HandlebodyVector> {
        let diag = self.gram_graph_diagonal(GramMethod::Fusion)?;
        let mut out = self.zero();
        for i in v.support() {
            for j in 0..self.dim() {
                let val = self.surgery_pairing(i, j, &[curve])?;
                if val.is_zero() {
                    continue;
                }
                let c = &(&val / &diag[j]) * &v.coords[i];
                out.coords[j] = &out.coords[j] + &c;
            }
        }
        Ok(out)
    }

    /// Mod-`h` structure of `Gram(B)` and the skew form on `S♯/S` (closed
    /// surfaces, `p ≡ 3 mod 4`).
    pub fn torsion_report(&self) -> Result<TorsionReport> {
        let ctx = self.ctx();
        if ctx.ring_kind() != RingKind::ZZetaP {
            return Err(Error::Invalid("torsion forms are implemented for p ≡ 3 (mod 4)".into()));
        }
        if !self.graph.point_colors.is_empty() {
            return Err(Error::Invalid("torsion forms need a surface without colored points".into()));
        }
        let p = ctx.p() as u64;
        let gram = self.gram_b()?;
        let n = self.dim();
        let reduce = |x: &CycloElem| -> Result<Fp> {
            ctx.reduce_mod_h(x).map(|v| Fp::new(v as i64, p)).ok_or_else(|| Error::NotInRing(x.to_string()))
        };
        let modh: Matrix<Fp> = gram.entries.iter().map(|r| r.iter().map(reduce).collect()).collect::<Result<_>>()?;
        let symmetric = (0..n).all(|i| (0..n).all(|j| modh[i][j] == modh[j][i]));
        let rank = linalg::rank(&modh);
        let odd: Vec<usize> = (0..n).filter(|&i| self.colorings[i].is_odd()).collect();
        // h·(b♯_σ, b♯_τ) = conj(h)⁻¹ (b_σ, b_τ) on odd colorings.
        let hbar_inv = ctx.h().conj().inverse()?;
        let skew_m: Matrix<Fp> = odd
            .iter()
            .map(|&i| odd.iter().map(|&j| reduce(&(&gram.entries[i][j] * &hbar_inv))).collect())
            .collect::<Result<_>>()?;
        let m = odd.len();
        let skew = (0..m).all(|i| (0..m).all(|j| skew_m[i][j] == skew_m[j][i].neg_fp()));
        let skew_rank = linalg::rank(&skew_m);
        Ok(TorsionReport {
            dim: n,
            radical_dim: n - rank,
            quotient_dim: rank,
            odd_colorings: m,
            symmetric,
            skew,
            skew_nondegenerate: skew_rank == m,
            gram_mod_h: modh.iter().map(|r| r.iter().map(|x| x.v).collect()).collect(),
        })
    }

    /// Pseudorandom v-graph vectors `Π v_i^{k_i} g(σ)` for integrality probes.
    pub fn vgraph_sample(&self, count: usize, seed: u64) -> Result<Vec<HandlebodyVector>> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = self.ctx().d() as i64;
        let mut out = Vec::new();
        while out.len() < count {
            let i = rng.gen_range(0..self.dim());
            let col = &self.colorings[i];
            let mut v = self.basis_vector(i);
            let mut ok = true;
            for hole in 0..self.genus() {
                let l = col.edges[self.graph.loop_edges[hole]];
                // Keep every loop color below d so no folding is needed.
                let k = rng.gen_range(0..=(d - 1 - l).min(2));
                for _ in 0..k {
                    match self.v_multiply(&v, hole) {
                        Ok(w) => v = w,
                        Err(_) => ok = false,
                    }
                }
            }
            if ok {
                out.push(v);
            }
        }
        Ok(out)
    }
}

trait NegFp {
    fn neg_fp(&self) -> Fp;
}

impl NegFp for Fp {
    fn neg_fp(&self) -> Fp {
        use linalg::Scalar;
        self.neg_s()
    }
}

/// Mod-`h` forms of a closed surface.
#[derive(Clone, Debug, Serialize)]
pub struct TorsionReport {
    pub dim: usize,
    pub radical_dim: usize,
    pub quotient_dim: usize,
    pub odd_colorings: usize,
    pub symmetric: bool,
    pub skew: bool,
    pub skew_nondegenerate: bool,
    pub gram_mod_h: Vec<Vec<u64>>,
}

impl TorsionReport {
    pub fn holds(&self) -> bool {
        self.radical_dim == self.odd_colorings && self.symmetric && self.skew && self.skew_nondegenerate
    }
}

/// A 1-colored curve added to the first graph of a surgery pairing.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HoleCurve {
    /// Parallel to the loop of hole `i`, on the side of the hole.
    Hole(usize),
    /// Around both holes of the eyeglass.
    Both,
}

const OMEGA1: usize = 1001;
const OMEGA2: usize = 1002;

/// `x ∪ ȳ` for the torus: two concentric loops and one ω circle.
fn doubled_torus(lx: i64, ly: i64, curves: &[HoleCurve]) -> (crate::planar::ColoredDiagram, Vec<usize>) {
    let mut m = Morse::new();
    m.cup(0, lx, None).cup(1, ly, None);
    let mut width = 2;
    for _ in curves {
        m.cup(width, 1, None);
        width += 1;
    }
    m.clasp(0, width - 1, 0, Some(OMEGA1));
    for k in (0..width).rev() {
        m.cap(k);
    }
    (m.finish(), vec![OMEGA1])
}

/// `x ∪ ȳ` for the eyeglass. Loops of `x` are outside those of `ȳ`, and the
/// stick of `ȳ` passes under the loops of `x`. Each ω circle encircles the
/// strands between its hole and the outside.
fn doubled_eyeglass(x: (i64, i64, i64), y: (i64, i64, i64), curves: &[HoleCurve]) -> (crate::planar::ColoredDiagram, Vec<usize>) {
    let (x1, x2, xa) = x;
    let (y1, y2, ya) = y;
    let count = |c: HoleCurve| curves.iter().filter(|&&k| k == c).count();
    let (both, in1, in2) = (count(HoleCurve::Both), count(HoleCurve::Hole(0)), count(HoleCurve::Hole(1)));
    let mut m = Morse::new();
    let mut cups = Vec::new();
    let mut cup = |m: &mut Morse, pos: usize, c: i64| {
        m.cup(pos, c, None);
        cups.push(pos);
    };
    for k in 0..both {
        cup(&mut m, k, 1);
    }
    let o = both;
    let (w1, w2) = (2 * (2 + in1), 2 * (2 + in2));
    cup(&mut m, o, x1);
    cup(&mut m, o + 1, y1);
    for k in 0..in1 {
        cup(&mut m, o + 2 + k, 1);
    }
    let g2 = o + w1;
    cup(&mut m, g2, x2);
    cup(&mut m, g2 + 1, y2);
    for k in 0..in2 {
        cup(&mut m, g2 + 2 + k, 1);
    }
    // Right strand of the ȳ loop at hole 1.
    let q = g2 - 2;
    if ya > 0 {
        m.split(q, (y1, None), (2 * ya, None)).cross(q + 1, true).cross(q + 2, true).merge(q + 3, y2, None);
    }
    if xa > 0 {
        m.split(q + 1, (x1, None), (2 * xa, None)).merge(q + 2, x2, None);
    }
    let width = 2 * o + w1 + w2;
    m.clasp(g2 + 2 + in2, width - 1, 0, Some(OMEGA2));
    m.clasp(0, o + 1 + in1, 0, Some(OMEGA1));
    for &pos in cups.iter().rev() {
        m.cap(pos);
    }
    (m.finish(), vec![OMEGA1, OMEGA2])
}

/// Coordinates of loop color `d` over loop colors `0..d` on a free loop,
/// from `Σ_k x_k S_{kj} = S_{dj}`.
fn torus_fold(table: &RecouplingTable) -> Result<Vec<CycloElem>> {
    let d = table.ctx().d() as i64;
    let s = table.hopf_matrix()?;
    let st = linalg::transpose(&s);
    let rhs: Vec<CycloElem> = (0..d).map(|j| table.hopf_entry(d, j)).collect::<Result<_>>()?;
    linalg::solve(&st, &rhs).map_err(|_| Error::Singular)
}

/// `v_h(det)` of a Gram matrix.
pub fn det_valuation(ctx: &PrimeContext, g: &GramMatrix) -> Result<Option<u32>> {
    ctx.h_valuation(&g.det(ctx)?)
}

/// Integer power of `h` as a `BigInt`-free helper for reports.
pub fn h_power(ctx: &PrimeContext, k: i64) -> Result<CycloElem> {
    if k >= 0 {
        Ok(ctx.h().pow(k as u32))
    } else {
        ctx.h_inv().powi(-k)
    }
}
