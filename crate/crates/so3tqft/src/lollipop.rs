//! Lollipop trees, small colorings and the exponent bookkeeping of the bases.
//!
//! A tree is stored as two rooted binary trees joined by the trunk: the loop
//! side, whose leaves carry the loop edges, and the point side, whose leaves
//! are the colored boundary points. A missing side forces the trunk color to
//! zero, which covers the closed surfaces: `(L L);-` is the eyeglass with its
//! single stick edge, `L;-` the torus and `(L (L L));-` the tripod.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::recoupling::admissible;

/// A node of a rooted side tree. Every node hangs from the edge to its parent.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Node {
    /// A stick edge ending at a loop edge.
    Loop,
    /// An edge ending at a boundary point with the given color.
    Point(i64),
    /// A trivalent vertex below two further edges.
    Join(Box<Node>, Box<Node>),
}

impl Node {
    pub fn join(l: Node, r: Node) -> Node {
        Node::Join(Box::new(l), Box::new(r))
    }

    /// Left comb: `((n0 n1) n2) …`.
    pub fn comb(nodes: Vec<Node>) -> Option<Node> {
        nodes.into_iter().reduce(Node::join)
    }

    fn count(&self, loops: &mut usize, points: &mut usize) {
        match self {
            Node::Loop => *loops += 1,
            Node::Point(_) => *points += 1,
            Node::Join(l, r) => {
                l.count(loops, points);
                r.count(loops, points);
            }
        }
    }
}

/// A lollipop tree: loop side and point side joined by the trunk edge.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LollipopTree {
    pub loop_side: Option<Node>,
    pub point_side: Option<Node>,
}

/// Role of an edge of the flattened graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum EdgeKind {
    /// Tree edge incident with loop `i`.
    Stick(usize),
    /// The loop edge of loop `i`.
    LoopEdge(usize),
    /// Edge ending at boundary point `k`.
    PointEdge(usize),
    Ordinary,
}

/// The graph of a lollipop tree with explicit edges and vertices.
#[derive(Clone, Debug, Serialize)]
pub struct Graph {
    pub kinds: Vec<EdgeKind>,
    /// Trivalent vertices as edge triples. Loop vertices list the stick first.
    pub vertices: Vec<[usize; 3]>,
    /// Id of the trunk edge (always 0).
    pub trunk: usize,
    /// Trunk forced to color zero because one side is empty.
    pub trunk_forced_zero: bool,
    pub point_colors: Vec<i64>,
    /// Fixed color of the trunk when it is both a stick and a point edge.
    pub trunk_point: Option<i64>,
    /// Stick edge of each loop.
    pub sticks: Vec<usize>,
    /// Loop edge of each loop.
    pub loop_edges: Vec<usize>,
}

/// The `(a, b, c)` data of a basis element, with the trunk half-color `e`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SmallColoring {
    pub a: Vec<i64>,
    pub b: Vec<i64>,
    /// Colors of the ordinary tree edges that are not point edges, in edge order.
    pub c: Vec<i64>,
    pub e: i64,
    /// Full edge coloring of the flattened graph.
    pub edges: Vec<i64>,
}

impl SmallColoring {
    /// `A(b) = Σ a_i`.
    pub fn a_sum(&self) -> i64 {
        self.a.iter().sum()
    }

    pub fn b_sum(&self) -> i64 {
        self.b.iter().sum()
    }

    /// Loop colors `a_i + b_i`.
    pub fn loop_colors(&self) -> Vec<i64> {
        self.a.iter().zip(&self.b).map(|(a, b)| a + b).collect()
    }

    /// Small colorings with `Σ a_i` odd span the radical of the mod-`h` form.
    pub fn is_odd(&self) -> bool {
        self.a_sum() % 2 != 0
    }
}

impl LollipopTree {
    pub fn new(loop_side: Option<Node>, point_side: Option<Node>) -> LollipopTree {
        LollipopTree { loop_side, point_side }
    }

    /// Loops on a left comb, points on a left comb.
    pub fn standard(genus: usize, points: &[i64]) -> LollipopTree {
        LollipopTree {
            loop_side: Node::comb(vec![Node::Loop; genus]),
            point_side: Node::comb(points.iter().map(|&c| Node::Point(c)).collect()),
        }
    }

    pub fn torus() -> LollipopTree {
        LollipopTree::standard(1, &[])
    }

    pub fn eyeglass() -> LollipopTree {
        LollipopTree::standard(2, &[])
    }

    pub fn tripod() -> LollipopTree {
        LollipopTree::new(Some(Node::join(Node::Loop, Node::join(Node::Loop, Node::Loop))), None)
    }

    /// The five-loop, six-point example tree.
    pub fn figure_one() -> LollipopTree {
        let loops = Node::join(
            Node::join(Node::Loop, Node::Loop),
            Node::join(Node::Loop, Node::join(Node::Loop, Node::Loop)),
        );
        let points = Node::join(
            Node::join(Node::Point(1), Node::Point(1)),
            Node::join(Node::Point(1), Node::join(Node::Point(1), Node::join(Node::Point(1), Node::Point(1)))),
        );
        LollipopTree::new(Some(loops), Some(points))
    }

    pub fn genus(&self) -> usize {
        let (mut g, mut s) = (0, 0);
        if let Some(n) = &self.loop_side {
            n.count(&mut g, &mut s);
        }
        g
    }

    pub fn points(&self) -> usize {
        let (mut g, mut s) = (0, 0);
        if let Some(n) = &self.point_side {
            n.count(&mut g, &mut s);
        }
        s
    }

    /// Loop leaves only on the loop side, point leaves only on the point side.
    pub fn validate(&self) -> Result<()> {
        fn only(n: &Node, loops: bool) -> bool {
            match n {
                Node::Loop => loops,
                Node::Point(c) => !loops && *c >= 0,
                Node::Join(l, r) => only(l, loops) && only(r, loops),
            }
        }
        if let Some(n) = &self.loop_side {
            if !only(n, true) {
                return Err(Error::Invalid("the loop side may only hold loops".into()));
            }
        }
        if let Some(n) = &self.point_side {
            if !only(n, false) {
                return Err(Error::Invalid("the point side may only hold nonnegative point colors".into()));
            }
        }
        Ok(())
    }

    /// Flatten into explicit edges and vertices. Edge 0 is the trunk.
    pub fn graph(&self) -> Graph {
        let mut g = Graph {
            kinds: vec![EdgeKind::Ordinary],
            vertices: Vec::new(),
            trunk: 0,
            trunk_forced_zero: self.loop_side.is_none() || self.point_side.is_none(),
            point_colors: Vec::new(),
            trunk_point: None,
            sticks: Vec::new(),
            loop_edges: Vec::new(),
        };
        fn walk(g: &mut Graph, n: &Node, parent: usize) {
            match n {
                Node::Loop => {
                    let i = g.sticks.len();
                    g.kinds[parent] = EdgeKind::Stick(i);
                    let l = g.kinds.len();
                    g.kinds.push(EdgeKind::LoopEdge(i));
                    g.sticks.push(parent);
                    g.loop_edges.push(l);
                    g.vertices.push([parent, l, l]);
                }
                Node::Point(c) => {
                    let k = g.point_colors.len();
                    g.kinds[parent] = EdgeKind::PointEdge(k);
                    g.point_colors.push(*c);
                }
                Node::Join(a, b) => {
                    let ea = g.kinds.len();
                    g.kinds.push(EdgeKind::Ordinary);
                    let eb = g.kinds.len();
                    g.kinds.push(EdgeKind::Ordinary);
                    g.vertices.push([eb, ea, parent]);
                    walk(g, a, ea);
                    walk(g, b, eb);
                }
            }
        }
        if let Some(n) = &self.loop_side {
            walk(&mut g, n, 0);
        }
        if let Some(n) = &self.point_side {
            match (n, g.kinds[0]) {
                // g = 1, s = 1: the trunk is both the stick and the point edge.
                (Node::Point(c), EdgeKind::Stick(_)) => {
                    g.point_colors.push(*c);
                    g.trunk_point = Some(*c);
                }
                _ => walk(&mut g, n, 0),
            }
        }
        g
    }

    /// All small colorings in canonical (lexicographic edge) order.
    pub fn small_colorings(&self, p: usize) -> Result<Vec<SmallColoring>> {
        self.validate()?;
        check_p(p)?;
        let d = (p as i64 - 1) / 2;
        let g = self.graph();
        let mut out = Vec::new();
        let mut colors = vec![-1i64; g.kinds.len()];
        // Fixed colors from points; the g=1, s=1 trunk carries the point color.
        for (e, k) in g.kinds.iter().enumerate() {
            if let EdgeKind::PointEdge(k) = k {
                colors[e] = g.point_colors[*k];
            }
        }
        if let Some(c) = g.trunk_point {
            colors[0] = c;
        }
        if g.trunk_forced_zero {
            if colors[0] > 0 {
                return Ok(out);
            }
            colors[0] = 0;
        }
        // Every vertex has even color sum, so the point colors must too.
        if g.point_colors.iter().sum::<i64>() % 2 != 0 {
            return Ok(out);
        }
        let order: Vec<usize> = (0..g.kinds.len()).collect();
        assign(&g, p, d, &order, 0, &mut colors, &mut out);
        out.sort();
        Ok(out)
    }

    /// Number of small colorings, the dimension of the space.
    pub fn dim(&self, p: usize) -> Result<usize> {
        Ok(self.stats(p)?.dim as usize)
    }

    /// `dim`, `N = Σ exponent_b` and `N′ = Σ exponent_bsharp` by dynamic
    /// programming over the two sides, without listing colorings.
    pub fn stats(&self, p: usize) -> Result<Stats> {
        self.validate()?;
        check_p(p)?;
        let d = (p as i64 - 1) / 2;
        let m = p as i64 - 2;
        let loops = match &self.loop_side {
            Some(n) => loop_table(n, p, d, m),
            None => vec![vec![(1u128, 0u128)]],
        };
        let points = match &self.point_side {
            Some(n) => point_table(n, p, m),
            None => {
                let mut v = vec![0u128; (m + 1) as usize];
                v[0] = 1;
                v
            }
        };
        let g = self.genus() as i64;
        let mut st = Stats { dim: 0, n: 0, n_sharp: 0, rhs: 0 };
        for (t, row) in loops.iter().enumerate() {
            if t % 2 == 1 || t >= points.len() {
                continue;
            }
            let forced = self.loop_side.is_none() || self.point_side.is_none();
            if forced && t != 0 {
                continue;
            }
            let cp = points[t];
            if cp == 0 {
                continue;
            }
            let e = (t / 2) as i64;
            for (asum, &(cnt, sb)) in row.iter().enumerate() {
                if cnt == 0 {
                    continue;
                }
                let asum = asum as i64;
                st.dim += cnt * cp;
                let fl = (asum - e).div_euclid(2);
                let ce = (asum + e + 1).div_euclid(2);
                st.n += (sb as i128 + cnt as i128 * fl as i128) * cp as i128;
                st.n_sharp += (sb as i128 + cnt as i128 * ce as i128) * cp as i128;
            }
        }
        st.rhs = (g * (d - 1)) as i128 * st.dim as i128;
        Ok(st)
    }
}

/// Totals over the small graph basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Stats {
    pub dim: u128,
    pub n: i128,
    pub n_sharp: i128,
    /// `g (d − 1) dim`.
    pub rhs: i128,
}

impl Stats {
    /// `N + N′ = g (d − 1) dim`.
    pub fn holds(&self) -> bool {
        self.n + self.n_sharp == self.rhs
    }
}

fn check_p(p: usize) -> Result<()> {
    if p < 5 || !crate::cyclo::is_prime(p as u64) {
        return Err(Error::InvalidPrime(p as u64));
    }
    Ok(())
}

/// Loop-side table: `[parent color][A] = (count, Σ Σb)`.
fn loop_table(n: &Node, p: usize, d: i64, m: i64) -> Vec<Vec<(u128, u128)>> {
    let width = (m + 1) as usize;
    match n {
        Node::Loop => {
            let mut t = vec![Vec::new(); width];
            for a in 0..d {
                let row = &mut t[(2 * a) as usize];
                row.resize((a + 1) as usize, (0, 0));
                let cnt = (d - a) as u128;
                let sb = ((d - a - 1) * (d - a) / 2) as u128;
                row[a as usize] = (cnt, sb);
            }
            t
        }
        Node::Point(_) => vec![Vec::new(); width],
        Node::Join(l, r) => {
            let tl = loop_table(l, p, d, m);
            let tr = loop_table(r, p, d, m);
            let mut t: Vec<Vec<(u128, u128)>> = vec![Vec::new(); width];
            for x in 0..=m {
                for xl in 0..=m {
                    for xr in 0..=m {
                        if !admissible(p, xl, xr, x) {
                            continue;
                        }
                        let (rl, rr) = (&tl[xl as usize], &tr[xr as usize]);
                        for (al, &(cl, sl)) in rl.iter().enumerate() {
                            if cl == 0 {
                                continue;
                            }
                            for (ar, &(cr, sr)) in rr.iter().enumerate() {
                                if cr == 0 {
                                    continue;
                                }
                                let row = &mut t[x as usize];
                                if row.len() <= al + ar {
                                    row.resize(al + ar + 1, (0, 0));
                                }
                                let cell = &mut row[al + ar];
                                cell.0 += cl * cr;
                                cell.1 += sl * cr + cl * sr;
                            }
                        }
                    }
                }
            }
            t
        }
    }
}

/// Point-side table: `[parent color] = count`.
fn point_table(n: &Node, p: usize, m: i64) -> Vec<u128> {
    let width = (m + 1) as usize;
    match n {
        Node::Point(c) => {
            let mut t = vec![0; width];
            if (0..=m).contains(c) {
                t[*c as usize] = 1;
            }
            t
        }
        Node::Loop => vec![0; width],
        Node::Join(l, r) => {
            let tl = point_table(l, p, m);
            let tr = point_table(r, p, m);
            let mut t = vec![0; width];
            for x in 0..=m {
                for xl in 0..=m {
                    for xr in 0..=m {
                        if admissible(p, xl, xr, x) {
                            t[x as usize] += tl[xl as usize] * tr[xr as usize];
                        }
                    }
                }
            }
            t
        }
    }
}

fn assign(g: &Graph, p: usize, d: i64, order: &[usize], k: usize, colors: &mut Vec<i64>, out: &mut Vec<SmallColoring>) {
    // Prune on every vertex whose edges are all colored.
    for v in &g.vertices {
        let [x, y, z] = *v;
        if colors[x] >= 0 && colors[y] >= 0 && colors[z] >= 0 && !admissible(p, colors[x], colors[y], colors[z]) {
            return;
        }
    }
    if k == order.len() {
        out.push(coloring_of(g, colors));
        return;
    }
    let e = order[k];
    if colors[e] >= 0 {
        if let EdgeKind::Stick(_) = g.kinds[e] {
            if colors[e] % 2 != 0 || colors[e] / 2 > d - 1 {
                return;
            }
        }
        assign(g, p, d, order, k + 1, colors, out);
        return;
    }
    let choices: Vec<i64> = match g.kinds[e] {
        EdgeKind::Stick(_) => (0..d).map(|a| 2 * a).collect(),
        EdgeKind::LoopEdge(i) => {
            let a = colors[g.sticks[i]] / 2;
            (a..d).collect()
        }
        _ => (0..=p as i64 - 2).collect(),
    };
    for c in choices {
        colors[e] = c;
        assign(g, p, d, order, k + 1, colors, out);
    }
    colors[e] = -1;
}

fn coloring_of(g: &Graph, colors: &[i64]) -> SmallColoring {
    let a: Vec<i64> = g.sticks.iter().map(|&s| colors[s] / 2).collect();
    let b: Vec<i64> = g.loop_edges.iter().zip(&a).map(|(&l, &ai)| colors[l] - ai).collect();
    let c = g
        .kinds
        .iter()
        .enumerate()
        .filter(|(_, k)| **k == EdgeKind::Ordinary)
        .map(|(e, _)| colors[e])
        .collect();
    let e = if g.trunk_forced_zero { 0 } else { colors[0] / 2 };
    SmallColoring { a, b, c, e, edges: colors.to_vec() }
}

/// `Σ b_i + ⌊(Σ a_i − e)/2⌋`, the power of `h⁻¹` in `b(a,b,c)`.
pub fn exponent_b(col: &SmallColoring) -> i64 {
    col.b_sum() + (col.a_sum() - col.e).div_euclid(2)
}

/// `Σ b_i + ⌈(Σ a_i + e)/2⌉`, the power of `h⁻¹` in `b♯(a,b,c)`.
pub fn exponent_bsharp(col: &SmallColoring) -> i64 {
    col.b_sum() + (col.a_sum() + col.e + 1).div_euclid(2)
}

/// Index identity record.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct IndexIdentity {
    pub n: i128,
    pub n_sharp: i128,
    pub rhs: i128,
    pub holds: bool,
}

pub fn index_identity(tree: &LollipopTree, p: usize) -> Result<IndexIdentity> {
    let s = tree.stats(p)?;
    Ok(IndexIdentity { n: s.n, n_sharp: s.n_sharp, rhs: s.rhs, holds: s.holds() })
}

/// `ε = 1` when `e = d − 1` and `A − e` is odd.
pub fn oddity(col: &SmallColoring, p: usize) -> i64 {
    let d = (p as i64 - 1) / 2;
    i64::from(col.e == d - 1 && (col.a_sum() - col.e).rem_euclid(2) == 1)
}

/// `⌊½ Σ ε(b_i)⌋` for a tensor product of basis elements.
pub fn tensor_rescale_exponent(cols: &[SmallColoring], p: usize) -> i64 {
    cols.iter().map(|c| oddity(c, p)).sum::<i64>() / 2
}

/// Graft trees along their trunks: loop sides and point sides are each
/// joined on a left comb, and the old trunks become the comb's leaf edges.
pub fn graft(trees: &[LollipopTree]) -> Result<LollipopTree> {
    if trees.len() < 2 {
        return Err(Error::Invalid("grafting needs at least two trees".into()));
    }
    let mut loops = Vec::new();
    let mut points = Vec::new();
    for t in trees {
        match (&t.loop_side, &t.point_side) {
            (Some(l), Some(pt)) => {
                loops.push(l.clone());
                points.push(pt.clone());
            }
            _ => return Err(Error::Invalid("grafting needs a trunk on every tree".into())),
        }
    }
    Ok(LollipopTree::new(Node::comb(loops), Node::comb(points)))
}

/// `E = (n−1)(d−1) − ⌊½(A(b) − e(b))⌋ + Σ ⌊½(A(b_i) − e(b_i))⌋`, the power of
/// `h` relating a grafted basis vector to the tensor product of its parts.
pub fn grafting_exponent(a: i64, e: i64, parts: &[(i64, i64)], p: usize) -> i64 {
    let d = (p as i64 - 1) / 2;
    let n = parts.len() as i64;
    (n - 1) * (d - 1) - (a - e).div_euclid(2) + parts.iter().map(|&(ai, ei)| (ai - ei).div_euclid(2)).sum::<i64>()
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Node::Loop => write!(f, "L"),
            Node::Point(c) => write!(f, "{c}"),
            Node::Join(l, r) => write!(f, "({l} {r})"),
        }
    }
}

impl fmt::Display for LollipopTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.loop_side {
            Some(n) => write!(f, "{n}")?,
            None => write!(f, "-")?,
        }
        write!(f, ";")?;
        match &self.point_side {
            Some(n) => write!(f, "{n}"),
            None => write!(f, "-"),
        }
    }
}

/// Parse `loops;points`, each side `-` or a node: `L`, a color, or `(x y)`.
impl FromStr for LollipopTree {
    type Err = Error;

    fn from_str(s: &str) -> Result<LollipopTree> {
        let err = |m: &str| Error::Parse { line: 1, msg: m.to_string() };
        let (l, r) = s.split_once(';').ok_or_else(|| err("expected `loops;points`"))?;
        let side = |t: &str| -> Result<Option<Node>> {
            let t = t.trim();
            if t == "-" || t.is_empty() {
                return Ok(None);
            }
            let toks: Vec<String> =
                t.replace('(', " ( ").replace(')', " ) ").split_whitespace().map(str::to_string).collect();
            let mut pos = 0;
            let n = parse_node(&toks, &mut pos).ok_or_else(|| err("malformed tree"))?;
            if pos != toks.len() {
                return Err(err("trailing tokens"));
            }
            Ok(Some(n))
        };
        let tree = LollipopTree::new(side(l)?, side(r)?);
        tree.validate()?;
        Ok(tree)
    }
}

fn parse_node(toks: &[String], pos: &mut usize) -> Option<Node> {
    let t = toks.get(*pos)?;
    *pos += 1;
    match t.as_str() {
        "L" => Some(Node::Loop),
        "(" => {
            let l = parse_node(toks, pos)?;
            let r = parse_node(toks, pos)?;
            if toks.get(*pos)? != ")" {
                return None;
            }
            *pos += 1;
            Some(Node::join(l, r))
        }
        s => s.parse().ok().map(Node::Point),
    }
}
