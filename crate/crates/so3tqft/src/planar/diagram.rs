//! Colored planar diagrams: PD-style crossings, trivalent vertices, free
//! loops and boundary points, together with cabling into a [`Net`].
//!
//! Crossing convention: `X a b c d` lists the four edge ends
//! counterclockwise starting from an under-strand end, so `a`–`c` is the
//! under strand and `b`–`d` the over strand. Its bracket is
//! `A·{a–b, c–d} + A⁻¹·{a–d, b–c}`. Vertices `V a b c` list their edges
//! counterclockwise.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::coef::{Coef, MAX_P};
use super::net::{End, Net, DEFAULT_WIDTH_CAP, OUTER};
use super::tl::{jw, TLVector};
use crate::cyclo::{CycloElem, PrimeContext};
use crate::error::{Error, Result};

/// What a closed component stands for in a surgery or embedding problem.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Role {
    Plain,
    Surgery,
    Cargo,
    Axis,
}

/// Metadata attached to the closed component through `edge`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Component {
    pub edge: usize,
    /// Target framing; `None` keeps the blackboard framing.
    pub framing: Option<i64>,
    pub role: Role,
    pub name: Option<String>,
}

/// A planar diagram with integer colors on its edges.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoredDiagram {
    pub colors: BTreeMap<usize, i64>,
    pub crossings: Vec<[usize; 4]>,
    pub vertices: Vec<[usize; 3]>,
    /// Edges forming free circles with no crossings or vertices.
    pub loops: Vec<usize>,
    /// Edges ending on the disk boundary, counterclockwise.
    pub boundary: Vec<usize>,
    pub components: Vec<Component>,
    /// Optional grouping of edges into labelled components for recoloring.
    pub labels: BTreeMap<usize, usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Slot {
    Cross(usize, usize),
    Vert(usize, usize),
    Bound(usize),
}

/// A maximal chain of edges joined through crossings.
#[derive(Clone, Debug)]
pub struct Arc {
    pub edges: Vec<usize>,
    pub closed: bool,
}

impl ColoredDiagram {
    pub fn new() -> ColoredDiagram {
        ColoredDiagram::default()
    }

    pub fn color(&self, e: usize) -> i64 {
        self.colors.get(&e).copied().unwrap_or(1)
    }

    fn slots(&self) -> Result<HashMap<usize, Vec<Slot>>> {
        let mut m: HashMap<usize, Vec<Slot>> = HashMap::new();
        for (i, x) in self.crossings.iter().enumerate() {
            for (k, &e) in x.iter().enumerate() {
                m.entry(e).or_default().push(Slot::Cross(i, k));
            }
        }
        for (i, v) in self.vertices.iter().enumerate() {
            for (k, &e) in v.iter().enumerate() {
                m.entry(e).or_default().push(Slot::Vert(i, k));
            }
        }
        for (i, &e) in self.boundary.iter().enumerate() {
            m.entry(e).or_default().push(Slot::Bound(i));
        }
        for (&e, s) in &m {
            if s.len() != 2 {
                return Err(Error::Diagram(format!("edge {e} has {} ends, expected 2", s.len())));
            }
            if self.loops.contains(&e) {
                return Err(Error::Diagram(format!("loop edge {e} also has ends")));
            }
        }
        Ok(m)
    }

    /// Checks end counts and color consistency along arcs.
    pub fn validate(&self) -> Result<()> {
        self.arcs().map(|_| ())
    }

    /// Maximal chains of edges through crossings.
    pub fn arcs(&self) -> Result<Vec<Arc>> {
        let slots = self.slots()?;
        let other = |e: usize, s: Slot| -> Slot {
            let ends = &slots[&e];
            if ends[0] == s {
                ends[1]
            } else {
                ends[0]
            }
        };
        // Continue through a crossing: the edge beyond `exit` and its entry slot.
        let step = |exit: Slot| -> Option<(usize, Slot)> {
            match exit {
                Slot::Cross(i, k) => {
                    let k2 = (k + 2) % 4;
                    Some((self.crossings[i][k2], Slot::Cross(i, k2)))
                }
                _ => None,
            }
        };
        let mut done: HashMap<usize, bool> = HashMap::new();
        let mut out = Vec::new();
        let mut edges: Vec<usize> = slots.keys().copied().collect();
        edges.sort_unstable();
        for &e0 in &edges {
            if done.contains_key(&e0) {
                continue;
            }
            let mut chain = vec![e0];
            let mut closed = false;
            let mut e = e0;
            let mut exit = slots[&e0][1];
            let mut guard = 0;
            loop {
                guard += 1;
                if guard > 4 * self.crossings.len() + 8 {
                    return Err(Error::Diagram("arc walk did not terminate".into()));
                }
                match step(exit) {
                    None => break,
                    Some((e2, entry)) => {
                        if e2 == e0 && entry == slots[&e0][0] {
                            closed = true;
                            break;
                        }
                        chain.push(e2);
                        e = e2;
                        exit = other(e2, entry);
                    }
                }
            }
            if !closed {
                // Walk back from the terminal edge to collect the full chain.
                chain = vec![e];
                let mut exit = other(e, exit);
                loop {
                    match step(exit) {
                        None => break,
                        Some((e2, entry)) => {
                            chain.push(e2);
                            exit = other(e2, entry);
                        }
                    }
                }
            }
            let c = self.color(chain[0]);
            for &x in &chain {
                if self.color(x) != c {
                    return Err(Error::Diagram(format!(
                        "edges {} and {x} of one strand have different colors",
                        chain[0]
                    )));
                }
                done.insert(x, true);
            }
            out.push(Arc { edges: chain, closed });
        }
        for &e in &self.loops {
            out.push(Arc { edges: vec![e], closed: true });
        }
        Ok(out)
    }

    /// The closed arc containing `edge`.
    pub fn component_of(&self, edge: usize) -> Result<Arc> {
        self.arcs()?
            .into_iter()
            .find(|a| a.edges.contains(&edge))
            .ok_or_else(|| Error::Diagram(format!("no edge {edge}")))
    }

    /// Orientation walk of a closed arc: for each crossing slot along the
    /// arc, whether the strand enters the crossing there.
    fn entering(&self, arc: &Arc) -> Result<HashMap<(usize, usize), bool>> {
        let slots = self.slots()?;
        let mut out = HashMap::new();
        if arc.edges.len() == 1 && self.loops.contains(&arc.edges[0]) {
            return Ok(out);
        }
        let e0 = arc.edges[0];
        let mut e = e0;
        // Traverse e0 from its first end towards its second.
        let mut tail = slots[&e0][0];
        loop {
            let ends = &slots[&e];
            let head = if ends[0] == tail { ends[1] } else { ends[0] };
            let Slot::Cross(i, k) = head else {
                return Err(Error::Diagram("orientation requires a closed component".into()));
            };
            out.insert((i, k), true);
            let k2 = (k + 2) % 4;
            out.insert((i, k2), false);
            e = self.crossings[i][k2];
            tail = Slot::Cross(i, k2);
            if e == e0 && tail == slots[&e0][0] {
                break;
            }
            if out.len() > 4 * self.crossings.len() + 4 {
                return Err(Error::Diagram("orientation walk did not close".into()));
            }
        }
        Ok(out)
    }

    /// Signed crossings `(crossing, arc of under strand, arc of over strand,
    /// sign)` between closed components, using each component's walk order.
    pub fn crossing_signs(&self) -> Result<Vec<(usize, usize, usize, i64)>> {
        let arcs = self.arcs()?;
        let closed: Vec<(usize, &Arc)> = arcs.iter().enumerate().filter(|(_, a)| a.closed).collect();
        let mut enter: HashMap<(usize, usize), (usize, bool)> = HashMap::new();
        for &(ai, a) in &closed {
            for (k, v) in self.entering(a)? {
                enter.insert(k, (ai, v));
            }
        }
        let mut out = Vec::new();
        for i in 0..self.crossings.len() {
            let (Some(&(au, ua)), Some(&(ao, od))) = (enter.get(&(i, 0)), enter.get(&(i, 3))) else {
                continue;
            };
            let u = if ua { 1 } else { -1 };
            let o = if od { 1 } else { -1 };
            out.push((i, au, ao, u * o));
        }
        Ok(out)
    }

    /// Writhe of the closed component through `edge`.
    pub fn writhe(&self, edge: usize) -> Result<i64> {
        let arcs = self.arcs()?;
        let idx = arcs.iter().position(|a| a.edges.contains(&edge)).ok_or_else(|| Error::Diagram(format!("no edge {edge}")))?;
        Ok(self.crossing_signs()?.iter().filter(|c| c.1 == idx && c.2 == idx).map(|c| c.3).sum())
    }

    /// Linking number of the closed components through two edges.
    pub fn linking(&self, e1: usize, e2: usize) -> Result<i64> {
        let arcs = self.arcs()?;
        let i = arcs.iter().position(|a| a.edges.contains(&e1)).ok_or_else(|| Error::Diagram(format!("no edge {e1}")))?;
        let j = arcs.iter().position(|a| a.edges.contains(&e2)).ok_or_else(|| Error::Diagram(format!("no edge {e2}")))?;
        let s: i64 = self
            .crossing_signs()?
            .iter()
            .filter(|c| (c.1 == i && c.2 == j) || (c.1 == j && c.2 == i))
            .map(|c| c.3)
            .sum();
        Ok(s / 2)
    }

    fn fresh_edge(&self) -> usize {
        let mut m = 0;
        for &e in self.colors.keys().chain(self.loops.iter()) {
            m = m.max(e + 1);
        }
        for x in &self.crossings {
            for &e in x {
                m = m.max(e + 1);
            }
        }
        for v in &self.vertices {
            for &e in v {
                m = m.max(e + 1);
            }
        }
        for &e in &self.boundary {
            m = m.max(e + 1);
        }
        m
    }

    /// Insert `count` curls of the given sign on `edge` (which must end at
    /// crossings or vertices, or be a free loop).
    pub fn add_kinks(&mut self, edge: usize, count: i64) -> Result<()> {
        for _ in 0..count.abs() {
            let e1 = self.fresh_edge();
            let l = e1 + 1;
            let color = self.color(edge);
            let label = self.labels.get(&edge).copied();
            if let Some(pos) = self.loops.iter().position(|&e| e == edge) {
                // Free loop: the curl becomes a one-crossing diagram.
                self.loops.remove(pos);
                let x = if count > 0 { [edge, edge, l, l] } else { [l, edge, edge, l] };
                self.crossings.push(x);
            } else {
                // Replace the second end of `edge` by e1: edge -> X -> e1.
                let slots = self.slots()?;
                let end = slots[&edge][1];
                match end {
                    Slot::Cross(i, k) => self.crossings[i][k] = e1,
                    Slot::Vert(i, k) => self.vertices[i][k] = e1,
                    Slot::Bound(i) => self.boundary[i] = e1,
                }
                let x = if count > 0 { [edge, e1, l, l] } else { [l, edge, e1, l] };
                self.crossings.push(x);
                self.colors.insert(e1, color);
                if let Some(lb) = label {
                    self.labels.insert(e1, lb);
                }
            }
            self.colors.insert(l, color);
            if let Some(lb) = label {
                self.labels.insert(l, lb);
            }
        }
        Ok(())
    }

    /// Diagram with curls added so that each component with a target framing
    /// has blackboard framing equal to it.
    pub fn with_framing_curls(&self) -> Result<ColoredDiagram> {
        let mut d = self.clone();
        for c in &self.components {
            if let Some(f) = c.framing {
                let w = self.writhe(c.edge)?;
                if f != w {
                    d.add_kinks(c.edge, f - w)?;
                }
            }
        }
        for c in d.components.iter_mut() {
            c.framing = None;
        }
        Ok(d)
    }

    /// Set the color of every edge carrying `label`.
    pub fn recolor(&mut self, label: usize, color: i64) {
        let es: Vec<usize> = self.labels.iter().filter(|(_, &l)| l == label).map(|(&e, _)| e).collect();
        for e in es {
            self.colors.insert(e, color);
        }
    }

    /// Set the color of the whole closed component through `edge`.
    pub fn recolor_component(&mut self, edge: usize, color: i64) -> Result<()> {
        for e in self.component_of(edge)?.edges {
            self.colors.insert(e, color);
        }
        Ok(())
    }

    /// Number of boundary points after cabling.
    pub fn boundary_points(&self) -> usize {
        self.boundary.iter().map(|&e| self.color(e).max(0) as usize).sum()
    }

    /// Cable the diagram into a planar network of Temperley–Lieb nodes.
    pub fn to_net(&self, p: usize) -> Result<Option<Net>> {
        if p > MAX_P {
            return Err(Error::Invalid(format!("planar engine supports p <= {MAX_P}")));
        }
        let arcs = self.arcs()?;
        let slots = self.slots()?;
        for &c in self.colors.values() {
            if c < 0 || c > p as i64 - 2 {
                return Err(Error::ColorOutOfRange { color: c, max: p as i64 - 2 });
            }
        }
        let mut net = Net::new(p);
        let tab = net.tab.clone();
        // Ends of each event side, counterclockwise.
        let mut cross_sides: Vec<[Vec<End>; 4]> = Vec::new();
        for x in &self.crossings {
            let n = self.color(x[0]) as usize;
            let m = self.color(x[1]) as usize;
            if self.color(x[2]) as usize != n || self.color(x[3]) as usize != m {
                return Err(Error::Diagram(format!("crossing {x:?} has inconsistent colors")));
            }
            let mut sides: [Vec<End>; 4] = Default::default();
            if n == 0 || m == 0 {
                // A lone bundle passes straight through.
                let (s0, s1, w) = if n == 0 { (1, 3, m) } else { (0, 2, n) };
                let mut a = vec![(0, 0); w];
                let mut b = vec![(0, 0); w];
                for j in 0..w {
                    let id = net.add_wire();
                    a[j] = (id, 0);
                    b[w - 1 - j] = (id, 1);
                }
                sides[s0] = a;
                sides[s1] = b;
            } else {
                let terms = vec![
                    (vec![1, 0, 3, 2], tab.a),
                    (vec![3, 2, 1, 0], tab.a_inv),
                ];
                let mut grid = vec![vec![0u32; m]; n];
                for k in 0..n {
                    for l in 0..m {
                        grid[k][l] = net.add_node(terms.clone(), 4);
                    }
                }
                for k in 0..n {
                    for l in 0..m {
                        if l + 1 < m {
                            net.connect((grid[k][l], 2), (grid[k][l + 1], 0));
                        }
                        if k + 1 < n {
                            net.connect((grid[k][l], 1), (grid[k + 1][l], 3));
                        }
                    }
                }
                sides[0] = (0..n).map(|k| (grid[k][0], 0)).collect();
                sides[1] = (0..m).map(|l| (grid[n - 1][l], 1)).collect();
                sides[2] = (0..n).map(|j| (grid[n - 1 - j][m - 1], 2)).collect();
                sides[3] = (0..m).map(|j| (grid[0][m - 1 - j], 3)).collect();
            }
            cross_sides.push(sides);
        }
        let mut vert_sides: Vec<[Vec<End>; 3]> = Vec::new();
        for v in &self.vertices {
            let (i, j, k) = (self.color(v[0]), self.color(v[1]), self.color(v[2]));
            if (i + j + k) % 2 != 0 || i > j + k || j > i + k || k > i + j {
                return Ok(None);
            }
            let (i, j, k) = (i as usize, j as usize, k as usize);
            let tot = i + j + k;
            let mut sides: [Vec<End>; 3] = Default::default();
            if tot > 0 {
                let mut m = vec![0u8; tot];
                let pair = |m: &mut Vec<u8>, x: usize, y: usize| {
                    m[x] = y as u8;
                    m[y] = x as u8;
                };
                for t in 0..(i + j - k) / 2 {
                    pair(&mut m, i - 1 - t, i + t);
                }
                for t in 0..(j + k - i) / 2 {
                    pair(&mut m, i + j - 1 - t, i + j + t);
                }
                for t in 0..(k + i - j) / 2 {
                    pair(&mut m, i + j + k - 1 - t, t);
                }
                let id = net.add_node(vec![(m, Coef::one(p))], tot);
                sides[0] = (0..i).map(|s| (id, s as u32)).collect();
                sides[1] = (i..i + j).map(|s| (id, s as u32)).collect();
                sides[2] = (i + j..tot).map(|s| (id, s as u32)).collect();
            }
            vert_sides.push(sides);
        }
        // Outer boundary points, counterclockwise; each boundary event lists
        // its points in the reversed (outside) order.
        let nb = self.boundary_points();
        net.set_outer(nb);
        let mut bound_sides: Vec<Vec<End>> = Vec::new();
        let mut off = 0;
        for &e in &self.boundary {
            let n = self.color(e) as usize;
            bound_sides.push((0..n).map(|s| (OUTER, (off + n - 1 - s) as u32)).collect());
            off += n;
        }
        let side = |s: Slot| -> &Vec<End> {
            match s {
                Slot::Cross(i, k) => &cross_sides[i][k],
                Slot::Vert(i, k) => &vert_sides[i][k],
                Slot::Bound(i) => &bound_sides[i],
            }
        };
        let mut links: Vec<(End, End)> = Vec::new();
        let mut boxes: Vec<(usize, Vec<End>, Vec<End>)> = Vec::new();
        for arc in &arcs {
            let n = self.color(arc.edges[0]) as usize;
            if n == 0 {
                continue;
            }
            let jw_edge = *arc.edges.iter().min().unwrap();
            if arc.edges.len() == 1 && self.loops.contains(&jw_edge) {
                // A free circle: a box traced shut.
                if n == 1 {
                    net.mul_scalar(&tab.delta)?;
                } else {
                    let f = jw(p, n)?;
                    let id = net.add_node((*f).clone(), 2 * n);
                    for i in 0..n {
                        links.push(((id, i as u32), (id, (2 * n - 1 - i) as u32)));
                    }
                }
                continue;
            }
            for &e in &arc.edges {
                let ends = &slots[&e];
                let a = side(ends[0]).clone();
                let b = side(ends[1]).clone();
                if e == jw_edge && n >= 2 {
                    boxes.push((n, a, b));
                } else {
                    for s in 0..n {
                        links.push((a[s], b[n - 1 - s]));
                    }
                }
            }
        }
        for (n, a, b) in boxes {
            let f = jw(p, n)?;
            let id = net.add_node((*f).clone(), 2 * n);
            for s in 0..n {
                links.push((a[s], (id, (n - 1 - s) as u32)));
                links.push((b[s], (id, (2 * n - 1 - s) as u32)));
            }
        }
        for (x, y) in links {
            net.connect(x, y);
        }
        Ok(Some(net))
    }

    /// Closed Kauffman bracket with `⟨empty⟩ = 1`.
    pub fn bracket(&self, ctx: &PrimeContext) -> Result<CycloElem> {
        Ok(self.bracket_coef(ctx.p(), DEFAULT_WIDTH_CAP)?.to_cyclo(ctx))
    }

    pub fn bracket_coef(&self, p: usize, cap: usize) -> Result<Coef> {
        if !self.boundary.is_empty() {
            return Err(Error::Diagram("closed bracket of a diagram with boundary".into()));
        }
        let d = self.with_framing_curls()?;
        match d.to_net(p)? {
            None => Ok(Coef::zero(p)),
            Some(net) => net.evaluate(cap),
        }
    }

    /// Expansion over crossingless matchings of the boundary points.
    pub fn bracket_relative(&self, ctx: &PrimeContext) -> Result<TLVector> {
        self.bracket_relative_cap(ctx, DEFAULT_WIDTH_CAP)
    }

    pub fn bracket_relative_cap(&self, ctx: &PrimeContext, cap: usize) -> Result<TLVector> {
        let d = self.with_framing_curls()?;
        let nb = d.boundary_points();
        match d.to_net(ctx.p())? {
            None => Ok(TLVector::zero(nb)),
            Some(net) => Ok(TLVector::from_engine(nb, &net.evaluate_relative(cap)?, ctx)),
        }
    }

    /// Serialize in the line-oriented text format read by [`ColoredDiagram::parse`].
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for (e, c) in &self.colors {
            let _ = writeln!(s, "edge {e} {c}");
        }
        for (e, l) in &self.labels {
            let _ = writeln!(s, "label {e} {l}");
        }
        for x in &self.crossings {
            let _ = writeln!(s, "X {} {} {} {}", x[0], x[1], x[2], x[3]);
        }
        for v in &self.vertices {
            let _ = writeln!(s, "V {} {} {}", v[0], v[1], v[2]);
        }
        for e in &self.loops {
            let _ = writeln!(s, "U {e}");
        }
        if !self.boundary.is_empty() {
            let b: Vec<String> = self.boundary.iter().map(|e| e.to_string()).collect();
            let _ = writeln!(s, "B {}", b.join(" "));
        }
        for c in &self.components {
            let _ = write!(s, "component {}", c.edge);
            if let Some(f) = c.framing {
                let _ = write!(s, " framing {f}");
            }
            let role = match c.role {
                Role::Plain => "",
                Role::Surgery => " surgery",
                Role::Cargo => " cargo",
                Role::Axis => " axis",
            };
            s.push_str(role);
            if let Some(n) = &c.name {
                let _ = write!(s, " name {n}");
            }
            s.push('\n');
        }
        s
    }

    /// Parse the text format. Lines: `edge <id> <color>`, `label <id> <n>`,
    /// `X a b c d`, `V a b c`, `U <id> [color]`, `B e…`, and
    /// `component <edge> [framing k] [surgery|cargo|axis] [name s]`.
    /// `#` starts a comment.
    pub fn parse(text: &str) -> Result<ColoredDiagram> {
        let mut d = ColoredDiagram::new();
        for (ln, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: &str| Error::Parse { line: ln + 1, msg: msg.to_string() };
            let toks: Vec<&str> = line.split_whitespace().collect();
            let nums = |xs: &[&str]| -> Result<Vec<i64>> {
                xs.iter().map(|t| t.parse::<i64>().map_err(|_| err(&format!("bad integer {t:?}")))).collect()
            };
            let ids = |xs: &[&str]| -> Result<Vec<usize>> {
                xs.iter().map(|t| t.parse::<usize>().map_err(|_| err(&format!("bad edge id {t:?}")))).collect()
            };
            match toks[0] {
                "edge" if toks.len() == 3 => {
                    let e = ids(&toks[1..2])?[0];
                    d.colors.insert(e, nums(&toks[2..3])?[0]);
                }
                "label" if toks.len() == 3 => {
                    let v = ids(&toks[1..3])?;
                    d.labels.insert(v[0], v[1]);
                }
                "X" if toks.len() == 5 => {
                    let v = ids(&toks[1..])?;
                    d.crossings.push([v[0], v[1], v[2], v[3]]);
                }
                "V" if toks.len() == 4 => {
                    let v = ids(&toks[1..])?;
                    d.vertices.push([v[0], v[1], v[2]]);
                }
                "U" if toks.len() == 2 || toks.len() == 3 => {
                    let e = ids(&toks[1..2])?[0];
                    d.loops.push(e);
                    if toks.len() == 3 {
                        d.colors.insert(e, nums(&toks[2..3])?[0]);
                    }
                }
                "B" => d.boundary.extend(ids(&toks[1..])?),
                "component" if toks.len() >= 2 => {
                    let edge = ids(&toks[1..2])?[0];
                    let mut c = Component { edge, framing: None, role: Role::Plain, name: None };
                    let mut i = 2;
                    while i < toks.len() {
                        match toks[i] {
                            "framing" if i + 1 < toks.len() => {
                                c.framing = Some(nums(&toks[i + 1..i + 2])?[0]);
                                i += 2;
                            }
                            "name" if i + 1 < toks.len() => {
                                c.name = Some(toks[i + 1].to_string());
                                i += 2;
                            }
                            "surgery" => {
                                c.role = Role::Surgery;
                                i += 1;
                            }
                            "cargo" => {
                                c.role = Role::Cargo;
                                i += 1;
                            }
                            "axis" => {
                                c.role = Role::Axis;
                                i += 1;
                            }
                            t => return Err(err(&format!("unexpected token {t:?}"))),
                        }
                    }
                    d.components.push(c);
                }
                _ => return Err(err(&format!("unrecognized line {line:?}"))),
            }
        }
        d.validate()?;
        Ok(d)
    }
}
