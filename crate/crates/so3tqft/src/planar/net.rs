//! Planar networks of Temperley–Lieb nodes and their transfer-matrix sweep.
//!
//! A [`Net`] is a planar graph whose nodes carry linear combinations of
//! crossingless matchings of their ports (listed counterclockwise). The sweep
//! grows a disk region one node at a time; its state is a map from
//! crossingless matchings of the region boundary (encoded as parenthesis
//! bitmasks) to coefficients.

use rustc_hash::FxHashMap;

use super::coef::{Coef, CoefTable};
use super::tl::Matching;
use crate::error::{Error, Result};

/// Default cap on the number of boundary points during a sweep.
pub const DEFAULT_WIDTH_CAP: usize = 22;

/// Node id of the fixed outer boundary in relative evaluations.
pub const OUTER: u32 = u32::MAX;

pub type End = (u32, u32);

#[derive(Clone, Debug)]
pub struct Node {
    pub terms: Vec<(Matching, Coef)>,
    pub arity: usize,
}

/// A planar network with an optional outer boundary.
#[derive(Clone, Debug)]
pub struct Net {
    pub tab: CoefTable,
    pub nodes: Vec<Node>,
    links: Vec<Vec<End>>,
    outer: Vec<End>,
    removed: Vec<bool>,
    scalar: Coef,
}

const UNLINKED: End = (u32::MAX - 1, 0);

impl Net {
    pub fn new(p: usize) -> Net {
        Net {
            tab: CoefTable::new(p),
            nodes: Vec::new(),
            links: Vec::new(),
            outer: Vec::new(),
            removed: Vec::new(),
            scalar: Coef::one(p),
        }
    }

    pub fn p(&self) -> usize {
        self.tab.p
    }

    pub fn add_node(&mut self, terms: Vec<(Matching, Coef)>, arity: usize) -> u32 {
        debug_assert!(terms.iter().all(|(m, _)| m.len() == arity));
        self.nodes.push(Node { terms, arity });
        self.links.push(vec![UNLINKED; arity]);
        self.removed.push(false);
        (self.nodes.len() - 1) as u32
    }

    /// A two-port node carrying a plain strand.
    pub fn add_wire(&mut self) -> u32 {
        let p = self.p();
        self.add_node(vec![(vec![1, 0], Coef::one(p))], 2)
    }

    pub fn set_outer(&mut self, n: usize) {
        self.outer = vec![UNLINKED; n];
    }

    pub fn outer_len(&self) -> usize {
        self.outer.len()
    }

    pub fn mul_scalar(&mut self, c: &Coef) -> Result<()> {
        self.scalar = self.scalar.mul(c)?;
        Ok(())
    }

    fn slot(&mut self, e: End) -> &mut End {
        if e.0 == OUTER {
            &mut self.outer[e.1 as usize]
        } else {
            &mut self.links[e.0 as usize][e.1 as usize]
        }
    }

    fn partner(&self, e: End) -> End {
        if e.0 == OUTER {
            self.outer[e.1 as usize]
        } else {
            self.links[e.0 as usize][e.1 as usize]
        }
    }

    pub fn connect(&mut self, a: End, b: End) {
        *self.slot(a) = b;
        *self.slot(b) = a;
    }

    fn check_links(&self) -> Result<()> {
        for (i, ls) in self.links.iter().enumerate() {
            if self.removed[i] {
                continue;
            }
            for (j, &e) in ls.iter().enumerate() {
                if e == UNLINKED || self.partner(e) != (i as u32, j as u32) {
                    return Err(Error::Diagram(format!("port ({i}, {j}) is not linked consistently")));
                }
            }
        }
        for (j, &e) in self.outer.iter().enumerate() {
            if e == UNLINKED || self.partner(e) != (OUTER, j as u32) {
                return Err(Error::Diagram(format!("boundary point {j} is not linked")));
            }
        }
        Ok(())
    }

    /// Splice out every single-term node, folding its coefficient and any
    /// closed loops into the global scalar.
    fn splice_single_terms(&mut self) -> Result<()> {
        for id in 0..self.nodes.len() {
            if self.removed[id] || self.nodes[id].terms.len() != 1 {
                continue;
            }
            let (m, c) = self.nodes[id].terms[0].clone();
            self.scalar = self.scalar.mul(&c)?;
            for a in 0..m.len() {
                let b = m[a] as usize;
                if b < a {
                    continue;
                }
                let ea = (id as u32, a as u32);
                let eb = (id as u32, b as u32);
                let x = self.partner(ea);
                let y = self.partner(eb);
                if x == eb {
                    self.scalar = self.scalar.mul(&self.tab.delta)?;
                } else {
                    self.connect(x, y);
                }
            }
            self.removed[id] = true;
        }
        Ok(())
    }

    /// Replace every link from a node to itself by a wire node.
    fn break_self_links(&mut self) {
        let n = self.nodes.len();
        for id in 0..n {
            if self.removed[id] {
                continue;
            }
            for port in 0..self.nodes[id].arity {
                let e = (id as u32, port as u32);
                let f = self.partner(e);
                if f.0 == id as u32 && f.1 > port as u32 {
                    let w = self.add_wire();
                    self.connect(e, (w, 0));
                    self.connect(f, (w, 1));
                }
            }
        }
    }

    /// Closed evaluation; errors if the net has an outer boundary.
    pub fn evaluate(self, cap: usize) -> Result<Coef> {
        if !self.outer.is_empty() {
            return Err(Error::Diagram("closed evaluation of a net with boundary".into()));
        }
        let p = self.p();
        let v = self.evaluate_relative(cap)?;
        Ok(v.into_iter().next().map(|(_, c)| c).unwrap_or(Coef::zero(p)))
    }

    /// Expansion over crossingless matchings of the outer boundary points.
    pub fn evaluate_relative(mut self, cap: usize) -> Result<Vec<(Matching, Coef)>> {
        self.check_links()?;
        self.splice_single_terms()?;
        self.break_self_links();
        let p = self.p();
        let live: Vec<usize> = (0..self.nodes.len()).filter(|&i| !self.removed[i]).collect();
        // Connected components among live nodes.
        let mut comp = vec![usize::MAX; self.nodes.len()];
        let mut comps: Vec<Vec<usize>> = Vec::new();
        for &s in &live {
            if comp[s] != usize::MAX {
                continue;
            }
            let cid = comps.len();
            let mut stack = vec![s];
            comp[s] = cid;
            let mut members = Vec::new();
            while let Some(u) = stack.pop() {
                members.push(u);
                for &(v, _) in &self.links[u] {
                    if v != OUTER && comp[v as usize] == usize::MAX {
                        comp[v as usize] = cid;
                        stack.push(v as usize);
                    }
                }
            }
            members.sort_unstable();
            comps.push(members);
        }
        let nout = self.outer.len();
        let mut result: Vec<(Vec<u8>, Coef)> = vec![(vec![u8::MAX; nout], self.scalar)];
        for (o, &e) in self.outer.iter().enumerate() {
            if e.0 == OUTER && (e.1 as usize) > o {
                for r in result.iter_mut() {
                    r.0[o] = e.1 as u8;
                    r.0[e.1 as usize] = o as u8;
                }
            }
        }
        for members in &comps {
            let part = self.sweep_component(members, cap)?;
            let mut next = Vec::with_capacity(result.len() * part.len());
            for (m, c) in &result {
                for (pairs, c2) in &part {
                    let mut m2 = m.clone();
                    for &(x, y) in pairs {
                        m2[x] = y as u8;
                        m2[y] = x as u8;
                    }
                    let cc = c.mul(c2)?;
                    if !cc.is_zero() {
                        next.push((m2, cc));
                    }
                }
            }
            result = next;
            if result.is_empty() {
                return Ok(Vec::new());
            }
        }
        let mut acc: FxHashMap<Vec<u8>, Coef> = FxHashMap::default();
        for (m, c) in result {
            let e = acc.entry(m).or_insert_with(|| Coef::zero(p));
            *e = e.add(&c)?;
        }
        let mut out: Vec<(Matching, Coef)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        out.sort_by(|a, b| a.0.cmp(&b.0));
        Ok(out)
    }

    fn sweep_component(&self, members: &[usize], cap: usize) -> Result<Vec<(Vec<(usize, usize)>, Coef)>> {
        if cap > 63 {
            return Err(Error::Invalid("width cap must be at most 63".into()));
        }
        let mut last_err = None;
        let mut starts: Vec<usize> = members.to_vec();
        starts.sort_by_key(|&i| (self.nodes[i].terms.len(), i));
        for &s in starts.iter().take(24) {
            match self.sweep_from(members, s, cap) {
                Ok(v) => return Ok(v),
                Err(e @ Error::Overflow) => return Err(e),
                Err(e) => last_err = Some(e),
            }
        }
        Err(last_err.unwrap_or_else(|| Error::Diagram("empty component".into())))
    }

    fn sweep_from(&self, members: &[usize], start: usize, cap: usize) -> Result<Vec<(Vec<(usize, usize)>, Coef)>> {
        let p = self.p();
        let mut in_region = vec![false; self.nodes.len()];
        let mut remaining = members.len();
        let start_node = &self.nodes[start];
        if start_node.arity > cap {
            return Err(Error::WidthCap { width: start_node.arity, cap });
        }
        let mut boundary: Vec<End> = (0..start_node.arity).map(|j| (start as u32, j as u32)).collect();
        let mut states: FxHashMap<u64, Coef> = FxHashMap::default();
        for (m, c) in &start_node.terms {
            let key = encode(m);
            let e = states.entry(key).or_insert_with(|| Coef::zero(p));
            *e = e.add(c)?;
        }
        in_region[start] = true;
        remaining -= 1;
        let mut dpow = vec![Coef::one(p)];
        while remaining > 0 {
            let plan = self.best_candidate(&boundary, &in_region, cap)?;
            let node = &self.nodes[plan.node];
            let l = boundary.len();
            let k = node.arity;
            let r = plan.r;
            // glue_b[i] = P index glued to boundary position i.
            let mut glue_b = vec![usize::MAX; l];
            let mut glue_p = vec![usize::MAX; k];
            for j in 0..r {
                let bi = (plan.t + j) % l;
                let pj = (plan.q + r - 1 - j) % k;
                glue_b[bi] = pj;
                glue_p[pj] = bi;
            }
            let mut new_index = vec![usize::MAX; l + k];
            let mut new_boundary = Vec::with_capacity(l + k - 2 * r);
            for j in 0..l - r {
                let bi = (plan.t + r + j) % l;
                new_index[bi] = new_boundary.len();
                new_boundary.push(boundary[bi]);
            }
            for j in 0..k - r {
                let pj = (plan.q + r + j) % k;
                new_index[l + pj] = new_boundary.len();
                new_boundary.push((plan.node as u32, pj as u32));
            }
            let nb = new_boundary.len();
            let mut next: FxHashMap<u64, Coef> = FxHashMap::default();
            next.reserve(states.len());
            let mut sp = vec![0u8; l];
            let mut seen = vec![false; l + k];
            let mut res = vec![0u8; nb];
            for (&key, coef) in &states {
                decode(key, l, &mut sp);
                for (tm, tc) in &node.terms {
                    seen.iter_mut().for_each(|s| *s = false);
                    let inner = |pt: usize| -> usize {
                        if pt < l {
                            sp[pt] as usize
                        } else {
                            l + tm[pt - l] as usize
                        }
                    };
                    let glue = |pt: usize| -> usize {
                        if pt < l {
                            let g = glue_b[pt];
                            if g == usize::MAX {
                                usize::MAX
                            } else {
                                l + g
                            }
                        } else {
                            glue_p[pt - l]
                        }
                    };
                    for s in 0..l + k {
                        if new_index[s] == usize::MAX || seen[s] {
                            continue;
                        }
                        seen[s] = true;
                        let mut cur = s;
                        loop {
                            let nx = inner(cur);
                            seen[nx] = true;
                            let g = glue(nx);
                            if g == usize::MAX {
                                res[new_index[s]] = new_index[nx] as u8;
                                res[new_index[nx]] = new_index[s] as u8;
                                break;
                            }
                            seen[g] = true;
                            cur = g;
                        }
                    }
                    let mut loops = 0usize;
                    for s in 0..l + k {
                        if seen[s] {
                            continue;
                        }
                        loops += 1;
                        let mut cur = s;
                        loop {
                            seen[cur] = true;
                            let nx = inner(cur);
                            seen[nx] = true;
                            let g = glue(nx);
                            if seen[g] {
                                break;
                            }
                            cur = g;
                        }
                    }
                    while dpow.len() <= loops {
                        let last = *dpow.last().unwrap();
                        dpow.push(last.mul(&self.tab.delta)?);
                    }
                    let c = coef.mul(tc)?.mul(&dpow[loops])?;
                    if c.is_zero() {
                        continue;
                    }
                    let nk = encode(&res);
                    match next.get_mut(&nk) {
                        Some(e) => *e = e.add(&c)?,
                        None => {
                            next.insert(nk, c);
                        }
                    }
                }
            }
            next.retain(|_, c| !c.is_zero());
            states = next;
            boundary = new_boundary;
            in_region[plan.node] = true;
            remaining -= 1;
            if states.is_empty() {
                return Ok(Vec::new());
            }
        }
        // All boundary points now face the outer boundary.
        let l = boundary.len();
        let outer_idx: Vec<usize> = boundary
            .iter()
            .map(|&e| {
                let f = self.partner(e);
                debug_assert_eq!(f.0, OUTER);
                f.1 as usize
            })
            .collect();
        let mut sp = vec![0u8; l];
        let mut out = Vec::with_capacity(states.len());
        let mut keys: Vec<_> = states.into_iter().collect();
        keys.sort_by_key(|(k, _)| *k);
        for (key, c) in keys {
            decode(key, l, &mut sp);
            let pairs = (0..l)
                .filter(|&i| (sp[i] as usize) > i)
                .map(|i| (outer_idx[i], outer_idx[sp[i] as usize]))
                .collect();
            out.push((pairs, c));
        }
        Ok(out)
    }

    fn best_candidate(&self, boundary: &[End], in_region: &[bool], cap: usize) -> Result<Plan> {
        let l = boundary.len();
        let mut pos_of: FxHashMap<End, usize> = FxHashMap::default();
        let mut cands: Vec<u32> = Vec::new();
        for (i, &e) in boundary.iter().enumerate() {
            let f = self.partner(e);
            if f.0 != OUTER && !in_region[f.0 as usize] {
                pos_of.insert(f, i);
                cands.push(f.0);
            }
        }
        cands.sort_unstable();
        cands.dedup();
        let mut best: Option<(usize, usize, u32, Plan)> = None;
        let mut min_over_cap = usize::MAX;
        for &c in &cands {
            let k = self.nodes[c as usize].arity;
            let glued: Vec<(usize, usize)> = (0..k)
                .filter_map(|j| pos_of.get(&(c, j as u32)).map(|&b| (j, b)))
                .collect();
            let r = glued.len();
            let Some((t, q)) = contiguous_plan(l, k, &glued) else { continue };
            let width = l + k - 2 * r;
            if width > cap {
                min_over_cap = min_over_cap.min(width);
                continue;
            }
            let key = (width, usize::MAX - r, c);
            if best.as_ref().map_or(true, |b| (b.0, b.1, b.2) > key) {
                best = Some((key.0, key.1, key.2, Plan { node: c as usize, t, q, r }));
            }
        }
        match best {
            Some(b) => Ok(b.3),
            None if min_over_cap != usize::MAX => Err(Error::WidthCap { width: min_over_cap, cap }),
            None => Err(Error::Diagram("sweep could not find a planar gluing".into())),
        }
    }
}

#[derive(Clone, Copy, Debug)]
struct Plan {
    node: usize,
    t: usize,
    q: usize,
    r: usize,
}

/// Given glued pairs `(node port, boundary position)`, check that the
/// boundary positions form a cyclic run and the node ports the reversed run.
fn contiguous_plan(l: usize, k: usize, glued: &[(usize, usize)]) -> Option<(usize, usize)> {
    let r = glued.len();
    if r == 0 {
        return None;
    }
    let mut at = vec![usize::MAX; l];
    for &(j, b) in glued {
        at[b] = j;
    }
    let fits = |t: usize| -> Option<(usize, usize)> {
        let q = (at[t] + k - (r - 1) % k) % k;
        (0..r).all(|j| at[(t + j) % l] == (q + r - 1 - j) % k).then_some((t, q))
    };
    if r == l {
        // The whole boundary is glued: any rotation may start the run.
        (0..l).find_map(fits)
    } else {
        let t = (0..l).find(|&i| at[i] != usize::MAX && at[(i + l - 1) % l] == usize::MAX)?;
        fits(t)
    }
}

/// Parenthesis encoding: bit `i` is set when `i` opens an arc.
pub fn encode(m: &[u8]) -> u64 {
    let mut key = 0u64;
    for (i, &j) in m.iter().enumerate() {
        if (j as usize) > i {
            key |= 1 << i;
        }
    }
    key
}

pub fn decode(key: u64, l: usize, out: &mut [u8]) {
    let mut stack = [0u8; 64];
    let mut sp = 0;
    for i in 0..l {
        if key >> i & 1 == 1 {
            stack[sp] = i as u8;
            sp += 1;
        } else {
            sp -= 1;
            let j = stack[sp];
            out[i] = j;
            out[j as usize] = i as u8;
        }
    }
}
