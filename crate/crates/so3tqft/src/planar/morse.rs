//! Build diagrams bottom-to-top from elementary Morse moves.
//!
//! The builder keeps the list of open strands at the current height, left to
//! right. Boundary points of the finished diagram run counterclockwise:
//! bottom strands left to right, then top strands right to left.

use std::collections::BTreeMap;

use super::diagram::ColoredDiagram;

#[derive(Clone, Debug, Default)]
pub struct Morse {
    strands: Vec<usize>,
    parent: Vec<usize>,
    color: Vec<i64>,
    label: Vec<Option<usize>>,
    crossings: Vec<[usize; 4]>,
    vertices: Vec<[usize; 3]>,
    loops: Vec<usize>,
    bottom: Vec<usize>,
}

impl Morse {
    pub fn new() -> Morse {
        Morse::default()
    }

    /// Start with open strands entering from the bottom boundary.
    pub fn with_bottom(strands: &[(i64, Option<usize>)]) -> Morse {
        let mut m = Morse::new();
        for &(c, l) in strands {
            let e = m.new_edge(c, l);
            m.strands.push(e);
            m.bottom.push(e);
        }
        m
    }

    pub fn width(&self) -> usize {
        self.strands.len()
    }

    fn new_edge(&mut self, color: i64, label: Option<usize>) -> usize {
        let id = self.parent.len();
        self.parent.push(id);
        self.color.push(color);
        self.label.push(label);
        id
    }

    fn find(&mut self, mut e: usize) -> usize {
        while self.parent[e] != e {
            self.parent[e] = self.parent[self.parent[e]];
            e = self.parent[e];
        }
        e
    }

    /// Color and label of the strand at `pos`.
    pub fn strand_info(&mut self, pos: usize) -> (i64, Option<usize>) {
        let e = self.find(self.strands[pos]);
        (self.color[e], self.label[e])
    }

    /// A cup whose two ends become strands `pos` and `pos + 1`.
    pub fn cup(&mut self, pos: usize, color: i64, label: Option<usize>) -> &mut Self {
        let e = self.new_edge(color, label);
        self.strands.insert(pos, e);
        self.strands.insert(pos, e);
        self
    }

    /// Join strands `pos` and `pos + 1` with a cap.
    pub fn cap(&mut self, pos: usize) -> &mut Self {
        let a = self.find(self.strands[pos]);
        let b = self.find(self.strands[pos + 1]);
        assert_eq!(self.color[a], self.color[b], "cap joins strands of different colors");
        self.strands.drain(pos..pos + 2);
        if a == b {
            self.loops.push(a);
        } else {
            self.parent[b] = a;
        }
        self
    }

    /// Cross strands `pos` and `pos + 1`, which swap places.
    pub fn cross(&mut self, pos: usize, left_under: bool) -> &mut Self {
        let bl = self.strands[pos];
        let br = self.strands[pos + 1];
        let (cl, ll) = self.strand_info(pos);
        let (cr, lr) = self.strand_info(pos + 1);
        // The left strand ends at the top right, and vice versa.
        let tr = self.new_edge(cl, ll);
        let tl = self.new_edge(cr, lr);
        let x = if left_under { [bl, br, tr, tl] } else { [br, tr, tl, bl] };
        self.crossings.push(x);
        self.strands[pos] = tl;
        self.strands[pos + 1] = tr;
        self
    }

    /// Merge strands `pos` and `pos + 1` at a trivalent vertex.
    pub fn merge(&mut self, pos: usize, color: i64, label: Option<usize>) -> &mut Self {
        let l = self.strands[pos];
        let r = self.strands[pos + 1];
        let t = self.new_edge(color, label);
        self.vertices.push([t, l, r]);
        self.strands.splice(pos..pos + 2, [t]);
        self
    }

    /// Split strand `pos` into two at a trivalent vertex.
    pub fn split(&mut self, pos: usize, left: (i64, Option<usize>), right: (i64, Option<usize>)) -> &mut Self {
        let b = self.strands[pos];
        let tl = self.new_edge(left.0, left.1);
        let tr = self.new_edge(right.0, right.1);
        self.vertices.push([b, tr, tl]);
        self.strands.splice(pos..pos + 1, [tl, tr]);
        self
    }

    /// A curl on strand `pos` contributing `-A^{±3}` per unit of color one.
    pub fn twist(&mut self, pos: usize, positive: bool) -> &mut Self {
        let (c, l) = self.strand_info(pos);
        self.cup(pos + 1, c, l);
        self.cross(pos, !positive);
        self.cap(pos + 1)
    }

    /// A circle around strands `i..=j`, passing over them below and under
    /// them above.
    pub fn clasp(&mut self, i: usize, j: usize, color: i64, label: Option<usize>) -> &mut Self {
        let n = j + 1 - i;
        self.cup(i, color, label);
        for s in 0..n {
            self.cross(i + 1 + s, false);
        }
        for s in (0..n).rev() {
            self.cross(i + 1 + s, false);
        }
        self.cap(i)
    }

    /// Pure braid generator: strand `i` goes once around strand `j > i`.
    pub fn pure_braid(&mut self, i: usize, j: usize, positive: bool) -> &mut Self {
        for k in (i + 1..j).rev() {
            self.cross(k, positive);
        }
        self.cross(i, positive);
        self.cross(i, positive);
        for k in i + 1..j {
            self.cross(k, !positive);
        }
        self
    }

    /// Finish: remaining strands exit through the top boundary.
    pub fn finish(mut self) -> ColoredDiagram {
        let mut d = ColoredDiagram::new();
        let mut used: BTreeMap<usize, ()> = BTreeMap::new();
        let crossings = std::mem::take(&mut self.crossings);
        let vertices = std::mem::take(&mut self.vertices);
        for x in &crossings {
            let r = [self.find(x[0]), self.find(x[1]), self.find(x[2]), self.find(x[3])];
            for &e in &r {
                used.insert(e, ());
            }
            d.crossings.push(r);
        }
        for v in &vertices {
            let r = [self.find(v[0]), self.find(v[1]), self.find(v[2])];
            for &e in &r {
                used.insert(e, ());
            }
            d.vertices.push(r);
        }
        let bottom = self.bottom.clone();
        let top: Vec<usize> = self.strands.iter().rev().copied().collect();
        for e in bottom.into_iter().chain(top) {
            let r = self.find(e);
            used.insert(r, ());
            d.boundary.push(r);
        }
        let loops = std::mem::take(&mut self.loops);
        for e in loops {
            used.insert(e, ());
            d.loops.push(e);
        }
        for &e in used.keys() {
            d.colors.insert(e, self.color[e]);
            if let Some(l) = self.label[e] {
                d.labels.insert(e, l);
            }
        }
        d
    }
}
