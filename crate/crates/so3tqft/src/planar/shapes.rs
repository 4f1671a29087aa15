//! Standard closed diagrams: colored unknots, theta and tetrahedral
//! networks, Hopf links.

use super::diagram::{ColoredDiagram, Component, Role};
use super::morse::Morse;

/// An unknot colored `n` with the given framing.
pub fn unknot(n: i64, framing: i64) -> ColoredDiagram {
    let mut d = ColoredDiagram::new();
    d.loops.push(0);
    d.colors.insert(0, n);
    d.components.push(Component { edge: 0, framing: Some(framing), role: Role::Plain, name: None });
    d
}

/// Theta network with edges colored `a, b, c`.
pub fn theta(a: i64, b: i64, c: i64) -> ColoredDiagram {
    let mut d = ColoredDiagram::new();
    d.vertices.push([0, 1, 2]);
    d.vertices.push([2, 1, 0]);
    d.colors.insert(0, a);
    d.colors.insert(1, b);
    d.colors.insert(2, c);
    d
}

/// Tetrahedral network `Tet[a b e; c d f]` with vertex triples
/// `(a,d,e)`, `(b,c,e)`, `(a,b,f)`, `(c,d,f)`.
pub fn tetrahedron(a: i64, b: i64, e: i64, c: i64, d: i64, f: i64) -> ColoredDiagram {
    // Edge ids: e = V1V2, a = V1V3, d = V1V4, b = V2V3, c = V2V4, f = V3V4.
    let (ee, ea, ed, eb, ec, ef) = (0, 1, 2, 3, 4, 5);
    let mut g = ColoredDiagram::new();
    g.vertices.push([ee, ed, ea]);
    g.vertices.push([eb, ec, ee]);
    g.vertices.push([ea, ef, eb]);
    g.vertices.push([ed, ec, ef]);
    for (id, col) in [(ee, e), (ea, a), (ed, d), (eb, b), (ec, c), (ef, f)] {
        g.colors.insert(id, col);
    }
    g
}

/// Zero-framed Hopf link colored `(i, j)`.
pub fn hopf(i: i64, j: i64) -> ColoredDiagram {
    let mut m = Morse::new();
    m.cup(0, i, Some(0));
    m.cup(2, j, Some(1));
    m.pure_braid(1, 2, true);
    m.cap(2);
    m.cap(0);
    m.finish()
}

/// Number of faces of the ribbon graph given by the vertex rotations.
pub fn face_count(d: &ColoredDiagram) -> usize {
    use std::collections::HashMap;
    // Darts: (vertex, slot). The next dart around a face: go along the edge
    // to the other end, then turn to the next slot counterclockwise.
    let mut ends: HashMap<usize, Vec<(usize, usize)>> = HashMap::new();
    for (vi, v) in d.vertices.iter().enumerate() {
        for (k, &e) in v.iter().enumerate() {
            ends.entry(e).or_default().push((vi, k));
        }
    }
    let mut seen = std::collections::HashSet::new();
    let mut faces = 0;
    for (vi, v) in d.vertices.iter().enumerate() {
        for k in 0..v.len() {
            if seen.contains(&(vi, k)) {
                continue;
            }
            faces += 1;
            let mut cur = (vi, k);
            while seen.insert(cur) {
                let e = d.vertices[cur.0][cur.1];
                let pair = &ends[&e];
                let other = if pair[0] == cur { pair[1] } else { pair[0] };
                let len = d.vertices[other.0].len();
                cur = (other.0, (other.1 + 1) % len);
            }
        }
    }
    faces
}
