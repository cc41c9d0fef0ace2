//! Signed subdivision of parallel bundles and its inverse, suppression.
//!
//! Subdividing a monochromatic bundle of t parallel xy-edges adds a vertex
//! v, t xv-edges with the bundle's sign and t vy-edges that are positive.
//! A vertex can be suppressed when its edges have that shape up to
//! switching:
//!
//! - two distinct neighbours x and y, each joined to v by a monochromatic
//!   bundle, both bundles of size t: they become t xy-edges signed by the
//!   product of the two bundle signs;
//! - one neighbour x joined by 2t edges, either all of one sign or t of
//!   each: this undoes the subdivision of t loops at x, which become
//!   negative loops in the mixed case and positive loops otherwise.
//!
//! A graph is irreducible when no vertex can be suppressed.

use crate::error::{Error, Result};
use crate::graph::{Edge, EdgeId, Sign, SignedGraph, VertexId};

/// Subdivide a bundle of same-sign parallel edges (or loops at one vertex).
/// The bundle edges are removed, the remaining edges keep their relative
/// order, and the xv-edges followed by the vy-edges are appended, x being
/// the first endpoint of the first bundle edge.
pub fn subdivide_multiedge(g: &SignedGraph, bundle: &[EdgeId]) -> Result<SignedGraph> {
    if bundle.is_empty() {
        return Err(Error::Precondition("empty bundle".into()));
    }
    let mut ids = bundle.to_vec();
    ids.sort_unstable();
    ids.dedup();
    if ids.len() != bundle.len() {
        return Err(Error::Precondition("bundle repeats an edge".into()));
    }
    if let Some(&e) = ids.iter().find(|&&e| e >= g.edge_count()) {
        return Err(Error::UnknownEdge(e));
    }
    let first = g.edge(bundle[0]);
    for &e in &ids {
        let ed = g.edge(e);
        if ed.pair() != first.pair() {
            return Err(Error::Precondition(format!("edge {e} is not parallel to edge {}", bundle[0])));
        }
        if ed.sign != first.sign {
            return Err(Error::Precondition("bundle mixes signs".into()));
        }
    }
    let (x, y) = (first.u, first.v);
    let t = ids.len();
    let mut labels = g.labels().to_vec();
    let v = labels.len();
    labels.push(g.fresh_label("s"));
    let mut edges: Vec<Edge> = g
        .edges()
        .iter()
        .enumerate()
        .filter(|(i, _)| ids.binary_search(i).is_err())
        .map(|(_, e)| *e)
        .collect();
    for _ in 0..t {
        edges.push(Edge { u: x, v, sign: first.sign });
    }
    for _ in 0..t {
        edges.push(Edge { u: v, v: y, sign: Sign::Positive });
    }
    Ok(SignedGraph::from_parts(labels, edges))
}

/// What suppressing a vertex produces.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Replacement {
    Bundle { x: VertexId, y: VertexId, t: usize, sign: Sign },
    Loops { x: VertexId, t: usize, sign: Sign },
}

fn suppression(g: &SignedGraph, v: VertexId) -> Option<Replacement> {
    let inc: Vec<Edge> = g.edges().iter().copied().filter(|e| e.touches(v)).collect();
    if inc.is_empty() || inc.iter().any(|e| e.is_loop()) {
        return None;
    }
    let ns = g.neighbors(v);
    let bundle = |x: VertexId| {
        let b: Vec<Sign> = inc.iter().filter(|e| e.other(v) == x).map(|e| e.sign).collect();
        let p = b.iter().filter(|s| s.is_positive()).count();
        (p, b.len() - p)
    };
    match ns.as_slice() {
        [x, y] => {
            let (px, qx) = bundle(*x);
            let (py, qy) = bundle(*y);
            let tx = px + qx;
            if tx != py + qy || (px != 0 && qx != 0) || (py != 0 && qy != 0) {
                return None;
            }
            let sx = if qx > 0 { Sign::Negative } else { Sign::Positive };
            let sy = if qy > 0 { Sign::Negative } else { Sign::Positive };
            Some(Replacement::Bundle { x: *x, y: *y, t: tx, sign: sx.mul(sy) })
        }
        [x] => {
            let (p, q) = bundle(*x);
            let total = p + q;
            if total % 2 != 0 {
                return None;
            }
            let t = total / 2;
            if p == q {
                Some(Replacement::Loops { x: *x, t, sign: Sign::Negative })
            } else if p == 0 || q == 0 {
                Some(Replacement::Loops { x: *x, t, sign: Sign::Positive })
            } else {
                None
            }
        }
        _ => None,
    }
}

/// Vertices that can be suppressed, in id order.
pub fn suppressible_vertices(g: &SignedGraph) -> Vec<VertexId> {
    (0..g.vertex_count()).filter(|&v| suppression(g, v).is_some()).collect()
}

pub fn is_irreducible(g: &SignedGraph) -> bool {
    suppressible_vertices(g).is_empty()
}

/// Suppress one vertex. The vertex disappears, the other edges keep their
/// order and the replacement edges are appended.
pub fn suppress_vertex(g: &SignedGraph, v: VertexId) -> Option<SignedGraph> {
    let rep = suppression(g, v)?;
    let n = g.vertex_count();
    let remap = |u: VertexId| if u > v { u - 1 } else { u };
    let mut labels = g.labels().to_vec();
    labels.remove(v);
    let mut edges: Vec<Edge> = g
        .edges()
        .iter()
        .filter(|e| !e.touches(v))
        .map(|e| Edge { u: remap(e.u), v: remap(e.v), sign: e.sign })
        .collect();
    match rep {
        Replacement::Bundle { x, y, t, sign } => {
            for _ in 0..t {
                edges.push(Edge { u: remap(x), v: remap(y), sign });
            }
        }
        Replacement::Loops { x, t, sign } => {
            for _ in 0..t {
                edges.push(Edge { u: remap(x), v: remap(x), sign });
            }
        }
    }
    debug_assert!(labels.len() + 1 == n);
    Some(SignedGraph::from_parts(labels, edges))
}

/// Suppress until irreducible, letting `choose` pick among the
/// suppressible vertices each round.
pub fn reduce_with(g: &SignedGraph, mut choose: impl FnMut(&[VertexId]) -> VertexId) -> SignedGraph {
    let mut cur = g.clone();
    loop {
        let cands = suppressible_vertices(&cur);
        if cands.is_empty() {
            return cur;
        }
        let v = choose(&cands);
        cur = suppress_vertex(&cur, v).expect("chosen vertex is suppressible");
    }
}

/// Suppress the lowest suppressible vertex until none is left.
pub fn reduce_to_irreducible(g: &SignedGraph) -> SignedGraph {
    reduce_with(g, |c| c[0])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frustration::frustration_index;
    use crate::iso::switching_isomorphic;

    fn sg(s: &str) -> SignedGraph {
        SignedGraph::parse_sg(s).unwrap()
    }

    #[test]
    fn subdivide_single_edge() {
        let g = sg("x y +\n");
        let h = subdivide_multiedge(&g, &[0]).unwrap();
        assert_eq!(h.to_sg(), "x s2 +\ns2 y +\n");
    }

    #[test]
    fn subdivide_negative_pair() {
        let g = sg("x y -\nx y -\n");
        let h = subdivide_multiedge(&g, &[0, 1]).unwrap();
        assert_eq!(h.to_sg(), "x s2 -\nx s2 -\ns2 y +\ns2 y +\n");
        assert_eq!(suppress_vertex(&h, 2).unwrap(), g);
        // two negative parallel edges form a positive digon, itself reducible
        assert_eq!(reduce_to_irreducible(&g).to_sg(), "y y +\n");
    }

    #[test]
    fn bad_bundles() {
        let g = sg("x y -\nx y +\ny z +\n");
        assert!(matches!(subdivide_multiedge(&g, &[0, 1]), Err(Error::Precondition(_))));
        assert!(matches!(subdivide_multiedge(&g, &[0, 2]), Err(Error::Precondition(_))));
        assert!(matches!(subdivide_multiedge(&g, &[]), Err(Error::Precondition(_))));
        assert_eq!(subdivide_multiedge(&g, &[5]), Err(Error::UnknownEdge(5)));
    }

    #[test]
    fn negative_pentagon_reduces_to_a_loop() {
        let g = sg("a b +\nb c -\nc d +\nd e +\ne a +\n");
        let r = reduce_to_irreducible(&g);
        assert_eq!(r.vertex_count(), 1);
        assert_eq!(r.to_sg(), "e e -\n");
        let pos = sg("a b +\nb c -\nc d +\nd e +\ne a -\n");
        assert_eq!(reduce_to_irreducible(&pos).to_sg(), "e e +\n");
    }

    #[test]
    fn loops_subdivide_and_suppress() {
        let g = sg("x x -\nx x -\n");
        let h = subdivide_multiedge(&g, &[0, 1]).unwrap();
        assert_eq!(h.to_sg(), "x s1 -\nx s1 -\ns1 x +\ns1 x +\n");
        assert_eq!(frustration_index(&h).unwrap().ell, 2);
        assert_eq!(suppress_vertex(&h, 1).unwrap(), g);
        assert_eq!(reduce_to_irreducible(&h).to_sg(), "s1 s1 -\ns1 s1 -\n");
        // a digon of one positive and one negative edge hanging off x
        let d = sg("x x -\nx v +\nx v -\n");
        assert_eq!(reduce_to_irreducible(&d).to_sg(), "x x -\nx x -\n");
    }

    #[test]
    fn k4_is_irreducible() {
        let k4 = sg("a b -\na c -\na d -\nb c -\nb d -\nc d -\n");
        assert!(is_irreducible(&k4));
        let sub = subdivide_multiedge(&k4, &[2]).unwrap();
        assert!(!is_irreducible(&sub));
        assert!(switching_isomorphic(&reduce_to_irreducible(&sub), &k4).unwrap());
    }
}
