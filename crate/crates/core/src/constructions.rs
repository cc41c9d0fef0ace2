//! Generators: the H-join of two signed graphs and the ladder family.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::frustration::to_minimum_signature;
use crate::graph::{EdgeCut, EdgeId, GraphBuilder, Sign, SignedGraph, SwitchSet};
use crate::planar::RotationSystem;

/// Join `g1` and `g2` along negative edges `xy` and `uv`: delete both and
/// add a negative edge xu and a positive edge yv. Vertices are prefixed
/// `g1.` and `g2.`; x and u are the first endpoints of the designated edges.
pub fn h_join(g1: &SignedGraph, xy: EdgeId, g2: &SignedGraph, uv: EdgeId) -> Result<SignedGraph> {
    for (g, e) in [(g1, xy), (g2, uv)] {
        if e >= g.edge_count() {
            return Err(Error::UnknownEdge(e));
        }
        let ed = g.edge(e);
        if ed.is_loop() {
            return Err(Error::Precondition(format!("designated edge {e} is a loop")));
        }
        if ed.sign.is_positive() {
            return Err(Error::Precondition(format!("designated edge {e} is positive")));
        }
    }
    let mut b = GraphBuilder::new();
    for (g, skip, pre) in [(g1, xy, "g1."), (g2, uv, "g2.")] {
        for l in g.labels() {
            b.vertex(&format!("{pre}{l}"));
        }
        for (i, e) in g.edges().iter().enumerate() {
            if i != skip {
                b.edge(&format!("{pre}{}", g.label(e.u)), &format!("{pre}{}", g.label(e.v)), e.sign);
            }
        }
    }
    let (a, c) = (g1.edge(xy), g2.edge(uv));
    let x = format!("g1.{}", g1.label(a.u));
    let y = format!("g1.{}", g1.label(a.v));
    let u = format!("g2.{}", g2.label(c.u));
    let v = format!("g2.{}", g2.label(c.v));
    b.edge(&x, &u, Sign::Negative);
    b.edge(&y, &v, Sign::Positive);
    Ok(b.build())
}

/// H-join after switching both graphs to their least minimum signature,
/// joining at the lowest-id negative non-loop edge of each.
pub fn h_join_at_first_negative(g1: &SignedGraph, g2: &SignedGraph) -> Result<SignedGraph> {
    let (h1, _) = to_minimum_signature(g1)?;
    let (h2, _) = to_minimum_signature(g2)?;
    let pick = |h: &SignedGraph| {
        (0..h.edge_count())
            .find(|&e| h.edge(e).sign.is_negative() && !h.edge(e).is_loop())
            .ok_or_else(|| Error::Precondition("no negative non-loop edge".into()))
    };
    h_join(&h1, pick(&h1)?, &h2, pick(&h2)?)
}

fn ladder_labels(t: usize) -> (Vec<String>, Vec<String>) {
    ((1..=t).map(|i| format!("a{i}")).collect(), (1..=t).map(|i| format!("b{i}")).collect())
}

fn path(b: &mut GraphBuilder, stops: &[&str]) {
    for w in stops.windows(2) {
        b.edge(w[0], w[1], Sign::Positive);
    }
}

/// The ladder graph of order t on x, y, z, w, with a1..at subdividing xz
/// and b1..bt subdividing yw. Edges in order: the negative xw, the two
/// negative yz, xy, wz, the xz-path, the yw-path, and the positive xw-path
/// x, b1, a1, b2, a2, ..., bt, at, w.
pub fn ghat(t: usize) -> SignedGraph {
    let (a, bs) = ladder_labels(t);
    let mut b = GraphBuilder::new();
    for l in ["x", "y", "z", "w"] {
        b.vertex(l);
    }
    for l in a.iter().chain(&bs) {
        b.vertex(l);
    }
    b.edge("x", "w", Sign::Negative);
    b.edge("y", "z", Sign::Negative);
    b.edge("y", "z", Sign::Negative);
    b.edge("x", "y", Sign::Positive);
    b.edge("w", "z", Sign::Positive);
    let mut xz = vec!["x"];
    xz.extend(a.iter().map(String::as_str));
    xz.push("z");
    path(&mut b, &xz);
    let mut yw = vec!["y"];
    yw.extend(bs.iter().map(String::as_str));
    yw.push("w");
    path(&mut b, &yw);
    let mut xw = vec!["x"];
    for i in 0..t {
        xw.push(&bs[i]);
        xw.push(&a[i]);
    }
    xw.push("w");
    path(&mut b, &xw);
    b.build()
}

#[derive(Clone, Debug)]
pub struct PlanarLadder {
    pub graph: SignedGraph,
    pub rotation: RotationSystem,
    /// The equilibrated cuts through the edges at the new vertex s.
    pub cuts: [EdgeCut; 2],
}

#[derive(Serialize)]
struct CutPair<'a> {
    cuts: &'a [EdgeCut; 2],
}

impl PlanarLadder {
    pub fn cuts_json(&self) -> serde_json::Value {
        serde_json::to_value(CutPair { cuts: &self.cuts }).expect("serializable")
    }
}

/// The ladder of order t drawn in the plane: its single crossing, between
/// bt-w and at-z, is replaced by a vertex s of degree four.
pub fn ghat_planar(t: usize) -> Result<PlanarLadder> {
    if t == 0 {
        return Err(Error::Precondition("the ladder of order 0 has no crossing".into()));
    }
    let (a, bs) = ladder_labels(t);
    let mut b = GraphBuilder::new();
    for l in ["x", "y", "z", "w"] {
        b.vertex(l);
    }
    for l in a.iter().chain(&bs) {
        b.vertex(l);
    }
    b.vertex("s");
    b.edge("x", "w", Sign::Negative);
    b.edge("y", "z", Sign::Negative);
    b.edge("y", "z", Sign::Negative);
    b.edge("x", "y", Sign::Positive);
    b.edge("w", "z", Sign::Positive);
    let mut xz = vec!["x"];
    xz.extend(a.iter().map(String::as_str));
    xz.extend(["s", "z"]);
    path(&mut b, &xz);
    let mut yw = vec!["y"];
    yw.extend(bs.iter().map(String::as_str));
    yw.extend(["s", "w"]);
    path(&mut b, &yw);
    let mut xw = vec!["x"];
    for i in 0..t {
        xw.push(&bs[i]);
        xw.push(&a[i]);
    }
    xw.push("w");
    path(&mut b, &xw);
    let g = b.build();

    // x and z span a diagonal, y and w the bottom line; s is where they meet
    let n = g.vertex_count();
    let mut pos = vec![(0.0, 0.0); n];
    let at = |l: &str| g.vertex_id(l).expect("ladder vertex");
    pos[at("x")] = (0.0, 4.0);
    pos[at("y")] = (-3.5, -2.0);
    pos[at("z")] = (4.3, -4.0);
    pos[at("w")] = (5.0, -2.0);
    pos[at("s")] = (3.225, -2.0);
    let d = (t + 1) as f64;
    for i in 1..=t {
        let r = 0.75 * i as f64 / d;
        pos[at(&format!("a{i}"))] = (4.3 * r, 4.0 - 8.0 * r);
        pos[at(&format!("b{i}"))] = (-3.5 + 6.725 * i as f64 / d, -2.0);
    }
    let mut bend = vec![0.0; g.edge_count()];
    bend[1] = 0.15;
    bend[2] = -0.15;
    let rotation = RotationSystem::from_drawing(&g, &pos, &bend)?;
    let side = |ls: &[&str]| SwitchSet::from_vertices(ls.iter().map(|l| at(l)));
    let cuts = [g.cut(side(&["w", "z"])), g.cut(side(&["w", "z", "s"]))];
    Ok(PlanarLadder {
        graph: g,
        rotation,
        cuts,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::planar::faces;

    #[test]
    fn ladder_counts() {
        for t in 0..=4 {
            let g = ghat(t);
            assert_eq!(g.vertex_count(), 4 + 2 * t);
            assert_eq!(g.edge_count(), 4 * t + 8);
            assert_eq!(g.negative_count(), 3);
        }
        let g0 = ghat(0);
        assert_eq!(
            g0.to_sg(),
            "x w -\ny z -\ny z -\nx y +\nw z +\nx z +\ny w +\nx w +\n"
        );
    }

    #[test]
    fn planar_ladders_embed() {
        for t in 1..=3 {
            let p = ghat_planar(t).unwrap();
            assert_eq!(p.graph.vertex_count(), 5 + 2 * t);
            let rep = faces(&p.graph, &p.rotation, true).unwrap();
            assert_eq!(rep.euler_characteristic, 2);
            for c in &p.cuts {
                assert!(c.is_equilibrated(), "{c:?}");
            }
        }
        assert!(ghat_planar(0).is_err());
    }

    #[test]
    fn join_of_two_k4() {
        let k4 = SignedGraph::parse_sg("a b -\na c -\na d -\nb c -\nb d -\nc d -\n").unwrap();
        let h = h_join(&k4, 0, &k4, 5).unwrap();
        assert_eq!((h.vertex_count(), h.edge_count()), (8, 12));
        assert_eq!(h.edge_label(10), "g1.a-g2.c");
        assert_eq!(h.edge_label(11), "g1.b+g2.d");
        let pos = k4.with_signs(&[Sign::Positive; 6]);
        assert!(matches!(h_join(&pos, 0, &k4, 0), Err(Error::Precondition(_))));
    }
}
