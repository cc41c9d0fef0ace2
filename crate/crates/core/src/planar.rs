//! Rotation systems and facial walks.
//!
//! A rotation system lists, for every vertex, the cyclic order of the edge
//! ends at it. An edge end is written `e.a` for the end at the first
//! endpoint of edge `e` and `e.b` for the end at the second. Faces are the
//! orbits of the usual traversal: arriving at a vertex along an edge, leave
//! along the edge that follows it in the rotation there.

use std::f64::consts::PI;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::frustration::to_minimum_signature;
use crate::graph::{EdgeId, Sign, SignedGraph, VertexId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum End {
    #[serde(rename = "a")]
    A,
    #[serde(rename = "b")]
    B,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Dart {
    pub edge: EdgeId,
    pub end: End,
}

impl Dart {
    pub fn vertex(self, g: &SignedGraph) -> VertexId {
        let e = g.edge(self.edge);
        match self.end {
            End::A => e.u,
            End::B => e.v,
        }
    }

    pub fn reverse(self) -> Dart {
        Dart {
            edge: self.edge,
            end: match self.end {
                End::A => End::B,
                End::B => End::A,
            },
        }
    }
}

impl fmt::Display for Dart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let end = match self.end {
            End::A => 'a',
            End::B => 'b',
        };
        write!(f, "{}.{}", self.edge, end)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RotationSystem {
    /// Cyclic order of darts at each vertex, by vertex id.
    order: Vec<Vec<Dart>>,
}

impl RotationSystem {
    /// Build from per-vertex dart orders and check it against `g`.
    pub fn new(g: &SignedGraph, order: Vec<Vec<Dart>>) -> Result<RotationSystem> {
        let rot = RotationSystem { order };
        rot.validate(g)?;
        Ok(rot)
    }

    pub fn order(&self) -> &[Vec<Dart>] {
        &self.order
    }

    fn validate(&self, g: &SignedGraph) -> Result<()> {
        if self.order.len() != g.vertex_count() {
            return Err(Error::MalformedRotation(format!(
                "{} vertex rows for {} vertices",
                self.order.len(),
                g.vertex_count()
            )));
        }
        let mut seen = vec![[false; 2]; g.edge_count()];
        for (v, row) in self.order.iter().enumerate() {
            for d in row {
                if d.edge >= g.edge_count() {
                    return Err(Error::MalformedRotation(format!("unknown edge {}", d.edge)));
                }
                if d.vertex(g) != v {
                    return Err(Error::MalformedRotation(format!("end {d} is not at vertex {}", g.label(v))));
                }
                let slot = &mut seen[d.edge][d.end as usize];
                if *slot {
                    return Err(Error::MalformedRotation(format!("end {d} listed twice")));
                }
                *slot = true;
            }
        }
        for (e, s) in seen.iter().enumerate() {
            if !s[0] || !s[1] {
                return Err(Error::MalformedRotation(format!("edge {e} has an unlisted end")));
            }
        }
        Ok(())
    }

    /// Parse the `.rot` text format: one line `label: e.a e.b ...` per
    /// vertex; `#` starts a comment. Vertices without edges may be omitted.
    pub fn parse(g: &SignedGraph, text: &str) -> Result<RotationSystem> {
        let mut order: Vec<Option<Vec<Dart>>> = vec![None; g.vertex_count()];
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let (label, rest) = line
                .split_once(':')
                .ok_or_else(|| Error::parse(i + 1, "expected `vertex: darts`"))?;
            let label = label.trim();
            let v = g.vertex_id(label).ok_or_else(|| Error::UnknownVertex(label.to_string()))?;
            if order[v].is_some() {
                return Err(Error::parse(i + 1, format!("vertex {label} listed twice")));
            }
            let mut row = Vec::new();
            for tok in rest.split_whitespace() {
                let (e, end) = tok
                    .split_once('.')
                    .ok_or_else(|| Error::parse(i + 1, format!("bad edge end `{tok}`")))?;
                let edge: EdgeId = e
                    .parse()
                    .map_err(|_| Error::parse(i + 1, format!("bad edge id in `{tok}`")))?;
                let end = match end {
                    "a" => End::A,
                    "b" => End::B,
                    _ => return Err(Error::parse(i + 1, format!("bad end in `{tok}`"))),
                };
                row.push(Dart { edge, end });
            }
            order[v] = Some(row);
        }
        RotationSystem::new(g, order.into_iter().map(|r| r.unwrap_or_default()).collect())
    }

    pub fn to_rot(&self, g: &SignedGraph) -> String {
        let mut out = String::new();
        for (v, row) in self.order.iter().enumerate() {
            if row.is_empty() {
                continue;
            }
            let darts: Vec<String> = row.iter().map(|d| d.to_string()).collect();
            out.push_str(&format!("{}: {}\n", g.label(v), darts.join(" ")));
        }
        out
    }

    /// Rotation of a straight-line drawing, clockwise around each vertex.
    /// `bend[e]` turns edge `e` away from the straight direction by that
    /// angle at its first end and by the mirrored angle at its second end,
    /// which separates parallel edges.
    pub fn from_drawing(g: &SignedGraph, pos: &[(f64, f64)], bend: &[f64]) -> Result<RotationSystem> {
        if pos.len() != g.vertex_count() || bend.len() != g.edge_count() {
            return Err(Error::MalformedRotation("drawing does not match the graph".into()));
        }
        let mut rows: Vec<Vec<(f64, Dart)>> = vec![Vec::new(); g.vertex_count()];
        for (i, e) in g.edges().iter().enumerate() {
            if e.is_loop() {
                return Err(Error::MalformedRotation("loops cannot be drawn straight".into()));
            }
            let (pu, pv) = (pos[e.u], pos[e.v]);
            let au = (pv.1 - pu.1).atan2(pv.0 - pu.0) + bend[i];
            let av = (pu.1 - pv.1).atan2(pu.0 - pv.0) - bend[i];
            rows[e.u].push((au, Dart { edge: i, end: End::A }));
            rows[e.v].push((av, Dart { edge: i, end: End::B }));
        }
        let order = rows
            .into_iter()
            .map(|mut r| {
                let norm = |a: f64| a.rem_euclid(2.0 * PI);
                r.sort_by(|x, y| norm(y.0).total_cmp(&norm(x.0)));
                r.into_iter().map(|(_, d)| d).collect()
            })
            .collect();
        RotationSystem::new(g, order)
    }

    fn successor(&self, g: &SignedGraph, d: Dart) -> Dart {
        let row = &self.order[d.vertex(g)];
        let i = row.iter().position(|&x| x == d).expect("validated rotation");
        row[(i + 1) % row.len()]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Face {
    /// Darts in traversal order; each leaves the vertex it names.
    pub darts: Vec<Dart>,
    pub edges: Vec<EdgeId>,
    pub sign: Sign,
}

impl Face {
    /// True when the boundary walk uses no edge twice and no vertex twice.
    pub fn is_cycle(&self, g: &SignedGraph) -> bool {
        let mut es = self.edges.clone();
        es.sort_unstable();
        es.dedup();
        let mut vs: Vec<VertexId> = self.darts.iter().map(|d| d.vertex(g)).collect();
        vs.sort_unstable();
        vs.dedup();
        es.len() == self.edges.len() && vs.len() == self.darts.len()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FaceReport {
    pub faces: Vec<Face>,
    /// n - m + f, counting one face per isolated vertex.
    pub euler_characteristic: i64,
    pub components: usize,
}

/// Trace every face of the embedding. With `planar` set, the Euler formula
/// `n - m + f = 2c` is enforced.
pub fn faces(g: &SignedGraph, rot: &RotationSystem, planar: bool) -> Result<FaceReport> {
    rot.validate(g)?;
    let m = g.edge_count();
    let mut used = vec![[false; 2]; m];
    let mut out = Vec::new();
    for e in 0..m {
        for end in [End::A, End::B] {
            if used[e][end as usize] {
                continue;
            }
            let start = Dart { edge: e, end };
            let mut d = start;
            let mut darts = Vec::new();
            loop {
                used[d.edge][d.end as usize] = true;
                darts.push(d);
                d = rot.successor(g, d.reverse());
                if d == start {
                    break;
                }
            }
            let edges: Vec<EdgeId> = darts.iter().map(|d| d.edge).collect();
            let negatives = edges.iter().filter(|&&e| g.edge(e).sign.is_negative()).count();
            let sign = if negatives % 2 == 1 { Sign::Negative } else { Sign::Positive };
            out.push(Face { darts, edges, sign });
        }
    }
    let isolated = g.degrees().iter().filter(|&&d| d == 0).count();
    let components = g.components().len();
    let chi = g.vertex_count() as i64 - m as i64 + (out.len() + isolated) as i64;
    if planar && chi != 2 * components as i64 {
        return Err(Error::EulerViolation {
            characteristic: chi,
            expected: 2 * components as i64,
        });
    }
    Ok(FaceReport {
        faces: out,
        euler_characteristic: chi,
        components,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct PlanarReport {
    pub schema: u32,
    pub k: usize,
    pub face_count: usize,
    pub negative_faces: usize,
    pub positive_faces: usize,
    /// Every face is negative and there are exactly 2k of them.
    pub all_faces_negative: bool,
    pub face_count_is_2k: bool,
    /// Negative edges on each face under the least minimum signature.
    pub negative_edges_per_face: Vec<usize>,
    pub one_negative_edge_per_face: bool,
    /// Each negative edge borders at most two faces and every negative face
    /// holds a negative edge, so there are at most 2k negative faces.
    pub negative_faces_within_2k: bool,
    pub faces: Vec<Face>,
}

/// Face profile of a planar embedding of a k-frustrated graph.
pub fn verify_planar_critical(g: &SignedGraph, rot: &RotationSystem, k: usize) -> Result<PlanarReport> {
    let rep = faces(g, rot, true)?;
    let (h, sig) = to_minimum_signature(g)?;
    if sig.ell != k {
        return Err(Error::Precondition(format!("frustration index is {}, not {k}", sig.ell)));
    }
    let per_face: Vec<usize> = rep
        .faces
        .iter()
        .map(|f| f.edges.iter().filter(|&&e| h.edge(e).sign.is_negative()).count())
        .collect();
    let negative_faces = rep.faces.iter().filter(|f| f.sign.is_negative()).count();
    let face_count = rep.faces.len();
    Ok(PlanarReport {
        schema: 1,
        k,
        face_count,
        negative_faces,
        positive_faces: face_count - negative_faces,
        all_faces_negative: negative_faces == face_count,
        face_count_is_2k: face_count == 2 * k,
        one_negative_edge_per_face: per_face.iter().all(|&c| c == 1),
        negative_edges_per_face: per_face,
        negative_faces_within_2k: negative_faces <= 2 * k,
        faces: rep.faces,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const K4: &str = "a b -\na c -\na d -\nb c -\nb d -\nc d -\n";
    const K4_ROT: &str = "a: 0.a 1.a 2.a\nb: 0.b 4.a 3.a\nc: 1.b 3.b 5.a\nd: 2.b 5.b 4.b\n";

    #[test]
    fn k4_faces() {
        let g = SignedGraph::parse_sg(K4).unwrap();
        let rot = RotationSystem::parse(&g, K4_ROT).unwrap();
        let rep = faces(&g, &rot, true).unwrap();
        assert_eq!(rep.faces.len(), 4);
        assert!(rep.faces.iter().all(|f| f.edges.len() == 3 && f.sign == Sign::Negative && f.is_cycle(&g)));
        let pr = verify_planar_critical(&g, &rot, 2).unwrap();
        assert!(pr.all_faces_negative && pr.face_count_is_2k && pr.one_negative_edge_per_face);
        assert_eq!(RotationSystem::parse(&g, &rot.to_rot(&g)).unwrap(), rot);
    }

    #[test]
    fn non_planar_rotation_is_rejected() {
        let g = SignedGraph::parse_sg(K4).unwrap();
        // swap two ends at a: a toroidal rotation with two faces
        let rot = RotationSystem::parse(&g, "a: 0.a 2.a 1.a\nb: 0.b 4.a 3.a\nc: 1.b 3.b 5.a\nd: 2.b 5.b 4.b\n").unwrap();
        assert!(matches!(faces(&g, &rot, true), Err(Error::EulerViolation { .. })));
        let rep = faces(&g, &rot, false).unwrap();
        assert_eq!(rep.euler_characteristic, 0);
    }

    #[test]
    fn malformed_rotations() {
        let g = SignedGraph::parse_sg(K4).unwrap();
        assert!(matches!(
            RotationSystem::parse(&g, "a: 0.a 1.a 2.a\nb: 0.b 4.a 3.a\nc: 1.b 3.b 5.a\nd: 2.b 5.b\n"),
            Err(Error::MalformedRotation(_))
        ));
        assert!(matches!(
            RotationSystem::parse(&g, "a: 0.b 1.a 2.a\n"),
            Err(Error::MalformedRotation(_))
        ));
        assert!(matches!(RotationSystem::parse(&g, "a 0.a\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(RotationSystem::parse(&g, "q: 0.a\n"), Err(Error::UnknownVertex(_))));
    }

    #[test]
    fn drawing_of_a_square_with_diagonal() {
        let g = SignedGraph::parse_sg("a b +\nb c +\nc d +\nd a -\na c +\n").unwrap();
        let pos = [(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)];
        let rot = RotationSystem::from_drawing(&g, &pos, &[0.0; 5]).unwrap();
        let rep = faces(&g, &rot, true).unwrap();
        assert_eq!(rep.faces.len(), 3);
    }
}
