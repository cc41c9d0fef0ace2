//! Named signed graphs with their expected properties.
//!
//! Hand-transcribed entries live in `data/` as `.sg` files, with a `.rot`
//! file next to each planar one. The ladders are generated. Every entry
//! carries an FNV-1a checksum of its normalized edge list so that a stray
//! edit to a data file shows up in `verify`.

use serde::Serialize;

use crate::constructions::{ghat, ghat_planar};
use crate::criticality::{is_critical, is_decomposable, Method};
use crate::error::{Error, Result};
use crate::graph::SignedGraph;
use crate::iso::{canonical_form, switching_isomorphic};
use crate::planar::{verify_planar_critical, RotationSystem};
use crate::structure::has_no_disjoint_negative_pair;
use crate::subdivision::is_irreducible;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FaceProfile {
    pub faces: usize,
    pub negative_faces: usize,
    pub one_negative_edge_per_face: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Expected {
    pub ell: usize,
    pub critical: bool,
    pub irreducible: bool,
    pub decomposable: bool,
    pub in_s_star: bool,
    pub faces: Option<FaceProfile>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CatalogEntry {
    pub name: String,
    pub description: String,
    /// Class memberships, e.g. `L(2)`, `L*(3)`, `P*(3)`, `S*(3)`.
    pub classes: Vec<&'static str>,
    /// Another entry this one is a second drawing of.
    pub variant_of: Option<&'static str>,
    #[serde(skip)]
    pub graph: SignedGraph,
    #[serde(skip)]
    pub rotation: Option<RotationSystem>,
    pub expected: Expected,
    pub checksum: String,
}

impl CatalogEntry {
    pub fn has_class(&self, class: &str) -> bool {
        self.classes.contains(&class)
    }
}

struct EntryData {
    name: &'static str,
    sg: &'static str,
    rot: Option<&'static str>,
    classes: &'static [&'static str],
    variant_of: Option<&'static str>,
    expected: Expected,
    checksum: u64,
}

const fn exp(ell: usize, decomposable: bool, in_s_star: bool, faces: Option<FaceProfile>) -> Expected {
    Expected {
        ell,
        critical: true,
        irreducible: true,
        decomposable,
        in_s_star,
        faces,
    }
}

const fn fp(faces: usize, negative_faces: usize, one: bool) -> Option<FaceProfile> {
    Some(FaceProfile {
        faces,
        negative_faces,
        one_negative_edge_per_face: one,
    })
}

const SIX: Option<FaceProfile> = fp(6, 6, true);
const P3: &[&str] = &["L*(3)", "P*(3)"];

macro_rules! data {
    ($f:literal) => {
        include_str!(concat!("../data/", $f))
    };
}

const DATA: &[EntryData] = &[
    EntryData {
        name: "c-minus-1",
        sg: data!("c-minus-1.sg"),
        rot: None,
        classes: &["L(1)", "L*(1)"],
        variant_of: None,
        expected: exp(1, false, true, None),
        checksum: 0x6563_4912_08e0_09f6,
    },
    EntryData {
        name: "two-c-minus-1",
        sg: data!("two-c-minus-1.sg"),
        rot: None,
        classes: &["L(2)"],
        variant_of: None,
        expected: exp(2, true, false, None),
        checksum: 0xec24_697b_d3d2_2e41,
    },
    EntryData {
        name: "c-minus-1-union",
        sg: data!("c-minus-1-union.sg"),
        rot: None,
        classes: &["L(2)"],
        variant_of: None,
        expected: exp(2, true, false, None),
        checksum: 0xd7eb_f94e_751f_4809,
    },
    EntryData {
        name: "k4-minus-all",
        sg: data!("k4-minus-all.sg"),
        rot: Some(data!("k4-minus-all.rot")),
        classes: &["L(2)", "L*(2)"],
        variant_of: None,
        expected: exp(2, false, true, fp(4, 4, true)),
        checksum: 0x71c0_81c9_bd8e_cd5d,
    },
    EntryData {
        name: "s3-projective",
        sg: data!("s3-projective.sg"),
        rot: None,
        classes: &["L*(3)", "S*(3)"],
        variant_of: None,
        expected: exp(3, false, true, None),
        checksum: 0x98c9_7ec9_b39b_25bd,
    },
    EntryData {
        name: "s3-projective-alt",
        sg: data!("s3-projective-alt.sg"),
        rot: None,
        classes: &["L*(3)"],
        variant_of: Some("s3-projective"),
        expected: exp(3, false, true, None),
        checksum: 0x10c9_a1d6_52b7_b09d,
    },
    EntryData {
        name: "s3-petersen",
        sg: data!("s3-petersen.sg"),
        rot: None,
        classes: &["L*(3)", "S*(3)"],
        variant_of: None,
        expected: exp(3, false, true, None),
        checksum: 0xe7b8_20c0_8c4f_29fc,
    },
    EntryData {
        name: "k5-minus",
        sg: data!("k5-minus.sg"),
        rot: Some(data!("k5-minus.rot")),
        classes: P3,
        variant_of: None,
        expected: exp(3, false, false, SIX),
        checksum: 0x0397_bdb8_3cc2_c5e4,
    },
    EntryData {
        name: "w5",
        sg: data!("w5.sg"),
        rot: Some(data!("w5.rot")),
        classes: P3,
        variant_of: None,
        expected: exp(3, false, false, SIX),
        checksum: 0x616e_254b_6e4c_f5c1,
    },
    EntryData {
        name: "g4",
        sg: data!("g4.sg"),
        rot: Some(data!("g4.rot")),
        classes: P3,
        variant_of: None,
        expected: exp(3, false, false, SIX),
        checksum: 0x03d2_a8e8_eeef_67a1,
    },
    EntryData {
        name: "g4-prime",
        sg: data!("g4-prime.sg"),
        rot: Some(data!("g4-prime.rot")),
        classes: P3,
        variant_of: None,
        expected: exp(3, false, false, SIX),
        checksum: 0xc8df_2600_0626_8c7b,
    },
    EntryData {
        name: "g7",
        sg: data!("g7.sg"),
        rot: Some(data!("g7.rot")),
        classes: P3,
        variant_of: None,
        expected: exp(3, false, false, SIX),
        checksum: 0x0c6e_e3b4_c714_61c1,
    },
    EntryData {
        name: "g7-prime",
        sg: data!("g7-prime.sg"),
        rot: Some(data!("g7-prime.rot")),
        classes: P3,
        variant_of: None,
        expected: exp(3, false, false, SIX),
        checksum: 0x009b_8f1e_2845_eb57,
    },
    EntryData {
        name: "moser-spindle",
        sg: data!("moser-spindle.sg"),
        rot: Some(data!("moser-spindle.rot")),
        classes: P3,
        variant_of: None,
        expected: exp(3, false, false, SIX),
        checksum: 0xebd1_dfbc_f6bc_59c7,
    },
    EntryData {
        name: "g8",
        sg: data!("g8.sg"),
        rot: Some(data!("g8.rot")),
        classes: P3,
        variant_of: None,
        expected: exp(3, false, false, SIX),
        checksum: 0xb544_6597_65eb_b648,
    },
    EntryData {
        name: "g8-prime",
        sg: data!("g8-prime.sg"),
        rot: Some(data!("g8-prime.rot")),
        classes: P3,
        variant_of: None,
        expected: exp(3, false, false, SIX),
        checksum: 0x26b7_aab0_9b30_8079,
    },
    EntryData {
        name: "signed-cube",
        sg: data!("signed-cube.sg"),
        rot: Some(data!("signed-cube.rot")),
        classes: P3,
        variant_of: None,
        expected: exp(3, false, false, SIX),
        checksum: 0x3565_7038_6ea7_5f3b,
    },
    EntryData {
        name: "fig13-left",
        sg: data!("fig13-left.sg"),
        rot: None,
        classes: &["L*(3)"],
        variant_of: None,
        expected: exp(3, false, false, None),
        checksum: 0x2316_5550_4652_295f,
    },
    EntryData {
        name: "fig13-right",
        sg: data!("fig13-right.sg"),
        rot: None,
        classes: &["L*(3)"],
        variant_of: None,
        expected: exp(3, false, false, None),
        checksum: 0xac04_aae0_3e32_cd43,
    },
];

pub const LADDERS: std::ops::RangeInclusive<usize> = 0..=4;
pub const PLANAR_LADDERS: std::ops::RangeInclusive<usize> = 1..=3;

const LADDER_SUMS: [u64; 5] = [
    0x2a1d_de6d_c857_8577,
    0x548b_1ca4_a076_abe7,
    0x0322_0a25_1eb3_93f3,
    0x9d3a_0c00_9c0d_0afb,
    0xdbac_2b05_923a_98cf,
];
const PLANAR_LADDER_SUMS: [u64; 3] = [0x8c1f_5d8b_c64e_130b, 0xcb46_f202_12b9_465b, 0x382d_fdbd_8f3a_cdbb];

/// FNV-1a over the normalized edge list.
pub fn checksum(g: &SignedGraph) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in g.to_sg().bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    h
}

fn description(sg: &str) -> String {
    sg.lines()
        .find_map(|l| l.strip_prefix('#'))
        .map(|d| d.trim().to_string())
        .unwrap_or_default()
}

fn from_spec(s: &EntryData) -> Result<CatalogEntry> {
    let graph = SignedGraph::parse_sg(s.sg)?;
    let rotation = s.rot.map(|r| RotationSystem::parse(&graph, r)).transpose()?;
    Ok(CatalogEntry {
        name: s.name.to_string(),
        description: description(s.sg),
        classes: s.classes.to_vec(),
        variant_of: s.variant_of,
        graph,
        rotation,
        expected: s.expected,
        checksum: format!("{:016x}", s.checksum),
    })
}

fn ladder(t: usize) -> CatalogEntry {
    CatalogEntry {
        name: format!("ladder-{t}"),
        description: format!("ladder of order {t}: K4 with a doubled negative edge, two sides subdivided {t} times and a zigzag path"),
        classes: vec!["L(3)"],
        variant_of: None,
        graph: ghat(t),
        rotation: None,
        expected: exp(3, true, false, None),
        checksum: format!("{:016x}", LADDER_SUMS[t]),
    }
}

fn planar_ladder(t: usize) -> Result<CatalogEntry> {
    let p = ghat_planar(t)?;
    Ok(CatalogEntry {
        name: format!("ladder-planar-{t}"),
        description: format!("ladder of order {t} with its crossing replaced by a vertex"),
        classes: vec!["L(3)"],
        variant_of: None,
        graph: p.graph,
        rotation: Some(p.rotation),
        expected: exp(3, true, false, fp(2 * t + 7, 2, false)),
        checksum: format!("{:016x}", PLANAR_LADDER_SUMS[t - 1]),
    })
}

/// Every entry name, in catalog order.
pub fn names() -> Vec<String> {
    let mut out: Vec<String> = DATA.iter().map(|s| s.name.to_string()).collect();
    out.extend(LADDERS.map(|t| format!("ladder-{t}")));
    out.extend(PLANAR_LADDERS.map(|t| format!("ladder-planar-{t}")));
    out
}

pub fn get(name: &str) -> Result<CatalogEntry> {
    if let Some(s) = DATA.iter().find(|s| s.name == name) {
        return from_spec(s);
    }
    if let Some(t) = name.strip_prefix("ladder-planar-").and_then(|t| t.parse::<usize>().ok()) {
        if PLANAR_LADDERS.contains(&t) {
            return planar_ladder(t);
        }
    } else if let Some(t) = name.strip_prefix("ladder-").and_then(|t| t.parse::<usize>().ok()) {
        if LADDERS.contains(&t) {
            return Ok(ladder(t));
        }
    }
    let all = names();
    let mut candidates: Vec<String> = all
        .iter()
        .filter(|n| n.contains(name) || name.contains(n.as_str()) || n.split('-').next() == name.split('-').next())
        .cloned()
        .collect();
    if candidates.is_empty() {
        candidates = all;
    }
    Err(Error::UnknownCatalogEntry {
        name: name.to_string(),
        candidates,
    })
}

/// All entries, in catalog order.
pub fn list() -> Vec<CatalogEntry> {
    names().iter().map(|n| get(n).expect("shipped entry parses")).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub property: String,
    pub expected: String,
    pub actual: String,
    pub ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub schema: u32,
    pub name: String,
    pub checks: Vec<Check>,
    pub ok: bool,
}

fn check<T: PartialEq + std::fmt::Debug>(out: &mut Vec<Check>, property: &str, expected: T, actual: T) {
    out.push(Check {
        property: property.to_string(),
        ok: expected == actual,
        expected: format!("{expected:?}"),
        actual: format!("{actual:?}"),
    });
}

/// Recompute every stored property of an entry and compare.
pub fn verify(name: &str) -> Result<VerifyReport> {
    let e = get(name)?;
    verify_entry(&e)
}

pub fn verify_entry(e: &CatalogEntry) -> Result<VerifyReport> {
    let g = &e.graph;
    let x = &e.expected;
    let mut checks = Vec::new();
    check(&mut checks, "checksum", e.checksum.clone(), format!("{:016x}", checksum(g)));
    let cert = is_critical(g, Method::All)?;
    check(&mut checks, "ell", x.ell, cert.ell);
    for (method, verdict) in &cert.verdicts {
        check(&mut checks, &format!("critical ({method})"), x.critical, *verdict);
    }
    let irreducible = is_irreducible(g);
    check(&mut checks, "irreducible", x.irreducible, irreducible);
    check(&mut checks, "decomposable", x.decomposable, is_decomposable(g)?);
    let s_star = cert.critical && irreducible && has_no_disjoint_negative_pair(g)?;
    check(&mut checks, "in S*", x.in_s_star, s_star);
    if let Some(rot) = &e.rotation {
        let rep = verify_planar_critical(g, rot, cert.ell)?;
        let actual = FaceProfile {
            faces: rep.face_count,
            negative_faces: rep.negative_faces,
            one_negative_edge_per_face: rep.one_negative_edge_per_face,
        };
        check(&mut checks, "faces", x.faces, Some(actual));
    }
    if let Some(base) = e.variant_of {
        let other = get(base)?;
        check(&mut checks, &format!("switching-isomorphic to {base}"), true, switching_isomorphic(g, &other.graph)?);
    }
    let ok = checks.iter().all(|c| c.ok);
    Ok(VerifyReport {
        schema: 1,
        name: e.name.clone(),
        checks,
        ok,
    })
}

/// Entries of one class that are switching-isomorphic to each other.
pub fn isomorphic_pairs(class: &str) -> Result<Vec<(String, String)>> {
    let members: Vec<CatalogEntry> = list().into_iter().filter(|e| e.has_class(class)).collect();
    let forms = members.iter().map(|e| canonical_form(&e.graph)).collect::<Result<Vec<_>>>()?;
    let mut out = Vec::new();
    for i in 0..members.len() {
        for j in i + 1..members.len() {
            if forms[i] == forms[j] {
                out.push((members[i].name.clone(), members[j].name.clone()));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn class_counts() {
        let all = list();
        let count = |c: &str| all.iter().filter(|e| e.has_class(c)).count();
        assert_eq!(count("P*(3)"), 10);
        assert_eq!(count("S*(3)"), 2);
        assert_eq!(count("L(2)"), 3);
        assert_eq!(count("L*(2)"), 1);
    }

    #[test]
    fn unknown_names_list_candidates() {
        match get("ladder-9") {
            Err(Error::UnknownCatalogEntry { candidates, .. }) => {
                assert!(candidates.contains(&"ladder-4".to_string()))
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn k4_entry() {
        let e = get("k4-minus-all").unwrap();
        assert_eq!(e.graph.edge_count(), 6);
        assert_eq!(e.graph.negative_count(), 6);
        assert!(verify("k4-minus-all").unwrap().ok);
    }
}
