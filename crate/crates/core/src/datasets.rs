//! Embedded triangulations with pinned digests, and the symmetry groups that
//! generate them.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use sha2::{Digest, Sha256};

use crate::complex::{parse_facets, Complex, VertexTable};
use crate::error::{Error, Result};
use crate::group::{parse_group_spec, Generator, Group, OrbitSpec, Permutation};

const S2S2S2_124: &str = include_str!("../data/s2s2s2_124.orbit");
const CP3_30: &str = include_str!("../data/cp3_30.orbit");
const CP3_18: &str = include_str!("../data/cp3_18.facets");

const S2S2S2_124_SHA256: &str = "fe3d3600d583606997a60d173c6e6c26aad4e9725dd687718584281aae284eb0";
const CP3_30_SHA256: &str = "eb9651b5b677226c1911df05dd1e12da8127a67c852bdf74ae9b2dc82b9b89c5";
const CP3_18_SHA256: &str = "afa287b5b73162b430ce8b6b7c50264412d688e6a955040dd3a459b56a09be72";

pub const NAMES: [&str; 4] = ["s2s2s2_124", "cp3_30", "cp3_18", "cp3_30_naming"];

/// Parsed content of a dataset.
#[derive(Clone, Debug)]
pub enum Payload {
    Orbit(OrbitSpec),
    Facets(Complex),
    Naming(BTreeMap<String, String>),
}

#[derive(Clone, Debug)]
pub struct Dataset {
    pub name: &'static str,
    pub description: &'static str,
    /// Payload in its file format.
    pub text: String,
    pub payload: Payload,
    /// f-vector of the (expanded) complex; empty for the naming map.
    pub expected_f_vector: Vec<usize>,
    /// `(orbit length, number of representatives)` pairs for orbit specs.
    pub expected_orbits: Vec<(usize, usize)>,
}

fn checked(name: &str, text: &str, digest: &str) -> Result<()> {
    let got = hex::encode(Sha256::digest(text.as_bytes()));
    if got == digest {
        Ok(())
    } else {
        Err(Error::DigestMismatch(name.to_string()))
    }
}

pub fn load_dataset(name: &str) -> Result<Dataset> {
    match name {
        "s2s2s2_124" => {
            checked(name, S2S2S2_124, S2S2S2_124_SHA256)?;
            Ok(Dataset {
                name: "s2s2s2_124",
                description: "124-vertex triangulation of S2 x S2 x S2 with symmetry S3 x A4",
                text: S2S2S2_124.to_string(),
                payload: Payload::Orbit(parse_group_spec(S2S2S2_124)?),
                expected_f_vector: vec![124, 1908, 11740, 34140, 50532, 36876, 10536],
                expected_orbits: vec![(72, 145), (24, 4)],
            })
        }
        "cp3_30" => {
            checked(name, CP3_30, CP3_30_SHA256)?;
            Ok(Dataset {
                name: "cp3_30",
                description: "30-vertex triangulation of CP3 with symmetry A4",
                text: CP3_30.to_string(),
                payload: Payload::Orbit(parse_group_spec(CP3_30)?),
                expected_f_vector: vec![30, 362, 2066, 5810, 8470, 6146, 1756],
                expected_orbits: vec![(12, 145), (4, 4)],
            })
        }
        "cp3_18" => {
            checked(name, CP3_18, CP3_18_SHA256)?;
            Ok(Dataset {
                name: "cp3_18",
                description: "18-vertex triangulation of CP3, listed facet by facet",
                text: CP3_18.to_string(),
                payload: Payload::Facets(parse_facets(CP3_18)?.complex),
                expected_f_vector: vec![18, 153, 783, 2110, 3021, 2177, 622],
                expected_orbits: Vec::new(),
            })
        }
        "cp3_30_naming" => {
            let map = cp3_30_naming();
            let mut text = String::new();
            for (k, v) in &map {
                let _ = writeln!(text, "{k} -> {v}");
            }
            Ok(Dataset {
                name: "cp3_30_naming",
                description: "orbit map from the 124 vertices onto the 30 vertex labels",
                text,
                payload: Payload::Naming(map),
                expected_f_vector: Vec::new(),
                expected_orbits: Vec::new(),
            })
        }
        other => Err(Error::UnknownDataset(other.to_string())),
    }
}

impl Dataset {
    /// The complex itself, expanding orbit specs.
    pub fn complex(&self) -> Result<Complex> {
        match &self.payload {
            Payload::Orbit(spec) => {
                Ok(crate::group::orbit_expand(&spec.reps, &spec.group)?.complex)
            }
            Payload::Facets(x) => Ok(x.clone()),
            Payload::Naming(_) => Err(Error::UnknownDataset(format!(
                "{} is a vertex map, not a complex",
                self.name
            ))),
        }
    }

    pub fn orbit_spec(&self) -> Option<&OrbitSpec> {
        match &self.payload {
            Payload::Orbit(s) => Some(s),
            _ => None,
        }
    }
}

/// Labels of the 124 vertices: `x_{ijk}`, `v_{ijk}` with distinct subscripts,
/// and `u_{ij}`.
pub fn v124_labels() -> Vec<String> {
    let mut out = Vec::with_capacity(124);
    for i in 1..=4 {
        for j in 1..=4 {
            for k in 1..=4 {
                out.push(format!("x{i}{j}{k}"));
            }
        }
    }
    for i in 1..=4 {
        for j in 1..=4 {
            for k in 1..=4 {
                if i != j && j != k && i != k {
                    out.push(format!("v{i}{j}{k}"));
                }
            }
        }
    }
    for i in 1..=6 {
        for j in 1..=6 {
            out.push(format!("u{i}{j}"));
        }
    }
    out
}

/// The actions used to build and quotient the triangulations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BuiltinAction {
    S3OnV124,
    A4OnV124,
    A4OnV30,
}

// index arithmetic on 1..=6 wraps modulo 6
fn wrap6(i: usize) -> usize {
    (i - 1) % 6 + 1
}

fn u(i: usize, j: usize) -> String {
    format!("u{}{}", wrap6(i), j)
}

/// Builds a permutation of the 124 vertices from a rule on the three
/// subscripts of `x` and `v` vertices plus explicit cycles on `u` vertices.
fn v124_perm(
    table: &VertexTable,
    subscripts: impl Fn([u8; 3]) -> [u8; 3],
    u_cycles: &[[String; 3]],
    u_swaps: &[[String; 2]],
) -> Permutation {
    let mut map: HashMap<String, String> = HashMap::new();
    for l in table.labels() {
        let b = l.as_bytes();
        if b[0] == b'x' || b[0] == b'v' {
            let s = subscripts([b[1], b[2], b[3]]);
            let mut img = String::with_capacity(4);
            img.push(b[0] as char);
            img.extend(s.iter().map(|&c| c as char));
            map.insert(l.clone(), img);
        }
    }
    for c in u_cycles {
        for k in 0..3 {
            map.insert(c[k].clone(), c[(k + 1) % 3].clone());
        }
    }
    for [a, b] in u_swaps {
        map.insert(a.clone(), b.clone());
        map.insert(b.clone(), a.clone());
    }
    let images = table
        .labels()
        .iter()
        .map(|l| {
            table
                .id(map.get(l).unwrap_or(l))
                .expect("image is a vertex")
        })
        .collect();
    Permutation::from_images(images).expect("rule defines a bijection")
}

fn values(cycle: [u8; 3]) -> impl Fn([u8; 3]) -> [u8; 3] {
    move |s| {
        s.map(|c| match cycle.iter().position(|&x| x == c - b'0') {
            Some(k) => cycle[(k + 1) % 3] + b'0',
            None => c,
        })
    }
}

/// `alpha`: values 1 → 2 → 3 → 1; `beta`: values 1 → 2 → 4 → 1.
fn a4_on_v124(table: &VertexTable) -> Vec<Generator> {
    let mut ua = Vec::new();
    let mut ub = Vec::new();
    for i in 1..=6 {
        ua.push([u(i, 1), u(i, 2), u(i, 4)]);
        ua.push([u(i, 6), u(i, 5), u(i + 3, 3)]);
        ub.push([u(i, 1), u(i, 3), u(i + 3, 2)]);
        ub.push([u(i, 4), u(i, 5), u(i + 3, 6)]);
    }
    vec![
        Generator {
            name: "alpha".into(),
            perm: v124_perm(table, values([1, 2, 3]), &ua, &[]),
        },
        Generator {
            name: "beta".into(),
            perm: v124_perm(table, values([1, 2, 4]), &ub, &[]),
        },
    ]
}

/// `gamma`: `x_{ijk} → x_{kij}`; `delta` swaps the first two positions.
fn s3_on_v124(table: &VertexTable) -> Vec<Generator> {
    let mut uc = Vec::new();
    let mut ud = Vec::new();
    for i in 1..=6 {
        uc.push([u(1, i), u(2, i), u(3, i)]);
        uc.push([u(4, i), u(5, i), u(6, i)]);
        ud.push([u(1, i), u(6, i)]);
        ud.push([u(2, i), u(5, i)]);
        ud.push([u(3, i), u(4, i)]);
    }
    vec![
        Generator {
            name: "gamma".into(),
            perm: v124_perm(table, |s| [s[2], s[0], s[1]], &uc, &[]),
        },
        Generator {
            name: "delta".into(),
            perm: v124_perm(table, |s| [s[1], s[0], s[2]], &[], &ud),
        },
    ]
}

pub fn v30_labels() -> Vec<String> {
    let mut out = Vec::with_capacity(30);
    for i in 1..=4 {
        for j in 1..=4 {
            out.push(format!("x{i}{j}"));
        }
    }
    out.extend((1..=4).map(|i| format!("y{i}")));
    out.extend((1..=4).map(|i| format!("v{i}")));
    out.extend((1..=6).map(|i| format!("u{i}")));
    out
}

const ALPHA_V30: &str =
    "(x11 x22 x33)(x12 x23 x31)(x13 x21 x32)(x14 x24 x34)(x41 x42 x43)(y1 y2 y3)(v1 v2 v3)(u1 u2 u4)(u3 u6 u5)";
const BETA_V30: &str =
    "(x11 x22 x44)(x12 x24 x41)(x21 x42 x14)(x13 x23 x43)(x31 x32 x34)(y1 y2 y4)(v1 v2 v4)(u1 u3 u2)(u4 u5 u6)";

pub fn build_action(which: BuiltinAction) -> Group {
    match which {
        BuiltinAction::S3OnV124 => {
            let t = VertexTable::new(v124_labels());
            let gens = s3_on_v124(&t);
            Group::new(t, gens)
        }
        BuiltinAction::A4OnV124 => {
            let t = VertexTable::new(v124_labels());
            let gens = a4_on_v124(&t);
            Group::new(t, gens)
        }
        BuiltinAction::A4OnV30 => {
            let t = VertexTable::new(v30_labels());
            let gens = vec![
                Generator {
                    name: "alpha".into(),
                    perm: Permutation::from_cycles(&t, ALPHA_V30).expect("valid cycles"),
                },
                Generator {
                    name: "beta".into(),
                    perm: Permutation::from_cycles(&t, BETA_V30).expect("valid cycles"),
                },
            ];
            Group::new(t, gens)
        }
    }
}

/// Orbit map from the 124 vertices to the 30 vertices of the quotient by
/// the position-permuting S3.
pub fn cp3_30_naming() -> BTreeMap<String, String> {
    let missing = |s: &[u8]| -> u8 { (b'1'..=b'4').find(|c| !s.contains(c)).unwrap() };
    v124_labels()
        .into_iter()
        .map(|l| {
            let b = l.as_bytes();
            let s = &b[1..];
            let name = match b[0] {
                b'u' => format!("u{}", b[2] as char),
                b'v' => format!("v{}", missing(s) as char),
                _ if s[0] != s[1] && s[1] != s[2] && s[0] != s[2] => {
                    format!("y{}", missing(s) as char)
                }
                _ if s[0] == s[1] && s[1] == s[2] => format!("x{0}{0}", s[0] as char),
                _ => {
                    // one value twice (r), one once (t): x_{rt}
                    let r = if s[0] == s[1] || s[0] == s[2] {
                        s[0]
                    } else {
                        s[1]
                    };
                    let t = *s.iter().find(|&&c| c != r).unwrap();
                    format!("x{}{}", r as char, t as char)
                }
            };
            (l, name)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_datasets_load() {
        for n in NAMES {
            load_dataset(n).unwrap();
        }
        assert!(matches!(load_dataset("rp2"), Err(Error::UnknownDataset(_))));
    }

    #[test]
    fn generator_examples() {
        let a4 = build_action(BuiltinAction::A4OnV124);
        let s3 = build_action(BuiltinAction::S3OnV124);
        let t = a4.table();
        let img = |g: &Group, name: &str, l: &str| {
            let p = g.generator(name).unwrap();
            t.label(p.apply(t.id(l).unwrap())).to_string()
        };
        assert_eq!(img(&a4, "alpha", "u11"), "u12");
        assert_eq!(img(&a4, "alpha", "u16"), "u15");
        assert_eq!(img(&s3, "gamma", "u41"), "u51");
        assert_eq!(img(&s3, "delta", "x123"), "x213");
        assert_eq!(img(&s3, "gamma", "x123"), "x312");
    }

    #[test]
    fn built_generators_match_embedded_spec() {
        let ds = load_dataset("s2s2s2_124").unwrap();
        let spec = ds.orbit_spec().unwrap();
        for which in [BuiltinAction::A4OnV124, BuiltinAction::S3OnV124] {
            let g = build_action(which);
            assert_eq!(g.table(), spec.table());
            for gen in g.generators() {
                assert_eq!(
                    Some(&gen.perm),
                    spec.group.generator(&gen.name),
                    "{}",
                    gen.name
                );
            }
        }
        let ds = load_dataset("cp3_30").unwrap();
        let g = build_action(BuiltinAction::A4OnV30);
        assert_eq!(g.generators(), ds.orbit_spec().unwrap().group.generators());
    }

    #[test]
    fn naming_is_onto_thirty_labels() {
        let m = cp3_30_naming();
        assert_eq!(m.len(), 124);
        let mut img: Vec<&String> = m.values().collect();
        img.sort();
        img.dedup();
        assert_eq!(img.len(), 30);
        assert_eq!(m["x112"], "x12");
        assert_eq!(m["x211"], "x12");
        assert_eq!(m["x121"], "x12");
        assert_eq!(m["x333"], "x33");
        assert_eq!(m["x234"], "y1");
        assert_eq!(m["v432"], "v1");
        assert_eq!(m["u35"], "u5");
    }
}
