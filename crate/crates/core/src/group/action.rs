//! Automorphism checks, purity and goodness of actions, and quotients.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use rayon::prelude::*;
use serde::Serialize;

use super::{Group, Permutation};
use crate::complex::{Complex, Face};
use crate::error::{Error, Result};

/// At most this many witnesses are kept in a report.
const MAX_WITNESSES: usize = 64;

/// Whether `p`, given over the vertex ids of `x`, maps facets to facets.
pub fn is_automorphism(x: &Complex, p: &Permutation) -> bool {
    p.degree() == x.num_vertices()
        && x.facets()
            .iter()
            .all(|f| x.facets().binary_search(&p.apply_face(f)).is_ok())
}

/// A reason an action fails to be pure or good.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    /// Two vertices of one orbit span an edge.
    AdjacentInOrbit { u: String, v: String },
    /// The stabilizer of `face` is not transitive on the part of an orbit
    /// lying in the link of `face`.
    StabilizerNotTransitive {
        face: Vec<String>,
        trace: Vec<String>,
    },
    /// No group element sends `x` to `y` while fixing the common link
    /// vertices pointwise.
    NoFixingWitness { x: String, y: String },
}

#[derive(Clone, Debug, Serialize)]
pub struct ActionReport {
    pub is_pure: bool,
    pub is_good: bool,
    /// A bounded sample of violations.
    pub violations: Vec<Violation>,
    pub violation_count: usize,
}

fn labels(x: &Complex, vs: &[u32]) -> Vec<String> {
    vs.iter()
        .map(|&v| x.vertices().label(v).to_string())
        .collect()
}

fn link_vertices(x: &Complex, face: &[u32]) -> BTreeSet<u32> {
    x.facets_containing(face)
        .into_iter()
        .flat_map(|i| x.facets()[i as usize].iter().copied())
        .filter(|v| !face.contains(v))
        .collect()
}

/// Checks the generators are automorphisms, then tests purity and goodness.
pub fn check_action(x: &Complex, g: &Group) -> Result<ActionReport> {
    let h = g.on_table(x.vertices())?;
    for gen in h.generators() {
        if !is_automorphism(x, &gen.perm) {
            return Err(Error::NotAnAutomorphism(gen.name.clone()));
        }
    }
    let elements = h.elements()?;
    let orbits = h.vertex_orbits();
    let mut orbit_of = vec![0usize; x.num_vertices()];
    for (k, o) in orbits.iter().enumerate() {
        for &v in o {
            orbit_of[v as usize] = k;
        }
    }

    let mut impure: Vec<Violation> = Vec::new();
    let mut impure_count = 0;
    for e in x.faces(1) {
        if orbit_of[e[0] as usize] == orbit_of[e[1] as usize] {
            impure_count += 1;
            if impure.len() < MAX_WITNESSES {
                impure.push(Violation::AdjacentInOrbit {
                    u: x.vertices().label(e[0]).to_string(),
                    v: x.vertices().label(e[1]).to_string(),
                });
            }
        }
    }

    let all_faces: Vec<&Face> = (0..=x.dim())
        .flat_map(|k| x.faces(k as usize).iter())
        .collect();
    let stab_failures: Vec<Violation> = all_faces
        .par_iter()
        .flat_map_iter(|&alpha| {
            let stab: Vec<&Permutation> = elements
                .iter()
                .filter(|p| p.apply_face(alpha) == *alpha)
                .collect();
            let link = link_vertices(x, alpha);
            let mut traces: BTreeMap<usize, Vec<u32>> = BTreeMap::new();
            for &v in &link {
                traces.entry(orbit_of[v as usize]).or_default().push(v);
            }
            traces
                .into_values()
                .filter(|trace| {
                    let reach: HashSet<u32> = stab.iter().map(|p| p.apply(trace[0])).collect();
                    reach.len() != trace.len()
                })
                .map(|trace| Violation::StabilizerNotTransitive {
                    face: labels(x, alpha),
                    trace: labels(x, &trace),
                })
                .collect::<Vec<_>>()
        })
        .collect();
    impure_count += stab_failures.len();
    impure.extend(stab_failures.into_iter().take(MAX_WITNESSES));
    let is_pure = impure_count == 0;

    let mut bad: Vec<Violation> = Vec::new();
    let mut bad_count = 0;
    let links: Vec<BTreeSet<u32>> = (0..x.num_vertices() as u32)
        .map(|v| link_vertices(x, &[v]))
        .collect();
    for o in &orbits {
        for (i, &a) in o.iter().enumerate() {
            for &b in &o[i + 1..] {
                if links[a as usize].contains(&b) {
                    continue; // reported as an adjacency above
                }
                let common: Vec<u32> = links[a as usize]
                    .intersection(&links[b as usize])
                    .copied()
                    .collect();
                let found = elements
                    .iter()
                    .any(|p| p.apply(a) == b && common.iter().all(|&c| p.apply(c) == c));
                if !found {
                    bad_count += 1;
                    if bad.len() < MAX_WITNESSES {
                        bad.push(Violation::NoFixingWitness {
                            x: x.vertices().label(a).to_string(),
                            y: x.vertices().label(b).to_string(),
                        });
                    }
                }
            }
        }
    }
    let is_good = is_pure && bad_count == 0;
    let mut violations = impure;
    violations.extend(bad);
    violations.truncate(MAX_WITNESSES);
    Ok(ActionReport {
        is_pure,
        is_good,
        violations,
        violation_count: impure_count + bad_count,
    })
}

/// A quotient complex with the orbit map on vertex labels.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub complex: Complex,
    pub vertex_map: BTreeMap<String, String>,
}

/// `X / G` for a pure action. Each orbit is named by its least label, or by
/// `naming`, which must be constant on orbits and distinct across them.
pub fn quotient(
    x: &Complex,
    g: &Group,
    naming: Option<&BTreeMap<String, String>>,
) -> Result<Quotient> {
    let report = check_action(x, g)?;
    if !report.is_pure {
        let first = report
            .violations
            .first()
            .map(|v| format!("{v:?}"))
            .unwrap_or_default();
        return Err(Error::Impure(first));
    }
    let h = g.on_table(x.vertices())?;
    let t = x.vertices();
    let mut vertex_map = BTreeMap::new();
    let mut used: BTreeMap<String, String> = BTreeMap::new();
    for o in h.vertex_orbits() {
        // the table is sorted, so the first id carries the least label
        let least = t.label(o[0]);
        let name = match naming {
            None => least.to_string(),
            Some(m) => {
                let name = m
                    .get(least)
                    .ok_or_else(|| Error::Naming(format!("no name for `{least}`")))?;
                for &v in &o {
                    if m.get(t.label(v)) != Some(name) {
                        return Err(Error::Naming(format!(
                            "`{}` and `{least}` share an orbit but not a name",
                            t.label(v)
                        )));
                    }
                }
                name.clone()
            }
        };
        if let Some(prev) = used.insert(name.clone(), least.to_string()) {
            return Err(Error::Naming(format!(
                "orbits of `{prev}` and `{least}` both named `{name}`"
            )));
        }
        for &v in &o {
            vertex_map.insert(t.label(v).to_string(), name.clone());
        }
    }
    let renamed: Vec<&str> = t.labels().iter().map(|l| vertex_map[l].as_str()).collect();
    Ok(Quotient {
        complex: x.relabel(&renamed),
        vertex_map,
    })
}
