//! Permutation groups acting on vertex labels.

mod action;

pub use action::{check_action, is_automorphism, quotient, ActionReport, Quotient, Violation};

use std::collections::{BTreeSet, HashSet};
use std::fmt::Write as _;
use std::sync::OnceLock;

use rayon::prelude::*;

use crate::complex::{facet_lines, Complex, Face, VertexTable};
use crate::error::{Error, Result};

/// Default ceiling on the size of an enumerated group.
pub const DEFAULT_GROUP_CAP: usize = 1_000_000;

/// A bijection on dense vertex ids `0..n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n as u32).collect(),
        }
    }

    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            match seen.get_mut(i as usize) {
                Some(s) if !*s => *s = true,
                _ => return Err(Error::NotBijective(format!("{images:?}"))),
            }
        }
        Ok(Permutation { images })
    }

    /// Parses cycle notation such as `(a b c)(d e)` over `table`. Labels not
    /// mentioned are fixed.
    pub fn from_cycles(table: &VertexTable, text: &str) -> Result<Self> {
        let mut images: Vec<u32> = (0..table.len() as u32).collect();
        let mut moved = vec![false; table.len()];
        let mut rest = text.trim();
        while !rest.is_empty() {
            let Some(body) = rest.strip_prefix('(') else {
                return Err(Error::OrbitSpec(format!("expected `(` in `{text}`")));
            };
            let Some(end) = body.find(')') else {
                return Err(Error::OrbitSpec(format!("unclosed cycle in `{text}`")));
            };
            let ids = body[..end]
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(|l| {
                    table
                        .id(l)
                        .ok_or_else(|| Error::UnknownLabel(l.to_string()))
                })
                .collect::<Result<Vec<u32>>>()?;
            for &v in &ids {
                if std::mem::replace(&mut moved[v as usize], true) {
                    return Err(Error::NotBijective(text.to_string()));
                }
            }
            for (k, &v) in ids.iter().enumerate() {
                images[v as usize] = ids[(k + 1) % ids.len()];
            }
            rest = body[end + 1..].trim_start();
        }
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, v: u32) -> u32 {
        self.images[v as usize]
    }

    /// Image of a face, sorted.
    pub fn apply_face(&self, face: &[u32]) -> Face {
        let mut f: Face = face.iter().map(|&v| self.apply(v)).collect();
        f.sort_unstable();
        f
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: other
                .images
                .iter()
                .map(|&v| self.images[v as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.images.len()];
        for (i, &v) in self.images.iter().enumerate() {
            inv[v as usize] = i as u32;
        }
        Permutation { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i as u32 == v)
    }

    pub fn pow(&self, k: usize) -> Permutation {
        let mut acc = Permutation::identity(self.degree());
        for _ in 0..k {
            acc = self.compose(&acc);
        }
        acc
    }

    /// Non-trivial cycles, each starting at its smallest id, ordered by start.
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let mut seen = vec![false; self.images.len()];
        let mut out = Vec::new();
        for start in 0..self.images.len() {
            if seen[start] || self.images[start] as usize == start {
                continue;
            }
            let mut c = vec![start as u32];
            seen[start] = true;
            let mut v = self.images[start];
            while v as usize != start {
                seen[v as usize] = true;
                c.push(v);
                v = self.images[v as usize];
            }
            out.push(c);
        }
        out
    }

    pub fn to_cycle_string(&self, table: &VertexTable) -> String {
        let mut s = String::new();
        for c in self.cycles() {
            s.push('(');
            for (k, &v) in c.iter().enumerate() {
                if k > 0 {
                    s.push(' ');
                }
                s.push_str(table.label(v));
            }
            s.push(')');
        }
        if s.is_empty() {
            s.push_str("()");
        }
        s
    }

    /// Re-expresses this permutation over another table with the same labels
    /// moved. Labels missing from `to` must be fixed points; labels of `to`
    /// missing from `from` are fixed.
    pub fn transfer(&self, from: &VertexTable, to: &VertexTable) -> Option<Permutation> {
        let mut images: Vec<u32> = (0..to.len() as u32).collect();
        for (i, l) in from.labels().iter().enumerate() {
            let img = from.label(self.images[i]);
            match (to.id(l), to.id(img)) {
                (Some(a), Some(b)) => images[a as usize] = b,
                (None, None) => {}
                _ => return None,
            }
        }
        Permutation::from_images(images).ok()
    }
}

/// A named generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub perm: Permutation,
}

/// A finitely generated permutation group on a vertex table.
#[derive(Debug)]
pub struct Group {
    table: VertexTable,
    generators: Vec<Generator>,
    elements: OnceLock<Result<Vec<Permutation>>>,
}

impl Clone for Group {
    fn clone(&self) -> Self {
        Group {
            table: self.table.clone(),
            generators: self.generators.clone(),
            elements: self.elements.clone(),
        }
    }
}

impl Group {
    pub fn new(table: VertexTable, generators: Vec<Generator>) -> Self {
        Group {
            table,
            generators,
            elements: OnceLock::new(),
        }
    }

    pub fn table(&self) -> &VertexTable {
        &self.table
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn generator(&self, name: &str) -> Option<&Permutation> {
        self.generators
            .iter()
            .find(|g| g.name == name)
            .map(|g| &g.perm)
    }

    /// The subgroup generated by the named generators.
    pub fn subgroup(&self, names: &[&str]) -> Result<Group> {
        let gens = names
            .iter()
            .map(|n| {
                self.generators
                    .iter()
                    .find(|g| g.name == *n)
                    .cloned()
                    .ok_or_else(|| Error::OrbitSpec(format!("no generator named `{n}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Group::new(self.table.clone(), gens))
    }

    /// All elements under the default cap, computed once.
    pub fn elements(&self) -> Result<&[Permutation]> {
        self.elements
            .get_or_init(|| enumerate_group(self, DEFAULT_GROUP_CAP))
            .as_ref()
            .map(|v| v.as_slice())
            .map_err(Clone::clone)
    }

    pub fn order(&self) -> Result<usize> {
        Ok(self.elements()?.len())
    }

    /// The same group acting on the vertex table of `x`.
    pub fn on_table(&self, to: &VertexTable) -> Result<Group> {
        let gens = self
            .generators
            .iter()
            .map(|g| {
                g.perm
                    .transfer(&self.table, to)
                    .map(|perm| Generator {
                        name: g.name.clone(),
                        perm,
                    })
                    .ok_or_else(|| Error::NotAnAutomorphism(g.name.clone()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Group::new(to.clone(), gens))
    }

    /// Vertex orbits, each sorted, ordered by smallest member.
    pub fn vertex_orbits(&self) -> Vec<Vec<u32>> {
        let n = self.table.len();
        let mut uf = crate::complex::UnionFind::new(n);
        for g in &self.generators {
            for v in 0..n as u32 {
                uf.union(v as usize, g.perm.apply(v) as usize);
            }
        }
        let mut groups: std::collections::BTreeMap<usize, Vec<u32>> = Default::default();
        for v in 0..n {
            groups.entry(uf.find(v)).or_default().push(v as u32);
        }
        groups.into_values().collect()
    }
}

/// All elements of `g`, breadth first by word length in the generators and
/// lexicographically by image vector within a layer.
pub fn enumerate_group(g: &Group, cap: usize) -> Result<Vec<Permutation>> {
    let n = g.table.len();
    let id = Permutation::identity(n);
    let mut seen: HashSet<Permutation> = HashSet::new();
    seen.insert(id.clone());
    let mut out = vec![id.clone()];
    if cap < 1 {
        return Err(Error::CapExceeded { cap });
    }
    let mut layer = vec![id];
    while !layer.is_empty() {
        let mut next: BTreeSet<Permutation> = BTreeSet::new();
        for e in &layer {
            for gen in &g.generators {
                let p = gen.perm.compose(e);
                if !seen.contains(&p) {
                    next.insert(p);
                }
            }
        }
        for p in &next {
            seen.insert(p.clone());
        }
        if out.len() + next.len() > cap {
            return Err(Error::CapExceeded { cap });
        }
        out.extend(next.iter().cloned());
        layer = next.into_iter().collect();
    }
    Ok(out)
}

/// Parsed orbit-spec file.
#[derive(Clone, Debug)]
pub struct OrbitSpec {
    pub group: Group,
    pub reps: Vec<Face>,
}

impl OrbitSpec {
    pub fn table(&self) -> &VertexTable {
        self.group.table()
    }

    /// Canonical text form of the spec.
    pub fn render(&self) -> String {
        let t = self.table();
        let mut s = String::from("VERTICES:\n");
        for chunk in t.labels().chunks(16) {
            s.push_str(&chunk.join(" "));
            s.push('\n');
        }
        for g in self.group.generators() {
            let _ = writeln!(s, "GEN {}: {}", g.name, g.perm.to_cycle_string(t));
        }
        s.push_str("REPS:\n");
        for r in &self.reps {
            s.push_str(&r.iter().map(|&v| t.label(v)).collect::<Vec<_>>().join(" "));
            s.push('\n');
        }
        s
    }
}

/// Parses the orbit-spec format: `VERTICES:` labels, `GEN <name>: <cycles>`
/// lines and a `REPS:` section of facet lines.
pub fn parse_group_spec(text: &str) -> Result<OrbitSpec> {
    enum Section {
        None,
        Vertices,
        Reps,
    }
    let mut section = Section::None;
    let mut labels: Vec<String> = Vec::new();
    let mut gens: Vec<(String, String)> = Vec::new();
    let mut rep_lines: Vec<(usize, String)> = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("VERTICES:") {
            section = Section::Vertices;
            labels.extend(rest.split_whitespace().map(str::to_string));
        } else if let Some(rest) = line.strip_prefix("GEN ") {
            let (name, cycles) = rest
                .split_once(':')
                .ok_or_else(|| Error::OrbitSpec(format!("line {}: missing `:`", n + 1)))?;
            gens.push((name.trim().to_string(), cycles.trim().to_string()));
            section = Section::None;
        } else if let Some(rest) = line.strip_prefix("REPS:") {
            section = Section::Reps;
            if !rest.trim().is_empty() {
                rep_lines.push((n + 1, rest.to_string()));
            }
        } else {
            match section {
                Section::Vertices => labels.extend(line.split_whitespace().map(str::to_string)),
                Section::Reps => rep_lines.push((n + 1, line.to_string())),
                Section::None => {
                    return Err(Error::OrbitSpec(format!(
                        "line {}: text outside a section",
                        n + 1
                    )))
                }
            }
        }
    }
    let mut reps_labels = Vec::new();
    for (line, text) in &rep_lines {
        reps_labels.extend(facet_lines(text, *line)?);
    }
    if labels.is_empty() {
        labels.extend(reps_labels.iter().flatten().cloned());
        for (_, cycles) in &gens {
            labels.extend(
                cycles
                    .split(|c: char| c.is_whitespace() || "(),".contains(c))
                    .filter(|t| !t.is_empty())
                    .map(str::to_string),
            );
        }
    }
    for l in &labels {
        if !l.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
            return Err(Error::OrbitSpec(format!("malformed vertex label `{l}`")));
        }
    }
    let table = VertexTable::new(labels);
    let generators = gens
        .into_iter()
        .map(|(name, cycles)| {
            Ok(Generator {
                perm: Permutation::from_cycles(&table, &cycles)?,
                name,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let reps = reps_labels
        .iter()
        .map(|r| table.face(r))
        .collect::<Result<Vec<_>>>()?;
    Ok(OrbitSpec {
        group: Group::new(table, generators),
        reps,
    })
}

/// Result of [`orbit_expand`].
#[derive(Clone, Debug)]
pub struct Expansion {
    pub complex: Complex,
    /// Orbit length of each representative, in input order.
    pub orbit_lengths: Vec<usize>,
}

/// The complex whose facets are all images of the representatives.
pub fn orbit_expand(reps: &[Face], g: &Group) -> Result<Expansion> {
    if reps.is_empty() {
        return Err(Error::EmptyInput);
    }
    let elements = g.elements()?;
    let orbits: Vec<HashSet<Face>> = reps
        .par_iter()
        .map(|r| elements.iter().map(|e| e.apply_face(r)).collect())
        .collect();
    let orbit_lengths = orbits.iter().map(HashSet::len).collect();
    let mut all: Vec<Face> = orbits.into_iter().flatten().collect();
    all.sort_unstable();
    all.dedup();
    Ok(Expansion {
        complex: Complex::from_faces(g.table(), all),
        orbit_lengths,
    })
}
