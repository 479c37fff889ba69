//! Immutable facet-list representation of finite abstract simplicial complexes.
//!
//! A [`Complex`] stores its maximal faces only. Vertex labels live in a
//! [`VertexTable`] that is always sorted lexicographically, so dense vertex ids
//! and labels order the same way and sorted id-faces render as sorted label
//! lines without a second sort.

mod ops;
mod product;

pub(crate) use ops::{binomial, ridge_degrees, UnionFind};
pub use ops::{PseudomanifoldReport, StandardKind};

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::OnceLock;

use itertools::Itertools;
use smallvec::SmallVec;

use crate::error::{Error, Result};

/// A face as a strictly increasing list of dense vertex ids.
pub type Face = SmallVec<[u32; 8]>;

/// Ordered, duplicate-free vertex labels with the inverse lookup.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VertexTable {
    labels: Vec<String>,
    index: HashMap<String, u32>,
}

impl VertexTable {
    /// Builds a table from arbitrary labels; duplicates collapse, order becomes lexicographic.
    pub fn new<I, S>(labels: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        labels.sort();
        labels.dedup();
        let index = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.clone(), i as u32))
            .collect();
        VertexTable { labels, index }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, id: u32) -> &str {
        &self.labels[id as usize]
    }

    pub fn id(&self, label: &str) -> Option<u32> {
        self.index.get(label).copied()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn contains(&self, label: &str) -> bool {
        self.index.contains_key(label)
    }

    /// Translates labels into a sorted face, rejecting unknown labels.
    pub fn face<S: AsRef<str>>(&self, labels: &[S]) -> Result<Face> {
        let mut face = Face::with_capacity(labels.len());
        for l in labels {
            let l = l.as_ref();
            face.push(
                self.id(l)
                    .ok_or_else(|| Error::UnknownLabel(l.to_string()))?,
            );
        }
        face.sort_unstable();
        face.dedup();
        Ok(face)
    }
}

/// Face counts by dimension, `counts[k] = f_k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
pub struct FVector {
    pub counts: Vec<usize>,
}

impl FVector {
    pub fn euler_characteristic(&self) -> i64 {
        self.counts
            .iter()
            .enumerate()
            .map(|(k, &f)| if k % 2 == 0 { f as i64 } else { -(f as i64) })
            .sum()
    }
}

impl fmt::Display for FVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.counts.iter().join(", "))
    }
}

/// A finite simplicial complex given by its facets.
pub struct Complex {
    vertices: VertexTable,
    facets: Vec<Face>,
    faces: Vec<OnceLock<Vec<Face>>>,
    vertex_facets: OnceLock<Vec<Vec<u32>>>,
}

impl Clone for Complex {
    fn clone(&self) -> Self {
        Complex {
            vertices: self.vertices.clone(),
            facets: self.facets.clone(),
            faces: self.faces.clone(),
            vertex_facets: self.vertex_facets.clone(),
        }
    }
}

impl PartialEq for Complex {
    fn eq(&self, other: &Self) -> bool {
        self.vertices.labels == other.vertices.labels && self.facets == other.facets
    }
}

impl Eq for Complex {}

impl fmt::Debug for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Complex")
            .field("vertices", &self.vertices.len())
            .field("facets", &self.facets.len())
            .field("dim", &self.dim())
            .finish()
    }
}

/// Result of [`parse_facets`]: the complex and the number of listed lines that
/// were absorbed because they were contained in another line.
#[derive(Clone, Debug)]
pub struct Parsed {
    pub complex: Complex,
    pub absorbed: usize,
}

fn valid_label(token: &str) -> bool {
    !token.is_empty() && token.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Tokenizes facet-file lines into label lists, with 1-based line numbers.
pub(crate) fn facet_lines(text: &str, first_line: usize) -> Result<Vec<Vec<String>>> {
    let mut out = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = first_line + n;
        let content = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = content.split_whitespace().collect();
        if tokens.is_empty() {
            continue;
        }
        let mut seen = HashSet::new();
        for t in &tokens {
            if !valid_label(t) {
                return Err(Error::MalformedLabel {
                    line,
                    token: t.to_string(),
                });
            }
            if !seen.insert(*t) {
                return Err(Error::DuplicateVertex {
                    line,
                    label: t.to_string(),
                });
            }
        }
        out.push(tokens.into_iter().map(str::to_string).collect());
    }
    Ok(out)
}

/// Parses a facet file. Lines contained in other lines are absorbed and counted.
pub fn parse_facets(text: &str) -> Result<Parsed> {
    let lines = facet_lines(text, 1)?;
    if lines.is_empty() {
        return Err(Error::EmptyInput);
    }
    let (complex, absorbed) = Complex::build_from_labels(lines.iter())?;
    Ok(Parsed { complex, absorbed })
}

/// Drops duplicates and faces contained in another face. Returns the sorted
/// maximal faces and the number of dropped inputs.
pub(crate) fn maximal_faces(mut faces: Vec<Face>) -> (Vec<Face>, usize) {
    let total = faces.len();
    faces.retain(|f| !f.is_empty());
    faces.sort_unstable_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    faces.dedup();
    let mut by_vertex: HashMap<u32, Vec<usize>> = HashMap::new();
    let mut kept: Vec<Face> = Vec::with_capacity(faces.len());
    for f in faces {
        let covered = {
            let rarest = f
                .iter()
                .map(|v| by_vertex.get(v).map_or(0, Vec::len))
                .enumerate()
                .min_by_key(|&(_, n)| n)
                .map(|(i, _)| f[i]);
            match rarest.and_then(|v| by_vertex.get(&v)) {
                None => false,
                Some(list) => list
                    .iter()
                    .any(|&g| kept[g].len() > f.len() && is_subset(&f, &kept[g])),
            }
        };
        if !covered {
            let idx = kept.len();
            for &v in &f {
                by_vertex.entry(v).or_default().push(idx);
            }
            kept.push(f);
        }
    }
    kept.sort_unstable();
    let absorbed = total - kept.len();
    (kept, absorbed)
}

/// Subset test on strictly increasing slices.
pub fn is_subset(small: &[u32], big: &[u32]) -> bool {
    let mut j = 0;
    for &x in small {
        while j < big.len() && big[j] < x {
            j += 1;
        }
        if j == big.len() || big[j] != x {
            return false;
        }
        j += 1;
    }
    true
}

impl Complex {
    /// The void complex, with no faces at all. Produced by boundary and link
    /// operations; never by parsing.
    pub fn empty() -> Self {
        Complex {
            vertices: VertexTable::default(),
            facets: Vec::new(),
            faces: Vec::new(),
            vertex_facets: OnceLock::new(),
        }
    }

    /// Builds a complex from faces over `vertices`. Non-maximal faces are
    /// absorbed and vertices that occur in no face are dropped from the table.
    pub fn from_faces(vertices: &VertexTable, faces: Vec<Face>) -> Self {
        Self::build(vertices, faces).0
    }

    pub(crate) fn build(vertices: &VertexTable, faces: Vec<Face>) -> (Self, usize) {
        let (facets, absorbed) = maximal_faces(faces);
        let mut used = vec![false; vertices.len()];
        for f in &facets {
            for &v in f {
                used[v as usize] = true;
            }
        }
        let (table, facets) = if used.iter().all(|&u| u) {
            (vertices.clone(), facets)
        } else {
            let mut remap = vec![u32::MAX; vertices.len()];
            let mut labels = Vec::new();
            for (i, &u) in used.iter().enumerate() {
                if u {
                    remap[i] = labels.len() as u32;
                    labels.push(vertices.labels[i].clone());
                }
            }
            let facets: Vec<Face> = facets
                .into_iter()
                .map(|f| f.iter().map(|&v| remap[v as usize]).collect())
                .collect();
            (VertexTable::new(labels), facets)
        };
        let dim = facets.iter().map(|f| f.len()).max().unwrap_or(0);
        let faces = (0..dim).map(|_| OnceLock::new()).collect();
        (
            Complex {
                vertices: table,
                facets,
                faces,
                vertex_facets: OnceLock::new(),
            },
            absorbed,
        )
    }

    pub(crate) fn build_from_labels<I, L, S>(lines: I) -> Result<(Self, usize)>
    where
        I: IntoIterator<Item = L> + Clone,
        L: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let table = VertexTable::new(lines.clone().into_iter().flat_map(|l| {
            l.into_iter()
                .map(|s| s.as_ref().to_string())
                .collect::<Vec<_>>()
        }));
        let mut faces = Vec::new();
        for l in lines {
            let labels: Vec<S> = l.into_iter().collect();
            faces.push(table.face(&labels)?);
        }
        Ok(Self::build(&table, faces))
    }

    /// Builds a complex from facets written as label lists.
    pub fn from_label_facets<I, L, S>(lines: I) -> Result<Self>
    where
        I: IntoIterator<Item = L> + Clone,
        L: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        Ok(Self::build_from_labels(lines)?.0)
    }

    pub fn vertices(&self) -> &VertexTable {
        &self.vertices
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn facets(&self) -> &[Face] {
        &self.facets
    }

    pub fn is_empty(&self) -> bool {
        self.facets.is_empty()
    }

    /// Maximum facet dimension, `-1` for the void complex.
    pub fn dim(&self) -> isize {
        self.faces.len() as isize - 1
    }

    pub fn is_pure(&self) -> bool {
        let d = self.faces.len();
        self.facets.iter().all(|f| f.len() == d)
    }

    /// All faces of dimension `k`, sorted lexicographically. Computed once.
    pub fn faces(&self, k: usize) -> &[Face] {
        match self.faces.get(k) {
            None => &[],
            Some(cell) => cell.get_or_init(|| {
                let mut set: HashSet<Face> = HashSet::new();
                for f in &self.facets {
                    if f.len() > k {
                        for c in f.iter().copied().combinations(k + 1) {
                            set.insert(Face::from_vec(c));
                        }
                    }
                }
                let mut v: Vec<Face> = set.into_iter().collect();
                v.sort_unstable();
                v
            }),
        }
    }

    pub fn f_vector(&self) -> FVector {
        FVector {
            counts: (0..self.faces.len()).map(|k| self.faces(k).len()).collect(),
        }
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector().euler_characteristic()
    }

    /// Facet indices containing each vertex.
    pub fn vertex_facets(&self) -> &[Vec<u32>] {
        self.vertex_facets.get_or_init(|| {
            let mut out = vec![Vec::new(); self.vertices.len()];
            for (i, f) in self.facets.iter().enumerate() {
                for &v in f {
                    out[v as usize].push(i as u32);
                }
            }
            out
        })
    }

    /// Indices of the facets containing `face` (all facets for the empty face).
    pub fn facets_containing(&self, face: &[u32]) -> Vec<u32> {
        if face.is_empty() {
            return (0..self.facets.len() as u32).collect();
        }
        let vf = self.vertex_facets();
        let Some(&rare) = face
            .iter()
            .min_by_key(|&&v| vf.get(v as usize).map_or(0, Vec::len))
        else {
            return Vec::new();
        };
        match vf.get(rare as usize) {
            None => Vec::new(),
            Some(list) => list
                .iter()
                .copied()
                .filter(|&i| is_subset(face, &self.facets[i as usize]))
                .collect(),
        }
    }

    pub fn is_face(&self, face: &[u32]) -> bool {
        face.is_empty() || !self.facets_containing(face).is_empty()
    }

    /// Translates a label list into a face of this complex.
    pub fn face_of<S: AsRef<str>>(&self, labels: &[S]) -> Result<Face> {
        let face = self.vertices.face(labels)?;
        if !self.is_face(&face) {
            return Err(Error::NotAFace(self.render_face(&face)));
        }
        Ok(face)
    }

    pub fn labels_of<'a>(&'a self, face: &[u32]) -> Vec<&'a str> {
        face.iter().map(|&v| self.vertices.label(v)).collect()
    }

    pub fn render_face(&self, face: &[u32]) -> String {
        self.labels_of(face).join(" ")
    }

    /// Facets as sorted label lists, sorted.
    pub fn label_facets(&self) -> Vec<Vec<String>> {
        let mut out: Vec<Vec<String>> = self
            .facets
            .iter()
            .map(|f| {
                f.iter()
                    .map(|&v| self.vertices.label(v).to_string())
                    .collect()
            })
            .collect();
        out.sort();
        out
    }

    /// Canonical facet-file rendering: labels sorted within a line, lines sorted.
    pub fn render(&self) -> String {
        let mut lines: Vec<String> = self.facets.iter().map(|f| self.render_face(f)).collect();
        lines.sort();
        let mut out = String::with_capacity(lines.iter().map(|l| l.len() + 1).sum());
        for l in lines {
            out.push_str(&l);
            out.push('\n');
        }
        out
    }

    /// Applies a vertex renaming; `rename[v]` is the new label of vertex `v`.
    /// Vertices sent to the same label are identified.
    pub fn relabel<S: AsRef<str>>(&self, rename: &[S]) -> Self {
        let table = VertexTable::new(rename.iter().map(|s| s.as_ref().to_string()));
        let ids: Vec<u32> = rename
            .iter()
            .map(|s| table.id(s.as_ref()).expect("label present"))
            .collect();
        let faces = self
            .facets
            .iter()
            .map(|f| {
                let mut g: Face = f.iter().map(|&v| ids[v as usize]).collect();
                g.sort_unstable();
                g.dedup();
                g
            })
            .collect();
        Complex::from_faces(&table, faces)
    }
}
