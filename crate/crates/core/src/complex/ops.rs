use std::collections::HashMap;

use itertools::Itertools;
use serde::Serialize;

use super::{Complex, Face, VertexTable};
use crate::error::{Error, Result};

/// Outcome of [`Complex::pseudomanifold_check`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PseudomanifoldReport {
    pub pure: bool,
    pub closed: bool,
    pub ridge_degrees_ok: bool,
    pub strongly_connected: bool,
}

impl PseudomanifoldReport {
    /// Pure, closed and strongly connected.
    pub fn is_closed_pseudomanifold(&self) -> bool {
        self.pure && self.closed && self.strongly_connected
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StandardKind {
    Sphere,
    Ball,
}

pub(crate) fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

fn difference(a: &[u32], b: &[u32]) -> Face {
    a.iter()
        .copied()
        .filter(|v| b.binary_search(v).is_err())
        .collect()
}

/// Number of facets containing each ridge (codimension-one face of a facet).
pub(crate) fn ridge_degrees(x: &Complex) -> HashMap<Face, Vec<u32>> {
    let mut map: HashMap<Face, Vec<u32>> = HashMap::new();
    for (i, f) in x.facets().iter().enumerate() {
        for skip in 0..f.len() {
            let r: Face = f
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != skip)
                .map(|(_, &v)| v)
                .collect();
            map.entry(r).or_default().push(i as u32);
        }
    }
    map
}

impl Complex {
    fn require_face(&self, sigma: &[u32]) -> Result<()> {
        if self.is_face(sigma) {
            Ok(())
        } else {
            Err(Error::NotAFace(
                sigma
                    .iter()
                    .map(|&v| {
                        self.vertices()
                            .labels()
                            .get(v as usize)
                            .cloned()
                            .unwrap_or_else(|| format!("#{v}"))
                    })
                    .join(" "),
            ))
        }
    }

    /// `lk(σ)`: faces disjoint from σ whose union with σ is a face.
    pub fn link(&self, sigma: &[u32]) -> Result<Complex> {
        self.require_face(sigma)?;
        if sigma.is_empty() {
            return Ok(self.clone());
        }
        let faces = self
            .facets_containing(sigma)
            .into_iter()
            .map(|i| difference(&self.facets()[i as usize], sigma))
            .collect();
        Ok(Complex::from_faces(self.vertices(), faces))
    }

    /// `star(σ) = σ̄ ∗ lk(σ)`: the facets containing σ.
    pub fn star(&self, sigma: &[u32]) -> Result<Complex> {
        self.require_face(sigma)?;
        let faces = self
            .facets_containing(sigma)
            .into_iter()
            .map(|i| self.facets()[i as usize].clone())
            .collect();
        Ok(Complex::from_faces(self.vertices(), faces))
    }

    /// `ast(σ)`: all faces disjoint from σ.
    pub fn antistar(&self, sigma: &[u32]) -> Result<Complex> {
        self.require_face(sigma)?;
        let faces = self.facets().iter().map(|f| difference(f, sigma)).collect();
        Ok(Complex::from_faces(self.vertices(), faces))
    }

    /// All faces contained in the vertex set `s` (given as ids of this complex).
    pub fn induced_subcomplex(&self, s: &[u32]) -> Result<Complex> {
        let mut s: Vec<u32> = s.to_vec();
        s.sort_unstable();
        s.dedup();
        if let Some(&bad) = s.iter().find(|&&v| v as usize >= self.num_vertices()) {
            return Err(Error::NotASubset(format!("#{bad}")));
        }
        let faces = self
            .facets()
            .iter()
            .map(|f| {
                f.iter()
                    .copied()
                    .filter(|v| s.binary_search(v).is_ok())
                    .collect()
            })
            .collect();
        Ok(Complex::from_faces(self.vertices(), faces))
    }

    /// [`Complex::induced_subcomplex`] on a set of labels.
    pub fn induced_by_labels<S: AsRef<str>>(&self, labels: &[S]) -> Result<Complex> {
        let mut ids = Vec::with_capacity(labels.len());
        for l in labels {
            let l = l.as_ref();
            ids.push(
                self.vertices()
                    .id(l)
                    .ok_or_else(|| Error::NotASubset(l.to_string()))?,
            );
        }
        self.induced_subcomplex(&ids)
    }

    /// The join `X ∗ Y` of complexes on disjoint label sets.
    pub fn join(&self, other: &Complex) -> Result<Complex> {
        if let Some(l) = other
            .vertices()
            .labels()
            .iter()
            .find(|l| self.vertices().contains(l))
        {
            return Err(Error::LabelCollision(l.clone()));
        }
        let table = VertexTable::new(
            self.vertices()
                .labels()
                .iter()
                .chain(other.vertices().labels())
                .cloned(),
        );
        let left: Vec<u32> = self
            .vertices()
            .labels()
            .iter()
            .map(|l| table.id(l).unwrap())
            .collect();
        let right: Vec<u32> = other
            .vertices()
            .labels()
            .iter()
            .map(|l| table.id(l).unwrap())
            .collect();
        let mut faces = Vec::with_capacity(self.facets().len() * other.facets().len().max(1));
        let lhs: Vec<Face> = if self.is_empty() {
            vec![Face::new()]
        } else {
            self.facets().to_vec()
        };
        let rhs: Vec<Face> = if other.is_empty() {
            vec![Face::new()]
        } else {
            other.facets().to_vec()
        };
        for a in &lhs {
            for b in &rhs {
                let mut f: Face = a
                    .iter()
                    .map(|&v| left[v as usize])
                    .chain(b.iter().map(|&v| right[v as usize]))
                    .collect();
                f.sort_unstable();
                faces.push(f);
            }
        }
        Ok(Complex::from_faces(&table, faces))
    }

    /// Cone over the complex with apex `apex`.
    pub fn cone(&self, apex: &str) -> Result<Complex> {
        self.join(&Complex::from_label_facets([[apex]])?)
    }

    /// The subcomplex generated by ridges lying in exactly one facet.
    /// Void when the complex is closed.
    pub fn boundary_subcomplex(&self) -> Result<Complex> {
        if !self.is_pure() {
            return Err(Error::NotPure);
        }
        let faces = ridge_degrees(self)
            .into_iter()
            .filter(|(_, fs)| fs.len() == 1)
            .map(|(r, _)| r)
            .collect();
        Ok(Complex::from_faces(self.vertices(), faces))
    }

    pub fn pseudomanifold_check(&self) -> PseudomanifoldReport {
        let pure = self.is_pure();
        let ridges = ridge_degrees(self);
        let ridge_degrees_ok = ridges.values().all(|f| f.len() <= 2);
        let closed = pure && !self.is_empty() && ridges.values().all(|f| f.len() == 2);
        let strongly_connected = pure && !self.is_empty() && {
            let mut uf = UnionFind::new(self.facets().len());
            for fs in ridges.values() {
                for w in fs.windows(2) {
                    uf.union(w[0] as usize, w[1] as usize);
                }
            }
            uf.components() == 1
        };
        PseudomanifoldReport {
            pure,
            closed,
            ridge_degrees_ok,
            strongly_connected,
        }
    }

    /// Largest `k` such that every `k`-subset of vertices is a face.
    pub fn neighborliness(&self) -> usize {
        let f = self.f_vector().counts;
        let n = self.num_vertices() as u64;
        let mut k = 0;
        while k < f.len() && f[k] as u128 == binomial(n, k as u64 + 1) {
            k += 1;
        }
        k
    }

    /// Standard `d`-sphere on labels `1..=d+2`, or standard `d`-ball on `1..=d+1`.
    pub fn standard(kind: StandardKind, d: i64) -> Result<Complex> {
        if d < 0 {
            return Err(Error::NegativeDimension(d));
        }
        let n = match kind {
            StandardKind::Sphere => d + 2,
            StandardKind::Ball => d + 1,
        } as usize;
        let table = VertexTable::new((1..=n).map(|i| i.to_string()));
        let ids: Vec<u32> = (1..=n).map(|i| table.id(&i.to_string()).unwrap()).collect();
        let faces = match kind {
            StandardKind::Ball => vec![ids.iter().copied().sorted().collect()],
            StandardKind::Sphere => ids
                .iter()
                .copied()
                .combinations(n - 1)
                .map(|c| c.into_iter().sorted().collect())
                .collect(),
        };
        Ok(Complex::from_faces(&table, faces))
    }

    /// Whether this is the boundary of a single simplex (standard sphere).
    pub fn is_standard_sphere(&self) -> bool {
        let n = self.num_vertices();
        n >= 2 && self.is_pure() && self.dim() == n as isize - 2 && self.facets().len() == n
    }

    /// Barycentric subdivision; the vertex for face `{a, b}` is labelled `sa_b`.
    pub fn barycentric_subdivision(&self) -> Complex {
        let mut chains: Vec<Vec<String>> = Vec::new();
        for f in self.facets() {
            for perm in f.iter().copied().permutations(f.len()) {
                let mut chain = Vec::with_capacity(perm.len());
                for k in 1..=perm.len() {
                    let mut prefix: Vec<u32> = perm[..k].to_vec();
                    prefix.sort_unstable();
                    chain.push(format!("s{}", self.labels_of(&prefix).join("_")));
                }
                chains.push(chain);
            }
        }
        Complex::from_label_facets(chains.iter()).expect("labels are well formed")
    }
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }

    pub(crate) fn components(&mut self) -> usize {
        (0..self.parent.len())
            .filter(|&i| self.find(i) == i)
            .count()
    }
}
