//! Mutable complex tuned for long move sequences.
//!
//! Every nonempty face carries the number of facets containing it, and for
//! each level `i >= 1` the faces of size `d - i + 1` lying in exactly `i + 1`
//! facets with `i + 1` link vertices are kept in insertion-ordered maps, so a
//! move can be drawn in expected constant time and the state evolves
//! deterministically.

use std::collections::{BTreeSet, HashMap, HashSet};

use indexmap::{IndexMap, IndexSet};

use super::rng::SplitMix64;
use super::Move;
use crate::complex::{is_subset, Complex, Face};
use crate::error::{Error, Result};

/// A move on dense ids.
#[derive(Clone, Debug)]
pub(crate) struct IdMove {
    pub i: usize,
    pub a: Face,
    pub b: Face,
}

pub(crate) struct Workspace {
    d: usize,
    labels: Vec<String>,
    ids: HashMap<String, u32>,
    facets: IndexSet<Face>,
    vertex_facets: Vec<HashSet<Face>>,
    count: HashMap<Face, u32>,
    candidates: Vec<IndexMap<Face, Face>>,
    f: Vec<usize>,
    fresh: u64,
}

fn subsets(f: &[u32], mut visit: impl FnMut(Face)) {
    let n = f.len();
    for mask in 1u32..(1 << n) {
        visit(
            (0..n)
                .filter(|&k| mask >> k & 1 == 1)
                .map(|k| f[k])
                .collect(),
        );
    }
}

fn with(a: &[u32], b: &[u32]) -> Face {
    let mut f: Face = a.iter().chain(b).copied().collect();
    f.sort_unstable();
    f
}

fn without(f: &[u32], v: u32) -> Face {
    f.iter().copied().filter(|&x| x != v).collect()
}

impl Workspace {
    pub fn new(x: &Complex) -> Result<Self> {
        if x.is_empty() {
            return Err(Error::EmptyInput);
        }
        if !x.is_pure() {
            return Err(Error::NotPure);
        }
        let d = x.dim() as usize;
        let labels: Vec<String> = x.vertices().labels().to_vec();
        let ids = labels
            .iter()
            .enumerate()
            .map(|(k, l)| (l.clone(), k as u32))
            .collect();
        let mut ws = Workspace {
            d,
            vertex_facets: vec![HashSet::new(); labels.len()],
            labels,
            ids,
            facets: IndexSet::new(),
            count: HashMap::new(),
            candidates: vec![IndexMap::new(); d + 1],
            f: vec![0; d + 1],
            fresh: 0,
        };
        let mut touched = Vec::new();
        for f in x.facets() {
            ws.insert_facet(f.clone(), &mut touched);
        }
        ws.refresh(touched);
        Ok(ws)
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn f_vector(&self) -> &[usize] {
        &self.f
    }

    fn insert_facet(&mut self, f: Face, touched: &mut Vec<Face>) {
        for &v in &f {
            self.vertex_facets[v as usize].insert(f.clone());
        }
        subsets(&f, |s| {
            let c = self.count.entry(s.clone()).or_insert(0);
            *c += 1;
            if *c == 1 {
                self.f[s.len() - 1] += 1;
            }
            touched.push(s);
        });
        self.facets.insert(f);
    }

    fn remove_facet(&mut self, f: &Face, touched: &mut Vec<Face>) {
        for &v in f {
            self.vertex_facets[v as usize].remove(f);
        }
        subsets(f, |s| {
            let c = self.count.get_mut(&s).expect("face is counted");
            *c -= 1;
            if *c == 0 {
                self.count.remove(&s);
                self.f[s.len() - 1] -= 1;
            }
            touched.push(s);
        });
        self.facets.swap_remove(f);
    }

    fn link_vertices(&self, s: &[u32]) -> Face {
        let rare = s
            .iter()
            .copied()
            .min_by_key(|&v| self.vertex_facets[v as usize].len())
            .expect("nonempty face");
        let set: BTreeSet<u32> = self.vertex_facets[rare as usize]
            .iter()
            .filter(|f| is_subset(s, f))
            .flat_map(|f| f.iter().copied())
            .filter(|v| !s.contains(v))
            .collect();
        set.into_iter().collect()
    }

    fn refresh(&mut self, mut touched: Vec<Face>) {
        // sorted so candidate maps evolve identically on every run
        touched.sort_unstable();
        touched.dedup();
        for s in touched {
            if s.len() > self.d {
                continue;
            }
            let i = self.d + 1 - s.len();
            let local = match self.count.get(&s) {
                Some(&c) if c as usize == i + 1 => {
                    let b = self.link_vertices(&s);
                    (b.len() == i + 1).then_some(b)
                }
                _ => None,
            };
            match local {
                Some(b) => {
                    self.candidates[i].insert(s, b);
                }
                None => {
                    self.candidates[i].swap_remove(&s);
                }
            }
        }
    }

    fn is_face(&self, f: &[u32]) -> bool {
        self.count.contains_key(f)
    }

    /// Legal moves of level `i >= 1`, in candidate order.
    fn legal(&self, i: usize) -> impl Iterator<Item = (&Face, &Face)> {
        self.candidates[i].iter().filter(|(_, b)| !self.is_face(b))
    }

    /// Number of legal moves of each level, `i = 0` included.
    #[cfg(test)]
    pub fn legal_counts(&self) -> Vec<usize> {
        (0..=self.d)
            .map(|i| {
                if i == 0 {
                    self.facets.len()
                } else {
                    self.legal(i).count()
                }
            })
            .collect()
    }

    fn fresh_vertex(&mut self) -> u32 {
        loop {
            let label = format!("t{}", self.fresh);
            self.fresh += 1;
            match self.ids.get(&label) {
                Some(&id) if !self.vertex_facets[id as usize].is_empty() => continue,
                Some(&id) => return id,
                None => return self.add_label(label),
            }
        }
    }

    fn add_label(&mut self, label: String) -> u32 {
        let id = self.labels.len() as u32;
        self.ids.insert(label.clone(), id);
        self.labels.push(label);
        self.vertex_facets.push(HashSet::new());
        id
    }

    /// A uniformly chosen legal move of the highest reducing level.
    pub fn pick_reducing(&self, rng: &mut SplitMix64) -> Option<IdMove> {
        for i in (self.d / 2 + 1..=self.d).rev() {
            let legal: Vec<(&Face, &Face)> = self.legal(i).collect();
            if !legal.is_empty() {
                let (a, b) = legal[rng.below(legal.len())];
                return Some(IdMove {
                    i,
                    a: a.clone(),
                    b: b.clone(),
                });
            }
        }
        None
    }

    /// A uniformly chosen legal move among the non-reducing levels `i >= 1`,
    /// falling back to subdividing a random facet when there is none.
    pub fn pick_excursion(&mut self, rng: &mut SplitMix64) -> IdMove {
        let levels: Vec<usize> = (1..=self.d / 2).collect();
        let total: usize = levels.iter().map(|&i| self.candidates[i].len()).sum();
        if total > 0 {
            // rejection sampling keeps the draw uniform over legal moves
            for _ in 0..64 {
                let mut r = rng.below(total);
                for &i in &levels {
                    let n = self.candidates[i].len();
                    if r < n {
                        let (a, b) = self.candidates[i].get_index(r).unwrap();
                        if !self.is_face(b) {
                            return IdMove {
                                i,
                                a: a.clone(),
                                b: b.clone(),
                            };
                        }
                        break;
                    }
                    r -= n;
                }
            }
            let legal: Vec<(usize, &Face, &Face)> = levels
                .iter()
                .flat_map(|&i| self.legal(i).map(move |(a, b)| (i, a, b)))
                .collect();
            if !legal.is_empty() {
                let (i, a, b) = legal[rng.below(legal.len())];
                return IdMove {
                    i,
                    a: a.clone(),
                    b: b.clone(),
                };
            }
        }
        let a = self.facets[rng.below(self.facets.len())].clone();
        let v = self.fresh_vertex();
        IdMove {
            i: 0,
            a,
            b: std::iter::once(v).collect(),
        }
    }

    /// Applies a move known to be legal.
    pub fn apply(&mut self, m: &IdMove) {
        let mut touched = Vec::new();
        if m.i == 0 {
            self.remove_facet(&m.a, &mut touched);
        } else {
            for &skip in &m.b {
                self.remove_facet(&with(&m.a, &without(&m.b, skip)), &mut touched);
            }
        }
        for &skip in &m.a {
            self.insert_facet(with(&without(&m.a, skip), &m.b), &mut touched);
        }
        self.refresh(touched);
    }

    fn check(&self, m: &IdMove) -> std::result::Result<(), &'static str> {
        if m.i > self.d || m.a.len() != self.d - m.i + 1 || m.b.len() != m.i + 1 {
            return Err("sizes do not match the index");
        }
        if m.i == 0 {
            if !self.facets.contains(&m.a) {
                return Err("A is not a facet");
            }
            if !self.vertex_facets[m.b[0] as usize].is_empty() {
                return Err("fresh vertex already present");
            }
            return Ok(());
        }
        match self.candidates[m.i].get(&m.a) {
            None => Err("link of A is not the boundary of a simplex"),
            Some(b) if *b != m.b => Err("link of A is not the boundary of B"),
            Some(_) if self.is_face(&m.b) => Err("B is already a face"),
            Some(_) => Ok(()),
        }
    }

    fn id_of(&mut self, label: &str, may_create: bool) -> Option<u32> {
        match self.ids.get(label) {
            Some(&id) => Some(id),
            None if may_create => Some(self.add_label(label.to_string())),
            None => None,
        }
    }

    /// Applies a labelled move after checking it.
    pub fn apply_labelled(&mut self, m: &Move) -> Result<()> {
        let illegal = |why: &str| Error::IllegalMove(format!("{m}: {why}"));
        let mut a = Face::new();
        for l in &m.a {
            a.push(
                self.id_of(l, false)
                    .ok_or_else(|| illegal("unknown vertex in A"))?,
            );
        }
        let mut b = Face::new();
        for l in &m.b {
            b.push(
                self.id_of(l, m.i == 0)
                    .ok_or_else(|| illegal("unknown vertex in B"))?,
            );
        }
        a.sort_unstable();
        b.sort_unstable();
        let idm = IdMove { i: m.i, a, b };
        self.check(&idm).map_err(illegal)?;
        self.apply(&idm);
        Ok(())
    }

    pub fn labelled(&self, m: &IdMove) -> Move {
        let names = |f: &Face| -> Vec<String> {
            let mut v: Vec<String> = f
                .iter()
                .map(|&id| self.labels[id as usize].clone())
                .collect();
            v.sort();
            v
        };
        Move {
            i: m.i,
            a: names(&m.a),
            b: names(&m.b),
        }
    }

    pub fn to_complex(&self) -> Complex {
        let facets: Vec<Vec<&str>> = self
            .facets
            .iter()
            .map(|f| {
                f.iter()
                    .map(|&v| self.labels[v as usize].as_str())
                    .collect()
            })
            .collect();
        Complex::from_label_facets(facets.iter().map(|f| f.iter().copied()))
            .expect("workspace labels are well formed")
    }
}
