//! Isomorphism testing and automorphism groups by colour refinement and
//! individualization.
//!
//! Vertices start coloured by their signature (degree, link f-vector and the
//! sorted degrees of their neighbours). A colour is then refined by the
//! multiset, over the facets through the vertex, of the colours of the other
//! facet vertices, until no class splits. Both complexes are refined in one
//! shared colour space so classes can be compared; the search individualizes
//! a vertex of the smallest nontrivial class and tries every partner of the
//! same colour.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use serde::Serialize;

use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::group::{enumerate_group, Generator, Group, Permutation};

pub const DEFAULT_NODE_BUDGET: u64 = 1_000_000;

type Colours = Vec<u32>;

/// The invariant tuple used as a vertex's initial colour.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct VertexSignature {
    pub degree: usize,
    pub link_f_vector: Vec<usize>,
    pub neighbour_degrees: Vec<usize>,
}

pub fn vertex_signatures(x: &Complex) -> Vec<VertexSignature> {
    let n = x.num_vertices();
    let mut nbrs: Vec<BTreeSet<u32>> = vec![BTreeSet::new(); n];
    for e in x.faces(1) {
        nbrs[e[0] as usize].insert(e[1]);
        nbrs[e[1] as usize].insert(e[0]);
    }
    (0..n as u32)
        .map(|v| {
            let mut neighbour_degrees: Vec<usize> = nbrs[v as usize]
                .iter()
                .map(|&w| nbrs[w as usize].len())
                .collect();
            neighbour_degrees.sort_unstable();
            VertexSignature {
                degree: nbrs[v as usize].len(),
                link_f_vector: x
                    .link(&[v])
                    .map(|l| l.f_vector().counts)
                    .unwrap_or_default(),
                neighbour_degrees,
            }
        })
        .collect()
}

/// Relabels per-side keys into one shared sorted colour space; `None` if the
/// two sides disagree on some class size.
fn shared_colours<K: Ord + Clone>(keys: [&[K]; 2]) -> Option<[Colours; 2]> {
    let distinct: BTreeSet<&K> = keys[0].iter().chain(keys[1].iter()).collect();
    let index: BTreeMap<&K, u32> = distinct.into_iter().zip(0u32..).collect();
    let cols = keys.map(|ks| ks.iter().map(|k| index[k]).collect::<Colours>());
    let hist = |c: &Colours| {
        let mut h = vec![0usize; index.len()];
        for &x in c {
            h[x as usize] += 1;
        }
        h
    };
    (hist(&cols[0]) == hist(&cols[1])).then_some(cols)
}

fn class_count(c: &Colours) -> usize {
    c.iter().collect::<HashSet<_>>().len()
}

struct Side<'a> {
    x: &'a Complex,
}

impl Side<'_> {
    /// Per-vertex key: own colour and the sorted ids of the colour multisets
    /// of the facets through it, interned in a map shared by both sides.
    fn keys(&self, colours: &Colours, intern: &mut HashMap<Vec<u32>, u32>) -> Vec<(u32, Vec<u32>)> {
        let facet_ids: Vec<u32> = self
            .x
            .facets()
            .iter()
            .map(|f| {
                let mut c: Vec<u32> = f.iter().map(|&w| colours[w as usize]).collect();
                c.sort_unstable();
                let next = intern.len() as u32;
                *intern.entry(c).or_insert(next)
            })
            .collect();
        self.x
            .vertex_facets()
            .iter()
            .enumerate()
            .map(|(v, fs)| {
                let mut around: Vec<u32> = fs.iter().map(|&f| facet_ids[f as usize]).collect();
                around.sort_unstable();
                (colours[v], around)
            })
            .collect()
    }
}

fn refine(sides: &[Side; 2], mut cols: [Colours; 2]) -> Option<[Colours; 2]> {
    let mut classes = class_count(&cols[0]);
    loop {
        let mut intern = HashMap::new();
        let k0 = sides[0].keys(&cols[0], &mut intern);
        let k1 = sides[1].keys(&cols[1], &mut intern);
        cols = shared_colours([&k0, &k1])?;
        let now = class_count(&cols[0]);
        if now == classes {
            return Some(cols);
        }
        classes = now;
    }
}

struct Search<'a> {
    sides: [Side<'a>; 2],
    facets_y: HashSet<Vec<u32>>,
    all: bool,
    found: Vec<Vec<u32>>,
    nodes: u64,
    budget: u64,
}

impl Search<'_> {
    fn leaf(&mut self, cols: &[Colours; 2]) -> bool {
        let mut by_colour = vec![0u32; cols[1].len()];
        for (y, &c) in cols[1].iter().enumerate() {
            by_colour[c as usize] = y as u32;
        }
        let map: Vec<u32> = cols[0].iter().map(|&c| by_colour[c as usize]).collect();
        let ok = self.sides[0].x.facets().iter().all(|f| {
            let mut img: Vec<u32> = f.iter().map(|&v| map[v as usize]).collect();
            img.sort_unstable();
            self.facets_y.contains(&img)
        });
        if ok {
            self.found.push(map);
        }
        ok
    }

    /// Returns `true` once the search may stop.
    fn run(&mut self, cols: [Colours; 2]) -> Result<bool> {
        let n = cols[0].len();
        let mut sizes: BTreeMap<u32, usize> = BTreeMap::new();
        for &c in &cols[0] {
            *sizes.entry(c).or_default() += 1;
        }
        let target = sizes
            .iter()
            .filter(|(_, &s)| s > 1)
            .min_by_key(|(&c, &s)| (s, c))
            .map(|(&c, _)| c);
        let Some(c) = target else {
            return Ok(self.leaf(&cols) && !self.all);
        };
        let x = cols[0].iter().position(|&k| k == c).unwrap();
        let fresh = n as u32 + 1;
        for y in (0..n).filter(|&y| cols[1][y] == c) {
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(Error::Budget(self.budget));
            }
            let mut next = cols.clone();
            // a colour no vertex holds; refinement renumbers everything
            next[0][x] = fresh;
            next[1][y] = fresh;
            if let Some(refined) = refine(&self.sides, next) {
                if self.run(refined)? {
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }
}

fn start<'a>(
    x: &'a Complex,
    y: &'a Complex,
    all: bool,
    budget: u64,
) -> Option<(Search<'a>, [Colours; 2])> {
    if x.f_vector() != y.f_vector() || x.facets().len() != y.facets().len() {
        return None;
    }
    let sx = vertex_signatures(x);
    let sy = vertex_signatures(y);
    let cols = shared_colours([&sx, &sy])?;
    let sides = [Side { x }, Side { x: y }];
    let cols = refine(&sides, cols)?;
    let facets_y = y.facets().iter().map(|f| f.to_vec()).collect();
    Some((
        Search {
            sides,
            facets_y,
            all,
            found: Vec::new(),
            nodes: 0,
            budget,
        },
        cols,
    ))
}

/// A facet-preserving bijection `X → Y` as sorted `(label in X, label in Y)`
/// pairs, searched within `budget` nodes.
pub fn find_isomorphism(
    x: &Complex,
    y: &Complex,
    budget: u64,
) -> Result<Option<Vec<(String, String)>>> {
    if x.is_empty() || y.is_empty() {
        return Ok((x.is_empty() && y.is_empty()).then(Vec::new));
    }
    let Some((mut search, cols)) = start(x, y, false, budget) else {
        return Ok(None);
    };
    search.run(cols)?;
    Ok(search.found.pop().map(|map| {
        map.iter()
            .enumerate()
            .map(|(v, &w)| {
                (
                    x.vertices().label(v as u32).to_string(),
                    y.vertices().label(w).to_string(),
                )
            })
            .collect()
    }))
}

/// [`find_isomorphism`] without a node limit.
pub fn are_isomorphic(x: &Complex, y: &Complex) -> Option<Vec<(String, String)>> {
    find_isomorphism(x, y, u64::MAX).expect("unbounded search cannot exceed its budget")
}

#[derive(Clone, Debug)]
pub struct AutomorphismGroup {
    pub order: u64,
    pub group: Group,
}

/// The full automorphism group: every automorphism is enumerated, so the
/// order is exact. Generators are chosen greedily in search order.
pub fn automorphism_group(x: &Complex, budget: u64) -> Result<AutomorphismGroup> {
    let table = x.vertices().clone();
    if x.is_empty() {
        return Ok(AutomorphismGroup {
            order: 1,
            group: Group::new(table, Vec::new()),
        });
    }
    let (mut search, cols) = start(x, x, true, budget).expect("a complex matches itself");
    search.run(cols)?;
    let order = search.found.len() as u64;
    let mut gens: Vec<Generator> = Vec::new();
    let mut reached: HashSet<Permutation> = HashSet::new();
    reached.insert(Permutation::identity(x.num_vertices()));
    for map in search.found {
        let p = Permutation::from_images(map).expect("search yields bijections");
        if reached.contains(&p) {
            continue;
        }
        gens.push(Generator {
            name: format!("g{}", gens.len() + 1),
            perm: p,
        });
        let g = Group::new(table.clone(), gens.clone());
        reached = enumerate_group(&g, order as usize)?.into_iter().collect();
        if reached.len() as u64 == order {
            break;
        }
    }
    Ok(AutomorphismGroup {
        order,
        group: Group::new(table, gens),
    })
}
