//! Simplicial homology over `Z`, `Q` and small prime fields.

pub mod snf;
pub mod sparse;

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::scalar::{EliminationScalar, Fp};
use sparse::{eliminate, Overflowed, SparseMatrix};

/// Coefficient rings offered for homology.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Ring {
    Z,
    Q,
    Gf2,
    Gf3,
    Gf5,
}

impl Ring {
    pub const ALL: [Ring; 5] = [Ring::Z, Ring::Q, Ring::Gf2, Ring::Gf3, Ring::Gf5];

    pub fn name(self) -> &'static str {
        match self {
            Ring::Z => "z",
            Ring::Q => "q",
            Ring::Gf2 => "gf2",
            Ring::Gf3 => "gf3",
            Ring::Gf5 => "gf5",
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Ring {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ring::ALL
            .into_iter()
            .find(|r| r.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnsupportedRing(s.to_string()))
    }
}

impl Serialize for Ring {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

fn integers_as_numbers<S: Serializer>(
    t: &[Vec<BigInt>],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    use num_traits::ToPrimitive;
    use serde::ser::SerializeSeq;
    let mut outer = s.serialize_seq(Some(t.len()))?;
    for group in t {
        let inner: Vec<wire::Int> = group
            .iter()
            .map(|v| match v.to_u64() {
                Some(u) => wire::Int::Small(u),
                None => wire::Int::Big(v.to_string()),
            })
            .collect();
        outer.serialize_element(&inner)?;
    }
    outer.end()
}

mod wire {
    use serde::Serialize;

    #[derive(Serialize)]
    #[serde(untagged)]
    pub enum Int {
        Small(u64),
        Big(String),
    }
}

/// Homology in every dimension `0..=dim X`.
#[derive(Clone, Debug, Serialize)]
pub struct HomologyProfile {
    pub ring: Ring,
    pub betti: Vec<usize>,
    /// Invariant factors greater than one, per dimension; always empty over
    /// a field.
    #[serde(serialize_with = "integers_as_numbers")]
    pub torsion: Vec<Vec<BigInt>>,
    /// `ranks[k]` is the rank of the boundary map out of dimension `k`.
    pub ranks: Vec<usize>,
    pub elapsed_ms: u128,
}

impl HomologyProfile {
    /// Whether this matches the homology of the `d`-sphere.
    pub fn is_sphere_like(&self) -> bool {
        let d = self.betti.len().saturating_sub(1);
        let expected: Vec<usize> = if d == 0 {
            vec![2]
        } else {
            (0..=d).map(|k| usize::from(k == 0 || k == d)).collect()
        };
        self.betti == expected && self.torsion.iter().all(Vec::is_empty)
    }
}

/// Boundary map out of dimension `k` as a sparse matrix; one row per
/// `k`-face, columns indexed by `(k-1)`-faces.
pub fn boundary_matrix<S: EliminationScalar>(x: &Complex, k: usize) -> SparseMatrix<S> {
    assert!(k >= 1);
    let lower = x.faces(k - 1);
    let rows = x
        .faces(k)
        .iter()
        .map(|f| {
            let mut row: Vec<(u32, S)> = (0..f.len())
                .map(|i| {
                    let mut sub = f.clone();
                    sub.remove(i);
                    let c = lower
                        .binary_search(&sub)
                        .expect("faces are closed under subsets");
                    let sign = if i % 2 == 0 { 1 } else { -1 };
                    (c as u32, S::from_i64(sign))
                })
                .collect();
            row.sort_unstable_by_key(|e| e.0);
            row.retain(|e| !e.1.is_zero());
            row
        })
        .collect();
    SparseMatrix {
        rows,
        ncols: lower.len(),
    }
}

fn field_rank<S: EliminationScalar>(x: &Complex, k: usize) -> usize {
    let red = eliminate(boundary_matrix::<S>(x, k)).expect("field arithmetic cannot overflow");
    debug_assert!(red.residual.is_empty());
    red.unit_pivots
}

/// Rank and nontrivial invariant factors of an integer boundary map.
fn integer_smith(x: &Complex, k: usize) -> Result<(usize, Vec<BigInt>)> {
    let red = match eliminate(boundary_matrix::<i64>(x, k)) {
        Ok(r) => r,
        Err(Overflowed) => {
            eliminate(boundary_matrix::<BigInt>(x, k)).map_err(|_| Error::Overflow {
                bits: crate::scalar::MAX_INTEGER_BITS,
            })?
        }
    };
    let mut cols: Vec<u32> = red.residual.iter().flatten().map(|e| e.0).collect();
    cols.sort_unstable();
    cols.dedup();
    let dense: Vec<Vec<BigInt>> = red
        .residual
        .iter()
        .map(|row| {
            let mut d = vec![BigInt::default(); cols.len()];
            for (c, v) in row {
                d[cols.binary_search(c).unwrap()] = v.clone();
            }
            d
        })
        .collect();
    let factors = snf::invariant_factors(dense).map_err(|_| Error::Overflow {
        bits: crate::scalar::MAX_INTEGER_BITS,
    })?;
    let rank = red.unit_pivots + factors.len();
    let torsion = factors.into_iter().filter(|v| !v.is_one()).collect();
    Ok((rank, torsion))
}

fn rank_in(x: &Complex, k: usize, ring: Ring) -> Result<(usize, Vec<BigInt>)> {
    Ok(match ring {
        Ring::Z => return integer_smith(x, k),
        Ring::Q => (field_rank::<BigRational>(x, k), Vec::new()),
        Ring::Gf2 => (field_rank::<Fp<2>>(x, k), Vec::new()),
        Ring::Gf3 => (field_rank::<Fp<3>>(x, k), Vec::new()),
        Ring::Gf5 => (field_rank::<Fp<5>>(x, k), Vec::new()),
    })
}

/// Unreduced homology of `x` with coefficients in `ring`.
pub fn homology(x: &Complex, ring: Ring) -> Result<HomologyProfile> {
    let start = Instant::now();
    let dim = x.dim();
    if dim < 0 {
        return Ok(HomologyProfile {
            ring,
            betti: Vec::new(),
            torsion: Vec::new(),
            ranks: Vec::new(),
            elapsed_ms: 0,
        });
    }
    let d = dim as usize;
    let f = x.f_vector().counts;
    let maps: Vec<(usize, Vec<BigInt>)> = (1..=d)
        .into_par_iter()
        .map(|k| rank_in(x, k, ring))
        .collect::<Result<_>>()?;
    let mut ranks = vec![0; d + 2];
    let mut torsion = vec![Vec::new(); d + 1];
    for (i, (r, t)) in maps.into_iter().enumerate() {
        ranks[i + 1] = r;
        // invariant factors of the map out of dimension k give torsion in k-1
        torsion[i] = t;
    }
    let betti = (0..=d).map(|k| f[k] - ranks[k] - ranks[k + 1]).collect();
    ranks.truncate(d + 1);
    Ok(HomologyProfile {
        ring,
        betti,
        torsion,
        ranks,
        elapsed_ms: start.elapsed().as_millis(),
    })
}

/// Homology over each ring, computed concurrently.
pub fn homology_all(x: &Complex, rings: &[Ring]) -> Result<Vec<HomologyProfile>> {
    rings.par_iter().map(|&r| homology(x, r)).collect()
}

/// Whether a closed pseudomanifold admits a coherent orientation of its
/// facets.
pub fn is_orientable(x: &Complex) -> Result<bool> {
    if !x.pseudomanifold_check().is_closed_pseudomanifold() {
        return Err(Error::NotClosedPseudomanifold);
    }
    let ridges = crate::complex::ridge_degrees(x);
    let facets = x.facets();
    let mut sign: Vec<i8> = vec![0; facets.len()];
    // induced sign of the ridge facet \ {v_i} is (-1)^i times the facet's sign
    let position = |f: u32, ridge: &[u32]| -> usize {
        facets[f as usize]
            .iter()
            .position(|v| !ridge.contains(v))
            .expect("ridge is a proper face")
    };
    let mut adjacency: Vec<Vec<(u32, i8)>> = vec![Vec::new(); facets.len()];
    for (ridge, fs) in &ridges {
        let (a, b) = (fs[0], fs[1]);
        let pa = position(a, ridge);
        let pb = position(b, ridge);
        // need sign[a]·(-1)^pa = -sign[b]·(-1)^pb
        let rel: i8 = if (pa + pb) % 2 == 0 { -1 } else { 1 };
        adjacency[a as usize].push((b, rel));
        adjacency[b as usize].push((a, rel));
    }
    sign[0] = 1;
    let mut stack = vec![0u32];
    while let Some(f) = stack.pop() {
        for &(g, rel) in &adjacency[f as usize] {
            let want = sign[f as usize] * rel;
            match sign[g as usize] {
                0 => {
                    sign[g as usize] = want;
                    stack.push(g);
                }
                s if s != want => return Ok(false),
                _ => {}
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{parse_facets, StandardKind};

    const RP2: &str = "1 2 3\n1 3 4\n1 4 5\n1 5 6\n1 2 6\n2 3 5\n3 4 6\n2 4 5\n2 4 6\n3 5 6\n";

    fn rp2() -> Complex {
        parse_facets(RP2).unwrap().complex
    }

    #[test]
    fn boundary_squares_to_zero() {
        let x = Complex::standard(StandardKind::Sphere, 3).unwrap();
        for k in 2..=3 {
            let a = boundary_matrix::<i64>(&x, k);
            let b = boundary_matrix::<i64>(&x, k - 1);
            for row in &a.rows {
                let mut acc = vec![0i64; b.ncols];
                for &(c, v) in row {
                    for &(c2, w) in &b.rows[c as usize] {
                        acc[c2 as usize] += v * w;
                    }
                }
                assert!(acc.iter().all(|&v| v == 0));
            }
        }
    }

    #[test]
    fn projective_plane() {
        let x = rp2();
        let z = homology(&x, Ring::Z).unwrap();
        assert_eq!(z.betti, [1, 0, 0]);
        assert_eq!(z.torsion, vec![vec![], vec![BigInt::from(2)], vec![]]);
        assert_eq!(homology(&x, Ring::Gf2).unwrap().betti, [1, 1, 1]);
        assert_eq!(homology(&x, Ring::Gf3).unwrap().betti, [1, 0, 0]);
        assert_eq!(homology(&x, Ring::Q).unwrap().betti, [1, 0, 0]);
        assert!(!is_orientable(&x).unwrap());
    }

    #[test]
    fn spheres_and_tori() {
        for d in 0..5 {
            let s = Complex::standard(StandardKind::Sphere, d).unwrap();
            let h = homology(&s, Ring::Z).unwrap();
            assert!(h.is_sphere_like(), "d = {d}: {h:?}");
            if d > 0 {
                assert!(is_orientable(&s).unwrap());
            }
        }
        let c = parse_facets("1 2\n2 3\n1 3").unwrap().complex;
        let t = c.staircase_product_default(&c).unwrap();
        let h = homology(&t, Ring::Z).unwrap();
        assert_eq!(h.betti, [1, 2, 1]);
        assert!(h.torsion.iter().all(Vec::is_empty));
        assert!(is_orientable(&t).unwrap());
        assert!(!homology(&rp2(), Ring::Z).unwrap().is_sphere_like());
    }

    #[test]
    fn ring_names() {
        assert_eq!("GF3".parse::<Ring>().unwrap(), Ring::Gf3);
        assert!(matches!(
            "gf7".parse::<Ring>(),
            Err(Error::UnsupportedRing(_))
        ));
    }
}
