//! Bistellar moves, seeded flip search and sphere recognition.
//!
//! An `i`-move on a pure `d`-complex picks a face `A` with `|A| = d - i + 1`
//! whose link is the boundary of a simplex `B` with `|B| = i + 1` that is not
//! itself a face, and replaces the facets `A ∪ (B - b)` by `(A - a) ∪ B`.

mod certify;
mod rng;
mod search;
mod workspace;

pub use certify::{
    certify_manifold, certify_sphere, LinkReport, ManifoldReport, ManifoldVerdict,
    SphereCertificate, SphereVerdict,
};
pub use rng::SplitMix64;
pub use search::{reduce_search, SearchConfig, SearchOutcome, SearchStatus};

use std::collections::BTreeSet;
use std::fmt;

use sha2::{Digest, Sha256};

use crate::complex::{Complex, Face};
use crate::error::{Error, Result};
use workspace::Workspace;

/// A bistellar move, recorded by vertex labels so it survives relabelling of
/// dense ids.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Move {
    pub i: usize,
    /// Sorted labels of the face being removed.
    pub a: Vec<String>,
    /// Sorted labels of the simplex being inserted; a single fresh label for
    /// `i = 0`.
    pub b: Vec<String>,
}

impl Move {
    /// The move undoing this one in a `d`-complex.
    pub fn inverse(&self, d: usize) -> Move {
        Move {
            i: d - self.i,
            a: self.b.clone(),
            b: self.a.clone(),
        }
    }

    /// Lowers the f-vector lexicographically.
    pub fn is_reducing(&self, d: usize) -> bool {
        2 * self.i > d
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} | {} | {}",
            self.i,
            self.a.join(" "),
            self.b.join(" ")
        )
    }
}

/// Change in the f-vector caused by any `i`-move in dimension `d`.
pub fn f_delta(d: usize, i: usize) -> Vec<i64> {
    let binom = |n: usize, k: isize| -> i64 {
        if k < 0 || k as usize > n {
            0
        } else {
            crate::complex::binomial(n as u64, k as u64) as i64
        }
    };
    let (na, nb) = (d - i + 1, i + 1);
    (0..=d)
        .map(|k| {
            let size = k as isize + 1;
            binom(na, size - nb as isize) - binom(nb, size - na as isize)
        })
        .collect()
}

/// SHA-256 of the canonical rendering.
pub fn complex_digest(x: &Complex) -> String {
    hex::encode(Sha256::digest(x.render().as_bytes()))
}

fn dimension(x: &Complex) -> Result<usize> {
    if x.is_empty() {
        return Err(Error::EmptyInput);
    }
    if !x.is_pure() {
        return Err(Error::NotPure);
    }
    Ok(x.dim() as usize)
}

fn fresh_label(x: &Complex) -> String {
    (0u64..)
        .map(|n| format!("t{n}"))
        .find(|l| !x.vertices().contains(l))
        .expect("unbounded counter")
}

/// All legal moves, sorted by `i` and then by the labels of `A`.
pub fn enumerate_moves(x: &Complex, index: Option<usize>) -> Result<Vec<Move>> {
    let d = dimension(x)?;
    let levels: Vec<usize> = match index {
        Some(i) if i > d => return Ok(Vec::new()),
        Some(i) => vec![i],
        None => (0..=d).collect(),
    };
    let t = x.vertices();
    let sorted = |f: &[u32]| -> Vec<String> {
        let mut v: Vec<String> = f.iter().map(|&id| t.label(id).to_string()).collect();
        v.sort();
        v
    };
    let fresh = fresh_label(x);
    let mut out = Vec::new();
    for i in levels {
        if i == 0 {
            for f in x.facets() {
                out.push(Move {
                    i,
                    a: sorted(f),
                    b: vec![fresh.clone()],
                });
            }
            continue;
        }
        for a in x.faces(d - i) {
            let cont = x.facets_containing(a);
            if cont.len() != i + 1 {
                continue;
            }
            let b: BTreeSet<u32> = cont
                .iter()
                .flat_map(|&k| x.facets()[k as usize].iter().copied())
                .filter(|v| !a.contains(v))
                .collect();
            let b: Face = b.into_iter().collect();
            if b.len() == i + 1 && !x.is_face(&b) {
                out.push(Move {
                    i,
                    a: sorted(a),
                    b: sorted(&b),
                });
            }
        }
    }
    out.sort();
    Ok(out)
}

fn illegal(m: &Move, why: &str) -> Error {
    Error::IllegalMove(format!("{m}: {why}"))
}

/// Applies `m` after re-checking every legality clause.
pub fn apply_move(x: &Complex, m: &Move) -> Result<Complex> {
    let d = dimension(x)?;
    if m.i > d {
        return Err(illegal(m, "index exceeds dimension"));
    }
    if m.a.len() != d - m.i + 1 {
        return Err(illegal(m, "A has the wrong size"));
    }
    if m.b.len() != m.i + 1 {
        return Err(illegal(m, "B has the wrong size"));
    }
    let a = x.face_of(&m.a).map_err(|_| illegal(m, "A is not a face"))?;
    let mut facets: Vec<Vec<String>> = x.label_facets();
    if m.i == 0 {
        if x.vertices().contains(&m.b[0]) {
            return Err(illegal(m, "fresh vertex already present"));
        }
        if !x.facets().contains(&a) {
            return Err(illegal(m, "A is not a facet"));
        }
    } else {
        let b = x
            .vertices()
            .face(&m.b)
            .map_err(|_| illegal(m, "B has a vertex outside the complex"))?;
        if x.is_face(&b) {
            return Err(illegal(m, "B is already a face"));
        }
        let cont = x.facets_containing(&a);
        let expected: BTreeSet<Face> = b
            .iter()
            .map(|&skip| {
                let mut f: Face = a
                    .iter()
                    .copied()
                    .chain(b.iter().copied().filter(|&v| v != skip))
                    .collect();
                f.sort_unstable();
                f
            })
            .collect();
        let actual: BTreeSet<Face> = cont
            .iter()
            .map(|&k| x.facets()[k as usize].clone())
            .collect();
        if actual != expected {
            return Err(illegal(m, "link of A is not the boundary of B"));
        }
    }
    let removed: BTreeSet<Vec<String>> = if m.i == 0 {
        std::iter::once(m.a.clone()).collect()
    } else {
        m.b.iter()
            .map(|skip| {
                let mut f: Vec<String> =
                    m.a.iter()
                        .chain(m.b.iter().filter(|v| *v != skip))
                        .cloned()
                        .collect();
                f.sort();
                f
            })
            .collect()
    };
    facets.retain(|f| !removed.contains(f));
    for skip in &m.a {
        facets.push(
            m.a.iter()
                .filter(|v| *v != skip)
                .chain(m.b.iter())
                .cloned()
                .collect(),
        );
    }
    Complex::from_label_facets(facets.iter())
}

/// Whether a logged move lowered the f-vector.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// Neutral or worsening.
    Up,
    /// Lexicographically reducing.
    Down,
}

impl Direction {
    pub fn of(m: &Move, d: usize) -> Direction {
        if m.is_reducing(d) {
            Direction::Down
        } else {
            Direction::Up
        }
    }

    fn symbol(self) -> char {
        match self {
            Direction::Up => '+',
            Direction::Down => '-',
        }
    }
}

/// A replayable sequence of moves anchored to the digest of its start.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MoveLog {
    pub initial_digest: String,
    pub moves: Vec<(Move, Direction)>,
}

const HEADER: &str = "# initial sha256 ";

impl MoveLog {
    pub fn new(initial: &Complex) -> Self {
        MoveLog {
            initial_digest: complex_digest(initial),
            moves: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    /// One line per move, `[+|-] i | A | B`, after a digest header.
    pub fn render(&self) -> String {
        let mut s = format!("{HEADER}{}\n", self.initial_digest);
        for (m, dir) in &self.moves {
            s.push(dir.symbol());
            s.push(' ');
            s.push_str(&m.to_string());
            s.push('\n');
        }
        s
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty());
        let digest = lines
            .next()
            .and_then(|(_, l)| l.trim().strip_prefix(HEADER.trim_end()))
            .map(|d| d.trim().to_string())
            .filter(|d| d.len() == 64 && d.chars().all(|c| c.is_ascii_hexdigit()))
            .ok_or_else(|| Error::MoveLog("missing digest header".into()))?;
        let mut moves = Vec::new();
        for (n, line) in lines {
            let bad = |what: &str| Error::MoveLog(format!("line {}: {what}", n + 1));
            let line = line.trim();
            let dir = match line.chars().next() {
                Some('+') => Direction::Up,
                Some('-') => Direction::Down,
                _ => return Err(bad("expected `+` or `-`")),
            };
            let parts: Vec<&str> = line[1..].split('|').collect();
            if parts.len() != 3 {
                return Err(bad("expected `i | A | B`"));
            }
            let i = parts[0]
                .trim()
                .parse::<usize>()
                .map_err(|_| bad("bad move index"))?;
            let labels = |p: &str| -> Vec<String> {
                let mut v: Vec<String> = p.split_whitespace().map(str::to_string).collect();
                v.sort();
                v
            };
            moves.push((
                Move {
                    i,
                    a: labels(parts[1]),
                    b: labels(parts[2]),
                },
                dir,
            ));
        }
        Ok(MoveLog {
            initial_digest: digest,
            moves,
        })
    }

    /// Replays the log from `x`, calling `checkpoint` after every `every`
    /// moves (and never if `every` is zero).
    pub fn replay_with(
        &self,
        x: &Complex,
        every: usize,
        mut checkpoint: impl FnMut(usize, &Complex) -> Result<()>,
    ) -> Result<Complex> {
        if complex_digest(x) != self.initial_digest {
            return Err(Error::MoveLog(
                "initial complex does not match digest".into(),
            ));
        }
        let d = dimension(x)?;
        let mut ws = Workspace::new(x)?;
        for (k, (m, dir)) in self.moves.iter().enumerate() {
            if Direction::of(m, d) != *dir {
                return Err(Error::MoveLog(format!(
                    "move {}: direction does not match index",
                    k + 1
                )));
            }
            ws.apply_labelled(m)?;
            if every > 0 && (k + 1) % every == 0 {
                checkpoint(k + 1, &ws.to_complex())?;
            }
        }
        Ok(ws.to_complex())
    }

    pub fn replay(&self, x: &Complex) -> Result<Complex> {
        self.replay_with(x, 0, |_, _| Ok(()))
    }
}
