//! Seeded reduction of the f-vector by bistellar moves.
//!
//! The search alternates greedy descents with random excursions. A descent
//! applies reducing moves (`2i > d`) of the highest available level, chosen
//! uniformly, until none is legal. An excursion then applies `L` random
//! non-reducing moves with `1 <= i <= d/2`; `L` starts at
//! [`SearchConfig::excursion_start`], grows by [`SearchConfig::excursion_growth`]
//! after every descent that fails to beat the best f-vector and is capped at
//! [`SearchConfig::excursion_cap`]. The best complex seen (lexicographically
//! smallest f-vector, earliest on ties) is returned together with the log
//! leading to it.

use std::time::{Duration, Instant};

use serde::Serialize;

use super::rng::SplitMix64;
use super::workspace::{IdMove, Workspace};
use super::{Direction, MoveLog};
use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::homology::{homology, Ring};

#[derive(Clone, Debug)]
pub struct SearchConfig {
    pub seed: u64,
    pub max_moves: Option<u64>,
    pub max_seconds: Option<f64>,
    /// Stop as soon as the vertex count is at most this.
    pub target_vertices: Option<usize>,
    pub excursion_start: f64,
    pub excursion_growth: f64,
    pub excursion_cap: usize,
    /// Recompute GF(2) homology every this many applied moves and fail if it
    /// changes.
    pub homology_checkpoint: Option<u64>,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            seed: 0,
            max_moves: None,
            max_seconds: None,
            target_vertices: None,
            excursion_start: 1.0,
            excursion_growth: 1.5,
            excursion_cap: 500,
            homology_checkpoint: None,
        }
    }
}

impl SearchConfig {
    pub fn with_seed(seed: u64) -> Self {
        SearchConfig {
            seed,
            ..Default::default()
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchStatus {
    /// The target vertex count was reached.
    Target,
    /// A move or time budget ran out first.
    Budget,
}

#[derive(Clone, Debug)]
pub struct SearchOutcome {
    pub complex: Complex,
    /// Moves from the input to [`SearchOutcome::complex`].
    pub log: MoveLog,
    pub status: SearchStatus,
    /// All moves applied, including those of abandoned excursions.
    pub moves_applied: u64,
    pub checkpoints: u64,
    pub f_vector: Vec<usize>,
}

struct Run<'a> {
    ws: Workspace,
    cfg: &'a SearchConfig,
    started: Instant,
    applied: u64,
    path: Vec<IdMove>,
    best: Vec<usize>,
    best_len: usize,
    reference: Option<Vec<usize>>,
    checkpoints: u64,
}

impl Run<'_> {
    fn out_of_budget(&self) -> bool {
        self.cfg.max_moves.is_some_and(|m| self.applied >= m)
            || self
                .cfg
                .max_seconds
                .is_some_and(|s| self.started.elapsed() >= Duration::from_secs_f64(s))
    }

    fn at_target(&self) -> bool {
        self.cfg.target_vertices.is_some_and(|t| self.best[0] <= t)
    }

    fn step(&mut self, m: IdMove) -> Result<()> {
        self.ws.apply(&m);
        self.path.push(m);
        self.applied += 1;
        if self.ws.f_vector() < self.best.as_slice() {
            self.best = self.ws.f_vector().to_vec();
            self.best_len = self.path.len();
        }
        if let (Some(every), Some(reference)) = (self.cfg.homology_checkpoint, &self.reference) {
            if self.applied.is_multiple_of(every) {
                self.checkpoints += 1;
                let h = homology(&self.ws.to_complex(), Ring::Gf2)?;
                if &h.betti != reference {
                    return Err(Error::Invariant(format!(
                        "GF(2) homology changed after {} moves",
                        self.applied
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Runs the search; see the module documentation for the schedule.
pub fn reduce_search(x: &Complex, cfg: &SearchConfig) -> Result<SearchOutcome> {
    if !x.pseudomanifold_check().is_closed_pseudomanifold() {
        return Err(Error::NotClosedPseudomanifold);
    }
    let ws = Workspace::new(x)?;
    let d = ws.dim();
    let reference = match cfg.homology_checkpoint {
        Some(_) => Some(homology(x, Ring::Gf2)?.betti),
        None => None,
    };
    let mut run = Run {
        best: ws.f_vector().to_vec(),
        ws,
        cfg,
        started: Instant::now(),
        applied: 0,
        path: Vec::new(),
        best_len: 0,
        reference,
        checkpoints: 0,
    };
    let mut rng = SplitMix64::new(cfg.seed);
    let mut excursion = cfg.excursion_start;
    let mut last_best = run.best.clone();
    let status = 'outer: loop {
        if run.at_target() {
            break SearchStatus::Target;
        }
        if run.out_of_budget() {
            break SearchStatus::Budget;
        }
        if let Some(m) = run.ws.pick_reducing(&mut rng) {
            run.step(m)?;
            continue;
        }
        // local minimum: adapt the excursion length, then wander
        if run.best < last_best {
            last_best = run.best.clone();
            excursion = cfg.excursion_start;
        } else {
            excursion = (excursion * cfg.excursion_growth).min(cfg.excursion_cap as f64);
        }
        for _ in 0..(excursion.round() as usize).max(1) {
            if run.out_of_budget() {
                break 'outer SearchStatus::Budget;
            }
            let m = run.ws.pick_excursion(&mut rng);
            run.step(m)?;
        }
    };

    // rebuild the best complex by replaying the path prefix
    let mut ws = Workspace::new(x)?;
    let mut log = MoveLog::new(x);
    for m in &run.path[..run.best_len] {
        let lm = ws.labelled(m);
        ws.apply(m);
        log.moves.push((lm.clone(), Direction::of(&lm, d)));
    }
    let complex = ws.to_complex();
    Ok(SearchOutcome {
        f_vector: complex.f_vector().counts,
        complex,
        log,
        status,
        moves_applied: run.applied,
        checkpoints: run.checkpoints,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::StandardKind;

    #[test]
    fn subdivided_triangle_boundary_reduces() {
        let x = Complex::standard(StandardKind::Sphere, 2)
            .unwrap()
            .barycentric_subdivision();
        let cfg = SearchConfig {
            target_vertices: Some(4),
            max_moves: Some(20_000),
            ..SearchConfig::with_seed(3)
        };
        let out = reduce_search(&x, &cfg).unwrap();
        assert_eq!(out.status, SearchStatus::Target);
        assert_eq!(out.f_vector, vec![4, 6, 4]);
        assert_eq!(out.log.replay(&x).unwrap(), out.complex);
        let again = reduce_search(&x, &cfg).unwrap();
        assert_eq!(again.log, out.log);
    }

    #[test]
    fn budget_is_not_an_error() {
        let x = Complex::standard(StandardKind::Sphere, 3)
            .unwrap()
            .barycentric_subdivision();
        let cfg = SearchConfig {
            max_moves: Some(3),
            ..SearchConfig::with_seed(1)
        };
        let out = reduce_search(&x, &cfg).unwrap();
        assert_eq!(out.status, SearchStatus::Budget);
        assert!(out.moves_applied <= 3);
    }
}
