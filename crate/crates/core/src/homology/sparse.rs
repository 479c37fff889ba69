//! Sparse elimination with unit pivots.
//!
//! Columns are taken fewest-entries first and, within a column, the shortest
//! row holding a unit is the pivot. Over a field this finds the rank outright.
//! Over the integers each unit pivot contributes an invariant factor 1 and the
//! rows left once no column has a unit are handed to the dense Smith form.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use num_bigint::BigInt;

use crate::scalar::EliminationScalar;

pub type SparseRow<S> = Vec<(u32, S)>;

/// Row-major sparse matrix; each row sorted by column with no zero entries.
#[derive(Clone, Debug)]
pub struct SparseMatrix<S> {
    pub rows: Vec<SparseRow<S>>,
    pub ncols: usize,
}

/// Signals that an entry left the scalar's representable range.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Overflowed;

#[derive(Debug, Clone)]
pub struct Reduction {
    pub unit_pivots: usize,
    /// Rows that survived elimination, as integers. Empty over fields.
    pub residual: Vec<Vec<(u32, BigInt)>>,
}

fn entry<S>(row: &[(u32, S)], c: u32) -> Option<&S> {
    row.binary_search_by_key(&c, |e| e.0)
        .ok()
        .map(|i| &row[i].1)
}

fn detach(list: &mut Vec<u32>, r: u32) {
    if let Some(i) = list.iter().position(|&x| x == r) {
        list.swap_remove(i);
    }
}

pub fn eliminate<S: EliminationScalar>(m: SparseMatrix<S>) -> Result<Reduction, Overflowed> {
    let SparseMatrix { mut rows, ncols } = m;
    let mut col_rows: Vec<Vec<u32>> = vec![Vec::new(); ncols];
    for (r, row) in rows.iter().enumerate() {
        for &(c, _) in row {
            col_rows[c as usize].push(r as u32);
        }
    }
    let mut heap: BinaryHeap<Reverse<(usize, u32)>> = col_rows
        .iter()
        .enumerate()
        .filter(|(_, l)| !l.is_empty())
        .map(|(c, l)| Reverse((l.len(), c as u32)))
        .collect();
    let mut done = vec![false; ncols];
    let mut pivots = 0;

    while let Some(Reverse((count, c))) = heap.pop() {
        let cu = c as usize;
        if done[cu] || col_rows[cu].len() != count {
            continue;
        }
        let mut best: Option<(usize, u32)> = None;
        for &r in &col_rows[cu] {
            let row = &rows[r as usize];
            if entry(row, c).is_some_and(S::is_unit) {
                let key = (row.len(), r);
                if best.is_none_or(|b| key < b) {
                    best = Some(key);
                }
            }
        }
        // no unit yet; revisited if a later pivot touches this column
        let Some((_, p)) = best else { continue };
        done[cu] = true;
        pivots += 1;
        let prow = std::mem::take(&mut rows[p as usize]);
        for &(cc, _) in &prow {
            detach(&mut col_rows[cc as usize], p);
        }
        let inv = entry(&prow, c).expect("pivot entry").unit_inverse();
        for q in std::mem::take(&mut col_rows[cu]) {
            let old = std::mem::take(&mut rows[q as usize]);
            let f = entry(&old, c)
                .expect("column entry")
                .mul_bounded(&inv)
                .ok_or(Overflowed)?;
            let mut merged = Vec::with_capacity(old.len() + prow.len());
            let (mut i, mut j) = (0, 0);
            while i < old.len() || j < prow.len() {
                let ci = old.get(i).map_or(u32::MAX, |e| e.0);
                let cj = prow.get(j).map_or(u32::MAX, |e| e.0);
                if ci < cj {
                    merged.push(old[i].clone());
                    i += 1;
                } else if cj < ci {
                    let v = S::zero().sub_mul(&f, &prow[j].1).ok_or(Overflowed)?;
                    col_rows[cj as usize].push(q);
                    merged.push((cj, v));
                    j += 1;
                } else {
                    let v = old[i].1.sub_mul(&f, &prow[j].1).ok_or(Overflowed)?;
                    if v.is_zero() {
                        if ci != c {
                            detach(&mut col_rows[ci as usize], q);
                        }
                    } else {
                        merged.push((ci, v));
                    }
                    i += 1;
                    j += 1;
                }
            }
            rows[q as usize] = merged;
        }
        for &(cc, _) in &prow {
            if !done[cc as usize] {
                heap.push(Reverse((col_rows[cc as usize].len(), cc)));
            }
        }
    }

    let residual = rows
        .into_iter()
        .filter(|r| !r.is_empty())
        .map(|r| {
            r.into_iter()
                .map(|(c, v)| {
                    (
                        c,
                        v.to_bigint().expect("non-unit entries only arise over Z"),
                    )
                })
                .collect()
        })
        .collect();
    Ok(Reduction {
        unit_pivots: pivots,
        residual,
    })
}
