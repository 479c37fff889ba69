//! Staircase triangulation of products.
//!
//! For facets `α = a_1 < … < a_p` and `β = b_1 < … < b_q` the product of
//! simplices `α × β` is triangulated by the maximal chains of the product order
//! on `α × β`; each chain is a monotone lattice path from `(a_1, b_1)` to
//! `(a_p, b_q)`. Because the orders are global the pieces agree on shared
//! faces, so the union triangulates `|X| × |Y|`.

use super::{Complex, Face, VertexTable};
use crate::error::{Error, Result};

fn ranks<S: AsRef<str>>(x: &Complex, order: &[S]) -> Result<Vec<usize>> {
    let n = x.num_vertices();
    let mut rank = vec![usize::MAX; n];
    for (r, l) in order.iter().enumerate() {
        let l = l.as_ref();
        let id = x
            .vertices()
            .id(l)
            .ok_or_else(|| Error::BadVertexOrder(format!("unknown label `{l}`")))?;
        if rank[id as usize] != usize::MAX {
            return Err(Error::BadVertexOrder(format!("label `{l}` listed twice")));
        }
        rank[id as usize] = r;
    }
    if let Some(missing) = rank.iter().position(|&r| r == usize::MAX) {
        return Err(Error::BadVertexOrder(format!(
            "label `{}` missing",
            x.vertices().label(missing as u32)
        )));
    }
    Ok(rank)
}

/// Visits every monotone lattice path from `(0, 0)` to `(p - 1, q - 1)`.
fn lattice_paths(p: usize, q: usize, visit: &mut impl FnMut(&[(usize, usize)])) {
    fn go(
        p: usize,
        q: usize,
        path: &mut Vec<(usize, usize)>,
        visit: &mut impl FnMut(&[(usize, usize)]),
    ) {
        let (i, j) = *path.last().unwrap();
        if i + 1 == p && j + 1 == q {
            visit(path);
            return;
        }
        if i + 1 < p {
            path.push((i + 1, j));
            go(p, q, path, visit);
            path.pop();
        }
        if j + 1 < q {
            path.push((i, j + 1));
            go(p, q, path, visit);
            path.pop();
        }
    }
    let mut path = vec![(0, 0)];
    go(p, q, &mut path, visit);
}

/// Label of the product vertex `(a, b)`.
pub fn product_label(a: &str, b: &str) -> String {
    format!("{a}_{b}")
}

impl Complex {
    /// Staircase triangulation of `X × Y` with respect to total vertex orders.
    pub fn staircase_product<S: AsRef<str>, T: AsRef<str>>(
        &self,
        other: &Complex,
        order_x: &[S],
        order_y: &[T],
    ) -> Result<Complex> {
        let rx = ranks(self, order_x)?;
        let ry = ranks(other, order_y)?;
        let nx = self.num_vertices();
        let ny = other.num_vertices();
        let mut labels = Vec::with_capacity(nx * ny);
        for a in self.vertices().labels() {
            for b in other.vertices().labels() {
                labels.push(product_label(a, b));
            }
        }
        let table = VertexTable::new(labels.iter().cloned());
        let pair_id: Vec<u32> = labels.iter().map(|l| table.id(l).unwrap()).collect();
        let mut faces = Vec::new();
        for alpha in self.facets() {
            let mut a: Vec<u32> = alpha.to_vec();
            a.sort_by_key(|&v| rx[v as usize]);
            for beta in other.facets() {
                let mut b: Vec<u32> = beta.to_vec();
                b.sort_by_key(|&v| ry[v as usize]);
                lattice_paths(a.len(), b.len(), &mut |path| {
                    let mut f: Face = path
                        .iter()
                        .map(|&(i, j)| pair_id[a[i] as usize * ny + b[j] as usize])
                        .collect();
                    f.sort_unstable();
                    faces.push(f);
                });
            }
        }
        Ok(Complex::from_faces(&table, faces))
    }

    /// Staircase product using each complex's own (lexicographic) vertex order.
    pub fn staircase_product_default(&self, other: &Complex) -> Result<Complex> {
        self.staircase_product(other, self.vertices().labels(), other.vertices().labels())
    }
}
