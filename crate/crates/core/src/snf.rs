//! Rank and invariant factors of integer matrices.
//!
//! Boundary matrices are sparse with entries `±1`, so most of the work is
//! elimination on unit pivots in machine integers. Whatever is left once no
//! unit pivot remains (or an entry would overflow) is finished by a dense
//! Smith normal form over arbitrary-precision integers.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// A sparse column: `(row, value)` pairs sorted by row, no zero values.
pub type SparseColumn = Vec<(u32, i64)>;

/// Rank and the invariant factors greater than one.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SnfSummary {
    pub rank: usize,
    /// Invariant factors `> 1`, in divisibility order.
    pub torsion: Vec<BigInt>,
}

/// Smith normal form summary of the matrix with the given columns.
pub fn smith_summary(nrows: usize, columns: Vec<SparseColumn>) -> SnfSummary {
    let mut m = SparseMatrix::new(nrows, columns);
    let rank = m.eliminate_units();
    let rest = m.into_dense();
    let mut summary = dense_smith(rest);
    summary.rank += rank;
    summary
}

struct SparseMatrix {
    cols: Vec<SparseColumn>,
    /// For each row, the columns with a nonzero entry in it.
    rows: Vec<HashSet<u32>>,
    alive: Vec<bool>,
}

impl SparseMatrix {
    fn new(nrows: usize, cols: Vec<SparseColumn>) -> Self {
        let mut rows = vec![HashSet::new(); nrows];
        for (c, col) in cols.iter().enumerate() {
            for &(r, _) in col {
                rows[r as usize].insert(c as u32);
            }
        }
        let alive = cols.iter().map(|c| !c.is_empty()).collect();
        SparseMatrix { cols, rows, alive }
    }

    /// Markowitz-cheapest unit entry `(row, col, value)`.
    fn pick_pivot(&self) -> Option<(u32, usize, i64)> {
        let mut best: Option<(usize, (u32, usize, i64))> = None;
        for (c, col) in self.cols.iter().enumerate() {
            if !self.alive[c] {
                continue;
            }
            for &(r, v) in col {
                if v.abs() != 1 {
                    continue;
                }
                let score = (col.len() - 1) * (self.rows[r as usize].len() - 1);
                if best.as_ref().is_none_or(|(s, _)| score < *s) {
                    best = Some((score, (r, c, v)));
                    if score == 0 {
                        return best.map(|b| b.1);
                    }
                }
            }
        }
        best.map(|b| b.1)
    }

    /// Eliminate unit pivots until none remain; returns how many were used.
    fn eliminate_units(&mut self) -> usize {
        let mut rank = 0;
        while let Some((r, c, p)) = self.pick_pivot() {
            let others: Vec<u32> = self.rows[r as usize]
                .iter()
                .copied()
                .filter(|&o| o as usize != c)
                .collect();
            let mut updates = Vec::with_capacity(others.len());
            for &o in &others {
                let o = o as usize;
                let a = lookup(&self.cols[o], r);
                match axpy(&self.cols[o], &self.cols[c], -a * p) {
                    Some(new) => updates.push((o, new)),
                    // Entries left the i64 range: stop here, the dense pass
                    // finishes exactly.
                    None => return rank,
                }
            }
            for (o, new) in updates {
                let old = std::mem::replace(&mut self.cols[o], new);
                for &(row, _) in &old {
                    self.rows[row as usize].remove(&(o as u32));
                }
                for &(row, _) in &self.cols[o] {
                    self.rows[row as usize].insert(o as u32);
                }
                if self.cols[o].is_empty() {
                    self.alive[o] = false;
                }
            }
            // Row r now meets only column c, so row operations clear the rest
            // of column c without touching anything else.
            for &(row, _) in &self.cols[c] {
                self.rows[row as usize].remove(&(c as u32));
            }
            self.cols[c].clear();
            self.alive[c] = false;
            rank += 1;
        }
        rank
    }

    fn into_dense(self) -> Vec<Vec<BigInt>> {
        let live_cols: Vec<&SparseColumn> = self
            .cols
            .iter()
            .zip(&self.alive)
            .filter(|(c, &a)| a && !c.is_empty())
            .map(|(c, _)| c)
            .collect();
        if live_cols.is_empty() {
            return Vec::new();
        }
        let mut row_ids: Vec<u32> = live_cols.iter().flat_map(|c| c.iter().map(|e| e.0)).collect();
        row_ids.sort_unstable();
        row_ids.dedup();
        let mut dense = vec![vec![BigInt::zero(); live_cols.len()]; row_ids.len()];
        for (j, col) in live_cols.iter().enumerate() {
            for &(r, v) in col.iter() {
                let i = row_ids.binary_search(&r).expect("row collected above");
                dense[i][j] = BigInt::from(v);
            }
        }
        dense
    }
}

fn lookup(col: &SparseColumn, r: u32) -> i64 {
    col.binary_search_by_key(&r, |e| e.0).map_or(0, |i| col[i].1)
}

/// `x + k * y` for sparse columns, or `None` on overflow.
fn axpy(x: &SparseColumn, y: &SparseColumn, k: i64) -> Option<SparseColumn> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let (r, v) = match (x.get(i), y.get(j)) {
            (Some(&(rx, vx)), Some(&(ry, vy))) if rx == ry => {
                i += 1;
                j += 1;
                (rx, vx.checked_add(vy.checked_mul(k)?)?)
            }
            (Some(&(rx, vx)), Some(&(ry, _))) if rx < ry => {
                i += 1;
                (rx, vx)
            }
            (Some(&(rx, vx)), None) => {
                i += 1;
                (rx, vx)
            }
            (_, Some(&(ry, vy))) => {
                j += 1;
                (ry, vy.checked_mul(k)?)
            }
            (None, None) => unreachable!(),
        };
        if v != 0 {
            out.push((r, v));
        }
    }
    Some(out)
}

/// Smith normal form of a dense matrix given as rows.
pub fn dense_smith(mut a: Vec<Vec<BigInt>>) -> SnfSummary {
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    let mut diagonal: Vec<BigInt> = Vec::new();
    for t in 0..m.min(n) {
        let Some((pi, pj)) = min_abs_entry(&a, t) else {
            break;
        };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut dirty = false;
            for i in t + 1..m {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                let (top, rest) = a.split_at_mut(i);
                for (x, y) in rest[0][t..].iter_mut().zip(&top[t][t..]) {
                    *x -= &q * y;
                }
                dirty |= !a[i][t].is_zero();
            }
            for j in t + 1..n {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                for row in a[t..].iter_mut() {
                    let y = row[t].clone();
                    row[j] -= &q * y;
                }
                dirty |= !a[t][j].is_zero();
            }
            if !dirty {
                break;
            }
            // A remainder survived: move the smallest entry of row/column t
            // to the pivot and repeat.
            let mut best = (t, t);
            for i in t..m {
                if !a[i][t].is_zero() && a[i][t].abs() < a[best.0][best.1].abs() {
                    best = (i, t);
                }
            }
            for j in t..n {
                if !a[t][j].is_zero() && a[t][j].abs() < a[best.0][best.1].abs() {
                    best = (t, j);
                }
            }
            a.swap(t, best.0);
            for row in a.iter_mut() {
                row.swap(t, best.1);
            }
        }
        diagonal.push(a[t][t].abs());
    }
    // Any diagonal form determines the invariant factors through gcd/lcm
    // normalization.
    for i in 0..diagonal.len() {
        for j in i + 1..diagonal.len() {
            let g = diagonal[i].gcd(&diagonal[j]);
            let l = diagonal[i].lcm(&diagonal[j]);
            diagonal[i] = g;
            diagonal[j] = l;
        }
    }
    SnfSummary {
        rank: diagonal.len(),
        torsion: diagonal.into_iter().filter(|d| !d.is_one()).collect(),
    }
}

fn min_abs_entry(a: &[Vec<BigInt>], t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for (i, row) in a.iter().enumerate().skip(t) {
        for (j, x) in row.iter().enumerate().skip(t) {
            if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < a[bi][bj].abs()) {
                best = Some((i, j));
                if x.abs().is_one() {
                    return best;
                }
            }
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dense(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    fn columns(rows: &[&[i64]]) -> (usize, Vec<SparseColumn>) {
        let n = rows.first().map_or(0, |r| r.len());
        let cols = (0..n)
            .map(|j| {
                rows.iter()
                    .enumerate()
                    .filter(|(_, r)| r[j] != 0)
                    .map(|(i, r)| (i as u32, r[j]))
                    .collect()
            })
            .collect();
        (rows.len(), cols)
    }

    fn big(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn dense_diagonal_normalizes() {
        let s = dense_smith(dense(&[&[2, 0], &[0, 3]]));
        assert_eq!(s, SnfSummary { rank: 2, torsion: big(&[6]) });
        let s = dense_smith(dense(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]));
        assert_eq!(s, SnfSummary { rank: 3, torsion: big(&[2, 6, 12]) });
    }

    #[test]
    fn sparse_and_dense_agree() {
        let rows: &[&[i64]] = &[&[1, 1, 0, 0], &[-1, 0, 1, 0], &[0, -1, -1, 2], &[0, 0, 0, 2]];
        let (nrows, cols) = columns(rows);
        assert_eq!(smith_summary(nrows, cols), dense_smith(dense(rows)));
    }

    #[test]
    fn zero_and_empty() {
        assert_eq!(smith_summary(3, vec![Vec::new(); 2]), SnfSummary::default());
        assert_eq!(dense_smith(Vec::new()), SnfSummary::default());
    }

    #[test]
    fn cycle_boundary_has_rank_n_minus_one() {
        // Boundary of a hexagon: vertices 0..6, edges (i, i+1).
        let cols = (0..6u32)
            .map(|i| {
                let j = (i + 1) % 6;
                let mut c = vec![(i, -1), (j, 1)];
                c.sort();
                c
            })
            .collect();
        assert_eq!(smith_summary(6, cols), SnfSummary { rank: 5, torsion: vec![] });
    }
}
