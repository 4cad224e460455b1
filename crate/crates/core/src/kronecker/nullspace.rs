//! Exact rank/nullity of sparse integer matrices by fraction-free
//! elimination with content reduction. No floating point anywhere.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// A sparse integer matrix stored row-wise.
#[derive(Debug, Clone, Default)]
pub struct SparseIntMatrix {
    rows: Vec<BTreeMap<usize, BigInt>>,
    num_cols: usize,
}

impl SparseIntMatrix {
    pub fn new(num_cols: usize) -> Self {
        SparseIntMatrix {
            rows: Vec::new(),
            num_cols,
        }
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn num_cols(&self) -> usize {
        self.num_cols
    }

    pub fn push_row(&mut self, entries: impl IntoIterator<Item = (usize, BigInt)>) {
        let mut row = BTreeMap::new();
        for (c, v) in entries {
            assert!(c < self.num_cols, "column index out of range");
            if v.is_zero() {
                continue;
            }
            let e = row.entry(c).or_insert_with(BigInt::zero);
            *e += v;
            if e.is_zero() {
                row.remove(&c);
            }
        }
        self.rows.push(row);
    }

    /// Matrix rank over the rationals, computed by integer row elimination:
    /// each update is pivot·row − coeff·pivot_row followed by division by
    /// the row's content gcd, so entries stay integral and bounded.
    pub fn rank(mut self) -> usize {
        // per-column occupancy counts guide pivot choice (Markowitz-style)
        let mut col_count = vec![0usize; self.num_cols];
        for row in &self.rows {
            for &c in row.keys() {
                col_count[c] += 1;
            }
        }
        let mut active: Vec<usize> = (0..self.rows.len()).collect();
        let mut rank = 0usize;
        while !active.is_empty() {
            // pick the pivot minimizing (row_len − 1)·(col_count − 1)
            let mut best: Option<(usize, usize, usize)> = None; // (score, row, col)
            for &r in &active {
                let len = self.rows[r].len();
                if len == 0 {
                    continue;
                }
                for (&c, _) in &self.rows[r] {
                    let score = (len - 1) * (col_count[c] - 1);
                    if best.map_or(true, |(s, _, _)| score < s) {
                        best = Some((score, r, c));
                    }
                    if score == 0 {
                        break;
                    }
                }
                if matches!(best, Some((0, _, _))) {
                    break;
                }
            }
            let Some((_, pr, pc)) = best else {
                break; // all remaining rows are zero
            };
            rank += 1;
            let pivot_row = std::mem::take(&mut self.rows[pr]);
            for &c in pivot_row.keys() {
                col_count[c] -= 1;
            }
            active.retain(|&r| r != pr);
            let pivot = pivot_row[&pc].clone();
            for &r in &active {
                let Some(coeff) = self.rows[r].get(&pc).cloned() else {
                    continue;
                };
                let row = std::mem::take(&mut self.rows[r]);
                for &c in row.keys() {
                    col_count[c] -= 1;
                }
                let mut next: BTreeMap<usize, BigInt> = BTreeMap::new();
                for (c, v) in &row {
                    next.insert(*c, v * &pivot);
                }
                for (c, v) in &pivot_row {
                    let e = next.entry(*c).or_insert_with(BigInt::zero);
                    *e -= v * &coeff;
                    if e.is_zero() {
                        next.remove(c);
                    }
                }
                debug_assert!(!next.contains_key(&pc));
                // content reduction keeps the integers from snowballing
                let mut content = BigInt::zero();
                for v in next.values() {
                    content = content.gcd(v);
                }
                if content.abs() > BigInt::from(1) {
                    for v in next.values_mut() {
                        *v = &*v / &content;
                    }
                }
                for &c in next.keys() {
                    col_count[c] += 1;
                }
                self.rows[r] = next;
            }
        }
        rank
    }

    /// Dimension of the right kernel: num_cols − rank.
    pub fn nullity(self) -> usize {
        let cols = self.num_cols;
        cols - self.rank()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn from_dense(data: &[&[i64]]) -> SparseIntMatrix {
        let cols = data.first().map_or(0, |r| r.len());
        let mut m = SparseIntMatrix::new(cols);
        for row in data {
            m.push_row(
                row.iter()
                    .enumerate()
                    .map(|(c, &v)| (c, BigInt::from(v))),
            );
        }
        m
    }

    #[test]
    fn identity_and_zero() {
        let id = from_dense(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(id.nullity(), 0);
        let z = from_dense(&[&[0, 0, 0], &[0, 0, 0]]);
        assert_eq!(z.nullity(), 3);
    }

    #[test]
    fn dependent_rows() {
        let m = from_dense(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(m.rank(), 2);
        let m = from_dense(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(m.nullity(), 1);
    }

    #[test]
    fn rank_needs_exact_arithmetic() {
        // rows nearly parallel; floating point would misjudge
        let m = from_dense(&[
            &[1_000_000_007, 1_000_000_006],
            &[1_000_000_006, 1_000_000_005],
        ]);
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn tall_sparse_matrix() {
        let mut m = SparseIntMatrix::new(4);
        for i in 0..20 {
            m.push_row([(i % 4, BigInt::from(1)), ((i + 1) % 4, BigInt::from(-1))]);
        }
        // circulant difference rows span a 3-dimensional space
        assert_eq!(m.nullity(), 1);
    }

    #[test]
    fn duplicate_column_entries_accumulate() {
        let mut m = SparseIntMatrix::new(2);
        m.push_row([(0, BigInt::from(2)), (0, BigInt::from(-2)), (1, BigInt::from(1))]);
        assert_eq!(m.rank(), 1);
    }
}
