//! Balanced tables and their set-partition form.
//!
//! A balanced table is a d×M grid whose row i contains every value of
//! [M/n_i] exactly n_i times. Tables are equivalent when they induce the
//! same tuple of row set-partitions; `canonicalize` picks a representative
//! that is also invariant under column permutation.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BalancedTable {
    /// Shape (n_1, …, n_d) of the tensors the table's invariant acts on.
    pub shape: Vec<u32>,
    /// Grid entries, 1-based; rows[i][j] is the value in row i+1, column j+1.
    pub rows: Vec<Vec<u8>>,
}

/// For each row, a set partition of [M]: blocks of ascending 1-based column
/// indices, blocks ordered by their least element. This ordering makes the
/// tuple invariant under relabeling block values within a row.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SetPartitionTuple(pub Vec<Vec<Vec<u32>>>);

impl BalancedTable {
    pub fn new(shape: Vec<u32>, rows: Vec<Vec<u8>>) -> Result<Self> {
        let t = BalancedTable { shape, rows };
        t.validate_balanced()?;
        Ok(t)
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    /// Number of columns M (the degree of the invariant).
    pub fn num_cols(&self) -> usize {
        self.rows.first().map_or(0, |r| r.len())
    }

    /// Number of blocks k_i = M/n_i in row i (0-based).
    pub fn blocks_in_row(&self, i: usize) -> usize {
        self.num_cols() / self.shape[i] as usize
    }

    /// Column j (0-based) read top to bottom.
    pub fn column(&self, j: usize) -> Vec<u8> {
        self.rows.iter().map(|r| r[j]).collect()
    }

    pub fn columns(&self) -> Vec<Vec<u8>> {
        (0..self.num_cols()).map(|j| self.column(j)).collect()
    }

    pub fn is_balanced(&self) -> bool {
        self.validate_balanced().is_ok()
    }

    pub fn validate_balanced(&self) -> Result<()> {
        let d = self.rows.len();
        if d == 0 || d != self.shape.len() {
            return Err(Error::shape(format!(
                "{} rows but shape has {} components",
                d,
                self.shape.len()
            )));
        }
        let m = self.rows[0].len();
        for (i, row) in self.rows.iter().enumerate() {
            if row.len() != m {
                return Err(Error::shape(format!(
                    "row {} has {} entries, expected {m}",
                    i + 1,
                    row.len()
                )));
            }
            let n = self.shape[i] as usize;
            if n == 0 {
                return Err(Error::domain("shape components must be positive"));
            }
            if m % n != 0 {
                return Err(Error::domain(format!(
                    "column count {m} is not divisible by n_{} = {n}",
                    i + 1
                )));
            }
            let k = m / n;
            let mut counts = vec![0usize; k];
            for &v in row {
                if v == 0 || v as usize > k {
                    return Err(Error::domain(format!(
                        "row {} entry {v} outside 1..={k}",
                        i + 1
                    )));
                }
                counts[v as usize - 1] += 1;
            }
            if counts.iter().any(|&c| c != n) {
                return Err(Error::domain(format!(
                    "row {} is not balanced: some value of 1..={k} does not appear exactly {n} times",
                    i + 1
                )));
            }
        }
        Ok(())
    }

    pub fn has_duplicate_columns(&self) -> bool {
        let mut cols = self.columns();
        cols.sort();
        cols.windows(2).any(|w| w[0] == w[1])
    }

    /// The tuple of row set-partitions: column j goes to the block of its
    /// value in each row.
    pub fn to_set_partitions(&self) -> SetPartitionTuple {
        let mut out = Vec::with_capacity(self.rows.len());
        for (i, row) in self.rows.iter().enumerate() {
            let k = self.blocks_in_row(i);
            let mut blocks: Vec<Vec<u32>> = vec![Vec::new(); k];
            for (j, &v) in row.iter().enumerate() {
                blocks[v as usize - 1].push(j as u32 + 1);
            }
            blocks.sort_by_key(|b| b[0]);
            out.push(blocks);
        }
        SetPartitionTuple(out)
    }

    /// Horizontal concatenation: columns of `other` appended, with its row-i
    /// values shifted by self's block count M_1/n_i.
    pub fn hconcat(&self, other: &BalancedTable) -> Result<BalancedTable> {
        if self.shape != other.shape {
            return Err(Error::shape(format!(
                "cannot concatenate tables of shapes {:?} and {:?}",
                self.shape, other.shape
            )));
        }
        if self.num_cols() == 0 {
            return Ok(other.clone());
        }
        if other.num_cols() == 0 {
            return Ok(self.clone());
        }
        let mut rows = Vec::with_capacity(self.rows.len());
        for i in 0..self.rows.len() {
            let shift = self.blocks_in_row(i) as u8;
            let mut row = self.rows[i].clone();
            row.extend(other.rows[i].iter().map(|&v| v + shift));
            rows.push(row);
        }
        BalancedTable::new(self.shape.clone(), rows)
    }

    /// Vertical concatenation: rows of `other` stacked under self's.
    pub fn vconcat(&self, other: &BalancedTable) -> Result<BalancedTable> {
        if self.num_cols() != other.num_cols() {
            return Err(Error::shape(format!(
                "cannot stack tables with {} and {} columns",
                self.num_cols(),
                other.num_cols()
            )));
        }
        let mut shape = self.shape.clone();
        shape.extend_from_slice(&other.shape);
        let mut rows = self.rows.clone();
        rows.extend_from_slice(&other.rows);
        BalancedTable::new(shape, rows)
    }

    /// Swap columns i and j (0-based), returning the new table.
    pub fn with_columns_swapped(&self, i: usize, j: usize) -> BalancedTable {
        let mut rows = self.rows.clone();
        for row in &mut rows {
            row.swap(i, j);
        }
        BalancedTable {
            shape: self.shape.clone(),
            rows,
        }
    }

    /// Canonical representative of the equivalence class under row-value
    /// relabeling and column permutation: the lexicographically least
    /// column sequence over all column orders, with block values renamed by
    /// first occurrence. Found by backtracking because a single
    /// relabel-then-sort pass is order-dependent when relabeled columns tie.
    pub fn canonicalize(&self) -> BalancedTable {
        let d = self.rows.len();
        let m = self.num_cols();
        let cols = self.columns();
        let ks: Vec<usize> = (0..d).map(|i| self.blocks_in_row(i)).collect();

        struct Search<'a> {
            cols: &'a [Vec<u8>],
            d: usize,
            m: usize,
            best: Option<Vec<Vec<u8>>>,
        }

        impl Search<'_> {
            fn go(
                &mut self,
                used: &mut Vec<bool>,
                maps: &mut Vec<Vec<u8>>, // maps[i][v-1] = new label or 0
                next: &mut Vec<u8>,
                chosen: &mut Vec<Vec<u8>>,
            ) {
                if chosen.len() == self.m {
                    if self.best.as_ref().map_or(true, |b| &**chosen < b.as_slice()) {
                        self.best = Some(chosen.clone());
                    }
                    return;
                }
                // relabeled image of each unused column under the current maps
                let mut min_img: Option<Vec<u8>> = None;
                let mut picks: Vec<(usize, Vec<u8>)> = Vec::new();
                let mut seen_orig: Vec<&Vec<u8>> = Vec::new();
                for (c, col) in self.cols.iter().enumerate() {
                    if used[c] || seen_orig.contains(&col) {
                        continue;
                    }
                    seen_orig.push(col);
                    let img: Vec<u8> = (0..self.d)
                        .map(|i| {
                            let v = col[i] as usize - 1;
                            if maps[i][v] != 0 {
                                maps[i][v]
                            } else {
                                next[i]
                            }
                        })
                        .collect();
                    match &min_img {
                        Some(cur) if img > *cur => {}
                        Some(cur) if img == *cur => picks.push((c, img)),
                        _ => {
                            min_img = Some(img.clone());
                            picks.clear();
                            picks.push((c, img));
                        }
                    }
                }
                for (c, img) in picks {
                    used[c] = true;
                    let mut undo = Vec::new();
                    for i in 0..self.d {
                        let v = self.cols[c][i] as usize - 1;
                        if maps[i][v] == 0 {
                            maps[i][v] = next[i];
                            next[i] += 1;
                            undo.push(i);
                        }
                    }
                    chosen.push(img);
                    self.go(used, maps, next, chosen);
                    chosen.pop();
                    for &i in &undo {
                        let v = self.cols[c][i] as usize - 1;
                        maps[i][v] = 0;
                        next[i] -= 1;
                    }
                    used[c] = false;
                }
            }
        }

        let mut search = Search {
            cols: &cols,
            d,
            m,
            best: None,
        };
        search.go(
            &mut vec![false; m],
            &mut ks.iter().map(|&k| vec![0u8; k]).collect(),
            &mut vec![1u8; d],
            &mut Vec::with_capacity(m),
        );

        let best = search.best.unwrap_or_default();
        let rows = (0..d)
            .map(|i| best.iter().map(|col| col[i]).collect())
            .collect();
        BalancedTable {
            shape: self.shape.clone(),
            rows,
        }
    }
}

/// The d×n all-ones table of shape (n, …, n).
pub fn all_ones_table(d: usize, n: u32) -> BalancedTable {
    BalancedTable {
        shape: vec![n; d],
        rows: vec![vec![1u8; n as usize]; d],
    }
}
