//! Magic sets, partial Latin hypercubes, their sign statistics and
//! signed (Alon–Tarsi) sums.
//!
//! A magic set is a subset of [k]^d meeting every axis-parallel slice in the
//! same number n of cells. A partial Latin hypercube assigns symbols of [n]
//! to the cells of a magic set so that the values in each slice, read in
//! lexicographic cell order, form a permutation of [n].

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cell::{all_cells, Cell};
use crate::error::{Error, Result};
use crate::perm::{multi_sign, sign_of_sequence};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MagicSet {
    k: u8,
    d: usize,
    /// Distinct cells in ascending lexicographic order.
    cells: Vec<Cell>,
    /// Common slice marginal.
    n: u32,
}

impl MagicSet {
    pub fn new(k: u8, d: usize, mut cells: Vec<Cell>) -> Result<Self> {
        cells.sort();
        cells.dedup();
        if cells.iter().any(|c| c.dim() != d) {
            return Err(Error::domain("cell dimension mismatch"));
        }
        for c in &cells {
            if c.0.iter().any(|&x| x == 0 || x > k) {
                return Err(Error::domain(format!(
                    "cell {:?} outside [{k}]^{d}",
                    c.0
                )));
            }
        }
        // uniform slice marginals
        let mut counts = vec![vec![0u32; k as usize]; d];
        for c in &cells {
            for dir in 0..d {
                counts[dir][c.coord(dir) as usize - 1] += 1;
            }
        }
        let n = counts[0][0];
        if counts.iter().flatten().any(|&c| c != n) {
            return Err(Error::domain(
                "not a magic set: slice marginals are not uniform",
            ));
        }
        Ok(MagicSet { k, d, cells, n })
    }

    /// The full box [k]^d.
    pub fn full_cube(d: usize, k: u8) -> Self {
        MagicSet {
            k,
            d,
            cells: all_cells(d, k),
            n: (k as u32).pow(d as u32 - 1),
        }
    }

    pub fn k(&self) -> u8 {
        self.k
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// The common slice marginal n = |cells| / k.
    pub fn marginal(&self) -> u32 {
        self.n
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// Product over directions of the multi-sign of the coordinate sequence
    /// read in lexicographic cell order.
    pub fn sign(&self) -> i8 {
        let mut s = 1i8;
        for dir in 0..self.d {
            let seq: Vec<u8> = self.cells.iter().map(|c| c.coord(dir)).collect();
            s *= multi_sign(&seq);
        }
        s
    }
}

/// A symbol assignment on a magic set; `values[i]` is the symbol in [n] at
/// `magic.cells()[i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialLatinHypercube {
    magic: MagicSet,
    values: Vec<u8>,
}

impl PartialLatinHypercube {
    pub fn new(magic: MagicSet, values: Vec<u8>) -> Result<Self> {
        if values.len() != magic.len() {
            return Err(Error::shape("one value per cell required"));
        }
        let c = PartialLatinHypercube { magic, values };
        for dir in 0..c.magic.d {
            for slice in 1..=c.magic.k {
                if sign_of_sequence(&c.slice_values(dir, slice))? == 0 {
                    return Err(Error::domain(format!(
                        "slice {slice} in direction {} is not a permutation",
                        dir + 1
                    )));
                }
            }
        }
        Ok(c)
    }

    pub fn magic_set(&self) -> &MagicSet {
        &self.magic
    }

    pub fn values(&self) -> &[u8] {
        &self.values
    }

    /// Values of the slice (1-based `slice` along 0-based `dir`) in
    /// lexicographic cell order: the C-permutation of that slice.
    fn slice_values(&self, dir: usize, slice: u8) -> Vec<u8> {
        self.magic
            .cells
            .iter()
            .zip(&self.values)
            .filter(|(c, _)| c.coord(dir) == slice)
            .map(|(_, &v)| v)
            .collect()
    }

    /// Product of C-permutation signs over the k slices of one direction
    /// (1-based).
    pub fn directional_sign(&self, direction: usize) -> Result<i8> {
        if direction == 0 || direction > self.magic.d {
            return Err(Error::domain(format!(
                "direction {direction} outside 1..={}",
                self.magic.d
            )));
        }
        let dir = direction - 1;
        let mut s = 1i8;
        for slice in 1..=self.magic.k {
            s *= sign_of_sequence(&self.slice_values(dir, slice))?;
        }
        Ok(s)
    }

    /// Product of directional signs over all directions.
    pub fn full_sign(&self) -> i8 {
        (1..=self.magic.d)
            .map(|l| self.directional_sign(l).expect("validated on construction"))
            .product()
    }

    /// Product over symbols i of sgn(π_2)⋯sgn(π_d) where the cells of value
    /// i are {(j, π_2(j), …, π_d(j))}.
    pub fn symbol_sign(&self) -> i8 {
        let n = self.magic.n as u8;
        let mut s = 1i8;
        for i in 1..=n {
            // cells of diag_i sorted by first coordinate (cells are in lex
            // order, and first coordinates within a diagonal are distinct)
            let diag: Vec<&Cell> = self
                .magic
                .cells
                .iter()
                .zip(&self.values)
                .filter(|(_, &v)| v == i)
                .map(|(c, _)| c)
                .collect();
            for dir in 1..self.magic.d {
                let pi: Vec<u8> = diag.iter().map(|c| c.coord(dir)).collect();
                s *= sign_of_sequence(&pi).expect("diagonal coordinates form a permutation");
            }
        }
        s
    }

    /// Exchange the symbols i and j everywhere. Flips the full sign by
    /// (−1)^{dk}.
    pub fn value_swap(&self, i: u8, j: u8) -> Result<PartialLatinHypercube> {
        let n = self.magic.n as u8;
        if i == j || i == 0 || j == 0 || i > n || j > n {
            return Err(Error::domain("symbols must be distinct elements of [n]"));
        }
        let values = self
            .values
            .iter()
            .map(|&v| {
                if v == i {
                    j
                } else if v == j {
                    i
                } else {
                    v
                }
            })
            .collect();
        Ok(PartialLatinHypercube {
            magic: self.magic.clone(),
            values,
        })
    }
}

/// All magic sets of [k]^d with slice marginal n, in lexicographic order of
/// their sorted cell lists. Backtracks over cells in lexicographic order
/// with per-slice capacity counters and suffix-availability pruning.
pub fn enumerate_magic_sets(d: usize, k: u8, n: u32) -> Vec<MagicSet> {
    let cells = all_cells(d, k);
    let total = n as usize * k as usize;
    // suffix_avail[idx][dir][val-1] = cells at positions >= idx in slice
    let mut suffix = vec![vec![0u32; d * k as usize]; cells.len() + 1];
    for idx in (0..cells.len()).rev() {
        let mut row = suffix[idx + 1].clone();
        for dir in 0..d {
            row[dir * k as usize + cells[idx].coord(dir) as usize - 1] += 1;
        }
        suffix[idx] = row;
    }

    let mut out = Vec::new();
    let mut counts = vec![0u32; d * k as usize];
    let mut chosen: Vec<usize> = Vec::with_capacity(total);

    fn go(
        cells: &[Cell],
        d: usize,
        k: u8,
        n: u32,
        total: usize,
        idx: usize,
        counts: &mut [u32],
        suffix: &[Vec<u32>],
        chosen: &mut Vec<usize>,
        out: &mut Vec<MagicSet>,
    ) {
        if chosen.len() == total {
            out.push(MagicSet {
                k,
                d,
                cells: chosen.iter().map(|&i| cells[i].clone()).collect(),
                n,
            });
            return;
        }
        if idx == cells.len() || chosen.len() + (cells.len() - idx) < total {
            return;
        }
        // every slice must still be completable from the remaining suffix
        for (s, &have) in counts.iter().enumerate() {
            if have + suffix[idx][s] < n {
                return;
            }
        }
        // take cells[idx]
        let mut ok = true;
        for dir in 0..d {
            let s = dir * k as usize + cells[idx].coord(dir) as usize - 1;
            if counts[s] == n {
                ok = false;
                break;
            }
        }
        if ok {
            for dir in 0..d {
                counts[dir * k as usize + cells[idx].coord(dir) as usize - 1] += 1;
            }
            chosen.push(idx);
            go(cells, d, k, n, total, idx + 1, counts, suffix, chosen, out);
            chosen.pop();
            for dir in 0..d {
                counts[dir * k as usize + cells[idx].coord(dir) as usize - 1] -= 1;
            }
        }
        // skip cells[idx]
        go(cells, d, k, n, total, idx + 1, counts, suffix, chosen, out);
    }

    go(
        &cells, d, k, n, total, 0, &mut counts, &suffix, &mut chosen, &mut out,
    );
    out
}

/// Used-symbol bitmasks per (direction, slice). Symbols are limited to 64
/// per slice, which covers every desk-scale shape (n ≤ 64).
#[derive(Clone)]
struct SliceMasks {
    k: usize,
    masks: Vec<u64>,
}

impl SliceMasks {
    fn new(d: usize, k: u8) -> Self {
        SliceMasks {
            k: k as usize,
            masks: vec![0; d * k as usize],
        }
    }

    #[inline]
    fn at(&mut self, dir: usize, slice: u8) -> &mut u64 {
        &mut self.masks[dir * self.k + slice as usize - 1]
    }
}

/// Depth-first enumeration over cells in lexicographic order, trying symbols
/// ascending. Calls `f` once per hypercube with (values, full sign).
fn dfs_latin<F: FnMut(&[u8], i8)>(t: &MagicSet, f: &mut F) {
    assert!(t.n <= 64, "symbol bitmasks support marginals up to 64");
    let mut masks = SliceMasks::new(t.d, t.k);
    let mut values = vec![0u8; t.cells.len()];
    go(t, 0, &mut masks, &mut values, 0, f);

    fn go<F: FnMut(&[u8], i8)>(
        t: &MagicSet,
        idx: usize,
        masks: &mut SliceMasks,
        values: &mut [u8],
        inv_parity: u32,
        f: &mut F,
    ) {
        if idx == t.cells.len() {
            f(values, if inv_parity % 2 == 0 { 1 } else { -1 });
            return;
        }
        let cell = &t.cells[idx];
        for v in 1..=t.n as u8 {
            let bit = 1u64 << (v - 1);
            let mut used = false;
            for dir in 0..t.d {
                if *masks.at(dir, cell.coord(dir)) & bit != 0 {
                    used = true;
                    break;
                }
            }
            if used {
                continue;
            }
            // cells within a slice are visited in lexicographic order, so
            // the new inversions in each touched C-permutation are exactly
            // the already-used symbols greater than v
            let mut new_inv = 0u32;
            for dir in 0..t.d {
                let m = *masks.at(dir, cell.coord(dir));
                new_inv += (m >> v).count_ones();
                *masks.at(dir, cell.coord(dir)) = m | bit;
            }
            values[idx] = v;
            go(t, idx + 1, masks, values, inv_parity + new_inv, f);
            for dir in 0..t.d {
                *masks.at(dir, cell.coord(dir)) &= !bit;
            }
        }
        values[idx] = 0;
    }
}

/// All partial Latin hypercubes of the given type, in lexicographic order of
/// their value sequences. Empty when the magic set has no decomposition
/// into diagonals.
pub fn enumerate_latin(t: &MagicSet) -> Vec<PartialLatinHypercube> {
    let mut out = Vec::new();
    dfs_latin(t, &mut |values, _| {
        out.push(PartialLatinHypercube {
            magic: t.clone(),
            values: values.to_vec(),
        })
    });
    out
}

/// Number of partial Latin hypercubes of the given type.
pub fn count_latin(t: &MagicSet) -> u64 {
    let mut count = 0u64;
    dfs_latin(t, &mut |_, _| count += 1);
    count
}

/// The signed sum AT_d(k, T) = Σ_C sgn(C) over all partial Latin hypercubes
/// of type T. The search tree is split at the first direction-1 slice and
/// the independent subtrees are summed in parallel.
pub fn alon_tarsi(t: &MagicSet) -> BigInt {
    let split = t.n as usize; // cells of the first direction-1 slice
    let prefixes = split_prefixes(t, split);
    prefixes
        .par_iter()
        .map(|p| alon_tarsi_from_prefix(t, p))
        .sum()
}

/// The signed sum AT_d(k) over full Latin hypercubes of [k]^d.
pub fn alon_tarsi_full(d: usize, k: u8) -> BigInt {
    alon_tarsi(&MagicSet::full_cube(d, k))
}

/// All valid symbol assignments of the first `depth` cells, for checkpointed
/// or parallel resumption via [`alon_tarsi_from_prefix`].
pub fn split_prefixes(t: &MagicSet, depth: usize) -> Vec<Vec<u8>> {
    let depth = depth.min(t.cells.len());
    let shallow = MagicSet {
        k: t.k,
        d: t.d,
        cells: t.cells.clone(),
        n: t.n,
    };
    let mut out = Vec::new();
    // run the DFS but cut it off at `depth`
    assert!(t.n <= 64);
    let mut masks = SliceMasks::new(t.d, t.k);
    let mut values = vec![0u8; depth];
    cut(&shallow, 0, depth, &mut masks, &mut values, &mut out);
    return out;

    fn cut(
        t: &MagicSet,
        idx: usize,
        depth: usize,
        masks: &mut SliceMasks,
        values: &mut [u8],
        out: &mut Vec<Vec<u8>>,
    ) {
        if idx == depth {
            out.push(values.to_vec());
            return;
        }
        let cell = &t.cells[idx];
        'symbols: for v in 1..=t.n as u8 {
            let bit = 1u64 << (v - 1);
            for dir in 0..t.d {
                if *masks.at(dir, cell.coord(dir)) & bit != 0 {
                    continue 'symbols;
                }
            }
            for dir in 0..t.d {
                *masks.at(dir, cell.coord(dir)) |= bit;
            }
            values[idx] = v;
            cut(t, idx + 1, depth, masks, values, out);
            for dir in 0..t.d {
                *masks.at(dir, cell.coord(dir)) &= !bit;
            }
        }
    }
}

/// Signed sum over all completions of a fixed prefix of symbol assignments
/// (as produced by [`split_prefixes`]).
pub fn alon_tarsi_from_prefix(t: &MagicSet, prefix: &[u8]) -> BigInt {
    assert!(t.n <= 64);
    let mut masks = SliceMasks::new(t.d, t.k);
    let mut parity = 0u32;
    for (idx, &v) in prefix.iter().enumerate() {
        let bit = 1u64 << (v - 1);
        let cell = &t.cells[idx];
        for dir in 0..t.d {
            let m = *masks.at(dir, cell.coord(dir));
            assert_eq!(m & bit, 0, "invalid prefix");
            parity += (m >> v).count_ones();
            *masks.at(dir, cell.coord(dir)) = m | bit;
        }
    }
    let mut values = vec![0u8; t.cells.len()];
    values[..prefix.len()].copy_from_slice(prefix);
    let mut plus = 0u64;
    let mut minus = 0u64;
    complete(
        t,
        prefix.len(),
        &mut masks,
        &mut values,
        parity,
        &mut plus,
        &mut minus,
    );
    return BigInt::from(plus) - BigInt::from(minus);

    fn complete(
        t: &MagicSet,
        idx: usize,
        masks: &mut SliceMasks,
        values: &mut [u8],
        parity: u32,
        plus: &mut u64,
        minus: &mut u64,
    ) {
        if idx == t.cells.len() {
            if parity % 2 == 0 {
                *plus += 1;
            } else {
                *minus += 1;
            }
            return;
        }
        let cell = &t.cells[idx];
        'symbols: for v in 1..=t.n as u8 {
            let bit = 1u64 << (v - 1);
            for dir in 0..t.d {
                if *masks.at(dir, cell.coord(dir)) & bit != 0 {
                    continue 'symbols;
                }
            }
            let mut new_inv = 0u32;
            for dir in 0..t.d {
                let m = *masks.at(dir, cell.coord(dir));
                new_inv += (m >> v).count_ones();
                *masks.at(dir, cell.coord(dir)) = m | bit;
            }
            values[idx] = v;
            complete(t, idx + 1, masks, values, parity + new_inv, plus, minus);
            for dir in 0..t.d {
                *masks.at(dir, cell.coord(dir)) &= !bit;
            }
        }
    }
}

#[derive(Serialize, Deserialize)]
struct MagicSetRepr {
    k: u8,
    d: usize,
    cells: Vec<Vec<u8>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    values: Option<Vec<u8>>,
}

impl Serialize for MagicSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MagicSetRepr {
            k: self.k,
            d: self.d,
            cells: self.cells.iter().map(|c| c.0.clone()).collect(),
            values: None,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for MagicSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = MagicSetRepr::deserialize(d)?;
        MagicSet::new(repr.k, repr.d, repr.cells.into_iter().map(Cell).collect())
            .map_err(|e| serde::de::Error::custom(e.to_string()))
    }
}

impl Serialize for PartialLatinHypercube {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MagicSetRepr {
            k: self.magic.k,
            d: self.magic.d,
            cells: self.magic.cells.iter().map(|c| c.0.clone()).collect(),
            values: Some(self.values.clone()),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for PartialLatinHypercube {
    fn deserialize<D: serde::Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Self, D::Error> {
        let repr = MagicSetRepr::deserialize(d)?;
        let values = repr
            .values
            .ok_or_else(|| serde::de::Error::custom("missing values"))?;
        let magic = MagicSet::new(repr.k, repr.d, repr.cells.into_iter().map(Cell).collect())
            .map_err(|e| serde::de::Error::custom(e.to_string()))?;
        PartialLatinHypercube::new(magic, values)
            .map_err(|e| serde::de::Error::custom(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// The 3×3×3 partial Latin cube with three symbols placed on a magic
    /// set of marginal 1 per symbol triple (cardinality 9).
    fn reference_partial_cube() -> PartialLatinHypercube {
        let entries: [([u8; 3], u8); 9] = [
            ([1, 3, 3], 1),
            ([2, 1, 2], 1),
            ([3, 2, 1], 1),
            ([1, 1, 3], 2),
            ([2, 2, 2], 2),
            ([3, 3, 1], 2),
            ([1, 1, 1], 3),
            ([2, 2, 3], 3),
            ([3, 3, 2], 3),
        ];
        let mut pairs: Vec<(Cell, u8)> = entries
            .iter()
            .map(|(c, v)| (Cell(c.to_vec()), *v))
            .collect();
        pairs.sort();
        let cells: Vec<Cell> = pairs.iter().map(|(c, _)| c.clone()).collect();
        let values: Vec<u8> = pairs.iter().map(|(_, v)| *v).collect();
        PartialLatinHypercube::new(MagicSet::new(3, 3, cells).unwrap(), values).unwrap()
    }

    /// The order-3 full Latin cube given by direction-1 slices
    /// (rows = i2, columns = i3).
    fn reference_full_cube() -> PartialLatinHypercube {
        let slices: [[[u8; 3]; 3]; 3] = [
            [[3, 4, 2], [5, 6, 7], [9, 8, 1]],
            [[6, 1, 9], [8, 2, 3], [4, 7, 5]],
            [[7, 5, 8], [1, 9, 4], [2, 3, 6]],
        ];
        let magic = MagicSet::full_cube(3, 3);
        let values = magic
            .cells()
            .iter()
            .map(|c| slices[c.0[0] as usize - 1][c.0[1] as usize - 1][c.0[2] as usize - 1])
            .collect();
        PartialLatinHypercube::new(magic, values).unwrap()
    }

    #[test]
    fn partial_cube_signs() {
        let c = reference_partial_cube();
        assert_eq!(c.directional_sign(1).unwrap(), -1);
        assert_eq!(c.directional_sign(2).unwrap(), -1);
        // direction 3 has C-permutations (3,1,2), (1,2,3), (2,1,3) whose
        // sign product is -1; this is forced by the sign relation
        // sgn_2 sgn_3 ssgn = sgn(type) since the type sign here is -1
        assert_eq!(c.directional_sign(3).unwrap(), -1);
        assert_eq!(c.full_sign(), -1);
        assert_eq!(c.symbol_sign(), -1);
        assert_eq!(c.magic_set().sign(), -1);
    }

    #[test]
    fn full_cube_signs() {
        let c = reference_full_cube();
        assert_eq!(c.directional_sign(1).unwrap(), -1);
        assert_eq!(c.directional_sign(2).unwrap(), -1);
        assert_eq!(c.directional_sign(3).unwrap(), 1);
        assert_eq!(c.full_sign(), 1);
        assert_eq!(c.symbol_sign(), 1);
    }

    #[test]
    fn magic_set_counts() {
        assert_eq!(enumerate_magic_sets(3, 2, 1).len(), 4);
        assert_eq!(enumerate_magic_sets(3, 2, 4).len(), 1);
        assert_eq!(enumerate_magic_sets(2, 3, 1).len(), 6);
        assert_eq!(enumerate_magic_sets(3, 2, 0).len(), 1);
    }

    #[test]
    fn magic_set_signs() {
        assert_eq!(MagicSet::full_cube(3, 3).sign(), -1);
        assert_eq!(MagicSet::full_cube(3, 2).sign(), 1);
        // single diagonal in identity position: all coordinate sequences sorted
        let diag = MagicSet::new(3, 3, (1..=3).map(|i| Cell(vec![i, i, i])).collect()).unwrap();
        assert_eq!(diag.sign(), 1);
    }

    #[test]
    fn undecomposable_magic_set_has_no_hypercubes() {
        let cells = [
            [1, 1, 2],
            [1, 1, 3],
            [1, 2, 3],
            [2, 1, 2],
            [2, 2, 3],
            [2, 3, 1],
            [3, 2, 1],
            [3, 3, 1],
            [3, 3, 2],
        ];
        let t = MagicSet::new(3, 3, cells.iter().map(|c| Cell(c.to_vec())).collect()).unwrap();
        assert_eq!(t.marginal(), 3);
        assert!(enumerate_latin(&t).is_empty());
        assert_eq!(alon_tarsi(&t), BigInt::from(0));
    }

    #[test]
    fn single_diagonal_unique_hypercube() {
        let diag = MagicSet::new(3, 3, (1..=3).map(|i| Cell(vec![i, i, i])).collect()).unwrap();
        let cs = enumerate_latin(&diag);
        assert_eq!(cs.len(), 1);
        assert_eq!(cs[0].values(), &[1, 1, 1]);
        assert_eq!(cs[0].full_sign(), 1);
        for l in 1..=3 {
            assert_eq!(cs[0].directional_sign(l).unwrap(), 1);
        }
    }

    #[test]
    fn classic_alon_tarsi_numbers() {
        // order-2 Latin squares
        assert_eq!(alon_tarsi_full(2, 2), BigInt::from(2));
        // odd k vanishes
        assert_eq!(alon_tarsi_full(2, 3), BigInt::from(0));
    }

    #[test]
    fn order_two_cubes_all_positive() {
        let t = MagicSet::full_cube(3, 2);
        let cs = enumerate_latin(&t);
        assert!(!cs.is_empty());
        for c in &cs {
            assert_eq!(c.full_sign(), 1);
        }
        assert_eq!(alon_tarsi(&t), BigInt::from(cs.len()));
    }

    #[test]
    fn incremental_sign_matches_direct() {
        // DFS sign bookkeeping agrees with the definition on every
        // hypercube over a few magic sets
        for t in enumerate_magic_sets(3, 2, 2) {
            let mut seen = Vec::new();
            dfs_latin(&t, &mut |values, sign| seen.push((values.to_vec(), sign)));
            for (values, sign) in seen {
                let c = PartialLatinHypercube::new(t.clone(), values).unwrap();
                assert_eq!(c.full_sign(), sign);
            }
        }
    }

    #[test]
    fn value_swap_sign_law() {
        let c = reference_partial_cube();
        let swapped = c.value_swap(1, 2).unwrap();
        // d = k = 3, so dk is odd and the sign flips
        assert_eq!(swapped.full_sign(), -c.full_sign());
        assert_eq!(swapped.value_swap(1, 2).unwrap(), c);
    }

    #[test]
    fn prefix_split_is_a_partition_of_the_sum() {
        let t = MagicSet::full_cube(3, 2);
        let whole = alon_tarsi(&t);
        let prefixes = split_prefixes(&t, 3);
        let split: BigInt = prefixes
            .iter()
            .map(|p| alon_tarsi_from_prefix(&t, p))
            .sum();
        assert_eq!(whole, split);
    }

    #[test]
    fn json_round_trip() {
        let t = MagicSet::full_cube(2, 2);
        let s = serde_json::to_string(&t).unwrap();
        assert_eq!(s, r#"{"k":2,"d":2,"cells":[[1,1],[1,2],[2,1],[2,2]]}"#);
        let back: MagicSet = serde_json::from_str(&s).unwrap();
        assert_eq!(back, t);

        let c = PartialLatinHypercube::new(t, vec![1, 2, 2, 1]).unwrap();
        let s = serde_json::to_string(&c).unwrap();
        let back: PartialLatinHypercube = serde_json::from_str(&s).unwrap();
        assert_eq!(back, c);
    }
}
