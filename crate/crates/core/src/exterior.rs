//! Sparse exterior-algebra elements over the cell basis: the alternating
//! diagonal form ω, its wedge powers, raising operators and
//! highest-weight-vector checks.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::cell::Cell;
use crate::error::{Error, Result};
use crate::latin::enumerate_magic_sets;
use crate::perm::permutations_with_signs;

/// A strictly increasing (lexicographic) list of distinct cells of [k]^d.
/// The ascending order fixes the sign convention of the basis vector ψ_P.
pub type BasisIndex = Vec<Cell>;

/// A sparse element of the exterior algebra ⋀^grade (C^k)^{⊗d}, written in
/// the ψ_P basis with big-integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WedgeVector {
    k: u8,
    d: usize,
    grade: usize,
    terms: BTreeMap<BasisIndex, BigInt>,
}

impl WedgeVector {
    pub fn zero(d: usize, k: u8, grade: usize) -> Self {
        WedgeVector {
            k,
            d,
            grade,
            terms: BTreeMap::new(),
        }
    }

    /// The single basis vector ψ_P with coefficient 1. Cells must be
    /// distinct; they are sorted here (without a sign — callers that care
    /// about the order of an unsorted input should use `wedge`).
    pub fn basis(d: usize, k: u8, mut cells: Vec<Cell>) -> Result<Self> {
        for c in &cells {
            if c.dim() != d || c.0.iter().any(|&x| x == 0 || x > k) {
                return Err(Error::domain(format!(
                    "cell {:?} is not a cell of [{k}]^{d}",
                    c.0
                )));
            }
        }
        cells.sort();
        if cells.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::domain("basis index has a repeated cell"));
        }
        let grade = cells.len();
        let mut terms = BTreeMap::new();
        terms.insert(cells, BigInt::one());
        Ok(WedgeVector { k, d, grade, terms })
    }

    pub fn k(&self) -> u8 {
        self.k
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn grade(&self) -> usize {
        self.grade
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BasisIndex, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, index: &BasisIndex) -> BigInt {
        self.terms.get(index).cloned().unwrap_or_else(BigInt::zero)
    }

    fn add_term(&mut self, index: BasisIndex, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(index) {
            Entry::Vacant(e) => {
                e.insert(coeff);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Sum of two vectors of the same grade and ambient algebra.
    pub fn add(&self, other: &WedgeVector) -> Result<WedgeVector> {
        if self.k != other.k || self.d != other.d || self.grade != other.grade {
            return Err(Error::shape("sum operands live in different spaces"));
        }
        let mut out = self.clone();
        for (idx, c) in &other.terms {
            out.add_term(idx.clone(), c.clone());
        }
        Ok(out)
    }

    /// Scalar multiple.
    pub fn scale(&self, c: &BigInt) -> WedgeVector {
        let mut out = WedgeVector::zero(self.d, self.k, self.grade);
        if c.is_zero() {
            return out;
        }
        for (idx, coeff) in &self.terms {
            out.terms.insert(idx.clone(), coeff * c);
        }
        out
    }

    /// Marginals s_ℓ(P, i) of a term: count of cells with coordinate ℓ
    /// equal to i, for each direction. All terms of a weight-homogeneous
    /// vector share these.
    pub fn term_marginals(&self, index: &BasisIndex) -> Vec<Vec<u32>> {
        marginals(self.d, self.k, index)
    }
}

/// Counts per (direction, value) of the cells in `index`.
pub fn marginals(d: usize, k: u8, index: &[Cell]) -> Vec<Vec<u32>> {
    let mut out = vec![vec![0u32; k as usize]; d];
    for c in index {
        for dir in 0..d {
            out[dir][c.coord(dir) as usize - 1] += 1;
        }
    }
    out
}

/// Merge two strictly increasing cell lists; returns the merged list and
/// the parity sign of the interleaving, or None if they share a cell.
fn merge_with_sign(a: &[Cell], b: &[Cell]) -> Option<(Vec<Cell>, i8)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0usize, 0usize);
    let mut transpositions = 0usize;
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i].clone());
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                // b[j] jumps over the remaining a-cells
                transpositions += a.len() - i;
                out.push(b[j].clone());
                j += 1;
            }
            std::cmp::Ordering::Equal => return None,
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend(b[j..].iter().cloned());
    Some((out, if transpositions % 2 == 0 { 1 } else { -1 }))
}

/// Bilinear wedge product. On basis terms the product is zero when the
/// index sets intersect and otherwise ±ψ_{union}, the sign counting the
/// transpositions needed to merge the two sorted lists.
pub fn wedge(v: &WedgeVector, w: &WedgeVector) -> Result<WedgeVector> {
    if v.k != w.k || v.d != w.d {
        return Err(Error::shape("wedge operands live in different algebras"));
    }
    let mut out = WedgeVector::zero(v.d, v.k, v.grade + w.grade);
    for (a, ca) in &v.terms {
        for (b, cb) in &w.terms {
            if let Some((merged, sign)) = merge_with_sign(a, b) {
                let coeff = if sign == 1 { ca * cb } else { -(ca * cb) };
                out.add_term(merged, coeff);
            }
        }
    }
    Ok(out)
}

/// The grade-k alternating diagonal form:
/// Σ_{π_2,…,π_d ∈ S_k} sgn(π_2⋯π_d) ψ_{{(i, π_2(i), …, π_d(i)) : i ∈ [k]}}.
/// Each diagonal is already sorted by its first coordinate, so no resort
/// sign appears.
pub fn omega(d: usize, k: u8) -> Result<WedgeVector> {
    if d < 2 || k == 0 {
        return Err(Error::domain("omega requires d >= 2 and k >= 1"));
    }
    let perms = permutations_with_signs(k as usize);
    let mut out = WedgeVector::zero(d, k, k as usize);
    let mut choice = vec![0usize; d - 1];
    loop {
        let mut sign = 1i8;
        for &c in &choice {
            sign *= perms[c].1;
        }
        let cells: Vec<Cell> = (1..=k)
            .map(|i| {
                let mut coords = Vec::with_capacity(d);
                coords.push(i);
                for &c in &choice {
                    coords.push(perms[c].0[i as usize - 1]);
                }
                Cell(coords)
            })
            .collect();
        out.add_term(cells, BigInt::from(sign));
        // odometer over (d-1) permutation slots
        let mut pos = 0;
        loop {
            if pos == choice.len() {
                return Ok(out);
            }
            choice[pos] += 1;
            if choice[pos] < perms.len() {
                break;
            }
            choice[pos] = 0;
            pos += 1;
        }
    }
}

/// ω^n, computed incrementally as ω^{n−1} ∧ ω with terms pruned as soon as
/// any marginal exceeds n (such terms can never complete to a uniform
/// marginal of n).
pub fn wedge_power(d: usize, k: u8, n: u32) -> Result<WedgeVector> {
    let max = (k as u64).pow(d as u32 - 1);
    if n == 0 || n as u64 > max {
        return Err(Error::domain(format!("power {n} must lie in 1..={max}")));
    }
    let base = omega(d, k)?;
    let mut acc = base.clone();
    for step in 2..=n {
        let mut next = wedge(&acc, &base)?;
        next.terms.retain(|idx, _| {
            marginals(d, k, idx)
                .iter()
                .all(|row| row.iter().all(|&c| c <= step))
        });
        acc = next;
        if acc.is_zero() {
            break;
        }
    }
    acc.grade = n as usize * k as usize;
    Ok(acc)
}

/// The raising operator E^{(direction)}_{i,i+1} (direction 1-based,
/// 1 ≤ i ≤ k−1): each cell p with p_direction = i+1 is replaced by the
/// cell p' with that coordinate lowered to i; summands where p' already
/// occurs vanish, and the re-sorted list carries the transposition sign.
pub fn raising_operator(v: &WedgeVector, direction: usize, i: u8) -> Result<WedgeVector> {
    if direction == 0 || direction > v.d {
        return Err(Error::domain(format!(
            "direction {direction} out of range 1..={}",
            v.d
        )));
    }
    if i == 0 || i + 1 > v.k {
        return Err(Error::domain(format!(
            "raising index {i} out of range 1..={}",
            v.k.saturating_sub(1)
        )));
    }
    let dir = direction - 1;
    let mut out = WedgeVector::zero(v.d, v.k, v.grade);
    for (index, coeff) in &v.terms {
        for (pos, cell) in index.iter().enumerate() {
            if cell.coord(dir) != i + 1 {
                continue;
            }
            let mut lowered = cell.clone();
            lowered.0[dir] = i;
            if index.binary_search(&lowered).is_ok() {
                continue;
            }
            let mut new_index: Vec<Cell> = index
                .iter()
                .enumerate()
                .filter(|&(q, _)| q != pos)
                .map(|(_, c)| c.clone())
                .collect();
            let insert_at = new_index
                .binary_search(&lowered)
                .expect_err("lowered cell is absent");
            new_index.insert(insert_at, lowered);
            let sign = if (pos + insert_at) % 2 == 0 { 1 } else { -1 };
            out.add_term(new_index, if sign == 1 { coeff.clone() } else { -coeff });
        }
    }
    Ok(out)
}

/// True when every raising operator annihilates `v`. A zero vector is
/// rejected as vacuous.
pub fn is_highest_weight(v: &WedgeVector) -> Result<bool> {
    if v.is_zero() {
        return Err(Error::domain("highest-weight check on the zero vector"));
    }
    for direction in 1..=v.d {
        for i in 1..v.k {
            if !raising_operator(v, direction, i)?.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Basis of the uniform-marginal weight space: all magic sets of [k]^d
/// with marginal n, in lexicographic order.
pub fn weight_space_basis(d: usize, k: u8, n: u32) -> Vec<BasisIndex> {
    enumerate_magic_sets(d, k, n)
        .into_iter()
        .map(|m| m.cells().to_vec())
        .collect()
}
