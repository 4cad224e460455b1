//! Evaluation and algebra of the invariant polynomials indexed by balanced
//! tables, plus the standard table constructions (fundamental tables,
//! square and power tables).

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::cell::{all_cells, Cell};
use crate::error::{Error, Result};
use crate::hypermatrix::Hypermatrix;
use crate::latin::{alon_tarsi, MagicSet};
use crate::perm::{permutations_with_signs, sign_of_sequence};
use crate::scalar::ExactScalar;
use crate::table::BalancedTable;

/// An invariant together with its canonical index table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeltaInvariant {
    table: BalancedTable,
}

impl DeltaInvariant {
    pub fn new(table: &BalancedTable) -> Result<Self> {
        table.validate_balanced()?;
        Ok(DeltaInvariant {
            table: table.canonicalize(),
        })
    }

    pub fn table(&self) -> &BalancedTable {
        &self.table
    }

    pub fn shape(&self) -> &[u32] {
        &self.table.shape
    }

    /// The degree M of the polynomial.
    pub fn degree(&self) -> usize {
        self.table.num_cols()
    }

    pub fn eval(&self, x: &Hypermatrix) -> Result<ExactScalar> {
        delta_eval(&self.table, x)
    }

    pub fn eval_unit(&self, n: u32) -> Result<BigInt> {
        delta_eval_unit(&self.table, n)
    }
}

/// Sign of a map σ : [M] → [n] with respect to one row's set partition:
/// the product over blocks of the sign of σ restricted to the block in
/// ascending element order (0 if some restriction repeats a value).
pub fn block_sign(blocks: &[Vec<u32>], sigma: &[u8]) -> i8 {
    let mut s = 1i8;
    for block in blocks {
        let restricted: Vec<u8> = block.iter().map(|&j| sigma[j as usize - 1]).collect();
        match sign_of_sequence(&restricted) {
            Ok(0) | Err(_) => return 0,
            Ok(sign) => s *= sign,
        }
    }
    s
}

/// One row's precomputed assignment machinery: the blocks (as 0-based column
/// lists) and the permutations available to each block.
struct RowChoices {
    /// blocks[b] = ascending 0-based column indices of block b
    blocks: Vec<Vec<usize>>,
    /// all permutations of [n_i] with signs, shared by every block of the row
    perms: Vec<(Vec<u8>, i8)>,
}

impl RowChoices {
    fn new(table: &BalancedTable, row: usize) -> Self {
        let n = table.shape[row] as usize;
        let k = table.blocks_in_row(row);
        let mut blocks = vec![Vec::with_capacity(n); k];
        for (j, &v) in table.rows[row].iter().enumerate() {
            blocks[v as usize - 1].push(j);
        }
        RowChoices {
            blocks,
            perms: permutations_with_signs(n),
        }
    }

    /// Number of sign-nonzero maps for this row: (n_i!)^{k_i}.
    fn count(&self) -> usize {
        self.perms.len().pow(self.blocks.len() as u32)
    }

    /// Materialize choice `index` (mixed-radix over blocks) as a full map
    /// σ : columns → [n] plus its sign.
    fn assignment(&self, mut index: usize, m: usize) -> (Vec<u8>, i8) {
        let mut sigma = vec![0u8; m];
        let mut sign = 1i8;
        for block in &self.blocks {
            let (perm, s) = &self.perms[index % self.perms.len()];
            index /= self.perms.len();
            for (pos, &col) in block.iter().enumerate() {
                sigma[col] = perm[pos];
            }
            sign *= s;
        }
        (sigma, sign)
    }
}

/// Number of sign-nonzero monomials in the expansion: Π_i (n_i!)^{M/n_i}.
/// Used as the work estimate for budget checks.
pub fn delta_eval_cost(table: &BalancedTable) -> f64 {
    let m = table.num_cols();
    let mut cost = 1f64;
    for i in 0..table.num_rows() {
        let n = table.shape[i] as usize;
        let fact: f64 = (1..=n).map(|x| x as f64).product();
        cost *= fact.powi((m / n) as i32);
    }
    cost
}

/// Exact evaluation of the invariant indexed by `table` at the tensor `x`,
/// by enumerating per-row block-permutation tuples (all other maps have
/// sign zero) and summing sign-weighted monomials. The outer row-1 choice
/// is a parallel reduction.
pub fn delta_eval(table: &BalancedTable, x: &Hypermatrix) -> Result<ExactScalar> {
    table.validate_balanced()?;
    if x.shape() != table.shape.as_slice() {
        return Err(Error::shape(format!(
            "tensor shape {:?} does not match table shape {:?}",
            x.shape(),
            table.shape
        )));
    }
    let d = table.num_rows();
    let m = table.num_cols();
    if m == 0 {
        return Ok(ExactScalar::one());
    }
    if x.num_entries() == 0 {
        return Ok(ExactScalar::zero());
    }
    let rows: Vec<RowChoices> = (0..d).map(|i| RowChoices::new(table, i)).collect();

    let total = (0..rows[0].count())
        .into_par_iter()
        .map(|first| {
            let (sigma1, sign1) = rows[0].assignment(first, m);
            let mut sigmas: Vec<Vec<u8>> = vec![sigma1];
            let mut acc = ExactScalar::zero();
            descend(&rows, 1, sign1, &mut sigmas, x, m, &mut acc);
            acc
        })
        .reduce(ExactScalar::zero, |a, b| a + b);
    return Ok(total);

    fn descend(
        rows: &[RowChoices],
        row: usize,
        sign: i8,
        sigmas: &mut Vec<Vec<u8>>,
        x: &Hypermatrix,
        m: usize,
        acc: &mut ExactScalar,
    ) {
        if row == rows.len() {
            // monomial Π_j X_{σ_1(j),…,σ_d(j)} with early zero exit
            let mut term = ExactScalar::one();
            let mut idx = vec![0u8; rows.len()];
            for j in 0..m {
                for (i, sigma) in sigmas.iter().enumerate() {
                    idx[i] = sigma[j];
                }
                match x.get_ref(&idx) {
                    None => return,
                    Some(v) => term *= v,
                }
            }
            let signed = if sign == 1 { term } else { -term };
            *acc += signed;
            return;
        }
        for choice in 0..rows[row].count() {
            let (sigma, s) = rows[row].assignment(choice, m);
            sigmas.push(sigma);
            descend(rows, row + 1, sign * s, sigmas, x, m, acc);
            sigmas.pop();
        }
    }
}

/// Evaluation at the unit tensor I_n via the Latin-hypercube
/// correspondence: sort the columns (tracking swap signs), view the column
/// set as a magic set of [M/n]^d and return the signed hypercube sum.
///
/// Tables with a repeated column evaluate to 0 when d is odd; for even d
/// the correspondence does not apply and the direct expansion is used.
pub fn delta_eval_unit(table: &BalancedTable, n: u32) -> Result<BigInt> {
    table.validate_balanced()?;
    if table.shape.iter().any(|&s| s != n) {
        return Err(Error::shape(format!(
            "table shape {:?} is not ({n},…,{n})",
            table.shape
        )));
    }
    let d = table.num_rows();
    if table.has_duplicate_columns() {
        if d % 2 == 1 {
            return Ok(BigInt::from(0));
        }
        let v = delta_eval(table, &Hypermatrix::unit(d, n))?;
        return v
            .to_integer()
            .ok_or_else(|| Error::Internal("unit evaluation must be an integer".into()));
    }
    let (sorted, sign) = sort_columns_with_sign(table);
    let k = (sorted.num_cols() / n as usize) as u8;
    let cells: Vec<Cell> = sorted.columns().into_iter().map(Cell).collect();
    let magic = MagicSet::new(k, d, cells)?;
    let at = alon_tarsi(&magic);
    Ok(if sign == 1 { at } else { -at })
}

/// Sort columns lexicographically by repeated adjacent swaps, accumulating
/// the sign each swap contributes to the invariant.
pub fn sort_columns_with_sign(table: &BalancedTable) -> (BalancedTable, i8) {
    let mut t = table.clone();
    let m = t.num_cols();
    let mut sign = 1i8;
    // insertion sort: stable and O(M^2), fine at desk scale
    for upper in 1..m {
        let mut j = upper;
        while j > 0 && t.column(j - 1) > t.column(j) {
            sign *= column_swap_sign(&t, j - 1, j).expect("adjacent indices are distinct");
            t = t.with_columns_swapped(j - 1, j);
            j -= 1;
        }
    }
    (t, sign)
}

/// The sign relating the invariant of `table` to that of the table with
/// columns i and j (0-based, i < j) swapped: Δ_T = sign · Δ_{(i,j)T}.
pub fn column_swap_sign(table: &BalancedTable, i: usize, j: usize) -> Result<i8> {
    if i == j {
        return Err(Error::domain("column swap requires distinct columns"));
    }
    let (i, j) = if i < j { (i, j) } else { (j, i) };
    if j >= table.num_cols() {
        return Err(Error::domain("column index out of range"));
    }
    let mut l = 0usize;
    for row in &table.rows {
        let (a, b) = (row[i], row[j]);
        let count_a = row[i..=j].iter().filter(|&&v| v == a).count();
        let count_b = row[i..=j].iter().filter(|&&v| v == b).count();
        l += count_a + count_b - usize::from(a == b);
    }
    Ok(if l % 2 == 0 { 1 } else { -1 })
}

/// The d×k^d table whose j-th column is the j-th element of [k]^d in
/// lexicographic order; every row value appears k^{d−1} times.
pub fn fundamental_table(d: usize, k: u8) -> BalancedTable {
    let cells = all_cells(d, k);
    let rows = (0..d)
        .map(|i| cells.iter().map(|c| c.coord(i)).collect())
        .collect();
    BalancedTable {
        shape: vec![(k as u32).pow(d as u32 - 1); d],
        rows,
    }
}

/// The fundamental table with its k constant columns (v,…,v) removed.
pub fn fundamental_table_reduced(d: usize, k: u8) -> BalancedTable {
    let cells: Vec<Cell> = all_cells(d, k)
        .into_iter()
        .filter(|c| c.0.iter().any(|&x| x != c.0[0]))
        .collect();
    let rows = (0..d)
        .map(|i| cells.iter().map(|c| c.coord(i)).collect())
        .collect();
    BalancedTable {
        shape: vec![(k as u32).pow(d as u32 - 1) - 1; d],
        rows,
    }
}

/// The d×k² table with rows (1^k 2^k … k^k) except the last, which is
/// (1 2 … k) repeated k times.
pub fn at_square_table(d: usize, k: u8) -> BalancedTable {
    let m = k as usize * k as usize;
    let flat: Vec<u8> = (1..=k).flat_map(|v| std::iter::repeat(v).take(k as usize)).collect();
    let cyclic: Vec<u8> = (0..m).map(|j| (j % k as usize) as u8 + 1).collect();
    let mut rows = vec![flat; d - 1];
    rows.push(cyclic);
    BalancedTable {
        shape: vec![k as u32; d],
        rows,
    }
}

/// The d×k^ℓ table whose row i is (1^{k^{ℓ−i}} … k^{k^{ℓ−i}})^{k^{i−1}} for
/// i < ℓ and (1 2 … k)^{k^{ℓ−1}} for i ≥ ℓ.
pub fn at_power_table(d: usize, k: u8, l: usize) -> Result<BalancedTable> {
    if l > d || l == 0 {
        return Err(Error::domain(format!("power {l} must lie in 1..={d}")));
    }
    let m = (k as usize).pow(l as u32);
    let mut rows = Vec::with_capacity(d);
    for i in 1..=d {
        let row: Vec<u8> = if i < l {
            let run = (k as usize).pow((l - i) as u32);
            (0..m).map(|j| ((j / run) % k as usize) as u8 + 1).collect()
        } else {
            (0..m).map(|j| (j % k as usize) as u8 + 1).collect()
        };
        rows.push(row);
    }
    Ok(BalancedTable {
        shape: vec![(k as u32).pow(l as u32 - 1); d],
        rows,
    })
}
