//! Kronecker coefficients by three independent pipelines (character sums,
//! raising-operator kernels, chain recursion), plus the degree sequence of
//! the smallest nonzero tensor invariant.

pub mod cache;
pub mod character;
pub mod nullspace;

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::cell::Cell;
use crate::error::{Error, Result};
use crate::exterior::{raising_operator, WedgeVector};
use crate::latin::enumerate_magic_sets;
use crate::partition::{factorial, partitions_in_rect, partitions_of, Partition};

pub use cache::{cache_key, CoefficientCache};
pub use character::CharEvaluator;
pub use nullspace::SparseIntMatrix;

/// Default ceiling on the partition size m in character sums.
pub const DEFAULT_MAX_PARTITION_SIZE: u64 = 24;
/// Default ceiling on the number of magic sets in a kernel computation.
pub const DEFAULT_MAX_BASIS_SIZE: usize = 200_000;

/// A conjugacy class of S_m, named by its cycle type.
#[derive(Debug, Clone)]
pub struct ConjugacyClass {
    pub cycle_type: Partition,
    pub size: BigInt,
}

pub fn conjugacy_classes(m: u64) -> Vec<ConjugacyClass> {
    partitions_of(m)
        .into_iter()
        .map(|p| {
            let size = p.class_size();
            ConjugacyClass {
                cycle_type: p,
                size,
            }
        })
        .collect()
}

/// Multiplicity of the trivial representation in the tensor product of the
/// irreducibles indexed by `parts`: (1/m!) Σ_classes |class| Π_i χ_{λ_i}.
/// For three partitions this is the classical Kronecker coefficient.
pub fn kronecker_char(parts: &[Partition], max_size: u64) -> Result<BigInt> {
    if parts.len() < 2 {
        return Err(Error::domain("need at least two partitions"));
    }
    let m = parts[0].size();
    if parts.iter().any(|p| p.size() != m) {
        return Err(Error::domain("partition sizes differ"));
    }
    if m > max_size {
        return Err(Error::budget(format!(
            "partition size {m} exceeds the character budget {max_size}"
        )));
    }
    let mut ev = CharEvaluator::new();
    let mut total = BigInt::zero();
    for class in conjugacy_classes(m) {
        let mut prod = BigInt::one();
        for p in parts {
            let chi = ev.character(p, &class.cycle_type)?;
            if chi == 0 {
                prod = BigInt::zero();
                break;
            }
            prod *= BigInt::from(chi);
        }
        total += prod * class.size;
    }
    let (q, r) = total.div_rem(&factorial(m));
    if !r.is_zero() {
        return Err(Error::Internal(
            "character sum not divisible by m!".into(),
        ));
    }
    if q.is_negative() {
        return Err(Error::Internal("negative multiplicity".into()));
    }
    Ok(q)
}

/// Cache-aware wrapper around `kronecker_char`.
pub fn kronecker_char_cached(
    parts: &[Partition],
    max_size: u64,
    cache: &CoefficientCache,
) -> Result<BigInt> {
    let key = cache_key(parts);
    if let Some(v) = cache.get(&key) {
        return Ok(v);
    }
    let v = kronecker_char(parts, max_size)?;
    cache.put(key, &v)?;
    Ok(v)
}

/// The rectangle indexing g_d(n,k): n parts each of size k.
pub fn g_rect_partition(n: u32, k: u32) -> Partition {
    Partition::rect(n, k)
}

/// g_d(n,k) by the character pipeline: the coefficient at d copies of the
/// n×k rectangle.
pub fn g_rect(
    d: usize,
    n: u32,
    k: u32,
    max_size: u64,
    cache: &CoefficientCache,
) -> Result<BigInt> {
    if d < 2 {
        return Err(Error::domain("need d >= 2 tensor factors"));
    }
    if n == 0 || k == 0 {
        return Ok(BigInt::one());
    }
    let rect = g_rect_partition(n, k);
    if rect.size() > max_size {
        return Err(Error::budget(format!(
            "partition size {} exceeds the character budget {max_size}",
            rect.size()
        )));
    }
    let parts = vec![rect.clone(); d];
    let key = cache_key(&parts);
    if let Some(v) = cache.get(&key) {
        return Ok(v);
    }
    // equal arguments take the shared-prefix class walk, which is far
    // cheaper than evaluating each class independently
    let v = character::g_power_char(&rect, d)?;
    cache.put(key, &v)?;
    Ok(v)
}

/// g_d(n,k) by the kernel pipeline: the common kernel dimension of all
/// d(k−1) raising operators on the uniform-marginal weight basis.
pub fn g_rect_kernel(d: usize, n: u32, k: u8, max_basis: usize) -> Result<BigInt> {
    if d < 2 {
        return Err(Error::domain("need d >= 2 tensor factors"));
    }
    let basis = enumerate_magic_sets(d, k, n);
    if basis.is_empty() {
        return Ok(BigInt::zero());
    }
    if basis.len() > max_basis {
        return Err(Error::budget(format!(
            "weight-space basis has {} elements, budget is {max_basis}",
            basis.len()
        )));
    }
    // stacked operator matrix, transposed so columns index basis elements:
    // each row is one (operator, target-index) coordinate
    let mut row_of: HashMap<(usize, Vec<Cell>), Vec<(usize, BigInt)>> = HashMap::new();
    for (col, set) in basis.iter().enumerate() {
        let v = WedgeVector::basis(d, k, set.cells().to_vec())
            .map_err(|e| Error::Internal(e.to_string()))?;
        let mut op_id = 0usize;
        for direction in 1..=d {
            for i in 1..k {
                let image = raising_operator(&v, direction, i)?;
                for (target, coeff) in image.terms() {
                    row_of
                        .entry((op_id, target.clone()))
                        .or_default()
                        .push((col, coeff.clone()));
                }
                op_id += 1;
            }
        }
    }
    let mut matrix = SparseIntMatrix::new(basis.len());
    for (_, entries) in row_of {
        matrix.push_row(entries);
    }
    Ok(BigInt::from(matrix.nullity()))
}

/// g_d(n,k) for odd d by the chain recursion: a sum over intermediate
/// partitions of products of three-way coefficients, with intermediates
/// restricted to explicit rectangles. Falls back to the character pipeline
/// for d = 3.
pub fn g_recursive(
    d: usize,
    n: u32,
    k: u32,
    max_size: u64,
    cache: &CoefficientCache,
) -> Result<BigInt> {
    if d < 3 || d % 2 == 0 {
        return Err(Error::domain("chain recursion needs odd d >= 3"));
    }
    if n == 0 || k == 0 {
        return Ok(BigInt::one());
    }
    if d == 3 {
        return g_rect(3, n, k, max_size, cache);
    }
    let m = n as u64 * k as u64;
    let mid = Partition::rect(k, n);
    let first = Partition::rect(k, n);
    let last = Partition::rect(n, k);
    // forward sweep: front[μ] accumulates the chain weight ending at μ
    let mut front: HashMap<Vec<u32>, BigInt> = HashMap::new();
    front.insert(first.parts().to_vec(), BigInt::one());
    for i in 2..=(d - 2) {
        // intermediates at position i fit inside the k^i × k^{d−i} box
        let rows = (k as u64).pow(i as u32).min(m) as u32;
        let cols = (k as u64).pow((d - i) as u32).min(m) as u32;
        let mut next: HashMap<Vec<u32>, BigInt> = HashMap::new();
        for mu in partitions_in_rect(m, rows, cols) {
            let mut acc = BigInt::zero();
            for (prev_parts, weight) in &front {
                let prev = Partition::new(prev_parts.clone())
                    .map_err(|e| Error::Internal(e.to_string()))?;
                let g = kronecker_char_cached(
                    &[prev, mid.clone(), mu.clone()],
                    max_size,
                    cache,
                )?;
                if !g.is_zero() {
                    acc += g * weight;
                }
            }
            if !acc.is_zero() {
                next.insert(mu.parts().to_vec(), acc);
            }
        }
        front = next;
        if front.is_empty() {
            return Ok(BigInt::zero());
        }
    }
    let mut total = BigInt::zero();
    for (prev_parts, weight) in &front {
        let prev = Partition::new(prev_parts.clone())
            .map_err(|e| Error::Internal(e.to_string()))?;
        let g = kronecker_char_cached(&[prev, mid.clone(), last.clone()], max_size, cache)?;
        total += g * weight;
    }
    Ok(total)
}

/// Lower bound for the degree of a nonzero invariant of
/// C^{n_1} ⊗ … ⊗ C^{n_d}: the smallest common multiple of the dimensions
/// that is at least ⌈(Π n_i)^{1/(d−1)}⌉. For a cubic shape this is
/// n⌈n^{1/(d−1)}⌉.
pub fn delta_lower_bound(dims: &[u32]) -> Result<u64> {
    let d = dims.len();
    if d < 3 || d % 2 == 0 {
        return Err(Error::domain("bound applies to odd d >= 3"));
    }
    if dims.iter().any(|&x| x == 0) {
        return Err(Error::domain("dimensions must be positive"));
    }
    let mut l = 1u64;
    let mut product = BigInt::one();
    for &x in dims {
        l = l.lcm(&(x as u64));
        product *= BigInt::from(x);
    }
    let mut root = product.nth_root((d - 1) as u32);
    if num_traits::pow::Pow::pow(&root, (d - 1) as u32) < product {
        root += 1;
    }
    let root: u64 = root
        .try_into()
        .map_err(|_| Error::domain("dimensions too large"))?;
    Ok(root.div_ceil(l) * l)
}

/// Result of a degree search under a compute budget.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DegreeOutcome {
    /// The smallest degree with a nonzero invariant.
    Degree(u64),
    /// The budget ran out first; every degree up to this size was zero.
    Inconclusive { largest_size_tried: u64 },
}

/// Smallest m = nk with g_d(n,k) > 0, scanning k upward from the degree
/// lower bound. Reports an explicit inconclusive outcome when the next
/// candidate exceeds the character budget.
pub fn delta_degree(
    d: usize,
    n: u32,
    max_size: u64,
    cache: &CoefficientCache,
) -> Result<DegreeOutcome> {
    if d < 3 || d % 2 == 0 {
        return Err(Error::domain("degree sequence defined for odd d >= 3"));
    }
    if n == 0 {
        return Err(Error::domain("dimension must be positive"));
    }
    if n == 1 {
        return Ok(DegreeOutcome::Degree(1));
    }
    let start = delta_lower_bound(&vec![n; d])? / n as u64;
    let mut last_ok = 0u64;
    for k in start.. {
        let m = n as u64 * k;
        if m > max_size {
            return Ok(DegreeOutcome::Inconclusive {
                largest_size_tried: last_ok,
            });
        }
        let g = g_rect(d, n, k as u32, max_size, cache)?;
        if !g.is_zero() {
            return Ok(DegreeOutcome::Degree(m));
        }
        last_ok = m;
    }
    unreachable!()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn g3(l: &[u32], m: &[u32], n: &[u32]) -> BigInt {
        kronecker_char(&[p(l), p(m), p(n)], 64).unwrap()
    }

    #[test]
    fn trivial_factor_is_identity() {
        for lam in partitions_of(5) {
            for mu in partitions_of(5) {
                let expected = if lam == mu { 1 } else { 0 };
                assert_eq!(
                    kronecker_char(&[p(&[5]), lam.clone(), mu.clone()], 64).unwrap(),
                    BigInt::from(expected)
                );
            }
        }
    }

    #[test]
    fn square_values() {
        assert_eq!(g3(&[2, 2], &[2, 2], &[2, 2]), BigInt::from(1));
        assert_eq!(
            g3(&[4, 4, 4, 4], &[4, 4, 4, 4], &[4, 4, 4, 4]),
            BigInt::from(5)
        );
    }

    #[test]
    fn rect_reference_values() {
        let cache = CoefficientCache::in_memory();
        assert_eq!(g_rect(5, 2, 2, 64, &cache).unwrap(), BigInt::from(5));
        assert_eq!(g_rect(3, 5, 4, 64, &cache).unwrap(), BigInt::from(6));
        assert_eq!(g_rect(3, 0, 7, 64, &cache).unwrap(), BigInt::from(1));
        // cached re-query returns the identical value
        assert_eq!(g_rect(5, 2, 2, 64, &cache).unwrap(), BigInt::from(5));
    }

    #[test]
    fn budget_is_enforced() {
        let cache = CoefficientCache::in_memory();
        assert!(matches!(
            g_rect(3, 5, 5, 24, &cache),
            Err(Error::Budget(_))
        ));
    }

    #[test]
    fn kernel_pipeline_small_cases() {
        for n in 0..=4u32 {
            assert_eq!(
                g_rect_kernel(3, n, 2, DEFAULT_MAX_BASIS_SIZE).unwrap(),
                BigInt::from(1),
                "g_3({n},2)"
            );
        }
        assert_eq!(
            g_rect_kernel(5, 2, 2, DEFAULT_MAX_BASIS_SIZE).unwrap(),
            BigInt::from(5)
        );
        assert_eq!(
            g_rect_kernel(3, 5, 2, DEFAULT_MAX_BASIS_SIZE).unwrap(),
            BigInt::from(0)
        );
    }

    #[test]
    fn recursive_pipeline_reference_values() {
        let cache = CoefficientCache::in_memory();
        assert_eq!(g_recursive(5, 1, 2, 64, &cache).unwrap(), BigInt::from(1));
        assert_eq!(g_recursive(5, 3, 2, 64, &cache).unwrap(), BigInt::from(11));
        assert_eq!(g_recursive(5, 2, 3, 64, &cache).unwrap(), BigInt::from(1));
        assert!(g_recursive(4, 1, 2, 64, &cache).is_err());
    }

    #[test]
    fn lower_bound_examples() {
        assert_eq!(delta_lower_bound(&[7, 7, 7]).unwrap(), 21);
        assert_eq!(delta_lower_bound(&[4, 4, 4]).unwrap(), 8);
        assert_eq!(delta_lower_bound(&[16; 5]).unwrap(), 32);
        assert!(delta_lower_bound(&[2, 2]).is_err());
        assert!(delta_lower_bound(&[2, 2, 2, 2]).is_err());
    }

    #[test]
    fn degree_small_values() {
        let cache = CoefficientCache::in_memory();
        assert_eq!(
            delta_degree(3, 2, 24, &cache).unwrap(),
            DegreeOutcome::Degree(4)
        );
        assert_eq!(
            delta_degree(3, 4, 24, &cache).unwrap(),
            DegreeOutcome::Degree(8)
        );
        assert_eq!(
            delta_degree(3, 3, 24, &cache).unwrap(),
            DegreeOutcome::Degree(6)
        );
    }

    #[test]
    fn degree_reports_inconclusive_under_tiny_budget() {
        let cache = CoefficientCache::in_memory();
        match delta_degree(3, 5, 12, &cache).unwrap() {
            DegreeOutcome::Inconclusive {
                largest_size_tried,
            } => assert!(largest_size_tried <= 12),
            other => panic!("expected inconclusive, got {other:?}"),
        }
    }

    #[test]
    fn symmetry_of_rectangular_values() {
        // g_d(n,k) = g_d(k^{d−1}−n, k)
        let cache = CoefficientCache::in_memory();
        for n in 0..=4u32 {
            assert_eq!(
                g_rect(3, n, 2, 64, &cache).unwrap(),
                g_rect(3, 4 - n, 2, 64, &cache).unwrap()
            );
        }
    }

    #[test]
    fn power_walk_agrees_with_per_class_sums() {
        for (lam, d) in [
            (p(&[2, 2]), 3usize),
            (p(&[3, 3]), 3),
            (p(&[2, 2, 2]), 5),
            (p(&[4, 4, 4]), 3),
            (p(&[3, 2, 1]), 3),
        ] {
            let direct = kronecker_char(&vec![lam.clone(); d], 64).unwrap();
            let walked = character::g_power_char(&lam, d).unwrap();
            assert_eq!(direct, walked, "{:?}^{d}", lam.parts());
        }
    }

    #[test]
    fn conjugation_invariance_in_pairs() {
        let a = p(&[3, 1]);
        let b = p(&[2, 2]);
        let c = p(&[2, 1, 1]);
        let base = kronecker_char(&[a.clone(), b.clone(), c.clone()], 64).unwrap();
        let conj = kronecker_char(&[a.conjugate(), b.conjugate(), c.clone()], 64).unwrap();
        assert_eq!(base, conj);
        // and S_3 symmetry
        let perm = kronecker_char(&[c, a, b], 64).unwrap();
        assert_eq!(base, perm);
    }
}
