//! Exact irreducible symmetric-group character values by border-strip
//! (Murnaghan–Nakayama) recursion over beta numbers.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::partition::{factorial, Partition};

/// Memoizing evaluator. Keys are (shape, remaining cycle lengths), so the
/// table is shared across every class of the same symmetric group and
/// across repeated shapes.
#[derive(Debug, Default)]
pub struct CharEvaluator {
    memo: HashMap<(Vec<u32>, Vec<u32>), i128>,
}

impl CharEvaluator {
    pub fn new() -> Self {
        Self::default()
    }

    /// χ_λ(μ): the character of the irreducible indexed by λ on the class
    /// of cycle type μ.
    pub fn character(&mut self, lambda: &Partition, mu: &Partition) -> Result<i128> {
        if lambda.size() != mu.size() {
            return Err(Error::domain(format!(
                "character arguments have sizes {} and {}",
                lambda.size(),
                mu.size()
            )));
        }
        Ok(self.eval(lambda.parts().to_vec(), mu.parts()))
    }

    fn eval(&mut self, shape: Vec<u32>, cycles: &[u32]) -> i128 {
        if cycles.is_empty() {
            return 1; // empty shape, empty product
        }
        let key = (shape, cycles.to_vec());
        if let Some(&v) = self.memo.get(&key) {
            return v;
        }
        let shape = &key.0;
        let t = cycles[0];
        // beta numbers: strictly decreasing, beta_i = λ_i + (ℓ−1−i)
        let l = shape.len();
        let beta: Vec<u32> = shape
            .iter()
            .enumerate()
            .map(|(i, &p)| p + (l - 1 - i) as u32)
            .collect();
        let mut total = 0i128;
        for (pos, &b) in beta.iter().enumerate() {
            if b < t || beta.contains(&(b - t)) {
                continue;
            }
            // removing a border strip of length t = lowering one beta
            // number by t; its height is the count of beta values jumped
            let height = beta.iter().filter(|&&c| b - t < c && c < b).count();
            let mut nb = beta.clone();
            nb[pos] = b - t;
            nb.sort_unstable_by(|x, y| y.cmp(x));
            let ll = nb.len();
            let mut new_shape: Vec<u32> = nb
                .iter()
                .enumerate()
                .map(|(i, &c)| c - (ll - 1 - i) as u32)
                .collect();
            while new_shape.last() == Some(&0) {
                new_shape.pop();
            }
            let sub = self.eval(new_shape, &cycles[1..]);
            total += if height % 2 == 0 { sub } else { -sub };
        }
        self.memo.insert(key, total);
        total
    }
}

/// All partitions contained in `lambda`, as raw part lists, with an id map.
fn subdiagrams(lambda: &Partition) -> (Vec<Vec<u32>>, HashMap<Vec<u32>, usize>) {
    let mut out: Vec<Vec<u32>> = Vec::new();
    let bound = lambda.parts();
    let mut current: Vec<u32> = Vec::new();
    walk(bound, 0, u32::MAX, &mut current, &mut out);
    let id = out
        .iter()
        .enumerate()
        .map(|(i, s)| (s.clone(), i))
        .collect();
    return (out, id);

    fn walk(
        bound: &[u32],
        row: usize,
        cap: u32,
        current: &mut Vec<u32>,
        out: &mut Vec<Vec<u32>>,
    ) {
        out.push(current.clone());
        if row == bound.len() {
            return;
        }
        for part in 1..=bound[row].min(cap) {
            current.push(part);
            walk(bound, row + 1, part, current, out);
            current.pop();
        }
    }
}

/// Border-strip additions of length `t` to `shape`, staying inside
/// `lambda`: (target shape id, height sign).
fn strip_additions(
    shape: &[u32],
    t: u32,
    lambda: &[u32],
    id: &HashMap<Vec<u32>, usize>,
) -> Vec<(usize, i8)> {
    let l = lambda.len();
    let beta: Vec<u32> = (0..l)
        .map(|i| shape.get(i).copied().unwrap_or(0) + (l - 1 - i) as u32)
        .collect();
    let mut out = Vec::new();
    for (pos, &b) in beta.iter().enumerate() {
        let nb = b + t;
        if beta.contains(&nb) {
            continue;
        }
        let height = beta.iter().filter(|&&c| b < c && c < nb).count();
        let mut nbeta = beta.clone();
        nbeta[pos] = nb;
        nbeta.sort_unstable_by(|x, y| y.cmp(x));
        let mut parts: Vec<u32> = nbeta
            .iter()
            .enumerate()
            .map(|(i, &c)| c - (l - 1 - i) as u32)
            .collect();
        if parts.iter().zip(lambda).any(|(p, b)| p > b) {
            continue;
        }
        while parts.last() == Some(&0) {
            parts.pop();
        }
        let target = id[&parts];
        out.push((target, if height % 2 == 0 { 1i8 } else { -1 }));
    }
    out
}

/// Class-sum evaluation of the coefficient at d equal arguments:
/// (1/m!) Σ_μ |class(μ)| χ_λ(μ)^d, sharing the border-strip recursion
/// across every class by walking cycle types depth-first and carrying the
/// strip-addition state (a sparse vector over subdiagrams of λ) along the
/// shared prefixes. Top-level branches run in parallel.
pub fn g_power_char(lambda: &Partition, d: usize) -> Result<BigInt> {
    if d < 2 {
        return Err(Error::domain("need d >= 2 tensor factors"));
    }
    let m = lambda.size();
    if m == 0 {
        return Ok(BigInt::one());
    }
    let (shapes, id) = subdiagrams(lambda);
    let lambda_id = id[&lambda.parts().to_vec()];
    // transitions[t-1][shape_id], built once up front
    let transitions: Vec<Vec<Vec<(usize, i8)>>> = (1..=m as u32)
        .into_par_iter()
        .map(|t| {
            shapes
                .iter()
                .map(|s| strip_additions(s, t, lambda.parts(), &id))
                .collect()
        })
        .collect();
    let m_fact = factorial(m);

    // numerator Σ (m!/z_μ) χ^d over all classes below one first-part choice
    let total: BigInt = (1..=m as u32)
        .into_par_iter()
        .map(|first| {
            let state = vec![(id[&Vec::new()], 1i128)];
            let mut counts = vec![0u32; m as usize + 1];
            let mut acc = BigInt::zero();
            descend(
                m,
                first,
                &state,
                BigInt::one(),
                &mut counts,
                &transitions,
                lambda_id,
                d,
                &m_fact,
                &mut acc,
            );
            acc
        })
        .reduce(BigInt::zero, |a, b| a + b);

    let (q, r) = total.div_rem(&m_fact);
    if !r.is_zero() {
        return Err(Error::Internal(
            "character sum not divisible by m!".into(),
        ));
    }
    return Ok(q);

    #[allow(clippy::too_many_arguments)]
    fn descend(
        remaining: u64,
        t: u32,
        state: &[(usize, i128)],
        z: BigInt,
        counts: &mut Vec<u32>,
        transitions: &[Vec<Vec<(usize, i8)>>],
        lambda_id: usize,
        d: usize,
        m_fact: &BigInt,
        acc: &mut BigInt,
    ) {
        if (t as u64) > remaining {
            return;
        }
        // apply one strip of length t to the sparse state
        let mut merged: HashMap<usize, i128> = HashMap::with_capacity(state.len() * 2);
        for &(s, coeff) in state {
            for &(target, sign) in &transitions[t as usize - 1][s] {
                *merged.entry(target).or_insert(0) +=
                    if sign == 1 { coeff } else { -coeff };
            }
        }
        let next: Vec<(usize, i128)> = merged
            .into_iter()
            .filter(|&(_, v)| v != 0)
            .collect();
        if next.is_empty() {
            return; // χ vanishes on every class extending this prefix
        }
        counts[t as usize] += 1;
        let z = z * BigInt::from(t) * BigInt::from(counts[t as usize]);
        let remaining = remaining - t as u64;
        if remaining == 0 {
            let chi = next
                .iter()
                .find(|&&(s, _)| s == lambda_id)
                .map_or(0, |&(_, v)| v);
            if chi != 0 {
                let mut pow = BigInt::one();
                for _ in 0..d {
                    pow *= BigInt::from(chi);
                }
                *acc += pow * (m_fact / &z);
            }
        } else {
            // later parts never exceed earlier ones, so each cycle type
            // is visited exactly once
            for nt in (1..=t.min(remaining as u32)).rev() {
                descend(
                    remaining, nt, &next, z.clone(), counts, transitions, lambda_id, d,
                    m_fact, acc,
                );
            }
        }
        counts[t as usize] -= 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::{factorial, partitions_of, Partition};
    use num_bigint::BigInt;
    use num_traits::Zero;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn trivial_and_sign_characters() {
        let mut ev = CharEvaluator::new();
        for mu in partitions_of(6) {
            assert_eq!(ev.character(&p(&[6]), &mu).unwrap(), 1);
            assert_eq!(
                ev.character(&p(&[1, 1, 1, 1, 1, 1]), &mu).unwrap(),
                mu.class_sign() as i128
            );
        }
    }

    #[test]
    fn dimension_matches_hook_lengths() {
        // value on the identity class = n!/Π hooks
        let mut ev = CharEvaluator::new();
        let cases = [
            (vec![2u32, 1], 2i128),   // 3!/3
            (vec![3, 2], 5),          // 5!/24
            (vec![3, 3], 5),
            (vec![4, 2, 1], 35),      // 7!/144
            (vec![2, 2, 2, 2], 14),
        ];
        for (shape, dim) in cases {
            let m = shape.iter().sum::<u32>() as u64;
            let ones = Partition::new(vec![1; m as usize]).unwrap();
            assert_eq!(ev.character(&p(&shape), &ones).unwrap(), dim);
        }
    }

    #[test]
    fn column_orthogonality_at_small_sizes() {
        // Σ_λ χ_λ(μ)² = m!/|class(μ)| (centralizer order)
        let mut ev = CharEvaluator::new();
        for m in 1..=7u64 {
            let shapes = partitions_of(m);
            for mu in partitions_of(m) {
                let mut sum = BigInt::zero();
                for lam in &shapes {
                    let v = ev.character(lam, &mu).unwrap();
                    sum += BigInt::from(v) * BigInt::from(v);
                }
                assert_eq!(sum * mu.class_size(), factorial(m));
            }
        }
    }

    #[test]
    fn size_mismatch_rejected() {
        let mut ev = CharEvaluator::new();
        assert!(ev.character(&p(&[2, 1]), &p(&[2, 2])).is_err());
    }
}
