//! Integer partitions: conjugation, complements in a rectangle, generation,
//! and conjugacy-class sizes of the symmetric group.

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A weakly decreasing sequence of positive integers.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        parts.retain(|&p| p != 0);
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::domain("parts must be weakly decreasing"));
        }
        Ok(Partition(parts))
    }

    /// The empty partition of 0.
    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// The rectangle with `rows` parts equal to `width`. `rect(0, k)` and
    /// `rect(n, 0)` are both empty.
    pub fn rect(rows: u32, width: u32) -> Self {
        if width == 0 {
            Partition(Vec::new())
        } else {
            Partition(vec![width; rows as usize])
        }
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> u64 {
        self.0.iter().map(|&p| p as u64).sum()
    }

    pub fn first(&self) -> u32 {
        self.0.first().copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Partition {
        let cols = self.first() as usize;
        let mut parts = Vec::with_capacity(cols);
        for j in 0..cols {
            parts.push(self.0.iter().filter(|&&p| p as usize > j).count() as u32);
        }
        Partition(parts)
    }

    /// Whether `self` fits inside `other` cell-wise.
    pub fn contained_in(&self, other: &Partition) -> bool {
        self.0.len() <= other.0.len()
            && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// Complement inside the `a`×`b` rectangle: row i of the result is
    /// b − λ_{a+1−i}. Defined only when λ fits in the rectangle.
    pub fn complement_in(&self, a: u32, b: u32) -> Result<Partition> {
        if self.0.len() > a as usize || self.first() > b {
            return Err(Error::domain(format!(
                "partition does not fit inside {a}x{b}"
            )));
        }
        let mut parts: Vec<u32> = (0..a as usize)
            .rev()
            .map(|i| b - self.0.get(i).copied().unwrap_or(0))
            .collect();
        parts.retain(|&p| p != 0);
        Ok(Partition(parts))
    }

    /// Part-wise sum (pads with zeros).
    pub fn add(&self, other: &Partition) -> Partition {
        let n = self.0.len().max(other.0.len());
        let parts = (0..n)
            .map(|i| {
                self.0.get(i).copied().unwrap_or(0) + other.0.get(i).copied().unwrap_or(0)
            })
            .collect();
        Partition(parts)
    }

    /// Size of the intersection of the Young diagrams.
    pub fn intersection_size(&self, other: &Partition) -> u64 {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(&a, &b)| a.min(b) as u64)
            .sum()
    }

    /// Multiplicities m_j of each part value j.
    fn multiplicities(&self) -> Vec<(u32, u32)> {
        let mut out: Vec<(u32, u32)> = Vec::new();
        for &p in &self.0 {
            match out.last_mut() {
                Some((v, m)) if *v == p => *m += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    /// Size of the conjugacy class of S_m with this cycle type:
    /// m! / Π(j^{m_j} m_j!).
    pub fn class_size(&self) -> BigInt {
        let m = self.size();
        let mut num = factorial(m);
        for (j, mult) in self.multiplicities() {
            for _ in 0..mult {
                num /= BigInt::from(j);
            }
            num /= factorial(mult as u64);
        }
        num
    }

    /// Sign of any element with this cycle type: (−1)^{m − #parts}.
    pub fn class_sign(&self) -> i8 {
        if (self.size() - self.0.len() as u64) % 2 == 0 {
            1
        } else {
            -1
        }
    }
}

pub fn factorial(n: u64) -> BigInt {
    let mut f = BigInt::one();
    for i in 2..=n {
        f *= BigInt::from(i);
    }
    f
}

/// All partitions of `m` in descending lexicographic order.
pub fn partitions_of(m: u64) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut cur: Vec<u32> = Vec::new();
    gen_parts(m, u64::MAX.min(m), &mut cur, &mut out);
    out
}

/// Partitions of `m` with every part ≤ `max_part`.
pub fn partitions_of_bounded(m: u64, max_part: u64) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut cur: Vec<u32> = Vec::new();
    gen_parts(m, max_part.min(m), &mut cur, &mut out);
    out
}

fn gen_parts(rem: u64, max_part: u64, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if rem == 0 {
        out.push(Partition(cur.clone()));
        return;
    }
    let hi = max_part.min(rem);
    for p in (1..=hi).rev() {
        cur.push(p as u32);
        gen_parts(rem - p, p, cur, out);
        cur.pop();
    }
}

/// All partitions fitting inside the `a`×`b` rectangle with the given size.
pub fn partitions_in_rect(size: u64, a: u32, b: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut cur: Vec<u32> = Vec::new();
    gen_rect(size, a, b as u64, &mut cur, &mut out);
    out
}

fn gen_rect(rem: u64, rows_left: u32, max_part: u64, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if rem == 0 {
        out.push(Partition(cur.clone()));
        return;
    }
    if rows_left == 0 || max_part == 0 || rem > rows_left as u64 * max_part {
        return;
    }
    let hi = max_part.min(rem);
    for p in (1..=hi).rev() {
        cur.push(p as u32);
        gen_rect(rem - p, rows_left - 1, p, cur, out);
        cur.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conjugate_involution_small() {
        let lam = Partition::new(vec![4, 2, 1]).unwrap();
        assert_eq!(lam.conjugate().parts(), &[3, 2, 1, 1]);
        assert_eq!(lam.conjugate().conjugate(), lam);
    }

    #[test]
    fn complement_size() {
        let lam = Partition::new(vec![3, 1]).unwrap();
        let c = lam.complement_in(3, 4).unwrap();
        assert_eq!(c.size(), 3 * 4 - lam.size());
        // complement is an involution inside the same rectangle
        assert_eq!(c.complement_in(3, 4).unwrap(), lam);
    }

    #[test]
    fn partition_counts() {
        assert_eq!(partitions_of(0).len(), 1);
        assert_eq!(partitions_of(5).len(), 7);
        assert_eq!(partitions_of(10).len(), 42);
        // descending lex: first is (m), last is (1^m)
        let ps = partitions_of(4);
        assert_eq!(ps[0].parts(), &[4]);
        assert_eq!(ps.last().unwrap().parts(), &[1, 1, 1, 1]);
    }

    #[test]
    fn class_sizes_sum_to_group_order() {
        for m in 1..=7u64 {
            let total: BigInt = partitions_of(m).iter().map(|p| p.class_size()).sum();
            assert_eq!(total, factorial(m));
        }
    }

    #[test]
    fn rect_partitions() {
        // partitions of 4 inside 2x4: (4), (3,1), (2,2)
        assert_eq!(partitions_in_rect(4, 2, 4).len(), 3);
        for p in partitions_in_rect(6, 3, 3) {
            assert!(p.contained_in(&Partition::rect(3, 3)));
            assert_eq!(p.size(), 6);
        }
    }
}
