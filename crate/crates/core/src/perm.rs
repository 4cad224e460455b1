//! Signs of integer sequences and small permutation utilities.

use crate::error::{Error, Result};

/// Sign of a sequence with entries in `[n]` where `n = a.len()`.
///
/// Returns `+1`/`-1` if the sequence is an even/odd permutation of
/// `1..=n` and `0` if any value repeats. Entries outside `[n]` are a
/// domain error.
pub fn sign_of_sequence(a: &[u8]) -> Result<i8> {
    let n = a.len();
    let mut seen = vec![false; n];
    for &v in a {
        if v == 0 || v as usize > n {
            return Err(Error::domain(format!(
                "sequence entry {v} out of range 1..={n}"
            )));
        }
        if seen[v as usize - 1] {
            return Ok(0);
        }
        seen[v as usize - 1] = true;
    }
    Ok(if inversions(a) % 2 == 0 { 1 } else { -1 })
}

/// Multi-sign `(-1)^inv(a)` of an arbitrary integer sequence.
///
/// Agrees with [`sign_of_sequence`] whenever `a` is a permutation.
pub fn multi_sign(a: &[u8]) -> i8 {
    if inversions(a) % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Number of strict inversions `a[i] > a[j]` with `i < j`.
pub fn inversions(a: &[u8]) -> usize {
    let mut inv = 0;
    for i in 0..a.len() {
        for j in i + 1..a.len() {
            if a[i] > a[j] {
                inv += 1;
            }
        }
    }
    inv
}

/// All permutations of `1..=n` in lexicographic order, paired with their signs.
pub fn permutations_with_signs(n: usize) -> Vec<(Vec<u8>, i8)> {
    let mut cur: Vec<u8> = (1..=n as u8).collect();
    let mut out = Vec::new();
    loop {
        let sign = if inversions(&cur) % 2 == 0 { 1 } else { -1 };
        out.push((cur.clone(), sign));
        if !next_permutation(&mut cur) {
            break;
        }
    }
    out
}

/// Advances `a` to its lexicographic successor; returns false at the last one.
fn next_permutation(a: &mut [u8]) -> bool {
    if a.len() < 2 {
        return false;
    }
    let mut i = a.len() - 1;
    while i > 0 && a[i - 1] >= a[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = a.len() - 1;
    while a[j] <= a[i - 1] {
        j -= 1;
    }
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}
