//! Cells of the box [k]^d, ordered lexicographically.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A point of [k]^d with 1-based coordinates. The derived `Ord` is the
/// lexicographic order from the first coordinate, which is the order used
/// everywhere (slice reading, basis indices, enumeration).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Cell(pub Vec<u8>);

impl Cell {
    pub fn new(coords: Vec<u8>, k: u8) -> Result<Self> {
        if coords.iter().any(|&c| c == 0 || c > k) {
            return Err(Error::domain(format!(
                "cell coordinates must lie in 1..={k}"
            )));
        }
        Ok(Cell(coords))
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coord(&self, direction: usize) -> u8 {
        self.0[direction]
    }
}

/// All cells of [k]^d in lexicographic order.
pub fn all_cells(d: usize, k: u8) -> Vec<Cell> {
    let mut out = Vec::with_capacity((k as usize).pow(d as u32));
    let mut cur = vec![1u8; d];
    loop {
        out.push(Cell(cur.clone()));
        // lexicographic successor: increment from the last coordinate
        let mut i = d;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < k {
                cur[i] += 1;
                for c in &mut cur[i + 1..] {
                    *c = 1;
                }
                break;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lex_order() {
        let cells = all_cells(3, 2);
        assert_eq!(cells.len(), 8);
        assert_eq!(cells[0].0, vec![1, 1, 1]);
        assert_eq!(cells[1].0, vec![1, 1, 2]);
        assert_eq!(cells[7].0, vec![2, 2, 2]);
        let mut sorted = cells.clone();
        sorted.sort();
        assert_eq!(sorted, cells);
    }

    #[test]
    fn bounds_checked() {
        assert!(Cell::new(vec![1, 3], 2).is_err());
        assert!(Cell::new(vec![0, 1], 2).is_err());
        assert!(Cell::new(vec![2, 2], 2).is_ok());
    }
}
