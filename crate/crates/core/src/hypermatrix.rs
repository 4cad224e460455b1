//! Sparse exact tensors (hypermatrices).

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::ExactScalar;

/// A tensor of shape n_1×…×n_d stored as a sparse map from 1-based index
/// tuples to nonzero scalars. Absent indices read as zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypermatrix {
    shape: Vec<u32>,
    entries: BTreeMap<Vec<u8>, ExactScalar>,
}

impl Hypermatrix {
    pub fn zero(shape: Vec<u32>) -> Self {
        Hypermatrix {
            shape,
            entries: BTreeMap::new(),
        }
    }

    /// The unit tensor I_n of order d: ones at (i, …, i).
    pub fn unit(d: usize, n: u32) -> Self {
        let mut x = Hypermatrix::zero(vec![n; d]);
        for i in 1..=n as u8 {
            x.entries.insert(vec![i; d], ExactScalar::one());
        }
        x
    }

    pub fn shape(&self) -> &[u32] {
        &self.shape
    }

    pub fn order(&self) -> usize {
        self.shape.len()
    }

    fn check_index(&self, idx: &[u8]) -> Result<()> {
        if idx.len() != self.shape.len()
            || idx
                .iter()
                .zip(&self.shape)
                .any(|(&i, &n)| i == 0 || i as u32 > n)
        {
            return Err(Error::domain(format!(
                "index {idx:?} outside shape {:?}",
                self.shape
            )));
        }
        Ok(())
    }

    /// Set the entry at a 1-based index, dropping it if the value is zero.
    pub fn set(&mut self, idx: Vec<u8>, value: ExactScalar) -> Result<()> {
        self.check_index(&idx)?;
        if value.is_zero() {
            self.entries.remove(&idx);
        } else {
            self.entries.insert(idx, value);
        }
        Ok(())
    }

    /// Read the entry at a 1-based index; absent entries are zero.
    pub fn get(&self, idx: &[u8]) -> ExactScalar {
        self.entries.get(idx).cloned().unwrap_or_default()
    }

    pub fn get_ref(&self, idx: &[u8]) -> Option<&ExactScalar> {
        self.entries.get(idx)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Vec<u8>, &ExactScalar)> {
        self.entries.iter()
    }

    pub fn num_entries(&self) -> usize {
        self.entries.len()
    }

    /// Outer tensor product: (X⊗Y)_{(i,j)} = X_i · Y_j.
    pub fn outer_product(&self, other: &Hypermatrix) -> Hypermatrix {
        let mut shape = self.shape.clone();
        shape.extend_from_slice(&other.shape);
        let mut out = Hypermatrix::zero(shape);
        for (a, va) in &self.entries {
            for (b, vb) in &other.entries {
                let mut idx = a.clone();
                idx.extend_from_slice(b);
                out.entries.insert(idx, va.clone() * vb);
            }
        }
        out
    }

    /// Swap the slices `a` and `b` (1-based) along `direction` (0-based).
    pub fn with_slices_swapped(&self, direction: usize, a: u8, b: u8) -> Hypermatrix {
        let mut out = Hypermatrix::zero(self.shape.clone());
        for (idx, v) in &self.entries {
            let mut idx = idx.clone();
            if idx[direction] == a {
                idx[direction] = b;
            } else if idx[direction] == b {
                idx[direction] = a;
            }
            out.entries.insert(idx, v.clone());
        }
        out
    }
}

#[derive(Serialize, Deserialize)]
struct EntryRepr {
    idx: Vec<u8>,
    num: String,
    den: String,
}

#[derive(Serialize, Deserialize)]
struct HypermatrixRepr {
    shape: Vec<u32>,
    entries: Vec<EntryRepr>,
}

impl Serialize for Hypermatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        HypermatrixRepr {
            shape: self.shape.clone(),
            entries: self
                .entries
                .iter()
                .map(|(idx, v)| EntryRepr {
                    idx: idx.clone(),
                    num: v.numer().to_string(),
                    den: v.denom().to_string(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Hypermatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = HypermatrixRepr::deserialize(d)?;
        let mut x = Hypermatrix::zero(repr.shape);
        for e in repr.entries {
            let num = e
                .num
                .parse()
                .map_err(|_| serde::de::Error::custom(format!("bad numerator {:?}", e.num)))?;
            let den = e
                .den
                .parse()
                .map_err(|_| serde::de::Error::custom(format!("bad denominator {:?}", e.den)))?;
            let v = ExactScalar::new(num, den).map_err(|er| serde::de::Error::custom(er.to_string()))?;
            x.set(e.idx, v).map_err(|er| serde::de::Error::custom(er.to_string()))?;
        }
        Ok(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_tensor() {
        let x = Hypermatrix::unit(3, 2);
        assert_eq!(x.num_entries(), 2);
        assert_eq!(x.get(&[1, 1, 1]), ExactScalar::one());
        assert_eq!(x.get(&[1, 1, 2]), ExactScalar::zero());
    }

    #[test]
    fn absent_in_shape_reads_zero() {
        let x = Hypermatrix::zero(vec![2, 2]);
        assert!(x.get(&[2, 1]).is_zero());
    }

    #[test]
    fn set_zero_removes() {
        let mut x = Hypermatrix::zero(vec![2]);
        x.set(vec![1], ExactScalar::from_int(3)).unwrap();
        x.set(vec![1], ExactScalar::zero()).unwrap();
        assert_eq!(x.num_entries(), 0);
        assert!(x.set(vec![3], ExactScalar::one()).is_err());
    }

    #[test]
    fn outer_product_of_units() {
        let a = Hypermatrix::unit(2, 2);
        let b = Hypermatrix::unit(1, 3);
        let p = a.outer_product(&b);
        assert_eq!(p.shape(), &[2, 2, 3]);
        assert_eq!(p.num_entries(), 6);
        assert_eq!(p.get(&[2, 2, 3]), ExactScalar::one());
    }

    #[test]
    fn json_round_trip() {
        let mut x = Hypermatrix::zero(vec![2, 2]);
        x.set(vec![1, 2], ExactScalar::new(3.into(), 2.into()).unwrap())
            .unwrap();
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(
            s,
            r#"{"shape":[2,2],"entries":[{"idx":[1,2],"num":"3","den":"2"}]}"#
        );
        let y: Hypermatrix = serde_json::from_str(&s).unwrap();
        assert_eq!(x, y);
    }
}
