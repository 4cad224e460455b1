//! Exact computation of polynomial SL-invariants of tensors, signed
//! Latin-hypercube sums, exterior-algebra highest weight vectors and
//! rectangular Kronecker coefficients.

pub mod cell;
pub mod delta;
pub mod error;
pub mod exterior;
pub mod hypermatrix;
pub mod kronecker;
pub mod latin;
pub mod partition;
pub mod perm;
pub mod scalar;
pub mod table;

pub use cell::Cell;
pub use error::{Error, Result};
pub use hypermatrix::Hypermatrix;
pub use partition::Partition;
pub use scalar::ExactScalar;
pub use table::{BalancedTable, SetPartitionTuple};
