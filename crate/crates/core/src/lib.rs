//! Exact counting of representations of residues modulo `n` as sums of
//! `k` exceptional units.
//!
//! A unit `u` of `Z/nZ` is *exceptional* when `1 - u` is also a unit. This
//! crate counts the ordered `k`-tuples of exceptional units whose sum is a
//! given residue `c`, both through a closed form (prime case, prime-power
//! lifting, multiplicative assembly) and through brute-force oracles that
//! share no code with the closed form.
//!
//! ```
//! use exunits_core::{arith::factorize, repcount::{phi_k, CountQuery}};
//!
//! let query = CountQuery::new(15, 3, 0).unwrap();
//! let factors = factorize(15).unwrap();
//! assert_eq!(phi_k(&query, &factors).unwrap(), 6.into());
//! ```

pub mod arith;
mod error;
pub mod limits;
pub mod oracle;
pub mod repcount;
pub mod residues;

pub use arith::{BigCount, Factorization};
pub use error::{Error, Result};
pub use limits::Limits;
pub use oracle::SumsetTable;
pub use repcount::{CountQuery, SignPlacement};
pub use residues::{ResidueSubset, SubsetKind};
