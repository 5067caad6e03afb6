//! Exact characters of Kirillov-Reshetikhin modules.
//!
//! The crate is organised bottom-up:
//!
//! - [`liealg`]: Cartan data, root systems, and the classical character ring
//!   (Freudenthal multiplicities, tensor products, decomposition).
//! - [`partitions`]: the reverse dominance order on partitions, its covers,
//!   and the comparison predicate on partitions of a dominant weight.
//! - [`qchar`]: Y-monomials, the Frenkel-Mukhin algorithm for KR modules,
//!   T-system checks and restriction to classical characters.
//! - [`krmodules`]: classical KR characters, tensor products along
//!   partitions, and the verification suites built on them.
//!
//! All arithmetic is exact: multiplicities are `i64` with checked operations,
//! and any overflow surfaces as [`Error::Overflow`].

pub mod error;
pub mod krmodules;
pub mod liealg;
pub mod partitions;
pub mod qchar;

pub use error::{Error, Result};
