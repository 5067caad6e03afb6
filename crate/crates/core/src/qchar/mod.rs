//! q-characters of Kirillov-Reshetikhin modules.
//!
//! Spectral parameters are restricted to integer powers `a = q^c`; the
//! variable `Y_{i,q^c}` is stored as `(i, c)`.

mod cache;
mod character;
mod fm;
mod monomial;
pub mod sl2;
mod tsystem;

pub use cache::{kr_qcharacter, CacheFile, CacheTerm, QCharCache, CACHE_DIR_ENV};
pub use character::{dominant_monomials, node_string_closure, qchar_product, QCharacter};
pub use fm::{fm_qcharacter, DEFAULT_TERM_BUDGET};
pub use monomial::{a_exponents, a_monomial, kr_highest_monomial, monomial_leq, YMonomial};
pub use tsystem::{
    kr_factors_of, tsystem_verify, tsystem_verify_with, two_factor_dominant_list,
    two_factor_dominant_list_with, two_factor_highest, KrFactor, MonomialCount, TSystemReport,
    TwoFactorReport,
};

use crate::error::Result;
use crate::liealg::ClassicalCharacter;

/// Classical limit: `Y_{i,c} -> omega_i`.
pub fn restrict_classical(qc: &QCharacter) -> Result<ClassicalCharacter> {
    qc.restrict_classical()
}
