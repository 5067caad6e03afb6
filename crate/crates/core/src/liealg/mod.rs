//! Root systems and the classical character ring.

mod cartan;
mod character;
mod weight;

use std::collections::HashMap;
use std::sync::Arc;

use once_cell::sync::Lazy;
use parking_lot::RwLock;

pub use cartan::{cartan_data, CartanData, CartanType, Series};
pub(crate) use character::irreducible_shared;
pub use character::{
    decompose, irreducible_character, tensor_character, tensor_product_all, weyl_dimension,
    CharacterJson, ClassicalCharacter, Decomposition, TermJson,
};
pub use weight::Weight;

use crate::error::Result;

static CARTAN: Lazy<RwLock<HashMap<CartanType, Arc<CartanData>>>> =
    Lazy::new(|| RwLock::new(HashMap::new()));

/// Shared Cartan data for a type, built once per process.
pub fn cartan_for(ty: CartanType) -> Result<Arc<CartanData>> {
    if let Some(cd) = CARTAN.read().get(&ty) {
        return Ok(cd.clone());
    }
    let cd = Arc::new(CartanData::new(ty)?);
    CARTAN.write().insert(ty, cd.clone());
    Ok(cd)
}
