pub mod arith;
pub mod error;
pub mod ring;

pub use error::{Error, Result};
pub use ring::{InvMatrix, RingElem, RingSpec};
pub mod stab;
pub mod forms;
pub mod invariants;
pub mod bott;
pub mod lift;
