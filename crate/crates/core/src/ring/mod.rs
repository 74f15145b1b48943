//! Exact coefficient rings with involution and matrices over them.

mod codec;
mod elem;
mod matrix;
mod spec;

pub use elem::{ring_arith, ArithOp, RingElem};
pub use matrix::InvMatrix;
pub use spec::{LaurentPoly, Monomial, RingSpec};
