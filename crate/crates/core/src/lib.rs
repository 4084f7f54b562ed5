//! Exact symbolic engine for the quantum matrix bialgebra `O_q(M_n)`.
//!
//! * [`poly`]: Laurent polynomials in `q`, the coefficient ring.
//! * [`algebra`]: words and tensors in the free algebra on the `a_ij`.
//! * [`rewrite`]: Manin relations and the normal-form oracle.
//! * [`fg`]: F/G operations and order-targeting reorderings.
//! * [`minors`]: quantum row/column minors and index normalization.
//! * [`towers`]: standard towers and intertwining orders.
//! * [`commutation`]: C-set recursions and the relation generator.
//! * [`verify`]: relation verification and exhaustive sweeps.
//! * [`fixtures`]: stored golden relations and their comparison.

pub mod algebra;
pub mod commutation;
mod descent;
pub mod error;
pub mod fg;
pub mod fixtures;
pub mod minors;
pub mod poly;
pub mod rewrite;
pub mod towers;
pub mod verify;

pub use algebra::{Gen, Perm, RawIndex, Tensor, Word};
pub use error::{Error, ParseError, Result};
pub use poly::LaurentPoly;
