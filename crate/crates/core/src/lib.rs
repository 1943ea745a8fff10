//! Exact computations in the extended affine Weyl group of type B̃3 attached
//! to `Sp6(C)`: Kazhdan-Lusztig polynomials, cells, Lusztig's a-function,
//! the structure constants of the asymptotic ring `J` on the two-sided cell
//! with three equal Jordan blocks, and the comparison of `J` with the
//! representation ring of `O3(C)`.

pub mod cells;
pub mod error;
pub mod hecke;
pub mod jring;
pub mod laurent;
pub mod num;
pub mod o3rep;
pub mod reference;
pub mod steps;
pub mod verify;
pub mod weyl;
pub use error::{Error, Result};
