//! Exact computations with generalized complex structures.
//!
//! The crate is organised bottom-up:
//!
//! * [`scalar`], [`poly`], [`linalg`]: exact Gaussian rationals, sparse
//!   polynomials over them and dense elimination.
//! * [`form`], [`genvec`], [`spin`]: mixed-degree forms, the Clifford action
//!   of `V ⊕ V*` and the spin representation with the Mukai pairing.
//! * [`isotropic`]: maximal isotropic subspaces and their pure spinor lines.
//! * [`gc`]: linear generalized complex structures.
//! * [`fields`]: polynomial sections on a chart, Courant brackets and
//!   integrability tests.
//! * [`branes`]: submanifolds, generalized tangent bundles and pullbacks.

pub mod branes;
pub mod error;
pub mod fields;
pub mod form;
pub mod gc;
pub mod genvec;
pub mod isotropic;
pub mod linalg;
pub mod poly;
pub mod random;
pub mod scalar;
pub mod spin;

pub use error::{Error, Result};
pub use form::{MixedForm, Variance, MAX_DIM};
pub use genvec::GenVector;
pub use linalg::Mat;
pub use poly::{Monomial, Poly};
pub use scalar::{Coeff, Qi, Q};
