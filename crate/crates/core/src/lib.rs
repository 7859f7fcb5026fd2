//! Quotient and restricted singular values through cross-product-free
//! augmented pencils.
//!
//! The crate builds the classical squared and augmented pencils alongside
//! the cross-product-free forms, solves them with a native complex QZ
//! iteration, turns eigenvalue quadruples `±√σ, ±i√σ` back into singular
//! values and vectors, predicts and verifies Kronecker structure, and runs
//! accuracy experiments against double-double ground truth.

pub mod bench;
pub mod eigen;
pub mod error;
pub mod genmat;
pub mod kcf;
pub mod matcore;
pub mod pencil;
pub mod recovery;

pub use error::{Error, Result};
