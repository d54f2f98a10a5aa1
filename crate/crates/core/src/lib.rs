//! Two-dimensional natural Hamiltonian systems `ẍ = ∇U` that carry a second
//! integral of motion, cubic or quartic in the velocities, on the zero-energy
//! shell `ẋ² + ẏ² = 2U`.
//!
//! Models are generated from a single prepotential `p(s)`, or from a
//! generating function `E` / `F`, and come with their integral coefficients.
//! The crate checks them three ways: structure equations through exact jet
//! derivatives (with finite differences as a cross-check), master equations
//! of the generating function, and conservation along integrated
//! trajectories.
//!
//! ```
//! use integrable::models::catalog;
//! use integrable::verify::residual_structure;
//!
//! let m = catalog("quartic-ExQ", -12.0).unwrap();
//! assert!(residual_structure(&m, 1.3, 0.8).unwrap().normalized_max() < 1e-12);
//! ```

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod error;
pub mod dynamics;
pub mod expr;
pub mod field;
pub mod genfun;
pub mod io;
pub mod jet;
pub mod models;
pub mod prepotential;
pub mod quadrature;
pub mod symmetry;
pub mod verify;
