//! tensorcat: an exact-arithmetic toolkit for semisimple modular tensor
//! categories and finite-dimensional ribbon Hopf algebras.
//!
//! Everything is computed over cyclotomic fields `Q(zeta_N)` with decidable
//! equality; floating point never enters a decision. The main entry points:
//!
//! - [`cyclo`]: rationals and cyclotomic numbers.
//! - [`modular`]: modular data (S, T), validation, built-in families.
//! - [`fusion`]: Verlinde fusion rules and fusion-algebra characters.
//! - [`invariants`]: classification of modular invariant matrices.
//! - [`hopf`]: structure-constant Hopf algebras, integrals, Frobenius
//!   structure, R-matrices, factorizability.
//! - [`coend`]: the coend Hopf algebra of H-Mod with its SL(2,Z) data.

pub mod coend;
pub mod cyclo;
pub mod fusion;
pub mod hopf;
pub mod invariants;
pub mod json;
pub mod modular;
pub mod embed;
pub mod matrix;
pub mod validation;

pub use cyclo::{Cyclotomic, Rational};
pub use matrix::Matrix;
