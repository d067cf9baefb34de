//! Exact arithmetic for the `ell`-modular Asai L-factor of cuspidal
//! representations of `GL_n(F)`, `F/F_o` quadratic.
//!
//! * [`charlattice`]: the finite-level character lattice (Green/James
//!   parameters, duality, `ell`-regular/singular splitting, lifts).
//! * [`padic`]: validation of type-theoretic data and the invariants
//!   `e_o`, `q_o^{n/e_o}`, banality, `X_o(pi)`.
//! * [`lfactor`]: Euler factors as root multisets, Asai L-factors, periods.
//! * [`oracle`]: brute-force cross-checks of the closed forms.

pub mod arith;
pub mod charlattice;
pub mod error;
pub mod lfactor;
pub mod oracle;
pub mod padic;

pub use error::{Error, Result};
