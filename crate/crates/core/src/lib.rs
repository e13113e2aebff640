//! Power-law fundamental solutions of the polyharmonic equation, their
//! Jacobi, Gegenbauer, Chebyshev and Fourier expansions, polyspherical
//! hyperspherical harmonics, and numerical checks of the resulting addition
//! theorems.

pub mod cli;
pub mod error;
pub mod expansions;
pub mod kernels;
pub mod orthopoly;
pub mod polyspherical;
pub mod quadrature;
pub mod specfun;
pub mod summation;
pub mod verify;

pub use error::{Error, Result};
