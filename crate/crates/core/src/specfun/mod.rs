//! Scalar special functions: gamma, Pochhammer, hypergeometric series,
//! Legendre and Ferrers functions, and the Jacobi function of the second kind.
//!
//! Every Legendre function of the second kind is handled in phase-free form
//! Q̂_ν^μ(z) = e^{−iπμ} Q_ν^μ(z), which is real for z > 1.

mod gamma;
mod hypergeometric;
mod jacobi_q;
mod legendre;

pub use gamma::{double_factorial, factorial, gamma, ln_factorial, ln_gamma, neumann, pochhammer, rgamma};
pub use hypergeometric::{gauss_2f1, gauss_2f1_regularized, hyp_3f2_unit};
pub use jacobi_q::{jacobi_q2, jacobi_q2_far};
pub use legendre::{ferrers_p, legendre_p_gt1, legendre_q_hat, legendre_q_hat_far, PhaseFreeQ, BRANCH_GUARD};

pub(crate) use gamma::{is_integer, is_nonpositive_integer};
pub(crate) use jacobi_q::jacobi_q2_scaled;
pub(crate) use legendre::{legendre_p_gt1_scaled, legendre_q_hat_scaled};
