//! Numerical toolkit for quantum electrodynamics with constant CPT-odd
//! Lorentz-violating backgrounds `a_mu` and `b_mu`.
//!
//! Every closed-form result shipped here is paired with an independent
//! numerical route (exact diagonalisation, quadrature, matrix inversion or
//! exact rational bookkeeping) so the two can be compared in tests.
//!
//! Conventions: natural units, metric `diag(+, -, -, -)`, `eps^{0123} = +1`,
//! `eps^{012} = +1`, Dirac representation with
//! `gamma^5 = i gamma^0 gamma^1 gamma^2 gamma^3` and the axial coupling
//! written with `gamma_5 = -gamma^5`.

pub mod clifford;
pub mod dirac_lv;
pub mod error;
pub mod landau_penning;
pub mod loop_tools;
pub mod photon_lv;
pub mod poly;
pub mod quadrature;
pub mod selftest;
pub mod tensor_core;
pub mod zeeman_fw;

pub use error::{LvError, LvResult};
