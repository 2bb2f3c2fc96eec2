//! Numerics for q-deformed coherent states and the q-deformed polyanalytic
//! Bargmann transform.
//!
//! The crate is layered bottom-up:
//! - [`qcore`] — q-Pochhammer symbols, q-binomials, e_q, and basic
//!   hypergeometric series (₂φ₁, terminating ₃φ₂);
//! - [`qpolys`] — the polynomial families: continuous q-Hermite, Wall,
//!   Al-Salam-Chihara, 2D q-Hermite, plus classical Hermite/Laguerre and
//!   2D complex Hermite oracles and Cauchy polynomials;
//! - [`measure`] — the weight ω_q with its orthonormal functions φ_j^q on the
//!   interval I_q (with quadrature), and the discrete-circle measure dμ_q;
//! - [`coherent`] — coherent-state coefficients h_j^{m,q}, normalization,
//!   wavefunctions (series and closed form) and the overlap kernel;
//! - [`transform`] — the q-deformed polyanalytic Bargmann transform B_m^q,
//!   its m = 0 product-kernel specialization, classical comparison
//!   transforms, and isometry tooling;
//! - [`verify`] — a named, parameter-swept identity/limit check suite that
//!   emits structured [`verify::VerificationReport`]s.

pub mod coherent;
pub mod error;
pub mod measure;
pub mod qcore;
pub mod qpolys;
pub mod quadrature;
pub mod transform;
pub mod verify;

pub use error::{Error, Result};
pub use qcore::{DeformationParameter, TruncationPolicy};
