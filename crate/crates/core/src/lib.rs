//! Index theory and explicit gauge fields for framed calorons.
//!
//! A caloron here is a unitary connection on `S¹ × R³` that approaches a
//! monopole-like boundary pair `(A∞, Φ∞)`. Its boundary data are the
//! eigenvalues `i·mu_j` of `Φ∞`, the Chern numbers `k_j` of the eigen-lines,
//! the circle parameter `mu0` and the framed second Chern number `k0`.
//!
//! * [`boundary`]: validated boundary data, the Fredholm criterion and the
//!   spectral gap.
//! * [`index`]: the `L²`-index as a sum of Callias indices over Fourier modes.
//! * [`eta`]: η-invariants of the circle operators and the adiabatic limit.
//! * [`nahm`]: the piecewise-constant rank profile `t ↦ −ind`.
//! * [`field`]: explicit smooth fields with prescribed boundary data and twist.
//! * [`chern_weil`]: quadrature of the Chern–Weil integrals of those fields.
//!
//! ```
//! use caloron_core::{boundary::BoundaryData, index::index_total};
//!
//! let data = BoundaryData::from_pairs(1.0, &[(0.3, 1), (-0.3, -1)], 1)?;
//! assert_eq!(index_total(&data, 0.0)?.total, -2);
//! # Ok::<(), caloron_core::Error>(())
//! ```

pub mod boundary;
pub mod chern_weil;
pub mod error;
pub mod eta;
pub mod field;
pub mod format;
pub mod index;
pub mod linalg;
pub mod nahm;
pub mod zeta;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/boundary-data.md")]
    mod boundary_data {}
    #[doc = include_str!("../../../book/src/index-formula.md")]
    mod index_formula {}
    #[doc = include_str!("../../../book/src/eta.md")]
    mod eta {}
    #[doc = include_str!("../../../book/src/nahm.md")]
    mod nahm {}
    #[doc = include_str!("../../../book/src/fields.md")]
    mod fields {}
    #[doc = include_str!("../../../book/src/quadrature.md")]
    mod quadrature {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
