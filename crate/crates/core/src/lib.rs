//! Orthonormal Legendre-type bases on arbitrary intervals and rectangles.
//!
//! The classical Legendre polynomials, normalized and affinely rescaled,
//! give an orthonormal basis W_n(a,b,x) of L2[a,b] for any finite interval,
//! and tensor products extend this to rectangles in any dimension. On top of
//! the bases this crate provides:
//!
//! * Gauss-Legendre quadrature for exact inner products and projections
//!   ([`quadrature`]);
//! * separable n-dimensional projection and synthesis ([`tensor`]);
//! * an image pipeline that expands grayscale/RGB images in basis moments,
//!   reconstructs truncations, and measures quality ([`image`], [`netpbm`]);
//! * the su(1,1) ladder operators acting on basis indices, in both spectral
//!   and differential form, with algebra checks ([`su11`]);
//! * weighted coefficient seminorms and operator continuity diagnostics
//!   ([`seminorms`]);
//! * a deterministic verification suite covering all of the above
//!   ([`verify`]).

pub mod coeff;
pub mod domain;
pub mod error;
pub mod glp;
pub mod image;
pub mod netpbm;
pub mod quadrature;
pub mod seminorms;
pub mod su11;
pub mod tensor;
pub mod verify;

pub use coeff::CoeffVector;
pub use domain::{BasisSpec1D, BasisSpecND, Interval, RectDomain, MAX_DEGREE_CAP};
pub use error::{Error, Result};
pub use tensor::CoeffTensor;
