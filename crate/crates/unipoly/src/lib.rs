//! Exact difference calculus for polynomial maps into unitriangular
//! matrix groups.
//!
//! The crate provides:
//!
//! * [`scalar`] and [`mpoly`]: arbitrary-precision rational and modular
//!   scalars, and sparse multivariate polynomials with named variable
//!   blocks;
//! * [`unitri`]: upper unitriangular matrices over any of those rings,
//!   with the lower-central-series tooling (`phi_k`, truncation,
//!   membership levels);
//! * [`polymap`]: maps from `ℕ₀^N` into a unitriangular group whose
//!   entries are polynomials, with left/right difference operators, exact
//!   symbolic degree and lc-degree, and chain-sum degree bounds;
//! * [`symmetrize`]: iterated symmetrization under the coordinate action
//!   of the symmetric group, and the associated 1-cocycles;
//! * [`sequences`]: single-variable polynomial sequences (periods modulo
//!   m, exact interpolation, value multiplicities) and a concrete
//!   non-polynomial conjugation sequence built on Fibonacci numbers;
//! * [`kamke`]: an explicit polynomial parameterization of box-like
//!   regions pinched between power functions, with exact membership and
//!   Jacobian-rank checks.

pub mod degree;
pub mod error;
pub mod interp;
pub mod kamke;
pub mod mpoly;
pub mod polymap;
pub mod scalar;
pub mod sequences;
pub mod symmetrize;
pub mod unitri;

pub use degree::Degree;
pub use error::{Error, Result};
pub use interp::lagrange_fit;
pub use mpoly::{Layout, MPoly, Monomial};
pub use polymap::{DiffSide, LcDegree, PolyMap};
pub use scalar::{RingTag, Scalar};
pub use unitri::{DiagonalVector, GroupElem, RingElem, UniTri};
