//! Exact computations in the anti-spherical Hecke category of type `(D_n, A_{n−1})`.

pub mod algebra;
pub mod cells;
pub mod contraction;
pub mod cups;
pub mod error;
pub mod orient;
pub mod scalar;
pub mod tiles;
pub mod weight;

pub use algebra::{basis, Algebra, Element, Generator, Rule, Triple};
pub use cups::{cup_diagram, Cup, CupDiagram};
pub use error::{Error, Result};
pub use orient::{dp_set, kl_polynomial, orient, KlPolynomial};
pub use scalar::Scalar;
pub use tiles::{Tile, TilePartition};
pub use weight::{enumerate_weights, Arrow, Weight};

/// Gaussian integers `ℤ[i]`.
pub type GaussInt = num_complex::Complex<num_bigint::BigInt>;
/// Floating-point complex coefficients.
pub type ComplexF64 = num_complex::Complex<f64>;
/// The algebra over `ℤ[i]`.
pub type Hecke = Algebra<GaussInt>;
