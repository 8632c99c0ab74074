//! Exact linear algebra over the Gaussian rationals.

pub mod gauss;
pub mod matrix;
pub mod poly;
pub mod subspace;

pub use gauss::Gq;
pub use matrix::Mat;
pub use poly::RealPolynomial2;
pub use subspace::Subspace;
