//! Univariate polynomial arithmetic over Q, Z/p^k and F_p.

pub mod fp;
pub mod qpoly;
pub mod roots;
pub mod zfactor;

pub use fp::FpPoly;
pub use qpoly::QPoly;
