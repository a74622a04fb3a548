//! Periodic-point counts and exact correlation and pairing sums for
//! trigonometric polynomials.

pub mod fixcount;
pub mod pairing;
pub mod snf;
pub mod trig;

pub use fixcount::{fix_count_oracle, fix_count_product, fix_row, FixCount, FixRow};
pub use pairing::{correlation, periodic_pairing};
pub use snf::smith_diagonal;
pub use trig::{GaussQ, TrigPolynomial};
