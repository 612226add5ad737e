//! Exact algebra for the classification of fake lens spaces with
//! fundamental group of order `N = 2^K`.

pub mod error;
pub mod expr;
pub mod best;
pub mod lattice;
pub mod poly;
pub mod structure;
pub mod ring;
pub mod valuation;
pub mod verify;

pub use error::{Error, Result};
pub use poly::IntPolynomial;
pub use ring::{LevelProjection, RingElement, Sign};
