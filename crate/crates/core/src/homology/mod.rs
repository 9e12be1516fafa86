//! Integer cellular homology via Smith normal form.

mod chain;
mod matrix;
mod snf;

pub use chain::{homology, CellularChains, ChainComplex, CurveClass, Homology, HomologyError};
pub use matrix::IntegerMatrix;
pub use snf::{smith_normal_form, SmithForm};

#[cfg(test)]
mod tests;
