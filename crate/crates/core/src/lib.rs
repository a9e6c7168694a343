//! Exact verification and numerical tooling for badly approximable triples
//! summing to one, and for the generalized tilings they parametrize.

pub mod cf;
pub mod delone;
pub mod gifs;
pub mod io;
pub mod quadfield;
pub mod theorem;

pub use quadfield::{QuadError, QuadRat, Rat};
