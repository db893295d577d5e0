//! Weighted dual graphs of curve configurations on surfaces, their blowups
//! and contractions, cyclic-quotient resolution chains, branch-point
//! decompositions, and towers of monomial charts.

pub mod decompose;
pub mod error;
pub mod format;
pub mod graph;
pub mod hj;
mod intmat;
pub mod iso;
pub mod ratfunc;
pub mod sim;
pub mod tower;
mod upoly;
mod yseries;

pub use error::{Error, ErrorKind, Result};
pub use graph::{Vertex, WeightedDualGraph};
pub use iso::is_isomorphic;
pub use hj::{bezout_complement, recover_exponents, resolution_chain, transition_data, BezoutPair, HJChain, TransitionMatrix};
