//! Exact-arithmetic toolkit for cluster seeds on braid varieties.
//!
//! A double braid word determines a cluster seed (cluster variables, exchange
//! matrix, torus) in two independent ways: scanning a double inductive weave
//! with tropical Lusztig rules, or reading orders of vanishing of generalized
//! minors along the Deodhar stratification. This crate computes both and
//! machine-checks that they agree.

pub mod braid;
pub mod cli;
pub mod cartan;
pub mod geometry;
pub mod plabic3d;
pub mod poly;
pub mod seeds;
pub mod tropical;
pub mod weave;
pub mod weyl;

pub use cartan::CartanData;
pub use braid::DoubleBraidWord;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("index {0} out of range (rank {1})")]
    IndexOutOfRange(usize, usize),
    #[error("invalid Cartan data: {0}")]
    InvalidCartan(String),
    #[error("invalid word: {0}")]
    InvalidWord(String),
    #[error("size guard exceeded: {0}")]
    SizeGuard(String),
    #[error("word is not reduced: {0:?}")]
    NotReduced(Vec<usize>),
    #[error("invalid move: {0}")]
    InvalidMove(String),
    #[error("Demazure product is not the longest element")]
    DemazureNotLongest,
    #[error("unsupported vertex of valence {0} in tropical propagation")]
    UnsupportedVertex(usize),
    #[error("depth {0} out of range (0..={1})")]
    DepthOutOfRange(usize, usize),
    #[error("singular matrix")]
    SingularMatrix,
    #[error("exact division failed: {0}")]
    InexactDivision(String),
    #[error("convention violation: {0}")]
    Convention(String),
    #[error("seed inconsistency: {0}")]
    SeedInconsistency(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
