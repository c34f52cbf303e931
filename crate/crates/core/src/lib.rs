//! Exact symbolic verification of the orthosymplectic Lie superalgebras
//! osp(1|2n), their triangular r-matrices, jordanian twist chains and the
//! quantum R- and L-operators built from them.
//!
//! Every identity is certified twice: in the truncated universal enveloping
//! algebra (PBW normal forms, [`pbw`]) and in the defining representation
//! (exact nilpotent matrix calculus, [`repmat`]).

pub mod algebra;
pub mod dump;
pub mod error;
pub mod expr;
pub mod linalg;
pub mod parse;
pub mod pbw;
pub mod quantum;
pub mod repmat;
pub mod rmatrix;
pub mod scalar;
pub mod suite;
pub mod twist;

pub use error::{Error, Result};
