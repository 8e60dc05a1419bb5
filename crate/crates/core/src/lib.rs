//! Exact apolarity and syzygy computations for lower bounds on Waring rank
//! and cactus rank, with certificates for rank(det₃) ≥ 15 and
//! cactusrank(per₃) ≥ 14.

#![allow(clippy::needless_range_loop)]

pub mod apolar;
pub mod certify;
pub mod error;
pub mod graded;
pub mod lexmac;
pub mod linalg;
pub mod polyring;
pub mod scalars;
pub mod witness;

pub use error::{Error, Result};
