//! Exact arithmetic with classes of log varieties.
//!
//! A [`log_ring::LogClass`] is `a + b·P` over the Grothendieck ring of
//! varieties, reduced by `P·(P + L - 1) = 0`. Classes come from
//! expressions ([`expr`]), fans ([`fan`]) or normal crossings pairs
//! ([`snc`]), and map to Euler characteristics and Hodge polynomials.
//! [`oracle`] computes log Hodge numbers independently for comparison.

pub mod error;
pub mod log_ring;
pub mod motive;
pub mod poly;
pub mod fan;
pub mod linalg;
pub mod snc;
pub mod oracle;
pub mod expr;
pub mod verify;
pub mod cli;

pub use error::{Error, Result};
pub use log_ring::LogClass;
pub use motive::{MotiveClass, SymbolTable};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/log-ring.md")]
    mod log_ring {}
    #[doc = include_str!("../../../book/src/toric.md")]
    mod toric {}
    #[doc = include_str!("../../../book/src/snc.md")]
    mod snc {}
    #[doc = include_str!("../../../book/src/hodge.md")]
    mod hodge {}
    #[doc = include_str!("../../../book/src/duality.md")]
    mod duality {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
