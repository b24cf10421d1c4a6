//! Galois hulls of Gabidulin codes over self-dual bases.
//!
//! [`basis`] builds self-dual bases of GF(q^m) over GF(q) by congruence,
//! [`gabidulin`] the codes and their e-Galois duals, [`hull`] the hull
//! dimension in closed form next to a rank oracle, and [`eaqecc`] the
//! entanglement-assisted quantum codes they give. The guide in `book/` walks
//! through each step.

pub mod basis;
pub mod cli;
pub mod eaqecc;
pub mod error;
pub mod field;
pub mod gabidulin;
pub mod hull;
pub mod linalg;
pub mod report;
pub mod sweep;

pub use error::{Error, Result};

// The book's snippets run as doctests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/fields.md")]
    mod fields {}
    #[doc = include_str!("../../../book/src/self-dual-bases.md")]
    mod self_dual_bases {}
    #[doc = include_str!("../../../book/src/codes.md")]
    mod codes {}
    #[doc = include_str!("../../../book/src/hulls.md")]
    mod hulls {}
    #[doc = include_str!("../../../book/src/eaqecc.md")]
    mod eaqecc {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
    #[doc = include_str!("../../../README.md")]
    mod readme {}
}
