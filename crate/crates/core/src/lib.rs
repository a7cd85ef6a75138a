//! Exact Casimir spectra and equivariant quantizations for the orthogonal and
//! symplectic 3-graded Lie algebras of polynomial vector fields.

pub mod algebra;
pub mod casimir;
pub mod critical;
pub mod error;
pub mod ferrers;
pub mod linalg;
pub mod poly;
pub mod quantization;
pub mod rational;
pub mod space;
pub mod symbol;
pub mod vector_field;

pub use error::{Error, Result};
pub use rational::Q;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    struct Readme;
    #[doc = include_str!("../../../book/src/introduction.md")]
    struct Introduction;
    #[doc = include_str!("../../../book/src/algebras.md")]
    struct Algebras;
    #[doc = include_str!("../../../book/src/symbols.md")]
    struct Symbols;
    #[doc = include_str!("../../../book/src/diagrams.md")]
    struct Diagrams;
    #[doc = include_str!("../../../book/src/casimir.md")]
    struct Casimir;
    #[doc = include_str!("../../../book/src/critical.md")]
    struct Critical;
    #[doc = include_str!("../../../book/src/quantization.md")]
    struct Quantization;
}
