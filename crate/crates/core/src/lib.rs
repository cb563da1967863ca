//! Wedderburn decompositions of rational group algebras of small finite
//! groups via strong Shoda pairs, classification of the simple components,
//! and congruence-quotient fingerprints of unit groups.

pub mod classify;
pub mod cli;
pub mod cyclotomic;
pub mod data;
pub mod error;
pub mod fingerprint;
pub mod grouprings;
pub mod numtheory;
pub mod perm;
pub mod wedderburn;

pub use error::{Error, Result};

// The guide's snippets run as doctests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/groups.md")]
    mod groups {}
    #[doc = include_str!("../../../book/src/cyclotomics.md")]
    mod cyclotomics {}
    #[doc = include_str!("../../../book/src/decomposition.md")]
    mod decomposition {}
    #[doc = include_str!("../../../book/src/classification.md")]
    mod classification {}
    #[doc = include_str!("../../../book/src/fingerprints.md")]
    mod fingerprints {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
