//! Exact δ-invariants (half of the d-invariants) of Seifert rational homology
//! spheres fibering over ℝP², built on exact Dedekind, Dedekind–Rademacher and
//! λ sums.
//!
//! A typical call sequence parses [`SeifertData`], normalizes it, enumerates its
//! spin^c structures with [`enumerate_spinc`] and evaluates [`delta`] on each one,
//! or asks for the whole [`delta_multiset`] at once.

pub mod arith;
pub mod error;
pub mod invariants;
pub mod lens;
pub mod plumbing;
pub mod prism;
pub mod seifert;
pub mod spinc;
pub mod verify;

pub use arith::{rat, Rational};
pub use error::{Error, Result};
pub use invariants::{
    delta, delta_multiset, delta_pair, delta_via_n, GeomPoly, PlusFirst, Sign, SignPolicy, SignedHalf,
    SignedValue, Unresolved,
};
pub use seifert::{LineBundleClass, SeifertData};
pub use spinc::{enumerate_spinc, HolonomyClass, SpinCStructure, Tau};
