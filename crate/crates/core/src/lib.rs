//! Computations in the reduced free-group algebras and the non-commutative
//! disk algebras on the full Fock space.
//!
//! * [`words`]: reduced group words, monoid words, embeddings and the subset
//!   predicates behind every projection and partition.
//! * [`poly`]: polynomials with scalar or matrix coefficients.
//! * [`fockrep`]: truncated left-multiplication operators and certified
//!   lower bounds for operator norms.
//! * [`opspace`]: row/column norms, the generator splitting, two-sided norm
//!   bounds on coset sums and projection bounds.
//! * [`vncheck`]: random row contractions and the non-commutative von Neumann
//!   inequality.
//! * [`expr`], [`report`], [`suites`]: text syntax, JSON reports and the
//!   verification suites driven by the CLI.

pub mod error;
pub mod expr;
pub mod fockrep;
pub mod linalg;
pub mod opspace;
pub mod poly;
pub mod random;
pub mod report;
pub mod suites;
pub mod vncheck;
pub mod words;

pub use error::{Error, Result};
pub use fockrep::{Ball, EstimateKind, NormEstimate, PowerOptions, TruncOp};
pub use linalg::{CMatrix, C64};
pub use poly::{GroupPoly, MonoidPoly, Poly};
pub use words::{Alphabet, Gen, GroupWord, Letter, Mode, MonoidWord, Tag, Word};
