//! Exact computations for finite set-theoretic solutions of the Yang–Baxter
//! equation: derived racks, structure monoids and their word problem, the
//! bijective 1-cocycle, prime spectra, and graded structure algebras.

pub mod algebra;
pub mod brute;
pub mod catalog;
pub mod cocycle;
pub mod context;
pub mod corpus;
pub mod engine;
pub mod enumerate;
pub mod error;
pub mod field;
pub mod identities;
pub mod linalg;
pub mod perm;
pub mod presentation;
pub mod report;
pub mod sigma;
pub mod solution;
pub mod spectrum;
pub mod subset;
mod uf;
pub mod word;

pub use context::Context;
pub use engine::{DegreeClasses, WordEngine};
pub use error::{Error, Result};
pub use perm::Permutation;
pub use presentation::{Kind, Presentation};
pub use sigma::{sigma_system, SigmaSystem};
pub use solution::{PropertyFlags, Solution};
pub use subset::Subset;
pub use word::Word;
