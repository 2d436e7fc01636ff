//! Symbolic mod-2 characteristic-class calculus for quadric bundles.
//!
//! The crate builds graded F2-algebra presentations of the cohomology rings
//! of orthogonal and general-orthogonal classifying stacks, computes the
//! primitive (twist-invariant) classes, evaluates Gysin boundary maps through
//! a partial boundary table plus the projection formula, and analyzes
//! degenerating symmetric bilinear forms over the local model k[t] of a
//! regular codimension-1 pair.
//!
//! Module map:
//!
//! - [`f2linalg`]: bit-packed exact linear algebra over F2 (the kernel every
//!   degreewise computation reduces to).
//! - [`gralg`]: graded-commutative presentations, degreewise bases and normal
//!   forms, tensor products, algebra morphisms, and the polynomial expression
//!   grammar.
//! - [`rings`]: the concrete ring registry (BO, BGL, BGm, odd BSO/BGO) and the
//!   file format for even-rank general-orthogonal presentations.
//! - [`primitive`]: the twist coproduct and primitive-class computation.
//! - [`gysin`]: Gysin data, boundary evaluation, long-exact-sequence
//!   verification, the restriction map to one rank down, and the degeneration
//!   map delta.
//! - [`quadbundle`]: symmetric polynomial matrices over k[t], discriminants,
//!   degeneration multiplicities, reduced triples, and the main boundary
//!   formula on concrete families.
//! - [`cli`]: the command-line surface with stable, machine-readable output.

pub mod cli;
pub mod error;
pub mod f2linalg;
pub mod gralg;
pub mod gysin;
pub mod primitive;
pub mod quadbundle;
pub mod rings;

pub use error::{Error, Result};
