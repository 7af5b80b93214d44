//! Exact computational algebra over prime fields GF(p).
//!
//! # Overview
//!
//! The crate works with finite-dimensional algebras over GF(p) given by
//! structure constants, and answers structural questions about them exactly:
//! Jacobson radical and Loewy series, central idempotents and block
//! decomposition, projective indecomposables, simple modules with their
//! endomorphism fields, Gabriel quivers, Nakayama-ness, minimal projective
//! resolutions and complexity estimates, and stable AR-quiver shapes for
//! self-injective Nakayama blocks.
//!
//! On top of the generic machinery sit constructors for the algebras of
//! interest: restricted enveloping algebras of restricted Lie superalgebras
//! (with their Hopf structure), smash products by cyclic group actions and by
//! cyclic gradings, bosonizations, divided-power Hopf algebras and linear
//! duals, and Hopf quotients.
//!
//! # Architecture
//!
//! * [`fp`] - scalars, dense matrices, row reduction, solving, subspaces,
//!   minimal polynomials.
//! * [`poly`] - univariate polynomials over GF(p) and factorization.
//! * [`algebra`] - structure-constant algebras, validation, multiplication
//!   operators, centers.
//! * [`analysis`] - radical, blocks, idempotent lifting, simples, quivers,
//!   Nakayama and matrix-algebra recognition, fingerprints.
//! * [`module`] / [`resolution`] - finite modules, spinning, projective
//!   covers, minimal resolutions, complexity windows.
//! * [`lie`] - restricted Lie superalgebras and the finite-representation-type
//!   criterion.
//! * [`construct`] - envelopes, smash products, bosonization, divided powers,
//!   duals, quotients and the small stock algebras.
//! * [`hopf`] - Hopf-axiom checking, primitives, characters and twists.
//! * [`quiver`] - quiver data and DOT emission.
//!
//! All randomized searches draw from an explicitly seeded generator, so every
//! result is reproducible; parallel code paths produce the same output as the
//! sequential fallback.

pub mod algebra;
pub mod analysis;
pub mod construct;
pub mod fp;
pub mod hopf;
pub mod lie;
pub mod module;
pub mod par;
pub mod poly;
pub mod quiver;
pub mod resolution;

pub use algebra::{HopfData, StructAlgebra};
pub use analysis::Analysis;
pub use fp::{Fp, FpMatrix, Subspace};
pub use lie::RestrictedLieSuper;
pub use module::AlgModule;
pub use poly::FpPoly;
