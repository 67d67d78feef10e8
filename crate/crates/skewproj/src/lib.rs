//! Exact-arithmetic toolkit for quadratic skew polynomial algebras
//! `S_omega = K<X_1,...,X_n> / (X_j X_i - omega_ij X_i X_j)` and the
//! noncommutative projective spaces `Proj(S_omega)` they define.
//!
//! The crate decides graded isomorphism, graded Morita equivalence and
//! birational equivalence of these algebras, computes their point
//! varieties and emits Beilinson-quiver presentations. All arithmetic is
//! exact: scalars live in the multiplicative group generated by the
//! parameter entries (sign times integer exponent vectors over a prime /
//! formal-symbol basis), so every equality test is decidable. The base
//! field only ever enters through that finitely generated unit group;
//! algebraic closure is never used by any decision procedure.
//!
//! Modules:
//! - [`exactnum`]: the scalar group, parsing and exact evaluation
//! - [`intmat`]: integer matrices, Smith and alternating normal forms
//! - [`skewalg`]: parameter matrices, q-cyclic numbers, graded deciders,
//!   quiver presentations
//! - [`torus`]: quantum-torus simplicity and the birational decider
//! - [`pointvar`]: point varieties, the `n = 4` case classification and
//!   a probabilistic rank oracle
//! - [`paramfile`] / [`catalog`] / [`report`] / [`cli`]: file formats,
//!   the shipped example catalog and the command-line front end

#![allow(clippy::needless_range_loop)]

pub mod catalog;
pub mod cli;
pub mod exactnum;
pub mod intmat;
pub mod paramfile;
pub mod pointvar;
pub mod report;
pub mod skewalg;
pub mod testsupport;
pub mod torus;
