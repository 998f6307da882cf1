//! Mod-n K-theory engine.
//!
//! Exact integer linear algebra ([`snf`], [`abelian`]), K-theoretic profiles
//! of finite complexes with Bockstein and product data ([`kprofile`]), the
//! twisted group law on `K^1(X; Z_n)` ([`twisted`]) and counting of
//! continuous-field classes over finite nilpotent rings ([`fields`]).
//!
//! The matrix and normal-form layer is generic over the integer width
//! ([`num::IntScalar`]); everything above it uses the `i64` aliases below.

pub mod abelian;
pub mod cli;
pub mod error;
pub mod fields;
pub mod kprofile;
pub mod matrix;
pub mod num;
pub mod snf;
pub mod twisted;

pub use error::{Error, Result};

/// Scalar used by groups, profiles and everything above the matrix layer.
pub type Int = i64;
pub type IntMatrix = matrix::Matrix<Int>;
pub type SmithForm = snf::SmithForm<Int>;

pub use abelian::{AbelianGroup, Element, GroupHom};
