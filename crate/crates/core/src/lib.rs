//! Sandpile groups of generalized de Bruijn and Kautz digraphs, and unit
//! groups of circulant matrices over finite fields.
//!
//! Everything here is exact: integers are arbitrary precision and finite
//! field arithmetic is table driven.

#![no_std]

extern crate alloc;

pub mod abelian;
pub mod arith;
pub mod circulant;
pub mod closed_form;
pub mod digraph;
pub mod error;
pub mod linalg;

pub use abelian::AbelianGroup;
pub use digraph::Digraph;
pub use error::{Error, Result};
pub use linalg::{determinant, smith_group, smith_normal_form, IntMatrix, SmithGroup, SnfResult};
