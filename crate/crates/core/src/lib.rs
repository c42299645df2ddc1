#![no_std]
#![doc = include_str!("../README.md")]

extern crate alloc;

pub mod algebra;
pub mod corpus;
pub mod error;
pub mod field;
pub mod freegens;
pub mod graph;
pub mod ideal;
pub mod matrix;
pub mod modules;
pub mod toeplitz;

pub use algebra::{Algebra, AlgebraElement, Mode, Monomial};
pub use error::Error;
pub use field::{BaseField, Field, FieldElement, Scalar};
pub use graph::{Graph, GraphBuilder};
