//! Cyclotomic BMW algebras over exact fields: construction by rewriting,
//! parameter checks, representation-theoretic analysis and the
//! combinatorics indexing their simple modules.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod combinatorics;
pub mod linalg;
pub mod params;
pub mod presentation;
pub mod repn;
pub mod scalars;

pub use params::{OmegaMode, ParamError, ParameterSet};
pub use scalars::{Field, FieldDescriptor, FieldElement, Order, PrimeField, Rationals, ScalarError};
