#![no_std]
//! Exact arithmetic for the torus fragment of the cover of `F*`.

extern crate alloc;

pub mod cover;
pub mod error;
pub mod lattice;

pub use error::{Error, Result};
pub mod linear;
pub mod torus;
pub mod pqf;
pub mod specialization;
