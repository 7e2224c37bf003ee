//! Exact symbolic exterior calculus for mapping cone Thom forms.

#![allow(clippy::needless_range_loop)]

pub mod classical;
pub mod cli;
pub mod cone;
pub mod error;
pub mod form;
pub mod instance;
pub mod report;
pub mod scalar;
pub mod thom;
pub mod verify;
pub mod wire;

pub use error::{Error, Result};
