//! Exact Greene sums of finite posets, divided differences, and
//! poset-indexed interpolation series.

pub mod algebra;
pub mod cli;
pub mod error;
pub mod exec;
pub mod forms;
pub mod greene;
pub mod interp;
pub mod poset;
pub mod series;
pub mod verify;

pub use error::{Error, Result};
