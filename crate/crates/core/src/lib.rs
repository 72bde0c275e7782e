//! A dependently typed language with linear supplies and productions.

#![allow(clippy::result_large_err)]

pub mod batch;
pub mod cli;
pub mod diag;
pub mod driver;
pub mod kernel;
pub mod oracle;
pub mod pretty;
pub mod random;
pub mod solver;
pub mod supply;
pub mod surface;
pub mod syntax;
