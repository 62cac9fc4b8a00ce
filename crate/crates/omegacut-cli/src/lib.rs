//! Concrete syntax and command runner for the omegacut proof calculus.

pub mod run;
pub mod sexp;
