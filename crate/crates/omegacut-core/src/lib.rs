//! Finitary proof terms for an omega-branching sequent calculus, a lazy
//! reading of their infinitary content, and a one-step, ordinal-free cut
//! elimination operator on them.
//!
//! The crate is `no_std` (with `alloc`): all data lives in reference-counted
//! trees and everything is deterministic.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod calculus;
pub mod checker;
pub mod corpus;
pub mod lang;
pub mod notation;
pub mod reduction;
