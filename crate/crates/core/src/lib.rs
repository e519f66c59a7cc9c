//! Kernel for a proof-irrelevant extended calculus of constructions.

#![allow(clippy::result_large_err)]

pub mod convert;
pub mod corpus;
pub mod frontend;
pub mod model;
pub mod reduce;
pub mod signature;
pub mod subset;
pub mod term;
pub mod typecheck;
