//! Seeded property suites, shared by the per-topic test targets and the
//! acceptance run. Each function panics on the first counterexample.

#![allow(dead_code)]

pub mod algebra;
pub mod group;
pub mod lcs;
