//! Exact certification engine for groups generated by positive multi-twists.
//!
//! The only input is combinatorial: named families of disjoint simple closed
//! curves, a twist power per curve, and the pairwise geometric (optionally
//! absolute algebraic) intersection numbers. From that data the crate
//!
//! - certifies freeness and relative pseudo-Anosov behaviour of
//!   `<T_A, T_B>` ([`pingpong`]) and of `<T_{a_1}, ..., T_{a_n}>` for `n >= 3`,
//! - classifies individual words in two twists ([`classify`]),
//! - evaluates words in the one-holed torus model `SL(2, Z)` ([`sl2z`]),
//! - analyses measured train-track charts over quadratic fields
//!   ([`traintrack`]),
//! - propagates sound intersection-number enclosures along words
//!   ([`bounds`]).
//!
//! Everything is exact: integers are arbitrary precision and all ratios are
//! reduced rationals. The crate is `no_std` and only needs `alloc`.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod bounds;
pub mod certificate;
pub mod classify;
pub mod pingpong;
pub mod rational;
pub mod sl2z;
pub mod system;
pub mod traintrack;
pub mod word;

pub use certificate::{Basis, Certificate, RelationInstance, RelationName, Verdict, Witness};
pub use rational::Rational;
pub use system::{CurveFamily, CurveSystem, SystemBuilder, Violation};
pub use word::{cyclic_reduce, free_reduce, Letter, TwistWord};
