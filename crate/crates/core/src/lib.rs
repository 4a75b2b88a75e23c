//! Combinatorics of curve classes on class VII₀⁺ surfaces, written in the
//! Donaldson basis `e_0, …, e_{n-1}` of `H₂(S, ℤ)` where `e_i·e_j = -δ_ij`.
//!
//! The crate is organised bottom-up:
//!
//! * [`lattice`]: class vectors and the standard negative definite form.
//! * [`curveclass`]: the type **a** / type **b** dichotomy for rational curves
//!   and for chains of them.
//! * [`cycle`]: cycles of rational curves, the `#C - C²` dichotomy and the
//!   canonical numbering of a cycle.
//! * [`divisor`]: maximal divisors `C + A`, arithmetic genus, simply connected
//!   configurations and second connected components.
//! * [`deform`]: the node smoothing move and the exceptional class it ejects.
//! * [`oracle`]: brute force enumeration and exhaustive lemma sweeps.
//! * [`fixtures`], [`graph`], [`cli`]: bundled surfaces, dual graphs and the
//!   command line front end.

pub mod cli;
pub mod curveclass;
pub mod cycle;
pub mod deform;
pub mod divisor;
mod error;
pub mod fixtures;
pub mod graph;
pub mod lattice;
pub mod oracle;

pub use curveclass::CurveKind;
pub use cycle::{BettiReport, BettiVerdict, CycleConfig, CycleReport};
pub use deform::{smooth_node, Smoothed, SmoothingOutcome};
pub use divisor::{DivisorReport, MaximalDivisorConfig, TreeConfig};
pub use error::{Error, Result};
pub use lattice::{ClassVector, IndexSet};
