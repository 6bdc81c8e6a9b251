//! Exact certificates and bounds for the Shannon capacity of graphs.
//!
//! The crate computes and verifies the graph parameters that sandwich the
//! Shannon capacity `Θ(G)`:
//!
//! * lower bounds from independent sets ([`combinat::alpha`]),
//! * the Haemers minrank `H(G; GF(p))` through fit matrices ([`haemers`]),
//! * the fractional Haemers bound `H_f(G; GF(p))` through its four certificate
//!   forms, their conversions and tensor products ([`hfrac`]),
//! * the fractional clique cover number `χ_f(Ḡ)` by exact column generation
//!   ([`fracchrom`]),
//! * the Lovász theta function for circulant and Johnson-type graphs and the
//!   representation-based evaluators ([`theta`]).
//!
//! Everything that can be exact is exact: matrices live over prime fields
//! ([`ffmat`]) and linear programs are solved over arbitrary-precision
//! rationals ([`exactq`]). Only the theta evaluators use floating point.
//!
//! The crate is `no_std` and only needs `alloc`. Searches never read a clock;
//! they take a [`Budget`] with a node limit and an optional stop callback, and
//! return a certified interval when interrupted.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod budget;
pub mod combinat;
pub mod error;
pub mod exactq;
pub mod ffmat;
pub mod fracchrom;
pub mod graph;
pub mod haemers;
pub mod hfrac;
pub mod poly;
pub mod theta;

pub use budget::Budget;
pub use error::{Error, Result};
pub use exactq::Rational;
pub use ffmat::{FMatrix, PrimeModulus};
pub use graph::{Graph, GraphExpr, Limits, VertexSet};
