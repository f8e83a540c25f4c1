//! Exact machinery for `K_q^r`-decompositions of dense hypergraphs at desk scale.
//!
//! The crate is organized around a small immutable [`Hypergraph`] data model and
//! builds up from there: clique gadgets (boosters, hinges, fake-edges), integral
//! valuations solved by exact integer linear algebra, absorbers assembled from
//! those pieces, rooted embedding counters, exact-rational fractional
//! decompositions, reserve sampling plus nibble packing, and an end-to-end
//! decomposition pipeline. Every constructed object is verified against its
//! defining property; nothing is trusted to the construction alone.
//!
//! All arithmetic that matters is exact (arbitrary-precision integers and
//! rationals); randomized procedures are deterministic functions of an explicit
//! seed. The crate is `no_std`-compatible (alloc required) with the default
//! `std` feature enabled for convenience.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod absorber;
pub mod embed;
pub mod error;
pub mod exact_cover;
pub mod fractional;
pub mod gadgets;
pub mod hypergraph;
pub mod integral;
pub mod intlin;
pub mod nibble;
pub mod pipeline;
pub mod rng;
pub mod simplex;
pub mod turan;

pub use error::{Error, Result};
pub use hypergraph::{CliqueFamily, DensityVector, Edge, Hypergraph};
