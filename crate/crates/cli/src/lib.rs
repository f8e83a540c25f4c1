//! File formats and report plumbing for the command-line front end.
//!
//! The hypergraph text format is `r n m` on the first line (max edge size,
//! vertex count, edge count) followed by one line of space-separated vertex
//! indices per edge, in sorted order; round-trips are bit-exact. Valuations
//! serialize as `w v1 .. vq` lines, weightings as `p/q v1 .. vq` lines,
//! packings as one clique per line.

pub mod format;

pub use format::*;
