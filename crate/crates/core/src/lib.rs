//! Exact lattice and cone combinatorics for classifying small equivariant
//! embeddings given by a grading: orbit cones, GIT fans, 2-maximal
//! collections, bunches and the geometry of the resulting varieties.

pub mod cli;
pub mod collections;
pub mod cone;
pub mod fixtures;
pub mod geometry;
pub mod git;
pub mod grading;
pub mod io;
pub mod lattice;
pub mod pipeline;
pub mod report;
