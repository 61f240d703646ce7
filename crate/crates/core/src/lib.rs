//! Exact-arithmetic machinery for even integral lattices and finite
//! quadratic forms, culminating in the lattice-theoretic classification of
//! involutions on Enriques surfaces into 18 types.
//!
//! Module layout mirrors the pipeline: `exactnum` (integer/rational matrix
//! algebra), `finform` (finite quadratic forms, possibly degenerate),
//! `lattice` (lattices, sublattice calculus, overlattices, isometry),
//! `catalog` (fixed reference data: root lattice embeddings, candidate
//! lattices, golden classification tables), `nikulin` (the classification
//! engine itself), and `verify` (the acceptance checks behind the CLI's
//! `verify` subcommand).

pub mod exactnum;
pub mod finform;
// Remaining pipeline stages come online module by module.
pub mod catalog;
pub mod lattice;
pub mod nikulin;
pub mod verify;
