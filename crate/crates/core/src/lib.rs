//! Exact-arithmetic laboratory for interdiction-based decision procedures.
//!
//! The crate pits an LP-relaxation-based decision method for clique, 3-SAT
//! and vertex cover — built on a two-layer flow-interdiction network — against
//! brute-force oracles, and records where the two sides agree or disagree.
//! All optimization is done in exact rational arithmetic so that "the optimum
//! equals K" is a meaningful, testable statement.

pub mod cnf;
pub mod decision;
pub mod flow;
pub mod graph;
pub mod formulations;
pub mod harness;
pub mod lp;
pub mod oracles;
pub mod reductions;
