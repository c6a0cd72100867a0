//! Additive-combinatorics toolkit: exact sumsets and GAPs, a constructive
//! Freiman cover, and subset-sum, k-SUM and binary ILP solvers whose table
//! sizes are governed by the doubling constant of the input.

pub mod bench;
pub mod error;
pub mod freiman;
pub mod gap;
pub mod generate;
pub mod ilp;
pub mod ksum;
pub mod limits;
pub mod matrix;
pub mod oracles;
pub mod primes;
pub mod sets;
pub mod subset_sum;

pub use error::{Error, Result};
pub use gap::{gap_enumerate, gap_membership, Gap, GapIndex};
pub use limits::Limits;
pub use matrix::{Matrix, Outcome, SolveWitness, VectorSet};
pub use sets::{doubling_constant, iterated_sumset, lex_min, sumset, IntegerSet};
