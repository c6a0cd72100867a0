//! Constructive Freiman covers for sets with small doubling.

pub mod bogolyubov;
pub mod bohr_gap;
pub mod cover;
pub mod modeling;
pub mod pipeline;
pub mod split;

pub use bogolyubov::{bogolyubov, BohrSpec};
pub use bohr_gap::{gap_in_bohr, BohrGap, LatticeMode, LatticePoint};
pub use cover::{ruzsa_cover, RuzsaCover};
pub use modeling::{modeling_lemma, FreimanModel, ModelFailure, ModelOutcome, StrictCheck};
pub use pipeline::{freiman_gap, FreimanConfig, FreimanCover, FreimanMetrics};
pub use split::split_dimensions;
