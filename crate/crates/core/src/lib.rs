//! Partial isometries of the finite chain `1..=n`.
//!
//! The crate materializes the inverse semigroups `DP_n` (all partial
//! isometries) and `ODP_n` (the order-preserving ones), counts them by
//! height and by number of fixed points, checks the closed-form counts
//! against enumeration, and computes Green's relations and structural
//! properties (0-E-unitary, categorical, Rees quotients) from
//! multiplication tables.

pub mod chain_maps;
pub mod closed_forms;
pub mod error;
pub mod families;
pub mod greens;
pub mod verify;

pub use chain_maps::{gap_signature, GapSignature, MapStatistics, PartialInjection, Point};
pub use error::{Error, Result};
pub use families::{CountTable, Family, Statistic};
