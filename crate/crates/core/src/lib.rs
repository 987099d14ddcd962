//! Exact tools for cross-t-intersecting uniform set families.
//!
//! The crate is organised bottom-up:
//!
//! * [`setcore`]: sets over `[n]`, canonical families, uniform layers, exact counts
//!   and the plain-text family format.
//! * [`compression`]: the shifting operators `δ_{i,j}` / `Δ_{i,j}` and fixpoint drivers.
//! * [`intersection`]: t-intersection predicates, t-stars and compatible families.
//! * [`bounds`]: the threshold `n₀(r, s, t)` and the extremal product bounds.
//! * [`search`]: exact maximisation of `|𝒜||ℬ|` (and k-fold products).
//! * [`verify`]: exhaustive and seeded randomized verification suites.

pub mod bounds;
pub mod compression;
pub mod error;
pub mod intersection;
pub mod search;
pub mod setcore;
pub mod verify;

pub use error::{Error, Result};
pub use setcore::{binomial, generate_uniform, BigCount, ElementSet, Family, Params};

/// Version string embedded in machine-readable reports.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
