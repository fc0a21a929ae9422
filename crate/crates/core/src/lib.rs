//! Core library for machine-learning benchmarks on mathematical data.
//!
//! Everything in this crate is pure computation over in-memory data:
//! dataset conditioning (balancing, permutation augmentation, padding,
//! splitting), evaluation metrics (naive precision and the Matthews
//! coefficient), a menu of from-scratch classifiers, and the task
//! generators for geometry, algebra, graph theory and number theory.
//!
//! The crate is `no_std`-compatible (with `alloc`); file formats, IO and
//! the CLI live in the companion `mlmath` crate. All randomness flows
//! through the seeded generator in [`rng`], so every operation here is a
//! deterministic function of its inputs and seed.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod algebra;
pub mod arith;
pub mod dataset;
pub mod error;
pub mod geometry;
pub mod graphs;
pub mod learners;
pub mod metrics;
pub mod rng;

mod float;

pub use dataset::{Example, FeatureShape, LabeledDataset, SplitResult};
pub use error::Error;
pub use metrics::{AccuracyPair, ConfusionMatrix, CvSummary};
pub use rng::RngSeed;

/// Crate-wide result alias.
pub type Result<T> = core::result::Result<T, Error>;
