//! Core algorithms for the docmine curation pipeline.
//!
//! Everything in this crate is pure computation over strings and sets:
//! the stage-1 threshold filters, the weighted quality score, exact and
//! MinHash/LSH near-duplicate detection, the heuristic AI-likelihood
//! score, corpus statistics, and the stratified split. File IO, parsing
//! of real source trees, and the CLI live in the companion `docmine`
//! crate.
//!
//! The crate is `no_std` (with `alloc`) so the scoring and dedup kernels
//! stay free of platform dependencies; all randomness is derived from
//! explicit seeds.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod aidetect;
pub mod config;
pub mod dataset;
pub mod dedup;
pub mod doctext;
pub mod filter;
pub mod lang;
pub mod quality;
pub mod record;
pub mod rng;
pub mod split;

pub use config::PipelineConfig;
pub use record::{FunctionRecord, Language};
