//! Frequency-series analysis of two text discourses (newspaper articles and
//! advertisements): keyword frequency series from a dated corpus, Hurst
//! exponents by adaptive fractal analysis, bidirectional Granger causality,
//! and a causality x persistence classification of every keyword.
//!
//! The [`synth`] module provides seeded ground-truth generators (fractional
//! Gaussian noise, coupled autoregressions, a synthetic corpus) used to
//! validate every estimator.

pub mod afa;
pub mod classify;
pub mod cli;
pub mod config;
pub mod error;
pub mod granger;
pub mod ingest;
pub mod ols;
pub mod pipeline;
pub mod stats;
pub mod synth;
pub mod validate;

pub use error::{Error, Result};
