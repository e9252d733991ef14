//! Generative matching for RSMA downlink expert selection.
//!
//! The crate builds user-expert matchings for a simulated rate-splitting
//! downlink in three families: a discrete denoising diffusion generator
//! trained with reward gradients, a DQN that fills assignment slots
//! sequentially, and classical baselines (deferred acceptance, max-weight
//! assignment, greedy, exact brute force). A QoE-based reward couples
//! matchings to channel quality through zero-forcing precoding and a
//! common/private stream split, and the harness reproduces the comparison
//! experiments as seeded, bit-reproducible CSV runs.

pub mod classical;
pub mod error;
pub mod matchgraph;
pub mod seeding;

pub use error::{Error, Result};
