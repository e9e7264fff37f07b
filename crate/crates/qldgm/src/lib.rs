//! LDGM-based quantum stabilizer codes.
//!
//! This crate builds CSS, non-CSS and asymmetric-CSS quantum codes from
//! sparse low-density generator-matrix (LDGM) ingredients, decodes their
//! syndromes with sum-product message passing over layered factor graphs,
//! classifies decoding outcomes degeneracy-aware, and runs seeded Monte
//! Carlo sweeps over Pauli-family channels with Hashing-bound benchmarks.
//!
//! The main entry points are:
//! - [`gf2`]: bit-packed binary linear algebra and the symplectic
//!   representation of Pauli operators,
//! - [`channel`]: Pauli channel parameterizations, error sampling and
//!   information-theoretic benchmarks,
//! - [`code`]: LDGM, doped-matrix and quantum code construction plus the
//!   layered decoding graphs,
//! - [`decoder`]: sum-product decoding and its modified variants, and
//!   exhaustive small-code decoders,
//! - [`degeneracy`]: kernel-basis classification of end-to-end errors,
//! - [`montecarlo`]: the trial engine, statistics and sweeps,
//! - [`config`]: the JSON experiment description consumed by the CLI.

pub mod channel;
pub mod code;
pub mod config;
pub mod decoder;
pub mod degeneracy;
mod error;
pub mod gf2;
pub mod montecarlo;
pub mod rng;

pub use error::{Error, Result};
