//! Gap-set laboratory: constructions, thickness metrics, splitting
//! certificates and square-function probes for closed measure-zero sets on
//! the line.
//!
//! The crate is organized around one representation, [`set::GapSet`]: a
//! window plus the sorted open gaps of the complement. On top of it sit
//!
//! - [`set`] — the set families (lacunary dyadic, middle-thirds, subset-sum,
//!   perfect sets generated by a gap sequence, and the thin accumulating
//!   sequences with chains of every order),
//! - [`thickness`] — neighbourhood measures, porosity scans, box-counting
//!   dimension and power-law exponent fits,
//! - [`combinatorics`] — splitting certificates, small-shift search and
//!   n-chain detection,
//! - [`probe`] — circle-model experiments: masked-DFT square functions,
//!   empirical frame ranges, Dirichlet kernel scaling, Rademacher sign
//!   averages, Khintchine ratios and the chain growth law,
//! - [`report`] — run configs, dispatch, JSON/CSV persistence and the
//!   reproducibility plumbing used by the `lplab` binary.
//!
//! Everything is deterministic given the recorded seed; parallel sections
//! reduce in fixed index order so thread count never changes results. Set
//! `LP_LAB_THREADS` to cap the worker pool.
//!
//! See `examples/` for one runnable walk-through per capability:
//!
//! ```bash
//! cargo run --example construct_sets
//! cargo run --example square_function
//! cargo run --example thick_lp_sets
//! ```

// `!(x > 0.0)` is the NaN-rejecting guard used throughout
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod combinatorics;
pub mod error;
pub mod fit;
pub mod interval;
pub mod probe;
pub mod report;
pub mod set;
pub mod thickness;

pub use error::{Error, Result};
