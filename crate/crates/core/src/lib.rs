//! Finite-field distance sets and a `q^{4/3}`-point counterexample.
//!
//! For an odd prime `p` and `q = p^{6r}`, let `F` be the subfield of `F_q`
//! of order `p^{2r}`, `V` a 2-dimensional `F`-subspace of `F_q`, and `i` a
//! square root of -1. The set `E = {(u, iv) : u, v ∈ V}` has `q^{4/3}` points
//! and its distance set `{u^2 - v^2}` equals the product set `VV`, which is
//! a proper subset of `F_q`.
//!
//! - [`ff`]: `GF(p^n)` arithmetic, modulus and generator search, subfields.
//! - [`construction`]: `V` and `E`.
//! - [`setalg`]: bitsets, brute-force and structured distance sets, `VV`.
//! - [`verify`]: reports, ratio scans, the size threshold, the census.
//! - [`cli`]: the `falconer` command line.

pub mod cli;
pub mod construction;
pub mod error;
pub mod ff;
pub mod setalg;
pub mod verify;

pub use construction::{build_construction, build_subspace, BasisChoice, Construction, ConstructionRecord, Subspace};
pub use error::{Error, Result};
pub use ff::{ExtField, FieldElem, IndexedField, SubfieldHandle};
pub use setalg::{ElemSet, Point};
pub use verify::{verify_counterexample, Budgets, OracleRequest, VerificationReport, VerifyOptions};
