//! Robust amplitude estimation (RAE) at desk scale.
//!
//! This crate simulates enhanced sampling — measuring a Pauli observable after
//! `L` Grover layers built from a two-qubit ansatz — under an exponential-decay
//! noise model, and infers the target expectation value Π together with the
//! decay nuisance parameter λ by grid-based Bayesian maximum-likelihood
//! estimation. It also provides the Fisher-information-per-time layer
//! scheduler and the experiment harness used to compare enhanced sampling
//! against standard prepare-and-measure estimation at equal runtime.
//!
//! Module map:
//!
//! - [`sim`]: dense density-matrix simulation of few-qubit circuits,
//!   expectation values, the global depolarizing channel, parity sampling.
//! - [`circuits`]: the fixed two-qubit ansatz, Grover iterates, L-layer
//!   enhanced-sampling circuits, and depth accounting in ansatz units.
//! - [`noise`]: the decay noise model and its injection into circuit
//!   execution, plus the analytic outcome probability it realizes.
//! - [`estimation`]: Chebyshev polynomials, outcome likelihoods, and Fisher
//!   information per unit time.
//! - [`inference`]: posterior grids, outcome datasets, maximum-likelihood
//!   estimation with resampling, and trial statistics.
//! - [`scheduler`]: Fisher-guided layer selection and equal-runtime budgets.
//! - [`config`], [`dataset`], [`report`], [`experiments`]: the config-driven
//!   experiment harness behind the CLI.
//!
//! Every sampling operation takes an explicit [`rand_chacha::ChaCha8Rng`]
//! stream, so all experiments are bit-exactly reproducible from a seed.

pub mod circuits;
pub mod config;
pub mod dataset;
pub mod error;
pub mod estimation;
pub mod experiments;
pub mod inference;
pub mod noise;
pub mod report;
pub mod scheduler;
pub mod sim;

pub use error::{Error, Result};
pub use sim::{DensityMatrix, Gate, Outcome, PauliLetter, PauliString, QubitCount};
