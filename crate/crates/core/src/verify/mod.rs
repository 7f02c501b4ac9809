//! Executable form of the induced-subgraph degree theorems.
//!
//! For a set `W` of `2^(n-1) + 1` cube vertices and non-negative weights
//! `a`, the induced subgraph `H` satisfies `Δ_a(H) >= √(Σ a_i²)`. This module
//! checks that bound combinatorially ([`verify_instance`]), extracts the
//! eigenvector witness behind it ([`extract_certificate`]), and runs the
//! check over every subset ([`verify_exhaustive`]) or a seeded sample
//! ([`verify_sampled`]).

mod certificate;
mod exhaustive;
mod report;
mod sampled;

use serde::Serialize;

use crate::cube::{packed, InducedSubgraph};
use crate::error::{Error, Result};
use crate::spectral::{EIGEN_RESIDUAL_TOL, PIVOT_TOL};
use crate::weights::WeightVector;

pub use certificate::{extract_certificate, Certificate, InequalityChain};
pub use exhaustive::{verify_exhaustive, ExhaustiveOptions, EXHAUSTIVE_CAP, HEAVY_EXHAUSTIVE_N};
pub use report::{DegreeValue, Mode, SlackBin, VerifyReport, WeightSource, SLACK_BIN_WIDTH};
pub use sampled::{verify_sampled, SampleOptions, SAMPLE_DIM_CAP};

/// Numerical tolerances shared by the verification routines.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tolerances {
    /// Allowed shortfall of `Δ_a(H)` below `λ`.
    pub degree: f64,
    /// Max-norm bound on `x S_a − λ x` for certificates.
    pub residual: f64,
    /// Relative pivot threshold for the kernel solve.
    pub pivot: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            degree: 1e-9,
            residual: EIGEN_RESIDUAL_TOL,
            pivot: PIVOT_TOL,
        }
    }
}

/// `2^(n-1) + 1`, the subset size the theorems are about.
pub fn critical_size(n: u32) -> u64 {
    (1u64 << (n - 1)) + 1
}

pub(crate) fn check_size(subgraph: &InducedSubgraph) -> Result<()> {
    let expected = critical_size(subgraph.n());
    if subgraph.len() != expected {
        return Err(Error::WrongSubsetSize {
            expected,
            got: subgraph.len(),
        });
    }
    Ok(())
}

/// `⌈√n⌉`
pub fn ceil_sqrt(n: u32) -> u32 {
    let r = n.isqrt();
    if r * r < n {
        r + 1
    } else {
        r
    }
}

/// Result of checking one instance combinatorially.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InstanceOutcome {
    /// `Δ_a(H)`; an integer for unit weights.
    pub max_degree: f64,
    /// Smallest vertex attaining the maximum.
    pub vertex: u32,
    pub lambda: f64,
    /// `Δ_a(H) − λ`
    pub slack: f64,
    pub holds: bool,
}

/// Computes `Δ_a(H)` and compares it with `λ`, without any linear algebra.
///
/// Unit weights take an integer-only path comparing `Δ(H)` with `⌈√n⌉`.
pub fn check_instance(
    subgraph: &InducedSubgraph,
    weights: &WeightVector,
    tol: &Tolerances,
) -> Result<InstanceOutcome> {
    check_size(subgraph)?;
    if weights.dim() != subgraph.n() {
        return Err(Error::WeightCount {
            expected: subgraph.n() as usize,
            got: weights.dim() as usize,
        });
    }
    let lambda = weights.lambda();
    if weights.is_unit() {
        let n = subgraph.n();
        let (d, vertex) = subgraph.max_degree_unweighted()?;
        return Ok(InstanceOutcome {
            max_degree: d as f64,
            vertex,
            lambda,
            slack: d as f64 - lambda,
            holds: d >= ceil_sqrt(n),
        });
    }
    let (d, vertex) = subgraph.max_degree(weights)?;
    Ok(InstanceOutcome {
        max_degree: d,
        vertex,
        lambda,
        slack: d - lambda,
        holds: d >= lambda - tol.degree,
    })
}

/// Whether `Δ_a(H) >= λ` (within tolerance) for this instance.
pub fn verify_instance(
    subgraph: &InducedSubgraph,
    weights: &WeightVector,
    tol: &Tolerances,
) -> Result<bool> {
    check_instance(subgraph, weights, tol).map(|o| o.holds)
}

/// Unweighted check of a single-word vertex set (`n <= 6`), the hot path of
/// the exhaustive run. Returns `Δ(H)`.
#[inline]
pub(crate) fn packed_max_degree(n: u32, word: u64) -> u32 {
    packed::max_degree(n, word)
}
