//! `[[N, K, D]]` parameters of the quantum code attached to a generator
//! spec with an even number of generators.
//!
//! Two distances live side by side here and are deliberately never merged:
//! `d` is the shortest column dependency of the spec matrix itself, while
//! `d_perp` is the minimum weight of a nonzero kernel vector of the
//! adjacency matrix. The quantum distance `D` restricts `d_perp`'s search
//! to vectors outside the adjacency row space.

use crate::border::{min_pseudo_border_not_border, PseudoBorderOutcome};
use crate::bounds::{corollary_bound_with_m, isqrt, BoundReport};
use crate::cayley::{classical_distance, CayleyError, CayleyGraph, GeneratorSpec};
use crate::gf2::{min_weight_in_coset, BitMatrix, SearchOutcome};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CssError {
    #[error("the construction needs an even number of generators; n = {n} is odd")]
    OddGeneratorCount { n: usize },
    #[error(transparent)]
    Cayley(#[from] CayleyError),
    #[error(transparent)]
    Gf2(#[from] crate::gf2::Gf2Error),
    #[error(transparent)]
    Border(#[from] crate::border::BorderError),
}

/// Status of a searched distance value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchStatus {
    Exact,
    NoneExists,
    CapExhausted,
}

/// Status of the quantum distance field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum QuantumDistanceStatus {
    #[serde(rename = "exact")]
    Exact,
    #[serde(rename = "lower-bounded-by-cap")]
    LowerBoundedByCap,
    #[serde(rename = "undefined-K-zero")]
    UndefinedKZero,
}

/// Full parameter report; serialises with the stable key set
/// `{r, n, N, K, d, d_status, d_perp, d_perp_status, D, D_status,
/// degenerate, bound, witness}`.
#[derive(Debug, Clone, Serialize)]
pub struct QuantumParams {
    pub r: usize,
    pub n: usize,
    #[serde(rename = "N")]
    pub block_len: u64,
    #[serde(rename = "K")]
    pub logical_qubits: u64,
    /// Shortest column dependency of the spec matrix.
    pub d: Option<usize>,
    pub d_status: SearchStatus,
    /// Minimum distance of the kernel code of the adjacency matrix.
    pub d_perp: Option<usize>,
    pub d_perp_status: SearchStatus,
    #[serde(rename = "D")]
    pub quantum_d: Option<usize>,
    #[serde(rename = "D_status")]
    pub quantum_d_status: QuantumDistanceStatus,
    pub degenerate: Option<bool>,
    pub bound: Option<BoundReport>,
    /// Sorted vertex ids of the minimal pseudo-border witness.
    pub witness: Option<Vec<u64>>,
}

/// Degeneracy projection of [`QuantumParams`]: the quantum code is
/// degenerate when `D` strictly exceeds `d_perp`.
#[derive(Debug, Clone, Serialize)]
pub struct DegeneracyReport {
    pub d_perp: Option<usize>,
    #[serde(rename = "D")]
    pub quantum_d: Option<usize>,
    pub degenerate: Option<bool>,
}

/// Default cap for the quantum distance search: comfortably above the
/// `1 + n/2` floor so the small regime is always decided exactly.
pub fn default_quantum_cap(n: usize, block_len: u64) -> usize {
    (n + 2).min(block_len as usize)
}

fn status_of(outcome: &SearchOutcome) -> (Option<usize>, SearchStatus) {
    match outcome {
        SearchOutcome::Found { weight, .. } => (Some(*weight), SearchStatus::Exact),
        SearchOutcome::NoneExists => (None, SearchStatus::NoneExists),
        SearchOutcome::CapExhausted { .. } => (None, SearchStatus::CapExhausted),
    }
}

/// Computes `N = 2^r`, `K = N - 2·rank(A)`, the three distances and the
/// closed-form lower bound for the quantum code of `spec`.
///
/// `cap` limits both coset searches; `None` uses
/// [`default_quantum_cap`]. Fails when `n` is odd (the row code of the
/// adjacency matrix is then not self-orthogonal).
pub fn quantum_params(spec: &GeneratorSpec, cap: Option<usize>) -> Result<QuantumParams, CssError> {
    let n = spec.n();
    if n % 2 != 0 {
        return Err(CssError::OddGeneratorCount { n });
    }
    let g = CayleyGraph::build(spec.clone())?;
    let block_len = g.vertex_count();
    let adjacency = g.adjacency_matrix()?;
    let rank = adjacency.rank();
    // Self-orthogonality of the row code pins rank(A) <= N/2.
    assert!(
        2 * rank as u64 <= block_len,
        "adjacency rank {rank} exceeds N/2; self-orthogonality violated"
    );
    let logical_qubits = block_len - 2 * rank as u64;

    let cap = cap.unwrap_or_else(|| default_quantum_cap(n, block_len));

    let d_outcome = classical_distance(spec, default_distance_cap_for(spec))?;
    let (d, d_status) = status_of(&d_outcome);

    let d_perp_outcome = min_weight_in_coset(&adjacency, &BitMatrix::empty(adjacency.ncols()), cap)?;
    let (d_perp, d_perp_status) = status_of(&d_perp_outcome);

    let (quantum_d, quantum_d_status, witness) = if logical_qubits == 0 {
        (None, QuantumDistanceStatus::UndefinedKZero, None)
    } else {
        match min_pseudo_border_not_border(&g, cap)? {
            PseudoBorderOutcome::Found { size, witness } => (
                Some(size),
                QuantumDistanceStatus::Exact,
                Some(witness.ids()),
            ),
            PseudoBorderOutcome::NoneExists => {
                unreachable!("K > 0 guarantees a pseudo-border outside the borders")
            }
            PseudoBorderOutcome::CapExhausted { .. } => {
                (None, QuantumDistanceStatus::LowerBoundedByCap, None)
            }
        }
    };

    let degenerate = match (quantum_d, d_perp) {
        (Some(qd), Some(dp)) => Some(qd > dp),
        _ => None,
    };

    let bound = distance_bound(n, &d_outcome);
    if let (Some(qd), Some(b)) = (quantum_d, &bound) {
        // The exact distance must dominate the closed-form bound.
        assert!(
            b.value.le_integer(qd as u64),
            "exact quantum distance {qd} below the closed-form bound {}",
            b.decimal
        );
    }

    Ok(QuantumParams {
        r: spec.r(),
        n,
        block_len,
        logical_qubits,
        d,
        d_status,
        d_perp,
        d_perp_status,
        quantum_d,
        quantum_d_status,
        degenerate,
        bound,
        witness,
    })
}

fn default_distance_cap_for(spec: &GeneratorSpec) -> usize {
    crate::cayley::default_distance_cap(spec.n())
}

/// Lower bound on `D` derived from the column dependency distance, when the
/// truncation index is at least 1 (that needs `d >= 5`). A cap-exhausted
/// search still yields a valid bound through `d > cap`; independent columns
/// saturate the truncation at `isqrt(n/2)`.
fn distance_bound(n: usize, d_outcome: &SearchOutcome) -> Option<BoundReport> {
    let sqrt_term = isqrt(n as u64 / 2);
    let (m, note) = match d_outcome {
        SearchOutcome::Found { weight: d, .. } => {
            if *d < 5 {
                return None;
            }
            let m = (((*d as u64) - 3) / 2).min(sqrt_term);
            (m, format!("valid when K != 0; uses exact d = {d}"))
        }
        SearchOutcome::CapExhausted { cap } => {
            let d_floor = cap + 1;
            if d_floor < 5 {
                return None;
            }
            let m = ((d_floor as u64 - 3) / 2).min(sqrt_term);
            (
                m,
                format!("valid when K != 0; uses d > {cap} (search cap), monotone in d"),
            )
        }
        SearchOutcome::NoneExists => (
            sqrt_term,
            "valid when K != 0; columns independent, truncation saturated at isqrt(n/2)".into(),
        ),
    };
    Some(corollary_bound_with_m(n as u64, None, m, note))
}

/// Computes `d_perp` and `D` and compares them.
pub fn degeneracy_report(
    spec: &GeneratorSpec,
    cap: Option<usize>,
) -> Result<DegeneracyReport, CssError> {
    let p = quantum_params(spec, cap)?;
    Ok(DegeneracyReport {
        d_perp: p.d_perp,
        quantum_d: p.quantum_d,
        degenerate: p.degenerate,
    })
}
