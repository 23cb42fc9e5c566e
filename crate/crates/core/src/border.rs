//! Borders and pseudo-borders of a Cayley graph, as predicates on vertex
//! sets.
//!
//! A vertex set is a border when it is the symmetric difference of a
//! collection of neighbourhoods, i.e. its indicator lies in the row space
//! of the adjacency matrix. It is a pseudo-border when it meets every
//! neighbourhood in an even number of vertices, i.e. its indicator lies in
//! the kernel. The minimum size of a pseudo-border that is not a border is
//! the quantum distance computed in [`crate::css`].

use crate::cayley::{CayleyGraph, VertexId};
use crate::gf2::{min_weight_in_coset, BitVector, Gf2Error, RowSpace, SearchOutcome};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BorderError {
    #[error("vertex set has {actual} slots but the graph has {expected} vertices")]
    SizeMismatch { expected: usize, actual: usize },
    #[error(transparent)]
    Gf2(#[from] Gf2Error),
    #[error(transparent)]
    Cayley(#[from] crate::cayley::CayleyError),
}

/// A subset of the vertex set, stored as an indicator over vertex ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexSet {
    members: BitVector,
}

impl VertexSet {
    pub fn empty(graph_size: usize) -> Self {
        Self {
            members: BitVector::zeros(graph_size),
        }
    }

    pub fn from_indicator(members: BitVector) -> Self {
        Self { members }
    }

    pub fn from_ids(graph_size: usize, ids: &[VertexId]) -> Self {
        let mut members = BitVector::zeros(graph_size);
        for &v in ids {
            members.set(v as usize, true);
        }
        Self { members }
    }

    pub fn graph_size(&self) -> usize {
        self.members.len()
    }

    pub fn cardinality(&self) -> usize {
        self.members.weight()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.members.get(v as usize)
    }

    pub fn indicator(&self) -> &BitVector {
        &self.members
    }

    /// Ascending member ids; the serialisation order for reports.
    pub fn ids(&self) -> Vec<VertexId> {
        self.members.support().iter().map(|&i| i as u64).collect()
    }

    pub fn symmetric_difference(&self, other: &Self) -> Self {
        Self {
            members: self.members.xor(&other.members),
        }
    }
}

fn check_size(g: &CayleyGraph, x: &VertexSet) -> Result<(), BorderError> {
    let expected = g.vertex_count() as usize;
    if x.graph_size() != expected {
        return Err(BorderError::SizeMismatch {
            expected,
            actual: x.graph_size(),
        });
    }
    Ok(())
}

/// Symmetric difference of the neighbourhoods `N(v)` over `v` in `centers`;
/// equivalently the adjacency matrix applied to the indicator.
pub fn border_of(g: &CayleyGraph, centers: &VertexSet) -> Result<VertexSet, BorderError> {
    check_size(g, centers)?;
    let mut out = BitVector::zeros(centers.graph_size());
    for v in centers.ids() {
        for &c in g.spec().column_codes() {
            out.flip((v ^ c) as usize);
        }
    }
    Ok(VertexSet::from_indicator(out))
}

/// Row space of the adjacency matrix, built by feeding lazily generated
/// neighbourhood rows to an incremental eliminator; the dense matrix is
/// never stored.
pub fn adjacency_row_space(g: &CayleyGraph) -> RowSpace {
    let mut space = RowSpace::new(g.vertex_count() as usize);
    for v in 0..g.vertex_count() {
        space.insert(g.adjacency_row(v));
    }
    space
}

/// True iff `x` is the border of some center set.
pub fn is_border(g: &CayleyGraph, x: &VertexSet) -> Result<bool, BorderError> {
    check_size(g, x)?;
    Ok(adjacency_row_space(g).contains(x.indicator()))
}

/// True iff every neighbourhood meets `x` in an even number of vertices.
pub fn is_pseudo_border(g: &CayleyGraph, x: &VertexSet) -> Result<bool, BorderError> {
    check_size(g, x)?;
    for v in 0..g.vertex_count() {
        let mut parity = false;
        for &c in g.spec().column_codes() {
            parity ^= x.contains(v ^ c);
        }
        if parity {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Outcome of the minimum search over pseudo-borders that are not borders.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PseudoBorderOutcome {
    Found { size: usize, witness: VertexSet },
    /// Every pseudo-border is a border (the quotient is trivial, K = 0).
    NoneExists,
    CapExhausted { cap: usize },
}

/// Smallest pseudo-border that is not a border, searched by increasing
/// cardinality up to `cap`.
pub fn min_pseudo_border_not_border(
    g: &CayleyGraph,
    cap: usize,
) -> Result<PseudoBorderOutcome, BorderError> {
    let a = g.adjacency_matrix()?;
    let outcome = min_weight_in_coset(&a, &a, cap)?;
    Ok(match outcome {
        SearchOutcome::Found { weight, witness } => {
            let witness = VertexSet::from_indicator(witness);
            debug_assert!(is_pseudo_border(g, &witness)?);
            debug_assert!(!is_border(g, &witness)?);
            PseudoBorderOutcome::Found {
                size: weight,
                witness,
            }
        }
        SearchOutcome::NoneExists => PseudoBorderOutcome::NoneExists,
        SearchOutcome::CapExhausted { cap } => PseudoBorderOutcome::CapExhausted { cap },
    })
}
