//! The Cayley graph of a binary generator matrix.
//!
//! Vertices are the integers `0..2^r`, encoding elements of `F_2^r`
//! little-endian (bit `j` of the label is coordinate `j`). Adjacency is
//! implicit: `v` is adjacent to `v ^ c` for every column code `c`, so no
//! edge lists are ever stored.

use crate::gf2::{
    min_weight_in_coset, parse_matrix, BitMatrix, BitVector, Gf2Error, ParseError, SearchOutcome,
};
use serde::Serialize;
use std::collections::{HashMap, HashSet, VecDeque};
use thiserror::Error;

pub type VertexId = u64;

/// Largest `r` for which a graph object may be built at all.
pub const DEFAULT_GRAPH_BUDGET_R: usize = 24;
/// Largest `r` for which the dense `2^r x 2^r` adjacency matrix may be
/// materialised (16384^2 bits = 32 MiB).
pub const DEFAULT_DENSE_LIMIT_R: usize = 14;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CayleyError {
    #[error("column {column} is zero; generators must be nonzero")]
    ZeroColumn { column: usize },
    #[error("columns {first} and {second} are equal; generators must be distinct")]
    DuplicateColumn { first: usize, second: usize },
    #[error("columns span a subspace of dimension {rank} < r = {r}; generators must span F_2^r")]
    RankDeficient { rank: usize, r: usize },
    #[error("r = {r} exceeds the graph budget (max {max_r}); 2^r vertices would not fit")]
    GraphBudgetExceeded { r: usize, max_r: usize },
    #[error(
        "r = {r} exceeds the dense adjacency limit (max {max_r}); \
         use the implicit-adjacency operations instead"
    )]
    DenseLimitExceeded { r: usize, max_r: usize },
    #[error("vertex {vertex} out of range: graph has {count} vertices")]
    VertexOutOfRange { vertex: VertexId, count: u64 },
    #[error(transparent)]
    Gf2(#[from] Gf2Error),
}

/// A validated `r x n` generator matrix: columns are pairwise distinct,
/// nonzero, and together span `F_2^r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorSpec {
    h: BitMatrix,
    codes: Vec<u64>,
}

impl GeneratorSpec {
    pub fn new(h: BitMatrix) -> Result<Self, CayleyError> {
        let r = h.nrows();
        let n = h.ncols();
        let mut codes = Vec::with_capacity(n);
        let mut seen: HashMap<u64, usize> = HashMap::new();
        for j in 0..n {
            let code = h.column(j).low_u64();
            if code == 0 {
                return Err(CayleyError::ZeroColumn { column: j });
            }
            if let Some(&first) = seen.get(&code) {
                return Err(CayleyError::DuplicateColumn { first, second: j });
            }
            seen.insert(code, j);
            codes.push(code);
        }
        let rank = h.rank();
        if rank != r {
            return Err(CayleyError::RankDeficient { rank, r });
        }
        Ok(Self { h, codes })
    }

    /// Parses and validates from the matrix text format; the outer error is
    /// a parse failure, the inner one a validation failure.
    pub fn from_text(input: &str) -> Result<Result<Self, CayleyError>, ParseError> {
        Ok(Self::new(parse_matrix(input)?))
    }

    /// The identity spec `I_n`, whose graph is the dimension-`n` hypercube.
    pub fn identity(n: usize) -> Self {
        Self::new(BitMatrix::identity(n)).expect("identity is a valid spec")
    }

    pub fn r(&self) -> usize {
        self.h.nrows()
    }

    pub fn n(&self) -> usize {
        self.h.ncols()
    }

    pub fn matrix(&self) -> &BitMatrix {
        &self.h
    }

    /// Integer encodings of the columns, little-endian in the row index.
    pub fn column_codes(&self) -> &[u64] {
        &self.codes
    }
}

/// Cayley graph on `2^r` vertices with XOR adjacency.
#[derive(Debug, Clone)]
pub struct CayleyGraph {
    spec: GeneratorSpec,
    code_set: HashSet<u64>,
}

impl CayleyGraph {
    pub fn build(spec: GeneratorSpec) -> Result<Self, CayleyError> {
        Self::build_with_budget(spec, DEFAULT_GRAPH_BUDGET_R)
    }

    pub fn build_with_budget(spec: GeneratorSpec, max_r: usize) -> Result<Self, CayleyError> {
        if spec.r() > max_r {
            return Err(CayleyError::GraphBudgetExceeded { r: spec.r(), max_r });
        }
        let code_set = spec.codes.iter().copied().collect();
        Ok(Self { spec, code_set })
    }

    pub fn spec(&self) -> &GeneratorSpec {
        &self.spec
    }

    pub fn vertex_count(&self) -> u64 {
        1u64 << self.spec.r()
    }

    /// Degree of every vertex.
    pub fn degree(&self) -> usize {
        self.spec.n()
    }

    fn check_vertex(&self, v: VertexId) -> Result<(), CayleyError> {
        if v >= self.vertex_count() {
            return Err(CayleyError::VertexOutOfRange {
                vertex: v,
                count: self.vertex_count(),
            });
        }
        Ok(())
    }

    /// The `n` distinct neighbours `v ^ c_i`.
    pub fn neighbors(&self, v: VertexId) -> Result<Vec<VertexId>, CayleyError> {
        self.check_vertex(v)?;
        Ok(self.spec.codes.iter().map(|&c| v ^ c).collect())
    }

    /// True iff `u` and `v` differ by a generator.
    pub fn adjacent(&self, u: VertexId, v: VertexId) -> bool {
        self.code_set.contains(&(u ^ v))
    }

    /// Indicator row of the neighbourhood of `v`, generated on demand.
    pub fn adjacency_row(&self, v: VertexId) -> BitVector {
        let mut row = BitVector::zeros(self.vertex_count() as usize);
        for &c in &self.spec.codes {
            row.set((v ^ c) as usize, true);
        }
        row
    }

    /// The symmetric `2^r x 2^r` adjacency matrix, guarded by the dense
    /// limit; every row has weight `n`.
    pub fn adjacency_matrix(&self) -> Result<BitMatrix, CayleyError> {
        self.adjacency_matrix_with_limit(DEFAULT_DENSE_LIMIT_R)
    }

    pub fn adjacency_matrix_with_limit(&self, max_r: usize) -> Result<BitMatrix, CayleyError> {
        if self.spec.r() > max_r {
            return Err(CayleyError::DenseLimitExceeded {
                r: self.spec.r(),
                max_r,
            });
        }
        let rows = (0..self.vertex_count()).map(|v| self.adjacency_row(v)).collect();
        Ok(BitMatrix::from_rows(rows).expect("uniform rows"))
    }

    /// Checks that every pair of neighbourhoods (a vertex with itself
    /// included) meets in an even number of vertices, without materialising
    /// the adjacency matrix.
    ///
    /// By vertex-transitivity the intersection parity of `N(u)` and `N(v)`
    /// depends only on `u ^ v`, and the pair has a common neighbour only if
    /// `u ^ v` is a sum of two generators, so those differences are the only
    /// ones examined.
    pub fn is_self_orthogonal(&self) -> bool {
        let n = self.spec.n();
        if n % 2 != 0 {
            // |N(v) ∩ N(v)| = n is odd.
            return false;
        }
        let codes = &self.spec.codes;
        let mut deltas: HashSet<u64> = HashSet::new();
        for (i, &a) in codes.iter().enumerate() {
            for &b in &codes[i + 1..] {
                deltas.insert(a ^ b);
            }
        }
        deltas.into_iter().all(|delta| {
            let count = codes
                .iter()
                .filter(|&&c| self.code_set.contains(&(delta ^ c)))
                .count();
            count % 2 == 0
        })
    }

    /// BFS ball of the given radius: vertices with their depths and all
    /// edges induced between them.
    pub fn ball(&self, center: VertexId, radius: usize) -> Result<BallView, CayleyError> {
        self.check_vertex(center)?;
        let mut depth: HashMap<VertexId, usize> = HashMap::new();
        depth.insert(center, 0);
        let mut queue = VecDeque::from([center]);
        while let Some(v) = queue.pop_front() {
            let d = depth[&v];
            if d == radius {
                continue;
            }
            for &c in &self.spec.codes {
                let w = v ^ c;
                if !depth.contains_key(&w) {
                    depth.insert(w, d + 1);
                    queue.push_back(w);
                }
            }
        }
        let mut vertices: Vec<BallVertex> = depth
            .iter()
            .map(|(&id, &depth)| BallVertex { id, depth })
            .collect();
        vertices.sort_by_key(|v| v.id);
        let mut edges = Vec::new();
        for v in &vertices {
            for &c in &self.spec.codes {
                let w = v.id ^ c;
                if w > v.id && depth.contains_key(&w) {
                    edges.push((v.id, w));
                }
            }
        }
        edges.sort_unstable();
        Ok(BallView {
            center,
            radius,
            vertices,
            edges,
        })
    }
}

/// Induced ball: vertex ids sorted ascending with BFS depths, plus all
/// edges between listed vertices as sorted `(low, high)` pairs. Serialises
/// to a deterministic JSON document.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BallView {
    pub center: VertexId,
    pub radius: usize,
    pub vertices: Vec<BallVertex>,
    pub edges: Vec<(VertexId, VertexId)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BallVertex {
    pub id: VertexId,
    pub depth: usize,
}

impl BallView {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("ball serialises")
    }
}

/// Shortest number of columns summing to zero, up to `cap`: the minimum
/// distance of the code whose parity-check matrix is the spec.
///
/// `NoneExists` certifies the columns are linearly independent;
/// `CapExhausted` leaves `d > cap` open.
pub fn classical_distance(spec: &GeneratorSpec, cap: usize) -> Result<SearchOutcome, Gf2Error> {
    min_weight_in_coset(spec.matrix(), &BitMatrix::empty(spec.n()), cap)
}

/// Default search cap for [`classical_distance`].
pub fn default_distance_cap(n: usize) -> usize {
    n.min(20)
}

/// Outcome of checking the ball around one vertex against a hypercube ball
/// of the same radius.
///
/// `ok` certifies: the map sending a subset `T` of at most `radius`
/// generator indices to the vertex reached from the center by the columns
/// in `T` is a depth-preserving bijection onto the BFS ball, and every
/// vertex at depth `< radius` has exactly corresponding neighbourhoods on
/// both sides. Edges joining two depth-`radius` vertices are outside the
/// certified region: the Cayley ball can carry such edges with no hypercube
/// counterpart (they come from a generator relation of odd length
/// `2·radius + 1`), and those are only counted in `boundary_only_edges`.
#[derive(Debug, Clone)]
pub struct LocalIsoReport {
    pub radius: usize,
    pub ok: bool,
    /// Ball vertex -> hypercube coordinates (length n), sorted by vertex id.
    pub mapping: Vec<(VertexId, BitVector)>,
    pub boundary_only_edges: usize,
    pub failure: Option<String>,
}

/// Verifies the local correspondence at `center`, with the radius derived
/// from the generator dependency distance: `(d-1)/2` when a shortest
/// dependency of length `d` exists, `(n-1)/2` when the columns are
/// independent.
pub fn verify_local_isomorphism(
    g: &CayleyGraph,
    center: VertexId,
) -> Result<LocalIsoReport, CayleyError> {
    let n = g.spec().n();
    let radius = match classical_distance(g.spec(), n)? {
        SearchOutcome::Found { weight: d, .. } => (d - 1) / 2,
        _ => (n.max(1) - 1) / 2,
    };
    verify_local_isomorphism_at(g, center, radius)
}

pub fn verify_local_isomorphism_at(
    g: &CayleyGraph,
    center: VertexId,
    radius: usize,
) -> Result<LocalIsoReport, CayleyError> {
    g.check_vertex(center)?;
    let n = g.spec().n();
    let codes = g.spec().column_codes();

    let fail = |msg: String| LocalIsoReport {
        radius,
        ok: false,
        mapping: Vec::new(),
        boundary_only_edges: 0,
        failure: Some(msg),
    };

    // Image of every generator subset of size <= radius.
    let mut cube_masks: Vec<u64> = Vec::new();
    for w in 0..=radius.min(n) {
        cube_masks.extend(crate::gf2::fixed_weight_iter(n, w).map(|v| v.low_u64()));
    }
    let mut image: HashMap<VertexId, u64> = HashMap::with_capacity(cube_masks.len());
    for &mask in &cube_masks {
        let mut v = center;
        for (i, &c) in codes.iter().enumerate() {
            if (mask >> i) & 1 == 1 {
                v ^= c;
            }
        }
        if let Some(prev) = image.insert(v, mask) {
            return Ok(fail(format!(
                "vertex {v} reached by two distinct generator subsets \
                 ({prev:#b} and {mask:#b}); map is not injective"
            )));
        }
    }

    // Independent BFS ball must agree on membership and depth.
    let ball = g.ball(center, radius)?;
    if ball.vertices.len() != image.len() {
        return Ok(fail(format!(
            "ball has {} vertices but {} generator subsets of size <= {radius}",
            ball.vertices.len(),
            image.len()
        )));
    }
    for bv in &ball.vertices {
        match image.get(&bv.id) {
            None => {
                return Ok(fail(format!("ball vertex {} has no preimage", bv.id)));
            }
            Some(&mask) => {
                if mask.count_ones() as usize != bv.depth {
                    return Ok(fail(format!(
                        "vertex {} has BFS depth {} but subset size {}",
                        bv.id,
                        bv.depth,
                        mask.count_ones()
                    )));
                }
            }
        }
    }

    // Edge correspondence. Pairs touching the interior must match exactly;
    // boundary-boundary pairs are checked in the hypercube-to-graph
    // direction only.
    let verts: Vec<(VertexId, u64)> =
        ball.vertices.iter().map(|bv| (bv.id, image[&bv.id])).collect();
    let mut boundary_only = 0usize;
    for (idx, &(u, mu)) in verts.iter().enumerate() {
        for &(v, mv) in &verts[idx + 1..] {
            let cube_adj = (mu ^ mv).count_ones() == 1;
            let graph_adj = g.adjacent(u, v);
            let both_boundary =
                mu.count_ones() as usize == radius && mv.count_ones() as usize == radius;
            if cube_adj && !graph_adj {
                return Ok(fail(format!(
                    "hypercube edge between images of {u} and {v} missing in graph"
                )));
            }
            if graph_adj && !cube_adj {
                if both_boundary {
                    boundary_only += 1;
                } else {
                    return Ok(fail(format!(
                        "graph edge ({u},{v}) touches the interior but is not a hypercube edge"
                    )));
                }
            }
        }
    }

    let mut mapping: Vec<(VertexId, BitVector)> = verts
        .iter()
        .map(|&(v, mask)| (v, BitVector::from_u64(n, mask)))
        .collect();
    mapping.sort_by_key(|&(v, _)| v);
    Ok(LocalIsoReport {
        radius,
        ok: true,
        mapping,
        boundary_only_edges: boundary_only,
        failure: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hamming74_spec() -> GeneratorSpec {
        GeneratorSpec::new(BitMatrix::from_bit_strs(&["1010101", "0110011", "0001111"])).unwrap()
    }

    #[test]
    fn identity3_is_three_cube() {
        let g = CayleyGraph::build(GeneratorSpec::identity(3)).unwrap();
        assert_eq!(g.vertex_count(), 8);
        assert_eq!(g.degree(), 3);
        let mut nb = g.neighbors(0).unwrap();
        nb.sort_unstable();
        assert_eq!(nb, vec![1, 2, 4]);
    }

    #[test]
    fn identity2_is_four_cycle() {
        let g = CayleyGraph::build(GeneratorSpec::identity(2)).unwrap();
        assert_eq!(g.vertex_count(), 4);
        for v in 0..4 {
            assert_eq!(g.neighbors(v).unwrap().len(), 2);
        }
    }

    #[test]
    fn hamming_graph_shape() {
        let g = CayleyGraph::build(hamming74_spec()).unwrap();
        assert_eq!(g.vertex_count(), 8);
        assert_eq!(g.degree(), 7);
        let mut nb = g.neighbors(0).unwrap();
        nb.sort_unstable();
        // The seven column codes: every nonzero vector of F_2^3.
        assert_eq!(nb, vec![1, 2, 3, 4, 5, 6, 7]);
    }

    #[test]
    fn vertex_never_its_own_neighbor() {
        let g = CayleyGraph::build(hamming74_spec()).unwrap();
        for v in 0..g.vertex_count() {
            assert!(!g.neighbors(v).unwrap().contains(&v));
        }
    }

    #[test]
    fn out_of_range_vertex_rejected() {
        let g = CayleyGraph::build(GeneratorSpec::identity(2)).unwrap();
        assert!(matches!(
            g.neighbors(4),
            Err(CayleyError::VertexOutOfRange { .. })
        ));
    }

    #[test]
    fn validation_names_offending_column() {
        let with_zero = BitMatrix::from_bit_strs(&["10", "00"]);
        assert_eq!(
            GeneratorSpec::new(with_zero).unwrap_err(),
            CayleyError::ZeroColumn { column: 1 }
        );
        let dup = BitMatrix::from_bit_strs(&["11", "00"]);
        assert_eq!(
            GeneratorSpec::new(dup).unwrap_err(),
            CayleyError::DuplicateColumn {
                first: 0,
                second: 1
            }
        );
    }

    #[test]
    fn rank_deficiency_detected() {
        // Two distinct nonzero columns inside a 3-dimensional ambient space.
        let m = BitMatrix::from_bit_strs(&["11", "10", "01"]);
        assert_eq!(
            GeneratorSpec::new(m).unwrap_err(),
            CayleyError::RankDeficient { rank: 2, r: 3 }
        );
    }

    #[test]
    fn adjacency_matrix_of_four_cycle() {
        let g = CayleyGraph::build(GeneratorSpec::identity(2)).unwrap();
        let a = g.adjacency_matrix().unwrap();
        assert_eq!((a.nrows(), a.ncols()), (4, 4));
        for v in 0..4 {
            assert_eq!(a.row(v).weight(), 2);
        }
        assert_eq!(a, a.transpose());
    }

    #[test]
    fn adjacency_row_of_cube_origin() {
        let g = CayleyGraph::build(GeneratorSpec::identity(3)).unwrap();
        let a = g.adjacency_matrix().unwrap();
        assert_eq!(a.row(0).support(), vec![1, 2, 4]);
    }

    #[test]
    fn self_orthogonality_follows_degree_parity() {
        let even = CayleyGraph::build(GeneratorSpec::identity(2)).unwrap();
        assert!(even.is_self_orthogonal());
        let odd = CayleyGraph::build(GeneratorSpec::identity(3)).unwrap();
        assert!(!odd.is_self_orthogonal());
    }

    #[test]
    fn hamming_classical_distance_three() {
        let out = classical_distance(&hamming74_spec(), 7).unwrap();
        assert_eq!(out.found().unwrap().0, 3);
    }

    #[test]
    fn identity_has_no_dependency() {
        let out = classical_distance(&GeneratorSpec::identity(4), 4).unwrap();
        assert_eq!(out, SearchOutcome::NoneExists);
    }

    #[test]
    fn ball_counts_in_hypercube() {
        let g = CayleyGraph::build(GeneratorSpec::identity(4)).unwrap();
        let b = g.ball(0, 1).unwrap();
        assert_eq!(b.vertices.len(), 5);
        assert_eq!(b.edges.len(), 4);
        let b0 = g.ball(3, 0).unwrap();
        assert_eq!(b0.vertices.len(), 1);
        assert!(b0.edges.is_empty());
    }

    #[test]
    fn hypercube_ball_sizes_are_binomial_sums() {
        use crate::gf2::binomial;
        for n in 1..=6usize {
            let g = CayleyGraph::build(GeneratorSpec::identity(n)).unwrap();
            for t in 0..=n {
                let expect: u128 = (0..=t).map(|i| binomial(n, i)).sum();
                assert_eq!(g.ball(0, t).unwrap().vertices.len() as u128, expect);
            }
        }
    }

    #[test]
    fn local_iso_on_identity() {
        let g = CayleyGraph::build(GeneratorSpec::identity(5)).unwrap();
        let rep = verify_local_isomorphism(&g, 7).unwrap();
        assert_eq!(rep.radius, 2);
        assert!(rep.ok, "{:?}", rep.failure);
        assert_eq!(rep.boundary_only_edges, 0);
    }

    #[test]
    fn local_iso_on_hamming_radius_one() {
        let g = CayleyGraph::build(hamming74_spec()).unwrap();
        for v in 0..8 {
            let rep = verify_local_isomorphism(&g, v).unwrap();
            assert_eq!(rep.radius, 1);
            assert!(rep.ok, "center {v}: {:?}", rep.failure);
            // Every pair of distinct neighbours is adjacent here (the columns
            // are all of F_2^3 \ {0}), while hypercube neighbours of the
            // center never are: 21 boundary-only edges.
            assert_eq!(rep.boundary_only_edges, 21);
        }
    }
}
