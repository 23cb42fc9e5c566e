use super::{BitVector, Gf2Error};
use std::fmt;

/// A dense matrix over GF(2), stored as one [`BitVector`] per row.
#[derive(Clone, PartialEq, Eq)]
pub struct BitMatrix {
    cols: usize,
    rows: Vec<BitVector>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            cols,
            rows: vec![BitVector::zeros(cols); rows],
        }
    }

    /// A matrix with no rows at all; the trivial row space over `cols` columns.
    pub fn empty(cols: usize) -> Self {
        Self { cols, rows: vec![] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_rows(rows: Vec<BitVector>) -> Result<Self, Gf2Error> {
        let cols = rows.first().map_or(0, BitVector::len);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(Gf2Error::RaggedRows {
                    row: i,
                    expected: cols,
                    actual: r.len(),
                });
            }
        }
        Ok(Self { cols, rows })
    }

    /// Builds from rows of `0`/`1` strings; test and fixture convenience.
    pub fn from_bit_strs(rows: &[&str]) -> Self {
        Self::from_rows(rows.iter().map(|s| BitVector::from_bit_str(s)).collect())
            .expect("rows of equal length")
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &BitVector {
        &self.rows[i]
    }

    pub fn rows(&self) -> impl ExactSizeIterator<Item = &BitVector> {
        self.rows.iter()
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i].get(j)
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        self.rows[i].set(j, value);
    }

    /// Appends a row; panics on length mismatch.
    pub fn push_row(&mut self, row: BitVector) {
        assert_eq!(row.len(), self.cols, "row length mismatch");
        self.rows.push(row);
    }

    pub fn column(&self, j: usize) -> BitVector {
        let mut c = BitVector::zeros(self.nrows());
        for (i, r) in self.rows.iter().enumerate() {
            if r.get(j) {
                c.set(i, true);
            }
        }
        c
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.nrows());
        for (i, r) in self.rows.iter().enumerate() {
            for j in r.support() {
                t.set(j, i, true);
            }
        }
        t
    }

    /// Matrix-vector product `m·x` over GF(2); result has one bit per row.
    pub fn mul_vector(&self, x: &BitVector) -> Result<BitVector, Gf2Error> {
        if x.len() != self.cols {
            return Err(Gf2Error::DimensionMismatch {
                expected: self.cols,
                actual: x.len(),
            });
        }
        let mut out = BitVector::zeros(self.nrows());
        for (i, r) in self.rows.iter().enumerate() {
            if r.dot(x) {
                out.set(i, true);
            }
        }
        Ok(out)
    }

    /// Dimension of the row space.
    pub fn rank(&self) -> usize {
        let mut space = RowSpace::new(self.cols);
        for r in &self.rows {
            space.insert(r.clone());
        }
        space.rank()
    }

    /// A basis of `{x : m·x = 0}`, one row per basis vector.
    ///
    /// The returned matrix has `ncols() - rank()` rows, ordered by the free
    /// column each basis vector is anchored at.
    pub fn kernel_basis(&self) -> BitMatrix {
        // Reduced row echelon form, tracking pivot columns.
        let mut rows: Vec<BitVector> = self.rows.clone();
        let mut pivots: Vec<(usize, usize)> = Vec::new(); // (pivot col, row idx)
        let mut next_row = 0;
        for col in 0..self.cols {
            let Some(pivot_row) = (next_row..rows.len()).find(|&i| rows[i].get(col)) else {
                continue;
            };
            rows.swap(next_row, pivot_row);
            let pivot = rows[next_row].clone();
            for (i, r) in rows.iter_mut().enumerate() {
                if i != next_row && r.get(col) {
                    r.xor_assign(&pivot);
                }
            }
            pivots.push((col, next_row));
            next_row += 1;
            if next_row == rows.len() {
                break;
            }
        }
        let pivot_cols: Vec<usize> = pivots.iter().map(|&(c, _)| c).collect();
        let mut basis = Vec::with_capacity(self.cols - pivot_cols.len());
        for free in 0..self.cols {
            if pivot_cols.binary_search(&free).is_ok() {
                continue;
            }
            let mut v = BitVector::zeros(self.cols);
            v.set(free, true);
            for &(col, row) in &pivots {
                if rows[row].get(free) {
                    v.set(col, true);
                }
            }
            basis.push(v);
        }
        BitMatrix {
            cols: self.cols,
            rows: basis,
        }
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{}", self.nrows(), self.cols)?;
        for r in &self.rows {
            writeln!(f, "  {r}")?;
        }
        Ok(())
    }
}

/// Incremental row-echelon eliminator over GF(2).
///
/// Rows can be fed one at a time (lazily generated adjacency rows, for
/// example) without ever materialising the full matrix.
#[derive(Clone)]
pub struct RowSpace {
    cols: usize,
    // Echelon rows, kept sorted by pivot position.
    rows: Vec<BitVector>,
    pivots: Vec<usize>,
}

impl RowSpace {
    pub fn new(cols: usize) -> Self {
        Self {
            cols,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn from_matrix(m: &BitMatrix) -> Self {
        let mut s = Self::new(m.ncols());
        for r in m.rows() {
            s.insert(r.clone());
        }
        s
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the stored rows.
    pub fn reduce(&self, v: &BitVector) -> BitVector {
        assert_eq!(v.len(), self.cols, "length mismatch in reduce");
        let mut v = v.clone();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v.get(p) {
                v.xor_assign(row);
            }
        }
        v
    }

    /// True iff `v` lies in the span of the inserted rows.
    pub fn contains(&self, v: &BitVector) -> bool {
        self.reduce(v).is_zero()
    }

    /// Inserts a row; returns true if it enlarged the span.
    pub fn insert(&mut self, v: BitVector) -> bool {
        assert_eq!(v.len(), self.cols, "length mismatch in insert");
        let reduced = self.reduce(&v);
        match reduced.first_set_bit() {
            None => false,
            Some(p) => {
                let at = self.pivots.partition_point(|&q| q < p);
                self.pivots.insert(at, p);
                self.rows.insert(at, reduced);
                true
            }
        }
    }
}

/// True iff `x` is a GF(2) linear combination of the rows of `m`.
pub fn in_span(m: &BitMatrix, x: &BitVector) -> Result<bool, Gf2Error> {
    if x.len() != m.ncols() {
        return Err(Gf2Error::DimensionMismatch {
            expected: m.ncols(),
            actual: x.len(),
        });
    }
    Ok(RowSpace::from_matrix(m).contains(x))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Parity-check matrix of the [7,4,3] Hamming code; recurring fixture.
    pub fn hamming74() -> BitMatrix {
        BitMatrix::from_bit_strs(&["1010101", "0110011", "0001111"])
    }

    /// Independent elimination oracle on byte matrices, written before the
    /// packed implementation it checks.
    fn naive_rank(rows: &[Vec<u8>]) -> usize {
        let mut rows: Vec<Vec<u8>> = rows.to_vec();
        let cols = rows.first().map_or(0, Vec::len);
        let mut rank = 0;
        for col in 0..cols {
            let Some(p) = (rank..rows.len()).find(|&i| rows[i][col] == 1) else {
                continue;
            };
            rows.swap(rank, p);
            for i in 0..rows.len() {
                if i != rank && rows[i][col] == 1 {
                    for j in 0..cols {
                        rows[i][j] ^= rows[rank][j];
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    fn to_bytes(m: &BitMatrix) -> Vec<Vec<u8>> {
        m.rows()
            .map(|r| (0..m.ncols()).map(|j| u8::from(r.get(j))).collect())
            .collect()
    }

    #[test]
    fn hamming_rank_is_three() {
        assert_eq!(hamming74().rank(), 3);
    }

    #[test]
    fn identity_rank() {
        assert_eq!(BitMatrix::identity(4).rank(), 4);
    }

    #[test]
    fn rank_matches_naive_oracle_on_fixed_random_matrix() {
        // 6x10 matrix, fixed arbitrary fill.
        let m = BitMatrix::from_bit_strs(&[
            "1010011010",
            "0111010001",
            "1101001011",
            "0010110110",
            "1100101100",
            "0001011101",
        ]);
        assert_eq!(m.rank(), naive_rank(&to_bytes(&m)));
    }

    #[test]
    fn rank_equals_transpose_rank() {
        let m = hamming74();
        assert_eq!(m.rank(), m.transpose().rank());
    }

    #[test]
    fn hamming_kernel_dimension_is_four() {
        let k = hamming74().kernel_basis();
        assert_eq!(k.nrows(), 4);
        for r in k.rows() {
            assert!(hamming74().mul_vector(r).unwrap().is_zero());
        }
    }

    #[test]
    fn identity_kernel_is_empty() {
        assert_eq!(BitMatrix::identity(5).kernel_basis().nrows(), 0);
    }

    #[test]
    fn parity_code_kernel() {
        let m = BitMatrix::from_bit_strs(&["11"]);
        let k = m.kernel_basis();
        assert_eq!(k.nrows(), 1);
        assert_eq!(k.row(0), &BitVector::from_bit_str("11"));
    }

    #[test]
    fn in_span_basics() {
        let m = hamming74();
        assert!(in_span(&m, &BitVector::zeros(7)).unwrap());
        for r in m.rows() {
            assert!(in_span(&m, r).unwrap());
        }
        let bad = in_span(&m, &BitVector::zeros(6));
        assert!(matches!(bad, Err(Gf2Error::DimensionMismatch { .. })));
    }

    #[test]
    fn in_span_matches_exhaustive_enumeration() {
        let m = BitMatrix::from_bit_strs(&["101100", "011010", "110001", "000111"]);
        // Oracle: enumerate all combinations of the rows.
        let mut span = std::collections::HashSet::new();
        for mask in 0u32..(1 << m.nrows()) {
            let mut v = BitVector::zeros(m.ncols());
            for i in 0..m.nrows() {
                if (mask >> i) & 1 == 1 {
                    v.xor_assign(m.row(i));
                }
            }
            span.insert(v.to_string());
        }
        for bits in 0u32..(1 << m.ncols()) {
            let v = BitVector::from_u64(m.ncols(), bits as u64);
            assert_eq!(in_span(&m, &v).unwrap(), span.contains(&v.to_string()));
        }
    }
}
