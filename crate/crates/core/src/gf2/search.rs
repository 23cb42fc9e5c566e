use super::weights::{binomial, colex_advance};
use super::{BitMatrix, BitVector, Gf2Error, RowSpace};
use rayon::prelude::*;

/// Result of an increasing-weight search.
///
/// `NoneExists` is a proof that no qualifying vector exists at any weight
/// (the quotient of kernel by excluded span is trivial); `CapExhausted` only
/// says none was found at weights up to the cap.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    Found { weight: usize, witness: BitVector },
    NoneExists,
    CapExhausted { cap: usize },
}

impl SearchOutcome {
    pub fn found(&self) -> Option<(usize, &BitVector)> {
        match self {
            SearchOutcome::Found { weight, witness } => Some((*weight, witness)),
            _ => None,
        }
    }
}

/// Beyond this many candidates per weight class the scan is partitioned
/// across workers by top support element.
const PARALLEL_THRESHOLD: u128 = 4_000_000;

/// Finds the minimum-weight vector `x` with `parity·x = 0` and
/// `x ∉ rowspace(excluded)`, searching weights `1..=cap` in increasing
/// order, so the first hit is optimal. Among witnesses of the minimal
/// weight the colexicographically first support is returned.
///
/// `excluded` must satisfy `parity·row = 0` for each of its rows (the
/// excluded space sits inside the kernel); violating rows are reported by
/// index. An empty `excluded` matrix searches the whole punctured kernel,
/// i.e. the classical minimum distance of the kernel code.
pub fn min_weight_in_coset(
    parity: &BitMatrix,
    excluded: &BitMatrix,
    cap: usize,
) -> Result<SearchOutcome, Gf2Error> {
    let cols = parity.ncols();
    if excluded.ncols() != cols && excluded.nrows() > 0 {
        return Err(Gf2Error::DimensionMismatch {
            expected: cols,
            actual: excluded.ncols(),
        });
    }
    for (i, row) in excluded.rows().enumerate() {
        if !parity.mul_vector(row)?.is_zero() {
            return Err(Gf2Error::ExcludedRowOutsideKernel { row: i });
        }
    }

    let excluded_space = if excluded.nrows() == 0 {
        RowSpace::new(cols)
    } else {
        RowSpace::from_matrix(excluded)
    };
    let kernel_dim = cols - parity.rank();
    if kernel_dim == excluded_space.rank() {
        // Excluded span fills the kernel: the quotient is trivial.
        return Ok(SearchOutcome::NoneExists);
    }

    // Columns of the parity matrix, packed as raw words: the syndrome of a
    // support set is the XOR of its columns.
    let syndrome_words = parity.nrows().div_ceil(64);
    let columns: Vec<Vec<u64>> = (0..cols)
        .map(|j| {
            let mut w = vec![0u64; syndrome_words];
            for (i, r) in parity.rows().enumerate() {
                if r.get(j) {
                    w[i / 64] ^= 1u64 << (i % 64);
                }
            }
            w
        })
        .collect();

    let cap = cap.min(cols);
    for weight in 1..=cap {
        let hit = if binomial(cols, weight) > PARALLEL_THRESHOLD && weight >= 2 {
            // Partition by the top support element: all supports with top
            // element v precede those with a larger top in colex order, so
            // the first class with a hit carries the global first hit.
            (weight - 1..cols)
                .into_par_iter()
                .find_map_first(|top| {
                    scan_class(&columns, top, weight - 1, Some(top), &excluded_space, cols)
                })
        } else {
            scan_class(&columns, cols, weight, None, &excluded_space, cols)
        };
        if let Some(support) = hit {
            let witness = BitVector::from_support(cols, &support);
            debug_assert!(parity.mul_vector(&witness).unwrap().is_zero());
            return Ok(SearchOutcome::Found { weight, witness });
        }
    }
    if cap == cols {
        // Exhausting all weights enumerates the whole space; a nontrivial
        // quotient would have produced a witness.
        unreachable!("nontrivial quotient must yield a witness at full cap");
    }
    Ok(SearchOutcome::CapExhausted { cap })
}

/// Scans all `inner_weight`-subsets of `0..inner_len` (plus the optional
/// fixed top element) in colex order; returns the full support of the first
/// kernel vector outside the excluded span.
///
/// Syndromes are maintained incrementally: `suffix[i]` holds the XOR of the
/// columns at `support[i..]` plus the fixed element, so a colex advance at
/// index `i` only recomputes `suffix[..=i]`.
fn scan_class(
    columns: &[Vec<u64>],
    inner_len: usize,
    inner_weight: usize,
    fixed: Option<usize>,
    excluded: &RowSpace,
    full_len: usize,
) -> Option<Vec<usize>> {
    if inner_weight > inner_len {
        return None;
    }
    let words = columns.first().map_or(0, Vec::len);
    let w = inner_weight;
    let mut support: Vec<usize> = (0..w).collect();
    // suffix is (w+1) stripes of `words`; stripe w is the fixed seed.
    let mut suffix = vec![0u64; (w + 1) * words];
    if let Some(top) = fixed {
        suffix[w * words..].copy_from_slice(&columns[top]);
    }
    let recompute = |suffix: &mut Vec<u64>, support: &[usize], from: usize| {
        for i in (0..=from).rev() {
            let (lo, hi) = suffix.split_at_mut((i + 1) * words);
            let dst = &mut lo[i * words..];
            let src = &hi[..words];
            let col = &columns[support[i]];
            for k in 0..words {
                dst[k] = src[k] ^ col[k];
            }
        }
    };
    if w > 0 {
        recompute(&mut suffix, &support, w - 1);
    }
    loop {
        if suffix[..words].iter().all(|&x| x == 0) {
            let mut full: Vec<usize> = support.clone();
            if let Some(top) = fixed {
                full.push(top);
            }
            let candidate = BitVector::from_support(full_len, &full);
            if !excluded.contains(&candidate) {
                return Some(full);
            }
        }
        if w == 0 {
            return None;
        }
        match colex_advance(&mut support, inner_len) {
            Some(changed) => recompute(&mut suffix, &support, changed),
            None => return None,
        }
    }
}
