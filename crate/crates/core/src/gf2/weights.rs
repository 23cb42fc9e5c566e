use super::BitVector;

/// Binomial coefficient as u128, saturating on overflow.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// Advances a strictly increasing support array to its colexicographic
/// successor among `weight`-subsets of `0..len`.
///
/// Returns the lowest index whose entry changed, or `None` when the final
/// combination `{len-weight, .., len-1}` has been passed. Entries below the
/// returned index are reset to `0..index`.
pub(crate) fn colex_advance(support: &mut [usize], len: usize) -> Option<usize> {
    let w = support.len();
    for i in 0..w {
        let limit = if i + 1 < w { support[i + 1] } else { len };
        if support[i] + 1 < limit {
            support[i] += 1;
            for (j, slot) in support.iter_mut().enumerate().take(i) {
                *slot = j;
            }
            return Some(i);
        }
    }
    None
}

/// Iterator over all length-`len` vectors of exactly `weight` set bits, in
/// colexicographic order of support sets (equivalently: ascending numeric
/// value of the bit pattern).
pub struct FixedWeightIter {
    len: usize,
    support: Vec<usize>,
    started: bool,
    done: bool,
}

/// Yields every weight-`weight` vector of length `len` exactly once;
/// `C(len, weight)` vectors in total.
///
/// Panics if `weight > len`.
pub fn fixed_weight_iter(len: usize, weight: usize) -> FixedWeightIter {
    assert!(weight <= len, "weight {weight} exceeds length {len}");
    FixedWeightIter {
        len,
        support: (0..weight).collect(),
        started: false,
        done: false,
    }
}

impl Iterator for FixedWeightIter {
    type Item = BitVector;

    fn next(&mut self) -> Option<BitVector> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
        } else if colex_advance(&mut self.support, self.len).is_none() {
            self.done = true;
            return None;
        }
        Some(BitVector::from_support(self.len, &self.support))
    }
}
