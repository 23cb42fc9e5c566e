//! Local pseudo-borders of the hypercube on `[n] = {1, .., n}`.
//!
//! A subset of `[n]` is a bitmask: element `e` (1-based) is bit `e-1`. A
//! family of subsets of radius at most `t` around `∅` is a local
//! pseudo-border of radius `t` when it contains `∅` and meets the
//! neighbourhood of every center of size `<= t-1` in an even number of
//! members. Those parity conditions are linear, so the families (minus the
//! `∅` anchor) form the kernel of a constraint matrix over the ball, and
//! exact minimum searches run on that system.
//!
//! Ball columns are ordered by (size, colex) throughout: layer `k` occupies
//! one contiguous column range, and colex within a layer is plain numeric
//! order on masks.

use crate::gf2::{
    binomial, fixed_weight_iter, in_span, min_weight_in_coset, BitMatrix, BitVector, Gf2Error,
    SearchOutcome,
};
use serde_json::Value;
use std::collections::{BTreeSet, HashMap};
use thiserror::Error;

/// A subset of `[n]` as a bitmask.
pub type Mask = u64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CubeError {
    #[error("radius t = {t} must satisfy 1 <= t < n = {n}")]
    BadRadius { t: usize, n: usize },
    #[error("ground set n = {n} exceeds the mask width (max 63)")]
    GroundSetTooLarge { n: usize },
    #[error("ball of radius {t} over [{n}] has {size} vertices, over the budget {budget}")]
    BallBudgetExceeded {
        n: usize,
        t: usize,
        size: u128,
        budget: u128,
    },
    #[error("family is not a local pseudo-border of radius {t}")]
    NotPseudoBorder { t: usize },
    #[error(transparent)]
    Gf2(#[from] Gf2Error),
}

/// Largest ball (column count) the constraint builder will materialise.
pub const DEFAULT_BALL_BUDGET: u128 = 1 << 20;

/// 1-based elements of a mask, ascending.
pub fn mask_elements(mask: Mask) -> Vec<usize> {
    let mut out = Vec::with_capacity(mask.count_ones() as usize);
    let mut m = mask;
    while m != 0 {
        out.push(m.trailing_zeros() as usize + 1);
        m &= m - 1;
    }
    out
}

/// Mask from 1-based elements.
pub fn mask_from_elements(elements: &[usize]) -> Mask {
    elements.iter().fold(0, |m, &e| {
        assert!((1..=63).contains(&e), "element {e} out of range");
        m | (1 << (e - 1))
    })
}

/// Sort key giving the (size, colex) ball order; colex on equal-size masks
/// coincides with numeric order.
fn ball_order_key(mask: Mask) -> (u32, Mask) {
    (mask.count_ones(), mask)
}

/// A deduplicated family of subsets of `[n]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetFamily {
    n: usize,
    members: BTreeSet<Mask>,
}

impl SetFamily {
    pub fn empty(n: usize) -> Self {
        assert!(n <= 63, "ground set too large for masks");
        Self {
            n,
            members: BTreeSet::new(),
        }
    }

    pub fn from_masks(n: usize, masks: impl IntoIterator<Item = Mask>) -> Self {
        let mut f = Self::empty(n);
        for m in masks {
            assert!(m >> n == 0, "mask {m:#b} outside [{n}]");
            f.members.insert(m);
        }
        f
    }

    pub fn ground_set_size(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, mask: Mask) -> bool {
        self.members.contains(&mask)
    }

    /// Membership toggle; the building block of symmetric differences.
    pub fn toggle(&mut self, mask: Mask) {
        assert!(mask >> self.n == 0, "mask outside ground set");
        if !self.members.insert(mask) {
            self.members.remove(&mask);
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = Mask> + '_ {
        self.members.iter().copied()
    }

    /// Members in ball order (size, then colex).
    pub fn members_ball_order(&self) -> Vec<Mask> {
        let mut v: Vec<Mask> = self.members.iter().copied().collect();
        v.sort_by_key(|&m| ball_order_key(m));
        v
    }

    pub fn symmetric_difference(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let members = self
            .members
            .symmetric_difference(&other.members)
            .copied()
            .collect();
        Self { n: self.n, members }
    }

    /// JSON form: a list of sorted 1-based element lists, in ball order.
    pub fn to_json_value(&self) -> Value {
        Value::Array(
            self.members_ball_order()
                .into_iter()
                .map(|m| {
                    Value::Array(
                        mask_elements(m)
                            .into_iter()
                            .map(|e| Value::Number(e.into()))
                            .collect(),
                    )
                })
                .collect(),
        )
    }
}

/// The `n` subsets at Hamming distance 1 from `s`.
pub fn neighborhood(n: usize, s: Mask) -> Vec<Mask> {
    (0..n).map(|i| s ^ (1 << i)).collect()
}

/// Number of members of `f` inside the neighbourhood of `center`.
fn neighborhood_count(f: &SetFamily, center: Mask) -> usize {
    (0..f.n).filter(|&i| f.contains(center ^ (1 << i))).count()
}

/// Checks the three defining conditions of a radius-`t` local
/// pseudo-border: `∅` is a member, every member has size `<= t`, and every
/// center of size `<= t-1` (member or not) sees an even number of members.
///
/// Panics unless `1 <= t < n`.
pub fn is_t_pseudo_border(f: &SetFamily, t: usize) -> bool {
    let n = f.ground_set_size();
    assert!(t >= 1 && t < n, "need 1 <= t < n");
    if !f.contains(0) {
        return false;
    }
    if f.iter().any(|m| m.count_ones() as usize > t) {
        return false;
    }
    for size in 0..t {
        for center in fixed_weight_iter(n, size) {
            if neighborhood_count(f, center.low_u64()) % 2 != 0 {
                return false;
            }
        }
    }
    true
}

/// Symmetric difference of `f` with the neighbourhood of `s`.
pub fn flip(f: &SetFamily, s: Mask) -> SetFamily {
    let mut out = f.clone();
    for m in neighborhood(f.ground_set_size(), s) {
        out.toggle(m);
    }
    out
}

/// The parity-constraint system over the radius-`t` ball: one row per
/// center of size `<= t-1`, one column per ball vertex, entry 1 when the
/// vertex neighbours the center. Kernel vectors with the `∅` bit set are
/// exactly the radius-`t` local pseudo-borders.
#[derive(Debug, Clone)]
pub struct PseudoBorderSystem {
    pub n: usize,
    pub t: usize,
    pub constraints: BitMatrix,
    /// Column index -> mask, in (size, colex) order; `ball[0]` is `∅`.
    pub ball: Vec<Mask>,
    index: HashMap<Mask, usize>,
}

impl PseudoBorderSystem {
    pub fn column_of(&self, mask: Mask) -> Option<usize> {
        self.index.get(&mask).copied()
    }

    pub fn family_from_indicator(&self, x: &BitVector) -> SetFamily {
        assert_eq!(x.len(), self.ball.len());
        SetFamily::from_masks(self.n, x.support().into_iter().map(|i| self.ball[i]))
    }

    /// Indicator over ball columns; `None` if a member falls outside the
    /// ball.
    pub fn indicator_of(&self, f: &SetFamily) -> Option<BitVector> {
        let mut x = BitVector::zeros(self.ball.len());
        for m in f.iter() {
            x.set(self.column_of(m)?, true);
        }
        Some(x)
    }
}

/// Builds the constraint system for radius `t` over `[n]`.
pub fn build_constraints(n: usize, t: usize) -> Result<PseudoBorderSystem, CubeError> {
    build_constraints_with_budget(n, t, DEFAULT_BALL_BUDGET)
}

pub fn build_constraints_with_budget(
    n: usize,
    t: usize,
    budget: u128,
) -> Result<PseudoBorderSystem, CubeError> {
    if n > 63 {
        return Err(CubeError::GroundSetTooLarge { n });
    }
    if t < 1 || t >= n {
        return Err(CubeError::BadRadius { t, n });
    }
    let ball_size: u128 = (0..=t).map(|i| binomial(n, i)).sum();
    if ball_size > budget {
        return Err(CubeError::BallBudgetExceeded {
            n,
            t,
            size: ball_size,
            budget,
        });
    }
    let mut ball: Vec<Mask> = Vec::with_capacity(ball_size as usize);
    for size in 0..=t {
        ball.extend(fixed_weight_iter(n, size).map(|v| v.low_u64()));
    }
    let index: HashMap<Mask, usize> = ball.iter().enumerate().map(|(i, &m)| (m, i)).collect();

    let mut rows = Vec::new();
    for size in 0..t {
        for center in fixed_weight_iter(n, size) {
            let center = center.low_u64();
            let mut row = BitVector::zeros(ball.len());
            // Every neighbour of a size <= t-1 center stays inside the ball.
            for m in neighborhood(n, center) {
                row.set(index[&m], true);
            }
            rows.push(row);
        }
    }
    let constraints = BitMatrix::from_rows(rows).expect("uniform rows");
    Ok(PseudoBorderSystem {
        n,
        t,
        constraints,
        ball,
        index,
    })
}

/// Outcome of the exact minimum search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PseudoBorderSearch {
    Found { size: usize, witness: SetFamily },
    /// No family satisfies the constraints at all (certified by linear
    /// algebra, not by exhaustion).
    Infeasible,
    CapExhausted { cap: usize },
}

/// Exact minimum cardinality of a radius-`t` local pseudo-border of `[n]`,
/// by increasing-weight search over the constraint kernel with the `∅` bit
/// anchored.
///
/// The anchor is folded into the coset engine: vectors with the `∅` bit
/// clear form the kernel of the system extended by the row `e_∅`, and that
/// kernel is handed to the engine as the excluded span, so the machinery
/// runs unchanged.
pub fn minimal_t_pseudo_border(
    n: usize,
    t: usize,
    cap: Option<usize>,
) -> Result<PseudoBorderSearch, CubeError> {
    let sys = build_constraints(n, t)?;
    let cols = sys.ball.len();
    let cap = cap.unwrap_or(cols).min(cols);

    let anchor = BitVector::from_support(cols, &[0]);
    if in_span(&sys.constraints, &anchor)? {
        // x_∅ vanishes on the whole kernel: no family contains ∅.
        return Ok(PseudoBorderSearch::Infeasible);
    }
    let mut extended = sys.constraints.clone();
    extended.push_row(anchor);
    let excluded = extended.kernel_basis();

    match min_weight_in_coset(&sys.constraints, &excluded, cap)? {
        SearchOutcome::Found { weight, witness } => {
            let family = sys.family_from_indicator(&witness);
            debug_assert!(is_t_pseudo_border(&family, t));
            Ok(PseudoBorderSearch::Found {
                size: weight,
                witness: family,
            })
        }
        SearchOutcome::NoneExists => Ok(PseudoBorderSearch::Infeasible),
        SearchOutcome::CapExhausted { cap } => Ok(PseudoBorderSearch::CapExhausted { cap }),
    }
}

/// Number of members of size `k`.
pub fn count_k_sets(f: &SetFamily, k: usize) -> usize {
    f.iter().filter(|m| m.count_ones() as usize == k).count()
}

/// All size-`k` subsets of `[n]` (members or not) containing an odd number
/// of size-`k-1` members of `f`.
///
/// Panics if `k < 1`.
pub fn odd_sets(f: &SetFamily, k: usize) -> SetFamily {
    assert!(k >= 1, "odd sets need k >= 1");
    let n = f.ground_set_size();
    let mut out = SetFamily::empty(n);
    if k > n {
        return out;
    }
    for cand in fixed_weight_iter(n, k) {
        let mask = cand.low_u64();
        let mut count = 0;
        let mut m = mask;
        while m != 0 {
            let low = m & m.wrapping_neg();
            if f.contains(mask ^ low) {
                count += 1;
            }
            m ^= low;
        }
        if count % 2 == 1 {
            out.toggle(mask);
        }
    }
    out
}

/// Layer propagation: odd size-`k` sets each force a size-`k+1` member, and
/// one member absorbs at most `k+1` of them.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OddToNext {
    pub s_odd: usize,
    pub s_next: usize,
    pub holds: bool,
}

/// For a minimal family (caller-certified) and `k < t-1`: at least
/// `s_odd / (k+1)` members of size `k+1`. The comparison is exact:
/// `(k+1)·s_next >= s_odd`.
pub fn verify_odd_to_next(f: &SetFamily, k: usize) -> OddToNext {
    let s_odd = odd_sets(f, k).len();
    let s_next = count_k_sets(f, k + 1);
    OddToNext {
        s_odd,
        s_next,
        holds: (k + 1) * s_next >= s_odd,
    }
}

/// Expansion step: size-`k` members force odd size-`k+1` sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SetsToOdd {
    pub s_k: usize,
    pub odd_next: usize,
    pub holds: bool,
}

/// For a minimal family (caller-certified) and `1 <= k <= t-2`: at least
/// `(n - (k-1)k)/(k+1) · s_k` odd size-`k+1` sets. Exact comparison via
/// cross-multiplication in signed arithmetic (the factor can be negative,
/// making the claim vacuous).
pub fn verify_sets_to_odd(f: &SetFamily, k: usize) -> SetsToOdd {
    let n = f.ground_set_size() as i128;
    let k_i = k as i128;
    let s_k = count_k_sets(f, k);
    let odd_next = odd_sets(f, k + 1).len();
    let holds = (k_i + 1) * odd_next as i128 >= (n - (k_i - 1) * k_i) * s_k as i128;
    SetsToOdd {
        s_k,
        odd_next,
        holds,
    }
}

/// Greedy descent by flips with centers of size `2..=t-1`: while some flip
/// strictly shrinks the family, apply the best one (ties broken by the
/// smallest center in (size, colex) order), up to `budget` flips. The
/// result is a radius-`t` local pseudo-border of cardinality `<= |f|`; a
/// fixed point is flip-minimal, which is an upper-bound certificate only.
pub fn flip_descent(f: &SetFamily, t: usize, budget: usize) -> Result<SetFamily, CubeError> {
    let n = f.ground_set_size();
    if !is_t_pseudo_border(f, t) {
        return Err(CubeError::NotPseudoBorder { t });
    }
    let mut current = f.clone();
    for _ in 0..budget {
        // Flipping along s replaces |f ∩ N(s)| members by n - |f ∩ N(s)|.
        let mut best: Option<(i64, Mask)> = None;
        for size in 2..t {
            for center in fixed_weight_iter(n, size) {
                let center = center.low_u64();
                let inside = neighborhood_count(&current, center) as i64;
                let delta = n as i64 - 2 * inside;
                if delta < 0 && best.is_none_or(|(d, _)| delta < d) {
                    best = Some((delta, center));
                }
            }
        }
        let Some((_, center)) = best else { break };
        current = flip(&current, center);
        debug_assert!(is_t_pseudo_border(&current, t));
    }
    Ok(current)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn family(n: usize, members: &[&[usize]]) -> SetFamily {
        SetFamily::from_masks(n, members.iter().map(|els| mask_from_elements(els)))
    }

    #[test]
    fn neighborhood_of_empty_set() {
        let nb = neighborhood(3, 0);
        assert_eq!(nb, vec![0b001, 0b010, 0b100]);
    }

    #[test]
    fn neighborhood_of_pair() {
        // {1,3} in [3]: drops to {3} or {1}, or grows to {1,2,3}.
        let nb: BTreeSet<Mask> = neighborhood(3, 0b101).into_iter().collect();
        let expect: BTreeSet<Mask> = [0b100, 0b001, 0b111].into_iter().collect();
        assert_eq!(nb, expect);
    }

    #[test]
    fn set_never_in_own_neighborhood() {
        for s in 0u64..32 {
            assert!(!neighborhood(5, s).contains(&s));
        }
    }

    #[test]
    fn empty_anchor_alone_fails_parity() {
        // {∅} leaves every singleton center seeing exactly one member (∅).
        let f = family(4, &[&[]]);
        assert!(!is_t_pseudo_border(&f, 2));
    }

    #[test]
    fn empty_family_is_not_pseudo_border() {
        let f = SetFamily::empty(4);
        assert!(!is_t_pseudo_border(&f, 2));
    }

    #[test]
    fn matching_families_are_pseudo_borders() {
        let f = family(4, &[&[], &[1, 2], &[3, 4]]);
        assert!(is_t_pseudo_border(&f, 2));
        assert!(is_t_pseudo_border(&f, 3));
        let g = family(6, &[&[], &[1, 2], &[3, 4], &[5, 6]]);
        assert!(is_t_pseudo_border(&g, 3));
        // Triples contain one matched pair each, breaking radius 4.
        assert!(!is_t_pseudo_border(&g, 4));
    }

    #[test]
    fn flip_is_involution() {
        let f = family(5, &[&[], &[1, 2], &[2, 3, 4]]);
        let s = mask_from_elements(&[2, 4]);
        assert_eq!(flip(&flip(&f, s), s), f);
    }

    #[test]
    fn flip_of_empty_family_is_neighborhood() {
        let f = SetFamily::empty(4);
        let s = mask_from_elements(&[1, 3]);
        let flipped = flip(&f, s);
        let expect = SetFamily::from_masks(4, neighborhood(4, s));
        assert_eq!(flipped, expect);
    }

    #[test]
    fn constraint_dimensions_for_n3_t2() {
        let sys = build_constraints(3, 2).unwrap();
        assert_eq!(sys.ball.len(), 7); // 1 + 3 + 3
        assert_eq!(sys.constraints.nrows(), 4); // 1 + 3 centers
        for row in sys.constraints.rows() {
            assert_eq!(row.weight(), 3); // every center has n neighbours
        }
    }

    #[test]
    fn kernel_with_anchor_matches_predicate_exhaustively() {
        // n <= 5, t <= 3: every indicator over the ball, both routes agree.
        for (n, t) in [(4, 2), (4, 3), (5, 2), (5, 3)] {
            let sys = build_constraints(n, t).unwrap();
            let cols = sys.ball.len();
            if cols > 16 {
                continue; // keep the exhaustive route small
            }
            for bits in 0u64..(1 << cols) {
                let x = BitVector::from_u64(cols, bits);
                let f = sys.family_from_indicator(&x);
                let kernel_member = sys.constraints.mul_vector(&x).unwrap().is_zero();
                let anchored = x.get(0);
                assert_eq!(
                    is_t_pseudo_border(&f, t),
                    kernel_member && anchored,
                    "mismatch at n={n}, t={t}, bits={bits:#b}"
                );
            }
        }
    }

    #[test]
    fn odd_one_sets_are_all_singletons_when_anchored() {
        let f = family(6, &[&[], &[1, 2], &[3, 4], &[5, 6]]);
        assert_eq!(odd_sets(&f, 1).len(), 6);
    }

    #[test]
    fn odd_sets_empty_without_lower_layer() {
        let f = family(5, &[&[1, 2, 3]]);
        assert!(odd_sets(&f, 2).is_empty());
    }

    #[test]
    fn odd_sets_match_bruteforce() {
        // Fixed pseudo-random families on n = 8, oracle by direct subset
        // enumeration.
        let mut state = 0x9E3779B97F4A7C15u64;
        let mut next = || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for _ in 0..20 {
            let f = SetFamily::from_masks(8, (0..6).map(|_| next() & 0xFF));
            for k in 1..=4usize {
                let got = odd_sets(&f, k);
                let mut expect = SetFamily::empty(8);
                for cand in 0u64..256 {
                    if cand.count_ones() as usize != k {
                        continue;
                    }
                    let contained = f
                        .iter()
                        .filter(|&m| {
                            m.count_ones() as usize == k - 1 && m & !cand == 0
                        })
                        .count();
                    if contained % 2 == 1 {
                        expect.toggle(cand);
                    }
                }
                assert_eq!(got, expect);
            }
        }
    }

    #[test]
    fn count_k_sets_basics() {
        let f = family(5, &[&[]]);
        assert_eq!(count_k_sets(&f, 0), 1);
        assert_eq!(count_k_sets(&f, 7), 0);
    }

    #[test]
    fn minimal_search_small_even_cases() {
        let out = minimal_t_pseudo_border(4, 2, None).unwrap();
        let PseudoBorderSearch::Found { size, witness } = out else {
            panic!("expected minimum for (4,2)");
        };
        assert_eq!(size, 3);
        assert!(is_t_pseudo_border(&witness, 2));

        let out = minimal_t_pseudo_border(4, 3, None).unwrap();
        let PseudoBorderSearch::Found { size, witness } = out else {
            panic!("expected minimum for (4,3)");
        };
        assert_eq!(size, 3);
        assert!(is_t_pseudo_border(&witness, 3));
    }

    #[test]
    fn odd_ground_sets_are_infeasible_for_radius_two_plus() {
        // Every singleton center sees ∅ plus its incident pairs, so pair
        // degrees must all be odd: impossible on an odd ground set.
        for (n, t) in [(3, 2), (5, 2), (5, 3), (7, 2)] {
            let out = minimal_t_pseudo_border(n, t, None).unwrap();
            assert_eq!(out, PseudoBorderSearch::Infeasible, "(n,t) = ({n},{t})");
        }
    }

    #[test]
    fn infeasibility_agrees_with_bruteforce_on_5_2() {
        let sys = build_constraints(5, 2).unwrap();
        let cols = sys.ball.len(); // 16
        let mut found = false;
        for bits in 0u64..(1 << cols) {
            if bits & 1 == 0 {
                continue;
            }
            let x = BitVector::from_u64(cols, bits);
            if sys.constraints.mul_vector(&x).unwrap().is_zero() {
                found = true;
                break;
            }
        }
        assert!(!found);
    }

    #[test]
    fn flip_descent_fixes_minimal_witness() {
        let out = minimal_t_pseudo_border(4, 3, None).unwrap();
        let PseudoBorderSearch::Found { witness, .. } = out else {
            panic!()
        };
        let descended = flip_descent(&witness, 3, 100).unwrap();
        assert_eq!(descended, witness);
    }

    #[test]
    fn flip_descent_rejects_non_pseudo_border() {
        let f = family(4, &[&[1]]);
        assert!(matches!(
            flip_descent(&f, 3, 10),
            Err(CubeError::NotPseudoBorder { t: 3 })
        ));
    }

    #[test]
    fn json_rendering_is_sorted() {
        let f = family(4, &[&[2, 3], &[], &[1]]);
        assert_eq!(f.to_json_value().to_string(), "[[],[1],[2,3]]");
    }
}
