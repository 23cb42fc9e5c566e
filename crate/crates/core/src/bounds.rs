//! Closed-form lower bounds, evaluated in exact arithmetic.
//!
//! Every bound here is a truncated series `Σ_{i=0}^{M} (n/2)^{i/2} / i!`
//! (or a single term of it), so each value has the shape `a + b·√(n/2)`
//! with rational `a`, `b`. Values are kept in that exact form: comparisons
//! against integers are decided by squaring, never by floating point, and
//! every decimal rendering is rounded toward zero from below so a reported
//! lower bound is never overstated.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use std::cmp::Ordering;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundsError {
    #[error("this bound needs an even n; got n = {n}")]
    OddN { n: u64 },
    #[error("this bound needs an even layer index; got k = {k}")]
    OddLayer { k: u64 },
    #[error("this bound needs d >= 3; got d = {d}")]
    DistanceTooSmall { d: u64 },
}

/// Floor of the square root of a `u64`.
pub fn isqrt(x: u64) -> u64 {
    if x == 0 {
        return 0;
    }
    let mut s = (x as f64).sqrt() as u64;
    while s.checked_mul(s).is_none_or(|v| v > x) {
        s -= 1;
    }
    while (s + 1).checked_mul(s + 1).is_some_and(|v| v <= x) {
        s += 1;
    }
    s
}

fn big_isqrt(x: &BigInt) -> BigInt {
    assert!(!x.is_negative());
    x.sqrt()
}

fn rational(num: u64, den: u64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// An exact value of the form `a + b·√c` with rational `a`, `b >= 0`,
/// `c >= 0`. Construction folds `b·√c` into `a` whenever `c` is a perfect
/// square of a rational, so `b > 0` implies `√c` is irrational.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundValue {
    a: BigRational,
    b: BigRational,
    c: BigRational,
}

impl BoundValue {
    pub fn new(a: BigRational, b: BigRational, c: BigRational) -> Self {
        assert!(!b.is_negative() && !c.is_negative());
        if b.is_zero() || c.is_zero() {
            return Self {
                a,
                b: BigRational::zero(),
                c: BigRational::zero(),
            };
        }
        let sp = big_isqrt(c.numer());
        let sq = big_isqrt(c.denom());
        if &(&sp * &sp) == c.numer() && &(&sq * &sq) == c.denom() {
            let root = BigRational::new(sp, sq);
            return Self {
                a: a + b * root,
                b: BigRational::zero(),
                c: BigRational::zero(),
            };
        }
        Self { a, b, c }
    }

    pub fn from_rational(a: BigRational) -> Self {
        Self {
            a,
            b: BigRational::zero(),
            c: BigRational::zero(),
        }
    }

    /// True when the value is rational (the √ part vanished or folded).
    pub fn is_exact(&self) -> bool {
        self.b.is_zero()
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        self.is_exact().then_some(&self.a)
    }

    /// Exact comparison against a rational.
    pub fn cmp_rational(&self, r: &BigRational) -> Ordering {
        let diff = &self.a - r;
        if self.b.is_zero() {
            return diff.cmp(&BigRational::zero());
        }
        // value - r = diff + b·√c with b·√c > 0 irrational.
        if !diff.is_negative() {
            return Ordering::Greater;
        }
        let lhs = &self.b * &self.b * &self.c;
        let rhs = &diff * &diff;
        match lhs.cmp(&rhs) {
            Ordering::Greater => Ordering::Greater,
            Ordering::Less => Ordering::Less,
            Ordering::Equal => unreachable!("√c is irrational after normalisation"),
        }
    }

    pub fn cmp_integer(&self, v: u64) -> Ordering {
        self.cmp_rational(&BigRational::from(BigInt::from(v)))
    }

    /// `self <= v`.
    pub fn le_integer(&self, v: u64) -> bool {
        self.cmp_integer(v) != Ordering::Greater
    }

    /// Lower approximation of `value * scale` as an integer
    /// (`floor`-directed; may undershoot the true floor by 1 when the √
    /// part is irrational, never overshoot).
    pub fn floor_scaled(&self, scale: &BigInt) -> BigInt {
        let a = &self.a * scale;
        if self.b.is_zero() {
            return a.floor().to_integer();
        }
        let b = &self.b * scale;
        // a + b√(p/q) = (Pa·Qb·q + Qa·Pb·isqrt-part) / (Qa·Qb·q)
        let (pa, qa) = (a.numer(), a.denom());
        let (pb, qb) = (b.numer(), b.denom());
        let (p, q) = (self.c.numer(), self.c.denom());
        let root = big_isqrt(&(qa * pb * qa * pb * p * q));
        let num = pa * qb * q + root;
        let den = qa * qb * q;
        num.div_floor(&den)
    }

    /// Decimal rendering with `digits` fractional places, a lower
    /// approximation of the exact value.
    pub fn decimal_lower(&self, digits: u32) -> String {
        let scale = BigInt::from(10u32).pow(digits);
        render_scaled(&self.floor_scaled(&scale), digits)
    }
}

/// Renders `scaled / 10^digits` exactly.
fn render_scaled(scaled: &BigInt, digits: u32) -> String {
    let scale = BigInt::from(10u32).pow(digits);
    let sign = if scaled.is_negative() { "-" } else { "" };
    let abs = scaled.abs();
    let int = &abs / &scale;
    let frac = &abs % &scale;
    format!("{sign}{int}.{frac:0>width$}", width = digits as usize)
}

/// Lower approximation of `whole - value`, rendered as a decimal.
pub fn margin_decimal_lower(whole: u64, value: &BoundValue, digits: u32) -> String {
    let scale = BigInt::from(10u32).pow(digits);
    let a = (&BigRational::from(BigInt::from(whole)) - &value.a) * &scale;
    if value.b.is_zero() {
        return render_scaled(&a.floor().to_integer(), digits);
    }
    let b = &value.b * &scale;
    let (pa, qa) = (a.numer(), a.denom());
    let (pb, qb) = (b.numer(), b.denom());
    let (p, q) = (value.c.numer(), value.c.denom());
    let square = qa * pb * qa * pb * p * q;
    let mut root = big_isqrt(&square);
    if &(&root * &root) != &square {
        root += 1; // ceiling: subtracted, so round the √ part up
    }
    let num = pa * qb * q - root;
    let den = qa * qb * q;
    render_scaled(&num.div_floor(&den), digits)
}

const DECIMAL_DIGITS: u32 = 6;

/// One evaluated bound with its provenance and an exact value.
///
/// When `exact` is true the numerator/denominator pair is the value itself;
/// otherwise the pair is `floor(value·10^6) / 10^6`, a lower approximation
/// at the recorded precision.
#[derive(Debug, Clone, Serialize)]
pub struct BoundReport {
    pub formula_id: String,
    pub n: u64,
    pub t_or_d: Option<u64>,
    #[serde(rename = "M")]
    pub m: Option<u64>,
    pub exact: bool,
    pub value_numerator: String,
    pub value_denominator_or_precision: String,
    pub decimal: String,
    pub validity_note: String,
    #[serde(skip)]
    pub value: BoundValue,
}

fn make_report(
    formula_id: &str,
    n: u64,
    t_or_d: Option<u64>,
    m: Option<u64>,
    value: BoundValue,
    validity_note: String,
) -> BoundReport {
    let (exact, num, den) = match value.as_rational() {
        Some(r) => (true, r.numer().to_string(), r.denom().to_string()),
        None => {
            let scale = BigInt::from(10u32).pow(DECIMAL_DIGITS);
            (
                false,
                value.floor_scaled(&scale).to_string(),
                scale.to_string(),
            )
        }
    };
    let decimal = value.decimal_lower(DECIMAL_DIGITS);
    BoundReport {
        formula_id: formula_id.into(),
        n,
        t_or_d,
        m,
        exact,
        value_numerator: num,
        value_denominator_or_precision: den,
        decimal,
        validity_note,
        value,
    }
}

/// `Σ_{i=0}^{m} (n/2)^{i/2} / i!` as an exact `a + b·√(n/2)`.
fn truncated_series(n: u64, m: u64) -> BoundValue {
    let c = rational(n, 2);
    let mut a = BigRational::zero();
    let mut b = BigRational::zero();
    let mut factorial = BigRational::one();
    let mut half_power = BigRational::one(); // c^{floor(i/2)}
    for i in 0..=m {
        if i > 0 {
            factorial *= BigRational::from(BigInt::from(i));
            if i % 2 == 0 {
                half_power *= &c;
            }
        }
        let term = &half_power / &factorial;
        if i % 2 == 0 {
            a += term;
        } else {
            b += term;
        }
    }
    BoundValue::new(a, b, c)
}

/// Two-sided rational enclosure of `e^(√(n/2))`.
fn exp_sqrt_half_interval(n: u64) -> (BigRational, BigRational) {
    let precision: u32 = 12;
    let pow = BigInt::from(10u32).pow(precision);
    // √(n/2) = √(2n)/2; bracket the integer root of 2n·10^(2·precision).
    let scaled = BigInt::from(n) * BigInt::from(2u32) * &pow * &pow;
    let root = big_isqrt(&scaled);
    let den = BigInt::from(2u32) * &pow;
    let x_lo = BigRational::new(root.clone(), den.clone());
    let x_hi = BigRational::new(root + 1, den);

    let terms = 3 * (isqrt(n / 2) + 2) + 20;
    let series = |x: &BigRational| {
        let mut sum = BigRational::one();
        let mut term = BigRational::one();
        for k in 1..=terms {
            term = term * x / BigRational::from(BigInt::from(k));
            sum += &term;
        }
        (sum, term)
    };
    let (lo, _) = series(&x_lo);
    let (hi_partial, last) = series(&x_hi);
    // Geometric tail: remaining terms < last · x/(terms+1) / (1 - x/(terms+2)).
    let ratio = &x_hi / BigRational::from(BigInt::from(terms + 1));
    let tail = last * &ratio / (BigRational::one() - &x_hi / BigRational::from(BigInt::from(terms + 2)));
    (lo, hi_partial + tail)
}

/// Annotation comparing a bound value against `e^(√(n/2))`; informational
/// only, since truncated series sit below the full exponential.
fn exp_annotation(n: u64, value: &BoundValue) -> String {
    let (lo, hi) = exp_sqrt_half_interval(n);
    if value.cmp_rational(&hi) != Ordering::Less {
        format!("value >= e^sqrt(n/2) held numerically at n = {n}")
    } else if value.cmp_rational(&lo) == Ordering::Less {
        format!("value < e^sqrt(n/2) numerically at n = {n}")
    } else {
        format!("value vs e^sqrt(n/2) inconclusive at precision, n = {n}")
    }
}

/// Lower bound on the size of any local pseudo-border of radius `t`:
/// `Σ_{i=0}^{M} (n/2)^{i/2}/i!` with `M = min(t-1, isqrt(n/2))`.
///
/// Panics if `t < 1` or `n < 2`.
pub fn theorem_bound(n: u64, t: u64) -> BoundReport {
    assert!(t >= 1 && n >= 2, "theorem_bound needs t >= 1, n >= 2");
    let m = (t - 1).min(isqrt(n / 2));
    let value = truncated_series(n, m);
    let mut note = format!("truncation M = min(t-1, isqrt(n/2)) = {m}");
    if 2 * t * t > n {
        note = format!("{note}; {}", exp_annotation(n, &value));
    }
    make_report("theorem-5", n, Some(t), Some(m), value, note)
}

/// Lower bound on the quantum distance in terms of the generator dependency
/// distance `d`: the same series with `M = min((d-3)/2, isqrt(n/2))`.
/// Valid when `K != 0`; `n` must be even and `d >= 3`.
pub fn corollary_bound(n: u64, d: u64) -> Result<BoundReport, BoundsError> {
    if n % 2 != 0 {
        return Err(BoundsError::OddN { n });
    }
    if d < 3 {
        return Err(BoundsError::DistanceTooSmall { d });
    }
    let m = ((d - 3) / 2).min(isqrt(n / 2));
    let mut note = format!("valid when K != 0; truncation M = min((d-3)/2, isqrt(n/2)) = {m}");
    if 2 * d * d > n {
        note = format!(
            "{note}; {}",
            exp_annotation(n, &truncated_series(n, m))
        );
    }
    Ok(corollary_bound_with_m(n, Some(d), m, note))
}

/// Corollary-form report with a caller-supplied truncation index; used when
/// `d` is only lower-bounded or no dependency exists at all.
pub fn corollary_bound_with_m(n: u64, d: Option<u64>, m: u64, note: String) -> BoundReport {
    let value = truncated_series(n, m);
    make_report("corollary-5", n, d, Some(m), value, note)
}

/// Exact count bound for one even layer: a radius-`k` layer of a minimal
/// local pseudo-border holds at least `n^(k/2) / (2^(k/2)·k!)` sets.
pub fn k_layer_bound(n: u64, k: u64) -> Result<BoundReport, BoundsError> {
    if k % 2 != 0 {
        return Err(BoundsError::OddLayer { k });
    }
    let half = k / 2;
    let mut num = BigInt::one();
    for _ in 0..half {
        num *= BigInt::from(n);
    }
    let mut den = BigInt::one();
    for i in 1..=k {
        den *= BigInt::from(i);
    }
    den <<= half; // times 2^(k/2)
    let value = BoundValue::from_rational(BigRational::new(num, den));
    let note = format!("even-layer count bound at k = {k}; valid for k <= min(t-1, isqrt(n/2))");
    Ok(make_report("lemma-k-layer", n, Some(k), Some(k), value, note))
}

/// The elementary counting floor `1 + n/2`.
pub fn simple_bound(n: u64) -> BoundReport {
    let value = BoundValue::from_rational(BigRational::one() + rational(n, 2));
    let note = "counting floor; needs radius >= 3 locally (dependency distance >= 7)".to_string();
    make_report("simple", n, None, None, value, note)
}

/// Rational lower bound on `e^(√(n/2))` itself, for threshold reports.
pub fn stirling_floor(n: u64) -> BoundReport {
    let (lo, _) = exp_sqrt_half_interval(n);
    let value = BoundValue::from_rational(lo);
    let report = make_report(
        "stirling-floor",
        n,
        None,
        None,
        value,
        "truncated-series lower bound on e^sqrt(n/2)".to_string(),
    );
    // The rational is an approximant, not the transcendental value itself.
    BoundReport {
        exact: false,
        ..report
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn as_f64(v: &BoundValue) -> f64 {
        let r = |x: &BigRational| {
            let n: f64 = x.numer().to_string().parse().unwrap();
            let d: f64 = x.denom().to_string().parse().unwrap();
            n / d
        };
        r(&v.a) + r(&v.b) * r(&v.c).sqrt()
    }

    #[test]
    fn theorem_t1_is_one() {
        for n in [2, 5, 12, 40] {
            let b = theorem_bound(n, 1);
            assert_eq!(b.m, Some(0));
            assert_eq!(b.value.as_rational().unwrap(), &BigRational::one());
        }
    }

    #[test]
    fn theorem_n2_t2_is_two() {
        let b = theorem_bound(2, 2);
        assert_eq!(b.m, Some(1));
        // (n/2) = 1, so the √ folds: 1 + 1 = 2.
        assert!(b.exact);
        assert_eq!(b.value_numerator, "2");
        assert_eq!(b.value_denominator_or_precision, "1");
    }

    #[test]
    fn corollary_d3_is_one() {
        let b = corollary_bound(8, 3).unwrap();
        assert_eq!(b.m, Some(0));
        assert_eq!(b.value.as_rational().unwrap(), &BigRational::one());
    }

    #[test]
    fn corollary_d7_n8_is_five() {
        // (n/2) = 4: 1 + √4 + 4/2 = 5, all exact.
        let b = corollary_bound(8, 7).unwrap();
        assert_eq!(b.m, Some(2));
        assert!(b.exact);
        assert_eq!(b.value_numerator, "5");
        assert_eq!(b.value.cmp_integer(5), Ordering::Equal);
    }

    #[test]
    fn corollary_rejects_odd_n() {
        assert!(matches!(corollary_bound(7, 5), Err(BoundsError::OddN { n: 7 })));
    }

    #[test]
    fn corollary_monotone_in_d() {
        for n in [4u64, 8, 16, 32] {
            let mut prev = corollary_bound(n, 3).unwrap();
            for d in 4..20 {
                let next = corollary_bound(n, d).unwrap();
                // nondecreasing: next >= prev
                let scale = BigInt::from(10u64.pow(9));
                assert!(next.value.floor_scaled(&scale) >= prev.value.floor_scaled(&scale) - BigInt::one());
                assert!(as_f64(&next.value) + 1e-9 >= as_f64(&prev.value));
                prev = next;
            }
        }
    }

    #[test]
    fn k_layer_values() {
        let b0 = k_layer_bound(10, 0).unwrap();
        assert_eq!(b0.value.as_rational().unwrap(), &BigRational::one());
        let b2 = k_layer_bound(10, 2).unwrap();
        assert_eq!(b2.value.as_rational().unwrap(), &rational(10, 4));
        let b4 = k_layer_bound(32, 4).unwrap();
        assert_eq!(b4.value.as_rational().unwrap(), &rational(32, 3));
        assert!(matches!(k_layer_bound(10, 3), Err(BoundsError::OddLayer { k: 3 })));
    }

    #[test]
    fn simple_bound_values() {
        assert_eq!(simple_bound(2).value.as_rational().unwrap(), &rational(2, 1));
        assert_eq!(simple_bound(8).value.as_rational().unwrap(), &rational(5, 1));
    }

    #[test]
    fn truncation_saturates() {
        for n in [2u64, 8, 18, 32, 50] {
            let sat = isqrt(n / 2);
            let base = theorem_bound(n, sat + 1);
            for t in sat + 2..sat + 6 {
                let b = theorem_bound(n, t);
                assert_eq!(b.m, base.m);
                assert_eq!(b.value, base.value);
            }
        }
    }

    #[test]
    fn corollary_below_matching_theorem() {
        // For odd d, the corollary at d matches the theorem at t = (d-1)/2 + 1
        // in truncation; the corollary index is one lower, so its value is <=.
        let scale = BigInt::from(10u64.pow(9));
        for d in (3..=15u64).step_by(2) {
            for n in (2..=64u64).step_by(2) {
                let cor = corollary_bound(n, d).unwrap();
                let theo = theorem_bound(n, (d - 1) / 2 + 1);
                assert!(
                    cor.value.floor_scaled(&scale) <= theo.value.floor_scaled(&scale),
                    "corollary exceeds theorem at n={n}, d={d}"
                );
            }
        }
    }

    #[test]
    fn decimal_is_lower_approximation() {
        for (n, t) in [(3u64, 2u64), (6, 3), (12, 4), (50, 9)] {
            let b = theorem_bound(n, t);
            let dec: f64 = b.decimal.parse().unwrap();
            let truth = as_f64(&b.value);
            assert!(dec <= truth + 1e-12, "decimal {dec} overshoots {truth}");
            assert!(truth - dec < 1e-5, "decimal {dec} too far below {truth}");
        }
    }

    #[test]
    fn exact_comparison_squares_correctly() {
        // 1 + √2 vs 2: (2-1)^2 = 1 < 2 → greater; vs 3: (3-1)^2 = 4 > 2 → less.
        let v = theorem_bound(4, 2).value;
        assert_eq!(v.cmp_integer(2), Ordering::Greater);
        assert_eq!(v.cmp_integer(3), Ordering::Less);
        assert!(v.le_integer(3));
        assert!(!v.le_integer(2));
    }

    #[test]
    fn margin_rendering_is_signed_floor() {
        let v = theorem_bound(4, 2).value; // 1 + √2 ≈ 2.4142
        let m = margin_decimal_lower(3, &v, 6);
        let got: f64 = m.parse().unwrap();
        assert!((got - (3.0 - (1.0 + 2f64.sqrt()))).abs() < 1e-5);
        let neg = margin_decimal_lower(2, &v, 6);
        assert!(neg.starts_with('-'));
        let got: f64 = neg.parse().unwrap();
        assert!((got - (2.0 - (1.0 + 2f64.sqrt()))).abs() < 1e-5);
    }

    #[test]
    fn stirling_floor_is_below_exponential() {
        for n in [2u64, 8, 18, 50] {
            let rep = stirling_floor(n);
            let got: f64 = rep.decimal.parse().unwrap();
            let truth = ((n as f64) / 2.0).sqrt().exp();
            assert!(got <= truth);
            assert!(truth - got < 1e-3 * truth);
        }
    }

    #[test]
    fn isqrt_edges() {
        assert_eq!(isqrt(0), 0);
        assert_eq!(isqrt(1), 1);
        assert_eq!(isqrt(3), 1);
        assert_eq!(isqrt(4), 2);
        assert_eq!(isqrt(u64::MAX), 4294967295);
    }
}
