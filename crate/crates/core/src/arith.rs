//! Number-theory tasks: prime-characteristic sliding windows, the
//! Liouville-lambda control, digit/mod-p tasks, and elliptic-curve
//! trace vectors.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::dataset::{balance_downsample, Example, FeatureShape, LabeledDataset};
use crate::error::Error;
use crate::rng::RngSeed;
use crate::Result;

/// Sieve of Eratosthenes over the odd numbers.
#[derive(Debug, Clone)]
pub struct PrimeTable {
    limit: usize,
    /// `odd[i]` says whether `2 i + 1` is prime (index 0 covers 1).
    odd: Vec<bool>,
    primes: Vec<usize>,
}

impl PrimeTable {
    pub fn sieve(limit: usize) -> Result<PrimeTable> {
        if limit < 3 {
            return Err(Error::InvalidArgument("sieve limit must be at least 3".into()));
        }
        let half = limit / 2 + 1;
        let mut odd = vec![true; half];
        odd[0] = false; // 1 is not prime
        let mut i = 1;
        while (2 * i + 1) * (2 * i + 1) <= limit {
            if odd[i] {
                let p = 2 * i + 1;
                let mut m = (p * p) / 2;
                while m < half {
                    odd[m] = false;
                    m += p;
                }
            }
            i += 1;
        }
        let mut primes = vec![2];
        primes.extend(
            (1..half)
                .filter(|&i| odd[i] && 2 * i + 1 <= limit)
                .map(|i| 2 * i + 1),
        );
        Ok(PrimeTable { limit, odd, primes })
    }

    pub fn limit(&self) -> usize {
        self.limit
    }

    /// The prime characteristic function.
    pub fn is_prime(&self, n: usize) -> bool {
        debug_assert!(n <= self.limit, "sieve does not cover {n}");
        if n < 2 {
            false
        } else if n % 2 == 0 {
            n == 2
        } else {
            self.odd[n / 2]
        }
    }

    #[inline]
    pub fn delta(&self, n: usize) -> u8 {
        u8::from(self.is_prime(n))
    }

    /// All primes up to the limit, ascending.
    pub fn primes(&self) -> &[usize] {
        &self.primes
    }
}

/// Liouville lambda: (-1) to the number of prime factors counted with
/// multiplicity, by trial division over the sieve's primes.
pub fn liouville(n: u64, table: &PrimeTable) -> Result<i8> {
    if n == 0 {
        return Err(Error::InvalidArgument("liouville is defined for n >= 1".into()));
    }
    let mut m = n;
    let mut omega = 0u32;
    for &p in table.primes() {
        let p = p as u64;
        if p * p > m {
            break;
        }
        while m % p == 0 {
            m /= p;
            omega += 1;
        }
    }
    if m > 1 {
        // the remaining factor is prime once all p <= sqrt(m) are covered
        if m > (table.limit() as u64).saturating_mul(table.limit() as u64) {
            return Err(Error::InvalidArgument(format!(
                "sieve limit {} too small to factor {n}",
                table.limit()
            )));
        }
        omega += 1;
    }
    Ok(if omega % 2 == 0 { 1 } else { -1 })
}

/// Sliding-window construction shared by the prime and Liouville tasks:
/// windows of `window + 1` odd-number values starting at odd index `i`,
/// labeled by the value at index `i + window + offset`.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct WindowSpec {
    pub window: usize,
    pub offset: usize,
    pub i_start: usize,
    pub i_end: usize,
}

impl Default for WindowSpec {
    fn default() -> Self {
        WindowSpec {
            window: 100,
            offset: 10_000,
            i_start: 1,
            i_end: 50_000,
        }
    }
}

impl WindowSpec {
    pub fn validate(&self) -> Result<()> {
        if self.window == 0 || self.offset == 0 {
            return Err(Error::InvalidArgument(
                "window and offset must be positive".into(),
            ));
        }
        if self.i_start == 0 || self.i_start > self.i_end {
            return Err(Error::InvalidArgument("need 1 <= i_start <= i_end".into()));
        }
        Ok(())
    }

    /// Largest odd number the sieve must cover.
    pub fn sieve_limit(&self) -> usize {
        2 * (self.i_end + self.window + self.offset) + 1
    }
}

fn window_task(
    spec: &WindowSpec,
    value: impl Fn(usize) -> u8,
    task_id: &str,
    seed: RngSeed,
) -> Result<LabeledDataset> {
    let mut examples = Vec::with_capacity(spec.i_end - spec.i_start + 1);
    for i in spec.i_start..=spec.i_end {
        let features = (0..=spec.window)
            .map(|j| f64::from(value(2 * (i + j) + 1)))
            .collect();
        let label = usize::from(value(2 * (i + spec.window + spec.offset) + 1));
        examples.push(Example { features, label });
    }
    let ds = LabeledDataset::new(examples, FeatureShape::Flat(spec.window + 1), 2, task_id)?;
    balance_downsample(&ds, seed)
}

/// Binary classification of prime-characteristic windows: predict
/// whether the odd number `offset` slots past the window is prime.
/// Balanced by down-sampling the non-prime majority.
pub fn gen_prime_window_task(spec: &WindowSpec, seed: RngSeed) -> Result<LabeledDataset> {
    spec.validate()?;
    let table = PrimeTable::sieve(spec.sieve_limit())?;
    window_task(spec, |n| table.delta(n), "prime-window", seed)
}

/// The same window construction with the Liouville lambda in place of
/// the prime characteristic (-1 mapped to 0, +1 to 1).
pub fn gen_liouville_task(spec: &WindowSpec, seed: RngSeed) -> Result<LabeledDataset> {
    spec.validate()?;
    let table = PrimeTable::sieve(spec.sieve_limit())?;
    window_task(
        spec,
        |n| u8::from(liouville(n as u64, &table).expect("sieve covers the window") > 0),
        "liouville-window",
        seed,
    )
}

/// Fixed-width digit list of `n` in `base`, most significant first.
pub fn digits(n: u64, base: u64, width: usize) -> Vec<f64> {
    let mut out = vec![0.0; width];
    let mut m = n;
    for slot in out.iter_mut().rev() {
        *slot = (m % base) as f64;
        m /= base;
    }
    debug_assert_eq!(m, 0, "width too small for {n} in base {base}");
    out
}

fn digit_width(max: u64, base: u64) -> usize {
    let mut width = 1;
    let mut m = max;
    while m >= base {
        m /= base;
        width += 1;
    }
    width
}

/// Residue classification with a fixed modulus: features are the digits
/// of `n` in `base`, the label is `n mod p`. Balanced across the `p`
/// residue classes.
pub fn gen_modp_fixed_task(
    p: u64,
    n_start: u64,
    n_end: u64,
    base: u64,
    seed: RngSeed,
) -> Result<LabeledDataset> {
    if p < 2 {
        return Err(Error::InvalidArgument("modulus must be at least 2".into()));
    }
    if base < 2 {
        return Err(Error::InvalidArgument("base must be at least 2".into()));
    }
    if n_start >= n_end {
        return Err(Error::InvalidArgument("need n_start < n_end".into()));
    }
    let width = digit_width(n_end - 1, base);
    let examples = (n_start..n_end)
        .map(|n| Example {
            features: digits(n, base, width),
            label: (n % p) as usize,
        })
        .collect();
    let ds = LabeledDataset::new(
        examples,
        FeatureShape::Flat(width),
        p as usize,
        &format!("modp-fixed-p{p}"),
    )?;
    balance_downsample(&ds, seed)
}

/// Divisibility with the modulus as part of the input: features are the
/// digits of `n` followed by the digits of `p`, the label says whether
/// `p` divides `n`. All `(n, p)` pairs over the given moduli, balanced.
pub fn gen_modp_variable_task(
    p_set: &[u64],
    n_start: u64,
    n_end: u64,
    base: u64,
    seed: RngSeed,
) -> Result<LabeledDataset> {
    if p_set.len() < 2 {
        return Err(Error::InvalidArgument("need at least two moduli".into()));
    }
    if p_set.iter().any(|&p| p < 2) {
        return Err(Error::InvalidArgument("moduli must be at least 2".into()));
    }
    if n_start >= n_end {
        return Err(Error::InvalidArgument("need n_start < n_end".into()));
    }
    let n_width = digit_width(n_end - 1, base);
    let p_width = digit_width(*p_set.iter().max().expect("non-empty"), base);
    let mut examples = Vec::with_capacity((n_end - n_start) as usize * p_set.len());
    for n in n_start..n_end {
        for &p in p_set {
            let mut features = digits(n, base, n_width);
            features.extend(digits(p, base, p_width));
            examples.push(Example {
                features,
                label: usize::from(n % p == 0),
            });
        }
    }
    let ds = LabeledDataset::new(
        examples,
        FeatureShape::Flat(n_width + p_width),
        2,
        "modp-variable",
    )?;
    balance_downsample(&ds, seed)
}

/// Short Weierstrass curve `y^2 = x^3 + a x + b` over the rationals.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct EllipticCurve {
    pub a: i64,
    pub b: i64,
}

impl EllipticCurve {
    pub fn new(a: i64, b: i64) -> Result<EllipticCurve> {
        let curve = EllipticCurve { a, b };
        if curve.discriminant() == 0 {
            return Err(Error::InvalidData(format!("curve a={a}, b={b} is singular")));
        }
        Ok(curve)
    }

    /// `-16 (4 a^3 + 27 b^2)`.
    pub fn discriminant(&self) -> i128 {
        let a = i128::from(self.a);
        let b = i128::from(self.b);
        -16 * (4 * a * a * a + 27 * b * b)
    }

    pub fn has_good_reduction(&self, p: u64) -> bool {
        self.discriminant().rem_euclid(i128::from(p)) != 0
    }
}

/// Trace of Frobenius `a_p = p + 1 - #E(F_p)`.
///
/// For odd `p` this is minus the quadratic-character sum of
/// `x^3 + a x + b` (with `chi(0) = 0`); `p = 2` is counted by
/// enumeration. Requires good reduction at `p`.
pub fn ap_trace(curve: &EllipticCurve, p: u64) -> Result<i64> {
    if !curve.has_good_reduction(p) {
        return Err(Error::InvalidData(format!(
            "curve a={}, b={} has bad reduction at {p}",
            curve.a, curve.b
        )));
    }
    if p == 2 {
        return ap_trace_naive(curve, 2);
    }

    // quadratic residues mod p by squaring
    let pu = p as usize;
    let mut is_qr = vec![false; pu];
    for t in 1..p {
        is_qr[((t * t) % p) as usize] = true;
    }
    let a = curve.a.rem_euclid(p as i64) as u64;
    let b = curve.b.rem_euclid(p as i64) as u64;
    let mut chi_sum = 0i64;
    for x in 0..p {
        let x2 = (x * x) % p;
        let fx = ((x2 * x) % p + (a * x) % p + b) % p;
        if fx != 0 {
            chi_sum += if is_qr[fx as usize] { 1 } else { -1 };
        }
    }
    let ap = -chi_sum;
    debug_assert!(
        (ap * ap) as f64 <= 4.0 * p as f64,
        "Hasse bound violated: a_{p} = {ap}"
    );
    Ok(ap)
}

/// Exact point count by enumerating all `(x, y)` pairs; the independent
/// O(p^2) oracle for [`ap_trace`].
pub fn ap_trace_naive(curve: &EllipticCurve, p: u64) -> Result<i64> {
    if !curve.has_good_reduction(p) {
        return Err(Error::InvalidData(format!("bad reduction at {p}")));
    }
    let a = curve.a.rem_euclid(p as i64) as u64;
    let b = curve.b.rem_euclid(p as i64) as u64;
    let mut count = 1i64; // point at infinity
    for x in 0..p {
        let rhs = (((x * x) % p) * x % p + (a * x) % p + b) % p;
        for y in 0..p {
            if (y * y) % p == rhs {
                count += 1;
            }
        }
    }
    Ok(p as i64 + 1 - count)
}

/// The first `n_primes` good primes of the curve, ascending; primes of
/// bad reduction are skipped and the list extended past them.
pub fn good_primes(curve: &EllipticCurve, n_primes: usize, table: &PrimeTable) -> Result<Vec<u64>> {
    let mut out = Vec::with_capacity(n_primes);
    for &p in table.primes() {
        if out.len() == n_primes {
            break;
        }
        let p = p as u64;
        if curve.has_good_reduction(p) {
            out.push(p);
        }
    }
    if out.len() < n_primes {
        return Err(Error::InvalidArgument(format!(
            "sieve limit {} yields only {} good primes, need {n_primes}",
            table.limit(),
            out.len()
        )));
    }
    Ok(out)
}

/// The `(a_p1, ..., a_pN)` feature vector over the curve's first
/// `n_primes` good primes.
pub fn gen_ap_vector(
    curve: &EllipticCurve,
    n_primes: usize,
    table: &PrimeTable,
) -> Result<Vec<f64>> {
    let primes = good_primes(curve, n_primes, table)?;
    primes
        .iter()
        .map(|&p| ap_trace(curve, p).map(|v| v as f64))
        .collect()
}

/// Ingested curve labels.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CurveLabels {
    pub rank: u32,
    pub torsion_order: u32,
    pub has_integer_points: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct LabeledCurve {
    pub curve: EllipticCurve,
    pub labels: CurveLabels,
}

/// Which ingested label a curve task predicts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum CurveProperty {
    /// Rank, capped: higher ranks merge into the top class.
    Rank,
    /// Torsion order, mapped to contiguous indices in ascending order of
    /// the orders present.
    TorsionOrder,
    /// Existence of integer points.
    IntegerPoints,
}

impl CurveProperty {
    pub fn name(self) -> &'static str {
        match self {
            CurveProperty::Rank => "rank",
            CurveProperty::TorsionOrder => "torsion",
            CurveProperty::IntegerPoints => "integer-points",
        }
    }
}

/// Builds a curve classification task: `a_p` vectors against one of the
/// ingested labels, balanced.
pub fn gen_curve_task(
    curves: &[LabeledCurve],
    property: CurveProperty,
    n_primes: usize,
    max_rank_class: u32,
    table: &PrimeTable,
    seed: RngSeed,
) -> Result<LabeledDataset> {
    if curves.is_empty() {
        return Err(Error::EmptyDataset);
    }
    let labels: Vec<usize> = match property {
        CurveProperty::Rank => curves
            .iter()
            .map(|c| c.labels.rank.min(max_rank_class) as usize)
            .collect(),
        CurveProperty::TorsionOrder => {
            let mut orders: Vec<u32> = curves.iter().map(|c| c.labels.torsion_order).collect();
            orders.sort_unstable();
            orders.dedup();
            curves
                .iter()
                .map(|c| {
                    orders
                        .binary_search(&c.labels.torsion_order)
                        .expect("order present")
                })
                .collect()
        }
        CurveProperty::IntegerPoints => curves
            .iter()
            .map(|c| usize::from(c.labels.has_integer_points))
            .collect(),
    };
    let arity = labels.iter().max().expect("non-empty") + 1;
    let mut examples = Vec::with_capacity(curves.len());
    for (c, label) in curves.iter().zip(labels) {
        examples.push(Example {
            features: gen_ap_vector(&c.curve, n_primes, table)?,
            label,
        });
    }
    let ds = LabeledDataset::new(
        examples,
        FeatureShape::Flat(n_primes),
        arity,
        &format!("curve-{}", property.name()),
    )?;
    balance_downsample(&ds, seed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::Rng;

    #[test]
    fn sieve_basics() {
        let t = PrimeTable::sieve(30).unwrap();
        assert_eq!(t.primes(), &[2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert_eq!(t.delta(7), 1);
        assert_eq!(t.delta(9), 0);
        assert_eq!(t.delta(1), 0);
        assert_eq!(t.delta(2), 1);
    }

    #[test]
    fn prime_count_at_one_million() {
        let t = PrimeTable::sieve(1_000_000).unwrap();
        assert_eq!(t.primes().len(), 78_498);
        // independent check by trial division over a slice of the range
        let trial_count = (500_000..600_000usize)
            .filter(|&n| {
                let mut d = 2;
                while d * d <= n {
                    if n % d == 0 {
                        return false;
                    }
                    d += 1;
                }
                n >= 2
            })
            .count();
        let sieve_count = (500_000..600_000).filter(|&n| t.is_prime(n)).count();
        assert_eq!(sieve_count, trial_count);
    }

    #[test]
    fn liouville_values() {
        let t = PrimeTable::sieve(1000).unwrap();
        assert_eq!(liouville(1, &t).unwrap(), 1); // Omega = 0
        assert_eq!(liouville(12, &t).unwrap(), -1); // 2 * 2 * 3
        assert_eq!(liouville(2, &t).unwrap(), -1);
        assert_eq!(liouville(4, &t).unwrap(), 1);
    }

    #[test]
    fn liouville_is_completely_multiplicative() {
        let t = PrimeTable::sieve(2000).unwrap();
        let mut rng = Rng::from_seed(RngSeed(5));
        for _ in 0..1000 {
            let m = rng.range_i64(1, 1000) as u64;
            let n = rng.range_i64(1, 1000) as u64;
            assert_eq!(
                liouville(m * n, &t).unwrap(),
                liouville(m, &t).unwrap() * liouville(n, &t).unwrap()
            );
        }
    }

    #[test]
    fn liouville_partial_sum_matches_brute_force() {
        // independent oracle: count prime factors by naive smallest-divisor
        // scanning, no sieve involved
        fn omega_naive(mut n: u64) -> u32 {
            let mut count = 0;
            let mut d = 2;
            while d * d <= n {
                while n % d == 0 {
                    n /= d;
                    count += 1;
                }
                d += 1;
            }
            if n > 1 {
                count += 1;
            }
            count
        }
        let oracle: i64 = (1..=1000u64)
            .map(|n| if omega_naive(n) % 2 == 0 { 1i64 } else { -1 })
            .sum();
        let t = PrimeTable::sieve(1000).unwrap();
        let ours: i64 = (1..=1000u64)
            .map(|n| i64::from(liouville(n, &t).unwrap()))
            .sum();
        assert_eq!(ours, oracle);
    }

    #[test]
    fn window_features_reconstruct_the_sieve() {
        let spec = WindowSpec {
            window: 10,
            offset: 5,
            i_start: 1,
            i_end: 50,
        };
        let table = PrimeTable::sieve(spec.sieve_limit()).unwrap();
        let mut rows = Vec::new();
        for i in spec.i_start..=spec.i_end {
            let features: Vec<f64> = (0..=spec.window)
                .map(|j| f64::from(table.delta(2 * (i + j) + 1)))
                .collect();
            rows.push(features);
        }
        // consecutive windows at stride 1 overlap except at the ends
        for w in rows.windows(2) {
            assert_eq!(w[0][1..], w[1][..spec.window]);
        }
        // first window reads off the sieve from 3 onward
        let expected: Vec<f64> = (1..=11).map(|i| f64::from(table.delta(2 * i + 1))).collect();
        assert_eq!(rows[0], expected);
        assert_eq!(rows[0][0], 1.0, "3 is prime");
        assert_eq!(rows[0][1], 1.0, "5 is prime");
        assert_eq!(rows[0][3], 0.0, "9 is not prime");
    }

    #[test]
    fn prime_window_task_is_balanced_binary() {
        let spec = WindowSpec {
            window: 20,
            offset: 100,
            i_start: 1,
            i_end: 2000,
        };
        let ds = gen_prime_window_task(&spec, RngSeed(1)).unwrap();
        let counts = ds.class_counts();
        assert_eq!(counts[0], counts[1]);
        assert!(counts[0] > 0);
        for ex in ds.examples() {
            assert_eq!(ex.features.len(), 21);
            assert!(ex.features.iter().all(|&v| v == 0.0 || v == 1.0));
        }
    }

    #[test]
    fn modp_fixed_digits_and_labels() {
        // n = 6 in base 2 is [1, 1, 0] -> label 0; n = 7 -> label 1
        let ds = gen_modp_fixed_task(2, 1, 8, 2, RngSeed(2)).unwrap();
        let six = ds
            .examples()
            .iter()
            .find(|e| e.features == [1.0, 1.0, 0.0])
            .expect("6 present");
        assert_eq!(six.label, 0);
        let seven = ds
            .examples()
            .iter()
            .find(|e| e.features == [1.0, 1.0, 1.0])
            .expect("7 present");
        assert_eq!(seven.label, 1);
    }

    #[test]
    fn modp_variable_divisibility_labels() {
        let ds = gen_modp_variable_task(&[2, 3, 5], 1, 100, 2, RngSeed(3)).unwrap();
        let counts = ds.class_counts();
        assert_eq!(counts[0], counts[1]);
        // reconstruct n and p from the digits and re-check each label
        let n_width = 7; // digits of 99 in base 2
        for ex in ds.examples() {
            let n = ex.features[..n_width]
                .iter()
                .fold(0u64, |acc, &d| acc * 2 + d as u64);
            let p = ex.features[n_width..]
                .iter()
                .fold(0u64, |acc, &d| acc * 2 + d as u64);
            assert_eq!(ex.label, usize::from(n % p == 0));
        }
    }

    #[test]
    fn ap_trace_matches_the_paper_style_example() {
        // y^2 = x^3 + x at p = 3: 4 points including infinity
        let curve = EllipticCurve::new(1, 0).unwrap();
        assert_eq!(ap_trace(&curve, 3).unwrap(), 0);
        assert_eq!(ap_trace_naive(&curve, 3).unwrap(), 0);
        // y^2 = x^3 + 1 at p = 5, checked against the enumeration oracle
        let curve = EllipticCurve::new(0, 1).unwrap();
        assert_eq!(ap_trace(&curve, 5).unwrap(), ap_trace_naive(&curve, 5).unwrap());
    }

    #[test]
    fn ap_trace_agrees_with_naive_enumeration() {
        let table = PrimeTable::sieve(100).unwrap();
        let mut rng = Rng::from_seed(RngSeed(7));
        let mut tested = 0;
        while tested < 100 {
            let a = rng.range_i64(-30, 30);
            let b = rng.range_i64(-30, 30);
            let Ok(curve) = EllipticCurve::new(a, b) else {
                continue;
            };
            tested += 1;
            for &p in table.primes().iter().filter(|&&p| p <= 50) {
                let p = p as u64;
                if !curve.has_good_reduction(p) {
                    continue;
                }
                assert_eq!(
                    ap_trace(&curve, p).unwrap(),
                    ap_trace_naive(&curve, p).unwrap(),
                    "disagreement for a={a}, b={b}, p={p}"
                );
            }
        }
    }

    #[test]
    fn hasse_bound_holds_on_vectors() {
        let table = PrimeTable::sieve(1000).unwrap();
        let curve = EllipticCurve::new(-1, 1).unwrap();
        let v = gen_ap_vector(&curve, 50, &table).unwrap();
        let primes = good_primes(&curve, 50, &table).unwrap();
        for (ap, p) in v.iter().zip(primes) {
            assert!(ap * ap <= 4.0 * p as f64);
        }
    }

    #[test]
    fn bad_reduction_is_rejected_and_skipped() {
        // disc(0, 1) = -432: bad at 2 and 3
        let curve = EllipticCurve::new(0, 1).unwrap();
        assert!(ap_trace(&curve, 3).is_err());
        assert!(ap_trace(&curve, 5).is_ok());
        let table = PrimeTable::sieve(1000).unwrap();
        let primes = good_primes(&curve, 10, &table).unwrap();
        assert_eq!(primes.len(), 10);
        assert!(!primes.contains(&2) && !primes.contains(&3));
    }

    #[test]
    fn singular_curve_is_rejected() {
        assert!(EllipticCurve::new(0, 0).is_err());
        assert!(EllipticCurve::new(-3, 2).is_err()); // 4*(-27) + 27*4 = 0
    }

    #[test]
    fn duplicate_curves_give_identical_vectors() {
        let table = PrimeTable::sieve(600).unwrap();
        let curve = EllipticCurve::new(2, 3).unwrap();
        let v1 = gen_ap_vector(&curve, 30, &table).unwrap();
        let v2 = gen_ap_vector(&curve, 30, &table).unwrap();
        assert_eq!(v1, v2);
    }

    #[test]
    fn curve_task_maps_torsion_orders_contiguously() {
        let table = PrimeTable::sieve(600).unwrap();
        let curves = vec![
            LabeledCurve {
                curve: EllipticCurve::new(-1, 0).unwrap(),
                labels: CurveLabels {
                    rank: 0,
                    torsion_order: 4,
                    has_integer_points: true,
                },
            },
            LabeledCurve {
                curve: EllipticCurve::new(2, 3).unwrap(),
                labels: CurveLabels {
                    rank: 1,
                    torsion_order: 1,
                    has_integer_points: true,
                },
            },
            LabeledCurve {
                curve: EllipticCurve::new(0, 4).unwrap(),
                labels: CurveLabels {
                    rank: 0,
                    torsion_order: 1,
                    has_integer_points: false,
                },
            },
        ];
        let ds = gen_curve_task(
            &curves,
            CurveProperty::TorsionOrder,
            20,
            4,
            &table,
            RngSeed(4),
        )
        .unwrap();
        // orders {1, 4} map to labels {0, 1}
        assert_eq!(ds.label_arity(), 2);
    }
}
