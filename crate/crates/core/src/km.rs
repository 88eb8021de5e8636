//! Kushilevitz-Mansour prefix-tree learning of the sparse spectrum of an AOM
//! function, and the maximizer built on top of it.
//!
//! `g = 2f/n - 1` has exactly `n` nonzero coefficients of magnitude `1/n`,
//! located at the rows of `M`. A depth-first search over prefixes `u` keeps a
//! node iff the estimated energy `E(g_u^2)` exceeds `1/(2n^2)`; the true
//! energy of a prefix is either `0` or at least `1/n^2`. The leaves reached at
//! depth `n` are the rows of `M`, and the signs of the coefficients of
//! `h = 2f - n` at those rows give `b`.

use std::fmt;

use crate::aom::Oracle;
use crate::error::{Error, Result};
use crate::gf2::{BitMat, BitVec};
use crate::spectrum::{g_normalize, h_normalize, RealOracle};

/// Sample counts of the sampled estimator.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KmParams {
    /// Suffix samples per energy estimate.
    pub m1: u64,
    /// Prefix samples per inner coefficient estimate.
    pub m2: u64,
    /// Samples per sign estimate of `b_i`.
    pub m3: u64,
    /// Failure probability the counts were sized for.
    pub delta: f64,
    /// Expansion threshold on the estimated energy.
    pub threshold: f64,
}

fn default_threshold(n: usize) -> f64 {
    1.0 / (2.0 * (n * n) as f64)
}

impl KmParams {
    pub fn new(n: usize, m1: u64, m2: u64, m3: u64, delta: f64) -> Result<Self> {
        let p = KmParams {
            m1,
            m2,
            m3,
            delta,
            threshold: default_threshold(n),
        };
        p.validate()?;
        Ok(p)
    }

    fn validate(&self) -> Result<()> {
        if self.m1 == 0 || self.m2 == 0 || self.m3 == 0 {
            return Err(Error::InvalidConfig(
                "sample counts must be at least 1".into(),
            ));
        }
        if !(self.delta > 0.0 && self.delta < 1.0) {
            return Err(Error::InvalidConfig("delta must lie in (0, 1)".into()));
        }
        if self.threshold.is_nan() || self.threshold <= 0.0 {
            return Err(Error::InvalidConfig("threshold must be positive".into()));
        }
        Ok(())
    }

    pub fn with_threshold(mut self, threshold: f64) -> Result<Self> {
        self.threshold = threshold;
        self.validate()?;
        Ok(self)
    }

    /// Counts that make every estimate accurate with total failure probability
    /// at most `delta`, obtained by solving the Hoeffding conditions
    /// `2 exp(-m1/(8n^4)) = delta/(4n^2)`, `2 exp(-m2/(128n^4)) = delta/(4n^2 m1)`
    /// and `2 exp(-m3/(2n^2)) = delta/(2n)`.
    pub fn theoretical(n: usize, delta: f64) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidConfig(
                "theoretical parameters need n >= 2".into(),
            ));
        }
        if !(delta > 0.0 && delta < 1.0) {
            return Err(Error::InvalidConfig("delta must lie in (0, 1)".into()));
        }
        let nf = n as f64;
        let n2 = nf * nf;
        let n4 = n2 * n2;
        let m1 = (8.0 * n4 * (8.0 * n2 / delta).ln()).ceil();
        let m2 = (128.0 * n4 * (8.0 * n2 * m1 / delta).ln()).ceil();
        let m3 = (2.0 * n2 * (4.0 * nf / delta).ln()).ceil();
        Self::new(n, m1 as u64, m2 as u64, m3 as u64, delta)
    }

    /// Desk-scale preset: `m1 = 4n^2`, `m2 = 16n^2`, `m3 = 8n^2`.
    pub fn practical(n: usize) -> Self {
        let n2 = (n * n) as u64;
        Self::new(n, 4 * n2, 16 * n2, 8 * n2, 0.5).expect("preset is valid")
    }

    /// `m1 m2 n^2 + m3 n`, the evaluation bound of one maximization attempt.
    pub fn evaluation_bound(&self, n: usize) -> u128 {
        let n = n as u128;
        self.m1 as u128 * self.m2 as u128 * n * n + self.m3 as u128 * n
    }
}

/// How expectations are obtained.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum KmMode {
    /// Monte Carlo averages with the given sample counts.
    Sampled(KmParams),
    /// Exact expectations by full enumeration (small `n` only).
    Exact,
}

/// Largest dimension for [`KmMode::Exact`].
pub const MAX_EXACT_DIM: usize = 16;

impl KmMode {
    pub fn threshold(&self, n: usize) -> f64 {
        match self {
            KmMode::Sampled(p) => p.threshold,
            KmMode::Exact => default_threshold(n),
        }
    }
}

fn random_bits<R: rand::Rng + ?Sized>(k: usize, rng: &mut R) -> BitVec {
    BitVec::random(k, rng)
}

fn chi_sign(u: &BitVec, y: &BitVec) -> f64 {
    if u.dot(y).expect("prefix dimensions agree") {
        -1.0
    } else {
        1.0
    }
}

/// `A = (1/m2) sum_j g(y_j x) chi_u(y_j)` with `y_j` uniform on the prefix space;
/// an unbiased estimate of `g_u(x)`.
pub fn estimate_coefficient_inner<G, R>(
    g: &mut G,
    prefix: &BitVec,
    suffix: &BitVec,
    m2: u64,
    rng: &mut R,
) -> f64
where
    G: RealOracle + ?Sized,
    R: rand::Rng + ?Sized,
{
    assert_eq!(prefix.len() + suffix.len(), g.dim());
    let k = prefix.len();
    let sum: f64 = (0..m2)
        .map(|_| {
            let y = random_bits(k, rng);
            g.value(&BitVec::concat(&y, suffix)) * chi_sign(prefix, &y)
        })
        .sum();
    sum / m2 as f64
}

/// `g_u(x) = E_Y g(Yx) chi_u(Y)` by enumerating all `2^k` prefixes.
pub fn exact_coefficient_inner<G: RealOracle + ?Sized>(
    g: &mut G,
    prefix: &BitVec,
    suffix: &BitVec,
) -> f64 {
    assert_eq!(prefix.len() + suffix.len(), g.dim());
    let k = prefix.len();
    let sum: f64 = (0..1u64 << k)
        .map(|c| {
            let y = BitVec::from_index(k, c);
            g.value(&BitVec::concat(&y, suffix)) * chi_sign(prefix, &y)
        })
        .sum();
    sum / (1u64 << k) as f64
}

/// Estimate `B_u` of `E(g_u^2)`: the mean of `A_i^2` over fresh suffixes, or
/// the exact expectation in [`KmMode::Exact`].
pub fn estimate_energy<G, R>(g: &mut G, prefix: &BitVec, mode: &KmMode, rng: &mut R) -> f64
where
    G: RealOracle + ?Sized,
    R: rand::Rng + ?Sized,
{
    let n = g.dim();
    assert!(prefix.len() <= n);
    let rest = n - prefix.len();
    match mode {
        KmMode::Sampled(p) => {
            let sum: f64 = (0..p.m1)
                .map(|_| {
                    let x = random_bits(rest, rng);
                    estimate_coefficient_inner(g, prefix, &x, p.m2, rng).powi(2)
                })
                .sum();
            sum / p.m1 as f64
        }
        KmMode::Exact => {
            let sum: f64 = (0..1u64 << rest)
                .map(|c| {
                    let x = BitVec::from_index(rest, c);
                    exact_coefficient_inner(g, prefix, &x).powi(2)
                })
                .sum();
            sum / (1u64 << rest) as f64
        }
    }
}

/// Outcome of the prefix-tree search.
#[derive(Clone, Debug, PartialEq)]
pub struct KmTrace {
    /// Leaves reached at depth `n`, in depth-first (lexicographic) order.
    pub features: Vec<BitVec>,
    /// Number of energy estimates computed (tree nodes visited).
    pub calls: u64,
    /// Internal nodes (depth `< n`) whose energy passed the threshold.
    pub expanded: u64,
    /// Set when the search was cut short.
    pub aborted: Option<String>,
}

/// Depth-first prefix search from the empty prefix.
///
/// The search stops early once more than `n` leaves are found or more than
/// `2n^2 + 1` nodes are visited; neither can happen when every estimate is
/// on the right side of the threshold.
pub fn km_collect<G, R>(g: &mut G, mode: &KmMode, rng: &mut R) -> KmTrace
where
    G: RealOracle + ?Sized,
    R: rand::Rng + ?Sized,
{
    let n = g.dim();
    let mut trace = KmTrace {
        features: Vec::new(),
        calls: 0,
        expanded: 0,
        aborted: None,
    };
    let threshold = mode.threshold(n);
    let max_calls = 2 * (n * n) as u64 + 1;
    let mut stack = vec![BitVec::zeros(0)];
    while let Some(u) = stack.pop() {
        if trace.calls == max_calls {
            trace.aborted = Some(format!("visited more than {max_calls} prefix nodes"));
            break;
        }
        trace.calls += 1;
        if estimate_energy(g, &u, mode, rng) <= threshold {
            continue;
        }
        if u.len() == n {
            trace.features.push(u);
            if trace.features.len() > n {
                trace.aborted = Some(format!("found more than {n} feature vectors"));
                break;
            }
        } else {
            trace.expanded += 1;
            // u1 is pushed first so that u0 is explored first
            stack.push(u.push(true));
            stack.push(u.push(false));
        }
    }
    trace
}

/// Sign estimate of `h^(u)`: returns `true` (`b_i = 1`) iff
/// `C = mean h(x) chi_u(x)` is strictly positive.
pub fn estimate_sign<H, R>(h: &mut H, u: &BitVec, mode: &KmMode, rng: &mut R) -> bool
where
    H: RealOracle + ?Sized,
    R: rand::Rng + ?Sized,
{
    let n = h.dim();
    assert_eq!(u.len(), n);
    let c = match mode {
        KmMode::Sampled(p) => {
            let sum: f64 = (0..p.m3)
                .map(|_| {
                    let x = random_bits(n, rng);
                    h.value(&x) * chi_sign(u, &x)
                })
                .sum();
            sum / p.m3 as f64
        }
        KmMode::Exact => {
            let sum: f64 = (0..1u64 << n)
                .map(|k| {
                    let x = BitVec::from_index(n, k);
                    h.value(&x) * chi_sign(u, &x)
                })
                .sum();
            sum / (1u64 << n) as f64
        }
    };
    c > 0.0
}

/// Result of one learning-and-maximization attempt.
#[derive(Clone, Debug, PartialEq)]
pub struct KmReport {
    /// Recovered rows of `M` (up to a row permutation).
    pub features: Vec<BitVec>,
    /// Recovered offset, aligned with `features`.
    pub b_hat: BitVec,
    /// `M^-1 (1^n + b)` for the recovered pair, when it is invertible.
    pub candidate: Option<BitVec>,
    /// Evaluations consumed by this attempt, including the final check.
    pub evaluations_used: u64,
    pub calls: u64,
    pub expanded: u64,
    /// `f(candidate) = n`.
    pub success: bool,
    pub diagnostic: Option<String>,
}

impl fmt::Display for KmReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "features {}", self.features.len())?;
        for u in &self.features {
            writeln!(f, "{u}")?;
        }
        writeln!(f, "b_hat {}", self.b_hat)?;
        match &self.candidate {
            Some(c) => writeln!(f, "candidate {c}")?,
            None => writeln!(f, "candidate none")?,
        }
        writeln!(f, "evaluations {}", self.evaluations_used)?;
        writeln!(f, "calls {}", self.calls)?;
        writeln!(f, "expanded {}", self.expanded)?;
        writeln!(f, "success {}", self.success)?;
        if let Some(d) = &self.diagnostic {
            writeln!(f, "diagnostic {d}")?;
        }
        Ok(())
    }
}

/// Recovers the optimum from learned rows and offset bits.
pub fn assemble_candidate(features: &[BitVec], b_hat: &BitVec) -> Result<BitVec> {
    let m = BitMat::from_rows(features)?;
    let inv = m.invert()?;
    inv.mul_vec(&(&BitVec::ones(b_hat.len()) + b_hat))
}

/// One attempt: learn the rows of `M` with [`km_collect`], the offset with
/// [`estimate_sign`], and return `M^-1 (1^n + b)` after checking it with one
/// extra evaluation.
pub fn km_maximize<O, R>(oracle: &mut O, mode: &KmMode, rng: &mut R) -> KmReport
where
    O: Oracle + ?Sized,
    R: rand::Rng + ?Sized,
{
    let n = oracle.dim();
    let start = oracle.evaluations();
    let trace = km_collect(&mut g_normalize(oracle), mode, rng);
    let mut report = KmReport {
        features: trace.features,
        b_hat: BitVec::zeros(n),
        candidate: None,
        evaluations_used: 0,
        calls: trace.calls,
        expanded: trace.expanded,
        success: false,
        diagnostic: trace.aborted,
    };
    if report.diagnostic.is_none() && report.features.len() != n {
        report.diagnostic = Some(format!(
            "expected {n} feature vectors, found {}",
            report.features.len()
        ));
    }
    if report.diagnostic.is_none() {
        let mut h = h_normalize(oracle);
        for (i, u) in report.features.iter().enumerate() {
            report.b_hat.set(i, estimate_sign(&mut h, u, mode, rng));
        }
        match assemble_candidate(&report.features, &report.b_hat) {
            Ok(candidate) => {
                report.success = oracle.evaluate(&candidate) == n;
                report.candidate = Some(candidate);
            }
            Err(_) => report.diagnostic = Some("recovered matrix is singular".into()),
        }
    }
    report.evaluations_used = oracle.evaluations() - start;
    report
}

/// Repeats [`km_maximize`] until an attempt succeeds; returns the optimum and
/// the number of attempts. `max_attempts = None` retries forever.
pub fn km_maximize_repeated<O, R>(
    oracle: &mut O,
    mode: &KmMode,
    rng: &mut R,
    max_attempts: Option<u64>,
) -> Result<(BitVec, u64)>
where
    O: Oracle + ?Sized,
    R: rand::Rng + ?Sized,
{
    let mut attempts = 0;
    loop {
        if max_attempts.is_some_and(|m| attempts >= m) {
            return Err(Error::NotFound(format!("{attempts} attempts failed")));
        }
        attempts += 1;
        let report = km_maximize(oracle, mode, rng);
        if report.success {
            return Ok((
                report.candidate.expect("success implies a candidate"),
                attempts,
            ));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::aom::{sample_aom, AomFunction, CountingOracle};
    use crate::gf2::BitMat;
    use crate::rng::rng_from_seed;
    use crate::spectrum::{real_walsh_transform, FnOracle};
    use std::collections::BTreeSet;

    #[test]
    fn theoretical_parameters() {
        // closed forms evaluated independently: ceil(8e4 ln 1600) etc.
        let p = KmParams::theoretical(10, 0.5).unwrap();
        assert_eq!(p.m1, 590_221);
        assert_eq!(p.m2, 26_452_495);
        assert_eq!(p.m3, 877);
        let q = KmParams::theoretical(10, 0.1).unwrap();
        assert!(q.m1 > p.m1 && q.m2 > p.m2 && q.m3 > p.m3);
        let small = KmParams::theoretical(2, 0.5).unwrap();
        assert_eq!((small.m1, small.m2, small.m3), (533, 21_376, 23));
        assert_eq!(small.threshold, 1.0 / 8.0);
        assert!(KmParams::theoretical(1, 0.5).is_err());
        assert!(KmParams::theoretical(4, 1.0).is_err());
    }

    #[test]
    fn parameter_validation() {
        assert!(KmParams::new(4, 0, 1, 1, 0.5).is_err());
        assert!(KmParams::new(4, 1, 1, 1, 0.0).is_err());
        assert!(KmParams::practical(4).with_threshold(0.0).is_err());
        let p = KmParams::practical(8);
        assert_eq!((p.m1, p.m2, p.m3), (256, 1024, 512));
    }

    #[test]
    fn inner_estimate_of_zero_function() {
        let mut g = FnOracle::new(6, |_| 0.0);
        let mut rng = rng_from_seed(1);
        let a = estimate_coefficient_inner(
            &mut g,
            &BitVec::unit(3, 1),
            &BitVec::zeros(3),
            50,
            &mut rng,
        );
        assert_eq!(a, 0.0);
    }

    #[test]
    fn inner_estimate_with_empty_prefix_is_exact() {
        let mut rng = rng_from_seed(2);
        let f = sample_aom(8, &mut rng);
        let mut oracle = CountingOracle::new(&f);
        let mut g = g_normalize(&mut oracle);
        let x = BitVec::random(8, &mut rng);
        let exact = g.value(&x);
        for m2 in [1, 7] {
            let a = estimate_coefficient_inner(&mut g, &BitVec::zeros(0), &x, m2, &mut rng);
            assert!((a - exact).abs() < 1e-15);
        }
    }

    #[test]
    fn inner_estimate_concentrates() {
        let mut rng = rng_from_seed(3);
        let n = 8;
        let f = sample_aom(n, &mut rng);
        let mut oracle = CountingOracle::new(&f);
        let mut g = g_normalize(&mut oracle);
        let spectrum = real_walsh_transform(&mut g).unwrap();
        let m2 = 400;
        let trials = 400;
        let mut within = 0;
        for _ in 0..trials {
            let k = 4;
            let u = BitVec::random(k, &mut rng);
            let x = BitVec::random(n - k, &mut rng);
            let exact = spectrum.restricted_value(&u, &x);
            let a = estimate_coefficient_inner(&mut g, &u, &x, m2, &mut rng);
            assert!(a.abs() <= 1.0);
            if (a - exact).abs() < 3.0 / (m2 as f64).sqrt() {
                within += 1;
            }
        }
        assert!(within as f64 >= 0.99 * trials as f64, "{within}/{trials}");
    }

    #[test]
    fn exact_energy_matches_restricted_spectrum() {
        let mut rng = rng_from_seed(4);
        let n = 8;
        let f = sample_aom(n, &mut rng);
        let mut oracle = CountingOracle::new(&f);
        let mut g = g_normalize(&mut oracle);
        let spectrum = real_walsh_transform(&mut g).unwrap();
        for k in [0, 1, 3, 5, 8] {
            for c in 0..1u64 << k {
                let u = BitVec::from_index(k, c);
                let b = estimate_energy(&mut g, &u, &KmMode::Exact, &mut rng);
                let expected = spectrum.restricted_energy(&u);
                assert!((b - expected).abs() < 1e-12);
                let below = f.matrix().rows().iter().any(|r| r.split_at(k).0 == u);
                if below {
                    assert!(b >= 1.0 / 64.0 - 1e-12);
                } else {
                    assert!(b.abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn collect_onemax_exactly() {
        let f = AomFunction::onemax(6);
        let mut oracle = CountingOracle::new(&f);
        let mut rng = rng_from_seed(5);
        let trace = km_collect(&mut g_normalize(&mut oracle), &KmMode::Exact, &mut rng);
        let got: BTreeSet<BitVec> = trace.features.into_iter().collect();
        let expected: BTreeSet<BitVec> = (0..6).map(|i| BitVec::unit(6, i)).collect();
        assert_eq!(got, expected);
        assert!(trace.aborted.is_none());
    }

    #[test]
    fn collect_random_rows_exactly() {
        let mut rng = rng_from_seed(6);
        for _ in 0..5 {
            let n = 8;
            let f = sample_aom(n, &mut rng);
            let mut oracle = CountingOracle::new(&f);
            let trace = km_collect(&mut g_normalize(&mut oracle), &KmMode::Exact, &mut rng);
            let got: BTreeSet<BitVec> = trace.features.iter().cloned().collect();
            let rows: BTreeSet<BitVec> = f.matrix().rows().into_iter().collect();
            assert_eq!(got, rows);
            assert!(trace.expanded <= (n * n) as u64);
            assert!(trace.calls <= 2 * (n * n) as u64 + 1);
            // a node is visited iff its parent has a feature below it
            assert_eq!(trace.calls, 1 + 2 * trace.expanded);
        }
    }

    #[test]
    fn sign_estimates() {
        let mut rng = rng_from_seed(7);
        let flipped = crate::aom::make_aom(BitMat::identity(5), BitVec::ones(5)).unwrap();
        let mut oracle = CountingOracle::new(&flipped);
        assert!(estimate_sign(
            &mut h_normalize(&mut oracle),
            &BitVec::unit(5, 0),
            &KmMode::Exact,
            &mut rng
        ));
        let plain = AomFunction::onemax(5);
        let mut oracle = CountingOracle::new(&plain);
        assert!(!estimate_sign(
            &mut h_normalize(&mut oracle),
            &BitVec::unit(5, 0),
            &KmMode::Exact,
            &mut rng
        ));
        // a zero average falls into the else branch
        let mut zero = FnOracle::new(5, |_| 0.0);
        assert!(!estimate_sign(
            &mut zero,
            &BitVec::unit(5, 2),
            &KmMode::Exact,
            &mut rng
        ));
    }

    #[test]
    fn maximize_onemax_exactly() {
        let f = AomFunction::onemax(6);
        let mut oracle = CountingOracle::new(&f);
        let report = km_maximize(&mut oracle, &KmMode::Exact, &mut rng_from_seed(8));
        assert!(report.success);
        assert_eq!(report.candidate, Some(BitVec::ones(6)));
        assert_eq!(report.evaluations_used, oracle.eval_count());
    }

    #[test]
    fn maximize_random_exactly() {
        let mut rng = rng_from_seed(9);
        for _ in 0..5 {
            let f = sample_aom(8, &mut rng);
            let mut oracle = CountingOracle::new(&f);
            let report = km_maximize(&mut oracle, &KmMode::Exact, &mut rng);
            assert!(report.success, "{report}");
            assert_eq!(report.candidate, Some(f.optimum()));
        }
    }

    #[test]
    fn row_order_does_not_matter() {
        let mut rng = rng_from_seed(10);
        let f = sample_aom(7, &mut rng);
        let rows = f.matrix().rows();
        let mut order: Vec<usize> = (0..7).collect();
        for shift in 0..7 {
            order.rotate_left(1);
            let features: Vec<BitVec> = order.iter().map(|&i| rows[i].clone()).collect();
            let b =
                BitVec::from_bools(&order.iter().map(|&i| f.offset().get(i)).collect::<Vec<_>>());
            assert_eq!(
                assemble_candidate(&features, &b).unwrap(),
                f.optimum(),
                "shift {shift}"
            );
        }
    }

    #[test]
    fn sampled_budget_accounting() {
        let n = 5;
        let mut rng = rng_from_seed(11);
        let f = sample_aom(n, &mut rng);
        let params = KmParams::practical(n);
        let mut oracle = CountingOracle::new(&f);
        let report = km_maximize(&mut oracle, &KmMode::Sampled(params), &mut rng);
        let bound = params.m1 * params.m2 * report.calls + params.m3 * n as u64 + 1;
        assert!(report.evaluations_used <= bound);
        assert!(report.calls <= 2 * (n * n) as u64 + 1);
    }

    #[test]
    fn repeated_finds_optimum() {
        let mut rng = rng_from_seed(12);
        let f = AomFunction::onemax(5);
        let mut oracle = CountingOracle::new(&f);
        let (x, _) = km_maximize_repeated(
            &mut oracle,
            &KmMode::Sampled(KmParams::practical(5)),
            &mut rng,
            None,
        )
        .unwrap();
        assert_eq!(x, f.optimum());
        let g = sample_aom(6, &mut rng);
        let mut oracle = CountingOracle::new(&g);
        let (x, _) = km_maximize_repeated(
            &mut oracle,
            &KmMode::Sampled(KmParams::practical(6)),
            &mut rng,
            Some(20),
        )
        .unwrap();
        assert_eq!(x, g.optimum());
    }

    #[test]
    fn starved_sampler_reports_failure() {
        let mut rng = rng_from_seed(13);
        let f = sample_aom(6, &mut rng);
        let params = KmParams::new(6, 1, 1, 1, 0.5).unwrap();
        let mut oracle = CountingOracle::new(&f);
        let result = km_maximize_repeated(&mut oracle, &KmMode::Sampled(params), &mut rng, Some(3));
        if let Err(e) = result {
            assert!(matches!(e, Error::NotFound(_)));
        }
    }
}
