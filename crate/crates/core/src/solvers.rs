//! Deterministic exact maximizers for transvection-sequence sub-classes.
//!
//! All solvers take an [`Oracle`] and count evaluations through it. Inputs
//! outside a solver's class are detected as soon as a probe returns a value
//! the class does not permit, and reported as [`Error::ClassViolation`].

use std::fmt;

use crate::aom::{Oracle, PreComposed};
use crate::error::{Error, Result};
use crate::gf2::{BitMat, BitVec};
use crate::transvection::Transvection;

/// Structure learned by a solver. Indices are 0-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Recovered {
    /// `f = onemax o tau`.
    SingleNoOffset { transvection: Transvection },
    /// `f = onemax o T_b o tau`.
    Single {
        transvection: Transvection,
        offset: BitVec,
    },
    /// `f = onemax o T_b o prod tau_{dest(j) j}` with distinct sources.
    SourceMap {
        map: Vec<Transvection>,
        offset: BitVec,
    },
    /// `f o P` was solved as a single-transvection instance, where `P` is the
    /// product of `prefix`.
    Enumerated {
        prefix: Vec<Transvection>,
        transvection: Transvection,
        offset: BitVec,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveResult {
    pub solution: BitVec,
    /// Evaluations spent by this solve.
    pub evaluations: u64,
    pub recovered: Recovered,
}

fn write_list(f: &mut fmt::Formatter<'_>, key: &str, ts: &[Transvection]) -> fmt::Result {
    write!(f, "{key}")?;
    for t in ts {
        write!(f, " ({t})")?;
    }
    writeln!(f)
}

impl fmt::Display for SolveResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.recovered {
            Recovered::SingleNoOffset { transvection } => {
                writeln!(f, "transvection {transvection}")?;
            }
            Recovered::Single {
                transvection,
                offset,
            } => {
                writeln!(f, "transvection {transvection}")?;
                writeln!(f, "b {offset}")?;
            }
            Recovered::SourceMap { map, offset } => {
                write_list(f, "transvections", map)?;
                writeln!(f, "b {offset}")?;
            }
            Recovered::Enumerated {
                prefix,
                transvection,
                offset,
            } => {
                write_list(f, "prefix", prefix)?;
                writeln!(f, "transvection {transvection}")?;
                writeln!(f, "b {offset}")?;
            }
        }
        writeln!(f, "solution {}", self.solution)?;
        writeln!(f, "evaluations {}", self.evaluations)
    }
}

/// `ceil(log2 n)` for `n >= 1`, and 0 for `n = 0`.
pub fn ceil_log2(n: u64) -> u64 {
    if n <= 1 {
        0
    } else {
        64 - (n - 1).leading_zeros() as u64
    }
}

/// Splits a candidate set into the first `ceil(|K|/2)` elements and the rest.
pub fn split_half(set: &[usize]) -> (&[usize], &[usize]) {
    set.split_at(set.len().div_ceil(2))
}

/// Evaluation bound of [`solve_f1_0`].
pub fn f1_0_bound(n: usize) -> u64 {
    2 * ceil_log2(n as u64)
}

/// Evaluation count of [`solve_f1`].
pub fn f1_bound(n: usize) -> u64 {
    2 * (n as u64 + 1)
}

/// Evaluation bound of [`solve_ft_delta`] for `t` sources.
pub fn ft_delta_bound(n: usize, t: usize) -> u64 {
    let (n, t) = (n as u64, t as u64);
    n + t * (ceil_log2(n - t) + 1) + 2
}

/// Evaluation bound of [`solve_ft_enumerate`], or `None` on overflow.
pub fn ft_enumerate_bound(n: usize, t: usize) -> Option<u64> {
    let pairs = (n as u64).checked_mul(n.saturating_sub(1) as u64)?;
    let prefixes = pairs.checked_pow(t.saturating_sub(1) as u32)?;
    prefixes.checked_mul(f1_bound(n) + 1)
}

fn probe<O: Oracle + ?Sized>(oracle: &mut O, x: &BitVec) -> i64 {
    oracle.evaluate(x) as i64
}

fn indicator(n: usize, set: impl IntoIterator<Item = usize>) -> BitVec {
    let mut x = BitVec::zeros(n);
    for k in set {
        x.set(k, true);
    }
    x
}

fn violation(msg: String) -> Error {
    Error::ClassViolation(msg)
}

fn check_dim(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidConfig(format!(
            "solvers need n >= 2, got {n}"
        )));
    }
    Ok(())
}

/// Binary search over `candidates` for the index moved by the unknown
/// transvection: probes `sum_{K' u fixed} e_k` and compares against
/// `onemax + shift`.
fn binary_search_single<O: Oracle + ?Sized>(
    oracle: &mut O,
    mut candidates: &[usize],
    fixed: Option<usize>,
    shift: i64,
) -> Result<usize> {
    let n = oracle.dim();
    while candidates.len() > 1 {
        let (first, second) = split_half(candidates);
        let eps = indicator(n, first.iter().copied().chain(fixed));
        let base = eps.count_ones() as i64;
        let value = probe(oracle, &eps);
        if value == base + shift {
            candidates = second;
        } else if (value - base).abs() == 1 {
            candidates = first;
        } else {
            return Err(violation(format!(
                "probe {eps} returned {value}, expected {base} or {base} +/- 1"
            )));
        }
    }
    candidates
        .first()
        .copied()
        .ok_or_else(|| violation("empty candidate set".into()))
}

/// Maximizes `onemax o tau_{ij}` with at most `2 ceil(log2 n)` evaluations:
/// the source is located first, then the destination.
pub fn solve_f1_0<O: Oracle + ?Sized>(oracle: &mut O) -> Result<SolveResult> {
    let n = oracle.dim();
    check_dim(n)?;
    let start = oracle.evaluations();
    let all: Vec<usize> = (0..n).collect();
    let src = binary_search_single(oracle, &all, None, 0)?;
    let rest: Vec<usize> = (0..n).filter(|&k| k != src).collect();
    let dest = binary_search_single(oracle, &rest, Some(src), 1)?;
    let mut solution = BitVec::ones(n);
    solution.flip(dest);
    Ok(SolveResult {
        solution,
        evaluations: oracle.evaluations() - start,
        recovered: Recovered::SingleNoOffset {
            transvection: Transvection::new(dest, src)?,
        },
    })
}

/// Maximizes `onemax o T_b o tau_{ij}` with exactly `2(n+1)` evaluations.
pub fn solve_f1<O: Oracle + ?Sized>(oracle: &mut O) -> Result<SolveResult> {
    let n = oracle.dim();
    check_dim(n)?;
    let start = oracle.evaluations();
    let alpha0 = probe(oracle, &BitVec::zeros(n));
    let diffs: Vec<i64> = (0..n)
        .map(|k| probe(oracle, &BitVec::unit(n, k)) - alpha0)
        .collect();
    let even: Vec<usize> = (0..n).filter(|&k| diffs[k] % 2 == 0).collect();
    let src = match even[..] {
        [j] => j,
        _ => {
            return Err(violation(format!(
                "{} coordinates have an even response, expected exactly 1",
                even.len()
            )))
        }
    };
    if diffs[src].abs() > 2 {
        return Err(violation(format!(
            "source response {} out of range",
            diffs[src]
        )));
    }
    let mut offset = BitVec::zeros(n);
    for k in (0..n).filter(|&k| k != src) {
        match diffs[k] {
            1 => {}
            -1 => offset.set(k, true),
            d => return Err(violation(format!("coordinate {} responded {d}", k + 1))),
        }
    }
    let eps = offset.clone();
    match probe(oracle, &eps) {
        0 => {}
        1 => offset.set(src, true),
        v => {
            return Err(violation(format!(
                "offset probe returned {v}, expected 0 or 1"
            )))
        }
    }
    let mut with_src = eps;
    with_src.flip(src);
    let beta = probe(oracle, &with_src);
    let mut dest = None;
    for k in (0..n).filter(|&k| k != src) {
        let mut x = with_src.clone();
        x.flip(k);
        match probe(oracle, &x) - beta {
            1 => {}
            -1 if dest.is_none() => dest = Some(k),
            d => {
                return Err(violation(format!(
                    "destination probe at {} gave difference {d}",
                    k + 1
                )))
            }
        }
    }
    let dest = dest.ok_or_else(|| violation("no destination candidate".into()))?;
    let transvection = Transvection::new(dest, src)?;
    let solution = transvection.apply(&(&BitVec::ones(n) + &offset))?;
    Ok(SolveResult {
        solution,
        evaluations: oracle.evaluations() - start,
        recovered: Recovered::Single {
            transvection,
            offset,
        },
    })
}

/// Maximizes `onemax o T_b o prod_j tau_{dest(j) j}` when every source occurs
/// once and no source is a destination. The number of sources is discovered.
pub fn solve_ft_delta<O: Oracle + ?Sized>(oracle: &mut O) -> Result<SolveResult> {
    let n = oracle.dim();
    check_dim(n)?;
    let start = oracle.evaluations();
    let alpha0 = probe(oracle, &BitVec::zeros(n));
    let diffs: Vec<i64> = (0..n)
        .map(|k| probe(oracle, &BitVec::unit(n, k)) - alpha0)
        .collect();
    let (sources, targets): (Vec<usize>, Vec<usize>) = (0..n).partition(|&k| diffs[k] % 2 == 0);
    if targets.is_empty() {
        return Err(violation("every coordinate has an even response".into()));
    }
    let mut offset = BitVec::zeros(n);
    for &k in &targets {
        match diffs[k] {
            1 => {}
            -1 => offset.set(k, true),
            d => return Err(violation(format!("coordinate {} responded {d}", k + 1))),
        }
    }
    for &j in &sources {
        if diffs[j].abs() > 2 {
            return Err(violation(format!(
                "coordinate {} responded {}",
                j + 1,
                diffs[j]
            )));
        }
    }
    let eps = offset.clone();
    let beta0 = probe(oracle, &eps);
    let mut map = Vec::with_capacity(sources.len());
    for &j in &sources {
        let mut with_src = eps.clone();
        with_src.flip(j);
        let beta = probe(oracle, &with_src);
        match beta - beta0 {
            2 => {}
            0 => offset.set(j, true),
            d => return Err(violation(format!("source {} gave difference {d}", j + 1))),
        }
        let mut candidates = &targets[..];
        while candidates.len() > 1 {
            let (first, second) = split_half(candidates);
            let lambda = indicator(n, first.iter().copied());
            let weight = first.len() as i64;
            let value = probe(oracle, &(&with_src + &lambda)) - beta;
            if value == weight {
                candidates = second;
            } else if value == weight - 2 {
                candidates = first;
            } else {
                return Err(violation(format!(
                    "search for the destination of {} gave difference {value}",
                    j + 1
                )));
            }
        }
        map.push(Transvection::new(candidates[0], j)?);
    }
    let mut solution = &BitVec::ones(n) + &offset;
    for t in &map {
        t.apply_in_place(&mut solution);
    }
    Ok(SolveResult {
        solution,
        evaluations: oracle.evaluations() - start,
        recovered: Recovered::SourceMap { map, offset },
    })
}

fn product_matrix(n: usize, ts: &[Transvection]) -> Result<BitMat> {
    let mut p = BitMat::identity(n);
    for t in ts {
        p = p.mul(&t.matrix(n)?)?;
    }
    Ok(p)
}

/// Maximizes a length-`t` sequence instance by trying every product `P` of
/// `t - 1` transvections and solving `f o P` with [`solve_f1`]. A candidate
/// is accepted only after one verifying evaluation.
///
/// Fails with [`Error::BudgetExceeded`] before evaluating anything if the
/// worst-case cost exceeds `cap`, and with [`Error::NotFound`] once the
/// enumeration is exhausted.
pub fn solve_ft_enumerate<O: Oracle + ?Sized>(
    oracle: &mut O,
    t: usize,
    cap: u64,
) -> Result<SolveResult> {
    let n = oracle.dim();
    check_dim(n)?;
    if t == 0 {
        return Err(Error::InvalidConfig("enumeration needs t >= 1".into()));
    }
    let bound = ft_enumerate_bound(n, t).unwrap_or(u64::MAX);
    if bound > cap {
        return Err(Error::BudgetExceeded(bound));
    }
    let start = oracle.evaluations();
    let all = Transvection::all(n);
    let depth = t - 1;
    let mut digits = vec![0usize; depth];
    loop {
        let prefix: Vec<Transvection> = digits.iter().map(|&d| all[d]).collect();
        let p = product_matrix(n, &prefix)?;
        let attempt = solve_f1(&mut PreComposed::new(oracle, p.clone()));
        if let Ok(inner) = attempt {
            let candidate = p.mul_vec(&inner.solution)?;
            if oracle.evaluate(&candidate) == n {
                let Recovered::Single {
                    transvection,
                    offset,
                } = inner.recovered
                else {
                    unreachable!("solve_f1 recovers a single transvection")
                };
                return Ok(SolveResult {
                    solution: candidate,
                    evaluations: oracle.evaluations() - start,
                    recovered: Recovered::Enumerated {
                        prefix,
                        transvection,
                        offset,
                    },
                });
            }
        }
        // odometer increment over (t-1)-tuples of transvections
        let mut pos = depth;
        loop {
            if pos == 0 {
                return Err(Error::NotFound(format!(
                    "no product of {depth} transvections reduces the instance"
                )));
            }
            pos -= 1;
            digits[pos] += 1;
            if digits[pos] < all.len() {
                break;
            }
            digits[pos] = 0;
        }
    }
}
