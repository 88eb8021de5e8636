//! Walsh (Fourier) analysis of pseudo-Boolean functions.
//!
//! Coefficients are `lambda_u = 2^-n sum_x f(x) (-1)^(x.u)`. Input `x` and
//! feature `u` are indexed by the integer whose bit `i` is coordinate `i`.

use std::collections::BTreeMap;
use std::fmt;

use crate::aom::{AomFunction, Oracle};
use crate::error::{Error, Result};
use crate::gf2::BitVec;

/// Largest dimension accepted by the brute-force transform.
pub const MAX_BRUTE_FORCE_DIM: usize = 24;

/// Largest dimension for restricted-energy computations.
pub const MAX_RESTRICTED_DIM: usize = 16;

/// Coefficients with magnitude at or below this are treated as zero.
pub const ZERO_TOLERANCE: f64 = 1e-12;

/// Sparse spectrum: only nonzero coefficients are stored, keyed by feature vector.
#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum {
    n: usize,
    coeffs: BTreeMap<BitVec, f64>,
}

impl Spectrum {
    pub fn new(n: usize) -> Self {
        Spectrum {
            n,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Sets a coefficient, dropping it when it is zero.
    pub fn insert(&mut self, u: BitVec, value: f64) {
        assert_eq!(u.len(), self.n);
        if value.abs() > ZERO_TOLERANCE {
            self.coeffs.insert(u, value);
        } else {
            self.coeffs.remove(&u);
        }
    }

    pub fn get(&self, u: &BitVec) -> f64 {
        self.coeffs.get(u).copied().unwrap_or(0.0)
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&BitVec, f64)> {
        self.coeffs.iter().map(|(u, &c)| (u, c))
    }

    /// Nonzero feature vectors other than `0`.
    pub fn features(&self) -> Vec<BitVec> {
        self.coeffs
            .keys()
            .filter(|u| !u.is_zero())
            .cloned()
            .collect()
    }

    /// Inverse transform at a point: `sum_u lambda_u chi_u(x)`.
    pub fn value_at(&self, x: &BitVec) -> f64 {
        self.iter()
            .map(|(u, c)| if chi(u, x) < 0.0 { -c } else { c })
            .sum()
    }

    /// `sum_u lambda_u^2`.
    pub fn energy(&self) -> f64 {
        self.iter().map(|(_, c)| c * c).sum()
    }

    /// `E(g_u^2) = sum_v lambda_{uv}^2` for a prefix `u` of the first coordinates.
    pub fn restricted_energy(&self, prefix: &BitVec) -> f64 {
        self.iter()
            .filter(|(w, _)| has_prefix(w, prefix))
            .map(|(_, c)| c * c)
            .sum()
    }

    /// `g_u(x) = sum_v lambda_{uv} chi_v(x)` where `x` ranges over the suffix coordinates.
    pub fn restricted_value(&self, prefix: &BitVec, suffix: &BitVec) -> f64 {
        assert_eq!(prefix.len() + suffix.len(), self.n);
        self.iter()
            .filter(|(w, _)| has_prefix(w, prefix))
            .map(|(w, c)| {
                let (_, v) = w.split_at(prefix.len());
                if chi(&v, suffix) < 0.0 {
                    -c
                } else {
                    c
                }
            })
            .sum()
    }

    /// Maximum absolute coefficient difference over the union of supports.
    pub fn max_abs_diff(&self, other: &Spectrum) -> f64 {
        self.coeffs
            .keys()
            .chain(other.coeffs.keys())
            .map(|u| (self.get(u) - other.get(u)).abs())
            .fold(0.0, f64::max)
    }
}

fn has_prefix(w: &BitVec, prefix: &BitVec) -> bool {
    (0..prefix.len()).all(|i| w.get(i) == prefix.get(i))
}

/// The character `chi_u(x) = (-1)^(x.u)`.
pub fn chi(u: &BitVec, x: &BitVec) -> f64 {
    if u.dot(x).expect("dimensions agree") {
        -1.0
    } else {
        1.0
    }
}

impl fmt::Display for Spectrum {
    /// One `u_bits coefficient` line per nonzero coefficient, sorted by `u`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (u, c) in self.iter() {
            writeln!(f, "{u} {c}")?;
        }
        Ok(())
    }
}

/// In-place fast Walsh-Hadamard butterfly (unnormalized).
pub fn fwht(data: &mut [f64]) {
    let len = data.len();
    assert!(len.is_power_of_two());
    let mut h = 1;
    while h < len {
        for block in data.chunks_mut(2 * h) {
            let (lo, hi) = block.split_at_mut(h);
            for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                let (x, y) = (*a, *b);
                *a = x + y;
                *b = x - y;
            }
        }
        h *= 2;
    }
}

/// Spectrum of a full function table (`table[k] = f(from_index(n, k))`).
pub fn walsh_transform_table(n: usize, mut table: Vec<f64>) -> Result<Spectrum> {
    if n > MAX_BRUTE_FORCE_DIM {
        return Err(Error::TooLarge {
            n,
            max: MAX_BRUTE_FORCE_DIM,
        });
    }
    if table.len() != 1 << n {
        return Err(Error::DimensionMismatch {
            expected: 1 << n,
            found: table.len(),
        });
    }
    fwht(&mut table);
    let scale = (1u64 << n) as f64;
    let mut s = Spectrum::new(n);
    for (k, v) in table.into_iter().enumerate() {
        s.insert(BitVec::from_index(n, k as u64), v / scale);
    }
    Ok(s)
}

/// Brute-force spectrum by tabulating `f` on all `2^n` inputs.
pub fn walsh_transform(n: usize, mut f: impl FnMut(&BitVec) -> f64) -> Result<Spectrum> {
    if n > MAX_BRUTE_FORCE_DIM {
        return Err(Error::TooLarge {
            n,
            max: MAX_BRUTE_FORCE_DIM,
        });
    }
    let table = (0..1u64 << n)
        .map(|k| f(&BitVec::from_index(n, k)))
        .collect();
    walsh_transform_table(n, table)
}

/// Brute-force spectrum of an AOM function.
pub fn aom_walsh_transform(f: &AomFunction) -> Result<Spectrum> {
    walsh_transform(f.n(), |x| f.value(x) as f64)
}

/// Closed-form spectrum: `n/2` at `0` and `-(-1)^{b_i} / 2` at row `i` of `M`.
pub fn analytic_spectrum(f: &AomFunction) -> Spectrum {
    let n = f.n();
    let mut s = Spectrum::new(n);
    s.insert(BitVec::zeros(n), n as f64 / 2.0);
    for (i, row) in f.matrix().rows().into_iter().enumerate() {
        let sign = if f.offset().get(i) { 0.5 } else { -0.5 };
        s.insert(row, sign);
    }
    s
}

/// A real-valued black box.
pub trait RealOracle {
    fn dim(&self) -> usize;
    fn value(&mut self, x: &BitVec) -> f64;
}

/// `g = 2f/n - 1`, bounded in `[-1, 1]`.
pub struct GOracle<'a, O: Oracle + ?Sized> {
    inner: &'a mut O,
}

/// `h = 2f - n`, integer valued in `[-n, n]`.
pub struct HOracle<'a, O: Oracle + ?Sized> {
    inner: &'a mut O,
}

pub fn g_normalize<O: Oracle + ?Sized>(oracle: &mut O) -> GOracle<'_, O> {
    GOracle { inner: oracle }
}

pub fn h_normalize<O: Oracle + ?Sized>(oracle: &mut O) -> HOracle<'_, O> {
    HOracle { inner: oracle }
}

impl<O: Oracle + ?Sized> RealOracle for GOracle<'_, O> {
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn value(&mut self, x: &BitVec) -> f64 {
        let n = self.inner.dim() as f64;
        2.0 * self.inner.evaluate(x) as f64 / n - 1.0
    }
}

impl<O: Oracle + ?Sized> RealOracle for HOracle<'_, O> {
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn value(&mut self, x: &BitVec) -> f64 {
        2.0 * self.inner.evaluate(x) as f64 - self.inner.dim() as f64
    }
}

/// Adapts a closure into a [`RealOracle`].
pub struct FnOracle<F> {
    n: usize,
    f: F,
}

impl<F: FnMut(&BitVec) -> f64> FnOracle<F> {
    pub fn new(n: usize, f: F) -> Self {
        FnOracle { n, f }
    }
}

impl<F: FnMut(&BitVec) -> f64> RealOracle for FnOracle<F> {
    fn dim(&self) -> usize {
        self.n
    }

    fn value(&mut self, x: &BitVec) -> f64 {
        (self.f)(x)
    }
}

/// Brute-force spectrum of a real oracle.
pub fn real_walsh_transform<R: RealOracle + ?Sized>(oracle: &mut R) -> Result<Spectrum> {
    let n = oracle.dim();
    walsh_transform(n, |x| oracle.value(x))
}

/// Exact `E(g_u^2)` from the brute-force spectrum of `oracle`.
pub fn restricted_energy<R: RealOracle + ?Sized>(oracle: &mut R, prefix: &BitVec) -> Result<f64> {
    let n = oracle.dim();
    if n > MAX_RESTRICTED_DIM {
        return Err(Error::TooLarge {
            n,
            max: MAX_RESTRICTED_DIM,
        });
    }
    if prefix.len() > n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: prefix.len(),
        });
    }
    Ok(real_walsh_transform(oracle)?.restricted_energy(prefix))
}
