//! Bit-packed vectors and square matrices over GF(2).
//!
//! Coordinates are 0-based in the API and 1-based in every text format:
//! character `k` of a bit string is coordinate `k`, so the first character
//! is coordinate 1 of the mathematical vector.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign};
use std::str::FromStr;

use crate::error::{Error, Result};

const WORD: usize = 64;

fn words_for(n: usize) -> usize {
    n.div_ceil(WORD)
}

fn tail_mask(n: usize) -> u64 {
    match n % WORD {
        0 => u64::MAX,
        r => (1u64 << r) - 1,
    }
}

fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

/// A vector of `n` bits, packed into 64-bit words.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVec {
    n: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(n: usize) -> Self {
        BitVec {
            n,
            words: vec![0; words_for(n)],
        }
    }

    /// The all-ones vector `1^n`.
    pub fn ones(n: usize) -> Self {
        let mut v = BitVec {
            n,
            words: vec![u64::MAX; words_for(n)],
        };
        v.clear_tail();
        v
    }

    /// The canonical basis vector with a single 1 at coordinate `i`.
    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = Self::zeros(n);
        v.set(i, true);
        v
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            v.set(i, b);
        }
        v
    }

    /// Builds the vector whose coordinate `i` is bit `i` of `index`.
    pub fn from_index(n: usize, index: u64) -> Self {
        assert!(n <= WORD, "from_index supports n <= 64");
        let mut v = Self::zeros(n);
        if n > 0 {
            v.words[0] = index & tail_mask(n);
        }
        v
    }

    /// Inverse of [`BitVec::from_index`]; requires `n <= 64`.
    pub fn to_index(&self) -> u64 {
        assert!(self.n <= WORD, "to_index supports n <= 64");
        self.words.first().copied().unwrap_or(0)
    }

    pub fn random<R: rand::Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        let mut v = BitVec {
            n,
            words: (0..words_for(n)).map(|_| rng.random::<u64>()).collect(),
        };
        v.clear_tail();
        v
    }

    fn clear_tail(&mut self) {
        if let Some(last) = self.words.last_mut() {
            *last &= tail_mask(self.n);
        }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(
            i < self.n,
            "bit index {i} out of range for length {}",
            self.n
        );
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(
            i < self.n,
            "bit index {i} out of range for length {}",
            self.n
        );
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    pub fn flip(&mut self, i: usize) {
        assert!(
            i < self.n,
            "bit index {i} out of range for length {}",
            self.n
        );
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn complement(&self) -> Self {
        let mut v = BitVec {
            n: self.n,
            words: self.words.iter().map(|w| !w).collect(),
        };
        v.clear_tail();
        v
    }

    /// Inner product over GF(2).
    pub fn dot(&self, other: &BitVec) -> Result<bool> {
        check_dim(self.n, other.n)?;
        Ok(parity_and(&self.words, &other.words))
    }

    /// `self += other` over GF(2).
    pub fn xor_assign(&mut self, other: &BitVec) -> Result<()> {
        check_dim(self.n, other.n)?;
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
        Ok(())
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.n).map(move |i| self.get(i))
    }

    /// Positions of the ones, ascending.
    pub fn ones_positions(&self) -> Vec<usize> {
        (0..self.n).filter(|&i| self.get(i)).collect()
    }

    /// Concatenation `prefix ++ suffix`: the prefix occupies the first coordinates.
    pub fn concat(prefix: &BitVec, suffix: &BitVec) -> BitVec {
        let mut v = BitVec::zeros(prefix.n + suffix.n);
        v.words[..prefix.words.len()].copy_from_slice(&prefix.words);
        let (skip, shift) = (prefix.n / WORD, prefix.n % WORD);
        for (w, &s) in suffix.words.iter().enumerate() {
            v.words[skip + w] |= s << shift;
            if shift != 0 && skip + w + 1 < v.words.len() {
                v.words[skip + w + 1] |= s >> (WORD - shift);
            }
        }
        v
    }

    /// Bitwise AND.
    pub fn and(&self, other: &BitVec) -> BitVec {
        assert_eq!(self.n, other.n, "dimension mismatch");
        BitVec {
            n: self.n,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & b)
                .collect(),
        }
    }

    /// Bitwise OR.
    pub fn or(&self, other: &BitVec) -> BitVec {
        assert_eq!(self.n, other.n, "dimension mismatch");
        BitVec {
            n: self.n,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a | b)
                .collect(),
        }
    }

    /// Splits into the first `k` coordinates and the remaining `n - k`.
    pub fn split_at(&self, k: usize) -> (BitVec, BitVec) {
        assert!(k <= self.n);
        let mut prefix = BitVec::zeros(k);
        let mut suffix = BitVec::zeros(self.n - k);
        for i in 0..k {
            prefix.set(i, self.get(i));
        }
        for i in k..self.n {
            suffix.set(i - k, self.get(i));
        }
        (prefix, suffix)
    }

    /// The vector extended by one trailing coordinate.
    pub fn push(&self, bit: bool) -> BitVec {
        let mut v = BitVec::zeros(self.n + 1);
        v.words[..self.words.len()].copy_from_slice(&self.words);
        v.set(self.n, bit);
        v
    }
}

fn parity_and(a: &[u64], b: &[u64]) -> bool {
    let acc = a.iter().zip(b).fold(0u64, |acc, (x, y)| acc ^ (x & y));
    acc.count_ones() & 1 == 1
}

/// OneMax: the number of ones in `x`.
pub fn onemax(x: &BitVec) -> usize {
    x.count_ones()
}

/// Inner product `x . u` over GF(2).
pub fn dot(x: &BitVec, u: &BitVec) -> Result<bool> {
    x.dot(u)
}

impl Add for &BitVec {
    type Output = BitVec;

    fn add(self, rhs: &BitVec) -> BitVec {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&BitVec> for BitVec {
    fn add_assign(&mut self, rhs: &BitVec) {
        assert_eq!(self.n, rhs.n, "dimension mismatch in vector addition");
        for (a, b) in self.words.iter_mut().zip(&rhs.words) {
            *a ^= b;
        }
    }
}

/// Lexicographic order of the bit strings (coordinate 1 first, `0 < 1`).
impl Ord for BitVec {
    fn cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.words.iter().zip(&other.words) {
            let diff = a ^ b;
            if diff != 0 {
                let first = diff.trailing_zeros();
                return if (a >> first) & 1 == 0 {
                    Ordering::Less
                } else {
                    Ordering::Greater
                };
            }
        }
        self.n.cmp(&other.n)
    }
}

impl PartialOrd for BitVec {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.iter() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVec({self})")
    }
}

impl FromStr for BitVec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut v = BitVec::zeros(s.len());
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => v.set(i, true),
                other => {
                    return Err(Error::Parse(format!(
                        "unexpected character {other:?} in bit string"
                    )))
                }
            }
        }
        Ok(v)
    }
}

/// A square `n x n` matrix over GF(2), stored row-major with packed rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMat {
    n: usize,
    stride: usize,
    words: Vec<u64>,
}

impl BitMat {
    pub fn zeros(n: usize) -> Self {
        let stride = words_for(n);
        BitMat {
            n,
            stride,
            words: vec![0; n * stride],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_rows(rows: &[BitVec]) -> Result<Self> {
        let n = rows.len();
        let mut m = Self::zeros(n);
        for (i, row) in rows.iter().enumerate() {
            check_dim(n, row.len())?;
            m.row_words_mut(i).copy_from_slice(row.words());
        }
        Ok(m)
    }

    /// Draws all `n^2` entries independently and uniformly.
    pub fn random<R: rand::Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        let rows: Vec<BitVec> = (0..n).map(|_| BitVec::random(n, rng)).collect();
        Self::from_rows(&rows).expect("rows have matching dimension")
    }

    /// The matrix with a single 1 in each row `i`, at column `perm[i]`.
    pub fn permutation(perm: &[usize]) -> Result<Self> {
        let n = perm.len();
        let mut seen = vec![false; n];
        for &p in perm {
            if p >= n || seen[p] {
                return Err(Error::NotBijective(n));
            }
            seen[p] = true;
        }
        let mut m = Self::zeros(n);
        for (i, &p) in perm.iter().enumerate() {
            m.set(i, p, true);
        }
        Ok(m)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn row_words(&self, i: usize) -> &[u64] {
        &self.words[i * self.stride..(i + 1) * self.stride]
    }

    fn row_words_mut(&mut self, i: usize) -> &mut [u64] {
        &mut self.words[i * self.stride..(i + 1) * self.stride]
    }

    pub fn row(&self, i: usize) -> BitVec {
        BitVec {
            n: self.n,
            words: self.row_words(i).to_vec(),
        }
    }

    pub fn rows(&self) -> Vec<BitVec> {
        (0..self.n).map(|i| self.row(i)).collect()
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        assert!(i < self.n && j < self.n);
        (self.words[i * self.stride + j / WORD] >> (j % WORD)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        assert!(i < self.n && j < self.n);
        let mask = 1u64 << (j % WORD);
        let w = &mut self.words[i * self.stride + j / WORD];
        if value {
            *w |= mask;
        } else {
            *w &= !mask;
        }
    }

    /// `row_i . x` without a dimension check; the caller guarantees `x.len() == n`.
    pub(crate) fn row_dot(&self, i: usize, x: &BitVec) -> bool {
        parity_and(self.row_words(i), &x.words)
    }

    /// Matrix-vector product over GF(2).
    pub fn mul_vec(&self, x: &BitVec) -> Result<BitVec> {
        check_dim(self.n, x.len())?;
        let mut out = BitVec::zeros(self.n);
        for i in 0..self.n {
            if self.row_dot(i, x) {
                out.set(i, true);
            }
        }
        Ok(out)
    }

    /// Matrix product `self * other` over GF(2).
    pub fn mul(&self, other: &BitMat) -> Result<BitMat> {
        check_dim(self.n, other.n)?;
        let mut out = BitMat::zeros(self.n);
        for i in 0..self.n {
            for k in 0..self.n {
                if self.get(i, k) {
                    let (src, dst) = (other.row_words(k).to_vec(), out.row_words_mut(i));
                    for (d, s) in dst.iter_mut().zip(src) {
                        *d ^= s;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> BitMat {
        let mut out = BitMat::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                if self.get(i, j) {
                    out.set(j, i, true);
                }
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for w in 0..self.stride {
                self.words.swap(a * self.stride + w, b * self.stride + w);
            }
        }
    }

    fn add_row(&mut self, dst: usize, src: usize) {
        for w in 0..self.stride {
            let s = self.words[src * self.stride + w];
            self.words[dst * self.stride + w] ^= s;
        }
    }

    /// Rank over GF(2).
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut rank = 0;
        for col in 0..self.n {
            let Some(pivot) = (rank..self.n).find(|&r| m.get(r, col)) else {
                continue;
            };
            m.swap_rows(rank, pivot);
            for r in rank + 1..self.n {
                if m.get(r, col) {
                    m.add_row(r, rank);
                }
            }
            rank += 1;
        }
        rank
    }

    pub fn is_invertible(&self) -> bool {
        self.rank() == self.n
    }

    /// Gauss-Jordan inversion; the pivot is the first row at or below the
    /// diagonal with a nonzero entry in the current column.
    pub fn invert(&self) -> Result<BitMat> {
        let mut m = self.clone();
        let mut inv = BitMat::identity(self.n);
        for col in 0..self.n {
            let pivot = (col..self.n)
                .find(|&r| m.get(r, col))
                .ok_or(Error::SingularMatrix)?;
            m.swap_rows(col, pivot);
            inv.swap_rows(col, pivot);
            for r in 0..self.n {
                if r != col && m.get(r, col) {
                    m.add_row(r, col);
                    inv.add_row(r, col);
                }
            }
        }
        Ok(inv)
    }
}

/// Rejection sampling of a uniform invertible matrix; returns the matrix and
/// the number of trials it took.
pub fn sample_invertible_counted<R: rand::Rng + ?Sized>(n: usize, rng: &mut R) -> (BitMat, u64) {
    assert!(n >= 1, "dimension must be at least 1");
    let mut trials = 0;
    loop {
        trials += 1;
        let m = BitMat::random(n, rng);
        if m.is_invertible() {
            return (m, trials);
        }
    }
}

/// A uniformly distributed element of GL(n, F2).
pub fn sample_invertible<R: rand::Rng + ?Sized>(n: usize, rng: &mut R) -> BitMat {
    sample_invertible_counted(n, rng).0
}

/// `|GL(n, F2)| = (2^n - 1)(2^n - 2)...(2^n - 2^(n-1))`, for `n <= 10`.
pub fn gl_order(n: usize) -> u128 {
    assert!(n <= 10);
    let full = 1u128 << n;
    (0..n).map(|k| full - (1u128 << k)).product()
}

/// A uniformly random permutation of `0..n`.
pub fn random_permutation<R: rand::Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<usize> {
    use rand::seq::SliceRandom;
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}

impl fmt::Display for BitMat {
    /// Text format: the side length on the first line, then one bit-string row per line.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.n)?;
        for i in 0..self.n {
            writeln!(f, "{}", self.row(i))?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self.rows().iter().map(ToString::to_string).collect();
        write!(f, "BitMat[{}]", rows.join(", "))
    }
}

impl FromStr for BitMat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut lines = s.lines().map(str::trim).filter(|l| !l.is_empty());
        let n: usize = lines
            .next()
            .ok_or_else(|| Error::Parse("empty matrix text".into()))?
            .parse()
            .map_err(|e| Error::Parse(format!("bad matrix size: {e}")))?;
        let rows = lines
            .take(n)
            .map(BitVec::from_str)
            .collect::<Result<Vec<_>>>()?;
        if rows.len() != n {
            return Err(Error::Parse(format!(
                "expected {n} matrix rows, found {}",
                rows.len()
            )));
        }
        BitMat::from_rows(&rows)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::rng_from_seed;
    use proptest::prelude::*;

    fn bv(s: &str) -> BitVec {
        s.parse().unwrap()
    }

    fn mat(rows: &[&str]) -> BitMat {
        BitMat::from_rows(&rows.iter().map(|r| bv(r)).collect::<Vec<_>>()).unwrap()
    }

    fn tau12() -> BitMat {
        mat(&["110", "010", "001"])
    }

    fn tau23() -> BitMat {
        mat(&["100", "011", "001"])
    }

    #[test]
    fn onemax_counts() {
        assert_eq!(onemax(&bv("0000")), 0);
        assert_eq!(onemax(&bv("1111")), 4);
        assert_eq!(onemax(&bv("1010")), 2);
    }

    #[test]
    fn dot_products() {
        assert!(dot(&bv("110"), &bv("011")).unwrap());
        assert!(!dot(&bv("110"), &bv("110")).unwrap());
        assert!(!dot(&bv("101"), &bv("000")).unwrap());
        assert_eq!(
            dot(&bv("10"), &bv("101")),
            Err(Error::DimensionMismatch {
                expected: 2,
                found: 3
            })
        );
    }

    #[test]
    fn mat_vec_examples() {
        assert_eq!(BitMat::identity(3).mul_vec(&bv("101")).unwrap(), bv("101"));
        assert_eq!(tau12().mul_vec(&bv("010")).unwrap(), bv("110"));
        assert_eq!(BitMat::zeros(3).mul_vec(&bv("111")).unwrap(), bv("000"));
        assert!(BitMat::zeros(3).mul_vec(&bv("11")).is_err());
    }

    #[test]
    fn mat_mul_examples() {
        let mut rng = rng_from_seed(3);
        let m = BitMat::random(5, &mut rng);
        assert_eq!(BitMat::identity(5).mul(&m).unwrap(), m);
        assert_eq!(tau12().mul(&tau12()).unwrap(), BitMat::identity(3));
        assert_ne!(
            tau12().mul(&tau23()).unwrap(),
            tau23().mul(&tau12()).unwrap()
        );
        assert!(BitMat::identity(2).mul(&BitMat::identity(3)).is_err());
    }

    #[test]
    fn invert_examples() {
        assert_eq!(BitMat::identity(4).invert().unwrap(), BitMat::identity(4));
        assert_eq!(tau12().invert().unwrap(), tau12());
        assert_eq!(
            mat(&["110", "110", "001"]).invert(),
            Err(Error::SingularMatrix)
        );
    }

    #[test]
    fn invertibility_examples() {
        assert!(BitMat::identity(6).is_invertible());
        assert!(!BitMat::zeros(6).is_invertible());
        let p = tau12().mul(&tau23()).unwrap().mul(&tau12()).unwrap();
        assert!(p.is_invertible());
    }

    #[test]
    fn wide_matrices_span_several_words() {
        let mut rng = rng_from_seed(11);
        for n in [63, 64, 65, 130] {
            let m = sample_invertible(n, &mut rng);
            let inv = m.invert().unwrap();
            assert_eq!(m.mul(&inv).unwrap(), BitMat::identity(n));
            assert_eq!(inv.mul(&m).unwrap(), BitMat::identity(n));
        }
    }

    fn all_matrices(n: usize) -> impl Iterator<Item = BitMat> {
        (0u64..1 << (n * n)).map(move |code| {
            let mut m = BitMat::zeros(n);
            for i in 0..n {
                for j in 0..n {
                    m.set(i, j, (code >> (i * n + j)) & 1 == 1);
                }
            }
            m
        })
    }

    #[test]
    fn invertibility_matches_injectivity_exhaustively() {
        for n in 1..=4 {
            let points: Vec<BitVec> = (0..1u64 << n).map(|k| BitVec::from_index(n, k)).collect();
            for m in all_matrices(n) {
                let mut images: Vec<u64> = points
                    .iter()
                    .map(|x| m.mul_vec(x).unwrap().to_index())
                    .collect();
                images.sort_unstable();
                images.dedup();
                assert_eq!(m.is_invertible(), images.len() == points.len());
            }
        }
    }

    #[test]
    fn invertible_count_matches_group_order() {
        for n in 1..=3 {
            let count = all_matrices(n).filter(BitMat::is_invertible).count() as u128;
            assert_eq!(count, gl_order(n));
        }
        assert_eq!(gl_order(2), 6);
    }

    #[test]
    fn sample_invertible_one_by_one() {
        let mut rng = rng_from_seed(1);
        for _ in 0..10 {
            assert_eq!(sample_invertible(1, &mut rng), BitMat::identity(1));
        }
    }

    #[test]
    fn sample_invertible_two_by_two_is_uniform() {
        let mut rng = rng_from_seed(2);
        let draws = 10_000;
        let mut counts = std::collections::BTreeMap::new();
        for _ in 0..draws {
            let m = sample_invertible(2, &mut rng);
            *counts.entry(format!("{m}")).or_insert(0u32) += 1;
        }
        assert_eq!(counts.len(), 6);
        let p = 1.0 / 6.0;
        let sigma = (draws as f64 * p * (1.0 - p)).sqrt();
        for &c in counts.values() {
            assert!((c as f64 - draws as f64 * p).abs() < 4.0 * sigma);
        }
    }

    #[test]
    fn mean_trials_bounded_by_four() {
        let mut rng = rng_from_seed(8);
        let total: u64 = (0..1000)
            .map(|_| sample_invertible_counted(8, &mut rng).1)
            .sum();
        assert!(total as f64 / 1000.0 <= 4.0);
    }

    #[test]
    fn permutation_matrices() {
        assert_eq!(
            BitMat::permutation(&[0, 1, 2]).unwrap(),
            BitMat::identity(3)
        );
        assert_eq!(BitMat::permutation(&[1, 0]).unwrap(), mat(&["01", "10"]));
        assert_eq!(BitMat::permutation(&[0, 0]), Err(Error::NotBijective(2)));
        assert_eq!(BitMat::permutation(&[0, 2]), Err(Error::NotBijective(2)));
        let mut rng = rng_from_seed(5);
        for _ in 0..20 {
            let p = random_permutation(9, &mut rng);
            assert!(BitMat::permutation(&p).unwrap().is_invertible());
        }
    }

    #[test]
    fn text_formats() {
        let m = tau12();
        assert_eq!(m.to_string(), "3\n110\n010\n001\n");
        assert_eq!(m.to_string().parse::<BitMat>().unwrap(), m);
        assert!("3\n110\n01\n001".parse::<BitMat>().is_err());
        assert!("2\n10".parse::<BitMat>().is_err());
        assert!("10x".parse::<BitVec>().is_err());
    }

    #[test]
    fn ordering_is_lexicographic() {
        let mut v = [bv("110"), bv("011"), bv("100"), bv("001")];
        v.sort();
        let s: Vec<String> = v.iter().map(ToString::to_string).collect();
        assert_eq!(s, ["001", "011", "100", "110"]);
    }

    #[test]
    fn concat_and_split() {
        let x = bv("1100101");
        let (p, s) = x.split_at(3);
        assert_eq!(p, bv("110"));
        assert_eq!(s, bv("0101"));
        assert_eq!(BitVec::concat(&p, &s), x);
        assert_eq!(bv("10").push(true), bv("101"));
        let mut rng = rng_from_seed(17);
        for (k, m) in [(0, 5), (5, 0), (63, 3), (64, 64), (70, 100), (3, 130)] {
            let (p, s) = (BitVec::random(k, &mut rng), BitVec::random(m, &mut rng));
            let joined = BitVec::concat(&p, &s);
            assert_eq!(joined.to_string(), format!("{p}{s}"));
            assert_eq!(joined.split_at(k), (p, s));
        }
    }

    fn arb_vec(n: usize) -> impl Strategy<Value = BitVec> {
        proptest::collection::vec(any::<bool>(), n).prop_map(|b| BitVec::from_bools(&b))
    }

    proptest! {
        #[test]
        fn onemax_of_complement(x in (1usize..150).prop_flat_map(arb_vec)) {
            prop_assert_eq!(onemax(&x) + onemax(&x.complement()), x.len());
        }

        #[test]
        fn mat_vec_is_linear(seed in any::<u64>(), n in 1usize..80) {
            let mut rng = rng_from_seed(seed);
            let m = sample_invertible(n, &mut rng);
            let x = BitVec::random(n, &mut rng);
            let y = BitVec::random(n, &mut rng);
            let lhs = m.mul_vec(&(&x + &y)).unwrap();
            let rhs = &m.mul_vec(&x).unwrap() + &m.mul_vec(&y).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn invert_is_an_involution(seed in any::<u64>(), n in 1usize..40) {
            let mut rng = rng_from_seed(seed);
            let m = sample_invertible(n, &mut rng);
            let inv = m.invert().unwrap();
            prop_assert_eq!(m.mul(&inv).unwrap(), BitMat::identity(n));
            prop_assert_eq!(inv.invert().unwrap(), m);
        }

        #[test]
        fn bit_strings_round_trip(x in (0usize..200).prop_flat_map(arb_vec)) {
            prop_assert_eq!(x.to_string().parse::<BitVec>().unwrap(), x);
        }
    }
}
