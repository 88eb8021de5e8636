//! Affine OneMax functions `f(x) = onemax(Mx + b)` and black-box access to them.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::gf2::{sample_invertible, BitMat, BitVec};
use crate::transvection::{ClassTag, TransvectionSequence};

/// An affine OneMax function with invertible `M`.
#[derive(Clone)]
pub struct AomFunction {
    matrix: BitMat,
    offset: BitVec,
    provenance: Option<TransvectionSequence>,
    inverse: OnceLock<BitMat>,
}

impl AomFunction {
    /// Fails with [`Error::SingularMatrix`] unless `matrix` is invertible.
    pub fn new(matrix: BitMat, offset: BitVec) -> Result<Self> {
        if offset.len() != matrix.n() {
            return Err(Error::DimensionMismatch {
                expected: matrix.n(),
                found: offset.len(),
            });
        }
        if !matrix.is_invertible() {
            return Err(Error::SingularMatrix);
        }
        Ok(AomFunction {
            matrix,
            offset,
            provenance: None,
            inverse: OnceLock::new(),
        })
    }

    /// The function whose matrix is the product of `sequence`.
    pub fn from_sequence(sequence: TransvectionSequence, offset: BitVec) -> Result<Self> {
        let mut f = Self::new(sequence.product(), offset)?;
        f.provenance = Some(sequence);
        Ok(f)
    }

    /// OneMax itself: `M = I`, `b = 0`.
    pub fn onemax(n: usize) -> Self {
        Self::new(BitMat::identity(n), BitVec::zeros(n)).expect("identity is invertible")
    }

    pub fn n(&self) -> usize {
        self.matrix.n()
    }

    pub fn matrix(&self) -> &BitMat {
        &self.matrix
    }

    pub fn offset(&self) -> &BitVec {
        &self.offset
    }

    pub fn provenance(&self) -> Option<&TransvectionSequence> {
        self.provenance.as_ref()
    }

    /// `f(x)`; panics on dimension mismatch. See [`AomFunction::evaluate`].
    pub fn value(&self, x: &BitVec) -> usize {
        assert_eq!(x.len(), self.n(), "dimension mismatch");
        (0..self.n())
            .filter(|&i| self.matrix.row_dot(i, x) != self.offset.get(i))
            .count()
    }

    pub fn evaluate(&self, x: &BitVec) -> Result<usize> {
        if x.len() != self.n() {
            return Err(Error::DimensionMismatch {
                expected: self.n(),
                found: x.len(),
            });
        }
        Ok(self.value(x))
    }

    pub fn inverse(&self) -> &BitMat {
        self.inverse
            .get_or_init(|| self.matrix.invert().expect("matrix checked invertible"))
    }

    /// The unique maximizer `M^-1 (1^n + b)`.
    pub fn optimum(&self) -> BitVec {
        let target = &BitVec::ones(self.n()) + &self.offset;
        self.inverse().mul_vec(&target).expect("dimensions agree")
    }

    /// Number of inputs at each value `0..=n` (exhaustive, `n <= 24`).
    pub fn value_histogram(&self) -> Result<Vec<u64>> {
        let n = self.n();
        if n > 24 {
            return Err(Error::TooLarge { n, max: 24 });
        }
        let mut hist = vec![0u64; n + 1];
        for k in 0..1u64 << n {
            hist[self.value(&BitVec::from_index(n, k))] += 1;
        }
        Ok(hist)
    }

    /// `Phi(PM, Pb)` for the row permutation matrix `P`.
    pub fn permuted(&self, perm: &BitMat) -> Result<Self> {
        let m = perm.mul(&self.matrix)?;
        let b = perm.mul_vec(&self.offset)?;
        Self::new(m, b)
    }
}

impl PartialEq for AomFunction {
    fn eq(&self, other: &Self) -> bool {
        self.matrix == other.matrix
            && self.offset == other.offset
            && self.provenance == other.provenance
    }
}

impl Eq for AomFunction {}

impl fmt::Debug for AomFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AomFunction")
            .field("matrix", &self.matrix)
            .field("offset", &self.offset)
            .field("provenance", &self.provenance)
            .finish()
    }
}

pub fn make_aom(matrix: BitMat, offset: BitVec) -> Result<AomFunction> {
    AomFunction::new(matrix, offset)
}

/// A uniform random element of the AOM class: uniform invertible `M`, uniform `b`.
pub fn sample_aom<R: rand::Rng + ?Sized>(n: usize, rng: &mut R) -> AomFunction {
    let m = sample_invertible(n, rng);
    let b = BitVec::random(n, rng);
    AomFunction::new(m, b).expect("sampled matrix is invertible")
}

/// A transvection-sequence AOM function of the given class and length.
pub fn sample_ts_aom<R: rand::Rng + ?Sized>(
    n: usize,
    t: usize,
    class: ClassTag,
    rng: &mut R,
) -> Result<AomFunction> {
    let seq = TransvectionSequence::sample(n, t, class, rng)?;
    let b = BitVec::random(n, rng);
    AomFunction::from_sequence(seq, b)
}

/// Pointwise equality over all `2^n` inputs (`n <= 20`).
pub fn functions_equal(f: &AomFunction, g: &AomFunction) -> Result<bool> {
    let n = f.n();
    if g.n() != n {
        return Ok(false);
    }
    if n > 20 {
        return Err(Error::TooLarge { n, max: 20 });
    }
    Ok((0..1u64 << n).all(|k| {
        let x = BitVec::from_index(n, k);
        f.value(&x) == g.value(&x)
    }))
}

impl fmt::Display for AomFunction {
    /// Instance text: `n`, `b`, the `matrix` rows, and an optional `sequence` block.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n {}", self.n())?;
        writeln!(f, "b {}", self.offset)?;
        writeln!(f, "matrix")?;
        for row in self.matrix.rows() {
            writeln!(f, "{row}")?;
        }
        if let Some(seq) = &self.provenance {
            writeln!(f, "sequence")?;
            write!(f, "{seq}")?;
        }
        Ok(())
    }
}

impl FromStr for AomFunction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lines: Vec<&str> = s
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .collect();
        let field = |line: Option<&&str>, key: &str| -> Result<String> {
            line.and_then(|l| l.strip_prefix(key))
                .filter(|rest| rest.starts_with(char::is_whitespace))
                .map(|rest| rest.trim().to_string())
                .ok_or_else(|| Error::Parse(format!("expected `{key} ...` line")))
        };
        let n: usize = field(lines.first(), "n")?
            .parse()
            .map_err(|e| Error::Parse(format!("bad n: {e}")))?;
        let b: BitVec = field(lines.get(1), "b")?.parse()?;
        if lines.get(2) != Some(&"matrix") {
            return Err(Error::Parse("expected `matrix` line".into()));
        }
        let rows = lines
            .get(3..3 + n)
            .ok_or_else(|| Error::Parse(format!("expected {n} matrix rows")))?
            .iter()
            .map(|r| r.parse::<BitVec>())
            .collect::<Result<Vec<_>>>()?;
        let matrix = BitMat::from_rows(&rows)?;
        let mut f = AomFunction::new(matrix, b)?;
        match lines.get(3 + n) {
            None => {}
            Some(&"sequence") => {
                let seq: TransvectionSequence = lines[4 + n..].join("\n").parse()?;
                if seq.n() != n || seq.product() != f.matrix {
                    return Err(Error::Parse(
                        "sequence product does not match the matrix".into(),
                    ));
                }
                f.provenance = Some(seq);
            }
            Some(other) => return Err(Error::Parse(format!("unexpected line {other:?}"))),
        }
        Ok(f)
    }
}

/// Black-box access to an integer-valued function on bit vectors.
pub trait Oracle {
    fn dim(&self) -> usize;

    /// Evaluates the function, counting one evaluation.
    fn evaluate(&mut self, x: &BitVec) -> usize;

    /// Evaluations consumed so far.
    fn evaluations(&self) -> u64;
}

/// An [`Oracle`] over an AOM function that counts evaluations and remembers
/// when the maximum `n` was first returned.
#[derive(Debug)]
pub struct CountingOracle<'f> {
    function: &'f AomFunction,
    eval_count: u64,
    optimum_hit_at: Option<u64>,
}

impl<'f> CountingOracle<'f> {
    pub fn new(function: &'f AomFunction) -> Self {
        CountingOracle {
            function,
            eval_count: 0,
            optimum_hit_at: None,
        }
    }

    pub fn function(&self) -> &'f AomFunction {
        self.function
    }

    pub fn eval_count(&self) -> u64 {
        self.eval_count
    }

    /// 1-based index of the first evaluation that returned `n`.
    pub fn optimum_hit_at(&self) -> Option<u64> {
        self.optimum_hit_at
    }
}

impl Oracle for CountingOracle<'_> {
    fn dim(&self) -> usize {
        self.function.n()
    }

    fn evaluate(&mut self, x: &BitVec) -> usize {
        self.eval_count += 1;
        let v = self.function.value(x);
        if v == self.function.n() && self.optimum_hit_at.is_none() {
            self.optimum_hit_at = Some(self.eval_count);
        }
        v
    }

    fn evaluations(&self) -> u64 {
        self.eval_count
    }
}

/// The oracle `x -> inner(Px)` for a fixed matrix `P`.
pub struct PreComposed<'a, O: Oracle + ?Sized> {
    inner: &'a mut O,
    map: BitMat,
}

impl<'a, O: Oracle + ?Sized> PreComposed<'a, O> {
    pub fn new(inner: &'a mut O, map: BitMat) -> Self {
        PreComposed { inner, map }
    }
}

impl<O: Oracle + ?Sized> Oracle for PreComposed<'_, O> {
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn evaluate(&mut self, x: &BitVec) -> usize {
        let y = self
            .map
            .mul_vec(x)
            .expect("dimension fixed by construction");
        self.inner.evaluate(&y)
    }

    fn evaluations(&self) -> u64 {
        self.inner.evaluations()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2::random_permutation;
    use crate::rng::rng_from_seed;
    use crate::transvection::Transvection;
    use proptest::prelude::*;

    fn bv(s: &str) -> BitVec {
        s.parse().unwrap()
    }

    fn tau12(n: usize) -> BitMat {
        Transvection::new(0, 1).unwrap().matrix(n).unwrap()
    }

    fn binomial(n: usize, k: usize) -> u64 {
        (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i as u64 + 1))
    }

    #[test]
    fn construction() {
        let f = make_aom(BitMat::identity(5), BitVec::zeros(5)).unwrap();
        assert_eq!(f, AomFunction::onemax(5));
        assert_eq!(
            make_aom(BitMat::zeros(3), BitVec::zeros(3)),
            Err(Error::SingularMatrix)
        );
        assert!(make_aom(BitMat::identity(3), BitVec::zeros(4)).is_err());
        let f = make_aom(tau12(3), BitVec::zeros(3)).unwrap();
        assert_eq!(f.evaluate(&bv("010")).unwrap(), 2);
    }

    #[test]
    fn evaluation_examples() {
        let f = AomFunction::onemax(6);
        assert_eq!(f.evaluate(&BitVec::ones(6)).unwrap(), 6);
        let f = make_aom(BitMat::identity(6), BitVec::ones(6)).unwrap();
        assert_eq!(f.evaluate(&BitVec::zeros(6)).unwrap(), 6);
        let f = make_aom(tau12(3), bv("011")).unwrap();
        assert_eq!(f.evaluate(&bv("000")).unwrap(), 2);
        assert!(f.evaluate(&bv("00")).is_err());
    }

    #[test]
    fn optimum_examples() {
        assert_eq!(AomFunction::onemax(7).optimum(), BitVec::ones(7));
        let f = make_aom(tau12(3), BitVec::zeros(3)).unwrap();
        assert_eq!(f.optimum(), bv("011"));
    }

    #[test]
    fn optimum_is_unique_exhaustively() {
        let mut rng = rng_from_seed(31);
        for n in 1..=10 {
            let f = sample_aom(n, &mut rng);
            let maximizers: Vec<BitVec> = (0..1u64 << n)
                .map(|k| BitVec::from_index(n, k))
                .filter(|x| f.value(x) == n)
                .collect();
            assert_eq!(maximizers, vec![f.optimum()]);
        }
    }

    #[test]
    fn level_sets_are_binomial() {
        let mut rng = rng_from_seed(32);
        for n in [1, 3, 6, 9, 12] {
            let f = sample_aom(n, &mut rng);
            let expected: Vec<u64> = (0..=n).map(|k| binomial(n, k)).collect();
            assert_eq!(f.value_histogram().unwrap(), expected);
        }
    }

    #[test]
    fn sampling_is_deterministic() {
        let a = sample_aom(20, &mut rng_from_seed(5));
        let b = sample_aom(20, &mut rng_from_seed(5));
        assert_eq!(a, b);
        assert!(a.matrix().is_invertible());
    }

    #[test]
    fn ts_aom_samples() {
        let mut rng = rng_from_seed(33);
        for class in ClassTag::ALL {
            let f = sample_ts_aom(8, 0, class, &mut rng).unwrap();
            assert_eq!(f.matrix(), &BitMat::identity(8));
        }
        let f = sample_ts_aom(10, 5, ClassTag::Disjoint, &mut rng).unwrap();
        let seq = f.provenance().unwrap();
        let mut idx: Vec<usize> = seq
            .transvections()
            .iter()
            .flat_map(|t| [t.dest(), t.src()])
            .collect();
        idx.sort_unstable();
        assert_eq!(idx, (0..10).collect::<Vec<_>>());
        assert_eq!(seq.product(), *f.matrix());
        assert!(sample_ts_aom(9, 8, ClassTag::UniqueSource, &mut rng).is_ok());
        assert!(sample_ts_aom(9, 9, ClassTag::UniqueSource, &mut rng).is_err());
    }

    #[test]
    fn functions_equal_examples() {
        let mut rng = rng_from_seed(34);
        let f = sample_aom(8, &mut rng);
        assert!(functions_equal(&f, &f).unwrap());
        let p = BitMat::permutation(&random_permutation(8, &mut rng)).unwrap();
        assert!(functions_equal(&f, &f.permuted(&p).unwrap()).unwrap());
        let g = make_aom(BitMat::identity(8), BitVec::unit(8, 0)).unwrap();
        assert!(!functions_equal(&AomFunction::onemax(8), &g).unwrap());
        assert!(functions_equal(&AomFunction::onemax(21), &AomFunction::onemax(21)).is_err());
    }

    #[test]
    fn counting_oracle_counts_and_flags_optimum() {
        let f = AomFunction::onemax(4);
        let mut o = CountingOracle::new(&f);
        assert_eq!(o.evaluate(&bv("0000")), 0);
        assert_eq!(o.evaluate(&bv("1111")), 4);
        assert_eq!(o.evaluate(&bv("1111")), 4);
        assert_eq!(o.eval_count(), 3);
        assert_eq!(o.optimum_hit_at(), Some(2));
    }

    #[test]
    fn instance_text_rejects_garbage() {
        assert!("n 3\nb 000\nmatrix\n100\n010\n"
            .parse::<AomFunction>()
            .is_err());
        assert!("n 2\nb 00\nmatrix\n11\n11\n"
            .parse::<AomFunction>()
            .is_err());
        let bad_seq = "n 3\nb 000\nmatrix\n100\n010\n001\nsequence\n3 1 unconstrained\n1 2\n";
        assert!(bad_seq.parse::<AomFunction>().is_err());
    }

    proptest! {
        #[test]
        fn instance_text_round_trips(seed in any::<u64>(), n in 1usize..20, t in 0usize..30, ts in any::<bool>()) {
            let mut rng = rng_from_seed(seed);
            let f = if ts && n >= 2 {
                sample_ts_aom(n, t, ClassTag::Unconstrained, &mut rng).unwrap()
            } else {
                sample_aom(n, &mut rng)
            };
            let back: AomFunction = f.to_string().parse().unwrap();
            prop_assert_eq!(back, f);
        }

        #[test]
        fn permutation_invariance(seed in any::<u64>(), n in 1usize..=10) {
            let mut rng = rng_from_seed(seed);
            let f = sample_aom(n, &mut rng);
            let p = BitMat::permutation(&random_permutation(n, &mut rng)).unwrap();
            prop_assert!(functions_equal(&f, &f.permuted(&p).unwrap()).unwrap());
        }
    }
}
