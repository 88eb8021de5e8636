//! Elementary transvections `x_i <- x_i + x_j` and samplers for sequences of them.
//!
//! A sequence `(tau_1, ..., tau_t)` denotes the matrix product
//! `tau_1 * tau_2 * ... * tau_t`, so it acts on vectors right to left.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rand::seq::{index, SliceRandom};

use crate::error::{Error, Result};
use crate::gf2::{BitMat, BitVec};

/// Structural classes of transvection sequences.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ClassTag {
    Unconstrained,
    /// Destination and source index sets are disjoint.
    Commuting,
    /// Commuting, each source index used at most once.
    UniqueSource,
    /// Commuting, each destination index used at most once.
    UniqueDestination,
    /// All indices pairwise distinct.
    Disjoint,
    /// No two consecutive transvections commute.
    NoncommutingConsecutive,
}

impl ClassTag {
    pub const ALL: [ClassTag; 6] = [
        ClassTag::Unconstrained,
        ClassTag::Commuting,
        ClassTag::UniqueSource,
        ClassTag::UniqueDestination,
        ClassTag::Disjoint,
        ClassTag::NoncommutingConsecutive,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ClassTag::Unconstrained => "unconstrained",
            ClassTag::Commuting => "commuting",
            ClassTag::UniqueSource => "unique_source",
            ClassTag::UniqueDestination => "unique_destination",
            ClassTag::Disjoint => "disjoint",
            ClassTag::NoncommutingConsecutive => "noncommuting_consecutive",
        }
    }

    /// Largest admissible sequence length at dimension `n`, `None` when unbounded.
    pub fn max_length(self, n: usize) -> Option<usize> {
        match self {
            ClassTag::Unconstrained | ClassTag::NoncommutingConsecutive => None,
            ClassTag::Commuting => Some(n * n / 4),
            ClassTag::UniqueSource | ClassTag::UniqueDestination => Some(n.saturating_sub(1)),
            ClassTag::Disjoint => Some(n / 2),
        }
    }

    pub fn check_length(self, n: usize, t: usize) -> Result<()> {
        // every nonempty sequence needs two distinct indices
        let max = if n < 2 {
            0
        } else {
            self.max_length(n).unwrap_or(usize::MAX)
        };
        if t > max {
            return Err(Error::LengthOutOfRange {
                class: self,
                n,
                t,
                max,
            });
        }
        Ok(())
    }
}

impl fmt::Display for ClassTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ClassTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ClassTag::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| Error::Parse(format!("unknown class tag {s:?}")))
    }
}

/// The elementary transvection adding coordinate `src` into coordinate `dest`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Transvection {
    dest: usize,
    src: usize,
}

impl Transvection {
    /// 0-based destination and source.
    pub fn new(dest: usize, src: usize) -> Result<Self> {
        if dest == src {
            return Err(Error::DegenerateTransvection(dest + 1));
        }
        Ok(Transvection { dest, src })
    }

    pub fn dest(self) -> usize {
        self.dest
    }

    pub fn src(self) -> usize {
        self.src
    }

    fn check(self, n: usize) -> Result<()> {
        for index in [self.dest, self.src] {
            if index >= n {
                return Err(Error::IndexOutOfRange {
                    index: index + 1,
                    n,
                });
            }
        }
        Ok(())
    }

    pub fn apply_in_place(self, x: &mut BitVec) {
        if x.get(self.src) {
            x.flip(self.dest);
        }
    }

    pub fn apply(self, x: &BitVec) -> Result<BitVec> {
        self.check(x.len())?;
        let mut y = x.clone();
        self.apply_in_place(&mut y);
        Ok(y)
    }

    /// `I_n + B_{dest,src}`.
    pub fn matrix(self, n: usize) -> Result<BitMat> {
        self.check(n)?;
        let mut m = BitMat::identity(n);
        m.set(self.dest, self.src, true);
        Ok(m)
    }

    pub fn commutes_with(self, other: Transvection) -> bool {
        self.src != other.dest && other.src != self.dest
    }

    /// All `n(n-1)` transvections in lexicographic `(dest, src)` order.
    pub fn all(n: usize) -> Vec<Transvection> {
        (0..n)
            .flat_map(|i| {
                (0..n)
                    .filter(move |&j| j != i)
                    .map(move |j| Transvection { dest: i, src: j })
            })
            .collect()
    }

    fn random<R: rand::Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        let dest = rng.random_range(0..n);
        let mut src = rng.random_range(0..n - 1);
        if src >= dest {
            src += 1;
        }
        Transvection { dest, src }
    }
}

impl fmt::Display for Transvection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.dest + 1, self.src + 1)
    }
}

/// Convenience wrapper for [`Transvection::commutes_with`].
pub fn commute(a: Transvection, b: Transvection) -> bool {
    a.commutes_with(b)
}

/// Every class the raw sequence satisfies.
pub fn classify(seq: &[Transvection]) -> BTreeSet<ClassTag> {
    let mut tags = BTreeSet::from([ClassTag::Unconstrained]);
    let dests: BTreeSet<usize> = seq.iter().map(|t| t.dest).collect();
    let srcs: BTreeSet<usize> = seq.iter().map(|t| t.src).collect();
    let commuting = dests.is_disjoint(&srcs);
    if commuting {
        tags.insert(ClassTag::Commuting);
        if srcs.len() == seq.len() {
            tags.insert(ClassTag::UniqueSource);
        }
        if dests.len() == seq.len() {
            tags.insert(ClassTag::UniqueDestination);
        }
        if srcs.len() == seq.len() && dests.len() == seq.len() {
            tags.insert(ClassTag::Disjoint);
        }
    }
    if seq.windows(2).all(|w| !w[0].commutes_with(w[1])) {
        tags.insert(ClassTag::NoncommutingConsecutive);
    }
    tags
}

/// A tagged sequence of transvections on `n` coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransvectionSequence {
    n: usize,
    seq: Vec<Transvection>,
    class: ClassTag,
}

impl TransvectionSequence {
    /// Validates indices, the class constraint and the class length limit.
    pub fn new(n: usize, seq: Vec<Transvection>, class: ClassTag) -> Result<Self> {
        for t in &seq {
            t.check(n)?;
        }
        class.check_length(n, seq.len())?;
        if !classify(&seq).contains(&class) {
            return Err(Error::ClassConstraint(class));
        }
        Ok(TransvectionSequence { n, seq, class })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.seq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seq.is_empty()
    }

    pub fn class(&self) -> ClassTag {
        self.class
    }

    pub fn transvections(&self) -> &[Transvection] {
        &self.seq
    }

    /// `tau_1 * tau_2 * ... * tau_t`.
    pub fn product(&self) -> BitMat {
        let mut m = BitMat::identity(self.n);
        // right-multiplying by tau_{ij} adds column i into column j
        for t in &self.seq {
            for r in 0..self.n {
                if m.get(r, t.dest) {
                    let v = m.get(r, t.src);
                    m.set(r, t.src, !v);
                }
            }
        }
        m
    }

    /// `tau_1(tau_2(...tau_t(x)))`.
    pub fn apply(&self, x: &BitVec) -> Result<BitVec> {
        if x.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: x.len(),
            });
        }
        let mut y = x.clone();
        for t in self.seq.iter().rev() {
            t.apply_in_place(&mut y);
        }
        Ok(y)
    }

    pub fn classify(&self) -> BTreeSet<ClassTag> {
        classify(&self.seq)
    }

    /// Samples a sequence of length `t` in the given class.
    ///
    /// Unconstrained elements are independent and uniform over all `n(n-1)`
    /// transvections. Constrained classes are built constructively: index sets
    /// first, then assignments, each step uniform. The induced distribution on
    /// products is not uniform.
    pub fn sample<R: rand::Rng + ?Sized>(
        n: usize,
        t: usize,
        class: ClassTag,
        rng: &mut R,
    ) -> Result<Self> {
        class.check_length(n, t)?;
        let seq = if t == 0 {
            Vec::new()
        } else {
            match class {
                ClassTag::Unconstrained => (0..t).map(|_| Transvection::random(n, rng)).collect(),
                ClassTag::NoncommutingConsecutive => sample_noncommuting(n, t, rng),
                ClassTag::Commuting => sample_commuting(n, t, rng),
                ClassTag::UniqueSource => {
                    let (srcs, rest) = split_indices(n, t, rng);
                    srcs.into_iter()
                        .map(|src| Transvection {
                            dest: rest[rng.random_range(0..rest.len())],
                            src,
                        })
                        .collect()
                }
                ClassTag::UniqueDestination => {
                    let (dests, rest) = split_indices(n, t, rng);
                    dests
                        .into_iter()
                        .map(|dest| Transvection {
                            dest,
                            src: rest[rng.random_range(0..rest.len())],
                        })
                        .collect()
                }
                ClassTag::Disjoint => {
                    let picked = index::sample(rng, n, 2 * t).into_vec();
                    picked
                        .chunks(2)
                        .map(|p| Transvection {
                            dest: p[0],
                            src: p[1],
                        })
                        .collect()
                }
            }
        };
        Ok(TransvectionSequence { n, seq, class })
    }
}

/// A uniform random `k`-subset of `0..n` (in random order) and its complement.
fn split_indices<R: rand::Rng + ?Sized>(
    n: usize,
    k: usize,
    rng: &mut R,
) -> (Vec<usize>, Vec<usize>) {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let rest = perm.split_off(k);
    (perm, rest)
}

fn sample_commuting<R: rand::Rng + ?Sized>(n: usize, t: usize, rng: &mut R) -> Vec<Transvection> {
    let feasible: Vec<usize> = (1..n).filter(|&d| d * (n - d) >= t).collect();
    let d = feasible[rng.random_range(0..feasible.len())];
    let (dests, srcs) = split_indices(n, d, rng);
    let pairs = index::sample(rng, dests.len() * srcs.len(), t);
    pairs
        .into_iter()
        .map(|p| Transvection {
            dest: dests[p / srcs.len()],
            src: srcs[p % srcs.len()],
        })
        .collect()
}

fn sample_noncommuting<R: rand::Rng + ?Sized>(
    n: usize,
    t: usize,
    rng: &mut R,
) -> Vec<Transvection> {
    let mut seq = vec![Transvection::random(n, rng)];
    while seq.len() < t {
        let prev = *seq.last().expect("non-empty");
        // tau_{k,i} for k != i, then tau_{j,l} for l != j, excluding tau_{j,i} the second time
        let mut options: Vec<Transvection> = (0..n)
            .filter(|&k| k != prev.dest)
            .map(|k| Transvection {
                dest: k,
                src: prev.dest,
            })
            .collect();
        options.extend(
            (0..n)
                .filter(|&l| l != prev.src && l != prev.dest)
                .map(|l| Transvection {
                    dest: prev.src,
                    src: l,
                }),
        );
        seq.push(options[rng.random_range(0..options.len())]);
    }
    seq
}

impl fmt::Display for TransvectionSequence {
    /// Header `n t class_tag`, then one `i j` line per transvection (1-based).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {} {}", self.n, self.seq.len(), self.class)?;
        for t in &self.seq {
            writeln!(f, "{t}")?;
        }
        Ok(())
    }
}

impl FromStr for TransvectionSequence {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut lines = s.lines().map(str::trim).filter(|l| !l.is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty sequence text".into()))?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        let [n, t, class] = fields[..] else {
            return Err(Error::Parse(format!("bad sequence header {header:?}")));
        };
        let parse_num = |s: &str| {
            s.parse::<usize>()
                .map_err(|e| Error::Parse(format!("bad integer {s:?}: {e}")))
        };
        let (n, t, class) = (parse_num(n)?, parse_num(t)?, class.parse::<ClassTag>()?);
        let mut seq = Vec::with_capacity(t);
        for _ in 0..t {
            let line = lines
                .next()
                .ok_or_else(|| Error::Parse(format!("expected {t} transvection lines")))?;
            let ij: Vec<usize> = line
                .split_whitespace()
                .map(parse_num)
                .collect::<Result<_>>()?;
            let [i, j] = ij[..] else {
                return Err(Error::Parse(format!("bad transvection line {line:?}")));
            };
            if i == 0 || j == 0 {
                return Err(Error::Parse("transvection indices are 1-based".into()));
            }
            seq.push(Transvection::new(i - 1, j - 1)?);
        }
        TransvectionSequence::new(n, seq, class)
    }
}
