use super::{mutate, AlgorithmConfig, Outcome, Tracker};
use crate::aom::Oracle;
use crate::gf2::BitVec;

/// (1+1) EA with standard bit mutation, accepting ties.
pub(crate) fn one_plus_one<O, R>(
    config: &AlgorithmConfig,
    t: &mut Tracker<'_, O>,
    rng: &mut R,
) -> Outcome
where
    O: Oracle + ?Sized,
    R: rand::Rng + ?Sized,
{
    let n = t.dim();
    let rate = config.mutation_rate_for(n);
    let mut x = BitVec::random(n, rng);
    let mut fx = t.evaluate(&x)?;
    loop {
        let y = mutate(&x, rate, rng);
        let fy = t.evaluate(&y)?;
        if fy >= fx {
            x = y;
            fx = fy;
        }
    }
}

/// (mu+1) EA: uniform parent choice, the offspring replaces the first worst
/// individual if it is at least as good.
pub(crate) fn mu_plus_one<O, R>(
    config: &AlgorithmConfig,
    t: &mut Tracker<'_, O>,
    rng: &mut R,
) -> Outcome
where
    O: Oracle + ?Sized,
    R: rand::Rng + ?Sized,
{
    let n = t.dim();
    let rate = config.mutation_rate_for(n);
    let mut pop = Vec::with_capacity(config.population());
    for _ in 0..config.population() {
        let x = BitVec::random(n, rng);
        let fx = t.evaluate(&x)?;
        pop.push((x, fx));
    }
    loop {
        let parent = &pop[rng.random_range(0..pop.len())].0;
        let child = mutate(parent, rate, rng);
        let fc = t.evaluate(&child)?;
        let worst = (0..pop.len())
            .min_by_key(|&i| pop[i].1)
            .expect("non-empty population");
        if fc >= pop[worst].1 {
            pop[worst] = (child, fc);
        }
    }
}

fn tournament<'p, R: rand::Rng + ?Sized>(
    pop: &'p [(BitVec, usize)],
    size: usize,
    rng: &mut R,
) -> &'p BitVec {
    let mut best = &pop[rng.random_range(0..pop.len())];
    for _ in 1..size {
        let other = &pop[rng.random_range(0..pop.len())];
        if other.1 > best.1 {
            best = other;
        }
    }
    &best.0
}

fn uniform_crossover<R: rand::Rng + ?Sized>(a: &BitVec, b: &BitVec, rng: &mut R) -> BitVec {
    let mut child = a.clone();
    for i in 0..a.len() {
        if rng.random_bool(0.5) {
            child.set(i, b.get(i));
        }
    }
    child
}

/// Generational GA with tournament selection, uniform crossover, bit
/// mutation and one elite carried over unevaluated.
pub(crate) fn genetic<O, R>(
    config: &AlgorithmConfig,
    t: &mut Tracker<'_, O>,
    rng: &mut R,
) -> Outcome
where
    O: Oracle + ?Sized,
    R: rand::Rng + ?Sized,
{
    let n = t.dim();
    let size = config.population();
    let rate = config.mutation_rate_for(n);
    let mut pop = Vec::with_capacity(size);
    for _ in 0..size {
        let x = BitVec::random(n, rng);
        let fx = t.evaluate(&x)?;
        pop.push((x, fx));
    }
    loop {
        let elite = pop
            .iter()
            .max_by_key(|p| p.1)
            .expect("non-empty population")
            .clone();
        let mut next = Vec::with_capacity(size);
        next.push(elite);
        while next.len() < size {
            let first = tournament(&pop, config.tournament_size, rng);
            let second = tournament(&pop, config.tournament_size, rng);
            let child = if rng.random_bool(config.crossover_rate) {
                uniform_crossover(first, second, rng)
            } else {
                first.clone()
            };
            let child = mutate(&child, rate, rng);
            let fc = t.evaluate(&child)?;
            next.push((child, fc));
        }
        pop = next;
    }
}
