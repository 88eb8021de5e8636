use super::{AlgorithmConfig, Outcome, Tracker};
use crate::aom::Oracle;
use crate::gf2::BitVec;

fn sample<R: rand::Rng + ?Sized>(probs: &[f64], rng: &mut R) -> BitVec {
    let bits: Vec<bool> = probs.iter().map(|&p| rng.random_bool(p)).collect();
    BitVec::from_bools(&bits)
}

fn clamp_all(probs: &mut [f64]) {
    let n = probs.len() as f64;
    let (lo, hi) = (1.0 / n, 1.0 - 1.0 / n);
    for p in probs {
        *p = p.clamp(lo.min(hi), hi.max(lo));
    }
}

fn evaluate_population<O, R>(
    probs: &[f64],
    size: usize,
    t: &mut Tracker<'_, O>,
    rng: &mut R,
) -> Result<Vec<(BitVec, usize)>, super::Stop>
where
    O: Oracle + ?Sized,
    R: rand::Rng + ?Sized,
{
    (0..size)
        .map(|_| {
            let x = sample(probs, rng);
            t.evaluate(&x).map(|fx| (x, fx))
        })
        .collect()
}

/// UMDA with truncation selection of the best half.
pub(crate) fn umda<O, R>(config: &AlgorithmConfig, t: &mut Tracker<'_, O>, rng: &mut R) -> Outcome
where
    O: Oracle + ?Sized,
    R: rand::Rng + ?Sized,
{
    let n = t.dim();
    let size = config.population();
    let mut probs = vec![0.5; n];
    loop {
        let mut pop = evaluate_population(&probs, size, t, rng)?;
        pop.sort_by_key(|p| std::cmp::Reverse(p.1));
        let selected = &pop[..size.div_ceil(2)];
        for (i, p) in probs.iter_mut().enumerate() {
            let ones = selected.iter().filter(|(x, _)| x.get(i)).count();
            *p = ones as f64 / selected.len() as f64;
        }
        clamp_all(&mut probs);
    }
}

/// PBIL: the probability vector moves towards each generation's best sample.
pub(crate) fn pbil<O, R>(config: &AlgorithmConfig, t: &mut Tracker<'_, O>, rng: &mut R) -> Outcome
where
    O: Oracle + ?Sized,
    R: rand::Rng + ?Sized,
{
    let n = t.dim();
    let size = config.population();
    let rho = config.learning_rate;
    let mut probs = vec![0.5; n];
    loop {
        let pop = evaluate_population(&probs, size, t, rng)?;
        let best = &pop
            .iter()
            .max_by_key(|p| p.1)
            .expect("non-empty population")
            .0;
        for (i, p) in probs.iter_mut().enumerate() {
            let target = if best.get(i) { 1.0 } else { 0.0 };
            *p = (1.0 - rho) * *p + rho * target;
        }
        clamp_all(&mut probs);
    }
}
