use rand::seq::SliceRandom;

use super::{AlgorithmConfig, Outcome, Tracker};
use crate::aom::Oracle;
use crate::gf2::BitVec;

pub(crate) fn random_search<O, R>(t: &mut Tracker<'_, O>, rng: &mut R) -> Outcome
where
    O: Oracle + ?Sized,
    R: rand::Rng + ?Sized,
{
    let n = t.dim();
    loop {
        t.evaluate(&BitVec::random(n, rng))?;
    }
}

/// Single-bit-flip local search over a shuffled coordinate order, accepting
/// ties. Restarts from a uniform point after a full pass without strict
/// improvement.
pub(crate) fn random_local_search<O, R>(t: &mut Tracker<'_, O>, rng: &mut R) -> Outcome
where
    O: Oracle + ?Sized,
    R: rand::Rng + ?Sized,
{
    let n = t.dim();
    let mut order: Vec<usize> = (0..n).collect();
    loop {
        let mut x = BitVec::random(n, rng);
        let mut fx = t.evaluate(&x)?;
        loop {
            order.shuffle(rng);
            let mut improved = false;
            for &i in &order {
                x.flip(i);
                let fy = t.evaluate(&x)?;
                if fy >= fx {
                    improved |= fy > fx;
                    fx = fy;
                } else {
                    x.flip(i);
                }
            }
            if !improved {
                break;
            }
        }
    }
}

/// Steepest ascent over all `n` neighbours; restarts at a strict local optimum.
pub(crate) fn hill_climbing<O, R>(t: &mut Tracker<'_, O>, rng: &mut R) -> Outcome
where
    O: Oracle + ?Sized,
    R: rand::Rng + ?Sized,
{
    let n = t.dim();
    loop {
        let mut x = BitVec::random(n, rng);
        let mut fx = t.evaluate(&x)?;
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in 0..n {
                x.flip(i);
                let fy = t.evaluate(&x)?;
                x.flip(i);
                if best.is_none_or(|(_, fb)| fy > fb) {
                    best = Some((i, fy));
                }
            }
            match best {
                Some((i, fb)) if fb > fx => {
                    x.flip(i);
                    fx = fb;
                }
                _ => break,
            }
        }
    }
}

/// Metropolis acceptance of single-bit flips under geometric cooling.
pub(crate) fn simulated_annealing<O, R>(
    config: &AlgorithmConfig,
    t: &mut Tracker<'_, O>,
    rng: &mut R,
) -> Outcome
where
    O: Oracle + ?Sized,
    R: rand::Rng + ?Sized,
{
    let n = t.dim();
    let mut x = BitVec::random(n, rng);
    let mut fx = t.evaluate(&x)?;
    let mut temperature = config.initial_temperature;
    loop {
        let i = rng.random_range(0..n);
        x.flip(i);
        let fy = t.evaluate(&x)?;
        let delta = fy as f64 - fx as f64;
        if delta >= 0.0 || rng.random::<f64>() < (delta / temperature).exp() {
            fx = fy;
        } else {
            x.flip(i);
        }
        temperature *= config.cooling_factor;
    }
}
