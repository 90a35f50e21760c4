//! Derivative-free optimizers backing the approximation game: a Nelder-Mead
//! simplex for the smooth inner maximization and a simulated annealer for
//! the outer minimization.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

/// Nelder-Mead minimization from one start point.
///
/// Standard reflection/expansion/contraction/shrink coefficients; stops when
/// the simplex function spread falls below `ftol` or after `max_iter`
/// iterations.
pub(crate) fn nelder_mead_min<F>(
    f: &F,
    start: &[f64],
    step: f64,
    ftol: f64,
    max_iter: usize,
) -> (Vec<f64>, f64)
where
    F: Fn(&[f64]) -> f64,
{
    const ALPHA: f64 = 1.0; // reflection
    const GAMMA: f64 = 2.0; // expansion
    const RHO: f64 = 0.5; // contraction
    const SIGMA: f64 = 0.5; // shrink

    let n = start.len();
    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(n + 1);
    simplex.push((start.to_vec(), f(start)));
    for i in 0..n {
        let mut x = start.to_vec();
        x[i] += step;
        let v = f(&x);
        simplex.push((x, v));
    }

    for _ in 0..max_iter {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let spread = simplex[n].1 - simplex[0].1;
        if spread.abs() < ftol {
            break;
        }

        let centroid: Vec<f64> = (0..n)
            .map(|d| simplex[..n].iter().map(|(x, _)| x[d]).sum::<f64>() / n as f64)
            .collect();
        let worst = simplex[n].clone();

        let blend = |t: f64| -> Vec<f64> {
            (0..n)
                .map(|d| centroid[d] + t * (centroid[d] - worst.0[d]))
                .collect()
        };

        let reflected = blend(ALPHA);
        let fr = f(&reflected);
        if fr < simplex[0].1 {
            let expanded = blend(GAMMA);
            let fe = f(&expanded);
            simplex[n] = if fe < fr {
                (expanded, fe)
            } else {
                (reflected, fr)
            };
            continue;
        }
        if fr < simplex[n - 1].1 {
            simplex[n] = (reflected, fr);
            continue;
        }
        let contracted = if fr < worst.1 {
            blend(RHO)
        } else {
            blend(-RHO)
        };
        let fc = f(&contracted);
        if fc < worst.1.min(fr) {
            simplex[n] = (contracted, fc);
            continue;
        }
        // shrink toward the best vertex
        let best = simplex[0].0.clone();
        for vertex in simplex.iter_mut().skip(1) {
            for d in 0..n {
                vertex.0[d] = best[d] + SIGMA * (vertex.0[d] - best[d]);
            }
            vertex.1 = f(&vertex.0);
        }
    }

    simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
    simplex.swap_remove(0)
}

/// Cooling schedule of the annealer. Geometric cooling, a fixed number of
/// moves per temperature, and a Gaussian proposal whose width decays with
/// the temperature.
#[derive(Clone, Copy, Debug)]
pub(crate) struct AnnealOptions {
    pub temp_steps: usize,
    pub moves_per_step: usize,
    pub cooling: f64,
    pub sigma0: f64,
    pub t0: f64,
}

impl Default for AnnealOptions {
    fn default() -> Self {
        Self {
            temp_steps: 200,
            moves_per_step: 10,
            cooling: 0.95,
            sigma0: 0.5,
            t0: 0.1,
        }
    }
}

/// Single simulated-annealing chain; returns the best point visited.
pub(crate) fn anneal_min<F>(
    f: &F,
    start: Vec<f64>,
    opts: &AnnealOptions,
    rng: &mut ChaCha8Rng,
) -> (Vec<f64>, f64)
where
    F: Fn(&[f64]) -> f64,
{
    let mut current = start;
    let mut f_current = f(&current);
    let mut best = current.clone();
    let mut f_best = f_current;

    for k in 0..opts.temp_steps {
        let decay = opts.cooling.powi(k as i32);
        let temperature = opts.t0 * decay;
        let sigma = opts.sigma0 * decay;
        for _ in 0..opts.moves_per_step {
            let proposal: Vec<f64> = current
                .iter()
                .map(|&x| x + sigma * rng.sample::<f64, _>(StandardNormal))
                .collect();
            let f_proposal = f(&proposal);
            let accept = f_proposal < f_current
                || rng.gen::<f64>() < ((f_current - f_proposal) / temperature).exp();
            if accept {
                current = proposal;
                f_current = f_proposal;
                if f_current < f_best {
                    best = current.clone();
                    f_best = f_current;
                }
            }
        }
    }
    (best, f_best)
}
