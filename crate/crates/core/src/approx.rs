//! How well can a product of two single-qubit states approximate an
//! entangled pair?
//!
//! Alice's pair state is parametrized by hypersphere angles (theta1, theta2,
//! theta3) for the moduli and one free phase alpha4 (the other three phases
//! are fixed to zero, which costs no generality because the approximator can
//! reproduce them). Eve's product state carries two modulus angles Phi and
//! Omega and four phases. The overlap functional G equals the real part of
//! the inner product between the two constructions, so the approximation
//! error is ||psi - psi1 (x) psi2|| = sqrt(2 (1 - G)).
//!
//! Eve maximizes G; Alice minimizes that maximum. The inner maximization is
//! a multistart Nelder-Mead ascent, the outer minimization a simulated
//! annealer, both seeded and deterministic.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::optim::{anneal_min, nelder_mead_min, AnnealOptions};
use crate::quantum::{c, cr, StateVec};

/// Default number of random starts of the inner ascent.
pub const DEFAULT_INNER_RESTARTS: usize = 100;
/// Default number of independent annealing chains of the outer search.
pub const DEFAULT_OUTER_RESTARTS: usize = 4;

/// Alice's pair-state parameters: three hypersphere angles for the moduli
/// and the one phase left free after fixing the others to zero.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AliceParams {
    pub theta: [f64; 3],
    pub alpha4: f64,
}

impl AliceParams {
    pub fn new(theta1: f64, theta2: f64, theta3: f64, alpha4: f64) -> Self {
        Self {
            theta: [theta1, theta2, theta3],
            alpha4,
        }
    }

    /// Amplitude moduli (r1, r2, r3, r4) on the unit 3-sphere.
    pub fn moduli(&self) -> [f64; 4] {
        let [t1, t2, t3] = self.theta;
        [
            t1.cos(),
            t1.sin() * t2.cos(),
            t1.sin() * t2.sin() * t3.cos(),
            t1.sin() * t2.sin() * t3.sin(),
        ]
    }
}

/// Eve's product-state parameters: modulus angles Phi and Omega and the four
/// amplitude phases.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EveParams {
    pub big_phi: f64,
    pub big_omega: f64,
    pub phi: [f64; 2],
    pub omega: [f64; 2],
}

impl EveParams {
    fn from_slice(x: &[f64]) -> Self {
        Self {
            big_phi: x[0],
            big_omega: x[1],
            phi: [x[2], x[3]],
            omega: [x[4], x[5]],
        }
    }

    #[cfg(test)]
    fn to_vec(self) -> Vec<f64> {
        vec![
            self.big_phi,
            self.big_omega,
            self.phi[0],
            self.phi[1],
            self.omega[0],
            self.omega[1],
        ]
    }
}

/// Result of the outer minimization.
#[derive(Clone, Copy, Debug)]
pub struct ApproxResult {
    /// The max-min approximation error sqrt(2 (1 - g_value)).
    pub e_mm: f64,
    pub alice: AliceParams,
    pub eve: EveParams,
    /// Eve's best achievable overlap at Alice's chosen state.
    pub g_value: f64,
}

/// The overlap functional Eve maximizes and Alice suppresses.
pub fn g_function(a: &AliceParams, e: &EveParams) -> f64 {
    let [r1, r2, r3, r4] = a.moduli();
    g_from_moduli(r1, r2, r3, r4, a.alpha4, e)
}

#[inline]
fn g_from_moduli(r1: f64, r2: f64, r3: f64, r4: f64, alpha4: f64, e: &EveParams) -> f64 {
    let (sin_phi, cos_phi) = e.big_phi.sin_cos();
    let (sin_omega, cos_omega) = e.big_omega.sin_cos();
    cos_phi
        * (cos_omega * (-e.phi[0] - e.omega[0]).cos() * r1
            + sin_omega * (-e.phi[0] - e.omega[1]).cos() * r2)
        + sin_phi
            * (cos_omega * (-e.phi[1] - e.omega[0]).cos() * r3
                + sin_omega * (alpha4 - e.phi[1] - e.omega[1]).cos() * r4)
}

/// Alice's pair state (r1, r2, r3, r4 e^{i alpha4}).
pub fn alice_state(a: &AliceParams) -> StateVec {
    let [r1, r2, r3, r4] = a.moduli();
    let phase = c(a.alpha4.cos(), a.alpha4.sin());
    StateVec::new(vec![cr(r1), cr(r2), cr(r3), phase * r4])
        .expect("hypersphere parametrization is normalized")
}

/// Eve's product state (psi1 (x) psi2).
pub fn eve_state(e: &EveParams) -> StateVec {
    let q1 = StateVec::new(vec![
        c(e.phi[0].cos(), e.phi[0].sin()) * e.big_phi.cos(),
        c(e.phi[1].cos(), e.phi[1].sin()) * e.big_phi.sin(),
    ])
    .expect("circle parametrization is normalized");
    let q2 = StateVec::new(vec![
        c(e.omega[0].cos(), e.omega[0].sin()) * e.big_omega.cos(),
        c(e.omega[1].cos(), e.omega[1].sin()) * e.big_omega.sin(),
    ])
    .expect("circle parametrization is normalized");
    q1.kron(&q2).expect("single-qubit inputs")
}

/// The approximation error for a given overlap, sqrt(2 (1 - g)).
pub fn approximation_error(g: f64) -> f64 {
    (2.0 * (1.0 - g)).max(0.0).sqrt()
}

fn derive_seed(master: u64, salt: u64) -> u64 {
    // SplitMix64 round over (master, salt)
    let mut z = master
        .wrapping_add(salt.wrapping_mul(0x9E37_79B9_7F4A_7C15))
        .wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Multistart ascent of G over Eve's six angles at a fixed Alice state.
///
/// Start points derive one-to-one from the seed and the restart index, so a
/// larger restart budget evaluates a superset of start points and the best
/// value is monotone in `restarts`. Restarts run in parallel; the best
/// (ties to the lowest restart index) is returned.
pub fn inner_maximize(a: &AliceParams, restarts: usize, seed: u64) -> (EveParams, f64) {
    assert!(restarts >= 1, "need at least one restart");
    let [r1, r2, r3, r4] = a.moduli();
    let alpha4 = a.alpha4;
    let objective = move |x: &[f64]| -> f64 {
        -g_from_moduli(r1, r2, r3, r4, alpha4, &EveParams::from_slice(x))
    };

    let runs: Vec<(Vec<f64>, f64)> = (0..restarts)
        .into_par_iter()
        .map(|k| {
            let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, k as u64));
            let start: Vec<f64> = (0..6)
                .map(|_| rng.gen_range(0.0..2.0 * std::f64::consts::PI))
                .collect();
            nelder_mead_min(&objective, &start, 0.4, 1e-14, 900)
        })
        .collect();

    let (best_x, best_neg) = runs
        .into_iter()
        .reduce(|acc, run| if run.1 < acc.1 { run } else { acc })
        .expect("at least one restart");
    (EveParams::from_slice(&best_x), -best_neg)
}

/// Simulated-annealing minimization of Eve's best overlap over Alice's four
/// parameters.
///
/// Each of the `restarts` chains starts from a seed-derived random point and
/// runs the geometric schedule in [`AnnealOptions`]; every objective
/// evaluation is a full (deterministic) inner maximization with
/// `inner_restarts` starts. The chain with the smallest maximum wins and its
/// optimum is re-polished once to extract Eve's parameters.
pub fn outer_minimize(restarts: usize, inner_restarts: usize, seed: u64) -> ApproxResult {
    assert!(restarts >= 1 && inner_restarts >= 1, "counts must be positive");
    let inner_seed = derive_seed(seed, 0x1_0000);
    let objective = move |x: &[f64]| -> f64 {
        let alice = AliceParams::new(x[0], x[1], x[2], x[3]);
        inner_maximize(&alice, inner_restarts, inner_seed).1
    };

    let chains: Vec<(Vec<f64>, f64)> = (0..restarts)
        .into_par_iter()
        .map(|chain| {
            let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, 0x2_0000 + chain as u64));
            let start = vec![
                rng.gen_range(0.0..std::f64::consts::PI),
                rng.gen_range(0.0..std::f64::consts::PI),
                rng.gen_range(0.0..std::f64::consts::PI),
                rng.gen_range(0.0..2.0 * std::f64::consts::PI),
            ];
            anneal_min(&objective, start, &AnnealOptions::default(), &mut rng)
        })
        .collect();

    let (best_x, _) = chains
        .into_iter()
        .reduce(|acc, run| if run.1 < acc.1 { run } else { acc })
        .expect("at least one chain");

    let alice = AliceParams::new(best_x[0], best_x[1], best_x[2], best_x[3]);
    let (eve, g_value) = inner_maximize(&alice, inner_restarts, inner_seed);
    ApproxResult {
        e_mm: approximation_error(g_value),
        alice,
        eve,
        g_value,
    }
}
