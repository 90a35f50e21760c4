//! Discrete entropy and mutual information, plus the closed-form analytic
//! curves: intercept-resend and incoherent attack bounds, the six-state
//! bound, the reconciliation floor, and the cloning fidelity formulas.
//!
//! Logarithms are base two throughout; 0*log(0) is defined as 0.

use crate::error::{Error, Result};

const SUM_TOL: f64 = 1e-9;

/// p*log2(p) with the 0*log(0) := 0 convention.
#[inline]
fn plog2p(p: f64) -> f64 {
    if p <= 0.0 {
        0.0
    } else {
        p * p.log2()
    }
}

/// A probability distribution over finitely many outcomes.
#[derive(Clone, Debug, PartialEq)]
pub struct Distribution {
    probs: Vec<f64>,
}

impl Distribution {
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        if probs.is_empty() {
            return Err(Error::InvalidArgument("empty distribution".into()));
        }
        for &p in &probs {
            if !(0.0..=1.0 + SUM_TOL).contains(&p) || !p.is_finite() {
                return Err(Error::InvalidProbability(p));
            }
        }
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > SUM_TOL {
            return Err(Error::NotADistribution { sum });
        }
        Ok(Self { probs })
    }

    pub fn uniform(n: usize) -> Self {
        assert!(n > 0, "empty distribution");
        Self {
            probs: vec![1.0 / n as f64; n],
        }
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }
}

/// A joint distribution of two finite random variables; rows index the
/// first variable.
#[derive(Clone, Debug, PartialEq)]
pub struct JointTable {
    rows: usize,
    cols: usize,
    probs: Vec<f64>,
}

impl JointTable {
    pub fn new(table: Vec<Vec<f64>>) -> Result<Self> {
        let rows = table.len();
        if rows == 0 || table[0].is_empty() {
            return Err(Error::InvalidArgument("empty joint table".into()));
        }
        let cols = table[0].len();
        let mut probs = Vec::with_capacity(rows * cols);
        for row in &table {
            if row.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    actual: row.len(),
                });
            }
            for &p in row {
                if !(0.0..=1.0 + SUM_TOL).contains(&p) || !p.is_finite() {
                    return Err(Error::InvalidProbability(p));
                }
                probs.push(p);
            }
        }
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > SUM_TOL {
            return Err(Error::NotADistribution { sum });
        }
        Ok(Self { rows, cols, probs })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> f64 {
        self.probs[r * self.cols + c]
    }

    pub fn transpose(&self) -> JointTable {
        let mut probs = vec![0.0; self.probs.len()];
        for r in 0..self.rows {
            for c in 0..self.cols {
                probs[c * self.rows + r] = self.get(r, c);
            }
        }
        JointTable {
            rows: self.cols,
            cols: self.rows,
            probs,
        }
    }

    fn row_marginal(&self) -> Vec<f64> {
        (0..self.rows)
            .map(|r| (0..self.cols).map(|c| self.get(r, c)).sum())
            .collect()
    }

    fn col_marginal(&self) -> Vec<f64> {
        (0..self.cols)
            .map(|c| (0..self.rows).map(|r| self.get(r, c)).sum())
            .collect()
    }
}

/// Shannon entropy -sum p log2 p, in bits.
pub fn entropy(d: &Distribution) -> f64 {
    -d.probs.iter().copied().map(plog2p).sum::<f64>()
}

/// Binary entropy H_bin(p), symmetric about 1/2.
pub fn binary_entropy(p: f64) -> f64 {
    assert!(
        (-SUM_TOL..=1.0 + SUM_TOL).contains(&p),
        "probability {p} outside [0, 1]"
    );
    let p = p.clamp(0.0, 1.0);
    -plog2p(p) - plog2p(1.0 - p)
}

/// Mutual information I(X,Y) = H(X) + H(Y) - H(X,Y), in bits.
pub fn mutual_information(j: &JointTable) -> f64 {
    let hx = -j.row_marginal().into_iter().map(plog2p).sum::<f64>();
    let hy = -j.col_marginal().into_iter().map(plog2p).sum::<f64>();
    let hxy = -j.probs.iter().copied().map(plog2p).sum::<f64>();
    hx + hy - hxy
}

/// Maximal information per sifted bit from an intercept-resend attack at a
/// given QBER: 2q up to q = 1/4, then flat at 0.5.
pub fn ir_bound(q: f64) -> Result<f64> {
    if !(0.0..=0.5).contains(&q) {
        return Err(Error::OutOfDomain {
            value: q,
            domain: "[0, 1/2]",
        });
    }
    Ok(if q <= 0.25 { 2.0 * q } else { 0.5 })
}

/// Maximal information from an incoherent attack at a given QBER.
pub fn incoherent_bound(q: f64) -> f64 {
    assert!((0.0..=0.5).contains(&q), "QBER {q} outside [0, 1/2]");
    let t = (q * (1.0 - q)).sqrt();
    let hi = 1.0 + 2.0 * t;
    let lo = 1.0 - 2.0 * t;
    let first = (0.5 + t) * hi.log2();
    // At q = 1/2 the second coefficient vanishes together with its log.
    let second = if lo <= 0.0 { 0.0 } else { (0.5 - t) * lo.log2() };
    first + second
}

/// The eta-parametrized incoherent attack: returns (QBER, information).
/// The pair lies on `incoherent_bound` for every eta in [0, pi/2].
pub fn incoherent_curve(eta: f64) -> (f64, f64) {
    assert!(
        (0.0..=std::f64::consts::FRAC_PI_2 + 1e-12).contains(&eta),
        "eta {eta} outside [0, pi/2]"
    );
    let q = 0.5 * (1.0 - eta.cos());
    let p_correct = 0.5 * (1.0 + eta.sin());
    let info = 1.0 - binary_entropy(p_correct);
    (q, info)
}

/// Maximal incoherent-attack information against the six-state protocol.
pub fn six_state_bound(q: f64) -> Result<f64> {
    if !(0.0..0.5).contains(&q) {
        return Err(Error::OutOfDomain {
            value: q,
            domain: "[0, 1/2)",
        });
    }
    let g = 0.5 * (1.0 + (q * (2.0 - 3.0 * q)).sqrt() / (1.0 - q));
    Ok(1.0 - (1.0 - q) * binary_entropy(g))
}

/// Theoretical minimum number of bits to disclose when correcting an
/// n-bit string with per-slot error probability p.
pub fn shannon_reconciliation_bound(n: usize, p: f64) -> f64 {
    assert!((0.0..=1.0).contains(&p), "probability {p} outside [0, 1]");
    n as f64 * binary_entropy(p)
}

/// Fidelity of the universal symmetric optimal N -> M cloner in dimension d.
pub fn werner_fidelity(n: usize, m: usize, d: usize) -> Result<f64> {
    if n < 1 || n > m {
        return Err(Error::InvalidArgument(format!(
            "need 1 <= N <= M, got N = {n}, M = {m}"
        )));
    }
    if d < 2 {
        return Err(Error::InvalidArgument(format!("dimension {d} below 2")));
    }
    let (n, m, d) = (n as f64, m as f64, d as f64);
    // N/M + (M-N)(N+1)/(M(N+d)) over the common denominator: one rounding.
    Ok((n * (n + d) + (m - n) * (n + 1.0)) / (m * (n + d)))
}

/// Fidelities (F_A, F_B) of the universal asymmetric optimal 1 -> 2 cloner
/// in dimension d. The parameters must satisfy a^2 + b^2 + ab = 1 for
/// qubits and a^2 + b^2 + ab/d = 1 for d > 2.
pub fn asymmetric_fidelities(a: f64, b: f64, d: usize) -> Result<(f64, f64)> {
    if d < 2 {
        return Err(Error::InvalidArgument(format!("dimension {d} below 2")));
    }
    let constraint = if d == 2 {
        a * a + b * b + a * b
    } else {
        a * a + b * b + a * b / d as f64
    };
    if (constraint - 1.0).abs() > SUM_TOL {
        return Err(Error::InvalidArgument(format!(
            "cloner constraint violated: got {constraint:.12}, need 1"
        )));
    }
    let ratio = (d as f64 - 1.0) / d as f64;
    Ok((1.0 - ratio * b * b, 1.0 - ratio * a * a))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    const PI: f64 = std::f64::consts::PI;

    #[test]
    fn entropy_of_certain_flat_and_uniform16() {
        let certain = Distribution::new(vec![1.0, 0.0]).unwrap();
        assert_eq!(entropy(&certain), 0.0);

        let flat = Distribution::new(vec![0.5, 0.5]).unwrap();
        assert!((entropy(&flat) - 1.0).abs() < 1e-12);

        let sixteen = Distribution::uniform(16);
        assert!((entropy(&sixteen) - 4.0).abs() < 1e-12);
    }

    #[test]
    fn entropy_strictly_below_max_off_uniform() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..200 {
            let n = rng.gen_range(2..8usize);
            let mut probs = vec![1.0 / n as f64; n];
            // random perturbation that keeps the sum at 1
            let i = rng.gen_range(0..n);
            let j = (i + 1) % n;
            let delta = rng.gen_range(1e-4..(0.5 / n as f64));
            probs[i] += delta;
            probs[j] -= delta;
            let d = Distribution::new(probs).unwrap();
            assert!(entropy(&d) < (n as f64).log2() - 1e-10);
        }
    }

    #[test]
    fn binary_entropy_values() {
        assert_eq!(binary_entropy(0.0), 0.0);
        assert_eq!(binary_entropy(1.0), 0.0);
        assert!((binary_entropy(0.5) - 1.0).abs() < 1e-12);
        assert!((binary_entropy(0.25) - 0.8112781244591328).abs() < 1e-12);
        for p in [0.1, 0.23, 0.4] {
            assert!((binary_entropy(p) - binary_entropy(1.0 - p)).abs() < 1e-12);
        }
    }

    #[test]
    fn distribution_validation() {
        assert!(Distribution::new(vec![0.5, 0.6]).is_err());
        assert!(Distribution::new(vec![-0.1, 1.1]).is_err());
        assert!(Distribution::new(vec![]).is_err());
    }

    #[test]
    fn mutual_information_independent_and_correlated() {
        let independent = JointTable::new(vec![vec![0.25, 0.25], vec![0.25, 0.25]]).unwrap();
        assert!(mutual_information(&independent).abs() < 1e-12);

        let correlated = JointTable::new(vec![vec![0.5, 0.0], vec![0.0, 0.5]]).unwrap();
        assert!((mutual_information(&correlated) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn mutual_information_symmetric_under_transpose() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..200 {
            let rows = rng.gen_range(2..5usize);
            let cols = rng.gen_range(2..5usize);
            let mut table: Vec<Vec<f64>> = (0..rows)
                .map(|_| (0..cols).map(|_| rng.gen_range(0.0..1.0)).collect())
                .collect();
            let total: f64 = table.iter().flatten().sum();
            for row in table.iter_mut() {
                for p in row.iter_mut() {
                    *p /= total;
                }
            }
            let j = JointTable::new(table).unwrap();
            let i1 = mutual_information(&j);
            let i2 = mutual_information(&j.transpose());
            assert!((i1 - i2).abs() < 1e-12);
            assert!(i1 > -1e-9);
        }
    }

    #[test]
    fn ir_bound_piecewise() {
        assert_eq!(ir_bound(0.0).unwrap(), 0.0);
        assert!((ir_bound(0.25).unwrap() - 0.5).abs() < 1e-15);
        assert!((ir_bound(0.4).unwrap() - 0.5).abs() < 1e-15);
        assert!((ir_bound(0.1).unwrap() - 0.2).abs() < 1e-15);
        assert!(ir_bound(0.6).is_err());
    }

    #[test]
    fn incoherent_bound_endpoints() {
        assert!(incoherent_bound(0.0).abs() < 1e-12);
        assert!((incoherent_bound(0.5) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn incoherent_curve_lies_on_bound() {
        for k in 0..=50 {
            let eta = PI / 2.0 * k as f64 / 50.0;
            let (q, info) = incoherent_curve(eta);
            assert!((incoherent_bound(q) - info).abs() < 1e-9, "eta = {eta}");
        }
        let (q0, i0) = incoherent_curve(0.0);
        assert!(q0.abs() < 1e-15 && i0.abs() < 1e-12);
        let (q1, i1) = incoherent_curve(PI / 2.0);
        assert!((q1 - 0.5).abs() < 1e-15 && (i1 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn incoherent_curve_quarter_pi() {
        let (q, info) = incoherent_curve(PI / 4.0);
        let half_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
        assert!((q - 0.5 * (1.0 - half_sqrt2)).abs() < 1e-12);
        assert!((info - (1.0 - binary_entropy(0.5 * (1.0 + half_sqrt2)))).abs() < 1e-12);
    }

    #[test]
    fn incoherent_bound_at_quarter_matches_eta_elimination() {
        // find eta with q(eta) = 0.25: cos(eta) = 1/2
        let eta = (0.5f64).acos();
        let (q, info) = incoherent_curve(eta);
        assert!((q - 0.25).abs() < 1e-12);
        assert!((incoherent_bound(0.25) - info).abs() < 1e-9);
    }

    #[test]
    fn incoherent_bound_concave_and_dominant() {
        let n = 100;
        let mut prev = None;
        for k in 0..=n {
            let q = 0.5 * k as f64 / n as f64;
            let v = incoherent_bound(q);
            if let Some((q_prev, v_prev)) = prev {
                // IR curve below the incoherent bound on the interior
                if q_prev > 0.0 {
                    assert!(ir_bound(q_prev).unwrap() <= v_prev + 1e-12);
                }
                let mid = 0.5 * (q_prev + q);
                let chord = 0.5 * (v_prev + v);
                assert!(incoherent_bound(mid) >= chord - 1e-9, "not concave at {mid}");
            }
            prev = Some((q, v));
        }
    }

    #[test]
    fn six_state_bound_values_and_ordering() {
        assert!(six_state_bound(0.0).unwrap().abs() < 1e-12);
        assert!(six_state_bound(0.5).is_err());

        let six = six_state_bound(0.1).unwrap();
        let incoh = incoherent_bound(0.1);
        assert!(six < incoh);
        assert!(incoh - six < 0.05, "bounds should stay close");

        for k in 1..100 {
            let q = 0.5 * k as f64 / 100.0;
            assert!(six_state_bound(q).unwrap() <= incoherent_bound(q) + 1e-12);
        }

        // six-state IR operating point: a 33% QBER
        let at_third = six_state_bound(1.0 / 3.0).unwrap();
        let g = 0.5 * (1.0 + (1.0f64 / 3.0).sqrt() / (2.0 / 3.0));
        assert!((at_third - (1.0 - (2.0 / 3.0) * binary_entropy(g))).abs() < 1e-12);
    }

    #[test]
    fn shannon_bound_values() {
        assert_eq!(shannon_reconciliation_bound(1000, 0.0), 0.0);
        assert!((shannon_reconciliation_bound(1000, 0.5) - 1000.0).abs() < 1e-9);
        assert!((shannon_reconciliation_bound(1000, 0.05) - 286.39695711595625).abs() < 1e-9);
    }

    #[test]
    fn werner_fidelity_values() {
        assert_eq!(werner_fidelity(3, 3, 2).unwrap(), 1.0);
        assert_eq!(werner_fidelity(1, 2, 2).unwrap(), 5.0 / 6.0);
        assert_eq!(werner_fidelity(1, 2, 3).unwrap(), 0.75);
        assert!(werner_fidelity(3, 2, 2).is_err());
    }

    #[test]
    fn asymmetric_fidelities_values() {
        let (fa, fb) = asymmetric_fidelities(0.0, 1.0, 2).unwrap();
        assert!((fa - 0.5).abs() < 1e-15);
        assert!((fb - 1.0).abs() < 1e-15);

        let a = 1.0 / 3.0f64.sqrt();
        let (fa, fb) = asymmetric_fidelities(a, a, 2).unwrap();
        assert!((fa - 5.0 / 6.0).abs() < 1e-12);
        assert!((fb - 5.0 / 6.0).abs() < 1e-12);

        let (fa, fb) = asymmetric_fidelities(1.0, 0.0, 3).unwrap();
        assert!((fa - 1.0).abs() < 1e-15);
        assert!((fb - 1.0 / 3.0).abs() < 1e-15);

        assert!(asymmetric_fidelities(1.0, 1.0, 2).is_err());
    }
}
