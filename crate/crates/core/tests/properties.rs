//! Property tests over randomly drawn states, gates, and distributions.

use proptest::prelude::*;

use qkd_core::gates::{canonical_gate, su2_gate, CanonicalParams, SU2Params};
use qkd_core::info::{binary_entropy, entropy, mutual_information, Distribution, JointTable};
use qkd_core::quantum::{c, StateVec, Unitary};

const PI: f64 = std::f64::consts::PI;

fn normalized_state(dim: usize) -> impl Strategy<Value = StateVec> {
    proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), dim).prop_filter_map(
        "norm too small",
        |parts| {
            let norm: f64 = parts
                .iter()
                .map(|(re, im)| re * re + im * im)
                .sum::<f64>()
                .sqrt();
            if norm < 1e-3 {
                return None;
            }
            let amps = parts
                .into_iter()
                .map(|(re, im)| c(re / norm, im / norm))
                .collect();
            Some(StateVec::new(amps).unwrap())
        },
    )
}

fn joint_table(rows: usize, cols: usize) -> impl Strategy<Value = JointTable> {
    proptest::collection::vec(0.01f64..1.0, rows * cols).prop_map(move |weights| {
        let total: f64 = weights.iter().sum();
        let table: Vec<Vec<f64>> = weights
            .chunks(cols)
            .map(|row| row.iter().map(|w| w / total).collect())
            .collect();
        JointTable::new(table).unwrap()
    })
}

proptest! {
    #[test]
    fn unitaries_preserve_norm(
        s in normalized_state(4),
        a1 in -PI..PI, a2 in -PI..PI, a3 in -PI..PI,
        b1 in -PI..PI, b2 in -PI..PI, b3 in -PI..PI,
        c1 in 0.0..PI, c2 in 0.0..PI, c3 in 0.0..PI,
    ) {
        let local = su2_gate(&SU2Params::new(a1, a2, a3))
            .kron(&su2_gate(&SU2Params::new(b1, b2, b3)))
            .unwrap();
        let gate = local.mul(&canonical_gate(&CanonicalParams::new(c1, c2, c3).unwrap()));
        let u = Unitary::new(gate).unwrap();
        let out = u.apply(&s).unwrap();
        prop_assert!((out.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn mutual_information_is_symmetric_and_nonnegative(j in joint_table(3, 4)) {
        let forward = mutual_information(&j);
        let backward = mutual_information(&j.transpose());
        prop_assert!((forward - backward).abs() < 1e-12);
        prop_assert!(forward > -1e-9);
    }

    #[test]
    fn entropy_bounded_by_log_of_support(weights in proptest::collection::vec(0.01f64..1.0, 2..10)) {
        let total: f64 = weights.iter().sum();
        let d = Distribution::new(weights.iter().map(|w| w / total).collect()).unwrap();
        let h = entropy(&d);
        prop_assert!(h >= -1e-12);
        prop_assert!(h <= (weights.len() as f64).log2() + 1e-12);
    }

    #[test]
    fn binary_entropy_symmetric_and_bounded(p in 0.0f64..=1.0) {
        let h = binary_entropy(p);
        prop_assert!((h - binary_entropy(1.0 - p)).abs() < 1e-12);
        prop_assert!((-1e-12..=1.0 + 1e-12).contains(&h));
    }

    #[test]
    fn concurrence_between_zero_and_one(s in normalized_state(4)) {
        let concurrence = qkd_core::quantum::concurrence_pure(&s);
        prop_assert!((0.0..=1.0).contains(&concurrence));
    }
}
