//! Six-phase exact simulation of the entangled-pair protocol under an
//! intercept-resend attack.
//!
//! For one choice of the non-local gate A and one measurement configuration,
//! the pipeline enumerates every branch exactly:
//!
//! 1. A is applied to each of the 16 BB84 pair states.
//! 2. Eve measures the first qubit (or skips it), in the z or x basis.
//! 3. Eve measures the second qubit (or skips both).
//! 4. Bob applies the inverse gate.
//! 5. Bob measures the first qubit in the correct basis.
//! 6. Bob measures the second qubit in the correct basis.
//!
//! Impossible branches are carried as the zero sentinel and contribute zero
//! probability everywhere. Eve's information per sifted bit is half her
//! mutual information on the 16-valued pair variable; the QBER is the
//! average of the per-qubit error rates.

use rayon::prelude::*;
use std::sync::OnceLock;

use crate::bb84::Fraction;
use crate::error::{Error, Result};
use crate::gates::{canonical_gate, pair_state, Basis, CanonicalParams, PairIndex};
use crate::info::{mutual_information, JointTable};
use crate::quantum::{measure_branch, Matrix, Projector, StateVec, Unitary};

const AUDIT_TOL: f64 = 1e-9;

/// Eve's measurement plan for one transmitted pair. Together with the two
/// basis choices this enumerates the seven possible configurations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EveConfig {
    BothQubits(Basis, Basis),
    SecondOnly(Basis),
    NoMeasurement,
}

impl EveConfig {
    /// The six measuring configurations, in the fixed enumeration order used
    /// for tie-breaking: zz, zx, xz, xx, second-only z, second-only x.
    pub const MEASURING: [EveConfig; 6] = [
        EveConfig::BothQubits(Basis::Z, Basis::Z),
        EveConfig::BothQubits(Basis::Z, Basis::X),
        EveConfig::BothQubits(Basis::X, Basis::Z),
        EveConfig::BothQubits(Basis::X, Basis::X),
        EveConfig::SecondOnly(Basis::Z),
        EveConfig::SecondOnly(Basis::X),
    ];

    /// All seven configurations including the idle one.
    pub const ALL: [EveConfig; 7] = [
        EveConfig::BothQubits(Basis::Z, Basis::Z),
        EveConfig::BothQubits(Basis::Z, Basis::X),
        EveConfig::BothQubits(Basis::X, Basis::Z),
        EveConfig::BothQubits(Basis::X, Basis::X),
        EveConfig::SecondOnly(Basis::Z),
        EveConfig::SecondOnly(Basis::X),
        EveConfig::NoMeasurement,
    ];

    pub fn label(self) -> &'static str {
        match self {
            EveConfig::BothQubits(Basis::Z, Basis::Z) => "zz",
            EveConfig::BothQubits(Basis::Z, Basis::X) => "zx",
            EveConfig::BothQubits(Basis::X, Basis::Z) => "xz",
            EveConfig::BothQubits(Basis::X, Basis::X) => "xx",
            EveConfig::SecondOnly(Basis::Z) => "2z",
            EveConfig::SecondOnly(Basis::X) => "2x",
            EveConfig::NoMeasurement => "none",
        }
    }
}

/// The outcome of one gate x configuration evaluation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AttackPoint {
    /// Eve's mutual information per sifted bit.
    pub info_per_bit: f64,
    /// Error rate of the first qubit.
    pub qber1: f64,
    /// Error rate of the second qubit.
    pub qber2: f64,
    /// Average error rate, (qber1 + qber2) / 2 by construction.
    pub qber: f64,
}

/// All four fields scale linearly with the interception fraction.
pub fn scale_point(pt: AttackPoint, xi: Fraction) -> AttackPoint {
    let f = xi.value();
    AttackPoint {
        info_per_bit: pt.info_per_bit * f,
        qber1: pt.qber1 * f,
        qber2: pt.qber2 * f,
        qber: pt.qber * f,
    }
}

/// The exact conditional distribution p(e|a) of Eve's outcome given Alice's
/// pair index, one row per a. Every row sums to one.
#[derive(Clone, Debug)]
pub struct ConditionalTable {
    outcomes: usize,
    probs: Vec<f64>,
}

impl ConditionalTable {
    fn new(rows: Vec<Vec<f64>>) -> Self {
        let outcomes = rows[0].len();
        let mut probs = Vec::with_capacity(16 * outcomes);
        for row in &rows {
            assert_eq!(row.len(), outcomes, "ragged conditional table");
            let sum: f64 = row.iter().sum();
            assert!(
                (sum - 1.0).abs() <= AUDIT_TOL,
                "conditional outcome probabilities sum to {sum}"
            );
            probs.extend_from_slice(row);
        }
        assert_eq!(rows.len(), 16);
        Self { outcomes, probs }
    }

    pub fn outcomes(&self) -> usize {
        self.outcomes
    }

    #[inline]
    pub fn get(&self, a: usize, e: usize) -> f64 {
        self.probs[a * self.outcomes + e]
    }

    /// Eve's information per sifted bit: half the mutual information of the
    /// uniform pair variable against her outcome.
    pub fn info_per_bit(&self) -> f64 {
        let rows: Vec<Vec<f64>> = (0..16)
            .map(|a| (0..self.outcomes).map(|e| self.get(a, e) / 16.0).collect())
            .collect();
        let joint = JointTable::new(rows).expect("conditional rows are normalized");
        let info = 0.5 * mutual_information(&joint);
        assert!(info >= -AUDIT_TOL, "negative mutual information {info}");
        info.max(0.0)
    }
}

/// Internal plan; `FirstOnly` exists to check the qubit-order symmetry in
/// tests and is not part of the public configuration set.
#[derive(Clone, Copy, Debug)]
enum Plan {
    Both(Basis, Basis),
    SecondOnly(Basis),
    #[allow(dead_code)] // constructed by the symmetry tests only
    FirstOnly(Basis),
    None,
}

impl From<EveConfig> for Plan {
    fn from(cfg: EveConfig) -> Plan {
        match cfg {
            EveConfig::BothQubits(b1, b2) => Plan::Both(b1, b2),
            EveConfig::SecondOnly(b) => Plan::SecondOnly(b),
            EveConfig::NoMeasurement => Plan::None,
        }
    }
}

/// Pair projectors P (x) I and I (x) P for both bases and outcomes,
/// constructed once.
struct PairProjectors {
    on_first: [[Projector; 2]; 2],
    on_second: [[Projector; 2]; 2],
}

fn basis_index(b: Basis) -> usize {
    match b {
        Basis::Z => 0,
        Basis::X => 1,
    }
}

fn pair_projectors() -> &'static PairProjectors {
    static CELL: OnceLock<PairProjectors> = OnceLock::new();
    CELL.get_or_init(|| {
        let single = |basis: Basis, outcome: u8| -> Matrix {
            let sym = crate::gates::Bb84Symbol::encode(basis, outcome);
            Projector::onto(&crate::gates::bb84_state(sym))
                .expect("BB84 states are normalized")
                .matrix()
                .clone()
        };
        let id = Matrix::identity(2);
        let build = |basis: Basis, outcome: u8, first: bool| -> Projector {
            let p = single(basis, outcome);
            let m = if first {
                p.kron(&id).expect("2x2 inputs")
            } else {
                id.kron(&p).expect("2x2 inputs")
            };
            Projector::new(m).expect("tensor of projector with identity")
        };
        PairProjectors {
            on_first: [
                [build(Basis::Z, 0, true), build(Basis::Z, 1, true)],
                [build(Basis::X, 0, true), build(Basis::X, 1, true)],
            ],
            on_second: [
                [build(Basis::Z, 0, false), build(Basis::Z, 1, false)],
                [build(Basis::X, 0, false), build(Basis::X, 1, false)],
            ],
        }
    })
}

/// Phases 2 and 3: Eve's outcome probabilities and post-measurement states.
/// Branch order is e1-major, with e2 the least significant bit.
fn eve_branches(plan: Plan, psi: &StateVec) -> Vec<(f64, StateVec)> {
    let projs = pair_projectors();
    let mut branches = Vec::new();
    match plan {
        Plan::Both(b1, b2) => {
            for e1 in 0..2 {
                let (p1, s1) = measure_branch(psi, &projs.on_first[basis_index(b1)][e1]);
                for e2 in 0..2 {
                    let (p2, s2) = measure_branch(&s1, &projs.on_second[basis_index(b2)][e2]);
                    branches.push((p1 * p2, s2));
                }
            }
        }
        Plan::SecondOnly(b) => {
            for e in 0..2 {
                branches.push(measure_branch(psi, &projs.on_second[basis_index(b)][e]));
            }
        }
        Plan::FirstOnly(b) => {
            for e in 0..2 {
                branches.push(measure_branch(psi, &projs.on_first[basis_index(b)][e]));
            }
        }
        Plan::None => branches.push((1.0, psi.clone())),
    }
    let total: f64 = branches.iter().map(|(p, _)| p).sum();
    assert!(
        (total - 1.0).abs() <= AUDIT_TOL,
        "Eve branch probabilities sum to {total}"
    );
    branches
}

fn run_attack_plan(gate: &Unitary, inverse: &Unitary, plan: Plan) -> (AttackPoint, ConditionalTable) {
    let projs = pair_projectors();
    let mut cond_rows: Vec<Vec<f64>> = Vec::with_capacity(16);
    let mut qber1 = 0.0;
    let mut qber2 = 0.0;

    for a in PairIndex::all() {
        // Phase 1: the non-local transformation.
        let psi = gate.apply(&pair_state(a)).expect("dimensions match");

        // Phases 2-3: Eve.
        let branches = eve_branches(plan, &psi);
        cond_rows.push(branches.iter().map(|(p, _)| *p).collect());

        let first = &projs.on_first[basis_index(a.first_basis())];
        let second = &projs.on_second[basis_index(a.second_basis())];
        let wrong_first = (1 - a.first_bit()) as usize;
        let wrong_second = (1 - a.second_bit()) as usize;

        for (p_e, state) in &branches {
            if *p_e == 0.0 {
                continue; // impossible branch, contributes nothing
            }
            // Phase 4: Bob inverts the gate.
            let bob_state = inverse.apply(state).expect("dimensions match");

            // Phases 5-6: Bob's projective measurements in the correct bases.
            let mut b1_total = 0.0;
            for b1 in 0..2 {
                let (p_b1, post) = measure_branch(&bob_state, &first[b1]);
                b1_total += p_b1;
                if b1 == wrong_first {
                    qber1 += p_e * p_b1 / 16.0;
                }
                if p_b1 == 0.0 {
                    continue;
                }
                let (p_err, _) = measure_branch(&post, &second[wrong_second]);
                let (p_ok, _) = measure_branch(&post, &second[1 - wrong_second]);
                assert!(
                    (p_err + p_ok - 1.0).abs() <= AUDIT_TOL,
                    "Bob second-measurement probabilities sum to {}",
                    p_err + p_ok
                );
                qber2 += p_e * p_b1 * p_err / 16.0;
            }
            assert!(
                (b1_total - 1.0).abs() <= AUDIT_TOL,
                "Bob first-measurement probabilities sum to {b1_total}"
            );
        }
    }

    let table = ConditionalTable::new(cond_rows);
    let point = AttackPoint {
        info_per_bit: table.info_per_bit(),
        qber1,
        qber2,
        qber: (qber1 + qber2) / 2.0,
    };
    (point, table)
}

/// Evaluates one gate under one of Eve's configurations, exactly.
pub fn run_attack(p: &CanonicalParams, cfg: EveConfig) -> AttackPoint {
    run_attack_detailed(p, cfg).0
}

/// Like [`run_attack`], also returning the conditional outcome table.
pub fn run_attack_detailed(p: &CanonicalParams, cfg: EveConfig) -> (AttackPoint, ConditionalTable) {
    let gate = Unitary::new(canonical_gate(p)).expect("canonical gate is unitary");
    let inverse = gate.adjoint();
    run_attack_plan(&gate, &inverse, cfg.into())
}

/// Evaluation of all six measuring configurations at one gate.
#[derive(Clone, Debug)]
pub struct GateEvaluation {
    pub params: CanonicalParams,
    pub points: [AttackPoint; 6],
}

impl GateEvaluation {
    pub fn config_points(&self) -> impl Iterator<Item = (EveConfig, AttackPoint)> + '_ {
        EveConfig::MEASURING.into_iter().zip(self.points)
    }

    /// The configuration with the largest information-per-error slope, the
    /// one Eve picks before dialling the interception fraction down.
    /// Configurations that gain nothing and disturb nothing do not compete.
    ///
    /// Slopes are compared with a small tolerance. At equal slope the
    /// configuration whose full-interception point reaches further wins:
    /// its fraction-parametrized line covers the shorter one entirely, so
    /// it yields at least as much information at every error budget. Exact
    /// ties fall back to enumeration order.
    pub fn best_config(&self) -> (EveConfig, AttackPoint) {
        const SLOPE_TIE_TOL: f64 = 1e-9;
        let mut best: Option<(f64, EveConfig, AttackPoint)> = None;
        for (cfg, pt) in self.config_points() {
            let slope = if pt.qber > 0.0 {
                pt.info_per_bit / pt.qber
            } else if pt.info_per_bit > 0.0 {
                f64::INFINITY
            } else {
                continue;
            };
            let better = match &best {
                None => true,
                Some((s, _, p)) => {
                    if slope > s + SLOPE_TIE_TOL {
                        true
                    } else if slope >= s - SLOPE_TIE_TOL {
                        pt.qber > p.qber + SLOPE_TIE_TOL
                    } else {
                        false
                    }
                }
            };
            if better {
                best = Some((slope, cfg, pt));
            }
        }
        let (_, cfg, pt) = best.expect("every gate admits a competing configuration");
        (cfg, pt)
    }

    /// Largest information over the six configurations.
    pub fn max_info(&self) -> f64 {
        self.points
            .iter()
            .map(|p| p.info_per_bit)
            .fold(f64::NEG_INFINITY, f64::max)
    }
}

/// Evaluates all six measuring configurations at one gate, sharing the gate
/// construction.
pub fn evaluate_gate(p: &CanonicalParams) -> GateEvaluation {
    let gate = Unitary::new(canonical_gate(p)).expect("canonical gate is unitary");
    let inverse = gate.adjoint();
    let points: Vec<AttackPoint> = EveConfig::MEASURING
        .into_iter()
        .map(|cfg| run_attack_plan(&gate, &inverse, cfg.into()).0)
        .collect();
    GateEvaluation {
        params: *p,
        points: points.try_into().expect("six configurations"),
    }
}

/// The best configuration and its attack point at one gate.
pub fn best_config(p: &CanonicalParams) -> (EveConfig, AttackPoint) {
    evaluate_gate(p).best_config()
}

/// A uniform lattice over [0, pi]^3 with `steps` points per axis, endpoints
/// inclusive. The default 33 steps give a pi/32 spacing.
#[derive(Clone, Copy, Debug)]
pub struct SweepGrid {
    steps: usize,
}

impl Default for SweepGrid {
    fn default() -> Self {
        Self { steps: 33 }
    }
}

impl SweepGrid {
    pub fn new(steps: usize) -> Result<Self> {
        if steps < 2 {
            return Err(Error::InvalidArgument(format!(
                "grid needs at least 2 steps per axis, got {steps}"
            )));
        }
        Ok(Self { steps })
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn len(&self) -> usize {
        self.steps * self.steps * self.steps
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    fn axis_value(&self, index: usize) -> f64 {
        std::f64::consts::PI * index as f64 / (self.steps - 1) as f64
    }

    /// Lattice points in deterministic c1-major, then c2, then c3 order.
    pub fn lattice(&self) -> impl Iterator<Item = CanonicalParams> + '_ {
        let steps = self.steps;
        (0..steps * steps * steps).map(move |flat| {
            let k3 = flat % steps;
            let k2 = (flat / steps) % steps;
            let k1 = flat / (steps * steps);
            CanonicalParams::new(
                self.axis_value(k1),
                self.axis_value(k2),
                self.axis_value(k3),
            )
            .expect("lattice points lie in [0, pi]")
        })
    }
}

/// Evaluates every lattice point under all six configurations. Points are
/// distributed over the rayon pool and gathered back in lattice order.
pub fn sweep(grid: &SweepGrid) -> Vec<GateEvaluation> {
    let params: Vec<CanonicalParams> = grid.lattice().collect();
    params.par_iter().map(evaluate_gate).collect()
}

/// One sample of a one-parameter family of gates.
#[derive(Clone, Debug)]
pub struct CurvePoint {
    pub params: CanonicalParams,
    pub config: EveConfig,
    pub point: AttackPoint,
}

/// Best-configuration points along c2 in [0, pi/2] with c1 = c3 = 0: the
/// lower envelope of the attack cloud, from the plain-BB84 corner to the
/// extremal gate.
pub fn envelope_c2(samples: usize) -> Vec<CurvePoint> {
    assert!(samples >= 2, "need at least two samples");
    (0..samples)
        .into_par_iter()
        .map(|k| {
            let c2 = std::f64::consts::FRAC_PI_2 * k as f64 / (samples - 1) as f64;
            let params = CanonicalParams::new(0.0, c2, 0.0).expect("in range");
            let (config, point) = best_config(&params);
            CurvePoint {
                params,
                config,
                point,
            }
        })
        .collect()
}

/// Best-configuration points along c3 in [0, pi/2] at c1 = 0 and a fixed c2.
pub fn arc_c3(c2: f64, samples: usize) -> Vec<CurvePoint> {
    assert!(samples >= 2, "need at least two samples");
    (0..samples)
        .into_par_iter()
        .map(|k| {
            let c3 = std::f64::consts::FRAC_PI_2 * k as f64 / (samples - 1) as f64;
            let params = CanonicalParams::new(0.0, c2, c3).expect("in range");
            let (config, point) = best_config(&params);
            CurvePoint {
                params,
                config,
                point,
            }
        })
        .collect()
}

/// Directed Hausdorff distance from the full best-config point cloud to its
/// c1 = 0 slice, in the (QBER, info) plane. Small values mean adjusting c1
/// adds nothing that c2 and c3 cannot reach.
pub fn c1_redundancy_hausdorff(evaluations: &[GateEvaluation]) -> f64 {
    let slice: Vec<(f64, f64)> = evaluations
        .iter()
        .filter(|e| e.params.c1() == 0.0)
        .map(|e| {
            let (_, pt) = e.best_config();
            (pt.qber, pt.info_per_bit)
        })
        .collect();
    assert!(!slice.is_empty(), "sweep contains no c1 = 0 slice");
    evaluations
        .par_iter()
        .map(|e| {
            let (_, pt) = e.best_config();
            let (q, i) = (pt.qber, pt.info_per_bit);
            slice
                .iter()
                .map(|(sq, si)| ((q - sq).powi(2) + (i - si).powi(2)).sqrt())
                .fold(f64::INFINITY, f64::min)
        })
        .reduce(|| 0.0, f64::max)
}
