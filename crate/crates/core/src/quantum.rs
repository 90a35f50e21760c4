//! Exact complex linear algebra for one- and two-qubit states.
//!
//! Everything here is double precision and dimension 2 or 4. States are
//! normalized vectors, with one deliberate exception: the all-zero vector is
//! a valid `StateVec` and stands for an impossible measurement branch. All
//! probabilities computed from that sentinel are zero, which keeps the
//! measurement pipelines total without special-casing downstream.

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;

/// Absolute tolerance for normalization, unitarity and hermiticity checks.
pub const NORM_TOL: f64 = 1e-9;
/// Probabilities at or below this threshold collapse to the zero sentinel.
pub const ZERO_BRANCH_TOL: f64 = 1e-12;

#[inline]
pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

#[inline]
pub fn cr(re: f64) -> C64 {
    C64::new(re, 0.0)
}

// ---------------------------------------------------------------------------
// StateVec
// ---------------------------------------------------------------------------

/// A pure state of one or two qubits, or the zero sentinel.
///
/// Basis ordering for pairs is |00>, |01>, |10>, |11> with the first-sent
/// qubit most significant.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVec {
    amps: Vec<C64>,
}

impl StateVec {
    /// Builds a state from raw amplitudes. The vector must have length 2 or 4
    /// and be either normalized within `NORM_TOL` or exactly zero.
    pub fn new(amps: Vec<C64>) -> Result<Self> {
        let dim = amps.len();
        if dim != 2 && dim != 4 {
            return Err(Error::UnsupportedDimension(dim));
        }
        if !amps.iter().all(|a| a.re.is_finite() && a.im.is_finite()) {
            return Err(Error::InvalidArgument("non-finite amplitude".into()));
        }
        let n2: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        if n2 == 0.0 {
            return Ok(Self { amps });
        }
        let deviation = (n2.sqrt() - 1.0).abs();
        if deviation > NORM_TOL {
            return Err(Error::NotNormalized { deviation });
        }
        Ok(Self { amps })
    }

    /// The impossible-branch sentinel: the exact zero vector.
    pub fn zero_sentinel(dim: usize) -> Self {
        assert!(dim == 2 || dim == 4, "unsupported dimension {dim}");
        Self {
            amps: vec![C64::new(0.0, 0.0); dim],
        }
    }

    /// Computational basis state |index> of the given dimension.
    pub fn basis_state(dim: usize, index: usize) -> Self {
        assert!(dim == 2 || dim == 4, "unsupported dimension {dim}");
        assert!(index < dim, "basis index {index} out of range");
        let mut amps = vec![C64::new(0.0, 0.0); dim];
        amps[index] = cr(1.0);
        Self { amps }
    }

    pub(crate) fn from_raw(amps: Vec<C64>) -> Self {
        debug_assert!(amps.len() == 2 || amps.len() == 4);
        Self { amps }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    #[inline]
    pub fn amps(&self) -> &[C64] {
        &self.amps
    }

    /// True iff every amplitude is exactly zero.
    pub fn is_zero_sentinel(&self) -> bool {
        self.amps.iter().all(|a| a.re == 0.0 && a.im == 0.0)
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Inner product <self|other>.
    pub fn inner(&self, other: &StateVec) -> C64 {
        assert_eq!(self.dim(), other.dim(), "inner product dimension mismatch");
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// Kronecker product of two single-qubit states.
    pub fn kron(&self, other: &StateVec) -> Result<StateVec> {
        if self.dim() != 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                actual: self.dim(),
            });
        }
        if other.dim() != 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                actual: other.dim(),
            });
        }
        let mut amps = Vec::with_capacity(4);
        for a in &self.amps {
            for b in &other.amps {
                amps.push(a * b);
            }
        }
        Ok(StateVec::from_raw(amps))
    }
}

// ---------------------------------------------------------------------------
// Matrix
// ---------------------------------------------------------------------------

/// A dense square complex matrix of dimension 2 or 4, row major.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix {
    dim: usize,
    elems: Vec<C64>,
}

impl Matrix {
    pub fn from_rows(rows: &[Vec<C64>]) -> Result<Self> {
        let dim = rows.len();
        if dim != 2 && dim != 4 {
            return Err(Error::UnsupportedDimension(dim));
        }
        let mut elems = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    actual: row.len(),
                });
            }
            elems.extend_from_slice(row);
        }
        Ok(Self { dim, elems })
    }

    pub fn zeros(dim: usize) -> Self {
        assert!(dim == 2 || dim == 4, "unsupported dimension {dim}");
        Self {
            dim,
            elems: vec![C64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.set(i, i, cr(1.0));
        }
        m
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> C64 {
        self.elems[row * self.dim + col]
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, value: C64) {
        self.elems[row * self.dim + col] = value;
    }

    pub fn adjoint(&self) -> Matrix {
        let mut out = Matrix::zeros(self.dim);
        for r in 0..self.dim {
            for c in 0..self.dim {
                out.set(c, r, self.get(r, c).conj());
            }
        }
        out
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.dim, other.dim, "matrix product dimension mismatch");
        let mut out = Matrix::zeros(self.dim);
        for r in 0..self.dim {
            for k in 0..self.dim {
                let a = self.get(r, k);
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                for c in 0..self.dim {
                    let v = out.get(r, c) + a * other.get(k, c);
                    out.set(r, c, v);
                }
            }
        }
        out
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.dim, other.dim, "matrix difference dimension mismatch");
        let mut out = self.clone();
        for (a, b) in out.elems.iter_mut().zip(&other.elems) {
            *a -= b;
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.dim, other.dim, "matrix sum dimension mismatch");
        let mut out = self.clone();
        for (a, b) in out.elems.iter_mut().zip(&other.elems) {
            *a += b;
        }
        out
    }

    pub fn scale(&self, factor: C64) -> Matrix {
        let mut out = self.clone();
        for a in out.elems.iter_mut() {
            *a *= factor;
        }
        out
    }

    /// Matrix-vector product. The zero sentinel maps to itself.
    pub fn apply_raw(&self, s: &StateVec) -> Result<StateVec> {
        if self.dim != s.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                actual: s.dim(),
            });
        }
        let mut amps = vec![C64::new(0.0, 0.0); self.dim];
        for r in 0..self.dim {
            let mut acc = C64::new(0.0, 0.0);
            for k in 0..self.dim {
                acc += self.get(r, k) * s.amps[k];
            }
            amps[r] = acc;
        }
        Ok(StateVec::from_raw(amps))
    }

    /// Kronecker product, |00>,|01>,|10>,|11> ordering.
    pub fn kron(&self, other: &Matrix) -> Result<Matrix> {
        if self.dim != 2 || other.dim != 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                actual: self.dim.max(other.dim),
            });
        }
        let mut out = Matrix::zeros(4);
        for r1 in 0..2 {
            for c1 in 0..2 {
                let a = self.get(r1, c1);
                for r2 in 0..2 {
                    for c2 in 0..2 {
                        out.set(2 * r1 + r2, 2 * c1 + c2, a * other.get(r2, c2));
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    /// Determinant by Gaussian elimination with partial pivoting.
    pub fn det(&self) -> C64 {
        let mut m = self.elems.clone();
        let n = self.dim;
        let mut det = cr(1.0);
        for col in 0..n {
            let pivot = (col..n)
                .max_by(|&a, &b| {
                    m[a * n + col]
                        .norm_sqr()
                        .total_cmp(&m[b * n + col].norm_sqr())
                })
                .unwrap();
            if m[pivot * n + col].norm_sqr() == 0.0 {
                return C64::new(0.0, 0.0);
            }
            if pivot != col {
                for k in 0..n {
                    m.swap(col * n + k, pivot * n + k);
                }
                det = -det;
            }
            let p = m[col * n + col];
            det *= p;
            for row in col + 1..n {
                let factor = m[row * n + col] / p;
                for k in col..n {
                    let v = m[col * n + k];
                    m[row * n + k] -= factor * v;
                }
            }
        }
        det
    }

    pub fn max_abs_diff(&self, other: &Matrix) -> f64 {
        assert_eq!(self.dim, other.dim, "matrix comparison dimension mismatch");
        self.elems
            .iter()
            .zip(&other.elems)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Max-norm deviation of U†U from the identity.
    pub fn unitarity_deviation(&self) -> f64 {
        self.adjoint()
            .mul(self)
            .max_abs_diff(&Matrix::identity(self.dim))
    }

    pub fn hermiticity_deviation(&self) -> f64 {
        self.max_abs_diff(&self.adjoint())
    }

    /// <s|M|s>, computed directly; no validity assumptions about M.
    pub fn expectation(&self, s: &StateVec) -> C64 {
        assert_eq!(self.dim, s.dim(), "expectation dimension mismatch");
        let mut acc = C64::new(0.0, 0.0);
        for r in 0..self.dim {
            let mut row = C64::new(0.0, 0.0);
            for k in 0..self.dim {
                row += self.get(r, k) * s.amps[k];
            }
            acc += s.amps[r].conj() * row;
        }
        acc
    }

    /// Eigenvalues of a hermitian matrix, ascending.
    ///
    /// Uses the real symmetric embedding [[Re, -Im], [Im, Re]] and cyclic
    /// Jacobi rotations; each eigenvalue of the complex matrix appears twice
    /// in the embedding, so pairs are collapsed before returning.
    pub fn hermitian_eigenvalues(&self) -> Result<Vec<f64>> {
        let dev = self.hermiticity_deviation();
        if dev > NORM_TOL {
            return Err(Error::NotHermitian { deviation: dev });
        }
        let n = self.dim;
        let m = 2 * n;
        let mut a = vec![0.0f64; m * m];
        for r in 0..n {
            for col in 0..n {
                let v = self.get(r, col);
                a[r * m + col] = v.re;
                a[r * m + (col + n)] = -v.im;
                a[(r + n) * m + col] = v.im;
                a[(r + n) * m + (col + n)] = v.re;
            }
        }
        // Cyclic Jacobi on the symmetric embedding.
        for _sweep in 0..64 {
            let mut off = 0.0f64;
            for p in 0..m {
                for q in p + 1..m {
                    off = off.max(a[p * m + q].abs());
                }
            }
            if off < 1e-13 {
                break;
            }
            for p in 0..m {
                for q in p + 1..m {
                    let apq = a[p * m + q];
                    if apq.abs() < 1e-15 {
                        continue;
                    }
                    let app = a[p * m + p];
                    let aqq = a[q * m + q];
                    let theta = 0.5 * (2.0 * apq).atan2(aqq - app);
                    let (s, c) = theta.sin_cos();
                    for k in 0..m {
                        let akp = a[k * m + p];
                        let akq = a[k * m + q];
                        a[k * m + p] = c * akp - s * akq;
                        a[k * m + q] = s * akp + c * akq;
                    }
                    for k in 0..m {
                        let apk = a[p * m + k];
                        let aqk = a[q * m + k];
                        a[p * m + k] = c * apk - s * aqk;
                        a[q * m + k] = s * apk + c * aqk;
                    }
                }
            }
        }
        let mut eigs: Vec<f64> = (0..m).map(|i| a[i * m + i]).collect();
        eigs.sort_by(f64::total_cmp);
        // Doubled spectrum: keep every second entry.
        Ok(eigs.into_iter().step_by(2).collect())
    }
}

// ---------------------------------------------------------------------------
// Validated wrappers
// ---------------------------------------------------------------------------

/// A matrix checked to be unitary within `NORM_TOL` at construction.
#[derive(Clone, Debug)]
pub struct Unitary {
    mat: Matrix,
}

impl Unitary {
    pub fn new(mat: Matrix) -> Result<Self> {
        let deviation = mat.unitarity_deviation();
        if deviation > NORM_TOL {
            return Err(Error::NotUnitary { deviation });
        }
        Ok(Self { mat })
    }

    pub fn matrix(&self) -> &Matrix {
        &self.mat
    }

    pub fn adjoint(&self) -> Unitary {
        Unitary {
            mat: self.mat.adjoint(),
        }
    }

    /// Applies the gate. Preserves the norm; the sentinel stays the sentinel.
    pub fn apply(&self, s: &StateVec) -> Result<StateVec> {
        self.mat.apply_raw(s)
    }
}

/// An orthogonal projector: P = P† and P² = P within `NORM_TOL`.
#[derive(Clone, Debug)]
pub struct Projector {
    mat: Matrix,
}

impl Projector {
    pub fn new(mat: Matrix) -> Result<Self> {
        let herm = mat.hermiticity_deviation();
        if herm > NORM_TOL {
            return Err(Error::NotProjector {
                reason: format!("not hermitian, deviation {herm:.3e}"),
            });
        }
        let idem = mat.mul(&mat).max_abs_diff(&mat);
        if idem > NORM_TOL {
            return Err(Error::NotProjector {
                reason: format!("not idempotent, |P\u{00b2} - P| = {idem:.3e}"),
            });
        }
        Ok(Self { mat })
    }

    /// Projector |v><v| onto a normalized vector.
    pub fn onto(v: &StateVec) -> Result<Self> {
        if v.is_zero_sentinel() {
            return Err(Error::InvalidArgument(
                "cannot project onto the zero sentinel".into(),
            ));
        }
        let dim = v.dim();
        let mut mat = Matrix::zeros(dim);
        for r in 0..dim {
            for c in 0..dim {
                mat.set(r, c, v.amps()[r] * v.amps()[c].conj());
            }
        }
        Self::new(mat)
    }

    pub fn matrix(&self) -> &Matrix {
        &self.mat
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.mat.dim()
    }
}

/// Measurement outcome probability p = <s|P|s>.
///
/// Computed as the squared norm of P|s>, which is the same number for an
/// orthogonal projector but cannot go negative in floating point. Returns 0
/// for the zero sentinel.
pub fn measure_prob(s: &StateVec, proj: &Projector) -> f64 {
    measure_branch(s, proj).0
}

/// Post-measurement state P|s>/sqrt(p); the zero sentinel when p is zero
/// within `ZERO_BRANCH_TOL`.
pub fn post_measure(s: &StateVec, proj: &Projector) -> StateVec {
    measure_branch(s, proj).1
}

/// Probability and post-measurement state in a single pass.
pub fn measure_branch(s: &StateVec, proj: &Projector) -> (f64, StateVec) {
    assert_eq!(s.dim(), proj.dim(), "measurement dimension mismatch");
    let projected = proj.mat.apply_raw(s).expect("dimensions already checked");
    let p: f64 = projected.amps().iter().map(|a| a.norm_sqr()).sum();
    // a state normalized within NORM_TOL can overshoot 1 by ~2*NORM_TOL
    assert!(p <= 1.0 + 3.0 * NORM_TOL, "projector probability {p} above 1");
    if p <= ZERO_BRANCH_TOL {
        return (0.0, StateVec::zero_sentinel(s.dim()));
    }
    let inv = 1.0 / p.sqrt();
    let amps = projected.amps().iter().map(|a| a * inv).collect();
    (p.min(1.0), StateVec::from_raw(amps))
}

/// A positive operator-valued measure: positive elements summing to identity.
#[derive(Clone, Debug)]
pub struct Povm {
    elements: Vec<Matrix>,
}

impl Povm {
    pub fn new(elements: Vec<Matrix>) -> Result<Self> {
        if elements.is_empty() {
            return Err(Error::InvalidArgument("empty POVM".into()));
        }
        let dim = elements[0].dim();
        let mut sum = Matrix::zeros(dim);
        for el in &elements {
            if el.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    actual: el.dim(),
                });
            }
            let eigs = el.hermitian_eigenvalues()?;
            let min = eigs[0];
            if min < -NORM_TOL {
                return Err(Error::NotPositive {
                    min_eigenvalue: min,
                });
            }
            sum = sum.add(el);
        }
        let deviation = sum.max_abs_diff(&Matrix::identity(dim));
        if deviation > NORM_TOL {
            return Err(Error::IncompletePovm { deviation });
        }
        Ok(Self { elements })
    }

    pub fn elements(&self) -> &[Matrix] {
        &self.elements
    }
}

/// Outcome probabilities <s|E_m|s> for every POVM element.
///
/// The probabilities sum to 1 for a normalized state and are all zero for
/// the sentinel.
pub fn povm_probs(s: &StateVec, povm: &Povm) -> Vec<f64> {
    if s.is_zero_sentinel() {
        return vec![0.0; povm.elements.len()];
    }
    let probs: Vec<f64> = povm
        .elements
        .iter()
        .map(|el| el.expectation(s).re.clamp(0.0, 1.0))
        .collect();
    let total: f64 = probs.iter().sum();
    assert!(
        (total - 1.0).abs() <= 3.0 * NORM_TOL,
        "POVM probabilities sum to {total}"
    );
    probs
}

/// A single-qubit density operator: hermitian, unit trace, positive.
#[derive(Clone, Debug)]
pub struct DensityLike {
    mat: Matrix,
}

impl DensityLike {
    pub fn new(mat: Matrix) -> Result<Self> {
        if mat.dim() != 2 {
            return Err(Error::UnsupportedDimension(mat.dim()));
        }
        let herm = mat.hermiticity_deviation();
        if herm > NORM_TOL {
            return Err(Error::NotHermitian { deviation: herm });
        }
        let trace = mat.trace();
        if (trace.re - 1.0).abs() > NORM_TOL || trace.im.abs() > NORM_TOL {
            return Err(Error::BadTrace { trace: trace.re });
        }
        // 2x2 hermitian eigenvalues in closed form.
        let a = mat.get(0, 0).re;
        let d = mat.get(1, 1).re;
        let b2 = mat.get(0, 1).norm_sqr();
        let disc = ((a - d) * (a - d) + 4.0 * b2).sqrt();
        let min_eigenvalue = 0.5 * (a + d - disc);
        if min_eigenvalue < -NORM_TOL {
            return Err(Error::NotPositive { min_eigenvalue });
        }
        Ok(Self { mat })
    }

    pub fn matrix(&self) -> &Matrix {
        &self.mat
    }

    /// Density operator |v><v| of a normalized single-qubit state.
    pub fn pure(v: &StateVec) -> Result<Self> {
        if v.dim() != 2 {
            return Err(Error::UnsupportedDimension(v.dim()));
        }
        let proj = Projector::onto(v)?;
        Self::new(proj.mat)
    }
}

/// Which qubit of a pair survives the partial trace.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Subsystem {
    First,
    Second,
}

/// Reduced density operator of one qubit of a normalized two-qubit state.
pub fn partial_trace(s: &StateVec, keep: Subsystem) -> Result<DensityLike> {
    if s.dim() != 4 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            actual: s.dim(),
        });
    }
    if s.is_zero_sentinel() {
        return Err(Error::InvalidArgument(
            "cannot trace the zero sentinel".into(),
        ));
    }
    let a = s.amps();
    let mut mat = Matrix::zeros(2);
    for i in 0..2 {
        for j in 0..2 {
            let mut acc = C64::new(0.0, 0.0);
            for k in 0..2 {
                let (row, col) = match keep {
                    Subsystem::First => (2 * i + k, 2 * j + k),
                    Subsystem::Second => (2 * k + i, 2 * k + j),
                };
                acc += a[row] * a[col].conj();
            }
            mat.set(i, j, acc);
        }
    }
    DensityLike::new(mat)
}

/// Fidelity <psi|rho|psi> of a density operator against a pure state.
pub fn fidelity(rho: &DensityLike, psi: &StateVec) -> f64 {
    assert_eq!(psi.dim(), 2, "fidelity expects a single-qubit state");
    rho.mat.expectation(psi).re.clamp(0.0, 1.0)
}

/// Squared overlap |<a|b>|^2 of two pure states; insensitive to global phase.
pub fn fidelity_overlap_sq(a: &StateVec, b: &StateVec) -> f64 {
    a.inner(b).norm_sqr().clamp(0.0, 1.0)
}

/// Pure-state concurrence |<psi| sigma_y^(x)n |psi*>|.
///
/// Zero for product states and one for maximally entangled pairs.
pub fn concurrence_pure(s: &StateVec) -> f64 {
    let sigma = match s.dim() {
        2 => pauli_y(),
        4 => pauli_y().kron(&pauli_y()).expect("2x2 inputs"),
        other => panic!("unsupported dimension {other}"),
    };
    let conj = StateVec::from_raw(s.amps().iter().map(|a| a.conj()).collect());
    let flipped = sigma.apply_raw(&conj).expect("dimensions match");
    let value = s.inner(&flipped).norm();
    value.clamp(0.0, 1.0)
}

/// Two-qubit output of the phase-covariant cloner and the resulting clone
/// fidelities (F_A, F_B) against the equatorial input state.
///
/// The map fixes |00> and sends |10> to cos(eta)|10> + sin(eta)|01>; the
/// fidelities come out of `partial_trace` + `fidelity` and are independent
/// of `phi`.
pub fn phase_covariant_clone(eta: f64, phi: f64) -> (f64, f64) {
    assert!(
        (0.0..=std::f64::consts::FRAC_PI_2 + 1e-12).contains(&eta),
        "eta {eta} outside [0, pi/2]"
    );
    let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
    let phase = C64::from_polar(1.0, phi);
    let source = StateVec::from_raw(vec![cr(inv_sqrt2), phase * inv_sqrt2]);
    // (|00> + e^{i phi}(cos(eta)|10> + sin(eta)|01>)) / sqrt(2)
    let out = StateVec::from_raw(vec![
        cr(inv_sqrt2),
        phase * (inv_sqrt2 * eta.sin()),
        phase * (inv_sqrt2 * eta.cos()),
        C64::new(0.0, 0.0),
    ]);
    let rho_a = partial_trace(&out, Subsystem::First).expect("normalized output");
    let rho_b = partial_trace(&out, Subsystem::Second).expect("normalized output");
    (fidelity(&rho_a, &source), fidelity(&rho_b, &source))
}

// ---------------------------------------------------------------------------
// Standard gates and the discrimination POVM
// ---------------------------------------------------------------------------

pub fn pauli_x() -> Matrix {
    Matrix::from_rows(&[vec![cr(0.0), cr(1.0)], vec![cr(1.0), cr(0.0)]]).unwrap()
}

pub fn pauli_y() -> Matrix {
    Matrix::from_rows(&[vec![cr(0.0), c(0.0, -1.0)], vec![c(0.0, 1.0), cr(0.0)]]).unwrap()
}

pub fn pauli_z() -> Matrix {
    Matrix::from_rows(&[vec![cr(1.0), cr(0.0)], vec![cr(0.0), cr(-1.0)]]).unwrap()
}

pub fn hadamard() -> Matrix {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    Matrix::from_rows(&[vec![cr(h), cr(h)], vec![cr(h), cr(-h)]]).unwrap()
}

pub fn cnot() -> Matrix {
    let mut m = Matrix::identity(4);
    m.set(2, 2, cr(0.0));
    m.set(3, 3, cr(0.0));
    m.set(2, 3, cr(1.0));
    m.set(3, 2, cr(1.0));
    m
}

pub fn swap() -> Matrix {
    let mut m = Matrix::identity(4);
    m.set(1, 1, cr(0.0));
    m.set(2, 2, cr(0.0));
    m.set(1, 2, cr(1.0));
    m.set(2, 1, cr(1.0));
    m
}

/// The three-element POVM that discriminates |0> from |+> without
/// misidentification: outcome 1 rules out |0>, outcome 2 rules out |+>,
/// outcome 3 is inconclusive.
pub fn discrimination_povm() -> Povm {
    let sqrt2 = std::f64::consts::SQRT_2;
    let w1 = sqrt2 / (1.0 + sqrt2);
    let w2 = sqrt2 / (2.0 * (1.0 + sqrt2));
    let e1 = Matrix::from_rows(&[vec![cr(0.0), cr(0.0)], vec![cr(0.0), cr(w1)]]).unwrap();
    let e2 = Matrix::from_rows(&[vec![cr(w2), cr(-w2)], vec![cr(-w2), cr(w2)]]).unwrap();
    let e3 = Matrix::identity(2).sub(&e1).sub(&e2);
    Povm::new(vec![e1, e2, e3]).expect("discrimination POVM is valid")
}
