//! The BB84 state alphabet, the 16 pair states, and the parametrized gates:
//! the general SU(2) single-qubit gate and the non-local canonical gate
//! A(c1,c2,c3) at the heart of the pair protocol.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::quantum::{c, cr, Matrix, StateVec};

/// Measurement / transmission basis: the sigma_z or sigma_x eigenbasis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Basis {
    Z,
    X,
}

impl Basis {
    pub fn label(self) -> &'static str {
        match self {
            Basis::Z => "z",
            Basis::X => "x",
        }
    }
}

/// One of the four BB84 transmission states.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Bb84Symbol {
    Zero,
    One,
    Plus,
    Minus,
}

impl Bb84Symbol {
    pub const ALL: [Bb84Symbol; 4] = [
        Bb84Symbol::Zero,
        Bb84Symbol::One,
        Bb84Symbol::Plus,
        Bb84Symbol::Minus,
    ];

    /// The key bit the symbol encodes.
    pub fn bit_value(self) -> u8 {
        match self {
            Bb84Symbol::Zero | Bb84Symbol::Plus => 0,
            Bb84Symbol::One | Bb84Symbol::Minus => 1,
        }
    }

    /// The basis the symbol is transmitted in.
    pub fn basis(self) -> Basis {
        match self {
            Bb84Symbol::Zero | Bb84Symbol::One => Basis::Z,
            Bb84Symbol::Plus | Bb84Symbol::Minus => Basis::X,
        }
    }

    /// The symbol encoding `bit` in `basis`.
    pub fn encode(basis: Basis, bit: u8) -> Bb84Symbol {
        match (basis, bit & 1) {
            (Basis::Z, 0) => Bb84Symbol::Zero,
            (Basis::Z, _) => Bb84Symbol::One,
            (Basis::X, 0) => Bb84Symbol::Plus,
            (Basis::X, _) => Bb84Symbol::Minus,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Bb84Symbol::Zero => "0",
            Bb84Symbol::One => "1",
            Bb84Symbol::Plus => "+",
            Bb84Symbol::Minus => "-",
        }
    }
}

/// The normalized single-qubit state for a BB84 symbol.
pub fn bb84_state(sym: Bb84Symbol) -> StateVec {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let amps = match sym {
        Bb84Symbol::Zero => vec![cr(1.0), cr(0.0)],
        Bb84Symbol::One => vec![cr(0.0), cr(1.0)],
        Bb84Symbol::Plus => vec![cr(h), cr(h)],
        Bb84Symbol::Minus => vec![cr(h), cr(-h)],
    };
    StateVec::new(amps).expect("BB84 states are normalized")
}

/// Index into the fixed ordering of the 16 BB84 pair states:
/// 00,01,10,11,0+,0-,1+,1-,+0,+1,-0,-1,++,+-,-+,--.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PairIndex(u8);

const PAIR_ORDER: [(Bb84Symbol, Bb84Symbol); 16] = {
    use Bb84Symbol::{Minus, One, Plus, Zero};
    [
        (Zero, Zero),
        (Zero, One),
        (One, Zero),
        (One, One),
        (Zero, Plus),
        (Zero, Minus),
        (One, Plus),
        (One, Minus),
        (Plus, Zero),
        (Plus, One),
        (Minus, Zero),
        (Minus, One),
        (Plus, Plus),
        (Plus, Minus),
        (Minus, Plus),
        (Minus, Minus),
    ]
};

impl PairIndex {
    pub fn new(a: u8) -> Result<Self> {
        if a > 15 {
            return Err(Error::InvalidArgument(format!(
                "pair index {a} outside [0,15]"
            )));
        }
        Ok(Self(a))
    }

    pub fn all() -> impl Iterator<Item = PairIndex> {
        (0..16).map(PairIndex)
    }

    #[inline]
    pub fn value(self) -> u8 {
        self.0
    }

    /// The two transmitted symbols (a1, a2).
    #[inline]
    pub fn decode(self) -> (Bb84Symbol, Bb84Symbol) {
        PAIR_ORDER[self.0 as usize]
    }

    /// Basis of Bob's (correct) measurement on the first qubit.
    pub fn first_basis(self) -> Basis {
        self.decode().0.basis()
    }

    /// Basis of Bob's (correct) measurement on the second qubit.
    pub fn second_basis(self) -> Basis {
        self.decode().1.basis()
    }

    /// Error-free outcome of Bob's first measurement.
    pub fn first_bit(self) -> u8 {
        self.decode().0.bit_value()
    }

    /// Error-free outcome of Bob's second measurement.
    pub fn second_bit(self) -> u8 {
        self.decode().1.bit_value()
    }
}

/// The two-qubit state |a1>|a2> for a pair index.
pub fn pair_state(a: PairIndex) -> StateVec {
    let (a1, a2) = a.decode();
    bb84_state(a1)
        .kron(&bb84_state(a2))
        .expect("single-qubit inputs")
}

/// Euler-style angles of a general SU(2) gate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SU2Params {
    pub a1: f64,
    pub a2: f64,
    pub a3: f64,
}

impl SU2Params {
    pub fn new(a1: f64, a2: f64, a3: f64) -> Self {
        Self { a1, a2, a3 }
    }
}

/// The general SU(2) gate
/// [[e^{i a1} cos a2, e^{i a3} sin a2], [-e^{-i a3} sin a2, e^{-i a1} cos a2]].
pub fn su2_gate(p: &SU2Params) -> Matrix {
    let (s, co) = p.a2.sin_cos();
    let e1 = c(p.a1.cos(), p.a1.sin());
    let e3 = c(p.a3.cos(), p.a3.sin());
    Matrix::from_rows(&[
        vec![e1 * co, e3 * s],
        vec![-e3.conj() * s, e1.conj() * co],
    ])
    .expect("2x2 construction")
}

/// The coordinates (c1, c2, c3) of the non-local gate A, each in [0, pi].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CanonicalParams {
    c1: f64,
    c2: f64,
    c3: f64,
}

impl CanonicalParams {
    pub fn new(c1: f64, c2: f64, c3: f64) -> Result<Self> {
        for v in [c1, c2, c3] {
            if !(0.0..=PI).contains(&v) {
                return Err(Error::OutOfDomain {
                    value: v,
                    domain: "[0, pi]",
                });
            }
        }
        Ok(Self { c1, c2, c3 })
    }

    pub fn c1(&self) -> f64 {
        self.c1
    }

    pub fn c2(&self) -> f64 {
        self.c2
    }

    pub fn c3(&self) -> f64 {
        self.c3
    }
}

/// The non-local canonical gate A(c1,c2,c3) in closed form.
///
/// Equal to exp[i(c1 XX + c2 YY + c3 ZZ)/2]; the spectral route through the
/// Bell eigenbasis is kept as a test oracle.
pub fn canonical_gate(p: &CanonicalParams) -> Matrix {
    let zero = c(0.0, 0.0);
    let outer = c(0.0, p.c3 / 2.0).exp(); // e^{i c3/2}
    let inner = outer.conj(); // e^{-i c3/2}
    let (s_diff, c_diff) = ((p.c1 - p.c2) / 2.0).sin_cos();
    let (s_sum, c_sum) = ((p.c1 + p.c2) / 2.0).sin_cos();
    let i = c(0.0, 1.0);

    let corner_diag = outer * c_diff;
    let corner_off = i * outer * s_diff;
    let mid_diag = inner * c_sum;
    let mid_off = i * inner * s_sum;

    Matrix::from_rows(&[
        vec![corner_diag, zero, zero, corner_off],
        vec![zero, mid_diag, mid_off, zero],
        vec![zero, mid_off, mid_diag, zero],
        vec![corner_off, zero, zero, corner_diag],
    ])
    .expect("4x4 construction")
}
