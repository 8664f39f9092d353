//! Dense statevectors for one and two qubits.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::linalg::CMatrix;
use crate::pauli::{matrix_of, matrix_of_sum, Pauli, PauliString, PauliSum};
use crate::{Error, Result, C64};

pub const NORM_TOL: f64 = 1e-12;
const MAX_QUBITS: usize = 2;

/// Unit-norm amplitude vector of length `2ⁿ`, `n ∈ {1, 2}`. The amplitude of
/// `|b₀b₁⟩` sits at index `2·b₀ + b₁`.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    num_qubits: usize,
    amplitudes: Vec<C64>,
}

impl StateVector {
    pub fn new(amplitudes: Vec<C64>) -> Result<Self> {
        let num_qubits = match amplitudes.len() {
            2 => 1,
            4 => 2,
            other => {
                return Err(Error::DimensionMismatch {
                    expected: 4,
                    actual: other,
                })
            }
        };
        let norm_sqr: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if libm::fabs(norm_sqr - 1.0) > NORM_TOL {
            return Err(Error::NotNormalized(norm_sqr));
        }
        Ok(Self {
            num_qubits,
            amplitudes,
        })
    }

    /// Normalizes `amplitudes` first. Fails on the zero vector.
    pub fn normalized(mut amplitudes: Vec<C64>) -> Result<Self> {
        let norm = libm::sqrt(amplitudes.iter().map(|a| a.norm_sqr()).sum());
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::NotNormalized(norm * norm));
        }
        amplitudes.iter_mut().for_each(|a| *a /= norm);
        Self::new(amplitudes)
    }

    pub fn from_real(amplitudes: &[f64]) -> Result<Self> {
        Self::new(amplitudes.iter().map(|&x| C64::new(x, 0.0)).collect())
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    pub fn amplitude(&self, index: usize) -> C64 {
        self.amplitudes[index]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &Self) -> Result<C64> {
        check_dim(self.dim(), other.dim())?;
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// `|⟨self|other⟩|²`.
    pub fn overlap(&self, other: &Self) -> Result<f64> {
        self.inner(other).map(|z| z.norm_sqr())
    }

    /// Probability that qubit `q` reads 0.
    pub fn prob_zero(&self, qubit: usize) -> f64 {
        let shift = self.num_qubits - 1 - qubit;
        self.amplitudes
            .iter()
            .enumerate()
            .filter(|(i, _)| (i >> shift) & 1 == 0)
            .map(|(_, a)| a.norm_sqr())
            .sum()
    }

    pub(crate) fn from_raw(num_qubits: usize, amplitudes: Vec<C64>) -> Self {
        debug_assert_eq!(amplitudes.len(), 1 << num_qubits);
        Self {
            num_qubits,
            amplitudes,
        }
    }
}

fn check_dim(expected: usize, actual: usize) -> Result<()> {
    if expected != actual {
        return Err(Error::DimensionMismatch { expected, actual });
    }
    Ok(())
}

/// Computational basis state from a bitstring such as `"01"`.
pub fn basis_state(label: &str) -> Result<StateVector> {
    let n = label.chars().count();
    if n == 0 || n > MAX_QUBITS || !label.chars().all(|c| c == '0' || c == '1') {
        return Err(Error::InvalidBasisLabel(String::from(label)));
    }
    let index = usize::from_str_radix(label, 2).expect("validated binary");
    let mut amps = vec![C64::new(0.0, 0.0); 1 << n];
    amps[index] = C64::new(1.0, 0.0);
    Ok(StateVector::from_raw(n, amps))
}

/// Gates on qubit indices (0 = leftmost). Angles are radians; the rotations
/// are `R_P(φ) = exp(−iφP/2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Gate {
    X(usize),
    Y(usize),
    Z(usize),
    H(usize),
    Rx(usize, f64),
    Ry(usize, f64),
    Rz(usize, f64),
    Cnot { control: usize, target: usize },
    /// `exp(iθ X⊗Y)` on a two-qubit register.
    ExpXY(f64),
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Gate::X(q) => write!(f, "X({q})"),
            Gate::Y(q) => write!(f, "Y({q})"),
            Gate::Z(q) => write!(f, "Z({q})"),
            Gate::H(q) => write!(f, "H({q})"),
            Gate::Rx(q, a) => write!(f, "Rx({q}, {a})"),
            Gate::Ry(q, a) => write!(f, "Ry({q}, {a})"),
            Gate::Rz(q, a) => write!(f, "Rz({q}, {a})"),
            Gate::Cnot { control, target } => write!(f, "CNOT({control}->{target})"),
            Gate::ExpXY(a) => write!(f, "ExpXY({a})"),
        }
    }
}

impl Gate {
    fn single_qubit(&self) -> Option<(usize, CMatrix)> {
        let r = |x: f64| C64::new(x, 0.0);
        let im = |x: f64| C64::new(0.0, x);
        let half = |a: f64| (libm::cos(a / 2.0), libm::sin(a / 2.0));
        let (q, m) = match *self {
            Gate::X(q) => (q, Pauli::X.matrix()),
            Gate::Y(q) => (q, Pauli::Y.matrix()),
            Gate::Z(q) => (q, Pauli::Z.matrix()),
            Gate::H(q) => {
                let s = core::f64::consts::FRAC_1_SQRT_2;
                (q, CMatrix::from_real_rows(&[[s, s], [s, -s]]))
            }
            Gate::Rx(q, a) => {
                let (c, s) = half(a);
                (q, CMatrix::from_rows(&[[r(c), im(-s)], [im(-s), r(c)]]))
            }
            Gate::Ry(q, a) => {
                let (c, s) = half(a);
                (q, CMatrix::from_real_rows(&[[c, -s], [s, c]]))
            }
            Gate::Rz(q, a) => {
                let (c, s) = half(a);
                (
                    q,
                    CMatrix::from_rows(&[[C64::new(c, -s), r(0.0)], [r(0.0), C64::new(c, s)]]),
                )
            }
            Gate::Cnot { .. } | Gate::ExpXY(_) => return None,
        };
        Some((q, m))
    }

    fn arity_error(&self, qubits: usize) -> Error {
        Error::GateArity {
            gate: format!("{self}"),
            qubits,
        }
    }

    fn check_arity(&self, qubits: usize) -> Result<()> {
        let ok = match *self {
            Gate::Cnot { control, target } => {
                qubits == 2 && control < 2 && target < 2 && control != target
            }
            Gate::ExpXY(_) => qubits == 2,
            _ => {
                let (q, _) = self.single_qubit().expect("single-qubit gate");
                (1..=MAX_QUBITS).contains(&qubits) && q < qubits
            }
        };
        if ok {
            Ok(())
        } else {
            Err(self.arity_error(qubits))
        }
    }

    /// Full `2ⁿ × 2ⁿ` unitary of this gate on an `n`-qubit register.
    pub fn matrix(&self, qubits: usize) -> Result<CMatrix> {
        self.check_arity(qubits)?;
        Ok(match *self {
            Gate::Cnot { control, target } => {
                let mut m = CMatrix::zeros(4);
                for i in 0..4usize {
                    let cbit = (i >> (1 - control)) & 1;
                    let j = if cbit == 1 { i ^ (1 << (1 - target)) } else { i };
                    m[(j, i)] = C64::new(1.0, 0.0);
                }
                m
            }
            Gate::ExpXY(theta) => {
                let columns: Vec<Vec<C64>> = (0..4)
                    .map(|i| {
                        let mut e = vec![C64::new(0.0, 0.0); 4];
                        e[i] = C64::new(1.0, 0.0);
                        exp_xy(theta, &e)
                    })
                    .collect();
                let mut m = CMatrix::zeros(4);
                for (j, col) in columns.iter().enumerate() {
                    for (i, z) in col.iter().enumerate() {
                        m[(i, j)] = *z;
                    }
                }
                m
            }
            _ => {
                let (q, g) = self.single_qubit().expect("single-qubit gate");
                (0..qubits).fold(CMatrix::identity(1), |acc, k| {
                    acc.kron(&if k == q { g.clone() } else { CMatrix::identity(2) })
                })
            }
        })
    }
}

/// Closed-form action of `exp(iθ X⊗Y) = cos θ·I + i sin θ·X⊗Y`:
///
/// ```text
/// |00⟩ → cos θ|00⟩ − sin θ|11⟩      |01⟩ → cos θ|01⟩ + sin θ|10⟩
/// |10⟩ → cos θ|10⟩ − sin θ|01⟩      |11⟩ → cos θ|11⟩ + sin θ|00⟩
/// ```
fn exp_xy(theta: f64, a: &[C64]) -> Vec<C64> {
    let (c, s) = (libm::cos(theta), libm::sin(theta));
    vec![
        a[0b00] * c + a[0b11] * s,
        a[0b01] * c - a[0b10] * s,
        a[0b10] * c + a[0b01] * s,
        a[0b11] * c - a[0b00] * s,
    ]
}

pub fn apply(gate: &Gate, state: &StateVector) -> Result<StateVector> {
    gate.check_arity(state.num_qubits)?;
    let amps = match *gate {
        Gate::ExpXY(theta) => exp_xy(theta, &state.amplitudes),
        _ => gate.matrix(state.num_qubits)?.mul_vec(&state.amplitudes),
    };
    Ok(StateVector::from_raw(state.num_qubits, amps))
}

/// Applies `gates` in order.
pub fn run_circuit(gates: &[Gate], state: &StateVector) -> Result<StateVector> {
    gates
        .iter()
        .try_fold(state.clone(), |s, g| apply(g, &s))
}

/// Anything with a Hermitian dense realization on a fixed qubit count.
pub trait Observable {
    fn num_qubits(&self) -> usize;
    fn dense(&self) -> CMatrix;
}

impl Observable for PauliString {
    fn num_qubits(&self) -> usize {
        PauliString::num_qubits(self)
    }
    fn dense(&self) -> CMatrix {
        matrix_of(self).into_matrix()
    }
}

impl Observable for PauliSum {
    fn num_qubits(&self) -> usize {
        PauliSum::num_qubits(self)
    }
    fn dense(&self) -> CMatrix {
        matrix_of_sum(self).into_matrix()
    }
}

/// `⟨s|O|s⟩`; the imaginary residue of a Hermitian form is discarded.
pub fn expectation<O: Observable + ?Sized>(observable: &O, state: &StateVector) -> Result<f64> {
    check_dim(observable.num_qubits(), state.num_qubits)?;
    Ok(observable.dense().quadratic_form(&state.amplitudes).re)
}
