//! Readout emulation: every Pauli expectation the H₂ energy needs is turned
//! into a single-qubit Z measurement by a short mapping circuit `U` with
//! `U·P·U† = Z_k`, so that `⟨P⟩_ρ = ⟨Z_k⟩_{UρU†}`.
//!
//! | observable | circuit                | readout |
//! |------------|------------------------|---------|
//! | `ZI`       | none                   | 0       |
//! | `IZ`       | none                   | 1       |
//! | `ZZ`       | CNOT(0→1)              | 1       |
//! | `XX`       | H(0), H(1), CNOT(0→1)  | 1       |
//! | `Z`        | none                   | 0       |
//! | `X`        | H(0)                   | 0       |

use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::linalg::CMatrix;
use crate::molecule::CoefficientRow;
use crate::pauli::{matrix_of, ps, Pauli, PauliString};
use crate::state::{run_circuit, Gate, StateVector};
use crate::{Error, Result};

pub const DEFAULT_SHOTS: usize = 4096;

#[derive(Debug, Clone, PartialEq)]
pub struct MappingRecipe {
    pub observable: PauliString,
    pub circuit: Vec<Gate>,
    pub readout_qubit: usize,
}

impl MappingRecipe {
    /// `U = G_last ⋯ G_first`.
    pub fn unitary(&self) -> CMatrix {
        let n = self.observable.num_qubits();
        self.circuit.iter().fold(CMatrix::identity(1 << n), |acc, g| {
            &g.matrix(n).expect("recipe gates fit the register") * &acc
        })
    }

    /// `Z` on the readout qubit, identity elsewhere.
    pub fn readout_operator(&self) -> CMatrix {
        let n = self.observable.num_qubits();
        let labels = (0..n)
            .map(|q| if q == self.readout_qubit { Pauli::Z } else { Pauli::I })
            .collect();
        matrix_of(&PauliString::new(labels).expect("n >= 1")).into_matrix()
    }

    /// `‖U·P·U† − Z_k‖_max`.
    pub fn soundness_residual(&self) -> f64 {
        let u = self.unitary();
        let p = matrix_of(&self.observable);
        (&(&u * &p) * &u.adjoint()).max_abs_diff(&self.readout_operator())
    }
}

pub fn recipe_for(observable: &PauliString) -> Result<MappingRecipe> {
    let cnot = Gate::Cnot {
        control: 0,
        target: 1,
    };
    let (circuit, readout_qubit) = match observable.to_string().as_str() {
        "ZI" | "Z" => (vec![], 0),
        "IZ" => (vec![], 1),
        "ZZ" => (vec![cnot], 1),
        "XX" => (vec![Gate::H(0), Gate::H(1), cnot], 1),
        "X" => (vec![Gate::H(0)], 0),
        other => return Err(Error::UnsupportedObservable(other.to_string())),
    };
    Ok(MappingRecipe {
        observable: observable.clone(),
        circuit,
        readout_qubit,
    })
}

fn mapped_prob_plus(state: &StateVector, observable: &PauliString) -> Result<f64> {
    if state.num_qubits() != observable.num_qubits() {
        return Err(Error::DimensionMismatch {
            expected: observable.num_qubits(),
            actual: state.num_qubits(),
        });
    }
    let recipe = recipe_for(observable)?;
    let mapped = run_circuit(&recipe.circuit, state)?;
    Ok(mapped.prob_zero(recipe.readout_qubit).clamp(0.0, 1.0))
}

/// `⟨Z_k⟩` of the mapped state, i.e. `P(0) − P(1)` on the readout qubit.
pub fn measure_exact(state: &StateVector, observable: &PauliString) -> Result<f64> {
    let p = mapped_prob_plus(state, observable)?;
    Ok(2.0 * p - 1.0)
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ShotEstimate {
    pub mean: f64,
    /// Sample standard deviation (n − 1 denominator) over `sqrt(shots)`;
    /// zero for a single shot.
    pub standard_error: f64,
    pub shots: usize,
}

/// Draws `shots` ±1 outcomes of the mapped Z readout from a ChaCha8 stream
/// seeded with `seed`.
pub fn measure_shots(
    state: &StateVector,
    observable: &PauliString,
    shots: usize,
    seed: u64,
) -> Result<ShotEstimate> {
    if shots == 0 {
        return Err(Error::ZeroShots);
    }
    let p_plus = mapped_prob_plus(state, observable)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let plus = (0..shots).filter(|_| rng.gen::<f64>() < p_plus).count();
    let n = shots as f64;
    let mean = (2.0 * plus as f64 - n) / n;
    // Outcomes are ±1, so Σ(x − x̄)² = n(1 − x̄²).
    let standard_error = if shots > 1 {
        let variance = (n * (1.0 - mean * mean) / (n - 1.0)).max(0.0);
        libm::sqrt(variance / n)
    } else {
        0.0
    };
    Ok(ShotEstimate {
        mean,
        standard_error,
        shots,
    })
}

/// SplitMix64 finalizer over `seed ⊕ stream·φ`, for independent per-observable
/// (or per-point) sampler streams.
pub fn derive_seed(seed: u64, stream: u64) -> u64 {
    let mut z = seed ^ stream.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Which operator template the measured expectations are combined into.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum HamiltonianModel {
    /// `a0 + a1⟨ZI⟩ + a2⟨IZ⟩ + a3⟨ZZ⟩ + a4⟨XX⟩`
    TwoQubit,
    /// `(a0 − a3) + (a1 − a2)⟨Z⟩ + a4⟨X⟩`
    OneQubitA,
    /// `(a0 + a3) + (a1 + a2)⟨Z⟩ + a4⟨X⟩`
    OneQubitB,
}

impl HamiltonianModel {
    pub fn num_qubits(self) -> usize {
        match self {
            HamiltonianModel::TwoQubit => 2,
            HamiltonianModel::OneQubitA | HamiltonianModel::OneQubitB => 1,
        }
    }

    /// Identity constant and the measured `(coefficient, observable)` terms.
    pub fn terms(self, row: &CoefficientRow) -> (f64, Vec<(f64, PauliString)>) {
        match self {
            HamiltonianModel::TwoQubit => (
                row.a0,
                vec![
                    (row.a1, ps("ZI")),
                    (row.a2, ps("IZ")),
                    (row.a3, ps("ZZ")),
                    (row.a4, ps("XX")),
                ],
            ),
            HamiltonianModel::OneQubitA => (
                row.a0 - row.a3,
                vec![(row.a1 - row.a2, ps("Z")), (row.a4, ps("X"))],
            ),
            HamiltonianModel::OneQubitB => (
                row.a0 + row.a3,
                vec![(row.a1 + row.a2, ps("Z")), (row.a4, ps("X"))],
            ),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Readout {
    Exact,
    Shots { shots: usize, seed: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct EnergyEstimate {
    pub energy: f64,
    /// Quadrature sum of `|cᵢ|·seᵢ`; zero in exact mode.
    pub error: f64,
}

/// Energy assembled from mapped single-qubit readouts. In shot mode term
/// `i` samples from `derive_seed(seed, i)`.
pub fn energy_from_measurements(
    row: &CoefficientRow,
    state: &StateVector,
    model: HamiltonianModel,
    readout: Readout,
) -> Result<EnergyEstimate> {
    if state.num_qubits() != model.num_qubits() {
        return Err(Error::DimensionMismatch {
            expected: model.num_qubits(),
            actual: state.num_qubits(),
        });
    }
    let (constant, terms) = model.terms(row);
    let mut energy = constant;
    let mut variance = 0.0;
    for (i, (c, p)) in terms.iter().enumerate() {
        match readout {
            Readout::Exact => energy += c * measure_exact(state, p)?,
            Readout::Shots { shots, seed } => {
                let est = measure_shots(state, p, shots, derive_seed(seed, i as u64))?;
                energy += c * est.mean;
                variance += (c * est.standard_error) * (c * est.standard_error);
            }
        }
    }
    Ok(EnergyEstimate {
        energy,
        error: libm::sqrt(variance),
    })
}
