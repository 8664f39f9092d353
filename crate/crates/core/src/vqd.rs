//! VQE ground-state search and VQD deflation for the first excited state.
//!
//! The objective is `θ ↦ ⟨ψ(θ)|H|ψ(θ)⟩ + Σ βᵢ |⟨φᵢ|ψ(θ)⟩|²`. With one
//! deflation term on the ground state `φ₀` the minimum over a 2-dimensional
//! ansatz subspace is `min(E₀ + β, E₁)`, so `β` must exceed `E₁ − E₀`.

use alloc::vec::Vec;
use core::f64::consts::FRAC_PI_4;
use core::fmt;

use crate::ansatz::{fold_theta, prepare, AnsatzFamily, AnsatzSpec};
use crate::linalg::CMatrix;
use crate::molecule::{hamiltonian_1q_a, hamiltonian_1q_b, hamiltonian_2q, CoefficientRow};
use crate::optimizer::{minimize_multistart, NelderMeadConfig};
use crate::oracle::spectral_spread;
use crate::pauli::PauliSum;
use crate::state::{Observable, StateVector, NORM_TOL};
use crate::{Error, Result};

/// Fixed default deflation weight, Hartree.
pub const DEFAULT_BETA: f64 = 3.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Formulation {
    TwoQubit,
    OneQubit,
}

impl Formulation {
    pub fn family(self, block: Block) -> AnsatzFamily {
        match (self, block) {
            (Formulation::TwoQubit, Block::A) => AnsatzFamily::TwoQubitXyOn01,
            (Formulation::TwoQubit, Block::B) => AnsatzFamily::TwoQubitXyOn00,
            (Formulation::OneQubit, Block::A) => AnsatzFamily::OneQubitMinusY,
            (Formulation::OneQubit, Block::B) => AnsatzFamily::OneQubitPlusY,
        }
    }

    /// The Hamiltonian searched for `block`. The two-qubit formulation uses
    /// the full operator for both blocks; the ansatz confines the search.
    pub fn hamiltonian(self, row: &CoefficientRow, block: Block) -> PauliSum {
        match (self, block) {
            (Formulation::TwoQubit, _) => hamiltonian_2q(row),
            (Formulation::OneQubit, Block::A) => hamiltonian_1q_a(row),
            (Formulation::OneQubit, Block::B) => hamiltonian_1q_b(row),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Formulation::TwoQubit => "two_qubit",
            Formulation::OneQubit => "one_qubit",
        }
    }
}

impl fmt::Display for Formulation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// `A` spans `{|01⟩, |10⟩}`, `B` spans `{|00⟩, |11⟩}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Block {
    A,
    B,
}

impl Block {
    pub const BOTH: [Block; 2] = [Block::A, Block::B];

    pub fn as_str(self) -> &'static str {
        match self {
            Block::A => "A",
            Block::B => "B",
        }
    }
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Penalty `β|φ⟩⟨φ|` on a previously found eigenstate.
#[derive(Debug, Clone, PartialEq)]
pub struct DeflationTerm {
    beta: f64,
    state: StateVector,
}

impl DeflationTerm {
    pub fn new(beta: f64, state: StateVector) -> Result<Self> {
        if !(beta.is_finite() && beta > 0.0) {
            return Err(Error::InvalidBeta(beta));
        }
        let norm = state.norm_sqr();
        if libm::fabs(norm - 1.0) > NORM_TOL {
            return Err(Error::NotNormalized(norm));
        }
        Ok(Self { beta, state })
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn state(&self) -> &StateVector {
        &self.state
    }
}

/// The (possibly deflated) energy landscape of one ansatz family.
#[derive(Debug, Clone)]
pub struct VqeObjective {
    hamiltonian: CMatrix,
    family: AnsatzFamily,
    deflation: Vec<DeflationTerm>,
}

impl VqeObjective {
    pub fn family(&self) -> AnsatzFamily {
        self.family
    }

    pub fn state(&self, theta: f64) -> StateVector {
        prepare(&AnsatzSpec::new(self.family, theta))
    }

    /// Undeflated `⟨ψ(θ)|H|ψ(θ)⟩`.
    pub fn energy(&self, theta: f64) -> f64 {
        self.hamiltonian
            .quadratic_form(self.state(theta).amplitudes())
            .re
    }

    pub fn evaluate(&self, theta: f64) -> f64 {
        let psi = self.state(theta);
        let energy = self.hamiltonian.quadratic_form(psi.amplitudes()).re;
        let penalty: f64 = self
            .deflation
            .iter()
            .map(|d| d.beta * d.state.overlap(&psi).expect("checked at construction"))
            .sum();
        energy + penalty
    }
}

pub fn vqe_objective(
    h: &PauliSum,
    family: AnsatzFamily,
    deflation: Vec<DeflationTerm>,
) -> Result<VqeObjective> {
    let qubits = family.num_qubits();
    if h.num_qubits() != qubits {
        return Err(Error::DimensionMismatch {
            expected: qubits,
            actual: h.num_qubits(),
        });
    }
    if let Some(d) = deflation.iter().find(|d| d.state.num_qubits() != qubits) {
        return Err(Error::DimensionMismatch {
            expected: qubits,
            actual: d.state.num_qubits(),
        });
    }
    Ok(VqeObjective {
        hamiltonian: h.dense(),
        family,
        deflation,
    })
}

/// How the deflation weight is picked for each Hamiltonian.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum BetaChoice {
    Fixed(f64),
    /// [`DEFAULT_BETA`] when it exceeds the spectral spread, otherwise
    /// 1.5 × spread.
    #[default]
    Auto,
}

impl BetaChoice {
    pub fn resolve(self, h: &PauliSum) -> Result<f64> {
        match self {
            BetaChoice::Fixed(beta) => Ok(beta),
            BetaChoice::Auto => {
                let spread = spectral_spread(h)?;
                Ok(if DEFAULT_BETA > spread {
                    DEFAULT_BETA
                } else {
                    1.5 * spread
                })
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolverConfig {
    pub optimizer: NelderMeadConfig,
    pub starts: Vec<f64>,
    pub beta: BetaChoice,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            optimizer: NelderMeadConfig::default(),
            starts: alloc::vec![-FRAC_PI_4, 0.0, FRAC_PI_4],
            beta: BetaChoice::Auto,
        }
    }
}

/// Outcome of one variational search. `energy` is the undeflated
/// expectation at `theta`, which is folded into `[−π/2, π/2)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Solution {
    pub energy: f64,
    pub theta: f64,
    pub evaluations: usize,
    pub converged: bool,
    pub state: StateVector,
}

fn optimize(objective: &VqeObjective, cfg: &SolverConfig) -> Result<Solution> {
    let result = minimize_multistart(|t| objective.evaluate(t), &cfg.optimizer, &cfg.starts)?;
    let theta = fold_theta(result.best_point);
    Ok(Solution {
        energy: objective.energy(theta),
        theta,
        evaluations: result.evaluations,
        converged: result.converged,
        state: objective.state(theta),
    })
}

pub fn solve_ground(h: &PauliSum, family: AnsatzFamily, cfg: &SolverConfig) -> Result<Solution> {
    optimize(&vqe_objective(h, family, Vec::new())?, cfg)
}

/// Minimizes `H + β|φ₀⟩⟨φ₀|` with `φ₀ = ground.state`.
///
/// `beta` must exceed the spectral spread of `h`. `beta == 0` is accepted
/// and degenerates to a second ground-state search.
pub fn solve_excited(
    h: &PauliSum,
    family: AnsatzFamily,
    ground: &Solution,
    beta: f64,
    cfg: &SolverConfig,
) -> Result<Solution> {
    if !(beta.is_finite() && beta >= 0.0) {
        return Err(Error::InvalidBeta(beta));
    }
    if beta == 0.0 {
        return solve_ground(h, family, cfg);
    }
    let spread = spectral_spread(h)?;
    if beta <= spread {
        return Err(Error::BetaTooSmall { beta, spread });
    }
    let deflation = alloc::vec![DeflationTerm::new(beta, ground.state.clone())?];
    optimize(&vqe_objective(h, family, deflation)?, cfg)
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct EnergyPoint {
    pub r: f64,
    pub formulation: Formulation,
    pub block: Block,
    pub level: u8,
    pub energy: f64,
    pub theta_opt: f64,
    pub evaluations: usize,
    pub converged: bool,
}

/// Block-local pair of solutions (ground, first excited) with the states.
pub fn solve_block(
    row: &CoefficientRow,
    formulation: Formulation,
    block: Block,
    cfg: &SolverConfig,
) -> Result<[(EnergyPoint, StateVector); 2]> {
    let h = formulation.hamiltonian(row, block);
    let family = formulation.family(block);
    let ground = solve_ground(&h, family, cfg)?;
    let beta = cfg.beta.resolve(&h)?;
    let excited = solve_excited(&h, family, &ground, beta, cfg)?;
    let point = |level: u8, s: &Solution| EnergyPoint {
        r: row.r,
        formulation,
        block,
        level,
        energy: s.energy,
        theta_opt: s.theta,
        evaluations: s.evaluations,
        converged: s.converged,
    };
    Ok([
        (point(0, &ground), ground.state.clone()),
        (point(1, &excited), excited.state),
    ])
}

/// Ground and first excited level of both blocks, ordered
/// `[A0, A1, B0, B1]`.
pub fn solve_all_levels(
    row: &CoefficientRow,
    formulation: Formulation,
    cfg: &SolverConfig,
) -> Result<[EnergyPoint; 4]> {
    let [(a0, _), (a1, _)] = solve_block(row, formulation, Block::A, cfg)?;
    let [(b0, _), (b1, _)] = solve_block(row, formulation, Block::B, cfg)?;
    Ok([a0, a1, b0, b1])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::subspace_levels;
    use crate::state::basis_state;
    use approx::assert_abs_diff_eq;
    use core::f64::consts::FRAC_PI_2;

    fn r070() -> CoefficientRow {
        CoefficientRow::new(0.70, [-1.04391, 0.42045, -0.42045, -0.01150, 0.179005]).unwrap()
    }

    fn r100() -> CoefficientRow {
        CoefficientRow::new(1.00, [-1.06924, 0.26752, -0.26752, -0.00901, 0.19679]).unwrap()
    }

    #[test]
    fn objective_at_hf_reference() {
        let row = r070();
        let obj = vqe_objective(&hamiltonian_2q(&row), AnsatzFamily::TwoQubitXyOn01, Vec::new())
            .unwrap();
        assert_abs_diff_eq!(
            obj.evaluate(0.0),
            row.a0 + row.a1 - row.a2 - row.a3,
            epsilon = 1e-15
        );
    }

    #[test]
    fn deflation_penalty_limits() {
        let row = r070();
        let h = hamiltonian_2q(&row);
        let family = AnsatzFamily::TwoQubitXyOn01;
        let theta = 0.3;
        let phi = prepare(&AnsatzSpec::new(family, theta));
        let plain = vqe_objective(&h, family, Vec::new()).unwrap();
        let on_self =
            vqe_objective(&h, family, alloc::vec![DeflationTerm::new(2.5, phi).unwrap()]).unwrap();
        assert_abs_diff_eq!(on_self.evaluate(theta), plain.evaluate(theta) + 2.5, epsilon = 1e-14);

        // |00⟩ is orthogonal to span{|01⟩, |10⟩}.
        let ortho = DeflationTerm::new(5.0, basis_state("00").unwrap()).unwrap();
        let deflated = vqe_objective(&h, family, alloc::vec![ortho]).unwrap();
        for k in 0..10 {
            let t = -1.5 + 0.3 * k as f64;
            assert_eq!(deflated.evaluate(t), plain.evaluate(t));
        }
    }

    #[test]
    fn objective_dimension_checks() {
        let h = hamiltonian_2q(&r070());
        assert!(vqe_objective(&h, AnsatzFamily::OneQubitMinusY, Vec::new()).is_err());
        let one = DeflationTerm::new(1.0, basis_state("0").unwrap()).unwrap();
        assert!(vqe_objective(&h, AnsatzFamily::TwoQubitXyOn01, alloc::vec![one]).is_err());
        assert!(DeflationTerm::new(0.0, basis_state("0").unwrap()).is_err());
    }

    #[test]
    fn ground_block_a_r070_closed_form() {
        let row = r070();
        let s = solve_ground(
            &hamiltonian_1q_a(&row),
            AnsatzFamily::OneQubitMinusY,
            &SolverConfig::default(),
        )
        .unwrap();
        let want = (row.a0 - row.a3) - libm::hypot(row.a1 - row.a2, row.a4);
        assert_abs_diff_eq!(s.energy, want, epsilon = 1e-8);
        assert!(s.converged);
    }

    #[test]
    fn ground_block_b_r100() {
        let s = solve_ground(
            &hamiltonian_1q_b(&r100()),
            AnsatzFamily::OneQubitPlusY,
            &SolverConfig::default(),
        )
        .unwrap();
        assert_abs_diff_eq!(s.energy, -1.27504, epsilon = 1e-8);
    }

    #[test]
    fn diagonal_hamiltonian_prefers_10() {
        // a4 = 0, a1 − a2 > 0: block A is diag(a0+a1−a2−a3, a0−a1+a2−a3),
        // lowest on |10⟩, i.e. θ ≡ π/2 (mod π).
        let row = CoefficientRow::new(1.0, [-1.0, 0.3, -0.3, -0.01, 0.0]).unwrap();
        let s = solve_ground(
            &hamiltonian_2q(&row),
            AnsatzFamily::TwoQubitXyOn01,
            &SolverConfig::default(),
        )
        .unwrap();
        assert_abs_diff_eq!(libm::fabs(s.theta), FRAC_PI_2, epsilon = 1e-5);
        assert_abs_diff_eq!(s.state.amplitude(0b10).norm(), 1.0, epsilon = 1e-9);
    }

    #[test]
    fn excited_block_a_r070() {
        let row = r070();
        let h = hamiltonian_1q_a(&row);
        let cfg = SolverConfig::default();
        let family = AnsatzFamily::OneQubitMinusY;
        let ground = solve_ground(&h, family, &cfg).unwrap();
        let excited = solve_excited(&h, family, &ground, 3.0, &cfg).unwrap();
        let want = (row.a0 - row.a3) + libm::hypot(row.a1 - row.a2, row.a4);
        assert_abs_diff_eq!(excited.energy, want, epsilon = 1e-6);
        assert!(ground.state.inner(&excited.state).unwrap().norm() < 1e-6);

        let again = solve_excited(&h, family, &ground, 0.0, &cfg).unwrap();
        assert_abs_diff_eq!(again.energy, ground.energy, epsilon = 1e-12);
    }

    #[test]
    fn beta_validation() {
        let row = r070();
        let h = hamiltonian_1q_a(&row);
        let cfg = SolverConfig::default();
        let family = AnsatzFamily::OneQubitMinusY;
        let ground = solve_ground(&h, family, &cfg).unwrap();
        assert!(matches!(
            solve_excited(&h, family, &ground, 1.0, &cfg),
            Err(Error::BetaTooSmall { .. })
        ));
        assert!(matches!(
            solve_excited(&h, family, &ground, -1.0, &cfg),
            Err(Error::InvalidBeta(_))
        ));
    }

    #[test]
    fn auto_beta() {
        let row = r070();
        assert_eq!(BetaChoice::Auto.resolve(&hamiltonian_1q_a(&row)).unwrap(), 3.0);
        let r030 =
            CoefficientRow::new(0.30, [-0.75374, 0.80864, -0.80864, -0.01328, 0.16081]).unwrap();
        let h = hamiltonian_1q_a(&r030);
        let spread = spectral_spread(&h).unwrap();
        assert!(spread > 3.0);
        assert_eq!(BetaChoice::Auto.resolve(&h).unwrap(), 1.5 * spread);
    }

    #[test]
    fn all_levels_r100_one_qubit() {
        let row = r100();
        let pts = solve_all_levels(&row, Formulation::OneQubit, &SolverConfig::default()).unwrap();
        let a = subspace_levels(&hamiltonian_1q_a(&row), AnsatzFamily::OneQubitMinusY).unwrap();
        let b = [-1.27504, -0.88146];
        let want = [a[0], a[1], b[0], b[1]];
        for (p, w) in pts.iter().zip(want) {
            assert_abs_diff_eq!(p.energy, w, epsilon = 1e-6);
        }
        assert_eq!(pts.map(|p| (p.block, p.level)), [(Block::A, 0), (Block::A, 1), (Block::B, 0), (Block::B, 1)]);
    }

    #[test]
    fn degenerate_row_all_levels_equal() {
        let row = CoefficientRow::new(1.0, [-0.9, 0.0, 0.0, 0.0, 0.0]).unwrap();
        for formulation in [Formulation::OneQubit, Formulation::TwoQubit] {
            let pts = solve_all_levels(&row, formulation, &SolverConfig::default()).unwrap();
            for p in pts {
                assert_abs_diff_eq!(p.energy, -0.9, epsilon = 1e-12);
            }
        }
    }
}
