//! Single-parameter UCCSD trial states.
//!
//! Two-qubit families apply `exp(iθ X⊗Y)` to a reference state:
//! `|01⟩ → cos θ|01⟩ + sin θ|10⟩` and `|00⟩ → cos θ|00⟩ − sin θ|11⟩`.
//! The single-qubit families are the images of these under
//! `|01⟩,|10⟩ → |0⟩,|1⟩` (resp. `|00⟩,|11⟩ → |0⟩,|1⟩`): `exp(−iθY)|0⟩` and
//! `exp(+iθY)|0⟩`, with `Y = [[0, −i], [i, 0]]`, so that
//! `exp(−iθY)|0⟩ = cos θ|0⟩ + sin θ|1⟩`.

use core::fmt;

use crate::state::{apply, basis_state, Gate, StateVector};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum AnsatzFamily {
    TwoQubitXyOn01,
    TwoQubitXyOn00,
    OneQubitMinusY,
    OneQubitPlusY,
}

impl AnsatzFamily {
    pub const ALL: [AnsatzFamily; 4] = [
        AnsatzFamily::TwoQubitXyOn01,
        AnsatzFamily::TwoQubitXyOn00,
        AnsatzFamily::OneQubitMinusY,
        AnsatzFamily::OneQubitPlusY,
    ];

    pub fn num_qubits(self) -> usize {
        match self {
            AnsatzFamily::TwoQubitXyOn01 | AnsatzFamily::TwoQubitXyOn00 => 2,
            AnsatzFamily::OneQubitMinusY | AnsatzFamily::OneQubitPlusY => 1,
        }
    }

    pub fn reference(self) -> &'static str {
        match self {
            AnsatzFamily::TwoQubitXyOn01 => "01",
            AnsatzFamily::TwoQubitXyOn00 => "00",
            AnsatzFamily::OneQubitMinusY | AnsatzFamily::OneQubitPlusY => "0",
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            AnsatzFamily::TwoQubitXyOn01 => "TwoQubitXY_on01",
            AnsatzFamily::TwoQubitXyOn00 => "TwoQubitXY_on00",
            AnsatzFamily::OneQubitMinusY => "OneQubitMinusY",
            AnsatzFamily::OneQubitPlusY => "OneQubitPlusY",
        }
    }

    fn gate(self, theta: f64) -> Gate {
        match self {
            AnsatzFamily::TwoQubitXyOn01 | AnsatzFamily::TwoQubitXyOn00 => Gate::ExpXY(theta),
            // Ry(φ) = exp(−iφY/2)
            AnsatzFamily::OneQubitMinusY => Gate::Ry(0, 2.0 * theta),
            AnsatzFamily::OneQubitPlusY => Gate::Ry(0, -2.0 * theta),
        }
    }
}

impl fmt::Display for AnsatzFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnsatzSpec {
    pub family: AnsatzFamily,
    pub theta: f64,
}

impl AnsatzSpec {
    pub fn new(family: AnsatzFamily, theta: f64) -> Self {
        Self { family, theta }
    }
}

pub fn prepare(spec: &AnsatzSpec) -> StateVector {
    let reference = basis_state(spec.family.reference()).expect("static reference label");
    apply(&spec.family.gate(spec.theta), &reference).expect("gate matches reference arity")
}

/// Computational basis labels spanned by a two-qubit family.
pub fn subspace_image(family: AnsatzFamily) -> Result<[&'static str; 2]> {
    match family {
        AnsatzFamily::TwoQubitXyOn01 => Ok(["01", "10"]),
        AnsatzFamily::TwoQubitXyOn00 => Ok(["00", "11"]),
        other => Err(Error::NotApplicable(other.name())),
    }
}

/// Maps `θ` into `[−π/2, π/2)`; every family has period π in `θ` up to a
/// global sign of the state.
pub fn fold_theta(theta: f64) -> f64 {
    use core::f64::consts::{FRAC_PI_2, PI};
    let folded = theta - PI * libm::floor((theta + FRAC_PI_2) / PI);
    if folded >= FRAC_PI_2 {
        folded - PI
    } else {
        folded
    }
}
