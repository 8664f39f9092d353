//! Pauli strings, real-weighted Pauli sums and their dense realization.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::linalg::{CMatrix, HermitianMatrix};
use crate::{Error, Result, C64};

/// Terms whose merged coefficient falls below this are dropped.
pub const COEFFICIENT_EPS: f64 = 1e-15;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub fn matrix(self) -> CMatrix {
        let o = C64::new(0.0, 0.0);
        let one = C64::new(1.0, 0.0);
        let i = C64::new(0.0, 1.0);
        match self {
            Pauli::I => CMatrix::identity(2),
            Pauli::X => CMatrix::from_rows(&[[o, one], [one, o]]),
            Pauli::Y => CMatrix::from_rows(&[[o, -i], [i, o]]),
            Pauli::Z => CMatrix::from_rows(&[[one, o], [o, -one]]),
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }
}

impl TryFrom<char> for Pauli {
    type Error = Error;
    fn try_from(c: char) -> Result<Self> {
        match c {
            'I' => Ok(Pauli::I),
            'X' => Ok(Pauli::X),
            'Y' => Ok(Pauli::Y),
            'Z' => Ok(Pauli::Z),
            other => Err(Error::InvalidPauli(other)),
        }
    }
}

/// Tensor product of single-qubit Paulis. `labels[0]` acts on the leftmost
/// (most significant) qubit, so `ZI` is Z on qubit 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PauliString {
    labels: Vec<Pauli>,
}

impl PauliString {
    pub fn new(labels: Vec<Pauli>) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::EmptyPauliString);
        }
        Ok(Self { labels })
    }

    pub fn identity(num_qubits: usize) -> Self {
        assert!(num_qubits > 0);
        Self {
            labels: alloc::vec![Pauli::I; num_qubits],
        }
    }

    pub fn labels(&self) -> &[Pauli] {
        &self.labels
    }

    pub fn num_qubits(&self) -> usize {
        self.labels.len()
    }

    pub fn is_identity(&self) -> bool {
        self.labels.iter().all(|&p| p == Pauli::I)
    }
}

impl FromStr for PauliString {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let labels = s.chars().map(Pauli::try_from).collect::<Result<Vec<_>>>()?;
        Self::new(labels)
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.labels.iter().try_for_each(|p| write!(f, "{}", p.as_char()))
    }
}

/// Parses a string literal known to be a valid Pauli string.
pub(crate) fn ps(s: &str) -> PauliString {
    s.parse().expect("valid Pauli literal")
}

/// Real linear combination of equal-length Pauli strings.
#[derive(Debug, Clone, PartialEq)]
pub struct PauliSum {
    num_qubits: usize,
    terms: Vec<(f64, PauliString)>,
}

impl PauliSum {
    /// Merges repeated strings (first occurrence keeps its position) and
    /// drops coefficients below [`COEFFICIENT_EPS`].
    pub fn new<I>(num_qubits: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (f64, PauliString)>,
    {
        let mut merged: Vec<(f64, PauliString)> = Vec::new();
        for (c, p) in terms {
            if p.num_qubits() != num_qubits {
                return Err(Error::DimensionMismatch {
                    expected: num_qubits,
                    actual: p.num_qubits(),
                });
            }
            match merged.iter_mut().find(|(_, q)| *q == p) {
                Some((acc, _)) => *acc += c,
                None => merged.push((c, p)),
            }
        }
        merged.retain(|(c, _)| libm::fabs(*c) >= COEFFICIENT_EPS);
        Ok(Self {
            num_qubits,
            terms: merged,
        })
    }

    /// Builds a sum from `(coefficient, "label")` pairs.
    pub fn from_labels(num_qubits: usize, terms: &[(f64, &str)]) -> Result<Self> {
        let parsed = terms
            .iter()
            .map(|&(c, s)| s.parse::<PauliString>().map(|p| (c, p)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(num_qubits, parsed)
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn terms(&self) -> &[(f64, PauliString)] {
        &self.terms
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, p: &PauliString) -> f64 {
        self.terms
            .iter()
            .find(|(_, q)| q == p)
            .map_or(0.0, |(c, _)| *c)
    }

    pub fn scaled(&self, s: f64) -> Self {
        Self::new(self.num_qubits, self.terms.iter().map(|(c, p)| (c * s, p.clone())))
            .expect("same qubit count")
    }
}

impl fmt::Display for PauliSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (c, p)) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{c}·{p}")?;
        }
        Ok(())
    }
}

/// Dense `2ⁿ × 2ⁿ` realization of a Pauli string.
pub fn matrix_of(p: &PauliString) -> HermitianMatrix {
    let mut labels = p.labels.iter();
    let first = labels.next().expect("non-empty by construction").matrix();
    let m = labels.fold(first, |acc, l| acc.kron(&l.matrix()));
    HermitianMatrix::new_unchecked(m)
}

/// Dense realization of a Pauli sum; the empty sum is the zero matrix.
pub fn matrix_of_sum(h: &PauliSum) -> HermitianMatrix {
    let dim = 1usize << h.num_qubits;
    let m = h
        .terms
        .iter()
        .fold(CMatrix::zeros(dim), |acc, (c, p)| &acc + &matrix_of(p).scale(*c));
    HermitianMatrix::new_unchecked(m)
}

/// Basis indices of the `{|01⟩, |10⟩}` block.
pub const BLOCK_A_BASIS: [usize; 2] = [0b01, 0b10];
/// Basis indices of the `{|00⟩, |11⟩}` block.
pub const BLOCK_B_BASIS: [usize; 2] = [0b00, 0b11];

/// Splits `a0·II + a1·ZI + a2·IZ + a3·ZZ + a4·XX` into its two invariant
/// 2×2 blocks.
///
/// Block A acts on `(|01⟩, |10⟩)`:
/// `[[a0+a1−a2−a3, a4], [a4, a0−a1+a2−a3]]`.
/// Block B acts on `(|00⟩, |11⟩)`:
/// `[[a0+a1+a2+a3, a4], [a4, a0−a1−a2+a3]]`.
pub fn block_decompose_h2(h: &PauliSum) -> Result<(HermitianMatrix, HermitianMatrix)> {
    if h.num_qubits != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            actual: h.num_qubits,
        });
    }
    let mut a = [0.0; 5];
    for (c, p) in &h.terms {
        let slot = match p.to_string().as_str() {
            "II" => 0,
            "ZI" => 1,
            "IZ" => 2,
            "ZZ" => 3,
            "XX" => 4,
            other => return Err(Error::UnsupportedTerm(String::from(other))),
        };
        a[slot] += c;
    }
    let [a0, a1, a2, a3, a4] = a;
    let block_a = CMatrix::from_real_rows(&[[a0 + a1 - a2 - a3, a4], [a4, a0 - a1 + a2 - a3]]);
    let block_b = CMatrix::from_real_rows(&[[a0 + a1 + a2 + a3, a4], [a4, a0 - a1 - a2 + a3]]);
    Ok((
        HermitianMatrix::new_unchecked(block_a),
        HermitianMatrix::new_unchecked(block_b),
    ))
}
