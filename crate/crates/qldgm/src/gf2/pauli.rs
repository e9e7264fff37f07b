//! Pauli strings and their binary symplectic representation.
//!
//! Qubit index 0 is the leftmost symbol of a Pauli string and the lowest
//! bit position of both symplectic halves. That ordering is fixed here and
//! used everywhere else in the crate.

use super::BitVec;
use crate::{Error, Result};

/// A single-qubit Pauli operator (phase ignored).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    /// Symplectic component pair (x, z): I=(0,0), X=(1,0), Z=(0,1), Y=(1,1).
    pub fn xz(self) -> (bool, bool) {
        match self {
            Pauli::I => (false, false),
            Pauli::X => (true, false),
            Pauli::Z => (false, true),
            Pauli::Y => (true, true),
        }
    }

    pub fn from_xz(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => Pauli::I,
            (true, false) => Pauli::X,
            (false, true) => Pauli::Z,
            (true, true) => Pauli::Y,
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

    pub fn from_char(c: char) -> Result<Self> {
        match c.to_ascii_uppercase() {
            'I' => Ok(Pauli::I),
            'X' => Ok(Pauli::X),
            'Y' => Ok(Pauli::Y),
            'Z' => Ok(Pauli::Z),
            other => Err(Error::Parse(format!("invalid Pauli symbol '{other}'"))),
        }
    }
}

/// An N-qubit Pauli operator as a sequence of single-qubit symbols.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PauliString(pub Vec<Pauli>);

impl PauliString {
    pub fn identity(n: usize) -> Self {
        PauliString(vec![Pauli::I; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl std::fmt::Display for PauliString {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for p in &self.0 {
            write!(f, "{}", p.as_char())?;
        }
        Ok(())
    }
}

impl std::str::FromStr for PauliString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars().map(Pauli::from_char).collect::<Result<Vec<_>>>().map(PauliString)
    }
}

/// The length-2N binary tuple (e_x|e_z) of an effective N-qubit Pauli.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SymplecticVec {
    x: BitVec,
    z: BitVec,
}

impl SymplecticVec {
    pub fn new(x: BitVec, z: BitVec) -> Result<Self> {
        if x.len() != z.len() {
            return Err(Error::dim(format!(
                "symplectic halves differ: |x|={} |z|={}",
                x.len(),
                z.len()
            )));
        }
        Ok(SymplecticVec { x, z })
    }

    pub fn identity(n: usize) -> Self {
        SymplecticVec {
            x: BitVec::zeros(n),
            z: BitVec::zeros(n),
        }
    }

    pub fn n_qubits(&self) -> usize {
        self.x.len()
    }

    pub fn x_part(&self) -> &BitVec {
        &self.x
    }

    pub fn z_part(&self) -> &BitVec {
        &self.z
    }

    pub fn x_part_mut(&mut self) -> &mut BitVec {
        &mut self.x
    }

    pub fn z_part_mut(&mut self) -> &mut BitVec {
        &mut self.z
    }

    pub fn qubit(&self, i: usize) -> Pauli {
        Pauli::from_xz(self.x.get(i), self.z.get(i))
    }

    pub fn set_qubit(&mut self, i: usize, p: Pauli) {
        let (x, z) = p.xz();
        self.x.set(i, x);
        self.z.set(i, z);
    }

    pub fn is_identity(&self) -> bool {
        self.x.is_zero() && self.z.is_zero()
    }

    /// Number of non-identity positions.
    pub fn weight(&self) -> usize {
        (0..self.n_qubits())
            .filter(|&i| self.x.get(i) || self.z.get(i))
            .count()
    }

    /// The ⋆ group operation on effective Paulis: componentwise XOR of
    /// both symplectic halves.
    pub fn star(&self, other: &SymplecticVec) -> Result<SymplecticVec> {
        if self.n_qubits() != other.n_qubits() {
            return Err(Error::dim(format!(
                "star: {} vs {} qubits",
                self.n_qubits(),
                other.n_qubits()
            )));
        }
        Ok(SymplecticVec {
            x: self.x.xor(&other.x),
            z: self.z.xor(&other.z),
        })
    }

    /// Symplectic scalar product (a_x⊛b_z) ⊕ (a_z⊛b_x); zero iff the
    /// underlying Pauli operators commute.
    pub fn symplectic_product(&self, other: &SymplecticVec) -> Result<u8> {
        if self.n_qubits() != other.n_qubits() {
            return Err(Error::dim(format!(
                "symplectic product: {} vs {} qubits",
                self.n_qubits(),
                other.n_qubits()
            )));
        }
        Ok(self.x.dot(&other.z) ^ self.z.dot(&other.x))
    }

    /// The concatenated 2N-bit form (x|z).
    pub fn concat_bits(&self) -> BitVec {
        self.x.concat(&self.z)
    }

    /// Rebuilds from a 2N-bit (x|z) concatenation.
    pub fn from_concat_bits(bits: &BitVec) -> Result<Self> {
        if bits.len() % 2 != 0 {
            return Err(Error::dim(format!("odd symplectic length {}", bits.len())));
        }
        let (x, z) = bits.split_at(bits.len() / 2);
        Ok(SymplecticVec { x, z })
    }
}

impl std::fmt::Debug for SymplecticVec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({:?}|{:?})", self.x, self.z)
    }
}

/// Per-position β mapping I→(0|0), X→(1|0), Z→(0|1), Y→(1|1).
pub fn pauli_to_symplectic(p: &PauliString) -> SymplecticVec {
    let mut v = SymplecticVec::identity(p.len());
    for (i, &op) in p.0.iter().enumerate() {
        v.set_qubit(i, op);
    }
    v
}

/// Inverse of [`pauli_to_symplectic`].
pub fn symplectic_to_pauli(v: &SymplecticVec) -> PauliString {
    PauliString((0..v.n_qubits()).map(|i| v.qubit(i)).collect())
}

impl From<&PauliString> for SymplecticVec {
    fn from(p: &PauliString) -> Self {
        pauli_to_symplectic(p)
    }
}

impl From<&SymplecticVec> for PauliString {
    fn from(v: &SymplecticVec) -> Self {
        symplectic_to_pauli(v)
    }
}
