//! Quantum parity-check matrices.

use super::{pauli_to_symplectic, BitMatrix, BitVec, PauliString, SymplecticVec};
use crate::{Error, Result};

/// True iff `hx hzᵀ ⊕ hz hxᵀ = 0`, the symplectic criterion.
///
/// Since `hz hxᵀ = (hx hzᵀ)ᵀ`, this is a symmetry test of the single
/// product `hx hzᵀ`, which keeps the check cheap for sparse generators.
pub fn check_symplectic_criterion(hx: &BitMatrix, hz: &BitMatrix) -> Result<bool> {
    if hx.rows() != hz.rows() || hx.cols() != hz.cols() {
        return Err(Error::dim(format!(
            "criterion: hx is {}x{}, hz is {}x{}",
            hx.rows(),
            hx.cols(),
            hz.rows(),
            hz.cols()
        )));
    }
    let a = hx.mul(&hz.transpose());
    Ok(a == a.transpose())
}

/// The quantum parity-check matrix (H_x|H_z) of a stabilizer code: one row
/// per generator, stored as separate x and z halves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Qpcm {
    hx: BitMatrix,
    hz: BitMatrix,
    n_qubits: usize,
    n_logical: usize,
}

impl Qpcm {
    /// Validates the symplectic criterion and row independence.
    pub fn new(hx: BitMatrix, hz: BitMatrix) -> Result<Self> {
        let rank = hx.hstack(&hz).rank();
        Qpcm::with_rank_witness(hx, hz, rank, false)
    }

    /// Like [`Qpcm::new`] but tolerating linearly dependent rows; the
    /// logical count comes from the actual rank. Heavily doped asymmetric
    /// codes use more syndrome rows than one side has d nodes, so their
    /// generator lists are redundant by construction.
    pub fn new_redundant(hx: BitMatrix, hz: BitMatrix) -> Result<Self> {
        let rank = hx.hstack(&hz).rank();
        Qpcm::with_rank_witness(hx, hz, rank, true)
    }

    /// Constructor with the rank supplied by the caller.
    ///
    /// The code builders use this to avoid eliminating the full stacked
    /// matrix: for a layered construction M'·[H̃ 0; 0 G̃], the QPCM rank
    /// equals rank(M') because H̃ and G̃ have full row rank. The criterion
    /// is always checked on the actual QPCM.
    pub(crate) fn with_rank_witness(
        hx: BitMatrix,
        hz: BitMatrix,
        rank: usize,
        allow_redundant: bool,
    ) -> Result<Self> {
        if hx.rows() != hz.rows() || hx.cols() != hz.cols() {
            return Err(Error::dim("QPCM halves must have equal shape"));
        }
        if !check_symplectic_criterion(&hx, &hz)? {
            return Err(Error::Construction(
                "generators do not satisfy the symplectic criterion".into(),
            ));
        }
        let n_qubits = hx.cols();
        let rows = hx.rows();
        if rank != rows && !allow_redundant {
            return Err(Error::Construction(format!(
                "QPCM is rank deficient: rank {rank} < {rows} rows"
            )));
        }
        if rank > n_qubits {
            return Err(Error::dim("more independent generators than qubits"));
        }
        Ok(Qpcm {
            hx,
            hz,
            n_qubits,
            n_logical: n_qubits - rank,
        })
    }

    pub fn from_generators(gens: &[PauliString]) -> Result<Self> {
        let n = gens.first().map_or(0, PauliString::len);
        if gens.iter().any(|g| g.len() != n) {
            return Err(Error::dim("generators have unequal lengths"));
        }
        let mut hx = BitMatrix::zeros(gens.len(), n);
        let mut hz = BitMatrix::zeros(gens.len(), n);
        for (r, g) in gens.iter().enumerate() {
            let s = pauli_to_symplectic(g);
            hx.set_row(r, s.x_part());
            hz.set_row(r, s.z_part());
        }
        Qpcm::new(hx, hz)
    }

    pub fn hx(&self) -> &BitMatrix {
        &self.hx
    }

    pub fn hz(&self) -> &BitMatrix {
        &self.hz
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn n_logical(&self) -> usize {
        self.n_logical
    }

    pub fn n_generators(&self) -> usize {
        self.hx.rows()
    }

    /// Rank of the generator list (= n_qubits − n_logical).
    pub fn rank(&self) -> usize {
        self.n_qubits - self.n_logical
    }

    pub fn is_full_rank(&self) -> bool {
        self.rank() == self.n_generators()
    }

    /// Information rate k/N from the actual rank.
    pub fn rate(&self) -> f64 {
        self.n_logical as f64 / self.n_qubits as f64
    }

    pub fn generator(&self, v: usize) -> SymplecticVec {
        SymplecticVec::new(self.hx.row(v), self.hz.row(v)).expect("halves match")
    }

    /// The 2N-column matrix (H_x|H_z).
    pub fn stacked(&self) -> BitMatrix {
        self.hx.hstack(&self.hz)
    }

    /// Syndrome of an error: component v equals the symplectic product
    /// e ⊙ s_v, i.e. `w = e_z H_xᵀ ⊕ e_x H_zᵀ`.
    pub fn syndrome(&self, e: &SymplecticVec) -> Result<BitVec> {
        if e.n_qubits() != self.n_qubits {
            return Err(Error::dim(format!(
                "syndrome: error acts on {} qubits, code has {}",
                e.n_qubits(),
                self.n_qubits
            )));
        }
        let mut w = self.hz.mul_vec(e.x_part());
        w.xor_assign(&self.hx.mul_vec(e.z_part()));
        Ok(w)
    }

    pub fn fingerprint(&self) -> u64 {
        self.stacked().fingerprint()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2::pauli_to_symplectic;
    use std::str::FromStr;

    fn three_qubit() -> Qpcm {
        Qpcm::from_generators(&[
            PauliString::from_str("XYZ").unwrap(),
            PauliString::from_str("YXI").unwrap(),
        ])
        .unwrap()
    }

    fn sv(s: &str) -> SymplecticVec {
        pauli_to_symplectic(&PauliString::from_str(s).unwrap())
    }

    #[test]
    fn three_qubit_code_shape() {
        let h = three_qubit();
        assert_eq!(h.n_qubits(), 3);
        assert_eq!(h.n_logical(), 1);
        assert_eq!(h.n_generators(), 2);
    }

    #[test]
    fn syndromes_of_pure_errors() {
        let h = three_qubit();
        let w = |s: &str| h.syndrome(&sv(s)).unwrap().iter_bits().map(u8::from).collect::<Vec<_>>();
        assert_eq!(w("III"), vec![0, 0]);
        assert_eq!(w("ZII"), vec![1, 1]);
        assert_eq!(w("XII"), vec![0, 1]);
        assert_eq!(w("YII"), vec![1, 0]);
    }

    #[test]
    fn syndrome_linearity() {
        let h = three_qubit();
        for a in ["XIZ", "YYI", "IZX"] {
            for b in ["ZZY", "XXI", "IIY"] {
                let lhs = h.syndrome(&sv(a).star(&sv(b)).unwrap()).unwrap();
                let rhs = h.syndrome(&sv(a)).unwrap().xor(&h.syndrome(&sv(b)).unwrap());
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn criterion_examples() {
        // The 3-qubit example generators commute.
        let h = three_qubit();
        assert!(check_symplectic_criterion(h.hx(), h.hz()).unwrap());
        // hx = hz always passes: A Aᵀ ⊕ A Aᵀ = 0.
        let id = BitMatrix::identity(4);
        assert!(check_symplectic_criterion(&id, &id).unwrap());
        // Single row hx=(1 0), hz=(0 1): XZ-type generator commutes with itself.
        let hx = BitMatrix::from_rows(&[BitVec::from_bits(&[1, 0])]);
        let hz = BitMatrix::from_rows(&[BitVec::from_bits(&[0, 1])]);
        assert!(check_symplectic_criterion(&hx, &hz).unwrap());
        // {XI, ZX} anticommute on qubit 0: criterion fails.
        let hx = BitMatrix::from_rows(&[BitVec::from_bits(&[1, 0]), BitVec::from_bits(&[0, 1])]);
        let hz = BitMatrix::from_rows(&[BitVec::from_bits(&[0, 0]), BitVec::from_bits(&[1, 0])]);
        assert!(!check_symplectic_criterion(&hx, &hz).unwrap());
        // Shape mismatch errors out.
        assert!(check_symplectic_criterion(&BitMatrix::zeros(1, 2), &BitMatrix::zeros(2, 2)).is_err());
    }

    #[test]
    fn rejects_anticommuting_generators() {
        let r = Qpcm::from_generators(&[
            PauliString::from_str("XI").unwrap(),
            PauliString::from_str("ZX").unwrap(),
        ]);
        assert!(r.is_err());
    }

    #[test]
    fn rejects_dependent_generators() {
        let r = Qpcm::from_generators(&[
            PauliString::from_str("XYZ").unwrap(),
            PauliString::from_str("YXI").unwrap(),
            PauliString::from_str("ZZZ").unwrap(),
        ]);
        assert!(r.is_err());
    }

    #[test]
    fn nullspace_dimension_of_stacked_qpcm() {
        let h = three_qubit();
        let ns = h.stacked().nullspace_basis();
        assert_eq!(ns.rows(), 4); // 6 columns − rank 2
    }

    #[test]
    fn solve_expresses_stabilizer_element_in_generators() {
        // ZZZ = S₁ ⋆ S₂, so H_S̄ᵀ · a = β(ZZZ) has solution a = (1,1).
        let h = three_qubit();
        let target = sv("ZZZ").concat_bits();
        let sol = h.stacked().transpose().solve_augmented(&target).unwrap().unwrap();
        assert_eq!(sol.iter_bits().map(u8::from).collect::<Vec<_>>(), vec![1, 1]);
    }
}
