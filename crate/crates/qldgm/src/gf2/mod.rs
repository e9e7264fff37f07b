//! Bit-packed GF(2) linear algebra.
//!
//! Vectors and matrices pack 64 bits per machine word and implement all row
//! operations with word-wide XORs, which is what keeps the Monte Carlo inner
//! loops cheap. Gaussian elimination pivots left-to-right and always picks
//! the first nonzero row, so echelon forms, ranks and nullspace bases are
//! deterministic for a given input.

mod io;
mod pauli;
mod qpcm;

pub use io::{read_alist, read_dense, write_alist, write_dense};
pub use pauli::{pauli_to_symplectic, symplectic_to_pauli, Pauli, PauliString, SymplecticVec};
pub use qpcm::{check_symplectic_criterion, Qpcm};

use crate::{Error, Result};

const WORD_BITS: usize = 64;

fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD_BITS)
}

/// Word-scanning iterator over set bit positions.
struct Ones<'a> {
    words: std::slice::Iter<'a, u64>,
    current: u64,
    base: usize,
}

impl<'a> Ones<'a> {
    fn new(words: &'a [u64]) -> Self {
        Ones {
            words: words.iter(),
            current: 0,
            base: 0,
        }
    }
}

impl Iterator for Ones<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        while self.current == 0 {
            self.current = *self.words.next()?;
            self.base += WORD_BITS;
        }
        let tz = self.current.trailing_zeros() as usize;
        self.current &= self.current - 1;
        Some(self.base - WORD_BITS + tz)
    }
}

/// A fixed-length vector over GF(2).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        BitVec {
            len,
            words: vec![0; words_for(len)],
        }
    }

    /// Builds a vector from 0/1 entries.
    pub fn from_bits(bits: &[u8]) -> Self {
        let mut v = BitVec::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b != 0 {
                v.set(i, true);
            }
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i / WORD_BITS] >> (i % WORD_BITS)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        debug_assert!(i < self.len);
        let mask = 1u64 << (i % WORD_BITS);
        if value {
            self.words[i / WORD_BITS] |= mask;
        } else {
            self.words[i / WORD_BITS] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        self.words[i / WORD_BITS] ^= 1u64 << (i % WORD_BITS);
    }

    /// XORs `other` into `self`. Lengths must match.
    pub fn xor_assign(&mut self, other: &BitVec) {
        assert_eq!(self.len, other.len, "BitVec length mismatch in xor");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn xor(&self, other: &BitVec) -> BitVec {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    /// Standard mod-2 inner product.
    pub fn dot(&self, other: &BitVec) -> u8 {
        assert_eq!(self.len, other.len, "BitVec length mismatch in dot");
        let mut acc = 0u32;
        for (a, b) in self.words.iter().zip(&other.words) {
            acc ^= (a & b).count_ones();
        }
        (acc & 1) as u8
    }

    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        Ones::new(&self.words)
    }

    pub fn iter_bits(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    /// Concatenates `self` followed by `other`.
    pub fn concat(&self, other: &BitVec) -> BitVec {
        let mut out = BitVec::zeros(self.len + other.len);
        for i in self.iter_ones() {
            out.set(i, true);
        }
        for i in other.iter_ones() {
            out.set(self.len + i, true);
        }
        out
    }

    /// Splits at `mid` into two vectors.
    pub fn split_at(&self, mid: usize) -> (BitVec, BitVec) {
        assert!(mid <= self.len);
        let mut lo = BitVec::zeros(mid);
        let mut hi = BitVec::zeros(self.len - mid);
        for i in self.iter_ones() {
            if i < mid {
                lo.set(i, true);
            } else {
                hi.set(i - mid, true);
            }
        }
        (lo, hi)
    }

    pub(crate) fn words(&self) -> &[u64] {
        &self.words
    }
}

impl std::fmt::Debug for BitVec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for i in 0..self.len {
            write!(f, "{}", if self.get(i) { '1' } else { '0' })?;
        }
        Ok(())
    }
}

/// A dense row-major matrix over GF(2).
#[derive(Clone, PartialEq, Eq)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    stride: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = words_for(cols).max(1);
        BitMatrix {
            rows,
            cols,
            stride,
            data: vec![0; rows * stride],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = BitMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_rows(rows: &[BitVec]) -> Self {
        let cols = rows.first().map_or(0, BitVec::len);
        let mut m = BitMatrix::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged rows");
            m.row_words_mut(i).copy_from_slice(r.words());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        debug_assert!(r < self.rows && c < self.cols);
        (self.data[r * self.stride + c / WORD_BITS] >> (c % WORD_BITS)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        debug_assert!(r < self.rows && c < self.cols);
        let mask = 1u64 << (c % WORD_BITS);
        let w = &mut self.data[r * self.stride + c / WORD_BITS];
        if value {
            *w |= mask;
        } else {
            *w &= !mask;
        }
    }

    fn row_words(&self, r: usize) -> &[u64] {
        &self.data[r * self.stride..(r + 1) * self.stride]
    }

    fn row_words_mut(&mut self, r: usize) -> &mut [u64] {
        &mut self.data[r * self.stride..(r + 1) * self.stride]
    }

    pub fn row(&self, r: usize) -> BitVec {
        BitVec {
            len: self.cols,
            words: self.row_words(r).to_vec(),
        }
    }

    pub fn set_row(&mut self, r: usize, v: &BitVec) {
        assert_eq!(v.len(), self.cols);
        self.row_words_mut(r).copy_from_slice(v.words());
    }

    pub fn row_weight(&self, r: usize) -> usize {
        self.row_words(r).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn col_weight(&self, c: usize) -> usize {
        (0..self.rows).filter(|&r| self.get(r, c)).count()
    }

    pub fn iter_row_ones(&self, r: usize) -> impl Iterator<Item = usize> + '_ {
        Ones::new(self.row_words(r))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    fn xor_row_into(&mut self, src: usize, dst: usize) {
        let (a, b) = if src < dst {
            let (lo, hi) = self.data.split_at_mut(dst * self.stride);
            (&lo[src * self.stride..src * self.stride + self.stride], &mut hi[..self.stride])
        } else {
            let (lo, hi) = self.data.split_at_mut(src * self.stride);
            (&hi[..self.stride], &mut lo[dst * self.stride..dst * self.stride + self.stride])
        };
        for (d, s) in b.iter_mut().zip(a) {
            *d ^= s;
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for k in 0..self.stride {
            self.data.swap(a * self.stride + k, b * self.stride + k);
        }
    }

    /// Matrix product over GF(2): `self (r x k) * other (k x c)`.
    pub fn mul(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(self.cols, other.rows, "matmul dimension mismatch");
        let mut out = BitMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in Ones::new(self.row_words(i)) {
                let src = other.row_words(j);
                for (d, s) in out.data[i * out.stride..(i + 1) * out.stride]
                    .iter_mut()
                    .zip(src)
                {
                    *d ^= s;
                }
            }
        }
        out
    }

    /// `self (r x k) * otherᵀ` where `other` is `c x k`.
    pub fn mul_transpose(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(self.cols, other.cols, "mul_transpose dimension mismatch");
        let mut out = BitMatrix::zeros(self.rows, other.rows);
        for i in 0..self.rows {
            let a = self.row_words(i);
            for j in 0..other.rows {
                let mut acc = 0u32;
                for (x, y) in a.iter().zip(other.row_words(j)) {
                    acc ^= (x & y).count_ones();
                }
                if acc & 1 == 1 {
                    out.set(i, j, true);
                }
            }
        }
        out
    }

    /// Matrix-vector product `self * xᵀ`, returning a length-`rows` vector.
    pub fn mul_vec(&self, x: &BitVec) -> BitVec {
        assert_eq!(self.cols, x.len(), "mul_vec dimension mismatch");
        let mut out = BitVec::zeros(self.rows);
        for i in 0..self.rows {
            let mut acc = 0u32;
            for (a, b) in self.row_words(i).iter().zip(x.words()) {
                acc ^= (a & b).count_ones();
            }
            if acc & 1 == 1 {
                out.set(i, true);
            }
        }
        out
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut out = BitMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in Ones::new(self.row_words(r)) {
                out.set(c, r, true);
            }
        }
        out
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(self.rows, other.rows, "hstack row mismatch");
        let mut out = BitMatrix::zeros(self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in self.iter_row_ones(r) {
                out.set(r, c, true);
            }
            for c in other.iter_row_ones(r) {
                out.set(r, self.cols + c, true);
            }
        }
        out
    }

    /// Vertical concatenation `[self; other]`.
    pub fn vstack(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(self.cols, other.cols, "vstack column mismatch");
        let mut out = BitMatrix::zeros(self.rows + other.rows, self.cols);
        for r in 0..self.rows {
            out.row_words_mut(r).copy_from_slice(self.row_words(r));
        }
        for r in 0..other.rows {
            out.row_words_mut(self.rows + r).copy_from_slice(other.row_words(r));
        }
        out
    }

    /// Reduced row echelon form. Returns the reduced matrix together with
    /// the pivot column of every nonzero row.
    pub fn row_echelon(&self) -> (BitMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut next_row = 0;
        for col in 0..m.cols {
            if next_row >= m.rows {
                break;
            }
            let pivot = (next_row..m.rows).find(|&r| m.get(r, col));
            let Some(pivot) = pivot else { continue };
            m.swap_rows(next_row, pivot);
            for r in 0..m.rows {
                if r != next_row && m.get(r, col) {
                    m.xor_row_into(next_row, r);
                }
            }
            pivots.push(col);
            next_row += 1;
        }
        (m, pivots)
    }

    /// Matrix rank. Weight-1 rows pivot immediately before the general
    /// elimination, which keeps this cheap for doped matrices where a
    /// large fraction of rows has a single entry.
    pub fn rank(&self) -> usize {
        let mut unit_cols = vec![false; self.cols];
        let mut unit_rank = 0usize;
        let mut rest: Vec<Vec<u64>> = Vec::new();
        for r in 0..self.rows {
            if self.row_weight(r) == 1 {
                let c = Ones::new(self.row_words(r)).next().unwrap();
                if !unit_cols[c] {
                    unit_cols[c] = true;
                    unit_rank += 1;
                }
            } else {
                rest.push(self.row_words(r).to_vec());
            }
        }
        // Clear the unit-pivot columns from every remaining row.
        let mut mask = vec![!0u64; self.stride];
        for (c, &is_unit) in unit_cols.iter().enumerate() {
            if is_unit {
                mask[c / WORD_BITS] &= !(1u64 << (c % WORD_BITS));
            }
        }
        for row in rest.iter_mut() {
            for (w, m) in row.iter_mut().zip(&mask) {
                *w &= m;
            }
        }
        // Forward elimination on the residue.
        let mut rank = unit_rank;
        let mut next = 0usize;
        for col in 0..self.cols {
            if unit_cols[col] || next >= rest.len() {
                continue;
            }
            let wi = col / WORD_BITS;
            let bit = 1u64 << (col % WORD_BITS);
            let Some(pivot) = (next..rest.len()).find(|&r| rest[r][wi] & bit != 0) else {
                continue;
            };
            rest.swap(next, pivot);
            let (pivot_row, tail) = {
                let (head, tail) = rest.split_at_mut(next + 1);
                (&head[next], tail)
            };
            for row in tail.iter_mut() {
                if row[wi] & bit != 0 {
                    for (w, p) in row.iter_mut().zip(pivot_row) {
                        *w ^= p;
                    }
                }
            }
            rank += 1;
            next += 1;
        }
        rank
    }

    /// Basis for the right nullspace: rows `b` with `self * bᵀ = 0`.
    /// The basis has `cols - rank` rows and is deterministic.
    pub fn nullspace_basis(&self) -> BitMatrix {
        let (rref, pivots) = self.row_echelon();
        let pivot_set: Vec<Option<usize>> = {
            let mut v = vec![None; self.cols];
            for (row, &col) in pivots.iter().enumerate() {
                v[col] = Some(row);
            }
            v
        };
        let free_cols: Vec<usize> =
            (0..self.cols).filter(|&c| pivot_set[c].is_none()).collect();
        let mut basis = BitMatrix::zeros(free_cols.len(), self.cols);
        for (k, &f) in free_cols.iter().enumerate() {
            basis.set(k, f, true);
            for (row, &pc) in pivots.iter().enumerate() {
                if rref.get(row, f) {
                    basis.set(k, pc, true);
                }
            }
        }
        basis
    }

    /// Solves `self * x = v` by elimination on the augmented matrix.
    /// Returns a particular solution (free variables set to zero), or
    /// `None` when the system is inconsistent.
    pub fn solve_augmented(&self, v: &BitVec) -> Result<Option<BitVec>> {
        if v.len() != self.rows {
            return Err(Error::dim(format!(
                "solve_augmented: rhs length {} != rows {}",
                v.len(),
                self.rows
            )));
        }
        let mut aug = self.hstack(&BitMatrix::from_rows(
            &(0..self.rows)
                .map(|r| BitVec::from_bits(&[v.get(r) as u8]))
                .collect::<Vec<_>>(),
        ));
        let (rref, pivots) = {
            let (m, p) = aug.row_echelon();
            aug = m;
            (&aug, p)
        };
        // A pivot in the augmented column means no solution.
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = BitVec::zeros(self.cols);
        for (row, &col) in pivots.iter().enumerate() {
            if rref.get(row, self.cols) {
                x.set(col, true);
            }
        }
        Ok(Some(x))
    }

    /// FNV-1a content hash, stable across runs; used to fingerprint codes.
    pub fn fingerprint(&self) -> u64 {
        let mut h = 0xcbf29ce484222325u64;
        let mut mix = |x: u64| {
            for b in x.to_le_bytes() {
                h ^= b as u64;
                h = h.wrapping_mul(0x100000001b3);
            }
        };
        mix(self.rows as u64);
        mix(self.cols as u64);
        for r in 0..self.rows {
            for &w in self.row_words(r) {
                mix(w);
            }
        }
        h
    }
}

impl std::fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "BitMatrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "{:?}", self.row(r))?;
        }
        Ok(())
    }
}
