//! Construction of classical LDGM codes, doped M matrices, and CSS /
//! non-CSS / asymmetric-CSS quantum codes.
//!
//! All builders are deterministic functions of the RNG handed to them, and
//! every emitted quantum code has been validated against the symplectic
//! criterion and checked for full row rank.

mod graph;

pub use graph::{build_factor_graph, FactorGraph, SNodeKind};

use crate::gf2::{check_symplectic_criterion, BitMatrix, Qpcm};
use crate::{Error, Result};
use rand::seq::SliceRandom;
use rand::Rng;

const EDGE_ASSIGN_RETRIES: usize = 12;
const SWAP_ATTEMPTS_PER_DUP: usize = 200;

/// A systematic LDGM code with generator (I P) and parity-check (Pᵀ I).
#[derive(Debug, Clone)]
pub struct LdgmCode {
    p: BitMatrix,
}

impl LdgmCode {
    pub fn from_p(p: BitMatrix) -> Result<Self> {
        if p.rows() != p.cols() {
            return Err(Error::Construction(format!(
                "P must be square, got {}x{}",
                p.rows(),
                p.cols()
            )));
        }
        Ok(LdgmCode { p })
    }

    /// Side length of P; the classical block length is 2n.
    pub fn n(&self) -> usize {
        self.p.rows()
    }

    pub fn p_matrix(&self) -> &BitMatrix {
        &self.p
    }

    /// Generator G̃ = (I P), n x 2n.
    pub fn generator(&self) -> BitMatrix {
        BitMatrix::identity(self.n()).hstack(&self.p)
    }

    /// Parity-check H̃ = (Pᵀ I), n x 2n.
    pub fn pcm(&self) -> BitMatrix {
        self.p.transpose().hstack(&BitMatrix::identity(self.n()))
    }
}

/// Builds an n x n matrix with all row and column weights equal to
/// `degree`, as a union of `degree` disjoint random permutations.
pub fn build_regular_p<R: Rng + ?Sized>(n: usize, degree: usize, rng: &mut R) -> Result<BitMatrix> {
    if degree == 0 || degree > n {
        return Err(Error::Construction(format!(
            "regular P({degree},{degree}) infeasible for n = {n}"
        )));
    }
    let mut m = BitMatrix::zeros(n, n);
    let mut perm: Vec<usize> = (0..n).collect();
    for _ in 0..degree {
        let mut placed = false;
        'redraw: for _ in 0..EDGE_ASSIGN_RETRIES {
            perm.shuffle(rng);
            // Repair collisions with already-placed permutations by
            // transpositions instead of redrawing the whole permutation.
            for _ in 0..EDGE_ASSIGN_RETRIES {
                let collisions: Vec<usize> = (0..n).filter(|&i| m.get(i, perm[i])).collect();
                if collisions.is_empty() {
                    for i in 0..n {
                        m.set(i, perm[i], true);
                    }
                    placed = true;
                    break 'redraw;
                }
                let mut progressed = false;
                for &i in &collisions {
                    for _ in 0..SWAP_ATTEMPTS_PER_DUP {
                        let j = rng.random_range(0..n);
                        if j != i && !m.get(i, perm[j]) && !m.get(j, perm[i]) {
                            perm.swap(i, j);
                            progressed = true;
                            break;
                        }
                    }
                }
                if !progressed {
                    continue 'redraw;
                }
            }
        }
        if !placed {
            return Err(Error::Construction(format!(
                "could not place disjoint permutation for P({degree},{degree}), n = {n}"
            )));
        }
    }
    Ok(m)
}

/// Builds the parallel concatenation of two sparse codes: P₁ is regular
/// (y₁,y₁) and P₂ carries row weight y₂ with its edges concentrated on
/// columns of weight z₂. The LDGM code uses the n x n product P₁P₂.
pub fn build_parallel_p<R: Rng + ?Sized>(
    n: usize,
    d1: (usize, usize),
    d2: (usize, usize),
    rng: &mut R,
) -> Result<LdgmCode> {
    if d1.0 != d1.1 {
        return Err(Error::Construction(format!(
            "first concatenated code must be regular, got ({},{})",
            d1.0, d1.1
        )));
    }
    let (y2, z2) = d2;
    if y2 == 0 || z2 == 0 {
        return Err(Error::Construction("second code degrees must be positive".into()));
    }
    let p1 = build_regular_p(n, d1.0, rng)?;
    // Column degree sequence for P₂: as many z₂-weight columns as the edge
    // budget n·y₂ allows, one remainder column, the rest empty.
    let total = n * y2;
    let full = total / z2;
    let rem = total % z2;
    if full + usize::from(rem > 0) > n || y2 > full + usize::from(rem > 0) {
        return Err(Error::Construction(format!(
            "P₂ degrees ({y2},{z2}) infeasible for n = {n}"
        )));
    }
    let mut col_degrees = vec![0usize; n];
    let mut cols: Vec<usize> = (0..n).collect();
    cols.shuffle(rng);
    for (k, &c) in cols.iter().enumerate() {
        if k < full {
            col_degrees[c] = z2;
        } else if k == full && rem > 0 {
            col_degrees[c] = rem;
        }
    }
    let rows = assign_edges(&vec![y2; n], &col_degrees, rng)?;
    let mut p2 = BitMatrix::zeros(n, n);
    for (r, cols) in rows.iter().enumerate() {
        for &c in cols {
            p2.set(r, c as usize, true);
        }
    }
    LdgmCode::from_p(p1.mul(&p2))
}

/// Solves the doping equation (m−t)·x + t = y·n for the s_B node degree x.
pub fn solve_doping(m: usize, n: usize, y: usize, t: usize) -> Result<f64> {
    if t >= m {
        return Err(Error::param(format!("doping requires t < m, got t = {t}, m = {m}")));
    }
    let edges = y * n;
    if edges < t {
        return Err(Error::param(format!(
            "doping infeasible: t = {t} exceeds total edge count {edges}"
        )));
    }
    Ok((edges - t) as f64 / (m - t) as f64)
}

/// An m x n matrix with degree profile (y; 1, x): t weight-1 rows (the s_A
/// nodes), the rest realizing the possibly fractional degree x, and every
/// column of weight exactly y.
#[derive(Debug, Clone)]
pub struct DopedMatrix {
    matrix: BitMatrix,
    y: usize,
    t: usize,
    x: f64,
}

impl DopedMatrix {
    pub fn matrix(&self) -> &BitMatrix {
        &self.matrix
    }

    pub fn rows(&self) -> usize {
        self.matrix.rows()
    }

    pub fn cols(&self) -> usize {
        self.matrix.cols()
    }

    pub fn y(&self) -> usize {
        self.y
    }

    /// Number of weight-1 rows; these occupy row indices 0..t.
    pub fn t(&self) -> usize {
        self.t
    }

    /// Solved s_B degree (1.0 in the degenerate all-doped case t = m).
    pub fn x(&self) -> f64 {
        self.x
    }
}

/// Builds a doped matrix for the given (m, n, y, t). The t weight-1 rows
/// land on t distinct columns (two overlapping s_A rows would be identical
/// and perfect syndrome information would be wasted). The fractional
/// degree is realized exactly: n_hi = y·n − t − (m−t)·⌊x⌋ of the s_B rows
/// carry ⌈x⌉ entries and the rest ⌊x⌋, shuffled by `rng`.
pub fn build_doped_m<R: Rng + ?Sized>(
    m: usize,
    n: usize,
    y: usize,
    t: usize,
    rng: &mut R,
) -> Result<DopedMatrix> {
    let edges = y * n;
    if t > n {
        return Err(Error::param(format!(
            "doping t = {t} exceeds the {n} available d nodes"
        )));
    }
    let x = if t == m {
        if edges != m {
            return Err(Error::param(format!(
                "t = m = {m} requires y·n = m, got y·n = {edges}"
            )));
        }
        1.0
    } else {
        solve_doping(m, n, y, t)?
    };
    if x < 1.0 - 1e-12 {
        return Err(Error::param(format!(
            "doping solution x = {x:.3} below 1; too many syndrome rows"
        )));
    }
    let floor = x.floor() as usize;
    let n_hi = edges - t - (m - t) * floor;
    if floor.max(floor + usize::from(n_hi > 0)) > n {
        return Err(Error::param(format!("s_B degree {x:.2} exceeds column count {n}")));
    }
    let mut sb_degrees = vec![floor + 1; n_hi];
    sb_degrees.resize(m - t, floor);
    sb_degrees.shuffle(rng);

    let unit_cols: Vec<usize> = {
        let mut cols: Vec<usize> = (0..n).collect();
        cols.shuffle(rng);
        cols.truncate(t);
        cols
    };
    let mut col_degrees = vec![y; n];
    for &c in &unit_cols {
        col_degrees[c] -= 1;
    }
    let assignment = assign_edges(&sb_degrees, &col_degrees, rng)?;
    let assignment = reduce_four_cycles(assignment, rng);
    let mut matrix = BitMatrix::zeros(m, n);
    for (r, &c) in unit_cols.iter().enumerate() {
        matrix.set(r, c, true);
    }
    for (r, cols) in assignment.iter().enumerate() {
        for &c in cols {
            matrix.set(t + r, c as usize, true);
        }
    }
    Ok(DopedMatrix { matrix, y, t, x })
}

/// Deals a shuffled stub list (column c appearing col_degrees[c] times)
/// into rows and repairs duplicate entries with bounded random swaps.
fn assign_edges<R: Rng + ?Sized>(
    row_degrees: &[usize],
    col_degrees: &[usize],
    rng: &mut R,
) -> Result<Vec<Vec<u32>>> {
    let total: usize = row_degrees.iter().sum();
    if total != col_degrees.iter().sum::<usize>() {
        return Err(Error::Construction("edge ledger mismatch between rows and columns".into()));
    }
    let nonzero_cols = col_degrees.iter().filter(|&&d| d > 0).count();
    if row_degrees.iter().any(|&d| d > nonzero_cols) {
        return Err(Error::Construction("a row degree exceeds the available columns".into()));
    }
    let mut stubs: Vec<u32> = Vec::with_capacity(total);
    for (c, &d) in col_degrees.iter().enumerate() {
        stubs.extend(std::iter::repeat_n(c as u32, d));
    }
    let row_of_stub: Vec<u32> = {
        let mut v = Vec::with_capacity(total);
        for (r, &d) in row_degrees.iter().enumerate() {
            v.extend(std::iter::repeat_n(r as u32, d));
        }
        v
    };
    'attempt: for _ in 0..EDGE_ASSIGN_RETRIES {
        stubs.shuffle(rng);
        // Repair pass: swap duplicated stubs with random positions.
        let mut offsets = vec![0usize; row_degrees.len() + 1];
        for (r, &d) in row_degrees.iter().enumerate() {
            offsets[r + 1] = offsets[r] + d;
        }
        let row_slice = |stubs: &[u32], r: usize| stubs[offsets[r]..offsets[r + 1]].to_vec();
        for r in 0..row_degrees.len() {
            let mut guard = 0usize;
            while has_duplicate(&row_slice(&stubs, r)) {
                guard += 1;
                if guard > SWAP_ATTEMPTS_PER_DUP * row_degrees[r].max(1) {
                    continue 'attempt;
                }
                let dup_pos = duplicate_position(&stubs[offsets[r]..offsets[r + 1]]) + offsets[r];
                let other = rng.random_range(0..total);
                let (or, _) = (row_of_stub[other], ());
                if or as usize == r {
                    continue;
                }
                // The swap must not introduce duplicates in either row.
                let a = stubs[dup_pos];
                let b = stubs[other];
                if a == b {
                    continue;
                }
                let row_r = &stubs[offsets[r]..offsets[r + 1]];
                let row_o = &stubs[offsets[or as usize]..offsets[or as usize + 1]];
                if row_r.contains(&b) || row_o.contains(&a) {
                    continue;
                }
                stubs.swap(dup_pos, other);
            }
        }
        let mut out = Vec::with_capacity(row_degrees.len());
        for r in 0..row_degrees.len() {
            let mut cols = row_slice(&stubs, r);
            cols.sort_unstable();
            out.push(cols);
        }
        return Ok(out);
    }
    Err(Error::Construction("edge assignment failed after bounded retries".into()))
}

fn has_duplicate(sorted_or_small: &[u32]) -> bool {
    let mut v = sorted_or_small.to_vec();
    v.sort_unstable();
    v.windows(2).any(|w| w[0] == w[1])
}

fn duplicate_position(row: &[u32]) -> usize {
    for i in 0..row.len() {
        for j in 0..i {
            if row[i] == row[j] {
                return i;
            }
        }
    }
    unreachable!("caller checked has_duplicate");
}

/// Best-effort 4-cycle reduction inside a single M matrix: a pair of rows
/// sharing two columns is broken up by swapping one of the offending edges
/// with a random edge elsewhere. Single pass, failures are tolerated.
fn reduce_four_cycles<R: Rng + ?Sized>(mut rows: Vec<Vec<u32>>, rng: &mut R) -> Vec<Vec<u32>> {
    use std::collections::HashMap;
    let mut pair_seen: HashMap<(u32, u32), usize> = HashMap::new();
    let n_rows = rows.len();
    for r in 0..n_rows {
        let mut bad_entry: Option<u32> = None;
        for i in 0..rows[r].len() {
            for j in 0..i {
                let key = (rows[r][j], rows[r][i]);
                if let Some(&_first) = pair_seen.get(&key) {
                    bad_entry = Some(rows[r][i]);
                } else {
                    pair_seen.insert(key, r);
                }
            }
        }
        let Some(col) = bad_entry else { continue };
        for _ in 0..20 {
            let or = rng.random_range(0..n_rows);
            if or == r || rows[or].is_empty() {
                continue;
            }
            let oi = rng.random_range(0..rows[or].len());
            let other_col = rows[or][oi];
            if other_col == col || rows[r].contains(&other_col) || rows[or].contains(&col) {
                continue;
            }
            let pos = rows[r].iter().position(|&c| c == col).unwrap();
            rows[r][pos] = other_col;
            rows[or][oi] = col;
            rows[r].sort_unstable();
            rows[or].sort_unstable();
            break;
        }
    }
    rows
}

/// An LDGM-based CSS code: QPCM rows are M₁H̃ (detecting X errors through
/// their Z-type generators) followed by M₂G̃ (detecting Z errors).
#[derive(Debug, Clone)]
pub struct CssCode {
    ldgm: LdgmCode,
    m1: DopedMatrix,
    m2: DopedMatrix,
    qpcm: Qpcm,
}

impl CssCode {
    pub fn ldgm(&self) -> &LdgmCode {
        &self.ldgm
    }

    pub fn m1(&self) -> &DopedMatrix {
        &self.m1
    }

    pub fn m2(&self) -> &DopedMatrix {
        &self.m2
    }

    pub fn qpcm(&self) -> &Qpcm {
        &self.qpcm
    }

    pub fn n_qubits(&self) -> usize {
        self.qpcm.n_qubits()
    }

    /// Quantum rate (N − m₁ − m₂)/N, counting syndrome rows. This matches
    /// the information rate except for heavily doped asymmetric codes,
    /// whose redundant generators make k = N − rank larger.
    pub fn rate(&self) -> f64 {
        let n = self.n_qubits() as f64;
        (n - self.m1.rows() as f64 - self.m2.rows() as f64) / n
    }
}

/// Assembles a CSS code out of an LDGM code and two doped matrices. The
/// symplectic criterion is guaranteed by G̃H̃ᵀ = 0 but still asserted.
pub fn assemble_css(ldgm: LdgmCode, m1: DopedMatrix, m2: DopedMatrix) -> Result<CssCode> {
    let n = ldgm.n();
    if m1.cols() != n || m2.cols() != n {
        return Err(Error::dim(format!(
            "M matrices must have {} columns (N/2), got {} and {}",
            n,
            m1.cols(),
            m2.cols()
        )));
    }
    let big_n = 2 * n;
    let h = m1.matrix().mul(&ldgm.pcm());
    let g = m2.matrix().mul(&ldgm.generator());
    let hz = h.vstack(&BitMatrix::zeros(m2.rows(), big_n));
    let hx = BitMatrix::zeros(m1.rows(), big_n).vstack(&g);
    // The two row blocks occupy disjoint halves, so the QPCM rank is
    // rank(M₁) + rank(M₂). A side with more syndrome rows than d nodes is
    // redundant by construction and only required to reach maximal rank.
    let rank = m1.matrix().rank() + m2.matrix().rank();
    let redundant = m1.rows() > n || m2.rows() > n;
    let qpcm = Qpcm::with_rank_witness(hx, hz, rank, redundant)?;
    Ok(CssCode { ldgm, m1, m2, qpcm })
}

const RANK_REDRAWS: usize = 10;

/// Draws a doped matrix of maximal rank min(m, n), redrawing on deficiency.
fn full_rank_doped_m<R: Rng + ?Sized>(
    m: usize,
    n: usize,
    y: usize,
    t: usize,
    rng: &mut R,
) -> Result<DopedMatrix> {
    let target = m.min(n);
    for _ in 0..RANK_REDRAWS {
        let dm = build_doped_m(m, n, y, t, rng)?;
        if dm.matrix().rank() == target {
            return Ok(dm);
        }
    }
    Err(Error::Construction(format!(
        "doped matrix ({m},{n},{y},{t}) rank deficient after {RANK_REDRAWS} draws"
    )))
}

/// Convenience: symmetric CSS code with M₁ and M₂ drawn from the same
/// (m, t, y) configuration.
pub fn assemble_symmetric_css<R: Rng + ?Sized>(
    ldgm: LdgmCode,
    m: usize,
    t: usize,
    y: usize,
    rng: &mut R,
) -> Result<CssCode> {
    let n = ldgm.n();
    let m1 = full_rank_doped_m(m, n, y, t, rng)?;
    let m2 = full_rank_doped_m(m, n, y, t, rng)?;
    assemble_css(ldgm, m1, m2)
}

/// Per-side doping configuration for the asymmetric construction.
#[derive(Debug, Clone, Copy)]
pub struct DopingConfig {
    pub m: usize,
    pub t: usize,
    pub y: usize,
}

/// Asymmetric CSS code: M₁ (bit-flip side) and M₂ (phase-flip side) built
/// from different configurations. With equal configurations this is the
/// symmetric assembly.
pub fn assemble_asymmetric_css<R: Rng + ?Sized>(
    ldgm: LdgmCode,
    cfg1: DopingConfig,
    cfg2: DopingConfig,
    rng: &mut R,
) -> Result<CssCode> {
    let n = ldgm.n();
    let m1 = full_rank_doped_m(cfg1.m, n, cfg1.y, cfg1.t, rng)?;
    let m2 = full_rank_doped_m(cfg2.m, n, cfg2.y, cfg2.t, rng)?;
    assemble_css(ldgm, m1, m2)
}

/// Non-CSS construction method.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NonCssMethod {
    /// Syndrome node combination: q s_A nodes gain a cross edge.
    One,
    /// Combination plus removal of the q partner s_A nodes.
    Two,
}

/// A non-CSS code derived from a CSS starting point by converting q s_A
/// nodes into degree-2 s_C nodes bridging the X and Z subgraphs.
#[derive(Debug, Clone)]
pub struct NonCssCode {
    ldgm: LdgmCode,
    md_left: BitMatrix,
    md_right: BitMatrix,
    kinds: Vec<SNodeKind>,
    q: usize,
    method: NonCssMethod,
    base_rows: usize,
    qpcm: Qpcm,
}

impl NonCssCode {
    pub fn ldgm(&self) -> &LdgmCode {
        &self.ldgm
    }

    pub fn qpcm(&self) -> &Qpcm {
        &self.qpcm
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn method(&self) -> NonCssMethod {
        self.method
    }

    pub fn n_qubits(&self) -> usize {
        self.qpcm.n_qubits()
    }

    /// Quantum rate (N − (2m − q))/N, counting syndrome rows.
    pub fn rate(&self) -> f64 {
        let n = self.n_qubits() as f64;
        (n - self.md_left.rows() as f64) / n
    }

    /// Rate gained over the CSS starting point: q/N.
    pub fn rate_increase(&self) -> f64 {
        self.q as f64 / self.n_qubits() as f64
    }

    /// The relative form q/(N − 2m) printed in the reference material;
    /// reported alongside [`Self::rate_increase`], never mixed with it.
    pub fn rate_increase_relative(&self) -> f64 {
        self.q as f64 / (self.n_qubits() as f64 - self.base_rows as f64)
    }

    /// The combined upper-layer matrix M'_d of shape rows x N.
    pub fn md_prime(&self) -> BitMatrix {
        self.md_left.hstack(&self.md_right)
    }

    pub(crate) fn md_left(&self) -> &BitMatrix {
        &self.md_left
    }

    pub(crate) fn md_right(&self) -> &BitMatrix {
        &self.md_right
    }

    pub(crate) fn kinds(&self) -> &[SNodeKind] {
        &self.kinds
    }
}

/// Derives a non-CSS code from a CSS base. Method 1 converts q s_A nodes
/// (half per side) into s_C nodes whose new edge targets a d_A node on the
/// opposite side; method 2 additionally removes the q partner s_A nodes
/// attached to the targeted d_A nodes.
pub fn assemble_noncss<R: Rng + ?Sized>(
    base: &CssCode,
    q: usize,
    method: NonCssMethod,
    rng: &mut R,
) -> Result<NonCssCode> {
    let mut last = None;
    for _ in 0..RANK_REDRAWS {
        match try_assemble_noncss(base, q, method, rng) {
            Ok(code) => return Ok(code),
            Err(e @ Error::Construction(_)) => last = Some(e),
            Err(e) => return Err(e),
        }
    }
    Err(last.unwrap_or_else(|| Error::Construction("non-CSS assembly failed".into())))
}

fn try_assemble_noncss<R: Rng + ?Sized>(
    base: &CssCode,
    q: usize,
    method: NonCssMethod,
    rng: &mut R,
) -> Result<NonCssCode> {
    if q % 2 != 0 {
        return Err(Error::param(format!("q must be even, got {q}")));
    }
    let n = base.ldgm.n();
    let half = q / 2;
    let (t1, t2) = (base.m1.t(), base.m2.t());
    // Each side supplies half the s_C conversions and half the partner
    // targets, so both must fit inside that side's s_A budget.
    if half * 2 > t1 || half * 2 > t2 {
        return Err(Error::param(format!(
            "q = {q} too large for doping t₁ = {t1}, t₂ = {t2}"
        )));
    }

    let pick = |rng: &mut R, pool: &[usize], amount: usize| -> Vec<usize> {
        let mut v = pool.to_vec();
        v.shuffle(rng);
        v.truncate(amount);
        v
    };

    // Converted s_A rows per side.
    let conv1 = pick(rng, &(0..t1).collect::<Vec<_>>(), half);
    let conv2 = pick(rng, &(0..t2).collect::<Vec<_>>(), half);

    // Partner s_A rows on the opposite side of each conversion. Partners
    // are unconverted, and their d columns are pairwise distinct so no d
    // node carries two cross edges.
    let partners = |rng: &mut R, t: usize, conv: &[usize], m: &BitMatrix| -> Result<Vec<usize>> {
        let mut by_col: Vec<usize> = Vec::new();
        let mut seen = std::collections::HashSet::new();
        let mut rows: Vec<usize> = (0..t).filter(|r| !conv.contains(r)).collect();
        rows.shuffle(rng);
        for r in rows {
            if by_col.len() == half {
                break;
            }
            let col = m.iter_row_ones(r).next().expect("s_A row has one entry");
            if seen.insert(col) {
                by_col.push(r);
            }
        }
        if by_col.len() < half {
            return Err(Error::param(format!(
                "not enough distinct d_A targets for q = {q}"
            )));
        }
        Ok(by_col)
    };
    // Partners on side 2 serve the conversions from side 1 and vice versa.
    let partners2 = partners(rng, t2, &conv2, base.m2.matrix())?;
    let partners1 = partners(rng, t1, &conv1, base.m1.matrix())?;

    let (m1_rows, m2_rows) = (base.m1.rows(), base.m2.rows());
    let removed: std::collections::HashSet<usize> = match method {
        NonCssMethod::One => Default::default(),
        NonCssMethod::Two => partners1
            .iter()
            .map(|&r| r)
            .chain(partners2.iter().map(|&r| m1_rows + r))
            .collect(),
    };

    let cross_left: std::collections::HashMap<usize, usize> = conv1
        .iter()
        .zip(&partners2)
        .map(|(&row, &p)| {
            let col = base.m2.matrix().iter_row_ones(p).next().unwrap();
            (row, col)
        })
        .collect();
    let cross_right: std::collections::HashMap<usize, usize> = conv2
        .iter()
        .zip(&partners1)
        .map(|(&row, &p)| {
            let col = base.m1.matrix().iter_row_ones(p).next().unwrap();
            (m1_rows + row, col)
        })
        .collect();

    let total_rows = m1_rows + m2_rows - removed.len();
    let mut md_left = BitMatrix::zeros(total_rows, n);
    let mut md_right = BitMatrix::zeros(total_rows, n);
    let mut kinds = Vec::with_capacity(total_rows);
    let mut out = 0usize;
    for global in 0..m1_rows + m2_rows {
        if removed.contains(&global) {
            continue;
        }
        let (side_m, local, left_side) = if global < m1_rows {
            (base.m1.matrix(), global, true)
        } else {
            (base.m2.matrix(), global - m1_rows, false)
        };
        let dst = if left_side { &mut md_left } else { &mut md_right };
        for c in side_m.iter_row_ones(local) {
            dst.set(out, c, true);
        }
        let mut kind = if left_side {
            if local < t1 {
                SNodeKind::A
            } else {
                SNodeKind::B
            }
        } else if local < t2 {
            SNodeKind::A
        } else {
            SNodeKind::B
        };
        if let Some(&col) = cross_left.get(&global) {
            md_right.set(out, col, true);
            kind = SNodeKind::C;
        }
        if let Some(&col) = cross_right.get(&global) {
            md_left.set(out, col, true);
            kind = SNodeKind::C;
        }
        kinds.push(kind);
        out += 1;
    }
    debug_assert_eq!(out, total_rows);

    let hz = md_left.mul(&base.ldgm.pcm());
    let hx = md_right.mul(&base.ldgm.generator());
    // rank(M'·[H̃ 0; 0 G̃]) = rank(M') because H̃ and G̃ have full row rank.
    let rank = md_left.hstack(&md_right).rank();
    let redundant = base.m1.rows() > n || base.m2.rows() > n;
    let qpcm = Qpcm::with_rank_witness(hx, hz, rank, redundant)?;
    Ok(NonCssCode {
        ldgm: base.ldgm.clone(),
        md_left,
        md_right,
        kinds,
        q,
        method,
        base_rows: m1_rows + m2_rows,
        qpcm,
    })
}

/// Either quantum code family emitted by this module.
#[derive(Debug, Clone)]
pub enum QuantumCode {
    Css(CssCode),
    NonCss(NonCssCode),
}

impl QuantumCode {
    pub fn qpcm(&self) -> &Qpcm {
        match self {
            QuantumCode::Css(c) => c.qpcm(),
            QuantumCode::NonCss(c) => c.qpcm(),
        }
    }

    pub fn n_qubits(&self) -> usize {
        self.qpcm().n_qubits()
    }

    pub fn rate(&self) -> f64 {
        self.qpcm().rate()
    }
}

/// Sanity helper used by tests and the CLI `inspect` report.
pub fn criterion_holds(qpcm: &Qpcm) -> bool {
    check_symplectic_criterion(qpcm.hx(), qpcm.hz()).unwrap_or(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::domain_rng;

    fn ldgm(n: usize, degree: usize, seed: u64) -> LdgmCode {
        let mut rng = domain_rng(seed, 0);
        LdgmCode::from_p(build_regular_p(n, degree, &mut rng).unwrap()).unwrap()
    }

    #[test]
    fn regular_p_degree_one_is_permutation() {
        let mut rng = domain_rng(1, 0);
        let p = build_regular_p(4, 1, &mut rng).unwrap();
        for i in 0..4 {
            assert_eq!(p.row_weight(i), 1);
            assert_eq!(p.col_weight(i), 1);
        }
    }

    #[test]
    fn regular_p_weights_exact() {
        let mut rng = domain_rng(2, 0);
        let p = build_regular_p(100, 3, &mut rng).unwrap();
        for i in 0..100 {
            assert_eq!(p.row_weight(i), 3, "row {i}");
            assert_eq!(p.col_weight(i), 3, "col {i}");
        }
    }

    #[test]
    fn regular_p_large_config_accepted() {
        // The (13,13) degree used at n = 9507 in the reference material,
        // checked here at a reduced n for speed.
        let mut rng = domain_rng(3, 0);
        let p = build_regular_p(1000, 13, &mut rng).unwrap();
        assert_eq!(p.row_weight(0), 13);
    }

    #[test]
    fn ldgm_orthogonality() {
        for (n, d, seed) in [(50, 3, 4u64), (64, 5, 5), (128, 8, 6)] {
            let code = ldgm(n, d, seed);
            assert!(code.generator().mul(&code.pcm().transpose()).is_zero());
        }
    }

    #[test]
    fn parallel_p_shapes_and_permutation_case() {
        let mut rng = domain_rng(7, 0);
        let code = build_parallel_p(60, (4, 4), (1, 1), &mut rng).unwrap();
        assert_eq!(code.p_matrix().rows(), 60);
        assert_eq!(code.p_matrix().cols(), 60);
        // (1,1) second stage permutes the columns of P₁: weights preserved.
        for i in 0..60 {
            assert_eq!(code.p_matrix().row_weight(i), 4);
            assert_eq!(code.p_matrix().col_weight(i), 4);
        }
        // The (8,8);(3,60) structure from the reference material.
        let mut rng = domain_rng(8, 0);
        let code = build_parallel_p(400, (8, 8), (3, 60), &mut rng).unwrap();
        assert_eq!(code.p_matrix().rows(), 400);
        assert!(code.generator().mul(&code.pcm().transpose()).is_zero());
    }

    #[test]
    fn doping_solutions_match_reference_values() {
        assert!((solve_doping(7131, 9507, 3, 4361).unwrap() - 8.72).abs() < 0.01);
        assert!((solve_doping(7131, 9507, 3, 5000).unwrap() - 11.04).abs() < 0.01);
        assert!((solve_doping(12262, 9507, 3, 9507).unwrap() - 6.9).abs() < 0.01);
        assert!((solve_doping(11500, 9507, 3, 9507).unwrap() - 9.54).abs() < 0.01);
        assert!(solve_doping(10, 20, 3, 10).is_err());
    }

    #[test]
    fn doped_matrix_structure() {
        let mut rng = domain_rng(9, 0);
        let m = build_doped_m(45, 50, 3, 24, &mut rng).unwrap();
        for r in 0..24 {
            assert_eq!(m.matrix().row_weight(r), 1, "s_A row {r}");
        }
        for c in 0..50 {
            assert_eq!(m.matrix().col_weight(c), 3, "column {c}");
        }
        // x = (150-24)/21 = 6 exactly here.
        assert!((m.x() - 6.0).abs() < 1e-12);
        for r in 24..45 {
            assert_eq!(m.matrix().row_weight(r), 6);
        }
    }

    #[test]
    fn doped_matrix_fractional_realization() {
        // (3;1,8.72): 72% of s_B rows at degree 9, 28% at degree 8.
        let mut rng = domain_rng(10, 0);
        let (m, n, y, t) = (713, 951, 3, 436);
        let dm = build_doped_m(m, n, y, t, &mut rng).unwrap();
        let x = dm.x();
        let hi = (y * n - t - (m - t) * x.floor() as usize) as f64;
        let count_hi = (t..m)
            .filter(|&r| dm.matrix().row_weight(r) == x.ceil() as usize)
            .count() as f64;
        assert_eq!(hi, count_hi);
        let frac_hi = count_hi / (m - t) as f64;
        assert!((frac_hi - x.fract()).abs() < 1.0 / (m - t) as f64 + 1e-9);
        for c in 0..n {
            assert_eq!(dm.matrix().col_weight(c), y);
        }
    }

    #[test]
    fn doped_matrix_fully_doped_degenerate_case() {
        let mut rng = domain_rng(11, 0);
        let m = build_doped_m(40, 40, 1, 40, &mut rng).unwrap();
        for r in 0..40 {
            assert_eq!(m.matrix().row_weight(r), 1);
        }
        for c in 0..40 {
            assert_eq!(m.matrix().col_weight(c), 1);
        }
    }

    #[test]
    fn css_rate_formula_and_criterion() {
        let mut rng = domain_rng(12, 0);
        let code = assemble_symmetric_css(ldgm(50, 3, 12), 38, 15, 3, &mut rng).unwrap();
        assert_eq!(code.n_qubits(), 100);
        assert!((code.rate() - 0.24).abs() < 1e-12);
        assert!(criterion_holds(code.qpcm()));
    }

    #[test]
    fn construction_is_seed_deterministic() {
        let build = || {
            let mut rng = domain_rng(77, 0);
            let ldgm = LdgmCode::from_p(build_regular_p(50, 3, &mut rng).unwrap()).unwrap();
            assemble_symmetric_css(ldgm, 38, 15, 3, &mut rng).unwrap()
        };
        assert_eq!(build().qpcm().fingerprint(), build().qpcm().fingerprint());
    }

    #[test]
    fn asymmetric_equal_configs_match_symmetric_path() {
        let cfg = DopingConfig { m: 38, t: 15, y: 3 };
        let a = {
            let mut rng = domain_rng(13, 0);
            assemble_asymmetric_css(ldgm(50, 3, 13), cfg, cfg, &mut rng).unwrap()
        };
        let b = {
            let mut rng = domain_rng(13, 0);
            assemble_symmetric_css(ldgm(50, 3, 13), 38, 15, 3, &mut rng).unwrap()
        };
        assert_eq!(a.qpcm().fingerprint(), b.qpcm().fingerprint());
    }

    #[test]
    fn asymmetric_css_reference_configuration() {
        // Scaled-down version of the asymmetric design: different doping
        // per side, criterion must hold and x values solve the equation.
        let mut rng = domain_rng(14, 0);
        let code = assemble_asymmetric_css(
            ldgm(200, 3, 14),
            DopingConfig { m: 60, t: 20, y: 3 },
            DopingConfig { m: 250, t: 200, y: 3 },
            &mut rng,
        )
        .unwrap();
        assert!(criterion_holds(code.qpcm()));
        assert!((code.m1().x() - solve_doping(60, 200, 3, 20).unwrap()).abs() < 1e-12);
        assert!((code.m2().x() - solve_doping(250, 200, 3, 200).unwrap()).abs() < 1e-12);
        assert!((code.rate() - (400.0 - 310.0) / 400.0).abs() < 1e-12);
    }

    #[test]
    fn noncss_rates_and_criterion() {
        let mut rng = domain_rng(15, 0);
        let base = assemble_symmetric_css(ldgm(100, 3, 15), 76, 30, 3, &mut rng).unwrap();
        let q0 = assemble_noncss(&base, 0, NonCssMethod::Two, &mut rng).unwrap();
        assert_eq!(q0.qpcm().n_generators(), 152);
        assert!((q0.rate() - base.rate()).abs() < 1e-12);

        let m1 = assemble_noncss(&base, 10, NonCssMethod::One, &mut rng).unwrap();
        assert_eq!(m1.qpcm().n_generators(), 152);
        assert!((m1.rate() - base.rate()).abs() < 1e-12);
        assert!(criterion_holds(m1.qpcm()));

        let m2 = assemble_noncss(&base, 10, NonCssMethod::Two, &mut rng).unwrap();
        assert_eq!(m2.qpcm().n_generators(), 142);
        assert!((m2.rate() - (200.0 - 142.0) / 200.0).abs() < 1e-12);
        assert!(criterion_holds(m2.qpcm()));
        assert!((m2.rate_increase() - 10.0 / 200.0).abs() < 1e-12);
        assert!((m2.rate_increase_relative() - 10.0 / 48.0).abs() < 1e-12);
    }

    #[test]
    fn noncss_rejects_bad_q() {
        let mut rng = domain_rng(16, 0);
        let base = assemble_symmetric_css(ldgm(100, 3, 16), 76, 30, 3, &mut rng).unwrap();
        assert!(assemble_noncss(&base, 3, NonCssMethod::One, &mut rng).is_err());
        assert!(assemble_noncss(&base, 40, NonCssMethod::Two, &mut rng).is_err());
    }

    #[test]
    fn noncss_method2_sa_ledger() {
        let mut rng = domain_rng(17, 0);
        let base = assemble_symmetric_css(ldgm(100, 3, 17), 76, 30, 3, &mut rng).unwrap();
        let code = assemble_noncss(&base, 8, NonCssMethod::Two, &mut rng).unwrap();
        let a = code.kinds().iter().filter(|k| **k == SNodeKind::A).count();
        let c = code.kinds().iter().filter(|k| **k == SNodeKind::C).count();
        // 2(t−q) s_A rows remain and q s_C rows exist.
        assert_eq!(a, 2 * (30 - 8));
        assert_eq!(c, 8);
    }
}
