//! Linear algebra over F2 with vectors packed into one machine word.
//!
//! Besides dot products and rank, this module holds the constructive Gram
//! factorizations: for a symmetric `M` of odd order there is always a square
//! `U` with `UᵗU = M`, and for even order there is one exactly when `M` has a
//! nonzero diagonal entry or is singular. Witnesses are stored as the list of
//! columns of `U`, i.e. one vector per row/column index of `M`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Largest vector width and matrix order supported.
pub const MAX_WIDTH: usize = 64;

/// Default cap for [`min_gram_dim_free_diag`], which scans all `2ⁿ` diagonals.
pub const DEFAULT_FREE_DIAG_LIMIT: usize = 20;

/// Default cap on `2^(n·k)` for [`realize_oracle`].
pub const DEFAULT_ORACLE_BUDGET: u64 = 1 << 26;

#[inline]
pub(crate) fn low_mask(width: usize) -> u64 {
    if width >= 64 {
        u64::MAX
    } else {
        (1u64 << width) - 1
    }
}

#[inline]
fn bit(word: u64, i: usize) -> bool {
    (word >> i) & 1 == 1
}

/// A vector in F2^width.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct BitVec {
    width: u8,
    bits: u64,
}

impl BitVec {
    /// Bits at or above `width` are cleared.
    pub fn new(width: usize, bits: u64) -> Self {
        assert!(width <= MAX_WIDTH, "BitVec width {width} exceeds {MAX_WIDTH}");
        BitVec {
            width: width as u8,
            bits: bits & low_mask(width),
        }
    }

    pub fn zeros(width: usize) -> Self {
        Self::new(width, 0)
    }

    pub fn ones(width: usize) -> Self {
        Self::new(width, u64::MAX)
    }

    pub fn width(&self) -> usize {
        self.width as usize
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn get(&self, i: usize) -> bool {
        i < self.width() && bit(self.bits, i)
    }

    pub fn weight(&self) -> u32 {
        self.bits.count_ones()
    }

    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    pub fn dot(&self, other: &BitVec) -> Result<bool> {
        dot(self, other)
    }
}

impl std::ops::BitXor for BitVec {
    type Output = BitVec;

    fn bitxor(self, rhs: BitVec) -> BitVec {
        assert_eq!(self.width, rhs.width, "xor of vectors with different widths");
        BitVec {
            width: self.width,
            bits: self.bits ^ rhs.bits,
        }
    }
}

/// Printed as a 0/1 string, coordinate 0 first.
impl fmt::Display for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.width() {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVec({self})")
    }
}

impl FromStr for BitVec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.len() > MAX_WIDTH {
            return Err(Error::TooLarge {
                what: "vector width",
                got: s.len(),
                limit: MAX_WIDTH,
            });
        }
        let mut bits = 0u64;
        for (i, c) in s.bytes().enumerate() {
            match c {
                b'0' => {}
                b'1' => bits |= 1 << i,
                _ => return Err(Error::parse(i, format!("unexpected {:?} in bit vector", c as char))),
            }
        }
        Ok(BitVec::new(s.len(), bits))
    }
}

/// Dot product over F2: parity of the shared support.
pub fn dot(u: &BitVec, v: &BitVec) -> Result<bool> {
    if u.width != v.width {
        return Err(Error::WidthMismatch {
            left: u.width(),
            right: v.width(),
        });
    }
    Ok((u.bits & v.bits).count_ones() & 1 == 1)
}

/// Rank of a list of packed row vectors.
pub fn rank_of_rows(rows: &[u64]) -> usize {
    // basis[b] holds a reduced vector whose lowest set bit is b
    let mut basis = [0u64; 64];
    let mut rank = 0;
    for &row in rows {
        let mut r = row;
        while r != 0 {
            let b = r.trailing_zeros() as usize;
            if basis[b] == 0 {
                basis[b] = r;
                rank += 1;
                break;
            }
            r ^= basis[b];
        }
    }
    rank
}

/// Mask of row indices whose rows sum to zero, if the rows are dependent.
fn row_dependency(rows: &[u64]) -> Option<u64> {
    let mut basis: [(u64, u64); 64] = [(0, 0); 64];
    for (i, &row) in rows.iter().enumerate() {
        let mut r = row;
        let mut combo = 1u64 << i;
        loop {
            if r == 0 {
                return Some(combo);
            }
            let b = r.trailing_zeros() as usize;
            let (br, bc) = basis[b];
            if br == 0 {
                basis[b] = (r, combo);
                break;
            }
            r ^= br;
            combo ^= bc;
        }
    }
    None
}

/// Symmetric matrix over F2, stored as packed rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SymMatrix {
    n: usize,
    rows: Vec<u64>,
}

impl SymMatrix {
    pub fn zeros(n: usize) -> Self {
        assert!(n <= MAX_WIDTH, "matrix order {n} exceeds {MAX_WIDTH}");
        SymMatrix { n, rows: vec![0; n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.rows[i] = 1 << i;
        }
        m
    }

    /// Every entry set, diagonal included.
    pub fn all_ones(n: usize) -> Self {
        Self {
            n,
            rows: vec![low_mask(n); n],
        }
    }

    /// Validates order and symmetry; stray bits beyond `n` are rejected.
    pub fn from_rows(rows: Vec<u64>) -> Result<Self> {
        let n = rows.len();
        if n > MAX_WIDTH {
            return Err(Error::TooLarge {
                what: "matrix order",
                got: n,
                limit: MAX_WIDTH,
            });
        }
        for (i, &r) in rows.iter().enumerate() {
            if r & !low_mask(n) != 0 {
                return Err(Error::usage(format!("row {i} has entries beyond column {n}")));
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if bit(rows[i], j) != bit(rows[j], i) {
                    return Err(Error::Asymmetric { row: i, col: j });
                }
            }
        }
        Ok(SymMatrix { n, rows })
    }

    /// Builds the matrix from its upper triangle (diagonal included), enumerated
    /// row by row; bit `t` of `code` is the `t`-th entry in that order.
    pub fn from_upper_code(n: usize, code: u64) -> Self {
        let mut m = Self::zeros(n);
        let mut t = 0;
        for i in 0..n {
            for j in i..n {
                if bit(code, t) {
                    m.set(i, j, true);
                }
                t += 1;
            }
        }
        m
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        bit(self.rows[i], j)
    }

    /// Sets both `(i, j)` and `(j, i)`.
    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        assert!(i < self.n && j < self.n);
        if value {
            self.rows[i] |= 1 << j;
            self.rows[j] |= 1 << i;
        } else {
            self.rows[i] &= !(1 << j);
            self.rows[j] &= !(1 << i);
        }
    }

    /// Diagonal as a bit mask.
    pub fn diagonal(&self) -> u64 {
        (0..self.n)
            .filter(|&i| self.get(i, i))
            .fold(0, |acc, i| acc | (1 << i))
    }

    pub fn has_nonzero_diagonal(&self) -> bool {
        self.diagonal() != 0
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|&r| r == 0)
    }

    /// Copy with the diagonal replaced by `diag`.
    pub fn with_diagonal(&self, diag: u64) -> Self {
        let mut m = self.clone();
        for i in 0..self.n {
            let r = &mut m.rows[i];
            *r = (*r & !(1 << i)) | (((diag >> i) & 1) << i);
        }
        m
    }

    pub fn rank(&self) -> usize {
        rank_of_rows(&self.rows)
    }

    /// Principal submatrix on the given indices, in the given order.
    pub fn principal(&self, indices: &[usize]) -> Self {
        let mut m = Self::zeros(indices.len());
        for (a, &i) in indices.iter().enumerate() {
            for (b, &j) in indices.iter().enumerate() {
                if self.get(i, j) {
                    m.rows[a] |= 1 << b;
                }
            }
        }
        m
    }

    /// Entry `(perm[i], perm[j])` moves to `(i, j)`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.n);
        self.principal(perm)
    }

    /// Parses the text format: order on the first line, then `n` rows of 0/1.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::usage("empty matrix file"))?;
        let n: usize = header
            .parse()
            .map_err(|_| Error::usage(format!("bad matrix order {header:?}")))?;
        if n > MAX_WIDTH {
            return Err(Error::TooLarge {
                what: "matrix order",
                got: n,
                limit: MAX_WIDTH,
            });
        }
        let mut rows = Vec::with_capacity(n);
        for i in 0..n {
            let line = lines
                .next()
                .ok_or_else(|| Error::usage(format!("expected {n} rows, found {i}")))?;
            if line.len() != n {
                return Err(Error::usage(format!(
                    "row {i} has {} entries, expected {n}",
                    line.len()
                )));
            }
            let v: BitVec = line.parse()?;
            rows.push(v.bits());
        }
        if lines.next().is_some() {
            return Err(Error::usage("trailing data after matrix rows"));
        }
        Self::from_rows(rows)
    }

    pub fn to_text(&self) -> String {
        format!("{}\n{self}", self.n)
    }
}

impl fmt::Display for SymMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &r in &self.rows {
            writeln!(f, "{}", BitVec::new(self.n, r))?;
        }
        Ok(())
    }
}

impl fmt::Debug for SymMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SymMatrix({}:", self.n)?;
        for &r in &self.rows {
            write!(f, " {}", BitVec::new(self.n, r))?;
        }
        write!(f, ")")
    }
}

/// Gram matrix of the vectors: entry `(i, j)` is `vᵢ·vⱼ`.
pub fn gram_of(vectors: &[BitVec]) -> Result<SymMatrix> {
    if let Some(first) = vectors.first() {
        if let Some(bad) = vectors.iter().find(|v| v.width != first.width) {
            return Err(Error::WidthMismatch {
                left: first.width(),
                right: bad.width(),
            });
        }
    }
    if vectors.len() > MAX_WIDTH {
        return Err(Error::TooLarge {
            what: "vector count",
            got: vectors.len(),
            limit: MAX_WIDTH,
        });
    }
    let mut m = SymMatrix::zeros(vectors.len());
    for (i, u) in vectors.iter().enumerate() {
        for (j, v) in vectors.iter().enumerate().skip(i) {
            if (u.bits & v.bits).count_ones() & 1 == 1 {
                m.set(i, j, true);
            }
        }
    }
    Ok(m)
}

/// Witness `U` with `UᵗU = target`, kept as the columns of `U`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GramFactorization {
    pub k: usize,
    pub columns: Vec<BitVec>,
    pub target: SymMatrix,
}

impl GramFactorization {
    pub fn verify(&self) -> bool {
        self.columns.len() == self.target.order()
            && self.columns.iter().all(|c| c.width() == self.k)
            && gram_of(&self.columns).is_ok_and(|g| g == self.target)
    }
}

/// Factors `M = UᵗU` with `U` square.
///
/// Odd order always succeeds. Even order succeeds exactly when `M` has a
/// nonzero diagonal entry or is singular; `None` otherwise. The returned
/// witness is checked before it is handed out.
pub fn gram_factor(m: &SymMatrix) -> Option<GramFactorization> {
    let n = m.order();
    let rows = if n % 2 == 1 {
        factor_odd(m.rows())
    } else {
        factor_even(m.rows())?
    };
    let f = GramFactorization {
        k: n,
        columns: rows.into_iter().map(|r| BitVec::new(n, r)).collect(),
        target: m.clone(),
    };
    assert!(f.verify(), "gram_factor produced an invalid witness for {m:?}");
    Some(f)
}

// Congruence helpers. Every routine below works on a private copy of the
// rows. If `E M Eᵗ = N` and the rows of `R` realise `N`, then the rows of
// `E⁻¹ R` realise `M`; each case undoes its `E` that way.

fn swap_indices(m: &mut [u64], a: usize, b: usize) {
    if a == b {
        return;
    }
    m.swap(a, b);
    for r in m.iter_mut() {
        let (x, y) = ((*r >> a) & 1, (*r >> b) & 1);
        if x != y {
            *r ^= (1 << a) | (1 << b);
        }
    }
}

/// `row dst += row src` followed by `col dst += col src`.
fn add_index(m: &mut [u64], src: usize, dst: usize) {
    m[dst] ^= m[src];
    for r in m.iter_mut() {
        if bit(*r, src) {
            *r ^= 1 << dst;
        }
    }
}

fn factor_odd(m: &[u64]) -> Vec<u64> {
    let n = m.len();
    debug_assert!(n % 2 == 1);
    if n == 1 {
        return vec![m[0] & 1];
    }
    let mut work = m.to_vec();
    if let Some(i) = (0..n).find(|&i| bit(m[i], i)) {
        swap_indices(&mut work, 0, i);
        let mut u = factor_with_unit_pivot(&work);
        u.swap(0, i);
        u
    } else {
        // All-zero diagonal: flip m₀₀, factor, then add 𝟏 to the first column.
        work[0] |= 1;
        let mut u = factor_with_unit_pivot(&work);
        u[0] ^= low_mask(n);
        u
    }
}

/// Odd order `n ≥ 3`, `m₀₀ = 1`.
fn factor_with_unit_pivot(m: &[u64]) -> Vec<u64> {
    let n = m.len();
    debug_assert!(bit(m[0], 0));
    // [[1, m₀ⱼ], [m₀ⱼ, mⱼⱼ]] is nonsingular iff m₀ⱼ ≠ mⱼⱼ
    if let Some(j) = (1..n).find(|&j| bit(m[0], j) != bit(m[j], j)) {
        let mut work = m.to_vec();
        swap_indices(&mut work, 1, j);
        let mut u = schur_2x2(&work);
        u.swap(1, j);
        return u;
    }

    // Every 2x2 block through index 0 is singular, so m₀ⱼ = mⱼⱼ. Clearing
    // row 0 with transvections leaves [[1, 0], [0, N]] with N zero-diagonal.
    let cleared: Vec<usize> = (1..n).filter(|&j| bit(m[0], j)).collect();
    let mut work = m.to_vec();
    for &j in &cleared {
        add_index(&mut work, 0, j);
    }
    debug_assert_eq!(work[0], 1);
    work[1] |= 1 << 1;
    let alpha = schur_2x2(&work);
    let mut u = alpha.clone();
    u[0] = low_mask(n);
    u[1] = alpha[0] ^ alpha[1];
    // The transvections commute and are involutions.
    let pivot = u[0];
    for &j in &cleared {
        u[j] ^= pivot;
    }
    u
}

/// Odd order `n ≥ 3` with the leading 2x2 block nonsingular and `m₀₀ = 1`.
fn schur_2x2(m: &[u64]) -> Vec<u64> {
    let n = m.len();
    let rest = n - 2;
    let off = bit(m[0], 1);
    debug_assert!(bit(m[0], 0) && bit(m[1], 1) != off);
    // The two possible blocks: I with inverse I and factor I, or
    // [[1,1],[1,0]] with inverse [[0,1],[1,1]] and factor columns (1,0), (1,1).
    let (a_inv, block_rows): ([[bool; 2]; 2], [u64; 2]) = if off {
        ([[false, true], [true, true]], [0b01, 0b11])
    } else {
        ([[true, false], [false, true]], [0b01, 0b10])
    };

    let b = |a: usize, t: usize| bit(m[a], 2 + t);
    // X = Bᵗ A⁻¹, one pair of coefficients per trailing index
    let x: Vec<[bool; 2]> = (0..rest)
        .map(|t| {
            let mut row = [false; 2];
            for (col, out) in row.iter_mut().enumerate() {
                *out = (b(0, t) && a_inv[0][col]) ^ (b(1, t) && a_inv[1][col]);
            }
            row
        })
        .collect();

    // S = M₀ + X B
    let mut schur = vec![0u64; rest];
    for t in 0..rest {
        let mut row = m[2 + t] >> 2;
        for s in 0..rest {
            if (x[t][0] && b(0, s)) ^ (x[t][1] && b(1, s)) {
                row ^= 1 << s;
            }
        }
        schur[t] = row;
    }
    let s_rows = factor_odd(&schur);

    let mut u = Vec::with_capacity(n);
    u.extend_from_slice(&block_rows);
    for t in 0..rest {
        let mut row = s_rows[t] << 2;
        if x[t][0] {
            row ^= block_rows[0];
        }
        if x[t][1] {
            row ^= block_rows[1];
        }
        u.push(row);
    }
    u
}

fn factor_even(m: &[u64]) -> Option<Vec<u64>> {
    let n = m.len();
    debug_assert!(n % 2 == 0);
    if n == 0 {
        return Some(Vec::new());
    }
    let mut work = m.to_vec();
    if let Some(i) = (0..n).find(|&i| bit(m[i], i)) {
        // 1x1 Schur complement on a unit diagonal entry.
        swap_indices(&mut work, 0, i);
        let b = work[0] >> 1;
        let schur: Vec<u64> = (0..n - 1)
            .map(|t| {
                let row = work[1 + t] >> 1;
                if bit(b, t) {
                    row ^ b
                } else {
                    row
                }
            })
            .collect();
        let s_rows = factor_odd(&schur);
        let mut u = Vec::with_capacity(n);
        u.push(1);
        for t in 0..n - 1 {
            let mut row = s_rows[t] << 1;
            if bit(b, t) {
                row ^= 1;
            }
            u.push(row);
        }
        u.swap(0, i);
        return Some(u);
    }

    // Zero diagonal: factorable iff singular. A kernel vector clears row 0.
    let x = row_dependency(m)?;
    let p = x.trailing_zeros() as usize;
    swap_indices(&mut work, 0, p);
    // p is the lowest set bit of x, so after the swap bit p is clear
    let x_perm = (x ^ (1 << p)) | 1;
    let others: Vec<usize> = (1..n).filter(|&j| bit(x_perm, j)).collect();
    for &j in &others {
        add_index(&mut work, j, 0);
    }
    debug_assert_eq!(work[0], 0);
    let reduced: Vec<u64> = work[1..].iter().map(|&r| r >> 1).collect();
    let r_rows = factor_odd(&reduced);
    let mut u = Vec::with_capacity(n);
    u.push(0);
    u.extend(r_rows.iter().map(|&r| r << 1));
    for &j in &others {
        u[0] ^= u[j];
    }
    u.swap(0, p);
    Some(u)
}

/// Factorization with the fewest coordinates, `k = min_gram_dim(M)`.
///
/// Rows of `M` indexed by a basis `B` of its row space give a nonsingular
/// principal block `M[B,B]`; that block is factored (padded with a zero
/// index when it is alternating) and every other index gets the same linear
/// combination of basis vectors that its row is of basis rows.
pub fn gram_factor_min(m: &SymMatrix) -> GramFactorization {
    let n = m.order();
    let mut echelon: [(u64, u64); 64] = [(0, 0); 64];
    let mut basis: Vec<usize> = Vec::new();
    let mut coeffs = vec![0u64; n];
    for (i, &row) in m.rows().iter().enumerate() {
        let (mut r, mut c) = (row, 0u64);
        while r != 0 {
            let b = r.trailing_zeros() as usize;
            let (er, ec) = echelon[b];
            if er == 0 {
                echelon[b] = (r, c ^ (1 << basis.len()));
                basis.push(i);
                break;
            }
            r ^= er;
            c ^= ec;
        }
        coeffs[i] = c;
    }
    let block = m.principal(&basis);
    let r = basis.len();
    let (k, block_rows) = if r == 0 {
        (0, Vec::new())
    } else if block.has_nonzero_diagonal() {
        let rows = if r % 2 == 1 {
            factor_odd(block.rows())
        } else {
            factor_even(block.rows()).expect("nonsingular block with a unit diagonal entry factors")
        };
        (r, rows)
    } else {
        let mut padded = block.rows().to_vec();
        padded.push(0);
        let mut rows = factor_odd(&padded);
        rows.truncate(r);
        (r + 1, rows)
    };
    let mut vecs = vec![0u64; n];
    for (t, &i) in basis.iter().enumerate() {
        vecs[i] = block_rows[t];
    }
    for i in 0..n {
        if !basis.contains(&i) {
            vecs[i] = (0..r).filter(|&t| bit(coeffs[i], t)).fold(0, |acc, t| acc ^ block_rows[t]);
        }
    }
    let f = GramFactorization {
        k,
        columns: vecs.into_iter().map(|v| BitVec::new(k, v)).collect(),
        target: m.clone(),
    };
    assert!(f.verify(), "gram_factor_min produced an invalid witness for {m:?}");
    f
}

/// Least `k` such that vectors in F2^k have Gram matrix `M`.
///
/// Closed rule: 0 for the zero matrix, `rank(M)` when some diagonal entry is
/// 1, and `rank(M) + 1` otherwise. Cross-checked against [`realize_oracle`].
pub fn min_gram_dim(m: &SymMatrix) -> usize {
    if m.is_zero() {
        0
    } else if m.has_nonzero_diagonal() {
        m.rank()
    } else {
        m.rank() + 1
    }
}

/// Exhaustive search for vectors in F2^k realising `M`.
///
/// Refuses to run when `2^(n·k)` exceeds `budget`, so a `None` is always a
/// proof of infeasibility.
pub fn realize_oracle(m: &SymMatrix, k: usize, budget: u64) -> Result<Option<Vec<BitVec>>> {
    realize_search(m, k, budget, true)
}

/// As [`realize_oracle`], ignoring the diagonal of `offdiag`.
pub fn realize_oracle_free_diag(
    offdiag: &SymMatrix,
    k: usize,
    budget: u64,
) -> Result<Option<Vec<BitVec>>> {
    realize_search(offdiag, k, budget, false)
}

fn realize_search(m: &SymMatrix, k: usize, budget: u64, with_diag: bool) -> Result<Option<Vec<BitVec>>> {
    let n = m.order();
    let bits = n.saturating_mul(k);
    if k > MAX_WIDTH || bits >= 64 || (1u64 << bits) > budget {
        return Err(Error::TooLarge {
            what: "oracle search bits n*k",
            got: bits,
            limit: (63 - budget.leading_zeros()) as usize,
        });
    }
    fn go(m: &SymMatrix, k: usize, with_diag: bool, chosen: &mut Vec<u64>) -> bool {
        let i = chosen.len();
        if i == m.order() {
            return true;
        }
        for v in 0..(1u64 << k) {
            if with_diag && ((v.count_ones() & 1 == 1) != m.get(i, i)) {
                continue;
            }
            let consistent = chosen
                .iter()
                .enumerate()
                .all(|(j, &w)| ((v & w).count_ones() & 1 == 1) == m.get(i, j));
            if consistent {
                chosen.push(v);
                if go(m, k, with_diag, chosen) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    let mut chosen = Vec::with_capacity(n);
    Ok(go(m, k, with_diag, &mut chosen)
        .then(|| chosen.into_iter().map(|v| BitVec::new(k, v)).collect()))
}

/// Minimum Gram dimension when only the off-diagonal entries are prescribed.
///
/// Scans every diagonal in increasing numeric order and returns the first
/// minimiser.
pub fn min_gram_dim_free_diag(offdiag: &SymMatrix, limit: usize) -> Result<(usize, BitVec)> {
    let n = offdiag.order();
    if n > limit {
        return Err(Error::TooLarge {
            what: "free-diagonal matrix order",
            got: n,
            limit,
        });
    }
    let mut best = (usize::MAX, 0u64);
    for d in 0..(1u64 << n) {
        let k = min_gram_dim(&offdiag.with_diagonal(d));
        if k < best.0 {
            best = (k, d);
            if k == 0 {
                break;
            }
        }
    }
    Ok((best.0, BitVec::new(n, best.1)))
}
