//! Bit-packed linear algebra over GF(2).
//!
//! Vectors are indexed by qubit, matrices are stored row-major with one
//! packed [`BitVec`] per row. A transvection `T_ij = I + E_ij` is the matrix
//! image of the CNOT gate with target `i` and control `j`; multiplying by it
//! on the left adds row `j` into row `i`, on the right adds column `i` into
//! column `j`. Both are a handful of word operations.

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::ops::{BitAnd, BitXor, BitXorAssign};

use crate::error::{check_len, check_pair, Error, Result};

const WORD: usize = 64;

fn word_count(len: usize) -> usize {
    len.div_ceil(WORD)
}

/// An element of GF(2)^n.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; word_count(len)],
        }
    }

    pub fn ones(len: usize) -> Self {
        let mut v = Self::zeros(len);
        for i in 0..len {
            v.set(i, true);
        }
        v
    }

    /// The canonical basis vector `e_i`.
    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(i, true);
        v
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            v.set(i, b);
        }
        v
    }

    /// Builds a vector from a slice of 0/1 values; any nonzero entry is a one.
    pub fn from_bits(bits: &[u8]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            v.set(i, b != 0);
        }
        v
    }

    pub fn from_indices(len: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut v = Self::zeros(len);
        for i in indices {
            v.flip(i);
        }
        v
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        debug_assert!(i < self.len);
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    pub fn swap(&mut self, i: usize, j: usize) {
        let (a, b) = (self.get(i), self.get(j));
        self.set(i, b);
        self.set(j, a);
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Indices of the set bits, ascending.
    pub fn ones_iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    None
                } else {
                    let t = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    Some(k * WORD + t)
                }
            })
        })
    }

    pub fn to_bits(&self) -> Vec<u8> {
        (0..self.len).map(|i| u8::from(self.get(i))).collect()
    }

    /// Componentwise XOR, rejecting operands of different lengths.
    pub fn checked_xor(&self, other: &BitVec) -> Result<BitVec> {
        check_len(self.len, other.len)?;
        Ok(self ^ other)
    }

    /// Parity of the componentwise product.
    pub fn dot(&self, other: &BitVec) -> bool {
        debug_assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum::<u32>()
            % 2
            == 1
    }

    /// Number of positions where both vectors are one, as an integer.
    pub fn overlap(&self, other: &BitVec) -> usize {
        debug_assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    /// First index `>= from` holding a one.
    pub fn first_one_from(&self, from: usize) -> Option<usize> {
        (from..self.len).find(|&i| self.get(i))
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.len {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", u8::from(self.get(i)))?;
        }
        write!(f, "]")
    }
}

impl BitXorAssign<&BitVec> for BitVec {
    fn bitxor_assign(&mut self, rhs: &BitVec) {
        assert_eq!(self.len, rhs.len, "xor of vectors of different length");
        for (a, b) in self.words.iter_mut().zip(&rhs.words) {
            *a ^= b;
        }
    }
}

impl BitXor<&BitVec> for &BitVec {
    type Output = BitVec;
    fn bitxor(self, rhs: &BitVec) -> BitVec {
        let mut out = self.clone();
        out ^= rhs;
        out
    }
}

impl BitAnd<&BitVec> for &BitVec {
    type Output = BitVec;
    fn bitand(self, rhs: &BitVec) -> BitVec {
        assert_eq!(self.len, rhs.len, "and of vectors of different length");
        BitVec {
            len: self.len,
            words: self.words.iter().zip(&rhs.words).map(|(a, b)| a & b).collect(),
        }
    }
}

/// A square matrix over GF(2), row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: Vec<BitVec>,
}

impl BitMatrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            rows: vec![BitVec::zeros(n); n],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            rows: (0..n).map(|i| BitVec::unit(n, i)).collect(),
        }
    }

    pub fn from_rows(rows: Vec<BitVec>) -> Result<Self> {
        let n = rows.len();
        for r in &rows {
            check_len(n, r.len())?;
        }
        Ok(Self { rows })
    }

    /// Builds a matrix from nested 0/1 rows.
    pub fn from_bit_rows(rows: &[&[u8]]) -> Result<Self> {
        Self::from_rows(rows.iter().map(|r| BitVec::from_bits(r)).collect())
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r].get(c)
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        self.rows[r].set(c, value);
    }

    #[inline]
    pub fn flip(&mut self, r: usize, c: usize) {
        self.rows[r].flip(c);
    }

    pub fn row(&self, r: usize) -> &BitVec {
        &self.rows[r]
    }

    pub fn rows(&self) -> &[BitVec] {
        &self.rows
    }

    pub fn column(&self, c: usize) -> BitVec {
        let mut v = BitVec::zeros(self.dim());
        for (r, row) in self.rows.iter().enumerate() {
            if row.get(c) {
                v.set(r, true);
            }
        }
        v
    }

    pub fn is_identity(&self) -> bool {
        self.rows
            .iter()
            .enumerate()
            .all(|(i, r)| r.count_ones() == 1 && r.get(i))
    }

    /// `row[target] ^= row[source]`.
    #[inline]
    pub(crate) fn add_row(&mut self, target: usize, source: usize) {
        debug_assert_ne!(target, source);
        let (t, s) = if target < source {
            let (lo, hi) = self.rows.split_at_mut(source);
            (&mut lo[target], &hi[0])
        } else {
            let (lo, hi) = self.rows.split_at_mut(target);
            (&mut hi[0], &lo[source])
        };
        *t ^= s;
    }

    /// `column[target] ^= column[source]`.
    #[inline]
    pub(crate) fn add_col(&mut self, target: usize, source: usize) {
        debug_assert_ne!(target, source);
        for row in &mut self.rows {
            if row.get(source) {
                row.flip(target);
            }
        }
    }

    pub(crate) fn swap_rows(&mut self, i: usize, j: usize) {
        self.rows.swap(i, j);
    }

    pub(crate) fn swap_cols(&mut self, i: usize, j: usize) {
        for row in &mut self.rows {
            row.swap(i, j);
        }
    }

    /// `T_ij · self`: adds row `j` into row `i`.
    pub fn transvect_left(&mut self, i: usize, j: usize) -> Result<()> {
        check_pair(i, j, self.dim())?;
        self.add_row(i, j);
        Ok(())
    }

    /// `self · T_ij`: adds column `i` into column `j`.
    pub fn transvect_right(&mut self, i: usize, j: usize) -> Result<()> {
        check_pair(i, j, self.dim())?;
        self.add_col(j, i);
        Ok(())
    }

    pub fn transpose(&self) -> BitMatrix {
        let n = self.dim();
        let mut t = BitMatrix::zeros(n);
        for (r, row) in self.rows.iter().enumerate() {
            for c in row.ones_iter() {
                t.set(c, r, true);
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &BitVec) -> BitVec {
        assert_eq!(self.dim(), v.len(), "matrix-vector dimension mismatch");
        let mut out = BitVec::zeros(self.dim());
        for (r, row) in self.rows.iter().enumerate() {
            if row.dot(v) {
                out.set(r, true);
            }
        }
        out
    }

    pub fn mul(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(self.dim(), other.dim(), "matrix dimension mismatch");
        let rows = self
            .rows
            .iter()
            .map(|row| {
                let mut acc = BitVec::zeros(other.dim());
                for k in row.ones_iter() {
                    acc ^= &other.rows[k];
                }
                acc
            })
            .collect();
        BitMatrix { rows }
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let n = m.dim();
        let mut rank = 0;
        for c in 0..n {
            let Some(p) = (rank..n).find(|&r| m.get(r, c)) else {
                continue;
            };
            m.swap_rows(rank, p);
            for r in 0..n {
                if r != rank && m.get(r, c) {
                    m.add_row(r, rank);
                }
            }
            rank += 1;
        }
        rank
    }

    /// Gauss-Jordan inverse. The pivot for column `c` is the first row at or
    /// below `c` with a one in that column.
    pub fn invert(&self) -> Result<BitMatrix> {
        let n = self.dim();
        let mut m = self.clone();
        let mut inv = BitMatrix::identity(n);
        for c in 0..n {
            let p = (c..n).find(|&r| m.get(r, c)).ok_or(Error::Singular)?;
            if p != c {
                m.swap_rows(c, p);
                inv.swap_rows(c, p);
            }
            for r in 0..n {
                if r != c && m.get(r, c) {
                    m.add_row(r, c);
                    inv.add_row(r, c);
                }
            }
        }
        Ok(inv)
    }

    /// `(Aᵀ)⁻¹`.
    pub fn transpose_inverse(&self) -> Result<BitMatrix> {
        Ok(self.invert()?.transpose())
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{}", self.dim(), self.dim())?;
        for row in &self.rows {
            writeln!(f, "  {row:?}")?;
        }
        Ok(())
    }
}

/// A generator of GL(n,2) as used in words: `[ij]` or `(ij)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Letter {
    /// `T_ij = I + E_ij`: CNOT with target `i`, control `j`.
    Transvection(usize, usize),
    /// The permutation matrix swapping `i` and `j`: a SWAP gate.
    Transposition(usize, usize),
}

impl Letter {
    pub fn indices(self) -> (usize, usize) {
        match self {
            Letter::Transvection(i, j) | Letter::Transposition(i, j) => (i, j),
        }
    }

    pub fn validate(self, n: usize) -> Result<()> {
        let (i, j) = self.indices();
        check_pair(i, j, n)
    }

    /// The letter of `L^{-T}`: `[ij] -> [ji]`, `(ij) -> (ij)`.
    pub fn transpose_inverse(self) -> Letter {
        match self {
            Letter::Transvection(i, j) => Letter::Transvection(j, i),
            t @ Letter::Transposition(..) => t,
        }
    }

    /// `v <- L v`.
    #[inline]
    pub fn apply_to_vec(self, v: &mut BitVec) {
        match self {
            Letter::Transvection(i, j) => {
                if v.get(j) {
                    v.flip(i);
                }
            }
            Letter::Transposition(i, j) => v.swap(i, j),
        }
    }

    /// `M <- L M`.
    #[inline]
    pub fn apply_left(self, m: &mut BitMatrix) {
        match self {
            Letter::Transvection(i, j) => m.add_row(i, j),
            Letter::Transposition(i, j) => m.swap_rows(i, j),
        }
    }

    /// `M <- M L`.
    #[inline]
    pub fn apply_right(self, m: &mut BitMatrix) {
        match self {
            Letter::Transvection(i, j) => m.add_col(j, i),
            Letter::Transposition(i, j) => m.swap_cols(i, j),
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::Transvection(i, j) => write!(f, "[{i}{j}]"),
            Letter::Transposition(i, j) => write!(f, "({i}{j})"),
        }
    }
}

/// An ordered product of transvections and transpositions.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct TransvectionWord {
    letters: Vec<Letter>,
}

impl TransvectionWord {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_letters(letters: Vec<Letter>) -> Self {
        Self { letters }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn push(&mut self, letter: Letter) {
        self.letters.push(letter);
    }

    pub fn concat(&self, other: &TransvectionWord) -> TransvectionWord {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Self { letters }
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        self.letters.iter().try_for_each(|l| l.validate(n))
    }

    /// Word for the inverse matrix: every letter is an involution, so the
    /// inverse is the reversed word.
    pub fn inverse(&self) -> TransvectionWord {
        Self {
            letters: self.letters.iter().rev().copied().collect(),
        }
    }

    /// Word for `A^{-T}`: letter-wise, order preserved.
    pub fn transpose_inverse(&self) -> TransvectionWord {
        Self {
            letters: self.letters.iter().map(|l| l.transpose_inverse()).collect(),
        }
    }

    /// Evaluates the ordered product by row operations, right to left.
    pub fn to_matrix(&self, n: usize) -> Result<BitMatrix> {
        self.validate(n)?;
        let mut m = BitMatrix::identity(n);
        for l in self.letters.iter().rev() {
            l.apply_left(&mut m);
        }
        Ok(m)
    }

    /// `v <- A v` for the matrix `A` this word denotes.
    pub fn apply_to_vec(&self, v: &mut BitVec) {
        for l in self.letters.iter().rev() {
            l.apply_to_vec(v);
        }
    }
}

impl fmt::Display for TransvectionWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.letters {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// Writes an invertible matrix as a word of transvections by Gaussian
/// elimination; the returned word evaluates to `a`. Uses at most `n²`
/// letters.
pub fn synthesize(a: &BitMatrix) -> Result<TransvectionWord> {
    let n = a.dim();
    let mut m = a.clone();
    // Row operations L_k ... L_1 A = I, hence A = L_1 ... L_k.
    let mut ops = Vec::new();
    for c in 0..n {
        if !m.get(c, c) {
            let p = (c + 1..n).find(|&r| m.get(r, c)).ok_or(Error::Singular)?;
            m.add_row(c, p);
            ops.push(Letter::Transvection(c, p));
        }
        for r in 0..n {
            if r != c && m.get(r, c) {
                m.add_row(r, c);
                ops.push(Letter::Transvection(r, c));
            }
        }
    }
    debug_assert!(m.is_identity());
    Ok(TransvectionWord::from_letters(ops))
}

/// Size of the group generated by all `T_ij`, by breadth-first search.
pub fn enumerate_transvection_group(n: usize) -> Result<usize> {
    if n == 0 {
        return Err(Error::NoQubits);
    }
    if n > 4 {
        return Err(Error::ResourceGuard {
            what: "GL(n,2) enumeration",
            limit: 4,
            n,
        });
    }
    let start = BitMatrix::identity(n);
    let mut seen = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some(m) = queue.pop_front() {
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                let mut next = m.clone();
                next.add_row(i, j);
                if seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
    }
    Ok(seen.len())
}

/// `2^{n(n-1)/2} ∏_{i=1}^{n} (2^i - 1)`.
pub fn general_linear_order(n: u32) -> u128 {
    let mut order = 1u128 << (n * (n - 1) / 2);
    for i in 1..=n {
        order *= (1u128 << i) - 1;
    }
    order
}
