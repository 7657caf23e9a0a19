//! The group generated by `P_i`, `Z_ij` (CZ) and `X_[ij]` (CNOT), and its
//! unique decomposition `Z_a · P_b · Z_B · X_A`.
//!
//! The diagonal part `Z_a P_b Z_B` is a normal subgroup; conjugating it by a
//! CNOT `X_[ij]` (target `i`, control `j`) maps
//!
//! ```text
//! a -> [ji]a ⊕ b_i b_j e_j ⊕ B_ij e_j
//! b -> [ji]b
//! B -> [ji] B [ij] ⊕ b_i {{i,j}}
//! ```
//!
//! which is all [`cto`] needs to fold a gate list right to left in `O(nℓ)`.

use std::collections::{HashSet, VecDeque};

use crate::error::{check_index, check_len, check_pair, Error, Result};
use crate::gf2::{BitMatrix, BitVec, Letter, TransvectionWord};

/// A set of unordered qubit pairs, stored as a symmetric zero-diagonal
/// matrix. Doubles as the bilinear form of the quadratic form `q_B`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PairMatrix {
    m: BitMatrix,
}

impl PairMatrix {
    pub fn empty(n: usize) -> Self {
        Self { m: BitMatrix::zeros(n) }
    }

    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut out = Self::empty(n);
        for &(i, j) in pairs {
            out.toggle(i, j)?;
        }
        Ok(out)
    }

    /// Accepts a matrix only if it is symmetric with zero diagonal.
    pub fn from_matrix(m: BitMatrix) -> Result<Self> {
        let n = m.dim();
        for i in 0..n {
            if m.get(i, i) {
                return Err(Error::NotAlternating);
            }
            for j in i + 1..n {
                if m.get(i, j) != m.get(j, i) {
                    return Err(Error::NotAlternating);
                }
            }
        }
        Ok(Self { m })
    }

    pub fn n(&self) -> usize {
        self.m.dim()
    }

    pub fn matrix(&self) -> &BitMatrix {
        &self.m
    }

    /// Neighbours of qubit `i`.
    pub fn row(&self, i: usize) -> &BitVec {
        self.m.row(i)
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.m.get(i, j)
    }

    pub fn toggle(&mut self, i: usize, j: usize) -> Result<()> {
        check_pair(i, j, self.n())?;
        self.toggle_unchecked(i, j);
        Ok(())
    }

    #[inline]
    pub(crate) fn toggle_unchecked(&mut self, i: usize, j: usize) {
        self.m.flip(i, j);
        self.m.flip(j, i);
    }

    /// Pairs `(i, j)` with `i < j`, in lexicographic order.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.n() {
            out.extend(self.m.row(i).ones_iter().filter(|&j| j > i).map(|j| (i, j)));
        }
        out
    }

    /// Number of pairs.
    pub fn len(&self) -> usize {
        self.m.rows().iter().map(BitVec::count_ones).sum::<usize>() / 2
    }

    pub fn is_empty(&self) -> bool {
        self.m.rows().iter().all(BitVec::is_zero)
    }

    pub fn xor(&self, other: &PairMatrix) -> Result<PairMatrix> {
        check_len(self.n(), other.n())?;
        let mut out = self.clone();
        out.xor_assign_unchecked(other);
        Ok(out)
    }

    pub(crate) fn xor_assign_unchecked(&mut self, other: &PairMatrix) {
        let rows = (0..self.n()).map(|i| self.m.row(i) ^ other.m.row(i)).collect();
        self.m = BitMatrix::from_rows(rows).expect("square by construction");
    }

    /// `B ⊕ B_i`: drops every pair touching `i`.
    pub(crate) fn clear_vertex(&mut self, i: usize) {
        let neighbours: Vec<usize> = self.m.row(i).ones_iter().collect();
        for k in neighbours {
            self.toggle_unchecked(i, k);
        }
    }

    pub fn mul_vec(&self, u: &BitVec) -> Result<BitVec> {
        check_len(self.n(), u.len())?;
        Ok(self.mul_vec_unchecked(u))
    }

    pub(crate) fn mul_vec_unchecked(&self, u: &BitVec) -> BitVec {
        self.m.mul_vec(u)
    }

    /// `q_B(x) = Σ_{{i,j}∈B} x_i x_j mod 2`.
    pub fn quadratic_form(&self, x: &BitVec) -> Result<bool> {
        check_len(self.n(), x.len())?;
        Ok(self.quadratic_form_unchecked(x))
    }

    pub(crate) fn quadratic_form_unchecked(&self, x: &BitVec) -> bool {
        // Every pair is seen from both endpoints.
        let twice: usize = x.ones_iter().map(|i| self.m.row(i).overlap(x)).sum();
        (twice / 2) % 2 == 1
    }

    /// The vector of `q_B` evaluated on each column of `m`.
    pub fn quadratic_form_columns(&self, m: &BitMatrix) -> Result<BitVec> {
        check_len(self.n(), m.dim())?;
        let mut out = BitVec::zeros(self.n());
        for c in 0..m.dim() {
            if self.quadratic_form_unchecked(&m.column(c)) {
                out.set(c, true);
            }
        }
        Ok(out)
    }

    /// `B <- Lᵀ B L` for a single letter: `[ji] B [ij]` for `[ij]`,
    /// `(ij) B (ij)` for a transposition.
    #[inline]
    pub(crate) fn congruence_letter(&mut self, l: Letter) {
        match l {
            Letter::Transvection(i, j) => {
                self.m.add_row(j, i);
                self.m.add_col(j, i);
            }
            Letter::Transposition(i, j) => {
                self.m.swap_rows(i, j);
                self.m.swap_cols(i, j);
            }
        }
    }

    /// `Mᵀ B M`. Congruence keeps an alternating matrix alternating, so the
    /// result is again a pair set.
    pub fn congruence(&self, m: &BitMatrix) -> Result<PairMatrix> {
        check_len(self.n(), m.dim())?;
        let product = m.transpose().mul(&self.m).mul(m);
        debug_assert!((0..self.n()).all(|i| !product.get(i, i)));
        PairMatrix::from_matrix(product)
    }
}

impl std::fmt::Debug for PairMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "PairMatrix(n={}, {:?})", self.n(), self.pairs())
    }
}

/// `Z_a P_b Z_B`, an element of the diagonal subgroup.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CzpElement {
    pub a: BitVec,
    pub b: BitVec,
    pub pairs: PairMatrix,
}

impl CzpElement {
    pub fn identity(n: usize) -> Self {
        Self {
            a: BitVec::zeros(n),
            b: BitVec::zeros(n),
            pairs: PairMatrix::empty(n),
        }
    }

    pub fn new(a: BitVec, b: BitVec, pairs: PairMatrix) -> Result<Self> {
        check_len(pairs.n(), a.len())?;
        check_len(pairs.n(), b.len())?;
        Ok(Self { a, b, pairs })
    }

    pub fn n(&self) -> usize {
        self.pairs.n()
    }

    pub fn is_identity(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && self.pairs.is_empty()
    }

    /// `Z_a P_b Z_B · Z_a' P_b' Z_B' = Z_{a⊕a'⊕(b∧b')} P_{b⊕b'} Z_{B⊕B'}`.
    pub fn mul(&self, other: &CzpElement) -> Result<CzpElement> {
        check_len(self.n(), other.n())?;
        let mut a = &self.a ^ &other.a;
        a ^= &(&self.b & &other.b);
        let mut pairs = self.pairs.clone();
        pairs.xor_assign_unchecked(&other.pairs);
        Ok(CzpElement {
            a,
            b: &self.b ^ &other.b,
            pairs,
        })
    }

    /// `X_L · self · X_L^{-1}` for one letter.
    pub(crate) fn conj_letter(&mut self, l: Letter) {
        match l {
            Letter::Transvection(i, j) => {
                let (bi, bj) = (self.b.get(i), self.b.get(j));
                let bij = self.pairs.contains(i, j);
                if self.a.get(i) {
                    self.a.flip(j);
                }
                if (bi && bj) ^ bij {
                    self.a.flip(j);
                }
                if bi {
                    self.b.flip(j);
                }
                self.pairs.congruence_letter(l);
                if bi {
                    self.pairs.toggle_unchecked(i, j);
                }
            }
            Letter::Transposition(i, j) => {
                self.a.swap(i, j);
                self.b.swap(i, j);
                self.pairs.congruence_letter(l);
            }
        }
    }

    /// `X_A · self · X_A^{-1}` with `A` given by a word, letter by letter.
    pub fn conj_by_cnot_word(&self, word: &TransvectionWord) -> Result<CzpElement> {
        word.validate(self.n())?;
        let mut out = self.clone();
        for &l in word.letters().iter().rev() {
            out.conj_letter(l);
        }
        Ok(out)
    }
}

/// Generators of the CZ/CNOT/P group, in operator notation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CzxpGate {
    P(usize),
    Cz(usize, usize),
    /// `X_[ij]`: target `i`, control `j`.
    Cnot {
        target: usize,
        control: usize,
    },
}

impl CzxpGate {
    pub fn validate(self, n: usize) -> Result<()> {
        match self {
            CzxpGate::P(i) => check_index(i, n),
            CzxpGate::Cz(i, j) => check_pair(i, j, n),
            CzxpGate::Cnot { target, control } => check_pair(target, control, n),
        }
    }
}

/// `Z_a P_b Z_B X_A`. When `word` is present it evaluates to `cnot`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CzxpElement {
    pub czp: CzpElement,
    pub cnot: BitMatrix,
    pub word: Option<TransvectionWord>,
}

impl CzxpElement {
    /// The identity, carrying an empty word.
    pub fn identity(n: usize) -> Self {
        Self {
            czp: CzpElement::identity(n),
            cnot: BitMatrix::identity(n),
            word: Some(TransvectionWord::new()),
        }
    }

    pub fn n(&self) -> usize {
        self.cnot.dim()
    }

    /// Decomposition fields, ignoring the word annotation.
    pub fn tuple(&self) -> (&BitVec, &BitVec, &PairMatrix, &BitMatrix) {
        (&self.czp.a, &self.czp.b, &self.czp.pairs, &self.cnot)
    }

    /// A gate list (operator order) denoting this element: `Z` as `P·P`,
    /// then `P_b`, the CZ pairs and a synthesized CNOT word.
    pub fn to_gates(&self) -> Result<Vec<CzxpGate>> {
        let mut gates = Vec::new();
        for i in self.czp.a.ones_iter() {
            gates.extend([CzxpGate::P(i), CzxpGate::P(i)]);
        }
        gates.extend(self.czp.b.ones_iter().map(CzxpGate::P));
        gates.extend(self.czp.pairs.pairs().into_iter().map(|(i, j)| CzxpGate::Cz(i, j)));
        let word = crate::gf2::synthesize(&self.cnot)?;
        for l in word.letters() {
            match *l {
                Letter::Transvection(i, j) => gates.push(CzxpGate::Cnot { target: i, control: j }),
                Letter::Transposition(i, j) => gates.extend([
                    CzxpGate::Cnot { target: i, control: j },
                    CzxpGate::Cnot { target: j, control: i },
                    CzxpGate::Cnot { target: i, control: j },
                ]),
            }
        }
        Ok(gates)
    }
}

/// Folds `gates` (operator order, leftmost factor first) into `init`,
/// returning the unique decomposition of `(∏ gates) · init`.
pub fn cto(gates: &[CzxpGate], init: CzxpElement) -> Result<CzxpElement> {
    let n = init.n();
    for g in gates {
        g.validate(n)?;
    }
    let CzxpElement {
        mut czp,
        mut cnot,
        word,
    } = init;
    for g in gates.iter().rev() {
        match *g {
            CzxpGate::Cz(i, j) => czp.pairs.toggle_unchecked(i, j),
            CzxpGate::P(i) => {
                if czp.b.get(i) {
                    czp.a.flip(i);
                }
                czp.b.flip(i);
            }
            CzxpGate::Cnot { target, control } => {
                let l = Letter::Transvection(target, control);
                czp.conj_letter(l);
                l.apply_left(&mut cnot);
            }
        }
    }
    let word = word.map(|w| {
        let mut letters: Vec<Letter> = gates
            .iter()
            .filter_map(|g| match *g {
                CzxpGate::Cnot { target, control } => Some(Letter::Transvection(target, control)),
                _ => None,
            })
            .collect();
        letters.extend_from_slice(w.letters());
        TransvectionWord::from_letters(letters)
    });
    Ok(CzxpElement { czp, cnot, word })
}

/// `X_A Z_B X_A^{-1} = Z_{q_B(A^{-1})} Z_{A^{-T} B A^{-1}}`.
pub fn conj_cz_layer_by_matrix(pairs: &PairMatrix, a: &BitMatrix) -> Result<(BitVec, PairMatrix)> {
    check_len(pairs.n(), a.dim())?;
    let inv = a.invert()?;
    let z = pairs.quadratic_form_columns(&inv)?;
    let conj = pairs.congruence(&inv)?;
    Ok((z, conj))
}

/// `2^{n(n+1)} ∏_{i=1}^{n} (2^i - 1)`.
pub fn czxp_group_order(n: u32) -> u128 {
    (1u128 << (n * (n + 1))) * (1..=n).map(|i| (1u128 << i) - 1).product::<u128>()
}

/// Every `P_i`, `Z_ij` and `X_[ij]` on `n` qubits.
pub fn czxp_generators(n: usize) -> Vec<CzxpGate> {
    let mut gens: Vec<CzxpGate> = (0..n).map(CzxpGate::P).collect();
    for i in 0..n {
        for j in 0..n {
            if i < j {
                gens.push(CzxpGate::Cz(i, j));
            }
            if i != j {
                gens.push(CzxpGate::Cnot { target: i, control: j });
            }
        }
    }
    gens
}

/// A monomial unitary: column `x` is `ζ8^{k} |σ(x)⟩`.
type Monomial = Vec<(u16, u8)>;

fn apply_monomial_gate(m: &mut Monomial, g: CzxpGate, n: usize) {
    let bit = |y: u16, q: usize| (y >> (n - 1 - q)) & 1 == 1;
    for (y, k) in m.iter_mut() {
        match g {
            CzxpGate::P(i) => {
                if bit(*y, i) {
                    *k = (*k + 2) % 8;
                }
            }
            CzxpGate::Cz(i, j) => {
                if bit(*y, i) && bit(*y, j) {
                    *k = (*k + 4) % 8;
                }
            }
            CzxpGate::Cnot { target, control } => {
                if bit(*y, control) {
                    *y ^= 1 << (n - 1 - target);
                }
            }
        }
    }
}

/// Order of the group generated by `generators`, by breadth-first closure
/// over exact monomial matrices.
pub fn enumerate_group(n: usize, generators: &[CzxpGate]) -> Result<usize> {
    if n == 0 {
        return Err(Error::NoQubits);
    }
    if n > 3 {
        return Err(Error::ResourceGuard {
            what: "group enumeration",
            limit: 3,
            n,
        });
    }
    for g in generators {
        g.validate(n)?;
    }
    let start: Monomial = (0..1u16 << n).map(|x| (x, 0)).collect();
    let mut seen = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some(m) = queue.pop_front() {
        for &g in generators {
            let mut next = m.clone();
            apply_monomial_gate(&mut next, g, n);
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    Ok(seen.len())
}
