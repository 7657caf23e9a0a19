//! Exact dense unitaries over `Z[ζ8][1/√2]`, the reference every rewrite is
//! checked against.
//!
//! Basis index `x` holds qubit `q` in bit `n - 1 - q`, so qubit 0 is the
//! leftmost symbol of a ket.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::circuit::{Circuit, Gate, Generator};
use crate::czreduce::CzReducedForm;
use crate::czxp::PairMatrix;
use crate::error::{check_index, check_len, Error, Result};
use crate::gf2::{BitMatrix, BitVec};
use crate::normal_form::NormalForm;
use crate::pauli::{PauliOp, PhaseZ8};

/// Largest qubit count the dense oracle accepts unless told otherwise.
pub const DEFAULT_GUARD: usize = 8;

type Coeffs = [BigInt; 4];

fn zero_coeffs() -> Coeffs {
    [BigInt::zero(), BigInt::zero(), BigInt::zero(), BigInt::zero()]
}

/// `ζ^k · c`, a signed rotation of the coefficients.
fn rotate(c: &Coeffs, k: u8) -> Coeffs {
    let k = (k % 8) as usize;
    let mut out = zero_coeffs();
    for (i, x) in c.iter().enumerate() {
        let e = (i + k) % 8;
        if e < 4 {
            out[e] = x.clone();
        } else {
            out[e - 4] = -x;
        }
    }
    out
}

/// `√2 · c`, with `√2 = ζ - ζ³`.
fn times_sqrt2(c: &Coeffs) -> Coeffs {
    let [c0, c1, c2, c3] = c;
    [c1 - c3, c0 + c2, c1 + c3, c2 - c0]
}

fn divisible_by_sqrt2(c: &Coeffs) -> bool {
    (&c[0] - &c[2]).is_even_int() && (&c[1] - &c[3]).is_even_int()
}

/// `c / √2`; the caller checks divisibility.
fn div_sqrt2(c: &Coeffs) -> Coeffs {
    times_sqrt2(c).map(|x| x / 2)
}

trait EvenInt {
    fn is_even_int(&self) -> bool;
}

impl EvenInt for BigInt {
    fn is_even_int(&self) -> bool {
        (self % 2u8).is_zero()
    }
}

fn add_coeffs(a: &Coeffs, b: &Coeffs) -> Coeffs {
    [&a[0] + &b[0], &a[1] + &b[1], &a[2] + &b[2], &a[3] + &b[3]]
}

fn sub_coeffs(a: &Coeffs, b: &Coeffs) -> Coeffs {
    [&a[0] - &b[0], &a[1] - &b[1], &a[2] - &b[2], &a[3] - &b[3]]
}

fn mul_coeffs(a: &Coeffs, b: &Coeffs) -> Coeffs {
    let mut out = zero_coeffs();
    for i in 0..4 {
        if a[i].is_zero() {
            continue;
        }
        for j in 0..4 {
            let p = &a[i] * &b[j];
            if i + j < 4 {
                out[i + j] += p;
            } else {
                out[i + j - 4] -= p;
            }
        }
    }
    out
}

fn is_zero_coeffs(c: &Coeffs) -> bool {
    c.iter().all(Zero::is_zero)
}

/// `(c0 + c1 ζ + c2 ζ² + c3 ζ³) / √2^m`, kept with `m` minimal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cyclo8 {
    c: Coeffs,
    m: u32,
}

impl Cyclo8 {
    pub fn new(c: [BigInt; 4], m: u32) -> Self {
        let mut out = Self { c, m };
        out.normalize();
        out
    }

    pub fn from_ints(c: [i64; 4], m: u32) -> Self {
        Self::new(c.map(BigInt::from), m)
    }

    pub fn zero() -> Self {
        Self { c: zero_coeffs(), m: 0 }
    }

    pub fn one() -> Self {
        Self::from_ints([1, 0, 0, 0], 0)
    }

    /// `ζ8^k`.
    pub fn zeta(k: i64) -> Self {
        Self {
            c: rotate(
                &[BigInt::one(), BigInt::zero(), BigInt::zero(), BigInt::zero()],
                k.rem_euclid(8) as u8,
            ),
            m: 0,
        }
    }

    pub fn sqrt2() -> Self {
        Self::from_ints([0, 1, 0, -1], 0)
    }

    /// `1/√2`.
    pub fn inv_sqrt2() -> Self {
        Self::from_ints([1, 0, 0, 0], 1)
    }

    pub fn coeffs(&self) -> &[BigInt; 4] {
        &self.c
    }

    pub fn sqrt2_exponent(&self) -> u32 {
        self.m
    }

    pub fn is_zero(&self) -> bool {
        is_zero_coeffs(&self.c)
    }

    fn normalize(&mut self) {
        if self.is_zero() {
            self.m = 0;
            return;
        }
        while self.m > 0 && divisible_by_sqrt2(&self.c) {
            self.c = div_sqrt2(&self.c);
            self.m -= 1;
        }
    }

    /// Numerator rescaled to denominator `√2^m`, `m >= self.m`.
    fn numerator_at(&self, m: u32) -> Coeffs {
        let mut c = self.c.clone();
        let mut e = self.m;
        while e + 2 <= m {
            c = c.map(|x| x * 2);
            e += 2;
        }
        if e < m {
            c = times_sqrt2(&c);
        }
        c
    }

    pub fn mul_zeta(&self, k: i64) -> Self {
        Self {
            c: rotate(&self.c, k.rem_euclid(8) as u8),
            m: self.m,
        }
    }

    /// Complex conjugate: `ζ -> ζ^{-1} = -ζ³`.
    pub fn conj(&self) -> Self {
        let [c0, c1, c2, c3] = &self.c;
        Self {
            c: [c0.clone(), -c3, -c2, -c1],
            m: self.m,
        }
    }
}

impl std::ops::Add for &Cyclo8 {
    type Output = Cyclo8;
    fn add(self, rhs: &Cyclo8) -> Cyclo8 {
        let m = self.m.max(rhs.m);
        Cyclo8::new(add_coeffs(&self.numerator_at(m), &rhs.numerator_at(m)), m)
    }
}

impl std::ops::Sub for &Cyclo8 {
    type Output = Cyclo8;
    fn sub(self, rhs: &Cyclo8) -> Cyclo8 {
        let m = self.m.max(rhs.m);
        Cyclo8::new(sub_coeffs(&self.numerator_at(m), &rhs.numerator_at(m)), m)
    }
}

impl std::ops::Mul for &Cyclo8 {
    type Output = Cyclo8;
    // Denominators are powers of √2, so their exponents add.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: &Cyclo8) -> Cyclo8 {
        Cyclo8::new(mul_coeffs(&self.c, &rhs.c), self.m + rhs.m)
    }
}

impl std::ops::Neg for &Cyclo8 {
    type Output = Cyclo8;
    fn neg(self) -> Cyclo8 {
        Cyclo8 {
            c: self.c.clone().map(|x| -x),
            m: self.m,
        }
    }
}

impl fmt::Debug for Cyclo8 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Cyclo8 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .c
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(i, x)| match i {
                0 => x.to_string(),
                _ if x.abs().is_one() => format!("{}ζ^{i}", if x.is_negative() { "-" } else { "" }),
                _ => format!("{x}ζ^{i}"),
            })
            .collect();
        let num = if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join(" + ")
        };
        if self.m == 0 {
            write!(f, "{num}")
        } else {
            write!(f, "({num})/√2^{}", self.m)
        }
    }
}

/// Converts a basis index to its bit vector (qubit `q` = bit `n-1-q`).
pub fn index_to_bits(n: usize, x: usize) -> BitVec {
    BitVec::from_indices(n, (0..n).filter(|&q| (x >> (n - 1 - q)) & 1 == 1))
}

pub fn bits_to_index(bits: &BitVec) -> usize {
    let n = bits.len();
    bits.ones_iter().map(|q| 1usize << (n - 1 - q)).sum()
}

/// A `2^n × 2^n` matrix sharing one `√2^m` denominator, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct DenseUnitary {
    n: usize,
    m: u32,
    entries: Vec<Coeffs>,
}

impl DenseUnitary {
    pub fn identity(n: usize) -> Self {
        let dim = 1usize << n;
        let mut entries = vec![zero_coeffs(); dim * dim];
        for i in 0..dim {
            entries[i * dim + i][0] = BigInt::one();
        }
        Self { n, m: 0, entries }
    }

    /// Builds a matrix from explicit entries (row-major, `4^n` of them).
    pub fn from_entries(n: usize, entries: &[Cyclo8]) -> Result<Self> {
        let dim = 1usize << n;
        check_len(dim * dim, entries.len())?;
        let m = entries.iter().map(|e| e.m).max().unwrap_or(0);
        let mut out = Self {
            n,
            m,
            entries: entries.iter().map(|e| e.numerator_at(m)).collect(),
        };
        out.reduce();
        Ok(out)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        1 << self.n
    }

    pub fn entry(&self, r: usize, c: usize) -> Cyclo8 {
        Cyclo8::new(self.entries[r * self.dim() + c].clone(), self.m)
    }

    fn reduce(&mut self) {
        if self.entries.iter().all(is_zero_coeffs) {
            self.m = 0;
            return;
        }
        while self.m > 0 && self.entries.iter().all(divisible_by_sqrt2) {
            for e in &mut self.entries {
                *e = div_sqrt2(e);
            }
            self.m -= 1;
        }
    }

    fn row_range(&self, r: usize) -> std::ops::Range<usize> {
        let dim = self.dim();
        r * dim..(r + 1) * dim
    }

    /// `U <- ζ^k U`.
    pub fn apply_phase(&mut self, k: PhaseZ8) {
        if k.is_one() {
            return;
        }
        for e in &mut self.entries {
            *e = rotate(e, k.k());
        }
    }

    /// `U <- M U` for a monomial `M|x> = ζ^{k(x)} |σ(x)>`.
    pub fn apply_monomial(&mut self, f: impl Fn(usize) -> (usize, u8)) {
        let dim = self.dim();
        let mut out = vec![zero_coeffs(); dim * dim];
        for s in 0..dim {
            let (t, k) = f(s);
            for (dst, src) in out[t * dim..(t + 1) * dim]
                .iter_mut()
                .zip(&self.entries[self.row_range(s)])
            {
                *dst = if k % 8 == 0 { src.clone() } else { rotate(src, k) };
            }
        }
        self.entries = out;
    }

    /// `U <- D U` for a diagonal `D|x> = ζ^{k(x)} |x>`.
    pub fn apply_diagonal(&mut self, f: impl Fn(usize) -> u8) {
        for s in 0..self.dim() {
            let k = f(s) % 8;
            if k != 0 {
                let range = self.row_range(s);
                for e in &mut self.entries[range] {
                    *e = rotate(e, k);
                }
            }
        }
    }

    /// `U <- H_q U`.
    pub fn apply_h(&mut self, q: usize) -> Result<()> {
        check_index(q, self.n)?;
        let dim = self.dim();
        let bit = 1usize << (self.n - 1 - q);
        for r0 in (0..dim).filter(|r| r & bit == 0) {
            let r1 = r0 | bit;
            for c in 0..dim {
                let (a, b) = (&self.entries[r0 * dim + c], &self.entries[r1 * dim + c]);
                let (s, d) = (add_coeffs(a, b), sub_coeffs(a, b));
                self.entries[r0 * dim + c] = s;
                self.entries[r1 * dim + c] = d;
            }
        }
        self.m += 1;
        self.reduce();
        Ok(())
    }

    /// `U <- G U`.
    pub fn apply_gate(&mut self, g: &Gate) -> Result<()> {
        g.validate(self.n)?;
        let n = self.n;
        let mask = |q: usize| 1usize << (n - 1 - q);
        let bit = move |x: usize, q: usize| (x >> (n - 1 - q)) & 1 == 1;
        match *g {
            Gate::H(q) => self.apply_h(q)?,
            Gate::P(q) => self.apply_diagonal(|x| if bit(x, q) { 2 } else { 0 }),
            Gate::Pdg(q) => self.apply_diagonal(|x| if bit(x, q) { 6 } else { 0 }),
            Gate::Z(q) => self.apply_diagonal(|x| if bit(x, q) { 4 } else { 0 }),
            Gate::X(q) => self.apply_monomial(|x| (x ^ mask(q), 0)),
            // Y|0> = i|1>, Y|1> = -i|0>.
            Gate::Y(q) => self.apply_monomial(|x| (x ^ mask(q), if bit(x, q) { 6 } else { 2 })),
            Gate::Cx { control, target } => {
                self.apply_monomial(|x| (if bit(x, control) { x ^ mask(target) } else { x }, 0))
            }
            Gate::Cz(i, j) => self.apply_diagonal(|x| if bit(x, i) && bit(x, j) { 4 } else { 0 }),
            Gate::Swap(i, j) => self.apply_monomial(|x| {
                let (bi, bj) = (bit(x, i), bit(x, j));
                (if bi != bj { x ^ mask(i) ^ mask(j) } else { x }, 0)
            }),
        }
        Ok(())
    }

    /// `U <- X_A U`, i.e. `|x> -> |Ax>`.
    pub fn apply_cnot_matrix(&mut self, a: &BitMatrix) -> Result<()> {
        check_len(self.n, a.dim())?;
        let n = self.n;
        self.apply_monomial(|x| (bits_to_index(&a.mul_vec(&index_to_bits(n, x))), 0));
        Ok(())
    }

    /// `U <- Z_B U`.
    pub fn apply_cz_layer(&mut self, pairs: &PairMatrix) -> Result<()> {
        check_len(self.n, pairs.n())?;
        let n = self.n;
        self.apply_diagonal(|x| {
            if pairs.quadratic_form_unchecked(&index_to_bits(n, x)) {
                4
            } else {
                0
            }
        });
        Ok(())
    }

    /// `U <- P_b U`.
    pub fn apply_phase_layer(&mut self, b: &BitVec) -> Result<()> {
        check_len(self.n, b.len())?;
        let n = self.n;
        self.apply_diagonal(|x| (2 * (b.overlap(&index_to_bits(n, x)) % 4)) as u8);
        Ok(())
    }

    /// `U <- H_w U`.
    pub fn apply_h_layer(&mut self, w: &BitVec) -> Result<()> {
        check_len(self.n, w.len())?;
        for q in w.ones_iter() {
            self.apply_h(q)?;
        }
        Ok(())
    }

    /// `U <- e^{ikπ/4} X_u Z_v U`.
    pub fn apply_pauli(&mut self, p: &PauliOp) -> Result<()> {
        check_len(self.n, p.n())?;
        let n = self.n;
        self.apply_diagonal(|x| if p.v.dot(&index_to_bits(n, x)) { 4 } else { 0 });
        let flip = bits_to_index(&p.u);
        self.apply_monomial(|x| (x ^ flip, 0));
        self.apply_phase(p.phase);
        Ok(())
    }

    pub fn mul(&self, other: &DenseUnitary) -> Result<DenseUnitary> {
        check_len(self.n, other.n)?;
        let dim = self.dim();
        let mut entries = vec![zero_coeffs(); dim * dim];
        for r in 0..dim {
            for k in 0..dim {
                let a = &self.entries[r * dim + k];
                if is_zero_coeffs(a) {
                    continue;
                }
                for c in 0..dim {
                    let p = mul_coeffs(a, &other.entries[k * dim + c]);
                    let e = &mut entries[r * dim + c];
                    *e = add_coeffs(e, &p);
                }
            }
        }
        let mut out = DenseUnitary {
            n: self.n,
            m: self.m + other.m,
            entries,
        };
        out.reduce();
        Ok(out)
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> DenseUnitary {
        let dim = self.dim();
        let mut entries = vec![zero_coeffs(); dim * dim];
        for r in 0..dim {
            for c in 0..dim {
                let x = Cyclo8 {
                    c: self.entries[r * dim + c].clone(),
                    m: 0,
                };
                entries[c * dim + r] = x.conj().c;
            }
        }
        DenseUnitary {
            n: self.n,
            m: self.m,
            entries,
        }
    }

    pub fn is_identity(&self) -> bool {
        *self == DenseUnitary::identity(self.n)
    }

    pub fn scaled(&self, k: PhaseZ8) -> DenseUnitary {
        let mut out = self.clone();
        out.apply_phase(k);
        out
    }
}

impl fmt::Debug for DenseUnitary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "DenseUnitary(n={}, /√2^{})", self.n, self.m)?;
        for r in 0..self.dim() {
            let row: Vec<String> = (0..self.dim())
                .map(|c| {
                    Cyclo8 {
                        c: self.entries[r * self.dim() + c].clone(),
                        m: 0,
                    }
                    .to_string()
                })
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

fn guard(n: usize, limit: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::NoQubits);
    }
    if n > limit {
        return Err(Error::ResourceGuard {
            what: "exact simulation",
            limit,
            n,
        });
    }
    Ok(())
}

/// The embedding of one gate on `n` qubits.
pub fn gate_matrix(g: &Gate, n: usize) -> Result<DenseUnitary> {
    guard(n, DEFAULT_GUARD)?;
    let mut u = DenseUnitary::identity(n);
    u.apply_gate(g)?;
    Ok(u)
}

pub fn circuit_unitary(c: &Circuit) -> Result<DenseUnitary> {
    circuit_unitary_guarded(c, DEFAULT_GUARD)
}

pub fn circuit_unitary_guarded(c: &Circuit, limit: usize) -> Result<DenseUnitary> {
    guard(c.n, limit)?;
    let mut u = DenseUnitary::identity(c.n);
    for g in &c.gates {
        u.apply_gate(g)?;
    }
    u.apply_phase(c.phase);
    Ok(u)
}

/// Unitary of a generator list in time order.
pub fn generators_unitary(n: usize, gens: &[Generator], phase: PhaseZ8) -> Result<DenseUnitary> {
    guard(n, DEFAULT_GUARD)?;
    let mut u = DenseUnitary::identity(n);
    for g in gens {
        u.apply_gate(&g.to_gate())?;
    }
    u.apply_phase(phase);
    Ok(u)
}

/// Multiplies out the layers of a normal form directly.
pub fn unitary_of_normal_form(nf: &NormalForm) -> Result<DenseUnitary> {
    guard(nf.n(), DEFAULT_GUARD)?;
    let mut u = DenseUnitary::identity(nf.n());
    u.apply_cnot_matrix(&nf.cnot)?;
    u.apply_cz_layer(&nf.cz_d)?;
    u.apply_phase_layer(&nf.d)?;
    u.apply_pauli(&nf.pauli)?;
    u.apply_h_layer(&BitVec::ones(nf.n()))?;
    u.apply_cz_layer(&nf.cz_b)?;
    u.apply_phase_layer(&nf.b)?;
    u.apply_h_layer(&nf.w)?;
    Ok(u)
}

/// Multiplies out the layers of a CZ-reduced form directly.
pub fn unitary_of_reduced_form(f: &CzReducedForm) -> Result<DenseUnitary> {
    let n = f.n();
    guard(n, DEFAULT_GUARD)?;
    let mut u = DenseUnitary::identity(n);
    u.apply_phase_layer(&f.d)?;
    u.apply_cnot_matrix(&f.a3)?;
    u.apply_cz_layer(&f.s2.to_pairs())?;
    u.apply_cnot_matrix(&f.a2)?;
    u.apply_pauli(&f.pauli)?;
    u.apply_h_layer(&BitVec::ones(n))?;
    u.apply_cz_layer(&f.s1.to_pairs())?;
    u.apply_cnot_matrix(&f.a1)?;
    u.apply_phase_layer(&f.b)?;
    u.apply_h_layer(&f.w)?;
    Ok(u)
}

/// Outcome of comparing two unitaries.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Equal,
    /// `U1 = ζ^k U2` with `k ≠ 0`, reported when phases are ignored.
    EqualUpToPhase(PhaseZ8),
    /// `U1 = ζ^k U2` with `k ≠ 0`, reported when phases count.
    PhaseMismatch(PhaseZ8),
    Unequal,
}

impl Verdict {
    pub fn is_equal(self) -> bool {
        matches!(self, Verdict::Equal | Verdict::EqualUpToPhase(_))
    }
}

/// Exact comparison, optionally modulo a global phase `ζ8^k`. Only powers of
/// `ζ8` have modulus one in this ring, so no other scalar is tried.
pub fn assert_equal(u1: &DenseUnitary, u2: &DenseUnitary, include_phase: bool) -> Result<Verdict> {
    check_len(u1.n, u2.n)?;
    if u1 == u2 {
        return Ok(Verdict::Equal);
    }
    if u1.m != u2.m {
        return Ok(Verdict::Unequal);
    }
    for k in 1..8 {
        let k = PhaseZ8::new(k);
        if *u1 == u2.scaled(k) {
            return Ok(if include_phase {
                Verdict::PhaseMismatch(k)
            } else {
                Verdict::EqualUpToPhase(k)
            });
        }
    }
    Ok(Verdict::Unequal)
}
