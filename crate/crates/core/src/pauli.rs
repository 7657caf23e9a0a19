//! Global phases in Z8 and the Pauli layer `e^{ikπ/4} X_u Z_v`.
//!
//! Conjugation rules, each checked against the exact simulator:
//!
//! | gate   | `u`        | `v`            | phase (units of π/4) |
//! |--------|------------|----------------|----------------------|
//! | `P_b`  | `u`        | `v ⊕ (b∧u)`    | `+2·|b∧u|`           |
//! | `X_A`  | `A u`      | `A^{-T} v`     | `0`                  |
//! | `Z_B`  | `u`        | `v ⊕ B u`      | `+4·q_B(u)`          |
//! | `h`    | `v`        | `u`            | `+4·(u·v)`           |
//!
//! The phase of `P_b` counts only coordinates where `b` is set; the sign of
//! `h` comes from reordering `Z_u X_v` into `X_v Z_u`.

use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub};

use crate::czxp::PairMatrix;
use crate::error::{check_index, check_len, check_pair, Result};
use crate::gf2::{BitVec, Letter, TransvectionWord};

/// The scalar `e^{ikπ/4}`, `k ∈ Z8`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PhaseZ8(u8);

impl PhaseZ8 {
    pub const ONE: PhaseZ8 = PhaseZ8(0);
    /// `i`.
    pub const I: PhaseZ8 = PhaseZ8(2);
    /// `-1`.
    pub const MINUS_ONE: PhaseZ8 = PhaseZ8(4);

    pub fn new(k: i64) -> Self {
        PhaseZ8(k.rem_euclid(8) as u8)
    }

    /// `i^λ`, embedded as `k = 2λ`.
    pub fn from_quarter_turns(lambda: i64) -> Self {
        Self::new(2 * lambda)
    }

    pub fn k(self) -> u8 {
        self.0
    }

    pub fn is_one(self) -> bool {
        self.0 == 0
    }
}

impl Add for PhaseZ8 {
    type Output = PhaseZ8;
    fn add(self, rhs: PhaseZ8) -> PhaseZ8 {
        PhaseZ8((self.0 + rhs.0) % 8)
    }
}

impl AddAssign for PhaseZ8 {
    fn add_assign(&mut self, rhs: PhaseZ8) {
        *self = *self + rhs;
    }
}

impl Neg for PhaseZ8 {
    type Output = PhaseZ8;
    fn neg(self) -> PhaseZ8 {
        PhaseZ8((8 - self.0) % 8)
    }
}

impl Sub for PhaseZ8 {
    type Output = PhaseZ8;
    fn sub(self, rhs: PhaseZ8) -> PhaseZ8 {
        self + (-rhs)
    }
}

impl fmt::Display for PhaseZ8 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e^(i{}π/4)", self.0)
    }
}

/// `e^{ikπ/4} X_u Z_v`. Equal operators have equal `(k, u, v)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PauliOp {
    pub phase: PhaseZ8,
    pub u: BitVec,
    pub v: BitVec,
}

impl PauliOp {
    pub fn identity(n: usize) -> Self {
        Self {
            phase: PhaseZ8::ONE,
            u: BitVec::zeros(n),
            v: BitVec::zeros(n),
        }
    }

    pub fn new(phase: PhaseZ8, u: BitVec, v: BitVec) -> Result<Self> {
        check_len(u.len(), v.len())?;
        Ok(Self { phase, u, v })
    }

    pub fn x(n: usize, i: usize) -> Self {
        Self {
            phase: PhaseZ8::ONE,
            u: BitVec::unit(n, i),
            v: BitVec::zeros(n),
        }
    }

    pub fn z(n: usize, i: usize) -> Self {
        Self {
            phase: PhaseZ8::ONE,
            u: BitVec::zeros(n),
            v: BitVec::unit(n, i),
        }
    }

    /// `Y = i X Z`.
    pub fn y(n: usize, i: usize) -> Self {
        Self {
            phase: PhaseZ8::I,
            u: BitVec::unit(n, i),
            v: BitVec::unit(n, i),
        }
    }

    pub fn n(&self) -> usize {
        self.u.len()
    }

    pub fn is_identity(&self) -> bool {
        self.phase.is_one() && self.u.is_zero() && self.v.is_zero()
    }

    /// `self · other`; commuting `Z_v` past `X_{u'}` costs `(-1)^{u'·v}`.
    pub fn mul(&self, other: &PauliOp) -> Result<PauliOp> {
        check_len(self.n(), other.n())?;
        let sign = if other.u.dot(&self.v) {
            PhaseZ8::MINUS_ONE
        } else {
            PhaseZ8::ONE
        };
        Ok(PauliOp {
            phase: self.phase + other.phase + sign,
            u: &self.u ^ &other.u,
            v: &self.v ^ &other.v,
        })
    }

    pub fn inverse(&self) -> PauliOp {
        let sign = if self.u.dot(&self.v) {
            PhaseZ8::MINUS_ONE
        } else {
            PhaseZ8::ONE
        };
        PauliOp {
            phase: -self.phase + sign,
            u: self.u.clone(),
            v: self.v.clone(),
        }
    }

    /// `P_b p P_b^{-1}`.
    pub fn conj_by_phase_gates(&self, b: &BitVec) -> Result<PauliOp> {
        check_len(self.n(), b.len())?;
        let mut out = self.clone();
        out.conj_phase_gates_in_place(b);
        Ok(out)
    }

    pub(crate) fn conj_phase_gates_in_place(&mut self, b: &BitVec) {
        let hit = b & &self.u;
        self.phase += PhaseZ8::new(2 * hit.count_ones() as i64);
        self.v ^= &hit;
    }

    /// `P_i p P_i^{-1}`.
    pub(crate) fn conj_phase_gate(&mut self, i: usize) {
        if self.u.get(i) {
            self.phase += PhaseZ8::I;
            self.v.flip(i);
        }
    }

    /// `X_A p X_A^{-1}` where `A` is given by a word.
    pub fn conj_by_cnot_word(&self, word: &TransvectionWord) -> Result<PauliOp> {
        word.validate(self.n())?;
        let mut out = self.clone();
        for &l in word.letters().iter().rev() {
            out.conj_letter(l);
        }
        Ok(out)
    }

    /// Conjugation by a single letter: `u <- L u`, `v <- L^{-T} v`.
    #[inline]
    pub(crate) fn conj_letter(&mut self, l: Letter) {
        l.apply_to_vec(&mut self.u);
        l.transpose_inverse().apply_to_vec(&mut self.v);
    }

    /// `X_{[ij]} p X_{[ij]}`: CNOT with target `i` and control `j`.
    pub fn conj_by_cnot(&self, target: usize, control: usize) -> Result<PauliOp> {
        check_pair(target, control, self.n())?;
        let mut out = self.clone();
        out.conj_letter(Letter::Transvection(target, control));
        Ok(out)
    }

    /// `Z_B p Z_B`.
    pub fn conj_by_cz_layer(&self, pairs: &PairMatrix) -> Result<PauliOp> {
        check_len(self.n(), pairs.n())?;
        let mut out = self.clone();
        if pairs.quadratic_form_unchecked(&self.u) {
            out.phase += PhaseZ8::MINUS_ONE;
        }
        out.v ^= &pairs.mul_vec_unchecked(&self.u);
        Ok(out)
    }

    /// `Z_ij p Z_ij`.
    pub(crate) fn conj_cz(&mut self, i: usize, j: usize) {
        let (ui, uj) = (self.u.get(i), self.u.get(j));
        if ui && uj {
            self.phase += PhaseZ8::MINUS_ONE;
        }
        if uj {
            self.v.flip(i);
        }
        if ui {
            self.v.flip(j);
        }
    }

    /// `h p h` with `h` the Hadamard on every qubit.
    pub fn conj_by_hadamard_layer(&self) -> PauliOp {
        let sign = if self.u.dot(&self.v) {
            PhaseZ8::MINUS_ONE
        } else {
            PhaseZ8::ONE
        };
        PauliOp {
            phase: self.phase + sign,
            u: self.v.clone(),
            v: self.u.clone(),
        }
    }

    /// `H_i p H_i`.
    pub fn conj_by_hadamard(&self, i: usize) -> Result<PauliOp> {
        check_index(i, self.n())?;
        let mut out = self.clone();
        let (x, z) = (out.u.get(i), out.v.get(i));
        if x && z {
            out.phase += PhaseZ8::MINUS_ONE;
        }
        out.u.set(i, z);
        out.v.set(i, x);
        Ok(out)
    }
}

impl fmt::Display for PauliOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} X{:?} Z{:?}", self.phase, self.u, self.v)
    }
}
