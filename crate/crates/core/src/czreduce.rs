//! Congruence reduction of CZ layers and the CZ-reduced form
//! `H_w P_b X_{A1} Z_{B_s} h e^{iφ} X_u Z_v X_{A2} Z_{B_s'} X_{A3} P_d`,
//! whose two CZ layers hold at most `⌊n/2⌋` gates each.

use crate::circuit::{Gate, LayerKind, LayeredCircuit};
use crate::czxp::{CzpElement, PairMatrix};
use crate::error::{check_len, Result};
use crate::gf2::{synthesize, BitMatrix, BitVec, Letter, TransvectionWord};
use crate::normal_form::{cnot_layer, cz_layer, vec_layer, NormalForm};
use crate::pauli::PauliOp;

/// The block pattern `B_s`: pairs `{t, t+p}` for each `s_t = 1`, where
/// `p = ⌊n/2⌋`. For odd `n` the last qubit is never paired.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ReducedPattern {
    pub s: BitVec,
    pub n: usize,
}

impl ReducedPattern {
    pub fn zero(n: usize) -> Self {
        Self {
            s: BitVec::zeros(n / 2),
            n,
        }
    }

    pub fn p(&self) -> usize {
        self.n / 2
    }

    pub fn to_pairs(&self) -> PairMatrix {
        let p = self.p();
        let mut out = PairMatrix::empty(self.n);
        for t in self.s.ones_iter() {
            out.toggle_unchecked(t, t + p);
        }
        out
    }

    /// Number of CZ gates in the layer.
    pub fn len(&self) -> usize {
        self.s.count_ones()
    }

    pub fn is_empty(&self) -> bool {
        self.s.is_zero()
    }
}

/// Finds `A` with `Aᵀ B A = B_s`. Slot `t` takes the first nonzero entry
/// `(r, c)`, `r < c`, of rows `t..n`, swaps it to `(t, t+p)` and clears
/// rows `t` and `t+p` with transvections. Returns `A` and its word.
pub fn reduce_symmetric(b: &PairMatrix) -> Result<(ReducedPattern, BitMatrix, TransvectionWord)> {
    let n = b.n();
    let p = n / 2;
    let mut m = b.clone();
    let mut a = BitMatrix::identity(n);
    let mut word = TransvectionWord::new();
    let mut pattern = ReducedPattern::zero(n);
    let mut apply = |l: Letter, m: &mut PairMatrix, a: &mut BitMatrix| {
        m.congruence_letter(l);
        l.apply_right(a);
        word.push(l);
    };
    for t in 0..p {
        let pivot = (t..n).find_map(|r| m.row(r).first_one_from(r + 1).map(|c| (r, c)));
        let Some((r, mut c)) = pivot else { break };
        if r != t {
            apply(Letter::Transposition(t, r), &mut m, &mut a);
            if c == t {
                c = r;
            }
        }
        let (x, y) = (t, t + p);
        if c != y {
            apply(Letter::Transposition(y, c), &mut m, &mut a);
        }
        debug_assert!(m.contains(x, y));
        let row_x: Vec<usize> = m.row(x).ones_iter().filter(|&k| k != y).collect();
        for k in row_x {
            apply(Letter::Transvection(y, k), &mut m, &mut a);
        }
        let row_y: Vec<usize> = m.row(y).ones_iter().filter(|&k| k != x).collect();
        for k in row_y {
            apply(Letter::Transvection(x, k), &mut m, &mut a);
        }
        pattern.s.set(t, true);
    }
    debug_assert_eq!(m, pattern.to_pairs());
    Ok((pattern, a, word))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CzReducedForm {
    pub w: BitVec,
    pub b: BitVec,
    pub a1: BitMatrix,
    pub s1: ReducedPattern,
    /// `e^{iφ} X_u Z_v`.
    pub pauli: PauliOp,
    pub a2: BitMatrix,
    pub s2: ReducedPattern,
    pub a3: BitMatrix,
    pub d: BitVec,
}

impl CzReducedForm {
    pub fn n(&self) -> usize {
        self.w.len()
    }

    /// Layers in time order: `P-CX-CZ-CX-Z-X-H-CZ-CX-P-H`.
    pub fn to_circuit(&self) -> Result<LayeredCircuit> {
        let n = self.n();
        let layers = vec![
            vec_layer(LayerKind::Phase, "d", &self.d, Gate::P),
            cnot_layer("A3", &self.a3)?,
            cz_layer("B_s'", &self.s2.to_pairs()),
            cnot_layer("A2", &self.a2)?,
            vec_layer(LayerKind::PauliZ, "v", &self.pauli.v, Gate::Z),
            vec_layer(LayerKind::PauliX, "u", &self.pauli.u, Gate::X),
            vec_layer(LayerKind::Hadamard, "h", &BitVec::ones(n), Gate::H),
            cz_layer("B_s", &self.s1.to_pairs()),
            cnot_layer("A1", &self.a1)?,
            vec_layer(LayerKind::Phase, "b", &self.b, Gate::P),
            vec_layer(LayerKind::Hadamard, "w", &self.w, Gate::H),
        ];
        Ok(LayeredCircuit {
            n,
            phase: self.pauli.phase,
            layers,
        })
    }
}

/// Rewrites a normal form so that both CZ layers are reduced patterns.
///
/// `P_d Z_D X_A = X_A Z_a' P_b' Z_B'`; each CZ layer `Z_C` becomes
/// `Z_{q_{C_s}(M⁻¹)} X_M Z_{C_s} X_M⁻¹` with `C_s = Mᵀ C M`; the `Z`
/// corrections join the Pauli layer, which finally absorbs `X_{A1ᵀ}`.
pub fn cz_reduce(nf: &NormalForm) -> Result<CzReducedForm> {
    let n = nf.n();
    let inv_word = synthesize(&nf.cnot)?.inverse();
    let diag = CzpElement::new(BitVec::zeros(n), nf.d.clone(), nf.cz_d.clone())?;
    let moved = diag.conj_by_cnot_word(&inv_word)?;

    let (s1, a1, _) = reduce_symmetric(&nf.cz_b)?;
    let (s2, a2, _) = reduce_symmetric(&moved.pairs)?;
    let a1_inv = a1.invert()?;
    let a2_inv = a2.invert()?;
    let q1 = s1.to_pairs().quadratic_form_columns(&a1_inv)?;
    let q2 = s2.to_pairs().quadratic_form_columns(&a2_inv)?;

    let u = &nf.pauli.u ^ &q1;
    let a_inv_t = nf.cnot.transpose_inverse()?;
    let v = &nf.pauli.v ^ &a_inv_t.mul_vec(&(&moved.a ^ &q2));
    let pauli = PauliOp {
        phase: nf.pauli.phase,
        u: a1.transpose().mul_vec(&u),
        v: a1_inv.mul_vec(&v),
    };
    Ok(CzReducedForm {
        w: nf.w.clone(),
        b: nf.b.clone(),
        a1: a1.clone(),
        s1,
        pauli,
        a2: a1.transpose().mul(&nf.cnot).mul(&a2),
        s2,
        a3: a2_inv,
        d: moved.b,
    })
}

/// Checks `Aᵀ B A = B_s` bit for bit.
pub fn check_congruence(b: &PairMatrix, a: &BitMatrix, pattern: &ReducedPattern) -> Result<bool> {
    check_len(b.n(), a.dim())?;
    Ok(b.congruence(a)? == pattern.to_pairs())
}
