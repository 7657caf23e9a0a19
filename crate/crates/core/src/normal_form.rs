//! The normal form `H_w · P_b · Z_B · h · e^{iφ} X_u Z_v · P_d · Z_D · X_A`
//! and the engine that builds it one gate at a time.
//!
//! `h` is a Hadamard on every qubit. Everything right of `h` is called the
//! right part `R`; gates are absorbed by prepending them to the form, each
//! step costing `O(n²)`.

use crate::circuit::{desugar, Circuit, Gate, Generator, Layer, LayerKind, LayeredCircuit};
use crate::czxp::{cto, CzpElement, CzxpElement, CzxpGate, PairMatrix};
use crate::error::{check_index, check_pair, Error, Result};
use crate::gf2::{synthesize, BitMatrix, BitVec, Letter};
use crate::pauli::{PauliOp, PhaseZ8};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalForm {
    pub w: BitVec,
    pub b: BitVec,
    pub cz_b: PairMatrix,
    /// `e^{iφ} X_u Z_v`.
    pub pauli: PauliOp,
    pub d: BitVec,
    pub cz_d: PairMatrix,
    pub cnot: BitMatrix,
}

/// Which branch of the construction absorbed a gate. Targets `i`, controls
/// `j`; `w`, `b`, `B` are read before the update.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Case {
    /// `H_i`.
    Hadamard,
    /// `P_i`, `w_i = 0`.
    PhasePlain,
    /// `P_i`, `w_i = 1`, `b_i = 0`.
    PhaseUnderH,
    /// `P_i`, `w_i = 1`, `b_i = 1`.
    PhaseUnderHWithP,
    /// CNOT, `w_i = w_j = 0`.
    CnotPlain,
    /// CNOT, `w_i = w_j = 1`.
    CnotReversed,
    /// CNOT, `w_i = 1`, `w_j = 0`: a CZ.
    CnotAsCz,
    /// CNOT, `w_i = 0`, `w_j = 1`, `B_ij = 0`, split on `(b_i, b_j)`.
    CnotConjugatedCz { bi: bool, bj: bool },
    /// CNOT, `w_i = 0`, `w_j = 1`, `B_ij = 1`.
    CnotConjugatedCzPaired,
}

impl Case {
    /// Every case, for coverage checks.
    pub fn all() -> Vec<Case> {
        let mut v = vec![
            Case::Hadamard,
            Case::PhasePlain,
            Case::PhaseUnderH,
            Case::PhaseUnderHWithP,
            Case::CnotPlain,
            Case::CnotReversed,
            Case::CnotAsCz,
        ];
        for (bi, bj) in [(false, false), (false, true), (true, false), (true, true)] {
            v.push(Case::CnotConjugatedCz { bi, bj });
        }
        v.push(Case::CnotConjugatedCzPaired);
        v
    }
}

impl NormalForm {
    /// `h · h`, the form of the identity.
    pub fn identity(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::NoQubits);
        }
        Ok(Self {
            w: BitVec::ones(n),
            b: BitVec::zeros(n),
            cz_b: PairMatrix::empty(n),
            pauli: PauliOp::identity(n),
            d: BitVec::zeros(n),
            cz_d: PairMatrix::empty(n),
            cnot: BitMatrix::identity(n),
        })
    }

    pub fn n(&self) -> usize {
        self.w.len()
    }

    pub fn phase(&self) -> PhaseZ8 {
        self.pauli.phase
    }

    // Updates of the right part R.

    fn right_x(&mut self, a: &BitVec) {
        self.pauli.u ^= a;
    }

    fn right_z(&mut self, i: usize) {
        if self.pauli.u.get(i) {
            self.pauli.phase += PhaseZ8::MINUS_ONE;
        }
        self.pauli.v.flip(i);
    }

    fn right_p(&mut self, i: usize) {
        self.pauli.conj_phase_gate(i);
        if self.d.get(i) {
            self.pauli.v.flip(i);
        }
        self.d.flip(i);
    }

    fn right_cz(&mut self, i: usize, j: usize) {
        self.pauli.conj_cz(i, j);
        self.cz_d.toggle_unchecked(i, j);
    }

    fn right_letter(&mut self, l: Letter) {
        let n = self.n();
        self.pauli.conj_letter(l);
        let mut czp = CzpElement {
            a: BitVec::zeros(n),
            b: std::mem::replace(&mut self.d, BitVec::zeros(0)),
            pairs: std::mem::replace(&mut self.cz_d, PairMatrix::empty(0)),
        };
        czp.conj_letter(l);
        self.pauli.v ^= &czp.a;
        self.d = czp.b;
        self.cz_d = czp.pairs;
        l.apply_left(&mut self.cnot);
    }

    /// Replaces `P_b Z_B` by the diagonal part of `e = Z_a P_b' Z_B' X_A'`
    /// and moves the rest through `h`: `Z_a X_A' h = h X_a X_{A'^{-T}}`.
    fn absorb_through_h(&mut self, e: CzxpElement) {
        let CzxpElement { czp, word, .. } = e;
        self.b = czp.b;
        self.cz_b = czp.pairs;
        let word = word.expect("built from gate lists");
        for &l in word.letters().iter().rev() {
            self.right_letter(l.transpose_inverse());
        }
        self.right_x(&czp.a);
    }

    /// `prefix · (∏ list)` as a decomposition with a word for `A`.
    fn decompose(&self, prefix: CzpElement, list: &[CzxpGate]) -> Result<CzxpElement> {
        let e = cto(list, CzxpElement::identity(self.n()))?;
        Ok(CzxpElement {
            czp: prefix.mul(&e.czp)?,
            cnot: e.cnot,
            word: e.word,
        })
    }

    /// `H_w (h P_i h) P_b Z_B h R` with `b_i = 0`, using
    /// `(h P_i h) Z_{B_i} h = ∏_{k∈K_i} (Z_ik X_[ik] P_k) · h P_i`.
    fn phase_under_h(&mut self, i: usize) -> Result<()> {
        let neighbours: Vec<usize> = self.cz_b.row(i).ones_iter().collect();
        self.right_p(i);
        let mut pairs = self.cz_b.clone();
        pairs.clear_vertex(i);
        let prefix = CzpElement::new(BitVec::zeros(self.n()), self.b.clone(), pairs)?;
        let list: Vec<CzxpGate> = neighbours
            .iter()
            .flat_map(|&k| {
                [
                    CzxpGate::Cz(i, k),
                    CzxpGate::Cnot { target: i, control: k },
                    CzxpGate::P(k),
                ]
            })
            .collect();
        let e = self.decompose(prefix, &list)?;
        self.absorb_through_h(e);
        Ok(())
    }

    pub fn prepend_h(&mut self, i: usize) -> Result<Case> {
        check_index(i, self.n())?;
        self.w.flip(i);
        Ok(Case::Hadamard)
    }

    pub fn prepend_p(&mut self, i: usize) -> Result<Case> {
        check_index(i, self.n())?;
        if !self.w.get(i) {
            // P_i P_b = Z_{b_i e_i} P_{b⊕e_i}, and Z_i h = h X_i.
            if self.b.get(i) {
                self.pauli.u.flip(i);
            }
            self.b.flip(i);
            return Ok(Case::PhasePlain);
        }
        if !self.b.get(i) {
            self.phase_under_h(i)?;
            return Ok(Case::PhaseUnderH);
        }
        // H P H P = e^{iπ/4} P† H turns the pair into H_i P_i† H_i with
        // w_i = b_i = 0; P_i† = Z_i P_i leaves X_i, which crosses Z_B
        // as X_i Z_{K_i} and h as Z_i X_{K_i}.
        let neighbours = self.cz_b.row(i).clone();
        self.w.flip(i);
        self.b.flip(i);
        self.right_z(i);
        self.right_x(&neighbours);
        self.pauli.phase += PhaseZ8::new(1);
        self.phase_under_h(i)?;
        Ok(Case::PhaseUnderHWithP)
    }

    /// Prepends `X_[ij]`: target `i`, control `j`.
    pub fn prepend_cnot(&mut self, i: usize, j: usize) -> Result<Case> {
        check_pair(i, j, self.n())?;
        match (self.w.get(i), self.w.get(j)) {
            (false, false) => {
                self.cnot_plain(i, j)?;
                Ok(Case::CnotPlain)
            }
            (true, true) => {
                self.cnot_plain(j, i)?;
                Ok(Case::CnotReversed)
            }
            (true, false) => {
                self.cz_b.toggle_unchecked(i, j);
                Ok(Case::CnotAsCz)
            }
            (false, true) if self.cz_b.contains(i, j) => {
                // Z^h Z_ij = Z_ij (H_i H_j) S_ij: trade the pair for a swap
                // and come back with the roles of i and j exchanged.
                self.cz_b.toggle_unchecked(i, j);
                self.b.swap(i, j);
                self.cz_b.congruence_letter(Letter::Transposition(i, j));
                self.w.flip(i);
                self.w.flip(j);
                self.right_letter(Letter::Transposition(i, j));
                self.prepend_cnot(j, i)?;
                Ok(Case::CnotConjugatedCzPaired)
            }
            (false, true) => self.cnot_conjugated_cz(i, j),
        }
    }

    /// `X_[ij] P_b Z_B h R` with no Hadamard on `i` or `j`.
    fn cnot_plain(&mut self, i: usize, j: usize) -> Result<()> {
        let init = CzxpElement {
            czp: CzpElement::new(BitVec::zeros(self.n()), self.b.clone(), self.cz_b.clone())?,
            cnot: BitMatrix::identity(self.n()),
            word: Some(Default::default()),
        };
        let e = cto(&[CzxpGate::Cnot { target: i, control: j }], init)?;
        self.absorb_through_h(e);
        Ok(())
    }

    /// `Z^h_ij P_b Z_B h R` with `B_ij = 0`, where `Z^h_ij = H_j X_[ij] H_j`.
    fn cnot_conjugated_cz(&mut self, i: usize, j: usize) -> Result<Case> {
        let n = self.n();
        let (bi, bj) = (self.b.get(i), self.b.get(j));
        let ki: Vec<usize> = self.cz_b.row(i).ones_iter().collect();
        let kj: Vec<usize> = self.cz_b.row(j).ones_iter().collect();
        self.right_cz(i, j);
        let mut pairs = self.cz_b.clone();
        pairs.clear_vertex(i);
        pairs.clear_vertex(j);
        let mut b = self.b.clone();
        b.set(i, false);
        b.set(j, false);
        let list: Vec<CzxpGate> = ki
            .iter()
            .flat_map(|&k| [CzxpGate::Cz(i, k), CzxpGate::Cnot { target: j, control: k }])
            .chain(
                kj.iter()
                    .flat_map(|&k| [CzxpGate::Cz(j, k), CzxpGate::Cnot { target: i, control: k }]),
            )
            .collect();
        let e = self.decompose(CzpElement::new(BitVec::zeros(n), b, pairs)?, &list)?;
        self.absorb_through_h(e);

        // What is left is Z^h P_{b_i e_i + b_j e_j} Z^h, prepended to the
        // form with H_w stripped off.
        let mut gates = Vec::new();
        if bi {
            gates.extend([Generator::P(i), Generator::H(j), Generator::P(j), Generator::H(j)]);
            gates.push(Generator::Cnot { target: j, control: i });
        }
        if bj {
            gates.extend([Generator::P(j), Generator::H(i), Generator::P(i), Generator::H(i)]);
            gates.push(Generator::Cnot { target: i, control: j });
        }
        if !gates.is_empty() {
            let saved = std::mem::replace(&mut self.w, BitVec::zeros(n));
            for g in gates.iter().rev() {
                self.prepend(*g)?;
            }
            self.w ^= &saved;
        }
        Ok(Case::CnotConjugatedCz { bi, bj })
    }

    pub fn prepend(&mut self, g: Generator) -> Result<Case> {
        match g {
            Generator::H(i) => self.prepend_h(i),
            Generator::P(i) => self.prepend_p(i),
            Generator::Cnot { target, control } => self.prepend_cnot(target, control),
        }
    }

    /// Layers in time order: `CX-CZ-P-Z-X-H-CZ-P-H`.
    pub fn to_circuit(&self) -> Result<LayeredCircuit> {
        let n = self.n();
        let layers = vec![
            cnot_layer("A", &self.cnot)?,
            cz_layer("D", &self.cz_d),
            vec_layer(LayerKind::Phase, "d", &self.d, Gate::P),
            vec_layer(LayerKind::PauliZ, "v", &self.pauli.v, Gate::Z),
            vec_layer(LayerKind::PauliX, "u", &self.pauli.u, Gate::X),
            vec_layer(LayerKind::Hadamard, "h", &BitVec::ones(n), Gate::H),
            cz_layer("B", &self.cz_b),
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

pub(crate) fn vec_layer(kind: LayerKind, label: &str, v: &BitVec, gate: fn(usize) -> Gate) -> Layer {
    Layer {
        kind,
        label: label.to_string(),
        gates: v.ones_iter().map(gate).collect(),
    }
}

pub(crate) fn cz_layer(label: &str, pairs: &PairMatrix) -> Layer {
    Layer {
        kind: LayerKind::Cz,
        label: label.to_string(),
        gates: pairs.pairs().into_iter().map(|(i, j)| Gate::Cz(i, j)).collect(),
    }
}

/// CNOTs for `X_A`, by Gaussian elimination. The word is an operator
/// product, so its last letter acts first.
pub(crate) fn cnot_layer(label: &str, a: &BitMatrix) -> Result<Layer> {
    let word = synthesize(a)?;
    let gates = word
        .letters()
        .iter()
        .rev()
        .flat_map(|l| match *l {
            Letter::Transvection(i, j) => vec![Gate::Cx { control: j, target: i }],
            Letter::Transposition(i, j) => vec![Gate::Swap(i, j)],
        })
        .collect();
    Ok(Layer {
        kind: LayerKind::Cnot,
        label: label.to_string(),
        gates,
    })
}

pub fn identity_form(n: usize) -> Result<NormalForm> {
    NormalForm::identity(n)
}

/// Folds a generator list, given in time order, into a normal form.
pub fn normalize(n: usize, gens: &[Generator]) -> Result<NormalForm> {
    let mut nf = NormalForm::identity(n)?;
    for g in gens {
        g.validate(n)?;
    }
    for &g in gens {
        nf.prepend(g)?;
    }
    Ok(nf)
}

/// Desugars and normalizes a circuit, global phase included.
pub fn normalize_circuit(c: &Circuit) -> Result<NormalForm> {
    let (gens, phase) = desugar(c);
    let mut nf = normalize(c.n, &gens)?;
    nf.pauli.phase += phase;
    Ok(nf)
}
