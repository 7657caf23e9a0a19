#![allow(dead_code)]

pub mod identities;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use stabnorm::circuit::{Circuit, Gate, Generator};
use stabnorm::czxp::{CzxpGate, PairMatrix};
use stabnorm::gf2::{BitMatrix, Letter, TransvectionWord};
use stabnorm::PhaseZ8;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn pair(rng: &mut impl Rng, n: usize) -> (usize, usize) {
    let i = rng.gen_range(0..n);
    let mut j = rng.gen_range(0..n - 1);
    if j >= i {
        j += 1;
    }
    (i, j)
}

/// A random circuit over the whole input language; single-qubit gates only
/// when `n = 1`.
pub fn random_circuit(rng: &mut impl Rng, n: usize, len: usize) -> Circuit {
    let gates = (0..len)
        .map(|_| {
            let kind = rng.gen_range(0..if n > 1 { 9 } else { 6 });
            let q = rng.gen_range(0..n);
            match kind {
                0 => Gate::H(q),
                1 => Gate::P(q),
                2 => Gate::Pdg(q),
                3 => Gate::X(q),
                4 => Gate::Y(q),
                5 => Gate::Z(q),
                6 => {
                    let (control, target) = pair(rng, n);
                    Gate::Cx { control, target }
                }
                7 => {
                    let (i, j) = pair(rng, n);
                    Gate::Cz(i, j)
                }
                _ => {
                    let (i, j) = pair(rng, n);
                    Gate::Swap(i, j)
                }
            }
        })
        .collect();
    Circuit::new(n, gates, PhaseZ8::new(rng.gen_range(0..8))).unwrap()
}

pub fn random_generators(rng: &mut impl Rng, n: usize, len: usize) -> Vec<Generator> {
    (0..len)
        .map(|_| match rng.gen_range(0..if n > 1 { 3 } else { 2 }) {
            0 => Generator::H(rng.gen_range(0..n)),
            1 => Generator::P(rng.gen_range(0..n)),
            _ => {
                let (target, control) = pair(rng, n);
                Generator::Cnot { target, control }
            }
        })
        .collect()
}

pub fn random_czxp(rng: &mut impl Rng, n: usize, len: usize) -> Vec<CzxpGate> {
    (0..len)
        .map(|_| match rng.gen_range(0..if n > 1 { 3 } else { 1 }) {
            0 => CzxpGate::P(rng.gen_range(0..n)),
            1 => {
                let (i, j) = pair(rng, n);
                CzxpGate::Cz(i, j)
            }
            _ => {
                let (target, control) = pair(rng, n);
                CzxpGate::Cnot { target, control }
            }
        })
        .collect()
}

/// Time-ordered circuit for a gate list in operator order.
pub fn czxp_circuit(n: usize, gates: &[CzxpGate]) -> Circuit {
    let gates = gates
        .iter()
        .rev()
        .map(|&g| match g {
            CzxpGate::P(i) => Gate::P(i),
            CzxpGate::Cz(i, j) => Gate::Cz(i, j),
            CzxpGate::Cnot { target, control } => Gate::Cx { control, target },
        })
        .collect();
    Circuit::new(n, gates, PhaseZ8::ONE).unwrap()
}

pub fn random_pairs(rng: &mut impl Rng, n: usize, density: f64) -> PairMatrix {
    let mut b = PairMatrix::empty(n);
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(density) {
                b.toggle(i, j).unwrap();
            }
        }
    }
    b
}

/// The 7-qubit reduction example: the CZ pattern and the basis change
/// found by hand, both as a word and as the displayed matrix.
pub struct Reduction7 {
    pub b: PairMatrix,
    pub word: TransvectionWord,
    pub a: BitMatrix,
}

pub fn reduction_7() -> Reduction7 {
    let b = BitMatrix::from_bit_rows(&[
        &[0, 0, 0, 1, 0, 1, 0],
        &[0, 0, 1, 1, 0, 0, 1],
        &[0, 1, 0, 0, 1, 1, 0],
        &[1, 1, 0, 0, 1, 0, 0],
        &[0, 0, 1, 1, 0, 0, 0],
        &[1, 0, 1, 0, 0, 0, 1],
        &[0, 1, 0, 0, 0, 1, 0],
    ])
    .unwrap();
    use Letter::{Transposition as S, Transvection as T};
    let word = TransvectionWord::from_letters(vec![
        T(3, 5),
        T(0, 1),
        T(0, 4),
        S(4, 2),
        T(4, 5),
        T(4, 6),
        T(1, 2),
        T(1, 5),
        S(5, 6),
    ]);
    let a = BitMatrix::from_bit_rows(&[
        &[1, 1, 0, 0, 0, 0, 1],
        &[0, 1, 1, 0, 0, 0, 1],
        &[0, 0, 0, 0, 1, 1, 1],
        &[0, 0, 0, 1, 0, 0, 1],
        &[0, 0, 1, 0, 0, 0, 0],
        &[0, 0, 0, 0, 0, 0, 1],
        &[0, 0, 0, 0, 0, 1, 0],
    ])
    .unwrap();
    Reduction7 {
        b: PairMatrix::from_matrix(b).unwrap(),
        word,
        a,
    }
}
