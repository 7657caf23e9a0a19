//! Exact checks of the operator identities the rewriting relies on. Every
//! identity is instantiated over all index choices (and all vectors, pair
//! sets and matrices where it is parametrised) at a small width, and both
//! sides are compared as exact unitaries. Right-hand sides are built from
//! single gates or from basis-state formulas, never from the library rules
//! under test; where a library rule exists it is compared as well.
//!
//! Four identities only hold after a correction; for those the check also
//! confirms that the uncorrected statement fails somewhere.

use stabnorm::circuit::Gate;
use stabnorm::czxp::{conj_cz_layer_by_matrix, CzpElement, PairMatrix};
use stabnorm::exact::{bits_to_index, index_to_bits, DenseUnitary};
use stabnorm::gf2::{synthesize, BitMatrix, BitVec};
use stabnorm::{PauliOp, PhaseZ8};

pub struct Identity {
    pub name: &'static str,
    /// Number of instances checked, or the first failure.
    pub check: fn() -> Result<usize, String>,
}

#[derive(Clone)]
enum F {
    G(Gate),
    Za(BitVec),
    Pb(BitVec),
    Zb(PairMatrix),
    Xa(BitMatrix),
    Zeta(i64),
}

/// Product in operator order: the last factor acts first.
fn op(n: usize, fs: &[F]) -> DenseUnitary {
    let mut u = DenseUnitary::identity(n);
    for f in fs.iter().rev() {
        match f {
            F::G(g) => u.apply_gate(g).unwrap(),
            F::Za(a) => {
                for q in a.ones_iter() {
                    u.apply_gate(&Gate::Z(q)).unwrap();
                }
            }
            F::Pb(b) => {
                for q in b.ones_iter() {
                    u.apply_gate(&Gate::P(q)).unwrap();
                }
            }
            F::Zb(b) => {
                for (i, j) in b.pairs() {
                    u.apply_gate(&Gate::Cz(i, j)).unwrap();
                }
            }
            F::Xa(a) => u.apply_cnot_matrix(a).unwrap(),
            F::Zeta(k) => u.apply_phase(PhaseZ8::new(*k)),
        }
    }
    u
}

/// `|b> -> ζ^k |σ(b)>` from a formula on bit vectors.
fn basis_map(n: usize, f: impl Fn(&BitVec) -> (BitVec, i64)) -> DenseUnitary {
    let mut u = DenseUnitary::identity(n);
    u.apply_monomial(|x| {
        let (y, k) = f(&index_to_bits(n, x));
        (bits_to_index(&y), k.rem_euclid(8) as u8)
    });
    u
}

fn g(gate: Gate) -> F {
    F::G(gate)
}

/// `X_[ij]`: target `i`, control `j`.
fn cx(i: usize, j: usize) -> F {
    F::G(Gate::Cx { control: j, target: i })
}

fn h(n: usize) -> Vec<F> {
    (0..n).map(|q| g(Gate::H(q))).collect()
}

/// `U^h = h U h`.
fn conj_h(n: usize, u: Vec<F>) -> Vec<F> {
    [h(n), u, h(n)].concat()
}

/// `ζ^k X_u Z_v` from single gates.
fn xz(k: i64, u: &BitVec, v: &BitVec) -> Vec<F> {
    std::iter::once(F::Zeta(k))
        .chain(u.ones_iter().map(|q| g(Gate::X(q))))
        .chain(v.ones_iter().map(|q| g(Gate::Z(q))))
        .collect()
}

fn e(n: usize, i: usize) -> BitVec {
    BitVec::unit(n, i)
}

fn pair(n: usize, i: usize, j: usize) -> PairMatrix {
    PairMatrix::from_pairs(n, &[(i, j)]).unwrap()
}

/// `T_ij = I + E_ij`, written `[ij]`.
fn t(n: usize, i: usize, j: usize) -> BitMatrix {
    let mut m = BitMatrix::identity(n);
    m.flip(i, j);
    m
}

/// The permutation matrix `(ij)`.
fn tau(n: usize, i: usize, j: usize) -> BitMatrix {
    let mut m = BitMatrix::identity(n);
    m.flip(i, i);
    m.flip(j, j);
    m.flip(i, j);
    m.flip(j, i);
    m
}

fn vecs(n: usize) -> Vec<BitVec> {
    (0..1usize << n).map(|x| index_to_bits(n, x)).collect()
}

fn pair_sets(n: usize) -> Vec<PairMatrix> {
    let all: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    (0..1usize << all.len())
        .map(|mask| {
            let chosen: Vec<_> = all
                .iter()
                .enumerate()
                .filter(|(k, _)| mask >> k & 1 == 1)
                .map(|(_, &p)| p)
                .collect();
            PairMatrix::from_pairs(n, &chosen).unwrap()
        })
        .collect()
}

fn invertible(n: usize) -> Vec<BitMatrix> {
    (0..1usize << (n * n))
        .map(|mask| {
            let mut m = BitMatrix::zeros(n);
            for k in 0..n * n {
                if mask >> k & 1 == 1 {
                    m.set(k / n, k % n, true);
                }
            }
            m
        })
        .filter(|m| m.rank() == n)
        .collect()
}

fn ordered_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n)
        .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
        .collect()
}

fn triples(n: usize) -> Vec<(usize, usize, usize)> {
    ordered_pairs(n)
        .into_iter()
        .flat_map(|(i, j)| (0..n).filter(move |&k| k != i && k != j).map(move |k| (i, j, k)))
        .collect()
}

fn from_matrix(m: BitMatrix) -> PairMatrix {
    PairMatrix::from_matrix(m).unwrap()
}

/// Sum over the pairs of the set, as in the definition of `q_B`.
fn q_naive(b: &PairMatrix, x: &BitVec) -> bool {
    b.pairs().iter().filter(|&&(i, j)| x.get(i) && x.get(j)).count() % 2 == 1
}

struct Tally(usize);

impl Tally {
    fn same(&mut self, lhs: &DenseUnitary, rhs: &DenseUnitary, what: impl FnOnce() -> String) -> Result<(), String> {
        self.0 += 1;
        if lhs == rhs {
            Ok(())
        } else {
            Err(what())
        }
    }

    fn truth(&mut self, ok: bool, what: impl FnOnce() -> String) -> Result<(), String> {
        self.0 += 1;
        if ok {
            Ok(())
        } else {
            Err(what())
        }
    }
}

const N: usize = 3;

fn involutions() -> Result<usize, String> {
    let mut c = Tally(0);
    let id = DenseUnitary::identity(N);
    for q in 0..N {
        for gate in [Gate::H(q), Gate::X(q), Gate::Y(q), Gate::Z(q)] {
            c.same(&op(N, &[g(gate), g(gate)]), &id, || format!("{gate}^2"))?;
        }
    }
    Ok(c.0)
}

fn single_qubit_relations() -> Result<usize, String> {
    let mut c = Tally(0);
    for q in 0..N {
        let (x, y, z, hq, p) = (
            g(Gate::X(q)),
            g(Gate::Y(q)),
            g(Gate::Z(q)),
            g(Gate::H(q)),
            g(Gate::P(q)),
        );
        c.same(
            &op(N, &[x.clone(), z.clone()]),
            &op(N, &[F::Zeta(4), z.clone(), x.clone()]),
            || "XZ = -ZX".into(),
        )?;
        c.same(
            &op(N, std::slice::from_ref(&y)),
            &op(N, &[F::Zeta(2), x.clone(), z.clone()]),
            || "Y = iXZ".into(),
        )?;
        c.same(
            &op(N, &[hq.clone(), z.clone(), hq.clone()]),
            &op(N, std::slice::from_ref(&x)),
            || "HZH = X".into(),
        )?;
        c.same(
            &op(N, &[p.clone(), p.clone()]),
            &op(N, std::slice::from_ref(&z)),
            || "P^2 = Z".into(),
        )?;
        let hp = [hq.clone(), p.clone()];
        let ph = [p.clone(), hq.clone()];
        let zeta = op(N, &[F::Zeta(1)]);
        c.same(
            &op(N, &hp.iter().cycle().take(6).cloned().collect::<Vec<_>>()),
            &zeta,
            || "(HP)^3".into(),
        )?;
        c.same(
            &op(N, &ph.iter().cycle().take(6).cloned().collect::<Vec<_>>()),
            &zeta,
            || "(PH)^3".into(),
        )?;
    }
    Ok(c.0)
}

/// `P X P^{-1} = Y`; the form `P X P = Y` is false.
fn phase_conjugates_x_to_y() -> Result<usize, String> {
    let mut c = Tally(0);
    for q in 0..N {
        let (p, x, y) = (g(Gate::P(q)), g(Gate::X(q)), g(Gate::Y(q)));
        c.same(
            &op(N, &[p.clone(), x.clone(), g(Gate::Pdg(q))]),
            &op(N, std::slice::from_ref(&y)),
            || "PXP^-1 = Y".into(),
        )?;
        c.truth(op(N, &[p.clone(), x, p]) != op(N, &[y]), || {
            "PXP = Y unexpectedly holds".into()
        })?;
    }
    Ok(c.0)
}

fn basis_actions() -> Result<usize, String> {
    let mut c = Tally(0);
    for u in vecs(N) {
        let zu = op(N, &[F::Za(u.clone())]);
        c.same(
            &zu,
            &basis_map(N, |b| (b.clone(), if u.dot(b) { 4 } else { 0 })),
            || format!("Z_u {u:?}"),
        )?;
        let pu = op(N, &[F::Pb(u.clone())]);
        c.same(&pu, &basis_map(N, |b| (b.clone(), 2 * u.overlap(b) as i64)), || {
            format!("P_u {u:?}")
        })?;
    }
    for (i, j) in ordered_pairs(N) {
        let flip = basis_map(N, |b| {
            let mut y = b.clone();
            if b.get(j) {
                y.flip(i);
            }
            (y, 0)
        });
        c.same(&op(N, &[cx(i, j)]), &flip, || format!("X_[{i}{j}] on basis"))?;
        c.same(&op(N, &[F::Xa(t(N, i, j))]), &flip, || format!("X_[{i}{j}] = X_T"))?;
        let tij = t(N, i, j);
        c.same(&flip, &basis_map(N, |b| (tij.mul_vec(b), 0)), || {
            format!("|T_{i}{j} b>")
        })?;
        if i < j {
            let cz = basis_map(N, |b| (b.clone(), if b.get(i) && b.get(j) { 4 } else { 0 }));
            c.same(&op(N, &[g(Gate::Cz(i, j))]), &cz, || format!("Z_{i}{j}"))?;
            let sw = basis_map(N, |b| {
                let mut y = b.clone();
                y.swap(i, j);
                (y, 0)
            });
            c.same(&op(N, &[g(Gate::Swap(i, j))]), &sw, || format!("S_{i}{j}"))?;
        }
    }
    Ok(c.0)
}

fn cnot_hadamard_equivalences() -> Result<usize, String> {
    let mut c = Tally(0);
    for (i, j) in ordered_pairs(N) {
        let (hi, hj) = (g(Gate::H(i)), g(Gate::H(j)));
        let xij = op(N, &[cx(i, j)]);
        let flipped = op(N, &[hi.clone(), hj.clone(), cx(j, i), hi.clone(), hj.clone()]);
        c.same(&xij, &flipped, || format!("X_[{i}{j}] via Hadamards"))?;
        let zij = op(N, &[g(Gate::Cz(i, j))]);
        c.same(&zij, &op(N, &[hi.clone(), cx(i, j), hi.clone()]), || {
            format!("Z_{i}{j} = H_i X_ij H_i")
        })?;
        c.same(&zij, &op(N, &[hj.clone(), cx(j, i), hj.clone()]), || {
            format!("Z_{i}{j} = H_j X_ji H_j")
        })?;
        let sij = op(N, &[g(Gate::Swap(i, j))]);
        c.same(&sij, &op(N, &[cx(i, j), cx(j, i), cx(i, j)]), || {
            format!("S_{i}{j} = X_ij X_ji X_ij")
        })?;
        c.same(&sij, &op(N, &[cx(j, i), cx(i, j), cx(j, i)]), || {
            format!("S_{i}{j} = X_ji X_ij X_ji")
        })?;
        c.same(&sij, &op(N, &[F::Xa(tau(N, i, j))]), || format!("S_{i}{j} = X_(ij)"))?;
        c.truth(tau(N, i, j) == t(N, i, j).mul(&t(N, j, i)).mul(&t(N, i, j)), || {
            "(ij) = [ij][ji][ij]".into()
        })?;
    }
    for (i, j, k) in triples(N) {
        c.same(
            &op(N, &[cx(i, j), cx(j, k), cx(i, j)]),
            &op(N, &[cx(j, k), cx(i, k)]),
            || format!("X_[{i}{j}] X_[{j}{k}] X_[{i}{j}]"),
        )?;
    }
    Ok(c.0)
}

fn pauli_multiplication() -> Result<usize, String> {
    let mut c = Tally(0);
    let n = N;
    let vs = vecs(n);
    for l in 0..4i64 {
        for l2 in 0..4i64 {
            for u in &vs {
                for v in &vs {
                    for u2 in &vs {
                        for v2 in &vs {
                            let lhs = op(n, &[xz(2 * l, u, v), xz(2 * l2, u2, v2)].concat());
                            let sign = if u2.dot(v) { 4 } else { 0 };
                            let rhs = op(n, &xz(2 * (l + l2) + sign, &(u ^ u2), &(v ^ v2)));
                            c.same(&lhs, &rhs, || format!("pauli product {u:?}{v:?}{u2:?}{v2:?}"))?;
                            let p1 = PauliOp::new(PhaseZ8::new(2 * l), u.clone(), v.clone()).unwrap();
                            let p2 = PauliOp::new(PhaseZ8::new(2 * l2), u2.clone(), v2.clone()).unwrap();
                            let m = p1.mul(&p2).unwrap();
                            c.same(&op(n, &xz(m.phase.k() as i64, &m.u, &m.v)), &rhs, || {
                                "PauliOp::mul".into()
                            })?;
                        }
                    }
                }
            }
        }
    }
    Ok(c.0)
}

fn cz_layers_and_quadratic_forms() -> Result<usize, String> {
    let mut c = Tally(0);
    for b in pair_sets(N) {
        let gates = op(N, &[F::Zb(b.clone())]);
        let formula = basis_map(N, |x| (x.clone(), if q_naive(&b, x) { 4 } else { 0 }));
        c.same(&gates, &formula, || format!("Z_B on basis, B = {:?}", b.pairs()))?;
        let mut layer = DenseUnitary::identity(N);
        layer.apply_cz_layer(&b).unwrap();
        c.same(&layer, &gates, || "Z_B through q_B".into())?;
        for x in vecs(N) {
            let by_entries = (0..N)
                .flat_map(|i| (i + 1..N).map(move |j| (i, j)))
                .filter(|&(i, j)| b.matrix().get(i, j) && x.get(i) && x.get(j))
                .count()
                % 2
                == 1;
            c.truth(by_entries == q_naive(&b, &x), || "q_B by entries".into())?;
            c.truth(b.quadratic_form(&x).unwrap() == by_entries, || "library q_B".into())?;
        }
    }
    Ok(c.0)
}

fn diagonal_group_multiplication() -> Result<usize, String> {
    let mut c = Tally(0);
    let n = N;
    let mut elems = Vec::new();
    for a in vecs(n) {
        for b in vecs(n) {
            for bb in pair_sets(n) {
                elems.push(CzpElement::new(a.clone(), b.clone(), bb).unwrap());
            }
        }
    }
    let as_ops = |x: &CzpElement| vec![F::Za(x.a.clone()), F::Pb(x.b.clone()), F::Zb(x.pairs.clone())];
    for x in &elems {
        for y in &elems {
            let lhs = op(n, &[as_ops(x), as_ops(y)].concat());
            let mut a = &x.a ^ &y.a;
            a ^= &(&x.b & &y.b);
            let rhs = CzpElement::new(a, &x.b ^ &y.b, x.pairs.xor(&y.pairs).unwrap()).unwrap();
            c.same(&lhs, &op(n, &as_ops(&rhs)), || "Z_a P_b Z_B product".into())?;
            c.truth(x.mul(y).unwrap() == rhs, || "CzpElement::mul".into())?;
        }
    }
    Ok(c.0)
}

fn cnot_conjugation_of_diagonal_gates() -> Result<usize, String> {
    let mut c = Tally(0);
    // Width 4 also covers the case of Z_pq disjoint from {i, j}.
    for n in [N, 4] {
        for (i, j) in ordered_pairs(n) {
            let x = cx(i, j);
            let conj = |u: Vec<F>| op(n, &[vec![x.clone()], u, vec![x.clone()]].concat());
            c.same(
                &conj(vec![g(Gate::Cz(i, j))]),
                &op(n, &[g(Gate::Cz(i, j)), g(Gate::Z(j))]),
                || "X Z_ij X".into(),
            )?;
            c.same(
                &conj(vec![g(Gate::Z(i))]),
                &op(n, &[g(Gate::Z(i)), g(Gate::Z(j))]),
                || "X Z_i X".into(),
            )?;
            c.same(&conj(vec![g(Gate::Z(j))]), &op(n, &[g(Gate::Z(j))]), || {
                "X Z_j X".into()
            })?;
            c.same(
                &conj(vec![g(Gate::P(i))]),
                &op(n, &[g(Gate::P(i)), g(Gate::P(j)), g(Gate::Cz(i, j))]),
                || "X P_i X".into(),
            )?;
            c.same(&conj(vec![g(Gate::P(j))]), &op(n, &[g(Gate::P(j))]), || {
                "X P_j X".into()
            })?;
            for k in (0..n).filter(|&k| k != i && k != j) {
                c.same(
                    &conj(vec![g(Gate::Cz(i, k))]),
                    &op(n, &[g(Gate::Cz(i, k)), g(Gate::Cz(j, k))]),
                    || format!("X_[{i}{j}] Z_{i}{k} X_[{i}{j}]"),
                )?;
            }
            for p in (0..n).filter(|&p| p != i) {
                for q in (p + 1..n).filter(|&q| q != i) {
                    c.same(&conj(vec![g(Gate::Cz(p, q))]), &op(n, &[g(Gate::Cz(p, q))]), || {
                        "X Z_pq X".into()
                    })?;
                }
            }
        }
    }
    Ok(c.0)
}

fn cnot_conjugation_of_layers() -> Result<usize, String> {
    let mut c = Tally(0);
    for (i, j) in ordered_pairs(N) {
        let x = cx(i, j);
        let conj = |u: F| op(N, &[x.clone(), u, x.clone()]);
        let tji = t(N, j, i);
        let tij = t(N, i, j);
        for a in vecs(N) {
            c.same(&conj(F::Za(a.clone())), &op(N, &[F::Za(tji.mul_vec(&a))]), || {
                format!("X Z_a X, a = {a:?}")
            })?;
            let b = a;
            let zfix = if b.get(i) && b.get(j) {
                e(N, j)
            } else {
                BitVec::zeros(N)
            };
            let pfix = if b.get(i) { pair(N, i, j) } else { PairMatrix::empty(N) };
            c.same(
                &conj(F::Pb(b.clone())),
                &op(N, &[F::Za(zfix), F::Pb(tji.mul_vec(&b)), F::Zb(pfix)]),
                || format!("X P_b X, b = {b:?}"),
            )?;
        }
        for bb in pair_sets(N) {
            let congruent = from_matrix(tji.mul(bb.matrix()).mul(&tij));
            let zfix = if bb.contains(i, j) { e(N, j) } else { BitVec::zeros(N) };
            let lhs = conj(F::Zb(bb.clone()));
            c.same(&lhs, &op(N, &[F::Za(zfix), F::Zb(congruent.clone())]), || {
                format!("X Z_B X, B = {:?}", bb.pairs())
            })?;

            // The pieces of the proof: B = B_ij{ij} ⊕ B_i' ⊕ B_i^C.
            let bi = from_matrix({
                let mut m = BitMatrix::zeros(N);
                for k in bb.row(i).ones_iter() {
                    m.set(i, k, true);
                    m.set(k, i, true);
                }
                m
            });
            let bic = bb.xor(&bi).unwrap();
            let bij = bb.contains(i, j);
            let ki: Vec<usize> = bi.row(i).ones_iter().filter(|&k| k != j).collect();
            let mut rhs = Vec::new();
            if bij {
                rhs.push(g(Gate::Cz(i, j)));
            }
            rhs.push(F::Zb(bic));
            for &k in &ki {
                rhs.push(g(Gate::Cz(i, k)));
                rhs.push(g(Gate::Cz(j, k)));
            }
            c.same(&op(N, &[F::Zb(congruent)]), &op(N, &rhs), || {
                "congruent layer by pieces".into()
            })?;
            if bij {
                rhs.insert(1, g(Gate::Z(j)));
            }
            c.same(&lhs, &op(N, &rhs), || "conjugated layer by pieces".into())?;
        }
    }
    Ok(c.0)
}

fn cnot_matrix_conjugation_of_cz_layers() -> Result<usize, String> {
    let mut c = Tally(0);
    for a in invertible(N) {
        let inv = a.invert().unwrap();
        let inv_t = inv.transpose();
        for bb in pair_sets(N) {
            let lhs = op(N, &[F::Xa(a.clone()), F::Zb(bb.clone()), F::Xa(inv.clone())]);
            let q = BitVec::from_bools(&(0..N).map(|k| q_naive(&bb, &inv.column(k))).collect::<Vec<_>>());
            let conj = from_matrix(inv_t.mul(bb.matrix()).mul(&inv));
            c.same(&lhs, &op(N, &[F::Za(q.clone()), F::Zb(conj.clone())]), || {
                "X_A Z_B X_A^-1".into()
            })?;
            let lib = conj_cz_layer_by_matrix(&bb, &a).unwrap();
            c.truth(lib == (q, conj), || "library conjugation of Z_B".into())?;
        }
    }
    Ok(c.0)
}

fn swap_conjugation() -> Result<usize, String> {
    let mut c = Tally(0);
    for (i, j) in ordered_pairs(N).into_iter().filter(|(i, j)| i < j) {
        let s = g(Gate::Swap(i, j));
        let p = tau(N, i, j);
        for a in vecs(N) {
            let pa = p.mul_vec(&a);
            c.same(
                &op(N, &[s.clone(), F::Za(a.clone()), s.clone()]),
                &op(N, &[F::Za(pa.clone())]),
                || "S Z_a S".into(),
            )?;
            c.same(
                &op(N, &[s.clone(), F::Pb(a.clone()), s.clone()]),
                &op(N, &[F::Pb(pa)]),
                || "S P_b S".into(),
            )?;
        }
        for bb in pair_sets(N) {
            let moved = from_matrix(p.mul(bb.matrix()).mul(&p));
            c.same(
                &op(N, &[s.clone(), F::Zb(bb), s.clone()]),
                &op(N, &[F::Zb(moved)]),
                || "S Z_B S".into(),
            )?;
        }
    }
    Ok(c.0)
}

fn hadamard_layer_conjugation_of_cnots() -> Result<usize, String> {
    let mut c = Tally(0);
    for a in invertible(N) {
        let lhs = op(N, &conj_h(N, vec![F::Xa(a.clone())]));
        c.same(&lhs, &op(N, &[F::Xa(a.transpose_inverse().unwrap())]), || {
            "h X_A h".into()
        })?;
    }
    Ok(c.0)
}

fn conjugation_by_phase_under_h() -> Result<usize, String> {
    let mut c = Tally(0);
    for i in 0..N {
        let ph = conj_h(N, vec![g(Gate::P(i))]);
        let ph_inv = conj_h(N, vec![g(Gate::Pdg(i))]);
        let lhs = op(N, &[ph.clone(), vec![g(Gate::P(i))], ph_inv.clone()].concat());
        c.same(&lhs, &op(N, &[F::Zeta(1), g(Gate::H(i)), g(Gate::X(i))]), || {
            "P^h P P^-h".into()
        })?;
    }
    Ok(c.0)
}

/// `P_i^h Z_ik P_i^{-h} = Z_ik X_[ik] P_k` with no global phase; the
/// variant carrying `e^{-iπ/4}` fails.
fn cz_under_phase_under_h() -> Result<usize, String> {
    let mut c = Tally(0);
    for (i, k) in ordered_pairs(N) {
        let ph = conj_h(N, vec![g(Gate::P(i))]);
        let ph_inv = conj_h(N, vec![g(Gate::Pdg(i))]);
        let lhs = op(N, &[ph, vec![g(Gate::Cz(i, k))], ph_inv].concat());
        let rhs = [g(Gate::Cz(i, k)), cx(i, k), g(Gate::P(k))];
        c.same(&lhs, &op(N, &rhs), || format!("P_{i}^h Z_{i}{k} P_{i}^-h"))?;
        let stated = op(N, &[vec![F::Zeta(-1)], rhs.to_vec()].concat());
        c.truth(lhs != stated, || "phased variant unexpectedly holds".into())?;
    }
    Ok(c.0)
}

fn cz_under_cz_under_h() -> Result<usize, String> {
    let mut c = Tally(0);
    for (i, j) in ordered_pairs(N) {
        let zh = conj_h(N, vec![g(Gate::Cz(i, j))]);
        let z = vec![g(Gate::Cz(i, j))];
        let swap_h = op(N, &[g(Gate::H(i)), g(Gate::H(j)), g(Gate::Swap(i, j))]);
        c.same(&op(N, &[zh.clone(), z.clone(), zh.clone()].concat()), &swap_h, || {
            "Z^h Z Z^h".into()
        })?;
        c.same(&op(N, &[z.clone(), zh.clone(), z.clone()].concat()), &swap_h, || {
            "Z Z^h Z".into()
        })?;
        c.same(
            &swap_h,
            &op(N, &[g(Gate::Swap(i, j)), g(Gate::H(i)), g(Gate::H(j))]),
            || "S H H".into(),
        )?;
        for k in (0..N).filter(|&k| k != i && k != j) {
            let lhs = op(N, &[zh.clone(), vec![g(Gate::Cz(i, k))], zh.clone()].concat());
            c.same(&lhs, &op(N, &[cx(j, k), g(Gate::Cz(i, k))]), || {
                "Z_ij^h Z_ik Z_ij^h".into()
            })?;
            c.same(&lhs, &op(N, &[g(Gate::Cz(i, k)), cx(j, k)]), || "Z_ik X_[jk]".into())?;
        }
        let lhs = op(N, &[zh.clone(), vec![g(Gate::P(j))], zh].concat());
        let rhs = [conj_h(N, vec![g(Gate::P(i))]), vec![cx(i, j), g(Gate::P(j))]].concat();
        c.same(&lhs, &op(N, &rhs), || "Z_ij^h P_j Z_ij^h".into())?;
    }
    Ok(c.0)
}

fn pauli_conjugation_by_gates() -> Result<usize, String> {
    let mut c = Tally(0);
    let vs = vecs(N);
    for u in &vs {
        for v in &vs {
            let p = PauliOp::new(PhaseZ8::ONE, u.clone(), v.clone()).unwrap();
            let as_op = |q: &PauliOp| op(N, &xz(q.phase.k() as i64, &q.u, &q.v));
            for i in 0..N {
                let lhs = op(N, &[vec![g(Gate::P(i))], xz(0, u, v), vec![g(Gate::Pdg(i))]].concat());
                let mut v2 = v.clone();
                if u.get(i) {
                    v2.flip(i);
                }
                let rhs = op(N, &xz(if u.get(i) { 2 } else { 0 }, u, &v2));
                c.same(&lhs, &rhs, || "P_i X_u Z_v P_i^-1".into())?;
                c.same(&as_op(&p.conj_by_phase_gates(&e(N, i)).unwrap()), &rhs, || {
                    "library P_i rule".into()
                })?;
            }
            for (i, j) in ordered_pairs(N) {
                let lhs = op(N, &[vec![cx(i, j)], xz(0, u, v), vec![cx(i, j)]].concat());
                let rhs = op(N, &xz(0, &t(N, i, j).mul_vec(u), &t(N, j, i).mul_vec(v)));
                c.same(&lhs, &rhs, || "X_[ij] X_u Z_v X_[ij]".into())?;
                c.same(&as_op(&p.conj_by_cnot(i, j).unwrap()), &rhs, || {
                    "library CNOT rule".into()
                })?;
                if i < j {
                    let lhs = op(
                        N,
                        &[vec![g(Gate::Cz(i, j))], xz(0, u, v), vec![g(Gate::Cz(i, j))]].concat(),
                    );
                    let mut v2 = v.clone();
                    if u.get(j) {
                        v2.flip(i);
                    }
                    if u.get(i) {
                        v2.flip(j);
                    }
                    let sign = if u.get(i) && u.get(j) { 4 } else { 0 };
                    let rhs = op(N, &xz(sign, u, &v2));
                    c.same(&lhs, &rhs, || "Z_ij X_u Z_v Z_ij".into())?;
                    let pm = pair(N, i, j);
                    c.same(&op(N, &xz(sign, u, &(v ^ &pm.mul_vec(u).unwrap()))), &rhs, || {
                        "{ij}u form".into()
                    })?;
                    c.same(&as_op(&p.conj_by_cz_layer(&pm).unwrap()), &rhs, || {
                        "library CZ rule".into()
                    })?;
                }
            }
        }
    }
    Ok(c.0)
}

/// `h X_u Z_v h = (-1)^{u·v} X_v Z_u`; the unsigned form fails when
/// `u·v = 1`.
fn pauli_conjugation_by_hadamard_layer() -> Result<usize, String> {
    let mut c = Tally(0);
    let mut unsigned_fails = false;
    for u in vecs(N) {
        for v in vecs(N) {
            let lhs = op(N, &conj_h(N, xz(0, &u, &v)));
            let sign = if u.dot(&v) { 4 } else { 0 };
            let rhs = op(N, &xz(sign, &v, &u));
            c.same(&lhs, &rhs, || format!("h X_u Z_v h, u = {u:?}, v = {v:?}"))?;
            let lib = PauliOp::new(PhaseZ8::ONE, u.clone(), v.clone())
                .unwrap()
                .conj_by_hadamard_layer();
            c.same(&op(N, &xz(lib.phase.k() as i64, &lib.u, &lib.v)), &rhs, || {
                "library h rule".into()
            })?;
            unsigned_fails |= lhs != op(N, &xz(0, &v, &u));
        }
    }
    c.truth(unsigned_fails, || "unsigned form unexpectedly holds".into())?;
    Ok(c.0)
}

/// `P_b X_u Z_v P_b^{-1} = i^{Σ b_i u_i} X_u Z_{v⊕bu}`; the exponent
/// `Σ u_i` is wrong whenever `u` leaves the support of `b`.
fn pauli_conjugation_by_phase_layer() -> Result<usize, String> {
    let mut c = Tally(0);
    let mut plain_sum_fails = false;
    for b in vecs(N) {
        for u in vecs(N) {
            for v in vecs(N) {
                let pinv: Vec<F> = b.ones_iter().map(|q| g(Gate::Pdg(q))).collect();
                let lhs = op(N, &[vec![F::Pb(b.clone())], xz(0, &u, &v), pinv].concat());
                let bu = &b & &u;
                let rhs = op(N, &xz(2 * bu.count_ones() as i64, &u, &(&v ^ &bu)));
                c.same(&lhs, &rhs, || format!("P_b X_u Z_v P_b^-1, b = {b:?}"))?;
                let lib = PauliOp::new(PhaseZ8::ONE, u.clone(), v.clone())
                    .unwrap()
                    .conj_by_phase_gates(&b)
                    .unwrap();
                c.same(&op(N, &xz(lib.phase.k() as i64, &lib.u, &lib.v)), &rhs, || {
                    "library P_b rule".into()
                })?;
                plain_sum_fails |= lhs != op(N, &xz(2 * u.count_ones() as i64, &u, &(&v ^ &bu)));
            }
        }
    }
    c.truth(plain_sum_fails, || "exponent Σu_i unexpectedly holds".into())?;
    Ok(c.0)
}

fn pauli_conjugation_by_layers() -> Result<usize, String> {
    let mut c = Tally(0);
    let vs = vecs(N);
    let sample: Vec<(BitVec, BitVec)> = vs
        .iter()
        .flat_map(|u| vs.iter().map(move |v| (u.clone(), v.clone())))
        .collect();
    for a in invertible(N) {
        let inv = a.invert().unwrap();
        let word = synthesize(&a).unwrap();
        for (u, v) in &sample {
            let lhs = op(
                N,
                &[vec![F::Xa(a.clone())], xz(0, u, v), vec![F::Xa(inv.clone())]].concat(),
            );
            let rhs = op(N, &xz(0, &a.mul_vec(u), &a.transpose_inverse().unwrap().mul_vec(v)));
            c.same(&lhs, &rhs, || "X_A X_u Z_v X_A^-1".into())?;
            let lib = PauliOp::new(PhaseZ8::ONE, u.clone(), v.clone())
                .unwrap()
                .conj_by_cnot_word(&word)
                .unwrap();
            c.same(&op(N, &xz(lib.phase.k() as i64, &lib.u, &lib.v)), &rhs, || {
                "library X_A rule".into()
            })?;
        }
    }
    for bb in pair_sets(N) {
        for (u, v) in &sample {
            let lhs = op(
                N,
                &[vec![F::Zb(bb.clone())], xz(0, u, v), vec![F::Zb(bb.clone())]].concat(),
            );
            let sign = if q_naive(&bb, u) { 4 } else { 0 };
            let rhs = op(N, &xz(sign, u, &(v ^ &bb.mul_vec(u).unwrap())));
            c.same(&lhs, &rhs, || "Z_B X_u Z_v Z_B".into())?;
            let lib = PauliOp::new(PhaseZ8::ONE, u.clone(), v.clone())
                .unwrap()
                .conj_by_cz_layer(&bb)
                .unwrap();
            c.same(&op(N, &xz(lib.phase.k() as i64, &lib.u, &lib.v)), &rhs, || {
                "library Z_B rule".into()
            })?;
        }
    }
    Ok(c.0)
}

pub fn catalogue() -> Vec<Identity> {
    macro_rules! id {
        ($f:ident) => {
            Identity {
                name: stringify!($f),
                check: $f,
            }
        };
    }
    vec![
        id!(involutions),
        id!(single_qubit_relations),
        id!(phase_conjugates_x_to_y),
        id!(basis_actions),
        id!(cnot_hadamard_equivalences),
        id!(pauli_multiplication),
        id!(cz_layers_and_quadratic_forms),
        id!(diagonal_group_multiplication),
        id!(cnot_conjugation_of_diagonal_gates),
        id!(cnot_conjugation_of_layers),
        id!(cnot_matrix_conjugation_of_cz_layers),
        id!(swap_conjugation),
        id!(hadamard_layer_conjugation_of_cnots),
        id!(conjugation_by_phase_under_h),
        id!(cz_under_phase_under_h),
        id!(cz_under_cz_under_h),
        id!(pauli_conjugation_by_gates),
        id!(pauli_conjugation_by_hadamard_layer),
        id!(pauli_conjugation_by_phase_layer),
        id!(pauli_conjugation_by_layers),
    ]
}
