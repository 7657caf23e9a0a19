//! Plain-text circuit format.
//!
//! ```text
//! qubits 3
//! # comment
//! H 0
//! CX 0 1      # control 0, target 1
//! CZ 1 2
//! GPHASE 3    # global phase e^{3iπ/4}
//! ```
//!
//! Lines run in time order: the first gate line acts first. Mnemonics are
//! case-insensitive: `H P PDG X Y Z CX CZ SWAP GPHASE`. `CX` lists the
//! control first; internally that is `X_[target control]`.

use std::fmt;

use thiserror::Error;

use crate::error::{check_index, check_pair, Error, Result};
use crate::pauli::PhaseZ8;

/// A gate of the input language. Indices are qubits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Gate {
    H(usize),
    P(usize),
    Pdg(usize),
    X(usize),
    Y(usize),
    Z(usize),
    Cx { control: usize, target: usize },
    Cz(usize, usize),
    Swap(usize, usize),
}

impl Gate {
    pub fn validate(self, n: usize) -> Result<()> {
        match self {
            Gate::H(q) | Gate::P(q) | Gate::Pdg(q) | Gate::X(q) | Gate::Y(q) | Gate::Z(q) => check_index(q, n),
            Gate::Cx { control, target } => check_pair(control, target, n),
            Gate::Cz(i, j) | Gate::Swap(i, j) => check_pair(i, j, n),
        }
    }

    pub fn mnemonic(self) -> &'static str {
        match self {
            Gate::H(_) => "H",
            Gate::P(_) => "P",
            Gate::Pdg(_) => "PDG",
            Gate::X(_) => "X",
            Gate::Y(_) => "Y",
            Gate::Z(_) => "Z",
            Gate::Cx { .. } => "CX",
            Gate::Cz(..) => "CZ",
            Gate::Swap(..) => "SWAP",
        }
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Gate::H(q) | Gate::P(q) | Gate::Pdg(q) | Gate::X(q) | Gate::Y(q) | Gate::Z(q) => {
                write!(f, "{} {q}", self.mnemonic())
            }
            Gate::Cx { control, target } => write!(f, "CX {control} {target}"),
            Gate::Cz(i, j) | Gate::Swap(i, j) => write!(f, "{} {i} {j}", self.mnemonic()),
        }
    }
}

/// The generating set the normalizer works with.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Generator {
    H(usize),
    P(usize),
    /// `X_[ij]`: target `i`, control `j`.
    Cnot {
        target: usize,
        control: usize,
    },
}

impl Generator {
    pub fn validate(self, n: usize) -> Result<()> {
        match self {
            Generator::H(q) | Generator::P(q) => check_index(q, n),
            Generator::Cnot { target, control } => check_pair(target, control, n),
        }
    }

    pub fn to_gate(self) -> Gate {
        match self {
            Generator::H(q) => Gate::H(q),
            Generator::P(q) => Gate::P(q),
            Generator::Cnot { target, control } => Gate::Cx { control, target },
        }
    }
}

/// A gate list in time order with a global phase.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Circuit {
    pub n: usize,
    pub gates: Vec<Gate>,
    pub phase: PhaseZ8,
}

impl Circuit {
    pub fn new(n: usize, gates: Vec<Gate>, phase: PhaseZ8) -> Result<Self> {
        if n == 0 {
            return Err(Error::NoQubits);
        }
        for g in &gates {
            g.validate(n)?;
        }
        Ok(Self { n, gates, phase })
    }

    pub fn from_generators(n: usize, gens: &[Generator], phase: PhaseZ8) -> Result<Self> {
        Self::new(n, gens.iter().map(|g| g.to_gate()).collect(), phase)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("expected header `qubits <n>`")]
    MissingHeader,
    #[error("unknown mnemonic `{0}`")]
    UnknownMnemonic(String),
    #[error("`{0}` is not a Clifford gate and cannot be normalized")]
    NonClifford(String),
    #[error("`{mnemonic}` takes {expected} argument(s), got {found}")]
    Arity {
        mnemonic: String,
        expected: usize,
        found: usize,
    },
    #[error("invalid integer `{0}`")]
    BadInteger(String),
    #[error(transparent)]
    Invalid(#[from] Error),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

fn parse_int<T: std::str::FromStr>(s: &str) -> std::result::Result<T, ParseErrorKind> {
    s.parse().map_err(|_| ParseErrorKind::BadInteger(s.to_string()))
}

fn parse_line(n: usize, mnemonic: &str, args: &[&str]) -> std::result::Result<Option<Gate>, ParseErrorKind> {
    let upper = mnemonic.to_ascii_uppercase();
    let arity = |expected: usize| {
        if args.len() == expected {
            Ok(())
        } else {
            Err(ParseErrorKind::Arity {
                mnemonic: upper.clone(),
                expected,
                found: args.len(),
            })
        }
    };
    let gate = match upper.as_str() {
        "H" | "P" | "PDG" | "X" | "Y" | "Z" => {
            arity(1)?;
            let q = parse_int(args[0])?;
            match upper.as_str() {
                "H" => Gate::H(q),
                "P" => Gate::P(q),
                "PDG" => Gate::Pdg(q),
                "X" => Gate::X(q),
                "Y" => Gate::Y(q),
                _ => Gate::Z(q),
            }
        }
        "CX" | "CZ" | "SWAP" => {
            arity(2)?;
            let (i, j) = (parse_int(args[0])?, parse_int(args[1])?);
            match upper.as_str() {
                "CX" => Gate::Cx { control: i, target: j },
                "CZ" => Gate::Cz(i, j),
                _ => Gate::Swap(i, j),
            }
        }
        "T" | "TDG" => return Err(ParseErrorKind::NonClifford(upper)),
        _ => return Err(ParseErrorKind::UnknownMnemonic(mnemonic.to_string())),
    };
    gate.validate(n)?;
    Ok(Some(gate))
}

/// Parses the text format. Errors carry the 1-based line number.
pub fn parse(text: &str) -> std::result::Result<Circuit, ParseError> {
    let mut n = None;
    let mut gates = Vec::new();
    let mut phase = PhaseZ8::ONE;
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let err = |kind| ParseError { line, kind };
        let mut words = content.split_whitespace();
        let mnemonic = words.next().expect("non-empty line");
        let args: Vec<&str> = words.collect();
        let Some(n) = n else {
            if !mnemonic.eq_ignore_ascii_case("qubits") || args.len() != 1 {
                return Err(err(ParseErrorKind::MissingHeader));
            }
            let count: usize = parse_int(args[0]).map_err(err)?;
            if count == 0 {
                return Err(err(Error::NoQubits.into()));
            }
            n = Some(count);
            continue;
        };
        if mnemonic.eq_ignore_ascii_case("gphase") {
            if args.len() != 1 {
                return Err(err(ParseErrorKind::Arity {
                    mnemonic: "GPHASE".into(),
                    expected: 1,
                    found: args.len(),
                }));
            }
            phase += PhaseZ8::new(parse_int(args[0]).map_err(err)?);
            continue;
        }
        if let Some(g) = parse_line(n, mnemonic, &args).map_err(err)? {
            gates.push(g);
        }
    }
    let n = n.ok_or(ParseError {
        line: last_line.max(1),
        kind: ParseErrorKind::MissingHeader,
    })?;
    Ok(Circuit { n, gates, phase })
}

/// Rewrites a circuit over `{H, P, CNOT}`. The returned phase includes the
/// circuit's own.
pub fn desugar(c: &Circuit) -> (Vec<Generator>, PhaseZ8) {
    use Generator as G;
    let mut out = Vec::with_capacity(c.gates.len() * 2);
    let mut phase = c.phase;
    for &g in &c.gates {
        match g {
            Gate::H(q) => out.push(G::H(q)),
            Gate::P(q) => out.push(G::P(q)),
            Gate::Pdg(q) => out.extend([G::P(q); 3]),
            Gate::Z(q) => out.extend([G::P(q); 2]),
            Gate::X(q) => out.extend([G::H(q), G::P(q), G::P(q), G::H(q)]),
            // Y = iXZ: Z acts first.
            Gate::Y(q) => {
                out.extend([G::P(q), G::P(q), G::H(q), G::P(q), G::P(q), G::H(q)]);
                phase += PhaseZ8::I;
            }
            Gate::Cx { control, target } => out.push(G::Cnot { target, control }),
            Gate::Cz(i, j) => out.extend([G::H(i), G::Cnot { target: i, control: j }, G::H(i)]),
            Gate::Swap(i, j) => out.extend([
                G::Cnot { target: i, control: j },
                G::Cnot { target: j, control: i },
                G::Cnot { target: i, control: j },
            ]),
        }
    }
    (out, phase)
}

/// Emits a circuit; `GPHASE` appears only when the phase is nontrivial.
pub fn emit(c: &Circuit) -> String {
    let mut lines = vec![format!("qubits {}", c.n)];
    lines.extend(c.gates.iter().map(Gate::to_string));
    if !c.phase.is_one() {
        lines.push(format!("GPHASE {}", c.phase.k()));
    }
    lines.join("\n")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LayerKind {
    Cnot,
    Cz,
    Phase,
    PauliZ,
    PauliX,
    Hadamard,
}

impl LayerKind {
    pub fn name(self) -> &'static str {
        match self {
            LayerKind::Cnot => "CX",
            LayerKind::Cz => "CZ",
            LayerKind::Phase => "P",
            LayerKind::PauliZ => "Z",
            LayerKind::PauliX => "X",
            LayerKind::Hadamard => "H",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Layer {
    pub kind: LayerKind,
    /// Symbol of the layer in the form, e.g. `A1` or `w`.
    pub label: String,
    pub gates: Vec<Gate>,
}

/// A form as a list of layers in time order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LayeredCircuit {
    pub n: usize,
    pub phase: PhaseZ8,
    pub layers: Vec<Layer>,
}

impl LayeredCircuit {
    pub fn to_circuit(&self) -> Circuit {
        Circuit {
            n: self.n,
            gates: self.layers.iter().flat_map(|l| l.gates.iter().copied()).collect(),
            phase: self.phase,
        }
    }

    /// The layer kinds, in order; the shape of the form.
    pub fn shape(&self) -> Vec<LayerKind> {
        self.layers.iter().map(|l| l.kind).collect()
    }

    pub fn shape_string(&self) -> String {
        self.shape().iter().map(|k| k.name()).collect::<Vec<_>>().join("-")
    }

    /// Emits the form. The trailing `GPHASE` line is always present; with
    /// `banners` each layer is preceded by `# layer <KIND> (<label>)`.
    pub fn emit(&self, banners: bool) -> String {
        let mut lines = vec![format!("qubits {}", self.n)];
        for layer in &self.layers {
            if banners {
                lines.push(format!("# layer {} ({})", layer.kind.name(), layer.label));
            }
            lines.extend(layer.gates.iter().map(Gate::to_string));
        }
        lines.push(format!("GPHASE {}", self.phase.k()));
        lines.join("\n")
    }
}
