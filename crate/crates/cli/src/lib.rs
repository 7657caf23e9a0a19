//! Command-line front end: argument parsing, the four commands and their
//! exit codes. `main` only forwards the process environment to [`run`].

use std::ffi::OsString;
use std::io::Read;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use stabnorm::circuit::{parse, Gate, Layer, LayerKind, LayeredCircuit};
use stabnorm::exact::{assert_equal, circuit_unitary_guarded, Verdict, DEFAULT_GUARD};
use stabnorm::passes::PassRegistry;
use stabnorm::{Circuit, Error};

pub const EXIT_OK: i32 = 0;
/// Unreadable input, malformed circuit text or bad arguments.
pub const EXIT_PARSE: i32 = 1;
pub const EXIT_VERIFY: i32 = 2;
pub const EXIT_GUARD: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "stabnorm", version, about = "Normal forms for stabilizer circuits")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print the normal form of a circuit.
    Normalize(FormArgs),
    /// Print the CZ-reduced form; same as `normalize --cz-reduced`.
    CzReduce(FormArgs),
    /// Compare a circuit with its normal form, or with a candidate file.
    Verify(VerifyArgs),
    /// Per-layer gate counts of the form of a circuit.
    Stats(StatsArgs),
    /// List the available forms.
    Forms,
}

#[derive(Args, Debug, Clone)]
pub struct Selection {
    /// Circuit file; `-` or nothing reads standard input.
    pub input: Option<PathBuf>,
    /// Use the CZ-reduced form.
    #[arg(long, conflicts_with = "form")]
    pub cz_reduced: bool,
    /// Form by name, see `stabnorm forms`.
    #[arg(long)]
    pub form: Option<String>,
    /// Largest width the exact oracle will simulate.
    #[arg(long, default_value_t = DEFAULT_GUARD)]
    pub max_oracle_qubits: usize,
}

#[derive(Args, Debug)]
pub struct FormArgs {
    #[command(flatten)]
    pub sel: Selection,
    /// Check the output against the input with the exact oracle.
    #[arg(long)]
    pub verify: bool,
    #[arg(long)]
    pub json: bool,
    /// Precede each layer with a `# layer` comment.
    #[arg(long)]
    pub banners: bool,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub sel: Selection,
    /// Compare against this circuit instead of the computed form.
    pub candidate: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct StatsArgs {
    #[command(flatten)]
    pub sel: Selection,
    #[arg(long)]
    pub json: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CommandKind {
    Normalize,
    CzReduce,
    Verify,
    Stats,
    Forms,
}

/// Everything one invocation needs, independent of clap.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub command: CommandKind,
    pub input: Option<PathBuf>,
    pub candidate: Option<PathBuf>,
    pub form: String,
    pub verify: bool,
    pub json: bool,
    pub banners: bool,
    pub max_oracle_qubits: usize,
}

impl RunConfig {
    fn with(command: CommandKind, sel: Selection) -> Self {
        let form = match (sel.form, sel.cz_reduced || command == CommandKind::CzReduce) {
            (Some(f), _) => f,
            (None, true) => "cz-reduced".into(),
            (None, false) => "normal-form".into(),
        };
        Self {
            command,
            input: sel.input,
            candidate: None,
            form,
            verify: false,
            json: false,
            banners: false,
            max_oracle_qubits: sel.max_oracle_qubits,
        }
    }
}

impl From<Cli> for RunConfig {
    fn from(cli: Cli) -> Self {
        match cli.command {
            Command::Normalize(a) => form_config(CommandKind::Normalize, a),
            Command::CzReduce(a) => form_config(CommandKind::CzReduce, a),
            Command::Verify(a) => RunConfig {
                candidate: a.candidate,
                ..RunConfig::with(CommandKind::Verify, a.sel)
            },
            Command::Stats(a) => RunConfig {
                json: a.json,
                ..RunConfig::with(CommandKind::Stats, a.sel)
            },
            Command::Forms => RunConfig::with(
                CommandKind::Forms,
                Selection {
                    input: None,
                    cz_reduced: false,
                    form: None,
                    max_oracle_qubits: DEFAULT_GUARD,
                },
            ),
        }
    }
}

fn form_config(kind: CommandKind, a: FormArgs) -> RunConfig {
    RunConfig {
        verify: a.verify,
        json: a.json,
        banners: a.banners,
        ..RunConfig::with(kind, a.sel)
    }
}

/// Exit code and captured streams of one invocation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn fail(code: i32, msg: impl Into<String>) -> Self {
        let mut stderr = msg.into();
        stderr.push('\n');
        Self {
            code,
            stdout: String::new(),
            stderr,
        }
    }
}

/// Parses `args` (program name first) and executes the command.
pub fn run<I, T>(args: I, stdin: &mut dyn Read) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(&cli.into(), stdin),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
            let text = e.render().to_string();
            if e.use_stderr() {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            }
        }
    }
}

fn read_circuit(path: Option<&PathBuf>, stdin: &mut dyn Read) -> Result<Circuit, Outcome> {
    let (name, text) = match path.filter(|p| p.as_os_str() != "-") {
        Some(p) => (
            p.display().to_string(),
            std::fs::read_to_string(p).map_err(|e| Outcome::fail(EXIT_PARSE, format!("{}: {e}", p.display())))?,
        ),
        None => {
            let mut s = String::new();
            stdin
                .read_to_string(&mut s)
                .map_err(|e| Outcome::fail(EXIT_PARSE, format!("<stdin>: {e}")))?;
            ("<stdin>".to_string(), s)
        }
    };
    parse(&text).map_err(|e| Outcome::fail(EXIT_PARSE, format!("{name}: {e}")))
}

fn lib_error(e: Error) -> Outcome {
    let code = if matches!(e, Error::ResourceGuard { .. }) {
        EXIT_GUARD
    } else {
        EXIT_PARSE
    };
    Outcome::fail(code, e.to_string())
}

pub fn execute(cfg: &RunConfig, stdin: &mut dyn Read) -> Outcome {
    match execute_inner(cfg, stdin) {
        Ok(o) | Err(o) => o,
    }
}

fn execute_inner(cfg: &RunConfig, stdin: &mut dyn Read) -> Result<Outcome, Outcome> {
    let registry = PassRegistry::with_builtin();
    if cfg.command == CommandKind::Forms {
        let stdout = registry
            .names()
            .into_iter()
            .map(|n| format!("{n}\t{}\n", registry.get(n).expect("listed").description()))
            .collect();
        return Ok(Outcome {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        });
    }
    let pass = registry.get(&cfg.form).ok_or_else(|| {
        Outcome::fail(
            EXIT_PARSE,
            format!(
                "unknown form `{}`; available: {}",
                cfg.form,
                registry.names().join(", ")
            ),
        )
    })?;
    let circuit = read_circuit(cfg.input.as_ref(), stdin)?;

    if cfg.command == CommandKind::Verify {
        let other = match &cfg.candidate {
            Some(p) => read_circuit(Some(p), stdin)?,
            None => pass.run(&circuit).map_err(lib_error)?.to_circuit(),
        };
        let verdict = compare(&circuit, &other, cfg.max_oracle_qubits)?;
        return Ok(verdict_outcome(verdict, true));
    }

    let form = pass.run(&circuit).map_err(lib_error)?;
    let stdout = match cfg.command {
        CommandKind::Stats if cfg.json => to_json(&stats(&cfg.form, &form)),
        CommandKind::Stats => stats_text(&stats(&cfg.form, &form)),
        _ if cfg.json => to_json(&form_json(&cfg.form, &form)),
        _ => form.emit(cfg.banners) + "\n",
    };
    let mut out = Outcome {
        code: EXIT_OK,
        stdout,
        stderr: String::new(),
    };
    if cfg.verify {
        let verdict = compare(&circuit, &form.to_circuit(), cfg.max_oracle_qubits).map_err(|mut o| {
            o.stdout = out.stdout.clone();
            o
        })?;
        let v = verdict_outcome(verdict, false);
        out.code = v.code;
        out.stderr = v.stderr;
    }
    Ok(out)
}

fn compare(a: &Circuit, b: &Circuit, guard: usize) -> Result<Verdict, Outcome> {
    if a.n != b.n {
        return Ok(Verdict::Unequal);
    }
    let ua = circuit_unitary_guarded(a, guard).map_err(lib_error)?;
    let ub = circuit_unitary_guarded(b, guard).map_err(lib_error)?;
    assert_equal(&ua, &ub, true).map_err(lib_error)
}

fn verdict_outcome(v: Verdict, to_stdout: bool) -> Outcome {
    let (code, line) = match v {
        Verdict::Equal => (EXIT_OK, "EXACT-EQUAL".to_string()),
        Verdict::PhaseMismatch(k) | Verdict::EqualUpToPhase(k) => (
            EXIT_VERIFY,
            format!("UNEQUAL (equal up to global phase e^(i{}pi/4))", k.k()),
        ),
        Verdict::Unequal => (EXIT_VERIFY, "UNEQUAL".to_string()),
    };
    if to_stdout {
        Outcome {
            code,
            stdout: line + "\n",
            stderr: String::new(),
        }
    } else {
        Outcome {
            code,
            stdout: String::new(),
            stderr: format!("verify: {line}\n"),
        }
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("plain data serializes") + "\n"
}

#[derive(Serialize, Default, Debug, Clone, PartialEq, Eq)]
pub struct Counts {
    pub cx: usize,
    pub cz: usize,
    pub h: usize,
    pub p: usize,
    pub x: usize,
    pub z: usize,
    pub total: usize,
}

impl Counts {
    fn of(gates: &[Gate]) -> Self {
        let mut c = Counts {
            total: gates.len(),
            ..Counts::default()
        };
        for g in gates {
            match g {
                Gate::Cx { .. } => c.cx += 1,
                Gate::Cz(..) => c.cz += 1,
                Gate::H(_) => c.h += 1,
                Gate::P(_) => c.p += 1,
                Gate::X(_) => c.x += 1,
                Gate::Z(_) => c.z += 1,
                // Forms never emit these.
                Gate::Pdg(_) | Gate::Y(_) | Gate::Swap(..) => {}
            }
        }
        c
    }
}

#[derive(Serialize)]
struct LayerJson {
    kind: &'static str,
    label: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    gates: Option<Vec<[usize; 2]>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pairs: Option<Vec<[usize; 2]>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    vector: Option<Vec<u8>>,
}

#[derive(Serialize)]
struct FormJson {
    n: usize,
    form: String,
    phase_k: u8,
    layers: Vec<LayerJson>,
    counts: Counts,
}

fn layer_json(n: usize, l: &Layer) -> LayerJson {
    let mut out = LayerJson {
        kind: l.kind.name(),
        label: l.label.clone(),
        gates: None,
        pairs: None,
        vector: None,
    };
    match l.kind {
        // `[control, target]`, as in the text format.
        LayerKind::Cnot => {
            out.gates = Some(
                l.gates
                    .iter()
                    .filter_map(|g| match *g {
                        Gate::Cx { control, target } => Some([control, target]),
                        _ => None,
                    })
                    .collect(),
            )
        }
        LayerKind::Cz => {
            out.pairs = Some(
                l.gates
                    .iter()
                    .filter_map(|g| match *g {
                        Gate::Cz(i, j) => Some([i, j]),
                        _ => None,
                    })
                    .collect(),
            )
        }
        _ => {
            let mut v = vec![0u8; n];
            for g in &l.gates {
                if let Gate::H(q) | Gate::P(q) | Gate::X(q) | Gate::Z(q) = *g {
                    v[q] = 1;
                }
            }
            out.vector = Some(v);
        }
    }
    out
}

fn form_json(name: &str, f: &LayeredCircuit) -> FormJson {
    FormJson {
        n: f.n,
        form: name.to_string(),
        phase_k: f.phase.k(),
        layers: f.layers.iter().map(|l| layer_json(f.n, l)).collect(),
        counts: Counts::of(&f.to_circuit().gates),
    }
}

#[derive(Serialize, Debug, Clone, PartialEq, Eq)]
pub struct LayerStats {
    pub kind: &'static str,
    pub label: String,
    pub size: usize,
}

#[derive(Serialize, Debug, Clone, PartialEq, Eq)]
pub struct Stats {
    pub n: usize,
    pub form: String,
    pub phase_k: u8,
    pub shape: String,
    pub counts: Counts,
    /// Gate count of each CZ layer, in time order.
    pub cz_layer_sizes: Vec<usize>,
    pub layers: Vec<LayerStats>,
}

pub fn stats(name: &str, f: &LayeredCircuit) -> Stats {
    Stats {
        n: f.n,
        form: name.to_string(),
        phase_k: f.phase.k(),
        shape: f.shape_string(),
        counts: Counts::of(&f.to_circuit().gates),
        cz_layer_sizes: f
            .layers
            .iter()
            .filter(|l| l.kind == LayerKind::Cz)
            .map(|l| l.gates.len())
            .collect(),
        layers: f
            .layers
            .iter()
            .map(|l| LayerStats {
                kind: l.kind.name(),
                label: l.label.clone(),
                size: l.gates.len(),
            })
            .collect(),
    }
}

fn stats_text(s: &Stats) -> String {
    let c = &s.counts;
    let mut out = format!(
        "form {}\nqubits {}\nphase_k {}\nshape {}\ncx {}\ncz {}\nh {}\np {}\nx {}\nz {}\ntotal {}\n",
        s.form, s.n, s.phase_k, s.shape, c.cx, c.cz, c.h, c.p, c.x, c.z, c.total
    );
    let sizes: Vec<String> = s.cz_layer_sizes.iter().map(usize::to_string).collect();
    out += &format!("cz_layer_sizes {}\n", sizes.join(" "));
    for l in &s.layers {
        out += &format!("layer {} ({}) {}\n", l.kind, l.label, l.size);
    }
    out
}
