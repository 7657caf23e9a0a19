//! Named rewriting passes from a circuit to a layered form.

use crate::circuit::{Circuit, LayeredCircuit};
use crate::czreduce::cz_reduce;
use crate::error::Result;
use crate::normal_form::normalize_circuit;

pub trait FormPass: Send + Sync {
    fn name(&self) -> &'static str;
    fn description(&self) -> &'static str;
    fn run(&self, circuit: &Circuit) -> Result<LayeredCircuit>;
}

pub struct NormalFormPass;

impl FormPass for NormalFormPass {
    fn name(&self) -> &'static str {
        "normal-form"
    }

    fn description(&self) -> &'static str {
        "CX-CZ-P-Z-X-H-CZ-P-H, nine layers"
    }

    fn run(&self, circuit: &Circuit) -> Result<LayeredCircuit> {
        normalize_circuit(circuit)?.to_circuit()
    }
}

pub struct CzReducedPass;

impl FormPass for CzReducedPass {
    fn name(&self) -> &'static str {
        "cz-reduced"
    }

    fn description(&self) -> &'static str {
        "eleven layers, each CZ layer at most n/2 gates"
    }

    fn run(&self, circuit: &Circuit) -> Result<LayeredCircuit> {
        cz_reduce(&normalize_circuit(circuit)?)?.to_circuit()
    }
}

pub struct PassRegistry {
    passes: Vec<Box<dyn FormPass>>,
}

impl PassRegistry {
    pub fn empty() -> Self {
        Self { passes: Vec::new() }
    }

    pub fn with_builtin() -> Self {
        let mut r = Self::empty();
        r.register(Box::new(NormalFormPass));
        r.register(Box::new(CzReducedPass));
        r
    }

    /// Adds a pass; a later pass with the same name replaces the earlier.
    pub fn register(&mut self, pass: Box<dyn FormPass>) {
        self.passes.retain(|p| p.name() != pass.name());
        self.passes.push(pass);
    }

    pub fn get(&self, name: &str) -> Option<&dyn FormPass> {
        self.passes.iter().find(|p| p.name() == name).map(|p| p.as_ref())
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.passes.iter().map(|p| p.name()).collect()
    }
}

impl Default for PassRegistry {
    fn default() -> Self {
        Self::with_builtin()
    }
}
