//! Normal forms for stabilizer circuits built from `H`, `P` and `CNOT`,
//! computed by conjugation rules alone, plus an exact unitary oracle.
//!
//! Operator products are written left to right as matrices multiply, so the
//! rightmost factor is the first gate applied to the state.

pub mod circuit;
pub mod czreduce;
pub mod czxp;
pub mod error;
pub mod exact;
pub mod gf2;
pub mod normal_form;
pub mod passes;
pub mod pauli;

pub use circuit::{Circuit, Gate, Generator, LayeredCircuit};
pub use czreduce::{cz_reduce, CzReducedForm};
pub use error::{Error, Result};
pub use normal_form::{normalize, normalize_circuit, NormalForm};
pub use pauli::{PauliOp, PhaseZ8};
