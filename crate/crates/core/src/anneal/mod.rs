//! QMASM static semantics, from a parsed program to an Ising model and its
//! exact ground states.
//!
//! The stages run in order: [`resolve_includes`], [`expand_macros`],
//! [`elaborate`], [`flatten_to_ising`]; [`check_assertions`] and
//! [`brute_force_ground_states`] consume their output.

mod assertions;
mod elaborate;
mod eval;
mod include;
mod ising;
mod macros;
mod qubo;
mod solver;

pub use assertions::{check_assertions, require_assertions, AssertionVerdict};
pub use elaborate::{elaborate, Resolved, ResolvedStatement};
pub use eval::{evaluate, Bindings, ClassicalValue};
pub use include::{resolve_includes, MAX_INCLUDE_DEPTH};
pub use ising::{flatten_to_ising, pair, IsingModel, Pair, SpinConfiguration};
pub use macros::expand_macros;
pub use qubo::{ising_offset, ising_to_qubo, qubo_to_ising, QuboModel};
pub use solver::{brute_force_ground_states, solve, Execution, GroundStateResult, DEFAULT_MAX_SPINS, ENERGY_TOLERANCE};

use crate::frontend::Result;
use crate::qmasm::{parse_qmasm_string, QmasmProgram};

/// Output of the front half of the pipeline.
#[derive(Debug, Clone)]
pub struct Compiled {
    pub statements: Vec<ResolvedStatement>,
    pub model: IsingModel,
}

/// Runs includes, macros, elaboration and flattening.
pub fn compile(program: QmasmProgram, loader: &mut dyn FnMut(&str) -> Option<String>) -> Result<Compiled> {
    let program = resolve_includes(program, loader)?;
    let statements = elaborate(&expand_macros(program)?, &Bindings::new())?;
    let model = flatten_to_ising(&statements)?;
    Ok(Compiled { statements, model })
}

/// [`compile`] for a self-contained source; any include is missing.
pub fn compile_source(source: &str) -> Result<Compiled> {
    compile(parse_qmasm_string(source)?, &mut |_| None)
}
