//! Parsers for three quantum programming languages (gate-model QASM,
//! continuous-variable Blackbird and annealer-oriented QMASM) built on one
//! shared lexer/token/AST layer, together with QMASM's static semantics:
//! include resolution, macro expansion, elaboration, flattening to an Ising
//! model, assertion checking and exact ground-state enumeration.

pub mod anneal;
pub mod blackbird;
pub mod frontend;
pub mod lang;
pub mod qasm;
pub mod qmasm;

pub use frontend::{AstFormat, AstNode, Diagnostic, Result, Severity, Span};
pub use lang::Language;
