//! OpenQASM 2.0 frontend: lexer, arity-checking parser and printer.

mod ast;
pub mod gates;
mod lexer;
mod parser;
mod printer;

pub use ast::*;
pub use gates::{GateSignature, BUILTIN_GATES};
pub use lexer::{lex_qasm, QasmToken};
pub use parser::{parse_expression, parse_qasm};
pub use printer::print_qasm;

use crate::frontend::expr::print_expr;
use crate::frontend::{Expr, Result};

/// Lexes then parses `source`.
pub fn parse_qasm_string(source: &str) -> Result<QasmProgram> {
    parse_qasm(&lex_qasm(source)?)
}

/// Prints an expression in QASM syntax.
pub fn print_expression(e: &Expr) -> String {
    print_expr(e, &parser::DIALECT)
}
