//! QMASM frontend: line-oriented lexer, parser and printer.

mod ast;
mod lexer;
mod parser;
mod printer;
pub mod symbol;

pub use ast::*;
pub use lexer::{lex_qmasm, QmasmToken};
pub use parser::{parse_expression, parse_qmasm};
pub use printer::print_qmasm;
pub use symbol::{QuantumSymbol, SymbolRole};

use crate::frontend::expr::print_expr;
use crate::frontend::{Expr, Result};

pub fn parse_qmasm_string(source: &str) -> Result<QmasmProgram> {
    parse_qmasm(&lex_qmasm(source)?)
}

/// Prints an expression in QMASM syntax, with `$` before variables.
pub fn print_expression(e: &Expr) -> String {
    print_expr(e, &parser::DIALECT)
}
