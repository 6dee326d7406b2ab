//! Blackbird frontend for continuous-variable programs.

mod ast;
mod lexer;
pub mod ops;
mod parser;
mod printer;

pub use ast::*;
pub use lexer::{lex_blackbird, BlackbirdToken};
pub use ops::{ModeCount, OpClass, OperatorSignature, OPERATORS};
pub use parser::{parse_blackbird, parse_expression};
pub use printer::print_blackbird;

use crate::frontend::expr::print_expr;
use crate::frontend::{Expr, Result};

pub fn parse_blackbird_string(source: &str) -> Result<BlackbirdProgram> {
    parse_blackbird(&lex_blackbird(source)?)
}

/// Prints an expression in Blackbird syntax.
pub fn print_expression(e: &Expr) -> String {
    print_expr(e, &parser::DIALECT)
}
