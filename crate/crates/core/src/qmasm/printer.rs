use super::ast::*;
use super::parser::DIALECT;
use crate::frontend::expr::print_expr;
use crate::frontend::Expr;
use std::fmt::Write as _;

/// Prints a program in canonical form: one statement per line, block
/// bodies indented by two spaces.
pub fn print_qmasm(program: &QmasmProgram) -> String {
    let mut out = String::new();
    block(&mut out, &program.statements, 0);
    out
}

fn expr(e: &Expr) -> String {
    print_expr(e, &DIALECT)
}

fn block(out: &mut String, body: &[QmasmStatement], depth: usize) {
    for s in body {
        statement(out, s, depth);
    }
}

fn statement(out: &mut String, s: &QmasmStatement, depth: usize) {
    use QmasmStmtKind as K;
    let pad = "  ".repeat(depth);
    out.push_str(&pad);
    let _ = match &s.kind {
        K::Weight { sym, value } => writeln!(out, "{sym} {}", expr(value)),
        K::Coupling { a, b, value } => writeln!(out, "{a} {b} {}", expr(value)),
        K::Chain { a, b } => writeln!(out, "{a} = {b}"),
        K::AntiChain { a, b } => writeln!(out, "{a} /= {b}"),
        K::Equiv { a, b } => writeln!(out, "{a} <-> {b}"),
        K::Pin { sym, value } => writeln!(out, "{sym} := {}", expr(value)),
        K::MacroDef { name, body } => {
            let _ = writeln!(out, "!begin_macro {name}");
            block(out, body, depth + 1);
            writeln!(out, "{pad}!end_macro {name}")
        }
        K::UseMacro { name, instances } => {
            let names: Vec<_> = instances.iter().map(|(n, _)| n.as_str()).collect();
            writeln!(out, "!use_macro {name} {}", names.join(" "))
        }
        K::Include { path } => writeln!(out, "!include \"{path}\""),
        K::Assert { expr: e } => writeln!(out, "!assert {}", expr(e)),
        K::For { var, range, body } => {
            let _ = write!(out, "!for {var} := {} .. {}", expr(&range.lo), expr(&range.hi));
            if let Some(step) = &range.step {
                let _ = write!(out, " step {}", expr(step));
            }
            out.push('\n');
            block(out, body, depth + 1);
            writeln!(out, "{pad}!end_for")
        }
        K::If { cond, then_body, else_body } => {
            let _ = writeln!(out, "!if {}", expr(cond));
            block(out, then_body, depth + 1);
            if let Some(e) = else_body {
                let _ = writeln!(out, "{pad}!else");
                block(out, e, depth + 1);
            }
            writeln!(out, "{pad}!end_if")
        }
        K::Let { var, value } => writeln!(out, "!let {var} := {}", expr(value)),
    };
}
