use super::ast::*;
use super::parser::DIALECT;
use crate::frontend::expr::print_expr;
use crate::frontend::Expr;
use std::fmt::Write as _;

/// Canonical source text for a program, one statement per line.
pub fn print_qasm(program: &QasmProgram) -> String {
    let mut out = String::new();
    if let Some(v) = &program.version {
        let _ = writeln!(out, "OPENQASM {}.{};", v.major, v.minor);
    }
    for stmt in &program.statements {
        write_stmt(&mut out, stmt);
        out.push('\n');
    }
    out
}

fn write_stmt(out: &mut String, stmt: &QasmStatement) {
    match &stmt.kind {
        QasmStmtKind::RegisterDecl { kind, name, size } => {
            let _ = write!(out, "{} {}[{}];", kind.keyword(), name.name, size);
        }
        QasmStmtKind::GateDef { name, params, qubits, body } => {
            out.push_str("gate ");
            out.push_str(&name.name);
            if !params.is_empty() {
                let _ = write!(out, "({})", join(params.iter().map(|p| p.name.clone())));
            }
            let _ = writeln!(out, " {} {{", join(qubits.iter().map(|q| q.name.clone())));
            for g in body {
                out.push_str("  ");
                write_apply(out, &g.name.name, &g.params, &g.targets);
                out.push('\n');
            }
            out.push('}');
        }
        QasmStmtKind::GateApply(g) => write_apply(out, &g.name.name, &g.params, &g.targets),
        QasmStmtKind::Measure { source, dest } => {
            let _ = write!(out, "measure {} -> {};", target(source), target(dest));
        }
        QasmStmtKind::Reset { target: t } => {
            let _ = write!(out, "reset {};", target(t));
        }
        QasmStmtKind::Barrier { targets } => {
            let _ = write!(out, "barrier {};", join(targets.iter().map(target)));
        }
        QasmStmtKind::If { creg, value, body } => {
            let _ = write!(out, "if ({} == {}) ", creg.name, value);
            write_stmt(out, body);
        }
        QasmStmtKind::Include { path } => {
            let _ = write!(out, "include \"{path}\";");
        }
    }
}

fn write_apply(out: &mut String, name: &str, params: &[Expr], targets: &[QubitRef]) {
    out.push_str(name);
    if !params.is_empty() {
        let _ = write!(out, "({})", join(params.iter().map(|e| print_expr(e, &DIALECT))));
    }
    let _ = write!(out, " {};", join(targets.iter().map(target)));
}

fn target(r: &QubitRef) -> String {
    match r.index {
        Some(i) => format!("{}[{}]", r.reg, i),
        None => r.reg.clone(),
    }
}

fn join(items: impl Iterator<Item = String>) -> String {
    items.collect::<Vec<_>>().join(", ")
}
