use super::ast::*;
use super::parser::DIALECT;
use crate::frontend::expr::print_expr;
use crate::frontend::Expr;
use std::fmt::Write as _;

pub fn print_blackbird(program: &BlackbirdProgram) -> String {
    let mut out = String::new();
    if let Some((name, _)) = &program.name {
        let _ = writeln!(out, "name {name}");
    }
    if let Some((major, minor, _)) = program.version {
        let _ = writeln!(out, "version {major}.{minor}");
    }
    if let Some(t) = &program.target {
        out.push_str("target ");
        out.push_str(&t.name);
        if !t.options.is_empty() {
            let opts: Vec<_> = t.options.iter().map(|(k, v)| format!("{k}={}", expr(v))).collect();
            let _ = write!(out, " ({})", opts.join(", "));
        }
        out.push('\n');
    }
    for d in &program.declarations {
        let _ = write!(out, "{} {} = ", d.decl_type.keyword(), d.name);
        match &d.value {
            DeclValue::Expr(e) => out.push_str(&expr(e)),
            DeclValue::Array(a) => {
                let rows: Vec<_> = (0..a.rows).map(|r| format!("[{}]", list(a.row(r)))).collect();
                let _ = write!(out, "[{}]", rows.join(", "));
            }
        }
        out.push('\n');
    }
    for s in &program.statements {
        out.push_str(&s.op_name);
        if !s.arguments.is_empty() {
            let _ = write!(out, "({})", list(&s.arguments));
        }
        match s.modes.as_slice() {
            [m] => {
                let _ = writeln!(out, " | {m}");
            }
            modes => {
                let ms: Vec<_> = modes.iter().map(u64::to_string).collect();
                let _ = writeln!(out, " | ({})", ms.join(", "));
            }
        }
    }
    out
}

fn expr(e: &Expr) -> String {
    print_expr(e, &DIALECT)
}

fn list(items: &[Expr]) -> String {
    items.iter().map(expr).collect::<Vec<_>>().join(", ")
}
