use crate::frontend::{Diagnostic, Result};
use crate::qmasm::{parse_qmasm_string, QmasmProgram, QmasmStatement, QmasmStmtKind};

/// Longest chain of nested includes before giving up.
pub const MAX_INCLUDE_DEPTH: usize = 16;

/// Replaces every `!include` with the statements of the named file,
/// depth-first. `loader` maps a path as written to its text, or `None` when
/// the file cannot be found.
pub fn resolve_includes(program: QmasmProgram, loader: &mut dyn FnMut(&str) -> Option<String>) -> Result<QmasmProgram> {
    let mut stack = Vec::new();
    let statements = splice(program.statements, loader, &mut stack)?;
    Ok(QmasmProgram { statements, span: program.span })
}

fn splice(
    statements: Vec<QmasmStatement>,
    loader: &mut dyn FnMut(&str) -> Option<String>,
    stack: &mut Vec<String>,
) -> Result<Vec<QmasmStatement>> {
    let mut out = Vec::with_capacity(statements.len());
    for stmt in statements {
        let span = stmt.span;
        let kind = match stmt.kind {
            QmasmStmtKind::Include { path } => {
                if stack.contains(&path) {
                    return Err(Diagnostic::error("SEM302", format!("include cycle through '{path}'"), span));
                }
                if stack.len() >= MAX_INCLUDE_DEPTH {
                    return Err(Diagnostic::error("SEM302", "includes nested too deeply", span));
                }
                let Some(text) = loader(&path) else {
                    return Err(Diagnostic::error("SEM301", format!("cannot find include file '{path}'"), span));
                };
                let origin = path.clone();
                let included = parse_qmasm_string(&text).map_err(|d| d.with_origin(origin.as_str()))?;
                stack.push(path);
                let inner = splice(included.statements, loader, stack).map_err(|d| match d.origin {
                    Some(_) => d,
                    None => d.with_origin(origin.as_str()),
                })?;
                stack.pop();
                out.extend(inner);
                continue;
            }
            QmasmStmtKind::MacroDef { name, body } => QmasmStmtKind::MacroDef { name, body: splice(body, loader, stack)? },
            QmasmStmtKind::For { var, range, body } => QmasmStmtKind::For { var, range, body: splice(body, loader, stack)? },
            QmasmStmtKind::If { cond, then_body, else_body } => QmasmStmtKind::If {
                cond,
                then_body: splice(then_body, loader, stack)?,
                else_body: else_body.map(|b| splice(b, loader, stack)).transpose()?,
            },
            other => other,
        };
        out.push(QmasmStatement::new(kind, span));
    }
    Ok(out)
}
