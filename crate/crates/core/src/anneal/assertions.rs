use super::elaborate::{Resolved, ResolvedStatement};
use super::eval::{evaluate, ClassicalValue};
use crate::frontend::{Diagnostic, Expr, Result, Span};
use crate::qmasm::print_expression;

#[derive(Debug, Clone, PartialEq)]
pub struct AssertionVerdict {
    pub expr: Expr,
    pub span: Span,
    pub holds: bool,
}

impl AssertionVerdict {
    pub fn text(&self) -> String {
        print_expression(&self.expr)
    }
}

/// Evaluates every `!assert` against the bindings captured where it was
/// written. Assertions are purely classical and do not see the model.
pub fn check_assertions(statements: &[ResolvedStatement]) -> Result<Vec<AssertionVerdict>> {
    let mut out = Vec::new();
    for s in statements {
        let Resolved::Assert { expr, bindings } = &s.kind else { continue };
        let holds = match evaluate(expr, &|n| bindings.get(n).copied())? {
            ClassicalValue::Bool(b) => b,
            v => {
                return Err(Diagnostic::error(
                    "SEM306",
                    format!("assertion must be boolean, found {}", v.type_name()),
                    expr.span,
                ))
            }
        };
        out.push(AssertionVerdict { expr: expr.clone(), span: s.span, holds });
    }
    Ok(out)
}

/// Turns the first false verdict into an error.
pub fn require_assertions(verdicts: &[AssertionVerdict]) -> Result<()> {
    match verdicts.iter().find(|v| !v.holds) {
        Some(v) => Err(Diagnostic::error("SEM315", format!("assertion failed: {}", v.text()), v.span)),
        None => Ok(()),
    }
}
