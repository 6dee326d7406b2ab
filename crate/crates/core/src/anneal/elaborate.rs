use super::eval::{evaluate, Bindings, ClassicalValue, Scopes};
use crate::frontend::{Diagnostic, Expr, Result, Span};
use crate::qmasm::{QmasmStatement, QmasmStmtKind, QuantumSymbol, SymbolRole, Symbol};

/// A statement with loops, conditionals and variables resolved away.
#[derive(Debug, Clone, PartialEq)]
pub enum Resolved {
    Weight { sym: String, value: f64 },
    Coupling { a: String, b: String, value: f64 },
    Chain { a: String, b: String },
    AntiChain { a: String, b: String },
    Equiv { a: String, b: String },
    Pin { sym: String, value: bool },
    /// Evaluated later, against the bindings visible where it appeared.
    Assert { expr: Expr, bindings: Bindings },
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResolvedStatement {
    pub kind: Resolved,
    pub span: Span,
}

/// Safety valve against runaway loops.
pub const MAX_RESOLVED: usize = 10_000_000;

/// Unrolls loops, picks `!if` branches, binds `!let` variables, evaluates
/// values and substitutes `$var` inside symbol names. `bindings` seeds the
/// outermost scope.
pub fn elaborate(statements: &[QmasmStatement], bindings: &Bindings) -> Result<Vec<ResolvedStatement>> {
    let mut scopes = Scopes::new();
    for (k, v) in bindings {
        scopes.bind(k, *v);
    }
    let mut out = Vec::new();
    block(statements, &mut scopes, &mut out)?;
    Ok(out)
}

fn eval(expr: &Expr, scopes: &Scopes) -> Result<ClassicalValue> {
    evaluate(expr, &|name| scopes.lookup(name))
}

fn number(expr: &Expr, scopes: &Scopes) -> Result<f64> {
    let v = eval(expr, scopes)?;
    v.as_f64()
        .ok_or_else(|| Diagnostic::error("SEM314", format!("expected a number, found {}", v.type_name()), expr.span))
}

fn integer(expr: &Expr, scopes: &Scopes) -> Result<i64> {
    match eval(expr, scopes)? {
        ClassicalValue::Int(i) => Ok(i),
        v => Err(Diagnostic::error("SEM313", format!("range bounds must be integers, found {}", v.type_name()), expr.span)),
    }
}

fn block(statements: &[QmasmStatement], scopes: &mut Scopes, out: &mut Vec<ResolvedStatement>) -> Result<()> {
    for stmt in statements {
        statement(stmt, scopes, out)?;
    }
    Ok(())
}

fn statement(stmt: &QmasmStatement, scopes: &mut Scopes, out: &mut Vec<ResolvedStatement>) -> Result<()> {
    use QmasmStmtKind as K;
    let span = stmt.span;
    let mut emit = |kind: Resolved| {
        if out.len() >= MAX_RESOLVED {
            return Err(Diagnostic::error("SEM314", "program expands to too many statements", span));
        }
        out.push(ResolvedStatement { kind, span });
        Ok(())
    };
    match &stmt.kind {
        K::Weight { sym, value } => emit(Resolved::Weight { sym: interpolate(sym, scopes)?, value: number(value, scopes)? }),
        K::Coupling { a, b, value } => emit(Resolved::Coupling {
            a: interpolate(a, scopes)?,
            b: interpolate(b, scopes)?,
            value: number(value, scopes)?,
        }),
        K::Chain { a, b } => emit(Resolved::Chain { a: interpolate(a, scopes)?, b: interpolate(b, scopes)? }),
        K::AntiChain { a, b } => emit(Resolved::AntiChain { a: interpolate(a, scopes)?, b: interpolate(b, scopes)? }),
        K::Equiv { a, b } => emit(Resolved::Equiv { a: interpolate(a, scopes)?, b: interpolate(b, scopes)? }),
        K::Pin { sym, value } => {
            let name = interpolate(sym, scopes)?;
            let qs = QuantumSymbol::classify(&name);
            match (qs.role, eval(value, scopes)?) {
                (SymbolRole::Register, ClassicalValue::Int(v)) => {
                    let bits = qs.bit_names();
                    let width = bits.len() as u32;
                    if v < 0 || (width < 63 && v >= 1i64 << width) {
                        return Err(Diagnostic::error(
                            "SEM314",
                            format!("{v} does not fit in the {width}-bit register '{name}'"),
                            value.span,
                        ));
                    }
                    for (i, bit) in bits.into_iter().enumerate() {
                        let shift = width as usize - 1 - i;
                        emit(Resolved::Pin { sym: bit, value: shift < 63 && (v >> shift) & 1 == 1 })?;
                    }
                    Ok(())
                }
                (_, ClassicalValue::Bool(b)) => emit(Resolved::Pin { sym: name, value: b }),
                (_, v) => Err(Diagnostic::error(
                    "SEM314",
                    format!("a pin needs a boolean (or an integer for a register), found {}", v.type_name()),
                    value.span,
                )),
            }
        }
        K::Assert { expr } => emit(Resolved::Assert { expr: expr.clone(), bindings: scopes.snapshot() }),
        K::Let { var, value } => {
            let v = eval(value, scopes)?;
            scopes.bind(var, v);
            Ok(())
        }
        K::If { cond, then_body, else_body } => {
            let taken = match eval(cond, scopes)? {
                ClassicalValue::Bool(b) => b,
                v => {
                    return Err(Diagnostic::error(
                        "SEM306",
                        format!("condition must be boolean, found {}", v.type_name()),
                        cond.span,
                    ))
                }
            };
            let body = if taken { Some(then_body) } else { else_body.as_ref() };
            if let Some(body) = body {
                scopes.push();
                let r = block(body, scopes, out);
                scopes.pop();
                r?;
            }
            Ok(())
        }
        K::For { var, range, body } => {
            let lo = integer(&range.lo, scopes)?;
            let hi = integer(&range.hi, scopes)?;
            let step = match &range.step {
                Some(s) => integer(s, scopes)?,
                None if hi >= lo => 1,
                None => -1,
            };
            if step == 0 {
                let at = range.step.as_ref().map_or(range.span, |s| s.span);
                return Err(Diagnostic::error("SEM313", "loop step must not be zero", at));
            }
            let mut i = lo;
            while (step > 0 && i <= hi) || (step < 0 && i >= hi) {
                scopes.push();
                scopes.bind(var, ClassicalValue::Int(i));
                let r = block(body, scopes, out);
                scopes.pop();
                r?;
                match i.checked_add(step) {
                    Some(n) => i = n,
                    None => break,
                }
            }
            Ok(())
        }
        K::MacroDef { .. } | K::UseMacro { .. } | K::Include { .. } => Err(Diagnostic::error(
            "SEM314",
            format!("'{}' must be resolved before elaboration", stmt.kind_name()),
            span,
        )),
    }
}

/// Replaces each `$name` in a symbol with the bound integer's decimal form.
fn interpolate(sym: &Symbol, scopes: &Scopes) -> Result<String> {
    if !sym.name.contains('$') {
        return Ok(sym.name.clone());
    }
    let mut out = String::with_capacity(sym.name.len());
    let mut rest = sym.name.as_str();
    while let Some(at) = rest.find('$') {
        out.push_str(&rest[..at]);
        let tail = &rest[at + 1..];
        let len = tail.find(|c: char| !(c.is_ascii_alphanumeric() || c == '_')).unwrap_or(tail.len());
        let var = &tail[..len];
        match scopes.lookup(var) {
            Some(ClassicalValue::Int(i)) => out.push_str(&i.to_string()),
            Some(v) => {
                return Err(Diagnostic::error(
                    "SEM314",
                    format!("'${var}' in a symbol must be an integer, found {}", v.type_name()),
                    sym.span,
                ))
            }
            None => return Err(Diagnostic::error("SEM305", format!("unbound variable '${var}'"), sym.span)),
        }
        rest = &tail[len..];
    }
    out.push_str(rest);
    Ok(out)
}
