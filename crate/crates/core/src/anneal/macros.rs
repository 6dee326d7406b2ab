use crate::frontend::{Diagnostic, Result, Span};
use crate::qmasm::{QmasmProgram, QmasmStatement, QmasmStmtKind, Symbol};
use std::collections::HashMap;

/// Expands every `!use_macro` and drops the definitions.
///
/// Copy `m` of a body prefixes each symbol with `iₘ.`; `!next.s` becomes
/// `iₘ₊₁.s`. In the last copy there is no next instance, so statements that
/// use `!next.` are left out. With a single instance `!next.` can never be
/// satisfied, which is an error.
pub fn expand_macros(program: QmasmProgram) -> Result<Vec<QmasmStatement>> {
    let mut ex = Expander { macros: HashMap::new(), active: Vec::new() };
    ex.block(&program.statements, true)
}

struct Expander {
    macros: HashMap<String, Vec<QmasmStatement>>,
    active: Vec<String>,
}

impl Expander {
    fn block(&mut self, body: &[QmasmStatement], top: bool) -> Result<Vec<QmasmStatement>> {
        let mut out = Vec::new();
        for stmt in body {
            match &stmt.kind {
                QmasmStmtKind::MacroDef { name, body } => {
                    if !top {
                        return Err(Diagnostic::error("PAR305", "macro definitions are only allowed at top level", stmt.span));
                    }
                    self.macros.insert(name.clone(), body.clone());
                }
                QmasmStmtKind::UseMacro { name, instances } => out.extend(self.use_macro(name, instances, stmt.span)?),
                QmasmStmtKind::For { var, range, body } => out.push(QmasmStatement::new(
                    QmasmStmtKind::For { var: var.clone(), range: range.clone(), body: self.block(body, false)? },
                    stmt.span,
                )),
                QmasmStmtKind::If { cond, then_body, else_body } => {
                    let then_body = self.block(then_body, false)?;
                    let else_body = match else_body {
                        Some(b) => Some(self.block(b, false)?),
                        None => None,
                    };
                    out.push(QmasmStatement::new(QmasmStmtKind::If { cond: cond.clone(), then_body, else_body }, stmt.span));
                }
                _ => out.push(stmt.clone()),
            }
        }
        Ok(out)
    }

    fn use_macro(&mut self, name: &str, instances: &[(String, Span)], span: Span) -> Result<Vec<QmasmStatement>> {
        if self.active.iter().any(|a| a == name) {
            return Err(Diagnostic::error("SEM304", format!("macro '{name}' uses itself"), span));
        }
        let Some(body) = self.macros.get(name).cloned() else {
            return Err(Diagnostic::error("SEM304", format!("unknown macro '{name}'"), span));
        };
        self.active.push(name.to_string());
        let body = self.block(&body, false);
        self.active.pop();
        let body = body?;
        let mut out = Vec::with_capacity(body.len() * instances.len());
        for (m, (inst, _)) in instances.iter().enumerate() {
            let next = instances.get(m + 1).map(|(n, _)| n.as_str());
            for stmt in &body {
                match rename(stmt, inst, next) {
                    Renamed::Kept(s) => out.push(*s),
                    Renamed::Dropped(_) if instances.len() > 1 => {}
                    Renamed::Dropped(at) => {
                        return Err(Diagnostic::error(
                            "SEM303",
                            format!("'!next.' in macro '{name}' has no following instance"),
                            at,
                        ))
                    }
                }
            }
        }
        Ok(out)
    }
}

enum Renamed {
    Kept(Box<QmasmStatement>),
    /// Uses `!next.` with no next instance; carries the offending span.
    Dropped(Span),
}

fn rename(stmt: &QmasmStatement, inst: &str, next: Option<&str>) -> Renamed {
    let sym = |s: &Symbol| -> std::result::Result<Symbol, Span> {
        let prefix = if s.next { next.ok_or(s.span)? } else { inst };
        Ok(Symbol { name: format!("{prefix}.{}", s.name), next: false, span: s.span })
    };
    let block = |body: &[QmasmStatement]| -> std::result::Result<Vec<QmasmStatement>, Span> {
        let mut out = Vec::new();
        for s in body {
            match rename(s, inst, next) {
                Renamed::Kept(s) => out.push(*s),
                Renamed::Dropped(at) => return Err(at),
            }
        }
        Ok(out)
    };
    use QmasmStmtKind as K;
    let kind = (|| {
        Ok(match &stmt.kind {
            K::Weight { sym: s, value } => K::Weight { sym: sym(s)?, value: value.clone() },
            K::Pin { sym: s, value } => K::Pin { sym: sym(s)?, value: value.clone() },
            K::Coupling { a, b, value } => K::Coupling { a: sym(a)?, b: sym(b)?, value: value.clone() },
            K::Chain { a, b } => K::Chain { a: sym(a)?, b: sym(b)? },
            K::AntiChain { a, b } => K::AntiChain { a: sym(a)?, b: sym(b)? },
            K::Equiv { a, b } => K::Equiv { a: sym(a)?, b: sym(b)? },
            K::For { var, range, body } => K::For { var: var.clone(), range: range.clone(), body: block(body)? },
            K::If { cond, then_body, else_body } => K::If {
                cond: cond.clone(),
                then_body: block(then_body)?,
                else_body: else_body.as_deref().map(block).transpose()?,
            },
            other => other.clone(),
        })
    })();
    match kind {
        Ok(kind) => Renamed::Kept(Box::new(QmasmStatement::new(kind, stmt.span))),
        Err(at) => Renamed::Dropped(at),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qmasm::{parse_qmasm_string, print_qmasm};

    fn expand(src: &str) -> Result<String> {
        let stmts = expand_macros(parse_qmasm_string(src)?)?;
        Ok(print_qmasm(&QmasmProgram { statements: stmts, span: Span::default() }))
    }

    #[test]
    fn prefixes_each_instance() {
        let src = "!begin_macro m\na 1\nb c -1\n!end_macro m\n!use_macro m x y\n";
        assert_eq!(expand(src).unwrap(), "x.a 1\nx.b x.c -1\ny.a 1\ny.b y.c -1\n");
    }

    #[test]
    fn next_chains_adjacent_instances() {
        let src = "!begin_macro m\n!next.in out -1\n!end_macro m\n!use_macro m g1 g2\n";
        assert_eq!(expand(src).unwrap(), "g2.in g1.out -1\n");
        let src = "!begin_macro m\n!next.in out -1\n!end_macro m\n!use_macro m g1 g2 g3\n";
        assert_eq!(expand(src).unwrap(), "g2.in g1.out -1\ng3.in g2.out -1\n");
    }

    #[test]
    fn nested_macros_compose_prefixes() {
        let src = "!begin_macro inner\nq 1\n!end_macro inner\n!begin_macro outer\n!use_macro inner i\n!end_macro outer\n!use_macro outer o\n";
        assert_eq!(expand(src).unwrap(), "o.i.q 1\n");
    }

    #[test]
    fn errors() {
        assert_eq!(expand("!use_macro nosuch x\n").unwrap_err().code, "SEM304");
        let src = "!begin_macro m\n!next.a b 1\n!end_macro m\n!use_macro m only\n";
        assert_eq!(expand(src).unwrap_err().code, "SEM303");
        let src = "!begin_macro m\n!use_macro m x\n!end_macro m\n!use_macro m y\n";
        assert_eq!(expand(src).unwrap_err().code, "SEM304");
    }
}
