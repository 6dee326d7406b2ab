use crate::frontend::{AstNode, Expr, Span};
use std::fmt;

/// A symbol as written, before interpolation. `next` marks the `!next.`
/// prefix, which refers to the following macro instance.
#[derive(Debug, Clone, PartialEq)]
pub struct Symbol {
    pub name: String,
    pub next: bool,
    pub span: Span,
}

impl Symbol {
    pub fn new(name: impl Into<String>, span: Span) -> Self {
        Symbol { name: name.into(), next: false, span }
    }

    fn to_ast(&self) -> AstNode {
        AstNode::new("Sym", self.span).attr("name", self.name.as_str()).attr("next", self.next)
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.next {
            f.write_str("!next.")?;
        }
        f.write_str(&self.name)
    }
}

/// Inclusive `lo .. hi step s` bounds of a `!for` loop.
#[derive(Debug, Clone, PartialEq)]
pub struct RangeSpec {
    pub lo: Expr,
    pub hi: Expr,
    pub step: Option<Expr>,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq)]
pub enum QmasmStmtKind {
    Weight { sym: Symbol, value: Expr },
    Coupling { a: Symbol, b: Symbol, value: Expr },
    Chain { a: Symbol, b: Symbol },
    AntiChain { a: Symbol, b: Symbol },
    Equiv { a: Symbol, b: Symbol },
    Pin { sym: Symbol, value: Expr },
    MacroDef { name: String, body: Vec<QmasmStatement> },
    UseMacro { name: String, instances: Vec<(String, Span)> },
    Include { path: String },
    Assert { expr: Expr },
    For { var: String, range: RangeSpec, body: Vec<QmasmStatement> },
    If { cond: Expr, then_body: Vec<QmasmStatement>, else_body: Option<Vec<QmasmStatement>> },
    Let { var: String, value: Expr },
}

#[derive(Debug, Clone, PartialEq)]
pub struct QmasmStatement {
    pub kind: QmasmStmtKind,
    pub span: Span,
}

impl QmasmStatement {
    pub fn new(kind: QmasmStmtKind, span: Span) -> Self {
        QmasmStatement { kind, span }
    }

    pub fn kind_name(&self) -> &'static str {
        match self.kind {
            QmasmStmtKind::Weight { .. } => "Weight",
            QmasmStmtKind::Coupling { .. } => "Coupling",
            QmasmStmtKind::Chain { .. } => "Chain",
            QmasmStmtKind::AntiChain { .. } => "AntiChain",
            QmasmStmtKind::Equiv { .. } => "Equiv",
            QmasmStmtKind::Pin { .. } => "Pin",
            QmasmStmtKind::MacroDef { .. } => "MacroDef",
            QmasmStmtKind::UseMacro { .. } => "UseMacro",
            QmasmStmtKind::Include { .. } => "Include",
            QmasmStmtKind::Assert { .. } => "Assert",
            QmasmStmtKind::For { .. } => "For",
            QmasmStmtKind::If { .. } => "If",
            QmasmStmtKind::Let { .. } => "Let",
        }
    }

    pub fn to_ast(&self) -> AstNode {
        use QmasmStmtKind as K;
        let node = AstNode::new(self.kind_name(), self.span);
        match &self.kind {
            K::Weight { sym, value } | K::Pin { sym, value } => node.child(sym.to_ast()).child(value.to_ast()),
            K::Coupling { a, b, value } => node.child(a.to_ast()).child(b.to_ast()).child(value.to_ast()),
            K::Chain { a, b } | K::AntiChain { a, b } | K::Equiv { a, b } => node.child(a.to_ast()).child(b.to_ast()),
            K::MacroDef { name, body } => node.attr("name", name.as_str()).children(body.iter().map(Self::to_ast)),
            K::UseMacro { name, instances } => node
                .attr("name", name.as_str())
                .children(instances.iter().map(|(i, sp)| AstNode::new("Instance", *sp).attr("name", i.as_str()))),
            K::Include { path } => node.attr("path", path.as_str()),
            K::Assert { expr } => node.child(expr.to_ast()),
            K::For { var, range, body } => {
                let r = AstNode::new("Range", range.span)
                    .child(range.lo.to_ast())
                    .child(range.hi.to_ast())
                    .children(range.step.iter().map(Expr::to_ast));
                node.attr("var", var.as_str()).child(r).children(body.iter().map(Self::to_ast))
            }
            K::If { cond, then_body, else_body } => {
                let block = |kind: &str, body: &[QmasmStatement]| {
                    let span = match (body.first(), body.last()) {
                        (Some(f), Some(l)) => f.span.to(l.span),
                        _ => Span::point(cond.span.end),
                    };
                    AstNode::new(kind, span).children(body.iter().map(Self::to_ast))
                };
                let node = node.child(cond.to_ast()).child(block("Then", then_body));
                match else_body {
                    Some(e) => node.child(block("Else", e)),
                    None => node,
                }
            }
            K::Let { var, value } => node.attr("var", var.as_str()).child(value.to_ast()),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct QmasmProgram {
    pub statements: Vec<QmasmStatement>,
    pub span: Span,
}

impl QmasmProgram {
    pub fn to_ast(&self) -> AstNode {
        AstNode::new("Program", self.span).children(self.statements.iter().map(QmasmStatement::to_ast))
    }
}
