use crate::frontend::{AstNode, Expr, Span};

#[derive(Debug, Clone, PartialEq)]
pub struct Ident {
    pub name: String,
    pub span: Span,
}

impl Ident {
    fn to_ast(&self, kind: &str) -> AstNode {
        AstNode::new(kind, self.span).attr("name", self.name.as_str())
    }
}

/// `reg[index]`, or a bare gate argument inside a gate body.
#[derive(Debug, Clone, PartialEq)]
pub struct QubitRef {
    pub reg: String,
    pub index: Option<u64>,
    pub span: Span,
}

impl QubitRef {
    pub fn to_ast(&self) -> AstNode {
        let node = AstNode::new("Ref", self.span).attr("reg", self.reg.as_str());
        match self.index {
            Some(i) => node.attr("index", i as i64),
            None => node,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RegisterKind {
    Quantum,
    Classical,
}

impl RegisterKind {
    pub fn keyword(self) -> &'static str {
        match self {
            RegisterKind::Quantum => "qreg",
            RegisterKind::Classical => "creg",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GateApply {
    pub name: Ident,
    pub params: Vec<Expr>,
    pub targets: Vec<QubitRef>,
    pub span: Span,
}

impl GateApply {
    pub fn to_ast(&self) -> AstNode {
        AstNode::new("GateApply", self.span)
            .attr("name", self.name.name.as_str())
            .children(self.params.iter().map(Expr::to_ast))
            .children(self.targets.iter().map(QubitRef::to_ast))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum QasmStmtKind {
    RegisterDecl { kind: RegisterKind, name: Ident, size: u64 },
    GateDef { name: Ident, params: Vec<Ident>, qubits: Vec<Ident>, body: Vec<GateApply> },
    GateApply(GateApply),
    Measure { source: QubitRef, dest: QubitRef },
    Reset { target: QubitRef },
    Barrier { targets: Vec<QubitRef> },
    If { creg: Ident, value: u64, body: Box<QasmStatement> },
    Include { path: String },
}

#[derive(Debug, Clone, PartialEq)]
pub struct QasmStatement {
    pub kind: QasmStmtKind,
    pub span: Span,
}

impl QasmStatement {
    pub fn to_ast(&self) -> AstNode {
        let node = |kind: &str| AstNode::new(kind, self.span);
        match &self.kind {
            QasmStmtKind::RegisterDecl { kind, name, size } => node("RegisterDecl")
                .attr("kind", kind.keyword())
                .attr("name", name.name.as_str())
                .attr("size", *size as i64),
            QasmStmtKind::GateDef { name, params, qubits, body } => node("GateDef")
                .attr("name", name.name.as_str())
                .children(params.iter().map(|p| p.to_ast("Param")))
                .children(qubits.iter().map(|q| q.to_ast("Arg")))
                .children(body.iter().map(GateApply::to_ast)),
            QasmStmtKind::GateApply(g) => g.to_ast(),
            QasmStmtKind::Measure { source, dest } => node("Measure").child(source.to_ast()).child(dest.to_ast()),
            QasmStmtKind::Reset { target } => node("Reset").child(target.to_ast()),
            QasmStmtKind::Barrier { targets } => node("Barrier").children(targets.iter().map(QubitRef::to_ast)),
            QasmStmtKind::If { creg, value, body } => node("If")
                .attr("creg", creg.name.as_str())
                .attr("value", *value as i64)
                .child(body.to_ast()),
            QasmStmtKind::Include { path } => node("Include").attr("path", path.as_str()),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Version {
    pub major: u32,
    pub minor: u32,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq)]
pub struct QasmProgram {
    pub version: Option<Version>,
    pub statements: Vec<QasmStatement>,
    pub span: Span,
}

impl QasmProgram {
    /// The version header, when present, is the first child.
    pub fn to_ast(&self) -> AstNode {
        let version = self.version.iter().map(|v| {
            AstNode::new("Version", v.span).attr("major", v.major as i64).attr("minor", v.minor as i64)
        });
        AstNode::new("Program", self.span)
            .children(version)
            .children(self.statements.iter().map(QasmStatement::to_ast))
    }
}
