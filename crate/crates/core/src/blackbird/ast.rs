use crate::frontend::{AstNode, Expr, Span};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DeclType {
    Int,
    Float,
    Complex,
    Bool,
    Str,
    Array,
}

impl DeclType {
    pub fn keyword(self) -> &'static str {
        match self {
            DeclType::Int => "int",
            DeclType::Float => "float",
            DeclType::Complex => "complex",
            DeclType::Bool => "bool",
            DeclType::Str => "str",
            DeclType::Array => "array",
        }
    }
}

/// Rectangular matrix literal stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ArrayLiteral {
    pub rows: usize,
    pub cols: usize,
    pub elements: Vec<Expr>,
    pub span: Span,
}

impl ArrayLiteral {
    pub fn row(&self, r: usize) -> &[Expr] {
        &self.elements[r * self.cols..(r + 1) * self.cols]
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum DeclValue {
    Expr(Expr),
    Array(ArrayLiteral),
}

#[derive(Debug, Clone, PartialEq)]
pub struct TypedDecl {
    pub decl_type: DeclType,
    pub name: String,
    pub value: DeclValue,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ModeStatement {
    pub op_name: String,
    pub arguments: Vec<Expr>,
    pub modes: Vec<u64>,
    pub span: Span,
    pub mode_spans: Vec<Span>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Target {
    pub name: String,
    pub options: Vec<(String, Expr)>,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BlackbirdProgram {
    pub name: Option<(String, Span)>,
    pub version: Option<(u32, u32, Span)>,
    pub target: Option<Target>,
    pub declarations: Vec<TypedDecl>,
    pub statements: Vec<ModeStatement>,
    pub span: Span,
}

impl BlackbirdProgram {
    /// Headers first, then declarations, then statements.
    pub fn to_ast(&self) -> AstNode {
        let mut root = AstNode::new("Program", self.span);
        if let Some((name, span)) = &self.name {
            root = root.child(AstNode::new("NameHeader", *span).attr("name", name.as_str()));
        }
        if let Some((major, minor, span)) = self.version {
            root = root.child(
                AstNode::new("VersionHeader", span).attr("major", major as i64).attr("minor", minor as i64),
            );
        }
        if let Some(t) = &self.target {
            let opts = t.options.iter().map(|(k, v)| {
                AstNode::new("Option", v.span).attr("name", k.as_str()).child(v.to_ast())
            });
            root = root.child(AstNode::new("Target", t.span).attr("name", t.name.as_str()).children(opts));
        }
        for d in &self.declarations {
            let value = match &d.value {
                DeclValue::Expr(e) => e.to_ast(),
                DeclValue::Array(a) => AstNode::new("ArrayLiteral", a.span)
                    .attr("rows", a.rows as i64)
                    .attr("cols", a.cols as i64)
                    .children(a.elements.iter().map(Expr::to_ast)),
            };
            root = root.child(
                AstNode::new("Decl", d.span)
                    .attr("type", d.decl_type.keyword())
                    .attr("name", d.name.as_str())
                    .child(value),
            );
        }
        for s in &self.statements {
            let modes = s.modes.iter().zip(&s.mode_spans).map(|(m, sp)| AstNode::new("Mode", *sp).attr("index", *m as i64));
            root = root.child(
                AstNode::new("ModeStatement", s.span)
                    .attr("op", s.op_name.as_str())
                    .children(s.arguments.iter().map(Expr::to_ast))
                    .children(modes),
            );
        }
        root
    }
}
