//! Expression trees shared by the three frontends: a precedence-climbing
//! parser that works over any language's tokens, and a printer that emits
//! the minimal parentheses needed to reparse the same tree.
//!
//! Precedence, loosest first: `||`, `&&`, comparisons, `+ -`, `* / %`,
//! unary `-`/`~`, then `**` (right-associative, and its right operand may be
//! unary so `2**-1` parses). Everything but `**` is left-associative.

use super::ast::AstNode;
use super::diagnostic::Diagnostic;
use super::span::Span;
use super::token::{Token, TokenKind};
use std::fmt::Write as _;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BinOp {
    Or,
    And,
    Eq,
    Ne,
    Lt,
    Le,
    Gt,
    Ge,
    Add,
    Sub,
    Mul,
    Div,
    Mod,
    Pow,
}

impl BinOp {
    pub const ALL: [BinOp; 14] = [
        BinOp::Or,
        BinOp::And,
        BinOp::Eq,
        BinOp::Ne,
        BinOp::Lt,
        BinOp::Le,
        BinOp::Gt,
        BinOp::Ge,
        BinOp::Add,
        BinOp::Sub,
        BinOp::Mul,
        BinOp::Div,
        BinOp::Mod,
        BinOp::Pow,
    ];

    fn precedence(self) -> u8 {
        match self {
            BinOp::Or => 1,
            BinOp::And => 2,
            BinOp::Eq | BinOp::Ne | BinOp::Lt | BinOp::Le | BinOp::Gt | BinOp::Ge => 3,
            BinOp::Add | BinOp::Sub => 4,
            BinOp::Mul | BinOp::Div | BinOp::Mod => 5,
            BinOp::Pow => POW_PREC,
        }
    }

    /// AST node kind.
    pub fn kind_name(self) -> &'static str {
        match self {
            BinOp::Or => "Or",
            BinOp::And => "And",
            BinOp::Eq => "Eq",
            BinOp::Ne => "Ne",
            BinOp::Lt => "Lt",
            BinOp::Le => "Le",
            BinOp::Gt => "Gt",
            BinOp::Ge => "Ge",
            BinOp::Add => "Add",
            BinOp::Sub => "Sub",
            BinOp::Mul => "Mul",
            BinOp::Div => "Div",
            BinOp::Mod => "Mod",
            BinOp::Pow => "Pow",
        }
    }
}

const UNARY_PREC: u8 = 6;
const POW_PREC: u8 = 7;
const ATOM_PREC: u8 = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnOp {
    Neg,
    Not,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ExprKind {
    Int(i64),
    Real(f64),
    /// Imaginary literal such as `2j`.
    Imag(f64),
    Bool(bool),
    Str(String),
    Pi,
    Var(String),
    Call { func: String, args: Vec<Expr> },
    Unary(UnOp, Box<Expr>),
    Binary(BinOp, Box<Expr>, Box<Expr>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Expr {
    pub kind: ExprKind,
    pub span: Span,
}

impl Expr {
    pub fn new(kind: ExprKind, span: Span) -> Self {
        Expr { kind, span }
    }

    pub fn binary(op: BinOp, lhs: Expr, rhs: Expr) -> Self {
        let span = lhs.span.to(rhs.span);
        Expr::new(ExprKind::Binary(op, Box::new(lhs), Box::new(rhs)), span)
    }

    pub fn unary(op: UnOp, operand: Expr) -> Self {
        let span = operand.span;
        Expr::new(ExprKind::Unary(op, Box::new(operand)), span)
    }

    fn precedence(&self) -> u8 {
        match &self.kind {
            ExprKind::Binary(op, ..) => op.precedence(),
            ExprKind::Unary(..) => UNARY_PREC,
            _ => ATOM_PREC,
        }
    }

    pub fn depth(&self) -> usize {
        1 + match &self.kind {
            ExprKind::Call { args, .. } => args.iter().map(Expr::depth).max().unwrap_or(0),
            ExprKind::Unary(_, e) => e.depth(),
            ExprKind::Binary(_, l, r) => l.depth().max(r.depth()),
            _ => 0,
        }
    }

    /// Visits every variable name in the tree.
    pub fn for_each_var<'a>(&'a self, f: &mut impl FnMut(&'a str, Span)) {
        match &self.kind {
            ExprKind::Var(name) => f(name, self.span),
            ExprKind::Call { args, .. } => args.iter().for_each(|a| a.for_each_var(f)),
            ExprKind::Unary(_, e) => e.for_each_var(f),
            ExprKind::Binary(_, l, r) => {
                l.for_each_var(f);
                r.for_each_var(f);
            }
            _ => {}
        }
    }

    pub fn to_ast(&self) -> AstNode {
        let node = |kind: &str| AstNode::new(kind, self.span);
        match &self.kind {
            ExprKind::Int(v) => node("Int").attr("value", *v),
            ExprKind::Real(v) => node("Real").attr("value", *v),
            ExprKind::Imag(v) => node("Imag").attr("value", *v),
            ExprKind::Bool(v) => node("Bool").attr("value", *v),
            ExprKind::Str(v) => node("Str").attr("value", v.as_str()),
            ExprKind::Pi => node("Pi"),
            ExprKind::Var(name) => node("Var").attr("name", name.as_str()),
            ExprKind::Call { func, args } => {
                node("Call").attr("name", func.as_str()).children(args.iter().map(Expr::to_ast))
            }
            ExprKind::Unary(UnOp::Neg, e) => node("Neg").child(e.to_ast()),
            ExprKind::Unary(UnOp::Not, e) => node("Not").child(e.to_ast()),
            ExprKind::Binary(op, l, r) => node(op.kind_name()).child(l.to_ast()).child(r.to_ast()),
        }
    }
}

/// What a language token means to the expression grammar.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExprToken<'a> {
    Bin(BinOp),
    /// `-`: subtraction in binary position, negation in prefix position.
    Minus,
    Not,
    LParen,
    RParen,
    Comma,
    Int(i64),
    Real(f64),
    Imag(f64),
    Bool(bool),
    Str(&'a str),
    Pi,
    Ident(&'a str),
    Other,
}

/// Maps a language's tokens onto the expression grammar. Tokens the
/// language uses for other purposes in expression context map to `Other`.
pub trait ExprLexicon: TokenKind {
    fn classify(token: &Token<Self>) -> ExprToken<'_>;
}

/// Per-language expression settings: diagnostic codes and printer glyphs.
#[derive(Debug, Clone)]
pub struct ExprDialect {
    pub pow_glyph: &'static str,
    pub var_prefix: &'static str,
    pub calls: bool,
    pub unbalanced_code: &'static str,
    pub dangling_code: &'static str,
    pub unexpected_code: &'static str,
}

const MAX_NESTING: usize = 128;

/// Parses one expression starting at `*pos`, leaving `*pos` on the first
/// token that cannot continue it. `eof` locates errors at end of input.
pub fn parse_expr<K: ExprLexicon>(
    tokens: &[Token<K>],
    pos: &mut usize,
    dialect: &ExprDialect,
    eof: Span,
) -> Result<Expr, Diagnostic> {
    let mut p = ExprParser { tokens, pos: *pos, dialect, eof, depth: 0 };
    let e = p.binary(1)?;
    *pos = p.pos;
    Ok(e)
}

struct ExprParser<'t, 'd, K> {
    tokens: &'t [Token<K>],
    pos: usize,
    dialect: &'d ExprDialect,
    eof: Span,
    depth: usize,
}

impl<'t, K: ExprLexicon> ExprParser<'t, '_, K> {
    fn peek(&self) -> ExprToken<'t> {
        self.tokens.get(self.pos).map_or(ExprToken::Other, |t| K::classify(t))
    }

    fn span_here(&self) -> Span {
        self.tokens.get(self.pos).map_or(self.eof, |t| t.span)
    }

    fn binary(&mut self, min_prec: u8) -> Result<Expr, Diagnostic> {
        let mut lhs = self.unary()?;
        loop {
            let op = match self.peek() {
                ExprToken::Bin(op) if op != BinOp::Pow => op,
                ExprToken::Minus => BinOp::Sub,
                _ => break,
            };
            if op.precedence() < min_prec {
                break;
            }
            self.pos += 1;
            let rhs = self.binary(op.precedence() + 1)?;
            lhs = Expr::binary(op, lhs, rhs);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr, Diagnostic> {
        let op = match self.peek() {
            ExprToken::Minus => UnOp::Neg,
            ExprToken::Not => UnOp::Not,
            _ => return self.power(),
        };
        let start = self.span_here();
        self.pos += 1;
        self.enter(start)?;
        let operand = self.unary()?;
        self.depth -= 1;
        let span = start.to(operand.span);
        Ok(Expr::new(ExprKind::Unary(op, Box::new(operand)), span))
    }

    fn power(&mut self) -> Result<Expr, Diagnostic> {
        let base = self.primary()?;
        if self.peek() == ExprToken::Bin(BinOp::Pow) {
            let at = self.span_here();
            self.pos += 1;
            self.enter(at)?;
            let exponent = self.unary()?;
            self.depth -= 1;
            return Ok(Expr::binary(BinOp::Pow, base, exponent));
        }
        Ok(base)
    }

    fn enter(&mut self, at: Span) -> Result<(), Diagnostic> {
        self.depth += 1;
        if self.depth > MAX_NESTING {
            return Err(Diagnostic::error(self.dialect.unexpected_code, "expression nested too deeply", at));
        }
        Ok(())
    }

    fn primary(&mut self) -> Result<Expr, Diagnostic> {
        let span = self.span_here();
        let kind = match self.peek() {
            ExprToken::Int(v) => ExprKind::Int(v),
            ExprToken::Real(v) => ExprKind::Real(v),
            ExprToken::Imag(v) => ExprKind::Imag(v),
            ExprToken::Bool(v) => ExprKind::Bool(v),
            ExprToken::Str(s) => ExprKind::Str(s.to_string()),
            ExprToken::Pi => ExprKind::Pi,
            ExprToken::Ident(name) => {
                self.pos += 1;
                if self.dialect.calls && self.peek() == ExprToken::LParen {
                    return self.call(name, span);
                }
                return Ok(Expr::new(ExprKind::Var(name.to_string()), span));
            }
            ExprToken::LParen => return self.group(span),
            _ => return Err(self.missing_operand()),
        };
        self.pos += 1;
        Ok(Expr::new(kind, span))
    }

    fn group(&mut self, open: Span) -> Result<Expr, Diagnostic> {
        self.pos += 1;
        self.enter(open)?;
        let mut inner = self.binary(1)?;
        self.depth -= 1;
        if self.peek() != ExprToken::RParen {
            return Err(Diagnostic::error(self.dialect.unbalanced_code, "unbalanced parenthesis: missing ')'", open));
        }
        inner.span = open.to(self.span_here()).to(inner.span);
        self.pos += 1;
        Ok(inner)
    }

    fn call(&mut self, func: &str, name_span: Span) -> Result<Expr, Diagnostic> {
        let open = self.span_here();
        self.pos += 1;
        self.enter(open)?;
        let mut args = Vec::new();
        if self.peek() != ExprToken::RParen {
            loop {
                args.push(self.binary(1)?);
                if self.peek() != ExprToken::Comma {
                    break;
                }
                self.pos += 1;
            }
        }
        self.depth -= 1;
        if self.peek() != ExprToken::RParen {
            return Err(Diagnostic::error(self.dialect.unbalanced_code, "unbalanced parenthesis: missing ')'", open));
        }
        let span = name_span.to(self.span_here());
        self.pos += 1;
        Ok(Expr::new(ExprKind::Call { func: func.to_string(), args }, span))
    }

    fn missing_operand(&self) -> Diagnostic {
        let after_operator = self.pos > 0
            && matches!(
                K::classify(&self.tokens[self.pos - 1]),
                ExprToken::Bin(_) | ExprToken::Minus | ExprToken::Not
            );
        let found = self.tokens.get(self.pos).map_or("end of input", |t| t.kind.name());
        if after_operator {
            Diagnostic::error(self.dialect.dangling_code, format!("dangling operator: expected operand, found {found}"), self.span_here())
        } else if self.peek() == ExprToken::RParen {
            Diagnostic::error(self.dialect.unbalanced_code, "unbalanced parenthesis: unexpected ')'", self.span_here())
        } else {
            Diagnostic::error(self.dialect.unexpected_code, format!("expected expression, found {found}"), self.span_here())
        }
    }
}

/// Source text for `expr` that reparses to the same tree under `dialect`.
pub fn print_expr(expr: &Expr, dialect: &ExprDialect) -> String {
    let mut out = String::new();
    write_expr(&mut out, expr, 0, dialect);
    out
}

fn write_expr(out: &mut String, expr: &Expr, min_prec: u8, d: &ExprDialect) {
    let prec = expr.precedence();
    let parens = prec < min_prec;
    if parens {
        out.push('(');
    }
    match &expr.kind {
        ExprKind::Int(v) => {
            let _ = write!(out, "{v}");
        }
        ExprKind::Real(v) => {
            let _ = write!(out, "{v:?}");
        }
        ExprKind::Imag(v) => {
            let _ = write!(out, "{v:?}j");
        }
        ExprKind::Bool(v) => {
            let _ = write!(out, "{v}");
        }
        ExprKind::Str(s) => {
            let _ = write!(out, "\"{s}\"");
        }
        ExprKind::Pi => out.push_str("pi"),
        ExprKind::Var(name) => {
            out.push_str(d.var_prefix);
            out.push_str(name);
        }
        ExprKind::Call { func, args } => {
            out.push_str(func);
            out.push('(');
            for (i, a) in args.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                write_expr(out, a, 0, d);
            }
            out.push(')');
        }
        ExprKind::Unary(op, operand) => {
            out.push(if *op == UnOp::Neg { '-' } else { '~' });
            let mut inner = String::new();
            write_expr(&mut inner, operand, UNARY_PREC, d);
            // `-2` would relex as a signed literal in line-oriented dialects
            if inner.starts_with(|c: char| c.is_ascii_digit() || c == '.') {
                out.push(' ');
            }
            out.push_str(&inner);
        }
        ExprKind::Binary(BinOp::Pow, l, r) => {
            write_expr(out, l, ATOM_PREC, d);
            let _ = write!(out, " {} ", d.pow_glyph);
            write_expr(out, r, UNARY_PREC, d);
        }
        ExprKind::Binary(op, l, r) => {
            write_expr(out, l, op.precedence(), d);
            let _ = write!(out, " {} ", glyph(*op));
            write_expr(out, r, op.precedence() + 1, d);
        }
    }
    if parens {
        out.push(')');
    }
}

fn glyph(op: BinOp) -> &'static str {
    match op {
        BinOp::Or => "||",
        BinOp::And => "&&",
        BinOp::Eq => "=",
        BinOp::Ne => "/=",
        BinOp::Lt => "<",
        BinOp::Le => "<=",
        BinOp::Gt => ">",
        BinOp::Ge => ">=",
        BinOp::Add => "+",
        BinOp::Sub => "-",
        BinOp::Mul => "*",
        BinOp::Div => "/",
        BinOp::Mod => "%",
        BinOp::Pow => "**",
    }
}
