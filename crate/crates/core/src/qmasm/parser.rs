use super::ast::*;
use super::lexer::QmasmToken as T;
use crate::frontend::expr::ExprDialect;
use crate::frontend::parse::TokenCursor;
use crate::frontend::{Diagnostic, Expr, ExprKind, Result, TokenStream};

pub(crate) const DIALECT: ExprDialect = ExprDialect {
    pow_glyph: "**",
    var_prefix: "$",
    calls: false,
    unbalanced_code: "PAR302",
    dangling_code: "PAR302",
    unexpected_code: "PAR302",
};

/// Parses a free-standing expression covering the whole stream (a trailing
/// newline is allowed).
pub fn parse_expression(stream: &TokenStream<T>) -> Result<Expr> {
    let mut ts = TokenCursor::new(stream);
    let e = ts.expr(&DIALECT)?;
    ts.eat(T::Newline);
    if ts.at_end() {
        Ok(e)
    } else {
        Err(ts.unexpected("PAR302", "end of expression"))
    }
}

/// Parses QMASM tokens into a program. Statements are line oriented; block
/// directives (`!begin_macro`, `!for`, `!if`) must be closed before the end
/// of input, and macro definitions may appear only at top level.
pub fn parse_qmasm(stream: &TokenStream<T>) -> Result<QmasmProgram> {
    let mut p = Parser { ts: TokenCursor::new(stream) };
    let statements = p.block(Ctx::Top, &[])?;
    Ok(QmasmProgram { statements, span: stream.full_span() })
}

/// Where a block sits, which controls what may appear inside it.
#[derive(Clone, Copy, PartialEq)]
enum Ctx {
    Top,
    Macro,
    /// Inside `!for`/`!if`; `in_macro` says whether an enclosing macro exists.
    Nested { in_macro: bool },
}

impl Ctx {
    fn in_macro(self) -> bool {
        matches!(self, Ctx::Macro | Ctx::Nested { in_macro: true })
    }
}

struct Parser<'t> {
    ts: TokenCursor<'t, T>,
}

impl Parser<'_> {
    /// Parses statements until one of `until` starts a line (left unconsumed)
    /// or input ends. Reaching the end is the caller's problem.
    fn block(&mut self, ctx: Ctx, until: &[T]) -> Result<Vec<QmasmStatement>> {
        let mut out = Vec::new();
        while let Some(kind) = self.ts.peek_kind() {
            if kind == T::Newline {
                self.ts.bump();
                continue;
            }
            if until.contains(&kind) {
                break;
            }
            out.push(self.statement(ctx)?);
            self.end_of_line()?;
        }
        Ok(out)
    }

    fn end_of_line(&mut self) -> Result<()> {
        if self.ts.at_end() || self.ts.eat(T::Newline).is_some() {
            Ok(())
        } else {
            Err(self.ts.unexpected("PAR302", "end of line"))
        }
    }

    fn statement(&mut self, ctx: Ctx) -> Result<QmasmStatement> {
        let start = self.ts.span_here();
        let kind = match self.ts.peek_kind() {
            Some(T::Id | T::Next) => self.symbol_statement(ctx)?,
            Some(T::BeginMacro) => self.macro_def(ctx)?,
            Some(T::UseMacro) => {
                self.ts.bump();
                let name = self.ts.expect(T::Id, "PAR302")?.lexeme.clone();
                let mut instances = Vec::new();
                while let Some(t) = self.ts.eat(T::Id) {
                    instances.push((t.lexeme.clone(), t.span));
                }
                if instances.is_empty() {
                    return Err(self.ts.unexpected("PAR302", "macro instance name"));
                }
                QmasmStmtKind::UseMacro { name, instances }
            }
            Some(T::Include) => {
                self.ts.bump();
                let path = self.ts.expect(T::Str, "PAR302")?.text().unwrap_or_default().to_string();
                QmasmStmtKind::Include { path }
            }
            Some(T::Assert) => {
                self.ts.bump();
                QmasmStmtKind::Assert { expr: self.ts.expr(&DIALECT)? }
            }
            Some(T::Let) => {
                self.ts.bump();
                let var = self.variable()?;
                self.ts.expect(T::Assign, "PAR302")?;
                QmasmStmtKind::Let { var, value: self.ts.expr(&DIALECT)? }
            }
            Some(T::For) => self.for_loop(ctx)?,
            Some(T::If) => self.if_else(ctx)?,
            _ => return Err(self.ts.unexpected("PAR302", "statement")),
        };
        Ok(QmasmStatement::new(kind, start.to(self.ts.prev_span())))
    }

    fn variable(&mut self) -> Result<String> {
        let tok = self.ts.expect(T::Id, "PAR302")?;
        let name = tok.lexeme.strip_prefix('$').unwrap_or(&tok.lexeme);
        if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
            return Err(Diagnostic::error("PAR302", format!("invalid variable name '{}'", tok.lexeme), tok.span));
        }
        Ok(name.to_string())
    }

    fn symbol(&mut self, ctx: Ctx) -> Result<Symbol> {
        if let Some(next) = self.ts.eat(T::Next) {
            if !ctx.in_macro() {
                return Err(Diagnostic::error("PAR303", "'!next.' is only allowed inside a macro", next.span));
            }
            let sym = self.ts.peek().filter(|t| t.kind == T::Id && t.span.start == next.span.end);
            let Some(sym) = sym else {
                return Err(self.ts.unexpected("PAR302", "symbol directly after '!next.'"));
            };
            self.ts.bump();
            return Ok(Symbol { name: sym.lexeme.clone(), next: true, span: next.span.to(sym.span) });
        }
        let tok = self.ts.expect(T::Id, "PAR302")?;
        Ok(Symbol::new(tok.lexeme.clone(), tok.span))
    }

    /// A second field is a symbol (making a coupling) when it is `!next.` or
    /// an identifier not starting with `$`; `$x` is a variable weight.
    fn at_second_symbol(&self) -> bool {
        match self.ts.peek() {
            Some(t) if t.kind == T::Next => true,
            Some(t) if t.kind == T::Id => !t.lexeme.starts_with('$'),
            _ => false,
        }
    }

    fn symbol_statement(&mut self, ctx: Ctx) -> Result<QmasmStmtKind> {
        let a = self.symbol(ctx)?;
        let pair = |p: &mut Self| {
            p.ts.bump();
            p.symbol(ctx)
        };
        Ok(match self.ts.peek_kind() {
            Some(T::Chain) => QmasmStmtKind::Chain { a, b: pair(self)? },
            Some(T::AntiChain) => QmasmStmtKind::AntiChain { a, b: pair(self)? },
            Some(T::Equiv) => QmasmStmtKind::Equiv { a, b: pair(self)? },
            Some(T::Assign) => {
                self.ts.bump();
                QmasmStmtKind::Pin { sym: a, value: self.ts.expr(&DIALECT)? }
            }
            _ if self.at_second_symbol() => {
                let b = self.symbol(ctx)?;
                QmasmStmtKind::Coupling { a, b, value: self.value()? }
            }
            _ => QmasmStmtKind::Weight { sym: a, value: self.value()? },
        })
    }

    fn value(&mut self) -> Result<Expr> {
        if self.ts.at_end() || self.ts.at(T::Newline) {
            return Err(self.ts.unexpected("PAR302", "value"));
        }
        self.ts.expr(&DIALECT)
    }

    fn macro_def(&mut self, ctx: Ctx) -> Result<QmasmStmtKind> {
        let open = self.ts.bump().expect("caller saw !begin_macro").span;
        if ctx != Ctx::Top {
            return Err(Diagnostic::error("PAR305", "macro definitions are only allowed at top level", open));
        }
        let name = self.ts.expect(T::Id, "PAR302")?.lexeme.clone();
        self.end_of_line()?;
        let body = self.block(Ctx::Macro, &[T::EndMacro])?;
        if self.ts.eat(T::EndMacro).is_none() {
            return Err(Diagnostic::error("PAR301", format!("macro '{name}' is never closed"), open.to(self.ts.eof)));
        }
        let close = self.ts.peek().filter(|t| t.kind == T::Id);
        match close {
            Some(t) if t.lexeme == name => {
                self.ts.bump();
            }
            Some(t) => {
                return Err(Diagnostic::error(
                    "PAR301",
                    format!("'!end_macro {}' does not match '!begin_macro {name}'", t.lexeme),
                    t.span,
                ))
            }
            None => return Err(self.ts.unexpected("PAR301", "macro name")),
        }
        Ok(QmasmStmtKind::MacroDef { name, body })
    }

    fn nested(ctx: Ctx) -> Ctx {
        Ctx::Nested { in_macro: ctx.in_macro() }
    }

    fn for_loop(&mut self, ctx: Ctx) -> Result<QmasmStmtKind> {
        let open = self.ts.bump().expect("caller saw !for").span;
        let var = self.variable()?;
        self.ts.expect(T::Assign, "PAR302")?;
        let lo = self.range_bound()?;
        if self.ts.eat(T::DotDot).is_none() {
            return Err(self.ts.unexpected("PAR304", "'..'"));
        }
        let hi = self.range_bound()?;
        let step = match self.ts.peek() {
            Some(t) if t.kind == T::Id && t.lexeme == "step" => {
                self.ts.bump();
                let s = self.range_bound()?;
                if matches!(s.kind, ExprKind::Int(0)) {
                    return Err(Diagnostic::error("PAR304", "loop step must not be zero", s.span));
                }
                Some(s)
            }
            _ => None,
        };
        let range = RangeSpec { span: lo.span.to(self.ts.prev_span()), lo, hi, step };
        self.end_of_line()?;
        let body = self.block(Self::nested(ctx), &[T::EndFor])?;
        if self.ts.eat(T::EndFor).is_none() {
            return Err(Diagnostic::error("PAR302", "'!for' is never closed with '!end_for'", open.to(self.ts.eof)));
        }
        Ok(QmasmStmtKind::For { var, range, body })
    }

    fn range_bound(&mut self) -> Result<Expr> {
        if matches!(self.ts.peek_kind(), None | Some(T::Newline | T::DotDot)) {
            return Err(self.ts.unexpected("PAR304", "range bound"));
        }
        self.ts.expr(&DIALECT).map_err(|mut d| {
            d.code = "PAR304";
            d
        })
    }

    fn if_else(&mut self, ctx: Ctx) -> Result<QmasmStmtKind> {
        let open = self.ts.bump().expect("caller saw !if").span;
        let cond = self.ts.expr(&DIALECT)?;
        self.end_of_line()?;
        let inner = Self::nested(ctx);
        let then_body = self.block(inner, &[T::Else, T::EndIf])?;
        let mut else_body = None;
        if self.ts.eat(T::Else).is_some() {
            self.end_of_line()?;
            else_body = Some(self.block(inner, &[T::EndIf, T::Else])?);
        }
        if self.ts.eat(T::EndIf).is_none() {
            let span = if self.ts.at(T::Else) { self.ts.span_here() } else { open.to(self.ts.eof) };
            return Err(Diagnostic::error("PAR302", "'!if' is never closed with '!end_if'", span));
        }
        Ok(QmasmStmtKind::If { cond, then_body, else_body })
    }
}
