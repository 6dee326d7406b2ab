use super::expr::{parse_expr, ExprDialect, ExprLexicon};
use super::{Diagnostic, Expr, Result, Span, Token, TokenKind, TokenStream};

/// Position within a token slice, with the helpers every recursive-descent
/// parser in the crate needs.
pub(crate) struct TokenCursor<'t, K> {
    pub tokens: &'t [Token<K>],
    pub pos: usize,
    pub eof: Span,
}

impl<'t, K: TokenKind> TokenCursor<'t, K> {
    pub fn new(stream: &'t TokenStream<K>) -> Self {
        TokenCursor { tokens: &stream.tokens, pos: 0, eof: Span::point(stream.end) }
    }

    pub fn peek(&self) -> Option<&'t Token<K>> {
        self.tokens.get(self.pos)
    }

    pub fn peek_kind(&self) -> Option<K> {
        self.peek().map(|t| t.kind)
    }

    pub fn nth_kind(&self, n: usize) -> Option<K> {
        self.tokens.get(self.pos + n).map(|t| t.kind)
    }

    pub fn at(&self, kind: K) -> bool {
        self.peek_kind() == Some(kind)
    }

    pub fn at_end(&self) -> bool {
        self.pos >= self.tokens.len()
    }

    pub fn bump(&mut self) -> Option<&'t Token<K>> {
        let t = self.tokens.get(self.pos)?;
        self.pos += 1;
        Some(t)
    }

    pub fn eat(&mut self, kind: K) -> Option<&'t Token<K>> {
        if self.at(kind) {
            self.bump()
        } else {
            None
        }
    }

    pub fn expect(&mut self, kind: K, code: &'static str) -> Result<&'t Token<K>> {
        match self.eat(kind) {
            Some(t) => Ok(t),
            None => Err(self.unexpected(code, kind.name())),
        }
    }

    pub fn span_here(&self) -> Span {
        self.peek().map_or(self.eof, |t| t.span)
    }

    /// Span of the most recently consumed token.
    pub fn prev_span(&self) -> Span {
        match self.pos {
            0 => self.eof,
            n => self.tokens[n - 1].span,
        }
    }

    pub fn unexpected(&self, code: &'static str, expected: &str) -> Diagnostic {
        let found = self.peek().map_or("end of input", |t| t.kind.name());
        Diagnostic::error(code, format!("expected {expected}, found {found}"), self.span_here())
    }
}

impl<K: ExprLexicon> TokenCursor<'_, K> {
    pub fn expr(&mut self, dialect: &ExprDialect) -> Result<Expr> {
        parse_expr(self.tokens, &mut self.pos, dialect, self.eof)
    }
}
