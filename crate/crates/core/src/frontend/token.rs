use super::cursor::Cursor;
use super::span::{SourcePosition, Span};
use std::fmt::Debug;

/// A language-scoped closed set of token kinds.
pub trait TokenKind: Copy + Eq + Debug {
    /// Literal kinds are exactly those that carry a [`Literal`] payload.
    fn is_literal(&self) -> bool;
    fn name(&self) -> &'static str;
}

#[derive(Debug, Clone, PartialEq)]
pub enum Literal {
    Int(i64),
    Real(f64),
    Bool(bool),
    Text(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Token<K> {
    pub kind: K,
    pub lexeme: String,
    pub span: Span,
    pub value: Option<Literal>,
}

impl<K: TokenKind> Token<K> {
    pub fn int(&self) -> Option<i64> {
        match self.value {
            Some(Literal::Int(v)) => Some(v),
            _ => None,
        }
    }

    pub fn real(&self) -> Option<f64> {
        match self.value {
            Some(Literal::Real(v)) => Some(v),
            _ => None,
        }
    }

    pub fn text(&self) -> Option<&str> {
        match &self.value {
            Some(Literal::Text(s)) => Some(s),
            _ => None,
        }
    }
}

/// Lexer output: tokens plus the trivia (whitespace, comments) found in each
/// gap. `trivia[i]` precedes `tokens[i]`; the final entry trails the last
/// token, so `trivia.len() == tokens.len() + 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct TokenStream<K> {
    pub tokens: Vec<Token<K>>,
    pub trivia: Vec<String>,
    pub end: SourcePosition,
}

impl<K> TokenStream<K> {
    /// Interleaves trivia and lexemes; equals the lexed source byte for byte.
    pub fn reconstruct(&self) -> String {
        let mut out = String::new();
        for (gap, tok) in self.trivia.iter().zip(&self.tokens) {
            out.push_str(gap);
            out.push_str(&tok.lexeme);
        }
        if let Some(last) = self.trivia.last() {
            out.push_str(last);
        }
        out
    }

    /// Span of the whole source.
    pub fn full_span(&self) -> Span {
        Span::new(SourcePosition::START, self.end)
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }
}

/// Accumulates tokens while recording the skipped text between them.
pub(crate) struct StreamBuilder<K> {
    tokens: Vec<Token<K>>,
    trivia: Vec<String>,
    gap_start: usize,
}

impl<K: TokenKind> StreamBuilder<K> {
    pub fn new() -> Self {
        StreamBuilder { tokens: Vec::new(), trivia: Vec::new(), gap_start: 0 }
    }

    /// Records a token spanning `start..cursor`.
    pub fn push(&mut self, cursor: &Cursor<'_>, start: SourcePosition, kind: K, value: Option<Literal>) {
        debug_assert_eq!(kind.is_literal(), value.is_some(), "{kind:?}");
        let src = cursor.source();
        self.trivia.push(src[self.gap_start..start.off].to_string());
        self.tokens.push(Token {
            kind,
            lexeme: src[start.off..cursor.offset()].to_string(),
            span: cursor.span_from(start),
            value,
        });
        self.gap_start = cursor.offset();
    }

    pub fn last(&self) -> Option<&Token<K>> {
        self.tokens.last()
    }

    /// True when nothing but the current gap separates the cursor from the
    /// previous token.
    pub fn gap_is_empty(&self, cursor: &Cursor<'_>) -> bool {
        self.gap_start == cursor.offset()
    }

    pub fn finish(mut self, cursor: &Cursor<'_>) -> TokenStream<K> {
        self.trivia.push(cursor.source()[self.gap_start..].to_string());
        TokenStream { tokens: self.tokens, trivia: self.trivia, end: SourcePosition::START.advanced_by(cursor.source()) }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum NumberShape {
    Int,
    Real,
}

/// Scans a numeric literal at the cursor: a digit run, optionally followed by
/// a fraction (`.` not followed by another `.`) and an exponent
/// `e[+-]?digits`. A leading `.digits` form is also accepted. Returns `None`
/// without moving when no number starts here.
pub(crate) fn scan_number(cursor: &mut Cursor<'_>) -> Option<NumberShape> {
    let first = cursor.peek()?;
    let leading_dot = first == '.' && cursor.peek_nth(1).is_some_and(|c| c.is_ascii_digit());
    if !first.is_ascii_digit() && !leading_dot {
        return None;
    }
    let mut shape = NumberShape::Int;
    cursor.eat_while(|c| c.is_ascii_digit());
    if cursor.peek() == Some('.') && cursor.peek_nth(1) != Some('.') {
        cursor.bump();
        cursor.eat_while(|c| c.is_ascii_digit());
        shape = NumberShape::Real;
    }
    if matches!(cursor.peek(), Some('e' | 'E')) {
        let digit_at = if matches!(cursor.peek_nth(1), Some('+' | '-')) { 2 } else { 1 };
        if cursor.peek_nth(digit_at).is_some_and(|c| c.is_ascii_digit()) {
            for _ in 0..digit_at {
                cursor.bump();
            }
            cursor.eat_while(|c| c.is_ascii_digit());
            shape = NumberShape::Real;
        }
    }
    Some(shape)
}

/// Converts scanned number text into a literal. Integers must fit in `i64`
/// and reals must be finite.
pub(crate) fn number_literal(text: &str, shape: NumberShape) -> Option<Literal> {
    match shape {
        NumberShape::Int => text.parse::<i64>().ok().map(Literal::Int),
        NumberShape::Real => text.parse::<f64>().ok().filter(|v| v.is_finite()).map(Literal::Real),
    }
}

pub(crate) fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

pub(crate) fn is_ident_continue(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

/// Scans a double-quoted string with no escapes, stopping at the closing
/// quote. Returns the contents, or `None` if a newline or end of input comes
/// first (the cursor is then left where scanning stopped).
pub(crate) fn scan_string(cursor: &mut Cursor<'_>) -> Option<String> {
    debug_assert_eq!(cursor.peek(), Some('"'));
    cursor.bump();
    let body = cursor.eat_while(|c| c != '"' && c != '\n').to_string();
    if cursor.peek() == Some('"') {
        cursor.bump();
        Some(body)
    } else {
        None
    }
}
