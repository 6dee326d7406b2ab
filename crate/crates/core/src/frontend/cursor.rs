use super::diagnostic::Diagnostic;
use super::span::{SourcePosition, Span};

/// Character cursor with arbitrary lookahead over a source string.
#[derive(Debug, Clone)]
pub struct Cursor<'a> {
    source: &'a str,
    pos: SourcePosition,
}

impl<'a> Cursor<'a> {
    pub fn new(source: &'a str) -> Self {
        Cursor { source, pos: SourcePosition::START }
    }

    /// Validates `bytes` as UTF-8 before building a cursor. Invalid input
    /// yields a single LEX000 diagnostic pointing at the first bad byte.
    pub fn from_bytes(bytes: &'a [u8]) -> Result<Self, Diagnostic> {
        match std::str::from_utf8(bytes) {
            Ok(source) => Ok(Cursor::new(source)),
            Err(e) => {
                let valid = std::str::from_utf8(&bytes[..e.valid_up_to()]).unwrap_or_default();
                let at = SourcePosition::START.advanced_by(valid);
                Err(Diagnostic::error("LEX000", "source is not valid UTF-8", Span::point(at)))
            }
        }
    }

    pub fn source(&self) -> &'a str {
        self.source
    }

    pub fn position(&self) -> SourcePosition {
        self.pos
    }

    pub fn offset(&self) -> usize {
        self.pos.off
    }

    pub fn rest(&self) -> &'a str {
        &self.source[self.pos.off..]
    }

    pub fn is_eof(&self) -> bool {
        self.pos.off >= self.source.len()
    }

    pub fn peek(&self) -> Option<char> {
        self.rest().chars().next()
    }

    /// Character `n` scalars ahead (0 is the current one).
    pub fn peek_nth(&self, n: usize) -> Option<char> {
        self.rest().chars().nth(n)
    }

    pub fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos.advance(c);
        Some(c)
    }

    /// Advances over `len` bytes, which must end on a character boundary.
    pub fn advance_bytes(&mut self, len: usize) {
        let target = self.pos.off + len;
        while self.pos.off < target {
            self.bump();
        }
    }

    pub fn eat_while(&mut self, mut pred: impl FnMut(char) -> bool) -> &'a str {
        let start = self.pos.off;
        while let Some(c) = self.peek() {
            if !pred(c) {
                break;
            }
            self.bump();
        }
        &self.source[start..self.pos.off]
    }

    pub fn span_from(&self, start: SourcePosition) -> Span {
        Span::new(start, self.pos)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_source_is_eof() {
        let c = Cursor::new("");
        assert!(c.is_eof());
        assert_eq!(c.peek(), None);
    }

    #[test]
    fn starts_at_origin() {
        let c = Cursor::new("x q[0];");
        assert_eq!(c.position(), SourcePosition { line: 1, col: 1, off: 0 });
    }

    #[test]
    fn newline_bookkeeping() {
        let mut c = Cursor::new("ab\ncd");
        c.eat_while(|ch| ch != '\n');
        assert_eq!(c.position().col, 3);
        c.bump();
        assert_eq!(c.position(), SourcePosition { line: 2, col: 1, off: 3 });
    }

    #[test]
    fn invalid_utf8_is_lex000() {
        let err = Cursor::from_bytes(b"ab\xffcd").unwrap_err();
        assert_eq!(err.code, "LEX000");
        assert_eq!(err.span.start.off, 2);
    }

    #[test]
    fn lookahead_does_not_move() {
        let c = Cursor::new("é**");
        assert_eq!(c.peek_nth(2), Some('*'));
        assert_eq!(c.offset(), 0);
    }
}
