use serde::{Deserialize, Serialize};
use std::fmt;

/// A location in source text.
///
/// `line` and `col` are 1-based, with columns counted in Unicode scalar
/// values. `off` is the 0-based byte offset.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SourcePosition {
    pub line: u32,
    pub col: u32,
    pub off: usize,
}

impl SourcePosition {
    pub const START: SourcePosition = SourcePosition { line: 1, col: 1, off: 0 };

    /// Position reached after consuming `text` starting from `self`.
    pub fn advanced_by(mut self, text: &str) -> SourcePosition {
        for c in text.chars() {
            self.advance(c);
        }
        self
    }

    pub(crate) fn advance(&mut self, c: char) {
        self.off += c.len_utf8();
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
    }
}

impl Default for SourcePosition {
    fn default() -> Self {
        Self::START
    }
}

impl fmt::Display for SourcePosition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

/// Half-open source range `[start, end)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Span {
    pub start: SourcePosition,
    pub end: SourcePosition,
}

impl Span {
    pub fn new(start: SourcePosition, end: SourcePosition) -> Self {
        debug_assert!(start.off <= end.off);
        Span { start, end }
    }

    /// Zero-width span at `pos`.
    pub fn point(pos: SourcePosition) -> Self {
        Span { start: pos, end: pos }
    }

    /// Smallest span covering both `self` and `other`.
    pub fn to(self, other: Span) -> Span {
        let start = if other.start.off < self.start.off { other.start } else { self.start };
        let end = if other.end.off > self.end.off { other.end } else { self.end };
        Span { start, end }
    }

    pub fn contains(&self, other: &Span) -> bool {
        self.start.off <= other.start.off && other.end.off <= self.end.off
    }

    pub fn len(&self) -> usize {
        self.end.off - self.start.off
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn slice<'a>(&self, source: &'a str) -> &'a str {
        &source[self.start.off..self.end.off]
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.start, self.end)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn advance_counts_scalars_and_bytes() {
        let p = SourcePosition::START.advanced_by("aé\nb");
        assert_eq!(p, SourcePosition { line: 2, col: 2, off: 5 });
    }

    #[test]
    fn union_and_containment() {
        let a = Span::new(SourcePosition::START, SourcePosition::START.advanced_by("ab"));
        let b_start = SourcePosition::START.advanced_by("abc");
        let b = Span::new(b_start, b_start.advanced_by("d"));
        let u = a.to(b);
        assert!(u.contains(&a) && u.contains(&b));
        assert_eq!(u.len(), 4);
        assert_eq!(u.slice("abcde"), "abcd");
    }
}
