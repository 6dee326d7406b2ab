use super::span::{SourcePosition, Span};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Severity {
    Error,
    Warning,
}

impl fmt::Display for Severity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Severity::Error => "error",
            Severity::Warning => "warning",
        })
    }
}

/// A single reported problem, anchored to a span of its originating source.
///
/// `origin` names the file the span points into when that file is not the
/// one the caller handed in (for example a QMASM include).
#[derive(Debug, Clone, PartialEq)]
pub struct Diagnostic {
    pub severity: Severity,
    pub code: &'static str,
    pub message: String,
    pub span: Span,
    pub origin: Option<String>,
}

impl Diagnostic {
    pub fn error(code: &'static str, message: impl Into<String>, span: Span) -> Self {
        Diagnostic { severity: Severity::Error, code, message: message.into(), span, origin: None }
    }

    pub fn warning(code: &'static str, message: impl Into<String>, span: Span) -> Self {
        Diagnostic { severity: Severity::Warning, code, message: message.into(), span, origin: None }
    }

    pub fn with_origin(mut self, origin: impl Into<String>) -> Self {
        if self.origin.is_none() {
            self.origin = Some(origin.into());
        }
        self
    }

    /// Code family: `LEX`, `PAR` or `SEM`.
    pub fn family(&self) -> &str {
        &self.code[..self.code.len().min(3)]
    }

    pub fn is_semantic(&self) -> bool {
        self.family() == "SEM"
    }

    /// Renders a header line followed by the offending source line with a
    /// caret underline. Multi-line spans are underlined to the end of their
    /// first line.
    pub fn render(&self, source: &str) -> String {
        let start = clamp_position(self.span.start, source);
        let mut out = format!(
            "{} {}: {} at {}:{}\n",
            self.severity, self.code, self.message, start.line, start.col
        );
        let line_start = source[..start.off].rfind('\n').map_or(0, |i| i + 1);
        let line_end = source[start.off..].find('\n').map_or(source.len(), |i| start.off + i);
        let line = source[line_start..line_end].trim_end_matches('\r');

        let lead = source[line_start..start.off].chars().count();
        let end_off = self.span.end.off.clamp(start.off, line_start + line.len());
        let width = source[start.off..end_off].chars().count().max(1);

        let gutter = format!("{} | ", start.line);
        out.push_str(&gutter);
        out.push_str(line);
        out.push('\n');
        out.push_str(&" ".repeat(gutter.len()));
        // keep tabs so the caret lines up under tab-indented text
        for c in source[line_start..start.off].chars().take(lead) {
            out.push(if c == '\t' { '\t' } else { ' ' });
        }
        out.push_str(&"^".repeat(width));
        out
    }
}

fn clamp_position(pos: SourcePosition, source: &str) -> SourcePosition {
    if pos.off <= source.len() && source.is_char_boundary(pos.off) {
        pos
    } else {
        SourcePosition::START.advanced_by(source)
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}: {} at {}", self.severity, self.code, self.message, self.span.start)
    }
}

impl std::error::Error for Diagnostic {}

#[cfg(test)]
mod tests {
    use super::*;

    fn span_of(source: &str, from: usize, to: usize) -> Span {
        let start = SourcePosition::START.advanced_by(&source[..from]);
        Span::new(start, start.advanced_by(&source[from..to]))
    }

    #[test]
    fn header_and_caret() {
        let src = "q1 = @";
        let d = Diagnostic::error("LEX001", "unknown character '@'", span_of(src, 5, 6));
        let text = d.render(src);
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), "error LEX001: unknown character '@' at 1:6");
        assert_eq!(lines.next().unwrap(), "1 | q1 = @");
        assert_eq!(lines.next().unwrap(), "         ^");
    }

    #[test]
    fn caret_at_column_five() {
        let src = "q1 =@";
        let d = Diagnostic::error("LEX001", "unknown character", span_of(src, 4, 5));
        let text = d.render(src);
        assert!(text.starts_with("error LEX001: unknown character at 1:5\n"));
        let caret_line = text.lines().nth(2).unwrap();
        assert_eq!(caret_line.find('^').unwrap() - "1 | ".len(), 4);
    }

    #[test]
    fn last_character_without_newline() {
        let src = "abc";
        let d = Diagnostic::warning("PAR999", "end", span_of(src, 2, 3));
        assert!(d.render(src).starts_with("warning PAR999: end at 1:3"));
        let eof = Diagnostic::warning("PAR999", "eof", span_of(src, 3, 3));
        assert!(eof.render(src).ends_with('^'));
    }

    #[test]
    fn multi_line_span_underlines_first_line_only() {
        let src = "ab\ncd\nef";
        let d = Diagnostic::error("PAR001", "x", span_of(src, 1, 7));
        let text = d.render(src);
        assert_eq!(text.lines().count(), 3);
        assert_eq!(text.lines().nth(1).unwrap(), "1 | ab");
        assert_eq!(text.lines().nth(2).unwrap(), "     ^");
    }

    #[test]
    fn second_line_position() {
        let src = "ok\n  bad";
        let d = Diagnostic::error("PAR001", "x", span_of(src, 5, 8));
        let text = d.render(src);
        assert!(text.starts_with("error PAR001: x at 2:3"));
        assert_eq!(text.lines().nth(2).unwrap(), "      ^^^");
    }
}
