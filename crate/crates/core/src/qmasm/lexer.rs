use crate::frontend::expr::{BinOp, ExprLexicon, ExprToken};
use crate::frontend::token::{self, is_ident_continue, NumberShape, StreamBuilder};
use crate::frontend::{Cursor, Diagnostic, LexemeTable, Literal, Result, Span, Token, TokenKind, TokenStream};
use std::sync::OnceLock;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum QmasmToken {
    Id,
    Int,
    Real,
    Str,
    Bool,
    Newline,
    BeginMacro,
    EndMacro,
    UseMacro,
    Include,
    Assert,
    For,
    EndFor,
    If,
    Else,
    EndIf,
    Let,
    /// `!next.`, immediately followed by the symbol it qualifies.
    Next,
    Chain,
    AntiChain,
    Equiv,
    Assign,
    DotDot,
    Lt,
    Le,
    Gt,
    Ge,
    And,
    Or,
    Tilde,
    Plus,
    Minus,
    Times,
    Divide,
    Percent,
    Power,
    Lbrac,
    Rbrac,
    Comma,
}

impl TokenKind for QmasmToken {
    fn is_literal(&self) -> bool {
        use QmasmToken::*;
        matches!(self, Int | Real | Str | Bool)
    }

    fn name(&self) -> &'static str {
        use QmasmToken::*;
        match self {
            Id => "symbol",
            Int => "integer",
            Real => "real",
            Str => "string",
            Bool => "boolean",
            Newline => "newline",
            BeginMacro => "'!begin_macro'",
            EndMacro => "'!end_macro'",
            UseMacro => "'!use_macro'",
            Include => "'!include'",
            Assert => "'!assert'",
            For => "'!for'",
            EndFor => "'!end_for'",
            If => "'!if'",
            Else => "'!else'",
            EndIf => "'!end_if'",
            Let => "'!let'",
            Next => "'!next.'",
            Chain => "'='",
            AntiChain => "'/='",
            Equiv => "'<->'",
            Assign => "':='",
            DotDot => "'..'",
            Lt => "'<'",
            Le => "'<='",
            Gt => "'>'",
            Ge => "'>='",
            And => "'&&'",
            Or => "'||'",
            Tilde => "'~'",
            Plus => "'+'",
            Minus => "'-'",
            Times => "'*'",
            Divide => "'/'",
            Percent => "'%'",
            Power => "'**'",
            Lbrac => "'('",
            Rbrac => "')'",
            Comma => "','",
        }
    }
}

impl ExprLexicon for QmasmToken {
    fn classify(token: &Token<Self>) -> ExprToken<'_> {
        use QmasmToken as Q;
        match token.kind {
            Q::Chain => ExprToken::Bin(BinOp::Eq),
            Q::AntiChain => ExprToken::Bin(BinOp::Ne),
            Q::Lt => ExprToken::Bin(BinOp::Lt),
            Q::Le => ExprToken::Bin(BinOp::Le),
            Q::Gt => ExprToken::Bin(BinOp::Gt),
            Q::Ge => ExprToken::Bin(BinOp::Ge),
            Q::And => ExprToken::Bin(BinOp::And),
            Q::Or => ExprToken::Bin(BinOp::Or),
            Q::Plus => ExprToken::Bin(BinOp::Add),
            Q::Times => ExprToken::Bin(BinOp::Mul),
            Q::Divide => ExprToken::Bin(BinOp::Div),
            Q::Percent => ExprToken::Bin(BinOp::Mod),
            Q::Power => ExprToken::Bin(BinOp::Pow),
            Q::Minus => ExprToken::Minus,
            Q::Tilde => ExprToken::Not,
            Q::Lbrac => ExprToken::LParen,
            Q::Rbrac => ExprToken::RParen,
            Q::Comma => ExprToken::Comma,
            Q::Id => ExprToken::Ident(token.lexeme.strip_prefix('$').unwrap_or(&token.lexeme)),
            Q::Int => token.int().map_or(ExprToken::Other, ExprToken::Int),
            Q::Real => token.real().map_or(ExprToken::Other, ExprToken::Real),
            Q::Bool => match token.value {
                Some(Literal::Bool(b)) => ExprToken::Bool(b),
                _ => ExprToken::Other,
            },
            _ => ExprToken::Other,
        }
    }
}

fn punctuation() -> &'static LexemeTable<QmasmToken> {
    static TABLE: OnceLock<LexemeTable<QmasmToken>> = OnceLock::new();
    TABLE.get_or_init(|| {
        use QmasmToken::*;
        LexemeTable::new(&[
            ("=", Chain),
            ("/=", AntiChain),
            ("<->", Equiv),
            (":=", Assign),
            ("..", DotDot),
            ("<", Lt),
            ("<=", Le),
            (">", Gt),
            (">=", Ge),
            ("&&", And),
            ("||", Or),
            ("~", Tilde),
            ("+", Plus),
            ("-", Minus),
            ("*", Times),
            ("**", Power),
            ("/", Divide),
            ("%", Percent),
            ("(", Lbrac),
            (")", Rbrac),
            (",", Comma),
        ])
    })
}

fn directive(word: &str) -> Option<QmasmToken> {
    use QmasmToken::*;
    Some(match word {
        "begin_macro" => BeginMacro,
        "end_macro" => EndMacro,
        "use_macro" => UseMacro,
        "include" => Include,
        "assert" => Assert,
        "for" => For,
        "end_for" => EndFor,
        "if" => If,
        "else" => Else,
        "end_if" => EndIf,
        "let" => Let,
        "next" => Next,
        _ => return None,
    })
}

fn is_symbol_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_' || c == '$'
}

fn is_symbol_char(c: char) -> bool {
    is_ident_continue(c) || c == '$'
}

fn value_ending(kind: QmasmToken) -> bool {
    use QmasmToken::*;
    matches!(kind, Id | Int | Real | Str | Bool | Rbrac)
}

/// Tokenizes QMASM source.
///
/// Newlines are tokens; spaces, tabs and `#` comments are trivia. Symbols
/// may contain `.` scope separators, `$var` interpolations and bracketed
/// indices such as `q[3]` or `r[3:0]`. A `-` directly followed by a digit
/// joins the number when it cannot be a binary minus: at the start of a
/// line, after an operator, or after whitespace. So `a b -1` is three fields
/// while `3-1` is a subtraction.
pub fn lex_qmasm(source: &str) -> Result<TokenStream<QmasmToken>> {
    let mut cur = Cursor::new(source);
    let mut out = StreamBuilder::new();
    loop {
        cur.eat_while(|c| c != '\n' && c.is_whitespace());
        if cur.peek() == Some('#') {
            cur.eat_while(|c| c != '\n');
            continue;
        }
        let Some(c) = cur.peek() else { break };
        let start = cur.position();
        let starts_number = |n: usize| {
            cur.peek_nth(n).is_some_and(|d| d.is_ascii_digit())
                || (cur.peek_nth(n) == Some('.') && cur.peek_nth(n + 1).is_some_and(|d| d.is_ascii_digit()))
        };
        let signed = c == '-'
            && starts_number(1)
            && (out.last().is_none_or(|t| !value_ending(t.kind)) || !out.gap_is_empty(&cur));

        if c == '\n' {
            cur.bump();
            out.push(&cur, start, QmasmToken::Newline, None);
        } else if signed || starts_number(0) {
            if signed {
                cur.bump();
            }
            let shape = token::scan_number(&mut cur).expect("checked digit ahead");
            let text = &source[start.off..cur.offset()];
            let value = token::number_literal(text, shape);
            let bad_tail = cur.peek().is_some_and(is_symbol_char) || (cur.peek() == Some('.') && cur.peek_nth(1) != Some('.'));
            if value.is_none() || bad_tail {
                cur.eat_while(|c| is_symbol_char(c) || c == '.');
                return Err(Diagnostic::error("LEX303", format!("malformed number '{}'", &source[start.off..cur.offset()]), cur.span_from(start)));
            }
            let kind = if shape == NumberShape::Int { QmasmToken::Int } else { QmasmToken::Real };
            out.push(&cur, start, kind, value);
        } else if is_symbol_start(c) {
            scan_symbol(&mut cur)?;
            let word = &source[start.off..cur.offset()];
            match word {
                "true" | "false" => out.push(&cur, start, QmasmToken::Bool, Some(Literal::Bool(word == "true"))),
                _ => out.push(&cur, start, QmasmToken::Id, None),
            }
        } else if c == '!' {
            cur.bump();
            let word = cur.eat_while(is_ident_continue);
            let Some(kind) = directive(word) else {
                return Err(Diagnostic::error("LEX302", format!("unknown directive '!{word}'"), cur.span_from(start)));
            };
            if kind == QmasmToken::Next {
                if cur.peek() != Some('.') {
                    return Err(Diagnostic::error("LEX302", "'!next' must be followed by '.' and a symbol", cur.span_from(start)));
                }
                cur.bump();
            }
            out.push(&cur, start, kind, None);
        } else if c == '"' {
            match token::scan_string(&mut cur) {
                Some(s) => out.push(&cur, start, QmasmToken::Str, Some(Literal::Text(s))),
                None => return Err(Diagnostic::error("LEX304", "unterminated string", cur.span_from(start))),
            }
        } else if let Some((kind, len)) = punctuation().match_longest(&cur) {
            cur.advance_bytes(len);
            out.push(&cur, start, kind, None);
        } else {
            cur.bump();
            return Err(Diagnostic::error("LEX301", format!("unknown character '{c}'"), Span::new(start, cur.position())));
        }
    }
    Ok(out.finish(&cur))
}

fn scan_symbol(cur: &mut Cursor<'_>) -> Result<()> {
    loop {
        match cur.peek() {
            Some(c) if is_symbol_char(c) => {
                cur.bump();
            }
            Some('.') if cur.peek_nth(1).is_some_and(is_symbol_start) => {
                cur.bump();
            }
            Some('[') => {
                let open = cur.position();
                cur.bump();
                cur.eat_while(|c| is_symbol_char(c) || c == ':');
                if cur.peek() != Some(']') {
                    let at = cur.position();
                    return Err(Diagnostic::error("LEX301", "unterminated symbol index", Span::new(open, at)));
                }
                cur.bump();
            }
            _ => return Ok(()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use QmasmToken::*;

    fn kinds(src: &str) -> Vec<QmasmToken> {
        lex_qmasm(src).unwrap().tokens.iter().map(|t| t.kind).collect()
    }

    #[test]
    fn signed_literal_in_value_position() {
        let ts = lex_qmasm("q1 q2 -1.0").unwrap();
        assert_eq!(kinds("q1 q2 -1.0"), vec![Id, Id, Real]);
        assert_eq!(ts.tokens[2].value, Some(Literal::Real(-1.0)));
        assert_eq!(kinds("x := 3-1"), vec![Id, Assign, Int, Minus, Int]);
        assert_eq!(kinds("x := 3 - 1"), vec![Id, Assign, Int, Minus, Int]);
        assert_eq!(kinds("x := (-1)"), vec![Id, Assign, Lbrac, Int, Rbrac]);
    }

    #[test]
    fn relations_use_lookahead() {
        assert_eq!(kinds("a <-> b"), vec![Id, Equiv, Id]);
        assert_eq!(kinds("a /= b"), vec![Id, AntiChain, Id]);
        assert_eq!(kinds("a := true"), vec![Id, Assign, Bool]);
        assert_eq!(kinds("a <= b"), vec![Id, Le, Id]);
        assert_eq!(kinds("1 .. 3"), vec![Int, DotDot, Int]);
        assert_eq!(kinds("1..3"), vec![Int, DotDot, Int]);
    }

    #[test]
    fn directives() {
        assert_eq!(kinds("!use_macro gate g1"), vec![UseMacro, Id, Id]);
        let ts = lex_qmasm("!next.in out 1").unwrap();
        assert_eq!(ts.tokens[0].kind, Next);
        assert_eq!(ts.tokens[0].lexeme, "!next.");
        assert_eq!(ts.tokens[1].lexeme, "in");
        assert_eq!(lex_qmasm("!bogus").unwrap_err().code, "LEX302");
        assert_eq!(lex_qmasm("!next x").unwrap_err().code, "LEX302");
    }

    #[test]
    fn symbols() {
        let ts = lex_qmasm("inst.a q$i r[3:0] $x").unwrap();
        let lex: Vec<_> = ts.tokens.iter().map(|t| t.lexeme.as_str()).collect();
        assert_eq!(lex, vec!["inst.a", "q$i", "r[3:0]", "$x"]);
    }

    #[test]
    fn errors() {
        assert_eq!(lex_qmasm("a @").unwrap_err().code, "LEX301");
        assert_eq!(lex_qmasm("a 1x").unwrap_err().code, "LEX303");
        assert_eq!(lex_qmasm("!include \"x").unwrap_err().code, "LEX304");
        assert_eq!(lex_qmasm("q[1 2").unwrap_err().code, "LEX301");
    }

    #[test]
    fn newlines_and_comments() {
        let src = "a 1 # weight\n\nb 2\n";
        let ts = lex_qmasm(src).unwrap();
        assert_eq!(kinds(src), vec![Id, Int, Newline, Newline, Id, Int, Newline]);
        assert_eq!(ts.reconstruct(), src);
    }
}
