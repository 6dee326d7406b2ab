use crate::frontend::expr::{BinOp, ExprLexicon, ExprToken};
use crate::frontend::token::{self, is_ident_continue, is_ident_start, NumberShape, StreamBuilder};
use crate::frontend::{Cursor, Diagnostic, LexemeTable, Literal, Result, Span, Token, TokenKind, TokenStream};
use std::sync::OnceLock;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum QasmToken {
    OpenQasm,
    Include,
    Qreg,
    Creg,
    Gate,
    Measure,
    Reset,
    Barrier,
    If,
    Pi,
    Id,
    Int,
    Real,
    Str,
    Semicolon,
    Comma,
    Lbrac,
    Rbrac,
    Lsqbrac,
    Rsqbrac,
    Lbrace,
    Rbrace,
    Arrow,
    EqEq,
    Plus,
    Minus,
    Times,
    Divide,
    Caret,
}

impl TokenKind for QasmToken {
    fn is_literal(&self) -> bool {
        matches!(self, QasmToken::Int | QasmToken::Real | QasmToken::Str)
    }

    fn name(&self) -> &'static str {
        use QasmToken::*;
        match self {
            OpenQasm => "'OPENQASM'",
            Include => "'include'",
            Qreg => "'qreg'",
            Creg => "'creg'",
            Gate => "'gate'",
            Measure => "'measure'",
            Reset => "'reset'",
            Barrier => "'barrier'",
            If => "'if'",
            Pi => "'pi'",
            Id => "identifier",
            Int => "integer",
            Real => "real",
            Str => "string",
            Semicolon => "';'",
            Comma => "','",
            Lbrac => "'('",
            Rbrac => "')'",
            Lsqbrac => "'['",
            Rsqbrac => "']'",
            Lbrace => "'{'",
            Rbrace => "'}'",
            Arrow => "'->'",
            EqEq => "'=='",
            Plus => "'+'",
            Minus => "'-'",
            Times => "'*'",
            Divide => "'/'",
            Caret => "'^'",
        }
    }
}

impl ExprLexicon for QasmToken {
    fn classify(token: &Token<Self>) -> ExprToken<'_> {
        match token.kind {
            QasmToken::Plus => ExprToken::Bin(BinOp::Add),
            QasmToken::Minus => ExprToken::Minus,
            QasmToken::Times => ExprToken::Bin(BinOp::Mul),
            QasmToken::Divide => ExprToken::Bin(BinOp::Div),
            QasmToken::Caret => ExprToken::Bin(BinOp::Pow),
            QasmToken::Lbrac => ExprToken::LParen,
            QasmToken::Rbrac => ExprToken::RParen,
            QasmToken::Comma => ExprToken::Comma,
            QasmToken::Pi => ExprToken::Pi,
            QasmToken::Id => ExprToken::Ident(&token.lexeme),
            QasmToken::Int => token.int().map_or(ExprToken::Other, ExprToken::Int),
            QasmToken::Real => token.real().map_or(ExprToken::Other, ExprToken::Real),
            _ => ExprToken::Other,
        }
    }
}

fn punctuation() -> &'static LexemeTable<QasmToken> {
    static TABLE: OnceLock<LexemeTable<QasmToken>> = OnceLock::new();
    TABLE.get_or_init(|| {
        use QasmToken::*;
        LexemeTable::new(&[
            (";", Semicolon),
            (",", Comma),
            ("(", Lbrac),
            (")", Rbrac),
            ("[", Lsqbrac),
            ("]", Rsqbrac),
            ("{", Lbrace),
            ("}", Rbrace),
            ("->", Arrow),
            ("==", EqEq),
            ("+", Plus),
            ("-", Minus),
            ("*", Times),
            ("/", Divide),
            ("^", Caret),
        ])
    })
}

fn keyword(word: &str) -> Option<QasmToken> {
    use QasmToken::*;
    Some(match word {
        "OPENQASM" => OpenQasm,
        "include" => Include,
        "qreg" => Qreg,
        "creg" => Creg,
        "gate" => Gate,
        "measure" => Measure,
        "reset" => Reset,
        "barrier" => Barrier,
        "if" => If,
        "pi" => Pi,
        _ => return None,
    })
}

/// Tokenizes QASM source. Whitespace and `//` comments are trivia.
pub fn lex_qasm(source: &str) -> Result<TokenStream<QasmToken>> {
    let mut cur = Cursor::new(source);
    let mut out = StreamBuilder::new();
    loop {
        cur.eat_while(char::is_whitespace);
        if cur.rest().starts_with("//") {
            cur.eat_while(|c| c != '\n');
            continue;
        }
        let Some(c) = cur.peek() else { break };
        let start = cur.position();
        if let Some(shape) = token::scan_number(&mut cur) {
            let text = &source[start.off..cur.offset()];
            let value = token::number_literal(text, shape);
            if value.is_none() || cur.peek().is_some_and(|c| is_ident_continue(c) || c == '.') {
                cur.eat_while(|c| is_ident_continue(c) || c == '.');
                return Err(Diagnostic::error("LEX102", format!("malformed number '{}'", &source[start.off..cur.offset()]), cur.span_from(start)));
            }
            let kind = if shape == NumberShape::Int { QasmToken::Int } else { QasmToken::Real };
            out.push(&cur, start, kind, value);
        } else if is_ident_start(c) {
            let word = cur.eat_while(is_ident_continue);
            out.push(&cur, start, keyword(word).unwrap_or(QasmToken::Id), None);
        } else if c == '"' {
            match token::scan_string(&mut cur) {
                Some(s) => out.push(&cur, start, QasmToken::Str, Some(Literal::Text(s))),
                None => return Err(Diagnostic::error("LEX103", "unterminated string", cur.span_from(start))),
            }
        } else if let Some((kind, len)) = punctuation().match_longest(&cur) {
            cur.advance_bytes(len);
            out.push(&cur, start, kind, None);
        } else {
            cur.bump();
            return Err(Diagnostic::error("LEX101", format!("unknown character '{c}'"), Span::new(start, cur.position())));
        }
    }
    Ok(out.finish(&cur))
}

#[cfg(test)]
mod tests {
    use super::*;
    use QasmToken::*;

    fn kinds(src: &str) -> Vec<QasmToken> {
        lex_qasm(src).unwrap().tokens.iter().map(|t| t.kind).collect()
    }

    #[test]
    fn gate_application() {
        let ts = lex_qasm("x q[0];").unwrap();
        assert_eq!(kinds("x q[0];"), vec![Id, Id, Lsqbrac, Int, Rsqbrac, Semicolon]);
        assert_eq!(ts.tokens[0].lexeme, "x");
        assert_eq!(ts.tokens[3].value, Some(Literal::Int(0)));
    }

    #[test]
    fn arrow_is_one_token() {
        let k = kinds("measure q[0] -> c[0];");
        assert_eq!(k.iter().filter(|k| **k == Arrow).count(), 1);
        assert!(!k.contains(&Minus));
    }

    #[test]
    fn unknown_character() {
        let e = lex_qasm("q@").unwrap_err();
        assert_eq!(e.code, "LEX101");
        assert_eq!(e.span.start.off, 1);
    }

    #[test]
    fn malformed_number() {
        assert_eq!(lex_qasm("u1(1.2.3) q[0];").unwrap_err().code, "LEX102");
        assert_eq!(lex_qasm("x q[0a];").unwrap_err().code, "LEX102");
        assert_eq!(lex_qasm("u1(1e) q[0];").unwrap_err().code, "LEX102");
    }

    #[test]
    fn keywords_and_comments() {
        let src = "OPENQASM 2.0; // header\ninclude \"qelib1.inc\";\nif(c==1) x q[0];";
        let ts = lex_qasm(src).unwrap();
        assert_eq!(ts.tokens[0].kind, OpenQasm);
        assert_eq!(ts.tokens[1].kind, Real);
        assert_eq!(ts.tokens[4].value, Some(Literal::Text("qelib1.inc".into())));
        assert!(ts.tokens.iter().any(|t| t.kind == EqEq));
        assert_eq!(ts.trivia[3], " // header\n");
        assert_eq!(ts.reconstruct(), src);
    }

    #[test]
    fn literal_payload_iff_literal_kind() {
        let ts = lex_qasm("u3(0.1, 2, pi) q[0]; include \"a\";").unwrap();
        for t in &ts.tokens {
            assert_eq!(t.kind.is_literal(), t.value.is_some(), "{t:?}");
        }
    }
}
