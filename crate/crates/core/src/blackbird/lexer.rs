use crate::frontend::expr::{BinOp, ExprLexicon, ExprToken};
use crate::frontend::token::{self, is_ident_continue, is_ident_start, NumberShape, StreamBuilder};
use crate::frontend::{Cursor, Diagnostic, LexemeTable, Literal, Result, Span, Token, TokenKind, TokenStream};
use std::sync::OnceLock;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BlackbirdToken {
    Id,
    Int,
    Real,
    Imag,
    Str,
    Bool,
    TypeInt,
    TypeFloat,
    TypeComplex,
    TypeBool,
    TypeStr,
    TypeArray,
    Newline,
    Lbrac,
    Rbrac,
    Lsqbrac,
    Rsqbrac,
    Comma,
    Pipe,
    Equals,
    Plus,
    Minus,
    Times,
    Divide,
    Power,
}

impl TokenKind for BlackbirdToken {
    fn is_literal(&self) -> bool {
        use BlackbirdToken::*;
        matches!(self, Int | Real | Imag | Str | Bool)
    }

    fn name(&self) -> &'static str {
        use BlackbirdToken::*;
        match self {
            Id => "identifier",
            Int => "integer",
            Real => "real",
            Imag => "imaginary literal",
            Str => "string",
            Bool => "boolean",
            TypeInt => "'int'",
            TypeFloat => "'float'",
            TypeComplex => "'complex'",
            TypeBool => "'bool'",
            TypeStr => "'str'",
            TypeArray => "'array'",
            Newline => "newline",
            Lbrac => "'('",
            Rbrac => "')'",
            Lsqbrac => "'['",
            Rsqbrac => "']'",
            Comma => "','",
            Pipe => "'|'",
            Equals => "'='",
            Plus => "'+'",
            Minus => "'-'",
            Times => "'*'",
            Divide => "'/'",
            Power => "'**'",
        }
    }
}

impl ExprLexicon for BlackbirdToken {
    fn classify(token: &Token<Self>) -> ExprToken<'_> {
        use BlackbirdToken as B;
        match token.kind {
            B::Plus => ExprToken::Bin(BinOp::Add),
            B::Minus => ExprToken::Minus,
            B::Times => ExprToken::Bin(BinOp::Mul),
            B::Divide => ExprToken::Bin(BinOp::Div),
            B::Power => ExprToken::Bin(BinOp::Pow),
            B::Lbrac => ExprToken::LParen,
            B::Rbrac => ExprToken::RParen,
            B::Comma => ExprToken::Comma,
            B::Id if token.lexeme == "pi" => ExprToken::Pi,
            B::Id => ExprToken::Ident(&token.lexeme),
            B::Int => token.int().map_or(ExprToken::Other, ExprToken::Int),
            B::Real => token.real().map_or(ExprToken::Other, ExprToken::Real),
            B::Imag => token.real().map_or(ExprToken::Other, ExprToken::Imag),
            B::Str => token.text().map_or(ExprToken::Other, ExprToken::Str),
            B::Bool => match token.value {
                Some(Literal::Bool(b)) => ExprToken::Bool(b),
                _ => ExprToken::Other,
            },
            _ => ExprToken::Other,
        }
    }
}

fn punctuation() -> &'static LexemeTable<BlackbirdToken> {
    static TABLE: OnceLock<LexemeTable<BlackbirdToken>> = OnceLock::new();
    TABLE.get_or_init(|| {
        use BlackbirdToken::*;
        LexemeTable::new(&[
            ("(", Lbrac),
            (")", Rbrac),
            ("[", Lsqbrac),
            ("]", Rsqbrac),
            (",", Comma),
            ("|", Pipe),
            ("=", Equals),
            ("+", Plus),
            ("-", Minus),
            ("*", Times),
            ("**", Power),
            ("/", Divide),
        ])
    })
}

fn keyword(word: &str) -> Option<(BlackbirdToken, Option<Literal>)> {
    use BlackbirdToken::*;
    Some(match word {
        "int" => (TypeInt, None),
        "float" => (TypeFloat, None),
        "complex" => (TypeComplex, None),
        "bool" => (TypeBool, None),
        "str" => (TypeStr, None),
        "array" => (TypeArray, None),
        "True" | "true" => (Bool, Some(Literal::Bool(true))),
        "False" | "false" => (Bool, Some(Literal::Bool(false))),
        _ => return None,
    })
}

/// Tokenizes Blackbird source. Newlines are tokens; spaces, tabs, carriage
/// returns and `#` comments are trivia. `**` is a single Power token.
pub fn lex_blackbird(source: &str) -> Result<TokenStream<BlackbirdToken>> {
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
        if c == '\n' {
            cur.bump();
            out.push(&cur, start, BlackbirdToken::Newline, None);
        } else if let Some(shape) = token::scan_number(&mut cur) {
            let text = &source[start.off..cur.offset()];
            let value = token::number_literal(text, shape);
            let imaginary = cur.peek() == Some('j') && !cur.peek_nth(1).is_some_and(is_ident_continue);
            if imaginary {
                cur.bump();
            }
            if value.is_none() || cur.peek().is_some_and(|c| is_ident_continue(c) || c == '.') {
                cur.eat_while(|c| is_ident_continue(c) || c == '.');
                return Err(Diagnostic::error("LEX202", format!("malformed number '{}'", &source[start.off..cur.offset()]), cur.span_from(start)));
            }
            let (kind, value) = match (imaginary, shape, value) {
                (true, _, Some(Literal::Int(v))) => (BlackbirdToken::Imag, Some(Literal::Real(v as f64))),
                (true, _, v) => (BlackbirdToken::Imag, v),
                (false, NumberShape::Int, v) => (BlackbirdToken::Int, v),
                (false, NumberShape::Real, v) => (BlackbirdToken::Real, v),
            };
            out.push(&cur, start, kind, value);
        } else if is_ident_start(c) {
            let word = cur.eat_while(is_ident_continue);
            let (kind, value) = keyword(word).unwrap_or((BlackbirdToken::Id, None));
            out.push(&cur, start, kind, value);
        } else if c == '"' {
            match token::scan_string(&mut cur) {
                Some(s) => out.push(&cur, start, BlackbirdToken::Str, Some(Literal::Text(s))),
                None => return Err(Diagnostic::error("LEX203", "unterminated string", cur.span_from(start))),
            }
        } else if let Some((kind, len)) = punctuation().match_longest(&cur) {
            cur.advance_bytes(len);
            out.push(&cur, start, kind, None);
        } else {
            cur.bump();
            return Err(Diagnostic::error("LEX201", format!("unknown character '{c}'"), Span::new(start, cur.position())));
        }
    }
    Ok(out.finish(&cur))
}

#[cfg(test)]
mod tests {
    use super::*;
    use BlackbirdToken::*;

    fn kinds(src: &str) -> Vec<BlackbirdToken> {
        lex_blackbird(src).unwrap().tokens.iter().map(|t| t.kind).collect()
    }

    #[test]
    fn power_is_one_token() {
        let ts = lex_blackbird("2**3").unwrap();
        assert_eq!(kinds("2**3"), vec![Int, Power, Int]);
        assert_eq!(ts.tokens[1].lexeme, "**");
        assert_eq!(kinds("a*b").len(), 3);
        assert_eq!(kinds("a***b"), vec![Id, Power, Times, Id]);
    }

    #[test]
    fn statement_tokens() {
        assert_eq!(kinds("Sgate(0.5) | 0"), vec![Id, Lbrac, Real, Rbrac, Pipe, Int]);
    }

    #[test]
    fn comment_is_trivia() {
        let ts = lex_blackbird("# comment\n").unwrap();
        assert_eq!(ts.tokens.iter().map(|t| t.kind).collect::<Vec<_>>(), vec![Newline]);
        assert_eq!(ts.trivia[0], "# comment");
        assert_eq!(ts.reconstruct(), "# comment\n");
    }

    #[test]
    fn complex_literals() {
        let ts = lex_blackbird("1+2j 0.5j").unwrap();
        assert_eq!(ts.tokens.iter().map(|t| t.kind).collect::<Vec<_>>(), vec![Int, Plus, Imag, Imag]);
        assert_eq!(ts.tokens[2].value, Some(Literal::Real(2.0)));
        assert_eq!(lex_blackbird("2jx").unwrap_err().code, "LEX202");
    }

    #[test]
    fn errors() {
        assert_eq!(lex_blackbird("Sgate(1) @ 0").unwrap_err().code, "LEX201");
        assert_eq!(lex_blackbird("x = 1.5.5").unwrap_err().code, "LEX202");
        assert_eq!(lex_blackbird("str s = \"abc").unwrap_err().code, "LEX203");
    }

    #[test]
    fn keywords() {
        assert_eq!(kinds("float x = True"), vec![TypeFloat, Id, Equals, Bool]);
    }
}
