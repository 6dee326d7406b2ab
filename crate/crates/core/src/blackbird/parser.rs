use super::ast::*;
use super::lexer::BlackbirdToken as B;
use super::ops::{self, ModeCount};
use crate::frontend::expr::ExprDialect;
use crate::frontend::parse::TokenCursor;
use crate::frontend::{Diagnostic, Expr, ExprKind, Result, Span, TokenStream};
use std::collections::HashMap;

pub(crate) const DIALECT: ExprDialect = ExprDialect {
    pow_glyph: "**",
    var_prefix: "",
    calls: true,
    unbalanced_code: "PAR201",
    dangling_code: "PAR202",
    unexpected_code: "PAR209",
};

/// Parses a complete expression occupying the whole token stream (a
/// trailing newline is allowed).
pub fn parse_expression(stream: &TokenStream<B>) -> Result<Expr> {
    let mut ts = TokenCursor::new(stream);
    let e = ts.expr(&DIALECT)?;
    ts.eat(B::Newline);
    match ts.peek_kind() {
        None => Ok(e),
        Some(B::Rbrac) => Err(Diagnostic::error("PAR201", "unbalanced parenthesis: unexpected ')'", ts.span_here())),
        Some(_) => Err(ts.unexpected("PAR209", "end of expression")),
    }
}

/// Builds a program from Blackbird tokens, validating each statement's
/// operator name, argument count and modes.
pub fn parse_blackbird(stream: &TokenStream<B>) -> Result<BlackbirdProgram> {
    let mut p = Parser { ts: TokenCursor::new(stream), arrays: HashMap::new() };
    let mut prog = BlackbirdProgram {
        name: None,
        version: None,
        target: None,
        declarations: Vec::new(),
        statements: Vec::new(),
        span: stream.full_span(),
    };
    while let Some(tok) = p.ts.peek() {
        match tok.kind {
            B::Newline => {
                p.ts.bump();
                continue;
            }
            B::Id if is_header(&tok.lexeme) && !matches!(p.ts.nth_kind(1), Some(B::Lbrac | B::Pipe)) => {
                if !prog.declarations.is_empty() || !prog.statements.is_empty() {
                    return Err(Diagnostic::error("PAR206", "header lines must precede declarations and statements", tok.span));
                }
                p.header(&mut prog)?;
            }
            B::TypeInt | B::TypeFloat | B::TypeComplex | B::TypeBool | B::TypeStr | B::TypeArray => {
                let d = p.declaration()?;
                prog.declarations.push(d);
            }
            B::Id => {
                let s = p.statement()?;
                prog.statements.push(s);
            }
            _ => return Err(p.ts.unexpected("PAR209", "header, declaration or statement")),
        }
        p.end_of_line()?;
    }
    Ok(prog)
}

fn is_header(word: &str) -> bool {
    matches!(word, "name" | "version" | "target")
}

struct Parser<'t> {
    ts: TokenCursor<'t, B>,
    /// Declared arrays by name, with their row counts.
    arrays: HashMap<String, usize>,
}

impl Parser<'_> {
    fn end_of_line(&mut self) -> Result<()> {
        if self.ts.at_end() || self.ts.eat(B::Newline).is_some() {
            Ok(())
        } else {
            Err(self.ts.unexpected("PAR209", "end of line"))
        }
    }

    fn header(&mut self, prog: &mut BlackbirdProgram) -> Result<()> {
        let kw = self.ts.bump().expect("caller saw header");
        let malformed = |what: &str, span: Span| Diagnostic::error("PAR206", format!("malformed header: {what}"), span);
        match kw.lexeme.as_str() {
            "name" => {
                let Some(id) = self.ts.eat(B::Id) else {
                    return Err(malformed("expected program name", self.ts.span_here()));
                };
                if prog.name.is_some() {
                    return Err(malformed("duplicate 'name'", kw.span));
                }
                prog.name = Some((id.lexeme.clone(), kw.span.to(id.span)));
            }
            "version" => {
                let num = self.ts.peek().filter(|t| matches!(t.kind, B::Real | B::Int));
                let parsed = num.and_then(|t| match t.lexeme.split_once('.') {
                    Some((a, b)) => a.parse::<u32>().ok().zip(b.parse::<u32>().ok()),
                    None => t.lexeme.parse::<u32>().ok().map(|a| (a, 0)),
                });
                let (Some(num), Some((major, minor))) = (num, parsed) else {
                    return Err(malformed("expected version number such as 1.0", self.ts.span_here()));
                };
                self.ts.bump();
                if prog.version.is_some() {
                    return Err(malformed("duplicate 'version'", kw.span));
                }
                prog.version = Some((major, minor, kw.span.to(num.span)));
            }
            _ => {
                let Some(id) = self.ts.eat(B::Id) else {
                    return Err(malformed("expected target name", self.ts.span_here()));
                };
                let mut options = Vec::new();
                if self.ts.eat(B::Lbrac).is_some() {
                    while !self.ts.at(B::Rbrac) {
                        let Some(key) = self.ts.eat(B::Id) else {
                            return Err(malformed("expected option name", self.ts.span_here()));
                        };
                        if self.ts.eat(B::Equals).is_none() {
                            return Err(malformed("expected '=' after option name", self.ts.span_here()));
                        }
                        let mut value = self.ts.expr(&DIALECT)?;
                        value.span = key.span.to(value.span);
                        options.push((key.lexeme.clone(), value));
                        if self.ts.eat(B::Comma).is_none() {
                            break;
                        }
                    }
                    if self.ts.eat(B::Rbrac).is_none() {
                        return Err(malformed("expected ')' closing target options", self.ts.span_here()));
                    }
                }
                if prog.target.is_some() {
                    return Err(malformed("duplicate 'target'", kw.span));
                }
                prog.target = Some(Target { name: id.lexeme.clone(), options, span: kw.span.to(self.ts.prev_span()) });
            }
        }
        Ok(())
    }

    fn declaration(&mut self) -> Result<TypedDecl> {
        let kw = self.ts.bump().expect("caller saw type keyword");
        let decl_type = match kw.kind {
            B::TypeInt => DeclType::Int,
            B::TypeFloat => DeclType::Float,
            B::TypeComplex => DeclType::Complex,
            B::TypeBool => DeclType::Bool,
            B::TypeStr => DeclType::Str,
            _ => DeclType::Array,
        };
        let name = self.ts.expect(B::Id, "PAR209")?.lexeme.clone();
        self.ts.expect(B::Equals, "PAR209")?;
        let value = if self.ts.at(B::Lsqbrac) {
            let arr = self.array_literal()?;
            if decl_type != DeclType::Array {
                return Err(Diagnostic::error("PAR207", "array literal requires the 'array' type", arr.span));
            }
            self.arrays.insert(name.clone(), arr.rows);
            DeclValue::Array(arr)
        } else {
            let e = self.ts.expr(&DIALECT)?;
            if decl_type == DeclType::Array {
                return Err(Diagnostic::error("PAR207", "'array' declarations need a bracketed array literal", e.span));
            }
            DeclValue::Expr(e)
        };
        Ok(TypedDecl { decl_type, name, value, span: kw.span.to(self.ts.prev_span()) })
    }

    fn skip_newlines(&mut self) {
        while self.ts.eat(B::Newline).is_some() {}
    }

    /// `[[a, b], [c, d]]` or a single row `[a, b]`. Newlines may appear
    /// anywhere inside the brackets.
    fn array_literal(&mut self) -> Result<ArrayLiteral> {
        let open = self.ts.bump().expect("caller saw '['").span;
        self.skip_newlines();
        let mut rows: Vec<Vec<Expr>> = Vec::new();
        if self.ts.at(B::Lsqbrac) {
            loop {
                self.skip_newlines();
                self.ts.expect(B::Lsqbrac, "PAR209")?;
                rows.push(self.element_list()?);
                self.ts.expect(B::Rsqbrac, "PAR209")?;
                self.skip_newlines();
                if self.ts.eat(B::Comma).is_none() {
                    break;
                }
            }
        } else {
            rows.push(self.element_list()?);
        }
        self.skip_newlines();
        self.ts.expect(B::Rsqbrac, "PAR209")?;
        let span = open.to(self.ts.prev_span());
        let cols = rows[0].len();
        if cols == 0 || rows.iter().any(|r| r.len() != cols) {
            return Err(Diagnostic::error("PAR207", "array rows must be non-empty and of equal length", span));
        }
        Ok(ArrayLiteral { rows: rows.len(), cols, elements: rows.into_iter().flatten().collect(), span })
    }

    fn element_list(&mut self) -> Result<Vec<Expr>> {
        let mut out = Vec::new();
        loop {
            self.skip_newlines();
            if self.ts.at(B::Rsqbrac) {
                break;
            }
            out.push(self.ts.expr(&DIALECT)?);
            self.skip_newlines();
            if self.ts.eat(B::Comma).is_none() {
                break;
            }
        }
        Ok(out)
    }

    fn statement(&mut self) -> Result<ModeStatement> {
        let head = self.ts.bump().expect("caller saw identifier");
        let Some(sig) = ops::lookup(&head.lexeme) else {
            return Err(Diagnostic::error("PAR203", format!("unknown operator '{}'", head.lexeme), head.span));
        };
        let mut arguments = Vec::new();
        if self.ts.at(B::Lbrac) {
            let open = self.ts.bump().expect("peeked").span;
            if !self.ts.at(B::Rbrac) {
                loop {
                    arguments.push(self.ts.expr(&DIALECT)?);
                    if self.ts.eat(B::Comma).is_none() {
                        break;
                    }
                }
            }
            if self.ts.eat(B::Rbrac).is_none() {
                return Err(Diagnostic::error("PAR201", "unbalanced parenthesis: missing ')'", open));
            }
        }
        let args_end = self.ts.prev_span();
        if !sig.arg_counts.contains(&arguments.len()) {
            let (lo, hi) = (sig.arg_counts.start(), sig.arg_counts.end());
            let want = if lo == hi { lo.to_string() } else { format!("{lo} to {hi}") };
            return Err(Diagnostic::error(
                "PAR204",
                format!("{} takes {} argument(s), got {}", sig.name, want, arguments.len()),
                head.span.to(args_end),
            ));
        }
        self.ts.expect(B::Pipe, "PAR209")?;
        let (modes, mode_spans) = self.modes()?;
        let span = head.span.to(self.ts.prev_span());
        for (i, m) in modes.iter().enumerate() {
            if modes[..i].contains(m) {
                return Err(Diagnostic::error("PAR208", format!("mode {m} repeated"), mode_spans[i]));
            }
        }
        let expected = match sig.mode_count {
            ModeCount::Fixed(n) => n,
            ModeCount::Variable => {
                let rows = match &arguments[0].kind {
                    ExprKind::Var(name) => self.arrays.get(name).copied(),
                    _ => None,
                };
                let Some(rows) = rows else {
                    return Err(Diagnostic::error(
                        "PAR204",
                        format!("{} expects a declared array argument", sig.name),
                        arguments[0].span,
                    ));
                };
                let per = sig.rows_per_mode().unwrap_or(1);
                if rows % per != 0 {
                    return Err(Diagnostic::error(
                        "PAR205",
                        format!("{} needs a matrix with a multiple of {per} rows", sig.name),
                        arguments[0].span,
                    ));
                }
                rows / per
            }
        };
        if modes.len() != expected {
            return Err(Diagnostic::error(
                "PAR205",
                format!("{} acts on {} mode(s), got {}", sig.name, expected, modes.len()),
                span,
            ));
        }
        Ok(ModeStatement { op_name: sig.name.to_string(), arguments, modes, span, mode_spans })
    }

    /// `0`, `(0, 1)` or `[0, 1]`.
    fn modes(&mut self) -> Result<(Vec<u64>, Vec<Span>)> {
        let close = match self.ts.peek_kind() {
            Some(B::Lbrac) => Some(B::Rbrac),
            Some(B::Lsqbrac) => Some(B::Rsqbrac),
            _ => None,
        };
        let mut modes = Vec::new();
        let mut spans = Vec::new();
        if let Some(close) = close {
            self.ts.bump();
            loop {
                let t = self.ts.expect(B::Int, "PAR209")?;
                modes.push(t.int().unwrap_or(0) as u64);
                spans.push(t.span);
                if self.ts.eat(B::Comma).is_none() {
                    break;
                }
            }
            self.ts.expect(close, "PAR209")?;
        } else {
            let t = self.ts.expect(B::Int, "PAR209")?;
            modes.push(t.int().unwrap_or(0) as u64);
            spans.push(t.span);
        }
        Ok((modes, spans))
    }
}
