use super::ast::*;
use super::gates::{self, GateSignature};
use super::lexer::QasmToken as T;
use crate::frontend::expr::ExprDialect;
use crate::frontend::parse::TokenCursor;
use crate::frontend::{Diagnostic, Expr, ExprKind, Result, Span, TokenStream};
use std::collections::HashMap;

pub(crate) const DIALECT: ExprDialect = ExprDialect {
    pow_glyph: "^",
    var_prefix: "",
    calls: true,
    unbalanced_code: "PAR101",
    dangling_code: "PAR101",
    unexpected_code: "PAR101",
};

/// Parses a free-standing expression covering the whole stream. Names are
/// not resolved, since there is no enclosing gate.
pub fn parse_expression(stream: &TokenStream<T>) -> Result<Expr> {
    let mut ts = TokenCursor::new(stream);
    let e = ts.expr(&DIALECT)?;
    if ts.at_end() {
        Ok(e)
    } else {
        Err(ts.unexpected("PAR101", "end of expression"))
    }
}

/// Builds a program from QASM tokens, checking gate arity, register
/// declarations and index bounds as it goes.
pub fn parse_qasm(stream: &TokenStream<T>) -> Result<QasmProgram> {
    let mut p = Parser { ts: TokenCursor::new(stream), registers: HashMap::new(), gates: HashMap::new() };
    let mut version = None;
    let mut statements = Vec::new();
    while let Some(tok) = p.ts.peek() {
        if tok.kind == T::OpenQasm {
            if version.is_some() || !statements.is_empty() {
                return Err(Diagnostic::error("PAR101", "version header must be the first statement", tok.span));
            }
            version = Some(p.version()?);
            continue;
        }
        statements.push(p.statement()?);
    }
    Ok(QasmProgram { version, statements, span: stream.full_span() })
}

struct Parser<'t> {
    ts: TokenCursor<'t, T>,
    registers: HashMap<String, (RegisterKind, u64)>,
    gates: HashMap<String, GateSignature>,
}

/// Names visible while parsing a gate body.
struct GateScope<'a> {
    params: &'a [Ident],
    qubits: &'a [Ident],
}

impl Parser<'_> {
    fn version(&mut self) -> Result<Version> {
        let start = self.ts.bump().expect("caller saw OPENQASM").span;
        let num = self.ts.peek().filter(|t| matches!(t.kind, T::Real | T::Int));
        let Some(num) = num else {
            return Err(self.ts.unexpected("PAR101", "version number"));
        };
        self.ts.pos += 1;
        let parsed = match num.lexeme.split_once('.') {
            Some((maj, min)) => maj.parse::<u32>().ok().zip(min.parse::<u32>().ok()),
            None => num.lexeme.parse::<u32>().ok().map(|m| (m, 0)),
        };
        if parsed != Some((2, 0)) {
            return Err(Diagnostic::error("PAR106", format!("unsupported QASM version {}", num.lexeme), num.span));
        }
        self.ts.expect(T::Semicolon, "PAR101")?;
        Ok(Version { major: 2, minor: 0, span: start.to(self.ts.prev_span()) })
    }

    fn statement(&mut self) -> Result<QasmStatement> {
        let start = self.ts.span_here();
        let kind = match self.ts.peek_kind() {
            Some(T::Include) => {
                self.ts.bump();
                let path = self.ts.expect(T::Str, "PAR101")?.text().unwrap_or_default().to_string();
                self.ts.expect(T::Semicolon, "PAR101")?;
                QasmStmtKind::Include { path }
            }
            Some(T::Qreg) => self.register(RegisterKind::Quantum)?,
            Some(T::Creg) => self.register(RegisterKind::Classical)?,
            Some(T::Gate) => self.gate_def()?,
            Some(T::If) => self.if_stmt()?,
            Some(T::Barrier) => {
                self.ts.bump();
                let targets = self.ref_list()?;
                self.ts.expect(T::Semicolon, "PAR101")?;
                QasmStmtKind::Barrier { targets }
            }
            Some(T::Measure | T::Reset | T::Id) => self.quantum_op(start)?,
            _ => return Err(self.ts.unexpected("PAR101", "statement")),
        };
        Ok(QasmStatement { kind, span: start.to(self.ts.prev_span()) })
    }

    fn register(&mut self, kind: RegisterKind) -> Result<QasmStmtKind> {
        self.ts.bump();
        let name = self.ident()?;
        self.ts.expect(T::Lsqbrac, "PAR101")?;
        let size_tok = self.ts.expect(T::Int, "PAR101")?;
        let size = size_tok.int().unwrap_or(0);
        if size <= 0 {
            return Err(Diagnostic::error("PAR105", "register size must be positive", size_tok.span));
        }
        self.ts.expect(T::Rsqbrac, "PAR101")?;
        self.ts.expect(T::Semicolon, "PAR101")?;
        if self.registers.contains_key(&name.name) {
            return Err(Diagnostic::error("PAR107", format!("register '{}' already declared", name.name), name.span));
        }
        self.registers.insert(name.name.clone(), (kind, size as u64));
        Ok(QasmStmtKind::RegisterDecl { kind, name, size: size as u64 })
    }

    fn gate_def(&mut self) -> Result<QasmStmtKind> {
        self.ts.bump();
        let name = self.ident()?;
        if gates::builtin(&name.name).is_some() || self.gates.contains_key(&name.name) {
            return Err(Diagnostic::error("PAR107", format!("gate '{}' already defined", name.name), name.span));
        }
        let mut params = Vec::new();
        if self.ts.eat(T::Lbrac).is_some() {
            if !self.ts.at(T::Rbrac) {
                params = self.ident_list()?;
            }
            self.ts.expect(T::Rbrac, "PAR101")?;
        }
        let qubits = self.ident_list()?;
        for (i, id) in params.iter().chain(&qubits).enumerate() {
            if params.iter().chain(&qubits).take(i).any(|o| o.name == id.name) {
                return Err(Diagnostic::error("PAR107", format!("duplicate gate argument '{}'", id.name), id.span));
            }
        }
        self.ts.expect(T::Lbrace, "PAR101")?;
        let mut body = Vec::new();
        let scope = GateScope { params: &params, qubits: &qubits };
        while !self.ts.at(T::Rbrace) {
            if !self.ts.at(T::Id) {
                return Err(self.ts.unexpected("PAR101", "gate application or '}'"));
            }
            let start = self.ts.span_here();
            let (head, params_e, targets) = self.application(Some(&scope))?;
            let sig = self.signature(&head)?;
            self.check_arity(&sig, &head, params_e.len(), targets.len())?;
            body.push(GateApply { name: head, params: params_e, targets, span: start.to(self.ts.prev_span()) });
        }
        self.ts.bump();
        self.gates.insert(
            name.name.clone(),
            GateSignature { name: name.name.clone(), param_count: params.len(), qubit_count: qubits.len() },
        );
        Ok(QasmStmtKind::GateDef { name, params, qubits, body })
    }

    fn if_stmt(&mut self) -> Result<QasmStmtKind> {
        self.ts.bump();
        self.ts.expect(T::Lbrac, "PAR101")?;
        let creg = self.ident()?;
        match self.registers.get(&creg.name) {
            Some((RegisterKind::Classical, _)) => {}
            _ => {
                return Err(Diagnostic::error("PAR104", format!("undeclared classical register '{}'", creg.name), creg.span))
            }
        }
        self.ts.expect(T::EqEq, "PAR101")?;
        let value = self.ts.expect(T::Int, "PAR101")?.int().unwrap_or(0) as u64;
        self.ts.expect(T::Rbrac, "PAR101")?;
        if !matches!(self.ts.peek_kind(), Some(T::Measure | T::Reset | T::Id)) {
            return Err(self.ts.unexpected("PAR101", "gate application, measure or reset"));
        }
        let start = self.ts.span_here();
        let kind = self.quantum_op(start)?;
        let body = QasmStatement { kind, span: start.to(self.ts.prev_span()) };
        Ok(QasmStmtKind::If { creg, value, body: Box::new(body) })
    }

    fn quantum_op(&mut self, start: Span) -> Result<QasmStmtKind> {
        if self.ts.at(T::Measure) {
            self.ts.bump();
            let source = self.qubit_ref(RegisterKind::Quantum)?;
            self.ts.expect(T::Arrow, "PAR101")?;
            let dest = self.qubit_ref(RegisterKind::Classical)?;
            self.ts.expect(T::Semicolon, "PAR101")?;
            return Ok(QasmStmtKind::Measure { source, dest });
        }
        let (head, params, mut targets) = self.application(None)?;
        let sig = self.signature(&head)?;
        self.check_arity(&sig, &head, params.len(), targets.len())?;
        if head.name == "reset" {
            return Ok(QasmStmtKind::Reset { target: targets.remove(0) });
        }
        let span = start.to(self.ts.prev_span());
        Ok(QasmStmtKind::GateApply(GateApply { name: head, params, targets, span }))
    }

    /// `name [(exprs)] targets ;` with targets resolved against the gate
    /// scope when inside a definition, or against registers otherwise.
    fn application(&mut self, scope: Option<&GateScope>) -> Result<(Ident, Vec<Expr>, Vec<QubitRef>)> {
        let head_tok = self.ts.bump().expect("caller checked head");
        let head = Ident { name: head_tok.lexeme.clone(), span: head_tok.span };
        let mut params = Vec::new();
        if self.ts.eat(T::Lbrac).is_some() {
            if !self.ts.at(T::Rbrac) {
                loop {
                    let e = self.ts.expr(&DIALECT)?;
                    check_expr(&e, scope)?;
                    params.push(e);
                    if self.ts.eat(T::Comma).is_none() {
                        break;
                    }
                }
            }
            self.ts.expect(T::Rbrac, "PAR101")?;
        }
        let mut targets = Vec::new();
        if !self.ts.at(T::Semicolon) {
            targets = match scope {
                Some(scope) => self.gate_args(scope)?,
                None => self.ref_list()?,
            };
        }
        self.ts.expect(T::Semicolon, "PAR101")?;
        Ok((head, params, targets))
    }

    fn gate_args(&mut self, scope: &GateScope) -> Result<Vec<QubitRef>> {
        let mut out = Vec::new();
        for id in self.ident_list()? {
            if !scope.qubits.iter().any(|q| q.name == id.name) {
                return Err(Diagnostic::error("PAR104", format!("undeclared gate argument '{}'", id.name), id.span));
            }
            out.push(QubitRef { reg: id.name, index: None, span: id.span });
        }
        Ok(out)
    }

    fn signature(&self, head: &Ident) -> Result<GateSignature> {
        gates::builtin(&head.name)
            .or_else(|| self.gates.get(&head.name).cloned())
            .ok_or_else(|| Diagnostic::error("PAR102", format!("unknown gate '{}'", head.name), head.span))
    }

    fn check_arity(&self, sig: &GateSignature, head: &Ident, params: usize, qubits: usize) -> Result<()> {
        if sig.param_count != params || sig.qubit_count != qubits {
            return Err(Diagnostic::error(
                "PAR103",
                format!(
                    "'{}' takes {} parameter(s) and {} qubit(s), got {} and {}",
                    sig.name, sig.param_count, sig.qubit_count, params, qubits
                ),
                head.span.to(self.ts.prev_span()),
            ));
        }
        Ok(())
    }

    fn ref_list(&mut self) -> Result<Vec<QubitRef>> {
        let mut out = vec![self.qubit_ref(RegisterKind::Quantum)?];
        while self.ts.eat(T::Comma).is_some() {
            out.push(self.qubit_ref(RegisterKind::Quantum)?);
        }
        Ok(out)
    }

    fn qubit_ref(&mut self, expected: RegisterKind) -> Result<QubitRef> {
        let reg = self.ident()?;
        let Some(&(kind, size)) = self.registers.get(&reg.name) else {
            return Err(Diagnostic::error("PAR104", format!("undeclared register '{}'", reg.name), reg.span));
        };
        if kind != expected {
            return Err(Diagnostic::error(
                "PAR104",
                format!("'{}' is not a {} register", reg.name, expected.keyword()),
                reg.span,
            ));
        }
        if !self.ts.at(T::Lsqbrac) {
            return Err(self.ts.unexpected("PAR101", "'[' (targets must be indexed)"));
        }
        self.ts.bump();
        let idx_tok = self.ts.expect(T::Int, "PAR101")?;
        let index = idx_tok.int().unwrap_or(-1);
        if index < 0 || index as u64 >= size {
            return Err(Diagnostic::error(
                "PAR105",
                format!("index {} out of range for '{}' of size {}", idx_tok.lexeme, reg.name, size),
                idx_tok.span,
            ));
        }
        self.ts.expect(T::Rsqbrac, "PAR101")?;
        Ok(QubitRef { reg: reg.name, index: Some(index as u64), span: reg.span.to(self.ts.prev_span()) })
    }

    fn ident(&mut self) -> Result<Ident> {
        let t = self.ts.expect(T::Id, "PAR101")?;
        Ok(Ident { name: t.lexeme.clone(), span: t.span })
    }

    fn ident_list(&mut self) -> Result<Vec<Ident>> {
        let mut out = vec![self.ident()?];
        while self.ts.eat(T::Comma).is_some() {
            out.push(self.ident()?);
        }
        Ok(out)
    }
}

/// Rejects unknown functions, and variables that are not parameters of the
/// enclosing gate definition.
fn check_expr(e: &Expr, scope: Option<&GateScope>) -> Result<()> {
    match &e.kind {
        ExprKind::Var(name) => {
            if scope.is_some_and(|s| s.params.iter().any(|p| &p.name == name)) {
                Ok(())
            } else {
                Err(Diagnostic::error("PAR108", format!("unknown identifier '{name}'"), e.span))
            }
        }
        ExprKind::Call { func, args } => {
            if !gates::FUNCTIONS.contains(&func.as_str()) || args.len() != 1 {
                return Err(Diagnostic::error("PAR108", format!("unknown function '{func}/{}'", args.len()), e.span));
            }
            args.iter().try_for_each(|a| check_expr(a, scope))
        }
        ExprKind::Unary(_, inner) => check_expr(inner, scope),
        ExprKind::Binary(_, l, r) => {
            check_expr(l, scope)?;
            check_expr(r, scope)
        }
        _ => Ok(()),
    }
}
