use crate::frontend::{BinOp, Diagnostic, Expr, ExprKind, Result, Span, UnOp};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

/// Value of a classical (compile-time) expression.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ClassicalValue {
    Int(i64),
    Float(f64),
    Bool(bool),
}

impl ClassicalValue {
    pub fn as_f64(self) -> Option<f64> {
        match self {
            ClassicalValue::Int(i) => Some(i as f64),
            ClassicalValue::Float(f) => Some(f),
            ClassicalValue::Bool(_) => None,
        }
    }

    pub fn type_name(self) -> &'static str {
        match self {
            ClassicalValue::Int(_) => "integer",
            ClassicalValue::Float(_) => "real",
            ClassicalValue::Bool(_) => "boolean",
        }
    }
}

impl fmt::Display for ClassicalValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassicalValue::Int(i) => write!(f, "{i}"),
            ClassicalValue::Float(v) => write!(f, "{v:?}"),
            ClassicalValue::Bool(b) => write!(f, "{b}"),
        }
    }
}

/// Variable bindings visible to an expression.
pub type Bindings = BTreeMap<String, ClassicalValue>;

/// A scope stack; inner scopes shadow outer ones.
#[derive(Debug, Clone, Default)]
pub struct Scopes {
    frames: Vec<Bindings>,
}

impl Scopes {
    pub fn new() -> Self {
        Scopes { frames: vec![Bindings::new()] }
    }

    pub fn push(&mut self) {
        self.frames.push(Bindings::new());
    }

    pub fn pop(&mut self) {
        self.frames.pop();
    }

    pub fn bind(&mut self, name: &str, value: ClassicalValue) {
        if self.frames.is_empty() {
            self.frames.push(Bindings::new());
        }
        self.frames.last_mut().expect("at least one frame").insert(name.to_string(), value);
    }

    pub fn lookup(&self, name: &str) -> Option<ClassicalValue> {
        self.frames.iter().rev().find_map(|f| f.get(name).copied())
    }

    /// All visible bindings, flattened.
    pub fn snapshot(&self) -> Bindings {
        let mut out = Bindings::new();
        for f in &self.frames {
            out.extend(f.iter().map(|(k, v)| (k.clone(), *v)));
        }
        out
    }
}

fn sem(code: &'static str, msg: impl Into<String>, span: Span) -> Diagnostic {
    Diagnostic::error(code, msg, span)
}

fn finite(v: f64, span: Span) -> Result<ClassicalValue> {
    if v.is_finite() {
        Ok(ClassicalValue::Float(v))
    } else {
        Err(sem("SEM314", "arithmetic result is not a finite number", span))
    }
}

fn overflow(span: Span) -> Diagnostic {
    sem("SEM314", "integer overflow", span)
}

/// Evaluates `expr` against `lookup`. Integer arithmetic is checked; `/`
/// always produces a real; `%` follows the sign of the divisor.
pub fn evaluate(expr: &Expr, lookup: &dyn Fn(&str) -> Option<ClassicalValue>) -> Result<ClassicalValue> {
    use ClassicalValue::*;
    let span = expr.span;
    match &expr.kind {
        ExprKind::Int(i) => Ok(Int(*i)),
        ExprKind::Real(r) => finite(*r, span),
        ExprKind::Bool(b) => Ok(Bool(*b)),
        ExprKind::Pi => Ok(Float(std::f64::consts::PI)),
        ExprKind::Var(name) => lookup(name).ok_or_else(|| sem("SEM305", format!("unbound variable '{name}'"), span)),
        ExprKind::Imag(_) | ExprKind::Str(_) | ExprKind::Call { .. } => {
            Err(sem("SEM314", "expression form is not supported in classical evaluation", span))
        }
        ExprKind::Unary(UnOp::Neg, e) => match evaluate(e, lookup)? {
            Int(i) => i.checked_neg().map(Int).ok_or_else(|| overflow(span)),
            Float(f) => Ok(Float(-f)),
            Bool(_) => Err(sem("SEM314", "cannot negate a boolean", span)),
        },
        ExprKind::Unary(UnOp::Not, e) => match evaluate(e, lookup)? {
            Bool(b) => Ok(Bool(!b)),
            v => Err(sem("SEM306", format!("'~' needs a boolean, found {}", v.type_name()), e.span)),
        },
        ExprKind::Binary(op @ (BinOp::And | BinOp::Or), l, r) => {
            let side = |e: &Expr| match evaluate(e, lookup)? {
                Bool(b) => Ok(b),
                v => Err(sem("SEM306", format!("logical operand must be boolean, found {}", v.type_name()), e.span)),
            };
            let lv = side(l)?;
            Ok(Bool(match op {
                BinOp::And => lv && side(r)?,
                _ => lv || side(r)?,
            }))
        }
        ExprKind::Binary(op, l, r) => {
            let lv = evaluate(l, lookup)?;
            let rv = evaluate(r, lookup)?;
            binary(*op, lv, rv, span)
        }
    }
}

fn binary(op: BinOp, lv: ClassicalValue, rv: ClassicalValue, span: Span) -> Result<ClassicalValue> {
    use ClassicalValue::*;
    if matches!(op, BinOp::Eq | BinOp::Ne) {
        if let (Bool(a), Bool(b)) = (lv, rv) {
            return Ok(Bool((a == b) == (op == BinOp::Eq)));
        }
    }
    let (Some(a), Some(b)) = (lv.as_f64(), rv.as_f64()) else {
        return Err(sem(
            "SEM314",
            format!("operator needs numeric operands, found {} and {}", lv.type_name(), rv.type_name()),
            span,
        ));
    };
    let ord = match (lv, rv) {
        (Int(x), Int(y)) => Some(x.cmp(&y)),
        _ => a.partial_cmp(&b),
    };
    let cmp = |f: fn(Ordering) -> bool| Ok(Bool(ord.is_some_and(f)));
    match (op, lv, rv) {
        (BinOp::Eq, ..) => cmp(|o| o == Ordering::Equal),
        (BinOp::Ne, ..) => cmp(|o| o != Ordering::Equal),
        (BinOp::Lt, ..) => cmp(|o| o == Ordering::Less),
        (BinOp::Le, ..) => cmp(|o| o != Ordering::Greater),
        (BinOp::Gt, ..) => cmp(|o| o == Ordering::Greater),
        (BinOp::Ge, ..) => cmp(|o| o != Ordering::Less),
        (BinOp::Div | BinOp::Mod, ..) if b == 0.0 => Err(sem("SEM307", "division by zero", span)),
        (BinOp::Div, ..) => finite(a / b, span),
        (BinOp::Add, Int(x), Int(y)) => x.checked_add(y).map(Int).ok_or_else(|| overflow(span)),
        (BinOp::Sub, Int(x), Int(y)) => x.checked_sub(y).map(Int).ok_or_else(|| overflow(span)),
        (BinOp::Mul, Int(x), Int(y)) => x.checked_mul(y).map(Int).ok_or_else(|| overflow(span)),
        (BinOp::Mod, Int(x), Int(y)) => {
            let r = x.checked_rem(y).ok_or_else(|| overflow(span))?;
            Ok(Int(if r != 0 && (r < 0) != (y < 0) { r + y } else { r }))
        }
        (BinOp::Pow, Int(x), Int(y)) if y >= 0 => {
            let e = u32::try_from(y).map_err(|_| overflow(span))?;
            x.checked_pow(e).map(Int).ok_or_else(|| overflow(span))
        }
        (BinOp::Add, ..) => finite(a + b, span),
        (BinOp::Sub, ..) => finite(a - b, span),
        (BinOp::Mul, ..) => finite(a * b, span),
        (BinOp::Mod, ..) => finite(a - b * (a / b).floor(), span),
        (BinOp::Pow, ..) => finite(a.powf(b), span),
        (BinOp::And | BinOp::Or, ..) => unreachable!("handled with short-circuiting"),
    }
}
