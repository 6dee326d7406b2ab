#![allow(dead_code)]

use qlang::frontend::{BinOp, Expr, ExprKind, Span, UnOp};
use qlang::{blackbird, qasm, qmasm, Language, Result};
use rand::Rng;
use std::path::{Path, PathBuf};

pub fn corpus_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests").join("corpus")
}

/// Every corpus file with its language and contents, in a stable order.
pub fn corpus() -> Vec<(Language, PathBuf, String)> {
    let mut out = Vec::new();
    for lang in Language::ALL {
        let dir = corpus_dir().join(lang.name());
        let mut paths: Vec<PathBuf> = std::fs::read_dir(&dir)
            .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
            .map(|e| e.unwrap().path())
            .collect();
        paths.sort();
        for p in paths {
            let text = std::fs::read_to_string(&p).unwrap();
            out.push((lang, p, text));
        }
    }
    out
}

pub fn parse_expr(lang: Language, text: &str) -> Result<Expr> {
    match lang {
        Language::Qasm => qasm::parse_expression(&qasm::lex_qasm(text)?),
        Language::Blackbird => blackbird::parse_expression(&blackbird::lex_blackbird(text)?),
        Language::Qmasm => qmasm::parse_expression(&qmasm::lex_qmasm(text)?),
    }
}

pub fn print_expr(lang: Language, e: &Expr) -> String {
    match lang {
        Language::Qasm => qasm::print_expression(e),
        Language::Blackbird => blackbird::print_expression(e),
        Language::Qmasm => qmasm::print_expression(e),
    }
}

fn leaf(kind: ExprKind) -> Expr {
    Expr::new(kind, Span::default())
}

/// Random expression tree of depth at most `depth` using only forms the
/// dialect can express.
pub fn random_expr<R: Rng>(rng: &mut R, lang: Language, depth: usize) -> Expr {
    if depth <= 1 || rng.gen_bool(0.25) {
        return random_leaf(rng, lang);
    }
    let arith = [BinOp::Add, BinOp::Sub, BinOp::Mul, BinOp::Div, BinOp::Pow];
    match rng.gen_range(0..10) {
        0 => Expr::unary(UnOp::Neg, random_expr(rng, lang, depth - 1)),
        1 if lang == Language::Qmasm => Expr::unary(UnOp::Not, random_expr(rng, lang, depth - 1)),
        2 if lang == Language::Qasm => {
            let func = ["sin", "cos", "tan", "exp", "ln", "sqrt"][rng.gen_range(0..6)];
            leaf(ExprKind::Call { func: func.into(), args: vec![random_expr(rng, lang, depth - 1)] })
        }
        _ => {
            let op = if lang == Language::Qmasm {
                BinOp::ALL[rng.gen_range(0..BinOp::ALL.len())]
            } else {
                arith[rng.gen_range(0..arith.len())]
            };
            Expr::binary(op, random_expr(rng, lang, depth - 1), random_expr(rng, lang, depth - 1))
        }
    }
}

fn random_leaf<R: Rng>(rng: &mut R, lang: Language) -> Expr {
    let names = ["x", "theta", "phi_2", "n"];
    let real = |rng: &mut R| {
        let mantissa: f64 = rng.gen_range(0.0..1000.0);
        mantissa * 10f64.powi(rng.gen_range(-8..8))
    };
    let kind = match (lang, rng.gen_range(0..6)) {
        (_, 0) => ExprKind::Int(rng.gen_range(0..1_000_000)),
        (_, 1) => ExprKind::Real(real(rng)),
        (_, 2) => ExprKind::Var(names[rng.gen_range(0..names.len())].into()),
        (Language::Qmasm, 3) => ExprKind::Bool(rng.gen()),
        (Language::Qmasm, 4) => ExprKind::Int(-rng.gen_range(1..1000)),
        (Language::Qmasm, _) => ExprKind::Real(-real(rng)),
        (Language::Blackbird, 3) => ExprKind::Imag(real(rng)),
        _ => ExprKind::Pi,
    };
    leaf(kind)
}
