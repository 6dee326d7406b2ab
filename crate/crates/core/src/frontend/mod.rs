//! Infrastructure shared by the language frontends: cursor, lexeme tables,
//! tokens with trivia, diagnostics, expressions and the uniform AST.

pub mod ast;
pub mod cursor;
pub mod diagnostic;
pub mod expr;
pub(crate) mod parse;
pub mod span;
pub mod table;
pub mod token;

pub use ast::{AstFormat, AstNode, Scalar};
pub use cursor::Cursor;
pub use diagnostic::{Diagnostic, Severity};
pub use expr::{BinOp, Expr, ExprKind, UnOp};
pub use span::{SourcePosition, Span};
pub use table::LexemeTable;
pub use token::{Literal, Token, TokenKind, TokenStream};

/// Result type used throughout the crate: fail-fast with one diagnostic.
pub type Result<T> = std::result::Result<T, Diagnostic>;
