use crate::frontend::{AstNode, Diagnostic, Result};
use crate::{blackbird, qasm, qmasm};
use std::fmt;
use std::path::Path;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Language {
    Qasm,
    Blackbird,
    Qmasm,
}

impl Language {
    pub const ALL: [Language; 3] = [Language::Qasm, Language::Blackbird, Language::Qmasm];

    pub fn name(self) -> &'static str {
        match self {
            Language::Qasm => "qasm",
            Language::Blackbird => "blackbird",
            Language::Qmasm => "qmasm",
        }
    }

    /// Guesses the language from a file extension (`.qasm`, `.xbb`/`.bb`,
    /// `.qmasm`).
    pub fn from_path(path: &Path) -> Option<Language> {
        match path.extension()?.to_str()?.to_ascii_lowercase().as_str() {
            "qasm" => Some(Language::Qasm),
            "xbb" | "bb" | "blackbird" => Some(Language::Blackbird),
            "qmasm" => Some(Language::Qmasm),
            _ => None,
        }
    }

    /// Lexes and parses `source`, returning the uniform syntax tree.
    pub fn parse(self, source: &str) -> Result<AstNode> {
        Ok(match self {
            Language::Qasm => qasm::parse_qasm_string(source)?.to_ast(),
            Language::Blackbird => blackbird::parse_blackbird_string(source)?.to_ast(),
            Language::Qmasm => qmasm::parse_qmasm_string(source)?.to_ast(),
        })
    }

    /// Parses then prints in canonical form.
    pub fn format(self, source: &str) -> Result<String> {
        Ok(match self {
            Language::Qasm => qasm::print_qasm(&qasm::parse_qasm_string(source)?),
            Language::Blackbird => blackbird::print_blackbird(&blackbird::parse_blackbird_string(source)?),
            Language::Qmasm => qmasm::print_qmasm(&qmasm::parse_qmasm_string(source)?),
        })
    }

    /// Lexes `source` and rebuilds it from tokens and trivia.
    pub fn reconstruct(self, source: &str) -> Result<String> {
        Ok(match self {
            Language::Qasm => qasm::lex_qasm(source)?.reconstruct(),
            Language::Blackbird => blackbird::lex_blackbird(source)?.reconstruct(),
            Language::Qmasm => qmasm::lex_qmasm(source)?.reconstruct(),
        })
    }
}

impl fmt::Display for Language {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Language {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Language::ALL
            .into_iter()
            .find(|l| l.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown language '{s}'"))
    }
}

/// Parses many sources independently. Results keep input order; with the
/// `parallel` feature the work is spread over the rayon pool.
pub fn parse_batch(inputs: &[(Language, &str)]) -> Vec<std::result::Result<AstNode, Diagnostic>> {
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        inputs.par_iter().map(|(lang, src)| lang.parse(src)).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        inputs.iter().map(|(lang, src)| lang.parse(src)).collect()
    }
}
