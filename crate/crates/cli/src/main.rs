//! `qlang`: parse, check, flatten and solve QASM, Blackbird and QMASM
//! programs from the command line.

use clap::{Args, Parser, Subcommand, ValueEnum};
use qlang::anneal::{self, Compiled, DEFAULT_MAX_SPINS};
use qlang::qmasm::parse_qmasm_string;
use qlang::{AstFormat, Diagnostic, Language, Span};
use std::collections::HashMap;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

const EXIT_SYNTAX: u8 = 1;
const EXIT_SEMANTIC: u8 = 2;
const EXIT_USAGE: u8 = 3;
const EXIT_IO: u8 = 4;

#[derive(Parser)]
#[command(name = "qlang", version, about = "Parsers for QASM 2.0, Blackbird and QMASM, with an exact Ising solver")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the syntax tree.
    Parse(Common),
    /// Validate without output. QMASM programs are fully elaborated and their assertions checked.
    Check(Common),
    /// Flatten a QMASM program to an Ising model (JSON).
    Ising(Common),
    /// Enumerate the ground states of a QMASM program (JSON).
    Solve(Common),
}

#[derive(Args)]
struct Common {
    /// Input file, or `-` for standard input.
    input: String,
    /// Source language. Defaults from the file extension.
    #[arg(long, value_enum)]
    lang: Option<Lang>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Largest spin count the solver will enumerate.
    #[arg(long, default_value_t = DEFAULT_MAX_SPINS)]
    max_spins: usize,
    /// Extra directory searched for QMASM includes, after the input's own directory.
    #[arg(long = "include-dir")]
    include_dirs: Vec<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Lang {
    Qasm,
    Blackbird,
    Qmasm,
}

impl From<Lang> for Language {
    fn from(l: Lang) -> Language {
        match l {
            Lang::Qasm => Language::Qasm,
            Lang::Blackbird => Language::Blackbird,
            Lang::Qmasm => Language::Qmasm,
        }
    }
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum Format {
    Json,
    Pretty,
}

/// Why a run stopped early.
enum Failure {
    Diagnostic(Diagnostic),
    Usage(String),
    Io(String),
}

impl From<Diagnostic> for Failure {
    fn from(d: Diagnostic) -> Failure {
        Failure::Diagnostic(d)
    }
}

/// Loaded sources by name, so diagnostics in included files render against
/// the right text.
#[derive(Default)]
struct Sources {
    main_name: String,
    main: String,
    included: HashMap<String, String>,
}

impl Sources {
    fn render(&self, d: &Diagnostic) -> String {
        let (name, text) = match &d.origin {
            Some(o) => (o.as_str(), self.included.get(o).map_or("", String::as_str)),
            None => (self.main_name.as_str(), self.main.as_str()),
        };
        if d.span == Span::default() && d.is_semantic() {
            return format!("{} {}: {}", d.severity, d.code, d.message);
        }
        format!("{name}: {}", d.render(text))
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let mut sources = Sources::default();
    match run(cli.command, &mut sources) {
        Ok(out) => {
            let mut stdout = io::stdout().lock();
            if stdout.write_all(out.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(EXIT_IO);
            }
            ExitCode::SUCCESS
        }
        Err(Failure::Diagnostic(d)) => {
            eprintln!("{}", sources.render(&d));
            ExitCode::from(if d.is_semantic() { EXIT_SEMANTIC } else { EXIT_SYNTAX })
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("qlang: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Io(msg)) => {
            eprintln!("qlang: {msg}");
            ExitCode::from(EXIT_IO)
        }
    }
}

fn read_input(input: &str) -> Result<String, Failure> {
    let mut bytes = Vec::new();
    let read = if input == "-" {
        io::stdin().read_to_end(&mut bytes).map(|_| ())
    } else {
        std::fs::read(input).map(|b| bytes = b)
    };
    read.map_err(|e| Failure::Io(format!("cannot read {input}: {e}")))?;
    String::from_utf8(bytes).map_err(|e| {
        let at = e.utf8_error().valid_up_to();
        Failure::Io(format!("{input} is not valid UTF-8 (byte {at})"))
    })
}

fn run(command: Command, sources: &mut Sources) -> Result<String, Failure> {
    let (kind, args) = match command {
        Command::Parse(a) => ("parse", a),
        Command::Check(a) => ("check", a),
        Command::Ising(a) => ("ising", a),
        Command::Solve(a) => ("solve", a),
    };
    let lang = match (args.lang, args.input.as_str()) {
        (Some(l), _) => l.into(),
        (None, "-") if matches!(kind, "ising" | "solve") => Language::Qmasm,
        (None, "-") => return Err(Failure::Usage("--lang is required when reading standard input".into())),
        (None, path) => match Language::from_path(Path::new(path)) {
            Some(l) => l,
            None if matches!(kind, "ising" | "solve") => Language::Qmasm,
            None => return Err(Failure::Usage(format!("cannot tell the language of '{path}'; pass --lang"))),
        },
    };
    if matches!(kind, "ising" | "solve") && lang != Language::Qmasm {
        return Err(Failure::Usage(format!("'{kind}' only accepts QMASM input, not {lang}")));
    }
    sources.main_name = if args.input == "-" { "<stdin>".into() } else { args.input.clone() };
    sources.main = read_input(&args.input)?;

    match kind {
        "parse" => {
            let ast = lang.parse(&sources.main)?;
            let format = if args.format == Format::Pretty { AstFormat::Pretty } else { AstFormat::Json };
            let mut out = ast.serialize(format);
            if !out.ends_with('\n') {
                out.push('\n');
            }
            Ok(out)
        }
        "check" if lang != Language::Qmasm => {
            lang.parse(&sources.main)?;
            Ok(String::new())
        }
        _ => {
            let compiled = compile_qmasm(&args, sources)?;
            let verdicts = anneal::check_assertions(&compiled.statements)?;
            anneal::require_assertions(&verdicts)?;
            let json = match kind {
                "check" => return Ok(String::new()),
                "ising" => compiled.model.to_json(),
                _ => anneal::brute_force_ground_states(&compiled.model, args.max_spins)?.to_json(&compiled.model),
            };
            Ok(format_json(json, args.format))
        }
    }
}

fn compile_qmasm(args: &Common, sources: &mut Sources) -> Result<Compiled, Failure> {
    let program = parse_qmasm_string(&sources.main)?;
    let mut dirs = Vec::new();
    if args.input == "-" {
        dirs.push(PathBuf::from("."));
    } else {
        dirs.push(Path::new(&args.input).parent().map_or_else(|| PathBuf::from("."), Path::to_path_buf));
    }
    dirs.extend(args.include_dirs.iter().cloned());
    let included = &mut sources.included;
    let mut loader = |path: &str| {
        let p = Path::new(path);
        let text = if p.is_absolute() {
            std::fs::read_to_string(p).ok()
        } else {
            dirs.iter().find_map(|d| std::fs::read_to_string(d.join(p)).ok())
        }?;
        included.insert(path.to_string(), text.clone());
        Some(text)
    };
    Ok(anneal::compile(program, &mut loader)?)
}

fn format_json(json: String, format: Format) -> String {
    let mut out = match format {
        Format::Json => json,
        Format::Pretty => {
            let value: serde_json::Value = serde_json::from_str(&json).expect("generated JSON is well formed");
            serde_json::to_string_pretty(&value).expect("values serialize")
        }
    };
    out.push('\n');
    out
}
