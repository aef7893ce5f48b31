//! Batch front end for exact quantity calculation: unit files, expression
//! evaluation, conversion, natural-unit quotients and dimensionless-group
//! extraction.

pub mod ast;
pub mod eval;
pub mod lexer;
pub mod parser;

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser as ClapParser, Subcommand};

use ast::Statement;
use eval::{Outcome, Session};
use qspace::quotient::{build_quotient, pi_groups};

/// Exit statuses: 0 all pass, 1 dimension or semantic errors, 2 parse
/// errors, 3 I/O errors.
pub const EXIT_OK: i32 = 0;
pub const EXIT_SEMANTIC: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_IO: i32 = 3;

#[derive(ClapParser)]
#[command(name = "qcalc", about = "Exact quantity calculus over unit files")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every statement of a unit file.
    Check { file: PathBuf },
    /// Evaluate one expression and print its canonical form.
    Eval {
        expr: String,
        /// Unit file whose definitions are in scope.
        #[arg(long, short)]
        units: Option<PathBuf>,
    },
    /// Express a quantity as a multiple of a target unit expression.
    Convert {
        expr: String,
        #[arg(long)]
        to: String,
        #[arg(long, short)]
        units: Option<PathBuf>,
    },
    /// Quotient the file's space by units declared equal to one.
    Quotient {
        file: PathBuf,
        /// May be given several times, one unit name each.
        #[arg(long = "set", required = true)]
        set: Vec<String>,
    },
    /// Dimensionless groups of the file's let-bound variables.
    Pi { file: PathBuf },
}

/// Runs the command line; returns the process exit code.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{e}");
            return EXIT_PARSE;
        }
    };
    match cli.command {
        Command::Check { file } => check_file(&file, out, err),
        Command::Eval { expr, units } => eval_expr(&expr, units.as_deref(), out, err),
        Command::Convert { expr, to, units } => {
            convert_expr(&expr, &to, units.as_deref(), out, err)
        }
        Command::Quotient { file, set } => quotient_file(&file, &set, out, err),
        Command::Pi { file } => pi_file(&file, out, err),
    }
}

fn read_file(path: &Path, err: &mut dyn Write) -> Result<String, i32> {
    std::fs::read_to_string(path).map_err(|e| {
        let _ = writeln!(err, "error: cannot read {}: {e}", path.display());
        EXIT_IO
    })
}

fn parse_path(path: &Path, err: &mut dyn Write) -> Result<Vec<Statement>, i32> {
    let text = read_file(path, err)?;
    parser::parse_file(&text).map_err(|e| {
        let _ = writeln!(err, "{}: parse error: {e}", path.display());
        EXIT_PARSE
    })
}

fn session_from_statements(
    statements: &[Statement],
    err: &mut dyn Write,
) -> Result<(Session, usize), i32> {
    let Some(Statement::Basis { names, .. }) = statements.first() else {
        let _ = writeln!(err, "error: file has no basis declaration");
        return Err(EXIT_PARSE);
    };
    match Session::new(names) {
        Ok(session) => Ok((session, 1)),
        Err(e) => {
            let _ = writeln!(err, "error: invalid basis: {e}");
            Err(EXIT_SEMANTIC)
        }
    }
}

/// Builds a session from an optional unit file, loading declarations only.
fn load_session(units: Option<&Path>, err: &mut dyn Write) -> Result<Session, i32> {
    let Some(path) = units else {
        return Ok(Session::dimensionless());
    };
    let statements = parse_path(path, err)?;
    let (mut session, skip) = session_from_statements(&statements, err)?;
    if let Err(e) = session.load_declarations(&statements[skip..]) {
        let _ = writeln!(err, "{}: error: {e}", path.display());
        return Err(EXIT_SEMANTIC);
    }
    Ok(session)
}

fn check_file(path: &Path, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let statements = match parse_path(path, err) {
        Ok(s) => s,
        Err(code) => return code,
    };
    let (mut session, skip) = match session_from_statements(&statements, err) {
        Ok(s) => s,
        Err(code) => return code,
    };
    let mut failed = false;
    for statement in &statements[skip..] {
        match session.apply(statement) {
            Ok(Outcome::Silent) => {}
            Ok(Outcome::Line(line)) => {
                let _ = writeln!(out, "{line}");
            }
            Ok(Outcome::FailLine(line)) => {
                let _ = writeln!(out, "{line}");
                failed = true;
            }
            Err(e) => {
                let _ = writeln!(err, "{}: error: {e}", path.display());
                failed = true;
            }
        }
    }
    if failed {
        EXIT_SEMANTIC
    } else {
        EXIT_OK
    }
}

fn eval_expr(expr: &str, units: Option<&Path>, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let session = match load_session(units, err) {
        Ok(s) => s,
        Err(code) => return code,
    };
    let ast = match parser::parse_expression(expr) {
        Ok(ast) => ast,
        Err(e) => {
            let _ = writeln!(err, "parse error: {e}");
            return EXIT_PARSE;
        }
    };
    match session.eval_expr(&ast) {
        Ok(value) => {
            let _ = writeln!(out, "{}", value.laurent_form());
            EXIT_OK
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_SEMANTIC
        }
    }
}

fn convert_expr(
    expr: &str,
    to: &str,
    units: Option<&Path>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32 {
    let session = match load_session(units, err) {
        Ok(s) => s,
        Err(code) => return code,
    };
    let parse = |text: &str, err: &mut dyn Write| match parser::parse_expression(text) {
        Ok(ast) => Ok(ast),
        Err(e) => {
            let _ = writeln!(err, "parse error: {e}");
            Err(EXIT_PARSE)
        }
    };
    let ast = match parse(expr, err) {
        Ok(a) => a,
        Err(code) => return code,
    };
    let target = match parse(to, err) {
        Ok(a) => a,
        Err(code) => return code,
    };
    let evaluated = session
        .eval_expr(&ast)
        .and_then(|v| Ok((v, session.eval_expr(&target)?)));
    match evaluated {
        Ok((value, unit)) => match qspace::registry::convert(&value, &unit) {
            Ok(ratio) => {
                let _ = writeln!(out, "{ratio}");
                EXIT_OK
            }
            Err(e) => {
                let _ = writeln!(err, "error: {e}");
                EXIT_SEMANTIC
            }
        },
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_SEMANTIC
        }
    }
}

fn quotient_file(path: &Path, set: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let statements = match parse_path(path, err) {
        Ok(s) => s,
        Err(code) => return code,
    };
    let (mut session, skip) = match session_from_statements(&statements, err) {
        Ok(s) => s,
        Err(code) => return code,
    };
    if let Err(e) = session.load_declarations(&statements[skip..]) {
        let _ = writeln!(err, "{}: error: {e}", path.display());
        return EXIT_SEMANTIC;
    }
    let names: Vec<&str> = set.iter().map(String::as_str).collect();
    match build_quotient(session.registry(), &names) {
        Ok(quotient) => {
            let _ = writeln!(out, "rank {}", quotient.rank());
            for (name, unit) in quotient.set_units() {
                match quotient.project(unit) {
                    Ok(projected) => {
                        let _ = writeln!(out, "{name} -> {}", projected.laurent_form());
                    }
                    Err(e) => {
                        let _ = writeln!(err, "error: {e}");
                        return EXIT_SEMANTIC;
                    }
                }
            }
            EXIT_OK
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_SEMANTIC
        }
    }
}

fn pi_file(path: &Path, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let statements = match parse_path(path, err) {
        Ok(s) => s,
        Err(code) => return code,
    };
    let (mut session, skip) = match session_from_statements(&statements, err) {
        Ok(s) => s,
        Err(code) => return code,
    };
    // Variables are the let declarations, in file order.
    let mut variables: Vec<String> = Vec::new();
    for statement in &statements[skip..] {
        match statement {
            Statement::Unit { .. } | Statement::Let { .. } => {
                if let Err(e) = session.apply(statement) {
                    let _ = writeln!(err, "{}: error: {e}", path.display());
                    return EXIT_SEMANTIC;
                }
                if let Statement::Let { name, .. } = statement {
                    variables.push(name.clone());
                }
            }
            _ => {}
        }
    }
    let dims: Vec<_> = variables
        .iter()
        .map(|name| session.lookup(name).expect("let-bound name").dims().clone())
        .collect();
    match pi_groups(&dims) {
        Ok(groups) => {
            for group in groups {
                let rendered: Vec<String> = variables
                    .iter()
                    .zip(&group)
                    .filter(|(_, &e)| e != 0)
                    .map(|(name, &e)| {
                        if e == 1 {
                            name.clone()
                        } else {
                            format!("{name}^{e}")
                        }
                    })
                    .collect();
                let _ = writeln!(out, "{}", rendered.join(" "));
            }
            EXIT_OK
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_SEMANTIC
        }
    }
}
