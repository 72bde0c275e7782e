//! Command-line front end: `lindep check|run|nf`.

use crate::diag::Diagnostic;
use crate::driver::{self, Program, Report};
use crate::pretty;
use clap::{Parser, Subcommand};
use serde::Serialize;
use std::io::{IsTerminal, Write};

pub const EXIT_OK: i32 = 0;
pub const EXIT_TYPE_ERROR: i32 = 1;
pub const EXIT_PARSE_ERROR: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "lindep",
    version,
    about = "Check and run dependent linear programs"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Type-check every definition of the given files.
    Check {
        /// Emit diagnostics as a JSON array on standard output.
        #[arg(long)]
        json: bool,
        #[arg(long)]
        no_color: bool,
        /// Print the productions the solver found for this definition.
        #[arg(long, value_name = "NAME")]
        show_production: Option<String>,
        #[arg(required = true)]
        files: Vec<String>,
    },
    /// Evaluate a definition applied to arguments and print the result.
    Run {
        file: String,
        name: String,
        args: Vec<String>,
    },
    /// Print the normal form of a supply as a multiset of atoms.
    Nf {
        /// Variables in scope, e.g. `x : A, y : B x`.
        #[arg(long, default_value = "")]
        ctx: String,
        /// Load definitions from this file first.
        #[arg(long)]
        file: Option<String>,
        expr: String,
    },
}

/// A diagnostic tagged with the file it belongs to.
#[derive(Serialize)]
struct FileDiagnostic<'a> {
    file: &'a str,
    #[serde(flatten)]
    diagnostic: &'a Diagnostic,
}

struct Output<'a> {
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
    color: bool,
}

impl Output<'_> {
    fn diagnostic(&mut self, path: &str, d: &Diagnostic) {
        let mut line = d.render(path);
        if self.color {
            line = line.replacen("error[", "\x1b[1;31merror\x1b[0m[", 1);
        }
        let _ = writeln!(self.err, "{line}");
    }
}

/// Run the CLI on `args` (including the program name).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_PARSE_ERROR
            } else {
                EXIT_OK
            };
            if e.use_stderr() {
                let _ = write!(err, "{e}");
            } else {
                let _ = write!(out, "{e}");
            }
            return code;
        }
    };
    match cli.command {
        Command::Check {
            json,
            no_color,
            show_production,
            files,
        } => {
            let color = !no_color && !json && std::io::stderr().is_terminal();
            let mut o = Output { out, err, color };
            check(&mut o, &files, json, show_production.as_deref())
        }
        Command::Run { file, name, args } => {
            let mut o = Output {
                out,
                err,
                color: false,
            };
            run_def(&mut o, &file, &name, &args)
        }
        Command::Nf { ctx, file, expr } => {
            let mut o = Output {
                out,
                err,
                color: false,
            };
            nf(&mut o, file.as_deref(), &ctx, &expr)
        }
    }
}

enum Loaded {
    Checked(Report),
    Failed(Diagnostic, i32),
}

fn load(path: &str) -> Loaded {
    let src = match std::fs::read_to_string(path) {
        Ok(s) => s,
        Err(e) => {
            return Loaded::Failed(
                Diagnostic::error("io.read", format!("cannot read `{path}`: {e}")),
                EXIT_PARSE_ERROR,
            )
        }
    };
    match driver::check_source(&src) {
        Ok(r) => Loaded::Checked(r),
        Err(d) => Loaded::Failed(d, EXIT_PARSE_ERROR),
    }
}

fn check(o: &mut Output, files: &[String], json: bool, show: Option<&str>) -> i32 {
    let results = crate::batch::map(files, |f| load(f));
    let mut code = EXIT_OK;
    let mut all: Vec<(String, Diagnostic)> = Vec::new();
    for (path, res) in files.iter().zip(&results) {
        match res {
            Loaded::Failed(d, c) => {
                code = code.max(*c);
                all.push((path.clone(), d.clone()));
            }
            Loaded::Checked(report) => {
                if !report.ok() {
                    code = code.max(EXIT_TYPE_ERROR);
                }
                for d in report.diagnostics() {
                    all.push((path.clone(), d));
                }
                if let Some(name) = show {
                    if let Some(outcome) = report.outcome(name) {
                        show_witnesses(o, path, outcome);
                    }
                }
            }
        }
    }
    if json {
        let items: Vec<FileDiagnostic> = all
            .iter()
            .map(|(file, diagnostic)| FileDiagnostic { file, diagnostic })
            .collect();
        let _ = writeln!(o.out, "{}", serde_json::to_string_pretty(&items).unwrap());
    } else {
        for (path, d) in &all {
            o.diagnostic(path, d);
        }
    }
    if let Some(name) = show {
        let found = results
            .iter()
            .any(|r| matches!(r, Loaded::Checked(rep) if rep.outcome(name).is_some()));
        if !found {
            let _ = writeln!(o.err, "no definition named `{name}`");
            code = code.max(EXIT_TYPE_ERROR);
        }
    }
    code
}

fn show_witnesses(o: &mut Output, path: &str, outcome: &driver::Outcome) {
    if outcome.witnesses.is_empty() {
        let _ = writeln!(
            o.out,
            "{path}: `{}` has no solver obligations",
            outcome.name
        );
    }
    for w in &outcome.witnesses {
        let _ = writeln!(o.out, "{path}:{}", w.render());
    }
}

fn checked_program(o: &mut Output, path: &str) -> Result<Program, i32> {
    match load(path) {
        Loaded::Failed(d, c) => {
            o.diagnostic(path, &d);
            Err(c)
        }
        Loaded::Checked(r) if !r.ok() => {
            for d in r.diagnostics() {
                o.diagnostic(path, &d);
            }
            Err(EXIT_TYPE_ERROR)
        }
        Loaded::Checked(r) => Ok(r.program),
    }
}

fn run_def(o: &mut Output, path: &str, name: &str, args: &[String]) -> i32 {
    let program = match checked_program(o, path) {
        Ok(p) => p,
        Err(c) => return c,
    };
    match driver::run(&program, name, args) {
        Ok(v) => {
            let _ = writeln!(o.out, "{}", pretty::show_closed(&v));
            EXIT_OK
        }
        Err(d) => {
            o.diagnostic("<run>", &d);
            if d.rule.starts_with("parse.") {
                EXIT_PARSE_ERROR
            } else {
                EXIT_TYPE_ERROR
            }
        }
    }
}

fn nf(o: &mut Output, file: Option<&str>, ctx: &str, expr: &str) -> i32 {
    let program = match file {
        Some(path) => match checked_program(o, path) {
            Ok(p) => p,
            Err(c) => return c,
        },
        None => driver::prelude().clone(),
    };
    match driver::supply_nf(&program, ctx, expr) {
        Ok(s) => {
            let _ = writeln!(o.out, "{s}");
            EXIT_OK
        }
        Err(d) => {
            o.diagnostic("<nf>", &d);
            if d.rule.starts_with("parse.") {
                EXIT_PARSE_ERROR
            } else {
                EXIT_TYPE_ERROR
            }
        }
    }
}
