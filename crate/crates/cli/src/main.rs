//! `topo`: exact-arithmetic workbench for point-set topology on ℝ.
//!
//! Subcommands: `run <file>` executes a query script, `repl` starts an
//! interactive session, and `theorem1` produces the end-to-end
//! continuity/discontinuity certificate for the indicator of the open cover
//! U of ℚ. Exit codes: 0 all assertions hold, 1 assertion failed, 2
//! inconclusive (Unknown verdict), 3 usage or parse error.

use clap::{Parser as ClapParser, Subcommand};
use num::BigRational;
use std::io::{BufRead, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use topo_cli::{eval, parser, theorem1};
use topo_core::Rat;

#[derive(ClapParser)]
#[command(
    name = "topo",
    version,
    about = "certified openness, measure, and continuity queries over exact subsets of the real line"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Execute a query script from a UTF-8 text file.
    Run { file: PathBuf },
    /// Interactive session; one statement per line, 'quit' to leave.
    Repl,
    /// Certify that the indicator of paperU(a) is continuous on the Michael
    /// line but not under the countable union axiom.
    Theorem1 {
        /// Total length a of the cover (positive rational, e.g. 1 or 1/2).
        #[arg(long, default_value = "1", value_parser = parse_rat_arg, allow_hyphen_values = true)]
        a: Rat,
        /// Family truncation depth (defaults to TOPO_DEFAULT_TERMS or 1000).
        #[arg(long)]
        terms: Option<u32>,
        /// Emit the report as JSON instead of text.
        #[arg(long)]
        json: bool,
    },
}

fn parse_rat_arg(text: &str) -> Result<Rat, String> {
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n, d),
        None => (text, "1"),
    };
    let n: num::BigInt = num
        .trim()
        .parse()
        .map_err(|_| format!("malformed rational '{text}'"))?;
    let d: num::BigInt = den
        .trim()
        .parse()
        .map_err(|_| format!("malformed rational '{text}'"))?;
    if d == num::BigInt::from(0) {
        return Err("zero denominator".to_string());
    }
    Ok(BigRational::new(n, d))
}

fn main() -> ExitCode {
    // usage errors exit 3; code 2 is reserved for inconclusive verdicts
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => 3,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let code = match cli.command {
        Command::Run { file } => run_file(&file),
        Command::Repl => repl(),
        Command::Theorem1 { a, terms, json } => run_theorem1(a, terms, json),
    };
    ExitCode::from(code as u8)
}

fn run_file(file: &PathBuf) -> i32 {
    let text = match std::fs::read_to_string(file) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", file.display());
            return 3;
        }
    };
    let script = match parser::parse(&text) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e}");
            return 3;
        }
    };
    let mut env = eval::Env::new(eval::default_terms_from_env());
    match eval::run_script(&mut env, &script) {
        Ok((transcript, code)) => {
            print!("{transcript}");
            code
        }
        Err(e) => {
            eprintln!("error: {e}");
            3
        }
    }
}

fn repl() -> i32 {
    let stdin = std::io::stdin();
    let mut env = eval::Env::new(eval::default_terms_from_env());
    let mut symbols = parser::SymbolTable::new();
    let mut worst = 0i32;
    loop {
        eprint!("topo> ");
        let _ = std::io::stderr().flush();
        let mut line = String::new();
        match stdin.lock().read_line(&mut line) {
            Ok(0) => break,
            Ok(_) => {}
            Err(e) => {
                eprintln!("error: {e}");
                return 3;
            }
        }
        let trimmed = line.trim();
        if trimmed == "quit" || trimmed == "exit" {
            break;
        }
        if trimmed.is_empty() {
            continue;
        }
        let script = match parser::parse_with_symbols(&line, &mut symbols) {
            Ok(s) => s,
            Err(e) => {
                eprintln!("error: {e}");
                continue;
            }
        };
        match eval::run_script(&mut env, &script) {
            Ok((transcript, code)) => {
                print!("{transcript}");
                let _ = std::io::stdout().flush();
                worst = worst.max(code);
            }
            Err(e) => eprintln!("error: {e}"),
        }
    }
    worst
}

fn run_theorem1(a: Rat, terms: Option<u32>, json: bool) -> i32 {
    let terms = terms.unwrap_or_else(eval::default_terms_from_env);
    if terms == 0 {
        eprintln!("error: --terms must be at least 1");
        return 3;
    }
    match theorem1::run(a, terms) {
        Ok(report) => {
            if json {
                match serde_json::to_string_pretty(&theorem1::to_json(&report)) {
                    Ok(s) => println!("{s}"),
                    Err(e) => {
                        eprintln!("error: {e}");
                        return 3;
                    }
                }
            } else {
                print!("{}", theorem1::to_text(&report));
            }
            report.outcome.exit_code()
        }
        Err(e) => {
            // precondition violation (a <= 0)
            eprintln!("error: {e}");
            3
        }
    }
}
