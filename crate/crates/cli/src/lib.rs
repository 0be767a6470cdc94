//! Command-line front end for the formal group law engine.
//!
//! The binary entry point is a thin wrapper around [`run`], which parses an
//! argument vector, executes the subcommand, and writes the output document
//! (canonical JSON by default) to standard output or `--output`. Output is
//! byte-identical across runs for identical inputs: coefficient lists follow
//! the engine's canonical graded-lexicographic order, JSON object keys are
//! sorted, and nothing time- or environment-dependent is emitted.

pub mod commands;
pub mod document;

use std::ffi::OsString;
use std::io::Write;

use clap::Parser;

use commands::{Cli, Format};

/// Parse and execute an argument vector, writing the output document to
/// `out`. Diagnostics go to stderr. Returns the process exit code: 0 on
/// success, 1 when a certificate's verdict is false, 2 on usage, parse, or
/// precondition errors.
pub fn run<I, T, W>(args: I, out: &mut W) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
    W: Write,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // clap renders help/version on stdout (exit 0) and usage errors
            // on stderr (exit 2)
            let code = e.exit_code();
            let _ = e.print();
            return code;
        }
    };
    let format = cli.format;
    let output = cli.output.clone();
    match commands::execute(cli.command) {
        Ok(report) => {
            let body = match format {
                Format::Json => {
                    let mut s = serde_json::to_string_pretty(&report.value)
                        .expect("documents are serializable");
                    s.push('\n');
                    s
                }
                Format::Text => {
                    let mut s = report.text;
                    s.push('\n');
                    s
                }
            };
            match output {
                Some(path) => {
                    if let Err(e) = std::fs::write(&path, body) {
                        eprintln!("error: cannot write {}: {e}", path.display());
                        return 2;
                    }
                }
                None => {
                    if out.write_all(body.as_bytes()).is_err() {
                        return 2;
                    }
                }
            }
            report.exit
        }
        Err(diagnostic) => {
            eprintln!("error: {diagnostic}");
            2
        }
    }
}
