//! Command-line surface.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use xalg_core::limits::set_size_limit;

use crate::bundle::{parse_bundle, serialize_bundle, Bundle};
use crate::catalog::catalog;
use crate::registry::{checkers, conversions, describe, enumerators, roundtrips, EnumArgs};
use crate::report::{CheckReport, Failure};
use crate::resolve::Resolver;

#[derive(Parser, Debug)]
#[command(name = "xalg", version, about = "Check and convert crossed modules, internal categories and crossed squares")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run the checker for one entry, or for every entry of a kind.
    Check {
        /// group, hom, action, xmod, ggpd, catxmod or xsq
        kind: String,
        name: Option<String>,
        /// bundle file, or `catalog` for the built-in entries
        #[arg(short = 'f', long = "file")]
        file: Option<String>,
    },
    /// Apply a functor and print the result as a bundle.
    Convert {
        /// phi, psi, eta, psi_sq, pair or discrete
        functor: String,
        name: String,
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
        #[arg(short = 'f', long = "file")]
        file: Option<String>,
    },
    /// Verify that a structure survives the round trip through its functors.
    Roundtrip {
        /// xmod, catxmod or xsq
        kind: String,
        name: String,
        #[arg(short = 'f', long = "file")]
        file: Option<String>,
    },
    /// Count structures on given carriers by brute force.
    Enumerate {
        /// action, xmod, ggpd or hmap
        kind: String,
        #[arg(long)]
        a: Option<String>,
        #[arg(long)]
        b: Option<String>,
        /// square whose frame is completed (hmap only)
        #[arg(long)]
        square: Option<String>,
        #[arg(long)]
        classify: bool,
        #[arg(short = 'f', long = "file")]
        file: Option<String>,
    },
    /// Inspect the built-in catalog.
    Catalog {
        #[command(subcommand)]
        action: CatalogCommand,
    },
    /// List the registered checkers, functors, enumerators and round trips.
    Strategies,
}

#[derive(Subcommand, Debug)]
pub enum CatalogCommand {
    List,
    Emit { name: String },
}

fn load(file: &Option<String>) -> Result<Bundle, Failure> {
    match file.as_deref() {
        None | Some("catalog") => Ok(catalog().reference_bundle()),
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| Failure::input(format!("{path}: {e}")))?;
            parse_bundle(&text).map_err(|e| Failure::input(format!("{path}: {e}")))
        }
    }
}

fn unknown(what: &str, name: &str, known: Vec<&'static str>) -> Failure {
    Failure::input(format!("unknown {what} {name:?}; expected one of: {}", known.join(", ")))
}

/// Print reports and pick the exit code. Hitting a size limit is an input
/// error rather than a failed axiom.
fn print_reports(out: &mut dyn Write, reports: &[CheckReport]) -> Result<i32, Failure> {
    if let Some(r) = reports.iter().find(|r| r.axiom.as_deref().is_some_and(|a| a.ends_with("size_limit"))) {
        return Err(Failure::input(format!("{}: {}", r.subject, r.message.as_deref().unwrap_or("size limit"))));
    }
    for (i, r) in reports.iter().enumerate() {
        if i > 0 {
            writeln!(out).map_err(Failure::input)?;
        }
        write!(out, "{r}").map_err(Failure::input)?;
    }
    Ok(if reports.iter().all(CheckReport::passed) { 0 } else { 1 })
}

fn execute(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    match cli.command {
        Command::Check { kind, name, file } => {
            let bundle = load(&file)?;
            let reg = checkers();
            let checker = reg.get(&kind).ok_or_else(|| unknown("kind", &kind, reg.names()))?;
            let r = Resolver::new(&bundle);
            let names = match name {
                Some(n) => vec![n],
                None => checker.names(&bundle),
            };
            let reports = names.iter().map(|n| checker.check(&r, n)).collect::<Result<Vec<_>, _>>()?;
            print_reports(out, &reports)
        }
        Command::Convert { functor, name, output, file } => {
            let bundle = load(&file)?;
            let reg = conversions();
            let conv = reg.get(&functor).ok_or_else(|| unknown("functor", &functor, reg.names()))?;
            let result = conv.convert(&Resolver::new(&bundle), &name, &format!("{functor}_{name}"));
            let result = match result {
                Ok(b) => b,
                Err(Failure::Check(report)) => return print_reports(out, &[*report]),
                Err(e) => return Err(e),
            };
            let text = serialize_bundle(&result);
            match output {
                Some(path) => {
                    std::fs::write(&path, text).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?
                }
                None => out.write_all(text.as_bytes()).map_err(Failure::input)?,
            }
            Ok(0)
        }
        Command::Roundtrip { kind, name, file } => {
            let bundle = load(&file)?;
            let reg = roundtrips();
            let rt = reg.get(&kind).ok_or_else(|| unknown("kind", &kind, reg.names()))?;
            match rt.run(&Resolver::new(&bundle), &name) {
                Ok(reports) => print_reports(out, &reports),
                Err(Failure::Check(report)) => print_reports(out, &[*report]),
                Err(e) => Err(e),
            }
        }
        Command::Enumerate { kind, a, b, square, classify, file } => {
            let bundle = load(&file)?;
            let reg = enumerators();
            let en = reg.get(&kind).ok_or_else(|| unknown("kind", &kind, reg.names()))?;
            let args = EnumArgs { a, b, square, classify };
            match en.run(&Resolver::new(&bundle), &args) {
                Ok(report) => {
                    write!(out, "{report}").map_err(Failure::input)?;
                    let _ = writeln!(err, "wall time: {:?}", report.wall_time);
                    Ok(0)
                }
                Err(Failure::Check(report)) => print_reports(out, &[*report]),
                Err(e) => Err(e),
            }
        }
        Command::Catalog { action: CatalogCommand::List } => {
            for (kind, name) in catalog().entries() {
                writeln!(out, "{kind} {name}").map_err(Failure::input)?;
            }
            Ok(0)
        }
        Command::Catalog { action: CatalogCommand::Emit { name } } => {
            let b = catalog().emit(&name).ok_or_else(|| Failure::input(format!("no catalog entry named {name:?}")))?;
            out.write_all(serialize_bundle(&b).as_bytes()).map_err(Failure::input)?;
            Ok(0)
        }
        Command::Strategies => {
            out.write_all(describe().as_bytes()).map_err(Failure::input)?;
            Ok(0)
        }
    }
}

fn apply_size_limit() -> Result<(), Failure> {
    match std::env::var("XALG_SIZE_LIMIT") {
        Err(_) => Ok(()),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => {
                // built-in entries are fixed data built under the default bound
                catalog();
                set_size_limit(n);
                Ok(())
            }
            _ => Err(Failure::input(format!("XALG_SIZE_LIMIT must be a positive integer, got {v:?}"))),
        },
    }
}

/// Parse `argv` (including the program name), run it, and return the exit code:
/// 0 on pass, 1 on a check failure, 2 on an input error.
pub fn run_command<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let result = apply_size_limit().and_then(|()| execute(cli, out, err));
    let result = match result {
        Err(Failure::Check(report)) => print_reports(out, &[*report]),
        other => other,
    };
    match result {
        Ok(code) => code,
        Err(Failure::Check(_)) => unreachable!("reports are printed"),
        Err(Failure::Input(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
    }
}
