use std::io::{ErrorKind, Write};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};

use modcalc::dsl::{parse_class, render_class, render_curve, render_rational, DslError};
use modcalc::ledger::{self, resolve_curve};
use modcalc::pencils::CatalogId;
use modcalc::{pair, SpaceId};

#[derive(Parser)]
#[command(
    name = "modcalc",
    version,
    about = "Exact divisor classes and test curves on moduli of pointed and spin curves"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a class expression and print it in canonical form.
    Eval {
        expr: String,
        /// Target space, "M(g,n)" or "S+(g)".
        #[arg(long)]
        space: String,
    },
    /// Intersect a curve (catalog id or "sym=value, ...") with a class.
    Pair {
        curve: String,
        class: String,
        /// Required unless the curve is a catalog id.
        #[arg(long)]
        space: Option<String>,
    },
    /// Recompute the built-in claim ledger.
    Verify {
        /// Glob over claim ids, e.g. "g7.*".
        #[arg(long)]
        filter: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Show the catalog of test curves.
    Catalog {
        /// Print only the ids.
        #[arg(long)]
        list: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

fn usage(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

/// Writes to stdout; a closed pipe (`modcalc catalog | head`) is not an error.
fn emit(text: &str, code: ExitCode) -> ExitCode {
    let mut out = std::io::stdout().lock();
    match out.write_all(text.as_bytes()).and_then(|()| out.flush()) {
        Ok(()) => code,
        Err(e) if e.kind() == ErrorKind::BrokenPipe => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

fn space_arg(text: &str) -> Result<SpaceId, String> {
    SpaceId::from_str(text).map_err(|e| e.to_string())
}

fn report_dsl(err: &DslError, text: &str) -> ExitCode {
    eprintln!("error: {err}");
    let span = match err {
        DslError::Syntax { pos, .. } => Some((*pos, *pos + 1)),
        DslError::Type { span, .. } | DslError::Calc { span, .. } => Some((span.start, span.end)),
    };
    if let Some((start, end)) = span {
        let end = end.clamp(start + 1, text.len().max(start + 1));
        eprintln!("  {text}");
        eprintln!("  {}{}", " ".repeat(start), "^".repeat(end - start));
    }
    ExitCode::from(2)
}

fn cmd_eval(expr: &str, space: &str) -> ExitCode {
    let space = match space_arg(space) {
        Ok(s) => s,
        Err(e) => return usage(e),
    };
    match parse_class(expr, space) {
        Ok(d) => emit(&format!("{}\n", render_class(&d)), ExitCode::SUCCESS),
        Err(e) => report_dsl(&e, expr),
    }
}

fn cmd_pair(curve: &str, class: &str, space: Option<&str>) -> ExitCode {
    let space = match space.map(space_arg).transpose() {
        Ok(s) => s,
        Err(e) => return usage(e),
    };
    let curve = match resolve_curve(curve, space) {
        Ok(c) => c,
        Err(e) => return usage(e),
    };
    let d = match parse_class(class, curve.space()) {
        Ok(d) => d,
        Err(e) => return report_dsl(&e, class),
    };
    match pair(&curve, &d) {
        Ok(v) => emit(&format!("{}\n", render_rational(&v)), ExitCode::SUCCESS),
        Err(e) => usage(e),
    }
}

fn cmd_verify(filter: Option<&str>, format: Format) -> ExitCode {
    let report = match ledger::verify(filter) {
        Ok(r) => r,
        Err(e) => return usage(e),
    };
    let text = match format {
        Format::Text => report.to_text(),
        Format::Json => report.to_json() + "\n",
    };
    emit(&text, ExitCode::from(report.exit_code() as u8))
}

fn cmd_catalog(list: bool) -> ExitCode {
    let mut text = String::new();
    for id in CatalogId::examples() {
        let line = match (list, id.space(), id.curve()) {
            (true, _, _) => id.to_string(),
            (false, Ok(space), Ok(curve)) => format!("{id} on {space}: {}", render_curve(&curve)),
            (false, Err(e), _) | (false, _, Err(e)) => format!("{id}: {e}"),
        };
        text.push_str(&line);
        text.push('\n');
    }
    emit(&text, ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match &cli.command {
        Command::Eval { expr, space } => cmd_eval(expr, space),
        Command::Pair {
            curve,
            class,
            space,
        } => cmd_pair(curve, class, space.as_deref()),
        Command::Verify { filter, format } => cmd_verify(filter.as_deref(), *format),
        Command::Catalog { list } => cmd_catalog(*list),
    }
}
