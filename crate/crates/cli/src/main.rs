use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;
use spectral_invariants::format::{self, Document};
use spectral_invariants::higher::{self, HigherInvariants};
use spectral_invariants::homology::validate_action;
use spectral_invariants::report::{self, ClassLine, HigherLine};
use spectral_invariants::{builtin, expr, Error, Execution, ValidationReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Structured,
}

/// Spectral invariants of filtered chain complexes over Z/2.
#[derive(Parser, Debug)]
#[command(name = "specinv", version)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value = "text")]
    format: OutputFormat,
    /// Run on the calling thread only.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Validate a complex file (ring, degrees, values, flatness, action tables).
    Check { file: PathBuf },
    /// Homology ranks and the spectral number of every basis class.
    Homology { file: PathBuf },
    /// Spectral sequence pages 1 through R.
    Pages {
        file: PathBuf,
        #[arg(long)]
        max_page: u32,
    },
    /// Spectral numbers σ and absolute values c.
    Invariants {
        file: PathBuf,
        /// Class expression, e.g. `top` or `a*p4 + b*p2`.
        #[arg(long)]
        class: Option<String>,
    },
    /// Higher invariants of a page class.
    Higher {
        file: PathBuf,
        #[arg(long)]
        page: u32,
        #[arg(long)]
        class: String,
    },
    /// Nonzero page differentials and the derived bounds.
    Gaps {
        file: PathBuf,
        #[arg(long)]
        max_page: u32,
    },
    /// Everything.
    Report {
        file: PathBuf,
        #[arg(long)]
        max_page: Option<u32>,
    },
    /// Write a built-in example complex.
    Example {
        name: String,
        #[arg(long = "param", allow_hyphen_values = true)]
        params: Vec<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Randomly shift every value by at most ε.
    Perturb {
        file: PathBuf,
        #[arg(long)]
        epsilon: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The dual complex (plain complexes only).
    Dual {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

enum Failure {
    Validation(String),
    Usage(String),
    Refused(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Validation(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Refused(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Validation(m) | Failure::Usage(m) | Failure::Refused(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let m = e.to_string();
        match e {
            Error::Invalid(_) | Error::TruncationArtifact { .. } | Error::InternalConsistency(_) => {
                Failure::Validation(m)
            }
            Error::TruncationInsufficient { .. } => Failure::Refused(m),
            _ => Failure::Usage(m),
        }
    }
}

type Outcome = Result<String, Failure>;

struct Ctx {
    format: OutputFormat,
    exec: Execution,
}

impl Ctx {
    fn emit<T: serde::Serialize>(&self, value: &T, text: impl FnOnce() -> String) -> Outcome {
        Ok(match self.format {
            OutputFormat::Text => text(),
            OutputFormat::Structured => {
                let mut s = serde_json::to_string_pretty(value).expect("report data serializes");
                s.push('\n');
                s
            }
        })
    }
}

fn load(path: &Path) -> Result<Document, Failure> {
    Ok(format::load(path)?)
}

fn write_document(doc: &Document, out: Option<&Path>) -> Outcome {
    let text = format::serialize(doc);
    match out {
        Some(path) => {
            std::fs::write(path, text).map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}

fn check(ctx: &Ctx, doc: &Document) -> Outcome {
    let mut report = doc.complex.validate();
    if !doc.action.is_empty() {
        report.extend(validate_action(&doc.complex, doc.floer_or_self(), &doc.action)?);
    }
    if let Some(f) = &doc.floer {
        report.extend(f.validate());
    }
    if !report.is_ok() {
        let detail = match ctx.format {
            OutputFormat::Text => format!("validation failed\n{report}"),
            OutputFormat::Structured => serde_json::to_string_pretty(&report).expect("report serializes"),
        };
        return Err(Failure::Validation(detail));
    }
    ctx.emit(&json!({ "valid": true, "notes": report.notes }), || notes_text(&report))
}

fn notes_text(report: &ValidationReport) -> String {
    let mut s = String::from("valid\n");
    for n in &report.notes {
        s.push_str(&format!("note: {n}\n"));
    }
    s
}

fn run(cli: Cli) -> Outcome {
    let ctx = Ctx {
        format: cli.format,
        exec: if cli.sequential {
            Execution::Sequential
        } else {
            Execution::Parallel
        },
    };
    match cli.command {
        Command::Check { file } => check(&ctx, &load(&file)?),
        Command::Homology { file } => {
            let doc = load(&file)?;
            let h = report::homology_section(&doc.complex)?;
            ctx.emit(&h, || h.to_string())
        }
        Command::Pages { file, max_page } => {
            let doc = load(&file)?;
            let pages = report::pages(&doc.complex, max_page, ctx.exec)?;
            ctx.emit(&pages, || pages.iter().map(|p| p.to_string()).collect())
        }
        Command::Invariants { file, class } => {
            let doc = load(&file)?;
            let c = &doc.complex;
            match class {
                Some(text) => {
                    let row = report::class_row(c, &expr::parse_class(c, &text)?)?;
                    ctx.emit(&row, || format!("{}\n", ClassLine(&row)))
                }
                None => {
                    let h = report::homology_section(c)?;
                    ctx.emit(&h, || h.to_string())
                }
            }
        }
        Command::Higher { file, page, class } => {
            let doc = load(&file)?;
            let c = &doc.complex;
            let chain = expr::parse_class(c, &class)?;
            let h = HigherInvariants::new(c, page, ctx.exec)?;
            let v = h.value(&h.class(&chain)?)?;
            ctx.emit(&v, || format!("{}\n", HigherLine(&v)))
        }
        Command::Gaps { file, max_page } => {
            let doc = load(&file)?;
            let g = higher::gap_report(&doc.complex, max_page, ctx.exec)?;
            ctx.emit(&g, || g.to_string())
        }
        Command::Report { file, max_page } => {
            let doc = load(&file)?;
            let r = report::build(&doc, max_page, ctx.exec)?;
            ctx.emit(&r, || r.to_string())
        }
        Command::Example { name, params, out } => {
            let doc = Document::new(builtin::example(&name, &params)?);
            write_document(&doc, out.as_deref())
        }
        Command::Perturb {
            file,
            epsilon,
            seed,
            out,
        } => {
            if !(epsilon.is_finite() && epsilon >= 0.0) {
                return Err(Failure::Usage("--epsilon must be a finite non-negative number".into()));
            }
            let doc = load(&file)?;
            let report = doc.complex.validate();
            if !report.is_ok() {
                return Err(Failure::Validation(format!("validation failed\n{report}")));
            }
            let mut next = Document::new(doc.complex.perturb_values(epsilon, seed));
            next.action = doc.action;
            next.floer = doc.floer;
            write_document(&next, out.as_deref())
        }
        Command::Dual { file, out } => {
            let doc = load(&file)?;
            let report = doc.complex.validate();
            if !report.is_ok() {
                return Err(Failure::Validation(format!("validation failed\n{report}")));
            }
            write_document(&Document::new(doc.complex.dualize()?), out.as_deref())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(out.as_bytes());
            ExitCode::SUCCESS
        }
        Err(f) => {
            let m = f.message();
            eprintln!("error: {}", m.trim_end());
            ExitCode::from(f.code())
        }
    }
}
