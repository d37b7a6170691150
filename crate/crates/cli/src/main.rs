use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use lieform_core::complex::format_dims;
use lieform_core::lie::catalog::{self, Pair};
use lieform_core::lie::cochains::relative_complex;
use lieform_core::lie::json::{algebra_to_json, load, pair_to_json, Input};
use lieform_core::lie::{LieAlgebra, Subalgebra};
use lieform_core::obstruction::{parse_conditions, Options};
use lieform_core::report::{self, ReportDocument};
use lieform_core::transgression::build_transgression;
use lieform_core::{Error, Result};

#[derive(Parser)]
#[command(name = "lieform", version, about = "Relative Lie algebra cohomology and the rank obstruction to compact Clifford-Klein forms")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Cohomology dimensions of an algebra, or of a pair with --relative.
    Cohomology {
        file: PathBuf,
        /// Use the relative complex of (g, h) instead of (g, 0).
        #[arg(long)]
        relative: bool,
        /// Top degree.
        #[arg(long)]
        cap: Option<u32>,
    },
    /// Primitive invariant forms and their θ-split.
    Primitives { file: PathBuf },
    /// The transgression τ on the primitives, with its checks.
    Transgress { file: PathBuf },
    /// Runs the condition battery on a pair file or builtin pair name.
    Check {
        pair: String,
        #[command(flatten)]
        run: RunArgs,
        /// Output file; standard output when absent.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// The builtin catalog.
    Catalog {
        #[command(subcommand)]
        command: CatalogCommand,
    },
    /// Re-verifies every witness in a report.
    VerifyWitness { report: PathBuf },
}

#[derive(Subcommand)]
enum CatalogCommand {
    /// Runs the battery over builtin pairs.
    Run {
        #[arg(long, conflicts_with = "family")]
        all: bool,
        #[arg(long)]
        family: Option<String>,
        #[command(flatten)]
        run: RunArgs,
        /// Directory receiving report.json and report.md.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Lists builtin pairs.
    List,
    /// Writes the builtin algebras and pairs as JSON input files.
    Export { dir: PathBuf },
}

#[derive(Args)]
struct RunArgs {
    /// Comma-separated subset of i,v,vi,vii,viii; vii always runs.
    #[arg(long, default_value = "i,v,vi,vii,viii")]
    conditions: String,
    /// Degree cap for (i) and (viii).
    #[arg(long)]
    cap: Option<u32>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Record wall time per pair (makes reports non-reproducible).
    #[arg(long)]
    timings: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Markdown,
}

impl RunArgs {
    fn options(&self) -> Result<Options> {
        Ok(Options {
            conditions: parse_conditions(&self.conditions)?,
            cap: self.cap,
        })
    }

    fn render(&self, doc: &ReportDocument) -> String {
        match self.format {
            Format::Json => doc.to_json(),
            Format::Markdown => doc.to_markdown(),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = configure_threads() {
        eprintln!("error: {e}");
        return ExitCode::from(e.exit_code() as u8);
    }
    match execute(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn configure_threads() -> Result<()> {
    let Ok(value) = std::env::var("LIEFORM_THREADS") else {
        return Ok(());
    };
    let n: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|n| *n > 0)
        .ok_or_else(|| Error::schema("LIEFORM_THREADS", format!("expected a positive integer, got {value:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Error::Invariant(e.to_string()))
}

fn execute(command: Command) -> Result<ExitCode> {
    match command {
        Command::Cohomology { file, relative, cap } => {
            let dims = match (load(&file)?, relative) {
                (Input::Pair(p), true) => {
                    let top = cap.unwrap_or((p.g.dim() - p.h.dim()) as u32);
                    relative_complex(&p.g, &p.h, top)?.cohomology().dims
                }
                (Input::Algebra(_), true) => {
                    return Err(Error::schema("$", "--relative needs a pair file with h_basis"));
                }
                (input, false) => {
                    let g = match input {
                        Input::Algebra(g) => g,
                        Input::Pair(p) => p.g,
                    };
                    let top = cap.unwrap_or(g.dim() as u32);
                    relative_complex(&g, &Subalgebra::zero(&g), top)?.cohomology().dims
                }
            };
            println!("{}", format_dims(&dims));
        }
        Command::Primitives { file } => print_primitives(&algebra_of(&file)?)?,
        Command::Transgress { file } => print_transgression(&algebra_of(&file)?)?,
        Command::Check { pair, run, output } => {
            let pair = resolve_pair(&pair)?;
            let doc = report::run(&[pair], &run.options()?, run.timings)?;
            emit(&run.render(&doc), output.as_deref())?;
        }
        Command::Catalog { command } => return catalog_command(command),
        Command::VerifyWitness { report } => {
            let text = fs::read_to_string(&report).map_err(|source| Error::Io {
                path: report.display().to_string(),
                source,
            })?;
            let doc = ReportDocument::from_json(&text)?;
            let checks = doc.verify_witnesses()?;
            for c in &checks {
                println!("{} ({}): {}", c.pair, c.condition, if c.ok { "verified" } else { "FAILED" });
            }
            println!("{} witnesses checked", checks.len());
            if checks.iter().any(|c| !c.ok) {
                return Ok(ExitCode::from(4));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn catalog_command(command: CatalogCommand) -> Result<ExitCode> {
    let pairs = catalog::pairs()?;
    match command {
        CatalogCommand::Run {
            all,
            family,
            run,
            output,
        } => {
            let selected: Vec<Pair> = match (&family, all) {
                (Some(f), _) => pairs.into_iter().filter(|p| &p.family == f).collect(),
                (None, true) => pairs,
                (None, false) => return Err(Error::schema("catalog run", "pass --all or --family NAME")),
            };
            if selected.is_empty() {
                return Err(Error::schema(
                    "--family",
                    format!("no builtin pair in family {:?}; families: {}", family.unwrap_or_default(), catalog::families().join(", ")),
                ));
            }
            let doc = report::run(&selected, &run.options()?, run.timings)?;
            match output {
                Some(dir) => {
                    fs::create_dir_all(&dir).map_err(|source| io_error(&dir, source))?;
                    write(&dir.join("report.json"), &doc.to_json())?;
                    write(&dir.join("report.md"), &doc.to_markdown())?;
                    print!("{}", doc.to_markdown());
                }
                None => print!("{}", run.render(&doc)),
            }
        }
        CatalogCommand::List => {
            for p in pairs {
                println!("{}\t{}\tdim g {}\tdim h {}", p.name, p.family, p.g.dim(), p.h.dim());
            }
        }
        CatalogCommand::Export { dir } => {
            fs::create_dir_all(&dir).map_err(|source| io_error(&dir, source))?;
            for name in catalog::algebra_names() {
                let g = catalog::algebra(name)?;
                write(&dir.join(format!("{name}.json")), &pretty(&algebra_to_json(&g)))?;
            }
            for p in pairs {
                let file = format!("pair_{}.json", p.name.replace('/', "_"));
                write(&dir.join(file), &pretty(&pair_to_json(&p)))?;
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn pretty(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json value");
    s.push('\n');
    s
}

fn algebra_of(file: &Path) -> Result<LieAlgebra> {
    Ok(match load(file)? {
        Input::Algebra(g) => g,
        Input::Pair(p) => p.g,
    })
}

/// A path to a pair file, or the name of a builtin pair.
fn resolve_pair(arg: &str) -> Result<Pair> {
    let path = Path::new(arg);
    if !path.exists() {
        if let Some(p) = catalog::pairs()?.into_iter().find(|p| p.name == arg) {
            return Ok(p);
        }
    }
    match load(path)? {
        Input::Pair(p) => Ok(*p),
        Input::Algebra(_) => Err(Error::schema(format!("{arg}:$.h_basis"), "expected a pair file")),
    }
}

fn print_primitives(g: &LieAlgebra) -> Result<()> {
    let t = build_transgression(g, None)?;
    let p = t.primitives();
    println!("{}: rank {}, degrees {}", g.name(), p.dim(), format_dims(&p.degrees().iter().map(|d| *d as usize).collect::<Vec<_>>()));
    for (i, x) in p.basis().iter().enumerate() {
        println!("P{} (degree {}) = {x}", i + 1, p.degrees()[i]);
    }
    if let Some((plus, minus)) = p.theta_split() {
        println!("θ-split: +1 part {}, −1 part {}", plus.len(), minus.len());
    }
    Ok(())
}

fn print_transgression(g: &LieAlgebra) -> Result<()> {
    let t = build_transgression(g, None)?;
    t.verify_certificates()?;
    for (i, tau) in t.tau().iter().enumerate() {
        println!("τ(P{}) = {tau}", i + 1);
    }
    println!("ρ∘τ = 1: {}", t.rho_tau_is_identity()?);
    println!("θ-compatible: {}", t.theta_compatible());
    Ok(())
}

fn emit(text: &str, output: Option<&Path>) -> Result<()> {
    match output {
        Some(path) => write(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|source| io_error(path, source))
}

fn io_error(path: &Path, source: std::io::Error) -> Error {
    Error::Io {
        path: path.display().to_string(),
        source,
    }
}
