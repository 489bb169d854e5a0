//! `adinkra`: command-line access to codes, compositions, Adinkras, code
//! loops and dessins.
//!
//! Exit status is 0 on success, 1 on domain errors and failed verification,
//! 2 on I/O, parse and usage errors. Errors are written to stderr as
//! `{"kind": …, "detail": …}`.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use adinkra_core::adinkra::{Adinkra, AdinkraRecord, ChromotopologyReport, SusyRelation};
use adinkra_core::codeloop::{self, CodeLoop, ExtensionReport};
use adinkra_core::codes::CodeRecord;
use adinkra_core::dessin::{self, Dessin, DessinRecord, SymmetryReport};
use adinkra_core::operad::{self, CompositionInput};
use adinkra_core::verify::{self, VerifyConfig};
use adinkra_core::{enumerate_doubly_even, BinaryCode};
use clap::{Parser, Subcommand};
use serde::{Deserialize, Serialize};

#[derive(Parser, Debug)]
#[command(name = "adinkra", version, about = "Doubly-even codes, Adinkras, code loops and dessins")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Doubly-even codes.
    #[command(subcommand)]
    Codes(CodesCommand),
    /// Operadic composition and insertion.
    #[command(subcommand)]
    Operad(OperadCommand),
    /// Adinkras from codes.
    #[command(subcommand)]
    Adinkra(AdinkraCommand),
    /// Code loops.
    #[command(subcommand)]
    Loop(LoopCommand),
    /// Dessins of chromotopologies.
    #[command(subcommand)]
    Dessin(DessinCommand),
    /// Runs every invariant suite over codes up to the given length.
    VerifyAll {
        #[arg(long, default_value_t = 6)]
        length: usize,
        #[arg(long, default_value_t = codeloop::DEFAULT_ELEMENT_CAP)]
        element_cap: usize,
        #[arg(long, default_value_t = dessin::DEFAULT_MONODROMY_CAP)]
        monodromy_cap: usize,
    },
}

#[derive(Subcommand, Debug)]
enum CodesCommand {
    /// Lists every doubly-even code of the given length.
    Enumerate {
        #[arg(long, default_value_t = 6)]
        length: usize,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
enum OperadCommand {
    /// Computes γ(outer; inner…).
    Compose {
        #[arg(long)]
        outer: PathBuf,
        #[arg(long, num_args = 1.., required = true)]
        inner: Vec<PathBuf>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Computes the partial composition outer ∘ᵢ inner for a 1-based slot.
    Insert {
        #[arg(long)]
        outer: PathBuf,
        #[arg(long)]
        slot: usize,
        #[arg(long)]
        inner: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
enum AdinkraCommand {
    /// Builds the valise Adinkra of a code with its canonical odd-dashing.
    Build {
        #[arg(long)]
        code: PathBuf,
        /// Graphviz output.
        #[arg(long)]
        dot: Option<PathBuf>,
        /// Supersymmetry transformation rules as JSON.
        #[arg(long)]
        relations: Option<PathBuf>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
enum LoopCommand {
    /// Builds the code loop of a code.
    Build {
        #[arg(long)]
        code: PathBuf,
        #[arg(long, default_value_t = codeloop::DEFAULT_ELEMENT_CAP)]
        element_cap: usize,
        /// Multiplication table as CSV.
        #[arg(long)]
        cayley: Option<PathBuf>,
        /// Runs the Moufang, associativity and extension checks.
        #[arg(long)]
        verify: bool,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
enum DessinCommand {
    /// Derives the dessin of the code's chromotopology.
    FromCode {
        #[arg(long)]
        code: PathBuf,
        #[arg(long, default_value_t = dessin::DEFAULT_MONODROMY_CAP)]
        monodromy_cap: usize,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Debug)]
enum Failure {
    Domain(adinkra_core::Error),
    Io(String),
    Parse(String),
    Usage(String),
    Verification(String),
}

impl Failure {
    fn kind(&self) -> &str {
        match self {
            Failure::Domain(e) => e.kind(),
            Failure::Io(_) => "Io",
            Failure::Parse(_) => "Parse",
            Failure::Usage(_) => "Usage",
            Failure::Verification(_) => "VerificationFailed",
        }
    }

    fn detail(&self) -> String {
        match self {
            Failure::Domain(e) => e.to_string(),
            Failure::Io(s) | Failure::Parse(s) | Failure::Usage(s) | Failure::Verification(s) => {
                s.clone()
            }
        }
    }

    fn exit_code(&self) -> u8 {
        match self {
            Failure::Domain(adinkra_core::Error::Parse(_)) => 2,
            Failure::Domain(_) | Failure::Verification(_) => 1,
            Failure::Io(_) | Failure::Parse(_) | Failure::Usage(_) => 2,
        }
    }
}

impl From<adinkra_core::Error> for Failure {
    fn from(e: adinkra_core::Error) -> Self {
        Failure::Domain(e)
    }
}

#[derive(Serialize)]
struct ErrorPayload<'a> {
    kind: &'a str,
    detail: String,
}

type CliResult<T> = Result<T, Failure>;

#[derive(Serialize, Deserialize)]
struct AdinkraOutput {
    adinkra: AdinkraRecord,
    chromotopology: ChromotopologyReport,
    odd_dashing_count_log2: usize,
    symmetry_group_order: u128,
}

#[derive(Serialize, Deserialize)]
struct LoopOutput {
    code: CodeRecord,
    order: usize,
    elements: Vec<String>,
    /// `theta[i][j]` for codewords in lexicographic order.
    theta: Vec<Vec<u8>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    checks: Option<LoopChecks>,
}

#[derive(Serialize, Deserialize)]
struct LoopChecks {
    latin_square: bool,
    moufang: bool,
    associative: bool,
    extension: ExtensionReport,
}

#[derive(Serialize, Deserialize)]
struct DessinOutput {
    #[serde(flatten)]
    record: DessinRecord,
    transitive: bool,
    genus: Option<u64>,
    cycle_check: bool,
    monodromy_order: Option<usize>,
    symmetry: SymmetryReport,
}

fn read_file(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, contents: &str) -> CliResult<()> {
    fs::write(path, contents).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn read_code(path: &Path) -> CliResult<BinaryCode> {
    let record: CodeRecord = serde_json::from_str(&read_file(path)?)
        .map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))?;
    Ok(BinaryCode::try_from(record)?)
}

fn to_json<T: Serialize>(value: &T) -> CliResult<String> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| Failure::Parse(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

fn emit(output: Option<&Path>, text: &str) -> CliResult<()> {
    match output {
        Some(path) => write_file(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn require_doubly_even(code: &BinaryCode) -> CliResult<()> {
    if code.is_doubly_even() {
        Ok(())
    } else {
        Err(adinkra_core::Error::NotDoublyEven(code.to_string()).into())
    }
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Codes(CodesCommand::Enumerate { length, output }) => {
            let records: Vec<CodeRecord> = enumerate_doubly_even(length, usize::MAX)?
                .iter()
                .map(BinaryCode::to_record)
                .collect();
            emit(output.as_deref(), &to_json(&records)?)
        }
        Command::Operad(OperadCommand::Compose {
            outer,
            inner,
            output,
        }) => {
            let outer = read_code(&outer)?;
            let inners = inner.iter().map(|p| read_code(p)).collect::<CliResult<Vec<_>>>()?;
            for c in std::iter::once(&outer).chain(&inners) {
                require_doubly_even(c)?;
            }
            let composed = operad::gamma(&CompositionInput::new(outer, inners)?)?;
            emit(output.as_deref(), &to_json(&composed.to_record())?)
        }
        Command::Operad(OperadCommand::Insert {
            outer,
            slot,
            inner,
            output,
        }) => {
            let outer = read_code(&outer)?;
            let inner = read_code(&inner)?;
            require_doubly_even(&outer)?;
            require_doubly_even(&inner)?;
            let result = operad::insert(&outer, slot, &inner)?;
            emit(output.as_deref(), &to_json(&result.to_record())?)
        }
        Command::Adinkra(AdinkraCommand::Build {
            code,
            dot,
            relations,
            output,
        }) => {
            let code = read_code(&code)?;
            let adinkra = Adinkra::from_code(&code)?;
            let solution = adinkra_core::adinkra::solve_dashing(adinkra.chromotopology())?;
            if let Some(path) = dot {
                write_file(&path, &adinkra.export_dot())?;
            }
            if let Some(path) = relations {
                let rules: Vec<SusyRelation> = adinkra.susy_relations();
                write_file(&path, &to_json(&rules)?)?;
            }
            let out = AdinkraOutput {
                adinkra: adinkra.to_record(),
                chromotopology: adinkra.chromotopology().verify(),
                odd_dashing_count_log2: solution.nullity,
                symmetry_group_order: adinkra.symmetry_group_order()?,
            };
            emit(output.as_deref(), &to_json(&out)?)
        }
        Command::Loop(LoopCommand::Build {
            code,
            element_cap,
            cayley,
            verify,
            output,
        }) => {
            let code = read_code(&code)?;
            let lp = CodeLoop::new(&code, element_cap)?;
            let words = lp.cocycle().words();
            let theta = words
                .iter()
                .map(|u| {
                    words
                        .iter()
                        .map(|v| lp.cocycle().value(u, v).map(u8::from))
                        .collect::<Result<Vec<_>, _>>()
                })
                .collect::<Result<Vec<_>, _>>()?;
            if let Some(path) = cayley {
                write_file(&path, &lp.cayley_table()?.to_csv()?)?;
            }
            let checks = if verify {
                Some(LoopChecks {
                    latin_square: lp.cayley_table()?.is_latin_square(),
                    moufang: lp.is_moufang()?,
                    associative: lp.is_associative()?,
                    extension: lp.verify_extension()?,
                })
            } else {
                None
            };
            let out = LoopOutput {
                code: code.to_record(),
                order: lp.order(),
                elements: lp.elements().iter().map(ToString::to_string).collect(),
                theta,
                checks,
            };
            emit(output.as_deref(), &to_json(&out)?)
        }
        Command::Dessin(DessinCommand::FromCode {
            code,
            monodromy_cap,
            output,
        }) => {
            let code = read_code(&code)?;
            let adinkra = Adinkra::from_code(&code)?;
            let ch = adinkra.chromotopology();
            let d = Dessin::from_chromotopology(ch)?;
            let out = DessinOutput {
                record: d.to_record(),
                transitive: d.is_transitive(),
                genus: d.genus().ok(),
                cycle_check: d.verify_cycle_structure(ch.n_colors(), ch.vertex_count() / 2),
                monodromy_order: d.monodromy_order(monodromy_cap),
                symmetry: dessin::symmetry_report(&adinkra)?,
            };
            emit(output.as_deref(), &to_json(&out)?)
        }
        Command::VerifyAll {
            length,
            element_cap,
            monodromy_cap,
        } => {
            if element_cap == 0 || monodromy_cap == 0 {
                return Err(Failure::Usage("caps must be positive".into()));
            }
            let results = verify::verify_all(&VerifyConfig {
                length,
                element_cap,
                monodromy_cap,
            })?;
            print!("{}", verify::render_table(&results));
            let failed: Vec<&str> = results.iter().filter(|r| !r.passed()).map(|r| r.name).collect();
            if failed.is_empty() {
                Ok(())
            } else {
                Err(Failure::Verification(format!("failed suites: {}", failed.join(", "))))
            }
        }
    }
}

/// Accepts `codes-enumerate`-style names by splitting them into the nested form.
fn normalize_args(mut args: Vec<String>) -> Vec<String> {
    const GROUPED: [(&str, &str, &str); 6] = [
        ("codes-enumerate", "codes", "enumerate"),
        ("operad-compose", "operad", "compose"),
        ("operad-insert", "operad", "insert"),
        ("adinkra-build", "adinkra", "build"),
        ("loop-build", "loop", "build"),
        ("dessin-from-code", "dessin", "from-code"),
    ];
    if let Some(first) = args.get(1) {
        if let Some((_, group, sub)) = GROUPED.iter().find(|(alias, _, _)| alias == first) {
            args.splice(1..2, [group.to_string(), sub.to_string()]);
        }
    }
    args
}

fn main() -> ExitCode {
    let args = normalize_args(std::env::args().collect());
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let failure = Failure::Usage(e.to_string().trim().to_string());
            return report(&failure);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => report(&failure),
    }
}

fn report(failure: &Failure) -> ExitCode {
    let payload = ErrorPayload {
        kind: failure.kind(),
        detail: failure.detail(),
    };
    eprintln!(
        "{}",
        serde_json::to_string(&payload).expect("error payload serializes")
    );
    ExitCode::from(failure.exit_code())
}
