//! Command-line front end for `sodhh`.

mod commands;
pub mod document;
pub mod report;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use sodhh::{FieldSpec, Fp, Q};

pub use document::{
    parse_bimodule_file, parse_quiver_file, parse_quiver_str, BimoduleDocument, QuiverDocument,
};
pub use report::{Entry, Format, Grid, Profile, Report};

/// Prime fields compiled into the binary.
pub const SUPPORTED_PRIMES: &[u64] = &[2, 3, 5, 7, 32003];

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum CliError {
    #[error("schema error: {0}")]
    Schema(String),
    #[error("i/o error: {0}")]
    Io(String),
    #[error("input error: {0}")]
    Input(String),
    #[error("verification failed: {0}")]
    Verification(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Verification(_) => 1,
            _ => 2,
        }
    }
}

impl From<sodhh::Error> for CliError {
    fn from(e: sodhh::Error) -> Self {
        use sodhh::Error as E;
        match e {
            E::NotFull { .. }
            | E::RangeNotCertified(_)
            | E::NormalizationFailed(_)
            | E::NotExceptional(_)
            | E::MutationFailed(_)
            | E::NotStrong { .. } => CliError::Verification(e.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "sodhh",
    version,
    about = "Hochschild (co)homology of quiver algebras and their exceptional collections"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalArgs {
    /// Built-in algebra (see `catalog list`).
    #[arg(long, global = true, conflicts_with = "file")]
    pub catalog: Option<String>,
    /// Quiver document in JSON.
    #[arg(long, global = true)]
    pub file: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = 6)]
    pub max_degree: usize,
    /// `q` or `fp:<p>`; defaults to the document's field, else `q`.
    #[arg(long, global = true)]
    pub field: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Dimensions, center, radical and global dimension.
    Info,
    /// HH^n(A) for n up to the degree bound.
    Cohomology,
    /// HH_n(A) for n up to the degree bound.
    Homology,
    /// Hochschild cohomology with coefficients in a bimodule.
    Coeffs {
        /// `diagonal`, `dual` or a bimodule JSON file.
        #[arg(long)]
        bimodule: String,
    },
    /// Ext of a kernel E into E ∘ T.
    Generalized {
        #[arg(long, value_enum)]
        support: SupportArg,
        /// `diagonal`, `projection:<i>` or `decomposable:<v>,<w>`.
        #[arg(long, default_value = "diagonal")]
        coeff: String,
    },
    /// Compares Ext(A, DA) with HH_•(A).
    SerreCheck,
    /// The collection of indecomposable projectives.
    Collection {
        #[command(subcommand)]
        action: CollectionCommand,
    },
    /// Projection kernels of the projective collection.
    Kernels {
        #[command(subcommand)]
        action: KernelCommand,
    },
    /// Long exact sequence of a catalog gluing.
    LesCheck,
    /// Conditional fullness certificate.
    Fullness {
        /// 1-based indices of a subcollection, e.g. `1,3`.
        #[arg(long, value_delimiter = ',')]
        subset: Option<Vec<usize>>,
    },
    /// Built-in algebras.
    Catalog {
        #[command(subcommand)]
        action: CatalogCommand,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum SupportArg {
    Diagonal,
    Serre,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum DirArg {
    Left,
    Right,
}

#[derive(Subcommand, Debug, Clone)]
pub enum CollectionCommand {
    Check,
    Mutate {
        /// 1-based position.
        #[arg(long)]
        index: usize,
        #[arg(long, value_enum)]
        dir: DirArg,
    },
    Dual,
    /// Filtration of an object: `projective:<vertex>` or `simple:<vertex>`.
    Project {
        #[arg(long)]
        object: String,
    },
}

#[derive(Subcommand, Debug, Clone)]
pub enum KernelCommand {
    Build,
    Orthogonality,
    Additivity,
}

#[derive(Subcommand, Debug, Clone)]
pub enum CatalogCommand {
    List,
    Show { name: String },
}

/// Result of one invocation: the exit code and what goes to stdout and
/// stderr.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn parse_field(s: &str) -> Result<FieldSpec, CliError> {
    if s == "q" {
        return Ok(FieldSpec::Rationals);
    }
    let p = s
        .strip_prefix("fp:")
        .and_then(|p| p.parse::<u64>().ok())
        .ok_or_else(|| CliError::Input(format!("--field: expected q or fp:<p>, got {s:?}")))?;
    if !sodhh::field::is_prime(p) {
        return Err(CliError::Input(format!("--field: {p} is not prime")));
    }
    Ok(FieldSpec::Prime(p))
}

/// Where the algebra comes from.
#[derive(Debug, Clone)]
pub enum Source {
    Catalog(String),
    File(QuiverDocument),
}

fn source(g: &GlobalArgs) -> Result<Option<Source>, CliError> {
    match (&g.catalog, &g.file) {
        (Some(name), _) => {
            if !sodhh::catalog::NAMES.contains(&name.as_str()) {
                return Err(CliError::Input(format!(
                    "unknown catalog algebra {name:?}; available: {}",
                    sodhh::catalog::NAMES.join(", ")
                )));
            }
            Ok(Some(Source::Catalog(name.clone())))
        }
        (None, Some(path)) => Ok(Some(Source::File(parse_quiver_file(path)?))),
        (None, None) => Ok(None),
    }
}

fn field_for(g: &GlobalArgs, src: Option<&Source>) -> Result<FieldSpec, CliError> {
    match (&g.field, src) {
        (Some(f), _) => parse_field(f),
        (None, Some(Source::File(doc))) => Ok(doc.field.spec()),
        _ => Ok(FieldSpec::Rationals),
    }
}

fn execute(cli: &Cli) -> Result<(Report, bool), CliError> {
    if let Command::Catalog { action } = &cli.command {
        return commands::catalog(action);
    }
    let src = source(&cli.global)?
        .ok_or_else(|| CliError::Input("an algebra is required: use --catalog or --file".into()))?;
    let field = field_for(&cli.global, Some(&src))?;
    macro_rules! over {
        ($($p:literal),*) => {
            match field {
                FieldSpec::Rationals => commands::run::<Q>(&cli.command, &cli.global, &src),
                $(FieldSpec::Prime($p) => commands::run::<Fp<$p>>(&cli.command, &cli.global, &src),)*
                FieldSpec::Prime(p) => Err(CliError::Input(format!(
                    "prime {p} is not built in; supported primes: {:?}",
                    SUPPORTED_PRIMES
                ))),
            }
        };
    }
    over!(2, 3, 5, 7, 32003)
}

/// Parses `argv` (including the program name), runs the command and renders
/// the report.
pub fn run_command<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    match execute(&cli) {
        Ok((report, ok)) => Outcome {
            code: if ok { 0 } else { 1 },
            stdout: report.emit(cli.global.format),
            stderr: if ok {
                String::new()
            } else {
                "verification failed\n".into()
            },
        },
        Err(e) => Outcome {
            code: e.exit_code(),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}
