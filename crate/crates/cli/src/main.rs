use std::io::Write;
use std::path::Path;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use finring::corpus::{default_corpus, enumerate, CorpusSpec};
use finring::dsl::{parse_and_resolve, parse_corpus};
use finring::gallery::{gallery, lookup};
use finring::report::{classify_spec, Bounds};
use finring::verify::{parse_plan, verify};
use finring::{Error, FormalMatrixSpec};

#[derive(Parser)]
#[command(
    name = "finring",
    version,
    about = "Structure and QF/Frobenius classification of finite rings"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify one ring.
    Classify {
        /// A spec file, `gallery:NAME`, or `gallery NAME`.
        #[arg(required = true, num_args = 1..=2)]
        target: Vec<String>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Leave timings out of the report.
        #[arg(long)]
        no_timings: bool,
        #[command(flatten)]
        bounds: BoundArgs,
    },
    /// Run theorem suites on a ring or a corpus.
    Verify {
        /// A spec file, `gallery:NAME`, or `gallery NAME`.
        #[arg(num_args = 0..=2)]
        target: Vec<String>,
        /// `default`, a file of ring specs, or `gallery:NAME`.
        #[arg(long, conflicts_with = "target")]
        corpus: Option<String>,
        /// Comma-separated theorem identifiers, or `all`.
        #[arg(long, required = true)]
        theorems: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[command(flatten)]
        bounds: BoundArgs,
    },
    /// Sweep the generated corpus and print one JSON report per profile.
    Enumerate {
        #[arg(long)]
        no_timings: bool,
        #[command(flatten)]
        bounds: BoundArgs,
    },
    /// Named example rings.
    Gallery {
        #[command(subcommand)]
        action: GalleryAction,
    },
}

#[derive(Subcommand)]
enum GalleryAction {
    List,
    /// Print the source of a gallery ring.
    Show {
        name: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args)]
struct BoundArgs {
    /// Largest module whose submodule lattice is enumerated.
    #[arg(long)]
    bound_lattice: Option<usize>,
    /// Largest ring on which all one-sided ideals are enumerated.
    #[arg(long)]
    bound_dring: Option<usize>,
    /// Largest ring for the Baer oracle.
    #[arg(long)]
    bound_baer: Option<usize>,
    /// Largest ring order in the generated corpus.
    #[arg(long)]
    max_order: Option<usize>,
}

impl BoundArgs {
    fn bounds(&self) -> Bounds {
        let d = Bounds::default();
        Bounds {
            lattice: self.bound_lattice.unwrap_or(d.lattice),
            dring: self.bound_dring.unwrap_or(d.dring),
            baer: self.bound_baer.unwrap_or(d.baer),
            max_order: self.max_order.unwrap_or(d.max_order),
        }
    }
}

/// An error with the file it came from, if any.
struct Failure {
    path: Option<String>,
    error: Error,
}

impl From<Error> for Failure {
    fn from(error: Error) -> Failure {
        Failure { path: None, error }
    }
}

fn in_file<T>(path: &str, r: Result<T, Error>) -> Result<T, Failure> {
    r.map_err(|error| Failure {
        path: Some(path.to_string()),
        error,
    })
}

fn load_target(target: &[String]) -> Result<(String, FormalMatrixSpec), Failure> {
    let name = match target {
        [g, name] if g == "gallery" => Some(name.as_str()),
        [t] => t.strip_prefix("gallery:"),
        _ => return Err(Error::InvalidParameters(format!("cannot read target {target:?}")).into()),
    };
    if let Some(name) = name {
        let entry = lookup(name)?;
        return Ok((entry.name.to_string(), entry.spec()));
    }
    let path = &target[0];
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidParameters(format!("{path}: {e}")))?;
    in_file(path, parse_and_resolve(&text))
}

fn load_corpus(corpus: &str, bounds: &Bounds) -> Result<Vec<CorpusSpec>, Failure> {
    if corpus == "default" {
        return Ok(default_corpus(bounds)?);
    }
    if corpus.starts_with("gallery:") {
        let (name, spec) = load_target(&[corpus.to_string()])?;
        return Ok(vec![CorpusSpec::new(name, spec)]);
    }
    let text = std::fs::read_to_string(Path::new(corpus))
        .map_err(|e| Error::InvalidParameters(format!("{corpus}: {e}")))?;
    Ok(in_file(corpus, parse_corpus(&text))?
        .into_iter()
        .map(|(name, spec)| CorpusSpec::new(name, spec))
        .collect())
}

fn run(cli: Cli) -> Result<ExitCode, Failure> {
    let mut out = std::io::stdout().lock();
    match cli.command {
        Command::Classify {
            target,
            format,
            no_timings,
            bounds,
        } => {
            let (name, spec) = load_target(&target)?;
            let mut report = classify_spec(&name, &spec, &bounds.bounds())?;
            if no_timings {
                report.timings = None;
            }
            match format {
                Format::Json => writeln!(out, "{}", report.to_json()),
                Format::Text => write!(out, "{}", report.to_text()),
            }
            .ok();
        }
        Command::Verify {
            target,
            corpus,
            theorems,
            format,
            bounds,
        } => {
            let plan = parse_plan(&theorems)?;
            let bounds = bounds.bounds();
            let corpus = match (corpus, target.is_empty()) {
                (Some(c), _) => load_corpus(&c, &bounds)?,
                (None, false) => {
                    let (name, spec) = load_target(&target)?;
                    vec![CorpusSpec::new(name, spec)]
                }
                (None, true) => default_corpus(&bounds)?,
            };
            let report = verify(&corpus, &plan, &bounds)?;
            match format {
                Format::Json => {
                    writeln!(
                        out,
                        "{}",
                        serde_json::to_string(&report).expect("reports serialize")
                    )
                    .ok();
                }
                Format::Text => {
                    write!(out, "{report}").ok();
                    for o in &report.outcomes {
                        if report.rings == 1 {
                            for note in &o.notes {
                                writeln!(out, "{}: {note}", o.theorem).ok();
                            }
                        }
                        for c in &o.counterexamples {
                            let json = serde_json::to_string(c).expect("counterexamples serialize");
                            writeln!(out, "counterexample {}: {json}", o.theorem).ok();
                        }
                    }
                }
            }
            if !report.passed() {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Enumerate { no_timings, bounds } => {
            for (_, mut report) in enumerate(&bounds.bounds())? {
                if no_timings {
                    report.timings = None;
                }
                writeln!(out, "{}", report.to_json()).ok();
            }
        }
        Command::Gallery { action } => match action {
            GalleryAction::List => {
                let entries = gallery();
                let width = entries.iter().map(|e| e.name.len()).max().unwrap_or(0);
                for e in entries {
                    writeln!(out, "{:<width$}  {}", e.name, e.summary).ok();
                }
            }
            GalleryAction::Show { name } => {
                write!(out, "{}", lookup(&name)?.source).ok();
            }
        },
    }
    Ok(ExitCode::SUCCESS)
}

fn configure_threads() {
    let Some(n) = std::env::var("FINRING_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
    else {
        return;
    };
    if n > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .ok();
    }
}

fn main() -> ExitCode {
    configure_threads();
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(Failure { path, error }) => {
            match path {
                Some(p) => eprintln!("error: {p}:{error}"),
                None => eprintln!("error: {error}"),
            }
            ExitCode::from(if error.is_internal() { 3 } else { 2 })
        }
    }
}
