//! The `feo` command-line front end.
//!
//! [`run`] takes the argument list and the three standard streams so the
//! whole command surface can be driven from tests.

use std::ffi::OsString;
use std::io::{BufRead, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::explain::{explain, to_json, ExplainError, Explanation, ExplanationType, Question};
use crate::inference::{
    feo_ruleset, saturate_with, InferenceError, Saturation, SaturationOptions, DEFAULT_TRIPLE_CAP,
};
use crate::kb::{self, vocab};
use crate::query::{evaluate, parse_query, render_term};
use crate::rdf::{Graph, Term, Triple};
use crate::turtle::{parse_turtle_document, serialize_ntriples};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_CAP: i32 = 2;
pub const EXIT_UNKNOWN: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "feo",
    version,
    about = "Explain food recommendations over a knowledge graph"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Saturate the data files and write the result as N-Triples.
    Infer {
        #[command(flatten)]
        common: CommonArgs,
        /// Turtle files to load.
        files: Vec<PathBuf>,
    },
    /// Saturate, then evaluate a query file (.rq).
    Query {
        #[command(flatten)]
        common: CommonArgs,
        /// Data files and the query file; the query is the `.rq` file, or
        /// the last one given.
        files: Vec<PathBuf>,
    },
    /// Answer an explanation request.
    Ask {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long = "type", value_enum)]
        kind: KindArg,
        #[arg(long)]
        primary: Option<String>,
        #[arg(long)]
        secondary: Option<String>,
        #[arg(long)]
        hypothetical: Option<String>,
    },
    /// Interactive loop: `ask`, `query <file>`, `reload`, `quit`.
    Repl {
        #[command(flatten)]
        common: CommonArgs,
    },
}

#[derive(Debug, Clone, Args)]
struct CommonArgs {
    /// Data files (Turtle). Without any, the built-in schema and demo data
    /// are used (except by `infer`).
    #[arg(long, num_args = 1.., value_name = "FILE")]
    data: Vec<PathBuf>,
    /// Write results here instead of stdout.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Replace the system's current season.
    #[arg(long)]
    season: Option<String>,
    /// Replace the system's current region.
    #[arg(long)]
    region: Option<String>,
    /// Print the derivation trace to stderr.
    #[arg(long)]
    trace: bool,
    /// Maximum number of derived triples.
    #[arg(long, default_value_t = DEFAULT_TRIPLE_CAP, value_parser = positive)]
    triple_cap: usize,
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be greater than zero".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Tsv,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum KindArg {
    Contextual,
    Contrastive,
    Counterfactual,
}

impl From<KindArg> for ExplanationType {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Contextual => ExplanationType::Contextual,
            KindArg::Contrastive => ExplanationType::Contrastive,
            KindArg::Counterfactual => ExplanationType::Counterfactual,
        }
    }
}

/// Settings shared by every subcommand.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Config {
    pub data_files: Vec<PathBuf>,
    pub season: Option<String>,
    pub region: Option<String>,
    pub format: Format,
    pub trace: bool,
    pub triple_cap: usize,
}

impl Config {
    fn from_args(common: &CommonArgs, data_files: Vec<PathBuf>) -> Self {
        Config {
            data_files,
            season: common.season.clone(),
            region: common.region.clone(),
            format: common.format,
            trace: common.trace,
            triple_cap: common.triple_cap,
        }
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    Io(String),
    #[error(transparent)]
    Cap(#[from] InferenceError),
    #[error("{0}")]
    Unknown(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Parse(_) | CliError::Io(_) => EXIT_USAGE,
            CliError::Cap(_) => EXIT_CAP,
            CliError::Unknown(_) => EXIT_UNKNOWN,
        }
    }
}

impl From<ExplainError> for CliError {
    fn from(e: ExplainError) -> Self {
        match e {
            ExplainError::UnknownIndividual(_) => CliError::Unknown(e.to_string()),
            ExplainError::InvalidQuestion(_) | ExplainError::Json(_) => {
                CliError::Usage(e.to_string())
            }
            ExplainError::Query(_) => CliError::Parse(e.to_string()),
        }
    }
}

/// Runs the command line `args` (program name first) and returns the exit
/// code. Results go to `stdout` (or `--out`), diagnostics to `stderr`.
pub fn run<I, T>(
    args: I,
    stdin: &mut dyn BufRead,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = stdout.write_all(text.as_bytes());
                    EXIT_OK
                }
                _ => {
                    let _ = stderr.write_all(text.as_bytes());
                    EXIT_USAGE
                }
            };
        }
    };
    match dispatch(cli.command, stdin, stdout, stderr) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(
    command: Command,
    stdin: &mut dyn BufRead,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<(), CliError> {
    match command {
        Command::Infer { common, files } => {
            let mut all = common.data.clone();
            all.extend(files);
            if all.is_empty() {
                return Err(CliError::Usage(
                    "infer needs at least one data file (usage: feo infer FILE... [--out FILE])"
                        .into(),
                ));
            }
            let config = Config::from_args(&common, all);
            let sat = load(&config, stderr)?;
            emit(&common.out, stdout, &serialize_ntriples(&sat.graph))
        }
        Command::Query { common, files } => {
            let mut all = common.data.clone();
            all.extend(files);
            let (query_file, data) = split_query_file(all)?;
            let config = Config::from_args(&common, data);
            let sat = load(&config, stderr)?;
            let text = query_table(&sat, &query_file, config.format)?;
            emit(&common.out, stdout, &text)
        }
        Command::Ask {
            common,
            kind,
            primary,
            secondary,
            hypothetical,
        } => {
            let config = Config::from_args(&common, common.data.clone());
            let sat = load(&config, stderr)?;
            let text = ask(
                &sat,
                kind.into(),
                primary.as_deref(),
                secondary.as_deref(),
                hypothetical.as_deref(),
                config.format,
            )?;
            emit(&common.out, stdout, &text)
        }
        Command::Repl { common } => {
            let config = Config::from_args(&common, common.data.clone());
            repl(&config, stdin, stdout, stderr)
        }
    }
}

fn emit(out: &Option<PathBuf>, stdout: &mut dyn Write, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display()))),
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Io(format!("cannot write output: {e}"))),
    }
}

fn is_query_file(p: &Path) -> bool {
    p.extension().is_some_and(|e| e == "rq")
}

/// Separates the query file from the data files.
fn split_query_file(files: Vec<PathBuf>) -> Result<(PathBuf, Vec<PathBuf>), CliError> {
    let queries: Vec<usize> = (0..files.len())
        .filter(|&i| is_query_file(&files[i]))
        .collect();
    let index = match queries.as_slice() {
        [] if files.is_empty() => {
            return Err(CliError::Usage(
                "query needs a query file (usage: feo query [--data FILE...] QUERY.rq)".into(),
            ))
        }
        [] => files.len() - 1,
        [i] => *i,
        _ => return Err(CliError::Usage("more than one .rq file given".into())),
    };
    let mut data = files;
    let query = data.remove(index);
    Ok((query, data))
}

/// Parses the data files (or the built-in knowledge base), applies the
/// season/region overrides and saturates.
pub fn load(config: &Config, stderr: &mut dyn Write) -> Result<Saturation, CliError> {
    let mut graph = if config.data_files.is_empty() {
        kb::demo_kb()
    } else {
        let mut g = Graph::new();
        for path in &config.data_files {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
            let doc = parse_turtle_document(&text, None)
                .map_err(|d| CliError::Parse(format!("{}:{d}", path.display())))?;
            for w in &doc.warnings {
                let _ = writeln!(stderr, "warning: {}:{w}", path.display());
            }
            g.extend_from(&doc.graph);
        }
        g
    };
    if let Some(season) = &config.season {
        override_system_value(&mut graph, vocab::feo::HAS_SEASON, &individual(season)?);
    }
    if let Some(region) = &config.region {
        override_system_value(&mut graph, vocab::feo::HAS_REGION, &individual(region)?);
    }
    let sat = saturate_with(
        &graph,
        &feo_ruleset(),
        SaturationOptions {
            triple_cap: config.triple_cap,
        },
    )?;
    if config.trace {
        let _ = stderr.write_all(sat.trace.to_text().as_bytes());
    }
    Ok(sat)
}

/// Resolves a command-line name: `prefix:local`, `<iri>`, an absolute IRI,
/// or a bare local name in the `feo:` namespace.
pub fn individual(text: &str) -> Result<Term, CliError> {
    let iri = if text.contains(':') {
        vocab::expand_curie(text).unwrap_or_else(|| text.to_string())
    } else {
        format!("{}{text}", vocab::ns::FEO)
    };
    Term::try_iri(&iri).map_err(|e| CliError::Usage(format!("invalid individual '{text}': {e}")))
}

/// Replaces every `(system, property, _)` triple by `(system, property, value)`.
/// System individuals are those typed `feo:System` or already carrying
/// `property`; with none, the built-in `feo:HealthCoach` is used.
fn override_system_value(graph: &mut Graph, property: &str, value: &Term) {
    let p = Term::iri(property);
    let mut systems: Vec<Term> =
        graph.subjects(&Term::iri(vocab::rdf::TYPE), &Term::iri(vocab::feo::SYSTEM));
    systems.extend(
        graph
            .match_pattern(None, Some(&p), None)
            .into_iter()
            .map(|t| t.subject().clone()),
    );
    systems.sort();
    systems.dedup();
    if systems.is_empty() {
        systems.push(Term::iri(vocab::feo::HEALTH_COACH));
    }
    for system in systems {
        for old in graph.match_pattern(Some(&system), Some(&p), None) {
            graph.remove(&old);
        }
        graph.insert(Triple::new(system, p.clone(), value.clone()).expect("IRI triple"));
    }
}

fn query_table(sat: &Saturation, path: &Path, format: Format) -> Result<String, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
    let ast = parse_query(&text).map_err(|d| CliError::Parse(format!("{}:{d}", path.display())))?;
    let table = evaluate(&sat.graph, &ast).map_err(|e| CliError::Parse(e.to_string()))?;
    Ok(match format {
        Format::Json => table.to_json(),
        Format::Text | Format::Tsv => table.to_tsv(&ast.prefixes),
    })
}

/// An existing question individual with exactly these parameters, or a
/// synthetic `urn:feo:question:<type>` identifier.
fn question_id(
    graph: &Graph,
    kind: ExplanationType,
    primary: Option<&Term>,
    secondary: Option<&Term>,
    hypothetical: Option<&Term>,
) -> Term {
    let subjects_with = |prop: &str, value: &Term| graph.subjects(&Term::iri(prop), value);
    let found = match kind {
        ExplanationType::Contextual => primary.map(|p| subjects_with(vocab::feo::HAS_PARAMETER, p)),
        ExplanationType::Contrastive => primary.zip(secondary).map(|(a, b)| {
            let with_b = subjects_with(vocab::feo::HAS_SECONDARY_PARAMETER, b);
            subjects_with(vocab::feo::HAS_PRIMARY_PARAMETER, a)
                .into_iter()
                .filter(|q| with_b.contains(q))
                .collect()
        }),
        ExplanationType::Counterfactual => {
            hypothetical.map(|h| subjects_with(vocab::feo::HAS_PARAMETER, h))
        }
    };
    found
        .and_then(|qs| qs.into_iter().find(Term::is_iri))
        .unwrap_or_else(|| Term::iri(format!("urn:feo:question:{kind}")))
}

fn ask(
    sat: &Saturation,
    kind: ExplanationType,
    primary: Option<&str>,
    secondary: Option<&str>,
    hypothetical: Option<&str>,
    format: Format,
) -> Result<String, CliError> {
    let primary = primary.map(individual).transpose()?;
    let secondary = secondary.map(individual).transpose()?;
    let hypothetical = hypothetical.map(individual).transpose()?;
    let id = question_id(
        &sat.graph,
        kind,
        primary.as_ref(),
        secondary.as_ref(),
        hypothetical.as_ref(),
    );
    let question = Question::new(id, kind, primary, secondary, hypothetical)?;
    let explanation = explain(sat, &question)?;
    Ok(format_explanation(&explanation, format))
}

fn format_explanation(e: &Explanation, format: Format) -> String {
    match format {
        Format::Json => to_json(e),
        Format::Text if e.text.is_empty() => String::new(),
        Format::Text => format!("{}\n", e.text),
        Format::Tsv => {
            let prefixes = vocab::PREFIXES
                .iter()
                .map(|(p, n)| (p.to_string(), n.to_string()))
                .collect();
            let mut out = String::from("characteristic\tclass\tpolarity\tderivedFoods\n");
            for item in &e.items {
                let derived: Vec<String> = item
                    .derived_foods
                    .iter()
                    .map(|d| render_term(d, &prefixes))
                    .collect();
                out.push_str(&format!(
                    "{}\t{}\t{}\t{}\n",
                    render_term(&item.characteristic, &prefixes),
                    render_term(&item.class, &prefixes),
                    polarity_name(item.polarity),
                    derived.join(" ")
                ));
            }
            out
        }
    }
}

fn polarity_name(p: crate::explain::Polarity) -> &'static str {
    use crate::explain::Polarity::*;
    match p {
        Context => "context",
        Fact => "fact",
        Foil => "foil",
        Recommendation => "recommendation",
        Prohibition => "prohibition",
    }
}

const REPL_HELP: &str = "commands:
  ask contextual PARAMETER
  ask contrastive PRIMARY SECONDARY
  ask counterfactual HYPOTHETICAL
  query FILE.rq
  reload
  help
  quit
";

fn repl(
    config: &Config,
    stdin: &mut dyn BufRead,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<(), CliError> {
    let mut sat = load(config, stderr)?;
    let mut line = String::new();
    loop {
        let _ = write!(stderr, "feo> ");
        let _ = stderr.flush();
        line.clear();
        match stdin.read_line(&mut line) {
            Ok(0) => return Ok(()),
            Ok(_) => {}
            Err(e) => return Err(CliError::Io(format!("cannot read input: {e}"))),
        }
        let words: Vec<&str> = line.split_whitespace().collect();
        let result = match words.as_slice() {
            [] => Ok(String::new()),
            ["quit" | "exit"] => return Ok(()),
            ["help"] => Ok(REPL_HELP.to_string()),
            ["reload"] => load(config, stderr).map(|s| {
                sat = s;
                String::new()
            }),
            ["query", file] => query_table(&sat, Path::new(file), config.format),
            ["ask", kind, args @ ..] => repl_ask(&sat, kind, args, config.format),
            [verb, ..] => Err(CliError::Usage(format!(
                "unknown command '{verb}' (try 'help')"
            ))),
        };
        match result {
            Ok(text) => {
                let _ = stdout.write_all(text.as_bytes());
                let _ = stdout.flush();
            }
            Err(e) => {
                let _ = writeln!(stderr, "error: {e}");
            }
        }
    }
}

fn repl_ask(
    sat: &Saturation,
    kind: &str,
    args: &[&str],
    format: Format,
) -> Result<String, CliError> {
    let kind: ExplanationType = kind.parse()?;
    match (kind, args) {
        (ExplanationType::Contextual, [p]) => ask(sat, kind, Some(p), None, None, format),
        (ExplanationType::Contrastive, [a, b]) => ask(sat, kind, Some(a), Some(b), None, format),
        (ExplanationType::Counterfactual, [h]) => ask(sat, kind, None, None, Some(h), format),
        _ => Err(CliError::Usage(format!(
            "wrong number of arguments for 'ask {kind}' (try 'help')"
        ))),
    }
}
