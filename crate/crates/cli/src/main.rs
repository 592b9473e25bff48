use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use sensevocab::{CorpusFormat, Method, RelationType};

mod run;

/// Compress the WordNet sense vocabulary and evaluate the result on sense-annotated corpora.
#[derive(Parser, Debug)]
#[command(name = "sensevocab", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a sense-to-tag mapping and print its statistics.
    Compress(CompressArgs),
    /// Print graph, mapping and corpus statistics as TSV tables.
    Stats(StatsArgs),
    /// Report which evaluation instances a training corpus can cover under a mapping.
    Coverage(CoverageArgs),
    /// Score a prediction key file against a gold key file.
    Score(ScoreArgs),
    /// Write first-sense or most-frequent-sense predictions as a key file.
    Baseline(BaselineArgs),
    /// Check a mapping file for totality and collisions.
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
struct WordNetArg {
    /// WordNet `dict` directory in WNdb format.
    #[arg(long, env = "WORDNET_DIR", value_name = "DIR")]
    wordnet: PathBuf,
}

#[derive(Args, Debug)]
struct CorpusArgs {
    /// Drop unknown gold keys with a warning instead of failing.
    #[arg(long)]
    lenient: bool,
    /// Corpus format; by default `.xml` files are UFSAC and anything else TSV.
    #[arg(long, value_name = "xml|tsv")]
    format: Option<CorpusFormat>,
}

#[derive(Args, Debug)]
struct CompressArgs {
    #[command(flatten)]
    wordnet: WordNetArg,
    /// none, synonyms, hypernyms or all-relations.
    #[arg(long, default_value = "hypernyms")]
    method: Method,
    /// Where to write the mapping file.
    #[arg(long, short, value_name = "FILE")]
    out: Option<PathBuf>,
    /// Climb plain hypernym edges only.
    #[arg(long)]
    no_instance_hypernyms: bool,
    /// Comma-separated relations that may join clusters (names or pointer symbols).
    #[arg(long, value_delimiter = ',', value_name = "REL,...")]
    relations: Vec<RelationType>,
    /// Also join clusters through word-level pointers.
    #[arg(long)]
    lexical_links: bool,
    /// Stop after this many successful merges.
    #[arg(long, value_name = "N")]
    max_steps: Option<u64>,
    /// Seed for the order among equal-sized clusters.
    #[arg(long)]
    seed: Option<u64>,
    /// Forbid a lemma twice in a cluster even across parts of speech.
    #[arg(long)]
    strict_cross_pos: bool,
    /// Where to write the merge log.
    #[arg(long, value_name = "FILE")]
    merge_log: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct StatsArgs {
    #[command(flatten)]
    wordnet: WordNetArg,
    /// Mapping files to summarize; by default every method is built with default settings.
    #[arg(long, value_name = "FILE")]
    mapping: Vec<PathBuf>,
    /// Corpora to measure inventory coverage on (concatenated).
    #[arg(long, value_name = "FILE")]
    corpus: Vec<PathBuf>,
    #[command(flatten)]
    corpus_args: CorpusArgs,
}

#[derive(Args, Debug)]
struct CoverageArgs {
    #[command(flatten)]
    wordnet: WordNetArg,
    #[arg(long, value_name = "FILE")]
    mapping: PathBuf,
    /// Training corpora (concatenated).
    #[arg(long, required = true, value_name = "FILE")]
    train: Vec<PathBuf>,
    /// Evaluation corpora (concatenated).
    #[arg(long, required = true, value_name = "FILE")]
    eval: Vec<PathBuf>,
    /// Count monosemous words as covered.
    #[arg(long)]
    backoff: bool,
    /// Write uncovered instances here as `id lemma pos` TSV.
    #[arg(long, value_name = "FILE")]
    misses: Option<PathBuf>,
    #[command(flatten)]
    corpus_args: CorpusArgs,
}

#[derive(Args, Debug)]
struct ScoreArgs {
    /// Gold key file.
    #[arg(long, value_name = "FILE")]
    gold: PathBuf,
    /// Prediction key file.
    #[arg(long, value_name = "FILE")]
    pred: PathBuf,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Baseline {
    FirstSense,
    Mfs,
}

#[derive(Args, Debug)]
struct BaselineArgs {
    #[command(flatten)]
    wordnet: WordNetArg,
    #[arg(long, value_enum)]
    method: Baseline,
    /// Evaluation corpora (concatenated).
    #[arg(long, required = true, value_name = "FILE")]
    eval: Vec<PathBuf>,
    /// Training corpora for the most frequent sense.
    #[arg(long, value_name = "FILE")]
    train: Vec<PathBuf>,
    /// Mapping whose tags are counted; identity when absent.
    #[arg(long, value_name = "FILE")]
    mapping: Option<PathBuf>,
    /// Fall back to the first sense for words the training data never tags.
    #[arg(long)]
    backoff: bool,
    /// Prediction key file; standard output when absent.
    #[arg(long, short, value_name = "FILE")]
    out: Option<PathBuf>,
    /// Also write the gold keys of the evaluation corpora.
    #[arg(long, value_name = "FILE")]
    gold_out: Option<PathBuf>,
    #[command(flatten)]
    corpus_args: CorpusArgs,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[command(flatten)]
    wordnet: WordNetArg,
    #[arg(long, value_name = "FILE")]
    mapping: PathBuf,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Compress(a) => run::compress(a),
        Command::Stats(a) => run::stats(a),
        Command::Coverage(a) => run::coverage(a),
        Command::Score(a) => run::score(a),
        Command::Baseline(a) => run::baseline(a),
        Command::Verify(a) => run::verify(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
