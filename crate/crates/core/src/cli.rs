//! `scholar-embed` command line.
//!
//! Stages talk through files: `embed` writes scholar vectors, `similarity`
//! turns them into a matrix, `recommend` ranks from the matrix, and
//! `evaluate` / `sweep` run the whole pipeline against annotations.
//!
//! Exit codes: 0 success, 2 input error, 3 query error, 4 internal invariant
//! violation.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::corpus::Corpus;
use crate::error::Error;
use crate::eval::{
    parse_grid, sweep_dimension, sweep_lambda, AnnotationMatrix, EvalError,
};
use crate::influence::{BlendWeight, InfluenceError, DEFAULT_LAMBDA};
use crate::output::{self, format_sig17, write_file};
use crate::pipeline::Pipeline;
use crate::scholar::{similarity_matrix, top_k, Divisor, ScholarError};
use crate::vectors::VectorStore;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_QUERY: i32 = 3;
pub const EXIT_INTERNAL: i32 = 4;

pub const EMBEDDINGS_FILE: &str = "scholar_embeddings.jsonl";
pub const EMBED_REPORT_FILE: &str = "embed_report.json";
pub const SIMILARITY_FILE: &str = "similarity.csv";
pub const REPORT_FILE: &str = "report.json";
pub const PER_SCHOLAR_FILE: &str = "per_scholar_accuracy.csv";
pub const LAMBDA_SWEEP_FILE: &str = "lambda_sweep.csv";
pub const DIMENSION_SWEEP_FILE: &str = "dimension_sweep.csv";

#[derive(Debug, Parser)]
#[command(name = "scholar-embed", version, about = "Scholar embeddings from word vectors and influence weights")]
pub struct Cli {
    /// Worker threads for the parallel stages (outputs do not depend on it).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build scholar vectors from word vectors and a paper corpus.
    Embed(EmbedArgs),
    /// Pairwise cosine similarity of scholar vectors.
    Similarity(SimilarityArgs),
    /// Rank the most similar scholars for one scholar.
    Recommend(RecommendArgs),
    /// Accuracy of the similarities against expert annotations.
    Evaluate(EvaluateArgs),
    /// Accuracy over a grid of blend weights or over several vector dimensions.
    Sweep(SweepArgs),
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// GloVe-format word vector file.
    #[arg(long)]
    pub vectors: PathBuf,
    /// Papers JSON-Lines file.
    #[arg(long)]
    pub corpus: PathBuf,
    /// Optional scholars JSON-Lines file.
    #[arg(long)]
    pub scholars: Option<PathBuf>,
    /// Blend weight between rank contribution and citation impact.
    #[arg(long, default_value_t = DEFAULT_LAMBDA)]
    pub lambda: f64,
}

#[derive(Debug, Args)]
pub struct EmbedArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Output directory.
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long)]
    pub dump_paper_embeddings: Option<PathBuf>,
    #[arg(long)]
    pub dump_influence: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SimilarityArgs {
    /// Scholar embeddings file [default: <out>/scholar_embeddings.jsonl].
    #[arg(long)]
    pub embeddings: Option<PathBuf>,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct RecommendArgs {
    #[arg(long)]
    pub scholar: String,
    #[arg(long, default_value_t = 10)]
    pub top_k: usize,
    /// Similarity CSV [default: <out>/similarity.csv].
    #[arg(long, conflicts_with = "embeddings")]
    pub similarity: Option<PathBuf>,
    /// Rank straight from an embeddings file instead of a similarity CSV.
    #[arg(long)]
    pub embeddings: Option<PathBuf>,
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct EvaluateArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long)]
    pub annotations: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Vector file; with --dims it must contain `{d}`, replaced by each dimension.
    #[arg(long)]
    pub vectors: String,
    #[arg(long)]
    pub corpus: PathBuf,
    #[arg(long)]
    pub scholars: Option<PathBuf>,
    #[arg(long)]
    pub annotations: PathBuf,
    /// Blend weight used by the dimension sweep.
    #[arg(long, default_value_t = DEFAULT_LAMBDA)]
    pub lambda: f64,
    /// λ grid as lo:hi:step (inclusive) or a single value.
    #[arg(long, required_unless_present = "dims", conflicts_with = "dims")]
    pub grid: Option<String>,
    /// Comma-separated dimensions, e.g. 50,100,200,300.
    #[arg(long, value_delimiter = ',')]
    pub dims: Option<Vec<usize>>,
    #[arg(long)]
    pub out: PathBuf,
}

/// Parses `args` (program name first), runs the command and returns the
/// process exit code. Diagnostics go to standard error.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    run_cli(cli, &mut lock)
}

/// Runs an already parsed command, writing user-facing results to `stdout`.
pub fn run_cli(cli: Cli, stdout: &mut dyn std::io::Write) -> i32 {
    let result = match cli.threads {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| dispatch(cli.command)),
            Err(e) => {
                eprintln!("error: cannot start {n} worker threads: {e}");
                return EXIT_INTERNAL;
            }
        },
        None => dispatch(cli.command),
    };
    match result {
        Ok(text) => match stdout.write_all(text.as_bytes()) {
            Ok(()) => EXIT_OK,
            Err(e) => {
                eprintln!("error: cannot write to standard output: {e}");
                EXIT_INTERNAL
            }
        },
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Vectors(_) | Error::Corpus(_) | Error::Output(_) => EXIT_INPUT,
        Error::Influence(InfluenceError::LambdaOutOfRange(_)) => EXIT_INPUT,
        Error::Influence(_) => EXIT_INTERNAL,
        Error::Scholar(ScholarError::UnknownScholar(_)) => EXIT_QUERY,
        Error::Scholar(_) => EXIT_INTERNAL,
        Error::Eval(EvalError::LengthMismatch(..) | EvalError::EmptyVectors) => EXIT_INTERNAL,
        Error::Eval(_) => EXIT_INPUT,
    }
}

/// Returns the text destined for standard output.
fn dispatch(command: Command) -> Result<String, Error> {
    match command {
        Command::Embed(a) => cmd_embed(&a).map(|_| String::new()),
        Command::Similarity(a) => cmd_similarity(&a).map(|_| String::new()),
        Command::Recommend(a) => cmd_recommend(&a),
        Command::Evaluate(a) => cmd_evaluate(&a).map(|_| String::new()),
        Command::Sweep(a) => cmd_sweep(&a).map(|_| String::new()),
    }
}

fn load_inputs(input: &InputArgs) -> Result<(BlendWeight, VectorStore, Corpus), Error> {
    let w = BlendWeight::new(input.lambda)?;
    let store = VectorStore::load(&input.vectors, None)?;
    let corpus = Corpus::load(&input.corpus, input.scholars.as_deref())?;
    Ok((w, store, corpus))
}

fn json_list(items: &[&str]) -> String {
    let quoted: Vec<String> = items
        .iter()
        .map(|s| serde_json::to_string(s).expect("string serializes"))
        .collect();
    format!("[{}]", quoted.join(", "))
}

pub fn cmd_embed(args: &EmbedArgs) -> Result<(), Error> {
    let (w, store, corpus) = load_inputs(&args.input)?;
    let pipeline = Pipeline::new(&corpus, &store);
    let influences = pipeline.influences(w)?;
    let embeddings = pipeline.scholar_embeddings(w, Divisor::PaperCount)?;

    write_file(
        &args.out.join(EMBEDDINGS_FILE),
        &output::scholar_embeddings_jsonl(&embeddings),
    )?;
    if let Some(path) = &args.dump_paper_embeddings {
        write_file(path, &output::paper_embeddings_jsonl(pipeline.paper_embeddings()))?;
    }
    if let Some(path) = &args.dump_influence {
        write_file(path, &output::influence_csv(&influences))?;
    }

    let degenerate_papers: Vec<&str> = pipeline
        .paper_embeddings()
        .values()
        .filter(|p| p.is_degenerate())
        .map(|p| p.paper_id.as_str())
        .collect();
    let degenerate_scholars: Vec<&str> = embeddings
        .iter()
        .filter(|e| e.is_degenerate())
        .map(|e| e.scholar_id.as_str())
        .collect();
    for id in &degenerate_scholars {
        eprintln!("warning: scholar {id:?} has an all-zero vector; similarity to everyone is 0");
    }
    if !degenerate_papers.is_empty() {
        eprintln!(
            "warning: {} paper(s) matched no vocabulary tokens",
            degenerate_papers.len()
        );
    }

    let tokens = pipeline.token_stats();
    let mut report = String::from("{\n");
    writeln!(report, "  \"lambda\": {},", format_sig17(w.get())).unwrap();
    writeln!(report, "  \"dimension\": {},", store.dimension()).unwrap();
    writeln!(report, "  \"vocabulary\": {},", store.len()).unwrap();
    writeln!(report, "  \"papers\": {},", corpus.papers().len()).unwrap();
    writeln!(report, "  \"scholars\": {},", embeddings.len()).unwrap();
    writeln!(report, "  \"tokens_total\": {},", tokens.total).unwrap();
    writeln!(report, "  \"tokens_matched\": {},", tokens.matched).unwrap();
    writeln!(report, "  \"oov_rate\": {},", format_sig17(tokens.oov_rate())).unwrap();
    writeln!(report, "  \"blank_abstracts\": {},", json_list(&corpus.blank_abstracts())).unwrap();
    writeln!(report, "  \"degenerate_papers\": {},", json_list(&degenerate_papers)).unwrap();
    writeln!(report, "  \"degenerate_scholars\": {}", json_list(&degenerate_scholars)).unwrap();
    report.push_str("}\n");
    write_file(&args.out.join(EMBED_REPORT_FILE), &report)?;
    Ok(())
}

pub fn cmd_similarity(args: &SimilarityArgs) -> Result<(), Error> {
    let path = args
        .embeddings
        .clone()
        .unwrap_or_else(|| args.out.join(EMBEDDINGS_FILE));
    let embeddings = output::read_scholar_embeddings(&path)?;
    let sim = similarity_matrix(&embeddings)?;
    for id in sim.degenerate_ids() {
        eprintln!("warning: scholar {id:?} has an all-zero vector; similarity to everyone is 0");
    }
    write_file(&args.out.join(SIMILARITY_FILE), &output::similarity_csv(&sim))?;
    Ok(())
}

/// Ranked rows `rank,scholar_id,similarity`, one per line.
pub fn cmd_recommend(args: &RecommendArgs) -> Result<String, Error> {
    let sim = match &args.embeddings {
        Some(path) => similarity_matrix(&output::read_scholar_embeddings(path)?)?,
        None => {
            let path = args
                .similarity
                .clone()
                .unwrap_or_else(|| args.out.join(SIMILARITY_FILE));
            output::read_similarity_csv(&path)?
        }
    };
    let ranked = top_k(&sim, &args.scholar, args.top_k)?;
    let mut text = String::new();
    for (rank, (id, v)) in ranked.iter().enumerate() {
        writeln!(text, "{},{},{}", rank + 1, id, output::format_csv(*v)).unwrap();
    }
    Ok(text)
}

pub fn cmd_evaluate(args: &EvaluateArgs) -> Result<(), Error> {
    let (w, store, corpus) = load_inputs(&args.input)?;
    let ann = AnnotationMatrix::load(&args.annotations)?;
    let report = Pipeline::new(&corpus, &store).evaluate(w, &ann)?;
    for id in &report.accuracy.degenerate {
        eprintln!("warning: scholar {id:?} has no defined accuracy (all-zero similarity row)");
    }
    write_file(&args.out.join(REPORT_FILE), &output::report_json(&report))?;
    write_file(&args.out.join(PER_SCHOLAR_FILE), &output::per_scholar_csv(&report))?;
    Ok(())
}

fn dimension_path(template: &str, d: usize) -> PathBuf {
    PathBuf::from(template.replace("{d}", &d.to_string()))
}

pub fn cmd_sweep(args: &SweepArgs) -> Result<(), Error> {
    let w = BlendWeight::new(args.lambda)?;
    let corpus = Corpus::load(&args.corpus, args.scholars.as_deref())?;
    let ann = AnnotationMatrix::load(&args.annotations)?;

    if let Some(dims) = &args.dims {
        if !args.vectors.contains("{d}") && dims.len() > 1 {
            return Err(EvalError::InvalidGrid {
                spec: args.vectors.clone(),
                reason: "--vectors needs a {d} placeholder when sweeping several dimensions"
                    .into(),
            }
            .into());
        }
        let mut stores = BTreeMap::new();
        for &d in dims {
            let store = VectorStore::load(dimension_path(&args.vectors, d), Some(d))?;
            stores.insert(d, store);
        }
        let points = sweep_dimension(&corpus, &stores, &ann, w)?;
        write_file(
            &args.out.join(DIMENSION_SWEEP_FILE),
            &output::dimension_sweep_csv(&points),
        )?;
        return Ok(());
    }

    let spec = args.grid.as_deref().expect("clap requires --grid or --dims");
    let grid = parse_grid(spec)?;
    for &l in &grid {
        BlendWeight::new(l)?;
    }
    let store = VectorStore::load(Path::new(&args.vectors), None)?;
    let points = sweep_lambda(&corpus, &store, &ann, &grid)?;
    write_file(
        &args.out.join(LAMBDA_SWEEP_FILE),
        &output::lambda_sweep_csv(&points),
    )?;
    Ok(())
}
