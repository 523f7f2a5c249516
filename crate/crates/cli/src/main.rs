use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use greedygram::bench::{run_bench, BenchConfig, Mutation};
use greedygram::greedy::{
    greedy_search_with, parse_rules, Classifier, ConfusionTally, LengthBounds, SearchOptions,
};
use greedygram::langid::{
    fixture_models, identify, load_models_dir, train_model, write_model, DEFAULT_TOP_K,
    FIXTURE_LANGUAGES, MODEL_EXTENSION,
};
use greedygram::metadata::{aggregate, evaluate_record, parse_chat_records, CountryLanguageTable};
use greedygram::{window_scan, LanguageModel};

#[derive(Parser)]
#[command(
    name = "greedygram",
    version,
    about = "Fuzzy keyword search, language identification and metadata agreement"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Search a text for a keyword. Exits 1 when nothing reaches the threshold.
    Search(SearchArgs),
    /// Classify JSONL chat records with tab-separated keyword rules.
    Classify(ClassifyArgs),
    /// Identify the language of a message.
    Langid(LangidArgs),
    /// Train a language model from a plain-text corpus.
    Train(TrainArgs),
    /// Write the bundled fixture models to a directory.
    FixtureModels(FixtureModelsArgs),
    /// Compare identified languages with Accept-Language and country metadata.
    Agree(AgreeArgs),
    /// Time the greedy search against the character-window baseline.
    Bench(BenchArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Greedy,
    Window,
}

#[derive(Clone, Copy, ValueEnum)]
enum Bounds {
    Tolerance,
    Symmetric,
    Unbounded,
}

impl From<Bounds> for LengthBounds {
    fn from(b: Bounds) -> Self {
        match b {
            Bounds::Tolerance => LengthBounds::Tolerance,
            Bounds::Symmetric => LengthBounds::Symmetric,
            Bounds::Unbounded => LengthBounds::Unbounded,
        }
    }
}

#[derive(clap::Args)]
struct SearchArgs {
    keyword: String,
    /// Text to search; use --file to read it from disk instead.
    text: Option<String>,
    #[arg(long, conflicts_with = "text")]
    file: Option<PathBuf>,
    #[arg(long, default_value_t = 0.8)]
    theta: f64,
    #[arg(long, value_enum, default_value_t = Method::Greedy)]
    method: Method,
    /// Gram size.
    #[arg(long, default_value_t = 2)]
    n: usize,
    /// Span-length filter for the greedy method.
    #[arg(long, value_enum, default_value_t = Bounds::Tolerance)]
    bounds: Bounds,
}

#[derive(clap::Args)]
struct ClassifyArgs {
    /// Rule file: `CATEGORY<TAB>KEYWORD[<TAB>THETA]` per line.
    #[arg(long)]
    rules: PathBuf,
    /// JSONL records with `id` and `message`.
    #[arg(long)]
    dataset: PathBuf,
    /// Report precision and recall against each record's `label`.
    #[arg(long)]
    labeled: bool,
    #[arg(long, default_value_t = 2)]
    n: usize,
}

#[derive(clap::Args)]
struct LangidArgs {
    /// Directory of `.model` files; the bundled fixture models when omitted.
    #[arg(long)]
    models: Option<PathBuf>,
    message: Option<String>,
    #[arg(long, conflicts_with = "message")]
    file: Option<PathBuf>,
}

#[derive(clap::Args)]
struct TrainArgs {
    #[arg(long)]
    lang: String,
    #[arg(long)]
    corpus: PathBuf,
    #[arg(long)]
    out: PathBuf,
    #[arg(long, default_value_t = DEFAULT_TOP_K)]
    k: usize,
}

#[derive(clap::Args)]
struct FixtureModelsArgs {
    #[arg(long)]
    out: PathBuf,
    #[arg(long, default_value_t = DEFAULT_TOP_K)]
    k: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
    Both,
}

#[derive(clap::Args)]
struct AgreeArgs {
    /// Directory of `.model` files; the bundled fixture models when omitted.
    #[arg(long)]
    models: Option<PathBuf>,
    /// Country to language table; the bundled table when omitted.
    #[arg(long)]
    table: Option<PathBuf>,
    #[arg(long)]
    dataset: PathBuf,
    /// Ascending message-length bin edges.
    #[arg(long, default_value = "0,20,60", value_delimiter = ',')]
    bins: Vec<usize>,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
}

#[derive(clap::Args)]
struct BenchArgs {
    #[arg(long, default_value_t = 500)]
    docs: usize,
    #[arg(long, default_value_t = 1000)]
    doc_length: usize,
    #[arg(long, default_value_t = 20)]
    keywords: usize,
    #[arg(long, default_value_t = 0.85)]
    theta: f64,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, default_value_t = 2)]
    n: usize,
    #[arg(long)]
    json: bool,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn input_text(inline: Option<String>, file: Option<&Path>, what: &str) -> Result<String> {
    match (inline, file) {
        (Some(t), _) => Ok(t),
        (None, Some(p)) => read(p),
        (None, None) => bail!("no {what} given; pass it inline or with --file"),
    }
}

fn models(dir: Option<&Path>) -> Result<Vec<LanguageModel>> {
    match dir {
        Some(d) => Ok(load_models_dir(d)?),
        None => Ok(fixture_models(DEFAULT_TOP_K)),
    }
}

fn search(args: SearchArgs) -> Result<ExitCode> {
    let text = input_text(args.text, args.file.as_deref(), "text")?;
    let found = match args.method {
        Method::Greedy => {
            let options = SearchOptions {
                n: args.n,
                bounds: args.bounds.into(),
            };
            greedy_search_with(&args.keyword, &text, args.theta, options)?.map(|m| {
                let profile = greedygram::greedy::build_word_profile(&text, args.n)
                    .expect("gram size already validated");
                format!(
                    "{:.4}\tword {}\twidth {}\t{}",
                    m.score.value(),
                    m.span.start,
                    m.span.width,
                    profile.span_text(m.span)
                )
            })
        }
        Method::Window => window_scan(&args.keyword, &text, args.theta, args.n)?
            .map(|m| format!("{:.4}\tchar {}\t{}", m.score.value(), m.offset, m.window)),
    };
    Ok(match found {
        Some(line) => {
            println!("{line}");
            ExitCode::SUCCESS
        }
        None => {
            println!("no match");
            ExitCode::from(1)
        }
    })
}

fn classify(args: ClassifyArgs) -> Result<ExitCode> {
    let rules_name = args.rules.display().to_string();
    let rules = parse_rules(&read(&args.rules)?, &rules_name)?;
    let classifier = Classifier::new(&rules, SearchOptions::with_n(args.n))?;
    let data_name = args.dataset.display().to_string();
    let records = parse_chat_records(&read(&args.dataset)?, &data_name)?;

    let mut tally = ConfusionTally::default();
    let mut classified = 0;
    for rec in &records {
        let result = classifier.classify(&rec.message);
        match &result {
            Some(c) => {
                classified += 1;
                println!("{}\t{}\t{:.4}", rec.id, c.category, c.score.value());
            }
            None => println!("{}\tUNCLASSIFIED\t-", rec.id),
        }
        tally.record(
            result.as_ref().map(|c| c.category.as_str()),
            rec.label.as_deref(),
        );
    }
    println!(
        "# records {}\tclassified {}\tunclassified {}",
        records.len(),
        classified,
        records.len() - classified
    );
    if args.labeled {
        let fmt = |v: Option<f64>| v.map_or("-".to_string(), |x| format!("{x:.4}"));
        for cat in classifier.categories() {
            let m = tally.metrics(cat);
            println!(
                "# {}\ttp {}\tfp {}\tfn {}\tprecision {}\trecall {}",
                m.category,
                m.true_positives,
                m.false_positives,
                m.false_negatives,
                fmt(m.precision),
                fmt(m.recall)
            );
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn langid(args: LangidArgs) -> Result<ExitCode> {
    let models = models(args.models.as_deref())?;
    let message = input_text(args.message, args.file.as_deref(), "message")?;
    let p = identify(&message, &models)?;
    println!(
        "{}\tdistance {}\t{}",
        p.language,
        p.distance,
        if p.confident {
            "confident"
        } else {
            "not confident"
        }
    );
    Ok(ExitCode::SUCCESS)
}

fn train(args: TrainArgs) -> Result<ExitCode> {
    let model = train_model(&read(&args.corpus)?, &args.lang, args.k)?;
    fs::write(&args.out, write_model(&model))
        .with_context(|| format!("writing {}", args.out.display()))?;
    println!("{}\t{} grams", args.out.display(), model.len());
    Ok(ExitCode::SUCCESS)
}

fn fixture_models_cmd(args: FixtureModelsArgs) -> Result<ExitCode> {
    fs::create_dir_all(&args.out).with_context(|| format!("creating {}", args.out.display()))?;
    for (lang, model) in FIXTURE_LANGUAGES.iter().zip(fixture_models(args.k)) {
        let path = args.out.join(format!("{lang}.{MODEL_EXTENSION}"));
        fs::write(&path, write_model(&model))
            .with_context(|| format!("writing {}", path.display()))?;
        println!("{}", path.display());
    }
    Ok(ExitCode::SUCCESS)
}

fn agree(args: AgreeArgs) -> Result<ExitCode> {
    let models = models(args.models.as_deref())?;
    let table = match &args.table {
        Some(p) => CountryLanguageTable::parse(&read(p)?, &p.display().to_string())?,
        None => CountryLanguageTable::bundled(),
    };
    let data_name = args.dataset.display().to_string();
    let records = parse_chat_records(&read(&args.dataset)?, &data_name)?;
    let evaluated = records
        .iter()
        .map(|r| evaluate_record(r, &models, &table))
        .collect::<greedygram::Result<Vec<_>>>()?;
    let report = aggregate(&evaluated, &args.bins)?;
    if args.format != Format::Json {
        print!("{}", report.render_table());
    }
    if args.format != Format::Table {
        println!("{}", serde_json::to_string_pretty(&report)?);
    }
    Ok(ExitCode::SUCCESS)
}

fn bench(args: BenchArgs) -> Result<ExitCode> {
    let config = BenchConfig {
        docs: args.docs,
        doc_length: args.doc_length,
        keywords: args.keywords,
        theta: args.theta,
        seed: args.seed,
        n: args.n,
        ..BenchConfig::default()
    };
    let report = run_bench(&config)?;
    if args.json {
        println!("{}", serde_json::to_string_pretty(&report)?);
        return Ok(ExitCode::SUCCESS);
    }
    println!(
        "{:<9} {:>6} {:>9} {:>12} {:>12} {:>8}",
        "method", "docs", "keywords", "mean_ms", "median_ms", "matches"
    );
    for r in [&report.baseline, &report.greedy] {
        println!(
            "{:<9} {:>6} {:>9} {:>12.4} {:>12.4} {:>8}",
            serde_json::to_value(r.method)?.as_str().unwrap_or_default(),
            r.corpus_size,
            r.keyword_count,
            r.mean_seconds * 1e3,
            r.median_seconds * 1e3,
            r.matches
        );
    }
    println!("speedup {:.2}x", report.ratio);
    println!(
        "{:<9} {:>8} {:>9} {:>7}",
        "planted", "count", "baseline", "greedy"
    );
    for m in Mutation::ALL {
        let r = report.recall(m);
        println!(
            "{:<9} {:>8} {:>9} {:>7}",
            serde_json::to_value(m)?.as_str().unwrap_or_default(),
            r.planted,
            r.baseline_found,
            r.greedy_found
        );
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Search(a) => search(a),
        Command::Classify(a) => classify(a),
        Command::Langid(a) => langid(a),
        Command::Train(a) => train(a),
        Command::FixtureModels(a) => fixture_models_cmd(a),
        Command::Agree(a) => agree(a),
        Command::Bench(a) => bench(a),
    };
    outcome.unwrap_or_else(|e| {
        eprintln!("error: {e:#}");
        ExitCode::from(2)
    })
}
