//! `sbd`: train, run, and evaluate the sentence boundary detection engines.
//!
//! Exit codes: 0 success, 1 runtime failure, 2 usage error.

mod manifest;

use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use sbd_core::bench::{emit_report, evaluate, threshold_sweep, ReportEntry, ReportFormat};
use sbd_core::charboundary::{
    deserialize_model, serialize_model, train_charboundary, CharSegmenter, ModelConfig,
};
use sbd_core::datasets::{
    dataset_stats, generate_synthetic, load_delimited, render_delimited, render_delimited_corpus,
    AnnotatedExample, DatasetError, SynthConfig,
};
use sbd_core::punkt::{train, LegalKnowledgeBase, PunktConfig, PunktParameters, PunktSegmenter};
use sbd_core::text::{spans_from_boundaries, Segmenter, TextDocument};

use manifest::RunManifest;

/// Environment variable overriding the built-in abbreviation dictionary.
const KB_PATH_VAR: &str = "SBD_KB_PATH";

#[derive(Debug, thiserror::Error)]
enum CliError {
    /// Bad invocation or unusable input specification; exit code 2.
    #[error("{0}")]
    Usage(String),
    /// Failure while doing the work; exit code 1.
    #[error("{0}")]
    Runtime(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Runtime(_) => 1,
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Runtime(e.to_string())
    }
}

impl From<DatasetError> for CliError {
    fn from(e: DatasetError) -> Self {
        match e {
            DatasetError::EmptyDataset => CliError::Usage(format!("EmptyCorpus: {e}")),
            other => CliError::Runtime(other.to_string()),
        }
    }
}

#[derive(Parser)]
#[command(name = "sbd", version, about = "Legal-domain sentence boundary detection toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Engine {
    Punkt,
    Charboundary,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum KbToggle {
    On,
    Off,
}

#[derive(Copy, Clone, ValueEnum)]
enum Preset {
    Small,
    Medium,
    Large,
}

#[derive(Copy, Clone, ValueEnum)]
enum OutputFormat {
    /// One sentence per line.
    Plain,
    /// Tab-separated start/end character offsets, one span per line.
    Offsets,
    /// Input text with a sentence delimiter inserted at every boundary.
    Delimited,
}

#[derive(Copy, Clone, ValueEnum)]
enum ReportKind {
    Markdown,
    Csv,
    Structured,
}

impl ReportKind {
    fn to_format(self) -> ReportFormat {
        match self {
            ReportKind::Markdown => ReportFormat::Markdown,
            ReportKind::Csv => ReportFormat::Csv,
            ReportKind::Structured => ReportFormat::Structured,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Train the unsupervised statistical tokenizer on a corpus.
    TrainPunkt {
        /// Corpus file or directory (delimited records or raw documents).
        #[arg(long)]
        corpus: PathBuf,
        #[arg(long, default_value_t = 0.3)]
        abbrev_threshold: f64,
        #[arg(long, default_value_t = 7.88)]
        collocation_threshold: f64,
        #[arg(long, default_value_t = 30.0)]
        starter_threshold: f64,
        /// Legal knowledge base toggle baked into the emitted parameters.
        #[arg(long, value_enum, default_value = "on")]
        kb: KbToggle,
        #[arg(long)]
        out: PathBuf,
    },
    /// Train a character-window random forest on an annotated dataset.
    TrainCharboundary {
        #[arg(long)]
        dataset: PathBuf,
        #[arg(long, value_enum)]
        preset: Preset,
        #[arg(long, default_value_t = 17)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Segment text from a file or stdin.
    Segment {
        #[arg(long, value_enum)]
        engine: Engine,
        /// Trained parameter file for the punkt engine; defaults to
        /// dictionary-only parameters when omitted.
        #[arg(long)]
        params: Option<PathBuf>,
        /// Trained model file; required for the charboundary engine.
        #[arg(long)]
        model: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "on")]
        kb: KbToggle,
        /// Decision threshold override for the charboundary engine.
        #[arg(long)]
        threshold: Option<f64>,
        /// Input file; stdin when omitted.
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "plain")]
        format: OutputFormat,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate one or more engines against a gold-annotated dataset.
    Evaluate {
        /// Engine to evaluate; repeat the flag for a multi-row report.
        #[arg(long, value_enum, required = true)]
        engine: Vec<Engine>,
        #[arg(long)]
        dataset: PathBuf,
        #[arg(long)]
        params: Option<PathBuf>,
        #[arg(long)]
        model: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "on")]
        kb: KbToggle,
        #[arg(long, value_enum, default_value = "markdown")]
        report_format: ReportKind,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sweep the charboundary decision threshold over a grid.
    Sweep {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        dataset: PathBuf,
        /// Grid as `start:end:step` or a comma-separated list in [0,1].
        #[arg(long, default_value = "0.0:1.0:0.1")]
        grid: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate a reproducible synthetic corpus with gold annotations.
    Synth {
        #[arg(long, default_value_t = 100)]
        n_docs: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long)]
        citation_probability: Option<f64>,
        #[arg(long)]
        enumeration_probability: Option<f64>,
        #[arg(long)]
        exclaim_probability: Option<f64>,
        #[arg(long)]
        out_dir: PathBuf,
    },
    /// Print summary statistics for a gold-annotated dataset.
    Stats {
        #[arg(long)]
        dataset: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}

/// Loads a dataset and treats zero records as a usage error; an empty
/// directory satisfies `load_delimited` but no command can act on it.
fn load_nonempty(path: &Path) -> Result<Vec<AnnotatedExample>, CliError> {
    let examples = load_delimited(path)?;
    if examples.is_empty() {
        return Err(CliError::Usage(format!("EmptyCorpus: no records in {}", path.display())));
    }
    Ok(examples)
}

fn kb_arc() -> Result<Arc<LegalKnowledgeBase>, CliError> {
    match std::env::var_os(KB_PATH_VAR) {
        Some(path) => {
            let source = fs::read_to_string(&path)?;
            let kb = LegalKnowledgeBase::load(&source)
                .map_err(|e| CliError::Runtime(format!("{}: {e}", Path::new(&path).display())))?;
            Ok(Arc::new(kb))
        }
        None => Ok(LegalKnowledgeBase::builtin_arc()),
    }
}

fn load_punkt_params(path: Option<&Path>) -> Result<PunktParameters, CliError> {
    match path {
        Some(p) => {
            let doc = fs::read_to_string(p)?;
            PunktParameters::from_document(&doc)
                .map_err(|e| CliError::Runtime(format!("{}: {e}", p.display())))
        }
        None => Ok(PunktParameters::default()),
    }
}

fn load_model(path: &Path) -> Result<sbd_core::charboundary::ForestModel, CliError> {
    let doc = fs::read_to_string(path)?;
    deserialize_model(&doc).map_err(|e| CliError::Runtime(format!("{}: {e}", path.display())))
}

fn write_or_print(out: Option<&Path>, content: &str) -> Result<(), CliError> {
    match out {
        Some(p) => fs::write(p, content)?,
        None => print!("{content}"),
    }
    Ok(())
}

fn parse_grid(spec: &str) -> Result<Vec<f64>, CliError> {
    let bad = |m: &str| CliError::Usage(format!("invalid threshold grid {spec:?}: {m}"));
    let values: Vec<f64> = if spec.contains(':') {
        let parts: Vec<&str> = spec.split(':').collect();
        if parts.len() != 3 {
            return Err(bad("expected start:end:step"));
        }
        let start: f64 = parts[0].parse().map_err(|_| bad("bad start"))?;
        let end: f64 = parts[1].parse().map_err(|_| bad("bad end"))?;
        let step: f64 = parts[2].parse().map_err(|_| bad("bad step"))?;
        if step <= 0.0 || end < start {
            return Err(bad("step must be positive and end >= start"));
        }
        // Index-based stepping keeps endpoints exact for grids like 0.0:1.0:0.1.
        let n = ((end - start) / step).round() as usize;
        (0..=n).map(|i| (start + i as f64 * step).min(end)).collect()
    } else {
        spec.split(',')
            .map(|s| s.trim().parse::<f64>().map_err(|_| bad("bad value")))
            .collect::<Result<_, _>>()?
    };
    if values.is_empty() || values.iter().any(|t| !(0.0..=1.0).contains(t)) {
        return Err(bad("thresholds must lie in [0, 1]"));
    }
    Ok(values)
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::TrainPunkt {
            corpus,
            abbrev_threshold,
            collocation_threshold,
            starter_threshold,
            kb,
            out,
        } => {
            let examples = load_nonempty(&corpus)?;
            let docs: Vec<TextDocument> = examples.into_iter().map(|e| e.doc).collect();
            let config = PunktConfig {
                abbrev_threshold,
                collocation_threshold,
                starter_threshold,
                legal_kb_enabled: kb == KbToggle::On,
            };
            let params =
                train(&docs, &config).map_err(|e| CliError::Runtime(e.to_string()))?;
            fs::write(&out, params.to_document())?;

            let mut m = RunManifest::new(
                "train-punkt",
                json!({
                    "abbrev_threshold": abbrev_threshold,
                    "collocation_threshold": collocation_threshold,
                    "starter_threshold": starter_threshold,
                    "kb": kb == KbToggle::On,
                }),
                None,
            );
            m.add_input(&corpus)?;
            m.add_output(&out);
            m.write_beside(&out)?;
            Ok(())
        }

        Command::TrainCharboundary { dataset, preset, seed, out } => {
            let examples = load_nonempty(&dataset)?;
            let pairs: Vec<_> = examples.into_iter().map(|e| (e.doc, e.gold)).collect();
            let mut config = match preset {
                Preset::Small => ModelConfig::small(),
                Preset::Medium => ModelConfig::medium(),
                Preset::Large => ModelConfig::large(),
            };
            config.seed = seed;
            let kb = kb_arc()?;
            let model = train_charboundary(&pairs, &config, &kb)
                .map_err(|e| CliError::Runtime(e.to_string()))?;
            fs::write(&out, serialize_model(&model))?;

            let mut m = RunManifest::new(
                "train-charboundary",
                json!({
                    "window": config.window,
                    "n_trees": config.n_trees,
                    "max_depth": config.max_depth,
                    "threshold": config.threshold,
                }),
                Some(seed),
            );
            m.add_input(&dataset)?;
            m.add_output(&out);
            m.write_beside(&out)?;
            Ok(())
        }

        Command::Segment { engine, params, model, kb, threshold, input, format, out } => {
            let text = match &input {
                Some(p) => fs::read_to_string(p)?,
                None => {
                    let mut buf = String::new();
                    std::io::stdin().read_to_string(&mut buf)?;
                    buf
                }
            };
            if text.is_empty() {
                return write_or_print(out.as_deref(), "");
            }
            let doc = TextDocument::new("input", text);
            let boundaries = match engine {
                Engine::Punkt => {
                    let params = load_punkt_params(params.as_deref())?;
                    let config = PunktConfig {
                        legal_kb_enabled: kb == KbToggle::On,
                        ..PunktConfig::default()
                    };
                    PunktSegmenter::new(params, kb_arc()?, config).segment(&doc)
                }
                Engine::Charboundary => {
                    let path = model.as_deref().ok_or_else(|| {
                        CliError::Usage("--model is required for --engine charboundary".into())
                    })?;
                    let seg = CharSegmenter::new(load_model(path)?, kb_arc()?);
                    match threshold {
                        Some(t) if !(0.0..=1.0).contains(&t) => {
                            return Err(CliError::Usage(format!(
                                "--threshold {t} outside [0, 1]"
                            )));
                        }
                        Some(t) => seg.segment_with_threshold(&doc, t),
                        None => seg.segment(&doc),
                    }
                }
            };

            let spans = spans_from_boundaries(&doc, &boundaries)
                .map_err(|e| CliError::Runtime(e.to_string()))?;
            let rendered = match format {
                OutputFormat::Plain => {
                    let mut s = String::new();
                    for span in &spans {
                        s.push_str(doc.slice(span.start, span.end).trim());
                        s.push('\n');
                    }
                    s
                }
                OutputFormat::Offsets => {
                    let mut s = String::new();
                    for span in &spans {
                        s.push_str(&format!("{}\t{}\n", span.start, span.end));
                    }
                    s
                }
                OutputFormat::Delimited => {
                    let example = AnnotatedExample { doc, gold: boundaries };
                    render_delimited(&example)
                }
            };
            write_or_print(out.as_deref(), &rendered)
        }

        Command::Evaluate { engine, dataset, params, model, kb, report_format, out } => {
            let examples = load_nonempty(&dataset)?;
            let mut entries = Vec::new();
            for e in engine {
                let (name, result) = match e {
                    Engine::Punkt => {
                        let params = load_punkt_params(params.as_deref())?;
                        let config = PunktConfig {
                            legal_kb_enabled: kb == KbToggle::On,
                            ..PunktConfig::default()
                        };
                        let seg = PunktSegmenter::new(params, kb_arc()?, config);
                        let name =
                            if kb == KbToggle::On { "punkt" } else { "punkt (kb off)" };
                        (name, evaluate(&seg, &examples))
                    }
                    Engine::Charboundary => {
                        let path = model.as_deref().ok_or_else(|| {
                            CliError::Usage(
                                "--model is required for --engine charboundary".into(),
                            )
                        })?;
                        let seg = CharSegmenter::new(load_model(path)?, kb_arc()?);
                        ("charboundary", evaluate(&seg, &examples))
                    }
                };
                let result = result.map_err(|e| CliError::Runtime(e.to_string()))?;
                entries.push(ReportEntry {
                    name: name.to_string(),
                    eval: Some(result),
                    throughput: None,
                });
            }
            let report = emit_report(&entries, report_format.to_format());
            write_or_print(out.as_deref(), &report)?;

            if let Some(out) = &out {
                let mut m = RunManifest::new(
                    "evaluate",
                    json!({
                        "engines": entries.iter().map(|e| e.name.clone()).collect::<Vec<_>>(),
                        "kb": kb == KbToggle::On,
                    }),
                    None,
                );
                m.add_input(&dataset)?;
                if let Some(p) = &model {
                    m.add_input(p)?;
                }
                if let Some(p) = &params {
                    m.add_input(p)?;
                }
                m.add_output(out);
                m.write_beside(out)?;
            }
            Ok(())
        }

        Command::Sweep { model, dataset, grid, out } => {
            let thresholds = parse_grid(&grid)?;
            let examples = load_nonempty(&dataset)?;
            let forest = load_model(&model)?;
            let curve = threshold_sweep(&forest, kb_arc()?, &examples, &thresholds)
                .map_err(|e| CliError::Runtime(e.to_string()))?;

            let mut rendered = String::from("threshold,precision,recall,f1\n");
            for (t, r) in &curve.points {
                rendered.push_str(&format!(
                    "{:?},{:?},{:?},{:?}\n",
                    t, r.precision, r.recall, r.f1
                ));
            }
            write_or_print(out.as_deref(), &rendered)?;

            if let Some(out) = &out {
                let mut m =
                    RunManifest::new("sweep", json!({ "grid": thresholds }), None);
                m.add_input(&dataset)?;
                m.add_input(&model)?;
                m.add_output(out);
                m.write_beside(out)?;
            }
            Ok(())
        }

        Command::Synth {
            n_docs,
            seed,
            citation_probability,
            enumeration_probability,
            exclaim_probability,
            out_dir,
        } => {
            let mut config = SynthConfig { n_docs, seed, ..SynthConfig::default() };
            if let Some(p) = citation_probability {
                config.citation_probability = p;
            }
            if let Some(p) = enumeration_probability {
                config.enumeration_probability = p;
            }
            if let Some(p) = exclaim_probability {
                config.exclaim_probability = p;
            }
            for p in [
                config.citation_probability,
                config.enumeration_probability,
                config.exclaim_probability,
            ] {
                if !(0.0..=1.0).contains(&p) {
                    return Err(CliError::Usage(format!("probability {p} outside [0, 1]")));
                }
            }
            let examples = generate_synthetic(&config);
            fs::create_dir_all(&out_dir)?;
            let corpus_path = out_dir.join("corpus.sbd");
            fs::write(&corpus_path, render_delimited_corpus(&examples))?;

            let mut m = RunManifest::new(
                "synth",
                json!({
                    "n_docs": n_docs,
                    "citation_probability": config.citation_probability,
                    "enumeration_probability": config.enumeration_probability,
                    "exclaim_probability": config.exclaim_probability,
                }),
                Some(seed),
            );
            m.add_output(&corpus_path);
            m.write_beside(&corpus_path)?;
            Ok(())
        }

        Command::Stats { dataset } => {
            let examples = load_nonempty(&dataset)?;
            let stats = dataset_stats(&examples).map_err(CliError::from)?;
            println!(
                "{}",
                json!({
                    "n_examples": stats.n_examples,
                    "n_sentences": stats.n_sentences,
                    "mean_sentences_per_doc": stats.mean_sentences_per_doc,
                    "mean_sentence_length_chars": stats.mean_sentence_length_chars,
                })
            );
            Ok(())
        }
    }
}
