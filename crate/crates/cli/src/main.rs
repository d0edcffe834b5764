use std::collections::BTreeMap;
use std::io::{self, BufRead, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use ontoseer_core::axioms::{recommend_axioms, AxiomOptions, DEFAULT_AXIOM_K, DEFAULT_AXIOM_THRESHOLD};
use ontoseer_core::cq::parse_cq_file;
use ontoseer_core::eval::{evaluate, format_table, parse_gold, parse_recs};
use ontoseer_core::exec::Execution;
use ontoseer_core::index::{CorpusIndex, DEFAULT_TERM_FLOOR};
use ontoseer_core::naming::check_document;
use ontoseer_core::odp::{load_odp_dir, recommend_odps, OdpOptions, OntologyMeta, DEFAULT_ODP_K, DEFAULT_ODP_THRESHOLD};
use ontoseer_core::ontoclean::{parse_answers, profile_from_answers, questions_for, validate_hierarchy, Answers, MetaProfile};
use ontoseer_core::ontology::{load_corpus, load_ontology, AxiomKind, Iri, OntologyDocument, TermKind};
use ontoseer_core::Recommendation;
use ontoseer_service::ServiceConfig;

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{path}: {source}")]
    Read { path: PathBuf, source: io::Error },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Other(#[from] Box<dyn std::error::Error + Send + Sync>),
}

type Result<T> = std::result::Result<T, CliError>;

fn boxed<E: std::error::Error + Send + Sync + 'static>(e: E) -> CliError {
    CliError::Other(Box::new(e))
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.to_path_buf(),
        source,
    })
}

/// Ontology quality recommendations over a local corpus.
#[derive(Parser)]
#[command(name = "ontoseer", version)]
struct Cli {
    /// Run on the calling thread only.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the term index over every *.ttl file under a directory.
    Index {
        #[arg(long)]
        corpus: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    #[command(subcommand)]
    Recommend(Recommend),
    /// Report naming-convention violations with a suggested fix.
    CheckNames {
        #[arg(long)]
        ontology: PathBuf,
    },
    /// Check each subclass edge against the meta-property rules.
    ValidateHierarchy {
        #[arg(long)]
        ontology: PathBuf,
        #[arg(long, conflicts_with = "interactive", required_unless_present = "interactive")]
        answers: Option<PathBuf>,
        /// Ask the three questions per class on the terminal.
        #[arg(long)]
        interactive: bool,
    },
    /// Precision@k and recall@k of recommendation dumps against gold sets.
    Eval {
        #[arg(long)]
        gold: PathBuf,
        #[arg(long)]
        recs: PathBuf,
        #[arg(long, value_delimiter = ',', default_values_t = [3, 5, 7])]
        k: Vec<usize>,
    },
    /// Run the HTTP service.
    Serve {
        #[arg(long)]
        port: Option<u16>,
        #[arg(long)]
        config: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum Recommend {
    /// Reusable terms from the index, or from a remote provider.
    Terms {
        #[arg(long, required_unless_present = "remote")]
        index: Option<PathBuf>,
        #[arg(long)]
        query: String,
        #[arg(long, default_value_t = 5)]
        k: usize,
        /// class, object-property or data-property.
        #[arg(long)]
        kind: Option<TermKind>,
        #[arg(long, default_value_t = DEFAULT_TERM_FLOOR)]
        floor: f64,
        /// lov or bioportal.
        #[arg(long)]
        remote: Option<String>,
    },
    /// Axioms from similarly named corpus entities.
    Axioms {
        #[arg(long)]
        ontology: PathBuf,
        #[command(flatten)]
        corpus: CorpusArgs,
        #[arg(long, default_value_t = DEFAULT_AXIOM_K)]
        k: usize,
        #[arg(long, default_value_t = DEFAULT_AXIOM_THRESHOLD)]
        threshold: f64,
    },
    /// Ontology design patterns ranked against the ontology and its metadata.
    Odps {
        #[arg(long)]
        ontology: PathBuf,
        #[arg(long)]
        odp_dir: PathBuf,
        #[arg(long)]
        description: Option<String>,
        #[arg(long)]
        domain: Option<String>,
        /// One competency question per line.
        #[arg(long)]
        cqs: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_ODP_K)]
        k: usize,
        #[arg(long, default_value_t = DEFAULT_ODP_THRESHOLD)]
        threshold: f64,
    },
}

#[derive(Args)]
#[group(required = true, multiple = true)]
struct CorpusArgs {
    /// Corpus directory; indexed on the fly unless --index is given.
    #[arg(long)]
    corpus: Option<PathBuf>,
    /// Prebuilt index; without --corpus its recorded source files are loaded.
    #[arg(long)]
    index: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let exec = if cli.sequential {
        Execution::Sequential
    } else {
        Execution::default()
    };
    match run(cli.command, exec) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

fn run(command: Command, exec: Execution) -> Result<()> {
    let mut out = io::stdout().lock();
    match command {
        Command::Index { corpus, out: path } => {
            let dir = corpus.canonicalize().map_err(|source| CliError::Read { path: corpus, source })?;
            let docs = load_corpus(&dir, exec).map_err(boxed)?;
            let index = CorpusIndex::build(&docs).map_err(boxed)?;
            index.save(&path).map_err(boxed)?;
            writeln!(
                out,
                "indexed {} ontologies, {} tokens -> {}",
                index.registry().len(),
                index.tokens().count(),
                path.display()
            )
            .map_err(boxed)?;
        }
        Command::Recommend(r) => recommend(r, exec, &mut out)?,
        Command::CheckNames { ontology } => {
            let doc = load_ontology(&ontology).map_err(boxed)?;
            for finding in check_document(&doc) {
                let fix = finding.recommendation.as_deref().unwrap_or("-");
                for rule in &finding.violations {
                    writeln!(out, "{}\t{:?}\t{rule:?}\t{fix}", finding.name, finding.kind).map_err(boxed)?;
                }
            }
        }
        Command::ValidateHierarchy {
            ontology,
            answers,
            interactive,
        } => {
            let doc = load_ontology(&ontology).map_err(boxed)?;
            let profiles = if interactive {
                let stdin = io::stdin();
                let mut input = stdin.lock();
                questionnaire(&doc, &mut input, &mut io::stderr())?
            } else {
                let path = answers.ok_or_else(|| CliError::Usage("--answers or --interactive is required".into()))?;
                parse_answers(&read(&path)?).map_err(boxed)?
            };
            for verdict in validate_hierarchy(&doc, &profiles) {
                writeln!(out, "{verdict}").map_err(boxed)?;
            }
        }
        Command::Eval { gold, recs, k } => {
            let gold = parse_gold(&read(&gold)?).map_err(boxed)?;
            let recs = parse_recs(&read(&recs)?).map_err(boxed)?;
            let reports = evaluate(&recs, &gold, &k).map_err(boxed)?;
            write!(out, "{}", format_table(&reports)).map_err(boxed)?;
        }
        Command::Serve { port, config } => {
            let mut config = match config {
                Some(path) => ServiceConfig::from_file(&path).map_err(boxed)?,
                None => ServiceConfig::default(),
            };
            if let Some(port) = port {
                config.port = port;
            }
            let runtime = tokio::runtime::Runtime::new().map_err(boxed)?;
            runtime.block_on(ontoseer_service::serve(config)).map_err(boxed)?;
        }
    }
    Ok(())
}

fn print_recommendations(out: &mut impl Write, recs: &[Recommendation]) -> Result<()> {
    for r in recs {
        writeln!(out, "{:.3}\t{}\t{}\t{}", r.score, r.item, r.source, r.rationale).map_err(boxed)?;
    }
    Ok(())
}

fn recommend(r: Recommend, exec: Execution, out: &mut impl Write) -> Result<()> {
    match r {
        Recommend::Terms {
            index,
            query,
            k,
            kind,
            floor,
            remote,
        } => {
            let recs = match remote {
                Some(provider) => remote_terms(&provider, &query, k)?,
                None => {
                    let path = index.ok_or_else(|| CliError::Usage("--index is required".into()))?;
                    let index = CorpusIndex::load(&path).map_err(boxed)?;
                    index.recommend_terms(&query, kind, k, floor).map_err(boxed)?
                }
            };
            print_recommendations(out, &recs)
        }
        Recommend::Axioms {
            ontology,
            corpus,
            k,
            threshold,
        } => {
            let working = load_ontology(&ontology).map_err(boxed)?;
            let (docs, index) = load_corpus_args(corpus, exec)?;
            let options = AxiomOptions { k, threshold, exec };
            for rec in recommend_axioms(&working, &docs, &index, options) {
                writeln!(out, "{:.3}\t{}\t{}", rec.similarity, rec.axiom, rec.source_ontology).map_err(boxed)?;
            }
            Ok(())
        }
        Recommend::Odps {
            ontology,
            odp_dir,
            description,
            domain,
            cqs,
            k,
            threshold,
        } => {
            let working = load_ontology(&ontology).map_err(boxed)?;
            let odps = load_odp_dir(&odp_dir).map_err(boxed)?;
            let cqs = match cqs {
                Some(path) => parse_cq_file(&read(&path)?),
                None => Vec::new(),
            };
            let meta = OntologyMeta {
                description,
                domain,
                cqs,
            };
            let recs = recommend_odps(&working, &meta, &odps, OdpOptions { k, threshold, exec });
            print_recommendations(out, &recs)
        }
    }
}

#[cfg(feature = "remote")]
fn remote_terms(provider: &str, query: &str, k: usize) -> Result<Vec<Recommendation>> {
    use ontoseer_core::index::remote::{query_remote, Provider, BIOPORTAL_KEY_ENV};
    let provider: Provider = provider.parse().map_err(CliError::Usage)?;
    let key = std::env::var(BIOPORTAL_KEY_ENV).ok();
    let mut recs = query_remote(provider, query, key.as_deref()).map_err(boxed)?;
    recs.truncate(k);
    Ok(recs)
}

#[cfg(not(feature = "remote"))]
fn remote_terms(_: &str, _: &str, _: usize) -> Result<Vec<Recommendation>> {
    Err(CliError::Usage("built without remote support".into()))
}

fn load_corpus_args(args: CorpusArgs, exec: Execution) -> Result<(Vec<OntologyDocument>, CorpusIndex)> {
    match (args.corpus, args.index) {
        (Some(dir), index) => {
            let docs = load_corpus(&dir, exec).map_err(boxed)?;
            let index = match index {
                Some(path) => CorpusIndex::load(&path).map_err(boxed)?,
                None => CorpusIndex::build(&docs).map_err(boxed)?,
            };
            Ok((docs, index))
        }
        (None, Some(path)) => {
            let index = CorpusIndex::load(&path).map_err(boxed)?;
            let mut docs = Vec::with_capacity(index.registry().len());
            for (id, entry) in index.registry() {
                let source = entry
                    .source_path
                    .as_ref()
                    .ok_or_else(|| CliError::Usage(format!("index records no source file for {id}; pass --corpus")))?;
                let mut doc = load_ontology(Path::new(source)).map_err(boxed)?;
                doc.ontology_id = id.clone();
                docs.push(doc);
            }
            Ok((docs, index))
        }
        (None, None) => Err(CliError::Usage("--corpus or --index is required".into())),
    }
}

fn ask(question: &str, input: &mut impl BufRead, prompt: &mut impl Write) -> Result<Option<bool>> {
    loop {
        write!(prompt, "{question} [y/n/skip] ").map_err(boxed)?;
        prompt.flush().map_err(boxed)?;
        let mut line = String::new();
        if input.read_line(&mut line).map_err(boxed)? == 0 {
            return Ok(None);
        }
        match line.trim().to_ascii_lowercase().as_str() {
            "y" | "yes" => return Ok(Some(true)),
            "n" | "no" => return Ok(Some(false)),
            "" | "s" | "skip" => return Ok(None),
            _ => writeln!(prompt, "please answer y, n or skip").map_err(boxed)?,
        }
    }
}

/// Ask the three questions for every class on a subclass edge.
fn questionnaire(
    doc: &OntologyDocument,
    input: &mut impl BufRead,
    prompt: &mut impl Write,
) -> Result<BTreeMap<Iri, MetaProfile>> {
    let classes: std::collections::BTreeSet<&Iri> = doc
        .axioms
        .iter()
        .filter(|a| a.kind == AxiomKind::SubClassOf)
        .filter_map(|a| Some((&a.subject, a.object.as_ref()?)))
        .filter(|(sub, sup)| sub != sup)
        .flat_map(|(sub, sup)| [sub, sup])
        .collect();
    let mut profiles = BTreeMap::new();
    for class in classes {
        writeln!(prompt, "{class}").map_err(boxed)?;
        let [q1, q2, q3] = questions_for(class);
        let answers = Answers {
            q1: ask(&q1, input, prompt)?,
            q2: ask(&q2, input, prompt)?,
            q3: ask(&q3, input, prompt)?,
        };
        profiles.insert(class.clone(), profile_from_answers(class.clone(), answers));
    }
    Ok(profiles)
}
