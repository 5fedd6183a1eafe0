use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use wortfolge::corpus::{error_kind, run_corpus};
use wortfolge::document::{load_document, parse_tags, Mode, Payload};
use wortfolge::lexicon_tsv::{load_lexicon, seed_lexicon};
use wortfolge::report::{
    pretty_analyze, pretty_disambiguate, pretty_generate, run_analyze, run_disambiguate,
    run_generate, to_json,
};
use wortfolge::slot_table_tsv::load_slot_table;
use wortfolge_core::{build_slot_table, Grammar, Lexicon, SlotTable};

const EXIT_INPUT: u8 = 1;
const EXIT_GENERATION: u8 = 2;
const EXIT_UNGRAMMATICAL: u8 = 3;
const EXIT_CORPUS: u8 = 4;

/// Generate, analyze and disambiguate German constituent orders.
#[derive(Parser)]
#[command(name = "wortfolge", version)]
struct Cli {
    /// Lexicon TSV; the built-in seed lexicon when omitted.
    #[arg(long, global = true, env = "WORTFOLGE_LEXICON")]
    lexicon: Option<PathBuf>,
    /// Slot table TSV; the built-in table when omitted.
    #[arg(long, global = true)]
    slot_table: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct Output {
    /// Interlinear text instead of JSON.
    #[arg(long, conflicts_with = "json")]
    pretty: bool,
    /// JSON report (the default).
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Linearize a clause specification.
    Generate {
        #[arg(long)]
        clause: PathBuf,
        /// Tag assignment; overrides tags written on the constituents.
        #[arg(long)]
        tags: Option<PathBuf>,
        /// Also list every order some tag assignment produces.
        #[arg(long)]
        all_variants: bool,
        #[command(flatten)]
        output: Output,
    },
    /// Judge an observed order and recover theme, rheme and focus.
    Analyze {
        #[arg(long)]
        observed: PathBuf,
        #[command(flatten)]
        output: Output,
    },
    /// Rank candidate readings of one sentence.
    Disambiguate {
        #[arg(long)]
        candidates: PathBuf,
        #[command(flatten)]
        output: Output,
    },
    /// Regression corpus commands.
    Corpus {
        #[command(subcommand)]
        action: CorpusAction,
    },
}

#[derive(Subcommand)]
enum CorpusAction {
    /// Run every case and compare with its expectations.
    Run {
        file: PathBuf,
        /// Case id, or a prefix ending in `*`.
        #[arg(long)]
        filter: Option<String>,
        #[command(flatten)]
        output: Output,
    },
}

struct Failure {
    code: u8,
    message: String,
}

fn input_error(path: &Path, e: impl std::fmt::Display) -> Failure {
    Failure {
        code: EXIT_INPUT,
        message: format!("{}: {e}", path.display()),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| input_error(path, e))
}

fn load_resources(cli: &Cli) -> Result<(SlotTable, Lexicon), Failure> {
    let table = match &cli.slot_table {
        Some(p) => {
            let f = std::fs::File::open(p).map_err(|e| input_error(p, e))?;
            load_slot_table(std::io::BufReader::new(f)).map_err(|e| input_error(p, e))?
        }
        None => build_slot_table(),
    };
    let lexicon = match &cli.lexicon {
        Some(p) => {
            let f = std::fs::File::open(p).map_err(|e| input_error(p, e))?;
            load_lexicon(std::io::BufReader::new(f)).map_err(|e| input_error(p, e))?
        }
        None => seed_lexicon(),
    };
    Ok((table, lexicon))
}

#[derive(Serialize)]
struct ErrorBody {
    kind: &'static str,
    message: String,
}

#[derive(Serialize)]
struct ErrorReport {
    mode: Mode,
    error: ErrorBody,
}

fn run(cli: &Cli) -> Result<u8, Failure> {
    let (table, lexicon) = load_resources(cli)?;
    let g = Grammar::new(&table, &lexicon);
    match &cli.command {
        Command::Generate {
            clause,
            tags,
            all_variants,
            output,
        } => {
            let doc = load_document(&read(clause)?, Some(Mode::Generate), &lexicon)
                .map_err(|e| input_error(clause, e))?;
            let Payload::Generate(req) = doc.payload else {
                unreachable!("mode checked by the loader")
            };
            let assignment = match tags {
                Some(p) => parse_tags(&read(p)?).map_err(|e| input_error(p, e))?,
                None => req.effective_tags(),
            };
            match run_generate(&g, &req.clause, &assignment, *all_variants) {
                Ok(report) => {
                    if output.pretty {
                        print!("{}", pretty_generate(&g, &req.clause, &report));
                    } else {
                        print!("{}", to_json(&report));
                    }
                    Ok(0)
                }
                Err(e) => {
                    if !output.pretty {
                        print!(
                            "{}",
                            to_json(&ErrorReport {
                                mode: Mode::Generate,
                                error: ErrorBody {
                                    kind: error_kind(&e),
                                    message: e.to_string(),
                                },
                            })
                        );
                    }
                    Err(Failure {
                        code: EXIT_GENERATION,
                        message: e.to_string(),
                    })
                }
            }
        }
        Command::Analyze { observed, output } => {
            let doc = load_document(&read(observed)?, Some(Mode::Analyze), &lexicon)
                .map_err(|e| input_error(observed, e))?;
            let Payload::Analyze(obs) = doc.payload else {
                unreachable!("mode checked by the loader")
            };
            let report = run_analyze(&g, &obs);
            if output.pretty {
                print!("{}", pretty_analyze(&g, &obs, &report));
            } else {
                print!("{}", to_json(&report));
            }
            Ok(if report.analysis.verdict.is_grammatical() {
                0
            } else {
                EXIT_UNGRAMMATICAL
            })
        }
        Command::Disambiguate { candidates, output } => {
            let doc = load_document(&read(candidates)?, Some(Mode::Disambiguate), &lexicon)
                .map_err(|e| input_error(candidates, e))?;
            let Payload::Disambiguate(req) = doc.payload else {
                unreachable!("mode checked by the loader")
            };
            let report =
                run_disambiguate(&g, &req.readings()).map_err(|e| input_error(candidates, e))?;
            if output.pretty {
                print!("{}", pretty_disambiguate(&report));
            } else {
                print!("{}", to_json(&report));
            }
            let viable = report
                .readings
                .first()
                .is_some_and(|r| !r.rejected && r.verdict.is_grammatical());
            Ok(if viable { 0 } else { EXIT_UNGRAMMATICAL })
        }
        Command::Corpus {
            action:
                CorpusAction::Run {
                    file,
                    filter,
                    output,
                },
        } => {
            let summary = run_corpus(&g, file, filter.as_deref()).map_err(|e| Failure {
                code: EXIT_INPUT,
                message: e.to_string(),
            })?;
            if output.pretty {
                print!("{}", summary.pretty());
            } else {
                print!("{}", to_json(&summary));
            }
            if summary.ok() {
                Ok(0)
            } else {
                Err(Failure {
                    code: EXIT_CORPUS,
                    message: format!("failing cases: {}", summary.failing_ids().join(", ")),
                })
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_INPUT } else { 0 });
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("wortfolge: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
