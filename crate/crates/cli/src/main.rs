use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use twistor_core::classify::{DEFAULT_SAMPLES, DEFAULT_TOL};
use twistor_core::report::{
    classification_table, closed_form_table, decompose_table, predicates_json, scan_table, theorem_tag, twistor_table,
    verdict_table, Table,
};
use twistor_core::twistor::{closed_form_report, nijenhuis_closed_form_gap};
use twistor_core::{
    build, frame_scan, gray_hervella, theorem_check, zoo, AlgebraicCurvature, Check, Error, Orientation, ScanConfig,
    Structure, TheoremId, Verdict,
};

#[derive(Parser)]
#[command(
    name = "twistor",
    version,
    about = "Curvature and twistor-space diagnostics for four-manifolds"
)]
struct Cli {
    /// Worker threads for frame scans (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Blocks A, B, C, Ricci, Weyl parts and predicates.
    Decompose {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Every twistor-space quantity at the point, with the closed-form diff table.
    Twistor {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value_t = 1.0)]
        t: f64,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Gray–Hervella membership at the input frame.
    Classify {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value_t = 1.0)]
        t: f64,
        #[arg(long, default_value = "ahs")]
        structure: Structure,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Worst case of a named residual over structured and Haar frames.
    Scan {
        #[command(flatten)]
        input: InputArgs,
        /// quadratic_einstein, nijenhuis_quadratic, nijenhuis, block_b, K, AK, NK, QK, QQK, SK,
        /// gap_low, gap_high, or linear:a1,...,a8
        #[arg(long)]
        check: String,
        #[arg(long, default_value_t = 1.0)]
        t: f64,
        #[arg(long, default_value = "ahs")]
        structure: Structure,
        #[command(flatten)]
        scan: ScanArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Checks a theorem on the input: T5.2, T5.4, T5.6, T1.1, T1.2, T1.3, T1.4.
    Verify {
        theorem: String,
        #[command(flatten)]
        input: InputArgs,
        /// Fiber parameter; defaults to 1 (to sqrt(12/S) for T1.4 when S > 0).
        #[arg(long)]
        t: Option<f64>,
        #[command(flatten)]
        scan: ScanArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Built-in curvature fixtures.
    Zoo {
        #[command(subcommand)]
        action: ZooAction,
    },
}

#[derive(Subcommand)]
enum ZooAction {
    List,
    /// Prints the fixture in the input JSON schema.
    Dump {
        name: String,
    },
}

#[derive(Args)]
struct InputArgs {
    /// Curvature JSON file.
    #[arg(long, conflicts_with = "zoo", required_unless_present = "zoo")]
    input: Option<PathBuf>,
    /// Built-in fixture name (see `zoo list`).
    #[arg(long)]
    zoo: Option<String>,
    /// Overrides the orientation of the input frame.
    #[arg(long)]
    orientation: Option<Orientation>,
}

#[derive(Args)]
struct ScanArgs {
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
}

#[derive(Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

impl InputArgs {
    fn load(&self) -> Result<(String, AlgebraicCurvature), Error> {
        let (source, c) = match (&self.input, &self.zoo) {
            (Some(path), _) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))?;
                (path.display().to_string(), AlgebraicCurvature::from_json_str(&text)?)
            }
            (None, Some(name)) => (format!("zoo:{name}"), zoo::lookup(name)?.curvature),
            (None, None) => return Err(Error::InvalidInput("one of --input or --zoo is required".into())),
        };
        let c = match self.orientation {
            Some(o) => c.with_orientation(o),
            None => c,
        };
        c.validate()?;
        Ok((source, c))
    }
}

fn positive_t(t: f64) -> Result<f64, Error> {
    if t > 0.0 {
        Ok(t)
    } else {
        Err(Error::NonPositiveT(t))
    }
}

fn render(format: Format, doc: Value, table: &Table, text_header: &str) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&doc).expect("report serializes");
            s.push('\n');
            s
        }
        Format::Csv => table.to_csv(),
        Format::Text => format!("{text_header}{}", table.to_text()),
    }
}

fn entries(table: &Table) -> Value {
    serde_json::to_value(&table.entries).expect("entries serialize")
}

/// Output text and exit status for a command.
fn run(cmd: Command) -> Result<(String, u8), Error> {
    match cmd {
        Command::Decompose { input, tol, out } => {
            let (source, c) = input.load()?;
            let table = decompose_table(&c);
            let preds = predicates_json(&c, tol);
            let doc = json!({
                "source": source,
                "orientation": c.orientation(),
                "tol": tol,
                "predicates": preds,
                "entries": entries(&table),
            });
            let header = format!(
                "source {source}\norientation {:?}\npredicates {preds}\n",
                c.orientation()
            );
            Ok((render(out.format, doc, &table, &header), 0))
        }
        Command::Twistor { input, t, out } => {
            let (source, c) = input.load()?;
            let d = build(&c, positive_t(t)?)?;
            let table = twistor_table(&d);
            let diffs = closed_form_report(&d);
            let doc = json!({
                "source": source,
                "t": t,
                "orientation_converted": d.orientation_converted,
                "entries": entries(&table),
                "closed_form_diff": diffs,
                "nijenhuis_closed_form_gap": nijenhuis_closed_form_gap(&d),
            });
            let mut full = Table { entries: table.entries };
            full.entries.extend(closed_form_table(&diffs).entries);
            let header = format!(
                "source {source}\nt {t}\norientation_converted {}\n",
                d.orientation_converted
            );
            Ok((render(out.format, doc, &full, &header), 0))
        }
        Command::Classify {
            input,
            t,
            structure,
            tol,
            out,
        } => {
            let (source, c) = input.load()?;
            let d = build(&c, positive_t(t)?)?;
            let r = gray_hervella(&d, structure, tol);
            let table = classification_table(&r);
            let strongest = r.strongest().map(|c| c.name()).unwrap_or("none");
            let doc = json!({
                "source": source,
                "report": r,
                "strongest": strongest,
                "inclusion_consistent": r.inclusion_consistent(),
            });
            let header = format!("source {source}\nstructure {structure}\nt {t}\nstrongest {strongest}\n");
            Ok((render(out.format, doc, &table, &header), 0))
        }
        Command::Scan {
            input,
            check,
            t,
            structure,
            scan,
            out,
        } => {
            let (source, c) = input.load()?;
            let check: Check = check.parse()?;
            let cfg = ScanConfig {
                n: scan.n,
                seed: scan.seed,
                tol: scan.tol,
                t: positive_t(t)?,
                structure,
            };
            let r = frame_scan(&c, &check, &cfg)?;
            let table = scan_table(&r);
            let code = if r.within_tol { 0 } else { 1 };
            let doc = json!({ "source": source, "report": r });
            let header = format!(
                "source {source}\ncheck {}\nworst frame {}\nwithin tol {}\n",
                r.check.name(),
                r.worst_frame_label,
                r.within_tol
            );
            Ok((render(out.format, doc, &table, &header), code))
        }
        Command::Verify {
            theorem,
            input,
            t,
            scan,
            out,
        } => {
            let id: TheoremId = theorem.parse()?;
            let (source, c) = input.load()?;
            if let Some(t) = t {
                positive_t(t)?;
            }
            let cfg = twistor_core::classify::VerifyConfig {
                t,
                n: scan.n,
                seed: scan.seed,
                tol: scan.tol,
            };
            let v = theorem_check(id, &c, &cfg)?;
            let table = verdict_table(&v, id);
            let code = if v.verdict == Verdict::Fail { 1 } else { 0 };
            let doc = json!({ "source": source, "paper_ref": theorem_tag(id), "record": v });
            let text = match out.format {
                Format::Csv => {
                    let mut s = table.to_csv();
                    s.push_str(&format!("verdict,,{},{}\n", v.verdict, theorem_tag(id)));
                    s
                }
                _ => {
                    let header = format!(
                        "{} {}\nsource {source}\nt {}\nseed {}\nnotes {}\n",
                        v.theorem,
                        v.verdict,
                        v.t,
                        v.seed,
                        v.notes.join("; ")
                    );
                    render(out.format, doc, &table, &header)
                }
            };
            Ok((text, code))
        }
        Command::Zoo { action } => match action {
            ZooAction::List => {
                let mut s = String::new();
                for name in zoo::NAMED.iter().chain(zoo::PARAMETRIC.iter()) {
                    s.push_str(name);
                    s.push('\n');
                }
                Ok((s, 0))
            }
            ZooAction::Dump { name } => {
                let e = zoo::lookup(&name)?;
                let mut s = serde_json::to_string_pretty(&e.curvature.to_input())?;
                s.push('\n');
                Ok((s, 0))
            }
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli.command) {
        Ok((text, code)) => {
            print!("{text}");
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
