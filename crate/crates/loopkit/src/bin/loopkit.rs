use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use loopkit::format::{parse_table, write_stream, ParsedTable};
use loopkit::run;
use loopkit::verify::SuiteReport;
use loopkit_core::claims::{FixedModels, Harness, Verdict};
use loopkit_core::search::{Limits, Mode, Predicate, SearchError, SearchSpec};
use loopkit_core::structure::{analyze, StructureReport};
use loopkit_core::{catalog, Identity, MAX_ORDER};

const OK: u8 = 0;
const FAILS: u8 = 1;
const INPUT_ERROR: u8 = 2;
const BUDGET: u8 = 3;

#[derive(Parser)]
#[command(name = "loopkit", version, about = "Finite loops: analysis, identity checking and model search")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Print nuclei, commutant, center, nilpotency class and identity flags.
    Analyze {
        table: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Check an identity (catalog name or expression) on a table.
    Check {
        table: PathBuf,
        identity: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Enumerate loops of one order satisfying identities.
    Enumerate {
        #[arg(long)]
        order: usize,
        /// Catalog name or expression; repeatable.
        #[arg(long = "identity", short = 'i')]
        identities: Vec<String>,
        /// One canonical representative per isomorphism class.
        #[arg(long, conflicts_with = "first_only")]
        up_to_iso: bool,
        /// Stop at the first loop found.
        #[arg(long)]
        first_only: bool,
        /// nucleus_not_in_center, nonassociative or always.
        #[arg(long)]
        predicate: Option<String>,
        /// Write tables here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long)]
        max_nodes: Option<u64>,
        /// Print only the stats line.
        #[arg(long)]
        count: bool,
    },
    /// List the named identities.
    Catalog {
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Check the structure theorems about Cheban loops on finite models.
    VerifyPaper {
        #[arg(long, default_value_t = 8)]
        max_order: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Directory for witness tables of failed claims.
        #[arg(long)]
        witness_dir: Option<PathBuf>,
        #[arg(long)]
        max_nodes: Option<u64>,
        /// Replace the built-in order-8 example table.
        #[arg(long)]
        example: Option<PathBuf>,
    },
}

/// An error that maps to the input-error exit code.
#[derive(Debug)]
struct InputError(anyhow::Error);

fn input<E: Into<anyhow::Error>>(e: E) -> InputError {
    InputError(e.into())
}

fn read_table(path: &Path) -> Result<ParsedTable, InputError> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display())).map_err(input)?;
    parse_table(&text).with_context(|| path.display().to_string()).map_err(input)
}

fn resolve(text: &str) -> Result<Identity, InputError> {
    catalog::resolve(text).with_context(|| format!("identity {text:?}")).map_err(input)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(code) => ExitCode::from(code),
        // a closed stdout (`| head`) is not an input error
        Err(InputError(e)) if e.downcast_ref::<io::Error>().is_some_and(|io| io.kind() == io::ErrorKind::BrokenPipe) => {
            ExitCode::from(OK)
        }
        Err(InputError(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(INPUT_ERROR)
        }
    }
}

fn dispatch(cmd: Command) -> Result<u8, InputError> {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let code = match cmd {
        Command::Analyze { table, format } => {
            let p = read_table(&table)?;
            let report = analyze(&p.table);
            if !p.relabel.is_identity() {
                eprintln!("note: identity element relabeled to 0 by {:?}", p.relabel.images());
            }
            match format {
                Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&report).unwrap()),
                Format::Text => write!(out, "{}", report_text(p.table.order(), &report)),
            }
            .map_err(input)?;
            OK
        }
        Command::Check { table, identity, format } => {
            let p = read_table(&table)?;
            let id = resolve(&identity)?;
            let back = p.relabel.inverse();
            let cex = id.counterexample(&p.table).map(|a| {
                let vals: Vec<(String, u8)> = a.pairs().map(|(v, x)| (v.to_string(), back.apply(x))).collect();
                let l = id.lhs.eval(&a, &p.table).map(|x| back.apply(x)).ok();
                let r = id.rhs.eval(&a, &p.table).map(|x| back.apply(x)).ok();
                (vals, l, r)
            });
            match format {
                Format::Json => {
                    let doc = serde_json::json!({
                        "identity": id.to_string(),
                        "holds": cex.is_none(),
                        "counterexample": cex.as_ref().map(|(v, l, r)| serde_json::json!({
                            "assignment": v.iter().map(|(k, x)| (k.clone(), serde_json::Value::from(*x))).collect::<serde_json::Map<_, _>>(),
                            "lhs": l,
                            "rhs": r,
                        })),
                    });
                    writeln!(out, "{doc}")
                }
                Format::Text => match &cex {
                    None => writeln!(out, "holds: {id}"),
                    Some((v, l, r)) => {
                        let assign: Vec<String> = v.iter().map(|(k, x)| format!("{k}={x}")).collect();
                        writeln!(out, "fails: {id}\ncounterexample: {}\nlhs = {}, rhs = {}", assign.join(" "), l.unwrap(), r.unwrap())
                    }
                },
            }
            .map_err(input)?;
            if cex.is_none() {
                OK
            } else {
                FAILS
            }
        }
        Command::Enumerate { order, identities, up_to_iso, first_only, predicate, out: path, jobs, max_nodes, count } => {
            if order == 0 || order > MAX_ORDER {
                return Err(input(anyhow::anyhow!("order must be between 1 and {MAX_ORDER}")));
            }
            let constraints = identities.iter().map(|s| resolve(s)).collect::<Result<Vec<_>, _>>()?;
            let mode = if up_to_iso {
                Mode::UpToIsomorphism
            } else if first_only {
                Mode::FirstOnly
            } else {
                Mode::AllLabeled
            };
            let mut spec = SearchSpec::new(order, constraints, mode);
            spec.limits = Limits { max_nodes };
            if let Some(name) = predicate {
                let p = Predicate::by_name(&name)
                    .ok_or_else(|| input(anyhow::anyhow!("unknown predicate {name:?}")))?;
                spec = spec.with_predicate(p);
            }
            let result = match run::enumerate(&spec, jobs) {
                Ok(r) => r,
                Err(e @ SearchError::BudgetExceeded { .. }) => {
                    eprintln!("error: {e}");
                    return Ok(BUDGET);
                }
                Err(e) => return Err(input(e)),
            };
            let mut stats = serde_json::to_value(result.stats).unwrap();
            stats["tables"] = result.tables.len().into();
            let stats = stats.to_string();
            let text = if count {
                format!("{stats}\n")
            } else {
                write_stream(&result.tables, Some(&stats))
            };
            match path {
                Some(p) => fs::write(&p, text).with_context(|| format!("writing {}", p.display())).map_err(input)?,
                None => out.write_all(text.as_bytes()).map_err(input)?,
            }
            if result.complete() {
                OK
            } else {
                eprintln!("error: node budget exhausted; output is incomplete");
                BUDGET
            }
        }
        Command::Catalog { format } => {
            let entries: Vec<_> = catalog::catalog()
                .into_iter()
                .map(|e| (e.name, e.identity, false))
                .chain(catalog::auxiliary().into_iter().map(|e| (e.name, e.identity, true)))
                .collect();
            match format {
                Format::Json => {
                    let doc: Vec<_> = entries
                        .iter()
                        .map(|(n, id, aux)| serde_json::json!({"name": n, "identity": id.to_string(), "auxiliary": aux}))
                        .collect();
                    writeln!(out, "{}", serde_json::to_string_pretty(&doc).unwrap())
                }
                Format::Text => {
                    let w = entries.iter().map(|e| e.0.len()).max().unwrap_or(0);
                    entries.iter().try_for_each(|(n, id, _)| writeln!(out, "{n:<w$}  {id}"))
                }
            }
            .map_err(input)?;
            OK
        }
        Command::VerifyPaper { max_order, format, witness_dir, max_nodes, example } => {
            if max_order == 0 {
                return Err(input(anyhow::anyhow!("--max-order must be at least 1")));
            }
            let mut fixed = FixedModels::default();
            if let Some(p) = example {
                fixed.example = read_table(&p)?.table;
            }
            let mut harness = Harness::with_models(max_order, Limits { max_nodes }, fixed);
            let results = harness.run_suite();
            let report = SuiteReport::new(max_order, results, witness_dir.as_deref()).map_err(input)?;
            match format {
                Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&report).unwrap()),
                Format::Text => write!(out, "{}", report.to_text()),
            }
            .map_err(input)?;
            let verdicts: Vec<_> = report.claims.iter().map(|c| c.result.verdict).collect();
            if verdicts.contains(&Verdict::Fail) {
                FAILS
            } else if verdicts.contains(&Verdict::Skipped) {
                BUDGET
            } else {
                OK
            }
        }
    };
    Ok(code)
}

fn report_text(order: usize, r: &StructureReport) -> String {
    let set = |s: &loopkit_core::ElementSet| format!("{:?}", s.to_vec());
    let mut s = format!("order             {order}\n");
    for (name, v) in [
        ("left_nucleus", &r.left_nucleus),
        ("middle_nucleus", &r.middle_nucleus),
        ("right_nucleus", &r.right_nucleus),
        ("nucleus", &r.nucleus),
        ("commutant", &r.commutant),
        ("center", &r.center),
    ] {
        s.push_str(&format!("{name:<18}{}\n", set(v)));
    }
    let class = r.nilpotency_class.map_or_else(|| "not nilpotent".to_string(), |k| k.to_string());
    s.push_str(&format!("{:<18}{class}\n", "nilpotency_class"));
    let flags = serde_json::to_value(r.flags).unwrap();
    for (k, v) in flags.as_object().unwrap() {
        s.push_str(&format!("{k:<28}{v}\n"));
    }
    s
}
