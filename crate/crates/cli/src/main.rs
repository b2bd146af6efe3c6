use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;
use thiserror::Error;

use mvp_fibres::fibre::{fibre_brute_with_cap, fibre_via_subgraphs, BRUTE_FORCE_CAP};
use mvp_fibres::motzkin::{
    class_representative_dec, enumerate_noncrossing, noncross_to_motzkin, phi, phi_inverse,
};
use mvp_fibres::sandpile::mvp_outcome_via_asm;
use mvp_fibres::verify::{self, SuiteReport};
use mvp_fibres::{LatticePath, ParkingPreference, Permutation, SandpileConfig};
use mvpf::report::ReportError;
use mvpf::tables::{self, guard, GuardError};
use mvpf::ReportTable;

#[derive(Parser)]
#[command(
    name = "mvpf",
    version,
    about = "MVP parking outcome fibres, tables and checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Pretty)]
    format: Format,

    /// Write output to this file instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Worker threads for enumeration (default: all cores)
    #[arg(long, global = true)]
    jobs: Option<usize>,

    /// Run beyond the default size limits
    #[arg(long, global = true)]
    force: bool,

    /// Seed for the randomised toppling-order checks
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Print intermediate steps
    #[arg(long, global = true)]
    trace: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Pretty,
    Csv,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Model {
    Mvp,
    Classical,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Subgraph,
    Brute,
    Both,
}

#[derive(Subcommand)]
enum Command {
    /// Park the cars and print the outcome permutation
    Outcome {
        #[arg(long, value_enum, default_value_t = Model::Mvp)]
        model: Model,
        #[arg(short = 'p', long = "pref")]
        pref: ParkingPreference,
    },
    /// List the fibre of a permutation
    Fibre {
        #[arg(long)]
        perm: Permutation,
        #[arg(long, value_enum, default_value_t = Method::Subgraph)]
        method: Method,
    },
    /// Fibre-size tables
    Table {
        #[command(subcommand)]
        which: TableKind,
    },
    /// Motzkin paths and non-crossing matchings
    Motzkin {
        #[command(subcommand)]
        sub: MotzkinCmd,
    },
    /// Sandpiles on the complete graph
    Sandpile {
        #[command(subcommand)]
        sub: SandpileCmd,
    },
    /// Run exhaustive property suites
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        /// Size cap (defaults depend on the suite)
        #[arg(long)]
        n: Option<usize>,
        /// Largest m for the bipartite suites
        #[arg(long)]
        m: Option<usize>,
    },
}

#[derive(Subcommand)]
enum TableKind {
    Bounds {
        #[arg(long, default_value_t = tables::BOUNDS_MAX_N)]
        max_n: usize,
    },
    Bipartite {
        #[arg(long, default_value_t = tables::BIPARTITE_MAX)]
        max_m: usize,
        #[arg(long, default_value_t = tables::BIPARTITE_MAX)]
        max_n: usize,
    },
    DecVsSplit {
        #[arg(long, default_value_t = tables::DEC_VS_SPLIT_MAX_N)]
        max_n: usize,
    },
    Conjecture {
        #[arg(long, default_value_t = tables::CONJECTURE_MAX_N)]
        max_n: usize,
    },
}

#[derive(Subcommand)]
enum MotzkinCmd {
    Phi {
        #[arg(short = 'p', long = "pref")]
        pref: ParkingPreference,
    },
    Inverse {
        #[arg(long)]
        path: LatticePath,
    },
    /// The rearrangement landing in the fibre of the decreasing permutation
    Rep {
        #[arg(short = 'p', long = "pref")]
        pref: ParkingPreference,
    },
    Noncross {
        #[arg(short = 'n')]
        n: usize,
        #[arg(long)]
        count: bool,
    },
}

#[derive(Subcommand)]
enum SandpileCmd {
    Stabilise {
        #[arg(short = 'c', long = "config")]
        config: SandpileConfig,
    },
    Recurrent {
        #[arg(short = 'c', long = "config")]
        config: SandpileConfig,
    },
    Minrec {
        #[arg(short = 'c', long = "config")]
        config: SandpileConfig,
    },
    MinrecClassical {
        #[arg(short = 'c', long = "config")]
        config: SandpileConfig,
    },
    Cantop {
        #[arg(short = 'c', long = "config")]
        config: SandpileConfig,
    },
    MvpOutcome {
        #[arg(short = 'p', long = "pref")]
        pref: ParkingPreference,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    All,
    #[value(name = "thm-2.5")]
    RoundTrip,
    #[value(name = "thm-2.8")]
    Acyclic,
    Displacement,
    #[value(name = "prop-2.10")]
    ValidP2Free,
    #[value(name = "prop-2.11")]
    HsValid,
    #[value(name = "thm-3.2")]
    MotzkinPath,
    PhiInverse,
    #[value(name = "thm-3.8")]
    Noncrossing,
    #[value(name = "thm-4.1")]
    BipartiteTwo,
    IsolatedVertex,
    BipartiteParity,
    #[value(name = "thm-5.5")]
    SandpileOutcome,
    #[value(name = "thm-6.3")]
    DecToSplit,
    Abelian,
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Contract(#[from] mvp_fibres::Error),
    #[error("{0}")]
    Guard(#[from] GuardError),
    #[error("{0}")]
    Report(#[from] ReportError),
    #[error("{0}")]
    Io(#[from] std::io::Error),
    /// A checked property failed; the report is already in the output.
    #[error("property check failed")]
    Failed(String),
}

type Out = Result<String, CliError>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let (text, code) = match run(&cli) {
        Ok(text) => (text, 0),
        Err(CliError::Failed(text)) => (text, 1),
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("error: {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    ExitCode::from(code)
}

fn run(cli: &Cli) -> Out {
    match &cli.command {
        Command::Outcome { model, pref } => outcome(cli, *model, pref),
        Command::Fibre { perm, method } => fibre(cli, perm, *method),
        Command::Table { which } => table(cli, which),
        Command::Motzkin { sub } => motzkin(cli, sub),
        Command::Sandpile { sub } => sandpile(cli, sub),
        Command::Verify { suite, n, m } => run_verify(cli, *suite, *n, *m),
    }
}

fn json_out(v: serde_json::Value) -> String {
    format!(
        "{}\n",
        serde_json::to_string_pretty(&v).expect("json value serialises")
    )
}

fn outcome(cli: &Cli, model: Model, p: &ParkingPreference) -> Out {
    let (perm, bumps) = match model {
        Model::Classical => (p.outcome_classical()?, Vec::new()),
        Model::Mvp => {
            let o = p.outcome_mvp()?;
            (o.outcome, o.bump_log)
        }
    };
    if cli.format == Format::Json {
        let bumps: Vec<_> = bumps
            .iter()
            .map(|e| json!({"car": e.car, "by": e.by, "from": e.from_spot, "to": e.to_spot}))
            .collect();
        return Ok(json_out(
            json!({"outcome": perm.to_string(), "bumps": bumps}),
        ));
    }
    let mut out = String::new();
    if cli.trace {
        for e in &bumps {
            writeln!(
                out,
                "car {} bumped by car {}: spot {} -> {}",
                e.car, e.by, e.from_spot, e.to_spot
            )
            .unwrap();
        }
    }
    writeln!(out, "{perm}").unwrap();
    Ok(out)
}

fn fibre(cli: &Cli, perm: &Permutation, method: Method) -> Out {
    let cap = if cli.force {
        usize::MAX
    } else {
        BRUTE_FORCE_CAP
    };
    let fib = match method {
        Method::Subgraph => fibre_via_subgraphs(perm, true),
        Method::Brute => fibre_brute_with_cap(perm, cap)?,
        Method::Both => fibre_via_subgraphs(perm, true),
    };
    let agreement = match method {
        Method::Both => Some(fibre_brute_with_cap(perm, cap)? == fib),
        _ => None,
    };
    let text = if cli.format == Format::Json {
        let entries: Vec<String> = fib.iter().map(|p| p.to_string()).collect();
        let mut v = json!({"perm": perm.to_string(), "size": fib.len(), "fibre": entries});
        if let Some(ok) = agreement {
            v["agree"] = json!(ok);
        }
        json_out(v)
    } else {
        let mut out = String::new();
        for p in &fib {
            writeln!(out, "{p}").unwrap();
        }
        writeln!(out, "size {}", fib.len()).unwrap();
        if let Some(ok) = agreement {
            writeln!(
                out,
                "{} subgraph and brute-force fibres agree",
                if ok { "PASS" } else { "FAIL" }
            )
            .unwrap();
        }
        out
    };
    match agreement {
        Some(false) => Err(CliError::Failed(text)),
        _ => Ok(text),
    }
}

fn render_table(cli: &Cli, t: &ReportTable) -> Out {
    Ok(match cli.format {
        Format::Pretty => t.to_pretty(),
        Format::Csv => t.to_csv()?,
        Format::Json => format!("{}\n", t.to_json()?),
    })
}

fn table(cli: &Cli, which: &TableKind) -> Out {
    let t = match *which {
        TableKind::Bounds { max_n } => tables::bounds_table(max_n, cli.force)?,
        TableKind::Bipartite { max_m, max_n } => tables::bipartite_table(max_m, max_n, cli.force)?,
        TableKind::DecVsSplit { max_n } => tables::dec_vs_split_table(max_n, cli.force)?,
        TableKind::Conjecture { max_n } => tables::conjecture_table(max_n, cli.force)?,
    };
    render_table(cli, &t)
}

fn motzkin(cli: &Cli, sub: &MotzkinCmd) -> Out {
    Ok(match sub {
        MotzkinCmd::Phi { pref } => format!("{}\n", phi(pref)),
        MotzkinCmd::Inverse { path } => format!("{}\n", phi_inverse(path)?),
        MotzkinCmd::Rep { pref } => format!("{}\n", class_representative_dec(pref)?),
        MotzkinCmd::Noncross { n, count } => {
            guard("n", *n, 14, cli.force)?;
            let ms = enumerate_noncrossing(*n);
            if *count {
                format!("{}\n", ms.len())
            } else {
                let mut t = ReportTable::new("noncrossing", &["arcs", "path"]);
                for m in &ms {
                    t.push(vec![
                        m.to_string().into(),
                        noncross_to_motzkin(m).to_string().into(),
                    ]);
                }
                render_table(cli, &t)?
            }
        }
    })
}

fn sandpile(cli: &Cli, sub: &SandpileCmd) -> Out {
    let mut out = String::new();
    match sub {
        SandpileCmd::Stabilise { config } => {
            let (c, seq) = config.stabilise();
            if cli.trace {
                let seq: Vec<String> = seq.iter().map(|v| v.to_string()).collect();
                writeln!(out, "topplings: {}", seq.join(",")).unwrap();
            }
            writeln!(out, "{c}").unwrap();
        }
        SandpileCmd::Recurrent { config } => writeln!(out, "{}", config.is_recurrent()?).unwrap(),
        SandpileCmd::Minrec { config } | SandpileCmd::MinrecClassical { config } => {
            let (c, steps) = match sub {
                SandpileCmd::Minrec { .. } => config.minrec_trace()?,
                _ => config.minrec_classical_trace()?,
            };
            if cli.trace {
                for s in &steps {
                    let path: Vec<String> = s.values.iter().map(|v| v.to_string()).collect();
                    writeln!(
                        out,
                        "j={} i={}: {} -> {}",
                        s.j,
                        s.i,
                        path.join(" -> "),
                        s.after
                    )
                    .unwrap();
                }
            }
            writeln!(out, "{c}").unwrap();
        }
        SandpileCmd::Cantop { config } => {
            writeln!(out, "{}", config.canonical_toppling()?).unwrap()
        }
        SandpileCmd::MvpOutcome { pref } => {
            writeln!(out, "{}", mvp_outcome_via_asm(pref)?).unwrap()
        }
    }
    Ok(out)
}

const ALL_SUITES: [Suite; 14] = [
    Suite::RoundTrip,
    Suite::Acyclic,
    Suite::Displacement,
    Suite::ValidP2Free,
    Suite::HsValid,
    Suite::MotzkinPath,
    Suite::PhiInverse,
    Suite::Noncrossing,
    Suite::BipartiteTwo,
    Suite::IsolatedVertex,
    Suite::BipartiteParity,
    Suite::SandpileOutcome,
    Suite::DecToSplit,
    Suite::Abelian,
];

/// Default size and the largest size allowed without `--force`.
fn suite_limits(suite: Suite) -> (usize, usize) {
    match suite {
        Suite::RoundTrip | Suite::Acyclic | Suite::ValidP2Free | Suite::HsValid => (6, 7),
        Suite::Displacement | Suite::MotzkinPath | Suite::SandpileOutcome => (6, 7),
        Suite::PhiInverse => (12, 14),
        Suite::Noncrossing | Suite::DecToSplit | Suite::Abelian => (8, 11),
        Suite::BipartiteTwo | Suite::IsolatedVertex | Suite::BipartiteParity => (8, 10),
        Suite::All => unreachable!("expanded before dispatch"),
    }
}

fn run_suite(
    cli: &Cli,
    suite: Suite,
    n: Option<usize>,
    m: Option<usize>,
) -> Result<SuiteReport, CliError> {
    let (default, limit) = suite_limits(suite);
    let size = match suite {
        Suite::BipartiteTwo | Suite::IsolatedVertex | Suite::BipartiteParity => m.or(n),
        _ => n,
    }
    .unwrap_or(default);
    guard("n", size, limit, cli.force)?;
    Ok(match suite {
        Suite::RoundTrip => verify::round_trip_and_injectivity(size),
        Suite::Acyclic => verify::acyclic_iff_all_valid(size),
        Suite::Displacement => verify::displacement_identity(size),
        Suite::ValidP2Free => verify::valid_implies_p2_free(size),
        Suite::HsValid => verify::hs_implies_valid(size),
        Suite::MotzkinPath => verify::motzkin_pf_iff_path(size),
        Suite::PhiInverse => verify::phi_inverse_section(size),
        Suite::Noncrossing => verify::decreasing_noncrossing(size),
        Suite::BipartiteTwo => verify::bipartite_two_count(size),
        Suite::IsolatedVertex => verify::isolated_vertex_insertion(size),
        Suite::BipartiteParity => verify::bipartite_parity(size),
        Suite::SandpileOutcome => verify::sandpile_outcomes(size),
        Suite::DecToSplit => verify::decreasing_to_split(size),
        Suite::Abelian => verify::abelian(size, 200, cli.seed),
        Suite::All => unreachable!("expanded before dispatch"),
    })
}

fn run_verify(cli: &Cli, suite: Suite, n: Option<usize>, m: Option<usize>) -> Out {
    let suites: Vec<Suite> = if suite == Suite::All {
        ALL_SUITES.to_vec()
    } else {
        vec![suite]
    };
    let mut reports = Vec::new();
    for s in suites {
        reports.push(run_suite(cli, s, n, m)?);
    }
    let all_pass = reports.iter().all(SuiteReport::passed);
    let text = if cli.format == Format::Json {
        let items: Vec<_> = reports
            .iter()
            .map(|r| {
                json!({
                    "suite": r.name,
                    "coverage": r.coverage,
                    "checked": r.checked,
                    "passed": r.passed(),
                    "counterexample": r.counterexample,
                })
            })
            .collect();
        json_out(json!({"passed": all_pass, "suites": items}))
    } else {
        let mut out = String::new();
        for r in &reports {
            writeln!(out, "{r}").unwrap();
        }
        out
    };
    if all_pass {
        Ok(text)
    } else {
        Err(CliError::Failed(text))
    }
}
