//! `circminor`: circulant contraction minors of circular matrices from the
//! command line. All indices in files and reports are 1-based.

mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use circminor::bridge::{
    check_d_side, existence_d, existence_g, translate_d_to_g, translate_g_to_d, DSide, GSide,
};
use circminor::circuit::validate_family;
use circminor::digraph::build_f;
use circminor::format::{CircuitFile, MatrixFile};
use circminor::matrix::ParseOptions;
use circminor::oracle::{brute_minors, cross_validate, enumerate_families, random_circular, Limits};
use circminor::synthesis::{circuits_to_minor, minor_to_circuits, verify_minor};
use circminor::{CircularMatrix, Error};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use serde::Serialize;

use report::*;

#[derive(Parser)]
#[command(name = "circminor", version, about = "Circulant minors of circular 0/1 matrices")]
struct Cli {
    /// Emit JSON instead of text
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct MatrixArgs {
    /// Matrix file: {"n": .., "rows": [[lo, hi], ..]} or {"n": .., "dense": [[0, 1, ..], ..]}
    matrix: PathBuf,
    /// Silently drop dominating rows instead of rejecting the matrix
    #[arg(long)]
    drop_dominated: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Via {
    Families,
    Subsets,
    Both,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a matrix and dump F(A)
    Analyze(MatrixArgs),
    /// List circulant minors
    Minors {
        #[command(flatten)]
        input: MatrixArgs,
        #[arg(long, value_enum, default_value = "both")]
        via: Via,
    },
    /// The minor induced by a family of circuits of F(A)
    FromCircuits {
        #[command(flatten)]
        input: MatrixArgs,
        /// Circuit file: {"circuits": [[{"tail", "head", "kind"}, ..] | [v1, v2, ..], ..]}
        circuits: PathBuf,
    },
    /// A family of circuits of F(A) realizing the minor at the given columns
    ToCircuits {
        #[command(flatten)]
        input: MatrixArgs,
        /// Surviving columns, comma separated and ascending
        #[arg(long, value_delimiter = ',', required = true)]
        bullets: Vec<usize>,
        /// Circulant parameter p; inferred from the contraction when omitted
        #[arg(long)]
        p: Option<usize>,
    },
    /// Parameter tables for C_n^k
    Circulant {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        /// Translate family parameters between D(n,k) and G(n,k)
        #[arg(long, value_parser = ["d:g", "g:d"], requires = "params")]
        translate: Option<String>,
        /// a,s,p for d:g; d,n1,n2,n3 for g:d
        #[arg(long, value_delimiter = ',')]
        params: Vec<usize>,
        /// Only the existence row for one multiplicity, as a=N or d=N
        #[arg(long)]
        exists: Option<String>,
    },
    /// Cross-check minors and circuit families by brute force
    Oracle {
        /// Matrix file; omit together with --random for a random sweep
        matrix: Option<PathBuf>,
        #[arg(long, env = "CIRCMINOR_MAX_N", default_value_t = 14)]
        max_n: usize,
        /// Number of random circular matrices to check
        #[arg(long, conflicts_with = "matrix")]
        random: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Largest n of the random matrices
        #[arg(long, default_value_t = 10)]
        size: usize,
    },
}

enum Failure {
    Domain(Error),
    Discrepancy(usize),
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e.code() {
            "MalformedMatrixFile" => Failure::Input(e.to_string()),
            _ => Failure::Domain(e),
        }
    }
}

fn domain(e: impl Into<Error>) -> Failure {
    Failure::from(e.into())
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_matrix(args: &MatrixArgs) -> Result<CircularMatrix, Failure> {
    let file: MatrixFile = read_json(&args.matrix)?;
    Ok(file.to_matrix(ParseOptions { drop_dominated: args.drop_dominated })?)
}

fn emit<T: Serialize + Render>(report: &T, json: bool) {
    if json {
        println!("{}", serde_json::to_string_pretty(report).expect("reports serialize"));
    } else {
        print!("{}", report.text());
    }
}

fn analyze(args: &MatrixArgs) -> Result<AnalyzeReport, Failure> {
    let a = load_matrix(args)?;
    Ok(AnalyzeReport {
        n: a.n(),
        m: a.m(),
        rows: a.rows().to_vec(),
        circulant: a.pattern(),
        arcs: build_f(&a).arcs().to_vec(),
    })
}

fn minors(args: &MatrixArgs, via: Via) -> Result<MinorsReport, Failure> {
    let a = load_matrix(args)?;
    let limits = Limits::default();
    let subsets = match via {
        Via::Subsets | Via::Both => Some(brute_minors(&a, &limits).map_err(domain)?),
        Via::Families => None,
    };
    let families = match via {
        Via::Families | Via::Both => Some(
            enumerate_families(&build_f(&a), &limits)
                .map_err(domain)?
                .into_iter()
                .map(|f| FamilyEntry {
                    bullets: f.bullets,
                    a: f.a,
                    s: f.s,
                    p: f.p,
                    circuits: f.circuits.iter().map(|c| c.arcs().to_vec()).collect(),
                })
                .collect(),
        ),
        Via::Subsets => None,
    };
    Ok(MinorsReport { subsets, families })
}

fn from_circuits(args: &MatrixArgs, circuits: &Path) -> Result<FromCircuitsReport, Failure> {
    let a = load_matrix(args)?;
    let file: CircuitFile = read_json(circuits)?;
    let f = build_f(&a);
    let family = validate_family(&f, file.resolve(&f)?).map_err(domain)?;
    let w = circuits_to_minor(&a, &family).map_err(domain)?;
    Ok(FromCircuitsReport {
        bullets: w.bullets,
        complement: w.complement,
        s: w.s,
        p: w.p,
        a: w.a,
        traces: w.minor.traces,
        source_rows: w.minor.source_rows,
    })
}

fn to_circuits(args: &MatrixArgs, bullets: &[usize], p: Option<usize>) -> Result<ToCircuitsReport, Failure> {
    let a = load_matrix(args)?;
    let p = match p {
        Some(p) => p,
        None => {
            let minor = circminor::matrix::contract_onto(&a, bullets).map_err(domain)?;
            match circminor::matrix::recognize_circulant(&minor) {
                Some((_, p)) => p,
                None => return Err(domain(circminor::synthesis::SynthesisError::NotACirculantMinor {
                    bullets: bullets.to_vec(),
                })),
            }
        }
    };
    verify_minor(&a, bullets, p).map_err(domain)?;
    let (family, trace) = minor_to_circuits(&a, bullets, p).map_err(domain)?;
    let norm = &trace.normalization;
    let paths = |v: &[circminor::synthesis::IndexedPath]| -> Vec<PathEntry> {
        v.iter().map(|x| PathEntry { j: x.j, arcs: x.arcs.clone() }).collect()
    };
    Ok(ToCircuitsReport {
        bullets: bullets.to_vec(),
        normalized: norm.normalized.clone(),
        s: trace.s,
        p: trace.p,
        passes: norm.passes,
        table: norm.table.iter().zip(&norm.image).map(|(e, &b)| TableRow::new(e, b)).collect(),
        t: trace.row_arcs.clone(),
        p_indices: trace.forward_set.clone(),
        p_vertices: trace.forward_vertices.clone(),
        q_indices: trace.reverse_set.clone(),
        q_vertices: trace.reverse_vertices.clone(),
        forward_paths: paths(&trace.forward_paths),
        reverse_paths: paths(&trace.reverse_paths),
        circuits: family.circuits.iter().map(|c| c.arcs().to_vec()).collect(),
    })
}

fn circulant(
    n: usize,
    k: usize,
    translate: Option<&str>,
    params: &[usize],
    exists: Option<&str>,
) -> Result<CirculantReport, Failure> {
    circminor::matrix::make_circulant(n, k).map_err(domain)?;
    let translation = match translate {
        Some("d:g") => {
            let [a, s, p] = params[..] else {
                return Err(Failure::Input("--params for d:g must be a,s,p".into()));
            };
            let w = check_d_side(n, k, a, s, p).map_err(domain)?;
            let to = translate_d_to_g(n, k, a, s, p).map_err(domain)?;
            Some(Translation::DToG { from: DSide { a, s, p, w }, to })
        }
        Some(_) => {
            let [d, n1, n2, n3] = params[..] else {
                return Err(Failure::Input("--params for g:d must be d,n1,n2,n3".into()));
            };
            let from = GSide { d, n1, n2, n3 };
            Some(Translation::GToD { from, to: translate_g_to_d(n, k, from).map_err(domain)? })
        }
        None => None,
    };
    let existence = match exists {
        Some(spec) => {
            let (side, value) = spec
                .split_once('=')
                .and_then(|(side, v)| v.parse::<usize>().ok().map(|v| (side, v)))
                .ok_or_else(|| Failure::Input(format!("--exists expects a=N or d=N, got {spec}")))?;
            match side {
                "a" => vec![ExistenceRow { multiplicity: value, d_side: existence_d(n, k, value), g_side: None }],
                "d" => vec![ExistenceRow { multiplicity: value, d_side: None, g_side: existence_g(n, k, value) }],
                _ => return Err(Failure::Input(format!("--exists expects a=N or d=N, got {spec}"))),
            }
        }
        None if translation.is_some() => Vec::new(),
        None => (1..=n)
            .map(|m| ExistenceRow { multiplicity: m, d_side: existence_d(n, k, m), g_side: existence_g(n, k, m) })
            .filter(|r| r.d_side.is_some() || r.g_side.is_some())
            .collect(),
    };
    Ok(CirculantReport { n, k, translation, existence })
}

fn oracle(
    matrix: Option<&Path>,
    max_n: usize,
    random: Option<usize>,
    seed: u64,
    size: usize,
) -> Result<OracleReport, Failure> {
    let limits = Limits { max_n, ..Limits::default() };
    match (matrix, random) {
        (Some(path), _) => {
            let a = load_matrix(&MatrixArgs { matrix: path.to_path_buf(), drop_dominated: false })?;
            let report = cross_validate(&a, &limits).map_err(domain)?;
            Ok(OracleReport { seed: None, reports: vec![LabeledReport { label: path.display().to_string(), report }] })
        }
        (None, Some(count)) => {
            if size < 5 {
                return Err(Failure::Input("--size must be at least 5".into()));
            }
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let mut reports = Vec::with_capacity(count);
            for t in 0..count {
                let n = rng.gen_range(5..=size);
                let a = random_circular(&mut rng, n);
                let report = cross_validate(&a, &limits).map_err(domain)?;
                reports.push(LabeledReport { label: format!("random #{t}"), report });
            }
            Ok(OracleReport { seed: Some(seed), reports })
        }
        (None, None) => Err(Failure::Input("oracle needs a matrix file or --random".into())),
    }
}

fn run(cli: &Cli) -> Result<(), Failure> {
    match &cli.command {
        Command::Analyze(args) => emit(&analyze(args)?, cli.json),
        Command::Minors { input, via } => emit(&minors(input, *via)?, cli.json),
        Command::FromCircuits { input, circuits } => emit(&from_circuits(input, circuits)?, cli.json),
        Command::ToCircuits { input, bullets, p } => emit(&to_circuits(input, bullets, *p)?, cli.json),
        Command::Circulant { n, k, translate, params, exists } => {
            emit(&circulant(*n, *k, translate.as_deref(), params, exists.as_deref())?, cli.json)
        }
        Command::Oracle { matrix, max_n, random, seed, size } => {
            let report = oracle(matrix.as_deref(), *max_n, *random, *seed, *size)?;
            emit(&report, cli.json);
            let bad = report.discrepancies();
            if bad > 0 {
                return Err(Failure::Discrepancy(bad));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Domain(e)) => {
            eprintln!("error[{}]: {e}", e.code());
            ExitCode::from(1)
        }
        Err(Failure::Discrepancy(count)) => {
            eprintln!("error[Discrepancy]: {count} discrepancies between minors and circuit families");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error[Input]: {msg}");
            ExitCode::from(2)
        }
    }
}
