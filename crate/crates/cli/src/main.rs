//! `wg`: command-line front end for the exact Weingarten / cumulant engine.

use std::collections::BTreeMap;
use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use wg_core::config;
use wg_core::cumulants::{cumulants_to_moments, moments_to_cumulants, CumulantFamily, MomentFunctional, Species, WordTable};
use wg_core::models::{
    group_integral_exact, group_integral_mc, sphere_definetti_gap, sphere_moment_mc, urn_definetti_gap, FiniteGroupSpec,
    GroupFamily, McConfig, McEstimate, McGroup, UrnSpec,
};
use wg_core::partitions::enumerate_family;
use wg_core::verify::{run_suite, Suite, SuiteParams};
use wg_core::weingarten::{ck_constant, gram, haar_integral, weingarten_matrix};
use wg_core::{Category, Error, ExactScalar, SetPartition, Word};

#[derive(Parser, Debug)]
#[command(name = "wg", version, about = "Exact Weingarten calculus, cumulants and de Finetti gaps for easy quantum groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Largest admissible partition size k.
    #[arg(long, global = true, env = "WG_KMAX")]
    kmax: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Direction {
    M2c,
    C2m,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the partitions of D(k) in enumeration order.
    Partitions {
        #[arg(long)]
        cat: Category,
        #[arg(long)]
        k: usize,
    },
    /// Gram matrix n^{|π∨σ|} on D(k).
    Gram(TableArgs),
    /// Weingarten matrix (exact inverse of the Gram matrix).
    Invert(TableArgs),
    /// Haar integral of u_{i1 j1} ⋯ u_{ik jk}.
    Integrate {
        #[arg(long)]
        cat: Category,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        i: Word,
        #[arg(long)]
        j: Word,
    },
    /// Moment/cumulant transforms.
    Transform {
        #[arg(long)]
        species: Species,
        #[arg(long, value_enum)]
        direction: Direction,
        /// Comma-separated single-variable sequence starting at order 1.
        #[arg(long, conflicts_with = "file")]
        moments: Option<String>,
        /// JSON map from words to "p/q" strings.
        #[arg(long)]
        file: Option<PathBuf>,
    },
    /// Exact average over Sₙ or Hₙ by enumeration.
    Oracle {
        #[arg(long)]
        group: GroupFamily,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        i: Word,
        #[arg(long)]
        j: Word,
    },
    /// Monte Carlo Haar average over Oₙ or Bₙ next to the exact value.
    Mc {
        #[arg(long)]
        group: McGroup,
        #[arg(long)]
        n: u32,
        #[arg(long, default_value = "1,1")]
        i: Word,
        #[arg(long, default_value = "1,1")]
        j: Word,
        #[arg(long, default_value_t = 100_000)]
        samples: usize,
        #[arg(long)]
        seed: u64,
    },
    /// Finite de Finetti gaps.
    Gap {
        #[command(subcommand)]
        model: GapModel,
    },
    /// C_k = max_n n · Σ |n^{|π|} W − μ| over n ≤ nmax.
    Ck {
        #[arg(long)]
        cat: Category,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        nmax: u32,
    },
    /// Run a named invariant suite; exits 1 on any violation.
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
struct TableArgs {
    #[arg(long)]
    cat: Category,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    n: u32,
}

#[derive(Subcommand, Debug)]
enum GapModel {
    /// Draws without replacement from an urn.
    Urn {
        /// Comma-separated rationals.
        #[arg(long, allow_hyphen_values = true)]
        values: String,
        #[arg(long)]
        word: Word,
    },
    /// Uniform point on the sphere of radius √n.
    Sphere {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        word: Word,
        /// Also estimate the sphere moment by sampling.
        #[arg(long, requires = "seed")]
        samples: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
    },
}

#[derive(Args, Debug)]
struct VerifyArgs {
    suite: Suite,
    #[arg(long)]
    cat: Option<Category>,
    #[arg(long)]
    species: Option<Species>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    n: Option<u32>,
    #[arg(long)]
    nmax: Option<u32>,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

/// Machine-readable failure; exit status 2.
struct Failure {
    kind: String,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure { kind: e.kind().into(), message: e.to_string() }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure { kind: "io".into(), message: e.to_string() }
    }
}

enum Output {
    /// A flat or nested JSON document; CSV writes one header and one row of
    /// its top-level scalar fields.
    Record(Value),
    /// `(pi, sigma, value)` rows.
    Matrix { json: Value, rows: Vec<[String; 3]> },
    /// Rows under a fixed header.
    List { json: Value, header: &'static [&'static str], rows: Vec<Vec<String>> },
}

fn s(x: &ExactScalar) -> Value {
    Value::String(x.to_string())
}

fn matrix_rows(parts: &[SetPartition], m: &[Vec<ExactScalar>]) -> Vec<[String; 3]> {
    let mut rows = Vec::with_capacity(parts.len() * parts.len());
    for (a, pi) in parts.iter().enumerate() {
        for (b, sigma) in parts.iter().enumerate() {
            rows.push([pi.to_string(), sigma.to_string(), m[a][b].to_string()]);
        }
    }
    rows
}

fn matrix_json(m: &[Vec<ExactScalar>]) -> Value {
    Value::Array(m.iter().map(|row| Value::Array(row.iter().map(s).collect())).collect())
}

fn mc_fields(map: &mut Map<String, Value>, est: &McEstimate) {
    map.insert("estimate".into(), json!(est.estimate));
    map.insert("std_error".into(), json!(est.std_error));
    map.insert("samples".into(), json!(est.samples));
    map.insert("seed".into(), json!(est.seed));
}

fn parse_values(text: &str) -> Result<Vec<ExactScalar>, Failure> {
    text.split(',').map(|v| v.trim().parse::<ExactScalar>().map_err(Failure::from)).collect()
}

fn transform(species: Species, direction: Direction, moments: Option<String>, file: Option<PathBuf>) -> Result<Output, Failure> {
    let (input, single) = match (moments, file) {
        (Some(list), None) => (MomentFunctional::from_sequence(parse_values(&list)?), true),
        (None, Some(path)) => (MomentFunctional::from_json_str(&fs::read_to_string(path)?)?, false),
        _ => return Err(Failure { kind: "usage".into(), message: "give exactly one of --moments or --file".into() }),
    };
    let table = match direction {
        Direction::M2c => {
            let c = moments_to_cumulants(species, &input)?;
            table_items(&c)
        }
        Direction::C2m => {
            let values: BTreeMap<Word, ExactScalar> = input.iter().map(|(w, v)| (w.clone(), v.clone())).collect();
            let c = if single {
                CumulantFamily::from_sequence(species, input.sequence()?)
            } else {
                CumulantFamily::from_words(species, values)?
            };
            let m = cumulants_to_moments(&c)?;
            table_items(&m)
        }
    };
    let direction = match direction {
        Direction::M2c => "m2c",
        Direction::C2m => "c2m",
    };
    let items: Vec<(String, String)> = table.into_iter().filter(|(w, _)| !w.is_empty()).collect();
    let values = if single {
        Value::Array(items.iter().map(|(_, v)| Value::String(v.clone())).collect())
    } else {
        Value::Object(items.iter().map(|(w, v)| (w.clone(), Value::String(v.clone()))).collect())
    };
    Ok(Output::List {
        json: json!({ "species": species.tag(), "direction": direction, "values": values }),
        header: &["word", "value"],
        rows: items.into_iter().map(|(w, v)| vec![w, v]).collect(),
    })
}

fn table_items(table: &WordTable) -> Vec<(String, String)> {
    table.iter().map(|(w, v)| (w.to_string(), v.to_string())).collect()
}

fn run(command: Command) -> Result<(Output, bool), Failure> {
    let out = match command {
        Command::Partitions { cat, k } => {
            let parts: Vec<String> = enumerate_family(cat, k)?.iter().map(ToString::to_string).collect();
            Output::List {
                json: json!({ "category": cat.tag(), "k": k, "partitions": parts }),
                header: &["partition"],
                rows: parts.iter().map(|p| vec![p.clone()]).collect(),
            }
        }
        Command::Gram(TableArgs { cat, k, n }) => {
            let g = gram(cat, k, n)?;
            let parts = enumerate_family(cat, k)?;
            let names: Vec<String> = parts.iter().map(ToString::to_string).collect();
            Output::Matrix {
                json: json!({ "category": cat.tag(), "k": k, "n": n, "partitions": names, "gram": matrix_json(&g) }),
                rows: matrix_rows(&parts, &g),
            }
        }
        Command::Invert(TableArgs { cat, k, n }) => {
            let table = weingarten_matrix(cat, k, n)?;
            Output::Matrix { json: table.to_json(), rows: matrix_rows(&table.partitions, &table.weingarten) }
        }
        Command::Integrate { cat, n, i, j } => Output::Record(json!({ "value": s(&haar_integral(cat, n, &i, &j)?) })),
        Command::Transform { species, direction, moments, file } => transform(species, direction, moments, file)?,
        Command::Oracle { group, n, i, j } => {
            let spec = FiniteGroupSpec::new(group, n)?;
            Output::Record(json!({ "value": s(&group_integral_exact(spec, &i, &j)?) }))
        }
        Command::Mc { group, n, i, j, samples, seed } => {
            let exact = haar_integral(group.category(), n, &i, &j)?;
            let est = group_integral_mc(group, n, &i, &j, &McConfig::new(samples, seed)?)?;
            let mut map = Map::new();
            map.insert("exact".into(), s(&exact));
            mc_fields(&mut map, &est);
            Output::Record(Value::Object(map))
        }
        Command::Gap { model } => {
            let (report, mc) = match model {
                GapModel::Urn { values, word } => (urn_definetti_gap(&UrnSpec::new(parse_values(&values)?)?, &word)?, None),
                GapModel::Sphere { n, word, samples, seed } => {
                    let report = sphere_definetti_gap(n, &word)?;
                    let mc = match (samples, seed) {
                        (Some(samples), Some(seed)) => Some(sphere_moment_mc(n, &word, &McConfig::new(samples, seed)?)?),
                        _ => None,
                    };
                    (report, mc)
                }
            };
            let mut map = Map::new();
            map.insert("lhs".into(), s(&report.lhs));
            map.insert("rhs".into(), s(&report.rhs));
            map.insert("gap".into(), s(&report.gap));
            if let Some(est) = mc {
                mc_fields(&mut map, &est);
            }
            Output::Record(Value::Object(map))
        }
        Command::Ck { cat, k, nmax } => {
            let report = ck_constant(cat, k, nmax)?;
            Output::Record(json!({ "ck": s(&report.ck), "argmax_n": report.argmax_n }))
        }
        Command::Verify(args) => {
            let params = SuiteParams {
                cat: args.cat,
                species: args.species,
                k: args.k,
                n: args.n,
                n_max: args.nmax,
                samples: args.samples,
                seed: args.seed,
            };
            let report = run_suite(args.suite, &params)?;
            let passed = report.passed;
            let value = serde_json::to_value(&report).expect("report serialises");
            return Ok((Output::Record(value), passed));
        }
    };
    Ok((out, true))
}

fn csv_cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

fn write_output(out: &Output, format: Format) -> io::Result<()> {
    let stdout = io::stdout();
    let mut handle = stdout.lock();
    match format {
        Format::Json => {
            let json = match out {
                Output::Record(v) | Output::Matrix { json: v, .. } | Output::List { json: v, .. } => v,
            };
            serde_json::to_writer(&mut handle, json)?;
            writeln!(handle)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(handle);
            match out {
                Output::Record(Value::Object(map)) => {
                    let scalars: Vec<(&String, &Value)> =
                        map.iter().filter(|(_, v)| !v.is_array() && !v.is_object()).collect();
                    w.write_record(scalars.iter().map(|(k, _)| k.as_str()))?;
                    w.write_record(scalars.iter().map(|(_, v)| csv_cell(v)))?;
                }
                Output::Record(v) => w.write_record([csv_cell(v)])?,
                Output::Matrix { rows, .. } => {
                    w.write_record(["pi", "sigma", "value"])?;
                    for row in rows {
                        w.write_record(row)?;
                    }
                }
                Output::List { header, rows, .. } => {
                    w.write_record(*header)?;
                    for row in rows {
                        w.write_record(row)?;
                    }
                }
            }
            w.flush()
        }
    }
}

fn fail(kind: &str, message: &str) -> ExitCode {
    eprintln!("{}", json!({ "error": { "kind": kind, "message": message } }));
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            return fail("usage", e.to_string().trim_end());
        }
    };
    if let Some(k) = cli.kmax {
        config::set_k_max(k);
    }
    match run(cli.command) {
        Ok((out, passed)) => {
            if let Err(e) = write_output(&out, cli.format) {
                return fail("io", &e.to_string());
            }
            if passed { ExitCode::SUCCESS } else { ExitCode::from(1) }
        }
        Err(f) => fail(&f.kind, &f.message),
    }
}
