use clap::{Args, Parser, Subcommand, ValueEnum};
use rankjump::cone_geometry::normalized_volume;
use rankjump::exact_lattice::{to_rat_vec, Int, Rat};
use rankjump::isom_classes::systems_isomorphic;
use rankjump::rank_jump::{rank_jump_from_lattices, RankJumpReport};
use rankjump::ranking::{int_json, ints_json, ranking_lattices};
use rankjump::semigroup_modules::{box_points, MonoidModule};
use rankjump::Error;
use rankjump_cli::{format_beta, parse_beta, parse_box, parse_generators, parse_matrix, InputError};
use rayon::prelude::*;
use serde_json::{json, Value};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

const SCHEMA_VERSION: u32 = 1;

#[derive(Parser, Debug)]
#[command(name = "rankjump", version, about = "Rank jumps of A-hypergeometric systems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Common {
    /// Matrix file: "d n" then d rows of n integers.
    #[arg(long)]
    matrix: PathBuf,
    /// Monoid generators, one integer vector per line; defaults to NA.
    #[arg(long)]
    generators: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Faces, volumes and facet support functions.
    Faces {
        #[command(flatten)]
        common: Common,
    },
    /// Rank jump and holonomic rank at one parameter.
    Rank {
        #[command(flatten)]
        common: Common,
        /// Comma-separated rationals "p/q".
        #[arg(long, allow_hyphen_values = true)]
        beta: String,
    },
    /// Ranking slabs and jumps over an integer box.
    Scan {
        #[command(flatten)]
        common: Common,
        /// Per-coordinate ranges "lo:hi,lo:hi,...".
        #[arg(long = "box", allow_hyphen_values = true)]
        bounds: String,
        /// Worker threads; 0 uses all cores.
        #[arg(long, default_value_t = 0)]
        jobs: usize,
    },
    /// Whether two parameters give isomorphic systems.
    Isom {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        beta: String,
        #[arg(long, allow_hyphen_values = true)]
        beta2: String,
    },
}

#[derive(Debug)]
enum Failure {
    Parse(String),
    Precondition(String),
    Internal(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Parse(_) => 2,
            Failure::Precondition(_) => 3,
            Failure::Internal(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Parse(m) | Failure::Precondition(m) | Failure::Internal(m) => m,
        }
    }
}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Self {
        Failure::Parse(e.to_string())
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NotPointed | Error::NotFullLattice | Error::NotAMonoid(_) | Error::DimensionMismatch(_) => {
                Failure::Precondition(e.to_string())
            }
            _ => Failure::Internal(e.to_string()),
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))
}

fn load(common: &Common) -> Result<MonoidModule, Failure> {
    let a = parse_matrix(&read(&common.matrix)?)?;
    let m = match &common.generators {
        None => MonoidModule::semigroup(&a)?,
        Some(path) => {
            let gens = parse_generators(&read(path)?, a.rows())?;
            MonoidModule::new(&a, gens)?
        }
    };
    Ok(m)
}

fn cols_string(cols: &[usize]) -> String {
    cols.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" ")
}

fn ints_string(v: &[Int]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn with_schema(mut v: Value) -> Value {
    v.as_object_mut().expect("report is an object").insert("schema_version".into(), json!(SCHEMA_VERSION));
    v
}

fn cmd_faces(common: &Common) -> Result<String, Failure> {
    let m = load(common)?;
    let lattice = m.faces();
    let vol_a = normalized_volume(lattice.full_face());
    Ok(match common.format {
        Format::Json => {
            let faces: Vec<Value> = lattice
                .faces()
                .iter()
                .map(|f| json!({"columns": f.columns, "dim": f.dim, "codim": f.codim, "vol": int_json(&f.volume)}))
                .collect();
            let facets: Vec<Value> = lattice
                .facets()
                .iter()
                .map(|s| json!({"columns": s.facet.columns, "support_function": ints_json(&s.coefficients)}))
                .collect();
            with_schema(json!({"vol_A": int_json(&vol_a), "faces": faces, "facets": facets})).to_string()
        }
        Format::Csv => {
            let mut out = String::from("columns,dim,codim,vol\n");
            for f in lattice.faces() {
                out += &format!("{},{},{},{}\n", cols_string(&f.columns), f.dim, f.codim, f.volume);
            }
            out
        }
    })
}

fn rank_report(m: &MonoidModule, beta: &[Rat]) -> Result<(String, RankJumpReport), Failure> {
    let lattices = ranking_lattices(m, beta);
    let hash = lattices.signature_hash(m.faces());
    let report = rank_jump_from_lattices(m.faces(), &lattices)?;
    Ok((hash, report))
}

fn cmd_rank(common: &Common, beta: &str) -> Result<String, Failure> {
    let m = load(common)?;
    let beta = parse_beta(beta, m.faces().dim())?;
    let (_, report) = rank_report(&m, &beta)?;
    Ok(match common.format {
        Format::Json => with_schema(report.to_json()).to_string(),
        Format::Csv => format!("beta,vol_A,j,rank\n{},{},{},{}\n", format_beta(&beta).replace(',', " "), report.vol_a, report.j, report.rank),
    })
}

fn cmd_scan(common: &Common, bounds: &str, jobs: usize) -> Result<String, Failure> {
    let m = load(common)?;
    let ranges = parse_box(bounds, m.faces().dim())?;
    let points = box_points(&ranges);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Failure::Internal(e.to_string()))?;
    let rows: Vec<(Vec<Int>, String, Int)> = pool.install(|| {
        points
            .par_iter()
            .map(|b| rank_report(&m, &to_rat_vec(b)).map(|(h, r)| (b.clone(), h, r.j)))
            .collect::<Result<Vec<_>, _>>()
    })?;
    let mut strata: Vec<(String, Vec<Int>, Int, usize)> = Vec::new();
    for (b, h, j) in &rows {
        match strata.iter_mut().find(|s| &s.0 == h) {
            Some(s) if &s.2 != j => {
                return Err(Failure::Internal(format!("jump not constant on slab {h}: {} vs {}", s.2, j)));
            }
            Some(s) => s.3 += 1,
            None => strata.push((h.clone(), b.clone(), j.clone(), 1)),
        }
    }
    Ok(match common.format {
        Format::Json => {
            let rows: Vec<Value> =
                rows.iter().map(|(b, h, j)| json!({"beta": ints_json(b), "signature": h, "j": int_json(j)})).collect();
            let strata: Vec<Value> = strata
                .iter()
                .map(|(h, b, j, n)| json!({"signature": h, "first_beta": ints_json(b), "j": int_json(j), "count": n}))
                .collect();
            with_schema(json!({"rows": rows, "strata": strata})).to_string()
        }
        Format::Csv => {
            let mut out = String::from("beta,signature,j\n");
            for (b, h, j) in &rows {
                out += &format!("{},{h},{j}\n", ints_string(b));
            }
            out
        }
    })
}

fn cmd_isom(common: &Common, beta: &str, beta2: &str) -> Result<String, Failure> {
    let m = load(common)?;
    let d = m.faces().dim();
    let (beta, beta2) = (parse_beta(beta, d)?, parse_beta(beta2, d)?);
    let verdict = systems_isomorphic(&m, &beta, &beta2)?;
    Ok(match common.format {
        Format::Json => with_schema(json!({"isomorphic": verdict.isomorphic, "witness_face": verdict.witness_face}))
            .to_string(),
        Format::Csv => format!(
            "isomorphic,witness_face\n{},{}\n",
            verdict.isomorphic,
            verdict.witness_face.map(|w| cols_string(&w)).unwrap_or_default()
        ),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Faces { common } => cmd_faces(common),
        Command::Rank { common, beta } => cmd_rank(common, beta),
        Command::Scan { common, bounds, jobs } => cmd_scan(common, bounds, *jobs),
        Command::Isom { common, beta, beta2 } => cmd_isom(common, beta, beta2),
    };
    match result {
        Ok(out) => {
            print!("{out}");
            if !out.ends_with('\n') {
                println!();
            }
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
