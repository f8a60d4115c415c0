use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;
use sphfano::catalog::{build_catalog, counts_table, distinct_pic_degree, emit, emit_to_path, verify, Format};
use sphfano::enumerate::{enumerate, CanonicalPolytope, EnumConfig};
use sphfano::geometry::convex_hull;
use sphfano::geometry::rat::parse_vec_list;
use sphfano::invariants::{compute, summary, Invariants};
use sphfano::registry::{families, find_spec, registry_json, Params, SymmetryGroup};
use sphfano::{Error, Result};

/// Locally factorial Fano embeddings of spherical spaces of rank at most two.
#[derive(Parser)]
#[command(name = "sphfano", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List registered families.
    Families {
        #[arg(long)]
        dim: Option<usize>,
        #[arg(long)]
        rank: Option<usize>,
        /// Print the full registry as JSON instead of a table.
        #[arg(long)]
        json: bool,
    },
    /// Enumerate the embeddings of one family member.
    Enumerate {
        #[arg(long)]
        family: String,
        #[arg(long, default_value = "")]
        params: String,
        /// Also write polytopes and invariants to this JSON file.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Check one polytope against a family member.
    Check {
        #[arg(long)]
        family: String,
        #[arg(long, default_value = "")]
        params: String,
        /// Vertices, e.g. "(-1,0);(0,1);(1/2,0)" or "-1;1/2".
        #[arg(long, allow_hyphen_values = true)]
        vertices: String,
    },
    /// Build the catalog and emit it.
    Catalog {
        #[arg(long = "dim")]
        dims: Vec<usize>,
        #[arg(long = "rank")]
        ranks: Vec<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value = "csv")]
        format: String,
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Compare the catalog with an expected table (identifier,pic,degree,ke,...).
    Verify {
        #[arg(long)]
        expected: PathBuf,
    },
    /// Print the counts grid.
    Counts,
}

#[derive(Serialize)]
struct EnumeratedEntry {
    polytope: CanonicalPolytope,
    invariants: Invariants,
}

fn all_or(xs: Vec<usize>, all: &[usize]) -> Vec<usize> {
    if xs.is_empty() {
        all.to_vec()
    } else {
        xs
    }
}

fn run(cmd: Command) -> Result<ExitCode> {
    let cfg = EnumConfig::from_env()?;
    match cmd {
        Command::Families { dim, rank, json } => {
            if json {
                print!("{}", registry_json()?);
                return Ok(ExitCode::SUCCESS);
            }
            println!("{:<22} {:>3} {:>4}  params", "family", "dim", "rank");
            for s in families(dim, rank) {
                let ps: Vec<String> = s.param_bound.iter().map(|p| format!("[{p}]")).collect();
                println!("{:<22} {:>3} {:>4}  {}", s.id, s.dim, s.rank, ps.join(" "));
            }
        }
        Command::Enumerate { family, params, json } => {
            let params = Params::parse(&params)?;
            let data = find_spec(&family, &params)?.build(&params)?;
            let group = SymmetryGroup::of(&data);
            let found = enumerate(&data, &group, &cfg)?;
            let mut entries = Vec::new();
            for c in found {
                let inv = compute(&data, &c.polytope)?;
                println!("{}  |Stab|={}  {}", c.polytope.to_literal(), c.stabilizer_order, summary(&inv));
                entries.push(EnumeratedEntry { polytope: c, invariants: inv });
            }
            println!("{} embeddings up to {}", entries.len(), group.kind());
            if let Some(path) = json {
                std::fs::write(path, serde_json::to_string_pretty(&entries)? + "\n")?;
            }
        }
        Command::Check { family, params, vertices } => {
            let params = Params::parse(&params)?;
            let data = find_spec(&family, &params)?.build(&params)?;
            let pts = parse_vec_list(&vertices)?;
            let p = convex_hull(&pts, data.rank)?;
            let verdict = data.check_reflexive(&p)?;
            if verdict.ok {
                println!("ok: {}", p.to_literal());
                println!("{}", summary(&compute(&data, &p)?));
            } else {
                println!("not admissible: {}", p.to_literal());
                for (c, why) in &verdict.violations {
                    println!("  {c:?}: {why}");
                }
            }
        }
        Command::Catalog { dims, ranks, out, format, jobs } => {
            let format: Format = format.parse()?;
            let c = build_catalog(&all_or(dims, &[1, 2, 3, 4]), &all_or(ranks, &[0, 1, 2]), &cfg, jobs)?;
            if !c.warnings.is_empty() {
                eprintln!("{} records carry synthetic identifiers", c.warnings.len());
            }
            match out {
                Some(path) => emit_to_path(&c, format, &path)?,
                None => emit(&c, format, std::io::stdout().lock())?,
            }
        }
        Command::Verify { expected } => {
            let c = build_catalog(&[1, 2, 3, 4], &[0, 1, 2], &cfg, None)?;
            let report = verify(&c, &expected)?;
            for m in &report.mismatches {
                println!("MISMATCH {} {}: expected {}, got {}", m.identifier, m.field, m.expected, m.got);
            }
            println!("{} rows checked, {} mismatches", report.checked, report.mismatches.len());
            if !report.ok() {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Counts => {
            let c = build_catalog(&[1, 2, 3, 4], &[0, 1, 2], &cfg, None)?;
            println!("{}", counts_table(&c));
            let d4 = c.records.iter().filter(|r| r.dim == 4);
            let stable = d4.clone().filter(|r| r.k_verdict.is_ke()).count();
            println!("dim 4: {} Kähler-Einstein, {} not", stable, d4.count() - stable);
            println!("dim 4: {} distinct (pic, degree) pairs", distinct_pic_degree(&c, 4));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            let internal = matches!(e, Error::BoundTooTight(_)) || e.is_internal();
            ExitCode::from(if internal { 3 } else { 2 })
        }
    }
}
