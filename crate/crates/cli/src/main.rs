//! `skorokhod`: batch access to simplicial sets, realization points and
//! Skorokhod neighbourhoods.
//!
//! Every command prints one JSON object `{"status", "payload"}` on stdout
//! (except `export-coords`, which prints CSV). Exit codes: 0 ok, 1 a checked
//! property failed, 2 bad input.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use skorokhod_core::filters::{
    closed_form_member, hom_skorokhod_member_finite, theta_skorokhod_member, u_neighborhood_member,
};
use skorokhod_core::io::{
    load_sset, parent_dir, read_json, sset_to_json, MorphismFile, PointFile, PointList, PointOrStep,
};
use skorokhod_core::metrics::{d_mu, d_prime, sup_dist_steps, v1_dist, v2_dist, v3_dist};
use skorokhod_core::oracle::{self, merge, oracle_product_bijection, Gen, Suite};
use skorokhod_core::rational::{fmt_q, parse_q, parse_q_list};
use skorokhod_core::sset::{EdgewiseSSet, SSetMorphism};
use skorokhod_core::{Error, MonotoneMap, PLHomeo, PathSimplex, Result};

#[derive(Parser)]
#[command(
    name = "skorokhod",
    version,
    about = "Exact computations on simplicial sets and their realizations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Metric {
    Sup,
    V1,
    V2,
    V3,
    Dmu,
    Dprime,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Theta,
    Closed,
    Hom,
    #[value(name = "U", alias = "u")]
    U,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Membership,
    Dist,
    Product,
}

#[derive(Subcommand)]
enum Command {
    /// Check a simplicial set (file or `delta:N`) for presentation errors.
    Validate { sset: String },
    /// Evaluate a point at a nondecreasing tuple of times.
    Eval {
        point: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        at: String,
    },
    /// Distance between two points or step functions.
    Dist {
        #[arg(long, value_enum)]
        metric: Metric,
        a: PathBuf,
        b: PathBuf,
    },
    /// Exhaustive check that |X × Y| and |X| × |Y| match on grid points.
    ProductCheck {
        x: String,
        y: String,
        #[arg(long, default_value = "1/4,1/2,3/4")]
        grid: String,
        #[arg(long, default_value_t = 2)]
        bound: usize,
        /// Adds one seeded random point to the grid.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Act on a point by a piecewise-linear homeomorphism.
    Homeo {
        #[command(subcommand)]
        action: HomeoAction,
    },
    /// Neighbourhood membership predicates.
    Member {
        #[arg(long, value_enum)]
        kind: Kind,
        /// Path simplex file (theta, closed).
        #[arg(long)]
        path: Option<PathBuf>,
        /// Comma separated values of θ (theta).
        #[arg(long)]
        theta: Option<String>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long = "big-n")]
        big_n: Option<usize>,
        /// δ̂ (theta, U) or δ (closed), as p/q.
        #[arg(long)]
        delta: Option<String>,
        /// Morphism file (hom).
        #[arg(long)]
        morphism: Option<PathBuf>,
        /// Step functions or points (U).
        #[arg(long)]
        f: Option<PathBuf>,
        #[arg(long)]
        g: Option<PathBuf>,
    },
    /// Edgewise subdivision X∘e of a simplicial set.
    Subdivide {
        sset: String,
        #[arg(long)]
        max_dim: Option<usize>,
    },
    /// Seeded cross-checks of the closed forms against brute force.
    Oracle {
        #[arg(long, value_enum)]
        suite: SuiteArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        cases: usize,
    },
    /// Step-function coordinates of points, one CSV line each.
    ExportCoords { points: PathBuf },
}

#[derive(Subcommand)]
enum HomeoAction {
    Apply { phi: PathBuf, point: PathBuf },
}

enum Outcome {
    Ok(Value),
    Violation(Value),
    Text(String),
}

fn need<T>(x: Option<T>, flag: &str) -> Result<T> {
    x.ok_or_else(|| Error::InvalidParameter(format!("--{flag} is required")))
}

fn point_or_step(path: &Path) -> Result<PointOrStep> {
    read_json(path)
}

fn run(cli: Cli) -> Result<Outcome> {
    match cli.command {
        Command::Validate { sset } => {
            let x = load_sset(&sset, None)?;
            let violations = x.validate();
            let payload = json!({ "counts": x.counts(), "violations": violations });
            Ok(if violations.is_empty() {
                Outcome::Ok(payload)
            } else {
                Outcome::Violation(payload)
            })
        }
        Command::Eval { point, at } => {
            let p = point_or_step(&point)?.into_point(parent_dir(&point))?;
            let ts = parse_q_list(&at)?;
            let s = p.eval(&ts)?;
            Ok(Outcome::Ok(json!({ "simplex": s, "display": s.to_string() })))
        }
        Command::Dist { metric, a, b } => {
            let (pa, pb) = (point_or_step(&a)?, point_or_step(&b)?);
            let (name, value) = match metric {
                Metric::Dmu | Metric::Dprime => {
                    let u = pa.into_point(parent_dir(&a))?;
                    let v = pb.into_point(parent_dir(&b))?;
                    if matches!(metric, Metric::Dmu) {
                        ("dmu", d_mu(&u, &v)?)
                    } else {
                        ("dprime", d_prime(&u, &v)?)
                    }
                }
                _ => {
                    let f = pa.into_step(parent_dir(&a))?;
                    let g = pb.into_step(parent_dir(&b))?;
                    match metric {
                        Metric::Sup => ("sup", sup_dist_steps(&f, &g)?),
                        Metric::V1 => ("v1", v1_dist(&f, &g)?),
                        Metric::V2 => ("v2", v2_dist(&f, &g)?),
                        _ => ("v3", v3_dist(&f, &g)?),
                    }
                }
            };
            Ok(Outcome::Ok(json!({ "metric": name, "value": fmt_q(&value) })))
        }
        Command::ProductCheck {
            x,
            y,
            grid,
            bound,
            seed,
        } => {
            let x = Arc::new(load_sset(&x, None)?);
            let y = Arc::new(load_sset(&y, None)?);
            let mut grid = parse_q_list(&grid)?;
            if let Some(seed) = seed {
                grid.push(Gen::new(seed, 8).open_unit());
            }
            grid.sort();
            grid.dedup();
            let report = oracle_product_bijection(x, y, &grid, bound, merge)?;
            let grid: Vec<String> = grid.iter().map(fmt_q).collect();
            let payload = json!({ "grid": grid, "bound": bound, "report": report });
            Ok(if report.is_empty() {
                Outcome::Ok(payload)
            } else {
                Outcome::Violation(payload)
            })
        }
        Command::Homeo {
            action: HomeoAction::Apply { phi, point },
        } => {
            let h: PLHomeo = read_json(&phi)?;
            let file: PointFile = read_json(&point)?;
            let moved = file.resolve(parent_dir(&point))?.homeo_apply(&h)?;
            Ok(Outcome::Ok(
                serde_json::to_value(PointFile::of(&moved, &file.sset)).expect("serializable"),
            ))
        }
        Command::Member {
            kind,
            path,
            theta,
            n,
            big_n,
            delta,
            morphism,
            f,
            g,
        } => {
            let member = match kind {
                Kind::Theta => {
                    let p: PathSimplex = read_json(&need(path, "path")?)?;
                    let values = need(theta, "theta")?
                        .split(',')
                        .map(|v| {
                            v.trim()
                                .parse::<usize>()
                                .map_err(|_| Error::Parse(format!("θ value {v:?}")))
                        })
                        .collect::<Result<Vec<_>>>()?;
                    let n = n.unwrap_or(values.len());
                    let theta = MonotoneMap::new(values, p.m())?;
                    let d = parse_q(&need(delta, "delta")?)?;
                    theta_skorokhod_member(&p, &theta, n, need(big_n, "big-n")?, &d)?
                }
                Kind::Closed => {
                    let p: PathSimplex = read_json(&need(path, "path")?)?;
                    closed_form_member(&p, &parse_q(&need(delta, "delta")?)?)?
                }
                Kind::Hom => {
                    let file = need(morphism, "morphism")?;
                    let m: MorphismFile = read_json(&file)?;
                    let dir = parent_dir(&file);
                    let source = load_sset(&m.source, dir)?;
                    let target = load_sset(&m.target, dir)?;
                    let phi = SSetMorphism::new(&source, &target, m.map)?;
                    hom_skorokhod_member_finite(&phi, need(n, "n")?, need(big_n, "big-n")?)?
                }
                Kind::U => {
                    let (fa, ga) = (need(f, "f")?, need(g, "g")?);
                    let f = point_or_step(&fa)?.into_step(parent_dir(&fa))?;
                    let g = point_or_step(&ga)?.into_step(parent_dir(&ga))?;
                    u_neighborhood_member(&f, &g, &parse_q(&need(delta, "delta")?)?)?
                }
            };
            let name = match kind {
                Kind::Theta => "theta",
                Kind::Closed => "closed",
                Kind::Hom => "hom",
                Kind::U => "U",
            };
            Ok(Outcome::Ok(json!({ "kind": name, "member": member })))
        }
        Command::Subdivide { sset, max_dim } => {
            let x = Arc::new(load_sset(&sset, None)?);
            let e = EdgewiseSSet::new(x, max_dim)?;
            let body: Value = serde_json::from_str(&sset_to_json(e.set())).expect("own output parses");
            Ok(Outcome::Ok(json!({ "counts": e.set().counts(), "sset": body })))
        }
        Command::Oracle { suite, seed, cases } => {
            let (name, s) = match suite {
                SuiteArg::Membership => ("membership", Suite::Membership),
                SuiteArg::Dist => ("dist", Suite::Dist),
                SuiteArg::Product => ("product", Suite::Product),
            };
            let report = oracle::run_suite(s, seed, cases)?;
            let payload = json!({ "suite": name, "seed": seed, "cases": cases, "failures": report });
            Ok(if report.is_empty() {
                Outcome::Ok(payload)
            } else {
                Outcome::Violation(payload)
            })
        }
        Command::ExportCoords { points } => {
            let list: PointList = read_json(&points)?;
            let mut out = String::new();
            for p in list.into_vec() {
                let f = p.into_step(parent_dir(&points))?;
                let row: Vec<String> = f.coords().iter().map(fmt_q).collect();
                out.push_str(&row.join(","));
                out.push('\n');
            }
            Ok(Outcome::Text(out))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Outcome::Ok(payload)) => {
            println!("{}", json!({ "status": "ok", "payload": payload }));
            ExitCode::SUCCESS
        }
        Ok(Outcome::Violation(payload)) => {
            println!("{}", json!({ "status": "violation", "payload": payload }));
            eprintln!("property check failed");
            ExitCode::from(1)
        }
        Ok(Outcome::Text(text)) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            println!(
                "{}",
                json!({ "status": "error", "payload": { "message": e.to_string() } })
            );
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
