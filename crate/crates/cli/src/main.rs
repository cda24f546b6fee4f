//! `flagdeg`: enumerate orbits, draw their posets, compare and connect
//! objects by elementary moves, and cross-check everything over GF(q).

mod check;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use flagdeg::json::{
    config_from_json, object_to_json, parse_object, poset_to_dot, poset_to_json, rank_vector_to_json, region_to_json,
    shape_to_json,
};
use flagdeg::oracle::classify;
use flagdeg::order::{moves_from, poset};
use flagdeg::{
    enumerate_objects, move_chain, move_poset, object_dim, rank_compare, rank_vector, DimVector, Error,
    FlagObject, OrderKind, Shape,
};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "flagdeg", version, about = "Orbits of GL(V) on Grassmannian and flag products, and their degenerations")]
struct Cli {
    /// Seed for every randomised check.
    #[arg(long, env = "FLAGDEG_SEED", default_value_t = 0, global = true)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List every object of a dimension vector.
    Enumerate {
        #[command(flatten)]
        target: Target,
        #[arg(long, value_enum, default_value_t = ListFormat::Table)]
        format: ListFormat,
    },
    /// Draw the move, rank or weak order of a dimension vector.
    Hasse {
        #[command(flatten)]
        target: Target,
        #[arg(long, value_enum, default_value_t = Order::Move)]
        order: Order,
        #[arg(long, value_enum, default_value_t = GraphFormat::Dot)]
        format: GraphFormat,
        /// Keep only cover relations.
        #[arg(long)]
        reduce: bool,
    },
    /// Compare two objects in the rank order and in the move order.
    Compare {
        first: PathBuf,
        second: PathBuf,
        #[arg(long, value_enum, default_value_t = ListFormat::Table)]
        format: ListFormat,
    },
    /// Build a chain of elementary moves from the first object to the second.
    Chain {
        first: PathBuf,
        second: PathBuf,
        #[arg(long, value_enum, default_value_t = ListFormat::Table)]
        format: ListFormat,
    },
    /// Cross-check formulas and moves against linear algebra over GF(q).
    Oracle {
        #[command(subcommand)]
        action: OracleAction,
    },
    /// Name the orbit of an explicit configuration (U, W, flag).
    Classify {
        config: PathBuf,
        #[arg(long, value_enum, default_value_t = ListFormat::Table)]
        format: ListFormat,
    },
}

#[derive(Subcommand)]
enum OracleAction {
    Check(check::CheckArgs),
}

#[derive(Args)]
struct Target {
    #[arg(long = "type", value_enum)]
    kind: Kind,
    /// `a_1,..,a_p;k;l` for type D, `a_1,..,a_p;b_1,..,b_q` for type A.
    #[arg(long, allow_hyphen_values = true)]
    dv: String,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    #[value(name = "A", alias = "a")]
    A,
    #[value(name = "D", alias = "d")]
    D,
}

#[derive(Clone, Copy, ValueEnum)]
enum Order {
    Move,
    Rank,
    Weak,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ListFormat {
    Table,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphFormat {
    Dot,
    Json,
}

/// How a command failed, and with which exit code.
#[derive(Debug)]
pub enum Failure {
    /// Unreadable input or a request that makes no sense (exit 2).
    Usage(String),
    /// Well-formed but unsatisfiable request (exit 1).
    Infeasible(String),
    /// Two computations disagree; carries the counterexample (exit 3).
    Mismatch(Value),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Infeasible(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Mismatch(_) => 3,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        match e {
            Error::InvalidDimVector(_) | Error::NotComparable | Error::NoDominantMove { .. } => {
                Failure::Infeasible(e.to_string())
            }
            _ => Failure::Usage(e.to_string()),
        }
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Enumerate { target, format } => enumerate(&target, format),
        Command::Hasse { target, order, format, reduce } => hasse(&target, order, format, reduce),
        Command::Compare { first, second, format } => compare(&first, &second, format),
        Command::Chain { first, second, format } => chain(&first, &second, format),
        Command::Oracle { action: OracleAction::Check(args) } => check::run(&args, cli.seed),
        Command::Classify { config, format } => classify_config(&config, format),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            match &failure {
                Failure::Usage(msg) | Failure::Infeasible(msg) => eprintln!("error: {msg}"),
                Failure::Mismatch(bundle) => {
                    eprintln!("error: mismatch, counterexample follows");
                    println!("{}", serde_json::to_string_pretty(bundle).expect("serialisable"));
                }
            }
            ExitCode::from(failure.code())
        }
    }
}

fn parse_target(t: &Target) -> Result<(Shape, DimVector), Failure> {
    let dv = DimVector::parse(matches!(t.kind, Kind::D), &t.dv)?;
    let shape = dv.shape().map_err(|e| Failure::Infeasible(e.to_string()))?;
    dv.validate()?;
    Ok((shape, dv))
}

fn read_object(path: &Path) -> Result<FlagObject, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    parse_object(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

/// Both objects, checked to live over the same quiver and dimension vector.
fn read_pair(first: &Path, second: &Path) -> Result<(FlagObject, FlagObject), Failure> {
    let (f, g) = (read_object(first)?, read_object(second)?);
    if f.shape != g.shape {
        return Err(Failure::Usage(format!("objects live on different quivers: {} and {}", f.shape, g.shape)));
    }
    let (df, dg) = (object_dim(&f), object_dim(&g));
    if df != dg {
        return Err(Failure::Usage(format!("dimension vectors differ: {df} and {dg}")));
    }
    Ok((f, g))
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("serialisable"));
}

fn enumerate(target: &Target, format: ListFormat) -> Outcome {
    let (shape, dv) = parse_target(target)?;
    let objs = enumerate_objects(shape, &dv)?;
    match format {
        ListFormat::Table => {
            let width = objs.len().saturating_sub(1).to_string().len();
            for (k, f) in objs.iter().enumerate() {
                println!("{k:>width$}  {f}");
            }
            println!("{} objects", objs.len());
        }
        ListFormat::Json => print_json(&json!({
            "shape": shape_to_json(shape),
            "dv": dv.to_string(),
            "objects": objs.iter().map(object_to_json).collect::<Vec<_>>(),
            "count": objs.len(),
        })),
    }
    Ok(())
}

fn hasse(target: &Target, order: Order, format: GraphFormat, reduce: bool) -> Outcome {
    let (shape, dv) = parse_target(target)?;
    let kind = match order {
        Order::Move => OrderKind::Move,
        Order::Rank => OrderKind::Rank,
        Order::Weak if !shape.is_type_d() => {
            return Err(Failure::Usage("the weak order is defined for type D only".into()));
        }
        Order::Weak => OrderKind::Weak,
    };
    let poset = poset(shape, &dv, kind)?;
    match format {
        GraphFormat::Dot => print!("{}", poset_to_dot(&poset, reduce)?),
        GraphFormat::Json => print_json(&poset_to_json(&poset, reduce)?),
    }
    Ok(())
}

fn compare(first: &Path, second: &Path, format: ListFormat) -> Outcome {
    let (f, g) = read_pair(first, second)?;
    let rank = rank_compare(&f, &g)?;
    let poset = move_poset(f.shape, &object_dim(&f))?;
    let (x, y) = (poset.index_of(&f), poset.index_of(&g));
    let (Some(x), Some(y)) = (x, y) else {
        return Err(Failure::Usage("object missing from its own enumeration".into()));
    };
    let moved = poset.compare(x, y);
    if moved != rank {
        let slice = |from: &FlagObject| -> Vec<Value> {
            moves_from(from).iter().map(|(r, h)| json!({"region": region_to_json(r), "to": h.label()})).collect()
        };
        return Err(Failure::Mismatch(json!({
            "first": object_to_json(&f),
            "second": object_to_json(&g),
            "rank": rank.as_str(),
            "move": moved.as_str(),
            "rank_numbers": {"first": rank_vector_to_json(&rank_vector(&f)), "second": rank_vector_to_json(&rank_vector(&g))},
            "moves": {"first": slice(&f), "second": slice(&g)},
        })));
    }
    match format {
        ListFormat::Table => {
            println!("rank: {}", rank.as_str());
            println!("move: {}", moved.as_str());
        }
        ListFormat::Json => print_json(&json!({"rank": rank.as_str(), "move": moved.as_str()})),
    }
    Ok(())
}

fn chain(first: &Path, second: &Path, format: ListFormat) -> Outcome {
    let (f, g) = read_pair(first, second)?;
    let steps = move_chain(&f, &g)?;
    let end = steps.last().map_or(&f, |(_, h)| h);
    if *end != g {
        return Err(Failure::Mismatch(json!({
            "first": object_to_json(&f),
            "second": object_to_json(&g),
            "reached": object_to_json(end),
        })));
    }
    match format {
        ListFormat::Table => {
            println!("0  {f}");
            for (k, (r, h)) in steps.iter().enumerate() {
                println!("{}  {h}    via {r}", k + 1);
            }
            println!("{} moves", steps.len());
        }
        ListFormat::Json => print_json(&json!({
            "start": object_to_json(&f),
            "steps": steps
                .iter()
                .map(|(r, h)| json!({"region": region_to_json(r), "object": object_to_json(h)}))
                .collect::<Vec<_>>(),
        })),
    }
    Ok(())
}

fn classify_config(path: &Path, format: ListFormat) -> Outcome {
    let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    let config = config_from_json(&text)?;
    let f = classify(&config)?;
    match format {
        ListFormat::Table => {
            println!("{f}");
            println!("dv {}", object_dim(&f));
        }
        ListFormat::Json => print_json(&json!({"object": object_to_json(&f), "dv": object_dim(&f).to_string()})),
    }
    Ok(())
}
