//! `bendix`: bending tori of polygon spaces from the command line.

mod golden;
mod table;

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use bendix::bending::{critical_values, fill, moment_image, reduce};
use bendix::json;
use bendix::polytope::{conjugacy_classes, moment_polytope};
use bendix::rational::parse_rational;
use bendix::reproductions::{self, REGISTRY};
use bendix::search::{
    enumerate_maximal_tori, is_maximal_bending, max_bending_dim, max_containing_dim,
    min_coarser_partition, min_lopsided_partition, quotient_by_symmetry, torus_report,
};
use bendix::{BendingSet, EdgeSet, Error, LengthFunction, Limits, PolygonSpace};
use clap::{Parser, ValueEnum};
use serde_json::{json, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Command {
    /// Genericity, nonemptiness and dimension of the polygon space.
    Check,
    /// Whether the subset given with -I is lopsided.
    Lopsided,
    /// Fewest lopsided blocks partitioning the edges (coarser than the
    /// bending set's maximal blocks when -b is given).
    Nmin,
    /// Largest bending-torus dimension, overall or containing -b.
    Dim,
    /// Completes the bending set to a full one.
    Fill,
    /// Maximality report for a full bending set.
    Maximal,
    /// All maximal bending tori.
    Enumerate,
    /// Moment polytope of a toric bending set.
    Polytope,
    /// Conjugacy classes of toric bending tori.
    Conjugacy,
    /// Reduction of the space at value -t of the subset -I.
    Reduce,
    /// Image of the bending function of -I.
    Image,
    /// Critical values of the bending function of -I.
    Critical,
    /// Runs the worked examples against their golden reports.
    Examples,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Debug, Parser)]
#[command(name = "bendix", version, about = "Bending tori of polygon spaces")]
struct Cli {
    command: Command,
    /// Length function document (`-` for standard input).
    #[arg(short = 'f', long = "lambda", value_name = "FILE")]
    lambda: Option<PathBuf>,
    /// Bending set document.
    #[arg(short = 'b', long = "bending", value_name = "FILE")]
    bending: Option<PathBuf>,
    /// Edge subset as a JSON array of ids, e.g. '["e4","e5"]'.
    #[arg(short = 'I', long = "subset", value_name = "JSON")]
    subset: Option<String>,
    /// Rational value such as 3/2.
    #[arg(short = 't', long = "value", value_name = "RAT", allow_hyphen_values = true)]
    value: Option<String>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Lifts the edge-count guards.
    #[arg(long)]
    force: bool,
    /// Maximum number of tori listed by `enumerate`.
    #[arg(long, value_name = "N")]
    limit: Option<usize>,
    /// Example id for `examples`.
    #[arg(long)]
    id: Option<String>,
    /// Print polytope vertices as CSV.
    #[arg(long)]
    csv: bool,
    /// Group enumerated tori under permutations of equal-length edges.
    #[arg(long)]
    symmetry: bool,
    /// Accept non-generic length functions.
    #[arg(long)]
    allow_singular: bool,
    /// Write example reports into this directory instead of checking them.
    #[arg(long, value_name = "DIR", hide = true)]
    bless: Option<PathBuf>,
}

/// Failures of a run: library validation errors exit with 2, everything
/// else with 1.
enum Failure {
    Invalid(Error, Value),
    Internal(String, String, Value),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Invalid(e, json!({}))
    }
}

type Outcome = std::result::Result<Output, Failure>;

enum Output {
    Document(Value),
    Text(String),
    /// Document printed, then exit with 1.
    Mismatch(Value),
}

fn limits(cli: &Cli) -> Limits {
    let mut l = Limits::default();
    if let Some(max) = std::env::var("BENDIX_MAX_EDGES").ok().and_then(|v| v.trim().parse().ok()) {
        l.max_generic_edges = max;
        l.max_enumeration_edges = max;
    }
    l.force = cli.force;
    l
}

fn read_document(path: &PathBuf) -> std::result::Result<Value, Failure> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::Internal("io".into(), e.to_string(), json!({})))?;
        s
    } else {
        std::fs::read_to_string(path).map_err(|e| {
            Failure::Invalid(
                Error::Json(format!("cannot read {}: {e}", path.display())),
                json!({"file": path.display().to_string()}),
            )
        })?
    };
    json::parse_str(&text).map_err(|e| Failure::Invalid(e, json!({"file": path.display().to_string()})))
}

fn missing(flag: &str, cli: &Cli) -> Failure {
    Failure::Invalid(
        Error::MissingArgument(format!("this command needs {flag}")),
        json!({"command": format!("{:?}", cli.command).to_lowercase()}),
    )
}

fn lambda(cli: &Cli) -> std::result::Result<LengthFunction, Failure> {
    let path = cli.lambda.as_ref().ok_or_else(|| missing("-f/--lambda", cli))?;
    Ok(json::parse_length_function(&read_document(path)?)?)
}

fn space(cli: &Cli) -> std::result::Result<PolygonSpace, Failure> {
    let l = lambda(cli)?;
    let lim = limits(cli);
    Ok(if cli.allow_singular {
        PolygonSpace::allowing_singular(l, &lim)?
    } else {
        PolygonSpace::with_limits(l, &lim)?
    })
}

fn bending(cli: &Cli, l: &LengthFunction) -> std::result::Result<Option<BendingSet>, Failure> {
    match &cli.bending {
        None => Ok(None),
        Some(path) => Ok(Some(json::parse_bending_set(l, &read_document(path)?)?)),
    }
}

fn require_bending(cli: &Cli, l: &LengthFunction) -> std::result::Result<BendingSet, Failure> {
    bending(cli, l)?.ok_or_else(|| missing("-b/--bending", cli))
}

fn subset(cli: &Cli, l: &LengthFunction) -> std::result::Result<EdgeSet, Failure> {
    let text = cli.subset.as_ref().ok_or_else(|| missing("-I/--subset", cli))?;
    Ok(json::parse_subset(l, &json::parse_str(text)?)?)
}

fn run(cli: &Cli) -> Outcome {
    let doc = match cli.command {
        Command::Check => {
            let l = lambda(cli)?;
            let lim = limits(cli);
            if !lim.force && l.len() > lim.max_generic_edges {
                return Err(Error::TooManyEdges {
                    what: "the genericity check",
                    got: l.len(),
                    max: lim.max_generic_edges,
                }
                .into());
            }
            let longest = l.longest(l.edges()).unwrap();
            json!({
                "edges": l.len(),
                "perimeter": json::rational(&l.perimeter()),
                "longest": l.id(longest).as_str(),
                "generic": l.is_generic(),
                "nonempty": l.is_nonempty(),
                "dimension": l.pol_dimension().ok(),
            })
        }
        Command::Lopsided => {
            let l = lambda(cli)?;
            let i = subset(cli, &l)?;
            json!({
                "subset": json::subset(&l, i),
                "lopsided": l.is_lopsided(i),
                "dominant_edge": l.dominant_edge(i).map(|d| l.id(d).as_str().to_string()),
            })
        }
        Command::Nmin => {
            let s = space(cli)?;
            let m = match bending(cli, &s)? {
                Some(b) => min_coarser_partition(&s, &b.maximal_elements())?,
                None => min_lopsided_partition(&s),
            };
            json!({"N": m.count, "witness": json::partition(&s, &m.partition)})
        }
        Command::Dim => {
            let s = space(cli)?;
            match bending(cli, &s)? {
                Some(b) => {
                    let (n, witness) = max_containing_dim(&s, &b)?;
                    json!({
                        "torus_dimension": b.torus_dimension(),
                        "max_containing_dim": n,
                        "witness": json::bending_set(&s, &witness),
                    })
                }
                None => json!({
                    "N": min_lopsided_partition(&s).count,
                    "max_bending_dim": max_bending_dim(&s),
                }),
            }
        }
        Command::Fill => {
            let s = space(cli)?;
            let b = require_bending(cli, &s)?;
            let f = fill(&s, &b);
            json!({
                "bending_set": json::bending_set(&s, &f),
                "dimension": f.torus_dimension(),
                "is_full": f.is_full(),
            })
        }
        Command::Maximal => {
            let s = space(cli)?;
            let b = require_bending(cli, &s)?;
            is_maximal_bending(&s, &b)?;
            json::torus_report(&s, &torus_report(&s, &b))
        }
        Command::Enumerate => {
            let s = space(cli)?;
            let tori = enumerate_maximal_tori(&s, cli.limit, &limits(cli))?;
            let counts: serde_json::Map<String, Value> = tori
                .dimension_counts
                .iter()
                .map(|(d, c)| (d.to_string(), json!(c.to_string())))
                .collect();
            let mut doc = json!({
                "reports": tori.reports.iter().map(|r| json::torus_report(&s, r)).collect::<Vec<_>>(),
                "spectrum": tori.spectrum(),
                "counts_by_dimension": counts,
                "total": tori.total().to_string(),
                "truncated": tori.truncated,
            });
            if cli.symmetry {
                let sets: Vec<BendingSet> = tori.reports.iter().map(|r| r.bending_set.clone()).collect();
                doc["classes"] = quotient_by_symmetry(&s, &sets)
                    .iter()
                    .map(|(b, k)| json!({"bending_set": json::bending_set(&s, b), "multiplicity": k}))
                    .collect();
            }
            doc
        }
        Command::Polytope => {
            let l = lambda(cli)?;
            let b = require_bending(cli, &l)?;
            let p = moment_polytope(&l, &b)?;
            if cli.csv {
                let header: Vec<String> = p.labels.iter().map(|&m| l.describe(m)).collect();
                let mut out = format!("{}\n", header.iter().map(|h| format!("\"{h}\"")).collect::<Vec<_>>().join(","));
                for v in &p.vertices {
                    let row: Vec<String> = v.iter().map(bendix::rational::format_rational).collect();
                    out.push_str(&row.join(","));
                    out.push('\n');
                }
                return Ok(Output::Text(out));
            }
            let mut doc = json::polytope(&l, &p);
            doc["is_delzant"] = json!(p.is_delzant());
            doc["volume"] = json::rational(&p.volume());
            doc
        }
        Command::Conjugacy => {
            let l = lambda(cli)?;
            let report = conjugacy_classes(&l, &limits(cli))?;
            json!({
                "classes": report.classes.iter().map(|c| json!({
                    "representative": json::polytope(&l, &c.representative),
                    "representative_set": json::bending_set(&l, &c.representative_set),
                    "members": c.members.iter().map(|m| json::bending_set(&l, m)).collect::<Vec<_>>(),
                })).collect::<Vec<_>>(),
                "class_count": report.classes.len(),
                "partial": report.partial,
            })
        }
        Command::Reduce => {
            let s = space(cli)?;
            let i = subset(cli, &s)?;
            let t = parse_rational(cli.value.as_ref().ok_or_else(|| missing("-t/--value", cli))?)?;
            let r = reduce(&s, i, &t)?;
            json!({
                "left": json::length_function(&r.left),
                "right": json::length_function(&r.right),
                "virtual_length": json::rational(r.virtual_length()),
                "generic": r.generic,
            })
        }
        Command::Image => {
            let s = space(cli)?;
            let i = subset(cli, &s)?;
            json::interval(&moment_image(&s, i)?)
        }
        Command::Critical => {
            let s = space(cli)?;
            let i = subset(cli, &s)?;
            json::rationals(&critical_values(&s, i)?)
        }
        Command::Examples => return examples(cli),
    };
    Ok(Output::Document(doc))
}

fn examples(cli: &Cli) -> Outcome {
    let selected: Vec<&reproductions::Reproduction> = match &cli.id {
        Some(id) => vec![reproductions::find(id).ok_or_else(|| {
            Failure::Invalid(
                Error::UnknownExample(id.clone()),
                json!({"known": REGISTRY.iter().map(|r| r.id).collect::<Vec<_>>()}),
            )
        })?],
        None => REGISTRY.iter().collect(),
    };
    if let Some(dir) = &cli.bless {
        for r in &selected {
            let report = (r.run)()?;
            let path = dir.join(format!("{}.json", r.id));
            std::fs::write(&path, json::to_string_pretty(&report) + "\n")
                .map_err(|e| Failure::Internal("io".into(), e.to_string(), json!({"file": path.display().to_string()})))?;
        }
        return Ok(Output::Document(json!({"written": selected.iter().map(|r| r.id).collect::<Vec<_>>()})));
    }
    let mut rows = Vec::new();
    let mut all_pass = true;
    for r in &selected {
        let report = (r.run)()?;
        let pass = golden::expected(r.id).is_some_and(|g| g == report);
        all_pass &= pass;
        rows.push(json!({
            "id": r.id,
            "title": r.title,
            "status": if pass { "pass" } else { "fail" },
            "report": report,
        }));
    }
    let doc = if cli.id.is_some() {
        rows.pop().unwrap()
    } else {
        json!({
            "examples": rows.iter().map(|r| json!({"id": r["id"], "title": r["title"], "status": r["status"]})).collect::<Vec<_>>(),
            "all_pass": all_pass,
        })
    };
    Ok(if all_pass {
        Output::Document(doc)
    } else {
        Output::Mismatch(doc)
    })
}

fn emit(cli: &Cli, v: &Value) {
    match cli.format {
        Format::Json => println!("{}", json::to_string(v)),
        Format::Table => print!("{}", table::render(v)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = std::panic::catch_unwind(|| run(&cli)).unwrap_or_else(|p| {
        let message = p
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_else(|| "unknown panic".into());
        Err(Failure::Internal("internal".into(), message, json!({})))
    });
    let command = format!("{:?}", cli.command).to_lowercase();
    match outcome {
        Ok(Output::Document(v)) => {
            emit(&cli, &v);
            ExitCode::SUCCESS
        }
        Ok(Output::Text(t)) => {
            print!("{t}");
            ExitCode::SUCCESS
        }
        Ok(Output::Mismatch(v)) => {
            emit(&cli, &v);
            eprintln!(
                "{}",
                json::to_string(&json!({"code": "golden_mismatch", "message": "example output differs from its golden report", "context": {"command": command}}))
            );
            ExitCode::from(1)
        }
        Err(Failure::Invalid(e, mut context)) => {
            if let Value::Object(map) = &mut context {
                map.entry("command").or_insert(json!(command));
            }
            eprintln!("{}", json::to_string(&json::error(&e, context)));
            ExitCode::from(2)
        }
        Err(Failure::Internal(code, message, mut context)) => {
            if let Value::Object(map) = &mut context {
                map.entry("command").or_insert(json!(command));
            }
            eprintln!("{}", json::to_string(&json!({"code": code, "message": message, "context": context})));
            ExitCode::from(1)
        }
    }
}
