//! Batch frontend: graph I/O, exact solvers, verified cover construction
//! and DOT output. Every command that emits a cover verifies it first and
//! refuses to print an invalid one.
//!
//! Exit codes: 0 ok, 2 parse/input error, 3 precondition violation,
//! 4 budget exhausted, 5 internal verification failure.

use arbor::acyclic::{self, Route};
use arbor::budget::Budget;
use arbor::error::Error;
use arbor::families;
use arbor::graph::Graph;
use arbor::io;
use arbor::oracle::{self, ForestCover, ProofMode};
use arbor::td;
use arbor::tw;
use arbor::tw2;
use arbor::validity;
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

/// Node budget assumed to burn in one millisecond, for ARBOR_BUDGET_MS.
const NODES_PER_MS: u64 = 500_000;

#[derive(Parser)]
#[command(name = "arbor", version, about = "Strong induced arboricity toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute f_k exactly (or bounds only) with an optimal verified cover.
    Fk {
        /// Edge-list file, or '-' for stdin.
        input: String,
        #[arg(short, long)]
        k: usize,
        /// Run the full exact search (the default).
        #[arg(long, conflicts_with = "bound_only")]
        exact: bool,
        /// Stop after the greedy upper bound and conflict lower bound.
        #[arg(long)]
        bound_only: bool,
        /// Search budget in nodes.
        #[arg(long)]
        budget: Option<u64>,
        /// Write the cover JSON here instead of stdout.
        #[arg(long)]
        cover_out: Option<PathBuf>,
        /// Machine-readable output.
        #[arg(long)]
        json: bool,
        /// Write a DOT rendering with the cover overlay.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Build a verified cover with one of the constructive methods.
    Cover {
        input: String,
        #[arg(short, long)]
        k: usize,
        #[arg(short, long, value_enum)]
        method: Method,
        /// Tree-width parameter for the tw method (default: exact).
        #[arg(short, long)]
        t: Option<usize>,
        /// Depth bound for the td method (default: minimum per component).
        #[arg(short, long)]
        d: Option<usize>,
        /// Route for the acyclic method.
        #[arg(long, value_enum, default_value = "best")]
        route: RouteArg,
        #[arg(long)]
        budget: Option<u64>,
        /// Also compare against the exact optimum when the graph is small.
        #[arg(long)]
        compare_exact: bool,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Structural statistics: tw, td, acyclic chromatic number, edge
    /// arboricity, twin edges and k-valid edge counts.
    Stats {
        input: String,
        #[arg(long)]
        json: bool,
        /// Largest k for the k-valid edge profile.
        #[arg(long, default_value = "6")]
        kmax: usize,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Generate a named family as an edge-list file.
    Gen {
        /// One of: wheel, subdivided-complete, pendant-double-sub,
        /// clique-tail, saw, biclique-sub, triangle-pendants, td3.
        family: String,
        params: Vec<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Tw2,
    Tw,
    Td,
    Acyclic,
    Main,
}

#[derive(Clone, Copy, ValueEnum)]
enum RouteArg {
    Pair,
    Vizing,
    Best,
}

impl From<RouteArg> for Route {
    fn from(r: RouteArg) -> Route {
        match r {
            RouteArg::Pair => Route::Pair,
            RouteArg::Vizing => Route::Vizing,
            RouteArg::Best => Route::Best,
        }
    }
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::Parse { .. } | Error::Input(_) | Error::Io(_) | Error::Json(_) => 2,
        Error::Precondition(_) | Error::HashMismatch { .. } => 3,
        Error::Budget(_) => 4,
        Error::Internal(_) => 5,
    }
}

fn read_graph(input: &str) -> Result<Graph, Error> {
    let text = if input == "-" {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf)?;
        buf
    } else {
        std::fs::read_to_string(input)?
    };
    io::parse_edge_list(&text)
}

fn budget_from(flag: Option<u64>) -> Budget {
    if let Some(nodes) = flag {
        return Budget::nodes(nodes);
    }
    if let Ok(ms) = std::env::var("ARBOR_BUDGET_MS") {
        if let Ok(ms) = ms.parse::<u64>() {
            return Budget::nodes(ms.saturating_mul(NODES_PER_MS));
        }
    }
    Budget::default()
}

fn mode_name(m: ProofMode) -> &'static str {
    match m {
        ProofMode::ExhaustedSearch => "search-exhausted",
        ProofMode::BoundMet => "bounds-met",
        ProofMode::BudgetExhausted => "budget-exhausted",
    }
}

fn emit_cover(
    g: &Graph,
    cover: &ForestCover,
    out: &Option<PathBuf>,
    dot: &Option<PathBuf>,
    to_stdout: bool,
) -> Result<(), Error> {
    let verdict = oracle::verify_cover(g, cover)?;
    if let oracle::Verdict::Invalid(v) = verdict {
        return Err(Error::Internal(format!("refusing to emit invalid cover: {v}")));
    }
    let jsontext = cover.to_json();
    match out {
        Some(path) => std::fs::write(path, &jsontext)?,
        None if to_stdout => println!("{jsontext}"),
        None => {}
    }
    if let Some(path) = dot {
        std::fs::write(path, io::to_dot(g, &cover.forests))?;
    }
    Ok(())
}

fn cmd_fk(
    input: String,
    k: usize,
    bound_only: bool,
    budget: Option<u64>,
    cover_out: Option<PathBuf>,
    json: bool,
    dot: Option<PathBuf>,
) -> Result<u8, Error> {
    let g = read_graph(&input)?;
    let budget = budget_from(budget);
    let res = if bound_only {
        oracle::bound_f_k(&g, k, budget)?
    } else {
        oracle::exact_f_k(&g, k, budget)?
    };
    let exact = res.value();
    if let Some(cover) = &res.certificate {
        emit_cover(&g, cover, &cover_out, &dot, !json)?;
    }
    if json {
        let payload = json!({
            "k": k,
            "lo": res.lo,
            "hi": res.hi,
            "exact": exact,
            "mode": mode_name(res.mode),
            "cover": res.certificate,
        });
        println!("{}", serde_json::to_string_pretty(&payload)?);
    } else {
        match exact {
            Some(v) => println!("f_{k} = {v} ({})", mode_name(res.mode)),
            None => match res.hi {
                Some(hi) => println!("f_{k} unknown, bounds [{}, {hi}] ({})", res.lo, mode_name(res.mode)),
                None => println!("f_{k} unknown, lower bound {} ({})", res.lo, mode_name(res.mode)),
            },
        }
    }
    if exact.is_none() {
        return Ok(4);
    }
    Ok(0)
}

struct BuiltCover {
    cover: ForestCover,
    bound: Option<u64>,
    notes: Vec<String>,
}

fn build_cover(
    g: &Graph,
    k: usize,
    method: Method,
    t: Option<usize>,
    d: Option<usize>,
    route: Route,
    budget: Budget,
) -> Result<BuiltCover, Error> {
    match method {
        Method::Tw2 => {
            if k != 2 {
                return Err(Error::Precondition(
                    "the tw2 method covers 2-valid edges; use --k 2".into(),
                ));
            }
            let cover = tw2::cover_2valid_tw2(g)?;
            Ok(BuiltCover {
                cover,
                bound: Some(3),
                notes: vec!["bound: 3 forests for tree-width <= 2".into()],
            })
        }
        Method::Tw => {
            let width = match t {
                Some(t) => t,
                None => tw::exact_treewidth(g, budget)?,
            };
            match k {
                1 => {
                    let width = width.max(1);
                    let cover = tw::cover_f1_tw(g, width, budget)?;
                    let bound = td::binomial(width + 1, 2);
                    Ok(BuiltCover {
                        cover,
                        bound: Some(bound),
                        notes: vec![format!("t = {width}, bound C(t+1,2) = {bound}")],
                    })
                }
                2 => {
                    let width = width.max(2);
                    let cover = tw::cover_f2_tw(g, width, budget)?;
                    let bound = 3 * td::binomial(width + 1, 3);
                    Ok(BuiltCover {
                        cover,
                        bound: Some(bound),
                        notes: vec![format!("t = {width}, bound 3*C(t+1,3) = {bound}")],
                    })
                }
                _ => Err(Error::Precondition(
                    "the tw method handles k = 1 or k = 2; use td or main for larger k".into(),
                )),
            }
        }
        Method::Td => {
            if k == 1 {
                // Tree-depth d implies tree-width at most d-1.
                let depth = oracle::exact_tree_depth(g, budget)?
                    .value()
                    .ok_or_else(|| Error::Budget("tree-depth computation".into()))?;
                let t = depth.saturating_sub(1).max(1);
                let cover = tw::cover_f1_tw(g, t, budget)?;
                let bound = td::binomial(depth, 2).max(1);
                return Ok(BuiltCover {
                    cover,
                    bound: Some(bound),
                    notes: vec![format!("k = 1 routed through tree-width {t}; bound C(d,2) = {bound}")],
                });
            }
            let (cover, depth) = match d {
                Some(d) => {
                    let forest = td::underlying_tree(g, d, budget)?.ok_or_else(|| {
                        Error::Precondition(format!("tree-depth exceeds the requested d = {d}"))
                    })?;
                    let depth = forest.depth();
                    (td::cover_td(g, &forest, k, budget)?.0, depth)
                }
                None => {
                    let (cover, ledgers) = td::cover_td_auto(g, k, budget)?;
                    let depth = ledgers.iter().map(|l| l.depth).max().unwrap_or(1);
                    (cover, depth)
                }
            };
            let bound = td::cover_bound(k, depth);
            Ok(BuiltCover {
                cover,
                bound: Some(bound),
                notes: vec![format!("depth {depth}, bound (2k)^d = {bound}")],
            })
        }
        Method::Acyclic => match k {
            1 => {
                let cover = acyclic::cover_f1_acyclic(g, budget)?;
                Ok(BuiltCover {
                    cover,
                    bound: None,
                    notes: vec!["bound C(x,2) with x the acyclic chromatic number".into()],
                })
            }
            2 => {
                let (cover, report) = acyclic::cover_f2_acyclic(g, route, budget)?;
                let bound = report.pair_bound.min(report.vizing_bound);
                Ok(BuiltCover {
                    cover,
                    bound: Some(bound),
                    notes: vec![
                        format!("x = {}, pair bound {}, regroup bound {}", report.x, report.pair_bound, report.vizing_bound),
                        format!(
                            "{} pieces checked, max piece tree-width {}",
                            report.pieces_checked, report.max_piece_treewidth
                        ),
                    ],
                })
            }
            _ => Err(Error::Precondition(
                "the acyclic method handles k = 1 or k = 2".into(),
            )),
        },
        Method::Main => {
            if k == 1 {
                let cover = acyclic::cover_f1_acyclic(g, budget)?;
                return Ok(BuiltCover {
                    cover,
                    bound: None,
                    notes: vec!["k = 1 composition is the acyclic pair cover".into()],
                });
            }
            let (cover, q) = td::cover_via_low_td_coloring(g, k, budget)?;
            let bound = td::binomial(q, (k + 1).min(q)) * td::cover_bound(k, k + 1);
            Ok(BuiltCover {
                cover,
                bound: Some(bound),
                notes: vec![format!(
                    "chi_{}ced = {q} colors, bound C(q,k+1)(2k)^(k+1) = {bound}",
                    k + 1
                )],
            })
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_cover(
    input: String,
    k: usize,
    method: Method,
    t: Option<usize>,
    d: Option<usize>,
    route: RouteArg,
    budget: Option<u64>,
    compare_exact: bool,
    json: bool,
    out: Option<PathBuf>,
    dot: Option<PathBuf>,
) -> Result<u8, Error> {
    let g = read_graph(&input)?;
    let budget = budget_from(budget);
    let built = build_cover(&g, k, method, t, d, route.into(), budget)?;
    emit_cover(&g, &built.cover, &out, &dot, !json)?;

    let exact = if compare_exact {
        oracle::exact_f_k(&g, k, budget)?.value()
    } else {
        None
    };
    if json {
        let payload = json!({
            "k": k,
            "size": built.cover.size(),
            "bound": built.bound,
            "notes": built.notes,
            "exact": exact,
            "verified": true,
        });
        println!("{}", serde_json::to_string_pretty(&payload)?);
    } else {
        println!("cover: {} forests (verified)", built.cover.size());
        for note in &built.notes {
            println!("  {note}");
        }
        if let Some(b) = built.bound {
            println!("  within bound: {} <= {b}", built.cover.size());
        }
        if let Some(v) = exact {
            println!("  exact optimum f_{k} = {v}");
        }
    }
    Ok(0)
}

fn cmd_stats(input: String, json: bool, kmax: usize, budget: Option<u64>) -> Result<u8, Error> {
    let g = read_graph(&input)?;
    let budget = budget_from(budget);
    let tw_val: Option<usize> = match tw::exact_treewidth(&g, budget) {
        Ok(v) => Some(v),
        Err(Error::Budget(_)) => None,
        Err(e) => return Err(e),
    };
    let td_val = oracle::exact_tree_depth(&g, budget)?.value();
    let acyc = oracle::exact_acyclic_chromatic(&g, budget)?.value();
    let arb = oracle::nash_williams_arboricity(&g, budget)?;
    let twins = g.twin_edges();
    let mut valid_counts = Vec::new();
    for k in 1..=kmax {
        let c = validity::k_valid_edges(&g, k)?.len();
        valid_counts.push(c);
        if c == 0 {
            break;
        }
    }
    if json {
        let payload = json!({
            "n": g.n(),
            "m": g.edge_count(),
            "hash": g.hash_hex(),
            "treewidth": tw_val,
            "treedepth": td_val,
            "acyclic_chromatic": acyc,
            "edge_arboricity": arb,
            "twin_edges": twins.iter().map(|&(u, v)| vec![u, v]).collect::<Vec<_>>(),
            "k_valid_counts": valid_counts,
        });
        println!("{}", serde_json::to_string_pretty(&payload)?);
    } else {
        let show = |x: Option<usize>| x.map_or("unknown".to_string(), |v| v.to_string());
        println!("n = {}, m = {}", g.n(), g.edge_count());
        println!("tree-width         {}", show(tw_val));
        println!("tree-depth         {}", show(td_val));
        println!("acyclic chromatic  {}", show(acyc));
        println!("edge arboricity    {arb}");
        println!("twin edges         {twins:?}");
        for (i, c) in valid_counts.iter().enumerate() {
            println!("{}-valid edges      {c}", i + 1);
        }
    }
    Ok(0)
}

fn cmd_gen(
    family: String,
    params: Vec<usize>,
    out: Option<PathBuf>,
    dot: Option<PathBuf>,
) -> Result<u8, Error> {
    let need = |n: usize| -> Result<(), Error> {
        if params.len() != n {
            return Err(Error::Input(format!(
                "family {family} takes {n} parameter(s), got {}",
                params.len()
            )));
        }
        Ok(())
    };
    let g = match family.as_str() {
        "wheel" => {
            need(1)?;
            families::wheel(params[0])?
        }
        "subdivided-complete" | "ksub" => {
            need(1)?;
            families::subdivided_complete(params[0])?
        }
        "pendant-double-sub" => {
            need(2)?;
            families::pendant_double_subdivided_complete(params[0], params[1])?.0
        }
        "clique-tail" => {
            need(2)?;
            families::clique_plus_tail(params[0], params[1])?
        }
        "saw" => {
            need(1)?;
            families::saw_graph(params[0])?
        }
        "biclique-sub" => {
            need(1)?;
            families::subdivided_biclique(params[0])?.0
        }
        "triangle-pendants" => {
            need(0)?;
            families::triangle_with_pendants()
        }
        "td3" => {
            need(1)?;
            families::td3_extremal(params[0])?
        }
        other => {
            return Err(Error::Input(format!(
                "unknown family {other:?}; see --help for the list"
            )))
        }
    };
    let text = io::write_edge_list(&g);
    match out {
        Some(path) => std::fs::write(path, &text)?,
        None => print!("{text}"),
    }
    if let Some(path) = dot {
        std::fs::write(path, io::to_dot(&g, &[]))?;
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Fk {
            input,
            k,
            exact: _,
            bound_only,
            budget,
            cover_out,
            json,
            dot,
        } => cmd_fk(input, k, bound_only, budget, cover_out, json, dot),
        Command::Cover {
            input,
            k,
            method,
            t,
            d,
            route,
            budget,
            compare_exact,
            json,
            out,
            dot,
        } => cmd_cover(input, k, method, t, d, route, budget, compare_exact, json, out, dot),
        Command::Stats {
            input,
            json,
            kmax,
            budget,
        } => cmd_stats(input, json, kmax, budget),
        Command::Gen {
            family,
            params,
            out,
            dot,
        } => cmd_gen(family, params, out, dot),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}
