use std::collections::BTreeMap;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use rayon::prelude::*;
use serde_json::{json, Value};

use markgame_core::doc::{export_dot, graph_to_json, parse_graph_json, Loaded};
use markgame_core::game::{play_match, MatchError, MatchResult};
use markgame_core::lattice::{generate, CenterSelection, Family, LatticeBundle, LatticeMeta};
use markgame_core::scheme::{find_angle_marking, find_gray_cover};
use markgame_core::solver::{bounds_report, solve_colve, BoundsError, SolverConfig, SolverError};
use markgame_core::strategy::{StrategyError, StrategySpec};
use markgame_core::{validate_scheme, MarkingScheme, PlanarGraph, Side};

use crate::{Cli, Command, Failure};

pub fn run(cli: Cli) -> Result<(), Failure> {
    let out = cli.out.as_deref();
    match cli.command {
        Command::Gen { family, rows, cols, insertions, seed, centers } => gen(out, &family, rows, cols, insertions, seed, centers),
        Command::Play { graph, alice, bob, seed, rounds } => play(out, &graph.graph, &alice, &bob, seed, rounds),
        Command::Solve { graph, budget, parallel, all_thresholds, timing } => {
            let config = SolverConfig { node_budget: Some(budget.budget), parallel, all_thresholds };
            solve(out, &graph.graph, config, timing)
        }
        Command::Verify { graph, derive } => verify(out, &graph.graph, derive),
        Command::Bounds { graph, subgraphs, budget } => bounds(out, &graph.graph, &subgraphs, budget.budget),
        Command::Export { graph, format } => export(out, &graph.graph, &format),
        Command::Tourney { graph, alice, bob, games, seed, rounds } => {
            tourney(out, &graph.graph, &alice, &bob, games, seed, rounds)
        }
        Command::Serve { port, host, origin } => serve(std::net::SocketAddr::new(host, port), origin),
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn emit_json(out: Option<&Path>, value: &Value) -> Result<(), Failure> {
    let mut text = serde_json::to_string_pretty(value).expect("values serialise");
    text.push('\n');
    emit(out, &text)
}

fn read_source(source: &str) -> Result<String, Failure> {
    let mut text = String::new();
    if source == "-" {
        std::io::stdin().read_to_string(&mut text).map_err(|e| Failure::Usage(format!("stdin: {e}")))?;
    } else {
        text = std::fs::read_to_string(source).map_err(|e| Failure::Usage(format!("{source}: {e}")))?;
    }
    Ok(text)
}

fn load(source: &str) -> Result<Loaded, Failure> {
    parse_graph_json(&read_source(source)?).map_err(|e| Failure::Usage(format!("{source}: {e}")))
}

/// Rebuilds the lattice bundle when the file's generation parameters
/// reproduce its graph, so derived families keep their base. The file's own
/// scheme wins over the regenerated one.
fn bundle_of(loaded: Loaded) -> LatticeBundle {
    if let Some(meta) = &loaded.meta {
        if let Ok(mut bundle) = generate(meta) {
            if bundle.graph.to_spec() == loaded.graph.to_spec() {
                if loaded.scheme.is_some() {
                    bundle.scheme = loaded.scheme;
                }
                return bundle;
            }
        }
    }
    let meta = loaded.meta.unwrap_or(LatticeMeta {
        family: Family::Custom,
        rows: None,
        cols: None,
        insertions: None,
        seed: None,
        centers: None,
    });
    LatticeBundle { meta, graph: Arc::new(loaded.graph), scheme: loaded.scheme, base: None }
}

fn strategy_failure(e: StrategyError) -> Failure {
    match e {
        StrategyError::BadDescriptor(_) => Failure::Usage(e.to_string()),
        other => Failure::Infeasible(other.to_string()),
    }
}

fn parse_spec(text: &str, side: Side) -> Result<StrategySpec, Failure> {
    let spec: StrategySpec = text.parse().map_err(strategy_failure)?;
    if spec.side() != side {
        return Err(Failure::Usage(format!("{text} is not a strategy for {side}")));
    }
    Ok(spec)
}

fn gen(
    out: Option<&Path>,
    family: &str,
    rows: Option<u32>,
    cols: Option<u32>,
    insertions: Option<u32>,
    seed: Option<u64>,
    centers: Option<String>,
) -> Result<(), Failure> {
    let family: Family = family.parse().map_err(|e: markgame_core::lattice::LatticeError| Failure::Usage(e.to_string()))?;
    let centers = centers
        .map(|c| c.parse::<CenterSelection>())
        .transpose()
        .map_err(|e| Failure::Usage(e.to_string()))?;
    let meta = LatticeMeta { family, rows, cols, insertions, seed, centers };
    let bundle = generate(&meta).map_err(|e| Failure::Usage(e.to_string()))?;
    let mut text = graph_to_json(&bundle.graph, bundle.scheme.as_ref(), Some(&bundle.meta));
    text.push('\n');
    emit(out, &text)
}

fn match_json(graph: &PlanarGraph, r: &MatchResult) -> Value {
    json!({
        "final_score": r.final_score,
        "achieved_at": r.achieved_at.map(|(v, round)| json!({ "vertex": graph.vertex_id(v), "round": round })),
        "termination": r.termination,
        "rounds": r.trace.len(),
        "trace": r.trace,
        "post_alice": r.post_alice,
        "history": r.history.iter().map(|m| m.label(graph)).collect::<Vec<_>>(),
    })
}

fn run_match(
    bundle: &LatticeBundle,
    alice: &StrategySpec,
    bob: &StrategySpec,
    rounds: Option<usize>,
) -> Result<MatchResult, Failure> {
    let mut a = alice.build(bundle).map_err(strategy_failure)?;
    let mut b = bob.build(bundle).map_err(strategy_failure)?;
    play_match(bundle.graph.clone(), a.as_mut(), b.as_mut(), rounds).map_err(|e| match e {
        MatchError::Setup(e) => Failure::Usage(e.to_string()),
        other => Failure::Infeasible(other.to_string()),
    })
}

fn play(
    out: Option<&Path>,
    source: &str,
    alice: &str,
    bob: &str,
    seed: Option<u64>,
    rounds: Option<usize>,
) -> Result<(), Failure> {
    let mut alice = parse_spec(alice, Side::Alice)?;
    let mut bob = parse_spec(bob, Side::Bob)?;
    if let Some(s) = seed {
        alice = alice.with_seed(s);
        bob = bob.with_seed(s);
    }
    let bundle = bundle_of(load(source)?);
    let r = run_match(&bundle, &alice, &bob, rounds)?;
    let mut report = json!({
        "config": {
            "command": "play",
            "graph": source,
            "alice": alice.to_string(),
            "bob": bob.to_string(),
            "seed": seed,
            "rounds": rounds,
        }
    });
    report.as_object_mut().unwrap().extend(match_json(&bundle.graph, &r).as_object().unwrap().clone());
    let at = match r.achieved_at {
        Some((v, round)) => format!(" at vertex {} in round {round}", bundle.graph.vertex_id(v)),
        None => String::new(),
    };
    eprintln!(
        "{alice} vs {bob}: final score {}{at}; {} rounds, ended by {:?}",
        r.final_score,
        r.trace.len(),
        r.termination
    );
    emit_json(out, &report)
}

fn solve(out: Option<&Path>, source: &str, config: SolverConfig, timing: bool) -> Result<(), Failure> {
    let loaded = load(source)?;
    let result = solve_colve(&loaded.graph, &config).map_err(|e| match e {
        SolverError::TooLarge { .. } => Failure::Infeasible(e.to_string()),
        SolverError::ForeignState => Failure::Usage(e.to_string()),
    })?;
    if timing {
        eprintln!("solved in {:.3}s, {} nodes", result.elapsed.as_secs_f64(), result.nodes);
    }
    emit_json(
        out,
        &json!({
            "config": {
                "command": "solve",
                "graph": source,
                "budget": config.node_budget,
                "parallel": config.parallel,
                "all_thresholds": config.all_thresholds,
            },
            "result": result,
        }),
    )?;
    match result.value {
        Some(v) => {
            eprintln!("value {v}");
            Ok(())
        }
        None => Err(Failure::Budget(format!(
            "node budget exhausted; value in [{}, {}]",
            result.lo, result.hi
        ))),
    }
}

fn verify(out: Option<&Path>, source: &str, derive: bool) -> Result<(), Failure> {
    let loaded = load(source)?;
    let graph = &loaded.graph;
    let (scheme, derived) = match (loaded.scheme, derive) {
        (Some(s), _) => (s, false),
        (None, true) => {
            let coloring = find_gray_cover(graph)
                .ok_or_else(|| Failure::Infeasible("no set of gray triangles covers every edge once".into()))?;
            let scheme = find_angle_marking(graph, &coloring)
                .ok_or_else(|| Failure::Infeasible("the gray cover admits no angle marking".into()))?;
            (scheme, true)
        }
        (None, false) => (MarkingScheme::blank(graph.face_count()), false),
    };
    let report = validate_scheme(graph, &scheme);
    eprint!("{report}");
    let mut value = json!({
        "config": { "command": "verify", "graph": source, "derive": derive },
        "passed": report.passed(),
        "derived": derived,
        "report": report,
    });
    if derived {
        let doc: Value = serde_json::from_str(&graph_to_json(graph, Some(&scheme), loaded.meta.as_ref()))
            .expect("graph documents are JSON");
        value["graph"] = doc;
    }
    emit_json(out, &value)?;
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Infeasible("scheme violates the hypotheses".into()))
    }
}

fn bounds(out: Option<&Path>, source: &str, subgraphs: &[PathBuf], budget: u64) -> Result<(), Failure> {
    let loaded = load(source)?;
    let subs = subgraphs
        .iter()
        .map(|p| load(&p.to_string_lossy()).map(|l| l.graph))
        .collect::<Result<Vec<_>, _>>()?;
    let config = SolverConfig { node_budget: Some(budget), ..SolverConfig::default() };
    let bracket = bounds_report(&loaded.graph, &subs, &config).map_err(|e| match e {
        BoundsError::NotSubgraph { .. } => Failure::Usage(e.to_string()),
        BoundsError::Solver { .. } => Failure::Infeasible(e.to_string()),
    })?;
    eprintln!("value in [{}, {}]", bracket.lo, bracket.hi);
    emit_json(
        out,
        &json!({
            "config": {
                "command": "bounds",
                "graph": source,
                "subgraphs": subgraphs,
                "budget": budget,
            },
            "bracket": bracket,
        }),
    )
}

fn export(out: Option<&Path>, source: &str, format: &str) -> Result<(), Failure> {
    if format != "dot" {
        return Err(Failure::Usage(format!("unknown export format {format}; only dot is supported")));
    }
    let loaded = load(source)?;
    emit(out, &export_dot(&loaded.graph, loaded.scheme.as_ref()))
}

fn tourney(
    out: Option<&Path>,
    source: &str,
    alice: &str,
    bob: &str,
    games: u64,
    seed: u64,
    rounds: Option<usize>,
) -> Result<(), Failure> {
    let alice = parse_spec(alice, Side::Alice)?;
    let bob = parse_spec(bob, Side::Bob)?;
    let bundle = bundle_of(load(source)?);
    // fail fast on strategies that cannot run on this graph
    alice.build(&bundle).map_err(strategy_failure)?;
    bob.build(&bundle).map_err(strategy_failure)?;

    let scores = (0..games)
        .into_par_iter()
        .map(|i| {
            let s = seed.wrapping_add(i);
            run_match(&bundle, &alice.with_seed(s), &bob.with_seed(s), rounds).map(|r| (s, r.final_score))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let mut histogram: BTreeMap<u32, u64> = BTreeMap::new();
    for &(_, score) in &scores {
        *histogram.entry(score).or_default() += 1;
    }
    let max = scores.iter().map(|&(_, s)| s).max();
    let mean = if games == 0 { 0.0 } else { scores.iter().map(|&(_, s)| s as f64).sum::<f64>() / games as f64 };
    eprintln!("{games} games: max final score {}, mean {mean:.3}", max.map_or("-".into(), |m| m.to_string()));
    emit_json(
        out,
        &json!({
            "config": {
                "command": "tourney",
                "graph": source,
                "alice": alice.to_string(),
                "bob": bob.to_string(),
                "games": games,
                "seed": seed,
                "rounds": rounds,
            },
            "histogram": histogram,
            "max": max,
            "mean": mean,
            "results": scores.iter().map(|&(s, score)| json!({ "seed": s, "final_score": score })).collect::<Vec<_>>(),
        }),
    )
}

fn serve(addr: std::net::SocketAddr, origin: Option<String>) -> Result<(), Failure> {
    let runtime = tokio::runtime::Builder::new_multi_thread()
        .enable_all()
        .build()
        .map_err(|e| Failure::Usage(e.to_string()))?;
    eprintln!("listening on http://{addr}");
    runtime
        .block_on(markgame_service::serve(addr, origin.as_deref()))
        .map_err(|e| Failure::Usage(format!("{addr}: {e}")))
}
