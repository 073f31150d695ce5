use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use pathlattice::embed::{build_graph, parse_darts, GraphSpec};
use pathlattice::flow::{self, CapacityMap, FlowState, WeightTable};
use pathlattice::lattice::{self, MeetJoinResult, Orientation, PathSeq};
use pathlattice::verify::{self, fixtures::parse_path_list, AxiomOptions, OrderVerdict, PathFamily};
use pathlattice::{Dart, PlaneGraph};

const SCHEMA: u32 = 1;

#[derive(Parser)]
#[command(name = "pathlattice", version, about = "Left/right path lattices and planar max flow")]
struct Cli {
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// List the faces as dart orbits.
    Faces { graph: PathBuf },
    /// List the dual edge of every primal edge.
    Dual { graph: PathBuf },
    /// Enumerate all simple s-t paths.
    Paths {
        graph: PathBuf,
        #[arg(long, default_value_t = verify::DEFAULT_PATH_LIMIT)]
        limit: usize,
    },
    /// Compare two paths in the left/right order.
    Compare { graph: PathBuf, p: String, q: String },
    /// Greatest common lower bound of two paths.
    Meet {
        graph: PathBuf,
        p: String,
        q: String,
        /// Use the lowermost path of the union (s-t-planar embeddings only).
        #[arg(long)]
        st_planar: bool,
    },
    /// Least common upper bound of two paths.
    Join {
        graph: PathBuf,
        p: String,
        q: String,
        /// Use the uppermost path of the union (s-t-planar embeddings only).
        #[arg(long)]
        st_planar: bool,
    },
    /// The uppermost s-t path.
    Uppermost { graph: PathBuf },
    /// The lowermost s-t path.
    Lowermost { graph: PathBuf },
    /// Maximum flow with the capacities from the graph file.
    Maxflow {
        graph: PathBuf,
        #[arg(long, value_enum, default_value_t = Algo::Uppermost)]
        algo: Algo,
    },
    /// Greedy weighted path packing.
    Packing {
        graph: PathBuf,
        /// Path weights, one `<weight> <darts>` per line; unlisted paths weigh 1.
        #[arg(long)]
        weights: Option<PathBuf>,
        /// Also compute the exact optimum by exhaustive search.
        #[arg(long)]
        oracle: bool,
    },
    /// Brute-force check of the lattice axioms.
    Verify {
        graph: PathBuf,
        #[arg(long, default_value_t = 200)]
        limit: usize,
        #[arg(long)]
        jobs: Option<usize>,
        /// Also check the structural lemmas (s-t-planar embeddings only).
        #[arg(long)]
        lemmas: bool,
    },
    /// Search for a consecutive order on a path family.
    OrderExists {
        graph: PathBuf,
        #[arg(long)]
        paths: PathBuf,
        /// Symmetry break `P_lower ≺ P_upper`, 1-based.
        #[arg(long, num_args = 2, value_names = ["LOWER", "UPPER"])]
        wlog: Option<Vec<usize>>,
    },
    /// Whether s and t lie on the infinite face.
    CheckStPlane { graph: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum Algo {
    Uppermost,
    DualSp,
    Generic,
}

struct Failure {
    code: u8,
    message: String,
}

fn usage(message: impl std::fmt::Display) -> Failure {
    Failure { code: 2, message: message.to_string() }
}

fn domain(message: impl std::fmt::Display) -> Failure {
    Failure { code: 1, message: message.to_string() }
}

/// Text lines plus the equivalent JSON fields.
struct Report {
    lines: Vec<String>,
    json: Value,
}

fn load(path: &Path) -> Result<(GraphSpec, PlaneGraph), Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    let spec = GraphSpec::parse(&text).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    let g = build_graph(&spec).map_err(domain)?;
    Ok((spec, g))
}

fn path_arg(g: &PlaneGraph, text: &str) -> Result<PathSeq, Failure> {
    let darts = parse_darts(text).map_err(usage)?;
    PathSeq::new(g, darts).map_err(domain)
}

fn darts_json(darts: &[Dart]) -> Vec<String> {
    darts.iter().map(Dart::to_string).collect()
}

fn orientation(o: Orientation) -> &'static str {
    match o {
        Orientation::Clockwise => "clockwise",
        Orientation::Counterclockwise => "counterclockwise",
    }
}

fn faces(g: &PlaneGraph) -> Report {
    let inf = g.infinite_face();
    let mut lines = Vec::new();
    let mut list = Vec::new();
    for f in g.faces() {
        let tag = if f.id == inf { " (infinite)" } else { "" };
        let text: Vec<String> = darts_json(&f.boundary);
        lines.push(format!("face {}{tag}: {}", f.id.0, text.join(" ")));
        list.push(json!({ "id": f.id.0, "infinite": f.id == inf, "boundary": text }));
    }
    Report { lines, json: json!({ "faces": list }) }
}

fn dual(g: &PlaneGraph) -> Report {
    let mut lines = Vec::new();
    let mut list = Vec::new();
    for e in 0..g.edge_count() {
        let d = Dart::forward(e);
        let (l, r) = (g.left(d).0, g.right(d).0);
        lines.push(format!("edge {e}: left f{l} right f{r}"));
        list.push(json!({ "edge": e, "left": l, "right": r }));
    }
    Report { lines, json: json!({ "infinite": g.infinite_face().0, "edges": list }) }
}

fn bound(g: &PlaneGraph, p: &PathSeq, q: &PathSeq, st: bool, upper: bool) -> Result<Report, Failure> {
    if st {
        let r = if upper { lattice::join_st_planar(g, p, q) } else { lattice::meet_st_planar(g, p, q) }
            .map_err(domain)?;
        return Ok(Report {
            lines: vec![r.to_string()],
            json: json!({ "method": "st-planar", "path": r.to_string(), "cycles": [] }),
        });
    }
    let r: MeetJoinResult = if upper { lattice::join(g, p, q) } else { lattice::meet(g, p, q) }.map_err(domain)?;
    let mut lines = vec![r.path.to_string()];
    let mut cycles = Vec::new();
    for c in &r.cycles {
        let text = darts_json(&c.darts).join(" ");
        lines.push(format!("cycle {} {text}", orientation(c.orientation)));
        cycles.push(json!({ "orientation": orientation(c.orientation), "darts": text }));
    }
    Ok(Report { lines, json: json!({ "method": "potential", "path": r.path.to_string(), "cycles": cycles }) })
}

fn flow_lines(g: &PlaneGraph, f: &FlowState, lines: &mut Vec<String>) -> Vec<Value> {
    let mut out = Vec::new();
    for d in g.darts().filter(|&d| f.flow(d) > 0) {
        lines.push(format!("flow {d} {}", f.flow(d)));
        out.push(json!({ "dart": d.to_string(), "amount": f.flow(d) }));
    }
    out
}

fn maxflow(spec: &GraphSpec, g: &PlaneGraph, algo: Algo) -> Result<Report, Failure> {
    let cap = CapacityMap::from_spec(g, spec).map_err(domain)?;
    let (name, f, iterations) = match algo {
        Algo::Uppermost => {
            let out = flow::maxflow_uppermost(g, &cap).map_err(domain)?;
            ("uppermost", out.flow, Some(out.iterations))
        }
        Algo::DualSp => ("dual-sp", flow::maxflow_dual_sp(g, &cap).map_err(domain)?, None),
        Algo::Generic => ("generic", flow::maxflow_generic(g, &cap).map_err(domain)?, None),
    };
    f.check(g, &cap).map_err(domain)?;
    let cut = flow::mincut_extract(g, &cap, &f).map_err(domain)?;
    let mut lines = vec![format!("value {}", f.value)];
    let flows = flow_lines(g, &f, &mut lines);
    let side: Vec<String> = cut.side.iter().map(usize::to_string).collect();
    lines.push(format!("cut side {}", side.join(" ")));
    lines.push(format!("cut darts {}", darts_json(&cut.darts).join(" ")));
    lines.push(format!("cut capacity {}", cap.cut_capacity(&cut)));
    if let Some(k) = iterations {
        lines.push(format!("iterations {k}"));
    }
    Ok(Report {
        lines,
        json: json!({
            "algorithm": name,
            "value": f.value,
            "flow": flows,
            "iterations": iterations,
            "cut": {
                "side": cut.side,
                "darts": darts_json(&cut.darts),
                "capacity": cap.cut_capacity(&cut),
                "simple": cut.simple,
            },
        }),
    })
}

fn packing(spec: &GraphSpec, g: &PlaneGraph, weights: Option<&Path>, oracle: bool) -> Result<Report, Failure> {
    let cap = CapacityMap::from_spec(g, spec).map_err(domain)?;
    let table = match weights {
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| usage(format!("{}: {e}", p.display())))?;
            WeightTable::parse(g, &text).map_err(usage)?
        }
        None => WeightTable::default(),
    };
    let r = |p: &PathSeq| table.get(p);
    let pk = flow::weighted_packing(g, &cap, &r).map_err(domain)?;
    let mut lines = Vec::new();
    let mut entries = Vec::new();
    for (p, y) in &pk.entries {
        lines.push(format!("use {y} x {p} (weight {})", r(p)));
        entries.push(json!({ "path": p.to_string(), "amount": y, "weight": r(p) }));
    }
    let objective = pk.objective(&r);
    lines.push(format!("objective {objective}"));
    lines.push(format!("value {}", pk.value()));
    // the greedy is only exact for supermodular, monotone weights
    let mut check = Value::Null;
    if let Ok(family) = verify::enumerate_simple_paths_limited(g, 200) {
        if let Ok(rep) = verify::check_supermodular(&family, &r) {
            if !rep.supermodular || !rep.monotone {
                lines.push(format!(
                    "warning: weights are {}supermodular and {}monotone on the path lattice",
                    if rep.supermodular { "" } else { "not " },
                    if rep.monotone { "" } else { "not " }
                ));
            }
            check = json!({ "supermodular": rep.supermodular, "monotone": rep.monotone });
        }
    }
    let mut opt = Value::Null;
    if oracle {
        let best = flow::packing_oracle(g, &cap, &r).map_err(domain)?;
        lines.push(format!("oracle {best}"));
        opt = json!(best);
    }
    Ok(Report {
        lines,
        json: json!({ "objective": objective, "value": pk.value(), "paths": entries, "oracle": opt, "weights": check }),
    })
}

fn verify_cmd(g: &PlaneGraph, limit: usize, jobs: Option<usize>, lemmas: bool) -> Result<Report, Failure> {
    let opts = AxiomOptions { jobs, path_limit: limit, constructions: true };
    let rep = verify::check_axioms(g, opts).map_err(domain)?;
    let yes = |b: bool| if b { "yes" } else { "no" };
    let mut lines = vec![
        format!("paths {}", rep.path_count),
        format!("st-planar {}", yes(rep.st_planar)),
        format!("partial order {}", yes(rep.partial_order)),
        format!("lattice {}", yes(rep.lattice)),
        format!("submodular {}", yes(rep.submodular)),
        format!("consecutive {}", yes(rep.consecutive)),
        format!("constructions checked {} mismatches {}", rep.constructions_checked, rep.construction_mismatches),
        format!(
            "invariants checked {} solid darts, {} cycles, {} track changes; violations {}",
            rep.tally.solid_darts, rep.tally.cycles, rep.tally.track_changes, rep.invariant_violations
        ),
        format!("violations {}", rep.violation_count),
    ];
    for v in &rep.violations {
        lines.push(format!("  {}", serde_json::to_string(v).expect("violations serialize")));
    }
    let mut out = serde_json::to_value(&rep).expect("reports serialize");
    if lemmas {
        let family = verify::enumerate_simple_paths_limited(g, limit).map_err(domain)?;
        let lem = verify::check_structural_lemmas(&family, 20_000).map_err(domain)?;
        lines.push(format!(
            "lemmas: {} cuts, {} orientation, {} bridges, {} add-a-path checked; violations {}",
            lem.cuts_checked,
            lem.orientation_checked,
            lem.bridges_checked,
            lem.add_path_checked,
            lem.violations()
        ));
        for d in &lem.details {
            lines.push(format!("  {d}"));
        }
        out["lemmas"] = serde_json::to_value(&lem).expect("reports serialize");
    }
    Ok(Report { lines, json: out })
}

fn order_exists(g: &PlaneGraph, paths: &Path, wlog: Option<&[usize]>) -> Result<Report, Failure> {
    let text = std::fs::read_to_string(paths).map_err(|e| usage(format!("{}: {e}", paths.display())))?;
    let list = parse_path_list(g, &text).map_err(domain)?;
    let family = PathFamily::new(g, list).map_err(domain)?;
    let seed = match wlog {
        Some([lo, hi]) if *lo >= 1 && *hi >= 1 => Some((lo - 1, hi - 1)),
        Some(_) => return Err(usage("--wlog takes two 1-based path numbers")),
        None => None,
    };
    let forced = verify::forced_pairs(&family);
    let verdict = verify::order_existence_from(&family, seed).map_err(domain)?;
    let forced_text: Vec<String> = forced.iter().map(|(a, b)| format!("P{}-P{}", a + 1, b + 1)).collect();
    let mut lines = Vec::new();
    match &verdict {
        OrderVerdict::Refuted { derivation } => {
            verify::replay(&family, &forced, derivation).map_err(domain)?;
            lines.push("refuted".to_string());
            lines.push(format!("forced pairs {}", forced_text.join(" ")));
            lines.extend(derivation.render().lines().map(String::from));
        }
        OrderVerdict::Satisfiable { relations } => {
            lines.push("satisfiable".to_string());
            lines.push(format!("forced pairs {}", forced_text.join(" ")));
            for (a, b) in relations {
                lines.push(format!("P{} ≺ P{}", a + 1, b + 1));
            }
            lines.push("note: this order passes the family-local checks only; it need not extend to a lattice".into());
        }
    }
    Ok(Report { lines, json: json!({ "forced_pairs": forced, "result": verdict }) })
}

fn run(cli: &Cli) -> Result<(&'static str, Report), Failure> {
    let graph = |p: &Path| load(p);
    Ok(match &cli.cmd {
        Cmd::Faces { graph: p } => ("faces", faces(&graph(p)?.1)),
        Cmd::Dual { graph: p } => ("dual", dual(&graph(p)?.1)),
        Cmd::Paths { graph: p, limit } => {
            let fam = verify::enumerate_simple_paths_limited(&graph(p)?.1, *limit).map_err(domain)?;
            let list: Vec<String> = fam.paths.iter().map(PathSeq::to_string).collect();
            let mut lines = vec![format!("count {}", list.len())];
            lines.extend(list.iter().cloned());
            ("paths", Report { lines, json: json!({ "count": list.len(), "paths": list }) })
        }
        Cmd::Compare { graph: path, p, q } => {
            let g = graph(path)?.1;
            let (p, q) = (path_arg(&g, p)?, path_arg(&g, q)?);
            let c = lattice::compare(&g, &p, &q).map_err(domain)?;
            ("compare", Report { lines: vec![c.as_str().into()], json: json!({ "relation": c.as_str() }) })
        }
        Cmd::Meet { graph: path, p, q, st_planar } | Cmd::Join { graph: path, p, q, st_planar } => {
            let upper = matches!(cli.cmd, Cmd::Join { .. });
            let g = graph(path)?.1;
            let (p, q) = (path_arg(&g, p)?, path_arg(&g, q)?);
            (if upper { "join" } else { "meet" }, bound(&g, &p, &q, *st_planar, upper)?)
        }
        Cmd::Uppermost { graph: p } | Cmd::Lowermost { graph: p } => {
            let up = matches!(cli.cmd, Cmd::Uppermost { .. });
            let g = graph(p)?.1;
            let r = if up { lattice::uppermost_path(&g) } else { lattice::lowermost_path(&g) }.map_err(domain)?;
            let name = if up { "uppermost" } else { "lowermost" };
            (name, Report { lines: vec![r.to_string()], json: json!({ "path": r.to_string() }) })
        }
        Cmd::Maxflow { graph: p, algo } => {
            let (spec, g) = graph(p)?;
            ("maxflow", maxflow(&spec, &g, *algo)?)
        }
        Cmd::Packing { graph: p, weights, oracle } => {
            let (spec, g) = graph(p)?;
            ("packing", packing(&spec, &g, weights.as_deref(), *oracle)?)
        }
        Cmd::Verify { graph: p, limit, jobs, lemmas } => ("verify", verify_cmd(&graph(p)?.1, *limit, *jobs, *lemmas)?),
        Cmd::OrderExists { graph: p, paths, wlog } => {
            ("order-exists", order_exists(&graph(p)?.1, paths, wlog.as_deref())?)
        }
        Cmd::CheckStPlane { graph: p } => {
            let st = verify::is_st_plane_embedding(&graph(p)?.1);
            ("check-st-plane", Report { lines: vec![st.to_string()], json: json!({ "st_planar": st }) })
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((command, report)) => {
            let text = if cli.json {
                let mut v = report.json;
                v["schema"] = json!(SCHEMA);
                v["command"] = json!(command);
                serde_json::to_string_pretty(&v).expect("reports serialize") + "\n"
            } else {
                report.lines.iter().map(|l| format!("{l}\n")).collect()
            };
            // a closed pipe downstream is not our failure
            let _ = std::io::stdout().lock().write_all(text.as_bytes());
            ExitCode::SUCCESS
        }
        Err(f) => {
            if cli.json {
                let v = json!({ "schema": SCHEMA, "error": f.message, "status": f.code });
                println!("{}", serde_json::to_string_pretty(&v).expect("errors serialize"));
            }
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
