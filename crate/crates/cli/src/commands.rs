use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Duration;

use serde_json::{json, Map, Value};

use gdom::bounds::{alpha_star, gamma32, gamma_l2, general_bounds_l, layered_rate, table1, theorem3, DEFAULT_TK};
use gdom::constructions::{
    base_wellcovered, example1_hypergraph, example2_hypergraph, extremal_graphs, fig4_left, fig4_right,
    graham_target, greedy_packing, is_packing, k_plus, layered_wellcovered, packing_for, small_graph,
    star_completed_dompair, steiner_triple_system, LayeredPlan, Packer, SmallGraph,
};
use gdom::graph::{certificate, f_upper_bound, f_value, matching_set_m, triangle_count, Half};
use gdom::hypergraph::{
    clique_count, dompair_from_wellcovered, is_well_covered, verify_dominating, verify_independent,
};
use gdom::sets::{binomial, shadow};
use gdom::solver::exhaustive::{classify_extremal, enumerate_optimal_32, exhaustive_graphs_f, sample_optimal_32};
use gdom::solver::{solve, Mode, SolveOptions, Status as SolveStatus};
use gdom::{DomPair, Graph, KGraph, SetFamily};

use crate::report::{Outcome, Status};
use crate::{
    parse_file, write_file, BoundsCommand, Builder, Cli, CliError, CliResult, Command, ConstructArgs, Emit,
    ExhaustiveCommand, ModeArg, PackerArg, SolveArgs, VerifyKind,
};

pub fn run(cli: &Cli) -> CliResult<Outcome> {
    match &cli.command {
        Command::Construct(args) => construct(cli, args),
        Command::Verify { kind, files } => verify(*kind, files),
        Command::Analyze { file } => analyze(file),
        Command::Solve(args) => solve_cmd(cli, args),
        Command::Bounds(b) => bounds(b),
        Command::Exhaustive(e) => exhaustive(e),
    }
}

fn obj(v: Value) -> Map<String, Value> {
    match v {
        Value::Object(m) => m,
        _ => unreachable!("object literal"),
    }
}

fn need<T: Copy>(v: Option<T>, builder: &str, flag: &str) -> CliResult<T> {
    v.ok_or_else(|| CliError::Usage(format!("construct {builder} needs --{flag}")))
}

fn emit(cli: &Cli, text: &str) -> CliResult<Value> {
    match &cli.out {
        Some(p) => {
            write_file(p, text)?;
            Ok(Value::String(p.display().to_string()))
        }
        None => Ok(Value::Null),
    }
}

fn half(h: Half) -> String {
    h.to_string()
}

fn graph_summary(g: &Graph) -> Value {
    let c = certificate(g);
    json!({
        "artifact_kind": "graph",
        "n": g.order(),
        "edges": g.edge_count(),
        "triangles": triangle_count(g),
        "uncovered_edges": c.uncovered_edges.len(),
        "f": half(c.f()),
        "f_times_2": c.f_times_2,
        "f_bound": f_upper_bound(g.order()),
    })
}

fn dompair_summary(d: &DomPair) -> Value {
    json!({
        "artifact_kind": "dompair",
        "n": d.ground(),
        "l": d.l(),
        "k": d.k(),
        "size": d.size(),
        "lower_count": d.lower().len(),
        "upper_count": d.upper().len(),
        "dominating": verify_dominating(d).dominating,
        "independent": verify_independent(d).independent,
    })
}

fn family_summary(f: &SetFamily) -> Value {
    json!({
        "artifact_kind": "set_family",
        "n": f.ground(),
        "k": f.cardinality(),
        "count": f.len(),
        "packing": is_packing(f),
    })
}

fn hypergraph_summary(h: &KGraph) -> Value {
    let c = clique_count(h);
    json!({
        "artifact_kind": "hypergraph",
        "n": h.ground(),
        "k": h.k(),
        "edges": h.edge_count(),
        "cliques": c,
        "e_minus_c": h.edge_count() as i64 - c as i64,
        "well_covered": is_well_covered(h).well_covered,
    })
}

fn packer(p: PackerArg) -> Packer {
    match p {
        PackerArg::Auto => Packer::Auto,
        PackerArg::Greedy => Packer::Greedy,
    }
}

fn set_inputs(inputs: &mut Map<String, Value>, args: &ConstructArgs) {
    let fields = [("n", args.n), ("s", args.s), ("k", args.k), ("v", args.v), ("m", args.m), ("a", args.a), ("b", args.b)];
    for (name, value) in fields {
        if let Some(v) = value {
            inputs.insert(name.into(), json!(v));
        }
    }
    if let Some(a) = args.alpha {
        inputs.insert("alpha".into(), json!(a));
    }
    if let Some(s) = &args.sizes {
        inputs.insert("sizes".into(), json!(s));
    }
    if matches!(args.which, Builder::Base | Builder::Layered) {
        inputs.insert("packer".into(), json!(format!("{:?}", args.packer).to_lowercase()));
        inputs.insert("emit".into(), json!(format!("{:?}", args.emit).to_lowercase()));
    }
}

fn emit_hypergraph(cli: &Cli, h: &KGraph, as_: Emit, out: &mut Map<String, Value>) -> CliResult<()> {
    out.insert("hypergraph".into(), hypergraph_summary(h));
    match as_ {
        Emit::Hypergraph => {
            out.insert("artifact".into(), emit(cli, &h.edges().to_text())?);
        }
        Emit::Dompair => {
            let d = dompair_from_wellcovered(h)?;
            out.insert("summary".into(), dompair_summary(&d));
            out.insert("artifact".into(), emit(cli, &d.to_text())?);
        }
    }
    Ok(())
}

fn construct(cli: &Cli, args: &ConstructArgs) -> CliResult<Outcome> {
    let name = match args.which {
        Builder::Kplus => "kplus",
        Builder::Star => "star",
        Builder::Sts => "sts",
        Builder::Packing => "packing",
        Builder::Base => "base",
        Builder::Layered => "layered",
        _ => "",
    };
    let mut inputs = Map::new();
    set_inputs(&mut inputs, args);
    let mut out = Map::new();
    let put_graph = |g: &Graph, out: &mut Map<String, Value>| -> CliResult<()> {
        out.insert("summary".into(), graph_summary(g));
        out.insert("artifact".into(), emit(cli, &g.to_text())?);
        Ok(())
    };
    match args.which {
        Builder::Kplus => {
            let g = k_plus(need(args.s, name, "s")?, need(args.n, name, "n")?)?;
            put_graph(&g, &mut out)?;
        }
        Builder::H5a | Builder::H5b | Builder::H9 => {
            let which = match args.which {
                Builder::H5a => SmallGraph::H5a,
                Builder::H5b => SmallGraph::H5b,
                _ => SmallGraph::H9,
            };
            put_graph(&small_graph(which), &mut out)?;
        }
        Builder::Star => {
            let n = need(args.n, name, "n")?;
            let d = star_completed_dompair(n)?;
            out.insert("summary".into(), dompair_summary(&d));
            out.insert("theorem_value".into(), json!(gamma32(n as u64)));
            out.insert("artifact".into(), emit(cli, &d.to_text())?);
        }
        Builder::Sts => {
            let f = steiner_triple_system(need(args.v, name, "v")?)?;
            let mut s = family_summary(&f);
            s["pairs_covered"] = json!(shadow(&f)?.len());
            out.insert("summary".into(), s);
            out.insert("artifact".into(), emit(cli, &f.to_text())?);
        }
        Builder::Packing => {
            let (m, k) = (need(args.m, name, "m")?, need(args.k, name, "k")?);
            let f = greedy_packing(m, k)?;
            let target = graham_target(m, k);
            let mut s = family_summary(&f);
            s["graham_target"] = json!(target);
            s["ratio_to_target"] = json!(f.len() as f64 / target as f64);
            out.insert("summary".into(), s);
            out.insert("artifact".into(), emit(cli, &f.to_text())?);
        }
        Builder::Base => {
            let (a, b, k) = (need(args.a, name, "a")?, need(args.b, name, "b")?, need(args.k, name, "k")?);
            let (packing, steiner) = packing_for(a, k, packer(args.packer))?;
            let h = base_wellcovered(a, b, k, &packing)?;
            out.insert("packing_size".into(), json!(packing.len()));
            out.insert("steiner".into(), json!(steiner));
            emit_hypergraph(cli, &h, args.emit, &mut out)?;
        }
        Builder::Layered => {
            let (n, k) = (need(args.n, name, "n")?, need(args.k, name, "k")?);
            let plan = match (&args.sizes, args.alpha) {
                (Some(_), Some(_)) => return Err(CliError::Usage("give --alpha or --sizes, not both".into())),
                (Some(sizes), None) => LayeredPlan::from_sizes(n, k, sizes)?,
                (None, a) => LayeredPlan::new(n, k, a.map_or_else(|| alpha_star(k as u32), Ok)?)?,
            };
            let built = layered_wellcovered(&plan, packer(args.packer))?;
            let h = &built.hypergraph;
            let (e, c) = (h.edge_count() as i64, clique_count(h) as i64);
            out.insert("sizes".into(), json!(plan.sizes));
            out.insert(
                "layers".into(),
                Value::Array(
                    built
                        .layers
                        .iter()
                        .map(|l| {
                            json!({"a": l.a_size, "b": l.b_size, "packing_size": l.packing_size,
                                   "steiner": l.steiner, "edges": l.edges, "cliques": l.cliques})
                        })
                        .collect(),
                ),
            );
            out.insert("dompair_size".into(), json!(binomial(n, k) as i64 - e + c));
            out.insert("density".into(), json!((binomial(n, k) as i64 - e + c) as f64 / binomial(n, k) as f64));
            if let Some(a) = plan.split_ratio {
                out.insert("asymptotic_density".into(), json!(1.0 - layered_rate(k as u32, a)?));
            }
            emit_hypergraph(cli, h, args.emit, &mut out)?;
        }
        Builder::Fig4Left | Builder::Fig4Right => {
            if args.n.is_some_and(|n| n != 9) {
                return Err(CliError::Usage("the fig4 witnesses exist only for n = 9".into()));
            }
            let d = if args.which == Builder::Fig4Left { fig4_left() } else { fig4_right() };
            out.insert("summary".into(), dompair_summary(&d));
            out.insert("artifact".into(), emit(cli, &d.to_text())?);
        }
        Builder::Example1 | Builder::Example2 => {
            let h = if args.which == Builder::Example1 { example1_hypergraph() } else { example2_hypergraph().hypergraph };
            let d = dompair_from_wellcovered(&h)?;
            out.insert("hypergraph".into(), hypergraph_summary(&h));
            out.insert("summary".into(), dompair_summary(&d));
            out.insert("artifact".into(), emit(cli, &d.to_text())?);
        }
    }
    let status = declared_status(&out);
    Ok(Outcome::new(inputs, out).with_status(status))
}

// A builder whose output breaks its own declared properties is a verification failure.
fn declared_status(out: &Map<String, Value>) -> Status {
    let bad = |v: Option<&Value>, key: &str| v.and_then(|s| s.get(key)).is_some_and(|x| x == &json!(false));
    if bad(out.get("summary"), "dominating") || bad(out.get("hypergraph"), "well_covered") {
        Status::Fail
    } else {
        Status::Ok
    }
}

fn verify(kind: VerifyKind, files: &[std::path::PathBuf]) -> CliResult<Outcome> {
    let mut results = Vec::new();
    let mut all_pass = true;
    for path in files {
        let (pass, witness) = match kind {
            VerifyKind::Wellcovered => {
                let h = KGraph::new(parse_file(path, SetFamily::parse)?);
                let w = is_well_covered(&h);
                (w.well_covered, w.witness.map(|v| json!(v.to_string())))
            }
            _ => {
                let d = parse_file(path, DomPair::parse)?;
                match kind {
                    VerifyKind::Dominating => {
                        let r = verify_dominating(&d);
                        (r.dominating, r.witness.map(|v| json!(v.to_string())))
                    }
                    VerifyKind::Independent => {
                        let r = verify_independent(&d);
                        (r.independent, r.witness.map(|(a, b)| json!([a.to_string(), b.to_string()])))
                    }
                    _ => match verify_dominating(&d).witness {
                        Some(w) => (false, Some(json!({"undominated": w.to_string()}))),
                        None => {
                            let redundant = d.members().find(|v| verify_dominating(&d.without(v)).dominating);
                            (redundant.is_none(), redundant.map(|v| json!({"redundant": v.to_string()})))
                        }
                    },
                }
            }
        };
        all_pass &= pass;
        results.push(json!({"path": path.display().to_string(), "pass": pass, "witness": witness}));
    }
    let inputs = obj(json!({"files": files.iter().map(|p| p.display().to_string()).collect::<Vec<_>>()}));
    let outputs = obj(json!({"pass": all_pass, "results": results}));
    Ok(Outcome::new(inputs, outputs).with_status(if all_pass { Status::Ok } else { Status::Fail }))
}

fn analyze(file: &std::path::Path) -> CliResult<Outcome> {
    let g = parse_file(file, Graph::parse)?;
    let c = certificate(&g);
    let mut out = obj(serde_json::to_value(&c).expect("certificate serializes"));
    let m: Vec<[usize; 2]> = matching_set_m(&g).into_iter().map(|(u, v)| [u, v]).collect();
    out.insert("f".into(), json!(half(f_value(&g))));
    out.insert("f_bound".into(), json!(f_upper_bound(g.order())));
    out.insert("within_bound".into(), json!(c.within_bound()));
    out.insert("attains_bound".into(), json!(c.f_times_2 == 2 * f_upper_bound(g.order())));
    out.insert("equality_clause_holds".into(), json!(c.equality_clause_holds()));
    out.insert("m_count".into(), json!(m.len()));
    out.insert("matching_set_m".into(), json!(m));
    if (5..=24).contains(&g.order()) {
        out.insert("extremal".into(), json!(classify_extremal(&g)));
    }
    let status = if c.first_step_holds && c.final_inequality_holds && c.within_bound() { Status::Ok } else { Status::Fail };
    Ok(Outcome::new(obj(json!({"file": file.display().to_string()})), out).with_status(status))
}

fn solve_cmd(cli: &Cli, args: &SolveArgs) -> CliResult<Outcome> {
    let mode = match args.mode {
        ModeArg::Gamma => Mode::Gamma,
        ModeArg::I => Mode::Independent,
    };
    let budget = match args.budget {
        Some(b) if !(b.is_finite() && b > 0.0) => return Err(CliError::Usage(format!("--budget must be positive, got {b}"))),
        b => b.map(Duration::from_secs_f64),
    };
    let warm_starts = args.warm.iter().map(|p| parse_file(p, DomPair::parse)).collect::<CliResult<Vec<_>>>()?;
    let opts = SolveOptions { budget, warm_starts, ..Default::default() };
    let r = solve(args.n, args.l, args.k, mode, &opts)?;
    let mut inputs = obj(json!({"n": args.n, "l": args.l, "k": args.k, "mode": mode.name(), "budget_s": args.budget}));
    inputs.insert("warm".into(), json!(args.warm.iter().map(|p| p.display().to_string()).collect::<Vec<_>>()));
    let mut out = obj(json!({
        "size": r.size,
        "status": r.status,
        "lower_bound": r.lower_bound,
        "lower_count": r.witness.lower().len(),
        "upper_count": r.witness.upper().len(),
    }));
    if (args.l, args.k) == (3, 2) {
        out.insert("theorem_value".into(), json!(gamma32(args.n as u64)));
    }
    out.insert("artifact".into(), emit(cli, &r.witness.to_text())?);
    let status = if r.status == SolveStatus::Optimal { Status::Ok } else { Status::Budget };
    let mut o = Outcome::new(inputs, out).with_status(status);
    o.nodes_explored = Some(r.nodes_explored);
    Ok(o)
}

fn bounds(cmd: &BoundsCommand) -> CliResult<Outcome> {
    match cmd {
        BoundsCommand::Table1 { tk } => {
            let mut config: BTreeMap<u32, (f64, &str)> = DEFAULT_TK.iter().map(|&(k, t)| (k, (t, "default"))).collect();
            for &(k, t) in tk {
                config.insert(k, (t, "user"));
            }
            let list: Vec<(u32, f64)> = config.iter().map(|(&k, &(t, _))| (k, t)).collect();
            let rows = table1(&list)?;
            let mut table = String::new();
            writeln!(table, "{:>2}  {:>7}  {:>7}  {:>7}  {:>7}  {:>7}  source", "k", "t_k", "lower", "upper", "new", "alpha*")
                .unwrap();
            let mut json_rows = Vec::new();
            for row in &rows {
                let (lo, gu, nu) = row.rounded();
                let source = config[&row.k].1;
                writeln!(
                    table,
                    "{:>2}  {:>7.4}  {:>7.3}  {:>7.3}  {:>7.3}  {:>7.4}  {source}",
                    row.k, row.turan_upper_tk, lo, gu, nu, row.alpha_star
                )
                .unwrap();
                let mut v = serde_json::to_value(row).expect("row serializes");
                v["t_k_source"] = json!(source);
                v["printed"] = json!({"lower": lo, "gerbner_upper": gu, "new_upper": nu});
                json_rows.push(v);
            }
            table.push_str("t_k defaults are inverted from the lower column: t_k = k(1 - lower)/(k - 1)\n");
            let inputs = obj(json!({"tk": list.iter().map(|(k, t)| format!("{k}={t}")).collect::<Vec<_>>()}));
            let mut o = Outcome::new(inputs, obj(json!({"rows": json_rows})));
            o.table = Some(table);
            Ok(o)
        }
        BoundsCommand::Theorem3 { k } => {
            let (a, bound) = theorem3(*k)?;
            Ok(Outcome::new(obj(json!({"k": k})), obj(json!({"alpha_star": a, "bound": bound}))))
        }
        BoundsCommand::Gamma32 { n } => {
            let mut out = obj(json!({"value": gamma32(*n), "extrapolated": *n < 5}));
            if *n < 5 {
                out.insert("note".into(), json!("formula evaluated outside its proven range n >= 5"));
            }
            Ok(Outcome::new(obj(json!({"n": n})), out))
        }
        BoundsCommand::General { l, k, t } => {
            let v = general_bounds_l(*l, *k, *t)?;
            Ok(Outcome::new(obj(json!({"l": l, "k": k, "t": t})), obj(json!({"lower": v}))))
        }
        BoundsCommand::GammaL2 { l } => {
            let v = gamma_l2(*l)?;
            Ok(Outcome::new(obj(json!({"l": l})), obj(json!({"coefficient": v}))))
        }
    }
}

fn histogram(ds: &[DomPair]) -> CliResult<BTreeMap<String, usize>> {
    let mut h = BTreeMap::new();
    for d in ds {
        let g = gdom::graph::graph_from_dompair(d)?;
        *h.entry(classify_extremal(&g).unwrap_or_else(|| "none".into())).or_insert(0) += 1;
    }
    Ok(h)
}

fn exhaustive(cmd: &ExhaustiveCommand) -> CliResult<Outcome> {
    match *cmd {
        ExhaustiveCommand::Optimal32 { n } => {
            let all = enumerate_optimal_32(n)?;
            let hist = histogram(&all)?;
            let expected: Vec<String> = extremal_graphs(n).into_iter().map(|(name, _)| name).collect();
            let realized = expected.iter().all(|e| hist.contains_key(e));
            let out = obj(json!({
                "size": gamma32(n as u64),
                "count": all.len(),
                "classes": hist,
                "expected": expected,
                "all_extremal": !hist.contains_key("none"),
                "every_extremal_realized": realized,
            }));
            Ok(Outcome::new(obj(json!({"n": n})), out))
        }
        ExhaustiveCommand::Sample32 { n, count, seed } => {
            let sample = sample_optimal_32(n, count, seed)?;
            let hist = histogram(&sample)?;
            let expected: Vec<String> = extremal_graphs(n).into_iter().map(|(name, _)| name).collect();
            let out = obj(json!({
                "size": gamma32(n as u64),
                "count": sample.len(),
                "classes": hist,
                "expected": expected,
                "all_extremal": !hist.contains_key("none"),
            }));
            Ok(Outcome::new(obj(json!({"n": n, "count": count, "seed": seed})), out))
        }
        ExhaustiveCommand::GraphsF { n } => {
            let r = exhaustive_graphs_f(n)?;
            let maximizers: Vec<Value> = r
                .maximizers
                .iter()
                .map(|g| {
                    let name = if n >= 5 { classify_extremal(g) } else { None };
                    json!({"edges": g.edges().iter().map(|&(u, v)| [u, v]).collect::<Vec<_>>(), "name": name})
                })
                .collect();
            let out = obj(json!({
                "max_f": half(Half(r.max_f_times_2)),
                "max_f_times_2": r.max_f_times_2,
                "f_bound": f_upper_bound(n),
                "attains_bound": r.max_f_times_2 == 2 * f_upper_bound(n),
                "labeled_maximizers": r.labeled_maximizers,
                "maximizer_classes": maximizers.len(),
                "maximizers": maximizers,
                "equality_clause_holds": true,
            }));
            Ok(Outcome::new(obj(json!({"n": n})), out))
        }
    }
}
