use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use serde_json::{json, Value};
use stgr::exact::{decide, optimize, SearchError};
use stgr::format::{parse_coloring, parse_graph_file, write_col_file, write_graph_file, GraphFile};
use stgr::gadgets::{sunglasses_gadget, sunglasses_labeling};
use stgr::generate::{generate, random_labeling, rng_from_seed, Model};
use stgr::local_search::{build_hitting_set_ls_instance, ls_decide, RelabelConfig};
use stgr::radius::{bound_certificate, improved_bound, radius_label, tree_guarantees};
use stgr::rational::{format_rational, Rational, RationalJson};
use stgr::reductions::{coloring_to_labeling, reduce_3col, reduce_3col_diam2, Family, Role};
use stgr::temporal::{evaluate_stretch, fastest_duration, Labeling};
use stgr::Graph;

use crate::report::{InstanceSummary, RunReport, Timings};
use crate::{
    bench, Cli, CliError, Command, ExactMode, FamilyArg, FileKind, GenCommon, GenModel, GlobalOpts, EXIT_BUDGET,
    EXIT_NO, EXIT_OK,
};

pub(crate) type Done = (i32, String);

pub(crate) struct Ctx<'a> {
    pub opts: &'a GlobalOpts,
    pub echo: Vec<String>,
    pub timings: Timings,
}

impl<'a> Ctx<'a> {
    fn new(opts: &'a GlobalOpts, echo: Vec<String>) -> Self {
        Self { opts, echo, timings: Timings::new(opts.timings) }
    }

    pub fn emit(
        self,
        code: i32,
        instance: Option<InstanceSummary>,
        result: Value,
        seed: Option<u64>,
    ) -> Result<Done, CliError> {
        let report = RunReport { command: self.echo, instance, result, seed, timings_ms: self.timings.finish() };
        Ok((code, report.render()?))
    }

    /// Writes `text` to `--output` when given.
    pub fn write_output(&self, text: &str) -> Result<Option<String>, CliError> {
        match &self.opts.output {
            Some(path) => {
                write(path, text)?;
                Ok(Some(path.display().to_string()))
            }
            None => Ok(None),
        }
    }

    /// The main product of a command: written to `--output`, or embedded in
    /// the report as `file`.
    fn product(&self, result: &mut Value, text: String) -> Result<(), CliError> {
        match self.write_output(&text)? {
            Some(path) => result["output"] = json!(path),
            None => result["file"] = json!(text),
        }
        Ok(())
    }

    fn witness(&self, g: &Graph, lab: &Labeling, comment: String) -> Result<Value, CliError> {
        let text = write_graph_file(g, lab.delta(), Some(lab), &[comment]);
        Ok(json!(self.write_output(&text)?))
    }
}

pub(crate) fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

pub(crate) fn write(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

fn load(path: &Path) -> Result<GraphFile, CliError> {
    parse_graph_file(&read(path)?).map_err(|source| CliError::Format { path: path.to_path_buf(), source })
}

fn load_stgr(path: &Path) -> Result<(Graph, u32, Option<Labeling>), CliError> {
    let file = load(path)?;
    let delta = file.delta().ok_or_else(|| usage(format!("{}: expected a `p stgr` instance", path.display())))?;
    Ok((file.graph, delta, file.labeling))
}

fn load_labeled(path: &Path) -> Result<(Graph, Labeling), CliError> {
    let (g, _, lab) = load_stgr(path)?;
    let lab = lab.ok_or_else(|| usage(format!("{}: edges carry no labels", path.display())))?;
    Ok((g, lab))
}

fn rj(r: Rational) -> RationalJson {
    r.into()
}

fn pair(p: Option<(usize, usize)>) -> Value {
    json!(p.map(|(u, v)| [u + 1, v + 1]))
}

pub(crate) fn dispatch(cli: &Cli, echo: Vec<String>) -> Result<Done, CliError> {
    let ctx = Ctx::new(&cli.global, echo.clone());
    let res = match &cli.command {
        Command::Eval { input, durations } => eval(ctx, input, *durations),
        Command::Radius { input, root, best_root } => radius(ctx, input, *root, *best_root),
        Command::Exact { mode: ExactMode::Decide { input, alpha } } => exact_decide(ctx, input, *alpha),
        Command::Exact { mode: ExactMode::Optimize { input } } => exact_optimize(ctx, input),
        Command::LocalSearch { input, k, alpha0, zone_max } => local_search(ctx, input, *k, *alpha0, *zone_max),
        Command::Gadget { delta } => gadget(ctx, *delta),
        Command::Reduce3col { delta, input, coloring, family } => {
            reduce3col(ctx, *delta, input, coloring.as_deref(), *family)
        }
        Command::Gen { model } => gen(ctx, model),
        Command::Bench(args) => bench::bench(ctx, args),
    };
    match res {
        Err(CliError::Search(SearchError::BudgetExceeded { needed, budget })) => {
            let result = json!({ "status": "budget_exceeded", "needed": needed.to_string(), "budget": budget });
            Ctx::new(&cli.global, echo).emit(EXIT_BUDGET, None, result, None)
        }
        other => other,
    }
}

fn eval(mut ctx: Ctx, input: &Path, durations: bool) -> Result<Done, CliError> {
    let (g, lab) = load_labeled(input)?;
    let rep = ctx.timings.time("evaluate", || evaluate_stretch(&g, &lab));
    let summary = InstanceSummary::of(&g, lab.delta());
    ctx.emit(EXIT_OK, Some(summary), serde_json::to_value(rep.to_json(durations))?, None)
}

fn radius(mut ctx: Ctx, input: &Path, root: Option<usize>, best_root: bool) -> Result<Done, CliError> {
    let (g, delta, _) = load_stgr(input)?;
    let dist = g.distance_matrix();
    let metrics = dist.metrics();
    let root = match root {
        Some(r) if r == 0 || r > g.n() => return Err(usage(format!("root {r} is not a vertex"))),
        Some(r) => r - 1,
        None if best_root => {
            let centers = (0..g.n()).filter(|&v| metrics.eccentricity[v] == metrics.radius);
            let mut best: Option<(Rational, usize)> = None;
            for c in centers {
                let s = ctx
                    .timings
                    .time("roots", || radius_label(&g, delta, Some(c)).map(|lab| evaluate_stretch(&g, &lab).stretch))?;
                if best.is_none_or(|(b, _)| s < b) {
                    best = Some((s, c));
                }
            }
            best.map_or(0, |(_, c)| c)
        }
        None => metrics.first_center(),
    };
    let lab = ctx.timings.time("label", || radius_label(&g, delta, Some(root)))?;
    let rep = ctx.timings.time("evaluate", || evaluate_stretch(&g, &lab));
    let cert = bound_certificate(&g, delta);
    let improved = improved_bound(&g, delta, root)?;
    let tree = tree_guarantees(&g, delta).ok();

    let mut per_distance: BTreeMap<u32, Rational> = BTreeMap::new();
    for u in 0..g.n() {
        for v in 0..g.n() {
            let d = dist.get(u, v);
            if d >= 2 {
                let s = rep.per_pair_stretch(u, v);
                let slot = per_distance.entry(d).or_insert(s);
                *slot = (*slot).max(s);
            }
        }
    }
    let per_distance_within = per_distance.iter().all(|(l, s)| s <= &cert.per_distance_bound[l]);
    let within = rep.stretch <= cert.overall_bound && improved.is_none_or(|b| rep.stretch <= b);
    let per_distance: BTreeMap<String, RationalJson> =
        per_distance.into_iter().map(|(l, s)| (l.to_string(), rj(s))).collect();

    let comment = format!("radius labeling rooted at {}, stretch {}", root + 1, format_rational(&rep.stretch));
    let result = json!({
        "root": root + 1,
        "stretch": rj(rep.stretch),
        "worst_pair": pair(rep.worst_pair),
        "certificate": cert,
        "improved_bound": improved.map(rj),
        "tree": tree,
        "per_distance_stretch": per_distance,
        "within_bound": within,
        "per_distance_within": per_distance_within,
        "labels": lab.labels(),
        "witness": ctx.witness(&g, &lab, comment)?,
    });
    ctx.emit(EXIT_OK, Some(InstanceSummary::of(&g, delta)), result, None)
}

fn exact_decide(mut ctx: Ctx, input: &Path, alpha: Rational) -> Result<Done, CliError> {
    let (g, delta, _) = load_stgr(input)?;
    let budget = ctx.opts.budget;
    let found = ctx.timings.time("search", || decide(&g, delta, alpha, budget))?;
    let summary = Some(InstanceSummary::of(&g, delta));
    match found {
        Some(w) => {
            let stretch = evaluate_stretch(&g, &w).stretch;
            let comment = format!("exact witness for alpha {}", format_rational(&alpha));
            let result = json!({
                "alpha": rj(alpha),
                "feasible": true,
                "stretch": rj(stretch),
                "labels": w.labels(),
                "witness": ctx.witness(&g, &w, comment)?,
            });
            ctx.emit(EXIT_OK, summary, result, None)
        }
        None => ctx.emit(EXIT_NO, summary, json!({ "alpha": rj(alpha), "feasible": false }), None),
    }
}

fn exact_optimize(mut ctx: Ctx, input: &Path) -> Result<Done, CliError> {
    let (g, delta, _) = load_stgr(input)?;
    let budget = ctx.opts.budget;
    let opt = ctx.timings.time("search", || optimize(&g, delta, budget))?;
    let comment = format!("optimal labeling, stretch {}", format_rational(&opt.alpha));
    let result = json!({
        "stretch": rj(opt.alpha),
        "oracle_calls": opt.oracle_calls,
        "labels": opt.witness.labels(),
        "witness": ctx.witness(&g, &opt.witness, comment)?,
    });
    ctx.emit(EXIT_OK, Some(InstanceSummary::of(&g, delta)), result, None)
}

fn local_search(mut ctx: Ctx, input: &Path, k: usize, alpha0: Rational, zone_max: u32) -> Result<Done, CliError> {
    let (g, lab) = load_labeled(input)?;
    let cfg = RelabelConfig { budget: ctx.opts.budget, zone_exhaustive_max: zone_max };
    let initial = evaluate_stretch(&g, &lab).stretch;
    let found = ctx.timings.time("search", || ls_decide(&g, &lab, k, alpha0, &cfg))?;
    let summary = Some(InstanceSummary::of(&g, lab.delta()));
    let mut result = json!({ "k": k, "alpha0": rj(alpha0), "initial_stretch": rj(initial) });
    match found {
        Some(w) => {
            let changed: Vec<Value> = (0..g.m())
                .filter(|&e| w.get(e) != lab.get(e))
                .map(|e| {
                    let (u, v) = g.edge(e);
                    json!({ "edge": [u + 1, v + 1], "from": lab.get(e), "to": w.get(e) })
                })
                .collect();
            let stretch = evaluate_stretch(&g, &w).stretch;
            let comment = format!("relabeled {} edges, stretch {}", changed.len(), format_rational(&stretch));
            result["feasible"] = json!(true);
            result["stretch"] = json!(rj(stretch));
            result["changed"] = json!(changed);
            result["labels"] = json!(w.labels());
            result["witness"] = ctx.witness(&g, &w, comment)?;
            ctx.emit(EXIT_OK, summary, result, None)
        }
        None => {
            result["feasible"] = json!(false);
            ctx.emit(EXIT_NO, summary, result, None)
        }
    }
}

fn gadget_vertex_name(delta: u32, v: usize) -> String {
    let d = delta as usize;
    match v {
        0 => "u".into(),
        1 => "v".into(),
        _ if v <= d => format!("p^{{u,{}}}", v - 1),
        _ => format!("p^{{v,{}}}", v - d),
    }
}

fn gadget(mut ctx: Ctx, delta: u32) -> Result<Done, CliError> {
    let sg = ctx.timings.time("build", || sunglasses_gadget(delta))?;
    let lab = sunglasses_labeling(&sg);
    let vertices: Vec<Value> = (0..sg.graph.n())
        .map(|v| json!({ "vertex": v + 1, "name": gadget_vertex_name(delta, v), "central": sg.is_central(v) }))
        .collect();
    let edges: Vec<Value> =
        sg.edges.iter().map(|e| json!({ "edge": [e.a + 1, e.b + 1], "role": e.role, "label": e.label })).collect();
    let docking = [
        fastest_duration(&sg.graph, &lab, 0, 1).expect("docking points exist"),
        fastest_duration(&sg.graph, &lab, 1, 0).expect("docking points exist"),
    ];
    let mut result = json!({
        "vertices": vertices,
        "edges": edges,
        "centrals": sg.centrals.iter().map(|c| c + 1).collect::<Vec<_>>(),
        "audit_failures": sg.audit(&lab),
        "docking_durations": docking,
        "stretch": rj(evaluate_stretch(&sg.graph, &lab).stretch),
    });
    let text = write_graph_file(&sg.graph, delta, Some(&lab), &[format!("sunglasses gadget, delta {delta}")]);
    ctx.product(&mut result, text)?;
    ctx.emit(EXIT_OK, Some(InstanceSummary::of(&sg.graph, delta)), result, None)
}

/// Role with vertex and gadget references as 1-based ids.
fn role_json(r: &Role) -> Value {
    match *r {
        Role::Element { source } => json!({ "role": "element", "source": source + 1 }),
        Role::Center => json!({ "role": "center" }),
        Role::CenterStar => json!({ "role": "center_star" }),
        Role::Dummy { index } => json!({ "role": "dummy", "index": index }),
        Role::Diamond { from, to } => json!({ "role": "diamond", "from": from + 1, "to": to + 1 }),
        Role::Central { gadget } => json!({ "role": "central", "gadget": gadget + 1 }),
        Role::Internal { gadget } => json!({ "role": "internal", "gadget": gadget + 1 }),
        Role::Hat { of } => json!({ "role": "hat", "of": of + 1 }),
        Role::Aux { index } => json!({ "role": "aux", "index": index }),
    }
}

fn reduce3col(
    mut ctx: Ctx,
    delta: u32,
    input: &Path,
    coloring: Option<&Path>,
    family: FamilyArg,
) -> Result<Done, CliError> {
    let source = load(input)?.graph;
    let inst = ctx.timings.time("build", || match family {
        FamilyArg::Diam2 if delta != 3 => Err(usage("the diameter-2 family needs --delta 3")),
        FamilyArg::Diam2 => Ok(reduce_3col_diam2(&source)?),
        FamilyArg::Gadget => Ok(reduce_3col(&source, delta)?),
    })?;
    let family_name = match inst.family {
        Family::Diameter2 => "diameter2",
        Family::Tight3 => "tight3",
        Family::General => "general",
    };
    let mut result = json!({
        "family": family_name,
        "target": rj(inst.alpha),
        "center": inst.center + 1,
        "color_labels": inst.color_labels,
        "non_edges": inst.non_edges.iter().map(|&(u, v)| [u + 1, v + 1]).collect::<Vec<_>>(),
        "precondition_holds": inst.lonely.is_empty(),
        "lonely": inst.lonely.iter().map(|v| v + 1).collect::<Vec<_>>(),
        "roles": inst.roles.iter().enumerate().map(|(v, r)| {
            let mut e = role_json(r);
            e["vertex"] = json!(v + 1);
            e
        }).collect::<Vec<_>>(),
    });
    let mut code = EXIT_OK;
    let comment = format!("3-coloring reduction ({family_name}) of a {}-vertex graph", source.n());
    let text = match coloring {
        Some(path) => {
            let chi = parse_coloring(&read(path)?, source.n())
                .map_err(|source| CliError::Format { path: path.to_path_buf(), source })?;
            let lab = coloring_to_labeling(&inst, &chi)?;
            let rep = ctx.timings.time("evaluate", || evaluate_stretch(&inst.graph, &lab));
            let meets = rep.stretch <= inst.alpha;
            if !meets {
                code = EXIT_NO;
            }
            result["labeling"] = json!({
                "stretch": rj(rep.stretch),
                "worst_pair": pair(rep.worst_pair),
                "meets_target": meets,
            });
            write_graph_file(&inst.graph, inst.delta, Some(&lab), &[comment])
        }
        None => write_graph_file(&inst.graph, inst.delta, None, &[comment]),
    };
    ctx.product(&mut result, text)?;
    ctx.emit(code, Some(InstanceSummary::of(&inst.graph, inst.delta)), result, None)
}

fn gen(ctx: Ctx, model: &GenModel) -> Result<Done, CliError> {
    match model {
        GenModel::Path(c) => gen_graph(ctx, Model::Path, "path", c),
        GenModel::Cycle(c) => gen_graph(ctx, Model::Cycle, "cycle", c),
        GenModel::Star(c) => gen_graph(ctx, Model::Star, "star", c),
        GenModel::Tree(c) => gen_graph(ctx, Model::Tree, "tree", c),
        GenModel::Gnp { common, p } => gen_graph(ctx, Model::Gnp { p: *p }, "gnp", common),
        GenModel::HittingSet { universe, sets, k } => gen_hitting_set(ctx, *universe, &sets.0, *k),
    }
}

fn gen_graph(ctx: Ctx, model: Model, name: &str, common: &GenCommon) -> Result<Done, CliError> {
    if common.delta == 0 {
        return Err(usage("--delta must be at least 1"));
    }
    let seed = ctx.opts.seed;
    let mut rng = rng_from_seed(seed);
    let g = generate(model, common.n, &mut rng)?;
    let mut comment = format!("{name} n={} seed={seed}", common.n);
    if let Model::Gnp { p } = model {
        comment.push_str(&format!(" p={p}"));
    }
    let text = match common.format {
        FileKind::Col if common.labeled => return Err(usage("coloring instances carry no labels")),
        FileKind::Col => format!("c {comment}\n{}", write_col_file(&g)),
        FileKind::Stgr => {
            let lab = common.labeled.then(|| random_labeling(&g, common.delta, &mut rng));
            write_graph_file(&g, common.delta, lab.as_ref(), &[comment])
        }
    };
    let mut result = json!({ "model": name });
    ctx.product(&mut result, text)?;
    ctx.emit(EXIT_OK, Some(InstanceSummary::of(&g, common.delta)), result, Some(seed))
}

fn sidecar_path(output: &Path) -> PathBuf {
    let mut s = OsString::from(output.as_os_str());
    s.push(".json");
    PathBuf::from(s)
}

fn gen_hitting_set(ctx: Ctx, universe: usize, sets: &[Vec<usize>], k: usize) -> Result<Done, CliError> {
    let inst = build_hitting_set_ls_instance(universe, sets, k)?;
    let mut result = json!({
        "universe": inst.universe,
        "sets": inst.sets,
        "k": inst.k,
        "alpha0": rj(inst.alpha0),
        "initial_stretch": rj(inst.initial_stretch),
        "center": inst.center + 1,
        "element_vertices": (1..=universe).map(|x| inst.element_vertex(x) + 1).collect::<Vec<_>>(),
        "set_vertices": (0..inst.sets.len()).map(|j| inst.set_vertex(j) + 1).collect::<Vec<_>>(),
        "undersized": inst.undersized.iter().map(|j| j + 1).collect::<Vec<_>>(),
    });
    let comment = format!("hitting-set instance |U|={universe} |F|={} k={k}", inst.sets.len());
    let text = write_graph_file(&inst.graph, 2, Some(&inst.labeling), &[comment]);
    if let Some(out) = &ctx.opts.output {
        let side = sidecar_path(out);
        write(&side, &(serde_json::to_string_pretty(&result)? + "\n"))?;
        result["sidecar"] = json!(side.display().to_string());
    }
    ctx.product(&mut result, text)?;
    ctx.emit(EXIT_OK, Some(InstanceSummary::of(&inst.graph, 2)), result, None)
}
