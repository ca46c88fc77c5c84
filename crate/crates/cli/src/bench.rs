//! Radius labeling against the exact optimum on a generated suite.

use std::fmt::Write as _;
use std::time::Instant;

use rayon::prelude::*;
use serde_json::json;
use stgr::exact::{optimize, SearchError};
use stgr::generate::{generate, rng_from_seed, Model};
use stgr::radius::{radius_label, BoundCertificate};
use stgr::rational::{Rational, RationalJson};
use stgr::temporal::evaluate_stretch;
use stgr::Graph;

use crate::commands::{usage, Ctx, Done};
use crate::{BenchArgs, BenchModel, CliError, EXIT_OK};

struct Row {
    n: usize,
    m: usize,
    radius: u32,
    diameter: u32,
    radius_stretch: Rational,
    exact: Option<Rational>,
    radius_ms: f64,
    exact_ms: f64,
}

fn measure(g: &Graph, delta: u32, budget: u64) -> Result<Row, CliError> {
    let metrics = g.distance_matrix().metrics();
    let start = Instant::now();
    let lab = radius_label(g, delta, None)?;
    let radius_stretch = evaluate_stretch(g, &lab).stretch;
    let radius_ms = start.elapsed().as_secs_f64() * 1e3;
    let start = Instant::now();
    let exact = match optimize(g, delta, budget) {
        Ok(opt) => Some(opt.alpha),
        Err(SearchError::BudgetExceeded { .. }) => None,
        Err(e) => return Err(e.into()),
    };
    let exact_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(Row {
        n: g.n(),
        m: g.m(),
        radius: metrics.radius,
        diameter: metrics.diameter,
        radius_stretch,
        exact,
        radius_ms,
        exact_ms,
    })
}

pub(crate) fn bench(mut ctx: Ctx, args: &BenchArgs) -> Result<Done, CliError> {
    if args.min_n == 0 || args.min_n > args.max_n {
        return Err(usage("need 1 ≤ --min-n ≤ --max-n"));
    }
    if args.delta == 0 {
        return Err(usage("--delta must be at least 1"));
    }
    let model = match args.model {
        BenchModel::Tree => Model::Tree,
        BenchModel::Gnp => Model::Gnp { p: args.p },
    };
    let seed = ctx.opts.seed;
    let mut rng = rng_from_seed(seed);
    let mut suite = Vec::new();
    for n in args.min_n..=args.max_n {
        for _ in 0..args.count {
            suite.push(generate(model, n, &mut rng)?);
        }
    }
    let budget = ctx.opts.budget;
    let rows: Vec<Row> = ctx
        .timings
        .time("suite", || suite.par_iter().map(|g| measure(g, args.delta, budget)).collect::<Result<_, _>>())?;

    let timed = ctx.opts.timings;
    let mut csv = String::from(
        "index,n,m,delta,rad,diam,radius_stretch_num,radius_stretch_den,exact_stretch_num,exact_stretch_den,bound_num,bound_den",
    );
    if timed {
        csv.push_str(",radius_ms,exact_ms");
    }
    csv.push('\n');
    let mut worst_gap: Option<Rational> = None;
    let mut within = true;
    for (i, r) in rows.iter().enumerate() {
        let bound = BoundCertificate::closed_form(r.radius, r.diameter, args.delta);
        within &= r.radius_stretch <= bound;
        let (en, ed) = match r.exact {
            Some(e) => (e.numer().to_string(), e.denom().to_string()),
            None => (String::new(), String::new()),
        };
        if let Some(e) = r.exact {
            let gap = r.radius_stretch / e;
            worst_gap = Some(worst_gap.map_or(gap, |w| w.max(gap)));
        }
        write!(
            csv,
            "{i},{},{},{},{},{},{},{},{en},{ed},{},{}",
            r.n,
            r.m,
            args.delta,
            r.radius,
            r.diameter,
            r.radius_stretch.numer(),
            r.radius_stretch.denom(),
            bound.numer(),
            bound.denom()
        )
        .unwrap();
        if timed {
            write!(csv, ",{:.3},{:.3}", r.radius_ms, r.exact_ms).unwrap();
        }
        csv.push('\n');
    }

    match ctx.write_output(&csv)? {
        None => Ok((EXIT_OK, csv)),
        Some(path) => {
            let result = json!({
                "csv": path,
                "instances": rows.len(),
                "solved_exactly": rows.iter().filter(|r| r.exact.is_some()).count(),
                "all_within_bound": within,
                "worst_ratio_to_optimum": worst_gap.map(RationalJson::from),
            });
            ctx.emit(EXIT_OK, None, result, Some(seed))
        }
    }
}
