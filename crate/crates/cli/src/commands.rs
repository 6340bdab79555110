use std::fs::File;
use std::io::BufReader;
use std::path::Path;

use hypertree::analytic::{alpha, curve_table, threshold};
use hypertree::binom::{binom, binom_checked};
use hypertree::hypertree::{
    betti_top, bound_evaluators, certify, cone_extend, cone_hypertree, coshadow, coshadow_lower_bound,
    enumerate_hypertrees, peel_collapse,
};
use hypertree::linalg::{is_prime_u64, rank_mod_p, rank_verified, smith_normal_form};
use hypertree::local_limit::{neighborhood_census, population_dynamics, solve_ab, expected_x_formula};
use hypertree::random::{
    chain_uniformity, coshadow_bound_check, curve_experiment, greedy_collapsible_process, growth_process,
    hypertree_probability, one_out_homology, peel_confluence, sample_1out_eps, sample_y_m, sample_y_p,
    simplex_boundary_count, substream,
};
use hypertree::{build_boundary_matrix, read_complex, Error, Result, SimplicialComplex};
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::report::{fmt12, Report, Table};
use crate::Command;

/// Exhaustive enumeration backs the exact probability only below this many subsets.
const EXACT_PROBABILITY_SUBSETS: u128 = 100_000;

fn params(args: &impl Serialize) -> Map<String, Value> {
    match serde_json::to_value(args).expect("arguments serialize") {
        Value::Object(map) => map.into_iter().filter(|(_, v)| !v.is_null()).collect(),
        _ => Map::new(),
    }
}

fn load(path: &Path) -> Result<SimplicialComplex> {
    let file = File::open(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    read_complex(BufReader::new(file))
}

fn faces(x: &SimplicialComplex) -> Vec<Vec<u32>> {
    x.faces().map(|f| f.vertices().to_vec()).collect()
}

fn require<T>(value: Option<T>, flag: &str) -> Result<T> {
    value.ok_or_else(|| Error::Validation(format!("--{flag} is required here")))
}

fn default_curve_grid() -> Vec<f64> {
    (1..=40).map(|i| i as f64 * 0.25).collect()
}

pub fn run(command: Command) -> Result<Report> {
    match command {
        Command::Certify(a) => {
            let x = load(&a.input)?;
            let mut r = Report::new(params(&a), None);
            r.put("n", x.n()).put("d", x.d()).merge(certify(&x));
            Ok(r)
        }
        Command::Rank(a) => {
            let x = load(&a.input)?;
            let m = build_boundary_matrix(&x);
            let mut r = Report::new(params(&a), None);
            r.merge(rank_verified(&m));
            if let Some(p) = a.p {
                if !is_prime_u64(p) {
                    return Err(Error::Validation(format!("{p} is not prime")));
                }
                r.put("rank_mod_p", rank_mod_p(&m, p).rank);
            }
            r.put("columns", m.cols()).put("rows", m.rows());
            Ok(r)
        }
        Command::Snf(a) => {
            let x = load(&a.input)?;
            let snf = smith_normal_form(&build_boundary_matrix(&x));
            let mut r = Report::new(params(&a), None);
            r.put("rank", snf.rank()).merge(&snf);
            Ok(r)
        }
        Command::Coshadow(a) => {
            let x = load(&a.input)?;
            let cs = coshadow(&x)?;
            let mut r = Report::new(params(&a), None);
            r.put("faces_in", x.len())
                .put("size", cs.len())
                .put("lower_bound", coshadow_lower_bound(x.n(), x.d(), x.len() as u64)?)
                .put("faces", faces(&cs));
            r.complex = Some(cs);
            Ok(r)
        }
        Command::Collapse(a) => {
            if let Some(path) = &a.input {
                let x = load(path)?;
                let res = peel_collapse(&x, None);
                let mut r = Report::new(params(&a), None);
                let removals: Vec<[Vec<u32>; 2]> = res
                    .removal_faces()
                    .into_iter()
                    .map(|(t, s)| [t.vertices().to_vec(), s.vertices().to_vec()])
                    .collect();
                r.put("collapsible", res.collapsible)
                    .put("removed", removals.len())
                    .put("core_size", res.core.len())
                    .put("removals", removals)
                    .put("core", faces(&res.core));
                r.complex = Some(res.core);
                return Ok(r);
            }
            let (n, d, p) = (require(a.n, "n")?, require(a.d, "d")?, require(a.p, "p")?);
            let seed = require(a.seed, "seed")?;
            let res = peel_confluence(n, d, p, a.trials, a.steps, seed)?;
            let mut r = Report::new(params(&a), Some(seed));
            r.merge(res);
            Ok(r)
        }
        Command::Enumerate(a) => {
            let s = enumerate_hypertrees(a.n, a.d, false)?;
            let mut r = Report::new(params(&a), None);
            r.put("n", s.n).put("d", s.d).put("count", s.hypertree_count);
            Ok(r)
        }
        Command::KalaiSum(a) => {
            let s = enumerate_hypertrees(a.n, a.d, true)?;
            let sum = s.kalai_sum.clone().expect("torsion was requested");
            let mut r = Report::new(params(&a), None);
            r.merge(&s).put("match", sum == s.expected);
            Ok(r)
        }
        Command::Cone(a) => {
            let x = match a.inputs.as_slice() {
                [] => cone_hypertree(require(a.n, "n")?, require(a.d, "d")?)?,
                [t, s] => cone_extend(&load(t)?, &load(s)?)?,
                _ => return Err(Error::Validation("give --in twice (T, then S) or not at all".into())),
            };
            let cert = certify(&x);
            let mut r = Report::new(params(&a), None);
            r.put("n", x.n())
                .put("d", x.d())
                .put("is_hypertree", cert.is_hypertree)
                .put("collapsible", peel_collapse(&x, None).collapsible)
                .put("faces", faces(&x));
            r.complex = Some(x);
            Ok(r)
        }
        Command::Bounds(a) => {
            let alpha_value = if a.d >= 2 { Some(alpha::<f64>(a.d)?.alpha_y_form) } else { None };
            let mut r = Report::new(params(&a), None);
            r.merge(bound_evaluators(a.n, a.d, alpha_value)?).put("alpha", alpha_value);
            Ok(r)
        }
        Command::Constants(a) => {
            let th = threshold::<f64>(a.d)?;
            let al = alpha::<f64>(a.d)?;
            let mut r = Report::new(params(&a), None);
            r.put("d", a.d)
                .put("t_star", th.t_star)
                .put("c_star", th.c_star)
                .put("alpha", al.alpha_y_form)
                .put("alpha_alt", al.alpha_x_form)
                .put(
                    "tolerances",
                    json!({
                        "root_residual": th.root_residual(),
                        "c_residual": th.c_residual(),
                        "alpha_forms_difference": (al.alpha_x_form - al.alpha_y_form).abs(),
                        "alpha_quadrature_error": al.y_error,
                        "alpha_alt_quadrature_error": al.x_error,
                    }),
                );
            Ok(r)
        }
        Command::Alpha(a) => {
            let al = alpha::<f64>(a.d)?;
            let mut r = Report::new(params(&a), None);
            r.put("d", a.d)
                .put("alpha", al.alpha_y_form)
                .put("alpha_alt", al.alpha_x_form)
                .put("difference", (al.alpha_x_form - al.alpha_y_form).abs())
                .put("per_face_constant", al.per_face_constant())
                .put("quadrature_error", al.y_error)
                .put("alt_quadrature_error", al.x_error);
            Ok(r)
        }
        Command::Curve(a) => {
            let cs = if a.c.is_empty() { default_curve_grid() } else { a.c.clone() };
            let rows = curve_table::<f64>(a.d, &cs)?;
            let mut r = Report::new(params(&a), None);
            r.table = Some(Table {
                header: ["c", "t_c", "sbar", "r"].map(String::from).to_vec(),
                rows: rows
                    .iter()
                    .map(|p| vec![fmt12(p.c), p.t_c.map(fmt12).unwrap_or_default(), fmt12(p.sbar), fmt12(p.r)])
                    .collect(),
            });
            r.put("d", a.d).put("points", rows);
            Ok(r)
        }
        Command::Grow(a) => {
            if let Some(trials) = a.trials {
                let mut r = Report::new(params(&a), Some(a.seed));
                r.merge(coshadow_bound_check(a.n, a.d, trials, a.seed)?);
                return Ok(r);
            }
            let trace = growth_process(a.n, a.d, &mut substream(a.seed, "grow", 0))?;
            let mut r = Report::new(params(&a), Some(a.seed));
            r.put("is_hypertree", certify(&trace.complex).is_hypertree)
                .put("mean_log_coshadow", trace.mean_log_coshadow())
                .merge(&trace)
                .put("faces", faces(&trace.complex));
            r.complex = Some(trace.complex);
            Ok(r)
        }
        Command::SampleLm(a) => {
            let mut rng = substream(a.seed, "sample-lm", 0);
            let x = match (a.p, a.m, a.c) {
                (Some(p), None, None) => sample_y_p(a.n, a.d, p, &mut rng)?,
                (None, Some(m), None) => sample_y_m(a.n, a.d, m, &mut rng)?,
                (None, None, Some(c)) => sample_y_p(a.n, a.d, c / a.n as f64, &mut rng)?,
                _ => return Err(Error::Validation("give exactly one of --p, --m, --c".into())),
            };
            let mut r = Report::new(params(&a), Some(a.seed));
            r.put("face_count", x.len()).put("faces", faces(&x));
            r.complex = Some(x);
            Ok(r)
        }
        Command::Sample1out(a) => {
            if let Some(trials) = a.trials {
                let mut r = Report::new(params(&a), Some(a.seed));
                r.merge(one_out_homology(a.n, a.d, a.eps, trials, a.seed)?);
                return Ok(r);
            }
            let s = sample_1out_eps(a.n, a.d, a.eps, &mut substream(a.seed, "sample-1out", 0))?;
            let mut r = Report::new(params(&a), Some(a.seed));
            r.put("face_count", s.complex.len())
                .put("duplicates", s.duplicates)
                .put("multiply_selected", s.multiply_selected)
                .put("betti_top", betti_top(&s.complex))
                .put("boundary_count", simplex_boundary_count(&s.complex))
                .put("faces", faces(&s.complex));
            r.complex = Some(s.complex);
            Ok(r)
        }
        Command::Chain(a) => {
            let mut r = Report::new(params(&a), Some(a.seed));
            r.merge(chain_uniformity(a.n, a.d, a.steps, a.thin, a.seed)?);
            Ok(r)
        }
        Command::GreedyCollapsible(a) => {
            let g = greedy_collapsible_process(a.n, a.d, &mut substream(a.seed, "greedy", 0))?;
            let mut r = Report::new(params(&a), Some(a.seed));
            r.merge(&g)
                .put("hypertree_size", g.complex.hypertree_size())
                .put("is_hypertree", certify(&g.complex).is_hypertree)
                .put("collapsible", peel_collapse(&g.complex, None).collapsible)
                .put("faces", faces(&g.complex));
            r.complex = Some(g.complex);
            Ok(r)
        }
        Command::HypertreeProb(a) => {
            let est = hypertree_probability(a.n, a.d, a.trials, a.seed)?;
            let mut r = Report::new(params(&a), Some(a.seed));
            r.merge(est);
            let total = binom(a.n as u64, a.d as u64 + 1);
            let k = binom(a.n as u64 - 1, a.d as u64);
            match binom_checked(total, k) {
                Some(subsets) if subsets <= EXACT_PROBABILITY_SUBSETS => {
                    let count = enumerate_hypertrees(a.n, a.d, false)?.hypertree_count;
                    r.put("exact", count as f64 / subsets as f64)
                        .put("exact_count", count)
                        .put("subsets", subsets as u64);
                }
                _ => {
                    r.put("exact", Value::Null);
                }
            }
            Ok(r)
        }
        Command::CurveExperiment(a) => {
            let points = curve_experiment(a.n, a.d, &a.c, a.trials, a.seed)?;
            let limits = if a.d >= 2 { Some(curve_table::<f64>(a.d, &a.c)?) } else { None };
            let mut table = Table {
                header: ["n", "d", "trials", "seed", "c", "statistic", "value", "stderr"].map(String::from).to_vec(),
                rows: Vec::new(),
            };
            let base = |c: f64| vec![a.n.to_string(), a.d.to_string(), a.trials.to_string(), a.seed.to_string(), fmt12(c)];
            let mut out = Vec::new();
            for (i, p) in points.iter().enumerate() {
                let mut row = |stat: &str, value: f64, stderr: Option<f64>| {
                    let mut v = base(p.c);
                    v.extend([stat.to_string(), fmt12(value), stderr.map(fmt12).unwrap_or_default()]);
                    table.rows.push(v);
                };
                row("rank", p.rank.mean, Some(p.rank.stderr));
                row("density", p.density.mean, Some(p.density.stderr));
                let limit = limits.as_ref().map(|l| l[i]);
                if let Some(l) = limit {
                    row("rank_limit", l.r, None);
                    row("density_limit", l.sbar, None);
                }
                out.push(json!({
                    "c": p.c,
                    "rank": p.rank,
                    "density": p.density,
                    "rank_limit": limit.map(|l| l.r),
                    "density_limit": limit.map(|l| l.sbar),
                }));
            }
            let mut r = Report::new(params(&a), Some(a.seed));
            r.put("points", out);
            r.table = Some(table);
            Ok(r)
        }
        Command::Census(a) => {
            let rep = neighborhood_census(a.n, a.d, a.depth, a.trials, a.seed)?;
            let mut r = Report::new(params(&a), Some(a.seed));
            r.table = Some(Table {
                header: ["type_code", "empirical", "limit", "abs_diff"].map(String::from).to_vec(),
                rows: rep
                    .rows
                    .iter()
                    .map(|row| vec![row.code.clone(), fmt12(row.empirical), fmt12(row.limit), fmt12(row.abs_diff)])
                    .collect(),
            });
            r.merge(rep);
            Ok(r)
        }
        Command::Population(a) => {
            let res = population_dynamics(a.d, a.pool, a.steps, a.init, a.seed)?;
            let fixed: Vec<Value> = solve_ab::<f64>(a.d)?
                .into_iter()
                .map(|fp| {
                    let (r1, r2) = fp.residuals(a.d);
                    json!({
                        "a": fp.a,
                        "b": fp.b,
                        "branch": fp.branch,
                        "expected_x": expected_x_formula(fp.a, fp.b, a.d),
                        "residual": r1.max(r2),
                    })
                })
                .collect();
            let mut r = Report::new(params(&a), Some(a.seed));
            r.merge(res).put("fixed_points", fixed);
            Ok(r)
        }
        Command::BoundaryCount(a) => {
            let x = load(&a.input)?;
            let mut r = Report::new(params(&a), None);
            r.put("boundary_count", simplex_boundary_count(&x)).put("betti_top", betti_top(&x));
            Ok(r)
        }
    }
}
