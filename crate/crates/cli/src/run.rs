//! Dispatch of validated experiments and report emission.

use std::path::Path;
use std::time::Instant;

use ddl_core::curve::{
    is_generic, pencil_membership, pencil_search, standard_form, supergeneric_status, Verdict,
};
use ddl_core::exactalg::rational::to_f64;
use ddl_core::exactalg::{format_rational, rat};
use ddl_core::flow::{
    cgood_alpha_estimate, dirichlet_scan, escape_diagnostic, least_squares_slope, sample_function, siegel_average,
    vwa_scan, FlowError,
};
use ddl_core::rep::{build_rep, find_witness, verify_max_inequality, RepVector, Sl2Irrep, Sl2Module};
use ddl_core::{Matrix, MatrixCurve, Rational, TrajectoryRecord};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::config::{Experiment, ExperimentConfig, Task};
use crate::CliError;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunReport {
    pub command: String,
    pub config: ExperimentConfig,
    /// Deterministic for a given config.
    pub verdict: Value,
    pub csv_path: Option<String>,
    pub wall_time_secs: f64,
    pub exact_fallbacks: usize,
}

/// A CSV table held in memory until written.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    fn new(header: &[&str]) -> Self {
        Table { header: header.iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }

    pub fn to_csv(&self) -> Result<String, CliError> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.header).map_err(io)?;
        for row in &self.rows {
            w.write_record(row).map_err(io)?;
        }
        let bytes = w.into_inner().map_err(|e| CliError::Io(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| CliError::Io(e.to_string()))
    }
}

fn io(e: impl std::fmt::Display) -> CliError {
    CliError::Io(e.to_string())
}

pub struct Outcome {
    pub verdict: Value,
    pub table: Option<Table>,
    pub exact_fallbacks: usize,
}

fn matrix_json(m: &Matrix<Rational>) -> Value {
    json!((0..m.rows()).map(|i| m.row(i).iter().map(format_rational).collect::<Vec<_>>()).collect::<Vec<_>>())
}

fn core_err(command: &str) -> impl Fn(ddl_core::Error) -> CliError + '_ {
    move |source| CliError::Core { command: command.to_string(), source }
}

fn flow_err(command: &str) -> impl Fn(FlowError) -> CliError + '_ {
    move |e| CliError::Core { command: command.to_string(), source: e.into() }
}

fn curve_of<'a>(exp: &'a Experiment) -> &'a MatrixCurve {
    exp.curve.as_ref().expect("validated config carries a curve")
}

/// Runs the experiment without touching the filesystem.
pub fn execute(exp: &Experiment) -> Result<Outcome, CliError> {
    let command = exp.config.command.name();
    let plain = |verdict: Value| Outcome { verdict, table: None, exact_fallbacks: 0 };
    match &exp.task {
        Task::CheckGeneric => {
            let curve = curve_of(exp);
            let report = is_generic(curve);
            let certificate = supergeneric_status(curve);
            Ok(plain(json!({ "curve": curve.to_document(), "genericity": report, "supergenericity": certificate })))
        }
        Task::ReduceStandard { at } => {
            let curve = curve_of(exp);
            let res = standard_form(curve, at).map_err(|e| core_err(command)(e.into()))?;
            Ok(plain(json!({
                "base_point": format_rational(&res.base_point),
                "witnesses": res.witnesses.iter().map(format_rational).collect::<Vec<_>>(),
                "zprime": matrix_json(res.zprime.matrix()),
                "standard_curve": res.conjugated_curve.to_document(),
                "verified": res.verify_against(curve),
            })))
        }
        Task::CheckPencil { max_dim } => {
            let curve = curve_of(exp);
            let found = pencil_search(curve, *max_dim);
            let verified = found.as_ref().map(|w| pencil_membership(curve, w) == Some(w.r));
            Ok(plain(json!({
                "generic": is_generic(curve).verdict == Verdict::Generic,
                "max_dim": max_dim,
                "pencil": found,
                "verified": verified,
            })))
        }
        Task::DirichletScan { mu, s_grid, n_grid } => {
            let curve = curve_of(exp);
            let res = dirichlet_scan(curve, mu, s_grid, n_grid).map_err(flow_err(command))?;
            let mut table = Table::new(&TrajectoryRecord::CSV_HEADER);
            table.rows = res.records.iter().map(|r| r.csv_fields().to_vec()).collect();
            let per_s = n_grid.len();
            let xs: Vec<f64> = n_grid.iter().map(|n| to_f64(n).ln()).collect();
            let summary: Vec<Value> = res
                .summary
                .iter()
                .zip(res.records.chunks(per_s))
                .map(|(h, row)| {
                    let ys: Vec<f64> = row.iter().map(|r| to_f64(&r.svp_norm).ln()).collect();
                    let slope = if per_s >= 2 { Some(least_squares_slope(&xs, &ys)) } else { None };
                    json!({
                        "s": format_rational(&h.s),
                        "hit_frequency": h.hit_frequency,
                        "persistent": h.persistent,
                        "svp_slope": slope,
                    })
                })
                .collect();
            Ok(Outcome {
                verdict: json!({
                    "mu": format_rational(mu),
                    "cells": res.records.len(),
                    "hits": res.records.iter().filter(|r| r.in_k_mu).count(),
                    "per_s": summary,
                    "note": "hit frequencies over a finite N grid are empirical evidence, not a proof of recurrence",
                }),
                table: Some(table),
                exact_fallbacks: res.exact_fallbacks,
            })
        }
        Task::Siegel(spec) => {
            let curve = curve_of(exp);
            let est = siegel_average(curve, spec).map_err(flow_err(command))?;
            let mut table = Table::new(&["s", "count"]);
            table.rows = est.sample_points.iter().zip(&est.counts).map(|(s, c)| vec![format_rational(s), c.to_string()]).collect();
            Ok(Outcome {
                verdict: json!({
                    "seed": spec.seed,
                    "samples": spec.samples,
                    "N": format_rational(&spec.big_n),
                    "mean": est.mean,
                    "target_volume": est.target_volume,
                    "relative_deviation": est.relative_deviation,
                }),
                table: Some(table),
                exact_fallbacks: 0,
            })
        }
        Task::Escape { at, n_grid } => {
            let report = escape_diagnostic(curve_of(exp), at, n_grid).map_err(flow_err(command))?;
            let mut table = Table::new(&["N", "svp_norm"]);
            table.rows = report.n_grid.iter().zip(&report.svp_norms).map(|(n, v)| vec![format_rational(n), format_rational(v)]).collect();
            Ok(Outcome { verdict: serde_json::to_value(&report).map_err(io)?, table: Some(table), exact_fallbacks: 0 })
        }
        Task::Vwa { at, delta, p_bound } => {
            let curve = curve_of(exp);
            let phi = curve.eval(at).ok_or_else(|| flow_err(command)(FlowError::OutOfInterval(format_rational(at))))?;
            let hits = vwa_scan(&phi, delta, *p_bound);
            let join = |v: &[num_bigint::BigInt]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ");
            let mut table = Table::new(&["p", "q", "residual"]);
            table.rows = hits.iter().map(|h| vec![join(&h.p), join(&h.q), format_rational(&h.residual)]).collect();
            Ok(Outcome {
                verdict: json!({
                    "at": format_rational(at),
                    "phi": matrix_json(&phi),
                    "delta": format_rational(delta),
                    "p_bound": p_bound,
                    "hits": hits.len(),
                }),
                table: Some(table),
                exact_fallbacks: 0,
            })
        }
        Task::RepVerify { dims, trials, seed, degrees } => rep_verify(exp, *dims, *trials, *seed, degrees),
        Task::Cgood { function, a, b, samples, epsilons } => {
            let values = sample_function(function, a, b, *samples);
            let est = cgood_alpha_estimate(&values, epsilons).map_err(flow_err(command))?;
            let mut table = Table::new(&["eps_relative", "sublevel_fraction"]);
            table.rows = est.points.iter().map(|(e, f)| vec![e.to_string(), f.to_string()]).collect();
            Ok(Outcome {
                verdict: json!({ "function": function.to_string(), "alpha": est.alpha, "c": est.c }),
                table: Some(table),
                exact_fallbacks: 0,
            })
        }
    }
}

fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    loop {
        let r = rat(rng.gen_range(-50..=50), rng.gen_range(1..=20));
        if !r.is_zero() {
            return r;
        }
    }
}

fn rep_verify(exp: &Experiment, dims: (usize, usize), trials: usize, seed: u64, degrees: &[usize]) -> Result<Outcome, CliError> {
    let command = exp.config.command.name();
    let rep_err = |e: ddl_core::RepError| CliError::Core { command: command.into(), source: e.into() };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut table = Table::new(&["dim", "trials", "violations", "equalities", "failed_identities"]);
    let mut all_hold = true;
    for dim in dims.0..=dims.1 {
        let irrep = Sl2Irrep::with_dim(dim);
        let (mut violations, mut equalities, mut failed) = (0usize, 0usize, 0usize);
        for trial in 0..trials {
            let r = random_rational(&mut rng);
            // odd trials start from a weight vector pulled back to the equality case
            let v = if trial % 2 == 1 {
                let top = RepVector::basis(rng.gen_range(0..dim as u64)).scale(&random_rational(&mut rng));
                irrep.u_minus(&-r.recip(), &top).map_err(rep_err)?
            } else {
                let mut v = RepVector::zero();
                while v.is_zero() {
                    v.add_term(rng.gen_range(0..dim as u64), random_rational(&mut rng));
                }
                v
            };
            let verdict = verify_max_inequality(&irrep, &v, &r).map_err(rep_err)?;
            violations += usize::from(!verdict.holds);
            if verdict.equality {
                equalities += 1;
                failed += usize::from(!verdict.passed());
            }
        }
        all_hold &= violations == 0 && failed == 0;
        table.rows.push(vec![dim.to_string(), trials.to_string(), violations.to_string(), equalities.to_string(), failed.to_string()]);
    }
    let mut verdict = json!({ "seed": seed, "inequality_holds": all_hold, "dims": [dims.0, dims.1], "trials": trials });
    if let Some(curve) = &exp.curve {
        let rep = build_rep(curve.m(), curve.n(), degrees).map_err(rep_err)?;
        let keys: Vec<u64> = rep.basis().collect();
        let grid = curve.grid(16);
        let mut found = 0usize;
        for _ in 0..trials {
            let mut v = RepVector::zero();
            while v.is_zero() {
                for _ in 0..rng.gen_range(1..=4) {
                    v.add_term(keys[rng.gen_range(0..keys.len())], random_rational(&mut rng));
                }
            }
            found += usize::from(find_witness(curve, &rep, &v, &grid).map_err(rep_err)?.is_some());
        }
        verdict["witnesses"] = json!({
            "degrees": degrees,
            "generic": is_generic(curve).verdict == Verdict::Generic,
            "found": found,
            "trials": trials,
        });
    }
    Ok(Outcome { verdict, table: Some(table), exact_fallbacks: 0 })
}

/// Runs the experiment, writes the configured CSV and JSON files and returns the report.
pub fn run(exp: &Experiment) -> Result<RunReport, CliError> {
    let start = Instant::now();
    let outcome = execute(exp)?;
    let csv_path = match (&exp.config.output.csv, &outcome.table) {
        (Some(path), Some(table)) => {
            write_file(path, &table.to_csv()?)?;
            Some(path.display().to_string())
        }
        _ => None,
    };
    let report = RunReport {
        command: exp.config.command.name().to_string(),
        config: exp.config.clone(),
        verdict: outcome.verdict,
        csv_path,
        wall_time_secs: start.elapsed().as_secs_f64(),
        exact_fallbacks: outcome.exact_fallbacks,
    };
    if let Some(path) = &exp.config.output.json {
        write_file(path, &serde_json::to_string_pretty(&report).map_err(io)?)?;
    }
    Ok(report)
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))?;
    }
    std::fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}
