//! Acceptance gate: one PASS/FAIL line per criterion. Seeded by `DDL_SEED`.

use std::collections::HashSet;
use std::time::{Duration, Instant};

use ddl_core::catalog;
use ddl_core::curve::{is_generic, is_generic_at, pencil_membership, pencil_search, standard_form, Verdict};
use ddl_core::exactalg::{int, rat};
use ddl_core::flow::{
    cgood_alpha_estimate, dirichlet_check, escape_diagnostic, in_k_mu, lattice_for_matrix, power_grid,
    sample_function, siegel_average, SiegelSpec, DEFAULT_EPSILONS,
};
use ddl_core::rep::{
    admissible, build_rep, find_witness, verify_max_inequality, AdmissibleQuery, RepVector, Sl2Irrep, Sl2Module,
};
use ddl_core::{Matrix, MatrixCurve, Poly, RatFunc, Rational};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const DEFAULT_SEED: u64 = 20_240_917;

struct Outcome {
    pass: bool,
    detail: String,
}

fn seed() -> u64 {
    std::env::var("DDL_SEED").ok().and_then(|s| s.parse().ok()).unwrap_or(DEFAULT_SEED)
}

fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    rat(rng.gen_range(-200..=200), rng.gen_range(1..=60))
}

fn random_matrix(rng: &mut ChaCha8Rng, m: usize, n: usize) -> Matrix<Rational> {
    Matrix::new(m, n, (0..m * n).map(|_| random_rational(rng)).collect()).unwrap()
}

fn pow(x: &Rational, e: i64) -> Rational {
    if e >= 0 {
        num_traits::pow(x.clone(), e as usize)
    } else {
        num_traits::pow(x.recip(), (-e) as usize)
    }
}

/// Direct check of `0 < |p| <= mu N^m`, `|Phi p - q| <= mu N^-n`.
fn approximates(phi: &Matrix<Rational>, p: &[BigInt], q: &[BigInt], big_n: &Rational, mu: &Rational) -> bool {
    let (m, n) = (phi.rows() as i64, phi.cols() as i64);
    if p.iter().all(Zero::is_zero) {
        return false;
    }
    let p_ok = p.iter().all(|x| Rational::from_integer(x.abs()) <= mu * pow(big_n, m));
    let q_ok = (0..phi.rows()).all(|i| {
        let row: Rational = (0..phi.cols()).map(|j| phi.get(i, j) * Rational::from_integer(p[j].clone())).sum();
        let err = row - Rational::from_integer(q[i].clone());
        err.abs() <= mu * pow(big_n, -n)
    });
    p_ok && q_ok
}

fn dirichlet_guarantee(rng: &mut ChaCha8Rng) -> Outcome {
    let shapes = [(1, 1), (1, 2), (2, 1), (2, 2)];
    let mut failures = 0;
    for _ in 0..500 {
        let (m, n) = shapes[rng.gen_range(0..shapes.len())];
        let phi = random_matrix(rng, m, n);
        let big_n = pow(&int(2), rng.gen_range(0..=10));
        match dirichlet_check(&phi, &big_n, &Rational::one()) {
            Ok(Some(sol)) if approximates(&phi, &sol.p, &sol.q, &big_n, &Rational::one()) => {}
            _ => failures += 1,
        }
    }
    Outcome { pass: failures == 0, detail: format!("500 instances, {failures} failures") }
}

fn duality(rng: &mut ChaCha8Rng) -> Outcome {
    let shapes = [(1, 1), (1, 2), (2, 1), (2, 2)];
    let mus = [rat(1, 4), rat(1, 2), rat(3, 4)];
    let mut discrepancies = 0;
    let mut hits = 0;
    for _ in 0..100 {
        let (m, n) = shapes[rng.gen_range(0..shapes.len())];
        let phi = random_matrix(rng, m, n);
        let big_n = pow(&int(2), rng.gen_range(0..=8));
        let mu = &mus[rng.gen_range(0..mus.len())];
        let found = dirichlet_check(&phi, &big_n, mu).unwrap();
        let (inside, _) = in_k_mu(&lattice_for_matrix(&phi, &big_n).unwrap(), mu).unwrap();
        let valid = found.as_ref().is_none_or(|s| approximates(&phi, &s.p, &s.q, &big_n, mu));
        if found.is_some() == inside || !valid {
            discrepancies += 1;
        }
        hits += usize::from(inside);
    }
    Outcome { pass: discrepancies == 0, detail: format!("100 instances, {hits} in K_mu, {discrepancies} discrepancies") }
}

fn max_weight_lemma(rng: &mut ChaCha8Rng) -> Outcome {
    let mut violations = 0;
    let mut equalities = 0;
    let mut failed_identities = 0;
    for dim in 1..=8 {
        let irrep = Sl2Irrep::with_dim(dim);
        for trial in 0..1000 {
            let r = loop {
                let r = random_rational(rng);
                if !r.is_zero() {
                    break r;
                }
            };
            // every other trial is built to land in the equality case
            let v = if trial % 2 == 0 {
                random_vector(rng, (0..dim as u64).collect())
            } else {
                let top = RepVector::basis(rng.gen_range(0..dim as u64)).scale(&nonzero(rng));
                irrep.u_minus(&-r.recip(), &top).unwrap()
            };
            let verdict = verify_max_inequality(&irrep, &v, &r).unwrap();
            violations += usize::from(!verdict.holds);
            if verdict.equality {
                equalities += 1;
                failed_identities += usize::from(!verdict.passed());
            }
        }
    }
    Outcome {
        pass: violations == 0 && failed_identities == 0 && equalities > 0,
        detail: format!("8000 trials, {violations} violations, {equalities} equality cases, {failed_identities} failed identity checks"),
    }
}

fn nonzero(rng: &mut ChaCha8Rng) -> Rational {
    loop {
        let c = random_rational(rng);
        if !c.is_zero() {
            return c;
        }
    }
}

fn random_vector(rng: &mut ChaCha8Rng, keys: Vec<u64>) -> RepVector {
    let size = rng.gen_range(1..=keys.len().min(4));
    let mut v = RepVector::zero();
    for _ in 0..size {
        v.add_term(keys[rng.gen_range(0..keys.len())], nonzero(rng));
    }
    if v.is_zero() {
        v = RepVector::basis(keys[0]);
    }
    v
}

fn witness_suite(rng: &mut ChaCha8Rng) -> Outcome {
    let mut found = 0;
    let mut total = 0;
    let mut curves = Vec::new();
    for (m, n) in [(1, 2), (2, 2)] {
        for (name, curve) in catalog::all() {
            if (curve.m(), curve.n()) == (m, n) && is_generic(&curve).verdict == Verdict::Generic {
                curves.push(name.clone());
                for degree in [1, 2] {
                    let rep = build_rep(m, n, &[degree]).unwrap();
                    let keys: Vec<u64> = rep.basis().collect();
                    let grid = curve.grid(16);
                    for _ in 0..100 {
                        let v = random_vector(rng, keys.clone());
                        total += 1;
                        found += usize::from(find_witness(&curve, &rep, &v, &grid).unwrap().is_some());
                    }
                }
            }
        }
    }
    Outcome {
        pass: total > 0 && found == total,
        detail: format!("curves {curves:?}, witness rate {found}/{total}"),
    }
}

fn random_curve(rng: &mut ChaCha8Rng, m: usize, n: usize) -> MatrixCurve {
    let entries = (0..m * n)
        .map(|_| {
            let coeffs: Vec<i64> = (0..=3).map(|_| rng.gen_range(-3..=3)).collect();
            RatFunc::from(Poly::from_ints(&coeffs))
        })
        .collect();
    MatrixCurve::new(Matrix::new(m, n, entries).unwrap(), int(0), int(1)).unwrap()
}

fn standard_form_suite(rng: &mut ChaCha8Rng) -> Outcome {
    let mut verified = 0;
    let mut runs = 0;
    for (m, k) in [(1, 2), (1, 3), (2, 2)] {
        let mut accepted = 0;
        while accepted < 20 {
            let curve = random_curve(rng, m, m * k);
            if is_generic(&curve).verdict != Verdict::Generic {
                continue;
            }
            let Some(s0) = curve.grid(8).into_iter().find(|s| is_generic_at(&curve, s)) else { continue };
            accepted += 1;
            runs += 1;
            if standard_form(&curve, &s0).is_ok_and(|res| res.verify_against(&curve)) {
                verified += 1;
            }
        }
    }
    Outcome { pass: verified == runs, detail: format!("{verified}/{runs} standard forms verified") }
}

fn pencil_suite() -> Outcome {
    let trapped = catalog::pencil();
    let found = pencil_search(&trapped, trapped.m() + trapped.n());
    let trapped_ok = found
        .as_ref()
        .is_some_and(|w| w.dim() == 3 && w.r == 1 && pencil_membership(&trapped, w) == Some(1));
    let mut spurious = Vec::new();
    for (name, curve) in catalog::all() {
        if is_generic(&curve).verdict == Verdict::Generic && pencil_search(&curve, curve.m() + curve.n()).is_some() {
            spurious.push(name);
        }
    }
    let shape = found.map(|w| format!("dim W = {}, r = {}", w.dim(), w.r)).unwrap_or_else(|| "none".into());
    Outcome {
        pass: trapped_ok && spurious.is_empty(),
        detail: format!("pencil curve: {shape}; generic curves with a pencil: {spurious:?}"),
    }
}

fn siegel_suite() -> Outcome {
    let curve = catalog::parabola().with_interval(int(1), int(2)).unwrap();
    let spec = SiegelSpec { r1: rat(1, 2), r2: rat(3, 2), big_n: int(4096), samples: 200, seed: seed() };
    let est = siegel_average(&curve, &spec).unwrap();
    Outcome {
        pass: est.relative_deviation <= 0.15,
        detail: format!(
            "mean {:.3} vs volume {}, deviation {:.1}% (seed {})",
            est.mean,
            est.target_volume,
            100.0 * est.relative_deviation,
            spec.seed
        ),
    }
}

fn escape_suite() -> Outcome {
    let grid = power_grid(&int(2), 4, 16);
    let third = rat(1, 3);
    let flat = escape_diagnostic(&catalog::escape(), &third, &grid).unwrap();
    let slope_ok = (flat.slope + 1.0).abs() <= 0.05;
    let parabola = escape_diagnostic(&catalog::parabola(), &third, &grid).unwrap();
    let floor = rat(1, 64);
    let min = parabola.svp_norms.iter().min().unwrap();
    let bounded = parabola.svp_norms.iter().all(|x| *x >= floor);
    Outcome {
        pass: slope_ok && bounded,
        detail: format!(
            "(s,0) slope {:.4} [{}]; (s,s^2) min svp {} vs 1/64 [{}]",
            flat.slope,
            if slope_ok { "ok" } else { "off" },
            ddl_core::exactalg::format_rational(min),
            if bounded { "ok" } else { "below" }
        ),
    }
}

fn cgood_suite() -> Outcome {
    let square = Poly::from_ints(&[0, 0, 1]);
    let samples = sample_function(&square, &int(0), &int(1), 10_000);
    let est = cgood_alpha_estimate(&samples, &DEFAULT_EPSILONS).unwrap();
    Outcome { pass: (est.alpha - 0.5).abs() <= 0.05, detail: format!("alpha {:.4}", est.alpha) }
}

fn admissible_suite() -> Outcome {
    let mut mismatches = 0;
    let mut checked = 0;
    for k in 1..=4usize {
        // delta_i = -c_i - sum(c), so |delta_i| <= 10 forces sum(c) <= 10
        let mut reachable = HashSet::new();
        let mut c = vec![0i64; k];
        loop {
            let total: i64 = c.iter().sum();
            if total <= 10 {
                let delta: Vec<i64> = c.iter().map(|x| -x - total).collect();
                reachable.insert(delta);
            }
            let Some(i) = (0..k).find(|&i| c[i] < 10) else { break };
            c[i] += 1;
            c[..i].iter_mut().for_each(|x| *x = 0);
        }
        let mut delta = vec![-10i64; k];
        loop {
            checked += 1;
            let closed = admissible(&AdmissibleQuery { k, delta: delta.clone() }).is_some();
            if closed != reachable.contains(&delta) {
                mismatches += 1;
            }
            let Some(i) = (0..k).find(|&i| delta[i] < 10) else { break };
            delta[i] += 1;
            delta[..i].iter_mut().for_each(|x| *x = -10);
        }
    }
    Outcome { pass: mismatches == 0, detail: format!("{checked} weight vectors, {mismatches} mismatches") }
}

fn timed(label: &str, budget: Option<Duration>, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let outcome = f();
    let elapsed = start.elapsed();
    let in_time = budget.is_none_or(|b| elapsed <= b);
    let pass = outcome.pass && in_time;
    let budget_note = budget.map(|b| format!(", budget {}s", b.as_secs())).unwrap_or_default();
    println!(
        "{} {label}: {} ({:.2}s{budget_note})",
        if pass { "PASS" } else { "FAIL" },
        outcome.detail,
        elapsed.as_secs_f64()
    );
    pass
}

fn main() {
    let seed = seed();
    println!("acceptance suite, seed {seed}");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let results = [
        timed("1 Dirichlet guarantee at mu = 1", Some(Duration::from_secs(120)), || dirichlet_guarantee(&mut rng)),
        timed("2 K_mu / Dirichlet duality", None, || duality(&mut rng)),
        timed("3 max-weight inequality on sl2 irreps", Some(Duration::from_secs(60)), || max_weight_lemma(&mut rng)),
        timed("4 witness outside V^-(A)", None, || witness_suite(&mut rng)),
        timed("5 standard-form reduction", None, || standard_form_suite(&mut rng)),
        timed("6 pencil detection", None, pencil_suite),
        timed("7 Siegel average along (s, s^2)", Some(Duration::from_secs(600)), siegel_suite),
        timed("8 escape contrast at s = 1/3", None, escape_suite),
        timed("9 (C, alpha)-good exponent of s^2", None, cgood_suite),
        timed("10 admissible closed form vs brute force", None, admissible_suite),
    ];
    let failed = results.iter().filter(|p| !**p).count();
    println!("{} of {} criteria passed", results.len() - failed, results.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
