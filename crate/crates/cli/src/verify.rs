//! The end-to-end verification suite behind `torustop verify`.
//!
//! Seven criteria, each timed against a fixed budget and reduced to a
//! single pass/fail plus a few deterministic detail lines. Everything is
//! driven by one seed so the emitted JSON is byte-stable.

use std::time::Instant;

use num::complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use torustop_core::alexander::{homology, novikov_betti, AlexanderData};
use torustop_core::arrangements::{
    bounded_regions, complement_euler, generic_lines, AffineForm, Arrangement,
};
use torustop_core::complexes::{circle, fox_complex, tensor, torus_skeleton, CWPresentation};
use torustop_core::critical::{
    count_critical, critical_system, solve, CriticalReport, MasterProblem, SolveConfig,
};
use torustop_core::laurent::LaurentPoly;
use torustop_core::localsys::{generic_vanishing_scan, ScanConfig};
use torustop_core::mpoly::MPoly;
use torustop_core::{Rat, Result};

use crate::report::{critical_value, scan_value, Envelope};

/// Allowed distance to the closed-form critical point of a line section.
pub const CLOSED_FORM_TOL: f64 = 1e-8;
/// Allowed drift between the solution sets for `u` and `3u`.
pub const SCALING_TOL: f64 = 1e-6;

pub struct CriterionResult {
    pub index: usize,
    pub name: &'static str,
    pub passed: bool,
    pub budget: Option<f64>,
    pub elapsed: f64,
    pub details: Vec<String>,
}

pub struct VerifyOutcome {
    pub results: Vec<CriterionResult>,
    pub passed: bool,
}

impl VerifyOutcome {
    /// Report payload; timings stay out so repeated runs are identical.
    pub fn to_value(&self) -> Value {
        json!({
            "passed": self.passed,
            "criteria": self
                .results
                .iter()
                .map(|r| {
                    json!({
                        "index": r.index,
                        "name": r.name,
                        "passed": r.passed,
                        "details": r.details,
                    })
                })
                .collect::<Vec<_>>(),
        })
    }
}

fn finish(
    index: usize,
    name: &'static str,
    budget: Option<f64>,
    started: Instant,
    body: Result<(bool, Vec<String>)>,
) -> CriterionResult {
    let elapsed = started.elapsed().as_secs_f64();
    let (mut passed, mut details) = match body {
        Ok(x) => x,
        Err(e) => (false, vec![format!("error: {e}")]),
    };
    if let Some(b) = budget {
        if elapsed > b {
            passed = false;
            details.push(format!("exceeded the {b:.0} s budget"));
        }
    }
    CriterionResult { index, name, passed, budget, elapsed, details }
}

fn nonzero(rng: &mut ChaCha8Rng, bound: i64) -> i64 {
    loop {
        let v = rng.random_range(-bound..=bound);
        if v != 0 {
            return v;
        }
    }
}

fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let mut acc = 1usize;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

fn criterion1(seed: u64, pool: &mut Vec<AlexanderData>) -> Result<(bool, Vec<String>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(1));
    let mut bad = Vec::new();
    let mut checked = 0usize;
    for k in 1..=6usize {
        for n in 1..=k.min(3) {
            for _ in 0..5 {
                let u: Vec<i64> = (0..k).map(|_| nonzero(&mut rng, 5)).collect();
                let c = torus_skeleton(k, n, &u)?;
                let data = homology(&c)?;
                let b = novikov_betti(&data);
                let middle = binom(k - 1, n);
                let sign = if n % 2 == 0 { 1 } else { -1 };
                let off_middle_ok = b.iter().enumerate().all(|(i, bi)| i == n || *bi == 0);
                let middle_ok = b[n] == middle && (b[n] as i64) == sign * data.euler;
                if !(off_middle_ok && middle_ok) {
                    bad.push(format!("k={k} n={n} u={u:?}: b={b:?}, euler={}", data.euler));
                }
                checked += 1;
                pool.push(data);
            }
        }
    }
    let mut details =
        vec![format!("{checked} skeletons: ranks vanish off degree n and hit C(k-1,n) at n")];
    details.extend(bad.iter().take(5).cloned());
    Ok((bad.is_empty(), details))
}

fn criterion2(pool: &[AlexanderData]) -> Result<(bool, Vec<String>)> {
    let mut datasets: Vec<AlexanderData> = Vec::new();
    let torus = CWPresentation::new(vec!["a".into(), "b".into()], &["a b a^-1 b^-1"], vec![1, 1])?;
    datasets.push(homology(&fox_complex(&torus, "torus")?)?);
    let skew = CWPresentation::new(vec!["a".into(), "b".into()], &["a b a^-1 b^-1"], vec![1, 0])?;
    datasets.push(homology(&fox_complex(&skew, "torus-degenerate")?)?);
    let wedge = CWPresentation::new(vec!["a".into(), "b".into()], &[], vec![1, 1])?;
    datasets.push(homology(&fox_complex(&wedge, "wedge")?)?);

    let mut factors = 0usize;
    let mut bad = Vec::new();
    for data in pool.iter().chain(datasets.iter()) {
        for deg in &data.degrees {
            for f in &deg.torsion {
                factors += 1;
                if !f.is_product_of_cyclotomics() {
                    bad.push(format!("{}: degree {} factor {}", data.label, deg.degree, f));
                }
            }
        }
    }
    let counterexample = LaurentPoly::from_int_coeffs(&[(2, 2), (1, -3), (0, 2)]);
    let rejected = !counterexample.is_product_of_cyclotomics();
    let mut details = vec![format!(
        "{factors} invariant factors all cyclotomic; {counterexample} correctly rejected"
    )];
    details.extend(bad.iter().take(5).cloned());
    if !rejected {
        details.push("the non-cyclotomic control polynomial was accepted".into());
    }
    Ok((bad.is_empty() && rejected, details))
}

fn criterion3(seed: u64) -> Result<(bool, Vec<String>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(3));
    let u4: Vec<i64> = (0..4).map(|_| nonzero(&mut rng, 5)).collect();
    let cases = [
        (torus_skeleton(3, 2, &[1, 1, 1])?, true),
        (torus_skeleton(4, 2, &u4)?, false),
    ];
    let mut passed = true;
    let mut details = Vec::new();
    for (c, needs_forced) in &cases {
        let cfg = ScanConfig {
            samples: 50,
            seed: seed.wrapping_add(3),
            include_torsion_roots: true,
            extras: Vec::new(),
        };
        let report = generic_vanishing_scan(c, 2, &cfg)?;
        let forced = report.samples.iter().filter(|s| s.exceptional).count();
        let ok = report.generic_ok && report.milnor_ok && (!needs_forced || forced > 0);
        passed &= ok;
        details.push(format!(
            "{}: {} samples ({} at torsion roots), generic_ok={}, milnor_ok={}",
            report.label,
            report.samples.len(),
            forced,
            report.generic_ok,
            report.milnor_ok
        ));
    }
    Ok((passed, details))
}

fn criterion4(seed: u64) -> Result<(bool, Vec<String>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(4));
    let mut bad = 0usize;
    for i in 0..100 {
        let nfactors = rng.random_range(2..=3);
        let mut acc = None;
        for _ in 0..nfactors {
            let f = match rng.random_range(0..3) {
                0 => circle(nonzero(&mut rng, 3))?,
                1 => {
                    let n = rng.random_range(1..=2);
                    let u = [nonzero(&mut rng, 3), nonzero(&mut rng, 3)];
                    torus_skeleton(2, n, &u)?
                }
                _ => {
                    let n = rng.random_range(1..=2);
                    let u = [nonzero(&mut rng, 3), nonzero(&mut rng, 3), nonzero(&mut rng, 3)];
                    torus_skeleton(3, n, &u)?
                }
            };
            acc = Some(match acc {
                None => f,
                Some(a) => tensor(&a, &f, format!("tensor-{i}"))?,
            });
        }
        let c = acc.expect("at least two factors");
        let data = homology(&c)?;
        let signed_sum: i64 = novikov_betti(&data)
            .iter()
            .enumerate()
            .map(|(d, b)| if d % 2 == 0 { *b as i64 } else { -(*b as i64) })
            .sum();
        if signed_sum != c.euler_char() || data.euler != c.euler_char() {
            bad += 1;
        }
    }
    let details =
        vec![format!("100 tensor products: alternating rank sum equals the Euler number ({bad} failures)")];
    Ok((bad == 0, details))
}

pub struct CriticalCase {
    pub label: String,
    pub problem: MasterProblem,
    pub seed: u64,
    pub report: CriticalReport,
}

fn q(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

fn boolean_arrangement() -> Result<Arrangement> {
    let forms = vec![
        AffineForm { linear: vec![q(1), q(0)], constant: q(0) },
        AffineForm { linear: vec![q(0), q(1)], constant: q(0) },
    ];
    Arrangement::new(2, forms, vec![1, 1])
}

fn central_lines() -> Result<Arrangement> {
    let forms = vec![
        AffineForm { linear: vec![q(1), q(0)], constant: q(0) },
        AffineForm { linear: vec![q(0), q(1)], constant: q(0) },
        AffineForm { linear: vec![q(1), q(-1)], constant: q(0) },
    ];
    Arrangement::new(2, forms, vec![1, 1, 1])
}

fn line_section(weights: Vec<i64>) -> MasterProblem {
    let x = MPoly::var(2, 0);
    let y = MPoly::var(2, 1);
    let f = x.add(&y).sub(&MPoly::one(2));
    MasterProblem::TorusIntersection { nvars: 2, equations: vec![f], weights }
}

fn criterion5(seed: u64, cases: &mut Vec<CriticalCase>) -> Result<(bool, Vec<String>)> {
    let cfg = SolveConfig::default();
    let mut passed = true;
    let mut details = Vec::new();

    for k in 3..=6usize {
        let a = generic_lines(k)?;
        let expected = ((k - 1) * (k - 2) / 2) as i64;
        let chi = complement_euler(&a)?;
        let regions = bounded_regions(&a)?;
        let case_seed = seed.wrapping_add(101 * k as u64);
        let problem = MasterProblem::Arrangement(a);
        let report = count_critical(&problem, None, case_seed, 4, &cfg)?;
        let sol = &report.solutions;
        let ok = report.expected == Some(expected)
            && report.matches_expected == Some(true)
            && sol.nonsingular_count == expected as usize
            && sol.points.iter().all(|p| !p.singular)
            && sol.failures.is_empty()
            && report.genericity.consistent
            && chi == expected
            && regions == expected;
        passed &= ok;
        details.push(format!(
            "{k} generic lines: {} nonsingular critical points, expected {expected}, \
             complement euler {chi}, bounded regions {regions}, {} weight trials agree",
            sol.nonsingular_count,
            report.genericity.trials.len()
        ));
        cases.push(CriticalCase {
            label: format!("generic-lines-{k}"),
            problem,
            seed: case_seed,
            report,
        });
    }

    for (idx, weights) in [vec![1i64, 1], vec![2, 1]].into_iter().enumerate() {
        let total: i64 = weights.iter().sum();
        let target = [
            Complex64::new(weights[0] as f64 / total as f64, 0.0),
            Complex64::new(weights[1] as f64 / total as f64, 0.0),
        ];
        let case_seed = seed.wrapping_add(7 + idx as u64);
        let problem = line_section(weights.clone());
        let report = count_critical(&problem, Some(1), case_seed, 2, &cfg)?;
        let points = report.solutions.nonsingular_points(report.point_vars);
        let dist = points
            .first()
            .map(|p| {
                p.iter()
                    .zip(target.iter())
                    .map(|(a, b)| (a - b).norm())
                    .fold(0.0f64, f64::max)
            })
            .unwrap_or(f64::INFINITY);
        let ok = report.matches_expected == Some(true) && points.len() == 1 && dist <= CLOSED_FORM_TOL;
        passed &= ok;
        details.push(format!(
            "line section, u={weights:?}: {} point(s), distance {dist:.2e} from the closed form",
            points.len()
        ));
        cases.push(CriticalCase {
            label: format!("line-section-{}-{}", weights[0], weights[1]),
            problem,
            seed: case_seed,
            report,
        });
    }

    for (label, a) in [("boolean", boolean_arrangement()?), ("central-lines", central_lines()?)] {
        let case_seed = seed.wrapping_add(29 + label.len() as u64);
        let problem = MasterProblem::Arrangement(a);
        let report = count_critical(&problem, None, case_seed, 4, &cfg)?;
        let ok = report.expected == Some(0)
            && report.matches_expected == Some(true)
            && report.solutions.nonsingular_count == 0;
        passed &= ok;
        details.push(format!(
            "{label}: {} critical points, expected 0",
            report.solutions.nonsingular_count
        ));
        cases.push(CriticalCase { label: label.into(), problem, seed: case_seed, report });
    }

    Ok((passed, details))
}

fn criterion6(cases: &[CriticalCase]) -> Result<(bool, Vec<String>)> {
    let cfg = SolveConfig::default();
    let mut passed = true;
    let mut details = Vec::new();
    for case in cases {
        let tripled: Vec<i64> = case.problem.weights().iter().map(|w| 3 * w).collect();
        let scaled = case.problem.with_weights(tripled);
        let system = critical_system(&scaled)?;
        let sol = solve(&system, case.seed.wrapping_add(1000), &cfg)?;
        let a = case.report.solutions.nonsingular_points(case.report.point_vars);
        let b = sol.nonsingular_points(case.report.point_vars);
        let mut worst = 0.0f64;
        let mut matched = a.len() == b.len();
        if matched {
            let mut used = vec![false; b.len()];
            for pa in &a {
                let mut best: Option<(usize, f64)> = None;
                for (j, pb) in b.iter().enumerate() {
                    if used[j] {
                        continue;
                    }
                    let d = pa
                        .iter()
                        .zip(pb.iter())
                        .map(|(x, y)| (x - y).norm())
                        .fold(0.0f64, f64::max);
                    if best.map_or(true, |(_, bd)| d < bd) {
                        best = Some((j, d));
                    }
                }
                match best {
                    Some((j, d)) if d <= SCALING_TOL => {
                        used[j] = true;
                        worst = worst.max(d);
                    }
                    _ => {
                        matched = false;
                        break;
                    }
                }
            }
        }
        passed &= matched;
        details.push(format!(
            "{}: {} vs {} points, worst drift {worst:.2e}",
            case.label,
            a.len(),
            b.len()
        ));
    }
    Ok((passed, details))
}

fn representative_json(seed: u64) -> Result<Vec<String>> {
    let mut out = Vec::new();

    let c = torus_skeleton(3, 2, &[1, 1, 1])?;
    out.push(c.to_json()?);

    let cfg = ScanConfig {
        samples: 10,
        seed,
        include_torsion_roots: true,
        extras: Vec::new(),
    };
    let scan = generic_vanishing_scan(&c, 2, &cfg)?;
    let mut env = Envelope::new("scan");
    env.seed = Some(seed);
    env.report = scan_value(&scan);
    out.push(env.to_json());

    let problem = line_section(vec![1, 1]);
    let report = count_critical(&problem, Some(1), seed, 2, &SolveConfig::default())?;
    let system = critical_system(&problem)?;
    let mut env = Envelope::new("critical");
    env.seed = Some(seed);
    env.report = critical_value(&report, &system.var_names);
    out.push(env.to_json());

    Ok(out)
}

fn criterion7(seed: u64) -> Result<(bool, Vec<String>)> {
    let first = representative_json(seed)?;
    let second = representative_json(seed)?;
    let identical = first == second;
    let details = vec![format!(
        "model, scan, and critical reports rebuilt from seed {seed}: byte-identical = {identical}"
    )];
    Ok((identical, details))
}

pub fn run_all(seed: u64) -> VerifyOutcome {
    let mut results = Vec::new();
    let mut pool = Vec::new();

    let t = Instant::now();
    let body = criterion1(seed, &mut pool);
    results.push(finish(1, "middle-betti", Some(5.0), t, body));

    let t = Instant::now();
    let body = criterion2(&pool);
    results.push(finish(2, "cyclotomic-torsion", Some(1.0), t, body));

    let t = Instant::now();
    let body = criterion3(seed);
    results.push(finish(3, "generic-vanishing", Some(10.0), t, body));

    let t = Instant::now();
    let body = criterion4(seed);
    results.push(finish(4, "euler-betti-sum", Some(10.0), t, body));

    let mut cases = Vec::new();
    let t = Instant::now();
    let body = criterion5(seed, &mut cases);
    results.push(finish(5, "critical-counts", Some(60.0), t, body));

    let t = Instant::now();
    let body = criterion6(&cases);
    results.push(finish(6, "weight-scaling", None, t, body));

    let t = Instant::now();
    let body = criterion7(seed);
    results.push(finish(7, "determinism", None, t, body));

    let passed = results.iter().all(|r| r.passed);
    VerifyOutcome { results, passed }
}
