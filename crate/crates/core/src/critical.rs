//! Critical points of master functions by homotopy continuation.
//!
//! A master function attaches a weight to each hyperplane of an
//! arrangement (or to each coordinate on a subvariety of the torus) and
//! sums the weighted logarithms; its critical points are cut out by
//! polynomial equations after clearing denominators. The solver tracks
//! the Bezout-many roots of a random start system `z_j^{d_j} - b_j`
//! into the target along `(1 - tau) * gamma * G + tau * F` with a
//! random complex `gamma`, polishes endpoints with Newton, discards
//! points on the excluded divisors, and reports deduplicated solutions
//! with residuals and condition numbers. All randomness is seeded.

use nalgebra::{DMatrix, DVector};
use num::complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::arrangements::{intersection_poset, Arrangement};
use crate::mpoly::{CompiledPoly, MPoly};
use crate::rat::Rat;
use crate::{Error, Result};

/// Tolerances and limits for the tracker. The defaults are the
/// contract used by the verification suite.
#[derive(Clone, Debug)]
pub struct SolveConfig {
    /// Max-norm residual required of polished endpoints.
    pub residual_tol: f64,
    /// Solutions closer than this (max-norm) are identified.
    pub dedup_radius: f64,
    /// Condition numbers above this flag a solution as singular.
    pub cond_threshold: f64,
    /// Solutions with an excluded coordinate smaller than this are
    /// treated as lying on the excluded divisor and dropped.
    pub membership_margin: f64,
    pub step_min: f64,
    pub step_max: f64,
    pub max_steps: usize,
    pub corrector_iters: usize,
    pub polish_iters: usize,
    /// Points beyond this norm are declared divergent (at infinity).
    pub diverge_norm: f64,
    /// Hard cap on the Bezout path count.
    pub max_paths: usize,
}

impl Default for SolveConfig {
    fn default() -> Self {
        SolveConfig {
            residual_tol: 1e-10,
            dedup_radius: 1e-6,
            cond_threshold: 1e8,
            membership_margin: 1e-8,
            step_min: 1e-6,
            step_max: 1e-1,
            max_steps: 20_000,
            corrector_iters: 3,
            polish_iters: 50,
            diverge_norm: 1e6,
            max_paths: 100_000,
        }
    }
}

/// A critical point problem: weighted hyperplanes, or a weighted torus
/// restricted to a complete intersection.
#[derive(Clone, Debug)]
pub enum MasterProblem {
    /// Critical points of `sum_i u_i log alpha_i` on the arrangement
    /// complement; weights come from the arrangement.
    Arrangement(Arrangement),
    /// Critical points of `sum_j u_j log z_j` on the zero set of
    /// `equations` inside the torus `(C^*)^m`.
    TorusIntersection {
        nvars: usize,
        equations: Vec<MPoly>,
        weights: Vec<i64>,
    },
}

impl MasterProblem {
    /// The weights the master function currently carries.
    pub fn weights(&self) -> Vec<i64> {
        match self {
            MasterProblem::Arrangement(a) => a.effective_weights(),
            MasterProblem::TorusIntersection { weights, .. } => weights.clone(),
        }
    }

    /// The same geometry with new weights.
    pub fn with_weights(&self, w: Vec<i64>) -> MasterProblem {
        match self {
            MasterProblem::Arrangement(a) => {
                let mut a = a.clone();
                a.weights = w;
                MasterProblem::Arrangement(a)
            }
            MasterProblem::TorusIntersection { nvars, equations, .. } => {
                MasterProblem::TorusIntersection {
                    nvars: *nvars,
                    equations: equations.clone(),
                    weights: w,
                }
            }
        }
    }

    /// Count predicted by combinatorics, when one is available: for an
    /// arrangement, the signed Euler characteristic of the complement.
    pub fn combinatorial_count(&self) -> Result<Option<i64>> {
        match self {
            MasterProblem::Arrangement(a) => {
                let chi = intersection_poset(a)?.complement_euler();
                let signed = if a.dim % 2 == 0 { chi } else { -chi };
                Ok(Some(signed))
            }
            MasterProblem::TorusIntersection { .. } => Ok(None),
        }
    }
}

/// The square polynomial system cutting out critical points, plus the
/// coordinates that must stay nonzero.
#[derive(Clone, Debug)]
pub struct CriticalSystem {
    pub nvars: usize,
    pub equations: Vec<MPoly>,
    pub open_conditions: Vec<MPoly>,
    /// Leading variables describing the geometric point (the rest are
    /// multipliers).
    pub point_vars: usize,
    pub var_names: Vec<String>,
}

/// Builds the cleared critical equations of a master problem.
///
/// For an arrangement with forms `alpha_i` and weights `u_i` the `j`-th
/// equation is `sum_i u_i a_{ij} prod_{l != i} alpha_l`, the numerator
/// of the `j`-th partial derivative of the master function. For a torus
/// intersection with constraints `f_i`, unknowns gain one multiplier
/// per constraint and the equations are `sum_i l_i z_j df_i/dz_j = u_j`
/// together with `f_i = 0`.
pub fn critical_system(p: &MasterProblem) -> Result<CriticalSystem> {
    match p {
        MasterProblem::Arrangement(a) => {
            a.validate()?;
            let u = a.effective_weights();
            if u.iter().any(|w| *w == 0) {
                return Err(Error::InvalidInput(
                    "all hyperplane weights must be nonzero".into(),
                ));
            }
            let n = a.dim;
            let k = a.forms.len();
            let alphas: Vec<MPoly> = a
                .forms
                .iter()
                .map(|f| MPoly::affine(&f.linear, &f.constant))
                .collect();
            // prefix[i] = alpha_0 ... alpha_{i-1}, suffix[i] = alpha_i ... alpha_{k-1}
            let mut prefix = vec![MPoly::one(n)];
            for alpha in &alphas {
                prefix.push(prefix.last().unwrap().mul(alpha));
            }
            let mut suffix = vec![MPoly::one(n); k + 1];
            for i in (0..k).rev() {
                suffix[i] = alphas[i].mul(&suffix[i + 1]);
            }
            let mut equations = Vec::with_capacity(n);
            for j in 0..n {
                let mut e = MPoly::zero(n);
                for i in 0..k {
                    let coeff = &a.forms[i].linear[j] * Rat::from_integer(u[i].into());
                    if coeff == Rat::from_integer(0.into()) {
                        continue;
                    }
                    let others = prefix[i].mul(&suffix[i + 1]);
                    e = e.add(&others.scale(&coeff));
                }
                equations.push(e);
            }
            Ok(CriticalSystem {
                nvars: n,
                equations,
                open_conditions: alphas,
                point_vars: n,
                var_names: (1..=n).map(|i| format!("x{i}")).collect(),
            })
        }
        MasterProblem::TorusIntersection { nvars, equations: fs, weights } => {
            let m = *nvars;
            let c = fs.len();
            if m == 0 {
                return Err(Error::InvalidInput("need at least one torus variable".into()));
            }
            if c == 0 || c > m {
                return Err(Error::InvalidInput(format!(
                    "need between 1 and {m} constraints, got {c}"
                )));
            }
            if weights.len() != m {
                return Err(Error::InvalidInput(format!(
                    "{} weights for {m} torus variables",
                    weights.len()
                )));
            }
            if weights.iter().all(|w| *w == 0) {
                return Err(Error::InvalidInput("weights must not all vanish".into()));
            }
            for (i, f) in fs.iter().enumerate() {
                if f.nvars() != m {
                    return Err(Error::InvalidInput(format!(
                        "constraint {i} has {} variables, expected {m}",
                        f.nvars()
                    )));
                }
                if f.total_degree().unwrap_or(0) == 0 {
                    return Err(Error::InvalidInput(format!("constraint {i} is constant")));
                }
            }
            let total = m + c;
            let lifted: Vec<MPoly> = fs.iter().map(|f| f.extend_vars(total)).collect();
            let mut equations = Vec::with_capacity(total);
            for j in 0..m {
                // sum_i l_i z_j df_i/dz_j - u_j
                let zj = MPoly::var(total, j);
                let mut e = MPoly::constant(total, -Rat::from_integer(weights[j].into()));
                for (i, f) in fs.iter().enumerate() {
                    let df = f.partial(j).extend_vars(total);
                    let li = MPoly::var(total, m + i);
                    e = e.add(&li.mul(&zj).mul(&df));
                }
                equations.push(e);
            }
            equations.extend(lifted);
            let mut var_names: Vec<String> = (1..=m).map(|j| format!("z{j}")).collect();
            var_names.extend((1..=c).map(|i| format!("l{i}")));
            Ok(CriticalSystem {
                nvars: total,
                equations,
                open_conditions: (0..m).map(|j| MPoly::var(total, j)).collect(),
                point_vars: m,
                var_names,
            })
        }
    }
}

/// One deduplicated endpoint of the tracker.
#[derive(Clone, Debug)]
pub struct CriticalPoint {
    pub coords: Vec<Complex64>,
    pub residual: f64,
    pub condition: f64,
    pub singular: bool,
    /// Number of paths that landed on this point.
    pub multiplicity: usize,
}

/// All endpoints of a solve, with path statistics.
#[derive(Clone, Debug)]
pub struct SolutionSet {
    pub points: Vec<CriticalPoint>,
    pub nonsingular_count: usize,
    pub path_count: usize,
    pub diverged: usize,
    /// Converged points discarded for lying on an excluded divisor.
    pub filtered: usize,
    pub failures: Vec<String>,
    pub seed: u64,
}

impl SolutionSet {
    /// Geometric coordinates (multipliers dropped) of the nonsingular
    /// points, sorted.
    pub fn nonsingular_points(&self, point_vars: usize) -> Vec<Vec<Complex64>> {
        self.points
            .iter()
            .filter(|p| !p.singular)
            .map(|p| p.coords[..point_vars].to_vec())
            .collect()
    }
}

enum PathOutcome {
    Converged(Vec<Complex64>),
    Diverged,
    Failed(String),
}

struct Tracker<'a> {
    f: Vec<CompiledPoly>,
    jf: Vec<Vec<CompiledPoly>>,
    degrees: Vec<u32>,
    b: Vec<Complex64>,
    gamma: Complex64,
    cfg: &'a SolveConfig,
    n: usize,
}

impl<'a> Tracker<'a> {
    fn eval_f(&self, z: &[Complex64]) -> DVector<Complex64> {
        DVector::from_iterator(self.n, self.f.iter().map(|p| p.eval(z)))
    }

    fn eval_jf(&self, z: &[Complex64]) -> DMatrix<Complex64> {
        DMatrix::from_fn(self.n, self.n, |i, j| self.jf[i][j].eval(z))
    }

    fn eval_g(&self, z: &[Complex64]) -> DVector<Complex64> {
        DVector::from_iterator(
            self.n,
            z.iter()
                .zip(&self.degrees)
                .zip(&self.b)
                .map(|((zj, d), bj)| zj.powu(*d) - bj),
        )
    }

    fn eval_h(&self, z: &[Complex64], tau: f64) -> DVector<Complex64> {
        let s = self.gamma * Complex64::new(1.0 - tau, 0.0);
        self.eval_g(z) * s + self.eval_f(z) * Complex64::new(tau, 0.0)
    }

    fn eval_jh(&self, z: &[Complex64], tau: f64) -> DMatrix<Complex64> {
        let mut m = self.eval_jf(z) * Complex64::new(tau, 0.0);
        let s = self.gamma * Complex64::new(1.0 - tau, 0.0);
        for (j, (zj, d)) in z.iter().zip(&self.degrees).enumerate() {
            m[(j, j)] += s * Complex64::new(*d as f64, 0.0) * zj.powu(d - 1);
        }
        m
    }

    /// `dH/dtau = F - gamma * G`.
    fn eval_ht(&self, z: &[Complex64]) -> DVector<Complex64> {
        self.eval_f(z) - self.eval_g(z) * self.gamma
    }

    fn max_norm(v: &DVector<Complex64>) -> f64 {
        v.iter().map(|x| x.norm()).fold(0.0, f64::max)
    }

    fn point_norm(z: &[Complex64]) -> f64 {
        z.iter().map(|x| x.norm()).fold(0.0, f64::max)
    }

    fn track(&self, start: Vec<Complex64>) -> PathOutcome {
        let mut z = start;
        let mut tau = 0.0f64;
        let mut dt = self.cfg.step_max.min(0.05);
        let mut streak = 0usize;
        let mut rescued = false;

        for _ in 0..self.cfg.max_steps {
            // remote endpoints need geometrically shrinking steps, so
            // the step floor is relative to the remaining distance
            if tau >= 1.0 || 1.0 - tau <= 1e-12 {
                break;
            }
            if Self::point_norm(&z) > self.cfg.diverge_norm {
                return PathOutcome::Diverged;
            }
            if z.iter().any(|x| !x.re.is_finite() || !x.im.is_finite()) {
                return PathOutcome::Failed("non-finite coordinates while tracking".into());
            }
            dt = dt.min(1.0 - tau);

            // Euler predictor
            let predicted = match self.eval_jh(&z, tau).lu().solve(&(-self.eval_ht(&z))) {
                Some(v) => {
                    let mut zp = z.clone();
                    for (zi, vi) in zp.iter_mut().zip(v.iter()) {
                        *zi += vi * Complex64::new(dt, 0.0);
                    }
                    Some(zp)
                }
                None => None,
            };

            // Newton corrector at tau + dt
            let accepted = predicted.and_then(|mut zc| {
                let tau2 = tau + dt;
                for _ in 0..self.cfg.corrector_iters {
                    let delta = self.eval_jh(&zc, tau2).lu().solve(&(-self.eval_h(&zc, tau2)))?;
                    for (zi, di) in zc.iter_mut().zip(delta.iter()) {
                        *zi += di;
                    }
                    if Self::max_norm(&delta) <= 1e-9 * (1.0 + Self::point_norm(&zc)) {
                        return Some(zc);
                    }
                }
                None
            });

            match accepted {
                Some(zc) => {
                    z = zc;
                    tau += dt;
                    streak += 1;
                    if streak >= 4 {
                        dt = (dt * 2.0).min(self.cfg.step_max);
                        streak = 0;
                    }
                }
                None => {
                    dt *= 0.5;
                    streak = 0;
                    let floor = (self.cfg.step_min * (1.0 - tau)).max(1e-15);
                    if dt < floor {
                        if Self::point_norm(&z) > self.cfg.diverge_norm {
                            return PathOutcome::Diverged;
                        }
                        // this close to the end a stalled corrector
                        // usually means a singular target root, which
                        // the quadratic acceptance test can never meet;
                        // the stagnation polisher below still reaches it
                        if 1.0 - tau <= 1e-4 {
                            rescued = true;
                            break;
                        }
                        return PathOutcome::Failed(format!(
                            "step size underflow at tau = {tau:.6}"
                        ));
                    }
                }
            }
        }
        if !rescued && 1.0 - tau > 1e-12 {
            return PathOutcome::Failed("step budget exhausted".into());
        }

        // Newton-polish against the target system alone, running to
        // step stagnation: multiple roots converge only linearly, and
        // walking all the way in lets the divisor filter see them
        for _ in 0..self.cfg.polish_iters {
            if Self::point_norm(&z) > self.cfg.diverge_norm {
                return PathOutcome::Diverged;
            }
            let f = self.eval_f(&z);
            let Some(delta) = self.eval_jf(&z).lu().solve(&(-f)) else {
                break;
            };
            for (zi, di) in z.iter_mut().zip(delta.iter()) {
                *zi += di;
            }
            if Self::max_norm(&delta) <= 8.0 * f64::EPSILON * (1.0 + Self::point_norm(&z)) {
                break;
            }
        }
        if Self::point_norm(&z) > self.cfg.diverge_norm {
            PathOutcome::Diverged
        } else if Self::max_norm(&self.eval_f(&z)) <= self.cfg.residual_tol {
            PathOutcome::Converged(z)
        } else {
            PathOutcome::Failed("no convergence after polishing".into())
        }
    }
}

fn unit_complex(rng: &mut ChaCha8Rng) -> Complex64 {
    let theta = rng.random::<f64>() * std::f64::consts::TAU;
    Complex64::new(theta.cos(), theta.sin())
}

/// Tracks every Bezout path of `system` from a seeded random start
/// system and returns the deduplicated, filtered endpoints.
pub fn solve(system: &CriticalSystem, seed: u64, cfg: &SolveConfig) -> Result<SolutionSet> {
    let n = system.nvars;
    if system.equations.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "{} equations for {} unknowns",
            system.equations.len(),
            n
        )));
    }
    let mut degrees = Vec::with_capacity(n);
    let mut equations = Vec::with_capacity(n);
    for (j, e) in system.equations.iter().enumerate() {
        match e.total_degree() {
            Some(d) if d >= 1 => degrees.push(d),
            _ => {
                return Err(Error::InvalidInput(format!(
                    "equation {j} is constant; the system is degenerate"
                )))
            }
        }
        // normalize to max coefficient 1 so the start and target
        // systems live on comparable scales and residuals are relative
        equations.push(e.scale(&e.max_abs_coeff().recip()));
    }
    let path_count: usize = degrees.iter().map(|d| *d as usize).product();
    if path_count > cfg.max_paths {
        return Err(Error::InvalidInput(format!(
            "Bezout bound {path_count} exceeds the path cap {}",
            cfg.max_paths
        )));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let gamma = unit_complex(&mut rng);
    let b: Vec<Complex64> = (0..n).map(|_| unit_complex(&mut rng)).collect();

    let jf: Vec<Vec<CompiledPoly>> = equations
        .iter()
        .map(|e| (0..n).map(|j| e.partial(j).compile()).collect())
        .collect();
    let tracker = Tracker {
        f: equations.iter().map(MPoly::compile).collect(),
        jf,
        degrees: degrees.clone(),
        b: b.clone(),
        gamma,
        cfg,
        n,
    };

    // roots of z_j^{d_j} = b_j, enumerated in mixed radix over paths
    let start_point = |mut index: usize| -> Vec<Complex64> {
        let mut z = Vec::with_capacity(n);
        for (j, d) in degrees.iter().enumerate() {
            let d = *d as usize;
            let m = index % d;
            index /= d;
            let phase = (b[j].arg() + std::f64::consts::TAU * m as f64) / d as f64;
            z.push(Complex64::new(phase.cos(), phase.sin()));
        }
        z
    };

    let mut outcomes: Vec<(usize, PathOutcome)> = (0..path_count)
        .into_par_iter()
        .map(|i| (i, tracker.track(start_point(i))))
        .collect();
    outcomes.sort_by_key(|(i, _)| *i);

    let open: Vec<CompiledPoly> = system.open_conditions.iter().map(MPoly::compile).collect();
    let mut converged: Vec<Vec<Complex64>> = Vec::new();
    let mut diverged = 0usize;
    let mut filtered = 0usize;
    let mut failures = Vec::new();
    for (i, outcome) in outcomes {
        match outcome {
            PathOutcome::Converged(z) => {
                if open.iter().any(|c| c.eval(&z).norm() <= cfg.membership_margin) {
                    filtered += 1;
                } else {
                    converged.push(z);
                }
            }
            PathOutcome::Diverged => diverged += 1,
            PathOutcome::Failed(reason) => failures.push(format!("path {i}: {reason}")),
        }
    }

    // deterministic dedup: lexicographic sort, then greedy clustering
    converged.sort_by(|a, b| {
        for (x, y) in a.iter().zip(b) {
            match x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im)) {
                std::cmp::Ordering::Equal => continue,
                other => return other,
            }
        }
        std::cmp::Ordering::Equal
    });
    let close = |a: &[Complex64], b: &[Complex64]| -> bool {
        a.iter().zip(b).all(|(x, y)| (x - y).norm() <= cfg.dedup_radius)
    };
    let mut clusters: Vec<(Vec<Complex64>, usize)> = Vec::new();
    for z in converged {
        match clusters.iter_mut().find(|(rep, _)| close(rep, &z)) {
            Some((_, count)) => *count += 1,
            None => clusters.push((z, 1)),
        }
    }

    let mut points = Vec::with_capacity(clusters.len());
    for (coords, multiplicity) in clusters {
        let residual = Tracker::max_norm(&tracker.eval_f(&coords));
        let svd = tracker.eval_jf(&coords).svd(false, false);
        let smax = svd.singular_values.iter().copied().fold(0.0f64, f64::max);
        let smin = svd.singular_values.iter().copied().fold(f64::INFINITY, f64::min);
        let condition = if smin > 0.0 { smax / smin } else { f64::INFINITY };
        let singular = !(condition < cfg.cond_threshold);
        points.push(CriticalPoint { coords, residual, condition, singular, multiplicity });
    }
    let nonsingular_count = points.iter().filter(|p| !p.singular).count();

    Ok(SolutionSet {
        points,
        nonsingular_count,
        path_count,
        diverged,
        filtered,
        failures,
        seed,
    })
}

/// One weight resampling in a genericity check.
#[derive(Clone, Debug)]
pub struct GenericityTrial {
    pub weights: Vec<i64>,
    pub nonsingular_count: usize,
    pub singular_candidates: usize,
    pub failed_paths: usize,
}

/// Result of [`genericity_check`]: the given weights are accepted when
/// every resampling reproduces the same nonsingular count.
#[derive(Clone, Debug)]
pub struct GenericityReport {
    pub trials: Vec<GenericityTrial>,
    pub consistent: bool,
    pub count: Option<usize>,
}

/// Solves the problem with its own weights and with `trials - 1` fresh
/// random weight vectors, comparing nonsingular counts. At least two
/// trials are required.
pub fn genericity_check(
    p: &MasterProblem,
    seed: u64,
    trials: usize,
    cfg: &SolveConfig,
) -> Result<GenericityReport> {
    if trials < 2 {
        return Err(Error::InvalidInput("a genericity check needs at least two trials".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e3779b97f4a7c15);
    let base = p.weights();
    let mut report = GenericityReport { trials: Vec::new(), consistent: true, count: None };
    for t in 0..trials {
        let weights = if t == 0 {
            base.clone()
        } else {
            base.iter()
                .map(|_| {
                    let mut w = 0i64;
                    while w == 0 {
                        w = rng.random_range(-50i64..=50);
                    }
                    w
                })
                .collect()
        };
        let problem = p.with_weights(weights.clone());
        let system = critical_system(&problem)?;
        let sol = solve(&system, seed.wrapping_add(1 + t as u64), cfg)?;
        let trial = GenericityTrial {
            weights,
            nonsingular_count: sol.nonsingular_count,
            singular_candidates: sol.points.len() - sol.nonsingular_count,
            failed_paths: sol.failures.len(),
        };
        match report.count {
            None => report.count = Some(trial.nonsingular_count),
            Some(c) if c != trial.nonsingular_count => report.consistent = false,
            _ => {}
        }
        report.trials.push(trial);
    }
    if !report.consistent {
        report.count = None;
    }
    Ok(report)
}

/// A solved and cross-checked critical point count.
#[derive(Clone, Debug)]
pub struct CriticalReport {
    pub seed: u64,
    pub weights: Vec<i64>,
    pub solutions: SolutionSet,
    pub point_vars: usize,
    /// Combinatorial prediction (arrangements) or caller expectation.
    pub expected: Option<i64>,
    pub matches_expected: Option<bool>,
    pub genericity: GenericityReport,
}

/// Counts nonsingular critical points, refusing weights that fail the
/// genericity check. `expected` overrides the combinatorial prediction
/// when given.
pub fn count_critical(
    p: &MasterProblem,
    expected: Option<i64>,
    seed: u64,
    trials: usize,
    cfg: &SolveConfig,
) -> Result<CriticalReport> {
    let genericity = genericity_check(p, seed, trials.max(2), cfg)?;
    if !genericity.consistent {
        let counts: Vec<String> = genericity
            .trials
            .iter()
            .map(|t| format!("u = {:?} -> {}", t.weights, t.nonsingular_count))
            .collect();
        return Err(Error::NonGeneric(format!(
            "critical point counts disagree across weight resamplings: {}",
            counts.join("; ")
        )));
    }
    let system = critical_system(p)?;
    let solutions = solve(&system, seed, cfg)?;
    let expected = match expected {
        Some(e) => Some(e),
        None => p.combinatorial_count()?,
    };
    let matches_expected = expected.map(|e| e == solutions.nonsingular_count as i64);
    Ok(CriticalReport {
        seed,
        weights: p.weights(),
        point_vars: system.point_vars,
        solutions,
        expected,
        matches_expected,
        genericity,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangements::generic_lines;
    use crate::rat::rat_int;

    fn cfg() -> SolveConfig {
        SolveConfig::default()
    }

    fn line_problem() -> MasterProblem {
        // master function u1 log x + u2 log y on the line x + y = 1
        MasterProblem::TorusIntersection {
            nvars: 2,
            equations: vec![MPoly::affine(&[rat_int(1), rat_int(1)], &rat_int(-1))],
            weights: vec![2, 3],
        }
    }

    #[test]
    fn critical_system_shapes() {
        let sys = critical_system(&MasterProblem::Arrangement(generic_lines(4).unwrap())).unwrap();
        assert_eq!(sys.nvars, 2);
        assert_eq!(sys.equations.len(), 2);
        assert_eq!(sys.open_conditions.len(), 4);
        for e in &sys.equations {
            assert_eq!(e.total_degree(), Some(3));
        }

        let sys = critical_system(&line_problem()).unwrap();
        assert_eq!(sys.nvars, 3);
        assert_eq!(sys.equations.len(), 3);
        assert_eq!(sys.point_vars, 2);
    }

    #[test]
    fn line_section_has_the_closed_form_solution() {
        let sys = critical_system(&line_problem()).unwrap();
        let sol = solve(&sys, 42, &cfg()).unwrap();
        assert_eq!(sol.nonsingular_count, 1);
        let pts = sol.nonsingular_points(sys.point_vars);
        let p = &pts[0];
        // (u1/(u1+u2), u2/(u1+u2)) = (2/5, 3/5)
        assert!((p[0] - Complex64::new(0.4, 0.0)).norm() < 1e-8);
        assert!((p[1] - Complex64::new(0.6, 0.0)).norm() < 1e-8);
    }

    #[test]
    fn degenerate_weights_on_the_line_are_refused() {
        let bad = line_problem().with_weights(vec![1, -1]);
        let err = count_critical(&bad, None, 7, 3, &cfg());
        match err {
            Err(Error::NonGeneric(_)) => {}
            other => panic!("expected a genericity refusal, got {other:?}"),
        }
    }

    #[test]
    fn circle_times_monomial_has_four_critical_points() {
        // u1 log x + u2 log y on x^2 + y^2 = 1
        let f = MPoly::var(2, 0)
            .pow(2)
            .add(&MPoly::var(2, 1).pow(2))
            .sub(&MPoly::one(2));
        let p = MasterProblem::TorusIntersection {
            nvars: 2,
            equations: vec![f],
            weights: vec![1, 1],
        };
        let sys = critical_system(&p).unwrap();
        let sol = solve(&sys, 11, &cfg()).unwrap();
        assert_eq!(sol.nonsingular_count, 4);
        let r = (0.5f64).sqrt();
        for pt in sol.nonsingular_points(sys.point_vars) {
            assert!((pt[0].norm() - r).abs() < 1e-8);
            assert!((pt[1].norm() - r).abs() < 1e-8);
        }
    }

    #[test]
    fn generic_lines_match_the_combinatorial_count() {
        for k in 3..=5usize {
            let p = MasterProblem::Arrangement(generic_lines(k).unwrap());
            let report = count_critical(&p, None, 23, 2, &cfg()).unwrap();
            let expect = ((k - 1) * (k - 2) / 2) as i64;
            assert_eq!(report.expected, Some(expect));
            assert_eq!(report.matches_expected, Some(true), "k = {k}");
            assert_eq!(report.solutions.nonsingular_count as i64, expect);
            for pt in &report.solutions.points {
                if !pt.singular {
                    assert!(pt.residual <= cfg().residual_tol);
                    assert!(pt.condition < cfg().cond_threshold);
                }
            }
        }
    }

    #[test]
    fn boolean_arrangement_has_no_critical_points() {
        let a = crate::arrangements::Arrangement::from_json(
            r#"{"dim": 2, "forms": [[1, 0, 0], [0, 1, 0]], "weights": [1, 1]}"#,
        )
        .unwrap();
        let report = count_critical(&MasterProblem::Arrangement(a), None, 3, 2, &cfg()).unwrap();
        assert_eq!(report.solutions.nonsingular_count, 0);
        assert_eq!(report.expected, Some(0));
        assert_eq!(report.matches_expected, Some(true));
    }

    #[test]
    fn central_lines_have_no_critical_points() {
        let a = crate::arrangements::Arrangement::from_json(
            r#"{"dim": 2, "forms": [[1, 0, 0], [0, 1, 0], [1, 1, 0]], "weights": [1, 1, 1]}"#,
        )
        .unwrap();
        let report = count_critical(&MasterProblem::Arrangement(a), None, 5, 2, &cfg()).unwrap();
        assert_eq!(report.solutions.nonsingular_count, 0);
        assert_eq!(report.expected, Some(0));
        assert_eq!(report.matches_expected, Some(true));
    }

    #[test]
    fn scaled_weights_find_the_same_points() {
        let p = MasterProblem::Arrangement(generic_lines(4).unwrap());
        let sys1 = critical_system(&p).unwrap();
        let sol1 = solve(&sys1, 17, &cfg()).unwrap();

        let scaled = p.with_weights(vec![3; 4]);
        let sys3 = critical_system(&scaled).unwrap();
        let sol3 = solve(&sys3, 18, &cfg()).unwrap();

        assert_eq!(sol1.nonsingular_count, sol3.nonsingular_count);
        let mut a = sol1.nonsingular_points(2);
        let mut b = sol3.nonsingular_points(2);
        let key = |p: &Vec<Complex64>| (p[0].re, p[0].im, p[1].re, p[1].im);
        a.sort_by(|x, y| key(x).partial_cmp(&key(y)).unwrap());
        b.sort_by(|x, y| key(x).partial_cmp(&key(y)).unwrap());
        for (x, y) in a.iter().zip(&b) {
            for (xi, yi) in x.iter().zip(y) {
                assert!((xi - yi).norm() <= 1e-6);
            }
        }
    }

    #[test]
    fn deterministic_for_fixed_seed() {
        let sys = critical_system(&line_problem()).unwrap();
        let a = solve(&sys, 5, &cfg()).unwrap();
        let b = solve(&sys, 5, &cfg()).unwrap();
        assert_eq!(a.points.len(), b.points.len());
        for (p, q) in a.points.iter().zip(&b.points) {
            assert_eq!(p.coords, q.coords);
            assert_eq!(p.residual.to_bits(), q.residual.to_bits());
        }
    }

    #[test]
    fn rejects_malformed_systems() {
        let sys = CriticalSystem {
            nvars: 2,
            equations: vec![MPoly::one(2)],
            open_conditions: vec![],
            point_vars: 2,
            var_names: vec!["x1".into(), "x2".into()],
        };
        assert!(solve(&sys, 1, &cfg()).is_err());

        let sys = CriticalSystem {
            nvars: 1,
            equations: vec![MPoly::constant(1, rat_int(1))],
            open_conditions: vec![],
            point_vars: 1,
            var_names: vec!["x1".into()],
        };
        assert!(solve(&sys, 1, &cfg()).is_err());
    }
}
