//! Report envelopes.
//!
//! Every command wraps its payload in the same outer object carrying the
//! tool version, the seed, the numeric tolerances in force, and SHA-256
//! digests of the input files, so that two runs with the same arguments
//! and seed can be compared byte for byte. Maps serialize with sorted
//! keys and nothing time-dependent is ever embedded.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use torustop_core::alexander::{AlexanderData, TorsionSummary, VanishingCertificate};
use torustop_core::arrangements::{Arrangement, IntersectionPoset};
use torustop_core::critical::{CriticalReport, SolveConfig};
use torustop_core::localsys::{ScanReport, COMPLEX_RANK_TOL};
use torustop_core::format_rat;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub fn sha256_hex(bytes: &[u8]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(bytes);
    let mut out = String::with_capacity(64);
    for byte in hasher.finalize() {
        let _ = write!(out, "{byte:02x}");
    }
    out
}

/// The tolerance table in force; reports embed it verbatim.
pub fn tolerances(cfg: &SolveConfig) -> Value {
    json!({
        "complex_rank_tol": COMPLEX_RANK_TOL,
        "cond_threshold": cfg.cond_threshold,
        "dedup_radius": cfg.dedup_radius,
        "diverge_norm": cfg.diverge_norm,
        "membership_margin": cfg.membership_margin,
        "residual_tol": cfg.residual_tol,
        "step_max": cfg.step_max,
        "step_min": cfg.step_min,
    })
}

pub struct Envelope {
    pub command: String,
    pub seed: Option<u64>,
    pub inputs: BTreeMap<String, String>,
    pub tolerances: Value,
    pub report: Value,
}

impl Envelope {
    pub fn new(command: impl Into<String>) -> Self {
        Envelope {
            command: command.into(),
            seed: None,
            inputs: BTreeMap::new(),
            tolerances: tolerances(&SolveConfig::default()),
            report: Value::Null,
        }
    }

    pub fn record_input(&mut self, path: &Path) -> std::io::Result<()> {
        let bytes = std::fs::read(path)?;
        self.inputs.insert(path.display().to_string(), sha256_hex(&bytes));
        Ok(())
    }

    pub fn to_value(&self) -> Value {
        json!({
            "command": self.command,
            "inputs": self.inputs,
            "report": self.report,
            "seed": self.seed,
            "tolerances": self.tolerances,
            "version": VERSION,
        })
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_value()).expect("report serialization");
        s.push('\n');
        s
    }
}

fn finite_or_null(x: f64) -> Value {
    if x.is_finite() {
        json!(x)
    } else {
        Value::Null
    }
}

pub fn alexander_value(data: &AlexanderData) -> Value {
    json!({
        "label": data.label,
        "euler": data.euler,
        "degrees": data
            .degrees
            .iter()
            .map(|h| {
                json!({
                    "degree": h.degree,
                    "rank": h.rank,
                    "torsion": h.torsion.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
                    "order": h.order.to_string(),
                })
            })
            .collect::<Vec<_>>(),
    })
}

pub fn torsion_profile_value(rows: &[TorsionSummary]) -> Value {
    Value::Array(
        rows.iter()
            .map(|r| {
                json!({
                    "degree": r.degree,
                    "rank": r.rank,
                    "factors": r.factors.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
                    "cyclotomic": r.cyclotomic,
                    "all_cyclotomic": r.all_cyclotomic,
                })
            })
            .collect(),
    )
}

pub fn certificate_value(betti: &[usize], cert: &VanishingCertificate) -> Value {
    json!({
        "middle": cert.middle,
        "betti": betti,
        "certified": cert.certified,
        "degrees": cert
            .degrees
            .iter()
            .map(|d| {
                json!({
                    "degree": d.degree,
                    "rank": d.rank,
                    "rank_vanishes": d.rank_vanishes,
                    "torsion_certified": d.torsion_certified,
                    "obstructions": d.obstructions,
                })
            })
            .collect::<Vec<_>>(),
    })
}

pub fn scan_value(report: &ScanReport) -> Value {
    json!({
        "label": report.label,
        "middle": report.middle,
        "euler": report.euler,
        "expected_middle": report.expected_middle,
        "sample_count": report.samples.len(),
        "generic_ok": report.generic_ok,
        "milnor_ok": report.milnor_ok,
        "samples": report
            .samples
            .iter()
            .map(|s| {
                json!({
                    "s": format_rat(&s.s),
                    "exceptional": s.exceptional,
                    "dims": s.dims,
                    "milnor": s.milnor,
                    "milnor_match": s.milnor_match,
                    "below_middle_vanish": s.below_middle_vanish,
                    "middle_dim": s.middle_dim,
                })
            })
            .collect::<Vec<_>>(),
    })
}

pub fn euler_value(a: &Arrangement, poset: &IntersectionPoset) -> Value {
    let mut by_rank: BTreeMap<usize, usize> = BTreeMap::new();
    for f in &poset.flats {
        *by_rank.entry(f.rank).or_insert(0) += 1;
    }
    let bounded = poset.bounded_regions().ok();
    json!({
        "dim": a.dim,
        "forms": a.forms.len(),
        "essential": poset.is_essential(),
        "flats": poset.flats.len(),
        "flats_by_rank": by_rank,
        "characteristic_polynomial": poset.characteristic_polynomial(),
        "complement_euler": poset.complement_euler(),
        "bounded_regions": bounded,
    })
}

pub fn critical_value(report: &CriticalReport, var_names: &[String]) -> Value {
    let sol = &report.solutions;
    let genericity = json!({
        "consistent": report.genericity.consistent,
        "count": report.genericity.count,
        "trials": report
            .genericity
            .trials
            .iter()
            .map(|t| {
                json!({
                    "weights": t.weights,
                    "nonsingular": t.nonsingular_count,
                    "singular_candidates": t.singular_candidates,
                    "failed_paths": t.failed_paths,
                })
            })
            .collect::<Vec<_>>(),
    });
    json!({
        "seed": report.seed,
        "weights": report.weights,
        "variables": var_names[..report.point_vars].to_vec(),
        "expected": report.expected,
        "count": sol.nonsingular_count,
        "matches_expected": report.matches_expected,
        "paths": sol.path_count,
        "diverged": sol.diverged,
        "filtered": sol.filtered,
        "path_failures": sol.failures,
        "points": sol
            .points
            .iter()
            .map(|p| {
                json!({
                    "coords": p.coords[..report.point_vars]
                        .iter()
                        .map(|z| [z.re, z.im])
                        .collect::<Vec<_>>(),
                    "residual": finite_or_null(p.residual),
                    "condition": finite_or_null(p.condition),
                    "singular": p.singular,
                    "multiplicity": p.multiplicity,
                })
            })
            .collect::<Vec<_>>(),
        "genericity": genericity,
    })
}
