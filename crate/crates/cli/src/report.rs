//! Report structures and serialization. JSON output is deterministic:
//! configs use an ordered map and no timestamps are embedded (timing goes
//! to stderr).

use std::collections::BTreeMap;

use serde::Serialize;

use tsolve_core::sim::TsReport;
use tsolve_core::{Error, StateVector};

pub type ConfigMap = BTreeMap<&'static str, serde_json::Value>;

#[derive(Serialize)]
pub struct Report<'a, T: Serialize> {
    pub schema: &'static str,
    pub version: &'static str,
    pub command: String,
    pub config: ConfigMap,
    pub result: &'a T,
}

pub fn render_json<T: Serialize>(
    command: &str,
    config: ConfigMap,
    result: &T,
) -> Result<String, Error> {
    let report = Report {
        schema: "tsolve/1",
        version: env!("CARGO_PKG_VERSION"),
        command: command.into(),
        config,
        result,
    };
    serde_json::to_string_pretty(&report)
        .map_err(|e| Error::invalid(format!("serialization failed: {e}")))
}

#[derive(Serialize)]
pub struct AmplitudeOut {
    pub bits: String,
    pub re: f64,
    pub im: f64,
}

#[derive(Serialize)]
pub struct OracleOut {
    pub is_ts: bool,
    pub max_offdiag: f64,
    pub max_diag_dev: f64,
}

pub fn oracle_report(r: &TsReport) -> OracleOut {
    OracleOut {
        is_ts: r.is_ts,
        max_offdiag: r.max_offdiag,
        max_diag_dev: r.max_diag_dev,
    }
}

pub fn state_triples(psi: &StateVector) -> Vec<AmplitudeOut> {
    psi.amplitudes()
        .iter()
        .enumerate()
        .filter(|(_, a)| a.norm_sqr() > 0.0)
        .map(|(b, a)| AmplitudeOut {
            bits: tsolve_core::BitString::from_index(psi.n(), b as u64)
                .expect("index in range")
                .to_string(),
            re: a.re,
            im: a.im,
        })
        .collect()
}

#[derive(Serialize)]
pub struct SolveResult {
    pub n: usize,
    pub m: usize,
    pub group: String,
    pub theta: f64,
    pub feasible: bool,
    pub matrix_variant: String,
    /// Closed-form threshold for the family, when a formula applies.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub threshold: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub state: Option<Vec<AmplitudeOut>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

pub fn solve_text(r: &SolveResult) -> String {
    let mut out = format!(
        "n={} m={} group={} theta={}\nfeasible: {}\n",
        r.n, r.m, r.group, r.theta, r.feasible
    );
    if let Some(c) = &r.c {
        out.push_str(&format!("c: {c:?}\n"));
    }
    if let Some(oracle) = &r.oracle {
        out.push_str(&format!(
            "oracle: is_ts={} max_offdiag={:.3e} max_diag_dev={:.3e}\n",
            oracle.is_ts, oracle.max_offdiag, oracle.max_diag_dev
        ));
    }
    if let Some(state) = &r.state {
        for a in state {
            out.push_str(&format!("{} {} {}\n", a.bits, a.re, a.im));
        }
    }
    out
}

#[derive(Serialize)]
pub struct ThresholdResult {
    pub n: usize,
    pub m: usize,
    pub group: String,
    pub theta_lp: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theta_formula: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub formula_necessary: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta: Option<f64>,
    pub segments: Vec<(f64, f64)>,
}

pub fn threshold_text(r: &ThresholdResult) -> String {
    let mut out = format!("n={} m={} group={}\n", r.n, r.m, r.group);
    match r.theta_lp {
        Some(v) => out.push_str(&format!("theta_lp: {v}\n")),
        None => out.push_str("theta_lp: none (no feasible grid point)\n"),
    }
    if let Some(v) = r.theta_formula {
        out.push_str(&format!(
            "theta_formula: {v} ({})\n",
            if r.formula_necessary == Some(true) {
                "necessary and sufficient"
            } else {
                "sufficient"
            }
        ));
    }
    if let Some(v) = r.delta {
        out.push_str(&format!("delta: {v:.3e}\n"));
    }
    out
}

#[derive(Serialize)]
pub struct SweepRowOut {
    pub n: usize,
    pub m: usize,
    pub group: String,
    pub theta_formula: Option<f64>,
    pub theta_lp: Option<f64>,
    pub delta: Option<f64>,
}

#[derive(Serialize)]
pub struct SweepResult {
    pub rows: Vec<SweepRowOut>,
}

pub fn sweep_csv(rows: &[SweepRowOut]) -> String {
    let mut out = String::from("n,m,group,theta_formula,theta_lp,delta\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            r.n,
            r.m,
            r.group,
            r.theta_formula.map_or(String::new(), |v| v.to_string()),
            r.theta_lp.map_or(String::new(), |v| v.to_string()),
            r.delta.map_or(String::new(), |v| v.to_string()),
        ));
    }
    out
}

pub fn sweep_text(r: &SweepResult) -> String {
    sweep_csv(&r.rows)
}

#[derive(Serialize)]
pub struct ComplexOut {
    pub re: f64,
    pub im: f64,
}

#[derive(Serialize)]
pub struct VerifyResult {
    pub n: usize,
    pub theta: f64,
    pub trajectories: Vec<String>,
    pub is_ts: bool,
    pub max_offdiag: f64,
    pub max_diag_dev: f64,
    pub gram: Vec<Vec<ComplexOut>>,
}

pub fn verify_text(r: &VerifyResult) -> String {
    let mut out = format!(
        "n={} theta={} trajectories={}\nis_ts: {}\nmax_offdiag: {:.3e}\nmax_diag_dev: {:.3e}\n",
        r.n,
        r.theta,
        r.trajectories.len(),
        r.is_ts,
        r.max_offdiag,
        r.max_diag_dev
    );
    for row in &r.gram {
        let cells: Vec<String> = row
            .iter()
            .map(|z| format!("{:+.4}{:+.4}i", z.re, z.im))
            .collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    out
}

#[derive(Serialize)]
pub struct CheckOut {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Serialize)]
pub struct CodesResult {
    pub example: String,
    pub all_pass: bool,
    pub checks: Vec<CheckOut>,
}

pub fn codes_text(r: &CodesResult) -> String {
    let mut out = format!("example: {}\n", r.example);
    for c in &r.checks {
        out.push_str(&format!(
            "{} {}: {}\n",
            if c.pass { "PASS" } else { "FAIL" },
            c.name,
            c.detail
        ));
    }
    out.push_str(&format!(
        "all: {}\n",
        if r.all_pass { "PASS" } else { "FAIL" }
    ));
    out
}

#[derive(Serialize)]
pub struct StringOrbitOut {
    pub representative: String,
    pub size: u64,
}

#[derive(Serialize)]
pub struct PairOrbitOut {
    pub representative: String,
    pub size: u64,
}

#[derive(Serialize)]
pub struct OrbitsResult {
    pub n: usize,
    pub group: String,
    pub num_string_orbits: usize,
    pub string_orbits: Vec<StringOrbitOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub num_pair_orbits: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pair_orbits: Option<Vec<PairOrbitOut>>,
}

pub fn orbits_text(r: &OrbitsResult) -> String {
    let mut out = format!(
        "n={} group={} string_orbits={}\n",
        r.n, r.group, r.num_string_orbits
    );
    for o in &r.string_orbits {
        out.push_str(&format!("{} (size {})\n", o.representative, o.size));
    }
    if let Some(pairs) = &r.pair_orbits {
        out.push_str(&format!("pair_orbits={}\n", pairs.len()));
        for o in pairs {
            out.push_str(&format!("{} (size {})\n", o.representative, o.size));
        }
    }
    out
}
