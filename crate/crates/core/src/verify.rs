//! Exhaustive and randomized verification campaigns.
//!
//! [`run_suite`] walks every labeled graph on `n_min..=n_max` vertices in
//! edge-mask order, evaluates every applicable bound, and cross-checks
//! numeric equality against the structural predicates. An optional batch of
//! seeded random graphs compares the power iteration with the variational
//! oracle. Work is split into static index ranges and partial reports are
//! merged in range order, so the report does not depend on `parallelism`.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::{
    chain_relations, classical_bounds, equality_case, equality_witness, maclaurin_check, order_bounds, vertex_weighted_sum,
    weighted_clique_sum, BoundReport, EqualityCase, EqualityKind, Tolerances, WeightedVector,
};
use crate::cliques::{build_catalog, CliqueCatalog};
use crate::error::{Error, Result};
use crate::graph::{gnp_random, Graph};
use crate::oracle::oracle_spectral_radius;
use crate::spectral::{spectral_radius_of_catalog, SpectralOptions, SpectralResult};

pub const SCHEMA_VERSION: u32 = 1;
pub const MAX_EXHAUSTIVE_N: usize = 8;

const ENCLOSURE_ROUNDING_ULPS: f64 = 64.0;
const ORACLE_P: [f64; 3] = [0.3, 0.5, 0.8];
const ORACLE_T: [usize; 3] = [2, 3, 4];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub n_min: usize,
    pub n_max: usize,
    pub t_values: Vec<usize>,
    /// Include the bounds that need ρ.
    pub spectral: bool,
    /// Evaluate the weighted-sum inequalities on the test-vector battery.
    pub weighted_battery: bool,
    /// Seeded random simplex points per (graph, t) in the battery.
    pub random_points: usize,
    pub tol: f64,
    pub max_iter: usize,
    pub eq_tol: f64,
    pub slack: f64,
    pub seed: u64,
    pub random_trials: usize,
    pub oracle_n_max: usize,
    pub oracle_restarts: usize,
    /// Worker threads; 0 uses every available core.
    pub parallelism: usize,
    /// Keep one row per evaluated bound (needed for CSV export).
    pub keep_rows: bool,
    /// Equal-case examples listed per census entry.
    pub census_limit: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            n_min: 1,
            n_max: 4,
            t_values: vec![2, 3],
            spectral: true,
            weighted_battery: true,
            random_points: 3,
            tol: crate::spectral::DEFAULT_TOL,
            max_iter: crate::spectral::DEFAULT_MAX_ITER,
            eq_tol: 1e-6,
            slack: 1e-9,
            seed: 0,
            random_trials: 0,
            oracle_n_max: 8,
            oracle_restarts: 8,
            parallelism: 0,
            keep_rows: false,
            census_limit: 25,
        }
    }
}

impl SuiteConfig {
    /// Exhaustive sweep over exactly `n` vertices.
    pub fn exhaustive(n: usize, t_values: &[usize], spectral: bool) -> Self {
        SuiteConfig {
            n_min: n,
            n_max: n,
            t_values: t_values.to_vec(),
            spectral,
            ..SuiteConfig::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidArgument(m));
        if self.n_max > MAX_EXHAUSTIVE_N {
            return bad(format!(
                "n_max = {} exceeds the exhaustive budget of {MAX_EXHAUSTIVE_N} vertices (2^28 labeled graphs)",
                self.n_max
            ));
        }
        if self.n_min == 0 || self.n_min > self.n_max {
            return bad(format!("need 1 <= n_min <= n_max, got {}..{}", self.n_min, self.n_max));
        }
        if let Some(t) = self.t_values.iter().find(|&&t| t < 2) {
            return bad(format!("t must be at least 2, got {t}"));
        }
        if [self.tol, self.eq_tol].iter().any(|v| v.is_nan() || *v <= 0.0) || self.slack.is_nan() || self.slack < 0.0 {
            return bad("tolerances must be positive".into());
        }
        if self.random_trials > 0 && !(2..=MAX_EXHAUSTIVE_N).contains(&self.oracle_n_max) {
            return bad(format!("oracle_n_max must be in 2..={MAX_EXHAUSTIVE_N}"));
        }
        Ok(())
    }

    fn tolerances(&self) -> Tolerances {
        Tolerances {
            slack: self.slack,
            eq_tol: self.eq_tol,
        }
    }

    fn spectral_options(&self) -> SpectralOptions {
        SpectralOptions {
            tol: self.tol,
            max_iter: self.max_iter,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub graph: String,
    pub bound: String,
    pub t: Option<usize>,
    pub label: Option<String>,
    pub lhs: f64,
    pub rhs: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EqualCase {
    pub graph: String,
    pub label: Option<String>,
    pub kind: EqualityKind,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Mismatch {
    pub graph: String,
    pub label: Option<String>,
    pub kind: EqualityKind,
    pub numeric: bool,
    pub structural: bool,
    pub lhs: f64,
    pub rhs: f64,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct CensusEntry {
    pub evaluations: usize,
    /// Some evaluation carried a structural equality predicate.
    pub characterized: bool,
    pub numeric_equal: usize,
    pub structural_equal: usize,
    pub equal_cases: Vec<EqualCase>,
    pub mismatches: Vec<Mismatch>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GapRecord {
    pub gap: f64,
    pub graph: String,
    pub label: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    pub graph: String,
    pub n: usize,
    pub m: usize,
    pub omega: usize,
    pub t: Option<usize>,
    pub bound: String,
    pub label: Option<String>,
    pub lhs: f64,
    pub rhs: f64,
    pub gap: f64,
    pub holds: bool,
    pub equality_numeric: bool,
    pub equality_structural: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OracleTrial {
    pub graph: String,
    pub t: usize,
    pub rho: f64,
    pub lower: f64,
    pub upper: f64,
    pub oracle: f64,
}

impl OracleTrial {
    pub fn difference(&self) -> f64 {
        (self.rho - self.oracle).abs()
    }

    /// Membership up to binary64 rounding of the two independently
    /// evaluated sums (a few ulps of ρ).
    pub fn inside_enclosure(&self) -> bool {
        let ulps = ENCLOSURE_ROUNDING_ULPS * f64::EPSILON * self.rho.abs().max(1.0);
        self.lower - ulps <= self.oracle && self.oracle <= self.upper + ulps
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct OracleSummary {
    pub trials: usize,
    pub max_difference: f64,
    pub outside_enclosure: usize,
    /// Trials differing by more than 1e-6 or falling outside the enclosure.
    pub failures: Vec<OracleTrial>,
}

/// Wall-clock time of a run. Excluded from serialization and comparison so
/// that reports of identical runs are identical.
#[derive(Clone, Copy, Debug, Default)]
pub struct Elapsed(pub Duration);

impl PartialEq for Elapsed {
    fn eq(&self, _: &Self) -> bool {
        true
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub schema_version: u32,
    pub config: SuiteConfig,
    pub complete: bool,
    pub graphs_checked: usize,
    pub bounds_checked: usize,
    pub chains_checked: usize,
    pub nonconverged: usize,
    pub violations: Vec<Violation>,
    pub equality_census: BTreeMap<String, CensusEntry>,
    pub worst_gap: BTreeMap<String, GapRecord>,
    pub oracle: Option<OracleSummary>,
    pub errors: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub rows: Vec<ReportRow>,
    #[serde(skip)]
    pub runtime: Elapsed,
}

impl VerificationReport {
    pub fn mismatch_count(&self) -> usize {
        self.equality_census.values().map(|c| c.mismatches.len()).sum()
    }

    pub fn oracle_failures(&self) -> usize {
        self.oracle.as_ref().map_or(0, |o| o.failures.len())
    }

    /// No violations, no census mismatches, no oracle disagreement, and no
    /// aborted work.
    pub fn is_clean(&self) -> bool {
        self.complete && self.violations.is_empty() && self.mismatch_count() == 0 && self.oracle_failures() == 0
    }

    pub fn exit_code(&self) -> i32 {
        if self.is_clean() {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            message: e.to_string(),
        })
    }

    pub fn to_csv(&self) -> Result<String> {
        if self.rows.is_empty() && self.bounds_checked > 0 {
            return Err(Error::InvalidArgument("report was produced without keep_rows; no rows to export".into()));
        }
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record([
            "graph",
            "n",
            "m",
            "omega",
            "t",
            "bound",
            "label",
            "lhs",
            "rhs",
            "gap",
            "holds",
            "equality_numeric",
            "equality_structural",
        ])
        .map_err(csv_error)?;
        for r in &self.rows {
            let opt = |v: Option<String>| v.unwrap_or_default();
            w.write_record([
                r.graph.clone(),
                r.n.to_string(),
                r.m.to_string(),
                r.omega.to_string(),
                opt(r.t.map(|t| t.to_string())),
                r.bound.clone(),
                opt(r.label.clone()),
                r.lhs.to_string(),
                r.rhs.to_string(),
                r.gap.to_string(),
                r.holds.to_string(),
                r.equality_numeric.to_string(),
                opt(r.equality_structural.map(|s| s.to_string())),
            ])
            .map_err(csv_error)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }

    /// Human-readable summary, one fact per line.
    pub fn summary(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "{} graphs, {} violations ({} bounds checked)",
            self.graphs_checked,
            self.violations.len(),
            self.bounds_checked
        );
        let mismatches = self.mismatch_count();
        if mismatches == 0 {
            let _ = writeln!(s, "census consistent");
        } else {
            let _ = writeln!(s, "census: {mismatches} mismatches");
        }
        if self.nonconverged > 0 {
            let _ = writeln!(s, "{} spectral runs hit the iteration cap", self.nonconverged);
        }
        if let Some(o) = &self.oracle {
            let _ = writeln!(
                s,
                "oracle: {} trials, max difference {:.3e}, {} failures",
                o.trials,
                o.max_difference,
                o.failures.len()
            );
        }
        if !self.complete {
            let _ = writeln!(s, "INCOMPLETE: {} errors", self.errors.len());
        }
        s
    }
}

fn csv_error(e: csv::Error) -> Error {
    Error::Io(e.to_string())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Csv,
}

pub fn emit_report(report: &VerificationReport, format: ReportFormat, path: &Path) -> Result<()> {
    let text = match format {
        ReportFormat::Json => report.to_json(),
        ReportFormat::Csv => report.to_csv()?,
    };
    std::fs::write(path, text)?;
    Ok(())
}

/// All `2^{C(n,2)}` labeled graphs on `n` vertices; graph `k` has the edges
/// whose bits are set in `k`, pairs ordered `(0,1), (0,2), ..., (n-2,n-1)`.
pub fn enumerate_all_graphs(n: usize) -> Result<impl Iterator<Item = Graph>> {
    if n == 0 || n > MAX_EXHAUSTIVE_N {
        return Err(Error::InvalidArgument(format!("exhaustive enumeration needs 1 <= n <= {MAX_EXHAUSTIVE_N}, got {n}")));
    }
    let pairs = pair_list(n);
    let total = 1u64 << pairs.len();
    Ok((0..total).map(move |mask| graph_from_mask(n, &pairs, mask)))
}

fn pair_list(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect()
}

fn graph_from_mask(n: usize, pairs: &[(usize, usize)], mask: u64) -> Graph {
    let mut g = Graph::empty(n);
    for (bit, &(u, v)) in pairs.iter().enumerate() {
        if mask >> bit & 1 == 1 {
            g.insert_edge(u, v);
        }
    }
    g
}

#[derive(Default)]
struct Partial {
    graphs_checked: usize,
    bounds_checked: usize,
    chains_checked: usize,
    nonconverged: usize,
    violations: Vec<Violation>,
    census: BTreeMap<String, CensusEntry>,
    worst_gap: BTreeMap<String, GapRecord>,
    errors: Vec<String>,
    rows: Vec<ReportRow>,
}

impl Partial {
    fn merge(mut self, other: Partial, census_limit: usize) -> Partial {
        self.graphs_checked += other.graphs_checked;
        self.bounds_checked += other.bounds_checked;
        self.chains_checked += other.chains_checked;
        self.nonconverged += other.nonconverged;
        self.violations.extend(other.violations);
        self.errors.extend(other.errors);
        self.rows.extend(other.rows);
        for (key, entry) in other.census {
            let mine = self.census.entry(key).or_default();
            mine.evaluations += entry.evaluations;
            mine.characterized |= entry.characterized;
            mine.numeric_equal += entry.numeric_equal;
            mine.structural_equal += entry.structural_equal;
            let room = census_limit.saturating_sub(mine.equal_cases.len());
            mine.equal_cases.extend(entry.equal_cases.into_iter().take(room));
            mine.mismatches.extend(entry.mismatches);
        }
        for (key, rec) in other.worst_gap {
            match self.worst_gap.get(&key) {
                Some(cur) if cur.gap <= rec.gap => {}
                _ => {
                    self.worst_gap.insert(key, rec);
                }
            }
        }
        self
    }
}

fn census_key(r: &BoundReport) -> String {
    let order = r.label.as_deref().and_then(|l| l.rsplit(',').next()).filter(|l| l.starts_with("s="));
    match (r.t, order) {
        (Some(t), Some(s)) => format!("{}/{s}/t={t}", r.name),
        (Some(t), None) => format!("{}/t={t}", r.name),
        (None, _) => r.name.to_string(),
    }
}

struct GraphInfo<'a> {
    id: &'a str,
    g: &'a Graph,
    omega: usize,
}

struct Recorder<'a> {
    cfg: &'a SuiteConfig,
    out: &'a mut Partial,
}

impl Recorder<'_> {
    fn record(&mut self, info: &GraphInfo<'_>, r: BoundReport, kind: EqualityKind) {
        self.out.bounds_checked += 1;
        if !r.holds {
            self.out.violations.push(Violation {
                graph: info.id.to_string(),
                bound: r.name.to_string(),
                t: r.t,
                label: r.label.clone(),
                lhs: r.lhs,
                rhs: r.rhs,
            });
        }
        let key = census_key(&r);
        let entry = self.out.census.entry(key.clone()).or_default();
        entry.evaluations += 1;
        if r.equality_numeric {
            entry.numeric_equal += 1;
            if entry.equal_cases.len() < self.cfg.census_limit {
                entry.equal_cases.push(EqualCase {
                    graph: info.id.to_string(),
                    label: r.label.clone(),
                    kind,
                });
            }
        } else {
            match self.out.worst_gap.get(&key) {
                Some(cur) if cur.gap <= r.gap => {}
                _ => {
                    self.out.worst_gap.insert(
                        key,
                        GapRecord {
                            gap: r.gap,
                            graph: info.id.to_string(),
                            label: r.label.clone(),
                        },
                    );
                }
            }
        }
        entry.characterized |= r.equality_structural.is_some();
        if r.equality_structural == Some(true) {
            entry.structural_equal += 1;
        }
        if let Some(structural) = r.equality_structural.filter(|&s| s != r.equality_numeric) {
            entry.mismatches.push(Mismatch {
                graph: info.id.to_string(),
                label: r.label.clone(),
                kind,
                numeric: r.equality_numeric,
                structural,
                lhs: r.lhs,
                rhs: r.rhs,
            });
        }
        if self.cfg.keep_rows {
            self.out.rows.push(ReportRow {
                graph: info.id.to_string(),
                n: info.g.n(),
                m: info.g.edge_count(),
                omega: info.omega,
                t: r.t,
                bound: r.name.to_string(),
                label: r.label,
                lhs: r.lhs,
                rhs: r.rhs,
                gap: r.gap,
                holds: r.holds,
                equality_numeric: r.equality_numeric,
                equality_structural: r.equality_structural,
            });
        }
    }

    fn record_all(&mut self, info: &GraphInfo<'_>, reports: Vec<BoundReport>, kind: EqualityKind) {
        for r in reports {
            self.record(info, r, kind);
        }
    }
}

/// Test vectors for the weighted-sum inequalities on one graph and order.
fn vector_battery(n: usize, case: &EqualityCase, random_points: usize, seed: u64) -> Vec<(String, WeightedVector)> {
    let mut out = vec![("uniform".to_string(), WeightedVector::uniform(n))];
    out.extend((0..n).map(|v| (format!("vertex{v}"), WeightedVector::one_hot(n, v))));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for k in 0..random_points {
        // exponential samples normalized to the simplex are uniform on it
        let raw: Vec<f64> = (0..n).map(|_| -(1.0 - rng.gen::<f64>()).ln()).collect();
        if let Ok(x) = WeightedVector::sum_normalized(raw) {
            out.push((format!("random{k}"), x));
        }
    }
    if let Some(w) = equality_witness(case, n) {
        out.push(("witness".to_string(), w));
    }
    out
}

fn graph_seed(seed: u64, n: usize, index: u64) -> u64 {
    seed ^ (n as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ index.wrapping_mul(0xD1B5_4A32_D192_ED03)
}

fn spectral_of(catalog: &CliqueCatalog, cfg: &SuiteConfig, out: &mut Partial) -> Result<SpectralResult> {
    let r = spectral_radius_of_catalog(catalog, cfg.spectral_options())?;
    if !r.converged {
        out.nonconverged += 1;
    }
    Ok(r)
}

fn check_graph(g: &Graph, cfg: &SuiteConfig, seed: u64, out: &mut Partial) -> Result<()> {
    let id = g.compact_id();
    let tol = cfg.tolerances();
    let edges = build_catalog(g, 2)?;
    let info = GraphInfo {
        id: &id,
        g,
        omega: edges.omega,
    };
    let case2 = equality_case(&edges);
    let rho2 = if cfg.spectral { Some(spectral_of(&edges, cfg, out)?) } else { None };
    out.graphs_checked += 1;

    let mut rec = Recorder { cfg, out };
    rec.record_all(&info, classical_bounds(&edges, rho2.as_ref(), &case2, &tol)?, case2.kind);

    let singles = if cfg.weighted_battery { Some(build_catalog(g, 1)?) } else { None };
    let mut lower_orders: Vec<CliqueCatalog> = Vec::new();
    for &t in &cfg.t_values {
        if t > info.omega {
            continue;
        }
        let catalog = if t == 2 { edges.clone() } else { build_catalog(g, t)? };
        let case = if t == 2 { case2.clone() } else { equality_case(&catalog) };
        let rho = match (&rho2, cfg.spectral) {
            (Some(r), true) if t == 2 => Some(r.clone()),
            (_, true) => Some(spectral_of(&catalog, cfg, rec.out)?),
            _ => None,
        };
        rec.record_all(&info, order_bounds(&catalog, rho.as_ref(), &case, &tol)?, case.kind);

        for chain in chain_relations(&catalog) {
            rec.out.chains_checked += 1;
            if !chain.holds(cfg.slack) {
                rec.out.violations.push(Violation {
                    graph: id.clone(),
                    bound: chain.name.to_string(),
                    t: Some(t),
                    label: None,
                    lhs: chain.lhs,
                    rhs: chain.rhs,
                });
            }
        }

        if let Some(singles) = &singles {
            // s-clique catalogs for the Maclaurin orders 1..t-1
            for s in 2..t {
                if lower_orders.iter().all(|c| c.t != s) {
                    lower_orders.push(build_catalog(g, s)?);
                }
            }
            let battery = vector_battery(g.n(), &case, cfg.random_points, seed ^ t as u64);
            for (label, x) in &battery {
                rec.record(&info, weighted_clique_sum(g, &catalog, x, &tol)?.with_label(label), case.kind);
                rec.record(&info, vertex_weighted_sum(g, &catalog, x, &tol)?.with_label(label), case.kind);
                for s in 1..t {
                    let s_catalog = if s == 1 { singles } else { lower_orders.iter().find(|c| c.t == s).expect("built above") };
                    rec.record(&info, maclaurin_check(g, s_catalog, &catalog, x, &tol)?.with_label(label), case.kind);
                }
            }
        }
    }
    Ok(())
}

fn run_range(cfg: &SuiteConfig, n: usize, pairs: &[(usize, usize)], range: std::ops::Range<u64>) -> Partial {
    let mut out = Partial::default();
    for mask in range {
        let g = graph_from_mask(n, pairs, mask);
        if let Err(e) = check_graph(&g, cfg, graph_seed(cfg.seed, n, mask), &mut out) {
            out.errors.push(format!("{}: {e}", g.compact_id()));
        }
    }
    out
}

/// Random graph, order and comparison for oracle trial `i`.
fn oracle_trial(cfg: &SuiteConfig, i: usize) -> Result<OracleTrial> {
    let mut rng = ChaCha8Rng::seed_from_u64(graph_seed(cfg.seed, 0, i as u64));
    let p = ORACLE_P[i % ORACLE_P.len()];
    let wanted = ORACLE_T[(i / ORACLE_P.len()) % ORACLE_T.len()];
    loop {
        let n = rng.gen_range(2..=cfg.oracle_n_max);
        let g = gnp_random(n, p, rng.gen())?;
        let catalog = build_catalog(&g, 2)?;
        if catalog.omega < 2 {
            continue;
        }
        let t = wanted.min(catalog.omega);
        let catalog = if t == 2 { catalog } else { build_catalog(&g, t)? };
        let r = spectral_radius_of_catalog(&catalog, cfg.spectral_options())?;
        let oracle = oracle_spectral_radius(&g, t, cfg.oracle_restarts, rng.gen());
        return Ok(OracleTrial {
            graph: g.compact_id(),
            t,
            rho: r.rho,
            lower: r.lower,
            upper: r.upper,
            oracle,
        });
    }
}

fn run_oracle_trials(cfg: &SuiteConfig) -> (OracleSummary, Vec<String>) {
    let results: Vec<Result<OracleTrial>> = (0..cfg.random_trials).into_par_iter().map(|i| oracle_trial(cfg, i)).collect();
    let mut summary = OracleSummary::default();
    let mut errors = Vec::new();
    for r in results {
        match r {
            Ok(trial) => {
                summary.trials += 1;
                summary.max_difference = summary.max_difference.max(trial.difference());
                if !trial.inside_enclosure() {
                    summary.outside_enclosure += 1;
                }
                if trial.difference() > 1e-6 || !trial.inside_enclosure() {
                    summary.failures.push(trial);
                }
            }
            Err(e) => errors.push(format!("oracle trial: {e}")),
        }
    }
    (summary, errors)
}

pub fn run_suite(cfg: &SuiteConfig) -> Result<VerificationReport> {
    cfg.validate()?;
    let start = Instant::now();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.parallelism)
        .build()
        .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?;
    let (partial, oracle) = pool.install(|| {
        let mut total = Partial::default();
        for n in cfg.n_min..=cfg.n_max {
            let pairs = pair_list(n);
            let count = 1u64 << pairs.len();
            let chunk = (count / 256).max(1);
            let ranges: Vec<_> = (0..count).step_by(chunk as usize).map(|lo| lo..(lo + chunk).min(count)).collect();
            log::info!("n = {n}: {count} graphs in {} ranges", ranges.len());
            let parts: Vec<Partial> = ranges.into_par_iter().map(|r| run_range(cfg, n, &pairs, r)).collect();
            for p in parts {
                total = total.merge(p, cfg.census_limit);
            }
        }
        let oracle = (cfg.random_trials > 0).then(|| run_oracle_trials(cfg));
        (total, oracle)
    });
    let mut errors = partial.errors;
    let oracle = oracle.map(|(summary, errs)| {
        errors.extend(errs);
        summary
    });
    Ok(VerificationReport {
        schema_version: SCHEMA_VERSION,
        config: cfg.clone(),
        complete: errors.is_empty(),
        graphs_checked: partial.graphs_checked,
        bounds_checked: partial.bounds_checked,
        chains_checked: partial.chains_checked,
        nonconverged: partial.nonconverged,
        violations: partial.violations,
        equality_census: partial.census,
        worst_gap: partial.worst_gap,
        oracle,
        errors,
        rows: partial.rows,
        runtime: Elapsed(start.elapsed()),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CensusRow {
    pub key: String,
    pub evaluations: usize,
    pub numeric_equal: usize,
    pub structural_equal: Option<usize>,
    pub mismatches: usize,
}

/// One row per census key. `structural_equal` is `None` for inequalities
/// without a structural characterization.
pub fn equality_census(report: &VerificationReport) -> Vec<CensusRow> {
    report
        .equality_census
        .iter()
        .map(|(key, e)| CensusRow {
            key: key.clone(),
            evaluations: e.evaluations,
            numeric_equal: e.numeric_equal,
            structural_equal: e.characterized.then_some(e.structural_equal),
            mismatches: e.mismatches.len(),
        })
        .collect()
}

pub fn render_census(rows: &[CensusRow]) -> String {
    let mut s = format!("{:<44} {:>10} {:>10} {:>10} {:>10}\n", "bound", "evaluated", "numeric", "structural", "mismatch");
    for r in rows {
        let structural = r.structural_equal.map_or("-".to_string(), |v| v.to_string());
        let _ = writeln!(
            s,
            "{:<44} {:>10} {:>10} {:>10} {:>10}",
            r.key, r.evaluations, r.numeric_equal, structural, r.mismatches
        );
    }
    s
}
