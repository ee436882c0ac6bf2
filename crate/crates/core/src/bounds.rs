//! Turán/Zykov-type inequalities for clique tensors, classical and localized,
//! each evaluated into an auditable [`BoundReport`] together with its
//! equality characterization.
//!
//! Conventions shared by every bound:
//!
//! * A vertex with `α(v) < t` lies in no t-clique and contributes exactly 0 to
//!   every vertex sum (`C(α, t) = 0`).
//! * Sides that depend on ρ carry the certified enclosure. `holds` compares
//!   the most favourable ends (lhs lower end against rhs upper end), so a
//!   reported violation is never an iteration artifact; `equality_numeric`
//!   requires the whole enclosure to sit within `eq_tol · max(1, |rhs|)`.
//! * `equality_structural` is `None` for inequalities without an exact
//!   characterization.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cliques::{core_from_cliques, CliqueCatalog};
use crate::error::{Error, Result};
use crate::graph::{complete_multipartite_partition, induced_subgraph, spanning_multipartite_parts, Graph, Partition};
use crate::spectral::SpectralResult;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundName {
    Nikiforov,
    TuranEdges,
    LocalizedTuran,
    LiuNing,
    ZykovSpectral,
    CliqueCountRho,
    Maclaurin,
    WeightedCliqueSum,
    VertexWeightedSum,
    CliqueAlphaSpectral,
    VertexAlphaSpectralCounts,
    VertexAlphaCountInequality,
    VertexAlphaSpectral,
    CliqueCountVertexAlphaCounts,
    CliqueCountVertexAlpha,
    VertexZykovComparison,
}

impl BoundName {
    pub const ALL: [BoundName; 16] = [
        BoundName::Nikiforov,
        BoundName::TuranEdges,
        BoundName::LocalizedTuran,
        BoundName::LiuNing,
        BoundName::ZykovSpectral,
        BoundName::CliqueCountRho,
        BoundName::Maclaurin,
        BoundName::WeightedCliqueSum,
        BoundName::VertexWeightedSum,
        BoundName::CliqueAlphaSpectral,
        BoundName::VertexAlphaSpectralCounts,
        BoundName::VertexAlphaCountInequality,
        BoundName::VertexAlphaSpectral,
        BoundName::CliqueCountVertexAlphaCounts,
        BoundName::CliqueCountVertexAlpha,
        BoundName::VertexZykovComparison,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            BoundName::Nikiforov => "nikiforov",
            BoundName::TuranEdges => "turan_edges",
            BoundName::LocalizedTuran => "localized_turan",
            BoundName::LiuNing => "liu_ning",
            BoundName::ZykovSpectral => "zykov_spectral",
            BoundName::CliqueCountRho => "clique_count_rho",
            BoundName::Maclaurin => "maclaurin",
            BoundName::WeightedCliqueSum => "weighted_clique_sum",
            BoundName::VertexWeightedSum => "vertex_weighted_sum",
            BoundName::CliqueAlphaSpectral => "clique_alpha_spectral",
            BoundName::VertexAlphaSpectralCounts => "vertex_alpha_spectral_counts",
            BoundName::VertexAlphaCountInequality => "vertex_alpha_count_inequality",
            BoundName::VertexAlphaSpectral => "vertex_alpha_spectral",
            BoundName::CliqueCountVertexAlphaCounts => "clique_count_vertex_alpha_counts",
            BoundName::CliqueCountVertexAlpha => "clique_count_vertex_alpha",
            BoundName::VertexZykovComparison => "vertex_zykov_comparison",
        }
    }

    /// The inequality in plain text, `lhs <= rhs`.
    pub fn anchor(self) -> &'static str {
        match self {
            BoundName::Nikiforov => "rho(G) <= sqrt(2 m (1 - 1/omega))",
            BoundName::TuranEdges => "m <= (1 - 1/omega) n^2 / 2",
            BoundName::LocalizedTuran => "sum_e alpha(e)/(alpha(e)-1) <= n^2 / 2",
            BoundName::LiuNing => "rho(G) <= sqrt(2 sum_e (alpha(e)-1)/alpha(e))",
            BoundName::ZykovSpectral => "rho_t <= (t/omega) C(omega,t)^(1/t) |C_t|^((t-1)/t)",
            BoundName::CliqueCountRho => "|C_t| <= (n/t) rho_t",
            BoundName::Maclaurin => "sum_{I in C_q} C(alpha(I),s)^(q/s) / C(alpha(I),q) x_I <= (sum_{J in C_s} x_J)^(q/s)",
            BoundName::WeightedCliqueSum => "sum_I alpha(I)^t / C(alpha(I),t) x_I <= 1, |x|_1 = 1",
            BoundName::VertexWeightedSum => "sum_I (1/t) sum_{v in I} alpha(v)^t / C(alpha(v),t) x_I <= 1, |x|_1 = 1",
            BoundName::CliqueAlphaSpectral => "(rho_t/t)^t <= (sum_I (C(alpha(I),t) / alpha(I)^t)^(1/(t-1)))^(t-1)",
            BoundName::VertexAlphaSpectralCounts => "rho_t^t <= t (sum_v c_t(v) w(v))^(t-1), w(v) = (C(alpha(v),t)/alpha(v)^t)^(1/(t-1))",
            BoundName::VertexAlphaCountInequality => "sum_v c_t(v)/t w(v) <= (sum_v w(v))^t",
            BoundName::VertexAlphaSpectral => "rho_t <= t (sum_v w(v))^(t-1)",
            BoundName::CliqueCountVertexAlphaCounts => "|C_t| <= n ((1/t) sum_v c_t(v) w(v))^((t-1)/t)",
            BoundName::CliqueCountVertexAlpha => "|C_t| <= n (sum_v w(v))^(t-1)",
            BoundName::VertexZykovComparison => "n (sum_v w(v))^(t-1) <= n^(t-1) sum_v C(alpha(v),t)/alpha(v)^t",
        }
    }

    pub fn uses_rho(self) -> bool {
        matches!(
            self,
            BoundName::Nikiforov
                | BoundName::LiuNing
                | BoundName::ZykovSpectral
                | BoundName::CliqueCountRho
                | BoundName::CliqueAlphaSpectral
                | BoundName::VertexAlphaSpectralCounts
                | BoundName::VertexAlphaSpectral
        )
    }
}

impl fmt::Display for BoundName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Relative slack for `holds`.
    pub slack: f64,
    /// Relative tolerance for `equality_numeric`.
    pub eq_tol: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { slack: 1e-9, eq_tol: 1e-6 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub name: BoundName,
    pub anchor: String,
    pub t: Option<usize>,
    /// Distinguishes several evaluations of one bound on one graph
    /// (test vector, Maclaurin order).
    pub label: Option<String>,
    pub lhs: f64,
    pub rhs: f64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub lhs_enclosure: Option<[f64; 2]>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub rhs_enclosure: Option<[f64; 2]>,
    pub holds: bool,
    pub gap: f64,
    pub equality_numeric: bool,
    pub equality_structural: Option<bool>,
}

impl BoundReport {
    /// Numeric and structural equality disagree.
    pub fn is_mismatch(&self) -> bool {
        self.equality_structural.is_some_and(|s| s != self.equality_numeric)
    }
}

/// One side of an inequality: point value plus an enclosure.
#[derive(Clone, Copy, Debug)]
struct Side {
    value: f64,
    lo: f64,
    hi: f64,
    enclosed: bool,
}

impl Side {
    fn exact(value: f64) -> Self {
        Side {
            value,
            lo: value,
            hi: value,
            enclosed: false,
        }
    }

    /// Image of the ρ enclosure under an increasing map.
    fn of_rho(spec: &SpectralResult, f: impl Fn(f64) -> f64) -> Self {
        Side {
            value: f(spec.rho),
            lo: f(spec.lower),
            hi: f(spec.upper),
            enclosed: true,
        }
    }
}

struct Draft {
    name: BoundName,
    t: Option<usize>,
    label: Option<String>,
    lhs: Side,
    rhs: Side,
    structural: Option<bool>,
}

impl Draft {
    fn new(name: BoundName, t: Option<usize>, lhs: Side, rhs: Side, structural: Option<bool>) -> Self {
        Draft {
            name,
            t,
            label: None,
            lhs,
            rhs,
            structural,
        }
    }

    fn label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    fn finish(self, tol: &Tolerances) -> BoundReport {
        let scale = self.rhs.value.abs().max(1.0);
        let holds = self.lhs.lo <= self.rhs.hi + tol.slack * scale;
        let spread = (self.lhs.lo - self.rhs.hi).abs().max((self.lhs.hi - self.rhs.lo).abs());
        BoundReport {
            name: self.name,
            anchor: self.name.anchor().to_string(),
            t: self.t,
            label: self.label,
            lhs: self.lhs.value,
            rhs: self.rhs.value,
            lhs_enclosure: self.lhs.enclosed.then_some([self.lhs.lo, self.lhs.hi]),
            rhs_enclosure: self.rhs.enclosed.then_some([self.rhs.lo, self.rhs.hi]),
            holds,
            gap: self.rhs.value - self.lhs.value,
            equality_numeric: spread <= tol.eq_tol * scale,
            equality_structural: self.structural,
        }
    }
}

/// Binomial coefficient as a float; 0 when `k > n`.
pub fn binom(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

fn ln_binom(n: usize, k: usize) -> f64 {
    let k = k.min(n - k);
    (0..k).map(|i| ((n - i) as f64).ln() - ((i + 1) as f64).ln()).sum()
}

/// `(C(α,t) / α^t)^(1/(t-1))`, the localized weight of a vertex or clique
/// with largest containing clique of order `alpha`; 0 when `alpha < t`.
pub fn local_weight(alpha: usize, t: usize) -> f64 {
    if alpha < t || t < 2 {
        return 0.0;
    }
    if t >= 4 {
        ((ln_binom(alpha, t) - t as f64 * (alpha as f64).ln()) / (t - 1) as f64).exp()
    } else {
        (binom(alpha, t) / (alpha as f64).powi(t as i32)).powf(1.0 / (t - 1) as f64)
    }
}

/// `α^t / C(α,t)`; 0 when `alpha < t`.
fn clique_coefficient(alpha: usize, t: usize) -> f64 {
    if alpha < t {
        0.0
    } else {
        (alpha as f64).powi(t as i32) / binom(alpha, t)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EqualityKind {
    /// The t-clique core (isolated vertices dropped) is complete t-partite and ω = t.
    MultipartiteOmegaEqT,
    /// The core (isolated vertices dropped) is complete ω-partite with equal parts.
    RegularMultipartite,
    None,
}

impl EqualityKind {
    pub fn as_str(self) -> &'static str {
        match self {
            EqualityKind::MultipartiteOmegaEqT => "multipartite-omega-eq-t",
            EqualityKind::RegularMultipartite => "regular-multipartite",
            EqualityKind::None => "none",
        }
    }
}

impl fmt::Display for EqualityKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Structure of the t-clique core that decides the equality cases.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EqualityCase {
    pub t: usize,
    pub kind: EqualityKind,
    /// Partition of the core's non-isolated vertices, when it is complete multipartite.
    pub partition: Option<Partition>,
    /// Every vertex of the graph lies in some t-clique.
    pub core_spanning: bool,
}

impl EqualityCase {
    pub fn is_multipartite(&self) -> bool {
        self.kind != EqualityKind::None
    }

    pub fn is_regular(&self) -> bool {
        self.kind == EqualityKind::RegularMultipartite
    }
}

pub fn equality_case_predicate(g: &Graph, t: usize) -> Result<EqualityCase> {
    if t < 2 {
        return Err(Error::InvalidArgument(format!("t must be at least 2, got {t}")));
    }
    Ok(equality_case(&crate::cliques::build_catalog(g, t)?))
}

/// [`equality_case_predicate`] from an existing catalog.
pub fn equality_case(catalog: &CliqueCatalog) -> EqualityCase {
    let t = catalog.t;
    let core = core_from_cliques(catalog.n(), &catalog.cliques);
    let partition = complete_multipartite_partition(&core);
    let kind = match &partition {
        Some(p) if p.parts.len() >= 2 && p.parts.len() >= t => {
            if p.is_balanced() {
                EqualityKind::RegularMultipartite
            } else if p.parts.len() == t {
                EqualityKind::MultipartiteOmegaEqT
            } else {
                EqualityKind::None
            }
        }
        _ => EqualityKind::None,
    };
    let core_spanning = catalog.per_vertex_count.iter().all(|&c| c > 0);
    EqualityCase {
        t,
        kind,
        partition: if kind == EqualityKind::None { None } else { partition },
        core_spanning,
    }
}

fn require_order(bound: BoundName, catalog: &CliqueCatalog) -> Result<usize> {
    let t = catalog.t;
    if t < 2 || t > catalog.omega {
        return Err(Error::NotApplicable {
            bound: bound.as_str(),
            reason: format!("needs 2 <= t <= omega, got t={t}, omega={}", catalog.omega),
        });
    }
    Ok(t)
}

fn require_edges(bound: BoundName, catalog: &CliqueCatalog) -> Result<()> {
    if catalog.t != 2 {
        return Err(Error::InvalidArgument(format!("{bound} needs the edge (t = 2) catalog, got t = {}", catalog.t)));
    }
    Ok(())
}

fn require_order_matches(bound: BoundName, catalog: &CliqueCatalog, spec: &SpectralResult) -> Result<()> {
    if spec.t != catalog.t {
        return Err(Error::InvalidArgument(format!("{bound}: spectral result is for t = {}, catalog for t = {}", spec.t, catalog.t)));
    }
    Ok(())
}

fn vertex_weights(catalog: &CliqueCatalog) -> Vec<f64> {
    catalog.per_vertex_alpha.iter().map(|&a| local_weight(a, catalog.t)).collect()
}

/// ρ(G) against `sqrt(2m(1 - 1/ω))`.
pub fn nikiforov_bound(edges: &CliqueCatalog, rho2: &SpectralResult, case2: &EqualityCase, tol: &Tolerances) -> Result<BoundReport> {
    let name = BoundName::Nikiforov;
    require_edges(name, edges)?;
    require_order_matches(name, edges, rho2)?;
    let m = edges.len() as f64;
    let omega = edges.omega.max(1) as f64;
    let rhs = (2.0 * m * (1.0 - 1.0 / omega)).sqrt();
    let structural = edges.is_empty() || case2.is_multipartite();
    Ok(Draft::new(name, None, Side::of_rho(rho2, |r| r), Side::exact(rhs), Some(structural)).finish(tol))
}

/// `|E| <= (1 - 1/ω) n²/2`.
pub fn turan_edge_bound(edges: &CliqueCatalog, case2: &EqualityCase, tol: &Tolerances) -> Result<BoundReport> {
    let name = BoundName::TuranEdges;
    require_edges(name, edges)?;
    let n = edges.n() as f64;
    let omega = edges.omega.max(1) as f64;
    let rhs = (1.0 - 1.0 / omega) * n * n / 2.0;
    let structural = edges.is_empty() || (case2.is_regular() && case2.core_spanning);
    Ok(Draft::new(name, None, Side::exact(edges.len() as f64), Side::exact(rhs), Some(structural)).finish(tol))
}

/// `Σ_e α(e)/(α(e)-1) <= n²/2`.
pub fn localized_turan_sum(edges: &CliqueCatalog, case2: &EqualityCase, tol: &Tolerances) -> Result<BoundReport> {
    let name = BoundName::LocalizedTuran;
    require_edges(name, edges)?;
    let lhs: f64 = edges.per_clique_alpha.iter().map(|&a| a as f64 / (a as f64 - 1.0)).sum();
    let n = edges.n() as f64;
    let structural = !edges.is_empty() && case2.is_regular() && case2.core_spanning;
    Ok(Draft::new(name, None, Side::exact(lhs), Side::exact(n * n / 2.0), Some(structural)).finish(tol))
}

/// ρ(G) against `sqrt(2 Σ_e (α(e)-1)/α(e))`.
pub fn liu_ning_bound(edges: &CliqueCatalog, rho2: &SpectralResult, case2: &EqualityCase, tol: &Tolerances) -> Result<BoundReport> {
    let name = BoundName::LiuNing;
    require_edges(name, edges)?;
    require_order_matches(name, edges, rho2)?;
    let s: f64 = edges.per_clique_alpha.iter().map(|&a| (a as f64 - 1.0) / a as f64).sum();
    let structural = edges.is_empty() || case2.is_multipartite();
    Ok(Draft::new(name, None, Side::of_rho(rho2, |r| r), Side::exact((2.0 * s).sqrt()), Some(structural)).finish(tol))
}

/// ρ_t against `(t/ω) C(ω,t)^{1/t} |C_t|^{(t-1)/t}`.
///
/// Tight exactly when the localized clique bound is tight and every t-clique
/// extends to an ω-clique, which happens iff the core is complete
/// multipartite in either equality shape.
pub fn zykov_spectral_bound(catalog: &CliqueCatalog, rho: &SpectralResult, case: &EqualityCase, tol: &Tolerances) -> Result<BoundReport> {
    let name = BoundName::ZykovSpectral;
    let t = require_order(name, catalog)?;
    require_order_matches(name, catalog, rho)?;
    let tf = t as f64;
    let omega = catalog.omega;
    let rhs = tf / omega as f64 * binom(omega, t).powf(1.0 / tf) * (catalog.len() as f64).powf((tf - 1.0) / tf);
    Ok(Draft::new(name, Some(t), Side::of_rho(rho, |r| r), Side::exact(rhs), Some(case.is_multipartite())).finish(tol))
}

/// `|C_t| <= (n/t) ρ_t`, tight iff every vertex lies in the same number of t-cliques.
pub fn clique_count_vs_rho(catalog: &CliqueCatalog, rho: &SpectralResult, tol: &Tolerances) -> Result<BoundReport> {
    let name = BoundName::CliqueCountRho;
    let t = require_order(name, catalog)?;
    require_order_matches(name, catalog, rho)?;
    let k = catalog.n() as f64 / t as f64;
    let structural = catalog.per_vertex_count.windows(2).all(|w| w[0] == w[1]);
    Ok(Draft::new(name, Some(t), Side::exact(catalog.len() as f64), Side::of_rho(rho, |r| k * r), Some(structural)).finish(tol))
}

/// Closed form `(Π |V_i|)^{(t-1)/t}` for ρ_t of a complete t-partite graph.
pub fn multipartite_rho_formula(sizes: &[usize]) -> Result<f64> {
    let t = sizes.len();
    if t < 2 || sizes.contains(&0) {
        return Err(Error::InvalidArgument(format!("need at least two positive part sizes, got {sizes:?}")));
    }
    let log_prod: f64 = sizes.iter().map(|&s| (s as f64).ln()).sum();
    Ok((log_prod * (t - 1) as f64 / t as f64).exp())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Normalization {
    /// `Σ x_i = 1`.
    Sum,
    /// `Σ x_i^t = 1`.
    TNorm(usize),
    Unnormalized,
}

/// Nonnegative vector with a declared normalization.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WeightedVector {
    x: Vec<f64>,
    norm: Normalization,
}

impl WeightedVector {
    pub fn new(x: Vec<f64>, norm: Normalization) -> Result<Self> {
        if let Some((i, v)) = x.iter().enumerate().find(|(_, v)| !v.is_finite() || **v < 0.0) {
            return Err(Error::InvalidVector(format!("entry {i} = {v} is negative or not finite")));
        }
        let total = match norm {
            Normalization::Sum => Some(x.iter().sum::<f64>()),
            Normalization::TNorm(t) => Some(x.iter().map(|v| v.powi(t as i32)).sum::<f64>()),
            Normalization::Unnormalized => None,
        };
        if let Some(total) = total {
            if (total - 1.0).abs() > 1e-9 {
                return Err(Error::InvalidVector(format!("{norm:?} normalization is {total}, expected 1")));
            }
        }
        Ok(WeightedVector { x, norm })
    }

    /// Rescales a nonnegative, nonzero vector to unit sum.
    pub fn sum_normalized(mut x: Vec<f64>) -> Result<Self> {
        let s: f64 = x.iter().sum();
        if s.is_nan() || s <= 0.0 || !s.is_finite() {
            return Err(Error::InvalidVector("cannot normalize a zero vector".into()));
        }
        x.iter_mut().for_each(|v| *v /= s);
        WeightedVector::new(x, Normalization::Sum)
    }

    pub fn uniform(n: usize) -> Self {
        WeightedVector {
            x: vec![1.0 / n as f64; n],
            norm: Normalization::Sum,
        }
    }

    pub fn one_hot(n: usize, v: usize) -> Self {
        let mut x = vec![0.0; n];
        x[v] = 1.0;
        WeightedVector { x, norm: Normalization::Sum }
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.x
    }

    pub fn normalization(&self) -> Normalization {
        self.norm
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.x.len()).filter(|&i| self.x[i] > 0.0).collect()
    }

    fn clique_product(&self, vertices: &[usize]) -> f64 {
        vertices.iter().map(|&v| self.x[v]).product()
    }
}

/// The vector putting mass `1/k` on each of the `k` parts of a complete
/// multipartite core, spread uniformly inside each part.
pub fn equality_witness(case: &EqualityCase, n: usize) -> Option<WeightedVector> {
    let p = case.partition.as_ref()?;
    let k = p.parts.len() as f64;
    let mut x = vec![0.0; n];
    for part in &p.parts {
        for &v in part {
            x[v] = 1.0 / (k * part.len() as f64);
        }
    }
    Some(WeightedVector { x, norm: Normalization::Sum })
}

/// Exact equality structure for the weighted clique sums: `G[supp x]` is
/// complete l-partite with `l >= t`, every part carries the same share of the
/// mass, and every t-clique inside the support (and, for the per-vertex form,
/// every support vertex) has largest containing clique of order exactly `l`.
fn weighted_sum_equality(g: &Graph, catalog: &CliqueCatalog, x: &WeightedVector, per_vertex: bool) -> bool {
    let support = x.support();
    if support.is_empty() {
        return false;
    }
    let (h, map) = induced_subgraph(g, &support).expect("support is in range");
    let Some(parts) = spanning_multipartite_parts(&h) else {
        return false;
    };
    let l = parts.len();
    if l < catalog.t {
        return false;
    }
    let total: f64 = support.iter().map(|&v| x.x[v]).sum();
    let share = total / l as f64;
    if parts
        .iter()
        .any(|p| (p.iter().map(|&i| x.x[map[i]]).sum::<f64>() - share).abs() > 1e-9 * total.max(1.0))
    {
        return false;
    }
    let mut in_support = vec![false; g.n()];
    for &v in &support {
        in_support[v] = true;
    }
    let cliques_ok = catalog
        .cliques
        .iter()
        .zip(&catalog.per_clique_alpha)
        .filter(|(c, _)| c.vertices().iter().all(|&v| in_support[v]))
        .all(|(_, &a)| a == l);
    cliques_ok && (!per_vertex || support.iter().all(|&v| catalog.per_vertex_alpha[v] == l))
}

fn check_len(x: &WeightedVector, n: usize) -> Result<()> {
    if x.x.len() != n {
        return Err(Error::InvalidVector(format!("length {} but graph has {n} vertices", x.x.len())));
    }
    Ok(())
}

/// `Σ_{I∈C_q} C(α(I),s)^{q/s} C(α(I),q)^{-1} x_I <= (Σ_{J∈C_s} x_J)^{q/s}`.
///
/// `s_catalog` lists the s-cliques (vertex singletons for `s = 1`). Only the
/// `s = 1` case carries an equality characterization.
pub fn maclaurin_check(
    g: &Graph,
    s_catalog: &CliqueCatalog,
    q_catalog: &CliqueCatalog,
    x: &WeightedVector,
    tol: &Tolerances,
) -> Result<BoundReport> {
    let name = BoundName::Maclaurin;
    let (s, q) = (s_catalog.t, q_catalog.t);
    if s < 1 || s > q || q > q_catalog.omega {
        return Err(Error::NotApplicable {
            bound: name.as_str(),
            reason: format!("needs 1 <= s <= q <= omega, got s={s}, q={q}, omega={}", q_catalog.omega),
        });
    }
    check_len(x, g.n())?;
    let ratio = q as f64 / s as f64;
    let lhs: f64 = q_catalog
        .cliques
        .iter()
        .zip(&q_catalog.per_clique_alpha)
        .map(|(c, &a)| binom(a, s).powf(ratio) / binom(a, q) * x.clique_product(c.vertices()))
        .sum();
    let h: f64 = s_catalog.cliques.iter().map(|c| x.clique_product(c.vertices())).sum();
    let structural = (s == 1).then(|| weighted_sum_equality(g, q_catalog, x, false));
    Ok(Draft::new(name, Some(q), Side::exact(lhs), Side::exact(h.powf(ratio)), structural)
        .label(format!("s={s}"))
        .finish(tol))
}

fn require_sum_normalized(bound: BoundName, x: &WeightedVector) -> Result<()> {
    if x.norm != Normalization::Sum {
        return Err(Error::InvalidVector(format!("{bound} needs a unit-sum vector")));
    }
    Ok(())
}

/// `Σ_I α(I)^t C(α(I),t)^{-1} x_I <= 1` for `‖x‖₁ = 1`.
pub fn weighted_clique_sum(g: &Graph, catalog: &CliqueCatalog, x: &WeightedVector, tol: &Tolerances) -> Result<BoundReport> {
    let name = BoundName::WeightedCliqueSum;
    let t = require_order(name, catalog)?;
    require_sum_normalized(name, x)?;
    check_len(x, g.n())?;
    let lhs: f64 = catalog
        .cliques
        .iter()
        .zip(&catalog.per_clique_alpha)
        .map(|(c, &a)| clique_coefficient(a, t) * x.clique_product(c.vertices()))
        .sum();
    let structural = weighted_sum_equality(g, catalog, x, false);
    Ok(Draft::new(name, Some(t), Side::exact(lhs), Side::exact(1.0), Some(structural)).finish(tol))
}

/// `Σ_I (1/t) Σ_{v∈I} α(v)^t C(α(v),t)^{-1} x_I <= 1` for `‖x‖₁ = 1`.
pub fn vertex_weighted_sum(g: &Graph, catalog: &CliqueCatalog, x: &WeightedVector, tol: &Tolerances) -> Result<BoundReport> {
    let name = BoundName::VertexWeightedSum;
    let t = require_order(name, catalog)?;
    require_sum_normalized(name, x)?;
    check_len(x, g.n())?;
    let coef: Vec<f64> = catalog.per_vertex_alpha.iter().map(|&a| clique_coefficient(a, t)).collect();
    let lhs: f64 = catalog
        .cliques
        .iter()
        .map(|c| {
            let avg = c.vertices().iter().map(|&v| coef[v]).sum::<f64>() / t as f64;
            avg * x.clique_product(c.vertices())
        })
        .sum();
    let structural = weighted_sum_equality(g, catalog, x, true);
    Ok(Draft::new(name, Some(t), Side::exact(lhs), Side::exact(1.0), Some(structural)).finish(tol))
}

fn clique_weight_sum(catalog: &CliqueCatalog) -> f64 {
    catalog.per_clique_alpha.iter().map(|&a| local_weight(a, catalog.t)).sum()
}

/// The per-clique localized bound solved for ρ_t:
/// `t (Σ_I w(I))^{(t-1)/t}`.
pub fn clique_alpha_rho_bound(catalog: &CliqueCatalog) -> f64 {
    let tf = catalog.t as f64;
    tf * clique_weight_sum(catalog).powf((tf - 1.0) / tf)
}

/// `(ρ_t/t)^t <= (Σ_I w(I))^{t-1}`, `w(I) = (C(α(I),t)/α(I)^t)^{1/(t-1)}`.
pub fn clique_alpha_spectral_bound(catalog: &CliqueCatalog, rho: &SpectralResult, case: &EqualityCase, tol: &Tolerances) -> Result<BoundReport> {
    let name = BoundName::CliqueAlphaSpectral;
    let t = require_order(name, catalog)?;
    require_order_matches(name, catalog, rho)?;
    let tf = t as f64;
    let rhs = clique_weight_sum(catalog).powi(t as i32 - 1);
    let lhs = Side::of_rho(rho, |r| (r / tf).powi(t as i32));
    Ok(Draft::new(name, Some(t), lhs, Side::exact(rhs), Some(case.is_multipartite())).finish(tol))
}

/// `ρ_t^t <= t (Σ_v c_t(v) w(v))^{t-1}`.
pub fn vertex_alpha_spectral_counts_bound(
    catalog: &CliqueCatalog,
    rho: &SpectralResult,
    case: &EqualityCase,
    tol: &Tolerances,
) -> Result<BoundReport> {
    let name = BoundName::VertexAlphaSpectralCounts;
    let t = require_order(name, catalog)?;
    require_order_matches(name, catalog, rho)?;
    let w = vertex_weights(catalog);
    let s: f64 = catalog.per_vertex_count.iter().zip(&w).map(|(&c, &wv)| c as f64 * wv).sum();
    let rhs = t as f64 * s.powi(t as i32 - 1);
    let lhs = Side::of_rho(rho, |r| r.powi(t as i32));
    Ok(Draft::new(name, Some(t), lhs, Side::exact(rhs), Some(case.is_multipartite())).finish(tol))
}

/// `Σ_v c_t(v)/t · w(v) <= (Σ_v w(v))^t`; no ρ involved.
pub fn vertex_alpha_count_inequality(catalog: &CliqueCatalog, case: &EqualityCase, tol: &Tolerances) -> Result<BoundReport> {
    let name = BoundName::VertexAlphaCountInequality;
    let t = require_order(name, catalog)?;
    let w = vertex_weights(catalog);
    let lhs: f64 = catalog.per_vertex_count.iter().zip(&w).map(|(&c, &wv)| c as f64 / t as f64 * wv).sum();
    let rhs = w.iter().sum::<f64>().powi(t as i32);
    Ok(Draft::new(name, Some(t), Side::exact(lhs), Side::exact(rhs), Some(case.is_regular())).finish(tol))
}

/// `ρ_t <= t (Σ_v w(v))^{t-1}`.
pub fn vertex_alpha_spectral_bound(catalog: &CliqueCatalog, rho: &SpectralResult, case: &EqualityCase, tol: &Tolerances) -> Result<BoundReport> {
    let name = BoundName::VertexAlphaSpectral;
    let t = require_order(name, catalog)?;
    require_order_matches(name, catalog, rho)?;
    let rhs = t as f64 * vertex_weights(catalog).iter().sum::<f64>().powi(t as i32 - 1);
    Ok(Draft::new(name, Some(t), Side::of_rho(rho, |r| r), Side::exact(rhs), Some(case.is_regular())).finish(tol))
}

/// `|C_t| <= n ((1/t) Σ_v c_t(v) w(v))^{(t-1)/t}`.
///
/// The rhs scales with `n`, so equality also needs every vertex to lie in a
/// t-clique.
pub fn clique_count_vertex_alpha_counts_bound(catalog: &CliqueCatalog, case: &EqualityCase, tol: &Tolerances) -> Result<BoundReport> {
    let name = BoundName::CliqueCountVertexAlphaCounts;
    let t = require_order(name, catalog)?;
    let tf = t as f64;
    let w = vertex_weights(catalog);
    let s: f64 = catalog.per_vertex_count.iter().zip(&w).map(|(&c, &wv)| c as f64 * wv).sum::<f64>() / tf;
    let rhs = catalog.n() as f64 * s.powf((tf - 1.0) / tf);
    let structural = case.is_regular() && case.core_spanning;
    Ok(Draft::new(name, Some(t), Side::exact(catalog.len() as f64), Side::exact(rhs), Some(structural)).finish(tol))
}

/// `|C_t| <= n (Σ_v w(v))^{t-1}`; equality needs a spanning regular core.
pub fn clique_count_vertex_alpha_bound(catalog: &CliqueCatalog, case: &EqualityCase, tol: &Tolerances) -> Result<BoundReport> {
    let name = BoundName::CliqueCountVertexAlpha;
    let t = require_order(name, catalog)?;
    let rhs = catalog.n() as f64 * vertex_weights(catalog).iter().sum::<f64>().powi(t as i32 - 1);
    let structural = case.is_regular() && case.core_spanning;
    Ok(Draft::new(name, Some(t), Side::exact(catalog.len() as f64), Side::exact(rhs), Some(structural)).finish(tol))
}

/// Compares the vertex-localized clique-count bound with the weaker
/// `n^{t-1} Σ_v C(α(v),t)/α(v)^t` (t ≥ 3). The two agree iff `α(v)` is the
/// same for every vertex of the graph.
pub fn vertex_zykov_comparison(catalog: &CliqueCatalog, tol: &Tolerances) -> Result<BoundReport> {
    let name = BoundName::VertexZykovComparison;
    let t = require_order(name, catalog)?;
    if t < 3 {
        return Err(Error::NotApplicable {
            bound: name.as_str(),
            reason: "the comparison needs t >= 3".into(),
        });
    }
    let n = catalog.n() as f64;
    let lhs = n * vertex_weights(catalog).iter().sum::<f64>().powi(t as i32 - 1);
    let raw: f64 = catalog
        .per_vertex_alpha
        .iter()
        .map(|&a| if a < t { 0.0 } else { binom(a, t) / (a as f64).powi(t as i32) })
        .sum();
    let rhs = n.powi(t as i32 - 1) * raw;
    let alphas = &catalog.per_vertex_alpha;
    let structural = alphas.windows(2).all(|w| w[0] == w[1]);
    Ok(Draft::new(name, Some(t), Side::exact(lhs), Side::exact(rhs), Some(structural)).finish(tol))
}

/// A ρ-free consequence linking two of the order-t bounds, `lhs <= rhs`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChainRelation {
    pub name: &'static str,
    pub lhs: f64,
    pub rhs: f64,
}

impl ChainRelation {
    pub fn holds(&self, slack: f64) -> bool {
        self.lhs <= self.rhs + slack * self.rhs.abs().max(1.0)
    }
}

/// Monotonicity between the order-t bounds. Empty unless `2 <= t <= ω`.
pub fn chain_relations(catalog: &CliqueCatalog) -> Vec<ChainRelation> {
    let t = catalog.t;
    if t < 2 || t > catalog.omega {
        return Vec::new();
    }
    let tf = t as f64;
    let e = t as i32 - 1;
    let w = vertex_weights(catalog);
    let w_sum: f64 = w.iter().sum();
    let cw: f64 = catalog.per_vertex_count.iter().zip(&w).map(|(&c, &wv)| c as f64 * wv).sum();
    let clique_sum = clique_weight_sum(catalog).powi(e);
    let omega = catalog.omega;
    let counts_rho = (tf * cw.powi(e)).powf(1.0 / tf);
    let counts_bound = catalog.n() as f64 * (cw / tf).powf((tf - 1.0) / tf);
    vec![
        ChainRelation {
            name: "clique_weights_below_vertex_weights",
            lhs: clique_sum,
            rhs: (cw / tf).powi(e),
        },
        ChainRelation {
            name: "clique_weights_below_zykov_form",
            lhs: clique_sum,
            rhs: binom(omega, t) / (omega as f64).powi(t as i32) * (catalog.len() as f64).powi(e),
        },
        ChainRelation {
            name: "vertex_spectral_above_counts_spectral",
            lhs: counts_rho,
            rhs: tf * w_sum.powi(e),
        },
        ChainRelation {
            name: "clique_count_below_counts_bound",
            lhs: catalog.len() as f64,
            rhs: counts_bound,
        },
        ChainRelation {
            name: "counts_bound_below_vertex_bound",
            lhs: counts_bound,
            rhs: catalog.n() as f64 * w_sum.powi(e),
        },
    ]
}

/// Graph-level bounds that use only the edge catalog (and ρ₂ when given).
pub fn classical_bounds(edges: &CliqueCatalog, rho2: Option<&SpectralResult>, case2: &EqualityCase, tol: &Tolerances) -> Result<Vec<BoundReport>> {
    let mut out = Vec::with_capacity(4);
    if let Some(r) = rho2 {
        out.push(nikiforov_bound(edges, r, case2, tol)?);
    }
    out.push(turan_edge_bound(edges, case2, tol)?);
    out.push(localized_turan_sum(edges, case2, tol)?);
    if let Some(r) = rho2 {
        out.push(liu_ning_bound(edges, r, case2, tol)?);
    }
    Ok(out)
}

/// All order-t bounds that need no test vector; ρ-dependent ones only when
/// `rho` is given. Empty when `t > ω`.
pub fn order_bounds(catalog: &CliqueCatalog, rho: Option<&SpectralResult>, case: &EqualityCase, tol: &Tolerances) -> Result<Vec<BoundReport>> {
    let t = catalog.t;
    if t < 2 || t > catalog.omega {
        return Ok(Vec::new());
    }
    let mut out = Vec::with_capacity(9);
    if let Some(r) = rho {
        out.push(zykov_spectral_bound(catalog, r, case, tol)?);
        out.push(clique_count_vs_rho(catalog, r, tol)?);
        out.push(clique_alpha_spectral_bound(catalog, r, case, tol)?);
        out.push(vertex_alpha_spectral_counts_bound(catalog, r, case, tol)?);
    }
    out.push(vertex_alpha_count_inequality(catalog, case, tol)?);
    if let Some(r) = rho {
        out.push(vertex_alpha_spectral_bound(catalog, r, case, tol)?);
    }
    out.push(clique_count_vertex_alpha_counts_bound(catalog, case, tol)?);
    out.push(clique_count_vertex_alpha_bound(catalog, case, tol)?);
    if t >= 3 {
        out.push(vertex_zykov_comparison(catalog, tol)?);
    }
    Ok(out)
}

/// Every bound for one graph at one order t.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundSuite {
    pub graph_id: String,
    pub n: usize,
    pub m: usize,
    pub omega: usize,
    pub t: usize,
    pub kind: EqualityKind,
    pub bounds: Vec<BoundReport>,
}

impl BoundSuite {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("bound suite serializes")
    }

    /// One row per bound.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        let opt = |v: Option<String>| v.unwrap_or_default();
        w.write_record([
            "graph",
            "bound",
            "t",
            "label",
            "lhs",
            "rhs",
            "gap",
            "holds",
            "equality_numeric",
            "equality_structural",
        ])
        .expect("in-memory write");
        for b in &self.bounds {
            w.write_record([
                self.graph_id.clone(),
                b.name.to_string(),
                opt(b.t.map(|t| t.to_string())),
                opt(b.label.clone()),
                b.lhs.to_string(),
                b.rhs.to_string(),
                b.gap.to_string(),
                b.holds.to_string(),
                b.equality_numeric.to_string(),
                opt(b.equality_structural.map(|s| s.to_string())),
            ])
            .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv output is utf-8")
    }

    pub fn violations(&self) -> impl Iterator<Item = &BoundReport> {
        self.bounds.iter().filter(|b| !b.holds)
    }
}

/// Evaluates every applicable bound on `g` at order `t`, including the
/// weighted sums on the uniform vector and on the equality witness.
pub fn evaluate_bounds(g: &Graph, t: usize, spectral: crate::spectral::SpectralOptions, tol: &Tolerances) -> Result<BoundSuite> {
    use crate::cliques::build_catalog;
    use crate::spectral::spectral_radius_of_catalog;
    if t < 2 {
        return Err(Error::InvalidArgument(format!("t must be at least 2, got {t}")));
    }
    let edges = build_catalog(g, 2)?;
    let case2 = equality_case(&edges);
    let rho2 = spectral_radius_of_catalog(&edges, spectral)?;
    let mut bounds = classical_bounds(&edges, Some(&rho2), &case2, tol)?;
    let (catalog, rho, case) = if t == 2 {
        (edges.clone(), rho2, case2)
    } else {
        let c = build_catalog(g, t)?;
        let r = spectral_radius_of_catalog(&c, spectral)?;
        let k = equality_case(&c);
        (c, r, k)
    };
    if t <= catalog.omega {
        bounds.extend(order_bounds(&catalog, Some(&rho), &case, tol)?);
        let n = g.n();
        let mut battery = vec![("uniform".to_string(), WeightedVector::uniform(n))];
        if let Some(w) = equality_witness(&case, n) {
            battery.push(("witness".to_string(), w));
        }
        let singles = build_catalog(g, 1)?;
        for (label, x) in &battery {
            bounds.push(weighted_clique_sum(g, &catalog, x, tol)?.with_label(label));
            bounds.push(vertex_weighted_sum(g, &catalog, x, tol)?.with_label(label));
            bounds.push(maclaurin_check(g, &singles, &catalog, x, tol)?.with_label(label));
        }
    }
    Ok(BoundSuite {
        graph_id: g.compact_id(),
        n: g.n(),
        m: g.edge_count(),
        omega: catalog.omega,
        t,
        kind: case.kind,
        bounds,
    })
}

impl BoundReport {
    /// Prefixes `label` onto the report's label.
    pub fn with_label(mut self, label: &str) -> Self {
        self.label = Some(match self.label {
            Some(existing) => format!("{label},{existing}"),
            None => label.to_string(),
        });
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cliques::build_catalog;
    use crate::graph::complete_multipartite;
    use crate::spectral::{spectral_radius_of_catalog, SpectralOptions};

    const TOL: Tolerances = Tolerances { slack: 1e-9, eq_tol: 1e-6 };

    struct Fixture {
        catalog: CliqueCatalog,
        rho: SpectralResult,
        case: EqualityCase,
    }

    fn fixture(g: &Graph, t: usize) -> Fixture {
        let catalog = build_catalog(g, t).unwrap();
        let rho = spectral_radius_of_catalog(&catalog, SpectralOptions::default()).unwrap();
        let case = equality_case(&catalog);
        Fixture { catalog, rho, case }
    }

    fn diamond() -> Graph {
        complete_multipartite(&[1, 1, 2]).unwrap()
    }

    fn octahedron() -> Graph {
        complete_multipartite(&[2, 2, 2]).unwrap()
    }

    fn k4_with_triangle() -> Graph {
        Graph::from_edges(6, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (3, 4), (3, 5), (4, 5)]).unwrap()
    }

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() <= 1e-9 * b.abs().max(1.0)
    }

    #[test]
    fn binomials_and_weights() {
        assert_eq!(binom(5, 2), 10.0);
        assert_eq!(binom(2, 3), 0.0);
        assert!(close(local_weight(3, 3), 27f64.powf(-0.5)));
        assert!(close(local_weight(4, 3), 0.25));
        assert!(close(local_weight(3, 2), 1.0 / 3.0));
        assert_eq!(local_weight(2, 3), 0.0);
        // log-domain branch agrees with the direct formula
        let direct = (binom(9, 5) / 9f64.powi(5)).powf(0.25);
        assert!(close(local_weight(9, 5), direct));
    }

    #[test]
    fn nikiforov_examples() {
        let f = fixture(&octahedron(), 2);
        let r = nikiforov_bound(&f.catalog, &f.rho, &f.case, &TOL).unwrap();
        assert!(close(r.lhs, 4.0) && close(r.rhs, 4.0) && r.equality_numeric && r.equality_structural == Some(true));

        let f = fixture(&diamond(), 2);
        let r = nikiforov_bound(&f.catalog, &f.rho, &f.case, &TOL).unwrap();
        assert!(close(r.lhs, (1.0 + 17f64.sqrt()) / 2.0));
        assert!(close(r.rhs, (20.0f64 / 3.0).sqrt()));
        assert!(r.holds && !r.equality_numeric && r.equality_structural == Some(false));

        let f = fixture(&Graph::complete(2), 2);
        let r = nikiforov_bound(&f.catalog, &f.rho, &f.case, &TOL).unwrap();
        assert!(close(r.lhs, 1.0) && close(r.rhs, 1.0) && r.equality_numeric);

        let f = fixture(&Graph::empty(3), 2);
        let r = nikiforov_bound(&f.catalog, &f.rho, &f.case, &TOL).unwrap();
        assert_eq!((r.lhs, r.rhs), (0.0, 0.0));
    }

    #[test]
    fn turan_examples() {
        let f = fixture(&crate::graph::turan_graph(6, 3).unwrap(), 2);
        let r = turan_edge_bound(&f.catalog, &f.case, &TOL).unwrap();
        assert!(close(r.lhs, 12.0) && close(r.rhs, 12.0) && r.equality_numeric && r.equality_structural == Some(true));
        let f = fixture(&Graph::cycle(5), 2);
        let r = turan_edge_bound(&f.catalog, &f.case, &TOL).unwrap();
        assert!(close(r.rhs, 6.25) && !r.equality_numeric && r.equality_structural == Some(false));
        let f = fixture(&Graph::complete(4), 2);
        let r = turan_edge_bound(&f.catalog, &f.case, &TOL).unwrap();
        assert!(close(r.lhs, 6.0) && r.equality_numeric && r.equality_structural == Some(true));
    }

    #[test]
    fn localized_turan_examples() {
        let f = fixture(&diamond(), 2);
        let r = localized_turan_sum(&f.catalog, &f.case, &TOL).unwrap();
        assert!(close(r.lhs, 7.5) && close(r.rhs, 8.0) && !r.equality_numeric);
        let f = fixture(&octahedron(), 2);
        let r = localized_turan_sum(&f.catalog, &f.case, &TOL).unwrap();
        assert!(close(r.lhs, 18.0) && r.equality_numeric && r.equality_structural == Some(true));
        let f = fixture(&Graph::empty(3), 2);
        let r = localized_turan_sum(&f.catalog, &f.case, &TOL).unwrap();
        assert!(r.lhs == 0.0 && close(r.rhs, 4.5) && r.equality_structural == Some(false));
    }

    #[test]
    fn liu_ning_examples() {
        let f = fixture(&octahedron(), 2);
        let r = liu_ning_bound(&f.catalog, &f.rho, &f.case, &TOL).unwrap();
        assert!(close(r.rhs, 4.0) && r.equality_numeric);
        let f = fixture(&diamond(), 2);
        let r = liu_ning_bound(&f.catalog, &f.rho, &f.case, &TOL).unwrap();
        assert!(close(r.rhs, (20.0f64 / 3.0).sqrt()) && !r.equality_numeric);
        let star = complete_multipartite(&[1, 3]).unwrap();
        let f = fixture(&star, 2);
        let r = liu_ning_bound(&f.catalog, &f.rho, &f.case, &TOL).unwrap();
        assert!(close(r.lhs, 3f64.sqrt()) && close(r.rhs, 3f64.sqrt()) && r.equality_numeric && r.equality_structural == Some(true));
    }

    #[test]
    fn zykov_examples() {
        for t in [2, 3] {
            let f = fixture(&octahedron(), t);
            let r = zykov_spectral_bound(&f.catalog, &f.rho, &f.case, &TOL).unwrap();
            assert!(close(r.rhs, 4.0) && r.equality_numeric && r.equality_structural == Some(true), "t={t}");
        }
        let f = fixture(&diamond(), 2);
        let r = zykov_spectral_bound(&f.catalog, &f.rho, &f.case, &TOL).unwrap();
        assert!(close(r.rhs, 2.0 / 3.0 * 3f64.sqrt() * 5f64.sqrt()) && !r.equality_numeric);
        let f = fixture(&Graph::path(4), 3);
        assert!(matches!(
            zykov_spectral_bound(&f.catalog, &f.rho, &f.case, &TOL),
            Err(Error::NotApplicable { .. })
        ));
    }

    #[test]
    fn clique_count_rho_examples() {
        let f = fixture(&Graph::petersen(), 2);
        let r = clique_count_vs_rho(&f.catalog, &f.rho, &TOL).unwrap();
        assert!(close(r.lhs, 15.0) && close(r.rhs, 15.0) && r.equality_numeric && r.equality_structural == Some(true));
        let f = fixture(&Graph::path(3), 2);
        let r = clique_count_vs_rho(&f.catalog, &f.rho, &TOL).unwrap();
        assert!(close(r.rhs, 1.5 * 2f64.sqrt()) && !r.equality_numeric && r.equality_structural == Some(false));
        let f = fixture(&Graph::complete(4), 3);
        let r = clique_count_vs_rho(&f.catalog, &f.rho, &TOL).unwrap();
        assert!(close(r.lhs, 4.0) && close(r.rhs, 4.0) && r.equality_numeric);
    }

    #[test]
    fn multipartite_formula_examples() {
        assert!(close(multipartite_rho_formula(&[1, 1, 2]).unwrap(), 2f64.powf(2.0 / 3.0)));
        assert!(close(multipartite_rho_formula(&[2, 2, 2]).unwrap(), 4.0));
        assert!(close(multipartite_rho_formula(&[1, 1, 1, 1]).unwrap(), 1.0));
        assert!(multipartite_rho_formula(&[3]).is_err());
    }

    #[test]
    fn maclaurin_examples() {
        let g = Graph::complete(3);
        let ones = build_catalog(&g, 1).unwrap();
        let edges = build_catalog(&g, 2).unwrap();
        let r = maclaurin_check(&g, &ones, &edges, &WeightedVector::uniform(3), &TOL).unwrap();
        assert!(close(r.lhs, 1.0) && close(r.rhs, 1.0) && r.equality_numeric && r.equality_structural == Some(true));

        let d = diamond();
        let ones = build_catalog(&d, 1).unwrap();
        let tri = build_catalog(&d, 3).unwrap();
        let r = maclaurin_check(&d, &ones, &tri, &WeightedVector::uniform(4), &TOL).unwrap();
        assert!(close(r.lhs, 0.84375) && close(r.rhs, 1.0) && !r.equality_numeric);

        let zero = WeightedVector::new(vec![0.0; 4], Normalization::Unnormalized).unwrap();
        let r = maclaurin_check(&d, &ones, &tri, &zero, &TOL).unwrap();
        assert_eq!((r.lhs, r.rhs), (0.0, 0.0));

        let edges = build_catalog(&d, 2).unwrap();
        let r = maclaurin_check(&d, &edges, &tri, &WeightedVector::uniform(4), &TOL).unwrap();
        assert!(r.holds && r.equality_structural.is_none());
    }

    #[test]
    fn weighted_clique_sum_examples() {
        let g = Graph::complete(3);
        let c = build_catalog(&g, 2).unwrap();
        let r = weighted_clique_sum(&g, &c, &WeightedVector::uniform(3), &TOL).unwrap();
        assert!(close(r.lhs, 1.0) && r.equality_numeric && r.equality_structural == Some(true));
        let half = WeightedVector::new(vec![0.5, 0.5, 0.0], Normalization::Sum).unwrap();
        let r = weighted_clique_sum(&g, &c, &half, &TOL).unwrap();
        assert!(close(r.lhs, 0.75) && !r.equality_numeric && r.equality_structural == Some(false));
        let c5 = Graph::cycle(5);
        let c = build_catalog(&c5, 3).unwrap();
        assert!(matches!(
            weighted_clique_sum(&c5, &c, &WeightedVector::uniform(5), &TOL),
            Err(Error::NotApplicable { .. })
        ));
    }

    #[test]
    fn weighted_sum_equality_on_a_smaller_clique_component() {
        // K_2 ∪ K_3 with all mass on the K_2: the sum is 1 although the
        // support is only 2-partite while ω = 3.
        let g = Graph::complete(2).disjoint_union(&Graph::complete(3));
        let c = build_catalog(&g, 2).unwrap();
        let x = WeightedVector::new(vec![0.5, 0.5, 0.0, 0.0, 0.0], Normalization::Sum).unwrap();
        let r = weighted_clique_sum(&g, &c, &x, &TOL).unwrap();
        assert!(close(r.lhs, 1.0) && r.equality_numeric && r.equality_structural == Some(true));
    }

    #[test]
    fn vertex_weighted_sum_examples() {
        let d = diamond();
        let c = build_catalog(&d, 3).unwrap();
        let r = vertex_weighted_sum(&d, &c, &WeightedVector::uniform(4), &TOL).unwrap();
        assert!(close(r.lhs, 0.84375) && !r.equality_numeric && r.equality_structural == Some(false));
        let g = Graph::complete(3);
        let c = build_catalog(&g, 2).unwrap();
        let r = vertex_weighted_sum(&g, &c, &WeightedVector::uniform(3), &TOL).unwrap();
        assert!(close(r.lhs, 1.0) && r.equality_numeric);
        let r = vertex_weighted_sum(&g, &c, &WeightedVector::one_hot(3, 1), &TOL).unwrap();
        assert_eq!(r.lhs, 0.0);
        assert!(vertex_weighted_sum(&g, &c, &WeightedVector::new(vec![1.0; 3], Normalization::Unnormalized).unwrap(), &TOL).is_err());
    }

    #[test]
    fn weighted_vector_validation() {
        assert!(WeightedVector::new(vec![0.5, 0.4], Normalization::Sum).is_err());
        assert!(WeightedVector::new(vec![0.5, -0.5, 1.0], Normalization::Unnormalized).is_err());
        let x = WeightedVector::new(vec![0.6f64.powf(0.5), 0.4f64.powf(0.5)], Normalization::TNorm(2)).unwrap();
        assert_eq!(x.support(), vec![0, 1]);
        assert!(WeightedVector::sum_normalized(vec![0.0, 0.0]).is_err());
    }

    #[test]
    fn clique_alpha_spectral_examples() {
        let f = fixture(&octahedron(), 2);
        let r = clique_alpha_spectral_bound(&f.catalog, &f.rho, &f.case, &TOL).unwrap();
        assert!(close(clique_alpha_rho_bound(&f.catalog), 4.0));
        assert!(r.equality_numeric && r.equality_structural == Some(true));

        let f = fixture(&diamond(), 3);
        let r = clique_alpha_spectral_bound(&f.catalog, &f.rho, &f.case, &TOL).unwrap();
        assert!(close(clique_alpha_rho_bound(&f.catalog), 2f64.powf(2.0 / 3.0)));
        assert!(r.equality_numeric && r.equality_structural == Some(true));
        assert_eq!(f.case.kind, EqualityKind::MultipartiteOmegaEqT);

        let f = fixture(&diamond(), 2);
        let r = clique_alpha_spectral_bound(&f.catalog, &f.rho, &f.case, &TOL).unwrap();
        assert!(close(clique_alpha_rho_bound(&f.catalog), (20.0f64 / 3.0).sqrt()));
        assert!(!r.equality_numeric && r.equality_structural == Some(false));
    }

    #[test]
    fn vertex_alpha_spectral_counts_examples() {
        let f = fixture(&diamond(), 3);
        let r = vertex_alpha_spectral_counts_bound(&f.catalog, &f.rho, &f.case, &TOL).unwrap();
        assert!(close(r.lhs, 4.0) && close(r.rhs, 4.0) && r.equality_numeric);
        let f = fixture(&octahedron(), 2);
        let r = vertex_alpha_spectral_counts_bound(&f.catalog, &f.rho, &f.case, &TOL).unwrap();
        assert!(close(r.lhs, 16.0) && close(r.rhs, 16.0) && r.equality_numeric);
        let pendant = Graph::complete(4).padded(5).with_edges(&[(0, 4)]).unwrap();
        let f = fixture(&pendant, 2);
        let r = vertex_alpha_spectral_counts_bound(&f.catalog, &f.rho, &f.case, &TOL).unwrap();
        assert!(r.holds && r.gap > 1e-3 && !r.equality_numeric && r.equality_structural == Some(false));
    }

    #[test]
    fn vertex_alpha_count_inequality_examples() {
        let s27 = 27f64.sqrt();
        let f = fixture(&diamond(), 3);
        let r = vertex_alpha_count_inequality(&f.catalog, &f.case, &TOL).unwrap();
        assert!(close(r.lhs, 2.0 / s27) && close(r.rhs, (4.0 / s27).powi(3)) && !r.equality_numeric);
        assert_eq!(r.equality_structural, Some(false));
        let f = fixture(&octahedron(), 3);
        let r = vertex_alpha_count_inequality(&f.catalog, &f.case, &TOL).unwrap();
        assert!(close(r.lhs, 8.0 / s27) && close(r.rhs, (6.0 / s27).powi(3)) && r.equality_numeric);
        let f = fixture(&Graph::cycle(5), 3);
        assert!(vertex_alpha_count_inequality(&f.catalog, &f.case, &TOL).is_err());
    }

    #[test]
    fn vertex_alpha_spectral_examples() {
        let f = fixture(&octahedron(), 3);
        let r = vertex_alpha_spectral_bound(&f.catalog, &f.rho, &f.case, &TOL).unwrap();
        assert!(close(r.rhs, 4.0) && r.equality_numeric && r.equality_structural == Some(true));
        let f = fixture(&diamond(), 3);
        let r = vertex_alpha_spectral_bound(&f.catalog, &f.rho, &f.case, &TOL).unwrap();
        assert!(close(r.rhs, 16.0 / 9.0) && !r.equality_numeric && r.equality_structural == Some(false));
        let f = fixture(&complete_multipartite(&[3, 3]).unwrap(), 2);
        let r = vertex_alpha_spectral_bound(&f.catalog, &f.rho, &f.case, &TOL).unwrap();
        assert!(close(r.lhs, 3.0) && close(r.rhs, 3.0) && r.equality_numeric);
    }

    #[test]
    fn clique_count_vertex_alpha_counts_examples() {
        let s27 = 27f64.sqrt();
        let f = fixture(&octahedron(), 3);
        let r = clique_count_vertex_alpha_counts_bound(&f.catalog, &f.case, &TOL).unwrap();
        assert!(close(r.rhs, 6.0 * (8.0 / s27).powf(2.0 / 3.0)) && r.equality_numeric && r.equality_structural == Some(true));
        let f = fixture(&diamond(), 3);
        let r = clique_count_vertex_alpha_counts_bound(&f.catalog, &f.case, &TOL).unwrap();
        assert!(close(r.rhs, 4.0 * (2.0 / s27).powf(2.0 / 3.0)) && !r.equality_numeric);
        for t in 2..=5 {
            let f = fixture(&Graph::complete(t), t);
            let r = clique_count_vertex_alpha_counts_bound(&f.catalog, &f.case, &TOL).unwrap();
            assert!(close(r.rhs, 1.0) && r.equality_numeric && r.equality_structural == Some(true), "K_{t}");
        }
    }

    #[test]
    fn clique_count_vertex_alpha_examples() {
        let s27 = 27f64.sqrt();
        let f = fixture(&octahedron(), 3);
        let r = clique_count_vertex_alpha_bound(&f.catalog, &f.case, &TOL).unwrap();
        assert!(close(r.rhs, 8.0) && r.equality_numeric && r.equality_structural == Some(true));
        let f = fixture(&diamond(), 3);
        let r = clique_count_vertex_alpha_bound(&f.catalog, &f.case, &TOL).unwrap();
        assert!(close(r.rhs, 64.0 / 27.0) && !r.equality_numeric);
        let f = fixture(&k4_with_triangle(), 3);
        let r = clique_count_vertex_alpha_bound(&f.catalog, &f.case, &TOL).unwrap();
        assert!(close(r.lhs, 5.0) && close(r.rhs, 6.0 * (4.0 * 0.25 + 2.0 / s27).powi(2)));
        // an isolated vertex breaks equality even though the core is regular
        let f = fixture(&octahedron().padded(7), 3);
        let r = clique_count_vertex_alpha_bound(&f.catalog, &f.case, &TOL).unwrap();
        assert!(f.case.is_regular() && !r.equality_numeric && r.equality_structural == Some(false));
    }

    #[test]
    fn vertex_zykov_comparison_examples() {
        let c = build_catalog(&diamond(), 3).unwrap();
        let r = vertex_zykov_comparison(&c, &TOL).unwrap();
        assert!(close(r.lhs, 64.0 / 27.0) && close(r.rhs, 64.0 / 27.0) && r.equality_numeric && r.equality_structural == Some(true));
        let c = build_catalog(&k4_with_triangle(), 3).unwrap();
        let r = vertex_zykov_comparison(&c, &TOL).unwrap();
        assert!(close(r.rhs, 36.0 * (4.0 / 16.0 + 2.0 / 27.0)) && r.lhs < r.rhs && r.equality_structural == Some(false));
        let c = build_catalog(&octahedron(), 3).unwrap();
        let r = vertex_zykov_comparison(&c, &TOL).unwrap();
        assert!(close(r.lhs, 8.0) && close(r.rhs, 8.0));
        let c = build_catalog(&octahedron(), 2).unwrap();
        assert!(matches!(vertex_zykov_comparison(&c, &TOL), Err(Error::NotApplicable { .. })));
    }

    #[test]
    fn equality_case_examples() {
        let k = equality_case_predicate(&diamond(), 3).unwrap();
        assert_eq!(k.kind, EqualityKind::MultipartiteOmegaEqT);
        assert_eq!(k.partition.unwrap().sizes(), vec![1, 1, 2]);
        assert_eq!(equality_case_predicate(&octahedron(), 2).unwrap().kind, EqualityKind::RegularMultipartite);
        assert_eq!(equality_case_predicate(&octahedron(), 3).unwrap().kind, EqualityKind::RegularMultipartite);
        assert_eq!(equality_case_predicate(&Graph::path(4), 2).unwrap().kind, EqualityKind::None);
        assert_eq!(equality_case_predicate(&diamond(), 2).unwrap().kind, EqualityKind::None);
        assert_eq!(equality_case_predicate(&Graph::cycle(5), 3).unwrap().kind, EqualityKind::None);
        assert!(equality_case_predicate(&diamond(), 1).is_err());
    }

    #[test]
    fn witness_attains_the_weighted_sums() {
        for g in [diamond(), octahedron(), Graph::complete(4), complete_multipartite(&[1, 2, 3]).unwrap()] {
            for t in 2..=crate::cliques::max_clique(&g) {
                let c = build_catalog(&g, t).unwrap();
                let case = equality_case(&c);
                let Some(x) = equality_witness(&case, g.n()) else { continue };
                let r = weighted_clique_sum(&g, &c, &x, &TOL).unwrap();
                assert!((r.lhs - 1.0).abs() <= 1e-9, "{g:?} t={t}: {}", r.lhs);
                assert_eq!(r.equality_structural, Some(true));
            }
        }
    }

    #[test]
    fn chains_hold_and_are_tight_on_the_octahedron() {
        let c = build_catalog(&octahedron(), 3).unwrap();
        let chains = chain_relations(&c);
        assert_eq!(chains.len(), 5);
        for r in &chains {
            assert!(r.holds(1e-9) && close(r.lhs, r.rhs), "{r:?}");
        }
        let c = build_catalog(&k4_with_triangle(), 3).unwrap();
        assert!(chain_relations(&c).iter().all(|r| r.holds(1e-9)));
        assert!(chain_relations(&build_catalog(&Graph::cycle(5), 3).unwrap()).is_empty());
    }

    #[test]
    fn suite_for_the_diamond() {
        let s = evaluate_bounds(&diamond(), 3, SpectralOptions::default(), &TOL).unwrap();
        assert_eq!((s.n, s.m, s.omega, s.t), (4, 5, 3, 3));
        assert_eq!(s.kind, EqualityKind::MultipartiteOmegaEqT);
        assert!(s.violations().next().is_none());
        let by = |name: BoundName| s.bounds.iter().find(|b| b.name == name).unwrap();
        assert!(by(BoundName::CliqueAlphaSpectral).equality_numeric);
        assert!(by(BoundName::VertexAlphaSpectralCounts).equality_numeric);
        assert!(!by(BoundName::VertexAlphaSpectral).equality_numeric);
        let v: serde_json::Value = serde_json::from_str(&s.to_json()).unwrap();
        for key in ["graph_id", "n", "m", "omega", "t", "bounds"] {
            assert!(v.get(key).is_some());
        }
    }
}
