//! Spectral radius of the t-clique tensor.
//!
//! The tensor has entry `1/(t-1)!` on every ordering of every t-clique and is
//! never materialised: `(A x^{t-1})_i` is the sum, over cliques containing
//! `i`, of the product of the other members' coordinates.
//!
//! `ρ_t` is computed per hypergraph component with a shifted power method
//! (`y = A x^{t-1} + x^{[t-1]}`, `x ← normalize_t(y^{[1/(t-1)]})`). Every
//! iterate is strictly positive on its component, so the Collatz–Wielandt
//! quotients `(A x^{t-1})_i / x_i^{t-1}` bracket the component's spectral
//! radius; iteration stops once the bracket is narrower than `tol`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cliques::{build_catalog, hypergraph_components, Clique, CliqueCatalog};
use crate::error::{Error, Result};
use crate::graph::Graph;

pub const DEFAULT_TOL: f64 = 1e-10;
pub const DEFAULT_MAX_ITER: usize = 100_000;
const SHIFT: f64 = 1.0;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectralOptions {
    /// Absolute width of the Collatz–Wielandt enclosure at which to stop.
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for SpectralOptions {
    fn default() -> Self {
        SpectralOptions {
            tol: DEFAULT_TOL,
            max_iter: DEFAULT_MAX_ITER,
        }
    }
}

/// Implicit t-clique tensor over a list of cliques.
#[derive(Clone, Copy, Debug)]
pub struct CliqueTensorView<'a> {
    t: usize,
    n: usize,
    cliques: &'a [Clique],
}

impl<'a> CliqueTensorView<'a> {
    pub fn new(catalog: &'a CliqueCatalog) -> Self {
        CliqueTensorView {
            t: catalog.t,
            n: catalog.n(),
            cliques: &catalog.cliques,
        }
    }

    pub fn from_parts(t: usize, n: usize, cliques: &'a [Clique]) -> Self {
        CliqueTensorView { t, n, cliques }
    }

    pub fn order(&self) -> usize {
        self.t
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    fn check(&self, x: &[f64]) -> Result<()> {
        if x.len() != self.n {
            return Err(Error::InvalidVector(format!("length {} but dimension is {}", x.len(), self.n)));
        }
        if let Some((i, v)) = x.iter().enumerate().find(|(_, v)| !v.is_finite() || **v < 0.0) {
            return Err(Error::InvalidVector(format!("entry {i} = {v} is negative or not finite")));
        }
        Ok(())
    }

    /// `A x^{t-1}`.
    pub fn apply(&self, x: &[f64]) -> Result<Vec<f64>> {
        self.check(x)?;
        let mut out = vec![0.0; self.n];
        for c in self.cliques {
            accumulate_clique(c.vertices(), x, &mut out);
        }
        Ok(out)
    }

    /// `A x^t = t · Σ_I x_I` for `x ≥ 0` with `Σ x_i^t = 1`; a lower bound on ρ_t.
    pub fn rayleigh(&self, x: &[f64]) -> Result<f64> {
        self.check(x)?;
        let norm: f64 = x.iter().map(|v| v.powi(self.t as i32)).sum();
        if (norm - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidVector(format!("t-norm^t is {norm}, expected 1")));
        }
        Ok(self.form(x))
    }

    /// The homogeneous form `t · Σ_I x_I` without the normalisation check.
    pub fn form(&self, x: &[f64]) -> f64 {
        let s: f64 = self
            .cliques
            .iter()
            .map(|c| c.vertices().iter().map(|&v| x[v]).product::<f64>())
            .sum();
        self.t as f64 * s
    }
}

// Adds Π_{j≠i} x_j to out[i] for every member i of the clique.
#[inline]
fn accumulate_clique<I: Copy + Into<usize>>(members: &[I], x: &[f64], out: &mut [f64]) {
    let t = members.len();
    // prefix/suffix products avoid dividing by zero coordinates
    let mut prefix = [1.0f64; 16];
    if t <= 15 {
        for k in 0..t {
            prefix[k + 1] = prefix[k] * x[members[k].into()];
        }
        let mut suffix = 1.0;
        for k in (0..t).rev() {
            out[members[k].into()] += prefix[k] * suffix;
            suffix *= x[members[k].into()];
        }
    } else {
        for k in 0..t {
            let p: f64 = (0..t).filter(|&j| j != k).map(|j| x[members[j].into()]).product();
            out[members[k].into()] += p;
        }
    }
}

/// Estimate of ρ_t with a certified Collatz–Wielandt enclosure.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectralResult {
    pub t: usize,
    pub rho: f64,
    pub lower: f64,
    pub upper: f64,
    pub iterations: usize,
    pub converged: bool,
    /// Vertices carrying the reported eigenvector.
    pub component: Vec<usize>,
    /// Nonnegative, `Σ x_i^t = 1`, zero outside `component`.
    pub vector: Vec<f64>,
}

impl SpectralResult {
    fn zero(t: usize, n: usize) -> Self {
        SpectralResult {
            t,
            rho: 0.0,
            lower: 0.0,
            upper: 0.0,
            iterations: 0,
            converged: true,
            component: Vec::new(),
            vector: vec![0.0; n],
        }
    }

    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("spectral result serializes")
    }
}

/// Shifted power iteration restricted to one hypergraph component.
///
/// `component` must be a union of cliques of `view` forming a single
/// connected clique hypergraph; cliques not inside it are ignored.
pub fn power_iteration(view: &CliqueTensorView<'_>, component: &[usize], tol: f64, max_iter: usize) -> Result<SpectralResult> {
    if component.is_empty() {
        return Err(Error::InvalidArgument("power iteration needs a nonempty component".into()));
    }
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidArgument(format!("tolerance must be positive, got {tol}")));
    }
    let t = view.t;
    if t < 2 {
        return Err(Error::InvalidArgument(format!("tensor order must be at least 2, got {t}")));
    }
    let n = view.n;
    let mut local = vec![u32::MAX; n];
    for (i, &v) in component.iter().enumerate() {
        if v >= n {
            return Err(Error::VertexOutOfRange { vertex: v, n });
        }
        local[v] = i as u32;
    }
    let mut flat: Vec<u32> = Vec::new();
    for c in view.cliques {
        if c.vertices().iter().all(|&v| local[v] != u32::MAX) {
            flat.extend(c.vertices().iter().map(|&v| local[v]));
        }
    }
    if flat.is_empty() {
        return Err(Error::InvalidArgument("component contains no clique".into()));
    }
    let m = component.len();
    let inv = 1.0 / (t - 1) as f64;
    let powm1 = |v: f64| v.powi(t as i32 - 1);

    let mut x = vec![(m as f64).powf(-1.0 / t as f64); m];
    let mut ax = vec![0.0; m];
    let mut iterations = 0;
    let mut converged = false;
    let (lower, upper) = loop {
        ax.iter_mut().for_each(|v| *v = 0.0);
        for members in flat.chunks_exact(t) {
            accumulate_local(members, &x, &mut ax);
        }
        let (lo, hi) = ax
            .iter()
            .zip(&x)
            .map(|(&a, &xi)| a / powm1(xi))
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), q| (lo.min(q), hi.max(q)));
        if hi - lo <= tol {
            converged = true;
            break (lo, hi);
        }
        if iterations >= max_iter {
            break (lo, hi);
        }
        iterations += 1;
        for (xi, &a) in x.iter_mut().zip(&ax) {
            *xi = (a + SHIFT * powm1(*xi)).powf(inv);
        }
        normalize_t(&mut x, t);
    };
    let mut rho = t as f64 * flat.chunks_exact(t).map(|c| c.iter().map(|&v| x[v as usize]).product::<f64>()).sum::<f64>();
    rho = rho.clamp(lower, upper);
    if !converged {
        log::debug!("power iteration stopped after {iterations} iterations with enclosure [{lower}, {upper}]");
    }
    let mut vector = vec![0.0; n];
    for (i, &v) in component.iter().enumerate() {
        vector[v] = x[i];
    }
    Ok(SpectralResult {
        t,
        rho,
        lower,
        upper,
        iterations,
        converged,
        component: component.to_vec(),
        vector,
    })
}

#[inline]
fn accumulate_local(members: &[u32], x: &[f64], out: &mut [f64]) {
    let t = members.len();
    match t {
        2 => {
            let (a, b) = (members[0] as usize, members[1] as usize);
            out[a] += x[b];
            out[b] += x[a];
        }
        3 => {
            let (a, b, c) = (members[0] as usize, members[1] as usize, members[2] as usize);
            out[a] += x[b] * x[c];
            out[b] += x[a] * x[c];
            out[c] += x[a] * x[b];
        }
        _ => {
            let idx: Vec<usize> = members.iter().map(|&v| v as usize).collect();
            accumulate_clique(&idx, x, out);
        }
    }
}

fn normalize_t(x: &mut [f64], t: usize) {
    let s: f64 = x.iter().map(|v| v.powi(t as i32)).sum();
    let scale = s.powf(-1.0 / t as f64);
    x.iter_mut().for_each(|v| *v *= scale);
}

/// ρ_t(g) with a certified enclosure; 0 when `g` has no t-clique.
pub fn spectral_radius(g: &Graph, t: usize, opts: SpectralOptions) -> Result<SpectralResult> {
    if t < 2 {
        return Err(Error::InvalidArgument(format!("t must be at least 2, got {t}")));
    }
    let catalog = build_catalog(g, t)?;
    spectral_radius_of_catalog(&catalog, opts)
}

/// Same as [`spectral_radius`] but reuses an existing catalog.
pub fn spectral_radius_of_catalog(catalog: &CliqueCatalog, opts: SpectralOptions) -> Result<SpectralResult> {
    let t = catalog.t;
    if t < 2 {
        return Err(Error::InvalidArgument(format!("t must be at least 2, got {t}")));
    }
    let n = catalog.n();
    if catalog.is_empty() {
        return Ok(SpectralResult::zero(t, n));
    }
    let view = CliqueTensorView::new(catalog);
    let comps = hypergraph_components(catalog, n).components;
    let results: Vec<SpectralResult> = if comps.len() > 1 {
        comps
            .par_iter()
            .map(|c| power_iteration(&view, c, opts.tol, opts.max_iter))
            .collect::<Result<_>>()?
    } else {
        vec![power_iteration(&view, &comps[0], opts.tol, opts.max_iter)?]
    };
    Ok(merge_components(results))
}

// Maximum over components; ties go to the lower component index.
fn merge_components(results: Vec<SpectralResult>) -> SpectralResult {
    let lower = results.iter().map(|r| r.lower).fold(f64::NEG_INFINITY, f64::max);
    let upper = results.iter().map(|r| r.upper).fold(f64::NEG_INFINITY, f64::max);
    let converged = results.iter().all(|r| r.converged);
    let iterations = results.iter().map(|r| r.iterations).max().unwrap_or(0);
    let mut best = 0;
    for (i, r) in results.iter().enumerate() {
        if r.rho > results[best].rho {
            best = i;
        }
    }
    let mut out = results.into_iter().nth(best).expect("at least one component");
    out.rho = out.rho.clamp(lower, upper);
    out.lower = lower;
    out.upper = upper;
    out.converged = converged;
    out.iterations = iterations;
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::complete_multipartite;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn apply_examples() {
        let cat = build_catalog(&complete_multipartite(&[1, 1, 2]).unwrap(), 3).unwrap();
        let view = CliqueTensorView::new(&cat);
        assert_eq!(view.apply(&[1.0; 4]).unwrap(), vec![2.0, 2.0, 1.0, 1.0]);
        assert_eq!(view.apply(&[0.0; 4]).unwrap(), vec![0.0; 4]);

        let cat = build_catalog(&Graph::complete(3), 2).unwrap();
        let view = CliqueTensorView::new(&cat);
        assert_eq!(view.apply(&[1.0, 2.0, 3.0]).unwrap(), vec![5.0, 4.0, 3.0]);
        assert!(view.apply(&[1.0, -1.0, 0.0]).is_err());
        assert!(view.apply(&[1.0, f64::NAN, 0.0]).is_err());
        assert!(view.apply(&[1.0]).is_err());
    }

    #[test]
    fn rayleigh_examples() {
        let cat = build_catalog(&complete_multipartite(&[2, 2, 2]).unwrap(), 3).unwrap();
        let view = CliqueTensorView::new(&cat);
        let u = vec![6f64.powf(-1.0 / 3.0); 6];
        assert!(close(view.rayleigh(&u).unwrap(), 4.0, 1e-12));

        let cat = build_catalog(&complete_multipartite(&[1, 1, 2]).unwrap(), 3).unwrap();
        let view = CliqueTensorView::new(&cat);
        let u = vec![4f64.powf(-1.0 / 3.0); 4];
        assert!(close(view.rayleigh(&u).unwrap(), 1.5, 1e-12));
        assert_eq!(view.rayleigh(&[0.0, 1.0, 0.0, 0.0]).unwrap(), 0.0);
        assert!(view.rayleigh(&[1.0, 1.0, 0.0, 0.0]).is_err());
    }

    #[test]
    fn rayleigh_is_homogeneous() {
        let cat = build_catalog(&Graph::complete(4), 3).unwrap();
        let view = CliqueTensorView::new(&cat);
        let x = [0.3, 0.5, 0.7, 0.2];
        for c in [0.5f64, 2.0] {
            let scaled: Vec<f64> = x.iter().map(|v| v * c).collect();
            assert!(close(view.form(&scaled), c.powi(3) * view.form(&x), 1e-12));
        }
    }

    #[test]
    fn power_iteration_examples() {
        let r = spectral_radius(&Graph::complete(4), 3, SpectralOptions::default()).unwrap();
        assert!(r.converged && close(r.rho, 3.0, 1e-9));
        let r = spectral_radius(&complete_multipartite(&[1, 1, 2]).unwrap(), 3, SpectralOptions::default()).unwrap();
        assert!(close(r.rho, 2f64.powf(2.0 / 3.0), 1e-9));
        assert!(r.lower <= r.rho && r.rho <= r.upper && r.width() <= 1e-10);

        let two = Graph::complete(3).disjoint_union(&Graph::complete(3));
        let cat = build_catalog(&two, 3).unwrap();
        let view = CliqueTensorView::new(&cat);
        for comp in [[0, 1, 2], [3, 4, 5]] {
            let r = power_iteration(&view, &comp, 1e-12, 1000).unwrap();
            assert!(close(r.rho, 1.0, 1e-10));
            assert_eq!(r.component, comp.to_vec());
        }
        assert!(power_iteration(&view, &[], 1e-10, 10).is_err());
    }

    #[test]
    fn spectral_radius_examples() {
        let oct = complete_multipartite(&[2, 2, 2]).unwrap();
        for t in [2, 3] {
            let r = spectral_radius(&oct, t, SpectralOptions::default()).unwrap();
            assert!(close(r.rho, 4.0, 1e-9), "t={t}: {}", r.rho);
        }
        let r = spectral_radius(&Graph::cycle(5), 3, SpectralOptions::default()).unwrap();
        assert_eq!((r.rho, r.lower, r.upper), (0.0, 0.0, 0.0));
        assert!(r.converged && r.vector.iter().all(|&v| v == 0.0));
        assert!(spectral_radius(&oct, 1, SpectralOptions::default()).is_err());
    }

    #[test]
    fn vector_is_normalised_and_padded() {
        let g = Graph::complete(4).disjoint_union(&Graph::complete(3)).padded(9);
        let r = spectral_radius(&g, 3, SpectralOptions::default()).unwrap();
        assert!(close(r.rho, 3.0, 1e-9));
        assert_eq!(r.component, vec![0, 1, 2, 3]);
        let s: f64 = r.vector.iter().map(|v| v.powi(3)).sum();
        assert!(close(s, 1.0, 1e-12));
        assert!(r.vector[4..].iter().all(|&v| v == 0.0));
    }

    #[test]
    fn non_convergence_keeps_enclosure() {
        let g = Graph::path(8);
        let r = spectral_radius(&g, 2, SpectralOptions { tol: 1e-14, max_iter: 3 }).unwrap();
        assert!(!r.converged);
        assert!(r.lower <= r.rho && r.rho <= r.upper);
        let exact = 2.0 * (std::f64::consts::PI / 9.0).cos();
        assert!(r.lower <= exact + 1e-12 && exact <= r.upper + 1e-12);
    }

    #[test]
    fn json_has_expected_fields() {
        let r = spectral_radius(&Graph::complete(3), 2, SpectralOptions::default()).unwrap();
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        for key in ["t", "rho", "lower", "upper", "iterations", "converged", "component", "vector"] {
            assert!(v.get(key).is_some(), "missing {key}");
        }
    }
}
