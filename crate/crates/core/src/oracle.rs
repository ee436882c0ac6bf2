//! Independent check on ρ_t by direct maximisation of the variational form
//! `t · Σ_I x_I` over the nonnegative unit t-sphere.
//!
//! Nothing here is shared with [`crate::spectral`] or [`crate::cliques`]:
//! cliques come from brute force over all t-subsets, there is no component
//! decomposition, the starts are random, and the answer is the best form value
//! seen rather than a Collatz–Wielandt bracket. Only ever used as a test
//! oracle.

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::Graph;

const SHIFT: f64 = 0.5;
const MAX_SWEEPS: usize = 200_000;
const STALL_WINDOW: usize = 200;

fn brute_force_cliques(g: &Graph, t: usize) -> Vec<Vec<usize>> {
    (0..g.n())
        .combinations(t)
        .filter(|c| c.iter().tuple_combinations().all(|(&u, &v)| g.has_edge(u, v)))
        .collect()
}

fn form(cliques: &[Vec<usize>], x: &[f64], t: usize) -> f64 {
    t as f64 * cliques.iter().map(|c| c.iter().map(|&v| x[v]).product::<f64>()).sum::<f64>()
}

fn normalize(x: &mut [f64], t: usize) {
    let s: f64 = x.iter().map(|v| v.powi(t as i32)).sum();
    if s > 0.0 {
        let k = s.powf(-1.0 / t as f64);
        x.iter_mut().for_each(|v| *v *= k);
    }
}

/// Best value of the variational form found from `restarts` random positive
/// starts (at least one).
pub fn oracle_spectral_radius(g: &Graph, t: usize, restarts: usize, seed: u64) -> f64 {
    assert!(t >= 2, "oracle needs t >= 2");
    let cliques = brute_force_cliques(g, t);
    if cliques.is_empty() {
        return 0.0;
    }
    let n = g.n();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best = 0.0f64;
    let mut grad = vec![0.0; n];
    for _ in 0..restarts.max(1) {
        let mut x: Vec<f64> = (0..n).map(|_| rng.gen_range(0.05..1.0)).collect();
        normalize(&mut x, t);
        let mut value = form(&cliques, &x, t);
        let mut checkpoint = value;
        for sweep in 1..=MAX_SWEEPS {
            grad.iter_mut().for_each(|v| *v = 0.0);
            for c in &cliques {
                for (k, &i) in c.iter().enumerate() {
                    grad[i] += c.iter().enumerate().filter(|&(j, _)| j != k).map(|(_, &v)| x[v]).product::<f64>();
                }
            }
            for (xi, gi) in x.iter_mut().zip(&grad) {
                *xi = (gi + SHIFT * xi.powi(t as i32 - 1)).powf(1.0 / (t - 1) as f64);
            }
            normalize(&mut x, t);
            value = value.max(form(&cliques, &x, t));
            if sweep % STALL_WINDOW == 0 {
                if value - checkpoint <= 1e-15 * value.max(1.0) {
                    break;
                }
                checkpoint = value;
            }
        }
        best = best.max(value);
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::complete_multipartite;

    #[test]
    fn oracle_examples() {
        let d = complete_multipartite(&[1, 1, 2]).unwrap();
        assert!(oracle_spectral_radius(&d, 3, 50, 7) >= 2f64.powf(2.0 / 3.0) - 1e-6);
        assert!((oracle_spectral_radius(&Graph::complete(4), 2, 3, 1) - 3.0).abs() <= 1e-6);
        assert_eq!(oracle_spectral_radius(&Graph::empty(5), 2, 3, 1), 0.0);
    }

    #[test]
    fn brute_force_counts() {
        assert_eq!(brute_force_cliques(&Graph::complete(5), 3).len(), 10);
        assert_eq!(brute_force_cliques(&Graph::petersen(), 3).len(), 0);
    }
}
