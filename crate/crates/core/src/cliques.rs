//! Fixed-order clique enumeration, exact clique numbers, and the per-vertex /
//! per-clique statistics (`c_t(v)`, `α(v)`, `α(I)`) that the bounds consume.
//!
//! Graphs with at most 64 vertices run on `u64` rows; larger graphs use the
//! same kernels over [`FixedBitSet`] rows.

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::bits::{VertexBits, WORD_BITS};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// A clique as a strictly increasing vertex list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Clique(Vec<usize>);

impl Clique {
    /// Sorts and checks that `vertices` is a clique of `g`.
    pub fn new(g: &Graph, mut vertices: Vec<usize>) -> Result<Self> {
        vertices.sort_unstable();
        vertices.dedup();
        for &v in &vertices {
            if v >= g.n() {
                return Err(Error::VertexOutOfRange { vertex: v, n: g.n() });
            }
        }
        for (i, &u) in vertices.iter().enumerate() {
            if vertices[i + 1..].iter().any(|&v| !g.has_edge(u, v)) {
                return Err(Error::NotAClique(vertices));
            }
        }
        Ok(Clique(vertices))
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }
}

/// All `t`-cliques of a graph with their local clique statistics.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CliqueCatalog {
    pub t: usize,
    pub omega: usize,
    pub cliques: Vec<Clique>,
    /// `c_t(v)`: number of listed cliques containing `v`.
    #[serde(rename = "c_t")]
    pub per_vertex_count: Vec<usize>,
    /// `α(v)`: order of the largest clique containing `v`.
    #[serde(rename = "alpha_v")]
    pub per_vertex_alpha: Vec<usize>,
    /// `α(I)` for each entry of `cliques`.
    #[serde(rename = "alpha_I")]
    pub per_clique_alpha: Vec<usize>,
}

impl CliqueCatalog {
    pub fn n(&self) -> usize {
        self.per_vertex_count.len()
    }

    pub fn len(&self) -> usize {
        self.cliques.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cliques.is_empty()
    }

    /// Vertices lying in at least one listed clique.
    pub fn covered_vertices(&self) -> Vec<usize> {
        (0..self.n()).filter(|&v| self.per_vertex_count[v] > 0).collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("catalog serializes")
    }
}

fn small(g: &Graph) -> bool {
    g.n() <= WORD_BITS
}

/// Every `t`-clique of `g`, each once, in lexicographic order.
pub fn enumerate_t_cliques(g: &Graph, t: usize) -> Vec<Clique> {
    if small(g) {
        enumerate_with::<u64>(&g.rows(), g.n(), t)
    } else {
        enumerate_with::<FixedBitSet>(&g.rows(), g.n(), t)
    }
}

fn enumerate_with<B: VertexBits>(rows: &[B], n: usize, t: usize) -> Vec<Clique> {
    let mut out = Vec::new();
    if t == 0 || t > n {
        return out;
    }
    let mut stack = Vec::with_capacity(t);
    extend_cliques(rows, t, &mut stack, B::full(n), &mut out);
    out
}

fn extend_cliques<B: VertexBits>(rows: &[B], t: usize, stack: &mut Vec<usize>, cand: B, out: &mut Vec<Clique>) {
    if stack.len() == t {
        out.push(Clique(stack.clone()));
        return;
    }
    let mut rest = cand;
    while let Some(v) = rest.first() {
        rest.remove(v);
        // `rest` now holds only candidates above v, so each clique is built once.
        let mut next = rest.clone();
        next.intersect_with(&rows[v]);
        if stack.len() + 1 + next.count() < t {
            continue;
        }
        stack.push(v);
        extend_cliques(rows, t, stack, next, out);
        stack.pop();
    }
}

/// Exact clique number ω(g): 0 for the empty vertex set.
pub fn max_clique(g: &Graph) -> usize {
    if small(g) {
        max_clique_within::<u64>(&g.rows(), &u64::full(g.n()))
    } else {
        let n = g.n();
        max_clique_within::<FixedBitSet>(&g.rows(), &<FixedBitSet as VertexBits>::full(n))
    }
}

/// Largest clique inside the vertex set `cand`.
pub(crate) fn max_clique_within<B: VertexBits>(rows: &[B], cand: &B) -> usize {
    let mut best = 0;
    let mut order = Vec::new();
    let mut colors = Vec::new();
    expand_max(rows, 0, cand.clone(), &mut best, &mut order, &mut colors);
    best
}

// Branch and bound with a greedy sequential colouring bound.
fn expand_max<B: VertexBits>(
    rows: &[B],
    size: usize,
    cand: B,
    best: &mut usize,
    order: &mut Vec<usize>,
    colors: &mut Vec<usize>,
) {
    if cand.is_empty() {
        *best = (*best).max(size);
        return;
    }
    order.clear();
    colors.clear();
    let mut uncolored = cand.clone();
    let mut color = 0;
    while !uncolored.is_empty() {
        color += 1;
        let mut q = uncolored.clone();
        while let Some(v) = q.first() {
            q.remove(v);
            q.difference_with(&rows[v]);
            uncolored.remove(v);
            order.push(v);
            colors.push(color);
        }
    }
    let local_order = std::mem::take(order);
    let local_colors = std::mem::take(colors);
    let mut p = cand;
    for k in (0..local_order.len()).rev() {
        if size + local_colors[k] <= *best {
            break;
        }
        let v = local_order[k];
        let mut next = p.clone();
        next.intersect_with(&rows[v]);
        expand_max(rows, size + 1, next, best, order, colors);
        p.remove(v);
    }
    *order = local_order;
    *colors = local_colors;
}

/// α(I): order of the largest clique of `g` containing the clique `i`.
pub fn alpha_clique(g: &Graph, i: &[usize]) -> Result<usize> {
    let clique = Clique::new(g, i.to_vec())?;
    Ok(if small(g) {
        alpha_with::<u64>(&g.rows(), g.n(), clique.vertices())
    } else {
        alpha_with::<FixedBitSet>(&g.rows(), g.n(), clique.vertices())
    })
}

/// α(v) = 1 + ω(G[N(v)]).
pub fn alpha_vertex(g: &Graph, v: usize) -> Result<usize> {
    if v >= g.n() {
        return Err(Error::VertexOutOfRange { vertex: v, n: g.n() });
    }
    alpha_clique(g, &[v])
}

fn alpha_with<B: VertexBits>(rows: &[B], n: usize, clique: &[usize]) -> usize {
    let mut common = B::full(n);
    for &v in clique {
        common.intersect_with(&rows[v]);
    }
    clique.len() + max_clique_within(rows, &common)
}

/// Builds the catalog of `t`-cliques of `g` (`t >= 1`).
pub fn build_catalog(g: &Graph, t: usize) -> Result<CliqueCatalog> {
    if t == 0 {
        return Err(Error::InvalidArgument("clique order must be at least 1".into()));
    }
    Ok(if small(g) {
        catalog_with::<u64>(g, t)
    } else {
        catalog_with::<FixedBitSet>(g, t)
    })
}

fn catalog_with<B: VertexBits>(g: &Graph, t: usize) -> CliqueCatalog {
    let n = g.n();
    let rows: Vec<B> = g.rows();
    let cliques = enumerate_with(&rows, n, t);
    let mut per_vertex_count = vec![0; n];
    for c in &cliques {
        for &v in c.vertices() {
            per_vertex_count[v] += 1;
        }
    }
    let per_vertex_alpha: Vec<usize> = (0..n).map(|v| alpha_with(&rows, n, &[v])).collect();
    let per_clique_alpha = cliques.iter().map(|c| alpha_with(&rows, n, c.vertices())).collect();
    let omega = per_vertex_alpha.iter().copied().max().unwrap_or(0);
    CliqueCatalog {
        t,
        omega,
        cliques,
        per_vertex_count,
        per_vertex_alpha,
        per_clique_alpha,
    }
}

/// Spanning subgraph keeping exactly the edges of `g` that lie in some
/// `t`-clique of `g`.
pub fn t_clique_core(g: &Graph, t: usize) -> Result<Graph> {
    if t < 2 {
        return Err(Error::InvalidArgument(format!("core needs t >= 2, got {t}")));
    }
    Ok(core_from_cliques(g.n(), &enumerate_t_cliques(g, t)))
}

pub(crate) fn core_from_cliques(n: usize, cliques: &[Clique]) -> Graph {
    let mut core = Graph::empty(n);
    for c in cliques {
        let vs = c.vertices();
        for (i, &u) in vs.iter().enumerate() {
            for &v in &vs[i + 1..] {
                core.insert_edge(u, v);
            }
        }
    }
    core
}

/// Components of the hypergraph whose hyperedges are the listed cliques.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HypergraphComponents {
    /// Each component sorted; components ordered by smallest vertex.
    pub components: Vec<Vec<usize>>,
    /// Vertices lying in no clique.
    pub free: Vec<usize>,
}

pub fn hypergraph_components(catalog: &CliqueCatalog, n: usize) -> HypergraphComponents {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut v: usize) -> usize {
        while parent[v] != v {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        v
    }
    let mut covered = vec![false; n];
    for c in &catalog.cliques {
        let vs = c.vertices();
        for &v in vs {
            covered[v] = true;
        }
        for &v in &vs[1..] {
            let (a, b) = (find(&mut parent, vs[0]), find(&mut parent, v));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut by_root: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    let mut free = Vec::new();
    for (v, &is_covered) in covered.iter().enumerate() {
        if is_covered {
            let r = find(&mut parent, v);
            by_root.entry(r).or_default().push(v);
        } else {
            free.push(v);
        }
    }
    let mut components: Vec<Vec<usize>> = by_root.into_values().collect();
    components.sort_by_key(|c| c[0]);
    HypergraphComponents { components, free }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::complete_multipartite;

    fn diamond() -> Graph {
        complete_multipartite(&[1, 1, 2]).unwrap()
    }

    fn k4_with_triangle() -> Graph {
        Graph::from_edges(6, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (3, 4), (3, 5), (4, 5)]).unwrap()
    }

    fn listed(cs: &[Clique]) -> Vec<Vec<usize>> {
        cs.iter().map(|c| c.vertices().to_vec()).collect()
    }

    #[test]
    fn enumerate_examples() {
        let oct = complete_multipartite(&[2, 2, 2]).unwrap();
        assert_eq!(enumerate_t_cliques(&oct, 3).len(), 8);
        assert_eq!(listed(&enumerate_t_cliques(&diamond(), 3)), vec![vec![0, 1, 2], vec![0, 1, 3]]);
        assert!(enumerate_t_cliques(&Graph::path(4), 3).is_empty());
        assert_eq!(enumerate_t_cliques(&Graph::complete(5), 4).len(), 5);
        assert_eq!(enumerate_t_cliques(&Graph::complete(3), 1).len(), 3);
    }

    #[test]
    fn enumeration_is_lexicographic() {
        let cs = enumerate_t_cliques(&Graph::complete(6), 3);
        let mut sorted = cs.clone();
        sorted.sort();
        assert_eq!(cs, sorted);
        assert_eq!(cs.len(), 20);
    }

    #[test]
    fn max_clique_examples() {
        assert_eq!(max_clique(&complete_multipartite(&[2, 2, 2]).unwrap()), 3);
        assert_eq!(max_clique(&Graph::petersen()), 2);
        let k5_minus = Graph::from_edges(5, &Graph::complete(5).edges().filter(|&e| e != (0, 1)).collect::<Vec<_>>()).unwrap();
        assert_eq!(max_clique(&k5_minus), 4);
        assert_eq!(max_clique(&Graph::empty(0)), 0);
        assert_eq!(max_clique(&Graph::empty(3)), 1);
    }

    #[test]
    fn petersen_is_triangle_free_by_brute_force() {
        let g = Graph::petersen();
        for a in 0..10 {
            for b in a + 1..10 {
                for c in b + 1..10 {
                    assert!(!(g.has_edge(a, b) && g.has_edge(b, c) && g.has_edge(a, c)));
                }
            }
        }
    }

    #[test]
    fn alpha_examples() {
        assert_eq!(alpha_clique(&Graph::complete(5), &[1, 3, 4]).unwrap(), 5);
        assert_eq!(alpha_clique(&diamond(), &[0, 1]).unwrap(), 3);
        assert_eq!(alpha_clique(&diamond(), &[0, 2]).unwrap(), 3);
        assert!(matches!(alpha_clique(&diamond(), &[2, 3]), Err(Error::NotAClique(_))));
        let g = k4_with_triangle();
        assert_eq!(alpha_vertex(&g, 0).unwrap(), 4);
        assert_eq!(alpha_vertex(&g, 4).unwrap(), 3);
        assert_eq!(alpha_vertex(&Graph::empty(3), 1).unwrap(), 1);
        assert!(alpha_vertex(&g, 6).is_err());
    }

    #[test]
    fn catalog_examples() {
        let c = build_catalog(&diamond(), 3).unwrap();
        assert_eq!(c.per_vertex_count, vec![2, 2, 1, 1]);
        assert_eq!(c.per_vertex_alpha, vec![3; 4]);
        assert_eq!(c.per_clique_alpha, vec![3, 3]);
        assert_eq!(c.omega, 3);

        let c = build_catalog(&complete_multipartite(&[2, 2, 2]).unwrap(), 3).unwrap();
        assert_eq!(c.per_vertex_count, vec![4; 6]);
        assert_eq!(c.per_vertex_count.iter().sum::<usize>(), 3 * c.len());

        let c = build_catalog(&Graph::path(4), 3).unwrap();
        assert!(c.is_empty());
        assert_eq!(c.omega, 2);
        assert!(build_catalog(&Graph::path(4), 0).is_err());
    }

    #[test]
    fn catalog_json_field_names() {
        let v: serde_json::Value = serde_json::from_str(&build_catalog(&diamond(), 3).unwrap().to_json()).unwrap();
        for key in ["t", "omega", "cliques", "c_t", "alpha_v", "alpha_I"] {
            assert!(v.get(key).is_some(), "missing {key}");
        }
        assert_eq!(v["cliques"], serde_json::json!([[0, 1, 2], [0, 1, 3]]));
    }

    #[test]
    fn core_examples() {
        let g = Graph::complete(4).padded(5).with_edges(&[(0, 4)]).unwrap();
        let core = t_clique_core(&g, 3).unwrap();
        assert_eq!(core, Graph::complete(4).padded(5));
        let oct = complete_multipartite(&[2, 2, 2]).unwrap();
        assert_eq!(t_clique_core(&oct, 3).unwrap(), oct);
        assert_eq!(t_clique_core(&Graph::cycle(5), 3).unwrap(), Graph::empty(5));
        assert!(t_clique_core(&oct, 1).is_err());
    }

    #[test]
    fn hypergraph_component_examples() {
        let two = Graph::complete(3).disjoint_union(&Graph::complete(3));
        let hc = hypergraph_components(&build_catalog(&two, 3).unwrap(), 6);
        assert_eq!(hc.components, vec![vec![0, 1, 2], vec![3, 4, 5]]);
        assert!(hc.free.is_empty());

        let hc = hypergraph_components(&build_catalog(&diamond(), 3).unwrap(), 4);
        assert_eq!(hc.components, vec![vec![0, 1, 2, 3]]);

        let g = Graph::complete(3).padded(4);
        let hc = hypergraph_components(&build_catalog(&g, 3).unwrap(), 4);
        assert_eq!(hc.components, vec![vec![0, 1, 2]]);
        assert_eq!(hc.free, vec![3]);
    }

    #[test]
    fn triangle_bridging_two_earlier_components() {
        // {2,3,4} joins the components rooted at 0 and 1 after both formed
        let g = Graph::from_edges(7, &[(0, 3), (0, 5), (3, 5), (1, 4), (1, 6), (4, 6), (2, 3), (2, 4), (3, 4)]).unwrap();
        let hc = hypergraph_components(&build_catalog(&g, 3).unwrap(), 7);
        assert_eq!(hc.components, vec![(0..7).collect::<Vec<_>>()]);
    }

    #[test]
    fn wide_path_matches_word_path() {
        // 70 vertices: two K_5 blocks joined by a path; exercises FixedBitSet rows.
        let mut edges = Vec::new();
        for (base, size) in [(0usize, 5usize), (65, 5)] {
            for u in 0..size {
                for v in u + 1..size {
                    edges.push((base + u, base + v));
                }
            }
        }
        for v in 4..65 {
            edges.push((v, v + 1));
        }
        let g = Graph::from_edges(70, &edges).unwrap();
        assert_eq!(max_clique(&g), 5);
        assert_eq!(enumerate_t_cliques(&g, 4).len(), 10);
        let c = build_catalog(&g, 3).unwrap();
        assert_eq!(c.per_vertex_alpha[30], 2);
        assert_eq!(c.per_vertex_alpha[66], 5);
        assert_eq!(alpha_clique(&g, &[4, 5]).unwrap(), 2);
    }
}
