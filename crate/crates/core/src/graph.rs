//! Simple undirected graphs on dense vertex ids `0..n`.
//!
//! Adjacency is stored as one bitset row per vertex (`words` 64-bit words
//! each). Graphs are built once and then only read; every operation here is
//! pure.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bits::{words_for, VertexBits, WORD_BITS};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    words: usize,
    adj: Vec<u64>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        let words = words_for(n);
        Graph {
            n,
            words,
            adj: vec![0; n * words],
        }
    }

    /// Builds a graph from an edge list. Duplicate edges collapse.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            g.check_vertex(u)?;
            g.check_vertex(v)?;
            if u == v {
                return Err(Error::SelfLoop { line: 0, vertex: u });
            }
            g.insert_edge(u, v);
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                g.insert_edge(u, v);
            }
        }
        g
    }

    pub fn cycle(n: usize) -> Self {
        let mut g = Graph::empty(n);
        if n >= 3 {
            for u in 0..n {
                g.insert_edge(u, (u + 1) % n);
            }
        }
        g
    }

    pub fn path(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for u in 1..n {
            g.insert_edge(u - 1, u);
        }
        g
    }

    /// The Petersen graph: outer 5-cycle, inner pentagram, spokes.
    pub fn petersen() -> Self {
        let mut g = Graph::empty(10);
        for i in 0..5 {
            g.insert_edge(i, (i + 1) % 5);
            g.insert_edge(5 + i, 5 + (i + 2) % 5);
            g.insert_edge(i, 5 + i);
        }
        g
    }

    /// Disjoint union; vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let mut g = Graph::empty(self.n + other.n);
        for (u, v) in self.edges() {
            g.insert_edge(u, v);
        }
        for (u, v) in other.edges() {
            g.insert_edge(self.n + u, self.n + v);
        }
        g
    }

    /// Copy of `self` with the extra edges inserted.
    pub fn with_edges(&self, edges: &[(usize, usize)]) -> Result<Graph> {
        let mut g = self.clone();
        for &(u, v) in edges {
            g.check_vertex(u)?;
            g.check_vertex(v)?;
            if u == v {
                return Err(Error::SelfLoop { line: 0, vertex: u });
            }
            g.insert_edge(u, v);
        }
        Ok(g)
    }

    /// Copy of `self` on `n` vertices (`n >= self.n()`), new vertices isolated.
    pub fn padded(&self, n: usize) -> Graph {
        assert!(n >= self.n);
        let mut g = Graph::empty(n);
        for (u, v) in self.edges() {
            g.insert_edge(u, v);
        }
        g
    }

    pub(crate) fn insert_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u != v && u < self.n && v < self.n);
        self.adj[u * self.words + v / WORD_BITS] |= 1u64 << (v % WORD_BITS);
        self.adj[v * self.words + u / WORD_BITS] |= 1u64 << (u % WORD_BITS);
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n })
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|w| w.count_ones() as usize).sum::<usize>() / 2
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && (self.adj[u * self.words + v / WORD_BITS] >> (v % WORD_BITS)) & 1 == 1
    }

    /// Raw adjacency words of `v`.
    #[inline]
    pub fn row_words(&self, v: usize) -> &[u64] {
        &self.adj[v * self.words..(v + 1) * self.words]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.row_words(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&u| self.has_edge(v, u))
    }

    /// Edges `(u, v)` with `u < v` in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| (u + 1..self.n).filter(move |&v| self.has_edge(u, v)).map(move |v| (u, v)))
    }

    pub fn is_isolated(&self, v: usize) -> bool {
        self.row_words(v).iter().all(|&w| w == 0)
    }

    pub fn isolated_vertices(&self) -> Vec<usize> {
        (0..self.n).filter(|&v| self.is_isolated(v)).collect()
    }

    /// Adjacency rows converted to a bitset type.
    pub fn rows<B: VertexBits>(&self) -> Vec<B> {
        (0..self.n).map(|v| B::from_words(self.row_words(v), self.n)).collect()
    }

    pub fn complement(&self) -> Graph {
        let mut g = Graph::empty(self.n);
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.has_edge(u, v) {
                    g.insert_edge(u, v);
                }
            }
        }
        g
    }

    /// Compact textual id, e.g. `4:0-1,1-2`.
    pub fn compact_id(&self) -> String {
        let edges: Vec<String> = self.edges().map(|(u, v)| format!("{u}-{v}")).collect();
        format!("{}:{}", self.n, edges.join(","))
    }

    /// Canonical edge-list text: `n <count>` header, then sorted `u v` lines.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("n {}\n", self.n);
        for (u, v) in self.edges() {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }

    /// DIMACS `p edge` text with 1-indexed vertices.
    pub fn to_dimacs(&self) -> String {
        let mut out = format!("p edge {} {}\n", self.n, self.edge_count());
        for (u, v) in self.edges() {
            out.push_str(&format!("e {} {}\n", u + 1, v + 1));
        }
        out
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph({})", self.compact_id())
    }
}

/// Parts of a complete multipartite graph, plus the isolated vertices that
/// were set aside before the decomposition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Partition {
    pub parts: Vec<Vec<usize>>,
    pub isolated: Vec<usize>,
}

impl Partition {
    /// Union of the parts, sorted.
    pub fn support(&self) -> Vec<usize> {
        let mut s: Vec<usize> = self.parts.iter().flatten().copied().collect();
        s.sort_unstable();
        s
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.parts.iter().map(Vec::len).collect()
    }

    pub fn is_balanced(&self) -> bool {
        self.parts.windows(2).all(|w| w[0].len() == w[1].len())
    }
}

/// Parses the plain edge-list format.
///
/// One `u v` pair per line; `#` lines and blank lines are skipped; an
/// optional `n <count>` line fixes the vertex count.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    let mut max_vertex: Option<usize> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens[0] == "n" {
            if tokens.len() != 2 {
                return Err(parse_error(line_no, "header must be `n <count>`"));
            }
            if header.is_some() {
                return Err(parse_error(line_no, "duplicate `n` header"));
            }
            header = Some((parse_index(tokens[1], line_no)?, line_no));
            continue;
        }
        if tokens.len() != 2 {
            return Err(parse_error(line_no, &format!("expected `u v`, found {} tokens", tokens.len())));
        }
        let u = parse_index(tokens[0], line_no)?;
        let v = parse_index(tokens[1], line_no)?;
        if u == v {
            return Err(Error::SelfLoop { line: line_no, vertex: u });
        }
        max_vertex = Some(max_vertex.map_or(u.max(v), |m| m.max(u).max(v)));
        edges.push((u, v));
    }
    let needed = max_vertex.map_or(0, |m| m + 1);
    let n = match header {
        Some((count, line_no)) => {
            if count < needed {
                return Err(parse_error(line_no, &format!("header declares {count} vertices but vertex {} appears", needed - 1)));
            }
            count
        }
        None => needed,
    };
    let mut g = Graph::empty(n);
    for (u, v) in edges {
        g.insert_edge(u, v);
    }
    Ok(g)
}

/// Parses DIMACS `p edge n m` / `e u v` text (1-indexed vertices).
pub fn parse_dimacs(text: &str) -> Result<Graph> {
    let mut graph: Option<Graph> = None;
    let mut declared_edges = 0usize;
    let mut seen_edges = 0usize;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match tokens[0] {
            "c" => continue,
            "p" => {
                if graph.is_some() {
                    return Err(parse_error(line_no, "duplicate `p` line"));
                }
                if tokens.len() != 4 || !matches!(tokens[1], "edge" | "col") {
                    return Err(parse_error(line_no, "expected `p edge <n> <m>`"));
                }
                let n = parse_index(tokens[2], line_no)?;
                declared_edges = parse_index(tokens[3], line_no)?;
                graph = Some(Graph::empty(n));
            }
            "e" => {
                let g = graph.as_mut().ok_or_else(|| parse_error(line_no, "edge line before `p` header (missing header)"))?;
                if tokens.len() != 3 {
                    return Err(parse_error(line_no, "expected `e <u> <v>`"));
                }
                let u = parse_index(tokens[1], line_no)?;
                let v = parse_index(tokens[2], line_no)?;
                for w in [u, v] {
                    if w == 0 || w > g.n() {
                        return Err(parse_error(line_no, &format!("vertex {w} outside 1..={}", g.n())));
                    }
                }
                if u == v {
                    return Err(Error::SelfLoop { line: line_no, vertex: u - 1 });
                }
                g.insert_edge(u - 1, v - 1);
                seen_edges += 1;
            }
            other => return Err(parse_error(line_no, &format!("unknown line type `{other}`"))),
        }
    }
    let g = graph.ok_or_else(|| parse_error(0, "missing `p edge` header"))?;
    if seen_edges != declared_edges {
        log::warn!("DIMACS header declares {declared_edges} edges but {seen_edges} edge lines were read");
    }
    Ok(g)
}

fn parse_error(line: usize, message: &str) -> Error {
    Error::Parse {
        line,
        message: message.to_string(),
    }
}

fn parse_index(token: &str, line: usize) -> Result<usize> {
    token
        .parse::<usize>()
        .map_err(|_| parse_error(line, &format!("`{token}` is not a nonnegative integer")))
}

/// Complete multipartite graph whose parts are consecutive index ranges.
pub fn complete_multipartite(sizes: &[usize]) -> Result<Graph> {
    if sizes.is_empty() {
        return Err(Error::InvalidArgument("part sizes must be nonempty".into()));
    }
    if sizes.contains(&0) {
        return Err(Error::InvalidArgument("part sizes must be positive".into()));
    }
    let n: usize = sizes.iter().sum();
    let mut part_of = Vec::with_capacity(n);
    for (p, &s) in sizes.iter().enumerate() {
        part_of.extend(std::iter::repeat_n(p, s));
    }
    let mut g = Graph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            if part_of[u] != part_of[v] {
                g.insert_edge(u, v);
            }
        }
    }
    Ok(g)
}

/// Part sizes of the Turán graph T(n, r), larger parts first.
pub fn turan_part_sizes(n: usize, r: usize) -> Result<Vec<usize>> {
    if r == 0 || r > n {
        return Err(Error::InvalidArgument(format!("Turán graph needs 1 <= r <= n, got n={n}, r={r}")));
    }
    Ok((0..r).map(|i| n / r + usize::from(i < n % r)).collect())
}

pub fn turan_graph(n: usize, r: usize) -> Result<Graph> {
    complete_multipartite(&turan_part_sizes(n, r)?)
}

/// Erdős–Rényi G(n, p), reproducible from `seed`.
pub fn gnp_random(n: usize, p: f64, seed: u64) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidArgument(format!("edge probability {p} outside [0, 1]")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Graph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.insert_edge(u, v);
            }
        }
    }
    Ok(g)
}

/// Subgraph induced on `set`. The returned map sends new index `i` to the
/// original vertex `map[i]`; vertices keep the order given in `set`.
pub fn induced_subgraph(g: &Graph, set: &[usize]) -> Result<(Graph, Vec<usize>)> {
    for &v in set {
        g.check_vertex(v)?;
    }
    let mut map: Vec<usize> = Vec::with_capacity(set.len());
    for &v in set {
        if !map.contains(&v) {
            map.push(v);
        }
    }
    let mut h = Graph::empty(map.len());
    for i in 0..map.len() {
        for j in i + 1..map.len() {
            if g.has_edge(map[i], map[j]) {
                h.insert_edge(i, j);
            }
        }
    }
    Ok((h, map))
}

/// Connected components, each sorted, ordered by smallest vertex.
pub fn connected_components(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.n();
    let mut seen = vec![false; n];
    let mut comps = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut comp = vec![s];
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for v in g.neighbors(u) {
                if !seen[v] {
                    seen[v] = true;
                    comp.push(v);
                    stack.push(v);
                }
            }
        }
        comp.sort_unstable();
        comps.push(comp);
    }
    comps
}

/// Decomposes `g` as a complete multipartite graph after setting its
/// isolated vertices aside.
///
/// The parts are the connected components of the complement restricted to
/// the non-isolated vertices; the decomposition is accepted iff each of them
/// is independent in `g`. An edgeless graph yields zero parts.
pub fn complete_multipartite_partition(g: &Graph) -> Option<Partition> {
    let isolated = g.isolated_vertices();
    let active: Vec<usize> = (0..g.n()).filter(|&v| !g.is_isolated(v)).collect();
    let (h, map) = induced_subgraph(g, &active).expect("active vertices are in range");
    let parts = spanning_multipartite_parts(&h)?;
    let parts = parts
        .into_iter()
        .map(|p| p.into_iter().map(|i| map[i]).collect())
        .collect();
    Some(Partition { parts, isolated })
}

/// Parts of `g` as a complete multipartite graph on all of its vertices
/// (an edgeless graph is one part), or `None`.
pub(crate) fn spanning_multipartite_parts(g: &Graph) -> Option<Vec<Vec<usize>>> {
    let parts = connected_components(&g.complement());
    for part in &parts {
        for (i, &u) in part.iter().enumerate() {
            if part[i + 1..].iter().any(|&v| g.has_edge(u, v)) {
                return None;
            }
        }
    }
    Some(parts)
}
