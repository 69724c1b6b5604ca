//! Finite graphs with loops, the standard constructions on them, and exact
//! homomorphism search.
//!
//! Vertices are dense indices `0..n`. Adjacency is a symmetric relation
//! stored as one bit row per vertex; a loop at `v` is the bit `v` in row
//! `v`. Display labels ride along but never influence any computation.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::error::{Error, Guards, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<BitSet>,
    labels: Vec<String>,
}

/// A total function between vertex index spaces.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VertexMap {
    pub image: Vec<usize>,
    pub codomain: usize,
}

impl VertexMap {
    pub fn new(image: Vec<usize>, codomain: usize) -> Result<Self> {
        if let Some(&bad) = image.iter().find(|&&x| x >= codomain) {
            return Err(Error::InvalidInput(format!(
                "image vertex {bad} outside codomain of size {codomain}"
            )));
        }
        Ok(VertexMap { image, codomain })
    }

    pub fn domain(&self) -> usize {
        self.image.len()
    }
}

/// A partition of `0..n` into disjoint nonempty blocks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivRelation {
    block_of: Vec<usize>,
    blocks: Vec<Vec<usize>>,
}

impl EquivRelation {
    /// Builds the relation from arbitrary blocks. Blocks are renumbered by
    /// their minimum member.
    pub fn from_blocks(n: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut block_of = vec![usize::MAX; n];
        for (b, members) in blocks.iter().enumerate() {
            if members.is_empty() {
                return Err(Error::InvalidInput("empty block".into()));
            }
            for &v in members {
                if v >= n {
                    return Err(Error::InvalidInput(format!("vertex {v} out of range")));
                }
                if block_of[v] != usize::MAX {
                    return Err(Error::InvalidInput(format!("vertex {v} in two blocks")));
                }
                block_of[v] = b;
            }
        }
        if let Some(v) = block_of.iter().position(|&b| b == usize::MAX) {
            return Err(Error::InvalidInput(format!("vertex {v} not covered")));
        }
        Ok(Self::from_labels(&block_of))
    }

    /// Builds the relation whose classes are the fibres of `label`.
    pub fn from_labels<T: Eq + std::hash::Hash + Clone>(label: &[T]) -> Self {
        let mut first: std::collections::HashMap<T, usize> = std::collections::HashMap::new();
        let mut block_of = vec![0; label.len()];
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for (v, l) in label.iter().enumerate() {
            let b = *first.entry(l.clone()).or_insert_with(|| {
                blocks.push(Vec::new());
                blocks.len() - 1
            });
            blocks[b].push(v);
            block_of[v] = b;
        }
        // Blocks are created in order of their first member, so they are
        // already sorted by minimum member.
        EquivRelation { block_of, blocks }
    }

    pub fn identity(n: usize) -> Self {
        EquivRelation {
            block_of: (0..n).collect(),
            blocks: (0..n).map(|v| vec![v]).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.block_of.len()
    }

    pub fn is_empty(&self) -> bool {
        self.block_of.is_empty()
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    pub fn block_of(&self, v: usize) -> usize {
        self.block_of[v]
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn projection(&self) -> VertexMap {
        VertexMap {
            image: self.block_of.clone(),
            codomain: self.blocks.len(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StandardGraph {
    Complete(usize),
    Cycle(usize),
    /// Path `0 - 1 - ... - m` with a loop at `0`.
    LoopedPath(usize),
    /// A single looped vertex.
    One,
}

/// A natural number or infinity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Extended {
    Finite(usize),
    Infinite,
}

impl Extended {
    pub fn finite(self) -> Option<usize> {
        match self {
            Extended::Finite(n) => Some(n),
            Extended::Infinite => None,
        }
    }
}

impl std::fmt::Display for Extended {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Extended::Finite(n) => write!(f, "{n}"),
            Extended::Infinite => write!(f, "inf"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GraphStats {
    pub max_degree: usize,
    pub connected: bool,
    /// `None` when the graph is disconnected or empty.
    pub diameter: Option<usize>,
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    n: usize,
    #[serde(default)]
    labels: Vec<String>,
    edges: Vec<[usize; 2]>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![BitSet::new(n); n],
            labels: (0..n).map(|v| v.to_string()).collect(),
        }
    }

    pub fn from_edges<I: IntoIterator<Item = (usize, usize)>>(n: usize, edges: I) -> Result<Self> {
        let mut g = Graph::empty(n);
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidInput(format!("edge ({u},{v}) out of range for n={n}")));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    /// Builds a graph from a symmetric predicate, evaluated on `u <= v`.
    pub fn from_fn(n: usize, mut adjacent: impl FnMut(usize, usize) -> bool) -> Self {
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in u..n {
                if adjacent(u, v) {
                    g.add_edge(u, v);
                }
            }
        }
        g
    }

    pub(crate) fn add_edge(&mut self, u: usize, v: usize) {
        self.adj[u].insert(v);
        self.adj[v].insert(u);
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.n() {
            return Err(Error::InvalidInput(format!(
                "{} labels for {} vertices",
                labels.len(),
                self.n()
            )));
        }
        self.labels = labels;
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    #[inline]
    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    #[inline]
    pub fn has_loop(&self, v: usize) -> bool {
        self.adj[v].contains(v)
    }

    pub fn neighbors(&self, v: usize) -> &BitSet {
        &self.adj[v]
    }

    /// Degree with a loop counting once (the vertex is its own neighbor).
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn loop_count(&self) -> usize {
        (0..self.n()).filter(|&v| self.has_loop(v)).count()
    }

    pub fn has_loops(&self) -> bool {
        (0..self.n()).any(|v| self.has_loop(v))
    }

    pub fn is_reflexive(&self) -> bool {
        (0..self.n()).all(|v| self.has_loop(v))
    }

    pub fn looped_vertices(&self) -> BitSet {
        BitSet::from_indices(self.n(), (0..self.n()).filter(|&v| self.has_loop(v)))
    }

    /// Edges as unordered pairs `u <= v`, loops included.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n() {
            for v in self.adj[u].iter().filter(|&v| v >= u) {
                out.push((u, v));
            }
        }
        out
    }

    /// Number of unordered adjacent pairs, loops included.
    pub fn edge_count(&self) -> usize {
        self.edges().len()
    }

    /// Number of ordered adjacent pairs (the size of the relation).
    pub fn relation_size(&self) -> usize {
        self.adj.iter().map(BitSet::len).sum()
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n()).all(|u| self.adj[u].iter().all(|v| self.adj[v].contains(u)))
    }

    pub fn standard(kind: StandardGraph) -> Result<Self> {
        match kind {
            StandardGraph::Complete(n) => {
                if n == 0 {
                    return Err(Error::InvalidSize("complete graph needs n >= 1".into()));
                }
                Ok(Graph::from_fn(n, |u, v| u != v))
            }
            StandardGraph::Cycle(n) => {
                if n < 3 {
                    return Err(Error::InvalidSize("cycle needs n >= 3".into()));
                }
                Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
            }
            StandardGraph::LoopedPath(m) => {
                Graph::from_edges(m + 1, std::iter::once((0, 0)).chain((0..m).map(|i| (i, i + 1))))
            }
            StandardGraph::One => Graph::from_edges(1, [(0, 0)]),
        }
    }

    pub fn complete(n: usize) -> Result<Self> {
        Graph::standard(StandardGraph::Complete(n))
    }

    pub fn cycle(n: usize) -> Result<Self> {
        Graph::standard(StandardGraph::Cycle(n))
    }

    pub fn one() -> Self {
        Graph::from_edges(1, [(0, 0)]).expect("valid")
    }

    /// The same graph with a loop added at every vertex.
    pub fn reflexive_closure(&self) -> Graph {
        let mut g = self.clone();
        for v in 0..g.n() {
            g.adj[v].insert(v);
        }
        g
    }

    pub fn induced_subgraph(&self, vertices: &[usize]) -> Graph {
        let mut g = Graph::from_fn(vertices.len(), |i, j| self.adjacent(vertices[i], vertices[j]));
        g.labels = vertices.iter().map(|&v| self.labels[v].clone()).collect();
        g
    }

    /// Induced subgraph on the looped vertices, in increasing index order.
    pub fn looped_subgraph(&self) -> Graph {
        let vs = self.looped_vertices().to_vec();
        self.induced_subgraph(&vs)
    }

    pub fn to_json(&self) -> String {
        let j = GraphJson {
            n: self.n(),
            labels: self.labels.clone(),
            edges: self.edges().into_iter().map(|(u, v)| [u, v]).collect(),
        };
        serde_json::to_string(&j).expect("graph serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let j: GraphJson = serde_json::from_str(s)?;
        let g = Graph::from_edges(j.n, j.edges.iter().map(|e| (e[0], e[1])))?;
        if j.labels.is_empty() {
            Ok(g)
        } else {
            g.with_labels(j.labels)
        }
    }
}

/// Categorical product; vertex `(v, w)` has index `v * |H| + w`.
pub fn product(g: &Graph, h: &Graph) -> Graph {
    let nh = h.n();
    let n = g.n() * nh;
    let mut p = Graph::empty(n);
    for v in 0..g.n() {
        for w in 0..nh {
            let a = v * nh + w;
            for v2 in g.neighbors(v) {
                for w2 in h.neighbors(w) {
                    p.adj[a].insert(v2 * nh + w2);
                }
            }
        }
    }
    p.labels = (0..n)
        .map(|i| format!("({},{})", g.labels[i / nh], h.labels[i % nh]))
        .collect();
    p
}

/// Index of the function `f: V(G) -> V(H)` among the vertices of `H^G`:
/// `sum f(v) * |H|^v`.
pub fn encode_function(f: &[usize], codomain: usize) -> usize {
    f.iter().rev().fold(0, |acc, &x| acc * codomain + x)
}

pub fn decode_function(mut idx: usize, domain: usize, codomain: usize) -> Vec<usize> {
    let mut f = Vec::with_capacity(domain);
    for _ in 0..domain {
        f.push(idx % codomain);
        idx /= codomain;
    }
    f
}

fn checked_power(base: usize, exp: usize) -> Option<usize> {
    let mut acc: usize = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base)?;
    }
    Some(acc)
}

/// The exponential graph `H^G`: all vertex maps `V(G) -> V(H)`, with
/// `f ~ f'` iff `f(v) ~ f'(w)` for every ordered adjacent pair `v ~ w`.
pub fn exponential(g: &Graph, h: &Graph, guards: &Guards) -> Result<Graph> {
    let count = checked_power(h.n(), g.n()).ok_or(Error::GuardExceeded {
        what: "exponential vertices",
        needed: u128::MAX,
        limit: guards.exponential_vertices as u128,
    })?;
    Guards::check("exponential vertices", count, guards.exponential_vertices)?;
    let pairs: Vec<(usize, usize)> = (0..g.n())
        .flat_map(|v| g.neighbors(v).iter().map(move |w| (v, w)))
        .collect();
    let funcs: Vec<Vec<usize>> = (0..count).map(|i| decode_function(i, g.n(), h.n())).collect();
    let mut e = Graph::from_fn(count, |a, b| {
        pairs
            .iter()
            .all(|&(v, w)| h.adjacent(funcs[a][v], funcs[b][w]))
    });
    e.labels = funcs
        .iter()
        .map(|f| f.iter().map(usize::to_string).collect::<Vec<_>>().join(","))
        .collect();
    Ok(e)
}

/// Quotient graph: blocks of `r` become vertices, adjacent iff some
/// representatives are.
pub fn quotient(g: &Graph, r: &EquivRelation) -> Result<Graph> {
    if r.len() != g.n() {
        return Err(Error::InvalidInput("relation size does not match graph".into()));
    }
    let k = r.block_count();
    let mut q = Graph::empty(k);
    for (u, v) in g.edges() {
        q.add_edge(r.block_of(u), r.block_of(v));
    }
    q.labels = r
        .blocks()
        .iter()
        .map(|b| g.labels[b[0]].clone())
        .collect();
    Ok(q)
}

pub fn check_homomorphism(f: &VertexMap, g: &Graph, h: &Graph) -> bool {
    if f.domain() != g.n() || f.codomain != h.n() {
        return false;
    }
    g.edges()
        .into_iter()
        .all(|(u, v)| h.adjacent(f.image[u], f.image[v]))
}

/// Variable order for homomorphism search: descending degree, ties by index.
fn search_order(g: &Graph) -> Vec<usize> {
    let mut order: Vec<usize> = (0..g.n()).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    order
}

struct HomSearch<'a> {
    g: &'a Graph,
    h: &'a Graph,
    order: Vec<usize>,
    assignment: Vec<usize>,
    assigned: Vec<bool>,
}

impl<'a> HomSearch<'a> {
    fn new(g: &'a Graph, h: &'a Graph) -> Self {
        HomSearch {
            g,
            h,
            order: search_order(g),
            assignment: vec![usize::MAX; g.n()],
            assigned: vec![false; g.n()],
        }
    }

    fn initial_domains(&self) -> Vec<BitSet> {
        let looped = self.h.looped_vertices();
        let all = BitSet::full(self.h.n());
        (0..self.g.n())
            .map(|v| if self.g.has_loop(v) { looped.clone() } else { all.clone() })
            .collect()
    }

    /// Depth-first search with forward checking. `visit` returns `false`
    /// to stop the search.
    fn run(&mut self, depth: usize, domains: &mut Vec<BitSet>, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if depth == self.order.len() {
            return visit(&self.assignment);
        }
        let v = self.order[depth];
        let candidates = domains[v].clone();
        for x in candidates.iter() {
            self.assignment[v] = x;
            self.assigned[v] = true;
            let mut saved = Vec::new();
            let mut dead = false;
            for u in self.g.neighbors(v).iter() {
                if self.assigned[u] {
                    continue;
                }
                saved.push((u, domains[u].clone()));
                domains[u].intersect_with(self.h.neighbors(x));
                if domains[u].is_empty() {
                    dead = true;
                    break;
                }
            }
            let keep_going = dead || self.run(depth + 1, domains, visit);
            for (u, d) in saved.into_iter().rev() {
                domains[u] = d;
            }
            self.assigned[v] = false;
            if !keep_going {
                return false;
            }
        }
        true
    }
}

/// Finds a graph homomorphism `G -> H` if one exists. The search is
/// deterministic: variables by descending degree then index, values by
/// ascending index.
pub fn find_homomorphism(g: &Graph, h: &Graph) -> Option<VertexMap> {
    let mut search = HomSearch::new(g, h);
    let mut domains = search.initial_domains();
    if g.n() > 0 && domains.iter().any(BitSet::is_empty) {
        return None;
    }
    let mut found = None;
    search.run(0, &mut domains, &mut |a| {
        found = Some(a.to_vec());
        false
    });
    found.map(|image| VertexMap { image, codomain: h.n() })
}

/// All homomorphisms `G -> H`, in lexicographic order of their images.
pub fn all_homomorphisms(g: &Graph, h: &Graph, limit: usize) -> Result<Vec<VertexMap>> {
    let mut search = HomSearch::new(g, h);
    let mut domains = search.initial_domains();
    let mut out: Vec<Vec<usize>> = Vec::new();
    if g.n() > 0 && domains.iter().any(BitSet::is_empty) {
        return Ok(Vec::new());
    }
    let mut over = false;
    search.run(0, &mut domains, &mut |a| {
        if out.len() >= limit {
            over = true;
            return false;
        }
        out.push(a.to_vec());
        true
    });
    if over {
        return Err(Error::GuardExceeded {
            what: "homomorphisms",
            needed: limit as u128 + 1,
            limit: limit as u128,
        });
    }
    out.sort();
    Ok(out
        .into_iter()
        .map(|image| VertexMap { image, codomain: h.n() })
        .collect())
}

/// Exact chromatic number; infinite iff some vertex is looped.
pub fn chromatic_number(g: &Graph) -> Extended {
    if g.has_loops() {
        return Extended::Infinite;
    }
    if g.n() == 0 {
        return Extended::Finite(0);
    }
    let mut k = 1;
    loop {
        let target = Graph::complete(k).expect("k >= 1");
        if find_homomorphism(g, &target).is_some() {
            return Extended::Finite(k);
        }
        k += 1;
    }
}

/// Length of the shortest odd cycle (a loop has length 1); infinite for
/// bipartite loopless graphs.
pub fn odd_girth(g: &Graph) -> Extended {
    let n = g.n();
    let mut best: Option<usize> = None;
    // Shortest odd closed walk through v = distance from (v,0) to (v,1) in
    // the bipartite double cover; the shortest odd closed walk overall is a cycle.
    for s in 0..n {
        let mut dist = vec![usize::MAX; 2 * n];
        let mut queue = VecDeque::new();
        dist[2 * s] = 0;
        queue.push_back(2 * s);
        while let Some(state) = queue.pop_front() {
            let (u, parity) = (state / 2, state % 2);
            let d = dist[state];
            if best.is_some_and(|b| d + 1 >= b) {
                break;
            }
            for w in g.neighbors(u).iter() {
                let next = 2 * w + (1 - parity);
                if dist[next] == usize::MAX {
                    dist[next] = d + 1;
                    queue.push_back(next);
                }
            }
        }
        let d = dist[2 * s + 1];
        if d != usize::MAX {
            best = Some(best.map_or(d, |b| b.min(d)));
        }
    }
    best.map_or(Extended::Infinite, Extended::Finite)
}

/// Breadth-first distances from `s`, ignoring loops. Unreachable vertices
/// get `usize::MAX`.
pub fn bfs_distances(g: &Graph, s: usize) -> Vec<usize> {
    let mut dist = vec![usize::MAX; g.n()];
    let mut queue = VecDeque::new();
    dist[s] = 0;
    queue.push_back(s);
    while let Some(u) = queue.pop_front() {
        for w in g.neighbors(u).iter() {
            if dist[w] == usize::MAX {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    dist
}

pub fn graph_stats(g: &Graph) -> GraphStats {
    let max_degree = (0..g.n()).map(|v| g.degree(v)).max().unwrap_or(0);
    let mut connected = g.n() > 0;
    let mut diameter = 0;
    for s in 0..g.n() {
        let d = bfs_distances(g, s);
        if d.contains(&usize::MAX) {
            connected = false;
            break;
        }
        diameter = diameter.max(d.into_iter().max().unwrap_or(0));
    }
    GraphStats {
        max_degree,
        connected,
        diameter: connected.then_some(diameter),
    }
}

/// Minimum diameter over all spanning trees.
///
/// Uses the absolute 1-center: in an unweighted graph the center sits at a
/// vertex or at an edge midpoint, and a shortest-path tree grown from it
/// has diameter twice the absolute radius.
pub fn min_diameter_spanning_tree(g: &Graph) -> Result<usize> {
    let n = g.n();
    if n == 0 {
        return Err(Error::InvalidInput("empty graph".into()));
    }
    let dist: Vec<Vec<usize>> = (0..n).map(|s| bfs_distances(g, s)).collect();
    if dist[0].contains(&usize::MAX) {
        return Err(Error::Disconnected);
    }
    let mut best = usize::MAX;
    for row in &dist {
        best = best.min(2 * row.iter().copied().max().unwrap_or(0));
    }
    for (u, v) in g.edges() {
        if u == v {
            continue;
        }
        let r = (0..n).map(|x| dist[u][x].min(dist[v][x])).max().unwrap_or(0);
        best = best.min(2 * r + 1);
    }
    Ok(best)
}

/// The common neighborhood `nu(M)`: vertices adjacent to every member of
/// `M`. `nu` of the empty set is the whole vertex set.
pub fn common_neighbors(g: &Graph, m: &BitSet) -> BitSet {
    let mut out = BitSet::full(g.n());
    for u in m.iter() {
        out.intersect_with(g.neighbors(u));
    }
    out
}

/// A graph is fine when `nu M` meets `nu^2 M` for every nonempty `M` with
/// nonempty `nu M`.
pub fn is_fine(g: &Graph, guards: &Guards) -> Result<bool> {
    let n = g.n();
    Guards::check("fineness vertices", n, guards.subset_vertices.min(63))?;
    for mask in 1u64..(1u64 << n) {
        let m = BitSet::from_indices(n, (0..n).filter(|&i| mask >> i & 1 == 1));
        let nu = common_neighbors(g, &m);
        if nu.is_empty() {
            continue;
        }
        let nu2 = common_neighbors(g, &nu);
        if !nu.intersects(&nu2) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Greedy fold test: repeatedly delete a vertex whose neighborhood is
/// contained in another vertex's neighborhood.
pub fn is_dismantlable(g: &Graph) -> Result<bool> {
    if !g.is_reflexive() {
        return Err(Error::NotReflexive);
    }
    if g.n() == 0 {
        return Ok(false);
    }
    let mut alive = BitSet::full(g.n());
    while alive.len() > 1 {
        let dominated = alive.iter().find(|&v| {
            let nv = g.neighbors(v).intersection(&alive);
            alive
                .iter()
                .any(|w| w != v && nv.is_subset(g.neighbors(w)))
        });
        match dominated {
            Some(v) => alive.remove(v),
            None => return Ok(false),
        }
    }
    Ok(true)
}

/// The graph `B G` of nonempty cliques of looped vertices, adjacent when one
/// contains the other.
#[derive(Clone, Debug)]
pub struct CliqueGraph {
    pub graph: Graph,
    /// Clique of each vertex, as sorted vertex lists of the original graph.
    pub cliques: Vec<Vec<usize>>,
}

/// All nonempty cliques of looped vertices, ordered by size then
/// lexicographically.
pub fn looped_cliques(g: &Graph, limit: usize) -> Result<Vec<Vec<usize>>> {
    fn extend(
        g: &Graph,
        current: &mut Vec<usize>,
        candidates: &BitSet,
        out: &mut Vec<Vec<usize>>,
        limit: usize,
    ) -> Result<()> {
        for v in candidates.iter() {
            current.push(v);
            Guards::check("cliques", out.len() + 1, limit)?;
            out.push(current.clone());
            let mut next = candidates.intersection(g.neighbors(v));
            for u in 0..=v {
                next.remove(u);
            }
            extend(g, current, &next, out, limit)?;
            current.pop();
        }
        Ok(())
    }
    let mut out = Vec::new();
    extend(g, &mut Vec::new(), &g.looped_vertices(), &mut out, limit)?;
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(out)
}

pub fn clique_graph_b(g: &Graph, guards: &Guards) -> Result<CliqueGraph> {
    let cliques = looped_cliques(g, guards.cliques)?;
    let sets: Vec<BitSet> = cliques
        .iter()
        .map(|c| BitSet::from_indices(g.n(), c.iter().copied()))
        .collect();
    let mut graph = Graph::from_fn(cliques.len(), |a, b| {
        sets[a].is_subset(&sets[b]) || sets[b].is_subset(&sets[a])
    });
    graph.labels = cliques
        .iter()
        .map(|c| {
            let names: Vec<&str> = c.iter().map(|&v| g.labels[v].as_str()).collect();
            format!("{{{}}}", names.join(","))
        })
        .collect();
    Ok(CliqueGraph { graph, cliques })
}

/// Searches for a graph isomorphism, returning the vertex bijection.
pub fn find_isomorphism(g: &Graph, h: &Graph) -> Option<Vec<usize>> {
    let n = g.n();
    if n != h.n() || g.relation_size() != h.relation_size() {
        return None;
    }
    let sig = |x: &Graph, v: usize| (x.degree(v), x.has_loop(v));
    let mut gs: Vec<_> = (0..n).map(|v| sig(g, v)).collect();
    let mut hs: Vec<_> = (0..n).map(|v| sig(h, v)).collect();
    gs.sort();
    hs.sort();
    if gs != hs {
        return None;
    }
    let order = search_order(g);
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];

    fn go(
        g: &Graph,
        h: &Graph,
        order: &[usize],
        depth: usize,
        map: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        if depth == order.len() {
            return true;
        }
        let v = order[depth];
        for x in 0..h.n() {
            if used[x] || g.degree(v) != h.degree(x) || g.has_loop(v) != h.has_loop(x) {
                continue;
            }
            let consistent = order[..depth]
                .iter()
                .all(|&u| g.adjacent(u, v) == h.adjacent(map[u], x));
            if !consistent {
                continue;
            }
            map[v] = x;
            used[x] = true;
            if go(g, h, order, depth + 1, map, used) {
                return true;
            }
            used[x] = false;
        }
        map[v] = usize::MAX;
        false
    }

    go(g, h, &order, 0, &mut map, &mut used).then_some(map)
}

pub fn are_isomorphic(g: &Graph, h: &Graph) -> bool {
    find_isomorphism(g, h).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(n: usize) -> Graph {
        Graph::complete(n).unwrap()
    }

    fn reflexive_cycle(n: usize) -> Graph {
        Graph::cycle(n).unwrap().reflexive_closure()
    }

    /// Independent brute force: try every color assignment.
    fn brute_chromatic(g: &Graph) -> usize {
        let n = g.n();
        for c in 1..=n.max(1) {
            let total = c.pow(n as u32);
            for code in 0..total {
                let col = decode_function(code, n, c);
                if g.edges().iter().all(|&(u, v)| col[u] != col[v]) {
                    return c;
                }
            }
        }
        n
    }

    #[test]
    fn standard_graphs() {
        let k3 = k(3);
        assert_eq!((k3.n(), k3.edge_count(), k3.loop_count()), (3, 3, 0));
        let p2 = Graph::standard(StandardGraph::LoopedPath(2)).unwrap();
        assert_eq!(p2.edges(), vec![(0, 0), (0, 1), (1, 2)]);
        let one = Graph::standard(StandardGraph::One).unwrap();
        assert_eq!((one.n(), one.loop_count()), (1, 1));
        assert!(Graph::cycle(2).is_err());
        assert!(Graph::complete(0).is_err());
    }

    #[test]
    fn reflexive_closure_examples() {
        let k2 = k(2).reflexive_closure();
        assert!(k2.is_reflexive());
        assert_eq!(k2.reflexive_closure(), k2);
        assert_eq!(reflexive_cycle(5).edge_count(), 10);
    }

    #[test]
    fn product_examples() {
        let p = product(&k(2), &k(2));
        assert_eq!(p.n(), 4);
        assert_eq!(p.edge_count(), 2);
        assert!((0..4).all(|v| p.degree(v) == 1));
        let c5 = Graph::cycle(5).unwrap();
        assert!(are_isomorphic(&product(&c5, &Graph::one()), &c5));
        let kc = product(&k(2), &reflexive_cycle(6));
        assert_eq!(kc.n(), 12);
        assert!((0..12).all(|v| kc.degree(v) == 3));
    }

    #[test]
    fn exponential_examples() {
        let g = Guards::default();
        let e = exponential(&k(2), &k(3), &g).unwrap();
        assert_eq!(e.n(), 9);
        assert_eq!(e.loop_count(), 6);
        let s = e.looped_subgraph();
        assert!(are_isomorphic(&s, &reflexive_cycle(6)));
        let c5 = Graph::cycle(5).unwrap();
        assert!(are_isomorphic(&exponential(&Graph::one(), &c5, &g).unwrap(), &c5));
        let e2 = exponential(&k(2), &k(2), &g).unwrap();
        assert_eq!((e2.n(), e2.loop_count()), (4, 2));
        let tight = Guards { exponential_vertices: 8, ..Guards::default() };
        assert!(exponential(&k(2), &k(3), &tight).unwrap_err().is_guard());
    }

    #[test]
    fn quotient_examples() {
        let c5 = Graph::cycle(5).unwrap();
        assert!(are_isomorphic(&quotient(&c5, &EquivRelation::identity(5)).unwrap(), &c5));
        let all = EquivRelation::from_blocks(3, vec![vec![0, 1, 2]]).unwrap();
        let q = quotient(&k(3), &all).unwrap();
        assert_eq!((q.n(), q.loop_count()), (1, 1));
        // Collapsing {2} x V(K2) in P'_2 x K2 gives the 5-cycle.
        let p = product(&Graph::standard(StandardGraph::LoopedPath(2)).unwrap(), &k(2));
        let r = EquivRelation::from_labels(&(0..6).map(|i| if i >= 4 { 4 } else { i }).collect::<Vec<_>>());
        assert!(are_isomorphic(&quotient(&p, &r).unwrap(), &c5));
    }

    #[test]
    fn homomorphism_checks() {
        let c6 = reflexive_cycle(6);
        assert!(check_homomorphism(&VertexMap::new(vec![0, 0], 6).unwrap(), &k(2), &c6));
        assert!(check_homomorphism(&VertexMap::new(vec![0, 1, 2], 3).unwrap(), &k(3), &k(3)));
        assert!(!check_homomorphism(&VertexMap::new(vec![0, 0], 3).unwrap(), &k(2), &k(3)));
        assert!(find_homomorphism(&Graph::cycle(5).unwrap(), &k(3)).is_some());
        assert!(find_homomorphism(&k(4), &k(3)).is_none());
    }

    #[test]
    fn chromatic_and_girth() {
        assert_eq!(chromatic_number(&k(4)), Extended::Finite(4));
        assert_eq!(chromatic_number(&Graph::one()), Extended::Infinite);
        assert_eq!(odd_girth(&Graph::cycle(7).unwrap()), Extended::Finite(7));
        assert_eq!(odd_girth(&k(2)), Extended::Infinite);
        assert_eq!(odd_girth(&Graph::one()), Extended::Finite(1));
        for n in 3..=8 {
            let c = Graph::cycle(n).unwrap();
            assert_eq!(chromatic_number(&c), Extended::Finite(brute_chromatic(&c)));
        }
    }

    #[test]
    fn stats_and_spanning_trees() {
        assert_eq!(graph_stats(&k(5)).max_degree, 4);
        assert_eq!(graph_stats(&reflexive_cycle(6)).max_degree, 3);
        assert_eq!(graph_stats(&Graph::cycle(6).unwrap()).diameter, Some(3));
        assert_eq!(min_diameter_spanning_tree(&k(5)).unwrap(), 2);
        let path = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(min_diameter_spanning_tree(&path).unwrap(), 3);
        assert_eq!(min_diameter_spanning_tree(&Graph::cycle(6).unwrap()).unwrap(), 5);
        let split = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert!(matches!(min_diameter_spanning_tree(&split), Err(Error::Disconnected)));
    }

    #[test]
    fn nu_and_fineness() {
        let g = Guards::default();
        let kr = k(4).reflexive_closure();
        assert_eq!(common_neighbors(&kr, &BitSet::singleton(4, 2)).len(), 4);
        let c6 = reflexive_cycle(6);
        assert_eq!(common_neighbors(&c6, &BitSet::singleton(6, 0)).to_vec(), vec![0, 1, 5]);
        assert_eq!(common_neighbors(&k(2), &BitSet::singleton(2, 0)).to_vec(), vec![1]);
        assert_eq!(common_neighbors(&c6, &BitSet::new(6)).len(), 6);
        assert!(is_fine(&c6, &g).unwrap());
        assert!(!is_fine(&k(2), &g).unwrap());
        assert!(is_fine(&Graph::one(), &g).unwrap());
        let big = Graph::empty(30);
        assert!(is_fine(&big, &g).unwrap_err().is_guard());
    }

    #[test]
    fn dismantlability() {
        assert!(is_dismantlable(&k(5).reflexive_closure()).unwrap());
        let path = Graph::from_edges(5, (0..4).map(|i| (i, i + 1))).unwrap().reflexive_closure();
        assert!(is_dismantlable(&path).unwrap());
        assert!(!is_dismantlable(&reflexive_cycle(8)).unwrap());
        assert!(matches!(is_dismantlable(&k(3)), Err(Error::NotReflexive)));
    }

    #[test]
    fn clique_graph_examples() {
        let g = Guards::default();
        let b = clique_graph_b(&Graph::one(), &g).unwrap();
        assert_eq!((b.graph.n(), b.graph.loop_count()), (1, 1));
        let e = clique_graph_b(&k(2).reflexive_closure(), &g).unwrap();
        assert_eq!(e.graph.n(), 3);
        // {0,1} is adjacent to both singletons, which are not adjacent.
        assert!(e.graph.adjacent(0, 2) && e.graph.adjacent(1, 2) && !e.graph.adjacent(0, 1));
        let c = clique_graph_b(&reflexive_cycle(6), &g).unwrap();
        assert_eq!(c.graph.n(), 12);
        assert!(c.graph.is_reflexive());
    }

    #[test]
    fn looped_subgraph_examples() {
        assert_eq!(k(4).looped_subgraph().n(), 0);
        let c = reflexive_cycle(5);
        assert_eq!(c.looped_subgraph(), c);
    }

    #[test]
    fn json_round_trip() {
        let g = Graph::standard(StandardGraph::LoopedPath(3)).unwrap();
        let s = g.to_json();
        assert!(s.contains("[0,0]"));
        assert_eq!(Graph::from_json(&s).unwrap(), g);
    }
}
