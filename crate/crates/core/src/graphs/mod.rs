//! Connected simple undirected graphs with exact property oracles
//! (acyclicity, girth class, planarity, Eulerian and Hamiltonian
//! cycles) and the corresponding classification tasks on adjacency
//! matrices.
//!
//! The `brute` submodule holds independent reference oracles
//! (exhaustive enumerations) used to verify the fast ones.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::dataset::{augment_permutations, Example, FeatureShape, LabeledDataset, PermutationMode};
use crate::error::Error;
use crate::rng::{Rng, RngSeed};
use crate::Result;

mod planarity;

pub use planarity::is_planar;

/// Hard cap for the exact Hamiltonian-cycle search.
pub const HAMILTON_VERTEX_CAP: usize = 24;

/// A connected simple undirected graph as a symmetric binary adjacency
/// matrix with zero diagonal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    v: usize,
    adj: Vec<bool>,
    edges: usize,
}

impl Graph {
    /// Builds a graph from its adjacency matrix, checking symmetry,
    /// zero diagonal and connectivity.
    pub fn from_adjacency(v: usize, adj: Vec<bool>) -> Result<Graph> {
        if adj.len() != v * v {
            return Err(Error::DimensionMismatch {
                expected: v * v,
                got: adj.len(),
            });
        }
        let mut edges = 0;
        for r in 0..v {
            if adj[r * v + r] {
                return Err(Error::InvalidData(format!("self-loop at vertex {r}")));
            }
            for c in r + 1..v {
                if adj[r * v + c] != adj[c * v + r] {
                    return Err(Error::InvalidData(format!(
                        "adjacency not symmetric at ({r}, {c})"
                    )));
                }
                edges += usize::from(adj[r * v + c]);
            }
        }
        let g = Graph { v, adj, edges };
        if !g.is_connected() {
            return Err(Error::InvalidData("graph is not connected".into()));
        }
        Ok(g)
    }

    pub fn from_edges(v: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        let mut adj = vec![false; v * v];
        for &(a, b) in edges {
            if a == b || a >= v || b >= v {
                return Err(Error::InvalidData(format!("bad edge ({a}, {b})")));
            }
            adj[a * v + b] = true;
            adj[b * v + a] = true;
        }
        Graph::from_adjacency(v, adj)
    }

    pub fn complete(v: usize) -> Graph {
        let adj = (0..v * v)
            .map(|k| k / v != k % v)
            .collect();
        Graph::from_adjacency(v, adj).expect("complete graph is valid")
    }

    pub fn cycle(v: usize) -> Graph {
        let edges: Vec<(usize, usize)> = (0..v).map(|i| (i, (i + 1) % v)).collect();
        Graph::from_edges(v, &edges).expect("cycle is valid")
    }

    pub fn order(&self) -> usize {
        self.v
    }

    pub fn edge_count(&self) -> usize {
        self.edges
    }

    #[inline]
    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a * self.v + b]
    }

    pub fn degree(&self, a: usize) -> usize {
        (0..self.v).filter(|&b| self.has_edge(a, b)).count()
    }

    pub fn neighbors(&self, a: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.v).filter(move |&b| self.has_edge(a, b))
    }

    fn is_connected(&self) -> bool {
        if self.v == 0 {
            return false;
        }
        let mut seen = vec![false; self.v];
        let mut queue = vec![0usize];
        seen[0] = true;
        let mut reached = 1;
        while let Some(u) = queue.pop() {
            for w in self.neighbors(u) {
                if !seen[w] {
                    seen[w] = true;
                    reached += 1;
                    queue.push(w);
                }
            }
        }
        reached == self.v
    }

    /// Adjacency row-major as floats (the learner feature layout).
    pub fn adjacency_features(&self) -> Vec<f64> {
        self.adj.iter().map(|&b| f64::from(u8::from(b))).collect()
    }

    /// The graph with vertices relabeled by `perm` (vertex `i` of the
    /// result is vertex `perm[i]` of the original).
    pub fn relabeled(&self, perm: &[usize]) -> Graph {
        let v = self.v;
        let mut adj = vec![false; v * v];
        for r in 0..v {
            for c in 0..v {
                adj[r * v + c] = self.adj[perm[r] * v + perm[c]];
            }
        }
        Graph {
            v,
            adj,
            edges: self.edges,
        }
    }
}

/// Girth classes used by the three-way girth task; acyclic graphs have
/// infinite girth.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GirthClass {
    Acyclic,
    Three,
    Four,
    GreaterThanFour,
}

/// Exact girth (`None` for acyclic graphs) by BFS from every vertex:
/// the shortest cycle through each root is found at the first non-tree
/// edge closing two branches.
pub fn girth(g: &Graph) -> Option<usize> {
    // connected and acyclic is exactly e = v - 1
    if g.edge_count() == g.order() - 1 {
        return None;
    }
    let v = g.order();
    let mut best = usize::MAX;
    let mut dist = vec![usize::MAX; v];
    let mut parent = vec![usize::MAX; v];
    let mut queue = alloc::collections::VecDeque::new();
    for root in 0..v {
        dist.fill(usize::MAX);
        parent.fill(usize::MAX);
        queue.clear();
        dist[root] = 0;
        queue.push_back(root);
        while let Some(u) = queue.pop_front() {
            // cycles through the root longer than the current best
            // cannot improve it
            if 2 * dist[u] + 1 >= best {
                break;
            }
            for w in g.neighbors(u) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    queue.push_back(w);
                } else if parent[u] != w {
                    best = best.min(dist[u] + dist[w] + 1);
                }
            }
        }
    }
    Some(best)
}

pub fn girth_class(g: &Graph) -> GirthClass {
    match girth(g) {
        None => GirthClass::Acyclic,
        Some(3) => GirthClass::Three,
        Some(4) => GirthClass::Four,
        Some(_) => GirthClass::GreaterThanFour,
    }
}

/// Acyclicity of a connected graph: exactly `e = v - 1`.
pub fn is_acyclic(g: &Graph) -> bool {
    g.edge_count() == g.order() - 1
}

/// Euler's theorem: a connected graph has a closed walk using every
/// edge once exactly when every degree is even.
pub fn is_eulerian(g: &Graph) -> bool {
    (0..g.order()).all(|u| g.degree(u) % 2 == 0)
}

/// Exact Hamiltonian-cycle decision by backtracking with reachability
/// pruning; capped at [`HAMILTON_VERTEX_CAP`] vertices.
pub fn has_hamiltonian_cycle(g: &Graph) -> Result<bool> {
    let v = g.order();
    if v > HAMILTON_VERTEX_CAP {
        return Err(Error::InvalidArgument(format!(
            "{v} vertices exceeds exact-oracle bound {HAMILTON_VERTEX_CAP}"
        )));
    }
    if v < 3 {
        return Ok(false);
    }
    if (0..v).any(|u| g.degree(u) < 2) {
        return Ok(false);
    }
    let mut visited = vec![false; v];
    visited[0] = true;
    Ok(hamilton_search(g, 0, 1, &mut visited))
}

fn hamilton_search(g: &Graph, current: usize, placed: usize, visited: &mut [bool]) -> bool {
    let v = g.order();
    if placed == v {
        return g.has_edge(current, 0);
    }
    // prune: every unvisited vertex must still be reachable from the
    // current endpoint through unvisited vertices
    let mut reach = visited.to_vec();
    let mut queue = vec![current];
    let mut reached = 0;
    while let Some(u) = queue.pop() {
        for w in g.neighbors(u) {
            if !reach[w] {
                reach[w] = true;
                reached += 1;
                queue.push(w);
            }
        }
    }
    if reached != v - placed {
        return false;
    }
    for w in g.neighbors(current) {
        if !visited[w] {
            visited[w] = true;
            if hamilton_search(g, w, placed + 1, visited) {
                visited[w] = false;
                return true;
            }
            visited[w] = false;
        }
    }
    false
}

// ---------------------------------------------------------------------
// Samplers
// ---------------------------------------------------------------------

/// An Erdos-Renyi draw conditioned on connectivity by rejection.
pub fn gen_connected_graph(v: usize, edge_prob: f64, seed: RngSeed) -> Result<Graph> {
    if v < 4 {
        return Err(Error::InvalidArgument("need at least 4 vertices".into()));
    }
    if !(edge_prob > 0.0 && edge_prob < 1.0) {
        return Err(Error::InvalidArgument("edge probability must be in (0, 1)".into()));
    }
    let mut rng = Rng::from_seed(seed.derive("er-graph"));
    for _ in 0..10_000 {
        let mut adj = vec![false; v * v];
        let mut edges = 0;
        for a in 0..v {
            for b in a + 1..v {
                if rng.chance(edge_prob) {
                    adj[a * v + b] = true;
                    adj[b * v + a] = true;
                    edges += 1;
                }
            }
        }
        let g = Graph { v, adj, edges };
        if g.is_connected() {
            return Ok(g);
        }
    }
    Err(Error::InvalidArgument(format!(
        "10000 consecutive draws at p = {edge_prob} were disconnected; raise edge_prob"
    )))
}

/// A uniform random labeled tree by decoding a random Pruefer sequence.
pub fn gen_random_tree(v: usize, rng: &mut Rng) -> Graph {
    assert!(v >= 2);
    if v == 2 {
        return Graph::from_edges(2, &[(0, 1)]).expect("valid");
    }
    let seq: Vec<usize> = (0..v - 2).map(|_| rng.below(v)).collect();
    let mut degree = vec![1usize; v];
    for &s in &seq {
        degree[s] += 1;
    }
    let mut edges = Vec::with_capacity(v - 1);
    let mut used = vec![false; v];
    for &s in &seq {
        let leaf = (0..v).find(|&u| degree[u] == 1 && !used[u]).expect("leaf exists");
        edges.push((leaf, s));
        used[leaf] = true;
        degree[leaf] -= 1;
        degree[s] -= 1;
    }
    let remaining: Vec<usize> = (0..v).filter(|&u| degree[u] == 1 && !used[u]).collect();
    edges.push((remaining[0], remaining[1]));
    Graph::from_edges(v, &edges).expect("Pruefer decode is a tree")
}

/// A tree plus one extra edge whose endpoints are at tree distance at
/// least `min_cycle - 1`, so the unique cycle has length >= min_cycle.
fn gen_near_tree(v: usize, min_cycle: usize, rng: &mut Rng) -> Option<Graph> {
    let tree = gen_random_tree(v, rng);
    // BFS distances in the tree
    let mut candidates = Vec::new();
    let mut dist = vec![usize::MAX; v];
    for a in 0..v {
        dist.fill(usize::MAX);
        dist[a] = 0;
        let mut queue = alloc::collections::VecDeque::from([a]);
        while let Some(u) = queue.pop_front() {
            for w in tree.neighbors(u) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        for b in a + 1..v {
            if dist[b] + 1 >= min_cycle {
                candidates.push((a, b, dist[b] + 1));
            }
        }
    }
    if candidates.is_empty() {
        return None;
    }
    let (a, b, _) = candidates[rng.below(candidates.len())];
    let mut adj = tree.adj.clone();
    adj[a * v + b] = true;
    adj[b * v + a] = true;
    Some(Graph {
        v,
        adj,
        edges: tree.edges + 1,
    })
}

/// A random Eulerian graph: the symmetric difference of random cycles
/// over the vertex set keeps all degrees even; redrawn until connected.
fn gen_eulerian_graph(v: usize, extra_cycles: usize, rng: &mut Rng) -> Option<Graph> {
    for _ in 0..200 {
        let mut adj = vec![false; v * v];
        let toggle_cycle = |adj: &mut Vec<bool>, members: &[usize]| {
            for k in 0..members.len() {
                let a = members[k];
                let b = members[(k + 1) % members.len()];
                adj[a * v + b] = !adj[a * v + b];
                adj[b * v + a] = !adj[b * v + a];
            }
        };
        let base = rng.permutation(v);
        toggle_cycle(&mut adj, &base);
        for _ in 0..extra_cycles {
            let size = 3 + rng.below(v - 2);
            let members = rng.sample_indices(v, size);
            toggle_cycle(&mut adj, &members);
        }
        let edges = (0..v)
            .map(|a| (a + 1..v).filter(|&b| adj[a * v + b]).count())
            .sum();
        let g = Graph { v, adj, edges };
        if g.edge_count() >= v && g.is_connected() && is_eulerian(&g) {
            return Some(g);
        }
    }
    None
}

/// A Hamiltonian graph by construction: a hidden cycle through all
/// vertices plus Bernoulli extra edges.
fn gen_hamiltonian_graph(v: usize, extra_prob: f64, rng: &mut Rng) -> Graph {
    let order = rng.permutation(v);
    let mut adj = vec![false; v * v];
    for k in 0..v {
        let a = order[k];
        let b = order[(k + 1) % v];
        adj[a * v + b] = true;
        adj[b * v + a] = true;
    }
    for a in 0..v {
        for b in a + 1..v {
            if !adj[a * v + b] && rng.chance(extra_prob) {
                adj[a * v + b] = true;
                adj[b * v + a] = true;
            }
        }
    }
    let edges = (0..v)
        .map(|a| (a + 1..v).filter(|&b| adj[a * v + b]).count())
        .sum();
    Graph { v, adj, edges }
}

// ---------------------------------------------------------------------
// Tasks
// ---------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum GraphProperty {
    /// Binary: 1 = acyclic.
    Acyclic,
    /// Three classes: girth 3 / 4 / greater than 4.
    GirthThreeWay,
    /// Binary: 1 = planar.
    Planar,
    /// Binary: 1 = has an Euler cycle.
    Euler,
    /// Binary: 1 = has a Hamilton cycle.
    Hamilton,
}

impl GraphProperty {
    pub fn name(self) -> &'static str {
        match self {
            GraphProperty::Acyclic => "acyclic",
            GraphProperty::GirthThreeWay => "girth3way",
            GraphProperty::Planar => "planar",
            GraphProperty::Euler => "euler",
            GraphProperty::Hamilton => "hamilton",
        }
    }

    pub fn arity(self) -> usize {
        match self {
            GraphProperty::GirthThreeWay => 3,
            _ => 2,
        }
    }
}

/// Draws one candidate graph for the given class of the given task;
/// per-class proposal distributions keep every class reachable without
/// astronomic rejection rates.
fn propose(
    property: GraphProperty,
    class: usize,
    v: usize,
    rng: &mut Rng,
) -> Option<Graph> {
    let er = |rng: &mut Rng, lo: f64, hi: f64| -> Option<Graph> {
        let p = rng.range_f64(lo, hi);
        let mut adj = vec![false; v * v];
        let mut edges = 0;
        for a in 0..v {
            for b in a + 1..v {
                if rng.chance(p) {
                    adj[a * v + b] = true;
                    adj[b * v + a] = true;
                    edges += 1;
                }
            }
        }
        let g = Graph { v, adj, edges };
        g.is_connected().then_some(g)
    };
    match (property, class) {
        (GraphProperty::Acyclic, 1) => Some(gen_random_tree(v, rng)),
        (GraphProperty::Acyclic, _) => er(rng, 1.2 / v as f64, 0.5),
        (GraphProperty::GirthThreeWay, 0) => er(rng, 0.3, 0.8),
        (GraphProperty::GirthThreeWay, 1) => gen_near_tree(v, 4, rng),
        (GraphProperty::GirthThreeWay, _) => gen_near_tree(v, 5, rng),
        (GraphProperty::Planar, 1) => er(rng, 1.0 / v as f64, 2.5 / v as f64),
        (GraphProperty::Planar, _) => er(rng, 0.35, 0.75),
        (GraphProperty::Euler, 1) => gen_eulerian_graph(v, 1 + rng.below(3), rng),
        (GraphProperty::Euler, _) => er(rng, 1.5 / v as f64, 0.5),
        (GraphProperty::Hamilton, 1) => Some(gen_hamiltonian_graph(v, rng.range_f64(0.05, 0.25), rng)),
        (GraphProperty::Hamilton, _) => er(rng, 1.2 / v as f64, 3.0 / v as f64),
    }
}

fn label_of(property: GraphProperty, g: &Graph) -> Result<Option<usize>> {
    Ok(match property {
        GraphProperty::Acyclic => Some(usize::from(is_acyclic(g))),
        GraphProperty::GirthThreeWay => match girth_class(g) {
            GirthClass::Three => Some(0),
            GirthClass::Four => Some(1),
            GirthClass::GreaterThanFour => Some(2),
            GirthClass::Acyclic => None, // excluded from the 3-way task
        },
        GraphProperty::Planar => Some(usize::from(is_planar(g))),
        GraphProperty::Euler => Some(usize::from(is_eulerian(g))),
        GraphProperty::Hamilton => Some(usize::from(has_hamiltonian_cycle(g)?)),
    })
}

/// Generates a balanced graph-property task: `per_class` base graphs
/// per class with vertex counts uniform in `v_min..=v_max`, adjacency
/// matrices padded to `v_max` and augmented with `copies` simultaneous
/// row/column permutations.
pub fn gen_graph_property_task(
    property: GraphProperty,
    per_class: usize,
    v_min: usize,
    v_max: usize,
    copies: usize,
    seed: RngSeed,
) -> Result<LabeledDataset> {
    if per_class == 0 {
        return Err(Error::InvalidArgument("per_class must be positive".into()));
    }
    if !(4 <= v_min && v_min <= v_max && v_max <= HAMILTON_VERTEX_CAP) {
        return Err(Error::InvalidArgument(format!(
            "vertex range must satisfy 4 <= v_min <= v_max <= {HAMILTON_VERTEX_CAP}"
        )));
    }
    let arity = property.arity();
    let mut examples = Vec::with_capacity(per_class * arity);
    for class in 0..arity {
        let mut rng = Rng::from_seed(
            seed.derive("graph-task")
                .derive(property.name())
                .derive_index(class as u64),
        );
        let mut accepted = 0;
        let mut attempts = 0usize;
        while accepted < per_class {
            attempts += 1;
            if attempts > 400 * per_class {
                return Err(Error::InvalidArgument(format!(
                    "class {class} of {} unreachable at v in [{v_min}, {v_max}]",
                    property.name()
                )));
            }
            let v = v_min + rng.below(v_max - v_min + 1);
            let Some(g) = propose(property, class, v, &mut rng) else {
                continue;
            };
            if label_of(property, &g)? != Some(class) {
                continue;
            }
            // pad the adjacency into the v_max frame
            let mut features = vec![0.0; v_max * v_max];
            for r in 0..v {
                for c in 0..v {
                    features[r * v_max + c] = f64::from(u8::from(g.has_edge(r, c)));
                }
            }
            examples.push(Example {
                features,
                label: class,
            });
            accepted += 1;
        }
    }
    let mut shuffle_rng = Rng::from_seed(seed.derive("graph-task-shuffle"));
    shuffle_rng.shuffle(&mut examples);
    let ds = LabeledDataset::new(
        examples,
        FeatureShape::Matrix {
            rows: v_max,
            cols: v_max,
        },
        arity,
        &format!("graph-{}", property.name()),
    )?;
    if copies == 0 {
        Ok(ds)
    } else {
        augment_permutations(&ds, PermutationMode::Simultaneous, copies, seed)
    }
}

/// Independent reference oracles (exhaustive enumerations) for
/// verifying the fast property tests.
pub mod brute {
    use super::*;

    /// Shortest cycle by canonical DFS enumeration of simple cycles
    /// (start at the smallest vertex of the cycle).
    pub fn girth_by_cycle_enumeration(g: &Graph) -> Option<usize> {
        let v = g.order();
        let mut best = usize::MAX;
        let mut path = Vec::new();
        let mut on_path = vec![false; v];
        fn dfs(
            g: &Graph,
            start: usize,
            current: usize,
            path: &mut Vec<usize>,
            on_path: &mut [bool],
            best: &mut usize,
        ) {
            if path.len() >= *best {
                return;
            }
            for w in g.neighbors(current) {
                if w == start && path.len() >= 3 {
                    *best = (*best).min(path.len());
                } else if w > start && !on_path[w] {
                    on_path[w] = true;
                    path.push(w);
                    dfs(g, start, w, path, on_path, best);
                    path.pop();
                    on_path[w] = false;
                }
            }
        }
        for start in 0..v {
            path.clear();
            path.push(start);
            on_path.fill(false);
            on_path[start] = true;
            dfs(g, start, start, &mut path, &mut on_path, &mut best);
        }
        (best != usize::MAX).then_some(best)
    }

    /// Hamiltonicity by checking every permutation that fixes vertex 0.
    pub fn hamiltonian_by_permutations(g: &Graph) -> bool {
        let v = g.order();
        if v < 3 {
            return false;
        }
        let mut rest: Vec<usize> = (1..v).collect();
        permute_check(g, &mut rest, 0)
    }

    fn permute_check(g: &Graph, rest: &mut [usize], k: usize) -> bool {
        if k == rest.len() {
            let mut prev = 0;
            for &u in rest.iter() {
                if !g.has_edge(prev, u) {
                    return false;
                }
                prev = u;
            }
            return g.has_edge(prev, 0);
        }
        for i in k..rest.len() {
            rest.swap(k, i);
            if permute_check(g, rest, k + 1) {
                rest.swap(k, i);
                return true;
            }
            rest.swap(k, i);
        }
        false
    }

    /// Eulerian-circuit existence by actually building the circuit
    /// (Hierholzer) and verifying it: the popped sequence must be a
    /// closed walk traversing every edge exactly once.
    pub fn eulerian_by_hierholzer(g: &Graph) -> bool {
        let v = g.order();
        let mut remaining: Vec<Vec<bool>> = (0..v)
            .map(|a| (0..v).map(|b| g.has_edge(a, b)).collect())
            .collect();
        let mut stack = vec![0usize];
        let mut circuit = Vec::new();
        while let Some(&u) = stack.last() {
            if let Some(w) = (0..v).find(|&w| remaining[u][w]) {
                remaining[u][w] = false;
                remaining[w][u] = false;
                stack.push(w);
            } else {
                stack.pop();
                circuit.push(u);
            }
        }
        if circuit.len() != g.edge_count() + 1 || circuit.first() != circuit.last() {
            return false;
        }
        let mut used: Vec<Vec<bool>> = (0..v).map(|_| vec![false; v]).collect();
        for pair in circuit.windows(2) {
            let (a, b) = (pair[0], pair[1]);
            if !g.has_edge(a, b) || used[a][b] {
                return false;
            }
            used[a][b] = true;
            used[b][a] = true;
        }
        (0..v).all(|a| (0..v).all(|b| used[a][b] == g.has_edge(a, b)))
    }

    /// Planarity by exhaustive Kuratowski-subdivision search; exact for
    /// graphs with at most 7 vertices (subdivisions of K5 and K3,3 fit
    /// with at most 2 and 1 extra vertices there).
    pub fn planar_by_kuratowski(g: &Graph) -> bool {
        let v = g.order();
        assert!(v <= 7, "subdivision search is sized for v <= 7");
        // fewer than 9 edges cannot hold either subdivision
        if g.edge_count() < 9 {
            return true;
        }
        !has_k5_subdivision(g) && !has_k33_subdivision(g)
    }

    fn connects(g: &Graph, a: usize, b: usize, via: &[usize]) -> bool {
        match via.len() {
            0 => g.has_edge(a, b),
            1 => g.has_edge(a, via[0]) && g.has_edge(via[0], b),
            2 => {
                (g.has_edge(a, via[0]) && g.has_edge(via[0], via[1]) && g.has_edge(via[1], b))
                    || (g.has_edge(a, via[1])
                        && g.has_edge(via[1], via[0])
                        && g.has_edge(via[0], b))
            }
            _ => false,
        }
    }

    fn has_k5_subdivision(g: &Graph) -> bool {
        let v = g.order();
        let verts: Vec<usize> = (0..v).collect();
        for branch in combinations(&verts, 5) {
            let extras: Vec<usize> = verts
                .iter()
                .copied()
                .filter(|u| !branch.contains(u))
                .collect();
            let mut missing = Vec::new();
            let mut ok = true;
            for i in 0..5 {
                for j in i + 1..5 {
                    if !g.has_edge(branch[i], branch[j]) {
                        missing.push((branch[i], branch[j]));
                    }
                }
            }
            if missing.len() > 2 {
                continue;
            }
            // assign disjoint extra vertices to the missing connections
            ok &= assign_paths(g, &missing, &extras);
            if ok {
                return true;
            }
        }
        false
    }

    fn has_k33_subdivision(g: &Graph) -> bool {
        let v = g.order();
        let verts: Vec<usize> = (0..v).collect();
        for six in combinations(&verts, 6) {
            let extras: Vec<usize> = verts
                .iter()
                .copied()
                .filter(|u| !six.contains(u))
                .collect();
            for left_mask in 0u32..(1 << 6) {
                if left_mask.count_ones() != 3 || left_mask & 1 == 0 {
                    continue; // fix vertex 0 on the left to halve the work
                }
                let left: Vec<usize> = (0..6).filter(|i| left_mask & (1 << i) != 0).map(|i| six[i]).collect();
                let right: Vec<usize> = (0..6).filter(|i| left_mask & (1 << i) == 0).map(|i| six[i]).collect();
                let mut missing = Vec::new();
                for &a in &left {
                    for &b in &right {
                        if !g.has_edge(a, b) {
                            missing.push((a, b));
                        }
                    }
                }
                if missing.len() > 1 {
                    continue;
                }
                if assign_paths(g, &missing, &extras) {
                    return true;
                }
            }
        }
        false
    }

    /// Tries to realize each missing connection as a path through
    /// distinct extra vertices (1 or 2 per path).
    fn assign_paths(g: &Graph, missing: &[(usize, usize)], extras: &[usize]) -> bool {
        match missing {
            [] => true,
            [(a, b)] => {
                for e1 in extras {
                    if connects(g, *a, *b, &[*e1]) {
                        return true;
                    }
                }
                if extras.len() >= 2 && connects(g, *a, *b, extras) {
                    return true;
                }
                false
            }
            [(a1, b1), (a2, b2)] => {
                if extras.len() < 2 {
                    return false;
                }
                for (i, &e1) in extras.iter().enumerate() {
                    for (j, &e2) in extras.iter().enumerate() {
                        if i != j
                            && connects(g, *a1, *b1, &[e1])
                            && connects(g, *a2, *b2, &[e2])
                        {
                            return true;
                        }
                    }
                }
                false
            }
            _ => false,
        }
    }

    fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut pick = Vec::with_capacity(k);
        fn rec(items: &[usize], k: usize, start: usize, pick: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if pick.len() == k {
                out.push(pick.clone());
                return;
            }
            for i in start..items.len() {
                pick.push(items[i]);
                rec(items, k, i + 1, pick, out);
                pick.pop();
            }
        }
        rec(items, k, 0, &mut pick, &mut out);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn petersen() -> Graph {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5)); // outer cycle
            edges.push((i, i + 5)); // spokes
            edges.push((i + 5, (i + 2) % 5 + 5)); // pentagram
        }
        Graph::from_edges(10, &edges).unwrap()
    }

    #[test]
    fn construction_checks() {
        // K4
        let g = Graph::complete(4);
        assert_eq!(g.edge_count(), 6);
        // asymmetric matrix rejected
        let mut adj = vec![false; 4];
        adj[1] = true;
        assert!(Graph::from_adjacency(2, adj).is_err());
        // disconnected rejected
        assert!(Graph::from_edges(4, &[(0, 1), (2, 3)]).is_err());
    }

    #[test]
    fn girth_examples() {
        assert_eq!(girth(&Graph::complete(3)), Some(3));
        assert_eq!(girth_class(&Graph::complete(3)), GirthClass::Three);
        assert_eq!(girth(&Graph::cycle(5)), Some(5));
        assert_eq!(girth_class(&Graph::cycle(5)), GirthClass::GreaterThanFour);
        assert_eq!(girth(&Graph::cycle(4)), Some(4));
        let star = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(girth(&star), None);
        assert_eq!(girth_class(&star), GirthClass::Acyclic);
        assert!(is_acyclic(&star));
        assert_eq!(girth(&petersen()), Some(5));
    }

    #[test]
    fn eulerian_examples() {
        assert!(is_eulerian(&Graph::cycle(6)));
        assert!(!is_eulerian(&Graph::complete(4)));
        assert!(is_eulerian(&Graph::complete(5)));
    }

    #[test]
    fn hamilton_examples() {
        assert!(has_hamiltonian_cycle(&Graph::complete(4)).unwrap());
        let star = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert!(!has_hamiltonian_cycle(&star).unwrap());
        assert!(!has_hamiltonian_cycle(&petersen()).unwrap());
        assert!(!brute::hamiltonian_by_permutations(&petersen()));
        let big = Graph::cycle(30);
        assert!(has_hamiltonian_cycle(&big).is_err());
    }

    #[test]
    fn planarity_named_graphs() {
        assert!(is_planar(&Graph::complete(4)));
        assert!(!is_planar(&Graph::complete(5)));
        let k33 = Graph::from_edges(
            6,
            &[(0, 3), (0, 4), (0, 5), (1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5)],
        )
        .unwrap();
        assert!(!is_planar(&k33));
        assert!(!brute::planar_by_kuratowski(&k33));
        assert!(!is_planar(&petersen()));
        assert!(is_planar(&Graph::cycle(8)));
        // planar but dense-ish: K5 minus one edge
        let mut edges = Vec::new();
        for a in 0..5 {
            for b in a + 1..5 {
                if (a, b) != (0, 1) {
                    edges.push((a, b));
                }
            }
        }
        assert!(is_planar(&Graph::from_edges(5, &edges).unwrap()));
    }

    #[test]
    fn oracles_agree_on_random_small_graphs() {
        let mut rng = Rng::from_seed(RngSeed(31));
        for trial in 0..200 {
            let v = 5 + rng.below(5); // 5..=9
            let p = rng.range_f64(0.2, 0.8);
            let Ok(g) = gen_connected_graph(v, p, RngSeed(5000 + trial)) else {
                continue;
            };
            assert_eq!(girth(&g), brute::girth_by_cycle_enumeration(&g));
            assert_eq!(
                has_hamiltonian_cycle(&g).unwrap(),
                brute::hamiltonian_by_permutations(&g)
            );
            assert_eq!(is_eulerian(&g), brute::eulerian_by_hierholzer(&g));
            if v <= 7 {
                assert_eq!(is_planar(&g), brute::planar_by_kuratowski(&g));
            }
        }
    }

    #[test]
    fn properties_invariant_under_relabeling() {
        let mut rng = Rng::from_seed(RngSeed(77));
        for trial in 0..20 {
            let g = gen_connected_graph(8, 0.4, RngSeed(9000 + trial)).unwrap();
            let girth0 = girth(&g);
            let planar0 = is_planar(&g);
            let euler0 = is_eulerian(&g);
            let ham0 = has_hamiltonian_cycle(&g).unwrap();
            for _ in 0..20 {
                let perm = rng.permutation(8);
                let h = g.relabeled(&perm);
                assert_eq!(girth(&h), girth0);
                assert_eq!(is_planar(&h), planar0);
                assert_eq!(is_eulerian(&h), euler0);
                assert_eq!(has_hamiltonian_cycle(&h).unwrap(), ham0);
            }
        }
    }

    #[test]
    fn er_sampler_basics() {
        let g = gen_connected_graph(10, 0.3, RngSeed(1)).unwrap();
        assert_eq!(g.order(), 10);
        let again = gen_connected_graph(10, 0.3, RngSeed(1)).unwrap();
        assert_eq!(g, again, "same seed, same graph");
        // p near 1 gives the complete graph
        let dense = gen_connected_graph(6, 0.999999, RngSeed(2)).unwrap();
        assert_eq!(dense.edge_count(), 15);
    }

    #[test]
    fn trees_from_pruefer_are_trees() {
        let mut rng = Rng::from_seed(RngSeed(4));
        for _ in 0..50 {
            let v = 4 + rng.below(10);
            let t = gen_random_tree(v, &mut rng);
            assert_eq!(t.edge_count(), v - 1);
            assert!(is_acyclic(&t));
        }
    }

    #[test]
    fn property_task_labels_are_correct() {
        for property in [
            GraphProperty::Acyclic,
            GraphProperty::GirthThreeWay,
            GraphProperty::Euler,
            GraphProperty::Hamilton,
            GraphProperty::Planar,
        ] {
            let ds = gen_graph_property_task(property, 12, 6, 10, 0, RngSeed(8)).unwrap();
            assert_eq!(ds.len(), 12 * property.arity());
            let counts = ds.class_counts();
            assert!(counts.iter().all(|&c| c == 12));
            // labels re-verified from the unpadded block
            for ex in ds.examples() {
                let v = (0..10)
                    .take_while(|&r| (0..10).any(|c| ex.features[r * 10 + c] != 0.0))
                    .count();
                let adj: Vec<bool> = (0..v * v)
                    .map(|k| ex.features[(k / v) * 10 + (k % v)] != 0.0)
                    .collect();
                let g = Graph::from_adjacency(v, adj).unwrap();
                assert_eq!(label_of(property, &g).unwrap(), Some(ex.label));
            }
        }
    }

    #[test]
    fn property_task_augmentation_keeps_symmetry() {
        let ds = gen_graph_property_task(GraphProperty::Acyclic, 6, 5, 8, 2, RngSeed(10)).unwrap();
        assert_eq!(ds.len(), 2 * 6 * 3);
        for ex in ds.examples() {
            for r in 0..8 {
                assert_eq!(ex.features[r * 8 + r], 0.0);
                for c in 0..8 {
                    assert_eq!(ex.features[r * 8 + c], ex.features[c * 8 + r]);
                }
            }
        }
    }
}
