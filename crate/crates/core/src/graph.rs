//! Sierpiński graphs `S(K_n, t)` and the small auxiliary families used
//! alongside them (complete graphs and paths).
//!
//! Vertices are identified by their rank in lexicographic word order, and
//! adjacency lists are kept sorted by rank. Two independent definitions of
//! `S(K_n, t)` live here: [`build_sierpinski`] glues `n` copies of level
//! `t - 1` with bridge edges, and [`adjacent_by_rule`] decides adjacency
//! straight from the three-clause word condition. The tests hold them equal.

use std::collections::VecDeque;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{invalid, Error, Result};
use crate::word::{checked_order, rank_word, VertexWord};

pub const DEFAULT_MAX_VERTICES: usize = 1_000_000;

/// Edge lists grow like `n * n^t / 2`; large alphabets hit this before the
/// vertex limit does.
pub const DEFAULT_MAX_EDGES: usize = 20_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Capacity {
    pub max_vertices: usize,
    pub max_edges: usize,
}

impl Default for Capacity {
    fn default() -> Self {
        Self {
            max_vertices: DEFAULT_MAX_VERTICES,
            max_edges: DEFAULT_MAX_EDGES,
        }
    }
}

impl Capacity {
    pub fn with_max_vertices(max_vertices: usize) -> Self {
        Self {
            max_vertices,
            ..Self::default()
        }
    }

    fn check(&self, vertices: u128, edges: u128) -> Result<()> {
        if vertices > self.max_vertices as u128 {
            return Err(Error::Capacity {
                what: "vertices",
                requested: vertices,
                limit: self.max_vertices,
            });
        }
        if edges > self.max_edges as u128 {
            return Err(Error::Capacity {
                what: "edges",
                requested: edges,
                limit: self.max_edges,
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Sierpinski { n: u32, t: u32 },
    Complete { n: usize },
    Path { m: usize },
    Custom,
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Sierpinski { .. } => "sierpinski",
            Family::Complete { .. } => "complete",
            Family::Path { .. } => "path",
            Family::Custom => "custom",
        }
    }
}

/// Undirected, loop-free graph on vertices `0..order` with labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    family: Family,
    labels: Vec<String>,
    adjacency: Vec<Vec<usize>>,
    edge_count: usize,
}

impl Graph {
    /// Builds a graph from an edge list. Rejects self-loops, duplicate
    /// edges, out-of-range endpoints, and repeated labels.
    pub fn from_edges(family: Family, labels: Vec<String>, edges: &[(usize, usize)]) -> Result<Self> {
        let order = labels.len();
        {
            let mut seen: Vec<&String> = labels.iter().collect();
            seen.sort();
            if let Some(w) = seen.windows(2).find(|w| w[0] == w[1]) {
                return Err(invalid(format!("duplicate vertex label {:?}", w[0])));
            }
        }
        let mut adjacency = vec![Vec::new(); order];
        for &(u, v) in edges {
            if u >= order || v >= order {
                return Err(invalid(format!("edge ({u},{v}) outside 0..{order}")));
            }
            if u == v {
                return Err(invalid(format!("self-loop at vertex {u}")));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for (v, list) in adjacency.iter_mut().enumerate() {
            list.sort_unstable();
            if list.windows(2).any(|w| w[0] == w[1]) {
                return Err(invalid(format!("duplicate edge at vertex {v}")));
            }
        }
        Ok(Self {
            family,
            labels,
            adjacency,
            edge_count: edges.len(),
        })
    }

    /// Same as [`Graph::from_edges`] with labels `1..=order`.
    pub fn custom(order: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let labels = (1..=order).map(|i| i.to_string()).collect();
        Self::from_edges(Family::Custom, labels, edges)
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn order(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn is_connected(&self) -> bool {
        if self.order() == 0 {
            return true;
        }
        let mut seen = vec![false; self.order()];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut reached = 1;
        while let Some(u) = queue.pop_front() {
            for &v in &self.adjacency[u] {
                if !seen[v] {
                    seen[v] = true;
                    reached += 1;
                    queue.push_back(v);
                }
            }
        }
        reached == self.order()
    }

    pub fn to_document(&self) -> GraphDocument {
        let (n, t) = match self.family {
            Family::Sierpinski { n, t } => (Some(n as u64), Some(t as u64)),
            Family::Complete { n } => (Some(n as u64), None),
            Family::Path { m } => (Some(m as u64), None),
            Family::Custom => (None, None),
        };
        GraphDocument {
            family: self.family.name().to_string(),
            n,
            t,
            vertices: self.labels.clone(),
            edges: self.edges().map(|(u, v)| [u, v]).collect(),
        }
    }

    /// Compact JSON with fields in a fixed order; the graph hash is taken
    /// over exactly these bytes.
    pub fn to_canonical_json(&self) -> String {
        serde_json::to_string(&self.to_document()).expect("graph document serializes")
    }

    /// Hex SHA-256 of the canonical JSON.
    pub fn hash(&self) -> String {
        hex::encode(Sha256::digest(self.to_canonical_json().as_bytes()))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: GraphDocument =
            serde_json::from_str(text).map_err(|e| invalid(format!("graph JSON: {e}")))?;
        Self::from_document(doc)
    }

    pub fn from_document(doc: GraphDocument) -> Result<Self> {
        let order = doc.vertices.len();
        let family = match doc.family.as_str() {
            "sierpinski" => {
                let (n, t) = doc
                    .n
                    .zip(doc.t)
                    .ok_or_else(|| invalid("sierpinski graph needs n and t"))?;
                let n = u32::try_from(n).map_err(|_| invalid("n too large"))?;
                let t = u32::try_from(t).map_err(|_| invalid("t too large"))?;
                if checked_order(n, t) != Some(order as u128) {
                    return Err(invalid(format!("{order} vertices, but n^t = {n}^{t}")));
                }
                Family::Sierpinski { n, t }
            }
            "complete" => Family::Complete { n: order },
            "path" => Family::Path { m: order },
            "custom" => Family::Custom,
            other => return Err(invalid(format!("unknown graph family {other:?}"))),
        };
        if let (Some(n), Family::Complete { .. } | Family::Path { .. }) = (doc.n, family) {
            if n != order as u64 {
                return Err(invalid(format!("n = {n} but {order} vertices listed")));
            }
        }
        let mut edges = Vec::with_capacity(doc.edges.len());
        for [u, v] in doc.edges {
            if u >= v {
                return Err(invalid(format!("edge [{u},{v}] must satisfy u < v")));
            }
            edges.push((u, v));
        }
        let graph = Self::from_edges(family, doc.vertices, &edges)?;
        if let Family::Complete { n } = family {
            if graph.edge_count() != n * n.saturating_sub(1) / 2 {
                return Err(invalid("complete graph is missing edges"));
            }
        }
        Ok(graph)
    }

    /// Graphviz DOT. When `weights` is given, vertices are filled by weight.
    pub fn to_dot(&self, weights: Option<&[u8]>) -> String {
        let mut out = String::new();
        let name = match self.family {
            Family::Sierpinski { n, t } => format!("S_K{n}_{t}"),
            Family::Complete { n } => format!("K{n}"),
            Family::Path { m } => format!("P{m}"),
            Family::Custom => "G".to_string(),
        };
        let _ = writeln!(out, "graph {name} {{");
        let _ = writeln!(out, "  node [shape=circle, style=filled, fillcolor=white];");
        for (v, label) in self.labels.iter().enumerate() {
            match weights.and_then(|w| w.get(v)) {
                Some(&w) => {
                    let color = match w {
                        0 => "white",
                        1 => "lightblue",
                        _ => "tomato",
                    };
                    let _ = writeln!(
                        out,
                        "  \"{label}\" [fillcolor={color}, xlabel=\"{w}\"];"
                    );
                }
                None => {
                    let _ = writeln!(out, "  \"{label}\";");
                }
            }
        }
        for (u, v) in self.edges() {
            let _ = writeln!(out, "  \"{}\" -- \"{}\";", self.labels[u], self.labels[v]);
        }
        out.push_str("}\n");
        out
    }
}

/// Serialized form of a graph. Field order is part of the format.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphDocument {
    pub family: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<u64>,
    pub vertices: Vec<String>,
    pub edges: Vec<[usize; 2]>,
}

/// `S(K_n, t)` together with its word structure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SierpinskiGraph {
    n: u32,
    t: u32,
    graph: Graph,
}

impl SierpinskiGraph {
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn t(&self) -> u32 {
        self.t
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn into_graph(self) -> Graph {
        self.graph
    }

    pub fn word(&self, rank: usize) -> VertexWord {
        rank_word(rank, self.n, self.t as usize).expect("rank within the graph")
    }

    pub fn rank(&self, word: &VertexWord) -> Result<usize> {
        if word.len() != self.t as usize {
            return Err(invalid(format!(
                "word of length {} in a graph of level {}",
                word.len(),
                self.t
            )));
        }
        word.rank(self.n)
    }

    /// The constant words `11…1, 22…2, …, nn…n`, in alphabet order.
    pub fn extreme_vertices(&self) -> Vec<VertexWord> {
        (1..=self.n)
            .map(|c| VertexWord::constant(c, self.t as usize))
            .collect()
    }

    pub fn extreme_ranks(&self) -> Vec<usize> {
        self.extreme_vertices()
            .iter()
            .map(|w| w.rank(self.n).expect("constant word in range"))
            .collect()
    }
}

impl AsRef<Graph> for SierpinskiGraph {
    fn as_ref(&self) -> &Graph {
        &self.graph
    }
}

/// Adjacency in `S(K_n, t)` by the word rule: some position `i` has
/// `u_j = v_j` for `j < i`, `u_i != v_i`, and `u_j = v_i`, `v_j = u_i` for
/// every `j > i`.
pub fn adjacent_by_rule(u: &VertexWord, v: &VertexWord, n: u32) -> Result<bool> {
    if u.len() != v.len() {
        return Err(invalid(format!(
            "words of different lengths {} and {}",
            u.len(),
            v.len()
        )));
    }
    for word in [u, v] {
        if let Some(&bad) = word.letters().iter().find(|&&l| l == 0 || l > n) {
            return Err(invalid(format!("letter {bad} outside 1..={n}")));
        }
    }
    let (a, b) = (u.letters(), v.letters());
    // Clause (i) forces i to be the first position where the words differ.
    let Some(i) = (0..a.len()).find(|&i| a[i] != b[i]) else {
        return Ok(false);
    };
    Ok((i + 1..a.len()).all(|j| a[j] == b[i] && b[j] == a[i]))
}

/// Builds `S(K_n, t)` recursively: `S(K_n, 1) = K_n`, and level `t` is `n`
/// prefixed copies of level `t - 1` joined by the bridges
/// `x y…y -- y x…x` for every pair of letters `x != y`.
pub fn build_sierpinski(n: u32, t: u32) -> Result<SierpinskiGraph> {
    build_sierpinski_with_capacity(n, t, Capacity::default())
}

pub fn build_sierpinski_with_capacity(n: u32, t: u32, capacity: Capacity) -> Result<SierpinskiGraph> {
    if n < 2 {
        return Err(invalid(format!("alphabet size n = {n} must be at least 2")));
    }
    if t < 1 {
        return Err(invalid("level t must be at least 1"));
    }
    let order = checked_order(n, t).ok_or(Error::Capacity {
        what: "vertices",
        requested: u128::MAX,
        limit: capacity.max_vertices,
    })?;
    capacity.check(order, (n as u128) * (order - 1) / 2)?;

    let nu = n as usize;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for x in 0..nu {
        for y in x + 1..nu {
            edges.push((x, y));
        }
    }
    // `block` is n^(level-1); `repunit` is 1 + n + … + n^(level-2).
    let mut block = 1usize;
    let mut repunit = 0usize;
    for _level in 2..=t {
        repunit = repunit * nu + 1;
        block *= nu;
        let copy_edges = edges.len();
        let mut next = Vec::with_capacity(copy_edges * nu + nu * (nu - 1) / 2);
        for x in 0..nu {
            let offset = x * block;
            next.extend(edges.iter().map(|&(u, v)| (u + offset, v + offset)));
        }
        for x in 0..nu {
            for y in 0..nu {
                if x == y {
                    continue;
                }
                let xyy = x * block + y * repunit;
                let yxx = y * block + x * repunit;
                if xyy < yxx {
                    next.push((xyy, yxx));
                }
            }
        }
        edges = next;
    }

    let labels = (0..order as usize)
        .map(|r| rank_word(r, n, t as usize).map(|w| w.label(n)))
        .collect::<Result<Vec<_>>>()?;
    let graph = Graph::from_edges(Family::Sierpinski { n, t }, labels, &edges)?;
    Ok(SierpinskiGraph { n, t, graph })
}

pub fn build_complete(n: usize) -> Result<Graph> {
    build_complete_with_capacity(n, Capacity::default())
}

pub fn build_complete_with_capacity(n: usize, capacity: Capacity) -> Result<Graph> {
    if n < 1 {
        return Err(invalid("complete graph needs at least one vertex"));
    }
    capacity.check(n as u128, (n as u128) * (n as u128 - 1) / 2)?;
    let edges: Vec<_> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    let labels = (1..=n).map(|i| i.to_string()).collect();
    Graph::from_edges(Family::Complete { n }, labels, &edges)
}

/// `P_m` with vertices labelled `1..=m` in line order.
pub fn build_path(m: usize) -> Result<Graph> {
    build_path_with_capacity(m, Capacity::default())
}

pub fn build_path_with_capacity(m: usize, capacity: Capacity) -> Result<Graph> {
    if m < 1 {
        return Err(invalid("path needs at least one vertex"));
    }
    capacity.check(m as u128, m as u128 - 1)?;
    let edges: Vec<_> = (1..m).map(|i| (i - 1, i)).collect();
    let labels = (1..=m).map(|i| i.to_string()).collect();
    Graph::from_edges(Family::Path { m }, labels, &edges)
}
