//! Finite multigraphs with stable string identifiers.
//!
//! Parallel edges and loops are part of the model. Edge subsets are bit
//! masks over the host graph's edge list, which caps a graph at 64 edges;
//! exhaustive enumeration is only practical far below that anyway.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use itertools::Itertools;
use petgraph::unionfind::UnionFind;

use crate::error::{Error, Result};

const MAX_EDGES: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub id: String,
    /// Indices into the vertex list; equal for a loop.
    pub ends: [usize; 2],
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.ends[0] == self.ends[1]
    }

    /// The endpoint opposite `v`, if `v` is an endpoint.
    pub fn other(&self, v: usize) -> Option<usize> {
        if self.ends[0] == v {
            Some(self.ends[1])
        } else if self.ends[1] == v {
            Some(self.ends[0])
        } else {
            None
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Multigraph {
    vertices: Vec<String>,
    edges: Vec<Edge>,
    vertex_index: HashMap<String, usize>,
    edge_index: HashMap<String, usize>,
}

/// A set of edges of some host [`Multigraph`], stored as a bit mask over
/// the host's edge indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct EdgeSet(u64);

impl EdgeSet {
    pub fn empty() -> Self {
        EdgeSet(0)
    }

    /// All of the first `n` edges.
    pub fn full(n: usize) -> Self {
        if n >= 64 {
            EdgeSet(u64::MAX)
        } else {
            EdgeSet((1u64 << n) - 1)
        }
    }

    pub fn from_indices(indices: impl IntoIterator<Item = usize>) -> Self {
        indices.into_iter().fold(EdgeSet(0), |s, i| s.with(i))
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn contains(self, i: usize) -> bool {
        i < 64 && self.0 & (1u64 << i) != 0
    }

    pub fn with(self, i: usize) -> Self {
        EdgeSet(self.0 | (1u64 << i))
    }

    pub fn without(self, i: usize) -> Self {
        EdgeSet(self.0 & !(1u64 << i))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: Self) -> Self {
        EdgeSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        EdgeSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        EdgeSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    /// Edge indices in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..64).filter(move |&i| self.0 & (1u64 << i) != 0)
    }
}

/// Result of contracting a set of edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Contraction {
    pub graph: Multigraph,
    /// `class_of[v]` is the quotient vertex of original vertex `v`.
    pub class_of: Vec<usize>,
    /// `edge_origin[e']` is the original index of quotient edge `e'`.
    pub edge_origin: Vec<usize>,
}

impl Multigraph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a graph from vertex identifiers and `(edge id, end, end)`
    /// triples.
    pub fn from_parts<V, E, A, B>(
        vertices: impl IntoIterator<Item = V>,
        edges: impl IntoIterator<Item = (E, A, B)>,
    ) -> Result<Self>
    where
        V: Into<String>,
        E: Into<String>,
        A: AsRef<str>,
        B: AsRef<str>,
    {
        let mut g = Multigraph::new();
        for v in vertices {
            g.add_vertex(v)?;
        }
        for (id, a, b) in edges {
            g.add_edge(id, a.as_ref(), b.as_ref())?;
        }
        Ok(g)
    }

    pub fn add_vertex(&mut self, id: impl Into<String>) -> Result<usize> {
        let id = id.into();
        if self.vertex_index.contains_key(&id) {
            return Err(Error::DuplicateVertex(id));
        }
        let idx = self.vertices.len();
        self.vertex_index.insert(id.clone(), idx);
        self.vertices.push(id);
        Ok(idx)
    }

    pub fn add_edge(&mut self, id: impl Into<String>, a: &str, b: &str) -> Result<usize> {
        let id = id.into();
        if self.edge_index.contains_key(&id) {
            return Err(Error::DuplicateEdge(id));
        }
        if self.edges.len() >= MAX_EDGES {
            return Err(Error::TooManyEdges(self.edges.len() + 1));
        }
        let a = self.vertex(a)?;
        let b = self.vertex(b)?;
        Ok(self.push_edge(id, a, b))
    }

    fn push_edge(&mut self, id: String, a: usize, b: usize) -> usize {
        let idx = self.edges.len();
        self.edge_index.insert(id.clone(), idx);
        self.edges.push(Edge { id, ends: [a, b] });
        idx
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_at(&self, idx: usize) -> &Edge {
        &self.edges[idx]
    }

    pub fn vertex_id(&self, idx: usize) -> &str {
        &self.vertices[idx]
    }

    pub fn vertex(&self, id: &str) -> Result<usize> {
        self.vertex_index
            .get(id)
            .copied()
            .ok_or_else(|| Error::UnknownVertex(id.to_string()))
    }

    pub fn edge(&self, id: &str) -> Result<usize> {
        self.edge_index
            .get(id)
            .copied()
            .ok_or_else(|| Error::UnknownEdge(id.to_string()))
    }

    pub fn all_edges(&self) -> EdgeSet {
        EdgeSet::full(self.edges.len())
    }

    pub fn loops(&self) -> EdgeSet {
        EdgeSet::from_indices(
            self.edges
                .iter()
                .enumerate()
                .filter(|(_, e)| e.is_loop())
                .map(|(i, _)| i),
        )
    }

    pub fn edge_set<S: AsRef<str>>(&self, ids: &[S]) -> Result<EdgeSet> {
        ids.iter().try_fold(
            EdgeSet::empty(),
            |s, id| Ok(s.with(self.edge(id.as_ref())?)),
        )
    }

    /// Identifiers of the edges in `set`, sorted lexicographically.
    pub fn sorted_ids(&self, set: EdgeSet) -> Vec<&str> {
        let mut ids: Vec<&str> = set.iter().map(|i| self.edges[i].id.as_str()).collect();
        ids.sort_unstable();
        ids
    }

    fn check_subset(&self, set: EdgeSet) -> Result<()> {
        if set.is_subset(self.all_edges()) {
            Ok(())
        } else {
            let bad = set.difference(self.all_edges()).iter().next().unwrap_or(0);
            Err(Error::UnknownEdge(format!("#{bad}")))
        }
    }

    fn union_find(&self, set: EdgeSet) -> UnionFind<usize> {
        let mut uf = UnionFind::new(self.vertices.len());
        for i in set.iter() {
            let [a, b] = self.edges[i].ends;
            uf.union(a, b);
        }
        uf
    }

    /// Per-vertex component labels of `Γ|_set`, numbered `0..k` in order of
    /// first appearance.
    pub fn component_labels(&self, set: EdgeSet) -> (Vec<usize>, usize) {
        let uf = self.union_find(set);
        let mut root_to_label = HashMap::new();
        let labels = (0..self.vertices.len())
            .map(|v| {
                let next = root_to_label.len();
                *root_to_label.entry(uf.find(v)).or_insert(next)
            })
            .collect();
        (labels, root_to_label.len())
    }

    pub fn component_count(&self, set: EdgeSet) -> usize {
        self.component_labels(set).1
    }

    /// Vertex partition into connected components, each listed in input
    /// order, components ordered by their first vertex.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let (labels, k) = self.component_labels(self.all_edges());
        let mut parts = vec![Vec::new(); k];
        for (v, &c) in labels.iter().enumerate() {
            parts[c].push(v);
        }
        parts
    }

    pub fn is_connected(&self) -> bool {
        self.component_count(self.all_edges()) <= 1
    }

    /// Cycle-free test. A loop is a cycle.
    pub fn is_forest(&self, set: EdgeSet) -> bool {
        let mut uf = UnionFind::new(self.vertices.len());
        set.iter().all(|i| {
            let [a, b] = self.edges[i].ends;
            uf.union(a, b)
        })
    }

    pub fn is_spanning_tree(&self, set: EdgeSet) -> bool {
        set.is_subset(self.all_edges())
            && set.len() + 1 == self.vertices.len()
            && self.is_forest(set)
    }

    pub fn is_n_forest(&self, set: EdgeSet, n: usize) -> bool {
        set.is_subset(self.all_edges())
            && self.is_forest(set)
            && set.len() + n == self.vertices.len()
    }

    /// Contracts the edges of `s`: endpoints of each edge in `s` are
    /// identified and the edges removed. Quotient vertices are named after
    /// the first member of their class; remaining edges keep their ids.
    pub fn contract(&self, s: EdgeSet) -> Result<Contraction> {
        self.check_subset(s)?;
        let (class_of, k) = self.component_labels(s);
        let mut reps = vec![None; k];
        for (v, &c) in class_of.iter().enumerate() {
            if reps[c].is_none() {
                reps[c] = Some(v);
            }
        }
        let mut graph = Multigraph::new();
        for rep in reps {
            let rep = rep.expect("every class has a member");
            graph.add_vertex(self.vertices[rep].clone())?;
        }
        let mut edge_origin = Vec::new();
        for (i, e) in self.edges.iter().enumerate() {
            if s.contains(i) {
                continue;
            }
            graph.push_edge(e.id.clone(), class_of[e.ends[0]], class_of[e.ends[1]]);
            edge_origin.push(i);
        }
        Ok(Contraction {
            graph,
            class_of,
            edge_origin,
        })
    }

    /// Contracts edges given by identifier.
    pub fn contract_ids<S: AsRef<str>>(&self, ids: &[S]) -> Result<Contraction> {
        self.contract(self.edge_set(ids)?)
    }

    fn non_loop_indices(&self, within: EdgeSet) -> Vec<usize> {
        within
            .iter()
            .filter(|&i| !self.edges[i].is_loop())
            .collect()
    }

    /// Acyclic subsets of `within` with exactly `size` edges.
    fn forests_of_size(&self, within: EdgeSet, size: usize) -> Vec<EdgeSet> {
        let candidates = self.non_loop_indices(within);
        if size > candidates.len() {
            return Vec::new();
        }
        let found = candidates
            .into_iter()
            .combinations(size)
            .map(EdgeSet::from_indices)
            .filter(|&s| self.is_forest(s))
            .collect();
        self.sort_lex(found)
    }

    /// Orders edge sets lexicographically by their sorted identifier lists.
    pub fn sort_lex(&self, mut sets: Vec<EdgeSet>) -> Vec<EdgeSet> {
        sets.sort_by_cached_key(|&s| {
            self.sorted_ids(s)
                .into_iter()
                .map(str::to_owned)
                .collect::<Vec<_>>()
        });
        sets
    }

    /// All spanning trees.
    pub fn spanning_trees(&self) -> Result<Vec<EdgeSet>> {
        if !self.is_connected() {
            return Err(Error::Disconnected);
        }
        if self.vertices.is_empty() {
            return Ok(Vec::new());
        }
        Ok(self.forests_of_size(self.all_edges(), self.vertices.len() - 1))
    }

    /// All cycle-free edge sets whose spanning subgraph has exactly `n`
    /// components.
    pub fn n_forests(&self, n: usize) -> Result<Vec<EdgeSet>> {
        if n < 1 {
            return Err(Error::InvalidForestCount);
        }
        if n > self.vertices.len() {
            return Ok(Vec::new());
        }
        Ok(self.forests_of_size(self.all_edges(), self.vertices.len() - n))
    }

    /// All maximal forests of `Γ|_s`: one spanning tree per component.
    pub fn maximal_forests(&self, s: EdgeSet) -> Vec<EdgeSet> {
        let s = s.intersection(self.all_edges());
        let size = self.vertices.len() - self.component_count(s);
        self.forests_of_size(s, size)
    }

    /// The oriented edge path from `from` to `to` inside `Γ|_set`, as
    /// `(edge index, traversed ends[0] → ends[1])` pairs. Breadth-first, so
    /// unique whenever `set` is a forest.
    pub fn path_within(&self, set: EdgeSet, from: usize, to: usize) -> Option<Vec<(usize, bool)>> {
        let n = self.vertices.len();
        let mut via: Vec<Option<(usize, usize, bool)>> = vec![None; n];
        let mut seen = vec![false; n];
        seen[from] = true;
        let mut queue = VecDeque::from([from]);
        while let Some(v) = queue.pop_front() {
            if v == to {
                break;
            }
            for i in set.iter() {
                let e = &self.edges[i];
                if e.is_loop() {
                    continue;
                }
                let Some(w) = e.other(v) else { continue };
                if !seen[w] {
                    seen[w] = true;
                    via[w] = Some((v, i, e.ends[0] == v));
                    queue.push_back(w);
                }
            }
        }
        if !seen[to] {
            return None;
        }
        let mut path = Vec::new();
        let mut cur = to;
        while let Some((prev, edge, forward)) = via[cur] {
            path.push((edge, forward));
            cur = prev;
        }
        path.reverse();
        Some(path)
    }

    /// The fundamental cycle of `edge` with respect to the spanning tree
    /// `tree`, traversing `edge` in its stored direction first. A loop is
    /// its own cycle.
    pub fn fundamental_cycle(&self, tree: EdgeSet, edge: usize) -> Option<Vec<(usize, bool)>> {
        let e = self.edges.get(edge)?;
        if e.is_loop() {
            return Some(vec![(edge, true)]);
        }
        if tree.contains(edge) {
            return None;
        }
        let mut cycle = vec![(edge, true)];
        cycle.extend(self.path_within(tree, e.ends[1], e.ends[0])?);
        Some(cycle)
    }
}

impl fmt::Display for Multigraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "vertices [{}]; edges [", self.vertices.join(", "))?;
        for (i, e) in self.edges.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(
                f,
                "{}: {}-{}",
                e.id, self.vertices[e.ends[0]], self.vertices[e.ends[1]]
            )?;
        }
        write!(f, "]")
    }
}
