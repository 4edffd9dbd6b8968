//! Abstract and geometric graphs, plus the crossing structures derived from a
//! drawing: the edge-crossing graph, the crossing subgraph and the crossing
//! component graph.

use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::error::Error;
use crate::geometry::{segments_cross, validate_general_position, Point, Scalar, Segment};

/// Simple undirected graph with stable string vertex ids.
///
/// Vertices are indexed `0..n` in insertion order. Edges are stored with the
/// smaller endpoint first and indexed in insertion order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbstractGraph {
    ids: Vec<String>,
    index: HashMap<String, usize>,
    edges: Vec<(usize, usize)>,
    edge_index: HashMap<(usize, usize), usize>,
    adj: Vec<Vec<usize>>,
}

impl Default for AbstractGraph {
    fn default() -> Self {
        Self::new()
    }
}

impl AbstractGraph {
    pub fn new() -> Self {
        AbstractGraph {
            ids: Vec::new(),
            index: HashMap::new(),
            edges: Vec::new(),
            edge_index: HashMap::new(),
            adj: Vec::new(),
        }
    }

    /// Graph on `n` vertices named `"0"`..`"n-1"`.
    pub fn with_vertices(n: usize) -> Self {
        let mut g = Self::new();
        for i in 0..n {
            g.add_vertex(i.to_string()).expect("fresh ids");
        }
        g
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, Error> {
        let mut g = Self::with_vertices(n);
        for &(a, b) in edges {
            g.add_edge(a, b)?;
        }
        Ok(g)
    }

    pub fn cycle(n: usize) -> Self {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Self::from_edges(n, &edges).expect("cycle needs n >= 3")
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Self::with_vertices(n);
        for a in 0..n {
            for b in a + 1..n {
                g.add_edge(a, b).expect("distinct pair");
            }
        }
        g
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_edges(n, &edges).expect("path edges are simple")
    }

    pub fn add_vertex(&mut self, id: impl Into<String>) -> Result<usize, Error> {
        let id = id.into();
        if self.index.contains_key(&id) {
            return Err(Error::DuplicateVertex(id));
        }
        let v = self.ids.len();
        self.index.insert(id.clone(), v);
        self.ids.push(id);
        self.adj.push(Vec::new());
        Ok(v)
    }

    pub fn add_edge(&mut self, a: usize, b: usize) -> Result<usize, Error> {
        let n = self.ids.len();
        if a >= n || b >= n {
            return Err(Error::UnknownVertex(format!("#{}", a.max(b))));
        }
        if a == b {
            return Err(Error::SelfLoop(self.ids[a].clone()));
        }
        let key = (a.min(b), a.max(b));
        if self.edge_index.contains_key(&key) {
            return Err(Error::DuplicateEdge(
                self.ids[key.0].clone(),
                self.ids[key.1].clone(),
            ));
        }
        let e = self.edges.len();
        self.edges.push(key);
        self.edge_index.insert(key, e);
        self.adj[a].push(b);
        self.adj[b].push(a);
        Ok(e)
    }

    pub fn add_edge_by_id(&mut self, a: &str, b: &str) -> Result<usize, Error> {
        let ia = self
            .vertex(a)
            .ok_or_else(|| Error::UnknownVertex(a.to_string()))?;
        let ib = self
            .vertex(b)
            .ok_or_else(|| Error::UnknownVertex(b.to_string()))?;
        self.add_edge(ia, ib)
    }

    pub fn vertex_count(&self) -> usize {
        self.ids.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edge_index.contains_key(&(a.min(b), a.max(b)))
    }

    pub fn edge_between(&self, a: usize, b: usize) -> Option<usize> {
        self.edge_index.get(&(a.min(b), a.max(b))).copied()
    }

    pub fn id(&self, v: usize) -> &str {
        &self.ids[v]
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn vertex(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    /// Display id of edge `e`, `"a-b"` with endpoints in index order.
    pub fn edge_id(&self, e: usize) -> String {
        let (a, b) = self.edges[e];
        format!("{}-{}", self.ids[a], self.ids[b])
    }

    pub fn isolated_vertices(&self) -> Vec<usize> {
        (0..self.vertex_count())
            .filter(|&v| self.adj[v].is_empty())
            .collect()
    }

    /// Connected components as sorted vertex lists, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.vertex_count()];
        let mut out = Vec::new();
        for s in 0..self.vertex_count() {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Subgraph induced by `vertices` (kept in the given order).
    pub fn induced(&self, vertices: &[usize]) -> AbstractGraph {
        let mut g = AbstractGraph::new();
        let mut local = HashMap::new();
        for &v in vertices {
            local.insert(v, g.add_vertex(self.ids[v].clone()).expect("distinct ids"));
        }
        for &(a, b) in &self.edges {
            if let (Some(&la), Some(&lb)) = (local.get(&a), local.get(&b)) {
                g.add_edge(la, lb).expect("simple");
            }
        }
        g
    }
}

/// A 2-coloring of the vertices with no monochromatic edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bipartition {
    side: Vec<u8>,
}

impl Bipartition {
    pub fn side(&self, v: usize) -> u8 {
        self.side[v]
    }

    pub fn sides(&self) -> &[u8] {
        &self.side
    }

    pub fn part(&self, s: u8) -> Vec<usize> {
        (0..self.side.len())
            .filter(|&v| self.side[v] == s)
            .collect()
    }
}

/// BFS 2-coloring; each component's smallest vertex lands on side 0.
pub fn is_bipartite(g: &AbstractGraph) -> Option<Bipartition> {
    let n = g.vertex_count();
    let mut side: Vec<Option<u8>> = vec![None; n];
    for s in 0..n {
        if side[s].is_some() {
            continue;
        }
        side[s] = Some(0);
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            let su = side[u].unwrap();
            for &w in g.neighbors(u) {
                match side[w] {
                    None => {
                        side[w] = Some(1 - su);
                        queue.push_back(w);
                    }
                    Some(sw) if sw == su => return None,
                    Some(_) => {}
                }
            }
        }
    }
    Some(Bipartition {
        side: side.into_iter().map(|s| s.unwrap()).collect(),
    })
}

/// Unordered pairs `(e, f)`, `e < f`, of edge indices whose segments properly
/// cross, sorted.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CrossingSet {
    pairs: Vec<(usize, usize)>,
    matrix: Vec<bool>,
    edge_count: usize,
}

impl CrossingSet {
    fn from_pairs(edge_count: usize, mut pairs: Vec<(usize, usize)>) -> Self {
        pairs.sort_unstable();
        let mut matrix = vec![false; edge_count * edge_count];
        for &(e, f) in &pairs {
            matrix[e * edge_count + f] = true;
            matrix[f * edge_count + e] = true;
        }
        CrossingSet {
            pairs,
            matrix,
            edge_count,
        }
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn cross(&self, e: usize, f: usize) -> bool {
        self.matrix[e * self.edge_count + f]
    }

    /// Edges that cross at least one other edge, ascending.
    pub fn crossing_edges(&self) -> Vec<usize> {
        let set: BTreeSet<usize> = self.pairs.iter().flat_map(|&(e, f)| [e, f]).collect();
        set.into_iter().collect()
    }
}

/// A simple graph with a straight-line drawing in general position.
///
/// The crossing set is computed once, at construction.
#[derive(Clone, Debug)]
pub struct GeometricGraph<T> {
    graph: AbstractGraph,
    coords: Vec<Point<T>>,
    crossings: CrossingSet,
}

impl<T: Scalar> GeometricGraph<T> {
    /// Validates general position and computes the crossings.
    pub fn new(graph: AbstractGraph, coords: Vec<Point<T>>) -> Result<Self, Error> {
        if coords.len() != graph.vertex_count() {
            return Err(Error::CoordinateCount {
                vertices: graph.vertex_count(),
                coords: coords.len(),
            });
        }
        let violations =
            validate_general_position(&coords, graph.edges()).map_err(|e| match e {
                crate::geometry::GeometryError::DuplicatePoint(a, b) => {
                    Error::DuplicatePoint(graph.id(a).to_string(), graph.id(b).to_string())
                }
                other => Error::Geometry(other),
            })?;
        if !violations.is_empty() {
            return Err(Error::GeneralPosition(
                violations
                    .iter()
                    .map(|v| describe_violation(&graph, v))
                    .collect(),
            ));
        }
        let segments: Vec<Segment<T>> = graph
            .edges()
            .iter()
            .map(|&(a, b)| Segment::new(coords[a].clone(), coords[b].clone()))
            .collect::<Result<_, _>>()?;
        let mut pairs = Vec::new();
        for e in 0..segments.len() {
            for f in e + 1..segments.len() {
                if segments_cross(&segments[e], &segments[f])? {
                    pairs.push((e, f));
                }
            }
        }
        let crossings = CrossingSet::from_pairs(graph.edge_count(), pairs);
        Ok(GeometricGraph {
            graph,
            coords,
            crossings,
        })
    }

    /// Builds a drawing from index pairs with ids `"0"`..`"n-1"`.
    pub fn from_parts(coords: Vec<Point<T>>, edges: &[(usize, usize)]) -> Result<Self, Error> {
        let graph = AbstractGraph::from_edges(coords.len(), edges)?;
        Self::new(graph, coords)
    }

    /// Same drawing with coordinates converted to another exact scalar.
    pub fn cast<U: Scalar + From<T>>(&self) -> GeometricGraph<U> {
        GeometricGraph {
            graph: self.graph.clone(),
            coords: self.coords.iter().cloned().map(Point::cast).collect(),
            crossings: self.crossings.clone(),
        }
    }

    pub fn coords(&self) -> &[Point<T>] {
        &self.coords
    }

    pub fn coord(&self, v: usize) -> &Point<T> {
        &self.coords[v]
    }
}

impl<T> GeometricGraph<T> {
    pub fn graph(&self) -> &AbstractGraph {
        &self.graph
    }

    pub fn crossings(&self) -> &CrossingSet {
        &self.crossings
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    pub fn edge_count(&self) -> usize {
        self.graph.edge_count()
    }

    pub fn is_plane(&self) -> bool {
        self.crossings.is_empty()
    }

    pub fn isolated_vertices(&self) -> Vec<usize> {
        self.graph.isolated_vertices()
    }

    /// Fails with [`Error::IsolatedVertices`] if any vertex has degree 0.
    pub fn require_no_isolated(&self) -> Result<(), Error> {
        let iso = self.isolated_vertices();
        if iso.is_empty() {
            Ok(())
        } else {
            Err(Error::IsolatedVertices(
                iso.iter().map(|&v| self.graph.id(v).to_string()).collect(),
            ))
        }
    }
}

fn describe_violation(g: &AbstractGraph, v: &crate::geometry::PositionViolation) -> String {
    use crate::geometry::PositionViolation::*;
    match v {
        Collinear([a, b, c]) => {
            format!(
                "vertices {}, {}, {} are collinear",
                g.id(*a),
                g.id(*b),
                g.id(*c)
            )
        }
        Concurrent([a, b, c]) => format!(
            "edges {}, {}, {} pass through a common point",
            g.edge_id(*a),
            g.edge_id(*b),
            g.edge_id(*c)
        ),
    }
}

/// Pairs of edges of `g` that properly cross.
pub fn crossing_set<T>(g: &GeometricGraph<T>) -> &CrossingSet {
    g.crossings()
}

/// The edge-crossing graph: vertex `i` stands for edge `i` of `g` (and
/// carries its edge id), adjacent when the edges cross.
pub fn edge_crossing_graph<T>(g: &GeometricGraph<T>) -> AbstractGraph {
    let mut ex = AbstractGraph::new();
    for e in 0..g.edge_count() {
        ex.add_vertex(g.graph().edge_id(e))
            .expect("edge ids are distinct");
    }
    for &(e, f) in g.crossings().pairs() {
        ex.add_edge(e, f).expect("crossing pairs are distinct");
    }
    ex
}

/// The subdrawing formed by the crossing edges, with back-references into the
/// original graph.
#[derive(Clone, Debug)]
pub struct CrossingSubgraph<T> {
    pub drawing: GeometricGraph<T>,
    /// Local vertex -> vertex of the original graph.
    pub vertex_origin: Vec<usize>,
    /// Local edge -> edge of the original graph.
    pub edge_origin: Vec<usize>,
}

pub fn crossing_subgraph<T: Scalar>(g: &GeometricGraph<T>) -> CrossingSubgraph<T> {
    let edge_origin = g.crossings().crossing_edges();
    let mut vertex_origin: Vec<usize> = edge_origin
        .iter()
        .flat_map(|&e| {
            let (a, b) = g.graph().edges()[e];
            [a, b]
        })
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    vertex_origin.sort_unstable();
    let local: HashMap<usize, usize> = vertex_origin
        .iter()
        .enumerate()
        .map(|(i, &v)| (v, i))
        .collect();

    let mut graph = AbstractGraph::new();
    for &v in &vertex_origin {
        graph.add_vertex(g.graph().id(v)).expect("distinct ids");
    }
    for &e in &edge_origin {
        let (a, b) = g.graph().edges()[e];
        graph.add_edge(local[&a], local[&b]).expect("simple");
    }
    let coords = vertex_origin.iter().map(|&v| g.coord(v).clone()).collect();

    let edge_local: HashMap<usize, usize> = edge_origin
        .iter()
        .enumerate()
        .map(|(i, &e)| (e, i))
        .collect();
    let pairs = g
        .crossings()
        .pairs()
        .iter()
        .map(|(e, f)| (edge_local[e], edge_local[f]))
        .collect();
    let crossings = CrossingSet::from_pairs(edge_origin.len(), pairs);
    CrossingSubgraph {
        drawing: GeometricGraph {
            graph,
            coords,
            crossings,
        },
        vertex_origin,
        edge_origin,
    }
}

/// A connected component of the crossing subgraph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossingComponent {
    /// Vertices of the original graph, ascending.
    pub vertices: Vec<usize>,
    /// Edges of the original graph, ascending.
    pub edges: Vec<usize>,
    /// Some two edges of this component cross each other.
    pub self_crossing: bool,
}

/// One vertex per component of the crossing subgraph; components are adjacent
/// when an edge of one crosses an edge of the other. Self-crossing is carried
/// by [`CrossingComponent::self_crossing`] rather than a loop.
#[derive(Clone, Debug)]
pub struct ComponentGraph {
    pub graph: AbstractGraph,
    pub components: Vec<CrossingComponent>,
}

impl ComponentGraph {
    /// Component index of each original vertex (None if not in a crossing edge).
    pub fn component_of_vertex(&self, n: usize) -> Vec<Option<usize>> {
        let mut out = vec![None; n];
        for (c, comp) in self.components.iter().enumerate() {
            for &v in &comp.vertices {
                out[v] = Some(c);
            }
        }
        out
    }
}

pub fn crossing_component_graph<T: Scalar>(g: &GeometricGraph<T>) -> ComponentGraph {
    let sub = crossing_subgraph(g);
    let local_components = sub.drawing.graph().components();
    let mut edge_component = HashMap::new();
    let mut components = Vec::new();
    for (c, local) in local_components.iter().enumerate() {
        let vertices: Vec<usize> = local.iter().map(|&v| sub.vertex_origin[v]).collect();
        let mut edges = Vec::new();
        for (le, &(a, _)) in sub.drawing.graph().edges().iter().enumerate() {
            if local.binary_search(&a).is_ok() {
                edges.push(sub.edge_origin[le]);
            }
        }
        edges.sort_unstable();
        for &e in &edges {
            edge_component.insert(e, c);
        }
        components.push(CrossingComponent {
            vertices,
            edges,
            self_crossing: false,
        });
    }

    let mut graph = AbstractGraph::new();
    for c in 0..components.len() {
        graph.add_vertex(format!("C{c}")).expect("distinct");
    }
    for &(e, f) in g.crossings().pairs() {
        let (ce, cf) = (edge_component[&e], edge_component[&f]);
        if ce == cf {
            components[ce].self_crossing = true;
        } else if !graph.has_edge(ce, cf) {
            graph.add_edge(ce, cf).expect("checked");
        }
    }
    ComponentGraph { graph, components }
}

/// Vertex pairs `(u, v)`, `u < v`, such that an edge at `u` crosses an edge at
/// `v`.
pub fn co_crossing_pairs<T>(g: &GeometricGraph<T>) -> BTreeSet<(usize, usize)> {
    let mut out = BTreeSet::new();
    let edges = g.graph().edges();
    for &(e, f) in g.crossings().pairs() {
        let (a, b) = edges[e];
        let (c, d) = edges[f];
        for u in [a, b] {
            for v in [c, d] {
                out.insert((u.min(v), u.max(v)));
            }
        }
    }
    out
}
