//! Backtracking search for abstract and geometric homomorphisms, the map
//! verifier, and the strong product / chromatic number machinery used to
//! cross-check C5-colorability.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::geometry::Scalar;
use crate::graphs::{co_crossing_pairs, AbstractGraph, GeometricGraph};

/// Which structure a vertex map has to preserve.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HomKind {
    /// Edges map to edges.
    Abstract,
    /// Edges map to edges and crossing pairs to crossing pairs.
    Geometric,
    /// A geometric homomorphism that is injective on vertices.
    InjectiveGeometric,
    /// Bijection preserving edges, non-edges, crossings and non-crossings.
    GeometricIsomorphism,
}

impl HomKind {
    fn preserves_crossings(self) -> bool {
        !matches!(self, HomKind::Abstract)
    }

    fn injective(self) -> bool {
        matches!(
            self,
            HomKind::InjectiveGeometric | HomKind::GeometricIsomorphism
        )
    }
}

/// Anything a homomorphism can start from or land in: a graph together with
/// a (possibly empty) set of crossing edge pairs.
pub trait Structure {
    fn graph(&self) -> &AbstractGraph;

    /// Crossing pairs of edge indices, `e < f`.
    fn crossing_pairs(&self) -> &[(usize, usize)] {
        &[]
    }
}

/// An abstract graph is a structure without crossings.
impl Structure for AbstractGraph {
    fn graph(&self) -> &AbstractGraph {
        self
    }
}

impl<T> Structure for GeometricGraph<T> {
    fn graph(&self) -> &AbstractGraph {
        GeometricGraph::graph(self)
    }

    fn crossing_pairs(&self) -> &[(usize, usize)] {
        self.crossings().pairs()
    }
}

/// Total map from source vertex indices to target vertex indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexMap(pub Vec<usize>);

impl VertexMap {
    pub fn identity(n: usize) -> Self {
        VertexMap((0..n).collect())
    }

    pub fn image(&self, v: usize) -> usize {
        self.0[v]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &VertexMap) -> VertexMap {
        VertexMap(self.0.iter().map(|&v| other.0[v]).collect())
    }

    /// Id-keyed form for serialization.
    pub fn to_ids(
        &self,
        src: &AbstractGraph,
        tgt: &AbstractGraph,
    ) -> std::collections::BTreeMap<String, String> {
        self.0
            .iter()
            .enumerate()
            .map(|(v, &w)| (src.id(v).to_string(), tgt.id(w).to_string()))
            .collect()
    }
}

/// First condition of a [`HomKind`] that a map breaks. Vertex and edge
/// numbers are indices into the source (or target, where stated).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    WrongLength {
        expected: usize,
        found: usize,
    },
    OutOfRange {
        vertex: usize,
        image: usize,
    },
    EdgeNotPreserved {
        u: usize,
        v: usize,
    },
    CrossingNotPreserved {
        e: usize,
        f: usize,
    },
    NotInjective {
        u: usize,
        v: usize,
    },
    NotSurjective {
        target_vertex: usize,
    },
    /// Target edge between images of a source non-edge.
    NonEdgeNotReflected {
        u: usize,
        v: usize,
    },
    /// Target edges `e`, `f` cross but their preimages do not.
    NonCrossingNotReflected {
        e: usize,
        f: usize,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::WrongLength { expected, found } => {
                write!(f, "map covers {found} vertices, source has {expected}")
            }
            Violation::OutOfRange { vertex, image } => {
                write!(f, "vertex {vertex} maps to nonexistent target {image}")
            }
            Violation::EdgeNotPreserved { u, v } => write!(f, "edge {u}-{v} is not preserved"),
            Violation::CrossingNotPreserved { e, f: g } => {
                write!(f, "crossing of edges {e} and {g} is not preserved")
            }
            Violation::NotInjective { u, v } => write!(f, "vertices {u} and {v} share an image"),
            Violation::NotSurjective { target_vertex } => {
                write!(f, "target vertex {target_vertex} is not hit")
            }
            Violation::NonEdgeNotReflected { u, v } => {
                write!(f, "non-edge {u}-{v} maps onto an edge")
            }
            Violation::NonCrossingNotReflected { e, f: g } => {
                write!(
                    f,
                    "target edges {e} and {g} cross but their preimages do not"
                )
            }
        }
    }
}

/// Checks `f` against the conditions of `kind`.
pub fn verify_map<G: Structure + ?Sized, H: Structure + ?Sized>(
    g: &G,
    h: &H,
    f: &VertexMap,
    kind: HomKind,
) -> Result<(), Violation> {
    let (gg, hg) = (g.graph(), h.graph());
    if f.len() != gg.vertex_count() {
        return Err(Violation::WrongLength {
            expected: gg.vertex_count(),
            found: f.len(),
        });
    }
    for (v, &w) in f.0.iter().enumerate() {
        if w >= hg.vertex_count() {
            return Err(Violation::OutOfRange {
                vertex: v,
                image: w,
            });
        }
    }
    for &(u, v) in gg.edges() {
        if !hg.has_edge(f.image(u), f.image(v)) {
            return Err(Violation::EdgeNotPreserved { u, v });
        }
    }
    if kind.preserves_crossings() {
        for &(e, e2) in g.crossing_pairs() {
            let (a, b) = gg.edges()[e];
            let (c, d) = gg.edges()[e2];
            let fe = hg
                .edge_between(f.image(a), f.image(b))
                .expect("edges preserved");
            let ff = hg
                .edge_between(f.image(c), f.image(d))
                .expect("edges preserved");
            if !crossing_in(h, fe, ff) {
                return Err(Violation::CrossingNotPreserved { e, f: e2 });
            }
        }
    }
    if kind.injective() {
        let mut seen = vec![None; hg.vertex_count()];
        for (v, &w) in f.0.iter().enumerate() {
            if let Some(u) = seen[w] {
                return Err(Violation::NotInjective { u, v });
            }
            seen[w] = Some(v);
        }
        if kind == HomKind::GeometricIsomorphism {
            if let Some(t) = seen.iter().position(Option::is_none) {
                return Err(Violation::NotSurjective { target_vertex: t });
            }
            let inverse: Vec<usize> = seen.into_iter().map(Option::unwrap).collect();
            for &(x, y) in hg.edges() {
                if !gg.has_edge(inverse[x], inverse[y]) {
                    return Err(Violation::NonEdgeNotReflected {
                        u: inverse[x],
                        v: inverse[y],
                    });
                }
            }
            for &(e, e2) in h.crossing_pairs() {
                let (a, b) = hg.edges()[e];
                let (c, d) = hg.edges()[e2];
                let pe = gg
                    .edge_between(inverse[a], inverse[b])
                    .expect("edges reflected");
                let pf = gg
                    .edge_between(inverse[c], inverse[d])
                    .expect("edges reflected");
                if !crossing_in(g, pe, pf) {
                    return Err(Violation::NonCrossingNotReflected { e, f: e2 });
                }
            }
        }
    }
    Ok(())
}

fn crossing_in<S: Structure + ?Sized>(s: &S, e: usize, f: usize) -> bool {
    let key = (e.min(f), e.max(f));
    s.crossing_pairs().binary_search(&key).is_ok()
}

const UNASSIGNED: usize = usize::MAX;

/// Lazily enumerates every homomorphism of a given kind, each exactly once,
/// in a fixed order: source vertices are fixed in descending order of
/// degree plus co-crossing degree (ties by index) and targets are tried in
/// ascending index order.
pub struct Homomorphisms {
    n_tgt: usize,
    kind: HomKind,
    order: Vec<usize>,
    src_degree: Vec<usize>,
    tgt_degree: Vec<usize>,
    tgt_adj: Vec<bool>,
    tgt_cocross: Vec<bool>,
    /// `tgt_edge[a * n + b]` is the target edge index between a and b.
    tgt_edge: Vec<usize>,
    tgt_cross: Vec<bool>,
    tgt_edge_count: usize,
    /// Per depth: earlier source vertices adjacent to the vertex at that depth.
    adj_checks: Vec<Vec<usize>>,
    cocross_checks: Vec<Vec<usize>>,
    /// Per depth: crossing pairs `((a, b), (c, d))` completed at that depth.
    cross_checks: Vec<Vec<[usize; 4]>>,
    assign: Vec<usize>,
    used: Vec<bool>,
    next: Vec<usize>,
    depth: usize,
    done: bool,
    nodes: u64,
    budget: Option<u64>,
    budget_exhausted: bool,
}

impl Homomorphisms {
    fn new<G: Structure + ?Sized, H: Structure + ?Sized>(g: &G, h: &H, kind: HomKind) -> Self {
        let (gg, hg) = (g.graph(), h.graph());
        let n = gg.vertex_count();
        let m = hg.vertex_count();
        let geometric = kind.preserves_crossings();

        let src_cocross = if geometric {
            cocross_matrix(g)
        } else {
            vec![false; n * n]
        };
        let tgt_cocross = if geometric {
            cocross_matrix(h)
        } else {
            vec![false; m * m]
        };

        let mut tgt_adj = vec![false; m * m];
        let mut tgt_edge = vec![UNASSIGNED; m * m];
        for (e, &(a, b)) in hg.edges().iter().enumerate() {
            tgt_adj[a * m + b] = true;
            tgt_adj[b * m + a] = true;
            tgt_edge[a * m + b] = e;
            tgt_edge[b * m + a] = e;
        }
        let k = hg.edge_count();
        let mut tgt_cross = vec![false; k * k];
        for &(e, f) in h.crossing_pairs() {
            tgt_cross[e * k + f] = true;
            tgt_cross[f * k + e] = true;
        }

        let cocross_degree = |v: usize| (0..n).filter(|&u| src_cocross[v * n + u]).count();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&v| (std::cmp::Reverse(gg.degree(v) + cocross_degree(v)), v));
        let mut pos = vec![0; n];
        for (d, &v) in order.iter().enumerate() {
            pos[v] = d;
        }

        let mut adj_checks = vec![Vec::new(); n];
        let mut cocross_checks = vec![Vec::new(); n];
        for (d, &v) in order.iter().enumerate() {
            for &u in &order[..d] {
                if gg.has_edge(u, v) {
                    adj_checks[d].push(u);
                } else if src_cocross[u * n + v] {
                    cocross_checks[d].push(u);
                }
            }
        }
        let mut cross_checks = vec![Vec::new(); n];
        if geometric {
            for &(e, f) in g.crossing_pairs() {
                let (a, b) = gg.edges()[e];
                let (c, d) = gg.edges()[f];
                let last = [a, b, c, d].iter().map(|&v| pos[v]).max().unwrap();
                cross_checks[last].push([a, b, c, d]);
            }
        }

        // Isomorphisms are exactly the injective geometric homomorphisms
        // between structures with equal vertex, edge and crossing counts.
        let done = kind == HomKind::GeometricIsomorphism
            && (n != m
                || gg.edge_count() != hg.edge_count()
                || g.crossing_pairs().len() != h.crossing_pairs().len())
            || (kind.injective() && n > m);

        Homomorphisms {
            n_tgt: m,
            kind,
            order,
            src_degree: (0..n).map(|v| gg.degree(v)).collect(),
            tgt_degree: (0..m).map(|v| hg.degree(v)).collect(),
            tgt_adj,
            tgt_cocross,
            tgt_edge,
            tgt_cross,
            tgt_edge_count: k,
            adj_checks,
            cocross_checks,
            cross_checks,
            assign: vec![UNASSIGNED; n],
            used: vec![false; m],
            next: vec![0; n.max(1)],
            depth: 0,
            done,
            nodes: 0,
            budget: None,
            budget_exhausted: false,
        }
    }

    /// Stops the search (yielding `None`) after `nodes` candidate tests.
    pub fn with_budget(mut self, nodes: u64) -> Self {
        self.budget = Some(nodes);
        self
    }

    /// Candidate assignments tested so far.
    pub fn nodes(&self) -> u64 {
        self.nodes
    }

    /// The search stopped because the budget ran out, not because the space
    /// was exhausted.
    pub fn budget_exhausted(&self) -> bool {
        self.budget_exhausted
    }

    fn feasible(&self, depth: usize, v: usize, c: usize) -> bool {
        let m = self.n_tgt;
        if self.kind.injective() && (self.used[c] || self.tgt_degree[c] < self.src_degree[v]) {
            return false;
        }
        if self.adj_checks[depth]
            .iter()
            .any(|&u| !self.tgt_adj[c * m + self.assign[u]])
        {
            return false;
        }
        if self.cocross_checks[depth]
            .iter()
            .any(|&u| !self.tgt_cocross[c * m + self.assign[u]])
        {
            return false;
        }
        let image = |x: usize| if x == v { c } else { self.assign[x] };
        self.cross_checks[depth].iter().all(|&[a, b, cc, d]| {
            let e = self.tgt_edge[image(a) * m + image(b)];
            let f = self.tgt_edge[image(cc) * m + image(d)];
            self.tgt_cross[e * self.tgt_edge_count + f]
        })
    }
}

impl Iterator for Homomorphisms {
    type Item = VertexMap;

    fn next(&mut self) -> Option<VertexMap> {
        if self.done {
            return None;
        }
        let n = self.order.len();
        if n == 0 {
            self.done = true;
            return Some(VertexMap(Vec::new()));
        }
        loop {
            let d = self.depth;
            let v = self.order[d];
            if self.assign[v] != UNASSIGNED {
                self.used[self.assign[v]] = false;
                self.assign[v] = UNASSIGNED;
            }
            let mut found = None;
            while self.next[d] < self.n_tgt {
                let c = self.next[d];
                self.next[d] += 1;
                self.nodes += 1;
                if let Some(b) = self.budget {
                    if self.nodes > b {
                        self.budget_exhausted = true;
                        self.done = true;
                        return None;
                    }
                }
                if self.feasible(d, v, c) {
                    found = Some(c);
                    break;
                }
            }
            match found {
                Some(c) => {
                    self.assign[v] = c;
                    self.used[c] = true;
                    if d + 1 == n {
                        return Some(VertexMap(self.assign.clone()));
                    }
                    self.depth += 1;
                    self.next[self.depth] = 0;
                }
                None => {
                    if d == 0 {
                        self.done = true;
                        return None;
                    }
                    self.depth -= 1;
                }
            }
        }
    }
}

fn cocross_matrix<S: Structure + ?Sized>(s: &S) -> Vec<bool> {
    let g = s.graph();
    let n = g.vertex_count();
    let mut out = vec![false; n * n];
    for &(e, f) in s.crossing_pairs() {
        let (a, b) = g.edges()[e];
        let (c, d) = g.edges()[f];
        for u in [a, b] {
            for w in [c, d] {
                out[u * n + w] = true;
                out[w * n + u] = true;
            }
        }
    }
    out
}

/// Every map `g -> h` of the given kind, lazily.
///
/// Abstract graphs count as structures with no crossings, so geometric kinds
/// between abstract graphs degenerate to their abstract counterparts.
pub fn enumerate_homomorphisms<G: Structure + ?Sized, H: Structure + ?Sized>(
    g: &G,
    h: &H,
    kind: HomKind,
) -> Homomorphisms {
    Homomorphisms::new(g, h, kind)
}

pub fn find_homomorphism<G: Structure + ?Sized, H: Structure + ?Sized>(
    g: &G,
    h: &H,
    kind: HomKind,
) -> Option<VertexMap> {
    enumerate_homomorphisms(g, h, kind).next()
}

/// Vertex pairs that are neither adjacent nor co-crossing: the only pairs a
/// geometric homomorphism may identify.
pub fn identifiable_pairs<T>(g: &GeometricGraph<T>) -> BTreeSet<(usize, usize)> {
    let co = co_crossing_pairs(g);
    let n = g.vertex_count();
    let mut out = BTreeSet::new();
    for u in 0..n {
        for v in u + 1..n {
            if !g.graph().has_edge(u, v) && !co.contains(&(u, v)) {
                out.insert((u, v));
            }
        }
    }
    out
}

/// Strong product. Vertex `(g, h)` has index `g * |V(H)| + h` and id `"(g,h)"`.
pub fn strong_product(g: &AbstractGraph, h: &AbstractGraph) -> AbstractGraph {
    let (n, m) = (g.vertex_count(), h.vertex_count());
    let mut p = AbstractGraph::new();
    for a in 0..n {
        for b in 0..m {
            p.add_vertex(format!("({},{})", g.id(a), h.id(b)))
                .expect("distinct pairs");
        }
    }
    let close = |gr: &AbstractGraph, x: usize, y: usize| x == y || gr.has_edge(x, y);
    for x in 0..n * m {
        for y in x + 1..n * m {
            let (a, b) = (x / m, x % m);
            let (c, d) = (y / m, y % m);
            if close(g, a, c) && close(h, b, d) {
                p.add_edge(x, y).expect("simple");
            }
        }
    }
    p
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Chromatic {
    Exact(usize),
    ExceedsCap,
}

/// Exact chromatic number, or [`Chromatic::ExceedsCap`] if it is above `cap`.
pub fn chromatic_number(g: &AbstractGraph, cap: usize) -> Chromatic {
    let n = g.vertex_count();
    let lower = if n == 0 {
        0
    } else if g.edge_count() == 0 {
        1
    } else {
        2
    };
    (lower..=cap)
        .find(|&k| k_coloring(g, k).is_some())
        .map_or(Chromatic::ExceedsCap, Chromatic::Exact)
}

/// A proper coloring with colors `0..k`, found by DSATUR-ordered
/// backtracking, or None if there is none.
pub fn k_coloring(g: &AbstractGraph, k: usize) -> Option<Vec<usize>> {
    let n = g.vertex_count();
    if n == 0 {
        return Some(Vec::new());
    }
    if k == 0 {
        return None;
    }
    let mut colors = vec![UNASSIGNED; n];
    // neighbor_counts[v * k + c]: colored neighbors of v that use color c
    let mut neighbor_counts = vec![0u32; n * k];
    if dsatur(g, k, 0, &mut colors, &mut neighbor_counts, 0) {
        Some(colors)
    } else {
        None
    }
}

fn dsatur(
    g: &AbstractGraph,
    k: usize,
    colored: usize,
    colors: &mut Vec<usize>,
    counts: &mut Vec<u32>,
    max_used: usize,
) -> bool {
    let n = g.vertex_count();
    if colored == n {
        return true;
    }
    let saturation =
        |v: usize, counts: &Vec<u32>| (0..k).filter(|&c| counts[v * k + c] > 0).count();
    let v = (0..n)
        .filter(|&v| colors[v] == UNASSIGNED)
        .max_by_key(|&v| (saturation(v, counts), g.degree(v), std::cmp::Reverse(v)))
        .unwrap();
    // a fresh color is interchangeable with any other unused one
    let limit = (max_used + 1).min(k);
    for c in 0..limit {
        if counts[v * k + c] > 0 {
            continue;
        }
        colors[v] = c;
        for &w in g.neighbors(v) {
            counts[w * k + c] += 1;
        }
        let next_max = max_used.max(c + 1);
        if dsatur(g, k, colored + 1, colors, counts, next_max) {
            return true;
        }
        for &w in g.neighbors(v) {
            counts[w * k + c] -= 1;
        }
        colors[v] = UNASSIGNED;
    }
    false
}

/// True if `g` has three pairwise crossing edges.
pub fn has_crossing_triangle<T: Scalar>(g: &GeometricGraph<T>) -> bool {
    let x = g.crossings();
    let m = g.edge_count();
    x.pairs()
        .iter()
        .any(|&(e, f)| (f + 1..m).any(|h| x.cross(e, h) && x.cross(f, h)))
}
