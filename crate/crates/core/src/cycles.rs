//! Canonical target drawings and the deciders for C3-, C4- and
//! C5-geocolorability, plus the 5-geocolorability routines built on them.
//!
//! Colors and vertex labels are residues `0..5` throughout; `5` in the
//! traditional 1-based labeling is `0` here.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::geometry::{Point, Scalar};
use crate::graphs::{
    crossing_component_graph, crossing_subgraph, edge_crossing_graph, is_bipartite, AbstractGraph,
    GeometricGraph,
};
use crate::hom::{
    enumerate_homomorphisms, has_crossing_triangle, k_coloring, verify_map, HomKind, VertexMap,
};

/// Search node budget used when the caller does not pick one.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TargetName {
    C3Plane,
    C4Plane,
    C4Crossed,
    C5Convex,
    K5Convex,
}

/// A fixed drawing used as a homomorphism target.
#[derive(Clone, Debug)]
pub struct CanonicalTarget {
    pub name: TargetName,
    pub drawing: GeometricGraph<i64>,
    /// Edge colors (edge index -> residue), for `C5Convex` only.
    pub edge_colors: Option<Vec<usize>>,
    /// Vertex labels (vertex index -> residue), for `C5Convex` only.
    pub vertex_labels: Option<Vec<usize>>,
}

fn parabola(x: i64) -> Point<i64> {
    Point::new(x, x * x)
}

/// Builds the named target. Every vertex sits on the parabola `y = x^2`, so
/// the points are in convex position and any two disjoint chords that
/// interleave along it cross.
pub fn canonical_target(name: TargetName) -> CanonicalTarget {
    let build = |xs: &[i64], edges: &[(usize, usize)]| {
        let coords = xs.iter().map(|&x| parabola(x)).collect();
        GeometricGraph::from_parts(coords, edges).expect("canonical drawings are valid")
    };
    match name {
        TargetName::C3Plane => CanonicalTarget {
            name,
            drawing: build(&[0, 1, 2], &[(0, 1), (1, 2), (2, 0)]),
            edge_colors: None,
            vertex_labels: None,
        },
        TargetName::C4Plane => CanonicalTarget {
            name,
            drawing: build(&[0, 1, 2, 3], &[(0, 1), (1, 2), (2, 3), (3, 0)]),
            edge_colors: None,
            vertex_labels: None,
        },
        // Cycle 0-1-2-3 visits convex positions 0, 2, 1, 3: edges 0-1 and
        // 2-3 are the crossing diagonals.
        TargetName::C4Crossed => CanonicalTarget {
            name,
            drawing: build(&[0, 2, 1, 3], &[(0, 1), (1, 2), (2, 3), (3, 0)]),
            edge_colors: None,
            vertex_labels: None,
        },
        // Vertex k sits at convex position 2k mod 5 so that the cycle
        // 0-1-2-3-4 is the pentagram. Edge i joins 2i+2 and 2i+3 and has
        // color i.
        TargetName::C5Convex => {
            let edges: Vec<_> = (0..5).map(|i| ((2 * i + 2) % 5, (2 * i + 3) % 5)).collect();
            CanonicalTarget {
                name,
                drawing: build(&C5_POSITIONS, &edges),
                edge_colors: Some((0..5).collect()),
                vertex_labels: Some((0..5).collect()),
            }
        }
        TargetName::K5Convex => {
            let edges: Vec<_> = (0..5)
                .flat_map(|a| (a + 1..5).map(move |b| (a, b)))
                .collect();
            CanonicalTarget {
                name,
                drawing: build(&C5_POSITIONS, &edges),
                edge_colors: None,
                vertex_labels: None,
            }
        }
    }
}

const C5_POSITIONS: [i64; 5] = [0, 2, 4, 1, 3];

/// Which geocolorability question is being asked.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Target {
    C3,
    C4,
    C5,
    K5,
}

impl Target {
    /// The maximal realization a yes-instance maps to.
    pub fn canonical(self) -> TargetName {
        match self {
            Target::C3 => TargetName::C3Plane,
            Target::C4 => TargetName::C4Crossed,
            Target::C5 => TargetName::C5Convex,
            Target::K5 => TargetName::K5Convex,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Target::C3 => "c3",
            Target::C4 => "c4",
            Target::C5 => "c5",
            Target::K5 => "k5",
        }
    }
}

impl std::str::FromStr for Target {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s.to_ascii_lowercase().as_str() {
            "c3" => Ok(Target::C3),
            "c4" => Ok(Target::C4),
            "c5" => Ok(Target::C5),
            "k5" => Ok(Target::K5),
            other => Err(Error::Parse(format!("unknown target `{other}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ColoringKind {
    /// Crossing edges get distinct colors.
    Clique,
    /// Crossing edges get colors consecutive mod the modulus.
    Cycle,
}

/// An edge coloring of a drawing, indexed by edge.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThicknessColoring {
    pub colors: Vec<usize>,
    pub modulus: usize,
    pub kind: ColoringKind,
}

impl ThicknessColoring {
    pub fn validate<T>(&self, g: &GeometricGraph<T>) -> Result<(), Error> {
        if self.colors.len() != g.edge_count() {
            return Err(Error::InvalidColoring(format!(
                "{} colors for {} edges",
                self.colors.len(),
                g.edge_count()
            )));
        }
        if let Some(e) = self.colors.iter().position(|&c| c >= self.modulus) {
            return Err(Error::InvalidColoring(format!(
                "edge {} has color {} outside 0..{}",
                g.graph().edge_id(e),
                self.colors[e],
                self.modulus
            )));
        }
        for &(e, f) in g.crossings().pairs() {
            let (a, b) = (self.colors[e], self.colors[f]);
            let ok = match self.kind {
                ColoringKind::Clique => a != b,
                ColoringKind::Cycle => (a + 1) % self.modulus == b || (b + 1) % self.modulus == a,
            };
            if !ok {
                return Err(Error::InvalidColoring(format!(
                    "crossing edges {} and {} have colors {a} and {b}",
                    g.graph().edge_id(e),
                    g.graph().edge_id(f)
                )));
            }
        }
        Ok(())
    }

    pub fn to_ids<T>(&self, g: &GeometricGraph<T>) -> BTreeMap<String, usize> {
        self.colors
            .iter()
            .enumerate()
            .map(|(e, &c)| (g.graph().edge_id(e), c))
            .collect()
    }
}

/// Minimum number of colors in a clique-kind thickness coloring, i.e. the
/// chromatic number of the edge-crossing graph.
pub fn thickness<T>(g: &GeometricGraph<T>) -> usize {
    let ex = edge_crossing_graph(g);
    (0..=ex.vertex_count())
        .find(|&k| k_coloring(&ex, k).is_some())
        .expect("n colors always suffice")
}

/// Edges of one color and the vertices they touch.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonochromaticSubgraph {
    pub color: usize,
    pub edges: Vec<usize>,
    pub vertices: Vec<usize>,
}

/// One subgraph per used color, in ascending color order.
pub fn monochromatic_subgraphs<T>(
    g: &GeometricGraph<T>,
    coloring: &ThicknessColoring,
) -> Result<Vec<MonochromaticSubgraph>, Error> {
    coloring.validate(g)?;
    let mut by_color: BTreeMap<usize, (Vec<usize>, Vec<usize>)> = BTreeMap::new();
    for (e, &c) in coloring.colors.iter().enumerate() {
        let (a, b) = g.graph().edges()[e];
        let entry = by_color.entry(c).or_default();
        entry.0.push(e);
        entry.1.extend([a, b]);
    }
    Ok(by_color
        .into_iter()
        .map(|(color, (edges, mut vertices))| {
            vertices.sort_unstable();
            vertices.dedup();
            MonochromaticSubgraph {
                color,
                edges,
                vertices,
            }
        })
        .collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Answer {
    Yes,
    No,
}

/// A verified homomorphism into a canonical target.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub target: TargetName,
    pub map: VertexMap,
    pub coloring: Option<ThicknessColoring>,
}

/// Why a decider answered the way it did. Elements are named by their ids.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum Evidence {
    Crossing {
        edges: [String; 2],
    },
    NotThreeColorable,
    ThreeColoring {
        colors: BTreeMap<String, usize>,
    },
    NotBipartite,
    SelfCrossingComponent {
        component: usize,
        edges: [String; 2],
    },
    ComponentGraphNotBipartite,
    BipartiteStructure {
        sides: BTreeMap<String, u8>,
        component_sides: Vec<u8>,
    },
    NoDisjointTwoColoring {
        nodes: u64,
    },
    DisjointTwoColoring {
        coloring: BTreeMap<String, usize>,
    },
    NoValidC5Coloring {
        crossing_colorings: u64,
        nodes: u64,
    },
    C5Coloring {
        coloring: BTreeMap<String, usize>,
        /// color -> vertex -> side (0 labels 2i+2, 1 labels 2i+3)
        partitions: BTreeMap<usize, BTreeMap<String, u8>>,
    },
    Search {
        nodes: u64,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decision {
    pub answer: Answer,
    pub certificate: Option<Certificate>,
    pub evidence: Evidence,
}

impl Decision {
    fn no(evidence: Evidence) -> Self {
        Decision {
            answer: Answer::No,
            certificate: None,
            evidence,
        }
    }

    pub fn is_yes(&self) -> bool {
        self.answer == Answer::Yes
    }
}

fn crossing_ids<T>(g: &GeometricGraph<T>, e: usize, f: usize) -> [String; 2] {
    [g.graph().edge_id(e), g.graph().edge_id(f)]
}

/// Verifies `map` as a geometric homomorphism into the named target and
/// wraps it as a yes-decision.
fn certified<T>(
    g: &GeometricGraph<T>,
    target: TargetName,
    map: VertexMap,
    coloring: Option<ThicknessColoring>,
    evidence: Evidence,
) -> Result<Decision, Error> {
    let t = canonical_target(target);
    verify_map(g, &t.drawing, &map, HomKind::Geometric)
        .map_err(|v| Error::Certificate(format!("constructed map rejected: {v}")))?;
    Ok(Decision {
        answer: Answer::Yes,
        certificate: Some(Certificate {
            target,
            map,
            coloring,
        }),
        evidence,
    })
}

/// Plane and 3-colorable.
pub fn decide_c3<T: Scalar>(g: &GeometricGraph<T>) -> Result<Decision, Error> {
    g.require_no_isolated()?;
    if let Some(&(e, f)) = g.crossings().pairs().first() {
        return Ok(Decision::no(Evidence::Crossing {
            edges: crossing_ids(g, e, f),
        }));
    }
    let Some(colors) = k_coloring(g.graph(), 3) else {
        return Ok(Decision::no(Evidence::NotThreeColorable));
    };
    let evidence = Evidence::ThreeColoring {
        colors: colors
            .iter()
            .enumerate()
            .map(|(v, &c)| (g.graph().id(v).to_string(), c))
            .collect(),
    };
    certified(g, TargetName::C3Plane, VertexMap(colors), None, evidence)
}

// In the crossed C4 target, edge 0-1 crosses edge 2-3, and {0, 2} / {1, 3}
// are the two sides. Indexed by [crossing side][vertex side].
const C4_IMAGE: [[usize; 2]; 2] = [[0, 1], [2, 3]];

/// Bipartite, every component of the crossing subgraph plane, and the
/// crossing component graph bipartite.
pub fn decide_c4<T: Scalar>(g: &GeometricGraph<T>) -> Result<Decision, Error> {
    g.require_no_isolated()?;
    let Some(sides) = is_bipartite(g.graph()) else {
        return Ok(Decision::no(Evidence::NotBipartite));
    };
    let cg = crossing_component_graph(g);
    for (c, comp) in cg.components.iter().enumerate() {
        if comp.self_crossing {
            let (e, f) = *g
                .crossings()
                .pairs()
                .iter()
                .find(|(e, f)| comp.edges.contains(e) && comp.edges.contains(f))
                .expect("flag implies an internal crossing");
            return Ok(Decision::no(Evidence::SelfCrossingComponent {
                component: c,
                edges: crossing_ids(g, e, f),
            }));
        }
    }
    let Some(comp_sides) = is_bipartite(&cg.graph) else {
        return Ok(Decision::no(Evidence::ComponentGraphNotBipartite));
    };

    let comp_of = cg.component_of_vertex(g.vertex_count());
    let map = VertexMap(
        (0..g.vertex_count())
            .map(|v| {
                let t = comp_of[v].map_or(0, |c| comp_sides.side(c)) as usize;
                C4_IMAGE[t][sides.side(v) as usize]
            })
            .collect(),
    );
    let evidence = Evidence::BipartiteStructure {
        sides: (0..g.vertex_count())
            .map(|v| (g.graph().id(v).to_string(), sides.side(v)))
            .collect(),
        component_sides: comp_sides.sides().to_vec(),
    };
    certified(g, TargetName::C4Crossed, map, None, evidence)
}

/// Bipartite, and the crossing edges admit a 2-coloring in which crossing
/// edges differ and the two color classes share no vertex.
pub fn decide_c4_edge_coloring<T: Scalar>(g: &GeometricGraph<T>) -> Result<Decision, Error> {
    g.require_no_isolated()?;
    let Some(sides) = is_bipartite(g.graph()) else {
        return Ok(Decision::no(Evidence::NotBipartite));
    };
    let crossing = g.crossings().crossing_edges();
    let edges = g.graph().edges();
    let mut colors: Vec<Option<usize>> = vec![None; g.edge_count()];
    let mut nodes = 0u64;

    fn search<T>(
        g: &GeometricGraph<T>,
        crossing: &[usize],
        edges: &[(usize, usize)],
        i: usize,
        colors: &mut Vec<Option<usize>>,
        nodes: &mut u64,
    ) -> bool {
        if i == crossing.len() {
            return true;
        }
        let e = crossing[i];
        let (a, b) = edges[e];
        for c in 0..2 {
            *nodes += 1;
            let consistent = crossing[..i].iter().all(|&f| {
                let cf = colors[f].unwrap();
                let (x, y) = edges[f];
                let shares_vertex = a == x || a == y || b == x || b == y;
                if g.crossings().cross(e, f) {
                    cf != c
                } else if shares_vertex {
                    cf == c
                } else {
                    true
                }
            });
            if consistent {
                colors[e] = Some(c);
                if search(g, crossing, edges, i + 1, colors, nodes) {
                    return true;
                }
                colors[e] = None;
            }
        }
        false
    }

    if !search(g, &crossing, edges, 0, &mut colors, &mut nodes) {
        return Ok(Decision::no(Evidence::NoDisjointTwoColoring { nodes }));
    }

    // Each vertex of the crossing subgraph lies in exactly one color class.
    let mut vertex_color = vec![0usize; g.vertex_count()];
    for &e in &crossing {
        let (a, b) = edges[e];
        vertex_color[a] = colors[e].unwrap();
        vertex_color[b] = colors[e].unwrap();
    }
    let map = VertexMap(
        (0..g.vertex_count())
            .map(|v| C4_IMAGE[vertex_color[v]][sides.side(v) as usize])
            .collect(),
    );
    let evidence = Evidence::DisjointTwoColoring {
        coloring: crossing
            .iter()
            .map(|&e| (g.graph().edge_id(e), colors[e].unwrap()))
            .collect(),
    };
    certified(g, TargetName::C4Crossed, map, None, evidence)
}

/// Per color, the side of each vertex in that color's subgraph: side 0 is
/// labeled `2i+2`, side 1 is labeled `2i+3`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct C5Partitions {
    pub sides: [BTreeMap<usize, u8>; 5],
}

fn color_mask(colors: &[Option<usize>], g: &AbstractGraph, v: usize) -> u8 {
    g.neighbors(v)
        .iter()
        .filter_map(|&w| colors[g.edge_between(v, w).unwrap()])
        .fold(0u8, |m, c| m | (1 << c))
}

/// Conditions (1) and (2) at a single vertex: its colors form `{i}` or
/// `{i, i+2}` for some `i`.
fn vertex_mask_ok(mask: u8) -> bool {
    match mask.count_ones() {
        0 | 1 => true,
        2 => (0..5).any(|i| mask == (1 << i) | (1 << ((i + 2) % 5))),
        _ => false,
    }
}

/// Condition (3): each color class is bipartite with its (i+2)-shared
/// vertices on one side and its (i+3)-shared vertices on the other. Returns
/// the oriented partitions.
pub fn c5_partitions<T>(g: &GeometricGraph<T>, colors: &[usize]) -> Option<C5Partitions> {
    let gg = g.graph();
    let n = gg.vertex_count();
    let mut masks = vec![0u8; n];
    for (e, &c) in colors.iter().enumerate() {
        let (a, b) = gg.edges()[e];
        masks[a] |= 1 << c;
        masks[b] |= 1 << c;
    }
    let mut sides: [BTreeMap<usize, u8>; 5] = Default::default();
    for i in 0..5 {
        let plus2 = 1u8 << ((i + 2) % 5);
        let plus3 = 1u8 << ((i + 3) % 5);
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (e, &c) in colors.iter().enumerate() {
            if c == i {
                let (a, b) = gg.edges()[e];
                adj[a].push(b);
                adj[b].push(a);
            }
        }
        let mut side: Vec<Option<u8>> = vec![None; n];
        for s in 0..n {
            if adj[s].is_empty() || side[s].is_some() {
                continue;
            }
            side[s] = Some(0);
            let mut comp = vec![s];
            let mut head = 0;
            while head < comp.len() {
                let u = comp[head];
                head += 1;
                for &w in &adj[u] {
                    match side[w] {
                        None => {
                            side[w] = Some(1 - side[u].unwrap());
                            comp.push(w);
                        }
                        Some(sw) if sw == side[u].unwrap() => return None,
                        Some(_) => {}
                    }
                }
            }
            // flip is the orientation forced by the shared vertices, if any
            let mut flip: Option<u8> = None;
            for &u in &comp {
                let want = if masks[u] & plus2 != 0 {
                    Some(0)
                } else if masks[u] & plus3 != 0 {
                    Some(1)
                } else {
                    None
                };
                if let Some(want) = want {
                    let f = side[u].unwrap() ^ want;
                    match flip {
                        None => flip = Some(f),
                        Some(prev) if prev != f => return None,
                        Some(_) => {}
                    }
                }
            }
            let flip = flip.unwrap_or(0);
            for &u in &comp {
                sides[i].insert(u, side[u].unwrap() ^ flip);
            }
        }
    }
    Some(C5Partitions { sides })
}

/// Labels every vertex with a residue (a vertex of the convex C5 target):
/// vertices in two color classes get the sum of the colors, the rest get
/// `2i+2` or `2i+3` by partite set, consistently per component of the
/// `i`-colored subgraph.
pub fn construct_c5_certificate<T>(
    g: &GeometricGraph<T>,
    coloring: &ThicknessColoring,
    partitions: &C5Partitions,
) -> Result<VertexMap, Error> {
    let gg = g.graph();
    let n = gg.vertex_count();
    let mut vertex_colors: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (e, &c) in coloring.colors.iter().enumerate() {
        let (a, b) = gg.edges()[e];
        for v in [a, b] {
            if !vertex_colors[v].contains(&c) {
                vertex_colors[v].push(c);
            }
        }
    }
    let mut label: Vec<Option<usize>> = vec![None; n];
    for v in 0..n {
        match vertex_colors[v].as_slice() {
            [_] | [] => {}
            [i, j] => label[v] = Some((i + j) % 5),
            more => {
                return Err(Error::Certificate(format!(
                    "vertex {} lies in {} color classes",
                    gg.id(v),
                    more.len()
                )))
            }
        }
    }

    for i in 0..5 {
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (e, &c) in coloring.colors.iter().enumerate() {
            if c == i {
                let (a, b) = gg.edges()[e];
                adj[a].push(b);
                adj[b].push(a);
            }
        }
        let mut seen = vec![false; n];
        for s in 0..n {
            if adj[s].is_empty() || seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut head = 0;
            while head < comp.len() {
                let u = comp[head];
                head += 1;
                for &w in &adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
            }
            let side = |u: usize| -> Result<usize, Error> {
                partitions.sides[i]
                    .get(&u)
                    .map(|&s| s as usize)
                    .ok_or_else(|| {
                        Error::Certificate(format!("no side for {} in color {i}", gg.id(u)))
                    })
            };
            // Orientation from an already labeled vertex, if the component has one.
            let mut flip = None;
            for &u in &comp {
                if let Some(l) = label[u] {
                    let f = if l == (2 * i + 2 + side(u)?) % 5 {
                        0
                    } else if l == (2 * i + 3 - side(u)?) % 5 {
                        1
                    } else {
                        return Err(Error::Certificate(format!(
                            "vertex {} has label {l}, not an endpoint label of color {i}",
                            gg.id(u)
                        )));
                    };
                    if flip.is_some_and(|p| p != f) {
                        return Err(Error::Certificate(format!(
                            "shared vertices of color {i} disagree on the partite sets"
                        )));
                    }
                    flip = Some(f);
                }
            }
            let flip = flip.unwrap_or(0);
            for &u in &comp {
                if label[u].is_none() {
                    label[u] = Some((2 * i + 2 + (side(u)? ^ flip)) % 5);
                }
            }
        }
    }

    label
        .into_iter()
        .enumerate()
        .map(|(v, l)| {
            l.ok_or_else(|| Error::Certificate(format!("vertex {} left unlabeled", gg.id(v))))
        })
        .collect::<Result<Vec<_>, _>>()
        .map(VertexMap)
}

/// True iff every crossing pair of `g` maps to edges `{j, j+1}` and
/// `{j+2, j+3}` (mod 5) for some `j`.
pub fn crossing_image_law_holds<T>(g: &GeometricGraph<T>, map: &VertexMap) -> bool {
    let edges = g.graph().edges();
    let pair = |e: usize| {
        let (a, b) = edges[e];
        let (x, y) = (map.image(a), map.image(b));
        (x.min(y), x.max(y))
    };
    let norm = |x: usize, y: usize| (x.min(y), x.max(y));
    g.crossings().pairs().iter().all(|&(e, f)| {
        let (p, q) = (pair(e), pair(f));
        (0..5).any(|j| {
            let first = norm(j, (j + 1) % 5);
            let second = norm((j + 2) % 5, (j + 3) % 5);
            (p == first && q == second) || (p == second && q == first)
        })
    })
}

pub fn decide_c5<T: Scalar>(g: &GeometricGraph<T>) -> Result<Decision, Error> {
    decide_c5_with_budget(g, DEFAULT_BUDGET)
}

/// Searches for a thickness edge C5-coloring satisfying the three
/// conditions, colorings of the crossing edges first (as homomorphisms of
/// the edge-crossing graph onto C5), then the free colors of the
/// non-crossing edges, backtracking on the per-vertex conditions.
pub fn decide_c5_with_budget<T: Scalar>(
    g: &GeometricGraph<T>,
    budget: u64,
) -> Result<Decision, Error> {
    g.require_no_isolated()?;
    let gg = g.graph();
    let sub = crossing_subgraph(g);
    let ex = edge_crossing_graph(&sub.drawing);
    let c5 = AbstractGraph::cycle(5);
    let free: Vec<usize> = (0..g.edge_count())
        .filter(|e| sub.edge_origin.binary_search(e).is_err())
        .collect();

    let mut homs = enumerate_homomorphisms(&ex, &c5, HomKind::Abstract).with_budget(budget);
    let mut extension_nodes = 0u64;
    let mut crossing_colorings = 0u64;
    let mut colors: Vec<Option<usize>> = vec![None; g.edge_count()];

    while let Some(eps) = homs.next() {
        // A global rotation of the colors preserves every condition.
        if !eps.is_empty() && eps.image(0) != 0 {
            continue;
        }
        crossing_colorings += 1;
        colors.iter_mut().for_each(|c| *c = None);
        for (local, &e) in sub.edge_origin.iter().enumerate() {
            colors[e] = Some(eps.image(local));
        }
        if !(0..g.vertex_count()).all(|v| vertex_mask_ok(color_mask(&colors, gg, v))) {
            continue;
        }
        let mut found = None;
        let remaining = budget.saturating_sub(homs.nodes() + extension_nodes);
        let outcome = extend_free_edges(
            g,
            &free,
            0,
            &mut colors,
            &mut extension_nodes,
            remaining,
            &mut found,
        );
        if outcome == Extension::OutOfBudget {
            return Err(Error::BudgetExceeded(budget));
        }
        if let Some((full, partitions)) = found {
            let coloring = ThicknessColoring {
                colors: full,
                modulus: 5,
                kind: ColoringKind::Cycle,
            };
            coloring.validate(g)?;
            assert!(
                !has_crossing_triangle(g),
                "a cycle-kind coloring with modulus 5 excludes three mutually crossing edges"
            );
            let map = construct_c5_certificate(g, &coloring, &partitions)?;
            let evidence = Evidence::C5Coloring {
                coloring: coloring.to_ids(g),
                partitions: partitions
                    .sides
                    .iter()
                    .enumerate()
                    .filter(|(_, s)| !s.is_empty())
                    .map(|(i, s)| {
                        (
                            i,
                            s.iter()
                                .map(|(&v, &side)| (gg.id(v).to_string(), side))
                                .collect(),
                        )
                    })
                    .collect(),
            };
            return certified(g, TargetName::C5Convex, map, Some(coloring), evidence);
        }
    }
    if homs.budget_exhausted() {
        return Err(Error::BudgetExceeded(budget));
    }
    Ok(Decision::no(Evidence::NoValidC5Coloring {
        crossing_colorings,
        nodes: homs.nodes() + extension_nodes,
    }))
}

#[derive(PartialEq, Eq)]
enum Extension {
    Found,
    Exhausted,
    OutOfBudget,
}

fn extend_free_edges<T>(
    g: &GeometricGraph<T>,
    free: &[usize],
    i: usize,
    colors: &mut Vec<Option<usize>>,
    nodes: &mut u64,
    budget: u64,
    found: &mut Option<(Vec<usize>, C5Partitions)>,
) -> Extension {
    let gg = g.graph();
    if i == free.len() {
        let full: Vec<usize> = colors.iter().map(|c| c.unwrap()).collect();
        return match c5_partitions(g, &full) {
            Some(p) => {
                *found = Some((full, p));
                Extension::Found
            }
            None => Extension::Exhausted,
        };
    }
    let e = free[i];
    let (a, b) = gg.edges()[e];
    for c in 0..5 {
        *nodes += 1;
        if *nodes > budget {
            return Extension::OutOfBudget;
        }
        colors[e] = Some(c);
        if vertex_mask_ok(color_mask(colors, gg, a)) && vertex_mask_ok(color_mask(colors, gg, b)) {
            match extend_free_edges(g, free, i + 1, colors, nodes, budget, found) {
                Extension::Exhausted => {}
                other => return other,
            }
        }
    }
    colors[e] = None;
    Extension::Exhausted
}

pub fn decide_k5<T: Scalar>(g: &GeometricGraph<T>) -> Result<Decision, Error> {
    decide_k5_with_budget(g, DEFAULT_BUDGET)
}

/// Exhaustive search for a geometric homomorphism onto the convex K5.
pub fn decide_k5_with_budget<T: Scalar>(
    g: &GeometricGraph<T>,
    budget: u64,
) -> Result<Decision, Error> {
    oracle_decide(g, Target::K5, budget)
}

/// Brute-force answer: search for a geometric homomorphism to the target's
/// canonical drawing.
pub fn oracle_decide<T: Scalar>(
    g: &GeometricGraph<T>,
    target: Target,
    budget: u64,
) -> Result<Decision, Error> {
    let t = canonical_target(target.canonical());
    let mut homs = enumerate_homomorphisms(g, &t.drawing, HomKind::Geometric).with_budget(budget);
    match homs.next() {
        Some(map) => certified(
            g,
            t.name,
            map,
            None,
            Evidence::Search {
                nodes: homs.nodes(),
            },
        ),
        None if homs.budget_exhausted() => Err(Error::BudgetExceeded(budget)),
        None => Ok(Decision::no(Evidence::Search {
            nodes: homs.nodes(),
        })),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum K5Necessary {
    /// The crossing subgraph is not C5-geocolorable.
    NotFiveGeocolorable(Evidence),
    Inconclusive,
}

/// A drawing whose crossing subgraph is not C5-geocolorable is not
/// 5-geocolorable; otherwise nothing follows.
pub fn check_k5_necessary<T: Scalar>(g: &GeometricGraph<T>) -> Result<K5Necessary, Error> {
    check_k5_necessary_with_budget(g, DEFAULT_BUDGET)
}

pub fn check_k5_necessary_with_budget<T: Scalar>(
    g: &GeometricGraph<T>,
    budget: u64,
) -> Result<K5Necessary, Error> {
    let sub = crossing_subgraph(g);
    let d = decide_c5_with_budget(&sub.drawing, budget)?;
    Ok(match d.answer {
        Answer::Yes => K5Necessary::Inconclusive,
        Answer::No => K5Necessary::NotFiveGeocolorable(d.evidence),
    })
}

/// Dispatches to the decider for `target`.
pub fn decide<T: Scalar>(
    g: &GeometricGraph<T>,
    target: Target,
    budget: u64,
) -> Result<Decision, Error> {
    match target {
        Target::C3 => decide_c3(g),
        Target::C4 => decide_c4(g),
        Target::C5 => decide_c5_with_budget(g, budget),
        Target::K5 => decide_k5_with_budget(g, budget),
    }
}

/// Residue label in the traditional 1..=5 numbering.
pub fn display_label(residue: usize) -> usize {
    if residue % 5 == 0 {
        5
    } else {
        residue % 5
    }
}
