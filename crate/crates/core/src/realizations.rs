//! Sampling geometric realizations of small graphs and ordering them by
//! injective geometric homomorphisms.
//!
//! Sampling cannot prove a class list complete; counts are the classes
//! observed for a given seed and trial count.

use std::collections::{BTreeMap, BTreeSet};
use std::ops::RangeInclusive;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Error;
use crate::geometry::{validate_general_position, Point};
use crate::graphs::{AbstractGraph, GeometricGraph};
use crate::hom::{enumerate_homomorphisms, find_homomorphism, verify_map, HomKind, VertexMap};

/// Side of the integer coordinate box used for placements.
pub const COORD_MAX: i128 = 1_000_000;

/// Largest graph accepted by [`sample_realizations`].
pub const MAX_SAMPLED_VERTICES: usize = 7;

/// Crossing pairs as vertex-pair pairs, canonical under automorphisms.
pub type CrossingSignature = Vec<((usize, usize), (usize, usize))>;

#[derive(Clone, Debug)]
pub struct RealizationClass {
    pub representative: GeometricGraph<i128>,
    pub signature: CrossingSignature,
    /// Number of sampled placements that fell in this class.
    pub observed: usize,
}

impl RealizationClass {
    pub fn crossing_count(&self) -> usize {
        self.signature.len()
    }
}

fn norm(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

/// Lexicographically least image of the crossing set under the given
/// automorphisms.
fn signature(drawing: &GeometricGraph<i128>, automorphisms: &[VertexMap]) -> CrossingSignature {
    let edges = drawing.graph().edges();
    automorphisms
        .iter()
        .map(|sigma| {
            let mut s: CrossingSignature = drawing
                .crossings()
                .pairs()
                .iter()
                .map(|&(e, f)| {
                    let (a, b) = edges[e];
                    let (c, d) = edges[f];
                    let x = norm(sigma.image(a), sigma.image(b));
                    let y = norm(sigma.image(c), sigma.image(d));
                    (x.min(y), x.max(y))
                })
                .collect();
            s.sort_unstable();
            s
        })
        .min()
        .expect("identity is an automorphism")
}

/// Uniform placement in the coordinate box, or None if it is not in general
/// position.
pub fn random_placement<R: Rng>(
    g: &AbstractGraph,
    rng: &mut R,
    coord_max: i128,
) -> Option<GeometricGraph<i128>> {
    let coords: Vec<Point<i128>> = (0..g.vertex_count())
        .map(|_| Point::new(rng.gen_range(0..=coord_max), rng.gen_range(0..=coord_max)))
        .collect();
    match validate_general_position(&coords, g.edges()) {
        Ok(v) if v.is_empty() => GeometricGraph::new(g.clone(), coords).ok(),
        _ => None,
    }
}

/// Draws `trials` random placements of `g` and groups them into geometric
/// isomorphism classes, ordered by crossing count then signature.
pub fn sample_realizations(
    g: &AbstractGraph,
    trials: usize,
    seed: u64,
) -> Result<Vec<RealizationClass>, Error> {
    if g.vertex_count() > MAX_SAMPLED_VERTICES {
        return Err(Error::Unsupported(format!(
            "sampling supports at most {MAX_SAMPLED_VERTICES} vertices, got {}",
            g.vertex_count()
        )));
    }
    let automorphisms: Vec<VertexMap> =
        enumerate_homomorphisms(g, g, HomKind::GeometricIsomorphism).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut classes: BTreeMap<CrossingSignature, RealizationClass> = BTreeMap::new();
    let mut valid = 0usize;
    for _ in 0..trials {
        let Some(drawing) = random_placement(g, &mut rng, COORD_MAX) else {
            continue;
        };
        valid += 1;
        let sig = signature(&drawing, &automorphisms);
        match classes.get_mut(&sig) {
            Some(class) => class.observed += 1,
            None => {
                debug_assert!(classes.values().all(|c| find_homomorphism(
                    &drawing,
                    &c.representative,
                    HomKind::GeometricIsomorphism
                )
                .is_none()));
                classes.insert(
                    sig.clone(),
                    RealizationClass {
                        representative: drawing,
                        signature: sig,
                        observed: 1,
                    },
                );
            }
        }
    }
    if valid == 0 && trials > 0 {
        return Err(Error::NoValidPlacement(trials));
    }
    let mut out: Vec<_> = classes.into_values().collect();
    out.sort_by(|a, b| (a.crossing_count(), &a.signature).cmp(&(b.crossing_count(), &b.signature)));
    Ok(out)
}

/// Realization classes ordered by injective geometric homomorphisms.
#[derive(Clone, Debug)]
pub struct HomPoset {
    pub classes: Vec<RealizationClass>,
    /// All related pairs `(i, j)` meaning `i ⪯ j`, reflexive pairs included.
    pub order: BTreeSet<(usize, usize)>,
    /// Cover relation of the strict order.
    pub covers: Vec<(usize, usize)>,
    /// An injective geometric homomorphism witnessing each related pair.
    pub witnesses: BTreeMap<(usize, usize), VertexMap>,
}

impl HomPoset {
    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.order.contains(&(i, j))
    }

    /// Indices with nothing strictly above them.
    pub fn maximal(&self) -> Vec<usize> {
        (0..self.classes.len())
            .filter(|&i| !(0..self.classes.len()).any(|j| j != i && self.leq(i, j)))
            .collect()
    }

    pub fn is_chain(&self) -> bool {
        let n = self.classes.len();
        (0..n).all(|i| (0..n).all(|j| self.leq(i, j) || self.leq(j, i)))
    }

    /// Reflexive, transitive, and no two distinct classes related both ways.
    pub fn is_partial_order(&self) -> bool {
        let n = self.classes.len();
        let reflexive = (0..n).all(|i| self.leq(i, i));
        let antisymmetric = self.order.iter().all(|&(i, j)| i == j || !self.leq(j, i));
        let transitive = self
            .order
            .iter()
            .all(|&(i, j)| (0..n).all(|k| !self.leq(j, k) || self.leq(i, k)));
        reflexive && antisymmetric && transitive
    }
}

pub fn build_poset(classes: Vec<RealizationClass>) -> HomPoset {
    let n = classes.len();
    let mut order = BTreeSet::new();
    let mut witnesses = BTreeMap::new();
    for i in 0..n {
        for j in 0..n {
            let (a, b) = (&classes[i].representative, &classes[j].representative);
            if let Some(f) = find_homomorphism(a, b, HomKind::InjectiveGeometric) {
                debug_assert!(verify_map(a, b, &f, HomKind::InjectiveGeometric).is_ok());
                order.insert((i, j));
                witnesses.insert((i, j), f);
            }
        }
    }
    let strict = |i: usize, j: usize| i != j && order.contains(&(i, j));
    let covers = order
        .iter()
        .copied()
        .filter(|&(i, j)| strict(i, j) && !(0..n).any(|k| strict(i, k) && strict(k, j)))
        .collect();
    HomPoset {
        classes,
        order,
        covers,
        witnesses,
    }
}

/// Random graph on a vertex count drawn from `vertices` with an edge count
/// drawn from `edges`, no isolated vertices, and a general-position
/// placement in `[0, coord_max]^2`.
pub fn random_geometric_graph<R: Rng>(
    rng: &mut R,
    vertices: RangeInclusive<usize>,
    edges: RangeInclusive<usize>,
    coord_max: i128,
) -> GeometricGraph<i128> {
    loop {
        let n = rng.gen_range(vertices.clone());
        let max_edges = n * (n - 1) / 2;
        let lo = (*edges.start()).max(n.div_ceil(2));
        let hi = (*edges.end()).min(max_edges);
        if lo > hi {
            continue;
        }
        let m = rng.gen_range(lo..=hi);
        let mut pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
            .collect();
        pairs.shuffle(rng);
        pairs.truncate(m);
        pairs.sort_unstable();
        let g = AbstractGraph::from_edges(n, &pairs).expect("distinct pairs");
        if !g.isolated_vertices().is_empty() {
            continue;
        }
        for _ in 0..1000 {
            if let Some(d) = random_placement(&g, rng, coord_max) {
                return d;
            }
        }
    }
}

/// Seeded corpus of small drawings: 4 to 7 vertices, 4 to 9 edges, no
/// isolated vertices, integer coordinates in `[0, 30]^2`.
pub fn random_corpus(seed: u64, count: usize) -> Vec<GeometricGraph<i128>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| random_geometric_graph(&mut rng, 4..=7, 4..=9, 30))
        .collect()
}
