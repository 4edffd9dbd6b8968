//! Random search for a 7-vertex drawing whose graph and edge-crossing graph
//! both map to C5, with no identifiable vertex pair, that still has no
//! geometric homomorphism to the convex C5. Prints the first hit as JSON.

use geocycle::cycles::{decide_c5, oracle_decide, Target, DEFAULT_BUDGET};
use geocycle::graphs::{edge_crossing_graph, AbstractGraph};
use geocycle::hom::{find_homomorphism, identifiable_pairs, HomKind};
use geocycle::realizations::random_geometric_graph;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let seed = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(0);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let c5 = AbstractGraph::cycle(5);
    for attempt in 0.. {
        let g = random_geometric_graph(&mut rng, 7..=7, 8..=14, 30);
        if !identifiable_pairs(&g).is_empty() {
            continue;
        }
        if find_homomorphism(g.graph(), &c5, HomKind::Abstract).is_none() {
            continue;
        }
        if find_homomorphism(&edge_crossing_graph(&g), &c5, HomKind::Abstract).is_none() {
            continue;
        }
        if decide_c5(&g).unwrap().is_yes() {
            continue;
        }
        assert!(!oracle_decide(&g, Target::C5, DEFAULT_BUDGET)
            .unwrap()
            .is_yes());
        eprintln!("found after {attempt} attempts");
        let names = ["t", "u", "v", "w", "x", "y", "z"];
        let vertices: Vec<_> = g
            .coords()
            .iter()
            .enumerate()
            .map(|(i, p)| serde_json::json!({"id": names[i], "x": p.x.to_string(), "y": p.y.to_string()}))
            .collect();
        let edges: Vec<_> = g
            .graph()
            .edges()
            .iter()
            .map(|&(a, b)| [names[a], names[b]])
            .collect();
        println!(
            "{}",
            serde_json::to_string_pretty(
                &serde_json::json!({"vertices": vertices, "edges": edges})
            )
            .unwrap()
        );
        return;
    }
}
