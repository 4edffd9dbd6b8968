use geocycle::graphs::AbstractGraph;
use geocycle::realizations::{build_poset, sample_realizations};

fn main() {
    for (name, g) in [
        ("C4", AbstractGraph::cycle(4)),
        ("C5", AbstractGraph::cycle(5)),
        ("K5", AbstractGraph::complete(5)),
    ] {
        let classes = sample_realizations(&g, 10_000, 0).unwrap();
        let counts: Vec<_> = classes.iter().map(|c| c.crossing_count()).collect();
        let poset = build_poset(classes);
        println!(
            "{name}: {} classes {:?} chain={}",
            counts.len(),
            counts,
            poset.is_chain()
        );
    }
}
