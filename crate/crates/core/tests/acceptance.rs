//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::path::Path;
use std::time::Instant;

use geocycle::cli::load_drawing;
use geocycle::cycles::{
    canonical_target, check_k5_necessary, crossing_image_law_holds, decide_c3, decide_c4,
    decide_c4_edge_coloring, decide_c5, decide_k5, oracle_decide, Decision, K5Necessary, Target,
    TargetName, DEFAULT_BUDGET,
};
use geocycle::geometry::Point;
use geocycle::graphs::{edge_crossing_graph, is_bipartite, AbstractGraph, GeometricGraph};
use geocycle::hom::{
    chromatic_number, enumerate_homomorphisms, find_homomorphism, identifiable_pairs,
    strong_product, verify_map, Chromatic, HomKind, Structure, VertexMap,
};
use geocycle::realizations::{build_poset, random_corpus, sample_realizations};
use geocycle::IntGraph;

const CORPUS_SEED: u64 = 2024;
const CORPUS_SIZE: usize = 240;

type Outcome = Result<String, String>;

fn fixture(name: &str) -> geocycle::ExactGraph {
    let path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name);
    load_drawing(&path).unwrap_or_else(|e| panic!("{name}: {e}"))
}

/// Every map `g -> h` of the given kind, by trying all |H|^|G| assignments.
fn brute_force_count<G: Structure, H: Structure>(g: &G, h: &H, kind: HomKind) -> usize {
    let (n, m) = (g.graph().vertex_count(), h.graph().vertex_count());
    let mut map = vec![0usize; n];
    let mut count = 0;
    loop {
        if verify_map(g, h, &VertexMap(map.clone()), kind).is_ok() {
            count += 1;
        }
        let mut i = 0;
        loop {
            if i == n {
                return count;
            }
            map[i] += 1;
            if map[i] < m {
                break;
            }
            map[i] = 0;
            i += 1;
        }
    }
}

fn brute_force_exists<G: Structure, H: Structure>(g: &G, h: &H, kind: HomKind) -> bool {
    brute_force_count(g, h, kind) > 0
}

/// Records every yes-decision for the soundness criterion.
#[derive(Default)]
struct Certificates {
    checked: usize,
    failures: Vec<String>,
}

impl Certificates {
    fn record<T: geocycle::geometry::Scalar>(
        &mut self,
        what: &str,
        g: &GeometricGraph<T>,
        d: &Decision,
    ) {
        if !d.is_yes() {
            return;
        }
        self.checked += 1;
        let Some(cert) = &d.certificate else {
            self.failures
                .push(format!("{what}: yes without certificate"));
            return;
        };
        let t = canonical_target(cert.target);
        if let Err(v) = verify_map(g, &t.drawing, &cert.map, HomKind::Geometric) {
            self.failures.push(format!("{what}: {v}"));
        }
        if let Some(c) = &cert.coloring {
            if let Err(e) = c.validate(g) {
                self.failures.push(format!("{what}: {e}"));
            }
        }
        if cert.target == TargetName::C5Convex && !crossing_image_law_holds(g, &cert.map) {
            self.failures
                .push(format!("{what}: crossing image law broken"));
        }
    }
}

fn oracle_equivalence(corpus: &[IntGraph], certs: &mut Certificates) -> Outcome {
    let start = Instant::now();
    let mut mismatches = Vec::new();
    let mut yes = [0usize; 3];
    for (i, g) in corpus.iter().enumerate() {
        let runs = [
            (Target::C3, decide_c3(g)),
            (Target::C4, decide_c4(g)),
            (Target::C5, decide_c5(g)),
        ];
        for (slot, (target, d)) in runs.into_iter().enumerate() {
            let d = d.map_err(|e| format!("graph {i} {target:?}: {e}"))?;
            let o = oracle_decide(g, target, DEFAULT_BUDGET)
                .map_err(|e| format!("graph {i} oracle {target:?}: {e}"))?;
            if d.answer != o.answer {
                mismatches.push(format!("graph {i} {target:?}"));
            }
            yes[slot] += d.is_yes() as usize;
            certs.record(&format!("corpus {i} {target:?}"), g, &d);
        }
    }
    if !mismatches.is_empty() {
        return Err(format!(
            "{} disagreements: {:?}",
            mismatches.len(),
            mismatches
        ));
    }
    Ok(format!(
        "{} graphs x 3 deciders agree with brute force (yes counts c3/c4/c5 = {:?}) in {:.1?}",
        corpus.len(),
        yes,
        start.elapsed()
    ))
}

fn c4_characterizations(corpus: &[IntGraph]) -> Outcome {
    let mut mismatches = Vec::new();
    for (i, g) in corpus.iter().enumerate() {
        let a = decide_c4(g).map_err(|e| e.to_string())?;
        let b = decide_c4_edge_coloring(g).map_err(|e| e.to_string())?;
        if a.answer != b.answer {
            mismatches.push(i);
        }
    }
    if mismatches.is_empty() {
        Ok(format!(
            "{} graphs, both characterizations agree",
            corpus.len()
        ))
    } else {
        Err(format!("disagree on graphs {mismatches:?}"))
    }
}

fn structural_facts() -> Outcome {
    let c5 = canonical_target(TargetName::C5Convex);
    let ex5 = edge_crossing_graph(&c5.drawing);
    if find_homomorphism(
        &ex5,
        &AbstractGraph::cycle(5),
        HomKind::GeometricIsomorphism,
    )
    .is_none()
    {
        return Err("EX of the convex C5 is not a 5-cycle".into());
    }
    let c4 = canonical_target(TargetName::C4Crossed);
    let ex4 = edge_crossing_graph(&c4.drawing);
    let k2_2k1 = AbstractGraph::from_edges(4, &[(0, 1)]).unwrap();
    if find_homomorphism(&ex4, &k2_2k1, HomKind::GeometricIsomorphism).is_none() {
        return Err("EX of the crossed C4 is not K2 + 2K1".into());
    }
    let colors = c5.edge_colors.as_ref().unwrap();
    let labels = c5.vertex_labels.as_ref().unwrap();
    let g = c5.drawing.graph();
    for (e, &(a, b)) in g.edges().iter().enumerate() {
        let i = colors[e];
        let mut ends = [labels[a], labels[b]];
        ends.sort_unstable();
        let mut expect = [(2 * i + 2) % 5, (2 * i + 3) % 5];
        expect.sort_unstable();
        if ends != expect {
            return Err(format!("edge color {i} joins {ends:?}"));
        }
    }
    for v in 0..5 {
        let k = labels[v];
        let mut incident: Vec<usize> = (0..g.edge_count())
            .filter(|&e| g.edges()[e].0 == v || g.edges()[e].1 == v)
            .map(|e| colors[e])
            .collect();
        incident.sort_unstable();
        let mut expect = vec![(3 * k + 4) % 5, (3 * k + 1) % 5];
        expect.sort_unstable();
        if incident != expect {
            return Err(format!("vertex {k} meets edge colors {incident:?}"));
        }
        if incident.iter().sum::<usize>() % 5 != k {
            return Err(format!("vertex {k} is not the sum of its edge colors"));
        }
    }
    Ok("EX(convex C5) = C5, EX(crossed C4) = K2 + 2K1, incidence arithmetic exact".into())
}

fn poset_reconstruction() -> Outcome {
    let start = Instant::now();
    let cases = [
        ("C4", AbstractGraph::cycle(4), 2, TargetName::C4Crossed),
        ("C5", AbstractGraph::cycle(5), 5, TargetName::C5Convex),
        ("K5", AbstractGraph::complete(5), 3, TargetName::K5Convex),
    ];
    let mut summary = Vec::new();
    for (name, g, expected, top) in cases {
        let classes = sample_realizations(&g, 10_000, 0).map_err(|e| e.to_string())?;
        let poset = build_poset(classes);
        if poset.classes.len() != expected {
            return Err(format!(
                "{name}: {} classes, expected {expected}",
                poset.classes.len()
            ));
        }
        if !poset.is_partial_order() || !poset.is_chain() {
            return Err(format!("{name}: not a chain"));
        }
        let max = poset.maximal();
        let canonical = canonical_target(top).drawing.cast::<i128>();
        let top_ok = max.len() == 1
            && find_homomorphism(
                &poset.classes[max[0]].representative,
                &canonical,
                HomKind::GeometricIsomorphism,
            )
            .is_some();
        if !top_ok {
            return Err(format!(
                "{name}: maximal element is not the canonical drawing"
            ));
        }
        summary.push(format!("{name}={expected}"));
    }
    Ok(format!(
        "chains {} in {:.1?}",
        summary.join(", "),
        start.elapsed()
    ))
}

/// A map from the m-cycle to the n-cycle is a closed walk of length m in the
/// n-cycle; reachability along walks is tracked step by step.
fn has_closed_walk(n: usize, m: usize) -> bool {
    let mut at = vec![false; n];
    at[0] = true;
    for _ in 0..m {
        let mut next = vec![false; n];
        for v in (0..n).filter(|&v| at[v]) {
            next[(v + 1) % n] = true;
            next[(v + n - 1) % n] = true;
        }
        at = next;
    }
    at[0]
}

fn odd_cycles() -> Outcome {
    for m in (3..=9).step_by(2) {
        for n in (3..=9).step_by(2) {
            let (cm, cn) = (AbstractGraph::cycle(m), AbstractGraph::cycle(n));
            let found = find_homomorphism(&cm, &cn, HomKind::Abstract).is_some();
            if found != (m >= n) {
                return Err(format!("C{m} -> C{n}: found = {found}"));
            }
            if found != has_closed_walk(n, m) {
                return Err(format!("C{m} -> C{n}: engine and closed-walk count differ"));
            }
        }
    }
    Ok("16 pairs of odd cycles 3..9 match m >= n".into())
}

fn negative_facts() -> Outcome {
    let crossed = canonical_target(TargetName::C4Crossed).drawing;
    let convex5 = canonical_target(TargetName::C5Convex).drawing;
    let plane3 = canonical_target(TargetName::C3Plane).drawing;
    let plane_k2 =
        GeometricGraph::from_parts(vec![Point::new(0i64, 0), Point::new(1, 0)], &[(0, 1)]).unwrap();
    let cases: [(&str, &GeometricGraph<i64>, &GeometricGraph<i64>); 3] = [
        ("crossed C4 -> plane K2", &crossed, &plane_k2),
        ("convex C5 -> plane C3", &convex5, &plane3),
        ("crossed C4 -> convex C5", &crossed, &convex5),
    ];
    for (name, g, h) in cases {
        if find_homomorphism(g, h, HomKind::Geometric).is_some() {
            return Err(format!("{name}: engine found a map"));
        }
        if brute_force_exists(g, h, HomKind::Geometric) {
            return Err(format!("{name}: brute force found a map"));
        }
    }
    Ok("no geometric maps in all three cases, confirmed over every assignment".into())
}

fn witness(certs: &mut Certificates) -> Outcome {
    let g = fixture("witness7.json");
    let c5 = AbstractGraph::cycle(5);
    if g.vertex_count() != 7 {
        return Err(format!("{} vertices", g.vertex_count()));
    }
    if !brute_force_exists(g.graph(), &c5, HomKind::Abstract) {
        return Err("graph does not map to C5".into());
    }
    if !brute_force_exists(&edge_crossing_graph(&g), &c5, HomKind::Abstract) {
        return Err("edge-crossing graph does not map to C5".into());
    }
    if !identifiable_pairs(&g).is_empty() {
        return Err("some vertex pair is identifiable".into());
    }
    let d = decide_c5(&g).map_err(|e| e.to_string())?;
    certs.record("witness", &g, &d);
    if d.is_yes() {
        return Err("decide_c5 says yes".into());
    }
    let target = canonical_target(TargetName::C5Convex).drawing;
    if brute_force_exists(&g, &target, HomKind::Geometric) {
        return Err("brute force finds a map to the convex C5".into());
    }
    let endos: Vec<_> = enumerate_homomorphisms(&g, &g, HomKind::Geometric).collect();
    let injective = endos.iter().all(|f| {
        let mut img = f.0.clone();
        img.sort_unstable();
        img.dedup();
        img.len() == 7
    });
    if !injective {
        return Err("a geometric endomorphism identifies vertices".into());
    }
    Ok(format!(
        "7 vertices, {} edges: G -> C5, EX -> C5, no identifiable pair, no geometric C5 map",
        g.edge_count()
    ))
}

fn strong_product_check(corpus: &[IntGraph]) -> Outcome {
    let start = Instant::now();
    let c5 = AbstractGraph::cycle(5);
    let mut seen = std::collections::BTreeSet::new();
    let mut checked = 0;
    for (i, g) in corpus.iter().enumerate() {
        let a = g.graph();
        if a.vertex_count() > 6 || is_bipartite(a).is_some() {
            continue;
        }
        if !seen.insert((a.vertex_count(), a.edges().to_vec())) {
            continue;
        }
        checked += 1;
        let maps = find_homomorphism(a, &c5, HomKind::Abstract).is_some();
        let chi5 = chromatic_number(&strong_product(a, &c5), 6) == Chromatic::Exact(5);
        if maps != chi5 {
            return Err(format!("graph {i}: maps to C5 = {maps}, chi = 5 is {chi5}"));
        }
    }
    if checked < 30 {
        return Err(format!(
            "only {checked} nonbipartite graphs on at most 6 vertices"
        ));
    }
    Ok(format!(
        "{checked} distinct nonbipartite graphs agree in {:.1?}",
        start.elapsed()
    ))
}

fn fixtures_soundness(certs: &mut Certificates) -> Outcome {
    for name in [
        "pentagram.json",
        "crossed_c4.json",
        "plane_c4.json",
        "witness7.json",
    ] {
        let g = fixture(name);
        for target in [Target::C3, Target::C4, Target::C5, Target::K5] {
            let d =
                geocycle::cycles::decide(&g, target, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
            certs.record(&format!("{name} {target:?}"), &g, &d);
        }
        let d = decide_c4_edge_coloring(&g).map_err(|e| e.to_string())?;
        certs.record(&format!("{name} edge coloring"), &g, &d);
    }
    if certs.failures.is_empty() {
        Ok(format!("{} yes certificates re-verified", certs.checked))
    } else {
        Err(certs.failures.join("; "))
    }
}

fn k5_necessary(corpus: &[IntGraph], certs: &mut Certificates) -> Outcome {
    let mut eliminated = 0;
    for (i, g) in corpus.iter().enumerate() {
        let k5 = decide_k5(g).map_err(|e| e.to_string())?;
        certs.record(&format!("corpus {i} K5"), g, &k5);
        if let K5Necessary::NotFiveGeocolorable(_) =
            check_k5_necessary(g).map_err(|e| e.to_string())?
        {
            eliminated += 1;
            if k5.is_yes() {
                return Err(format!("graph {i} eliminated but maps to the convex K5"));
            }
        }
    }
    Ok(format!(
        "{eliminated} eliminations, none contradicted by the K5 search"
    ))
}

fn main() {
    let corpus = random_corpus(CORPUS_SEED, CORPUS_SIZE);
    let mut certs = Certificates::default();
    let results: Vec<(&str, Outcome)> = vec![
        (
            "1 oracle equivalence",
            oracle_equivalence(&corpus, &mut certs),
        ),
        (
            "2 C4 characterizations agree",
            c4_characterizations(&corpus),
        ),
        ("3 structural facts", structural_facts()),
        ("4 poset reconstruction", poset_reconstruction()),
        ("5 odd-cycle hierarchy", odd_cycles()),
        ("6 negative geometric facts", negative_facts()),
        ("7 non-sufficiency witness", witness(&mut certs)),
        (
            "8 strong-product cross-check",
            strong_product_check(&corpus),
        ),
        (
            "10 K5 necessary condition",
            k5_necessary(&corpus, &mut certs),
        ),
        ("9 certificate soundness", fixtures_soundness(&mut certs)),
    ];
    let mut failed = 0;
    for (name, r) in &results {
        match r {
            Ok(msg) => println!("PASS criterion {name}: {msg}"),
            Err(msg) => {
                failed += 1;
                println!("FAIL criterion {name}: {msg}");
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
    println!("all {} criteria passed", results.len());
}
