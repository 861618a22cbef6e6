//! Frozen desk-scale facts about the split constructions. The asymptotic
//! conclusions (head-tail-mixing, inconsistency) concern sizes far beyond
//! exhaustive reach; what is checkable here is the mechanism that drives
//! them, plus the exhaustively computed verdicts at 10 vertices.

use turan_core::constructions::split_construction_14;
use turan_core::descriptive::{
    graph_admits, head_tail, is_head_tail_mixing, DescriptiveSequence, OrderSearchOptions,
};
use turan_core::order::VertexOrder;
use turan_core::quasilinear::{is_consistent_graph, twin_structure};
use turan_core::RGraph;

/// A linear 4-graph on 10 vertices in which every vertex pair of the
/// pentagon-like structure appears at most once.
fn dense_linear_input() -> RGraph {
    RGraph::new(
        4,
        10,
        vec![
            vec![0, 1, 2, 3],
            vec![0, 4, 5, 6],
            vec![1, 4, 7, 8],
            vec![2, 5, 7, 9],
            vec![3, 6, 8, 9],
        ],
    )
    .unwrap()
}

#[test]
fn split_twin_pairs_are_head_tail_pairs_under_natural_order() {
    let out = split_construction_14(&dense_linear_input()).unwrap();
    let g = &out.graph;
    let ts = twin_structure(g).unwrap();
    assert_eq!(ts.pairs().len(), 5);
    let nat = VertexOrder::natural(g.n());
    for &(i, j) in ts.pairs() {
        let (h1, t1) = head_tail(&g.edges()[i], &nat);
        let (h2, t2) = head_tail(&g.edges()[j], &nat);
        assert!(h1 == t2 || h2 == t1, "twin pair ({i},{j}) is not a head/tail pair");
    }
    // Equivalently, the natural order witnesses admission of XZZY.
    let sigma = DescriptiveSequence::head_tail(3).unwrap();
    assert!(graph_admits(g, &sigma).unwrap().is_some());
}

/// At 10 vertices the split output is NOT yet head-tail-mixing: exhaustive
/// search finds an order with no head/tail coincidence. Mixing only emerges
/// at sizes where nowhere-emptiness forces an aligned edge under every
/// order.
#[test]
fn split_output_not_mixing_at_ten_vertices() {
    let out = split_construction_14(&dense_linear_input()).unwrap();
    let opts = OrderSearchOptions { cap: 10, randomized: None };
    let rep = is_head_tail_mixing(&out.graph, &opts).unwrap();
    assert!(rep.exhaustive);
    assert!(!rep.mixing);
    let witness = rep.witness_ordering.unwrap();
    // Frozen witness from the exhaustive run; re-verify it avoids overlaps.
    assert_eq!(witness.sorted_labels(), vec![0, 1, 3, 2, 4, 6, 5, 9, 8, 7]);
}

/// Likewise, the 10-vertex instance is still consistent; inconsistency of
/// the grid construction is an asymptotic conclusion.
#[test]
fn split_output_consistent_at_ten_vertices() {
    let out = split_construction_14(&dense_linear_input()).unwrap();
    let opts = OrderSearchOptions { cap: 10, randomized: None };
    let rep = is_consistent_graph(&out.graph, &opts).unwrap();
    assert!(rep.exhaustive);
    assert!(rep.consistent);
    let witness = rep.witness.unwrap();
    assert!(
        turan_core::quasilinear::is_consistently_ordered(&out.graph, &witness).unwrap()
    );
}

/// Sampled nowhere-emptiness of a sparse random linear graph: at n = 1500
/// with sets of a quarter of the vertices, every sampled tuple of disjoint
/// sets is met by an edge.
#[test]
fn linear_candidate_nowhere_empty_at_quarter_sets() {
    use turan_core::constructions::{random_linear_candidate, verify_nowhere_empty};
    use turan_core::rat::rat;

    let rep = random_linear_candidate(1500, 3, 42).unwrap();
    assert!(rep.graph.is_linear());
    let check = verify_nowhere_empty(&rep.graph, &rat(1, 4), 500, 7).unwrap();
    assert!(!check.exhaustive);
    assert_eq!(check.tuples_examined, 500);
    assert_eq!(check.failures, 0, "failing tuples: {:?}", check.examples);
}

/// A head-tail-mixing F within certified reach cannot embed into head-tail
/// palette graphs: the complete 3-graph on 4 vertices is mixing (exhaustive
/// over its 24 orders) and never appears across the trials.
#[test]
fn head_tail_palette_excludes_certified_mixing_graph() {
    use turan_core::palettes::{f_free_trials, head_tail_palette};

    let k4 = RGraph::complete(3, 4).unwrap();
    let opts = OrderSearchOptions { cap: 10, randomized: None };
    let rep = is_head_tail_mixing(&k4, &opts).unwrap();
    assert!(rep.mixing && rep.exhaustive);

    let p = head_tail_palette(3).unwrap();
    let trials = f_free_trials(&p, &k4, 30, 20, 77).unwrap();
    assert_eq!(trials.embeddings_found, 0);
}

/// Sharpness of the quarter-density bound: the head-tail palette blowup has
/// density exactly 1/4 and does NOT admit the head-tail sequence anywhere
/// (the shared part would need its vertex to be red from one side and blue
/// from the other). Uniform admission kicks in only strictly above 1/4.
#[test]
fn quarter_density_blowup_refuses_head_tail_sequence() {
    use turan_core::hypergraph::for_each_subset;
    use turan_core::palettes::head_tail_palette;
    use turan_core::rat::rat;
    use turan_core::reduced::{blowup, find_uniform_subset, tuple_admits, UniformSearchMode};

    let rg = blowup(&head_tail_palette(3).unwrap(), 6).unwrap();
    assert_eq!(rg.min_density().unwrap(), rat(1, 4));
    let sigma = DescriptiveSequence::head_tail(3).unwrap();
    let mut tuples = Vec::new();
    for_each_subset(6, 4, |t| tuples.push(t.to_vec()));
    for t in &tuples {
        assert!(tuple_admits(&rg, t, &sigma).unwrap().is_none(), "tuple {t:?}");
    }
    assert!(find_uniform_subset(&rg, 4, &UniformSearchMode::Fixed(sigma))
        .unwrap()
        .is_none());
}

/// The same blowup sits above 1/27, and accordingly admits some inconsistent
/// sequence uniformly: ZXZY routes the shared pair through a free coordinate
/// on one side.
#[test]
fn quarter_density_blowup_admits_an_inconsistent_sequence() {
    use turan_core::palettes::head_tail_palette;
    use turan_core::reduced::{blowup, find_uniform_subset, UniformSearchMode};

    let rg = blowup(&head_tail_palette(3).unwrap(), 6).unwrap();
    let (s, sigma) =
        find_uniform_subset(&rg, 6, &UniformSearchMode::AnyInconsistent).unwrap().unwrap();
    assert_eq!(s, vec![0, 1, 2, 3, 4, 5]);
    assert!(!turan_core::descriptive::is_consistent(&sigma));
}
