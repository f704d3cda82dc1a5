use hgraphon::graph::directify_edges;
use hgraphon::random::random_digraph;
use hgraphon::{
    brute_force_hd, decide, has_hamiltonian_decomposition, max_bipartite_matching,
    validate_decomposition, Decision, DirectedGraph,
};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn matching_decider_agrees_with_exhaustive_search() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut disagreements = 0;
    let mut positives = 0;
    for k in 0..1000 {
        let n = 1 + k % 7;
        let density = [0.2, 0.5, 0.8][(k / 7) % 3];
        let d = random_digraph(&mut rng, n, density);
        let fast = has_hamiltonian_decomposition(&d);
        let slow = brute_force_hd(&d).unwrap();
        if fast.is_some() != slow {
            disagreements += 1;
        }
        if let Some(hd) = fast {
            positives += 1;
            assert!(
                validate_decomposition(&d, &hd),
                "invalid decomposition for {d:?}"
            );
        }
    }
    assert_eq!(disagreements, 0);
    // both outcomes must actually occur for the comparison to mean anything
    assert!(
        positives > 100 && positives < 900,
        "positives = {positives}"
    );
}

#[test]
fn self_loops_are_length_one_cycles() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..300 {
        let n = rng.gen_range(1..=6);
        let arcs: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .filter(|_| rng.gen_bool(0.3))
            .collect();
        let d = DirectedGraph::new(n, arcs).unwrap();
        let fast = has_hamiltonian_decomposition(&d);
        assert_eq!(fast.is_some(), brute_force_hd(&d).unwrap());
        if let Some(hd) = fast {
            assert!(validate_decomposition(&d, &hd));
            for c in hd.cycles.iter().filter(|c| c.len() == 1) {
                assert!(d.has_arc(c[0], c[0]));
            }
        }
    }
}

#[test]
fn decisions_are_deterministic() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..50 {
        let d = random_digraph(&mut rng, 40, 0.1);
        assert_eq!(decide(&d), decide(&d.clone()));
    }
}

#[test]
fn existence_is_invariant_under_relabeling() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..300 {
        let n = rng.gen_range(1..=30);
        let edges: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter(|_| rng.gen_bool(0.08))
            .collect();
        let d = directify_edges(n, &edges);
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut rng);
        let relabeled = d.relabel(&perm);
        assert_eq!(
            has_hamiltonian_decomposition(&d).is_some(),
            has_hamiltonian_decomposition(&relabeled).is_some()
        );
    }
}

#[test]
fn larger_sparse_instances_validate() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for n in [100, 500, 2000] {
        let d = random_digraph(&mut rng, n, 4.0 / n as f64);
        match decide(&d) {
            Decision::Yes(hd) => assert!(validate_decomposition(&d, &hd)),
            Decision::No { .. } => {}
        }
    }
}

proptest! {
    #[test]
    fn matching_size_is_monotone_under_arc_addition(
        n in 1usize..12,
        arcs in prop::collection::vec((0usize..12, 0usize..12), 0..60),
        extra in prop::collection::vec((0usize..12, 0usize..12), 0..30),
    ) {
        let clip = |v: &[(usize, usize)]| -> Vec<(usize, usize)> {
            v.iter().filter(|&&(i, j)| i < n && j < n).copied().collect()
        };
        let small = clip(&arcs);
        let mut big = small.clone();
        big.extend(clip(&extra));
        let a = max_bipartite_matching(n, DirectedGraph::new(n, small).unwrap().arcs());
        let b = max_bipartite_matching(n, DirectedGraph::new(n, big).unwrap().arcs());
        prop_assert!(a.size <= b.size);
    }

    #[test]
    fn matchings_are_valid(n in 1usize..10, arcs in prop::collection::vec((0usize..10, 0usize..10), 0..50)) {
        let arcs: Vec<(usize, usize)> = arcs.into_iter().filter(|&(i, j)| i < n && j < n).collect();
        let d = DirectedGraph::new(n, arcs).unwrap();
        let m = max_bipartite_matching(n, d.arcs());
        let mut used = vec![false; n];
        let mut count = 0;
        for (i, mate) in m.mate.iter().enumerate() {
            if let Some(j) = *mate {
                prop_assert!(d.has_arc(i, j));
                prop_assert!(!used[j]);
                used[j] = true;
                count += 1;
            }
        }
        prop_assert_eq!(count, m.size);
    }
}
