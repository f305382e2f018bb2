use std::collections::BTreeSet;

use fcac_core::data::{sample_gaussian_mixture, GaussianComponent};
use fcac_core::{Clusterer, NodeId};

fn region(center: [f64; 2], n: usize, seed: u64) -> Vec<Vec<f64>> {
    sample_gaussian_mixture(&[GaussianComponent::isotropic(center.to_vec(), 0.01, n)], seed)
        .unwrap()
        .points
}

fn connected(c: &Clusterer) -> BTreeSet<NodeId> {
    c.node_ids().into_iter().filter(|&id| c.edges().degree(id) > 0).collect()
}

#[test]
fn nodes_with_edges_survive_training_on_a_disjoint_region() {
    for seed in 0..5 {
        for mut c in [Clusterer::cae(), Clusterer::cae_fc()] {
            c.train(&region([0.2, 0.2], 2000, seed)).unwrap();
            let before = connected(&c);
            assert!(!before.is_empty());
            let weights: Vec<Vec<f64>> = before.iter().map(|&id| c.node(id).unwrap().weight.clone()).collect();

            c.train(&region([0.8, 0.8], 2000, seed + 100)).unwrap();
            for (id, w) in before.iter().zip(&weights) {
                let node = c.node(*id).expect("node from the first region was deleted");
                assert_eq!(&node.weight, w, "node {id} drifted while training elsewhere");
            }
            c.check_invariants().unwrap();
        }
    }
}

#[test]
fn ca_plus_keeps_every_node_across_streams() {
    let mut c = Clusterer::ca_plus();
    c.train(&region([0.2, 0.2], 1000, 1)).unwrap();
    let first: BTreeSet<NodeId> = c.node_ids().into_iter().collect();
    c.train(&region([0.8, 0.8], 1000, 2)).unwrap();
    let second: BTreeSet<NodeId> = c.node_ids().into_iter().collect();
    assert!(first.is_subset(&second));
    assert!(c.edges().is_empty());
}
