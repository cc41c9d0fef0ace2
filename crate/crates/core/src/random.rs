//! Seeded random signed multigraphs for property checks.

use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::frustration::frustration_index;
use crate::graph::{Sign, SignedGraph};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `m` edges on `n` vertices, each a loop with probability `loop_p`
/// (negative with probability one half) and otherwise a uniform pair of
/// distinct vertices with a uniform sign.
pub fn random_graph(rng: &mut impl Rng, n: usize, m: usize, loop_p: f64) -> SignedGraph {
    assert!(n > 0);
    let mut edges = Vec::with_capacity(m);
    for _ in 0..m {
        let sign = if rng.gen_bool(0.5) { Sign::Negative } else { Sign::Positive };
        if n == 1 || rng.gen_bool(loop_p) {
            let v = rng.gen_range(0..n);
            edges.push((v, v, sign));
        } else {
            let u = rng.gen_range(0..n);
            let mut v = rng.gen_range(0..n - 1);
            if v >= u {
                v += 1;
            }
            edges.push((u, v, sign));
        }
    }
    SignedGraph::from_indexed(n, &edges)
}

/// Random graph with `n` in `1..=max_n` and `m` in `0..=max_m`.
pub fn random_small(rng: &mut impl Rng, max_n: usize, max_m: usize) -> SignedGraph {
    let n = rng.gen_range(1..=max_n);
    let m = rng.gen_range(0..=max_m);
    random_graph(rng, n, m, 0.1)
}

/// Delete edges in random order whenever the frustration index survives;
/// what remains is critically frustrated (or balanced and empty of
/// negative cycles). Isolated vertices are kept.
pub fn prune_to_critical(rng: &mut impl Rng, g: &SignedGraph) -> SignedGraph {
    let ell = frustration_index(g).expect("small graph").ell;
    let mut order: Vec<usize> = (0..g.edge_count()).collect();
    order.shuffle(rng);
    let mut keep = g.all_edges();
    for e in order {
        let trial = keep.without(e);
        if frustration_index(&g.edge_subgraph(trial)).expect("small graph").ell == ell {
            keep = trial;
        }
    }
    g.edge_subgraph(keep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::criticality::{is_critical, Method};

    #[test]
    fn deterministic() {
        let a = random_small(&mut rng(7), 6, 10);
        let b = random_small(&mut rng(7), 6, 10);
        assert_eq!(a, b);
    }

    #[test]
    fn pruning_gives_critical_graphs() {
        let mut r = rng(3);
        for _ in 0..50 {
            let g = random_small(&mut r, 6, 12);
            let h = prune_to_critical(&mut r, &g);
            let cert = is_critical(&h, Method::Deletion).unwrap();
            assert_eq!(cert.ell, frustration_index(&g).unwrap().ell);
            assert!(cert.ell == 0 || cert.critical);
        }
    }
}
