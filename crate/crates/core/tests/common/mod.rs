#![allow(dead_code)]

use mdrg::ColoredGraph;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// A connected graph on `2..=max_n` vertices with every one of `m` colors used.
pub fn random_colored_graph(rng: &mut ChaCha8Rng, max_n: usize, m: usize, density: f64) -> ColoredGraph {
    loop {
        let n = rng.gen_range(2..=max_n);
        let mut pairs = Vec::new();
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(rng);
        for k in 1..n {
            let parent = order[rng.gen_range(0..k)];
            pairs.push((parent.min(order[k]), parent.max(order[k])));
        }
        for x in 0..n {
            for y in x + 1..n {
                if !pairs.contains(&(x, y)) && rng.gen_bool(density) {
                    pairs.push((x, y));
                }
            }
        }
        if pairs.len() < m {
            continue;
        }
        pairs.shuffle(rng);
        let edges: Vec<(usize, usize, usize)> = pairs
            .iter()
            .enumerate()
            .map(|(k, &(x, y))| (x, y, if k < m { k + 1 } else { rng.gen_range(1..=m) }))
            .collect();
        let names = (0..n).map(|i| format!("v{i}")).collect();
        return ColoredGraph::from_indices(m, names, &edges).unwrap();
    }
}
