//! Properties every m-distance-regular graph satisfies, re-checked on each
//! certified instance.

use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::certificate::{Certificate, Witness};
use crate::graph::{count_walks_by_type, ColoredGraph, DistanceTable};
use crate::multiindex::MultiIndex;
use crate::scheme::IntersectionTensor;

/// Vertex-level decomposition is exhaustive up to this many vertices.
pub const EXHAUSTIVE_VERTICES: usize = 200;
pub const WALK_SAMPLES: usize = 50;
const WALK_SEED: u64 = 0x6d64_7267;

fn lemma(name: &str, labels: Vec<MultiIndex>, vertices: Vec<String>) -> Witness {
    Witness::Lemma {
        lemma: name.into(),
        labels,
        vertices,
    }
}

/// `p[a,b]^c ≠ 0` implies `a ≤ b+c`, `b ≤ a+c` and `c ≤ a+b`.
pub fn triangle(t: &DistanceTable, p: &IntersectionTensor) -> Result<(), Witness> {
    let l = &t.labels;
    for ((a, b, c), _) in p.entries() {
        let (a, b, c) = (&l[a], &l[b], &l[c]);
        let ok = t.order.le(a, &(b + c)) && t.order.le(b, &(a + c)) && t.order.le(c, &(a + b));
        if !ok {
            return Err(lemma("triangle", vec![a.clone(), b.clone(), c.clone()], vec![]));
        }
    }
    Ok(())
}

/// `a, b, a+b ∈ D` implies `p[a,b]^{a+b} ≠ 0`.
pub fn sum_realized(t: &DistanceTable, p: &IntersectionTensor) -> Result<(), Witness> {
    let l = &t.labels;
    for a in 0..l.len() {
        for b in 0..l.len() {
            if let Some(c) = t.label_index(&(&l[a] + &l[b])) {
                if p.p(a, b, c).is_zero() {
                    return Err(lemma(
                        "sum-realized",
                        vec![l[a].clone(), l[b].clone(), l[c].clone()],
                        vec![],
                    ));
                }
            }
        }
    }
    Ok(())
}

/// A split `a = b + (a - b)` as label indices of `b` and `a - b`, with `b`.
type Split = (Option<usize>, Option<usize>, MultiIndex);

/// For `d(x,y) = a` and componentwise `b ≤ a`, some `z` has `d(x,z) = b`
/// and `d(z,y) = a - b`. Checked pair by pair.
pub fn decomposition(t: &DistanceTable) -> Result<(), Witness> {
    let n = t.len();
    let r = t.labels.len();
    let boxes: Vec<Vec<Split>> = t
        .labels
        .iter()
        .map(|a| {
            MultiIndex::grid(a.entries())
                .into_iter()
                .map(|b| {
                    let rest = a.checked_sub(&b).expect("b lies in the box of a");
                    (t.label_index(&b), t.label_index(&rest), b)
                })
                .collect()
        })
        .collect();
    let failure = (0..n).into_par_iter().find_map_first(|x| {
        let mut seen = vec![false; r * r];
        for y in 0..n {
            seen.iter_mut().for_each(|s| *s = false);
            for z in 0..n {
                seen[t.class_of(x, z) * r + t.class_of(z, y)] = true;
            }
            let a = t.class_of(x, y);
            for (bi, ci, b) in &boxes[a] {
                let ok = matches!((bi, ci), (Some(i), Some(j)) if seen[i * r + j]);
                if !ok {
                    return Some(lemma(
                        "decomposition",
                        vec![t.labels[a].clone(), b.clone()],
                        vec![t.names[x].clone(), t.names[y].clone()],
                    ));
                }
            }
        }
        None
    });
    failure.map_or(Ok(()), Err)
}

/// The same property read off the tensor, for graphs too large to scan.
pub fn decomposition_from_tensor(t: &DistanceTable, p: &IntersectionTensor) -> Result<(), Witness> {
    for (c, a) in t.labels.iter().enumerate() {
        for b in MultiIndex::grid(a.entries()) {
            let rest = a.checked_sub(&b).expect("b lies in the box of a");
            let ok = match (t.label_index(&b), t.label_index(&rest)) {
                (Some(i), Some(j)) => !p.p(i, j, c).is_zero(),
                _ => false,
            };
            if !ok {
                return Err(lemma("decomposition", vec![a.clone(), b], vec![]));
            }
        }
    }
    Ok(())
}

/// Walk counts of a color sequence equal those of a shuffled copy, on
/// `samples` seeded random `(x, y, sequence)` triples.
pub fn walk_permutation(g: &ColoredGraph, samples: usize, seed: u64) -> Result<(), Witness> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = g.len();
    for _ in 0..samples {
        let x = rng.gen_range(0..n);
        let y = rng.gen_range(0..n);
        let len = rng.gen_range(2..=4);
        let colors: Vec<usize> = (0..len).map(|_| rng.gen_range(1..=g.m())).collect();
        let mut shuffled = colors.clone();
        shuffled.shuffle(&mut rng);
        let lhs = count_walks_by_type(g, x, y, &colors).expect("colors in range");
        let rhs = count_walks_by_type(g, x, y, &shuffled).expect("colors in range");
        if lhs != rhs {
            let as_index = |c: &[usize]| MultiIndex::new(c.iter().map(|&c| c as u32).collect());
            return Err(lemma(
                "walk-permutation",
                vec![as_index(&colors), as_index(&shuffled)],
                vec![g.name(x).into(), g.name(y).into()],
            ));
        }
    }
    Ok(())
}

/// All of the above for a graph already found m-distance-regular.
pub fn mdrg_lemmas(g: &ColoredGraph, t: &DistanceTable, p: &IntersectionTensor) -> Certificate {
    let mut cert = Certificate::new("implied-properties");
    cert.record("triangle", triangle(t, p));
    cert.record("sum-realized", sum_realized(t, p));
    if t.len() <= EXHAUSTIVE_VERTICES {
        cert.record("decomposition", decomposition(t));
    } else {
        cert.record("decomposition", decomposition_from_tensor(t, p));
    }
    cert.record("walk-permutation", walk_permutation(g, WALK_SAMPLES, WALK_SEED));
    cert
}
