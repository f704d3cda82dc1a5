//! Seeded generators of random instances, for property tests and benchmarks.

use num_rational::BigRational;
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::graph::DirectedGraph;
use crate::model::{Partition, StepGraphon};
use crate::skeleton::SkeletonGraph;

fn frac(n: usize, d: usize) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// Random step-graphon with `1..=max_q` blocks whose breakpoints are multiples
/// of `1/denominator`. Each block is supported with probability `density`;
/// supported blocks take a value `k/10`, `k` in `1..=10`.
pub fn random_step_graphon<R: Rng + ?Sized>(
    rng: &mut R,
    max_q: usize,
    denominator: usize,
    density: f64,
) -> StepGraphon {
    assert!(max_q >= 1 && denominator >= 1);
    let q = rng.gen_range(1..=max_q.min(denominator));
    let mut interior: Vec<usize> = (1..denominator).collect();
    interior.shuffle(rng);
    let mut cuts: Vec<usize> = interior[..q - 1].to_vec();
    cuts.sort_unstable();
    let mut bp = vec![BigRational::zero()];
    bp.extend(cuts.iter().map(|&c| frac(c, denominator)));
    bp.push(frac(1, 1));
    let partition = Partition::new(bp).expect("sorted distinct cuts");

    let mut values = vec![vec![BigRational::zero(); q]; q];
    for i in 0..q {
        for j in i..q {
            if rng.gen_bool(density) {
                let v = frac(rng.gen_range(1..=10), 10);
                values[i][j] = v.clone();
                values[j][i] = v;
            }
        }
    }
    StepGraphon::new(partition, values).expect("generated values are valid")
}

/// `1..=max_extra` random breakpoints that are multiples of `1/denominator`.
pub fn random_breakpoints<R: Rng + ?Sized>(
    rng: &mut R,
    max_extra: usize,
    denominator: usize,
) -> Vec<BigRational> {
    let k = rng.gen_range(1..=max_extra);
    (0..k)
        .map(|_| frac(rng.gen_range(1..denominator), denominator))
        .collect()
}

/// Random skeleton on `1..=max_q` nodes; each possible edge or loop is present
/// with probability `density`.
pub fn random_skeleton<R: Rng + ?Sized>(rng: &mut R, max_q: usize, density: f64) -> SkeletonGraph {
    let q = rng.gen_range(1..=max_q);
    let edges: Vec<(usize, usize)> = (0..q)
        .flat_map(|i| (i..q).map(move |j| (i, j)))
        .filter(|_| rng.gen_bool(density))
        .collect();
    SkeletonGraph::new(q, edges)
}

/// Step-graphon on the uniform `q`-block partition whose skeleton is `s`
/// (all supported blocks equal to 1).
pub fn step_graphon_with_skeleton(s: &SkeletonGraph) -> StepGraphon {
    let q = s.q();
    let mut values = vec![vec![BigRational::zero(); q]; q];
    for &(i, j) in s.edges() {
        values[i][j] = frac(1, 1);
        values[j][i] = frac(1, 1);
    }
    StepGraphon::new(Partition::uniform(q), values).expect("0/1 values are valid")
}

/// Random digraph on `n` vertices, each ordered pair `i != j` an arc with
/// probability `density`. No self-loops.
pub fn random_digraph<R: Rng + ?Sized>(rng: &mut R, n: usize, density: f64) -> DirectedGraph {
    let arcs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|&(i, j)| i != j && rng.gen_bool(density))
        .collect();
    DirectedGraph::new(n, arcs).expect("arcs are in range")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generated_instances_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            let g = random_step_graphon(&mut rng, 5, 10, 0.5);
            assert!(g.q() <= 5);
            assert!(g.partition().aligned_to_grid(10));
            let s = random_skeleton(&mut rng, 8, 0.3);
            assert!(s.q() <= 8);
            let d = random_digraph(&mut rng, 6, 0.5);
            assert!(d.arcs().iter().all(|&(i, j)| i != j));
        }
    }
}
