//! Two-step sampling `G_n ~ W`.
//!
//! RNG contract: a ChaCha8 generator keyed by `seed` (via
//! `SeedableRng::seed_from_u64`). Node coordinates are the successive `f64`
//! draws of stream 0. The uniform variate deciding pair `(i, j)`, `i < j`, is
//! the `f64` built from the 64-bit word at word position `2 j` of stream
//! `i + 1`; the pair is an edge iff that variate is below `W(x_i, x_j)`.
//! Every variate is therefore a pure function of `(seed, i, j)`, which makes
//! the output independent of iteration order and of how rows are split across
//! threads.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::SampledGraph;
use crate::model::GeneralGraphon;

/// Rows shorter than this are not worth a separate rayon task.
const MIN_ROWS_PER_TASK: usize = 32;

fn coordinate_stream(seed: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(0);
    rng
}

fn row_stream(seed: u64, i: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(i as u64 + 1);
    rng.set_word_pos(2 * (i as u128 + 1));
    rng
}

/// The uniform variate attached to pair `(i, j)`, `i < j`. Exposed for tests
/// and for replaying a single pair.
pub fn pair_variate(seed: u64, i: usize, j: usize) -> f64 {
    assert!(i < j, "pairs are indexed with i < j");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(i as u64 + 1);
    rng.set_word_pos(2 * j as u128);
    rng.gen()
}

pub fn sample_coordinates(n: usize, seed: u64) -> Vec<f64> {
    let mut rng = coordinate_stream(seed);
    (0..n).map(|_| rng.gen::<f64>()).collect()
}

fn sample_row(g: &GeneralGraphon, coords: &[f64], seed: u64, i: usize) -> Vec<(usize, usize)> {
    let mut rng = row_stream(seed, i);
    let xi = coords[i];
    ((i + 1)..coords.len())
        .filter(|&j| {
            let u: f64 = rng.gen();
            u < g.eval_unchecked(xi, coords[j])
        })
        .map(|j| (i, j))
        .collect()
}

/// Samples `G_n ~ W`. Deterministic in `(g, n, seed)`; rows are processed in
/// parallel on the current rayon pool.
pub fn sample_graph(g: &GeneralGraphon, n: usize, seed: u64) -> Result<SampledGraph> {
    if n == 0 {
        return Err(Error::InvalidN);
    }
    let coordinates = sample_coordinates(n, seed);
    let rows: Vec<Vec<(usize, usize)>> = (0..n)
        .into_par_iter()
        .with_min_len(MIN_ROWS_PER_TASK)
        .map(|i| sample_row(g, &coordinates, seed, i))
        .collect();
    Ok(SampledGraph {
        n,
        coordinates,
        edges: rows.concat(),
        seed,
    })
}

/// Single-threaded variant of [`sample_graph`]; produces identical output.
pub fn sample_graph_sequential(g: &GeneralGraphon, n: usize, seed: u64) -> Result<SampledGraph> {
    if n == 0 {
        return Err(Error::InvalidN);
    }
    let coordinates = sample_coordinates(n, seed);
    let edges = (0..n)
        .flat_map(|i| sample_row(g, &coordinates, seed, i))
        .collect();
    Ok(SampledGraph {
        n,
        coordinates,
        edges,
        seed,
    })
}
