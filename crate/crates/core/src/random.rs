//! Seeded random instances for oracle runs.
//!
//! A random pattern gives each row between 1 and 3 support sets, each drawn
//! uniformly among the nonempty subsets of `[n]` of size at most `m - 1`
//! (duplicates and dominated draws are absorbed by the antichain). All
//! generators take the RNG explicitly so a seed fixes the whole run.

use rand::seq::index::sample;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::dense::DenseTensor;
use crate::digraph::PatternMatrix;
use crate::error::Result;
use crate::index_set::IndexSet;
use crate::pattern::PatternTensor;

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// A subset of `[dim]` drawn uniformly among those of size `1..=max_size`.
pub fn random_support<R: Rng>(rng: &mut R, dim: usize, max_size: usize) -> Result<IndexSet> {
    let top = max_size.min(dim).max(1);
    let weights: Vec<f64> = (1..=top).map(|s| binomial(dim, s)).collect();
    let total: f64 = weights.iter().sum();
    let mut pick = rng.gen::<f64>() * total;
    let mut size = top;
    for (s, w) in weights.iter().enumerate() {
        if pick < *w {
            size = s + 1;
            break;
        }
        pick -= w;
    }
    IndexSet::from_indices(dim, sample(rng, dim, size).into_iter().map(|i| i + 1))
}

fn row_sets<R: Rng>(rng: &mut R, order: usize, dim: usize) -> Result<Vec<IndexSet>> {
    let count = rng.gen_range(1..=3);
    (0..count).map(|_| random_support(rng, dim, order - 1)).collect()
}

pub fn random_pattern<R: Rng>(rng: &mut R, order: usize, dim: usize) -> Result<PatternTensor> {
    let mut t = PatternTensor::new(order, dim)?;
    for u in 1..=dim {
        for s in row_sets(rng, order, dim)? {
            t.insert_support(u, s)?;
        }
    }
    Ok(t)
}

/// An `(m - 1)`-tuple whose underlying set is exactly `s`, in random order.
pub fn random_realization<R: Rng>(rng: &mut R, s: &IndexSet, len: usize) -> Vec<usize> {
    let members = s.to_vec();
    let mut tuple = members.clone();
    while tuple.len() < len {
        tuple.push(*members.choose(rng).expect("support sets are nonempty"));
    }
    tuple.shuffle(rng);
    tuple
}

/// A real tensor drawn like [`random_pattern`], with each support set realized
/// by one random tuple carrying a value in `[0.5, 2)`.
pub fn random_dense<R: Rng>(rng: &mut R, order: usize, dim: usize) -> Result<DenseTensor<f64>> {
    let mut a = DenseTensor::zeros(order, dim)?;
    let mut idx = vec![0; order];
    for u in 1..=dim {
        for s in row_sets(rng, order, dim)? {
            idx[0] = u;
            idx[1..].copy_from_slice(&random_realization(rng, &s, order - 1));
            a.set(&idx, rng.gen_range(0.5..2.0))?;
        }
    }
    Ok(a)
}

/// Every cell uniform in `0..=max`.
pub fn random_int_tensor<R: Rng>(rng: &mut R, order: usize, dim: usize, max: u64) -> Result<DenseTensor<u64>> {
    let mut a = DenseTensor::<u64>::zeros(order, dim)?;
    let cells = a.values().len();
    let mut idx = vec![0; order];
    for off in 0..cells {
        let mut rest = off;
        for slot in idx.iter_mut().rev() {
            *slot = rest % dim + 1;
            rest /= dim;
        }
        a.set(&idx, rng.gen_range(0..=max))?;
    }
    Ok(a)
}

/// Each entry positive independently with probability `density`.
pub fn random_matrix<R: Rng>(rng: &mut R, dim: usize, density: f64) -> Result<PatternMatrix> {
    let mut m = PatternMatrix::zeros(dim)?;
    for i in 1..=dim {
        for j in 1..=dim {
            if rng.gen_bool(density) {
                m.set(i, j)?;
            }
        }
    }
    Ok(m)
}
