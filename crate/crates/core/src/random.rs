//! Seeded random generation of polynomials, cochains and module maps for
//! property checks.

use rand::Rng;

use crate::cochain::skew_symmetrize;
use crate::module::ModuleMap;
use crate::poly::{int, Monomial, MultiPoly};
use crate::table::Table;
use crate::value::LambdaValue;

/// A polynomial in ∂ and λ₁, …, λ_{nlambdas} of total degree ≤ `max_degree`,
/// with small integer coefficients and a few terms.
pub fn poly<R: Rng>(rng: &mut R, nlambdas: usize, max_degree: u32, max_terms: usize) -> MultiPoly {
    let terms = rng.gen_range(0..=max_terms);
    let mut p = MultiPoly::zero();
    for _ in 0..terms {
        let mut exps = vec![0u32; nlambdas + 1];
        let deg = rng.gen_range(0..=max_degree);
        for _ in 0..deg {
            let v = rng.gen_range(0..=nlambdas);
            exps[v] += 1;
        }
        let c = loop {
            let c: i64 = rng.gen_range(-3..=3);
            if c != 0 {
                break c;
            }
        };
        p.add_term(Monomial::from_exponents(&exps), int(c));
    }
    p
}

pub fn element<R: Rng>(rng: &mut R, rank: usize, nlambdas: usize, max_degree: u32) -> LambdaValue {
    LambdaValue::from_coeffs(
        (0..rank)
            .map(|_| poly(rng, nlambdas, max_degree, 2))
            .collect(),
    )
}

/// A module element Σ pᵢ(∂) gᵢ.
pub fn module_element<R: Rng>(rng: &mut R, rank: usize, max_degree: u32) -> LambdaValue {
    element(rng, rank, 0, max_degree)
}

/// An arbitrary table with values in λ₁, …, λ_{k−1}, ∂.
pub fn table<R: Rng>(
    rng: &mut R,
    slot_ranks: Vec<usize>,
    target_rank: usize,
    max_degree: u32,
) -> Table {
    let nl = slot_ranks.len().saturating_sub(1);
    Table::from_fn(slot_ranks, target_rank, |_| {
        element(rng, target_rank, nl, max_degree)
    })
}

/// A valid k-cochain (skew-symmetric under simultaneous permutations).
pub fn cochain<R: Rng>(
    rng: &mut R,
    source_rank: usize,
    target_rank: usize,
    k: usize,
    max_degree: u32,
) -> Table {
    let t = table(rng, vec![source_rank; k], target_rank, max_degree);
    skew_symmetrize(&t)
}

pub fn module_map<R: Rng>(
    rng: &mut R,
    source_rank: usize,
    target_rank: usize,
    max_degree: u32,
) -> ModuleMap {
    let images: Vec<LambdaValue> = (0..source_rank)
        .map(|_| module_element(rng, target_rank, max_degree))
        .collect();
    ModuleMap::from_images(target_rank, &images).expect("images have the target rank")
}

pub fn seeded(seed: u64) -> rand_chacha::ChaCha8Rng {
    use rand::SeedableRng;
    rand_chacha::ChaCha8Rng::seed_from_u64(seed)
}
