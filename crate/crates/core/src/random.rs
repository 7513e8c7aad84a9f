//! Seeded generators for test instances.
//!
//! Every instance of a verification run gets its own stream from
//! [`derive_seed`], so serial and parallel runs see identical data.

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::fockrep::Ball;
use crate::linalg::{c, CMatrix, C64};
use crate::poly::Poly;
use crate::words::{Alphabet, Word};

/// SplitMix64 finalizer.
fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce5_e4b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Seed of the `index`-th sub-stream of `base`.
pub fn derive_seed(base: u64, index: u64) -> u64 {
    mix(mix(base) ^ index.wrapping_mul(0xd605_bbb5_8c8a_bbfd))
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn gaussian(rng: &mut impl Rng) -> C64 {
    c(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// `rows × cols` matrix of standard complex Gaussians.
pub fn gaussian_matrix(rng: &mut impl Rng, rows: usize, cols: usize) -> CMatrix {
    CMatrix::from_fn(rows, cols, |_, _| gaussian(rng))
}

/// Polynomial with `terms` distinct random words of length `≤ max_len` and
/// Gaussian coefficients (matrices at `level > 1`).
pub fn random_poly<W: Word>(
    rng: &mut impl Rng,
    alphabet: &Alphabet,
    max_len: usize,
    terms: usize,
    level: usize,
) -> Poly<W> {
    let ball: Ball<W> = Ball::new(alphabet, max_len).expect("small sampling ball");
    random_poly_from(rng, alphabet, ball.words(), terms, level)
}

/// Polynomial supported on `terms` distinct words drawn from `pool`.
pub fn random_poly_from<W: Word>(
    rng: &mut impl Rng,
    alphabet: &Alphabet,
    pool: &[W],
    terms: usize,
    level: usize,
) -> Poly<W> {
    let chosen: Vec<&W> = pool.choose_multiple(rng, terms.min(pool.len())).collect();
    let items: Vec<(W, CMatrix)> = chosen
        .into_iter()
        .map(|w| (w.clone(), gaussian_matrix(rng, level, level)))
        .collect();
    Poly::from_terms(alphabet.clone(), level, items).expect("pool words lie in the alphabet")
}
