use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Private stream for chain `index` under a master seed.
pub fn chain_rng(master: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(master);
    rng.set_stream(index);
    rng
}
