//! Seeded sweeps over independent random instances.
//!
//! Instance `i` draws from its own ChaCha stream, so results do not depend on how instances
//! are scheduled. With the `parallel` feature the instances run on the rayon pool; without
//! it, [`Exec::Parallel`] quietly runs sequentially.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Exec {
    Sequential,
    #[default]
    Parallel,
}

impl Exec {
    /// Whether [`Exec::Parallel`] actually runs on more than one thread in this build.
    pub fn parallel_available() -> bool {
        cfg!(feature = "parallel")
    }
}

/// The generator for instance `i` of a sweep seeded with `seed`.
pub fn instance_rng(seed: u64, i: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(i as u64);
    rng
}

/// Runs `f` on instances `0..n` and returns the results in instance order.
pub fn sweep<T, F>(exec: Exec, seed: u64, n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize, &mut ChaCha8Rng) -> T + Sync,
{
    let one = |i: usize| f(i, &mut instance_rng(seed, i));
    match exec {
        #[cfg(feature = "parallel")]
        Exec::Parallel => {
            use rayon::prelude::*;
            (0..n).into_par_iter().map(one).collect()
        }
        _ => (0..n).map(one).collect(),
    }
}
