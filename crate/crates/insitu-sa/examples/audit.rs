//! Runs each algorithm under the workspace auditor and prints its report.
//!
//! ```text
//! cargo run --release --example audit -- 18 [sigma]
//! ```

use insitu_sa::audit::{audited_run, Algorithm, CountingAlloc};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[global_allocator]
static ALLOC: CountingAlloc = CountingAlloc;

fn main() {
    let k: u32 = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(16);
    let n = 1usize << k;
    let sigma: usize = std::env::args().nth(2).and_then(|a| a.parse().ok()).unwrap_or(256);
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut t: Vec<usize> = (0..n - 1).map(|_| rng.gen_range(1..=sigma)).collect();
    t.push(0);
    for algo in [
        Algorithm::IpInt,
        Algorithm::IpRoInt,
        Algorithm::IpGeneral,
        Algorithm::SaisRef,
    ] {
        match audited_run(algo, &t, sigma) {
            Ok((_, r)) => println!("{}", serde_json::to_string(&r).unwrap()),
            Err(e) => println!("{}: {e}", algo.name()),
        }
    }
}
