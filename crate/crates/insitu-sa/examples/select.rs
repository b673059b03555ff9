//! Builds the select structure over a random set and answers queries.
//!
//! ```text
//! cargo run --release --example select -- 20
//! ```

use insitu_sa::select::{word_budget, SelectIndex, MAX_PROBES};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() {
    let k: u32 = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(16);
    let n = 1usize << k;
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for density in [0.5, 0.05, 0.001] {
        let ones: Vec<usize> = (0..=n).filter(|_| rng.gen_bool(density)).collect();
        let s = SelectIndex::build(n, &ones).unwrap();
        let worst = (0..ones.len()).map(|i| s.view().select_probed(i).1).max().unwrap_or(0);
        assert!((0..ones.len()).all(|i| s.select(i).unwrap() == ones[i]));
        println!(
            "density {density:<6} ones {:<8} words {:<7} budget {:<7} worst probes {worst} (max {MAX_PROBES})",
            ones.len(),
            s.words(),
            word_budget(n)
        );
    }
}
