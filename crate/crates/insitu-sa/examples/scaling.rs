//! Times the in-place sorters on random texts of doubling length and prints
//! the ratio between consecutive sizes.
//!
//! ```text
//! cargo run --release --example scaling -- 20 23
//! ```

use std::time::Instant;

use insitu_sa::{ip_int, ip_ro_int};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_text(n: usize, sigma: usize, seed: u64) -> Vec<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut t: Vec<usize> = (0..n - 1).map(|_| rng.gen_range(1..=sigma)).collect();
    t.push(0);
    t
}

fn median3(mut f: impl FnMut() -> f64) -> f64 {
    let mut v = [f(), f(), f()];
    v.sort_by(f64::total_cmp);
    v[1]
}

fn main() {
    let args: Vec<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let (lo, hi) = (args.first().copied().unwrap_or(16), args.get(1).copied().unwrap_or(20));
    let sigma = 256;
    let mut prev: Option<(f64, f64)> = None;
    println!(
        "{:>10} {:>12} {:>12} {:>8} {:>8}",
        "n", "ip-int s", "ip-ro-int s", "ratio", "ratio"
    );
    for k in lo..=hi {
        let n = 1usize << k;
        let t = random_text(n, sigma, k as u64);
        let mut sa = vec![0; n];
        let a = median3(|| {
            let mut w = t.clone();
            let s = Instant::now();
            ip_int::suffix_sort_int(&mut w, &mut sa, sigma, false).unwrap();
            s.elapsed().as_secs_f64()
        });
        let b = median3(|| {
            let s = Instant::now();
            ip_ro_int::suffix_sort_readonly(&t, &mut sa, sigma).unwrap();
            s.elapsed().as_secs_f64()
        });
        let (ra, rb) = prev.map_or((f64::NAN, f64::NAN), |(pa, pb)| (a / pa, b / pb));
        println!("{n:>10} {a:>12.4} {b:>12.4} {ra:>8.2} {rb:>8.2}");
        prev = Some((a, b));
    }
}
