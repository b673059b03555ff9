//! Counts symbol comparisons of the comparison-only sorter as n doubles.
//!
//! ```text
//! cargo run --release --example comparisons -- 12 16
//! ```

use insitu_sa::ip_general::{suffix_sort_by, GeneralOptions};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn shape(kind: &str, n: usize, rng: &mut ChaCha8Rng) -> Vec<u64> {
    let mut t: Vec<u64> = match kind {
        "random" => (0..n - 1).map(|_| rng.gen_range(1..=256)).collect(),
        "equal" => vec![1; n - 1],
        "increasing" => (1..n as u64).collect(),
        _ => (1..n as u64).rev().collect(),
    };
    t.push(0);
    t
}

fn main() {
    let mut args = std::env::args().skip(1).map(|a| a.parse::<u32>().unwrap());
    let lo = args.next().unwrap_or(12);
    let hi = args.next().unwrap_or(16);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for kind in ["random", "equal", "increasing", "decreasing"] {
        let mut prev = None;
        for k in lo..=hi {
            let n = 1usize << k;
            let t = shape(kind, n, &mut rng);
            let mut sa = vec![0; n];
            let st = suffix_sort_by(&t[..], &mut sa, GeneralOptions::default()).unwrap();
            let per = st.comparisons as f64 / (n as f64 * k as f64);
            let ratio = prev.map(|p| st.comparisons as f64 / p as f64);
            println!(
                "{kind:<10} n=2^{k:<2} branch={:?} comparisons={:<10} per n log n={per:.2} ratio={}",
                st.branch,
                st.comparisons,
                ratio.map_or("-".into(), |r: f64| format!("{r:.3}"))
            );
            prev = Some(st.comparisons);
        }
    }
}
