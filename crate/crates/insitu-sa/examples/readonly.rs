//! Sorts a borrowed text that must not change, and shows the plan taken.
//!
//! ```text
//! cargo run --release --example readonly -- 100000
//! ```

use insitu_sa::audit::checksum;
use insitu_sa::ip_ro_int::{suffix_sort_readonly_with, OrientationMode, ReadonlyOptions};
use insitu_sa::text::verify_suffix_array;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() {
    let n: usize = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(100_000);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut t: Vec<usize> = (0..n - 1).map(|_| rng.gen_range(1..=4)).collect();
    t.push(0);
    let text: &[usize] = &t;
    let before = checksum(text);
    let mut sa = vec![0; n];
    for mode in [
        OrientationMode::Auto,
        OrientationMode::ForceLms,
        OrientationMode::ForceLml,
    ] {
        let opts = ReadonlyOptions {
            orientation: mode,
            ..Default::default()
        };
        let plan = suffix_sort_readonly_with(text, &mut sa, 4, opts).unwrap();
        assert!(verify_suffix_array(text, &sa).unwrap());
        println!("{mode:?}: {plan:?}");
    }
    println!("checksum unchanged: {}", checksum(text) == before);
}
