//! Builds the suffix array of a string with the mutable-text sorter.
//!
//! ```text
//! cargo run --example build -- mississippi
//! ```

use insitu_sa::ip_int::suffix_sort_int;
use insitu_sa::Text;

fn main() {
    let s = std::env::args().nth(1).unwrap_or_else(|| "mississippi".into());
    let text = Text::from_bytes(s.as_bytes());
    let sigma = text.sigma().min(text.len());
    // ip-int needs sigma <= n, so rank the bytes first.
    let mut t = text.into_symbols();
    let mut seen: Vec<usize> = t.clone();
    seen.sort_unstable();
    seen.dedup();
    for c in t.iter_mut() {
        *c = seen.binary_search(c).unwrap();
    }
    let mut sa = vec![0; t.len()];
    suffix_sort_int(&mut t, &mut sa, sigma.min(seen.len() - 1).max(1), false).unwrap();
    for &p in &sa {
        println!("{p:>4}  {}", &s[p.min(s.len())..]);
    }
}
