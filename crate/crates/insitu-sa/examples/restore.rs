//! The mutable-text sorter uses the text as scratch; with restoration on it
//! hands the text back unchanged, provided every symbol occurs.
//!
//! ```text
//! cargo run --example restore
//! ```

use insitu_sa::ip_int::suffix_sort_int;

fn main() {
    let orig = vec![2, 1, 1, 3, 3, 1, 1, 3, 3, 1, 2, 1, 0];
    let mut sa = vec![0; orig.len()];

    let mut t = orig.clone();
    suffix_sort_int(&mut t, &mut sa, 3, false).unwrap();
    println!("without restore: {t:?}");

    let mut t = orig.clone();
    suffix_sort_int(&mut t, &mut sa, 3, true).unwrap();
    println!("with restore:    {t:?} (same: {})", t == orig);

    // Symbol 2 never occurs.
    let mut t = vec![1, 3, 1, 0];
    let mut sa = vec![0; 4];
    println!("{}", suffix_sort_int(&mut t, &mut sa, 3, true).unwrap_err());
}
