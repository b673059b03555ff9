//! Stable in-place merging and sorting with a caller-supplied order.
//!
//! ```text
//! cargo run --example merge
//! ```

use insitu_sa::merge::{mergesort_inplace, stable_merge};

fn main() {
    let mut v = vec![(1, 'a'), (3, 'b'), (3, 'c'), (7, 'd'), (2, 'e'), (3, 'f'), (5, 'g')];
    stable_merge(&mut v, 4, |x, y| x.0 < y.0);
    println!("merged: {v:?}");

    let mut w: Vec<(u8, usize)> = "in place and stable".bytes().zip(0..).collect();
    mergesort_inplace(&mut w, |x, y| x.0 < y.0);
    let s: String = w.iter().map(|&(b, _)| b as char).collect();
    println!(
        "sorted: {s:?}; equal keys keep their order: {}",
        w.windows(2).all(|p| p[0].0 < p[1].0 || p[0].1 < p[1].1)
    );
}
