//! Sorts the suffixes of a sequence whose symbols can only be compared: here
//! words, ordered case-insensitively, through a custom comparator.
//!
//! ```text
//! cargo run --example general -- "the cat and The dog and THE end"
//! ```

use std::cmp::Ordering;

use insitu_sa::ip_general::{suffix_sort_by, ComparatorText, GeneralOptions};

struct Words<'a>(Vec<&'a str>);

impl ComparatorText for Words<'_> {
    fn len(&self) -> usize {
        self.0.len() + 1
    }

    fn compare(&self, i: usize, j: usize) -> Ordering {
        // The position past the last word is the sentinel.
        match (self.0.get(i), self.0.get(j)) {
            (Some(a), Some(b)) => a.to_lowercase().cmp(&b.to_lowercase()),
            (a, b) => b.is_none().cmp(&a.is_none()),
        }
    }
}

fn main() {
    let line = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "the cat and The dog and THE end".into());
    let words = Words(line.split_whitespace().collect());
    let mut sa = vec![0; words.len()];
    let stats = suffix_sort_by(&words, &mut sa, GeneralOptions::default()).unwrap();
    for &p in &sa {
        println!("{p:>3}  {}", words.0[p.min(words.0.len())..].join(" "));
    }
    println!("{}", serde_json::to_string(&stats).unwrap());
}
