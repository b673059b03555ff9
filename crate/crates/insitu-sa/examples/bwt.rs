//! Burrows-Wheeler transform of a string, with `$` for the sentinel.
//!
//! ```text
//! cargo run --example bwt -- banana
//! ```

use insitu_sa::ip_ro_int::suffix_sort_readonly;
use insitu_sa::text::bwt;
use insitu_sa::Text;

fn main() {
    let s = std::env::args().nth(1).unwrap_or_else(|| "banana".into());
    let text = Text::from_bytes(s.as_bytes());
    let mut sa = vec![0; text.len()];
    suffix_sort_readonly(text.symbols(), &mut sa, text.sigma()).unwrap();
    let out: String = bwt(text.symbols(), &sa)
        .unwrap()
        .into_iter()
        .map(|c| if c == 0 { '$' } else { (c - 1) as u8 as char })
        .collect();
    println!("{out}");
}
