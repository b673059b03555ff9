//! Prints the intermediate arrays of the mutable-text sorter on a small text.
//!
//! ```text
//! cargo run --example trace
//! ```

use insitu_sa::ip_int::{
    compact_sorted_lms, construct_reduced, induce_all, place_lms, rename, solve_reduced, Coding, Renaming, SymbolMode,
};

fn show(label: &str, v: &[usize], empty: usize) {
    let cells: Vec<String> = v
        .iter()
        .map(|&x| if x == empty { "-".into() } else { x.to_string() })
        .collect();
    println!("{label:<10} {}", cells.join(" "));
}

fn main() {
    let mut t = vec![2, 1, 1, 3, 3, 1, 1, 3, 3, 1, 2, 1, 0];
    let n = t.len();
    let mut sa = vec![0; n];
    show("text", &t, usize::MAX);
    rename(&mut t, &mut sa, 3, Renaming::HeadTail).unwrap();
    show("renamed", &t, usize::MAX);
    // The fast coding keeps empty cells distinct from every index.
    let mut c = Coding::new(n, SymbolMode::ForceFast, Renaming::HeadTail);
    let e = c.empty();
    place_lms(&t, &mut sa, &mut c);
    show("lms", &sa, e);
    induce_all(&t, &mut sa, &mut c);
    show("induced", &sa, e);
    let n1 = compact_sorted_lms(&t, &mut sa, &c);
    show("lms tail", &sa[n - n1..], e);
    construct_reduced(&t, &mut sa, n1);
    show("T1", &sa[..n1], e);
    solve_reduced(&mut sa, n1, SymbolMode::Auto);
    show("SA1", &sa[n - n1..], e);
}
