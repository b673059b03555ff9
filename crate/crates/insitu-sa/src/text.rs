//! Texts, L/S classification, brute-force oracles, verification and BWT.

use std::cmp::Ordering;

use crate::error::{invalid, Error, Result};

/// Largest supported text length. Five values above any index must stay
/// representable for the in-band marker symbols.
pub const MAX_LEN: usize = (1usize << 62) - 8;

/// A symbol type that can be read as a non-negative integer.
pub trait Symbol: Copy + Ord {
    fn rank(self) -> usize;
}

macro_rules! impl_symbol {
    ($($t:ty),*) => {$(
        impl Symbol for $t {
            #[inline(always)]
            fn rank(self) -> usize {
                self as usize
            }
        }
    )*};
}
impl_symbol!(u8, u16, u32, u64, usize);

/// An owned text with its alphabet bound.
///
/// The last symbol is the sentinel `0`, which occurs nowhere else; all other
/// symbols lie in `1..=sigma`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Text {
    symbols: Vec<usize>,
    sigma: usize,
}

impl Text {
    /// Wraps `symbols`, checking the sentinel contract.
    pub fn new(symbols: Vec<usize>, sigma: usize) -> Result<Self> {
        validate(&symbols, sigma)?;
        Ok(Text { symbols, sigma })
    }

    /// Wraps `symbols` with `sigma` set to the largest symbol (at least 1).
    pub fn from_symbols(symbols: Vec<usize>) -> Result<Self> {
        let sigma = symbols.iter().copied().max().unwrap_or(0).max(1);
        Text::new(symbols, sigma)
    }

    /// Appends the sentinel to raw symbols, which must all be positive.
    pub fn with_sentinel(mut raw: Vec<usize>) -> Result<Self> {
        raw.push(0);
        Text::from_symbols(raw)
    }

    /// Maps each byte `b` to `b + 1` and appends the sentinel; `sigma = 256`.
    pub fn from_bytes(bytes: &[u8]) -> Self {
        let mut symbols: Vec<usize> = bytes.iter().map(|&b| b as usize + 1).collect();
        symbols.push(0);
        Text { symbols, sigma: 256 }
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn sigma(&self) -> usize {
        self.sigma
    }

    pub fn symbols(&self) -> &[usize] {
        &self.symbols
    }

    pub fn symbols_mut(&mut self) -> &mut [usize] {
        &mut self.symbols
    }

    pub fn into_symbols(self) -> Vec<usize> {
        self.symbols
    }
}

/// Checks the sentinel contract for `t` under alphabet bound `sigma`.
pub fn validate<S: Symbol>(t: &[S], sigma: usize) -> Result<()> {
    let n = t.len();
    if n == 0 {
        return Err(invalid("empty text"));
    }
    if n > MAX_LEN {
        return Err(invalid(format!("text length {n} exceeds {MAX_LEN}")));
    }
    if t[n - 1].rank() != 0 {
        return Err(invalid("text must end with the sentinel 0"));
    }
    for (i, &c) in t[..n - 1].iter().enumerate() {
        let c = c.rank();
        if c == 0 {
            return Err(invalid(format!("sentinel 0 at position {i} before the end")));
        }
        if c > sigma {
            return Err(invalid(format!("symbol {c} at position {i} exceeds sigma {sigma}")));
        }
    }
    Ok(())
}

/// Visits positions `n-1` down to `0` with their types (`true` = S-type).
pub fn classify_types<S: Symbol>(t: &[S], mut visit: impl FnMut(usize, bool)) {
    let n = t.len();
    if n == 0 {
        return;
    }
    let mut s = true;
    visit(n - 1, true);
    for i in (0..n - 1).rev() {
        s = match t[i].cmp(&t[i + 1]) {
            Ordering::Less => true,
            Ordering::Greater => false,
            Ordering::Equal => s,
        };
        visit(i, s);
    }
}

/// Type of position `i`, found by walking right over a run of equal symbols.
pub fn is_s_type<S: Symbol>(t: &[S], i: usize) -> bool {
    let n = t.len();
    let mut k = i;
    while k + 1 < n && t[k] == t[k + 1] {
        k += 1;
    }
    k + 1 == n || t[k] < t[k + 1]
}

/// Smallest `k > i` such that position `k` is S-type.
pub fn next_s_type<S: Symbol>(t: &[S], i: usize) -> usize {
    let n = t.len();
    let mut k = i + 1;
    // Skip the L-run: a position is L while it is strictly above its successor,
    // or equal to it and followed by more L.
    loop {
        if k + 1 >= n {
            return n - 1;
        }
        let mut e = k;
        while e + 1 < n && t[e] == t[e + 1] {
            e += 1;
        }
        if e + 1 == n || t[e] < t[e + 1] {
            return k;
        }
        k = e + 1;
    }
}

/// Counts of each suffix class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct TypeCounts {
    pub n_l: usize,
    pub n_s: usize,
    pub n_lms: usize,
    pub n_lml: usize,
}

pub fn count_types<S: Symbol>(t: &[S]) -> TypeCounts {
    let mut c = TypeCounts::default();
    let mut right = true;
    let mut first = true;
    classify_types(t, |_, s| {
        if s {
            c.n_s += 1;
        } else {
            c.n_l += 1;
        }
        if !first {
            // `right` is the type of position i+1, whose left neighbour is i.
            if right && !s {
                c.n_lms += 1;
            } else if !right && s {
                c.n_lml += 1;
            }
        }
        first = false;
        right = s;
    });
    c
}

/// Lexicographic comparison of `Suf(i)` and `Suf(j)`.
pub fn compare_suffixes<S: Symbol>(t: &[S], i: usize, j: usize) -> Ordering {
    if i == j {
        return Ordering::Equal;
    }
    let (a, b) = (&t[i..], &t[j..]);
    for (x, y) in a.iter().zip(b.iter()) {
        match x.cmp(y) {
            Ordering::Equal => {}
            o => return o,
        }
    }
    a.len().cmp(&b.len())
}

/// Sorts all suffixes by direct comparison. Oracle only.
pub fn naive_suffix_array<S: Symbol>(t: &[S]) -> Vec<usize> {
    let mut sa: Vec<usize> = (0..t.len()).collect();
    sa.sort_unstable_by(|&a, &b| compare_suffixes(t, a, b));
    sa
}

/// Checks that `sa` is the suffix array of `t` in O(n) time.
pub fn verify_suffix_array<S: Symbol>(t: &[S], sa: &[usize]) -> Result<bool> {
    let n = t.len();
    if sa.len() != n {
        return Err(invalid(format!("suffix array has {} entries, text has {n}", sa.len())));
    }
    let mut rank = vec![usize::MAX; n + 1];
    for (r, &p) in sa.iter().enumerate() {
        if p >= n || rank[p] != usize::MAX {
            return Ok(false);
        }
        rank[p] = r;
    }
    // Suf(n) is the empty suffix and ranks below everything.
    rank[n] = 0;
    for w in sa.windows(2) {
        let (a, b) = (w[0], w[1]);
        let ok = match t[a].cmp(&t[b]) {
            Ordering::Less => true,
            Ordering::Greater => false,
            Ordering::Equal => a + 1 < n && b + 1 < n && rank[a + 1] < rank[b + 1],
        };
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Burrows-Wheeler transform read off a verified suffix array.
pub fn bwt<S: Symbol>(t: &[S], sa: &[usize]) -> Result<Vec<S>> {
    if !verify_suffix_array(t, sa)? {
        return Err(Error::InvalidInput("not a suffix array of the text".into()));
    }
    let n = t.len();
    Ok(sa.iter().map(|&p| if p > 0 { t[p - 1] } else { t[n - 1] }).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    const RUN: [usize; 13] = [2, 1, 1, 3, 3, 1, 1, 3, 3, 1, 2, 1, 0];

    fn types(t: &[usize]) -> String {
        let mut v = vec![' '; t.len()];
        classify_types(t, |i, s| v[i] = if s { 'S' } else { 'L' });
        v.into_iter().collect()
    }

    #[test]
    fn types_of_running_example() {
        assert_eq!(types(&RUN), "LSSLLSSLLSLLS");
        assert_eq!(types(&[0usize]), "S");
        assert_eq!(types(&[3usize, 2, 1, 0]), "LLLS");
    }

    #[test]
    fn next_s() {
        assert_eq!(next_s_type(&RUN, 0), 1);
        assert_eq!(next_s_type(&RUN, 3), 5);
        assert_eq!(next_s_type(&RUN, 11), 12);
        assert_eq!(next_s_type(&[3usize, 2, 1, 0], 2), 3);
    }

    #[test]
    fn counts() {
        let c = count_types(&RUN);
        assert_eq!((c.n_l, c.n_s, c.n_lms, c.n_lml), (7, 6, 4, 3));
        assert_eq!(
            count_types(&[0usize]),
            TypeCounts {
                n_l: 0,
                n_s: 1,
                n_lms: 0,
                n_lml: 0
            }
        );
    }

    #[test]
    fn comparisons() {
        assert_eq!(compare_suffixes(&RUN, 12, 11), Ordering::Less);
        assert_eq!(compare_suffixes(&RUN, 1, 5), Ordering::Less);
        assert_eq!(compare_suffixes(&RUN, 4, 4), Ordering::Equal);
    }

    #[test]
    fn naive_and_verify() {
        let sa = naive_suffix_array(&RUN);
        assert_eq!(sa, vec![12, 11, 1, 5, 9, 2, 6, 10, 0, 4, 8, 3, 7]);
        assert_eq!(naive_suffix_array(&[0usize]), vec![0]);
        assert_eq!(naive_suffix_array(&[1usize, 2, 1, 2, 0]), vec![4, 2, 0, 3, 1]);
        assert!(verify_suffix_array(&RUN, &sa).unwrap());
        let mut bad = sa.clone();
        let a = bad.iter().position(|&x| x == 0).unwrap();
        let b = bad.iter().position(|&x| x == 1).unwrap();
        bad.swap(a, b);
        assert!(!verify_suffix_array(&RUN, &bad).unwrap());
        assert!(verify_suffix_array(&[0usize], &[0]).unwrap());
        assert!(verify_suffix_array(&RUN, &sa[1..]).is_err());
        assert!(!verify_suffix_array(&RUN, &[0; 13]).unwrap());
    }

    #[test]
    fn bwt_examples() {
        let sa = naive_suffix_array(&RUN);
        assert_eq!(bwt(&RUN, &sa).unwrap(), vec![1, 2, 2, 3, 3, 1, 1, 1, 0, 3, 3, 1, 1]);
        assert_eq!(bwt(&[0usize], &[0]).unwrap(), vec![0]);
        assert_eq!(bwt(&[1usize, 0], &[1, 0]).unwrap(), vec![1, 0]);
        assert!(bwt(&[1usize, 0], &[0, 1]).is_err());
    }

    #[test]
    fn validation() {
        assert!(Text::new(vec![1, 2, 0], 2).is_ok());
        assert!(Text::new(vec![1, 2, 0], 1).is_err());
        assert!(Text::new(vec![1, 0, 0], 2).is_err());
        assert!(Text::new(vec![1, 2], 2).is_err());
        assert!(Text::new(vec![], 2).is_err());
        assert_eq!(Text::from_bytes(b"ab").symbols(), &[98, 99, 0]);
    }
}
