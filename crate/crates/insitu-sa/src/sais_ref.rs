//! Textbook SA-IS with an explicit bucket table and type flags.
//!
//! Not in-place. Used as a second oracle and as a speed baseline.

use crate::text::Symbol;

pub const EMPTY: usize = usize::MAX;

/// Bucket heads and tails for every symbol in `0..=sigma`.
///
/// Empty buckets have `head == tail + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BucketTable {
    pub heads: Vec<usize>,
    pub tails: Vec<usize>,
}

pub fn bucket_boundaries<S: Symbol>(t: &[S], sigma: usize) -> BucketTable {
    let mut cnt = vec![0usize; sigma + 1];
    for &c in t {
        cnt[c.rank()] += 1;
    }
    let mut heads = vec![0; sigma + 1];
    let mut tails = vec![0; sigma + 1];
    let mut sum = 0usize;
    for c in 0..=sigma {
        heads[c] = sum;
        sum += cnt[c];
        tails[c] = sum.wrapping_sub(1);
    }
    BucketTable { heads, tails }
}

/// One flag per position, `true` for S-type.
pub fn type_flags<S: Symbol>(t: &[S]) -> Vec<bool> {
    let mut f = vec![false; t.len()];
    crate::text::classify_types(t, |i, s| f[i] = s);
    f
}

fn is_lms(types: &[bool], i: usize) -> bool {
    i > 0 && types[i] && !types[i - 1]
}

/// Left-to-right scan placing L-suffixes at their buckets' LF-entries.
pub fn induce_l<S: Symbol>(t: &[S], sa: &mut [usize], buckets: &BucketTable, types: &[bool]) {
    let mut lf = buckets.heads.clone();
    for i in 0..sa.len() {
        let p = sa[i];
        if p == EMPTY || p == 0 {
            continue;
        }
        let j = p - 1;
        if !types[j] {
            let c = t[j].rank();
            sa[lf[c]] = j;
            lf[c] += 1;
        }
    }
}

/// Right-to-left scan placing S-suffixes at their buckets' RF-entries.
pub fn induce_s<S: Symbol>(t: &[S], sa: &mut [usize], buckets: &BucketTable, types: &[bool]) {
    let mut rf = buckets.tails.clone();
    for i in (0..sa.len()).rev() {
        let p = sa[i];
        if p == EMPTY || p == 0 {
            continue;
        }
        let j = p - 1;
        if types[j] {
            let c = t[j].rank();
            sa[rf[c]] = j;
            rf[c] = rf[c].wrapping_sub(1);
        }
    }
}

/// Places LMS positions at bucket tails, in the order given by `lms`.
fn place_lms_at_tails<S: Symbol>(t: &[S], sa: &mut [usize], buckets: &BucketTable, lms: impl Iterator<Item = usize>) {
    sa.fill(EMPTY);
    let mut rf = buckets.tails.clone();
    for i in lms {
        let c = t[i].rank();
        sa[rf[c]] = i;
        rf[c] = rf[c].wrapping_sub(1);
    }
}

fn lms_substrings_equal<S: Symbol>(t: &[S], types: &[bool], a: usize, b: usize) -> bool {
    let n = t.len();
    if a == n - 1 || b == n - 1 {
        return a == b;
    }
    let mut k = 0;
    loop {
        if t[a + k] != t[b + k] || types[a + k] != types[b + k] {
            return false;
        }
        if k > 0 && (is_lms(types, a + k) || is_lms(types, b + k)) {
            return is_lms(types, a + k) && is_lms(types, b + k);
        }
        k += 1;
    }
}

/// Full SA-IS recursion over `t` with symbols in `0..=sigma`.
pub fn sais<S: Symbol>(t: &[S], sigma: usize) -> Vec<usize> {
    let n = t.len();
    if n == 0 {
        return Vec::new();
    }
    if n == 1 {
        return vec![0];
    }
    let types = type_flags(t);
    let buckets = bucket_boundaries(t, sigma);
    let mut sa = vec![EMPTY; n];

    // LMS-substrings from LMS characters.
    place_lms_at_tails(t, &mut sa, &buckets, (1..n).rev().filter(|&i| is_lms(&types, i)));
    induce_l(t, &mut sa, &buckets, &types);
    induce_s(t, &mut sa, &buckets, &types);

    let sorted: Vec<usize> = sa
        .iter()
        .copied()
        .filter(|&p| p != EMPTY && is_lms(&types, p))
        .collect();
    let n1 = sorted.len();
    let mut name = vec![EMPTY; n];
    let mut rank = 0usize;
    for k in 0..n1 {
        if k > 0 && !lms_substrings_equal(t, &types, sorted[k - 1], sorted[k]) {
            rank += 1;
        }
        name[sorted[k]] = rank;
    }
    let lms_pos: Vec<usize> = (1..n).filter(|&i| is_lms(&types, i)).collect();
    let t1: Vec<usize> = lms_pos.iter().map(|&i| name[i]).collect();

    let sa1 = if rank + 1 == n1 {
        let mut s = vec![0; n1];
        for (i, &r) in t1.iter().enumerate() {
            s[r] = i;
        }
        s
    } else {
        sais(&t1, rank)
    };

    let order: Vec<usize> = sa1.iter().map(|&r| lms_pos[r]).collect();
    place_lms_at_tails(t, &mut sa, &buckets, order.into_iter().rev());
    induce_l(t, &mut sa, &buckets, &types);
    induce_s(t, &mut sa, &buckets, &types);
    sa
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::naive_suffix_array;

    const RUN: [usize; 13] = [2, 1, 1, 3, 3, 1, 1, 3, 3, 1, 2, 1, 0];

    #[test]
    fn buckets() {
        let b = bucket_boundaries(&RUN, 3);
        assert_eq!(b.heads, vec![0, 1, 7, 9]);
        assert_eq!(b.tails, vec![0, 6, 8, 12]);
        let b = bucket_boundaries(&[0usize], 1);
        assert_eq!((b.heads[0], b.tails[0]), (0, 0));
        let b = bucket_boundaries(&[1usize, 2, 1, 2, 0], 2);
        assert_eq!(b.heads, vec![0, 1, 3]);
        assert_eq!(b.tails, vec![0, 2, 4]);
    }

    #[test]
    fn induce_l_from_sorted_lms() {
        let types = type_flags(&RUN);
        let b = bucket_boundaries(&RUN, 3);
        let mut sa = vec![EMPTY; 13];
        place_lms_at_tails(&RUN, &mut sa, &b, [9, 5, 1, 12].into_iter());
        induce_l(&RUN, &mut sa, &b, &types);
        let e = EMPTY;
        assert_eq!(sa, vec![12, 11, e, e, 1, 5, 9, 10, 0, 4, 8, 3, 7]);
        induce_s(&RUN, &mut sa, &b, &types);
        assert_eq!(sa, vec![12, 11, 1, 5, 9, 2, 6, 10, 0, 4, 8, 3, 7]);
    }

    #[test]
    fn all_s_text_has_nothing_to_induce_left() {
        let t = [1usize, 0];
        let types = type_flags(&t);
        let b = bucket_boundaries(&t, 1);
        let mut sa = vec![1, EMPTY];
        induce_l(&t, &mut sa, &b, &types);
        assert_eq!(sa, vec![1, 0]);
    }

    #[test]
    fn decreasing_text_only_places_sentinel_before_induction() {
        let t = [3usize, 2, 1, 0];
        let types = type_flags(&t);
        let b = bucket_boundaries(&t, 3);
        let mut sa = vec![3, EMPTY, EMPTY, EMPTY];
        induce_l(&t, &mut sa, &b, &types);
        let before = sa.clone();
        induce_s(&t, &mut sa, &b, &types);
        assert_eq!(sa, before);
        assert_eq!(sa, vec![3, 2, 1, 0]);
    }

    #[test]
    fn reference_examples() {
        assert_eq!(sais(&RUN, 3), naive_suffix_array(&RUN));
        assert_eq!(sais(&[1usize, 1, 2, 0], 2), vec![3, 0, 1, 2]);
        assert_eq!(sais(&[0usize], 0), vec![0]);
    }
}
