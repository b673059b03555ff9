//! Stable merging and merge sort with O(1) auxiliary words.
//!
//! [`stable_merge`] is a rotation merge in the SymMerge family, run without
//! a recursion stack. Pending subproblems are never stored: every subproblem
//! is two ascending runs, every element of a subproblem precedes every
//! element of the next one, so the next subproblem is found again by looking
//! for the next descent. Moves are O(n log n) per merge; comparisons are
//! O(n log n) in the worst case.

/// Reverses `v[a..b]` in place.
#[inline]
fn reverse<T>(v: &mut [T], mut a: usize, mut b: usize) {
    while a + 1 < b {
        b -= 1;
        v.swap(a, b);
        a += 1;
    }
}

/// Rotates `v[a..c]` so that `v[b..c]` comes first. Three reversals, O(1) words.
pub fn rotate<T>(v: &mut [T], a: usize, b: usize, c: usize) {
    if a == b || b == c {
        return;
    }
    crate::audit::probe();
    reverse(v, a, b);
    reverse(v, b, c);
    reverse(v, a, c);
}

/// First index in `v[lo..hi]` whose element satisfies `pred`, assuming `pred`
/// is monotone (false then true).
#[inline]
fn partition_point<T>(v: &[T], mut lo: usize, mut hi: usize, mut pred: impl FnMut(&T) -> bool) -> usize {
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if pred(&v[mid]) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    lo
}

/// Like [`partition_point`] on `v[lo..hi]` but probes exponentially from `lo`,
/// so short answers cost few comparisons.
#[inline]
fn gallop<T>(v: &[T], lo: usize, hi: usize, mut pred: impl FnMut(&T) -> bool) -> usize {
    let mut step = 1usize;
    let mut prev = lo;
    let mut cur = lo;
    while cur < hi {
        if pred(&v[cur]) {
            return partition_point(v, prev, cur, pred);
        }
        prev = cur + 1;
        cur = cur.saturating_add(step);
        step = step.saturating_mul(2);
    }
    partition_point(v, prev, hi, pred)
}

/// Merges the sorted runs `v[..mid]` and `v[mid..]` stably: among equal
/// elements, those of the left run come first.
pub fn stable_merge<T>(v: &mut [T], mid: usize, mut less: impl FnMut(&T, &T) -> bool) {
    let hi = v.len();
    if mid == 0 || mid >= hi {
        return;
    }
    const NONE: usize = usize::MAX;
    let mut done = 0usize;
    let mut m = mid;
    loop {
        if m == NONE {
            let mut i = done + 1;
            while i < hi && !less(&v[i], &v[i - 1]) {
                i += 1;
            }
            if i >= hi {
                return;
            }
            m = i;
        }
        // [done, m) is ascending; drop its prefix that already precedes v[m].
        let x0 = {
            let (left, right) = v.split_at(m);
            let y = &right[0];
            partition_point(left, done, m, |x| less(y, x))
        };
        if x0 == m {
            done = m;
            m = NONE;
            continue;
        }
        done = x0;
        // Drop the part of the right run that already follows v[m-1].
        let y1 = {
            let (left, right) = v.split_at(m);
            let xl = &left[m - 1];
            m + gallop(right, 0, hi - m, |y| !less(y, xl))
        };
        let (xl, yl) = (m - x0, y1 - m);
        let (a, b, p);
        if xl >= yl {
            a = x0 + xl / 2;
            b = {
                let (left, right) = v.split_at(m);
                let piv = &left[a];
                m + partition_point(right, 0, y1 - m, |y| !less(y, piv))
            };
            rotate(v, a, m, b);
            p = a + (b - m);
            // Left: [x0, a) + [a, p); right: [p+1, b) + [b, y1).
            m = if a > x0 && p > a {
                a
            } else if b > p + 1 && y1 > b {
                done = p + 1;
                b
            } else {
                done = y1;
                NONE
            };
        } else {
            let bi = m + yl / 2;
            a = {
                let (left, right) = v.split_at(m);
                let piv = &right[bi - m];
                partition_point(left, x0, m, |x| less(piv, x))
            };
            rotate(v, a, m, bi + 1);
            p = a + (bi - m);
            m = if a > x0 && p > a {
                a
            } else if bi + 1 > p + 1 && y1 > bi + 1 {
                done = p + 1;
                bi + 1
            } else {
                done = y1;
                NONE
            };
        }
    }
}

const RUN: usize = 16;

/// Binary insertion sort of `v`, stable.
pub fn insertion_sort<T>(v: &mut [T], mut less: impl FnMut(&T, &T) -> bool) {
    for i in 1..v.len() {
        let pos = {
            let (left, right) = v.split_at(i);
            let x = &right[0];
            partition_point(left, 0, i, |y| less(x, y))
        };
        if pos < i {
            rotate(v, pos, i, i + 1);
        }
    }
}

/// Stable bottom-up merge sort with O(1) auxiliary words.
pub fn mergesort_inplace<T>(v: &mut [T], mut less: impl FnMut(&T, &T) -> bool) {
    let n = v.len();
    let mut s = 0;
    while s < n {
        let e = (s + RUN).min(n);
        insertion_sort(&mut v[s..e], &mut less);
        s = e;
    }
    let mut w = RUN;
    while w < n {
        let mut s = 0;
        while s + w < n {
            let e = (s + 2 * w).min(n);
            stable_merge(&mut v[s..e], w, &mut less);
            s = e;
        }
        w *= 2;
    }
}

/// Stable merge sort using `scratch` (at least `v.len() / 2 + 1` cells) as
/// the merge buffer. Scratch contents are clobbered.
pub fn mergesort_with_scratch<T: Copy>(v: &mut [T], scratch: &mut [T], mut less: impl FnMut(&T, &T) -> bool) {
    let n = v.len();
    if scratch.len() < n / 2 + 1 {
        mergesort_inplace(v, less);
        return;
    }
    let mut s = 0;
    while s < n {
        let e = (s + RUN).min(n);
        insertion_sort(&mut v[s..e], &mut less);
        s = e;
    }
    let mut w = RUN;
    while w < n {
        let mut s = 0;
        while s + w < n {
            let e = (s + 2 * w).min(n);
            buffered_merge(&mut v[s..e], w, scratch, &mut less);
            s = e;
        }
        w *= 2;
    }
}

fn buffered_merge<T: Copy>(v: &mut [T], mid: usize, scratch: &mut [T], less: &mut impl FnMut(&T, &T) -> bool) {
    let n = v.len();
    if mid == 0 || mid >= n || !less(&v[mid], &v[mid - 1]) {
        return;
    }
    if mid <= scratch.len() && mid <= n - mid {
        scratch[..mid].copy_from_slice(&v[..mid]);
        let (mut i, mut j, mut k) = (0, mid, 0);
        while i < mid && j < n {
            if less(&v[j], &scratch[i]) {
                v[k] = v[j];
                j += 1;
            } else {
                v[k] = scratch[i];
                i += 1;
            }
            k += 1;
        }
        v[k..k + mid - i].copy_from_slice(&scratch[i..mid]);
    } else if n - mid <= scratch.len() {
        let r = n - mid;
        scratch[..r].copy_from_slice(&v[mid..]);
        // Fill from the back; ties take the right run first.
        let (mut i, mut j, mut k) = (mid, r, n);
        while i > 0 && j > 0 {
            k -= 1;
            if less(&scratch[j - 1], &v[i - 1]) {
                v[k] = v[i - 1];
                i -= 1;
            } else {
                v[k] = scratch[j - 1];
                j -= 1;
            }
        }
        v[..j].copy_from_slice(&scratch[..j]);
    } else {
        stable_merge(v, mid, less);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn oracle(v: &[(u32, u32)], mid: usize) -> Vec<(u32, u32)> {
        let (a, b) = v.split_at(mid);
        let (mut i, mut j) = (0, 0);
        let mut out = Vec::with_capacity(v.len());
        while i < a.len() && j < b.len() {
            if b[j].0 < a[i].0 {
                out.push(b[j]);
                j += 1;
            } else {
                out.push(a[i]);
                i += 1;
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        out
    }

    #[test]
    fn merge_keeps_left_first() {
        let mut v = vec![(1, 0), (3, 0), (3, 1), (4, 1)];
        stable_merge(&mut v, 2, |a, b| a.0 < b.0);
        assert_eq!(v, vec![(1, 0), (3, 0), (3, 1), (4, 1)]);
        let mut v = vec![(3, 0), (5, 0), (1, 1), (3, 1)];
        stable_merge(&mut v, 2, |a, b| a.0 < b.0);
        assert_eq!(v, vec![(1, 1), (3, 0), (3, 1), (5, 0)]);
    }

    #[test]
    fn empty_halves() {
        let mut v = vec![(2, 0), (1, 0)];
        stable_merge(&mut v, 0, |a, b| a.0 < b.0);
        assert_eq!(v, vec![(2, 0), (1, 0)]);
        stable_merge(&mut v, 2, |a, b| a.0 < b.0);
        assert_eq!(v, vec![(2, 0), (1, 0)]);
    }

    #[test]
    fn small_exhaustive_merges() {
        // Every split of every key pattern over {0,1,2} up to length 8.
        for len in 0..=8usize {
            for code in 0..3usize.pow(len as u32) {
                let mut keys = Vec::with_capacity(len);
                let mut c = code;
                for _ in 0..len {
                    keys.push((c % 3) as u32);
                    c /= 3;
                }
                for mid in 0..=len {
                    let mut v: Vec<(u32, u32)> = keys.iter().enumerate().map(|(i, &k)| (k, i as u32)).collect();
                    v[..mid].sort_by_key(|x| x.0);
                    v[mid..].sort_by_key(|x| x.0);
                    let want = oracle(&v, mid);
                    stable_merge(&mut v, mid, |a, b| a.0 < b.0);
                    assert_eq!(v, want, "keys {keys:?} mid {mid}");
                }
            }
        }
    }

    #[test]
    fn sorts_match_std() {
        let mut x = 12345u64;
        for len in [0usize, 1, 2, 15, 16, 17, 100, 1000, 4096] {
            let v: Vec<(u32, u32)> = (0..len)
                .map(|i| {
                    x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                    ((x >> 60) as u32, i as u32)
                })
                .collect();
            let mut want = v.clone();
            want.sort_by_key(|p| p.0);
            let mut a = v.clone();
            mergesort_inplace(&mut a, |p, q| p.0 < q.0);
            assert_eq!(a, want);
            let mut b = v.clone();
            let mut scratch = vec![(0, 0); len / 2 + 1];
            mergesort_with_scratch(&mut b, &mut scratch, |p, q| p.0 < q.0);
            assert_eq!(b, want);
            let mut rev: Vec<(u32, u32)> = want.iter().rev().copied().collect();
            let mut want_rev = rev.clone();
            want_rev.sort_by_key(|p| p.0);
            mergesort_inplace(&mut rev, |p, q| p.0 < q.0);
            assert_eq!(rev, want_rev);
        }
    }

    #[test]
    fn rotate_works() {
        let mut v = [0, 1, 2, 3, 4, 5];
        rotate(&mut v, 1, 3, 6);
        assert_eq!(v, [0, 3, 4, 5, 1, 2]);
    }
}
