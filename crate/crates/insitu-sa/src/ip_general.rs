//! In-place suffix sorting when symbols can only be compared.
//!
//! The smaller of the two suffix classes is reduced: its substrings are
//! merge sorted (scratch in the free half of the suffix array), ranked, and
//! paired back into text order by heapsort. The reduced text is integer and
//! writable, so it is solved by [`crate::ip_int`]. The other class is then
//! induced with bucket heads found by binary search over the suffix array.
//!
//! Symbol values are never read: every decision goes through
//! [`ComparatorText::compare`].

use std::cell::Cell;
use std::cmp::Ordering::{self, Equal, Greater, Less};

use crate::audit;
use crate::error::{invalid, Result};
use crate::ip_int::{self, SymbolMode, GAP};
use crate::merge;
use crate::text::MAX_LEN;

/// A text whose symbols can only be compared.
///
/// The last position must compare strictly below every other position.
pub trait ComparatorText {
    fn len(&self) -> usize;

    fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Compares the symbols at positions `i` and `j`.
    fn compare(&self, i: usize, j: usize) -> Ordering;
}

impl<T: Ord> ComparatorText for [T] {
    fn len(&self) -> usize {
        <[T]>::len(self)
    }

    fn compare(&self, i: usize, j: usize) -> Ordering {
        self[i].cmp(&self[j])
    }
}

/// Counts the comparisons made through it.
pub struct Counted<'a, C: ?Sized> {
    inner: &'a C,
    count: Cell<u64>,
}

impl<'a, C: ComparatorText + ?Sized> Counted<'a, C> {
    pub fn new(inner: &'a C) -> Self {
        Counted {
            inner,
            count: Cell::new(0),
        }
    }

    pub fn count(&self) -> u64 {
        self.count.get()
    }
}

impl<C: ComparatorText + ?Sized> ComparatorText for Counted<'_, C> {
    fn len(&self) -> usize {
        self.inner.len()
    }

    #[inline]
    fn compare(&self, i: usize, j: usize) -> Ordering {
        self.count.set(self.count.get() + 1);
        self.inner.compare(i, j)
    }
}

/// Which class forms the reduced problem.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum Branch {
    /// S-substrings are sorted; L-suffixes are induced.
    S,
    /// L-substrings (and the sentinel) are sorted; S-suffixes are induced.
    L,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BranchMode {
    #[default]
    Auto,
    /// Use the S branch whenever it fits in the suffix array.
    ForceS,
    /// Use the L branch whenever it fits in the suffix array.
    ForceL,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct GeneralOptions {
    pub branch: BranchMode,
}

/// What one run did.
#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct GeneralStats {
    pub branch: Branch,
    pub n_s: usize,
    pub n_l: usize,
    /// Length of the reduced text.
    pub n1: usize,
    /// Symbol comparisons, including input validation.
    pub comparisons: u64,
    /// Whether the first suffix was set aside and inserted at the end.
    pub peeled: bool,
}

/// Sorts the suffixes of `text` using only symbol comparisons.
pub fn suffix_sort_general<T: Ord>(text: &[T], sa: &mut [usize]) -> Result<GeneralStats> {
    suffix_sort_by(text, sa, GeneralOptions::default())
}

/// Sorts the suffixes of any [`ComparatorText`].
pub fn suffix_sort_by<C: ComparatorText + ?Sized>(
    text: &C,
    sa: &mut [usize],
    opts: GeneralOptions,
) -> Result<GeneralStats> {
    let n = text.len();
    if n == 0 {
        return Err(invalid("text is empty"));
    }
    if n > MAX_LEN {
        return Err(invalid(format!("text length {n} exceeds {MAX_LEN}")));
    }
    if sa.len() != n {
        return Err(invalid(format!("suffix array has {} cells, text has {n}", sa.len())));
    }
    let counted = Counted::new(text);
    if (0..n - 1).any(|i| counted.compare(n - 1, i) != Less) {
        return Err(invalid("last symbol must compare below all others"));
    }
    audit::set_extra_words(std::mem::size_of::<ip_int::Ctx>() / std::mem::size_of::<usize>());
    let v = View { x: &counted, off: 0, n };
    let mut stats = sort_view(&v, sa, opts);
    stats.comparisons = counted.count();
    Ok(stats)
}

/// The text seen from `off` onwards.
struct View<'a, X: ?Sized> {
    x: &'a X,
    off: usize,
    n: usize,
}

impl<X: ComparatorText + ?Sized> View<'_, X> {
    #[inline(always)]
    fn cmp(&self, i: usize, j: usize) -> Ordering {
        self.x.compare(i + self.off, j + self.off)
    }

    /// Type of the run of equal symbols containing `p` (true for S) and the
    /// last position of that run.
    #[inline]
    fn run_type(&self, p: usize) -> (bool, usize) {
        if p + 1 == self.n {
            return (true, p);
        }
        let mut q = p;
        loop {
            match self.cmp(q, q + 1) {
                Equal => q += 1,
                o => return (o == Less, q),
            }
        }
    }

    /// Calls `f(i, is_s)` for every position, right to left.
    fn types_rtl(&self, mut f: impl FnMut(usize, bool)) {
        let n = self.n;
        f(n - 1, true);
        let mut s = true;
        for i in (0..n - 1).rev() {
            s = match self.cmp(i, i + 1) {
                Less => true,
                Greater => false,
                Equal => s,
            };
            f(i, s);
        }
    }

    /// Calls `f(i, is_s)` for every position, left to right.
    fn types_ltr(&self, mut f: impl FnMut(usize, bool)) {
        let mut i = 0;
        while i + 1 < self.n {
            let (s, e) = self.run_type(i);
            for p in i..=e {
                f(p, s);
            }
            i = e + 1;
        }
        f(self.n - 1, true);
    }

    /// Compares the substrings starting at members `a` and `b`, each running
    /// to the next member. Members are S positions, or with `l_side` the L
    /// positions and the sentinel. Equal symbols order L below S.
    fn cmp_sub(&self, a: usize, b: usize, l_side: bool) -> Ordering {
        if a == b {
            return Equal;
        }
        let o = self.cmp(a, b);
        if o != Equal {
            return o;
        }
        let mut k = 1;
        loop {
            let (pa, pb) = (a + k, b + k);
            let o = self.cmp(pa, pb);
            if o != Equal {
                return o;
            }
            // Equal symbols, so neither is the sentinel.
            let (sa, ea) = self.run_type(pa);
            let (sb, eb) = self.run_type(pb);
            let member = !l_side;
            if sa == member || sb == member {
                return match (sa, sb) {
                    (x, y) if x == y => Equal,
                    (true, _) => Greater,
                    _ => Less,
                };
            }
            k = (ea - a).min(eb - b) + 1;
        }
    }

    /// Full suffix comparison.
    fn cmp_suffix(&self, a: usize, b: usize) -> Ordering {
        if a == b {
            return Equal;
        }
        let mut k = 0;
        loop {
            let o = self.cmp(a + k, b + k);
            if o != Equal {
                return o;
            }
            k += 1;
        }
    }
}

fn sort_view<X: ComparatorText + ?Sized>(v: &View<X>, sa: &mut [usize], opts: GeneralOptions) -> GeneralStats {
    let n = v.n;
    let mut n_s = 0;
    v.types_rtl(|_, s| n_s += s as usize);
    let n_l = n - n_s;
    let mut stats = GeneralStats {
        branch: Branch::S,
        n_s,
        n_l,
        n1: n_s,
        comparisons: 0,
        peeled: false,
    };
    if n <= 2 {
        for (k, x) in sa.iter_mut().enumerate() {
            *x = n - 1 - k;
        }
        return stats;
    }
    let s_fits = 2 * n_s <= n;
    let l_fits = 2 * (n_l + 1) <= n;
    let branch = match opts.branch {
        BranchMode::ForceS if s_fits => Branch::S,
        BranchMode::ForceL if l_fits => Branch::L,
        _ if n_s <= n_l => Branch::S,
        _ => Branch::L,
    };
    if branch == Branch::L && !l_fits {
        return peel(v, sa, opts, stats);
    }
    stats.branch = branch;
    let l_side = branch == Branch::L;
    let m = if l_side { n_l + 1 } else { n_s };
    stats.n1 = m;

    sort_substrings(v, sa, m, l_side);
    rank_and_pair(v, sa, m, l_side);
    solve(sa, m);
    resolve(v, sa, m, l_side);
    if l_side {
        induce_final::<X, true>(v, sa, n_l);
    } else {
        induce_final::<X, false>(v, sa, n_l);
    }
    stats
}

/// Sorts the suffixes of `T[1..]`, then inserts suffix 0. Used when the L
/// branch's reduced text would not fit beside its output; dropping one
/// symbol makes the length even, which rules that case out.
#[inline(never)]
fn peel<X: ComparatorText + ?Sized>(
    v: &View<X>,
    sa: &mut [usize],
    opts: GeneralOptions,
    mut stats: GeneralStats,
) -> GeneralStats {
    let n = v.n;
    let sub = View {
        x: v.x,
        off: v.off + 1,
        n: n - 1,
    };
    let inner = sort_view(&sub, &mut sa[1..], opts);
    for x in sa[1..].iter_mut() {
        *x += 1;
    }
    let (mut lo, mut hi) = (1, n);
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if v.cmp_suffix(sa[mid], 0) == Less {
            lo = mid + 1;
        } else {
            hi = mid;
        }
    }
    sa.copy_within(1..lo, 0);
    sa[lo - 1] = 0;
    audit::probe();
    stats.branch = inner.branch;
    stats.n1 = inner.n1;
    stats.peeled = true;
    stats
}

/// Writes the members in text order to `sa[n-m..]` and sorts them by their
/// substrings, using `sa[..n-m]` as merge scratch.
#[inline(never)]
fn sort_substrings<X: ComparatorText + ?Sized>(v: &View<X>, sa: &mut [usize], m: usize, l_side: bool) {
    let n = v.n;
    let mut w = n;
    v.types_rtl(|i, s| {
        if s != l_side || i + 1 == n {
            w -= 1;
            sa[w] = i;
        }
    });
    debug_assert_eq!(w, n - m);
    let (front, tail) = sa.split_at_mut(n - m);
    merge::mergesort_with_scratch(tail, front, |a, b| v.cmp_sub(*a, *b, l_side) == Less);
    audit::probe();
}

/// Ranks the sorted substrings into `sa[..m]`, then heapsorts the tail by
/// position while swapping the ranks alongside, leaving the reduced text in
/// `sa[..m]`.
#[inline(never)]
fn rank_and_pair<X: ComparatorText + ?Sized>(v: &View<X>, sa: &mut [usize], m: usize, l_side: bool) {
    let n = v.n;
    let (front, tail) = sa.split_at_mut(n - m);
    front[0] = 0;
    for k in 1..m {
        let differs = v.cmp_sub(tail[k - 1], tail[k], l_side) != Equal;
        front[k] = front[k - 1] + differs as usize;
    }
    heapsort_paired(tail, &mut front[..m]);
    audit::probe();
}

/// Sorts `keys` ascending and applies the same swaps to `vals`.
pub fn heapsort_paired(keys: &mut [usize], vals: &mut [usize]) {
    let n = keys.len();
    let sift = |keys: &mut [usize], vals: &mut [usize], mut root: usize, end: usize| loop {
        let mut child = 2 * root + 1;
        if child >= end {
            break;
        }
        if child + 1 < end && keys[child + 1] > keys[child] {
            child += 1;
        }
        if keys[root] >= keys[child] {
            break;
        }
        keys.swap(root, child);
        vals.swap(root, child);
        root = child;
    };
    for root in (0..n / 2).rev() {
        sift(keys, vals, root, n);
    }
    for end in (1..n).rev() {
        keys.swap(0, end);
        vals.swap(0, end);
        sift(keys, vals, 0, end);
    }
}

/// Sorts the reduced text in `sa[..m]` into `sa[n-m..]`.
#[inline(never)]
fn solve(sa: &mut [usize], m: usize) {
    let n = sa.len();
    let distinct = sa[..m].iter().all(|&r| r + 1 < m) && {
        // Ranks are dense, so they are distinct iff the largest is m - 1.
        sa[..m].iter().max() == Some(&(m - 1))
    };
    if distinct || m == 1 {
        for i in 0..m {
            let r = sa[i];
            sa[n - m + r] = i;
        }
    } else {
        sa[m..n - m].fill(GAP);
        ip_int::solve_reduced(sa, m, SymbolMode::Auto);
        audit::level_resume(0);
    }
}

/// Replaces reduced ranks in `sa[n-m..]` by the member positions they name.
#[inline(never)]
fn resolve<X: ComparatorText + ?Sized>(v: &View<X>, sa: &mut [usize], m: usize, l_side: bool) {
    let n = v.n;
    let mut k = m;
    v.types_rtl(|i, s| {
        if s != l_side || i + 1 == n {
            k -= 1;
            sa[k] = i;
        }
    });
    for i in n - m..n {
        sa[i] = sa[sa[i]];
    }
    audit::probe();
}

const BH: usize = usize::MAX - 1;
const BT: usize = usize::MAX - 2;
const E: usize = usize::MAX - 3;
const R1: usize = usize::MAX - 4;
const R2: usize = usize::MAX - 5;

/// Places the other class around the sorted members and induces it.
///
/// With `M = false` the sorted S-suffixes are in the tail and L-suffixes are
/// induced left to right. With `M = true` the array, the symbol order and the
/// suffix types are all mirrored, so the same code induces S-suffixes right
/// to left from the sorted L-suffixes.
#[inline(never)]
fn induce_final<X: ComparatorText + ?Sized, const M: bool>(v: &View<X>, sa: &mut [usize], n_l: usize) {
    let n = v.n;
    let mid = if M {
        // Sorted L-suffixes to the front; the sentinel leads the tail list.
        sa.copy_within(n - n_l..n, 0);
        let mut w = n_l;
        v.types_ltr(|i, s| {
            if s {
                sa[w] = i;
                w += 1;
            }
        });
        merge::mergesort_inplace(&mut sa[n_l..], |a, b| v.cmp(*a, *b) == Less);
        n_l
    } else {
        let mut w = n_l;
        v.types_rtl(|i, s| {
            if !s {
                w -= 1;
                sa[w] = i;
            }
        });
        merge::mergesort_inplace(&mut sa[..n_l], |a, b| v.cmp(*a, *b) == Less);
        n_l
    };
    merge::stable_merge(sa, mid, |a, b| v.cmp(*a, *b) == Less);
    audit::probe();
    let mut st = Induce::<X, M> {
        v,
        sa,
        n,
        cur: usize::MAX,
        lf: 0,
        rl: 0,
    };
    st.init();
    st.induce();
}

/// Induction state. Cell `q` is `sa[q]`, or `sa[n-1-q]` when mirrored.
struct Induce<'a, 'b, X: ?Sized, const M: bool> {
    v: &'a View<'b, X>,
    sa: &'a mut [usize],
    n: usize,
    /// A suffix of the bucket being scanned.
    cur: usize,
    /// Next free cell and last target cell of that bucket.
    lf: usize,
    rl: usize,
}

impl<X: ComparatorText + ?Sized, const M: bool> Induce<'_, '_, X, M> {
    #[inline(always)]
    fn at(&self, q: usize) -> usize {
        if M {
            self.n - 1 - q
        } else {
            q
        }
    }

    #[inline(always)]
    fn get(&self, q: usize) -> usize {
        self.sa[self.at(q)]
    }

    #[inline(always)]
    fn set(&mut self, q: usize, x: usize) {
        let a = self.at(q);
        self.sa[a] = x;
    }

    /// Symbol order in the scan's frame.
    #[inline(always)]
    fn cmpc(&self, i: usize, j: usize) -> Ordering {
        let o = self.v.cmp(i, j);
        if M {
            o.reverse()
        } else {
            o
        }
    }

    fn copy_rel(&mut self, lo: usize, hi: usize, to: usize) {
        if hi <= lo {
            return;
        }
        if M {
            let n = self.n;
            self.sa.copy_within(n - hi..n - lo, n - to - (hi - lo));
        } else {
            self.sa.copy_within(lo..hi, to);
        }
    }

    /// Whether cell `q` holds a suffix index. A counter follows `BH`.
    #[inline]
    fn genuine(&self, q: usize) -> bool {
        self.get(q) < self.n && !(q > 0 && self.get(q - 1) == BH)
    }

    /// First cell of the bucket of suffix `j`, by binary search.
    fn head_of(&self, j: usize) -> usize {
        let (mut lo, mut hi) = (0, self.n);
        while lo < hi {
            let mid = lo + (hi - lo) / 2;
            let mut g = mid;
            while g < hi && !self.genuine(g) {
                g += 1;
            }
            debug_assert!(g == hi || g - mid <= 3, "special run longer than three cells");
            if g == hi {
                hi = mid;
            } else if self.cmpc(self.get(g), j) == Less {
                lo = g + 1;
            } else {
                hi = mid;
            }
        }
        while !self.genuine(lo) {
            lo += 1;
        }
        audit::probe();
        lo
    }

    /// Marks each bucket with its number of targets.
    fn init(&mut self) {
        let v = self.v;
        let mut visit = |i: usize| {
            let l = self.head_of(i);
            let next = if l + 1 < self.n { self.get(l + 1) } else { 0 };
            if next == BH || next == BT {
                return;
            }
            // Targets of a bucket sit in text order, so the first one met
            // is its last.
            let mut r = l;
            while self.get(r) != i {
                r += 1;
            }
            match r - l + 1 {
                1 => {}
                2 => self.set(l + 1, BT),
                3 => {
                    self.set(l + 1, BH);
                    self.set(l + 2, BT);
                }
                _ => {
                    self.set(l + 1, BH);
                    self.set(l + 2, E);
                    self.set(r, BT);
                }
            }
        };
        if M {
            v.types_ltr(|i, s| {
                if s && i + 1 < v.n {
                    visit(i)
                }
            });
        } else {
            v.types_rtl(|i, s| {
                if !s {
                    visit(i)
                }
            });
        }
        audit::probe();
    }

    fn induce(&mut self) {
        for q in 0..self.n {
            let e = self.get(q);
            debug_assert!(e < self.n, "cell {q} not filled");
            if self.cur == usize::MAX || self.cmpc(e, self.cur) != Equal {
                self.enter(q);
                self.cur = e;
            }
            if e == 0 {
                continue;
            }
            let j = e - 1;
            match self.cmpc(j, e) {
                Greater => {
                    let l = self.head_of(j);
                    self.place(l, j);
                }
                Equal if self.lf <= self.rl => {
                    self.set(self.lf, j);
                    self.lf += 1;
                }
                _ => {}
            }
        }
        audit::probe();
    }

    /// Starts scanning the bucket whose first cell is `l`: moves its placed
    /// targets to their final cells and records where the rest go.
    fn enter(&mut self, l: usize) {
        let n = self.n;
        let next = if l + 1 < n { self.get(l + 1) } else { 0 };
        let (lf, rl) = match next {
            BH => {
                let k = self.get(l + 2);
                self.copy_rel(l + 3, l + k + 2, l + 1);
                let mut r = l + k + 2;
                while self.get(r) != BT {
                    r += 1;
                }
                (l + k, r)
            }
            R2 => {
                let mut r = l + 2;
                while self.get(r) != BT {
                    r += 1;
                }
                self.copy_rel(l + 2, r, l + 1);
                (r - 1, r)
            }
            _ => {
                let first = self.get(l);
                let mut r = l + 1;
                while r < n && self.get(r) != R1 && self.genuine(r) && self.cmpc(self.get(r), first) == Equal {
                    r += 1;
                }
                if r < n && self.get(r) == R1 {
                    (r, r)
                } else {
                    (l + 1, l)
                }
            }
        };
        // Keep the unfilled cells searchable.
        let fill = self.get(l);
        for q in lf..=rl {
            self.set(q, fill);
        }
        self.lf = lf;
        self.rl = rl;
        audit::probe();
    }

    /// Places target `j` into the not yet scanned bucket starting at `l`.
    fn place(&mut self, l: usize, j: usize) {
        let next = if l + 1 < self.n { self.get(l + 1) } else { 0 };
        match next {
            BH => {
                let k = self.get(l + 2);
                if k == E {
                    self.set(l, j);
                    self.set(l + 2, 1);
                } else if k == BT {
                    self.set(l, j);
                    self.set(l + 1, R2);
                } else if self.get(l + k + 2) != BT {
                    self.set(l + k + 2, j);
                    self.set(l + 2, k + 1);
                } else {
                    self.copy_rel(l + 3, l + k + 2, l + 2);
                    self.set(l + k + 1, j);
                    self.set(l + 1, R2);
                }
            }
            BT => {
                self.set(l, j);
                self.set(l + 1, R1);
            }
            R2 => {
                let mut r = l + 2;
                while self.get(r) != BT {
                    r += 1;
                }
                self.copy_rel(l + 2, r, l + 1);
                self.set(r - 1, j);
                self.set(r, R1);
            }
            _ => {
                if self.get(l) == j {
                    // A bucket with a single target already holds it.
                    return;
                }
                let mut r = l + 1;
                while self.get(r) != R1 {
                    r += 1;
                }
                self.set(r, j);
            }
        }
        audit::probe();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::naive_suffix_array;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    const RUN: [usize; 13] = [2, 1, 1, 3, 3, 1, 1, 3, 3, 1, 2, 1, 0];

    fn check(t: &[usize], mode: BranchMode) -> GeneralStats {
        let mut sa = vec![0; t.len()];
        let st = suffix_sort_by(t, &mut sa, GeneralOptions { branch: mode }).unwrap();
        assert_eq!(sa, naive_suffix_array(t), "t={t:?} mode={mode:?} stats={st:?}");
        st
    }

    #[test]
    fn running_example() {
        let st = check(&RUN, BranchMode::Auto);
        assert_eq!((st.branch, st.n_s, st.n_l), (Branch::S, 6, 7));
        check(&RUN, BranchMode::ForceL);
    }

    #[test]
    fn s_substrings_of_running_example() {
        let v = View {
            x: &RUN[..],
            off: 0,
            n: 13,
        };
        let mut sa = [0; 13];
        sort_substrings(&v, &mut sa, 6, false);
        assert_eq!(sa[7], 12);
        assert_eq!(sa[10], 9);
        let mut a = [sa[8], sa[9]];
        a.sort();
        assert_eq!(a, [1, 5]);
        let mut b = [sa[11], sa[12]];
        b.sort();
        assert_eq!(b, [2, 6]);
        rank_and_pair(&v, &mut sa, 6, false);
        assert_eq!(sa[..6], [1, 3, 1, 3, 2, 0]);
        solve(&mut sa, 6);
        resolve(&v, &mut sa, 6, false);
        assert_eq!(sa[7..], [12, 1, 5, 9, 2, 6]);
    }

    #[test]
    fn prefix_substring_ranks_above() {
        // "1 3 2" at 0 is a proper prefix of "1 3 2 0" at 4 but its suffix
        // is larger.
        let t = [1, 3, 2, 5, 1, 3, 2, 0];
        let v = View {
            x: &t[..],
            off: 0,
            n: 8,
        };
        assert_eq!(v.cmp_sub(0, 4, false), Greater);
        check(&t, BranchMode::Auto);
    }

    #[test]
    fn exhaustive_small() {
        for n in 1..=10usize {
            for sigma in 1..=3usize {
                let k = sigma.pow(n as u32 - 1);
                for code in 0..k {
                    let mut c = code;
                    let mut t: Vec<usize> = (0..n - 1)
                        .map(|_| {
                            let x = c % sigma + 1;
                            c /= sigma;
                            x
                        })
                        .collect();
                    t.push(0);
                    for mode in [BranchMode::Auto, BranchMode::ForceS, BranchMode::ForceL] {
                        check(&t, mode);
                    }
                }
            }
        }
    }

    #[test]
    fn random_texts() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for round in 0..300 {
            let n = rng.gen_range(2..2000);
            let sigma = [2, 3, 16, 256, n][round % 5];
            let mut t: Vec<usize> = (0..n - 1).map(|_| rng.gen_range(1..=sigma)).collect();
            t.push(0);
            check(
                &t,
                [BranchMode::Auto, BranchMode::ForceS, BranchMode::ForceL][round % 3],
            );
        }
    }

    #[test]
    fn structured_texts() {
        for n in [3, 4, 5, 64, 257, 1000] {
            let mut inc: Vec<usize> = (1..n).collect();
            inc.push(0);
            let mut dec: Vec<usize> = (1..n).rev().collect();
            dec.push(0);
            let mut eq = vec![1; n - 1];
            eq.push(0);
            let mut per: Vec<usize> = (0..n - 1).map(|i| [2, 1, 1, 3][i % 4]).collect();
            per.push(0);
            for t in [inc, dec, eq, per] {
                for mode in [BranchMode::Auto, BranchMode::ForceS, BranchMode::ForceL] {
                    check(&t, mode);
                }
            }
        }
    }

    #[test]
    fn string_symbols() {
        let words = ["to", "be", "or", "not", "to", "be", ""];
        let mut sa = [0; 7];
        suffix_sort_general(&words[..], &mut sa).unwrap();
        assert_eq!(sa.to_vec(), naive_suffix_array(&[4usize, 1, 3, 2, 4, 1, 0]));
    }

    #[test]
    fn heapsort_pairs() {
        let mut k = [5, 1, 4, 2, 3];
        let mut v = [50, 10, 40, 20, 30];
        heapsort_paired(&mut k, &mut v);
        assert_eq!(k, [1, 2, 3, 4, 5]);
        assert_eq!(v, [10, 20, 30, 40, 50]);
    }

    #[test]
    fn odd_length_l_branch_peels() {
        // n_l = 3 < n_s = 4, and 2 (n_l + 1) > 7.
        let t = [1, 2, 1, 2, 1, 2, 0];
        let st = check(&t, BranchMode::Auto);
        assert!(st.peeled);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut seen = [false; 3];
        for _ in 0..400 {
            let n = 2 * rng.gen_range(2..300) + 1;
            let mut t: Vec<usize> = (0..n - 1).map(|_| rng.gen_range(1..=4)).collect();
            t.push(0);
            let st = check(&t, BranchMode::Auto);
            seen[st.peeled as usize] = true;
            seen[2] |= st.branch == Branch::L && !st.peeled;
        }
        assert_eq!(seen, [true; 3]);
    }

    #[test]
    fn comparisons_grow_near_linearly() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let mut prev = 0u64;
        for k in 12..=14 {
            let n = 1usize << k;
            let mut t: Vec<usize> = (0..n - 1).map(|_| rng.gen_range(1..=256)).collect();
            t.push(0);
            let c = check(&t, BranchMode::Auto).comparisons;
            assert!(c <= 8 * (n as u64) * k as u64, "{c} comparisons at n = {n}");
            if prev > 0 {
                assert!(c as f64 / prev as f64 <= 2.4);
            }
            prev = c;
        }
    }

    #[test]
    fn rejects_bad_sentinel() {
        let mut sa = [0; 3];
        assert!(suffix_sort_general(&[1, 0, 0][..], &mut sa).is_err());
        assert!(suffix_sort_general(&[0, 1, 1][..], &mut sa).is_err());
        let mut sa = [0; 1];
        suffix_sort_general(&[0][..], &mut sa).unwrap();
        assert_eq!(sa, [0]);
    }
}
