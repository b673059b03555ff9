//! In-place suffix sorting for integer alphabets when the text may be written.
//!
//! The text is renamed so that every symbol is a bucket boundary in the
//! suffix array. Bucket state then lives inside the suffix array itself,
//! encoded with a handful of reserved values (`U`, `M`, `E`, ...) next to
//! interior counters. The recursion keeps no sizes in its frames: the reduced
//! text sits at the front of the parent's suffix array and the sizes of every
//! level are recovered from the layout on the way back up.
//!
//! The step functions are public so that intermediate states can be inspected.

use crate::audit;
use crate::error::{invalid, Error, Result};
use crate::text::{is_s_type, next_s_type, validate};

/// Choice of reserved values.
///
/// `Auto` picks `n..n+4` when they fit below the next power of two and
/// otherwise reuses `n-5..n-1`, handling the five buckets that contain those
/// suffix indices with explicit cursors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SymbolMode {
    #[default]
    Auto,
    ForceFast,
    ForceFallback,
}

/// How the text is renamed before sorting.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Renaming {
    /// L-type positions get their bucket head, S-type positions the tail.
    HeadTail,
    /// Every position gets its bucket tail, so the text can be restored.
    TailOnly,
}

#[derive(Clone, Copy, Default, Debug)]
struct Region {
    lo: usize,
    hi: usize,
    cur: usize,
}

/// Decoding of suffix array cells for one level.
#[derive(Debug)]
pub struct Coding {
    n: usize,
    fast: bool,
    ren: Renaming,
    e: usize,
    u: usize,
    m: usize,
    u2: usize,
    regs: [Region; 5],
    nregs: usize,
}

impl Coding {
    pub fn new(n: usize, mode: SymbolMode, ren: Renaming) -> Self {
        let fits = n < n.next_power_of_two().saturating_sub(5);
        let fast = n < 8
            || match mode {
                SymbolMode::Auto => fits,
                SymbolMode::ForceFast => true,
                SymbolMode::ForceFallback => false,
            };
        let (e, u, m, u2) = if fast {
            (n + 4, n, n + 1, n + 2)
        } else {
            (n - 1, n - 2, n - 3, n - 4)
        };
        Coding {
            n,
            fast,
            ren,
            e,
            u,
            m,
            u2,
            regs: [Region::default(); 5],
            nregs: 0,
        }
    }

    pub fn is_fast(&self) -> bool {
        self.fast
    }

    /// The value of an empty cell.
    pub fn empty(&self) -> usize {
        self.e
    }

    pub fn marker_u(&self) -> usize {
        self.u
    }

    pub fn marker_m(&self) -> usize {
        self.m
    }

    /// Recomputes the cursor-handled regions for the current renamed text.
    fn load_regions(&mut self, t: &[usize], at_lo: bool) {
        self.nregs = 0;
        if self.fast {
            return;
        }
        let n = self.n;
        let mut vals = [0usize; 5];
        let mut s = [false; 5];
        let mut st = true;
        for k in (0..5).rev() {
            let x = n - 5 + k;
            if x + 1 < n {
                st = t[x] < t[x + 1] || (t[x] == t[x + 1] && st);
            }
            s[k] = st;
            vals[k] = t[x];
        }
        let mut cnt = [0usize; 5];
        let mask = vals.iter().fold(0u64, |m, &v| m | 1 << (v & 63));
        for &c in t {
            if mask & 1 << (c & 63) == 0 {
                continue;
            }
            for k in 0..5 {
                if c == vals[k] {
                    cnt[k] += 1;
                }
            }
        }
        for k in 0..5 {
            let v = vals[k];
            let (lo, hi) = match (self.ren, s[k]) {
                (Renaming::HeadTail, false) => (v, v + cnt[k] - 1),
                _ => (v + 1 - cnt[k], v),
            };
            if self.regs[..self.nregs].iter().any(|r| r.lo == lo) {
                continue;
            }
            self.regs[self.nregs] = Region {
                lo,
                hi,
                cur: if at_lo { lo } else { hi },
            };
            self.nregs += 1;
        }
    }

    #[inline]
    fn reg_of(&self, x: usize) -> Option<usize> {
        (0..self.nregs).find(|&k| self.regs[k].lo <= x && x <= self.regs[k].hi)
    }

    #[inline]
    fn in_reg(&self, x: usize) -> bool {
        !self.fast && self.reg_of(x).is_some()
    }

    #[inline]
    fn is_e(&self, x: usize, v: usize) -> bool {
        v == self.e && (self.fast || x != 0)
    }

    #[inline]
    fn is_free(&self, x: usize, v: usize) -> bool {
        self.is_e(x, v) && !self.in_reg(x)
    }

    #[inline]
    fn is_sym(&self, x: usize, v: usize, s: usize) -> bool {
        v == s && (self.fast || !self.in_reg(x))
    }

    #[inline]
    fn is_index(&self, x: usize, v: usize) -> bool {
        if self.fast {
            v < self.n
        } else if v < self.n - 5 {
            true
        } else {
            self.in_reg(x) && !(v == self.n - 1 && x != 0)
        }
    }

    #[inline]
    fn take_lo(&mut self, r: usize) -> usize {
        let k = self.regs[r].cur;
        self.regs[r].cur += 1;
        k
    }

    #[inline]
    fn take_hi(&mut self, r: usize) -> usize {
        let k = self.regs[r].cur;
        self.regs[r].cur = k.wrapping_sub(1);
        k
    }
}

/// Visits positions right to left as `(i, is_s, is_lms)`.
pub(crate) fn scan_types(t: &[usize], mut f: impl FnMut(usize, bool, bool)) {
    let n = t.len();
    if n == 1 {
        f(0, true, false);
        return;
    }
    let mut s_next = true;
    for i in (0..n - 1).rev() {
        let s = t[i] < t[i + 1] || (t[i] == t[i + 1] && s_next);
        f(i + 1, s_next, s_next && !s);
        s_next = s;
    }
    f(0, s_next, false);
}

/// Renames `t` (symbols in `0..=sigma`, `sigma <= n`) in place, using `sa`
/// as counting space.
pub fn rename(t: &mut [usize], sa: &mut [usize], sigma: usize, ren: Renaming) -> Result<()> {
    let n = t.len();
    if sigma > n || sa.len() < n {
        return Err(invalid(format!("alphabet bound {sigma} exceeds text length {n}")));
    }
    sa[..sigma].fill(0);
    for &c in &t[..n - 1] {
        sa[c - 1] += 1;
    }
    let mut sum = 1;
    for c in 0..sigma {
        let k = sa[c];
        sa[c] = sum;
        sum += k;
    }
    let mut s_next = true;
    let mut next = 0;
    for i in (0..n - 1).rev() {
        let c = t[i];
        let s = c < next || (c == next && s_next);
        let tail = if c < sigma { sa[c] } else { n } - 1;
        t[i] = if ren == Renaming::HeadTail && !s {
            sa[c - 1]
        } else {
            tail
        };
        next = c;
        s_next = s;
    }
    Ok(())
}

/// Places a suffix at the tail side of bucket `v` (LMS placement and
/// S-induction share this layout: marker at the tail, counter left of it).
#[inline]
fn put_s(sa: &mut [usize], c: &mut Coding, v: usize, j: usize, scan: &mut usize) {
    if let Some(r) = c.reg_of(v) {
        let k = c.take_hi(r);
        sa[k] = j;
        return;
    }
    let sv = sa[v];
    if c.is_sym(v, sv, c.u) {
        sa[v] = j;
        return;
    }
    if c.is_sym(v, sv, c.m) {
        let cv = sa[v - 1];
        if c.is_e(v - 1, cv) {
            if v >= 2 && c.is_free(v - 2, sa[v - 2]) {
                sa[v - 2] = j;
                sa[v - 1] = 1;
            } else {
                sa[v] = j;
                sa[v - 1] = c.e;
            }
        } else {
            let k = cv;
            if v >= k + 2 && c.is_free(v - k - 2, sa[v - k - 2]) {
                sa[v - k - 2] = j;
                sa[v - 1] = k + 1;
            } else {
                sa.copy_within(v - k - 1..v - 1, v - k + 1);
                sa[v - k] = j;
                sa[v - k - 1] = c.e;
                if *scan + k + 1 >= v && *scan + 2 <= v {
                    *scan += 2;
                }
            }
        }
        return;
    }
    let mut x = v;
    while !c.is_e(x, sa[x]) {
        x -= 1;
    }
    sa[x] = j;
}

/// Shifts items of buckets still in counter mode to the tail and clears
/// the marker cells.
fn settle_tails(sa: &mut [usize], c: &Coding) {
    let mut x = sa.len();
    while x > 0 {
        x -= 1;
        if c.is_sym(x, sa[x], c.m) {
            let k = sa[x - 1];
            if c.is_e(x - 1, k) {
                sa[x] = c.e;
                continue;
            }
            sa.copy_within(x - k - 1..x - 1, x - k + 1);
            sa[x - k - 1] = c.e;
            sa[x - k] = c.e;
            x -= k + 1;
        }
    }
}

/// Puts every LMS position at the tail of its bucket, in text order within
/// a bucket. `obs` sees the array after each insertion.
pub fn place_lms_observed(t: &[usize], sa: &mut [usize], c: &mut Coding, mut obs: impl FnMut(&[usize])) {
    sa.fill(c.e);
    c.load_regions(t, false);
    scan_types(t, |i, _, lms| {
        if !lms {
            return;
        }
        let v = t[i];
        if c.in_reg(v) {
            return;
        }
        if c.is_e(v, sa[v]) {
            sa[v] = c.u;
        } else if c.is_sym(v, sa[v], c.u) {
            sa[v] = c.m;
        }
    });
    let mut none = usize::MAX / 2;
    scan_types(t, |i, _, lms| {
        if lms {
            put_s(sa, c, t[i], i, &mut none);
            obs(sa);
        }
    });
    settle_tails(sa, c);
    audit::probe();
}

pub fn place_lms(t: &[usize], sa: &mut [usize], c: &mut Coding) {
    place_lms_observed(t, sa, c, |_| {});
}

#[inline]
fn put_head(sa: &mut [usize], c: &mut Coding, v: usize, j: usize, scan: &mut usize) {
    if let Some(r) = c.reg_of(v) {
        let k = c.take_lo(r);
        sa[k] = j;
        return;
    }
    let n = sa.len();
    let sv = sa[v];
    if c.is_sym(v, sv, c.u) {
        sa[v] = j;
        return;
    }
    if c.is_sym(v, sv, c.m) {
        let cv = sa[v + 1];
        if c.is_e(v + 1, cv) {
            if v + 2 < n && c.is_free(v + 2, sa[v + 2]) {
                sa[v + 2] = j;
                sa[v + 1] = 1;
            } else {
                sa[v] = j;
                sa[v + 1] = c.e;
            }
        } else {
            let k = cv;
            if v + k + 2 < n && c.is_free(v + k + 2, sa[v + k + 2]) {
                sa[v + k + 2] = j;
                sa[v + 1] = k + 1;
            } else {
                sa.copy_within(v + 2..v + k + 2, v);
                sa[v + k] = j;
                sa[v + k + 1] = c.e;
                if *scan >= v + 2 && *scan <= v + k + 1 {
                    *scan -= 2;
                }
            }
        }
        return;
    }
    let mut x = v;
    while !c.is_e(x, sa[x]) {
        x += 1;
    }
    sa[x] = j;
}

/// Scan distance for text prefetches.
pub(crate) const AHEAD: usize = 8;

/// Hints that `t[i - 1]` and `t[i]` will be read soon. `i` may be a marker
/// or a stale cell; prefetches never fault.
#[inline(always)]
pub(crate) fn prefetch(t: &[usize], i: usize) {
    #[cfg(target_arch = "x86_64")]
    unsafe {
        use std::arch::x86_64::{_mm_prefetch, _MM_HINT_T0};
        _mm_prefetch::<_MM_HINT_T0>(t.as_ptr().wrapping_add(i.wrapping_sub(1)) as *const i8);
    }
    #[cfg(not(target_arch = "x86_64"))]
    let _ = (t, i);
}

/// Prefetches `t[p - 1]` for the scan cell `AHEAD` away, and the bucket
/// cell `sa[t[p - 1]]` for the cell half as far.
#[inline(always)]
fn prefetch_scan(t: &[usize], sa: &[usize], near: usize, far: usize) {
    let n = sa.len();
    if far < n {
        prefetch(t, sa[far]);
    }
    if near < n {
        let p = sa[near];
        if p.wrapping_sub(1) < t.len() {
            prefetch(sa, t[p - 1] + 1);
        }
    }
}

fn induce_l_head(t: &[usize], sa: &mut [usize], c: &mut Coding) {
    let n = sa.len();
    c.load_regions(t, true);
    scan_types(t, |i, s, _| {
        if s {
            return;
        }
        let v = t[i];
        if c.in_reg(v) {
            return;
        }
        if c.is_e(v, sa[v]) {
            sa[v] = c.u;
        } else if c.is_sym(v, sa[v], c.u) {
            sa[v] = c.m;
        }
    });
    let mut i = 0;
    while i < n {
        prefetch_scan(t, sa, i + AHEAD / 2, i + AHEAD);
        let p = sa[i];
        if c.is_index(i, p) {
            if p > 0 && t[p - 1] >= t[p] {
                put_head(sa, c, t[p - 1], p - 1, &mut i);
            }
            i += 1;
        } else if c.is_sym(i, p, c.m) {
            i += 2;
        } else {
            i += 1;
        }
    }
    audit::probe();
    let mut x = 0;
    while x < n {
        if c.is_sym(x, sa[x], c.m) {
            let k = sa[x + 1];
            if c.is_e(x + 1, k) {
                sa[x] = c.e;
            } else {
                sa.copy_within(x + 2..x + k + 2, x);
                sa[x + k] = c.e;
                sa[x + k + 1] = c.e;
                x += k;
            }
        }
        x += 1;
    }
}

/// Length of the run of bucket-`v` entries ending at cell `from`.
///
/// A cell whose left neighbour is `M` is a counter of the previous bucket
/// and ends the run.
fn block_len(t: &[usize], sa: &[usize], c: &Coding, from: usize, v: usize) -> usize {
    let mut x = from + 1;
    while x > 0 {
        let q = sa[x - 1];
        if !c.is_index(x - 1, q) || t[q] != v || (x >= 2 && c.is_sym(x - 2, sa[x - 2], c.m)) {
            break;
        }
        x -= 1;
    }
    from + 1 - x
}

/// Init step for tail-only L-induction: records the bucket size minus two
/// in a counter at the tail, shifting the LMS block left to make room.
fn mark_tail(t: &[usize], sa: &mut [usize], c: &Coding, v: usize, is_l: bool) {
    if c.in_reg(v) {
        return;
    }
    if v >= 1 && c.is_sym(v - 1, sa[v - 1], c.m) {
        sa[v] += 1;
        return;
    }
    let sv = sa[v];
    if c.is_sym(v, sv, c.u) {
        sa[v - 1] = c.m;
        sa[v] = 0;
    } else if c.is_sym(v, sv, c.u2) {
        let m = block_len(t, sa, c, v - 1, v);
        sa.copy_within(v - m..v, v - m - 1);
        sa[v - 1] = c.m;
        sa[v] = m;
    } else if is_l {
        if c.is_e(v, sv) {
            sa[v] = c.u;
        } else {
            let m = block_len(t, sa, c, v, v);
            sa.copy_within(v + 1 - m..=v, v - m);
            sa[v] = c.u2;
        }
    }
}

#[inline]
fn put_head_from_tail(t: &[usize], sa: &mut [usize], c: &mut Coding, v: usize, j: usize, scan: &mut usize) {
    if let Some(r) = c.reg_of(v) {
        let k = c.take_lo(r);
        sa[k] = j;
        return;
    }
    if v >= 1 && c.is_sym(v - 1, sa[v - 1], c.m) {
        let w = sa[v];
        let slot = v - w - 1;
        if slot + 1 < v && c.is_e(slot, sa[slot]) {
            sa[slot] = j;
            sa[v] = w - 1;
        } else {
            if slot + 2 <= v {
                sa.copy_within(slot..v - 1, slot + 2);
                if *scan >= slot && *scan + 2 <= v {
                    *scan += 2;
                }
            }
            sa[slot] = j;
            sa[slot + 1] = c.e;
        }
        return;
    }
    let sv = sa[v];
    if c.is_sym(v, sv, c.u) {
        sa[v] = j;
        return;
    }
    if c.is_sym(v, sv, c.u2) {
        let m = block_len(t, sa, c, v - 1, v);
        sa.copy_within(v - m..v, v - m + 1);
        if *scan >= v - m && *scan < v {
            *scan += 1;
        }
        sa[v - m] = j;
        return;
    }
    let mut x = v;
    while !c.is_e(x, sa[x]) {
        x -= 1;
    }
    sa[x] = j;
}

/// L-induction over a tail-only renamed text. L-suffixes go straight to
/// their final cells; the bucket head is derived from the stored size.
fn induce_l_tail(t: &[usize], sa: &mut [usize], c: &mut Coding) {
    let n = sa.len();
    c.load_regions(t, true);
    scan_types(t, |i, s, _| {
        if !s {
            mark_tail(t, sa, c, t[i], true);
        }
    });
    scan_types(t, |i, s, lms| {
        if s && !lms && i + 1 != n {
            mark_tail(t, sa, c, t[i], false);
        }
    });
    let mut i = 0;
    while i < n {
        prefetch_scan(t, sa, i + AHEAD / 2, i + AHEAD);
        let p = sa[i];
        if c.is_index(i, p) {
            if p > 0 && t[p - 1] >= t[p] {
                put_head_from_tail(t, sa, c, t[p - 1], p - 1, &mut i);
            }
            i += 1;
        } else if c.is_sym(i, p, c.m) {
            i += 2;
        } else {
            i += 1;
        }
    }
    audit::probe();
    let mut x = 0;
    while x < n {
        if c.is_sym(x, sa[x], c.m) {
            let v = x + 1;
            let slot = v - sa[v] - 1;
            sa.copy_within(slot..v - 1, slot + 2);
            sa[slot] = c.e;
            sa[slot + 1] = c.e;
            x = v;
        }
        x += 1;
    }
}

/// Clears LMS entries from bucket tails, keeping the sentinel.
fn remove_lms(t: &[usize], sa: &mut [usize], c: &Coding) {
    let n = t.len();
    let tail_only = c.ren == Renaming::TailOnly;
    scan_types(t, |i, _, lms| {
        if !lms || i + 1 == n {
            return;
        }
        let v = t[i];
        if c.is_e(v, sa[v]) {
            return;
        }
        let mut x = v;
        loop {
            let q = sa[x];
            if !c.is_index(x, q) || q + 1 == n || t[q] != v || (tail_only && !is_s_type(t, q)) {
                break;
            }
            sa[x] = c.e;
            if x == 0 {
                break;
            }
            x -= 1;
        }
    });
}

/// Number of S-type suffixes in the bucket of value `cp`, found from the
/// entries ending S-runs (`t[q] < t[q+1]`), which are already in place when
/// the right-to-left scan reaches the bucket.
fn s_count(t: &[usize], sa: &[usize], from: usize, cp: usize, mut cell: impl FnMut(usize, usize) -> Cell) -> usize {
    let n = t.len();
    if cp == t[n - 1] {
        return 1;
    }
    let mut total = 0;
    let mut x = from + 1;
    while x > 0 {
        x -= 1;
        let q = sa[x];
        match cell(x, q) {
            Cell::Empty => continue,
            Cell::Other => break,
            Cell::Index => {}
        }
        if t[q] != cp {
            break;
        }
        if q + 1 < n && t[q] < t[q + 1] {
            let mut k = q;
            while k > 0 && t[k - 1] == cp {
                k -= 1;
            }
            total += q - k + 1;
        }
    }
    total
}

enum Cell {
    Empty,
    Index,
    Other,
}

fn induce_s(t: &[usize], sa: &mut [usize], c: &mut Coding) {
    let n = t.len();
    c.load_regions(t, false);
    scan_types(t, |i, s, _| {
        if !s || i + 1 == n {
            return;
        }
        let v = t[i];
        if c.in_reg(v) {
            return;
        }
        if c.is_e(v, sa[v]) {
            sa[v] = c.u;
        } else if c.is_sym(v, sa[v], c.u) {
            sa[v] = c.m;
        }
    });
    let mut cur = usize::MAX;
    let mut left = 0;
    let mut i = n;
    while i > 0 {
        i -= 1;
        prefetch_scan(t, sa, i.wrapping_sub(AHEAD / 2), i.wrapping_sub(AHEAD));
        let p = sa[i];
        if c.is_index(i, p) {
            let cp = t[p];
            if cp != cur {
                cur = cp;
                left = s_count(t, sa, i, cp, |x, q| {
                    if c.is_e(x, q) {
                        Cell::Empty
                    } else if c.is_index(x, q) {
                        Cell::Index
                    } else {
                        Cell::Other
                    }
                });
            }
            let ps = left > 0;
            if ps {
                left -= 1;
            }
            if p > 0 && (t[p - 1] < cp || (t[p - 1] == cp && ps)) {
                put_s(sa, c, t[p - 1], p - 1, &mut i);
            }
        } else if c.is_sym(i, p, c.m) {
            i -= 1;
        }
    }
    audit::probe();
    settle_tails(sa, c);
}

/// L-induction, removal of LMS entries, then S-induction.
pub fn induce_all(t: &[usize], sa: &mut [usize], c: &mut Coding) {
    induce_l(t, sa, c);
    remove_lms(t, sa, c);
    induce_s(t, sa, c);
}

/// The L-induction scan alone, leaving LMS entries in place.
pub fn induce_l(t: &[usize], sa: &mut [usize], c: &mut Coding) {
    match c.ren {
        Renaming::HeadTail => induce_l_head(t, sa, c),
        Renaming::TailOnly => induce_l_tail(t, sa, c),
    }
}

/// Moves the LMS entries of a fully induced array, in order, to the last
/// `n1` cells and clears the rest. Returns `n1`.
pub fn compact_sorted_lms(t: &[usize], sa: &mut [usize], c: &Coding) -> usize {
    let n = t.len();
    let mut w = n;
    let mut cur = usize::MAX;
    let mut left = 0;
    for i in (0..n).rev() {
        let p = sa[i];
        let cp = t[p];
        if cp != cur {
            cur = cp;
            left = s_count(t, sa, i, cp, |_, _| Cell::Index);
        }
        let ps = left > 0;
        if ps {
            left -= 1;
        }
        sa[i] = c.e;
        if ps && (p + 1 == n || (p > 0 && t[p - 1] > cp)) {
            w -= 1;
            sa[w] = p;
        }
    }
    audit::probe();
    n - w
}

/// Last position of the LMS-substring starting at LMS position `p`.
fn lms_end(t: &[usize], p: usize) -> usize {
    if p + 1 == t.len() {
        return p;
    }
    let mut z = p;
    while t[z] <= t[z + 1] {
        z += 1;
    }
    next_s_type(t, z)
}

fn lms_substrings_equal(t: &[usize], a: usize, b: usize) -> bool {
    let n = t.len();
    if a + 1 == n || b + 1 == n {
        return a == b;
    }
    let (ea, eb) = (lms_end(t, a), lms_end(t, b));
    ea - a == eb - b && t[a..=ea] == t[b..=eb]
}

/// Marks the gap between the reduced text and its suffix array.
pub(crate) const GAP: usize = usize::MAX;

/// Names the sorted LMS-substrings in the last `n1` cells and writes the
/// reduced text into the first `n1` cells. The cells between are set to a
/// non-zero filler. Returns whether all names are distinct.
pub fn construct_reduced(t: &[usize], sa: &mut [usize], n1: usize) -> bool {
    let n = t.len();
    let base = n - n1;
    sa[..base].fill(GAP);
    let mut prev = sa[base];
    let mut rank = 0;
    sa[prev / 2] = 0;
    for k in 1..n1 {
        let p = sa[base + k];
        if !lms_substrings_equal(t, prev, p) {
            rank += 1;
        }
        sa[p / 2] = rank;
        prev = p;
    }
    let mut w = 0;
    for x in 0..base {
        if sa[x] != GAP {
            sa[w] = sa[x];
            w += 1;
        }
    }
    debug_assert_eq!(w, n1);
    sa[n1..base].fill(GAP);
    audit::probe();
    rank + 1 == n1
}

/// Given the reduced suffix array in the last `n1` cells, puts the sorted
/// LMS suffixes at their bucket tails and clears everything else.
pub fn sort_lms_suffixes(t: &[usize], sa: &mut [usize], n1: usize, c: &Coding) {
    let n = t.len();
    let base = n - n1;
    sa.copy_within(base..n, 0);
    let mut k = n;
    scan_types(t, |i, _, lms| {
        if lms {
            k -= 1;
            sa[k] = i;
        }
    });
    for i in 0..n1 {
        sa[i] = sa[base + sa[i]];
    }
    sa[n1..].fill(c.e);
    let mut cur = usize::MAX;
    let mut cursor = 0usize;
    for i in (0..n1).rev() {
        let p = sa[i];
        sa[i] = c.e;
        let v = t[p];
        if v != cur {
            cur = v;
            cursor = v;
        }
        sa[cursor] = p;
        cursor = cursor.wrapping_sub(1);
    }
    audit::probe();
}

/// Undoes a tail-only renaming using the finished suffix array.
pub fn restore_text(t: &mut [usize], sa: &[usize]) {
    let mut prev = usize::MAX;
    let mut b = 0;
    for &p in sa {
        let v = t[p];
        if v != prev {
            if prev != usize::MAX {
                b += 1;
            }
            prev = v;
        }
        t[p] = b;
    }
}

/// Recursion state shared by all levels.
pub(crate) struct Ctx<'a> {
    buf: &'a mut [usize],
    text0: Option<&'a mut [usize]>,
    cur_n: usize,
    t_off: usize,
    depth: usize,
    sigma0: usize,
    ren0: Renaming,
    symbols: SymbolMode,
}

impl Ctx<'_> {
    fn parts(&mut self) -> (&mut [usize], &mut [usize]) {
        let top = self.buf.len();
        if self.depth == 0 {
            (self.text0.as_deref_mut().expect("level-0 text"), &mut *self.buf)
        } else {
            let (a, b) = self.buf.split_at_mut(top - self.cur_n);
            (&mut a[self.t_off..self.t_off + self.cur_n], b)
        }
    }

    fn renaming(&self) -> Renaming {
        if self.depth == 0 {
            self.ren0
        } else {
            Renaming::HeadTail
        }
    }
}

enum Step {
    Done,
    Direct(usize),
    Recurse(usize),
}

fn level(ctx: &mut Ctx) {
    audit::level_enter(ctx.depth);
    match prepare(ctx) {
        Step::Done => {}
        Step::Direct(n1) => finish(ctx, n1),
        Step::Recurse(n1) => {
            descend(ctx, n1);
            level(ctx);
            let n1 = ascend(ctx);
            audit::level_resume(ctx.depth);
            finish(ctx, n1);
        }
    }
}

#[inline(never)]
fn prepare(ctx: &mut Ctx) -> Step {
    let ren = ctx.renaming();
    let symbols = ctx.symbols;
    let sigma0 = ctx.sigma0;
    let depth = ctx.depth;
    let (t, sa) = ctx.parts();
    let n = t.len();
    if n <= 2 {
        sa[0] = n - 1;
        if n == 2 {
            sa[1] = 0;
        }
        return Step::Done;
    }
    let sigma = if depth == 0 {
        sigma0
    } else {
        t.iter().copied().max().unwrap_or(0)
    };
    rename(t, sa, sigma, ren).expect("alphabet checked on entry");
    let mut c = Coding::new(n, symbols, ren);
    place_lms(t, sa, &mut c);
    induce_all(t, sa, &mut c);
    let n1 = compact_sorted_lms(t, sa, &c);
    if construct_reduced(t, sa, n1) {
        for i in 0..n1 {
            let r = sa[i];
            sa[n - n1 + r] = i;
        }
        Step::Direct(n1)
    } else {
        Step::Recurse(n1)
    }
}

fn descend(ctx: &mut Ctx, n1: usize) {
    ctx.t_off = ctx.buf.len() - ctx.cur_n;
    ctx.cur_n = n1;
    ctx.depth += 1;
}

/// Restores the parent's sizes from the layout and returns the child size.
fn ascend(ctx: &mut Ctx) -> usize {
    let top = ctx.buf.len();
    let n1 = ctx.cur_n;
    let n = top - ctx.t_off;
    ctx.depth -= 1;
    ctx.cur_n = n;
    if ctx.depth > 0 {
        // The parent's text ends with its sentinel 0 just before the gap.
        let mut x = top - n - 1;
        while ctx.buf[x] != 0 {
            x -= 1;
        }
        ctx.t_off = x + 1 - n;
    }
    n1
}

#[inline(never)]
fn finish(ctx: &mut Ctx, n1: usize) {
    let ren = ctx.renaming();
    let symbols = ctx.symbols;
    let depth = ctx.depth;
    let (t, sa) = ctx.parts();
    let n = t.len();
    let mut c = Coding::new(n, symbols, ren);
    sort_lms_suffixes(t, sa, n1, &c);
    induce_all(t, sa, &mut c);
    if depth == 0 && ren == Renaming::TailOnly {
        restore_text(t, sa);
    }
}

/// Tuning knobs for [`suffix_sort_int_with`].
#[derive(Debug, Clone, Copy, Default)]
pub struct Options {
    pub symbols: SymbolMode,
}

/// Sorts the suffixes of `text` into `sa`.
///
/// `text` must end with the unique sentinel `0` and use symbols in
/// `1..=sigma` elsewhere, with `sigma <= text.len()`. The text is used as
/// working space. With `restore` it is returned unchanged, which requires
/// every symbol in `0..=sigma` to occur.
pub fn suffix_sort_int(text: &mut [usize], sa: &mut [usize], sigma: usize, restore: bool) -> Result<()> {
    suffix_sort_int_with(text, sa, sigma, restore, Options::default())
}

pub fn suffix_sort_int_with(
    text: &mut [usize],
    sa: &mut [usize],
    sigma: usize,
    restore: bool,
    opts: Options,
) -> Result<()> {
    validate(text, sigma)?;
    let n = text.len();
    if sa.len() != n {
        return Err(invalid(format!("suffix array has {} cells, text has {n}", sa.len())));
    }
    if sigma > n {
        return Err(invalid(format!("alphabet bound {sigma} exceeds text length {n}")));
    }
    if restore {
        sa[..=sigma.min(n - 1)].fill(0);
        for &c in text.iter() {
            sa[c] = 1;
        }
        if let Some(missing) = (0..=sigma).find(|&c| c >= n || sa[c] == 0) {
            return Err(Error::RestoreUnsupported { missing });
        }
    }
    let mut ctx = Ctx {
        buf: sa,
        text0: Some(text),
        cur_n: n,
        t_off: 0,
        depth: 0,
        sigma0: sigma,
        ren0: if restore {
            Renaming::TailOnly
        } else {
            Renaming::HeadTail
        },
        symbols: opts.symbols,
    };
    audit::set_extra_words(std::mem::size_of::<Ctx>() / std::mem::size_of::<usize>());
    level(&mut ctx);
    Ok(())
}

/// Sorts a reduced text held in `buf[..n1]` into `buf[len - n1..]`.
///
/// The reduced text must end with a unique `0`, use values below `n1`, and
/// the cells between must be non-zero.
pub fn solve_reduced(buf: &mut [usize], n1: usize, symbols: SymbolMode) {
    let mut ctx = Ctx {
        buf,
        text0: None,
        cur_n: n1,
        t_off: 0,
        depth: 1,
        sigma0: 0,
        ren0: Renaming::HeadTail,
        symbols,
    };
    level(&mut ctx);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::naive_suffix_array;

    const RUN: [usize; 13] = [2, 1, 1, 3, 3, 1, 1, 3, 3, 1, 2, 1, 0];

    #[test]
    fn renamed_running_example() {
        let mut t = RUN;
        let mut sa = [0; 13];
        rename(&mut t, &mut sa, 3, Renaming::HeadTail).unwrap();
        assert_eq!(t, [7, 6, 6, 9, 9, 6, 6, 9, 9, 6, 7, 1, 0]);
        let mut t = RUN;
        rename(&mut t, &mut sa, 3, Renaming::TailOnly).unwrap();
        assert_eq!(t, [8, 6, 6, 12, 12, 6, 6, 12, 12, 6, 8, 6, 0]);
    }

    #[test]
    fn lms_placement_rows() {
        let mut t = RUN;
        let mut sa = [0; 13];
        rename(&mut t, &mut sa, 3, Renaming::HeadTail).unwrap();
        let mut c = Coding::new(13, SymbolMode::ForceFast, Renaming::HeadTail);
        let (e, m) = (c.empty(), c.marker_m());
        let mut rows = Vec::new();
        place_lms_observed(&t, &mut sa, &mut c, |s| rows.push(s.to_vec()));
        assert_eq!(rows[1], [12, e, e, e, 9, 1, m, e, e, e, e, e, e]);
        assert_eq!(rows[2], [12, e, e, 5, 9, 2, m, e, e, e, e, e, e]);
        assert_eq!(rows[3], [12, e, 1, 5, 9, 3, m, e, e, e, e, e, e]);
        assert_eq!(sa, [12, e, e, e, 1, 5, 9, e, e, e, e, e, e]);
        induce_l(&t, &mut sa, &mut c);
        assert_eq!(sa, [12, 11, e, e, 1, 5, 9, 10, 0, 4, 8, 3, 7]);
        remove_lms(&t, &mut sa, &c);
        induce_s(&t, &mut sa, &mut c);
        assert_eq!(sa, [12, 11, 1, 5, 9, 2, 6, 10, 0, 4, 8, 3, 7]);
        let n1 = compact_sorted_lms(&t, &mut sa, &c);
        assert_eq!(n1, 4);
        assert_eq!(sa[9..], [12, 1, 5, 9]);
        assert!(!construct_reduced(&t, &mut sa, n1));
        assert_eq!(sa[..4], [1, 1, 2, 0]);
    }

    fn check(t: &[usize], sigma: usize, restore: bool, symbols: SymbolMode) {
        let mut tt = t.to_vec();
        let mut sa = vec![0; t.len()];
        suffix_sort_int_with(&mut tt, &mut sa, sigma, restore, Options { symbols }).unwrap();
        assert_eq!(sa, naive_suffix_array(t), "text {t:?} restore {restore} {symbols:?}");
        if restore {
            assert_eq!(tt, t);
        }
    }

    #[test]
    fn running_example_all_modes() {
        for symbols in [SymbolMode::Auto, SymbolMode::ForceFast, SymbolMode::ForceFallback] {
            check(&RUN, 3, false, symbols);
            check(&RUN, 3, true, symbols);
        }
    }

    #[test]
    fn small_exhaustive() {
        for n in 1..=9usize {
            for sig in 1..=3usize.min(n) {
                let total = sig.pow((n - 1) as u32);
                for code in 0..total {
                    let mut t = Vec::with_capacity(n);
                    let mut x = code;
                    for _ in 0..n - 1 {
                        t.push(x % sig + 1);
                        x /= sig;
                    }
                    t.push(0);
                    let effective = (1..=sig).all(|c| t.contains(&c));
                    for symbols in [SymbolMode::ForceFast, SymbolMode::ForceFallback] {
                        check(&t, sig, false, symbols);
                        if effective {
                            check(&t, sig, true, symbols);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn random_texts() {
        let mut x = 99u64;
        for round in 0..300 {
            let n = 2 + round * 7 % 900;
            let sig = 1 + round % 9;
            let mut t: Vec<usize> = (0..n - 1)
                .map(|_| {
                    x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                    (x >> 33) as usize % sig + 1
                })
                .collect();
            t.push(0);
            let effective = (1..=sig).all(|c| t.contains(&c));
            for symbols in [SymbolMode::Auto, SymbolMode::ForceFast, SymbolMode::ForceFallback] {
                check(&t, sig, false, symbols);
                if effective {
                    check(&t, sig, true, symbols);
                }
            }
        }
    }

    #[test]
    fn restore_rejects_gaps() {
        let mut t = vec![1, 3, 1, 0];
        let mut sa = vec![0; 4];
        assert_eq!(
            suffix_sort_int(&mut t, &mut sa, 3, true),
            Err(Error::RestoreUnsupported { missing: 2 })
        );
    }
}
