//! In-place suffix sorting for read-only integer texts with `sigma = O(n)`.
//!
//! The text is only read. Depending on which suffix class is smaller, either
//! the LMS or the LML positions form the reduced problem, which is written
//! into the suffix array and handed to [`crate::ip_int`]. The final pass
//! induces one class into its own region of the suffix array, then the other
//! class into the complementary region, and merges the two regions by first
//! symbol.
//!
//! Each induction keeps its bucket state inside the target region. Bucket
//! tails come from a select-based locator parked in the region's top cells
//! while most of the region is filled; the few suffixes whose final cells the
//! locator occupies are sorted in a second pass that finds bucket tails by
//! binary search instead.

use std::cmp::Ordering;

use crate::audit;
use crate::error::{invalid, Result};
use crate::ip_int::{self, prefetch, SymbolMode, AHEAD, GAP};
use crate::merge;
use crate::select::{self, SelectView};
use crate::text::{compare_suffixes, is_s_type, validate};

/// Inputs shorter than this are sorted by binary insertion.
pub const SMALL_N: usize = 1024;

/// Largest accepted `ceil(sigma / n)`.
pub const MAX_D: usize = 8;

/// Which positions form the reduced problem.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    /// LMS positions; chosen when `n_l <= n_s`.
    Lms,
    /// LML positions; chosen otherwise.
    Lml,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OrientationMode {
    #[default]
    Auto,
    ForceLms,
    ForceLml,
}

/// Tuning and test hooks for [`suffix_sort_readonly_with`].
#[derive(Debug, Clone, Copy)]
pub struct ReadonlyOptions {
    pub orientation: OrientationMode,
    /// Reserved-value coding used by the recursive integer sorter.
    pub symbols: SymbolMode,
    /// Inputs shorter than this take the insertion-sort path.
    pub small_n: usize,
}

impl Default for ReadonlyOptions {
    fn default() -> Self {
        ReadonlyOptions {
            orientation: OrientationMode::Auto,
            symbols: SymbolMode::Auto,
            small_n: SMALL_N,
        }
    }
}

/// Sizes and decisions of one run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReadonlyPlan {
    pub orientation: Orientation,
    /// Smallest integer with `sigma <= d * n`.
    pub d: usize,
    pub n_l: usize,
    pub n_s: usize,
    /// Length of the reduced problem.
    pub n1: usize,
    /// Words taken by the S-side bucket locator of the final pass (0 if the
    /// pass ran without one).
    pub c_p: usize,
    /// First symbol of the smallest S-suffix sorted while the locator was
    /// present.
    pub boundary_char: Option<usize>,
    /// Cells of that symbol's bucket left for the second pass.
    pub boundary_gap: usize,
    /// Whether the insertion-sort path was taken.
    pub small: bool,
}

/// Counts the suffix classes and picks the orientation.
pub fn choose_orientation(text: &[usize], sigma: usize) -> Result<ReadonlyPlan> {
    let n = text.len();
    let d = sigma.div_ceil(n.max(1)).max(1);
    if d > MAX_D {
        return Err(invalid(format!(
            "alphabet bound {sigma} exceeds {MAX_D} times the text length {n}"
        )));
    }
    let (mut n_s, mut lms, mut lml) = (0, 0, 0);
    ip_int::scan_types(text, |i, s, _| {
        n_s += s as usize;
        if is_reduced(text, i, s, false) {
            lms += 1;
        }
        if is_reduced(text, i, s, true) {
            lml += 1;
        }
    });
    let n_l = n - n_s;
    let orientation = if n_l <= n_s || !lml_fits(n, lml) {
        Orientation::Lms
    } else {
        Orientation::Lml
    };
    let n1 = if orientation == Orientation::Lms { lms } else { lml };
    Ok(ReadonlyPlan {
        orientation,
        d,
        n_l,
        n_s,
        n1,
        c_p: 0,
        boundary_char: None,
        boundary_gap: 0,
        small: false,
    })
}

/// The LML reduced text carries an extra closing symbol and must still fit
/// in half of the suffix array.
fn lml_fits(n: usize, n1: usize) -> bool {
    2 * (n1 + 1) <= n
}

#[inline]
fn is_reduced(t: &[usize], i: usize, s: bool, lml: bool) -> bool {
    if i == 0 {
        return false;
    }
    if lml {
        !s && t[i - 1] < t[i]
    } else {
        s && t[i - 1] > t[i]
    }
}

fn count_reduced(t: &[usize], lml: bool) -> usize {
    let mut k = 0;
    ip_int::scan_types(t, |i, s, _| k += is_reduced(t, i, s, lml) as usize);
    k
}

/// Sorts the reduced positions (LMS, or LML with `lml`) by their symbol with
/// `2d` counting-sort passes. LMS positions end up in `sa[n-n1..]`, LML
/// positions in `sa[..n1]`. Returns `n1`.
pub fn sort_reduced_chars(t: &[usize], sa: &mut [usize], sigma: usize, d: usize, lml: bool) -> usize {
    let n = t.len();
    let n1 = count_reduced(t, lml);
    let mut w = if lml { 0 } else { n - n1 };
    if !lml && n > 1 {
        sa[w] = n - 1;
        w += 1;
    }
    let parts = 2 * d;
    let width = sigma.div_ceil(parts).max(1);
    let mut lo = 1;
    while lo <= sigma {
        let hi = (lo + width - 1).min(sigma);
        let k = hi - lo + 1;
        let cnt = if lml { n - k } else { 0 };
        sa[cnt..cnt + k].fill(0);
        ip_int::scan_types(t, |i, s, _| {
            if is_reduced(t, i, s, lml) && (lo..=hi).contains(&t[i]) {
                sa[cnt + t[i] - lo] += 1;
            }
        });
        let mut sum = w;
        for c in cnt..cnt + k {
            let x = sa[c];
            sa[c] = sum;
            sum += x;
        }
        ip_int::scan_types(t, |i, s, _| {
            if is_reduced(t, i, s, lml) && (lo..=hi).contains(&t[i]) {
                let c = cnt + t[i] - lo;
                sa[sa[c]] = i;
                sa[c] += 1;
            }
        });
        w = sum;
        lo = hi + 1;
    }
    audit::probe();
    n1
}

/// Builds a bucket locator for one suffix class into `arena`.
///
/// Targets are S-type positions keyed by their symbol, or with `l_side`
/// L-type positions keyed by `sigma - symbol`. The front of the arena is used
/// for counting; the structure is parked at the end. Returns the words it
/// occupies, which are `arena[len - words..]`.
pub fn build_locator(t: &[usize], arena: &mut [usize], sigma: usize, d: usize, l_side: bool) -> Result<usize> {
    let parts = 4 * d;
    let w4 = (sigma + 1).div_ceil(parts);
    let len = arena.len();
    let dir = 2 * parts + 2;
    if len < dir + w4 {
        return Err(invalid(format!("arena of {len} words cannot hold a locator")));
    }
    let mut end = len - dir;
    let mut base = 0;
    for p in 0..parts {
        let lo = p * w4;
        let slot = len - dir + 2 * p;
        if lo > sigma {
            arena[slot] = 0;
            arena[slot + 1] = base;
            continue;
        }
        let width = w4.min(sigma + 1 - lo);
        arena[..width].fill(1);
        ip_int::scan_types(t, |i, s, _| {
            if s != l_side {
                let x = if l_side { sigma - t[i] } else { t[i] };
                if x >= lo && x < lo + width {
                    arena[x - lo] += 1;
                }
            }
        });
        let mut sum = 0;
        for c in arena[..width].iter_mut() {
            sum += *c;
            *c = sum - 1;
        }
        let universe = sum - 1;
        let (cnt, rest) = arena.split_at_mut(width);
        let need = select::words_needed(universe, width, |i| cnt[i])?;
        if end < width + need {
            return Err(invalid("locator does not fit its arena"));
        }
        select::build_into(&mut rest[end - need - width..end - width], universe, width, |i| cnt[i])?;
        end -= need;
        arena[slot] = len - end;
        arena[slot + 1] = base;
        base += sum - width;
    }
    arena[len - 2] = w4;
    arena[len - 1] = parts;
    audit::probe();
    Ok(len - end)
}

/// Read access to a locator built by [`build_locator`].
#[derive(Clone, Copy)]
pub struct BucketLocator<'a> {
    w: &'a [usize],
}

impl<'a> BucketLocator<'a> {
    /// Wraps exactly the words of a built locator.
    pub fn new(words: &'a [usize]) -> Self {
        BucketLocator { w: words }
    }

    #[inline]
    fn part(&self, x: usize) -> (SelectView<'a>, usize, usize) {
        let len = self.w.len();
        let (w4, parts) = (self.w[len - 2], self.w[len - 1]);
        let p = x / w4;
        let slot = len - 2 - 2 * parts + 2 * p;
        let view = SelectView::new(&self.w[len - self.w[slot]..]);
        (view, self.w[slot + 1], x - p * w4)
    }

    /// Number of targets with key at most `x`.
    #[inline]
    pub fn count_le(&self, x: usize) -> usize {
        let (v, base, i) = self.part(x);
        base + v.select_unchecked(i) - i
    }

    /// Number of targets with key below `x`.
    #[inline]
    pub fn count_lt(&self, x: usize) -> usize {
        let (v, base, i) = self.part(x);
        if i == 0 {
            base
        } else {
            base + v.select_unchecked(i - 1) - (i - 1)
        }
    }

    /// Last cell of bucket `x` within the class region. The bucket must be
    /// non-empty.
    #[inline]
    pub fn bucket_tail(&self, x: usize) -> usize {
        self.count_le(x) - 1
    }
}

// Reserved cell values. Suffix indices stay below `MAX_LEN`, far under these.
const FREE: usize = usize::MAX;
const BH: usize = usize::MAX - 1;
const BT: usize = usize::MAX - 2;
const E: usize = usize::MAX - 3;
const R1: usize = usize::MAX - 4;
const R2: usize = usize::MAX - 5;
const A20: usize = usize::MAX - 6;
const A21: usize = usize::MAX - 7;
const A30: usize = usize::MAX - 8;
const A31: usize = usize::MAX - 9;
const A32: usize = usize::MAX - 10;
const NONE: usize = usize::MAX;

/// What one induction pass did with its locator.
#[derive(Debug, Clone, Copy, Default)]
struct PassInfo {
    c_p: usize,
    ch: Option<usize>,
    gap: usize,
}

/// One induction of a suffix class (the target) from a sorted source list.
///
/// Cells of the target region are addressed by rank `q` in the scan's sort
/// order. With `M = false` targets are S-suffixes keyed by their symbol and
/// the region is filled from the right; with `M = true` targets are
/// L-suffixes keyed by `sigma - symbol`, so the same code fills the region
/// from the left.
struct Induce<'a, const M: bool> {
    t: &'a [usize],
    sa: &'a mut [usize],
    n: usize,
    sigma: usize,
    tb: usize,
    len: usize,
    src_lo: usize,
    src_len: usize,
    c_p: usize,
    loc_lo: usize,
    ch: usize,
    top_ch: usize,
    ch_seen: usize,
    first: bool,
    stateful_hi: usize,
    cur_key: usize,
    cur_head: usize,
    cur_rf: usize,
}

impl<const M: bool> Induce<'_, M> {
    #[inline(always)]
    fn key(&self, j: usize) -> usize {
        if M {
            self.sigma - self.t[j]
        } else {
            self.t[j]
        }
    }

    #[inline(always)]
    fn at(&self, q: usize) -> usize {
        if M {
            self.tb + self.len - 1 - q
        } else {
            self.tb + q
        }
    }

    #[inline(always)]
    fn get(&self, q: usize) -> usize {
        self.sa[self.at(q)]
    }

    #[inline(always)]
    fn set(&mut self, q: usize, v: usize) {
        let a = self.at(q);
        self.sa[a] = v;
    }

    #[inline(always)]
    fn src(&self, k: usize) -> usize {
        if M {
            self.sa[self.src_lo + k]
        } else {
            self.sa[self.src_lo + self.src_len - 1 - k]
        }
    }

    /// Moves ranks `lo..hi` to start at `to`.
    fn copy_rel(&mut self, lo: usize, hi: usize, to: usize) {
        if hi <= lo {
            return;
        }
        if M {
            let end = self.tb + self.len;
            self.sa.copy_within(end - hi..end - lo, end - to - (hi - lo));
        } else {
            self.sa.copy_within(self.tb + lo..self.tb + hi, self.tb + to);
        }
    }

    /// Absolute range of ranks `0..k`.
    fn abs_prefix(&self, k: usize) -> std::ops::Range<usize> {
        if M {
            self.tb + self.len - k..self.tb + self.len
        } else {
            self.tb..self.tb + k
        }
    }

    #[inline]
    fn is_target(&self, s: bool) -> bool {
        s != M
    }

    fn locator(&self) -> BucketLocator<'_> {
        BucketLocator::new(&self.sa[self.loc_lo..self.loc_lo + self.c_p])
    }

    fn run(&mut self, c_p: usize) -> PassInfo {
        let mut info = PassInfo::default();
        if c_p > 0 {
            self.c_p = c_p;
            self.loc_lo = if M { self.tb } else { self.tb + self.len - c_p };
            self.boundary();
            info = PassInfo {
                c_p,
                ch: Some(self.ch),
                gap: self.ch_gap(),
            };
            self.first_pass();
        } else {
            self.c_p = self.len;
            self.ch = NONE;
            self.top_ch = 0;
        }
        self.second_pass();
        info
    }

    /// Finds the symbol of the target whose final rank is `c_p`.
    fn boundary(&mut self) {
        let c_p = self.c_p;
        let mut ch = NONE;
        {
            let loc = self.locator();
            let t = self.t;
            ip_int::scan_types(t, |i, s, _| {
                if s != M {
                    let x = if M { self.sigma - t[i] } else { t[i] };
                    if x < ch && loc.count_le(x) > c_p {
                        ch = x;
                    }
                }
            });
        }
        self.ch = ch;
        self.top_ch = self.locator().count_le(ch) - c_p;
    }

    fn ch_gap(&self) -> usize {
        self.c_p - self.locator().count_lt(self.ch)
    }

    fn set_markers(&mut self, head: usize, tail: usize) {
        match tail - head + 1 {
            1 => {}
            2 => self.set(tail, A20),
            3 => self.set(tail, A30),
            _ => {
                self.set(head, BH);
                self.set(tail - 1, E);
                self.set(tail, BT);
            }
        }
    }

    /// Sorts the targets ranked `c_p` and above into ranks `0..len-c_p`.
    fn first_pass(&mut self) {
        let win = self.len - self.c_p;
        for q in 0..win {
            self.set(q, FREE);
        }
        let mut x = self.ch + 1;
        while x <= self.sigma {
            let (lt, le) = {
                let loc = self.locator();
                (loc.count_lt(x), loc.count_le(x))
            };
            if le > lt {
                self.set_markers(lt - self.c_p, le - 1 - self.c_p);
            }
            x += 1;
        }
        self.first = true;
        self.ch_seen = 0;
        self.stateful_hi = win;
        self.scan(win);
        audit::probe();
    }

    /// Moves the first pass results up by `c_p`, gathers the smallest `c_p`
    /// targets below them and finishes the induction with binary search.
    fn second_pass(&mut self) {
        let c_p = self.c_p;
        if c_p < self.len {
            self.copy_rel(0, self.len - c_p, c_p);
        }
        let t = self.t;
        let ch = self.ch;
        let mut w = 0;
        for pass in 0..2 {
            ip_int::scan_types(t, |i, s, _| {
                if w < c_p && self.is_target(s) {
                    let x = self.key(i);
                    if (pass == 0 && x < ch) || (pass == 1 && x == ch) {
                        self.set(w, i);
                        w += 1;
                    }
                }
            });
        }
        debug_assert_eq!(w, c_p);
        let r = self.abs_prefix(c_p);
        merge::mergesort_inplace(&mut self.sa[r], |a, b| t[*a] < t[*b]);
        let mut head = 0;
        while head < c_p {
            let x = self.key(self.get(head));
            let mut tail = head;
            while tail + 1 < c_p && self.key(self.get(tail + 1)) == x {
                tail += 1;
            }
            self.set_markers(head, tail);
            head = tail + 1;
        }
        self.first = false;
        self.ch_seen = 0;
        self.stateful_hi = c_p;
        self.scan(self.len);
        audit::probe();
    }

    fn scan(&mut self, top: usize) {
        let mut q = top;
        let mut k = 0;
        self.cur_key = NONE;
        self.cur_head = self.stateful_hi;
        loop {
            if k + AHEAD < self.src_len {
                prefetch(self.t, self.src(k + AHEAD));
            }
            if q > AHEAD {
                prefetch(self.t, self.get(q - 1 - AHEAD));
            }
            let ks = if k < self.src_len { self.key(self.src(k)) } else { NONE };
            let mut take = false;
            if q > 0 {
                let c = q - 1;
                let kt = if c >= self.stateful_hi {
                    Some(self.key(self.get(c)))
                } else if c >= self.cur_head {
                    Some(self.cur_key)
                } else {
                    self.peek(c)
                };
                take = matches!(kt, Some(kt) if ks == NONE || kt >= ks);
            }
            if take {
                q -= 1;
                if q < self.stateful_hi && q < self.cur_head {
                    self.enter(q);
                }
                let e = self.get(q);
                self.induced(e, true);
                if self.first && q == 0 {
                    break;
                }
            } else if k < self.src_len {
                let e = self.src(k);
                k += 1;
                self.induced(e, false);
            } else {
                debug_assert!(q == 0, "target cell {q} never filled");
                break;
            }
        }
    }

    /// Key of the bucket whose last cell is `c`, if it holds an entry yet.
    #[inline]
    fn peek(&self, c: usize) -> Option<usize> {
        let v = self.get(c);
        let w = match v {
            BT => self.get(c - 2),
            A20 | A21 | A30 | A31 | A32 | R2 => self.get(c - 1),
            _ => v,
        };
        (w < self.n).then(|| self.key(w))
    }

    /// Starts scanning the bucket whose last cell is `q`: entries placed so
    /// far are moved to their final cells and the free cells below them are
    /// tracked by a local cursor.
    fn enter(&mut self, q: usize) {
        let v = self.get(q);
        let (x, head, rf) = match v {
            BT => {
                let k = self.get(q - 1);
                debug_assert!(k != E);
                let x = self.key(self.get(q - 2));
                let mut h = q - 2 - k;
                while self.get(h) != BH {
                    h -= 1;
                }
                self.copy_rel(q - 1 - k, q - 1, q + 1 - k);
                (x, h, q - k)
            }
            R2 => {
                let x = self.key(self.get(q - 1));
                let mut h = q - 1;
                while self.get(h) != BH {
                    h -= 1;
                }
                self.copy_rel(h + 1, q, h + 2);
                (x, h, h + 1)
            }
            A21 => {
                let s = self.get(q - 1);
                self.set(q, s);
                (self.key(s), q - 1, q - 1)
            }
            A31 => {
                let s = self.get(q - 1);
                self.set(q, s);
                (self.key(s), q - 2, q - 1)
            }
            A32 => {
                let x = self.key(self.get(q - 1));
                self.copy_rel(q - 2, q, q - 1);
                (x, q - 2, q - 2)
            }
            _ => {
                debug_assert!(v < self.n);
                let x = self.key(v);
                if self.first && x == self.ch {
                    (x, 0, NONE)
                } else {
                    let mut p = q;
                    while p > 0 {
                        let u = self.get(p - 1);
                        if u >= self.n || self.key(u) != x {
                            break;
                        }
                        p -= 1;
                    }
                    if p > 0 && self.get(p - 1) == R1 {
                        (x, p - 1, p - 1)
                    } else {
                        (x, p, p.wrapping_sub(1))
                    }
                }
            }
        };
        self.cur_key = x;
        self.cur_head = head;
        self.cur_rf = rf;
        audit::probe();
    }

    #[inline(always)]
    fn induced(&mut self, e: usize, from_target: bool) {
        if e == 0 {
            return;
        }
        let j = e - 1;
        let (kj, ke) = (self.key(j), self.key(e));
        if kj > ke || (kj == ke && !from_target) {
            return;
        }
        self.place(j, kj);
    }

    #[inline(always)]
    fn place(&mut self, j: usize, x: usize) {
        if self.first {
            if x < self.ch {
                return;
            }
            if x == self.ch {
                if self.ch_seen < self.top_ch {
                    self.set(self.top_ch - 1 - self.ch_seen, j);
                    self.ch_seen += 1;
                }
                return;
            }
            if x == self.cur_key {
                self.push_local(j);
                return;
            }
            let tail = self.locator().bucket_tail(x) - self.c_p;
            self.put(tail, j, x);
        } else {
            if self.ch != NONE && x > self.ch {
                return;
            }
            if x == self.ch && self.ch_seen < self.top_ch {
                self.ch_seen += 1;
                return;
            }
            if x == self.cur_key {
                self.push_local(j);
                return;
            }
            let tail = if x == self.ch {
                self.c_p - 1
            } else {
                self.bottom_tail(x)
            };
            self.put(tail, j, x);
        }
    }

    #[inline]
    fn push_local(&mut self, j: usize) {
        debug_assert!(self.cur_rf != NONE && self.cur_rf >= self.cur_head);
        self.set(self.cur_rf, j);
        self.cur_rf = self.cur_rf.wrapping_sub(1);
    }

    /// Places `j` into the bucket of key `x` whose last cell is `q`, using
    /// the reserved values and the counter next to the tail.
    #[inline(never)]
    fn put(&mut self, q: usize, j: usize, x: usize) {
        match self.get(q) {
            FREE => self.set(q, j),
            A20 => {
                self.set(q - 1, j);
                self.set(q, A21);
            }
            A21 => {
                let s = self.get(q - 1);
                self.set(q, s);
                self.set(q - 1, j);
            }
            A30 => {
                self.set(q - 1, j);
                self.set(q, A31);
            }
            A31 => {
                self.set(q - 2, j);
                self.set(q, A32);
            }
            A32 => {
                self.copy_rel(q - 2, q, q - 1);
                self.set(q - 2, j);
            }
            BT => {
                let c = self.get(q - 1);
                let k = if c == E { 0 } else { c };
                let slot = q - 2 - k;
                if self.get(slot) == BH {
                    self.copy_rel(slot + 1, q - 1, slot + 2);
                    self.set(slot + 1, j);
                    self.set(q, R2);
                } else {
                    self.set(slot, j);
                    self.set(q - 1, k + 1);
                }
            }
            R2 => {
                let mut h = q - 1;
                while self.get(h) != BH {
                    h -= 1;
                }
                self.copy_rel(h + 1, q, h + 2);
                self.set(h + 1, j);
                self.set(h, R1);
            }
            _ => {
                // Either the last free cell, marked R1 at the bucket head, or
                // a bucket of one cell.
                let mut p = q;
                while p > 0 {
                    let u = self.get(p - 1);
                    if u >= self.n || self.key(u) != x {
                        break;
                    }
                    p -= 1;
                }
                if p > 0 && self.get(p - 1) == R1 {
                    self.set(p - 1, j);
                } else {
                    self.set(q, j);
                }
            }
        }
        audit::probe();
    }

    /// Whether bottom cell `q` holds a suffix index (not a counter).
    #[inline]
    fn genuine(&self, q: usize) -> bool {
        self.get(q) < self.n && !(q + 1 < self.c_p && self.get(q + 1) == BT)
    }

    /// Last cell of bucket `x` among the bottom `c_p` ranks, by binary search.
    fn bottom_tail(&self, x: usize) -> usize {
        let c_p = self.c_p;
        let (mut lo, mut hi) = (0, c_p);
        let mut best = NONE;
        while lo < hi {
            let mid = lo + (hi - lo) / 2;
            let mut y = mid;
            while y < hi && !self.genuine(y) {
                y += 1;
            }
            if y == hi {
                hi = mid;
            } else if self.key(self.get(y)) <= x {
                best = y;
                lo = y + 1;
            } else {
                hi = mid;
            }
        }
        debug_assert!(best != NONE && self.key(self.get(best)) == x);
        let g = best;
        audit::probe();
        if g + 1 >= c_p {
            return g;
        }
        match self.get(g + 1) {
            BT | R2 | A20 | A21 | A30 | A31 | A32 => g + 1,
            E => g + 2,
            v if v < self.n && g + 2 < c_p && self.get(g + 2) == BT => g + 2,
            _ => g,
        }
    }
}

fn induce<const M: bool>(
    t: &[usize],
    sa: &mut [usize],
    sigma: usize,
    d: usize,
    target: (usize, usize),
    src: (usize, usize),
    arena: (usize, usize),
) -> PassInfo {
    if target.1 == 0 {
        return PassInfo::default();
    }
    let c_p = place_locator::<M>(t, sa, sigma, d, target, arena);
    run_induce::<M>(t, sa, sigma, target, src, c_p)
}

/// Builds the locator for the target region in `arena` and moves it to the
/// region's top cells. Returns its size, or 0 if it does not fit.
#[inline(never)]
fn place_locator<const M: bool>(
    t: &[usize],
    sa: &mut [usize],
    sigma: usize,
    d: usize,
    target: (usize, usize),
    arena: (usize, usize),
) -> usize {
    let (tb, len) = target;
    let (a_lo, a_hi) = arena;
    match build_locator(t, &mut sa[a_lo..a_hi], sigma, d, M) {
        Ok(c_p) if c_p < len => {
            let lo = if M { tb } else { tb + len - c_p };
            sa.copy_within(a_hi - c_p..a_hi, lo);
            c_p
        }
        _ => 0,
    }
}

#[inline(never)]
fn run_induce<const M: bool>(
    t: &[usize],
    sa: &mut [usize],
    sigma: usize,
    target: (usize, usize),
    src: (usize, usize),
    c_p: usize,
) -> PassInfo {
    let mut ind = Induce::<M> {
        t,
        n: t.len(),
        sa,
        sigma,
        tb: target.0,
        len: target.1,
        src_lo: src.0,
        src_len: src.1,
        c_p: 0,
        loc_lo: 0,
        ch: NONE,
        top_ch: 0,
        ch_seen: 0,
        first: false,
        stateful_hi: 0,
        cur_key: NONE,
        cur_head: 0,
        cur_rf: NONE,
    };
    ind.run(c_p)
}

/// Sorts by binary insertion with direct suffix comparisons.
fn small_sort(t: &[usize], sa: &mut [usize]) {
    let n = t.len();
    for i in 0..n {
        let p = n - 1 - i;
        let (mut lo, mut hi) = (0, i);
        while lo < hi {
            let mid = lo + (hi - lo) / 2;
            if compare_suffixes(t, sa[mid], p) == Ordering::Less {
                lo = mid + 1;
            } else {
                hi = mid;
            }
        }
        sa.copy_within(lo..i, lo + 1);
        sa[lo] = p;
    }
    audit::probe();
}

/// Last position of the LML-substring starting at LML position `p`.
fn lml_end(t: &[usize], p: usize) -> usize {
    let n = t.len();
    for z in p + 1..n {
        if z == n - 1 {
            return z;
        }
        if t[z - 1] < t[z] && !is_s_type(t, z) {
            return z;
        }
    }
    n - 1
}

fn lml_substrings_equal(t: &[usize], a: usize, b: usize) -> bool {
    let n = t.len();
    let (ea, eb) = (lml_end(t, a), lml_end(t, b));
    if ea == n - 1 || eb == n - 1 {
        return a == b;
    }
    ea - a == eb - b && t[a..=ea] == t[b..=eb]
}

/// Names the sorted LML-substrings in `sa[..n1]` and writes the reduced text,
/// shifted up by one and closed by a `0`, into `sa[..=n1]`.
fn construct_reduced_lml(t: &[usize], sa: &mut [usize], n1: usize) -> bool {
    let n = t.len();
    sa[n1..].fill(GAP);
    let mut prev = sa[0];
    let mut rank = 0;
    sa[n1 + prev / 2] = 0;
    for k in 1..n1 {
        let p = sa[k];
        if !lml_substrings_equal(t, prev, p) {
            rank += 1;
        }
        sa[n1 + p / 2] = rank;
        prev = p;
    }
    let mut w = 0;
    for x in n1..n {
        if sa[x] != GAP {
            sa[w] = sa[x] + 1;
            w += 1;
        }
    }
    debug_assert_eq!(w, n1);
    sa[n1] = 0;
    sa[n1 + 1..].fill(GAP);
    audit::probe();
    rank + 1 == n1
}

/// Sorts the suffixes of the read-only `text` into `sa`.
///
/// `text` ends with the unique sentinel `0` and uses symbols in `1..=sigma`
/// elsewhere, with `sigma <= MAX_D * n` for inputs longer than [`SMALL_N`].
pub fn suffix_sort_readonly(text: &[usize], sa: &mut [usize], sigma: usize) -> Result<()> {
    suffix_sort_readonly_with(text, sa, sigma, ReadonlyOptions::default()).map(|_| ())
}

pub fn suffix_sort_readonly_with(
    text: &[usize],
    sa: &mut [usize],
    sigma: usize,
    opts: ReadonlyOptions,
) -> Result<ReadonlyPlan> {
    validate(text, sigma)?;
    let n = text.len();
    if sa.len() != n {
        return Err(length_mismatch(sa.len(), n));
    }
    audit::set_extra_words(std::mem::size_of::<ip_int::Ctx>() / std::mem::size_of::<usize>());
    if n < opts.small_n.max(3) {
        return Ok(sort_small(text, sa, sigma));
    }
    sort_large(text, sa, sigma, opts)
}

#[cold]
#[inline(never)]
fn length_mismatch(got: usize, n: usize) -> crate::Error {
    invalid(format!("suffix array has {got} cells, text has {n}"))
}

#[inline(never)]
fn sort_small(t: &[usize], sa: &mut [usize], sigma: usize) -> ReadonlyPlan {
    let n = t.len();
    small_sort(t, sa);
    let mut plan = choose_orientation(t, sigma.min(n)).expect("sigma clamped to n");
    plan.d = sigma.div_ceil(n).max(1);
    plan.small = true;
    plan
}

#[inline(never)]
fn sort_large(text: &[usize], sa: &mut [usize], sigma: usize, opts: ReadonlyOptions) -> Result<ReadonlyPlan> {
    let n = text.len();
    let mut plan = choose_orientation(text, sigma)?;
    plan.orientation = match opts.orientation {
        OrientationMode::Auto => plan.orientation,
        OrientationMode::ForceLms => Orientation::Lms,
        OrientationMode::ForceLml if lml_fits(n, count_reduced(text, true)) => Orientation::Lml,
        OrientationMode::ForceLml => Orientation::Lms,
    };
    let lml = plan.orientation == Orientation::Lml;
    plan.n1 = sort_reduced_chars(text, sa, sigma, plan.d, lml);
    sort_reduced_substrings(text, sa, sigma, &plan);
    solve_and_map(text, sa, plan.n1, lml, opts.symbols);
    let info = final_induction(text, sa, sigma, &plan);
    plan.c_p = info.c_p;
    plan.boundary_char = info.ch;
    plan.boundary_gap = info.gap;
    merge_classes(text, sa, plan.n_l);
    Ok(plan)
}

/// Merges the sorted L-suffixes in the front with the S-suffixes behind
/// them, by first symbol.
#[inline(never)]
fn merge_classes(text: &[usize], sa: &mut [usize], n_l: usize) {
    merge::stable_merge(sa, n_l, |a, b| text[*a] < text[*b]);
    audit::probe();
}

/// Induces both classes from the reduced positions sorted by symbol and
/// gathers the sorted reduced substrings: LMS into the tail, LML into the
/// front.
fn sort_reduced_substrings(t: &[usize], sa: &mut [usize], sigma: usize, plan: &ReadonlyPlan) {
    let (n, d, n_l, n_s, n1) = (t.len(), plan.d, plan.n_l, plan.n_s, plan.n1);
    if plan.orientation == Orientation::Lml {
        induce::<false>(t, sa, sigma, d, (n_l, n_s), (0, n1), (n1, n));
        induce::<true>(t, sa, sigma, d, (0, n_l), (n_l, n_s), (0, n_l));
        let mut w = 0;
        for i in 0..n_l {
            let p = sa[i];
            if p > 0 && t[p - 1] < t[p] {
                sa[w] = p;
                w += 1;
            }
        }
        debug_assert_eq!(w, n1);
    } else {
        induce::<true>(t, sa, sigma, d, (0, n_l), (n - n1, n1), (0, n - n1));
        induce::<false>(t, sa, sigma, d, (n_l, n_s), (0, n_l), (n_l, n));
        let mut w = n;
        for i in (n_l..n).rev() {
            let p = sa[i];
            if p + 1 == n || (p > 0 && t[p - 1] > t[p]) {
                w -= 1;
                sa[w] = p;
            }
        }
        debug_assert_eq!(n - w, n1);
    }
}

/// Solves the reduced problem and leaves the reduced positions in suffix
/// order in `sa[..n1]`.
#[inline(never)]
fn solve_and_map(t: &[usize], sa: &mut [usize], n1: usize, lml: bool, symbols: SymbolMode) {
    let n = t.len();
    let m = if lml { n1 + 1 } else { n1 };
    if lml && n1 == 0 {
        return;
    }
    let unique = if lml {
        construct_reduced_lml(t, sa, n1)
    } else {
        ip_int::construct_reduced(t, sa, n1)
    };
    if unique {
        for i in 0..m {
            let r = sa[i];
            sa[n - m + r] = i;
        }
    } else {
        ip_int::solve_reduced(sa, m, symbols);
        audit::level_resume(0);
    }
    debug_assert!(!lml || sa[n - m] == n1);
    sa.copy_within(n - n1..n, 0);
    let mut k = n;
    ip_int::scan_types(t, |i, s, _| {
        if is_reduced(t, i, s, lml) {
            k -= 1;
            sa[k] = i;
        }
    });
    for i in 0..n1 {
        sa[i] = sa[n - n1 + sa[i]];
    }
}

fn final_induction(t: &[usize], sa: &mut [usize], sigma: usize, plan: &ReadonlyPlan) -> PassInfo {
    let (n, d, n_l, n_s, n1) = (t.len(), plan.d, plan.n_l, plan.n_s, plan.n1);
    if plan.orientation == Orientation::Lml {
        let info = induce::<false>(t, sa, sigma, d, (n_l, n_s), (0, n1), (n1, n));
        induce::<true>(t, sa, sigma, d, (0, n_l), (n_l, n_s), (0, n_l));
        info
    } else {
        sa.copy_within(0..n1, n - n1);
        induce::<true>(t, sa, sigma, d, (0, n_l), (n - n1, n1), (0, n - n1));
        induce::<false>(t, sa, sigma, d, (n_l, n_s), (0, n_l), (n_l, n))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::naive_suffix_array;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    const RUN: [usize; 13] = [2, 1, 1, 3, 3, 1, 1, 3, 3, 1, 2, 1, 0];

    fn full(orientation: OrientationMode, symbols: SymbolMode) -> ReadonlyOptions {
        ReadonlyOptions {
            orientation,
            symbols,
            small_n: 0,
        }
    }

    fn check(t: &[usize], sigma: usize, opts: ReadonlyOptions) -> ReadonlyPlan {
        let mut sa = vec![0; t.len()];
        let plan = suffix_sort_readonly_with(t, &mut sa, sigma, opts).unwrap();
        assert_eq!(sa, naive_suffix_array(t), "t={t:?} opts={opts:?}");
        plan
    }

    #[test]
    fn running_example_both_orientations() {
        let p = check(&RUN, 3, full(OrientationMode::Auto, SymbolMode::Auto));
        assert_eq!(p.orientation, Orientation::Lml);
        assert_eq!((p.n_l, p.n_s, p.n1), (7, 6, 3));
        let p = check(&RUN, 3, full(OrientationMode::ForceLms, SymbolMode::Auto));
        assert_eq!((p.orientation, p.n1), (Orientation::Lms, 4));
        let p = check(&[1, 2, 1, 2, 0], 2, full(OrientationMode::Auto, SymbolMode::Auto));
        assert_eq!(p.orientation, Orientation::Lms);
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
                    for o in [
                        OrientationMode::Auto,
                        OrientationMode::ForceLms,
                        OrientationMode::ForceLml,
                    ] {
                        check(&t, sigma, full(o, SymbolMode::Auto));
                    }
                }
            }
        }
    }

    #[test]
    fn random_texts() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for round in 0..400 {
            let n = rng.gen_range(2..600);
            let sigma = match round % 4 {
                0 => 2,
                1 => rng.gen_range(1..=8),
                2 => n,
                _ => 2 * n,
            };
            let mut t: Vec<usize> = (0..n - 1).map(|_| rng.gen_range(1..=sigma)).collect();
            t.push(0);
            let o = [
                OrientationMode::Auto,
                OrientationMode::ForceLms,
                OrientationMode::ForceLml,
            ][round % 3];
            let s = [SymbolMode::Auto, SymbolMode::ForceFallback][round / 3 % 2];
            check(&t, sigma, full(o, s));
        }
    }

    #[test]
    fn repetitive_texts() {
        for n in [50, 257, 1000, 3001] {
            for period in [1, 2, 3, 7] {
                let mut t: Vec<usize> = (0..n - 1).map(|i| i % period + 1).collect();
                t.push(0);
                for o in [OrientationMode::ForceLms, OrientationMode::ForceLml] {
                    check(&t, period, full(o, SymbolMode::Auto));
                }
            }
        }
    }

    #[test]
    fn locator_matches_counts() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let n = rng.gen_range(2..3000);
            let sigma = rng.gen_range(1..=2 * n);
            let mut t: Vec<usize> = (0..n - 1).map(|_| rng.gen_range(1..=sigma)).collect();
            t.push(0);
            let d = sigma.div_ceil(n).max(1);
            for l_side in [false, true] {
                let mut cnt = vec![0usize; sigma + 1];
                ip_int::scan_types(&t, |i, s, _| {
                    if s != l_side {
                        cnt[if l_side { sigma - t[i] } else { t[i] }] += 1;
                    }
                });
                let mut arena = vec![0; n];
                let Ok(w) = build_locator(&t, &mut arena, sigma, d, l_side) else {
                    continue;
                };
                let loc = BucketLocator::new(&arena[n - w..]);
                let mut le = 0;
                for x in 0..=sigma {
                    assert_eq!(loc.count_lt(x), le);
                    le += cnt[x];
                    assert_eq!(loc.count_le(x), le);
                }
            }
        }
    }

    #[test]
    fn large_reports_locator() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let n = 50_000;
        let mut t: Vec<usize> = (0..n - 1).map(|_| rng.gen_range(1..=n)).collect();
        t.push(0);
        let before = t.clone();
        let mut sa = vec![0; n];
        let plan = suffix_sort_readonly_with(&t, &mut sa, n, ReadonlyOptions::default()).unwrap();
        assert!(plan.c_p > 0 && plan.boundary_char.is_some());
        assert_eq!(t, before);
        assert_eq!(sa, naive_suffix_array(&t));
    }

    #[test]
    fn medium_texts_with_locator() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for round in 0..24 {
            let n = rng.gen_range(2000..12000);
            let sigma = [2, 4, 20, 256, n / 2, n, 3 * n, 8 * n][round % 8];
            let mut t: Vec<usize> = (0..n - 1).map(|_| rng.gen_range(1..=sigma)).collect();
            t.push(0);
            let o = [
                OrientationMode::Auto,
                OrientationMode::ForceLms,
                OrientationMode::ForceLml,
            ][round % 3];
            let plan = check(&t, sigma, full(o, SymbolMode::Auto));
            if sigma <= n && plan.orientation == Orientation::Lms {
                assert!(plan.c_p > 0, "round {round}: {plan:?}");
            }
        }
    }

    #[test]
    fn orientation_examples() {
        assert_eq!(choose_orientation(&RUN, 3).unwrap().orientation, Orientation::Lml);
        let p = choose_orientation(&[1, 2, 1, 2, 0], 2).unwrap();
        assert_eq!((p.orientation, p.n_l, p.n_s), (Orientation::Lms, 2, 3));
        assert_eq!(choose_orientation(&[0], 0).unwrap().orientation, Orientation::Lms);
    }

    #[test]
    fn counting_sort_examples() {
        let mut sa = [0; 5];
        assert_eq!(sort_reduced_chars(&[1, 2, 1, 2, 0], &mut sa, 2, 1, false), 2);
        assert_eq!(sa[3..], [4, 2]);
        let mut sa = [0; 13];
        assert_eq!(sort_reduced_chars(&RUN, &mut sa, 3, 1, false), 4);
        assert_eq!(sa[9], 12);
        let mut tail = sa[9..].to_vec();
        tail.sort();
        assert_eq!(tail, [1, 5, 9, 12]);
        let mut sa = [0; 4];
        assert_eq!(sort_reduced_chars(&[3, 2, 1, 0], &mut sa, 3, 1, false), 1);
        assert_eq!(sa[3], 3);
    }

    #[test]
    fn locator_example() {
        let t = [1, 2, 1, 2, 0];
        let mut arena = [0; 64];
        let w = build_locator(&t, &mut arena, 2, 1, false).unwrap();
        let loc = BucketLocator::new(&arena[64 - w..]);
        assert_eq!(loc.bucket_tail(0), 0);
        assert_eq!(loc.bucket_tail(1), 2);
    }

    #[test]
    fn five_cell_bucket_states() {
        let t = [1, 1, 1, 1, 1, 0];
        let mut sa = [7; 5];
        let mut ind = Induce::<false> {
            t: &t,
            sa: &mut sa,
            n: 6,
            sigma: 1,
            tb: 0,
            len: 5,
            src_lo: 0,
            src_len: 0,
            c_p: 0,
            loc_lo: 0,
            ch: NONE,
            top_ch: 0,
            ch_seen: 0,
            first: false,
            stateful_hi: 0,
            cur_key: NONE,
            cur_head: 0,
            cur_rf: NONE,
        };
        ind.set_markers(0, 4);
        let mut rows = vec![ind.sa.to_vec()];
        for j in [4, 3, 2, 1, 0] {
            ind.put(4, j, 1);
            rows.push(ind.sa.to_vec());
        }
        assert_eq!(rows[0], [BH, 7, 7, E, BT]);
        assert_eq!(rows[1], [BH, 7, 4, 1, BT]);
        assert_eq!(rows[2], [BH, 3, 4, 2, BT]);
        assert_eq!(rows[3], [BH, 2, 3, 4, R2]);
        assert_eq!(rows[4], [R1, 1, 2, 3, 4]);
        assert_eq!(rows[5], [0, 1, 2, 3, 4]);
    }

    #[test]
    fn rejects_wide_alphabet() {
        let mut t = vec![1; 2000];
        t[1999] = 0;
        let mut sa = vec![0; 2000];
        assert!(suffix_sort_readonly(&t, &mut sa, 2000 * MAX_D + 1).is_err());
        assert!(suffix_sort_readonly(&t, &mut sa, 2000 * MAX_D).is_ok());
    }
}
