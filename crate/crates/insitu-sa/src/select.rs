//! Constant-time select over a bitmap, laid out in a caller-provided arena.
//!
//! Layout (all `usize` words):
//!
//! ```text
//! [n, m, bitmap words W, superblocks S] [bitmap: W] [directory: 2S] [payloads]
//! ```
//!
//! A superblock covers 512 consecutive ones. Its directory entry holds the
//! position of its first one and the offset of its payload, with the top bit
//! set when the superblock is sparse (spans at least 2^16 positions). Sparse
//! payloads list every position. Dense payloads hold a mask of sparse
//! sub-blocks, then 32 packed 16-bit offsets (one per sub-block of 16 ones),
//! then 16 packed offsets for each sparse sub-block (span of at least 512).
//! A dense sub-block is finished by scanning at most nine bitmap words.

use crate::error::{invalid, Error, Result};

const _: () = assert!(usize::BITS == 64);

const HEADER: usize = 4;
const SB_ONES: usize = 512;
const SUB_ONES: usize = 16;
const SUBS: usize = SB_ONES / SUB_ONES;
const SB_SPARSE: usize = 1 << 16;
const SUB_SPARSE: usize = 512;
const SPARSE_FLAG: usize = 1 << 63;
const DENSE_HEAD: usize = 1 + SUBS / 4;

/// Upper bound on word probes per query.
pub const MAX_PROBES: usize = 16;

fn check_positions(n: usize, m: usize, pos: &impl Fn(usize) -> usize) -> Result<()> {
    if m > n.saturating_add(1) {
        return Err(invalid(format!("{m} ones do not fit in [0, {n}]")));
    }
    for i in 0..m {
        let p = pos(i);
        if p > n {
            return Err(invalid(format!("position {p} exceeds {n}")));
        }
        if i > 0 && pos(i - 1) >= p {
            return Err(invalid("positions must be strictly increasing"));
        }
    }
    Ok(())
}

#[inline]
fn bitmap_words(n: usize) -> usize {
    n / 64 + 1
}

/// Span of the sub-block or superblock whose ones are `lo..hi` (rank range).
#[inline]
fn span(pos: &impl Fn(usize) -> usize, lo: usize, hi: usize) -> usize {
    pos(hi - 1) - pos(lo)
}

fn payload_words(m: usize, sb: usize, pos: &impl Fn(usize) -> usize) -> usize {
    let lo = sb * SB_ONES;
    let hi = (lo + SB_ONES).min(m);
    if span(pos, lo, hi) >= SB_SPARSE {
        return hi - lo;
    }
    let mut w = DENSE_HEAD;
    let mut s = lo;
    while s < hi {
        let e = (s + SUB_ONES).min(hi);
        if span(pos, s, e) >= SUB_SPARSE {
            w += SUB_ONES / 4;
        }
        s = e;
    }
    w
}

/// Arena words needed for the ones `pos(0) < … < pos(m-1)` in `[0, n]`.
pub fn words_needed(n: usize, m: usize, pos: impl Fn(usize) -> usize) -> Result<usize> {
    check_positions(n, m, &pos)?;
    let sbs = m.div_ceil(SB_ONES);
    let mut w = HEADER + bitmap_words(n) + 2 * sbs;
    for sb in 0..sbs {
        w += payload_words(m, sb, &pos);
    }
    Ok(w)
}

#[inline]
fn put16(words: &mut [usize], base: usize, k: usize, v: usize) {
    let (w, sh) = (base + k / 4, (k % 4) * 16);
    words[w] = (words[w] & !(0xffff << sh)) | (v << sh);
}

#[inline]
fn get16(words: &[usize], base: usize, k: usize) -> usize {
    (words[base + k / 4] >> ((k % 4) * 16)) & 0xffff
}

/// Builds the structure into the front of `arena` and returns the words used.
pub fn build_into(arena: &mut [usize], n: usize, m: usize, pos: impl Fn(usize) -> usize) -> Result<usize> {
    let need = words_needed(n, m, &pos)?;
    if arena.len() < need {
        return Err(invalid(format!("arena of {} words, {need} needed", arena.len())));
    }
    let bw = bitmap_words(n);
    let sbs = m.div_ceil(SB_ONES);
    let a = &mut arena[..need];
    a[0] = n;
    a[1] = m;
    a[2] = bw;
    a[3] = sbs;
    let bm = HEADER;
    a[bm..bm + bw].fill(0);
    for i in 0..m {
        let p = pos(i);
        a[bm + p / 64] |= 1 << (p % 64);
    }
    let dir = bm + bw;
    let mut off = dir + 2 * sbs;
    for sb in 0..sbs {
        let lo = sb * SB_ONES;
        let hi = (lo + SB_ONES).min(m);
        let first = pos(lo);
        a[dir + 2 * sb] = first;
        if span(&pos, lo, hi) >= SB_SPARSE {
            a[dir + 2 * sb + 1] = off | SPARSE_FLAG;
            for i in lo..hi {
                a[off + i - lo] = pos(i);
            }
            off += hi - lo;
            continue;
        }
        a[dir + 2 * sb + 1] = off;
        let head = off;
        a[head..head + DENSE_HEAD].fill(0);
        let mut extra = head + DENSE_HEAD;
        let mut mask = 0usize;
        let mut s = lo;
        let mut k = 0;
        while s < hi {
            let e = (s + SUB_ONES).min(hi);
            put16(a, head + 1, k, pos(s) - first);
            if span(&pos, s, e) >= SUB_SPARSE {
                mask |= 1 << k;
                a[extra..extra + SUB_ONES / 4].fill(0);
                for i in s..e {
                    put16(a, extra, i - s, pos(i) - first);
                }
                extra += SUB_ONES / 4;
            }
            s = e;
            k += 1;
        }
        a[head] = mask;
        off = extra;
    }
    debug_assert_eq!(off, need);
    Ok(need)
}

/// Read-only view of a built structure.
#[derive(Clone, Copy)]
pub struct SelectView<'a> {
    words: &'a [usize],
}

impl<'a> SelectView<'a> {
    /// Wraps the front of `words`, which must hold a structure from [`build_into`].
    pub fn new(words: &'a [usize]) -> Self {
        SelectView { words }
    }

    pub fn universe(&self) -> usize {
        self.words[0]
    }

    pub fn ones(&self) -> usize {
        self.words[1]
    }

    /// Total words occupied by the structure.
    pub fn words(&self) -> usize {
        let (m, bw, sbs) = (self.words[1], self.words[2], self.words[3]);
        if sbs == 0 {
            return HEADER + bw;
        }
        // The payload of the last superblock ends the structure.
        let dir = HEADER + bw;
        let e = self.words[dir + 2 * (sbs - 1) + 1];
        let last_ones = m - (sbs - 1) * SB_ONES;
        if e & SPARSE_FLAG != 0 {
            (e & !SPARSE_FLAG) + last_ones
        } else {
            let mask = self.words[e];
            e + DENSE_HEAD + (mask.count_ones() as usize) * (SUB_ONES / 4)
        }
    }

    /// Position of the `i`-th one (0-based), or an error if `i >= m`.
    pub fn select(&self, i: usize) -> Result<usize> {
        if i >= self.ones() {
            return Err(Error::OutOfRange {
                index: i,
                len: self.ones(),
            });
        }
        Ok(self.select_unchecked(i))
    }

    /// Position of the `i`-th one and the number of words probed.
    pub fn select_probed(&self, i: usize) -> (usize, usize) {
        let mut probes = 0;
        let p = self.select_inner(i, &mut probes);
        (p, probes)
    }

    #[inline]
    pub fn select_unchecked(&self, i: usize) -> usize {
        let mut probes = 0;
        self.select_inner(i, &mut probes)
    }

    #[inline(always)]
    fn select_inner(&self, i: usize, probes: &mut usize) -> usize {
        let w = self.words;
        let bw = w[2];
        *probes += 1;
        let dir = HEADER + bw;
        let sb = i / SB_ONES;
        let r = i % SB_ONES;
        let first = w[dir + 2 * sb];
        let e = w[dir + 2 * sb + 1];
        *probes += 2;
        if e & SPARSE_FLAG != 0 {
            *probes += 1;
            return w[(e & !SPARSE_FLAG) + r];
        }
        let k = r / SUB_ONES;
        let j = r % SUB_ONES;
        let mask = w[e];
        *probes += 2;
        let start = first + get16(w, e + 1, k);
        if mask >> k & 1 == 1 {
            let idx = (mask & ((1usize << k) - 1)).count_ones() as usize;
            *probes += 1;
            return first + get16(w, e + DENSE_HEAD + idx * (SUB_ONES / 4), j);
        }
        // Scan from the sub-block's first one for j more ones.
        let bm = HEADER;
        let mut word = start / 64;
        let mut bits = w[bm + word] & (usize::MAX << (start % 64));
        *probes += 1;
        let mut left = j;
        loop {
            let c = bits.count_ones() as usize;
            if left < c {
                let mut b = bits;
                for _ in 0..left {
                    b &= b - 1;
                }
                return word * 64 + b.trailing_zeros() as usize;
            }
            left -= c;
            word += 1;
            bits = w[bm + word];
            *probes += 1;
        }
    }
}

/// Owned select structure for standalone use.
#[derive(Debug, Clone)]
pub struct SelectIndex {
    words: Vec<usize>,
}

impl SelectIndex {
    /// Builds over the strictly increasing `positions`, all in `[0, n]`.
    pub fn build(n: usize, positions: &[usize]) -> Result<Self> {
        let m = positions.len();
        let need = words_needed(n, m, |i| positions[i])?;
        let mut words = vec![0; need];
        build_into(&mut words, n, m, |i| positions[i])?;
        Ok(SelectIndex { words })
    }

    pub fn view(&self) -> SelectView<'_> {
        SelectView::new(&self.words)
    }

    pub fn select(&self, i: usize) -> Result<usize> {
        self.view().select(i)
    }

    pub fn words(&self) -> usize {
        self.words.len()
    }

    pub fn ones(&self) -> usize {
        self.view().ones()
    }
}

/// The word budget `2n / log2 n`.
pub fn word_budget(n: usize) -> usize {
    let lg = (usize::BITS - n.leading_zeros() - 1).max(1) as usize;
    2 * n / lg
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_examples() {
        let s = SelectIndex::build(5, &[0, 3, 5]).unwrap();
        assert_eq!(
            (s.select(0).unwrap(), s.select(1).unwrap(), s.select(2).unwrap()),
            (0, 3, 5)
        );
        assert!(s.select(3).is_err());
        let s = SelectIndex::build(7, &[7]).unwrap();
        assert_eq!(s.select(0).unwrap(), 7);
        let all: Vec<usize> = (0..=3000).collect();
        let s = SelectIndex::build(3000, &all).unwrap();
        for k in 0..=3000 {
            assert_eq!(s.select(k).unwrap(), k);
        }
        assert_eq!(s.view().words(), s.words());
    }

    #[test]
    fn rejects_bad_input() {
        assert!(SelectIndex::build(5, &[1, 1]).is_err());
        assert!(SelectIndex::build(5, &[3, 2]).is_err());
        assert!(SelectIndex::build(5, &[6]).is_err());
        let mut arena = [0usize; 3];
        assert!(build_into(&mut arena, 5, 1, |_| 2).is_err());
    }

    #[test]
    fn sparse_and_dense_mix() {
        // Dense clusters separated by long gaps exercise every payload kind.
        let mut v = Vec::new();
        let mut p = 0usize;
        for block in 0..40 {
            let gap = if block % 3 == 0 {
                70_000
            } else if block % 3 == 1 {
                600
            } else {
                1
            };
            for _ in 0..100 {
                v.push(p);
                p += gap;
            }
        }
        let n = p + 5;
        let s = SelectIndex::build(n, &v).unwrap();
        assert_eq!(s.view().words(), s.words());
        for (k, &want) in v.iter().enumerate() {
            let (got, probes) = s.view().select_probed(k);
            assert_eq!(got, want);
            assert!(probes <= MAX_PROBES);
        }
    }

    #[test]
    fn empty_set() {
        let s = SelectIndex::build(100, &[]).unwrap();
        assert_eq!(s.ones(), 0);
        assert!(s.select(0).is_err());
        assert_eq!(s.view().words(), s.words());
    }
}
