//! Workspace auditing: allocation counting, stack-depth probes, checksums.
//!
//! The in-place sorters call [`level_enter`] at each recursion level and
//! [`probe`] from their innermost phases. While an audit is active, the probe
//! records how many stack words lie between the current level's entry and the
//! probe point. Frames of the recursion itself are not counted; the sorters
//! keep no per-level state in them.

use std::alloc::{GlobalAlloc, Layout, System};
use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering::Relaxed};
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::text::Symbol;

/// Budget for peak auxiliary words of the in-place sorters.
pub const WORD_BUDGET: usize = 128;

const MAX_LEVELS: usize = 80;

static ACTIVE: AtomicBool = AtomicBool::new(false);
static ALLOCS: AtomicUsize = AtomicUsize::new(0);
static PEAK_WORDS: AtomicUsize = AtomicUsize::new(0);
static MAX_DEPTH: AtomicUsize = AtomicUsize::new(0);
static LEVEL_SP: [AtomicUsize; MAX_LEVELS] = [const { AtomicUsize::new(0) }; MAX_LEVELS];
static CUR_DEPTH: AtomicUsize = AtomicUsize::new(0);
static EXTRA_WORDS: AtomicUsize = AtomicUsize::new(0);

/// A global allocator wrapper that counts allocations while an audit runs.
///
/// Register it in a binary or test crate with `#[global_allocator]`.
pub struct CountingAlloc;

unsafe impl GlobalAlloc for CountingAlloc {
    unsafe fn alloc(&self, layout: Layout) -> *mut u8 {
        if ACTIVE.load(Relaxed) {
            ALLOCS.fetch_add(1, Relaxed);
        }
        System.alloc(layout)
    }

    unsafe fn dealloc(&self, ptr: *mut u8, layout: Layout) {
        System.dealloc(ptr, layout)
    }

    unsafe fn alloc_zeroed(&self, layout: Layout) -> *mut u8 {
        if ACTIVE.load(Relaxed) {
            ALLOCS.fetch_add(1, Relaxed);
        }
        System.alloc_zeroed(layout)
    }

    unsafe fn realloc(&self, ptr: *mut u8, layout: Layout, new_size: usize) -> *mut u8 {
        if ACTIVE.load(Relaxed) {
            ALLOCS.fetch_add(1, Relaxed);
        }
        System.realloc(ptr, layout, new_size)
    }
}

#[inline(always)]
fn stack_pointer() -> usize {
    let marker = 0u8;
    std::hint::black_box(&marker) as *const u8 as usize
}

/// Marks entry into recursion level `depth`.
#[inline]
pub fn level_enter(depth: usize) {
    if ACTIVE.load(Relaxed) {
        let d = depth.min(MAX_LEVELS - 1);
        LEVEL_SP[d].store(stack_pointer(), Relaxed);
        CUR_DEPTH.store(d, Relaxed);
        MAX_DEPTH.fetch_max(depth, Relaxed);
    }
}

/// Marks return to recursion level `depth` after a deeper level finished.
#[inline]
pub fn level_resume(depth: usize) {
    if ACTIVE.load(Relaxed) {
        CUR_DEPTH.store(depth.min(MAX_LEVELS - 1), Relaxed);
    }
}

/// Records the stack words used below the current level's entry.
#[inline(never)]
pub fn probe() {
    if ACTIVE.load(Relaxed) {
        let d = CUR_DEPTH.load(Relaxed);
        let base = LEVEL_SP[d].load(Relaxed);
        let sp = stack_pointer();
        let words = base.saturating_sub(sp) / std::mem::size_of::<usize>();
        PEAK_WORDS.fetch_max(words + EXTRA_WORDS.load(Relaxed), Relaxed);
    }
}

/// Words of state held outside the measured frames (for example a context
/// struct created before the first level).
pub(crate) fn set_extra_words(w: usize) {
    EXTRA_WORDS.store(w, Relaxed);
}

/// Identifies an algorithm for [`audited_run`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Algorithm {
    IpInt,
    IpRoInt,
    IpGeneral,
    SaisRef,
    Naive,
}

impl Algorithm {
    pub const ALL: [Algorithm; 5] = [
        Algorithm::IpInt,
        Algorithm::IpRoInt,
        Algorithm::IpGeneral,
        Algorithm::SaisRef,
        Algorithm::Naive,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::IpInt => "ip-int",
            Algorithm::IpRoInt => "ip-ro-int",
            Algorithm::IpGeneral => "ip-general",
            Algorithm::SaisRef => "sais-ref",
            Algorithm::Naive => "naive",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Algorithm::ALL.into_iter().find(|a| a.name() == s)
    }

    /// Whether the algorithm claims O(1) auxiliary words.
    pub fn in_place(self) -> bool {
        matches!(self, Algorithm::IpInt | Algorithm::IpRoInt | Algorithm::IpGeneral)
    }
}

/// Measurements from one audited run.
#[derive(Debug, Clone, Serialize)]
pub struct WorkspaceReport {
    pub algo: &'static str,
    pub n: usize,
    pub peak_aux_words: usize,
    pub alloc_events: usize,
    pub max_depth: usize,
    pub text_touched: bool,
    #[serde(skip)]
    pub elapsed: Duration,
}

/// FNV-1a over the symbol values.
pub fn checksum<S: Symbol>(t: &[S]) -> u64 {
    let mut h = 0xcbf29ce484222325u64;
    for &c in t {
        h ^= c.rank() as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}

fn reset() {
    ALLOCS.store(0, Relaxed);
    PEAK_WORDS.store(0, Relaxed);
    MAX_DEPTH.store(0, Relaxed);
    CUR_DEPTH.store(0, Relaxed);
    EXTRA_WORDS.store(0, Relaxed);
    for s in LEVEL_SP.iter() {
        s.store(0, Relaxed);
    }
}

/// Calls `f` with level 0 anchored in this frame, so that the caller's
/// locals are not counted.
#[inline(never)]
fn anchored<R>(f: impl FnOnce() -> R) -> R {
    LEVEL_SP[0].store(stack_pointer(), Relaxed);
    f()
}

/// Runs `f` with instrumentation on and returns its result with the counters.
///
/// Audits must not overlap within a process.
pub fn measure<R>(f: impl FnOnce() -> R) -> (R, usize, usize, usize, Duration) {
    reset();
    ACTIVE.store(true, Relaxed);
    let start = Instant::now();
    let r = anchored(f);
    let elapsed = start.elapsed();
    ACTIVE.store(false, Relaxed);
    (
        r,
        PEAK_WORDS.load(Relaxed),
        ALLOCS.load(Relaxed),
        MAX_DEPTH.load(Relaxed),
        elapsed,
    )
}

/// Sorts `text` (symbols in `0..=sigma`) with `algo` under instrumentation.
///
/// The suffix array buffer is allocated before measurement starts. For
/// in-place algorithms a report exceeding [`WORD_BUDGET`] or showing any
/// allocation is returned as an error.
pub fn audited_run(algo: Algorithm, text: &[usize], sigma: usize) -> Result<(Vec<usize>, WorkspaceReport)> {
    audited_run_with(algo, text, sigma, false)
}

/// Like [`audited_run`]; with `restore`, ip-int sorts a copy of the text with
/// restoration on, and `text_touched` reports whether the copy came back
/// different.
pub fn audited_run_with(
    algo: Algorithm,
    text: &[usize],
    sigma: usize,
    restore: bool,
) -> Result<(Vec<usize>, WorkspaceReport)> {
    let n = text.len();
    let mut touched = false;
    let mut sa = vec![0usize; n];
    let before = checksum(text);
    let (res, peak, allocs, depth, elapsed) = match algo {
        Algorithm::IpInt => {
            let mut t = text.to_vec();
            let r = measure(|| crate::ip_int::suffix_sort_int(&mut t, &mut sa, sigma, restore));
            touched = restore && checksum(&t) != before;
            (r.0.map(|_| ()), r.1, r.2, r.3, r.4)
        }
        Algorithm::IpRoInt => {
            let r = measure(|| crate::ip_ro_int::suffix_sort_readonly(text, &mut sa, sigma));
            (r.0, r.1, r.2, r.3, r.4)
        }
        Algorithm::IpGeneral => {
            let r = measure(|| crate::ip_general::suffix_sort_general(text, &mut sa).map(|_| ()));
            (r.0, r.1, r.2, r.3, r.4)
        }
        Algorithm::SaisRef => {
            let r = measure(|| crate::sais_ref::sais(text, sigma));
            sa = r.0;
            // The reference keeps a bucket table and a flag per position.
            (Ok(()), sigma + 1 + n / 64 + 1, r.2, 0, r.4)
        }
        Algorithm::Naive => {
            let r = measure(|| crate::text::naive_suffix_array(text));
            sa = r.0;
            (Ok(()), n, r.2, 0, r.4)
        }
    };
    res?;
    let report = WorkspaceReport {
        algo: algo.name(),
        n,
        peak_aux_words: peak,
        alloc_events: allocs,
        max_depth: depth,
        text_touched: touched || checksum(text) != before,
        elapsed,
    };
    if algo.in_place() && (report.alloc_events > 0 || report.peak_aux_words > WORD_BUDGET) {
        return Err(Error::AuditFailure(format!(
            "{}: {} allocations, {} peak words (budget {WORD_BUDGET})",
            report.algo, report.alloc_events, report.peak_aux_words
        )));
    }
    Ok((sa, report))
}
