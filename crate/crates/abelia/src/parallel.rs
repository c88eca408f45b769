//! Multi-threaded drivers for the core kernels.
//!
//! Work is cut into pieces whose boundaries do not depend on the worker
//! count, pieces are handed out dynamically, and results are reassembled in
//! piece order. Every value produced here is therefore identical for any
//! `--threads`.

use std::collections::BTreeMap;
use std::num::NonZeroUsize;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::thread;

use abelia_core::constants::{prime_chunks, EulerAccum, EulerData};
use abelia_core::counting::{census_from_levels, census_levels_columns, census_x_range, ReducibleCensus};
use abelia_core::dirichlet::{base_primes, coefficient_segment, partial_sum_segment, SEGMENT_LEN};
use abelia_core::enumerate::{family_histogram_for_a, root_height_box, ClassHistogram, EnumerationRange};
use abelia_core::{CoefficientTable, Error, Result};

/// Pieces per worker-independent split of an `a`-range.
const RANGE_PIECES: usize = 64;
/// Columns per census piece.
const CENSUS_COLUMNS: i64 = 64;

/// Worker count: the request, or the available parallelism.
pub fn resolve_threads(requested: Option<usize>) -> usize {
    requested
        .filter(|&t| t > 0)
        .unwrap_or_else(|| thread::available_parallelism().map_or(1, NonZeroUsize::get))
}

/// `items.iter().map(f)` on `threads` workers, results in item order.
pub fn map_ordered<I, T, F>(items: &[I], threads: usize, f: F) -> Vec<T>
where
    I: Sync,
    T: Send,
    F: Fn(&I) -> T + Sync,
{
    let workers = threads.max(1).min(items.len());
    if workers <= 1 {
        return items.iter().map(f).collect();
    }
    let next = AtomicUsize::new(0);
    let mut slots: Vec<Option<T>> = (0..items.len()).map(|_| None).collect();
    thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|_| {
                scope.spawn(|| {
                    let mut done = Vec::new();
                    loop {
                        let i = next.fetch_add(1, Ordering::Relaxed);
                        let Some(item) = items.get(i) else { break };
                        done.push((i, f(item)));
                    }
                    done
                })
            })
            .collect();
        for handle in handles {
            match handle.join() {
                Ok(done) => done.into_iter().for_each(|(i, v)| slots[i] = Some(v)),
                Err(panic) => std::panic::resume_unwind(panic),
            }
        }
    });
    slots.into_iter().map(|s| s.expect("every piece is processed")).collect()
}

fn segments(lo: u64, hi_inclusive: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    let mut start = lo;
    while start <= hi_inclusive {
        let end = (start + SEGMENT_LEN).min(hi_inclusive + 1);
        out.push((start, end));
        start = end;
    }
    out
}

/// `d_1..=d_N` sieved by segment.
pub fn sieve_coefficients(limit: u64, budget: u64, threads: usize) -> Result<CoefficientTable> {
    if limit == 0 {
        return Err(Error::Domain("coefficient table needs N ≥ 1"));
    }
    if limit > budget {
        return Err(Error::Budget { requested: limit, limit: budget });
    }
    let base = base_primes(limit);
    let parts = map_ordered(&segments(1, limit), threads, |&(lo, hi)| coefficient_segment(lo, hi, &base));
    let mut values = Vec::with_capacity(limit as usize);
    parts.into_iter().for_each(|p| values.extend(p));
    Ok(CoefficientTable::from_values(values))
}

/// `Σ_{n ≤ x} d_n`, streaming; memory is one segment per worker.
pub fn partial_sum(x: u64, threads: usize) -> u64 {
    if x == 0 {
        return 0;
    }
    let base = base_primes(x);
    map_ordered(&segments(1, x), threads, |&(lo, hi)| partial_sum_segment(lo, hi, &base)).iter().sum()
}

/// Reducible census by blocks of `x`-columns.
pub fn reducible_census(n_max: u64, threads: usize) -> ReducibleCensus {
    let (x_lo, x_hi) = census_x_range(n_max);
    let blocks: Vec<(i64, i64)> = (x_lo..=x_hi)
        .step_by(CENSUS_COLUMNS as usize)
        .map(|lo| (lo, (lo + CENSUS_COLUMNS - 1).min(x_hi)))
        .collect();
    let parts = map_ordered(&blocks, threads, |&(lo, hi)| {
        census_from_levels(n_max, &census_levels_columns(n_max, lo, hi))
    });
    let mut census = ReducibleCensus { n_max, ..Default::default() };
    for p in parts {
        census.disc_zero += p.disc_zero;
        census.disc_nonzero += p.disc_nonzero;
    }
    census
}

fn range_pieces(range: EnumerationRange) -> Vec<EnumerationRange> {
    range.split(RANGE_PIECES)
}

/// Weighted family count for each `n = 1 − 3a ≤ n_max`.
pub fn weighted_count_by_height(n_max: u64, threads: usize) -> Result<BTreeMap<u64, u64>> {
    if n_max == 0 {
        return Err(Error::Domain("height² must be at least 1"));
    }
    let pieces = range_pieces(EnumerationRange::up_to_height_squared(n_max));
    let parts = map_ordered(&pieces, threads, |r| abelia_core::enumerate::weighted_counts_over(*r));
    Ok(parts.into_iter().flatten().collect())
}

/// `(a, #C3)` by brute force for every `a` in the range, top first.
pub fn c3_counts(range: EnumerationRange, threads: usize) -> Vec<(i64, u64)> {
    let parts = map_ordered(&range_pieces(range), threads, |r| abelia_core::enumerate::c3_counts_over(*r));
    parts.into_iter().flatten().collect()
}

/// Class histogram over the range with `|b| ≤ b_max`.
pub fn histogram(range: EnumerationRange, b_max: u64, threads: usize) -> ClassHistogram {
    let per_a: Vec<i64> = range.iter().collect();
    let parts = map_ordered(&per_a, threads, |&a| family_histogram_for_a(a, b_max));
    let mut total = ClassHistogram::default();
    parts.iter().for_each(|h| total.merge(h));
    total
}

/// C3 polynomials of root height at most `h`.
pub fn count_c3_root_height(h: f64, threads: usize) -> Result<u64> {
    let (a_lim, b_lim) = root_height_box(h)?;
    let range = EnumerationRange::new(0, -(a_lim as i64))?;
    Ok(histogram(range, b_lim, threads).c3())
}

/// Euler data with the canonical prime chunking, chunks folded in order.
pub fn euler_data(cutoff: u64, threads: usize) -> Result<EulerData> {
    if cutoff < abelia_core::constants::MIN_PRIME_CUTOFF {
        return EulerData::compute(cutoff);
    }
    let chunks = prime_chunks(cutoff);
    let accum = map_ordered(&chunks, threads, |c| EulerAccum::over(c))
        .into_iter()
        .fold(EulerAccum::default(), EulerAccum::merge);
    EulerData::from_accum(cutoff, accum)
}
