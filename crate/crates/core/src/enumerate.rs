//! Brute-force enumeration of family polynomials, the independent check on
//! every counting formula, plus the fast toric C3 count built from the
//! coefficient table and the reducible census.
//!
//! Scans never store polynomials. Each kernel walks a contiguous range of `a`
//! from the top down and streams classifications into counters; parallel
//! drivers split a range with [`EnumerationRange::split`] and concatenate the
//! per-part outputs in order.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::counting::ReducibleCensus;
use crate::cubic::{family_b_bound, GaloisClass, TraceOneCubic};
use crate::dirichlet::CoefficientTable;
use crate::{Error, Result};

/// Largest root height accepted by the direct scan in [`count_c3_root_height`].
pub const ROOT_HEIGHT_LIMIT: f64 = 50.0;

/// The values `a_hi ≥ a ≥ a_lo`, scanned in descending order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationRange {
    a_hi: i64,
    a_lo: i64,
}

impl EnumerationRange {
    /// Nonpositive `a` in `[a_lo, a_hi]`; empty when `a_lo > a_hi`.
    pub fn new(a_hi: i64, a_lo: i64) -> Result<Self> {
        if a_hi > 0 {
            return Err(Error::Domain("family scans need a ≤ 0"));
        }
        Ok(EnumerationRange { a_hi, a_lo })
    }

    /// Every `a` with `1 − 3a ≤ n_max`.
    pub fn up_to_height_squared(n_max: u64) -> Self {
        let depth = n_max.saturating_sub(1) / 3;
        EnumerationRange { a_hi: 0, a_lo: -(depth as i64) }
    }

    pub fn a_hi(&self) -> i64 {
        self.a_hi
    }

    pub fn a_lo(&self) -> i64 {
        self.a_lo
    }

    pub fn is_empty(&self) -> bool {
        self.a_lo > self.a_hi
    }

    pub fn len(&self) -> u64 {
        if self.is_empty() {
            0
        } else {
            (self.a_hi - self.a_lo) as u64 + 1
        }
    }

    /// Descending values of `a`.
    pub fn iter(&self) -> impl Iterator<Item = i64> {
        let lo = self.a_lo;
        (lo..=self.a_hi).rev()
    }

    /// `B(a)` at the bottom of the range, which bounds `|b|` for all of it.
    pub fn b_bound(&self) -> i64 {
        family_b_bound(self.a_lo.min(self.a_hi))
    }

    /// Contiguous parts, top first, balanced by scan cost (`∝ |a|^{3/2}`).
    pub fn split(&self, parts: usize) -> Vec<EnumerationRange> {
        let parts = parts.max(1);
        if self.is_empty() {
            return alloc::vec![*self];
        }
        let cost = |a: i64| libm::pow((1 + 2 * a.unsigned_abs()) as f64, 1.5) + 1.0;
        let total: f64 = self.iter().map(cost).sum();
        let mut out = Vec::with_capacity(parts);
        let mut top = self.a_hi;
        let mut acc = 0.0;
        for a in self.iter() {
            acc += cost(a);
            let target = total * (out.len() + 1) as f64 / parts as f64;
            if acc >= target && out.len() + 1 < parts && a > self.a_lo {
                out.push(EnumerationRange { a_hi: top, a_lo: a });
                top = a - 1;
            }
        }
        out.push(EnumerationRange { a_hi: top, a_lo: self.a_lo });
        out
    }
}

/// Counts of family polynomials by class.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ClassHistogram {
    pub counts: [u64; 6],
}

impl ClassHistogram {
    pub fn get(&self, class: GaloisClass) -> u64 {
        self.counts[class.index()]
    }

    pub fn record(&mut self, class: GaloisClass) {
        self.counts[class.index()] += 1;
    }

    pub fn merge(&mut self, other: &ClassHistogram) {
        for (c, o) in self.counts.iter_mut().zip(other.counts) {
            *c += o;
        }
    }

    /// `Σ w_f`: 1 for a double root, 2 otherwise.
    pub fn weighted(&self) -> u64 {
        2 * (self.get(GaloisClass::C3Irreducible) + self.get(GaloisClass::SplitDistinct))
            + self.get(GaloisClass::SplitDouble)
    }

    pub fn c3(&self) -> u64 {
        self.get(GaloisClass::C3Irreducible)
    }
}

/// Family polynomials with this `a` and `|b| ≤ b_max`, by class.
pub fn family_histogram_for_a(a: i64, b_max: u64) -> ClassHistogram {
    let mut hist = ClassHistogram::default();
    let bound = if a <= 0 { (family_b_bound(a) as u64).min(b_max) } else { b_max };
    let bound = bound as i64;
    for b in -bound..=bound {
        if let Some(class) = TraceOneCubic::new(a, b).family_class() {
            hist.record(class);
        }
    }
    hist
}

/// Number of `b` with `t³ − t² + a t + b` cyclic cubic, by direct scan.
pub fn brute_c3_count_for_a(a: i64) -> Result<u64> {
    if a > 0 {
        return Err(Error::Domain("brute C3 count needs a ≤ 0"));
    }
    Ok(family_histogram_for_a(a, u64::MAX).c3())
}

/// `(n, Σ w_f)` for every `a` in the range, `n = 1 − 3a`, top first.
pub fn weighted_counts_over(range: EnumerationRange) -> Vec<(u64, u64)> {
    range
        .iter()
        .map(|a| (1 + 3 * a.unsigned_abs(), family_histogram_for_a(a, u64::MAX).weighted()))
        .collect()
}

/// `(a, #C3)` for every `a` in the range, top first.
pub fn c3_counts_over(range: EnumerationRange) -> Vec<(i64, u64)> {
    range.iter().map(|a| (a, family_histogram_for_a(a, u64::MAX).c3())).collect()
}

/// Class histogram over the range with `|b| ≤ b_max`.
pub fn histogram_over(range: EnumerationRange, b_max: u64) -> ClassHistogram {
    let mut hist = ClassHistogram::default();
    for a in range.iter() {
        hist.merge(&family_histogram_for_a(a, b_max));
    }
    hist
}

/// Weighted family count for each `n = 1 − 3a ≤ n_max` (zeros included).
pub fn weighted_count_by_height(n_max: u64) -> Result<BTreeMap<u64, u64>> {
    if n_max == 0 {
        return Err(Error::Domain("height² must be at least 1"));
    }
    Ok(weighted_counts_over(EnumerationRange::up_to_height_squared(n_max)).into_iter().collect())
}

/// C3 polynomials with `1 ≤ a ≤ a_max` and `|b| ≤ b_max`.
pub fn positive_a_c3_count(a_max: i64, b_max: i64) -> u64 {
    let mut count = 0;
    for a in 1..=a_max {
        for b in -b_max..=b_max {
            let f = TraceOneCubic::new(a, b);
            if f.discriminant() > 0 && f.classify() == GaloisClass::C3Irreducible {
                count += 1;
            }
        }
    }
    count
}

/// `(S(n_max) − R₀ − 2R₁)/2`: C3 polynomials of toric height² at most `n_max`,
/// from the coefficient sum and the reducible census.
pub fn fast_c3_count_toric(n_max: u64, table: &CoefficientTable, census: &ReducibleCensus) -> Result<u64> {
    if census.n_max != n_max {
        return Err(Error::Domain("census height does not match"));
    }
    let sum = table.partial_sum(n_max)?;
    let reducible = census.disc_zero + 2 * census.disc_nonzero;
    let twice = sum
        .checked_sub(reducible)
        .ok_or(Error::Inconsistent("reducible census exceeds the coefficient sum"))?;
    if twice % 2 != 0 {
        return Err(Error::Inconsistent("odd irreducible weight"));
    }
    Ok(twice / 2)
}

/// C3 polynomials with `|a| ≤ a_lim` and `|b| ≤ b_lim`.
pub fn count_c3_root_box(a_lim: u64, b_lim: u64) -> u64 {
    let range = EnumerationRange { a_hi: 0, a_lo: -(a_lim as i64) };
    histogram_over(range, b_lim).c3()
}

/// `(|a| bound, |b| bound)` for root height `h`: `⌊h²⌋` and `⌊h³⌋`, with a
/// relative slack of 1e-12 so that `√2` and similar inputs land on the
/// intended integers.
pub fn root_height_box(h: f64) -> Result<(u64, u64)> {
    if h.is_nan() || !(0.0..=ROOT_HEIGHT_LIMIT).contains(&h) {
        return Err(Error::Budget { requested: libm::ceil(h.max(0.0)) as u64, limit: ROOT_HEIGHT_LIMIT as u64 });
    }
    let slack = 1.0 + 1e-12;
    Ok((libm::floor(h * h * slack) as u64, libm::floor(h * h * h * slack) as u64))
}

/// C3 polynomials with root height `max(|a|^{1/2}, |b|^{1/3}) ≤ h`.
pub fn count_c3_root_height(h: f64) -> Result<u64> {
    let (a_lim, b_lim) = root_height_box(h)?;
    Ok(count_c3_root_box(a_lim, b_lim))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::DEFAULT_SIEVE_BUDGET;
    use crate::counting::{c3_count_for_a, reducible_census};
    use crate::dirichlet::{coefficient, sieve_coefficients};

    #[test]
    fn brute_examples() {
        assert_eq!(brute_c3_count_for_a(-2), Ok(1));
        assert_eq!(brute_c3_count_for_a(-6), Ok(1));
        assert_eq!(brute_c3_count_for_a(0), Ok(0));
        assert!(brute_c3_count_for_a(1).is_err());
    }

    #[test]
    fn weighted_examples() {
        let m = weighted_count_by_height(9).unwrap();
        assert_eq!(m.into_iter().collect::<Vec<_>>(), [(1, 1), (4, 1), (7, 4)]);
        assert_eq!(weighted_count_by_height(10).unwrap().get(&10), Some(&0));
        assert_eq!(weighted_count_by_height(1).unwrap().into_iter().collect::<Vec<_>>(), [(1, 1)]);
    }

    #[test]
    fn weighted_counts_match_coefficients() {
        for (n, w) in weighted_count_by_height(1501).unwrap() {
            assert_eq!(u64::from(coefficient(n).unwrap()), w, "n = {n}");
        }
    }

    #[test]
    fn brute_matches_exact_formula() {
        for (a, brute) in c3_counts_over(EnumerationRange::new(0, -300).unwrap()) {
            assert_eq!(c3_count_for_a(a), Ok(brute), "a = {a}");
        }
    }

    #[test]
    fn no_c3_with_positive_a() {
        assert_eq!(positive_a_c3_count(12, 2000), 0);
    }

    #[test]
    fn fast_toric_examples() {
        let table = sieve_coefficients(1000, DEFAULT_SIEVE_BUDGET).unwrap();
        let fast = |n: u64| fast_c3_count_toric(n, &table, &reducible_census(n));
        assert_eq!(fast(7), Ok(1));
        assert_eq!(fast(1), Ok(0));
        for n in [100, 400, 900, 1000] {
            let brute: u64 = c3_counts_over(EnumerationRange::up_to_height_squared(n)).iter().map(|p| p.1).sum();
            assert_eq!(fast(n), Ok(brute), "n = {n}");
        }
        assert!(fast_c3_count_toric(7, &table, &reducible_census(10)).is_err());
    }

    #[test]
    fn root_height_examples() {
        assert_eq!(count_c3_root_height(1.0), Ok(0));
        assert_eq!(count_c3_root_height(2.0), Ok(2));
        assert_eq!(count_c3_root_height(libm::sqrt(2.0)), Ok(1));
        assert!(count_c3_root_height(51.0).is_err());
        assert!(count_c3_root_height(f64::NAN).is_err());
    }

    #[test]
    fn split_covers_range() {
        let range = EnumerationRange::up_to_height_squared(3001);
        for parts in [1, 2, 3, 8, 2000] {
            let pieces = range.split(parts);
            assert!(pieces.len() <= parts);
            let joined: Vec<i64> = pieces.iter().flat_map(|r| r.iter()).collect();
            assert_eq!(joined, range.iter().collect::<Vec<_>>());
        }
        assert!(EnumerationRange::new(1, 0).is_err());
    }
}
