//! Dirichlet coefficients `d_n` of the height zeta function: the weighted
//! number of family polynomials with toric height `√n`.
//!
//! Two independent routes are kept: the divisor sum
//! `Σ_{d|n} 3^ω(P₁(d)) (-1)^Ω(P₂(d))` ([`coefficient`]) and the closed product
//! `∏_{p≡1} (1 + 3 v_p(n))`, zero when `3 | n` or some `q ≡ 2` divides `n` to
//! odd order ([`coefficient_closed`]). The sieve uses the closed form.
//!
//! `d_n` is taken to be 0 whenever `3 | n`: the Euler factor at 3 is absent
//! from the zeta function, and the divisor-sum formula is only asserted for
//! `3 ∤ n`.

use alloc::vec;
use alloc::vec::Vec;

use crate::arith::{factorize, isqrt_u64, primes_up_to, Factorization};
use crate::{Error, Result};

/// Sieved coefficients `d_1..=d_N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoefficientTable {
    // values[i] = d_{i+1}
    values: Vec<u32>,
}

impl CoefficientTable {
    /// Wraps raw values `d_1..=d_N`.
    pub fn from_values(values: Vec<u32>) -> Self {
        CoefficientTable { values }
    }

    pub fn limit(&self) -> u64 {
        self.values.len() as u64
    }

    /// `d_n` for `1 ≤ n ≤ limit`.
    pub fn get(&self, n: u64) -> Option<u32> {
        n.checked_sub(1).and_then(|i| self.values.get(i as usize)).copied()
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    /// `Σ_{n ≤ x} d_n`.
    pub fn partial_sum(&self, x: u64) -> Result<u64> {
        if x > self.limit() {
            return Err(Error::Domain("partial sum beyond table limit"));
        }
        Ok(self.values[..x as usize].iter().map(|&d| u64::from(d)).sum())
    }

    /// Running sums `S(1), …, S(N)`.
    pub fn prefix_sums(&self) -> Vec<u64> {
        self.values
            .iter()
            .scan(0u64, |acc, &d| {
                *acc += u64::from(d);
                Some(*acc)
            })
            .collect()
    }
}

/// The divisor-sum term `3^ω(P₁(d)) (-1)^Ω(P₂(d))`.
fn divisor_term(d: &Factorization) -> i64 {
    let mut term = 1i64;
    for (p, e) in d.factors() {
        match p % 3 {
            1 => term *= 3,
            2 if e % 2 == 1 => term = -term,
            _ => {}
        }
    }
    term
}

/// Divisor sum evaluated from a factorization (0 when `3 | n`).
pub fn coefficient_from_factorization(f: &Factorization) -> u32 {
    if f.valuation(3) > 0 {
        return 0;
    }
    let sum: i64 = f.divisors_factored().iter().map(divisor_term).sum();
    debug_assert!(sum >= 0);
    sum as u32
}

/// `d_n` by the divisor sum.
pub fn coefficient(n: u64) -> Result<u32> {
    if n == 0 {
        return Err(Error::Domain("coefficients are indexed from 1"));
    }
    if n.is_multiple_of(3) {
        log::debug!("d_{n} = 0: coefficients vanish at multiples of 3");
        return Ok(0);
    }
    Ok(coefficient_from_factorization(&factorize(n)?))
}

/// Closed product form evaluated from a factorization.
pub fn closed_from_factorization(f: &Factorization) -> u32 {
    let mut d = 1u32;
    for &(p, e) in f.factors() {
        match p % 3 {
            0 => return 0,
            1 => d *= 1 + 3 * e,
            _ if e % 2 == 1 => return 0,
            _ => {}
        }
    }
    d
}

/// `d_n` by the closed product form.
pub fn coefficient_closed(n: u64) -> Result<u32> {
    if n == 0 {
        return Err(Error::Domain("coefficients are indexed from 1"));
    }
    Ok(closed_from_factorization(&factorize(n)?))
}

/// Primes needed to sieve any segment ending at or below `limit`.
pub fn base_primes(limit: u64) -> Vec<u64> {
    primes_up_to(isqrt_u64(limit) + 1)
}

/// Coefficients `d_n` for `n ∈ [lo, hi)`, `lo ≥ 1`.
///
/// `base_primes` must include every prime `p ≤ √(hi - 1)`.
pub fn coefficient_segment(lo: u64, hi: u64, base_primes: &[u64]) -> Vec<u32> {
    assert!(lo >= 1 && lo <= hi);
    let len = (hi - lo) as usize;
    let mut rest: Vec<u64> = (lo..hi).collect();
    let mut d = vec![1u32; len];
    for &p in base_primes {
        if p * p >= hi {
            break;
        }
        let mut m = lo.div_ceil(p) * p;
        while m < hi {
            let i = (m - lo) as usize;
            let mut e = 0;
            while rest[i].is_multiple_of(p) {
                rest[i] /= p;
                e += 1;
            }
            d[i] = match p % 3 {
                0 => 0,
                1 => d[i] * (1 + 3 * e),
                _ if e % 2 == 1 => 0,
                _ => d[i],
            };
            m += p;
        }
    }
    // whatever is left is 1 or a single prime above √hi
    for (r, di) in rest.iter().zip(d.iter_mut()) {
        if *r > 1 {
            *di = if r % 3 == 1 { *di * 4 } else { 0 };
        }
    }
    d
}

/// `Σ_{lo ≤ n < hi} d_n` without materializing a table.
pub fn partial_sum_segment(lo: u64, hi: u64, base_primes: &[u64]) -> u64 {
    coefficient_segment(lo, hi, base_primes).iter().map(|&d| u64::from(d)).sum()
}

/// Segment length used by the sequential sieve.
pub const SEGMENT_LEN: u64 = 1 << 18;

/// Sieves `d_1..=d_N` sequentially.
pub fn sieve_coefficients(limit: u64, budget: u64) -> Result<CoefficientTable> {
    if limit == 0 {
        return Err(Error::Domain("coefficient table needs N ≥ 1"));
    }
    if limit > budget {
        return Err(Error::Budget { requested: limit, limit: budget });
    }
    let base = base_primes(limit);
    let mut values = Vec::with_capacity(limit as usize);
    let mut lo = 1;
    while lo <= limit {
        let hi = (lo + SEGMENT_LEN).min(limit + 1);
        values.extend(coefficient_segment(lo, hi, &base));
        lo = hi;
    }
    Ok(CoefficientTable { values })
}

/// `Σ_{n ≤ x} d_n` by streaming segments; memory is one segment.
pub fn partial_sum_streaming(x: u64) -> u64 {
    let base = base_primes(x.max(1));
    let mut total = 0;
    let mut lo = 1;
    while lo <= x {
        let hi = (lo + SEGMENT_LEN).min(x + 1);
        total += partial_sum_segment(lo, hi, &base);
        lo = hi;
    }
    total
}

/// Which second-order term to use in the Tauberian main term.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SecondTerm {
    /// Residue of `X^z/z` against a double pole: `(c₁/2 − c₂/4) X`.
    Standard,
    /// `(c₁/2) X`, the variant that drops the `-1/z` correction.
    AsPrinted,
}

/// Main term of `Σ_{n ≤ X} d_n` from the Laurent data
/// `c₂(s−2)^{-2} + c₁(s−2)^{-1}` at `s = 2` (with `d_n` weighted by `n^{-s/2}`).
pub fn main_term(x: f64, c2: f64, c1: f64, variant: SecondTerm) -> f64 {
    let linear = match variant {
        SecondTerm::Standard => c1 / 2.0 - c2 / 4.0,
        SecondTerm::AsPrinted => c1 / 2.0,
    };
    c2 / 4.0 * x * libm::log(x) + linear * x
}

/// `(S(X) − (c₂/4) X ln X) / X`, the empirical second-order constant.
pub fn second_order_constant(partial_sum: u64, x: f64, c2: f64) -> f64 {
    (partial_sum as f64 - c2 / 4.0 * x * libm::log(x)) / x
}
