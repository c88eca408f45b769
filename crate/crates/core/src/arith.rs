//! Integer factorization, divisors and the small multiplicative functions
//! (ω, Ω, residue-class parts) the counting formulas are assembled from.

use alloc::vec;
use alloc::vec::Vec;

use crate::{Error, Result};

/// Default cap on sieve table entries (a table of `10^8 + 1` `u32`s).
pub const DEFAULT_SIEVE_BUDGET: u64 = 100_000_001;

const TRIAL_DIVISION_LIMIT: u64 = 1_000_000;

/// A positive integer together with its prime-power decomposition.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Factorization {
    n: u64,
    factors: Vec<(u64, u32)>,
}

impl Factorization {
    /// The factorization of 1.
    pub fn one() -> Self {
        Factorization { n: 1, factors: Vec::new() }
    }

    /// Builds a factorization from `(p, e)` pairs; primes must be increasing.
    ///
    /// Primality of the entries is the caller's responsibility.
    pub fn from_factors(factors: Vec<(u64, u32)>) -> Result<Self> {
        let mut n: u64 = 1;
        let mut prev = 1;
        for &(p, e) in &factors {
            if p <= prev || e == 0 {
                return Err(Error::Domain("factors must have increasing primes and positive exponents"));
            }
            prev = p;
            for _ in 0..e {
                n = n.checked_mul(p).ok_or(Error::Domain("factor product overflows u64"))?;
            }
        }
        Ok(Factorization { n, factors })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    /// Exponent of `p` in `n`.
    pub fn valuation(&self, p: u64) -> u32 {
        self.factors.iter().find(|&&(q, _)| q == p).map_or(0, |&(_, e)| e)
    }

    /// Number of distinct prime factors.
    pub fn omega(&self) -> u32 {
        self.factors.len() as u32
    }

    /// Number of prime factors counted with multiplicity.
    pub fn big_omega(&self) -> u32 {
        self.factors.iter().map(|&(_, e)| e).sum()
    }

    /// Largest divisor of `n` built only from primes `≡ j (mod 3)`, `j ∈ {1, 2}`.
    pub fn residue_part(&self, j: u8) -> Result<u64> {
        if j != 1 && j != 2 {
            return Err(Error::Domain("residue class must be 1 or 2"));
        }
        Ok(self
            .factors
            .iter()
            .filter(|&&(p, _)| p % 3 == u64::from(j))
            .map(|&(p, e)| p.pow(e))
            .product())
    }

    /// The sub-factorization supported on primes `≡ j (mod 3)`.
    pub fn residue_factors(&self, j: u8) -> impl Iterator<Item = (u64, u32)> + '_ {
        self.factors.iter().copied().filter(move |&(p, _)| p % 3 == u64::from(j))
    }

    /// Number of divisors, `∏(e + 1)`.
    pub fn divisor_count(&self) -> u64 {
        self.factors.iter().map(|&(_, e)| u64::from(e) + 1).product()
    }

    /// All divisors in ascending order.
    pub fn divisors(&self) -> Vec<u64> {
        let mut out = vec![1u64];
        for &(p, e) in &self.factors {
            let len = out.len();
            let mut pk = 1;
            for _ in 0..e {
                pk *= p;
                for i in 0..len {
                    out.push(out[i] * pk);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Divisors paired with their own factorizations (unordered).
    pub fn divisors_factored(&self) -> Vec<Factorization> {
        let mut out = vec![Factorization::one()];
        for &(p, e) in &self.factors {
            let len = out.len();
            for k in 1..=e {
                for i in 0..len {
                    let mut f = out[i].clone();
                    f.n *= p.pow(k);
                    f.factors.push((p, k));
                    out.push(f);
                }
            }
        }
        out
    }
}

/// Factors `1 ≤ n < 2^63`.
pub fn factorize(n: u64) -> Result<Factorization> {
    if n == 0 {
        return Err(Error::Domain("cannot factor 0"));
    }
    if n >= 1 << 63 {
        return Err(Error::Domain("factorize requires n < 2^63"));
    }
    let mut rest = n;
    let mut factors = Vec::new();
    let mut push = |p: u64, rest: &mut u64| {
        let mut e = 0;
        while (*rest).is_multiple_of(p) {
            *rest /= p;
            e += 1;
        }
        if e > 0 {
            factors.push((p, e));
        }
    };
    push(2, &mut rest);
    push(3, &mut rest);
    let mut p = 5;
    while p <= TRIAL_DIVISION_LIMIT && p * p <= rest {
        push(p, &mut rest);
        push(p + 2, &mut rest);
        p += 6;
    }
    if rest > 1 {
        let mut large = Vec::new();
        split_large(rest, &mut large);
        large.sort_unstable();
        for q in large {
            match factors.last_mut() {
                Some((last, e)) if *last == q => *e += 1,
                _ => factors.push((q, 1)),
            }
        }
    }
    Ok(Factorization { n, factors })
}

fn split_large(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.push(n);
        return;
    }
    if let Some(r) = isqrt_exact(n) {
        split_large(r, out);
        split_large(r, out);
        return;
    }
    let mut c = 1;
    loop {
        if let Some(d) = pollard_brent(n, c) {
            split_large(d, out);
            split_large(n / d, out);
            return;
        }
        c += 1;
    }
}

fn isqrt_exact(n: u64) -> Option<u64> {
    let r = isqrt_u64(n);
    (r * r == n).then_some(r)
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((u128::from(a) * u128::from(b)) % u128::from(m)) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin for all 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &p in &BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'bases: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

// Brent's variant of Pollard rho; None means this constant failed.
fn pollard_brent(n: u64, c: u64) -> Option<u64> {
    let f = |x: u64| (mul_mod(x, x, n) + c) % n;
    let (mut y, mut r, mut q) = (2u64, 1u64, 1u64);
    let mut g = 1;
    let mut x = y;
    let mut ys = y;
    const M: u64 = 128;
    while g == 1 {
        x = y;
        for _ in 0..r {
            y = f(y);
        }
        let mut k = 0;
        while k < r && g == 1 {
            ys = y;
            for _ in 0..M.min(r - k) {
                y = f(y);
                q = mul_mod(q, x.abs_diff(y), n);
            }
            g = gcd(q, n);
            k += M;
        }
        r *= 2;
        if r > 1 << 40 {
            return None;
        }
    }
    if g == n {
        loop {
            ys = f(ys);
            g = gcd(x.abs_diff(ys), n);
            if g > 1 {
                break;
            }
        }
    }
    (g != n).then_some(g)
}

/// Floor square root of a 64-bit integer.
pub fn isqrt_u64(n: u64) -> u64 {
    let mut r = libm::sqrt(n as f64) as u64;
    while r.checked_mul(r).is_none_or(|sq| sq > n) {
        r -= 1;
    }
    while (r + 1).checked_mul(r + 1).is_some_and(|sq| sq <= n) {
        r += 1;
    }
    r
}

/// Floor square root of a 128-bit integer.
pub fn isqrt_u128(n: u128) -> u128 {
    if n < 1 << 52 {
        return u128::from(isqrt_u64(n as u64));
    }
    // f64 seed is within a few ulps; Newton cleans up the rest.
    let mut r = libm::sqrt(n as f64) as u128;
    loop {
        let next = (r + n / r) / 2;
        if next >= r {
            break;
        }
        r = next;
    }
    while r.checked_mul(r).is_none_or(|sq| sq > n) {
        r -= 1;
    }
    while (r + 1).checked_mul(r + 1).is_some_and(|sq| sq <= n) {
        r += 1;
    }
    r
}

/// Returns the square root when `n` is a perfect square.
pub fn is_square(n: u128) -> Option<u128> {
    // Quadratic residues mod 64 reject most non-squares cheaply.
    const QR64: u64 = {
        let mut mask = 0u64;
        let mut k = 0;
        while k < 64 {
            mask |= 1 << ((k * k) % 64);
            k += 1;
        }
        mask
    };
    if (QR64 >> (n & 63)) & 1 == 0 {
        return None;
    }
    let r = isqrt_u128(n);
    (r * r == n).then_some(r)
}

/// Signed convenience wrapper: negative numbers are never squares.
pub fn is_square_i128(n: i128) -> Option<u128> {
    if n < 0 {
        None
    } else {
        is_square(n as u128)
    }
}

/// Smallest-prime-factor table for `0..=limit` (entries 0 and 1 are 0).
#[derive(Debug, Clone)]
pub struct SpfSieve {
    table: Vec<u32>,
}

impl SpfSieve {
    pub fn limit(&self) -> u64 {
        self.table.len() as u64 - 1
    }

    pub fn smallest_prime_factor(&self, k: u64) -> u32 {
        self.table[k as usize]
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.table
    }

    /// Assembles a table from consecutive segments starting at 0.
    pub fn from_segments(segments: impl IntoIterator<Item = Vec<u32>>) -> Self {
        let mut table = Vec::new();
        for seg in segments {
            table.extend(seg);
        }
        SpfSieve { table }
    }

    /// Factors `1 ≤ n ≤ limit` by repeated table lookup; larger `n` falls back to [`factorize`].
    pub fn factorize(&self, n: u64) -> Result<Factorization> {
        if n == 0 {
            return Err(Error::Domain("cannot factor 0"));
        }
        if n > self.limit() {
            return factorize(n);
        }
        let mut factors: Vec<(u64, u32)> = Vec::new();
        let mut rest = n;
        while rest > 1 {
            let p = u64::from(self.table[rest as usize]);
            let mut e = 0;
            while rest.is_multiple_of(p) {
                rest /= p;
                e += 1;
            }
            factors.push((p, e));
        }
        Ok(Factorization { n, factors })
    }
}

/// Primes `≤ limit` by a plain sieve of Eratosthenes over odd numbers.
pub fn primes_up_to(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let half = (limit as usize - 1) / 2; // odd numbers 3, 5, ..., index i ↦ 2i + 3
    let mut composite = vec![false; half];
    let mut i = 0;
    while i < half {
        let p = 2 * i + 3;
        if p * p > limit as usize {
            break;
        }
        if !composite[i] {
            let mut j = (p * p - 3) / 2;
            while j < half {
                composite[j] = true;
                j += p;
            }
        }
        i += 1;
    }
    let mut out = Vec::with_capacity(half / 8 + 1);
    out.push(2);
    out.extend(
        composite
            .iter()
            .enumerate()
            .filter(|(_, &c)| !c)
            .map(|(i, _)| 2 * i as u64 + 3),
    );
    out
}

/// Smallest-prime-factor entries for `lo..hi`.
///
/// `base_primes` must contain every prime `p` with `p² < hi`, ascending.
pub fn spf_segment(lo: u64, hi: u64, base_primes: &[u64]) -> Vec<u32> {
    assert!(lo <= hi && hi <= u64::from(u32::MAX));
    let mut seg = vec![0u32; (hi - lo) as usize];
    for &p in base_primes {
        if p * p >= hi {
            break;
        }
        let mut m = (p * p).max(lo.div_ceil(p) * p);
        while m < hi {
            let slot = &mut seg[(m - lo) as usize];
            if *slot == 0 {
                *slot = p as u32;
            }
            m += p;
        }
    }
    for (k, slot) in (lo..hi).zip(seg.iter_mut()) {
        if *slot == 0 && k >= 2 {
            *slot = k as u32;
        }
    }
    seg
}

/// Segment length used by [`spf_sieve`].
pub const SEGMENT_LEN: u64 = 1 << 20;

/// Smallest-prime-factor table up to `limit`, built segment by segment.
pub fn spf_sieve(limit: u64, budget: u64) -> Result<SpfSieve> {
    if limit < 2 {
        return Err(Error::Domain("sieve limit must be at least 2"));
    }
    if limit + 1 > budget {
        return Err(Error::Budget { requested: limit + 1, limit: budget });
    }
    let base = primes_up_to(isqrt_u64(limit) + 1);
    let mut table = Vec::with_capacity(limit as usize + 1);
    let mut lo = 0;
    while lo <= limit {
        let hi = (lo + SEGMENT_LEN).min(limit + 1);
        table.extend(spf_segment(lo, hi, &base));
        lo = hi;
    }
    Ok(SpfSieve { table })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn trial_is_prime(n: u64) -> bool {
        n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
    }

    #[test]
    fn factorize_examples() {
        assert!(factorize(1).unwrap().factors().is_empty());
        assert_eq!(factorize(12).unwrap().factors(), &[(2, 2), (3, 1)]);
        assert_eq!(factorize(571).unwrap().factors(), &[(571, 1)]);
        assert!(trial_is_prime(571));
        assert!(factorize(0).is_err());
        assert!(factorize(1 << 63).is_err());
    }

    #[test]
    fn factorize_large_semiprimes() {
        let p = 1_000_000_007u64;
        let q = 998_244_353u64;
        assert_eq!(factorize(p * q).unwrap().factors(), &[(q, 1), (p, 1)]);
        assert_eq!(factorize(p * p).unwrap().factors(), &[(p, 2)]);
        let big = 4_611_686_018_427_387_847; // prime just below 2^62
        assert!(is_prime(big));
        assert_eq!(factorize(big).unwrap().factors(), &[(big, 1)]);
    }

    #[test]
    fn residue_parts() {
        let f14 = factorize(14).unwrap();
        assert_eq!(f14.residue_part(1).unwrap(), 7);
        assert_eq!(f14.residue_part(2).unwrap(), 2);
        assert_eq!(factorize(1).unwrap().residue_part(1).unwrap(), 1);
        assert_eq!(factorize(45).unwrap().residue_part(2).unwrap(), 5);
        assert!(f14.residue_part(0).is_err());
    }

    #[test]
    fn omegas() {
        for (n, w, bw) in [(12, 2, 3), (1, 0, 0), (49, 1, 2)] {
            let f = factorize(n).unwrap();
            assert_eq!((f.omega(), f.big_omega()), (w, bw));
        }
    }

    #[test]
    fn divisor_lists() {
        assert_eq!(factorize(1).unwrap().divisors(), [1]);
        assert_eq!(factorize(7).unwrap().divisors(), [1, 7]);
        assert_eq!(factorize(12).unwrap().divisors(), [1, 2, 3, 4, 6, 12]);
    }

    #[test]
    fn spf_examples() {
        let s = spf_sieve(10, DEFAULT_SIEVE_BUDGET).unwrap();
        assert_eq!(s.smallest_prime_factor(9), 3);
        assert_eq!(s.smallest_prime_factor(7), 7);
        let s = spf_sieve(100, DEFAULT_SIEVE_BUDGET).unwrap();
        assert_eq!(s.smallest_prime_factor(91), 7);
        assert!(matches!(spf_sieve(1000, 500), Err(Error::Budget { .. })));
        assert!(spf_sieve(1, 500).is_err());
    }

    #[test]
    fn spf_matches_trial_division_across_segments() {
        let limit = 3 * SEGMENT_LEN + 17;
        let s = spf_sieve(limit, DEFAULT_SIEVE_BUDGET).unwrap();
        let check = |k: u64| {
            let p = (2..=k).find(|d| k.is_multiple_of(*d)).unwrap();
            assert_eq!(u64::from(s.smallest_prime_factor(k)), p, "k = {k}");
        };
        for k in 2..2000 {
            check(k);
        }
        for k in (SEGMENT_LEN - 50)..(SEGMENT_LEN + 50) {
            check(k);
        }
        for k in (limit - 100)..=limit {
            check(k);
        }
    }

    #[test]
    fn primes_agree_with_trial_division() {
        let ps = primes_up_to(10_000);
        let brute: Vec<u64> = (0..=10_000).filter(|&n| trial_is_prime(n)).collect();
        assert_eq!(ps, brute);
        assert!(primes_up_to(1).is_empty());
        assert_eq!(primes_up_to(2), [2]);
    }

    #[test]
    fn residue_decomposition_up_to_1e6() {
        let s = spf_sieve(1_000_000, DEFAULT_SIEVE_BUDGET).unwrap();
        for n in 1..=1_000_000u64 {
            let f = s.factorize(n).unwrap();
            let v3 = 3u64.pow(f.valuation(3));
            assert_eq!(f.residue_part(1).unwrap() * f.residue_part(2).unwrap() * v3, n);
        }
    }

    #[test]
    fn is_square_exhaustive_to_1e6() {
        let mut next_root = 0u128;
        for n in 0..=1_000_000u128 {
            let expect = if next_root * next_root == n {
                next_root += 1;
                Some(next_root - 1)
            } else {
                None
            };
            assert_eq!(is_square(n), expect, "n = {n}");
        }
        assert_eq!(is_square(49), Some(7));
        assert_eq!(is_square(48), None);
        assert_eq!(is_square(0), Some(0));
    }

    #[test]
    fn is_square_wide() {
        let r: u128 = (1 << 63) + 12345;
        assert_eq!(is_square(r * r), Some(r));
        assert_eq!(is_square(r * r + 1), None);
        assert_eq!(is_square(r * r - 1), None);
        let m = (1u128 << 127) - 1;
        assert!(isqrt_u128(m) * isqrt_u128(m) <= m);
        assert!((isqrt_u128(m) + 1) * (isqrt_u128(m) + 1) > m);
    }

    proptest! {
        #[test]
        fn factorization_invariants(n in 1u64..(1 << 62)) {
            let f = factorize(n).unwrap();
            let mut prod = 1u64;
            let mut prev = 1;
            for &(p, e) in f.factors() {
                prop_assert!(p > prev);
                prop_assert!(is_prime(p));
                prev = p;
                prod *= p.pow(e);
            }
            prop_assert_eq!(prod, n);
            prop_assert_eq!(f.divisors().len() as u64, f.divisor_count());
        }

        #[test]
        fn coprime_multiplicativity(m in 1u64..100_000, n in 1u64..100_000) {
            prop_assume!(gcd(m, n) == 1);
            let (fm, fn_, fmn) = (factorize(m).unwrap(), factorize(n).unwrap(), factorize(m * n).unwrap());
            prop_assert_eq!(fmn.big_omega(), fm.big_omega() + fn_.big_omega());
            prop_assert_eq!(fmn.omega(), fm.omega() + fn_.omega());
            for j in [1, 2] {
                prop_assert_eq!(fmn.residue_part(j).unwrap(), fm.residue_part(j).unwrap() * fn_.residue_part(j).unwrap());
            }
        }
    }
}
