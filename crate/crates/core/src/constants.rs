//! Leading constants of the counting asymptotics, in double-double precision.
//!
//! The height zeta function is `ζ_K(z)² E(z)` with `K = Q(√−3)`, `z = s/2`, and
//!
//! ```text
//! E(z) = (1 − 3^{−z})² ∏_{q≡2 (3)} (1 − q^{−2z}) ∏_{p≡1 (3)} (1 − 3p^{−2z} + 2p^{−3z}).
//! ```
//!
//! Its Laurent data at `s = 2` is `c₂ = 4L(1,χ)²E(2)` and
//! `c₁ = 4L(1,χ)(γL(1,χ) + L′(1,χ))E(2) + 4L(1,χ)²E′(2)`, derivatives in `s`.
//! Euler products are truncated at a prime cutoff `P ≥ 1000` and carry a
//! rigorous tail bound.
//!
//! Partial products are formed over fixed chunks of [`PRIME_CHUNK`] primes and
//! combined left to right, so any caller that evaluates chunks in parallel and
//! folds them in order reproduces the sequential result bit for bit.

use alloc::vec::Vec;

use crate::arith::primes_up_to;
use crate::ddouble::DoubleDouble as Dd;
use crate::{Error, Result};

/// Default prime cutoff for the Euler products.
pub const DEFAULT_PRIME_CUTOFF: u64 = 10_000_000;
/// Smallest admissible cutoff (the tail bounds assume it).
pub const MIN_PRIME_CUTOFF: u64 = 1_000;
/// Primes per partial-product chunk.
pub const PRIME_CHUNK: usize = 1 << 15;

// Double-double rounding in sums over ~10⁶ terms stays far below this.
const ROUNDING_SLACK: f64 = 1e-24;

/// Even-index Bernoulli numbers `B_2, B_4, …, B_26` as `(numerator, denominator)`.
const BERNOULLI: [(i64, i64); 13] = [
    (1, 6),
    (-1, 30),
    (1, 42),
    (-1, 30),
    (5, 66),
    (-691, 2730),
    (7, 6),
    (-3617, 510),
    (43867, 798),
    (-174611, 330),
    (854513, 138),
    (-236364091, 2730),
    (8553103, 6),
];

fn bernoulli(k: usize) -> Dd {
    let (n, d) = BERNOULLI[k - 1];
    Dd::ratio(n, d)
}

/// A value with an absolute error bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: Dd,
    pub error: f64,
}

impl Estimate {
    pub fn exact(value: Dd) -> Self {
        Estimate { value, error: ROUNDING_SLACK }
    }
}

/// Truncated Euler product (or prime sum) with its tail bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EulerProductValue {
    pub value: Dd,
    pub tail_bound: f64,
    pub prime_cutoff: u64,
}

/// Euler–Mascheroni constant from `H_n − ln n − 1/(2n) + Σ B_{2k}/(2k n^{2k})`.
pub fn euler_gamma() -> Dd {
    const N: u64 = 1000;
    let mut harmonic = Dd::ZERO;
    for k in (1..=N).rev() {
        harmonic += Dd::from_u64(k).recip();
    }
    let n = Dd::from_u64(N);
    let mut gamma = harmonic - n.ln() - (n + n).recip();
    let n2 = n.square();
    let mut pow = n2;
    for k in 1..=6 {
        gamma += bernoulli(k) / (Dd::from_u64(2 * k as u64) * pow);
        pow *= n2;
    }
    gamma
}

/// `ln(2π)`.
pub fn ln_two_pi() -> Dd {
    (Dd::PI + Dd::PI).ln()
}

/// `ln Γ(x)` for `x > 0`, by Stirling's series after shifting to `x + 30`.
pub fn ln_gamma(x: Dd) -> Dd {
    const SHIFT: u64 = 30;
    let mut prod = Dd::ONE;
    for j in 0..SHIFT {
        prod *= x + Dd::from_u64(j);
    }
    let z = x + Dd::from_u64(SHIFT);
    let half = Dd::from_f64(0.5);
    let mut series = (z - half) * z.ln() - z + half * ln_two_pi();
    let z2 = z.square();
    let mut zpow = z;
    for k in 1..=BERNOULLI.len() {
        let kk = 2 * k as u64;
        series += bernoulli(k) / (Dd::from_u64(kk * (kk - 1)) * zpow);
        zpow *= z2;
    }
    series - prod.ln()
}

pub fn gamma_fn(x: Dd) -> Dd {
    ln_gamma(x).exp()
}

/// `ln(Γ(1/3)/Γ(2/3))`.
pub fn ln_gamma_ratio() -> Dd {
    ln_gamma(Dd::ratio(1, 3)) - ln_gamma(Dd::ratio(2, 3))
}

/// `L(1, χ) = π/(3√3)` for the nontrivial character mod 3 (class number formula).
pub fn l1_chi() -> Dd {
    Dd::PI / (Dd::from_f64(3.0) * Dd::from_f64(3.0).sqrt())
}

/// `L′(1, χ) = (π/√3)(⅓(γ + ln 2π) − ln(Γ(1/3)/Γ(2/3)))`.
pub fn lprime1_chi() -> Dd {
    let bracket = (euler_gamma() + ln_two_pi()) / Dd::from_f64(3.0) - ln_gamma_ratio();
    Dd::PI / Dd::from_f64(3.0).sqrt() * bracket
}

/// Running partial products and prime sums over a block of primes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EulerAccum {
    /// `∏ (1 − q⁻²)`, q ≡ 2 (mod 3)
    pub prod_q: Dd,
    /// `∏ (1 − 3p⁻² + 2p⁻³)`, p ≡ 1 (mod 3)
    pub prod_p: Dd,
    /// `Σ ln q/(q² − 1)`
    pub sum_q: Dd,
    /// `Σ 3(p − 1) ln p/(p³ − 3p + 2)`
    pub sum_p: Dd,
    /// `Σ (p + 1) ln p/(p³ − 3p + 2)`, the prime sum of the explicit display
    pub sum_p_display: Dd,
}

impl Default for EulerAccum {
    fn default() -> Self {
        EulerAccum {
            prod_q: Dd::ONE,
            prod_p: Dd::ONE,
            sum_q: Dd::ZERO,
            sum_p: Dd::ZERO,
            sum_p_display: Dd::ZERO,
        }
    }
}

impl EulerAccum {
    /// Accumulates one chunk of ascending primes (2 and 3 are skipped).
    pub fn over(primes: &[u64]) -> Self {
        let mut acc = EulerAccum::default();
        for &p in primes {
            match p % 3 {
                2 => {
                    let q = Dd::from_u64(p);
                    let q2 = q.square();
                    acc.prod_q *= Dd::ONE - q2.recip();
                    acc.sum_q += q.ln() / (q2 - Dd::ONE);
                }
                1 => {
                    let pd = Dd::from_u64(p);
                    let p2 = pd.square();
                    let p3 = p2 * pd;
                    acc.prod_p *= (p3 - Dd::from_f64(3.0) * pd + Dd::from_f64(2.0)) / p3;
                    let ln_p = pd.ln();
                    let cubic = p3 - Dd::from_f64(3.0) * pd + Dd::from_f64(2.0);
                    acc.sum_p += Dd::from_f64(3.0) * (pd - Dd::ONE) * ln_p / cubic;
                    acc.sum_p_display += (pd + Dd::ONE) * ln_p / cubic;
                }
                _ => {}
            }
        }
        acc
    }

    /// `self` followed by `later` (order matters in the last bits).
    pub fn merge(self, later: EulerAccum) -> Self {
        EulerAccum {
            prod_q: self.prod_q * later.prod_q,
            prod_p: self.prod_p * later.prod_p,
            sum_q: self.sum_q + later.sum_q,
            sum_p: self.sum_p + later.sum_p,
            sum_p_display: self.sum_p_display + later.sum_p_display,
        }
    }
}

/// Evaluated Euler data at a given cutoff.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EulerData {
    pub cutoff: u64,
    pub accum: EulerAccum,
}

impl EulerData {
    /// Sequential evaluation with canonical chunking.
    pub fn compute(cutoff: u64) -> Result<Self> {
        check_cutoff(cutoff)?;
        let primes = primes_up_to(cutoff);
        let accum = primes
            .chunks(PRIME_CHUNK)
            .map(EulerAccum::over)
            .fold(EulerAccum::default(), EulerAccum::merge);
        Ok(EulerData { cutoff, accum })
    }

    /// Assembles data from chunk partials already folded in order.
    pub fn from_accum(cutoff: u64, accum: EulerAccum) -> Result<Self> {
        check_cutoff(cutoff)?;
        Ok(EulerData { cutoff, accum })
    }

    /// `Σ_{p > P} 4/p² ≤ 4/P` bounds `|ln| ` of the omitted factors.
    fn product_tail(&self) -> f64 {
        4.0 / self.cutoff as f64
    }

    /// Tail of any of the prime sums: terms are `≤ 3.01 ln n / n²` beyond `P`,
    /// and `Σ_{n>P} ln n/n² ≤ (ln P + 1)/P`.
    pub fn sum_tail(&self) -> f64 {
        let p = self.cutoff as f64;
        4.0 * (libm::log(p) + 1.0) / p
    }

    /// The full product `∏_q ∏_p` without the factor at 3.
    pub fn prime_product(&self) -> EulerProductValue {
        EulerProductValue {
            value: self.accum.prod_q * self.accum.prod_p,
            tail_bound: self.product_tail() + ROUNDING_SLACK,
            prime_cutoff: self.cutoff,
        }
    }

    /// `E(2) = (2/3)² ∏_q ∏_p`.
    pub fn e_at_2(&self) -> EulerProductValue {
        let base = self.prime_product();
        EulerProductValue {
            value: Dd::ratio(4, 9) * base.value,
            tail_bound: 4.0 / 9.0 * base.tail_bound,
            prime_cutoff: self.cutoff,
        }
    }

    /// `E′(2)/E(2) = ½ ln 3 + Σ_q ln q/(q² − 1) + Σ_p 3(p − 1) ln p/(p³ − 3p + 2)`
    /// (the `z`-derivatives scaled by `dz/ds = ½`).
    pub fn log_derivative(&self) -> EulerProductValue {
        let value = Dd::from_f64(3.0).ln() / Dd::from_f64(2.0) + self.accum.sum_q + self.accum.sum_p;
        EulerProductValue {
            value,
            tail_bound: self.sum_tail() + ROUNDING_SLACK,
            prime_cutoff: self.cutoff,
        }
    }

    /// `E′(2)`, derivative in `s`.
    pub fn eprime_at_2(&self) -> EulerProductValue {
        let e = self.e_at_2();
        let s = self.log_derivative();
        // |ES − E_P S_P| ≤ |E − E_P| (S_P + tail_S) + E_P tail_S
        let bound = e.tail_bound * (s.value.to_f64() + s.tail_bound) + e.value.to_f64() * s.tail_bound;
        EulerProductValue { value: e.value * s.value, tail_bound: bound, prime_cutoff: self.cutoff }
    }
}

fn check_cutoff(cutoff: u64) -> Result<()> {
    if cutoff < MIN_PRIME_CUTOFF {
        return Err(Error::Domain("prime cutoff must be at least 1000"));
    }
    Ok(())
}

pub fn e_at_2(cutoff: u64) -> Result<EulerProductValue> {
    Ok(EulerData::compute(cutoff)?.e_at_2())
}

pub fn eprime_at_2(cutoff: u64) -> Result<EulerProductValue> {
    Ok(EulerData::compute(cutoff)?.eprime_at_2())
}

/// Every constant of the report, with routes that must agree.
#[derive(Debug, Clone, PartialEq)]
pub struct ConstantsReport {
    pub prime_cutoff: u64,
    pub gamma_euler: Estimate,
    pub ln_gamma_ratio: Estimate,
    pub l1_chi: Estimate,
    pub lprime1_chi: Estimate,
    pub e2: EulerProductValue,
    pub eprime2: EulerProductValue,
    /// `4L(1,χ)² E(2)`
    pub c2: Estimate,
    /// `16π²/243 ∏_q ∏_p`
    pub c2_display: Estimate,
    pub c1: Estimate,
    /// `c₁/c₂ = γ + L′/L + E′/E`
    pub c1_over_c2: Estimate,
    /// The explicit prime-sum display for `c₁/c₂` (coefficients 9/8, 9/4, 27/4).
    pub c1_over_c2_display: Estimate,
    /// `4π²/81 ∏_q ∏_p`
    pub big_c: Estimate,
    /// `(3/4) c₂`
    pub big_c_from_c2: Estimate,
    /// `C · (c₁/c₂ display)`
    pub d_paper: Estimate,
    /// `(3/4)(c₁ − c₂/2)`
    pub d_standard: Estimate,
    /// `(3/4) c₁`
    pub d_printed_from_laurent: Estimate,
}

impl ConstantsReport {
    pub fn c2_route_delta(&self) -> f64 {
        (self.c2.value - self.c2_display.value).abs().to_f64()
    }

    pub fn c1_over_c2_route_delta(&self) -> f64 {
        (self.c1_over_c2.value - self.c1_over_c2_display.value).abs().to_f64()
    }

    pub fn big_c_route_delta(&self) -> f64 {
        (self.big_c.value - self.big_c_from_c2.value).abs().to_f64()
    }

    /// The two candidate constants for `(S(X) − (c₂/4) X ln X)/X`:
    /// `(c₁/2 − c₂/4, c₁/2)`.
    pub fn second_term_candidates(&self) -> (f64, f64) {
        let c1 = self.c1.value.to_f64();
        let c2 = self.c2.value.to_f64();
        (c1 / 2.0 - c2 / 4.0, c1 / 2.0)
    }
}

/// Builds the report from Euler data (computed sequentially or in parallel).
pub fn constants_report(euler: &EulerData) -> ConstantsReport {
    let three = Dd::from_f64(3.0);
    let gamma = euler_gamma();
    let ratio = ln_gamma_ratio();
    let l1 = l1_chi();
    let lp = lprime1_chi();
    let e2 = euler.e_at_2();
    let ep2 = euler.eprime_at_2();
    let prod = euler.prime_product();
    let logd = euler.log_derivative();

    let four_l2 = Dd::from_f64(4.0) * l1.square();
    let c2 = four_l2 * e2.value;
    let c2_err = four_l2.to_f64() * e2.tail_bound;
    let pi2 = Dd::PI.square();
    let c2_display = Dd::ratio(16, 243) * pi2 * prod.value;
    let c2_display_err = (Dd::ratio(16, 243) * pi2).to_f64() * prod.tail_bound;

    let c1 = Dd::from_f64(4.0) * l1 * (gamma * l1 + lp) * e2.value + four_l2 * ep2.value;
    let c1_err = (Dd::from_f64(4.0) * l1 * (gamma * l1 + lp)).abs().to_f64() * e2.tail_bound
        + four_l2.to_f64() * ep2.tail_bound;
    let c1_over_c2 = gamma + lp / l1 + logd.value;

    let display = Dd::from_f64(2.0) * gamma + ln_two_pi() - three * ratio
        + Dd::ratio(9, 8) * three.ln()
        + Dd::ratio(9, 4) * euler.accum.sum_q
        + Dd::ratio(27, 4) * euler.accum.sum_p_display;
    let display_err = (9.0 / 4.0 + 27.0 / 4.0) * euler.sum_tail();

    let big_c = Dd::ratio(4, 81) * pi2 * prod.value;
    let big_c_err = (Dd::ratio(4, 81) * pi2).to_f64() * prod.tail_bound;
    let big_c_from_c2 = Dd::ratio(3, 4) * c2;

    let d_paper = big_c * display;
    let d_paper_err = big_c_err * display.to_f64() + big_c.to_f64() * display_err;
    let d_standard = Dd::ratio(3, 4) * (c1 - c2 / Dd::from_f64(2.0));

    ConstantsReport {
        prime_cutoff: euler.cutoff,
        gamma_euler: Estimate::exact(gamma),
        ln_gamma_ratio: Estimate::exact(ratio),
        l1_chi: Estimate::exact(l1),
        lprime1_chi: Estimate::exact(lp),
        e2,
        eprime2: ep2,
        c2: Estimate { value: c2, error: c2_err },
        c2_display: Estimate { value: c2_display, error: c2_display_err },
        c1: Estimate { value: c1, error: c1_err },
        c1_over_c2: Estimate { value: c1_over_c2, error: logd.tail_bound },
        c1_over_c2_display: Estimate { value: display, error: display_err },
        big_c: Estimate { value: big_c, error: big_c_err },
        big_c_from_c2: Estimate { value: big_c_from_c2, error: 0.75 * c2_err },
        d_paper: Estimate { value: d_paper, error: d_paper_err },
        d_standard: Estimate { value: d_standard, error: 0.75 * (c1_err + c2_err / 2.0) },
        d_printed_from_laurent: Estimate { value: Dd::ratio(3, 4) * c1, error: 0.75 * c1_err },
    }
}

/// Primes up to `cutoff` split into canonical chunks.
pub fn prime_chunks(cutoff: u64) -> Vec<Vec<u64>> {
    primes_up_to(cutoff).chunks(PRIME_CHUNK).map(|c| c.to_vec()).collect()
}
