//! The trace-one cubic `t^3 - t^2 + a t + b`: discriminant, exact integer
//! roots, Galois classification, family membership, weights and heights.

use alloc::vec::Vec;
use core::fmt;

use crate::arith::{is_square_i128, isqrt_u128};
use crate::{Error, Result};

/// Coefficients are limited to `|a|, |b| < 2^40` so that every evaluation
/// below fits in `i128`.
pub const COEFF_LIMIT: i64 = 1 << 40;

/// `t^3 - t^2 + a t + b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TraceOneCubic {
    pub a: i64,
    pub b: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GaloisClass {
    C3Irreducible,
    S3Irreducible,
    LinearTimesIrreducibleQuadratic,
    SplitDistinct,
    SplitDouble,
    SplitTriple,
}

impl GaloisClass {
    pub const ALL: [GaloisClass; 6] = [
        GaloisClass::C3Irreducible,
        GaloisClass::S3Irreducible,
        GaloisClass::LinearTimesIrreducibleQuadratic,
        GaloisClass::SplitDistinct,
        GaloisClass::SplitDouble,
        GaloisClass::SplitTriple,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    /// C3 or split with at most two equal roots.
    pub fn in_family(self) -> bool {
        matches!(
            self,
            GaloisClass::C3Irreducible | GaloisClass::SplitDistinct | GaloisClass::SplitDouble
        )
    }

    pub fn name(self) -> &'static str {
        match self {
            GaloisClass::C3Irreducible => "c3_irreducible",
            GaloisClass::S3Irreducible => "s3_irreducible",
            GaloisClass::LinearTimesIrreducibleQuadratic => "linear_times_irreducible_quadratic",
            GaloisClass::SplitDistinct => "split_distinct",
            GaloisClass::SplitDouble => "split_double",
            GaloisClass::SplitTriple => "split_triple",
        }
    }
}

impl TraceOneCubic {
    pub const fn new(a: i64, b: i64) -> Self {
        TraceOneCubic { a, b }
    }

    fn check_range(&self) {
        debug_assert!(self.a.abs() < COEFF_LIMIT && self.b.abs() < COEFF_LIMIT);
    }

    /// `f(k)` evaluated exactly.
    pub fn eval(&self, k: i128) -> i128 {
        ((k - 1) * k + i128::from(self.a)) * k + i128::from(self.b)
    }

    /// `a^2 - 4a^3 + 4b - 27b^2 - 18ab`.
    pub fn discriminant(&self) -> i128 {
        self.check_range();
        let (a, b) = (i128::from(self.a), i128::from(self.b));
        a * a - 4 * a * a * a + 4 * b - 27 * b * b - 18 * a * b
    }

    /// Integer roots with multiplicity, ascending.
    ///
    /// `f` is cut into the monotone pieces between its critical points
    /// `(1 ± √(1-3a))/3` and each piece is binary-searched for a zero, so no
    /// floating point or divisor enumeration is involved.
    pub fn integer_roots(&self) -> Vec<i64> {
        self.check_range();
        let bound = 1 + i128::from(self.a.abs().max(self.b.abs()).max(1));
        let mut distinct: Vec<i128> = Vec::with_capacity(3);
        let mut record = |r: Option<i128>| {
            if let Some(r) = r {
                if !distinct.contains(&r) {
                    distinct.push(r);
                }
            }
        };
        let m = 1 - 3 * i128::from(self.a);
        if m <= 0 {
            record(self.zero_in(-bound, bound, true));
        } else {
            let (lo_c, hi_c) = self.critical_brackets(m);
            record(self.zero_in(-bound, lo_c.0, true));
            record(self.zero_in(lo_c.1, hi_c.0, false));
            record(self.zero_in(hi_c.1, bound, true));
        }
        let mut roots = Vec::with_capacity(3);
        for r in distinct {
            roots.push(r as i64);
            // f''(r) = 6r - 2 never vanishes on integers, so multiplicity ≤ 2.
            if 3 * r * r - 2 * r + i128::from(self.a) == 0 {
                roots.push(r as i64);
            }
        }
        roots.sort_unstable();
        roots
    }

    // ((floor c1, ceil c1), (floor c2, ceil c2)) for c1,2 = (1 ∓ √m)/3.
    fn critical_brackets(&self, m: i128) -> ((i128, i128), (i128, i128)) {
        // 3k ≤ 1 - √m  ⇔  1 - 3k ≥ 0 and (1 - 3k)² ≥ m
        let le_c1 = |k: i128| 1 - 3 * k >= 0 && (1 - 3 * k) * (1 - 3 * k) >= m;
        // 3k ≥ 1 - √m
        let ge_c1 = |k: i128| 1 - 3 * k <= 0 || (1 - 3 * k) * (1 - 3 * k) <= m;
        // 3k ≤ 1 + √m
        let le_c2 = |k: i128| 3 * k - 1 <= 0 || (3 * k - 1) * (3 * k - 1) <= m;
        // 3k ≥ 1 + √m
        let ge_c2 = |k: i128| 3 * k > 0 && (3 * k - 1) * (3 * k - 1) >= m;
        let s = isqrt_u128(m as u128) as i128;
        let c1 = (1 - s).div_euclid(3);
        let c2 = (1 + s).div_euclid(3);
        let largest = |mut k: i128, p: &dyn Fn(i128) -> bool| {
            while !p(k) {
                k -= 1;
            }
            while p(k + 1) {
                k += 1;
            }
            k
        };
        let smallest = |mut k: i128, p: &dyn Fn(i128) -> bool| {
            while !p(k) {
                k += 1;
            }
            while p(k - 1) {
                k -= 1;
            }
            k
        };
        (
            (largest(c1, &le_c1), smallest(c1, &ge_c1)),
            (largest(c2, &le_c2), smallest(c2, &ge_c2)),
        )
    }

    // Zero of f on integers of [lo, hi], where f is monotone there.
    fn zero_in(&self, lo: i128, hi: i128, increasing: bool) -> Option<i128> {
        if lo > hi {
            return None;
        }
        let past = |k: i128| {
            let v = self.eval(k);
            if increasing {
                v >= 0
            } else {
                v <= 0
            }
        };
        if !past(hi) {
            return None;
        }
        let (mut lo, mut hi) = (lo, hi);
        while lo < hi {
            let mid = lo + (hi - lo) / 2;
            if past(mid) {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        (self.eval(lo) == 0).then_some(lo)
    }

    pub fn classify(&self) -> GaloisClass {
        let roots = self.integer_roots();
        match roots.len() {
            0 => {
                let disc = self.discriminant();
                if disc > 0 && is_square_i128(disc).is_some() {
                    GaloisClass::C3Irreducible
                } else {
                    GaloisClass::S3Irreducible
                }
            }
            1 => GaloisClass::LinearTimesIrreducibleQuadratic,
            3 => {
                if roots[0] == roots[2] {
                    GaloisClass::SplitTriple
                } else if roots[0] == roots[1] || roots[1] == roots[2] {
                    GaloisClass::SplitDouble
                } else {
                    GaloisClass::SplitDistinct
                }
            }
            // two integer roots (with multiplicity) force the third
            _ => unreachable!("monic integer cubic with exactly two integer roots"),
        }
    }

    /// Classification restricted to the family: `None` when the discriminant
    /// is not a square, which rules out C3 and every split case.
    pub fn family_class(&self) -> Option<GaloisClass> {
        is_square_i128(self.discriminant())?;
        let class = self.classify();
        class.in_family().then_some(class)
    }

    pub fn in_family(&self) -> bool {
        self.classify().in_family()
    }

    /// 1 for a double root, 2 otherwise.
    pub fn weight(&self) -> Result<u32> {
        match self.classify() {
            GaloisClass::SplitDouble => Ok(1),
            c if c.in_family() => Ok(2),
            _ => Err(Error::NotInFamily { a: self.a, b: self.b }),
        }
    }

    /// `1 - 3a`, the square of the toric height.
    pub fn toric_height_squared(&self) -> Result<u64> {
        if self.a > 0 {
            return Err(Error::Domain("toric height needs a ≤ 0"));
        }
        Ok(1 + 3 * self.a.unsigned_abs())
    }

    pub fn toric_height(&self) -> Result<f64> {
        Ok(libm::sqrt(self.toric_height_squared()? as f64))
    }

    /// `max(|a|^(1/2), |b|^(1/3))`.
    pub fn root_height(&self) -> f64 {
        let ha = libm::sqrt(self.a.unsigned_abs() as f64);
        let hb = libm::cbrt(self.b.unsigned_abs() as f64);
        ha.max(hb)
    }
}

/// Largest `|b|` a family polynomial with this `a ≤ 0` can have.
///
/// The roots are real with `Σx = 1` and `Σx² = 1 - 2a`, so the power-mean
/// inequality gives `|xyz| ≤ ((1 - 2a)/3)^(3/2)`, i.e. `27 b² ≤ (1 - 2a)³`.
pub fn family_b_bound(a: i64) -> i64 {
    assert!(a <= 0);
    let m = 1 + 2 * i128::from(a.unsigned_abs());
    let cube = m * m * m;
    let mut b = isqrt_u128((cube / 27) as u128) as i128;
    while 27 * b * b > cube {
        b -= 1;
    }
    while 27 * (b + 1) * (b + 1) <= cube {
        b += 1;
    }
    b as i64
}

pub(crate) fn write_term(f: &mut fmt::Formatter<'_>, first: bool, negative: bool, body: &str) -> fmt::Result {
    match (first, negative) {
        (true, true) => write!(f, "-{body}"),
        (true, false) => write!(f, "{body}"),
        (false, true) => write!(f, " - {body}"),
        (false, false) => write!(f, " + {body}"),
    }
}

impl fmt::Display for TraceOneCubic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("t^3 - t^2")?;
        match self.a.unsigned_abs() {
            0 => {}
            1 => write_term(f, false, self.a < 0, "t")?,
            m => write_term(f, false, self.a < 0, &alloc::format!("{m} t"))?,
        }
        if self.b != 0 {
            write_term(f, false, self.b < 0, &alloc::format!("{}", self.b.unsigned_abs()))?;
        }
        Ok(())
    }
}
