//! Double-double floating point: an unevaluated sum `hi + lo` of two `f64`s
//! with `|lo| ≤ ulp(hi)/2`, giving roughly 31 significant decimal digits.
//!
//! Only what the constant evaluations need is provided: the field operations,
//! `sqrt`, `exp`, `ln`, and integer powers.

use alloc::string::String;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct DoubleDouble {
    hi: f64,
    lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, libm::fma(a, b, -p))
}

impl DoubleDouble {
    pub const ZERO: Self = DoubleDouble { hi: 0.0, lo: 0.0 };
    pub const ONE: Self = DoubleDouble { hi: 1.0, lo: 0.0 };
    pub const PI: Self = DoubleDouble { hi: core::f64::consts::PI, lo: 1.2246467991473532e-16 };
    pub const LN_2: Self = DoubleDouble { hi: core::f64::consts::LN_2, lo: 2.3190468138462996e-17 };

    pub const fn from_parts(hi: f64, lo: f64) -> Self {
        DoubleDouble { hi, lo }
    }

    pub fn from_f64(x: f64) -> Self {
        DoubleDouble { hi: x, lo: 0.0 }
    }

    pub fn from_u64(n: u64) -> Self {
        let hi = n as f64;
        // hi rounds n; the remainder is exact in i128.
        let lo = (i128::from(n) - hi as i128) as f64;
        let (hi, lo) = quick_two_sum(hi, lo);
        DoubleDouble { hi, lo }
    }

    pub fn from_i64(n: i64) -> Self {
        if n < 0 {
            -Self::from_u64(n.unsigned_abs())
        } else {
            Self::from_u64(n as u64)
        }
    }

    /// `num / den` to full double-double precision.
    pub fn ratio(num: i64, den: i64) -> Self {
        Self::from_i64(num) / Self::from_i64(den)
    }

    pub fn hi(self) -> f64 {
        self.hi
    }

    pub fn lo(self) -> f64 {
        self.lo
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn abs(self) -> Self {
        if self.hi < 0.0 || (self.hi == 0.0 && self.lo < 0.0) {
            -self
        } else {
            self
        }
    }

    pub fn is_finite(self) -> bool {
        self.hi.is_finite() && self.lo.is_finite()
    }

    pub fn recip(self) -> Self {
        Self::ONE / self
    }

    pub fn square(self) -> Self {
        self * self
    }

    pub fn powi(self, mut k: i32) -> Self {
        if k < 0 {
            return self.powi(-k).recip();
        }
        let mut base = self;
        let mut acc = Self::ONE;
        while k > 0 {
            if k & 1 == 1 {
                acc *= base;
            }
            base = base * base;
            k >>= 1;
        }
        acc
    }

    fn mul_pow2(self, k: i32) -> Self {
        let s = libm::ldexp(1.0, k);
        DoubleDouble { hi: self.hi * s, lo: self.lo * s }
    }

    pub fn sqrt(self) -> Self {
        if self.hi <= 0.0 {
            return Self::ZERO;
        }
        let y = Self::from_f64(libm::sqrt(self.hi));
        // One Newton step from a correctly rounded seed reaches full precision.
        y + (self - y.square()) / (y + y)
    }

    pub fn exp(self) -> Self {
        if self.hi == 0.0 {
            return Self::ONE;
        }
        let k = libm::round(self.hi / Self::LN_2.hi);
        let r = self - Self::LN_2 * Self::from_f64(k);
        const SQUARINGS: i32 = 5;
        let r = r.mul_pow2(-SQUARINGS);
        // Taylor series on |r| < 2^-5 · ln2/2: 18 terms is past 1e-33.
        let mut term = Self::ONE;
        let mut sum = Self::ONE;
        for n in 1..=18 {
            term = term * r / Self::from_u64(n);
            sum += term;
        }
        for _ in 0..SQUARINGS {
            sum = sum.square();
        }
        sum.mul_pow2(k as i32)
    }

    /// Natural logarithm; returns NaN for non-positive inputs.
    pub fn ln(self) -> Self {
        if self.hi <= 0.0 {
            return Self::from_f64(f64::NAN);
        }
        let y = Self::from_f64(libm::log(self.hi));
        y + self * (-y).exp() - Self::ONE
    }

    /// Decimal rendering with `digits` significant digits (scientific form
    /// for magnitudes outside `[1e-4, 1e16)`).
    pub fn to_decimal(self, digits: usize) -> String {
        use core::fmt::Write;
        let mut out = String::new();
        if !self.is_finite() {
            let _ = write!(out, "{}", self.to_f64());
            return out;
        }
        if self.hi == 0.0 {
            out.push('0');
            return out;
        }
        let mut x = self;
        if x.hi < 0.0 {
            out.push('-');
            x = -x;
        }
        let mut exp10 = libm::floor(libm::log10(x.hi)) as i32;
        let mut scaled = x * Self::from_f64(10.0).powi(-exp10);
        if scaled.hi >= 10.0 {
            scaled = scaled / Self::from_f64(10.0);
            exp10 += 1;
        } else if scaled.hi < 1.0 {
            scaled *= Self::from_f64(10.0);
            exp10 -= 1;
        }
        let mut ds = alloc::vec::Vec::with_capacity(digits + 1);
        for _ in 0..=digits {
            let d = libm::floor(scaled.hi).clamp(0.0, 9.0);
            let mut d = d as u8;
            let mut rest = scaled - Self::from_f64(f64::from(d));
            if rest.hi < 0.0 && d > 0 {
                d -= 1;
                rest += Self::ONE;
            }
            ds.push(d);
            scaled = rest * Self::from_f64(10.0);
        }
        // round half up on the guard digit
        let guard = ds.pop().unwrap_or(0);
        if guard >= 5 {
            let mut i = ds.len();
            loop {
                if i == 0 {
                    ds.insert(0, 1);
                    exp10 += 1;
                    ds.pop();
                    break;
                }
                i -= 1;
                if ds[i] == 9 {
                    ds[i] = 0;
                } else {
                    ds[i] += 1;
                    break;
                }
            }
        }
        let push_digits = |out: &mut String, ds: &[u8]| {
            for d in ds {
                out.push((b'0' + d) as char);
            }
        };
        if (-4..16).contains(&exp10) {
            if exp10 < 0 {
                out.push_str("0.");
                for _ in 0..(-exp10 - 1) {
                    out.push('0');
                }
                push_digits(&mut out, &ds);
            } else {
                let int_len = (exp10 as usize + 1).min(ds.len());
                push_digits(&mut out, &ds[..int_len]);
                for _ in ds.len()..(exp10 as usize + 1) {
                    out.push('0');
                }
                if int_len < ds.len() {
                    out.push('.');
                    push_digits(&mut out, &ds[int_len..]);
                }
            }
        } else {
            push_digits(&mut out, &ds[..1]);
            if ds.len() > 1 {
                out.push('.');
                push_digits(&mut out, &ds[1..]);
            }
            let _ = write!(out, "e{exp10}");
        }
        out
    }
}

impl From<f64> for DoubleDouble {
    fn from(x: f64) -> Self {
        Self::from_f64(x)
    }
}

impl Neg for DoubleDouble {
    type Output = Self;
    fn neg(self) -> Self {
        DoubleDouble { hi: -self.hi, lo: -self.lo }
    }
}

impl Add for DoubleDouble {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let (s, e) = two_sum(self.hi, rhs.hi);
        let (t, f) = two_sum(self.lo, rhs.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        DoubleDouble { hi, lo }
    }
}

impl Sub for DoubleDouble {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Mul for DoubleDouble {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let (p, e) = two_prod(self.hi, rhs.hi);
        let e = e + (self.hi * rhs.lo + self.lo * rhs.hi);
        let (hi, lo) = quick_two_sum(p, e);
        DoubleDouble { hi, lo }
    }
}

impl Div for DoubleDouble {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        let q1 = self.hi / rhs.hi;
        let r = self - rhs * Self::from_f64(q1);
        let q2 = r.hi / rhs.hi;
        let r = r - rhs * Self::from_f64(q2);
        let q3 = r.hi / rhs.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        DoubleDouble { hi, lo } + Self::from_f64(q3)
    }
}

impl AddAssign for DoubleDouble {
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl SubAssign for DoubleDouble {
    fn sub_assign(&mut self, rhs: Self) {
        *self = *self - rhs;
    }
}

impl MulAssign for DoubleDouble {
    fn mul_assign(&mut self, rhs: Self) {
        *self = *self * rhs;
    }
}

impl PartialOrd for DoubleDouble {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match self.hi.partial_cmp(&other.hi)? {
            Ordering::Equal => self.lo.partial_cmp(&other.lo),
            ord => Some(ord),
        }
    }
}

impl fmt::Display for DoubleDouble {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().unwrap_or(32);
        f.write_str(&self.to_decimal(digits))
    }
}
