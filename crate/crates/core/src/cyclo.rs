//! Parametrization of family polynomials by elements `u + vζ` of `Q(√−3)`,
//! `ζ` a primitive cube root of unity.
//!
//! An element with norm `N = u² + v² − uv` and trace `T = 2u − v` maps to
//! `t³ − t² + (1 − N)/3 · t + (N(3 − T) − 1)/27`; conversely the elements over
//! `t³ − t² + a t + b` are the roots of `t² − T t + N` with `N = 1 − 3a` and
//! `T = 3 − (1 + 27b)/(1 − 3a)`. All arithmetic is exact.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::is_square;
use crate::cubic::{write_term, TraceOneCubic};
use crate::{Error, Result};

pub type Rational = BigRational;

pub fn rational(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn integer(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Sign convention for the constant term of the cubic.
///
/// `Table` is `b = −(1 + N(T − 3))/27`, which reproduces the worked table of
/// C3 polynomials and their quadratics; `AsPrinted` flips the sign of `b`
/// (and correspondingly uses `1 − 27b` in the trace), and is kept only for
/// comparison since it pairs `N = 7, T = −1` with a polynomial of
/// discriminant −31.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SignConvention {
    #[default]
    Table,
    AsPrinted,
}

/// `u + vζ ∈ Q(√−3)`, nonzero.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CycloElement {
    u: Rational,
    v: Rational,
}

impl CycloElement {
    pub fn new(u: Rational, v: Rational) -> Result<Self> {
        if u.is_zero() && v.is_zero() {
            return Err(Error::Domain("the zero element has no polynomial"));
        }
        Ok(CycloElement { u, v })
    }

    pub fn from_ints(u: i64, v: i64) -> Result<Self> {
        Self::new(integer(u), integer(v))
    }

    pub fn u(&self) -> &Rational {
        &self.u
    }

    pub fn v(&self) -> &Rational {
        &self.v
    }

    pub fn norm(&self) -> Rational {
        &self.u * &self.u + &self.v * &self.v - &self.u * &self.v
    }

    pub fn trace(&self) -> Rational {
        &self.u + &self.u - &self.v
    }

    /// `(N, T)`.
    pub fn norm_trace(&self) -> (Rational, Rational) {
        (self.norm(), self.trace())
    }

    /// Product, using `ζ² = −1 − ζ`.
    pub fn multiply(&self, other: &CycloElement) -> CycloElement {
        let vv = &self.v * &other.v;
        CycloElement {
            u: &self.u * &other.u - &vv,
            v: &self.u * &other.v + &self.v * &other.u - vv,
        }
    }

    /// `(a, b)` of the characteristic polynomial `t³ − t² + a t + b`.
    pub fn to_cubic(&self, convention: SignConvention) -> (Rational, Rational) {
        let (n, t) = self.norm_trace();
        let one = Rational::one();
        let a = (&one - &n) / integer(3);
        let b = match convention {
            SignConvention::Table => (&n * (integer(3) - &t) - &one) / integer(27),
            SignConvention::AsPrinted => (&one + &n * (&t - integer(3))) / integer(27),
        };
        (a, b)
    }

    /// The image cubic when its coefficients are integers.
    pub fn to_integral_cubic(&self) -> Option<TraceOneCubic> {
        let (a, b) = self.to_cubic(SignConvention::Table);
        if !a.is_integer() || !b.is_integer() {
            return None;
        }
        let a: i64 = a.to_integer().try_into().ok()?;
        let b: i64 = b.to_integer().try_into().ok()?;
        Some(TraceOneCubic::new(a, b))
    }

    /// `N ∈ 1 + 3Z` and `N(3 − T) ∈ 1 + 27Z`.
    pub fn is_integral_image(&self) -> bool {
        let (n, t) = self.norm_trace();
        let in_coset = |x: &Rational, modulus: i64| {
            x.is_integer() && (x.to_integer() - BigInt::one()) % BigInt::from(modulus) == BigInt::zero()
        };
        in_coset(&n, 3) && in_coset(&(&n * (integer(3) - t)), 27)
    }

    /// `√N`.
    pub fn height(&self) -> f64 {
        let n = self.norm();
        let num: f64 = bigint_to_f64(n.numer());
        let den: f64 = bigint_to_f64(n.denom());
        libm::sqrt(num / den)
    }
}

fn bigint_to_f64(x: &BigInt) -> f64 {
    use num_traits::ToPrimitive;
    x.to_f64().unwrap_or(f64::NAN)
}

impl fmt::Display for CycloElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.u, self.v)
    }
}

/// `g = t² − T t + N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticData {
    pub trace: Rational,
    pub norm: Rational,
}

impl QuadraticData {
    /// `T² − 4N`.
    pub fn discriminant(&self) -> Rational {
        &self.trace * &self.trace - integer(4) * &self.norm
    }
}

impl fmt::Display for QuadraticData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("t^2")?;
        let lin = -&self.trace;
        if !lin.is_zero() {
            let mag = lin.abs();
            let body = if mag.is_one() { String::from("t") } else { alloc::format!("{mag} t") };
            write_term(f, false, lin.is_negative(), &body)?;
        }
        if !self.norm.is_zero() {
            write_term(f, false, self.norm.is_negative(), &alloc::format!("{}", self.norm.abs()))?;
        }
        Ok(())
    }
}

/// The quadratic whose roots are the elements over `t³ − t² + a t + b`.
pub fn quadratic_of(a: &Rational, b: &Rational, convention: SignConvention) -> Result<QuadraticData> {
    let norm = Rational::one() - integer(3) * a;
    if norm.is_zero() {
        return Err(Error::Domain("1 − 3a must be nonzero"));
    }
    let b27 = integer(27) * b;
    let numer = match convention {
        SignConvention::Table => Rational::one() + b27,
        SignConvention::AsPrinted => Rational::one() - b27,
    };
    let trace = integer(3) - numer / &norm;
    Ok(QuadraticData { trace, norm })
}

pub fn quadratic_of_cubic(f: &TraceOneCubic) -> Result<QuadraticData> {
    quadratic_of(&integer(f.a), &integer(f.b), SignConvention::Table)
}

/// The one or two elements whose characteristic polynomial is `f`,
/// positive `v` first.
pub fn elements_of(f: &TraceOneCubic) -> Result<Vec<CycloElement>> {
    let disc = f.discriminant();
    let not_family = Error::NotInFamily { a: f.a, b: f.b };
    if disc < 0 || f.a > 0 {
        return Err(not_family);
    }
    let root = is_square(disc as u128).ok_or(not_family)?;
    let g = quadratic_of_cubic(f)?;
    // roots of g are (T ± s√−3)/2 with s = 3√disc(f)/N; as u + vζ this is
    // u = (T ± s)/2, v = ±s
    let s = Rational::from_integer(BigInt::from(3u128 * root)) / &g.norm;
    let half = rational(1, 2);
    let plus = CycloElement::new((&g.trace + &s) * &half, s.clone())?;
    if s.is_zero() {
        return Ok(alloc::vec![plus]);
    }
    let minus = CycloElement::new((&g.trace - &s) * &half, -s)?;
    Ok(alloc::vec![plus, minus])
}
