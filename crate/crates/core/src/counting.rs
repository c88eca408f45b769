//! Lattice points on the conics `x² + y² + xy − x − y = L`, the exact C3
//! count for fixed `a`, and the reducible part of the family counted as
//! S3-orbits of lattice points.
//!
//! A point `(x, y)` stands for the root triple `(x, y, 1 − x − y)`; the form
//! equals `−a` of the polynomial with those roots, so level `L` is toric
//! height² `n = 1 + 3L`.

use alloc::vec;
use alloc::vec::Vec;

use crate::arith::{factorize, is_square_i128, isqrt_u128, isqrt_u64};
use crate::dirichlet::coefficient_from_factorization;
use crate::{Error, Result};

/// Height² `n ≡ 1 (mod 3)` and its conic level `L = (n − 1)/3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EllipseLevel {
    n: u64,
}

impl EllipseLevel {
    pub fn new(n: u64) -> Result<Self> {
        if n % 3 != 1 {
            return Err(Error::Domain("ellipse height² must be ≡ 1 (mod 3)"));
        }
        Ok(EllipseLevel { n })
    }

    pub fn from_a(a: i64) -> Result<Self> {
        if a > 0 {
            return Err(Error::Domain("a must be ≤ 0"));
        }
        Ok(EllipseLevel { n: 1 + 3 * a.unsigned_abs() })
    }

    pub fn n(self) -> u64 {
        self.n
    }

    pub fn level(self) -> u64 {
        (self.n - 1) / 3
    }
}

/// `x² + y² + xy − x − y`.
pub fn conic_form(x: i64, y: i64) -> i128 {
    let (x, y) = (i128::from(x), i128::from(y));
    x * x + y * y + x * y - x - y
}

// Integer x with (3x − 1)² ≤ 4n, i.e. where the conic at height² n has points.
fn x_range(n: u64) -> (i64, i64) {
    let r = isqrt_u128(4 * u128::from(n)) as i64;
    ((1 - r).div_euclid(3) + i64::from((1 - r).rem_euclid(3) != 0), (1 + r).div_euclid(3))
}

/// `#E(Z)`: integer points with `x² + y² + xy − x − y = (n − 1)/3`.
pub fn on_ellipse_count(n: u64) -> Result<u64> {
    let level = EllipseLevel::new(n)?.level() as i128;
    let (lo, hi) = x_range(n);
    let mut count = 0;
    for x in lo..=hi {
        let x = i128::from(x);
        // y² + (x − 1) y + (x² − x − L) = 0
        let disc = (x - 1) * (x - 1) - 4 * (x * x - x - level);
        let Some(s) = is_square_i128(disc) else { continue };
        let s = s as i128;
        if (1 - x + s) % 2 == 0 {
            count += if s == 0 { 1 } else { 2 };
        }
    }
    Ok(count)
}

/// Number of `t³ − t² + a t + b` with Galois group C3, over all `b`:
/// `½ Σ_{d|n} 3^ω(P₁(d)) (−1)^Ω(P₂(d)) − ⅙ #E(Z)` with `n = 1 − 3a`.
pub fn c3_count_for_a(a: i64) -> Result<u64> {
    let level = EllipseLevel::from_a(a)?;
    let divisor_sum = i128::from(coefficient_from_factorization(&factorize(level.n())?));
    let points = i128::from(on_ellipse_count(level.n())?);
    // ½S − ⅙E = (3S − E)/6
    let numer = 3 * divisor_sum - points;
    if numer < 0 || numer % 6 != 0 {
        return Err(Error::Inconsistent("C3 count formula is not a nonnegative integer"));
    }
    Ok((numer / 6) as u64)
}

/// Reducible family polynomials of toric height² `≤ n_max`, split by
/// whether the discriminant vanishes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ReducibleCensus {
    pub n_max: u64,
    pub disc_zero: u64,
    pub disc_nonzero: u64,
}

impl ReducibleCensus {
    pub fn total(&self) -> u64 {
        self.disc_zero + self.disc_nonzero
    }

    /// Weighted count: double-root polynomials weigh 1, the rest 2.
    pub fn weighted(&self) -> u64 {
        self.disc_zero + 2 * self.disc_nonzero
    }
}

/// Per-level orbit counts `[disc_zero, disc_nonzero]` for `L = 0..=L_max`.
pub type LevelCounts = Vec<[u64; 2]>;

/// Largest conic level with `1 + 3L ≤ n_max`.
pub fn max_level(n_max: u64) -> u64 {
    (n_max.max(1) - 1) / 3
}

/// Integer `x` columns that meet the closed region of height² `≤ n_max`.
pub fn census_x_range(n_max: u64) -> (i64, i64) {
    x_range(1 + 3 * max_level(n_max))
}

/// Orbit counts per level from the points with `x` in `[x_lo, x_hi]`.
///
/// Each S3-orbit of `(x, y, 1 − x − y)` is counted once, at its sorted
/// representative `x ≤ y ≤ z`; columns can therefore be processed
/// independently and their level vectors added.
pub fn census_levels_columns(n_max: u64, x_lo: i64, x_hi: i64) -> LevelCounts {
    let l_max = max_level(n_max);
    let mut levels = vec![[0u64; 2]; l_max as usize + 1];
    let lm = i128::from(l_max);
    for x in x_lo..=x_hi {
        let xw = i128::from(x);
        let disc = (xw - 1) * (xw - 1) - 4 * (xw * xw - xw - lm);
        if disc < 0 {
            continue;
        }
        let s = isqrt_u128(disc as u128) as i128;
        // representative needs y ≥ x and y ≤ z = 1 − x − y
        let y_lo = ((1 - xw - s).div_euclid(2)).max(xw);
        let y_hi = (1 - xw + s).div_euclid(2) + 1;
        for y in y_lo..=y_hi {
            let z = 1 - xw - y;
            if y > z {
                break;
            }
            let q = xw * xw + y * y + xw * y - xw - y;
            if q > lm {
                continue;
            }
            let repeated = xw == y || y == z;
            levels[q as usize][usize::from(!repeated)] += 1;
        }
    }
    levels
}

/// Adds `other` into `acc` level by level.
pub fn merge_levels(acc: &mut LevelCounts, other: &LevelCounts) {
    for (a, b) in acc.iter_mut().zip(other) {
        a[0] += b[0];
        a[1] += b[1];
    }
}

pub fn census_levels(n_max: u64) -> LevelCounts {
    let (lo, hi) = census_x_range(n_max);
    census_levels_columns(n_max, lo, hi)
}

pub fn census_from_levels(n_max: u64, levels: &LevelCounts) -> ReducibleCensus {
    let upto = (max_level(n_max) as usize + 1).min(levels.len());
    let mut census = ReducibleCensus { n_max, ..Default::default() };
    for l in &levels[..upto] {
        census.disc_zero += l[0];
        census.disc_nonzero += l[1];
    }
    census
}

/// Exact census of reducible family polynomials with `H(f)² ≤ n_max`.
pub fn reducible_census(n_max: u64) -> ReducibleCensus {
    census_from_levels(n_max, &census_levels(n_max))
}

/// Lattice points of the closed region `H² ≤ n_max` on the lines `x = y`,
/// `y = 1 − 2x`, `x = 1 − 2y` (points with a nontrivial stabilizer).
///
/// Each line carries the points `(r, r, 1 − 2r)` up to permutation, at height²
/// `(3r − 1)²`; the lines meet only at `(1/3, 1/3)`.
pub fn stabilized_point_count(n_max: u64) -> u64 {
    let n_max = 1 + 3 * max_level(n_max);
    let root = isqrt_u64(n_max) as i64;
    // r with |3r − 1| ≤ root
    let lo = (1 - root).div_euclid(3) + i64::from((1 - root).rem_euclid(3) != 0);
    let hi = (1 + root).div_euclid(3);
    3 * (hi - lo + 1).max(0) as u64
}

/// `π/(9√3) H² − H/6`.
pub fn reducible_asymptotic(height: f64) -> f64 {
    core::f64::consts::PI / (9.0 * libm::sqrt(3.0)) * height * height - height / 6.0
}

/// One line of the ellipse CSV: `(n, #E(Z), C3 count, weighted split count)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EllipseRow {
    pub n: u64,
    pub on_ellipse: u64,
    pub c3_count: u64,
    pub split_weighted: u64,
}

/// Rows for every `n ≡ 1 (mod 3)` in `[n_lo, n_hi]`; the weighted split
/// count comes from the orbit census, independently of `#E(Z)`.
pub fn ellipse_rows(n_lo: u64, n_hi: u64) -> Result<Vec<EllipseRow>> {
    let levels = census_levels(n_hi);
    let mut rows = Vec::new();
    for n in n_lo.max(1)..=n_hi {
        if n % 3 != 1 {
            continue;
        }
        let level = ((n - 1) / 3) as usize;
        let a = -(((n - 1) / 3) as i64);
        rows.push(EllipseRow {
            n,
            on_ellipse: on_ellipse_count(n)?,
            c3_count: c3_count_for_a(a)?,
            split_weighted: levels[level][0] + 2 * levels[level][1],
        });
    }
    Ok(rows)
}
