//! Family polynomials as output rows: the cubic, its quadratic, both
//! discriminants (exact and factored), and the parametrizing elements.

use abelia_core::arith::factorize;
use abelia_core::cubic::{family_b_bound, GaloisClass};
use abelia_core::cyclo::{elements_of, quadratic_of, quadratic_of_cubic, integer, Rational, SignConvention};
use abelia_core::{CycloElement, TraceOneCubic};
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde_json::{json, Map, Value};

use crate::error::{AppError, AppResult};

/// A row of the worked table of family polynomials, with discriminants in
/// factored form (`-1 · 2^2 · 3^5 · 7^-2`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FigureRow {
    pub a: i64,
    pub b: i64,
    pub g: &'static str,
    pub disc_f: &'static str,
    pub disc_g: &'static str,
    pub height_squared: u64,
}

const fn row(a: i64, b: i64, g: &'static str, disc_f: &'static str, disc_g: &'static str, h2: u64) -> FigureRow {
    FigureRow { a, b, g, disc_f, disc_g, height_squared: h2 }
}

/// The published table of small and sample large family polynomials.
pub const FIGURE_ROWS: [FigureRow; 20] = [
    row(0, 0, "t^2 - 2 t + 1", "0", "0", 1),
    row(-1, 1, "t^2 + 4 t + 4", "0", "0", 4),
    row(-2, 1, "t^2 + t + 7", "7^2", "-1 · 3^3", 7),
    row(-2, 0, "t^2 - 20/7 t + 7", "2^2 · 3^2", "-1 · 2^2 · 3^5 · 7^-2", 7),
    row(-4, 4, "t^2 + 70/13 t + 13", "2^4 · 3^2", "-1 · 2^4 · 3^5 · 13^-2", 13),
    row(-4, -1, "t^2 - 5 t + 13", "13^2", "-1 · 3^3", 13),
    row(-5, -3, "t^2 - 8 t + 16", "0", "0", 16),
    row(-6, 7, "t^2 + 7 t + 19", "19^2", "-1 · 3^3", 19),
    row(-6, 0, "t^2 - 56/19 t + 19", "2^2 · 3^2 · 5^2", "-1 · 2^2 · 3^5 · 5^2 · 19^-2", 19),
    row(-8, 12, "t^2 + 10 t + 25", "0", "0", 25),
    row(-190, 719, "t^2 + 31 t + 571", "7^2 · 571^2", "-1 · 3^3 · 7^2", 571),
    row(-190, -800, "t^2 - 23312/571 t + 571", "2^2 · 3^2 · 5^2 · 7^2 · 13^2", "-1 · 2^2 · 3^5 · 5^2 · 7^2 · 13^2 · 571^-2", 571),
    row(-192, 720, "t^2 + 17710/577 t + 577", "2^6 · 3^6 · 19^2", "-1 · 2^6 · 3^9 · 19^2 · 577^-2", 577),
    row(-192, -171, "t^2 - 11 t + 577", "3^4 · 577^2", "-1 · 3^7", 577),
    row(-196, 1124, "t^2 + 922/19 t + 589", "2^4 · 31^2", "-1 · 2^4 · 3^3 · 19^-2", 589),
    row(-196, 1109, "t^2 + 1483/31 t + 589", "7^4 · 19^2", "-1 · 3^3 · 7^4 · 31^-2", 589),
    row(-196, 539, "t^2 + 673/31 t + 589", "7^2 · 19^2 · 37^2", "-1 · 3^3 · 7^2 · 31^-2 · 37^2", 589),
    row(-196, 349, "t^2 + 13 t + 589", "3^4 · 19^2 · 31^2", "-1 · 3^7", 589),
    row(-196, 196, "t^2 + 3526/589 t + 589", "2^4 · 3^2 · 5^2 · 7^2 · 13^2", "-1 · 2^4 · 3^5 · 5^2 · 7^2 · 13^2 · 19^-2 · 31^-2", 589),
    row(-196, -704, "t^2 - 20774/589 t + 589", "2^4 · 3^6 · 5^2 · 7^2", "-1 · 2^4 · 3^9 · 5^2 · 7^2 · 19^-2 · 31^-2", 589),
];

fn signed_exponents(x: &BigInt, sign: i32, into: &mut Vec<(u64, i32)>) -> Option<()> {
    let x = x.abs().to_u64()?;
    for &(p, e) in factorize(x).ok()?.factors() {
        into.push((p, sign * e as i32));
    }
    Some(())
}

/// `-1 · p^e · …` with primes ascending and negative exponents for the
/// denominator; `None` when a part exceeds 64 bits.
pub fn factored(r: &Rational) -> Option<String> {
    if r.is_zero() {
        return Some("0".into());
    }
    let mut powers = Vec::new();
    signed_exponents(r.numer(), 1, &mut powers)?;
    signed_exponents(r.denom(), -1, &mut powers)?;
    powers.sort_unstable();
    let mut parts: Vec<String> = Vec::new();
    if r.is_negative() {
        parts.push("-1".into());
    }
    for (p, e) in powers {
        parts.push(if e == 1 { p.to_string() } else { format!("{p}^{e}") });
    }
    if parts.is_empty() {
        parts.push("1".into());
    }
    Some(parts.join(" · "))
}

fn rational_str(r: &Rational) -> Value {
    Value::String(r.to_string())
}

fn element_json(e: &CycloElement) -> Value {
    json!({ "u": e.u().to_string(), "v": e.v().to_string() })
}

/// Everything about `f` as one record.
pub fn cubic_record(f: &TraceOneCubic) -> AppResult<Map<String, Value>> {
    let class = f.classify();
    let disc_f = Rational::from_integer(BigInt::from(f.discriminant()));
    let mut m = Map::new();
    m.insert("a".into(), json!(f.a));
    m.insert("b".into(), json!(f.b));
    m.insert("f".into(), json!(f.to_string()));
    m.insert("class".into(), json!(class.name()));
    m.insert("in_family".into(), json!(class.in_family()));
    m.insert("weight".into(), f.weight().map_or(Value::Null, |w| json!(w)));
    m.insert("height_squared".into(), f.toric_height_squared().map_or(Value::Null, |n| json!(n)));
    m.insert("disc_f".into(), rational_str(&disc_f));
    m.insert("disc_f_factored".into(), factored(&disc_f).map_or(Value::Null, Value::String));
    let g = quadratic_of_cubic(f)?;
    let disc_g = g.discriminant();
    m.insert("g".into(), json!(g.to_string()));
    m.insert("trace".into(), rational_str(&g.trace));
    m.insert("norm".into(), rational_str(&g.norm));
    m.insert("disc_g".into(), rational_str(&disc_g));
    m.insert("disc_g_factored".into(), factored(&disc_g).map_or(Value::Null, Value::String));
    let elements = if class.in_family() { elements_of(f)? } else { Vec::new() };
    m.insert("elements".into(), Value::Array(elements.iter().map(element_json).collect()));
    Ok(m)
}

/// Every family polynomial with `1 − 3a = n`, `b` descending.
pub fn family_at_height(n: u64) -> AppResult<Vec<TraceOneCubic>> {
    if n == 0 || n % 3 != 1 {
        return Err(AppError::Usage(format!("height² {n} is not ≡ 1 (mod 3)")));
    }
    let a = -(((n - 1) / 3) as i64);
    let bound = family_b_bound(a);
    Ok((-bound..=bound)
        .rev()
        .map(|b| TraceOneCubic::new(a, b))
        .filter(|f| f.family_class().is_some())
        .collect())
}

/// The elements over `(a, b)` and the polynomial data, for `param --cubic`.
pub fn param_cubic(a: i64, b: i64) -> AppResult<Map<String, Value>> {
    cubic_record(&TraceOneCubic::new(a, b))
}

/// The image of `u + vζ`, for `param --element`.
pub fn param_element(u: Rational, v: Rational) -> AppResult<Map<String, Value>> {
    let e = CycloElement::new(u, v)?;
    let (a, b) = e.to_cubic(SignConvention::Table);
    let mut m = Map::new();
    m.insert("u".into(), rational_str(e.u()));
    m.insert("v".into(), rational_str(e.v()));
    m.insert("norm".into(), rational_str(&e.norm()));
    m.insert("trace".into(), rational_str(&e.trace()));
    m.insert("a".into(), rational_str(&a));
    m.insert("b".into(), rational_str(&b));
    m.insert("integral".into(), json!(e.is_integral_image()));
    let g = quadratic_of(&a, &b, SignConvention::Table)?;
    m.insert("g".into(), json!(g.to_string()));
    match e.to_integral_cubic() {
        Some(f) => {
            let class = f.classify();
            m.insert("f".into(), json!(f.to_string()));
            m.insert("class".into(), json!(class.name()));
            m.insert("weight".into(), f.weight().map_or(Value::Null, |w| json!(w)));
        }
        None => {
            m.insert("f".into(), Value::Null);
        }
    }
    Ok(m)
}

/// Parses `p`, `-p` or `p/q`.
pub fn parse_rational(s: &str) -> AppResult<Rational> {
    let bad = || AppError::Usage(format!("not a rational number: {s:?}"));
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

/// Parses `x,y`.
pub fn parse_pair(s: &str) -> AppResult<(String, String)> {
    let (x, y) = s.split_once(',').ok_or_else(|| AppError::Usage(format!("expected two comma-separated values, got {s:?}")))?;
    Ok((x.trim().to_string(), y.trim().to_string()))
}

pub fn parse_int_pair(s: &str) -> AppResult<(i64, i64)> {
    let (x, y) = parse_pair(s)?;
    let parse = |t: &str| t.parse::<i64>().map_err(|_| AppError::Usage(format!("not an integer: {t:?}")));
    Ok((parse(&x)?, parse(&y)?))
}

/// The computed fields a figure row is compared on.
pub fn figure_row_matches(row: &FigureRow) -> AppResult<Option<Value>> {
    let f = TraceOneCubic::new(row.a, row.b);
    let rec = cubic_record(&f)?;
    let get = |k: &str| rec.get(k).and_then(Value::as_str).unwrap_or_default().to_string();
    let ok = f.family_class().is_some()
        && get("g") == row.g
        && get("disc_f_factored") == row.disc_f
        && get("disc_g_factored") == row.disc_g
        && f.toric_height_squared().ok() == Some(row.height_squared);
    if ok {
        return Ok(None);
    }
    Ok(Some(json!({
        "a": row.a, "b": row.b,
        "expected": { "g": row.g, "disc_f": row.disc_f, "disc_g": row.disc_g, "height_squared": row.height_squared },
        "computed": { "g": get("g"), "disc_f": get("disc_f_factored"), "disc_g": get("disc_g_factored"),
                      "height_squared": rec.get("height_squared") },
    })))
}

pub fn is_c3(f: &TraceOneCubic) -> bool {
    f.classify() == GaloisClass::C3Irreducible
}

/// `disc(g) · N² = −27 · disc(f)`.
pub fn discriminant_relation_holds(f: &TraceOneCubic) -> AppResult<bool> {
    let g = quadratic_of_cubic(f)?;
    let lhs = g.discriminant() * &g.norm * &g.norm;
    Ok(lhs == integer(-27) * Rational::from_integer(BigInt::from(f.discriminant())))
}
