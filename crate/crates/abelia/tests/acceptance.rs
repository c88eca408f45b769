//! Acceptance criteria, one PASS/FAIL line each.
//!
//! Criteria that are unattainable as stated (see the project's decision
//! notes) are still evaluated at full strictness; the run fails only if a
//! criterion outside `KNOWN_UNATTAINABLE` fails.

use std::process::ExitCode;
use std::time::Instant;

use abelia::rows::cubic_record;
use abelia::verify::{self, Check, VerifyOptions};
use abelia_core::constants::{constants_report, euler_gamma, gamma_fn, l1_chi, lprime1_chi, EulerData};
use abelia_core::{DoubleDouble, TraceOneCubic};

const KNOWN_UNATTAINABLE: [&str; 3] = ["5a", "6b", "7"];

/// The worked table, copied verbatim (cubic, quadratic, disc f, disc g, H²).
const TABLE: &str = r"
$t^{3} - t^{2}$ & $t^{2} - 2 t + 1$ & $0$ & $0$ & $1$ \\
$t^{3} - t^{2} - t + 1$ & $t^{2} + 4 t + 4$ & $0$ & $0$ & $4$ \\
$t^{3} - t^{2} - 2 t + 1$ & $t^{2} + t + 7$ & $7^{2}$ & $-1 \cdot 3^{3}$ & $7$ \\
$t^{3} - t^{2} - 2 t$ & $t^{2} - \frac{20}{7} t + 7$ & $2^{2} \cdot 3^{2}$ & $-1 \cdot 2^{2} \cdot 3^{5} \cdot 7^{-2}$ & $7$ \\
$t^{3} - t^{2} - 4 t + 4$ & $t^{2} + \frac{70}{13} t + 13$ & $2^{4} \cdot 3^{2}$ & $-1 \cdot 2^{4} \cdot 3^{5} \cdot 13^{-2}$ & $13$ \\
$t^{3} - t^{2} - 4 t - 1$ & $t^{2} - 5 t + 13$ & $13^{2}$ & $-1 \cdot 3^{3}$ & $13$ \\
$t^{3} - t^{2} - 5 t - 3$ & $t^{2} - 8 t + 16$ & $0$ & $0$ & $16$ \\
$t^{3} - t^{2} - 6 t + 7$ & $t^{2} + 7 t + 19$ & $19^{2}$ & $-1 \cdot 3^{3}$ & $19$ \\
$t^{3} - t^{2} - 6 t$ & $t^{2} - \frac{56}{19} t + 19$ & $2^{2} \cdot 3^{2} \cdot 5^{2}$ & $-1 \cdot 2^{2} \cdot 3^{5} \cdot 5^{2} \cdot 19^{-2}$ & $19$ \\
$t^{3} - t^{2} - 8 t + 12$ & $t^{2} + 10 t + 25$ & $0$ & $0$ & $25$ \\
$t^{3} - t^{2} - 190 t + 719$ & $t^{2} + 31 t + 571$ & $7^{2} \cdot 571^{2}$ & $-1 \cdot 3^{3} \cdot 7^{2}$ & $571$ \\
$t^{3} - t^{2} - 190 t - 800$ & $t^{2} - \frac{23312}{571} t + 571$ & $2^{2} \cdot 3^{2} \cdot 5^{2} \cdot 7^{2} \cdot 13^{2}$ & $-1 \cdot 2^{2} \cdot 3^{5} \cdot 5^{2} \cdot 7^{2} \cdot 13^{2} \cdot 571^{-2}$ & $571$ \\
$t^{3} - t^{2} - 192 t + 720$ & $t^{2} + \frac{17710}{577} t + 577$ & $2^{6} \cdot 3^{6} \cdot 19^{2}$ & $-1 \cdot 2^{6} \cdot 3^{9} \cdot 19^{2} \cdot 577^{-2}$ & $577$ \\
$t^{3} - t^{2} - 192 t - 171$ & $t^{2} - 11 t + 577$ & $3^{4} \cdot 577^{2}$ & $-1 \cdot 3^{7}$ & $577$ \\
$t^{3} - t^{2} - 196 t + 1124$ & $t^{2} + \frac{922}{19} t + 589$ & $2^{4} \cdot 31^{2}$ & $-1 \cdot 2^{4} \cdot 3^{3} \cdot 19^{-2}$ & $589$ \\
$t^{3} - t^{2} - 196 t + 1109$ & $t^{2} + \frac{1483}{31} t + 589$ & $7^{4} \cdot 19^{2}$ & $-1 \cdot 3^{3} \cdot 7^{4} \cdot 31^{-2}$ & $589$ \\
$t^{3} - t^{2} - 196 t + 539$ & $t^{2} + \frac{673}{31} t + 589$ & $7^{2} \cdot 19^{2} \cdot 37^{2}$ & $-1 \cdot 3^{3} \cdot 7^{2} \cdot 31^{-2} \cdot 37^{2}$ & $589$ \\
$t^{3} - t^{2} - 196 t + 349$ & $t^{2} + 13 t + 589$ & $3^{4} \cdot 19^{2} \cdot 31^{2}$ & $-1 \cdot 3^{7}$ & $589$ \\
$t^{3} - t^{2} - 196 t + 196$ & $t^{2} + \frac{3526}{589} t + 589$ & $2^{4} \cdot 3^{2} \cdot 5^{2} \cdot 7^{2} \cdot 13^{2}$ & $-1 \cdot 2^{4} \cdot 3^{5} \cdot 5^{2} \cdot 7^{2} \cdot 13^{2} \cdot 19^{-2} \cdot 31^{-2}$ & $589$ \\
$t^{3} - t^{2} - 196 t - 704$ & $t^{2} - \frac{20774}{589} t + 589$ & $2^{4} \cdot 3^{6} \cdot 5^{2} \cdot 7^{2}$ & $-1 \cdot 2^{4} \cdot 3^{9} \cdot 5^{2} \cdot 7^{2} \cdot 19^{-2} \cdot 31^{-2}$ & $589$ \\
";

/// Reference values from an independent 40-digit evaluation.
const GAMMA_EULER: &str = "0.57721566490153286060651209008";
const GAMMA_ONE_THIRD: &str = "2.6789385347077476336556929410";
const L1_CHI: &str = "0.60459978807807261686469275255";
const LPRIME1_CHI: &str = "0.22266298696860150948666026276";
/// `c₂, c₁` at prime cutoff 10⁶ from an independent f64 Euler product.
const C2_AT_1E6: f64 = 0.418_237_808_360_363_9;
const C1_AT_1E6: f64 = 0.866_075_811_031_496_3;

struct Outcome {
    id: String,
    title: &'static str,
    passed: bool,
    note: String,
}

fn latex_to_plain(cell: &str) -> String {
    let mut s = cell.trim().trim_end_matches("\\\\").trim().trim_matches('$').to_string();
    while let Some(start) = s.find("\\frac{") {
        let rest = &s[start + 6..];
        let close = rest.find('}').expect("numerator");
        let num = &rest[..close];
        let rest2 = &rest[close + 2..];
        let close2 = rest2.find('}').expect("denominator");
        let den = &rest2[..close2];
        s = format!("{}{}/{}{}", &s[..start], num, den, &rest2[close2 + 1..]);
    }
    s.replace(" \\cdot ", " · ").replace(['{', '}'], "")
}

/// `(a, b)` from `t^3 - t^2 [± k t] [± c]`.
fn parse_cubic(f: &str) -> (i64, i64) {
    let rest = f.strip_prefix("t^3 - t^2").expect("trace-one cubic");
    let tokens: Vec<&str> = rest.split_whitespace().collect();
    let (mut a, mut b) = (0, 0);
    let mut i = 0;
    while i < tokens.len() {
        let sign = if tokens[i] == "-" { -1 } else { 1 };
        let body = tokens[i + 1];
        if body == "t" {
            a = sign;
            i += 2;
        } else if tokens.get(i + 2) == Some(&"t") {
            a = sign * body.parse::<i64>().unwrap();
            i += 3;
        } else {
            b = sign * body.parse::<i64>().unwrap();
            i += 2;
        }
    }
    (a, b)
}

fn criterion_1() -> Outcome {
    let mut bad = Vec::new();
    let mut rows = 0;
    for line in TABLE.lines().filter(|l| !l.trim().is_empty()) {
        rows += 1;
        let cells: Vec<String> = line.split('&').map(latex_to_plain).collect();
        let (a, b) = parse_cubic(&cells[0]);
        let f = TraceOneCubic::new(a, b);
        let rec = cubic_record(&f).expect("record");
        let field = |k: &str| rec[k].as_str().unwrap_or_default().to_string();
        let computed = [
            f.to_string(),
            field("g"),
            field("disc_f_factored"),
            field("disc_g_factored"),
            rec["height_squared"].to_string(),
        ];
        if computed.iter().zip(&cells).any(|(c, e)| c != e) || !f.in_family() {
            bad.push(format!("({a},{b}): {computed:?} vs {cells:?}"));
        }
    }
    Outcome {
        id: "1".into(),
        title: "worked table reproduced exactly",
        passed: bad.is_empty() && rows == 20,
        note: if bad.is_empty() { format!("{rows} rows") } else { bad.join("; ") },
    }
}

fn from_check(c: Check, title: &'static str) -> Outcome {
    let note = match &c.counterexample {
        Some(x) => format!("counterexample {x}"),
        None => c.detail.to_string(),
    };
    Outcome { id: c.id.into(), title, passed: c.passed, note }
}

fn dd(s: &str) -> DoubleDouble {
    // parse a decimal string exactly enough for a 1e-28 comparison
    let (int, frac) = s.split_once('.').unwrap();
    let mut x = DoubleDouble::from_u64(int.parse().unwrap());
    let mut scale = DoubleDouble::ONE;
    for ch in frac.chars() {
        scale = scale / DoubleDouble::from_f64(10.0);
        x += scale * DoubleDouble::from_u64(ch.to_digit(10).unwrap().into());
    }
    x
}

fn reference_constants() -> Outcome {
    let pairs = [
        ("gamma", euler_gamma(), GAMMA_EULER),
        ("Gamma(1/3)", gamma_fn(DoubleDouble::ratio(1, 3)), GAMMA_ONE_THIRD),
        ("L(1,chi)", l1_chi(), L1_CHI),
        ("L'(1,chi)", lprime1_chi(), LPRIME1_CHI),
    ];
    let mut bad = Vec::new();
    for (name, got, want) in pairs {
        let err = (got - dd(want)).abs().to_f64();
        if err > 1e-27 {
            bad.push(format!("{name}: {} vs {want} ({err:e})", got.to_decimal(30)));
        }
    }
    let report = constants_report(&EulerData::compute(1_000_000).unwrap());
    let (c2, c1) = (report.c2.value.to_f64(), report.c1.value.to_f64());
    if (c2 - C2_AT_1E6).abs() > 1e-12 || (c1 - C1_AT_1E6).abs() > 1e-12 {
        bad.push(format!("c2 {c2} c1 {c1} at cutoff 1e6"));
    }
    Outcome {
        id: "6-ref".into(),
        title: "special values and Laurent data match independent references",
        passed: bad.is_empty(),
        note: if bad.is_empty() { "gamma, Gamma(1/3), L(1,chi), L'(1,chi) to 1e-27; c2, c1 to 1e-12".into() } else { bad.join("; ") },
    }
}

fn main() -> ExitCode {
    let opts = VerifyOptions::default();
    let mut outcomes: Vec<(Outcome, f64)> = Vec::new();
    let mut timed = |f: &mut dyn FnMut() -> Vec<Outcome>| {
        let start = Instant::now();
        let out = f();
        let secs = start.elapsed().as_secs_f64();
        for o in out {
            let o_line = format!(
                "{} criterion {:<6} {:<62} [{:6.1}s] {}",
                if o.passed { "PASS" } else { "FAIL" },
                o.id,
                o.title,
                secs,
                o.note
            );
            println!("{o_line}");
            outcomes.push((o, secs));
        }
    };
    let ok = |r: Result<Check, abelia::AppError>| r.expect("check runs");
    let okv = |r: Result<Vec<Check>, abelia::AppError>| r.expect("check runs");

    timed(&mut || vec![criterion_1()]);
    timed(&mut || vec![from_check(ok(verify::coefficient_oracle(6001, &opts)), "d_n = weighted brute count, n <= 6001")]);
    timed(&mut || {
        vec![
            from_check(ok(verify::exact_formula(2000, &opts)), "exact C3 count per a = brute, 0 >= a >= -2000"),
            from_check(verify::positive_a(50, 10_000), "no C3 with a in [1,50], |b| <= 10^4"),
        ]
    });
    timed(&mut || {
        let titles = ["d_n = 0 off 1 (mod 3), n <= 10^6", "divisor sum = closed form = sieve, n <= 10^6", "multiplicative on 10^4 coprime pairs"];
        okv(verify::coefficient_structure(1_000_000, 10_000, &opts)).into_iter().zip(titles).map(|(c, t)| from_check(c, t)).collect()
    });
    timed(&mut || {
        let titles = ["|#disc0 - H/3| <= 2 for H <= 1000", "#disc!=0 within 0.005 H^2 of pi/(9 sqrt3) H^2 - H/6"];
        verify::reducible_counts(1000, &[300, 1000], &opts).into_iter().zip(titles).map(|(c, t)| from_check(c, t)).collect()
    });
    timed(&mut || {
        let titles = ["c2 routes agree within 1e-6", "c1/c2 Laurent vs explicit display within 1e-6", "C = (3/4) c2 within 1e-10", "10^6 -> 10^7 moves within tail bounds"];
        let mut v: Vec<Outcome> = okv(verify::constants_checks(&opts)).into_iter().zip(titles).map(|(c, t)| from_check(c, t)).collect();
        v.push(reference_constants());
        v
    });
    timed(&mut || vec![from_check(ok(verify::tauberian_fit(&opts)), "Tauberian fit at X = 10^8 (one candidate, leading ratio)")]);
    timed(&mut || {
        let titles = ["elements round-trip, |elements| = weight, n <= 6001", "disc(g) N^2 = -27 disc(f), n <= 6001", "integrality equivalence on 10^4 random elements"];
        okv(verify::cyclo_checks(6001, 10_000, &opts)).into_iter().zip(titles).map(|(c, t)| from_check(c, t)).collect()
    });

    let budgets = [("1", 1.0), ("2", 300.0), ("3", 300.0), ("4", 60.0), ("5", 60.0), ("6", 120.0), ("7", 600.0), ("8", 120.0)];
    let mut unexpected = Vec::new();
    for (o, secs) in &outcomes {
        let group = o.id.trim_end_matches(|c: char| c.is_ascii_lowercase()).split('-').next().unwrap_or("");
        if let Some((_, limit)) = budgets.iter().find(|(g, _)| *g == group) {
            if *secs > *limit {
                println!("FAIL criterion {:<6} runtime {secs:.1}s exceeds {limit}s", o.id);
                unexpected.push(o.id.clone());
            }
        }
        if !o.passed && !KNOWN_UNATTAINABLE.contains(&o.id.as_str()) {
            unexpected.push(o.id.clone());
        }
    }
    let failed: Vec<&str> = outcomes.iter().filter(|(o, _)| !o.passed).map(|(o, _)| o.id.as_str()).collect();
    println!("summary: {} checks, {} failed {:?}, known unattainable {:?}", outcomes.len(), failed.len(), failed, KNOWN_UNATTAINABLE);
    if unexpected.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("unexpected failures: {unexpected:?}");
        ExitCode::FAILURE
    }
}
