use abelia::cli::run;
use serde_json::Value;

fn abelia(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let argv = std::iter::once("abelia").chain(args.iter().copied());
    let code = run(argv, &mut out);
    (code, String::from_utf8(out).unwrap())
}

fn json_lines(s: &str) -> Vec<Value> {
    s.lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

#[test]
fn coeffs_csv() {
    let (code, out) = abelia(&["coeffs", "--limit", "10", "--format", "csv"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "n,d");
    assert_eq!(&lines[7..], ["7,4", "8,0", "9,0", "10,0"]);
}

#[test]
fn param_cubic_example() {
    let (code, out) = abelia(&["param", "--cubic", "-2,1"]);
    assert_eq!(code, 0);
    let v = &json_lines(&out)[0];
    assert_eq!(v["g"], "t^2 + t + 7");
    assert_eq!(v["elements"], serde_json::json!([{ "u": "1", "v": "3" }, { "u": "-2", "v": "-3" }]));
}

#[test]
fn param_round_trip() {
    for a in -40..=0i64 {
        for b in -60..=60i64 {
            let (_, out) = abelia(&["param", "--cubic", &format!("{a},{b}")]);
            let rec = &json_lines(&out)[0];
            for e in rec["elements"].as_array().unwrap() {
                let pair = format!("{},{}", e["u"].as_str().unwrap(), e["v"].as_str().unwrap());
                let (code, back) = abelia(&["param", "--element", &pair]);
                assert_eq!(code, 0);
                let back = &json_lines(&back)[0];
                assert_eq!((back["a"].as_str().unwrap(), back["b"].as_str().unwrap()), (a.to_string().as_str(), b.to_string().as_str()));
                assert_eq!(back["integral"], true);
            }
        }
    }
}

#[test]
fn count_modes() {
    let (code, out) = abelia(&["count", "--per-a", "-4"]);
    assert_eq!(code, 0);
    assert_eq!(json_lines(&out)[0]["c3_count"], 1);
    let (_, out) = abelia(&["count", "--toric", "2.6457513110645907"]);
    assert_eq!(json_lines(&out)[0]["c3_count"], 1);
    let (_, out) = abelia(&["count", "--root-height", "2"]);
    assert_eq!(json_lines(&out)[0]["c3_count"], 2);
    let (code, _) = abelia(&["count", "--root-height", "60"]);
    assert_eq!(code, 2);
}

#[test]
fn invalid_arguments_exit_2() {
    assert_eq!(abelia(&["coeffs"]).0, 2);
    assert_eq!(abelia(&["frobnicate"]).0, 2);
    assert_eq!(abelia(&["count"]).0, 2);
    assert_eq!(abelia(&["param", "--cubic", "1"]).0, 2);
    assert_eq!(abelia(&["coeffs", "--limit", "200000000"]).0, 2);
    assert_eq!(abelia(&["table", "--heights", "9"]).0, 2);
    assert_eq!(abelia(&["constants", "--prime-cutoff", "10"]).0, 2);
    assert_eq!(abelia(&["verify", "--tolerance-profile", "/nonexistent.json"]).0, 2);
}

#[test]
fn verify_reports_mismatch_with_exit_1() {
    let (code, out) = abelia(&["verify", "--suite", "thm12"]);
    assert_eq!(code, 1);
    let lines = json_lines(&out);
    let last = lines.last().unwrap();
    assert_eq!(last["first_counterexample"]["check"], "5a");
    assert!(lines.iter().any(|l| l["check"] == "3a" && l["passed"] == true));
}

#[test]
fn verify_cyclo_passes() {
    let (code, out) = abelia(&["verify", "--suite", "cyclo"]);
    assert_eq!(code, 0, "{out}");
}

#[test]
fn tolerance_profile_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("tol.json");
    std::fs::write(&path, r#"{ "disc_zero_abs": 1000 }"#).unwrap();
    let (code, out) = abelia(&["verify", "--suite", "thm12", "--tolerance-profile", path.to_str().unwrap()]);
    assert_eq!(code, 0, "{out}");
    std::fs::write(&path, r#"{ "no_such": 1 }"#).unwrap();
    assert_eq!(abelia(&["verify", "--suite", "cyclo", "--tolerance-profile", path.to_str().unwrap()]).0, 2);
}

#[test]
fn table_lists_family_by_height() {
    let (code, out) = abelia(&["table", "--heights", "589"]);
    assert_eq!(code, 0);
    let rows = json_lines(&out);
    let weights: u64 = rows.iter().map(|r| r["weight"].as_u64().unwrap()).sum();
    assert_eq!(weights, 16);
    assert!(rows.iter().any(|r| r["b"] == 1124 && r["g"] == "t^2 + 922/19 t + 589"));
}

#[test]
fn reducible_and_ellipse_rows() {
    let (_, out) = abelia(&["reducible", "--height", "10"]);
    let v = &json_lines(&out)[0];
    assert_eq!((v["disc_zero"].as_u64(), v["disc_nonzero"].as_u64()), (Some(7), Some(17)));
    let (_, out) = abelia(&["reducible", "--height", "5", "--ellipse", "--format", "csv"]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "n,on_ellipse,c3_count,split_weighted");
    assert_eq!(lines.len(), 1 + 9);
}

#[test]
fn cache_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sub").join("d.bin");
    let p = path.to_str().unwrap();
    let (_, fresh) = abelia(&["coeffs", "--limit", "500", "--cache", p]);
    assert!(path.exists());
    assert_eq!(std::fs::metadata(&path).unwrap().len(), 7 + 8 + 4 * 500);
    let (_, cached) = abelia(&["coeffs", "--limit", "300", "--cache", p]);
    assert_eq!(cached.lines().collect::<Vec<_>>(), fresh.lines().take(300).collect::<Vec<_>>());
    std::fs::write(&path, b"garbage").unwrap();
    let (code, again) = abelia(&["coeffs", "--limit", "300", "--cache", p]);
    assert_eq!(code, 0);
    assert_eq!(again, cached);
}

#[test]
fn threads_never_change_output() {
    let commands: [&[&str]; 6] = [
        &["coeffs", "--limit", "3000"],
        &["sum", "--limit", "2000000", "--prime-cutoff", "100000"],
        &["count", "--toric", "70"],
        &["count", "--root-height", "12"],
        &["constants", "--prime-cutoff", "300000"],
        &["reducible", "--height", "400"],
    ];
    for cmd in commands {
        let outputs: Vec<String> = ["1", "2", "8"]
            .iter()
            .map(|t| {
                let mut args = cmd.to_vec();
                args.extend(["--threads", t]);
                abelia(&args).1
            })
            .collect();
        assert_eq!(outputs[0], outputs[1], "{cmd:?}");
        assert_eq!(outputs[0], outputs[2], "{cmd:?}");
    }
}
