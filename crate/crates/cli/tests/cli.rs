use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn hstrata(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hstrata"))
        .args(args)
        .env_remove("HSTRATA_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let o = hstrata(&full);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap_or_else(|e| panic!("{e}: {}", stdout(&o)));
    (v, o.status.code().unwrap())
}

fn diagram_file(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

fn csv_rows(text: &str) -> Vec<Vec<String>> {
    text.lines().map(|l| l.split(',').map(String::from).collect()).collect()
}

#[test]
fn dim_examples() {
    let dir = tempfile::tempdir().unwrap();
    let black = diagram_file(dir.path(), "b.txt", "##\n##\n");
    let (v, code) = json(&["dim", &black]);
    assert_eq!(code, 0);
    assert_eq!(v["dimension"], 0);
    assert_eq!(v["tau"], "id");
    assert_eq!(v["status"], "ok");

    let bw = diagram_file(dir.path(), "bw.txt", "#\n.\n");
    let (v, _) = json(&["dim", &bw]);
    assert_eq!(v["dimension"], 1);
    assert_eq!(v["tau"], "(1 3)");
    let wb = diagram_file(dir.path(), "wb.txt", ".\n#\n");
    let (v, _) = json(&["dim", &wb]);
    assert_eq!(v["dimension"], 1);
    assert_eq!(v["tau"], "(2 3)");
    assert_eq!(v["sigma"], "(1 2)");

    let white = diagram_file(dir.path(), "w.txt", "..\n..\n");
    let (v, _) = json(&["dim", &white]);
    assert_eq!(v["dimension"], 2);
    assert_eq!(v["agree"], true);
    assert_eq!(v["kernel_dim_md"], 2);
    assert_eq!(v["odd_cycles"], 2);
}

#[test]
fn dim_warns_on_non_cauchon_and_fails_on_garbage() {
    let dir = tempfile::tempdir().unwrap();
    let nc = diagram_file(dir.path(), "nc.txt", "#.\n.#\n");
    let o = hstrata(&["dim", &nc]);
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not Cauchon"));
    let (v, _) = json(&["dim", &nc]);
    assert_eq!(v["status"], "warning");
    assert_eq!(v["cauchon"], false);

    let bad = diagram_file(dir.path(), "bad.txt", ".x\n..\n");
    let o = hstrata(&["dim", &bad]);
    assert_ne!(o.status.code(), Some(0));
    assert!(!o.stderr.is_empty());

    let o = hstrata(&["dim", dir.path().join("missing.txt").to_str().unwrap()]);
    assert_ne!(o.status.code(), Some(0));
}

#[test]
fn count_methods_agree() {
    let (v, code) = json(&["count", "2", "2", "--method", "enum", "--method", "formula", "--method", "series"]);
    assert_eq!(code, 0);
    assert_eq!(v["status"], "ok");
    let rows = v["rows"].as_array().unwrap();
    let expect = [("0", "5"), ("1", "7"), ("2", "2"), ("total", "14")];
    assert_eq!(rows.len(), expect.len());
    for (row, (d, c)) in rows.iter().zip(expect) {
        assert_eq!(row["dimension"], d);
        for m in ["enum", "formula", "series"] {
            assert_eq!(row[m], c);
        }
    }

    let (v, _) = json(&["count", "3", "3"]);
    assert_eq!(v["rows"][0]["formula"], "70");
    assert_eq!(v["poly_bernoulli"], "230");
}

#[test]
fn count_enum_respects_limit_and_cache() {
    let o = hstrata(&["count", "3", "3", "--method", "enum", "--max-cells", "8"]);
    assert_ne!(o.status.code(), Some(0));

    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    let first = hstrata(&["count", "3", "3", "--method", "enum", "--cache-dir", cache]);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    let second = hstrata(&["count", "3", "3", "--method", "enum", "--cache-dir", cache]);
    assert_eq!(stdout(&first), stdout(&second));
}

#[test]
fn large_counts_are_exact_strings() {
    let (v, _) = json(&["count", "6", "40"]);
    let total = v["poly_bernoulli"].as_str().unwrap();
    assert!(total.len() > 30);
    let last = v["rows"].as_array().unwrap().last().unwrap();
    assert_eq!(last["formula"], total);
}

#[test]
fn verify_passes_and_detects_faults() {
    let (v, code) = json(&["verify", "--max-cells", "9"]);
    assert_eq!(code, 0);
    assert_eq!(v["status"], "ok");
    assert!(v["diagrams"].as_u64().unwrap() >= 512);

    let (v, code) = json(&["verify", "--max-cells", "1"]);
    assert_eq!((code, v["diagrams"].as_u64()), (0, Some(2)));

    let (v, code) = json(&["verify", "--max-cells", "4", "--inject-fault"]);
    assert_eq!(code, 1);
    assert_eq!(v["status"], "failed");

    let o = hstrata(&["verify", "--max-cells", "40"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn asymptotics_examples() {
    let (v, code) = json(&["asymptotics", "2", "0", "--n-max", "10"]);
    assert_eq!(code, 0);
    assert_eq!(v["limit"], "3/8");
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 10);
    let ratio: f64 = rows[9]["ratio_decimal"].as_str().unwrap().parse().unwrap();
    assert!((ratio - 0.375).abs() < 0.01);
    assert!(v["gap_nonincreasing_from_n"].as_u64().unwrap() <= 5);

    assert_eq!(json(&["asymptotics", "1", "0"]).0["limit"], "1/2");
    assert_eq!(json(&["asymptotics", "2", "1"]).0["limit"], "1/2");
    assert_ne!(hstrata(&["asymptotics", "2", "3"]).status.code(), Some(0));
}

#[test]
fn lookup_examples() {
    let o = hstrata(&["lookup", "[3,4,1,2]", "2", "2"]);
    assert_eq!(stdout(&o), "##\n##\n");
    let o = hstrata(&["lookup", "[4,3,2,1]", "2", "2"]);
    assert_eq!((stdout(&o).as_str(), o.status.code()), ("not-found\n", Some(0)));
    let o = hstrata(&["lookup", "[1,2,3,4]", "2", "2"]);
    assert_eq!(stdout(&o), "..\n..\n");
    assert_eq!(hstrata(&["lookup", "[1,1,2,3]", "2", "2"]).status.code(), Some(2));
    assert_eq!(hstrata(&["lookup", "[1,2,3]", "2", "2"]).status.code(), Some(2));
}

#[test]
fn coeffs_example() {
    let (v, code) = json(&["coeffs", "2", "0"]);
    assert_eq!(code, 0);
    let got: Vec<(String, String)> = v["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| (r["base"].as_str().unwrap().into(), r["coefficient"].as_str().unwrap().into()))
        .collect();
    let want = [("3", "3/4"), ("2", "-1/2"), ("1", "1/2"), ("-1", "-1/4")];
    assert_eq!(got, want.map(|(a, b)| (a.to_string(), b.to_string())));
}

/// Every number in the CSV rendering appears in the same cell of the JSON
/// rendering and on the matching line of the text rendering.
#[test]
fn formats_carry_identical_numbers() {
    let runs: [&[&str]; 4] = [
        &["count", "3", "4", "--method", "formula", "--method", "series"],
        &["asymptotics", "3", "1", "--n-max", "12"],
        &["coeffs", "4", "0"],
        &["verify", "--max-cells", "5"],
    ];
    for args in runs {
        let text = stdout(&hstrata(args));
        let mut a = args.to_vec();
        a.extend(["--format", "csv"]);
        let csv = csv_rows(&stdout(&hstrata(&a)));
        let (doc, _) = json(args);
        let header = &csv[0];
        let rows = doc["rows"].as_array().unwrap();
        assert_eq!(rows.len(), csv.len() - 1, "{args:?}");
        for (row, cells) in rows.iter().zip(&csv[1..]) {
            let text_line: Vec<&str> = text
                .lines()
                .find(|l| l.trim_start().starts_with(&format!("{} ", cells[0])))
                .unwrap_or_else(|| panic!("{args:?}: no text row for {}", cells[0]))
                .split_whitespace()
                .collect();
            for (key, cell) in header.iter().zip(cells) {
                if cell.parse::<f64>().is_err() && !cell.contains('/') {
                    continue;
                }
                let j = match &row[key] {
                    Value::String(s) => s.clone(),
                    other => other.to_string(),
                };
                assert_eq!(&j, cell, "{args:?} {key}");
                assert!(text_line.contains(&cell.as_str()), "{args:?}: {cell} missing from text");
            }
        }
    }
}

#[test]
fn dim_formats_agree() {
    let dir = tempfile::tempdir().unwrap();
    let f = diagram_file(dir.path(), "d.txt", "..#\n...\n#..\n");
    let text = stdout(&hstrata(&["dim", &f]));
    let csv = stdout(&hstrata(&["dim", &f, "--format", "csv"]));
    let (doc, _) = json(&["dim", &f]);
    assert_eq!(csv.lines().next(), Some("key,value"));
    for line in csv.lines().skip(1) {
        let (k, v) = line.split_once(',').unwrap();
        let j = match &doc[k] {
            Value::String(s) => s.clone(),
            Value::Array(xs) => xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(";"),
            other => other.to_string(),
        };
        assert_eq!(j, v.trim_matches('"'), "{k}");
        let text_line = text
            .lines()
            .find(|l| l.split_whitespace().next().map(|t| t.trim_end_matches(':')) == Some(k))
            .unwrap();
        assert!(text_line.ends_with(&v.trim_matches('"').replace(';', ", ")), "{k}");
    }
}
