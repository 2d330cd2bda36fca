use hstrata_web::{analyze_diagram, count_strata, proportions};
use serde_json::Value;

fn parse(s: String) -> Value {
    serde_json::from_str(&s).unwrap()
}

#[test]
fn analyze_reports_dimension() {
    let v = parse(analyze_diagram("..\n.."));
    assert_eq!(v["ok"], true);
    assert_eq!(v["dimension"], 2);
    assert_eq!(v["kernel_dim"], 2);
    assert_eq!(v["sigma"], "id");
    assert!(v.get("warning").is_none());

    let v = parse(analyze_diagram("#.\n.#"));
    assert_eq!(v["cauchon"], false);
    assert!(v["warning"].is_string());

    let v = parse(analyze_diagram(".x"));
    assert_eq!(v["ok"], false);
    assert!(!v["error"].as_str().unwrap().is_empty());
}

#[test]
fn counts_match_enumeration() {
    let v = parse(count_strata(2, 2));
    assert_eq!(v["total"], "14");
    assert_eq!(v["agree"], true);
    let got: Vec<(&str, &str)> = v["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| (r["formula"].as_str().unwrap(), r["enum"].as_str().unwrap()))
        .collect();
    assert_eq!(got, [("5", "5"), ("7", "7"), ("2", "2")]);

    let v = parse(count_strata(5, 30));
    assert_eq!(v["agree"], Value::Null);
    assert!(v["rows"][0].get("enum").is_none());

    assert_eq!(parse(count_strata(0, 3))["ok"], false);
    assert_eq!(parse(count_strata(3, 41))["ok"], false);
}

#[test]
fn proportions_approach_limits() {
    let v = parse(proportions(2, 30));
    assert_eq!(v["limits"][0]["limit"], "3/8");
    let series = v["series"].as_array().unwrap();
    assert_eq!(series.len(), 30);
    let last = series[29]["shares"].as_array().unwrap();
    let sum: f64 = last.iter().map(|x| x.as_f64().unwrap()).sum();
    assert!((sum - 1.0).abs() < 1e-12);
    for (share, limit) in last.iter().zip(v["limits"].as_array().unwrap()) {
        assert!((share.as_f64().unwrap() - limit["decimal"].as_f64().unwrap()).abs() < 1e-3);
    }
}
