//! Browser bindings. Every export takes plain numbers or text and returns a
//! JSON string, so the page needs no glue beyond `JSON.parse`.

use hstrata::enumeration::{poly_bernoulli, tally_dimensions_limited};
use hstrata::genfunc::{asymptotic_proportion, CountingFormula};
use hstrata::{stratum_dim_cycles, trace_sigma, Diagram, Method};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

/// Largest shape (in cells) the page will enumerate diagram by diagram.
pub const ENUM_LIMIT: usize = 16;
/// Largest side length accepted by the counting exports.
pub const MAX_SIDE: u32 = 40;

fn failure(msg: impl ToString) -> String {
    json!({ "ok": false, "error": msg.to_string() }).to_string()
}

fn check_side(name: &str, x: u32) -> Result<usize, String> {
    if x == 0 || x > MAX_SIDE {
        Err(format!("{name} must be between 1 and {MAX_SIDE}"))
    } else {
        Ok(x as usize)
    }
}

fn decimal(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Dimension of the stratum of a diagram typed as rows of `.` and `#`.
#[wasm_bindgen]
pub fn analyze_diagram(text: &str) -> String {
    let d: Diagram = match text.parse() {
        Ok(d) => d,
        Err(e) => return failure(e),
    };
    let info = stratum_dim_cycles(&d);
    let kernel = Method::Kernel.dimension(&d);
    let mut doc = json!({
        "ok": true,
        "m": d.rows(),
        "n": d.cols(),
        "cauchon": info.cauchon,
        "white_squares": d.white_count(),
        "sigma": trace_sigma(&d).cycles().to_compact_string(),
        "tau": info.toric.to_compact_string(),
        "cycle_lengths": info.toric.lengths(),
        "dimension": info.dimension,
        "kernel_dim": kernel,
        "agree": kernel == info.dimension,
    });
    if !info.cauchon {
        doc["warning"] = Value::from("not Cauchon: the number is not a stratum dimension");
    }
    doc.to_string()
}

/// Number of strata of each dimension for `m x n`, from the closed form and,
/// for small shapes, by enumeration.
#[wasm_bindgen]
pub fn count_strata(m: u32, n: u32) -> String {
    let (m, n) = match check_side("m", m).and_then(|m| Ok((m, check_side("n", n)?))) {
        Ok(p) => p,
        Err(e) => return failure(e),
    };
    let formula = match CountingFormula::new(m).and_then(|f| f.h_all(n)) {
        Ok(h) => h,
        Err(e) => return failure(e),
    };
    let enumerated = if m * n <= ENUM_LIMIT {
        match tally_dimensions_limited(m, n, Method::Cycles, ENUM_LIMIT) {
            Ok(t) => Some(t),
            Err(e) => return failure(e),
        }
    } else {
        None
    };
    let rows: Vec<Value> = formula
        .iter()
        .enumerate()
        .map(|(d, h)| {
            let mut row = json!({ "dimension": d, "formula": h.to_string() });
            if let Some(t) = &enumerated {
                row["enum"] = Value::from(t.get(d).to_string());
            }
            row
        })
        .collect();
    let agree = enumerated
        .as_ref()
        .map(|t| formula.iter().enumerate().all(|(d, h)| t.get(d) == *h));
    json!({
        "ok": true,
        "m": m,
        "n": n,
        "total": poly_bernoulli(m, n).to_string(),
        "rows": rows,
        "agree": agree,
    })
    .to_string()
}

/// Share of `d`-dimensional strata among all strata of `m x n`, for
/// `n = 1..=n_max` and every `d`, with the limit as `n` grows.
#[wasm_bindgen]
pub fn proportions(m: u32, n_max: u32) -> String {
    let (m, n_max) = match check_side("m", m).and_then(|m| Ok((m, check_side("n", n_max)?))) {
        Ok(p) => p,
        Err(e) => return failure(e),
    };
    let f = match CountingFormula::new(m) {
        Ok(f) => f,
        Err(e) => return failure(e),
    };
    let mut limits = Vec::new();
    for d in 0..=m {
        match asymptotic_proportion(m, d) {
            Ok(x) => limits.push(json!({ "dimension": d, "limit": x.to_string(), "decimal": decimal(&x) })),
            Err(e) => return failure(e),
        }
    }
    let mut series = Vec::new();
    for n in 1..=n_max {
        let total = BigInt::from(poly_bernoulli(m, n));
        let h = match f.h_all(n) {
            Ok(h) => h,
            Err(e) => return failure(e),
        };
        let shares: Vec<f64> = (0..=m)
            .map(|d| {
                let count = h.get(d).cloned().unwrap_or_default();
                decimal(&BigRational::new(count.into(), total.clone()))
            })
            .collect();
        series.push(json!({ "n": n, "shares": shares }));
    }
    json!({ "ok": true, "m": m, "limits": limits, "series": series }).to_string()
}
