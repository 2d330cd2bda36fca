//! Command results and their text, JSON and CSV renderings.
//!
//! Every report is a list of scalar fields plus an optional table. All three
//! formats print the same cell strings, so numbers agree across formats.

use anyhow::Result;
use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use serde_json::{json, Map, Value};

use hstrata::cache::TallyCache;
use hstrata::enumeration::{poly_bernoulli, tally_dimensions_par, Method, StratumTally};
use hstrata::genfunc::{asymptotic_proportion, series_c, CountingFormula};
use hstrata::linalg::{build_md, build_pp_for};
use hstrata::verify::VerifyReport;
use hstrata::{stratum_dim_cycles, trace_sigma, Diagram, Permutation};

use crate::{CountMethod, OutputFormat};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Ok,
    Warning,
    Failed,
}

impl Outcome {
    fn as_str(self) -> &'static str {
        match self {
            Outcome::Ok => "ok",
            Outcome::Warning => "warning",
            Outcome::Failed => "failed",
        }
    }
}

#[derive(Debug, Clone)]
pub enum Cell {
    Int(u64),
    /// Arbitrary-precision integer or rational, kept as a decimal string.
    Num(String),
    Text(String),
    Bool(bool),
    List(Vec<u64>),
    Missing,
}

impl Cell {
    fn big(x: &BigUint) -> Self {
        Cell::Num(x.to_string())
    }

    fn plain(&self, list_sep: &str) -> String {
        match self {
            Cell::Int(x) => x.to_string(),
            Cell::Num(s) | Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
            Cell::List(xs) => xs.iter().map(u64::to_string).collect::<Vec<_>>().join(list_sep),
            Cell::Missing => "-".into(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Int(x) => json!(x),
            Cell::Num(s) | Cell::Text(s) => json!(s),
            Cell::Bool(b) => json!(b),
            Cell::List(xs) => json!(xs),
            Cell::Missing => Value::Null,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

#[derive(Debug, Clone)]
pub struct Report {
    pub command: &'static str,
    pub outcome: Outcome,
    pub warnings: Vec<String>,
    pub fields: Vec<(String, Cell)>,
    pub table: Option<Table>,
    /// Replaces the field listing in text output.
    pub text_body: Option<String>,
}

impl Report {
    fn new(command: &'static str) -> Self {
        Self {
            command,
            outcome: Outcome::Ok,
            warnings: Vec::new(),
            fields: Vec::new(),
            table: None,
            text_body: None,
        }
    }

    fn field(&mut self, key: &str, value: Cell) {
        self.fields.push((key.to_string(), value));
    }

    fn fail(&mut self, message: String) {
        self.outcome = Outcome::Failed;
        self.warnings.push(message);
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Text => self.render_text(),
            OutputFormat::Json => self.render_json(),
            OutputFormat::Csv => self.render_csv(),
        }
    }

    fn render_text(&self) -> String {
        let mut out = String::new();
        if let Some(body) = &self.text_body {
            out.push_str(body);
            out.push('\n');
        } else {
            let width = self.fields.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
            for (k, v) in &self.fields {
                out.push_str(&format!("{k:<width$}  {}\n", v.plain(", ")));
            }
        }
        if let Some(t) = &self.table {
            let cells: Vec<Vec<String>> = t.rows.iter().map(|r| r.iter().map(|c| c.plain(",")).collect()).collect();
            let widths: Vec<usize> = (0..t.header.len())
                .map(|j| cells.iter().map(|r| r[j].len()).chain([t.header[j].len()]).max().unwrap_or(0))
                .collect();
            let line = |row: &[String]| {
                let padded: Vec<String> = row.iter().zip(&widths).map(|(s, w)| format!("{s:>w$}")).collect();
                padded.join("  ").trim_end().to_string() + "\n"
            };
            out.push('\n');
            out.push_str(&line(&t.header));
            for r in &cells {
                out.push_str(&line(r));
            }
        }
        if self.text_body.is_none() {
            out.push_str(&format!("\nstatus: {}\n", self.outcome.as_str()));
        }
        out
    }

    fn render_json(&self) -> String {
        let mut doc = Map::new();
        doc.insert("command".into(), json!(self.command));
        doc.insert("status".into(), json!(self.outcome.as_str()));
        for (k, v) in &self.fields {
            doc.insert(k.clone(), v.json());
        }
        if let Some(t) = &self.table {
            let rows: Vec<Value> = t
                .rows
                .iter()
                .map(|r| {
                    Value::Object(t.header.iter().cloned().zip(r.iter().map(Cell::json)).collect())
                })
                .collect();
            doc.insert("rows".into(), Value::Array(rows));
        }
        if !self.warnings.is_empty() {
            doc.insert("warnings".into(), json!(self.warnings));
        }
        serde_json::to_string_pretty(&Value::Object(doc)).expect("serializable") + "\n"
    }

    /// The table if there is one, otherwise the fields as `key,value` rows.
    fn render_csv(&self) -> String {
        let mut out = String::new();
        let mut row = |cells: Vec<String>| {
            let escaped: Vec<String> = cells.iter().map(|c| csv_escape(c)).collect();
            out.push_str(&escaped.join(","));
            out.push('\n');
        };
        match &self.table {
            Some(t) => {
                row(t.header.clone());
                for r in &t.rows {
                    row(r.iter().map(|c| c.plain(";")).collect());
                }
            }
            None => {
                row(vec!["key".into(), "value".into()]);
                for (k, v) in &self.fields {
                    row(vec![k.clone(), v.plain(";")]);
                }
                row(vec!["status".into(), self.outcome.as_str().into()]);
            }
        }
        out
    }
}

fn csv_escape(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn ratio_decimal(x: &BigRational) -> String {
    format!("{:.12}", x.to_f64().unwrap_or(f64::NAN))
}

fn gap_decimal(x: &BigRational) -> String {
    format!("{:.6e}", x.to_f64().unwrap_or(f64::NAN))
}

pub fn dim(d: &Diagram) -> Report {
    let mut r = Report::new("dim");
    let lab = d.white_labeling();
    let info = stratum_dim_cycles(d);
    let kernel = build_md(&lab).kernel_dim().expect("square");
    let pp_kernel = build_pp_for(d).kernel_dim().expect("square");
    let agree = info.dimension == kernel && kernel == pp_kernel;

    r.field("m", Cell::Int(d.rows() as u64));
    r.field("n", Cell::Int(d.cols() as u64));
    r.field("cauchon", Cell::Bool(info.cauchon));
    r.field("white_squares", Cell::Int(lab.len() as u64));
    r.field("sigma", Cell::Text(trace_sigma(d).cycles().to_compact_string()));
    r.field("tau", Cell::Text(info.toric.to_compact_string()));
    r.field(
        "cycle_lengths",
        Cell::List(info.toric.lengths().into_iter().map(|x| x as u64).collect()),
    );
    r.field("odd_cycles", Cell::Int(info.dimension as u64));
    r.field("kernel_dim_md", Cell::Int(kernel as u64));
    r.field("kernel_dim_pp", Cell::Int(pp_kernel as u64));
    r.field("agree", Cell::Bool(agree));
    r.field(
        "dimension",
        if agree { Cell::Int(info.dimension as u64) } else { Cell::Missing },
    );

    if !agree {
        r.fail(format!(
            "dimension routes disagree: cycles={} ker M(D)={kernel} ker(P+P)={pp_kernel}",
            info.dimension
        ));
    } else if !info.cauchon {
        r.outcome = Outcome::Warning;
        r.warnings
            .push("diagram is not Cauchon; the dimension does not describe an H-stratum".into());
    }
    r
}

fn tally_by(
    m: usize,
    n: usize,
    method: CountMethod,
    limit: usize,
    cache: Option<&TallyCache>,
) -> Result<StratumTally> {
    Ok(match method {
        CountMethod::Enum => {
            let compute = || tally_dimensions_par(m, n, Method::Cycles, limit);
            match cache {
                // The cache only ever holds complete tallies, so check the limit first.
                Some(c) if m * n <= limit => c.get_or_compute(m, n, Method::Cycles, compute)?,
                _ => compute()?,
            }
        }
        CountMethod::Formula => {
            let counts = CountingFormula::new(m)?.h_all(n)?;
            StratumTally::from_counts(m, n, counts.into_iter().enumerate())
        }
        CountMethod::Series => {
            let s = series_c(m, n)?;
            let poly = s.egf_coeff(m, n);
            let counts = (0..=poly.degree().unwrap_or(0)).map(|d| {
                let c = poly.coeff(d);
                assert!(c.is_integer() && !c.is_negative(), "series coefficient {c} is not a count");
                (d, c.to_integer().to_biguint().expect("nonnegative"))
            });
            StratumTally::from_counts(m, n, counts.collect::<Vec<_>>())
        }
    })
}

fn method_name(m: CountMethod) -> &'static str {
    match m {
        CountMethod::Enum => "enum",
        CountMethod::Formula => "formula",
        CountMethod::Series => "series",
    }
}

pub fn count(
    m: usize,
    n: usize,
    methods: &[CountMethod],
    limit: usize,
    cache: Option<&TallyCache>,
) -> Result<Report> {
    if m == 0 || n == 0 {
        anyhow::bail!("m and n must be at least 1");
    }
    let tallies = methods
        .iter()
        .map(|&meth| tally_by(m, n, meth, limit, cache))
        .collect::<Result<Vec<_>>>()?;
    let expected_total = poly_bernoulli(m, n);

    let mut r = Report::new("count");
    r.field("m", Cell::Int(m as u64));
    r.field("n", Cell::Int(n as u64));
    r.field(
        "methods",
        Cell::Text(methods.iter().map(|&x| method_name(x)).collect::<Vec<_>>().join(",")),
    );
    r.field("poly_bernoulli", Cell::big(&expected_total));

    let max_dim = tallies.iter().filter_map(StratumTally::max_dimension).max().unwrap_or(0);
    let mut header = vec!["dimension".to_string()];
    header.extend(methods.iter().map(|&x| method_name(x).to_string()));
    let mut rows: Vec<Vec<Cell>> = (0..=max_dim)
        .map(|d| {
            let mut row = vec![Cell::Text(d.to_string())];
            row.extend(tallies.iter().map(|t| Cell::big(&t.get(d))));
            row
        })
        .collect();
    let mut total_row = vec![Cell::Text("total".into())];
    total_row.extend(tallies.iter().map(|t| Cell::big(&t.total())));
    rows.push(total_row);
    r.table = Some(Table { header, rows });

    for (meth, t) in methods.iter().zip(&tallies) {
        if t != &tallies[0] {
            r.fail(format!(
                "{} disagrees with {}",
                method_name(*meth),
                method_name(methods[0])
            ));
        }
        if t.total() != expected_total {
            r.fail(format!("{} total differs from the poly-Bernoulli number", method_name(*meth)));
        }
    }
    Ok(r)
}

pub fn verify(v: VerifyReport) -> Report {
    let mut r = Report::new("verify");
    r.field("max_cells", Cell::Int(v.max_cells as u64));
    r.field("shapes", Cell::Int(v.shapes as u64));
    r.field("diagrams", Cell::Int(v.diagrams));
    r.field("cauchon_diagrams", Cell::Int(v.cauchon_diagrams));
    let rows = v
        .checks
        .iter()
        .map(|c| {
            vec![
                Cell::Text(c.name.to_string()),
                Cell::Int(c.checked),
                Cell::Int(c.failures),
                c.first_failure.clone().map_or(Cell::Missing, Cell::Text),
            ]
        })
        .collect();
    r.table = Some(Table {
        header: ["check", "checked", "failures", "first_failure"].map(String::from).to_vec(),
        rows,
    });
    for c in &v.checks {
        if !c.passed() {
            r.fail(format!("{}: {} failures", c.name, c.failures));
        }
    }
    r
}

pub fn asymptotics(m: usize, d: usize, n_max: usize) -> Result<Report> {
    let formula = CountingFormula::new(m)?;
    let limit = asymptotic_proportion(m, d)?;
    let mut r = Report::new("asymptotics");
    r.field("m", Cell::Int(m as u64));
    r.field("d", Cell::Int(d as u64));
    r.field("limit", Cell::Num(limit.to_string()));
    r.field("limit_decimal", Cell::Num(ratio_decimal(&limit)));

    let mut rows = Vec::with_capacity(n_max);
    let mut gaps = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        let h = formula.h(n, d)?;
        let b = poly_bernoulli(m, n);
        let ratio = BigRational::new(h.clone().into(), b.clone().into());
        let gap = (&ratio - &limit).abs();
        rows.push(vec![
            Cell::Text(n.to_string()),
            Cell::big(&h),
            Cell::big(&b),
            Cell::Num(ratio.to_string()),
            Cell::Num(ratio_decimal(&ratio)),
            Cell::Num(gap_decimal(&gap)),
        ]);
        gaps.push(gap);
    }
    // Smallest n from which the gap never increases.
    let mut from = gaps.len();
    while from > 1 && gaps[from - 2] >= gaps[from - 1] {
        from -= 1;
    }
    r.field("gap_nonincreasing_from_n", Cell::Int(from as u64));
    r.table = Some(Table {
        header: ["n", "count", "total", "ratio", "ratio_decimal", "gap"].map(String::from).to_vec(),
        rows,
    });
    Ok(r)
}

pub fn lookup(sigma: &Permutation, m: usize, n: usize, found: Option<&Diagram>) -> Report {
    let mut r = Report::new("lookup");
    r.field("permutation", Cell::Text(sigma.to_string()));
    r.field("m", Cell::Int(m as u64));
    r.field("n", Cell::Int(n as u64));
    r.field("found", Cell::Bool(found.is_some()));
    match found {
        Some(d) => {
            r.field("diagram", Cell::Text(d.to_text()));
            r.text_body = Some(d.to_text());
        }
        None => {
            r.field("diagram", Cell::Missing);
            r.text_body = Some("not-found".into());
        }
    }
    r
}

pub fn coeffs(m: usize, d: usize) -> Result<Report> {
    let formula = CountingFormula::new(m)?;
    let cf = formula.closed_form(d);
    let mut r = Report::new("coeffs");
    r.field("m", Cell::Int(m as u64));
    r.field("d", Cell::Int(d as u64));
    r.field("formula", Cell::Text(cf.to_formula_string()));
    r.table = Some(Table {
        header: vec!["base".into(), "coefficient".into()],
        rows: cf
            .coeffs
            .iter()
            .rev()
            .map(|(k, c)| vec![Cell::Text(k.to_string()), Cell::Num(c.to_string())])
            .collect(),
    });
    for n in 1..=6 {
        let value = cf.evaluate(n);
        let direct = BigRational::from_integer(formula.h(n, d)?.into());
        if value != direct {
            r.fail(format!("closed form at n={n} gives {value}, direct sum gives {direct}"));
        }
    }
    Ok(r)
}
