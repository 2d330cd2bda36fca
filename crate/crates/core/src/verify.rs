//! Cross-checks between the independent routes to stratum dimension, run
//! over every diagram of bounded size.

use rayon::prelude::*;
use serde::Serialize;

use crate::diagram::Diagram;
use crate::enumeration::{enum_cauchon_limited, poly_bernoulli, tally_diagrams, Method, StratumTally};
use crate::error::{Error, Result};
use crate::genfunc::CountingFormula;
use crate::linalg::{
    build_md, build_pp_for, in_kernel_md, kernel_basis_from_cycles, phi_unchecked, psi_unchecked,
    span_dim, ExactMatrix,
};
use crate::pipes::{toric_endpoints, toric_perm};

/// Hard cap on `max_cells` for a verification run: every diagram, Cauchon
/// or not, of each shape is visited.
pub const VERIFY_HARD_LIMIT: usize = 20;

/// Deliberate corruption used to confirm that the suite can fail.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fault {
    /// Negates `M(D)[0][1]` without touching `M(D)[1][0]`.
    FlipMdSign,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct CheckSummary {
    pub name: &'static str,
    pub checked: u64,
    pub failures: u64,
    pub first_failure: Option<String>,
}

impl CheckSummary {
    fn new(name: &'static str) -> Self {
        Self {
            name,
            ..Self::default()
        }
    }

    fn record(&mut self, outcome: std::result::Result<(), String>) {
        self.checked += 1;
        if let Err(msg) = outcome {
            self.failures += 1;
            self.first_failure.get_or_insert(msg);
        }
    }

    fn merge(&mut self, other: CheckSummary) {
        self.checked += other.checked;
        self.failures += other.failures;
        if self.first_failure.is_none() {
            self.first_failure = other.first_failure;
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub max_cells: usize,
    pub shapes: usize,
    pub diagrams: u64,
    pub cauchon_diagrams: u64,
    pub checks: Vec<CheckSummary>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckSummary::passed)
    }
}

/// All shapes `(m, n)` with `m, n >= 1` and `m n <= max_cells`, by
/// increasing `m` then `n`.
pub fn shapes_up_to(max_cells: usize) -> Vec<(usize, usize)> {
    (1..=max_cells)
        .flat_map(|m| (1..=max_cells / m).map(move |n| (m, n)))
        .collect()
}

fn md_with_fault(d: &Diagram, fault: Option<Fault>) -> ExactMatrix {
    let mut md = build_md(&d.white_labeling());
    if fault == Some(Fault::FlipMdSign) && md.rows() >= 2 {
        let flipped = -md.get(0, 1).clone();
        md.set(0, 1, flipped);
    }
    md
}

/// Even cycles of `τ`, `dim ker M(D)` and `dim ker(P_ω + P_σ)` agree.
pub fn check_dimension_routes(d: &Diagram, fault: Option<Fault>) -> std::result::Result<(), String> {
    let cycles = toric_perm(d).cycles().odd_cycle_count();
    let kernel = md_with_fault(d, fault).kernel_dim().expect("square");
    let pp = build_pp_for(d).kernel_dim().expect("square");
    if cycles == kernel && kernel == pp {
        Ok(())
    } else {
        Err(format!(
            "{}: cycles={cycles} ker M(D)={kernel} ker(P+P)={pp}",
            d.to_text().replace('\n', "/")
        ))
    }
}

/// `ψ∘φ = -2` on a basis of `ker(P_ω + P_σ)` and `φ∘ψ = -2` on a basis of
/// `ker M(D)`, with every image in the expected kernel and both maps
/// injective.
pub fn check_isomorphism(d: &Diagram) -> std::result::Result<(), String> {
    let fail = |what: &str| Err(format!("{}: {what}", d.to_text().replace('\n', "/")));
    let lab = d.white_labeling();
    let md = build_md(&lab);
    let pp = build_pp_for(d);

    let v_basis = kernel_basis_from_cycles(&toric_perm(d).cycles());
    let mut phi_images = Vec::with_capacity(v_basis.len());
    for v in &v_basis {
        if !pp.mul_vec(v).expect("sizes").is_zero() {
            return fail("cycle vector outside ker(P+P)");
        }
        let w = phi_unchecked(d, &lab, v);
        if !md.mul_vec(&w).expect("sizes").is_zero() || !in_kernel_md(&lab, &w).expect("sizes") {
            return fail("phi image outside ker M(D)");
        }
        if psi_unchecked(d, &lab, &w) != v.scale_int(-2) {
            return fail("psi(phi(v)) != -2v");
        }
        phi_images.push(w);
    }

    let w_basis = md.nullspace();
    let mut psi_images = Vec::with_capacity(w_basis.len());
    for w in &w_basis {
        let v = psi_unchecked(d, &lab, w);
        if !pp.mul_vec(&v).expect("sizes").is_zero() {
            return fail("psi image outside ker(P+P)");
        }
        if phi_unchecked(d, &lab, &v) != w.scale_int(-2) {
            return fail("phi(psi(w)) != -2w");
        }
        psi_images.push(v);
    }

    if v_basis.len() != w_basis.len() {
        return fail("kernel dimensions differ");
    }
    if span_dim(&phi_images) != v_basis.len() || span_dim(&psi_images) != w_basis.len() {
        return fail("phi or psi not injective");
    }
    Ok(())
}

/// `u(s) = l(s')` whenever `s'` is the next white square right of `s` in its
/// row or above `s` in its column.
pub fn check_gluing(d: &Diagram) -> std::result::Result<(), String> {
    let lab = d.white_labeling();
    for s in 0..lab.len() {
        let (_, u) = toric_endpoints(d, &lab, s).expect("label in range");
        let regions = lab.regions(s).expect("label in range");
        let neighbours = regions.right.first().into_iter().chain(regions.above.last());
        for &next in neighbours {
            let (l, _) = toric_endpoints(d, &lab, next).expect("label in range");
            if l != u {
                return Err(format!(
                    "{}: u({}) = {} but l({}) = {}",
                    d.to_text().replace('\n', "/"),
                    s + 1,
                    u + 1,
                    next + 1,
                    l + 1
                ));
            }
        }
    }
    Ok(())
}

/// Enumerated tallies by both methods, the closed form and the poly-Bernoulli
/// total all agree for one shape.
pub fn check_tally(m: usize, n: usize, max_cells: usize) -> std::result::Result<(), String> {
    let cauchon = || enum_cauchon_limited(m, n, max_cells).expect("within limit");
    let by_cycles = tally_diagrams(m, n, cauchon(), Method::Cycles);
    let by_kernel = tally_diagrams(m, n, cauchon(), Method::Kernel);
    let formula = CountingFormula::new(m)
        .and_then(|f| f.h_all(n))
        .map_err(|e| e.to_string())?;
    let formula = StratumTally::from_counts(m, n, formula.into_iter().enumerate());
    if by_cycles != by_kernel {
        return Err(format!("{m}x{n}: cycle and kernel tallies differ"));
    }
    if by_cycles != formula {
        return Err(format!("{m}x{n}: enumeration differs from closed form"));
    }
    if by_cycles.total() != poly_bernoulli(m, n) {
        return Err(format!("{m}x{n}: total differs from poly-Bernoulli number"));
    }
    Ok(())
}

fn all_diagrams(m: usize, n: usize) -> impl ParallelIterator<Item = Diagram> {
    (0..1u64 << (m * n))
        .into_par_iter()
        .map(move |mask| Diagram::from_mask(m, n, mask).expect("fits"))
}

/// Runs every check on every shape with at most `max_cells` cells. The
/// dimension-route check covers Cauchon diagrams; the isomorphism, gluing
/// and `ker(P_ω + P_σ) = ker M(D)` checks cover all diagrams.
pub fn run_suite(max_cells: usize, fault: Option<Fault>) -> Result<VerifyReport> {
    if max_cells > VERIFY_HARD_LIMIT {
        return Err(Error::EnumerationLimit {
            cells: max_cells,
            limit: VERIFY_HARD_LIMIT,
        });
    }
    let shapes = shapes_up_to(max_cells);
    let mut theorem = CheckSummary::new("odd cycles = ker M(D) = ker(P_omega+P_sigma)");
    let mut iso = CheckSummary::new("psi.phi = -2 id and phi.psi = -2 id on kernels");
    let mut glue = CheckSummary::new("gluing identity u(s) = l(next)");
    let mut tally = CheckSummary::new("tally = closed form = poly-Bernoulli total");
    let mut diagrams = 0u64;
    let mut cauchon = 0u64;

    for &(m, n) in &shapes {
        let (t, i, g, count, cauchon_count) = all_diagrams(m, n)
            .map(|d| {
                let mut t = CheckSummary::new(theorem.name);
                let mut i = CheckSummary::new(iso.name);
                let mut g = CheckSummary::new(glue.name);
                let is_cauchon = d.is_cauchon();
                if is_cauchon {
                    t.record(check_dimension_routes(&d, fault));
                }
                i.record(check_isomorphism(&d));
                g.record(check_gluing(&d));
                (t, i, g, 1u64, is_cauchon as u64)
            })
            .reduce(
                || {
                    (
                        CheckSummary::new(theorem.name),
                        CheckSummary::new(iso.name),
                        CheckSummary::new(glue.name),
                        0,
                        0,
                    )
                },
                |mut a, b| {
                    a.0.merge(b.0);
                    a.1.merge(b.1);
                    a.2.merge(b.2);
                    (a.0, a.1, a.2, a.3 + b.3, a.4 + b.4)
                },
            );
        theorem.merge(t);
        iso.merge(i);
        glue.merge(g);
        diagrams += count;
        cauchon += cauchon_count;
        tally.record(check_tally(m, n, max_cells));
    }

    Ok(VerifyReport {
        max_cells,
        shapes: shapes.len(),
        diagrams,
        cauchon_diagrams: cauchon,
        checks: vec![theorem, iso, glue, tally],
    })
}
