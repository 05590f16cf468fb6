//! Cross-cutting verification and reporting.
//!
//! The audits are the executable form of the closed-form claims: the
//! labeled corner catalog must equal the brute-force vertex enumeration,
//! the combined outer bounds must be vertex-equal to the achievable region,
//! and the delayed-CSIT region must sit inside the imperfect-CSIT region.
//! Audits return structured reports so a failure names the label, face, or
//! vertex at fault.

use rayon::prelude::*;

use crate::corners::corner_catalog;
use crate::geometry::{DofPoint, Rational};
use crate::regions::{
    classify_case, combine_outer, delta, normalize, outer_d1, outer_d2, rat, region_delayed,
    region_imperfect, threshold_mid, AntennaConfig, CaseId, CsitQuality,
};

/// One discrepancy found by an audit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    /// What disagreed: a corner label, a halfspace, or a vertex.
    pub subject: String,
    pub expected: String,
    pub actual: String,
}

/// Outcome of one audit at one parameter point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuditReport {
    pub config: AntennaConfig,
    pub csit: CsitQuality,
    pub mismatches: Vec<Mismatch>,
    pub passed: bool,
}

impl AuditReport {
    fn new(config: AntennaConfig, csit: CsitQuality, mismatches: Vec<Mismatch>) -> Self {
        let passed = mismatches.is_empty();
        AuditReport { config, csit, mismatches, passed }
    }
}

/// Closed-form sum-DoF, keyed to the case thresholds.
pub fn sum_dof_formula(n: &crate::regions::NormalizedConfig, q: &CsitQuality) -> Rational {
    let n1 = rat(n.n1);
    let n2 = rat(n.n2);
    match classify_case(n, q) {
        CaseId::Degenerate => rat(n.m),
        CaseId::Case1 => &n2 + &(rat(n.m - n.n2) * &q.alpha2),
        CaseId::Case2 | CaseId::Case3 => {
            let t_mid = threshold_mid(n);
            let first = &n1 + &(rat(n.m - n.n1) * &q.alpha1);
            let second = &n2
                + &(rat(n.m - n.n2) * &(&(&(&t_mid * &q.alpha2) - &t_mid) + &q.alpha1));
            first.max(second)
        }
        CaseId::Case4 => {
            let gain = (&(rat(n.m - n.n2) * rat(n.m - n.n2)) * &(&q.alpha1 * &q.alpha2))
                .checked_div(&delta(n, q))
                .expect("Delta > 0 in case 4");
            let first = &gain + &n2;
            let second = &(rat(n.m - n.n1) * &q.alpha1) + &n1;
            first.max(second)
        }
    }
}

fn weights_111() -> (Rational, Rational, Rational) {
    (Rational::one(), Rational::one(), Rational::one())
}

fn fmt_points(points: &[&DofPoint]) -> String {
    points
        .iter()
        .map(|p| p.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

/// Checks that the labeled catalog (existing points, mapped back to the
/// original receiver order) equals the brute-force vertex set exactly, and
/// that every non-existing candidate carries a concrete certificate.
pub fn audit_corners(c: &AntennaConfig, q: &CsitQuality) -> AuditReport {
    let (n, qn) = normalize(c, q);
    let catalog = corner_catalog(&n, &qn);
    let region = region_imperfect(c, q);
    let vertices = region
        .enumerate_vertices()
        .expect("achievable regions are bounded");
    let mut catalog_points: Vec<DofPoint> = catalog
        .iter()
        .filter(|e| e.exists)
        .map(|e| {
            let p = e.point.clone().expect("existing corners have points");
            if n.receivers_swapped { p.swapped() } else { p }
        })
        .collect();
    catalog_points.sort();
    catalog_points.dedup();

    let mut mismatches = Vec::new();
    let extra: Vec<&DofPoint> = catalog_points
        .iter()
        .filter(|p| !vertices.binary_search(p).is_ok())
        .collect();
    if !extra.is_empty() {
        mismatches.push(Mismatch {
            subject: "corner catalog".to_string(),
            expected: "every existing catalog point is a region vertex".to_string(),
            actual: format!("not vertices: {}", fmt_points(&extra)),
        });
    }
    let missing: Vec<&DofPoint> = vertices
        .iter()
        .filter(|v| !catalog_points.binary_search(v).is_ok())
        .collect();
    if !missing.is_empty() {
        mismatches.push(Mismatch {
            subject: "vertex enumeration".to_string(),
            expected: "every region vertex appears in the catalog".to_string(),
            actual: format!("uncovered vertices: {}", fmt_points(&missing)),
        });
    }
    // Non-existence certificates: a failed candidate must violate a face,
    // have a negative coordinate, be rank-deficient, or be singular.
    let normalized_region = crate::regions::normalized_region(&n, &qn);
    for entry in catalog.iter().filter(|e| !e.exists) {
        match &entry.point {
            None => {} // singular defining system is its own certificate
            Some(p) => {
                let in_region = normalized_region.contains(p);
                let rank_ok = normalized_region.active_rank(p) == 3;
                if in_region && rank_ok {
                    mismatches.push(Mismatch {
                        subject: format!("corner {}", entry.label),
                        expected: "non-existing candidate violates a face or is rank-deficient"
                            .to_string(),
                        actual: format!("{p} is a vertex but was reported non-existing"),
                    });
                }
            }
        }
    }
    AuditReport::new(*c, q.clone(), mismatches)
}

/// Checks that the pruned intersection of the two outer bounds is
/// vertex-equal to the achievable region.
pub fn audit_converse(c: &AntennaConfig, q: &CsitQuality) -> AuditReport {
    let combined = combine_outer(&outer_d1(c, q), &outer_d2(c, q))
        .expect("outer bounds are bounded");
    let achievable = region_imperfect(c, q);
    let outer_vertices = combined.enumerate_vertices().expect("bounded");
    let inner_vertices = achievable.enumerate_vertices().expect("bounded");
    let mut mismatches = Vec::new();
    if outer_vertices != inner_vertices {
        let extra: Vec<&DofPoint> = outer_vertices
            .iter()
            .filter(|v| inner_vertices.binary_search(v).is_err())
            .collect();
        let missing: Vec<&DofPoint> = inner_vertices
            .iter()
            .filter(|v| outer_vertices.binary_search(v).is_err())
            .collect();
        mismatches.push(Mismatch {
            subject: "combined outer bound".to_string(),
            expected: "vertex-equal to the achievable region".to_string(),
            actual: format!(
                "outer-only: [{}]; achievable-only: [{}]",
                fmt_points(&extra),
                fmt_points(&missing)
            ),
        });
    }
    AuditReport::new(*c, q.clone(), mismatches)
}

/// Checks that every vertex of the delayed-CSIT region lies inside the
/// imperfect-CSIT region.
pub fn audit_containment_delayed(c: &AntennaConfig, q: &CsitQuality) -> AuditReport {
    let inner = region_delayed(c, q);
    let outer = region_imperfect(c, q);
    let mut mismatches = Vec::new();
    for v in inner.enumerate_vertices().expect("delayed region is bounded") {
        if !outer.contains(&v) {
            let violated = outer
                .halfspaces
                .iter()
                .find(|h| !h.satisfied_by(&v))
                .map(|h| format!("violates {h:?} (lhs = {})", h.eval(&v)))
                .unwrap_or_else(|| "negative coordinate".to_string());
            mismatches.push(Mismatch {
                subject: format!("delayed vertex {v}"),
                expected: "contained in the imperfect-CSIT region".to_string(),
                actual: violated,
            });
        }
    }
    AuditReport::new(*c, q.clone(), mismatches)
}

/// One row of a parameter sweep.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepRow {
    pub alpha1: Rational,
    pub alpha2: Rational,
    pub case: CaseId,
    pub sum_dof_formula: Rational,
    pub sum_dof_lp: Rational,
    pub corner_count: usize,
    pub audits_passed: bool,
}

/// Evaluates one grid point: case, closed-form and oracle sum-DoF, number
/// of existing corners, and the three audits.
pub fn sweep_row(c: &AntennaConfig, q: &CsitQuality) -> SweepRow {
    let (n, qn) = normalize(c, q);
    let formula = sum_dof_formula(&n, &qn);
    let lp = region_imperfect(c, q)
        .maximize_linear(&weights_111())
        .expect("achievable regions are bounded and nonempty");
    let corner_count = corner_catalog(&n, &qn).iter().filter(|e| e.exists).count();
    let audits_passed = audit_corners(c, q).passed
        && audit_converse(c, q).passed
        && audit_containment_delayed(c, q).passed;
    SweepRow {
        alpha1: q.alpha1.clone(),
        alpha2: q.alpha2.clone(),
        case: classify_case(&n, &qn),
        sum_dof_formula: formula,
        sum_dof_lp: lp,
        corner_count,
        audits_passed,
    }
}

/// Runs `sweep_row` over a grid. Rows are evaluated in parallel and
/// assembled in grid order, so output is deterministic.
pub fn sweep(c: &AntennaConfig, grid: &[CsitQuality]) -> Vec<SweepRow> {
    grid.par_iter().map(|q| sweep_row(c, q)).collect()
}
