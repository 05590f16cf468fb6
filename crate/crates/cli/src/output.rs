//! JSON and CSV rendering. All rational values serialize as exact "p/q"
//! strings plus a convenience decimal (flagged when the decimal is only an
//! approximation), so consumers can pick either.

use dofr_core::analysis::{AuditReport, SweepRow};
use dofr_core::corners::CornerPoint;
use dofr_core::geometry::{DofPoint, Halfspace, Polytope, Rational};
use dofr_core::regions::{AntennaConfig, CsitQuality, NormalizedConfig};
use dofr_core::{Recipe, RecipeMode};
use serde_json::{json, Value};

pub fn rational(r: &Rational) -> Value {
    let (decimal, approximate) = r.decimal_string();
    json!({
        "frac": r.to_string(),
        "decimal": decimal,
        "approximate": approximate,
    })
}

pub fn point(p: &DofPoint) -> Value {
    json!({
        "d1": rational(&p.d1),
        "d2": rational(&p.d2),
        "d0": rational(&p.d0),
    })
}

pub fn halfspace(h: &Halfspace) -> Value {
    json!({
        "a1": rational(&h.a1),
        "a2": rational(&h.a2),
        "a0": rational(&h.a0),
        "b": rational(&h.b),
        "text": format!("{h:?}"),
    })
}

pub fn polytope(p: &Polytope) -> Value {
    Value::Array(p.halfspaces.iter().map(halfspace).collect())
}

pub fn vertices(p: &Polytope) -> Result<Value, String> {
    let vs = p
        .enumerate_vertices()
        .map_err(|e| format!("vertex enumeration failed: {e}"))?;
    Ok(Value::Array(vs.iter().map(point).collect()))
}

pub fn config(c: &AntennaConfig, q: &CsitQuality) -> Value {
    json!({
        "m": c.m,
        "n1": c.n1,
        "n2": c.n2,
        "alpha1": rational(&q.alpha1),
        "alpha2": rational(&q.alpha2),
    })
}

pub fn normalized(n: &NormalizedConfig, q: &CsitQuality) -> Value {
    json!({
        "m": n.m,
        "n1": n.n1,
        "n2": n.n2,
        "receivers_swapped": n.receivers_swapped,
        "alpha1": rational(&q.alpha1),
        "alpha2": rational(&q.alpha2),
    })
}

/// Corner entry with the point mapped back to the original receiver order.
pub fn corner(c: &CornerPoint, swap_back: bool) -> Value {
    let pt = c.point.as_ref().map(|p| if swap_back { p.swapped() } else { p.clone() });
    json!({
        "label": c.label.to_string(),
        "point": pt.as_ref().map(point),
        "exists": c.exists,
        "condition": c.condition,
    })
}

pub fn recipe(r: &Recipe) -> Value {
    let mode = match &r.mode {
        RecipeMode::Single(a) => json!({
            "mode": "single",
            "a1": rational(&a.a1),
            "a2": rational(&a.a2),
        }),
        RecipeMode::SpaceTime(st) => json!({
            "mode": "space-time",
            "rho": rational(&st.rho),
            "phase1": {"a1": rational(&st.phase1.a1), "a2": rational(&st.phase1.a2)},
            "phase2": {"a1": rational(&st.phase2.a1), "a2": rational(&st.phase2.a2)},
        }),
    };
    json!({
        "allocation": mode,
        "d0": rational(&r.d0),
        "dc_to_user1": rational(&r.dc_to_user1),
        "dc_to_user2": rational(&r.dc_to_user2),
    })
}

pub fn audit(r: &AuditReport) -> Value {
    json!({
        "passed": r.passed,
        "mismatches": r.mismatches.iter().map(|m| json!({
            "subject": m.subject,
            "expected": m.expected,
            "actual": m.actual,
        })).collect::<Vec<_>>(),
    })
}

/// Fixed CSV column order: alpha1, alpha2, case, sum_dof, sum_dof_lp,
/// corner_count, audits_passed.
pub fn sweep_csv(rows: &[SweepRow]) -> Result<String, String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "alpha1",
        "alpha2",
        "case",
        "sum_dof",
        "sum_dof_lp",
        "corner_count",
        "audits_passed",
    ])
    .map_err(|e| e.to_string())?;
    for r in rows {
        w.write_record([
            r.alpha1.to_string(),
            r.alpha2.to_string(),
            r.case.to_string(),
            r.sum_dof_formula.to_string(),
            r.sum_dof_lp.to_string(),
            r.corner_count.to_string(),
            r.audits_passed.to_string(),
        ])
        .map_err(|e| e.to_string())?;
    }
    String::from_utf8(w.into_inner().map_err(|e| e.to_string())?).map_err(|e| e.to_string())
}

pub fn sweep_json(rows: &[SweepRow]) -> Value {
    Value::Array(
        rows.iter()
            .map(|r| {
                json!({
                    "alpha1": rational(&r.alpha1),
                    "alpha2": rational(&r.alpha2),
                    "case": r.case.to_string(),
                    "sum_dof": rational(&r.sum_dof_formula),
                    "sum_dof_lp": rational(&r.sum_dof_lp),
                    "corner_count": r.corner_count,
                    "audits_passed": r.audits_passed,
                })
            })
            .collect(),
    )
}
