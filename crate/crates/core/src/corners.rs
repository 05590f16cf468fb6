//! Closed-form corner-point catalog of the DoF regions.
//!
//! Each labeled candidate is the intersection of three named region faces
//! (P_ij meets faces i and j on a coordinate plane, P_ijk meets three
//! faces). Points are computed from the closed-form expressions, never from
//! the vertex-enumeration oracle, so the catalog and the oracle stay
//! independent routes that the audits compare.
//!
//! A candidate's `exists` verdict is geometric: the point must be
//! componentwise nonnegative, inside the region, and have three linearly
//! independent active constraints. When antenna counts coincide (N1 = N2)
//! the sum bound and the weighted-sum bounds become parallel, which makes
//! some candidates rank-deficient (mid-edge points) or leaves their defining
//! system singular; both situations are reported as non-existence, matching
//! the zero-determinant argument used for the never-existing face triples.

use std::fmt;

use crate::geometry::{DofPoint, Polytope, Rational};
use crate::regions::{
    alpha0, classify_case, normalized_region, rat, threshold_high, threshold_mid, CaseId,
    CsitQuality, NormalizedConfig,
};

/// Labels for the corner-point candidates, including the origin.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CornerLabel {
    Origin,
    P1,
    P2,
    P0,
    P12,
    P13,
    P14,
    P14Prime,
    P23,
    P24,
    P34,
    P123,
    P124,
    P234,
}

impl CornerLabel {
    pub const ALL: [CornerLabel; 14] = [
        CornerLabel::Origin,
        CornerLabel::P1,
        CornerLabel::P2,
        CornerLabel::P0,
        CornerLabel::P12,
        CornerLabel::P13,
        CornerLabel::P14,
        CornerLabel::P14Prime,
        CornerLabel::P23,
        CornerLabel::P24,
        CornerLabel::P34,
        CornerLabel::P123,
        CornerLabel::P124,
        CornerLabel::P234,
    ];

    pub fn parse(s: &str) -> Option<CornerLabel> {
        let canon = s.trim().to_ascii_uppercase();
        CornerLabel::ALL
            .into_iter()
            .find(|l| l.to_string().to_ascii_uppercase() == canon)
            .or(match canon.as_str() {
                "ORIGIN" => Some(CornerLabel::Origin),
                "P14P" | "P14PRIME" => Some(CornerLabel::P14Prime),
                _ => None,
            })
    }
}

impl fmt::Display for CornerLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CornerLabel::Origin => "O",
            CornerLabel::P1 => "P1",
            CornerLabel::P2 => "P2",
            CornerLabel::P0 => "P0",
            CornerLabel::P12 => "P12",
            CornerLabel::P13 => "P13",
            CornerLabel::P14 => "P14",
            CornerLabel::P14Prime => "P14'",
            CornerLabel::P23 => "P23",
            CornerLabel::P24 => "P24",
            CornerLabel::P34 => "P34",
            CornerLabel::P123 => "P123",
            CornerLabel::P124 => "P124",
            CornerLabel::P234 => "P234",
        };
        f.write_str(s)
    }
}

/// A labeled candidate with its existence verdict.
///
/// `point` is `None` when the defining face triple is linearly dependent
/// (no unique intersection), which can only happen at coinciding antenna
/// counts; such candidates never exist.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CornerPoint {
    pub label: CornerLabel,
    pub point: Option<DofPoint>,
    pub exists: bool,
    pub condition: String,
}

fn point(d1: Rational, d2: Rational, d0: Rational) -> Option<DofPoint> {
    Some(DofPoint::new(d1, d2, d0))
}

struct Params {
    n1: Rational,
    n2: Rational,
    mn1: Rational, // M - N1
    mn2: Rational, // M - N2
    d21: Rational, // N2 - N1
    a1: Rational,
    a2: Rational,
    /// Sum bound N2 + (M - N2) alpha0 for the active case.
    s3: Rational,
}

impl Params {
    fn new(n: &NormalizedConfig, q: &CsitQuality) -> Self {
        let a0 = alpha0(n, q).expect("catalog requires non-degenerate config");
        let n2 = rat(n.n2);
        let s3 = &n2 + &(rat(n.m - n.n2) * &a0);
        Params {
            n1: rat(n.n1),
            n2,
            mn1: rat(n.m - n.n1),
            mn2: rat(n.m - n.n2),
            d21: rat(n.n2 - n.n1),
            a1: q.alpha1.clone(),
            a2: q.alpha2.clone(),
            s3,
        }
    }

    /// (M - N1) alpha1, the recurring receiver-2 private load.
    fn load2(&self) -> Rational {
        &self.mn1 * &self.a1
    }
}

/// Closed-form candidate point for a label under the active case's sum
/// bound. `None` marks a singular defining system.
fn candidate_point(label: CornerLabel, case: CaseId, p: &Params) -> Option<DofPoint> {
    let zero = Rational::zero;
    match label {
        CornerLabel::Origin => point(zero(), zero(), zero()),
        CornerLabel::P1 => point(p.n1.clone(), zero(), zero()),
        CornerLabel::P2 => point(zero(), p.n2.clone(), zero()),
        CornerLabel::P0 => point(zero(), zero(), p.n1.clone()),
        CornerLabel::P12 => point(zero(), p.d21.clone(), p.n1.clone()),
        CornerLabel::P13 => point(p.n1.clone(), &p.s3 - &p.n1, zero()),
        CornerLabel::P23 => point(&p.s3 - &p.n2, p.n2.clone(), zero()),
        CornerLabel::P123 => {
            let x = &p.s3 - &p.n2;
            point(x.clone(), &p.d21 + &x, &p.n1 - &x)
        }
        CornerLabel::P14 => point(p.n1.clone(), p.load2(), zero()),
        CornerLabel::P14Prime => point(zero(), p.load2(), p.n1.clone()),
        CornerLabel::P124 => {
            let l = p.load2();
            point(&l - &p.d21, l.clone(), &p.n2 - &l)
        }
        CornerLabel::P24 => {
            // l2 and l4 are parallel on the d1 = 0 plane when N1 = N2.
            let d0 = (&p.n1 * &p.load2()).checked_div(&p.d21).ok()?;
            point(zero(), &p.n2 - &d0, d0)
        }
        CornerLabel::P34 => match case {
            CaseId::Case4 => {
                if p.d21.is_zero() {
                    // The sum bound and the weighted-sum bound coincide on
                    // the d0 = 0 face; no unique intersection.
                    return None;
                }
                let dl = &(&p.mn2 * &p.a2) + &(&p.d21 * &(&Rational::one() - &p.a1));
                let d1 = (&(&p.n1 * &p.a1)
                    * &(&(&p.mn1 * &(&Rational::one() - &p.a1)) + &(&p.mn2 * &p.a2)))
                    .checked_div(&dl)
                    .ok()?;
                point(d1.clone(), &p.s3 - &d1, zero())
            }
            _ => {
                let d1 = (&p.n1 * &(&(&p.n2 + &p.load2()) - &p.s3)).checked_div(&p.d21).ok()?;
                point(d1.clone(), &p.s3 - &d1, zero())
            }
        },
        CornerLabel::P234 => match case {
            CaseId::Case4 => {
                if p.d21.is_zero() {
                    return None;
                }
                let dl = &(&p.mn2 * &p.a2) + &(&p.d21 * &(&Rational::one() - &p.a1));
                let d1 = (&(&p.mn2 * &p.mn2) * &(&p.a1 * &p.a2)).checked_div(&dl).ok()?;
                let one = Rational::one();
                let d0_num = &(&(&p.mn2 * &(&(&p.n1 + &p.n2) - &(&p.mn2 + &p.n2))) * &p.a2)
                    + &(&(&p.mn1 * &p.n1) * &(&one - &p.a1));
                // (M-N2)(N1+N2-M) alpha2 + (M-N1) N1 (1-alpha1), times alpha1 / Delta.
                let d0 = (&d0_num * &p.a1).checked_div(&dl).ok()?;
                point(d1, &p.n2 - &d0, d0)
            }
            _ => {
                let d1 = &p.s3 - &p.n2;
                let d0 = (&(&p.n1 * &p.load2()) - &(&p.n2 * &d1)).checked_div(&p.d21).ok()?;
                point(d1, &p.n2 - &d0, d0)
            }
        },
    }
}

/// Existence condition text for the case-dependent candidates; empty when
/// the candidate exists unconditionally within its case.
fn condition_text(label: CornerLabel, case: CaseId, p: &Params, n: &NormalizedConfig, q: &CsitQuality) -> String {
    let t_mid = threshold_mid(n);
    match (case, label) {
        (CaseId::Case4, CornerLabel::P234) => format!(
            "alpha1 <= (N2-N1+(M-N2) alpha2)/(M-N1): {} <= {}",
            q.alpha1,
            threshold_high(n, q)
        ),
        (CaseId::Case4, CornerLabel::P123) => {
            let x = &p.s3 - &p.n2;
            let w = &p.load2() - &p.d21;
            format!(
                "(M-N2)^2 alpha1 alpha2 / Delta <= min{{(M-N1) alpha1 - (N2-N1), N1}}: {} <= min{{{}, {}}}",
                x, w, p.n1
            )
        }
        (CaseId::Case4, CornerLabel::P124) => {
            let x = &p.s3 - &p.n2;
            let w = &p.load2() - &p.d21;
            format!(
                "(M-N1) alpha1 - (N2-N1) <= (M-N2)^2 alpha1 alpha2 / Delta and (N2-N1)/(M-N1) <= alpha1 <= N2/(M-N1): {} <= {} and {} <= {} <= {}",
                w,
                x,
                t_mid,
                q.alpha1,
                p.n2.checked_div(&p.mn1).expect("M > N1")
            )
        }
        (CaseId::Case4, CornerLabel::P12) => {
            format!("(N2-N1)/(M-N1) <= alpha1: {} <= {}", t_mid, q.alpha1)
        }
        (CaseId::Case4, CornerLabel::P14Prime | CornerLabel::P24) => {
            format!("alpha1 <= (N2-N1)/(M-N1): {} <= {}", q.alpha1, t_mid)
        }
        _ => String::new(),
    }
}

/// Why a contained-or-not candidate fails the vertex test, if it does.
fn certificate(region: &Polytope, pt: &DofPoint) -> Option<String> {
    if !pt.is_nonnegative() {
        return Some("negative coordinate".to_string());
    }
    for (idx, h) in region.halfspaces.iter().enumerate() {
        if !h.satisfied_by(pt) {
            return Some(format!("violates region face {}", idx + 1));
        }
    }
    if region.active_rank(pt) < 3 {
        return Some("active constraints are rank-deficient (mid-face point)".to_string());
    }
    None
}

/// The full labeled catalog for a normalized configuration, in normalized
/// coordinates. Degenerate configs reduce to the on-coordinate points.
pub fn corner_catalog(n: &NormalizedConfig, q: &CsitQuality) -> Vec<CornerPoint> {
    if n.is_degenerate() {
        let cap = rat(n.m);
        let zero = Rational::zero;
        let pts = [
            (CornerLabel::Origin, DofPoint::origin()),
            (CornerLabel::P1, DofPoint::new(cap.clone(), zero(), zero())),
            (CornerLabel::P2, DofPoint::new(zero(), cap.clone(), zero())),
            (CornerLabel::P0, DofPoint::new(zero(), zero(), cap)),
        ];
        return pts
            .into_iter()
            .map(|(label, pt)| CornerPoint {
                label,
                point: Some(pt),
                exists: true,
                condition: String::new(),
            })
            .collect();
    }
    let case = classify_case(n, q);
    let params = Params::new(n, q);
    let region = normalized_region(n, q);
    CornerLabel::ALL
        .into_iter()
        .map(|label| {
            let pt = candidate_point(label, case, &params);
            let mut condition = condition_text(label, case, &params, n, q);
            let exists = match &pt {
                None => {
                    condition = "defining faces are linearly dependent (no unique intersection)"
                        .to_string();
                    false
                }
                Some(p) => match certificate(&region, p) {
                    None => true,
                    Some(cert) => {
                        if condition.is_empty() {
                            condition = cert;
                        } else {
                            condition = format!("{condition}; {cert}");
                        }
                        false
                    }
                },
            };
            CornerPoint { label, point: pt, exists, condition }
        })
        .collect()
}

/// Corner points of the delayed-plus-imperfect-CSIT region (original
/// receiver order; this region is never normalized).
pub fn delayed_corners(
    c: &crate::regions::AntennaConfig,
    q: &CsitQuality,
) -> Vec<CornerPoint> {
    let m = rat(c.m);
    let n1 = rat(c.n1);
    let n2 = rat(c.n2);
    let zero = Rational::zero;
    let cap1 = n1.clone().min(m.clone());
    let cap2 = n2.clone().min(m.clone());
    let cap0 = n1.clone().min(n2.clone()).min(m.clone());
    let boosted1 = (&n1 + &(&q.alpha2 * &n2)).min(m.clone());
    let boosted2 = (&n2 + &(&q.alpha1 * &n1)).min(m);
    let mut out = vec![
        CornerPoint {
            label: CornerLabel::P1,
            point: point(cap1.clone(), zero(), zero()),
            exists: true,
            condition: String::new(),
        },
        CornerPoint {
            label: CornerLabel::P2,
            point: point(zero(), cap2.clone(), zero()),
            exists: true,
            condition: String::new(),
        },
        CornerPoint {
            label: CornerLabel::P0,
            point: point(zero(), zero(), cap0),
            exists: true,
            condition: String::new(),
        },
    ];
    let denom = &(&boosted1 * &boosted2) - &(&cap1 * &cap2);
    let p12 = match (
        (&boosted1 * &(&cap1 * &(&boosted2 - &cap2))).checked_div(&denom),
        (&boosted2 * &(&cap2 * &(&boosted1 - &cap1))).checked_div(&denom),
    ) {
        (Ok(d1), Ok(d2)) => CornerPoint {
            label: CornerLabel::P12,
            point: point(d1, d2, zero()),
            exists: true,
            condition: String::new(),
        },
        _ => CornerPoint {
            label: CornerLabel::P12,
            point: None,
            exists: false,
            condition: "degenerates onto the TDMA segment (both bounds coincide)".to_string(),
        },
    };
    out.push(p12);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::ratio;
    use crate::regions::{normalize, AntennaConfig};

    fn setup(m: u32, n1: u32, n2: u32, a1: (i64, i64), a2: (i64, i64)) -> (NormalizedConfig, CsitQuality) {
        let c = AntennaConfig::new(m, n1, n2).unwrap();
        let q = CsitQuality::new(ratio(a1.0, a1.1), ratio(a2.0, a2.1)).unwrap();
        normalize(&c, &q)
    }

    fn find(cat: &[CornerPoint], label: CornerLabel) -> &CornerPoint {
        cat.iter().find(|c| c.label == label).unwrap()
    }

    #[test]
    fn case1_worked_example() {
        let (n, q) = setup(4, 2, 3, (4, 5), (2, 5));
        let cat = corner_catalog(&n, &q);
        let p123 = find(&cat, CornerLabel::P123);
        assert!(p123.exists);
        assert_eq!(
            p123.point.as_ref().unwrap(),
            &DofPoint::new(ratio(2, 5), ratio(7, 5), ratio(8, 5))
        );
        let p13 = find(&cat, CornerLabel::P13);
        assert!(p13.exists);
        assert_eq!(
            p13.point.as_ref().unwrap(),
            &DofPoint::new(Rational::from_int(2), ratio(7, 5), Rational::zero())
        );
        let p23 = find(&cat, CornerLabel::P23);
        assert!(p23.exists);
        assert_eq!(
            p23.point.as_ref().unwrap(),
            &DofPoint::new(ratio(2, 5), Rational::from_int(3), Rational::zero())
        );
        let p12 = find(&cat, CornerLabel::P12);
        assert!(p12.exists);
        assert_eq!(
            p12.point.as_ref().unwrap(),
            &DofPoint::new(Rational::zero(), Rational::one(), Rational::from_int(2))
        );
        // The case-2 style candidates must not exist here.
        assert!(!find(&cat, CornerLabel::P124).exists);
        assert!(!find(&cat, CornerLabel::P234).exists);
        assert!(!find(&cat, CornerLabel::P14).exists);
    }

    #[test]
    fn case4_worked_example() {
        let (n, q) = setup(4, 2, 3, (3, 5), (2, 5));
        let cat = corner_catalog(&n, &q);
        let p234 = find(&cat, CornerLabel::P234);
        assert!(p234.exists);
        assert_eq!(
            p234.point.as_ref().unwrap(),
            &DofPoint::new(ratio(3, 10), ratio(3, 2), ratio(3, 2))
        );
        let p124 = find(&cat, CornerLabel::P124);
        assert!(p124.exists);
        assert_eq!(
            p124.point.as_ref().unwrap(),
            &DofPoint::new(ratio(1, 5), ratio(6, 5), ratio(9, 5))
        );
        let p123 = find(&cat, CornerLabel::P123);
        assert!(!p123.exists, "P123 must not exist: 3/10 > 1/5");
        // The small-alpha1 face corners are out at alpha1 > (N2-N1)/(M-N1).
        assert!(!find(&cat, CornerLabel::P14Prime).exists);
        assert!(!find(&cat, CornerLabel::P24).exists);
        // P12 is a vertex here even though the case listing omits it.
        assert!(find(&cat, CornerLabel::P12).exists);
    }

    #[test]
    fn no_csit_collapses_to_on_coordinate_points() {
        let (n, q) = setup(4, 2, 3, (0, 1), (0, 1));
        let cat = corner_catalog(&n, &q);
        let mut existing: Vec<DofPoint> = cat
            .iter()
            .filter(|c| c.exists)
            .map(|c| c.point.clone().unwrap())
            .collect();
        existing.sort();
        existing.dedup();
        let zero = Rational::zero;
        // With no CSIT the weighted-sum face cuts every off-coordinate
        // candidate (including P12, whose (0, 1, 2) sits at 4/3 > 1 on it).
        let mut expected = vec![
            DofPoint::origin(),
            DofPoint::new(Rational::from_int(2), zero(), zero()),
            DofPoint::new(zero(), Rational::from_int(3), zero()),
            DofPoint::new(zero(), zero(), Rational::from_int(2)),
        ];
        expected.sort();
        assert_eq!(existing, expected);
    }

    #[test]
    fn equal_receive_antennas_rank_degeneracy() {
        // N1 = N2 in case 4: the printed P234/P34 points sit mid-face and
        // must be reported as non-vertices; P123 coincides with P124.
        let (n, q) = setup(3, 2, 2, (1, 5), (3, 5));
        assert_eq!(classify_case(&n, &q), CaseId::Case4);
        let cat = corner_catalog(&n, &q);
        assert!(!find(&cat, CornerLabel::P234).exists);
        assert!(!find(&cat, CornerLabel::P34).exists);
        assert!(!find(&cat, CornerLabel::P24).exists);
        assert!(find(&cat, CornerLabel::P24).point.is_none());
        let p123 = find(&cat, CornerLabel::P123);
        let p124 = find(&cat, CornerLabel::P124);
        assert!(p123.exists && p124.exists);
        assert_eq!(p123.point, p124.point);
    }

    #[test]
    fn degenerate_catalog_is_the_simplex() {
        let (n, q) = setup(1, 1, 1, (1, 2), (1, 2));
        let cat = corner_catalog(&n, &q);
        assert_eq!(cat.len(), 4);
        assert!(cat.iter().all(|c| c.exists));
    }

    #[test]
    fn delayed_corner_worked_example() {
        let c = AntennaConfig::new(2, 1, 1).unwrap();
        let q = CsitQuality::new(ratio(1, 2), ratio(1, 2)).unwrap();
        let corners = delayed_corners(&c, &q);
        let p12 = corners.iter().find(|c| c.label == CornerLabel::P12).unwrap();
        assert_eq!(
            p12.point.as_ref().unwrap(),
            &DofPoint::new(ratio(3, 5), ratio(3, 5), Rational::zero())
        );
    }

    #[test]
    fn delayed_corner_no_csit_degenerates() {
        let c = AntennaConfig::new(2, 1, 1).unwrap();
        let q = CsitQuality::new(Rational::zero(), Rational::zero()).unwrap();
        let corners = delayed_corners(&c, &q);
        let p12 = corners.iter().find(|c| c.label == CornerLabel::P12).unwrap();
        assert!(!p12.exists);
        assert!(p12.point.is_none());
    }

    #[test]
    fn delayed_corner_matches_oracle_vertex() {
        let c = AntennaConfig::new(4, 2, 3).unwrap();
        let q = CsitQuality::new(ratio(1, 4), ratio(3, 4)).unwrap();
        let corners = delayed_corners(&c, &q);
        let p12 = corners.iter().find(|c| c.label == CornerLabel::P12).unwrap();
        let formula = p12.point.clone().unwrap();
        let region = crate::regions::region_delayed(&c, &q);
        let vertex = region
            .enumerate_vertices()
            .unwrap()
            .into_iter()
            .find(|v| v.d0.is_zero() && v.d1.is_positive() && v.d2.is_positive())
            .unwrap();
        assert_eq!(formula, vertex);
    }

    #[test]
    fn p123_case1_coordinate_identities() {
        // Read off the closed form: d2 - d1 = N2 - N1 and d1 + d0 = N1.
        for (a1, a2) in [((4, 5), (2, 5)), ((9, 10), (1, 10)), ((1, 1), (1, 1))] {
            let (n, q) = setup(4, 2, 3, a1, a2);
            assert_eq!(classify_case(&n, &q), CaseId::Case1);
            let cat = corner_catalog(&n, &q);
            let p = find(&cat, CornerLabel::P123).point.clone().unwrap();
            assert_eq!(&p.d2 - &p.d1, Rational::from_int(1));
            assert_eq!(&p.d1 + &p.d0, Rational::from_int(2));
        }
    }

    #[test]
    fn label_parsing() {
        assert_eq!(CornerLabel::parse("p123"), Some(CornerLabel::P123));
        assert_eq!(CornerLabel::parse("P14'"), Some(CornerLabel::P14Prime));
        assert_eq!(CornerLabel::parse("P14p"), Some(CornerLabel::P14Prime));
        assert_eq!(CornerLabel::parse("o"), Some(CornerLabel::Origin));
        assert_eq!(CornerLabel::parse("P99"), None);
    }
}
