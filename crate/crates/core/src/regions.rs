//! DoF-region construction for the two-user MIMO broadcast channel with
//! hybrid private/common messages.
//!
//! Builds the imperfect-CSIT region (general and case-simplified forms), the
//! delayed-plus-imperfect-CSIT region, and the two decodability-relaxation
//! outer bounds whose combination must reproduce the achievable region. Also
//! classifies antenna/CSIT configurations into the four general cases and
//! evaluates the sum-bound exponent alpha0 piecewise.

use std::fmt;

use crate::geometry::{GeometryError, Halfspace, Polytope, Rational, SubsetEnumerator};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RegionError {
    /// Antenna counts must be at least 1.
    InvalidAntennas { m: u32, n1: u32, n2: u32 },
    /// CSIT qualities must lie in [0, 1].
    InvalidCsit(String),
    /// The operation needs a non-degenerate config (normalized M > N1).
    DegenerateConfig,
}

impl fmt::Display for RegionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RegionError::InvalidAntennas { m, n1, n2 } => {
                write!(f, "antenna counts must be >= 1, got ({m}, {n1}, {n2})")
            }
            RegionError::InvalidCsit(s) => write!(f, "CSIT quality outside [0, 1]: {s}"),
            RegionError::DegenerateConfig => {
                write!(f, "operation undefined for degenerate configs (normalized M <= N1)")
            }
        }
    }
}

impl std::error::Error for RegionError {}

/// Antenna counts (M transmit, N1 at receiver 1, N2 at receiver 2).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AntennaConfig {
    pub m: u32,
    pub n1: u32,
    pub n2: u32,
}

impl AntennaConfig {
    pub fn new(m: u32, n1: u32, n2: u32) -> Result<Self, RegionError> {
        if m == 0 || n1 == 0 || n2 == 0 {
            return Err(RegionError::InvalidAntennas { m, n1, n2 });
        }
        Ok(AntennaConfig { m, n1, n2 })
    }
}

/// Per-receiver CSIT quality exponents, each in [0, 1].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CsitQuality {
    pub alpha1: Rational,
    pub alpha2: Rational,
}

impl CsitQuality {
    pub fn new(alpha1: Rational, alpha2: Rational) -> Result<Self, RegionError> {
        for (name, a) in [("alpha1", &alpha1), ("alpha2", &alpha2)] {
            if a.is_negative() || *a > Rational::one() {
                return Err(RegionError::InvalidCsit(format!("{name} = {a}")));
            }
        }
        Ok(CsitQuality { alpha1, alpha2 })
    }

    pub fn swapped(&self) -> Self {
        CsitQuality {
            alpha1: self.alpha2.clone(),
            alpha2: self.alpha1.clone(),
        }
    }
}

/// Antenna counts after turning off redundant antennas and ordering the
/// receivers so that N1 <= N2. Downstream corner points are mapped back
/// through the swap before being reported.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalizedConfig {
    pub m: u32,
    pub n1: u32,
    pub n2: u32,
    pub receivers_swapped: bool,
    pub original: AntennaConfig,
}

impl NormalizedConfig {
    pub fn is_degenerate(&self) -> bool {
        self.m <= self.n1
    }
}

/// The four antenna/CSIT classes of the region's sum bound, plus the
/// single-stream degenerate class (normalized M <= N1).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CaseId {
    Case1,
    Case2,
    Case3,
    Case4,
    Degenerate,
}

impl fmt::Display for CaseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CaseId::Case1 => "CASE1",
            CaseId::Case2 => "CASE2",
            CaseId::Case3 => "CASE3",
            CaseId::Case4 => "CASE4",
            CaseId::Degenerate => "DEGENERATE",
        };
        f.write_str(s)
    }
}

/// Caps M at N1+N2, each N at the capped M, and orders receivers so that
/// N1 <= N2 (swapping the CSIT qualities alongside).
pub fn normalize(c: &AntennaConfig, q: &CsitQuality) -> (NormalizedConfig, CsitQuality) {
    let m = c.m.min(c.n1 + c.n2);
    let n1 = c.n1.min(m);
    let n2 = c.n2.min(m);
    if n1 > n2 {
        (
            NormalizedConfig {
                m,
                n1: n2,
                n2: n1,
                receivers_swapped: true,
                original: *c,
            },
            q.swapped(),
        )
    } else {
        (
            NormalizedConfig {
                m,
                n1,
                n2,
                receivers_swapped: false,
                original: *c,
            },
            q.clone(),
        )
    }
}

pub(crate) fn rat(n: u32) -> Rational {
    Rational::from(n)
}

/// (N2-N1+(M-N2) alpha2) / (M-N1): the case-1 entry threshold on alpha1.
pub(crate) fn threshold_high(n: &NormalizedConfig, q: &CsitQuality) -> Rational {
    let num = rat(n.n2 - n.n1) + rat(n.m - n.n2) * &q.alpha2;
    num.checked_div(&rat(n.m - n.n1))
        .expect("non-degenerate config has M > N1")
}

/// (N2-N1) / (M-N1): the boundary between cases 2 and 3.
pub(crate) fn threshold_mid(n: &NormalizedConfig) -> Rational {
    rat(n.n2 - n.n1)
        .checked_div(&rat(n.m - n.n1))
        .expect("non-degenerate config has M > N1")
}

/// Classifies a normalized configuration.
///
/// The four case conditions overlap: case 1's region is the valid one
/// wherever its condition holds (its sum bound is the one the power
/// allocation actually attains), and on the shared boundary alpha1 = 1 -
/// alpha2 the case-4 forms are the ones the worked examples use. Precedence
/// is therefore case 1, then case 4, then case 2, then case 3; the sum bound
/// is continuous across every boundary, so the region itself is unaffected
/// by which side of a boundary wins.
pub fn classify_case(n: &NormalizedConfig, q: &CsitQuality) -> CaseId {
    if n.is_degenerate() {
        return CaseId::Degenerate;
    }
    let one = Rational::one();
    if q.alpha1 >= threshold_high(n, q) {
        CaseId::Case1
    } else if q.alpha1 <= &one - &q.alpha2 {
        CaseId::Case4
    } else if q.alpha1 >= threshold_mid(n) {
        CaseId::Case2
    } else {
        CaseId::Case3
    }
}

/// CASE-4 denominator (M-N2) alpha2 + (N2-N1)(1-alpha1). Strictly positive
/// whenever classification lands in case 4.
pub(crate) fn delta(n: &NormalizedConfig, q: &CsitQuality) -> Rational {
    rat(n.m - n.n2) * &q.alpha2 + rat(n.n2 - n.n1) * (&Rational::one() - &q.alpha1)
}

/// The exponent alpha0 in the sum bound d1+d2+d0 <= N2 + (M-N2) alpha0,
/// reconstructed piecewise from the case-level bounds. For M = N2 the
/// coefficient vanishes and 0 is returned for determinism.
pub fn alpha0(n: &NormalizedConfig, q: &CsitQuality) -> Result<Rational, RegionError> {
    if n.is_degenerate() {
        return Err(RegionError::DegenerateConfig);
    }
    if n.m == n.n2 {
        return Ok(Rational::zero());
    }
    let value = match classify_case(n, q) {
        CaseId::Case1 => q.alpha2.clone(),
        CaseId::Case2 | CaseId::Case3 => {
            let penalty = rat(n.n2 - n.n1) * (&Rational::one() - &q.alpha2);
            &q.alpha1 - &penalty.checked_div(&rat(n.m - n.n1)).expect("M > N1")
        }
        CaseId::Case4 => {
            let d = delta(n, q);
            debug_assert!(d.is_positive(), "case 4 implies Delta > 0");
            (rat(n.m - n.n2) * &q.alpha1 * &q.alpha2)
                .checked_div(&d)
                .expect("Delta > 0 in case 4")
        }
        CaseId::Degenerate => unreachable!(),
    };
    Ok(value)
}

fn hs(a1: Rational, a2: Rational, a0: Rational, b: Rational) -> Halfspace {
    Halfspace::new(a1, a2, a0, b).expect("region halfspaces have nonzero normals")
}

/// The five case-simplified halfspaces in normalized coordinates (only the
/// first three for degenerate configs).
pub(crate) fn normalized_region(n: &NormalizedConfig, q: &CsitQuality) -> Polytope {
    let one = Rational::one;
    let zero = Rational::zero;
    let n1 = rat(n.n1);
    let n2 = rat(n.n2);
    if n.is_degenerate() {
        // M = N1 = N2 after normalization; the weighted-sum rows collapse
        // onto the sum bound.
        let cap = rat(n.m);
        return Polytope::new(vec![
            hs(one(), zero(), one(), n1),
            hs(zero(), one(), one(), n2),
            hs(one(), one(), one(), cap),
        ]);
    }
    let a0 = alpha0(n, q).expect("non-degenerate");
    let sum_bound = &n2 + &(rat(n.m - n.n2) * &a0);
    let inv_n1 = one().checked_div(&n1).expect("N1 >= 1");
    let inv_n2 = one().checked_div(&n2).expect("N2 >= 1");
    let weighted_rhs = one() + (rat(n.m - n.n1) * &q.alpha1).checked_div(&n2).expect("N2 >= 1");
    Polytope::new(vec![
        hs(one(), zero(), one(), n1),
        hs(zero(), one(), one(), n2),
        hs(one(), one(), one(), sum_bound),
        hs(inv_n1.clone(), inv_n2.clone(), inv_n1.clone(), weighted_rhs.clone()),
        hs(inv_n1, inv_n2.clone(), inv_n2, weighted_rhs),
    ])
}

fn unswap(p: Polytope, swapped: bool) -> Polytope {
    if swapped {
        Polytope::new(p.halfspaces.into_iter().map(|h| h.swapped()).collect())
    } else {
        p
    }
}

/// The imperfect-CSIT DoF region, expressed in the caller's original
/// receiver order.
pub fn region_imperfect(c: &AntennaConfig, q: &CsitQuality) -> Polytope {
    let (n, qn) = normalize(c, q);
    unswap(normalized_region(&n, &qn), n.receivers_swapped)
}

fn rmin(a: Rational, b: Rational) -> Rational {
    a.min(b)
}

/// The delayed-plus-imperfect-CSIT DoF region: two weighted-sum bounds on
/// the original (un-normalized) configuration.
pub fn region_delayed(c: &AntennaConfig, q: &CsitQuality) -> Polytope {
    let m = rat(c.m);
    let n1 = rat(c.n1);
    let n2 = rat(c.n2);
    let cap1 = rmin(n1.clone(), m.clone());
    let cap2 = rmin(n2.clone(), m.clone());
    let boosted1 = rmin(&n1 + &(&q.alpha2 * &n2), m.clone());
    let boosted2 = rmin(&n2 + &(&q.alpha1 * &n1), m);
    let inv = |r: &Rational| Rational::one().checked_div(r).expect("positive denominators");
    let one = Rational::one;
    Polytope::new(vec![
        hs(inv(&boosted1), inv(&cap2), inv(&cap2), one()),
        hs(inv(&cap1), inv(&boosted2), inv(&cap1), one()),
    ])
}

/// Shared body of the two outer bounds. `d0_with_user1` selects which
/// receiver's private message absorbs the common message.
fn outer_bound(c: &AntennaConfig, q: &CsitQuality, d0_with_user1: bool) -> Polytope {
    if c.n1 > c.n2 {
        // Receiver relabeling: the relaxation follows the receiver identity,
        // so build the bound on the ordered twin and swap coordinates back.
        let twin = AntennaConfig { m: c.m, n1: c.n2, n2: c.n1 };
        let p = outer_bound(&twin, &q.swapped(), !d0_with_user1);
        return unswap(p, true);
    }
    let one = Rational::one;
    let zero = Rational::zero;
    let m = rat(c.m);
    let k1 = rmin(m.clone(), rat(c.n1));
    let k2 = rmin(m.clone(), rat(c.n2));
    let k12 = rmin(m, rat(c.n1 + c.n2));
    let (n, qn) = normalize(c, q);
    let a0 = if n.is_degenerate() { Rational::zero() } else { alpha0(&n, &qn).expect("non-degenerate") };
    let sum_bound = &k2 + &((&k12 - &k2) * &a0);
    let inv_k1 = one().checked_div(&k1).expect("N1 >= 1");
    let inv_k2 = one().checked_div(&k2).expect("N2 >= 1");
    let weighted_rhs = one() + ((&k12 - &k1) * &q.alpha1).checked_div(&k2).expect("N2 >= 1");
    // Rows: the (d1[+d0], d2[+d0]) single-message caps, the sum bound, and
    // the two weighted-sum rows (with and without d0 attached).
    if d0_with_user1 {
        Polytope::new(vec![
            hs(one(), zero(), one(), k1),
            hs(zero(), one(), zero(), k2),
            hs(one(), one(), one(), sum_bound),
            hs(inv_k1.clone(), inv_k2.clone(), inv_k1.clone(), weighted_rhs.clone()),
            hs(inv_k1, inv_k2, zero(), weighted_rhs),
        ])
    } else {
        Polytope::new(vec![
            hs(one(), zero(), zero(), k1),
            hs(zero(), one(), one(), k2),
            hs(one(), one(), one(), sum_bound),
            hs(inv_k1.clone(), inv_k2.clone(), zero(), weighted_rhs.clone()),
            hs(inv_k1, inv_k2.clone(), inv_k2, weighted_rhs),
        ])
    }
}

/// Outer bound obtained by letting the common message degenerate into W1
/// (only receiver 1 must decode it).
pub fn outer_d1(c: &AntennaConfig, q: &CsitQuality) -> Polytope {
    outer_bound(c, q, true)
}

/// Outer bound obtained by letting the common message degenerate into W2.
pub fn outer_d2(c: &AntennaConfig, q: &CsitQuality) -> Polytope {
    outer_bound(c, q, false)
}

/// Intersects two regions and prunes dominated halfspaces: a halfspace is
/// dropped exactly when removing it changes neither boundedness nor the
/// vertex set.
pub fn combine_outer(a: &Polytope, b: &Polytope) -> Result<Polytope, GeometryError> {
    let mut halfspaces: Vec<Halfspace> = a.halfspaces.clone();
    halfspaces.extend(b.halfspaces.iter().cloned());
    let full = Polytope::new(halfspaces.clone());
    let reference = full.enumerate_vertices()?;
    let enumerator = SubsetEnumerator::new(&halfspaces);
    let mut keep = vec![true; halfspaces.len()];
    for i in 0..halfspaces.len() {
        keep[i] = false;
        let subset = Polytope::new(
            halfspaces
                .iter()
                .zip(&keep)
                .filter(|(_, &k)| k)
                .map(|(h, _)| h.clone())
                .collect(),
        );
        match enumerator.vertices(&keep, &subset) {
            Some(vs) if vs == reference => {} // redundant; stays dropped
            _ => keep[i] = true,
        }
    }
    Ok(Polytope::new(
        halfspaces
            .into_iter()
            .zip(keep)
            .filter(|(_, k)| *k)
            .map(|(h, _)| h)
            .collect(),
    ))
}
