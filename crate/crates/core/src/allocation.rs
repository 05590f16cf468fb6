//! Rate-splitting achievability engine.
//!
//! Power-exponent recipes, the per-receiver achievable-DoF bound system,
//! the two-phase space-time schedule, and the per-corner recipes that must
//! reproduce every labeled corner point exactly.
//!
//! The bound system, for exponents A1 in [0, alpha2] and A2 in [0, 1]:
//!
//! opening at receiver 1:
//!   d0 + dc <= N1 - (M-N2) max{A1, [A2-alpha1]+} - (N1+N2-M) [A2-alpha1]+
//!   dp1     <= (M-N2) [A1 - [A2-alpha1]+]+
//! and at receiver 2:
//!   d0 + dc <= N2 - (M-N1) A2 - (N1+N2-M) [A2-alpha1]+
//!   dp2     <= (M-N1) A2 + (N1+N2-M) [A2-alpha1]+

use std::fmt;

use crate::corners::{corner_catalog, CornerLabel};
use crate::geometry::{DofPoint, Rational};
use crate::regions::{
    classify_case, delta, rat, threshold_high, threshold_mid, CaseId, CsitQuality,
    NormalizedConfig,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AllocationError {
    /// Exponents outside A1 in [0, alpha2], A2 in [0, 1], or rho outside [0, 1].
    OutOfRange(String),
    /// The schedule optimum is undefined because Delta = 0.
    DegenerateSchedule,
    /// The requested corner does not exist for this case and CSIT quality.
    NonexistentCorner { label: CornerLabel, case: CaseId },
    /// The labeled case does not match the configuration's case.
    CaseMismatch { given: CaseId, actual: CaseId },
    /// A recipe asked for more multicast DoF than a receiver can decode.
    BudgetExceeded { bound: String, requested: Box<Rational>, available: Box<Rational> },
}

impl fmt::Display for AllocationError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AllocationError::OutOfRange(s) => write!(f, "power allocation out of range: {s}"),
            AllocationError::DegenerateSchedule => {
                write!(f, "space-time optimum undefined: Delta = 0")
            }
            AllocationError::NonexistentCorner { label, case } => {
                write!(f, "corner {label} does not exist in {case}")
            }
            AllocationError::CaseMismatch { given, actual } => {
                write!(f, "case mismatch: recipe requested for {given}, config is {actual}")
            }
            AllocationError::BudgetExceeded { bound, requested, available } => {
                write!(f, "infeasible recipe: {bound} allows {available}, recipe uses {requested}")
            }
        }
    }
}

impl std::error::Error for AllocationError {}

/// Transmit power exponents for the two unicast beams.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerAllocation {
    pub a1: Rational,
    pub a2: Rational,
}

impl PowerAllocation {
    pub fn new(a1: Rational, a2: Rational) -> Self {
        PowerAllocation { a1, a2 }
    }

    fn validate(&self, q: &CsitQuality) -> Result<(), AllocationError> {
        if self.a1.is_negative() || self.a1 > q.alpha2 {
            return Err(AllocationError::OutOfRange(format!(
                "A1 = {} not in [0, alpha2 = {}]",
                self.a1, q.alpha2
            )));
        }
        if self.a2.is_negative() || self.a2 > Rational::one() {
            return Err(AllocationError::OutOfRange(format!("A2 = {} not in [0, 1]", self.a2)));
        }
        Ok(())
    }
}

/// Two-phase schedule: fraction `rho` of slots with exponents (alpha2, 1),
/// the rest with (alpha2, alpha1).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpaceTimeAllocation {
    pub rho: Rational,
    pub phase1: PowerAllocation,
    pub phase2: PowerAllocation,
}

impl SpaceTimeAllocation {
    pub fn new(rho: Rational, q: &CsitQuality) -> Result<Self, AllocationError> {
        if rho.is_negative() || rho > Rational::one() {
            return Err(AllocationError::OutOfRange(format!("rho = {rho} not in [0, 1]")));
        }
        Ok(SpaceTimeAllocation {
            rho,
            phase1: PowerAllocation::new(q.alpha2.clone(), Rational::one()),
            phase2: PowerAllocation::new(q.alpha2.clone(), q.alpha1.clone()),
        })
    }
}

/// Per-receiver decodable-DoF budgets induced by an allocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AchievabilityBounds {
    /// Receiver-1 budget for d0 + dc.
    pub dc1: Rational,
    /// Receiver-2 budget for d0 + dc.
    pub dc2: Rational,
    pub dp1_max: Rational,
    pub dp2_max: Rational,
}

impl AchievabilityBounds {
    pub fn common_budget(&self) -> Rational {
        self.dc1.clone().min(self.dc2.clone())
    }
}

/// The bound system for a single-phase allocation.
pub fn bounds_single(
    n: &NormalizedConfig,
    q: &CsitQuality,
    a: &PowerAllocation,
) -> Result<AchievabilityBounds, AllocationError> {
    a.validate(q)?;
    let excess = (&a.a2 - &q.alpha1).positive_part();
    let overlap = rat(n.n1 + n.n2 - n.m);
    let dc1 = &(&rat(n.n1) - &(rat(n.m - n.n2) * a.a1.clone().max(excess.clone())))
        - &(&overlap * &excess);
    let dp1_max = rat(n.m - n.n2) * (&a.a1 - &excess).positive_part();
    let dc2 = &(&rat(n.n2) - &(rat(n.m - n.n1) * &a.a2)) - &(&overlap * &excess);
    let dp2_max = rat(n.m - n.n1) * &a.a2 + &overlap * &excess;
    Ok(AchievabilityBounds { dc1, dc2, dp1_max, dp2_max })
}

/// Largest total DoF of the single-phase scheme:
/// min{N1 + (M-N1)A2 - (M-N2)[A2-alpha1]+, N2 + (M-N2)[A1-[A2-alpha1]+]+}.
pub fn sum_dof_single(
    n: &NormalizedConfig,
    q: &CsitQuality,
    a: &PowerAllocation,
) -> Result<Rational, AllocationError> {
    let bounds = bounds_single(n, q, a)?;
    let excess = (&a.a2 - &q.alpha1).positive_part();
    let ds1 = &(&rat(n.n1) + &(rat(n.m - n.n1) * &a.a2)) - &(rat(n.m - n.n2) * &excess);
    let ds2 = &rat(n.n2) + &(rat(n.m - n.n2) * (&a.a1 - &excess).positive_part());
    let value = ds1.min(ds2);
    debug_assert_eq!(
        value,
        &(&bounds.dp1_max + &bounds.dp2_max) + &bounds.common_budget(),
        "sum-DoF must equal private parts plus the common budget"
    );
    Ok(value)
}

/// Shared form of the sum-optimal exponents: A1* = alpha2 and A2* the larger
/// of the case-1 entry threshold and 1 - (M-N2) alpha1 / (N2-N1). The second
/// operand diverges for N1 = N2 and is dropped there; the threshold operand
/// is the continuous continuation.
fn sum_optimal_exponents(n: &NormalizedConfig, q: &CsitQuality) -> PowerAllocation {
    let first = threshold_high(n, q);
    let a2 = if n.n1 == n.n2 {
        first
    } else {
        let second = &Rational::one()
            - &(rat(n.m - n.n2) * &q.alpha1)
                .checked_div(&rat(n.n2 - n.n1))
                .expect("N2 > N1");
        first.max(second)
    };
    PowerAllocation::new(q.alpha2.clone(), a2)
}

/// Sum-DoF-optimal exponents for case 1.
pub fn optimal_exponents_case1(
    n: &NormalizedConfig,
    q: &CsitQuality,
) -> Result<PowerAllocation, AllocationError> {
    let case = classify_case(n, q);
    if case != CaseId::Case1 {
        return Err(AllocationError::CaseMismatch { given: CaseId::Case1, actual: case });
    }
    Ok(sum_optimal_exponents(n, q))
}

/// The schedule split maximizing the case-4 sum-DoF:
/// rho* = (N2-N1-(M-N1) alpha1 + (M-N2) alpha2) / Delta, clamped to [0, 1]
/// (the formula only leaves [0, 1] at case boundaries, where it attains the
/// endpoint exactly).
pub fn space_time_allocation(
    n: &NormalizedConfig,
    q: &CsitQuality,
) -> Result<SpaceTimeAllocation, AllocationError> {
    let d = delta(n, q);
    if d.is_zero() {
        return Err(AllocationError::DegenerateSchedule);
    }
    let num = &(&rat(n.n2 - n.n1) - &(rat(n.m - n.n1) * &q.alpha1)) + &(rat(n.m - n.n2) * &q.alpha2);
    let rho = num.checked_div(&d).expect("Delta != 0");
    let rho = rho.max(Rational::zero()).min(Rational::one());
    SpaceTimeAllocation::new(rho, q)
}

/// Bounds achieved by the two-phase schedule: each budget is the slot-share
/// combination of the single-phase bounds of its phases, so rho in {0, 1}
/// reduces exactly to the corresponding single-phase system.
pub fn bounds_space_time(
    n: &NormalizedConfig,
    q: &CsitQuality,
    st: &SpaceTimeAllocation,
) -> Result<AchievabilityBounds, AllocationError> {
    if st.rho.is_negative() || st.rho > Rational::one() {
        return Err(AllocationError::OutOfRange(format!("rho = {} not in [0, 1]", st.rho)));
    }
    let b1 = bounds_single(n, q, &st.phase1)?;
    let b2 = bounds_single(n, q, &st.phase2)?;
    let mix = |x: &Rational, y: &Rational| -> Rational {
        &(&st.rho * x) + &(&(&Rational::one() - &st.rho) * y)
    };
    Ok(AchievabilityBounds {
        dc1: mix(&b1.dc1, &b2.dc1),
        dc2: mix(&b1.dc2, &b2.dc2),
        dp1_max: mix(&b1.dp1_max, &b2.dp1_max),
        dp2_max: mix(&b1.dp2_max, &b2.dp2_max),
    })
}

/// Which allocation a recipe runs, plus how the common budget is spent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RecipeMode {
    Single(PowerAllocation),
    SpaceTime(SpaceTimeAllocation),
}

/// A concrete transmission recipe: the allocation, the common-message DoF
/// d0, and the split of the private-multicast budget between the receivers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Recipe {
    pub mode: RecipeMode,
    pub d0: Rational,
    pub dc_to_user1: Rational,
    pub dc_to_user2: Rational,
}

impl Recipe {
    pub fn single(a1: Rational, a2: Rational, d0: Rational, dc1: Rational, dc2: Rational) -> Self {
        Recipe {
            mode: RecipeMode::Single(PowerAllocation::new(a1, a2)),
            d0,
            dc_to_user1: dc1,
            dc_to_user2: dc2,
        }
    }
}

fn bounds_for_mode(
    n: &NormalizedConfig,
    q: &CsitQuality,
    mode: &RecipeMode,
) -> Result<AchievabilityBounds, AllocationError> {
    match mode {
        RecipeMode::Single(a) => bounds_single(n, q, a),
        RecipeMode::SpaceTime(st) => bounds_space_time(n, q, st),
    }
}

/// Runs a recipe through the bound system and returns the achieved tuple
/// (dp1_max + dc_to_user1, dp2_max + dc_to_user2, d0). Errors name the
/// violated budget.
pub fn evaluate_recipe(
    r: &Recipe,
    n: &NormalizedConfig,
    q: &CsitQuality,
) -> Result<DofPoint, AllocationError> {
    for (name, v) in [
        ("d0", &r.d0),
        ("dc_to_user1", &r.dc_to_user1),
        ("dc_to_user2", &r.dc_to_user2),
    ] {
        if v.is_negative() {
            return Err(AllocationError::OutOfRange(format!("{name} = {v} is negative")));
        }
    }
    let bounds = bounds_for_mode(n, q, &r.mode)?;
    let multicast_total = &(&r.d0 + &r.dc_to_user1) + &r.dc_to_user2;
    let budget = bounds.common_budget();
    if multicast_total > budget {
        let bound = if bounds.dc1 <= bounds.dc2 {
            "receiver-1 multicast budget"
        } else {
            "receiver-2 multicast budget"
        };
        return Err(AllocationError::BudgetExceeded {
            bound: bound.to_string(),
            requested: Box::new(multicast_total),
            available: Box::new(budget),
        });
    }
    Ok(DofPoint::new(
        &bounds.dp1_max + &r.dc_to_user1,
        &bounds.dp2_max + &r.dc_to_user2,
        r.d0.clone(),
    ))
}

/// ((M-N1) alpha1 - (N2-N1)) / (M-N2): the A1 used by the P124-style
/// recipes.
fn excess_ratio(n: &NormalizedConfig, q: &CsitQuality) -> Rational {
    (&(rat(n.m - n.n1) * &q.alpha1) - &rat(n.n2 - n.n1))
        .checked_div(&rat(n.m - n.n2))
        .expect("closed-form recipes require M > N2")
}

fn zero_budget_recipe(mode: RecipeMode) -> Recipe {
    Recipe {
        mode,
        d0: Rational::zero(),
        dc_to_user1: Rational::zero(),
        dc_to_user2: Rational::zero(),
    }
}

/// How an existing labeled corner spends the allocation: which exponents to
/// run, whether the budget goes to the common message (`D0`) or to one
/// receiver's private message (`User1`/`User2`), or nothing at all.
enum BudgetUse {
    D0,
    User1,
    User2,
}

fn finish(
    n: &NormalizedConfig,
    q: &CsitQuality,
    mode: RecipeMode,
    spend: BudgetUse,
) -> Result<Recipe, AllocationError> {
    let bounds = bounds_for_mode(n, q, &mode)?;
    let budget = bounds.common_budget();
    let mut recipe = zero_budget_recipe(mode);
    match spend {
        BudgetUse::D0 => recipe.d0 = budget,
        BudgetUse::User1 => recipe.dc_to_user1 = budget,
        BudgetUse::User2 => recipe.dc_to_user2 = budget,
    }
    Ok(recipe)
}

/// The transmission recipe achieving an existing labeled corner.
///
/// On-coordinate points and P12 use fixed exponents; the sum-bound corners
/// use the sum-optimal exponents (single-phase in cases 1-3, the two-phase
/// schedule in case 4); the weighted-sum corners use the P124-style
/// exponents. Labels that only exist where they coincide with another
/// labeled point (boundaries and N1 = N2 collapses) reuse that point's
/// recipe.
pub fn recipe_for_corner(
    label: CornerLabel,
    case: CaseId,
    n: &NormalizedConfig,
    q: &CsitQuality,
) -> Result<Recipe, AllocationError> {
    let actual = classify_case(n, q);
    if case != actual {
        return Err(AllocationError::CaseMismatch { given: case, actual });
    }
    let catalog = corner_catalog(n, q);
    let entry = catalog
        .iter()
        .find(|c| c.label == label)
        .ok_or(AllocationError::NonexistentCorner { label, case })?;
    if !entry.exists {
        return Err(AllocationError::NonexistentCorner { label, case });
    }

    let zero = Rational::zero;
    let one = Rational::one;
    let t_mid = if n.is_degenerate() { zero() } else { threshold_mid(n) };
    let sum_optimal = || -> Result<RecipeMode, AllocationError> {
        match case {
            CaseId::Case4 => Ok(RecipeMode::SpaceTime(space_time_allocation(n, q)?)),
            _ => Ok(RecipeMode::Single(sum_optimal_exponents(n, q))),
        }
    };
    let p124_exponents = || RecipeMode::Single(PowerAllocation::new(excess_ratio(n, q), q.alpha1.clone()));
    let small_alpha1_exponents = || RecipeMode::Single(PowerAllocation::new(zero(), q.alpha1.clone()));

    match label {
        CornerLabel::Origin => Ok(zero_budget_recipe(RecipeMode::Single(PowerAllocation::new(
            zero(),
            zero(),
        )))),
        CornerLabel::P1 => finish(
            n,
            q,
            RecipeMode::Single(PowerAllocation::new(zero(), zero())),
            BudgetUse::User1,
        ),
        CornerLabel::P2 => finish(
            n,
            q,
            RecipeMode::Single(PowerAllocation::new(zero(), one())),
            BudgetUse::User2,
        ),
        CornerLabel::P0 => finish(
            n,
            q,
            RecipeMode::Single(PowerAllocation::new(zero(), zero())),
            BudgetUse::D0,
        ),
        CornerLabel::P12 => finish(
            n,
            q,
            RecipeMode::Single(PowerAllocation::new(zero(), t_mid)),
            BudgetUse::D0,
        ),
        CornerLabel::P123 => match case {
            CaseId::Case1 => finish(n, q, sum_optimal()?, BudgetUse::D0),
            // Where P123 exists outside case 1 it coincides with P124.
            CaseId::Case3 => finish(
                n,
                q,
                RecipeMode::Single(PowerAllocation::new(zero(), t_mid)),
                BudgetUse::D0,
            ),
            _ => finish(n, q, p124_exponents(), BudgetUse::D0),
        },
        CornerLabel::P234 => finish(n, q, sum_optimal()?, BudgetUse::D0),
        CornerLabel::P13 => match case {
            CaseId::Case1 => finish(n, q, sum_optimal()?, BudgetUse::User1),
            // Outside case 1, P13 only exists where it coincides with P14.
            _ => recipe_for_p14(n, q, case, p124_exponents, small_alpha1_exponents, &t_mid),
        },
        CornerLabel::P34 => finish(n, q, sum_optimal()?, BudgetUse::User1),
        CornerLabel::P23 => finish(n, q, sum_optimal()?, BudgetUse::User2),
        CornerLabel::P124 => match case {
            // Exists in cases 1/3 only where it coincides with P123/P12.
            CaseId::Case1 => finish(n, q, sum_optimal()?, BudgetUse::D0),
            CaseId::Case3 => finish(
                n,
                q,
                RecipeMode::Single(PowerAllocation::new(zero(), t_mid)),
                BudgetUse::D0,
            ),
            _ => finish(n, q, p124_exponents(), BudgetUse::D0),
        },
        CornerLabel::P14 => {
            recipe_for_p14(n, q, case, p124_exponents, small_alpha1_exponents, &t_mid)
        }
        CornerLabel::P14Prime => match case {
            // Only coincidences (with P12) outside cases 3/4.
            CaseId::Case1 | CaseId::Case2 => finish(
                n,
                q,
                RecipeMode::Single(PowerAllocation::new(zero(), t_mid)),
                BudgetUse::D0,
            ),
            _ => finish(n, q, small_alpha1_exponents(), BudgetUse::D0),
        },
        CornerLabel::P24 => match case {
            CaseId::Case1 | CaseId::Case2 => finish(
                n,
                q,
                RecipeMode::Single(PowerAllocation::new(zero(), t_mid)),
                BudgetUse::D0,
            ),
            _ => {
                let a2 = &one()
                    - &(rat(n.m - n.n2) * &q.alpha1)
                        .checked_div(&rat(n.n2 - n.n1))
                        .expect("P24 exists only for N1 < N2");
                finish(n, q, RecipeMode::Single(PowerAllocation::new(zero(), a2)), BudgetUse::D0)
            }
        },
    }
}

fn recipe_for_p14(
    n: &NormalizedConfig,
    q: &CsitQuality,
    case: CaseId,
    p124_exponents: impl Fn() -> RecipeMode,
    small_alpha1_exponents: impl Fn() -> RecipeMode,
    t_mid: &Rational,
) -> Result<Recipe, AllocationError> {
    let mode = match case {
        CaseId::Case2 => p124_exponents(),
        CaseId::Case3 => small_alpha1_exponents(),
        CaseId::Case4 => {
            if q.alpha1 >= *t_mid {
                p124_exponents()
            } else {
                small_alpha1_exponents()
            }
        }
        // Case 1: P14 only exists where it coincides with P13; the
        // sum-optimal exponents hit it.
        _ => return finish(n, q, RecipeMode::Single(sum_optimal_exponents(n, q)), BudgetUse::User1),
    };
    finish(n, q, mode, BudgetUse::User1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::ratio;
    use crate::regions::{normalize, AntennaConfig};

    fn setup(
        m: u32,
        n1: u32,
        n2: u32,
        a1: (i64, i64),
        a2: (i64, i64),
    ) -> (NormalizedConfig, CsitQuality) {
        let c = AntennaConfig::new(m, n1, n2).unwrap();
        let q = CsitQuality::new(ratio(a1.0, a1.1), ratio(a2.0, a2.1)).unwrap();
        normalize(&c, &q)
    }

    #[test]
    fn bounds_single_case1_optimum() {
        let (n, q) = setup(4, 2, 3, (4, 5), (2, 5));
        let a = PowerAllocation::new(ratio(2, 5), ratio(7, 10));
        let b = bounds_single(&n, &q, &a).unwrap();
        assert_eq!(b.dc1, ratio(8, 5));
        assert_eq!(b.dc2, ratio(8, 5));
        assert_eq!(b.dp1_max, ratio(2, 5));
        assert_eq!(b.dp2_max, ratio(7, 5));
    }

    #[test]
    fn bounds_single_all_power_to_multicast() {
        let (n, q) = setup(4, 2, 3, (1, 2), (1, 2));
        let a = PowerAllocation::new(Rational::zero(), Rational::zero());
        let b = bounds_single(&n, &q, &a).unwrap();
        assert_eq!(b.dc1, Rational::from_int(2));
        assert_eq!(b.dc2, Rational::from_int(3));
        assert!(b.dp1_max.is_zero() && b.dp2_max.is_zero());
    }

    #[test]
    fn bounds_single_p124_style() {
        let (n, q) = setup(4, 2, 3, (3, 5), (3, 5));
        let a = PowerAllocation::new(ratio(1, 5), ratio(3, 5));
        let b = bounds_single(&n, &q, &a).unwrap();
        assert_eq!(b.dp1_max, ratio(1, 5));
        assert_eq!(b.dp2_max, ratio(6, 5));
        assert_eq!(b.dc1, ratio(9, 5));
        assert_eq!(b.dc2, ratio(9, 5));
    }

    #[test]
    fn bounds_single_rejects_out_of_range() {
        let (n, q) = setup(4, 2, 3, (1, 2), (1, 2));
        let a = PowerAllocation::new(ratio(3, 5), ratio(1, 2));
        assert!(matches!(
            bounds_single(&n, &q, &a),
            Err(AllocationError::OutOfRange(_))
        ));
    }

    #[test]
    fn sum_dof_examples() {
        let (n, q) = setup(4, 2, 3, (4, 5), (2, 5));
        let a = PowerAllocation::new(ratio(2, 5), ratio(7, 10));
        assert_eq!(sum_dof_single(&n, &q, &a).unwrap(), ratio(17, 5));
        let zero = PowerAllocation::new(Rational::zero(), Rational::zero());
        assert_eq!(sum_dof_single(&n, &q, &zero).unwrap(), Rational::from_int(2));
        let (n, q) = setup(4, 2, 3, (1, 1), (1, 1));
        let full = PowerAllocation::new(Rational::one(), Rational::one());
        assert_eq!(sum_dof_single(&n, &q, &full).unwrap(), Rational::from_int(4));
    }

    #[test]
    fn optimal_exponents_examples() {
        let (n, q) = setup(4, 2, 3, (4, 5), (2, 5));
        let a = optimal_exponents_case1(&n, &q).unwrap();
        assert_eq!(a.a1, ratio(2, 5));
        assert_eq!(a.a2, ratio(7, 10));
        // N1 = N2 drops the divergent operand.
        let (n, q) = setup(2, 1, 1, (1, 2), (1, 2));
        let a = optimal_exponents_case1(&n, &q).unwrap();
        assert_eq!(a.a1, ratio(1, 2));
        assert_eq!(a.a2, ratio(1, 2));
        // alpha2 = 0 sends no zero-forcing power toward receiver 1's beam.
        let (n, q) = setup(4, 2, 3, (4, 5), (0, 1));
        let a = optimal_exponents_case1(&n, &q).unwrap();
        assert!(a.a1.is_zero());
        // Non-case-1 input is rejected.
        let (n, q) = setup(4, 2, 3, (3, 5), (2, 5));
        assert!(matches!(
            optimal_exponents_case1(&n, &q),
            Err(AllocationError::CaseMismatch { .. })
        ));
    }

    #[test]
    fn space_time_rho_examples() {
        let (n, q) = setup(4, 2, 3, (3, 5), (2, 5));
        assert_eq!(space_time_allocation(&n, &q).unwrap().rho, ratio(1, 4));
        let (n, q) = setup(4, 2, 3, (0, 1), (1, 2));
        assert_eq!(space_time_allocation(&n, &q).unwrap().rho, Rational::one());
        let (n, q) = setup(2, 1, 1, (1, 4), (1, 2));
        assert_eq!(space_time_allocation(&n, &q).unwrap().rho, ratio(1, 2));
    }

    #[test]
    fn space_time_rejects_zero_delta() {
        let (n, mut q) = setup(2, 1, 1, (1, 2), (1, 2));
        q.alpha2 = Rational::zero();
        assert_eq!(
            space_time_allocation(&n, &q),
            Err(AllocationError::DegenerateSchedule)
        );
    }

    #[test]
    fn space_time_bounds_case4_example() {
        let (n, q) = setup(4, 2, 3, (3, 5), (2, 5));
        let st = space_time_allocation(&n, &q).unwrap();
        let b = bounds_space_time(&n, &q, &st).unwrap();
        assert_eq!(b.dp1_max, ratio(3, 10));
        assert_eq!(b.dp2_max, ratio(3, 2));
        assert_eq!(b.common_budget(), ratio(3, 2));
        assert_eq!(b.dc2, ratio(3, 2));
    }

    #[test]
    fn space_time_degenerates_to_single_phase() {
        let (n, q) = setup(4, 2, 3, (3, 10), (2, 5));
        for (rho, phase) in [
            (Rational::one(), PowerAllocation::new(ratio(2, 5), Rational::one())),
            (Rational::zero(), PowerAllocation::new(ratio(2, 5), ratio(3, 10))),
        ] {
            let st = SpaceTimeAllocation::new(rho, &q).unwrap();
            let st_bounds = bounds_space_time(&n, &q, &st).unwrap();
            let single = bounds_single(&n, &q, &phase).unwrap();
            assert_eq!(st_bounds, single);
        }
    }

    #[test]
    fn recipe_p12_case1() {
        let (n, q) = setup(4, 2, 3, (4, 5), (2, 5));
        let r = recipe_for_corner(CornerLabel::P12, CaseId::Case1, &n, &q).unwrap();
        match &r.mode {
            RecipeMode::Single(a) => {
                assert!(a.a1.is_zero());
                assert_eq!(a.a2, ratio(1, 2));
            }
            _ => panic!("P12 is a single-phase recipe"),
        }
        assert_eq!(r.d0, Rational::from_int(2));
        assert!(r.dc_to_user1.is_zero() && r.dc_to_user2.is_zero());
        let p = evaluate_recipe(&r, &n, &q).unwrap();
        assert_eq!(p, DofPoint::new(Rational::zero(), Rational::one(), Rational::from_int(2)));
    }

    #[test]
    fn recipe_p14_case2() {
        let (n, q) = setup(4, 2, 3, (3, 5), (3, 5));
        assert_eq!(classify_case(&n, &q), CaseId::Case2);
        let r = recipe_for_corner(CornerLabel::P14, CaseId::Case2, &n, &q).unwrap();
        match &r.mode {
            RecipeMode::Single(a) => {
                assert_eq!(a.a1, ratio(1, 5));
                assert_eq!(a.a2, ratio(3, 5));
            }
            _ => panic!("P14 is a single-phase recipe"),
        }
        assert!(r.d0.is_zero());
        assert_eq!(r.dc_to_user1, ratio(9, 5));
        let p = evaluate_recipe(&r, &n, &q).unwrap();
        assert_eq!(p, DofPoint::new(Rational::from_int(2), ratio(6, 5), Rational::zero()));
    }

    #[test]
    fn recipe_p234_case4() {
        let (n, q) = setup(4, 2, 3, (3, 5), (2, 5));
        let r = recipe_for_corner(CornerLabel::P234, CaseId::Case4, &n, &q).unwrap();
        match &r.mode {
            RecipeMode::SpaceTime(st) => assert_eq!(st.rho, ratio(1, 4)),
            _ => panic!("P234 uses the schedule in case 4"),
        }
        assert_eq!(r.d0, ratio(3, 2));
        let p = evaluate_recipe(&r, &n, &q).unwrap();
        assert_eq!(p, DofPoint::new(ratio(3, 10), ratio(3, 2), ratio(3, 2)));
    }

    #[test]
    fn recipe_p24_case3() {
        let (n, q) = setup(4, 2, 3, (2, 5), (7, 10));
        assert_eq!(classify_case(&n, &q), CaseId::Case3);
        let r = recipe_for_corner(CornerLabel::P24, CaseId::Case3, &n, &q).unwrap();
        let p = evaluate_recipe(&r, &n, &q).unwrap();
        assert_eq!(p, DofPoint::new(Rational::zero(), ratio(7, 5), ratio(8, 5)));
    }

    #[test]
    fn recipe_zero_is_origin() {
        let (n, q) = setup(4, 2, 3, (1, 2), (1, 2));
        let r = zero_budget_recipe(RecipeMode::Single(PowerAllocation::new(
            Rational::zero(),
            Rational::zero(),
        )));
        assert_eq!(evaluate_recipe(&r, &n, &q).unwrap(), DofPoint::origin());
    }

    #[test]
    fn recipe_nonexistent_corner_is_error() {
        let (n, q) = setup(4, 2, 3, (3, 5), (2, 5));
        assert!(matches!(
            recipe_for_corner(CornerLabel::P123, CaseId::Case4, &n, &q),
            Err(AllocationError::NonexistentCorner { .. })
        ));
    }

    mod properties {
        use super::*;
        use crate::regions::region_imperfect;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(64))]

            // Any in-range allocation, spent entirely on the common message,
            // lands inside the region: achievability never exceeds the
            // converse.
            #[test]
            fn achieved_points_stay_inside_the_region(
                m in 2u32..6, n1 in 1u32..4, n2 in 1u32..4,
                qa1 in 0i64..=8, qa2 in 0i64..=8,
                a1_num in 0i64..=8, a2_num in 0i64..=8,
            ) {
                let c = crate::regions::AntennaConfig::new(m, n1, n2).unwrap();
                let q = CsitQuality::new(ratio(qa1, 8), ratio(qa2, 8)).unwrap();
                let (n, qn) = normalize(&c, &q);
                let a = PowerAllocation::new(
                    &ratio(a1_num, 8) * &qn.alpha2,
                    ratio(a2_num, 8),
                );
                let bounds = bounds_single(&n, &qn, &a).unwrap();
                let recipe = Recipe {
                    mode: RecipeMode::Single(a),
                    d0: bounds.common_budget(),
                    dc_to_user1: Rational::zero(),
                    dc_to_user2: Rational::zero(),
                };
                let achieved = evaluate_recipe(&recipe, &n, &qn).unwrap();
                let reported = if n.receivers_swapped { achieved.swapped() } else { achieved };
                prop_assert!(region_imperfect(&c, &q).contains(&reported));
            }
        }
    }

    #[test]
    fn infeasible_recipe_names_the_bound() {
        let (n, q) = setup(4, 2, 3, (4, 5), (2, 5));
        let r = Recipe::single(
            Rational::zero(),
            Rational::zero(),
            Rational::from_int(3),
            Rational::zero(),
            Rational::zero(),
        );
        match evaluate_recipe(&r, &n, &q) {
            Err(AllocationError::BudgetExceeded { bound, .. }) => {
                assert!(bound.contains("receiver-1"));
            }
            other => panic!("expected budget error, got {other:?}"),
        }
    }
}
