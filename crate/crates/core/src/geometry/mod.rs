//! Exact 3D polytope substrate in (d1, d2, d0)-space.
//!
//! Regions live in the nonnegative octant and are given in halfspace form;
//! the three nonnegativity constraints are implicit and always active. The
//! brute-force vertex enumeration here is the independent oracle against
//! which every closed-form result in the crate is checked: all arithmetic is
//! exact, so vertex sets compare bit-for-bit.

mod rational;

pub use rational::{cmp, ratio, Rational, RationalError};

use std::fmt;

use itertools::Itertools;

/// Geometry failures. Unboundedness carries a feasible recession direction
/// as the certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GeometryError {
    Unbounded { ray: Box<(Rational, Rational, Rational)> },
    ZeroNormal,
    NoVertices,
}

impl fmt::Display for GeometryError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeometryError::Unbounded { ray } => write!(
                f,
                "polytope is unbounded along ({}, {}, {})",
                ray.0, ray.1, ray.2
            ),
            GeometryError::ZeroNormal => write!(f, "halfspace normal must be nonzero"),
            GeometryError::NoVertices => write!(f, "polytope has no vertices (infeasible)"),
        }
    }
}

impl std::error::Error for GeometryError {}

/// A DoF triple (d1, d2, d0). Ordering is lexicographic in that field order.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DofPoint {
    pub d1: Rational,
    pub d2: Rational,
    pub d0: Rational,
}

impl DofPoint {
    pub fn new(d1: Rational, d2: Rational, d0: Rational) -> Self {
        DofPoint { d1, d2, d0 }
    }

    pub fn origin() -> Self {
        DofPoint::new(Rational::zero(), Rational::zero(), Rational::zero())
    }

    pub fn is_nonnegative(&self) -> bool {
        !self.d1.is_negative() && !self.d2.is_negative() && !self.d0.is_negative()
    }

    /// Swap the two private-message coordinates (receiver relabeling).
    pub fn swapped(&self) -> Self {
        DofPoint::new(self.d2.clone(), self.d1.clone(), self.d0.clone())
    }

    pub fn dot(&self, w: &(Rational, Rational, Rational)) -> Rational {
        &self.d1 * &w.0 + &self.d2 * &w.1 + &self.d0 * &w.2
    }

    pub fn sum(&self) -> Rational {
        &self.d1 + &(&self.d2 + &self.d0)
    }
}

impl fmt::Debug for DofPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.d1, self.d2, self.d0)
    }
}

impl fmt::Display for DofPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.d1, self.d2, self.d0)
    }
}

/// The halfspace a1*d1 + a2*d2 + a0*d0 <= b.
#[derive(Clone, PartialEq, Eq)]
pub struct Halfspace {
    pub a1: Rational,
    pub a2: Rational,
    pub a0: Rational,
    pub b: Rational,
}

impl Halfspace {
    pub fn new(a1: Rational, a2: Rational, a0: Rational, b: Rational) -> Result<Self, GeometryError> {
        if a1.is_zero() && a2.is_zero() && a0.is_zero() {
            return Err(GeometryError::ZeroNormal);
        }
        Ok(Halfspace { a1, a2, a0, b })
    }

    /// Left-hand side value at `p`.
    pub fn eval(&self, p: &DofPoint) -> Rational {
        &self.a1 * &p.d1 + &self.a2 * &p.d2 + &self.a0 * &p.d0
    }

    pub fn satisfied_by(&self, p: &DofPoint) -> bool {
        self.eval(p) <= self.b
    }

    pub fn active_at(&self, p: &DofPoint) -> bool {
        self.eval(p) == self.b
    }

    fn normal(&self) -> [Rational; 3] {
        [self.a1.clone(), self.a2.clone(), self.a0.clone()]
    }

    /// Swap the d1 and d2 coefficient roles (receiver relabeling).
    pub fn swapped(&self) -> Self {
        Halfspace {
            a1: self.a2.clone(),
            a2: self.a1.clone(),
            a0: self.a0.clone(),
            b: self.b.clone(),
        }
    }
}

impl fmt::Debug for Halfspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*d1 + {}*d2 + {}*d0 <= {}", self.a1, self.a2, self.a0, self.b)
    }
}

/// Solves the 3x3 system given by three halfspaces read as equalities.
/// Returns `None` when the coefficient determinant is zero.
#[allow(clippy::needless_range_loop)] // elimination reads one row while writing another
pub fn solve3(rows: [&Halfspace; 3]) -> Option<DofPoint> {
    let mut m: Vec<[Rational; 4]> = rows
        .iter()
        .map(|h| [h.a1.clone(), h.a2.clone(), h.a0.clone(), h.b.clone()])
        .collect();
    for col in 0..3 {
        let pivot = (col..3).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot);
        for r in col + 1..3 {
            if !m[r][col].is_zero() {
                let f = &m[r][col] / &m[col][col];
                for c in col..4 {
                    m[r][c] = &m[r][c] - &(&f * &m[col][c]);
                }
            }
        }
    }
    let x0 = &m[2][3] / &m[2][2];
    let x2 = &(&m[1][3] - &(&m[1][2] * &x0)) / &m[1][1];
    let x1 = &(&m[0][3] - &(&(&m[0][1] * &x2) + &(&m[0][2] * &x0))) / &m[0][0];
    Some(DofPoint::new(x1, x2, x0))
}

fn cross(a: &[Rational; 3], b: &[Rational; 3]) -> [Rational; 3] {
    [
        &(&a[1] * &b[2]) - &(&a[2] * &b[1]),
        &(&a[2] * &b[0]) - &(&a[0] * &b[2]),
        &(&a[0] * &b[1]) - &(&a[1] * &b[0]),
    ]
}

fn is_zero_vec(v: &[Rational; 3]) -> bool {
    v.iter().all(Rational::is_zero)
}

/// Rank of a set of 3-vectors by exact Gaussian elimination.
#[allow(clippy::needless_range_loop)] // elimination reads one row while writing another
fn rank3(rows: &[[Rational; 3]]) -> usize {
    let mut m: Vec<[Rational; 3]> = rows.to_vec();
    let mut rank = 0;
    for col in 0..3 {
        if let Some(p) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) {
            m.swap(rank, p);
            for r in 0..m.len() {
                if r != rank && !m[r][col].is_zero() {
                    let f = &m[r][col] / &m[rank][col];
                    for c in 0..3 {
                        m[r][c] = &m[r][c] - &(&f * &m[rank][c]);
                    }
                }
            }
            rank += 1;
            if rank == 3 {
                break;
            }
        }
    }
    rank
}

fn nonneg_rows() -> [Halfspace; 3] {
    let z = Rational::zero;
    let m1 = || -Rational::one();
    [
        Halfspace { a1: m1(), a2: z(), a0: z(), b: z() },
        Halfspace { a1: z(), a2: m1(), a0: z(), b: z() },
        Halfspace { a1: z(), a2: z(), a0: m1(), b: z() },
    ]
}

/// A bounded region of the nonnegative octant in halfspace representation.
/// The list may contain redundant halfspaces; all operations are
/// representation independent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polytope {
    pub halfspaces: Vec<Halfspace>,
}

impl Polytope {
    pub fn new(halfspaces: Vec<Halfspace>) -> Self {
        Polytope { halfspaces }
    }

    /// Copy of the region with one extra halfspace appended.
    pub fn with_halfspace(&self, h: Halfspace) -> Self {
        let mut hs = self.halfspaces.clone();
        hs.push(h);
        Polytope::new(hs)
    }

    /// Exact membership; the boundary counts as inside.
    pub fn contains(&self, p: &DofPoint) -> bool {
        p.is_nonnegative() && self.halfspaces.iter().all(|h| h.satisfied_by(p))
    }

    /// Number of linearly independent constraints (halfspaces plus
    /// coordinate planes) active at `p`. A contained point is a vertex
    /// exactly when this is 3.
    pub fn active_rank(&self, p: &DofPoint) -> usize {
        let mut rows: Vec<[Rational; 3]> = Vec::new();
        for (coord, axis) in [(&p.d1, 0usize), (&p.d2, 1), (&p.d0, 2)] {
            if coord.is_zero() {
                let mut n = [Rational::zero(), Rational::zero(), Rational::zero()];
                n[axis] = Rational::one();
                rows.push(n);
            }
        }
        for h in &self.halfspaces {
            if h.active_at(p) {
                rows.push(h.normal());
            }
        }
        rank3(&rows)
    }

    /// Detects a feasible recession direction, if any. The region sits in the
    /// nonnegative octant, so its recession cone is pointed and every extreme
    /// ray lies on two linearly independent active constraints; checking all
    /// normal cross products is exhaustive.
    fn recession_ray(&self) -> Option<(Rational, Rational, Rational)> {
        let mut normals: Vec<[Rational; 3]> =
            self.halfspaces.iter().map(Halfspace::normal).collect();
        for h in nonneg_rows() {
            normals.push(h.normal());
        }
        let feasible = |r: &[Rational; 3]| -> bool {
            !r[0].is_negative()
                && !r[1].is_negative()
                && !r[2].is_negative()
                && self.halfspaces.iter().all(|h| {
                    let d = &(&h.a1 * &r[0]) + &(&(&h.a2 * &r[1]) + &(&h.a0 * &r[2]));
                    !d.is_positive()
                })
        };
        for (i, j) in (0..normals.len()).tuple_combinations() {
            let dir = cross(&normals[i], &normals[j]);
            if is_zero_vec(&dir) {
                continue;
            }
            let neg = [-&dir[0], -&dir[1], -&dir[2]];
            for cand in [dir, neg] {
                if feasible(&cand) {
                    return Some((cand[0].clone(), cand[1].clone(), cand[2].clone()));
                }
            }
        }
        None
    }

    /// Brute-force vertex enumeration: every 3-combination of constraints
    /// (halfspaces and nonnegativity planes) is solved as an equality system
    /// and solutions satisfying all constraints are kept. The result is
    /// deduplicated exactly and sorted lexicographically by (d1, d2, d0).
    pub fn enumerate_vertices(&self) -> Result<Vec<DofPoint>, GeometryError> {
        if let Some(ray) = self.recession_ray() {
            return Err(GeometryError::Unbounded { ray: Box::new(ray) });
        }
        let mut rows: Vec<Halfspace> = self.halfspaces.clone();
        rows.extend(nonneg_rows());
        let mut vertices: Vec<DofPoint> = Vec::new();
        for (i, j, k) in (0..rows.len()).tuple_combinations() {
            if let Some(p) = solve3([&rows[i], &rows[j], &rows[k]]) {
                if self.contains(&p) {
                    vertices.push(p);
                }
            }
        }
        vertices.sort();
        vertices.dedup();
        Ok(vertices)
    }

    /// Exact maximum of `w . x` over the region, attained at a vertex.
    pub fn maximize_linear(
        &self,
        w: &(Rational, Rational, Rational),
    ) -> Result<Rational, GeometryError> {
        let vertices = self.enumerate_vertices()?;
        vertices
            .iter()
            .map(|v| v.dot(w))
            .max()
            .ok_or(GeometryError::NoVertices)
    }

    /// Representation-independent equality: identical sorted vertex sets.
    pub fn equals(&self, other: &Polytope) -> Result<bool, GeometryError> {
        Ok(self.enumerate_vertices()? == other.enumerate_vertices()?)
    }
}

/// Solves every constraint triple of a halfspace list once, so that the
/// vertex set of any sublist can be recovered by filtering instead of
/// re-solving. Used by the redundancy pruning in the converse combination.
pub(crate) struct SubsetEnumerator {
    /// (candidate point, indices of the halfspaces that generated it
    /// (nonnegativity planes excluded), per-halfspace violation flags)
    candidates: Vec<(DofPoint, Vec<usize>, Vec<bool>)>,
    n: usize,
}

impl SubsetEnumerator {
    pub fn new(halfspaces: &[Halfspace]) -> Self {
        let n = halfspaces.len();
        let mut rows: Vec<(Option<usize>, &Halfspace)> =
            halfspaces.iter().enumerate().map(|(i, h)| (Some(i), h)).collect();
        let nn = nonneg_rows();
        let nn_refs: Vec<(Option<usize>, &Halfspace)> = nn.iter().map(|h| (None, h)).collect();
        rows.extend(nn_refs);
        let mut candidates = Vec::new();
        for (i, j, k) in (0..rows.len()).tuple_combinations() {
            if let Some(p) = solve3([rows[i].1, rows[j].1, rows[k].1]) {
                if !p.is_nonnegative() {
                    continue;
                }
                let used: Vec<usize> = [rows[i].0, rows[j].0, rows[k].0]
                    .into_iter()
                    .flatten()
                    .collect();
                let violated: Vec<bool> =
                    halfspaces.iter().map(|h| !h.satisfied_by(&p)).collect();
                candidates.push((p, used, violated));
            }
        }
        SubsetEnumerator { candidates, n }
    }

    /// Vertex set of the polytope formed by the halfspaces with `keep[i]`,
    /// or `None` if that subset is unbounded.
    pub fn vertices(&self, keep: &[bool], subset: &Polytope) -> Option<Vec<DofPoint>> {
        assert_eq!(keep.len(), self.n);
        if subset.recession_ray().is_some() {
            return None;
        }
        let mut out: Vec<DofPoint> = self
            .candidates
            .iter()
            .filter(|(_, used, violated)| {
                used.iter().all(|&u| keep[u])
                    && violated.iter().enumerate().all(|(i, &v)| !v || !keep[i])
            })
            .map(|(p, _, _)| p.clone())
            .collect();
        out.sort();
        out.dedup();
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(n: i64, d: i64) -> Rational {
        ratio(n, d)
    }

    fn ri(n: i64) -> Rational {
        Rational::from_int(n)
    }

    fn hs(a1: i64, a2: i64, a0: i64, b: (i64, i64)) -> Halfspace {
        Halfspace::new(ri(a1), ri(a2), ri(a0), r(b.0, b.1)).unwrap()
    }

    fn unit_cube() -> Polytope {
        Polytope::new(vec![
            hs(1, 0, 0, (1, 1)),
            hs(0, 1, 0, (1, 1)),
            hs(0, 0, 1, (1, 1)),
        ])
    }

    #[test]
    fn solve3_coordinate_planes_meet_at_origin() {
        let rows = nonneg_rows();
        let p = solve3([&rows[0], &rows[1], &rows[2]]).unwrap();
        assert_eq!(p, DofPoint::origin());
    }

    #[test]
    fn solve3_hand_checked_system() {
        // d1+d0 = 2, d2+d0 = 3, d1+d2+d0 = 17/5
        let rows = [
            hs(1, 0, 1, (2, 1)),
            hs(0, 1, 1, (3, 1)),
            hs(1, 1, 1, (17, 5)),
        ];
        let p = solve3([&rows[0], &rows[1], &rows[2]]).unwrap();
        assert_eq!(p, DofPoint::new(r(2, 5), r(7, 5), r(8, 5)));
    }

    #[test]
    fn solve3_singular_returns_none() {
        // The weighted-sum row is a combination of the others in the d2
        // direction: det(l1, l3, l4) = 0 for any antenna counts.
        let l1 = hs(1, 0, 1, (2, 1));
        let l3 = hs(1, 1, 1, (17, 5));
        let l4 = Halfspace::new(r(1, 2), r(1, 3), r(1, 2), r(23, 15)).unwrap();
        assert_eq!(solve3([&l1, &l3, &l4]), None);
    }

    #[test]
    fn cube_has_eight_vertices() {
        let verts = unit_cube().enumerate_vertices().unwrap();
        assert_eq!(verts.len(), 8);
        for v in &verts {
            for c in [&v.d1, &v.d2, &v.d0] {
                assert!(c.is_zero() || *c == ri(1));
            }
        }
    }

    #[test]
    fn cube_contains_boundary_vertex() {
        let p = DofPoint::new(ri(1), ri(1), ri(1));
        assert!(unit_cube().contains(&p));
        assert!(!unit_cube().contains(&DofPoint::new(ri(1), ri(1), r(11, 10))));
    }

    #[test]
    fn cube_linear_max() {
        let w = (ri(1), ri(1), ri(1));
        assert_eq!(unit_cube().maximize_linear(&w).unwrap(), ri(3));
    }

    #[test]
    fn unbounded_region_is_an_error() {
        let p = Polytope::new(vec![hs(1, -1, 0, (0, 1))]);
        match p.enumerate_vertices() {
            Err(GeometryError::Unbounded { .. }) => {}
            other => panic!("expected unbounded error, got {other:?}"),
        }
    }

    #[test]
    fn equality_is_representation_independent() {
        let a = unit_cube();
        let mut hs2 = a.halfspaces.clone();
        hs2.reverse();
        hs2.push(hs(1, 1, 1, (5, 1))); // redundant
        let b = Polytope::new(hs2);
        assert!(a.equals(&b).unwrap());
    }

    #[test]
    fn active_rank_detects_vertices_and_edges() {
        let cube = unit_cube();
        assert_eq!(cube.active_rank(&DofPoint::new(ri(1), ri(1), ri(1))), 3);
        assert_eq!(cube.active_rank(&DofPoint::new(ri(1), ri(1), r(1, 2))), 2);
        assert_eq!(cube.active_rank(&DofPoint::new(r(1, 2), r(1, 2), r(1, 2))), 0);
    }

    #[test]
    fn subset_enumerator_matches_direct_enumeration() {
        let cube = unit_cube();
        let en = SubsetEnumerator::new(&cube.halfspaces);
        let keep = vec![true; 3];
        assert_eq!(
            en.vertices(&keep, &cube).unwrap(),
            cube.enumerate_vertices().unwrap()
        );
        // Dropping the d0 cap unbounds the region.
        let keep = vec![true, true, false];
        let sub = Polytope::new(cube.halfspaces[..2].to_vec());
        assert_eq!(en.vertices(&keep, &sub), None);
    }

    fn arb_region() -> impl Strategy<Value = Polytope> {
        // Small random bounded regions: the unit cube plus a few extra cuts.
        proptest::collection::vec((1i64..4, 1i64..4, 1i64..4, 1i64..7), 0..4).prop_map(|cuts| {
            let mut hs_list = unit_cube().halfspaces;
            for (a1, a2, a0, b) in cuts {
                hs_list.push(
                    Halfspace::new(ri(a1), ri(a2), ri(a0), r(b, 2)).unwrap(),
                );
            }
            Polytope::new(hs_list)
        })
    }

    proptest! {
        #[test]
        fn convex_combinations_stay_inside(p in arb_region(), wa in 0i64..100, wb in 0i64..100) {
            let verts = p.enumerate_vertices().unwrap();
            prop_assume!(verts.len() >= 2);
            let a = &verts[0];
            let b = &verts[verts.len() - 1];
            let denom = ri(wa + wb + 1);
            let t = ri(wa).checked_div(&denom).unwrap();
            let s = &Rational::one() - &t;
            let mix = DofPoint::new(
                &(&a.d1 * &t) + &(&b.d1 * &s),
                &(&a.d2 * &t) + &(&b.d2 * &s),
                &(&a.d0 * &t) + &(&b.d0 * &s),
            );
            prop_assert!(p.contains(&mix));
        }

        #[test]
        fn enumeration_invariant_under_shuffle(p in arb_region(), seed in any::<u64>()) {
            let base = p.enumerate_vertices().unwrap();
            let mut hs_list = p.halfspaces.clone();
            // Deterministic Fisher-Yates driven by the seed.
            let mut state = seed | 1;
            for i in (1..hs_list.len()).rev() {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                let j = (state >> 33) as usize % (i + 1);
                hs_list.swap(i, j);
            }
            let shuffled = Polytope::new(hs_list).enumerate_vertices().unwrap();
            prop_assert_eq!(base, shuffled);
        }

        #[test]
        fn max_invariant_under_redundant_halfspace(p in arb_region()) {
            let w = (ri(1), ri(1), ri(1));
            let base = p.maximize_linear(&w).unwrap();
            let redundant = p.with_halfspace(hs(1, 1, 1, (100, 1)));
            prop_assert_eq!(redundant.maximize_linear(&w).unwrap(), base);
        }
    }
}
