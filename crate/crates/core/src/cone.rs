//! Exact rational polyhedral cones with both descriptions kept in sync.
//!
//! A [`Cone`] always carries its lineality space, its extremal rays (taken
//! in the orthogonal complement of the lineality space), its facet normals
//! (taken inside the linear span) and the equations of the span. All four
//! lists are canonical, so two cones are equal as sets iff the structs are
//! equal, and cones can live in ordered and hashed sets.
//!
//! Conversion between the descriptions is an incremental double description
//! with an algebraic adjacency test. It is exponential in the worst case,
//! which is fine for the ranks and ray counts this crate deals with.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::lattice::{
    canonical_span_basis, clear_denominators, dot, int_vec, is_zero_vec,
    orthogonal_complement, primitive, project_off, rational_rank, IntVec,
};

/// A rational polyhedral cone in `Q^n` (possibly with lineality).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cone {
    ambient_rank: usize,
    dim: usize,
    lineality: Vec<IntVec>,
    rays: Vec<IntVec>,
    facets: Vec<IntVec>,
    equations: Vec<IntVec>,
}

/// Generators of `{x : <e, x> = 0 for e in eqs, <h, x> >= 0 for h in ineqs}`
/// as `(lineality basis, extremal rays modulo lineality)`.
fn double_description(n: usize, eqs: &[IntVec], ineqs: &[IntVec]) -> (Vec<IntVec>, Vec<IntVec>) {
    let mut lineality: Vec<IntVec> = (0..n)
        .map(|i| {
            let mut v = vec![BigInt::zero(); n];
            v[i] = BigInt::one();
            v
        })
        .collect();
    let mut rays: Vec<IntVec> = Vec::new();
    let mut processed: Vec<IntVec> = Vec::new();

    let constraints = eqs
        .iter()
        .flat_map(|e| [e.clone(), e.iter().map(|x| -x).collect()])
        .chain(ineqs.iter().cloned())
        .filter(|h| !is_zero_vec(h));

    for h in constraints {
        if let Some(pos) = lineality.iter().position(|l| !dot(&h, l).is_zero()) {
            let mut l = lineality.swap_remove(pos);
            let mut d = dot(&h, &l);
            if d.is_negative() {
                l = l.iter().map(|x| -x).collect();
                d = -d;
            }
            let shift = |v: &IntVec| -> IntVec {
                let s = dot(&h, v);
                primitive(v.iter().zip(&l).map(|(x, y)| &d * x - &s * y).collect())
            };
            lineality = lineality.iter().map(shift).collect();
            rays = rays.iter().map(shift).collect();
            rays.push(primitive(l));
        } else {
            let signs: Vec<BigInt> = rays.iter().map(|r| dot(&h, r)).collect();
            let tight = |r: &IntVec| -> Vec<usize> {
                processed
                    .iter()
                    .enumerate()
                    .filter(|(_, p)| dot(p, r).is_zero())
                    .map(|(i, _)| i)
                    .collect()
            };
            let target = n.saturating_sub(lineality.len() + 2);
            let mut next: Vec<IntVec> = Vec::new();
            for (r, s) in rays.iter().zip(&signs) {
                if !s.is_negative() {
                    next.push(r.clone());
                }
            }
            let zsets: Vec<Vec<usize>> = rays.iter().map(tight).collect();
            for (i, p) in rays.iter().enumerate() {
                if !signs[i].is_positive() {
                    continue;
                }
                for (j, q) in rays.iter().enumerate() {
                    if !signs[j].is_negative() {
                        continue;
                    }
                    let common: Vec<usize> = zsets[i]
                        .iter()
                        .filter(|x| zsets[j].contains(x))
                        .copied()
                        .collect();
                    if common.len() < target {
                        continue;
                    }
                    let rows: Vec<IntVec> = common.iter().map(|&c| processed[c].clone()).collect();
                    if rational_rank(&rows, n) != target {
                        continue;
                    }
                    let sp = &signs[i];
                    let sq = &signs[j];
                    let v: IntVec = q.iter().zip(p).map(|(x, y)| sp * x - sq * y).collect();
                    next.push(primitive(v));
                }
            }
            next.sort();
            next.dedup();
            rays = next;
        }
        processed.push(h);
    }
    (lineality, rays)
}

impl Cone {
    /// The cone generated by `rays` (duplicates, zero vectors and redundant
    /// rays are allowed). The empty list gives the zero cone.
    pub fn from_generators(rank: usize, rays: &[IntVec]) -> Cone {
        for r in rays {
            assert_eq!(r.len(), rank, "generator length must equal the ambient rank");
        }
        let (equations, facets) = double_description(rank, &[], rays);
        Cone::from_constraints(rank, &equations, &facets)
    }

    pub fn from_i64(rank: usize, rays: &[&[i64]]) -> Cone {
        let rays: Vec<IntVec> = rays.iter().map(|r| int_vec(r)).collect();
        Cone::from_generators(rank, &rays)
    }

    /// The cone `{x : <e,x> = 0, <a,x> >= 0}`.
    pub fn from_constraints(rank: usize, equations: &[IntVec], inequalities: &[IntVec]) -> Cone {
        let (lin, rays) = double_description(rank, equations, inequalities);
        Cone::canonical(rank, lin, rays)
    }

    pub fn zero(rank: usize) -> Cone {
        Cone::from_generators(rank, &[])
    }

    pub fn full(rank: usize) -> Cone {
        Cone::from_constraints(rank, &[], &[])
    }

    /// Canonical form from a lineality basis plus rays that are extremal
    /// modulo lineality.
    fn canonical(n: usize, lin: Vec<IntVec>, rays: Vec<IntVec>) -> Cone {
        let lineality = canonical_span_basis(&lin, n);
        let mut rays: Vec<IntVec> = rays
            .iter()
            .map(|r| project_off(r, &lineality))
            .filter(|r| !is_zero_vec(r))
            .collect();
        rays.sort();
        rays.dedup();

        let mut span_gens = lineality.clone();
        span_gens.extend(rays.iter().cloned());
        let span = canonical_span_basis(&span_gens, n);
        let equations = orthogonal_complement(&span, n);

        // facet normals: extremal rays of the dual cone, moved into the span
        let mut dual_ineqs: Vec<IntVec> = lineality.clone();
        dual_ineqs.extend(lineality.iter().map(|l| l.iter().map(|x| -x).collect::<IntVec>()));
        dual_ineqs.extend(rays.iter().cloned());
        let (_, dual_rays) = double_description(n, &[], &dual_ineqs);
        let mut facets: Vec<IntVec> = dual_rays
            .iter()
            .map(|a| project_off(a, &equations))
            .filter(|a| !is_zero_vec(a))
            .collect();
        facets.sort();
        facets.dedup();

        let cone = Cone {
            ambient_rank: n,
            dim: span.len(),
            lineality,
            rays,
            facets,
            equations,
        };
        debug_assert!(cone.descriptions_agree());
        cone
    }

    fn descriptions_agree(&self) -> bool {
        self.generators().iter().all(|g| self.contains(g))
            && self.facets.iter().all(|a| {
                // each facet must be tight on at least dim-1 independent generators
                let tight: Vec<IntVec> = self
                    .generators()
                    .into_iter()
                    .filter(|g| dot(a, g).is_zero())
                    .collect();
                rational_rank(&tight, self.ambient_rank) + 1 == self.dim
            })
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Canonical basis of the lineality space.
    pub fn lineality(&self) -> &[IntVec] {
        &self.lineality
    }

    /// Extremal rays modulo lineality, in the complement of the lineality space.
    pub fn rays(&self) -> &[IntVec] {
        &self.rays
    }

    pub fn facets(&self) -> &[IntVec] {
        &self.facets
    }

    pub fn equations(&self) -> &[IntVec] {
        &self.equations
    }

    /// A generating set: `±` each lineality basis vector, then the rays.
    pub fn generators(&self) -> Vec<IntVec> {
        let mut g: Vec<IntVec> = Vec::new();
        for l in &self.lineality {
            g.push(l.clone());
            g.push(l.iter().map(|x| -x).collect());
        }
        g.extend(self.rays.iter().cloned());
        g
    }

    pub fn is_zero(&self) -> bool {
        self.dim == 0
    }

    pub fn is_pointed(&self) -> bool {
        self.lineality.is_empty()
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.dim == self.ambient_rank
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.equations.iter().all(|e| dot(e, v).is_zero())
            && self.facets.iter().all(|a| !dot(a, v).is_negative())
    }

    pub fn contains_rational(&self, v: &[BigRational]) -> bool {
        self.contains(&scale_rational(v))
    }

    /// Membership in the relative interior.
    pub fn relint_contains(&self, v: &[BigInt]) -> bool {
        assert_eq!(v.len(), self.ambient_rank);
        self.equations.iter().all(|e| dot(e, v).is_zero())
            && self.facets.iter().all(|a| dot(a, v).is_positive())
    }

    pub fn relint_contains_rational(&self, v: &[BigRational]) -> bool {
        self.relint_contains(&scale_rational(v))
    }

    /// The sum of the rays: a point of the relative interior.
    pub fn relint_point(&self) -> IntVec {
        let mut p = vec![BigInt::zero(); self.ambient_rank];
        for r in &self.rays {
            for (x, y) in p.iter_mut().zip(r) {
                *x += y;
            }
        }
        p
    }

    pub fn contains_cone(&self, other: &Cone) -> bool {
        other.generators().iter().all(|g| self.contains(g))
    }

    pub fn intersect(&self, other: &Cone) -> Cone {
        assert_eq!(self.ambient_rank, other.ambient_rank);
        let mut eqs = self.equations.clone();
        eqs.extend(other.equations.iter().cloned());
        let mut ineqs = self.facets.clone();
        ineqs.extend(other.facets.iter().cloned());
        Cone::from_constraints(self.ambient_rank, &eqs, &ineqs)
    }

    /// `self° ∩ other° ≠ ∅`.
    ///
    /// Let `ρ = self ∩ other`. If the relative interiors meet at all, then
    /// `ρ°` lies in both of them, so testing one point of `ρ°` decides it.
    pub fn relints_intersect(&self, other: &Cone) -> bool {
        let rho = self.intersect(other);
        let p = rho.relint_point();
        self.relint_contains(&p) && other.relint_contains(&p)
    }

    /// `self° ⊆ other°`.
    pub fn relint_within(&self, other: &Cone) -> bool {
        other.contains_cone(self) && other.relint_contains(&self.relint_point())
    }

    /// The face cut out by the hyperplane `<normal, x> = 0`.
    fn face_at(&self, normals: &[IntVec]) -> Cone {
        let mut eqs = self.equations.clone();
        eqs.extend(normals.iter().cloned());
        Cone::from_constraints(self.ambient_rank, &eqs, &self.facets)
    }

    /// True iff `self` is a face of `c` (the improper face included).
    pub fn is_face_of(&self, c: &Cone) -> bool {
        if self.ambient_rank != c.ambient_rank || !c.contains_cone(self) {
            return false;
        }
        let gens = self.generators();
        let tight: Vec<IntVec> = c
            .facets
            .iter()
            .filter(|a| gens.iter().all(|g| dot(a, g).is_zero()))
            .cloned()
            .collect();
        c.face_at(&tight) == *self
    }

    /// All faces, from the minimal face (the lineality space) up to the cone
    /// itself, in canonical order.
    pub fn faces(&self) -> BTreeSet<Cone> {
        let mut out = BTreeSet::new();
        let mut stack = vec![self.clone()];
        while let Some(f) = stack.pop() {
            if out.contains(&f) {
                continue;
            }
            for a in &f.facets {
                let sub = f.face_at(std::slice::from_ref(a));
                if !out.contains(&sub) {
                    stack.push(sub);
                }
            }
            out.insert(f);
        }
        out
    }

    /// Compact human-readable form, e.g. `cone(1,0; 1,1)`, `{0}`, `lin(1)`.
    pub fn label(&self) -> String {
        if self.is_zero() {
            return "{0}".to_string();
        }
        let join = |vs: &[IntVec]| -> String {
            vs.iter()
                .map(|v| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
                .collect::<Vec<_>>()
                .join("; ")
        };
        match (self.lineality.is_empty(), self.rays.is_empty()) {
            (true, _) => format!("cone({})", join(&self.rays)),
            (false, true) => format!("lin({})", join(&self.lineality)),
            (false, false) => format!("lin({}) + cone({})", join(&self.lineality), join(&self.rays)),
        }
    }
}

impl fmt::Display for Cone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// Rational vector scaled by a positive factor to an integer vector.
fn scale_rational(v: &[BigRational]) -> IntVec {
    if v.iter().all(|x| x.is_zero()) {
        return vec![BigInt::zero(); v.len()];
    }
    clear_denominators(v)
}

// Free-function spellings of the main operations.

pub fn cone_from_generators(rank: usize, rays: &[IntVec]) -> Cone {
    Cone::from_generators(rank, rays)
}

pub fn is_face(f: &Cone, c: &Cone) -> bool {
    f.is_face_of(c)
}

pub fn faces(c: &Cone) -> BTreeSet<Cone> {
    c.faces()
}

pub fn relint_contains(c: &Cone, v: &[BigRational]) -> bool {
    c.relint_contains_rational(v)
}

pub fn relints_intersect(a: &Cone, b: &Cone) -> bool {
    a.relints_intersect(b)
}

pub fn intersect(a: &Cone, b: &Cone) -> Cone {
    a.intersect(b)
}

pub fn cone_equal(a: &Cone, b: &Cone) -> bool {
    a == b
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c2(rays: &[&[i64]]) -> Cone {
        Cone::from_i64(2, rays)
    }

    fn iv(v: &[i64]) -> IntVec {
        int_vec(v)
    }

    #[test]
    fn two_ray_cone_description() {
        let c = c2(&[&[1, 0], &[1, 1]]);
        assert_eq!(c.dim(), 2);
        assert_eq!(c.rays(), &[iv(&[1, 0]), iv(&[1, 1])]);
        assert_eq!(c.facets(), &[iv(&[0, 1]), iv(&[1, -1])]);
        assert!(c.equations().is_empty());
    }

    #[test]
    fn zero_and_line() {
        let z = Cone::zero(2);
        assert_eq!(z.dim(), 0);
        assert!(z.rays().is_empty() && z.facets().is_empty());
        assert_eq!(z.equations().len(), 2);

        let line = Cone::from_i64(1, &[&[1], &[-1]]);
        assert_eq!(line.dim(), 1);
        assert!(line.facets().is_empty());
        assert!(line.equations().is_empty());
        assert_eq!(line, Cone::full(1));
    }

    #[test]
    fn face_tests() {
        let c = c2(&[&[1, 0], &[1, 1]]);
        let quadrant = c2(&[&[1, 0], &[0, 1]]);
        let diag = c2(&[&[1, 1]]);
        assert!(diag.is_face_of(&c));
        assert!(!diag.is_face_of(&quadrant));
        assert!(c.is_face_of(&c));
        assert!(Cone::zero(2).is_face_of(&quadrant));
    }

    #[test]
    fn face_enumeration() {
        let quadrant = c2(&[&[1, 0], &[0, 1]]);
        let f = quadrant.faces();
        assert_eq!(f.len(), 4);
        assert!(f.contains(&Cone::zero(2)));
        assert!(f.contains(&c2(&[&[1, 0]])));
        assert!(f.contains(&c2(&[&[0, 1]])));
        assert_eq!(Cone::zero(3).faces().len(), 1);
        let line = Cone::full(1);
        assert_eq!(line.faces().into_iter().collect::<Vec<_>>(), vec![line]);
        // half-plane: faces are the boundary line and itself
        let half = c2(&[&[1, 0], &[-1, 0], &[0, 1]]);
        assert_eq!(half.faces().len(), 2);
    }

    #[test]
    fn relint_membership() {
        let quadrant = c2(&[&[1, 0], &[0, 1]]);
        assert!(quadrant.relint_contains(&iv(&[1, 1])));
        assert!(!quadrant.relint_contains(&iv(&[1, 0])));
        assert!(c2(&[&[1, 1]]).relint_contains(&iv(&[2, 2])));
        assert!(Cone::zero(2).relint_contains(&iv(&[0, 0])));
    }

    #[test]
    fn relint_overlap() {
        let pos = Cone::from_i64(1, &[&[1]]);
        let neg = Cone::from_i64(1, &[&[-1]]);
        assert!(!pos.relints_intersect(&neg));
        assert!(pos.relints_intersect(&pos));
        let quadrant = c2(&[&[1, 0], &[0, 1]]);
        assert!(c2(&[&[1, 1]]).relints_intersect(&quadrant));
        assert!(!c2(&[&[1, 0]]).relints_intersect(&quadrant));
        assert!(Cone::zero(1).relints_intersect(&Cone::full(1)));
        assert!(!Cone::zero(1).relints_intersect(&pos));
    }

    #[test]
    fn intersections() {
        let a = c2(&[&[1, 0], &[1, 1]]);
        let b = c2(&[&[1, 1], &[0, 1]]);
        assert_eq!(a.intersect(&b), c2(&[&[1, 1]]));
        assert_eq!(a.intersect(&a), a);
        let quadrant = c2(&[&[1, 0], &[0, 1]]);
        assert_eq!(quadrant.intersect(&Cone::zero(2)), Cone::zero(2));
    }

    #[test]
    fn equality_is_canonical() {
        assert_eq!(c2(&[&[1, 0], &[0, 1], &[1, 1]]), c2(&[&[1, 0], &[0, 1]]));
        assert_eq!(c2(&[&[2, 2]]), c2(&[&[1, 1]]));
        assert_ne!(c2(&[&[1, 0]]), c2(&[&[0, 1]]));
        // same half-plane from different generators
        assert_eq!(
            c2(&[&[1, 0], &[-1, 0], &[0, 1]]),
            c2(&[&[2, 0], &[-3, 0], &[1, 5], &[-1, 1]])
        );
    }

    #[test]
    fn rank_three_octant_and_simplex() {
        let oct = Cone::from_i64(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(oct.faces().len(), 8);
        // square pyramid: 4 rays, 4 facets, 10 faces incl. zero and itself
        let pyr = Cone::from_i64(3, &[&[1, 0, 1], &[0, 1, 1], &[-1, 0, 1], &[0, -1, 1]]);
        assert_eq!(pyr.rays().len(), 4);
        assert_eq!(pyr.facets().len(), 4);
        assert_eq!(pyr.faces().len(), 10);
    }
}
