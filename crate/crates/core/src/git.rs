//! GIT cones and the GIT fan of a set of orbit cones.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

use crate::cone::Cone;
use crate::grading::OrbitConeSet;
use crate::lattice::{clear_denominators, IntVec};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GitError {
    #[error("point {0} is not in the weight cone")]
    OutsideWeightCone(String),
    #[error("GIT fan consistency check failed: {0}")]
    FanAxiom(String),
}

/// `κ(u)`: the intersection of all orbit cones containing `u`.
pub fn git_cone(omega: &OrbitConeSet, u: &[BigInt]) -> Result<Cone, GitError> {
    if !omega.generic().contains(u) {
        return Err(GitError::OutsideWeightCone(crate::lattice::fmt_vec(u)));
    }
    let mut eqs: Vec<IntVec> = Vec::new();
    let mut ineqs: Vec<IntVec> = Vec::new();
    for c in omega.cones().iter().filter(|c| c.contains(u)) {
        eqs.extend(c.equations().iter().cloned());
        ineqs.extend(c.facets().iter().cloned());
    }
    Ok(Cone::from_constraints(omega.rank(), &eqs, &ineqs))
}

pub fn git_cone_rational(omega: &OrbitConeSet, u: &[BigRational]) -> Result<Cone, GitError> {
    let scaled = if u.iter().all(num_traits::Zero::is_zero) {
        vec![BigInt::from(0); u.len()]
    } else {
        clear_denominators(u)
    };
    git_cone(omega, &scaled)
}

/// All GIT cones, with the maximal ones and the interior ones marked.
#[derive(Clone, Debug)]
pub struct GitFan {
    cones: Vec<Cone>,
    chambers: Vec<usize>,
    interior: Vec<usize>,
}

impl GitFan {
    /// All GIT cones in canonical order (faces included).
    pub fn cones(&self) -> &[Cone] {
        &self.cones
    }

    /// Indices of the maximal cones.
    pub fn chambers(&self) -> &[usize] {
        &self.chambers
    }

    /// Indices of the cones whose relative interior lies in the interior of
    /// the weight cone.
    pub fn interior(&self) -> &[usize] {
        &self.interior
    }

    pub fn chamber_cones(&self) -> Vec<&Cone> {
        self.chambers.iter().map(|&i| &self.cones[i]).collect()
    }

    pub fn interior_cones(&self) -> Vec<&Cone> {
        self.interior.iter().map(|&i| &self.cones[i]).collect()
    }

    pub fn index_of(&self, c: &Cone) -> Option<usize> {
        self.cones.binary_search(c).ok()
    }

    pub fn is_interior(&self, i: usize) -> bool {
        self.interior.contains(&i)
    }

    pub fn is_chamber(&self, i: usize) -> bool {
        self.chambers.contains(&i)
    }
}

/// Closure under pairwise intersection of the orbit cones of maximal
/// dimension, keeping only intersections of that dimension.
fn chamber_candidates(omega: &OrbitConeSet) -> BTreeSet<Cone> {
    let d = omega.generic().dim();
    let mut all: BTreeSet<Cone> = omega.cones().iter().filter(|c| c.dim() == d).cloned().collect();
    let mut frontier: Vec<Cone> = all.iter().cloned().collect();
    while !frontier.is_empty() {
        let snapshot: Vec<Cone> = all.iter().cloned().collect();
        let mut fresh = BTreeSet::new();
        for a in &frontier {
            for b in &snapshot {
                if a.contains_cone(b) || b.contains_cone(a) {
                    continue;
                }
                let c = a.intersect(b);
                if c.dim() == d && !all.contains(&c) {
                    fresh.insert(c);
                }
            }
        }
        all.extend(fresh.iter().cloned());
        frontier = fresh.into_iter().collect();
    }
    all
}

/// The GIT fan.
///
/// A chamber `λ` is the intersection of the full-dimensional orbit cones
/// containing it, and `κ` of a relative-interior point of `λ` is `λ`
/// itself, so the chambers are found among the full-dimensional
/// intersections. The remaining GIT cones are their faces. The fan
/// property is verified before returning.
pub fn git_fan(omega: &OrbitConeSet) -> Result<GitFan, GitError> {
    let d = omega.generic().dim();
    let mut chamber_set: BTreeSet<Cone> = BTreeSet::new();
    for c in chamber_candidates(omega) {
        let k = git_cone(omega, &c.relint_point())?;
        if k.dim() == d {
            chamber_set.insert(k);
        }
    }
    let chamber_list: Vec<Cone> = chamber_set.into_iter().collect();
    let mut found: BTreeSet<Cone> = BTreeSet::new();
    for c in &chamber_list {
        found.extend(c.faces());
    }
    let cones: Vec<Cone> = found.into_iter().collect();
    check_fan(omega, &cones, &chamber_list)?;

    let chambers = chamber_list
        .iter()
        .map(|c| cones.binary_search(c).expect("chambers are among the cones"))
        .collect();
    let generic = omega.generic();
    let interior = (0..cones.len())
        .filter(|&i| generic.relint_contains(&cones[i].relint_point()))
        .collect();
    Ok(GitFan {
        cones,
        chambers,
        interior,
    })
}

/// Every listed cone must be the GIT cone of its relative interior, and the
/// chambers must meet in common faces. Since all cones are faces of
/// chambers, the latter gives the fan property for all of them.
fn check_fan(omega: &OrbitConeSet, cones: &[Cone], chambers: &[Cone]) -> Result<(), GitError> {
    for k in cones {
        let p = k.relint_point();
        if git_cone(omega, &p)? != *k {
            return Err(GitError::FanAxiom(format!("{k} is not the GIT cone of its own relative interior")));
        }
    }
    for (i, a) in chambers.iter().enumerate() {
        for b in &chambers[i + 1..] {
            let c = a.intersect(b);
            if !c.is_face_of(a) || !c.is_face_of(b) {
                return Err(GitError::FanAxiom(format!("{a} and {b} do not meet in a common face")));
            }
        }
    }
    Ok(())
}

/// The GIT cones `κ` with `κ° ⊆ ω(Z)°`.
pub fn interior_git_cones(fan: &GitFan) -> Vec<Cone> {
    fan.interior_cones().into_iter().cloned().collect()
}
