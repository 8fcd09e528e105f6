//! Geometric verdicts for the embedding attached to an interior 2-maximal
//! collection: factoriality, Picard lattice and (semi)ample cones.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::collections::{bunch_from_collection, Bunch, Collection};
use crate::cone::Cone;
use crate::grading::{Mode, OrbitConeSet, ValidatedInput};
use crate::lattice::{IntVec, LatticeIndex, Sublattice};

/// Largest class set whose subsets are enumerated when listing relevant faces.
pub const MAX_FACE_ENUMERATION: usize = 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeometryError {
    #[error("collection is not interior and 2-maximal")]
    NotAnEmbedding,
    #[error("relevant face enumeration over {0} degree classes exceeds the limit of {MAX_FACE_ENUMERATION}")]
    TooManyFaces(usize),
    #[error("local factoriality disagrees between the relevant and the covering faces")]
    FactorialityMismatch,
}

/// How many generators of each group a face takes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FaceSelection {
    AtLeastOne,
    ExactlyOne,
}

/// A family of faces of the positive orthant sharing one projected cone and
/// one lattice.
///
/// In suitable mode a face is determined up to these data by the set of
/// degree classes it meets, so `key` lists class ids and each group holds
/// the generator indices of one class. In explicit mode every face is
/// listed on its own: `key` is the generator index set and groups are
/// singletons.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FaceSpec {
    pub key: Vec<usize>,
    pub groups: Vec<Vec<usize>>,
    pub selection: FaceSelection,
}

impl FaceSpec {
    /// One face of the family: the first generator of every group.
    pub fn representative(&self) -> Vec<usize> {
        self.groups.iter().map(|g| g[0]).collect()
    }

    /// Number of faces of the orthant in the family.
    pub fn face_count(&self) -> num_bigint::BigUint {
        let mut n = num_bigint::BigUint::from(1u32);
        for g in &self.groups {
            n *= match self.selection {
                FaceSelection::ExactlyOne => num_bigint::BigUint::from(g.len()),
                FaceSelection::AtLeastOne => {
                    (num_bigint::BigUint::from(1u32) << g.len()) - num_bigint::BigUint::from(1u32)
                }
            };
        }
        n
    }

    fn is_proper_subfamily_key(&self, other: &FaceSpec) -> bool {
        self.key.len() < other.key.len() && self.key.iter().all(|k| other.key.contains(k))
    }
}

fn is_relevant(cone: &Cone, phi: &Bunch) -> bool {
    phi.members.iter().any(|t| t.relint_within(cone))
}

/// Every F-face family with its projected cone.
fn face_families(v: &ValidatedInput) -> Result<Vec<(FaceSpec, Cone)>, GeometryError> {
    let mut out = BTreeSet::new();
    match v.mode() {
        Mode::Explicit => {
            for f in &v.input().f_faces {
                let mut key = f.clone();
                key.sort_unstable();
                key.dedup();
                let cone = v.project(&key);
                let spec = FaceSpec {
                    groups: key.iter().map(|&i| vec![i]).collect(),
                    key,
                    selection: FaceSelection::ExactlyOne,
                };
                out.insert((spec, cone));
            }
        }
        Mode::Suitable => {
            let classes = v.classes();
            let d = classes.len();
            if d > MAX_FACE_ENUMERATION {
                return Err(GeometryError::TooManyFaces(d));
            }
            for mask in 0u32..(1u32 << d) {
                let key: Vec<usize> = (0..d).filter(|c| mask & (1 << c) != 0).collect();
                let reps: Vec<usize> = key.iter().map(|&c| classes[c].indices[0]).collect();
                let cone = v.project(&reps);
                let spec = FaceSpec {
                    groups: key.iter().map(|&c| classes[c].indices.clone()).collect(),
                    key,
                    selection: FaceSelection::AtLeastOne,
                };
                out.insert((spec, cone));
            }
        }
    }
    Ok(out.into_iter().collect())
}

fn relevant_among(families: &[(FaceSpec, Cone)], phi: &Bunch) -> Vec<FaceSpec> {
    families
        .iter()
        .filter(|(_, cone)| is_relevant(cone, phi))
        .map(|(f, _)| f.clone())
        .collect()
}

/// `rlv(Φ)`: faces `γ₀` with `Q(γ₀)° ⊇ τ°` for some `τ ∈ Φ`.
pub fn relevant_faces(v: &ValidatedInput, phi: &Bunch) -> Result<Vec<FaceSpec>, GeometryError> {
    Ok(relevant_among(&face_families(v)?, phi))
}

/// `cov(Φ)`: the inclusion-minimal members of `rlv(Φ)`.
///
/// A minimal face meets each class of its family exactly once, since
/// dropping a duplicate keeps the projected cone.
pub fn covering_collection(rlv: &[FaceSpec]) -> Vec<FaceSpec> {
    rlv.iter()
        .filter(|f| !rlv.iter().any(|g| g.is_proper_subfamily_key(f)))
        .map(|f| FaceSpec {
            selection: FaceSelection::ExactlyOne,
            ..f.clone()
        })
        .collect()
}

/// Whether the degrees of every listed face generate `K`.
pub fn local_factoriality(v: &ValidatedInput, faces: &[FaceSpec]) -> bool {
    faces
        .iter()
        .all(|f| v.lattice_of(&f.representative()).index() == LatticeIndex::Finite(1u32.into()))
}

/// Whether every cone of the bunch is full-dimensional.
pub fn q_factoriality(phi: &Bunch, k: usize) -> bool {
    phi.members.iter().all(|t| t.dim() == k)
}

/// `Pic(X)` as the intersection of the lattices spanned by the covering faces.
pub fn picard_lattice(v: &ValidatedInput, cov: &[FaceSpec]) -> Sublattice {
    cov.iter()
        .map(|f| v.lattice_of(&f.representative()))
        .reduce(|a, b| a.intersect(&b).expect("same ambient rank"))
        .unwrap_or_else(|| Sublattice::full(v.rank()))
}

/// The semiample cone and, when the ample cone is nonempty, a point of it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AmpleCones {
    pub semiample: Cone,
    pub ample_sample: Option<IntVec>,
}

impl AmpleCones {
    pub fn ample_nonempty(&self) -> bool {
        self.ample_sample.is_some()
    }
}

pub fn ample_cones(phi: &Bunch, k: usize) -> AmpleCones {
    let semiample = phi
        .members
        .iter()
        .cloned()
        .reduce(|a, b| a.intersect(&b))
        .unwrap_or_else(|| Cone::full(k));
    // if the τ° meet at all, they meet in the relative interior of ∩ τ
    let p = semiample.relint_point();
    let ample_sample = phi.members.iter().all(|t| t.relint_contains(&p)).then_some(p);
    AmpleCones {
        semiample,
        ample_sample,
    }
}

#[derive(Clone, Debug)]
pub struct GeometryReport {
    pub bunch: Bunch,
    pub locally_factorial: bool,
    pub q_factorial: bool,
    /// Smoothness by the toric criterion; only set in suitable mode.
    pub smooth_toric_mode: Option<bool>,
    pub class_group_rank: usize,
    pub picard: Sublattice,
    pub semiample: Cone,
    pub ample_sample: Option<IntVec>,
    pub quasiprojective: bool,
    pub projective: bool,
    pub relevant_faces: Vec<FaceSpec>,
    pub covering: Vec<FaceSpec>,
}

impl GeometryReport {
    pub fn picard_rank(&self) -> usize {
        self.picard.rank()
    }

    pub fn picard_index(&self) -> LatticeIndex {
        self.picard.index()
    }
}

/// Local factoriality is checked over both `rlv(Φ)` and `cov(Φ)`; the two
/// must agree since lattices only grow along inclusions of faces.
pub fn geometry_report(
    v: &ValidatedInput,
    omega: &OrbitConeSet,
    c: &Collection,
) -> Result<GeometryReport, GeometryError> {
    report_with(v, omega, c, &face_families(v)?)
}

/// Reports for several collections, sharing the face enumeration.
pub fn geometry_reports(
    v: &ValidatedInput,
    omega: &OrbitConeSet,
    cs: &[Collection],
) -> Result<Vec<GeometryReport>, GeometryError> {
    let families = face_families(v)?;
    cs.iter().map(|c| report_with(v, omega, c, &families)).collect()
}

fn report_with(
    v: &ValidatedInput,
    omega: &OrbitConeSet,
    c: &Collection,
    families: &[(FaceSpec, Cone)],
) -> Result<GeometryReport, GeometryError> {
    if !c.interior || !c.two_maximal {
        return Err(GeometryError::NotAnEmbedding);
    }
    debug_assert!(c.indices.iter().all(|&i| i < omega.len()));
    let k = v.rank();
    let phi = bunch_from_collection(c);
    let rlv = relevant_among(families, &phi);
    let cov = covering_collection(&rlv);
    let locally_factorial = local_factoriality(v, &rlv);
    if locally_factorial != local_factoriality(v, &cov) {
        return Err(GeometryError::FactorialityMismatch);
    }
    let ample = ample_cones(&phi, k);
    Ok(GeometryReport {
        q_factorial: q_factoriality(&phi, k),
        smooth_toric_mode: (v.mode() == Mode::Suitable).then_some(locally_factorial),
        class_group_rank: k,
        picard: picard_lattice(v, &cov),
        semiample: ample.semiample,
        ample_sample: ample.ample_sample,
        quasiprojective: c.quasiprojective,
        projective: c.projective,
        locally_factorial,
        relevant_faces: rlv,
        covering: cov,
        bunch: phi,
    })
}
