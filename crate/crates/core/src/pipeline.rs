//! The full classification: orbit cones, GIT fan, collections, embeddings,
//! morphisms and geometry.

use thiserror::Error;

use crate::collections::{
    attach_witnesses, collection_from_bunch, interior_collections, morphism_poset, two_maximal_collections, Bunch, Collection,
    CollectionError, MorphismPoset, DEFAULT_MAX_OMEGA,
};
use crate::geometry::{geometry_reports, q_factoriality, GeometryError, GeometryReport};
use crate::git::{git_fan, GitError, GitFan};
use crate::grading::{is_pointed_grading, orbit_cones, validate, GradingError, GradingInput, OrbitConeSet, ValidatedInput};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PipelineError {
    #[error(transparent)]
    Grading(#[from] GradingError),
    #[error(transparent)]
    Git(#[from] GitError),
    #[error(transparent)]
    Collection(#[from] CollectionError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("{0}")]
    Input(String),
}

impl PipelineError {
    /// 2 for bad input, 3 for an exceeded cap, 4 for a failed internal check.
    pub fn exit_code(&self) -> i32 {
        match self {
            PipelineError::Grading(GradingError::TooManyDistinctDegrees { .. }) => 3,
            PipelineError::Grading(_) | PipelineError::Input(_) => 2,
            PipelineError::Collection(CollectionError::CapExceeded { .. }) => 3,
            PipelineError::Geometry(GeometryError::TooManyFaces(_)) => 3,
            _ => 4,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Options {
    pub max_omega: usize,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            max_omega: DEFAULT_MAX_OMEGA,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Classification {
    pub input: ValidatedInput,
    pub omega: OrbitConeSet,
    pub pointed: bool,
    pub fan: GitFan,
    /// All 2-maximal collections with their witnesses attached.
    pub collections: Vec<Collection>,
    /// Positions in `collections` of the interior ones, i.e. the embeddings.
    pub embeddings: Vec<usize>,
    /// Face relation on the embeddings; node `i` is `collections[embeddings[i]]`.
    pub poset: MorphismPoset,
    /// Geometry per embedding, aligned with `embeddings`.
    pub reports: Vec<GeometryReport>,
}

impl Classification {
    pub fn embedding(&self, i: usize) -> &Collection {
        &self.collections[self.embeddings[i]]
    }

    pub fn collection_index(&self, c: &Collection) -> Option<usize> {
        self.collections.iter().position(|d| d.indices == c.indices)
    }
}

/// Orbit cones, GIT fan and all 2-maximal collections with witnesses.
pub fn collections_stage(
    v: &ValidatedInput,
    opts: Options,
) -> Result<(OrbitConeSet, GitFan, Vec<Collection>, bool), PipelineError> {
    let omega = orbit_cones(v)?;
    let pointed = is_pointed_grading(v, &omega);
    let fan = git_fan(&omega)?;
    let mut collections = two_maximal_collections(&omega, opts.max_omega)?;
    attach_witnesses(&mut collections, &fan, &omega, pointed);
    Ok((omega, fan, collections, pointed))
}

pub fn classify(input: &GradingInput, opts: Options) -> Result<Classification, PipelineError> {
    let v = validate(input)?;
    let (omega, fan, collections, pointed) = collections_stage(&v, opts)?;
    let embeddings: Vec<usize> = (0..collections.len()).filter(|&i| collections[i].interior).collect();
    let interior = interior_collections(&collections);
    let poset = morphism_poset(&interior)?;
    let reports = geometry_reports(&v, &omega, &interior)?;
    Ok(Classification {
        input: v,
        omega,
        pointed,
        fan,
        collections,
        embeddings,
        poset,
        reports,
    })
}

/// What a user-supplied bunch turns into.
#[derive(Clone, Debug)]
pub struct BunchAssessment {
    pub name: String,
    pub bunch: Bunch,
    pub violations: Vec<String>,
    /// Position of the induced collection among all 2-maximal collections.
    pub collection: Option<usize>,
    /// Why no collection was induced.
    pub error: Option<String>,
    pub interior: bool,
    pub quasiprojective: bool,
    pub q_factorial: bool,
}

impl BunchAssessment {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty() && self.collection.is_some()
    }
}

pub fn assess_bunch(cl: &Classification, name: &str, bunch: Bunch) -> BunchAssessment {
    let violations = bunch.violations(&cl.input, &cl.omega);
    let q_factorial = q_factoriality(&bunch, cl.input.rank());
    let (collection, error) = match collection_from_bunch(&bunch, &cl.omega) {
        Ok(c) => (cl.collection_index(&c), None),
        Err(e) => (None, Some(e.to_string())),
    };
    let (interior, quasiprojective) = collection
        .map(|i| (cl.collections[i].interior, cl.collections[i].quasiprojective))
        .unwrap_or((false, false));
    BunchAssessment {
        name: name.to_string(),
        bunch,
        violations,
        collection,
        error,
        interior,
        quasiprojective,
        q_factorial,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cone::Cone;

    #[test]
    fn smoothemb_pipeline() {
        let input = GradingInput::suitable_replicated(2, &[&[1, 0], &[1, 1], &[0, 1]], 4);
        let cl = classify(&input, Options::default()).unwrap();
        assert_eq!(cl.embeddings.len(), 3);
        assert!(cl.embeddings.iter().all(|&i| cl.collections[i].projective));
        assert_eq!(cl.poset.morphisms().len(), 2);
        let ray = Cone::from_i64(2, &[&[1, 1]]);
        let x0 = (0..3).find(|&i| cl.embedding(i).contains(&ray)).unwrap();
        assert!(cl.poset.morphisms().iter().all(|&(_, t)| t == x0));
        assert!(!cl.reports[x0].q_factorial);
        assert_eq!(cl.reports[x0].picard_rank(), 1);
    }

    #[test]
    fn exit_codes() {
        let bad = GradingInput::suitable_replicated(2, &[&[1, 0]], 2);
        let err = classify(&bad, Options::default()).unwrap_err();
        assert_eq!(err.exit_code(), 2);
        let input = GradingInput::suitable_replicated(2, &[&[1, 0], &[1, 1], &[0, 1]], 1);
        let err = classify(&input, Options { max_omega: 2 }).unwrap_err();
        assert_eq!(err.exit_code(), 3);
    }
}
