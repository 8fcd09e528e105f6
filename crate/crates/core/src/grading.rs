//! The input data: a lattice grading given by generator degrees, together with
//! the admissible faces of the positive orthant, and the set of orbit cones
//! it determines.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use thiserror::Error;

use crate::cone::Cone;
use crate::lattice::{generates_full_lattice, is_zero_vec, IntMatrix, IntVec, Sublattice};

/// Subset enumeration in suitable mode is exponential in the number of
/// distinct degrees; refuse beyond this.
pub const MAX_DISTINCT_DEGREES: usize = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    /// Every subset of generators spans an orbit cone.
    Suitable,
    /// The admissible faces are listed explicitly.
    Explicit,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub degree: IntVec,
}

/// Projected cone data: generator degrees in `K = Z^k` plus the face mode.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradingInput {
    pub lattice_rank: usize,
    pub generators: Vec<Generator>,
    pub mode: Mode,
    /// Admissible faces as 0-based index sets (explicit mode only).
    pub f_faces: Vec<Vec<usize>>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GradingError {
    #[error("lattice rank must be at least 1")]
    ZeroRank,
    #[error("at least one generator is required")]
    NoGenerators,
    #[error("generator {name}: degree has length {found}, expected {expected}")]
    DegreeLength {
        name: String,
        expected: usize,
        found: usize,
    },
    #[error("degrees do not generate the lattice Z^{rank} (sublattice index {index})")]
    NotFaithful { rank: usize, index: String },
    #[error("explicit mode requires an f_faces list")]
    MissingFFaces,
    #[error("f_faces given in suitable mode")]
    UnexpectedFFaces,
    #[error("f_face {face} refers to generator {index}, but there are only {count}")]
    FFaceIndex {
        face: usize,
        index: usize,
        count: usize,
    },
    #[error("f_faces must contain the empty face")]
    MissingEmptyFace,
    #[error("f_faces must contain the full face")]
    MissingFullFace,
    #[error("{count} distinct degrees exceed the enumeration cap of {cap}")]
    TooManyDistinctDegrees { count: usize, cap: usize },
}

impl GradingInput {
    pub fn suitable(lattice_rank: usize, degrees: &[(&str, &[i64])]) -> Self {
        GradingInput {
            lattice_rank,
            generators: degrees
                .iter()
                .map(|(n, d)| Generator {
                    name: n.to_string(),
                    degree: crate::lattice::int_vec(d),
                })
                .collect(),
            mode: Mode::Suitable,
            f_faces: Vec::new(),
        }
    }

    /// Suitable-mode input where each degree is repeated `mult` times; the
    /// generators are named `f1, f2, ...`.
    pub fn suitable_replicated(lattice_rank: usize, degrees: &[&[i64]], mult: usize) -> Self {
        let mut generators = Vec::new();
        for d in degrees {
            for _ in 0..mult {
                generators.push(Generator {
                    name: format!("f{}", generators.len() + 1),
                    degree: crate::lattice::int_vec(d),
                });
            }
        }
        GradingInput {
            lattice_rank,
            generators,
            mode: Mode::Suitable,
            f_faces: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn degree(&self, i: usize) -> &IntVec {
        &self.generators[i].degree
    }

    /// The `k x r` matrix whose columns are the degrees.
    pub fn degree_matrix(&self) -> IntMatrix {
        let rows: Vec<IntVec> = self.generators.iter().map(|g| g.degree.clone()).collect();
        IntMatrix::from_rows(self.lattice_rank, &rows)
            .expect("degree lengths are checked on validation")
            .transpose()
    }

    fn check_shape(&self) -> Result<(), GradingError> {
        if self.lattice_rank == 0 {
            return Err(GradingError::ZeroRank);
        }
        if self.generators.is_empty() {
            return Err(GradingError::NoGenerators);
        }
        for g in &self.generators {
            if g.degree.len() != self.lattice_rank {
                return Err(GradingError::DegreeLength {
                    name: g.name.clone(),
                    expected: self.lattice_rank,
                    found: g.degree.len(),
                });
            }
        }
        Ok(())
    }
}

/// Generators sharing one degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeClass {
    pub degree: IntVec,
    pub indices: Vec<usize>,
}

/// Outcome of the facet condition for the facet obtained by dropping one
/// generator: do the remaining degrees still generate `K`?
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacetCheck {
    pub dropped: usize,
    pub generates: bool,
}

/// Facet condition per dropped generator. Only the shape of the input is
/// required, not faithfulness.
pub fn facet_checks(input: &GradingInput) -> Result<Vec<FacetCheck>, GradingError> {
    input.check_shape()?;
    let classes = group_degrees(input);
    // dropping an index only matters when its class is a singleton
    let all: Vec<IntVec> = classes.iter().map(|c| c.degree.clone()).collect();
    let full = generates_full_lattice(&all, input.lattice_rank).expect("shape checked");
    let mut per_class = Vec::with_capacity(classes.len());
    for (ci, c) in classes.iter().enumerate() {
        if c.indices.len() > 1 {
            per_class.push(full);
        } else {
            let rest: Vec<IntVec> = all
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != ci)
                .map(|(_, d)| d.clone())
                .collect();
            per_class.push(generates_full_lattice(&rest, input.lattice_rank).expect("shape checked"));
        }
    }
    let mut out = vec![
        FacetCheck {
            dropped: 0,
            generates: false
        };
        input.len()
    ];
    for (ci, c) in classes.iter().enumerate() {
        for &i in &c.indices {
            out[i] = FacetCheck {
                dropped: i,
                generates: per_class[ci],
            };
        }
    }
    Ok(out)
}

fn group_degrees(input: &GradingInput) -> Vec<DegreeClass> {
    let mut map: BTreeMap<IntVec, Vec<usize>> = BTreeMap::new();
    for (i, g) in input.generators.iter().enumerate() {
        map.entry(g.degree.clone()).or_default().push(i);
    }
    let mut classes: Vec<DegreeClass> = map
        .into_iter()
        .map(|(degree, indices)| DegreeClass { degree, indices })
        .collect();
    // order classes by first occurrence so that class ids follow the input
    classes.sort_by_key(|c| c.indices[0]);
    classes
}

/// An input that passed validation, with its degree classes and facet report.
#[derive(Clone, Debug)]
pub struct ValidatedInput {
    input: GradingInput,
    classes: Vec<DegreeClass>,
    class_of: Vec<usize>,
    facets: Vec<FacetCheck>,
}

impl ValidatedInput {
    pub fn input(&self) -> &GradingInput {
        &self.input
    }

    pub fn rank(&self) -> usize {
        self.input.lattice_rank
    }

    pub fn mode(&self) -> Mode {
        self.input.mode
    }

    pub fn classes(&self) -> &[DegreeClass] {
        &self.classes
    }

    pub fn class_of(&self, i: usize) -> usize {
        self.class_of[i]
    }

    pub fn facets(&self) -> &[FacetCheck] {
        &self.facets
    }

    pub fn facet_condition_holds(&self) -> bool {
        self.facets.iter().all(|f| f.generates)
    }

    pub fn failing_facets(&self) -> Vec<usize> {
        self.facets.iter().filter(|f| !f.generates).map(|f| f.dropped).collect()
    }

    /// The cone generated by the degrees of the given generators.
    pub fn project(&self, indices: &[usize]) -> Cone {
        let rays: Vec<IntVec> = indices.iter().map(|&i| self.input.degree(i).clone()).collect();
        Cone::from_generators(self.rank(), &rays)
    }

    /// The lattice generated by the degrees of the given generators.
    pub fn lattice_of(&self, indices: &[usize]) -> Sublattice {
        let gens: Vec<IntVec> = indices.iter().map(|&i| self.input.degree(i).clone()).collect();
        Sublattice::from_generators(self.rank(), &gens).expect("degree lengths checked")
    }

    /// Facet cones: the projection with generator `i` removed.
    pub fn facet_cone(&self, dropped: usize) -> Cone {
        let rest: Vec<usize> = (0..self.input.len()).filter(|&j| j != dropped).collect();
        self.project(&rest)
    }
}

/// Checks the structural invariants and faithfulness, and records the facet
/// condition per dropped generator.
///
/// Failing facets are reported in the result, not as an error: downstream
/// combinatorics is still well defined without them.
pub fn validate(input: &GradingInput) -> Result<ValidatedInput, GradingError> {
    input.check_shape()?;
    let r = input.len();
    match input.mode {
        Mode::Suitable => {
            if !input.f_faces.is_empty() {
                return Err(GradingError::UnexpectedFFaces);
            }
        }
        Mode::Explicit => {
            if input.f_faces.is_empty() {
                return Err(GradingError::MissingFFaces);
            }
            for (fi, face) in input.f_faces.iter().enumerate() {
                if let Some(&bad) = face.iter().find(|&&i| i >= r) {
                    return Err(GradingError::FFaceIndex {
                        face: fi,
                        index: bad + 1,
                        count: r,
                    });
                }
            }
            let sets: Vec<BTreeSet<usize>> = input
                .f_faces
                .iter()
                .map(|f| f.iter().copied().collect())
                .collect();
            if !sets.iter().any(|s| s.is_empty()) {
                return Err(GradingError::MissingEmptyFace);
            }
            if !sets.iter().any(|s| s.len() == r) {
                return Err(GradingError::MissingFullFace);
            }
        }
    }
    let degrees: Vec<IntVec> = input.generators.iter().map(|g| g.degree.clone()).collect();
    let lattice = Sublattice::from_generators(input.lattice_rank, &degrees).expect("shape checked");
    if !generates_full_lattice(&degrees, input.lattice_rank).expect("shape checked") {
        return Err(GradingError::NotFaithful {
            rank: input.lattice_rank,
            index: lattice.index().to_string(),
        });
    }
    let classes = group_degrees(input);
    if input.mode == Mode::Suitable && classes.len() > MAX_DISTINCT_DEGREES {
        return Err(GradingError::TooManyDistinctDegrees {
            count: classes.len(),
            cap: MAX_DISTINCT_DEGREES,
        });
    }
    let mut class_of = vec![0; r];
    for (ci, c) in classes.iter().enumerate() {
        for &i in &c.indices {
            class_of[i] = ci;
        }
    }
    let facets = facet_checks(input)?;
    Ok(ValidatedInput {
        input: input.clone(),
        classes,
        class_of,
        facets,
    })
}

/// The finite set of orbit cones, the generic one distinguished.
#[derive(Clone, Debug)]
pub struct OrbitConeSet {
    rank: usize,
    cones: Vec<Cone>,
    generic: usize,
    witnesses: Vec<Vec<usize>>,
    warnings: Vec<String>,
}

impl OrbitConeSet {
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn len(&self) -> usize {
        self.cones.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cones.is_empty()
    }

    /// Orbit cones in canonical order.
    pub fn cones(&self) -> &[Cone] {
        &self.cones
    }

    pub fn cone(&self, i: usize) -> &Cone {
        &self.cones[i]
    }

    pub fn generic(&self) -> &Cone {
        &self.cones[self.generic]
    }

    pub fn generic_index(&self) -> usize {
        self.generic
    }

    pub fn index_of(&self, c: &Cone) -> Option<usize> {
        self.cones.binary_search(c).ok()
    }

    /// A face of the orthant (0-based generator indices) projecting onto the
    /// `i`-th cone.
    pub fn witness(&self, i: usize) -> &[usize] {
        &self.witnesses[i]
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    /// Builds a set from explicit cones; the generic cone must be among them.
    pub fn from_cones(rank: usize, cones: Vec<(Cone, Vec<usize>)>, generic: &Cone) -> Self {
        let mut map: BTreeMap<Cone, Vec<usize>> = BTreeMap::new();
        for (c, w) in cones {
            map.entry(c).or_insert(w);
        }
        let (cones, witnesses): (Vec<Cone>, Vec<Vec<usize>>) = map.into_iter().unzip();
        let generic = cones.binary_search(generic).expect("generic cone is an orbit cone");
        let mut warnings = Vec::new();
        let set: BTreeSet<&Cone> = cones.iter().collect();
        for c in &cones {
            for f in c.faces() {
                if !set.contains(&f) {
                    warnings.push(format!("orbit cone {c} has face {f} that is not an orbit cone"));
                }
            }
        }
        OrbitConeSet {
            rank,
            cones,
            generic,
            witnesses,
            warnings,
        }
    }
}

/// All orbit cones of the grading.
///
/// In suitable mode these are the cones spanned by arbitrary subsets of the
/// degrees. Subsets are explored through their closures (all degrees lying in
/// the spanned cone), so each distinct cone is built only a few times.
pub fn orbit_cones(v: &ValidatedInput) -> Result<OrbitConeSet, GradingError> {
    let k = v.rank();
    let generic = v.project(&(0..v.input().len()).collect::<Vec<_>>());
    match v.mode() {
        Mode::Explicit => {
            let cones = v
                .input()
                .f_faces
                .iter()
                .map(|f| {
                    let mut w = f.clone();
                    w.sort_unstable();
                    w.dedup();
                    (v.project(&w), w)
                })
                .collect();
            Ok(OrbitConeSet::from_cones(k, cones, &generic))
        }
        Mode::Suitable => {
            let classes = v.classes();
            let d = classes.len();
            if d > MAX_DISTINCT_DEGREES {
                return Err(GradingError::TooManyDistinctDegrees {
                    count: d,
                    cap: MAX_DISTINCT_DEGREES,
                });
            }
            let closure = |set: u32| -> (u32, Cone) {
                let rays: Vec<IntVec> = (0..d)
                    .filter(|c| set & (1 << c) != 0)
                    .map(|c| classes[c].degree.clone())
                    .collect();
                let cone = Cone::from_generators(k, &rays);
                let closed = (0..d)
                    .filter(|&c| cone.contains(&classes[c].degree))
                    .fold(0u32, |acc, c| acc | (1 << c));
                (closed, cone)
            };
            let mut seen: BTreeMap<u32, Cone> = BTreeMap::new();
            let mut queue = VecDeque::new();
            let (s0, c0) = closure(0);
            seen.insert(s0, c0);
            queue.push_back(s0);
            while let Some(s) = queue.pop_front() {
                for c in 0..d {
                    if s & (1 << c) != 0 {
                        continue;
                    }
                    let (t, cone) = closure(s | (1 << c));
                    if let std::collections::btree_map::Entry::Vacant(e) = seen.entry(t) {
                        e.insert(cone);
                        queue.push_back(t);
                    }
                }
            }
            let cones = seen
                .into_iter()
                .map(|(s, cone)| {
                    let mut w: Vec<usize> = (0..d)
                        .filter(|c| s & (1 << c) != 0)
                        .flat_map(|c| classes[c].indices.iter().copied())
                        .collect();
                    w.sort_unstable();
                    (cone, w)
                })
                .collect();
            Ok(OrbitConeSet::from_cones(k, cones, &generic))
        }
    }
}

/// True iff the weight cone is pointed and no degree is zero.
pub fn is_pointed_grading(v: &ValidatedInput, omega: &OrbitConeSet) -> bool {
    omega.generic().is_pointed() && v.input().generators.iter().all(|g| !is_zero_vec(&g.degree))
}
