//! 2-maximal collections of orbit cones, the bunch dictionary and the
//! morphism poset between the resulting embeddings.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::cone::Cone;
use crate::git::GitFan;
use crate::grading::{OrbitConeSet, ValidatedInput};

pub const DEFAULT_MAX_OMEGA: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CollectionError {
    #[error("{size} orbit cones exceed the configured cap of {cap}")]
    CapExceeded { size: usize, cap: usize },
    #[error("cone {0} is not an orbit cone")]
    NotAnOrbitCone(String),
    #[error("the bunch induces a collection that is not 2-maximal: {0}")]
    NotTwoMaximal(String),
    #[error("face relation is not antisymmetric between collections {0} and {1}")]
    NotAntisymmetric(usize, usize),
}

/// A set of orbit cones with its flags.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Collection {
    /// Indices into the orbit cone set, ascending.
    pub indices: Vec<usize>,
    /// The member cones, in the same order as `indices`.
    pub members: Vec<Cone>,
    pub two_connected: bool,
    pub two_maximal: bool,
    pub interior: bool,
    pub quasiprojective: bool,
    pub projective: bool,
    /// A GIT cone `κ` with `Ψ_κ` equal to this collection.
    pub git_witness: Option<Cone>,
}

impl Collection {
    /// Builds a collection from orbit cone indices and computes the
    /// combinatorial flags. The projectivity flags stay unset until
    /// [`Collection::attach_witness`] is called.
    pub fn from_indices(omega: &OrbitConeSet, indices: impl IntoIterator<Item = usize>) -> Self {
        let indices: Vec<usize> = indices.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        let members: Vec<Cone> = indices.iter().map(|&i| omega.cone(i).clone()).collect();
        let two_connected = members
            .iter()
            .enumerate()
            .all(|(i, a)| members[i + 1..].iter().all(|b| a.relints_intersect(b)));
        let two_maximal = two_connected
            && (0..omega.len())
                .filter(|i| !indices.contains(i))
                .all(|i| !members.iter().all(|m| m.relints_intersect(omega.cone(i))));
        let interior = indices.contains(&omega.generic_index());
        Collection {
            indices,
            members,
            two_connected,
            two_maximal,
            interior,
            quasiprojective: false,
            projective: false,
            git_witness: None,
        }
    }

    /// A maximal clique of the overlap graph: 2-connected and 2-maximal by
    /// construction.
    fn from_clique(omega: &OrbitConeSet, indices: Vec<usize>) -> Self {
        Collection {
            members: indices.iter().map(|&i| omega.cone(i).clone()).collect(),
            interior: indices.contains(&omega.generic_index()),
            indices,
            two_connected: true,
            two_maximal: true,
            quasiprojective: false,
            projective: false,
            git_witness: None,
        }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, c: &Cone) -> bool {
        self.members.binary_search(c).is_ok()
    }

    /// Looks up a GIT witness in `fan` and sets the projectivity flags.
    /// `pointed` says whether the grading is pointed.
    pub fn attach_witness(&mut self, fan: &GitFan, omega: &OrbitConeSet, pointed: bool) {
        let (_, w) = is_quasiprojective(self, fan, omega);
        self.set_witness(w, pointed);
    }

    fn set_witness(&mut self, w: Option<Cone>, pointed: bool) {
        self.quasiprojective = w.is_some();
        self.projective = self.quasiprojective && pointed;
        self.git_witness = w;
    }
}

impl fmt::Display for Collection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<String> = self.members.iter().map(|c| c.label()).collect();
        write!(f, "{{{}}}", labels.join(", "))
    }
}

/// The relative-interior overlap graph on the orbit cones.
#[derive(Clone, Debug)]
pub struct OverlapGraph {
    adjacency: Vec<Vec<bool>>,
}

impl OverlapGraph {
    pub fn len(&self) -> usize {
        self.adjacency.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adjacency.is_empty()
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        i != j && self.adjacency[i][j]
    }

    pub fn neighbours(&self, i: usize) -> Vec<usize> {
        (0..self.len()).filter(|&j| self.adjacent(i, j)).collect()
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter(|&(i, j)| self.adjacency[i][j])
            .collect()
    }
}

pub fn overlap_graph(omega: &OrbitConeSet) -> OverlapGraph {
    let n = omega.len();
    let mut adjacency = vec![vec![false; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let e = omega.cone(i).relints_intersect(omega.cone(j));
            adjacency[i][j] = e;
            adjacency[j][i] = e;
        }
    }
    OverlapGraph { adjacency }
}

fn bron_kerbosch(
    g: &OverlapGraph,
    r: &mut Vec<usize>,
    p: Vec<usize>,
    mut x: Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if p.is_empty() {
        if x.is_empty() {
            let mut clique = r.clone();
            clique.sort_unstable();
            out.push(clique);
        }
        return;
    }
    let pivot = p
        .iter()
        .chain(x.iter())
        .copied()
        .max_by_key(|&u| p.iter().filter(|&&v| g.adjacent(u, v)).count())
        .expect("p is nonempty");
    let candidates: Vec<usize> = p.iter().copied().filter(|&v| !g.adjacent(pivot, v)).collect();
    let mut p = p;
    for v in candidates {
        let np = p.iter().copied().filter(|&w| g.adjacent(v, w)).collect();
        let nx = x.iter().copied().filter(|&w| g.adjacent(v, w)).collect();
        r.push(v);
        bron_kerbosch(g, r, np, nx, out);
        r.pop();
        p.retain(|&w| w != v);
        x.push(v);
    }
}

/// All 2-maximal collections, i.e. the maximal cliques of the overlap graph,
/// sorted by their member index lists.
pub fn two_maximal_collections(omega: &OrbitConeSet, cap: usize) -> Result<Vec<Collection>, CollectionError> {
    if omega.len() > cap {
        return Err(CollectionError::CapExceeded {
            size: omega.len(),
            cap,
        });
    }
    let g = overlap_graph(omega);
    let mut cliques = Vec::new();
    bron_kerbosch(&g, &mut Vec::new(), (0..omega.len()).collect(), Vec::new(), &mut cliques);
    cliques.sort();
    Ok(cliques
        .into_iter()
        .map(|c| Collection::from_clique(omega, c))
        .collect())
}

/// Sets the witness and projectivity flags of every collection, computing
/// `Ψ_κ` once per GIT cone.
pub fn attach_witnesses(cs: &mut [Collection], fan: &GitFan, omega: &OrbitConeSet, pointed: bool) {
    let mut by_members: std::collections::BTreeMap<Vec<usize>, Cone> = std::collections::BTreeMap::new();
    for k in fan.cones() {
        let idx: Vec<usize> = (0..omega.len()).filter(|&i| k.relint_within(omega.cone(i))).collect();
        by_members.entry(idx).or_insert_with(|| k.clone());
    }
    for c in cs {
        let w = by_members.get(&c.indices).cloned();
        c.set_witness(w, pointed);
    }
}

pub fn interior_collections(all: &[Collection]) -> Vec<Collection> {
    all.iter().filter(|c| c.interior).cloned().collect()
}

/// `Ψ_κ = {ω : κ° ⊆ ω°}`.
pub fn psi_from_git_cone(omega: &OrbitConeSet, kappa: &Cone) -> Collection {
    Collection::from_indices(
        omega,
        (0..omega.len()).filter(|&i| kappa.relint_within(omega.cone(i))),
    )
}

/// Whether `c` is `Ψ_κ` for some GIT cone `κ`, with the witness.
pub fn is_quasiprojective(c: &Collection, fan: &GitFan, omega: &OrbitConeSet) -> (bool, Option<Cone>) {
    // κ° ⊆ ω° for all members forces κ ⊆ ∩ members, so only few cones qualify
    let witness = fan
        .cones()
        .iter()
        .filter(|k| c.members.iter().all(|m| k.relint_within(m)))
        .find(|k| psi_from_git_cone(omega, k).indices == c.indices)
        .cloned();
    (witness.is_some(), witness)
}

/// `a ⪯ b`: every member of `b` has a face in `a`.
pub fn face_relation(a: &Collection, b: &Collection) -> bool {
    b.members
        .iter()
        .all(|w2| a.members.iter().any(|w1| w1.is_face_of(w2)))
}

/// The face relation on a list of collections.
///
/// A pair `(i, j)` in `relation` means `Ψ_i ⪯ Ψ_j`, which corresponds to a
/// morphism `X_j → X_i` of the embeddings.
#[derive(Clone, Debug)]
pub struct MorphismPoset {
    pub nodes: Vec<Collection>,
    /// All related pairs, reflexive ones included.
    pub relation: Vec<(usize, usize)>,
    /// Covering pairs of the relation.
    pub hasse: Vec<(usize, usize)>,
}

impl MorphismPoset {
    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.relation.binary_search(&(i, j)).is_ok()
    }

    /// Variety-level arrows `(source, target)` of the Hasse diagram.
    pub fn morphisms(&self) -> Vec<(usize, usize)> {
        self.hasse.iter().map(|&(i, j)| (j, i)).collect()
    }
}

/// The collections must come from one orbit cone set: face tests between
/// members are cached by orbit cone index.
pub fn morphism_poset(cs: &[Collection]) -> Result<MorphismPoset, CollectionError> {
    let n = cs.len();
    let mut memo: std::collections::HashMap<(usize, usize), bool> = std::collections::HashMap::new();
    let mut is_face = |a: &Collection, x: usize, b: &Collection, y: usize| -> bool {
        *memo
            .entry((a.indices[x], b.indices[y]))
            .or_insert_with(|| a.members[x].is_face_of(&b.members[y]))
    };
    let mut relation = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let (a, b) = (&cs[i], &cs[j]);
            let related = i == j || (0..b.len()).all(|y| (0..a.len()).any(|x| is_face(a, x, b, y)));
            if related {
                relation.push((i, j));
            }
        }
    }
    let leq = |i: usize, j: usize| relation.binary_search(&(i, j)).is_ok();
    for &(i, j) in &relation {
        if i < j && leq(j, i) {
            return Err(CollectionError::NotAntisymmetric(i, j));
        }
    }
    let hasse = relation
        .iter()
        .copied()
        .filter(|&(i, j)| i != j && !(0..n).any(|m| m != i && m != j && leq(i, m) && leq(m, j)))
        .collect();
    Ok(MorphismPoset {
        nodes: cs.to_vec(),
        relation,
        hasse,
    })
}

/// A bunch: a set of projected faces, stored in canonical order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Bunch {
    pub members: Vec<Cone>,
}

impl Bunch {
    pub fn new(members: impl IntoIterator<Item = Cone>) -> Self {
        Bunch {
            members: members.into_iter().collect::<BTreeSet<_>>().into_iter().collect(),
        }
    }

    /// Checks the bunch conditions against the orbit cones and returns a
    /// description of each violation.
    pub fn violations(&self, v: &ValidatedInput, omega: &OrbitConeSet) -> Vec<String> {
        let mut out = Vec::new();
        if self.members.is_empty() {
            out.push("bunch is empty".to_string());
        }
        for m in &self.members {
            if omega.index_of(m).is_none() {
                out.push(format!("{m} is not an orbit cone"));
            }
        }
        // τ ∈ Φ iff ∅ ≠ τ° ∩ σ° ≠ σ° for every other σ ∈ Φ
        let compatible = |t: &Cone, s: &Cone| t.relints_intersect(s) && !s.relint_within(t);
        for (i, t) in self.members.iter().enumerate() {
            for s in &self.members[i + 1..] {
                if !compatible(t, s) || !compatible(s, t) {
                    out.push(format!("members {t} and {s} are incompatible"));
                }
            }
        }
        for t in omega.cones() {
            if self.members.contains(t) {
                continue;
            }
            if self.members.iter().all(|s| compatible(t, s)) {
                out.push(format!("orbit cone {t} could be added"));
            }
        }
        for f in v.facets() {
            let q = v.facet_cone(f.dropped);
            if !self.members.iter().any(|t| t.relint_within(&q)) {
                out.push(format!(
                    "no member lies in the relative interior of the facet image {q} (generator {} dropped)",
                    v.input().generators[f.dropped].name
                ));
            }
        }
        out
    }
}

impl fmt::Display for Bunch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<String> = self.members.iter().map(|c| c.label()).collect();
        write!(f, "{{{}}}", labels.join(", "))
    }
}

/// The inclusion-minimal members of a collection.
pub fn bunch_from_collection(c: &Collection) -> Bunch {
    Bunch::new(
        c.members
            .iter()
            .filter(|a| !c.members.iter().any(|b| b != *a && a.contains_cone(b)))
            .cloned(),
    )
}

/// `{ω : τ° ⊆ ω° for some τ ∈ Φ}`, required to be 2-maximal.
pub fn collection_from_bunch(b: &Bunch, omega: &OrbitConeSet) -> Result<Collection, CollectionError> {
    for m in &b.members {
        if omega.index_of(m).is_none() {
            return Err(CollectionError::NotAnOrbitCone(m.to_string()));
        }
    }
    let c = Collection::from_indices(
        omega,
        (0..omega.len()).filter(|&i| b.members.iter().any(|t| t.relint_within(omega.cone(i)))),
    );
    if !c.two_maximal {
        return Err(CollectionError::NotTwoMaximal(c.to_string()));
    }
    Ok(c)
}
