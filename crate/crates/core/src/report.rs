//! Reports: JSON (stable key order), plain text and DOT.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;
use serde_json::Value;

use crate::collections::{overlap_graph, Collection, MorphismPoset};
use crate::cone::Cone;
use crate::geometry::{FaceSelection, FaceSpec, GeometryReport};
use crate::git::GitFan;
use crate::grading::{OrbitConeSet, ValidatedInput};
use crate::io::{InputDocument, SCHEMA_VERSION};
use crate::lattice::{IntVec, LatticeIndex};
use crate::pipeline::{BunchAssessment, Classification};

pub const TOOL: &str = "conequot";

fn int(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(i) => Value::from(i),
        None => Value::from(x.to_string()),
    }
}

fn vector(v: &[BigInt]) -> Vec<Value> {
    v.iter().map(int).collect()
}

fn vectors(vs: &[IntVec]) -> Vec<Vec<Value>> {
    vs.iter().map(|v| vector(v)).collect()
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct ConeJson {
    pub label: String,
    pub dim: usize,
    pub rays: Vec<Vec<Value>>,
    pub lineality: Vec<Vec<Value>>,
    pub facets: Vec<Vec<Value>>,
    pub equations: Vec<Vec<Value>>,
}

impl From<&Cone> for ConeJson {
    fn from(c: &Cone) -> Self {
        ConeJson {
            label: c.label(),
            dim: c.dim(),
            rays: vectors(c.rays()),
            lineality: vectors(c.lineality()),
            facets: vectors(c.facets()),
            equations: vectors(c.equations()),
        }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct ValidationJson {
    pub faithful: bool,
    pub facet_condition: bool,
    /// Generators whose removal leaves degrees not generating the lattice.
    pub failing_facets: Vec<String>,
    pub distinct_degrees: usize,
    pub warnings: Vec<String>,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct OrbitConeJson {
    pub id: usize,
    pub cone: ConeJson,
    pub generic: bool,
    /// Generators spanning an orthant face that projects onto the cone.
    pub face: Vec<String>,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct GitConeJson {
    pub id: usize,
    pub cone: ConeJson,
    pub chamber: bool,
    pub interior: bool,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct CollectionJson {
    pub id: usize,
    pub members: Vec<usize>,
    pub labels: Vec<String>,
    pub two_connected: bool,
    pub two_maximal: bool,
    pub interior: bool,
    pub quasiprojective: bool,
    pub projective: bool,
    pub git_witness: Option<String>,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct FaceJson {
    pub degrees: Vec<Vec<Value>>,
    pub generators: Vec<Vec<String>>,
    pub choose: &'static str,
    pub faces: Value,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct PicardJson {
    pub rank: usize,
    pub index: Value,
    pub basis: Vec<Vec<Value>>,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct EmbeddingJson {
    pub name: String,
    pub collection: usize,
    pub bunch: Vec<String>,
    pub locally_factorial: bool,
    pub q_factorial: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub smooth: Option<SmoothJson>,
    pub class_group_rank: usize,
    pub picard: PicardJson,
    pub semiample: ConeJson,
    pub ample_nonempty: bool,
    pub ample_sample: Option<Vec<Value>>,
    pub quasiprojective: bool,
    pub projective: bool,
    pub relevant_faces: Vec<FaceJson>,
    pub covering: Vec<FaceJson>,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct SmoothJson {
    pub value: bool,
    pub criterion: &'static str,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct ArrowJson {
    pub from: String,
    pub to: String,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct MorphismsJson {
    /// Pairs `[a, b]` with `Ψ_a ⪯ Ψ_b`, by embedding name.
    pub face_relation: Vec<[String; 2]>,
    /// Hasse diagram as morphisms of embeddings.
    pub arrows: Vec<ArrowJson>,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct DeclaredBunchJson {
    pub name: String,
    pub members: Vec<String>,
    pub valid: bool,
    pub violations: Vec<String>,
    pub collection: Option<usize>,
    pub error: Option<String>,
    pub interior: bool,
    pub quasiprojective: bool,
    pub q_factorial: bool,
}

/// Every verb fills the sections it computes; the others are omitted.
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct Report {
    pub tool: &'static str,
    pub schema_version: &'static str,
    pub command: &'static str,
    pub input: InputDocument,
    pub validation: ValidationJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pointed: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub orbit_cones: Option<Vec<OrbitConeJson>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub git_fan: Option<Vec<GitConeJson>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub overlap_edges: Option<Vec<[usize; 2]>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub collections: Option<Vec<CollectionJson>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub embeddings: Option<Vec<EmbeddingJson>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub morphisms: Option<MorphismsJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub declared_bunches: Option<Vec<DeclaredBunchJson>>,
}

pub fn validation_json(v: &ValidatedInput, warnings: &[String]) -> ValidationJson {
    ValidationJson {
        faithful: true,
        facet_condition: v.facet_condition_holds(),
        failing_facets: v
            .failing_facets()
            .into_iter()
            .map(|i| v.input().generators[i].name.clone())
            .collect(),
        distinct_degrees: v.classes().len(),
        warnings: warnings.to_vec(),
    }
}

fn names(v: &ValidatedInput, idx: &[usize]) -> Vec<String> {
    idx.iter().map(|&i| v.input().generators[i].name.clone()).collect()
}

pub fn orbit_cones_json(v: &ValidatedInput, omega: &OrbitConeSet) -> Vec<OrbitConeJson> {
    omega
        .cones()
        .iter()
        .enumerate()
        .map(|(i, c)| OrbitConeJson {
            id: i,
            cone: c.into(),
            generic: i == omega.generic_index(),
            face: names(v, omega.witness(i)),
        })
        .collect()
}

pub fn git_fan_json(fan: &GitFan) -> Vec<GitConeJson> {
    fan.cones()
        .iter()
        .enumerate()
        .map(|(i, c)| GitConeJson {
            id: i,
            cone: c.into(),
            chamber: fan.is_chamber(i),
            interior: fan.is_interior(i),
        })
        .collect()
}

pub fn collections_json(cs: &[Collection]) -> Vec<CollectionJson> {
    cs.iter()
        .enumerate()
        .map(|(i, c)| CollectionJson {
            id: i,
            members: c.indices.clone(),
            labels: c.members.iter().map(|m| m.label()).collect(),
            two_connected: c.two_connected,
            two_maximal: c.two_maximal,
            interior: c.interior,
            quasiprojective: c.quasiprojective,
            projective: c.projective,
            git_witness: c.git_witness.as_ref().map(|w| w.label()),
        })
        .collect()
}

fn face_json(v: &ValidatedInput, f: &FaceSpec) -> FaceJson {
    FaceJson {
        degrees: f.groups.iter().map(|g| vector(v.input().degree(g[0]))).collect(),
        generators: f.groups.iter().map(|g| names(v, g)).collect(),
        choose: match f.selection {
            FaceSelection::AtLeastOne => "at_least_one",
            FaceSelection::ExactlyOne => "exactly_one",
        },
        faces: int(&BigInt::from(f.face_count())),
    }
}

fn index_value(i: &LatticeIndex) -> Value {
    match i {
        LatticeIndex::Finite(n) => int(n),
        LatticeIndex::Infinite => Value::from("infinite"),
    }
}

pub fn embedding_name(i: usize) -> String {
    format!("X{}", i + 1)
}

pub fn embedding_json(v: &ValidatedInput, name: String, collection: usize, r: &GeometryReport) -> EmbeddingJson {
    EmbeddingJson {
        name,
        collection,
        bunch: r.bunch.members.iter().map(|c| c.label()).collect(),
        locally_factorial: r.locally_factorial,
        q_factorial: r.q_factorial,
        smooth: r.smooth_toric_mode.map(|value| SmoothJson {
            value,
            criterion: "toric criterion",
        }),
        class_group_rank: r.class_group_rank,
        picard: PicardJson {
            rank: r.picard_rank(),
            index: index_value(&r.picard_index()),
            basis: vectors(&r.picard.basis().row_vecs()),
        },
        semiample: (&r.semiample).into(),
        ample_nonempty: r.ample_sample.is_some(),
        ample_sample: r.ample_sample.as_ref().map(|p| vector(p)),
        quasiprojective: r.quasiprojective,
        projective: r.projective,
        relevant_faces: r.relevant_faces.iter().map(|f| face_json(v, f)).collect(),
        covering: r.covering.iter().map(|f| face_json(v, f)).collect(),
    }
}

pub fn morphisms_json(p: &MorphismPoset) -> MorphismsJson {
    MorphismsJson {
        face_relation: p
            .relation
            .iter()
            .map(|&(i, j)| [embedding_name(i), embedding_name(j)])
            .collect(),
        arrows: p
            .morphisms()
            .into_iter()
            .map(|(s, t)| ArrowJson {
                from: embedding_name(s),
                to: embedding_name(t),
            })
            .collect(),
    }
}

pub fn declared_bunch_json(a: &BunchAssessment) -> DeclaredBunchJson {
    DeclaredBunchJson {
        name: a.name.clone(),
        members: a.bunch.members.iter().map(|c| c.label()).collect(),
        valid: a.is_valid(),
        violations: a.violations.clone(),
        collection: a.collection,
        error: a.error.clone(),
        interior: a.interior,
        quasiprojective: a.quasiprojective,
        q_factorial: a.q_factorial,
    }
}

impl Report {
    pub fn new(command: &'static str, input: InputDocument, validation: ValidationJson) -> Self {
        Report {
            tool: TOOL,
            schema_version: SCHEMA_VERSION,
            command,
            input,
            validation,
            pointed: None,
            orbit_cones: None,
            git_fan: None,
            overlap_edges: None,
            collections: None,
            embeddings: None,
            morphisms: None,
            declared_bunches: None,
        }
    }

    /// Fills every section from a full classification.
    pub fn with_classification(mut self, cl: &Classification, declared: &[BunchAssessment]) -> Self {
        self.pointed = Some(cl.pointed);
        self.orbit_cones = Some(orbit_cones_json(&cl.input, &cl.omega));
        self.git_fan = Some(git_fan_json(&cl.fan));
        self.overlap_edges = Some(overlap_edges(&cl.omega));
        self.collections = Some(collections_json(&cl.collections));
        self.embeddings = Some(
            cl.reports
                .iter()
                .enumerate()
                .map(|(i, r)| embedding_json(&cl.input, embedding_name(i), cl.embeddings[i], r))
                .collect(),
        );
        self.morphisms = Some(morphisms_json(&cl.poset));
        if !declared.is_empty() {
            self.declared_bunches = Some(declared.iter().map(declared_bunch_json).collect());
        }
        self
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialises");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        render_text(self)
    }
}

pub fn overlap_edges(omega: &OrbitConeSet) -> Vec<[usize; 2]> {
    overlap_graph(omega).edges().into_iter().map(|(i, j)| [i, j]).collect()
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn row(v: &[Value]) -> String {
    let parts: Vec<String> = v
        .iter()
        .map(|x| match x {
            Value::String(s) => s.clone(),
            other => other.to_string(),
        })
        .collect();
    format!("({})", parts.join(","))
}

fn render_text(r: &Report) -> String {
    let mut out = String::new();
    let v = &r.validation;
    let _ = writeln!(
        out,
        "input: rank {}, {} generators, {} distinct degrees, {} mode",
        r.input.lattice_rank,
        r.input.generators.len(),
        v.distinct_degrees,
        r.input.mode
    );
    let _ = writeln!(out, "facet condition: {}", if v.facet_condition { "holds" } else { "fails" });
    if !v.failing_facets.is_empty() {
        let _ = writeln!(out, "  failing facets (generator dropped): {}", v.failing_facets.join(", "));
    }
    for w in &v.warnings {
        let _ = writeln!(out, "warning: {w}");
    }
    if let Some(p) = r.pointed {
        let _ = writeln!(out, "pointed grading: {}", yes(p));
    }
    if let Some(oc) = &r.orbit_cones {
        let _ = writeln!(out, "\norbit cones ({}):", oc.len());
        for c in oc {
            let _ = writeln!(
                out,
                "  [{:>2}] {}{}",
                c.id,
                c.cone.label,
                if c.generic { "  (weight cone)" } else { "" }
            );
        }
    }
    if let Some(fan) = &r.git_fan {
        let _ = writeln!(out, "\nGIT fan ({} cones):", fan.len());
        for c in fan {
            let mut flags = Vec::new();
            if c.chamber {
                flags.push("chamber");
            }
            if c.interior {
                flags.push("interior");
            }
            let line = format!("  [{:>2}] {}  {}", c.id, c.cone.label, flags.join(", "));
            let _ = writeln!(out, "{}", line.trim_end());
        }
    }
    if let Some(cs) = &r.collections {
        let _ = writeln!(out, "\n2-maximal collections ({}):", cs.len());
        for c in cs {
            let _ = writeln!(
                out,
                "  [{:>2}] {{{}}}  interior={} quasiprojective={} projective={}{}",
                c.id,
                c.labels.join(", "),
                yes(c.interior),
                yes(c.quasiprojective),
                yes(c.projective),
                c.git_witness
                    .as_ref()
                    .map(|w| format!(" witness={w}"))
                    .unwrap_or_default()
            );
        }
    }
    if let Some(es) = &r.embeddings {
        let _ = writeln!(out, "\nembeddings ({}):", es.len());
        for e in es {
            let _ = writeln!(out, "  {}: collection {}, bunch {{{}}}", e.name, e.collection, e.bunch.join(", "));
            let _ = writeln!(
                out,
                "      locally factorial: {}   Q-factorial: {}{}",
                yes(e.locally_factorial),
                yes(e.q_factorial),
                e.smooth
                    .as_ref()
                    .map(|s| format!("   smooth ({}): {}", s.criterion, yes(s.value)))
                    .unwrap_or_default()
            );
            let idx = match &e.picard.index {
                Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            let basis: Vec<String> = e.picard.basis.iter().map(|b| row(b)).collect();
            let _ = writeln!(
                out,
                "      class group rank: {}   Picard rank: {} (index {}, basis {})",
                e.class_group_rank,
                e.picard.rank,
                idx,
                if basis.is_empty() { "-".to_string() } else { basis.join(" ") }
            );
            let _ = writeln!(
                out,
                "      semiample: {}   ample: {}",
                e.semiample.label,
                e.ample_sample
                    .as_ref()
                    .map(|p| format!("nonempty, contains {}", row(p)))
                    .unwrap_or_else(|| "empty".to_string())
            );
            let _ = writeln!(
                out,
                "      quasiprojective: {}   projective: {}",
                yes(e.quasiprojective),
                yes(e.projective)
            );
        }
    }
    if let Some(m) = &r.morphisms {
        let _ = writeln!(out, "\nmorphisms:");
        if m.arrows.is_empty() {
            let _ = writeln!(out, "  none");
        }
        for a in &m.arrows {
            let _ = writeln!(out, "  {} -> {}", a.from, a.to);
        }
    }
    if let Some(bs) = &r.declared_bunches {
        let _ = writeln!(out, "\ndeclared bunches:");
        for b in bs {
            let _ = writeln!(
                out,
                "  {}: {{{}}}  valid={} Q-factorial={} collection={} interior={} quasiprojective={}",
                b.name,
                b.members.join(", "),
                yes(b.valid),
                yes(b.q_factorial),
                b.collection.map(|c| c.to_string()).unwrap_or_else(|| "-".into()),
                yes(b.interior),
                yes(b.quasiprojective)
            );
            for v in &b.violations {
                let _ = writeln!(out, "      {v}");
            }
            if let Some(e) = &b.error {
                let _ = writeln!(out, "      {e}");
            }
        }
    }
    out
}

/// The morphism poset as a DOT digraph; edges are morphisms of embeddings.
pub fn emit_dot(poset: &MorphismPoset, collection_ids: &[usize]) -> String {
    let mut out = String::from("digraph morphisms {\n  rankdir=LR;\n");
    for (i, c) in poset.nodes.iter().enumerate() {
        let mut flags = Vec::new();
        if c.interior {
            flags.push("interior");
        }
        if c.projective {
            flags.push("projective");
        } else if c.quasiprojective {
            flags.push("quasiprojective");
        }
        let id = collection_ids.get(i).copied().unwrap_or(i);
        let _ = writeln!(
            out,
            "  {} [label=\"{}\\ncollection {}\\n{}\"];",
            embedding_name(i),
            embedding_name(i),
            id,
            flags.join(", ")
        );
    }
    for (s, t) in poset.morphisms() {
        let _ = writeln!(out, "  {} -> {};", embedding_name(s), embedding_name(t));
    }
    out.push_str("}\n");
    out
}
