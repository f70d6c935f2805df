//! Face complexes: combinatorial skeletons of simple polytopes and of nice
//! manifolds with corners.
//!
//! Two construction modes exist.  In *polytope mode* the face lattice is
//! derived from vertex-facet incidence by closing under intersection; the
//! input is checked for simplicity and for connectivity of every derived
//! face.  In *poset mode* the faces and their containments are given
//! explicitly, which allows two facets to intersect in several components;
//! realizability is then the user's assertion and only consistency is
//! checked.

use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ComplexError {
    #[error("duplicate facet label {0:?}")]
    DuplicateFacet(String),
    #[error("duplicate vertex name {0:?}")]
    DuplicateVertex(String),
    #[error("vertex {vertex:?} references unknown facet {facet:?}")]
    UnknownFacet { vertex: String, facet: String },
    #[error("vertex {vertex:?} lies in {got} facets, but a simple corner of a {dim}-polytope lies in exactly {dim}")]
    NotSimple { vertex: String, got: usize, dim: usize },
    #[error("a {dim}-polytope needs at least {dim} + 1 vertices, got {got}")]
    TooFewVertices { dim: usize, got: usize },
    #[error("vertices {a:?} and {b:?} lie in the same facets")]
    FacetSetCollision { a: String, b: String },
    #[error("facet {0:?} contains no vertex")]
    EmptyFacet(String),
    #[error("facet {0:?} is not a face of codimension 1")]
    FacetNotCodimOne(String),
    #[error("vertex {0:?} does not arise as an intersection of facets")]
    VertexNotAFace(String),
    #[error("derived 1-face {0:?} has {1} vertices instead of 2")]
    EdgeVertexCount(String, usize),
    #[error("derived face {0:?} is disconnected; such complexes must be entered in poset mode")]
    DisconnectedFace(String),
    #[error("no unique face of codimension 0")]
    NoTopFace,
    #[error("face lattice is not graded near {0:?}")]
    Ungraded(String),
    #[error("face {0:?} is not the union of its proper subfaces")]
    NotUnionOfSubfaces(String),
    #[error("duplicate face id {0:?}")]
    DuplicateFaceId(String),
    #[error("face {face:?} contains unknown face id {reference:?}")]
    UnknownFaceRef { face: String, reference: String },
    #[error("containment cycle through face {0:?}")]
    ContainmentCycle(String),
    #[error("face {inner:?} of dimension {inner_dim} cannot lie in face {outer:?} of dimension {outer_dim}")]
    DimensionNotIncreasing {
        inner: String,
        inner_dim: usize,
        outer: String,
        outer_dim: usize,
    },
    #[error("face {inner:?} is missing facet label {facet:?} carried by the larger face {outer:?}")]
    FacetInconsistency {
        inner: String,
        outer: String,
        facet: String,
    },
    #[error("face {face:?} of codimension {codim} carries {got} facet labels; a nice manifold with corners has exactly {codim}")]
    NicenessViolation {
        face: String,
        codim: usize,
        got: usize,
    },
    #[error("the top face does not contain face {0:?}")]
    NotBelowTop(String),
    #[error("face {0:?} has no vertex below it")]
    NoVertices(String),
    #[error("stated dimension {stated} does not match the maximal face dimension {actual}")]
    DimensionMismatch { stated: usize, actual: usize },
    #[error("vertex {0:?} is not a vertex of this complex")]
    VertexNotPresent(String),
    #[error("deleting vertex {0:?} would empty the complex")]
    DeletionEmptiesComplex(String),
}

/// Construction mode of a [`FaceComplex`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ComplexMode {
    /// Derived from vertex-facet incidence of a simple polytope.
    Polytope,
    /// Explicit face poset; realizability is asserted by the user.
    Poset,
}

/// One face: its dimension, the facets of the original complex it lies in,
/// and its vertex set.  In poset mode distinct faces may share both the facet
/// set and (for exotic corners) even the vertex set, so faces also keep their
/// external id.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub dim: usize,
    pub facets: BTreeSet<usize>,
    pub vertices: BTreeSet<usize>,
    pub poset_id: Option<String>,
}

/// Identity of a face independent of its index in a particular complex; used
/// to match faces across deletion stages.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FaceKey {
    pub dim: usize,
    pub vertices: Vec<usize>,
    pub facets: Vec<usize>,
    pub poset_id: Option<String>,
}

/// A downward-closed set of faces together with its containment relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceComplex {
    dimension: usize,
    mode: ComplexMode,
    facet_labels: Vec<String>,
    vertex_names: Vec<String>,
    faces: Vec<Face>,
    /// `below[i]` holds the indices of the faces strictly contained in face `i`.
    below: Vec<BTreeSet<usize>>,
}

/// A vertex together with the unique maximal face of the complex containing
/// it, at which it is a simple corner.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FreeVertex {
    pub vertex: usize,
    pub max_face: usize,
}

impl FaceComplex {
    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn mode(&self) -> ComplexMode {
        self.mode
    }

    pub fn facet_labels(&self) -> &[String] {
        &self.facet_labels
    }

    pub fn facet_label(&self, id: usize) -> &str {
        &self.facet_labels[id]
    }

    pub fn facet_id(&self, label: &str) -> Option<usize> {
        self.facet_labels.iter().position(|l| l == label)
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertex_names
    }

    pub fn vertex_name(&self, id: usize) -> &str {
        &self.vertex_names[id]
    }

    pub fn vertex_id(&self, name: &str) -> Option<usize> {
        self.vertex_names.iter().position(|n| n == name)
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face(&self, idx: usize) -> &Face {
        &self.faces[idx]
    }

    pub fn face_key(&self, idx: usize) -> FaceKey {
        let f = &self.faces[idx];
        FaceKey {
            dim: f.dim,
            vertices: f.vertices.iter().copied().collect(),
            facets: f.facets.iter().copied().collect(),
            poset_id: f.poset_id.clone(),
        }
    }

    pub fn face_by_key(&self, key: &FaceKey) -> Option<usize> {
        self.faces.iter().position(|f| {
            f.dim == key.dim
                && f.vertices.iter().copied().eq(key.vertices.iter().copied())
                && f.facets.iter().copied().eq(key.facets.iter().copied())
                && f.poset_id == key.poset_id
        })
    }

    /// Faces whose facet label set is exactly the given one.
    pub fn faces_by_facet_labels(&self, labels: &[&str]) -> Vec<usize> {
        let want: Option<BTreeSet<usize>> = labels.iter().map(|l| self.facet_id(l)).collect();
        match want {
            Some(want) => (0..self.faces.len())
                .filter(|&i| self.faces[i].facets == want)
                .collect(),
            None => Vec::new(),
        }
    }

    /// Vertex ids present in this complex, ascending.
    pub fn vertices(&self) -> Vec<usize> {
        self.faces
            .iter()
            .filter(|f| f.dim == 0)
            .flat_map(|f| f.vertices.iter().copied())
            .collect()
    }

    pub fn vertex_count(&self) -> usize {
        self.faces.iter().filter(|f| f.dim == 0).count()
    }

    /// Index of the dimension-0 face for a vertex id.
    pub fn vertex_face(&self, vertex: usize) -> Option<usize> {
        self.faces
            .iter()
            .position(|f| f.dim == 0 && f.vertices.contains(&vertex))
    }

    /// The unique codimension-0 face, when there is one.
    pub fn top_face(&self) -> Option<usize> {
        let mut tops = (0..self.faces.len()).filter(|&i| self.faces[i].dim == self.dimension);
        match (tops.next(), tops.next()) {
            (Some(t), None) => Some(t),
            _ => None,
        }
    }

    /// Indices of faces strictly contained in face `i`.
    pub fn strictly_below(&self, i: usize) -> &BTreeSet<usize> {
        &self.below[i]
    }

    pub fn contains_face(&self, outer: usize, inner: usize) -> bool {
        outer == inner || self.below[outer].contains(&inner)
    }

    /// Facets *of face `e`*: the faces of dimension `dim(e) - 1` below it.
    pub fn facets_of_face(&self, e: usize) -> Vec<usize> {
        if self.faces[e].dim == 0 {
            return Vec::new();
        }
        self.below[e]
            .iter()
            .copied()
            .filter(|&g| self.faces[g].dim + 1 == self.faces[e].dim)
            .collect()
    }

    /// Structural comparison ignoring construction mode and external ids.
    pub fn structure_eq(&self, other: &FaceComplex) -> bool {
        fn strip(c: &FaceComplex) -> (Vec<(usize, Vec<usize>, Vec<usize>)>, Vec<(usize, usize)>) {
            let faces: Vec<_> = c
                .faces
                .iter()
                .map(|f| {
                    (
                        f.dim,
                        f.facets.iter().copied().collect::<Vec<_>>(),
                        f.vertices.iter().copied().collect::<Vec<_>>(),
                    )
                })
                .collect();
            let mut rel: Vec<(usize, usize)> = c
                .below
                .iter()
                .enumerate()
                .flat_map(|(i, s)| s.iter().map(move |&j| (i, j)))
                .collect();
            rel.sort_unstable();
            (faces, rel)
        }
        self.dimension == other.dimension
            && self.facet_labels == other.facet_labels
            && self.vertex_names == other.vertex_names
            && strip(self) == strip(other)
    }

    /// The subcomplex of all faces avoiding every vertex in `deleted`.
    pub fn without_vertices(&self, deleted: &BTreeSet<usize>) -> Result<FaceComplex, ComplexError> {
        let keep: Vec<usize> = (0..self.faces.len())
            .filter(|&i| self.faces[i].vertices.is_disjoint(deleted))
            .collect();
        if keep.is_empty() {
            let name = deleted
                .iter()
                .next()
                .map(|&v| self.vertex_names[v].clone())
                .unwrap_or_default();
            return Err(ComplexError::DeletionEmptiesComplex(name));
        }
        let remap: BTreeMap<usize, usize> =
            keep.iter().enumerate().map(|(new, &old)| (old, new)).collect();
        let faces: Vec<Face> = keep.iter().map(|&i| self.faces[i].clone()).collect();
        let below: Vec<BTreeSet<usize>> = keep
            .iter()
            .map(|&i| {
                self.below[i]
                    .iter()
                    .filter_map(|j| remap.get(j).copied())
                    .collect()
            })
            .collect();
        let dimension = faces.iter().map(|f| f.dim).max().unwrap_or(0);
        Ok(FaceComplex {
            dimension,
            mode: self.mode,
            facet_labels: self.facet_labels.clone(),
            vertex_names: self.vertex_names.clone(),
            faces,
            below,
        })
    }
}

/// Removes a single vertex: keeps exactly the faces not containing it.
pub fn delete_vertex_subcomplex(
    complex: &FaceComplex,
    vertex: usize,
) -> Result<FaceComplex, ComplexError> {
    if complex.vertex_face(vertex).is_none() {
        let name = complex
            .vertex_names
            .get(vertex)
            .cloned()
            .unwrap_or_else(|| format!("#{vertex}"));
        return Err(ComplexError::VertexNotPresent(name));
    }
    complex.without_vertices(&BTreeSet::from([vertex]))
}

/// Vertices `v` whose star has a unique maximal face `E` and which lie in
/// exactly `dim E` facets of `E` — the vertices a retraction step may remove.
/// Sorted by vertex id (hence by name).
pub fn free_vertices(complex: &FaceComplex) -> Vec<FreeVertex> {
    let mut out = Vec::new();
    for vf in 0..complex.faces.len() {
        if complex.faces[vf].dim != 0 {
            continue;
        }
        let vertex = *complex.faces[vf].vertices.iter().next().unwrap();
        let ups: Vec<usize> = (0..complex.faces.len())
            .filter(|&i| complex.contains_face(i, vf))
            .collect();
        let maximal: Vec<usize> = ups
            .iter()
            .copied()
            .filter(|&i| !ups.iter().any(|&j| complex.below[j].contains(&i)))
            .collect();
        let [e] = maximal[..] else {
            continue;
        };
        let dim_e = complex.faces[e].dim;
        if dim_e > 0 {
            let corner_count = ups
                .iter()
                .filter(|&&g| complex.faces[g].dim + 1 == dim_e && complex.below[e].contains(&g))
                .count();
            if corner_count != dim_e {
                continue;
            }
        }
        out.push(FreeVertex { vertex, max_face: e });
    }
    out
}

// ---------------------------------------------------------------------------
// JSON schemas
// ---------------------------------------------------------------------------

/// Vertex-facet incidence description of a simple polytope.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct PolytopeInput {
    pub dimension: usize,
    pub facets: Vec<String>,
    pub vertices: Vec<VertexInput>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct VertexInput {
    pub name: String,
    pub facets: Vec<String>,
}

/// Explicit face poset description.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct PosetInput {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dimension: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub facets: Option<Vec<String>>,
    pub faces: Vec<PosetFaceInput>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct PosetFaceInput {
    pub id: String,
    pub dim: usize,
    #[serde(default)]
    pub facets: Vec<String>,
    /// Faces contained in this one.  Either covering faces or the full list;
    /// the transitive closure is taken on load.
    #[serde(default)]
    pub contains: Vec<String>,
}

/// Either of the two accepted complex descriptions.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(untagged)]
pub enum ComplexInput {
    Polytope(PolytopeInput),
    Poset(PosetInput),
}

impl ComplexInput {
    pub fn build(&self) -> Result<FaceComplex, ComplexError> {
        match self {
            ComplexInput::Polytope(p) => build_face_lattice(p),
            ComplexInput::Poset(p) => load_face_poset(p),
        }
    }
}

// ---------------------------------------------------------------------------
// Polytope mode
// ---------------------------------------------------------------------------

/// Builds the full face lattice of a simple polytope from vertex-facet
/// incidence, verifying simplicity, gradedness and connectivity of every
/// derived face.
pub fn build_face_lattice(input: &PolytopeInput) -> Result<FaceComplex, ComplexError> {
    let n = input.dimension;

    let mut facet_labels: Vec<String> = input.facets.clone();
    facet_labels.sort();
    if let Some(w) = facet_labels.windows(2).find(|w| w[0] == w[1]) {
        return Err(ComplexError::DuplicateFacet(w[0].clone()));
    }

    let mut vertex_names: Vec<String> = input.vertices.iter().map(|v| v.name.clone()).collect();
    vertex_names.sort();
    if let Some(w) = vertex_names.windows(2).find(|w| w[0] == w[1]) {
        return Err(ComplexError::DuplicateVertex(w[0].clone()));
    }
    if vertex_names.len() < n + 1 {
        return Err(ComplexError::TooFewVertices {
            dim: n,
            got: vertex_names.len(),
        });
    }

    // vertex id -> set of facet ids
    let mut incidence: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); vertex_names.len()];
    for v in &input.vertices {
        let vid = vertex_names.binary_search(&v.name).unwrap();
        let mut set = BTreeSet::new();
        for fl in &v.facets {
            let fid = facet_labels
                .binary_search(fl)
                .map_err(|_| ComplexError::UnknownFacet {
                    vertex: v.name.clone(),
                    facet: fl.clone(),
                })?;
            set.insert(fid);
        }
        if set.len() != n {
            return Err(ComplexError::NotSimple {
                vertex: v.name.clone(),
                got: set.len(),
                dim: n,
            });
        }
        incidence[vid] = set;
    }
    for a in 0..vertex_names.len() {
        for b in a + 1..vertex_names.len() {
            if incidence[a] == incidence[b] {
                return Err(ComplexError::FacetSetCollision {
                    a: vertex_names[a].clone(),
                    b: vertex_names[b].clone(),
                });
            }
        }
    }

    // facet id -> vertex set
    let facet_vertices: Vec<BTreeSet<usize>> = (0..facet_labels.len())
        .map(|f| {
            (0..vertex_names.len())
                .filter(|&v| incidence[v].contains(&f))
                .collect()
        })
        .collect();
    if let Some(f) = facet_vertices.iter().position(BTreeSet::is_empty) {
        return Err(ComplexError::EmptyFacet(facet_labels[f].clone()));
    }

    // Close {whole polytope} ∪ {facets} under pairwise intersection.
    let whole: BTreeSet<usize> = (0..vertex_names.len()).collect();
    let mut sets: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
    sets.insert(whole);
    for fv in &facet_vertices {
        sets.insert(fv.clone());
    }
    loop {
        let snapshot: Vec<BTreeSet<usize>> = sets.iter().cloned().collect();
        let before = sets.len();
        for s in &snapshot {
            for fv in &facet_vertices {
                let inter: BTreeSet<usize> = s.intersection(fv).copied().collect();
                if !inter.is_empty() {
                    sets.insert(inter);
                }
            }
        }
        if sets.len() == before {
            break;
        }
    }

    let describe = |vs: &BTreeSet<usize>| {
        vs.iter()
            .map(|&v| vertex_names[v].as_str())
            .collect::<Vec<_>>()
            .join(",")
    };

    // Label each candidate face by all facets containing it; the codimension
    // is the label count.
    let mut faces: Vec<Face> = Vec::new();
    for vs in &sets {
        let facets: BTreeSet<usize> = (0..facet_labels.len())
            .filter(|&f| vs.is_subset(&facet_vertices[f]))
            .collect();
        debug_assert!(facets.len() <= n);
        faces.push(Face {
            dim: n - facets.len(),
            facets,
            vertices: vs.clone(),
            poset_id: None,
        });
    }

    // Every input vertex must itself be a face.
    for v in 0..vertex_names.len() {
        let found = faces.iter().any(|f| f.dim == 0 && f.vertices.contains(&v));
        if !found {
            return Err(ComplexError::VertexNotAFace(vertex_names[v].clone()));
        }
    }
    // Facets must sit in codimension 1.
    for f in 0..facet_labels.len() {
        let face = faces.iter().find(|x| x.vertices == facet_vertices[f]);
        if !face.is_some_and(|x| x.dim + 1 == n) {
            return Err(ComplexError::FacetNotCodimOne(facet_labels[f].clone()));
        }
    }
    // Exactly one codimension-0 face.
    if faces.iter().filter(|f| f.dim == n).count() != 1 {
        return Err(ComplexError::NoTopFace);
    }
    // 1-faces are edges.
    for f in &faces {
        if f.dim == 1 && f.vertices.len() != 2 {
            return Err(ComplexError::EdgeVertexCount(
                describe(&f.vertices),
                f.vertices.len(),
            ));
        }
    }
    // Union property and connectivity via the vertex-edge graph.
    let edges: Vec<&Face> = faces.iter().filter(|f| f.dim == 1).collect();
    for f in &faces {
        if f.dim == 0 {
            continue;
        }
        let mut union: BTreeSet<usize> = BTreeSet::new();
        for g in &faces {
            if g.vertices.len() < f.vertices.len() && g.vertices.is_subset(&f.vertices) {
                union.extend(g.vertices.iter().copied());
            }
        }
        if union != f.vertices {
            return Err(ComplexError::NotUnionOfSubfaces(describe(&f.vertices)));
        }
        if !connected(
            &f.vertices,
            edges
                .iter()
                .filter(|e| e.vertices.is_subset(&f.vertices))
                .map(|e| {
                    let mut it = e.vertices.iter().copied();
                    (it.next().unwrap(), it.next().unwrap())
                }),
        ) {
            return Err(ComplexError::DisconnectedFace(describe(&f.vertices)));
        }
    }

    sort_canonically(&mut faces);
    let below = below_by_vertex_inclusion(&faces);
    let complex = FaceComplex {
        dimension: n,
        mode: ComplexMode::Polytope,
        facet_labels,
        vertex_names,
        faces,
        below,
    };
    check_graded(&complex)?;
    Ok(complex)
}

fn connected(
    nodes: &BTreeSet<usize>,
    edges: impl Iterator<Item = (usize, usize)>,
) -> bool {
    if nodes.len() <= 1 {
        return true;
    }
    let ids: Vec<usize> = nodes.iter().copied().collect();
    let pos: BTreeMap<usize, usize> = ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut parent: Vec<usize> = (0..ids.len()).collect();
    fn find(parent: &mut Vec<usize>, mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for (a, b) in edges {
        let (ra, rb) = (find(&mut parent, pos[&a]), find(&mut parent, pos[&b]));
        parent[ra] = rb;
    }
    let root = find(&mut parent, 0);
    (1..ids.len()).all(|i| find(&mut parent, i) == root)
}

fn sort_canonically(faces: &mut [Face]) {
    faces.sort_by(|a, b| {
        (a.dim, &a.vertices, &a.facets, &a.poset_id).cmp(&(b.dim, &b.vertices, &b.facets, &b.poset_id))
    });
}

fn below_by_vertex_inclusion(faces: &[Face]) -> Vec<BTreeSet<usize>> {
    (0..faces.len())
        .map(|i| {
            (0..faces.len())
                .filter(|&j| {
                    j != i
                        && faces[j].vertices.len() < faces[i].vertices.len()
                        && faces[j].vertices.is_subset(&faces[i].vertices)
                })
                .collect()
        })
        .collect()
}

/// Covers must drop dimension by exactly one.
fn check_graded(complex: &FaceComplex) -> Result<(), ComplexError> {
    for i in 0..complex.faces.len() {
        for &j in &complex.below[i] {
            if complex.faces[i].dim == complex.faces[j].dim + 1 {
                continue;
            }
            let intermediate = complex.below[i]
                .iter()
                .any(|&h| h != j && complex.below[h].contains(&j));
            if !intermediate {
                let name = complex.faces[i]
                    .poset_id
                    .clone()
                    .unwrap_or_else(|| format!("dim-{} face", complex.faces[i].dim));
                return Err(ComplexError::Ungraded(name));
            }
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Poset mode
// ---------------------------------------------------------------------------

/// Loads an explicit face poset of a nice manifold with corners.
///
/// Consistency checks: unique ids, acyclic containment with strictly
/// increasing dimension, facet labels monotone under containment, exactly the
/// codimension many labels on every face, a unique top face containing
/// everything, a vertex below every face, and gradedness.  Realizability as
/// an actual manifold with corners is the caller's assertion.
pub fn load_face_poset(input: &PosetInput) -> Result<FaceComplex, ComplexError> {
    let m = input.faces.len();
    let mut by_id: BTreeMap<&str, usize> = BTreeMap::new();
    for (i, f) in input.faces.iter().enumerate() {
        if by_id.insert(f.id.as_str(), i).is_some() {
            return Err(ComplexError::DuplicateFaceId(f.id.clone()));
        }
    }

    let facet_labels: Vec<String> = match &input.facets {
        Some(list) => {
            let mut l = list.clone();
            l.sort();
            if let Some(w) = l.windows(2).find(|w| w[0] == w[1]) {
                return Err(ComplexError::DuplicateFacet(w[0].clone()));
            }
            l
        }
        None => {
            let mut l: Vec<String> = input
                .faces
                .iter()
                .flat_map(|f| f.facets.iter().cloned())
                .collect::<BTreeSet<_>>()
                .into_iter()
                .collect();
            l.sort();
            l
        }
    };

    let mut facet_sets: Vec<BTreeSet<usize>> = Vec::with_capacity(m);
    for f in &input.faces {
        let mut set = BTreeSet::new();
        for fl in &f.facets {
            let fid = facet_labels
                .binary_search(fl)
                .map_err(|_| ComplexError::UnknownFacet {
                    vertex: f.id.clone(),
                    facet: fl.clone(),
                })?;
            set.insert(fid);
        }
        facet_sets.push(set);
    }

    // Transitive closure of the containment lists.
    let mut direct: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); m];
    for (i, f) in input.faces.iter().enumerate() {
        for r in &f.contains {
            let &j = by_id
                .get(r.as_str())
                .ok_or_else(|| ComplexError::UnknownFaceRef {
                    face: f.id.clone(),
                    reference: r.clone(),
                })?;
            direct[i].insert(j);
        }
    }
    let mut below = direct.clone();
    loop {
        let mut changed = false;
        for i in 0..m {
            let extra: BTreeSet<usize> = below[i]
                .iter()
                .flat_map(|&j| below[j].iter().copied())
                .filter(|x| !below[i].contains(x))
                .collect();
            if !extra.is_empty() {
                below[i].extend(extra);
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    for i in 0..m {
        if below[i].contains(&i) {
            return Err(ComplexError::ContainmentCycle(input.faces[i].id.clone()));
        }
        for &j in &below[i] {
            if input.faces[j].dim >= input.faces[i].dim {
                return Err(ComplexError::DimensionNotIncreasing {
                    inner: input.faces[j].id.clone(),
                    inner_dim: input.faces[j].dim,
                    outer: input.faces[i].id.clone(),
                    outer_dim: input.faces[i].dim,
                });
            }
            if let Some(&f) = facet_sets[i].iter().find(|f| !facet_sets[j].contains(f)) {
                return Err(ComplexError::FacetInconsistency {
                    inner: input.faces[j].id.clone(),
                    outer: input.faces[i].id.clone(),
                    facet: facet_labels[f].clone(),
                });
            }
        }
    }

    let actual_dim = input.faces.iter().map(|f| f.dim).max().unwrap_or(0);
    let dimension = match input.dimension {
        Some(d) if d != actual_dim => {
            return Err(ComplexError::DimensionMismatch {
                stated: d,
                actual: actual_dim,
            })
        }
        _ => actual_dim,
    };

    let tops: Vec<usize> = (0..m).filter(|&i| input.faces[i].dim == dimension).collect();
    let [top] = tops[..] else {
        return Err(ComplexError::NoTopFace);
    };
    for i in 0..m {
        if i != top && !below[top].contains(&i) {
            return Err(ComplexError::NotBelowTop(input.faces[i].id.clone()));
        }
    }

    for i in 0..m {
        let codim = dimension - input.faces[i].dim;
        if facet_sets[i].len() != codim {
            return Err(ComplexError::NicenessViolation {
                face: input.faces[i].id.clone(),
                codim,
                got: facet_sets[i].len(),
            });
        }
    }

    // Vertices are the dimension-0 faces, named by their poset ids.
    let mut vertex_names: Vec<String> = input
        .faces
        .iter()
        .filter(|f| f.dim == 0)
        .map(|f| f.id.clone())
        .collect();
    vertex_names.sort();
    let vertex_id: BTreeMap<&str, usize> = vertex_names
        .iter()
        .enumerate()
        .map(|(i, n)| (n.as_str(), i))
        .collect();

    let mut faces: Vec<Face> = Vec::with_capacity(m);
    for (i, f) in input.faces.iter().enumerate() {
        let mut vertices: BTreeSet<usize> = below[i]
            .iter()
            .filter(|&&j| input.faces[j].dim == 0)
            .map(|&j| vertex_id[input.faces[j].id.as_str()])
            .collect();
        if f.dim == 0 {
            vertices.insert(vertex_id[f.id.as_str()]);
        }
        if vertices.is_empty() {
            return Err(ComplexError::NoVertices(f.id.clone()));
        }
        faces.push(Face {
            dim: f.dim,
            facets: facet_sets[i].clone(),
            vertices,
            poset_id: Some(f.id.clone()),
        });
    }

    // Canonical order, with the relation remapped accordingly.
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&a, &b| {
        (
            faces[a].dim,
            &faces[a].vertices,
            &faces[a].facets,
            &faces[a].poset_id,
        )
            .cmp(&(
                faces[b].dim,
                &faces[b].vertices,
                &faces[b].facets,
                &faces[b].poset_id,
            ))
    });
    let remap: BTreeMap<usize, usize> =
        order.iter().enumerate().map(|(new, &old)| (old, new)).collect();
    let sorted_faces: Vec<Face> = order.iter().map(|&i| faces[i].clone()).collect();
    let sorted_below: Vec<BTreeSet<usize>> = order
        .iter()
        .map(|&i| below[i].iter().map(|j| remap[j]).collect())
        .collect();

    let complex = FaceComplex {
        dimension,
        mode: ComplexMode::Poset,
        facet_labels,
        vertex_names,
        faces: sorted_faces,
        below: sorted_below,
    };
    check_graded(&complex)?;
    Ok(complex)
}

// ---------------------------------------------------------------------------
// Canonical serialization
// ---------------------------------------------------------------------------

impl FaceComplex {
    /// Polytope-mode complexes as canonical vertex-facet incidence.
    pub fn to_polytope_input(&self) -> Option<PolytopeInput> {
        if self.mode != ComplexMode::Polytope {
            return None;
        }
        let vertices = self
            .faces
            .iter()
            .filter(|f| f.dim == 0)
            .map(|f| {
                let v = *f.vertices.iter().next().unwrap();
                VertexInput {
                    name: self.vertex_names[v].clone(),
                    facets: f.facets.iter().map(|&i| self.facet_labels[i].clone()).collect(),
                }
            })
            .collect();
        Some(PolytopeInput {
            dimension: self.dimension,
            facets: self.facet_labels.clone(),
            vertices,
        })
    }

    /// Any complex as a canonical face poset (cover relations only).
    pub fn to_poset_input(&self) -> PosetInput {
        let id_of = |i: usize| -> String {
            if let Some(id) = &self.faces[i].poset_id {
                return id.clone();
            }
            if self.faces[i].dim == 0 {
                let v = *self.faces[i].vertices.iter().next().unwrap();
                return self.vertex_names[v].clone();
            }
            format!("f{i}")
        };
        let faces = (0..self.faces.len())
            .map(|i| {
                let covers: Vec<String> = self.below[i]
                    .iter()
                    .copied()
                    .filter(|&j| {
                        !self.below[i]
                            .iter()
                            .any(|&h| h != j && self.below[h].contains(&j))
                    })
                    .map(id_of)
                    .collect();
                PosetFaceInput {
                    id: id_of(i),
                    dim: self.faces[i].dim,
                    facets: self.faces[i]
                        .facets
                        .iter()
                        .map(|&f| self.facet_labels[f].clone())
                        .collect(),
                    contains: covers,
                }
            })
            .collect();
        PosetInput {
            dimension: Some(self.dimension),
            facets: Some(self.facet_labels.clone()),
            faces,
        }
    }

    /// Canonical pretty-printed JSON (idempotent under reload).
    pub fn to_canonical_json(&self) -> String {
        match self.to_polytope_input() {
            Some(p) => serde_json::to_string_pretty(&p).expect("serialization cannot fail"),
            None => serde_json::to_string_pretty(&self.to_poset_input())
                .expect("serialization cannot fail"),
        }
    }
}
