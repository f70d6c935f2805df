//! R-characteristic pairs: a face complex together with an integer vector on
//! each facet, linearly independent at every vertex.
//!
//! Such a pair encodes a (torus or toric) orbifold.  Each face `E` carries an
//! induced pair: the ambient lattice is divided by the saturation of the
//! sublattice spanned by the vectors of the facets containing `E`, and the
//! facets of `E` inherit the primitivized images of their extra facet's
//! vector.  The determinant of the induced vectors at a simple corner `v` of
//! `E` is the order `g_E(v)` of the local group there.

use crate::complexes::{ComplexError, ComplexInput, FaceComplex};
use crate::linalg::{
    determinant, invariant_factors, primitive_vector, quotient_projection, saturate_lattice,
    Int, IntMatrix, IntVector, LinalgError, QuotientMap,
};
use crate::numio::JsonInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum CharPairError {
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("no characteristic vector for facet {0:?}")]
    MissingLambda(String),
    #[error("characteristic vector given for unknown facet {0:?}")]
    UnknownFacetLabel(String),
    #[error("characteristic vector for facet {facet:?} has {got} entries, expected {expected}")]
    WrongLength {
        facet: String,
        expected: usize,
        got: usize,
    },
    #[error("characteristic vectors at vertex {0:?} are linearly dependent")]
    SingularCorner(String),
    #[error("vertex {vertex:?} is not a simple corner of face {face:?}")]
    NotSimpleCorner { face: String, vertex: String },
    #[error("face index {0} out of range")]
    NoSuchFace(usize),
    #[error("vertex {0:?} does not lie on the face")]
    VertexNotOnFace(String),
}

/// A validated R-characteristic pair.  Construction checks that every facet
/// has a vector of the right length and that the vectors of the facets
/// meeting at each vertex are linearly independent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacteristicPair {
    complex: FaceComplex,
    /// Indexed by facet id.
    lambda: Vec<IntVector>,
}

/// The pair induced on a single face `E`: a vector in the quotient lattice
/// for every facet of `E`, keyed by that facet-face's index in the parent
/// complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InducedPair {
    pub face: usize,
    /// Rank of the quotient lattice, equal to `dim E`.
    pub target_rank: usize,
    /// `None` when `E` has codimension 0 and no basis hint was given; the
    /// ambient lattice is then used unchanged.
    pub quotient: Option<QuotientMap>,
    /// Induced vector on each facet of `E`.
    pub lambda: BTreeMap<usize, IntVector>,
    /// The extra original facet whose vector induced each entry of `lambda`.
    pub source_facet: BTreeMap<usize, usize>,
}

impl CharacteristicPair {
    pub fn new(
        complex: FaceComplex,
        assignments: &BTreeMap<String, IntVector>,
    ) -> Result<Self, CharPairError> {
        let n = complex.dimension();
        let mut lambda = Vec::with_capacity(complex.facet_labels().len());
        for label in complex.facet_labels() {
            let v = assignments
                .get(label)
                .ok_or_else(|| CharPairError::MissingLambda(label.clone()))?;
            if v.len() != n {
                return Err(CharPairError::WrongLength {
                    facet: label.clone(),
                    expected: n,
                    got: v.len(),
                });
            }
            lambda.push(v.clone());
        }
        for label in assignments.keys() {
            if complex.facet_id(label).is_none() {
                return Err(CharPairError::UnknownFacetLabel(label.clone()));
            }
        }
        let pair = CharacteristicPair { complex, lambda };
        for i in 0..pair.complex.faces().len() {
            if pair.complex.face(i).dim != 0 {
                continue;
            }
            let rows: Vec<IntVector> = pair.complex.face(i).facets.iter()
                .map(|&f| pair.lambda[f].clone())
                .collect();
            let v = *pair.complex.face(i).vertices.iter().next().unwrap();
            debug_assert_eq!(rows.len(), n);
            let det = determinant(&IntMatrix::from_rows_cols(rows, n))?;
            if det.is_zero() {
                return Err(CharPairError::SingularCorner(
                    pair.complex.vertex_name(v).to_string(),
                ));
            }
        }
        Ok(pair)
    }

    pub fn complex(&self) -> &FaceComplex {
        &self.complex
    }

    /// Rank of the ambient lattice (the dimension of the complex).
    pub fn rank(&self) -> usize {
        self.complex.dimension()
    }

    pub fn lambda(&self, facet: usize) -> &IntVector {
        &self.lambda[facet]
    }

    /// The induced characteristic pair on face `face`.  An optional basis
    /// hint fixes the coordinates on the quotient lattice: it must be a
    /// unimodular matrix among whose rows a subset spans exactly the
    /// saturated sublattice generated by the vectors of the facets
    /// containing `face`.
    pub fn induced(
        &self,
        face: usize,
        hint: Option<&IntMatrix>,
    ) -> Result<InducedPair, CharPairError> {
        let n = self.rank();
        if face >= self.complex.faces().len() {
            return Err(CharPairError::NoSuchFace(face));
        }
        let e = self.complex.face(face);
        let k = e.facets.len();
        debug_assert_eq!(e.dim, n - k);

        let quotient = if k == 0 && hint.is_none() {
            None
        } else {
            let rows: Vec<IntVector> = e.facets.iter().map(|&f| self.lambda[f].clone()).collect();
            let saturated = saturate_lattice(&IntMatrix::from_rows_cols(rows, n))?;
            Some(quotient_projection(&saturated, hint)?)
        };

        let mut lambda = BTreeMap::new();
        let mut source_facet = BTreeMap::new();
        for g in self.complex.facets_of_face(face) {
            let extra: Vec<usize> = self
                .complex
                .face(g)
                .facets
                .difference(&e.facets)
                .copied()
                .collect();
            let [f_extra] = extra[..] else {
                // Niceness guarantees exactly one extra label.
                unreachable!("facet of a face must carry exactly one extra label");
            };
            let raw = &self.lambda[f_extra];
            let mapped = match &quotient {
                Some(q) => q.apply(raw),
                None => raw.clone(),
            };
            let vec = if k >= 1 {
                primitive_vector(&mapped)?
            } else {
                mapped
            };
            lambda.insert(g, vec);
            source_facet.insert(g, f_extra);
        }
        Ok(InducedPair {
            face,
            target_rank: n - k,
            quotient,
            lambda,
            source_facet,
        })
    }

    /// `g_E(v)` for `E = face` and `v = vertex`, via the induced pair.
    pub fn local_group_order(&self, face: usize, vertex: usize) -> Result<Int, CharPairError> {
        let induced = self.induced(face, None)?;
        let m = induced.corner_matrix(self, vertex)?;
        Ok(determinant(&m)?.abs())
    }

    /// Invariant factors of the local group at a simple corner; their
    /// product is `g_E(v)`.
    pub fn local_group_structure(
        &self,
        face: usize,
        vertex: usize,
    ) -> Result<Vec<Int>, CharPairError> {
        let induced = self.induced(face, None)?;
        let m = induced.corner_matrix(self, vertex)?;
        Ok(invariant_factors(&m))
    }

    /// `g_E(v)` for every simple corner `v` of `face`, keyed by vertex id.
    pub fn corner_orders(&self, face: usize) -> Result<BTreeMap<usize, Int>, CharPairError> {
        let induced = self.induced(face, None)?;
        let mut out = BTreeMap::new();
        for &v in &self.complex.face(face).vertices {
            if induced.corner_faces(self, v).is_ok() {
                let m = induced.corner_matrix(self, v)?;
                out.insert(v, determinant(&m)?.abs());
            }
        }
        Ok(out)
    }

    /// All local group orders: `(face, vertex, g)` over every face of the
    /// complex and every simple corner of it.
    pub fn full_order_table(&self) -> Result<Vec<(usize, usize, Int)>, CharPairError> {
        let mut out = Vec::new();
        for face in 0..self.complex.faces().len() {
            for (v, g) in self.corner_orders(face)? {
                out.push((face, v, g));
            }
        }
        Ok(out)
    }

    /// The primes dividing some local group order; only these can obstruct a
    /// prime-compatible retraction.
    pub fn candidate_primes(&self) -> Result<BTreeSet<u64>, CharPairError> {
        let mut primes = BTreeSet::new();
        for (_, _, g) in self.full_order_table()? {
            if !g.is_one() {
                primes.extend(crate::linalg::prime_factors(&g)?);
            }
        }
        Ok(primes)
    }

    pub fn to_input(&self) -> PairInput {
        let lambda = self
            .complex
            .facet_labels()
            .iter()
            .enumerate()
            .map(|(f, label)| {
                (
                    label.clone(),
                    self.lambda[f].iter().cloned().map(JsonInt).collect(),
                )
            })
            .collect();
        let complex = match self.complex.to_polytope_input() {
            Some(p) => ComplexInput::Polytope(p),
            None => ComplexInput::Poset(self.complex.to_poset_input()),
        };
        PairInput { complex, lambda }
    }
}

impl InducedPair {
    /// The facets of `E` meeting at `vertex`, ascending; errors unless their
    /// number is exactly `dim E` (simple corner).
    pub fn corner_faces(
        &self,
        pair: &CharacteristicPair,
        vertex: usize,
    ) -> Result<Vec<usize>, CharPairError> {
        let complex = pair.complex();
        let e = complex.face(self.face);
        if !e.vertices.contains(&vertex) {
            return Err(CharPairError::VertexNotOnFace(
                complex.vertex_name(vertex).to_string(),
            ));
        }
        let at_v: Vec<usize> = self
            .lambda
            .keys()
            .copied()
            .filter(|&g| complex.face(g).vertices.contains(&vertex))
            .collect();
        if at_v.len() != e.dim {
            return Err(CharPairError::NotSimpleCorner {
                face: face_name(complex, self.face),
                vertex: complex.vertex_name(vertex).to_string(),
            });
        }
        Ok(at_v)
    }

    /// Square matrix whose rows are the induced vectors at a simple corner.
    pub fn corner_matrix(
        &self,
        pair: &CharacteristicPair,
        vertex: usize,
    ) -> Result<IntMatrix, CharPairError> {
        let faces = self.corner_faces(pair, vertex)?;
        let rows: Vec<IntVector> = faces.iter().map(|g| self.lambda[g].clone()).collect();
        Ok(IntMatrix::from_rows_cols(rows, self.target_rank))
    }
}

/// Human-readable name of a face: poset id, or facet labels, or vertex list.
pub fn face_name(complex: &FaceComplex, face: usize) -> String {
    let f = complex.face(face);
    if let Some(id) = &f.poset_id {
        return id.clone();
    }
    if f.dim == 0 {
        let v = *f.vertices.iter().next().unwrap();
        return complex.vertex_name(v).to_string();
    }
    if f.facets.is_empty() {
        return "whole".to_string();
    }
    f.facets
        .iter()
        .map(|&x| complex.facet_label(x))
        .collect::<Vec<_>>()
        .join("∩")
}

// ---------------------------------------------------------------------------
// JSON schema
// ---------------------------------------------------------------------------

/// A face complex plus the characteristic vector of each facet.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct PairInput {
    pub complex: ComplexInput,
    pub lambda: BTreeMap<String, Vec<JsonInt>>,
}

impl PairInput {
    pub fn build(&self) -> Result<CharacteristicPair, CharPairError> {
        let complex = self.complex.build()?;
        let assignments: BTreeMap<String, IntVector> = self
            .lambda
            .iter()
            .map(|(k, v)| {
                (
                    k.clone(),
                    IntVector::new(v.iter().map(|x| x.0.clone()).collect()),
                )
            })
            .collect();
        CharacteristicPair::new(complex, &assignments)
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::complexes::{build_face_lattice, load_face_poset, PolytopeInput, VertexInput};

    fn iv(entries: &[i64]) -> IntVector {
        IntVector::from_i64(entries)
    }

    pub fn cube_pair_json() -> &'static str {
        include_str!(concat!(env!("CARGO_MANIFEST_DIR"), "/../../samples/cube.json"))
    }

    pub fn cube_pair() -> CharacteristicPair {
        let input: PairInput = serde_json::from_str(cube_pair_json()).unwrap();
        input.build().unwrap()
    }

    fn cube_orders_by_name(pair: &CharacteristicPair) -> BTreeMap<(String, String), i64> {
        use num_traits::ToPrimitive;
        let c = pair.complex();
        pair.full_order_table()
            .unwrap()
            .into_iter()
            .map(|(f, v, g)| {
                (
                    (face_name(c, f), c.vertex_name(v).to_string()),
                    g.to_i64().unwrap(),
                )
            })
            .collect()
    }

    #[test]
    fn cube_vertex_orders() {
        let pair = cube_pair();
        let c = pair.complex();
        let top = c.top_face().unwrap();
        let expect = [
            ("v125", 2),
            ("v235", 1),
            ("v345", 2),
            ("v145", 3),
            ("v126", 4),
            ("v236", 2),
            ("v346", 4),
            ("v146", 6),
        ];
        for (name, g) in expect {
            let v = c.vertex_id(name).unwrap();
            assert_eq!(
                pair.local_group_order(top, v).unwrap(),
                Int::from(g),
                "g_Q({name})"
            );
        }
        assert_eq!(
            pair.local_group_structure(top, c.vertex_id("v146").unwrap())
                .unwrap(),
            vec![Int::from(1), Int::from(1), Int::from(6)]
        );
    }

    #[test]
    fn cube_full_order_table() {
        let pair = cube_pair();
        let orders = cube_orders_by_name(&pair);
        // 27 faces: 8 + 12 + 6 + 1, with 8 corners on the top face,
        // 4 per facet, 2 per edge, 1 per vertex.
        assert_eq!(orders.len(), 8 + 24 + 24 + 8);

        // Facet tables.
        let expect_facets = [
            ("F1", &[("v125", 1), ("v145", 1), ("v126", 1), ("v146", 1)]),
            ("F2", &[("v125", 1), ("v235", 1), ("v126", 1), ("v236", 1)]),
            ("F3", &[("v235", 1), ("v345", 1), ("v236", 2), ("v346", 2)]),
            ("F4", &[("v345", 1), ("v145", 1), ("v346", 2), ("v146", 2)]),
            ("F5", &[("v125", 2), ("v235", 1), ("v345", 2), ("v145", 3)]),
            ("F6", &[("v126", 1), ("v236", 1), ("v346", 4), ("v146", 3)]),
        ];
        for (facet, table) in expect_facets {
            for (vertex, g) in table.iter() {
                assert_eq!(
                    orders[&(facet.to_string(), vertex.to_string())],
                    *g,
                    "g_{facet}({vertex})"
                );
            }
        }

        // Edges and vertices contribute no torsion: primitivization in rank
        // one forces every order to 1.
        for ((face, vertex), g) in &orders {
            if face.contains('∩') || face.starts_with('v') {
                assert_eq!(*g, 1, "g_{face}({vertex})");
            }
        }

        assert_eq!(
            pair.candidate_primes().unwrap(),
            BTreeSet::from([2, 3])
        );
    }

    #[test]
    fn local_structure_on_facet() {
        let pair = cube_pair();
        let c = pair.complex();
        let f4 = pair.complex().faces_by_facet_labels(&["F4"])[0];
        assert_eq!(
            pair.local_group_structure(f4, c.vertex_id("v146").unwrap())
                .unwrap(),
            vec![Int::from(1), Int::from(2)]
        );
    }

    #[test]
    fn induced_pair_with_basis_hint() {
        let pair = cube_pair();
        let c = pair.complex();
        let f6 = c.faces_by_facet_labels(&["F6"])[0];
        let hint = IntMatrix::from_i64_rows(&[&[1, 0, 0], &[2, 1, 0], &[0, 0, 1]]);
        let induced = pair.induced(f6, Some(&hint)).unwrap();
        assert_eq!(induced.target_rank, 2);

        let by_extra: BTreeMap<&str, &IntVector> = induced
            .lambda
            .iter()
            .map(|(g, vec)| (c.facet_label(induced.source_facet[g]), vec))
            .collect();
        assert_eq!(by_extra["F1"], &iv(&[-1, 1]));
        assert_eq!(by_extra["F2"], &iv(&[-1, 0]));
        assert_eq!(by_extra["F3"], &iv(&[0, 1]));
        assert_eq!(by_extra["F4"], &iv(&[-4, 1]));

        // The corner orders do not depend on the choice of basis.
        for hint in [
            None,
            Some(&hint),
            Some(&IntMatrix::from_i64_rows(&[&[2, 1, 0], &[1, 1, 0], &[0, 0, 1]])),
        ] {
            let ind = pair.induced(f6, hint.map(|h| h as _)).unwrap();
            let gs: Vec<i64> = ["v126", "v236", "v346", "v146"]
                .iter()
                .map(|name| {
                    use num_traits::ToPrimitive;
                    let m = ind.corner_matrix(&pair, c.vertex_id(name).unwrap()).unwrap();
                    determinant(&m).unwrap().abs().to_i64().unwrap()
                })
                .collect();
            assert_eq!(gs, vec![1, 1, 4, 3]);
        }
    }

    #[test]
    fn non_primitive_facet_vector_changes_only_codim_zero() {
        let base = cube_pair();
        let mut input: PairInput = serde_json::from_str(cube_pair_json()).unwrap();
        input.lambda.insert(
            "F5".into(),
            vec![JsonInt::from(2), JsonInt::from(0), JsonInt::from(0)],
        );
        let doubled = input.build().unwrap();
        let c = doubled.complex();

        // g_Q doubles at the corners on F5 and keeps its value elsewhere.
        let top = c.top_face().unwrap();
        for (name, g) in [
            ("v125", 4),
            ("v235", 2),
            ("v345", 4),
            ("v145", 6),
            ("v126", 4),
            ("v236", 2),
            ("v346", 4),
            ("v146", 6),
        ] {
            assert_eq!(
                doubled.local_group_order(top, c.vertex_id(name).unwrap()).unwrap(),
                Int::from(g),
                "doubled g_Q({name})"
            );
        }

        // Induced pairs on faces of positive codimension only see the
        // saturation, hence stay as before.
        for face in 0..c.faces().len() {
            if c.face(face).facets.is_empty() {
                continue;
            }
            assert_eq!(
                doubled.induced(face, None).unwrap().lambda,
                base.induced(face, None).unwrap().lambda,
            );
        }
        assert_eq!(doubled.candidate_primes().unwrap(), BTreeSet::from([2, 3]));
    }

    #[test]
    fn weighted_projective_line() {
        let input = PolytopeInput {
            dimension: 1,
            facets: vec!["L".into(), "R".into()],
            vertices: vec![
                VertexInput { name: "l".into(), facets: vec!["L".into()] },
                VertexInput { name: "r".into(), facets: vec!["R".into()] },
            ],
        };
        let complex = build_face_lattice(&input).unwrap();
        let pair = CharacteristicPair::new(
            complex,
            &BTreeMap::from([("L".to_string(), iv(&[2])), ("R".to_string(), iv(&[-3]))]),
        )
        .unwrap();
        let c = pair.complex();
        let top = c.top_face().unwrap();
        assert_eq!(
            pair.local_group_order(top, c.vertex_id("l").unwrap()).unwrap(),
            Int::from(2)
        );
        assert_eq!(
            pair.local_group_order(top, c.vertex_id("r").unwrap()).unwrap(),
            Int::from(3)
        );
        assert_eq!(pair.candidate_primes().unwrap(), BTreeSet::from([2, 3]));
    }

    #[test]
    fn poset_mode_pair_with_repeated_extra_label() {
        let poset = crate::complexes::tests::eye_cylinder_input();
        let complex = load_face_poset(&poset).unwrap();
        let pair = CharacteristicPair::new(
            complex,
            &BTreeMap::from([
                ("B".to_string(), iv(&[0, 0, 1])),
                ("T".to_string(), iv(&[0, 0, -1])),
                ("S1".to_string(), iv(&[1, 0, 0])),
                ("S2".to_string(), iv(&[0, 1, 0])),
            ]),
        )
        .unwrap();
        let c = pair.complex();
        let s1 = c.faces_by_facet_labels(&["S1"])[0];
        let induced = pair.induced(s1, None).unwrap();
        // Two distinct facets of s1 (the vertical edges) inherit from the
        // same original facet S2.
        let from_s2 = induced
            .source_facet
            .values()
            .filter(|&&f| c.facet_label(f) == "S2")
            .count();
        assert_eq!(from_s2, 2);
        for (_, g) in pair.corner_orders(s1).unwrap() {
            assert!(g.is_one());
        }
        assert!(pair.candidate_primes().unwrap().is_empty());
    }

    #[test]
    fn validation_errors() {
        let complex = build_face_lattice(&crate::complexes::tests::cube_input()).unwrap();
        let mut lambda: BTreeMap<String, IntVector> = [
            ("F1", iv(&[0, 1, 2])),
            ("F2", iv(&[0, 1, 0])),
            ("F3", iv(&[0, 0, 1])),
            ("F4", iv(&[0, 2, 1])),
            ("F5", iv(&[1, 0, 0])),
            ("F6", iv(&[2, 1, 0])),
        ]
        .into_iter()
        .map(|(k, v)| (k.to_string(), v))
        .collect();

        let mut missing = lambda.clone();
        missing.remove("F3");
        assert!(matches!(
            CharacteristicPair::new(complex.clone(), &missing),
            Err(CharPairError::MissingLambda(f)) if f == "F3"
        ));

        let mut short = lambda.clone();
        short.insert("F3".into(), iv(&[0, 1]));
        assert!(matches!(
            CharacteristicPair::new(complex.clone(), &short),
            Err(CharPairError::WrongLength { .. })
        ));

        let mut extra = lambda.clone();
        extra.insert("F9".into(), iv(&[1, 1, 1]));
        assert!(matches!(
            CharacteristicPair::new(complex.clone(), &extra),
            Err(CharPairError::UnknownFacetLabel(f)) if f == "F9"
        ));

        // λ(F2) = λ(F1) makes every corner on the edge F1 ∩ F2 singular.
        lambda.insert("F2".into(), iv(&[0, 1, 2]));
        assert!(matches!(
            CharacteristicPair::new(complex, &lambda),
            Err(CharPairError::SingularCorner(_))
        ));
    }

    #[test]
    fn pair_input_roundtrip() {
        let pair = cube_pair();
        let json = serde_json::to_string_pretty(&pair.to_input()).unwrap();
        let reparsed: PairInput = serde_json::from_str(&json).unwrap();
        let rebuilt = reparsed.build().unwrap();
        assert_eq!(rebuilt, pair);
        assert_eq!(serde_json::to_string_pretty(&rebuilt.to_input()).unwrap(), json);
    }
}
