//! Cohomology presentation data for certified toric pairs: Stanley–Reisner
//! generators (minimal non-faces of the facet set) and the linear relation
//! forms read off the characteristic vectors.
//!
//! When the local groups are nontrivial the integral cohomology is the
//! weighted Stanley–Reisner subring of this ambient presentation; the
//! integrality condition cutting out that subring is external data, so the
//! emitted presentation carries a caveat flag unless every local group is
//! trivial.

use crate::charpair::{CharPairError, CharacteristicPair};
use crate::complexes::{ComplexMode, FaceComplex};
use crate::linalg::{gcd_all, Int};
use crate::numio::JsonInt;
use crate::report::TorsionReport;
use itertools::Itertools;
use num_traits::One;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt::Write as _;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum PresentationError {
    #[error("Stanley-Reisner generators need facet intersections, which only polytope-mode complexes provide")]
    PosetMode,
    #[error("the torsion report is not fully certified; the presentation is only valid for certified pairs")]
    NotCertified,
    #[error(transparent)]
    Pair(#[from] CharPairError),
}

/// Facet ids sorted by label: the deterministic variable order `x_1 … x_m`.
pub fn variable_order(complex: &FaceComplex) -> Vec<usize> {
    let mut ids: Vec<usize> = (0..complex.facet_labels().len()).collect();
    ids.sort_by_key(|&i| complex.facet_label(i).to_string());
    ids
}

/// Minimal sets of facets with empty common intersection, each ascending,
/// listed by (size, lexicographic) order of facet id.
pub fn stanley_reisner_generators(
    complex: &FaceComplex,
) -> Result<Vec<Vec<usize>>, PresentationError> {
    if complex.mode() != ComplexMode::Polytope {
        return Err(PresentationError::PosetMode);
    }
    let m = complex.facet_labels().len();
    let facet_vertices: Vec<BTreeSet<usize>> = (0..m)
        .map(|i| {
            (0..complex.vertex_count())
                .filter(|&v| {
                    let face = complex.face(complex.vertex_face(v).expect("vertex face"));
                    face.facets.contains(&i)
                })
                .collect()
        })
        .collect();
    let mut generators: Vec<Vec<usize>> = Vec::new();
    for size in 2..=m {
        for subset in (0..m).combinations(size) {
            if generators
                .iter()
                .any(|g| g.iter().all(|i| subset.contains(i)))
            {
                continue;
            }
            let empty = {
                let mut common = facet_vertices[subset[0]].clone();
                for &i in &subset[1..] {
                    common = common.intersection(&facet_vertices[i]).copied().collect();
                }
                common.is_empty()
            };
            if empty {
                generators.push(subset);
            }
        }
    }
    Ok(generators)
}

/// The linear relation forms: form `j` assigns `x_i` the `j`-th coordinate
/// of `λ_i`, with variables in [`variable_order`].
pub fn linear_relation_forms(pair: &CharacteristicPair) -> Vec<Vec<Int>> {
    let order = variable_order(pair.complex());
    (0..pair.rank())
        .map(|j| {
            order
                .iter()
                .map(|&i| pair.lambda(i).entry(j).clone())
                .collect()
        })
        .collect()
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct PresentationData {
    /// Facet labels in variable order; variable `k` is `x_{variables[k]}`.
    pub variables: Vec<String>,
    /// Cohomological degree of every variable.
    pub variable_degree: usize,
    /// Stanley–Reisner generators as facet-label sets.
    pub sr_generators: Vec<Vec<String>>,
    /// One form per ambient coordinate; entry `k` is the coefficient of
    /// variable `k`.
    pub linear_forms: Vec<Vec<JsonInt>>,
    /// Set when some local group is nontrivial: the integral cohomology is
    /// then the weighted Stanley–Reisner subring of this presentation, whose
    /// integrality condition is not computed here.
    pub caveat_weighted_subring: bool,
    /// Facets whose characteristic vector is not primitive; the relations
    /// use the vectors as given.
    pub nonprimitive_lambda: Vec<String>,
}

fn format_form(variables: &[String], coeffs: &[JsonInt]) -> String {
    let mut out = String::new();
    for (label, c) in variables.iter().zip(coeffs) {
        if c.0 == Int::ZERO {
            continue;
        }
        let negative = c.0 < Int::ZERO;
        let magnitude = if negative { -c.0.clone() } else { c.0.clone() };
        if out.is_empty() {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        if !magnitude.is_one() {
            let _ = write!(out, "{magnitude}*");
        }
        let _ = write!(out, "x_{label}");
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl PresentationData {
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let vars: Vec<String> = self.variables.iter().map(|l| format!("x_{l}")).collect();
        let _ = writeln!(
            out,
            "Z[{}] / (I + J), every generator in degree {}",
            vars.join(", "),
            self.variable_degree
        );
        let monomials: Vec<String> = self
            .sr_generators
            .iter()
            .map(|g| g.iter().map(|l| format!("x_{l}")).join("*"))
            .collect();
        let _ = writeln!(out, "I (Stanley-Reisner): {}", monomials.join(", "));
        let _ = writeln!(out, "J (linear relations):");
        for form in &self.linear_forms {
            let _ = writeln!(out, "  {} = 0", format_form(&self.variables, form));
        }
        if self.caveat_weighted_subring {
            out.push_str(
                "note: nontrivial local groups present; the integral cohomology is the \
                 weighted Stanley-Reisner subring of this ring, whose integrality \
                 condition is external data and is not computed here\n",
            );
        } else {
            out.push_str("all local groups are trivial; the presentation holds over Z as written\n");
        }
        if !self.nonprimitive_lambda.is_empty() {
            let _ = writeln!(
                out,
                "warning: characteristic vectors on {} are not primitive; relations use them as given",
                self.nonprimitive_lambda
                    .iter()
                    .map(|l| format!("x_{l}"))
                    .join(", ")
            );
        }
        out
    }
}

/// Builds the presentation for a certified pair; refuses otherwise.
pub fn emit_presentation(
    pair: &CharacteristicPair,
    report: &TorsionReport,
) -> Result<PresentationData, PresentationError> {
    if !report.fully_certified() {
        return Err(PresentationError::NotCertified);
    }
    let complex = pair.complex();
    let order = variable_order(complex);
    let variables: Vec<String> = order
        .iter()
        .map(|&i| complex.facet_label(i).to_string())
        .collect();
    let position: std::collections::BTreeMap<usize, usize> =
        order.iter().enumerate().map(|(k, &i)| (i, k)).collect();
    let sr_generators = stanley_reisner_generators(complex)?
        .into_iter()
        .map(|mut g| {
            g.sort_by_key(|i| position[i]);
            g.iter()
                .map(|&i| complex.facet_label(i).to_string())
                .collect()
        })
        .collect();
    let linear_forms = linear_relation_forms(pair)
        .into_iter()
        .map(|form| form.into_iter().map(JsonInt).collect())
        .collect();
    let smooth = pair
        .full_order_table()?
        .iter()
        .all(|(_, _, g)| g.is_one());
    let nonprimitive_lambda = order
        .iter()
        .filter(|&&i| !gcd_all(pair.lambda(i).iter()).is_one())
        .map(|&i| complex.facet_label(i).to_string())
        .collect();
    Ok(PresentationData {
        variables,
        variable_degree: 2,
        sr_generators,
        linear_forms,
        caveat_weighted_subring: !smooth,
        nonprimitive_lambda,
    })
}
