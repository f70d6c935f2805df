//! Certification reports produced by the analyzers.
//!
//! JSON conventions: group orders are decimal strings (they are products of
//! determinants and can grow), primes and dimensions are plain numbers, and
//! the per-prime verdict map is keyed by the stringified prime.  All maps are
//! ordered, so serialization is deterministic.

use crate::numio::JsonInt;
use num_traits::One;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt::Write;

/// One deletion step of a retraction sequence: the removed free vertex, the
/// unique maximal face at it, and the local group order there.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct StageRecord {
    pub vertex: String,
    pub face: String,
    pub face_dim: usize,
    pub face_facets: Vec<String>,
    pub g: JsonInt,
}

/// A full retraction sequence in deletion order; it certifies a prime when
/// every `g` is coprime to it.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct RetractionWitness {
    pub order: Vec<StageRecord>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum PrimeVerdict {
    /// A compatible retraction sequence exists: integral cohomology is
    /// concentrated in even degrees with no p-torsion.
    Certified { witness: RetractionWitness },
    /// No certificate.  `exhausted` distinguishes a fully explored search
    /// space from one cut short by the node budget.
    Inconclusive { exhausted: bool },
}

impl PrimeVerdict {
    pub fn is_certified(&self) -> bool {
        matches!(self, PrimeVerdict::Certified { .. })
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct FreeVertexRecord {
    pub vertex: String,
    pub face: String,
    pub g: JsonInt,
}

/// Status of the gcd condition: at every reachable deletion stage of
/// dimension above one, the local group orders of the free vertices must
/// have gcd one.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum BssStatus {
    Holds,
    Fails {
        deleted: Vec<String>,
        free_vertices: Vec<FreeVertexRecord>,
        gcd: JsonInt,
    },
    /// Some reachable stage has several vertices but no free one, so no
    /// retraction sequence passes through it.
    NotAdmissible { deleted: Vec<String> },
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct Summary {
    pub certified_primes: Vec<u64>,
    pub inconclusive_primes: Vec<u64>,
    /// Whether the unrestricted retraction certifies every prime outside
    /// `candidate_primes`.
    pub other_primes_certified: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct TorsionReport {
    /// `"toric_orbifold"` for polytope-mode input, `"torus_orbifold"` for
    /// poset-mode input.
    pub kind: String,
    pub dimension: usize,
    pub vertex_count: usize,
    /// Primes dividing some local group order; all others are certified
    /// whenever any retraction sequence exists at all.
    pub candidate_primes: Vec<u64>,
    /// Search result with no prime restriction.
    pub base_retraction: PrimeVerdict,
    pub bss: BssStatus,
    pub verdicts: BTreeMap<u64, PrimeVerdict>,
    pub summary: Summary,
}

fn list(primes: &[u64]) -> String {
    if primes.is_empty() {
        "none".to_string()
    } else {
        primes
            .iter()
            .map(u64::to_string)
            .collect::<Vec<_>>()
            .join(", ")
    }
}

impl TorsionReport {
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{} over a {}-dimensional complex with {} vertices",
            self.kind, self.dimension, self.vertex_count
        );
        let _ = writeln!(out, "candidate primes: {}", list(&self.candidate_primes));
        match &self.base_retraction {
            PrimeVerdict::Certified { witness } => {
                let _ = writeln!(
                    out,
                    "retraction sequence: found ({} stages)",
                    witness.order.len()
                );
            }
            PrimeVerdict::Inconclusive { exhausted } => {
                let _ = writeln!(
                    out,
                    "retraction sequence: none{}",
                    if *exhausted { "" } else { " within the node budget" }
                );
            }
        }
        match &self.bss {
            BssStatus::Holds => {
                let _ = writeln!(out, "gcd condition: holds at every reachable stage");
            }
            BssStatus::Fails {
                deleted,
                free_vertices,
                gcd,
            } => {
                let _ = writeln!(out, "gcd condition: fails");
                let _ = writeln!(
                    out,
                    "  after deleting [{}]: gcd of free-vertex orders is {}",
                    deleted.join(", "),
                    gcd
                );
                for fv in free_vertices {
                    let _ = writeln!(out, "    {} at {} has g = {}", fv.vertex, fv.face, fv.g);
                }
            }
            BssStatus::NotAdmissible { deleted } => {
                let _ = writeln!(
                    out,
                    "gcd condition: not admissible; no free vertex after deleting [{}]",
                    deleted.join(", ")
                );
            }
        }
        for (p, verdict) in &self.verdicts {
            match verdict {
                PrimeVerdict::Certified { witness } => {
                    let _ = writeln!(out, "p = {p}: certified; delete in this order:");
                    for s in &witness.order {
                        let _ = writeln!(
                            out,
                            "    {} at {} (dim {}, g = {})",
                            s.vertex, s.face, s.face_dim, s.g
                        );
                    }
                }
                PrimeVerdict::Inconclusive { exhausted } => {
                    let _ = writeln!(
                        out,
                        "p = {p}: inconclusive ({})",
                        if *exhausted {
                            "search space exhausted"
                        } else {
                            "node budget reached"
                        }
                    );
                }
            }
        }
        let _ = writeln!(
            out,
            "summary: certified {}; inconclusive {}; other primes {}",
            list(&self.summary.certified_primes),
            list(&self.summary.inconclusive_primes),
            if self.summary.other_primes_certified {
                "certified"
            } else {
                "not certified"
            }
        );
        out
    }

    /// All requested primes certified (and, with no explicit prime list, the
    /// rest of the primes covered by the base retraction).
    pub fn fully_certified(&self) -> bool {
        self.verdicts.values().all(PrimeVerdict::is_certified)
            && self.summary.other_primes_certified
    }
}

/// Checks that a witness is internally coherent for a prime: orders coprime
/// to `p` throughout.
pub fn witness_orders_coprime(witness: &RetractionWitness, p: u64) -> bool {
    use num_integer::Integer;
    let p = crate::linalg::Int::from(p);
    witness
        .order
        .iter()
        .all(|s| s.g.0.gcd(&p).is_one())
}
