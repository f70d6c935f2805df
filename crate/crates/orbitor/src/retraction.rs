//! Retraction sequences: orders in which free vertices can be deleted from a
//! face complex until a single vertex remains, together with the local group
//! orders collected along the way.
//!
//! A retraction sequence whose orders are all coprime to a prime `p`
//! certifies that the associated orbifold has integral cohomology
//! concentrated in even degrees with no `p`-torsion.  The search for such a
//! sequence is a depth-first traversal over deletion states with memoized
//! failures; independently, the gcd condition checks every reachable stage
//! at once.

use crate::charpair::{face_name, CharPairError, CharacteristicPair};
use crate::complexes::{
    delete_vertex_subcomplex, free_vertices, FaceComplex, FaceKey, FreeVertex,
};
use crate::linalg::{gcd_all, Int};
use crate::numio::JsonInt;
use crate::report::{
    BssStatus, FreeVertexRecord, PrimeVerdict, RetractionWitness, StageRecord, Summary,
    TorsionReport,
};
use num_traits::{One, Zero};
use std::collections::{BTreeMap, BTreeSet, VecDeque};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum AnalyzeError {
    #[error(transparent)]
    Pair(#[from] CharPairError),
    #[error("{0} is not a prime")]
    NotPrime(u64),
}

/// One deletion step: the removed vertex and the unique maximal face at it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RetractionStep {
    pub vertex: usize,
    pub face: FaceKey,
}

/// A complete deletion order down to a single vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RetractionSequence {
    pub steps: Vec<RetractionStep>,
}

impl RetractionSequence {
    /// Dimensions of the maximal faces, in deletion order.  As a multiset
    /// this is an invariant of the complex (the h-vector for polytopes).
    pub fn face_dims(&self) -> Vec<usize> {
        self.steps.iter().map(|s| s.face.dim).collect()
    }
}

/// Outcome of a prime-compatible search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchResult {
    Found {
        sequence: RetractionSequence,
        orders: Vec<Int>,
    },
    /// The full state space holds no compatible sequence.
    Exhausted,
    /// The node budget was reached before the search completed.
    BudgetExceeded,
}

/// Outcome of the gcd condition check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BssOutcome {
    Holds,
    Fails {
        deleted: Vec<usize>,
        free: Vec<(FreeVertex, FaceKey, Int)>,
        gcd: Int,
    },
    NotAdmissible { deleted: Vec<usize> },
}

/// Caches local group orders, keyed by the face (as a face of the original
/// complex) and the vertex.
struct OrderTable<'a> {
    pair: &'a CharacteristicPair,
    face_index: BTreeMap<FaceKey, usize>,
    cache: BTreeMap<(usize, usize), Int>,
}

impl<'a> OrderTable<'a> {
    fn new(pair: &'a CharacteristicPair) -> Self {
        let face_index = (0..pair.complex().faces().len())
            .map(|i| (pair.complex().face_key(i), i))
            .collect();
        OrderTable {
            pair,
            face_index,
            cache: BTreeMap::new(),
        }
    }

    /// `g_E(v)` for a face of a deletion stage, resolved in the original
    /// complex (stages are subcomplexes, so the face data is unchanged).
    fn order(&mut self, face: &FaceKey, vertex: usize) -> Result<Int, CharPairError> {
        let &idx = self
            .face_index
            .get(face)
            .expect("stage faces are faces of the original complex");
        if let Some(g) = self.cache.get(&(idx, vertex)) {
            return Ok(g.clone());
        }
        let g = self.pair.local_group_order(idx, vertex)?;
        self.cache.insert((idx, vertex), g.clone());
        Ok(g)
    }
}

enum Inner {
    Found(Vec<RetractionStep>, Vec<Int>),
    Dead,
    Budget,
}

struct Searcher<'a> {
    orders: OrderTable<'a>,
    prime: Option<Int>,
    budget: Option<u64>,
    nodes: u64,
    failed: BTreeSet<BTreeSet<usize>>,
}

impl Searcher<'_> {
    /// Free vertices with order coprime to the prime, cheapest order first.
    fn candidates(
        &mut self,
        stage: &FaceComplex,
    ) -> Result<Vec<(Int, FreeVertex, FaceKey)>, CharPairError> {
        let mut out = Vec::new();
        for fv in free_vertices(stage) {
            let key = stage.face_key(fv.max_face);
            let g = self.orders.order(&key, fv.vertex)?;
            if let Some(p) = &self.prime {
                if (&g % p).is_zero() {
                    continue;
                }
            }
            out.push((g, fv, key));
        }
        out.sort_by(|a, b| (&a.0, a.1.vertex).cmp(&(&b.0, b.1.vertex)));
        Ok(out)
    }

    fn search(
        &mut self,
        stage: &FaceComplex,
        deleted: &BTreeSet<usize>,
    ) -> Result<Inner, CharPairError> {
        if self.failed.contains(deleted) {
            return Ok(Inner::Dead);
        }
        self.nodes += 1;
        if self.budget.is_some_and(|b| self.nodes > b) {
            return Ok(Inner::Budget);
        }
        let candidates = self.candidates(stage)?;
        if stage.vertex_count() == 1 {
            return Ok(match candidates.into_iter().next() {
                Some((g, fv, key)) => Inner::Found(
                    vec![RetractionStep {
                        vertex: fv.vertex,
                        face: key,
                    }],
                    vec![g],
                ),
                None => {
                    self.failed.insert(deleted.clone());
                    Inner::Dead
                }
            });
        }
        for (g, fv, key) in candidates {
            let next = delete_vertex_subcomplex(stage, fv.vertex)
                .expect("deleting a free vertex from a multi-vertex stage");
            let mut next_deleted = deleted.clone();
            next_deleted.insert(fv.vertex);
            match self.search(&next, &next_deleted)? {
                Inner::Found(mut steps, mut orders) => {
                    steps.insert(
                        0,
                        RetractionStep {
                            vertex: fv.vertex,
                            face: key,
                        },
                    );
                    orders.insert(0, g);
                    return Ok(Inner::Found(steps, orders));
                }
                Inner::Budget => return Ok(Inner::Budget),
                Inner::Dead => {}
            }
        }
        self.failed.insert(deleted.clone());
        Ok(Inner::Dead)
    }
}

/// Searches for a retraction sequence whose orders are all coprime to
/// `prime` (or for any retraction sequence when `prime` is `None`).  The
/// traversal is deterministic: free vertices are tried in ascending
/// `(order, vertex)`.
pub fn find_prime_compatible(
    pair: &CharacteristicPair,
    prime: Option<u64>,
    node_budget: Option<u64>,
) -> Result<SearchResult, CharPairError> {
    let mut searcher = Searcher {
        orders: OrderTable::new(pair),
        prime: prime.map(Int::from),
        budget: node_budget,
        nodes: 0,
        failed: BTreeSet::new(),
    };
    Ok(
        match searcher.search(pair.complex(), &BTreeSet::new())? {
            Inner::Found(steps, orders) => SearchResult::Found {
                sequence: RetractionSequence { steps },
                orders,
            },
            Inner::Dead => SearchResult::Exhausted,
            Inner::Budget => SearchResult::BudgetExceeded,
        },
    )
}

/// Enumerates retraction sequences of the bare complex (no order
/// constraints), depth-first in ascending vertex order, up to `limit`.
pub fn enumerate_retractions(complex: &FaceComplex, limit: usize) -> Vec<RetractionSequence> {
    fn go(
        stage: &FaceComplex,
        prefix: &mut Vec<RetractionStep>,
        out: &mut Vec<RetractionSequence>,
        limit: usize,
    ) {
        if out.len() >= limit {
            return;
        }
        let free = free_vertices(stage);
        if stage.vertex_count() == 1 {
            if let Some(fv) = free.first() {
                let mut steps = prefix.clone();
                steps.push(RetractionStep {
                    vertex: fv.vertex,
                    face: stage.face_key(fv.max_face),
                });
                out.push(RetractionSequence { steps });
            }
            return;
        }
        for fv in free {
            let next = delete_vertex_subcomplex(stage, fv.vertex)
                .expect("deleting a free vertex from a multi-vertex stage");
            prefix.push(RetractionStep {
                vertex: fv.vertex,
                face: stage.face_key(fv.max_face),
            });
            go(&next, prefix, out, limit);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(complex, &mut Vec::new(), &mut out, limit);
    out
}

/// Replays a vertex order, returning the sequence when each vertex is free
/// at its turn and the order is complete.
pub fn replay(complex: &FaceComplex, order: &[usize]) -> Option<RetractionSequence> {
    if order.len() != complex.vertex_count() {
        return None;
    }
    let mut stage = complex.clone();
    let mut steps = Vec::new();
    for (i, &v) in order.iter().enumerate() {
        let fv = free_vertices(&stage).into_iter().find(|fv| fv.vertex == v)?;
        steps.push(RetractionStep {
            vertex: v,
            face: stage.face_key(fv.max_face),
        });
        if i + 1 < order.len() {
            stage = delete_vertex_subcomplex(&stage, v).ok()?;
        }
    }
    Some(RetractionSequence { steps })
}

/// The local group order collected at each step of a sequence.
pub fn annotate_orders(
    pair: &CharacteristicPair,
    sequence: &RetractionSequence,
) -> Result<Vec<Int>, CharPairError> {
    let mut table = OrderTable::new(pair);
    sequence
        .steps
        .iter()
        .map(|s| table.order(&s.face, s.vertex))
        .collect()
}

/// Checks the gcd condition over every reachable deletion stage, breadth
/// first, reporting the first failing stage.
pub fn check_bss(pair: &CharacteristicPair) -> Result<BssOutcome, CharPairError> {
    let mut table = OrderTable::new(pair);
    let mut seen: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
    let mut queue: VecDeque<Vec<usize>> = VecDeque::new();
    seen.insert(BTreeSet::new());
    queue.push_back(Vec::new());
    while let Some(deleted) = queue.pop_front() {
        let deleted_set: BTreeSet<usize> = deleted.iter().copied().collect();
        let stage = pair.complex().without_vertices(&deleted_set)?;
        let free = free_vertices(&stage);
        if stage.vertex_count() > 1 && free.is_empty() {
            return Ok(BssOutcome::NotAdmissible { deleted });
        }
        if stage.dimension() > 1 {
            let mut annotated = Vec::new();
            for fv in &free {
                let key = stage.face_key(fv.max_face);
                let g = table.order(&key, fv.vertex)?;
                annotated.push((*fv, key, g));
            }
            let gcd = gcd_all(annotated.iter().map(|(_, _, g)| g));
            if !gcd.is_one() {
                return Ok(BssOutcome::Fails {
                    deleted,
                    free: annotated,
                    gcd,
                });
            }
        }
        if stage.vertex_count() > 1 {
            for fv in free {
                let mut next_set = deleted_set.clone();
                next_set.insert(fv.vertex);
                if seen.insert(next_set) {
                    let mut next = deleted.clone();
                    next.push(fv.vertex);
                    queue.push_back(next);
                }
            }
        }
    }
    Ok(BssOutcome::Holds)
}

// ---------------------------------------------------------------------------
// Report assembly
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, Default)]
pub struct AnalyzeOptions {
    /// Primes to examine; defaults to the primes dividing some local group
    /// order.
    pub primes: Option<Vec<u64>>,
    /// Cap on search nodes per prime.
    pub node_budget: Option<u64>,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1 + (d & 1);
    }
    true
}

/// Renders a sequence with its orders for a report.
pub fn witness_records(
    pair: &CharacteristicPair,
    sequence: &RetractionSequence,
    orders: &[Int],
) -> RetractionWitness {
    let complex = pair.complex();
    let order = sequence
        .steps
        .iter()
        .zip(orders)
        .map(|(s, g)| {
            let idx = complex
                .face_by_key(&s.face)
                .expect("witness faces come from this complex");
            StageRecord {
                vertex: complex.vertex_name(s.vertex).to_string(),
                face: face_name(complex, idx),
                face_dim: s.face.dim,
                face_facets: s
                    .face
                    .facets
                    .iter()
                    .map(|&f| complex.facet_label(f).to_string())
                    .collect(),
                g: JsonInt(g.clone()),
            }
        })
        .collect();
    RetractionWitness { order }
}

fn verdict_of(pair: &CharacteristicPair, result: SearchResult) -> PrimeVerdict {
    match result {
        SearchResult::Found { sequence, orders } => PrimeVerdict::Certified {
            witness: witness_records(pair, &sequence, &orders),
        },
        SearchResult::Exhausted => PrimeVerdict::Inconclusive { exhausted: true },
        SearchResult::BudgetExceeded => PrimeVerdict::Inconclusive { exhausted: false },
    }
}

fn bss_to_status(pair: &CharacteristicPair, outcome: BssOutcome) -> BssStatus {
    let complex = pair.complex();
    let names = |ids: &[usize]| {
        ids.iter()
            .map(|&v| complex.vertex_name(v).to_string())
            .collect::<Vec<_>>()
    };
    match outcome {
        BssOutcome::Holds => BssStatus::Holds,
        BssOutcome::NotAdmissible { deleted } => BssStatus::NotAdmissible {
            deleted: names(&deleted),
        },
        BssOutcome::Fails { deleted, free, gcd } => BssStatus::Fails {
            deleted: names(&deleted),
            free_vertices: free
                .into_iter()
                .map(|(fv, key, g)| {
                    let idx = complex
                        .face_by_key(&key)
                        .expect("stage faces come from this complex");
                    FreeVertexRecord {
                        vertex: complex.vertex_name(fv.vertex).to_string(),
                        face: face_name(complex, idx),
                        g: JsonInt(g),
                    }
                })
                .collect(),
            gcd: JsonInt(gcd),
        },
    }
}

/// Runs the full analysis: candidate primes, unrestricted retraction, the
/// gcd condition, and a per-prime certificate search.
pub fn analyze(
    pair: &CharacteristicPair,
    options: &AnalyzeOptions,
) -> Result<TorsionReport, AnalyzeError> {
    let complex = pair.complex();
    let candidates: Vec<u64> = pair.candidate_primes()?.into_iter().collect();
    let base = find_prime_compatible(pair, None, options.node_budget)?;
    let base_verdict = verdict_of(pair, base);
    let bss = bss_to_status(pair, check_bss(pair)?);

    let requested: Vec<u64> = match &options.primes {
        Some(ps) => {
            for &p in ps {
                if !is_prime(p) {
                    return Err(AnalyzeError::NotPrime(p));
                }
            }
            ps.iter().copied().collect::<BTreeSet<_>>().into_iter().collect()
        }
        None => candidates.clone(),
    };

    let mut verdicts = BTreeMap::new();
    for &p in &requested {
        let verdict = if candidates.contains(&p) {
            verdict_of(pair, find_prime_compatible(pair, Some(p), options.node_budget)?)
        } else {
            // No local group order is divisible by p, so the unrestricted
            // search already answers for p.
            base_verdict.clone()
        };
        verdicts.insert(p, verdict);
    }

    let certified_primes: Vec<u64> = verdicts
        .iter()
        .filter(|(_, v)| v.is_certified())
        .map(|(&p, _)| p)
        .collect();
    let inconclusive_primes: Vec<u64> = verdicts
        .iter()
        .filter(|(_, v)| !v.is_certified())
        .map(|(&p, _)| p)
        .collect();
    Ok(TorsionReport {
        kind: match complex.mode() {
            crate::complexes::ComplexMode::Polytope => "toric_orbifold".to_string(),
            crate::complexes::ComplexMode::Poset => "torus_orbifold".to_string(),
        },
        dimension: complex.dimension(),
        vertex_count: complex.vertex_count(),
        candidate_primes: candidates,
        base_retraction: base_verdict,
        bss,
        verdicts,
        summary: Summary {
            certified_primes,
            inconclusive_primes,
            other_primes_certified: true,
        },
    })
    .map(|mut r| {
        r.summary.other_primes_certified = r.base_retraction.is_certified();
        r
    })
}
