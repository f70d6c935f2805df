//! Abstract q-CW building sequences: spaces assembled by attaching cones on
//! quotients of spheres by free linear actions of finite groups.
//!
//! A building sequence is a list of cells, each a quotient `e^d / G` given
//! by its real dimension and the order of `G`.  Quotients of discs of
//! dimension at most two are again discs, so those orders are normalized to
//! one on construction.  For sequences whose cells all have even dimension,
//! cohomology with coefficients coprime to every group order is free and
//! concentrated in even degrees; mixed sequences additionally need the
//! attaching degrees.

use crate::charpair::{CharPairError, CharacteristicPair};
use crate::linalg::{prime_factors, Int, LinalgError};
use crate::numio::JsonInt;
use crate::retraction::{is_prime, RetractionSequence};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt::Write as _;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum QcwError {
    #[error("a building sequence needs at least one cell")]
    Empty,
    #[error("the first cell must be a point, got dimension {0}")]
    FirstCellNotPoint(usize),
    #[error("cell {index} has group order {order}, which is not positive")]
    BadOrder { index: usize, order: Int },
    #[error("cell {0} is a point and cannot carry an attaching degree")]
    DegreeOnPoint(usize),
    #[error("cell {index} has odd dimension {dim}, but an even sequence was required")]
    OddCell { index: usize, dim: usize },
    #[error("cell {0} needs an attaching degree (its boundary has free top cohomology)")]
    MissingDegree(usize),
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("all-primes analysis over a family needs every sequence even")]
    MixedFamily,
    #[error("the sequences in the family have different cell counts per dimension")]
    InconsistentFamily,
    #[error("prefix length {prefix} is out of range for {cells} cells")]
    BadPrefix { prefix: usize, cells: usize },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Pair(#[from] CharPairError),
}

/// One cell `e^dim / G`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellSpec {
    pub dim: usize,
    /// Order of the finite group acting freely and linearly on the boundary
    /// sphere.  Defaults to 1 (an honest cell).
    #[serde(default = "one")]
    pub order: JsonInt,
    /// Degree of the attaching map on top cohomology; only consulted for
    /// mixed-dimension sequences.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<JsonInt>,
    /// Whether the group action on the boundary sphere preserves
    /// orientation.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orientation_preserving: Option<bool>,
}

fn one() -> JsonInt {
    JsonInt(Int::one())
}

/// A validated building sequence.  Quotients of discs of dimension at most
/// two are discs again, so such orders are normalized to one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BuildingSequence {
    cells: Vec<CellSpec>,
}

impl BuildingSequence {
    pub fn new(mut cells: Vec<CellSpec>) -> Result<Self, QcwError> {
        if cells.is_empty() {
            return Err(QcwError::Empty);
        }
        if cells[0].dim != 0 {
            return Err(QcwError::FirstCellNotPoint(cells[0].dim));
        }
        for (index, cell) in cells.iter_mut().enumerate() {
            if cell.order.0 <= Int::zero() {
                return Err(QcwError::BadOrder {
                    index,
                    order: cell.order.0.clone(),
                });
            }
            if cell.dim == 0 && cell.degree.is_some() {
                return Err(QcwError::DegreeOnPoint(index));
            }
            if cell.dim <= 2 {
                cell.order = one();
            }
        }
        Ok(BuildingSequence { cells })
    }

    pub fn cells(&self) -> &[CellSpec] {
        &self.cells
    }

    pub fn is_even(&self) -> bool {
        self.cells.iter().all(|c| c.dim % 2 == 0)
    }

    /// Number of cells in each dimension, up to the maximal one.
    pub fn cell_counts_by_dim(&self) -> Vec<usize> {
        let max = self.cells.iter().map(|c| c.dim).max().unwrap_or(0);
        let mut counts = vec![0usize; max + 1];
        for c in &self.cells {
            counts[c.dim] += 1;
        }
        counts
    }

    /// Primes dividing some (normalized) group order.
    pub fn order_primes(&self) -> Result<BTreeSet<u64>, QcwError> {
        let mut out = BTreeSet::new();
        for c in &self.cells {
            if !c.order.0.is_one() {
                out.extend(prime_factors(&c.order.0)?);
            }
        }
        Ok(out)
    }
}

/// A cell blocking certification at a prime.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CellObstruction {
    Order {
        sequence: usize,
        index: usize,
        order: JsonInt,
    },
    Degree {
        sequence: usize,
        index: usize,
        degree: JsonInt,
    },
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum QcwVerdict {
    /// Integral cohomology has no p-torsion; when `even` it is moreover
    /// free and concentrated in even degrees with the given Betti numbers.
    Certified {
        even: bool,
        #[serde(skip_serializing_if = "Option::is_none")]
        betti: Option<Vec<usize>>,
    },
    Inconclusive { obstructions: Vec<CellObstruction> },
}

impl QcwVerdict {
    pub fn is_certified(&self) -> bool {
        matches!(self, QcwVerdict::Certified { .. })
    }
}

fn divides(p: u64, n: &Int) -> bool {
    (n % Int::from(p)).is_zero()
}

/// Certification at `p` for an even building sequence: every group order
/// must be coprime to `p`.
pub fn analyze_even(seq: &BuildingSequence, p: u64) -> Result<QcwVerdict, QcwError> {
    if !is_prime(p) {
        return Err(QcwError::NotPrime(p));
    }
    if let Some((index, cell)) = seq.cells.iter().enumerate().find(|(_, c)| c.dim % 2 != 0) {
        return Err(QcwError::OddCell {
            index,
            dim: cell.dim,
        });
    }
    let obstructions: Vec<CellObstruction> = seq
        .cells
        .iter()
        .enumerate()
        .filter(|(_, c)| divides(p, &c.order.0))
        .map(|(index, c)| CellObstruction::Order {
            sequence: 0,
            index,
            order: c.order.clone(),
        })
        .collect();
    Ok(if obstructions.is_empty() {
        QcwVerdict::Certified {
            even: true,
            betti: Some(seq.cell_counts_by_dim()),
        }
    } else {
        QcwVerdict::Inconclusive { obstructions }
    })
}

/// Whether a cell's attaching degree is irrelevant: the boundary quotient
/// has finite top cohomology exactly when the group is nontrivial and is
/// known to reverse orientation.
fn degree_exempt(cell: &CellSpec) -> bool {
    !cell.order.0.is_one() && cell.orientation_preserving == Some(false)
}

/// Certification at `p` for an arbitrary building sequence.  Even sequences
/// delegate to [`analyze_even`]; otherwise every positive-dimensional cell
/// needs its attaching degree (zero or coprime to `p`) unless the degree is
/// irrelevant, and all group orders must still be coprime to `p`.
pub fn analyze_general(seq: &BuildingSequence, p: u64) -> Result<QcwVerdict, QcwError> {
    if seq.is_even() {
        return analyze_even(seq, p);
    }
    if !is_prime(p) {
        return Err(QcwError::NotPrime(p));
    }
    let mut obstructions = Vec::new();
    for (index, cell) in seq.cells.iter().enumerate() {
        if divides(p, &cell.order.0) {
            obstructions.push(CellObstruction::Order {
                sequence: 0,
                index,
                order: cell.order.clone(),
            });
        }
        if cell.dim == 0 || degree_exempt(cell) {
            continue;
        }
        match &cell.degree {
            None => return Err(QcwError::MissingDegree(index)),
            Some(d) if d.0.is_zero() => {}
            Some(d) if !divides(p, &d.0) => {}
            Some(d) => obstructions.push(CellObstruction::Degree {
                sequence: 0,
                index,
                degree: d.clone(),
            }),
        }
    }
    Ok(if obstructions.is_empty() {
        QcwVerdict::Certified {
            even: false,
            betti: None,
        }
    } else {
        QcwVerdict::Inconclusive { obstructions }
    })
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct AllPrimesReport {
    /// Primes with no certificate from any provided sequence.
    pub inconclusive_primes: Vec<u64>,
    /// Cell counts per dimension, for even sequences.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub betti: Option<Vec<usize>>,
}

/// All-primes certification over a family of even building sequences for
/// the same space: a prime is inconclusive only when it divides a group
/// order in every sequence.
pub fn all_primes_even(family: &[BuildingSequence]) -> Result<AllPrimesReport, QcwError> {
    if family.is_empty() {
        return Err(QcwError::Empty);
    }
    let mut betti: Option<Vec<usize>> = None;
    let mut inconclusive: Option<BTreeSet<u64>> = None;
    for seq in family {
        if !seq.is_even() {
            return Err(QcwError::MixedFamily);
        }
        let counts = seq.cell_counts_by_dim();
        match &betti {
            None => betti = Some(counts),
            Some(b) if *b == counts => {}
            Some(_) => return Err(QcwError::InconsistentFamily),
        }
        let primes = seq.order_primes()?;
        inconclusive = Some(match inconclusive {
            None => primes,
            Some(acc) => acc.intersection(&primes).copied().collect(),
        });
    }
    Ok(AllPrimesReport {
        inconclusive_primes: inconclusive.unwrap_or_default().into_iter().collect(),
        betti,
    })
}

/// Primes obstructing a single (possibly mixed) sequence: divisors of the
/// group orders together with divisors of the nonzero non-unit degrees.
pub fn all_primes_general(seq: &BuildingSequence) -> Result<AllPrimesReport, QcwError> {
    if seq.is_even() {
        return all_primes_even(std::slice::from_ref(seq));
    }
    let mut primes = seq.order_primes()?;
    for (index, cell) in seq.cells.iter().enumerate() {
        if cell.dim == 0 || degree_exempt(cell) {
            continue;
        }
        match &cell.degree {
            None => return Err(QcwError::MissingDegree(index)),
            Some(d) if d.0.is_zero() || d.0.abs().is_one() => {}
            Some(d) => primes.extend(prime_factors(&d.0.abs())?),
        }
    }
    Ok(AllPrimesReport {
        inconclusive_primes: primes.into_iter().collect(),
        betti: None,
    })
}

/// Once `p`-torsion is present after the first `prefix` cells, attaching
/// further cells whose group orders are coprime to `p` keeps the sequence's
/// later groups free of fresh obstructions; this checks that side condition
/// for the remaining cells.
pub fn torsion_persists(
    seq: &BuildingSequence,
    p: u64,
    prefix: usize,
) -> Result<bool, QcwError> {
    if !is_prime(p) {
        return Err(QcwError::NotPrime(p));
    }
    if prefix == 0 || prefix > seq.cells.len() {
        return Err(QcwError::BadPrefix {
            prefix,
            cells: seq.cells.len(),
        });
    }
    Ok(seq.cells[prefix..].iter().all(|c| !divides(p, &c.order.0)))
}

/// One cohomology group in a boundary profile.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CohEntry {
    Zero,
    Free(usize),
    Torsion(Int),
    FreeOrFinite,
}

impl std::fmt::Display for CohEntry {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CohEntry::Zero => f.write_str("0"),
            CohEntry::Free(1) => f.write_str("Z"),
            CohEntry::Free(r) => write!(f, "Z^{r}"),
            CohEntry::Torsion(m) => write!(f, "Z/{m}"),
            CohEntry::FreeOrFinite => f.write_str("Z or finite"),
        }
    }
}

/// Integral cohomology of the boundary `S^(dim-1) / G` of a cell, degree by
/// degree: `Z` in degree zero, the group order in the intermediate even
/// degrees, and at the top `Z` for an orientation-preserving action, `Z/2`
/// for an orientation-reversing one, and undetermined otherwise.
pub fn boundary_profile(cell: &CellSpec) -> Vec<CohEntry> {
    let order = if cell.dim <= 2 {
        Int::one()
    } else {
        cell.order.0.clone()
    };
    match cell.dim {
        0 => Vec::new(),
        1 => vec![CohEntry::Free(2)],
        2 => vec![CohEntry::Free(1), CohEntry::Free(1)],
        n => {
            let top = n - 1;
            (0..=top)
                .map(|i| {
                    if i == 0 {
                        CohEntry::Free(1)
                    } else if i == top {
                        if order.is_one() || cell.orientation_preserving == Some(true) {
                            CohEntry::Free(1)
                        } else if cell.orientation_preserving == Some(false) {
                            CohEntry::Torsion(Int::from(2))
                        } else {
                            CohEntry::FreeOrFinite
                        }
                    } else if i % 2 == 0 && !order.is_one() {
                        CohEntry::Torsion(order.clone())
                    } else {
                        CohEntry::Zero
                    }
                })
                .collect()
        }
    }
}

/// The building sequence of the orbifold a retraction sequence retracts:
/// cells in reverse deletion order, one of real dimension `2 dim E` and
/// group order `g_E(v)` per stage.
pub fn from_retraction(
    pair: &CharacteristicPair,
    sequence: &RetractionSequence,
    orders: &[Int],
) -> Result<BuildingSequence, QcwError> {
    let _ = pair;
    let cells = sequence
        .steps
        .iter()
        .zip(orders)
        .rev()
        .map(|(step, g)| CellSpec {
            dim: 2 * step.face.dim,
            order: JsonInt(g.clone()),
            degree: None,
            orientation_preserving: None,
        })
        .collect();
    BuildingSequence::new(cells)
}

// ---------------------------------------------------------------------------
// JSON schema and report
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct SequenceInput {
    pub cells: Vec<CellSpec>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct FamilyInput {
    pub sequences: Vec<Vec<CellSpec>>,
}

/// Either a single building sequence or a family of alternatives for the
/// same space.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(untagged)]
pub enum QcwInput {
    Sequence(SequenceInput),
    Family(FamilyInput),
}

impl QcwInput {
    pub fn build(&self) -> Result<Vec<BuildingSequence>, QcwError> {
        match self {
            QcwInput::Sequence(s) => Ok(vec![BuildingSequence::new(s.cells.clone())?]),
            QcwInput::Family(f) => f
                .sequences
                .iter()
                .map(|cells| BuildingSequence::new(cells.clone()))
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct QcwReport {
    pub kind: String,
    pub sequence_count: usize,
    pub even: bool,
    pub verdicts: std::collections::BTreeMap<u64, QcwVerdict>,
    pub all_primes: AllPrimesReport,
}

impl QcwReport {
    pub fn fully_certified(&self) -> bool {
        let verdicts_ok = self.verdicts.values().all(QcwVerdict::is_certified);
        if self.verdicts.is_empty() {
            self.all_primes.inconclusive_primes.is_empty()
        } else {
            verdicts_ok
        }
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "q-CW building sequence{} ({} given), {} dimensions",
            if self.sequence_count == 1 { "" } else { "s" },
            self.sequence_count,
            if self.even { "all even" } else { "mixed" }
        );
        for (p, verdict) in &self.verdicts {
            match verdict {
                QcwVerdict::Certified { even, betti } => {
                    let _ = write!(out, "p = {p}: certified, no {p}-torsion");
                    if *even {
                        let _ = write!(out, ", even cohomology");
                    }
                    if let Some(b) = betti {
                        let betti_str: Vec<String> = b.iter().map(usize::to_string).collect();
                        let _ = write!(out, ", betti [{}]", betti_str.join(", "));
                    }
                    let _ = writeln!(out);
                }
                QcwVerdict::Inconclusive { obstructions } => {
                    let _ = writeln!(out, "p = {p}: inconclusive");
                    for o in obstructions {
                        match o {
                            CellObstruction::Order {
                                sequence,
                                index,
                                order,
                            } => {
                                let _ = writeln!(
                                    out,
                                    "    sequence {sequence}, cell {index}: group order {order} divisible by {p}"
                                );
                            }
                            CellObstruction::Degree {
                                sequence,
                                index,
                                degree,
                            } => {
                                let _ = writeln!(
                                    out,
                                    "    sequence {sequence}, cell {index}: degree {degree} divisible by {p}"
                                );
                            }
                        }
                    }
                }
            }
        }
        let primes_str: Vec<String> = self
            .all_primes
            .inconclusive_primes
            .iter()
            .map(u64::to_string)
            .collect();
        let _ = writeln!(
            out,
            "all primes certified except: {}",
            if primes_str.is_empty() {
                "none".to_string()
            } else {
                primes_str.join(", ")
            }
        );
        if let Some(b) = &self.all_primes.betti {
            let betti_str: Vec<String> = b.iter().map(usize::to_string).collect();
            let _ = writeln!(out, "betti numbers when certified: [{}]", betti_str.join(", "));
        }
        out
    }
}

/// Assembles the report for a family (or single sequence) and an optional
/// list of primes.  With several sequences, a prime is certified when any
/// member certifies it.
pub fn analyze_family(
    family: &[BuildingSequence],
    primes: &[u64],
) -> Result<QcwReport, QcwError> {
    if family.is_empty() {
        return Err(QcwError::Empty);
    }
    let even = family.iter().all(BuildingSequence::is_even);
    let mut verdicts = std::collections::BTreeMap::new();
    for &p in primes {
        let mut verdict: Option<QcwVerdict> = None;
        let mut fallback: Option<QcwVerdict> = None;
        for (s, seq) in family.iter().enumerate() {
            match analyze_general(seq, p)? {
                v @ QcwVerdict::Certified { .. } => {
                    verdict = Some(v);
                    break;
                }
                QcwVerdict::Inconclusive { obstructions } => {
                    let renumbered = obstructions
                        .into_iter()
                        .map(|o| match o {
                            CellObstruction::Order { index, order, .. } => CellObstruction::Order {
                                sequence: s,
                                index,
                                order,
                            },
                            CellObstruction::Degree { index, degree, .. } => {
                                CellObstruction::Degree {
                                    sequence: s,
                                    index,
                                    degree,
                                }
                            }
                        })
                        .collect();
                    let inconclusive = QcwVerdict::Inconclusive {
                        obstructions: renumbered,
                    };
                    if fallback.is_none() {
                        fallback = Some(inconclusive);
                    } else if let Some(QcwVerdict::Inconclusive { obstructions: acc }) =
                        &mut fallback
                    {
                        if let QcwVerdict::Inconclusive { obstructions: more } = inconclusive {
                            acc.extend(more);
                        }
                    }
                }
            }
        }
        verdicts.insert(p, verdict.or(fallback).expect("nonempty family"));
    }
    let all_primes = if family.len() == 1 && !family[0].is_even() {
        all_primes_general(&family[0])?
    } else {
        all_primes_even(family)?
    };
    Ok(QcwReport {
        kind: "qcw".to_string(),
        sequence_count: family.len(),
        even,
        verdicts,
        all_primes,
    })
}
