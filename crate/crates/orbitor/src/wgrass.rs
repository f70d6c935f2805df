//! Weighted Grassmannians: quotients of the Plücker-cone Grassmannian by a
//! weighted circle action, stratified by Schubert cells.
//!
//! For `wGr(d, n)` with weight vector `w` and twist `r`, the cells are
//! indexed by the `d`-subsets `α` of `{1, …, n}`; the cell of `α` has
//! complex dimension `Σ_k (α_k − k)` and its local group is cyclic of order
//! `w_α = r + Σ_{i∈α} w_i`.  Listing the cells by dimension yields an even
//! q-CW building sequence, so the torsion analysis reduces to the q-CW one.

use crate::linalg::Int;
use crate::numio::JsonInt;
use crate::qcw::{
    all_primes_even, analyze_even, AllPrimesReport, BuildingSequence, CellSpec, QcwError,
    QcwVerdict,
};
use itertools::Itertools;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt::Write as _;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum WgrassError {
    #[error("need 1 <= d <= n, got d = {d}, n = {n}")]
    BadShape { d: usize, n: usize },
    #[error("expected {expected} weights, got {got}")]
    WrongWeightCount { expected: usize, got: usize },
    #[error("cell {alpha:?} has group order {order}, which is not positive")]
    NonPositiveOrder { alpha: Vec<usize>, order: Int },
    #[error(transparent)]
    Qcw(#[from] QcwError),
}

/// A Schubert cell, named by its `d`-subset `α` (ascending, 1-based).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchubertCell {
    pub alpha: Vec<usize>,
    pub complex_dim: usize,
    /// `w_α = r + Σ_{i∈α} w_i`.
    pub order: Int,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedGrassmannian {
    d: usize,
    n: usize,
    weights: Vec<Int>,
    r: Int,
    cells: Vec<SchubertCell>,
}

/// Young containment: `α ≤ β` componentwise.
pub fn young_contains(alpha: &[usize], beta: &[usize]) -> bool {
    alpha.len() == beta.len() && alpha.iter().zip(beta).all(|(a, b)| a <= b)
}

/// Streams the `d`-subsets of `{1, …, n}` with their complex dimensions,
/// without computing group orders; lexicographic order.
pub fn enumerate_schubert_cells(
    d: usize,
    n: usize,
) -> Result<impl Iterator<Item = (Vec<usize>, usize)>, WgrassError> {
    if d < 1 || d > n {
        return Err(WgrassError::BadShape { d, n });
    }
    Ok((1..=n).combinations(d).map(|alpha| {
        let dim = alpha.iter().enumerate().map(|(k, &a)| a - (k + 1)).sum();
        (alpha, dim)
    }))
}

impl WeightedGrassmannian {
    pub fn new(d: usize, n: usize, weights: Vec<Int>, r: Int) -> Result<Self, WgrassError> {
        if d < 1 || d > n {
            return Err(WgrassError::BadShape { d, n });
        }
        if weights.len() != n {
            return Err(WgrassError::WrongWeightCount {
                expected: n,
                got: weights.len(),
            });
        }
        let mut cells: Vec<SchubertCell> = (1..=n)
            .combinations(d)
            .map(|alpha| {
                let complex_dim = alpha.iter().enumerate().map(|(k, &a)| a - (k + 1)).sum();
                let order: Int =
                    &r + alpha.iter().map(|&i| &weights[i - 1]).sum::<Int>();
                SchubertCell {
                    alpha,
                    complex_dim,
                    order,
                }
            })
            .collect();
        if let Some(bad) = cells.iter().find(|c| c.order <= Int::zero()) {
            return Err(WgrassError::NonPositiveOrder {
                alpha: bad.alpha.clone(),
                order: bad.order.clone(),
            });
        }
        // Building order: by dimension, then lexicographically.
        cells.sort_by(|a, b| (a.complex_dim, &a.alpha).cmp(&(b.complex_dim, &b.alpha)));
        Ok(WeightedGrassmannian {
            d,
            n,
            weights,
            r,
            cells,
        })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn weights(&self) -> &[Int] {
        &self.weights
    }

    pub fn r(&self) -> &Int {
        &self.r
    }

    /// Cells in building order (by dimension, then lexicographic `α`).
    pub fn cells(&self) -> &[SchubertCell] {
        &self.cells
    }

    /// The cell orders keyed by `α`, per the defining formula.
    pub fn cell_group_orders(&self) -> BTreeMap<Vec<usize>, Int> {
        self.cells
            .iter()
            .map(|c| (c.alpha.clone(), c.order.clone()))
            .collect()
    }

    /// The even q-CW building sequence: real dimension `2 dim_C`, group
    /// order `w_α` (normalized on construction for low dimensions).
    pub fn building_sequence(&self) -> Result<BuildingSequence, WgrassError> {
        let cells = self
            .cells
            .iter()
            .map(|c| CellSpec {
                dim: 2 * c.complex_dim,
                order: JsonInt(c.order.clone()),
                degree: None,
                orientation_preserving: None,
            })
            .collect();
        Ok(BuildingSequence::new(cells)?)
    }

    /// Cover pairs of the Young lattice on the cells: `β` covers `α` when
    /// `α ≤ β` and the dimension grows by one (one box added).
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, a) in self.cells.iter().enumerate() {
            for (j, b) in self.cells.iter().enumerate() {
                if b.complex_dim == a.complex_dim + 1 && young_contains(&a.alpha, &b.alpha) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Hasse diagram of the Schubert cells in DOT format, edges pointing to
    /// the covering cell.
    pub fn hasse_dot(&self) -> String {
        let name = |c: &SchubertCell| {
            c.alpha
                .iter()
                .map(usize::to_string)
                .collect::<Vec<_>>()
                .join("_")
        };
        let mut out = String::from("digraph schubert {\n  rankdir=BT;\n");
        for c in &self.cells {
            let label = c
                .alpha
                .iter()
                .map(usize::to_string)
                .collect::<Vec<_>>()
                .join(",");
            let _ = writeln!(
                out,
                "  a{} [label=\"{{{}}}\\ndim {}\\nw = {}\"];",
                name(c),
                label,
                c.complex_dim,
                c.order
            );
        }
        for (i, j) in self.covers() {
            let _ = writeln!(out, "  a{} -> a{};", name(&self.cells[i]), name(&self.cells[j]));
        }
        out.push_str("}\n");
        out
    }

    pub fn report(&self, primes: &[u64]) -> Result<WgrassReport, WgrassError> {
        let seq = self.building_sequence()?;
        let mut verdicts = BTreeMap::new();
        for &p in primes {
            verdicts.insert(p, analyze_even(&seq, p).map_err(WgrassError::from)?);
        }
        let all_primes = all_primes_even(std::slice::from_ref(&seq))?;
        let cells = self
            .cells
            .iter()
            .zip(seq.cells())
            .map(|(c, normalized)| CellRecord {
                alpha: c.alpha.clone(),
                complex_dim: c.complex_dim,
                real_dim: 2 * c.complex_dim,
                schubert_order: JsonInt(c.order.clone()),
                cell_order: normalized.order.clone(),
            })
            .collect();
        Ok(WgrassReport {
            kind: "weighted_grassmannian".to_string(),
            d: self.d,
            n: self.n,
            weights: self.weights.iter().cloned().map(JsonInt).collect(),
            r: JsonInt(self.r.clone()),
            cells,
            verdicts,
            all_primes,
        })
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct CellRecord {
    pub alpha: Vec<usize>,
    pub complex_dim: usize,
    pub real_dim: usize,
    /// The order from the defining formula.
    pub schubert_order: JsonInt,
    /// The order actually used by the analysis (low dimensions normalized).
    pub cell_order: JsonInt,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct WgrassReport {
    pub kind: String,
    pub d: usize,
    pub n: usize,
    pub weights: Vec<JsonInt>,
    pub r: JsonInt,
    pub cells: Vec<CellRecord>,
    pub verdicts: BTreeMap<u64, QcwVerdict>,
    pub all_primes: AllPrimesReport,
}

impl WgrassReport {
    pub fn fully_certified(&self) -> bool {
        if self.verdicts.is_empty() {
            self.all_primes.inconclusive_primes.is_empty()
        } else {
            self.verdicts.values().all(QcwVerdict::is_certified)
        }
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let weights: Vec<String> = self.weights.iter().map(JsonInt::to_string).collect();
        let _ = writeln!(
            out,
            "wGr({}, {}) with weights ({}) and r = {}: {} Schubert cells",
            self.d,
            self.n,
            weights.join(", "),
            self.r,
            self.cells.len()
        );
        for c in &self.cells {
            let alpha: Vec<String> = c.alpha.iter().map(usize::to_string).collect();
            let _ = writeln!(
                out,
                "  {{{}}}: complex dim {}, w = {}{}",
                alpha.join(","),
                c.complex_dim,
                c.schubert_order,
                if c.cell_order != c.schubert_order {
                    " (disc; order dropped)"
                } else {
                    ""
                }
            );
        }
        for (p, v) in &self.verdicts {
            let _ = writeln!(
                out,
                "p = {p}: {}",
                if v.is_certified() {
                    "certified, even cohomology"
                } else {
                    "inconclusive"
                }
            );
        }
        let primes: Vec<String> = self
            .all_primes
            .inconclusive_primes
            .iter()
            .map(u64::to_string)
            .collect();
        let _ = writeln!(
            out,
            "all primes certified except: {}",
            if primes.is_empty() {
                "none".into()
            } else {
                primes.join(", ")
            }
        );
        if let Some(betti) = &self.all_primes.betti {
            let b: Vec<String> = betti.iter().map(usize::to_string).collect();
            let _ = writeln!(out, "betti numbers when certified: [{}]", b.join(", "));
        }
        out
    }
}
