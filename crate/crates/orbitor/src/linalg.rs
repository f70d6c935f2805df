//! Exact linear algebra over the integers.
//!
//! Everything in this module works on arbitrary-precision integers; no
//! floating point is used anywhere.  The two determinant routes (fraction-free
//! elimination and the product of Smith invariant factors) are kept
//! independent so they can cross-check each other in tests.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Arbitrary-precision integer used throughout the crate.
pub type Int = BigInt;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum LinalgError {
    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NonSquare { rows: usize, cols: usize },
    #[error("the zero vector has no primitive representative")]
    ZeroVector,
    #[error("generator rows are linearly dependent over the rationals")]
    DependentRows,
    #[error("rows do not form a saturated sublattice basis")]
    NotSaturated,
    #[error("invalid basis hint: {0}")]
    BadBasisHint(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("prime factor does not fit in 64 bits")]
    PrimeTooLarge,
}

/// Column vector in `Z^n`.
///
/// The empty vector is allowed so that projections onto a rank-zero target
/// have somewhere to land; user-facing constructors reject it where a zero
/// ambient rank makes no sense.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntVector {
    entries: Vec<Int>,
}

impl IntVector {
    pub fn new(entries: Vec<Int>) -> Self {
        IntVector { entries }
    }

    pub fn from_i64(entries: &[i64]) -> Self {
        IntVector {
            entries: entries.iter().map(|&e| Int::from(e)).collect(),
        }
    }

    pub fn zeros(len: usize) -> Self {
        IntVector {
            entries: vec![Int::zero(); len],
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn entry(&self, i: usize) -> &Int {
        &self.entries[i]
    }

    pub fn entries(&self) -> &[Int] {
        &self.entries
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Int> {
        self.entries.iter()
    }
}

impl fmt::Debug for IntVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for IntVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Dense row-major integer matrix.
///
/// Zero rows are permitted (projections onto rank zero); zero columns are not.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Int>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Int>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count must be rows*cols");
        IntMatrix { rows, cols, entries }
    }

    pub fn from_rows(rows: Vec<IntVector>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, IntVector::len);
        assert!(rows.iter().all(|v| v.len() == c), "ragged rows");
        IntMatrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flat_map(|v| v.entries).collect(),
        }
    }

    /// Like [`IntMatrix::from_rows`] with an explicit column count, so that
    /// an empty list of rows still knows its width.
    pub fn from_rows_cols(rows: Vec<IntVector>, cols: usize) -> Self {
        assert!(rows.iter().all(|v| v.len() == cols), "ragged rows");
        IntMatrix {
            rows: rows.len(),
            cols,
            entries: rows.into_iter().flat_map(|v| v.entries).collect(),
        }
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| IntVector::from_i64(r)).collect())
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            *m.entry_mut(i, i) = Int::one();
        }
        m
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            entries: vec![Int::zero(); rows * cols],
        }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, i: usize, j: usize) -> &Int {
        &self.entries[i * self.cols + j]
    }

    pub fn entry_mut(&mut self, i: usize, j: usize) -> &mut Int {
        &mut self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> IntVector {
        IntVector::new(self.entries[i * self.cols..(i + 1) * self.cols].to_vec())
    }

    pub fn rows_iter(&self) -> impl Iterator<Item = IntVector> + '_ {
        (0..self.rows).map(|i| self.row(i))
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *t.entry_mut(j, i) = self.entry(i, j).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in matrix product");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.entry(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let add = a * other.entry(k, j);
                    *out.entry_mut(i, j) += add;
                }
            }
        }
        out
    }

    pub fn mul_vector(&self, v: &IntVector) -> IntVector {
        assert_eq!(self.cols, v.len(), "dimension mismatch in matrix-vector product");
        let mut out = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let mut s = Int::zero();
            for j in 0..self.cols {
                s += self.entry(i, j) * v.entry(j);
            }
            out.push(s);
        }
        IntVector::new(out)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    if i == j {
                        self.entry(i, j).is_one()
                    } else {
                        self.entry(i, j).is_zero()
                    }
                })
            })
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += q * row[src]
    fn add_row_multiple(&mut self, dst: usize, src: usize, q: &Int) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let add = q * self.entry(src, j);
            *self.entry_mut(dst, j) += add;
        }
    }

    /// col[dst] += q * col[src]
    fn add_col_multiple(&mut self, dst: usize, src: usize, q: &Int) {
        if q.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let add = q * self.entry(i, src);
            *self.entry_mut(i, dst) += add;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -self.entry(i, j).clone();
            *self.entry_mut(i, j) = v;
        }
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for i in 0..self.rows {
            write!(f, "  [")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.entry(i, j))?;
            }
            writeln!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Quotient `q` minimizing `|a - q*b|` (ties resolved towards the floor
/// quotient).  Keeping remainders small keeps entry growth under control
/// during the normal-form reductions.
fn rounded_div(a: &Int, b: &Int) -> Int {
    debug_assert!(!b.is_zero());
    let q0 = a.div_floor(b);
    let q1: Int = &q0 + Int::one();
    let r0 = (a - &q0 * b).abs();
    let r1 = (a - &q1 * b).abs();
    if r1 < r0 {
        q1
    } else {
        q0
    }
}

/// Result of a Smith normal form computation: `u * a * v = d` with `u`, `v`
/// unimodular and `d` diagonal with `d_1 | d_2 | ... | d_rank`, all
/// nonnegative, zeros trailing.
pub struct SnfResult {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    pub rank: usize,
}

struct SnfCore {
    u: IntMatrix,
    d: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
    rank: usize,
}

fn snf_core(a: &IntMatrix) -> SnfCore {
    let m = a.nrows();
    let n = a.ncols();
    let mut d = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);
    let mut v_inv = IntMatrix::identity(n);

    // Column operation col[j] += q*col[t] on d is a right factor E with
    // E[t][j] = q; its inverse acts on v_inv rows as row[t] -= q*row[j].
    let mut t = 0;
    while t < m.min(n) {
        // Deterministic pivot choice: smallest absolute value, ties broken by
        // (row, column).  Minimizing the pivot keeps intermediate entries small.
        let pivot = {
            let mut best: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    if d.entry(i, j).is_zero() {
                        continue;
                    }
                    match best {
                        None => best = Some((i, j)),
                        Some((bi, bj)) => {
                            if d.entry(i, j).abs() < d.entry(bi, bj).abs() {
                                best = Some((i, j));
                            }
                        }
                    }
                }
            }
            best
        };
        let Some((pi, pj)) = pivot else {
            break;
        };
        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
        d.swap_cols(t, pj);
        v.swap_cols(t, pj);
        v_inv.swap_rows(t, pj);

        loop {
            // Clear column t below the pivot.
            for i in t + 1..m {
                if !d.entry(i, t).is_zero() {
                    let q = -rounded_div(d.entry(i, t), d.entry(t, t));
                    d.add_row_multiple(i, t, &q);
                    u.add_row_multiple(i, t, &q);
                }
            }
            if let Some(i) = (t + 1..m).find(|&i| !d.entry(i, t).is_zero()) {
                // Leftover remainder is strictly smaller than the pivot; use
                // it as the new pivot and iterate (Euclid on the column).
                d.swap_rows(t, i);
                u.swap_rows(t, i);
                continue;
            }
            // Clear row t to the right of the pivot.
            for j in t + 1..n {
                if !d.entry(t, j).is_zero() {
                    let q = -rounded_div(d.entry(t, j), d.entry(t, t));
                    d.add_col_multiple(j, t, &q);
                    v.add_col_multiple(j, t, &q);
                    let neg_q = -q;
                    v_inv.add_row_multiple(t, j, &neg_q);
                }
            }
            if let Some(j) = (t + 1..n).find(|&j| !d.entry(t, j).is_zero()) {
                d.swap_cols(t, j);
                v.swap_cols(t, j);
                v_inv.swap_rows(t, j);
                continue;
            }
            // Pivot divides everything remaining?  If not, fold the offending
            // row into row t and keep reducing; this is what produces the
            // divisibility chain.
            let offender = (t + 1..m)
                .flat_map(|i| (t + 1..n).map(move |j| (i, j)))
                .find(|&(i, j)| !(d.entry(i, j) % d.entry(t, t)).is_zero());
            if let Some((i, _)) = offender {
                let one = Int::one();
                d.add_row_multiple(t, i, &one);
                u.add_row_multiple(t, i, &one);
                continue;
            }
            break;
        }
        if d.entry(t, t).is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
        t += 1;
    }

    let rank = (0..m.min(n)).filter(|&i| !d.entry(i, i).is_zero()).count();
    SnfCore { u, d, v, v_inv, rank }
}

/// Smith normal form of an arbitrary integer matrix.
pub fn smith_normal_form(a: &IntMatrix) -> SnfResult {
    let core = snf_core(a);
    SnfResult {
        u: core.u,
        d: core.d,
        v: core.v,
        rank: core.rank,
    }
}

/// Signed determinant by fraction-free (Bareiss) elimination.  This route is
/// deliberately independent of the Smith normal form code.
pub fn determinant(a: &IntMatrix) -> Result<Int, LinalgError> {
    if a.nrows() != a.ncols() {
        return Err(LinalgError::NonSquare {
            rows: a.nrows(),
            cols: a.ncols(),
        });
    }
    let n = a.nrows();
    if n == 0 {
        return Ok(Int::one());
    }
    let mut w = a.clone();
    let mut sign = 1i32;
    let mut prev = Int::one();
    for k in 0..n - 1 {
        if w.entry(k, k).is_zero() {
            match (k + 1..n).find(|&i| !w.entry(i, k).is_zero()) {
                Some(i) => {
                    w.swap_rows(k, i);
                    sign = -sign;
                }
                None => return Ok(Int::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = w.entry(k, k) * w.entry(i, j) - w.entry(i, k) * w.entry(k, j);
                debug_assert!((&num % &prev).is_zero(), "Bareiss division must be exact");
                *w.entry_mut(i, j) = num / &prev;
            }
            *w.entry_mut(i, k) = Int::zero();
        }
        prev = w.entry(k, k).clone();
    }
    let det = w.entry(n - 1, n - 1).clone();
    Ok(if sign < 0 { -det } else { det })
}

/// Divides out the gcd of the entries, keeping the direction of the vector.
pub fn primitive_vector(v: &IntVector) -> Result<IntVector, LinalgError> {
    if v.is_zero() {
        return Err(LinalgError::ZeroVector);
    }
    let mut g = Int::zero();
    for e in v.iter() {
        g = g.gcd(e);
    }
    Ok(IntVector::new(v.iter().map(|e| e / &g).collect()))
}

/// Row-style Hermite normal form of the lattice spanned by the rows of `a`.
///
/// Pivots are positive, entries above a pivot are reduced into `[0, pivot)`,
/// and zero rows are dropped, so the result is the canonical basis of the row
/// lattice.
pub fn hermite_normal_form(a: &IntMatrix) -> IntMatrix {
    let m = a.nrows();
    let n = a.ncols();
    let mut h = a.clone();
    let mut r = 0;
    for c in 0..n {
        if r == m {
            break;
        }
        loop {
            let pivot = (r..m)
                .filter(|&i| !h.entry(i, c).is_zero())
                .min_by_key(|&i| h.entry(i, c).abs());
            let Some(i) = pivot else {
                break;
            };
            h.swap_rows(r, i);
            let mut leftovers = false;
            for i in r + 1..m {
                if !h.entry(i, c).is_zero() {
                    let q = -rounded_div(h.entry(i, c), h.entry(r, c));
                    h.add_row_multiple(i, r, &q);
                    if !h.entry(i, c).is_zero() {
                        leftovers = true;
                    }
                }
            }
            if !leftovers {
                if h.entry(r, c).is_negative() {
                    h.negate_row(r);
                }
                for i in 0..r {
                    if !h.entry(i, c).is_zero() {
                        let q = -h.entry(i, c).div_floor(h.entry(r, c));
                        h.add_row_multiple(i, r, &q);
                    }
                }
                r += 1;
                break;
            }
        }
    }
    let cols = h.ncols();
    IntMatrix::from_rows_cols((0..r).map(|i| h.row(i)).collect(), cols)
}

/// Does the row lattice of `hnf` (a Hermite basis) contain `x`?
pub fn lattice_contains(hnf: &IntMatrix, x: &IntVector) -> bool {
    assert_eq!(hnf.ncols(), x.len());
    let mut rem = x.entries().to_vec();
    for r in 0..hnf.nrows() {
        let c = (0..hnf.ncols())
            .find(|&j| !hnf.entry(r, j).is_zero())
            .expect("Hermite basis has no zero rows");
        if rem[c].is_zero() {
            continue;
        }
        let (q, s) = rem[c].div_rem(hnf.entry(r, c));
        if !s.is_zero() {
            return false;
        }
        for j in 0..hnf.ncols() {
            let sub = &q * hnf.entry(r, j);
            rem[j] -= sub;
        }
    }
    rem.iter().all(Zero::is_zero)
}

/// Saturation of the lattice spanned by the rows of `generators`:
/// `(span ⊗ R) ∩ Z^n`, returned as its canonical Hermite basis.
///
/// The generator rows must be linearly independent over the rationals.
pub fn saturate_lattice(generators: &IntMatrix) -> Result<IntMatrix, LinalgError> {
    let k = generators.nrows();
    let n = generators.ncols();
    if k > n {
        return Err(LinalgError::DependentRows);
    }
    if k == 0 {
        return Ok(IntMatrix::zeros(0, n));
    }
    let core = snf_core(generators);
    if core.rank < k {
        return Err(LinalgError::DependentRows);
    }
    // With u*a*v = d, the saturation of the row span of `a` is spanned by the
    // first k rows of v^{-1}.
    let basis = IntMatrix::from_rows((0..k).map(|i| core.v_inv.row(i)).collect());
    Ok(hermite_normal_form(&basis))
}

/// Integer inverse of a unimodular matrix.
pub fn unimodular_inverse(b: &IntMatrix) -> Result<IntMatrix, LinalgError> {
    if b.nrows() != b.ncols() {
        return Err(LinalgError::NonSquare {
            rows: b.nrows(),
            cols: b.ncols(),
        });
    }
    let core = snf_core(b);
    if !core.d.is_identity() {
        return Err(LinalgError::BadBasisHint(
            "matrix is not unimodular".to_string(),
        ));
    }
    // u*b*v = 1  =>  b^{-1} = v*u
    let inv = core.v.mul(&core.u);
    debug_assert!(b.mul(&inv).is_identity());
    Ok(inv)
}

/// Projection `Z^n -> Z^(n-k)` whose kernel is exactly the saturated
/// sublattice spanned by the rows of `saturated`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientMap {
    /// Ambient rank `n`.
    pub ambient_rank: usize,
    /// The saturated sublattice basis the quotient was built from (k rows).
    pub sublattice_basis: IntMatrix,
    /// `(n-k) x n` projection matrix; may have zero rows when `k = n`.
    pub projection: IntMatrix,
    /// The `n x n` unimodular basis of `Z^n` used: the sublattice rows occur
    /// verbatim among its rows and the projection reads off the coordinates
    /// of the remaining rows, in their original order.
    pub basis_choice: IntMatrix,
}

impl QuotientMap {
    pub fn target_rank(&self) -> usize {
        self.ambient_rank - self.sublattice_basis.nrows()
    }

    pub fn apply(&self, v: &IntVector) -> IntVector {
        self.projection.mul_vector(v)
    }
}

/// Builds the quotient projection for a saturated sublattice basis.
///
/// Without a hint the basis of `Z^n` is the sublattice basis extended by a
/// complement derived from the Smith normal form (deterministic).  A hint must
/// be a unimodular `n x n` matrix among whose rows the sublattice appears as a
/// sub-basis; the projection then keeps the coordinates of the other hint
/// rows, in order.
pub fn quotient_projection(
    saturated: &IntMatrix,
    basis_hint: Option<&IntMatrix>,
) -> Result<QuotientMap, LinalgError> {
    let k = saturated.nrows();
    let n = saturated.ncols();
    if k > n {
        return Err(LinalgError::DependentRows);
    }
    let core = snf_core(saturated);
    if core.rank < k {
        return Err(LinalgError::DependentRows);
    }
    if (0..k).any(|i| !core.d.entry(i, i).is_one()) {
        return Err(LinalgError::NotSaturated);
    }

    let (basis, kept): (IntMatrix, Vec<usize>) = match basis_hint {
        None => {
            // Stack the sublattice rows over the last n-k rows of v^{-1};
            // the result is unimodular because the sublattice rows are a
            // unimodular transform of the first k rows of v^{-1}.
            let mut rows: Vec<IntVector> = saturated.rows_iter().collect();
            for i in k..n {
                rows.push(core.v_inv.row(i));
            }
            (IntMatrix::from_rows(rows), (k..n).collect())
        }
        Some(hint) => {
            if hint.nrows() != n || hint.ncols() != n {
                return Err(LinalgError::BadBasisHint(format!(
                    "hint is {}x{}, expected {n}x{n}",
                    hint.nrows(),
                    hint.ncols()
                )));
            }
            let det = determinant(hint)?;
            if !det.abs().is_one() {
                return Err(LinalgError::BadBasisHint(
                    "hint is not unimodular".to_string(),
                ));
            }
            let sat_hnf = hermite_normal_form(saturated);
            let inside: Vec<usize> = (0..n)
                .filter(|&i| lattice_contains(&sat_hnf, &hint.row(i)))
                .collect();
            if inside.len() != k {
                return Err(LinalgError::BadBasisHint(format!(
                    "{} hint rows lie in the sublattice, expected {k}",
                    inside.len()
                )));
            }
            let sub =
                IntMatrix::from_rows_cols(inside.iter().map(|&i| hint.row(i)).collect(), n);
            let sub_hnf = hermite_normal_form(&sub);
            let spans = saturated
                .rows_iter()
                .all(|r| lattice_contains(&sub_hnf, &r));
            if !spans || sub_hnf != sat_hnf {
                return Err(LinalgError::BadBasisHint(
                    "hint rows inside the sublattice do not span it".to_string(),
                ));
            }
            let kept = (0..n).filter(|i| !inside.contains(i)).collect();
            (hint.clone(), kept)
        }
    };

    let inv = unimodular_inverse(&basis)?;
    // Coordinates of x in the row basis are x * basis^{-1}; keep the ones at
    // the complement positions.  Row t of the projection is column kept[t] of
    // the inverse, transposed.
    let mut proj = IntMatrix::zeros(n - k, n);
    for (t, &c) in kept.iter().enumerate() {
        for i in 0..n {
            *proj.entry_mut(t, i) = inv.entry(i, c).clone();
        }
    }
    Ok(QuotientMap {
        ambient_rank: n,
        sublattice_basis: saturated.clone(),
        projection: proj,
        basis_choice: basis,
    })
}

/// Invariant factors of `Z^m / (row span of generators)`, as a sequence of
/// length `m`: the divisibility chain `d_1 | d_2 | ...` with one trailing `0`
/// per free summand.
pub fn invariant_factors(generators: &IntMatrix) -> Vec<Int> {
    let m = generators.ncols();
    let core = snf_core(generators);
    let mut out = Vec::with_capacity(m);
    for i in 0..core.rank {
        out.push(core.d.entry(i, i).clone());
    }
    out.resize(m, Int::zero());
    out
}

/// Distinct prime factors of `|n|`, in increasing order.  `0` and `±1` have
/// none.
pub fn prime_factors(n: &Int) -> Result<Vec<u64>, LinalgError> {
    let mut cur = n.abs();
    let mut out = Vec::new();
    if cur <= Int::one() {
        return Ok(out);
    }
    let mut d: u64 = 2;
    loop {
        let big_d = Int::from(d);
        if &big_d * &big_d > cur {
            break;
        }
        if (&cur % &big_d).is_zero() {
            out.push(d);
            while (&cur % &big_d).is_zero() {
                cur /= &big_d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if cur > Int::one() {
        let p = u64::try_from(&cur).map_err(|_| LinalgError::PrimeTooLarge)?;
        out.push(p);
    }
    Ok(out)
}

/// gcd of an iterator of integers; empty input gives 0.
pub fn gcd_all<'a, I: IntoIterator<Item = &'a Int>>(items: I) -> Int {
    let mut g = Int::zero();
    for x in items {
        g = g.gcd(x);
    }
    g
}
