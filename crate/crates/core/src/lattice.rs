//! Exact integer linear algebra: Hermite and Smith normal forms, sublattices
//! of `Z^n` in canonical form, and a few rational helpers used by the cone
//! code.
//!
//! Everything is arbitrary precision. There is no floating point and no
//! modular arithmetic anywhere in this module.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// An integer vector.
pub type IntVec = Vec<BigInt>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("dimension mismatch: expected length {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
}

/// Converts a slice of machine integers into an [`IntVec`].
pub fn int_vec(v: &[i64]) -> IntVec {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

pub fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).fold(BigInt::zero(), |acc, (x, y)| acc + x * y)
}

/// Gcd of all entries (zero for the zero vector).
pub fn content(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

/// Divides out the content. The zero vector is returned unchanged.
pub fn primitive(mut v: IntVec) -> IntVec {
    let g = content(&v);
    if !g.is_zero() && !g.is_one() {
        for x in v.iter_mut() {
            *x /= &g;
        }
    }
    v
}

pub fn is_zero_vec(v: &[BigInt]) -> bool {
    v.iter().all(Zero::is_zero)
}

fn check_len(v: &[BigInt], expected: usize) -> Result<(), LatticeError> {
    if v.len() != expected {
        return Err(LatticeError::DimensionMismatch {
            expected,
            found: v.len(),
        });
    }
    Ok(())
}

/// Dense integer matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from rows. `cols` is needed so that an empty row list
    /// still has a well-defined shape.
    pub fn from_rows(cols: usize, rows: &[IntVec]) -> Result<Self, LatticeError> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            check_len(r, cols)?;
            data.extend(r.iter().cloned());
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows: Vec<IntVec> = rows.iter().map(|r| int_vec(r)).collect();
        Self::from_rows(cols, &rows).expect("ragged matrix literal")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<IntVec> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> IntVec {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix, LatticeError> {
        if self.cols != other.rows {
            return Err(LatticeError::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = a * &other[(k, j)];
                    out[(i, j)] += prod;
                }
            }
        }
        Ok(out)
    }

    /// Matrix-vector product `self * v`.
    pub fn apply(&self, v: &[BigInt]) -> Result<IntVec, LatticeError> {
        check_len(v, self.cols)?;
        Ok((0..self.rows).map(|i| dot(self.row(i), v)).collect())
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self[(i, j)].is_zero()))
    }

    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.rows.min(self.cols))
            .map(|i| self[(i, i)].clone())
            .collect()
    }

    /// Determinant by fraction-free (Bareiss) elimination. Square matrices only.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !a[(i, k)].is_zero()) else {
                    return BigInt::zero();
                };
                a.swap_rows(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)];
                    a[(i, j)] = v / &prev;
                }
            }
            prev = a[(k, k)].clone();
        }
        sign * a[(n - 1, n - 1)].clone()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += k * row[src]
    fn add_row(&mut self, dst: usize, src: usize, k: &BigInt) {
        for j in 0..self.cols {
            let v = k * &self[(src, j)];
            self[(dst, j)] += v;
        }
    }

    /// col[dst] += k * col[src]
    fn add_col(&mut self, dst: usize, src: usize, k: &BigInt) {
        for i in 0..self.rows {
            let v = k * &self[(i, src)];
            self[(i, dst)] += v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -&self[(i, j)];
            self[(i, j)] = v;
        }
    }

    /// Replaces rows (p, q) by (x*p + y*q, s*p + t*q).
    fn combine_rows(&mut self, p: usize, q: usize, c: [&BigInt; 4]) {
        for j in 0..self.cols {
            let a = self[(p, j)].clone();
            let b = self[(q, j)].clone();
            self[(p, j)] = c[0] * &a + c[1] * &b;
            self[(q, j)] = c[2] * &a + c[3] * &b;
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", fmt_vec(self.row(i)))?;
        }
        write!(f, "]")
    }
}

pub fn fmt_vec(v: &[BigInt]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

/// Row-style Hermite normal form with transform.
///
/// Returns `(h, u)` with `u * m = h`, `u` unimodular and `h` in row echelon
/// form: pivots positive, entries above each pivot reduced into
/// `[0, pivot)`, zero rows at the bottom.
pub fn hermite_with_transform(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let mut h = m.clone();
    let mut u = IntMatrix::identity(m.rows());
    let mut piv = 0;
    for col in 0..m.cols() {
        if piv == m.rows() {
            break;
        }
        for i in piv + 1..m.rows() {
            if h[(i, col)].is_zero() {
                continue;
            }
            if h[(piv, col)].is_zero() {
                h.swap_rows(piv, i);
                u.swap_rows(piv, i);
                continue;
            }
            let a = h[(piv, col)].clone();
            let b = h[(i, col)].clone();
            let eg = a.extended_gcd(&b);
            let g = eg.gcd;
            let s = -(&b / &g);
            let t = &a / &g;
            let c = [&eg.x, &eg.y, &s, &t];
            h.combine_rows(piv, i, c);
            u.combine_rows(piv, i, c);
        }
        if h[(piv, col)].is_zero() {
            continue;
        }
        if h[(piv, col)].is_negative() {
            h.negate_row(piv);
            u.negate_row(piv);
        }
        let p = h[(piv, col)].clone();
        for i in 0..piv {
            let q = h[(i, col)].div_floor(&p);
            if !q.is_zero() {
                let k = -q;
                h.add_row(i, piv, &k);
                u.add_row(i, piv, &k);
            }
        }
        piv += 1;
    }
    (h, u)
}

/// Nonzero rows of the Hermite normal form of `m`.
pub fn hermite_normal_form(m: &IntMatrix) -> IntMatrix {
    let (h, _) = hermite_with_transform(m);
    let rows: Vec<IntVec> = h
        .row_vecs()
        .into_iter()
        .filter(|r| !is_zero_vec(r))
        .collect();
    IntMatrix::from_rows(m.cols(), &rows).expect("shape preserved")
}

/// Smith normal form `u * m * v = s`.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub s: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    /// The nonzero invariant factors `d1 | d2 | ...`.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        self.s
            .diagonal()
            .into_iter()
            .filter(|d| !d.is_zero())
            .collect()
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let (rows, cols) = (m.rows(), m.cols());
    let mut s = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    for t in 0..rows.min(cols) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if s[(i, j)].is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| s[(i, j)].abs() < s[(bi, bj)].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else {
                return SmithForm { s, u, v };
            };
            s.swap_rows(t, bi);
            u.swap_rows(t, bi);
            s.swap_cols(t, bj);
            v.swap_cols(t, bj);

            let mut clean = true;
            for i in t + 1..rows {
                let q = &s[(i, t)] / &s[(t, t)];
                if !q.is_zero() {
                    let k = -q;
                    s.add_row(i, t, &k);
                    u.add_row(i, t, &k);
                }
                if !s[(i, t)].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                let q = &s[(t, j)] / &s[(t, t)];
                if !q.is_zero() {
                    let k = -q;
                    s.add_col(j, t, &k);
                    v.add_col(j, t, &k);
                }
                if !s[(t, j)].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            let p = s[(t, t)].clone();
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !s[(i, j)].is_multiple_of(&p)));
            if let Some(i) = bad {
                let one = BigInt::one();
                s.add_row(t, i, &one);
                u.add_row(t, i, &one);
                continue;
            }
            break;
        }
        if s[(t, t)].is_negative() {
            s.negate_row(t);
            u.negate_row(t);
        }
    }
    SmithForm { s, u, v }
}

/// True iff the integer span of `vectors` is all of `Z^rank`.
///
/// Decided through the Smith normal form: there must be `rank` invariant
/// factors and all of them must be one.
pub fn generates_full_lattice(vectors: &[IntVec], rank: usize) -> Result<bool, LatticeError> {
    let m = IntMatrix::from_rows(rank, vectors)?;
    let factors = smith_normal_form(&m).invariant_factors();
    Ok(factors.len() == rank && factors.iter().all(One::is_one))
}

/// Index of a sublattice in its ambient lattice.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum LatticeIndex {
    Finite(BigInt),
    Infinite,
}

impl LatticeIndex {
    pub fn is_finite(&self) -> bool {
        matches!(self, LatticeIndex::Finite(_))
    }
}

impl fmt::Display for LatticeIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LatticeIndex::Finite(n) => write!(f, "{n}"),
            LatticeIndex::Infinite => write!(f, "infinite"),
        }
    }
}

/// A sublattice of `Z^n`, stored by its Hermite basis.
///
/// Two values are equal iff they describe the same subgroup.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Sublattice {
    ambient_rank: usize,
    basis: IntMatrix,
}

impl Sublattice {
    pub fn from_generators(ambient_rank: usize, gens: &[IntVec]) -> Result<Self, LatticeError> {
        let m = IntMatrix::from_rows(ambient_rank, gens)?;
        Ok(Self {
            ambient_rank,
            basis: hermite_normal_form(&m),
        })
    }

    pub fn zero(ambient_rank: usize) -> Self {
        Self {
            ambient_rank,
            basis: IntMatrix::zeros(0, ambient_rank),
        }
    }

    pub fn full(ambient_rank: usize) -> Self {
        Self {
            ambient_rank,
            basis: IntMatrix::identity(ambient_rank),
        }
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn rank(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn contains(&self, v: &[BigInt]) -> Result<bool, LatticeError> {
        check_len(v, self.ambient_rank)?;
        let mut rest = v.to_vec();
        for row in self.basis.row_vecs() {
            let col = row.iter().position(|x| !x.is_zero()).expect("HNF rows are nonzero");
            let (q, r) = rest[col].div_rem(&row[col]);
            if !r.is_zero() {
                return Ok(false);
            }
            for (x, b) in rest.iter_mut().zip(&row) {
                *x -= &q * b;
            }
        }
        Ok(is_zero_vec(&rest))
    }

    pub fn is_subset_of(&self, other: &Sublattice) -> Result<bool, LatticeError> {
        for row in self.basis.row_vecs() {
            if !other.contains(&row)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Intersection, via the integer left kernel of the stacked bases
    /// `[A; -B]`: relations `x*A = y*B` give exactly the common vectors.
    pub fn intersect(&self, other: &Sublattice) -> Result<Sublattice, LatticeError> {
        if self.ambient_rank != other.ambient_rank {
            return Err(LatticeError::DimensionMismatch {
                expected: self.ambient_rank,
                found: other.ambient_rank,
            });
        }
        let n = self.ambient_rank;
        let a = self.basis.row_vecs();
        let b = other.basis.row_vecs();
        if a.is_empty() || b.is_empty() {
            return Ok(Sublattice::zero(n));
        }
        let mut stacked = a.clone();
        stacked.extend(b.iter().map(|r| r.iter().map(|x| -x).collect::<IntVec>()));
        let m = IntMatrix::from_rows(n, &stacked)?;
        let (h, u) = hermite_with_transform(&m);
        let mut gens = Vec::new();
        for i in 0..h.rows() {
            if !is_zero_vec(h.row(i)) {
                continue;
            }
            // kernel relation: coefficients on A give a common vector
            let mut w = vec![BigInt::zero(); n];
            for (k, row) in a.iter().enumerate() {
                let c = &u[(i, k)];
                if c.is_zero() {
                    continue;
                }
                for (x, y) in w.iter_mut().zip(row) {
                    *x += c * y;
                }
            }
            gens.push(w);
        }
        Sublattice::from_generators(n, &gens)
    }

    /// `[Z^n : self]`, finite exactly when the rank is full.
    pub fn index(&self) -> LatticeIndex {
        if self.rank() < self.ambient_rank {
            return LatticeIndex::Infinite;
        }
        let factors = smith_normal_form(&self.basis).invariant_factors();
        LatticeIndex::Finite(factors.iter().fold(BigInt::one(), |acc, d| acc * d))
    }
}

impl fmt::Display for Sublattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rank() == 0 {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .basis
            .row_vecs()
            .iter()
            .map(|r| format!("Z{}", fmt_vec(r)))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// The sublattice of `Z^k` generated by `Q * v` for the given generators.
pub fn image_lattice(q: &IntMatrix, generators: &[IntVec]) -> Result<Sublattice, LatticeError> {
    let images = generators
        .iter()
        .map(|g| q.apply(g))
        .collect::<Result<Vec<_>, _>>()?;
    Sublattice::from_generators(q.rows(), &images)
}

pub fn intersect_sublattices(a: &Sublattice, b: &Sublattice) -> Result<Sublattice, LatticeError> {
    a.intersect(b)
}

pub fn sublattice_index(sub: &Sublattice, ambient_rank: usize) -> Result<LatticeIndex, LatticeError> {
    if sub.ambient_rank() != ambient_rank {
        return Err(LatticeError::DimensionMismatch {
            expected: ambient_rank,
            found: sub.ambient_rank(),
        });
    }
    Ok(sub.index())
}

// ---------------------------------------------------------------------------
// Rational helpers for subspaces. Inputs and outputs are integer vectors; the
// rational arithmetic stays internal.

fn to_rat(rows: &[IntVec]) -> Vec<Vec<BigRational>> {
    rows.iter()
        .map(|r| r.iter().map(|x| BigRational::from_integer(x.clone())).collect())
        .collect()
}

/// Scales a rational vector by a positive factor to a primitive integer vector.
pub(crate) fn clear_denominators(v: &[BigRational]) -> IntVec {
    let l = v
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    primitive(v.iter().map(|x| (x * BigRational::from_integer(l.clone())).to_integer()).collect())
}

/// Reduced row echelon form over Q; returns the nonzero rows and pivot columns.
fn rref(rows: &[IntVec], n: usize) -> (Vec<Vec<BigRational>>, Vec<usize>) {
    let mut a = to_rat(rows);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        if r == a.len() {
            break;
        }
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..a.len() {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..n {
                    let v = &f * &a[r][j];
                    a[i][j] -= v;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    (a, pivots)
}

/// Rank over Q.
pub fn rational_rank(rows: &[IntVec], n: usize) -> usize {
    rref(rows, n).1.len()
}

/// A canonical integer basis of the rational span of `rows`: the reduced row
/// echelon basis, each row scaled to a primitive integer vector.
pub(crate) fn canonical_span_basis(rows: &[IntVec], n: usize) -> Vec<IntVec> {
    rref(rows, n).0.iter().map(|r| clear_denominators(r)).collect()
}

/// Canonical basis (as in [`canonical_span_basis`]) of `{x : <row, x> = 0}`.
pub(crate) fn orthogonal_complement(rows: &[IntVec], n: usize) -> Vec<IntVec> {
    let (a, pivots) = rref(rows, n);
    let mut basis = Vec::new();
    for free in (0..n).filter(|c| !pivots.contains(c)) {
        let mut v = vec![BigRational::zero(); n];
        v[free] = BigRational::one();
        for (row, &pc) in a.iter().zip(&pivots) {
            v[pc] = -row[free].clone();
        }
        basis.push(clear_denominators(&v));
    }
    canonical_span_basis(&basis, n)
}

/// Direction of the orthogonal projection of `v` onto the complement of
/// `span(basis)`, scaled positively to a primitive integer vector.
/// `basis` must be linearly independent.
pub(crate) fn project_off(v: &[BigInt], basis: &[IntVec]) -> IntVec {
    if basis.is_empty() {
        return primitive(v.to_vec());
    }
    let b = to_rat(basis);
    let vr: Vec<BigRational> = v.iter().map(|x| BigRational::from_integer(x.clone())).collect();
    let m = b.len();
    // Gram system G y = B v
    let mut g: Vec<Vec<BigRational>> = (0..m)
        .map(|i| {
            let mut row: Vec<BigRational> = (0..m).map(|j| rdot(&b[i], &b[j])).collect();
            row.push(rdot(&b[i], &vr));
            row
        })
        .collect();
    for c in 0..m {
        let p = (c..m).find(|&i| !g[i][c].is_zero()).expect("independent basis");
        g.swap(c, p);
        let inv = g[c][c].recip();
        for x in g[c].iter_mut() {
            *x *= &inv;
        }
        for i in 0..m {
            if i != c && !g[i][c].is_zero() {
                let f = g[i][c].clone();
                for j in 0..=m {
                    let t = &f * &g[c][j];
                    g[i][j] -= t;
                }
            }
        }
    }
    let mut out = vr;
    for (i, brow) in b.iter().enumerate() {
        let y = &g[i][m];
        for (o, x) in out.iter_mut().zip(brow) {
            *o -= y * x;
        }
    }
    clear_denominators(&out)
}

fn rdot(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter().zip(b).fold(BigRational::zero(), |acc, (x, y)| acc + x * y)
}
