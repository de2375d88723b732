//! Dense matrices with exact integer normal forms and rational elimination.
//!
//! Integer routines work over `BigInt` with unimodular column or row
//! operations; nothing is ever rounded. The canonical basis of a sublattice
//! is the row-style Hermite normal form of its generators (pivots positive,
//! entries above a pivot reduced into `[0, pivot)`), returned as columns.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::scalar::Rational;
use crate::{Error, Result};

/// Row-major dense matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

pub type IntMatrix = Matrix<BigInt>;
pub type RatMatrix = Matrix<Rational>;

impl<T: Clone> Matrix<T> {
    pub fn from_vec(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch { expected: rows * cols, found: data.len() });
        }
        Ok(Matrix { rows, cols, data })
    }

    /// Builds from rows; all rows must have `cols` entries.
    pub fn from_rows(cols: usize, rows: Vec<Vec<T>>) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch { expected: cols, found: r.len() });
            }
            data.extend(r);
        }
        Ok(Matrix { rows: n, cols, data })
    }

    /// Builds from columns of equal length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<T>]) -> Result<Self> {
        let cols = columns.len();
        for c in columns {
            if c.len() != rows {
                return Err(Error::DimensionMismatch { expected: rows, found: c.len() });
            }
        }
        let data = (0..rows)
            .flat_map(|r| columns.iter().map(move |c| c[r].clone()))
            .collect();
        Ok(Matrix { rows, cols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<T> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn column_vecs(&self) -> Vec<Vec<T>> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn transpose(&self) -> Self {
        let data = (0..self.cols)
            .flat_map(|c| (0..self.rows).map(move |r| (r, c)))
            .map(|(r, c)| self[(r, c)].clone())
            .collect();
        Matrix { rows: self.cols, cols: self.rows, data }
    }

    /// Stacks `self` on top of `other`.
    pub fn vstack(&self, other: &Self) -> Result<Self> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, found: other.cols });
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(Matrix { rows: self.rows + other.rows, cols: self.cols, data })
    }

    pub fn map<U, F: FnMut(&T) -> U>(&self, f: F) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }
}

impl<T: Clone + Zero + One> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }
}

impl<T> Matrix<T>
where
    T: Clone + Zero,
    for<'a> &'a T: core::ops::Mul<&'a T, Output = T>,
{
    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, found: rhs.rows });
        }
        let mut data = Vec::with_capacity(self.rows * rhs.cols);
        for r in 0..self.rows {
            for c in 0..rhs.cols {
                let mut acc = T::zero();
                for k in 0..self.cols {
                    let a = &self[(r, k)];
                    if !a.is_zero() {
                        acc = acc + a * &rhs[(k, c)];
                    }
                }
                data.push(acc);
            }
        }
        Ok(Matrix { rows: self.rows, cols: rhs.cols, data })
    }

    pub fn mul_vec(&self, v: &[T]) -> Result<Vec<T>> {
        if self.cols != v.len() {
            return Err(Error::DimensionMismatch { expected: self.cols, found: v.len() });
        }
        Ok((0..self.rows).map(|r| dot(self.row(r), v)).collect())
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (r, c): (usize, usize)) -> &T {
        &self.data[r * self.cols + c]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut T {
        &mut self.data[r * self.cols + c]
    }
}

pub fn dot<T>(a: &[T], b: &[T]) -> T
where
    T: Clone + Zero,
    for<'a> &'a T: core::ops::Mul<&'a T, Output = T>,
{
    a.iter()
        .zip(b)
        .filter(|(x, _)| !x.is_zero())
        .fold(T::zero(), |acc, (x, y)| acc + x * y)
}

pub fn int_to_rat(m: &IntMatrix) -> RatMatrix {
    m.map(|x| Rational::from_integer(x.clone()))
}

/// Scales a rational vector by the lcm of its denominators.
pub fn clear_denominators(v: &[Rational]) -> (Vec<BigInt>, BigInt) {
    let l = v.iter().fold(BigInt::one(), |l, q| l.lcm(q.denom()));
    let ints = v.iter().map(|q| q.numer() * (&l / q.denom())).collect();
    (ints, l)
}

/// Result of unimodular column reduction `A * U = H`.
#[derive(Clone, Debug)]
pub struct ColumnEchelon {
    /// Column echelon form; the first `rank` columns are nonzero.
    pub h: IntMatrix,
    /// Unimodular transform.
    pub u: IntMatrix,
    pub rank: usize,
}

/// Reduces `a` by unimodular column operations to column echelon form.
pub fn column_echelon(a: &IntMatrix) -> ColumnEchelon {
    let (m, k) = (a.rows(), a.cols());
    // Column-major working copies; each column carries its A part and its U part.
    let mut cols: Vec<Vec<BigInt>> = (0..k)
        .map(|c| {
            let mut col = a.column(c);
            col.extend((0..k).map(|r| if r == c { BigInt::one() } else { BigInt::zero() }));
            col
        })
        .collect();
    let mut pivot = 0;
    for row in 0..m {
        if pivot == k {
            break;
        }
        loop {
            let best = (pivot..k)
                .filter(|&j| !cols[j][row].is_zero())
                .min_by(|&x, &y| cols[x][row].abs().cmp(&cols[y][row].abs()));
            let Some(best) = best else { break };
            cols.swap(pivot, best);
            let mut done = true;
            for j in pivot + 1..k {
                if cols[j][row].is_zero() {
                    continue;
                }
                let q = cols[j][row].div_floor(&cols[pivot][row]);
                let (head, tail) = cols.split_at_mut(j);
                let p = &head[pivot];
                for (x, y) in tail[0].iter_mut().zip(p) {
                    if !y.is_zero() {
                        *x -= &q * y;
                    }
                }
                if !tail[0][row].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if pivot < k && !cols[pivot][row].is_zero() {
            if cols[pivot][row].is_negative() {
                for x in cols[pivot].iter_mut() {
                    *x = -core::mem::take(x);
                }
            }
            pivot += 1;
        }
    }
    let h_cols: Vec<Vec<BigInt>> = cols.iter().map(|c| c[..m].to_vec()).collect();
    let u_cols: Vec<Vec<BigInt>> = cols.iter().map(|c| c[m..].to_vec()).collect();
    ColumnEchelon {
        h: IntMatrix::from_columns(m, &h_cols).expect("shape"),
        u: IntMatrix::from_columns(k, &u_cols).expect("shape"),
        rank: pivot,
    }
}

/// Row-style Hermite normal form of the lattice generated by `vectors`
/// (all of length `dim`). Returns the nonzero rows.
pub fn hnf_rows(dim: usize, vectors: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let mut rows: Vec<Vec<BigInt>> = vectors.to_vec();
    let mut pivot_row = 0;
    let mut pivots = Vec::new();
    for col in 0..dim {
        if pivot_row == rows.len() {
            break;
        }
        loop {
            let best = (pivot_row..rows.len())
                .filter(|&i| !rows[i][col].is_zero())
                .min_by(|&x, &y| rows[x][col].abs().cmp(&rows[y][col].abs()));
            let Some(best) = best else { break };
            rows.swap(pivot_row, best);
            let mut done = true;
            for i in pivot_row + 1..rows.len() {
                if rows[i][col].is_zero() {
                    continue;
                }
                let q = rows[i][col].div_floor(&rows[pivot_row][col]);
                let (head, tail) = rows.split_at_mut(i);
                for (x, y) in tail[0].iter_mut().zip(&head[pivot_row]) {
                    *x -= &q * y;
                }
                if !tail[0][col].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if pivot_row < rows.len() && !rows[pivot_row][col].is_zero() {
            if rows[pivot_row][col].is_negative() {
                for x in rows[pivot_row].iter_mut() {
                    *x = -core::mem::take(x);
                }
            }
            pivots.push(col);
            pivot_row += 1;
        }
    }
    rows.truncate(pivot_row);
    // Reduce entries above each pivot into [0, pivot).
    for (i, &col) in pivots.iter().enumerate() {
        for r in 0..i {
            let q = rows[r][col].div_floor(&rows[i][col]);
            if q.is_zero() {
                continue;
            }
            let (head, tail) = rows.split_at_mut(i);
            for (x, y) in head[r].iter_mut().zip(&tail[0]) {
                *x -= &q * y;
            }
        }
    }
    rows
}

/// Canonical basis (as columns of a `dim x r` matrix) of the lattice
/// generated by the given vectors.
pub fn lattice_basis(dim: usize, vectors: &[Vec<BigInt>]) -> IntMatrix {
    let rows = hnf_rows(dim, vectors);
    IntMatrix::from_columns(dim, &rows).expect("shape")
}

/// Saturated integer kernel `{x : A x = 0}` as columns of a canonical basis.
pub fn integer_kernel(a: &IntMatrix) -> IntMatrix {
    let ce = column_echelon(a);
    let kernel: Vec<Vec<BigInt>> = (ce.rank..a.cols()).map(|c| ce.u.column(c)).collect();
    lattice_basis(a.cols(), &kernel)
}

/// Invariant factors of an integer matrix (the nonzero diagonal of its Smith
/// normal form), each positive and dividing the next.
pub fn smith_invariants(a: &IntMatrix) -> Vec<BigInt> {
    let mut m = a.row_vecs();
    let (rows, cols) = (a.rows(), a.cols());
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        let pos = (t..rows)
            .flat_map(|r| (t..cols).map(move |c| (r, c)))
            .filter(|&(r, c)| !m[r][c].is_zero())
            .min_by(|&(r1, c1), &(r2, c2)| m[r1][c1].abs().cmp(&m[r2][c2].abs()));
        let Some((pr, pc)) = pos else { break };
        m.swap(t, pr);
        for row in m.iter_mut() {
            row.swap(t, pc);
        }
        let p = m[t][t].clone();
        let mut clean = true;
        for r in t + 1..rows {
            if m[r][t].is_zero() {
                continue;
            }
            let q = m[r][t].div_floor(&p);
            let (head, tail) = m.split_at_mut(r);
            for (x, y) in tail[0].iter_mut().zip(&head[t]) {
                *x -= &q * y;
            }
            clean &= tail[0][t].is_zero();
        }
        for c in t + 1..cols {
            if m[t][c].is_zero() {
                continue;
            }
            let q = m[t][c].div_floor(&p);
            for row in m.iter_mut() {
                let y = row[t].clone();
                row[c] -= &q * &y;
            }
            clean &= m[t][c].is_zero();
        }
        if !clean {
            continue;
        }
        // Pivot must divide the rest of the block; otherwise fold an offending row in.
        let bad = (t + 1..rows).find(|&r| (t + 1..cols).any(|c| !m[r][c].is_multiple_of(&p)));
        if let Some(r) = bad {
            let (head, tail) = m.split_at_mut(r);
            for (x, y) in head[t].iter_mut().zip(&tail[0]) {
                *x += y;
            }
            continue;
        }
        diag.push(p.abs());
        t += 1;
    }
    diag
}

/// Whether the lattice spanned by the columns of `basis` is saturated in `Z^d`
/// and the columns are independent.
pub fn is_saturated_basis(basis: &IntMatrix) -> bool {
    let inv = smith_invariants(basis);
    inv.len() == basis.cols() && inv.iter().all(One::is_one)
}

/// Reduced row echelon form and pivot columns.
pub fn rref(a: &RatMatrix) -> (RatMatrix, Vec<usize>) {
    let mut m = a.clone();
    let (rows, cols) = (m.rows(), m.cols());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[(i, c)].is_zero()) else { continue };
        for j in 0..cols {
            m.data.swap(r * cols + j, p * cols + j);
        }
        let inv = m[(r, c)].recip();
        for j in 0..cols {
            m[(r, j)] = &m[(r, j)] * &inv;
        }
        for i in 0..rows {
            if i == r || m[(i, c)].is_zero() {
                continue;
            }
            let f = m[(i, c)].clone();
            for j in 0..cols {
                let y = &f * &m[(r, j)];
                m[(i, j)] -= y;
            }
        }
        pivots.push(c);
        r += 1;
    }
    (m, pivots)
}

pub fn rank(a: &RatMatrix) -> usize {
    rref(a).1.len()
}

/// Basis of the rational null space `{x : A x = 0}`, one vector per free column.
pub fn nullspace(a: &RatMatrix) -> Vec<Vec<Rational>> {
    let (r, pivots) = rref(a);
    let cols = a.cols();
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![Rational::zero(); cols];
            v[free] = Rational::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -r[(i, free)].clone();
            }
            v
        })
        .collect()
}

/// Solves `A x = b` exactly; `None` if inconsistent. Free variables are set to zero.
pub fn solve(a: &RatMatrix, b: &[Rational]) -> Option<Vec<Rational>> {
    if b.len() != a.rows() {
        return None;
    }
    let cols = a.cols();
    let aug_rows: Vec<Vec<Rational>> = (0..a.rows())
        .map(|r| {
            let mut row = a.row(r).to_vec();
            row.push(b[r].clone());
            row
        })
        .collect();
    let aug = RatMatrix::from_rows(cols + 1, aug_rows).ok()?;
    let (r, pivots) = rref(&aug);
    if pivots.contains(&cols) {
        return None;
    }
    let mut x = vec![Rational::zero(); cols];
    for (i, &p) in pivots.iter().enumerate() {
        x[p] = r[(i, cols)].clone();
    }
    Some(x)
}

/// Exact inverse of a square rational matrix, if it is invertible.
pub fn inverse(a: &RatMatrix) -> Option<RatMatrix> {
    let n = a.rows();
    if a.cols() != n {
        return None;
    }
    let aug_rows: Vec<Vec<Rational>> = (0..n)
        .map(|r| {
            let mut row = a.row(r).to_vec();
            row.extend((0..n).map(|c| if c == r { Rational::one() } else { Rational::zero() }));
            row
        })
        .collect();
    let (r, pivots) = rref(&RatMatrix::from_rows(2 * n, aug_rows).ok()?);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    let rows = (0..n).map(|i| r.row(i)[n..].to_vec()).collect();
    RatMatrix::from_rows(n, rows).ok()
}

pub fn determinant(a: &RatMatrix) -> Rational {
    let n = a.rows();
    let mut m = a.clone();
    let mut det = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[(i, c)].is_zero()) else {
            return Rational::zero();
        };
        if p != c {
            for j in 0..n {
                m.data.swap(c * n + j, p * n + j);
            }
            det = -det;
        }
        let piv = m[(c, c)].clone();
        det *= &piv;
        for i in c + 1..n {
            if m[(i, c)].is_zero() {
                continue;
            }
            let f = &m[(i, c)] / &piv;
            for j in c..n {
                let y = &f * &m[(c, j)];
                m[(i, j)] -= y;
            }
        }
    }
    det
}

/// Coefficients `[c_0, ..., c_n]` of `det(λI - A)` (so `c_n = 1`), by the
/// Faddeev–LeVerrier recursion.
pub fn char_poly(a: &RatMatrix) -> Vec<Rational> {
    let n = a.rows();
    let mut coeffs = vec![Rational::zero(); n + 1];
    coeffs[n] = Rational::one();
    let mut mk = RatMatrix::zeros(n, n);
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        let mut next = a.mul(&mk).expect("square");
        for i in 0..n {
            next[(i, i)] += &coeffs[n - k + 1];
        }
        let am = a.mul(&next).expect("square");
        let trace: Rational = (0..n).map(|i| am[(i, i)].clone()).sum();
        coeffs[n - k] = -trace / Rational::from_integer(BigInt::from(k));
        mk = next;
    }
    coeffs
}
