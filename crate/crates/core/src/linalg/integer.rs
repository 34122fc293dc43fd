use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Dense row-major matrix of arbitrary-precision integers.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from row slices. Panics if the rows are ragged.
    pub fn from_rows<T, R>(rows: &[R]) -> Self
    where
        T: Clone + Into<BigInt>,
        R: AsRef<[T]>,
    {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            let row = row.as_ref();
            assert_eq!(row.len(), cols, "ragged rows");
            entries.extend(row.iter().cloned().map(Into::into));
        }
        Self {
            rows: rows.len(),
            cols,
            entries,
        }
    }

    /// Builds a matrix whose columns are the given vectors, all of length `rows`.
    pub fn from_columns<'a, I>(rows: usize, columns: I) -> Self
    where
        I: IntoIterator<Item = &'a [BigInt]>,
    {
        let columns: Vec<&[BigInt]> = columns.into_iter().collect();
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column {j} has wrong length");
            for (i, v) in col.iter().enumerate() {
                m[(i, j)] = v.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
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

    pub fn mul(&self, rhs: &IntegerMatrix) -> IntegerMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in product");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    /// Keeps the listed rows, in the given order.
    pub fn select_rows(&self, rows: &[usize]) -> IntegerMatrix {
        let mut entries = Vec::with_capacity(rows.len() * self.cols);
        for &r in rows {
            entries.extend_from_slice(self.row(r));
        }
        IntegerMatrix {
            rows: rows.len(),
            cols: self.cols,
            entries,
        }
    }

    fn is_zero_row(&self, i: usize) -> bool {
        self.row(i).iter().all(Zero::is_zero)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for v in &mut self.entries[i * self.cols..(i + 1) * self.cols] {
            *v = -std::mem::take(v);
        }
    }

    /// row[target] -= factor * row[source]
    fn sub_row_multiple(&mut self, target: usize, source: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let s = &self.entries[source * self.cols + j];
            if !s.is_zero() {
                let delta = factor * s;
                self.entries[target * self.cols + j] -= delta;
            }
        }
    }

    /// Replaces rows (a, b) by (s*a + t*b, u*a + v*b).
    fn combine_rows(&mut self, a: usize, b: usize, coeffs: [&BigInt; 4]) {
        let [s, t, u, v] = coeffs;
        for j in 0..self.cols {
            let x = &self.entries[a * self.cols + j];
            let y = &self.entries[b * self.cols + j];
            if x.is_zero() && y.is_zero() {
                continue;
            }
            let new_a = s * x + t * y;
            let new_b = u * x + v * y;
            self.entries[a * self.cols + j] = new_a;
            self.entries[b * self.cols + j] = new_b;
        }
    }
}

impl Index<(usize, usize)> for IntegerMatrix {
    type Output = BigInt;

    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        assert!(i < self.rows && j < self.cols);
        &self.entries[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntegerMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        assert!(i < self.rows && j < self.cols);
        &mut self.entries[i * self.cols + j]
    }
}

impl fmt::Debug for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries((0..self.rows).map(|i| {
                self.row(i)
                    .iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
            }))
            .finish()
    }
}

impl fmt::Display for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (j, v) in self.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{v}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Hermite normal form of an `n x d` integer matrix of full column rank.
///
/// Returns `(H, U)` with `U` an `n x n` unimodular matrix and `U * M = H`.
/// `H` is in row-echelon Hermite form: the first `d` rows form an upper
/// triangular block with positive diagonal (the pivots), each entry above a
/// pivot lies in `[0, pivot)`, and the remaining `n - d` rows are zero.
///
/// The columns of `M` are thought of as lattice vectors spanning a cone; the
/// row operations are a change of basis of the ambient lattice, so the
/// sublattice spanned by the columns has index `|det H_top|` inside the
/// lattice points of its span.
pub fn hermite_normal_form(m: &IntegerMatrix) -> Result<(IntegerMatrix, IntegerMatrix)> {
    let (n, d) = (m.rows(), m.cols());
    if n < d {
        return Err(Error::OverWideMatrix { rows: n, cols: d });
    }
    let mut h = m.clone();
    let mut u = IntegerMatrix::identity(n);

    for j in 0..d {
        // the pivot for column j goes into row j because the rank is full
        let Some(first) = (j..n).find(|&i| !h[(i, j)].is_zero()) else {
            return Err(Error::NotSimplicial(format!(
                "column {j} is a rational combination of the previous columns"
            )));
        };
        h.swap_rows(j, first);
        u.swap_rows(j, first);

        for i in (j + 1)..n {
            if h[(i, j)].is_zero() {
                continue;
            }
            let a = h[(j, j)].clone();
            let b = h[(i, j)].clone();
            let ext = a.extended_gcd(&b);
            let (g, s, t) = (ext.gcd, ext.x, ext.y);
            let u_coef = -(&b / &g);
            let v_coef = &a / &g;
            // determinant s*v - t*u = (s*a + t*b)/g = 1
            h.combine_rows(j, i, [&s, &t, &u_coef, &v_coef]);
            u.combine_rows(j, i, [&s, &t, &u_coef, &v_coef]);
        }

        if h[(j, j)].is_negative() {
            h.negate_row(j);
            u.negate_row(j);
        }

        let pivot = h[(j, j)].clone();
        for i in 0..j {
            let q = h[(i, j)].div_floor(&pivot);
            if !q.is_zero() {
                h.sub_row_multiple(i, j, &q);
                u.sub_row_multiple(i, j, &q);
            }
        }
    }
    Ok((h, u))
}

/// Drops all-zero rows from a Hermite form, leaving the square pivot block.
pub fn strip_zero_rows(h: &IntegerMatrix) -> Result<IntegerMatrix> {
    let keep: Vec<usize> = (0..h.rows()).filter(|&i| !h.is_zero_row(i)).collect();
    let block = h.select_rows(&keep);
    if !block.is_square() {
        return Err(Error::Internal(format!(
            "Hermite block is {}x{} after removing zero rows",
            block.rows(),
            block.cols()
        )));
    }
    Ok(block)
}

/// True when `h` satisfies the canonical-form predicates produced by
/// [`hermite_normal_form`]: nonzero rows first, strictly increasing pivot
/// columns, positive pivots and entries above each pivot reduced into
/// `[0, pivot)`.
pub fn is_hermite_normal_form(h: &IntegerMatrix) -> bool {
    let mut last_pivot: Option<usize> = None;
    let mut seen_zero_row = false;
    for i in 0..h.rows() {
        let Some(p) = h.row(i).iter().position(|v| !v.is_zero()) else {
            seen_zero_row = true;
            continue;
        };
        if seen_zero_row || last_pivot.is_some_and(|lp| p <= lp) {
            return false;
        }
        let pivot = &h[(i, p)];
        if !pivot.is_positive() {
            return false;
        }
        if (0..i).any(|k| h[(k, p)].is_negative() || &h[(k, p)] >= pivot) {
            return false;
        }
        last_pivot = Some(p);
    }
    true
}

/// Exact determinant by Bareiss fraction-free elimination.
pub fn determinant(m: &IntegerMatrix) -> Result<BigInt> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    if n == 0 {
        return Ok(BigInt::one());
    }
    let mut a = m.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[(k, k)].is_zero() {
            match ((k + 1)..n).find(|&i| !a[(i, k)].is_zero()) {
                Some(i) => {
                    a.swap_rows(k, i);
                    sign = -sign;
                }
                None => return Ok(BigInt::zero()),
            }
        }
        for i in (k + 1)..n {
            for j in (k + 1)..n {
                let num = &a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)];
                // exact by Sylvester's identity
                a[(i, j)] = num / &prev;
            }
            a[(i, k)] = BigInt::zero();
        }
        prev = a[(k, k)].clone();
    }
    Ok(sign * &a[(n - 1, n - 1)])
}
