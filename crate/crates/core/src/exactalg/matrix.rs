//! Dense integer matrices over `BigInt`: fraction-free elimination, exact
//! characteristic polynomials, integer kernels and rational solves.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{AlgebraError, IntPolynomial};

/// Default bound on the order search in [`matrix_order`].
pub const DEFAULT_ORDER_CAP: u64 = 10_000;

pub type IntVector = Vec<BigInt>;

/// Row-major dense integer matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix rows");
        IntMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect())
    }

    /// Matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(rows: usize, columns: &[IntVector]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length mismatch");
            for (i, x) in col.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(d: usize) -> Self {
        let mut m = Self::zeros(d, d);
        for i in 0..d {
            m[(i, i)] = BigInt::one();
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

    /// Dimension of a square matrix.
    pub fn dim(&self) -> usize {
        debug_assert!(self.is_square());
        self.rows
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<IntVector> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> IntVector {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Self::identity(self.rows)
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

    pub fn mul(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows, "matrix product shape mismatch");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] += a * &rhs[(k, j)];
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> IntVector {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn pow(&self, mut e: u64) -> IntMatrix {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut acc = Self::identity(self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn sub(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn minus_identity(&self) -> IntMatrix {
        self.sub(&Self::identity(self.rows))
    }

    pub fn trace(&self) -> BigInt {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)].clone()).sum()
    }

    /// Bareiss fraction-free elimination. Returns the rank and, for square
    /// input, the determinant.
    fn bareiss(&self) -> (usize, BigInt) {
        let mut a = self.clone();
        let (rows, cols) = (a.rows, a.cols);
        let mut prev = BigInt::one();
        let mut sign = BigInt::one();
        let mut rank = 0;
        for col in 0..cols {
            if rank == rows {
                break;
            }
            let Some(piv) = (rank..rows).find(|&r| !a[(r, col)].is_zero()) else {
                continue;
            };
            if piv != rank {
                a.swap_rows(piv, rank);
                sign = -sign;
            }
            for r in rank + 1..rows {
                for c in col + 1..cols {
                    let v = &a[(rank, col)] * &a[(r, c)] - &a[(r, col)] * &a[(rank, c)];
                    a[(r, c)] = v / &prev;
                }
                a[(r, col)] = BigInt::zero();
            }
            prev = a[(rank, col)].clone();
            rank += 1;
        }
        let det = if self.is_square() && rank == rows {
            if rows == 0 { BigInt::one() } else { sign * prev }
        } else {
            BigInt::zero()
        };
        (rank, det)
    }

    pub fn rank(&self) -> usize {
        self.bareiss().0
    }

    pub fn det(&self) -> BigInt {
        assert!(self.is_square(), "determinant of a non-square matrix");
        self.bareiss().1
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(i * self.cols + c, j * self.cols + c);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + i, r * self.cols + j);
        }
    }

    /// Unimodular column operation on columns `(a, b)` with matrix
    /// `[[s, u], [t, v]]`: `col_a <- s col_a + t col_b`, `col_b <- u col_a + v col_b`.
    fn col_op(&mut self, a: usize, b: usize, s: &BigInt, t: &BigInt, u: &BigInt, v: &BigInt) {
        for r in 0..self.rows {
            let x = self[(r, a)].clone();
            let y = self[(r, b)].clone();
            self[(r, a)] = s * &x + t * &y;
            self[(r, b)] = u * &x + v * &y;
        }
    }

    fn row_op(&mut self, a: usize, b: usize, s: &BigInt, t: &BigInt, u: &BigInt, v: &BigInt) {
        for c in 0..self.cols {
            let x = self[(a, c)].clone();
            let y = self[(b, c)].clone();
            self[(a, c)] = s * &x + t * &y;
            self[(b, c)] = u * &x + v * &y;
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

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries((0..self.rows).map(|i| self.row(i))).finish()
    }
}

/// `det(1 - q·g)` as an exact integer polynomial.
///
/// Uses the Faddeev–LeVerrier recursion on the characteristic polynomial
/// `det(x - g) = Σ c_i x^i`; every division by `k` is exact for integer
/// input. Reversing the coefficient list gives `det(1 - q g)`.
pub fn char_poly_one_minus_qg(g: &IntMatrix) -> IntPolynomial {
    assert!(g.is_square(), "char_poly_one_minus_qg: matrix must be square");
    let d = g.dim();
    // c[i] is the coefficient of x^i in det(x - g).
    let mut c = vec![BigInt::zero(); d + 1];
    c[d] = BigInt::one();
    let mut m = IntMatrix::zeros(d, d);
    for k in 1..=d {
        m = g.mul(&m);
        for i in 0..d {
            m[(i, i)] += &c[d - k + 1];
        }
        let tr = g.mul(&m).trace();
        let (quot, rem) = tr.div_rem(&BigInt::from(k));
        assert!(rem.is_zero(), "Faddeev–LeVerrier division is exact for integer matrices");
        c[d - k] = -quot;
    }
    // coefficient of q^m in det(1 - q g) is c[d - m]
    IntPolynomial::new(c.into_iter().rev().collect())
}

/// Smallest `n >= 1` with `g^n = I`, searching up to `cap`.
pub fn matrix_order(g: &IntMatrix, cap: u64) -> Result<u64, AlgebraError> {
    assert!(g.is_square(), "matrix_order: matrix must be square");
    let mut power = g.clone();
    for n in 1..=cap {
        if power.is_identity() {
            return Ok(n);
        }
        power = power.mul(g);
    }
    Err(AlgebraError::OrderExceedsCap { cap })
}

/// `dim {v : g v = v}`, as `d - rank(g - I)`.
pub fn fixed_subspace_dimension(g: &IntMatrix) -> usize {
    g.dim() - g.minus_identity().rank()
}

/// Row-style Hermite normal form of the lattice spanned by the rows of `m`.
/// Zero rows are dropped; pivots are positive and entries above each pivot
/// are reduced into `[0, pivot)`.
pub fn hermite_rows(m: &IntMatrix) -> IntMatrix {
    let mut a = m.clone();
    let mut pivot_row = 0;
    for col in 0..a.cols {
        if pivot_row == a.rows {
            break;
        }
        // fold the gcd of the column (below pivot_row) into pivot_row
        for r in pivot_row + 1..a.rows {
            if a[(r, col)].is_zero() {
                continue;
            }
            let x = a[(pivot_row, col)].clone();
            let y = a[(r, col)].clone();
            let e = x.extended_gcd(&y);
            let (g, s, t) = (e.gcd, e.x, e.y);
            let u = -(&y / &g);
            let v = &x / &g;
            a.row_op(pivot_row, r, &s, &t, &u, &v);
        }
        if a[(pivot_row, col)].is_zero() {
            continue;
        }
        if a[(pivot_row, col)].is_negative() {
            for c in 0..a.cols {
                a[(pivot_row, c)] = -a[(pivot_row, c)].clone();
            }
        }
        let piv = a[(pivot_row, col)].clone();
        for r in 0..pivot_row {
            let f = a[(r, col)].div_floor(&piv);
            if !f.is_zero() {
                for c in 0..a.cols {
                    let sub = &f * &a[(pivot_row, c)];
                    a[(r, c)] -= sub;
                }
            }
        }
        pivot_row += 1;
    }
    let kept: Vec<IntVector> = a.to_rows().into_iter().take(pivot_row).collect();
    if kept.is_empty() {
        IntMatrix::zeros(0, m.cols)
    } else {
        IntMatrix::from_rows(kept)
    }
}

/// Basis of the saturated integer kernel `{v ∈ Z^c : m v = 0}`.
///
/// Column-reduces `m` by unimodular operations `m U = [H | 0]`; the columns
/// of `U` under the zero block span the kernel lattice. The result is put in
/// Hermite normal form so the basis is canonical.
pub fn integer_kernel_basis(m: &IntMatrix) -> Vec<IntVector> {
    let (rows, cols) = (m.rows, m.cols);
    let mut a = m.clone();
    let mut u = IntMatrix::identity(cols);
    let mut pivot_col = 0;
    for r in 0..rows {
        if pivot_col == cols {
            break;
        }
        let Some(first) = (pivot_col..cols).find(|&c| !a[(r, c)].is_zero()) else {
            continue;
        };
        a.swap_cols(first, pivot_col);
        u.swap_cols(first, pivot_col);
        for c in pivot_col + 1..cols {
            if a[(r, c)].is_zero() {
                continue;
            }
            let x = a[(r, pivot_col)].clone();
            let y = a[(r, c)].clone();
            let e = x.extended_gcd(&y);
            let (g, s, t) = (e.gcd, e.x, e.y);
            let uu = -(&y / &g);
            let vv = &x / &g;
            a.col_op(pivot_col, c, &s, &t, &uu, &vv);
            u.col_op(pivot_col, c, &s, &t, &uu, &vv);
        }
        pivot_col += 1;
    }
    if pivot_col == cols {
        return Vec::new();
    }
    let kernel: Vec<IntVector> = (pivot_col..cols).map(|c| u.column(c)).collect();
    hermite_rows(&IntMatrix::from_rows(kernel)).to_rows()
}

/// Solves `b x = v` over the rationals for `b` with full column rank.
/// Returns `None` when the system is inconsistent.
pub fn solve_rational(b: &IntMatrix, v: &[BigInt]) -> Option<Vec<BigRational>> {
    let (rows, cols) = (b.rows, b.cols);
    assert_eq!(v.len(), rows);
    let mut a: Vec<Vec<BigRational>> = (0..rows)
        .map(|i| {
            b.row(i)
                .iter()
                .chain(std::iter::once(&v[i]))
                .map(|x| BigRational::from_integer(x.clone()))
                .collect()
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(p, r);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                let pivot_row = a[r].clone();
                for (x, p) in a[i].iter_mut().zip(&pivot_row).skip(c) {
                    *x -= &f * p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if a[r..].iter().any(|row| !row[cols].is_zero()) {
        return None;
    }
    if pivots.len() != cols {
        // rank deficient: solution not unique
        return None;
    }
    Some((0..cols).map(|i| a[i][cols].clone()).collect())
}

/// Integer solution of `b x = v`, if one exists (`b` of full column rank).
pub fn solve_integral(b: &IntMatrix, v: &[BigInt]) -> Option<IntVector> {
    solve_rational(b, v)?
        .into_iter()
        .map(|x| x.is_integer().then(|| x.to_integer()))
        .collect()
}

/// Normal vector `w` to the span of `d - 1` vectors in `Z^d`, defined by
/// `w · x = det[v_1; …; v_{d-1}; x]`. Zero iff the vectors are dependent.
pub fn normal_vector(vectors: &[IntVector], d: usize) -> IntVector {
    assert_eq!(vectors.len() + 1, d, "normal_vector needs d - 1 vectors");
    (0..d)
        .map(|i| {
            let minor: Vec<IntVector> = vectors
                .iter()
                .map(|v| v.iter().enumerate().filter(|&(k, _)| k != i).map(|(_, x)| x.clone()).collect())
                .collect();
            let det = if minor.is_empty() { BigInt::one() } else { IntMatrix::from_rows(minor).det() };
            if (d - 1 + i).is_multiple_of(2) { det } else { -det }
        })
        .collect()
}

pub fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// gcd of the entries, zero for the zero vector.
pub fn content(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_i64_rows(rows)
    }

    fn v(xs: &[i64]) -> IntVector {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn char_poly_examples() {
        assert_eq!(char_poly_one_minus_qg(&IntMatrix::identity(2)), IntPolynomial::from_i64(&[1, -2, 1]));
        assert_eq!(char_poly_one_minus_qg(&m(&[&[0, -1], &[1, 0]])), IntPolynomial::from_i64(&[1, 0, 1]));
        assert_eq!(char_poly_one_minus_qg(&m(&[&[-1, 0], &[0, -1]])), IntPolynomial::from_i64(&[1, 2, 1]));
        assert_eq!(char_poly_one_minus_qg(&IntMatrix::zeros(0, 0)), IntPolynomial::one());
    }

    #[test]
    fn order_examples() {
        assert_eq!(matrix_order(&IntMatrix::identity(3), 10).unwrap(), 1);
        assert_eq!(matrix_order(&m(&[&[0, -1], &[1, 0]]), 10).unwrap(), 4);
        assert_eq!(
            matrix_order(&m(&[&[1, 1], &[0, 1]]), 100),
            Err(AlgebraError::OrderExceedsCap { cap: 100 })
        );
        assert_eq!(matrix_order(&IntMatrix::zeros(0, 0), 1).unwrap(), 1);
    }

    #[test]
    fn fixed_dimension_examples() {
        assert_eq!(fixed_subspace_dimension(&IntMatrix::identity(3)), 3);
        assert_eq!(fixed_subspace_dimension(&m(&[&[-1, 0], &[0, -1]])), 0);
        assert_eq!(fixed_subspace_dimension(&m(&[&[1, 0], &[0, -1]])), 1);
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(integer_kernel_basis(&IntMatrix::zeros(2, 2)), vec![v(&[1, 0]), v(&[0, 1])]);
        assert!(integer_kernel_basis(&IntMatrix::identity(2)).is_empty());
        assert_eq!(integer_kernel_basis(&m(&[&[0, 0], &[0, -2]])), vec![v(&[1, 0])]);
        // saturation: kernel of [2, -4] is spanned by (2, 1), not (4, 2)
        assert_eq!(integer_kernel_basis(&m(&[&[2, -4]])), vec![v(&[2, 1])]);
    }

    #[test]
    fn determinant_and_rank() {
        assert_eq!(m(&[&[2, 1], &[1, 1]]).det(), BigInt::from(1));
        assert_eq!(m(&[&[0, 1], &[1, 0]]).det(), BigInt::from(-1));
        assert_eq!(m(&[&[1, 2], &[2, 4]]).det(), BigInt::from(0));
        assert_eq!(m(&[&[1, 2], &[2, 4]]).rank(), 1);
        assert_eq!(m(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 10]]).det(), BigInt::from(-3));
    }

    #[test]
    fn rational_solves() {
        let b = IntMatrix::from_columns(3, &[v(&[1, 0, 1]), v(&[0, 1, 1])]);
        assert_eq!(solve_integral(&b, &v(&[2, 3, 5])), Some(v(&[2, 3])));
        assert_eq!(solve_rational(&b, &v(&[2, 3, 4])), None);
        let b = IntMatrix::from_columns(1, &[v(&[2])]);
        assert_eq!(solve_integral(&b, &v(&[1])), None);
    }

    #[test]
    fn normals() {
        assert_eq!(normal_vector(&[v(&[1, 0])], 2), v(&[0, 1]));
        let w = normal_vector(&[v(&[1, 0, 0]), v(&[0, 1, 0])], 3);
        assert_eq!(w, v(&[0, 0, 1]));
        assert_eq!(normal_vector(&[], 1), v(&[1]));
    }
}
