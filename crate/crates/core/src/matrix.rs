//! Dense matrices over an exact [`Field`], with the elimination routines the
//! homology and duality code needs.

use std::fmt;

use crate::field::Field;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matrix<F: Field> {
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
    field: F,
}

/// Row echelon data produced by [`Matrix::rref`].
#[derive(Clone, Debug)]
pub struct Echelon<F: Field> {
    pub reduced: Matrix<F>,
    pub pivots: Vec<usize>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(field: F, rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
            field,
        }
    }

    pub fn identity(field: F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    pub fn from_fn(
        field: F,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> F::Elem,
    ) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Self {
            rows,
            cols,
            data,
            field,
        }
    }

    /// Builds a matrix from row vectors. All rows must have `cols` entries.
    pub fn from_rows(
        field: F,
        rows: usize,
        cols: usize,
        entries: Vec<Vec<F::Elem>>,
    ) -> Option<Self> {
        if entries.len() != rows || entries.iter().any(|r| r.len() != cols) {
            return None;
        }
        Some(Self {
            rows,
            cols,
            data: entries.into_iter().flatten().collect(),
            field,
        })
    }

    pub fn from_i64_rows(field: F, entries: &[&[i64]]) -> Self {
        let rows = entries.len();
        let cols = entries.first().map_or(0, |r| r.len());
        Self::from_fn(field, rows, cols, |r, c| field.from_i64(entries[r][c]))
    }

    /// A column vector.
    pub fn column_vector(field: F, v: Vec<F::Elem>) -> Self {
        Self {
            rows: v.len(),
            cols: 1,
            data: v,
            field,
        }
    }

    pub fn field(&self) -> F {
        self.field
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

    pub fn get(&self, r: usize, c: usize) -> &F::Elem {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: F::Elem) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[F::Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<F::Elem> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<F::Elem>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| self.field.is_zero(x))
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| {
                    let x = self.get(r, c);
                    if r == c {
                        self.field.is_one(x)
                    } else {
                        self.field.is_zero(x)
                    }
                })
            })
    }

    /// `self * rhs`; `None` on a shape mismatch.
    pub fn mul(&self, rhs: &Self) -> Option<Self> {
        if self.cols != rhs.rows {
            return None;
        }
        let f = self.field;
        let mut out = Self::zeros(f, self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if f.is_zero(a) {
                    continue;
                }
                for c in 0..rhs.cols {
                    let b = rhs.get(k, c);
                    if f.is_zero(b) {
                        continue;
                    }
                    let idx = r * rhs.cols + c;
                    out.data[idx] = f.add(&out.data[idx], &f.mul(a, b));
                }
            }
        }
        Some(out)
    }

    pub fn mul_vec(&self, v: &[F::Elem]) -> Option<Vec<F::Elem>> {
        if v.len() != self.cols {
            return None;
        }
        let f = self.field;
        Some(
            (0..self.rows)
                .map(|r| {
                    self.row(r)
                        .iter()
                        .zip(v)
                        .filter(|(a, b)| !f.is_zero(a) && !f.is_zero(b))
                        .fold(f.zero(), |acc, (a, b)| f.add(&acc, &f.mul(a, b)))
                })
                .collect(),
        )
    }

    pub fn add(&self, rhs: &Self) -> Option<Self> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return None;
        }
        let f = self.field;
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| f.add(a, b))
            .collect();
        Some(Self {
            rows: self.rows,
            cols: self.cols,
            data,
            field: f,
        })
    }

    pub fn neg(&self) -> Self {
        let f = self.field;
        Self {
            data: self.data.iter().map(|a| f.neg(a)).collect(),
            ..self.clone()
        }
    }

    pub fn sub(&self, rhs: &Self) -> Option<Self> {
        self.add(&rhs.neg())
    }

    pub fn scale(&self, s: &F::Elem) -> Self {
        let f = self.field;
        Self {
            data: self.data.iter().map(|a| f.mul(a, s)).collect(),
            ..self.clone()
        }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.field, self.cols, self.rows, |r, c| {
            self.get(c, r).clone()
        })
    }

    /// Kronecker product, with `self`'s index as the major coordinate.
    pub fn kron(&self, rhs: &Self) -> Self {
        let f = self.field;
        Self::from_fn(f, self.rows * rhs.rows, self.cols * rhs.cols, |r, c| {
            f.mul(
                self.get(r / rhs.rows, c / rhs.cols),
                rhs.get(r % rhs.rows, c % rhs.cols),
            )
        })
    }

    pub fn trace(&self) -> Option<F::Elem> {
        if !self.is_square() {
            return None;
        }
        let f = self.field;
        Some((0..self.rows).fold(f.zero(), |acc, i| f.add(&acc, self.get(i, i))))
    }

    /// Reduced row echelon form by Gauss–Jordan elimination.
    pub fn rref(&self) -> Echelon<F> {
        let f = self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !f.is_zero(m.get(r, col))) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = f.inv(m.get(row, col)).expect("pivot is nonzero");
            for c in col..m.cols {
                let v = f.mul(m.get(row, c), &inv);
                m.set(row, c, v);
            }
            for r in 0..m.rows {
                if r == row || f.is_zero(m.get(r, col)) {
                    continue;
                }
                let factor = m.get(r, col).clone();
                for c in col..m.cols {
                    let v = f.sub(m.get(r, c), &f.mul(&factor, m.get(row, c)));
                    m.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        Echelon { reduced: m, pivots }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Basis of the null space, one vector per free column, read off the
    /// reduced echelon form (free variable set to 1, other free variables 0).
    pub fn kernel(&self) -> Vec<Vec<F::Elem>> {
        let f = self.field;
        let Echelon { reduced, pivots } = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![f.zero(); self.cols];
                v[fc] = f.one();
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = f.neg(reduced.get(r, fc));
                }
                v
            })
            .collect()
    }

    /// Solves `self · x = b`. Returns the echelon representative: every
    /// free variable is zero. `None` when the system is inconsistent.
    pub fn solve(&self, b: &[F::Elem]) -> Option<Vec<F::Elem>> {
        if b.len() != self.rows {
            return None;
        }
        let f = self.field;
        let aug = Self::from_fn(f, self.rows, self.cols + 1, |r, c| {
            if c < self.cols {
                self.get(r, c).clone()
            } else {
                b[r].clone()
            }
        });
        let Echelon { reduced, pivots } = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![f.zero(); self.cols];
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = reduced.get(r, self.cols).clone();
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let f = self.field;
        let aug = Self::from_fn(f, n, 2 * n, |r, c| {
            if c < n {
                self.get(r, c).clone()
            } else if c - n == r {
                f.one()
            } else {
                f.zero()
            }
        });
        let Echelon { reduced, pivots } = aug.rref();
        if pivots.len() < n || pivots.iter().take(n).enumerate().any(|(i, &p)| i != p) {
            return None;
        }
        Some(Self::from_fn(f, n, n, |r, c| reduced.get(r, c + n).clone()))
    }

    /// Every `rows × cols` matrix over a finite field, in lexicographic order
    /// of the row-major entry list. `None` for infinite fields.
    pub fn enumerate_all(field: F, rows: usize, cols: usize) -> Option<Vec<Self>> {
        let elems = field.elements()?;
        let n = rows * cols;
        let q = elems.len();
        let total = q.checked_pow(n as u32)?;
        let mut out = Vec::with_capacity(total);
        let mut digits = vec![0usize; n];
        for _ in 0..total {
            let data = digits.iter().map(|&d| elems[d].clone()).collect();
            out.push(Self {
                rows,
                cols,
                data,
                field,
            });
            for d in digits.iter_mut().rev() {
                *d += 1;
                if *d < q {
                    break;
                }
                *d = 0;
            }
        }
        Some(out)
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, rhs: &Self) -> Self {
        let f = self.field;
        Self::from_fn(f, self.rows + rhs.rows, self.cols + rhs.cols, |r, c| {
            if r < self.rows && c < self.cols {
                self.get(r, c).clone()
            } else if r >= self.rows && c >= self.cols {
                rhs.get(r - self.rows, c - self.cols).clone()
            } else {
                f.zero()
            }
        })
    }

    /// Exact textual rows, for reports.
    pub fn format_rows(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|r| self.row(r).iter().map(|x| self.field.format(x)).collect())
            .collect()
    }
}

impl<F: Field> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.format_rows().iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

/// The permutation matrix sending basis vector `j` to basis vector `perm[j]`.
pub fn permutation_matrix<F: Field>(field: F, perm: &[usize]) -> Matrix<F> {
    let n = perm.len();
    Matrix::from_fn(field, n, n, |r, c| {
        if perm[c] == r {
            field.one()
        } else {
            field.zero()
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    #[test]
    fn rank_and_kernel() {
        let q = Rationals;
        let m = Matrix::from_i64_rows(q, &[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(m.rank(), 2);
        let ker = m.kernel();
        assert_eq!(ker.len(), 1);
        assert!(m.mul_vec(&ker[0]).unwrap().iter().all(|x| q.is_zero(x)));
    }

    #[test]
    fn solve_picks_free_zero_representative() {
        let q = Rationals;
        let m = Matrix::from_i64_rows(q, &[&[1, 1, 0], &[0, 0, 1]]);
        let x = m.solve(&[q.from_i64(3), q.from_i64(2)]).unwrap();
        assert_eq!(x, vec![q.from_i64(3), q.zero(), q.from_i64(2)]);
        let bad = Matrix::from_i64_rows(q, &[&[1, 1], &[1, 1]]);
        assert!(bad.solve(&[q.one(), q.zero()]).is_none());
    }

    #[test]
    fn inverse_and_singular() {
        let f = PrimeField::new(2).unwrap();
        let all = Matrix::enumerate_all(f, 2, 2).unwrap();
        assert_eq!(all.len(), 16);
        let invertible = all.iter().filter(|m| m.inverse().is_some()).count();
        assert_eq!(invertible, 6);
        for m in &all {
            if let Some(inv) = m.inverse() {
                assert!(m.mul(&inv).unwrap().is_identity());
            }
        }
    }

    #[test]
    fn kron_shapes() {
        let q = Rationals;
        let a = Matrix::from_i64_rows(q, &[&[1, 2]]);
        let b = Matrix::from_i64_rows(q, &[&[0], &[1]]);
        let k = a.kron(&b);
        assert_eq!((k.rows(), k.cols()), (2, 2));
        assert_eq!(k, Matrix::from_i64_rows(q, &[&[0, 0], &[1, 2]]));
    }
}
