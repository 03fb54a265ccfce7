//! Finite-dimensional vector spaces over an exact field, skeletally: the
//! object `n` is `Fⁿ`, morphisms are matrices, `⊗` is the Kronecker product.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::{permutation_matrix, Matrix};

use super::{DualityDatum, SymmetricMonoidal};

/// Matrices over `F` with object universe `0..=max_dim`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MatrixCategory<F: Field> {
    field: F,
    max_dim: usize,
}

impl<F: Field> MatrixCategory<F> {
    pub fn new(field: F, max_dim: usize) -> Self {
        Self { field, max_dim }
    }

    pub fn field(&self) -> F {
        self.field
    }

    pub fn max_dim(&self) -> usize {
        self.max_dim
    }

    /// The standard pairing: `t = vec(I)ᵀ : n⊗n → 1` and `u = vec(I) : 1 → n⊗n`.
    pub fn standard_duality(&self, n: usize) -> DualityDatum<usize, Matrix<F>> {
        let f = self.field;
        let delta = |k: usize| {
            if k / n.max(1) == k % n.max(1) {
                f.one()
            } else {
                f.zero()
            }
        };
        DualityDatum {
            x: n,
            dual: n,
            t: Matrix::from_fn(f, 1, n * n, |_, k| delta(k)),
            u: Matrix::from_fn(f, n * n, 1, |k, _| delta(k)),
        }
    }
}

impl<F: Field> SymmetricMonoidal for MatrixCategory<F> {
    type Obj = usize;
    type Mor = Matrix<F>;

    fn source(&self, f: &Matrix<F>) -> usize {
        f.cols()
    }
    fn target(&self, f: &Matrix<F>) -> usize {
        f.rows()
    }
    fn identity(&self, x: &usize) -> Matrix<F> {
        Matrix::identity(self.field, *x)
    }
    fn compose(&self, g: &Matrix<F>, f: &Matrix<F>) -> Result<Matrix<F>> {
        g.mul(f).ok_or_else(|| {
            Error::NotComposable(format!(
                "{}×{} after {}×{}",
                g.rows(),
                g.cols(),
                f.rows(),
                f.cols()
            ))
        })
    }
    fn unit(&self) -> usize {
        1
    }
    fn tensor(&self, x: &usize, y: &usize) -> usize {
        x * y
    }
    fn tensor_mor(&self, f: &Matrix<F>, g: &Matrix<F>) -> Matrix<F> {
        f.kron(g)
    }
    fn symmetry(&self, m: &usize, n: &usize) -> Matrix<F> {
        let perm: Vec<usize> = (0..m * n).map(|k| (k % n) * m + k / n).collect();
        permutation_matrix(self.field, &perm)
    }
    fn objects(&self) -> Vec<usize> {
        (0..=self.max_dim).collect()
    }
    fn hom_size(&self, x: &usize, y: &usize) -> Option<u128> {
        let q = self.field.order()? as u128;
        q.checked_pow((x * y) as u32)
    }
    fn hom(&self, x: &usize, y: &usize) -> Result<Vec<Matrix<F>>> {
        Matrix::enumerate_all(self.field, *y, *x).ok_or_else(|| Error::CapExceeded {
            what: format!("Hom({x}, {y}) over {:?}", self.field.spec()),
            needed: u128::MAX,
            cap: 0,
        })
    }
    fn inverse(&self, f: &Matrix<F>) -> Option<Matrix<F>> {
        f.inverse()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::smc::check_smc;

    #[test]
    fn symmetry_swaps_factors() {
        let a = MatrixCategory::new(Rationals, 3);
        let s = a.symmetry(&2, &3);
        let x = Matrix::from_i64_rows(Rationals, &[&[1], &[2]]);
        let y = Matrix::from_i64_rows(Rationals, &[&[3], &[4], &[5]]);
        assert_eq!(s.mul(&x.kron(&y)).unwrap(), y.kron(&x));
        assert!(a.symmetry(&1, &3).is_identity());
    }

    #[test]
    fn f2_axioms() {
        let a = MatrixCategory::new(PrimeField::new(2).unwrap(), 2);
        assert_eq!(check_smc(&a, 16), Vec::<String>::new());
    }

    #[test]
    fn standard_duality_is_valid() {
        let a = MatrixCategory::new(Rationals, 4);
        for n in 0..=4 {
            assert!(a.standard_duality(n).verify(&a));
        }
    }
}
