//! Finite-dimensional commutative algebras, their Hochschild mixed complexes,
//! negative cyclic homology at finite `u`-order, and the Chern character of
//! idempotent matrices.

mod chern;
mod complex;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{format_combination, parse_vector, Field, FieldSpec, Scalar};
use crate::matrix::Matrix;

pub use chern::{chern_character, is_boundary, lift_cycle, CycleSummary, NegCyclicCycle};
pub use complex::{
    full_mixed_complex, hochschild_homology, mixed_complex, negative_cyclic, Flavor,
    HochschildReport, MixedComplex, NegCyclicReport, DEFAULT_COMPLEX_CAP,
};

/// A finite-dimensional commutative unital algebra given by structure
/// constants: `mul[i][j]` is the coordinate vector of `eᵢ·eⱼ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FDAlgebra<F: Field> {
    field: F,
    labels: Vec<String>,
    mul: Vec<Vec<Vec<F::Elem>>>,
    unit: Vec<F::Elem>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraData {
    pub field: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
    pub basis: Vec<String>,
    pub mul: Vec<Vec<Vec<Scalar>>>,
    pub unit: Vec<Scalar>,
}

impl AlgebraData {
    pub fn field_spec(&self) -> Result<FieldSpec> {
        FieldSpec::from_tag(&self.field, self.p)
    }
}

impl<F: Field> FDAlgebra<F> {
    pub fn new(
        field: F,
        labels: Vec<String>,
        mul: Vec<Vec<Vec<F::Elem>>>,
        unit: Vec<F::Elem>,
    ) -> Result<Self> {
        let d = labels.len();
        if d == 0 {
            return Err(Error::Invalid("the zero algebra is not admitted".into()));
        }
        if unit.len() != d
            || mul.len() != d
            || mul
                .iter()
                .any(|r| r.len() != d || r.iter().any(|v| v.len() != d))
        {
            return Err(Error::Invalid(format!(
                "structure constants must be {d}×{d}×{d} with a length-{d} unit"
            )));
        }
        let a = Self {
            field,
            labels,
            mul,
            unit,
        };
        let problems = a.violations();
        if problems.is_empty() {
            Ok(a)
        } else {
            Err(Error::Invalid(format!(
                "not a commutative unital algebra: {}",
                problems.join("; ")
            )))
        }
    }

    fn violations(&self) -> Vec<String> {
        let d = self.dim();
        let mut out = Vec::new();
        for i in 0..d {
            let e = self.basis_vector(i);
            if self.multiply(&self.unit, &e) != e {
                out.push(format!("1·{} ≠ {}", self.labels[i], self.labels[i]));
            }
            for j in 0..d {
                if self.mul[i][j] != self.mul[j][i] {
                    out.push(format!(
                        "{}·{} ≠ {}·{}",
                        self.labels[i], self.labels[j], self.labels[j], self.labels[i]
                    ));
                }
                for k in 0..d {
                    let left = self.multiply(&self.mul[i][j], &self.basis_vector(k));
                    let right = self.multiply(&e, &self.mul[j][k]);
                    if left != right {
                        out.push(format!(
                            "associativity fails at ({}, {}, {})",
                            self.labels[i], self.labels[j], self.labels[k]
                        ));
                    }
                }
            }
        }
        out
    }

    pub fn from_data(field: F, data: &AlgebraData) -> Result<Self> {
        let mul = data
            .mul
            .iter()
            .map(|row| {
                row.iter()
                    .map(|v| parse_vector(field, v))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(
            field,
            data.basis.clone(),
            mul,
            parse_vector(field, &data.unit)?,
        )
    }

    pub fn to_data(&self) -> AlgebraData {
        let f = self.field;
        let vec = |v: &[F::Elem]| v.iter().map(|x| Scalar::from_elem(f, x)).collect();
        let (tag, p) = match f.spec() {
            FieldSpec::Rationals => ("Q".to_string(), None),
            FieldSpec::Prime(p) => ("Fp".to_string(), Some(p)),
        };
        AlgebraData {
            field: tag,
            p,
            basis: self.labels.clone(),
            mul: self
                .mul
                .iter()
                .map(|r| r.iter().map(|v| vec(v)).collect())
                .collect(),
            unit: vec(&self.unit),
        }
    }

    /// The ground field itself.
    pub fn ground(field: F) -> Self {
        Self::new(
            field,
            vec!["1".into()],
            vec![vec![vec![field.one()]]],
            vec![field.one()],
        )
        .expect("k is an algebra")
    }

    /// `kᵏ` with its basis of orthogonal idempotents.
    pub fn product(field: F, k: usize) -> Self {
        let labels = (0..k).map(|i| format!("p{i}")).collect();
        let mul = (0..k)
            .map(|i| {
                (0..k)
                    .map(|j| {
                        (0..k)
                            .map(|l| {
                                if i == j && j == l {
                                    field.one()
                                } else {
                                    field.zero()
                                }
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        Self::new(field, labels, mul, vec![field.one(); k]).expect("kᵏ is an algebra")
    }

    /// `k[ε]/(ε²)` on the basis `1, ε`.
    pub fn dual_numbers(field: F) -> Self {
        Self::truncated_polynomial(field, 2)
    }

    /// `k[x]/(xⁿ)` on the basis `1, x, …, xⁿ⁻¹`.
    pub fn truncated_polynomial(field: F, n: usize) -> Self {
        let labels = (0..n)
            .map(|i| match i {
                0 => "1".to_string(),
                1 if n == 2 => "ε".to_string(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            })
            .collect();
        let mul = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        (0..n)
                            .map(|l| {
                                if i + j == l {
                                    field.one()
                                } else {
                                    field.zero()
                                }
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let mut unit = vec![field.zero(); n];
        unit[0] = field.one();
        Self::new(field, labels, mul, unit).expect("truncated polynomials form an algebra")
    }

    pub fn field(&self) -> F {
        self.field
    }
    pub fn dim(&self) -> usize {
        self.labels.len()
    }
    pub fn labels(&self) -> &[String] {
        &self.labels
    }
    pub fn unit(&self) -> &[F::Elem] {
        &self.unit
    }
    pub fn basis_product(&self, i: usize, j: usize) -> &[F::Elem] {
        &self.mul[i][j]
    }

    pub fn basis_vector(&self, i: usize) -> Vec<F::Elem> {
        let f = self.field;
        (0..self.dim())
            .map(|k| if k == i { f.one() } else { f.zero() })
            .collect()
    }

    pub fn zero(&self) -> Vec<F::Elem> {
        vec![self.field.zero(); self.dim()]
    }

    pub fn add(&self, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
        a.iter().zip(b).map(|(x, y)| self.field.add(x, y)).collect()
    }

    pub fn sub(&self, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
        a.iter().zip(b).map(|(x, y)| self.field.sub(x, y)).collect()
    }

    pub fn multiply(&self, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
        let f = self.field;
        let mut out = self.zero();
        for (i, x) in a.iter().enumerate().filter(|(_, x)| !f.is_zero(x)) {
            for (j, y) in b.iter().enumerate().filter(|(_, y)| !f.is_zero(y)) {
                let xy = f.mul(x, y);
                for (o, c) in out.iter_mut().zip(&self.mul[i][j]) {
                    *o = f.add(o, &f.mul(&xy, c));
                }
            }
        }
        out
    }

    pub fn format(&self, a: &[F::Elem]) -> String {
        format_combination(self.field, a.iter().zip(self.labels.iter().cloned()))
    }

    /// An isomorphic algebra whose first basis vector is the unit, and the
    /// change of coordinates `old → new`. The remaining basis vectors are the
    /// old ones except the first that has a nonzero unit coordinate.
    pub fn with_unit_first(&self) -> (Self, Matrix<F>) {
        let f = self.field;
        let d = self.dim();
        let pivot = self
            .unit
            .iter()
            .position(|x| !f.is_zero(x))
            .expect("the unit of a nonzero algebra is nonzero");
        let kept: Vec<usize> = (0..d).filter(|&k| k != pivot).collect();
        let q = Matrix::from_fn(f, d, d, |r, c| {
            if c == 0 {
                self.unit[r].clone()
            } else if r == kept[c - 1] {
                f.one()
            } else {
                f.zero()
            }
        });
        let p = q
            .inverse()
            .expect("unit plus the other basis vectors is a basis");
        let new_vec = |v: &[F::Elem]| p.mul_vec(v).expect("dimensions agree");
        let mul = (0..d)
            .map(|a| {
                (0..d)
                    .map(|b| new_vec(&self.multiply(&q.column(a), &q.column(b))))
                    .collect()
            })
            .collect();
        let mut labels = vec!["1".to_string()];
        labels.extend(kept.iter().map(|&k| self.labels[k].clone()));
        let rebased = Self {
            field: f,
            labels,
            mul,
            unit: new_vec(&self.unit),
        };
        (rebased, p)
    }
}

/// A square matrix with entries in an [`FDAlgebra`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraMatrix<F: Field> {
    size: usize,
    entries: Vec<Vec<Vec<F::Elem>>>,
}

/// An idempotent `e = e²` over an algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdempotentMatrix<F: Field> {
    matrix: AlgebraMatrix<F>,
}

impl<F: Field> AlgebraMatrix<F> {
    pub fn new(a: &FDAlgebra<F>, entries: Vec<Vec<Vec<F::Elem>>>) -> Result<Self> {
        let size = entries.len();
        if entries
            .iter()
            .any(|r| r.len() != size || r.iter().any(|x| x.len() != a.dim()))
        {
            return Err(Error::Invalid(format!(
                "expected a {size}×{size} matrix of length-{} vectors",
                a.dim()
            )));
        }
        Ok(Self { size, entries })
    }

    pub fn from_scalars(a: &FDAlgebra<F>, rows: &[&[i64]]) -> Self {
        let f = a.field();
        let entries = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|&x| a.unit().iter().map(|u| f.mul(u, &f.from_i64(x))).collect())
                    .collect()
            })
            .collect();
        Self::new(a, entries).expect("square scalar matrix")
    }

    pub fn from_data(a: &FDAlgebra<F>, data: &[Vec<Vec<Scalar>>]) -> Result<Self> {
        let entries = data
            .iter()
            .map(|r| {
                r.iter()
                    .map(|v| parse_vector(a.field(), v))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(a, entries)
    }

    pub fn to_data(&self, a: &FDAlgebra<F>) -> Vec<Vec<Vec<Scalar>>> {
        let f = a.field();
        self.entries
            .iter()
            .map(|r| {
                r.iter()
                    .map(|v| v.iter().map(|x| Scalar::from_elem(f, x)).collect())
                    .collect()
            })
            .collect()
    }

    pub fn size(&self) -> usize {
        self.size
    }
    pub fn entry(&self, r: usize, c: usize) -> &[F::Elem] {
        &self.entries[r][c]
    }

    pub fn identity(a: &FDAlgebra<F>, n: usize) -> Self {
        let entries = (0..n)
            .map(|r| {
                (0..n)
                    .map(|c| if r == c { a.unit().to_vec() } else { a.zero() })
                    .collect()
            })
            .collect();
        Self { size: n, entries }
    }

    pub fn mul(&self, a: &FDAlgebra<F>, rhs: &Self) -> Result<Self> {
        if self.size != rhs.size {
            return Err(Error::Invalid("matrix sizes differ".into()));
        }
        let n = self.size;
        let entries = (0..n)
            .map(|r| {
                (0..n)
                    .map(|c| {
                        (0..n).fold(a.zero(), |acc, k| {
                            a.add(&acc, &a.multiply(&self.entries[r][k], &rhs.entries[k][c]))
                        })
                    })
                    .collect()
            })
            .collect();
        Ok(Self { size: n, entries })
    }

    pub fn trace(&self, a: &FDAlgebra<F>) -> Vec<F::Elem> {
        (0..self.size).fold(a.zero(), |acc, k| a.add(&acc, &self.entries[k][k]))
    }

    pub fn direct_sum(&self, a: &FDAlgebra<F>, rhs: &Self) -> Self {
        let n = self.size + rhs.size;
        let entries = (0..n)
            .map(|r| {
                (0..n)
                    .map(|c| match (r < self.size, c < self.size) {
                        (true, true) => self.entries[r][c].clone(),
                        (false, false) => rhs.entries[r - self.size][c - self.size].clone(),
                        _ => a.zero(),
                    })
                    .collect()
            })
            .collect();
        Self { size: n, entries }
    }

    /// Kronecker product over the algebra, left factor major.
    pub fn kron(&self, a: &FDAlgebra<F>, rhs: &Self) -> Self {
        let m = rhs.size;
        let n = self.size * m;
        let entries = (0..n)
            .map(|r| {
                (0..n)
                    .map(|c| a.multiply(&self.entries[r / m][c / m], &rhs.entries[r % m][c % m]))
                    .collect()
            })
            .collect();
        Self { size: n, entries }
    }

    /// Inverse by exhaustive elimination over the underlying field: the
    /// matrix acts `k`-linearly on `Aⁿ`.
    pub fn inverse(&self, a: &FDAlgebra<F>) -> Option<Self> {
        let (n, d) = (self.size, a.dim());
        let f = a.field();
        let linear = Matrix::from_fn(f, n * d, n * d, |row, col| {
            let (r, k) = (row / d, row % d);
            let (c, j) = (col / d, col % d);
            a.multiply(&self.entries[r][c], &a.basis_vector(j))[k].clone()
        });
        let inv = linear.inverse()?;
        let entries = (0..n)
            .map(|r| {
                (0..n)
                    .map(|c| {
                        (0..d)
                            .map(|k| {
                                (0..d).fold(f.zero(), |acc, j| {
                                    f.add(&acc, &f.mul(inv.get(r * d + k, c * d + j), &a.unit()[j]))
                                })
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let candidate = Self { size: n, entries };
        let id = Self::identity(a, n);
        (candidate.mul(a, self).ok()? == id && self.mul(a, &candidate).ok()? == id)
            .then_some(candidate)
    }

    pub fn format(&self, a: &FDAlgebra<F>) -> Vec<Vec<String>> {
        self.entries
            .iter()
            .map(|r| r.iter().map(|x| a.format(x)).collect())
            .collect()
    }
}

impl<F: Field> IdempotentMatrix<F> {
    pub fn new(a: &FDAlgebra<F>, m: AlgebraMatrix<F>) -> Result<Self> {
        if m.mul(a, &m)? != m {
            return Err(Error::Invalid("matrix is not idempotent".into()));
        }
        Ok(Self { matrix: m })
    }

    pub fn matrix(&self) -> &AlgebraMatrix<F> {
        &self.matrix
    }

    pub fn trace(&self, a: &FDAlgebra<F>) -> Vec<F::Elem> {
        self.matrix.trace(a)
    }

    pub fn direct_sum(&self, a: &FDAlgebra<F>, rhs: &Self) -> Self {
        Self {
            matrix: self.matrix.direct_sum(a, &rhs.matrix),
        }
    }

    pub fn kron(&self, a: &FDAlgebra<F>, rhs: &Self) -> Self {
        Self {
            matrix: self.matrix.kron(a, &rhs.matrix),
        }
    }

    /// `g e g⁻¹`.
    pub fn conjugate(&self, a: &FDAlgebra<F>, g: &AlgebraMatrix<F>) -> Result<Self> {
        let g_inv = g
            .inverse(a)
            .ok_or_else(|| Error::Invalid("conjugating matrix is not invertible".into()))?;
        let m = g.mul(a, &self.matrix)?.mul(a, &g_inv)?;
        Ok(Self { matrix: m })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    #[test]
    fn standard_algebras_validate() {
        let q = Rationals;
        assert_eq!(FDAlgebra::ground(q).dim(), 1);
        assert_eq!(FDAlgebra::product(q, 2).dim(), 2);
        let eps = FDAlgebra::dual_numbers(PrimeField::new(3).unwrap());
        assert!(eps
            .multiply(&eps.basis_vector(1), &eps.basis_vector(1))
            .iter()
            .all(|&x| x == 0));
    }

    #[test]
    fn non_commutative_table_rejected() {
        let q = Rationals;
        let z = q.zero();
        let o = q.one();
        let mul = vec![
            vec![vec![o.clone(), z.clone()], vec![z.clone(), o.clone()]],
            vec![vec![z.clone(), z.clone()], vec![z.clone(), z.clone()]],
        ];
        assert!(FDAlgebra::new(q, vec!["1".into(), "x".into()], mul, vec![o, z]).is_err());
    }

    #[test]
    fn rebasing_puts_unit_first() {
        let a = FDAlgebra::product(Rationals, 2);
        let (b, p) = a.with_unit_first();
        assert_eq!(b.unit(), b.basis_vector(0).as_slice());
        // p0 = (1, 0) becomes 1 - p1 in the new basis.
        let p0 = p.mul_vec(&a.basis_vector(0)).unwrap();
        assert_eq!(b.format(&p0), "1 - p1");
        assert!(FDAlgebra::new(
            b.field(),
            b.labels().to_vec(),
            b.mul.clone(),
            b.unit.clone()
        )
        .is_ok());
    }

    #[test]
    fn data_roundtrip() {
        let a = FDAlgebra::dual_numbers(Rationals);
        let json = serde_json::to_string(&a.to_data()).unwrap();
        let back: AlgebraData = serde_json::from_str(&json).unwrap();
        assert_eq!(FDAlgebra::from_data(Rationals, &back).unwrap(), a);
    }

    #[test]
    fn idempotents_and_inverses() {
        let a = FDAlgebra::dual_numbers(Rationals);
        let e = AlgebraMatrix::from_scalars(&a, &[&[1, 0], &[0, 0]]);
        let e = IdempotentMatrix::new(&a, e).unwrap();
        let eps = a.basis_vector(1);
        let g = AlgebraMatrix::new(
            &a,
            vec![
                vec![a.unit().to_vec(), eps.clone()],
                vec![eps, a.unit().to_vec()],
            ],
        )
        .unwrap();
        let conj = e.conjugate(&a, &g).unwrap();
        assert!(IdempotentMatrix::new(&a, conj.matrix().clone()).is_ok());
        assert_eq!(conj.trace(&a), e.trace(&a));
        assert!(IdempotentMatrix::new(&a, AlgebraMatrix::from_scalars(&a, &[&[2]])).is_err());
    }
}
