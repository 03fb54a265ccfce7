use serde::Serialize;

use super::complex::{mixed_complex, MixedComplex};
use super::{FDAlgebra, IdempotentMatrix};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::Matrix;

/// A cycle `c₀ + c₂u + … + c₂ₖuᴷ` of the negative cyclic complex modulo
/// `u^{K+1}`: `b c₀ = 0` and `B c₂ⱼ + b c₂ⱼ₊₂ = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NegCyclicCycle<F: Field> {
    pub uorder: usize,
    /// `components[j]` lives in degree `2j`, in the basis of the complex.
    pub components: Vec<Vec<F::Elem>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CycleSummary {
    pub uorder: usize,
    pub components: Vec<String>,
    pub verified: bool,
}

impl<F: Field> NegCyclicCycle<F> {
    /// Re-checks the cycle equations exactly in `c`.
    pub fn verify(&self, c: &MixedComplex<F>) -> bool {
        let zero = |v: &[F::Elem]| v.iter().all(|x| c.field().is_zero(x));
        let cs = &self.components;
        if cs.len() != self.uorder + 1 || 2 * self.uorder + 1 > c.bound() {
            return false;
        }
        if cs.iter().enumerate().any(|(j, v)| v.len() != c.dim(2 * j)) {
            return false;
        }
        (0..self.uorder).all(|j| {
            let lhs = c.connes(2 * j).mul_vec(&cs[j]).expect("shapes");
            let rhs = c.b(2 * j + 2).mul_vec(&cs[j + 1]).expect("shapes");
            zero(
                &lhs.iter()
                    .zip(&rhs)
                    .map(|(x, y)| c.field().add(x, y))
                    .collect::<Vec<_>>(),
            )
        })
    }

    pub fn summary(&self, c: &MixedComplex<F>) -> CycleSummary {
        CycleSummary {
            uorder: self.uorder,
            components: self
                .components
                .iter()
                .enumerate()
                .map(|(j, v)| c.format_chain(2 * j, v))
                .collect(),
            verified: self.verify(c),
        }
    }
}

/// Extends `c₀` (given in the coordinates of `c`) to a cycle modulo
/// `u^{K+1}` by solving all the equations `b c₂ⱼ₊₂ = −B c₂ⱼ` at once. The
/// solution is the reduced-echelon one: every free coordinate is zero.
pub fn lift_cycle<F: Field>(
    c: &MixedComplex<F>,
    c0: Vec<F::Elem>,
    uorder: usize,
) -> Result<NegCyclicCycle<F>> {
    let f = c.field();
    if 2 * uorder + 1 > c.bound() {
        return Err(Error::BoundTooSmall(format!(
            "u-order {uorder} needs degree bound {}",
            2 * uorder + 1
        )));
    }
    if uorder == 0 {
        return Ok(NegCyclicCycle {
            uorder,
            components: vec![c0],
        });
    }
    let col_off: Vec<usize> = (1..=uorder)
        .scan(0, |acc, l| {
            let o = *acc;
            *acc += c.dim(2 * l);
            Some(o)
        })
        .collect();
    let row_off: Vec<usize> = (0..uorder)
        .scan(0, |acc, j| {
            let o = *acc;
            *acc += c.dim(2 * j + 1);
            Some(o)
        })
        .collect();
    let cols = col_off[uorder - 1] + c.dim(2 * uorder);
    let rows = row_off[uorder - 1] + c.dim(2 * uorder - 1);
    let mut system = Matrix::zeros(f, rows, cols);
    let mut place = |r0: usize, c0: usize, m: &Matrix<F>| {
        for r in 0..m.rows() {
            for k in 0..m.cols() {
                system.set(r0 + r, c0 + k, m.get(r, k).clone());
            }
        }
    };
    for j in 0..uorder {
        place(row_off[j], col_off[j], c.b(2 * j + 2));
        if j >= 1 {
            place(row_off[j], col_off[j - 1], c.connes(2 * j));
        }
    }
    let mut rhs = vec![f.zero(); rows];
    for (k, x) in c
        .connes(0)
        .mul_vec(&c0)
        .expect("shapes")
        .into_iter()
        .enumerate()
    {
        rhs[k] = f.neg(&x);
    }
    let x = system.solve(&rhs).ok_or_else(|| {
        Error::TheoryViolation(
            "the Chern character has no lift: b c₂ⱼ₊₂ = −B c₂ⱼ is inconsistent".into(),
        )
    })?;
    let mut components = vec![c0];
    for l in 1..=uorder {
        components.push(x[col_off[l - 1]..col_off[l - 1] + c.dim(2 * l)].to_vec());
    }
    let cycle = NegCyclicCycle { uorder, components };
    if !cycle.verify(c) {
        return Err(Error::TheoryViolation(
            "solved lift fails the cycle equations".into(),
        ));
    }
    Ok(cycle)
}

/// The Chern character of `e` in negative cyclic homology modulo
/// `u^{K+1}`, on the normalized complex of `a` built up to `bound`.
/// `c₀ = tr(e)`; the higher components are solved for.
pub fn chern_character<F: Field>(
    a: &FDAlgebra<F>,
    e: &IdempotentMatrix<F>,
    uorder: usize,
    bound: usize,
    cap: usize,
) -> Result<(MixedComplex<F>, NegCyclicCycle<F>)> {
    if bound < 2 * uorder + 2 {
        return Err(Error::BoundTooSmall(format!(
            "u-order {uorder} needs degree bound at least {}",
            2 * uorder + 2
        )));
    }
    let c = mixed_complex(a, bound, cap)?;
    let c0 = c.to_internal().mul_vec(&e.trace(a)).expect("shapes");
    let cycle = lift_cycle(&c, c0, uorder)?;
    Ok((c, cycle))
}

/// Whether `x ∈ Cₙ` (coordinates of `c`) is a `b`-boundary.
pub fn is_boundary<F: Field>(c: &MixedComplex<F>, n: usize, x: &[F::Elem]) -> bool {
    if x.iter().all(|v| c.field().is_zero(v)) {
        return true;
    }
    n < c.bound() && c.b(n + 1).solve(x).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclic::complex::{full_mixed_complex, DEFAULT_COMPLEX_CAP};
    use crate::cyclic::AlgebraMatrix;
    use crate::field::Rationals;

    #[test]
    fn unit_over_ground_field_has_trivial_lift() {
        let a = FDAlgebra::ground(Rationals);
        let e = IdempotentMatrix::new(&a, AlgebraMatrix::from_scalars(&a, &[&[1]])).unwrap();
        let (c, cycle) = chern_character(&a, &e, 2, 6, DEFAULT_COMPLEX_CAP).unwrap();
        assert_eq!(cycle.components[0], vec![Rationals.one()]);
        assert!(cycle.components[1..].iter().all(|v| v.is_empty()));
        assert!(cycle.verify(&c));
    }

    #[test]
    fn projector_in_product_needs_a_correction() {
        let a = FDAlgebra::product(Rationals, 2);
        let p0 = vec![a.basis_vector(0)];
        let e = IdempotentMatrix::new(&a, AlgebraMatrix::new(&a, vec![p0]).unwrap()).unwrap();
        assert_eq!(a.format(&e.trace(&a)), "p0");
        let (c, cycle) = chern_character(&a, &e, 2, 6, DEFAULT_COMPLEX_CAP).unwrap();
        assert!(cycle.verify(&c));
        assert!(!c
            .connes(0)
            .mul_vec(&cycle.components[0])
            .unwrap()
            .iter()
            .all(|x| Rationals.is_zero(x)));
        assert!(cycle.components[1].iter().any(|x| !Rationals.is_zero(x)));
    }

    #[test]
    fn full_complex_lift_also_exists() {
        let a = FDAlgebra::dual_numbers(Rationals);
        let eps = a.basis_vector(1);
        let e = AlgebraMatrix::new(
            &a,
            vec![vec![a.unit().to_vec(), eps], vec![a.zero(), a.zero()]],
        )
        .unwrap();
        let e = IdempotentMatrix::new(&a, e).unwrap();
        let c = full_mixed_complex(&a, 5, DEFAULT_COMPLEX_CAP).unwrap();
        let c0 = c.to_internal().mul_vec(&e.trace(&a)).unwrap();
        assert!(lift_cycle(&c, c0, 2).unwrap().verify(&c));
    }

    #[test]
    fn bound_is_checked() {
        let a = FDAlgebra::ground(Rationals);
        let e = IdempotentMatrix::new(&a, AlgebraMatrix::from_scalars(&a, &[&[1]])).unwrap();
        assert!(matches!(
            chern_character(&a, &e, 2, 5, DEFAULT_COMPLEX_CAP),
            Err(Error::BoundTooSmall(_))
        ));
    }
}
