use std::collections::HashMap;

use serde::Serialize;

use super::FDAlgebra;
use crate::error::{Error, Result};
use crate::field::{format_combination, Field};
use crate::matrix::Matrix;

/// Largest chain group (as a dimension over the ground field) that
/// [`mixed_complex`] will assemble.
pub const DEFAULT_COMPLEX_CAP: usize = 1 << 14;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavor {
    /// `Cₙ = A^{⊗(n+1)}` with `B = (1 − t)·s·N`.
    Full,
    /// `C̄ₙ = A ⊗ Ā^{⊗n}` with `Ā = A/k·1`.
    Normalized,
}

/// A mixed complex `(C, b, B)` truncated at degree `bound`, in the basis of
/// tensors of basis vectors of a unit-first copy of the algebra.
#[derive(Clone, Debug)]
pub struct MixedComplex<F: Field> {
    algebra: FDAlgebra<F>,
    to_internal: Matrix<F>,
    flavor: Flavor,
    bound: usize,
    tensors: Vec<Vec<Vec<usize>>>,
    b: Vec<Matrix<F>>,
    big_b: Vec<Matrix<F>>,
}

type Terms<F> = Vec<(Vec<usize>, <F as Field>::Elem)>;

fn sign<F: Field>(f: F, odd: bool) -> F::Elem {
    if odd {
        f.neg(&f.one())
    } else {
        f.one()
    }
}

/// `tⁱ(a₀,…,aₙ) = (−1)^{ni} (a_{n−i+1},…,aₙ,a₀,…,a_{n−i})`.
fn rotate(t: &[usize], i: usize) -> Vec<usize> {
    let k = t.len() - i % t.len();
    t[k..].iter().chain(&t[..k]).copied().collect()
}

impl<F: Field> MixedComplex<F> {
    fn build(a: &FDAlgebra<F>, bound: usize, flavor: Flavor, cap: usize) -> Result<Self> {
        let (algebra, to_internal) = a.with_unit_first();
        let d = algebra.dim();
        let f = algebra.field();
        let top_dim = match flavor {
            Flavor::Full => d.checked_pow(bound as u32 + 1),
            Flavor::Normalized => (d - 1)
                .checked_pow(bound as u32)
                .and_then(|x| x.checked_mul(d)),
        };
        let top_dim = top_dim.unwrap_or(usize::MAX);
        if top_dim > cap {
            return Err(Error::CapExceeded {
                what: format!("chain group in degree {bound}"),
                needed: top_dim as u128,
                cap: cap as u128,
            });
        }

        let first = 0..d;
        let rest = match flavor {
            Flavor::Full => 0..d,
            Flavor::Normalized => 1..d,
        };
        let mut tensors: Vec<Vec<Vec<usize>>> = vec![first.map(|i| vec![i]).collect()];
        for n in 1..=bound {
            let next = tensors[n - 1]
                .iter()
                .flat_map(|t| {
                    rest.clone()
                        .map(move |i| t.iter().copied().chain([i]).collect())
                })
                .collect();
            tensors.push(next);
        }
        let index: Vec<HashMap<Vec<usize>, usize>> = tensors
            .iter()
            .map(|level| {
                level
                    .iter()
                    .enumerate()
                    .map(|(k, t)| (t.clone(), k))
                    .collect()
            })
            .collect();

        let assemble =
            |from: usize, to: usize, column: &dyn Fn(&[usize]) -> Terms<F>| -> Matrix<F> {
                let mut m = Matrix::zeros(f, tensors[to].len(), tensors[from].len());
                for (c, t) in tensors[from].iter().enumerate() {
                    for (target, coeff) in column(t) {
                        if let Some(&r) = index[to].get(&target) {
                            let v = f.add(m.get(r, c), &coeff);
                            m.set(r, c, v);
                        }
                    }
                }
                m
            };

        let hochschild = |t: &[usize]| -> Terms<F> {
            let n = t.len() - 1;
            let mut out = Vec::new();
            for k in 0..n {
                let s = sign(f, k % 2 == 1);
                for (l, c) in algebra
                    .basis_product(t[k], t[k + 1])
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !f.is_zero(c))
                {
                    let mut target = t[..k].to_vec();
                    target.push(l);
                    target.extend_from_slice(&t[k + 2..]);
                    out.push((target, f.mul(&s, c)));
                }
            }
            let s = sign(f, n % 2 == 1);
            for (l, c) in algebra
                .basis_product(t[n], t[0])
                .iter()
                .enumerate()
                .filter(|(_, c)| !f.is_zero(c))
            {
                let mut target = vec![l];
                target.extend_from_slice(&t[1..n]);
                out.push((target, f.mul(&s, c)));
            }
            out
        };

        let connes_full = |t: &[usize]| -> Terms<F> {
            let n = t.len() - 1;
            let mut out = Vec::new();
            for i in 0..=n {
                let s = sign(f, (n * i) % 2 == 1);
                let mut z = vec![0];
                z.extend(rotate(t, i));
                let wrapped = rotate(&z, 1);
                out.push((z, s.clone()));
                out.push((wrapped, f.neg(&f.mul(&s, &sign(f, (n + 1) % 2 == 1)))));
            }
            out
        };

        let connes_normalized = |t: &[usize]| -> Terms<F> {
            if t[0] == 0 {
                return Vec::new();
            }
            let n = t.len() - 1;
            (0..=n)
                .map(|i| {
                    let mut z = vec![0];
                    z.extend(rotate(t, n + 1 - i));
                    (z, sign(f, (n * i) % 2 == 1))
                })
                .collect()
        };

        let mut b = vec![Matrix::zeros(f, 0, tensors[0].len())];
        for n in 1..=bound {
            b.push(assemble(n, n - 1, &hochschild));
        }
        let big_b = (0..bound)
            .map(|n| match flavor {
                Flavor::Full => assemble(n, n + 1, &connes_full),
                Flavor::Normalized => assemble(n, n + 1, &connes_normalized),
            })
            .collect();
        Ok(Self {
            algebra,
            to_internal,
            flavor,
            bound,
            tensors,
            b,
            big_b,
        })
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }
    pub fn bound(&self) -> usize {
        self.bound
    }
    pub fn field(&self) -> F {
        self.algebra.field()
    }
    /// The unit-first algebra whose basis labels the tensors.
    pub fn algebra(&self) -> &FDAlgebra<F> {
        &self.algebra
    }
    /// Coordinates of the original algebra → coordinates of [`Self::algebra`].
    pub fn to_internal(&self) -> &Matrix<F> {
        &self.to_internal
    }
    pub fn dim(&self, n: usize) -> usize {
        self.tensors[n].len()
    }
    pub fn basis(&self, n: usize) -> &[Vec<usize>] {
        &self.tensors[n]
    }

    /// `b : Cₙ → Cₙ₋₁` (`n ≥ 1`).
    pub fn b(&self, n: usize) -> &Matrix<F> {
        &self.b[n]
    }

    /// `B : Cₙ → Cₙ₊₁` (`n < bound`).
    pub fn connes(&self, n: usize) -> &Matrix<F> {
        &self.big_b[n]
    }

    /// Every failure of `b² = 0`, `B² = 0`, `bB + Bb = 0` up to the bound.
    pub fn identity_failures(&self) -> Vec<String> {
        let mut out = Vec::new();
        for n in 2..=self.bound {
            if !self.b[n - 1].mul(&self.b[n]).expect("shapes").is_zero() {
                out.push(format!("b∘b ≠ 0 on C{n}"));
            }
        }
        for n in 0..self.bound.saturating_sub(1) {
            if !self.big_b[n + 1]
                .mul(&self.big_b[n])
                .expect("shapes")
                .is_zero()
            {
                out.push(format!("B∘B ≠ 0 on C{n}"));
            }
        }
        for n in 0..self.bound {
            let bb = self.b[n + 1].mul(&self.big_b[n]).expect("shapes");
            let sum = if n == 0 {
                bb
            } else {
                bb.add(&self.big_b[n - 1].mul(&self.b[n]).expect("shapes"))
                    .expect("shapes")
            };
            if !sum.is_zero() {
                out.push(format!("bB + Bb ≠ 0 on C{n}"));
            }
        }
        out
    }

    pub fn format_tensor(&self, t: &[usize]) -> String {
        t.iter()
            .map(|&i| self.algebra.labels()[i].as_str())
            .collect::<Vec<_>>()
            .join("⊗")
    }

    /// A chain in degree `n` as a sum of basis tensors.
    pub fn format_chain(&self, n: usize, v: &[F::Elem]) -> String {
        format_combination(
            self.field(),
            v.iter()
                .zip(self.tensors[n].iter().map(|t| self.format_tensor(t))),
        )
    }
}

/// The normalized mixed complex `(A ⊗ Ā^{⊗n}, b, B)` up to degree `bound`.
pub fn mixed_complex<F: Field>(
    a: &FDAlgebra<F>,
    bound: usize,
    cap: usize,
) -> Result<MixedComplex<F>> {
    if bound == 0 {
        return Err(Error::BoundTooSmall(
            "a mixed complex needs degree bound at least 1".into(),
        ));
    }
    MixedComplex::build(a, bound, Flavor::Normalized, cap)
}

/// The full Hochschild mixed complex `(A^{⊗(n+1)}, b, (1 − t)sN)`.
pub fn full_mixed_complex<F: Field>(
    a: &FDAlgebra<F>,
    bound: usize,
    cap: usize,
) -> Result<MixedComplex<F>> {
    if bound == 0 {
        return Err(Error::BoundTooSmall(
            "a mixed complex needs degree bound at least 1".into(),
        ));
    }
    MixedComplex::build(a, bound, Flavor::Full, cap)
}

/// Dimension of `ker(out) / im(into)` and representatives of a basis.
fn homology<F: Field>(
    f: F,
    dim: usize,
    out: Option<&Matrix<F>>,
    into: &Matrix<F>,
) -> (usize, Vec<Vec<F::Elem>>) {
    let cycles = match out {
        Some(m) if m.rows() > 0 => m.kernel(),
        _ => (0..dim)
            .map(|k| {
                (0..dim)
                    .map(|r| if r == k { f.one() } else { f.zero() })
                    .collect()
            })
            .collect(),
    };
    let mut span: Vec<Vec<F::Elem>> = (0..into.cols()).map(|c| into.column(c)).collect();
    let rank = |cols: &[Vec<F::Elem>]| {
        if cols.is_empty() {
            0
        } else {
            Matrix::from_fn(f, dim, cols.len(), |r, c| cols[c][r].clone()).rank()
        }
    };
    let mut current = rank(&span);
    let mut reps = Vec::new();
    for z in cycles {
        span.push(z.clone());
        let r = rank(&span);
        if r > current {
            current = r;
            reps.push(z);
        } else {
            span.pop();
        }
    }
    (reps.len(), reps)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HochschildReport {
    pub degree: usize,
    pub dim_full: usize,
    pub dim_normalized: usize,
    /// Cycles of the normalized complex whose classes form a basis.
    pub representatives: Vec<String>,
}

impl HochschildReport {
    pub fn agree(&self) -> bool {
        self.dim_full == self.dim_normalized
    }
}

/// `HHₙ(A)` computed on both the full and the normalized complex.
pub fn hochschild_homology<F: Field>(
    a: &FDAlgebra<F>,
    n: usize,
    bound: usize,
    cap: usize,
) -> Result<HochschildReport> {
    if n >= bound {
        return Err(Error::BoundTooSmall(format!(
            "HH_{n} needs degree bound above {n}, got {bound}"
        )));
    }
    let f = a.field();
    let full = full_mixed_complex(a, n + 1, cap)?;
    let norm = mixed_complex(a, n + 1, cap)?;
    let out = |c: &MixedComplex<F>| if n == 0 { None } else { Some(c.b(n).clone()) };
    let (dim_full, _) = homology(f, full.dim(n), out(&full).as_ref(), full.b(n + 1));
    let (dim_normalized, reps) = homology(f, norm.dim(n), out(&norm).as_ref(), norm.b(n + 1));
    Ok(HochschildReport {
        degree: n,
        dim_full,
        dim_normalized,
        representatives: reps.iter().map(|v| norm.format_chain(n, v)).collect(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NegCyclicReport {
    pub degree: usize,
    pub uorder: usize,
    /// `dims[k]` is the dimension at truncation `u^{k+1} = 0`.
    pub dims: Vec<usize>,
    pub dimension: usize,
    /// The last two truncations agree.
    pub stabilized: bool,
}

/// Blocks `(j, Cₘ₊₂ⱼ)` of the total complex in degree `m` modulo `u^{K+1}`.
fn total_blocks(m: isize, k: usize, bound: usize) -> Vec<(usize, usize)> {
    (0..=k)
        .filter_map(|j| {
            let deg = m + 2 * j as isize;
            (deg >= 0 && deg as usize <= bound).then_some((j, deg as usize))
        })
        .collect()
}

/// `D = b + uB : Tₘ → Tₘ₋₁` on the total complex modulo `u^{K+1}`.
fn total_differential<F: Field>(c: &MixedComplex<F>, m: isize, k: usize) -> Matrix<F> {
    let f = c.field();
    let src = total_blocks(m, k, c.bound());
    let tgt = total_blocks(m - 1, k, c.bound());
    let offsets = |blocks: &[(usize, usize)]| {
        let mut acc = 0;
        blocks
            .iter()
            .map(|&(j, deg)| {
                let o = acc;
                acc += c.dim(deg);
                (j, deg, o)
            })
            .collect::<Vec<_>>()
    };
    let (so, to) = (offsets(&src), offsets(&tgt));
    let rows = to.last().map_or(0, |&(_, d, o)| o + c.dim(d));
    let cols = so.last().map_or(0, |&(_, d, o)| o + c.dim(d));
    let mut out = Matrix::zeros(f, rows, cols);
    for &(j, deg, co) in &so {
        for &(jt, tdeg, ro) in &to {
            let block = if jt == j && deg >= 1 && tdeg == deg - 1 {
                c.b(deg)
            } else if jt == j + 1 && tdeg == deg + 1 {
                c.connes(deg)
            } else {
                continue;
            };
            for r in 0..block.rows() {
                for col in 0..block.cols() {
                    out.set(ro + r, co + col, block.get(r, col).clone());
                }
            }
        }
    }
    out
}

fn negative_cyclic_dim<F: Field>(c: &MixedComplex<F>, n: usize, k: usize) -> usize {
    let m = n as isize;
    let dim: usize = total_blocks(m, k, c.bound())
        .iter()
        .map(|&(_, d)| c.dim(d))
        .sum();
    let out = total_differential(c, m, k);
    let into = total_differential(c, m + 1, k);
    let rank = |x: &Matrix<F>| {
        if x.rows() == 0 || x.cols() == 0 {
            0
        } else {
            x.rank()
        }
    };
    dim - rank(&out) - rank(&into)
}

/// `HC⁻ₙ(A)` modulo `u^{K+1}` on the normalized complex, with the values for
/// every smaller truncation.
pub fn negative_cyclic<F: Field>(
    a: &FDAlgebra<F>,
    n: usize,
    bound: usize,
    uorder: usize,
    cap: usize,
) -> Result<NegCyclicReport> {
    if n + 2 * uorder >= bound {
        return Err(Error::BoundTooSmall(format!(
            "HC⁻_{n} at u-order {uorder} needs degree bound above {}, got {bound}",
            n + 2 * uorder
        )));
    }
    let c = mixed_complex(a, n + 2 * uorder + 1, cap)?;
    let dims: Vec<usize> = (0..=uorder)
        .map(|k| negative_cyclic_dim(&c, n, k))
        .collect();
    let dimension = dims[uorder];
    let stabilized = uorder >= 1 && dims[uorder - 1] == dims[uorder];
    Ok(NegCyclicReport {
        degree: n,
        uorder,
        dims,
        dimension,
        stabilized,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    fn test_algebras_q() -> Vec<FDAlgebra<Rationals>> {
        vec![
            FDAlgebra::ground(Rationals),
            FDAlgebra::product(Rationals, 2),
            FDAlgebra::dual_numbers(Rationals),
        ]
    }

    #[test]
    fn operator_identities_hold() {
        for a in test_algebras_q() {
            for c in [
                mixed_complex(&a, 5, DEFAULT_COMPLEX_CAP).unwrap(),
                full_mixed_complex(&a, 5, DEFAULT_COMPLEX_CAP).unwrap(),
            ] {
                assert!(
                    c.identity_failures().is_empty(),
                    "{:?}: {:?}",
                    c.flavor(),
                    c.identity_failures()
                );
            }
        }
        let f3 = FDAlgebra::dual_numbers(PrimeField::new(3).unwrap());
        assert!(mixed_complex(&f3, 5, DEFAULT_COMPLEX_CAP)
            .unwrap()
            .identity_failures()
            .is_empty());
        assert!(full_mixed_complex(&f3, 5, DEFAULT_COMPLEX_CAP)
            .unwrap()
            .identity_failures()
            .is_empty());
    }

    #[test]
    fn ground_field_complex_vanishes() {
        let c = mixed_complex(&FDAlgebra::ground(Rationals), 4, DEFAULT_COMPLEX_CAP).unwrap();
        assert_eq!(c.dim(0), 1);
        assert!((1..=4).all(|n| c.dim(n) == 0));
    }

    #[test]
    fn dual_number_boundaries() {
        let c = full_mixed_complex(&FDAlgebra::dual_numbers(Rationals), 3, DEFAULT_COMPLEX_CAP)
            .unwrap();
        let b1 = c.b(1);
        for t in [vec![1, 1], vec![0, 1]] {
            let col = c.basis(1).iter().position(|s| *s == t).unwrap();
            assert!(b1.column(col).iter().all(|x| Rationals.is_zero(x)));
        }
    }

    #[test]
    fn hochschild_dimensions() {
        let q = Rationals;
        let dims = |a: &FDAlgebra<Rationals>| {
            (0..4)
                .map(|n| {
                    let r = hochschild_homology(a, n, 4, DEFAULT_COMPLEX_CAP).unwrap();
                    assert!(r.agree(), "{r:?}");
                    r.dim_normalized
                })
                .collect::<Vec<_>>()
        };
        assert_eq!(dims(&FDAlgebra::ground(q)), vec![1, 0, 0, 0]);
        assert_eq!(dims(&FDAlgebra::product(q, 2)), vec![2, 0, 0, 0]);
        assert_eq!(dims(&FDAlgebra::dual_numbers(q)), vec![2, 1, 1, 1]);
        assert!(hochschild_homology(&FDAlgebra::ground(q), 3, 3, DEFAULT_COMPLEX_CAP).is_err());
    }

    #[test]
    fn negative_cyclic_small_cases() {
        let q = Rationals;
        for k in 0..3 {
            assert_eq!(
                negative_cyclic(&FDAlgebra::ground(q), 0, 2 * k + 1, k, DEFAULT_COMPLEX_CAP)
                    .unwrap()
                    .dimension,
                1
            );
        }
        let r = negative_cyclic(&FDAlgebra::product(q, 2), 0, 5, 2, DEFAULT_COMPLEX_CAP).unwrap();
        assert_eq!(r.dimension, 2);
        assert!(r.stabilized);
        assert!(negative_cyclic(&FDAlgebra::ground(q), 0, 4, 2, DEFAULT_COMPLEX_CAP).is_err());
    }

    #[test]
    fn cap_is_enforced() {
        let a = FDAlgebra::product(Rationals, 3);
        assert!(matches!(
            full_mixed_complex(&a, 9, 1000),
            Err(Error::CapExceeded { .. })
        ));
    }
}
