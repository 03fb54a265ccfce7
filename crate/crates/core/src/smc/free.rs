//! The free strict symmetric monoidal category on one object `x` with one
//! idempotent endomorphism `e` (`e∘e = e`).
//!
//! Objects are the powers `xⁿ`; `Hom(xⁿ, xᵐ)` is empty unless `n = m`, and
//! `Hom(xⁿ, xⁿ)` consists of a permutation of the strands together with a
//! choice of `1` or `e` on each strand.

use itertools::Itertools;

use crate::error::{Error, Result};

use super::SymmetricMonoidal;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StrandMap {
    /// Strand `i` of the source ends at position `perm[i]` of the target.
    pub perm: Vec<usize>,
    /// Whether `e` is applied on source strand `i`.
    pub marked: Vec<bool>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FreeIdempotentSmc {
    max_power: usize,
}

impl FreeIdempotentSmc {
    pub fn new(max_power: usize) -> Self {
        Self { max_power }
    }

    /// The generating endomorphism `e` of `x`.
    pub fn e(&self) -> StrandMap {
        StrandMap {
            perm: vec![0],
            marked: vec![true],
        }
    }
}

impl SymmetricMonoidal for FreeIdempotentSmc {
    type Obj = usize;
    type Mor = StrandMap;

    fn source(&self, f: &StrandMap) -> usize {
        f.perm.len()
    }
    fn target(&self, f: &StrandMap) -> usize {
        f.perm.len()
    }
    fn identity(&self, x: &usize) -> StrandMap {
        StrandMap {
            perm: (0..*x).collect(),
            marked: vec![false; *x],
        }
    }
    fn compose(&self, g: &StrandMap, f: &StrandMap) -> Result<StrandMap> {
        if g.perm.len() != f.perm.len() {
            return Err(Error::NotComposable(format!(
                "x^{} after x^{}",
                g.perm.len(),
                f.perm.len()
            )));
        }
        Ok(StrandMap {
            perm: f.perm.iter().map(|&j| g.perm[j]).collect(),
            marked: f
                .perm
                .iter()
                .zip(&f.marked)
                .map(|(&j, &m)| m || g.marked[j])
                .collect(),
        })
    }
    fn unit(&self) -> usize {
        0
    }
    fn tensor(&self, x: &usize, y: &usize) -> usize {
        x + y
    }
    fn tensor_mor(&self, f: &StrandMap, g: &StrandMap) -> StrandMap {
        let n = f.perm.len();
        StrandMap {
            perm: f
                .perm
                .iter()
                .copied()
                .chain(g.perm.iter().map(|j| j + n))
                .collect(),
            marked: f.marked.iter().chain(&g.marked).copied().collect(),
        }
    }
    fn symmetry(&self, x: &usize, y: &usize) -> StrandMap {
        StrandMap {
            perm: (0..x + y)
                .map(|i| if i < *x { i + y } else { i - x })
                .collect(),
            marked: vec![false; x + y],
        }
    }
    fn objects(&self) -> Vec<usize> {
        (0..=self.max_power).collect()
    }
    fn hom_size(&self, x: &usize, y: &usize) -> Option<u128> {
        if x != y {
            return Some(0);
        }
        let fact: u128 = (1..=*x as u128).product();
        Some(fact << x)
    }
    fn hom(&self, x: &usize, y: &usize) -> Result<Vec<StrandMap>> {
        if x != y {
            return Ok(Vec::new());
        }
        let n = *x;
        let mut out = Vec::new();
        for perm in (0..n).permutations(n) {
            for mask in 0..1usize << n {
                let marked = (0..n).map(|i| mask >> i & 1 == 1).collect();
                out.push(StrandMap {
                    perm: perm.clone(),
                    marked,
                });
            }
        }
        Ok(out)
    }
    fn inverse(&self, f: &StrandMap) -> Option<StrandMap> {
        if f.marked.iter().any(|&m| m) {
            return None;
        }
        let mut inv = vec![0; f.perm.len()];
        for (i, &j) in f.perm.iter().enumerate() {
            inv[j] = i;
        }
        Some(StrandMap {
            perm: inv,
            marked: f.marked.clone(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::smc::check_smc;

    #[test]
    fn axioms() {
        let a = FreeIdempotentSmc::new(2);
        assert_eq!(check_smc(&a, 8), Vec::<String>::new());
    }

    #[test]
    fn e_is_idempotent_not_invertible() {
        let a = FreeIdempotentSmc::new(2);
        let e = a.e();
        assert_eq!(a.compose(&e, &e).unwrap(), e);
        assert_eq!(a.inverse(&e), None);
        assert_eq!(a.hom(&2, &2).unwrap().len(), 8);
    }
}
