//! Strict symmetric monoidal categories, rigid (dualizable) objects and
//! categorical traces.
//!
//! A category here is "lazily enumerable": it exposes a finite universe of
//! objects for verification, and hom-sets that can be enumerated when they
//! are finite and small enough. Tensor products may leave the universe.

pub mod free;
pub mod matrix;
pub mod nerve;
pub mod reconstruct;
pub mod table;

use std::collections::{BTreeSet, HashMap};
use std::fmt::Debug;
use std::hash::Hash;

use serde::Serialize;

use crate::error::{Error, Result};

pub use free::FreeIdempotentSmc;
pub use matrix::MatrixCategory;
pub use nerve::{nerve_smc, SmcNerve, TaggedWord};
pub use reconstruct::{monoidal_from_gamma, CoherenceReport, RecoveredSmc};
pub use table::TableSmc;

/// Default bound on `|Hom(x⊗y, 𝟙)| · |Hom(𝟙, y⊗x)|` per candidate dual.
pub const DEFAULT_DUAL_CAP: u128 = 1_000_000;

/// A strict symmetric monoidal category: `⊗` is strictly associative and
/// unital, the symmetry is an explicit family of isomorphisms.
pub trait SymmetricMonoidal {
    type Obj: Clone + Eq + Hash + Ord + Debug;
    type Mor: Clone + Eq + Hash + Debug;

    fn source(&self, f: &Self::Mor) -> Self::Obj;
    fn target(&self, f: &Self::Mor) -> Self::Obj;
    fn identity(&self, x: &Self::Obj) -> Self::Mor;
    /// `g ∘ f`.
    fn compose(&self, g: &Self::Mor, f: &Self::Mor) -> Result<Self::Mor>;
    fn unit(&self) -> Self::Obj;
    fn tensor(&self, x: &Self::Obj, y: &Self::Obj) -> Self::Obj;
    fn tensor_mor(&self, f: &Self::Mor, g: &Self::Mor) -> Self::Mor;
    /// `σ_{x,y} : x⊗y → y⊗x`.
    fn symmetry(&self, x: &Self::Obj, y: &Self::Obj) -> Self::Mor;

    /// The finite universe of objects used for searches and verification.
    fn objects(&self) -> Vec<Self::Obj>;
    /// `None` when `Hom(x, y)` is not finitely enumerable.
    fn hom_size(&self, x: &Self::Obj, y: &Self::Obj) -> Option<u128>;
    /// Every morphism `x → y`. Fails with [`Error::CapExceeded`] when the
    /// hom-set cannot be enumerated.
    fn hom(&self, x: &Self::Obj, y: &Self::Obj) -> Result<Vec<Self::Mor>>;

    fn inverse(&self, f: &Self::Mor) -> Option<Self::Mor> {
        let (x, y) = (self.source(f), self.target(f));
        let (idx, idy) = (self.identity(&x), self.identity(&y));
        self.hom(&y, &x).ok()?.into_iter().find(|g| {
            self.compose(g, f).ok().as_ref() == Some(&idx)
                && self.compose(f, g).ok().as_ref() == Some(&idy)
        })
    }

    /// Composite of a chain given in application order (`fs[0]` first).
    fn compose_chain(&self, fs: &[Self::Mor]) -> Result<Self::Mor> {
        let (first, rest) = fs
            .split_first()
            .ok_or_else(|| Error::Invalid("empty composite".into()))?;
        rest.iter()
            .try_fold(first.clone(), |acc, g| self.compose(g, &acc))
    }

    fn tensor_all(&self, xs: &[Self::Obj]) -> Self::Obj {
        xs.iter().fold(self.unit(), |acc, x| self.tensor(&acc, x))
    }
}

/// Dual object with evaluation `t : x⊗x∨ → 𝟙` and coevaluation
/// `u : 𝟙 → x∨⊗x`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DualityDatum<O, M> {
    pub x: O,
    pub dual: O,
    pub t: M,
    pub u: M,
}

impl<O: Clone, M> DualityDatum<O, M> {
    /// Checks both triangle identities:
    /// `(t⊗x)∘(x⊗u) = id_x` and `(x∨⊗t)∘(u⊗x∨) = id_{x∨}`.
    pub fn verify<A>(&self, a: &A) -> bool
    where
        A: SymmetricMonoidal<Obj = O, Mor = M>,
    {
        triangles(a, &self.x, &self.dual, &self.t, &self.u)
    }
}

fn triangles<A: SymmetricMonoidal>(a: &A, x: &A::Obj, y: &A::Obj, t: &A::Mor, u: &A::Mor) -> bool {
    let (idx, idy) = (a.identity(x), a.identity(y));
    let first = a.compose(&a.tensor_mor(t, &idx), &a.tensor_mor(&idx, u));
    if first.ok().as_ref() != Some(&idx) {
        return false;
    }
    let second = a.compose(&a.tensor_mor(&idy, t), &a.tensor_mor(u, &idy));
    second.ok().as_ref() == Some(&idy)
}

/// What an exhaustive dual search looked at.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchCertificate {
    /// `(candidate dual, |Hom(x⊗y,𝟙)|, |Hom(𝟙,y⊗x)|)` for every candidate searched.
    pub searched: Vec<(String, u128, u128)>,
    /// Candidates skipped because their search space exceeds the cap.
    pub skipped: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DualSearch<O, M> {
    Found(DualityDatum<O, M>),
    /// Every candidate in the object universe was searched exhaustively.
    NotRigid(SearchCertificate),
    /// Nothing found, but some candidates were too large to search.
    CapExceeded(SearchCertificate),
}

impl<O, M> DualSearch<O, M> {
    pub fn datum(&self) -> Option<&DualityDatum<O, M>> {
        match self {
            DualSearch::Found(d) => Some(d),
            _ => None,
        }
    }
}

type Datum<A> = DualityDatum<<A as SymmetricMonoidal>::Obj, <A as SymmetricMonoidal>::Mor>;

/// Candidate evaluations and coevaluations for the pair `(x, y)`, or the
/// reason they cannot be listed.
fn candidate_pairs<A: SymmetricMonoidal>(
    a: &A,
    x: &A::Obj,
    y: &A::Obj,
    cap: u128,
) -> Option<(Vec<A::Mor>, Vec<A::Mor>)> {
    let one = a.unit();
    let (xy, yx) = (a.tensor(x, y), a.tensor(y, x));
    let nt = a.hom_size(&xy, &one)?;
    let nu = a.hom_size(&one, &yx)?;
    if nt.saturating_mul(nu) > cap {
        return None;
    }
    Some((a.hom(&xy, &one).ok()?, a.hom(&one, &yx).ok()?))
}

/// Exhaustive search for a dual of `x`, candidates in universe order. The
/// first datum found (lowest candidate, then enumeration order) is returned.
pub fn find_dual<A: SymmetricMonoidal>(a: &A, x: &A::Obj, cap: u128) -> DualSearch<A::Obj, A::Mor> {
    let mut cert = SearchCertificate {
        searched: Vec::new(),
        skipped: Vec::new(),
    };
    for y in a.objects() {
        match candidate_pairs(a, x, &y, cap) {
            None => cert.skipped.push(format!("{y:?}")),
            Some((ts, us)) => {
                cert.searched
                    .push((format!("{y:?}"), ts.len() as u128, us.len() as u128));
                if let Some(d) = DualPairs::new(a, x, &y, &ts, &us).next() {
                    return DualSearch::Found(d);
                }
            }
        }
    }
    if cert.skipped.is_empty() {
        DualSearch::NotRigid(cert)
    } else {
        DualSearch::CapExceeded(cert)
    }
}

/// Every duality datum for `x` with dual in the object universe.
pub fn all_duality_data<A: SymmetricMonoidal>(
    a: &A,
    x: &A::Obj,
    cap: u128,
) -> Result<Vec<Datum<A>>> {
    let mut out = Vec::new();
    for y in a.objects() {
        let Some((ts, us)) = candidate_pairs(a, x, &y, cap) else {
            return Err(Error::CapExceeded {
                what: format!("dual candidates {y:?} for {x:?}"),
                needed: a
                    .hom_size(&a.tensor(x, &y), &a.unit())
                    .zip(a.hom_size(&a.unit(), &a.tensor(&y, x)))
                    .map_or(u128::MAX, |(p, q)| p.saturating_mul(q)),
                cap,
            });
        };
        out.extend(DualPairs::new(a, x, &y, &ts, &us));
    }
    Ok(out)
}

/// Iterator over `(t, u)` pairs passing both triangle identities. The
/// tensored forms are precomputed once per candidate.
struct DualPairs<'a, A: SymmetricMonoidal> {
    a: &'a A,
    x: A::Obj,
    y: A::Obj,
    ts: &'a [A::Mor],
    us: &'a [A::Mor],
    t_x: Vec<A::Mor>,
    x_u: Vec<A::Mor>,
    y_t: Vec<A::Mor>,
    u_y: Vec<A::Mor>,
    idx: A::Mor,
    idy: A::Mor,
    i: usize,
    j: usize,
}

impl<'a, A: SymmetricMonoidal> DualPairs<'a, A> {
    fn new(a: &'a A, x: &A::Obj, y: &A::Obj, ts: &'a [A::Mor], us: &'a [A::Mor]) -> Self {
        let (idx, idy) = (a.identity(x), a.identity(y));
        Self {
            a,
            x: x.clone(),
            y: y.clone(),
            ts,
            us,
            t_x: ts.iter().map(|t| a.tensor_mor(t, &idx)).collect(),
            x_u: us.iter().map(|u| a.tensor_mor(&idx, u)).collect(),
            y_t: ts.iter().map(|t| a.tensor_mor(&idy, t)).collect(),
            u_y: us.iter().map(|u| a.tensor_mor(u, &idy)).collect(),
            idx,
            idy,
            i: 0,
            j: 0,
        }
    }
}

impl<A: SymmetricMonoidal> Iterator for DualPairs<'_, A> {
    type Item = Datum<A>;

    fn next(&mut self) -> Option<Self::Item> {
        while self.i < self.ts.len() {
            while self.j < self.us.len() {
                let (i, j) = (self.i, self.j);
                self.j += 1;
                if self.a.compose(&self.t_x[i], &self.x_u[j]).ok().as_ref() == Some(&self.idx)
                    && self.a.compose(&self.y_t[i], &self.u_y[j]).ok().as_ref() == Some(&self.idy)
                {
                    return Some(DualityDatum {
                        x: self.x.clone(),
                        dual: self.y.clone(),
                        t: self.ts[i].clone(),
                        u: self.us[j].clone(),
                    });
                }
            }
            self.i += 1;
            self.j = 0;
        }
        None
    }
}

/// The categorical trace of `f : x → x`: the composite
/// `𝟙 → x∨⊗x → x∨⊗x → x⊗x∨ → 𝟙` of `u`, `id⊗f`, `σ_{x∨,x}` and `t`.
pub fn trace<A: SymmetricMonoidal>(a: &A, d: &Datum<A>, f: &A::Mor) -> Result<A::Mor> {
    let (s, t) = (a.source(f), a.target(f));
    if s != t {
        return Err(Error::Invalid(format!(
            "trace of a non-endomorphism {s:?} → {t:?}"
        )));
    }
    if s != d.x {
        return Err(Error::Invalid(format!(
            "duality datum is for {:?}, morphism is on {s:?}",
            d.x
        )));
    }
    let named = a.compose(&a.tensor_mor(&a.identity(&d.dual), f), &d.u)?;
    a.compose_chain(&[named, a.symmetry(&d.dual, &d.x), d.t.clone()])
}

/// Duality datum for `x⊗y` built from data for `x` and `y`: dual
/// `y∨⊗x∨`, evaluation `t_x∘(x⊗t_y⊗x∨)`, coevaluation `(y∨⊗u_x⊗y)∘u_y`.
pub fn tensor_datum<A: SymmetricMonoidal>(a: &A, dx: &Datum<A>, dy: &Datum<A>) -> Result<Datum<A>> {
    let idx = a.identity(&dx.x);
    let idxd = a.identity(&dx.dual);
    let idy = a.identity(&dy.x);
    let idyd = a.identity(&dy.dual);
    let t = a.compose(&dx.t, &a.tensor_mor(&a.tensor_mor(&idx, &dy.t), &idxd))?;
    let u = a.compose(&a.tensor_mor(&a.tensor_mor(&idyd, &dx.u), &idy), &dy.u)?;
    Ok(DualityDatum {
        x: a.tensor(&dx.x, &dy.x),
        dual: a.tensor(&dy.dual, &dx.dual),
        t,
        u,
    })
}

/// Compatible isomorphisms between two duality data: the isos
/// `φ : x∨ → x∨'` with `t'∘(x⊗φ) = t` and `(φ⊗x)∘u = u'`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UniquenessReport {
    pub data: usize,
    pub pairs: usize,
    /// `(i, j, number of compatible isomorphisms)` for pairs with a count other than one.
    pub failures: Vec<(usize, usize, usize)>,
}

impl UniquenessReport {
    pub fn holds(&self) -> bool {
        self.data > 0 && self.failures.is_empty()
    }
}

/// Counts compatible isomorphisms between every ordered pair of duality
/// data for `x` (the data themselves found by exhaustive search).
pub fn dual_uniqueness<A: SymmetricMonoidal>(
    a: &A,
    x: &A::Obj,
    cap: u128,
) -> Result<UniquenessReport> {
    let data = all_duality_data(a, x, cap)?;
    let index: HashMap<&Datum<A>, usize> = data.iter().enumerate().map(|(i, d)| (d, i)).collect();
    let duals: BTreeSet<A::Obj> = data.iter().map(|d| d.dual.clone()).collect();
    let idx = a.identity(x);
    let mut counts: HashMap<(usize, usize), usize> = HashMap::new();
    for (i, d) in data.iter().enumerate() {
        for y2 in &duals {
            for phi in a.hom(&d.dual, y2)? {
                let Some(phi_inv) = a.inverse(&phi) else {
                    continue;
                };
                let t2 = a.compose(&d.t, &a.tensor_mor(&idx, &phi_inv))?;
                let u2 = a.compose(&a.tensor_mor(&phi, &idx), &d.u)?;
                let moved = DualityDatum {
                    x: x.clone(),
                    dual: y2.clone(),
                    t: t2,
                    u: u2,
                };
                match index.get(&moved) {
                    Some(&j) => *counts.entry((i, j)).or_default() += 1,
                    None => {
                        return Err(Error::TheoryViolation(format!(
                            "transported duality datum for {x:?} was not found by the exhaustive search"
                        )))
                    }
                }
            }
        }
    }
    let n = data.len();
    let mut failures = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let c = counts.get(&(i, j)).copied().unwrap_or(0);
            if c != 1 {
                failures.push((i, j, c));
            }
        }
    }
    Ok(UniquenessReport {
        data: n,
        pairs: n * n,
        failures,
    })
}

/// A full subcategory on a chosen set of objects; everything else is
/// inherited.
pub struct FullSubcategory<'a, A: SymmetricMonoidal> {
    base: &'a A,
    objects: Vec<A::Obj>,
}

impl<'a, A: SymmetricMonoidal> FullSubcategory<'a, A> {
    pub fn base(&self) -> &'a A {
        self.base
    }
}

impl<A: SymmetricMonoidal> SymmetricMonoidal for FullSubcategory<'_, A> {
    type Obj = A::Obj;
    type Mor = A::Mor;

    fn source(&self, f: &A::Mor) -> A::Obj {
        self.base.source(f)
    }
    fn target(&self, f: &A::Mor) -> A::Obj {
        self.base.target(f)
    }
    fn identity(&self, x: &A::Obj) -> A::Mor {
        self.base.identity(x)
    }
    fn compose(&self, g: &A::Mor, f: &A::Mor) -> Result<A::Mor> {
        self.base.compose(g, f)
    }
    fn unit(&self) -> A::Obj {
        self.base.unit()
    }
    fn tensor(&self, x: &A::Obj, y: &A::Obj) -> A::Obj {
        self.base.tensor(x, y)
    }
    fn tensor_mor(&self, f: &A::Mor, g: &A::Mor) -> A::Mor {
        self.base.tensor_mor(f, g)
    }
    fn symmetry(&self, x: &A::Obj, y: &A::Obj) -> A::Mor {
        self.base.symmetry(x, y)
    }
    fn objects(&self) -> Vec<A::Obj> {
        self.objects.clone()
    }
    fn hom_size(&self, x: &A::Obj, y: &A::Obj) -> Option<u128> {
        self.base.hom_size(x, y)
    }
    fn hom(&self, x: &A::Obj, y: &A::Obj) -> Result<Vec<A::Mor>> {
        self.base.hom(x, y)
    }
    fn inverse(&self, f: &A::Mor) -> Option<A::Mor> {
        self.base.inverse(f)
    }
}

/// The rigid objects of a category together with the checks that they form
/// a symmetric monoidal subcategory.
pub struct RigidSubcategory<'a, A: SymmetricMonoidal> {
    pub category: FullSubcategory<'a, A>,
    pub data: Vec<Datum<A>>,
    /// Objects proven not rigid by exhaustive search.
    pub non_rigid: Vec<A::Obj>,
    pub unit_rigid: bool,
    /// `(x, y, x⊗y)` for which the tensor datum failed its triangle
    /// identities or `x⊗y` is in the universe but was not found rigid.
    pub closure_failures: Vec<(A::Obj, A::Obj)>,
}

impl<A: SymmetricMonoidal> RigidSubcategory<'_, A> {
    pub fn is_valid(&self) -> bool {
        self.unit_rigid && self.closure_failures.is_empty()
    }
}

/// The full subcategory on objects for which [`find_dual`] succeeds. Any
/// cap-exceeded search is an error: rigidity of that object is unknown.
pub fn rigid_subcategory<A: SymmetricMonoidal>(
    a: &A,
    cap: u128,
) -> Result<RigidSubcategory<'_, A>> {
    let mut objects = Vec::new();
    let mut data = Vec::new();
    let mut non_rigid = Vec::new();
    for x in a.objects() {
        match find_dual(a, &x, cap) {
            DualSearch::Found(d) => {
                objects.push(x);
                data.push(d);
            }
            DualSearch::NotRigid(_) => non_rigid.push(x),
            DualSearch::CapExceeded(cert) => {
                return Err(Error::CapExceeded {
                    what: format!("dual search for {x:?} (skipped {:?})", cert.skipped),
                    needed: u128::MAX,
                    cap,
                })
            }
        }
    }
    let unit = a.unit();
    let unit_rigid = objects.contains(&unit);
    let mut closure_failures = Vec::new();
    for dx in &data {
        for dy in &data {
            let ok = match tensor_datum(a, dx, dy) {
                Ok(d) => d.verify(a) && (!a.objects().contains(&d.x) || objects.contains(&d.x)),
                Err(_) => false,
            };
            if !ok {
                closure_failures.push((dx.x.clone(), dy.x.clone()));
            }
        }
    }
    Ok(RigidSubcategory {
        category: FullSubcategory { base: a, objects },
        data,
        non_rigid,
        unit_rigid,
        closure_failures,
    })
}

/// Verifies the strict symmetric monoidal axioms on the object universe,
/// using only hom-sets with at most `hom_cap` elements. Returns a
/// description of each failure.
pub fn check_smc<A: SymmetricMonoidal>(a: &A, hom_cap: u128) -> Vec<String> {
    let objs = a.objects();
    let one = a.unit();
    let mut out = Vec::new();
    let small_hom = |x: &A::Obj, y: &A::Obj| -> Vec<A::Mor> {
        match a.hom_size(x, y) {
            Some(n) if n <= hom_cap => a.hom(x, y).unwrap_or_default(),
            _ => Vec::new(),
        }
    };
    let mut morphisms = Vec::new();
    for x in &objs {
        for y in &objs {
            morphisms.extend(small_hom(x, y));
        }
    }
    for x in &objs {
        if a.tensor(&one, x) != *x || a.tensor(x, &one) != *x {
            out.push(format!("unit is not strict on {x:?}"));
        }
        let idx = a.identity(x);
        if a.tensor_mor(&a.identity(&one), &idx) != idx
            || a.tensor_mor(&idx, &a.identity(&one)) != idx
        {
            out.push(format!("unit is not strict on id_{x:?}"));
        }
        for y in &objs {
            let s = a.symmetry(x, y);
            let back = a.compose(&a.symmetry(y, x), &s);
            if back.ok() != Some(a.identity(&a.tensor(x, y))) {
                out.push(format!("σ_{{{y:?},{x:?}}}∘σ_{{{x:?},{y:?}}} ≠ id"));
            }
            for z in &objs {
                if a.tensor(&a.tensor(x, y), z) != a.tensor(x, &a.tensor(y, z)) {
                    out.push(format!(
                        "⊗ not strictly associative on ({x:?}, {y:?}, {z:?})"
                    ));
                }
                let lhs = a.symmetry(x, &a.tensor(y, z));
                let rhs = a.compose(
                    &a.tensor_mor(&a.identity(y), &a.symmetry(x, z)),
                    &a.tensor_mor(&a.symmetry(x, y), &a.identity(z)),
                );
                if rhs.ok() != Some(lhs) {
                    out.push(format!("hexagon fails at ({x:?}, {y:?}, {z:?})"));
                }
            }
        }
    }
    for f in &morphisms {
        let (fs, ft) = (a.source(f), a.target(f));
        if a.compose(f, &a.identity(&fs)).ok().as_ref() != Some(f)
            || a.compose(&a.identity(&ft), f).ok().as_ref() != Some(f)
        {
            out.push(format!("unit law fails for {f:?}"));
        }
        for g in &morphisms {
            let (gs, gt) = (a.source(g), a.target(g));
            let natural = a
                .compose(&a.symmetry(&ft, &gt), &a.tensor_mor(f, g))
                .and_then(|l| {
                    a.compose(&a.tensor_mor(g, f), &a.symmetry(&fs, &gs))
                        .map(|r| l == r)
                });
            if natural.ok() != Some(true) {
                out.push(format!("σ not natural at ({f:?}, {g:?})"));
            }
        }
    }
    // Bifunctoriality and associativity of ⊗ on composable pairs.
    let composable: Vec<(A::Mor, A::Mor)> = morphisms
        .iter()
        .flat_map(|f| {
            morphisms
                .iter()
                .filter(|g| a.source(g) == a.target(f))
                .map(move |g| (f.clone(), g.clone()))
        })
        .collect();
    for (f, g) in &composable {
        let gf = a.compose(g, f).expect("composable");
        for (f2, g2) in &composable {
            let gf2 = a.compose(g2, f2).expect("composable");
            let lhs = a.compose(&a.tensor_mor(g, g2), &a.tensor_mor(f, f2));
            if lhs.ok() != Some(a.tensor_mor(&gf, &gf2)) {
                out.push(format!(
                    "bifunctoriality fails at ({f:?}, {g:?}) ⊗ ({f2:?}, {g2:?})"
                ));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::matrix::Matrix;

    #[test]
    fn unit_is_self_dual() {
        let f2 = PrimeField::new(2).unwrap();
        let a = MatrixCategory::new(f2, 2);
        let d = find_dual(&a, &1, DEFAULT_DUAL_CAP);
        let d = d.datum().unwrap();
        assert_eq!(d.dual, 1);
        assert!(d.t.is_identity() && d.u.is_identity());
    }

    #[test]
    fn f2_dimension_two_dual() {
        let f2 = PrimeField::new(2).unwrap();
        let a = MatrixCategory::new(f2, 2);
        let found = find_dual(&a, &2, DEFAULT_DUAL_CAP);
        let d = found.datum().expect("2 is rigid");
        assert_eq!(d.dual, 2);
        assert!(d.verify(&a));
        // Brute force: the evaluations that admit a coevaluation are exactly
        // the nondegenerate pairings; the search returns the first in order.
        let pairings: Vec<_> = Matrix::enumerate_all(f2, 1, 4)
            .unwrap()
            .into_iter()
            .filter(|t| {
                let gram = Matrix::from_fn(f2, 2, 2, |i, j| *t.get(0, 2 * i + j));
                gram.inverse().is_some()
            })
            .collect();
        assert_eq!(pairings.len(), 6);
        assert_eq!(d.t, pairings[0]);
    }

    #[test]
    fn matrix_trace_examples() {
        let q = Rationals;
        let a = MatrixCategory::new(q, 3);
        let d = a.standard_duality(2);
        assert!(d.verify(&a));
        let f = Matrix::from_i64_rows(q, &[&[2, 1], &[0, 3]]);
        assert_eq!(
            trace(&a, &d, &f).unwrap(),
            Matrix::from_i64_rows(q, &[&[5]])
        );
        for n in 0..=3 {
            let d = a.standard_duality(n);
            let tr = trace(&a, &d, &Matrix::identity(q, n)).unwrap();
            assert_eq!(tr, Matrix::from_i64_rows(q, &[&[n as i64]]));
        }
        let one = a.standard_duality(1);
        assert_eq!(
            trace(&a, &one, &Matrix::identity(q, 1)).unwrap(),
            Matrix::identity(q, 1)
        );
        assert!(trace(&a, &a.standard_duality(3), &Matrix::identity(q, 2)).is_err());
        assert!(trace(&a, &one, &Matrix::from_i64_rows(q, &[&[1, 2]])).is_err());
    }

    #[test]
    fn free_generator_is_not_rigid() {
        let a = FreeIdempotentSmc::new(3);
        match find_dual(&a, &1, DEFAULT_DUAL_CAP) {
            DualSearch::NotRigid(cert) => {
                assert_eq!(cert.searched.len(), 4);
                assert!(cert.skipped.is_empty());
            }
            other => panic!("expected NotRigid, got {other:?}"),
        }
        let r = rigid_subcategory(&a, DEFAULT_DUAL_CAP).unwrap();
        assert_eq!(r.category.objects(), vec![0]);
        assert!(r.is_valid());
    }

    #[test]
    fn rationals_cap_is_distinct_from_refutation() {
        let a = MatrixCategory::new(Rationals, 2);
        assert!(matches!(
            find_dual(&a, &2, DEFAULT_DUAL_CAP),
            DualSearch::CapExceeded(_)
        ));
        assert!(rigid_subcategory(&a, DEFAULT_DUAL_CAP).is_err());
    }
}
