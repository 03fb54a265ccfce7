//! Recovering a symmetric monoidal structure on level `[1]` of a special
//! Γ-category.
//!
//! A quasi-inverse of the Segal functor at level `[2]` picks, for each pair
//! `(x, y)`, an object `d(x, y)` with isomorphisms `k : (s_1, s_2)(d) ≅ (x, y)`.
//! Then `x ⊗ y = p_!(d(x, y))` for the fold `p : [2] → [1]`. The swap of
//! `[2]` gives the symmetry, and level `[3]` gives the associator by
//! comparing both bracketings with `fold_!(b(x, y, z))`.

use std::cell::RefCell;
use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gamma::{fold_map, is_special, GammaCategory, GammaMap};

/// A chosen object over an `n`-tuple together with the comparison
/// isomorphisms of its Segal images with the tuple.
#[derive(Clone, Debug)]
struct Section<O, M> {
    obj: O,
    k: Vec<M>,
    k_inv: Vec<M>,
}

pub struct RecoveredSmc<'a, G: GammaCategory> {
    g: &'a G,
    unit: G::Obj,
    sections: RefCell<HashMap<Vec<G::Obj>, Section<G::Obj, G::Mor>>>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CoherenceReport {
    pub objects: usize,
    pub morphisms: usize,
    pub pentagons: usize,
    pub hexagons: usize,
    pub symmetries: usize,
    pub naturality: usize,
    pub functoriality: usize,
    pub failures: Vec<String>,
}

impl CoherenceReport {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

/// The symmetric monoidal structure on level `[1]` of `g`. Requires the
/// special condition up to level 4 (or the bound of `g`, if smaller but at
/// least 3).
pub fn monoidal_from_gamma<G: GammaCategory>(g: &G) -> Result<RecoveredSmc<'_, G>> {
    if g.bound() < 3 {
        return Err(Error::BoundTooSmall(format!(
            "need level [3], Γ-category is known up to [{}]",
            g.bound()
        )));
    }
    let report = is_special(g, g.bound().min(4));
    if let Some(level) = report.first_failure() {
        return Err(Error::Invalid(format!(
            "not special at level {level}: {}",
            report.levels[level].detail
        )));
    }
    let zero = g.objects(0);
    let to_one = GammaMap::new(0, 1, vec![0]).expect("the map [0] → [1]");
    let unit = g.push_obj(&to_one, &zero[0]);
    Ok(RecoveredSmc {
        g,
        unit,
        sections: RefCell::new(HashMap::new()),
    })
}

fn map(source: usize, target: usize, values: &[usize]) -> GammaMap {
    GammaMap::new(source, target, values.to_vec()).expect("well-formed structure map")
}

impl<'a, G: GammaCategory> RecoveredSmc<'a, G> {
    pub fn unit(&self) -> G::Obj {
        self.unit.clone()
    }

    fn c1(&self, g: &G::Mor, f: &G::Mor) -> G::Mor {
        self.g.compose(1, g, f)
    }

    fn inv1(&self, f: &G::Mor) -> Result<G::Mor> {
        let (a, b) = self.g.ends(1, f);
        self.g
            .inverse(1, &a, &b, f)
            .ok_or_else(|| Error::TheoryViolation(format!("{f:?} is not invertible")))
    }

    fn lift(&self, n: usize, a: &G::Obj, b: &G::Obj, images: &[G::Mor]) -> Result<G::Mor> {
        self.g.lift(n, a, b, images).ok_or_else(|| {
            Error::TheoryViolation(format!(
                "no level-{n} morphism {a:?} → {b:?} over {images:?}"
            ))
        })
    }

    fn section(&self, tuple: &[G::Obj]) -> Result<Section<G::Obj, G::Mor>> {
        if let Some(s) = self.sections.borrow().get(tuple) {
            return Ok(s.clone());
        }
        let n = tuple.len();
        let segal: Vec<GammaMap> = (1..=n)
            .map(|i| crate::gamma::segal_map(n, i).expect("in range"))
            .collect();
        let s = if let Some(obj) = self.g.segal_section(n, tuple) {
            let k: Vec<G::Mor> = tuple.iter().map(|x| self.g.identity(1, x)).collect();
            Section {
                obj,
                k: k.clone(),
                k_inv: k,
            }
        } else {
            let mut found = None;
            'search: for obj in self.g.objects(n) {
                let mut k = Vec::new();
                let mut k_inv = Vec::new();
                for (s, x) in segal.iter().zip(tuple) {
                    let img = self.g.push_obj(s, &obj);
                    let iso = self
                        .g
                        .hom(1, &img, x)
                        .into_iter()
                        .find_map(|f| self.g.inverse(1, &img, x, &f).map(|fi| (f, fi)));
                    match iso {
                        Some((f, fi)) => {
                            k.push(f);
                            k_inv.push(fi);
                        }
                        None => continue 'search,
                    }
                }
                found = Some(Section { obj, k, k_inv });
                break;
            }
            found.ok_or_else(|| {
                Error::TheoryViolation(format!("no level-{n} object over {tuple:?}"))
            })?
        };
        self.sections.borrow_mut().insert(tuple.to_vec(), s.clone());
        Ok(s)
    }

    pub fn tensor(&self, x: &G::Obj, y: &G::Obj) -> Result<G::Obj> {
        let d = self.section(&[x.clone(), y.clone()])?;
        Ok(self.g.push_obj(&fold_map(2), &d.obj))
    }

    pub fn tensor_mor(&self, f: &G::Mor, h: &G::Mor) -> Result<G::Mor> {
        let ((x, x2), (y, y2)) = (self.g.ends(1, f), self.g.ends(1, h));
        let d = self.section(&[x, y])?;
        let d2 = self.section(&[x2, y2])?;
        let images = [
            self.c1(&d2.k_inv[0], &self.c1(f, &d.k[0])),
            self.c1(&d2.k_inv[1], &self.c1(h, &d.k[1])),
        ];
        let m = self.lift(2, &d.obj, &d2.obj, &images)?;
        Ok(self.g.push_mor(&fold_map(2), &m))
    }

    /// `β_{x,y} : x⊗y → y⊗x`, induced by the swap of `[2]`.
    pub fn braiding(&self, x: &G::Obj, y: &G::Obj) -> Result<G::Mor> {
        let dxy = self.section(&[x.clone(), y.clone()])?;
        let dyx = self.section(&[y.clone(), x.clone()])?;
        let tau = map(2, 2, &[0, 2, 1]);
        let swapped = self.g.push_obj(&tau, &dyx.obj);
        let images = [
            self.c1(&dyx.k_inv[1], &dxy.k[0]),
            self.c1(&dyx.k_inv[0], &dxy.k[1]),
        ];
        let theta = self.lift(2, &dxy.obj, &swapped, &images)?;
        Ok(self.g.push_mor(&fold_map(2), &theta))
    }

    /// `α_{x,y,z} : (x⊗y)⊗z → x⊗(y⊗z)`.
    pub fn associator(&self, x: &G::Obj, y: &G::Obj, z: &G::Obj) -> Result<G::Mor> {
        let g = self.g;
        let p = fold_map(2);
        let b = self.section(&[x.clone(), y.clone(), z.clone()])?;
        let right = {
            let dyz = self.section(&[y.clone(), z.clone()])?;
            let yz = self.tensor(y, z)?;
            let outer = self.section(&[x.clone(), yz])?;
            let r = map(3, 2, &[0, 0, 1, 2]);
            let rb = g.push_obj(&r, &b.obj);
            let rho_inv = self.lift(
                2,
                &dyz.obj,
                &rb,
                &[
                    self.c1(&b.k_inv[1], &dyz.k[0]),
                    self.c1(&b.k_inv[2], &dyz.k[1]),
                ],
            )?;
            let q = map(3, 2, &[0, 1, 2, 2]);
            let qb = g.push_obj(&q, &b.obj);
            let images = [
                self.c1(&b.k_inv[0], &outer.k[0]),
                self.c1(&g.push_mor(&p, &rho_inv), &outer.k[1]),
            ];
            g.push_mor(&p, &self.lift(2, &outer.obj, &qb, &images)?)
        };
        let left = {
            let dxy = self.section(&[x.clone(), y.clone()])?;
            let xy = self.tensor(x, y)?;
            let outer = self.section(&[xy, z.clone()])?;
            let r = map(3, 2, &[0, 1, 2, 0]);
            let rb = g.push_obj(&r, &b.obj);
            let rho_inv = self.lift(
                2,
                &dxy.obj,
                &rb,
                &[
                    self.c1(&b.k_inv[0], &dxy.k[0]),
                    self.c1(&b.k_inv[1], &dxy.k[1]),
                ],
            )?;
            let q = map(3, 2, &[0, 1, 1, 2]);
            let qb = g.push_obj(&q, &b.obj);
            let images = [
                self.c1(&g.push_mor(&p, &rho_inv), &outer.k[0]),
                self.c1(&b.k_inv[2], &outer.k[1]),
            ];
            g.push_mor(&p, &self.lift(2, &outer.obj, &qb, &images)?)
        };
        Ok(self.c1(&self.inv1(&right)?, &left))
    }

    fn id(&self, x: &G::Obj) -> G::Mor {
        self.g.identity(1, x)
    }

    /// Checks pentagon, hexagon, symmetry, functoriality of `⊗` and
    /// naturality of `β` on the level-`[1]` universe, using at most
    /// `max_morphisms` morphisms for the morphism-level checks.
    pub fn coherence(&self, max_morphisms: usize) -> Result<CoherenceReport> {
        let objs = self.g.objects(1);
        let mut rep = CoherenceReport {
            objects: objs.len(),
            ..Default::default()
        };
        for x in &objs {
            for y in &objs {
                let round = self.c1(&self.braiding(y, x)?, &self.braiding(x, y)?);
                rep.symmetries += 1;
                if round != self.id(&self.tensor(x, y)?) {
                    rep.failures.push(format!("β∘β ≠ id at ({x:?}, {y:?})"));
                }
                for z in &objs {
                    let yz = self.tensor(y, z)?;
                    let lhs = [
                        self.associator(x, y, z)?,
                        self.braiding(x, &yz)?,
                        self.associator(y, z, x)?,
                    ];
                    let rhs = [
                        self.tensor_mor(&self.braiding(x, y)?, &self.id(z))?,
                        self.associator(y, x, z)?,
                        self.tensor_mor(&self.id(y), &self.braiding(x, z)?)?,
                    ];
                    rep.hexagons += 1;
                    if self.chain(&lhs) != self.chain(&rhs) {
                        rep.failures
                            .push(format!("hexagon fails at ({x:?}, {y:?}, {z:?})"));
                    }
                    for w in &objs {
                        rep.pentagons += 1;
                        if !self.pentagon(x, y, z, w)? {
                            rep.failures
                                .push(format!("pentagon fails at ({x:?}, {y:?}, {z:?}, {w:?})"));
                        }
                    }
                }
            }
        }
        let mut morphisms = Vec::new();
        'collect: for a in &objs {
            for b in &objs {
                for f in self.g.hom(1, a, b) {
                    if morphisms.len() >= max_morphisms {
                        break 'collect;
                    }
                    morphisms.push(f);
                }
            }
        }
        rep.morphisms = morphisms.len();
        for f in &morphisms {
            let (fs, ft) = self.g.ends(1, f);
            for h in &morphisms {
                let (hs, ht) = self.g.ends(1, h);
                let lhs = self.c1(&self.braiding(&ft, &ht)?, &self.tensor_mor(f, h)?);
                let rhs = self.c1(&self.tensor_mor(h, f)?, &self.braiding(&fs, &hs)?);
                rep.naturality += 1;
                if lhs != rhs {
                    rep.failures
                        .push(format!("β not natural at ({f:?}, {h:?})"));
                }
                for f2 in morphisms.iter().filter(|f2| self.g.ends(1, f2).0 == ft) {
                    for h2 in morphisms.iter().filter(|h2| self.g.ends(1, h2).0 == ht) {
                        rep.functoriality += 1;
                        let lhs = self.c1(&self.tensor_mor(f2, h2)?, &self.tensor_mor(f, h)?);
                        let rhs = self.tensor_mor(&self.c1(f2, f), &self.c1(h2, h))?;
                        if lhs != rhs {
                            rep.failures.push(format!(
                                "⊗ not functorial at ({f:?}, {h:?}), ({f2:?}, {h2:?})"
                            ));
                        }
                    }
                }
            }
        }
        Ok(rep)
    }

    fn chain(&self, fs: &[G::Mor]) -> G::Mor {
        fs[1..]
            .iter()
            .fold(fs[0].clone(), |acc, g| self.c1(g, &acc))
    }

    fn pentagon(&self, x: &G::Obj, y: &G::Obj, z: &G::Obj, w: &G::Obj) -> Result<bool> {
        let xy = self.tensor(x, y)?;
        let yz = self.tensor(y, z)?;
        let zw = self.tensor(z, w)?;
        let lhs = self.chain(&[self.associator(&xy, z, w)?, self.associator(x, y, &zw)?]);
        let rhs = self.chain(&[
            self.tensor_mor(&self.associator(x, y, z)?, &self.id(w))?,
            self.associator(x, &yz, w)?,
            self.tensor_mor(&self.id(x), &self.associator(y, z, w)?)?,
        ]);
        Ok(lhs == rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::gamma::{decode_tuple, encode_tuple, nerve_monoid, Discrete, FinCMonoid};
    use crate::smc::{nerve_smc, FreeIdempotentSmc, MatrixCategory, SymmetricMonoidal, TaggedWord};

    #[test]
    fn monoid_nerve_recovers_operation() {
        let e = FinCMonoid::truncated_naturals(2);
        let x = nerve_monoid(&e, 3);
        let d = Discrete(&x);
        let r = monoidal_from_gamma(&d).unwrap();
        assert_eq!(decode_tuple(&e, 1, r.unit()), vec![0]);
        for a in 0..3 {
            for b in 0..3 {
                let ab = r
                    .tensor(&encode_tuple(&e, &[a]), &encode_tuple(&e, &[b]))
                    .unwrap();
                assert_eq!(decode_tuple(&e, 1, ab), vec![e.op(a, b)]);
            }
        }
        assert!(r.coherence(100).unwrap().holds());
    }

    #[test]
    fn free_nerve_recovers_symmetry() {
        let a = FreeIdempotentSmc::new(4);
        let x = nerve_smc(&a, vec![1, 2], 3).unwrap();
        let r = monoidal_from_gamma(&x).unwrap();
        let (w1, w2) = (TaggedWord::single(&[1]), TaggedWord::single(&[2]));
        assert_eq!(x.realize(&r.tensor(&w1, &w2).unwrap()), 3);
        assert_eq!(
            x.realize_mor(&r.braiding(&w1, &w2).unwrap()),
            a.symmetry(&1, &2)
        );
        assert_eq!(
            x.realize_mor(&r.associator(&w1, &w2, &w1).unwrap()),
            a.identity(&4)
        );
        let rep = r.coherence(40).unwrap();
        assert!(rep.holds(), "{:?}", rep.failures);
        assert_eq!(rep.pentagons, 81);
    }

    #[test]
    fn matrix_nerve_small() {
        let a = MatrixCategory::new(PrimeField::new(2).unwrap(), 1);
        let x = nerve_smc(&a, vec![0, 1], 3).unwrap();
        let r = monoidal_from_gamma(&x).unwrap();
        assert!(r.coherence(20).unwrap().holds());
        assert!(monoidal_from_gamma(&nerve_smc(&a, vec![1], 2).unwrap()).is_err());
    }
}
