//! The Γ-category of a strict symmetric monoidal category.
//!
//! Level `[n]` is modelled by *tagged words*: finite lists of objects of
//! `A`, each carrying a tag in `1..=n`. A morphism `w → w'` is a tuple
//! `(f_1, …, f_n)` with `f_j : ⊗w|_j → ⊗w'|_j`, where `w|_j` is the
//! subword tagged `j`. A pointed map `u : [n] → [m]` retags letters by `u`
//! and drops those sent to the basepoint; on morphisms it tensors the
//! components over each fiber, conjugated by the symmetry isomorphisms that
//! unshuffle the letters. This is strictly functorial, and level `[1]` is
//! equivalent (not equal) to `A` via `w ↦ ⊗w`.

use std::fmt::Debug;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::gamma::{GammaCategory, GammaMap};

use super::SymmetricMonoidal;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TaggedWord<O> {
    pub letters: Vec<(usize, O)>,
}

impl<O: Clone> TaggedWord<O> {
    pub fn empty() -> Self {
        Self {
            letters: Vec::new(),
        }
    }

    /// The level-`[1]` word with the given letters.
    pub fn single(letters: &[O]) -> Self {
        Self {
            letters: letters.iter().map(|o| (1, o.clone())).collect(),
        }
    }

    pub fn subword(&self, tag: usize) -> Vec<O> {
        self.letters
            .iter()
            .filter(|(t, _)| *t == tag)
            .map(|(_, o)| o.clone())
            .collect()
    }
}

/// A morphism at some level: endpoints plus one component per tag.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LevelMor<O, M> {
    pub source: TaggedWord<O>,
    pub target: TaggedWord<O>,
    pub components: Vec<M>,
}

pub struct SmcNerve<'a, A: SymmetricMonoidal> {
    smc: &'a A,
    letters: Vec<A::Obj>,
    bound: usize,
    max_per_tag: usize,
    sorted: bool,
}

/// The Γ-category of `a` up to level `bound`. The verification universe at
/// level `[n]` consists of the words with at most one letter per tag, in
/// tag order, drawn from `letters`; see [`SmcNerve::with_universe`].
pub fn nerve_smc<A: SymmetricMonoidal>(
    a: &A,
    letters: Vec<A::Obj>,
    bound: usize,
) -> Result<SmcNerve<'_, A>> {
    for x in &letters {
        for y in &letters {
            if a.hom_size(x, y).is_none() {
                return Err(Error::Unsupported(format!(
                    "Hom({x:?}, {y:?}) is not finitely enumerable"
                )));
            }
        }
    }
    Ok(SmcNerve {
        smc: a,
        letters,
        bound,
        max_per_tag: 1,
        sorted: true,
    })
}

type Word<A> = TaggedWord<<A as SymmetricMonoidal>::Obj>;
type Mor<A> = LevelMor<<A as SymmetricMonoidal>::Obj, <A as SymmetricMonoidal>::Mor>;

impl<'a, A: SymmetricMonoidal> SmcNerve<'a, A> {
    /// Changes the verification universe: at most `max_per_tag` letters per
    /// tag, and, when `sorted` is false, letters with different tags may
    /// interleave.
    pub fn with_universe(mut self, max_per_tag: usize, sorted: bool) -> Self {
        self.max_per_tag = max_per_tag;
        self.sorted = sorted;
        self
    }

    pub fn smc(&self) -> &'a A {
        self.smc
    }

    /// `⊗` of the letters with the given tag, in list order.
    pub fn eval(&self, w: &Word<A>, tag: usize) -> A::Obj {
        self.smc.tensor_all(&w.subword(tag))
    }

    /// The equivalence from level `[1]` to `A` on objects.
    pub fn realize(&self, w: &Word<A>) -> A::Obj {
        self.eval(w, 1)
    }

    /// The equivalence from level `[1]` to `A` on morphisms.
    pub fn realize_mor(&self, f: &Mor<A>) -> A::Mor {
        f.components[0].clone()
    }

    /// The level-`[1]` morphism with the given underlying `A`-morphism.
    pub fn level_one(&self, source: &Word<A>, target: &Word<A>, f: A::Mor) -> Result<Mor<A>> {
        if self.smc.source(&f) != self.realize(source)
            || self.smc.target(&f) != self.realize(target)
        {
            return Err(Error::Invalid(format!(
                "{f:?} does not run from ⊗{source:?} to ⊗{target:?}"
            )));
        }
        Ok(LevelMor {
            source: source.clone(),
            target: target.clone(),
            components: vec![f],
        })
    }

    /// The symmetry isomorphism `⊗objs → ⊗(objs[order[0]], objs[order[1]], …)`,
    /// built from adjacent transpositions.
    pub fn permutation_iso(&self, objs: &[A::Obj], order: &[usize]) -> A::Mor {
        let a = self.smc;
        let mut rank = vec![0; order.len()];
        for (p, &i) in order.iter().enumerate() {
            rank[i] = p;
        }
        let mut cur: Vec<usize> = (0..objs.len()).collect();
        let mut acc = a.identity(&a.tensor_all(objs));
        let obj_at = |cur: &[usize], r: std::ops::Range<usize>| -> A::Obj {
            a.tensor_all(&cur[r].iter().map(|&i| objs[i].clone()).collect::<Vec<_>>())
        };
        let n = cur.len();
        for pass in 0..n {
            for p in 0..n.saturating_sub(1 + pass) {
                if rank[cur[p]] > rank[cur[p + 1]] {
                    let swap = a.tensor_mor(
                        &a.tensor_mor(
                            &a.identity(&obj_at(&cur, 0..p)),
                            &a.symmetry(&objs[cur[p]], &objs[cur[p + 1]]),
                        ),
                        &a.identity(&obj_at(&cur, p + 2..n)),
                    );
                    acc = a
                        .compose(&swap, &acc)
                        .expect("adjacent transposition composes");
                    cur.swap(p, p + 1);
                }
            }
        }
        acc
    }

    /// Iso from `⊗(letters mapped to k, list order)` to the same letters
    /// grouped by their original tag (stable), and the grouped letters.
    fn unshuffle(&self, w: &Word<A>, u: &GammaMap, k: usize) -> (A::Mor, Vec<A::Obj>, Vec<usize>) {
        let sub: Vec<(usize, A::Obj)> = w
            .letters
            .iter()
            .filter(|(t, _)| u.apply(*t) == k)
            .cloned()
            .collect();
        let objs: Vec<A::Obj> = sub.iter().map(|(_, o)| o.clone()).collect();
        let order: Vec<usize> = (0..sub.len()).sorted_by_key(|&i| sub[i].0).collect();
        (self.permutation_iso(&objs, &order), objs, order)
    }

    fn words(&self, n: usize) -> Vec<Word<A>> {
        if self.sorted {
            let per_tag: Vec<Vec<A::Obj>> = (0..=self.max_per_tag)
                .flat_map(|len| -> Vec<Vec<A::Obj>> {
                    if len == 0 {
                        vec![Vec::new()]
                    } else {
                        std::iter::repeat_n(self.letters.clone(), len)
                            .multi_cartesian_product()
                            .collect()
                    }
                })
                .collect();
            let mut out = vec![TaggedWord::empty()];
            for tag in 1..=n {
                out = out
                    .into_iter()
                    .flat_map(|w| {
                        per_tag.iter().map(move |p| {
                            let mut w2 = w.clone();
                            w2.letters.extend(p.iter().map(|o| (tag, o.clone())));
                            w2
                        })
                    })
                    .collect();
            }
            out
        } else {
            let mut out = Vec::new();
            let mut stack = vec![TaggedWord::empty()];
            while let Some(w) = stack.pop() {
                for tag in 1..=n {
                    if w.letters.iter().filter(|(t, _)| *t == tag).count() < self.max_per_tag {
                        for o in &self.letters {
                            let mut w2 = w.clone();
                            w2.letters.push((tag, o.clone()));
                            stack.push(w2);
                        }
                    }
                }
                out.push(w);
            }
            out.sort();
            out
        }
    }
}

impl<A: SymmetricMonoidal> GammaCategory for SmcNerve<'_, A> {
    type Obj = Word<A>;
    type Mor = Mor<A>;

    fn bound(&self) -> usize {
        self.bound
    }

    fn objects(&self, n: usize) -> Vec<Word<A>> {
        self.words(n)
    }

    fn hom(&self, n: usize, a: &Word<A>, b: &Word<A>) -> Vec<Mor<A>> {
        if n == 0 {
            return vec![LevelMor {
                source: a.clone(),
                target: b.clone(),
                components: Vec::new(),
            }];
        }
        let factors: Vec<Vec<A::Mor>> = (1..=n)
            .map(|j| {
                self.smc
                    .hom(&self.eval(a, j), &self.eval(b, j))
                    .expect("finite hom-sets")
            })
            .collect();
        factors
            .into_iter()
            .multi_cartesian_product()
            .map(|components| LevelMor {
                source: a.clone(),
                target: b.clone(),
                components,
            })
            .collect()
    }

    fn identity(&self, n: usize, a: &Word<A>) -> Mor<A> {
        LevelMor {
            source: a.clone(),
            target: a.clone(),
            components: (1..=n)
                .map(|j| self.smc.identity(&self.eval(a, j)))
                .collect(),
        }
    }

    fn compose(&self, _n: usize, g: &Mor<A>, f: &Mor<A>) -> Mor<A> {
        LevelMor {
            source: f.source.clone(),
            target: g.target.clone(),
            components: g
                .components
                .iter()
                .zip(&f.components)
                .map(|(gj, fj)| self.smc.compose(gj, fj).expect("componentwise composable"))
                .collect(),
        }
    }

    fn push_obj(&self, u: &GammaMap, a: &Word<A>) -> Word<A> {
        TaggedWord {
            letters: a
                .letters
                .iter()
                .filter(|(t, _)| u.apply(*t) != 0)
                .map(|(t, o)| (u.apply(*t), o.clone()))
                .collect(),
        }
    }

    fn push_mor(&self, u: &GammaMap, f: &Mor<A>) -> Mor<A> {
        let a = self.smc;
        let components = (1..=u.target())
            .map(|k| {
                let middle = u
                    .fiber(k)
                    .map(|j| f.components[j - 1].clone())
                    .reduce(|acc, c| a.tensor_mor(&acc, &c))
                    .unwrap_or_else(|| a.identity(&a.unit()));
                let (into_src, _, _) = self.unshuffle(&f.source, u, k);
                let (_, tgt_objs, tgt_order) = self.unshuffle(&f.target, u, k);
                let grouped: Vec<A::Obj> = tgt_order.iter().map(|&i| tgt_objs[i].clone()).collect();
                let mut back = vec![0; tgt_order.len()];
                for (p, &i) in tgt_order.iter().enumerate() {
                    back[i] = p;
                }
                let out_tgt = self.permutation_iso(&grouped, &back);
                a.compose_chain(&[into_src, middle, out_tgt])
                    .expect("unshuffled components compose")
            })
            .collect();
        LevelMor {
            source: self.push_obj(u, &f.source),
            target: self.push_obj(u, &f.target),
            components,
        }
    }

    fn ends(&self, _n: usize, f: &Mor<A>) -> (Word<A>, Word<A>) {
        (f.source.clone(), f.target.clone())
    }

    fn segal_section(&self, _n: usize, tuple: &[Word<A>]) -> Option<Word<A>> {
        let mut letters = Vec::new();
        for (i, w) in tuple.iter().enumerate() {
            if w.letters.iter().any(|(t, _)| *t != 1) {
                return None;
            }
            letters.extend(w.letters.iter().map(|(_, o)| (i + 1, o.clone())));
        }
        Some(TaggedWord { letters })
    }

    fn lift(&self, n: usize, a: &Word<A>, b: &Word<A>, images: &[Mor<A>]) -> Option<Mor<A>> {
        if images.len() != n {
            return None;
        }
        let components: Vec<A::Mor> = images.iter().map(|m| m.components[0].clone()).collect();
        let ok = components.iter().enumerate().all(|(j, c)| {
            self.smc.source(c) == self.eval(a, j + 1) && self.smc.target(c) == self.eval(b, j + 1)
        });
        ok.then(|| LevelMor {
            source: a.clone(),
            target: b.clone(),
            components,
        })
    }

    fn inverse(&self, _n: usize, _a: &Word<A>, _b: &Word<A>, f: &Mor<A>) -> Option<Mor<A>> {
        let components = f
            .components
            .iter()
            .map(|c| self.smc.inverse(c))
            .collect::<Option<Vec<_>>>()?;
        Some(LevelMor {
            source: f.target.clone(),
            target: f.source.clone(),
            components,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::gamma::{compose, gamma_maps, is_special, segal_map};
    use crate::smc::{FreeIdempotentSmc, MatrixCategory};

    #[test]
    fn universe_sizes() {
        let a = FreeIdempotentSmc::new(2);
        let x = nerve_smc(&a, vec![1, 2], 3).unwrap();
        assert_eq!(x.objects(0).len(), 1);
        assert_eq!(x.objects(1).len(), 3);
        assert_eq!(x.objects(2).len(), 9);
        let x = x.with_universe(1, false);
        assert_eq!(x.objects(2).len(), 1 + 4 + 8);
    }

    #[test]
    fn push_is_functorial_with_interleaving() {
        let a = FreeIdempotentSmc::new(3);
        let x = nerve_smc(&a, vec![1, 2], 3)
            .unwrap()
            .with_universe(2, false);
        for n in 0..=2 {
            let words = x.objects(n);
            let sample: Vec<Mor<FreeIdempotentSmc>> = words
                .iter()
                .filter(|w| w.letters.len() <= 3)
                .flat_map(|w| x.hom(n, w, w).into_iter().step_by(7))
                .collect();
            for m in 0..=2 {
                for u in gamma_maps(n, m) {
                    for k in 0..=2 {
                        for v in gamma_maps(m, k) {
                            let vu = compose(&v, &u).unwrap();
                            for f in &sample {
                                assert_eq!(x.push_mor(&v, &x.push_mor(&u, f)), x.push_mor(&vu, f));
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn swap_pushes_to_symmetry() {
        let a = FreeIdempotentSmc::new(4);
        let x = nerve_smc(&a, vec![1, 2], 2).unwrap();
        let w = TaggedWord {
            letters: vec![(1, 2), (2, 1)],
        };
        let id = x.identity(2, &w);
        let tau = GammaMap::new(2, 2, vec![0, 2, 1]).unwrap();
        let fold = GammaMap::new(2, 1, vec![0, 1, 1]).unwrap();
        let swapped = x.push_mor(&fold, &x.push_mor(&tau, &id));
        assert_eq!(swapped.components[0], a.identity(&3));
        // Pushing along the fold realizes the reordering of letters.
        let w2 = x.push_obj(&tau, &w);
        assert_eq!(w2.letters, vec![(2, 2), (1, 1)]);
        assert_eq!(x.permutation_iso(&[2, 1], &[1, 0]), a.symmetry(&2, &1));
    }

    #[test]
    fn nerve_is_special() {
        let a = MatrixCategory::new(PrimeField::new(2).unwrap(), 1);
        let x = nerve_smc(&a, vec![0, 1], 3).unwrap();
        assert!(is_special(&x, 3).is_special());
        let s = segal_map(2, 2).unwrap();
        assert_eq!(
            x.push_obj(
                &s,
                &TaggedWord {
                    letters: vec![(1, 0), (2, 1)]
                }
            ),
            TaggedWord::single(&[1])
        );
    }
}
