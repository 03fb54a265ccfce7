//! The category of simplices `Δ(I)` of a finite category, truncated at a
//! dimension bound, with its projection to `I` and the vertical morphisms.
//!
//! A morphism `([n], u) → ([m], v)` is a monotone map `f : [m] → [n]` with
//! `u ∘ f = v`; the projection sends it to `u(0 → f(0)) : u(0) → v(0)`, and it
//! is vertical when `f(0) = 0`.

use std::collections::HashMap;
use std::sync::Arc;

use itertools::Itertools;
use serde::Serialize;

use crate::error::Result;
use crate::fincat::{FinCat, FinCatBuilder, FinFunctor, MorId, ObjId};
use crate::nerve::{nerve_truncated, NerveSimplex};

/// A functor `Δⁿ → I`, stored as its vertices and its chain of arrows.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Simplex {
    pub vertices: Vec<ObjId>,
    pub arrows: Vec<MorId>,
}

impl Simplex {
    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }

    /// `u(a → b)` for `a ≤ b`.
    pub fn arrow(&self, base: &FinCat, a: usize, b: usize) -> MorId {
        self.arrows[a..b]
            .iter()
            .fold(base.identity(self.vertices[a]), |acc, &f| {
                base.compose(f, acc).expect("chain composes")
            })
    }

    /// `u ∘ f` for a monotone `f : [m] → [n]`.
    pub fn restrict(&self, base: &FinCat, f: &[usize]) -> Simplex {
        Simplex {
            vertices: f.iter().map(|&k| self.vertices[k]).collect(),
            arrows: f.windows(2).map(|w| self.arrow(base, w[0], w[1])).collect(),
        }
    }

    fn label(&self, base: &FinCat) -> String {
        if self.arrows.is_empty() {
            format!("[0]({})", base.object_name(self.vertices[0]))
        } else {
            format!(
                "[{}]({})",
                self.dim(),
                self.arrows.iter().map(|&f| base.morphism_name(f)).join(",")
            )
        }
    }
}

#[derive(Clone, Debug)]
pub struct SimplexCat {
    base: Arc<FinCat>,
    max_dim: usize,
    simplices: Vec<Simplex>,
    /// For each morphism of `total`, the underlying map `[m] → [n]`.
    maps: Vec<Vec<usize>>,
    total: Arc<FinCat>,
    projection: FinFunctor,
    vertical: Vec<bool>,
}

fn monotone_maps(m: usize, n: usize) -> impl Iterator<Item = Vec<usize>> {
    (0..=n).combinations_with_replacement(m + 1)
}

/// Builds `Δ(I)` on all simplices of dimension at most `max_dim`.
pub fn category_of_simplices(base: &Arc<FinCat>, max_dim: usize) -> Result<SimplexCat> {
    let (_, levels) = nerve_truncated(base, max_dim);
    let simplices: Vec<Simplex> = levels
        .into_iter()
        .flatten()
        .map(|s| match s {
            NerveSimplex::Vertex(x) => Simplex {
                vertices: vec![x],
                arrows: Vec::new(),
            },
            NerveSimplex::Chain(c) => {
                let mut vertices = vec![base.src(c[0])];
                vertices.extend(c.iter().map(|&f| base.tgt(f)));
                Simplex {
                    vertices,
                    arrows: c,
                }
            }
        })
        .collect();

    let mut b = FinCatBuilder::new();
    for s in &simplices {
        b.object(s.label(base));
    }
    let mut maps: Vec<Vec<usize>> = Vec::new();
    let mut lookup: HashMap<(ObjId, ObjId, Vec<usize>), MorId> = HashMap::new();
    let mut record = |b: &FinCatBuilder,
                      maps: &mut Vec<Vec<usize>>,
                      id: MorId,
                      key: (ObjId, ObjId, Vec<usize>)| {
        if maps.len() <= id {
            maps.resize(b.num_morphisms(), Vec::new());
        }
        maps[id] = key.2.clone();
        lookup.insert(key, id);
    };
    for (x, u) in simplices.iter().enumerate() {
        for (y, v) in simplices.iter().enumerate() {
            for f in monotone_maps(v.dim(), u.dim()) {
                if u.restrict(base, &f) != *v {
                    continue;
                }
                let is_id = x == y && f.iter().copied().eq(0..=u.dim());
                let id = if is_id {
                    b.identity(x)
                } else {
                    b.morphism(format!("{x}>{y}:{}", f.iter().join("")), x, y)
                };
                record(&b, &mut maps, id, (x, y, f));
            }
        }
    }
    maps.resize(b.num_morphisms(), Vec::new());

    let ends: Vec<(ObjId, ObjId)> = (0..b.num_morphisms()).map(|m| b.ends(m)).collect();
    for (f, &(x, y)) in ends.iter().enumerate() {
        for (g, &(gs, z)) in ends.iter().enumerate() {
            if gs != y {
                continue;
            }
            let composite: Vec<usize> = maps[g].iter().map(|&j| maps[f][j]).collect();
            let gf = lookup[&(x, z, composite)];
            b.compose(g, f, gf);
        }
    }
    let total = Arc::new(b.build()?);

    let obj_map: Vec<ObjId> = simplices.iter().map(|s| s.vertices[0]).collect();
    let mor_map: Vec<MorId> = total
        .morphisms()
        .map(|m| simplices[total.src(m)].arrow(base, 0, maps[m][0]))
        .collect();
    let projection = FinFunctor::new(total.clone(), base.clone(), obj_map, mor_map)?;
    let vertical = maps.iter().map(|f| f[0] == 0).collect();
    Ok(SimplexCat {
        base: base.clone(),
        max_dim,
        simplices,
        maps,
        total,
        projection,
        vertical,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiberReport {
    pub object: String,
    pub fiber_objects: usize,
    pub fiber_morphisms: usize,
    /// Every terminal object of the vertical fiber.
    pub terminal_objects: Vec<String>,
    pub terminal_witness: String,
    pub has_terminal: bool,
    /// Every arrow `a : k → i` lifts to a morphism into each object over `i`
    /// of dimension below the bound.
    pub cofibered: bool,
    pub lifts_checked: usize,
    pub missing_lifts: Vec<String>,
    /// Whether each of those lifts can be chosen cartesian inside the
    /// truncated category. Truncation can break this even though lifts exist.
    pub strictly_cartesian: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactorizationReport {
    pub checked: usize,
    pub failures: Vec<String>,
}

impl SimplexCat {
    pub fn base(&self) -> &Arc<FinCat> {
        &self.base
    }
    pub fn max_dim(&self) -> usize {
        self.max_dim
    }
    pub fn total(&self) -> &Arc<FinCat> {
        &self.total
    }
    pub fn projection(&self) -> &FinFunctor {
        &self.projection
    }
    pub fn simplex(&self, x: ObjId) -> &Simplex {
        &self.simplices[x]
    }
    pub fn simplex_map(&self, m: MorId) -> &[usize] {
        &self.maps[m]
    }
    pub fn is_vertical(&self, m: MorId) -> bool {
        self.vertical[m]
    }
    pub fn vertical_count(&self) -> usize {
        self.vertical.iter().filter(|&&v| v).count()
    }

    pub fn object_of(&self, s: &Simplex) -> Option<ObjId> {
        self.simplices.iter().position(|t| t == s)
    }

    /// `([0], i)`.
    pub fn point(&self, i: ObjId) -> ObjId {
        self.object_of(&Simplex {
            vertices: vec![i],
            arrows: Vec::new(),
        })
        .expect("dimension 0 is always present")
    }

    /// Identities are vertical and verticals compose to verticals.
    pub fn vertical_is_closed(&self) -> bool {
        let t = &self.total;
        t.objects().all(|x| self.vertical[t.identity(x)])
            && t.composable_pairs().all(|(g, f)| {
                !(self.vertical[f] && self.vertical[g]) || self.vertical[t.compose(g, f).unwrap()]
            })
    }

    fn vertical_hom(&self, x: ObjId, y: ObjId) -> impl Iterator<Item = MorId> + '_ {
        self.total
            .hom(x, y)
            .iter()
            .copied()
            .filter(|&m| self.vertical[m])
    }

    /// `m : y → x` is cartesian for the projection: for every `z`,
    /// `Hom(z, y) → Hom(z, x) ×_{I(πz, πx)} I(πz, πy)` is a bijection.
    pub fn is_cartesian(&self, m: MorId) -> bool {
        let (t, p, base) = (&self.total, &self.projection, &self.base);
        let (y, x) = (t.src(m), t.tgt(m));
        let pm = p.mor(m);
        t.objects().all(|z| {
            let mut images = std::collections::HashSet::new();
            for &h in t.hom(z, y) {
                if !images.insert((t.compose(m, h).unwrap(), p.mor(h))) {
                    return false;
                }
            }
            let expected = t
                .hom(z, x)
                .iter()
                .map(|&g| {
                    base.hom(p.obj(z), p.obj(y))
                        .iter()
                        .filter(|&&w| base.compose(pm, w) == Some(p.mor(g)))
                        .count()
                })
                .sum::<usize>();
            images.len() == expected
        })
    }

    pub fn fiber_report(&self, i: ObjId) -> FiberReport {
        let (t, p, base) = (&self.total, &self.projection, &self.base);
        let over: Vec<ObjId> = t.objects().filter(|&x| p.obj(x) == i).collect();
        let fiber_morphisms = over
            .iter()
            .flat_map(|&x| over.iter().map(move |&y| (x, y)))
            .map(|(x, y)| self.vertical_hom(x, y).count())
            .sum();
        let terminal: Vec<ObjId> = over
            .iter()
            .copied()
            .filter(|&w| over.iter().all(|&x| self.vertical_hom(x, w).count() == 1))
            .collect();
        let witness = self.point(i);

        let mut lifts_checked = 0;
        let mut missing = Vec::new();
        let mut strictly_cartesian = true;
        for a in base.morphisms().filter(|&a| base.tgt(a) == i) {
            for &x in over
                .iter()
                .filter(|&&x| self.simplices[x].dim() < self.max_dim)
            {
                lifts_checked += 1;
                let lifts: Vec<MorId> = t
                    .objects()
                    .flat_map(|y| t.hom(y, x).iter().copied())
                    .filter(|&m| p.mor(m) == a)
                    .collect();
                if lifts.is_empty() {
                    missing.push(format!(
                        "{} over {}",
                        t.object_name(x),
                        base.morphism_name(a)
                    ));
                } else if !lifts.iter().any(|&m| self.is_cartesian(m)) {
                    strictly_cartesian = false;
                }
            }
        }
        FiberReport {
            object: base.object_name(i).to_string(),
            fiber_objects: over.len(),
            fiber_morphisms,
            terminal_objects: terminal
                .iter()
                .map(|&w| t.object_name(w).to_string())
                .collect(),
            terminal_witness: t.object_name(witness).to_string(),
            has_terminal: terminal.contains(&witness),
            cofibered: missing.is_empty(),
            lifts_checked,
            missing_lifts: missing,
            strictly_cartesian,
        }
    }

    /// Every morphism `f : x → y` with `dim y` below the bound is `L ∘ V`
    /// with `V` vertical and `L` the lift of `π(f)` obtained by prepending
    /// `π(f)` to `y`.
    pub fn factorization_report(&self) -> FactorizationReport {
        let (t, p) = (&self.total, &self.projection);
        let mut checked = 0;
        let mut failures = Vec::new();
        for f in t.morphisms() {
            let (x, y) = (t.src(f), t.tgt(f));
            let v = &self.simplices[y];
            if v.dim() >= self.max_dim {
                continue;
            }
            checked += 1;
            let a = p.mor(f);
            let mut vertices = vec![self.base.src(a)];
            vertices.extend(&v.vertices);
            let mut arrows = vec![a];
            arrows.extend(&v.arrows);
            let ok = self.object_of(&Simplex { vertices, arrows }).and_then(|w| {
                let lift: MorId = t
                    .hom(w, y)
                    .iter()
                    .copied()
                    .find(|&l| self.maps[l].iter().copied().eq(1..=v.dim() + 1))?;
                let vert = self
                    .vertical_hom(x, w)
                    .find(|&m| t.compose(lift, m) == Some(f))?;
                (p.mor(lift) == a && self.vertical[vert]).then_some(())
            });
            if ok.is_none() {
                failures.push(t.morphism_name(f).to_string());
            }
        }
        FactorizationReport { checked, failures }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::check_category;

    fn all_test_bases() -> Vec<FinCat> {
        vec![
            FinCat::terminal(),
            FinCat::simplex(1),
            FinCat::simplex(2),
            FinCat::contractible_groupoid(2),
        ]
    }

    #[test]
    fn terminal_base() {
        let s = category_of_simplices(&Arc::new(FinCat::terminal()), 2).unwrap();
        assert_eq!(s.total().num_objects(), 3);
        assert!(s
            .total()
            .morphisms()
            .all(|m| s.projection().target().is_identity(s.projection().mor(m))));
        let r = s.fiber_report(0);
        assert!(r.has_terminal && r.cofibered);
        assert_eq!(r.terminal_objects, vec![r.terminal_witness.clone()]);
    }

    #[test]
    fn delta_one_counts_and_projection() {
        let base = Arc::new(FinCat::simplex(1));
        let s = category_of_simplices(&base, 1).unwrap();
        assert_eq!(s.total().num_objects(), 5);
        assert!(check_category(&s.total().to_data()).is_empty());
        let arrow = base.morphisms().find(|&f| !base.is_identity(f)).unwrap();
        let x = s
            .object_of(&Simplex {
                vertices: vec![0, 1],
                arrows: vec![arrow],
            })
            .unwrap();
        assert_eq!(s.projection().obj(x), 0);
    }

    #[test]
    fn hom_sets_match_naive_count() {
        let base = Arc::new(FinCat::simplex(2));
        let s = category_of_simplices(&base, 2).unwrap();
        for x in s.total().objects() {
            for y in s.total().objects() {
                let (u, v) = (s.simplex(x), s.simplex(y));
                let naive = (0..(u.dim() + 1).pow(v.dim() as u32 + 1))
                    .map(|mut code| {
                        (0..=v.dim())
                            .map(|_| {
                                let d = code % (u.dim() + 1);
                                code /= u.dim() + 1;
                                d
                            })
                            .collect::<Vec<_>>()
                    })
                    .filter(|f| f.windows(2).all(|w| w[0] <= w[1]))
                    .filter(|f| (0..=v.dim()).all(|j| u.vertices[f[j]] == v.vertices[j]))
                    .filter(|f| (0..v.dim()).all(|j| u.arrow(&base, f[j], f[j + 1]) == v.arrows[j]))
                    .count();
                assert_eq!(s.total().hom(x, y).len(), naive);
            }
        }
    }

    #[test]
    fn fibers_have_terminal_point_and_lifts_exist() {
        for base in all_test_bases() {
            let base = Arc::new(base);
            let s = category_of_simplices(&base, 3).unwrap();
            assert!(s.vertical_is_closed());
            for i in base.objects() {
                let r = s.fiber_report(i);
                assert!(r.has_terminal, "{r:?}");
                assert_eq!(r.terminal_objects.len(), 1);
                assert!(r.cofibered, "{r:?}");
            }
        }
    }

    #[test]
    fn truncation_breaks_strict_cartesianness() {
        let s = category_of_simplices(&Arc::new(FinCat::simplex(1)), 3).unwrap();
        assert!(!s.fiber_report(1).strictly_cartesian);
    }

    #[test]
    fn every_morphism_factors() {
        for base in all_test_bases() {
            let s = category_of_simplices(&Arc::new(base), 3).unwrap();
            let r = s.factorization_report();
            assert!(r.checked > 0);
            assert!(r.failures.is_empty(), "{r:?}");
        }
    }
}
