//! Strict diagrams of finite categories, their Grothendieck construction,
//! cartesian morphisms, and categories of cartesian sections.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fincat::{
    comma_under, enumerate_functors, is_equivalence, CategoryData, FinCat, FinCatBuilder,
    FinFunctor, MorId, NotEquivalence, ObjId,
};

/// Enumeration cap for cartesian sections (search nodes).
pub const SECTION_CAP: u128 = 100_000;

/// A strict functor from a finite category to finite categories.
#[derive(Clone, Debug)]
pub struct CatDiagram {
    base: Arc<FinCat>,
    fibers: Vec<Arc<FinCat>>,
    arrows: Vec<FinFunctor>,
}

impl CatDiagram {
    /// Validates that `arrows[u] : fibers[src u] → fibers[tgt u]`, that
    /// identities go to identity functors and composites to composites.
    pub fn new(
        base: Arc<FinCat>,
        fibers: Vec<Arc<FinCat>>,
        arrows: Vec<FinFunctor>,
    ) -> Result<Self> {
        if fibers.len() != base.num_objects() || arrows.len() != base.num_morphisms() {
            return Err(Error::Invalid(
                "one fiber per object and one functor per morphism required".into(),
            ));
        }
        for u in base.morphisms() {
            let f = &arrows[u];
            if **f.source() != *fibers[base.src(u)] || **f.target() != *fibers[base.tgt(u)] {
                return Err(Error::Invalid(format!(
                    "F({}) has the wrong source or target",
                    base.morphism_name(u)
                )));
            }
        }
        for i in base.objects() {
            if arrows[base.identity(i)] != FinFunctor::identity(fibers[i].clone()) {
                return Err(Error::Invalid(format!(
                    "F(id_{}) is not the identity",
                    base.object_name(i)
                )));
            }
        }
        for (v, u) in base.composable_pairs() {
            let vu = base.compose(v, u).expect("composable");
            if arrows[u].then(&arrows[v])? != arrows[vu] {
                return Err(Error::Invalid(format!(
                    "F({}∘{}) ≠ F({})∘F({})",
                    base.morphism_name(v),
                    base.morphism_name(u),
                    base.morphism_name(v),
                    base.morphism_name(u)
                )));
            }
        }
        Ok(Self {
            base,
            fibers,
            arrows,
        })
    }

    pub fn base(&self) -> &Arc<FinCat> {
        &self.base
    }
    pub fn fiber(&self, i: ObjId) -> &Arc<FinCat> {
        &self.fibers[i]
    }
    pub fn arrow(&self, u: MorId) -> &FinFunctor {
        &self.arrows[u]
    }
}

/// A functor `π : A → I` regarded as a category over `I`.
#[derive(Clone, Debug)]
pub struct FiberedCat {
    pub total: Arc<FinCat>,
    pub projection: FinFunctor,
}

/// A morphism `(i, x) → (j, y)` of the Grothendieck construction: a base
/// morphism `u : i → j` and a fiber morphism `γ : F(u)(x) → y` in `F(j)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct GrothMor {
    pub base: MorId,
    pub source: ObjId,
    pub fiber: MorId,
}

/// The Grothendieck construction with its bookkeeping.
#[derive(Clone, Debug)]
pub struct Integral {
    pub fibered: FiberedCat,
    /// `(i, x)` for each object of the total category.
    pub objects: Vec<(ObjId, ObjId)>,
    pub morphisms: Vec<GrothMor>,
    diagram: CatDiagram,
}

/// `∫F`: objects `(i, x)` with `x ∈ F(i)`; morphisms `(u, γ)`; composition
/// `(v, δ) ∘ (u, γ) = (v∘u, δ ∘ F(v)(γ))`.
pub fn integrate(diagram: &CatDiagram) -> Result<Integral> {
    let base = &diagram.base;
    let mut b = FinCatBuilder::new();
    let mut objects = Vec::new();
    let mut obj_id: BTreeMap<(ObjId, ObjId), ObjId> = BTreeMap::new();
    for i in base.objects() {
        for x in diagram.fibers[i].objects() {
            let id = b.object(format!(
                "({},{})",
                base.object_name(i),
                diagram.fibers[i].object_name(x)
            ));
            obj_id.insert((i, x), id);
            objects.push((i, x));
        }
    }
    let mut morphisms: Vec<GrothMor> = Vec::new();
    let mut mor_id: BTreeMap<(MorId, ObjId, MorId), MorId> = BTreeMap::new();
    for &(i, x) in &objects {
        let id = b.identity(obj_id[&(i, x)]);
        let m = GrothMor {
            base: base.identity(i),
            source: x,
            fiber: diagram.fibers[i].identity(x),
        };
        mor_id.insert((m.base, m.source, m.fiber), id);
    }
    morphisms.resize(
        b.num_morphisms(),
        GrothMor {
            base: 0,
            source: 0,
            fiber: 0,
        },
    );
    for (&(u, x, g), &id) in &mor_id {
        morphisms[id] = GrothMor {
            base: u,
            source: x,
            fiber: g,
        };
    }
    for u in base.morphisms() {
        let (i, j) = (base.src(u), base.tgt(u));
        let (fi, fj) = (&diagram.fibers[i], &diagram.fibers[j]);
        for x in fi.objects() {
            let fx = diagram.arrows[u].obj(x);
            for y in fj.objects() {
                for &g in fj.hom(fx, y) {
                    if mor_id.contains_key(&(u, x, g)) {
                        continue;
                    }
                    let id = b.morphism(
                        format!(
                            "({}|{}|{})",
                            fi.object_name(x),
                            base.morphism_name(u),
                            fj.morphism_name(g)
                        ),
                        obj_id[&(i, x)],
                        obj_id[&(j, y)],
                    );
                    mor_id.insert((u, x, g), id);
                    morphisms.push(GrothMor {
                        base: u,
                        source: x,
                        fiber: g,
                    });
                }
            }
        }
    }
    for (f_id, f) in morphisms.iter().enumerate() {
        let j = base.tgt(f.base);
        let y = diagram.fibers[j].tgt(f.fiber);
        for (g_id, g) in morphisms.iter().enumerate() {
            if g.source != y || base.src(g.base) != j {
                continue;
            }
            let k = base.tgt(g.base);
            let vu = base.compose(g.base, f.base).expect("composable in base");
            let moved = diagram.arrows[g.base].mor(f.fiber);
            let fiber = diagram.fibers[k]
                .compose(g.fiber, moved)
                .expect("composable in fiber");
            b.compose(g_id, f_id, mor_id[&(vu, f.source, fiber)]);
        }
    }
    let total = Arc::new(b.build()?);
    let projection = FinFunctor::new(
        total.clone(),
        base.clone(),
        objects.iter().map(|&(i, _)| i).collect(),
        morphisms.iter().map(|m| m.base).collect(),
    )?;
    Ok(Integral {
        fibered: FiberedCat { total, projection },
        objects,
        morphisms,
        diagram: diagram.clone(),
    })
}

impl Integral {
    /// `(u, γ)` is cartesian exactly when `γ` is invertible in `F(j)`.
    pub fn is_cartesian(&self, m: MorId) -> bool {
        let g = self.morphisms[m];
        let j = self.diagram.base.tgt(g.base);
        self.diagram.fibers[j].inverse(g.fiber).is_some()
    }

    pub fn diagram(&self) -> &CatDiagram {
        &self.diagram
    }

    /// Whether every base morphism `u : i → j` has, at every `x` over `i`,
    /// a lift that is cartesian for the universal property.
    pub fn has_cartesian_lifts(&self) -> bool {
        let (total, proj) = (&self.fibered.total, &self.fibered.projection);
        let base = &self.diagram.base;
        base.morphisms().all(|u| {
            total
                .objects()
                .filter(|&x| proj.obj(x) == base.src(u))
                .all(|x| {
                    total.morphisms().any(|m| {
                        total.src(m) == x && proj.mor(m) == u && self.fibered.is_cartesian(m)
                    })
                })
        })
    }

    /// Whether `(i, x) ↦ x` is an isomorphism from the fiber over `i` onto
    /// `F(i)`.
    pub fn fiber_matches(&self, i: ObjId) -> Result<bool> {
        let (fiber, objs, mors) = self.fibered.fiber(i)?;
        let target = self.diagram.fibers[i].clone();
        let obj_map: Vec<ObjId> = objs.iter().map(|&x| self.objects[x].1).collect();
        let mor_map: Vec<MorId> = mors.iter().map(|&m| self.morphisms[m].fiber).collect();
        let bijective = |v: &[usize], n: usize| {
            v.len() == n && v.iter().collect::<std::collections::HashSet<_>>().len() == n
        };
        if !bijective(&obj_map, target.num_objects())
            || !bijective(&mor_map, target.num_morphisms())
        {
            return Ok(false);
        }
        Ok(FinFunctor::new(fiber, target, obj_map, mor_map).is_ok())
    }
}

/// Outcome of the exhaustive sweep over diagrams `Δ¹ → Cat`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub categories: usize,
    pub diagrams: usize,
    pub failures: Vec<String>,
}

/// Runs the Grothendieck checks on every functor between every pair of
/// small categories (one per isomorphism class): the construction has
/// cartesian lifts, its fibers are the `F(i)`, and cartesian sections
/// recover each fiber up to equivalence.
pub fn sweep_arrow_diagrams(max_objects: usize, max_morphisms: usize) -> Result<SweepReport> {
    let cats: Vec<Arc<FinCat>> = crate::fincat::small_categories(max_objects, max_morphisms)
        .into_iter()
        .map(Arc::new)
        .collect();
    let mut report = SweepReport {
        categories: cats.len(),
        ..Default::default()
    };
    for (a, c0) in cats.iter().enumerate() {
        for (b, c1) in cats.iter().enumerate() {
            for (n, (o, m)) in enumerate_functors(c0, c1, &|_, _| true, &|_, _| true, u128::MAX)?
                .into_iter()
                .enumerate()
            {
                let f = FinFunctor::new(c0.clone(), c1.clone(), o, m)?;
                let d = arrow_diagram(&f)?;
                let integral = integrate(&d)?;
                let label = format!("categories {a} → {b}, functor {n}");
                if !integral.has_cartesian_lifts() {
                    report
                        .failures
                        .push(format!("{label}: missing cartesian lift"));
                }
                for i in d.base.objects() {
                    if !integral.fiber_matches(i)? {
                        report
                            .failures
                            .push(format!("{label}: fiber over {i} differs from F({i})"));
                    }
                    if !sections_at(&integral, i, SECTION_CAP)?.equivalence {
                        report.failures.push(format!(
                            "{label}: sections over {i} are not equivalent to F({i})"
                        ));
                    }
                }
                report.diagrams += 1;
            }
        }
    }
    Ok(report)
}

impl FiberedCat {
    /// `m : x → y` is cartesian when, for every `z`, precomposition with `m`
    /// together with `π` gives a bijection
    /// `A(y, z) → A(x, z) ×_{I(πx, πz)} I(πy, πz)`.
    pub fn is_cartesian(&self, m: MorId) -> bool {
        let (a, p) = (&self.total, &self.projection);
        let base = p.target();
        let (x, y) = (a.src(m), a.tgt(m));
        let pm = p.mor(m);
        for z in a.objects() {
            let mut seen = std::collections::HashSet::new();
            for &h in a.hom(y, z) {
                let pair = (a.compose(h, m).expect("composable"), p.mor(h));
                if !seen.insert(pair) {
                    return false;
                }
            }
            let mut expected = 0;
            for &g in a.hom(x, z) {
                for &w in base.hom(p.obj(y), p.obj(z)) {
                    if base.compose(w, pm) == Some(p.mor(g)) {
                        expected += 1;
                    }
                }
            }
            if seen.len() != expected {
                return false;
            }
        }
        true
    }

    pub fn cartesian_morphisms(&self) -> Vec<bool> {
        self.total
            .morphisms()
            .map(|m| self.is_cartesian(m))
            .collect()
    }

    /// The fiber over `i`: objects over `i` and morphisms over `id_i`.
    pub fn fiber(&self, i: ObjId) -> Result<(Arc<FinCat>, Vec<ObjId>, Vec<MorId>)> {
        let (a, p) = (&self.total, &self.projection);
        let id_i = p.target().identity(i);
        let objs: Vec<ObjId> = a.objects().filter(|&x| p.obj(x) == i).collect();
        let mors: Vec<MorId> = a.morphisms().filter(|&f| p.mor(f) == id_i).collect();
        let mut b = FinCatBuilder::new();
        let mut obj_new = BTreeMap::new();
        for &x in &objs {
            obj_new.insert(x, b.object(a.object_name(x)));
        }
        let mut mor_new = BTreeMap::new();
        for &f in &mors {
            let id = if a.is_identity(f) {
                b.identity(obj_new[&a.src(f)])
            } else {
                b.morphism(a.morphism_name(f), obj_new[&a.src(f)], obj_new[&a.tgt(f)])
            };
            mor_new.insert(f, id);
        }
        for &f in &mors {
            for &g in &mors {
                if let Some(gf) = a.compose(g, f) {
                    b.compose(mor_new[&g], mor_new[&f], mor_new[&gf]);
                }
            }
        }
        Ok((Arc::new(b.build()?), objs, mors))
    }
}

/// Outcome of the sections round trip at one base object.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SectionsReport {
    pub object: String,
    pub sections: usize,
    pub section_morphisms: usize,
    pub fiber_objects: usize,
    pub equivalence: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<NotEquivalence>,
}

/// For every object `i` of the base, builds the category of cartesian
/// sections of `∫F` over `i/I` and checks that evaluation at `id_i` is an
/// equivalence onto `F(i)`.
pub fn cartesian_sections_roundtrip(diagram: &CatDiagram) -> Result<Vec<SectionsReport>> {
    let integral = integrate(diagram)?;
    diagram
        .base
        .objects()
        .map(|i| sections_at(&integral, i, SECTION_CAP))
        .collect()
}

/// The category of cartesian sections over `i/I` and its evaluation functor
/// to `F(i)`.
pub fn sections_at(integral: &Integral, i: ObjId, cap: u128) -> Result<SectionsReport> {
    let diagram = &integral.diagram;
    let total = &integral.fibered.total;
    let proj = &integral.fibered.projection;
    let (comma, forget) = comma_under(&diagram.base, i)?;
    let cartesian: Vec<bool> = total
        .morphisms()
        .map(|m| integral.is_cartesian(m))
        .collect();
    let functors = enumerate_functors(
        &comma,
        total,
        &|c, t| proj.obj(t) == forget.obj(c),
        &|f, g| proj.mor(g) == forget.mor(f) && cartesian[g],
        cap,
    )?;
    // Position of id_i among the objects of i/I.
    let root = comma
        .objects()
        .find(|&c| comma.object_name(c) == diagram.base.morphism_name(diagram.base.identity(i)))
        .ok_or_else(|| Error::TheoryViolation("identity missing from comma category".into()))?;

    let mut b = FinCatBuilder::new();
    for k in 0..functors.len() {
        b.object(format!("s{k}"));
    }
    // A morphism of sections: vertical components, natural in i/I.
    let vertical = |s: ObjId, t: ObjId| -> Vec<MorId> {
        total
            .hom(s, t)
            .iter()
            .copied()
            .filter(|&m| diagram.base.is_identity(proj.mor(m)))
            .collect()
    };
    let mut transformations: Vec<(usize, usize, Vec<MorId>)> = Vec::new();
    for (si, (sobj, smor)) in functors.iter().enumerate() {
        for (ti, (tobj, tmor)) in functors.iter().enumerate() {
            let choices: Vec<Vec<MorId>> = comma
                .objects()
                .map(|c| vertical(sobj[c], tobj[c]))
                .collect();
            for comps in choices.into_iter().multi_cartesian_product() {
                let natural = comma.morphisms().all(|f| {
                    let (x, y) = (comma.src(f), comma.tgt(f));
                    total.compose(comps[y], smor[f]) == total.compose(tmor[f], comps[x])
                });
                if natural {
                    transformations.push((si, ti, comps));
                }
            }
        }
    }
    let mut ids: BTreeMap<(usize, usize, Vec<MorId>), MorId> = BTreeMap::new();
    let mut ends = Vec::new();
    for (n, (s, t, comps)) in transformations.iter().enumerate() {
        let is_id = s == t && comps.iter().all(|&m| total.is_identity(m));
        let id = if is_id {
            b.identity(*s)
        } else {
            b.morphism(format!("n{n}"), *s, *t)
        };
        ids.insert((*s, *t, comps.clone()), id);
        ends.push(id);
    }
    for (f, (fs, ft, fc)) in transformations.iter().enumerate() {
        for (g, (gs, gt, gc)) in transformations.iter().enumerate() {
            if gs != ft {
                continue;
            }
            let comps: Vec<MorId> = fc
                .iter()
                .zip(gc)
                .map(|(&a, &c)| total.compose(c, a).expect("composable components"))
                .collect();
            let gf = *ids
                .get(&(*fs, *gt, comps))
                .ok_or_else(|| Error::TheoryViolation("sections not closed".into()))?;
            b.compose(ends[g], ends[f], gf);
        }
    }
    let sect = Arc::new(b.build()?);
    let fib = diagram.fibers[i].clone();
    let obj_map: Vec<ObjId> = functors
        .iter()
        .map(|(o, _)| integral.objects[o[root]].1)
        .collect();
    let mut mor_map = vec![0; sect.num_morphisms()];
    for (n, (_, _, comps)) in transformations.iter().enumerate() {
        mor_map[ends[n]] = integral.morphisms[comps[root]].fiber;
    }
    let ev = FinFunctor::new(sect.clone(), fib.clone(), obj_map, mor_map)?;
    let verdict = is_equivalence(&ev);
    Ok(SectionsReport {
        object: diagram.base.object_name(i).to_string(),
        sections: sect.num_objects(),
        section_morphisms: sect.num_morphisms(),
        fiber_objects: fib.num_objects(),
        equivalence: verdict.is_ok(),
        failure: verdict.err(),
    })
}

/// The diagram on `Δ¹ = {0 → 1}` sending the arrow to `f`.
pub fn arrow_diagram(f: &FinFunctor) -> Result<CatDiagram> {
    let base = Arc::new(FinCat::simplex(1));
    let (c0, c1) = (f.source().clone(), f.target().clone());
    let arrows = base
        .morphisms()
        .map(|u| match (base.src(u), base.tgt(u)) {
            (0, 0) => FinFunctor::identity(c0.clone()),
            (1, 1) => FinFunctor::identity(c1.clone()),
            _ => f.clone(),
        })
        .collect();
    CatDiagram::new(base, vec![c0, c1], arrows)
}

/// Serialized diagram. Categories are given inline or as paths relative to
/// the diagram file.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DiagramData {
    pub base: CategoryRef,
    /// Fiber category per base object.
    pub fibers: BTreeMap<String, CategoryRef>,
    /// Functor per base morphism; identities may be omitted.
    pub functors: BTreeMap<String, FunctorData>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CategoryRef {
    Inline(CategoryData),
    Path(String),
}

/// Object and morphism images, in the source category's id order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctorData {
    pub objects: Vec<String>,
    pub morphisms: Vec<String>,
}

impl CategoryRef {
    pub fn load(&self, dir: &Path) -> Result<CategoryData> {
        match self {
            CategoryRef::Inline(d) => Ok(d.clone()),
            CategoryRef::Path(p) => {
                let text = std::fs::read_to_string(dir.join(p))
                    .map_err(|e| Error::Parse(format!("cannot read {p}: {e}")))?;
                serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{p}: {e}")))
            }
        }
    }
}

impl DiagramData {
    pub fn to_diagram(&self, dir: &Path) -> Result<CatDiagram> {
        let base = Arc::new(FinCat::from_data(&self.base.load(dir)?)?);
        let mut fibers = Vec::new();
        for i in base.objects() {
            let name = base.object_name(i);
            let r = self
                .fibers
                .get(name)
                .ok_or_else(|| Error::Invalid(format!("no fiber for {name}")))?;
            fibers.push(Arc::new(FinCat::from_data(&r.load(dir)?)?));
        }
        let mut arrows = Vec::new();
        for u in base.morphisms() {
            let (s, t) = (fibers[base.src(u)].clone(), fibers[base.tgt(u)].clone());
            let name = base.morphism_name(u);
            let f = match self.functors.get(name) {
                None if base.is_identity(u) => FinFunctor::identity(s),
                None => return Err(Error::Invalid(format!("no functor for {name}"))),
                Some(fd) => {
                    let objs = fd
                        .objects
                        .iter()
                        .map(|o| {
                            t.object_by_name(o)
                                .ok_or_else(|| Error::UnknownObject(o.clone()))
                        })
                        .collect::<Result<Vec<_>>>()?;
                    let mors = fd
                        .morphisms
                        .iter()
                        .map(|m| {
                            t.morphism_by_name(m)
                                .ok_or_else(|| Error::UnknownMorphism(m.clone()))
                        })
                        .collect::<Result<Vec<_>>>()?;
                    FinFunctor::new(s, t, objs, mors)?
                }
            };
            arrows.push(f);
        }
        CatDiagram::new(base, fibers, arrows)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn constant(base: FinCat, fiber: FinCat) -> CatDiagram {
        let base = Arc::new(base);
        let fiber = Arc::new(fiber);
        let fibers = vec![fiber.clone(); base.num_objects()];
        let arrows = base
            .morphisms()
            .map(|_| FinFunctor::identity(fiber.clone()))
            .collect();
        CatDiagram::new(base, fibers, arrows).unwrap()
    }

    #[test]
    fn constant_diagram_is_product() {
        let d = constant(FinCat::simplex(1), FinCat::simplex(1));
        let int = integrate(&d).unwrap();
        assert_eq!(int.fibered.total.num_objects(), 4);
        // Δ¹ × Δ¹ has 9 morphisms.
        assert_eq!(int.fibered.total.num_morphisms(), 9);
        for m in int.fibered.total.morphisms() {
            assert_eq!(
                int.is_cartesian(m),
                int.fibered.is_cartesian(m),
                "morphism {m}"
            );
        }
    }

    #[test]
    fn terminal_fibers_give_base() {
        let d = constant(FinCat::simplex(2), FinCat::terminal());
        let int = integrate(&d).unwrap();
        assert_eq!(
            int.fibered.total.num_morphisms(),
            FinCat::simplex(2).num_morphisms()
        );
        assert!(int.fibered.cartesian_morphisms().into_iter().all(|c| c));
    }

    #[test]
    fn roundtrip_on_arrow_diagram() {
        let base = Arc::new(FinCat::simplex(1));
        let f0 = Arc::new(FinCat::discrete(&["a", "b"]));
        let f1 = Arc::new(FinCat::terminal());
        let arrows = vec![
            FinFunctor::identity(f0.clone()),
            FinFunctor::to_terminal(f0.clone()),
            FinFunctor::identity(f1.clone()),
        ];
        let order: Vec<MorId> = base.morphisms().collect();
        let arrows = order
            .iter()
            .map(|&u| {
                if base.is_identity(u) {
                    if base.src(u) == 0 {
                        arrows[0].clone()
                    } else {
                        arrows[2].clone()
                    }
                } else {
                    arrows[1].clone()
                }
            })
            .collect();
        let d = CatDiagram::new(base, vec![f0, f1], arrows).unwrap();
        let reports = cartesian_sections_roundtrip(&d).unwrap();
        assert!(reports.iter().all(|r| r.equivalence), "{reports:?}");
        assert_eq!(reports[0].sections, 2);
        assert_eq!(reports[1].sections, 1);
    }

    #[test]
    fn non_functorial_diagram_rejected() {
        let base = Arc::new(FinCat::simplex(1));
        let f = Arc::new(FinCat::discrete(&["a", "b"]));
        let swap = FinFunctor::new(f.clone(), f.clone(), vec![1, 0], vec![1, 0]).unwrap();
        let arrows = base.morphisms().map(|_| swap.clone()).collect();
        assert!(CatDiagram::new(base, vec![f.clone(), f], arrows).is_err());
    }

    #[test]
    fn sweep_small_arrow_diagrams() {
        let report = sweep_arrow_diagrams(2, 3).unwrap();
        assert!(report.diagrams > 50);
        assert!(report.failures.is_empty(), "{:?}", report.failures);
    }
}
