//! Finite categories given by explicit composition tables, functors between
//! them, natural transformations, comma categories under an object, and
//! equivalence testing.
//!
//! Objects and morphisms carry dense integer ids. Identities are ordinary
//! morphisms and show up in every enumeration. A [`FinCat`] can only be
//! obtained through validation, so downstream code may assume the category
//! axioms hold.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

use itertools::Itertools;
use petgraph::unionfind::UnionFind;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type ObjId = usize;
pub type MorId = usize;

/// The serialized form of a finite category. Ids are free-form strings.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CategoryData {
    pub objects: Vec<String>,
    pub morphisms: Vec<MorphismData>,
    pub identities: BTreeMap<String, String>,
    /// Triples `[g, f, g∘f]`.
    pub compose: Vec<[String; 3]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismData {
    pub id: String,
    pub src: String,
    pub tgt: String,
}

/// One failed category axiom, naming the offending ids.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    DuplicateObject {
        object: String,
    },
    DuplicateMorphism {
        morphism: String,
    },
    UnknownObject {
        object: String,
        context: String,
    },
    UnknownMorphism {
        morphism: String,
        context: String,
    },
    MissingIdentity {
        object: String,
    },
    IdentityNotEndo {
        object: String,
        morphism: String,
    },
    NotComposable {
        g: String,
        f: String,
    },
    DuplicateComposite {
        g: String,
        f: String,
    },
    MissingComposite {
        g: String,
        f: String,
    },
    CompositeEndpoints {
        g: String,
        f: String,
        composite: String,
    },
    LeftUnit {
        f: String,
    },
    RightUnit {
        f: String,
    },
    NotAssociative {
        h: String,
        g: String,
        f: String,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}",
            serde_json::to_string(self).map_err(|_| fmt::Error)?
        )
    }
}

/// Checks every category axiom on raw data. Never fails: malformed
/// references are reported as violations like any other.
pub fn check_category(data: &CategoryData) -> Vec<Violation> {
    let mut report = Vec::new();
    let mut obj_index: HashMap<&str, ObjId> = HashMap::new();
    for o in &data.objects {
        if obj_index.insert(o.as_str(), obj_index.len()).is_some() {
            report.push(Violation::DuplicateObject { object: o.clone() });
        }
    }
    let mut mor_index: HashMap<&str, MorId> = HashMap::new();
    let mut ends: Vec<Option<(ObjId, ObjId)>> = Vec::new();
    for m in &data.morphisms {
        if mor_index.contains_key(m.id.as_str()) {
            report.push(Violation::DuplicateMorphism {
                morphism: m.id.clone(),
            });
            continue;
        }
        let s = obj_index.get(m.src.as_str()).copied();
        let t = obj_index.get(m.tgt.as_str()).copied();
        for (o, found) in [(&m.src, s), (&m.tgt, t)] {
            if found.is_none() {
                report.push(Violation::UnknownObject {
                    object: o.clone(),
                    context: format!("endpoint of {}", m.id),
                });
            }
        }
        mor_index.insert(m.id.as_str(), ends.len());
        ends.push(s.zip(t));
    }
    let names: Vec<&str> = {
        let mut v = vec![""; ends.len()];
        for (k, &i) in &mor_index {
            v[i] = k;
        }
        v
    };

    let mut identity: Vec<Option<MorId>> = vec![None; obj_index.len()];
    for (o, m) in &data.identities {
        let Some(&oi) = obj_index.get(o.as_str()) else {
            report.push(Violation::UnknownObject {
                object: o.clone(),
                context: "identities".into(),
            });
            continue;
        };
        let Some(&mi) = mor_index.get(m.as_str()) else {
            report.push(Violation::UnknownMorphism {
                morphism: m.clone(),
                context: format!("identity of {o}"),
            });
            continue;
        };
        if ends[mi] != Some((oi, oi)) {
            report.push(Violation::IdentityNotEndo {
                object: o.clone(),
                morphism: m.clone(),
            });
            continue;
        }
        identity[oi] = Some(mi);
    }
    for (o, &oi) in &obj_index {
        if identity[oi].is_none() && !data.identities.contains_key(*o) {
            report.push(Violation::MissingIdentity {
                object: o.to_string(),
            });
        }
    }

    let mut table: HashMap<(MorId, MorId), MorId> = HashMap::new();
    for [g, f, gf] in &data.compose {
        let lookup = |name: &String, report: &mut Vec<Violation>| {
            let r = mor_index.get(name.as_str()).copied();
            if r.is_none() {
                report.push(Violation::UnknownMorphism {
                    morphism: name.clone(),
                    context: format!("composition entry [{g}, {f}, {gf}]"),
                });
            }
            r
        };
        let (gi, fi, gfi) = (
            lookup(g, &mut report),
            lookup(f, &mut report),
            lookup(gf, &mut report),
        );
        let (Some(gi), Some(fi), Some(gfi)) = (gi, fi, gfi) else {
            continue;
        };
        let (Some((gs, gt)), Some((fs, ft)), Some(gfe)) = (ends[gi], ends[fi], ends[gfi]) else {
            continue;
        };
        if ft != gs {
            report.push(Violation::NotComposable {
                g: g.clone(),
                f: f.clone(),
            });
            continue;
        }
        if gfe != (fs, gt) {
            report.push(Violation::CompositeEndpoints {
                g: g.clone(),
                f: f.clone(),
                composite: gf.clone(),
            });
        }
        if table.insert((gi, fi), gfi).is_some() {
            report.push(Violation::DuplicateComposite {
                g: g.clone(),
                f: f.clone(),
            });
        }
    }

    // Totality, unit laws and associativity only make sense on well-formed ends.
    let n = ends.len();
    let mut out_of: Vec<Vec<MorId>> = vec![Vec::new(); obj_index.len()];
    for (m, e) in ends.iter().enumerate() {
        if let Some((s, _)) = e {
            out_of[*s].push(m);
        }
    }
    for fi in 0..n {
        let Some((_, ft)) = ends[fi] else { continue };
        for &gi in &out_of[ft] {
            if !table.contains_key(&(gi, fi)) {
                report.push(Violation::MissingComposite {
                    g: names[gi].into(),
                    f: names[fi].into(),
                });
            }
        }
    }
    for fi in 0..n {
        let Some((fs, ft)) = ends[fi] else { continue };
        if let Some(idt) = identity[ft] {
            if table.get(&(idt, fi)).is_some_and(|&c| c != fi) {
                report.push(Violation::LeftUnit {
                    f: names[fi].into(),
                });
            }
        }
        if let Some(ids) = identity[fs] {
            if table.get(&(fi, ids)).is_some_and(|&c| c != fi) {
                report.push(Violation::RightUnit {
                    f: names[fi].into(),
                });
            }
        }
    }
    for fi in 0..n {
        let Some((_, ft)) = ends[fi] else { continue };
        for &gi in &out_of[ft] {
            let Some(&gf) = table.get(&(gi, fi)) else {
                continue;
            };
            let Some((_, gt)) = ends[gi] else { continue };
            for &hi in &out_of[gt] {
                let Some(&hg) = table.get(&(hi, gi)) else {
                    continue;
                };
                let left = table.get(&(hi, gf));
                let right = table.get(&(hg, fi));
                if left.is_some() && right.is_some() && left != right {
                    report.push(Violation::NotAssociative {
                        h: names[hi].into(),
                        g: names[gi].into(),
                        f: names[fi].into(),
                    });
                }
            }
        }
    }
    report
}

/// A validated finite category.
#[derive(Clone, PartialEq, Eq)]
pub struct FinCat {
    obj_names: Vec<String>,
    mor_names: Vec<String>,
    ends: Vec<(ObjId, ObjId)>,
    identities: Vec<MorId>,
    /// Dense `g * n + f` table, `usize::MAX` where not composable.
    table: Vec<usize>,
    /// Derived hom index, `x * objects + y`.
    homs: Vec<Vec<MorId>>,
}

impl fmt::Debug for FinCat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "FinCat({} objects, {} morphisms)",
            self.num_objects(),
            self.num_morphisms()
        )
    }
}

const NONE: usize = usize::MAX;

/// Incremental construction of a [`FinCat`]; `build` validates.
#[derive(Clone, Debug, Default)]
pub struct FinCatBuilder {
    obj_names: Vec<String>,
    mor_names: Vec<String>,
    ends: Vec<(ObjId, ObjId)>,
    identities: Vec<Option<MorId>>,
    compose: HashMap<(MorId, MorId), MorId>,
}

impl FinCatBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds an object together with its identity morphism.
    pub fn object(&mut self, name: impl Into<String>) -> ObjId {
        let name = name.into();
        let id = self.obj_names.len();
        self.identities.push(None);
        self.obj_names.push(name.clone());
        let m = self.morphism(format!("id_{name}"), id, id);
        self.identities[id] = Some(m);
        self.compose.insert((m, m), m);
        id
    }

    pub fn morphism(&mut self, name: impl Into<String>, src: ObjId, tgt: ObjId) -> MorId {
        let id = self.mor_names.len();
        self.mor_names.push(name.into());
        self.ends.push((src, tgt));
        if let (Some(Some(is)), Some(Some(it))) =
            (self.identities.get(src), self.identities.get(tgt))
        {
            self.compose.insert((id, *is), id);
            self.compose.insert((*it, id), id);
        }
        id
    }

    pub fn identity(&self, x: ObjId) -> MorId {
        self.identities[x].expect("objects are created with identities")
    }

    /// Records `g ∘ f = gf`.
    pub fn compose(&mut self, g: MorId, f: MorId, gf: MorId) {
        self.compose.insert((g, f), gf);
    }

    pub fn ends(&self, f: MorId) -> (ObjId, ObjId) {
        self.ends[f]
    }

    pub fn num_morphisms(&self) -> usize {
        self.ends.len()
    }

    fn to_data(&self) -> CategoryData {
        CategoryData {
            objects: self.obj_names.clone(),
            morphisms: self
                .ends
                .iter()
                .enumerate()
                .map(|(i, &(s, t))| MorphismData {
                    id: self.mor_names[i].clone(),
                    src: self.obj_names[s].clone(),
                    tgt: self.obj_names[t].clone(),
                })
                .collect(),
            identities: self
                .identities
                .iter()
                .enumerate()
                .filter_map(|(o, m)| {
                    m.map(|m| (self.obj_names[o].clone(), self.mor_names[m].clone()))
                })
                .collect(),
            compose: self
                .compose
                .iter()
                .map(|(&(g, f), &gf)| {
                    [
                        self.mor_names[g].clone(),
                        self.mor_names[f].clone(),
                        self.mor_names[gf].clone(),
                    ]
                })
                .collect(),
        }
    }

    pub fn build(self) -> Result<FinCat> {
        FinCat::from_data(&self.to_data())
    }
}

impl FinCat {
    /// Validates and indexes serialized data.
    pub fn from_data(data: &CategoryData) -> Result<Self> {
        let report = check_category(data);
        if !report.is_empty() {
            let shown: Vec<String> = report.iter().take(5).map(|v| v.to_string()).collect();
            return Err(Error::Invalid(format!(
                "{} category axiom violation(s): {}",
                report.len(),
                shown.join("; ")
            )));
        }
        let obj: HashMap<&str, ObjId> = data
            .objects
            .iter()
            .enumerate()
            .map(|(i, o)| (o.as_str(), i))
            .collect();
        let mor: HashMap<&str, MorId> = data
            .morphisms
            .iter()
            .enumerate()
            .map(|(i, m)| (m.id.as_str(), i))
            .collect();
        let ends: Vec<(ObjId, ObjId)> = data
            .morphisms
            .iter()
            .map(|m| (obj[m.src.as_str()], obj[m.tgt.as_str()]))
            .collect();
        let identities = data
            .objects
            .iter()
            .map(|o| mor[data.identities[o].as_str()])
            .collect();
        let n = ends.len();
        let mut table = vec![NONE; n * n];
        for [g, f, gf] in &data.compose {
            table[mor[g.as_str()] * n + mor[f.as_str()]] = mor[gf.as_str()];
        }
        let k = data.objects.len();
        let mut homs = vec![Vec::new(); k * k];
        for (m, &(s, t)) in ends.iter().enumerate() {
            homs[s * k + t].push(m);
        }
        Ok(Self {
            obj_names: data.objects.clone(),
            mor_names: data.morphisms.iter().map(|m| m.id.clone()).collect(),
            ends,
            identities,
            table,
            homs,
        })
    }

    pub fn to_data(&self) -> CategoryData {
        let n = self.num_morphisms();
        let mut compose = Vec::new();
        for g in 0..n {
            for f in 0..n {
                if let Some(gf) = self.compose(g, f) {
                    compose.push([
                        self.mor_names[g].clone(),
                        self.mor_names[f].clone(),
                        self.mor_names[gf].clone(),
                    ]);
                }
            }
        }
        CategoryData {
            objects: self.obj_names.clone(),
            morphisms: (0..n)
                .map(|m| MorphismData {
                    id: self.mor_names[m].clone(),
                    src: self.obj_names[self.src(m)].clone(),
                    tgt: self.obj_names[self.tgt(m)].clone(),
                })
                .collect(),
            identities: (0..self.num_objects())
                .map(|o| {
                    (
                        self.obj_names[o].clone(),
                        self.mor_names[self.identity(o)].clone(),
                    )
                })
                .collect(),
            compose,
        }
    }

    pub fn num_objects(&self) -> usize {
        self.obj_names.len()
    }
    pub fn num_morphisms(&self) -> usize {
        self.ends.len()
    }
    pub fn objects(&self) -> std::ops::Range<ObjId> {
        0..self.num_objects()
    }
    pub fn morphisms(&self) -> std::ops::Range<MorId> {
        0..self.num_morphisms()
    }
    pub fn object_name(&self, x: ObjId) -> &str {
        &self.obj_names[x]
    }
    pub fn morphism_name(&self, f: MorId) -> &str {
        &self.mor_names[f]
    }
    pub fn object_by_name(&self, name: &str) -> Option<ObjId> {
        self.obj_names.iter().position(|o| o == name)
    }
    pub fn morphism_by_name(&self, name: &str) -> Option<MorId> {
        self.mor_names.iter().position(|m| m == name)
    }
    pub fn src(&self, f: MorId) -> ObjId {
        self.ends[f].0
    }
    pub fn tgt(&self, f: MorId) -> ObjId {
        self.ends[f].1
    }
    pub fn identity(&self, x: ObjId) -> MorId {
        self.identities[x]
    }
    pub fn is_identity(&self, f: MorId) -> bool {
        self.identities[self.src(f)] == f
    }

    /// `g ∘ f`, when `tgt(f) = src(g)`.
    pub fn compose(&self, g: MorId, f: MorId) -> Option<MorId> {
        match self.table[g * self.num_morphisms() + f] {
            NONE => None,
            gf => Some(gf),
        }
    }

    pub fn hom(&self, x: ObjId, y: ObjId) -> &[MorId] {
        &self.homs[x * self.num_objects() + y]
    }

    /// Two-sided inverse of `f`, if any.
    pub fn inverse(&self, f: MorId) -> Option<MorId> {
        let (s, t) = self.ends[f];
        self.hom(t, s).iter().copied().find(|&g| {
            self.compose(g, f) == Some(self.identity(s))
                && self.compose(f, g) == Some(self.identity(t))
        })
    }

    pub fn is_groupoid(&self) -> bool {
        self.morphisms().all(|f| self.inverse(f).is_some())
    }

    /// Representative of each object's isomorphism class (the lowest id in
    /// the class), computed by union-find over invertible morphisms.
    pub fn iso_class_representatives(&self) -> Vec<ObjId> {
        let mut uf = UnionFind::<usize>::new(self.num_objects());
        for f in self.morphisms() {
            let (s, t) = self.ends[f];
            if s != t && self.inverse(f).is_some() {
                uf.union(s, t);
            }
        }
        let mut lowest: HashMap<usize, ObjId> = HashMap::new();
        for x in self.objects() {
            lowest.entry(uf.find(x)).or_insert(x);
        }
        self.objects().map(|x| lowest[&uf.find(x)]).collect()
    }

    /// An isomorphism `x → y`, if one exists.
    pub fn find_iso(&self, x: ObjId, y: ObjId) -> Option<MorId> {
        self.hom(x, y)
            .iter()
            .copied()
            .find(|&f| self.inverse(f).is_some())
    }

    pub fn initial_objects(&self) -> Vec<ObjId> {
        self.objects()
            .filter(|&x| self.objects().all(|y| self.hom(x, y).len() == 1))
            .collect()
    }

    pub fn terminal_objects(&self) -> Vec<ObjId> {
        self.objects()
            .filter(|&y| self.objects().all(|x| self.hom(x, y).len() == 1))
            .collect()
    }

    /// The terminal category: one object, its identity.
    pub fn terminal() -> Self {
        let mut b = FinCatBuilder::new();
        b.object("*");
        b.build().expect("terminal category is valid")
    }

    /// The poset `0 < 1 < … < n` as a category.
    pub fn simplex(n: usize) -> Self {
        Self::poset((0..=n).map(|i| i.to_string()).collect(), |a, b| a <= b)
    }

    /// A finite poset from a reflexive, transitive, antisymmetric relation.
    pub fn poset(names: Vec<String>, leq: impl Fn(usize, usize) -> bool) -> Self {
        let k = names.len();
        let mut b = FinCatBuilder::new();
        for n in &names {
            b.object(n.clone());
        }
        let mut arrow = vec![vec![None; k]; k];
        for i in 0..k {
            arrow[i][i] = Some(b.identity(i));
            for j in 0..k {
                if i != j && leq(i, j) {
                    arrow[i][j] = Some(b.morphism(format!("{}<{}", names[i], names[j]), i, j));
                }
            }
        }
        for i in 0..k {
            for j in 0..k {
                for l in 0..k {
                    if let (Some(f), Some(g), Some(gf)) = (arrow[i][j], arrow[j][l], arrow[i][l]) {
                        b.compose(g, f, gf);
                    }
                }
            }
        }
        b.build().expect("poset relation yields a category")
    }

    /// The discrete category on the given object names.
    pub fn discrete(names: &[&str]) -> Self {
        let mut b = FinCatBuilder::new();
        for n in names {
            b.object(*n);
        }
        b.build().expect("discrete category is valid")
    }

    /// The one-object category of a finite monoid given by its
    /// multiplication table (`table[a][b] = a·b`, element 0 the unit).
    pub fn monoid(table: &[Vec<usize>]) -> Result<Self> {
        let mut b = FinCatBuilder::new();
        let x = b.object("*");
        let mut ids = vec![b.identity(x)];
        for e in 1..table.len() {
            ids.push(b.morphism(format!("m{e}"), x, x));
        }
        for (g, row) in table.iter().enumerate() {
            for (f, &gf) in row.iter().enumerate() {
                if gf >= ids.len() {
                    return Err(Error::Invalid(format!(
                        "monoid table entry {gf} out of range"
                    )));
                }
                b.compose(ids[g], ids[f], ids[gf]);
            }
        }
        b.build()
    }

    /// The groupoid with objects `0..k` and exactly one morphism between
    /// any two objects (contractible, "chaotic").
    pub fn contractible_groupoid(k: usize) -> Self {
        let mut b = FinCatBuilder::new();
        for i in 0..k {
            b.object(format!("o{i}"));
        }
        let mut arrow = vec![vec![0; k]; k];
        for i in 0..k {
            for j in 0..k {
                arrow[i][j] = if i == j {
                    b.identity(i)
                } else {
                    b.morphism(format!("o{i}->o{j}"), i, j)
                };
            }
        }
        for i in 0..k {
            for j in 0..k {
                for l in 0..k {
                    b.compose(arrow[j][l], arrow[i][j], arrow[i][l]);
                }
            }
        }
        b.build().expect("chaotic groupoid is valid")
    }

    /// The connected groupoid on `k` objects with every vertex group equal to
    /// the finite group given by its Cayley table (element 0 the unit).
    /// Morphisms `i → j` are labelled `(i, g, j)`; composition multiplies
    /// labels.
    pub fn connected_groupoid(k: usize, group: &[Vec<usize>]) -> Result<Self> {
        let order = group.len();
        let mut b = FinCatBuilder::new();
        for i in 0..k {
            b.object(format!("o{i}"));
        }
        let mut arrow = vec![vec![vec![0; order]; k]; k];
        for i in 0..k {
            for j in 0..k {
                for g in 0..order {
                    arrow[i][j][g] = if i == j && g == 0 {
                        b.identity(i)
                    } else {
                        b.morphism(format!("o{i}-{g}->o{j}"), i, j)
                    };
                }
            }
        }
        for i in 0..k {
            for j in 0..k {
                for l in 0..k {
                    for g in 0..order {
                        for h in 0..order {
                            let hg = *group.get(h).and_then(|r| r.get(g)).ok_or_else(|| {
                                Error::Invalid("group table is not square".into())
                            })?;
                            b.compose(arrow[j][l][h], arrow[i][j][g], arrow[i][l][hg]);
                        }
                    }
                }
            }
        }
        b.build()
    }

    /// Composable pairs `(g, f)` with `tgt(f) = src(g)`.
    pub fn composable_pairs(&self) -> impl Iterator<Item = (MorId, MorId)> + '_ {
        self.morphisms().flat_map(move |f| {
            self.objects()
                .flat_map(move |y| self.hom(self.tgt(f), y).iter().map(move |&g| (g, f)))
        })
    }
}

/// A functor between finite categories, validated on construction.
#[derive(Clone, PartialEq, Eq)]
pub struct FinFunctor {
    source: Arc<FinCat>,
    target: Arc<FinCat>,
    obj_map: Vec<ObjId>,
    mor_map: Vec<MorId>,
}

impl fmt::Debug for FinFunctor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "FinFunctor(obj {:?}, mor {:?})",
            self.obj_map, self.mor_map
        )
    }
}

/// Why a pair of maps fails to be a functor.
pub fn functor_violations(
    source: &FinCat,
    target: &FinCat,
    obj_map: &[ObjId],
    mor_map: &[MorId],
) -> Vec<String> {
    let mut out = Vec::new();
    if obj_map.len() != source.num_objects() || mor_map.len() != source.num_morphisms() {
        out.push("map lengths do not match the source category".to_string());
        return out;
    }
    if obj_map.iter().any(|&o| o >= target.num_objects())
        || mor_map.iter().any(|&m| m >= target.num_morphisms())
    {
        out.push("map refers to ids outside the target category".to_string());
        return out;
    }
    for f in source.morphisms() {
        let ff = mor_map[f];
        if target.src(ff) != obj_map[source.src(f)] || target.tgt(ff) != obj_map[source.tgt(f)] {
            out.push(format!(
                "{} is sent to a morphism with the wrong endpoints",
                source.morphism_name(f)
            ));
        }
    }
    for x in source.objects() {
        if mor_map[source.identity(x)] != target.identity(obj_map[x]) {
            out.push(format!(
                "identity of {} is not preserved",
                source.object_name(x)
            ));
        }
    }
    if out.is_empty() {
        for (g, f) in source.composable_pairs() {
            let gf = source.compose(g, f).expect("composable");
            if target.compose(mor_map[g], mor_map[f]) != Some(mor_map[gf]) {
                out.push(format!(
                    "composite {}∘{} is not preserved",
                    source.morphism_name(g),
                    source.morphism_name(f)
                ));
            }
        }
    }
    out
}

impl FinFunctor {
    pub fn new(
        source: Arc<FinCat>,
        target: Arc<FinCat>,
        obj_map: Vec<ObjId>,
        mor_map: Vec<MorId>,
    ) -> Result<Self> {
        let v = functor_violations(&source, &target, &obj_map, &mor_map);
        if !v.is_empty() {
            return Err(Error::Invalid(format!("not a functor: {}", v.join("; "))));
        }
        Ok(Self {
            source,
            target,
            obj_map,
            mor_map,
        })
    }

    pub fn identity(cat: Arc<FinCat>) -> Self {
        Self {
            obj_map: cat.objects().collect(),
            mor_map: cat.morphisms().collect(),
            source: cat.clone(),
            target: cat,
        }
    }

    /// The unique functor to the terminal category.
    pub fn to_terminal(source: Arc<FinCat>) -> Self {
        let t = Arc::new(FinCat::terminal());
        Self {
            obj_map: vec![0; source.num_objects()],
            mor_map: vec![0; source.num_morphisms()],
            source,
            target: t,
        }
    }

    pub fn source(&self) -> &Arc<FinCat> {
        &self.source
    }
    pub fn target(&self) -> &Arc<FinCat> {
        &self.target
    }
    pub fn obj(&self, x: ObjId) -> ObjId {
        self.obj_map[x]
    }
    pub fn mor(&self, f: MorId) -> MorId {
        self.mor_map[f]
    }
    pub fn obj_map(&self) -> &[ObjId] {
        &self.obj_map
    }
    pub fn mor_map(&self) -> &[MorId] {
        &self.mor_map
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &FinFunctor) -> Result<FinFunctor> {
        if *self.target != *other.source {
            return Err(Error::NotComposable(
                "functor target differs from next source".into(),
            ));
        }
        Ok(FinFunctor {
            source: self.source.clone(),
            target: other.target.clone(),
            obj_map: self.obj_map.iter().map(|&o| other.obj(o)).collect(),
            mor_map: self.mor_map.iter().map(|&m| other.mor(m)).collect(),
        })
    }
}

/// A natural transformation between parallel functors.
#[derive(Clone, Debug)]
pub struct NatTransf {
    source: FinFunctor,
    target: FinFunctor,
    components: Vec<MorId>,
}

impl NatTransf {
    pub fn new(source: FinFunctor, target: FinFunctor, components: Vec<MorId>) -> Result<Self> {
        if source.source != target.source || source.target != target.target {
            return Err(Error::Invalid("functors are not parallel".into()));
        }
        let c = &source.source;
        let d = &source.target;
        if components.len() != c.num_objects() {
            return Err(Error::Invalid("one component per object required".into()));
        }
        for x in c.objects() {
            let a = components[x];
            if a >= d.num_morphisms() || d.src(a) != source.obj(x) || d.tgt(a) != target.obj(x) {
                return Err(Error::Invalid(format!(
                    "component at {} has wrong endpoints",
                    c.object_name(x)
                )));
            }
        }
        for f in c.morphisms() {
            let (x, y) = (c.src(f), c.tgt(f));
            if d.compose(components[y], source.mor(f)) != d.compose(target.mor(f), components[x]) {
                return Err(Error::Invalid(format!(
                    "naturality fails at {}",
                    c.morphism_name(f)
                )));
            }
        }
        Ok(Self {
            source,
            target,
            components,
        })
    }

    pub fn component(&self, x: ObjId) -> MorId {
        self.components[x]
    }
    pub fn source(&self) -> &FinFunctor {
        &self.source
    }
    pub fn target(&self) -> &FinFunctor {
        &self.target
    }

    pub fn is_isomorphism(&self) -> bool {
        self.components
            .iter()
            .all(|&a| self.source.target.inverse(a).is_some())
    }
}

/// The category `i/I` of arrows out of `i`, with its forgetful functor to `I`.
///
/// Object `k` of the result is the `k`-th morphism of `hom(i, -)` in id
/// order; the identity of `i` is always among them and is initial.
pub fn comma_under(cat: &Arc<FinCat>, i: ObjId) -> Result<(Arc<FinCat>, FinFunctor)> {
    if i >= cat.num_objects() {
        return Err(Error::UnknownObject(i.to_string()));
    }
    let arrows: Vec<MorId> = cat.morphisms().filter(|&a| cat.src(a) == i).collect();
    let mut b = FinCatBuilder::new();
    for &a in &arrows {
        b.object(cat.morphism_name(a).to_string());
    }
    // (triangle morphism) -> (underlying morphism of I)
    let mut under: Vec<MorId> = Vec::new();
    let mut tri: HashMap<(usize, usize, MorId), MorId> = HashMap::new();
    for (ka, &a) in arrows.iter().enumerate() {
        tri.insert((ka, ka, cat.identity(cat.tgt(a))), b.identity(ka));
    }
    let mut mor_list: Vec<(usize, usize, MorId)> = Vec::new();
    for (ka, &a) in arrows.iter().enumerate() {
        for (kb, &bb) in arrows.iter().enumerate() {
            for &m in cat.hom(cat.tgt(a), cat.tgt(bb)) {
                if cat.compose(m, a) != Some(bb) {
                    continue;
                }
                let key = (ka, kb, m);
                if !tri.contains_key(&key) {
                    let id = b.morphism(
                        format!(
                            "{}:{}->{}",
                            cat.morphism_name(m),
                            cat.morphism_name(a),
                            cat.morphism_name(bb)
                        ),
                        ka,
                        kb,
                    );
                    tri.insert(key, id);
                }
                mor_list.push(key);
            }
        }
    }
    for &(ka, kb, m) in &mor_list {
        for &(kb2, kc, m2) in &mor_list {
            if kb2 != kb {
                continue;
            }
            let mm = cat.compose(m2, m).expect("composable in base");
            b.compose(tri[&(kb2, kc, m2)], tri[&(ka, kb, m)], tri[&(ka, kc, mm)]);
        }
    }
    under.resize(b.num_morphisms(), 0);
    for (&(_, _, m), &id) in &tri {
        under[id] = m;
    }
    let comma = Arc::new(b.build()?);
    let obj_map = arrows.iter().map(|&a| cat.tgt(a)).collect();
    let forget = FinFunctor::new(comma.clone(), cat.clone(), obj_map, under)?;
    Ok((comma, forget))
}

/// Data witnessing that a functor is an equivalence: for every target object
/// `b`, a source object `a` and an isomorphism `F(a) → b`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquivalenceWitness {
    pub preimages: Vec<(ObjId, MorId)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum NotEquivalence {
    NotFaithful {
        x: ObjId,
        y: ObjId,
        f1: MorId,
        f2: MorId,
    },
    NotFull {
        x: ObjId,
        y: ObjId,
        missing: MorId,
    },
    NotEssentiallySurjective {
        object: ObjId,
    },
}

/// Decides whether `functor` is fully faithful and essentially surjective.
pub fn is_equivalence(
    functor: &FinFunctor,
) -> std::result::Result<EquivalenceWitness, NotEquivalence> {
    let (c, d) = (functor.source(), functor.target());
    for x in c.objects() {
        for y in c.objects() {
            let mut seen: HashMap<MorId, MorId> = HashMap::new();
            for &f in c.hom(x, y) {
                if let Some(&prev) = seen.get(&functor.mor(f)) {
                    return Err(NotEquivalence::NotFaithful {
                        x,
                        y,
                        f1: prev,
                        f2: f,
                    });
                }
                seen.insert(functor.mor(f), f);
            }
            if let Some(&missing) = d
                .hom(functor.obj(x), functor.obj(y))
                .iter()
                .find(|g| !seen.contains_key(g))
            {
                return Err(NotEquivalence::NotFull { x, y, missing });
            }
        }
    }
    let mut preimages = Vec::with_capacity(d.num_objects());
    for b in d.objects() {
        // Prefer an on-the-nose preimage when one exists.
        let exact = c
            .objects()
            .find(|&a| functor.obj(a) == b)
            .map(|a| (a, d.identity(b)));
        let found = exact.or_else(|| {
            c.objects()
                .find_map(|a| d.find_iso(functor.obj(a), b).map(|iso| (a, iso)))
        });
        match found {
            Some(p) => preimages.push(p),
            None => return Err(NotEquivalence::NotEssentiallySurjective { object: b }),
        }
    }
    Ok(EquivalenceWitness { preimages })
}

/// Enumerates functors `source → target` by backtracking over objects and
/// then morphisms. `obj_allowed`/`mor_allowed` prune candidate images.
/// Stops with [`Error::CapExceeded`] after visiting `cap` search nodes.
pub fn enumerate_functors(
    source: &FinCat,
    target: &FinCat,
    obj_allowed: &dyn Fn(ObjId, ObjId) -> bool,
    mor_allowed: &dyn Fn(MorId, MorId) -> bool,
    cap: u128,
) -> Result<Vec<(Vec<ObjId>, Vec<MorId>)>> {
    let mut out = Vec::new();
    let mut nodes: u128 = 0;
    let mut obj_map = vec![0; source.num_objects()];
    enumerate_objects(
        source,
        target,
        obj_allowed,
        mor_allowed,
        cap,
        &mut nodes,
        0,
        &mut obj_map,
        &mut out,
    )?;
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn enumerate_objects(
    source: &FinCat,
    target: &FinCat,
    obj_allowed: &dyn Fn(ObjId, ObjId) -> bool,
    mor_allowed: &dyn Fn(MorId, MorId) -> bool,
    cap: u128,
    nodes: &mut u128,
    x: ObjId,
    obj_map: &mut Vec<ObjId>,
    out: &mut Vec<(Vec<ObjId>, Vec<MorId>)>,
) -> Result<()> {
    if x == source.num_objects() {
        let mut mor_map = vec![usize::MAX; source.num_morphisms()];
        return enumerate_morphisms(
            source,
            target,
            mor_allowed,
            cap,
            nodes,
            0,
            obj_map,
            &mut mor_map,
            out,
        );
    }
    for y in target.objects() {
        if !obj_allowed(x, y) {
            continue;
        }
        bump(nodes, cap)?;
        obj_map[x] = y;
        enumerate_objects(
            source,
            target,
            obj_allowed,
            mor_allowed,
            cap,
            nodes,
            x + 1,
            obj_map,
            out,
        )?;
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn enumerate_morphisms(
    source: &FinCat,
    target: &FinCat,
    mor_allowed: &dyn Fn(MorId, MorId) -> bool,
    cap: u128,
    nodes: &mut u128,
    f: MorId,
    obj_map: &[ObjId],
    mor_map: &mut Vec<MorId>,
    out: &mut Vec<(Vec<ObjId>, Vec<MorId>)>,
) -> Result<()> {
    if f == source.num_morphisms() {
        out.push((obj_map.to_vec(), mor_map.clone()));
        return Ok(());
    }
    let (s, t) = (source.src(f), source.tgt(f));
    let candidates: Vec<MorId> = if source.is_identity(f) {
        vec![target.identity(obj_map[s])]
    } else {
        target.hom(obj_map[s], obj_map[t]).to_vec()
    };
    for g in candidates {
        if !mor_allowed(f, g) {
            continue;
        }
        bump(nodes, cap)?;
        mor_map[f] = g;
        // Check every composite whose three morphisms are now assigned.
        let consistent = (0..=f).all(|a| {
            (0..=f).all(|b| match source.compose(a, b) {
                Some(ab) if ab <= f && (a == f || b == f || ab == f) => {
                    target.compose(mor_map[a], mor_map[b]) == Some(mor_map[ab])
                }
                _ => true,
            })
        });
        if consistent {
            enumerate_morphisms(
                source,
                target,
                mor_allowed,
                cap,
                nodes,
                f + 1,
                obj_map,
                mor_map,
                out,
            )?;
        }
    }
    mor_map[f] = usize::MAX;
    Ok(())
}

fn bump(nodes: &mut u128, cap: u128) -> Result<()> {
    *nodes += 1;
    if *nodes > cap {
        return Err(Error::CapExceeded {
            what: "functor enumeration".into(),
            needed: *nodes,
            cap,
        });
    }
    Ok(())
}

/// Every category with at most `max_objects` objects and `max_morphisms`
/// morphisms (identities included), one per isomorphism class, including
/// the empty category.
pub fn small_categories(max_objects: usize, max_morphisms: usize) -> Vec<FinCat> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for k in 0..=max_objects {
        for m in k..=max_morphisms {
            for ends in distribute(k, m - k) {
                let all_ends: Vec<(ObjId, ObjId)> =
                    (0..k).map(|x| (x, x)).chain(ends.iter().copied()).collect();
                for table in composition_tables(k, &all_ends) {
                    let key = canonical_form(k, &all_ends, &table);
                    if seen.insert(key) {
                        out.push(from_table(k, &all_ends, &table));
                    }
                }
            }
        }
    }
    out
}

/// Endpoints for `r` non-identity morphisms among `k` objects, with
/// slots filled in nondecreasing order.
fn distribute(k: usize, r: usize) -> Vec<Vec<(ObjId, ObjId)>> {
    let slots: Vec<(ObjId, ObjId)> = (0..k).flat_map(|s| (0..k).map(move |t| (s, t))).collect();
    if slots.is_empty() {
        return if r == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    slots.into_iter().combinations_with_replacement(r).collect()
}

/// All associative, unital composition tables on the given morphisms
/// (morphism `x < k` is the identity of object `x`).
fn composition_tables(k: usize, ends: &[(ObjId, ObjId)]) -> Vec<HashMap<(MorId, MorId), MorId>> {
    let n = ends.len();
    let mut fixed = HashMap::new();
    let mut open = Vec::new();
    for f in 0..n {
        for g in 0..n {
            if ends[f].1 != ends[g].0 {
                continue;
            }
            if g < k {
                fixed.insert((g, f), f);
            } else if f < k {
                fixed.insert((g, f), g);
            } else {
                let (s, t) = (ends[f].0, ends[g].1);
                let cands: Vec<MorId> = (0..n).filter(|&h| ends[h] == (s, t)).collect();
                open.push(((g, f), cands));
            }
        }
    }
    let mut out = Vec::new();
    for choice in open
        .iter()
        .map(|(_, c)| c.clone())
        .multi_cartesian_product()
    {
        let mut table = fixed.clone();
        for ((key, _), v) in open.iter().zip(choice) {
            table.insert(*key, v);
        }
        let associative = table.iter().all(|(&(g, f), &gf)| {
            (0..n)
                .filter(|&h| ends[h].0 == ends[g].1)
                .all(|h| table[&(h, gf)] == table[&(table[&(h, g)], f)])
        });
        if associative {
            out.push(table);
        }
    }
    if open.is_empty() && out.is_empty() {
        out.push(fixed);
    }
    out
}

fn canonical_form(
    k: usize,
    ends: &[(ObjId, ObjId)],
    table: &HashMap<(MorId, MorId), MorId>,
) -> (Vec<(ObjId, ObjId)>, Vec<(MorId, MorId, MorId)>) {
    let n = ends.len();
    let mut best = None;
    for objs in (0..k).permutations(k) {
        for rest in (k..n).permutations(n - k) {
            // Morphism x < k is the identity of x, so it follows its object.
            let mut relabel = vec![0; n];
            for x in 0..k {
                relabel[x] = objs[x];
            }
            for (i, &r) in rest.iter().enumerate() {
                relabel[k + i] = r;
            }
            let mut new_ends = vec![(0, 0); n];
            for f in 0..n {
                new_ends[relabel[f]] = (objs[ends[f].0], objs[ends[f].1]);
            }
            let mut entries: Vec<(MorId, MorId, MorId)> = table
                .iter()
                .map(|(&(g, f), &gf)| (relabel[g], relabel[f], relabel[gf]))
                .collect();
            entries.sort_unstable();
            let key = (new_ends, entries);
            if best.as_ref().is_none_or(|b| key < *b) {
                best = Some(key);
            }
        }
    }
    best.unwrap_or_default()
}

fn from_table(k: usize, ends: &[(ObjId, ObjId)], table: &HashMap<(MorId, MorId), MorId>) -> FinCat {
    let mut b = FinCatBuilder::new();
    for x in 0..k {
        b.object(((b'a' + x as u8) as char).to_string());
    }
    for (i, &(s, t)) in ends.iter().enumerate().skip(k) {
        b.morphism(format!("f{}", i - k + 1), s, t);
    }
    for (&(g, f), &gf) in table {
        b.compose(g, f, gf);
    }
    b.build().expect("enumerated tables are categories")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn terminal_is_valid() {
        assert!(check_category(&FinCat::terminal().to_data()).is_empty());
    }

    #[test]
    fn simplex_two_counts() {
        let d2 = FinCat::simplex(2);
        assert_eq!((d2.num_objects(), d2.num_morphisms()), (3, 6));
        assert!(check_category(&d2.to_data()).is_empty());
    }

    #[test]
    fn mismatched_composite_is_named() {
        let mut data = FinCat::simplex(1).to_data();
        // id_1 ∘ (0<1) claimed to be id_0.
        for entry in data.compose.iter_mut() {
            if entry[0] == "id_1" && entry[1] == "0<1" {
                entry[2] = "id_0".into();
            }
        }
        let report = check_category(&data);
        assert!(report.contains(&Violation::CompositeEndpoints {
            g: "id_1".into(),
            f: "0<1".into(),
            composite: "id_0".into()
        }));
    }

    #[test]
    fn unknown_ids_are_reported_not_fatal() {
        let mut data = FinCat::terminal().to_data();
        data.compose
            .push(["nope".into(), "id_*".into(), "id_*".into()]);
        data.morphisms.push(MorphismData {
            id: "m".into(),
            src: "*".into(),
            tgt: "ghost".into(),
        });
        let report = check_category(&data);
        assert!(report.iter().any(
            |v| matches!(v, Violation::UnknownMorphism { morphism, .. } if morphism == "nope")
        ));
        assert!(report
            .iter()
            .any(|v| matches!(v, Violation::UnknownObject { object, .. } if object == "ghost")));
    }

    #[test]
    fn comma_under_delta_one() {
        let d1 = Arc::new(FinCat::simplex(1));
        let (c0, f0) = comma_under(&d1, 0).unwrap();
        assert_eq!((c0.num_objects(), c0.num_morphisms()), (2, 3));
        let id0_obj = (0..c0.num_objects())
            .find(|&k| d1.is_identity(f0.mor(c0.identity(k))) && f0.obj(k) == 0);
        assert_eq!(c0.initial_objects(), vec![id0_obj.unwrap()]);
        let (c1, _) = comma_under(&d1, 1).unwrap();
        assert_eq!((c1.num_objects(), c1.num_morphisms()), (1, 1));
        assert!(comma_under(&d1, 7).is_err());
    }

    #[test]
    fn comma_under_delta_two_is_delta_two() {
        let d2 = Arc::new(FinCat::simplex(2));
        let (c, _) = comma_under(&d2, 0).unwrap();
        assert_eq!((c.num_objects(), c.num_morphisms()), (3, 6));
        assert_eq!(c.initial_objects().len(), 1);
    }

    #[test]
    fn equivalence_examples() {
        let d2 = Arc::new(FinCat::simplex(2));
        assert!(is_equivalence(&FinFunctor::identity(d2)).is_ok());
        let d1 = Arc::new(FinCat::simplex(1));
        assert!(matches!(
            is_equivalence(&FinFunctor::to_terminal(d1)),
            Err(NotEquivalence::NotFull { .. }) | Err(NotEquivalence::NotFaithful { .. })
        ));
        let g = Arc::new(FinCat::contractible_groupoid(2));
        let t = Arc::new(FinCat::terminal());
        let incl = FinFunctor::new(t, g, vec![0], vec![0]).unwrap();
        let w = is_equivalence(&incl).unwrap();
        assert_eq!(w.preimages.len(), 2);
    }

    #[test]
    fn functor_enumeration_counts() {
        // Functors Δ¹ → Δ¹ are the monotone maps {0,1} → {0,1}: three of them.
        let d1 = FinCat::simplex(1);
        let all = enumerate_functors(&d1, &d1, &|_, _| true, &|_, _| true, 1_000).unwrap();
        assert_eq!(all.len(), 3);
    }

    #[test]
    fn small_category_counts() {
        let cats = small_categories(2, 4);
        let by_objects = |k: usize| cats.iter().filter(|c| c.num_objects() == k).count();
        // Monoids of order 1..4 up to isomorphism: 1 + 2 + 7 + 35.
        assert_eq!(by_objects(0), 1);
        assert_eq!(by_objects(1), 45);
        assert_eq!(by_objects(2), 20);
    }
}
