//! Strict symmetric monoidal structures on a finite category, given by
//! explicit tables.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fincat::{CategoryData, FinCat, MorId, ObjId};
use crate::gamma::FinCMonoid;

use super::{check_smc, SymmetricMonoidal};

/// Serialized form: a category plus complete `⊗` and symmetry tables.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SmcData {
    pub category: CategoryData,
    pub unit: String,
    /// Triples `[x, y, x⊗y]` for every ordered pair of objects.
    pub tensor_objects: Vec<[String; 3]>,
    /// Triples `[f, g, f⊗g]` for every ordered pair of morphisms.
    pub tensor_morphisms: Vec<[String; 3]>,
    /// Triples `[x, y, σ_{x,y}]` for every ordered pair of objects.
    pub symmetry: Vec<[String; 3]>,
}

#[derive(Clone, Debug)]
pub struct TableSmc {
    cat: Arc<FinCat>,
    unit: ObjId,
    tensor_obj: Vec<Vec<ObjId>>,
    tensor_mor: Vec<Vec<MorId>>,
    symmetry: Vec<Vec<MorId>>,
}

impl TableSmc {
    /// Builds from complete tables and verifies every axiom exhaustively.
    pub fn new(
        cat: Arc<FinCat>,
        unit: ObjId,
        tensor_obj: Vec<Vec<ObjId>>,
        tensor_mor: Vec<Vec<MorId>>,
        symmetry: Vec<Vec<MorId>>,
    ) -> Result<Self> {
        let (n, m) = (cat.num_objects(), cat.num_morphisms());
        let square = |t: &Vec<Vec<usize>>, k: usize, bound: usize| {
            t.len() == k
                && t.iter()
                    .all(|r| r.len() == k && r.iter().all(|&v| v < bound))
        };
        if unit >= n
            || !square(&tensor_obj, n, n)
            || !square(&tensor_mor, m, m)
            || !square(&symmetry, n, m)
        {
            return Err(Error::Invalid(
                "incomplete or out-of-range monoidal tables".into(),
            ));
        }
        let smc = Self {
            cat,
            unit,
            tensor_obj,
            tensor_mor,
            symmetry,
        };
        for f in smc.cat.morphisms() {
            for g in smc.cat.morphisms() {
                let fg = smc.tensor_mor[f][g];
                let (fs, ft) = (smc.cat.src(f), smc.cat.tgt(f));
                let (gs, gt) = (smc.cat.src(g), smc.cat.tgt(g));
                if smc.cat.src(fg) != smc.tensor_obj[fs][gs]
                    || smc.cat.tgt(fg) != smc.tensor_obj[ft][gt]
                {
                    return Err(Error::Invalid(format!(
                        "{}⊗{} has the wrong endpoints",
                        smc.cat.morphism_name(f),
                        smc.cat.morphism_name(g)
                    )));
                }
            }
        }
        for x in smc.cat.objects() {
            for y in smc.cat.objects() {
                let s = smc.symmetry[x][y];
                if smc.cat.src(s) != smc.tensor_obj[x][y] || smc.cat.tgt(s) != smc.tensor_obj[y][x]
                {
                    return Err(Error::Invalid(format!(
                        "σ({}, {}) has the wrong endpoints",
                        smc.cat.object_name(x),
                        smc.cat.object_name(y)
                    )));
                }
            }
        }
        let failures = check_smc(&smc, u128::MAX);
        if !failures.is_empty() {
            return Err(Error::Invalid(format!(
                "not a strict symmetric monoidal category: {}",
                failures[0]
            )));
        }
        Ok(smc)
    }

    /// The discrete symmetric monoidal category of a commutative monoid.
    pub fn discrete_monoid(e: &FinCMonoid) -> Self {
        let names: Vec<String> = (0..e.len()).map(|a| e.name(a).to_string()).collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        let cat = Arc::new(FinCat::discrete(&refs));
        let k = e.len();
        let tensor_obj: Vec<Vec<ObjId>> = (0..k)
            .map(|a| (0..k).map(|b| e.op(a, b)).collect())
            .collect();
        let tensor_mor = (0..k)
            .map(|f| {
                (0..k)
                    .map(|g| cat.identity(tensor_obj[cat.src(f)][cat.src(g)]))
                    .collect()
            })
            .collect();
        let symmetry = (0..k)
            .map(|a| (0..k).map(|b| cat.identity(tensor_obj[a][b])).collect())
            .collect();
        Self::new(cat, e.unit(), tensor_obj, tensor_mor, symmetry)
            .expect("commutative monoid gives an SMC")
    }

    pub fn from_data(data: &SmcData) -> Result<Self> {
        let cat = Arc::new(FinCat::from_data(&data.category)?);
        let obj = |s: &str| {
            cat.object_by_name(s)
                .ok_or_else(|| Error::UnknownObject(s.to_string()))
        };
        let mor = |s: &str| {
            cat.morphism_by_name(s)
                .ok_or_else(|| Error::UnknownMorphism(s.to_string()))
        };
        let (n, m) = (cat.num_objects(), cat.num_morphisms());
        let mut tensor_obj = vec![vec![usize::MAX; n]; n];
        for [x, y, xy] in &data.tensor_objects {
            tensor_obj[obj(x)?][obj(y)?] = obj(xy)?;
        }
        let mut tensor_mor = vec![vec![usize::MAX; m]; m];
        for [f, g, fg] in &data.tensor_morphisms {
            tensor_mor[mor(f)?][mor(g)?] = mor(fg)?;
        }
        let mut symmetry = vec![vec![usize::MAX; n]; n];
        for [x, y, s] in &data.symmetry {
            symmetry[obj(x)?][obj(y)?] = mor(s)?;
        }
        Self::new(
            cat.clone(),
            obj(&data.unit)?,
            tensor_obj,
            tensor_mor,
            symmetry,
        )
    }

    pub fn to_data(&self) -> SmcData {
        let c = &self.cat;
        let on = |x: ObjId| c.object_name(x).to_string();
        let mn = |f: MorId| c.morphism_name(f).to_string();
        SmcData {
            category: c.to_data(),
            unit: on(self.unit),
            tensor_objects: c
                .objects()
                .flat_map(|x| c.objects().map(move |y| (x, y)))
                .map(|(x, y)| [on(x), on(y), on(self.tensor_obj[x][y])])
                .collect(),
            tensor_morphisms: c
                .morphisms()
                .flat_map(|f| c.morphisms().map(move |g| (f, g)))
                .map(|(f, g)| [mn(f), mn(g), mn(self.tensor_mor[f][g])])
                .collect(),
            symmetry: c
                .objects()
                .flat_map(|x| c.objects().map(move |y| (x, y)))
                .map(|(x, y)| [on(x), on(y), mn(self.symmetry[x][y])])
                .collect(),
        }
    }

    pub fn category(&self) -> &Arc<FinCat> {
        &self.cat
    }
}

impl SymmetricMonoidal for TableSmc {
    type Obj = ObjId;
    type Mor = MorId;

    fn source(&self, f: &MorId) -> ObjId {
        self.cat.src(*f)
    }
    fn target(&self, f: &MorId) -> ObjId {
        self.cat.tgt(*f)
    }
    fn identity(&self, x: &ObjId) -> MorId {
        self.cat.identity(*x)
    }
    fn compose(&self, g: &MorId, f: &MorId) -> Result<MorId> {
        self.cat.compose(*g, *f).ok_or_else(|| {
            Error::NotComposable(format!(
                "{} after {}",
                self.cat.morphism_name(*g),
                self.cat.morphism_name(*f)
            ))
        })
    }
    fn unit(&self) -> ObjId {
        self.unit
    }
    fn tensor(&self, x: &ObjId, y: &ObjId) -> ObjId {
        self.tensor_obj[*x][*y]
    }
    fn tensor_mor(&self, f: &MorId, g: &MorId) -> MorId {
        self.tensor_mor[*f][*g]
    }
    fn symmetry(&self, x: &ObjId, y: &ObjId) -> MorId {
        self.symmetry[*x][*y]
    }
    fn objects(&self) -> Vec<ObjId> {
        self.cat.objects().collect()
    }
    fn hom_size(&self, x: &ObjId, y: &ObjId) -> Option<u128> {
        Some(self.cat.hom(*x, *y).len() as u128)
    }
    fn hom(&self, x: &ObjId, y: &ObjId) -> Result<Vec<MorId>> {
        Ok(self.cat.hom(*x, *y).to_vec())
    }
    fn inverse(&self, f: &MorId) -> Option<MorId> {
        self.cat.inverse(*f)
    }
}

/// Morphism lookups by name, for reading endomorphisms from input files.
pub fn morphism_by_name(smc: &TableSmc, name: &str) -> Result<MorId> {
    smc.cat
        .morphism_by_name(name)
        .ok_or_else(|| Error::UnknownMorphism(name.to_string()))
}

/// Object lookups by name.
pub fn object_by_name(smc: &TableSmc, name: &str) -> Result<ObjId> {
    smc.cat
        .object_by_name(name)
        .ok_or_else(|| Error::UnknownObject(name.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::smc::{find_dual, DualSearch, DEFAULT_DUAL_CAP};

    #[test]
    fn group_objects_are_rigid_monoid_elements_are_not() {
        let z3 = TableSmc::discrete_monoid(&FinCMonoid::cyclic(3));
        for x in 0..3 {
            let d = find_dual(&z3, &x, DEFAULT_DUAL_CAP);
            let d = d.datum().expect("group elements are invertible");
            assert_eq!(z3.tensor(&x, &d.dual), z3.unit());
        }
        let n2 = TableSmc::discrete_monoid(&FinCMonoid::truncated_naturals(2));
        assert!(matches!(
            find_dual(&n2, &1, DEFAULT_DUAL_CAP),
            DualSearch::NotRigid(_)
        ));
        assert!(find_dual(&n2, &0, DEFAULT_DUAL_CAP).datum().is_some());
    }

    #[test]
    fn data_roundtrip() {
        let z2 = TableSmc::discrete_monoid(&FinCMonoid::cyclic(2));
        let back = TableSmc::from_data(&z2.to_data()).unwrap();
        assert_eq!(back.to_data(), z2.to_data());
    }

    #[test]
    fn broken_symmetry_is_rejected() {
        let mut data = TableSmc::discrete_monoid(&FinCMonoid::cyclic(2)).to_data();
        data.tensor_objects
            .retain(|t| !(t[0] == "1" && t[1] == "1"));
        assert!(TableSmc::from_data(&data).is_err());
    }
}
