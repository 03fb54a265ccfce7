//! Segal's category Γ of pointed finite sets `[n] = {0, …, n}` (based at 0),
//! Γ-sets, the Γ-nerve of a finite commutative monoid, and the special
//! condition for Γ-sets and Γ-categories.

use std::collections::{HashMap, HashSet};
use std::fmt::Debug;
use std::hash::Hash;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default level bound: enough to reach `[4]`, which the pentagon needs.
pub const DEFAULT_LEVEL_BOUND: usize = 4;

/// A pointed map `[n] → [m]`, stored as its value table.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GammaMap {
    source: usize,
    target: usize,
    values: Vec<usize>,
}

impl GammaMap {
    /// `values[k]` is the image of `k`; `values[0]` must be 0.
    pub fn new(source: usize, target: usize, values: Vec<usize>) -> Result<Self> {
        if values.len() != source + 1 {
            return Err(Error::Invalid(format!(
                "a map out of [{source}] needs {} values",
                source + 1
            )));
        }
        if values[0] != 0 {
            return Err(Error::Invalid("pointed maps send 0 to 0".into()));
        }
        if values.iter().any(|&v| v > target) {
            return Err(Error::Invalid(format!("value outside [{target}]")));
        }
        Ok(Self {
            source,
            target,
            values,
        })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            source: n,
            target: n,
            values: (0..=n).collect(),
        }
    }

    pub fn source(&self) -> usize {
        self.source
    }
    pub fn target(&self) -> usize {
        self.target
    }
    pub fn values(&self) -> &[usize] {
        &self.values
    }
    pub fn apply(&self, k: usize) -> usize {
        self.values[k]
    }

    /// Indices of `[n] \ {0}` sent to `j`, in increasing order.
    pub fn fiber(&self, j: usize) -> impl Iterator<Item = usize> + '_ {
        (1..=self.source).filter(move |&i| self.values[i] == j)
    }

    pub fn is_bijective(&self) -> bool {
        self.source == self.target
            && self.values.iter().collect::<HashSet<_>>().len() == self.source + 1
    }
}

/// All pointed maps `[n] → [m]`: `(m+1)^n` of them, lexicographic in the
/// value table.
pub fn gamma_maps(n: usize, m: usize) -> Vec<GammaMap> {
    let total = (m + 1).pow(n as u32);
    let mut out = Vec::with_capacity(total);
    let mut digits = vec![0usize; n];
    for _ in 0..total {
        let mut values = vec![0];
        values.extend_from_slice(&digits);
        out.push(GammaMap {
            source: n,
            target: m,
            values,
        });
        for d in digits.iter_mut().rev() {
            *d += 1;
            if *d <= m {
                break;
            }
            *d = 0;
        }
    }
    out
}

/// `g ∘ f`.
pub fn compose(g: &GammaMap, f: &GammaMap) -> Result<GammaMap> {
    if f.target != g.source {
        return Err(Error::NotComposable(format!(
            "[{}]→[{}] after [{}]→[{}]",
            g.source, g.target, f.source, f.target
        )));
    }
    Ok(GammaMap {
        source: f.source,
        target: g.target,
        values: f.values.iter().map(|&k| g.values[k]).collect(),
    })
}

/// The Segal map `s_i : [n] → [1]`, `s_i(j) = δ_ij`.
pub fn segal_map(n: usize, i: usize) -> Result<GammaMap> {
    if i == 0 || i > n {
        return Err(Error::OutOfRange(format!("segal index {i} for [{n}]")));
    }
    Ok(GammaMap {
        source: n,
        target: 1,
        values: (0..=n).map(|j| usize::from(j == i)).collect(),
    })
}

/// The fold `p : [n] → [1]` sending every nonzero point to 1.
pub fn fold_map(n: usize) -> GammaMap {
    GammaMap {
        source: n,
        target: 1,
        values: (0..=n).map(|j| usize::from(j > 0)).collect(),
    }
}

/// Position of the pair `(i, j)` (both 1-based) in the `i`-major numbering
/// of `[n] ∧ [m] = [nm]`.
pub fn smash_index(m: usize, i: usize, j: usize) -> usize {
    (i - 1) * m + j
}

/// The smash product `[n] ∧ [m] = [nm]` together with its numbering: entry
/// `k - 1` of the returned list is the pair `(i, j)` numbered `k`.
pub fn smash(n: usize, m: usize) -> (usize, Vec<(usize, usize)>) {
    let pairs = (1..=n).flat_map(|i| (1..=m).map(move |j| (i, j))).collect();
    (n * m, pairs)
}

/// The symmetry automorphism of `[nm]`: carries the `i`-major index of
/// `(i, j)` to the `j`-major index of the same pair.
pub fn shuffle(n: usize, m: usize) -> GammaMap {
    let mut values = vec![0; n * m + 1];
    for i in 1..=n {
        for j in 1..=m {
            values[smash_index(m, i, j)] = (j - 1) * n + i;
        }
    }
    GammaMap {
        source: n * m,
        target: n * m,
        values,
    }
}

/// `f ∧ g : [n][n'] → [m][m']`, zero whenever either coordinate is.
pub fn smash_maps(f: &GammaMap, g: &GammaMap) -> GammaMap {
    let (n, np, mp) = (f.source, g.source, g.target);
    let mut values = vec![0; n * np + 1];
    for i in 1..=n {
        for j in 1..=np {
            let (a, b) = (f.values[i], g.values[j]);
            values[smash_index(np, i, j)] = if a == 0 || b == 0 {
                0
            } else {
                smash_index(mp, a, b)
            };
        }
    }
    GammaMap {
        source: n * np,
        target: f.target * mp,
        values,
    }
}

/// A finite commutative monoid given by its operation table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinCMonoid {
    names: Vec<String>,
    table: Vec<Vec<usize>>,
    unit: usize,
}

/// Element reference in monoid files: an index or an element name.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ElemRef {
    Index(usize),
    Name(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonoidData {
    pub elements: Vec<String>,
    pub op: Vec<Vec<ElemRef>>,
    pub unit: ElemRef,
}

impl FinCMonoid {
    pub fn new(names: Vec<String>, table: Vec<Vec<usize>>, unit: usize) -> Result<Self> {
        let m = Self { names, table, unit };
        let problems = m.violations();
        if problems.is_empty() {
            Ok(m)
        } else {
            Err(Error::Invalid(format!(
                "not a commutative monoid: {}",
                problems.join("; ")
            )))
        }
    }

    fn violations(&self) -> Vec<String> {
        let k = self.names.len();
        let mut out = Vec::new();
        if self.unit >= k
            || self.table.len() != k
            || self
                .table
                .iter()
                .any(|r| r.len() != k || r.iter().any(|&v| v >= k))
        {
            out.push("table shape or entries out of range".to_string());
            return out;
        }
        let op = |a: usize, b: usize| self.table[a][b];
        for a in 0..k {
            if op(self.unit, a) != a || op(a, self.unit) != a {
                out.push(format!("unit law fails at {}", self.names[a]));
            }
            for b in 0..k {
                if op(a, b) != op(b, a) {
                    out.push(format!(
                        "{}·{} ≠ {}·{}",
                        self.names[a], self.names[b], self.names[b], self.names[a]
                    ));
                }
                for c in 0..k {
                    if op(op(a, b), c) != op(a, op(b, c)) {
                        out.push(format!(
                            "associativity fails at ({}, {}, {})",
                            self.names[a], self.names[b], self.names[c]
                        ));
                    }
                }
            }
        }
        out
    }

    pub fn from_data(data: &MonoidData) -> Result<Self> {
        let resolve = |r: &ElemRef| -> Result<usize> {
            match r {
                ElemRef::Index(i) if *i < data.elements.len() => Ok(*i),
                ElemRef::Index(i) => Err(Error::Invalid(format!("element index {i} out of range"))),
                ElemRef::Name(n) => data
                    .elements
                    .iter()
                    .position(|e| e == n)
                    .ok_or_else(|| Error::Invalid(format!("unknown element {n:?}"))),
            }
        };
        let table = data
            .op
            .iter()
            .map(|row| row.iter().map(resolve).collect::<Result<Vec<_>>>())
            .collect::<Result<_>>()?;
        Self::new(data.elements.clone(), table, resolve(&data.unit)?)
    }

    pub fn to_data(&self) -> MonoidData {
        MonoidData {
            elements: self.names.clone(),
            op: self
                .table
                .iter()
                .map(|r| r.iter().map(|&v| ElemRef::Index(v)).collect())
                .collect(),
            unit: ElemRef::Index(self.unit),
        }
    }

    /// `ℤ/n` under addition.
    pub fn cyclic(n: usize) -> Self {
        let table = (0..n)
            .map(|a| (0..n).map(|b| (a + b) % n).collect())
            .collect();
        Self {
            names: (0..n).map(|a| a.to_string()).collect(),
            table,
            unit: 0,
        }
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    /// `{0, …, cap}` under addition truncated at `cap`.
    pub fn truncated_naturals(cap: usize) -> Self {
        let table = (0..=cap)
            .map(|a| (0..=cap).map(|b| (a + b).min(cap)).collect())
            .collect();
        Self {
            names: (0..=cap).map(|a| a.to_string()).collect(),
            table,
            unit: 0,
        }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }
    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }
    pub fn unit(&self) -> usize {
        self.unit
    }
    pub fn op(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }
    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }
}

/// A functor from Γ (restricted to `[0] … [bound]`) to finite sets. Level
/// `n` is `{0, …, sizes[n] - 1}`; every pointed map between levels has a
/// table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaSet {
    bound: usize,
    sizes: Vec<usize>,
    maps: HashMap<GammaMap, Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GammaSetDump {
    pub sizes: Vec<usize>,
    pub maps: Vec<(Vec<usize>, usize, Vec<usize>)>,
}

impl GammaSet {
    /// Builds a Γ-set from a level-size function and an action, filling the
    /// table of every map between levels `≤ bound`. Functoriality is not
    /// assumed; see [`GammaSet::functoriality_violations`].
    pub fn from_action(
        bound: usize,
        size: impl Fn(usize) -> usize,
        act: impl Fn(&GammaMap, usize) -> usize,
    ) -> Self {
        let sizes: Vec<usize> = (0..=bound).map(&size).collect();
        let mut maps = HashMap::new();
        for n in 0..=bound {
            for m in 0..=bound {
                for u in gamma_maps(n, m) {
                    let table = (0..sizes[n]).map(|x| act(&u, x)).collect();
                    maps.insert(u, table);
                }
            }
        }
        Self { bound, sizes, maps }
    }

    pub fn bound(&self) -> usize {
        self.bound
    }
    pub fn size(&self, n: usize) -> usize {
        self.sizes[n]
    }
    pub fn apply(&self, u: &GammaMap, x: usize) -> usize {
        self.maps[u][x]
    }

    /// Overwrites one entry of one table (used to build corrupted examples).
    pub fn set_entry(&mut self, u: &GammaMap, x: usize, value: usize) {
        if let Some(t) = self.maps.get_mut(u) {
            t[x] = value;
        }
    }

    /// Identity and composition failures, exhaustively over all composable
    /// pairs of maps up to the bound.
    pub fn functoriality_violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        for n in 0..=self.bound {
            let id = GammaMap::identity(n);
            if (0..self.sizes[n]).any(|x| self.apply(&id, x) != x) {
                out.push(format!("X(id_[{n}]) is not the identity"));
            }
        }
        for (u, tu) in &self.maps {
            if tu.iter().any(|&y| y >= self.sizes[u.target]) {
                out.push(format!("X({:?}) leaves its target level", u.values));
            }
        }
        if !out.is_empty() {
            return out;
        }
        for n in 0..=self.bound {
            for m in 0..=self.bound {
                for k in 0..=self.bound {
                    for f in gamma_maps(n, m) {
                        for g in gamma_maps(m, k) {
                            let gf = compose(&g, &f).expect("composable");
                            let (tf, tg, tgf) = (&self.maps[&f], &self.maps[&g], &self.maps[&gf]);
                            if (0..self.sizes[n]).any(|x| tg[tf[x]] != tgf[x]) {
                                out.push(format!("X({:?}∘{:?}) ≠ X(g)∘X(f)", g.values, f.values));
                            }
                        }
                    }
                }
            }
        }
        out
    }

    /// Rebuilds a Γ-set from a dump. Every map between levels up to the
    /// bound must have a table of the right length; functoriality is left to
    /// [`GammaSet::functoriality_violations`].
    pub fn from_dump(dump: &GammaSetDump) -> Result<Self> {
        let bound = dump
            .sizes
            .len()
            .checked_sub(1)
            .ok_or_else(|| Error::Invalid("a Γ-set needs at least level 0".into()))?;
        let mut maps = HashMap::new();
        for (values, target, table) in &dump.maps {
            let source = values
                .len()
                .checked_sub(1)
                .ok_or_else(|| Error::Invalid("empty map".into()))?;
            let u = GammaMap::new(source, *target, values.clone())?;
            if source > bound || *target > bound {
                return Err(Error::OutOfRange(format!(
                    "map {values:?} goes beyond level {bound}"
                )));
            }
            if table.len() != dump.sizes[source] {
                return Err(Error::Invalid(format!(
                    "table of {values:?} has {} entries, level {source} has {}",
                    table.len(),
                    dump.sizes[source]
                )));
            }
            maps.insert(u, table.clone());
        }
        for n in 0..=bound {
            for m in 0..=bound {
                if let Some(u) = gamma_maps(n, m).into_iter().find(|u| !maps.contains_key(u)) {
                    return Err(Error::Invalid(format!(
                        "no table for the map {:?} into [{m}]",
                        u.values
                    )));
                }
            }
        }
        Ok(Self {
            bound,
            sizes: dump.sizes.clone(),
            maps,
        })
    }

    pub fn dump(&self) -> GammaSetDump {
        let mut maps: Vec<_> = self
            .maps
            .iter()
            .map(|(u, t)| (u.values.clone(), u.target, t.clone()))
            .collect();
        maps.sort();
        GammaSetDump {
            sizes: self.sizes.clone(),
            maps,
        }
    }
}

fn decode(mut x: usize, base: usize, len: usize) -> Vec<usize> {
    let mut digits = vec![0; len];
    for d in digits.iter_mut().rev() {
        *d = x % base;
        x /= base;
    }
    digits
}

fn encode(digits: &[usize], base: usize) -> usize {
    digits.iter().fold(0, |acc, &d| acc * base + d)
}

/// The Γ-nerve of a commutative monoid: level `n` is `Eⁿ` (tuples encoded
/// in mixed radix, first coordinate most significant) and
/// `u_!(x)_j = Σ_{i ∈ u⁻¹(j)} x_i`, the empty sum being the unit.
pub fn nerve_monoid(e: &FinCMonoid, bound: usize) -> GammaSet {
    let k = e.len();
    GammaSet::from_action(
        bound,
        |n| k.pow(n as u32),
        |u, x| {
            let xs = decode(x, k, u.source);
            let ys: Vec<usize> = (1..=u.target)
                .map(|j| u.fiber(j).fold(e.unit, |acc, i| e.op(acc, xs[i - 1])))
                .collect();
            encode(&ys, k)
        },
    )
}

/// Encodes a tuple of monoid elements as an element of `nerve_monoid` level `xs.len()`.
pub fn encode_tuple(e: &FinCMonoid, xs: &[usize]) -> usize {
    encode(xs, e.len())
}

/// Decodes an element of level `n` of `nerve_monoid` into its tuple.
pub fn decode_tuple(e: &FinCMonoid, n: usize, x: usize) -> Vec<usize> {
    decode(x, e.len(), n)
}

/// A Γ-object in categories, known through a finite universe of objects per
/// level (used for all verification) and lazily computed homs.
pub trait GammaCategory {
    type Obj: Clone + Eq + Hash + Debug;
    type Mor: Clone + Eq + Hash + Debug;

    fn bound(&self) -> usize;
    /// The finite universe of level-`n` objects used for verification.
    fn objects(&self, n: usize) -> Vec<Self::Obj>;
    fn hom(&self, n: usize, a: &Self::Obj, b: &Self::Obj) -> Vec<Self::Mor>;
    fn identity(&self, n: usize, a: &Self::Obj) -> Self::Mor;
    fn compose(&self, n: usize, g: &Self::Mor, f: &Self::Mor) -> Self::Mor;
    fn push_obj(&self, u: &GammaMap, a: &Self::Obj) -> Self::Obj;
    fn push_mor(&self, u: &GammaMap, f: &Self::Mor) -> Self::Mor;

    /// Source and target of a level-`n` morphism.
    fn ends(&self, n: usize, f: &Self::Mor) -> (Self::Obj, Self::Obj);

    /// An object of level `n` whose Segal images are exactly `tuple`, if
    /// one is known. The default searches the level-`n` universe.
    fn segal_section(&self, n: usize, tuple: &[Self::Obj]) -> Option<Self::Obj> {
        let segal: Vec<GammaMap> = (1..=n)
            .map(|i| segal_map(n, i).expect("in range"))
            .collect();
        self.objects(n).into_iter().find(|a| {
            segal
                .iter()
                .zip(tuple)
                .all(|(s, t)| self.push_obj(s, a) == *t)
        })
    }

    /// The morphism `a → b` at level `n` whose Segal images are `images`.
    /// The default searches `Hom(a, b)`.
    fn lift(
        &self,
        n: usize,
        a: &Self::Obj,
        b: &Self::Obj,
        images: &[Self::Mor],
    ) -> Option<Self::Mor> {
        let segal: Vec<GammaMap> = (1..=n)
            .map(|i| segal_map(n, i).expect("in range"))
            .collect();
        self.hom(n, a, b).into_iter().find(|f| {
            segal
                .iter()
                .zip(images)
                .all(|(s, g)| self.push_mor(s, f) == *g)
        })
    }

    /// An inverse of `f : a → b` at level `n`, if `f` is invertible.
    fn inverse(&self, n: usize, a: &Self::Obj, b: &Self::Obj, f: &Self::Mor) -> Option<Self::Mor> {
        let (ida, idb) = (self.identity(n, a), self.identity(n, b));
        self.hom(n, b, a)
            .into_iter()
            .find(|g| self.compose(n, g, f) == ida && self.compose(n, f, g) == idb)
    }
}

/// A Γ-set viewed as a levelwise discrete Γ-category.
#[derive(Clone, Copy, Debug)]
pub struct Discrete<'a>(pub &'a GammaSet);

impl GammaCategory for Discrete<'_> {
    type Obj = usize;
    type Mor = usize;

    fn bound(&self) -> usize {
        self.0.bound
    }
    fn objects(&self, n: usize) -> Vec<usize> {
        (0..self.0.size(n)).collect()
    }
    fn hom(&self, _n: usize, a: &usize, b: &usize) -> Vec<usize> {
        if a == b {
            vec![*a]
        } else {
            Vec::new()
        }
    }
    fn identity(&self, _n: usize, a: &usize) -> usize {
        *a
    }
    fn compose(&self, _n: usize, g: &usize, _f: &usize) -> usize {
        *g
    }
    fn push_obj(&self, u: &GammaMap, a: &usize) -> usize {
        self.0.apply(u, *a)
    }
    fn push_mor(&self, u: &GammaMap, f: &usize) -> usize {
        self.0.apply(u, *f)
    }
    fn ends(&self, _n: usize, f: &usize) -> (usize, usize) {
        (*f, *f)
    }
}

/// Verdict of the special condition at one level.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LevelVerdict {
    pub level: usize,
    pub ok: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpecialReport {
    pub levels: Vec<LevelVerdict>,
}

impl SpecialReport {
    pub fn is_special(&self) -> bool {
        self.levels.iter().all(|l| l.ok)
    }
    pub fn first_failure(&self) -> Option<usize> {
        self.levels.iter().find(|l| !l.ok).map(|l| l.level)
    }
}

/// Checks the special condition level by level: `X([0])` is terminal and,
/// for `1 ≤ n ≤ bound`, `(s_1, …, s_n) : X([n]) → X([1])ⁿ` is an
/// equivalence (a bijection, for discrete levels) on the verification
/// universe.
pub fn is_special<G: GammaCategory>(x: &G, bound: usize) -> SpecialReport {
    let bound = bound.min(x.bound());
    let mut levels = Vec::new();
    let zero = x.objects(0);
    let level0 = match zero.as_slice() {
        [a] if x.hom(0, a, a).len() == 1 => LevelVerdict {
            level: 0,
            ok: true,
            detail: "terminal".into(),
        },
        [a] => LevelVerdict {
            level: 0,
            ok: false,
            detail: format!("{} endomorphisms", x.hom(0, a, a).len()),
        },
        other => LevelVerdict {
            level: 0,
            ok: false,
            detail: format!("{} objects", other.len()),
        },
    };
    levels.push(level0);
    let ones = x.objects(1);
    for n in 1..=bound {
        levels.push(segal_equivalence(x, n, &ones));
    }
    SpecialReport { levels }
}

fn segal_equivalence<G: GammaCategory>(x: &G, n: usize, ones: &[G::Obj]) -> LevelVerdict {
    let segal: Vec<GammaMap> = (1..=n)
        .map(|i| segal_map(n, i).expect("in range"))
        .collect();
    let objs = x.objects(n);
    let image = |a: &G::Obj| -> Vec<G::Obj> { segal.iter().map(|s| x.push_obj(s, a)).collect() };
    let fail = |detail: String| LevelVerdict {
        level: n,
        ok: false,
        detail,
    };
    for a in &objs {
        let ia = image(a);
        for b in &objs {
            let ib = image(b);
            let homs = x.hom(n, a, b);
            let mut seen = HashSet::new();
            for f in &homs {
                let t: Vec<G::Mor> = segal.iter().map(|s| x.push_mor(s, f)).collect();
                if !seen.insert(t) {
                    return fail(format!(
                        "Segal functor not faithful between {a:?} and {b:?}"
                    ));
                }
            }
            let expected: usize = (0..n).map(|i| x.hom(1, &ia[i], &ib[i]).len()).product();
            if homs.len() != expected {
                return fail(format!(
                    "Segal functor not full between {a:?} and {b:?} ({} vs {expected})",
                    homs.len()
                ));
            }
        }
    }
    // Essential surjectivity onto the universe of n-tuples.
    let images: Vec<Vec<G::Obj>> = objs.iter().map(image).collect();
    let exact: HashSet<&Vec<G::Obj>> = images.iter().collect();
    let mut tuple = vec![0usize; n];
    let total = ones.len().checked_pow(n as u32).unwrap_or(usize::MAX);
    for _ in 0..total {
        let want: Vec<G::Obj> = tuple.iter().map(|&k| ones[k].clone()).collect();
        let hit = exact.contains(&want)
            || images.iter().any(|img| {
                img.iter().zip(&want).all(|(p, q)| {
                    p == q
                        || x.hom(1, p, q)
                            .iter()
                            .any(|f| x.inverse(1, p, q, f).is_some())
                })
            });
        if !hit {
            return fail(format!("Segal functor misses {want:?} up to isomorphism"));
        }
        for d in tuple.iter_mut().rev() {
            *d += 1;
            if *d < ones.len() {
                break;
            }
            *d = 0;
        }
    }
    if objs.is_empty() && !ones.is_empty() {
        return fail("empty level".into());
    }
    LevelVerdict {
        level: n,
        ok: true,
        detail: format!("{} objects checked", objs.len()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn map_counts() {
        assert_eq!(gamma_maps(1, 1).len(), 2);
        assert_eq!(gamma_maps(2, 1).len(), 4);
        assert_eq!(gamma_maps(3, 2).len(), 27);
        assert_eq!(gamma_maps(0, 5).len(), 1);
    }

    #[test]
    fn segal_maps() {
        assert_eq!(segal_map(1, 1).unwrap(), GammaMap::identity(1));
        assert_eq!(segal_map(3, 2).unwrap().values(), &[0, 0, 1, 0]);
        assert!(segal_map(2, 0).is_err());
        assert!(segal_map(2, 3).is_err());
    }

    #[test]
    fn segal_after_coordinate_inclusion() {
        let s1 = segal_map(2, 1).unwrap();
        let incl = GammaMap::new(1, 2, vec![0, 1]).unwrap();
        assert_eq!(compose(&s1, &incl).unwrap(), GammaMap::identity(1));
        assert!(compose(&incl, &incl).is_err());
    }

    #[test]
    fn z2_fold() {
        let e = FinCMonoid::cyclic(2);
        let x = nerve_monoid(&e, 2);
        let p = fold_map(2);
        assert_eq!(
            decode_tuple(&e, 1, x.apply(&p, encode_tuple(&e, &[1, 1]))),
            vec![0]
        );
    }

    #[test]
    fn z3_second_segal() {
        let e = FinCMonoid::cyclic(3);
        let x = nerve_monoid(&e, 2);
        let s2 = segal_map(2, 2).unwrap();
        for a in 0..3 {
            for b in 0..3 {
                assert_eq!(
                    decode_tuple(&e, 1, x.apply(&s2, encode_tuple(&e, &[a, b]))),
                    vec![b]
                );
            }
        }
    }

    #[test]
    fn trivial_monoid_levels() {
        let x = nerve_monoid(&FinCMonoid::trivial(), 4);
        assert!((0..=4).all(|n| x.size(n) == 1));
    }

    #[test]
    fn padded_nerve_fails_at_zero() {
        let e = FinCMonoid::cyclic(2);
        let k = e.len();
        let base = nerve_monoid(&e, 3);
        let padded = GammaSet::from_action(
            3,
            |n| k.pow(n as u32 + 1),
            |u, x| {
                let (extra, rest) = (x / k.pow(u.source() as u32), x % k.pow(u.source() as u32));
                extra * k.pow(u.target() as u32) + base.apply(u, rest)
            },
        );
        assert!(padded.functoriality_violations().is_empty());
        assert_eq!(is_special(&Discrete(&padded), 3).first_failure(), Some(0));
    }

    #[test]
    fn dump_roundtrip() {
        let x = nerve_monoid(&FinCMonoid::cyclic(2), 2);
        let json = serde_json::to_string(&x.dump()).unwrap();
        let back = GammaSet::from_dump(&serde_json::from_str(&json).unwrap()).unwrap();
        assert_eq!(back.dump(), x.dump());
        let mut short = x.dump();
        short.maps.pop();
        assert!(GammaSet::from_dump(&short).is_err());
    }

    #[test]
    fn shuffles() {
        let (n, pairs) = smash(2, 2);
        assert_eq!(n, 4);
        assert_eq!(pairs, vec![(1, 1), (1, 2), (2, 1), (2, 2)]);
        assert_eq!(shuffle(2, 2).values(), &[0, 1, 3, 2, 4]);
        assert_eq!(shuffle(1, 5), GammaMap::identity(5));
        assert_eq!(
            compose(&shuffle(2, 3), &shuffle(3, 2)).unwrap(),
            GammaMap::identity(6)
        );
    }

    #[test]
    fn monoid_validation() {
        assert!(FinCMonoid::new(
            vec!["a".into(), "b".into()],
            vec![vec![0, 1], vec![0, 1]],
            0
        )
        .is_err());
        let data = FinCMonoid::truncated_naturals(2).to_data();
        assert_eq!(
            FinCMonoid::from_data(&data).unwrap(),
            FinCMonoid::truncated_naturals(2)
        );
    }
}
