//! Oriented 1-dimensional bordisms over `BG` for a finite group `G`, up to
//! diffeomorphism: arcs carrying holonomies and circles carrying conjugacy
//! classes. They form a strict symmetric monoidal category in which `(+)`
//! and `(−)` are mutually dual, and a representation of `G` evaluates them
//! to matrices.
//!
//! Each arc is stored along its orientation, from its start to its end,
//! with the holonomy read in that direction. Starts are the `+` points of
//! the source and the `−` points of the target; ends are the `−` points of
//! the source and the `+` points of the target.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{parse_vector, Field, FieldSpec, Scalar};
use crate::gamma::ElemRef;
use crate::matrix::Matrix;
use crate::smc::SymmetricMonoidal;

/// A finite group by its multiplication table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinGroup {
    names: Vec<String>,
    table: Vec<Vec<usize>>,
    identity: usize,
    inverses: Vec<usize>,
    class_of: Vec<usize>,
    classes: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupData {
    pub elements: Vec<String>,
    pub op: Vec<Vec<ElemRef>>,
}

fn resolve(names: &[String], r: &ElemRef) -> Result<usize> {
    match r {
        ElemRef::Index(i) if *i < names.len() => Ok(*i),
        ElemRef::Index(i) => Err(Error::Invalid(format!("element index {i} out of range"))),
        ElemRef::Name(n) => names
            .iter()
            .position(|e| e == n)
            .ok_or_else(|| Error::Invalid(format!("unknown element {n:?}"))),
    }
}

impl FinGroup {
    pub fn new(names: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        let k = names.len();
        if k == 0
            || table.len() != k
            || table
                .iter()
                .any(|r| r.len() != k || r.iter().any(|&v| v >= k))
        {
            return Err(Error::Invalid("group table has the wrong shape".into()));
        }
        let op = |a: usize, b: usize| table[a][b];
        let identity = (0..k)
            .find(|&e| (0..k).all(|a| op(e, a) == a && op(a, e) == a))
            .ok_or_else(|| Error::Invalid("no identity element".into()))?;
        if let Some((a, b, c)) = (0..k)
            .cartesian_product(0..k)
            .cartesian_product(0..k)
            .map(|((a, b), c)| (a, b, c))
            .find(|&(a, b, c)| op(op(a, b), c) != op(a, op(b, c)))
        {
            return Err(Error::Invalid(format!(
                "associativity fails at ({}, {}, {})",
                names[a], names[b], names[c]
            )));
        }
        let inverses = (0..k)
            .map(|a| {
                (0..k)
                    .find(|&b| op(a, b) == identity && op(b, a) == identity)
                    .ok_or_else(|| Error::Invalid(format!("{} has no inverse", names[a])))
            })
            .collect::<Result<Vec<_>>>()?;
        let mut class_of = vec![usize::MAX; k];
        let mut classes = Vec::new();
        for a in 0..k {
            if class_of[a] != usize::MAX {
                continue;
            }
            let class: BTreeSet<usize> = (0..k).map(|g| op(op(g, a), inverses[g])).collect();
            for &c in &class {
                class_of[c] = classes.len();
            }
            classes.push(class.into_iter().collect());
        }
        Ok(Self {
            names,
            table,
            identity,
            inverses,
            class_of,
            classes,
        })
    }

    pub fn from_data(data: &GroupData) -> Result<Self> {
        let table = data
            .op
            .iter()
            .map(|row| {
                row.iter()
                    .map(|r| resolve(&data.elements, r))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(data.elements.clone(), table)
    }

    pub fn to_data(&self) -> GroupData {
        GroupData {
            elements: self.names.clone(),
            op: self
                .table
                .iter()
                .map(|r| r.iter().map(|&v| ElemRef::Index(v)).collect())
                .collect(),
        }
    }

    /// `ℤ/n`, elements named `0, …, n−1`.
    pub fn cyclic(n: usize) -> Self {
        let table = (0..n)
            .map(|a| (0..n).map(|b| (a + b) % n).collect())
            .collect();
        Self::new((0..n).map(|a| a.to_string()).collect(), table).expect("ℤ/n is a group")
    }

    /// The symmetric group on three letters, permutations in lexicographic
    /// order.
    pub fn s3() -> Self {
        let perms: Vec<Vec<usize>> = (0..3).permutations(3).collect();
        let names = perms.iter().map(|p| p.iter().join("")).collect();
        let table = perms
            .iter()
            .map(|p| {
                perms
                    .iter()
                    .map(|q| {
                        let pq: Vec<usize> = (0..3).map(|i| p[q[i]]).collect();
                        perms.iter().position(|r| *r == pq).expect("closed")
                    })
                    .collect()
            })
            .collect();
        Self::new(names, table).expect("S₃ is a group")
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }
    pub fn identity(&self) -> usize {
        self.identity
    }
    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }
    pub fn element(&self, r: &ElemRef) -> Result<usize> {
        resolve(&self.names, r)
    }
    /// `a·b`.
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }
    pub fn inverse(&self, a: usize) -> usize {
        self.inverses[a]
    }
    /// Conjugacy classes, ordered by their least element.
    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }
    pub fn class_of(&self, a: usize) -> usize {
        self.class_of[a]
    }
    pub fn class_name(&self, c: usize) -> String {
        format!("[{}]", self.names[self.classes[c][0]])
    }
}

/// A finite sequence of orientation signs, `true` for `+`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedWord(pub Vec<bool>);

impl SignedWord {
    pub fn parse(s: &str) -> Result<Self> {
        s.chars()
            .filter(|c| !c.is_whitespace() && *c != '∅')
            .map(|c| match c {
                '+' => Ok(true),
                '-' | '−' => Ok(false),
                other => Err(Error::Parse(format!("sign {other:?} in word {s:?}"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(SignedWord)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Self) -> Self {
        SignedWord(self.0.iter().chain(&other.0).copied().collect())
    }

    /// All words of length at most `max`, shorter first.
    pub fn all_up_to(max: usize) -> Vec<Self> {
        (0..=max)
            .flat_map(|n| {
                (0..1usize << n).map(move |bits| {
                    SignedWord((0..n).map(|i| bits >> (n - 1 - i) & 1 == 0).collect())
                })
            })
            .collect()
    }
}

impl fmt::Display for SignedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "∅");
        }
        for &s in &self.0 {
            write!(f, "{}", if s { '+' } else { '-' })?;
        }
        Ok(())
    }
}

/// A boundary point: position in the source or in the target word.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Endpoint {
    Source(usize),
    Target(usize),
}

impl Endpoint {
    fn parse(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("endpoint {s:?} (expected s<k> or t<k>)"));
        let (side, idx) = s.split_at(1.min(s.len()));
        let k: usize = idx.parse().map_err(|_| bad())?;
        match side {
            "s" => Ok(Endpoint::Source(k)),
            "t" => Ok(Endpoint::Target(k)),
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for Endpoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Endpoint::Source(k) => write!(f, "s{k}"),
            Endpoint::Target(k) => write!(f, "t{k}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Strand {
    pub start: Endpoint,
    pub end: Endpoint,
    pub label: usize,
}

/// A bordism up to diffeomorphism, in canonical form: strands sorted by
/// start point, circles sorted by class.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Bordism {
    source: SignedWord,
    target: SignedWord,
    strands: Vec<Strand>,
    circles: Vec<usize>,
}

fn starts_and_ends(source: &SignedWord, target: &SignedWord) -> (Vec<Endpoint>, Vec<Endpoint>) {
    let mut starts = Vec::new();
    let mut ends = Vec::new();
    for (k, &s) in source.0.iter().enumerate() {
        if s {
            starts.push(Endpoint::Source(k))
        } else {
            ends.push(Endpoint::Source(k))
        }
    }
    for (k, &s) in target.0.iter().enumerate() {
        if s {
            ends.push(Endpoint::Target(k))
        } else {
            starts.push(Endpoint::Target(k))
        }
    }
    (starts, ends)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrandData {
    pub from: String,
    pub to: String,
    pub label: ElemRef,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BordismData {
    pub source: String,
    pub target: String,
    #[serde(default)]
    pub arcs: Vec<StrandData>,
    /// Circle holonomies; any element of the class may be given.
    #[serde(default)]
    pub circles: Vec<ElemRef>,
}

impl Bordism {
    /// Validates that the strands pair every start with exactly one end.
    pub fn new(
        group: &FinGroup,
        source: SignedWord,
        target: SignedWord,
        mut strands: Vec<Strand>,
        mut circles: Vec<usize>,
    ) -> Result<Self> {
        let (starts, ends) = starts_and_ends(&source, &target);
        let got_starts: BTreeSet<Endpoint> = strands.iter().map(|s| s.start).collect();
        let got_ends: BTreeSet<Endpoint> = strands.iter().map(|s| s.end).collect();
        if got_starts.len() != strands.len()
            || got_ends.len() != strands.len()
            || got_starts != starts.into_iter().collect()
            || got_ends != ends.into_iter().collect()
        {
            return Err(Error::Invalid(format!(
                "strands do not match the orientations of {source} → {target} (starts are source + and target −)"
            )));
        }
        if strands.iter().any(|s| s.label >= group.order())
            || circles.iter().any(|&c| c >= group.classes().len())
        {
            return Err(Error::Invalid("label outside the group".into()));
        }
        strands.sort();
        circles.sort();
        Ok(Self {
            source,
            target,
            strands,
            circles,
        })
    }

    pub fn from_data(group: &FinGroup, data: &BordismData) -> Result<Self> {
        let strands = data
            .arcs
            .iter()
            .map(|a| {
                Ok(Strand {
                    start: Endpoint::parse(&a.from)?,
                    end: Endpoint::parse(&a.to)?,
                    label: group.element(&a.label)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let circles = data
            .circles
            .iter()
            .map(|c| group.element(c).map(|g| group.class_of(g)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(
            group,
            SignedWord::parse(&data.source)?,
            SignedWord::parse(&data.target)?,
            strands,
            circles,
        )
    }

    pub fn to_data(&self, group: &FinGroup) -> BordismData {
        BordismData {
            source: self.source.to_string(),
            target: self.target.to_string(),
            arcs: self
                .strands
                .iter()
                .map(|s| StrandData {
                    from: s.start.to_string(),
                    to: s.end.to_string(),
                    label: ElemRef::Name(group.name(s.label).to_string()),
                })
                .collect(),
            circles: self
                .circles
                .iter()
                .map(|&c| ElemRef::Name(group.name(group.classes()[c][0]).to_string()))
                .collect(),
        }
    }

    pub fn source(&self) -> &SignedWord {
        &self.source
    }
    pub fn target(&self) -> &SignedWord {
        &self.target
    }
    pub fn strands(&self) -> &[Strand] {
        &self.strands
    }
    pub fn circles(&self) -> &[usize] {
        &self.circles
    }

    /// The permutation bordism sending source position `k` to target
    /// position `perm[k]`, all holonomies trivial.
    pub fn permutation(group: &FinGroup, source: &SignedWord, perm: &[usize]) -> Self {
        let mut target = vec![true; source.len()];
        for (k, &p) in perm.iter().enumerate() {
            target[p] = source.0[k];
        }
        let strands = perm
            .iter()
            .enumerate()
            .map(|(k, &p)| {
                let (a, b) = (Endpoint::Source(k), Endpoint::Target(p));
                let (start, end) = if source.0[k] { (a, b) } else { (b, a) };
                Strand {
                    start,
                    end,
                    label: group.identity(),
                }
            })
            .collect();
        Self::new(
            group,
            source.clone(),
            SignedWord(target),
            strands,
            Vec::new(),
        )
        .expect("permutations are bordisms")
    }

    pub fn identity(group: &FinGroup, w: &SignedWord) -> Self {
        Self::permutation(group, w, &(0..w.len()).collect::<Vec<_>>())
    }

    /// The through-strand on `(+)` with holonomy `g`.
    pub fn holonomy(group: &FinGroup, g: usize) -> Self {
        let s = Strand {
            start: Endpoint::Source(0),
            end: Endpoint::Target(0),
            label: g,
        };
        Self::new(
            group,
            SignedWord(vec![true]),
            SignedWord(vec![true]),
            vec![s],
            Vec::new(),
        )
        .expect("valid strand")
    }

    /// Evaluation `(+−) → ∅`.
    pub fn cap(group: &FinGroup) -> Self {
        let s = Strand {
            start: Endpoint::Source(0),
            end: Endpoint::Source(1),
            label: group.identity(),
        };
        Self::new(
            group,
            SignedWord(vec![true, false]),
            SignedWord::default(),
            vec![s],
            Vec::new(),
        )
        .expect("valid cap")
    }

    /// Coevaluation `∅ → (−+)`.
    pub fn cup(group: &FinGroup) -> Self {
        let s = Strand {
            start: Endpoint::Target(0),
            end: Endpoint::Target(1),
            label: group.identity(),
        };
        Self::new(
            group,
            SignedWord::default(),
            SignedWord(vec![false, true]),
            vec![s],
            Vec::new(),
        )
        .expect("valid cup")
    }

    /// `other ∘ self`, gluing along the shared word. Holonomies multiply as
    /// `later · earlier`; closed loops become circles.
    pub fn then(&self, other: &Bordism, group: &FinGroup) -> Result<Bordism> {
        if self.target != other.source {
            return Err(Error::NotComposable(format!(
                "bordism into {} followed by bordism out of {}",
                self.target, other.source
            )));
        }
        // Strands indexed by start point; `false` is `self`, `true` is `other`.
        let by_start: BTreeMap<(bool, Endpoint), Strand> = self
            .strands
            .iter()
            .map(|s| ((false, s.start), *s))
            .chain(other.strands.iter().map(|s| ((true, s.start), *s)))
            .collect();
        // A strand ending on the middle word continues in the other bordism.
        let next = |side: bool, e: Endpoint| -> Option<(bool, Endpoint)> {
            match (side, e) {
                (false, Endpoint::Target(k)) => Some((true, Endpoint::Source(k))),
                (true, Endpoint::Source(k)) => Some((false, Endpoint::Target(k))),
                _ => None,
            }
        };
        let outer = |side: bool, e: Endpoint| -> Endpoint {
            match (side, e) {
                (false, Endpoint::Source(k)) => Endpoint::Source(k),
                (true, Endpoint::Target(k)) => Endpoint::Target(k),
                _ => unreachable!("middle points are never outer"),
            }
        };
        let mut used = BTreeSet::new();
        let mut strands = Vec::new();
        for (&(side, start), _) in by_start
            .iter()
            .filter(|(&(side, e), _)| next(side, e).is_none())
        {
            let (mut cur, mut label) = ((side, start), group.identity());
            loop {
                used.insert(cur);
                let s = by_start[&cur];
                label = group.mul(s.label, label);
                match next(cur.0, s.end) {
                    Some(n) => cur = n,
                    None => {
                        strands.push(Strand {
                            start: outer(side, start),
                            end: outer(cur.0, s.end),
                            label,
                        });
                        break;
                    }
                }
            }
        }
        let mut circles: Vec<usize> = self.circles.iter().chain(&other.circles).copied().collect();
        for &key in by_start.keys() {
            if used.contains(&key) {
                continue;
            }
            let (mut cur, mut label) = (key, group.identity());
            while used.insert(cur) {
                let s = by_start[&cur];
                label = group.mul(s.label, label);
                cur = next(cur.0, s.end).expect("unused strands lie on closed loops");
            }
            circles.push(group.class_of(label));
        }
        Bordism::new(
            group,
            self.source.clone(),
            other.target.clone(),
            strands,
            circles,
        )
    }

    /// Disjoint union, `self` first.
    pub fn tensor(&self, other: &Bordism, group: &FinGroup) -> Bordism {
        let (ns, nt) = (self.source.len(), self.target.len());
        let shift = |e: Endpoint| match e {
            Endpoint::Source(k) => Endpoint::Source(k + ns),
            Endpoint::Target(k) => Endpoint::Target(k + nt),
        };
        let strands = self
            .strands
            .iter()
            .copied()
            .chain(other.strands.iter().map(|s| Strand {
                start: shift(s.start),
                end: shift(s.end),
                label: s.label,
            }))
            .collect();
        let circles = self.circles.iter().chain(&other.circles).copied().collect();
        Bordism::new(
            group,
            self.source.concat(&other.source),
            self.target.concat(&other.target),
            strands,
            circles,
        )
        .expect("disjoint union of bordisms")
    }

    pub fn describe(&self, group: &FinGroup) -> String {
        let strands = self
            .strands
            .iter()
            .map(|s| format!("{}→{}:{}", s.start, s.end, group.name(s.label)))
            .join(", ");
        let circles = self.circles.iter().map(|&c| group.class_name(c)).join(" ");
        format!(
            "{} → {} {{{strands}}} {{{circles}}}",
            self.source, self.target
        )
    }
}

/// The bordism `∅ → ∅` consisting of one circle with holonomy `g`.
pub fn bord_trace(group: &FinGroup, g: usize) -> Bordism {
    Bordism::new(
        group,
        SignedWord::default(),
        SignedWord::default(),
        Vec::new(),
        vec![group.class_of(g)],
    )
    .expect("a single circle")
}

/// The bordism category on words of length at most `max_points`, with
/// hom-sets truncated to at most `max_circles` circles for enumeration.
#[derive(Clone, Debug)]
pub struct BordismCategory {
    group: FinGroup,
    max_points: usize,
    max_circles: usize,
}

impl BordismCategory {
    pub fn new(group: FinGroup, max_points: usize, max_circles: usize) -> Self {
        Self {
            group,
            max_points,
            max_circles,
        }
    }
    pub fn group(&self) -> &FinGroup {
        &self.group
    }

    fn circle_multisets(&self) -> Vec<Vec<usize>> {
        let k = self.group.classes().len();
        (0..=self.max_circles)
            .flat_map(|c| (0..k).combinations_with_replacement(c))
            .collect()
    }
}

impl SymmetricMonoidal for BordismCategory {
    type Obj = SignedWord;
    type Mor = Bordism;

    fn source(&self, f: &Bordism) -> SignedWord {
        f.source.clone()
    }
    fn target(&self, f: &Bordism) -> SignedWord {
        f.target.clone()
    }
    fn identity(&self, x: &SignedWord) -> Bordism {
        Bordism::identity(&self.group, x)
    }
    fn compose(&self, g: &Bordism, f: &Bordism) -> Result<Bordism> {
        f.then(g, &self.group)
    }
    fn unit(&self) -> SignedWord {
        SignedWord::default()
    }
    fn tensor(&self, x: &SignedWord, y: &SignedWord) -> SignedWord {
        x.concat(y)
    }
    fn tensor_mor(&self, f: &Bordism, g: &Bordism) -> Bordism {
        f.tensor(g, &self.group)
    }
    fn symmetry(&self, x: &SignedWord, y: &SignedWord) -> Bordism {
        let (n, m) = (x.len(), y.len());
        let perm: Vec<usize> = (0..n + m)
            .map(|k| if k < n { m + k } else { k - n })
            .collect();
        Bordism::permutation(&self.group, &x.concat(y), &perm)
    }
    fn objects(&self) -> Vec<SignedWord> {
        SignedWord::all_up_to(self.max_points)
    }
    fn hom_size(&self, x: &SignedWord, y: &SignedWord) -> Option<u128> {
        let (starts, ends) = starts_and_ends(x, y);
        if starts.len() != ends.len() {
            return Some(0);
        }
        let k = starts.len() as u32;
        let fact: u128 = (1..=k as u128).product();
        let labels = (self.group.order() as u128).checked_pow(k)?;
        fact.checked_mul(labels)?
            .checked_mul(self.circle_multisets().len() as u128)
    }
    fn hom(&self, x: &SignedWord, y: &SignedWord) -> Result<Vec<Bordism>> {
        let (starts, ends) = starts_and_ends(x, y);
        if starts.len() != ends.len() {
            return Ok(Vec::new());
        }
        let k = starts.len();
        let circles = self.circle_multisets();
        let labelings: Vec<Vec<usize>> = if k == 0 {
            vec![Vec::new()]
        } else {
            (0..k)
                .map(|_| 0..self.group.order())
                .multi_cartesian_product()
                .collect()
        };
        let mut out = Vec::new();
        for matching in ends.iter().permutations(k) {
            for labels in &labelings {
                let strands: Vec<Strand> = starts
                    .iter()
                    .zip(&matching)
                    .zip(labels)
                    .map(|((&start, &&end), &label)| Strand { start, end, label })
                    .collect();
                for cs in &circles {
                    out.push(Bordism::new(
                        &self.group,
                        x.clone(),
                        y.clone(),
                        strands.clone(),
                        cs.clone(),
                    )?);
                }
            }
        }
        Ok(out)
    }
    fn inverse(&self, f: &Bordism) -> Option<Bordism> {
        // Invertible bordisms are exactly the circle-free permutations.
        let is_perm = f.circles.is_empty()
            && f.strands.iter().all(|s| {
                matches!(
                    (s.start, s.end),
                    (Endpoint::Source(_), Endpoint::Target(_))
                        | (Endpoint::Target(_), Endpoint::Source(_))
                )
            });
        if !is_perm {
            return None;
        }
        let strands = f
            .strands
            .iter()
            .map(|s| {
                let flip = |e: Endpoint| match e {
                    Endpoint::Source(k) => Endpoint::Target(k),
                    Endpoint::Target(k) => Endpoint::Source(k),
                };
                Strand {
                    start: flip(s.start),
                    end: flip(s.end),
                    label: self.group.inverse(s.label),
                }
            })
            .collect();
        Bordism::new(
            &self.group,
            f.target.clone(),
            f.source.clone(),
            strands,
            Vec::new(),
        )
        .ok()
    }
}

/// A representation of a finite group by invertible matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation<F: Field> {
    field: F,
    dim: usize,
    images: Vec<Matrix<F>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepresentationData {
    pub field: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
    pub dim: usize,
    /// Images of a generating set, keyed by element name.
    pub images: BTreeMap<String, Vec<Vec<Scalar>>>,
}

impl RepresentationData {
    pub fn field_spec(&self) -> Result<FieldSpec> {
        FieldSpec::from_tag(&self.field, self.p)
    }
}

impl<F: Field> Representation<F> {
    /// Expands images of generators to the whole group and verifies
    /// `ρ(a)ρ(b) = ρ(ab)` on the full table.
    pub fn from_generators(
        group: &FinGroup,
        field: F,
        dim: usize,
        gens: &[(usize, Matrix<F>)],
    ) -> Result<Self> {
        if gens.iter().any(|(_, m)| m.rows() != dim || m.cols() != dim) {
            return Err(Error::Invalid(format!(
                "generator images must be {dim}×{dim}"
            )));
        }
        let mut images: Vec<Option<Matrix<F>>> = vec![None; group.order()];
        images[group.identity()] = Some(Matrix::identity(field, dim));
        let mut frontier = vec![group.identity()];
        while let Some(a) = frontier.pop() {
            for (g, m) in gens {
                let ag = group.mul(a, *g);
                if images[ag].is_none() {
                    images[ag] = Some(images[a].as_ref().expect("visited").mul(m).expect("square"));
                    frontier.push(ag);
                }
            }
        }
        let images: Vec<Matrix<F>> = images
            .into_iter()
            .enumerate()
            .map(|(a, m)| {
                m.ok_or_else(|| {
                    Error::Invalid(format!(
                        "images do not generate: {} unreached",
                        group.name(a)
                    ))
                })
            })
            .collect::<Result<_>>()?;
        let rep = Self { field, dim, images };
        for (g, m) in gens {
            if rep.images[*g] != *m {
                return Err(Error::Invalid(format!(
                    "not a representation: image of {} is inconsistent",
                    group.name(*g)
                )));
            }
        }
        for a in 0..group.order() {
            for b in 0..group.order() {
                if rep.images[a].mul(&rep.images[b]).expect("square") != rep.images[group.mul(a, b)]
                {
                    return Err(Error::Invalid(format!(
                        "not a representation: ρ({})ρ({}) ≠ ρ({}·{})",
                        group.name(a),
                        group.name(b),
                        group.name(a),
                        group.name(b)
                    )));
                }
            }
        }
        Ok(rep)
    }

    pub fn from_data(group: &FinGroup, field: F, data: &RepresentationData) -> Result<Self> {
        let gens = data
            .images
            .iter()
            .map(|(name, rows)| {
                let g = group.element(&ElemRef::Name(name.clone()))?;
                let rows = rows
                    .iter()
                    .map(|r| parse_vector(field, r))
                    .collect::<Result<Vec<_>>>()?;
                let m = Matrix::from_rows(field, data.dim, data.dim, rows).ok_or_else(|| {
                    Error::Invalid(format!("image of {name} is not {0}×{0}", data.dim))
                })?;
                Ok((g, m))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_generators(group, field, data.dim, &gens)
    }

    pub fn trivial(group: &FinGroup, field: F) -> Self {
        Self {
            field,
            dim: 1,
            images: vec![Matrix::identity(field, 1); group.order()],
        }
    }

    pub fn field(&self) -> F {
        self.field
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn image(&self, g: usize) -> &Matrix<F> {
        &self.images[g]
    }
    pub fn character(&self, g: usize) -> F::Elem {
        self.images[g].trace().expect("square")
    }
}

/// Coefficients of the cyclotomic polynomial `Φ_d`, constant term first.
fn cyclotomic(d: usize) -> Vec<i64> {
    let mut p = vec![0i64; d + 1];
    p[0] = -1;
    p[d] = 1;
    for e in (1..d).filter(|e| d.is_multiple_of(*e)) {
        let q = cyclotomic(e);
        // Exact division of a monic integer polynomial by a monic divisor.
        let mut rem = p.clone();
        let mut quot = vec![0i64; rem.len() - q.len() + 1];
        for k in (0..quot.len()).rev() {
            let c = rem[k + q.len() - 1];
            quot[k] = c;
            for (j, &qj) in q.iter().enumerate() {
                rem[k + j] -= c * qj;
            }
        }
        p = quot;
    }
    p
}

/// The irreducible rational representations of `ℤ/n` (one for each divisor
/// `d` of `n`: the companion matrix of `Φ_d` acting as the generator `1`).
pub fn cyclic_rational_irreps<F: Field>(
    group: &FinGroup,
    n: usize,
    field: F,
) -> Result<Vec<Representation<F>>> {
    let one = group
        .element(&ElemRef::Name("1".into()))
        .or_else(|_| group.element(&ElemRef::Index(1 % n)))?;
    (1..=n)
        .filter(|d| n.is_multiple_of(*d))
        .map(|d| {
            let phi = cyclotomic(d);
            let k = phi.len() - 1;
            let companion = Matrix::from_fn(field, k, k, |r, c| {
                if c + 1 == k {
                    field.from_i64(-phi[r])
                } else if r == c + 1 {
                    field.one()
                } else {
                    field.zero()
                }
            });
            Representation::from_generators(group, field, k, &[(one, companion)])
        })
        .collect()
}

/// `ρ(b) : V^{⊗source} → V^{⊗target}`, with `V` on `+` points and the dual
/// representation on `−` points. Multi-indices put the first tensor factor
/// most significant.
pub fn evaluate<F: Field>(rho: &Representation<F>, group: &FinGroup, b: &Bordism) -> Matrix<F> {
    let f = rho.field;
    let r = rho.dim;
    let (ns, nt) = (b.source.len(), b.target.len());
    let digits = |mut code: usize, len: usize| -> Vec<usize> {
        let mut d = vec![0; len];
        for slot in d.iter_mut().rev() {
            *slot = code % r.max(1);
            code /= r.max(1);
        }
        d
    };
    let circle_factor = b.circles.iter().fold(f.one(), |acc, &c| {
        f.mul(&acc, &rho.character(group.classes()[c][0]))
    });
    let rows = r.pow(nt as u32);
    let cols = r.pow(ns as u32);
    Matrix::from_fn(f, rows, cols, |row, col| {
        let (j, i) = (digits(row, nt), digits(col, ns));
        let index = |e: Endpoint| match e {
            Endpoint::Source(k) => i[k],
            Endpoint::Target(k) => j[k],
        };
        b.strands.iter().fold(circle_factor.clone(), |acc, s| {
            f.mul(&acc, rho.images[s.label].get(index(s.end), index(s.start)))
        })
    })
}

/// Pairs checked by [`functoriality_sweep`] and the ones that failed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub pairs: usize,
    pub failures: Vec<String>,
}

/// Checks `ρ(b₂∘b₁) = ρ(b₂)ρ(b₁)` for every composable pair and
/// `ρ(b⊗b') = ρ(b)⊗ρ(b')` for every pair of bordisms between words of length
/// at most `max_points` with at most `max_circles` circles each.
pub fn functoriality_sweep<F: Field>(
    rho: &Representation<F>,
    group: &FinGroup,
    max_points: usize,
    max_circles: usize,
) -> Result<SweepReport> {
    let cat = BordismCategory::new(group.clone(), max_points, max_circles);
    let words = SignedWord::all_up_to(max_points);
    let mut homs = BTreeMap::new();
    for x in &words {
        for y in &words {
            let fs = cat.hom(x, y)?;
            let images: Vec<Matrix<F>> = fs.iter().map(|f| evaluate(rho, group, f)).collect();
            homs.insert((x.clone(), y.clone()), (fs, images));
        }
    }
    let mut report = SweepReport::default();
    for ((x, y), (fs, fi)) in &homs {
        for z in &words {
            let (gs, gi) = &homs[&(y.clone(), z.clone())];
            for (g, gm) in gs.iter().zip(gi) {
                for (f, fm) in fs.iter().zip(fi) {
                    report.pairs += 1;
                    let lhs = evaluate(rho, group, &f.then(g, group)?);
                    if Some(lhs) != gm.mul(fm) {
                        report.failures.push(format!(
                            "composite of {} then {}",
                            f.describe(group),
                            g.describe(group)
                        ));
                    }
                }
            }
        }
        let _ = (x, y);
    }
    let all: Vec<(&Bordism, &Matrix<F>)> = homs
        .values()
        .flat_map(|(fs, fi)| fs.iter().zip(fi))
        .collect();
    let small: Vec<&(&Bordism, &Matrix<F>)> = all
        .iter()
        .filter(|(b, _)| b.source.len() + b.target.len() <= 2)
        .collect();
    for (b1, m1) in &small {
        for (b2, m2) in &small {
            report.pairs += 1;
            if evaluate(rho, group, &b1.tensor(b2, group)) != m1.kron(m2) {
                report.failures.push(format!(
                    "tensor of {} and {}",
                    b1.describe(group),
                    b2.describe(group)
                ));
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;
    use crate::smc::{check_smc, find_dual, trace, DEFAULT_DUAL_CAP};

    #[test]
    fn conjugacy_classes() {
        assert_eq!(FinGroup::cyclic(3).classes().len(), 3);
        let s3 = FinGroup::s3();
        assert_eq!(
            s3.classes().iter().map(Vec::len).collect::<Vec<_>>(),
            vec![1, 3, 2]
        );
    }

    #[test]
    fn zigzag_is_identity() {
        let g = FinGroup::cyclic(2);
        let plus = SignedWord(vec![true]);
        let id = Bordism::identity(&g, &plus);
        let lhs = id
            .tensor(&Bordism::cup(&g), &g)
            .then(&Bordism::cap(&g).tensor(&id, &g), &g)
            .unwrap();
        assert_eq!(lhs, id);
        assert_eq!(id.then(&id, &g).unwrap(), id);
    }

    #[test]
    fn closing_two_half_loops_gives_product_class() {
        let grp = FinGroup::s3();
        let (g, h) = (1, 3);
        let cat = BordismCategory::new(grp.clone(), 2, 0);
        let plus = SignedWord(vec![true]);
        let d = find_dual(&cat, &plus, DEFAULT_DUAL_CAP);
        let d = d.datum().unwrap();
        let f = Bordism::holonomy(&grp, g)
            .then(&Bordism::holonomy(&grp, h), &grp)
            .unwrap();
        let t = trace(&cat, d, &f).unwrap();
        assert_eq!(t.circles(), &[grp.class_of(grp.mul(h, g))]);
        assert_eq!(t, bord_trace(&grp, grp.mul(h, g)));
        let swapped = trace(&cat, d, &Bordism::holonomy(&grp, grp.mul(g, h))).unwrap();
        assert_eq!(swapped, t);
    }

    #[test]
    fn category_axioms_on_small_words() {
        let cat = BordismCategory::new(FinGroup::cyclic(2), 2, 0);
        assert!(check_smc(&cat, 8).is_empty());
        let minus = SignedWord(vec![false]);
        assert_eq!(
            find_dual(&cat, &minus, DEFAULT_DUAL_CAP)
                .datum()
                .unwrap()
                .dual,
            SignedWord(vec![true])
        );
    }

    #[test]
    fn characters_of_cyclic_groups() {
        let z3 = FinGroup::cyclic(3);
        let reps = cyclic_rational_irreps(&z3, 3, Rationals).unwrap();
        assert_eq!(
            reps.iter().map(Representation::dim).collect::<Vec<_>>(),
            vec![1, 2]
        );
        let t = evaluate(&reps[1], &z3, &bord_trace(&z3, 1));
        assert_eq!(*t.get(0, 0), Rationals.from_i64(-1));
        let z2 = FinGroup::cyclic(2);
        let sign = &cyclic_rational_irreps(&z2, 2, Rationals).unwrap()[1];
        assert_eq!(
            *evaluate(sign, &z2, &bord_trace(&z2, 1)).get(0, 0),
            Rationals.from_i64(-1)
        );
        assert_eq!(cyclotomic(6), vec![1, -1, 1]);
    }

    #[test]
    fn evaluation_is_a_monoidal_functor_on_small_bordisms() {
        let grp = FinGroup::cyclic(3);
        let rho = &cyclic_rational_irreps(&grp, 3, Rationals).unwrap()[1];
        let cat = BordismCategory::new(grp.clone(), 2, 1);
        let words = SignedWord::all_up_to(2);
        for x in &words {
            for y in &words {
                let fs = cat.hom(x, y).unwrap();
                for z in &words {
                    for g in cat.hom(y, z).unwrap().iter().take(7) {
                        for f in fs.iter().take(7) {
                            let gf = f.then(g, &grp).unwrap();
                            let lhs = evaluate(rho, &grp, &gf);
                            let rhs = evaluate(rho, &grp, g).mul(&evaluate(rho, &grp, f)).unwrap();
                            assert_eq!(lhs, rhs);
                            let t = evaluate(rho, &grp, &f.tensor(g, &grp));
                            assert_eq!(t, evaluate(rho, &grp, f).kron(&evaluate(rho, &grp, g)));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn json_roundtrip_and_validation() {
        let grp = FinGroup::cyclic(3);
        let b = Bordism::holonomy(&grp, 2).tensor(&bord_trace(&grp, 1), &grp);
        let data = b.to_data(&grp);
        let json = serde_json::to_string(&data).unwrap();
        assert_eq!(
            Bordism::from_data(&grp, &serde_json::from_str(&json).unwrap()).unwrap(),
            b
        );
        let bad = BordismData {
            source: "+".into(),
            target: "-".into(),
            arcs: vec![],
            circles: vec![],
        };
        assert!(Bordism::from_data(&grp, &bad).is_err());
        assert_eq!(FinGroup::from_data(&grp.to_data()).unwrap(), grp);
    }

    #[test]
    fn non_representation_rejected() {
        let z2 = FinGroup::cyclic(2);
        let m = Matrix::from_i64_rows(Rationals, &[&[2]]);
        assert!(Representation::from_generators(&z2, Rationals, 1, &[(1, m)]).is_err());
    }
}
