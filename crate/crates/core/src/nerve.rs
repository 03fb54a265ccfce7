//! Truncated simplicial sets and the nerve of a finite category.

use std::collections::HashMap;

use serde::Serialize;

use crate::fincat::{FinCat, MorId, ObjId};

/// A simplicial set known up to dimension `max_dim`.
///
/// `faces[n][i][s]` is `d_i` of the `s`-th `n`-simplex (for `n ≥ 1`), and
/// `degeneracies[n][i][s]` is `s_i` of the `s`-th `n`-simplex (for
/// `n < max_dim`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TruncatedSSet {
    pub max_dim: usize,
    pub counts: Vec<usize>,
    pub faces: Vec<Vec<Vec<usize>>>,
    pub degeneracies: Vec<Vec<Vec<usize>>>,
}

/// A failed simplicial identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityFailure {
    pub identity: String,
    pub dim: usize,
    pub simplex: usize,
}

impl TruncatedSSet {
    /// Checks every simplicial identity with all simplices in range:
    ///
    /// * `d_i d_j = d_{j-1} d_i` for `i < j`
    /// * `s_i s_j = s_{j+1} s_i` for `i ≤ j`
    /// * `d_i s_j = s_{j-1} d_i` for `i < j`, `= id` for `i ∈ {j, j+1}`,
    ///   `= s_j d_{i-1}` for `i > j+1`.
    pub fn check_identities(&self) -> Vec<IdentityFailure> {
        let mut out = Vec::new();
        let d = |n: usize, i: usize, s: usize| self.faces[n][i][s];
        let sg = |n: usize, i: usize, s: usize| self.degeneracies[n][i][s];
        for n in 2..=self.max_dim {
            for s in 0..self.counts[n] {
                for j in 0..=n {
                    for i in 0..j {
                        if d(n - 1, i, d(n, j, s)) != d(n - 1, j - 1, d(n, i, s)) {
                            out.push(IdentityFailure {
                                identity: format!("d{i} d{j}"),
                                dim: n,
                                simplex: s,
                            });
                        }
                    }
                }
            }
        }
        for n in 0..self.max_dim.saturating_sub(1) {
            for s in 0..self.counts[n] {
                for j in 0..=n {
                    for i in 0..=j {
                        if sg(n + 1, i, sg(n, j, s)) != sg(n + 1, j + 1, sg(n, i, s)) {
                            out.push(IdentityFailure {
                                identity: format!("s{i} s{j}"),
                                dim: n,
                                simplex: s,
                            });
                        }
                    }
                }
            }
        }
        for n in 0..self.max_dim {
            for s in 0..self.counts[n] {
                for j in 0..=n {
                    let up = sg(n, j, s);
                    for i in 0..=n + 1 {
                        let lhs = d(n + 1, i, up);
                        let rhs = if i < j {
                            sg(n - 1, j - 1, d(n, i, s))
                        } else if i == j || i == j + 1 {
                            s
                        } else {
                            sg(n - 1, j, d(n, i - 1, s))
                        };
                        if lhs != rhs {
                            out.push(IdentityFailure {
                                identity: format!("d{i} s{j}"),
                                dim: n,
                                simplex: s,
                            });
                        }
                    }
                }
            }
        }
        out
    }
}

/// A simplex of the nerve: its vertex (dimension 0) or its chain of
/// composable morphisms `x0 → x1 → … → xn`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NerveSimplex {
    Vertex(ObjId),
    Chain(Vec<MorId>),
}

/// The nerve of `cat`, truncated at dimension `max_dim`, together with the
/// simplices themselves in index order.
pub fn nerve_truncated(cat: &FinCat, max_dim: usize) -> (TruncatedSSet, Vec<Vec<NerveSimplex>>) {
    let mut simplices: Vec<Vec<NerveSimplex>> =
        vec![cat.objects().map(NerveSimplex::Vertex).collect()];
    let mut chains: Vec<Vec<Vec<MorId>>> = vec![Vec::new()];
    for n in 1..=max_dim {
        let mut next = Vec::new();
        if n == 1 {
            next = cat.morphisms().map(|f| vec![f]).collect();
        } else {
            for c in &chains[n - 1] {
                let last = *c.last().expect("nonempty chain");
                for f in cat.morphisms().filter(|&f| cat.src(f) == cat.tgt(last)) {
                    let mut c2 = c.clone();
                    c2.push(f);
                    next.push(c2);
                }
            }
        }
        simplices.push(next.iter().cloned().map(NerveSimplex::Chain).collect());
        chains.push(next);
    }
    let index: Vec<HashMap<NerveSimplex, usize>> = simplices
        .iter()
        .map(|level| {
            level
                .iter()
                .enumerate()
                .map(|(i, s)| (s.clone(), i))
                .collect()
        })
        .collect();
    let vertices = |s: &NerveSimplex| -> Vec<ObjId> {
        match s {
            NerveSimplex::Vertex(x) => vec![*x],
            NerveSimplex::Chain(c) => {
                let mut v = vec![cat.src(c[0])];
                v.extend(c.iter().map(|&f| cat.tgt(f)));
                v
            }
        }
    };
    let to_simplex = |chain: Vec<MorId>, vertex: ObjId| -> NerveSimplex {
        if chain.is_empty() {
            NerveSimplex::Vertex(vertex)
        } else {
            NerveSimplex::Chain(chain)
        }
    };

    let mut faces = vec![Vec::new()];
    for n in 1..=max_dim {
        let mut per_i = Vec::new();
        for i in 0..=n {
            let mut col = Vec::with_capacity(simplices[n].len());
            for s in &simplices[n] {
                let NerveSimplex::Chain(c) = s else {
                    unreachable!()
                };
                let vs = vertices(s);
                let face = if i == 0 {
                    to_simplex(c[1..].to_vec(), vs[1])
                } else if i == n {
                    to_simplex(c[..n - 1].to_vec(), vs[n - 1])
                } else {
                    let mut c2 = c[..i - 1].to_vec();
                    c2.push(cat.compose(c[i], c[i - 1]).expect("chain is composable"));
                    c2.extend_from_slice(&c[i + 1..]);
                    NerveSimplex::Chain(c2)
                };
                col.push(index[n - 1][&face]);
            }
            per_i.push(col);
        }
        faces.push(per_i);
    }

    let mut degeneracies = Vec::new();
    for n in 0..max_dim {
        let mut per_i = Vec::new();
        for i in 0..=n {
            let mut col = Vec::with_capacity(simplices[n].len());
            for s in &simplices[n] {
                let vs = vertices(s);
                let mut c = match s {
                    NerveSimplex::Vertex(_) => Vec::new(),
                    NerveSimplex::Chain(c) => c.clone(),
                };
                c.insert(i, cat.identity(vs[i]));
                col.push(index[n + 1][&NerveSimplex::Chain(c)]);
            }
            per_i.push(col);
        }
        degeneracies.push(per_i);
    }

    let counts = simplices.iter().map(Vec::len).collect();
    (
        TruncatedSSet {
            max_dim,
            counts,
            faces,
            degeneracies,
        },
        simplices,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn point_nerve() {
        let (s, _) = nerve_truncated(&FinCat::terminal(), 3);
        assert_eq!(s.counts, vec![1, 1, 1, 1]);
        assert!(s.check_identities().is_empty());
    }

    #[test]
    fn delta_one_counts() {
        let (s, _) = nerve_truncated(&FinCat::simplex(1), 2);
        assert_eq!(s.counts, vec![2, 3, 4]);
        assert!(s.check_identities().is_empty());
    }

    #[test]
    fn corrupted_face_is_caught() {
        let (mut s, _) = nerve_truncated(&FinCat::simplex(2), 3);
        s.faces[2][1][0] = (s.faces[2][1][0] + 1) % s.counts[1];
        assert!(!s.check_identities().is_empty());
    }
}
