//! Matchings in trees, almost perfect matchings that miss a chosen
//! longest-path end vertex, and contraction of a matching to the contree.

use std::collections::{BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tree::Tree;

/// Vertex-disjoint edges, each stored as `(min, max)` and kept sorted.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "MatchingJson", into = "MatchingJson")]
pub struct Matching {
    pairs: Vec<(usize, usize)>,
}

/// Wire form: `{"pairs": [[a, b], ...]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MatchingJson {
    pub pairs: Vec<[usize; 2]>,
}

impl From<MatchingJson> for Matching {
    fn from(j: MatchingJson) -> Self {
        Matching::new(j.pairs.into_iter().map(|[a, b]| (a, b)).collect())
    }
}

impl From<Matching> for MatchingJson {
    fn from(m: Matching) -> Self {
        MatchingJson {
            pairs: m.pairs.into_iter().map(|(a, b)| [a, b]).collect(),
        }
    }
}

impl Matching {
    pub fn new(pairs: Vec<(usize, usize)>) -> Self {
        let mut pairs: Vec<_> = pairs.into_iter().map(|(a, b)| (a.min(b), a.max(b))).collect();
        pairs.sort_unstable();
        Matching { pairs }
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn contains(&self, a: usize, b: usize) -> bool {
        self.pairs.binary_search(&(a.min(b), a.max(b))).is_ok()
    }

    /// Checks every pair is an edge of `t` and no vertex is used twice.
    pub fn validate(&self, t: &Tree) -> Result<()> {
        let mut used = HashSet::new();
        for &(a, b) in &self.pairs {
            if !t.has_edge(a, b) {
                return Err(Error::NotAnEdge(format!("{a}-{b}")));
            }
            for x in [a, b] {
                if !used.insert(x) {
                    return Err(Error::MatchingOverlap(x));
                }
            }
        }
        Ok(())
    }

    pub fn is_perfect(&self, n: usize) -> bool {
        2 * self.pairs.len() == n
    }

    /// `partner[v]` is the vertex matched to `v`.
    pub fn partners(&self, n: usize) -> Vec<Option<usize>> {
        let mut p = vec![None; n];
        for &(a, b) in &self.pairs {
            p[a] = Some(b);
            p[b] = Some(a);
        }
        p
    }

    pub fn uncovered(&self, n: usize) -> Vec<usize> {
        let p = self.partners(n);
        (0..n).filter(|&v| p[v].is_none()).collect()
    }
}

/// Maximum matching by leaf stripping: repeatedly match the smallest-id
/// leaf of the remaining forest with its neighbor and delete both.
pub fn max_matching(t: &Tree) -> Matching {
    let n = t.order();
    let mut removed = vec![false; n];
    let mut degree: Vec<usize> = (0..n).map(|v| t.degree(v)).collect();
    let mut leaves: BTreeSet<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    let mut pairs = Vec::new();

    while let Some(leaf) = leaves.pop_first() {
        if removed[leaf] || degree[leaf] != 1 {
            continue;
        }
        let parent = *t.neighbors(leaf).iter().find(|&&w| !removed[w]).unwrap();
        pairs.push((leaf, parent));
        removed[leaf] = true;
        removed[parent] = true;
        leaves.remove(&parent);
        for &w in t.neighbors(parent) {
            if !removed[w] {
                degree[w] -= 1;
                if degree[w] == 1 {
                    leaves.insert(w);
                } else if degree[w] == 0 {
                    leaves.remove(&w);
                }
            }
        }
    }
    Matching::new(pairs)
}

/// Almost perfect matching covering every vertex except `v`, where `v` is
/// an end vertex of a longest path.
///
/// Such a matching does not exist for every longest-path end vertex, even
/// when the tree has an almost perfect matching: in the spider with edges
/// 0-1, 0-2, 0-3, 1-4 vertex 4 ends a longest path, yet leaving it out
/// forces 0-1 and strands 2 and 3. That case is reported as
/// [`Error::NoMatchingMissing`].
pub fn matching_missing(t: &Tree, v: usize) -> Result<Matching> {
    let n = t.order();
    if v >= n {
        return Err(Error::VertexOutOfRange { vertex: v, n });
    }
    if n.is_multiple_of(2) || max_matching(t).len() != (n - 1) / 2 {
        return Err(Error::NoAlmostPerfectMatching);
    }
    if !t.is_longest_path_endpoint(v) {
        return Err(Error::NotLongestPathEndpoint(v));
    }
    matching_avoiding(t, v)
}

/// The almost perfect matching leaving exactly `v` uncovered, for any
/// vertex `v`. It is unique when it exists, since `t - v` is a forest.
///
/// Roots the tree at `v` and matches bottom-up: each vertex takes its
/// smallest-id child still unmatched. This is a maximum matching that
/// leaves the root exposed whenever some maximum matching does.
pub fn matching_avoiding(t: &Tree, v: usize) -> Result<Matching> {
    let n = t.order();
    if v >= n {
        return Err(Error::VertexOutOfRange { vertex: v, n });
    }
    if n.is_multiple_of(2) {
        return Err(Error::NoAlmostPerfectMatching);
    }

    let mut parent = vec![usize::MAX; n];
    let mut order = vec![v];
    let mut seen = vec![false; n];
    seen[v] = true;
    let mut i = 0;
    while i < order.len() {
        let x = order[i];
        i += 1;
        for &y in t.neighbors(x) {
            if !seen[y] {
                seen[y] = true;
                parent[y] = x;
                order.push(y);
            }
        }
    }

    let mut matched = vec![false; n];
    let mut pairs = Vec::with_capacity(n / 2);
    for &x in order.iter().rev() {
        let child = t
            .neighbors(x)
            .iter()
            .copied()
            .filter(|&c| parent[c] == x && !matched[c])
            .min();
        if let Some(c) = child {
            matched[x] = true;
            matched[c] = true;
            pairs.push((x, c));
        }
    }

    let m = Matching::new(pairs);
    if m.len() != (n - 1) / 2 {
        return Err(Error::NoAlmostPerfectMatching);
    }
    if matched[v] {
        return Err(Error::NoMatchingMissing(v));
    }
    Ok(m)
}

/// A contree vertex: a matched pair or a single uncovered vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Group {
    Pair(usize, usize),
    Single(usize),
}

impl Group {
    pub fn members(&self) -> Vec<usize> {
        match *self {
            Group::Pair(a, b) => vec![a, b],
            Group::Single(a) => vec![a],
        }
    }

    pub fn smallest(&self) -> usize {
        match *self {
            Group::Pair(a, b) => a.min(b),
            Group::Single(a) => a,
        }
    }

    pub fn contains(&self, v: usize) -> bool {
        match *self {
            Group::Pair(a, b) => a == v || b == v,
            Group::Single(a) => a == v,
        }
    }
}

/// Correspondence between a tree, a matching of it, and its contree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContractionMap {
    pub contree: Tree,
    /// Original vertices merged into each contree vertex.
    pub pair_of: Vec<Group>,
    /// For contree edge `i` = `(x, y)`, the original edge `(p, q)` realizing
    /// it, with `p` in group `x` and `q` in group `y`.
    pub origin_edge: Vec<(usize, usize)>,
    /// Contree vertex containing each original vertex.
    pub owner: Vec<usize>,
}

impl ContractionMap {
    /// Original edge set rebuilt from the matched pairs and the origin
    /// edges, normalized and sorted.
    pub fn expand(&self) -> Vec<(usize, usize)> {
        let mut edges: Vec<(usize, usize)> = self
            .pair_of
            .iter()
            .filter_map(|g| match *g {
                Group::Pair(a, b) => Some((a.min(b), a.max(b))),
                Group::Single(_) => None,
            })
            .chain(self.origin_edge.iter().map(|&(p, q)| (p.min(q), p.max(q))))
            .collect();
        edges.sort_unstable();
        edges
    }

    pub fn original_order(&self) -> usize {
        self.owner.len()
    }
}

/// Contracts every edge of `m`. Contree vertices are numbered by the
/// smallest original vertex they contain.
pub fn contract(t: &Tree, m: &Matching) -> Result<ContractionMap> {
    m.validate(t)?;
    let n = t.order();
    let partner = m.partners(n);

    let mut pair_of = Vec::with_capacity(n - m.len());
    let mut owner = vec![usize::MAX; n];
    for v in 0..n {
        if owner[v] != usize::MAX {
            continue;
        }
        let id = pair_of.len();
        owner[v] = id;
        match partner[v] {
            Some(w) => {
                owner[w] = id;
                pair_of.push(Group::Pair(v, w));
            }
            None => pair_of.push(Group::Single(v)),
        }
    }

    let mut edges = Vec::with_capacity(pair_of.len().saturating_sub(1));
    let mut origin_edge = Vec::with_capacity(edges.capacity());
    for &(p, q) in t.edges() {
        if partner[p] == Some(q) {
            continue;
        }
        edges.push((owner[p], owner[q]));
        origin_edge.push((p, q));
    }
    let contree = Tree::new(pair_of.len(), edges)
        .map_err(|e| Error::Defect(format!("contraction produced an invalid tree: {e}")))?;
    Ok(ContractionMap { contree, pair_of, origin_edge, owner })
}
