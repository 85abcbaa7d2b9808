//! Trees on dense vertex ids, with the structural queries the labeling
//! constructions need: bipartition, longest paths, tree distance and a
//! canonical isomorphism code.

use std::collections::{BTreeMap, HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An undirected tree on vertices `0..n`.
///
/// Construction validates the tree invariants, so every `Tree` value is
/// connected, acyclic and free of loops and parallel edges.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "TreeJson", try_from = "TreeJson")]
pub struct Tree {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

/// Wire form of a tree: `{"n": N, "edges": [[u, v], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeJson {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

impl From<Tree> for TreeJson {
    fn from(t: Tree) -> Self {
        TreeJson {
            n: t.n,
            edges: t.edges.iter().map(|&(u, v)| [u, v]).collect(),
        }
    }
}

impl TryFrom<TreeJson> for Tree {
    type Error = Error;

    fn try_from(j: TreeJson) -> Result<Self> {
        Tree::new(j.n, j.edges.into_iter().map(|[u, v]| (u, v)).collect())
    }
}

impl Tree {
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Empty);
        }
        let mut seen = HashSet::with_capacity(edges.len());
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(Error::DuplicateEdge(u, v));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        if edges.len() > n - 1 {
            return Err(Error::Cyclic { edges: edges.len(), n });
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        let t = Tree { n, edges, adj };
        if t.distances_from(0).iter().any(|d| d.is_none()) {
            return Err(Error::Disconnected);
        }
        Ok(t)
    }

    pub fn single_vertex() -> Self {
        Tree {
            n: 1,
            edges: Vec::new(),
            adj: vec![Vec::new()],
        }
    }

    pub fn path(n: usize) -> Result<Self> {
        Tree::new(n, (1..n).map(|i| (i - 1, i)).collect())
    }

    pub fn star(leaves: usize) -> Result<Self> {
        Tree::new(leaves + 1, (1..=leaves).map(|i| (0, i)).collect())
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn is_leaf(&self, v: usize) -> bool {
        self.adj[v].len() == 1
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edge set with each edge as `(min, max)`, sorted.
    pub fn normalized_edges(&self) -> Vec<(usize, usize)> {
        let mut e: Vec<_> = self.edges.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
        e.sort_unstable();
        e
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Tree> {
        assert_eq!(perm.len(), self.n, "permutation length");
        Tree::new(self.n, self.edges.iter().map(|&(u, v)| (perm[u], perm[v])).collect())
    }

    fn distances_from(&self, src: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n];
        dist[src] = Some(0);
        let mut queue = VecDeque::from([src]);
        while let Some(x) = queue.pop_front() {
            let d = dist[x].unwrap();
            for &y in &self.adj[x] {
                if dist[y].is_none() {
                    dist[y] = Some(d + 1);
                    queue.push_back(y);
                }
            }
        }
        dist
    }

    /// Breadth-first distances from `src`; parents give the unique tree path.
    fn bfs(&self, src: usize) -> (Vec<usize>, Vec<usize>) {
        let mut dist = vec![usize::MAX; self.n];
        let mut parent = vec![usize::MAX; self.n];
        dist[src] = 0;
        let mut queue = VecDeque::from([src]);
        while let Some(x) = queue.pop_front() {
            for &y in &self.adj[x] {
                if dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    parent[y] = x;
                    queue.push_back(y);
                }
            }
        }
        (dist, parent)
    }

    /// Smallest-id vertex at maximum distance from `src`.
    fn farthest(&self, src: usize) -> (usize, Vec<usize>) {
        let (dist, parent) = self.bfs(src);
        let far = (0..self.n).max_by_key(|&v| (dist[v], std::cmp::Reverse(v))).unwrap();
        (far, parent)
    }

    pub fn eccentricity(&self, v: usize) -> usize {
        let (dist, _) = self.bfs(v);
        dist.into_iter().max().unwrap()
    }

    pub fn diameter(&self) -> usize {
        let (a, _) = self.farthest(0);
        self.eccentricity(a)
    }

    /// True iff `v` is an end vertex of some path of maximum length.
    pub fn is_longest_path_endpoint(&self, v: usize) -> bool {
        v < self.n && self.eccentricity(v) == self.diameter()
    }

    /// All end vertices of longest paths, ascending.
    pub fn longest_path_endpoints(&self) -> Vec<usize> {
        let diam = self.diameter();
        (0..self.n).filter(|&v| self.eccentricity(v) == diam).collect()
    }

    /// A path of maximum length.
    ///
    /// Without an anchor this is the double-sweep path (first sweep from
    /// vertex 0, smallest-id farthest vertex each time), listed from its
    /// smaller end vertex. With an anchor the path starts there and ends at
    /// the smallest-id vertex farthest from it.
    pub fn longest_path(&self, anchor: Option<usize>) -> Result<Vec<usize>> {
        let (start, end, parent) = match anchor {
            Some(a) => {
                if a >= self.n {
                    return Err(Error::VertexOutOfRange { vertex: a, n: self.n });
                }
                if !self.is_longest_path_endpoint(a) {
                    return Err(Error::NotLongestPathEndpoint(a));
                }
                let (b, parent) = self.farthest(a);
                (a, b, parent)
            }
            None => {
                let (a, _) = self.farthest(0);
                let (b, _) = self.farthest(a);
                let (s, e) = (a.min(b), a.max(b));
                let (_, parent) = self.bfs(s);
                (s, e, parent)
            }
        };
        let mut path = vec![end];
        let mut x = end;
        while x != start {
            x = parent[x];
            path.push(x);
        }
        path.reverse();
        Ok(path)
    }

    /// Breadth-first 2-coloring from vertex 0; vertex 0 lands in class A.
    pub fn bipartition(&self) -> Bipartition {
        let (dist, _) = self.bfs(0);
        Bipartition {
            in_a: dist.iter().map(|d| d % 2 == 0).collect(),
        }
    }

    /// Tree distance: `Path` (0), `Caterpillar` (1), `Lobster` (2) by
    /// iterated leaf pruning, otherwise the largest distance to the
    /// double-sweep longest path.
    pub fn classify(&self) -> TreeClass {
        let all = vec![true; self.n];
        if self.induced_is_path(&all) {
            return TreeClass::new(0);
        }
        let once = self.prune(&all);
        if self.induced_is_path(&once) {
            return TreeClass::new(1);
        }
        let twice = self.prune(&once);
        if self.induced_is_path(&twice) {
            return TreeClass::new(2);
        }
        TreeClass::new(self.distance_to_path(&self.longest_path(None).unwrap()))
    }

    /// Largest distance from any vertex to the given vertex set.
    pub fn distance_to_path(&self, path: &[usize]) -> usize {
        let mut dist = vec![usize::MAX; self.n];
        let mut queue = VecDeque::new();
        for &p in path {
            dist[p] = 0;
            queue.push_back(p);
        }
        while let Some(x) = queue.pop_front() {
            for &y in &self.adj[x] {
                if dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    queue.push_back(y);
                }
            }
        }
        dist.into_iter().max().unwrap_or(0)
    }

    fn alive_degree(&self, v: usize, alive: &[bool]) -> usize {
        self.adj[v].iter().filter(|&&w| alive[w]).count()
    }

    // The alive set is always a subtree, so max degree <= 2 means a path.
    fn induced_is_path(&self, alive: &[bool]) -> bool {
        (0..self.n).filter(|&v| alive[v]).all(|v| self.alive_degree(v, alive) <= 2)
    }

    fn prune(&self, alive: &[bool]) -> Vec<bool> {
        (0..self.n)
            .map(|v| alive[v] && self.alive_degree(v, alive) > 1)
            .collect()
    }

    /// One or two centroid vertices, ascending.
    pub fn centroids(&self) -> Vec<usize> {
        let order = self.bfs_order(0);
        let (_, parent) = self.bfs(0);
        let mut size = vec![1usize; self.n];
        for &v in order.iter().rev() {
            if v != 0 {
                size[parent[v]] += size[v];
            }
        }
        let heaviest = |v: usize| {
            self.adj[v]
                .iter()
                .filter(|&&w| parent[w] == v)
                .map(|&w| size[w])
                .fold(self.n - size[v], usize::max)
        };
        let weights: Vec<usize> = (0..self.n).map(heaviest).collect();
        let best = *weights.iter().min().unwrap();
        (0..self.n).filter(|&v| weights[v] == best).collect()
    }

    fn bfs_order(&self, root: usize) -> Vec<usize> {
        let mut seen = vec![false; self.n];
        seen[root] = true;
        let mut order = vec![root];
        let mut i = 0;
        while i < order.len() {
            let x = order[i];
            i += 1;
            for &y in &self.adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    order.push(y);
                }
            }
        }
        order
    }

    /// AHU parenthesis code of the tree rooted at `root`.
    pub fn rooted_code(&self, root: usize) -> Vec<u8> {
        let order = self.bfs_order(root);
        let (_, parent) = self.bfs(root);
        let mut codes: Vec<Vec<u8>> = vec![Vec::new(); self.n];
        for &v in order.iter().rev() {
            let mut kids: Vec<Vec<u8>> = self.adj[v]
                .iter()
                .filter(|&&w| v == root || w != parent[v])
                .map(|&w| std::mem::take(&mut codes[w]))
                .collect();
            kids.sort_unstable();
            let mut code = Vec::with_capacity(2 + kids.iter().map(Vec::len).sum::<usize>());
            code.push(b'(');
            for k in kids {
                code.extend(k);
            }
            code.push(b')');
            codes[v] = code;
        }
        std::mem::take(&mut codes[root])
    }

    /// Canonical code: equal for two trees exactly when they are isomorphic.
    pub fn canonical_code(&self) -> Vec<u8> {
        self.centroids()
            .into_iter()
            .map(|c| self.rooted_code(c))
            .min()
            .unwrap()
    }

    /// Edge-list text with an `n` header.
    pub fn to_edge_list(&self) -> String {
        let mut s = format!("n {}\n", self.n);
        for &(u, v) in &self.edges {
            s.push_str(&format!("{u} {v}\n"));
        }
        s
    }
}

impl fmt::Display for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tree(n={}, edges=[", self.n)?;
        for (i, (u, v)) in self.edges.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{u}-{v}")?;
        }
        write!(f, "])")
    }
}

/// Proper 2-coloring of a tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bipartition {
    in_a: Vec<bool>,
}

impl Bipartition {
    /// Builds a bipartition from explicit class membership, checking it is
    /// proper for `t`.
    pub fn from_membership(t: &Tree, in_a: Vec<bool>) -> Result<Self> {
        if in_a.len() != t.order() {
            return Err(Error::Precondition("bipartition size differs from tree order".into()));
        }
        if let Some(&(u, v)) = t.edges().iter().find(|&&(u, v)| in_a[u] == in_a[v]) {
            return Err(Error::Precondition(format!("edge {u}-{v} inside one class")));
        }
        Ok(Bipartition { in_a })
    }

    pub fn in_a(&self, v: usize) -> bool {
        self.in_a[v]
    }

    pub fn class_a(&self) -> Vec<usize> {
        (0..self.in_a.len()).filter(|&v| self.in_a[v]).collect()
    }

    pub fn class_b(&self) -> Vec<usize> {
        (0..self.in_a.len()).filter(|&v| !self.in_a[v]).collect()
    }

    /// The same bipartition with the classes swapped if needed so that `v`
    /// lies in class A.
    pub fn with_in_a(mut self, v: usize) -> Self {
        if !self.in_a[v] {
            for x in &mut self.in_a {
                *x = !*x;
            }
        }
        self
    }

    pub fn len(&self) -> usize {
        self.in_a.len()
    }

    pub fn is_empty(&self) -> bool {
        self.in_a.is_empty()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TreeKind {
    Path,
    Caterpillar,
    Lobster,
    Other,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeClass {
    pub kind: TreeKind,
    pub distance: usize,
}

impl TreeClass {
    pub fn new(distance: usize) -> Self {
        let kind = match distance {
            0 => TreeKind::Path,
            1 => TreeKind::Caterpillar,
            2 => TreeKind::Lobster,
            _ => TreeKind::Other,
        };
        TreeClass { kind, distance }
    }

    pub fn is_caterpillar_or_path(&self) -> bool {
        self.distance <= 1
    }
}

/// A parsed tree together with the external id of every dense vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParsedTree {
    pub tree: Tree,
    pub ids: Vec<usize>,
}

impl ParsedTree {
    pub fn is_identity(&self) -> bool {
        self.ids.iter().enumerate().all(|(i, &id)| i == id)
    }
}

/// Parses an edge-list document or its JSON form (detected by a leading
/// `{`).
///
/// With an `n N` header, ids must lie in `0..N` and are kept as given.
/// Without one, the distinct ids are remapped to `0..k` in ascending order.
pub fn parse_tree(text: &str) -> Result<ParsedTree> {
    let trimmed = text.trim_start();
    if trimmed.starts_with('{') {
        let j: TreeJson = serde_json::from_str(trimmed).map_err(|e| Error::Malformed {
            line: e.line(),
            msg: e.to_string(),
        })?;
        let n = j.n;
        return Ok(ParsedTree {
            tree: Tree::try_from(j)?,
            ids: (0..n).collect(),
        });
    }

    let mut header: Option<usize> = None;
    let mut raw = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let number = |s: &str| {
            s.parse::<usize>().map_err(|_| Error::Malformed {
                line: lineno,
                msg: format!("expected a non-negative integer, found {s:?}"),
            })
        };
        match fields.as_slice() {
            ["n", count] if header.is_none() && raw.is_empty() => header = Some(number(count)?),
            [u, v] => raw.push((number(u)?, number(v)?)),
            _ => {
                return Err(Error::Malformed {
                    line: lineno,
                    msg: format!("expected \"u v\", found {line:?}"),
                })
            }
        }
    }

    match header {
        Some(n) => Ok(ParsedTree {
            tree: Tree::new(n, raw)?,
            ids: (0..n).collect(),
        }),
        None => {
            if raw.is_empty() {
                return Err(Error::Empty);
            }
            let mut dense = BTreeMap::new();
            for &(u, v) in &raw {
                dense.insert(u, 0);
                dense.insert(v, 0);
            }
            for (i, slot) in dense.values_mut().enumerate() {
                *slot = i;
            }
            let edges = raw.iter().map(|(u, v)| (dense[u], dense[v])).collect();
            Ok(ParsedTree {
                tree: Tree::new(dense.len(), edges)?,
                ids: dense.into_keys().collect(),
            })
        }
    }
}
