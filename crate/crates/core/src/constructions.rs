//! Constructive graceful labelings.
//!
//! * [`rosa_caterpillar`]: Rosa's labeling of a caterpillar with 0 on a
//!   chosen longest-path end vertex.
//! * [`delta`] and [`delta_plus_one`]: replace the vertices of a graceful
//!   tree `S` by copies of a graceful tree `T`. Adjacent copies may be joined
//!   at any pair of corresponding vertices, chosen per edge of `S` by an
//!   [`AttachmentPlan`].
//! * [`label_lobster_apm`]: trees with an almost perfect matching whose
//!   contree is a caterpillar. The contree gets the complement of a Rosa
//!   labeling, then is expanded by `delta_plus_one` with `T = P2` and the
//!   uncovered vertex as the exceptional vertex.
//! * [`label_tree_pm_strong`]: the perfect matching analogue via `delta`,
//!   producing strongly graceful labelings.

use std::collections::{BTreeMap, VecDeque};

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::labeling::{complement, verify_graceful, verify_strongly_graceful, Labeling};
use crate::matching::{contract, matching_avoiding, max_matching, ContractionMap, Group, Matching};
use crate::oracle::search::{brute_force, Constraint, SearchMode, SearchOptions};
use crate::tree::{Bipartition, Tree};

/// Rosa's graceful labeling of a caterpillar (or path), with label 0 on
/// `start`.
///
/// The spine is the longest path anchored at `start`. Vertices are listed
/// as `s1`, then for each later spine vertex its non-spine leaves in id
/// order followed by the spine vertex itself. The class of `start` takes
/// labels `0, 1, 2, ...` in that order and the other class takes
/// `n-1, n-2, ...`.
pub fn rosa_caterpillar(t: &Tree, start: usize) -> Result<Labeling> {
    let n = t.order();
    if start >= n {
        return Err(Error::VertexOutOfRange { vertex: start, n });
    }
    if !t.classify().is_caterpillar_or_path() {
        return Err(Error::NotCaterpillar);
    }
    let spine = t.longest_path(Some(start))?;
    let mut on_spine = vec![false; n];
    for &s in &spine {
        on_spine[s] = true;
    }

    let mut order = Vec::with_capacity(n);
    order.push(spine[0]);
    for &s in &spine[1..] {
        for &w in t.neighbors(s) {
            if !on_spine[w] {
                if !t.is_leaf(w) {
                    return Err(Error::NotCaterpillar);
                }
                order.push(w);
            }
        }
        order.push(s);
    }
    if order.len() != n {
        return Err(Error::NotCaterpillar);
    }

    let bip = t.bipartition().with_in_a(start);
    let mut labels = vec![0; n];
    let (mut low, mut high) = (0, n - 1);
    for v in order {
        if bip.in_a(v) {
            labels[v] = low;
            low += 1;
        } else {
            labels[v] = high;
            high -= 1;
        }
    }
    let f = Labeling::new(labels);
    verify_graceful(t, &f)
        .into_result()
        .map_err(|e| Error::Defect(format!("Rosa labeling failed verification: {e}")))?;
    Ok(f)
}

/// Which vertex of `T` joins the copies for each edge of `S`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AttachmentPlan {
    choice: BTreeMap<(usize, usize), usize>,
}

impl AttachmentPlan {
    pub fn new() -> Self {
        Self::default()
    }

    /// Every edge of `s` not incident to `except` uses vertex `x`.
    pub fn constant(s: &Tree, x: usize, except: Option<usize>) -> Self {
        let mut plan = Self::new();
        for &(a, b) in s.edges() {
            if Some(a) != except && Some(b) != except {
                plan.set(a, b, x);
            }
        }
        plan
    }

    /// Independent uniform choice of a `T` vertex per edge.
    pub fn random<R: Rng + ?Sized>(s: &Tree, t_order: usize, except: Option<usize>, rng: &mut R) -> Self {
        let mut plan = Self::new();
        for &(a, b) in s.edges() {
            if Some(a) != except && Some(b) != except {
                plan.set(a, b, rng.random_range(0..t_order));
            }
        }
        plan
    }

    pub fn set(&mut self, a: usize, b: usize, x: usize) {
        self.choice.insert((a.min(b), a.max(b)), x);
    }

    pub fn get(&self, a: usize, b: usize) -> Option<usize> {
        self.choice.get(&(a.min(b), a.max(b))).copied()
    }

    pub fn len(&self) -> usize {
        self.choice.len()
    }

    pub fn is_empty(&self) -> bool {
        self.choice.is_empty()
    }
}

/// Operands of a composition. `u`/`v` are the exceptional vertex of `S`
/// and the fixed vertex of `T`, used only by [`delta_plus_one`].
#[derive(Clone, Debug)]
pub struct CompositionInput {
    pub s: Tree,
    pub f: Labeling,
    pub t: Tree,
    pub g: Labeling,
    pub t_bipartition: Bipartition,
    pub u: Option<usize>,
    pub v: Option<usize>,
    pub plan: AttachmentPlan,
}

impl CompositionInput {
    /// Input for `delta`, with the breadth-first bipartition of `t`.
    pub fn delta(s: Tree, f: Labeling, t: Tree, g: Labeling, plan: AttachmentPlan) -> Self {
        let t_bipartition = t.bipartition();
        CompositionInput { s, f, t, g, t_bipartition, u: None, v: None, plan }
    }

    /// Input for `delta_plus_one`; the bipartition of `t` is oriented so
    /// that `v` is in class A.
    pub fn delta_plus_one(
        s: Tree,
        f: Labeling,
        u: usize,
        t: Tree,
        g: Labeling,
        v: usize,
        plan: AttachmentPlan,
    ) -> Self {
        let t_bipartition = t.bipartition().with_in_a(v.min(t.order() - 1));
        CompositionInput { s, f, t, g, t_bipartition, u: Some(u), v: Some(v), plan }
    }

    fn check_common(&self) -> Result<()> {
        let ensure_graceful = |tree: &Tree, lab: &Labeling, name: &str| {
            verify_graceful(tree, lab)
                .into_result()
                .map_err(|e| Error::Precondition(format!("{name} is not graceful: {e}")))
        };
        ensure_graceful(&self.s, &self.f, "f")?;
        ensure_graceful(&self.t, &self.g, "g")?;
        let bip = &self.t_bipartition;
        if bip.len() != self.t.order() {
            return Err(Error::Precondition("bipartition size differs from T".into()));
        }
        if self.t.edges().iter().any(|&(a, b)| bip.in_a(a) == bip.in_a(b)) {
            return Err(Error::Precondition("bipartition is not proper for T".into()));
        }
        Ok(())
    }

    fn plan_choice(&self, a: usize, b: usize) -> Result<usize> {
        let x = self.plan.get(a, b).ok_or(Error::PlanIncomplete(a, b))?;
        if x >= self.t.order() {
            return Err(Error::VertexOutOfRange { vertex: x, n: self.t.order() });
        }
        Ok(x)
    }
}

/// Generalized delta composition.
///
/// Copy of `T` for `S`-vertex `p` (index `i = f(p)`) occupies output
/// vertices `p * n_T + x`, labeled `i * n_T + g(x)` on class A and
/// `(n_S - i - 1) * n_T + g(x)` on class B. The output has order
/// `n_S * n_T` and is verified graceful.
pub fn delta(inp: &CompositionInput) -> Result<(Tree, Labeling)> {
    if inp.u.is_some() || inp.v.is_some() {
        return Err(Error::Precondition("delta takes no exceptional vertex".into()));
    }
    inp.check_common()?;
    let (ns, nt) = (inp.s.order(), inp.t.order());

    let mut labels = vec![0; ns * nt];
    let mut edges = Vec::with_capacity(ns * nt - 1);
    for p in 0..ns {
        let i = inp.f.get(p);
        for x in 0..nt {
            labels[p * nt + x] = if inp.t_bipartition.in_a(x) {
                i * nt + inp.g.get(x)
            } else {
                (ns - i - 1) * nt + inp.g.get(x)
            };
        }
        edges.extend(inp.t.edges().iter().map(|&(a, b)| (p * nt + a, p * nt + b)));
    }
    for &(p, q) in inp.s.edges() {
        let x = inp.plan_choice(p, q)?;
        edges.push((p * nt + x, q * nt + x));
    }

    finish(ns * nt, edges, labels, "delta")
}

/// Output vertex id of `(p, x)` in a `delta_plus_one` composition with
/// exceptional vertex `u`. The copies keep the order of the `S` vertices
/// with `u` skipped; `u` itself is the last vertex.
pub fn plus_one_vertex(p: usize, x: usize, u: usize, ns: usize, nt: usize) -> usize {
    if p == u {
        (ns - 1) * nt
    } else {
        let k = if p < u { p } else { p - 1 };
        k * nt + x
    }
}

/// Generalized delta-plus-one composition.
///
/// Requires `f(u) = n_S - 1`, `g(v) = 0` and `v` in class A. Every `S`
/// vertex except `u` becomes a copy of `T` labeled `i * n_T + g(x)` on
/// class A and `(n_S - i - 2) * n_T + g(x)` on class B; `u` stays a single
/// vertex labeled `(n_S - 1) * n_T` and joins the `v` vertex of each
/// neighboring copy. The output has order `(n_S - 1) * n_T + 1` and is
/// verified graceful.
pub fn delta_plus_one(inp: &CompositionInput) -> Result<(Tree, Labeling)> {
    let (ns, nt) = (inp.s.order(), inp.t.order());
    let u = inp.u.ok_or_else(|| Error::Precondition("missing exceptional vertex u".into()))?;
    let v = inp.v.ok_or_else(|| Error::Precondition("missing fixed vertex v".into()))?;
    if u >= ns {
        return Err(Error::VertexOutOfRange { vertex: u, n: ns });
    }
    if v >= nt {
        return Err(Error::VertexOutOfRange { vertex: v, n: nt });
    }
    inp.check_common()?;
    if inp.f.get(u) != ns - 1 {
        return Err(Error::Precondition(format!("f(u) = {}, expected {}", inp.f.get(u), ns - 1)));
    }
    if inp.g.get(v) != 0 {
        return Err(Error::Precondition(format!("g(v) = {}, expected 0", inp.g.get(v))));
    }
    if !inp.t_bipartition.in_a(v) {
        return Err(Error::Precondition("v is not in class A".into()));
    }

    let order = (ns - 1) * nt + 1;
    let id = |p: usize, x: usize| plus_one_vertex(p, x, u, ns, nt);
    let mut labels = vec![0; order];
    let mut edges = Vec::with_capacity(order - 1);
    labels[id(u, 0)] = (ns - 1) * nt;
    for p in (0..ns).filter(|&p| p != u) {
        let i = inp.f.get(p);
        for x in 0..nt {
            labels[id(p, x)] = if inp.t_bipartition.in_a(x) {
                i * nt + inp.g.get(x)
            } else {
                (ns - i - 2) * nt + inp.g.get(x)
            };
        }
        edges.extend(inp.t.edges().iter().map(|&(a, b)| (id(p, a), id(p, b))));
    }
    for &(p, q) in inp.s.edges() {
        if p == u {
            edges.push((id(u, 0), id(q, v)));
        } else if q == u {
            edges.push((id(p, v), id(u, 0)));
        } else {
            let x = inp.plan_choice(p, q)?;
            edges.push((id(p, x), id(q, x)));
        }
    }

    finish(order, edges, labels, "delta_plus_one")
}

fn finish(order: usize, edges: Vec<(usize, usize)>, labels: Vec<usize>, what: &str) -> Result<(Tree, Labeling)> {
    let tree = Tree::new(order, edges).map_err(|e| Error::Defect(format!("{what} built an invalid tree: {e}")))?;
    let labeling = Labeling::new(labels);
    verify_graceful(&tree, &labeling)
        .into_result()
        .map_err(|e| Error::Defect(format!("{what} output failed verification: {e}")))?;
    Ok((tree, labeling))
}

/// Which vertex of `P2` a matched vertex stands for: `V` is the fixed
/// vertex (label 0 in `P2`), `W` the other one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Role {
    V,
    W,
}

impl Role {
    /// Vertex of `P2` (0 or 1) playing this role.
    pub fn p2_vertex(self) -> usize {
        match self {
            Role::V => 0,
            Role::W => 1,
        }
    }

    pub fn other(self) -> Role {
        match self {
            Role::V => Role::W,
            Role::W => Role::V,
        }
    }
}

/// Role of every matched vertex; `None` on uncovered vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RoleAssignment {
    pub roles: Vec<Option<Role>>,
}

impl RoleAssignment {
    pub fn role(&self, v: usize) -> Option<Role> {
        self.roles[v]
    }

    /// Every matched pair has one `V` and one `W`, every edge between two
    /// pairs joins vertices with the same role, and the neighbor of the
    /// exceptional vertex (if given) plays `V`.
    pub fn is_consistent(&self, cmap: &ContractionMap, exceptional: Option<usize>) -> bool {
        let pairs_ok = cmap.pair_of.iter().all(|g| match *g {
            Group::Pair(a, b) => matches!(
                (self.roles[a], self.roles[b]),
                (Some(x), Some(y)) if x != y
            ),
            Group::Single(a) => self.roles[a].is_none(),
        });
        let edges_ok = cmap.origin_edge.iter().all(|&(p, q)| {
            if Some(p) == exceptional {
                self.roles[q] == Some(Role::V)
            } else if Some(q) == exceptional {
                self.roles[p] == Some(Role::V)
            } else {
                self.roles[p].is_some() && self.roles[p] == self.roles[q]
            }
        });
        pairs_ok && edges_ok
    }
}

/// Orients every matched pair of `cmap`, an almost perfect matching
/// missing the leaf `u`: `u`'s neighbor plays `V`, and roles propagate
/// breadth-first across the contree along the origin edges.
pub fn assign_roles(cmap: &ContractionMap, u: usize) -> Result<RoleAssignment> {
    let n = cmap.original_order();
    if u >= n {
        return Err(Error::VertexOutOfRange { vertex: u, n });
    }
    let image = cmap.owner[u];
    if cmap.pair_of[image] != Group::Single(u) {
        return Err(Error::Precondition(format!("vertex {u} is covered by the matching")));
    }
    if n == 1 {
        return Ok(RoleAssignment { roles: vec![None] });
    }
    let incident: Vec<(usize, usize)> = cmap
        .origin_edge
        .iter()
        .filter_map(|&(p, q)| match (p == u, q == u) {
            (true, _) => Some((p, q)),
            (_, true) => Some((q, p)),
            _ => None,
        })
        .collect();
    let [(_, neighbor)] = incident.as_slice() else {
        return Err(Error::NotALeaf(u));
    };
    propagate_roles(cmap, *neighbor, Some(image))
}

/// Orients every pair of a perfect matching's contraction, starting with
/// `root` playing `V`.
pub fn assign_roles_rooted(cmap: &ContractionMap, root: usize) -> Result<RoleAssignment> {
    if root >= cmap.original_order() {
        return Err(Error::VertexOutOfRange { vertex: root, n: cmap.original_order() });
    }
    propagate_roles(cmap, root, None)
}

fn propagate_roles(cmap: &ContractionMap, start: usize, skip: Option<usize>) -> Result<RoleAssignment> {
    let n = cmap.original_order();
    let k = cmap.pair_of.len();
    let inconsistent = |msg: &str| Error::Precondition(format!("contraction map inconsistent: {msg}"));

    let mut roles: Vec<Option<Role>> = vec![None; n];
    let set_pair = |roles: &mut Vec<Option<Role>>, x: usize, role: Role| -> Result<()> {
        match cmap.pair_of[cmap.owner[x]] {
            Group::Pair(a, b) => {
                let other = if a == x { b } else { a };
                roles[x] = Some(role);
                roles[other] = Some(role.other());
                Ok(())
            }
            Group::Single(_) => Err(inconsistent("uncovered vertex besides the exceptional one")),
        }
    };

    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); k];
    for (i, &(x, y)) in cmap.contree.edges().iter().enumerate() {
        incident[x].push(i);
        incident[y].push(i);
    }

    let mut visited = vec![false; k];
    if let Some(s) = skip {
        visited[s] = true;
    }
    let root = cmap.owner[start];
    set_pair(&mut roles, start, Role::V)?;
    visited[root] = true;
    let mut queue = VecDeque::from([root]);
    while let Some(x) = queue.pop_front() {
        for &i in &incident[x] {
            let (p, q) = cmap.origin_edge[i];
            let (from, to) = if cmap.owner[p] == x { (p, q) } else { (q, p) };
            let y = cmap.owner[to];
            if visited[y] {
                continue;
            }
            let role = roles[from].ok_or_else(|| inconsistent("unoriented pair reached"))?;
            set_pair(&mut roles, to, role)?;
            visited[y] = true;
            queue.push_back(y);
        }
    }
    if visited.iter().any(|&b| !b) {
        return Err(inconsistent("contree not connected"));
    }
    Ok(RoleAssignment { roles })
}

/// Intermediate objects of the almost-perfect-matching pipeline.
#[derive(Clone, Debug)]
pub struct ApmLabeling {
    pub labeling: Labeling,
    /// The uncovered vertex; it carries label `n - 1`.
    pub uncovered: usize,
    pub matching: Matching,
    pub contraction: ContractionMap,
    pub contree_labeling: Labeling,
    pub contree_source: ContreeSource,
    pub roles: RoleAssignment,
    /// Tree produced by the expansion, on its own vertex ids.
    pub expanded: Tree,
    /// Expansion vertex standing for each input vertex.
    pub vertex_map: Vec<usize>,
}

fn p2() -> (Tree, Labeling) {
    (Tree::path(2).expect("P2"), Labeling::new(vec![0, 1]))
}

/// Maps every edge of `expanded` back through `vertex_map` and compares
/// with the input edge set.
fn check_reconstruction(t: &Tree, expanded: &Tree, vertex_map: &[usize]) -> Result<()> {
    let mut inverse = vec![usize::MAX; expanded.order()];
    for (o, &e) in vertex_map.iter().enumerate() {
        inverse[e] = o;
    }
    let mut back: Vec<(usize, usize)> = expanded
        .edges()
        .iter()
        .map(|&(a, b)| (inverse[a].min(inverse[b]), inverse[a].max(inverse[b])))
        .collect();
    back.sort_unstable();
    if back != t.normalized_edges() {
        return Err(Error::Defect("expansion does not reproduce the input edge set".into()));
    }
    Ok(())
}

/// Vertices tried as the uncovered vertex, in order: longest-path end
/// vertices, then the remaining leaves, each group ascending.
pub fn apm_candidates(t: &Tree) -> Vec<usize> {
    if t.order() == 1 {
        return vec![0];
    }
    let ends = t.longest_path_endpoints();
    let rest = (0..t.order()).filter(|&v| t.is_leaf(v) && !ends.contains(&v));
    ends.iter().copied().chain(rest).collect()
}

/// How the contree labeling of the almost-perfect-matching pipeline was
/// obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ContreeSource {
    /// Complement of Rosa's labeling started at the image of `u`.
    Rosa,
    /// Complement of a searched graceful labeling with 0 on the image of
    /// `u`, used when that image is not a longest-path end vertex.
    Search,
}

/// Node budget for the contree search of [`ContreeSource::Search`].
pub const CONTREE_SEARCH_BUDGET: u64 = 50_000_000;

/// Labels a tree with an almost perfect matching whose contree is a
/// caterpillar, returning every intermediate object.
///
/// Candidates from [`apm_candidates`] are tried in order with the Rosa
/// route first. If none qualifies and `search_fallback` is set, they are
/// tried again with a searched contree labeling.
pub fn label_lobster_apm_with(t: &Tree, search_fallback: bool) -> Result<ApmLabeling> {
    let n = t.order();
    if n.is_multiple_of(2) || max_matching(t).len() != n / 2 {
        return Err(Error::NoAlmostPerfectMatching);
    }
    let candidates = apm_candidates(t);
    let sources: &[ContreeSource] = if search_fallback {
        &[ContreeSource::Rosa, ContreeSource::Search]
    } else {
        &[ContreeSource::Rosa]
    };
    // most specific failure seen, reported if no candidate works
    let rank = |e: &Error| match e {
        Error::NoZeroLabeling(_) => 3,
        Error::ImageNotEndpoint => 2,
        Error::ContreeNotCaterpillar => 1,
        _ => 0,
    };
    let mut worst = Error::NoUsableMatching;
    for &source in sources {
        for &u in &candidates {
            match label_apm_uncovered(t, u, source) {
                Ok(r) => return Ok(r),
                Err(e @ (Error::NoMatchingMissing(_)
                | Error::ImageNotEndpoint
                | Error::ContreeNotCaterpillar
                | Error::NoZeroLabeling(_))) => {
                    if rank(&e) > rank(&worst) {
                        worst = e;
                    }
                }
                Err(e) => return Err(e),
            }
        }
    }
    Err(worst)
}

/// [`label_lobster_apm_with`] with the search fallback enabled.
pub fn label_lobster_apm_detailed(t: &Tree) -> Result<ApmLabeling> {
    label_lobster_apm_with(t, true)
}

/// The almost-perfect-matching pipeline with `u` as the uncovered vertex.
pub fn label_apm_uncovered(t: &Tree, u: usize, source: ContreeSource) -> Result<ApmLabeling> {
    let n = t.order();
    let matching = matching_avoiding(t, u)?;
    let contraction = contract(t, &matching)?;
    let contree = &contraction.contree;
    let image = contraction.owner[u];
    if !contree.classify().is_caterpillar_or_path() {
        return Err(Error::ContreeNotCaterpillar);
    }
    let zero_at_image = match source {
        ContreeSource::Rosa if contree.is_longest_path_endpoint(image) => rosa_caterpillar(contree, image)?,
        ContreeSource::Rosa => return Err(Error::ImageNotEndpoint),
        // only reached for images the Rosa route cannot handle
        ContreeSource::Search if contree.is_longest_path_endpoint(image) => return Err(Error::ImageNotEndpoint),
        ContreeSource::Search => {
            let opts = SearchOptions::new(SearchMode::First, Constraint::ZeroAt(image)).with_budget(CONTREE_SEARCH_BUDGET);
            brute_force(contree, &opts)?
                .labelings
                .pop()
                .ok_or(Error::NoZeroLabeling(image))?
        }
    };
    let contree_labeling = complement(&zero_at_image)?;
    let roles = assign_roles(&contraction, u)?;
    let mut plan = AttachmentPlan::new();
    for (i, &(x, y)) in contree.edges().iter().enumerate() {
        if x != image && y != image {
            let (p, _) = contraction.origin_edge[i];
            let role = roles.role(p).ok_or_else(|| Error::Defect(format!("vertex {p} has no role")))?;
            plan.set(x, y, role.p2_vertex());
        }
    }

    let (pt, pg) = p2();
    let inp = CompositionInput::delta_plus_one(contree.clone(), contree_labeling.clone(), image, pt, pg, 0, plan);
    let (expanded, expanded_labels) = delta_plus_one(&inp)?;

    let ns = contree.order();
    let vertex_map: Vec<usize> = (0..n)
        .map(|o| {
            let x = roles.role(o).map_or(0, Role::p2_vertex);
            plus_one_vertex(contraction.owner[o], x, image, ns, 2)
        })
        .collect();
    check_reconstruction(t, &expanded, &vertex_map)?;

    let labeling = Labeling::new(vertex_map.iter().map(|&e| expanded_labels.get(e)).collect());
    verify_graceful(t, &labeling)
        .into_result()
        .map_err(|e| Error::Defect(format!("pipeline output failed verification: {e}")))?;
    if labeling.get(u) != n - 1 {
        return Err(Error::Defect(format!("uncovered vertex labeled {}", labeling.get(u))));
    }
    Ok(ApmLabeling {
        labeling,
        uncovered: u,
        matching,
        contraction,
        contree_labeling,
        contree_source: source,
        roles,
        expanded,
        vertex_map,
    })
}

/// Graceful labeling of a tree with an almost perfect matching whose
/// contree is a caterpillar. The uncovered vertex receives `n - 1`.
pub fn label_lobster_apm(t: &Tree) -> Result<Labeling> {
    label_lobster_apm_detailed(t).map(|r| r.labeling)
}

/// Strongly graceful labeling of a tree with a perfect matching whose
/// contree is a caterpillar, returned with that matching.
pub fn label_tree_pm_strong(t: &Tree) -> Result<(Labeling, Matching)> {
    let n = t.order();
    let matching = max_matching(t);
    if !matching.is_perfect(n) {
        return Err(Error::NoPerfectMatching);
    }
    let contraction = contract(t, &matching)?;
    let contree = &contraction.contree;
    if !contree.classify().is_caterpillar_or_path() {
        return Err(Error::ContreeNotCaterpillar);
    }
    let start = contree.longest_path(None)?[0];
    let f = rosa_caterpillar(contree, start)?;
    let roles = assign_roles_rooted(&contraction, 0)?;
    let mut plan = AttachmentPlan::new();
    for (i, &(x, y)) in contree.edges().iter().enumerate() {
        let (p, _) = contraction.origin_edge[i];
        plan.set(x, y, roles.role(p).map_or(0, Role::p2_vertex));
    }

    let (pt, pg) = p2();
    let (expanded, expanded_labels) = delta(&CompositionInput::delta(contree.clone(), f, pt, pg, plan))?;
    let vertex_map: Vec<usize> = (0..n)
        .map(|o| contraction.owner[o] * 2 + roles.role(o).map_or(0, Role::p2_vertex))
        .collect();
    check_reconstruction(t, &expanded, &vertex_map)?;

    let labeling = Labeling::new(vertex_map.iter().map(|&e| expanded_labels.get(e)).collect());
    verify_strongly_graceful(t, &labeling, &matching)?
        .into_result()
        .map_err(|e| Error::Defect(format!("pipeline output is not strongly graceful: {e}")))?;
    Ok((labeling, matching))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn lab(v: &[usize]) -> Labeling {
        Labeling::new(v.to_vec())
    }

    fn lobster7() -> Tree {
        Tree::new(7, vec![(0, 1), (1, 2), (2, 3), (3, 4), (2, 5), (5, 6)]).unwrap()
    }

    #[test]
    fn rosa_examples() {
        assert_eq!(rosa_caterpillar(&Tree::path(3).unwrap(), 0).unwrap(), lab(&[0, 2, 1]));
        // K1,3 with center 0 and leaves l1=1, l2=2, l3=3
        let star = Tree::star(3).unwrap();
        assert_eq!(rosa_caterpillar(&star, 1).unwrap(), lab(&[3, 0, 2, 1]));
        assert_eq!(rosa_caterpillar(&Tree::single_vertex(), 0).unwrap(), lab(&[0]));
        assert_eq!(rosa_caterpillar(&Tree::path(5).unwrap(), 0).unwrap(), lab(&[0, 4, 1, 3, 2]));
    }

    #[test]
    fn rosa_errors() {
        assert_eq!(rosa_caterpillar(&Tree::path(5).unwrap(), 2), Err(Error::NotLongestPathEndpoint(2)));
        assert_eq!(rosa_caterpillar(&lobster7(), 0), Err(Error::NotCaterpillar));
    }

    #[test]
    fn delta_examples() {
        let p2 = Tree::path(2).unwrap();
        let inp = CompositionInput::delta(p2.clone(), lab(&[0, 1]), p2.clone(), lab(&[0, 1]), AttachmentPlan::constant(&p2, 0, None));
        let (t, f) = delta(&inp).unwrap();
        assert_eq!(t.order(), 4);
        assert_eq!(f, lab(&[0, 3, 2, 1]));
        assert!(t.has_edge(0, 2));
        assert_eq!(crate::edge_weights(&t, &f).unwrap(), vec![1, 2, 3]);

        let inp = CompositionInput::delta(p2.clone(), lab(&[0, 1]), Tree::single_vertex(), lab(&[0]), AttachmentPlan::constant(&p2, 0, None));
        let (t, f) = delta(&inp).unwrap();
        assert_eq!(t, p2);
        assert_eq!(f, lab(&[0, 1]));

        let p3 = Tree::path(3).unwrap();
        let inp = CompositionInput::delta(p3.clone(), lab(&[0, 2, 1]), p2.clone(), lab(&[0, 1]), AttachmentPlan::constant(&p3, 0, None));
        let (t, f) = delta(&inp).unwrap();
        assert_eq!(t.order(), 6);
        assert!(verify_graceful(&t, &f).ok);
    }

    #[test]
    fn delta_errors() {
        let p2 = Tree::path(2).unwrap();
        let inp = CompositionInput::delta(p2.clone(), lab(&[0, 1]), p2.clone(), lab(&[0, 1]), AttachmentPlan::new());
        assert_eq!(delta(&inp).unwrap_err(), Error::PlanIncomplete(0, 1));
        let inp = CompositionInput::delta(p2.clone(), lab(&[0, 0]), p2.clone(), lab(&[0, 1]), AttachmentPlan::constant(&p2, 0, None));
        assert!(matches!(delta(&inp), Err(Error::Precondition(_))));
    }

    #[test]
    fn delta_plus_one_examples() {
        let p2 = Tree::path(2).unwrap();
        let inp = CompositionInput::delta_plus_one(p2.clone(), lab(&[0, 1]), 1, p2.clone(), lab(&[0, 1]), 0, AttachmentPlan::new());
        let (t, f) = delta_plus_one(&inp).unwrap();
        assert_eq!(t, Tree::new(3, vec![(0, 1), (0, 2)]).unwrap());
        assert_eq!(f, lab(&[0, 1, 2]));

        // P3 with u an end vertex labeled 2
        let p3 = Tree::path(3).unwrap();
        let inp = CompositionInput::delta_plus_one(p3.clone(), lab(&[2, 0, 1]), 0, p2.clone(), lab(&[0, 1]), 0, AttachmentPlan::constant(&p3, 0, Some(0)));
        let (t, f) = delta_plus_one(&inp).unwrap();
        assert_eq!(t.order(), 5);
        assert_eq!(f.get(4), 4);
        assert!(verify_graceful(&t, &f).ok);

        let inp = CompositionInput::delta_plus_one(p3.clone(), lab(&[2, 0, 1]), 0, Tree::single_vertex(), lab(&[0]), 0, AttachmentPlan::constant(&p3, 0, Some(0)));
        let (t, f) = delta_plus_one(&inp).unwrap();
        assert_eq!(t.normalized_edges(), vec![(0, 1), (0, 2)]);
        assert_eq!(f, lab(&[0, 1, 2]));
    }

    #[test]
    fn delta_plus_one_preconditions() {
        let p2 = Tree::path(2).unwrap();
        let p3 = Tree::path(3).unwrap();
        let plan = AttachmentPlan::constant(&p3, 0, Some(0));
        let bad_u = CompositionInput::delta_plus_one(p3.clone(), lab(&[0, 2, 1]), 0, p2.clone(), lab(&[0, 1]), 0, plan.clone());
        assert!(matches!(delta_plus_one(&bad_u), Err(Error::Precondition(_))));
        let bad_v = CompositionInput::delta_plus_one(p3.clone(), lab(&[2, 0, 1]), 0, p2.clone(), lab(&[0, 1]), 1, plan.clone());
        assert!(matches!(delta_plus_one(&bad_v), Err(Error::Precondition(_))));
        let mut in_b = CompositionInput::delta_plus_one(p3.clone(), lab(&[2, 0, 1]), 0, p2.clone(), lab(&[0, 1]), 0, plan);
        in_b.t_bipartition = p2.bipartition().with_in_a(1);
        assert!(matches!(delta_plus_one(&in_b), Err(Error::Precondition(_))));
    }

    #[test]
    fn random_plans_keep_compositions_graceful() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let s = Tree::star(3).unwrap();
        let f = rosa_caterpillar(&s, 1).unwrap();
        let t = Tree::path(4).unwrap();
        let g = lab(&[0, 3, 1, 2]);
        for _ in 0..50 {
            let plan = AttachmentPlan::random(&s, 4, None, &mut rng);
            let (out, h) = delta(&CompositionInput::delta(s.clone(), f.clone(), t.clone(), g.clone(), plan)).unwrap();
            assert_eq!(out.order(), 16);
            assert!(verify_graceful(&out, &h).ok);
        }
        let fc = complement(&f).unwrap();
        for _ in 0..50 {
            let plan = AttachmentPlan::random(&s, 4, Some(1), &mut rng);
            let inp = CompositionInput::delta_plus_one(s.clone(), fc.clone(), 1, t.clone(), g.clone(), 0, plan);
            let (out, _) = delta_plus_one(&inp).unwrap();
            assert_eq!(out.order(), 13);
        }
    }

    #[test]
    fn roles_examples() {
        let p3 = Tree::path(3).unwrap();
        let c = contract(&p3, &Matching::new(vec![(1, 2)])).unwrap();
        let r = assign_roles(&c, 0).unwrap();
        assert_eq!(r.roles, vec![None, Some(Role::V), Some(Role::W)]);

        let p5 = Tree::path(5).unwrap();
        let c = contract(&p5, &Matching::new(vec![(1, 2), (3, 4)])).unwrap();
        let r = assign_roles(&c, 0).unwrap();
        assert_eq!(r.roles, vec![None, Some(Role::V), Some(Role::W), Some(Role::W), Some(Role::V)]);
        assert!(r.is_consistent(&c, Some(0)));

        let l = lobster7();
        let c = contract(&l, &Matching::new(vec![(1, 2), (3, 4), (5, 6)])).unwrap();
        let r = assign_roles(&c, 0).unwrap();
        use Role::*;
        assert_eq!(r.roles, vec![None, Some(V), Some(W), Some(W), Some(V), Some(W), Some(V)]);
        assert!(r.is_consistent(&c, Some(0)));
    }

    #[test]
    fn roles_errors() {
        let p5 = Tree::path(5).unwrap();
        // uncovered vertex 2 has two neighbors
        let c = contract(&p5, &Matching::new(vec![(0, 1), (3, 4)])).unwrap();
        assert_eq!(assign_roles(&c, 2), Err(Error::NotALeaf(2)));
        let c = contract(&p5, &Matching::new(vec![(1, 2), (3, 4)])).unwrap();
        assert!(matches!(assign_roles(&c, 1), Err(Error::Precondition(_))));
        // two uncovered vertices
        let c = contract(&p5, &Matching::new(vec![(1, 2)])).unwrap();
        assert!(matches!(assign_roles(&c, 0), Err(Error::Precondition(_))));
    }

    #[test]
    fn apm_pipeline_examples() {
        assert_eq!(label_lobster_apm(&Tree::path(3).unwrap()).unwrap(), lab(&[2, 0, 1]));
        let p5 = label_lobster_apm(&Tree::path(5).unwrap()).unwrap();
        assert_eq!(p5, lab(&[4, 0, 3, 1, 2]));
        let l = label_lobster_apm(&lobster7()).unwrap();
        assert_eq!(l, lab(&[6, 0, 5, 3, 2, 1, 4]));
        assert_eq!(crate::edge_weights(&lobster7(), &l).unwrap(), vec![1, 2, 3, 4, 5, 6]);
        assert_eq!(label_lobster_apm(&Tree::single_vertex()).unwrap(), lab(&[0]));
    }

    #[test]
    fn apm_pipeline_errors() {
        assert_eq!(label_lobster_apm(&Tree::path(4).unwrap()), Err(Error::NoAlmostPerfectMatching));
        assert_eq!(label_lobster_apm(&Tree::star(4).unwrap()), Err(Error::NoAlmostPerfectMatching));
    }

    #[test]
    fn pm_pipeline_examples() {
        let (f, m) = label_tree_pm_strong(&Tree::path(2).unwrap()).unwrap();
        assert_eq!((f, m), (lab(&[0, 1]), Matching::new(vec![(0, 1)])));
        let (f, m) = label_tree_pm_strong(&Tree::path(4).unwrap()).unwrap();
        assert_eq!(f, lab(&[0, 3, 1, 2]));
        assert_eq!(m, Matching::new(vec![(0, 1), (2, 3)]));
        // P4 0-1-2-3 with the pendant pair 1-4-5
        let t = Tree::new(6, vec![(0, 1), (1, 2), (2, 3), (1, 4), (4, 5)]).unwrap();
        let (f, m) = label_tree_pm_strong(&t).unwrap();
        assert!(verify_strongly_graceful(&t, &f, &m).unwrap().ok);
        assert_eq!(label_tree_pm_strong(&Tree::path(3).unwrap()), Err(Error::NoPerfectMatching));
    }

    #[test]
    fn search_fallback_for_interior_images() {
        let t = Tree::new(
            11,
            vec![(0, 1), (0, 2), (0, 3), (0, 4), (1, 5), (2, 6), (5, 7), (6, 8), (7, 9), (8, 10)],
        )
        .unwrap();
        assert_eq!(label_lobster_apm_with(&t, false).unwrap_err(), Error::ImageNotEndpoint);
        let r = label_lobster_apm_with(&t, true).unwrap();
        assert_eq!(r.contree_source, ContreeSource::Search);
        assert!(verify_graceful(&t, &r.labeling).ok);
        assert_eq!(r.labeling.get(r.uncovered), 10);
        assert!(r.roles.is_consistent(&r.contraction, Some(r.uncovered)));
    }

    #[test]
    fn strict_mode_agrees_when_rosa_suffices() {
        let t = Tree::new(7, vec![(0, 1), (0, 2), (0, 3), (0, 4), (1, 5), (2, 6)]).unwrap();
        let strict = label_lobster_apm_with(&t, false).unwrap();
        assert_eq!(strict.contree_source, ContreeSource::Rosa);
        assert_eq!(strict.labeling, label_lobster_apm(&t).unwrap());
    }
}
