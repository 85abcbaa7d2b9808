use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::labeling::Labeling;
use crate::matching::Matching;
use crate::tree::Tree;

/// Largest order the search accepts (labels and weights are bitmasks).
/// Exhaustive modes are practical up to about 14 vertices.
pub const MAX_SEARCH_ORDER: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchMode {
    First,
    All,
    Count,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Constraint {
    Graceful,
    StronglyGraceful(Matching),
    ZeroAt(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    pub mode: SearchMode,
    pub constraint: Constraint,
    pub node_budget: Option<u64>,
    /// Cap on labelings collected in `All` mode.
    pub limit: Option<usize>,
    /// Keep only labelings whose 0-vertex has a smaller id than the vertex
    /// labeled `n - 1`, i.e. one labeling per complementary pair.
    pub modulo_complement: bool,
}

impl SearchOptions {
    pub fn new(mode: SearchMode, constraint: Constraint) -> Self {
        SearchOptions { mode, constraint, node_budget: None, limit: None, modulo_complement: false }
    }

    pub fn with_budget(mut self, nodes: u64) -> Self {
        self.node_budget = Some(nodes);
        self
    }

    pub fn with_limit(mut self, limit: usize) -> Self {
        self.limit = Some(limit);
        self
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchOutcome {
    pub labelings: Vec<Labeling>,
    pub count: u64,
    pub nodes_visited: u64,
}

struct Searcher<'a, F: FnMut(&[usize]) -> bool> {
    t: &'a Tree,
    n: usize,
    order: Vec<usize>,
    labels: Vec<usize>,
    assigned: Vec<bool>,
    partner: Vec<Option<usize>>,
    zero_at: Option<usize>,
    modulo_complement: bool,
    used_labels: u64,
    used_weights: u64,
    nodes: u64,
    budget: Option<u64>,
    emit: F,
}

enum Flow {
    Continue,
    Stop,
}

impl<F: FnMut(&[usize]) -> bool> Searcher<'_, F> {
    fn run(&mut self, depth: usize) -> Result<Flow> {
        self.nodes += 1;
        if let Some(b) = self.budget {
            if self.nodes > b {
                return Err(Error::BudgetExhausted(b));
            }
        }
        if depth == self.n {
            if self.modulo_complement && self.n > 1 {
                let zero = self.labels.iter().position(|&l| l == 0).unwrap();
                let top = self.labels.iter().position(|&l| l == self.n - 1).unwrap();
                if zero > top {
                    return Ok(Flow::Continue);
                }
            }
            return Ok(if (self.emit)(&self.labels) { Flow::Continue } else { Flow::Stop });
        }

        let x = self.order[depth];
        let forced = match (self.zero_at, self.partner[x]) {
            (Some(z), _) if z == x => Some(0),
            (_, Some(p)) if self.assigned[p] => Some(self.n - 1 - self.labels[p]),
            _ => None,
        };
        let candidates = match forced {
            Some(l) => l..l + 1,
            None => 0..self.n,
        };
        for label in candidates {
            if self.used_labels >> label & 1 == 1 {
                continue;
            }
            if self.zero_at.is_some() && label == 0 && self.zero_at != Some(x) {
                continue;
            }
            let mut weights = 0u64;
            let mut clash = false;
            for &y in self.t.neighbors(x) {
                if self.assigned[y] {
                    let bit = 1u64 << label.abs_diff(self.labels[y]);
                    if (self.used_weights | weights) & bit != 0 {
                        clash = true;
                        break;
                    }
                    weights |= bit;
                }
            }
            if clash {
                continue;
            }
            self.labels[x] = label;
            self.assigned[x] = true;
            self.used_labels |= 1 << label;
            self.used_weights |= weights;
            let flow = self.run(depth + 1);
            self.assigned[x] = false;
            self.used_labels &= !(1 << label);
            self.used_weights &= !weights;
            if let Flow::Stop = flow? {
                return Ok(Flow::Stop);
            }
        }
        Ok(Flow::Continue)
    }
}

/// Backtracking search over label assignments.
///
/// Vertices are labeled in order of decreasing degree (ties by id), labels
/// in ascending order, pruning duplicate labels and duplicate weights. The
/// callback receives each satisfying labeling and returns `false` to stop.
/// Returns the number of search nodes visited.
pub fn brute_force_each<F>(t: &Tree, constraint: &Constraint, node_budget: Option<u64>, modulo_complement: bool, emit: F) -> Result<u64>
where
    F: FnMut(&[usize]) -> bool,
{
    let n = t.order();
    if n > MAX_SEARCH_ORDER {
        return Err(Error::OrderTooLarge { n, max: MAX_SEARCH_ORDER });
    }
    if let Some(0) = node_budget {
        return Err(Error::InvalidSpec("node budget must be positive".into()));
    }
    let mut partner = vec![None; n];
    let mut zero_at = None;
    match constraint {
        Constraint::Graceful => {}
        Constraint::StronglyGraceful(m) => {
            m.validate(t)?;
            if !m.is_perfect(n) {
                return Err(Error::NotPerfect);
            }
            partner = m.partners(n);
        }
        Constraint::ZeroAt(v) => {
            if *v >= n {
                return Err(Error::VertexOutOfRange { vertex: *v, n });
            }
            zero_at = Some(*v);
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(t.degree(v)), v));

    let mut s = Searcher {
        t,
        n,
        order,
        labels: vec![0; n],
        assigned: vec![false; n],
        partner,
        zero_at,
        modulo_complement,
        used_labels: 0,
        used_weights: 0,
        nodes: 0,
        budget: node_budget,
        emit,
    };
    s.run(0)?;
    Ok(s.nodes)
}

/// Runs the search in the requested mode.
pub fn brute_force(t: &Tree, opts: &SearchOptions) -> Result<SearchOutcome> {
    let mut out = SearchOutcome::default();
    let mode = opts.mode;
    let limit = opts.limit;
    out.nodes_visited = brute_force_each(t, &opts.constraint, opts.node_budget, opts.modulo_complement, |labels| {
        out.count += 1;
        match mode {
            SearchMode::Count => true,
            SearchMode::First => {
                out.labelings.push(Labeling::new(labels.to_vec()));
                false
            }
            SearchMode::All => {
                out.labelings.push(Labeling::new(labels.to_vec()));
                limit.is_none_or(|l| out.labelings.len() < l)
            }
        }
    })?;
    Ok(out)
}

/// Some graceful labeling of `t`, or `None` if none exists.
pub fn find_graceful(t: &Tree, node_budget: Option<u64>) -> Result<Option<Labeling>> {
    let mut opts = SearchOptions::new(SearchMode::First, Constraint::Graceful);
    opts.node_budget = node_budget;
    Ok(brute_force(t, &opts)?.labelings.into_iter().next())
}

/// Result of a 0-rotatability check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZeroRotation {
    pub rotatable: bool,
    /// Graceful labeling with 0 on each vertex, for every vertex checked
    /// before the first failure.
    pub witnesses: Vec<(usize, Labeling)>,
    pub failing: Option<usize>,
}

/// Decides whether every vertex of `t` can receive label 0 in some
/// graceful labeling.
pub fn is_zero_rotatable(t: &Tree, node_budget: Option<u64>) -> Result<ZeroRotation> {
    let mut witnesses = Vec::with_capacity(t.order());
    for v in 0..t.order() {
        let mut opts = SearchOptions::new(SearchMode::First, Constraint::ZeroAt(v));
        opts.node_budget = node_budget;
        match brute_force(t, &opts)?.labelings.pop() {
            Some(f) => witnesses.push((v, f)),
            None => return Ok(ZeroRotation { rotatable: false, witnesses, failing: Some(v) }),
        }
    }
    Ok(ZeroRotation { rotatable: true, witnesses, failing: None })
}
