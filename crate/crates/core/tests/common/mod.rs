//! Oracles shared by the integration tests. They are written against the
//! raw edge list and do not call the library's verifiers.

#![allow(dead_code)]

use graceful_core::Tree;

/// Labels are a permutation of 0..n and weights a permutation of 1..n-1.
pub fn is_graceful(t: &Tree, labels: &[usize]) -> bool {
    let n = t.order();
    if labels.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    for &l in labels {
        if l >= n || seen[l] {
            return false;
        }
        seen[l] = true;
    }
    let mut weight_seen = vec![false; n];
    for &(a, b) in t.edges() {
        let w = labels[a].abs_diff(labels[b]);
        if w == 0 || weight_seen[w] {
            return false;
        }
        weight_seen[w] = true;
    }
    true
}

/// Every matching of `t` as a list of edges.
pub fn all_matchings(t: &Tree) -> Vec<Vec<(usize, usize)>> {
    fn go(edges: &[(usize, usize)], i: usize, used: &mut Vec<bool>, cur: &mut Vec<(usize, usize)>, out: &mut Vec<Vec<(usize, usize)>>) {
        if i == edges.len() {
            out.push(cur.clone());
            return;
        }
        go(edges, i + 1, used, cur, out);
        let (a, b) = edges[i];
        if !used[a] && !used[b] {
            used[a] = true;
            used[b] = true;
            cur.push((a.min(b), a.max(b)));
            go(edges, i + 1, used, cur, out);
            cur.pop();
            used[a] = false;
            used[b] = false;
        }
    }
    let mut out = Vec::new();
    go(t.edges(), 0, &mut vec![false; t.order()], &mut Vec::new(), &mut out);
    for m in &mut out {
        m.sort_unstable();
    }
    out
}

pub fn uncovered(n: usize, m: &[(usize, usize)]) -> Vec<usize> {
    let mut covered = vec![false; n];
    for &(a, b) in m {
        covered[a] = true;
        covered[b] = true;
    }
    (0..n).filter(|&v| !covered[v]).collect()
}

/// Quotient of `t` by the matched edges, as (order, edges).
pub fn quotient(t: &Tree, m: &[(usize, usize)]) -> (usize, Vec<(usize, usize)>) {
    let n = t.order();
    let mut rep: Vec<usize> = (0..n).collect();
    for &(a, b) in m {
        rep[b] = a;
        rep[a] = a;
    }
    let mut ids: Vec<usize> = rep.clone();
    ids.sort_unstable();
    ids.dedup();
    let id = |v: usize| ids.binary_search(&rep[v]).unwrap();
    let edges = t
        .edges()
        .iter()
        .filter(|&&(a, b)| rep[a] != rep[b])
        .map(|&(a, b)| (id(a), id(b)))
        .collect();
    (ids.len(), edges)
}

/// Deleting every leaf leaves a path or nothing.
pub fn is_caterpillar(n: usize, edges: &[(usize, usize)]) -> bool {
    let mut deg = vec![0usize; n];
    for &(a, b) in edges {
        deg[a] += 1;
        deg[b] += 1;
    }
    let inner: Vec<bool> = deg.iter().map(|&d| d >= 2).collect();
    let mut inner_deg = vec![0usize; n];
    for &(a, b) in edges {
        if inner[a] && inner[b] {
            inner_deg[a] += 1;
            inner_deg[b] += 1;
        }
    }
    // the inner vertices of a tree induce a subtree; it is a path iff no
    // inner vertex has three inner neighbours
    (0..n).filter(|&v| inner[v]).all(|v| inner_deg[v] <= 2)
}

/// Eccentricity of every vertex by BFS from each.
pub fn eccentricities(t: &Tree) -> Vec<usize> {
    let n = t.order();
    (0..n)
        .map(|s| {
            let mut dist = vec![usize::MAX; n];
            dist[s] = 0;
            let mut queue = std::collections::VecDeque::from([s]);
            while let Some(x) = queue.pop_front() {
                for &y in t.neighbors(x) {
                    if dist[y] == usize::MAX {
                        dist[y] = dist[x] + 1;
                        queue.push_back(y);
                    }
                }
            }
            dist.into_iter().max().unwrap()
        })
        .collect()
}

/// Vertices that end some longest path.
pub fn longest_path_ends(t: &Tree) -> Vec<usize> {
    let ecc = eccentricities(t);
    let d = ecc.iter().copied().max().unwrap();
    (0..t.order()).filter(|&v| ecc[v] == d).collect()
}
