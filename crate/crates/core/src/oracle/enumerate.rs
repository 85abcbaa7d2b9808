use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::tree::Tree;

/// Largest order accepted by [`enumerate_trees`].
pub const MAX_ENUMERATION_ORDER: usize = 13;

/// Largest order accepted by [`enumerate_trees_by_prufer`], which walks
/// all `n^(n-2)` labeled trees.
pub const MAX_PRUFER_ENUMERATION_ORDER: usize = 9;

/// Decodes a Prüfer sequence (length `n - 2`, entries in `0..n`) into the
/// labeled tree it encodes.
pub fn prufer_decode(seq: &[usize], n: usize) -> Result<Tree> {
    match n {
        0 => return Err(Error::Empty),
        1 => return Ok(Tree::single_vertex()),
        _ => {}
    }
    if seq.len() != n - 2 {
        return Err(Error::InvalidSpec(format!("Prüfer sequence for n = {n} must have {} entries", n - 2)));
    }
    if let Some(&bad) = seq.iter().find(|&&x| x >= n) {
        return Err(Error::VertexOutOfRange { vertex: bad, n });
    }
    let mut degree = vec![1usize; n];
    for &x in seq {
        degree[x] += 1;
    }
    let mut leaves: std::collections::BTreeSet<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    let mut edges = Vec::with_capacity(n - 1);
    for &x in seq {
        let leaf = leaves.pop_first().expect("a leaf always exists");
        edges.push((leaf, x));
        degree[x] -= 1;
        if degree[x] == 1 {
            leaves.insert(x);
        }
    }
    let a = leaves.pop_first().unwrap();
    let b = leaves.pop_first().unwrap();
    edges.push((a, b));
    Tree::new(n, edges)
}

/// Canonical representative of the isomorphism class of `t`: rooted at the
/// centroid with the smallest code, vertices numbered breadth-first with
/// children in code order.
pub fn canonical_form(t: &Tree) -> Tree {
    let n = t.order();
    if n == 1 {
        return Tree::single_vertex();
    }
    let root = t
        .centroids()
        .into_iter()
        .min_by_key(|&c| t.rooted_code(c))
        .unwrap();

    // subtree codes below the chosen root
    let mut parent = vec![usize::MAX; n];
    let mut order = vec![root];
    let mut i = 0;
    while i < order.len() {
        let x = order[i];
        i += 1;
        for &y in t.neighbors(x) {
            if y != parent[x] {
                parent[y] = x;
                order.push(y);
            }
        }
    }
    let mut code: Vec<Vec<u8>> = vec![Vec::new(); n];
    for &v in order.iter().rev() {
        let mut kids: Vec<&[u8]> = t
            .neighbors(v)
            .iter()
            .filter(|&&w| w != parent[v])
            .map(|&w| code[w].as_slice())
            .collect();
        kids.sort_unstable();
        let mut c = vec![b'('];
        for k in kids {
            c.extend_from_slice(k);
        }
        c.push(b')');
        code[v] = c;
    }

    let mut new_id = vec![usize::MAX; n];
    new_id[root] = 0;
    let mut queue = std::collections::VecDeque::from([root]);
    let mut next = 1;
    let mut edges = Vec::with_capacity(n - 1);
    while let Some(x) = queue.pop_front() {
        let mut kids: Vec<usize> = t.neighbors(x).iter().copied().filter(|&w| w != parent[x]).collect();
        kids.sort_by(|&a, &b| code[a].cmp(&code[b]));
        for k in kids {
            new_id[k] = next;
            next += 1;
            edges.push((new_id[x], new_id[k]));
            queue.push_back(k);
        }
    }
    Tree::new(n, edges).expect("relabeling preserves the tree")
}

/// One canonical tree per isomorphism class on `n` vertices, ordered by
/// canonical code.
///
/// Every tree on `n` vertices arises from one on `n - 1` vertices by
/// attaching a leaf, so the classes are grown order by order and
/// deduplicated with [`Tree::canonical_code`].
pub fn enumerate_trees(n: usize) -> Result<Vec<Tree>> {
    if n == 0 {
        return Err(Error::Empty);
    }
    if n > MAX_ENUMERATION_ORDER {
        return Err(Error::OrderTooLarge { n, max: MAX_ENUMERATION_ORDER });
    }
    let mut level: BTreeMap<Vec<u8>, Tree> = BTreeMap::new();
    level.insert(Tree::single_vertex().canonical_code(), Tree::single_vertex());
    for k in 2..=n {
        let mut next = BTreeMap::new();
        for t in level.values() {
            for v in 0..k - 1 {
                let mut edges = t.edges().to_vec();
                edges.push((v, k - 1));
                let grown = Tree::new(k, edges)?;
                next.entry(grown.canonical_code()).or_insert_with(|| canonical_form(&grown));
            }
        }
        level = next;
    }
    Ok(level.into_values().collect())
}

/// Same classes as [`enumerate_trees`], found by decoding every Prüfer
/// sequence. Exponential; kept as an independent cross-check.
pub fn enumerate_trees_by_prufer(n: usize) -> Result<Vec<Tree>> {
    if n == 0 {
        return Err(Error::Empty);
    }
    if n > MAX_PRUFER_ENUMERATION_ORDER {
        return Err(Error::OrderTooLarge { n, max: MAX_PRUFER_ENUMERATION_ORDER });
    }
    let mut seen: BTreeMap<Vec<u8>, Tree> = BTreeMap::new();
    if n <= 2 {
        let t = prufer_decode(&[], n)?;
        seen.insert(t.canonical_code(), canonical_form(&t));
        return Ok(seen.into_values().collect());
    }
    let len = n - 2;
    let mut seq = vec![0usize; len];
    loop {
        let t = prufer_decode(&seq, n)?;
        seen.entry(t.canonical_code()).or_insert_with(|| canonical_form(&t));
        // odometer increment
        let mut i = 0;
        while i < len {
            seq[i] += 1;
            if seq[i] < n {
                break;
            }
            seq[i] = 0;
            i += 1;
        }
        if i == len {
            break;
        }
    }
    Ok(seen.into_values().collect())
}
