//! Brute-force reference implementations, written without the library's
//! algorithms so they can check it.
#![allow(dead_code)]

use std::collections::{BTreeSet, VecDeque};

use maxtree_core::{EdgeSet, Instance, UndirectedGraph};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Connected components of `(V, subset)` by breadth-first search.
pub fn bfs_components(graph: &UndirectedGraph, subset: &EdgeSet) -> usize {
    let n = graph.vertex_count();
    let mut adj = vec![Vec::new(); n];
    for e in subset.iter() {
        let (u, v) = graph.edge(e).ends;
        adj[u].push(v);
        adj[v].push(u);
    }
    let mut seen = vec![false; n];
    let mut count = 0;
    for s in 0..n {
        if seen[s] {
            continue;
        }
        count += 1;
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            for &y in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
    }
    count
}

/// Number of spanning trees from the Laplacian determinant (Bareiss elimination).
pub fn matrix_tree_count(graph: &UndirectedGraph) -> i128 {
    let n = graph.vertex_count();
    if n == 1 {
        return 1;
    }
    let mut lap = vec![vec![0i128; n]; n];
    for e in graph.edges() {
        let (u, v) = e.ends;
        lap[u][u] += 1;
        lap[v][v] += 1;
        lap[u][v] -= 1;
        lap[v][u] -= 1;
    }
    let k = n - 1;
    let mut m: Vec<Vec<i128>> = lap[1..].iter().map(|row| row[1..].to_vec()).collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for i in 0..k {
        if m[i][i] == 0 {
            match (i + 1..k).find(|&r| m[r][i] != 0) {
                Some(r) => {
                    m.swap(i, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for r in i + 1..k {
            for c in i + 1..k {
                m[r][c] = (m[r][c] * m[i][i] - m[r][i] * m[i][c]) / prev;
            }
        }
        prev = m[i][i];
    }
    sign * m[k - 1][k - 1]
}

/// All edge subsets of size |V|-1 that connect the graph.
pub fn brute_spanning_trees(graph: &UndirectedGraph) -> BTreeSet<Vec<usize>> {
    let m = graph.edge_count();
    let need = graph.vertex_count() - 1;
    let mut out = BTreeSet::new();
    for mask in 0u32..(1 << m) {
        if mask.count_ones() as usize != need {
            continue;
        }
        let set = EdgeSet::from_indices(m, (0..m).filter(|&e| mask >> e & 1 == 1));
        if bfs_components(graph, &set) == 1 {
            out.insert(set.iter().collect());
        }
    }
    out
}

/// Strict closure matrix: `reach[x][y]` iff `x ≻ ... ≻ y`.
pub fn strict_reachability(inst: &Instance) -> Vec<Vec<bool>> {
    let rel = inst.relation();
    let n = rel.len();
    let mut reach = vec![vec![false; n]; n];
    for (x, y) in rel.strict_pairs() {
        reach[x][y] = true;
    }
    for k in 0..n {
        let through = reach[k].clone();
        for row in reach.iter_mut() {
            if row[k] {
                for (cell, &next) in row.iter_mut().zip(&through) {
                    *cell |= next;
                }
            }
        }
    }
    reach
}

/// Every total order compatible with the strict pairs, by recursion over
/// the "no unplaced strict predecessor" rule.
pub fn brute_linear_extensions(inst: &Instance) -> Vec<Vec<usize>> {
    let rel = inst.relation();
    let n = rel.len();
    let pairs: Vec<(usize, usize)> = rel.strict_pairs().collect();
    let mut out = Vec::new();
    let mut order = Vec::with_capacity(n);
    let mut used = vec![false; n];
    fn go(
        n: usize,
        pairs: &[(usize, usize)],
        order: &mut Vec<usize>,
        used: &mut [bool],
        out: &mut Vec<Vec<usize>>,
    ) {
        if order.len() == n {
            out.push(order.clone());
            return;
        }
        for e in 0..n {
            if used[e] || pairs.iter().any(|&(x, y)| y == e && !used[x]) {
                continue;
            }
            used[e] = true;
            order.push(e);
            go(n, pairs, order, used, out);
            order.pop();
            used[e] = false;
        }
    }
    go(n, &pairs, &mut order, &mut used, &mut out);
    out
}

/// Kruskal with a naive labelling instead of union-find.
pub fn greedy_tree(graph: &UndirectedGraph, order: &[usize]) -> Option<Vec<usize>> {
    let mut label: Vec<usize> = (0..graph.vertex_count()).collect();
    let mut tree = Vec::new();
    for &e in order {
        let (u, v) = graph.edge(e).ends;
        let (lu, lv) = (label[u], label[v]);
        if lu != lv {
            for l in label.iter_mut() {
                if *l == lv {
                    *l = lu;
                }
            }
            tree.push(e);
        }
    }
    tree.sort_unstable();
    (tree.len() + 1 == graph.vertex_count()).then_some(tree)
}

/// Maximal spanning trees as the greedy trees of all linear extensions.
pub fn brute_maximal_trees(inst: &Instance) -> BTreeSet<Vec<usize>> {
    brute_linear_extensions(inst)
        .iter()
        .filter_map(|ext| greedy_tree(inst.graph(), ext))
        .collect()
}

pub fn union_of(trees: &BTreeSet<Vec<usize>>) -> BTreeSet<usize> {
    trees.iter().flatten().copied().collect()
}

pub fn as_indices(set: &EdgeSet) -> Vec<usize> {
    set.iter().collect()
}

/// Integer criteria in `0..=max` for every edge of the graph.
pub fn random_criteria<R: rand::Rng>(
    rng: &mut R,
    graph: &UndirectedGraph,
    criteria: usize,
    max: i64,
) -> maxtree_core::multiobjective::CriteriaMatrix {
    let names = (0..criteria).map(|k| format!("k{k}")).collect();
    let values = graph
        .edge_ids()
        .map(|id| {
            (
                id.0.clone(),
                (0..criteria).map(|_| rng.random_range(0..=max)).collect(),
            )
        })
        .collect();
    maxtree_core::multiobjective::CriteriaMatrix::new(graph, names, &values).unwrap()
}

/// Trees of maximum total utility, by brute force over edge subsets.
pub fn brute_best_trees(graph: &UndirectedGraph, utility: &[i64]) -> BTreeSet<Vec<usize>> {
    let trees = brute_spanning_trees(graph);
    let total = |t: &Vec<usize>| t.iter().map(|&e| utility[e]).sum::<i64>();
    let best = trees.iter().map(total).max();
    trees
        .iter()
        .filter(|t| Some(total(t)) == best)
        .cloned()
        .collect()
}

/// Explores every state reachable in exact mode by commits and exclusions
/// and checks the session guarantees. Returns the number of states visited.
pub fn check_session_properties(inst: &Instance) -> Result<usize, String> {
    use maxtree_core::session::{
        Action, ExactModeConfig, Mode, SessionEngine, SessionState, Status,
    };
    use std::collections::HashSet;

    let config = ExactModeConfig::default();
    let exact =
        SessionEngine::new(inst.clone(), Some(Mode::Exact), &config).map_err(|e| e.to_string())?;
    let fast =
        SessionEngine::new(inst.clone(), Some(Mode::Fast), &config).map_err(|e| e.to_string())?;
    let graph = inst.graph();
    let maximal: BTreeSet<BTreeSet<String>> = brute_maximal_trees(inst)
        .iter()
        .map(|t| t.iter().map(|&e| graph.edge_id(e).0.clone()).collect())
        .collect();

    let key = |s: &SessionState| (s.committed.clone(), s.excluded.clone());
    let mut seen = HashSet::new();
    let mut completed_by_commits = BTreeSet::new();
    let start = (exact.start("x", "i"), fast.start("f", "i"), true);
    seen.insert(key(&start.0));
    let mut queue = VecDeque::from([start]);
    let mut visited = 0usize;
    while let Some((state, fast_state, commits_only)) = queue.pop_front() {
        visited += 1;
        if fast_state.committed != state.committed || fast_state.excluded != state.excluded {
            return Err("fast replay diverged".into());
        }
        if !fast_state.consistent_now.is_superset(&state.consistent_now) {
            return Err(format!(
                "fast {:?} misses exact {:?} at committed {:?} excluded {:?}",
                fast_state.consistent_now, state.consistent_now, state.committed, state.excluded
            ));
        }
        if state.status == Status::Complete {
            if !maximal.contains(&state.committed) {
                return Err(format!(
                    "completed tree {:?} is not maximal",
                    state.committed
                ));
            }
            if commits_only {
                completed_by_commits.insert(state.committed.clone());
            }
            continue;
        }
        if state.status == Status::DeadEnd {
            continue;
        }
        let mut actions = Vec::new();
        for id in graph.edge_ids() {
            let id = id.as_str();
            if state.committed.contains(id) || state.excluded.contains(id) {
                continue;
            }
            if state.consistent_now.contains(id) {
                actions.push((Action::commit(id), commits_only));
            }
            actions.push((Action::exclude(id), false));
        }
        for (action, still_commits) in actions {
            let next = exact
                .apply(&state, &action)
                .map_err(|e| format!("exact {action:?}: {e}"))?;
            let next_fast = fast
                .apply(&fast_state, &action)
                .map_err(|e| format!("fast replay of {action:?}: {e}"))?;
            let back = exact
                .apply(&next, &Action::undo())
                .map_err(|e| e.to_string())?;
            if back != state {
                return Err(format!("undo after {action:?} does not restore the state"));
            }
            if seen.insert(key(&next)) {
                queue.push_back((next, next_fast, still_commits));
            } else if still_commits && next.status == Status::Complete {
                completed_by_commits.insert(next.committed.clone());
            }
        }
    }
    if completed_by_commits != maximal {
        return Err(format!(
            "trees reached by commits {completed_by_commits:?} differ from maximal trees {maximal:?}"
        ));
    }
    Ok(visited)
}
