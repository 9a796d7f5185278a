//! Hopcroft–Karp on the split graph of a strict order, plus König recovery
//! of a maximum antichain from the resulting matching.

use std::collections::VecDeque;

const NIL: usize = usize::MAX;

/// Maximum matching of a bipartite graph with `adj[left] = [right, ...]`.
/// Returns `mate_left[i]`, the right vertex matched to left `i` or `None`.
pub fn hopcroft_karp(adj: &[Vec<usize>], n_right: usize) -> Vec<Option<usize>> {
    let n_left = adj.len();
    let mut mate_l = vec![NIL; n_left];
    let mut mate_r = vec![NIL; n_right];
    let mut dist = vec![0usize; n_left];

    loop {
        // BFS layers from free left vertices
        let mut queue = VecDeque::new();
        for u in 0..n_left {
            if mate_l[u] == NIL {
                dist[u] = 0;
                queue.push_back(u);
            } else {
                dist[u] = usize::MAX;
            }
        }
        let mut found = false;
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                let w = mate_r[v];
                if w == NIL {
                    found = true;
                } else if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        if !found {
            break;
        }
        let mut it = vec![0usize; n_left];
        for u in 0..n_left {
            if mate_l[u] == NIL {
                augment(u, adj, &mut mate_l, &mut mate_r, &mut dist, &mut it);
            }
        }
    }
    mate_l
        .into_iter()
        .map(|v| if v == NIL { None } else { Some(v) })
        .collect()
}

// Iterative DFS along the BFS layering so deep posets cannot blow the stack.
fn augment(
    root: usize,
    adj: &[Vec<usize>],
    mate_l: &mut [usize],
    mate_r: &mut [usize],
    dist: &mut [usize],
    it: &mut [usize],
) -> bool {
    let mut stack = vec![root];
    while let Some(&u) = stack.last() {
        if it[u] == adj[u].len() {
            dist[u] = usize::MAX;
            stack.pop();
            continue;
        }
        let v = adj[u][it[u]];
        let w = mate_r[v];
        if w == NIL {
            // flip the path recorded on the stack
            let mut right = v;
            while let Some(x) = stack.pop() {
                let prev = mate_l[x];
                mate_l[x] = right;
                mate_r[right] = x;
                right = prev;
            }
            return true;
        }
        // a dead-end w gets dist = MAX, so revisiting this edge advances it[u]
        if dist[w] != usize::MAX && dist[w] == dist[u] + 1 {
            stack.push(w);
        } else {
            it[u] += 1;
        }
    }
    false
}

/// Minimum chain partition and maximum antichain of a strict order on
/// `0..n`. `less` must be irreflexive and transitive.
pub fn dilworth<F>(n: usize, less: F) -> (Vec<usize>, Vec<Vec<usize>>)
where
    F: Fn(usize, usize) -> bool,
{
    let adj: Vec<Vec<usize>> = (0..n)
        .map(|i| (0..n).filter(|&j| i != j && less(i, j)).collect())
        .collect();
    let mate = hopcroft_karp(&adj, n);

    // chains follow matched edges i -> mate[i]
    let mut has_pred = vec![false; n];
    for m in mate.iter().flatten() {
        has_pred[*m] = true;
    }
    let mut chains = Vec::new();
    for start in 0..n {
        if has_pred[start] {
            continue;
        }
        let mut chain = vec![start];
        let mut cur = start;
        while let Some(next) = mate[cur] {
            chain.push(next);
            cur = next;
        }
        chains.push(chain);
    }

    // König: alternating reachability from free left vertices
    let mut mate_r = vec![NIL; n];
    for (i, m) in mate.iter().enumerate() {
        if let Some(j) = m {
            mate_r[*j] = i;
        }
    }
    let mut seen_l = vec![false; n];
    let mut seen_r = vec![false; n];
    let mut queue: VecDeque<usize> = (0..n).filter(|&i| mate[i].is_none()).collect();
    for &i in &queue {
        seen_l[i] = true;
    }
    while let Some(u) = queue.pop_front() {
        for &v in &adj[u] {
            if seen_r[v] || mate[u] == Some(v) {
                continue;
            }
            seen_r[v] = true;
            let w = mate_r[v];
            if w != NIL && !seen_l[w] {
                seen_l[w] = true;
                queue.push_back(w);
            }
        }
    }
    // cover = (L \ Z) u (R n Z); antichain = elements outside the cover on both sides
    let antichain = (0..n).filter(|&i| seen_l[i] && !seen_r[i]).collect();
    (antichain, chains)
}
