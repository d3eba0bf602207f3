//! Test-only ground truth: brute-force oracles that stay independent of
//! the library's optimized search paths, plus seeded random graph
//! generators for the property suites.

#![allow(dead_code)]

use arbor::graph::{Edge, Graph, VertexSet};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Seeded generator for the property suites. The fixed per-suite seed can
/// be shifted globally through ARBOR_TEST_SEED for re-randomized runs.
pub fn rng(seed: u64) -> ChaCha8Rng {
    let shift = std::env::var("ARBOR_TEST_SEED")
        .ok()
        .and_then(|s| s.parse::<u64>().ok())
        .unwrap_or(0);
    ChaCha8Rng::seed_from_u64(seed ^ shift)
}

/// Acyclicity of g[s] from first principles: count edges per component
/// found by a fresh DFS.
fn brute_is_forest(g: &Graph, s: VertexSet) -> bool {
    let mut remaining = s;
    while let Some(start) = remaining.min_elem() {
        let mut comp = VertexSet::single(start);
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for w in g.adj(v).intersect(remaining).iter() {
                if !comp.contains(w) {
                    comp.insert(w);
                    stack.push(w);
                }
            }
        }
        let mut edges = 0;
        for v in comp.iter() {
            edges += g.adj(v).intersect(comp).len();
        }
        edges /= 2;
        if edges != comp.len() - 1 {
            return false;
        }
        remaining = remaining.minus(comp);
    }
    true
}

fn component_edge_counts(g: &Graph, s: VertexSet) -> Vec<usize> {
    let mut out = Vec::new();
    let mut remaining = s;
    while let Some(start) = remaining.min_elem() {
        let mut comp = VertexSet::single(start);
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for w in g.adj(v).intersect(remaining).iter() {
                if !comp.contains(w) {
                    comp.insert(w);
                    stack.push(w);
                }
            }
        }
        let mut edges = 0;
        for v in comp.iter() {
            edges += g.adj(v).intersect(comp).len();
        }
        out.push(edges / 2);
        remaining = remaining.minus(comp);
    }
    out
}

/// All vertex sets inducing k-strong forests, by sheer enumeration of the
/// 2^n subsets.
pub fn brute_all_k_strong_forests(g: &Graph, k: usize) -> Vec<VertexSet> {
    let n = g.n();
    assert!(n <= 20, "brute forest enumeration is for small graphs");
    let mut out = Vec::new();
    for mask in 1u64..(1u64 << n) {
        let s = VertexSet(mask);
        if brute_is_forest(g, s) && component_edge_counts(g, s).iter().all(|&m| m >= k) {
            out.push(s);
        }
    }
    out
}

/// k-valid edges straight from the definition: edges lying in some
/// k-strong forest.
pub fn brute_k_valid_edges(g: &Graph, k: usize) -> Vec<Edge> {
    let mut valid = std::collections::HashSet::new();
    for f in brute_all_k_strong_forests(g, k) {
        valid.extend(g.edges_within(f));
    }
    let mut out: Vec<Edge> = valid.into_iter().collect();
    out.sort();
    out
}

/// Minimum number of k-strong forests covering all k-valid edges, by
/// plain depth-first search over ALL k-strong forests with an increasing
/// size cap. No candidate reduction, no greedy bound, no dominance.
pub fn brute_f_k(g: &Graph, k: usize) -> usize {
    let forests = brute_all_k_strong_forests(g, k);
    let universe = brute_k_valid_edges(g, k);
    if universe.is_empty() {
        return 0;
    }
    let forest_edges: Vec<Vec<Edge>> = forests.iter().map(|&f| g.edges_within(f)).collect();

    fn dfs(
        universe: &[Edge],
        forest_edges: &[Vec<Edge>],
        covered: &mut Vec<bool>,
        remaining: usize,
    ) -> bool {
        let Some(first) = covered.iter().position(|&c| !c) else {
            return true;
        };
        if remaining == 0 {
            return false;
        }
        let target = universe[first];
        for fe in forest_edges {
            if !fe.contains(&target) {
                continue;
            }
            let mut undo = Vec::new();
            for (i, e) in universe.iter().enumerate() {
                if !covered[i] && fe.contains(e) {
                    covered[i] = true;
                    undo.push(i);
                }
            }
            if dfs(universe, forest_edges, covered, remaining - 1) {
                return true;
            }
            for i in undo {
                covered[i] = false;
            }
        }
        false
    }

    for target in 1.. {
        let mut covered = vec![false; universe.len()];
        if dfs(&universe, &forest_edges, &mut covered, target) {
            return target;
        }
    }
    unreachable!()
}

/// Tree-depth by the bare recursion, no memo, no certificate.
pub fn brute_tree_depth(g: &Graph) -> usize {
    fn connected_depth(g: &Graph, s: VertexSet) -> usize {
        if s.len() == 1 {
            return 1;
        }
        let mut best = usize::MAX;
        for r in s.iter() {
            let rest = s.without(r);
            let mut worst = 0;
            let mut remaining = rest;
            while let Some(start) = remaining.min_elem() {
                let mut comp = VertexSet::single(start);
                let mut stack = vec![start];
                while let Some(v) = stack.pop() {
                    for w in g.adj(v).intersect(remaining).iter() {
                        if !comp.contains(w) {
                            comp.insert(w);
                            stack.push(w);
                        }
                    }
                }
                worst = worst.max(connected_depth(g, comp));
                remaining = remaining.minus(comp);
            }
            best = best.min(1 + worst);
        }
        best
    }
    let mut worst = 0;
    let mut remaining = g.vertices();
    while let Some(start) = remaining.min_elem() {
        let mut comp = VertexSet::single(start);
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for w in g.adj(v).intersect(remaining).iter() {
                if !comp.contains(w) {
                    comp.insert(w);
                    stack.push(w);
                }
            }
        }
        worst = worst.max(connected_depth(g, comp));
        remaining = remaining.minus(comp);
    }
    worst
}

fn coloring_is_acyclic(g: &Graph, colors: &[usize], q: usize) -> bool {
    for &(u, v) in g.edges() {
        if colors[u] == colors[v] {
            return false;
        }
    }
    for a in 0..q {
        for b in a + 1..q {
            let s: VertexSet = colors
                .iter()
                .enumerate()
                .filter(|&(_, &c)| c == a || c == b)
                .map(|(v, _)| v)
                .collect();
            if !brute_is_forest(g, s) {
                return false;
            }
        }
    }
    true
}

/// Acyclic chromatic number by enumerating all colorings.
pub fn brute_acyclic_chromatic(g: &Graph) -> usize {
    let n = g.n();
    assert!(n <= 9);
    if n == 0 {
        return 0;
    }
    for q in 1..=n {
        let mut assignment = vec![0usize; n];
        loop {
            if coloring_is_acyclic(g, &assignment, q) {
                return q;
            }
            // advance the base-q odometer
            let mut i = 0;
            while i < n {
                assignment[i] += 1;
                if assignment[i] < q {
                    break;
                }
                assignment[i] = 0;
                i += 1;
            }
            if i == n {
                break;
            }
        }
    }
    unreachable!("n colors always work")
}

/// Whether E(g) splits into `j` (not necessarily induced) forests, by
/// backtracking over edges with canonical class opening.
pub fn brute_forest_partition_exists(g: &Graph, j: usize) -> bool {
    let edges = g.edges().to_vec();
    if edges.is_empty() {
        return true;
    }
    if j == 0 {
        return false;
    }

    fn acyclic_class(g: &Graph, class: &[Edge]) -> bool {
        let mut dsu: Vec<usize> = (0..g.n()).collect();
        fn root(dsu: &mut [usize], mut x: usize) -> usize {
            while dsu[x] != x {
                dsu[x] = dsu[dsu[x]];
                x = dsu[x];
            }
            x
        }
        for &(u, v) in class {
            let (ru, rv) = (root(&mut dsu, u), root(&mut dsu, v));
            if ru == rv {
                return false;
            }
            dsu[ru] = rv;
        }
        true
    }

    fn rec(g: &Graph, edges: &[Edge], assigned: &mut Vec<usize>, idx: usize, used: usize, j: usize) -> bool {
        if idx == edges.len() {
            return true;
        }
        let cap = (used + 1).min(j);
        for c in 0..cap {
            assigned[idx] = c;
            let class: Vec<Edge> = (0..=idx).filter(|&i| assigned[i] == c).map(|i| edges[i]).collect();
            if acyclic_class(g, &class) && rec(g, edges, assigned, idx + 1, used.max(c + 1), j) {
                return true;
            }
        }
        false
    }

    let mut assigned = vec![usize::MAX; edges.len()];
    rec(g, &edges, &mut assigned, 0, 0, j)
}

/// Brute variant of the almost-valid condition: an induced path (anywhere
/// in the subgraph) containing the root and both endpoints of the edge.
pub fn brute_almost_valid(g: &Graph, support: VertexSet, root: usize, e: Edge, k: usize) -> bool {
    let valid = brute_k_valid_within(g, support, k);
    if valid.contains(&e) {
        return false;
    }
    let n_bits: Vec<usize> = support.iter().collect();
    let total = 1u64 << n_bits.len();
    for mask in 1..total {
        let mut s = VertexSet::EMPTY;
        for (i, &v) in n_bits.iter().enumerate() {
            if mask >> i & 1 == 1 {
                s.insert(v);
            }
        }
        if !s.contains(root) || !s.contains(e.0) || !s.contains(e.1) {
            continue;
        }
        // Is g[s] a path?
        if !brute_is_forest(g, s) {
            continue;
        }
        let degs: Vec<usize> = s.iter().map(|v| g.adj(v).intersect(s).len()).collect();
        let comps = component_edge_counts(g, s);
        if comps.len() == 1 && degs.iter().all(|&d| d <= 2) {
            return true;
        }
    }
    false
}

fn brute_k_valid_within(g: &Graph, support: VertexSet, k: usize) -> Vec<Edge> {
    let verts: Vec<usize> = support.iter().collect();
    let mut valid = std::collections::HashSet::new();
    for mask in 1u64..(1u64 << verts.len()) {
        let mut s = VertexSet::EMPTY;
        for (i, &v) in verts.iter().enumerate() {
            if mask >> i & 1 == 1 {
                s.insert(v);
            }
        }
        if brute_is_forest(g, s) && component_edge_counts(g, s).iter().all(|&m| m >= k) {
            valid.extend(g.edges_within(s));
        }
    }
    let mut out: Vec<Edge> = valid.into_iter().collect();
    out.sort();
    out
}

// ---- seeded random generators ----

pub fn gnp(n: usize, percent: u32, rng: &mut ChaCha8Rng) -> Graph {
    let mut pairs = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_range(0..100) < percent {
                pairs.push((u, v));
            }
        }
    }
    Graph::build(n, &pairs).unwrap()
}

/// Connected partial 2-tree on n vertices, never C4: random 2-tree, then
/// random edge deletions, retried until connected and not C4.
pub fn random_partial_2tree(n: usize, rng: &mut ChaCha8Rng) -> Graph {
    assert!(n >= 3);
    loop {
        let mut pairs: Vec<Edge> = vec![(0, 1), (0, 2), (1, 2)];
        let mut h_edges: Vec<Edge> = pairs.clone();
        for v in 3..n {
            let &(a, b) = &h_edges[rng.gen_range(0..h_edges.len())];
            pairs.push((a, v));
            pairs.push((b, v));
            h_edges.push((a, v));
            h_edges.push((b, v));
        }
        let kept: Vec<Edge> = pairs
            .iter()
            .copied()
            .filter(|_| rng.gen_range(0..100) < 80)
            .collect();
        let g = Graph::build(n, &kept).unwrap();
        let is_c4 = g.n() == 4 && g.edge_count() == 4 && (0..4).all(|v| g.degree(v) == 2);
        if g.is_connected() && g.edge_count() >= 1 && !is_c4 {
            return g;
        }
    }
}

/// A random rooted tree of depth at most `d` on `n` vertices plus a
/// random subgraph of its closure; returns the graph and the parent map.
pub fn random_td_graph(
    n: usize,
    d: usize,
    edge_percent: u32,
    rng: &mut ChaCha8Rng,
) -> (Graph, Vec<Option<usize>>) {
    assert!(d >= 1 && n >= 1);
    let mut parent: Vec<Option<usize>> = vec![None; n];
    let mut depth = vec![1usize; n];
    for v in 1..n {
        loop {
            let p = rng.gen_range(0..v);
            if depth[p] < d {
                parent[v] = Some(p);
                depth[v] = depth[p] + 1;
                break;
            }
        }
    }
    let mut pairs = Vec::new();
    for v in 0..n {
        let mut anc = parent[v];
        while let Some(a) = anc {
            if rng.gen_range(0..100) < edge_percent {
                pairs.push((a, v));
            }
            anc = parent[a];
        }
    }
    let g = Graph::build(n, &pairs).unwrap();
    (g, parent)
}

/// Random planar graph on <= n vertices: a stacked triangulation (insert
/// vertices into random triangular faces) followed by random edge
/// deletions. Planarity survives deletion.
pub fn random_planar(n: usize, delete_percent: u32, rng: &mut ChaCha8Rng) -> Graph {
    assert!(n >= 3);
    let mut pairs: Vec<Edge> = vec![(0, 1), (0, 2), (1, 2)];
    let mut faces: Vec<[usize; 3]> = vec![[0, 1, 2], [0, 1, 2]];
    for v in 3..n {
        let f = faces[rng.gen_range(0..faces.len())];
        for &u in &f {
            pairs.push((u, v));
        }
        faces.push([f[0], f[1], v]);
        faces.push([f[0], f[2], v]);
        faces.push([f[1], f[2], v]);
    }
    let kept: Vec<Edge> = pairs
        .iter()
        .copied()
        .filter(|_| rng.gen_range(0..100) >= delete_percent)
        .collect();
    Graph::build(n, &kept).unwrap()
}
