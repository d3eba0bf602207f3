//! k-valid edge detection via exhaustive witness-tree search, and
//! k-strong-forest recognition.
//!
//! An edge is k-valid exactly when it lies in an induced tree with `k`
//! edges (a witness tree). The search grows connected induced acyclic
//! vertex sets outward from a start set, adding only vertices with exactly
//! one neighbor in the current set (anything else closes a cycle), and
//! deduplicates visited sets by their bitset. The same enumerator backs
//! the oracle and the tree-depth machinery.

use crate::budget::{Budget, Meter};
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, VertexSet};
use std::collections::HashSet;

/// An induced tree with exactly `k` edges certifying that `certified` is
/// k-valid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessTree {
    pub vertices: VertexSet,
    pub edges: Vec<Edge>,
    pub certified: Edge,
}

impl WitnessTree {
    pub fn k(&self) -> usize {
        self.edges.len()
    }

    /// Checks the witness-tree invariants against `g`.
    pub fn validate(&self, g: &Graph) -> bool {
        let within = g.edges_within(self.vertices);
        within.len() == self.vertices.len() - 1
            && within == self.edges
            && g.is_connected_within(self.vertices)
            && self.edges.contains(&self.certified)
    }
}

/// Visits every vertex set `S ⊇ start` with `|S| <= max_size` such that
/// the induced subgraph on `S` (inside `within`) is a tree, assuming
/// `start` itself induces a tree. Each set is visited exactly once.
pub(crate) fn enumerate_trees(
    g: &Graph,
    within: VertexSet,
    start: VertexSet,
    max_size: usize,
    meter: &mut Meter,
    visit: &mut dyn FnMut(VertexSet),
) -> Result<()> {
    let mut visited: HashSet<u64> = HashSet::new();
    let mut stack = vec![start];
    visited.insert(start.0);
    while let Some(s) = stack.pop() {
        meter
            .tick()
            .map_err(|_| Error::Budget("induced-tree enumeration".into()))?;
        visit(s);
        if s.len() >= max_size {
            continue;
        }
        let mut boundary = VertexSet::EMPTY;
        for v in s.iter() {
            boundary = boundary.union(g.adj(v));
        }
        boundary = boundary.intersect(within).minus(s);
        for w in boundary.iter() {
            // Exactly one neighbor in s keeps the induced subgraph a tree.
            if g.adj(w).intersect(s).len() == 1 {
                let next = s.with(w);
                if visited.insert(next.0) {
                    stack.push(next);
                }
            }
        }
    }
    Ok(())
}

/// Visits every induced path with endpoint `r` inside `within` (including
/// the trivial path `{r}`), as `(vertex set, far endpoint)`.
pub(crate) fn enumerate_paths_from(
    g: &Graph,
    within: VertexSet,
    r: usize,
    meter: &mut Meter,
    visit: &mut dyn FnMut(VertexSet, usize),
) -> Result<()> {
    let mut visited: HashSet<u64> = HashSet::new();
    let start = VertexSet::single(r);
    let mut stack = vec![(start, r)];
    visited.insert(start.0);
    while let Some((s, tip)) = stack.pop() {
        meter
            .tick()
            .map_err(|_| Error::Budget("induced-path enumeration".into()))?;
        visit(s, tip);
        for w in g.adj(tip).intersect(within).minus(s).iter() {
            if g.adj(w).intersect(s) == VertexSet::single(tip) {
                let next = s.with(w);
                if visited.insert(next.0) {
                    stack.push((next, w));
                }
            }
        }
    }
    Ok(())
}

fn witness_from_set(g: &Graph, s: VertexSet, e: Edge) -> WitnessTree {
    WitnessTree {
        vertices: s,
        edges: g.edges_within(s),
        certified: e,
    }
}

/// Searches for a witness tree for `e` at strength `k` inside `within`.
/// Returns the lexicographically least one (by sorted vertex list) so
/// repeated runs pick identical certificates.
pub fn find_witness_tree_within(
    g: &Graph,
    within: VertexSet,
    e: Edge,
    k: usize,
    meter: &mut Meter,
) -> Result<Option<WitnessTree>> {
    let (u, v) = e;
    if !g.has_edge(u, v) {
        return Err(Error::Input(format!("({u}, {v}) is not an edge")));
    }
    if k == 0 {
        return Err(Error::Input("k must be at least 1".into()));
    }
    if !within.contains(u) || !within.contains(v) {
        return Ok(None);
    }
    if k + 1 > within.len() {
        // No witness can exist; not an error.
        return Ok(None);
    }
    let mut best: Option<VertexSet> = None;
    let start = VertexSet::single(u).with(v);
    enumerate_trees(g, within, start, k + 1, meter, &mut |s| {
        if s.len() == k + 1 {
            let better = match best {
                None => true,
                Some(b) => s.to_vec() < b.to_vec(),
            };
            if better {
                best = Some(s);
            }
        }
    })?;
    Ok(best.map(|s| witness_from_set(g, s, e)))
}

/// Witness tree for `e` at strength `k`, if any, under the default budget.
pub fn find_witness_tree(g: &Graph, e: Edge, k: usize) -> Result<Option<WitnessTree>> {
    find_witness_tree_within(g, g.vertices(), e, k, &mut Budget::default().meter())
}

/// All k-valid edges of the induced subgraph on `within`, in lexicographic
/// order. One sweep enumerates every induced tree on `k+1` vertices and
/// marks its edges.
pub fn k_valid_edges_within(
    g: &Graph,
    within: VertexSet,
    k: usize,
    meter: &mut Meter,
) -> Result<Vec<Edge>> {
    if k == 0 {
        return Err(Error::Input("k must be at least 1".into()));
    }
    if k + 1 > within.len() {
        return Ok(Vec::new());
    }
    let mut valid: HashSet<Edge> = HashSet::new();
    let mut visited: HashSet<u64> = HashSet::new();
    let mut stack: Vec<VertexSet> = Vec::new();
    for &(u, v) in &g.edges_within(within) {
        let s = VertexSet::single(u).with(v);
        if visited.insert(s.0) {
            stack.push(s);
        }
    }
    while let Some(s) = stack.pop() {
        meter
            .tick()
            .map_err(|_| Error::Budget("k-valid edge sweep".into()))?;
        if s.len() == k + 1 {
            valid.extend(g.edges_within(s));
            continue;
        }
        let mut boundary = VertexSet::EMPTY;
        for v in s.iter() {
            boundary = boundary.union(g.adj(v));
        }
        boundary = boundary.intersect(within).minus(s);
        for w in boundary.iter() {
            if g.adj(w).intersect(s).len() == 1 {
                let next = s.with(w);
                if visited.insert(next.0) {
                    stack.push(next);
                }
            }
        }
    }
    let mut out: Vec<Edge> = valid.into_iter().collect();
    out.sort();
    Ok(out)
}

/// All k-valid edges of `g` under the default budget.
pub fn k_valid_edges(g: &Graph, k: usize) -> Result<Vec<Edge>> {
    k_valid_edges_within(g, g.vertices(), k, &mut Budget::default().meter())
}

/// Whether `g[s]` is a forest in which every component has at least `k`
/// edges.
pub fn is_k_strong_forest(g: &Graph, s: VertexSet, k: usize) -> bool {
    debug_assert!(k >= 1);
    let (acyclic, comps) = g.is_induced_forest(s);
    acyclic && comps.iter().all(|&(_, m)| m >= k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    #[test]
    fn any_edge_is_its_own_one_witness() {
        let g = Graph::build(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        for &e in g.edges() {
            let w = find_witness_tree(&g, e, 1).unwrap().unwrap();
            assert_eq!(w.vertices, VertexSet::single(e.0).with(e.1));
            assert!(w.validate(&g));
        }
    }

    #[test]
    fn wheel_spokes_and_rim_thresholds() {
        let g = families::wheel(7).unwrap();
        // Spokes touch the hub (vertex 0); rim edges do not.
        for &(u, v) in g.edges() {
            let is_spoke = u == 0;
            if is_spoke {
                assert!(find_witness_tree(&g, (u, v), 3).unwrap().is_some());
                assert!(find_witness_tree(&g, (u, v), 4).unwrap().is_none());
            } else {
                assert!(find_witness_tree(&g, (u, v), 5).unwrap().is_some());
                assert!(find_witness_tree(&g, (u, v), 6).unwrap().is_none());
            }
            let _ = v;
        }
    }

    #[test]
    fn k_valid_edge_examples() {
        let k3 = Graph::build(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert!(k_valid_edges(&k3, 2).unwrap().is_empty());

        let c4 = Graph::build(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert_eq!(k_valid_edges(&c4, 2).unwrap().len(), 4);

        // Clique on 4 vertices plus a 2-edge tail: every edge at the
        // attachment vertex and every tail edge is 3-valid.
        let g = families::clique_plus_tail(3, 3).unwrap();
        let valid = k_valid_edges(&g, 3).unwrap();
        for e in &valid {
            assert!(e.0 == 3 || e.1 >= 3, "unexpected 3-valid edge {e:?}");
        }
        assert_eq!(valid.len(), 3 + 2);
    }

    #[test]
    fn monotone_in_k() {
        let g = families::wheel(6).unwrap();
        let mut prev = k_valid_edges(&g, 1).unwrap();
        for k in 2..6 {
            let cur = k_valid_edges(&g, k).unwrap();
            assert!(cur.iter().all(|e| prev.contains(e)), "k={k} not nested");
            prev = cur;
        }
    }

    #[test]
    fn oversized_k_is_empty_not_an_error() {
        let k3 = Graph::build(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert!(k_valid_edges(&k3, 10).unwrap().is_empty());
        assert!(find_witness_tree(&k3, (0, 1), 10).unwrap().is_none());
    }

    #[test]
    fn strong_forest_recognition() {
        let p3 = Graph::build(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(is_k_strong_forest(&p3, p3.vertices(), 2));
        assert!(!is_k_strong_forest(&p3, VertexSet::single(0), 1));

        let w = families::wheel(7).unwrap();
        // Six consecutive rim vertices: an induced 5-edge path.
        let f1: VertexSet = [1, 2, 3, 4, 5, 6].into_iter().collect();
        assert!(is_k_strong_forest(&w, f1, 4));
        assert!(is_k_strong_forest(&w, f1, 5));
        assert!(!is_k_strong_forest(&w, f1, 6));
    }

    #[test]
    fn leaf_removal_shrinks_witnesses() {
        // For every witness tree with k >= 2, deleting some leaf not on the
        // certified edge yields a witness at k-1.
        let g = families::wheel(7).unwrap();
        for &e in g.edges() {
            for k in 2..=5 {
                let Some(w) = find_witness_tree(&g, e, k).unwrap() else {
                    continue;
                };
                let mut shrunk = false;
                for v in w.vertices.iter() {
                    if v == e.0 || v == e.1 {
                        continue;
                    }
                    let rest = w.vertices.without(v);
                    let (ok, comps) = g.is_induced_forest(rest);
                    if ok && comps.len() == 1 && comps[0].1 == k - 1 {
                        shrunk = true;
                        break;
                    }
                }
                assert!(shrunk, "no leaf removal worked for {e:?} at k={k}");
            }
        }
    }

    #[test]
    fn two_valid_complements_twins_on_small_graphs() {
        // Deterministic sample of small graphs: k=2 validity is exactly the
        // complement of the twin edges.
        let mut seed = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            seed ^= seed << 13;
            seed ^= seed >> 7;
            seed ^= seed << 17;
            seed
        };
        for n in 2..=8usize {
            for _ in 0..40 {
                let mut pairs = Vec::new();
                for u in 0..n {
                    for v in u + 1..n {
                        if next() % 100 < 45 {
                            pairs.push((u, v));
                        }
                    }
                }
                let g = Graph::build(n, &pairs).unwrap();
                let twins: Vec<Edge> = g.twin_edges();
                let valid = k_valid_edges(&g, 2).unwrap();
                let complement: Vec<Edge> = g
                    .edges()
                    .iter()
                    .copied()
                    .filter(|e| !twins.contains(e))
                    .collect();
                assert_eq!(valid, complement, "n={n} edges={:?}", g.edges());
            }
        }
    }

    #[test]
    fn path_enumeration_is_exact_on_c5() {
        let c5 = Graph::build(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        let mut found = Vec::new();
        enumerate_paths_from(
            &c5,
            c5.vertices(),
            0,
            &mut Budget::default().meter(),
            &mut |s, _| found.push(s),
        )
        .unwrap();
        // Paths from 0 in C5: {0}, two per length 1..4 (the full path on 5
        // vertices is the cycle, excluded); length-4 paths exist? 0,1,2,3,4
        // closes the cycle, so lengths 1..=3 only, two directions each,
        // but {0,1,2,3} from direction 1 equals {0,4,3,2} as a set? No:
        // {0,1,2,3} vs {0,4,3,2} = {0,2,3,4}. All distinct.
        assert_eq!(found.len(), 1 + 2 + 2 + 2);
    }
}
