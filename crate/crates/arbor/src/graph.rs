//! Immutable simple undirected graphs over vertex indices `0..n` with
//! bitset adjacency rows, plus the structural operations everything else
//! builds on: induced subgraphs, matching contractions, connectivity,
//! blocks and twin edges.
//!
//! Graphs are capped at [`MAX_VERTICES`] vertices so that vertex sets fit
//! in a single machine word and every set operation is word-level; the
//! exact solvers key their memo tables on these words.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Hard cap on the vertex count; vertex sets are single `u64` words.
pub const MAX_VERTICES: usize = 64;

/// An unordered pair `(u, v)` with `u < v`.
pub type Edge = (usize, usize);

/// Normalizes an unordered pair into canonical `(min, max)` form.
pub fn edge(u: usize, v: usize) -> Edge {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

/// A subset of `0..MAX_VERTICES`, represented as one machine word.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct VertexSet(pub u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn single(v: usize) -> Self {
        VertexSet(1 << v)
    }

    /// The full set `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_VERTICES);
        if n == 64 {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub fn contains(self, v: usize) -> bool {
        self.0 >> v & 1 == 1
    }

    pub fn insert(&mut self, v: usize) {
        self.0 |= 1 << v;
    }

    pub fn remove(&mut self, v: usize) {
        self.0 &= !(1 << v);
    }

    pub fn with(self, v: usize) -> Self {
        VertexSet(self.0 | (1 << v))
    }

    pub fn without(self, v: usize) -> Self {
        VertexSet(self.0 & !(1 << v))
    }

    pub fn union(self, other: Self) -> Self {
        VertexSet(self.0 | other.0)
    }

    pub fn intersect(self, other: Self) -> Self {
        VertexSet(self.0 & other.0)
    }

    pub fn minus(self, other: Self) -> Self {
        VertexSet(self.0 & !other.0)
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset_of(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Smallest member, if any.
    pub fn min_elem(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as usize)
        }
    }

    /// Iterates members in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let v = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(v)
            }
        })
    }

    /// Members as a sorted vector.
    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        let mut s = VertexSet::EMPTY;
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// Immutable simple undirected graph. No self-loops, no parallel edges;
/// the edge list is sorted lexicographically and always agrees with the
/// adjacency rows.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<VertexSet>,
    edges: Vec<Edge>,
    hash: u64,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, m={}, edges={:?})", self.n, self.edges.len(), self.edges)
    }
}

impl Graph {
    /// Builds a canonical graph from unordered pairs. Duplicate pairs and
    /// reversed duplicates collapse to one edge; self-loops and
    /// out-of-range indices are rejected.
    pub fn build(n: usize, pairs: &[(usize, usize)]) -> Result<Graph> {
        if n > MAX_VERTICES {
            return Err(Error::Input(format!(
                "vertex count {n} exceeds the cap of {MAX_VERTICES}"
            )));
        }
        let mut adj = vec![VertexSet::EMPTY; n];
        for &(u, v) in pairs {
            if u == v {
                return Err(Error::Input(format!("self-loop at vertex {u}")));
            }
            if u >= n || v >= n {
                return Err(Error::Input(format!(
                    "edge ({u}, {v}) out of range for n = {n}"
                )));
            }
            adj[u].insert(v);
            adj[v].insert(u);
        }
        let mut edges = Vec::new();
        for u in 0..n {
            for v in adj[u].iter() {
                if v > u {
                    edges.push((u, v));
                }
            }
        }
        let hash = canonical_hash(n, &edges);
        Ok(Graph { n, adj, edges, hash })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    pub fn adj(&self, v: usize) -> VertexSet {
        self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Closed neighborhood `N[v]`.
    pub fn closed_adj(&self, v: usize) -> VertexSet {
        self.adj[v].with(v)
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    /// Stable 64-bit content hash of `(n, edges)`, used to detect derived
    /// structures applied to the wrong graph.
    pub fn hash(&self) -> u64 {
        self.hash
    }

    pub fn hash_hex(&self) -> String {
        format!("{:016x}", self.hash)
    }

    /// Number of edges with both endpoints in `s`.
    pub fn edge_count_within(&self, s: VertexSet) -> usize {
        s.iter().map(|v| self.adj[v].intersect(s).len()).sum::<usize>() / 2
    }

    /// Edges with both endpoints in `s`, in lexicographic order.
    pub fn edges_within(&self, s: VertexSet) -> Vec<Edge> {
        self.edges
            .iter()
            .copied()
            .filter(|&(u, v)| s.contains(u) && s.contains(v))
            .collect()
    }

    /// Induced subgraph on `s`, densely renumbered, plus the map from new
    /// indices back to old ones (`new -> old`, sorted ascending).
    pub fn induced(&self, s: VertexSet) -> Result<(Graph, Vec<usize>)> {
        if !s.is_subset_of(self.vertices()) {
            return Err(Error::Input(format!(
                "vertex set {s:?} out of range for n = {}",
                self.n
            )));
        }
        let to_old = s.to_vec();
        let mut to_new = vec![usize::MAX; self.n];
        for (new, &old) in to_old.iter().enumerate() {
            to_new[old] = new;
        }
        let pairs: Vec<(usize, usize)> = self
            .edges_within(s)
            .into_iter()
            .map(|(u, v)| (to_new[u], to_new[v]))
            .collect();
        let g = Graph::build(to_old.len(), &pairs)?;
        Ok((g, to_old))
    }

    /// Connected components of the whole graph, ordered by smallest member.
    pub fn components(&self) -> Vec<VertexSet> {
        self.components_within(self.vertices())
    }

    /// Connected components of the induced subgraph on `s`, ordered by
    /// smallest member.
    pub fn components_within(&self, s: VertexSet) -> Vec<VertexSet> {
        let mut remaining = s;
        let mut comps = Vec::new();
        while let Some(start) = remaining.min_elem() {
            let comp = self.reach(start, remaining);
            remaining = remaining.minus(comp);
            comps.push(comp);
        }
        comps
    }

    /// Vertices reachable from `start` inside `within`.
    pub fn reach(&self, start: usize, within: VertexSet) -> VertexSet {
        debug_assert!(within.contains(start));
        let mut seen = VertexSet::single(start);
        let mut frontier = seen;
        while !frontier.is_empty() {
            let mut next = VertexSet::EMPTY;
            for v in frontier.iter() {
                next = next.union(self.adj[v].intersect(within).minus(seen));
            }
            seen = seen.union(next);
            frontier = next;
        }
        seen
    }

    pub fn is_connected_within(&self, s: VertexSet) -> bool {
        match s.min_elem() {
            None => true,
            Some(start) => self.reach(start, s) == s,
        }
    }

    pub fn is_connected(&self) -> bool {
        self.is_connected_within(self.vertices())
    }

    /// Whether `g[s]` is acyclic, together with the components of `g[s]`
    /// and their edge counts.
    pub fn is_induced_forest(&self, s: VertexSet) -> (bool, Vec<(VertexSet, usize)>) {
        let comps = self.components_within(s);
        let with_counts: Vec<(VertexSet, usize)> = comps
            .into_iter()
            .map(|c| (c, self.edge_count_within(c)))
            .collect();
        let acyclic = with_counts.iter().all(|&(c, m)| m == c.len() - 1);
        (acyclic, with_counts)
    }

    /// Biconnected components (blocks) and cut vertices. A bridge is a
    /// block of two vertices; isolated vertices belong to no block. Blocks
    /// are ordered by smallest member, cut vertices ascending.
    pub fn blocks(&self) -> (Vec<VertexSet>, Vec<usize>) {
        let n = self.n;
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0usize; n];
        let mut parent = vec![usize::MAX; n];
        let mut is_cut = vec![false; n];
        let mut blocks: Vec<VertexSet> = Vec::new();
        let mut edge_stack: Vec<Edge> = Vec::new();
        let mut timer = 0usize;

        for root in 0..n {
            if disc[root] != usize::MAX {
                continue;
            }
            // Iterative DFS; each frame remembers its neighbor cursor.
            let mut stack: Vec<(usize, Vec<usize>, usize, usize)> = Vec::new();
            disc[root] = timer;
            low[root] = timer;
            timer += 1;
            stack.push((root, self.adj[root].to_vec(), 0, 0));
            let mut root_children = 0usize;

            while let Some(frame) = stack.last_mut() {
                let (v, nbrs, idx, _) = (frame.0, frame.1.clone(), frame.2, frame.3);
                if idx < nbrs.len() {
                    frame.2 += 1;
                    let w = nbrs[idx];
                    if disc[w] == usize::MAX {
                        parent[w] = v;
                        edge_stack.push(edge(v, w));
                        disc[w] = timer;
                        low[w] = timer;
                        timer += 1;
                        if v == root {
                            root_children += 1;
                        }
                        stack.push((w, self.adj[w].to_vec(), 0, 0));
                    } else if w != parent[v] && disc[w] < disc[v] {
                        edge_stack.push(edge(v, w));
                        low[v] = low[v].min(disc[w]);
                    }
                } else {
                    stack.pop();
                    if let Some(pframe) = stack.last_mut() {
                        let p = pframe.0;
                        low[p] = low[p].min(low[v]);
                        if low[v] >= disc[p] {
                            // p separates v's subtree: pop one block.
                            let mut blk = VertexSet::EMPTY;
                            while let Some(&e) = edge_stack.last() {
                                if disc[e.0].max(disc[e.1]) >= disc[v] {
                                    edge_stack.pop();
                                    blk.insert(e.0);
                                    blk.insert(e.1);
                                } else {
                                    break;
                                }
                            }
                            if !blk.is_empty() {
                                blocks.push(blk);
                            }
                            if p != root {
                                is_cut[p] = true;
                            }
                        }
                    }
                }
            }
            if root_children >= 2 {
                is_cut[root] = true;
            }
        }

        blocks.sort_by_key(|b| b.min_elem());
        let cuts = (0..n).filter(|&v| is_cut[v]).collect();
        (blocks, cuts)
    }

    /// `true` iff the graph is connected, has at least three vertices and
    /// no cut vertex.
    pub fn is_two_connected(&self) -> bool {
        if self.n < 3 || !self.is_connected() {
            return false;
        }
        let (_, cuts) = self.blocks();
        cuts.is_empty()
    }

    /// Edges `uv` with `N[u] = N[v]`; exactly the edges that are not
    /// 2-valid.
    pub fn twin_edges(&self) -> Vec<Edge> {
        self.edges
            .iter()
            .copied()
            .filter(|&(u, v)| self.closed_adj(u) == self.closed_adj(v))
            .collect()
    }

    /// Contracts a matching: every edge of `m` merges into one vertex,
    /// parallel edges collapse, loops vanish. Classes are renumbered by
    /// smallest old member.
    pub fn contract_matching(&self, m: &[Edge]) -> Result<(Graph, ContractionMap)> {
        let mut touched = VertexSet::EMPTY;
        for &(u, v) in m {
            if u >= self.n || v >= self.n {
                return Err(Error::Input(format!("matching edge ({u}, {v}) out of range")));
            }
            if !self.has_edge(u, v) {
                return Err(Error::Input(format!("({u}, {v}) is not an edge")));
            }
            if touched.contains(u) || touched.contains(v) {
                return Err(Error::Input(format!(
                    "edges share endpoint: ({u}, {v}) is not part of a matching"
                )));
            }
            touched.insert(u);
            touched.insert(v);
        }
        let mut partner = vec![usize::MAX; self.n];
        for &(u, v) in m {
            partner[u] = v;
            partner[v] = u;
        }
        // Class representative = smallest member; classes ordered by rep.
        let mut reps = Vec::new();
        for v in 0..self.n {
            if partner[v] == usize::MAX || partner[v] > v {
                reps.push(v);
            }
        }
        let mut class_of = vec![usize::MAX; self.n];
        for (new, &rep) in reps.iter().enumerate() {
            class_of[rep] = new;
            if partner[rep] != usize::MAX {
                class_of[partner[rep]] = new;
            }
        }
        let pairs: Vec<(usize, usize)> = self
            .edges
            .iter()
            .filter(|&&(u, v)| class_of[u] != class_of[v])
            .map(|&(u, v)| (class_of[u], class_of[v]))
            .collect();
        let contracted = Graph::build(reps.len(), &pairs)?;
        let mut classes = vec![VertexSet::EMPTY; reps.len()];
        for v in 0..self.n {
            classes[class_of[v]].insert(v);
        }
        let map = ContractionMap {
            source_hash: self.hash,
            class_of,
            classes,
            matching: m.to_vec(),
        };
        Ok((contracted, map))
    }
}

/// Records a matching contraction: which old vertices merged into which
/// new vertex. Size-2 classes are exactly the contracted matching edges.
#[derive(Debug, Clone)]
pub struct ContractionMap {
    pub source_hash: u64,
    /// old vertex -> new vertex
    pub class_of: Vec<usize>,
    /// new vertex -> set of old vertices (size 1 or 2)
    pub classes: Vec<VertexSet>,
    /// the contracted matching, in the source graph
    pub matching: Vec<Edge>,
}

impl ContractionMap {
    /// Expands a vertex set of the contracted graph back to the source.
    pub fn expand(&self, s: VertexSet) -> VertexSet {
        let mut out = VertexSet::EMPTY;
        for c in s.iter() {
            out = out.union(self.classes[c]);
        }
        out
    }
}

fn canonical_hash(n: usize, edges: &[Edge]) -> u64 {
    // FNV-1a, fixed here so hashes are stable across runs and toolchains.
    const OFFSET: u64 = 0xcbf29ce484222325;
    const PRIME: u64 = 0x100000001b3;
    let mut h = OFFSET;
    let mut eat = |x: u64| {
        for byte in x.to_le_bytes() {
            h ^= byte as u64;
            h = h.wrapping_mul(PRIME);
        }
    };
    eat(n as u64);
    for &(u, v) in edges {
        eat(u as u64);
        eat(v as u64);
    }
    h
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k3() -> Graph {
        Graph::build(3, &[(0, 1), (1, 2), (0, 2)]).unwrap()
    }

    fn c4() -> Graph {
        Graph::build(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap()
    }

    #[test]
    fn build_dedups_and_canonicalizes() {
        let g = k3();
        assert_eq!(g.edge_count(), 3);
        let g = Graph::build(4, &[(0, 1), (1, 0)]).unwrap();
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.edges(), &[(0, 1)]);
    }

    #[test]
    fn build_rejects_bad_input() {
        assert!(matches!(Graph::build(2, &[(0, 0)]), Err(Error::Input(_))));
        assert!(matches!(Graph::build(2, &[(0, 2)]), Err(Error::Input(_))));
    }

    #[test]
    fn induced_subgraphs() {
        let g = c4();
        let (p, map) = g.induced(VertexSet::from_iter([0, 1, 2])).unwrap();
        assert_eq!(p.edge_count(), 2);
        assert_eq!(map, vec![0, 1, 2]);

        let (iso, _) = g.induced(VertexSet::from_iter([0, 2])).unwrap();
        assert_eq!(iso.edge_count(), 0);
        assert_eq!(iso.n(), 2);

        let k4 = Graph::build(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        let (t, _) = k4.induced(VertexSet::from_iter([0, 1, 2])).unwrap();
        assert_eq!(t.edge_count(), 3);
    }

    #[test]
    fn induced_edges_exact_for_all_subsets() {
        // Brute-force check of the induced-subgraph contract on a small graph.
        let g = Graph::build(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (0, 3)]).unwrap();
        for mask in 0..(1u64 << 6) {
            let s = VertexSet(mask);
            let (sub, to_old) = g.induced(s).unwrap();
            let expect: Vec<Edge> = g
                .edges()
                .iter()
                .copied()
                .filter(|&(u, v)| s.contains(u) && s.contains(v))
                .collect();
            let got: Vec<Edge> = sub
                .edges()
                .iter()
                .map(|&(u, v)| edge(to_old[u], to_old[v]))
                .collect();
            assert_eq!(expect, got);
        }
    }

    #[test]
    fn contraction_examples() {
        // P4, contract the middle edge.
        let p4 = Graph::build(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let (g, map) = p4.contract_matching(&[(1, 2)]).unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.edge_count(), 2);
        assert_eq!(map.classes[map.class_of[1]], VertexSet::from_iter([1, 2]));

        // C4, contract two opposite edges: the two parallel pairs collapse.
        let (g, _) = c4().contract_matching(&[(0, 1), (2, 3)]).unwrap();
        assert_eq!((g.n(), g.edge_count()), (2, 1));

        // K3, contract one edge: loop removed, parallels merged.
        let (g, _) = k3().contract_matching(&[(0, 1)]).unwrap();
        assert_eq!((g.n(), g.edge_count()), (2, 1));
    }

    #[test]
    fn contraction_rejects_non_matchings() {
        let g = k3();
        assert!(g.contract_matching(&[(0, 1), (1, 2)]).is_err());
        let p4 = Graph::build(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert!(p4.contract_matching(&[(0, 2)]).is_err());
    }

    #[test]
    fn induced_forest_detection() {
        let g = c4();
        let (ok, _) = g.is_induced_forest(g.vertices());
        assert!(!ok);
        let (ok, comps) = g.is_induced_forest(VertexSet::from_iter([0, 1, 2]));
        assert!(ok);
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].1, 2);
    }

    #[test]
    fn component_listing() {
        assert_eq!(k3().components().len(), 1);
        let two_edges = Graph::build(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(two_edges.components().len(), 2);
        let empty3 = Graph::build(3, &[]).unwrap();
        assert_eq!(empty3.components().len(), 3);
    }

    #[test]
    fn block_decomposition() {
        // Two triangles sharing vertex 2.
        let bowtie =
            Graph::build(5, &[(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)]).unwrap();
        let (blocks, cuts) = bowtie.blocks();
        assert_eq!(blocks.len(), 2);
        assert_eq!(cuts, vec![2]);

        let c5 = Graph::build(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        let (blocks, cuts) = c5.blocks();
        assert_eq!(blocks.len(), 1);
        assert!(cuts.is_empty());

        let p4 = Graph::build(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let (blocks, cuts) = p4.blocks();
        assert_eq!(blocks.len(), 3);
        assert_eq!(cuts, vec![1, 2]);
    }

    #[test]
    fn blocks_partition_edges_and_overlap_in_one_vertex() {
        let g = Graph::build(
            8,
            &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (4, 5), (5, 3), (5, 6), (6, 7)],
        )
        .unwrap();
        let (blocks, _) = g.blocks();
        let mut edge_total = 0;
        for b in &blocks {
            edge_total += g.edge_count_within(*b);
        }
        assert_eq!(edge_total, g.edge_count());
        for i in 0..blocks.len() {
            for j in i + 1..blocks.len() {
                assert!(blocks[i].intersect(blocks[j]).len() <= 1);
            }
        }
    }

    #[test]
    fn twin_edge_detection() {
        assert_eq!(k3().twin_edges().len(), 3);
        assert!(c4().twin_edges().is_empty());
        // K3 with one pendant per vertex: no twins.
        let g = Graph::build(6, &[(0, 1), (1, 2), (0, 2), (0, 3), (1, 4), (2, 5)]).unwrap();
        assert!(g.twin_edges().is_empty());
    }

    #[test]
    fn hash_is_stable_and_content_based() {
        let a = c4();
        let b = Graph::build(4, &[(3, 0), (2, 3), (1, 2), (0, 1)]).unwrap();
        assert_eq!(a.hash(), b.hash());
        assert_ne!(a.hash(), k3().hash());
    }
}
