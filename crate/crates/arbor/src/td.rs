//! Tree-depth machinery: underlying trees, almost-k-valid edges with
//! their counting bounds, the five-stage recursive cover that keeps a
//! graph of tree-depth d within (2k)^d k-strong forests, and the
//! color-subset composition that covers arbitrary graphs through
//! (k+1)-tree-depth colorings.

use crate::budget::{Budget, Meter};
use crate::coloring::{Coloring, ColoringKind};
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, VertexSet};
use crate::oracle::{ExactResult, ForestCover, ProofMode};
use crate::validity;
use std::collections::{HashMap, HashSet};

/// A single rooted tree on a vertex subset whose transitive closure
/// contains every edge of the graph induced on that subset.
#[derive(Debug, Clone)]
pub struct EliminationTree {
    pub support: VertexSet,
    /// Parent per vertex; `None` exactly at the root. Entries outside the
    /// support are meaningless.
    pub parent: Vec<Option<usize>>,
    pub root: usize,
}

impl EliminationTree {
    pub fn depth(&self) -> usize {
        self.support
            .iter()
            .map(|v| {
                let mut d = 1;
                let mut x = v;
                while let Some(p) = self.parent[x] {
                    x = p;
                    d += 1;
                }
                d
            })
            .max()
            .unwrap_or(0)
    }

    pub fn children(&self, v: usize) -> Vec<usize> {
        self.support
            .iter()
            .filter(|&w| self.parent[w] == Some(v))
            .collect()
    }

    /// Root has exactly one child; the marker for the starred tree class.
    pub fn root_has_degree_one(&self) -> bool {
        self.children(self.root).len() == 1
    }

    pub fn subtree(&self, v: usize) -> VertexSet {
        let mut out = VertexSet::single(v);
        let mut frontier = vec![v];
        while let Some(x) = frontier.pop() {
            for c in self.children(x) {
                out.insert(c);
                frontier.push(c);
            }
        }
        out
    }

    fn is_ancestor(&self, u: usize, v: usize) -> bool {
        let mut x = v;
        loop {
            if x == u {
                return true;
            }
            match self.parent[x] {
                Some(p) => x = p,
                None => return false,
            }
        }
    }

    /// Every edge of `g` inside the support must join an
    /// ancestor/descendant pair.
    pub fn validate(&self, g: &Graph) -> std::result::Result<(), String> {
        if !self.support.contains(self.root) {
            return Err("root outside support".into());
        }
        for v in self.support.iter() {
            let mut x = v;
            let mut steps = 0;
            loop {
                steps += 1;
                if steps > self.parent.len() + 1 {
                    return Err("parent chain does not terminate".into());
                }
                match self.parent[x] {
                    Some(p) => {
                        if !self.support.contains(p) {
                            return Err(format!("parent of {x} outside support"));
                        }
                        x = p;
                    }
                    None => break,
                }
            }
            if x != self.root {
                return Err(format!("vertex {v} reaches root {x}, expected {}", self.root));
            }
        }
        for &(u, v) in &g.edges_within(self.support) {
            if !self.is_ancestor(u, v) && !self.is_ancestor(v, u) {
                return Err(format!("edge ({u}, {v}) is not ancestor/descendant"));
            }
        }
        Ok(())
    }
}

/// One underlying tree per connected component.
#[derive(Debug, Clone)]
pub struct EliminationForest {
    pub trees: Vec<EliminationTree>,
}

impl EliminationForest {
    pub fn depth(&self) -> usize {
        self.trees.iter().map(|t| t.depth()).max().unwrap_or(0)
    }
}

/// Minimum depth of a single underlying tree over the (not necessarily
/// connected) set `s`, memoized across the whole search; grouping
/// components under one child never beats separate children, so the
/// recursion tries every root and recurses into the components.
fn min_single_tree_depth(
    g: &Graph,
    s: VertexSet,
    memo: &mut HashMap<u64, (usize, usize)>,
    meter: &mut Meter,
) -> Result<(usize, usize)> {
    if s.len() == 1 {
        return Ok((1, s.min_elem().unwrap()));
    }
    if let Some(&hit) = memo.get(&s.0) {
        return Ok(hit);
    }
    meter
        .tick()
        .map_err(|_| Error::Budget("underlying tree search".into()))?;
    let mut best = (usize::MAX, usize::MAX);
    for r in s.iter() {
        let rest = s.without(r);
        let mut worst = 0usize;
        for comp in g.components_within(rest) {
            let (dc, _) = min_single_tree_depth(g, comp, memo, meter)?;
            worst = worst.max(dc);
            if 1 + worst >= best.0 {
                break;
            }
        }
        if 1 + worst < best.0 {
            best = (1 + worst, r);
        }
    }
    memo.insert(s.0, best);
    Ok(best)
}

fn build_min_tree(
    g: &Graph,
    s: VertexSet,
    parent_of_root: Option<usize>,
    parent: &mut Vec<Option<usize>>,
    memo: &mut HashMap<u64, (usize, usize)>,
    meter: &mut Meter,
) -> Result<usize> {
    let (_, r) = min_single_tree_depth(g, s, memo, meter)?;
    parent[r] = parent_of_root;
    for comp in g.components_within(s.without(r)) {
        build_min_tree(g, comp, Some(r), parent, memo, meter)?;
    }
    Ok(r)
}

/// A minimum-depth underlying tree for the (connected or not) set `s`.
pub fn min_depth_tree_within(g: &Graph, s: VertexSet, meter: &mut Meter) -> Result<EliminationTree> {
    if s.is_empty() {
        return Err(Error::Input("empty support has no tree".into()));
    }
    let mut memo = HashMap::new();
    let mut parent = vec![None; g.n()];
    let root = build_min_tree(g, s, None, &mut parent, &mut memo, meter)?;
    Ok(EliminationTree {
        support: s,
        parent,
        root,
    })
}

/// An underlying forest of depth at most `d`, one minimum-depth tree per
/// component; absent exactly when some component has tree-depth over `d`.
pub fn underlying_tree(g: &Graph, d: usize, budget: Budget) -> Result<Option<EliminationForest>> {
    if d == 0 {
        return Err(Error::Input("depth must be at least 1".into()));
    }
    let mut meter = budget.meter();
    let mut trees = Vec::new();
    for comp in g.components() {
        let t = min_depth_tree_within(g, comp, &mut meter)?;
        if t.depth() > d {
            return Ok(None);
        }
        trees.push(t);
    }
    Ok(Some(EliminationForest { trees }))
}

/// The two reduced trees of a starred tree: removing the degree-1 root
/// leaves the tree of `G - r` rooted at the root's unique child `x`;
/// removing `x` instead reattaches x's children directly to the root.
pub fn derive_branch(t: &EliminationTree) -> Result<(EliminationTree, EliminationTree)> {
    if !t.root_has_degree_one() {
        return Err(Error::Precondition(
            "branch derivation needs a root of degree 1".into(),
        ));
    }
    let r = t.root;
    let x = t.children(r)[0];

    let mut minus_r = t.clone();
    minus_r.support.remove(r);
    minus_r.parent[x] = None;
    minus_r.root = x;

    let mut minus_x = t.clone();
    minus_x.support.remove(x);
    for c in t.children(x) {
        minus_x.parent[c] = Some(r);
    }
    Ok((minus_r, minus_x))
}

/// Upper bound on almost-k-valid edge counts for depth-d trees.
pub fn almost_valid_bound(k: usize, d: usize) -> u64 {
    debug_assert!(d >= 2);
    (2 * k as u64).saturating_pow(d as u32 - 1).saturating_sub(1)
}

/// The tighter bound when the root has degree 1.
pub fn almost_valid_bound_starred(k: usize, d: usize) -> u64 {
    debug_assert!(d >= 2);
    2u64.saturating_mul((2 * k as u64).saturating_pow(d as u32 - 2))
        .saturating_sub(1)
}

/// Size bound of the recursive cover.
pub fn cover_bound(k: usize, d: usize) -> u64 {
    (2 * k as u64).saturating_pow(d as u32)
}

#[derive(Debug, Clone)]
pub struct AlmostValidReport {
    pub edges: Vec<Edge>,
    /// Count of almost-k-valid edges inside each root branch, keyed by the
    /// root's child.
    pub per_branch: Vec<(usize, usize)>,
    pub bound: u64,
    pub bound_starred: u64,
}

/// Edges that are not k-valid but lie on an induced path through the
/// root. A path containing the root internally always contains the
/// subpath from the root through the edge, so enumerating paths with the
/// root as an endpoint decides both phrasings of the condition.
pub fn almost_k_valid_edges(
    g: &Graph,
    t: &EliminationTree,
    k: usize,
    budget: Budget,
) -> Result<AlmostValidReport> {
    let mut meter = budget.meter();
    let s = t.support;
    let valid: HashSet<Edge> = validity::k_valid_edges_within(g, s, k, &mut meter)?
        .into_iter()
        .collect();
    let mut on_root_path: HashSet<Edge> = HashSet::new();
    validity::enumerate_paths_from(g, s, t.root, &mut meter, &mut |p, _| {
        on_root_path.extend(g.edges_within(p));
    })?;
    let mut edges: Vec<Edge> = on_root_path
        .into_iter()
        .filter(|e| !valid.contains(e))
        .collect();
    edges.sort();
    let mut per_branch = Vec::new();
    for x in t.children(t.root) {
        let branch = t.subtree(x).with(t.root);
        let count = edges
            .iter()
            .filter(|&&(u, v)| branch.contains(u) && branch.contains(v))
            .count();
        per_branch.push((x, count));
    }
    let d = t.depth().max(2);
    Ok(AlmostValidReport {
        edges,
        per_branch,
        bound: almost_valid_bound(k, d),
        bound_starred: almost_valid_bound_starred(k, d),
    })
}

/// Per-stage sizes of one recursive cover invocation, with the bounds
/// they were checked against.
#[derive(Debug, Clone, Default)]
pub struct CoverLedger {
    pub stage_sizes: [usize; 5],
    pub depth: usize,
    pub total: usize,
}

struct TdCover<'a> {
    g: &'a Graph,
    k: usize,
}

impl TdCover<'_> {
    fn witness_forest(
        &self,
        within: VertexSet,
        e: Edge,
        meter: &mut Meter,
    ) -> Result<VertexSet> {
        let w = validity::find_witness_tree_within(self.g, within, e, self.k, meter)?
            .ok_or_else(|| {
                Error::Internal(format!(
                    "edge ({}, {}) classified k-valid but has no witness",
                    e.0, e.1
                ))
            })?;
        Ok(w.vertices)
    }

    /// Merge per-branch forest lists index-wise.
    fn merge_rounds(lists: Vec<Vec<VertexSet>>) -> Vec<VertexSet> {
        let rounds = lists.iter().map(|l| l.len()).max().unwrap_or(0);
        (0..rounds)
            .map(|j| {
                lists
                    .iter()
                    .filter_map(|l| l.get(j))
                    .fold(VertexSet::EMPTY, |acc, &f| acc.union(f))
            })
            .collect()
    }

    fn cover_rec(
        &self,
        t: &EliminationTree,
        meter: &mut Meter,
        ledgers: &mut Vec<CoverLedger>,
    ) -> Result<Vec<VertexSet>> {
        let g = self.g;
        let k = self.k;
        let s = t.support;
        let valid_list = validity::k_valid_edges_within(g, s, k, meter)?;
        if valid_list.is_empty() {
            return Ok(Vec::new());
        }
        let d = t.depth();
        if d <= 2 {
            // Subgraph of a star: if anything is k-valid the whole star is
            // one k-strong forest.
            let r = t.root;
            let star = g.adj(r).intersect(s).with(r);
            debug_assert!(g.edge_count_within(star) >= k);
            return Ok(vec![star]);
        }

        let r = t.root;
        let children = t.children(r);
        let branches: Vec<VertexSet> = children.iter().map(|&x| t.subtree(x)).collect();
        let branch_of = |e: Edge| -> usize {
            let probe = if e.0 == r { e.1 } else { e.0 };
            branches
                .iter()
                .position(|b| b.contains(probe))
                .expect("every edge lies in a branch")
        };

        // Per-branch k-valid edge sets for the classification.
        let mut valid_minus_r: Vec<HashSet<Edge>> = Vec::new();
        let mut valid_minus_x: Vec<HashSet<Edge>> = Vec::new();
        let mut valid_whole: Vec<HashSet<Edge>> = Vec::new();
        for (i, &x) in children.iter().enumerate() {
            let with_r = branches[i].with(r);
            valid_minus_r.push(
                validity::k_valid_edges_within(g, branches[i], k, meter)?
                    .into_iter()
                    .collect(),
            );
            valid_minus_x.push(
                validity::k_valid_edges_within(g, with_r.without(x), k, meter)?
                    .into_iter()
                    .collect(),
            );
            valid_whole.push(
                validity::k_valid_edges_within(g, with_r, k, meter)?
                    .into_iter()
                    .collect(),
            );
        }

        let mut s1: Vec<Edge> = Vec::new();
        let mut s2: Vec<Vec<Edge>> = vec![Vec::new(); children.len()];
        let mut s3: Vec<Vec<Edge>> = vec![Vec::new(); children.len()];
        let mut s4: Vec<Vec<Edge>> = vec![Vec::new(); children.len()];
        let mut s5: Vec<Vec<Edge>> = vec![Vec::new(); children.len()];
        for &e in &valid_list {
            let i = branch_of(e);
            let is_root_child_edge =
                (e.0 == r && children.contains(&e.1)) || (e.1 == r && children.contains(&e.0));
            if is_root_child_edge {
                s1.push(e);
            } else if valid_minus_r[i].contains(&e) {
                s2[i].push(e);
            } else if valid_minus_x[i].contains(&e) {
                s3[i].push(e);
            } else if valid_whole[i].contains(&e) {
                s4[i].push(e);
            } else {
                s5[i].push(e);
            }
        }

        // Stage 1: the root-child edges, as one induced star when there
        // are at least k of them, otherwise one witness tree per edge.
        let mut f1: Vec<VertexSet> = Vec::new();
        if s1.len() >= k {
            let star: VertexSet = s1
                .iter()
                .map(|&(a, b)| if a == r { b } else { a })
                .chain([r])
                .collect();
            f1.push(star);
        } else {
            for &e in &s1 {
                f1.push(self.witness_forest(s, e, meter)?);
            }
        }

        // Stage 2: recursive covers of the branches minus the root,
        // merged round-wise; no forest touches the root.
        let mut per_branch_2: Vec<Vec<VertexSet>> = Vec::new();
        for (i, &x) in children.iter().enumerate() {
            if branches[i].is_empty() {
                per_branch_2.push(Vec::new());
                continue;
            }
            let mut sub = t.clone();
            sub.support = branches[i];
            sub.parent[x] = None;
            sub.root = x;
            per_branch_2.push(self.cover_rec(&sub, meter, ledgers)?);
        }
        let f2 = Self::merge_rounds(per_branch_2);

        // Stage 3: recursive covers of the branches minus the branch
        // child, trimmed to the component containing the root. Any edge
        // needing this stage has all its witnesses through the root, so
        // the trim loses nothing; keeping only root components lets the
        // rounds glue into single trees at the root.
        let mut per_branch_3: Vec<Vec<VertexSet>> = Vec::new();
        for (i, &x) in children.iter().enumerate() {
            let support = branches[i].with(r).without(x);
            if support.len() < 2 {
                per_branch_3.push(Vec::new());
                continue;
            }
            let mut sub = t.clone();
            sub.support = support;
            for c in t.children(x) {
                sub.parent[c] = Some(r);
            }
            sub.root = r;
            let forests = self.cover_rec(&sub, meter, ledgers)?;
            let trimmed: Vec<VertexSet> = forests
                .into_iter()
                .filter_map(|f| {
                    g.components_within(f)
                        .into_iter()
                        .find(|c| c.contains(r))
                })
                .collect();
            per_branch_3.push(trimmed);
        }
        let f3 = Self::merge_rounds(per_branch_3);

        // Stage 4: one witness tree per edge whose witnesses all pass
        // through both the root and the branch child; they contain the
        // root, so rounds glue as in stage 3.
        let mut per_branch_4: Vec<Vec<VertexSet>> = Vec::new();
        for (i, _) in children.iter().enumerate() {
            let mut list = Vec::new();
            for &e in &s4[i] {
                let w = self.witness_forest(branches[i].with(r), e, meter)?;
                if !w.contains(r) {
                    return Err(Error::Internal(
                        "stage-4 witness avoids the root; classification is broken".into(),
                    ));
                }
                list.push(w);
            }
            per_branch_4.push(list);
        }
        let f4 = Self::merge_rounds(per_branch_4);

        // Stage 5: edges whose witnesses straddle branches. With at least
        // k branches meeting the root, rounds of induced root-paths glue
        // into k-strong trees; otherwise each edge takes its own witness
        // in the whole graph.
        let rooted_branches: Vec<usize> = (0..children.len())
            .filter(|&i| !g.adj(r).intersect(branches[i]).is_empty())
            .collect();
        let s_count = rooted_branches.len();
        let mut f5: Vec<VertexSet> = Vec::new();
        if s5.iter().any(|l| !l.is_empty()) {
            if s_count >= k {
                let mut per_branch_paths: Vec<Vec<VertexSet>> = Vec::new();
                for &i in &rooted_branches {
                    let within = branches[i].with(r);
                    let mut paths: Vec<VertexSet> = Vec::new();
                    if !s5[i].is_empty() {
                        let mut all_paths: Vec<(usize, Vec<usize>, VertexSet)> = Vec::new();
                        validity::enumerate_paths_from(g, within, r, meter, &mut |p, _| {
                            all_paths.push((p.len(), p.to_vec(), p));
                        })?;
                        all_paths.sort();
                        for &e in &s5[i] {
                            if paths.iter().any(|p| p.contains(e.0) && p.contains(e.1)) {
                                continue;
                            }
                            let best = all_paths
                                .iter()
                                .find(|(_, _, p)| p.contains(e.0) && p.contains(e.1))
                                .map(|(_, _, p)| *p)
                                .ok_or_else(|| {
                                    Error::Internal(format!(
                                        "no induced root path covers straddling edge ({}, {})",
                                        e.0, e.1
                                    ))
                                })?;
                            paths.push(best);
                        }
                    }
                    per_branch_paths.push(paths);
                }
                let rounds = per_branch_paths.iter().map(|p| p.len()).max().unwrap_or(0);
                for j in 0..rounds {
                    let mut forest = VertexSet::EMPTY;
                    for (slot, &i) in rooted_branches.iter().enumerate() {
                        let piece = per_branch_paths[slot].get(j).copied().unwrap_or_else(|| {
                            // Pad with the shortest root edge into this branch.
                            let w = g.adj(r).intersect(branches[i]).min_elem().unwrap();
                            VertexSet::single(r).with(w)
                        });
                        forest = forest.union(piece);
                    }
                    f5.push(forest);
                }
            } else {
                for list in &s5 {
                    for &e in list {
                        f5.push(self.witness_forest(s, e, meter)?);
                    }
                }
            }
        }

        let ledger = CoverLedger {
            stage_sizes: [f1.len(), f2.len(), f3.len(), f4.len(), f5.len()],
            depth: d,
            total: 0,
        };

        // The five claims, as executable bounds.
        let two_k = 2 * k as u64;
        if f1.len() as u64 > (k as u64 - 1).max(1)
            || f2.len() as u64 > two_k.saturating_pow(d as u32 - 1)
            || f3.len() as u64 > two_k.saturating_pow(d as u32 - 1)
            || f4.len() as u64 > 2 * (two_k.saturating_pow(d as u32 - 2).saturating_sub(1))
            || f5.len() as u64
                > (k as u64 - 1).max(1) * almost_valid_bound_starred(k, d)
        {
            return Err(Error::Internal(format!(
                "stage bound violated at depth {d}: sizes {:?}",
                ledger.stage_sizes
            )));
        }

        let mut cover: Vec<VertexSet> = Vec::new();
        let mut seen: HashSet<u64> = HashSet::new();
        for f in f1.into_iter().chain(f2).chain(f3).chain(f4).chain(f5) {
            if !f.is_empty() && seen.insert(f.0) {
                cover.push(f);
            }
        }
        if cover.len() as u64 > cover_bound(k, d) {
            return Err(Error::Internal(format!(
                "cover exceeds (2k)^d at depth {d}: {} forests",
                cover.len()
            )));
        }
        let mut ledger = ledger;
        ledger.total = cover.len();
        ledgers.push(ledger);
        Ok(cover)
    }
}

/// Covers all k-valid edges of `g` with at most (2k)^d k-strong forests,
/// where `d` is the depth of the given underlying forest; per-component
/// covers merge index-wise. Needs `k >= 2`; the k = 1 case goes through
/// the tree-width route instead.
pub fn cover_td(
    g: &Graph,
    forest: &EliminationForest,
    k: usize,
    budget: Budget,
) -> Result<(ForestCover, Vec<CoverLedger>)> {
    if k < 2 {
        return Err(Error::Precondition(
            "the tree-depth cover needs k >= 2; use the tree-width cover for k = 1".into(),
        ));
    }
    let mut support = VertexSet::EMPTY;
    for t in &forest.trees {
        t.validate(g)
            .map_err(|msg| Error::Precondition(format!("invalid underlying tree: {msg}")))?;
        if !t.support.intersect(support).is_empty() {
            return Err(Error::Precondition("trees overlap".into()));
        }
        support = support.union(t.support);
    }
    if support != g.vertices() {
        return Err(Error::Precondition("forest must span all vertices".into()));
    }
    let mut meter = budget.meter();
    let solver = TdCover { g, k };
    let mut ledgers = Vec::new();
    let per_tree: Vec<Vec<VertexSet>> = forest
        .trees
        .iter()
        .map(|t| solver.cover_rec(t, &mut meter, &mut ledgers))
        .collect::<Result<_>>()?;
    let forests = TdCover::merge_rounds(per_tree);
    Ok((ForestCover::new(g, k, forests), ledgers))
}

/// Convenience entry: find minimum-depth underlying trees per component,
/// then cover.
pub fn cover_td_auto(g: &Graph, k: usize, budget: Budget) -> Result<(ForestCover, Vec<CoverLedger>)> {
    let mut meter = budget.meter();
    let mut trees = Vec::new();
    for comp in g.components() {
        trees.push(min_depth_tree_within(g, comp, &mut meter)?);
    }
    cover_td(g, &EliminationForest { trees }, k, budget)
}

/// Exact p-tree-depth chromatic number by backtracking: every set of
/// p' <= p color classes must induce tree-depth at most p'. For p = 1
/// this is ordinary proper coloring.
pub fn p_tree_depth_coloring(
    g: &Graph,
    p: usize,
    budget: Budget,
) -> Result<ExactResult<Coloring>> {
    if p == 0 {
        return Err(Error::Input("p must be at least 1".into()));
    }
    if g.n() == 0 {
        return Ok(ExactResult::exact(
            0,
            Coloring::new(Vec::new(), ColoringKind::PTreeDepth(p)),
            ProofMode::BoundMet,
        ));
    }
    let mut meter = budget.meter();
    let mut order: Vec<usize> = (0..g.n()).collect();
    order.sort_by_key(|&v| (usize::MAX - g.degree(v), v));

    // Tree-depth of arbitrary masked subgraphs, memoized across the whole
    // search (depth of a set only depends on the graph).
    struct DepthCache {
        memo: HashMap<u64, (usize, usize)>,
    }
    impl DepthCache {
        fn depth(&mut self, g: &Graph, s: VertexSet, meter: &mut Meter) -> Result<usize> {
            let mut worst = 0;
            for comp in g.components_within(s) {
                let (d, _) = min_single_tree_depth(g, comp, &mut self.memo, meter)?;
                worst = worst.max(d);
            }
            Ok(worst)
        }
    }

    fn subsets_with_color(q: usize, p: usize, c: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        for mask in 1u32..(1 << q) {
            let size = mask.count_ones() as usize;
            if size <= p && mask >> c & 1 == 1 {
                out.push((0..q).filter(|&i| mask >> i & 1 == 1).collect());
            }
        }
        out
    }

    #[allow(clippy::too_many_arguments)]
    fn rec(
        g: &Graph,
        order: &[usize],
        idx: usize,
        used: usize,
        q: usize,
        by_color: &[Vec<Vec<usize>>],
        colors: &mut Vec<usize>,
        cache: &mut DepthCache,
        meter: &mut Meter,
    ) -> Result<bool> {
        if idx == order.len() {
            return Ok(true);
        }
        meter
            .tick()
            .map_err(|_| Error::Budget("tree-depth coloring search".into()))?;
        let v = order[idx];
        let limit = (used + 1).min(q);
        'colors: for c in 0..limit {
            colors[v] = c;
            // Check every small color subset containing c on the assigned
            // vertices; partial subgraphs only ever get deeper.
            for subset in &by_color[c] {
                let mut s = VertexSet::EMPTY;
                for (u, &cu) in colors.iter().enumerate() {
                    if cu != usize::MAX && subset.contains(&cu) {
                        s.insert(u);
                    }
                }
                if cache.depth(g, s, meter)? > subset.len() {
                    colors[v] = usize::MAX;
                    continue 'colors;
                }
            }
            if rec(g, order, idx + 1, used.max(c + 1), q, by_color, colors, cache, meter)? {
                return Ok(true);
            }
            colors[v] = usize::MAX;
        }
        Ok(false)
    }

    let mut cache = DepthCache { memo: HashMap::new() };
    let mut q = 1;
    loop {
        let by_color: Vec<Vec<Vec<usize>>> =
            (0..q).map(|c| subsets_with_color(q, p, c)).collect();
        let mut colors = vec![usize::MAX; g.n()];
        match rec(g, &order, 0, 0, q, &by_color, &mut colors, &mut cache, &mut meter) {
            Ok(true) => {
                let coloring = Coloring::new(colors, ColoringKind::PTreeDepth(p));
                return Ok(ExactResult::exact(q, coloring, ProofMode::ExhaustedSearch));
            }
            Ok(false) => q += 1,
            Err(Error::Budget(_)) => {
                return Ok(ExactResult {
                    lo: q,
                    hi: None,
                    certificate: None,
                    mode: ProofMode::BudgetExhausted,
                });
            }
            Err(e) => return Err(e),
        }
        if q > g.n() {
            return Err(Error::Internal("coloring search overran n".into()));
        }
    }
}

/// The color-subset composition: a (k+1)-tree-depth coloring with q
/// colors splits the graph into C(q, k+1) subgraphs of tree-depth at most
/// k+1, each covered recursively; every k-valid edge has its witness
/// inside one subgraph. Total at most C(q, k+1) * (2k)^(k+1) forests.
pub fn cover_via_low_td_coloring(
    g: &Graph,
    k: usize,
    budget: Budget,
) -> Result<(ForestCover, usize)> {
    if k < 2 {
        return Err(Error::Precondition(
            "the composition needs k >= 2; use the acyclic pair cover for k = 1".into(),
        ));
    }
    let coloring = p_tree_depth_coloring(g, k + 1, budget)?;
    let Some(q) = coloring.value() else {
        return Err(Error::Budget("tree-depth coloring stage".into()));
    };
    let coloring = coloring.certificate.expect("exact result carries its coloring");
    let mut meter = budget.meter();
    let mut forests: Vec<VertexSet> = Vec::new();
    let mut seen: HashSet<u64> = HashSet::new();
    let subset_size = (k + 1).min(q);
    let subsets = combinations(q, subset_size);
    for subset in &subsets {
        let mask = coloring.classes(subset);
        if mask.is_empty() {
            continue;
        }
        let mut trees = Vec::new();
        let mut deep = 0;
        for comp in g.components_within(mask) {
            let t = min_depth_tree_within(g, comp, &mut meter)?;
            deep = deep.max(t.depth());
            trees.push(t);
        }
        if deep > k + 1 {
            return Err(Error::Internal(format!(
                "color subset {subset:?} induces depth {deep}, over k+1 = {}",
                k + 1
            )));
        }
        if trees.is_empty() {
            continue;
        }
        // Cover within the masked subgraph; masked search keeps every
        // forest induced in g because classes induce the subgraph.
        let solver = TdCover { g, k };
        let mut ledgers = Vec::new();
        let per_tree: Vec<Vec<VertexSet>> = trees
            .iter()
            .map(|t| solver.cover_rec(t, &mut meter, &mut ledgers))
            .collect::<Result<_>>()?;
        for f in TdCover::merge_rounds(per_tree) {
            if seen.insert(f.0) {
                forests.push(f);
            }
        }
    }
    let bound = binomial(q, subset_size) * cover_bound(k, k + 1);
    if (forests.len() as u64) > bound {
        return Err(Error::Internal(format!(
            "composition produced {} forests, over the bound {bound}",
            forests.len()
        )));
    }
    Ok((ForestCover::new(g, k, forests), q))
}

fn combinations(n: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..r).collect();
    if r == 0 || r > n {
        return out;
    }
    loop {
        out.push(cur.clone());
        // next combination in lexicographic order
        let mut i = r;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] != i + n - r {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        cur[i] += 1;
        for j in i + 1..r {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

pub fn binomial(n: usize, r: usize) -> u64 {
    if r > n {
        return 0;
    }
    let r = r.min(n - r);
    let mut num = 1u64;
    for i in 0..r {
        num = num * (n - i) as u64 / (i + 1) as u64;
    }
    num
}
