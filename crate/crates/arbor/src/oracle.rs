//! Exact ground-truth computations on small graphs: f_k with optimal
//! cover certificates, tree-depth, acyclic chromatic number, Nash-Williams
//! arboricity and the closed-neighborhood distinguishing number. These are
//! the reference answers every constructive cover is checked against.

use crate::budget::{Budget, Meter};
use crate::coloring::{Coloring, ColoringKind};
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, VertexSet};
use crate::validity;
use serde::{Deserialize, Serialize};
use std::collections::{HashMap, HashSet};

/// A cover of the k-valid edges by k-strong forests, each given as the
/// vertex set inducing it. Field order is part of the JSON interface.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ForestCover {
    pub k: usize,
    pub graph_hash: String,
    #[serde(with = "forests_as_lists")]
    pub forests: Vec<VertexSet>,
}

mod forests_as_lists {
    use super::VertexSet;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(f: &[VertexSet], s: S) -> Result<S::Ok, S::Error> {
        let lists: Vec<Vec<usize>> = f.iter().map(|v| v.to_vec()).collect();
        lists.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<VertexSet>, D::Error> {
        let lists: Vec<Vec<usize>> = Vec::deserialize(d)?;
        for l in &lists {
            if l.iter().any(|&v| v >= crate::graph::MAX_VERTICES) {
                return Err(serde::de::Error::custom("vertex index over the cap"));
            }
        }
        Ok(lists
            .into_iter()
            .map(|l| l.into_iter().collect())
            .collect())
    }
}

impl ForestCover {
    pub fn new(g: &Graph, k: usize, forests: Vec<VertexSet>) -> Self {
        ForestCover {
            k,
            graph_hash: g.hash_hex(),
            forests,
        }
    }

    pub fn size(&self) -> usize {
        self.forests.len()
    }

    /// Union of the forests' edge sets.
    pub fn covered_edges(&self, g: &Graph) -> HashSet<Edge> {
        let mut out = HashSet::new();
        for f in &self.forests {
            out.extend(g.edges_within(*f));
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

/// Why an alleged cover is not one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoverViolation {
    /// Forest `index` induces a cycle.
    Cyclic { index: usize },
    /// Forest `index` has a component with fewer than k edges.
    UndersizedComponent {
        index: usize,
        component: VertexSet,
        edges: usize,
    },
    /// A k-valid edge not covered by any forest.
    MissingEdge { edge: Edge },
}

impl std::fmt::Display for CoverViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CoverViolation::Cyclic { index } => write!(f, "forest {index} induces a cycle"),
            CoverViolation::UndersizedComponent {
                index,
                component,
                edges,
            } => write!(
                f,
                "forest {index} has component {component:?} with only {edges} edge(s)"
            ),
            CoverViolation::MissingEdge { edge } => {
                write!(f, "k-valid edge ({}, {}) is uncovered", edge.0, edge.1)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Valid,
    Invalid(CoverViolation),
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verdict::Valid)
    }
}

/// Checks both cover invariants: every forest is k-strong, and the union
/// of forest edges contains every k-valid edge. Reports the first
/// violation found.
pub fn verify_cover(g: &Graph, cover: &ForestCover) -> Result<Verdict> {
    if cover.graph_hash != g.hash_hex() {
        return Err(Error::HashMismatch {
            expected: cover.graph_hash.clone(),
            got: g.hash_hex(),
        });
    }
    if cover.k == 0 {
        return Err(Error::Input("cover strength k must be at least 1".into()));
    }
    for (index, &f) in cover.forests.iter().enumerate() {
        if !f.is_subset_of(g.vertices()) {
            return Err(Error::Input(format!("forest {index} out of vertex range")));
        }
        let (acyclic, comps) = g.is_induced_forest(f);
        if !acyclic {
            return Ok(Verdict::Invalid(CoverViolation::Cyclic { index }));
        }
        for &(component, edges) in &comps {
            if edges < cover.k {
                return Ok(Verdict::Invalid(CoverViolation::UndersizedComponent {
                    index,
                    component,
                    edges,
                }));
            }
        }
    }
    let covered = cover.covered_edges(g);
    for e in validity::k_valid_edges(g, cover.k)? {
        if !covered.contains(&e) {
            return Ok(Verdict::Invalid(CoverViolation::MissingEdge { edge: e }));
        }
    }
    Ok(Verdict::Valid)
}

/// How an exact value was established.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProofMode {
    /// The search space was exhausted down to the reported value.
    ExhaustedSearch,
    /// Matching lower and upper bounds met without a full search.
    BoundMet,
    /// The budget ran out; only the interval is known.
    BudgetExhausted,
}

/// The result of an exact computation: either a pinned value (lo == hi)
/// with a certificate, or an honest interval after budget exhaustion.
#[derive(Debug, Clone)]
pub struct ExactResult<C> {
    pub lo: usize,
    pub hi: Option<usize>,
    pub certificate: Option<C>,
    pub mode: ProofMode,
}

impl<C> ExactResult<C> {
    pub fn value(&self) -> Option<usize> {
        match self.hi {
            Some(hi) if hi == self.lo && self.mode != ProofMode::BudgetExhausted => Some(hi),
            _ => None,
        }
    }

    pub fn exact(value: usize, certificate: C, mode: ProofMode) -> Self {
        ExactResult {
            lo: value,
            hi: Some(value),
            certificate: Some(certificate),
            mode,
        }
    }

    fn interval(lo: usize, hi: Option<usize>, certificate: Option<C>) -> Self {
        ExactResult {
            lo,
            hi,
            certificate,
            mode: ProofMode::BudgetExhausted,
        }
    }
}

/// Candidate family for the set cover behind `exact_f_k`: maximal induced
/// forests with their small components discarded. Every k-strong forest's
/// edge set is contained in some member's edge set, because adding whole
/// vertices never shrinks a component and dropping a whole small component
/// keeps the forest induced.
pub fn enumerate_candidate_forests_within(
    g: &Graph,
    within: VertexSet,
    k: usize,
    meter: &mut Meter,
) -> Result<Vec<VertexSet>> {
    if k == 0 {
        return Err(Error::Input("k must be at least 1".into()));
    }
    let verts = within.to_vec();

    // Walk all acyclic subsets of `within` in index order, tracking a
    // union-find of forest components; keep maximal ones.
    struct Walk<'a> {
        g: &'a Graph,
        verts: Vec<usize>,
        k: usize,
        out: HashSet<VertexSet>,
    }
    impl Walk<'_> {
        fn root(dsu: &mut [usize], mut x: usize) -> usize {
            while dsu[x] != x {
                dsu[x] = dsu[dsu[x]];
                x = dsu[x];
            }
            x
        }

        // Distinct component roots among v's neighbors inside s, or None
        // if two neighbors share a component (adding v would close a cycle).
        fn addable(&self, dsu: &mut [usize], s: VertexSet, v: usize) -> Option<Vec<usize>> {
            let mut roots = Vec::new();
            for w in self.g.adj(v).intersect(s).iter() {
                let r = Self::root(dsu, w);
                if roots.contains(&r) {
                    return None;
                }
                roots.push(r);
            }
            Some(roots)
        }

        fn rec(
            &mut self,
            idx: usize,
            s: VertexSet,
            dsu: &mut Vec<usize>,
            meter: &mut Meter,
        ) -> Result<()> {
            meter
                .tick()
                .map_err(|_| Error::Budget("candidate forest enumeration".into()))?;
            if idx == self.verts.len() {
                // Maximal iff no outside vertex can be added.
                for &v in &self.verts {
                    if !s.contains(v) && self.addable(dsu, s, v).is_some() {
                        return Ok(());
                    }
                }
                let mut kept = VertexSet::EMPTY;
                for comp in self.g.components_within(s) {
                    if self.g.edge_count_within(comp) >= self.k {
                        kept = kept.union(comp);
                    }
                }
                if !kept.is_empty() {
                    self.out.insert(kept);
                }
                return Ok(());
            }
            let v = self.verts[idx];
            if let Some(roots) = self.addable(dsu, s, v) {
                let mut next = dsu.clone();
                for r in roots {
                    next[r] = v;
                }
                self.rec(idx + 1, s.with(v), &mut next, meter)?;
            }
            self.rec(idx + 1, s, dsu, meter)
        }
    }

    let mut walk = Walk {
        g,
        verts,
        k,
        out: HashSet::new(),
    };
    let mut dsu: Vec<usize> = (0..g.n()).collect();
    walk.rec(0, VertexSet::EMPTY, &mut dsu, meter)?;

    let mut list: Vec<VertexSet> = walk.out.into_iter().collect();
    list.sort_by_key(|s| s.to_vec());
    Ok(list)
}

pub fn enumerate_candidate_forests(g: &Graph, k: usize) -> Result<Vec<VertexSet>> {
    enumerate_candidate_forests_within(g, g.vertices(), k, &mut Budget::default().meter())
}

/// Dynamic bitset over edge indices of the cover universe.
#[derive(Clone, PartialEq, Eq, Hash)]
struct EdgeMask(Vec<u64>);

impl EdgeMask {
    fn empty(m: usize) -> Self {
        EdgeMask(vec![0; m.div_ceil(64)])
    }

    fn full(m: usize) -> Self {
        let mut e = Self::empty(m);
        for i in 0..m {
            e.set(i);
        }
        e
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn get(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    fn minus(&self, other: &Self) -> Self {
        EdgeMask(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a & !b)
                .collect(),
        )
    }

    fn count_and(&self, other: &Self) -> usize {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }
}

struct CoverSearch<'a> {
    cand_masks: &'a [EdgeMask],
    coverers: &'a [Vec<usize>],
    memo: HashMap<Vec<u64>, usize>,
}

impl CoverSearch<'_> {
    /// Depth-bounded exact cover: find `remaining` candidates covering
    /// `uncovered`, or prove impossible at this depth.
    fn dfs(
        &mut self,
        uncovered: &EdgeMask,
        remaining: usize,
        meter: &mut Meter,
    ) -> Result<Option<Vec<usize>>> {
        meter
            .tick()
            .map_err(|_| Error::Budget("minimum set cover search".into()))?;
        if uncovered.is_empty() {
            return Ok(Some(Vec::new()));
        }
        if remaining == 0 {
            return Ok(None);
        }
        if let Some(&failed_at) = self.memo.get(&uncovered.0) {
            if failed_at >= remaining {
                return Ok(None);
            }
        }
        // Branch on the uncovered edge with the fewest covering candidates.
        let mut pick = usize::MAX;
        let mut pick_cov = usize::MAX;
        for i in 0..self.coverers.len() {
            if uncovered.get(i) && self.coverers[i].len() < pick_cov {
                pick = i;
                pick_cov = self.coverers[i].len();
            }
        }
        debug_assert!(pick != usize::MAX);
        let mut order: Vec<usize> = self.coverers[pick].clone();
        order.sort_by_key(|&c| {
            (
                usize::MAX - self.cand_masks[c].count_and(uncovered),
                c,
            )
        });
        for c in order {
            let next = uncovered.minus(&self.cand_masks[c]);
            if let Some(mut rest) = self.dfs(&next, remaining - 1, meter)? {
                rest.push(c);
                return Ok(Some(rest));
            }
        }
        let entry = self.memo.entry(uncovered.0.clone()).or_insert(0);
        *entry = (*entry).max(remaining);
        Ok(None)
    }
}

/// Exact k-strong induced arboricity with an optimal cover certificate.
/// On budget exhaustion an interval is returned, never a wrong value.
pub fn exact_f_k(g: &Graph, k: usize, budget: Budget) -> Result<ExactResult<ForestCover>> {
    f_k_search(g, k, budget, true)
}

/// The greedy upper bound and conflict lower bound only, skipping the
/// exhaustive cover search. The certificate is a valid (not necessarily
/// optimal) cover of size `hi`.
pub fn bound_f_k(g: &Graph, k: usize, budget: Budget) -> Result<ExactResult<ForestCover>> {
    f_k_search(g, k, budget, false)
}

fn f_k_search(g: &Graph, k: usize, budget: Budget, search: bool) -> Result<ExactResult<ForestCover>> {
    if k == 0 {
        return Err(Error::Input("k must be at least 1".into()));
    }
    let mut meter = budget.meter();
    let universe = match validity::k_valid_edges_within(g, g.vertices(), k, &mut meter) {
        Ok(u) => u,
        Err(Error::Budget(_)) => return Ok(ExactResult::interval(0, None, None)),
        Err(e) => return Err(e),
    };
    if universe.is_empty() {
        return Ok(ExactResult::exact(
            0,
            ForestCover::new(g, k, Vec::new()),
            ProofMode::BoundMet,
        ));
    }
    let candidates = match enumerate_candidate_forests_within(g, g.vertices(), k, &mut meter) {
        Ok(c) => c,
        Err(Error::Budget(_)) => return Ok(ExactResult::interval(1, None, None)),
        Err(e) => return Err(e),
    };

    let m = universe.len();
    let edge_index: HashMap<Edge, usize> =
        universe.iter().copied().enumerate().map(|(i, e)| (e, i)).collect();
    let mut cand_masks: Vec<EdgeMask> = Vec::with_capacity(candidates.len());
    for &c in &candidates {
        let mut mask = EdgeMask::empty(m);
        for e in g.edges_within(c) {
            mask.set(edge_index[&e]);
        }
        cand_masks.push(mask);
    }
    // Dominance: drop candidates whose edge set lies inside another's.
    let mut keep = vec![true; candidates.len()];
    for i in 0..candidates.len() {
        if !keep[i] {
            continue;
        }
        for j in 0..candidates.len() {
            if i != j
                && keep[j]
                && keep[i]
                && cand_masks[i].minus(&cand_masks[j]).is_empty()
                && (!cand_masks[j].minus(&cand_masks[i]).is_empty() || j < i)
            {
                keep[i] = false;
            }
        }
    }
    let candidates: Vec<VertexSet> = candidates
        .iter()
        .zip(&keep)
        .filter(|(_, &k)| k)
        .map(|(&c, _)| c)
        .collect();
    let cand_masks: Vec<EdgeMask> = cand_masks
        .into_iter()
        .zip(&keep)
        .filter(|(_, &k)| k)
        .map(|(m, _)| m)
        .collect();

    let coverers: Vec<Vec<usize>> = (0..m)
        .map(|i| {
            (0..candidates.len())
                .filter(|&c| cand_masks[c].get(i))
                .collect()
        })
        .collect();

    // Greedy upper bound.
    let mut greedy: Vec<usize> = Vec::new();
    let mut uncovered = EdgeMask::full(m);
    while !uncovered.is_empty() {
        let best = (0..candidates.len())
            .max_by_key(|&c| (cand_masks[c].count_and(&uncovered), usize::MAX - c))
            .expect("every k-valid edge has a candidate");
        if cand_masks[best].count_and(&uncovered) == 0 {
            return Err(Error::Internal(
                "candidate family fails to cover a k-valid edge".into(),
            ));
        }
        uncovered = uncovered.minus(&cand_masks[best]);
        greedy.push(best);
    }

    // Pairwise-conflict lower bound: a set of k-valid edges no candidate
    // covers two of.
    let share_candidate =
        |i: usize, j: usize| coverers[i].iter().any(|c| coverers[j].contains(c));
    let mut conflict_set: Vec<usize> = Vec::new();
    for i in 0..m {
        if conflict_set.iter().all(|&j| !share_candidate(i, j)) {
            conflict_set.push(i);
        }
    }
    let lb = conflict_set.len().max(1);
    let ub = greedy.len();

    let build_cover = |chosen: &[usize]| {
        let mut forests: Vec<VertexSet> = chosen.iter().map(|&c| candidates[c]).collect();
        forests.sort_by_key(|s| s.to_vec());
        ForestCover::new(g, k, forests)
    };

    if lb == ub {
        return Ok(ExactResult::exact(ub, build_cover(&greedy), ProofMode::BoundMet));
    }
    if !search {
        return Ok(ExactResult::interval(lb, Some(ub), Some(build_cover(&greedy))));
    }

    // Iterative deepening on the cover size.
    let mut search = CoverSearch {
        cand_masks: &cand_masks,
        coverers: &coverers,
        memo: HashMap::new(),
    };
    for target in lb..ub {
        match search.dfs(&EdgeMask::full(m), target, &mut meter) {
            Ok(Some(chosen)) => {
                return Ok(ExactResult::exact(
                    target,
                    build_cover(&chosen),
                    ProofMode::ExhaustedSearch,
                ));
            }
            Ok(None) => {}
            Err(Error::Budget(_)) => {
                return Ok(ExactResult::interval(
                    target,
                    Some(ub),
                    Some(build_cover(&greedy)),
                ));
            }
            Err(e) => return Err(e),
        }
    }
    Ok(ExactResult::exact(
        ub,
        build_cover(&greedy),
        ProofMode::ExhaustedSearch,
    ))
}

/// A rooted forest certificate for tree-depth: parents per vertex, `None`
/// at roots. Depth counts vertices along a root path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootedForest {
    pub parent: Vec<Option<usize>>,
}

impl RootedForest {
    pub fn roots(&self) -> Vec<usize> {
        self.parent
            .iter()
            .enumerate()
            .filter(|(_, p)| p.is_none())
            .map(|(v, _)| v)
            .collect()
    }

    pub fn depth_of(&self, mut v: usize) -> usize {
        let mut d = 1;
        while let Some(p) = self.parent[v] {
            v = p;
            d += 1;
        }
        d
    }

    pub fn depth(&self) -> usize {
        (0..self.parent.len())
            .map(|v| self.depth_of(v))
            .max()
            .unwrap_or(0)
    }

    /// Is u an ancestor of v (or equal)?
    pub fn is_ancestor(&self, u: usize, v: usize) -> bool {
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

    /// Every edge of `g` must join an ancestor/descendant pair.
    pub fn closure_contains(&self, g: &Graph) -> bool {
        g.edges()
            .iter()
            .all(|&(u, v)| self.is_ancestor(u, v) || self.is_ancestor(v, u))
    }
}

struct TdSearch<'a> {
    g: &'a Graph,
    memo: HashMap<u64, (usize, usize)>,
}

impl TdSearch<'_> {
    /// Minimum depth of a single underlying tree for the connected set `s`.
    fn depth(&mut self, s: VertexSet, meter: &mut Meter) -> Result<(usize, usize)> {
        if s.len() == 1 {
            return Ok((1, s.min_elem().unwrap()));
        }
        if let Some(&hit) = self.memo.get(&s.0) {
            return Ok(hit);
        }
        meter
            .tick()
            .map_err(|_| Error::Budget("tree-depth recursion".into()))?;
        let mut best = (usize::MAX, usize::MAX);
        for r in s.iter() {
            let rest = s.without(r);
            let mut worst = 0usize;
            if !rest.is_empty() {
                for comp in self.g.components_within(rest) {
                    let (d, _) = self.depth(comp, meter)?;
                    worst = worst.max(d);
                    if 1 + worst >= best.0 {
                        break;
                    }
                }
            }
            if 1 + worst < best.0 {
                best = (1 + worst, r);
            }
        }
        self.memo.insert(s.0, best);
        Ok(best)
    }

    fn build(&mut self, s: VertexSet, parent_of_root: Option<usize>, out: &mut Vec<Option<usize>>, meter: &mut Meter) -> Result<()> {
        let (_, r) = self.depth(s, meter)?;
        out[r] = parent_of_root;
        let rest = s.without(r);
        for comp in self.g.components_within(rest) {
            self.build(comp, Some(r), out, meter)?;
        }
        Ok(())
    }
}

/// Exact tree-depth with an underlying rooted forest certificate
/// (one tree per connected component).
pub fn exact_tree_depth(g: &Graph, budget: Budget) -> Result<ExactResult<RootedForest>> {
    let mut meter = budget.meter();
    let mut search = TdSearch {
        g,
        memo: HashMap::new(),
    };
    let mut parent = vec![None; g.n()];
    let mut depth = 0usize;
    for comp in g.components() {
        match search.depth(comp, &mut meter) {
            Ok((d, _)) => {
                depth = depth.max(d);
                search.build(comp, None, &mut parent, &mut meter)?;
            }
            Err(Error::Budget(_)) => {
                return Ok(ExactResult::interval(1, None, None));
            }
            Err(e) => return Err(e),
        }
    }
    let forest = RootedForest { parent };
    if !forest.closure_contains(g) || forest.depth() != depth {
        return Err(Error::Internal("tree-depth certificate failed".into()));
    }
    Ok(ExactResult::exact(depth, forest, ProofMode::ExhaustedSearch))
}

fn acyclic_coloring_attempt(
    g: &Graph,
    q: usize,
    meter: &mut Meter,
) -> Result<Option<Vec<usize>>> {
    // Vertices in descending-degree order; colors canonicalized so vertex
    // i may use at most one color beyond those already in use.
    let mut order: Vec<usize> = (0..g.n()).collect();
    order.sort_by_key(|&v| (usize::MAX - g.degree(v), v));
    let n = g.n();
    let mut color = vec![usize::MAX; n];

    fn ok_so_far(g: &Graph, color: &[usize], v: usize, q: usize) -> bool {
        let c = color[v];
        for w in g.adj(v).iter() {
            if color[w] == c {
                return false;
            }
        }
        // No bicolored cycle may appear among assigned vertices; only
        // pairs involving v's color can have changed.
        for b in 0..q {
            if b == c {
                continue;
            }
            let mut s = VertexSet::EMPTY;
            for (u, &cu) in color.iter().enumerate() {
                if cu == c || cu == b {
                    s.insert(u);
                }
            }
            if !g.is_induced_forest(s).0 {
                return false;
            }
        }
        true
    }

    fn rec(
        g: &Graph,
        order: &[usize],
        idx: usize,
        used: usize,
        q: usize,
        color: &mut Vec<usize>,
        meter: &mut Meter,
    ) -> Result<bool> {
        if idx == order.len() {
            return Ok(true);
        }
        meter
            .tick()
            .map_err(|_| Error::Budget("acyclic coloring search".into()))?;
        let v = order[idx];
        let limit = (used + 1).min(q);
        for c in 0..limit {
            color[v] = c;
            if ok_so_far(g, color, v, q)
                && rec(g, order, idx + 1, used.max(c + 1), q, color, meter)?
            {
                return Ok(true);
            }
            color[v] = usize::MAX;
        }
        Ok(false)
    }

    if rec(g, &order, 0, 0, q, &mut color, meter)? {
        Ok(Some(color))
    } else {
        Ok(None)
    }
}

/// Exact acyclic chromatic number with a certifying coloring.
pub fn exact_acyclic_chromatic(g: &Graph, budget: Budget) -> Result<ExactResult<Coloring>> {
    if g.n() == 0 {
        return Ok(ExactResult::exact(
            0,
            Coloring::new(Vec::new(), ColoringKind::Acyclic),
            ProofMode::BoundMet,
        ));
    }
    let mut meter = budget.meter();
    let mut q = 1;
    loop {
        match acyclic_coloring_attempt(g, q, &mut meter) {
            Ok(Some(colors)) => {
                let coloring = Coloring::new(colors, ColoringKind::Acyclic);
                if !coloring.is_acyclic_on(g) {
                    return Err(Error::Internal("acyclic coloring certificate failed".into()));
                }
                return Ok(ExactResult::exact(q, coloring, ProofMode::ExhaustedSearch));
            }
            Ok(None) => q += 1,
            Err(Error::Budget(_)) => return Ok(ExactResult::interval(q, None, None)),
            Err(e) => return Err(e),
        }
        if q > g.n() {
            return Err(Error::Internal("acyclic coloring search overran n".into()));
        }
    }
}

/// Nash-Williams edge arboricity: the maximum of ceil(m_H / (n_H - 1))
/// over connected induced subgraphs H on at least two vertices. Edgeless
/// graphs report 0.
pub fn nash_williams_arboricity(g: &Graph, budget: Budget) -> Result<usize> {
    if g.edge_count() == 0 {
        return Ok(0);
    }
    let mut meter = budget.meter();
    let mut best = 0usize;
    let mut visited: HashSet<u64> = HashSet::new();
    let mut stack: Vec<VertexSet> = Vec::new();
    for v in 0..g.n() {
        let s = VertexSet::single(v);
        visited.insert(s.0);
        stack.push(s);
    }
    while let Some(s) = stack.pop() {
        meter
            .tick()
            .map_err(|_| Error::Budget("dense subgraph enumeration".into()))?;
        if s.len() >= 2 {
            let m = g.edge_count_within(s);
            best = best.max(m.div_ceil(s.len() - 1));
        }
        let mut boundary = VertexSet::EMPTY;
        for v in s.iter() {
            boundary = boundary.union(g.adj(v));
        }
        for w in boundary.minus(s).iter() {
            let next = s.with(w);
            if visited.insert(next.0) {
                stack.push(next);
            }
        }
    }
    Ok(best)
}

/// Exact adjacent closed vertex-distinguishing number by label search:
/// the least `l` admitting labels in `{1..l}` whose closed-neighborhood
/// sums differ across every edge joining non-twins. `cap` bounds the
/// search; if exceeded, the result is the honest lower bound `cap + 1`.
pub fn exact_dis(g: &Graph, cap: usize, budget: Budget) -> Result<ExactResult<Vec<usize>>> {
    if g.n() > 12 {
        return Err(Error::Input(
            "dis search is restricted to graphs with at most 12 vertices".into(),
        ));
    }
    if cap == 0 {
        return Err(Error::Input("label cap must be at least 1".into()));
    }
    let mut meter = budget.meter();
    let n = g.n();
    // Edges constrained: endpoints are not twins. Check an edge as soon as
    // every vertex of N[u] ∪ N[v] carries a label.
    let constrained: Vec<Edge> = g
        .edges()
        .iter()
        .copied()
        .filter(|&(u, v)| g.closed_adj(u) != g.closed_adj(v))
        .collect();
    let mut check_at: Vec<Vec<Edge>> = vec![Vec::new(); n.max(1)];
    for &(u, v) in &constrained {
        let span = g.closed_adj(u).union(g.closed_adj(v));
        let last = span.iter().max().unwrap();
        check_at[last].push((u, v));
    }

    fn rec(
        g: &Graph,
        labels: &mut Vec<usize>,
        v: usize,
        l: usize,
        check_at: &[Vec<Edge>],
        meter: &mut Meter,
    ) -> Result<bool> {
        if v == g.n() {
            return Ok(true);
        }
        meter
            .tick()
            .map_err(|_| Error::Budget("distinguishing labeling search".into()))?;
        'labels: for lab in 1..=l {
            labels[v] = lab;
            for &(a, b) in &check_at[v] {
                let sum = |x: usize| -> usize { g.closed_adj(x).iter().map(|w| labels[w]).sum() };
                if sum(a) == sum(b) {
                    continue 'labels;
                }
            }
            if rec(g, labels, v + 1, l, check_at, meter)? {
                return Ok(true);
            }
        }
        labels[v] = 0;
        Ok(false)
    }

    for l in 1..=cap {
        let mut labels = vec![0usize; n];
        match rec(g, &mut labels, 0, l, &check_at, &mut meter) {
            Ok(true) => {
                return Ok(ExactResult::exact(l, labels, ProofMode::ExhaustedSearch));
            }
            Ok(false) => {}
            Err(Error::Budget(_)) => return Ok(ExactResult::interval(l, None, None)),
            Err(e) => return Err(e),
        }
    }
    Ok(ExactResult::interval(cap + 1, None, None))
}

/// Outcome of checking dis[G] <= p_1 ... p_m against a full-edge 2-strong
/// cover, the executable form of the distinguishing-number bound.
#[derive(Debug, Clone)]
pub struct DisBoundReport {
    pub dis: usize,
    pub bound: usize,
    pub holds: bool,
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Asserts dis[G] <= p_1 * ... * p_m for a cover of ALL edges of `g` by m
/// 2-strong forests and pairwise coprime integers p_i >= 4.
pub fn check_dis_bound(
    g: &Graph,
    cover: &ForestCover,
    coprimes: &[usize],
    budget: Budget,
) -> Result<DisBoundReport> {
    if cover.k != 2 {
        return Err(Error::Precondition("cover must have strength 2".into()));
    }
    if coprimes.len() != cover.forests.len() {
        return Err(Error::Precondition(format!(
            "need one integer per forest: {} forests, {} integers",
            cover.forests.len(),
            coprimes.len()
        )));
    }
    if coprimes.iter().any(|&p| p < 4) {
        return Err(Error::Precondition("all integers must be at least 4".into()));
    }
    for i in 0..coprimes.len() {
        for j in i + 1..coprimes.len() {
            if gcd(coprimes[i], coprimes[j]) != 1 {
                return Err(Error::Precondition(format!(
                    "{} and {} are not coprime",
                    coprimes[i], coprimes[j]
                )));
            }
        }
    }
    if !verify_cover(g, cover)?.is_valid() {
        return Err(Error::Precondition("cover is not a valid 2-strong cover".into()));
    }
    let covered = cover.covered_edges(g);
    if covered.len() != g.edge_count() {
        return Err(Error::Precondition(
            "the bound needs every edge covered, not just the 2-valid ones".into(),
        ));
    }
    let bound: usize = coprimes.iter().product();
    let dis = exact_dis(g, bound, budget)?;
    match dis.value() {
        Some(d) => Ok(DisBoundReport {
            dis: d,
            bound,
            holds: d <= bound,
        }),
        None => Err(Error::Budget("dis search within the bound".into())),
    }
}
