//! Lifting the tree-width-2 cover to general tree-width: exact tree-width
//! by elimination-order search, greedy colorings of the fill graph whose
//! color subsets induce low-tree-width subgraphs, and the pair/triple
//! covers they yield.

use crate::budget::{Budget, Meter};
use crate::coloring::{Coloring, ColoringKind};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::oracle::ForestCover;
use crate::tw2;
use std::collections::HashMap;

/// Exact-tree-width subset cap; beyond it the search refuses to start.
pub const TW_EXACT_CAP: usize = 18;

/// Vertices reachable from `v` through eliminated set `t` (v's neighbors
/// in the fill graph after eliminating `t`).
fn fill_neighbors(g: &Graph, t: VertexSet, v: usize) -> VertexSet {
    let mut seen = VertexSet::single(v);
    let mut frontier = VertexSet::single(v);
    while !frontier.is_empty() {
        let mut next = VertexSet::EMPTY;
        for w in frontier.iter() {
            next = next.union(g.adj(w).minus(seen));
        }
        seen = seen.union(next);
        frontier = next.intersect(t);
    }
    seen.minus(t).without(v)
}

struct TwSearch<'a> {
    g: &'a Graph,
    memo: HashMap<u64, (usize, usize)>,
}

impl TwSearch<'_> {
    /// Width of the best elimination order that eliminates exactly `s`
    /// first, plus the best first... last vertex choice.
    fn width(&mut self, s: VertexSet, meter: &mut Meter) -> Result<(usize, usize)> {
        if s.is_empty() {
            return Ok((0, usize::MAX));
        }
        if let Some(&hit) = self.memo.get(&s.0) {
            return Ok(hit);
        }
        meter
            .tick()
            .map_err(|_| Error::Budget("tree-width elimination search".into()))?;
        let mut best = (usize::MAX, usize::MAX);
        for v in s.iter() {
            let rest = s.without(v);
            let back_degree = fill_neighbors(self.g, rest, v).len();
            if back_degree >= best.0 {
                continue;
            }
            let (inner, _) = self.width(rest, meter)?;
            let width = back_degree.max(inner);
            if width < best.0 {
                best = (width, v);
            }
        }
        self.memo.insert(s.0, best);
        Ok(best)
    }
}

/// Exact tree-width via memoized elimination-order search (n <= 18).
pub fn exact_treewidth(g: &Graph, budget: Budget) -> Result<usize> {
    Ok(treewidth_order(g, budget)?.0)
}

/// Exact tree-width together with an elimination order achieving it
/// (order[0] is eliminated first).
pub fn treewidth_order(g: &Graph, budget: Budget) -> Result<(usize, Vec<usize>)> {
    if g.n() > TW_EXACT_CAP {
        return Err(Error::Budget(format!(
            "exact tree-width is capped at {TW_EXACT_CAP} vertices"
        )));
    }
    if g.n() == 0 {
        return Ok((0, Vec::new()));
    }
    let mut meter = budget.meter();
    let mut search = TwSearch {
        g,
        memo: HashMap::new(),
    };
    let (tw, _) = search.width(g.vertices(), &mut meter)?;
    // Recover an order by walking the memo: the recorded vertex of s is
    // eliminated LAST among s, so unwind back to front.
    let mut order = vec![usize::MAX; g.n()];
    let mut s = g.vertices();
    for slot in (0..g.n()).rev() {
        let (_, v) = search.width(s, &mut meter)?;
        order[slot] = v;
        s.remove(v);
    }
    Ok((tw, order))
}

/// An elimination order of width at most `t` plus a proper coloring of
/// the fill graph it defines. Every vertex sees at most `t` later
/// neighbors (a clique in the fill graph), so greedy coloring along the
/// reverse order uses at most `t+1` colors, and any `p+1` color classes
/// induce a subgraph of width at most `p`.
#[derive(Debug, Clone)]
pub struct TTreeColoring {
    pub t: usize,
    /// Elimination order; order[0] goes first.
    pub order: Vec<usize>,
    /// Later (fill-graph) neighbors per vertex at its elimination time.
    pub later: Vec<VertexSet>,
    pub coloring: Coloring,
}

/// Builds the t-tree-style coloring when tw(g) <= t, else `None`.
pub fn t_tree_coloring(g: &Graph, t: usize, budget: Budget) -> Result<Option<TTreeColoring>> {
    if t == 0 {
        return Err(Error::Input("t must be at least 1".into()));
    }
    let (tw, order) = treewidth_order(g, budget)?;
    if tw > t {
        return Ok(None);
    }
    // Replay the elimination to collect each vertex's clique of later
    // neighbors in the fill graph.
    let mut eliminated = VertexSet::EMPTY;
    let mut later = vec![VertexSet::EMPTY; g.n()];
    for &v in &order {
        later[v] = fill_neighbors(g, eliminated, v);
        eliminated.insert(v);
    }
    let mut colors = vec![usize::MAX; g.n()];
    for &v in order.iter().rev() {
        let used: Vec<usize> = later[v].iter().map(|w| colors[w]).collect();
        colors[v] = (0..=t).find(|c| !used.contains(c)).expect("t+1 colors suffice");
    }
    let coloring = Coloring::new(colors, ColoringKind::Proper);
    debug_assert!(coloring.is_proper_on(g));
    Ok(Some(TTreeColoring {
        t,
        order,
        later,
        coloring,
    }))
}

/// Covers every edge with at most C(t+1, 2) 1-strong forests, one per
/// color pair; each edge lands in exactly the pair of its endpoint
/// colors.
pub fn cover_f1_tw(g: &Graph, t: usize, budget: Budget) -> Result<ForestCover> {
    let ttc = t_tree_coloring(g, t, budget)?
        .ok_or_else(|| Error::Precondition(format!("tree-width exceeds {t}")))?;
    let mut forests = Vec::new();
    for a in 0..=t {
        for b in a + 1..=t {
            let s = ttc.coloring.class(a).union(ttc.coloring.class(b));
            // Drop isolated vertices of the induced pair forest.
            let mut kept = VertexSet::EMPTY;
            for comp in g.components_within(s) {
                if g.edge_count_within(comp) >= 1 {
                    kept = kept.union(comp);
                }
            }
            if !kept.is_empty() {
                forests.push(kept);
            }
        }
    }
    Ok(ForestCover::new(g, 1, forests))
}

/// Covers the 2-valid edges with at most 3 * C(t+1, 3) 2-strong forests:
/// every color triple induces a tree-width-2 subgraph, which the good
/// coloring covers with at most three forests; a 2-valid edge's witness
/// has three vertices, so it lives in some triple.
pub fn cover_f2_tw(g: &Graph, t: usize, budget: Budget) -> Result<ForestCover> {
    if t < 2 {
        return Err(Error::Precondition("the triple cover needs t >= 2".into()));
    }
    let ttc = t_tree_coloring(g, t, budget)?
        .ok_or_else(|| Error::Precondition(format!("tree-width exceeds {t}")))?;
    let mut forests = Vec::new();
    for a in 0..=t {
        for b in a + 1..=t {
            for c in b + 1..=t {
                let s = ttc
                    .coloring
                    .class(a)
                    .union(ttc.coloring.class(b))
                    .union(ttc.coloring.class(c));
                if s.is_empty() {
                    continue;
                }
                let (sub, to_old) = g.induced(s)?;
                let cover = tw2::cover_2valid_tw2(&sub).map_err(|e| match e {
                    Error::Precondition(msg) => Error::Internal(format!(
                        "color triple violated the width guarantee: {msg}"
                    )),
                    other => other,
                })?;
                for f in cover.forests {
                    forests.push(f.iter().map(|v| to_old[v]).collect());
                }
            }
        }
    }
    Ok(ForestCover::new(g, 2, forests))
}
