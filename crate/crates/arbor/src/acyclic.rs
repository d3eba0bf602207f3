//! The acyclic-coloring pipeline: split each color pair's forest into its
//! 2-strong part and its induced matching, contract the matchings, color
//! the contractions, and un-contract back into low-tree-width pieces
//! whose 2-strong covers catch every leftover 2-valid edge. Two counting
//! routes exist (per-pair contraction, or re-grouping the leftovers into
//! at most x matchings first); `Best` runs both and keeps the smaller.

use crate::budget::Budget;
use crate::coloring::Coloring;
use crate::error::{Error, Result};
use crate::graph::{ContractionMap, Edge, Graph, VertexSet};
use crate::oracle::{self, ForestCover};
use crate::td::binomial;
use crate::tw;
use crate::tw2;
use crate::validity;
use std::collections::{HashMap, HashSet};

/// One color pair's split of its induced forest.
#[derive(Debug, Clone)]
pub struct PairForests {
    pub colors: (usize, usize),
    /// Union of the pair's components with at least two edges.
    pub strong: VertexSet,
    /// The single-edge components: an induced matching.
    pub matching: Vec<Edge>,
}

/// The per-pair decomposition induced by an acyclic coloring.
#[derive(Debug, Clone)]
pub struct PairSplit {
    pub coloring: Coloring,
    pub pairs: Vec<PairForests>,
    /// Edges in no pair's 2-strong forest (the union of the matchings).
    pub leftover: Vec<Edge>,
}

/// Splits every color pair's forest into its 2-strong part and its
/// induced matching. Every edge of `g` lands in exactly one pair.
pub fn pair_split(g: &Graph, coloring: &Coloring) -> Result<PairSplit> {
    if !coloring.is_acyclic_on(g) {
        return Err(Error::Precondition(
            "the supplied coloring is not acyclic on this graph".into(),
        ));
    }
    let q = coloring.num_colors();
    let mut pairs = Vec::new();
    let mut leftover = Vec::new();
    for a in 0..q {
        for b in a + 1..q {
            let s = coloring.class(a).union(coloring.class(b));
            let mut strong = VertexSet::EMPTY;
            let mut matching = Vec::new();
            for comp in g.components_within(s) {
                match g.edge_count_within(comp) {
                    0 => {}
                    1 => matching.push(g.edges_within(comp)[0]),
                    _ => strong = strong.union(comp),
                }
            }
            debug_assert!(is_induced_matching(g, &matching));
            leftover.extend(matching.iter().copied());
            pairs.push(PairForests {
                colors: (a, b),
                strong,
                matching,
            });
        }
    }
    leftover.sort();
    Ok(PairSplit {
        coloring: coloring.clone(),
        pairs,
        leftover,
    })
}

/// Pairwise disjoint, pairwise non-adjacent, and no edge of `g` joins two
/// of the matching's edges.
pub fn is_induced_matching(g: &Graph, m: &[Edge]) -> bool {
    let mut touched = VertexSet::EMPTY;
    for &(u, v) in m {
        if touched.contains(u) || touched.contains(v) {
            return false;
        }
        touched.insert(u);
        touched.insert(v);
    }
    let sub = g.edges_within(touched);
    sub.len() == m.len() && m.iter().all(|e| sub.contains(e))
}

/// Expands a two-class vertex set of the contracted graph back into the
/// source graph. The set must induce a forest in the contraction.
pub fn uncontract_forest_pair(
    g: &Graph,
    contracted: &Graph,
    map: &ContractionMap,
    h_ab: VertexSet,
) -> Result<VertexSet> {
    if map.source_hash != g.hash() {
        return Err(Error::HashMismatch {
            expected: format!("{:016x}", map.source_hash),
            got: g.hash_hex(),
        });
    }
    if !contracted.is_induced_forest(h_ab).0 {
        return Err(Error::Precondition(
            "the selected color classes do not induce a forest in the contraction".into(),
        ));
    }
    Ok(map.expand(h_ab))
}

/// Covers every edge with at most C(x, 2) 1-strong forests, one per pair
/// of acyclic-coloring classes.
pub fn cover_f1_acyclic(g: &Graph, budget: Budget) -> Result<ForestCover> {
    let res = oracle::exact_acyclic_chromatic(g, budget)?;
    let Some(_) = res.value() else {
        return Err(Error::Budget("acyclic coloring stage".into()));
    };
    let coloring = res.certificate.expect("exact result carries its coloring");
    let q = coloring.num_colors();
    let mut forests = Vec::new();
    for a in 0..q {
        for b in a + 1..q {
            let s = coloring.class(a).union(coloring.class(b));
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

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Route {
    /// Contract each pair's matching separately; pieces have tree-width <= 2.
    Pair,
    /// Re-group all leftovers into at most x matchings by edge coloring;
    /// pieces have tree-width <= 3.
    Vizing,
    /// Run both and keep the smaller verified cover.
    Best,
}

#[derive(Debug, Clone)]
pub struct AcyclicCoverReport {
    pub route: Route,
    /// Acyclic chromatic number of the input.
    pub x: usize,
    /// Acyclic chromatic numbers of the contracted graphs processed.
    pub contraction_x: Vec<usize>,
    pub pieces_checked: usize,
    pub max_piece_treewidth: usize,
    /// C(x,2) * (3 C(x,2) + 1), the pair-route counting bound.
    pub pair_bound: u64,
    /// C(x,2) * (12x + 1), the regrouping-route counting bound.
    pub vizing_bound: u64,
}

fn acyclic_coloring_cached(
    g: &Graph,
    cache: &mut HashMap<u64, Coloring>,
    budget: Budget,
) -> Result<Coloring> {
    if let Some(c) = cache.get(&g.hash()) {
        return Ok(c.clone());
    }
    let res = oracle::exact_acyclic_chromatic(g, budget)?;
    if res.value().is_none() {
        return Err(Error::Budget("acyclic coloring of a contraction".into()));
    }
    let c = res.certificate.expect("exact result carries its coloring");
    cache.insert(g.hash(), c.clone());
    Ok(c)
}

/// Covers the leftover 2-valid edges of one matching by contracting it,
/// coloring the contraction, and covering each un-contracted pair piece.
/// `max_tw` is the lemma's width guarantee: 2 for induced matchings,
/// 3 in general.
#[allow(clippy::too_many_arguments)]
fn cover_matching_leftovers(
    g: &Graph,
    m: &[Edge],
    needed: &mut HashSet<Edge>,
    max_tw: usize,
    forests: &mut Vec<VertexSet>,
    report: &mut AcyclicCoverReport,
    cache: &mut HashMap<u64, Coloring>,
    budget: Budget,
) -> Result<()> {
    if m.iter().all(|e| !needed.contains(e)) {
        return Ok(());
    }
    let (gm, map) = g.contract_matching(m)?;
    let cm = acyclic_coloring_cached(&gm, cache, budget)?;
    report.contraction_x.push(cm.num_colors());
    let q = cm.num_colors();
    'pairs: for a in 0..q {
        for b in a + 1..q {
            if m.iter().all(|e| !needed.contains(e)) {
                break 'pairs;
            }
            let h_ab = cm.class(a).union(cm.class(b));
            let piece = uncontract_forest_pair(g, &gm, &map, h_ab)?;
            // Only pieces that can still cover something are expanded.
            let relevant = m
                .iter()
                .any(|&(u, v)| needed.contains(&(u, v)) && piece.contains(u) && piece.contains(v));
            if !relevant {
                continue;
            }
            let (sub, to_old) = g.induced(piece)?;
            let piece_tw = tw::exact_treewidth(&sub, budget)?;
            report.pieces_checked += 1;
            report.max_piece_treewidth = report.max_piece_treewidth.max(piece_tw);
            if piece_tw > max_tw {
                return Err(Error::Internal(format!(
                    "un-contracted piece has tree-width {piece_tw}, over the guaranteed {max_tw}"
                )));
            }
            let cover = if max_tw <= 2 {
                tw2::cover_2valid_tw2(&sub)?
            } else {
                tw::cover_f2_tw(&sub, 3, budget)?
            };
            for f in cover.forests {
                let lifted: VertexSet = f.iter().map(|v| to_old[v]).collect();
                for e in g.edges_within(lifted) {
                    needed.remove(&e);
                }
                forests.push(lifted);
            }
        }
    }
    if let Some(missed) = m.iter().find(|e| needed.contains(e)) {
        return Err(Error::Internal(format!(
            "2-valid matching edge ({}, {}) survived every piece",
            missed.0, missed.1
        )));
    }
    Ok(())
}

/// Decomposes the leftover edges into at most max-degree-plus-one
/// matchings by backtracking; such a decomposition always exists.
fn edge_color_classes(edges: &[Edge]) -> Result<Vec<Vec<Edge>>> {
    if edges.is_empty() {
        return Ok(Vec::new());
    }
    let mut deg: HashMap<usize, usize> = HashMap::new();
    for &(u, v) in edges {
        *deg.entry(u).or_insert(0) += 1;
        *deg.entry(v).or_insert(0) += 1;
    }
    let classes = deg.values().copied().max().unwrap_or(0) + 1;
    let mut assign = vec![usize::MAX; edges.len()];

    fn rec(edges: &[Edge], assign: &mut Vec<usize>, idx: usize, classes: usize) -> bool {
        if idx == edges.len() {
            return true;
        }
        let (u, v) = edges[idx];
        'colors: for c in 0..classes {
            for j in 0..idx {
                if assign[j] == c {
                    let (a, b) = edges[j];
                    if a == u || a == v || b == u || b == v {
                        continue 'colors;
                    }
                }
            }
            assign[idx] = c;
            if rec(edges, assign, idx + 1, classes) {
                return true;
            }
            assign[idx] = usize::MAX;
        }
        false
    }

    if !rec(edges, &mut assign, 0, classes) {
        return Err(Error::Internal(
            "edge coloring failed within max degree + 1 classes".into(),
        ));
    }
    let mut out = vec![Vec::new(); classes];
    for (i, &e) in edges.iter().enumerate() {
        out[assign[i]].push(e);
    }
    out.retain(|c| !c.is_empty());
    Ok(out)
}

fn cover_f2_route(g: &Graph, route: Route, budget: Budget) -> Result<(ForestCover, AcyclicCoverReport)> {
    let res = oracle::exact_acyclic_chromatic(g, budget)?;
    let Some(x) = res.value() else {
        return Err(Error::Budget("acyclic coloring stage".into()));
    };
    let coloring = res.certificate.expect("exact result carries its coloring");
    let split = pair_split(g, &coloring)?;

    let mut report = AcyclicCoverReport {
        route,
        x,
        contraction_x: Vec::new(),
        pieces_checked: 0,
        max_piece_treewidth: 0,
        pair_bound: binomial(x, 2) * (3 * binomial(x, 2) + 1),
        vizing_bound: binomial(x, 2) * (12 * x as u64 + 1),
    };

    let mut forests: Vec<VertexSet> = Vec::new();
    for pf in &split.pairs {
        if !pf.strong.is_empty() {
            forests.push(pf.strong);
        }
    }

    let valid2: HashSet<Edge> = validity::k_valid_edges(g, 2)?.into_iter().collect();
    let mut needed: HashSet<Edge> = split
        .leftover
        .iter()
        .copied()
        .filter(|e| valid2.contains(e))
        .collect();
    // Pair-forest edges may already cover some leftovers of other pairs.
    for f in &forests {
        for e in g.edges_within(*f) {
            needed.remove(&e);
        }
    }

    let mut cache: HashMap<u64, Coloring> = HashMap::new();
    match route {
        Route::Pair => {
            for pf in &split.pairs {
                if pf.matching.is_empty() {
                    continue;
                }
                cover_matching_leftovers(
                    g,
                    &pf.matching,
                    &mut needed,
                    2,
                    &mut forests,
                    &mut report,
                    &mut cache,
                    budget,
                )?;
            }
        }
        Route::Vizing => {
            let still: Vec<Edge> = split
                .leftover
                .iter()
                .copied()
                .filter(|e| needed.contains(e))
                .collect();
            let degree_bound = x.saturating_sub(1);
            let mut deg: HashMap<usize, usize> = HashMap::new();
            for &(u, v) in &split.leftover {
                *deg.entry(u).or_insert(0) += 1;
                *deg.entry(v).or_insert(0) += 1;
            }
            if deg.values().any(|&d| d > degree_bound) {
                return Err(Error::Internal(
                    "leftover graph exceeds the x-1 degree bound".into(),
                ));
            }
            for class in edge_color_classes(&still)? {
                cover_matching_leftovers(
                    g,
                    &class,
                    &mut needed,
                    3,
                    &mut forests,
                    &mut report,
                    &mut cache,
                    budget,
                )?;
            }
        }
        Route::Best => unreachable!("Best is dispatched above"),
    }

    if let Some(missed) = needed.iter().min() {
        return Err(Error::Internal(format!(
            "2-valid edge ({}, {}) left uncovered",
            missed.0, missed.1
        )));
    }

    // Deduplicate identical forests while keeping order.
    let mut seen: HashSet<u64> = HashSet::new();
    forests.retain(|f| seen.insert(f.0));
    Ok((ForestCover::new(g, 2, forests), report))
}

/// Covers the 2-valid edges through the acyclic-coloring pipeline.
pub fn cover_f2_acyclic(
    g: &Graph,
    route: Route,
    budget: Budget,
) -> Result<(ForestCover, AcyclicCoverReport)> {
    match route {
        Route::Pair | Route::Vizing => cover_f2_route(g, route, budget),
        Route::Best => {
            let (pair_cover, pair_report) = cover_f2_route(g, Route::Pair, budget)?;
            let (viz_cover, viz_report) = cover_f2_route(g, Route::Vizing, budget)?;
            if oracle::verify_cover(g, &pair_cover)?.is_valid()
                && (pair_cover.size() <= viz_cover.size()
                    || !oracle::verify_cover(g, &viz_cover)?.is_valid())
            {
                Ok((pair_cover, pair_report))
            } else {
                Ok((viz_cover, viz_report))
            }
        }
    }
}
