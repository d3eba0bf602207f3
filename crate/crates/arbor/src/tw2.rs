//! Partial-2-tree machinery: saturating a tree-width-2 graph into a
//! 2-tree, the three-condition good coloring, and the resulting cover of
//! all 2-valid edges by at most three 2-strong forests.

use crate::error::{Error, Result};
use crate::graph::{edge, Edge, Graph, VertexSet};
use crate::oracle::ForestCover;

/// A partial-2-tree certificate: the saturated 2-tree `h` on the same
/// vertex set, the construction sequence that builds it, and the
/// inner/outer edge partition by triangle count.
#[derive(Debug, Clone)]
pub struct TwoTreeCompletion {
    pub source_hash: u64,
    pub h: Graph,
    /// Insertion records in construction order: vertex plus the vertices
    /// it was attached to (empty for the first, one for the second, an
    /// edge of `h` afterwards).
    pub sequence: Vec<(usize, Vec<usize>)>,
    /// Edges of `h` lying in exactly one triangle of `h`.
    pub outer: Vec<Edge>,
    /// Edges of `h` lying in at least two triangles of `h`.
    pub inner: Vec<Edge>,
}

/// Saturates a connected graph on at least three vertices into a 2-tree,
/// or reports tree-width at least 3 by returning `None`.
///
/// The reduction repeatedly removes the least-indexed vertex of degree at
/// most 2, adding the edge between a degree-2 vertex's neighbors; it
/// empties the graph exactly when the tree-width is at most 2. Replaying
/// the removals backwards builds `h` and the construction sequence.
pub fn complete_to_2tree(g: &Graph) -> Result<Option<TwoTreeCompletion>> {
    if g.n() < 3 {
        return Err(Error::Precondition("completion needs at least 3 vertices".into()));
    }
    if !g.is_connected() {
        return Err(Error::Precondition("completion needs a connected graph".into()));
    }
    let n = g.n();
    let mut adj: Vec<VertexSet> = (0..n).map(|v| g.adj(v)).collect();
    let mut alive = g.vertices();
    let mut removals: Vec<(usize, Vec<usize>)> = Vec::new();
    while !alive.is_empty() {
        let pick = alive
            .iter()
            .find(|&v| adj[v].intersect(alive).len() <= 2);
        let Some(v) = pick else {
            return Ok(None); // every remaining vertex has degree >= 3
        };
        let nbrs = adj[v].intersect(alive).to_vec();
        if let [a, b] = nbrs[..] {
            adj[a].insert(b);
            adj[b].insert(a);
        }
        alive.remove(v);
        removals.push((v, nbrs));
    }

    // Backward replay: insert vertices in reverse removal order, always
    // attaching to an existing edge of the partial 2-tree.
    let mut h_adj: Vec<VertexSet> = vec![VertexSet::EMPTY; n];
    let mut placed = VertexSet::EMPTY;
    let mut sequence: Vec<(usize, Vec<usize>)> = Vec::new();
    for (v, nbrs) in removals.into_iter().rev() {
        let attach: Vec<usize> = match nbrs[..] {
            [] => Vec::new(),
            [a] => {
                if placed.len() <= 1 {
                    vec![a]
                } else {
                    let b = h_adj[a]
                        .intersect(placed)
                        .min_elem()
                        .expect("2-tree under construction is connected");
                    vec![a, b]
                }
            }
            [a, b] => {
                debug_assert!(h_adj[a].contains(b), "fill edge must already be in h");
                vec![a, b]
            }
            _ => unreachable!("degree <= 2 reduction"),
        };
        for &w in &attach {
            h_adj[v].insert(w);
            h_adj[w].insert(v);
        }
        placed.insert(v);
        sequence.push((v, attach));
    }

    let mut h_pairs = Vec::new();
    for u in 0..n {
        for w in h_adj[u].iter() {
            if w > u {
                h_pairs.push((u, w));
            }
        }
    }
    let h = Graph::build(n, &h_pairs)?;
    let mut outer = Vec::new();
    let mut inner = Vec::new();
    for &(u, w) in h.edges() {
        let triangles = h.adj(u).intersect(h.adj(w)).len();
        debug_assert!(triangles >= 1, "every 2-tree edge lies in a triangle");
        if triangles == 1 {
            outer.push((u, w));
        } else {
            inner.push((u, w));
        }
    }
    Ok(Some(TwoTreeCompletion {
        source_hash: g.hash(),
        h,
        sequence,
        outer,
        inner,
    }))
}

/// An outer edge of the completion that lies in no triangle of `g`
/// itself, least first. Contracting such an edge keeps the graph
/// 2-connected and of tree-width at most 2.
pub fn find_contractible_edge(g: &Graph, comp: &TwoTreeCompletion) -> Option<Edge> {
    debug_assert_eq!(comp.source_hash, g.hash(), "completion from another graph");
    comp.outer
        .iter()
        .copied()
        .find(|&(u, w)| g.has_edge(u, w) && g.adj(u).intersect(g.adj(w)).is_empty())
}

/// The three-condition coloring: complements of the color classes induce
/// forests without K1-components whose K2-components are all twin edges.
#[derive(Debug, Clone)]
pub struct GoodColoring {
    /// Colors in `{0, 1, 2}` per vertex.
    pub colors: Vec<usize>,
}

impl GoodColoring {
    /// `V_i`: the vertices NOT colored `i`.
    pub fn complement_class(&self, i: usize) -> VertexSet {
        self.colors
            .iter()
            .enumerate()
            .filter(|&(_, &c)| c != i)
            .map(|(v, _)| v)
            .collect()
    }

    /// Checks conditions (1) forest, (2) no K1-component, (3) every
    /// K2-component is a twin edge, for all three complement classes.
    pub fn verify(&self, g: &Graph) -> std::result::Result<(), String> {
        for i in 0..3 {
            let vi = self.complement_class(i);
            let (acyclic, comps) = g.is_induced_forest(vi);
            if !acyclic {
                return Err(format!("complement class {i} induces a cycle"));
            }
            for &(comp, m) in &comps {
                if m == 0 {
                    return Err(format!("complement class {i} has K1-component {comp:?}"));
                }
                if m == 1 {
                    let vs = comp.to_vec();
                    if g.closed_adj(vs[0]) != g.closed_adj(vs[1]) {
                        return Err(format!(
                            "complement class {i} has non-twin K2-component {comp:?}"
                        ));
                    }
                }
            }
        }
        Ok(())
    }
}

fn is_c4(g: &Graph) -> bool {
    g.n() == 4
        && g.edge_count() == 4
        && (0..4).all(|v| g.degree(v) == 2)
        && g.is_connected()
}

fn is_cycle(g: &Graph) -> bool {
    g.n() >= 3
        && g.edge_count() == g.n()
        && (0..g.n()).all(|v| g.degree(v) == 2)
        && g.is_connected()
}

/// Vertices of a cycle graph in cycle order, starting at the least vertex
/// and moving toward its least neighbor.
fn cycle_order(g: &Graph) -> Vec<usize> {
    debug_assert!(is_cycle(g));
    let start = 0;
    let mut order = vec![start];
    let mut prev = start;
    let mut cur = g.adj(start).min_elem().unwrap();
    while cur != start {
        order.push(cur);
        let next = g.adj(cur).without(prev).min_elem().unwrap();
        prev = cur;
        cur = next;
    }
    order
}

/// Fixed coloring of C4 used when a cut vertex `v` lies in a C4 part:
/// conditions (1) and (2) hold and the single K2-component contains `v`.
fn c4_coloring_with_k2_at(g: &Graph, v: usize) -> Vec<usize> {
    debug_assert!(is_c4(g));
    let order = cycle_order(g);
    let pos = order.iter().position(|&w| w == v).unwrap();
    let mut colors = vec![0usize; 4];
    // Pattern 2,1,0,0 around the cycle starting at v: the K2-component is
    // {v, next} in complement class 0.
    for (step, &pattern) in [2usize, 1, 0, 0].iter().enumerate() {
        colors[order[(pos + step) % 4]] = pattern;
    }
    colors
}

fn lift_through_map(colors_sub: &[usize], to_old: &[usize], out: &mut [usize]) {
    for (new, &c) in colors_sub.iter().enumerate() {
        out[to_old[new]] = c;
    }
}

/// Least permutation of `{0,1,2}` mapping `from` to `to`.
fn align_permutation(from: usize, to: usize) -> [usize; 3] {
    let perms: [[usize; 3]; 6] = [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    perms
        .into_iter()
        .find(|p| p[from] == to)
        .expect("some permutation aligns any two colors")
}

fn good_coloring_rec(g: &Graph) -> Result<Vec<usize>> {
    debug_assert!(g.is_connected());
    debug_assert!(!is_c4(g));
    let n = g.n();
    if n == 2 {
        // A single edge: both endpoints share a color.
        return Ok(vec![0, 0]);
    }
    if g.is_two_connected() {
        good_coloring_two_connected(g)
    } else {
        good_coloring_split(g)
    }
}

/// Case 1: split at the cut vertex of a leaf block, color the parts, and
/// align the colors at the cut vertex.
fn good_coloring_split(g: &Graph) -> Result<Vec<usize>> {
    let (blocks, cuts) = g.blocks();
    debug_assert!(blocks.len() >= 2);
    let leaf_blocks: Vec<VertexSet> = blocks
        .iter()
        .copied()
        .filter(|b| b.iter().filter(|&v| cuts.contains(&v)).count() <= 1)
        .collect();
    let block = leaf_blocks
        .iter()
        .copied()
        .min_by_key(|b| b.min_elem())
        .expect("a graph with >= 2 blocks has leaf blocks");
    let v = block
        .iter()
        .find(|w| cuts.contains(w))
        .expect("a leaf block of a connected non-2-connected graph has a cut vertex");

    let part1 = block;
    let part2 = g.vertices().minus(block).with(v);
    let mut colors = vec![usize::MAX; g.n()];
    let mut color_at_v: Option<usize> = None;
    for part in [part1, part2] {
        let (sub, to_old) = g.induced(part)?;
        let v_sub = to_old.iter().position(|&o| o == v).unwrap();
        let mut sub_colors = if is_c4(&sub) {
            c4_coloring_with_k2_at(&sub, v_sub)
        } else {
            good_coloring_rec(&sub)?
        };
        if let Some(target) = color_at_v {
            let perm = align_permutation(sub_colors[v_sub], target);
            for c in sub_colors.iter_mut() {
                *c = perm[*c];
            }
        } else {
            color_at_v = Some(sub_colors[v_sub]);
        }
        lift_through_map(&sub_colors, &to_old, &mut colors);
    }
    Ok(colors)
}

/// Case 2: the graph is 2-connected.
fn good_coloring_two_connected(g: &Graph) -> Result<Vec<usize>> {
    let comp = complete_to_2tree(g)?
        .ok_or_else(|| Error::Precondition("tree-width exceeds 2".into()))?;
    match find_contractible_edge(g, &comp) {
        Some(e) => good_coloring_contract(g, e),
        None => {
            // Case 2B: some proper 3-coloring of the completion, read off
            // its construction sequence.
            let mut colors = vec![usize::MAX; g.n()];
            for (v, attach) in &comp.sequence {
                colors[*v] = match attach[..] {
                    [] => 0,
                    [a] => (colors[a] + 1) % 3,
                    [a, b] => 3 - colors[a] - colors[b],
                    _ => unreachable!(),
                };
            }
            Ok(colors)
        }
    }
}

/// Case 2A: contract a contractible edge `e = uw` and either color the
/// contraction recursively or apply one of the two fixed templates when
/// the contraction has a twin edge.
fn good_coloring_contract(g: &Graph, e: Edge) -> Result<Vec<usize>> {
    let (u, w) = e;
    let (gc, map) = g.contract_matching(&[e])?;
    let merged = map.class_of[u];

    if is_c4(&gc) {
        // Then g is the 5-cycle: color 0,0,1,1,2 around it.
        debug_assert!(is_cycle(g) && g.n() == 5);
        let order = cycle_order(g);
        let mut colors = vec![0usize; 5];
        for (step, &pattern) in [0usize, 0, 1, 1, 2].iter().enumerate() {
            colors[order[step]] = pattern;
        }
        return Ok(colors);
    }

    if let Some(&(x, y)) = gc.twin_edges().first() {
        // The contraction is a fan of triangles over the twin edge xy.
        let s_new = gc.vertices().without(x).without(y);
        debug_assert!(s_new.len() >= 2, "r >= 2 once C4 and K3 are excluded");
        debug_assert!(s_new.iter().all(|z| gc.adj(z) == VertexSet::single(x).with(y)));
        let mut colors = vec![usize::MAX; g.n()];
        let old_of = |c: usize| map.classes[c].min_elem().unwrap();
        if merged == x || merged == y {
            // The merged vertex is a twin endpoint; the surviving endpoint
            // anchors the coloring.
            let anchor = old_of(if merged == x { y } else { x });
            colors[anchor] = 0;
            colors[u] = 1;
            colors[w] = 1;
            for z in s_new.iter() {
                colors[old_of(z)] = 2;
            }
        } else {
            // The merged vertex is one of the fan tips: u and w split its
            // two edges toward x and y.
            let old_x = old_of(x);
            let old_y = old_of(y);
            let (ux, wy) = if g.has_edge(u, old_x) { (u, w) } else { (w, u) };
            debug_assert!(g.has_edge(wy, old_y));
            colors[old_x] = 0;
            colors[ux] = 0;
            colors[old_y] = 1;
            colors[wy] = 2;
            for z in s_new.without(merged).iter() {
                colors[old_of(z)] = 2;
            }
        }
        return Ok(colors);
    }

    let sub_colors = good_coloring_rec(&gc)?;
    let mut colors = vec![usize::MAX; g.n()];
    for v in 0..g.n() {
        colors[v] = sub_colors[map.class_of[v]];
    }
    Ok(colors)
}

/// The good coloring of a connected tree-width-2 graph with at least one
/// edge, different from C4. The output always satisfies the three
/// conditions; they are re-checked before returning.
pub fn good_coloring(g: &Graph) -> Result<GoodColoring> {
    if g.n() == 0 || g.edge_count() == 0 {
        return Err(Error::Precondition(
            "good coloring needs at least one edge".into(),
        ));
    }
    if !g.is_connected() {
        return Err(Error::Precondition("good coloring needs a connected graph".into()));
    }
    if is_c4(g) {
        return Err(Error::Precondition(
            "C4 admits no good coloring; cover it with two paths instead".into(),
        ));
    }
    if g.n() >= 3 && complete_to_2tree(g)?.is_none() {
        return Err(Error::Precondition("tree-width exceeds 2".into()));
    }
    let colors = good_coloring_rec(g)?;
    let gc = GoodColoring { colors };
    gc.verify(g)
        .map_err(|msg| Error::Internal(format!("good coloring violated its contract: {msg}")))?;
    Ok(gc)
}

/// Covers all 2-valid edges of a tree-width-2 graph with at most three
/// 2-strong forests: per component, C4 splits into its two paths and
/// anything else takes the good coloring's complement classes with K1-
/// and K2-components deleted; component covers merge index-wise.
pub fn cover_2valid_tw2(g: &Graph) -> Result<ForestCover> {
    let mut global: Vec<VertexSet> = vec![VertexSet::EMPTY; 3];
    for comp in g.components() {
        if comp.len() < 2 {
            continue;
        }
        let (sub, to_old) = g.induced(comp)?;
        if sub.n() >= 3 && !is_c4(&sub) && complete_to_2tree(&sub)?.is_none() {
            return Err(Error::Precondition("tree-width exceeds 2".into()));
        }
        let local: Vec<VertexSet> = if is_c4(&sub) {
            let order = cycle_order(&sub);
            vec![
                [order[0], order[1], order[2]].into_iter().collect(),
                [order[2], order[3], order[0]].into_iter().collect(),
            ]
        } else {
            let gc = good_coloring(&sub)?;
            (0..3)
                .map(|i| {
                    let vi = gc.complement_class(i);
                    let mut keep = VertexSet::EMPTY;
                    for (c, m) in sub.components_within(vi).into_iter().map(|c| {
                        let m = sub.edge_count_within(c);
                        (c, m)
                    }) {
                        if m >= 2 {
                            keep = keep.union(c);
                        }
                    }
                    keep
                })
                .collect()
        };
        for (slot, f) in local.into_iter().enumerate() {
            let lifted: VertexSet = f.iter().map(|v| to_old[v]).collect();
            global[slot] = global[slot].union(lifted);
        }
    }
    let forests: Vec<VertexSet> = global.into_iter().filter(|f| !f.is_empty()).collect();
    Ok(ForestCover::new(g, 2, forests))
}

// Executable forms of the structural properties of 2-trees, exercised by
// the test suites on every completion they build.

/// If a vertex is incident to two outer edges of the same triangle of
/// `h`, it has degree 2 in `h`.
pub fn p1_holds(comp: &TwoTreeCompletion) -> bool {
    let h = &comp.h;
    let outer = |a: usize, b: usize| comp.outer.contains(&edge(a, b));
    for v in 0..h.n() {
        for a in h.adj(v).iter() {
            for b in h.adj(v).iter() {
                if a < b && h.has_edge(a, b) && outer(v, a) && outer(v, b) && h.degree(v) != 2 {
                    return false;
                }
            }
        }
    }
    true
}

/// Removing the endpoints of an inner edge disconnects `h`.
pub fn p2_holds(comp: &TwoTreeCompletion) -> bool {
    comp.inner.iter().all(|&(u, w)| {
        let rest = comp.h.vertices().without(u).without(w);
        !comp.h.is_connected_within(rest) || rest.len() <= 1
    })
}

/// For 2-connected source graphs every outer edge of `h` is an edge of
/// the graph itself.
pub fn p5_holds(g: &Graph, comp: &TwoTreeCompletion) -> bool {
    !g.is_two_connected() || comp.outer.iter().all(|&(u, w)| g.has_edge(u, w))
}

/// A 2-connected tree-width-2 graph with a twin edge is a fan of
/// triangles over that edge.
pub fn p7_holds(g: &Graph) -> bool {
    if !g.is_two_connected() {
        return true;
    }
    for &(x, y) in &g.twin_edges() {
        let s = g.vertices().without(x).without(y);
        let fan = s
            .iter()
            .all(|z| g.adj(z) == VertexSet::single(x).with(y));
        if !(fan && g.has_edge(x, y)) {
            return false;
        }
    }
    true
}
