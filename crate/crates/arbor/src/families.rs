//! Generators for the concrete graph families used as fixtures throughout
//! the test suites. Vertex numbering is fixed per family so fixtures are
//! byte-stable run-to-run.

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::oracle::ForestCover;

/// Wheel: cycle of length `c` plus a hub adjacent to every cycle vertex.
/// Hub is vertex 0, rim is `1..=c` in cycle order.
pub fn wheel(c: usize) -> Result<Graph> {
    if c < 3 {
        return Err(Error::Input("wheel needs cycle length >= 3".into()));
    }
    let mut pairs = Vec::new();
    for i in 1..=c {
        pairs.push((0, i));
        pairs.push((i, if i == c { 1 } else { i + 1 }));
    }
    Graph::build(c + 1, &pairs)
}

fn pair_index(t: usize, i: usize, j: usize) -> usize {
    // Lexicographic rank of (i, j), i < j, among pairs from 0..t.
    debug_assert!(i < j && j < t);
    i * t - i * (i + 1) / 2 + (j - i - 1)
}

/// K_t with every edge subdivided once. Originals are `0..t`; the
/// subdivision vertex of pair `(i, j)` (i < j, lex rank p) is `t + p`.
pub fn subdivided_complete(t: usize) -> Result<Graph> {
    if t < 2 {
        return Err(Error::Input("subdivided complete graph needs t >= 2".into()));
    }
    let mut pairs = Vec::new();
    for i in 0..t {
        for j in i + 1..t {
            let s = t + pair_index(t, i, j);
            pairs.push((i, s));
            pairs.push((j, s));
        }
    }
    Graph::build(t + t * (t - 1) / 2, &pairs)
}

/// Deterministic orientation of K_t in which every vertex has in- and
/// out-degree at least (t-2)/2: an Eulerian circuit for odd t; for even t,
/// orient K_{t-1} that way and split the last vertex's edges evenly.
fn balanced_orientation(t: usize) -> Vec<(usize, usize)> {
    let euler = |n: usize| -> Vec<(usize, usize)> {
        // Hierholzer on K_n (n odd, all degrees even), least edge first.
        let mut unused: Vec<VertexSet> = (0..n)
            .map(|v| {
                let mut s = VertexSet::full(n);
                s.remove(v);
                s
            })
            .collect();
        let mut circuit: Vec<usize> = Vec::new();
        let mut stack = vec![0usize];
        while let Some(&v) = stack.last() {
            match unused[v].min_elem() {
                Some(w) => {
                    unused[v].remove(w);
                    unused[w].remove(v);
                    stack.push(w);
                }
                None => {
                    circuit.push(v);
                    stack.pop();
                }
            }
        }
        circuit
            .windows(2)
            .map(|w| (w[0], w[1]))
            .collect()
    };
    if t % 2 == 1 {
        euler(t)
    } else {
        let mut arcs = euler(t - 1);
        let x = t - 1;
        // First half of x's edges point in, the rest point out.
        for v in 0..x {
            if v < x / 2 + x % 2 {
                arcs.push((v, x));
            } else {
                arcs.push((x, v));
            }
        }
        arcs
    }
}

/// K_t with every edge subdivided twice, plus `k-1` pendant edges at one
/// subdivision vertex per original edge. Numbering: originals `0..t`; pair
/// `(i, j)` with lex rank `p` gets `a = t + 2p` (the side of `i`, which
/// also carries the pendants) and `b = t + 2p + 1`; pendants follow after
/// all subdivision vertices, grouped by pair.
///
/// For `t >= 2k+2` the 3-forest cover (middle stars plus the two
/// orientation star families) is returned alongside.
pub fn pendant_double_subdivided_complete(
    t: usize,
    k: usize,
) -> Result<(Graph, Option<ForestCover>)> {
    if t < 3 || k < 1 {
        return Err(Error::Input("needs t >= 3 and k >= 1".into()));
    }
    let npairs = t * (t - 1) / 2;
    let pend_base = t + 2 * npairs;
    let n = pend_base + npairs * (k - 1);
    if n > crate::graph::MAX_VERTICES {
        return Err(Error::Input(format!(
            "construction needs {n} vertices, over the cap"
        )));
    }
    let mut pairs = Vec::new();
    let mut t1 = VertexSet::EMPTY;
    for i in 0..t {
        for j in i + 1..t {
            let p = pair_index(t, i, j);
            let a = t + 2 * p;
            let b = a + 1;
            pairs.push((i, a));
            pairs.push((a, b));
            pairs.push((b, j));
            t1.insert(a);
            t1.insert(b);
            for q in 0..k - 1 {
                let pend = pend_base + p * (k - 1) + q;
                pairs.push((a, pend));
                t1.insert(pend);
            }
        }
    }
    let g = Graph::build(n, &pairs)?;
    let cover = if t >= 2 * k + 2 {
        let mut t2: VertexSet = (0..t).collect();
        let mut t3: VertexSet = (0..t).collect();
        for (u, v) in balanced_orientation(t) {
            let (i, j) = if u < v { (u, v) } else { (v, u) };
            let p = pair_index(t, i, j);
            let a = t + 2 * p;
            let b = a + 1;
            // The subdivision edge incident to the tail u joins T2.
            if u == i {
                t2.insert(a);
                t3.insert(b);
            } else {
                t2.insert(b);
                t3.insert(a);
            }
        }
        Some(ForestCover {
            k,
            graph_hash: g.hash_hex(),
            forests: vec![t1, t2, t3],
        })
    } else {
        None
    };
    Ok((g, cover))
}

/// Clique on `n+1` vertices (`0..=n`) plus a path of `k-1` edges attached
/// at clique vertex `n`; tail vertices are `n+1..n+k-1`.
pub fn clique_plus_tail(n: usize, k: usize) -> Result<Graph> {
    if n < 1 || k < 1 {
        return Err(Error::Input("needs n >= 1 and k >= 1".into()));
    }
    let mut pairs = Vec::new();
    for u in 0..=n {
        for v in u + 1..=n {
            pairs.push((u, v));
        }
    }
    for step in 0..k.saturating_sub(1) {
        pairs.push((n + step, n + step + 1));
    }
    Graph::build(n + k, &pairs)
}

/// The saw: a path `u_1..u_{2k}` (vertices `0..2k`) and independent
/// vertices `w_1..w_{2k-1}` (vertex `w_i` is `2k + i - 1`) with `w_i`
/// adjacent to `u_i` and `u_{i+1}`.
pub fn saw_graph(k: usize) -> Result<Graph> {
    if k < 2 {
        return Err(Error::Input("saw graph needs k >= 2".into()));
    }
    let mut pairs = Vec::new();
    for i in 0..2 * k - 1 {
        pairs.push((i, i + 1));
        let w = 2 * k + i;
        pairs.push((w, i));
        pairs.push((w, i + 1));
    }
    Graph::build(4 * k - 1, &pairs)
}

/// K_{n,n} with every edge subdivided once, together with the two maximum
/// induced trees T1, T2 that jointly cover every edge. Classes are
/// `0..n` and `n..2n`; the subdivision vertex of `(i, j+n)` is
/// `2n + i*n + j`. T1 deletes originals `1..n`, T2 deletes `n+1..2n`.
pub fn subdivided_biclique(n: usize) -> Result<(Graph, VertexSet, VertexSet)> {
    if n < 1 {
        return Err(Error::Input("subdivided biclique needs n >= 1".into()));
    }
    let total = 2 * n + n * n;
    if total > crate::graph::MAX_VERTICES {
        return Err(Error::Input(format!(
            "construction needs {total} vertices, over the cap"
        )));
    }
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let s = 2 * n + i * n + j;
            pairs.push((i, s));
            pairs.push((n + j, s));
        }
    }
    let g = Graph::build(total, &pairs)?;
    let mut t1 = g.vertices();
    for v in 1..n {
        t1.remove(v);
    }
    let mut t2 = g.vertices();
    for v in n + 1..2 * n {
        t2.remove(v);
    }
    Ok((g, t1, t2))
}

/// K3 (vertices 0, 1, 2) with one pendant edge at each vertex
/// (pendant of `i` is `i + 3`).
pub fn triangle_with_pendants() -> Graph {
    Graph::build(6, &[(0, 1), (1, 2), (0, 2), (0, 3), (1, 4), (2, 5)])
        .expect("fixed construction")
}

/// A tree-depth-3 family with `f_k = k-1`: a hub `c = 0` with
/// `max(k-2, 1)` pendant leaves, `k-1` middle vertices adjacent to `c`,
/// and a final vertex `y` (highest index) adjacent to every middle vertex.
/// Every `y`-edge is k-valid, but a cycle through `c` blocks any two of
/// them from sharing a k-strong forest. Both claimed properties are
/// re-established by the exact solvers in tests rather than assumed.
pub fn td3_extremal(k: usize) -> Result<Graph> {
    if k < 2 {
        return Err(Error::Input("td3 extremal family needs k >= 2".into()));
    }
    let m = std::cmp::max(k - 2, 1);
    let y = m + k;
    let mut pairs = Vec::new();
    for q in 1..=m {
        pairs.push((0, q));
    }
    for a in m + 1..m + k {
        pairs.push((0, a));
        pairs.push((y, a));
    }
    Graph::build(m + k + 1, &pairs)
}
