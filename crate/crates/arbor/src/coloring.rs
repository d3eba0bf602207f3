//! Vertex colorings with a declared contract.

use crate::graph::{Graph, VertexSet};

/// What a coloring promises about itself. The promise is checked by the
/// module that produced it, not by this type.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ColoringKind {
    /// Adjacent vertices get distinct colors.
    Proper,
    /// Proper, and any two color classes induce a forest.
    Acyclic,
    /// The three-coloring contract of the tree-width-2 cover machinery.
    Good,
    /// Every set of `p' <= p` classes induces tree-depth at most `p'`.
    PTreeDepth(usize),
}

#[derive(Debug, Clone)]
pub struct Coloring {
    /// Color of each vertex; colors are `0..num_colors`.
    pub colors: Vec<usize>,
    pub kind: ColoringKind,
}

impl Coloring {
    pub fn new(colors: Vec<usize>, kind: ColoringKind) -> Self {
        Coloring { colors, kind }
    }

    pub fn num_colors(&self) -> usize {
        self.colors.iter().copied().max().map_or(0, |c| c + 1)
    }

    /// Vertices of one color class.
    pub fn class(&self, color: usize) -> VertexSet {
        self.colors
            .iter()
            .enumerate()
            .filter(|&(_, &c)| c == color)
            .map(|(v, _)| v)
            .collect()
    }

    /// Union of several color classes.
    pub fn classes(&self, colors: &[usize]) -> VertexSet {
        colors
            .iter()
            .fold(VertexSet::EMPTY, |acc, &c| acc.union(self.class(c)))
    }

    pub fn is_proper_on(&self, g: &Graph) -> bool {
        g.edges().iter().all(|&(u, v)| self.colors[u] != self.colors[v])
    }

    /// Proper, and every pair of classes induces a forest in `g`.
    pub fn is_acyclic_on(&self, g: &Graph) -> bool {
        if !self.is_proper_on(g) {
            return false;
        }
        let q = self.num_colors();
        for a in 0..q {
            for b in a + 1..q {
                let s = self.class(a).union(self.class(b));
                if !g.is_induced_forest(s).0 {
                    return false;
                }
            }
        }
        true
    }
}
