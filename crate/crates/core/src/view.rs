//! Read-only prefix views of a graph.
//!
//! The solver's induction removes the highest-index vertex, so every
//! intermediate graph is "the first k vertices" of the original. A
//! [`PrefixView`] exposes exactly that induced subgraph without copying,
//! and counts adjacency probes (single-pair tests and 64-bit row words) for
//! the complexity instrumentation.

use std::cell::Cell;

use crate::graph::OrientedGraph;

pub(crate) struct PrefixView<'a> {
    g: &'a OrientedGraph,
    k: usize,
    probes: &'a Cell<u64>,
}

impl<'a> PrefixView<'a> {
    pub(crate) fn new(g: &'a OrientedGraph, k: usize, probes: &'a Cell<u64>) -> Self {
        assert!(k >= 1 && k <= g.vertex_count());
        PrefixView { g, k, probes }
    }

    pub(crate) fn whole(g: &'a OrientedGraph, probes: &'a Cell<u64>) -> Self {
        PrefixView::new(g, g.vertex_count(), probes)
    }

    #[inline]
    fn bump(&self) {
        self.probes.set(self.probes.get() + 1);
    }

    #[inline]
    pub(crate) fn n(&self) -> usize {
        self.k
    }

    #[inline]
    pub(crate) fn has_arc(&self, u: usize, v: usize) -> bool {
        debug_assert!(u < self.k && v < self.k);
        self.bump();
        self.g.has_arc(crate::graph::VertexId::new(u), crate::graph::VertexId::new(v))
    }

    #[inline]
    pub(crate) fn has_edge(&self, u: usize, v: usize) -> bool {
        debug_assert!(u < self.k && v < self.k);
        self.bump();
        self.g
            .has_edge(crate::graph::VertexId::new(u), crate::graph::VertexId::new(v))
    }

    /// Underlying degree of `u` within the prefix.
    pub(crate) fn degree(&self, u: usize) -> usize {
        debug_assert!(u < self.k);
        self.probes.set(self.probes.get() + self.words() as u64);
        self.g.degree_below(u, self.k)
    }

    pub(crate) fn min_degree(&self) -> usize {
        (0..self.k).map(|u| self.degree(u)).min().unwrap_or(0)
    }

    #[inline]
    pub(crate) fn words(&self) -> usize {
        self.k.div_ceil(64)
    }

    /// One word of the underlying adjacency row of `u`, masked to the
    /// prefix.
    #[inline]
    pub(crate) fn und_word(&self, u: usize, wi: usize) -> u64 {
        debug_assert!(u < self.k && wi < self.words());
        self.bump();
        let w = self.g.und_word(u, wi);
        let full = self.k / 64;
        if wi < full {
            w
        } else {
            w & ((1u64 << (self.k % 64)) - 1)
        }
    }

    /// Smallest neighbour of `u` whose bit is clear in `excluded`, if any.
    pub(crate) fn first_neighbor_excluding(&self, u: usize, excluded: &[u64]) -> Option<usize> {
        for wi in 0..self.words() {
            let w = self.und_word(u, wi) & !excluded[wi];
            if w != 0 {
                return Some(wi * 64 + w.trailing_zeros() as usize);
            }
        }
        None
    }

}

#[inline]
pub(crate) fn bit_get(bits: &[u64], i: usize) -> bool {
    bits[i / 64] >> (i % 64) & 1 == 1
}

#[inline]
pub(crate) fn bit_set(bits: &mut [u64], i: usize) {
    bits[i / 64] |= 1u64 << (i % 64);
}
