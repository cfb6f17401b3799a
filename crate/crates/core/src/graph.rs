//! Oriented-graph data model: simple graphs in which every adjacent vertex
//! pair carries exactly one direction.
//!
//! Adjacency is stored as two direction-indexed bit matrices (out-arcs and
//! in-arcs), so arc tests are O(1) and neighbourhood scans run a word at a
//! time. Sized for a few thousand vertices; the enumeration and oracle
//! tooling lives well below that.

use std::fmt;

use thiserror::Error;

/// 0-based vertex index into an [`OrientedGraph`].
///
/// Trace and diagnostic output additionally prints 1-based labels; use
/// [`VertexId::label`] for those.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct VertexId(pub u32);

impl VertexId {
    pub fn new(index: usize) -> Self {
        VertexId(index as u32)
    }

    /// 0-based index.
    pub fn idx(self) -> usize {
        self.0 as usize
    }

    /// 1-based label for human-facing traces.
    pub fn label(self) -> usize {
        self.0 as usize + 1
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("graph must have at least one vertex")]
    EmptyGraph,
    #[error("vertex {0} out of range for graph on {1} vertices")]
    VertexOutOfRange(usize, usize),
    #[error("self-loop at vertex {0} rejected")]
    SelfLoop(usize),
    #[error("arc {0} -> {1} already present")]
    DuplicateArc(usize, usize),
    #[error("anti-parallel arc {0} -> {1} conflicts with existing {1} -> {0}")]
    AntiparallelArc(usize, usize),
    #[error("cannot remove the last vertex of a graph")]
    RemoveLastVertex,
}

/// Row-major bit matrix; one row of `words_per_row` u64 words per vertex.
#[derive(Clone, PartialEq, Eq)]
struct BitMatrix {
    words_per_row: usize,
    bits: Vec<u64>,
}

impl BitMatrix {
    fn new(n: usize) -> Self {
        let words_per_row = n.div_ceil(64);
        BitMatrix {
            words_per_row,
            bits: vec![0u64; n * words_per_row],
        }
    }

    #[inline]
    fn get(&self, row: usize, col: usize) -> bool {
        let w = self.bits[row * self.words_per_row + col / 64];
        (w >> (col % 64)) & 1 == 1
    }

    #[inline]
    fn set(&mut self, row: usize, col: usize) {
        self.bits[row * self.words_per_row + col / 64] |= 1u64 << (col % 64);
    }

    #[inline]
    fn row(&self, row: usize) -> &[u64] {
        &self.bits[row * self.words_per_row..(row + 1) * self.words_per_row]
    }
}

/// An oriented graph: no loops, and for every unordered vertex pair at most
/// one of the two directed arcs is present.
#[derive(Clone)]
pub struct OrientedGraph {
    n: usize,
    out: BitMatrix,
    inn: BitMatrix,
    deg: Vec<u32>,
    arc_count: usize,
}

impl OrientedGraph {
    /// Graph on `n` vertices with no arcs.
    pub fn new(n: usize) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::EmptyGraph);
        }
        Ok(OrientedGraph {
            n,
            out: BitMatrix::new(n),
            inn: BitMatrix::new(n),
            deg: vec![0; n],
            arc_count: 0,
        })
    }

    /// Builds a graph from an arc list.
    pub fn from_arcs<I>(n: usize, arcs: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = OrientedGraph::new(n)?;
        for (u, v) in arcs {
            g.add_arc(VertexId::new(u), VertexId::new(v))?;
        }
        Ok(g)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn arc_count(&self) -> usize {
        self.arc_count
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        (0..self.n as u32).map(VertexId)
    }

    fn check_vertex(&self, v: VertexId) -> Result<usize, GraphError> {
        if v.idx() >= self.n {
            Err(GraphError::VertexOutOfRange(v.idx(), self.n))
        } else {
            Ok(v.idx())
        }
    }

    /// Adds the arc `u -> v`.
    ///
    /// Rejects loops, duplicates and anti-parallel arcs; the orientation
    /// invariant (at most one direction per pair) is enforced here and
    /// nowhere else needs to re-check it.
    pub fn add_arc(&mut self, u: VertexId, v: VertexId) -> Result<(), GraphError> {
        let ui = self.check_vertex(u)?;
        let vi = self.check_vertex(v)?;
        if ui == vi {
            return Err(GraphError::SelfLoop(ui));
        }
        if self.out.get(ui, vi) {
            return Err(GraphError::DuplicateArc(ui, vi));
        }
        if self.out.get(vi, ui) {
            return Err(GraphError::AntiparallelArc(ui, vi));
        }
        self.out.set(ui, vi);
        self.inn.set(vi, ui);
        self.deg[ui] += 1;
        self.deg[vi] += 1;
        self.arc_count += 1;
        Ok(())
    }

    /// True iff the arc `u -> v` is present. Panics on out-of-range input.
    #[inline]
    pub fn has_arc(&self, u: VertexId, v: VertexId) -> bool {
        assert!(u.idx() < self.n && v.idx() < self.n, "vertex out of range");
        self.out.get(u.idx(), v.idx())
    }

    /// True iff `u` and `v` are adjacent in the underlying graph.
    #[inline]
    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        assert!(u.idx() < self.n && v.idx() < self.n, "vertex out of range");
        self.out.get(u.idx(), v.idx()) || self.out.get(v.idx(), u.idx())
    }

    /// Underlying degree: number of vertices adjacent to `v` in either
    /// direction.
    #[inline]
    pub fn degree(&self, v: VertexId) -> usize {
        assert!(v.idx() < self.n, "vertex out of range");
        self.deg[v.idx()] as usize
    }

    pub fn out_degree(&self, v: VertexId) -> usize {
        assert!(v.idx() < self.n, "vertex out of range");
        self.out.row(v.idx()).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn in_degree(&self, v: VertexId) -> usize {
        assert!(v.idx() < self.n, "vertex out of range");
        self.inn.row(v.idx()).iter().map(|w| w.count_ones() as usize).sum()
    }

    /// δ(G): minimum underlying degree.
    pub fn min_degree(&self) -> usize {
        self.deg.iter().copied().min().unwrap_or(0) as usize
    }

    /// Neighbours of `v` in the underlying graph, ascending.
    pub fn neighbors(&self, v: VertexId) -> Vec<VertexId> {
        assert!(v.idx() < self.n, "vertex out of range");
        let mut out = Vec::with_capacity(self.deg[v.idx()] as usize);
        for wi in 0..self.out.words_per_row {
            let mut w = self.out.row(v.idx())[wi] | self.inn.row(v.idx())[wi];
            while w != 0 {
                let b = w.trailing_zeros() as usize;
                out.push(VertexId::new(wi * 64 + b));
                w &= w - 1;
            }
        }
        out
    }

    /// One word of the underlying adjacency row of `v` (out | in).
    #[inline]
    pub(crate) fn und_word(&self, v: usize, wi: usize) -> u64 {
        self.out.row(v)[wi] | self.inn.row(v)[wi]
    }

    #[inline]
    pub(crate) fn words_per_row(&self) -> usize {
        self.out.words_per_row
    }

    /// Underlying degree of `v` counting only neighbours with index < `k`.
    pub(crate) fn degree_below(&self, v: usize, k: usize) -> usize {
        let full_words = k / 64;
        let mut d = 0usize;
        for wi in 0..full_words {
            d += self.und_word(v, wi).count_ones() as usize;
        }
        if k % 64 != 0 {
            let mask = (1u64 << (k % 64)) - 1;
            d += (self.und_word(v, full_words) & mask).count_ones() as usize;
        }
        d
    }

    /// All arcs in ascending `(u, v)` order.
    pub fn arcs(&self) -> Vec<(VertexId, VertexId)> {
        let mut arcs = Vec::with_capacity(self.arc_count);
        for u in 0..self.n {
            for wi in 0..self.out.words_per_row {
                let mut w = self.out.row(u)[wi];
                while w != 0 {
                    let b = w.trailing_zeros() as usize;
                    arcs.push((VertexId::new(u), VertexId::new(wi * 64 + b)));
                    w &= w - 1;
                }
            }
        }
        arcs
    }

    /// Removes vertex `w`, returning the smaller graph and the re-indexing
    /// map: `map[new_index] = old_index`. The map is order-preserving
    /// (survivors keep their relative order: old indices below `w` are
    /// unchanged, indices above `w` shift down by one).
    pub fn remove_vertex(&self, w: VertexId) -> Result<(OrientedGraph, Vec<VertexId>), GraphError> {
        self.check_vertex(w)?;
        if self.n == 1 {
            return Err(GraphError::RemoveLastVertex);
        }
        let keep: Vec<VertexId> = self.vertices().filter(|&v| v != w).collect();
        Ok(self.induced_subgraph(&keep))
    }

    /// Induced subgraph on `keep` (strictly increasing vertex ids), plus the
    /// map `map[new_index] = old_index` (which is just `keep`).
    pub fn induced_subgraph(&self, keep: &[VertexId]) -> (OrientedGraph, Vec<VertexId>) {
        assert!(!keep.is_empty(), "induced subgraph needs at least one vertex");
        assert!(
            keep.windows(2).all(|p| p[0] < p[1]) && keep.last().unwrap().idx() < self.n,
            "keep list must be strictly increasing and in range"
        );
        let mut g = OrientedGraph::new(keep.len()).expect("non-empty");
        for (iu, &u) in keep.iter().enumerate() {
            for (iv, &v) in keep.iter().enumerate() {
                if self.has_arc(u, v) {
                    g.add_arc(VertexId::new(iu), VertexId::new(iv))
                        .expect("arcs of an oriented graph stay valid under restriction");
                }
            }
        }
        (g, keep.to_vec())
    }

    /// Connected components of the underlying graph, each sorted ascending;
    /// components ordered by their smallest vertex.
    pub fn connected_components(&self) -> Vec<Vec<VertexId>> {
        let mut seen = vec![false; self.n];
        let mut comps = Vec::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            let mut stack = vec![start];
            let mut comp = Vec::new();
            seen[start] = true;
            while let Some(v) = stack.pop() {
                comp.push(VertexId::new(v));
                for wi in 0..self.out.words_per_row {
                    let mut w = self.und_word(v, wi);
                    while w != 0 {
                        let b = wi * 64 + w.trailing_zeros() as usize;
                        w &= w - 1;
                        if !seen[b] {
                            seen[b] = true;
                            stack.push(b);
                        }
                    }
                }
            }
            comp.sort();
            comps.push(comp);
        }
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() == 1
    }

    /// True iff every vertex pair is adjacent.
    pub fn is_tournament(&self) -> bool {
        self.arc_count * 2 == self.n * (self.n - 1)
    }

    /// Stable content fingerprint (FNV-1a over n and the out-arc bits);
    /// certificates bind to this to detect graph/certificate mismatches.
    pub fn fingerprint(&self) -> u64 {
        const OFFSET: u64 = 0xcbf29ce484222325;
        const PRIME: u64 = 0x100000001b3;
        let mut h = OFFSET;
        let mut mix = |x: u64| {
            for byte in x.to_le_bytes() {
                h ^= byte as u64;
                h = h.wrapping_mul(PRIME);
            }
        };
        mix(self.n as u64);
        for w in &self.out.bits {
            mix(*w);
        }
        h
    }
}

impl fmt::Debug for OrientedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "OrientedGraph(n={}, arcs={:?})", self.n, self.arcs())
    }
}
