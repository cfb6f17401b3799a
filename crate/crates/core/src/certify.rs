//! Cycle/path certificates, forward/backward edge statistics, and the
//! verifier every acceptance check routes through.
//!
//! Certificates never cache statistics; verification always recomputes them
//! from the graph, so a passing verdict depends on nothing but the graph and
//! the vertex sequence.

use std::fmt;

use thiserror::Error;

use crate::graph::{OrientedGraph, VertexId};

/// Forward/backward arc counts of a traversed cycle or path.
///
/// `sigma_plus`/`sigma_minus` depend on the traversal direction;
/// `sigma_max`/`sigma_min` do not.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub struct SigmaStats {
    pub sigma_plus: usize,
    pub sigma_minus: usize,
    pub sigma_max: usize,
    pub sigma_min: usize,
}

impl SigmaStats {
    pub fn new(sigma_plus: usize, sigma_minus: usize) -> Self {
        SigmaStats {
            sigma_plus,
            sigma_minus,
            sigma_max: sigma_plus.max(sigma_minus),
            sigma_min: sigma_plus.min(sigma_minus),
        }
    }
}

impl fmt::Display for SigmaStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "sigma_plus={} sigma_minus={} sigma_max={} sigma_min={}",
            self.sigma_plus, self.sigma_minus, self.sigma_max, self.sigma_min
        )
    }
}

/// An ordered vertex sequence claimed to be a cycle of a specific graph
/// (closing edge from last to first implicit). Claims are checked by the
/// verifier, never assumed.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CycleCert {
    vertices: Vec<VertexId>,
    graph_id: u64,
}

/// An ordered vertex sequence claimed to be a path of a specific graph.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PathCert {
    vertices: Vec<VertexId>,
    graph_id: u64,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CertError {
    #[error("certificate references a different graph")]
    WrongGraph,
    #[error("vertex {0} out of range")]
    VertexOutOfRange(usize),
    #[error("repeated vertex {0}")]
    RepeatedVertex(usize),
    #[error("consecutive vertices {0} and {1} are not adjacent")]
    NonAdjacentPair(usize, usize),
    #[error("cycle needs at least 3 vertices, got {0}")]
    CycleTooShort(usize),
    #[error("path needs at least 1 vertex")]
    EmptyPath,
}

impl CycleCert {
    /// Binds a vertex sequence to `g`. No structural validation happens
    /// here; the verifier judges the claim.
    pub fn new(g: &OrientedGraph, vertices: Vec<VertexId>) -> Self {
        CycleCert {
            vertices,
            graph_id: g.fingerprint(),
        }
    }

    pub(crate) fn from_indices(g: &OrientedGraph, idx: &[usize]) -> Self {
        CycleCert::new(g, idx.iter().map(|&i| VertexId::new(i)).collect())
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn graph_id(&self) -> u64 {
        self.graph_id
    }

    /// Exact σ statistics of the cycle against `g`.
    pub fn sigma(&self, g: &OrientedGraph) -> Result<SigmaStats, CertError> {
        check_sequence(g, self.graph_id, &self.vertices)?;
        if self.vertices.len() < 3 {
            return Err(CertError::CycleTooShort(self.vertices.len()));
        }
        let mut plus = 0usize;
        let mut minus = 0usize;
        for i in 0..self.vertices.len() {
            let a = self.vertices[i];
            let b = self.vertices[(i + 1) % self.vertices.len()];
            if g.has_arc(a, b) {
                plus += 1;
            } else if g.has_arc(b, a) {
                minus += 1;
            } else {
                return Err(CertError::NonAdjacentPair(a.idx(), b.idx()));
            }
        }
        Ok(SigmaStats::new(plus, minus))
    }
}

impl PathCert {
    pub fn new(g: &OrientedGraph, vertices: Vec<VertexId>) -> Self {
        PathCert {
            vertices,
            graph_id: g.fingerprint(),
        }
    }

    pub(crate) fn from_indices(g: &OrientedGraph, idx: &[usize]) -> Self {
        PathCert::new(g, idx.iter().map(|&i| VertexId::new(i)).collect())
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn graph_id(&self) -> u64 {
        self.graph_id
    }

    /// Exact σ statistics of the path against `g`. A single-vertex path has
    /// all four statistics zero.
    pub fn sigma(&self, g: &OrientedGraph) -> Result<SigmaStats, CertError> {
        check_sequence(g, self.graph_id, &self.vertices)?;
        if self.vertices.is_empty() {
            return Err(CertError::EmptyPath);
        }
        let mut plus = 0usize;
        let mut minus = 0usize;
        for w in self.vertices.windows(2) {
            if g.has_arc(w[0], w[1]) {
                plus += 1;
            } else if g.has_arc(w[1], w[0]) {
                minus += 1;
            } else {
                return Err(CertError::NonAdjacentPair(w[0].idx(), w[1].idx()));
            }
        }
        Ok(SigmaStats::new(plus, minus))
    }
}

fn check_sequence(g: &OrientedGraph, graph_id: u64, vs: &[VertexId]) -> Result<(), CertError> {
    if graph_id != g.fingerprint() {
        return Err(CertError::WrongGraph);
    }
    let mut seen = vec![false; g.vertex_count()];
    for &v in vs {
        if v.idx() >= g.vertex_count() {
            return Err(CertError::VertexOutOfRange(v.idx()));
        }
        if seen[v.idx()] {
            return Err(CertError::RepeatedVertex(v.idx()));
        }
        seen[v.idx()] = true;
    }
    Ok(())
}

/// Why a verification failed.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum FailReason {
    WrongGraph,
    VertexOutOfRange,
    RepeatedVertex,
    NonAdjacentPair,
    TooShort,
    NotSpanning,
    SigmaBelowTarget,
}

impl fmt::Display for FailReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            FailReason::WrongGraph => "wrong graph",
            FailReason::VertexOutOfRange => "vertex out of range",
            FailReason::RepeatedVertex => "repeated vertex",
            FailReason::NonAdjacentPair => "non-adjacent pair",
            FailReason::TooShort => "too short",
            FailReason::NotSpanning => "not spanning",
            FailReason::SigmaBelowTarget => "sigma below target",
        };
        f.write_str(s)
    }
}

/// Structured verification outcome: never an exception, so harnesses can
/// tabulate failures.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Verdict {
    pub ok: bool,
    pub reason: Option<FailReason>,
    pub stats: Option<SigmaStats>,
}

impl Verdict {
    fn pass(stats: SigmaStats) -> Self {
        Verdict {
            ok: true,
            reason: None,
            stats: Some(stats),
        }
    }

    fn fail(reason: FailReason, stats: Option<SigmaStats>) -> Self {
        Verdict {
            ok: false,
            reason: Some(reason),
            stats,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ok {
            write!(f, "ok")?;
        } else {
            write!(f, "fail")?;
        }
        if let Some(r) = self.reason {
            write!(f, " reason=\"{r}\"")?;
        }
        if let Some(s) = self.stats {
            write!(f, " {s}")?;
        }
        Ok(())
    }
}

fn reason_of(err: CertError) -> FailReason {
    match err {
        CertError::WrongGraph => FailReason::WrongGraph,
        CertError::VertexOutOfRange(_) => FailReason::VertexOutOfRange,
        CertError::RepeatedVertex(_) => FailReason::RepeatedVertex,
        CertError::NonAdjacentPair(_, _) => FailReason::NonAdjacentPair,
        CertError::CycleTooShort(_) | CertError::EmptyPath => FailReason::TooShort,
    }
}

/// Checks that `cert` is a Hamilton cycle of `g` with `sigma_max >= target`.
/// The input is never trusted: spanning, distinctness, adjacency and the
/// statistics are all recomputed here.
pub fn verify_hamilton_cycle(g: &OrientedGraph, cert: &CycleCert, target: usize) -> Verdict {
    let stats = match cert.sigma(g) {
        Ok(s) => s,
        Err(e) => return Verdict::fail(reason_of(e), None),
    };
    if cert.len() != g.vertex_count() {
        return Verdict::fail(FailReason::NotSpanning, Some(stats));
    }
    if stats.sigma_max < target {
        return Verdict::fail(FailReason::SigmaBelowTarget, Some(stats));
    }
    Verdict::pass(stats)
}

/// Checks that `cert` is a path of `g` with `sigma_max >= target`, spanning
/// if `require_spanning` is set.
pub fn verify_path(
    g: &OrientedGraph,
    cert: &PathCert,
    target: usize,
    require_spanning: bool,
) -> Verdict {
    let stats = match cert.sigma(g) {
        Ok(s) => s,
        Err(e) => return Verdict::fail(reason_of(e), None),
    };
    if require_spanning && cert.len() != g.vertex_count() {
        return Verdict::fail(FailReason::NotSpanning, Some(stats));
    }
    if stats.sigma_max < target {
        return Verdict::fail(FailReason::SigmaBelowTarget, Some(stats));
    }
    Verdict::pass(stats)
}
