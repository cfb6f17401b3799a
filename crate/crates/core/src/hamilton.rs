//! Classical constructive ingredients: Hamilton cycles under the Dirac
//! degree bound, directed Hamilton paths of tournaments, and long paths in
//! connected graphs.
//!
//! All routines work on the underlying undirected graph except the
//! tournament path, which is the one place orientation drives the
//! construction.

use std::cell::Cell;

use thiserror::Error;

use crate::certify::{verify_hamilton_cycle, verify_path, CycleCert, PathCert};
use crate::graph::OrientedGraph;
use crate::view::{bit_set, PrefixView};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum HamiltonError {
    #[error("need n >= 3 and minimum degree >= n/2, got n={n} delta={delta}")]
    DiracPrecondition { n: usize, delta: usize },
    #[error("graph is not a tournament")]
    NotTournament,
    #[error("underlying graph is disconnected")]
    Disconnected,
    #[error("minimum degree {delta} is below the required {required}")]
    DegreeBelow { delta: usize, required: usize },
    #[error("input cycle failed verification: {0}")]
    InvalidCycle(String),
    #[error("target {target} exceeds the path edge count {max}")]
    TargetTooLarge { target: usize, max: usize },
}

/// Hamilton cycle of the underlying graph of `g`, ignoring orientation.
///
/// Requires n >= 3 and 2·δ(G) >= n. Maximal-path extension with pigeonhole
/// closure and outside-vertex absorption; O(n^2) per closure round.
pub fn dirac_cycle(g: &OrientedGraph) -> Result<CycleCert, HamiltonError> {
    let n = g.vertex_count();
    let delta = g.min_degree();
    if n < 3 || 2 * delta < n {
        return Err(HamiltonError::DiracPrecondition { n, delta });
    }
    let probes = Cell::new(0);
    let view = PrefixView::whole(g, &probes);
    let cycle = dirac_cycle_core(&view);
    let cert = CycleCert::from_indices(g, &cycle);
    debug_assert!(verify_hamilton_cycle(g, &cert, 0).ok);
    Ok(cert)
}

/// Core of [`dirac_cycle`] on a prefix view. Caller guarantees the degree
/// precondition.
pub(crate) fn dirac_cycle_core(view: &PrefixView<'_>) -> Vec<usize> {
    let n = view.n();
    debug_assert!(n >= 3);

    let mut on = vec![0u64; view.words()];
    let mut path: Vec<usize> = vec![0];
    bit_set(&mut on, 0);

    loop {
        extend_maximal(view, &mut path, &mut on);
        let s = path.len();

        // Close the maximal path into a cycle on its vertex set. All
        // endpoint neighbours lie on the path, so the crossing pair exists.
        let head = path[0];
        let tail = path[s - 1];
        let mut cross = None;
        for i in 0..s - 1 {
            if view.has_edge(head, path[i + 1]) && view.has_edge(tail, path[i]) {
                cross = Some(i);
                break;
            }
        }
        let i = cross.expect("degree sum forces a crossing pair on a maximal path");
        let mut cycle: Vec<usize> = Vec::with_capacity(s);
        cycle.extend_from_slice(&path[..=i]);
        cycle.extend(path[i + 1..].iter().rev());

        if s == n {
            return cycle;
        }

        // Absorb the lowest outside vertex adjacent to the cycle; every
        // outside vertex qualifies because s > n/2.
        let mut attach = None;
        'outer: for x in 0..n {
            if crate::view::bit_get(&on, x) {
                continue;
            }
            for (t, &c) in cycle.iter().enumerate() {
                if view.has_edge(x, c) {
                    attach = Some((x, t));
                    break 'outer;
                }
            }
        }
        let (x, t) = attach.expect("min degree >= n/2 connects every vertex to the cycle");
        path.clear();
        path.push(x);
        path.extend(cycle[t..].iter().chain(cycle[..t].iter()));
        bit_set(&mut on, x);
    }
}

/// Extends both ends of `path` greedily (lowest-index neighbour first)
/// until neither endpoint has a neighbour off the path.
fn extend_maximal(view: &PrefixView<'_>, path: &mut Vec<usize>, on: &mut [u64]) {
    loop {
        let mut grew = false;
        while let Some(x) = view.first_neighbor_excluding(*path.last().unwrap(), on) {
            path.push(x);
            bit_set(on, x);
            grew = true;
        }
        path.reverse();
        while let Some(x) = view.first_neighbor_excluding(*path.last().unwrap(), on) {
            path.push(x);
            bit_set(on, x);
            grew = true;
        }
        path.reverse();
        if !grew {
            return;
        }
    }
}

/// Directed Hamilton path of a tournament: all arcs point forward along the
/// returned order.
///
/// Vertices are inserted in ascending index order at the first feasible
/// position, so the result is deterministic.
pub fn tournament_directed_hamilton_path(g: &OrientedGraph) -> Result<PathCert, HamiltonError> {
    if !g.is_tournament() {
        return Err(HamiltonError::NotTournament);
    }
    let probes = Cell::new(0);
    let view = PrefixView::whole(g, &probes);
    let path = tournament_path_core(&view);
    let cert = PathCert::from_indices(g, &path);
    debug_assert_eq!(cert.sigma(g).unwrap().sigma_minus, 0);
    Ok(cert)
}

/// Core insertion loop; caller guarantees the view is a tournament.
pub(crate) fn tournament_path_core(view: &PrefixView<'_>) -> Vec<usize> {
    let n = view.n();
    let mut path: Vec<usize> = Vec::with_capacity(n);
    for x in 0..n {
        if path.is_empty() {
            path.push(x);
            continue;
        }
        let pos = insertion_point(view, &path, x);
        path.insert(pos, x);
    }
    path
}

fn insertion_point(view: &PrefixView<'_>, path: &[usize], x: usize) -> usize {
    if view.has_arc(x, path[0]) {
        return 0;
    }
    for i in 0..path.len() - 1 {
        if view.has_arc(path[i], x) && view.has_arc(x, path[i + 1]) {
            return i + 1;
        }
    }
    assert!(
        view.has_arc(path[path.len() - 1], x),
        "a tournament always admits a direction-preserving insertion"
    );
    path.len()
}

/// A path on at least min(n, 2d+1) vertices in a connected graph with
/// minimum degree >= d.
///
/// Maximal-path extension; when stuck short, the endpoint degree sum closes
/// the path into a cycle and connectivity re-opens it one vertex longer.
pub fn long_path_connected(g: &OrientedGraph, d: usize) -> Result<PathCert, HamiltonError> {
    if !g.is_connected() {
        return Err(HamiltonError::Disconnected);
    }
    let delta = g.min_degree();
    if delta < d {
        return Err(HamiltonError::DegreeBelow { delta, required: d });
    }
    let probes = Cell::new(0);
    let view = PrefixView::whole(g, &probes);
    let path = long_path_core(&view, d);
    debug_assert!(path.len() >= (2 * d + 1).min(g.vertex_count()));
    Ok(PathCert::from_indices(g, &path))
}

fn long_path_core(view: &PrefixView<'_>, d: usize) -> Vec<usize> {
    let n = view.n();
    let goal = (2 * d + 1).min(n);

    let mut on = vec![0u64; view.words()];
    let mut path: Vec<usize> = vec![0];
    bit_set(&mut on, 0);

    loop {
        extend_maximal(view, &mut path, &mut on);
        let s = path.len();
        if s >= goal {
            return path;
        }

        // s <= 2d, so the endpoint degree sum is at least s and the
        // crossing pair exists; connectivity then yields an outside
        // vertex adjacent to the resulting cycle.
        let head = path[0];
        let tail = path[s - 1];
        let mut cross = None;
        for i in 0..s - 1 {
            if view.has_edge(head, path[i + 1]) && view.has_edge(tail, path[i]) {
                cross = Some(i);
                break;
            }
        }
        let i = cross.expect("stuck path shorter than 2d+1 must close into a cycle");
        let mut cycle: Vec<usize> = Vec::with_capacity(s);
        cycle.extend_from_slice(&path[..=i]);
        cycle.extend(path[i + 1..].iter().rev());

        let mut attach = None;
        'outer: for x in 0..n {
            if crate::view::bit_get(&on, x) {
                continue;
            }
            for (t, &c) in cycle.iter().enumerate() {
                if view.has_edge(x, c) {
                    attach = Some((x, t));
                    break 'outer;
                }
            }
        }
        let (x, t) = attach.expect("connected graph joins every vertex to the cycle");
        path.clear();
        path.push(x);
        path.extend(cycle[t..].iter().chain(cycle[..t].iter()));
        bit_set(&mut on, x);
    }
}

/// Opens a verified cycle into a path on the same vertices without dropping
/// `sigma_max` below `target`.
///
/// With a minority edge present, deleting it preserves `sigma_max`
/// exactly; on a one-directional cycle any deletion leaves `len - 1`
/// same-direction edges, which still meets `target <= len - 1`.
pub fn open_cycle_to_path(
    g: &OrientedGraph,
    c: &CycleCert,
    target: usize,
) -> Result<PathCert, HamiltonError> {
    let verdict = verify_hamilton_cycle(g, c, target);
    if !verdict.ok {
        return Err(HamiltonError::InvalidCycle(verdict.to_string()));
    }
    let stats = verdict.stats.expect("passing verdict carries stats");
    let len = c.len();
    if target + 1 > len {
        return Err(HamiltonError::TargetTooLarge {
            target,
            max: len - 1,
        });
    }

    let vs = c.vertices();
    let cut = if stats.sigma_min == 0 {
        len - 1
    } else {
        // First edge in the minority direction along the stored traversal.
        let minority_forward = stats.sigma_plus < stats.sigma_minus;
        (0..len)
            .find(|&i| {
                let a = vs[i];
                let b = vs[(i + 1) % len];
                if minority_forward {
                    g.has_arc(a, b)
                } else {
                    g.has_arc(b, a)
                }
            })
            .expect("sigma_min > 0 means a minority edge exists")
    };

    let mut order = Vec::with_capacity(len);
    order.extend_from_slice(&vs[cut + 1..]);
    order.extend_from_slice(&vs[..=cut]);
    let path = PathCert::new(g, order);
    let check = verify_path(g, &path, target, true);
    assert!(check.ok, "opened path must re-verify: {check}");
    Ok(path)
}
