//! The main construction: given an oriented graph with minimum degree at
//! least half the vertex count, build a Hamilton cycle whose majority
//! orientation count reaches the minimum degree.
//!
//! Working target: with deficiency `ell = n - delta`, find a Hamilton cycle
//! with at most `ell` minority edges. The solver removes the highest-index
//! vertex until the prefix is a tournament or small enough for a plain
//! degree-based Hamilton cycle, then re-inserts vertices one at a time. A
//! re-inserted vertex either fits between two consecutive neighbours
//! directly, or a scan over near-uniform cycle segments between two of its
//! neighbours yields a rewiring that finishes, strictly lowers the minority
//! count, or hands a directed leftover path to the absorption routine.
//!
//! Every branch recomputes the exact counts it claims; a state where no
//! branch applies cannot occur on valid input and surfaces as an internal
//! invariant violation carrying the interval diagnostics of the stuck
//! state.

use std::cell::Cell;
use std::fmt;

use thiserror::Error;

use crate::absorb::absorb_core;
use crate::certify::{verify_hamilton_cycle, verify_path, CycleCert, PathCert};
use crate::graph::{OrientedGraph, VertexId};
use crate::hamilton::{dirac_cycle_core, open_cycle_to_path, tournament_path_core};
use crate::view::PrefixView;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SolveError {
    #[error("need n >= 3 and minimum degree >= n/2, got n={n} delta={delta}")]
    Precondition { n: usize, delta: usize },
    #[error("diagnostics precondition violated: {0}")]
    DiagnosticsPrecondition(String),
    #[error("internal invariant violation: {0}")]
    Internal(String),
}

/// Branch taken by one solver event.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum BranchKind {
    /// Deficiency 1: close a directed tournament path.
    Tournament,
    /// Small prefix: any Hamilton cycle is good enough.
    DiracBase,
    /// Minority count two below the bound: plain insertion.
    Insert,
    /// Minority count at the bound: some insertion still fits.
    TightInsert,
    /// Segment between two neighbours fully backward: rewire through the
    /// inserted vertex.
    FullBackSegment,
    /// Segment with a single forward edge and matching arcs: rewire.
    SingleForwardSegment,
    /// Rewire left a directed path: merged by the absorption routine.
    Absorb,
    /// Rewire produced a better same-size cycle: adopt and continue.
    ImproveCycle,
}

impl BranchKind {
    pub fn as_str(self) -> &'static str {
        match self {
            BranchKind::Tournament => "tournament",
            BranchKind::DiracBase => "dirac-base",
            BranchKind::Insert => "insert",
            BranchKind::TightInsert => "tight-insert",
            BranchKind::FullBackSegment => "full-back-segment",
            BranchKind::SingleForwardSegment => "single-forward-segment",
            BranchKind::Absorb => "absorb",
            BranchKind::ImproveCycle => "improve-cycle",
        }
    }
}

impl fmt::Display for BranchKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Copy, Clone, Debug)]
pub struct LevelEvent {
    pub branch: BranchKind,
    /// Minority count of the working cycle when the event fired.
    pub sigma_minus: usize,
}

#[derive(Clone, Debug)]
pub struct LevelRecord {
    /// Prefix size this level completed.
    pub n: usize,
    /// Deficiency bound at this level.
    pub ell: usize,
    pub events: Vec<LevelEvent>,
}

/// Per-level record of the construction, plus the adjacency probe count.
#[derive(Clone, Debug, Default)]
pub struct SolveTrace {
    pub levels: Vec<LevelRecord>,
    pub arc_probes: u64,
}

impl SolveTrace {
    pub fn branch_histogram(&self) -> std::collections::BTreeMap<BranchKind, u64> {
        let mut h = std::collections::BTreeMap::new();
        for lvl in &self.levels {
            for ev in &lvl.events {
                *h.entry(ev.branch).or_insert(0) += 1;
            }
        }
        h
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for lvl in &self.levels {
            for ev in &lvl.events {
                out.push_str(&format!(
                    "level n={} ell={} branch={} sigma_minus={}\n",
                    lvl.n, lvl.ell, ev.branch, ev.sigma_minus
                ));
            }
        }
        out
    }
}

macro_rules! internal {
    ($($arg:tt)*) => {
        return Err(SolveError::Internal(format!($($arg)*)))
    };
}

/// Builds a Hamilton cycle of `g` with `sigma_max >= delta(g)` (equivalently
/// at most `n - delta` minority edges), together with its construction
/// trace. Requires n >= 3 and 2·delta >= n. Polynomial time.
pub fn max_discrepancy_hamilton(g: &OrientedGraph) -> Result<(CycleCert, SolveTrace), SolveError> {
    let n = g.vertex_count();
    let delta = g.min_degree();
    if n < 3 || 2 * delta < n {
        return Err(SolveError::Precondition { n, delta });
    }

    let probes = Cell::new(0u64);
    let delta_at = prefix_min_degrees(g);
    let mut trace = SolveTrace::default();

    // Descend while the prefix is strictly inside the recursive regime.
    let mut base = n;
    loop {
        let ell = base - delta_at[base];
        debug_assert!(2 * delta_at[base] >= base, "hypothesis must persist");
        if ell == 1 || base <= 2 * ell + 1 {
            break;
        }
        base -= 1;
    }

    // Base solve on the prefix graph.
    let mut cycle: Vec<usize> = {
        let view = PrefixView::new(g, base, &probes);
        let ell = base - delta_at[base];
        let (branch, cyc) = if ell == 1 {
            (BranchKind::Tournament, tournament_path_core(&view))
        } else {
            (BranchKind::DiracBase, dirac_cycle_core(&view))
        };
        let (p, m) = cycle_sigma(&view, &cyc)
            .ok_or_else(|| SolveError::Internal("base cycle not a cycle".to_string()))?;
        let sm = p.min(m);
        if sm > ell {
            internal!("base cycle has sigma_min {sm} above bound {ell}");
        }
        trace.levels.push(LevelRecord {
            n: base,
            ell,
            events: vec![LevelEvent { branch, sigma_minus: sm }],
        });
        cyc
    };

    // Re-insert vertices base..n one level at a time.
    for k in base + 1..=n {
        let view = PrefixView::new(g, k, &probes);
        let ell = k - delta_at[k];
        let mut record = LevelRecord { n: k, ell, events: Vec::new() };
        cycle = insert_level(&view, cycle, k - 1, ell, &mut record)?;
        trace.levels.push(record);
        debug_assert_eq!(cycle.len(), k);
    }

    trace.arc_probes = probes.get();
    let cert = CycleCert::from_indices(g, &cycle);
    let verdict = verify_hamilton_cycle(g, &cert, delta);
    if !verdict.ok {
        internal!("final certificate failed verification: {verdict}");
    }
    Ok((cert, trace))
}

/// delta_at[k] = minimum underlying degree of the induced prefix 0..k.
fn prefix_min_degrees(g: &OrientedGraph) -> Vec<usize> {
    let n = g.vertex_count();
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(VertexId::new(v))).collect();
    let mut delta_at = vec![0usize; n + 1];
    for k in (1..=n).rev() {
        delta_at[k] = deg[..k].iter().copied().min().unwrap_or(0);
        let removed = k - 1;
        for wi in 0..g.words_per_row() {
            let mut w = g.und_word(removed, wi);
            while w != 0 {
                let u = wi * 64 + w.trailing_zeros() as usize;
                w &= w - 1;
                if u < removed {
                    deg[u] -= 1;
                }
            }
        }
    }
    delta_at
}

fn cycle_sigma(view: &PrefixView<'_>, cycle: &[usize]) -> Option<(usize, usize)> {
    let mut plus = 0;
    let mut minus = 0;
    for t in 0..cycle.len() {
        let a = cycle[t];
        let b = cycle[(t + 1) % cycle.len()];
        if view.has_arc(a, b) {
            plus += 1;
        } else if view.has_arc(b, a) {
            minus += 1;
        } else {
            return None;
        }
    }
    Some((plus, minus))
}

#[inline]
fn back_step(view: &PrefixView<'_>, a: usize, b: usize) -> usize {
    view.has_arc(b, a) as usize
}

/// Splices `w` between cycle positions `t` and `t+1`.
fn splice_in(cycle: &[usize], t: usize, w: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(cycle.len() + 1);
    out.extend_from_slice(&cycle[..=t]);
    out.push(w);
    out.extend_from_slice(&cycle[t + 1..]);
    out
}

/// One insertion level: grows a cycle on all prefix vertices except `w`
/// into a Hamilton cycle of the prefix with at most `ell` minority edges.
fn insert_level(
    view: &PrefixView<'_>,
    cycle_in: Vec<usize>,
    w_in: usize,
    ell: usize,
    record: &mut LevelRecord,
) -> Result<Vec<usize>, SolveError> {
    let k = view.n();
    let mlen = k - 1;
    debug_assert_eq!(cycle_in.len(), mlen);
    let mut cycle = cycle_in;
    let mut w = w_in;
    let mut improvements = 0usize;

    loop {
        let (plus, minus) = match cycle_sigma(view, &cycle) {
            Some(pm) => pm,
            None => internal!("working cycle lost adjacency at level {k}"),
        };
        if minus > plus {
            cycle.reverse();
        }
        let sm = plus.min(minus);
        if sm > ell {
            internal!("working cycle entered level {k} with sigma_min {sm} > ell {ell}");
        }

        let nbr: Vec<bool> = cycle.iter().map(|&x| view.has_edge(w, x)).collect();

        // Two units of slack: any consecutive neighbour pair will do.
        if sm + 2 <= ell {
            let t = (0..mlen).find(|&t| nbr[t] && nbr[(t + 1) % mlen]);
            let Some(t) = t else {
                internal!("degree pigeonhole produced no consecutive neighbour pair at level {k}");
            };
            record.events.push(LevelEvent { branch: BranchKind::Insert, sigma_minus: sm });
            return Ok(splice_in(&cycle, t, w));
        }

        // Tight regime: try every consecutive neighbour pair exactly.
        let mut chosen = None;
        for t in 0..mlen {
            let tn = (t + 1) % mlen;
            if !(nbr[t] && nbr[tn]) {
                continue;
            }
            let nb = sm - back_step(view, cycle[t], cycle[tn])
                + back_step(view, cycle[t], w)
                + back_step(view, w, cycle[tn]);
            if nb.min(k - nb) <= ell {
                chosen = Some(t);
                break;
            }
        }
        if let Some(t) = chosen {
            record
                .events
                .push(LevelEvent { branch: BranchKind::TightInsert, sigma_minus: sm });
            return Ok(splice_in(&cycle, t, w));
        }

        // With one unit of slack, a failed insertion at a consecutive
        // neighbour pair forces the forward edge and both arc directions.
        if sm + 1 == ell {
            for t in 0..mlen {
                let tn = (t + 1) % mlen;
                if nbr[t]
                    && nbr[tn]
                    && !(view.has_arc(cycle[t], cycle[tn])
                        && view.has_arc(w, cycle[t])
                        && view.has_arc(cycle[tn], w))
                {
                    internal!(
                        "forced insertion-failure structure absent at position {t} of level {k}: {}",
                        stuck_dump(view, &cycle, w, ell)
                    );
                }
            }
        }

        // Segment scan, shortest segments first.
        let mut back = vec![0usize; mlen + 1];
        for t in 0..mlen {
            back[t + 1] = back[t] + back_step(view, cycle[t], cycle[(t + 1) % mlen]);
        }
        let seg_back = |i: usize, e: usize| -> usize {
            let j = i + e;
            if j <= mlen {
                back[j] - back[i]
            } else {
                back[mlen] - back[i] + back[j - mlen]
            }
        };
        let wpos: Vec<usize> = (0..mlen).filter(|&t| nbr[t]).collect();

        let mut action: Option<(usize, usize, usize, usize, BranchKind)> = None;
        'scan: for e in 1..mlen {
            for &i in &wpos {
                let jp = (i + e) % mlen;
                if !nbr[jp] {
                    continue;
                }
                let sb = seg_back(i, e);
                if sb == e && (view.has_arc(w, cycle[jp]) || view.has_arc(cycle[i], w)) {
                    action = Some((i, jp, e, sb, BranchKind::FullBackSegment));
                    break 'scan;
                }
                if sb + 1 == e && view.has_arc(cycle[i], w) && view.has_arc(w, cycle[jp]) {
                    action = Some((i, jp, e, sb, BranchKind::SingleForwardSegment));
                    break 'scan;
                }
            }
        }

        let Some((i, jp, e, sb, kind)) = action else {
            internal!(
                "no branch applies at level {k} (sigma_min {sm}, ell {ell}): {}",
                stuck_dump(view, &cycle, w, ell)
            );
        };

        // Replace the segment interior with w.
        let nsm = sm - sb + back_step(view, cycle[i], w) + back_step(view, w, cycle[jp]);
        let mut rewired = Vec::with_capacity(mlen - e + 2);
        rewired.push(cycle[i]);
        rewired.push(w);
        for t in 0..mlen - e {
            rewired.push(cycle[(jp + t) % mlen]);
        }
        let dropped: Vec<usize> = (1..e).map(|t| cycle[(i + t) % mlen]).collect();

        match e {
            1 => {
                if nsm.min(k - nsm) > ell {
                    internal!("single-edge rewire missed the bound at level {k}");
                }
                record.events.push(LevelEvent { branch: kind, sigma_minus: sm });
                return Ok(rewired);
            }
            2 => {
                if nsm >= sm {
                    internal!("two-edge rewire failed to improve at level {k}");
                }
                improvements += 1;
                if improvements > ell {
                    internal!("more than ell={ell} improvement rounds at level {k}");
                }
                record
                    .events
                    .push(LevelEvent { branch: BranchKind::ImproveCycle, sigma_minus: sm });
                w = dropped[0];
                cycle = rewired;
            }
            _ => {
                if nsm + (e - 1) > ell {
                    internal!("leftover bound violated at level {k}: nsm={nsm} e={e} ell={ell}");
                }
                let leftover: Vec<usize> = dropped.into_iter().rev().collect();
                let mut absorb_trace = Vec::new();
                let merged = absorb_core(view, leftover, rewired, ell, &mut absorb_trace)
                    .map_err(|e| SolveError::Internal(format!("absorption failed: {e}")))?;
                record.events.push(LevelEvent { branch: BranchKind::Absorb, sigma_minus: sm });
                return Ok(merged);
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Interval diagnostics
// ---------------------------------------------------------------------------

/// Bookkeeping of a stuck insertion state: positions of the excluded
/// vertex's neighbours, marked positions (backward edges plus the forced
/// pair), their maximal runs, and per-window slack values, together with
/// the arithmetic identities that hold in any reachable stuck state.
#[derive(Clone, Debug)]
pub struct IntervalReport {
    /// Normalized and rotated traversal the positions refer to.
    pub cycle_order: Vec<VertexId>,
    pub excluded: VertexId,
    pub ell: usize,
    pub sigma_min: usize,
    /// 0-based positions adjacent to the excluded vertex.
    pub neighbor_positions: Vec<usize>,
    /// Forced consecutive-neighbour position, when the minority count sits
    /// one below the bound.
    pub i_star: Option<usize>,
    /// 0-based marked positions: backward edges plus `i_star`. After
    /// rotation, position 0 is marked and the last position is not.
    pub marked_positions: Vec<usize>,
    /// Maximal runs of marked positions: (start, length).
    pub intervals: Vec<(usize, usize)>,
    /// Per-window slack: unmarked non-neighbour surplus of the window from
    /// one run start to the next.
    pub slack: Vec<i64>,
    /// Run count.
    pub interval_count: usize,
    /// Named identity checks with outcomes.
    pub checks: Vec<(String, bool)>,
}

impl IntervalReport {
    pub fn all_checks_pass(&self) -> bool {
        self.checks.iter().all(|(_, ok)| *ok)
    }
}

impl fmt::Display for IntervalReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |xs: &[usize]| {
            if xs.is_empty() {
                "-".to_string()
            } else {
                xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
            }
        };
        writeln!(
            f,
            "diag excluded={} ell={} sigma_min={} runs={}",
            self.excluded, self.ell, self.sigma_min, self.interval_count
        )?;
        writeln!(
            f,
            "order(0-based)={}",
            self.cycle_order
                .iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        )?;
        writeln!(
            f,
            "order(1-based)={}",
            self.cycle_order
                .iter()
                .map(|v| v.label().to_string())
                .collect::<Vec<_>>()
                .join(" ")
        )?;
        writeln!(f, "neighbor_positions={}", join(&self.neighbor_positions))?;
        writeln!(
            f,
            "marked_positions={} i_star={}",
            join(&self.marked_positions),
            self.i_star.map_or("-".to_string(), |t| t.to_string())
        )?;
        for (j, (&(a, t), &m)) in self.intervals.iter().zip(self.slack.iter()).enumerate() {
            writeln!(f, "run index={j} start={a} len={t} slack={m}")?;
        }
        for (name, ok) in &self.checks {
            writeln!(f, "check \"{name}\" {}", if *ok { "pass" } else { "FAIL" })?;
        }
        Ok(())
    }
}

/// Interval bookkeeping for an almost-spanning cycle and its excluded
/// vertex.
///
/// Preconditions: `c` spans all vertices except `w`; its minority count is
/// `ell - 1` or `ell` where `ell = n - delta(g)`; and in the `ell - 1` case
/// some consecutive pair of `c` lies in the neighbourhood of `w`.
pub fn diagnostics(
    g: &OrientedGraph,
    c: &CycleCert,
    w: VertexId,
) -> Result<IntervalReport, SolveError> {
    let n = g.vertex_count();
    if w.idx() >= n {
        return Err(SolveError::DiagnosticsPrecondition(format!(
            "excluded vertex {w} out of range"
        )));
    }
    c.sigma(g)
        .map_err(|e| SolveError::DiagnosticsPrecondition(format!("cycle invalid: {e}")))?;
    if c.len() != n - 1 || c.vertices().contains(&w) {
        return Err(SolveError::DiagnosticsPrecondition(format!(
            "cycle must span every vertex except {w}"
        )));
    }
    let ell = n - g.min_degree();
    let probes = Cell::new(0);
    let view = PrefixView::whole(g, &probes);
    let cycle: Vec<usize> = c.vertices().iter().map(|v| v.idx()).collect();
    diagnostics_core(&view, &cycle, w.idx(), ell).map_err(SolveError::DiagnosticsPrecondition)
}

fn diagnostics_core(
    view: &PrefixView<'_>,
    cycle_in: &[usize],
    w: usize,
    ell: usize,
) -> Result<IntervalReport, String> {
    let mlen = cycle_in.len();
    let mut cycle = cycle_in.to_vec();
    let (plus, minus) = cycle_sigma(view, &cycle).ok_or("cycle lost adjacency")?;
    if minus > plus {
        cycle.reverse();
    }
    let sm = plus.min(minus);
    if !(sm + 1 == ell || sm == ell) {
        return Err(format!(
            "minority count {sm} must be {} or {ell}",
            ell.saturating_sub(1)
        ));
    }

    let nbr: Vec<bool> = cycle.iter().map(|&x| view.has_edge(w, x)).collect();
    let backward: Vec<bool> = (0..mlen)
        .map(|t| view.has_arc(cycle[(t + 1) % mlen], cycle[t]))
        .collect();

    let i_star = if sm + 1 == ell {
        let forward_pair = (0..mlen)
            .find(|&t| nbr[t] && nbr[(t + 1) % mlen] && view.has_arc(cycle[t], cycle[(t + 1) % mlen]));
        let any_pair = (0..mlen).find(|&t| nbr[t] && nbr[(t + 1) % mlen]);
        Some(
            forward_pair
                .or(any_pair)
                .ok_or("no consecutive neighbour pair for the forced position")?,
        )
    } else {
        None
    };

    let mut marked = backward.clone();
    if let Some(t) = i_star {
        marked[t] = true;
    }
    let marked_count = marked.iter().filter(|&&b| b).count();
    if marked_count == 0 || marked_count == mlen {
        return Err(format!(
            "marked positions ({marked_count} of {mlen}) cannot be rotated into shape"
        ));
    }

    // Rotate so position 0 is marked and the last position is not:
    // smallest r with r unmarked and r+1 marked.
    let r = (0..mlen)
        .find(|&r| !marked[r] && marked[(r + 1) % mlen])
        .expect("a proper nonempty marked set has a 0->1 transition");
    let shift = |t: usize| cycle[(r + 1 + t) % mlen];
    let order: Vec<usize> = (0..mlen).map(shift).collect();
    let remap = |t: usize| (t + mlen - (r + 1) % mlen) % mlen;
    let marked_n: Vec<bool> = {
        let mut m2 = vec![false; mlen];
        for t in 0..mlen {
            if marked[t] {
                m2[remap(t)] = true;
            }
        }
        m2
    };
    let nbr_n: Vec<bool> = {
        let mut n2 = vec![false; mlen];
        for t in 0..mlen {
            if nbr[t] {
                n2[remap(t)] = true;
            }
        }
        n2
    };
    debug_assert!(marked_n[0] && !marked_n[mlen - 1]);

    // Maximal runs of marked positions.
    let mut intervals: Vec<(usize, usize)> = Vec::new();
    let mut t = 0;
    while t < mlen {
        if marked_n[t] {
            let start = t;
            while t < mlen && marked_n[t] {
                t += 1;
            }
            intervals.push((start, t - start));
        } else {
            t += 1;
        }
    }
    let q = intervals.len();

    // Window slack between consecutive run starts.
    let mut slack: Vec<i64> = Vec::with_capacity(q);
    for j in 0..q {
        let (a, t_j) = intervals[j];
        let next_a = if j + 1 < q { intervals[j + 1].0 } else { mlen };
        let not_nbr = (a..next_a).filter(|&t| !nbr_n[t]).count() as i64;
        slack.push(not_nbr - t_j as i64 + 1);
    }

    let sum_t: usize = intervals.iter().map(|&(_, t)| t).sum();
    let sum_m: i64 = slack.iter().sum();
    let mut checks: Vec<(String, bool)> = vec![
        ("marked positions sum to the deficiency".to_string(), sum_t == ell),
        (
            "total window slack at most runs minus one".to_string(),
            sum_m <= q as i64 - 1,
        ),
    ];

    // Two-neighbour windows must consist of exactly an out-arc then an
    // in-arc around the excluded vertex.
    let mut pair_ok = true;
    for &(a, t_j) in &intervals {
        let window: Vec<usize> = (a..=a + t_j).filter(|&t| nbr_n[t]).collect();
        if window.len() >= 2 {
            pair_ok &= window.len() == 2
                && view.has_arc(w, order[window[0]])
                && view.has_arc(order[window[1]], w);
        }
    }
    checks.push(("dense windows pair out-arc with in-arc".to_string(), pair_ok));

    Ok(IntervalReport {
        cycle_order: order.iter().map(|&x| VertexId::new(x)).collect(),
        excluded: VertexId::new(w),
        ell,
        sigma_min: sm,
        neighbor_positions: (0..mlen).filter(|&t| nbr_n[t]).collect(),
        i_star: i_star.map(remap),
        marked_positions: (0..mlen).filter(|&t| marked_n[t]).collect(),
        intervals,
        slack,
        interval_count: q,
        checks,
    })
}

fn stuck_dump(view: &PrefixView<'_>, cycle: &[usize], w: usize, ell: usize) -> String {
    match diagnostics_core(view, cycle, w, ell) {
        Ok(report) => format!("stuck state diagnostics: {report}"),
        Err(e) => format!(
            "stuck state diagnostics unavailable ({e}); cycle={cycle:?} excluded={w} ell={ell}"
        ),
    }
}

// ---------------------------------------------------------------------------
// Paths
// ---------------------------------------------------------------------------

/// A path with `sigma_max >= delta(g)`, spanning whenever 2·delta >= n.
///
/// Dense graphs route through the Hamilton cycle construction and drop one
/// minority edge. Sparse graphs work per connected component: dense
/// components solve and open, long sparse components take a degree-bounded
/// long path whose edge count alone forces the target.
pub fn discrepancy_path(g: &OrientedGraph) -> Result<PathCert, SolveError> {
    let n = g.vertex_count();
    let delta = g.min_degree();

    if n == 1 {
        return Ok(PathCert::from_indices(g, &[0]));
    }
    if n == 2 {
        // A spanning path exists exactly when the single pair is adjacent.
        if delta == 1 {
            return Ok(PathCert::from_indices(g, &[0, 1]));
        }
        return Ok(PathCert::from_indices(g, &[0]));
    }
    if 2 * delta >= n {
        let (cycle, _) = max_discrepancy_hamilton(g)?;
        let path = open_cycle_to_path(g, &cycle, delta)
            .map_err(|e| SolveError::Internal(format!("cycle opening failed: {e}")))?;
        return Ok(path);
    }

    let mut best: Option<(PathCert, usize)> = None;
    for comp in g.connected_components() {
        let (h, map) = g.induced_subgraph(&comp);
        let hn = h.vertex_count();
        let hdelta = h.min_degree();
        let local: Vec<usize> = if hn == 1 {
            vec![0]
        } else if hn == 2 {
            vec![0, 1]
        } else if 2 * hdelta >= hn {
            let (cycle, _) = max_discrepancy_hamilton(&h)?;
            let path = open_cycle_to_path(&h, &cycle, hdelta)
                .map_err(|e| SolveError::Internal(format!("cycle opening failed: {e}")))?;
            path.vertices().iter().map(|v| v.idx()).collect()
        } else {
            // hn >= 2*hdelta + 1, so the long path has at least 2*hdelta
            // edges and one direction reaches hdelta >= delta.
            let path = crate::hamilton::long_path_connected(&h, hdelta)
                .map_err(|e| SolveError::Internal(format!("long path failed: {e}")))?;
            path.vertices().iter().map(|v| v.idx()).collect()
        };
        let mapped: Vec<usize> = local.iter().map(|&i| map[i].idx()).collect();
        let cert = PathCert::from_indices(g, &mapped);
        let smax = cert
            .sigma(g)
            .map_err(|e| SolveError::Internal(format!("component path invalid: {e}")))?
            .sigma_max;
        if best.as_ref().map_or(true, |(_, b)| smax > *b) {
            best = Some((cert, smax));
        }
    }
    let (cert, _) = best.expect("n >= 1 gives at least one component");
    let verdict = verify_path(g, &cert, delta, false);
    if !verdict.ok {
        internal!("component path failed verification: {verdict}");
    }
    Ok(cert)
}
