//! Enumeration and counting of convex and connected convex sets.
//!
//! Two independent routes are provided:
//!
//! * a subset-scan oracle ([`enumerate_brute`]) that tests every non-empty
//!   subset, for either set class;
//! * a level-by-level extension enumerator ([`enumerate_cc_extension`]) for
//!   connected convex sets, which grows each set of size `k` by one
//!   neighbouring vertex at a time.
//!
//! Completeness of the extension enumerator: let `S` be connected and convex
//! with `|S| = k + 1 ≥ 2`. `D[S]` is a connected acyclic digraph, so it has a
//! source or sink `v` that is not a cut-vertex of `D[S]`, and `S ∖ {v}` is
//! connected. It is also convex in `D`: every directed path between two of
//! its members stays inside `S` because `S` is convex, so the only vertex it
//! could miss is `v`, as an interior vertex. But then `v` would have both an
//! in-neighbour and an out-neighbour in `S`, which a source or sink of `D[S]`
//! does not. So every connected convex set of size `k + 1` is a one-vertex
//! extension of one of size `k`, and the level sweep misses nothing. The
//! argument carries over unchanged to sets confined to a vertex subset `U`,
//! which [`count_cc_within`] relies on. The oracle-equivalence tests check
//! this rather than trusting it.

use std::collections::HashSet;

use serde::Serialize;

use crate::convexity::{boundary, violations};
use crate::report::EnumerationReport;
pub use crate::report::SetClass;
use crate::{Digraph, Error, Result, Vertex, VertexSet};

/// Default order cap for the subset scan.
pub const BRUTE_FORCE_MAX_N: usize = 25;
/// Default order cap for the extension enumerator.
pub const EXTENSION_MAX_N: usize = 40;
/// Hard limit of the subset scan, which works on 64-bit masks.
pub const BRUTE_FORCE_HARD_MAX_N: usize = 63;

/// Word-level view of a digraph with at most 64 vertices.
struct MaskGraph {
    descendants: Vec<u64>,
    ancestors: Vec<u64>,
    neighbors: Vec<u64>,
}

impl MaskGraph {
    fn new(d: &Digraph) -> Self {
        let closure = d.closure().expect("small digraphs have a closure");
        let word = |s: &VertexSet| s.as_mask().expect("order <= 64");
        let neighbors = (0..d.order())
            .map(|v| d.neighbors(v).fold(0u64, |m, w| m | 1 << w))
            .collect();
        MaskGraph {
            descendants: closure.descendants.iter().map(word).collect(),
            ancestors: closure.ancestors.iter().map(word).collect(),
            neighbors,
        }
    }

    fn is_convex(&self, mask: u64) -> bool {
        let mut down = 0;
        let mut up = 0;
        let mut rest = mask;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            down |= self.descendants[v];
            up |= self.ancestors[v];
        }
        down & up & !mask == 0
    }

    fn is_connected(&self, mask: u64) -> bool {
        let start = mask & mask.wrapping_neg();
        let mut seen = start;
        let mut frontier = start;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let fresh = self.neighbors[v] & mask & !seen;
            seen |= fresh;
            frontier |= fresh;
        }
        seen == mask
    }
}

/// Subset-scan oracle: calls `visit` on every non-empty subset of the given
/// class, in increasing bit-vector order, and returns the tallies.
///
/// Fails with [`Error::OrderTooLarge`] when `n > max_n` or `n` exceeds
/// [`BRUTE_FORCE_HARD_MAX_N`].
pub fn visit_brute<F>(
    d: &Digraph,
    class: SetClass,
    max_n: usize,
    mut visit: F,
) -> Result<EnumerationReport>
where
    F: FnMut(&VertexSet),
{
    let n = d.order();
    let cap = max_n.min(BRUTE_FORCE_HARD_MAX_N);
    if n > cap {
        return Err(Error::OrderTooLarge { n, cap });
    }
    let mut report = EnumerationReport::new(class, n);
    if n == 0 {
        return Ok(report);
    }
    let graph = MaskGraph::new(d);
    let last: u64 = (1 << n) - 1;
    for mask in 1..=last {
        if !graph.is_convex(mask) {
            continue;
        }
        if class == SetClass::ConnectedConvex && !graph.is_connected(mask) {
            continue;
        }
        report.record_size(mask.count_ones() as usize);
        visit(&VertexSet::from_mask(n, mask));
    }
    Ok(report)
}

/// Collects the subset-scan output under the default cap.
pub fn enumerate_brute(
    d: &Digraph,
    class: SetClass,
) -> Result<(Vec<VertexSet>, EnumerationReport)> {
    let mut sets = Vec::new();
    let report = visit_brute(d, class, BRUTE_FORCE_MAX_N, |s| sets.push(s.clone()))?;
    Ok((sets, report))
}

/// Level sweep over connected convex subsets of `within`, starting from the
/// given singletons. Sets are emitted by increasing size, and in increasing
/// bit-vector order within a size.
///
/// Seeding with a single vertex `a` yields exactly the sets containing `a`:
/// a connected convex `S ∋ a` with `|S| ≥ 2` has at least two non-cut
/// sources or sinks in `D[S]`, so one of them differs from `a` and can be
/// peeled off.
fn sweep<F>(
    d: &Digraph,
    within: &VertexSet,
    seeds: &VertexSet,
    max_size: Option<usize>,
    mut visit: F,
) -> Vec<u64>
where
    F: FnMut(&VertexSet),
{
    let n = d.order();
    let limit = max_size.unwrap_or(n).min(within.len());
    let mut histogram = vec![0u64; n];
    let mut level: Vec<VertexSet> = seeds.iter().map(|v| VertexSet::singleton(n, v)).collect();
    let mut size = 1;
    while size <= limit && !level.is_empty() {
        histogram[size - 1] = level.len() as u64;
        for set in &level {
            visit(set);
        }
        if size == limit {
            break;
        }
        let mut next: HashSet<VertexSet> = HashSet::new();
        for set in &level {
            let mut candidates = boundary(d, set);
            candidates.intersect_with(within);
            for w in &candidates {
                let grown = set.with(w);
                if next.contains(&grown) {
                    continue;
                }
                if violations(d, &grown).is_empty() {
                    next.insert(grown);
                }
            }
        }
        level = next.into_iter().collect();
        level.sort_unstable();
        size += 1;
    }
    histogram
}

/// Extension enumerator for connected convex sets with an explicit order
/// cap. `max_size` stops the sweep after sets of that size.
pub fn visit_cc_extension<F>(
    d: &Digraph,
    max_size: Option<usize>,
    max_n: usize,
    visit: F,
) -> Result<EnumerationReport>
where
    F: FnMut(&VertexSet),
{
    let n = d.order();
    if n > max_n {
        return Err(Error::OrderTooLarge { n, cap: max_n });
    }
    if !d.is_connected() {
        return Err(Error::DisconnectedInput);
    }
    let all = d.vertices();
    let histogram = sweep(d, &all, &all, max_size, visit);
    EnumerationReport::from_histogram(SetClass::ConnectedConvex, histogram)
}

/// Collects the extension enumerator's output under the default cap.
pub fn enumerate_cc_extension(
    d: &Digraph,
    max_size: Option<usize>,
) -> Result<(Vec<VertexSet>, EnumerationReport)> {
    let mut sets = Vec::new();
    let report = visit_cc_extension(d, max_size, EXTENSION_MAX_N, |s| sets.push(s.clone()))?;
    Ok((sets, report))
}

/// Number of connected convex sets of `d` (convex in `d` itself, not just
/// in `D[within]`) contained in `within`.
pub fn count_cc_within(d: &Digraph, within: &VertexSet) -> Result<u64> {
    d.check_set(within)?;
    if within.is_empty() {
        return Err(Error::EmptySet);
    }
    Ok(sweep(d, within, within, None, |_| {}).iter().sum())
}

/// Number of connected convex sets of `d` contained in `within` and
/// containing `anchor`.
pub fn count_cc_within_containing(d: &Digraph, within: &VertexSet, anchor: Vertex) -> Result<u64> {
    d.check_set(within)?;
    d.check_vertex(anchor)?;
    if !within.contains(anchor) {
        return Ok(0);
    }
    let seed = VertexSet::singleton(d.order(), anchor);
    Ok(sweep(d, within, &seed, None, |_| {}).iter().sum())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SizeBoundRow {
    pub k: usize,
    pub count: u64,
    pub bound: u64,
    pub pass: bool,
}

/// Per-size comparison of connected convex set counts against `n - k + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SizeBoundTable {
    pub n: usize,
    pub rows: Vec<SizeBoundRow>,
}

impl SizeBoundTable {
    /// Builds the table from a connected-convex report.
    pub fn from_report(report: &EnumerationReport) -> Result<Self> {
        if report.class() != SetClass::ConnectedConvex {
            return Err(Error::InvalidParameter(
                "size bound needs a connected-convex report".into(),
            ));
        }
        let n = report.order();
        let rows = (1..=n)
            .map(|k| {
                let count = report.count_of_size(k);
                let bound = (n - k + 1) as u64;
                SizeBoundRow {
                    k,
                    count,
                    bound,
                    pass: count >= bound,
                }
            })
            .collect();
        Ok(SizeBoundTable { n, rows })
    }

    pub fn pass(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }

    /// Whether every size meets the bound with equality.
    pub fn is_tight(&self) -> bool {
        self.rows.iter().all(|r| r.count == r.bound)
    }

    pub fn failures(&self) -> impl Iterator<Item = &SizeBoundRow> {
        self.rows.iter().filter(|r| !r.pass)
    }
}

/// Checks that `d` has at least `n - k + 1` connected convex sets of each
/// size `k`.
pub fn verify_size_lower_bound(d: &Digraph) -> Result<SizeBoundTable> {
    let (_, report) = enumerate_cc_extension(d, None)?;
    SizeBoundTable::from_report(&report)
}
