//! Convexity predicates and constructions.
//!
//! In an acyclic digraph every directed walk is a path, so a vertex `w`
//! outside `X` lies on a directed path between two members of `X` exactly
//! when `w` is reachable from `X` and `X` is reachable from `w`. Hence `X`
//! is convex iff `reachable_from(X) ∩ reaching_to(X) ⊆ X`, and that is the
//! test used here instead of enumerating paths.

use std::collections::VecDeque;

use crate::{Digraph, Error, Result, Vertex, VertexSet};

/// A directed path `u, …, w, …, v` with both ends in the tested set and at
/// least one interior vertex outside it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvexityWitness {
    pub path: Vec<Vertex>,
}

impl ConvexityWitness {
    pub fn start(&self) -> Vertex {
        self.path[0]
    }

    pub fn end(&self) -> Vertex {
        *self.path.last().expect("witness path is non-empty")
    }

    /// Checks the witness invariants against `d` and the tested set.
    pub fn is_valid_for(&self, d: &Digraph, set: &VertexSet) -> bool {
        let p = &self.path;
        if p.len() < 3 || !set.contains(p[0]) || !set.contains(self.end()) {
            return false;
        }
        let arcs_exist = p.windows(2).all(|w| d.has_arc(w[0], w[1]));
        let mut seen = d.empty_set();
        let simple = p.iter().all(|&v| seen.insert(v));
        let leaves = p[1..p.len() - 1].iter().any(|&v| !set.contains(v));
        arcs_exist && simple && leaves
    }
}

/// Vertices outside `set` lying on a directed path between members of
/// `set`.
pub(crate) fn violations(d: &Digraph, set: &VertexSet) -> VertexSet {
    let mut between = d.reachable_from(set);
    between.intersect_with(&d.reaching_to(set));
    between.difference_with(set);
    between
}

fn require_nonempty(d: &Digraph, set: &VertexSet) -> Result<()> {
    d.check_set(set)?;
    if set.is_empty() {
        return Err(Error::EmptySet);
    }
    Ok(())
}

pub fn is_convex(d: &Digraph, set: &VertexSet) -> Result<bool> {
    require_nonempty(d, set)?;
    Ok(violations(d, set).is_empty())
}

/// Like [`is_convex`], but returns a violating path when `set` is not
/// convex (`None` means convex).
///
/// The witness goes through the lowest-labelled violating vertex `w` and is
/// a shortest `set ⤳ w` path spliced onto a shortest `w ⤳ set` path.
pub fn check_convex(d: &Digraph, set: &VertexSet) -> Result<Option<ConvexityWitness>> {
    require_nonempty(d, set)?;
    let Some(w) = violations(d, set).first() else {
        return Ok(None);
    };
    let mut path = shortest_escape(d, set, w, Direction::Backward);
    path.reverse();
    path.pop();
    path.extend(shortest_escape(d, set, w, Direction::Forward));
    Ok(Some(ConvexityWitness { path }))
}

#[derive(Clone, Copy)]
enum Direction {
    Forward,
    Backward,
}

/// Shortest path from `w` to the nearest member of `set`, following arcs
/// forward or backward, never passing through `set` before its last vertex.
/// Returned as `w, …, member`.
fn shortest_escape(d: &Digraph, set: &VertexSet, w: Vertex, dir: Direction) -> Vec<Vertex> {
    let mut parent = vec![usize::MAX; d.order()];
    parent[w] = w;
    let mut queue = VecDeque::from([w]);
    while let Some(v) = queue.pop_front() {
        let next = match dir {
            Direction::Forward => d.out_neighbors(v),
            Direction::Backward => d.in_neighbors(v),
        };
        for &u in next {
            if parent[u] != usize::MAX {
                continue;
            }
            parent[u] = v;
            if set.contains(u) {
                let mut path = vec![u];
                let mut cur = u;
                while cur != w {
                    cur = parent[cur];
                    path.push(cur);
                }
                path.reverse();
                return path;
            }
            queue.push_back(u);
        }
    }
    unreachable!("violating vertex {w} must reach the set in both directions")
}

/// The smallest convex superset of `set`.
pub fn convex_hull(d: &Digraph, set: &VertexSet) -> Result<VertexSet> {
    require_nonempty(d, set)?;
    let mut hull = set.clone();
    loop {
        let missing = violations(d, &hull);
        if missing.is_empty() {
            return Ok(hull);
        }
        hull.union_with(&missing);
    }
}

/// A vertex `w ∉ h` such that `h ∪ {w}` is again connected and convex.
///
/// Candidates are the undirected neighbours of `h`, scanned in increasing
/// label order; the first one passing the convexity test is returned. For a
/// connected digraph and a connected convex proper subset such a neighbour
/// always exists, so exhausting the scan would indicate a bug.
pub fn find_extension_vertex(d: &Digraph, h: &VertexSet) -> Result<Vertex> {
    d.check_set(h)?;
    if !d.is_connected() {
        return Err(Error::DisconnectedInput);
    }
    if h.is_full() {
        return Err(Error::FullSet);
    }
    if h.is_empty() || !d.is_underlying_connected(h)? || !is_convex(d, h)? {
        return Err(Error::NotConnectedConvex);
    }
    let candidates = boundary(d, h);
    for w in &candidates {
        if violations(d, &h.with(w)).is_empty() {
            return Ok(w);
        }
    }
    unreachable!("no extension vertex for connected convex set {h}")
}

/// Undirected neighbours of `set` outside `set`.
pub fn boundary(d: &Digraph, set: &VertexSet) -> VertexSet {
    let mut out = d.empty_set();
    for v in set {
        for w in d.neighbors(v) {
            out.insert(w);
        }
    }
    out.difference_with(set);
    out
}

/// All sources and sinks that are not cut-vertices, in increasing label
/// order. A connected DAG of order at least two always has at least two.
pub fn find_non_cut_endpoints(d: &Digraph) -> Result<Vec<Vertex>> {
    d.require_connected(2)?;
    let (sources, sinks) = d.sources_and_sinks();
    let mut endpoints = sources.union(&sinks);
    endpoints.difference_with(&d.articulation_points());
    Ok(endpoints.iter().collect())
}
