//! Immutable simple acyclic digraphs.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashSet, VecDeque};
use std::fmt;
use std::sync::OnceLock;

use crate::{Error, Result, Vertex, VertexSet};

/// Largest order for which the transitive closure is materialized. Above it,
/// reachability queries fall back to graph traversal.
pub const CLOSURE_MAX_N: usize = 8192;

/// A simple acyclic digraph on vertices `0..n`.
///
/// The arc list keeps its input order (it is what the edge-list writer
/// emits). Adjacency lists are sorted by label. A topological order is
/// computed at construction, breaking ties by lowest label.
pub struct Digraph {
    n: usize,
    arcs: Vec<(Vertex, Vertex)>,
    out_adj: Vec<Vec<Vertex>>,
    in_adj: Vec<Vec<Vertex>>,
    topo: Vec<Vertex>,
    closure: OnceLock<Closure>,
}

/// Reflexive-transitive closure, one bit row per vertex.
#[derive(Debug)]
pub(crate) struct Closure {
    pub(crate) descendants: Vec<VertexSet>,
    pub(crate) ancestors: Vec<VertexSet>,
}

impl Digraph {
    /// Validates `arcs` and builds the digraph.
    ///
    /// Fails with [`Error::InvalidArc`] on out-of-range endpoints, self-loops
    /// or duplicate arcs, and with [`Error::CycleDetected`] when the arcs
    /// contain a directed cycle.
    pub fn new<I>(n: usize, arcs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let arcs: Vec<(Vertex, Vertex)> = arcs.into_iter().collect();
        let mut seen = HashSet::with_capacity(arcs.len());
        let mut out_adj = vec![Vec::new(); n];
        let mut in_adj = vec![Vec::new(); n];
        for &(from, to) in &arcs {
            if from >= n || to >= n {
                return Err(Error::InvalidArc {
                    from,
                    to,
                    reason: "endpoint out of range",
                });
            }
            if from == to {
                return Err(Error::InvalidArc {
                    from,
                    to,
                    reason: "self-loop",
                });
            }
            if !seen.insert((from, to)) {
                return Err(Error::InvalidArc {
                    from,
                    to,
                    reason: "duplicate arc",
                });
            }
            out_adj[from].push(to);
            in_adj[to].push(from);
        }
        for list in out_adj.iter_mut().chain(in_adj.iter_mut()) {
            list.sort_unstable();
        }

        let topo = topological_order(&out_adj, &in_adj)?;
        Ok(Digraph {
            n,
            arcs,
            out_adj,
            in_adj,
            topo,
            closure: OnceLock::new(),
        })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    /// Arcs in construction order.
    pub fn arcs(&self) -> &[(Vertex, Vertex)] {
        &self.arcs
    }

    pub fn out_neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.out_adj[v]
    }

    pub fn in_neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.in_adj[v]
    }

    pub fn has_arc(&self, from: Vertex, to: Vertex) -> bool {
        from < self.n && self.out_adj[from].binary_search(&to).is_ok()
    }

    /// Neighbors in the underlying undirected graph (out-neighbors first).
    pub fn neighbors(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.out_adj[v].iter().chain(&self.in_adj[v]).copied()
    }

    /// Topological order; ties are broken by lowest label.
    pub fn topological_order(&self) -> &[Vertex] {
        &self.topo
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    pub fn empty_set(&self) -> VertexSet {
        VertexSet::empty(self.n)
    }

    /// Builds a set over this digraph's universe.
    pub fn set<I: IntoIterator<Item = Vertex>>(&self, vertices: I) -> Result<VertexSet> {
        VertexSet::from_vertices(self.n, vertices)
    }

    pub(crate) fn check_set(&self, set: &VertexSet) -> Result<()> {
        if set.universe() != self.n {
            return Err(Error::UniverseMismatch {
                expected: self.n,
                found: set.universe(),
            });
        }
        Ok(())
    }

    pub(crate) fn check_vertex(&self, v: Vertex) -> Result<()> {
        if v >= self.n {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.n,
            });
        }
        Ok(())
    }

    /// The materialized closure, or `None` above [`CLOSURE_MAX_N`].
    pub(crate) fn closure(&self) -> Option<&Closure> {
        if self.n > CLOSURE_MAX_N {
            return None;
        }
        Some(self.closure.get_or_init(|| self.compute_closure()))
    }

    fn compute_closure(&self) -> Closure {
        let mut descendants = vec![VertexSet::empty(self.n); self.n];
        for &v in self.topo.iter().rev() {
            let mut row = VertexSet::singleton(self.n, v);
            for &w in &self.out_adj[v] {
                row.union_with(&descendants[w]);
            }
            descendants[v] = row;
        }
        let mut ancestors = vec![VertexSet::empty(self.n); self.n];
        for &v in &self.topo {
            let mut row = VertexSet::singleton(self.n, v);
            for &u in &self.in_adj[v] {
                row.union_with(&ancestors[u]);
            }
            ancestors[v] = row;
        }
        Closure {
            descendants,
            ancestors,
        }
    }

    /// Whether there is a directed path `from ⤳ to` (reflexive).
    pub fn reaches(&self, from: Vertex, to: Vertex) -> bool {
        match self.closure() {
            Some(c) => c.descendants[from].contains(to),
            None => self
                .reachable_from(&VertexSet::singleton(self.n, from))
                .contains(to),
        }
    }

    /// All vertices reachable by a directed path from some member of
    /// `set`, including `set` itself.
    ///
    /// Panics if `set` is over a different universe.
    pub fn reachable_from(&self, set: &VertexSet) -> VertexSet {
        set.check_universe(&self.empty_set());
        match self.closure() {
            Some(c) => union_rows(set, &c.descendants),
            None => self.traverse(set, &self.out_adj),
        }
    }

    /// All vertices with a directed path to some member of `set`, including
    /// `set` itself.
    ///
    /// Panics if `set` is over a different universe.
    pub fn reaching_to(&self, set: &VertexSet) -> VertexSet {
        set.check_universe(&self.empty_set());
        match self.closure() {
            Some(c) => union_rows(set, &c.ancestors),
            None => self.traverse(set, &self.in_adj),
        }
    }

    fn traverse(&self, start: &VertexSet, adj: &[Vec<Vertex>]) -> VertexSet {
        let mut seen = start.clone();
        let mut queue: VecDeque<Vertex> = start.iter().collect();
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if seen.insert(w) {
                    queue.push_back(w);
                }
            }
        }
        seen
    }

    /// Whether `set` induces a connected subgraph once arc directions are
    /// ignored.
    pub fn is_underlying_connected(&self, set: &VertexSet) -> Result<bool> {
        self.check_set(set)?;
        let start = set.first().ok_or(Error::EmptySet)?;
        Ok(self.component_within(set, start).len() == set.len())
    }

    /// Whether the whole digraph is connected. The empty digraph is not.
    pub fn is_connected(&self) -> bool {
        self.n > 0
            && self
                .is_underlying_connected(&self.vertices())
                .unwrap_or(false)
    }

    /// The vertices of `within` reachable from `start` in the underlying
    /// undirected graph of `D[within]`.
    pub fn component_within(&self, within: &VertexSet, start: Vertex) -> VertexSet {
        let mut seen = VertexSet::singleton(self.n, start);
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for w in self.neighbors(v) {
                if within.contains(w) && seen.insert(w) {
                    queue.push_back(w);
                }
            }
        }
        seen
    }

    /// Vertex sets of the underlying connected components, ordered by their
    /// lowest label.
    pub fn components(&self) -> Vec<VertexSet> {
        let mut remaining = self.vertices();
        let mut components = Vec::new();
        while let Some(start) = remaining.first() {
            let component = self.component_within(&remaining, start);
            remaining.difference_with(&component);
            components.push(component);
        }
        components
    }

    /// Vertices of in-degree zero and of out-degree zero.
    pub fn sources_and_sinks(&self) -> (VertexSet, VertexSet) {
        let mut sources = self.empty_set();
        let mut sinks = self.empty_set();
        for v in 0..self.n {
            if self.in_adj[v].is_empty() {
                sources.insert(v);
            }
            if self.out_adj[v].is_empty() {
                sinks.insert(v);
            }
        }
        (sources, sinks)
    }

    /// Whether deleting `v` disconnects the underlying undirected graph.
    ///
    /// Requires a connected digraph of order at least two.
    pub fn is_cut_vertex(&self, v: Vertex) -> Result<bool> {
        self.check_vertex(v)?;
        self.require_connected(2)?;
        let rest = self.vertices().without(v);
        let start = rest.first().expect("order >= 2");
        Ok(self.component_within(&rest, start).len() != rest.len())
    }

    pub(crate) fn require_connected(&self, min_order: usize) -> Result<()> {
        if self.n < min_order {
            return Err(Error::OrderTooSmall {
                n: self.n,
                min: min_order,
            });
        }
        if !self.is_connected() {
            return Err(Error::DisconnectedInput);
        }
        Ok(())
    }

    /// Cut-vertices of the underlying undirected graph, found with a single
    /// low-link depth-first search.
    pub fn articulation_points(&self) -> VertexSet {
        const UNSEEN: usize = usize::MAX;
        let n = self.n;
        let mut disc = vec![UNSEEN; n];
        let mut low = vec![0; n];
        let mut points = self.empty_set();
        let mut clock = 0;
        // (vertex, parent, next neighbor position)
        let mut stack: Vec<(Vertex, Vertex, usize)> = Vec::new();

        for root in 0..n {
            if disc[root] != UNSEEN {
                continue;
            }
            disc[root] = clock;
            low[root] = clock;
            clock += 1;
            let mut root_children = 0;
            stack.push((root, UNSEEN, 0));

            while let Some(frame) = stack.last_mut() {
                let (v, parent, pos) = *frame;
                let degree_out = self.out_adj[v].len();
                let next = if pos < degree_out {
                    Some(self.out_adj[v][pos])
                } else {
                    self.in_adj[v].get(pos - degree_out).copied()
                };
                match next {
                    Some(w) => {
                        frame.2 += 1;
                        if disc[w] == UNSEEN {
                            disc[w] = clock;
                            low[w] = clock;
                            clock += 1;
                            if v == root {
                                root_children += 1;
                            }
                            stack.push((w, v, 0));
                        } else if w != parent {
                            low[v] = low[v].min(disc[w]);
                        }
                    }
                    None => {
                        stack.pop();
                        if parent != UNSEEN {
                            low[parent] = low[parent].min(low[v]);
                            if parent != root && low[v] >= disc[parent] {
                                points.insert(parent);
                            }
                        }
                    }
                }
            }
            if root_children > 1 {
                points.insert(root);
            }
        }
        points
    }

    /// `D[set]` relabeled densely in increasing label order, together with
    /// the map from new labels back to original labels.
    pub fn induced_subgraph(&self, set: &VertexSet) -> Result<(Digraph, Vec<Vertex>)> {
        self.check_set(set)?;
        let labels: Vec<Vertex> = set.iter().collect();
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in labels.iter().enumerate() {
            index[v] = i;
        }
        let arcs = self
            .arcs
            .iter()
            .filter(|(u, v)| set.contains(*u) && set.contains(*v))
            .map(|&(u, v)| (index[u], index[v]));
        Ok((Digraph::new(labels.len(), arcs)?, labels))
    }
}

fn union_rows(set: &VertexSet, rows: &[VertexSet]) -> VertexSet {
    let mut out = VertexSet::empty(set.universe());
    for v in set {
        out.union_with(&rows[v]);
    }
    out
}

fn topological_order(out_adj: &[Vec<Vertex>], in_adj: &[Vec<Vertex>]) -> Result<Vec<Vertex>> {
    let n = out_adj.len();
    let mut indegree: Vec<usize> = in_adj.iter().map(Vec::len).collect();
    let mut ready: BinaryHeap<Reverse<Vertex>> =
        (0..n).filter(|&v| indegree[v] == 0).map(Reverse).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(Reverse(v)) = ready.pop() {
        order.push(v);
        for &w in &out_adj[v] {
            indegree[w] -= 1;
            if indegree[w] == 0 {
                ready.push(Reverse(w));
            }
        }
    }
    if order.len() == n {
        return Ok(order);
    }
    // Every unplaced vertex keeps an unplaced in-neighbor, so walking
    // backwards n steps from any of them lands on a cycle.
    let mut v = (0..n).find(|&v| indegree[v] > 0).expect("unplaced vertex");
    for _ in 0..n {
        v = *in_adj[v]
            .iter()
            .find(|&&u| indegree[u] > 0)
            .expect("unplaced in-neighbor");
    }
    Err(Error::CycleDetected(v))
}

impl Clone for Digraph {
    fn clone(&self) -> Self {
        Digraph {
            n: self.n,
            arcs: self.arcs.clone(),
            out_adj: self.out_adj.clone(),
            in_adj: self.in_adj.clone(),
            topo: self.topo.clone(),
            closure: OnceLock::new(),
        }
    }
}

/// Digraphs compare by order and arc list (including arc order).
impl PartialEq for Digraph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.arcs == other.arcs
    }
}

impl Eq for Digraph {}

impl fmt::Debug for Digraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Digraph")
            .field("n", &self.n)
            .field("arcs", &self.arcs)
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p3() -> Digraph {
        Digraph::new(3, [(0, 1), (1, 2)]).unwrap()
    }

    // s=0, a1=1, b1=2, a2=3, b2=4, t=5
    fn g2() -> Digraph {
        Digraph::new(6, [(0, 1), (1, 2), (2, 5), (0, 3), (3, 4), (4, 5)]).unwrap()
    }

    // x1=0, y1=1, z=2, y'1=3, x'1=4
    fn d1() -> Digraph {
        Digraph::new(5, [(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap()
    }

    fn set(d: &Digraph, vs: &[Vertex]) -> VertexSet {
        d.set(vs.iter().copied()).unwrap()
    }

    #[test]
    fn build_rejects_bad_input() {
        assert!(matches!(
            Digraph::new(2, [(0, 1), (1, 0)]),
            Err(Error::CycleDetected(_))
        ));
        assert!(matches!(
            Digraph::new(2, [(0, 2)]),
            Err(Error::InvalidArc {
                reason: "endpoint out of range",
                ..
            })
        ));
        assert!(matches!(
            Digraph::new(2, [(1, 1)]),
            Err(Error::InvalidArc {
                reason: "self-loop",
                ..
            })
        ));
        assert!(matches!(
            Digraph::new(2, [(0, 1), (0, 1)]),
            Err(Error::InvalidArc {
                reason: "duplicate arc",
                ..
            })
        ));
    }

    #[test]
    fn cycle_report_names_a_cycle_vertex() {
        // 0 -> 1 -> 2 -> 3 -> 1; vertex 0 is upstream of the cycle only.
        let err = Digraph::new(4, [(0, 1), (1, 2), (2, 3), (3, 1)]).unwrap_err();
        match err {
            Error::CycleDetected(v) => assert!((1..=3).contains(&v)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn d1_has_order_five() {
        assert_eq!(d1().order(), 5);
        assert_eq!(d1().topological_order(), &[0, 1, 2, 3, 4]);
    }

    #[test]
    fn reachability_examples() {
        let p = p3();
        assert_eq!(p.reachable_from(&set(&p, &[0])), set(&p, &[0, 1, 2]));
        assert_eq!(p.reachable_from(&set(&p, &[2])), set(&p, &[2]));
        assert_eq!(p.reaching_to(&set(&p, &[2])), set(&p, &[0, 1, 2]));
        assert_eq!(p.reaching_to(&set(&p, &[0])), set(&p, &[0]));
        let d = d1();
        assert_eq!(d.reachable_from(&set(&d, &[2])), set(&d, &[2, 3, 4]));
        assert_eq!(d.reaching_to(&set(&d, &[2])), set(&d, &[0, 1, 2]));
    }

    #[test]
    fn connectivity_examples() {
        let p = p3();
        assert!(p.is_underlying_connected(&set(&p, &[0, 1])).unwrap());
        assert!(!p.is_underlying_connected(&set(&p, &[0, 2])).unwrap());
        assert_eq!(
            p.is_underlying_connected(&p.empty_set()),
            Err(Error::EmptySet)
        );
        let g = g2();
        assert!(g.is_underlying_connected(&set(&g, &[0, 1, 3])).unwrap());
    }

    #[test]
    fn sources_and_sinks_examples() {
        let (src, snk) = p3().sources_and_sinks();
        assert_eq!(src.iter().collect::<Vec<_>>(), [0]);
        assert_eq!(snk.iter().collect::<Vec<_>>(), [2]);
        let single = Digraph::new(1, []).unwrap();
        let (src, snk) = single.sources_and_sinks();
        assert_eq!(src.iter().collect::<Vec<_>>(), [0]);
        assert_eq!(snk.iter().collect::<Vec<_>>(), [0]);
    }

    #[test]
    fn cut_vertex_examples() {
        let p = p3();
        assert!(p.is_cut_vertex(1).unwrap());
        assert!(!p.is_cut_vertex(0).unwrap());
        // G_2 minus s still has a1-b1-t-b2-a2.
        assert!(!g2().is_cut_vertex(0).unwrap());
        assert_eq!(
            Digraph::new(1, []).unwrap().is_cut_vertex(0),
            Err(Error::OrderTooSmall { n: 1, min: 2 })
        );
        assert_eq!(
            Digraph::new(3, [(0, 1)]).unwrap().is_cut_vertex(0),
            Err(Error::DisconnectedInput)
        );
    }

    #[test]
    fn articulation_points_on_small_graphs() {
        assert_eq!(p3().articulation_points(), set(&p3(), &[1]));
        assert!(g2().articulation_points().is_empty());
        let d = d1();
        assert_eq!(d.articulation_points(), set(&d, &[1, 2, 3]));
    }

    #[test]
    fn traversal_fallback_matches_closure() {
        // A long path forces the traversal path above the closure limit.
        let n = CLOSURE_MAX_N + 3;
        let d = Digraph::new(n, (0..n - 1).map(|v| (v, v + 1))).unwrap();
        assert!(d.closure().is_none());
        let mid = VertexSet::singleton(n, n / 2);
        assert_eq!(d.reachable_from(&mid).len(), n - n / 2);
        assert_eq!(d.reaching_to(&mid).len(), n / 2 + 1);
        assert!(d.reaches(0, n - 1));
        assert!(!d.reaches(n - 1, 0));
    }

    #[test]
    fn induced_subgraph_relabels() {
        let g = g2();
        let (sub, labels) = g.induced_subgraph(&set(&g, &[0, 3, 4, 5])).unwrap();
        assert_eq!(labels, [0, 3, 4, 5]);
        assert_eq!(sub.arcs(), &[(0, 1), (1, 2), (2, 3)]);
    }
}
