//! Generators for the `D_t`, `G_i` and directed-path families and for
//! seeded random connected DAGs.
//!
//! Label layouts are part of the public contract:
//!
//! * `D_t` (`r = ⌈√t⌉`): `x_1..x_t`, `y_1..y_r`, `z`, `y'_1..y'_r`,
//!   `x'_1..x'_t` on consecutive labels in that order; see [`DtLabels`].
//! * `G_i`: `s, a_1, b_1, …, a_i, b_i, t`; see [`GiLabels`].
//! * Paths: `0 -> 1 -> … -> n-1`.

use std::fmt;
use std::str::FromStr;

use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;

use crate::{Digraph, Error, Result, Vertex, VertexSet};

/// `⌈√t⌉`, computed in integers.
pub fn ceil_sqrt(t: usize) -> usize {
    let mut r = (t as f64).sqrt() as usize;
    while r * r < t {
        r += 1;
    }
    while r > 0 && (r - 1) * (r - 1) >= t {
        r -= 1;
    }
    r
}

/// Label map of `D_t`. Indices of `x`, `y`, `y'`, `x'` are 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DtLabels {
    pub t: usize,
    pub r: usize,
}

impl DtLabels {
    pub fn new(t: usize) -> Self {
        DtLabels { t, r: ceil_sqrt(t) }
    }

    pub fn order(&self) -> usize {
        2 * self.t + 2 * self.r + 1
    }

    pub fn x(&self, i: usize) -> Vertex {
        assert!((1..=self.t).contains(&i));
        i - 1
    }

    pub fn y(&self, j: usize) -> Vertex {
        assert!((1..=self.r).contains(&j));
        self.t + j - 1
    }

    pub fn z(&self) -> Vertex {
        self.t + self.r
    }

    pub fn y_prime(&self, j: usize) -> Vertex {
        assert!((1..=self.r).contains(&j));
        self.t + self.r + j
    }

    pub fn x_prime(&self, i: usize) -> Vertex {
        assert!((1..=self.t).contains(&i));
        self.t + 2 * self.r + i
    }

    /// `Y ∪ {z} ∪ Y'`, the layer holding `2^{2r}` connected convex sets.
    pub fn inner_layer(&self) -> VertexSet {
        let mut set = VertexSet::empty(self.order());
        for v in self.t..=self.t + 2 * self.r {
            set.insert(v);
        }
        set
    }

    pub fn x_set(&self) -> VertexSet {
        VertexSet::from_vertices(self.order(), 0..self.t).expect("in range")
    }

    pub fn x_prime_set(&self) -> VertexSet {
        VertexSet::from_vertices(self.order(), self.x_prime(1)..self.order()).expect("in range")
    }
}

/// The counterexample digraph `D_t`: a directed path `x_1 … x_t`, a fan-out
/// from `x_t` to `y_1..y_r`, a fan-in to `z`, a fan-out from `z` to
/// `y'_1..y'_r`, a fan-in to `x'_1`, then the path `x'_1 … x'_t`.
pub fn gen_dt(t: usize) -> Result<(Digraph, DtLabels)> {
    if t == 0 {
        return Err(Error::InvalidParameter("D_t needs t >= 1".into()));
    }
    let l = DtLabels::new(t);
    let mut arcs = Vec::with_capacity(2 * (t - 1) + 4 * l.r);
    for i in 1..t {
        arcs.push((l.x(i), l.x(i + 1)));
    }
    for i in 1..t {
        arcs.push((l.x_prime(i), l.x_prime(i + 1)));
    }
    for j in 1..=l.r {
        arcs.push((l.x(t), l.y(j)));
        arcs.push((l.y(j), l.z()));
        arcs.push((l.z(), l.y_prime(j)));
        arcs.push((l.y_prime(j), l.x_prime(1)));
    }
    Ok((Digraph::new(l.order(), arcs)?, l))
}

/// Label map of `G_i`. Path indices are 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GiLabels {
    pub i: usize,
}

impl GiLabels {
    pub fn order(&self) -> usize {
        2 * self.i + 2
    }

    pub fn s(&self) -> Vertex {
        0
    }

    pub fn a(&self, j: usize) -> Vertex {
        assert!((1..=self.i).contains(&j));
        2 * j - 1
    }

    pub fn b(&self, j: usize) -> Vertex {
        assert!((1..=self.i).contains(&j));
        2 * j
    }

    pub fn t(&self) -> Vertex {
        2 * self.i + 1
    }
}

/// `G_i`: a source `s` and a sink `t` joined by `i` internally disjoint
/// paths `s -> a_j -> b_j -> t`.
pub fn gen_gi(i: usize) -> Result<(Digraph, GiLabels)> {
    if i == 0 {
        return Err(Error::InvalidParameter("G_i needs i >= 1".into()));
    }
    let l = GiLabels { i };
    let arcs = (1..=i).flat_map(|j| [(l.s(), l.a(j)), (l.a(j), l.b(j)), (l.b(j), l.t())]);
    Ok((Digraph::new(l.order(), arcs)?, l))
}

pub fn gen_path(n: usize) -> Result<Digraph> {
    if n == 0 {
        return Err(Error::InvalidParameter("path needs n >= 1".into()));
    }
    Digraph::new(n, (1..n).map(|v| (v - 1, v)))
}

/// Seeded random connected DAG.
///
/// The random stream is SplitMix64 seeded with `seed` as its initial state.
/// Draws, in order:
///
/// 1. A topological order: Fisher–Yates over `order = [0, 1, …, n-1]`, for
///    `i = n-1` down to `1` swapping `order[i]` with `order[j]`,
///    `j = next_u64() % (i + 1)`.
/// 2. For positions `a < b` in lexicographic order of `(a, b)`, the arc
///    `order[a] -> order[b]` is kept iff `(next_u64() >> 11) · 2⁻⁵³ < p`.
/// 3. If the result is disconnected, components are sorted by the position
///    of their topologically first vertex `f_0 < f_1 < …`, and arcs
///    `f_c -> f_{c+1}` are appended.
///
/// Kept arcs are listed in the order they were drawn.
pub fn gen_random_connected_dag(n: usize, p: f64, seed: u64) -> Result<Digraph> {
    if n == 0 {
        return Err(Error::InvalidParameter("random DAG needs n >= 1".into()));
    }
    if !(p > 0.0 && p <= 1.0) {
        return Err(Error::InvalidParameter(format!(
            "arc probability {p} not in (0, 1]"
        )));
    }
    let mut rng = SplitMix64::seed_from_u64(seed);
    let mut order: Vec<Vertex> = (0..n).collect();
    for i in (1..n).rev() {
        let j = (rng.next_u64() % (i as u64 + 1)) as usize;
        order.swap(i, j);
    }
    let mut arcs = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            let u = (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64);
            if u < p {
                arcs.push((order[a], order[b]));
            }
        }
    }

    let draft = Digraph::new(n, arcs.iter().copied())?;
    let mut position = vec![0; n];
    for (pos, &v) in order.iter().enumerate() {
        position[v] = pos;
    }
    let mut firsts: Vec<Vertex> = draft
        .components()
        .iter()
        .map(|c| {
            c.iter()
                .min_by_key(|&v| position[v])
                .expect("non-empty component")
        })
        .collect();
    if firsts.len() == 1 {
        return Ok(draft);
    }
    firsts.sort_by_key(|&v| position[v]);
    arcs.extend(firsts.windows(2).map(|w| (w[0], w[1])));
    Digraph::new(n, arcs)
}

/// Closed-form counts for `G_i`: `(4^i - 1, 2·3^i + 3i + 1)`, the number of
/// convex sets avoiding `s` and `t`, and the number of connected convex
/// sets.
pub fn closed_form_gi_counts(i: usize) -> Result<(u64, u64)> {
    if i == 0 {
        return Err(Error::InvalidParameter("G_i needs i >= 1".into()));
    }
    let exp = u32::try_from(i).map_err(|_| Error::Overflow("G_i closed forms"))?;
    let overflow = || Error::Overflow("G_i closed forms");
    let four = 4u64.checked_pow(exp).ok_or_else(overflow)?;
    let three = 3u64.checked_pow(exp).ok_or_else(overflow)?;
    let cc = three
        .checked_mul(2)
        .and_then(|v| v.checked_add(3 * i as u64 + 1))
        .ok_or_else(overflow)?;
    Ok((four - 1, cc))
}

/// `n(n+1)/2` connected convex sets, `n - k + 1` of size `k`.
pub fn closed_form_path_counts(n: usize) -> Result<(u64, Vec<u64>)> {
    if n == 0 {
        return Err(Error::InvalidParameter("path needs n >= 1".into()));
    }
    let n64 = n as u64;
    Ok((
        n64 * (n64 + 1) / 2,
        (1..=n64).map(|k| n64 - k + 1).collect(),
    ))
}

/// Parameters selecting a generated digraph.
///
/// Textual form: `dt:T`, `gi:I`, `path:N`, `random:N:P:SEED`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FamilySpec {
    Dt { t: usize },
    Gi { i: usize },
    Path { n: usize },
    Random { n: usize, p: f64, seed: u64 },
}

impl FamilySpec {
    pub fn generate(&self) -> Result<Digraph> {
        match *self {
            FamilySpec::Dt { t } => gen_dt(t).map(|(d, _)| d),
            FamilySpec::Gi { i } => gen_gi(i).map(|(d, _)| d),
            FamilySpec::Path { n } => gen_path(n),
            FamilySpec::Random { n, p, seed } => gen_random_connected_dag(n, p, seed),
        }
    }

    /// Order of the generated digraph.
    pub fn order(&self) -> usize {
        match *self {
            FamilySpec::Dt { t } => DtLabels::new(t).order(),
            FamilySpec::Gi { i } => GiLabels { i }.order(),
            FamilySpec::Path { n } | FamilySpec::Random { n, .. } => n,
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::Dt { t } => write!(f, "dt:{t}"),
            FamilySpec::Gi { i } => write!(f, "gi:{i}"),
            FamilySpec::Path { n } => write!(f, "path:{n}"),
            FamilySpec::Random { n, p, seed } => write!(f, "random:{n}:{p}:{seed}"),
        }
    }
}

impl FromStr for FamilySpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidParameter(format!("bad family spec `{s}`"));
        let parts: Vec<&str> = s.split(':').collect();
        let int = |x: &str| x.parse::<usize>().map_err(|_| bad());
        match parts[..] {
            ["dt", t] => Ok(FamilySpec::Dt { t: int(t)? }),
            ["gi", i] => Ok(FamilySpec::Gi { i: int(i)? }),
            ["path", n] => Ok(FamilySpec::Path { n: int(n)? }),
            ["random", n, p, seed] => Ok(FamilySpec::Random {
                n: int(n)?,
                p: p.parse().map_err(|_| bad())?,
                seed: seed.parse().map_err(|_| bad())?,
            }),
            _ => Err(bad()),
        }
    }
}
