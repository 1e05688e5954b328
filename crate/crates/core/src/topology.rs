//! The split-star network `S_n^2` as an implicit graph.
//!
//! Vertices are the permutations of `[1..n]`. Three generator rules act on
//! positions `1`, `2` and `i`:
//!
//! * `Swap12` exchanges the first two symbols;
//! * `s_i^-` writes `(x2, xi, x1)` into positions `(1, 2, i)`;
//! * `s_i^+` writes `(xi, x1, x2)` into positions `(1, 2, i)`.
//!
//! `s_i^+` and `s_i^-` are mutually inverse, so every vertex has degree
//! `2n - 3`. Only `s_n^±` changes the last symbol, which splits the graph into
//! `n` subnetworks `S_n^{2:i}` of `(n-1)!` vertices each.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::permutation::{factorial, PermError, Permutation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TopologyError {
    #[error("generator index {index} outside [3, {n}]")]
    BadIndex { index: usize, n: usize },
    #[error("{0} and {1} are not adjacent")]
    NotAdjacent(Permutation, Permutation),
    #[error("edge ({0}, {1}) does not lie inside a single subnetwork")]
    NotIntraSubnetwork(Permutation, Permutation),
    #[error("subnetwork label {label} outside [1, {n}]")]
    BadLabel { label: u8, n: usize },
    #[error("cluster labels must be distinct and non-empty")]
    BadCluster,
    #[error(transparent)]
    Perm(#[from] PermError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

/// Classification of an adjacency.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EdgeKind {
    Swap12,
    SMinus(u8),
    SPlus(u8),
}

impl EdgeKind {
    /// The kind of the same edge seen from the other end.
    pub fn reversed(self) -> Self {
        match self {
            EdgeKind::Swap12 => EdgeKind::Swap12,
            EdgeKind::SMinus(i) => EdgeKind::SPlus(i),
            EdgeKind::SPlus(i) => EdgeKind::SMinus(i),
        }
    }

    /// Generator index, `None` for `Swap12`.
    pub fn index(self) -> Option<u8> {
        match self {
            EdgeKind::Swap12 => None,
            EdgeKind::SMinus(i) | EdgeKind::SPlus(i) => Some(i),
        }
    }
}

/// Edge-list spelling: `12`, `s<i>+` or `s<i>-`.
impl fmt::Display for EdgeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EdgeKind::Swap12 => f.write_str("12"),
            EdgeKind::SMinus(i) => write!(f, "s{i}-"),
            EdgeKind::SPlus(i) => write!(f, "s{i}+"),
        }
    }
}

#[inline]
pub fn apply_swap12(u: &Permutation) -> Permutation {
    let mut v = *u;
    v.raw_mut().swap(0, 1);
    v
}

#[inline]
pub(crate) fn s_plus(u: &Permutation, i: usize) -> Permutation {
    let mut v = *u;
    let x = u.symbols();
    let (x1, x2, xi) = (x[0], x[1], x[i - 1]);
    let r = v.raw_mut();
    r[0] = xi;
    r[1] = x1;
    r[i - 1] = x2;
    v
}

#[inline]
pub(crate) fn s_minus(u: &Permutation, i: usize) -> Permutation {
    let mut v = *u;
    let x = u.symbols();
    let (x1, x2, xi) = (x[0], x[1], x[i - 1]);
    let r = v.raw_mut();
    r[0] = x2;
    r[1] = xi;
    r[i - 1] = x1;
    v
}

#[inline]
pub(crate) fn step(u: &Permutation, kind: EdgeKind) -> Permutation {
    match kind {
        EdgeKind::Swap12 => apply_swap12(u),
        EdgeKind::SMinus(i) => s_minus(u, i as usize),
        EdgeKind::SPlus(i) => s_plus(u, i as usize),
    }
}

/// Applies `s_i^+` or `s_i^-`.
pub fn apply_s(u: &Permutation, i: usize, sign: Sign) -> Result<Permutation, TopologyError> {
    if i < 3 || i > u.n() {
        return Err(TopologyError::BadIndex { index: i, n: u.n() });
    }
    Ok(match sign {
        Sign::Plus => s_plus(u, i),
        Sign::Minus => s_minus(u, i),
    })
}

/// Generator kinds in neighbor order: `Swap12`, then `i` ascending with
/// minus before plus.
pub(crate) fn kinds(n: usize) -> impl Iterator<Item = EdgeKind> {
    std::iter::once(EdgeKind::Swap12).chain((3..=n as u8).flat_map(|i| [EdgeKind::SMinus(i), EdgeKind::SPlus(i)]))
}

/// All `2n - 3` neighbors of `u` in the deterministic order of [`kinds`].
pub fn neighbors(u: &Permutation) -> Vec<(Permutation, EdgeKind)> {
    kinds(u.n()).map(|k| (step(u, k), k)).collect()
}

/// The generator taking `u` to `v`.
pub fn edge_kind(u: &Permutation, v: &Permutation) -> Result<EdgeKind, TopologyError> {
    if u.n() == v.n() && u != v {
        if let Some(k) = kinds(u.n()).find(|&k| step(u, k) == *v) {
            return Ok(k);
        }
    }
    Err(TopologyError::NotAdjacent(*u, *v))
}

#[inline]
pub fn adjacent(u: &Permutation, v: &Permutation) -> bool {
    edge_kind(u, v).is_ok()
}

/// Label of the fixed last symbol: `S_n^{2:i}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SubnetId(pub u8);

impl fmt::Display for SubnetId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "S^{{2:{}}}", self.0)
    }
}

pub fn subnetwork_of(u: &Permutation) -> SubnetId {
    SubnetId(u.last())
}

/// An edge whose ends were checked to be adjacent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Edge {
    a: Permutation,
    b: Permutation,
}

impl Edge {
    pub fn new(a: Permutation, b: Permutation) -> Result<Self, TopologyError> {
        edge_kind(&a, &b)?;
        Ok(Edge { a, b })
    }

    pub(crate) fn new_unchecked(a: Permutation, b: Permutation) -> Self {
        debug_assert!(adjacent(&a, &b), "{a} {b}");
        Edge { a, b }
    }

    pub fn a(&self) -> Permutation {
        self.a
    }

    pub fn b(&self) -> Permutation {
        self.b
    }

    pub fn ends(&self) -> (Permutation, Permutation) {
        (self.a, self.b)
    }

    pub fn kind(&self) -> EdgeKind {
        edge_kind(&self.a, &self.b).expect("edge ends are adjacent")
    }

    pub fn reversed(&self) -> Self {
        Edge { a: self.b, b: self.a }
    }

    /// Same unordered pair.
    pub fn same_as(&self, other: &Edge) -> bool {
        (self.a == other.a && self.b == other.b) || (self.a == other.b && self.b == other.a)
    }

    pub fn touches(&self, x: &Permutation) -> bool {
        self.a == *x || self.b == *x
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.a, self.b)
    }
}

/// A coupled pair-edge `(u', v')` of an intra-subnetwork edge `(u, v)`:
/// `u' = u s_n^±`, `v' = v s_n^∓`, both in `subnet`, closing the 4-cycle
/// `<u, u', v', v>`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CoupledEdge {
    pub edge: Edge,
    pub subnet: SubnetId,
}

/// Coupled pair-edges taken at level `m`: `e` must stay inside one child
/// block of the top `m` positions, and the pair is built with `s_m^±`.
pub(crate) fn coupled_at(a: &Permutation, b: &Permutation, m: usize) -> Vec<CoupledEdge> {
    let kind = match edge_kind(a, b) {
        Ok(k) => k,
        Err(_) => return Vec::new(),
    };
    let build = |ua: Permutation, vb: Permutation| CoupledEdge {
        edge: Edge::new_unchecked(ua, vb),
        subnet: SubnetId(ua.at(m)),
    };
    match kind {
        EdgeKind::Swap12 => vec![
            // into the subnetwork labelled by a's first symbol
            build(s_minus(a, m), s_plus(b, m)),
            // into the subnetwork labelled by a's second symbol
            build(s_plus(a, m), s_minus(b, m)),
        ],
        EdgeKind::SPlus(k) if (k as usize) < m => vec![build(s_minus(a, m), s_plus(b, m))],
        EdgeKind::SMinus(k) if (k as usize) < m => vec![build(s_plus(a, m), s_minus(b, m))],
        _ => Vec::new(),
    }
}

/// Coupled pair-edges of `e`. A `Swap12` edge has two, the one in
/// `S_n^{2:u_1}` first; an `s_k^+` edge has one in `S_n^{2:u_1}`; an `s_k^-`
/// edge has one in `S_n^{2:u_2}`.
pub fn coupled_pair_edge(e: &Edge) -> Result<Vec<CoupledEdge>, TopologyError> {
    let n = e.a.n();
    if e.a.last() != e.b.last() {
        return Err(TopologyError::NotIntraSubnetwork(e.a, e.b));
    }
    let out = coupled_at(&e.a, &e.b, n);
    debug_assert!(!out.is_empty());
    Ok(out)
}

/// Replaces every symbol `s` of `u` by `sigma(s)`. This is a graph
/// automorphism that preserves edge kinds.
pub fn relabel(sigma: &Permutation, u: &Permutation) -> Result<Permutation, TopologyError> {
    Ok(sigma.compose(u)?)
}

/// An ordered set of distinct subnetwork labels: `S_{n,k}^2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cluster {
    n: usize,
    labels: Vec<u8>,
}

impl Cluster {
    pub fn new(n: usize, labels: Vec<u8>) -> Result<Self, TopologyError> {
        if labels.is_empty() {
            return Err(TopologyError::BadCluster);
        }
        let mut seen = 0u32;
        for &l in &labels {
            if l == 0 || l as usize > n {
                return Err(TopologyError::BadLabel { label: l, n });
            }
            if seen & (1 << l) != 0 {
                return Err(TopologyError::BadCluster);
            }
            seen |= 1 << l;
        }
        Ok(Cluster { n, labels })
    }

    pub fn whole(n: usize) -> Self {
        Cluster {
            n,
            labels: (1..=n as u8).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn labels(&self) -> &[u8] {
        &self.labels
    }

    pub fn mask(&self) -> u32 {
        self.labels.iter().fold(0, |m, &l| m | 1 << l)
    }

    pub fn contains(&self, u: &Permutation) -> bool {
        u.n() == self.n && self.labels.contains(&u.last())
    }

    pub fn len(&self) -> usize {
        self.labels.len() * factorial(self.n - 1) as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// Vertices of the cluster, subnetwork by subnetwork in label order, each
/// subnetwork in lexicographic order.
pub fn vertices_of(cluster: &Cluster) -> impl Iterator<Item = Permutation> + '_ {
    let n = cluster.n;
    cluster.labels.iter().flat_map(move |&l| vertices_with_suffix(n, &[l]))
}

/// All permutations of dimension `n` whose trailing symbols equal `suffix`,
/// in lexicographic order.
pub(crate) fn vertices_with_suffix(n: usize, suffix: &[u8]) -> Vec<Permutation> {
    let m = n - suffix.len();
    let free: Vec<u8> = (1..=n as u8).filter(|x| !suffix.contains(x)).collect();
    let mut out = Vec::with_capacity(factorial(m) as usize);
    let mut buf = vec![0u8; n];
    buf[m..].copy_from_slice(suffix);
    for r in 0..factorial(m) {
        let q = Permutation::unrank_raw(r, m.max(1));
        for j in 0..m {
            buf[j] = free[q.symbols()[j] as usize - 1];
        }
        out.push(Permutation::from_raw(&buf));
    }
    out
}

/// Projection of a subnetwork onto `S_{n-1}^2`: drop the last symbol and
/// relabel the remaining ones order-preservingly onto `[1..n-1]`.
pub(crate) fn project(u: &Permutation) -> Permutation {
    let n = u.n();
    let label = u.last();
    let mut out = [0u8; 16];
    for (slot, &x) in out.iter_mut().zip(&u.symbols()[..n - 1]) {
        *slot = if x > label { x - 1 } else { x };
    }
    Permutation::from_raw(&out[..n - 1])
}

/// Inverse of [`project`] for subnetwork `label` of dimension `n`.
pub(crate) fn lift(q: &Permutation, label: u8) -> Permutation {
    let n = q.n() + 1;
    let mut out = [0u8; 16];
    for (slot, &x) in out.iter_mut().zip(q.symbols()) {
        *slot = if x >= label { x + 1 } else { x };
    }
    out[n - 1] = label;
    Permutation::from_raw(&out[..n])
}

/// Public isomorphism `S_n^{2:i} -> S_{n-1}^2`.
pub fn subnet_isomorphism(u: &Permutation) -> Permutation {
    project(u)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn generator_examples() {
        assert_eq!(apply_swap12(&p("1234")), p("2134"));
        assert_eq!(apply_swap12(&p("2134")), p("1234"));
        assert_eq!(apply_swap12(&p("4321")), p("3421"));
        assert_eq!(apply_s(&p("1234"), 3, Sign::Plus).unwrap(), p("3124"));
        assert_eq!(apply_s(&p("1234"), 4, Sign::Minus).unwrap(), p("2431"));
        assert_eq!(
            apply_s(&p("1234"), 2, Sign::Plus),
            Err(TopologyError::BadIndex { index: 2, n: 4 })
        );
        assert!(apply_s(&p("1234"), 5, Sign::Plus).is_err());
        let u = p("31524");
        for i in 3..=5 {
            let up = apply_s(&u, i, Sign::Plus).unwrap();
            assert_eq!(apply_s(&up, i, Sign::Minus).unwrap(), u);
        }
    }

    #[test]
    fn neighbor_listing() {
        let got = neighbors(&p("1234"));
        let want = vec![
            (p("2134"), EdgeKind::Swap12),
            (p("2314"), EdgeKind::SMinus(3)),
            (p("3124"), EdgeKind::SPlus(3)),
            (p("2431"), EdgeKind::SMinus(4)),
            (p("4132"), EdgeKind::SPlus(4)),
        ];
        assert_eq!(got, want);
        assert_eq!(neighbors(&p("231")).len(), 3);
        assert_eq!(neighbors(&p("7654321")).len(), 11);
    }

    #[test]
    fn edge_kind_examples() {
        assert_eq!(edge_kind(&p("1234"), &p("2134")), Ok(EdgeKind::Swap12));
        assert_eq!(edge_kind(&p("1234"), &p("4132")), Ok(EdgeKind::SPlus(4)));
        assert!(matches!(
            edge_kind(&p("1234"), &p("1243")),
            Err(TopologyError::NotAdjacent(..))
        ));
        assert!(edge_kind(&p("1234"), &p("1234")).is_err());
    }

    #[test]
    fn subnetwork_examples() {
        assert_eq!(subnetwork_of(&p("1234")), SubnetId(4));
        assert_eq!(subnetwork_of(&p("4132")), SubnetId(2));
        assert_eq!(subnetwork_of(&p("4321")), SubnetId(1));
    }

    #[test]
    fn coupled_pair_examples() {
        let swap = Edge::new(p("1234"), p("2134")).unwrap();
        let opts = coupled_pair_edge(&swap).unwrap();
        assert_eq!(opts.len(), 2);
        assert_eq!(opts[0].subnet, SubnetId(1));
        assert_eq!(opts[0].edge.ends(), (p("2431"), p("4231")));
        assert_eq!(opts[1].subnet, SubnetId(2));
        assert_eq!(opts[1].edge.ends(), (p("4132"), p("1432")));

        let minus = Edge::new(p("1234"), p("2314")).unwrap();
        let opts = coupled_pair_edge(&minus).unwrap();
        assert_eq!(opts.len(), 1);
        assert_eq!(opts[0].edge.ends(), (p("4132"), p("3412")));
        assert_eq!(opts[0].subnet, SubnetId(2));
        assert_eq!(edge_kind(&p("4132"), &p("3412")), Ok(EdgeKind::SPlus(3)));

        let plus = Edge::new(p("1234"), p("3124")).unwrap();
        let opts = coupled_pair_edge(&plus).unwrap();
        assert_eq!(opts[0].edge.ends(), (p("2431"), p("4321")));
        assert_eq!(opts[0].subnet, SubnetId(1));
        assert_eq!(edge_kind(&p("2431"), &p("4321")), Ok(EdgeKind::SMinus(3)));

        let cross = Edge::new(p("1234"), p("4132")).unwrap();
        assert!(matches!(
            coupled_pair_edge(&cross),
            Err(TopologyError::NotIntraSubnetwork(..))
        ));
    }

    #[test]
    fn relabel_examples() {
        let id = Permutation::identity(4);
        let u = p("2413");
        assert_eq!(relabel(&id, &u).unwrap(), u);
        let sigma = p("3214");
        let a = relabel(&sigma, &p("1234")).unwrap();
        let b = relabel(&sigma, &p("2134")).unwrap();
        assert_eq!((a, b), (p("3214"), p("2314")));
        assert_eq!(edge_kind(&a, &b), Ok(EdgeKind::Swap12));
        assert!(relabel(&sigma, &p("12345")).is_err());
    }

    #[test]
    fn cluster_vertices() {
        let c = Cluster::new(4, vec![4]).unwrap();
        let vs: Vec<_> = vertices_of(&c).collect();
        assert_eq!(vs.len(), 6);
        assert!(vs.iter().all(|v| v.last() == 4));
        assert_eq!(vertices_of(&Cluster::new(4, vec![1, 2]).unwrap()).count(), 12);
        let all: std::collections::HashSet<_> = vertices_of(&Cluster::whole(5)).collect();
        assert_eq!(all.len(), 120);
        assert!(Cluster::new(4, vec![1, 1]).is_err());
        assert!(Cluster::new(4, vec![5]).is_err());
        assert!(Cluster::new(4, vec![]).is_err());
    }

    #[test]
    fn projection_round_trip() {
        for u in Permutation::all(5) {
            let q = project(&u);
            assert_eq!(lift(&q, u.last()), u);
        }
    }
}
