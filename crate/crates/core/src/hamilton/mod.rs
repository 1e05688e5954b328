//! Hamiltonian paths and cycles used as building blocks.

pub(crate) mod engine;
pub(crate) mod search;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::permutation::Permutation;
use crate::topology::{adjacent, apply_swap12, edge_kind, s_plus, Cluster, Edge, EdgeKind, SubnetId};

pub(crate) use engine::Region;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HamiltonError {
    #[error("{0} is outside the scope")]
    OutOfScope(Permutation),
    #[error("path endpoints coincide")]
    SameEndpoints,
    #[error("{0} and {1} are not adjacent")]
    NotAdjacent(Permutation, Permutation),
    #[error("an i-edge needs effective dimension at least 4")]
    DimensionTooSmall,
    #[error("symbol {0} outside [1, n]")]
    BadSymbol(u8),
    #[error("{1} is neither {0}∘(1,2) nor {0}s_3^+")]
    BadPair(Permutation, Permutation),
    #[error("edge touches a removed vertex")]
    EdgeTouchesRemoved,
    #[error("edge ({0}, {1}) does not lie inside a single subnetwork")]
    NotIntraSubnetwork(Permutation, Permutation),
    #[error("dimension {0} unsupported here")]
    BadDimension(usize),
    #[error("no construction found: {0}")]
    NotFound(&'static str),
}

/// A simple path.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Path(Vec<Permutation>);

/// A simple cycle, listed without repeating the first vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Cycle(Vec<Permutation>);

fn first_repeat(vs: &[Permutation]) -> Option<Permutation> {
    let mut seen = std::collections::HashSet::with_capacity(vs.len());
    vs.iter().copied().find(|x| !seen.insert(*x))
}

impl Path {
    pub fn new(vertices: Vec<Permutation>) -> Result<Self, HamiltonError> {
        if vertices.is_empty() {
            return Err(HamiltonError::NotFound("empty path"));
        }
        if let Some(x) = first_repeat(&vertices) {
            return Err(HamiltonError::OutOfScope(x));
        }
        for w in vertices.windows(2) {
            if !adjacent(&w[0], &w[1]) {
                return Err(HamiltonError::NotAdjacent(w[0], w[1]));
            }
        }
        Ok(Path(vertices))
    }

    pub(crate) fn from_vec(vertices: Vec<Permutation>) -> Self {
        Path(vertices)
    }

    pub fn vertices(&self) -> &[Permutation] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn first(&self) -> Permutation {
        self.0[0]
    }

    pub fn last(&self) -> Permutation {
        *self.0.last().unwrap()
    }
}

impl Cycle {
    /// Checks length, simplicity and adjacency (including the closing edge).
    pub fn new(vertices: Vec<Permutation>) -> Result<Self, HamiltonError> {
        if vertices.len() < 3 {
            return Err(HamiltonError::NotFound("cycle shorter than 3"));
        }
        let c = Cycle(vertices);
        if let Some(x) = first_repeat(&c.0) {
            return Err(HamiltonError::OutOfScope(x));
        }
        for (a, b) in c.edges() {
            if !adjacent(&a, &b) {
                return Err(HamiltonError::NotAdjacent(a, b));
            }
        }
        Ok(c)
    }

    pub(crate) fn from_vec(vertices: Vec<Permutation>) -> Self {
        Cycle(vertices)
    }

    pub fn vertices(&self) -> &[Permutation] {
        &self.0
    }

    pub fn into_vertices(self) -> Vec<Permutation> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, x: &Permutation) -> bool {
        self.0.contains(x)
    }

    /// Consecutive pairs, closing edge last.
    pub fn edges(&self) -> impl Iterator<Item = (Permutation, Permutation)> + '_ {
        let k = self.0.len();
        (0..k).map(move |j| (self.0[j], self.0[(j + 1) % k]))
    }

    pub fn contains_edge(&self, a: &Permutation, b: &Permutation) -> bool {
        self.edges().any(|(x, y)| (x == *a && y == *b) || (x == *b && y == *a))
    }

    /// The same cycle relabeled symbol-wise by `sigma`.
    pub fn relabeled(&self, sigma: &Permutation) -> Cycle {
        Cycle(self.0.iter().map(|x| sigma.compose_unchecked(x)).collect())
    }
}

impl fmt::Display for Cycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("<")?;
        for x in &self.0 {
            write!(f, "{x}, ")?;
        }
        match self.0.first() {
            Some(x) => write!(f, "{x}>"),
            None => f.write_str(">"),
        }
    }
}

/// The induced subgraph a constructor works in.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Scope {
    WholeGraph(usize),
    Subnet(usize, SubnetId),
    Cluster(Cluster),
}

impl Scope {
    pub(crate) fn region(&self) -> Region {
        match self {
            Scope::WholeGraph(n) => Region::whole(*n),
            Scope::Subnet(n, SubnetId(i)) => Region::subnet(*n, *i),
            Scope::Cluster(c) => Region::cluster(c.n(), c.labels()),
        }
    }

    pub fn n(&self) -> usize {
        match self {
            Scope::WholeGraph(n) | Scope::Subnet(n, _) => *n,
            Scope::Cluster(c) => c.n(),
        }
    }

    /// Dimension of the split-star network the scope is isomorphic to, or
    /// the ambient dimension for clusters.
    pub fn effective_dim(&self) -> usize {
        match self {
            Scope::WholeGraph(n) => *n,
            Scope::Subnet(n, _) => n - 1,
            Scope::Cluster(c) => c.n(),
        }
    }

    pub fn contains(&self, x: &Permutation) -> bool {
        self.region().contains(x)
    }

    /// Vertices in lexicographic order.
    pub fn vertices(&self) -> Vec<Permutation> {
        self.region().vertices()
    }

    fn check(&self, x: &Permutation) -> Result<(), HamiltonError> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(HamiltonError::OutOfScope(*x))
        }
    }
}

/// Hamiltonian path of the scope from `a` to `b`.
pub fn ham_path(scope: &Scope, a: &Permutation, b: &Permutation) -> Result<Path, HamiltonError> {
    if a == b {
        return Err(HamiltonError::SameEndpoints);
    }
    scope.check(a)?;
    scope.check(b)?;
    engine::ham_path(&scope.region(), *a, *b, &[], None)
        .map(Path::from_vec)
        .ok_or(HamiltonError::NotFound("Hamiltonian path"))
}

/// Hamiltonian cycle of the scope containing `e`.
pub fn ham_cycle_through_edge(scope: &Scope, e: &Edge) -> Result<Cycle, HamiltonError> {
    let (x, y) = e.ends();
    scope.check(&x)?;
    scope.check(&y)?;
    engine::cycle_through(&scope.region(), x, y, &[])
        .map(Cycle::from_vec)
        .ok_or(HamiltonError::NotFound("Hamiltonian cycle through edge"))
}

/// Hamiltonian cycle of the scope minus `u`.
pub fn ham_cycle_minus_vertex(scope: &Scope, u: &Permutation) -> Result<Cycle, HamiltonError> {
    scope.check(u)?;
    engine::cycle_avoiding(&scope.region(), &[*u])
        .map(Cycle::from_vec)
        .ok_or(HamiltonError::NotFound("cycle avoiding a vertex"))
}

/// Hamiltonian cycle of the scope minus both ends of the edge `(u, v)`.
pub fn ham_cycle_minus_edge_pair(scope: &Scope, u: &Permutation, v: &Permutation) -> Result<Cycle, HamiltonError> {
    scope.check(u)?;
    scope.check(v)?;
    let kind = edge_kind(u, v).map_err(|_| HamiltonError::NotAdjacent(*u, *v))?;
    if kind != EdgeKind::Swap12 && scope.effective_dim() < 4 {
        return Err(HamiltonError::DimensionTooSmall);
    }
    engine::cycle_avoiding(&scope.region(), &[*u, *v])
        .map(Cycle::from_vec)
        .ok_or(HamiltonError::NotFound("cycle avoiding an edge"))
}

/// Two prescribed edges `(w, w s_n^+)` with `w` starting with `q`, each on
/// a Hamiltonian cycle of `S_n^2` that also contains `e`.
#[derive(Debug, Clone)]
pub struct TwoEdgeCycles {
    pub edges: [Edge; 2],
    pub cycles: [Cycle; 2],
}

pub fn ham_cycle_two_edges(n: usize, e: &Edge, q: u8) -> Result<TwoEdgeCycles, HamiltonError> {
    if n < 4 || e.a().n() != n {
        return Err(HamiltonError::BadDimension(n));
    }
    if q == 0 || q as usize > n {
        return Err(HamiltonError::BadSymbol(q));
    }
    let region = Region::whole(n);
    let (u, v) = e.ends();
    let mut found: Vec<(Edge, Cycle)> = Vec::with_capacity(2);
    for w in region.vertices() {
        if w.at(1) != q {
            continue;
        }
        let z = s_plus(&w, n);
        if [w, z].iter().any(|x| *x == u || *x == v) {
            continue;
        }
        if let Some(p) = engine::ham_path(&region, z, w, &[], Some((u, v))) {
            found.push((Edge::new_unchecked(w, z), Cycle::from_vec(p)));
            if found.len() == 2 {
                break;
            }
        }
    }
    if found.len() < 2 {
        return Err(HamiltonError::NotFound("two prescribed edges"));
    }
    let (e2, c2) = found.pop().unwrap();
    let (e1, c1) = found.pop().unwrap();
    Ok(TwoEdgeCycles {
        edges: [e1, e2],
        cycles: [c1, c2],
    })
}

/// Hamiltonian cycle of the cluster containing the intra-subnetwork edge
/// `e`.
pub fn cluster_ham_cycle_through_edge(cluster: &Cluster, e: &Edge) -> Result<Cycle, HamiltonError> {
    let (x, y) = e.ends();
    if x.last() != y.last() {
        return Err(HamiltonError::NotIntraSubnetwork(x, y));
    }
    if !cluster.contains(&x) {
        return Err(HamiltonError::OutOfScope(x));
    }
    engine::cycle_through(&Region::cluster(cluster.n(), cluster.labels()), x, y, &[])
        .map(Cycle::from_vec)
        .ok_or(HamiltonError::NotFound("cluster cycle"))
}

/// Whether `v` is one of the two partners `u∘(1,2)`, `u s_3^+` of `u`.
pub fn is_removable_pair(u: &Permutation, v: &Permutation) -> bool {
    u.n() == v.n() && (*v == apply_swap12(u) || *v == s_plus(u, 3))
}

/// Hamiltonian cycle of `S_n^2 - {u, v}` containing `e`, for
/// `v ∈ {u∘(1,2), u s_3^+}`.
pub fn ham_cycle_minus_pair_through_edge(
    n: usize,
    u: &Permutation,
    v: &Permutation,
    e: &Edge,
) -> Result<Cycle, HamiltonError> {
    if n < 4 || u.n() != n {
        return Err(HamiltonError::BadDimension(n));
    }
    if !is_removable_pair(u, v) {
        return Err(HamiltonError::BadPair(*u, *v));
    }
    if e.touches(u) || e.touches(v) {
        return Err(HamiltonError::EdgeTouchesRemoved);
    }
    let (x, y) = e.ends();
    engine::cycle_through(&Region::whole(n), x, y, &[*u, *v])
        .map(Cycle::from_vec)
        .ok_or(HamiltonError::NotFound("cycle avoiding a pair"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::topology::vertices_of;
    use std::collections::HashSet;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn assert_spans(c: &Cycle, scope: &Scope, removed: &[Permutation]) {
        let c2 = Cycle::new(c.vertices().to_vec()).expect("valid cycle");
        let got: HashSet<_> = c2.vertices().iter().copied().collect();
        let want: HashSet<_> = scope.vertices().into_iter().filter(|x| !removed.contains(x)).collect();
        assert_eq!(got, want);
    }

    #[test]
    fn path_examples() {
        let s3 = Scope::WholeGraph(3);
        let path = ham_path(&s3, &p("123"), &p("213")).unwrap();
        assert_eq!(path.len(), 6);
        assert_eq!((path.first(), path.last()), (p("123"), p("213")));
        Path::new(path.vertices().to_vec()).unwrap();

        let sub = Scope::Subnet(5, SubnetId(5));
        let path = ham_path(&sub, &p("12345"), &p("21345")).unwrap();
        assert_eq!(path.len(), 24);
        assert!(path.vertices().iter().all(|x| x.last() == 5));
        Path::new(path.vertices().to_vec()).unwrap();

        assert_eq!(ham_path(&s3, &p("123"), &p("123")), Err(HamiltonError::SameEndpoints));
    }

    #[test]
    fn cycle_through_edge_examples() {
        let e = Edge::new(p("1234"), p("2134")).unwrap();
        let c = ham_cycle_through_edge(&Scope::WholeGraph(4), &e).unwrap();
        assert_eq!(c.len(), 24);
        assert!(c.contains_edge(&p("1234"), &p("2134")));
        assert_spans(&c, &Scope::WholeGraph(4), &[]);

        let sub = Scope::Subnet(4, SubnetId(4));
        let e = Edge::new(p("1234"), p("3124")).unwrap();
        let c = ham_cycle_through_edge(&sub, &e).unwrap();
        assert_eq!(c.len(), 6);
        assert!(c.contains_edge(&p("1234"), &p("3124")));
        assert_spans(&c, &sub, &[]);

        assert!(Edge::new(p("1234"), p("1243")).is_err());
    }

    #[test]
    fn minus_vertex_examples() {
        let c = ham_cycle_minus_vertex(&Scope::WholeGraph(4), &p("1234")).unwrap();
        assert_eq!(c.len(), 23);
        assert_spans(&c, &Scope::WholeGraph(4), &[p("1234")]);
        let c = ham_cycle_minus_vertex(&Scope::WholeGraph(3), &p("123")).unwrap();
        assert_eq!(c.len(), 5);
        let sub = Scope::Subnet(5, SubnetId(1));
        let c = ham_cycle_minus_vertex(&sub, &p("23451")).unwrap();
        assert_eq!(c.len(), 23);
        assert_spans(&c, &sub, &[p("23451")]);
    }

    #[test]
    fn minus_edge_pair_examples() {
        let w = Scope::WholeGraph(4);
        let c = ham_cycle_minus_edge_pair(&w, &p("1234"), &p("2134")).unwrap();
        assert_eq!(c.len(), 22);
        assert_spans(&c, &w, &[p("1234"), p("2134")]);
        let c = ham_cycle_minus_edge_pair(&w, &p("1234"), &p("2431")).unwrap();
        assert_eq!(c.len(), 22);
        assert_eq!(
            ham_cycle_minus_edge_pair(&Scope::WholeGraph(3), &p("123"), &p("312")),
            Err(HamiltonError::DimensionTooSmall)
        );
    }

    #[test]
    fn two_edge_examples() {
        let check = |n: usize, e: Edge, q: u8| {
            let out = ham_cycle_two_edges(n, &e, q).unwrap();
            assert_ne!(out.edges[0], out.edges[1]);
            for k in 0..2 {
                let (w, z) = out.edges[k].ends();
                assert_eq!(w.at(1), q);
                assert_eq!(z, s_plus(&w, n));
                let c = &out.cycles[k];
                assert!(c.contains_edge(&e.a(), &e.b()));
                assert!(c.contains_edge(&w, &z));
                assert_spans(c, &Scope::WholeGraph(n), &[]);
            }
        };
        check(4, Edge::new(p("1234"), p("2134")).unwrap(), 3);
        check(5, Edge::new(p("12345"), p("21345")).unwrap(), 5);
        check(4, Edge::new(p("1234"), p("4132")).unwrap(), 1);
        assert!(matches!(
            ham_cycle_two_edges(4, &Edge::new(p("1234"), p("2134")).unwrap(), 5),
            Err(HamiltonError::BadSymbol(5))
        ));
    }

    #[test]
    fn cluster_examples() {
        let e = Edge::new(p("23451"), p("32451")).unwrap();
        for labels in [vec![1], vec![1, 2, 3], vec![1, 2, 3, 4, 5]] {
            let cl = Cluster::new(5, labels.clone()).unwrap();
            let c = cluster_ham_cycle_through_edge(&cl, &e).unwrap();
            assert_eq!(c.len(), 24 * labels.len());
            assert!(c.contains_edge(&e.a(), &e.b()));
            let want: HashSet<_> = vertices_of(&cl).collect();
            let got: HashSet<_> = c.vertices().iter().copied().collect();
            assert_eq!(got, want);
        }
    }

    #[test]
    fn minus_pair_examples() {
        let u = p("54321");
        let v = p("45321");
        let e = Edge::new(p("12345"), p("21345")).unwrap();
        let c = ham_cycle_minus_pair_through_edge(5, &u, &v, &e).unwrap();
        assert_eq!(c.len(), 118);
        assert!(c.contains_edge(&e.a(), &e.b()));
        assert_spans(&c, &Scope::WholeGraph(5), &[u, v]);
        let bad = s_plus(&p("4321"), 4);
        assert!(matches!(
            ham_cycle_minus_pair_through_edge(4, &p("4321"), &bad, &e),
            Err(HamiltonError::BadDimension(_)) | Err(HamiltonError::BadPair(..))
        ));
        let e4 = Edge::new(p("1234"), p("2134")).unwrap();
        assert!(matches!(
            ham_cycle_minus_pair_through_edge(4, &p("4321"), &bad, &e4),
            Err(HamiltonError::BadPair(..))
        ));
    }
}
