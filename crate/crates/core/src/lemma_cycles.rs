//! Cycles spanning chosen subnetworks plus a pinned vertex or edge, and the
//! prefix-disjoint vertex pair of a two-disjoint-cycle cover.

use std::collections::HashSet;

use thiserror::Error;

use crate::hamilton::engine::{self, Region};
use crate::hamilton::Cycle;
use crate::permutation::{factorial, Permutation};
use crate::topology::{adjacent, s_minus, s_plus, Edge};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LemmaError {
    #[error("selection {0:?} meets an anchored subnetwork")]
    BadSelection(Vec<u8>),
    #[error("edge ({0}, {1}) does not lie inside a single subnetwork")]
    NotIntraSubnetwork(Permutation, Permutation),
    #[error("dimension {0} unsupported here")]
    BadDimension(usize),
    #[error("inputs are not a two-disjoint-cycle cover")]
    NotADcc,
    #[error("no construction found: {0}")]
    NotFound(&'static str),
}

/// The extra subnetworks `T` joined to the anchored ones.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubnetSelection {
    pub n: usize,
    pub extra: Vec<u8>,
}

impl SubnetSelection {
    pub fn new(n: usize, extra: impl IntoIterator<Item = u8>) -> Self {
        let mut extra: Vec<u8> = extra.into_iter().collect();
        extra.sort_unstable();
        extra.dedup();
        SubnetSelection { n, extra }
    }

    pub fn empty(n: usize) -> Self {
        SubnetSelection { n, extra: Vec::new() }
    }

    fn check(&self, anchored: &[u8]) -> Result<(), LemmaError> {
        if self
            .extra
            .iter()
            .any(|t| anchored.contains(t) || *t == 0 || *t as usize > self.n)
        {
            return Err(LemmaError::BadSelection(self.extra.clone()));
        }
        Ok(())
    }
}

/// Cycle through `x` spanning the subnetworks `labels` plus `x`, leaving
/// `x` by its two crossing edges. `holes` are left out.
pub(crate) fn vertex_cycle(x: &Permutation, labels: &[u8], holes: &[Permutation]) -> Option<Vec<Permutation>> {
    let n = x.n();
    let region = Region::cluster(n, labels);
    let a = s_plus(x, n);
    let b = s_minus(x, n);
    let path = engine::ham_path(&region, a, b, holes, None)?;
    let mut out = Vec::with_capacity(path.len() + 1);
    out.push(*x);
    out.extend(path);
    Some(out)
}

/// Cycle through the intra-subnetwork edge `(x, y)` spanning the
/// subnetworks `labels` plus `x` and `y`.
pub(crate) fn edge_cycle(
    x: &Permutation,
    y: &Permutation,
    labels: &[u8],
    holes: &[Permutation],
) -> Option<Vec<Permutation>> {
    let n = x.n();
    let region = Region::cluster(n, labels);
    let exits = |p: &Permutation| {
        let mut out = Vec::with_capacity(2);
        for (q, t) in [(s_plus(p, n), p.at(2)), (s_minus(p, n), p.at(1))] {
            if region.contains(&q) && !holes.contains(&q) {
                out.push((q, t));
            }
        }
        out
    };
    let (xs, ys) = (exits(x), exits(y));
    let mut combos = Vec::new();
    for &(xq, xt) in &xs {
        for &(yq, yt) in &ys {
            if xq != yq {
                combos.push((xt == yt, xq, yq));
            }
        }
    }
    combos.sort_by_key(|c| c.0);
    for (_, xq, yq) in combos {
        if let Some(path) = engine::ham_path(&region, xq, yq, holes, None) {
            let mut out = Vec::with_capacity(path.len() + 2);
            out.push(*x);
            out.extend(path);
            out.push(*y);
            return Some(out);
        }
    }
    None
}

/// A cycle on `S_n^{2:x_1} ∪ S_n^{2:x_2} ∪ (∪_{t∈T} S_n^{2:t}) ∪ {u}` for
/// `u = x_1 x_2 ... x_n`.
pub fn cycle_subnets_plus_vertex(n: usize, u: &Permutation, t: &SubnetSelection) -> Result<Cycle, LemmaError> {
    if n < 4 || u.n() != n || t.n != n {
        return Err(LemmaError::BadDimension(n));
    }
    t.check(&[u.at(1), u.at(2), u.last()])?;
    let mut labels = vec![u.at(2)];
    labels.extend(&t.extra);
    labels.push(u.at(1));
    vertex_cycle(u, &labels, &[])
        .map(Cycle::from_vec)
        .ok_or(LemmaError::NotFound("cycle through a pinned vertex"))
}

/// A cycle through the edge `e = (u, v)` of `S_n^{2:j}` on
/// `S_n^{2:x_1} ∪ S_n^{2:x_2} ∪ (∪_{t∈T} S_n^{2:t}) ∪ {u, v}`.
pub fn cycle_subnets_plus_edge(n: usize, e: &Edge, t: &SubnetSelection) -> Result<Cycle, LemmaError> {
    let (u, v) = e.ends();
    if n < 4 || u.n() != n || t.n != n {
        return Err(LemmaError::BadDimension(n));
    }
    if u.last() != v.last() {
        return Err(LemmaError::NotIntraSubnetwork(u, v));
    }
    t.check(&[u.at(1), u.at(2), u.last()])?;
    let mut labels = vec![u.at(1), u.at(2)];
    labels.extend(&t.extra);
    edge_cycle(&u, &v, &labels, &[])
        .map(Cycle::from_vec)
        .ok_or(LemmaError::NotFound("cycle through a pinned edge"))
}

/// The lexicographically smallest `(w, z)`, `w ∈ c1`, `z ∈ c2`, whose
/// first two symbols are four distinct values.
pub fn prefix_disjoint_pair(c1: &Cycle, c2: &Cycle) -> Result<(Permutation, Permutation), LemmaError> {
    check_dcc(c1, c2)?;
    let mut a: Vec<Permutation> = c1.vertices().to_vec();
    let mut b: Vec<Permutation> = c2.vertices().to_vec();
    a.sort_unstable();
    b.sort_unstable();
    for w in &a {
        for z in &b {
            let (w1, w2, z1, z2) = (w.at(1), w.at(2), z.at(1), z.at(2));
            if w1 != z1 && w1 != z2 && w2 != z1 && w2 != z2 {
                return Ok((*w, *z));
            }
        }
    }
    Err(LemmaError::NotFound("prefix-disjoint pair"))
}

fn check_dcc(c1: &Cycle, c2: &Cycle) -> Result<(), LemmaError> {
    let n = match c1.vertices().first() {
        Some(x) => x.n(),
        None => return Err(LemmaError::NotADcc),
    };
    if n < 4 || c1 == c2 {
        return Err(LemmaError::NotADcc);
    }
    let mut seen = HashSet::with_capacity(c1.len() + c2.len());
    for c in [c1, c2] {
        if c.len() < 3 {
            return Err(LemmaError::NotADcc);
        }
        for (a, b) in c.edges() {
            if a.n() != n || !adjacent(&a, &b) || !seen.insert(a) {
                return Err(LemmaError::NotADcc);
            }
        }
    }
    if seen.len() as u64 != factorial(n) {
        return Err(LemmaError::NotADcc);
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::topology::{vertices_of, Cluster};

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn expect_set(c: &Cycle, n: usize, labels: Vec<u8>, extra: &[Permutation]) {
        Cycle::new(c.vertices().to_vec()).unwrap();
        let mut want: HashSet<Permutation> = vertices_of(&Cluster::new(n, labels).unwrap()).collect();
        want.extend(extra.iter().copied());
        let got: HashSet<Permutation> = c.vertices().iter().copied().collect();
        assert_eq!(got, want);
        assert_eq!(got.len(), c.len());
    }

    #[test]
    fn vertex_examples() {
        let u = p("1234");
        let c = cycle_subnets_plus_vertex(4, &u, &SubnetSelection::empty(4)).unwrap();
        assert_eq!(c.len(), 13);
        expect_set(&c, 4, vec![1, 2], &[u]);
        let pos = c.vertices().iter().position(|x| *x == u).unwrap();
        let k = c.len();
        let nb = [c.vertices()[(pos + 1) % k], c.vertices()[(pos + k - 1) % k]];
        assert!(nb.contains(&s_plus(&u, 4)) && nb.contains(&s_minus(&u, 4)));

        let u5 = p("12345");
        let c = cycle_subnets_plus_vertex(5, &u5, &SubnetSelection::new(5, [3])).unwrap();
        assert_eq!(c.len(), 73);
        expect_set(&c, 5, vec![1, 2, 3], &[u5]);

        assert_eq!(
            cycle_subnets_plus_vertex(4, &u, &SubnetSelection::new(4, [4])),
            Err(LemmaError::BadSelection(vec![4]))
        );
    }

    #[test]
    fn edge_examples() {
        let e = Edge::new(p("12345"), p("21345")).unwrap();
        let c = cycle_subnets_plus_edge(5, &e, &SubnetSelection::empty(5)).unwrap();
        assert_eq!(c.len(), 50);
        assert!(c.contains_edge(&e.a(), &e.b()));
        expect_set(&c, 5, vec![1, 2], &[e.a(), e.b()]);

        let e = Edge::new(p("12345"), p("31245")).unwrap();
        let c = cycle_subnets_plus_edge(5, &e, &SubnetSelection::new(5, [4])).unwrap();
        assert_eq!(c.len(), 74);
        assert!(c.contains_edge(&e.a(), &e.b()));
        expect_set(&c, 5, vec![1, 2, 4], &[e.a(), e.b()]);

        let cross = Edge::new(p("12345"), p("51342")).unwrap();
        assert!(matches!(
            cycle_subnets_plus_edge(5, &cross, &SubnetSelection::empty(5)),
            Err(LemmaError::NotIntraSubnetwork(..))
        ));
    }

    #[test]
    fn prefix_pair_rejects_non_covers() {
        let c = Cycle::from_vec(vec![p("1234"), p("3124"), p("2314")]);
        assert_eq!(prefix_disjoint_pair(&c, &c), Err(LemmaError::NotADcc));
    }
}
