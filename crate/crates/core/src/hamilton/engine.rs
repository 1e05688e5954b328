//! Hamiltonian paths in induced subgraphs of `S_n^2`.
//!
//! A [`Region`] is a block of vertices sharing a fixed suffix (positions
//! `m+1..n`) whose symbol at position `m` lies in a label set. Inside a
//! region only generators with index `<= m` apply; the ones with index `m`
//! connect the child blocks. Regions with `m <= 4` are solved by exhaustive
//! search, larger ones by chaining Hamiltonian paths of their children.

use crate::permutation::Permutation;
use crate::topology::{adjacent, s_minus, s_plus};

use super::search::{self, Query};

/// Exit candidates tried per chain link before backtracking.
const LINK_TRIES: usize = 24;
/// Splice positions tried when both ends share a child.
const SPLICE_TRIES: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Region {
    /// Any vertex of the region; positions after `m` fix the suffix.
    anchor: Permutation,
    m: u8,
    /// Allowed symbols at position `m`, as a bitmask over symbol values.
    labels: u32,
}

impl Region {
    /// All of `S_n^2`.
    pub fn whole(n: usize) -> Self {
        let anchor = Permutation::identity(n);
        Region {
            anchor,
            m: n as u8,
            labels: full_mask(n),
        }
    }

    /// The top-level subnetworks with the given labels.
    pub fn cluster(n: usize, labels: &[u8]) -> Self {
        let mask = labels.iter().fold(0u32, |m, &l| m | 1 << l);
        Region {
            anchor: Permutation::identity(n),
            m: n as u8,
            labels: mask,
        }
    }

    /// Subnetwork `S_n^{2:label}`.
    pub fn subnet(n: usize, label: u8) -> Self {
        Self::cluster(n, &[label])
    }

    pub fn n(&self) -> usize {
        self.anchor.n()
    }

    pub fn m(&self) -> usize {
        self.m as usize
    }

    pub fn contains(&self, x: &Permutation) -> bool {
        let m = self.m as usize;
        x.n() == self.anchor.n() && x.symbols()[m..] == self.anchor.symbols()[m..] && self.labels & 1 << x.at(m) != 0
    }

    pub fn size(&self) -> usize {
        self.labels.count_ones() as usize * crate::permutation::factorial(self.m() - 1) as usize
    }

    fn label_list(&self) -> Vec<u8> {
        bits(self.labels)
    }

    /// The child block with symbol `c` at position `m`, as a region one
    /// level down.
    fn child(&self, c: u8) -> Region {
        let m = self.m as usize;
        let mut anchor = self.anchor;
        let pos = anchor.symbols().iter().position(|&x| x == c).unwrap();
        debug_assert!(pos < m);
        anchor.raw_mut().swap(pos, m - 1);
        let free = anchor.symbols()[..m - 1].iter().fold(0u32, |acc, &x| acc | 1 << x);
        Region {
            anchor,
            m: self.m - 1,
            labels: free,
        }
    }

    fn with_labels(&self, labels: u32) -> Region {
        Region { labels, ..*self }
    }

    /// Vertices of the region in lexicographic order.
    pub fn vertices(&self) -> Vec<Permutation> {
        let m = self.m as usize;
        let suffix = &self.anchor.symbols()[m..];
        let mut out = Vec::with_capacity(self.size());
        for l in self.label_list() {
            let mut sfx = vec![l];
            sfx.extend_from_slice(suffix);
            out.extend(crate::topology::vertices_with_suffix(self.n(), &sfx));
        }
        out.sort();
        out
    }
}

pub(crate) fn full_mask(n: usize) -> u32 {
    ((1u32 << (n + 1)) - 1) & !1
}

pub(crate) fn bits(mask: u32) -> Vec<u8> {
    (1..32u8).filter(|&b| mask & 1 << b != 0).collect()
}

/// Crossing neighbor of `x` into the child block labelled `target` at
/// level `m`, if `target` is one of `x`'s first two symbols.
#[inline]
pub(crate) fn cross_to(x: &Permutation, m: usize, target: u8) -> Option<Permutation> {
    if x.at(1) == target {
        Some(s_minus(x, m))
    } else if x.at(2) == target {
        Some(s_plus(x, m))
    } else {
        None
    }
}

type Req = Option<(Permutation, Permutation)>;

fn req_inside(req: Req, r: &Region) -> Req {
    req.filter(|(a, b)| r.contains(a) && r.contains(b))
}

/// A Hamiltonian path of `region - forbidden` from `a` to `b`, containing
/// the edge `req` when one is given.
pub(crate) fn ham_path(
    region: &Region,
    a: Permutation,
    b: Permutation,
    forbidden: &[Permutation],
    req: Req,
) -> Option<Vec<Permutation>> {
    if a == b || !region.contains(&a) || !region.contains(&b) {
        return None;
    }
    if forbidden.contains(&a) || forbidden.contains(&b) {
        return None;
    }
    if let Some((x, y)) = req {
        if !region.contains(&x) || !region.contains(&y) || forbidden.contains(&x) || forbidden.contains(&y) {
            return None;
        }
    }
    let local: Vec<Permutation> = forbidden.iter().copied().filter(|f| region.contains(f)).collect();
    solve(region, a, b, &local, req)
}

fn solve(
    region: &Region,
    a: Permutation,
    b: Permutation,
    forbidden: &[Permutation],
    req: Req,
) -> Option<Vec<Permutation>> {
    let m = region.m();
    if m <= 4 {
        return base(region, a, b, forbidden, req);
    }
    if region.labels.count_ones() == 1 {
        let c = region.label_list()[0];
        return solve(&region.child(c), a, b, forbidden, req);
    }
    let (ca, cb) = (a.at(m), b.at(m));
    if ca != cb {
        chain(region, a, b, forbidden, req)
    } else {
        same_child(region, a, b, forbidden, req)
    }
}

/// Exhaustive search for regions of dimension at most four.
fn base(
    region: &Region,
    a: Permutation,
    b: Permutation,
    forbidden: &[Permutation],
    req: Req,
) -> Option<Vec<Permutation>> {
    let n = region.n();
    let mut m = region.m();
    let mut labels = region.labels;
    if m < 4 && n >= 4 {
        // widen to a four-position block holding a single label
        labels = 1 << region.anchor.at(4);
        m = 4;
    }
    let d = m;
    let t = search::tables(d);
    // canonical coordinates: symbol a[j] becomes j + 1
    let mut pos_in_a = [0u8; 17];
    for j in 0..d {
        pos_in_a[a.at(j + 1) as usize] = j as u8 + 1;
    }
    let to_local = |x: &Permutation| -> u8 {
        let mut y = [0u8; 4];
        for j in 0..d {
            y[j] = pos_in_a[x.at(j + 1) as usize];
        }
        Permutation::from_raw(&y[..d]).rank() as u8
    };
    let mut allowed = 0u32;
    for (r, y) in t.perms.iter().enumerate() {
        let last = a.at(y.at(d) as usize);
        if labels & 1 << last != 0 {
            allowed |= 1 << r;
        }
    }
    for f in forbidden {
        allowed &= !(1 << to_local(f));
    }
    let q = Query {
        d: d as u8,
        allowed,
        end: to_local(&b),
        req: req.map(|(x, y)| (to_local(&x), to_local(&y))),
    };
    let ranks = search::solve(q)?;
    let mut out = Vec::with_capacity(ranks.len());
    for &r in ranks.iter() {
        let y = &t.perms[r as usize];
        let mut x = a;
        let raw = x.raw_mut();
        for (j, slot) in raw.iter_mut().take(d).enumerate() {
            *slot = a.at(y.at(j + 1) as usize);
        }
        out.push(x);
    }
    Some(out)
}

/// Exit vertices of `child` (label `c` at level `m`) leading into block
/// `next`, in lexicographic order.
fn exits(region: &Region, c: u8, next: u8, cap: usize) -> Vec<Permutation> {
    let m = region.m();
    let free: Vec<u8> = region.anchor.symbols()[..m]
        .iter()
        .copied()
        .filter(|&x| x != c)
        .collect::<std::collections::BTreeSet<u8>>()
        .into_iter()
        .collect();
    let mut out = Vec::new();
    let mut buf = region.anchor;
    buf.raw_mut()[m - 1] = c;
    for &p1 in &free {
        for &p2 in &free {
            if p1 == p2 || (p1 != next && p2 != next) {
                continue;
            }
            let rest: Vec<u8> = free.iter().copied().filter(|&x| x != p1 && x != p2).collect();
            let k = rest.len();
            let total = crate::permutation::factorial(k);
            for r in 0..total {
                let q = Permutation::unrank_raw(r, k.max(1));
                let raw = buf.raw_mut();
                raw[0] = p1;
                raw[1] = p2;
                for j in 0..k {
                    raw[2 + j] = rest[q.at(j + 1) as usize - 1];
                }
                out.push(buf);
                if out.len() >= cap {
                    return out;
                }
            }
        }
    }
    out
}

/// Endpoints in different children: visit the children as one run each,
/// first `a`'s, then the others in ascending label order, then `b`'s.
fn chain(
    region: &Region,
    a: Permutation,
    b: Permutation,
    forbidden: &[Permutation],
    req: Req,
) -> Option<Vec<Permutation>> {
    let m = region.m();
    let (ca, cb) = (a.at(m), b.at(m));
    let mut middle: Vec<u8> = region
        .label_list()
        .into_iter()
        .filter(|&l| l != ca && l != cb)
        .collect();
    let cross = req.filter(|(x, y)| x.at(m) != y.at(m));
    let orders: Vec<Vec<u8>> = match cross {
        None => vec![middle],
        Some((x, y)) => {
            let (cx, cy) = (x.at(m), y.at(m));
            let mut out = Vec::new();
            for (p, q) in [(cx, cy), (cy, cx)] {
                if p == ca && q == cb {
                    if middle.is_empty() {
                        out.push(Vec::new());
                    }
                } else if p == ca && q != cb {
                    let mut o = vec![q];
                    o.extend(middle.iter().copied().filter(|&l| l != q));
                    out.push(o);
                } else if q == cb && p != ca {
                    let mut o: Vec<u8> = middle.iter().copied().filter(|&l| l != p).collect();
                    o.push(p);
                    out.push(o);
                } else if p != ca && p != cb && q != ca && q != cb {
                    let mut o = vec![p, q];
                    o.extend(middle.iter().copied().filter(|&l| l != p && l != q));
                    out.push(o);
                }
            }
            middle.clear();
            out
        }
    };
    for mid in orders {
        let mut order = vec![ca];
        order.extend(mid);
        order.push(cb);
        let mut st = ChainState {
            region,
            order: &order,
            b,
            forbidden,
            req,
            cross,
            segments: Vec::new(),
        };
        if st.run(0, a) {
            return Some(st.segments.concat());
        }
    }
    None
}

struct ChainState<'a> {
    region: &'a Region,
    order: &'a [u8],
    b: Permutation,
    forbidden: &'a [Permutation],
    req: Req,
    cross: Req,
    segments: Vec<Vec<Permutation>>,
}

impl ChainState<'_> {
    fn run(&mut self, idx: usize, entry: Permutation) -> bool {
        let m = self.region.m();
        let c = self.order[idx];
        let child = self.region.child(c);
        let inner = req_inside(self.req, &child);
        if idx + 1 == self.order.len() {
            return match solve_checked(&child, entry, self.b, self.forbidden, inner) {
                Some(p) => {
                    self.segments.push(p);
                    true
                }
                None => false,
            };
        }
        let next = self.order[idx + 1];
        let last_link = idx + 2 == self.order.len();
        let fixed = self.cross.and_then(|(x, y)| {
            if x.at(m) == c && y.at(m) == next {
                Some((x, y))
            } else if y.at(m) == c && x.at(m) == next {
                Some((y, x))
            } else {
                None
            }
        });
        let candidates: Vec<(Permutation, Permutation)> = match fixed {
            Some(link) => vec![link],
            None => exits(self.region, c, next, usize::MAX)
                .into_iter()
                .filter_map(|x| cross_to(&x, m, next).map(|y| (x, y)))
                .filter(|(x, y)| {
                    *x != entry
                        && !self.forbidden.contains(x)
                        && !self.forbidden.contains(y)
                        && !(last_link && *y == self.b)
                })
                .filter(|(x, y)| !self.touches_cross_req(x, y))
                .take(LINK_TRIES)
                .collect(),
        };
        for (x, y) in candidates {
            if x == entry || (last_link && y == self.b) {
                continue;
            }
            let Some(p) = solve_checked(&child, entry, x, self.forbidden, inner) else {
                continue;
            };
            self.segments.push(p);
            if self.run(idx + 1, y) {
                return true;
            }
            self.segments.pop();
        }
        false
    }

    /// A free link may not reuse an endpoint of the required crossing edge.
    fn touches_cross_req(&self, x: &Permutation, y: &Permutation) -> bool {
        match self.cross {
            Some((p, q)) => *x == p || *x == q || *y == p || *y == q,
            None => false,
        }
    }
}

fn solve_checked(
    region: &Region,
    a: Permutation,
    b: Permutation,
    forbidden: &[Permutation],
    req: Req,
) -> Option<Vec<Permutation>> {
    if a == b || forbidden.contains(&a) || forbidden.contains(&b) {
        return None;
    }
    let local: Vec<Permutation> = forbidden.iter().copied().filter(|f| region.contains(f)).collect();
    solve(region, a, b, &local, req)
}

/// Both ends in one child: take a Hamiltonian path of that child, then
/// detour from one of its edges through the rest of the region.
fn same_child(
    region: &Region,
    a: Permutation,
    b: Permutation,
    forbidden: &[Permutation],
    req: Req,
) -> Option<Vec<Permutation>> {
    let m = region.m();
    let c = a.at(m);
    let child = region.child(c);
    let rest = region.with_labels(region.labels & !(1 << c));
    let inner = req_inside(req, &child);
    let rest_req = req_inside(req, &rest);
    let cross = req.filter(|(x, y)| x.at(m) != y.at(m));
    let p = solve_checked(&child, a, b, forbidden, inner)?;
    let mut tries = 0;
    for t in 0..p.len() - 1 {
        let (x, y) = (p[t], p[t + 1]);
        if let Some((r0, r1)) = inner {
            if (x == r0 && y == r1) || (x == r1 && y == r0) {
                continue;
            }
        }
        let xs = rungs(&x, m, rest.labels, forbidden);
        let ys = rungs(&y, m, rest.labels, forbidden);
        for &x2 in &xs {
            for &y2 in &ys {
                if x2 == y2 {
                    continue;
                }
                if let Some((r0, r1)) = cross {
                    let hit = [(x, x2), (y, y2)]
                        .iter()
                        .any(|&(s, t)| (s == r0 && t == r1) || (s == r1 && t == r0));
                    if !hit {
                        continue;
                    }
                }
                tries += 1;
                if tries > SPLICE_TRIES {
                    return None;
                }
                if let Some(mid) = solve_checked(&rest, x2, y2, forbidden, rest_req) {
                    let mut out = Vec::with_capacity(p.len() + mid.len());
                    out.extend_from_slice(&p[..=t]);
                    out.extend(mid);
                    out.extend_from_slice(&p[t + 1..]);
                    return Some(out);
                }
            }
        }
    }
    None
}

/// Crossing neighbors of `x` at level `m` that land in `labels`, coupled
/// target first.
fn rungs(x: &Permutation, m: usize, labels: u32, forbidden: &[Permutation]) -> Vec<Permutation> {
    let mut out = Vec::with_capacity(2);
    for t in [x.at(1), x.at(2)] {
        if labels & 1 << t != 0 {
            if let Some(y) = cross_to(x, m, t) {
                if !forbidden.contains(&y) {
                    out.push(y);
                }
            }
        }
    }
    out
}

/// A Hamiltonian cycle of `region - forbidden` through the edge `(x, y)`,
/// listed starting at `y` and ending at `x`.
pub(crate) fn cycle_through(
    region: &Region,
    x: Permutation,
    y: Permutation,
    forbidden: &[Permutation],
) -> Option<Vec<Permutation>> {
    if !adjacent(&x, &y) {
        return None;
    }
    ham_path(region, y, x, forbidden, None)
}

/// A Hamiltonian cycle of `region - forbidden`, through the smallest
/// remaining vertex.
pub(crate) fn cycle_avoiding(region: &Region, forbidden: &[Permutation]) -> Option<Vec<Permutation>> {
    let first = region.vertices().into_iter().find(|x| !forbidden.contains(x))?;
    for (y, _) in crate::topology::neighbors(&first) {
        if region.contains(&y) && !forbidden.contains(&y) {
            if let Some(c) = cycle_through(region, first, y, forbidden) {
                return Some(c);
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn check_path(region: &Region, path: &[Permutation], forbidden: &[Permutation]) {
        let set: HashSet<_> = path.iter().collect();
        assert_eq!(set.len(), path.len(), "repeated vertex");
        for w in path.windows(2) {
            assert!(adjacent(&w[0], &w[1]), "{} {}", w[0], w[1]);
        }
        let want: HashSet<_> = region
            .vertices()
            .into_iter()
            .filter(|x| !forbidden.contains(x))
            .collect();
        let got: HashSet<_> = path.iter().copied().collect();
        assert_eq!(got, want);
    }

    #[test]
    fn whole_graph_paths() {
        for n in 3..=6 {
            let r = Region::whole(n);
            let a = Permutation::identity(n);
            let b = Permutation::reversal(n);
            let path = ham_path(&r, a, b, &[], None).unwrap();
            assert_eq!(path[0], a);
            assert_eq!(*path.last().unwrap(), b);
            check_path(&r, &path, &[]);
        }
    }

    #[test]
    fn same_child_endpoints() {
        let r = Region::whole(5);
        let a = p("12345");
        let b = p("21345");
        let path = ham_path(&r, a, b, &[], None).unwrap();
        check_path(&r, &path, &[]);
    }

    #[test]
    fn subnet_region_is_its_block() {
        let r = Region::subnet(5, 3);
        assert_eq!(r.size(), 24);
        let vs = r.vertices();
        assert_eq!(vs.len(), 24);
        assert!(vs.iter().all(|v| v.last() == 3));
        let a = vs[0];
        let b = vs[7];
        let path = ham_path(&r, a, b, &[], None).unwrap();
        check_path(&r, &path, &[]);
    }

    #[test]
    fn forbidden_vertices_are_skipped() {
        let r = Region::cluster(5, &[1, 2, 4]);
        let f = [p("23451"), p("32451"), p("13542")];
        let c = cycle_avoiding(&r, &f).unwrap();
        check_path(&r, &c, &f);
        assert!(adjacent(&c[0], c.last().unwrap()));
    }

    #[test]
    fn required_edge_inside_and_across() {
        let r = Region::whole(5);
        let a = p("12345");
        let b = p("54321");
        let inside = (p("23145"), p("32145"));
        let path = ham_path(&r, a, b, &[], Some(inside)).unwrap();
        check_path(&r, &path, &[]);
        assert!(path
            .windows(2)
            .any(|w| (w[0], w[1]) == inside || (w[1], w[0]) == inside));
        let x = p("31452");
        let y = cross_to(&x, 5, 3).unwrap();
        let path = ham_path(&r, a, b, &[], Some((x, y))).unwrap();
        check_path(&r, &path, &[]);
        assert!(path
            .windows(2)
            .any(|w| (w[0], w[1]) == (x, y) || (w[1], w[0]) == (x, y)));
    }
}
