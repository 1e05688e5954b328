//! The induction step. Everything here works in the canonical frame
//! `u = N (N-1) ... 2 1`, which lies in subnetwork 1.

use crate::hamilton::engine::{self, Region};
use crate::permutation::{factorial, Permutation};
use crate::topology::{apply_swap12, coupled_at, lift, project, s_plus};

use super::{base, case_select, max_len, CaseTag, DccError};

type Cyc = Vec<Permutation>;
type Res<T> = Result<T, DccError>;

/// `(c_u, c_v)` with `|c_u| = ell`, for any `u`, `v` of one dimension.
pub(crate) fn construct(u: Permutation, v: Permutation, ell: usize, trace: &mut Vec<CaseTag>) -> Res<(Cyc, Cyc)> {
    let n = u.n();
    let canon = if n == 4 {
        Permutation::identity(4)
    } else {
        Permutation::reversal(n)
    };
    // sigma ∘ u = canon
    let sigma = canon.compose_unchecked(&u.inverse());
    let back = sigma.inverse();
    let cv = sigma.compose_unchecked(&v);
    let (a, b) = if n == 4 {
        let (cover, source) = base::lookup_canonical(&cv, ell)?;
        trace.push(CaseTag::Base { source, ell });
        (cover.c1.into_vertices(), cover.c2.into_vertices())
    } else {
        Step::new(n, cv, ell, trace)?.run()?
    };
    let map = |c: Cyc| c.into_iter().map(|x| back.compose_unchecked(&x)).collect();
    Ok((map(a), map(b)))
}

struct Step<'t> {
    n: usize,
    b: usize,
    u: Permutation,
    v: Permutation,
    ell: usize,
    sub: u8,
    s: usize,
    trace: &'t mut Vec<CaseTag>,
}

fn labels_except(n: usize, skip: &[u8]) -> Vec<u8> {
    (1..=n as u8).filter(|l| !skip.contains(l)).collect()
}

fn smallest(n: usize, k: usize, skip: &[u8]) -> Option<Vec<u8>> {
    let pool = labels_except(n, skip);
    (pool.len() >= k).then(|| pool[..k].to_vec())
}

fn union(a: &[u8], b: &[u8]) -> Vec<u8> {
    let mut out = a.to_vec();
    out.extend(b.iter().copied().filter(|x| !a.contains(x)));
    out
}

/// The cycle read as a path from `b` to `a`, dropping the edge `(a, b)`.
fn open_at(c: &[Permutation], a: Permutation, b: Permutation) -> Option<Cyc> {
    let k = c.len();
    let ia = c.iter().position(|x| *x == a)?;
    if c[(ia + 1) % k] == b {
        let ib = (ia + 1) % k;
        let mut out = Vec::with_capacity(k);
        out.extend_from_slice(&c[ib..]);
        out.extend_from_slice(&c[..ib]);
        Some(out)
    } else if c[(ia + k - 1) % k] == b {
        let mut out: Cyc = c.iter().rev().copied().collect();
        let ia = k - 1 - ia;
        let ib = (ia + 1) % k;
        out.rotate_left(ib);
        Some(out)
    } else {
        None
    }
}

/// Joins `c` and `d` through the rungs `a-a2` and `b-b2`, dropping the
/// edges `(a, b)` of `c` and `(a2, b2)` of `d`.
fn splice(
    c: &[Permutation],
    (a, b): (Permutation, Permutation),
    d: &[Permutation],
    (a2, b2): (Permutation, Permutation),
) -> Option<Cyc> {
    let mut out = open_at(c, a, b)?;
    out.extend(open_at(d, b2, a2)?);
    Some(out)
}

/// Replaces the edge `(w, w1)` of `c` by `w, w2, w3, w1`.
fn detour(c: &[Permutation], w: Permutation, w1: Permutation, w2: Permutation, w3: Permutation) -> Option<Cyc> {
    let mut out = open_at(c, w, w1)?;
    out.push(w2);
    out.push(w3);
    Some(out)
}

/// Two cycles sharing the edge `(x, y)` merged into one that drops it.
fn merge_on_edge(a: &[Permutation], b: &[Permutation], x: Permutation, y: Permutation) -> Option<Cyc> {
    let mut out = open_at(a, x, y)?;
    let other = open_at(b, y, x)?;
    out.extend_from_slice(&other[1..other.len() - 1]);
    Some(out)
}

fn edges(c: &[Permutation]) -> impl Iterator<Item = (Permutation, Permutation)> + '_ {
    let k = c.len();
    (0..k).map(move |j| (c[j], c[(j + 1) % k]))
}

impl<'t> Step<'t> {
    fn new(n: usize, v: Permutation, ell: usize, trace: &'t mut Vec<CaseTag>) -> Res<Self> {
        let band = case_select(n, ell)?;
        let top = if v.last() == 1 { 1 } else { 2 };
        trace.push(CaseTag::Step {
            dim: n,
            top,
            sub: band.sub,
            s: band.s,
        });
        Ok(Step {
            n,
            b: factorial(n - 1) as usize,
            u: Permutation::reversal(n),
            v,
            ell,
            sub: band.sub,
            s: band.s,
            trace,
        })
    }

    fn fail(&self, what: &str) -> DccError {
        let top = if self.v.last() == 1 { 1 } else { 2 };
        DccError::ConstructionFailed(format!(
            "n={} case {}.{} s={} ({what}) for v={} ell={}",
            self.n, top, self.sub, self.s, self.v, self.ell
        ))
    }

    fn run(mut self) -> Res<(Cyc, Cyc)> {
        let out = if self.v.last() == 1 {
            match self.sub {
                1 => self.case_1_1(),
                2 => self.case_1_2(),
                3 => self.case_1_3(),
                4 => self.case_1_4(),
                5 => self.case_1_5(),
                _ => self.case_1_6(),
            }
        } else {
            match self.sub {
                1 => self.case_2_1(),
                2 => self.case_2_2(),
                3 => self.case_2_3(),
                4 => self.case_2_4(),
                5 => self.case_2_5(),
                _ => self.case_2_6(),
            }
        }?;
        debug_assert_eq!(out.0.len(), self.ell);
        debug_assert_eq!(out.0.len() + out.1.len(), factorial(self.n) as usize);
        Ok(out)
    }

    // ---- building blocks -------------------------------------------------

    /// A cover of subnetwork `label` with `x` on the `ell`-cycle.
    fn sub_dcc(&mut self, label: u8, x: Permutation, y: Permutation, ell: usize) -> Res<(Cyc, Cyc)> {
        let (px, py) = (project(&x), project(&y));
        let (a, b) = if ell <= max_len(self.n - 1) {
            construct(px, py, ell, self.trace)?
        } else {
            let (b, a) = construct(py, px, self.b - ell, self.trace)?;
            (a, b)
        };
        let up = |c: Cyc| c.iter().map(|q| lift(q, label)).collect::<Cyc>();
        Ok((up(a), up(b)))
    }

    fn cluster_cycle(&self, labels: &[u8], x: Permutation, y: Permutation) -> Option<Cyc> {
        engine::cycle_through(&Region::cluster(self.n, labels), x, y, &[])
    }

    fn subnet_cycle_avoiding(&self, label: u8, holes: &[Permutation]) -> Option<Cyc> {
        engine::cycle_avoiding(&Region::subnet(self.n, label), holes)
    }

    fn subnet_cycle_through(&self, label: u8, holes: &[Permutation], x: Permutation, y: Permutation) -> Option<Cyc> {
        engine::cycle_through(&Region::subnet(self.n, label), x, y, holes)
    }

    /// Coupled pair-edge of the intra-subnetwork edge `(x, y)` landing in
    /// `target`.
    fn coupled_into(&self, x: Permutation, y: Permutation, target: u8) -> Option<(Permutation, Permutation)> {
        coupled_at(&x, &y, self.n)
            .into_iter()
            .find(|c| c.subnet.0 == target)
            .map(|c| c.edge.ends())
    }

    /// Subnetworks reachable from `c` through coupled pair-edges, in order
    /// of first appearance.
    fn targets(&self, c: &[Permutation]) -> Vec<u8> {
        let mut out = Vec::new();
        for (x, y) in edges(c) {
            if x.last() != y.last() {
                continue;
            }
            for t in coupled_at(&x, &y, self.n) {
                if !out.contains(&t.subnet.0) {
                    out.push(t.subnet.0);
                }
            }
        }
        out
    }

    fn smallest_target(&self, c: &[Permutation], skip: &[u8]) -> Option<u8> {
        self.targets(c).into_iter().filter(|t| !skip.contains(t)).min()
    }

    /// Grows `c` by a Hamiltonian cycle of the cluster `labels`, entered
    /// through a coupled pair-edge into `target`.
    fn extend(&self, c: &[Permutation], labels: &[u8], target: u8) -> Option<Cyc> {
        debug_assert!(labels.contains(&target));
        for (x, y) in edges(c) {
            if x.last() != y.last() {
                continue;
            }
            let Some((x2, y2)) = self.coupled_into(x, y, target) else {
                continue;
            };
            if let Some(d) = self.cluster_cycle(labels, x2, y2) {
                return splice(c, (x, y), &d, (x2, y2));
            }
        }
        None
    }

    /// The cycle `x, y, (cluster path from y's rung to x's rung)`.
    fn attach_edge(&self, x: Permutation, y: Permutation, labels: &[u8], target: u8) -> Option<Cyc> {
        let (x2, y2) = self.coupled_into(x, y, target)?;
        let d = self.cluster_cycle(labels, x2, y2)?;
        let mut out = vec![x, y];
        out.extend(open_at(&d, x2, y2)?);
        Some(out)
    }

    /// Cycle through `x` and its two crossing neighbors spanning `labels`,
    /// skipping `holes`.
    fn vertex_cycle(&self, x: Permutation, labels: &[u8], holes: &[Permutation]) -> Option<Cyc> {
        crate::lemma_cycles::vertex_cycle(&x, labels, holes)
    }

    /// Smallest vertex of subnetwork `label` whose first symbol is `first`
    /// and that passes `ok`.
    fn pick_vertex(&self, label: u8, first: u8, ok: impl Fn(&Permutation) -> bool) -> Option<Permutation> {
        Region::subnet(self.n, label)
            .vertices()
            .into_iter()
            .find(|x| x.at(1) == first && ok(x))
    }

    /// Splits `pool` into a part of size `k` holding `must1` and the rest
    /// holding `must2`, filling with the smallest labels.
    fn partition(pool: &[u8], k: usize, must1: &[u8], must2: &[u8]) -> Option<(Vec<u8>, Vec<u8>)> {
        if must1.iter().any(|x| must2.contains(x)) {
            return None;
        }
        let mut k1: Vec<u8> = Vec::new();
        for &m in must1 {
            if !k1.contains(&m) {
                k1.push(m);
            }
        }
        if k1.len() > k {
            return None;
        }
        for &l in pool {
            if k1.len() == k {
                break;
            }
            if !k1.contains(&l) && !must2.contains(&l) {
                k1.push(l);
            }
        }
        if k1.len() < k {
            return None;
        }
        let k2: Vec<u8> = pool.iter().copied().filter(|l| !k1.contains(l)).collect();
        if must2.iter().any(|m| !k2.contains(m)) {
            return None;
        }
        Some((k1, k2))
    }

    /// `x∘(1,2)` or `x s_3^+`, whichever comes first and differs from
    /// `avoid`.
    fn partner(x: &Permutation, avoid: &Permutation) -> Permutation {
        let a = apply_swap12(x);
        if a != *avoid {
            a
        } else {
            s_plus(x, 3)
        }
    }

    /// The first edge of `c` whose coupled pair-edge can land in a
    /// subnetwork outside `skip`, with that pair-edge.
    fn coupled_edges_outside(
        &self,
        c: &[Permutation],
        skip: &[u8],
    ) -> Vec<((Permutation, Permutation), (Permutation, Permutation))> {
        let mut out = Vec::new();
        for (x, y) in edges(c) {
            if x.last() != y.last() {
                continue;
            }
            for t in coupled_at(&x, &y, self.n) {
                if !skip.contains(&t.subnet.0) {
                    out.push(((x, y), t.edge.ends()));
                }
            }
        }
        out
    }

    // ---- v in u's subnetwork ---------------------------------------------

    fn case_1_1(&mut self) -> Res<(Cyc, Cyc)> {
        let (n, s) = (self.n, self.s);
        let l1 = self.ell - (s - 1) * self.b;
        let (d1, d2) = self.sub_dcc(1, self.u, self.v, l1)?;
        if s == 1 {
            let k = d2.len();
            let iv = d2.iter().position(|x| *x == self.v).unwrap();
            let others = labels_except(n, &[1]);
            for v1 in [d2[(iv + 1) % k], d2[(iv + k - 1) % k]] {
                assert_ne!(v1, self.u);
                let Some(c) = crate::lemma_cycles::edge_cycle(&self.v, &v1, &others, &[]) else {
                    continue;
                };
                if let Some(c2) = merge_on_edge(&d2, &c, self.v, v1) {
                    return Ok((d1, c2));
                }
            }
            return Err(self.fail("pinned-edge cycle"));
        }
        let (w, z) = prefix_pair(&d1, &d2).ok_or_else(|| self.fail("prefix-disjoint pair"))?;
        let pool = labels_except(n, &[1]);
        for m1 in [w.at(1), w.at(2)] {
            for m2 in [z.at(1), z.at(2)] {
                let Some((k1, k2)) = Self::partition(&pool, s - 1, &[m1], &[m2]) else {
                    continue;
                };
                let c1 = self.extend_at(&d1, w, &k1, m1);
                let c2 = self.extend_at(&d2, z, &k2, m2);
                if let (Some(c1), Some(c2)) = (c1, c2) {
                    return Ok((c1, c2));
                }
            }
        }
        Err(self.fail("extension"))
    }

    /// Like [`Step::extend`] but through one of the two cycle edges at `w`.
    fn extend_at(&self, c: &[Permutation], w: Permutation, labels: &[u8], target: u8) -> Option<Cyc> {
        let k = c.len();
        let iw = c.iter().position(|x| *x == w)?;
        for w1 in [c[(iw + 1) % k], c[(iw + k - 1) % k]] {
            if w1.last() != w.last() {
                continue;
            }
            let Some((x2, y2)) = self.coupled_into(w, w1, target) else {
                continue;
            };
            if let Some(d) = self.cluster_cycle(labels, x2, y2) {
                return splice(c, (w, w1), &d, (x2, y2));
            }
        }
        self.extend(c, labels, target)
    }

    fn case_1_2(&mut self) -> Res<(Cyc, Cyc)> {
        let (n, s, u, v) = (self.n, self.s, self.u, self.v);
        let v1 = Self::partner(&v, &u);
        let y1 = v.at(1);
        let c1p = self
            .subnet_cycle_avoiding(1, &[v, v1])
            .ok_or_else(|| self.fail("cycle avoiding the pair"))?;
        let pool = labels_except(n, &[1]);
        let (k1, k2, m1) = if s == 1 {
            (Vec::new(), pool.clone(), None)
        } else {
            let m1 = self
                .smallest_target(&c1p, &[1, y1])
                .ok_or_else(|| self.fail("coupled target"))?;
            let (k1, k2) = Self::partition(&pool, s - 1, &[m1], &[y1]).ok_or_else(|| self.fail("labels"))?;
            (k1, k2, Some(m1))
        };
        let c2 = self
            .attach_edge(v, v1, &k2, y1)
            .ok_or_else(|| self.fail("cluster through the pinned edge"))?;
        let c1 = match m1 {
            None => c1p,
            Some(m1) => self.extend(&c1p, &k1, m1).ok_or_else(|| self.fail("extension"))?,
        };
        Ok((c1, c2))
    }

    fn case_1_3(&mut self) -> Res<(Cyc, Cyc)> {
        let (n, s, v) = (self.n, self.s, self.v);
        let (y1, y2) = (v.at(1), v.at(2));
        let c1p = self
            .subnet_cycle_avoiding(1, &[v])
            .ok_or_else(|| self.fail("cycle avoiding v"))?;
        if s == 1 {
            let c2 = self
                .vertex_cycle(v, &labels_except(n, &[1]), &[])
                .ok_or_else(|| self.fail("pinned-vertex cycle"))?;
            return Ok((c1p, c2));
        }
        let m1 = self
            .smallest_target(&c1p, &[1, y1, y2])
            .ok_or_else(|| self.fail("coupled target"))?;
        let t = smallest(n, n - s - 2, &[1, y1, y2, m1]).ok_or_else(|| self.fail("labels"))?;
        let k2 = union(&[y1, y2], &t);
        let k1 = labels_except(n, &union(&[1], &k2));
        let c2 = self
            .vertex_cycle(v, &k2, &[])
            .ok_or_else(|| self.fail("pinned-vertex cycle"))?;
        let c1 = self.extend(&c1p, &k1, m1).ok_or_else(|| self.fail("extension"))?;
        Ok((c1, c2))
    }

    fn case_1_4(&mut self) -> Res<(Cyc, Cyc)> {
        let (n, s, u, v) = (self.n, self.s, self.u, self.v);
        let v1 = Self::partner(&v, &u);
        let y1 = v.at(1);
        let w = s_plus(&v, 4);
        let w1 = apply_swap12(&w);
        let (vp, v1p) = self
            .coupled_into(v, v1, y1)
            .ok_or_else(|| self.fail("coupled edge of v"))?;
        let (wp, w1p) = self
            .coupled_into(w, w1, y1)
            .ok_or_else(|| self.fail("coupled edge of w"))?;
        let c1p = self
            .subnet_cycle_through(1, &[v, v1], w, w1)
            .ok_or_else(|| self.fail("cycle avoiding the pair"))?;
        let c1 = detour(&c1p, w, w1, wp, w1p).ok_or_else(|| self.fail("detour"))?;
        let c2p = self
            .subnet_cycle_through(y1, &[wp, w1p], vp, v1p)
            .ok_or_else(|| self.fail("second cycle avoiding a pair"))?;
        let c2 = splice(&[v, v1], (v, v1), &c2p, (vp, v1p)).ok_or_else(|| self.fail("splice"))?;
        let pool = labels_except(n, &[1, y1]);
        if s == 1 {
            let m2 = self
                .smallest_target(&c2, &[1, y1])
                .ok_or_else(|| self.fail("coupled target"))?;
            let c2 = self.extend(&c2, &pool, m2).ok_or_else(|| self.fail("extension"))?;
            return Ok((c1, c2));
        }
        let t1 = self.targets(&c1);
        let t2 = self.targets(&c2);
        for &m1 in t1.iter().filter(|t| pool.contains(t)) {
            for &m2 in t2.iter().filter(|t| pool.contains(t) && **t != m1) {
                let Some((k1, k2)) = Self::partition(&pool, s - 1, &[m1], &[m2]) else {
                    continue;
                };
                if let (Some(a), Some(b)) = (self.extend(&c1, &k1, m1), self.extend(&c2, &k2, m2)) {
                    return Ok((a, b));
                }
            }
        }
        Err(self.fail("extension"))
    }

    fn case_1_5(&mut self) -> Res<(Cyc, Cyc)> {
        let (n, s, u, v) = (self.n, self.s, self.u, self.v);
        let (y1, y2) = (v.at(1), v.at(2));
        if s == 1 {
            let c1p = self
                .subnet_cycle_avoiding(1, &[v])
                .ok_or_else(|| self.fail("cycle avoiding v"))?;
            let others = labels_except(n, &[1]);
            for ((w, w1), (wp, w1p)) in self.coupled_edges_outside(&c1p, &[1, y1, y2]) {
                let Some(c2) = self.vertex_cycle(v, &others, &[wp, w1p]) else {
                    continue;
                };
                let c1 = detour(&c1p, w, w1, wp, w1p).ok_or_else(|| self.fail("detour"))?;
                return Ok((c1, c2));
            }
            return Err(self.fail("cycle around the holes"));
        }
        let (x1, x2) = (u.at(1), u.at(2));
        let c2p = self
            .subnet_cycle_avoiding(1, &[u])
            .ok_or_else(|| self.fail("cycle avoiding u"))?;
        let m2 = self
            .smallest_target(&c2p, &[1, x1, x2])
            .ok_or_else(|| self.fail("coupled target"))?;
        let t = smallest(n, s - 2, &[1, x1, x2, m2]).ok_or_else(|| self.fail("labels"))?;
        let k1 = union(&[x1, x2], &t);
        let k2 = labels_except(n, &union(&[1], &k1));
        let c1 = self
            .vertex_cycle(u, &k1, &[])
            .ok_or_else(|| self.fail("pinned-vertex cycle"))?;
        let c2 = self.extend(&c2p, &k2, m2).ok_or_else(|| self.fail("extension"))?;
        Ok((c1, c2))
    }

    fn case_1_6(&mut self) -> Res<(Cyc, Cyc)> {
        let (n, s, u, v) = (self.n, self.s, self.u, self.v);
        let u1 = Self::partner(&u, &v);
        let top = u.at(1);
        let c2p = self
            .subnet_cycle_avoiding(1, &[u, u1])
            .ok_or_else(|| self.fail("cycle avoiding the pair"))?;
        let m2 = self
            .smallest_target(&c2p, &[1, top])
            .ok_or_else(|| self.fail("coupled target"))?;
        let pool = labels_except(n, &[1]);
        let (k1, k2) = Self::partition(&pool, s, &[top], &[m2]).ok_or_else(|| self.fail("labels"))?;
        let c1 = self
            .attach_edge(u, u1, &k1, top)
            .ok_or_else(|| self.fail("cluster through the pinned edge"))?;
        let c2 = self.extend(&c2p, &k2, m2).ok_or_else(|| self.fail("extension"))?;
        Ok((c1, c2))
    }

    // ---- v outside u's subnetwork ----------------------------------------

    fn case_2_1(&mut self) -> Res<(Cyc, Cyc)> {
        let (n, s, u) = (self.n, self.s, self.u);
        let i = self.v.last();
        let l1 = self.ell - (s - 1) * self.b;
        if s == 1 {
            let u1 = apply_swap12(&u);
            let (d1, d2) = self.sub_dcc(1, u, u1, l1)?;
            let k = d2.len();
            let iu = d2.iter().position(|x| *x == u1).unwrap();
            let others = labels_except(n, &[1]);
            for u2 in [d2[(iu + 1) % k], d2[(iu + k - 1) % k]] {
                let Some(c) = crate::lemma_cycles::edge_cycle(&u1, &u2, &others, &[]) else {
                    continue;
                };
                if let Some(c2) = merge_on_edge(&d2, &c, u1, u2) {
                    return Ok((d1, c2));
                }
            }
            return Err(self.fail("pinned-edge cycle"));
        }
        for j in labels_except(n, &[1, i]) {
            let Some(w) = self.pick_vertex(j, 1, |_| true) else {
                continue;
            };
            let zs: Vec<Permutation> = Region::subnet(n, j)
                .vertices()
                .into_iter()
                .filter(|z| z.at(1) == i && z.at(2) != 1)
                .take(4)
                .collect();
            for z in zs {
                let (d1, d2) = self.sub_dcc(j, w, z, l1)?;
                let pool = labels_except(n, &[j]);
                let t1 = self.targets(&d1);
                let t2 = self.targets(&d2);
                let mut m1s: Vec<u8> = t1.iter().copied().filter(|t| *t != j && *t != i).collect();
                m1s.sort_by_key(|t| (*t != 1, *t));
                let mut m2s: Vec<u8> = t2.iter().copied().filter(|t| *t != j && *t != 1).collect();
                m2s.sort_by_key(|t| (*t != i, *t));
                for &m1 in &m1s {
                    for &m2 in &m2s {
                        if m1 == m2 {
                            continue;
                        }
                        let Some((k1, k2)) = Self::partition(&pool, s - 1, &[1, m1], &[i, m2]) else {
                            continue;
                        };
                        let c1 = self.extend_at(&d1, w, &k1, m1);
                        let c2 = self.extend_at(&d2, z, &k2, m2);
                        if let (Some(c1), Some(c2)) = (c1, c2) {
                            return Ok((c1, c2));
                        }
                    }
                }
            }
        }
        Err(self.fail("extension"))
    }

    fn case_2_2(&mut self) -> Res<(Cyc, Cyc)> {
        let (n, s, u) = (self.n, self.s, self.u);
        let i = self.v.last();
        let w = self
            .pick_vertex(1, i, |x| *x != u && apply_swap12(x) != u)
            .ok_or_else(|| self.fail("pair in subnetwork 1"))?;
        let z = apply_swap12(&w);
        let c1p = self
            .subnet_cycle_avoiding(1, &[w, z])
            .ok_or_else(|| self.fail("cycle avoiding the pair"))?;
        let pool = labels_except(n, &[1]);
        let (k1, k2, m1) = if s == 1 {
            (Vec::new(), pool.clone(), None)
        } else {
            let m1 = self
                .smallest_target(&c1p, &[1, i])
                .ok_or_else(|| self.fail("coupled target"))?;
            let (k1, k2) = Self::partition(&pool, s - 1, &[m1], &[i]).ok_or_else(|| self.fail("labels"))?;
            (k1, k2, Some(m1))
        };
        let c2 = self
            .attach_edge(w, z, &k2, i)
            .ok_or_else(|| self.fail("cluster through the pinned edge"))?;
        let c1 = match m1 {
            None => c1p,
            Some(m1) => self.extend(&c1p, &k1, m1).ok_or_else(|| self.fail("extension"))?,
        };
        Ok((c1, c2))
    }

    fn case_2_3(&mut self) -> Res<(Cyc, Cyc)> {
        let (n, s, u) = (self.n, self.s, self.u);
        let i = self.v.last();
        let u1 = self
            .pick_vertex(1, i, |x| *x != u)
            .ok_or_else(|| self.fail("vertex in subnetwork 1"))?;
        let a1 = u1.at(2);
        let c1p = self
            .subnet_cycle_avoiding(1, &[u1])
            .ok_or_else(|| self.fail("cycle avoiding a vertex"))?;
        if s == 1 {
            let c2 = self
                .vertex_cycle(u1, &labels_except(n, &[1]), &[])
                .ok_or_else(|| self.fail("pinned-vertex cycle"))?;
            return Ok((c1p, c2));
        }
        let m1 = self
            .smallest_target(&c1p, &[1, i, a1])
            .ok_or_else(|| self.fail("coupled target"))?;
        let t = smallest(n, n - s - 2, &[1, i, a1, m1]).ok_or_else(|| self.fail("labels"))?;
        let k2 = union(&[i, a1], &t);
        let k1 = labels_except(n, &union(&[1], &k2));
        let c2 = self
            .vertex_cycle(u1, &k2, &[])
            .ok_or_else(|| self.fail("pinned-vertex cycle"))?;
        let c1 = self.extend(&c1p, &k1, m1).ok_or_else(|| self.fail("extension"))?;
        Ok((c1, c2))
    }

    fn case_2_4(&mut self) -> Res<(Cyc, Cyc)> {
        let (n, s, u, v) = (self.n, self.s, self.u, self.v);
        let i = v.last();
        let rest = smallest(n, s - 1, &[1, i]).ok_or_else(|| self.fail("labels"))?;
        let k1 = union(&[1], &rest);
        let k2 = labels_except(n, &k1);
        let c1 = self
            .cluster_cycle(&k1, u, apply_swap12(&u))
            .ok_or_else(|| self.fail("cluster cycle of u"))?;
        let c2 = self
            .cluster_cycle(&k2, v, apply_swap12(&v))
            .ok_or_else(|| self.fail("cluster cycle of v"))?;
        Ok((c1, c2))
    }

    fn case_2_5(&mut self) -> Res<(Cyc, Cyc)> {
        let (n, s, u) = (self.n, self.s, self.u);
        let i = self.v.last();
        if s == 1 {
            let up = self
                .pick_vertex(1, i, |x| *x != u)
                .ok_or_else(|| self.fail("vertex in subnetwork 1"))?;
            let a2 = up.at(2);
            let c1p = self
                .subnet_cycle_avoiding(1, &[up])
                .ok_or_else(|| self.fail("cycle avoiding a vertex"))?;
            let others = labels_except(n, &[1]);
            for ((w, w1), (wp, w1p)) in self.coupled_edges_outside(&c1p, &[1, i, a2]) {
                let Some(c2) = self.vertex_cycle(up, &others, &[wp, w1p]) else {
                    continue;
                };
                let c1 = detour(&c1p, w, w1, wp, w1p).ok_or_else(|| self.fail("detour"))?;
                return Ok((c1, c2));
            }
            return Err(self.fail("cycle around the holes"));
        }
        let a1 = labels_except(n, &[1, i])[0];
        let an = labels_except(n, &[1, a1, i])[0];
        let w = self
            .pick_vertex(a1, 1, |x| x.at(2) == an)
            .ok_or_else(|| self.fail("vertex w"))?;
        let c2p = self
            .subnet_cycle_avoiding(a1, &[w])
            .ok_or_else(|| self.fail("cycle avoiding w"))?;
        let m2 = self
            .smallest_target(&c2p, &[1, a1, an])
            .ok_or_else(|| self.fail("coupled target"))?;
        let t = smallest(n, s - 2, &[1, a1, an, i, m2]).ok_or_else(|| self.fail("labels"))?;
        let k1 = union(&[1, an], &t);
        let k2 = labels_except(n, &union(&[a1], &k1));
        let c1 = self
            .vertex_cycle(w, &k1, &[])
            .ok_or_else(|| self.fail("pinned-vertex cycle"))?;
        let c2 = self.extend(&c2p, &k2, m2).ok_or_else(|| self.fail("extension"))?;
        Ok((c1, c2))
    }

    fn case_2_6(&mut self) -> Res<(Cyc, Cyc)> {
        let (n, s, u) = (self.n, self.s, self.u);
        let i = self.v.last();
        let a1 = labels_except(n, &[1, i])[0];
        let w = self
            .pick_vertex(1, a1, |x| *x != u && apply_swap12(x) != u)
            .ok_or_else(|| self.fail("vertex w"))?;
        let w1 = apply_swap12(&w);
        let (wp, w1p) = self
            .coupled_into(w, w1, a1)
            .ok_or_else(|| self.fail("coupled edge of w"))?;
        let rest = smallest(n, s - 1, &[1, a1, i]).ok_or_else(|| self.fail("labels"))?;
        let k1 = union(&[1], &rest);
        let k2 = labels_except(n, &union(&[a1], &k1));
        let c1p = self
            .cluster_cycle(&k1, w, w1)
            .ok_or_else(|| self.fail("cluster cycle of u"))?;
        let c1 = detour(&c1p, w, w1, wp, w1p).ok_or_else(|| self.fail("detour"))?;
        let zs: Vec<Permutation> = Region::subnet(n, a1)
            .vertices()
            .into_iter()
            .filter(|z| {
                let z1 = apply_swap12(z);
                z.at(1) == i && ![wp, w1p].contains(z) && ![wp, w1p].contains(&z1)
            })
            .take(8)
            .collect();
        for z in zs {
            let z1 = apply_swap12(&z);
            let Some(c2p) = self.subnet_cycle_through(a1, &[wp, w1p], z, z1) else {
                continue;
            };
            let Some((zp, z1p)) = self.coupled_into(z, z1, i) else {
                continue;
            };
            let Some(d) = self.cluster_cycle(&k2, zp, z1p) else {
                continue;
            };
            if let Some(c2) = splice(&c2p, (z, z1), &d, (zp, z1p)) {
                return Ok((c1, c2));
            }
        }
        Err(self.fail("cycle avoiding the coupled pair"))
    }
}

/// Smallest `(w, z)` by rank with `w ∈ a`, `z ∈ b` and four distinct
/// leading symbols.
fn prefix_pair(a: &[Permutation], b: &[Permutation]) -> Option<(Permutation, Permutation)> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_unstable();
    b.sort_unstable();
    for w in &a {
        for z in &b {
            let (w1, w2, z1, z2) = (w.at(1), w.at(2), z.at(1), z.at(2));
            if w1 != z1 && w1 != z2 && w2 != z1 && w2 != z2 {
                return Some((*w, *z));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn open_and_splice() {
        let c = vec![p("1234"), p("3124"), p("2314")];
        assert_eq!(
            open_at(&c, p("1234"), p("3124")).unwrap(),
            vec![p("3124"), p("2314"), p("1234")]
        );
        assert_eq!(
            open_at(&c, p("3124"), p("1234")).unwrap(),
            vec![p("1234"), p("2314"), p("3124")]
        );
        assert!(open_at(&c, p("1234"), p("4321")).is_none());
    }
}
