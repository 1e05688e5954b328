//! Exhaustive two-disjoint-cycle-cover search on `S_4^2`.
//!
//! Adjacency is rebuilt here from the generator rules, independently of the
//! topology module.

use thiserror::Error;

use crate::dcc::{CycleSlot, DccCover};
use crate::hamilton::Cycle;
use crate::permutation::Permutation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("the oracle supports n = 4 only, got {0}")]
    UnsupportedDimension(usize),
    #[error("length {0} outside [3, 12]")]
    BadLength(usize),
    #[error("u and v must differ")]
    SameVertex,
}

const NV: usize = 24;

struct Graph {
    verts: Vec<[u8; 4]>,
    adj: Vec<u32>,
    nbrs: Vec<Vec<usize>>,
}

fn graph() -> Graph {
    let mut verts = Vec::with_capacity(NV);
    for a in 1..=4u8 {
        for b in 1..=4u8 {
            for c in 1..=4u8 {
                for d in 1..=4u8 {
                    let x = [a, b, c, d];
                    let mut m = 0u8;
                    for s in x {
                        m |= 1 << s;
                    }
                    if m == 0b11110 {
                        verts.push(x);
                    }
                }
            }
        }
    }
    let index = |x: &[u8; 4]| verts.iter().position(|y| y == x).unwrap();
    let mut nbrs = vec![Vec::new(); NV];
    for (k, x) in verts.iter().enumerate() {
        let mut out = Vec::new();
        out.push([x[1], x[0], x[2], x[3]]);
        for i in 2..4 {
            let mut minus = *x;
            minus[0] = x[1];
            minus[1] = x[i];
            minus[i] = x[0];
            let mut plus = *x;
            plus[0] = x[i];
            plus[1] = x[0];
            plus[i] = x[1];
            out.push(minus);
            out.push(plus);
        }
        nbrs[k] = out.iter().map(index).collect();
    }
    let adj = nbrs.iter().map(|ns| ns.iter().fold(0u32, |m, &j| m | 1 << j)).collect();
    Graph { verts, adj, nbrs }
}

struct Search<'g> {
    g: &'g Graph,
    ell: usize,
    start: usize,
    other: usize,
    path: Vec<usize>,
    dist: Vec<u32>,
    complement: Vec<usize>,
}

impl Search<'_> {
    fn cycle_rec(&mut self, cur: usize, used: u32) -> bool {
        let depth = self.path.len();
        if depth == self.ell {
            if self.g.adj[cur] & 1 << self.start == 0 || self.path[1] > cur {
                return false;
            }
            let rest = !used & ((1 << NV) - 1);
            return self.complement_cycle(rest);
        }
        for k in 0..self.g.nbrs[cur].len() {
            let w = self.g.nbrs[cur][k];
            if used & 1 << w != 0 || w == self.other {
                continue;
            }
            if self.dist[w] as usize > self.ell - depth {
                continue;
            }
            self.path.push(w);
            if self.cycle_rec(w, used | 1 << w) {
                return true;
            }
            self.path.pop();
        }
        false
    }

    fn complement_cycle(&mut self, rest: u32) -> bool {
        let mut bits = rest;
        while bits != 0 {
            let x = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            if (self.g.adj[x] & rest).count_ones() < 2 {
                return false;
            }
        }
        self.complement.clear();
        self.complement.push(self.other);
        let start = self.other;
        self.ham_rec(start, start, 1 << start, rest)
    }

    fn ham_rec(&mut self, start: usize, cur: usize, seen: u32, rest: u32) -> bool {
        if seen == rest {
            return self.g.adj[cur] & 1 << start != 0;
        }
        for k in 0..self.g.nbrs[cur].len() {
            let w = self.g.nbrs[cur][k];
            if rest & 1 << w == 0 || seen & 1 << w != 0 {
                continue;
            }
            let left = rest & !seen & !(1 << w);
            let open = left | 1 << w | 1 << start;
            let mut dead = false;
            let mut bits = left;
            while bits != 0 {
                let x = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                if (self.g.adj[x] & open).count_ones() < 2 {
                    dead = true;
                    break;
                }
            }
            if dead {
                continue;
            }
            self.complement.push(w);
            if self.ham_rec(start, w, seen | 1 << w, rest) {
                return true;
            }
            self.complement.pop();
        }
        false
    }
}

/// Searches `ell`-cycles through `u` that avoid `v`, in neighbor order, and
/// returns the first one whose complement has a Hamiltonian cycle.
pub fn brute_force_dcc(u: &Permutation, v: &Permutation, ell: usize) -> Result<Option<DccCover>, OracleError> {
    if u.n() != 4 || v.n() != 4 {
        return Err(OracleError::UnsupportedDimension(u.n().max(v.n())));
    }
    if !(3..=12).contains(&ell) {
        return Err(OracleError::BadLength(ell));
    }
    if u == v {
        return Err(OracleError::SameVertex);
    }
    let g = graph();
    let find = |p: &Permutation| {
        let s = p.symbols();
        g.verts.iter().position(|x| x[..] == s[..]).unwrap()
    };
    let (start, other) = (find(u), find(v));
    let mut dist = vec![u32::MAX; NV];
    dist[start] = 0;
    let mut queue = std::collections::VecDeque::from([start]);
    while let Some(x) = queue.pop_front() {
        for &y in &g.nbrs[x] {
            if dist[y] == u32::MAX {
                dist[y] = dist[x] + 1;
                queue.push_back(y);
            }
        }
    }
    let mut s = Search {
        g: &g,
        ell,
        start,
        other,
        path: vec![start],
        dist,
        complement: Vec::new(),
    };
    if !s.cycle_rec(start, 1 << start) {
        return Ok(None);
    }
    let to_perm = |k: &usize| Permutation::from_symbols(&g.verts[*k]).unwrap();
    let c1 = Cycle::from_vec(s.path.iter().map(to_perm).collect());
    let c2 = Cycle::from_vec(s.complement.iter().map(to_perm).collect());
    Ok(Some(DccCover {
        c1,
        c2,
        u_cycle: CycleSlot::C1,
        v_cycle: CycleSlot::C2,
    }))
}
