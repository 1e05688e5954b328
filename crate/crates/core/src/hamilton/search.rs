//! Exhaustive Hamiltonian path search on `S_3^2` and `S_4^2`.
//!
//! Vertices are addressed by lexicographic rank, vertex sets by bitmask.
//! Results are memoized per thread under a canonical relabeling that maps
//! the start vertex to the identity, so one table serves every start.

use std::cell::RefCell;
use std::collections::HashMap;
use std::rc::Rc;
use std::sync::OnceLock;

use crate::permutation::{factorial, Permutation};
use crate::topology::{kinds, step};

/// Search nodes allowed per query before giving up.
const NODE_BUDGET: u64 = 4_000_000;

pub(crate) struct Tables {
    pub perms: Vec<Permutation>,
    /// Neighbor ranks in generator order.
    pub adj: Vec<Vec<u8>>,
    pub nbmask: Vec<u32>,
}

fn build(d: usize) -> Tables {
    let nv = factorial(d) as usize;
    let perms: Vec<Permutation> = (0..nv as u64).map(|r| Permutation::unrank_raw(r, d)).collect();
    let adj: Vec<Vec<u8>> = perms
        .iter()
        .map(|p| kinds(d).map(|k| step(p, k).rank() as u8).collect())
        .collect();
    let nbmask = adj.iter().map(|ns| ns.iter().fold(0u32, |m, &w| m | 1 << w)).collect();
    Tables { perms, adj, nbmask }
}

pub(crate) fn tables(d: usize) -> &'static Tables {
    static T3: OnceLock<Tables> = OnceLock::new();
    static T4: OnceLock<Tables> = OnceLock::new();
    match d {
        3 => T3.get_or_init(|| build(3)),
        4 => T4.get_or_init(|| build(4)),
        _ => panic!("no search tables for dimension {d}"),
    }
}

/// A Hamiltonian path query in canonical coordinates: the path starts at
/// rank 0 (the identity).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub(crate) struct Query {
    pub d: u8,
    pub allowed: u32,
    pub end: u8,
    /// Edge that must appear on the path, as ranks.
    pub req: Option<(u8, u8)>,
}

type Memo = HashMap<Query, Option<Rc<[u8]>>>;

thread_local! {
    static MEMO: RefCell<Memo> = RefCell::new(HashMap::new());
}

pub(crate) fn solve(q: Query) -> Option<Rc<[u8]>> {
    if let Some(hit) = MEMO.with(|m| m.borrow().get(&q).cloned()) {
        return hit;
    }
    let out = run(q).map(Rc::from);
    MEMO.with(|m| m.borrow_mut().insert(q, out.clone()));
    out
}

struct Dfs<'a> {
    t: &'a Tables,
    allowed: u32,
    end: u8,
    req: Option<(u8, u8)>,
    path: Vec<u8>,
    budget: u64,
}

fn run(q: Query) -> Option<Vec<u8>> {
    let t = tables(q.d as usize);
    let start = 0u8;
    if q.allowed & 1 == 0 || q.allowed & (1 << q.end) == 0 {
        return None;
    }
    if q.end == start {
        return (q.allowed == 1 && q.req.is_none()).then(|| vec![0]);
    }
    let mut dfs = Dfs {
        t,
        allowed: q.allowed,
        end: q.end,
        req: q.req,
        path: vec![start],
        budget: NODE_BUDGET,
    };
    if dfs.rec(start, 1) {
        Some(dfs.path)
    } else {
        None
    }
}

impl Dfs<'_> {
    fn partner(&self, x: u8) -> Option<u8> {
        match self.req {
            Some((a, b)) if a == x => Some(b),
            Some((a, b)) if b == x => Some(a),
            _ => None,
        }
    }

    fn has_req(&self) -> bool {
        match self.req {
            None => true,
            Some((a, b)) => self
                .path
                .windows(2)
                .any(|w| (w[0] == a && w[1] == b) || (w[0] == b && w[1] == a)),
        }
    }

    fn rec(&mut self, cur: u8, visited: u32) -> bool {
        if visited == self.allowed {
            return cur == self.end && self.has_req();
        }
        if cur == self.end || self.budget == 0 {
            return false;
        }
        self.budget -= 1;
        let free = self.allowed & !visited;
        let prev = if self.path.len() >= 2 {
            Some(self.path[self.path.len() - 2])
        } else {
            None
        };
        let forced = match self.partner(cur) {
            Some(p) if prev != Some(p) => Some(p),
            _ => None,
        };
        for k in 0..self.t.adj[cur as usize].len() {
            let w = self.t.adj[cur as usize][k];
            if free & (1 << w) == 0 {
                continue;
            }
            if forced.is_some_and(|f| f != w) {
                continue;
            }
            let rest = free & !(1 << w);
            if !self.feasible(w, rest) {
                continue;
            }
            self.path.push(w);
            if self.rec(w, visited | 1 << w) {
                return true;
            }
            self.path.pop();
            if self.budget == 0 {
                return false;
            }
        }
        false
    }

    /// Cheap necessary conditions for completing a path from `head` through
    /// every vertex of `rest` to the end vertex.
    fn feasible(&self, head: u8, rest: u32) -> bool {
        if rest == 0 {
            return head == self.end;
        }
        if head == self.end || rest & (1 << self.end) == 0 {
            return false;
        }
        let open = rest | 1 << head;
        let mut bits = rest;
        while bits != 0 {
            let x = bits.trailing_zeros();
            bits &= bits - 1;
            let deg = (self.t.nbmask[x as usize] & open).count_ones();
            let need = if x as u8 == self.end { 1 } else { 2 };
            if deg < need {
                return false;
            }
        }
        let mut reach = 1u32 << head;
        loop {
            let mut next = reach;
            let mut b = reach;
            while b != 0 {
                let x = b.trailing_zeros();
                b &= b - 1;
                next |= self.t.nbmask[x as usize] & open;
            }
            if next == reach {
                break;
            }
            reach = next;
        }
        reach == open
    }
}
