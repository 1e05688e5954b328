//! Structural validators, the `n = 4` brute-force oracle and edge-cover
//! checks.

mod oracle;

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::dcc::{CycleSlot, DccCover};
use crate::hamilton::{Cycle, Scope};
use crate::permutation::{factorial, Permutation};
use crate::topology::{adjacent, neighbors};

pub use oracle::{brute_force_dcc, OracleError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ViolationCode {
    NonAdjacentStep,
    RepeatedVertex,
    WrongLength,
    CoverageGap,
    CoverageOverlap,
    MembershipMiss,
}

impl fmt::Display for ViolationCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub code: ViolationCode,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub ok: bool,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    fn from_violations(violations: Vec<Violation>) -> Self {
        ValidationReport {
            ok: violations.is_empty(),
            violations,
        }
    }

    pub fn has(&self, code: ViolationCode) -> bool {
        self.violations.iter().any(|v| v.code == code)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ok {
            return f.write_str("ok");
        }
        for (j, v) in self.violations.iter().enumerate() {
            if j > 0 {
                f.write_str("\n")?;
            }
            write!(f, "{}: {}", v.code, v.detail)?;
        }
        Ok(())
    }
}

struct Collector(Vec<Violation>);

impl Collector {
    fn push(&mut self, code: ViolationCode, detail: impl Into<String>) {
        self.0.push(Violation {
            code,
            detail: detail.into(),
        });
    }
}

/// Optional constraints for [`validate_cycle`].
#[derive(Debug, Default, Clone)]
pub struct CycleConstraints<'a> {
    pub scope: Option<&'a Scope>,
    pub required_vertices: &'a [Permutation],
    pub forbidden_vertices: &'a [Permutation],
    pub required_edges: &'a [(Permutation, Permutation)],
}

fn check_cycle_shape(c: &[Permutation], out: &mut Collector) {
    if c.len() < 3 {
        out.push(
            ViolationCode::WrongLength,
            format!("cycle has {} vertices, fewer than 3", c.len()),
        );
    }
    let mut seen = HashSet::with_capacity(c.len());
    for x in c {
        if !seen.insert(*x) {
            out.push(ViolationCode::RepeatedVertex, x.to_string());
        }
    }
    let k = c.len();
    if k >= 2 {
        for j in 0..k {
            let (a, b) = (c[j], c[(j + 1) % k]);
            if k == 2 && j == 1 {
                break;
            }
            if !adjacent(&a, &b) {
                out.push(ViolationCode::NonAdjacentStep, format!("({a}, {b})"));
            }
        }
    }
}

/// Checks simplicity, adjacency (including the closing step), required
/// and forbidden vertices, required edges and, with a scope, exact
/// coverage of the scope minus the forbidden vertices.
pub fn validate_cycle(c: &[Permutation], k: &CycleConstraints<'_>) -> ValidationReport {
    let mut out = Collector(Vec::new());
    check_cycle_shape(c, &mut out);
    let set: HashSet<Permutation> = c.iter().copied().collect();
    for x in k.required_vertices {
        if !set.contains(x) {
            out.push(ViolationCode::MembershipMiss, format!("{x} missing"));
        }
    }
    for x in k.forbidden_vertices {
        if set.contains(x) {
            out.push(ViolationCode::CoverageOverlap, format!("forbidden {x} present"));
        }
    }
    let cyc = Cycle::from_vec(c.to_vec());
    for (a, b) in k.required_edges {
        if c.len() < 2 || !cyc.contains_edge(a, b) {
            out.push(ViolationCode::MembershipMiss, format!("edge ({a}, {b}) missing"));
        }
    }
    if let Some(scope) = k.scope {
        for x in c {
            if !scope.contains(x) {
                out.push(ViolationCode::CoverageOverlap, format!("{x} outside scope"));
            }
        }
        for x in scope.vertices() {
            if !set.contains(&x) && !k.forbidden_vertices.contains(&x) {
                out.push(ViolationCode::CoverageGap, format!("{x} not covered"));
            }
        }
    }
    ValidationReport::from_violations(out.0)
}

/// Checks that `cover` is a two-disjoint-cycle cover of `S_n^2` with
/// lengths `{ell, n! - ell}` holding `u` and `v` as claimed.
pub fn validate_dcc(n: usize, cover: &DccCover, u: &Permutation, v: &Permutation, ell: usize) -> ValidationReport {
    let mut out = Collector(Vec::new());
    let total = factorial(n) as usize;
    let (c1, c2) = (cover.c1.vertices(), cover.c2.vertices());
    for c in [c1, c2] {
        check_cycle_shape(c, &mut out);
        if let Some(x) = c.iter().find(|x| x.n() != n) {
            out.push(ViolationCode::CoverageOverlap, format!("{x} has the wrong dimension"));
        }
    }
    let s1: HashSet<_> = c1.iter().copied().collect();
    let s2: HashSet<_> = c2.iter().copied().collect();
    let mut both: Vec<&Permutation> = s1.intersection(&s2).collect();
    both.sort_unstable();
    for x in both {
        out.push(ViolationCode::CoverageOverlap, format!("{x} in both cycles"));
    }
    if n <= 8 {
        let mut gaps = 0usize;
        for x in Permutation::all(n) {
            if !s1.contains(&x) && !s2.contains(&x) {
                if gaps < 16 {
                    out.push(ViolationCode::CoverageGap, format!("{x} not covered"));
                }
                gaps += 1;
            }
        }
        if gaps > 16 {
            out.push(ViolationCode::CoverageGap, format!("{} more uncovered", gaps - 16));
        }
    } else if s1.len() + s2.len() < total {
        out.push(ViolationCode::CoverageGap, "cycles do not reach n! vertices");
    }
    let lens = [c1.len(), c2.len()];
    let ok_len = (lens[0] == ell && lens[1] == total - ell) || (lens[1] == ell && lens[0] == total - ell);
    if !ok_len {
        out.push(
            ViolationCode::WrongLength,
            format!(
                "lengths {} + {}, expected {{{ell}, {}}}",
                lens[0],
                lens[1],
                total.saturating_sub(ell)
            ),
        );
    }
    let cycle = |slot: CycleSlot| match slot {
        CycleSlot::C1 => &s1,
        CycleSlot::C2 => &s2,
    };
    if !cycle(cover.u_cycle).contains(u) {
        out.push(
            ViolationCode::MembershipMiss,
            format!("u = {u} not in {:?}", cover.u_cycle),
        );
    }
    if !cycle(cover.v_cycle).contains(v) {
        out.push(
            ViolationCode::MembershipMiss,
            format!("v = {v} not in {:?}", cover.v_cycle),
        );
    }
    if cover.u_cycle == cover.v_cycle {
        out.push(ViolationCode::MembershipMiss, "u and v claimed in the same cycle");
    }
    ValidationReport::from_violations(out.0)
}

/// Checks that every edge of `scope - removed` lies on some cycle of the
/// family.
pub fn edge_cover_check(family: &[Cycle], scope: &Scope, removed: &[Permutation]) -> ValidationReport {
    let mut out = Collector(Vec::new());
    let mut covered: HashSet<(Permutation, Permutation)> = HashSet::new();
    for c in family {
        for (a, b) in c.edges() {
            covered.insert((a.min(b), a.max(b)));
        }
    }
    for x in scope.vertices() {
        if removed.contains(&x) {
            continue;
        }
        for (y, _) in neighbors(&x) {
            if x < y && scope.contains(&y) && !removed.contains(&y) && !covered.contains(&(x, y)) {
                out.push(ViolationCode::CoverageGap, format!("edge ({x}, {y}) not covered"));
            }
        }
    }
    ValidationReport::from_violations(out.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::topology::Cluster;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn ps(xs: &[&str]) -> Vec<Permutation> {
        xs.iter().map(|x| p(x)).collect()
    }

    #[test]
    fn cycle_examples() {
        let none = CycleConstraints::default();
        assert!(validate_cycle(&ps(&["1234", "3124", "2314"]), &none).ok);
        let r = validate_cycle(&ps(&["1234", "1243", "2134"]), &none);
        assert!(r.has(ViolationCode::NonAdjacentStep));
        assert!(r.violations[0].detail.contains("(1234, 1243)"));
        let r = validate_cycle(&ps(&["1234", "2134"]), &none);
        assert!(r.has(ViolationCode::WrongLength));
    }

    #[test]
    fn scope_and_required_checks() {
        let scope = Scope::Subnet(4, crate::topology::SubnetId(4));
        let c = crate::hamilton::ham_cycle_minus_vertex(&scope, &p("1234")).unwrap();
        let removed = [p("1234")];
        let k = CycleConstraints {
            scope: Some(&scope),
            forbidden_vertices: &removed,
            ..Default::default()
        };
        assert!(validate_cycle(c.vertices(), &k).ok);
        let k = CycleConstraints {
            scope: Some(&scope),
            ..Default::default()
        };
        assert!(validate_cycle(c.vertices(), &k).has(ViolationCode::CoverageGap));
        let want = [p("1234")];
        let k = CycleConstraints {
            required_vertices: &want,
            ..Default::default()
        };
        assert!(validate_cycle(c.vertices(), &k).has(ViolationCode::MembershipMiss));
    }

    #[test]
    fn edge_cover_examples() {
        let scope = Scope::Cluster(Cluster::new(4, vec![4]).unwrap());
        let r = edge_cover_check(&[], &scope, &[]);
        assert!(r.has(ViolationCode::CoverageGap));
    }
}
