use std::collections::{BTreeSet, HashSet};

use proptest::prelude::*;

use splitstar::dcc::{dcc_construct, CaseTag, DccRequest};
use splitstar::hamilton::{ham_path, Scope};
use splitstar::permutation::{factorial, Permutation};
use splitstar::topology::{adjacent, neighbors, relabel};
use splitstar::verify::validate_dcc;

fn perm(n: usize) -> impl Strategy<Value = Permutation> {
    (0..factorial(n)).prop_map(move |r| Permutation::unrank(r, n).unwrap())
}

fn instance() -> impl Strategy<Value = (usize, Permutation, Permutation, usize)> {
    (4usize..=6).prop_flat_map(|n| {
        let max = factorial(n) as usize / 2;
        (Just(n), perm(n), perm(n), 3..=max)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn covers_validate((n, u, v, ell) in instance()) {
        prop_assume!(u != v);
        let req = DccRequest::new(n, u, v, ell).unwrap();
        let (cover, trace) = dcc_construct(&req).unwrap();
        prop_assert!(validate_dcc(n, &cover, &u, &v, ell).ok);
        prop_assert_eq!(cover.c1.len(), ell);
        prop_assert!(cover.c1.contains(&u));
        prop_assert!(cover.c2.contains(&v));
        let head_ok = match trace[0] {
            CaseTag::Step { dim, .. } => dim == n,
            CaseTag::Base { .. } => n == 4,
        };
        prop_assert!(head_ok);
    }

    #[test]
    fn relabeling_commutes((n, u, v, ell) in instance(), r in any::<u64>()) {
        prop_assume!(u != v);
        let sigma = Permutation::unrank(r % factorial(n), n).unwrap();
        let (a, ta) = dcc_construct(&DccRequest::new(n, u, v, ell).unwrap()).unwrap();
        let su = relabel(&sigma, &u).unwrap();
        let sv = relabel(&sigma, &v).unwrap();
        let (b, tb) = dcc_construct(&DccRequest::new(n, su, sv, ell).unwrap()).unwrap();
        prop_assert_eq!(a.relabeled(&sigma), b);
        prop_assert_eq!(ta, tb);
    }

    #[test]
    fn rank_round_trip(n in 3usize..=12, r in any::<u64>()) {
        let r = r % factorial(n);
        let p = Permutation::unrank(r, n).unwrap();
        prop_assert_eq!(p.rank(), r);
        prop_assert_eq!(p.to_text().parse::<Permutation>().unwrap(), p);
        prop_assert_eq!(p.compose(&p.inverse()).unwrap(), Permutation::identity(n));
    }

    #[test]
    fn neighbors_are_symmetric(x in (3usize..=9).prop_flat_map(perm)) {
        let ns = neighbors(&x);
        prop_assert_eq!(ns.len(), 2 * x.n() - 3);
        for (y, kind) in ns {
            prop_assert!(adjacent(&y, &x));
            let back = neighbors(&y);
            prop_assert!(back.contains(&(x, kind.reversed())));
        }
    }

    #[test]
    fn whole_graph_paths((a, b) in (perm(5), perm(5))) {
        prop_assume!(a != b);
        let scope = Scope::WholeGraph(5);
        let p = ham_path(&scope, &a, &b).unwrap();
        let vs = p.vertices();
        prop_assert_eq!(vs.len(), 120);
        prop_assert_eq!((vs[0], vs[119]), (a, b));
        prop_assert_eq!(vs.iter().collect::<HashSet<_>>().len(), 120);
        prop_assert!(vs.windows(2).all(|w| adjacent(&w[0], &w[1])));
    }
}

#[test]
fn every_case_occurs_at_n5() {
    let u = Permutation::identity(5);
    let mut seen = BTreeSet::new();
    for v in Permutation::all(5).skip(1) {
        for ell in 3..=60 {
            let (_, trace) = dcc_construct(&DccRequest::new(5, u, v, ell).unwrap()).unwrap();
            if let CaseTag::Step { top, sub, .. } = trace[0] {
                seen.insert((top, sub));
            }
        }
    }
    let all: BTreeSet<(u8, u8)> = (1..=2).flat_map(|t| (1..=6).map(move |s| (t, s))).collect();
    assert_eq!(seen, all);
}
