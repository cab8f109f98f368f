mod common;

use common::{random_family, random_oriented, random_tournament};
use invlab_core::construct::{blow_up, c3, dijoin, k_join, qn, qn_family, transitive};
use invlab_core::digraph::{
    assignment_to_family, enumerate_tournaments, family_to_assignment, Digraph, InversionFamily, VertexSet,
};
use invlab_core::solver::{inv_value, SearchOptions};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn oriented(max_n: usize) -> impl Strategy<Value = Digraph> {
    (0..=max_n, any::<u64>()).prop_map(|(n, seed)| random_oriented(&mut ChaCha8Rng::seed_from_u64(seed), n))
}

fn graph_and_family(max_n: usize, max_k: usize) -> impl Strategy<Value = (Digraph, InversionFamily)> {
    (0..=max_n, 0..=max_k, any::<u64>()).prop_map(|(n, k, seed)| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = random_oriented(&mut rng, n);
        let f = random_family(&mut rng, n, k);
        (d, f)
    })
}

proptest! {
    #[test]
    fn invert_is_an_involution((d, f) in graph_and_family(12, 1)) {
        let x = f.sets.first().copied().unwrap_or(VertexSet::EMPTY);
        prop_assert_eq!(d.invert(x).invert(x), d);
    }

    #[test]
    fn family_order_does_not_matter((d, f) in graph_and_family(12, 6), seed in any::<u64>()) {
        let mut shuffled = f.clone();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for i in (1..shuffled.sets.len()).rev() {
            shuffled.sets.swap(i, rng.gen_range(0..=i));
        }
        prop_assert_eq!(d.apply_family(&f).unwrap(), d.apply_family(&shuffled).unwrap());
    }

    #[test]
    fn assignment_path_matches_family_path((d, f) in graph_and_family(14, 8)) {
        let a = family_to_assignment(&f, d.order()).unwrap();
        prop_assert_eq!(d.apply_assignment(&a).unwrap(), d.apply_family(&f).unwrap());
        prop_assert_eq!(d.apply_family_parity(&f).unwrap(), d.apply_family(&f).unwrap());
        prop_assert_eq!(assignment_to_family(&a), f);
    }

    #[test]
    fn reverse_commutes_with_inversion((d, f) in graph_and_family(10, 4)) {
        prop_assert_eq!(d.reverse().apply_family(&f).unwrap(), d.apply_family(&f).unwrap().reverse());
    }

    #[test]
    fn reversed_dijoin_swaps_sides(l in oriented(5), r in oriented(5)) {
        let lhs = dijoin(&l, &r).unwrap().reverse();
        let rhs = dijoin(&r.reverse(), &l.reverse()).unwrap();
        // same digraph up to moving the right block in front
        let (a, b) = (l.order(), r.order());
        let perm: Vec<usize> = (a..a + b).chain(0..a).collect();
        prop_assert_eq!(lhs.induced(&perm), rhs);
    }

    #[test]
    fn blow_up_arc_count(seed in any::<u64>(), h in 1usize..5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let host = random_oriented(&mut rng, h);
        let parts: Vec<Digraph> = (0..h).map(|_| {
            let n = rng.gen_range(0..4);
            random_oriented(&mut rng, n)
        }).collect();
        let g = blow_up(&host, &parts).unwrap();
        let inner: usize = parts.iter().map(|p| p.arc_count()).sum();
        let between: usize = host.arcs().map(|(u, v)| parts[u].order() * parts[v].order()).sum();
        prop_assert_eq!(g.arc_count(), inner + between);
        prop_assert_eq!(g.order(), parts.iter().map(|p| p.order()).sum::<usize>());
    }

    #[test]
    fn random_tournaments_are_reverse_invariant(seed in any::<u64>(), n in 0usize..7) {
        let d = random_tournament(&mut ChaCha8Rng::seed_from_u64(seed), n);
        let opts = SearchOptions::sequential();
        let v = inv_value(&d, &opts).unwrap();
        prop_assert!(v <= n.saturating_sub(1) / 2 + 1);
        prop_assert_eq!(v, inv_value(&d.reverse(), &opts).unwrap());
    }
}

#[test]
fn induced_subgraphs_never_need_more_sets() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0001);
    let opts = SearchOptions::sequential();
    for _ in 0..200 {
        let n = rng.gen_range(1..=7);
        let d = random_oriented(&mut rng, n);
        let keep: Vec<usize> = (0..n).filter(|_| rng.gen::<bool>()).collect();
        let sub = d.induced(&keep);
        assert!(inv_value(&sub, &opts).unwrap() <= inv_value(&d, &opts).unwrap(), "{d:?} on {keep:?}");
    }
}

#[test]
fn reverse_invariance_on_small_tournaments() {
    let opts = SearchOptions::sequential();
    for n in 0..=4 {
        for d in enumerate_tournaments(n).unwrap() {
            assert_eq!(inv_value(&d, &opts).unwrap(), inv_value(&d.reverse(), &opts).unwrap());
        }
    }
}

#[test]
fn named_values() {
    let opts = SearchOptions::default();
    let v = |d: &Digraph| inv_value(d, &opts).unwrap();
    assert_eq!(v(&k_join(&[c3(), c3(), c3()]).unwrap()), 3);
    assert_eq!(v(&dijoin(&c3(), &dijoin(&c3(), &c3()).unwrap()).unwrap()), 3);
    assert_eq!(v(&blow_up(&c3(), &[c3(), c3(), c3()]).unwrap()), 4);
    assert_eq!(v(&transitive(7)), 0);
}

#[test]
fn qn_family_decycles() {
    for n in 0..=20 {
        let f = qn_family(n);
        assert_eq!(f.len(), n.saturating_sub(1) / 2);
        assert!(qn(n).apply_family(&f).unwrap().is_acyclic(), "n = {n}");
    }
}
