use parke_taylor_core::perm::{
    acyclic_adjacencies, cyclic_adjacencies, enumerate_sigma, factorial, sigma_index, value_inversions,
    weak_order_leq, Pair, Permutation,
};
use proptest::prelude::*;
use proptest::sample::Index;

fn sigma(n: usize) -> impl Strategy<Value = Permutation> {
    any::<Index>().prop_map(move |i| {
        let all = enumerate_sigma(n).unwrap();
        all[i.index(all.len())].clone()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn cyclic_adjacencies_close_the_word(s in (4usize..=8).prop_flat_map(sigma)) {
        let n = s.len();
        let c = cyclic_adjacencies(&s);
        prop_assert_eq!(c.len(), n);
        let w = s.word();
        let closing = Pair::new(w[n - 1], w[0]);
        prop_assert!(c.count(closing) >= 1);
        let mut a = acyclic_adjacencies(w).entries().to_vec();
        a.push(closing);
        prop_assert_eq!(c, parke_taylor_core::perm::AdjacencyMultiset::from_pairs(a));
    }

    #[test]
    fn index_matches_enumeration(s in (4usize..=7).prop_flat_map(sigma)) {
        let all = enumerate_sigma(s.len()).unwrap();
        prop_assert_eq!(&all[sigma_index(&s)], &s);
    }

    #[test]
    fn weak_order_is_inversion_containment(a in sigma(6), b in sigma(6)) {
        let (ia, ib) = (value_inversions(&a, false), value_inversions(&b, false));
        let contained = ia.iter().all(|x| ib.contains(x));
        prop_assert_eq!(weak_order_leq(&a, &b).unwrap(), contained);
    }
}

#[test]
fn enumeration_is_lexicographic_and_complete() {
    for n in 3..=8 {
        let all = enumerate_sigma(n).unwrap();
        assert_eq!(all.len(), factorial(n - 2));
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert!(all.iter().all(|p| p.fixes_one_two()));
    }
}
