use gsrel::weightmap::{eta, mu, psi, pushforward, total};
use gsrel::{Elem, NestedWeightMap, Semiring, WeightMap};
use proptest::prelude::*;

fn nat_map(size: usize) -> impl Strategy<Value = Vec<u64>> {
    prop::collection::vec(prop_oneof![Just(0u64), 0u64..6], size)
}

fn build(sr: &Semiring, ws: &[u64]) -> WeightMap {
    WeightMap::from_pairs(sr, ws.len(), ws.iter().enumerate().map(|(i, w)| (i, Elem::nat(*w)))).unwrap()
}

fn rat_map(sr: &Semiring, ws: &[(u64, u64)]) -> WeightMap {
    WeightMap::from_pairs(sr, ws.len(), ws.iter().enumerate().map(|(i, (a, b))| (i, Elem::rat(*a, *b)))).unwrap()
}

proptest! {
    #[test]
    fn unit_laws_nat(ws in (1usize..=4).prop_flat_map(nat_map)) {
        let n = Semiring::nat();
        let h = build(&n, &ws);
        let left = NestedWeightMap::from_pairs(&n, ws.len(), [(h.clone(), n.one())]).unwrap();
        prop_assert_eq!(mu(&n, &left), h.clone());
        let right = NestedWeightMap::from_pairs(
            &n,
            ws.len(),
            (0..ws.len()).map(|x| (eta(&n, ws.len(), x).unwrap(), Elem::nat(ws[x]))),
        )
        .unwrap();
        prop_assert_eq!(mu(&n, &right), h);
    }

    #[test]
    fn unit_laws_rational(ws in prop::collection::vec((0u64..5, 1u64..5), 1..=4)) {
        let q = Semiring::nonneg_rational();
        let h = rat_map(&q, &ws);
        let left = NestedWeightMap::from_pairs(&q, ws.len(), [(h.clone(), q.one())]).unwrap();
        prop_assert_eq!(mu(&q, &left), h.clone());
        let right = NestedWeightMap::from_pairs(
            &q,
            ws.len(),
            ws.iter().enumerate().map(|(x, (a, b))| (eta(&q, ws.len(), x).unwrap(), Elem::rat(*a, *b))),
        )
        .unwrap();
        prop_assert_eq!(mu(&q, &right), h);
    }

    #[test]
    fn flattening_matches_weighted_sum(
        inner in prop::collection::vec(nat_map(3), 1..=3),
        outer in prop::collection::vec(1u64..4, 3),
    ) {
        let n = Semiring::nat();
        let mut expect = [0u64; 3];
        let mut pairs = Vec::new();
        for (ws, o) in inner.iter().zip(&outer) {
            for (e, w) in expect.iter_mut().zip(ws) {
                *e += o * w;
            }
            pairs.push((build(&n, ws), Elem::nat(*o)));
        }
        let nested = NestedWeightMap::from_pairs(&n, 3, pairs).unwrap();
        prop_assert_eq!(mu(&n, &nested), build(&n, &expect));
    }

    #[test]
    fn product_matches_outer_product(h in nat_map(3), k in nat_map(2)) {
        let n = Semiring::nat();
        let expect: Vec<u64> = (0..6).map(|i| h[i / 2] * k[i % 2]).collect();
        prop_assert_eq!(psi(&n, &build(&n, &h), &build(&n, &k)), build(&n, &expect));
        prop_assert_eq!(total(&n, &build(&n, &expect)), Elem::nat(h.iter().sum::<u64>() * k.iter().sum::<u64>()));
    }

    #[test]
    fn pushforward_sums_fibres(h in nat_map(4), f in prop::collection::vec(0usize..3, 4)) {
        let n = Semiring::nat();
        let mut expect = vec![0u64; 3];
        for (x, w) in h.iter().enumerate() {
            expect[f[x]] += w;
        }
        prop_assert_eq!(pushforward(&n, &build(&n, &h), 3, |x| f[x]).unwrap(), build(&n, &expect));
    }
}
