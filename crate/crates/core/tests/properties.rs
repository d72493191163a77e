use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use cyclic_blocks::cyclotomic::{decompose, reduce_canonical, ClassFunction, CyclicCharacter, CyclotomicInteger};
use cyclic_blocks::local::{self, CyclicGroup, EndoPermParams};
use cyclic_blocks::oracle::random_descriptor;
use cyclic_blocks::report::{all_vertices, build_table, ResultTable};
use cyclic_blocks::tree::{Block, BlockDescriptor, SignPolicy};

const ORDERS: [usize; 6] = [3, 5, 7, 9, 25, 27];

fn element() -> impl Strategy<Value = (usize, Vec<i64>, Vec<i64>)> {
    prop::sample::select(&ORDERS[..]).prop_flat_map(|order| {
        let coeffs = prop::collection::vec(-20i64..=20, order);
        (Just(order), coeffs.clone(), coeffs)
    })
}

fn group() -> impl Strategy<Value = CyclicGroup> {
    (prop::sample::select(vec![3u64, 5, 7, 11]), 1u32..=4).prop_map(|(p, n)| CyclicGroup::new(p, n).unwrap())
}

fn block_params(g: CyclicGroup) -> impl Strategy<Value = (CyclicGroup, EndoPermParams)> {
    let n = g.n();
    prop::collection::btree_set(1..n.max(2), 0..n as usize).prop_map(move |set| {
        let indices: Vec<u32> = set.into_iter().filter(|&x| x < n).collect();
        (g, EndoPermParams::new(indices).unwrap())
    })
}

proptest! {
    #[test]
    fn reduction_is_idempotent_and_multiplicative((order, a, b) in element()) {
        let x = CyclotomicInteger::from_i64s(order, &a).unwrap();
        let y = CyclotomicInteger::from_i64s(order, &b).unwrap();
        let rx = reduce_canonical(&x);
        let rrx = reduce_canonical(&rx);
        prop_assert_eq!(rrx.coeffs(), rx.coeffs());
        let lhs = reduce_canonical(&(&x * &y));
        let rhs = reduce_canonical(&(&rx * &reduce_canonical(&y)));
        prop_assert_eq!(lhs.coeffs(), rhs.coeffs());
    }

    #[test]
    fn decompose_round_trip(mults in prop::sample::select(&ORDERS[..]).prop_flat_map(|o| prop::collection::vec(-4i64..=4, o))) {
        let chi = CyclicCharacter::from_mults(mults);
        let f = ClassFunction::from_character(&chi).unwrap();
        prop_assert_eq!(decompose(&f).unwrap(), chi);
    }

    #[test]
    fn cap_dim_matches_recursion((g, w) in group().prop_flat_map(block_params), i in 1u32..=4) {
        prop_assume!(i <= g.n());
        prop_assert_eq!(local::cap_dim(&w, &g, i).unwrap(), local::cap_dim_recursive(&w, &g, i).unwrap());
    }

    #[test]
    fn heller_is_an_involution(g in group(), i in 0u32..4, r in 1u64..1000) {
        prop_assume!(i < g.n());
        let quotient = g.index_of(i);
        let r = 1 + r % (quotient - 1);
        let once = local::heller_relative(&g, i, r).unwrap();
        let twice = local::heller_relative(&g, i, once.dim).unwrap();
        prop_assert_eq!(twice.dim, r);
    }

    #[test]
    fn descriptor_and_table_round_trip(seed in any::<u64>(), p in prop::sample::select(vec![5u64, 7, 13]), n in 1u32..=2) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let e = [2u64, 4].into_iter().find(|e| (p - 1) % e == 0).unwrap();
        let desc = random_descriptor(&mut rng, p, n, e);
        let back = BlockDescriptor::from_json(&desc.to_json()).unwrap();
        prop_assert_eq!(&back, &desc);
        let block = Block::new(desc, SignPolicy::Strict).unwrap();
        let table = build_table(&block, &all_vertices(&block));
        let parsed: ResultTable = serde_json::from_str(&table.to_json()).unwrap();
        prop_assert_eq!(parsed, table);
    }
}
