use proptest::prelude::*;

use packmm_core::harness::schoolbook_matmul;
use packmm_core::kronmul::{encode_lhs, encode_rhs, packed_product};
use packmm_core::{mmm, trace_illustration, MatrixNat, MmmConfig, OpCounter, Radix, SlotLayout};

fn radix() -> impl Strategy<Value = Radix> {
    prop_oneof![Just(Radix::DECIMAL), Just(Radix::POW2_16), Just(Radix::POW2_32), Just(Radix::new(7).unwrap())]
}

fn pair(max_n: usize, max_entry: u128) -> impl Strategy<Value = (MatrixNat, MatrixNat)> {
    (1..=max_n).prop_flat_map(move |n| {
        let entries = prop::collection::vec(0..=max_entry, n * n);
        (entries.clone(), entries)
            .prop_map(move |(a, b)| (MatrixNat::new(n, a).unwrap(), MatrixNat::new(n, b).unwrap()))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn packed_product_is_a_slot_bijection((a, b) in pair(5, 5000), r in radix()) {
        let layout = SlotLayout::for_instance(&a, &b, r).unwrap();
        let mut ctr = OpCounter::new();
        let x = packed_product(
            &encode_lhs(&a, &layout, &mut ctr).unwrap(),
            &encode_rhs(&b, &layout, &mut ctr).unwrap(),
            &mut ctr,
        ).unwrap();
        let avec: Vec<u128> = a.row_major().collect();
        let bvec: Vec<u128> = b.col_major().collect();
        let nn = a.n() * a.n();
        let p = layout.p();
        let slots = x.len().div_ceil(p);
        prop_assert!(slots <= layout.product_slot_count());
        for s in 0..layout.product_slot_count() {
            let (i, j) = (s / nn, s % nn);
            prop_assert_eq!(x.slot(s, p).to_u128(), Some(avec[i] * bvec[j]));
        }
    }

    #[test]
    fn mmm_matches_schoolbook((a, b) in pair(8, 1_000_000), r in radix()) {
        let out = mmm(&a, &b, &MmmConfig::with_radix(r)).unwrap();
        prop_assert_eq!(&out.product, &schoolbook_matmul(&a, &b).unwrap());
        let n = a.n() as u64;
        prop_assert_eq!(out.counter.total(), 3 * n * n + 2 * n - 1);
    }

    #[test]
    fn identity_is_neutral((a, _) in pair(6, u32::MAX as u128), r in radix()) {
        let id = MatrixNat::identity(a.n());
        prop_assert_eq!(&mmm(&a, &id, &MmmConfig::with_radix(r)).unwrap().product, &a);
        prop_assert_eq!(&mmm(&id, &a, &MmmConfig::with_radix(r)).unwrap().product, &a);
    }

    #[test]
    fn trace_agrees_with_template((a, b) in pair(5, 999)) {
        let t = trace_illustration(&a, &b, None).unwrap();
        let out = mmm(&a, &b, &MmmConfig::default()).unwrap();
        prop_assert_eq!(&t.decoded, &out.product);
        prop_assert_eq!(t.additions.len(), a.n() - 1);
        let n = a.n();
        prop_assert_eq!(t.lhs.len(), n * n * n * t.p);
    }

    #[test]
    fn karatsuba_threshold_does_not_change_results((a, b) in pair(4, 1_000_000), threshold in 2usize..64) {
        let cfg = MmmConfig { karatsuba_threshold: threshold, ..MmmConfig::with_radix(Radix::DECIMAL) };
        prop_assert_eq!(mmm(&a, &b, &cfg).unwrap().product, schoolbook_matmul(&a, &b).unwrap());
    }
}

#[test]
fn encoded_lengths_follow_the_field_layout() {
    // Last entries nonzero, so the top fields are occupied.
    let a = MatrixNat::from_rows(vec![vec![1, 2], vec![3, 4]]).unwrap();
    let b = MatrixNat::from_rows(vec![vec![5, 6], vec![7, 8]]).unwrap();
    let layout = SlotLayout::for_instance(&a, &b, Radix::DECIMAL).unwrap();
    let mut ctr = OpCounter::new();
    let lhs = encode_lhs(&a, &layout, &mut ctr).unwrap();
    let rhs = encode_rhs(&b, &layout, &mut ctr).unwrap();
    assert_eq!(lhs.len().div_ceil(layout.lhs_stride()) * layout.lhs_stride(), 32);
    assert_eq!(rhs.len().div_ceil(layout.rhs_stride()) * layout.rhs_stride(), 8);
    assert_eq!(lhs.to_digit_string(32), "00000004000000030000000200000001");
}
