use proptest::prelude::*;
use qrr_core::oracles::*;
use qrr_core::qcore::{pochhammer_infinite, QLaurent};
use qrr_core::Monomial;

fn ints(c: &[i64], n: i64) -> QLaurent {
    QLaurent::from_ints(c, n)
}

#[test]
fn partition_examples() {
    let rr = PartitionClass::residues(5, &[1, 4]);
    assert_eq!(count_partitions(&rr, 6).unwrap(), ints(&[1, 1, 1, 1, 2, 2, 3], 6));
    assert_eq!(count_partitions(&PartitionClass::distinct_parts(), 5).unwrap(), ints(&[1, 1, 1, 2, 2, 3], 5));
    let empty = PartitionClass::residues(3, &[]);
    assert_eq!(count_partitions(&empty, 9).unwrap(), QLaurent::one(9));
    assert!(count_partitions(&PartitionClass::residues(3, &[3]), 4).is_err());
}

#[test]
fn parity_filter() {
    let odd = PartitionClass { parity_filter: Some(Parity::Odd), ..PartitionClass::all_parts() };
    let distinct = PartitionClass::distinct_parts();
    // Euler: odd parts equinumerous with distinct parts
    assert_eq!(count_partitions(&odd, 40).unwrap(), count_partitions(&distinct, 40).unwrap());
}

#[test]
fn product_examples() {
    let pent = expand_product_bruteforce(&[ProgFactor { sign: -1, start: 1, diff: 1, count: Some(12), power: 1 }], 12)
        .unwrap();
    assert_eq!(pent, ints(&[1, -1, -1, 0, 0, 1, 0, 1, 0, 0, 0, 0, -1], 12));
    assert_eq!(expand_product_bruteforce(&[ProgFactor::single(1, 1)], 4).unwrap(), ints(&[1, 1], 4));
}

fn e18_rhs(n: i64) -> QLaurent {
    expand_product_bruteforce(
        &[ProgFactor::infinite(-1, 3, 6, 2), ProgFactor::infinite(-1, 6, 6, 1), ProgFactor::infinite(-1, 1, 1, -1)],
        n,
    )
    .unwrap()
}

fn e18_lhs() -> DoubleSum {
    DoubleSum {
        quad: QuadForm { mm: 2, mr: 2, rr: 1, m: 0, r: 0 },
        denoms: vec![IntPoch::qq(2, Index::M), IntPoch::qq(1, Index::R)],
        numer: None,
        weight: None,
    }
}

#[test]
fn double_sum_against_product() {
    for n in [6, 30] {
        assert_eq!(double_sum_eval(&e18_lhs(), n).unwrap(), e18_rhs(n));
    }
}

#[test]
fn e18_rhs_matches_pochhammer_build() {
    let n = 8;
    let q3 = pochhammer_infinite(&Monomial::q_pow(3), 6, n).unwrap();
    let q6 = pochhammer_infinite(&Monomial::q_pow(6), 6, n).unwrap();
    let q1 = pochhammer_infinite(&Monomial::q_pow(1), 1, n).unwrap();
    let built = q3.checked_mul(&q3).unwrap().checked_mul(&q6).unwrap().checked_div(&q1).unwrap();
    assert_eq!(built, e18_rhs(n));
}

#[test]
fn trivial_double_sum() {
    // q^(50(m^2+r^2)) contributes only at m = r = 0 below q^40
    let ds =
        DoubleSum { quad: QuadForm { mm: 50, mr: 0, rr: 50, m: 0, r: 0 }, denoms: vec![], numer: None, weight: None };
    assert_eq!(double_sum_eval(&ds, 40).unwrap(), QLaurent::one(40));
}

#[test]
fn weighted_double_sum_at_t_equal_q() {
    // t = q: sum t^(2m+r) q^(4m^2+4mr+2r^2-r)/((q^4;q^4)_m (q^2;q^2)_r) = prod (1 + q^(2n))
    let n = 30;
    let ds = DoubleSum {
        quad: QuadForm { mm: 4, mr: 4, rr: 2, m: 0, r: -1 },
        denoms: vec![IntPoch::qq(4, Index::M), IntPoch::qq(2, Index::R)],
        numer: None,
        weight: Some(Weight { coeff: 1, q_exp: 1, alpha: 2, beta: 1 }),
    };
    let rhs = expand_product_bruteforce(&[ProgFactor::infinite(1, 2, 2, 1)], n).unwrap();
    assert_eq!(double_sum_eval(&ds, n).unwrap(), rhs);
}

#[test]
fn divergent_double_sum_rejected() {
    let ds =
        DoubleSum { quad: QuadForm { mm: 1, mr: 0, rr: 0, m: 0, r: 0 }, denoms: vec![], numer: None, weight: None };
    assert!(double_sum_eval(&ds, 10).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn partitions_agree_with_inverted_product(modulus in 1u32..8, mask in 0u32..256, n in 0i64..40) {
        let residues: Vec<u32> = (0..modulus).filter(|r| mask >> r & 1 == 1).collect();
        let pc = PartitionClass::residues(modulus, &residues);
        let factors: Vec<ProgFactor> = residues
            .iter()
            .map(|&r| ProgFactor::infinite(-1, if r == 0 { modulus as u64 } else { r as u64 }, modulus as u64, -1))
            .collect();
        let counted = count_partitions_raw(&pc, n as usize).unwrap();
        prop_assert!(counted.iter().all(|&c| c >= 0));
        prop_assert_eq!(count_partitions(&pc, n).unwrap(), expand_product_bruteforce(&factors, n).unwrap());
    }

    #[test]
    fn distinct_partitions_agree_with_product(modulus in 1u32..6, mask in 0u32..64, n in 0i64..40) {
        let residues: Vec<u32> = (0..modulus).filter(|r| mask >> r & 1 == 1).collect();
        let pc = PartitionClass { distinct: true, ..PartitionClass::residues(modulus, &residues) };
        let factors: Vec<ProgFactor> = residues
            .iter()
            .map(|&r| ProgFactor::infinite(1, if r == 0 { modulus as u64 } else { r as u64 }, modulus as u64, 1))
            .collect();
        prop_assert_eq!(count_partitions(&pc, n).unwrap(), expand_product_bruteforce(&factors, n).unwrap());
    }
}
