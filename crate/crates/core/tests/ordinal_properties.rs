use lenkrull_core::ordinal::{Ordinal, Term};
use num_bigint::BigUint;
use proptest::prelude::*;
use std::cmp::Ordering;

/// Every ordinal with exponents ≤ `max_exp` and coefficients ≤ `max_coef`.
fn all_small(max_exp: u32, max_coef: u32) -> Vec<Ordinal> {
    let digits = (max_exp + 1) as usize;
    let base = max_coef + 1;
    let mut out = Vec::new();
    for code in 0..base.pow(digits as u32) {
        let mut code = code;
        let mut counts = Vec::new();
        for e in 0..digits {
            counts.push((e as u32, code % base));
            code /= base;
        }
        out.push(Ordinal::from_length_vector(counts));
    }
    out
}

#[test]
fn addition_is_associative_with_identity_exhaustively() {
    let small = all_small(3, 3);
    assert_eq!(small.len(), 256);
    let zero = Ordinal::zero();
    for a in &small {
        assert_eq!(zero.add(a), *a);
        assert_eq!(a.add(&zero), *a);
    }
    for a in &small {
        for b in &small {
            let ab = a.add(b);
            for c in &small {
                assert_eq!(ab.add(c), a.add(&b.add(c)), "({a}) + ({b}) + ({c})");
            }
        }
    }
}

/// Independent model: an ordinal below ω^4 as a coefficient array, compared from the top.
fn as_array(o: &Ordinal) -> [u64; 4] {
    let mut out = [0; 4];
    for t in o.terms() {
        let e: usize = t.exponent.clone().try_into().unwrap();
        out[3 - e] = t.coefficient.clone().try_into().unwrap();
    }
    out
}

#[test]
fn comparison_matches_array_model() {
    let small = all_small(3, 3);
    for a in &small {
        for b in &small {
            assert_eq!(a.cmp(b), as_array(a).cmp(&as_array(b)));
            if !b.is_zero() {
                assert!(a < &a.add(b));
            }
        }
    }
}

fn ordinal_strategy() -> impl Strategy<Value = Ordinal> {
    prop::collection::btree_map(0u32..8, 1u64..1_000, 0..5).prop_map(Ordinal::from_length_vector)
}

proptest! {
    #[test]
    fn parse_inverts_format(a in ordinal_strategy()) {
        prop_assert_eq!(Ordinal::parse(&a.to_string()).unwrap(), a);
    }

    #[test]
    fn omega_times_then_finite_tail_rebuilds(a in ordinal_strategy(), n in 0u64..50) {
        let w = a.left_mul_omega();
        prop_assert!(w.terms().iter().all(|t| t.exponent > BigUint::from(0u32)));
        let rebuilt = w.add(&Ordinal::finite(n));
        prop_assert_eq!(rebuilt.finite_part(), BigUint::from(n));
        // Every CNF splits as ω·β + n.
        let tail = a.finite_part();
        let head = Ordinal::from_terms(
            a.terms()
                .iter()
                .filter(|t| t.exponent > BigUint::from(0u32))
                .map(|t| Term { exponent: &t.exponent - 1u32, coefficient: t.coefficient.clone() })
                .collect(),
        )
        .unwrap();
        prop_assert_eq!(head.left_mul_omega().add(&Ordinal::finite(tail)), a);
    }

    #[test]
    fn predecessor_undoes_successor(a in ordinal_strategy()) {
        prop_assert_eq!(a.add(&Ordinal::finite(1u32)).saturating_pred(), a);
    }

    #[test]
    fn order_is_total_and_consistent(a in ordinal_strategy(), b in ordinal_strategy()) {
        let ab = a.cmp(&b);
        prop_assert_eq!(ab.reverse(), b.cmp(&a));
        prop_assert_eq!(ab == Ordering::Equal, a == b);
    }
}
