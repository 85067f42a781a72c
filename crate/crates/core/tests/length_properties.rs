use lenkrull_core::length::{
    analyze, length_vector, BaseRing, CbResult, CyclicPiece, ModuleBody, ModuleDescriptor,
    RingDescriptor,
};
use lenkrull_core::localpid::{
    cb_rank_local_pid, lengths_local_pid, torsion_length, LocalPidModule,
};
use lenkrull_core::monomial::{dimension, minimalize, Face, MonomialIdeal};
use lenkrull_core::oracles::{abelian_groups_of_order, check_caractl_memo, enumerate_subgroups};
use lenkrull_core::{FactorBound, Ordinal};
use num_bigint::BigUint;
use proptest::prelude::*;
use std::collections::BTreeMap;

const BOUND: FactorBound = FactorBound(1_000_000);

fn ring(base: BaseRing, n: usize) -> RingDescriptor {
    let names = ["x", "y", "z", "u"];
    RingDescriptor::new(
        base,
        names[..n].iter().map(|s| s.to_string()).collect(),
        BOUND,
    )
    .unwrap()
}

fn bases() -> impl Strategy<Value = BaseRing> {
    prop_oneof![
        Just(BaseRing::Integers),
        Just(BaseRing::FiniteField(2u32.into())),
        Just(BaseRing::FiniteField(5u32.into())),
        Just(BaseRing::Rationals),
    ]
}

fn ideal(n: usize) -> impl Strategy<Value = MonomialIdeal> {
    prop::collection::vec(prop::collection::vec(0u32..=4, n), 0..=5)
        .prop_map(move |g| minimalize(n, g))
}

fn piece(base: &BaseRing, n: usize) -> BoxedStrategy<CyclicPiece> {
    let squarefree = if *base == BaseRing::Integers {
        prop::sample::select(vec![0u32, 0, 0, 2, 3, 6, 15, 30]).boxed()
    } else {
        Just(0u32).boxed()
    };
    (squarefree, ideal(n))
        .prop_map(|(m, i)| CyclicPiece {
            integer_part: m.into(),
            monomial_part: i,
        })
        .boxed()
}

fn modules(count: usize) -> impl Strategy<Value = Vec<ModuleDescriptor>> {
    (bases(), 0usize..=3).prop_flat_map(move |(base, n)| {
        let pieces = prop::collection::vec(prop::collection::vec(piece(&base, n), 1..=3), count);
        (Just(base), Just(n), pieces).prop_map(|(base, n, sums)| {
            sums.into_iter()
                .map(|pieces| {
                    ModuleDescriptor::new(ring(base.clone(), n), ModuleBody::Pieces(pieces), BOUND)
                        .unwrap()
                })
                .collect()
        })
    })
}

fn module() -> impl Strategy<Value = ModuleDescriptor> {
    modules(1).prop_map(|mut v| v.pop().unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn length_is_omega_times_reduced_plus_finite_part(m in module()) {
        let r = analyze(&m, BOUND).unwrap();
        let rebuilt = r.reduced_length.left_mul_omega().add(&Ordinal::finite(r.length_vector.get(0)));
        prop_assert_eq!(&rebuilt, &r.length);
        if let Some(d) = r.dimension {
            prop_assert!(d <= m.ring().dimension());
        }
        match r.cb_rank {
            CbResult::Exact(cb) => prop_assert_eq!(cb, r.reduced_length),
            CbResult::Bounds { lower, upper } => {
                prop_assert!(lower <= upper);
                prop_assert!(upper <= r.length);
            }
        }
    }

    #[test]
    fn direct_sums_add_pointwise(pair in modules(2)) {
        let (a, b) = (&pair[0], &pair[1]);
        let sum = a.direct_sum(b).unwrap();
        let lhs = length_vector(&sum, BOUND).unwrap();
        let rhs = length_vector(a, BOUND).unwrap().plus(&length_vector(b, BOUND).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn proper_quotients_are_shorter(base in bases(), n in 1usize..=3, small in ideal(3), extra in prop::collection::vec(0u32..=3, 3)) {
        let small = minimalize(n, small.generators().iter().map(|g| g[..n].to_vec()));
        let big = small.sum(&minimalize(n, [extra[..n].to_vec()]));
        prop_assume!(big != small);
        let r = ring(base, n);
        let len = |i: &MonomialIdeal| {
            let m = ModuleDescriptor::quotient_ring(r.clone(), CyclicPiece::monomial(i.clone()), BOUND).unwrap();
            analyze(&m, BOUND).unwrap().length
        };
        prop_assert!(len(&small) > len(&big));
    }

    #[test]
    fn non_prime_ideals_exceed_the_domain_length(n in 1usize..=3, i in ideal(3)) {
        let i = minimalize(n, i.generators().iter().map(|g| g[..n].to_vec()));
        let Some(d) = dimension(&i) else { return Ok(()) };
        let m = ModuleDescriptor::quotient_ring(ring(BaseRing::FiniteField(2u32.into()), n), CyclicPiece::monomial(i.clone()), BOUND).unwrap();
        let l = analyze(&m, BOUND).unwrap().length;
        let is_prime = i.generators().iter().all(|g| g.iter().sum::<u32>() == 1);
        if is_prime {
            prop_assert_eq!(l, Ordinal::omega_pow(d as u32));
        } else {
            prop_assert!(l > Ordinal::omega_pow(d as u32));
        }
    }
}

#[test]
fn prime_quotients_have_pure_lengths() {
    for (base, n) in [
        (BaseRing::FiniteField(2u32.into()), 3),
        (BaseRing::Integers, 2),
        (BaseRing::FiniteField(3u32.into()), 2),
    ] {
        let shift = u32::from(base == BaseRing::Integers);
        for face in Face::all(n) {
            let p = MonomialIdeal::prime(n, face);
            let m = ModuleDescriptor::quotient_ring(
                ring(base.clone(), n),
                CyclicPiece::monomial(p),
                BOUND,
            )
            .unwrap();
            let r = analyze(&m, BOUND).unwrap();
            let dim = face.len() as u32 + shift;
            assert_eq!(r.dimension, Some(dim));
            assert_eq!(r.length, Ordinal::omega_pow(dim));
            let expected = if dim == 0 {
                Ordinal::zero()
            } else {
                Ordinal::omega_pow(dim - 1)
            };
            assert_eq!(r.cb_rank, CbResult::Exact(expected));
        }
    }
    // Z[x]/(p, x) = GF(p) style domains with an integer prime.
    for p in [2u32, 3, 7] {
        let m = ModuleDescriptor::quotient_ring(
            ring(BaseRing::Integers, 1),
            CyclicPiece {
                integer_part: p.into(),
                monomial_part: MonomialIdeal::zero(1),
            },
            BOUND,
        )
        .unwrap();
        let r = analyze(&m, BOUND).unwrap();
        assert_eq!(r.length, Ordinal::omega());
        assert_eq!(r.cb_rank, CbResult::Exact(Ordinal::finite(1u32)));
    }
}

fn torsion_tables(max_length: u64) -> Vec<BTreeMap<u64, u64>> {
    // All multisets of part sizes with Σ i·n_i ≤ max_length.
    fn go(
        start: u64,
        budget: u64,
        cur: &mut BTreeMap<u64, u64>,
        out: &mut Vec<BTreeMap<u64, u64>>,
    ) {
        out.push(cur.clone());
        for i in start..=budget {
            *cur.entry(i).or_insert(0) += 1;
            go(i, budget - i, cur, out);
            let e = cur.get_mut(&i).unwrap();
            *e -= 1;
            if *e == 0 {
                cur.remove(&i);
            }
        }
    }
    let mut out = Vec::new();
    go(1, max_length, &mut BTreeMap::new(), &mut out);
    out
}

#[test]
fn local_pid_sandwich() {
    let tables = torsion_tables(6);
    // partitions of 0..=6: 1+1+2+3+5+7+11
    assert_eq!(tables.len(), 30);
    for r in 0..=5u64 {
        for t in &tables {
            let m = LocalPidModule::new(r, t.iter().map(|(&i, &n)| (i, n)));
            let cb = cb_rank_local_pid(&m);
            let v = m.length_vector();
            let (length, displayed_reduced) = lengths_local_pid(&m);
            assert_eq!(v.length(), length);
            assert!(v.reduced_length() <= cb, "r={r} T={t:?}");
            assert!(cb <= length);
            if length.is_successor() {
                assert!(cb <= length.saturating_pred(), "r={r} T={t:?}");
            }
            let lower = displayed_reduced.clone().min(cb.clone());
            assert!(lower <= cb);
            assert_eq!(displayed_reduced, Ordinal::finite(torsion_length(t)));
        }
    }
}

#[test]
fn local_pid_parity_table() {
    for n in 0..=4u64 {
        let even = cb_rank_local_pid(&LocalPidModule::new(2 * n, []));
        let odd = cb_rank_local_pid(&LocalPidModule::new(2 * n + 1, []));
        assert_eq!(even, Ordinal::finite(n).left_mul_omega());
        assert_eq!(
            odd,
            Ordinal::finite(n)
                .left_mul_omega()
                .add(&Ordinal::finite(1u32))
        );
    }
}

#[test]
fn subgroup_lattice_is_self_dual_in_size() {
    for order in 1..=64u64 {
        for g in abelian_groups_of_order(order) {
            let subs = enumerate_subgroups(&g).unwrap();
            let sizes: u64 = subs.iter().map(|h| h.order).sum();
            let co_sizes: u64 = subs
                .iter()
                .map(|h| u64::try_from(h.quotient.order()).unwrap())
                .sum();
            assert_eq!(sizes, co_sizes, "{g}");
            for h in &subs {
                assert_eq!(BigUint::from(h.order) * h.quotient.order(), g.order());
            }
        }
    }
}

#[test]
fn prime_power_groups_satisfy_caractl() {
    let mut memo = BTreeMap::new();
    for p in [2u64, 3] {
        for a in 0..=4u32 {
            for g in abelian_groups_of_order(p.pow(a)) {
                assert!(check_caractl_memo(&g, &mut memo).unwrap(), "{g}");
            }
        }
    }
}
