use lenkrull_core::monomial::{
    face_count_vector, face_saturation, for_each_in_box, local_multiplicity_oracle, minimalize,
    saturate_variable, standard_pairs, Face, MonomialIdeal,
};
use proptest::prelude::*;
use std::collections::BTreeSet;

fn ideal() -> impl Strategy<Value = MonomialIdeal> {
    (1usize..=4).prop_flat_map(|n| {
        prop::collection::vec(prop::collection::vec(0u32..=5, n), 1..=8)
            .prop_map(move |gens| minimalize(n, gens))
    })
}

/// Faces whose prime is `(I : m)` for some monomial `m`: the associated primes of `A/I`,
/// computed without standard pairs. Checking `m_i ≤ d_i` suffices since raising a
/// coordinate past `d_i` does not change the colon.
fn associated_faces(i: &MonomialIdeal) -> BTreeSet<Face> {
    let n = i.n_vars();
    let bounds: Vec<u32> = i.max_exponents().iter().map(|d| d + 1).collect();
    let mut out = BTreeSet::new();
    for_each_in_box(&bounds, |m| {
        if i.contains(m) {
            return;
        }
        let colon = i.colon_monomial(m);
        let mut vars = Face::EMPTY;
        for g in colon.generators() {
            let support: Vec<usize> = (0..n).filter(|&j| g[j] > 0).collect();
            if support.len() != 1 || g[support[0]] != 1 {
                return;
            }
            vars = vars.with(support[0]);
        }
        out.insert(vars.complement(n));
    });
    out
}

/// Minimal primes: minimal sets of variables meeting every generator's support.
fn minimal_prime_faces(i: &MonomialIdeal) -> BTreeSet<Face> {
    let n = i.n_vars();
    let covers: Vec<Face> = (0..1u32 << n)
        .map(Face)
        .filter(|c| {
            i.generators()
                .iter()
                .all(|g| (0..n).any(|j| g[j] > 0 && c.contains(j)))
        })
        .collect();
    covers
        .iter()
        .filter(|c| !covers.iter().any(|d| d != *c && d.0 & c.0 == d.0))
        .map(|c| c.complement(n))
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn pairs_agree_with_saturation_oracle(i in ideal()) {
        let pairs = standard_pairs(&i);
        for face in Face::all(i.n_vars()) {
            let count = pairs.iter().filter(|p| p.face == face).count() as u64;
            prop_assert_eq!(count, local_multiplicity_oracle(&i, face), "face {:b} of {}", face.0, i);
        }
    }

    #[test]
    fn pairs_cover_exactly_the_standard_monomials(i in ideal()) {
        let pairs = standard_pairs(&i);
        let n = i.n_vars();
        let d = i.max_exponents();
        for p in &pairs {
            for (j, (&r, &dj)) in p.root.iter().zip(&d).enumerate() {
                if p.face.contains(j) {
                    prop_assert_eq!(r, 0);
                } else {
                    prop_assert!(r < dj);
                }
            }
        }
        // Pairs may overlap, but together they cover precisely the monomials outside I.
        let bounds: Vec<u32> = d.iter().map(|x| x + 2).collect();
        for_each_in_box(&bounds, |m| {
            let covering = pairs
                .iter()
                .filter(|p| (0..n).all(|j| p.face.contains(j) || m[j] == p.root[j]))
                .count();
            assert_eq!(covering > 0, !i.contains(m), "{m:?} in {i}");
        });
    }

    #[test]
    fn positive_faces_are_associated_primes(i in ideal()) {
        let positive: BTreeSet<Face> = standard_pairs(&i).into_iter().map(|p| p.face).collect();
        prop_assert_eq!(&positive, &associated_faces(&i));
        prop_assert!(minimal_prime_faces(&i).is_subset(&positive));
    }

    #[test]
    fn saturations_behave(i in ideal(), var in 0usize..4, mask in 0u32..16) {
        let var = var % i.n_vars();
        let once = saturate_variable(&i, var);
        prop_assert_eq!(saturate_variable(&once, var), once);
        let g = Face(mask & Face::full(i.n_vars()).0);
        prop_assert!(i.is_subset_of(&face_saturation(&i, g)));
    }

    #[test]
    fn finite_part_counts_match_enumeration(i in ideal()) {
        let n = i.n_vars();
        let d = i.max_exponents();
        let big = *d.iter().max().unwrap();
        let mut direct = 0u64;
        for_each_in_box(&d, |m| {
            // m is killed by a power of every variable
            let killed = (0..n).all(|j| {
                let mut pushed = m.to_vec();
                pushed[j] += big;
                i.contains(&pushed)
            });
            if !i.contains(m) && killed {
                direct += 1;
            }
        });
        let s0 = face_count_vector(&i).get(&0).copied().unwrap_or(0);
        prop_assert_eq!(s0, direct, "{} in {} vars", i, n);
    }
}

#[test]
fn local_multiplicity_at_non_minimal_prime_is_unbounded() {
    // A = k[x,y], P = (x,y): ℓ_P(A/P^n) = n(n+1)/2.
    for n in 1..=8u32 {
        let p_n = MonomialIdeal::prime_power(2, Face::EMPTY, n);
        assert_eq!(
            local_multiplicity_oracle(&p_n, Face::EMPTY),
            u64::from(n * (n + 1) / 2)
        );
        // P = (x) with face {y}: A/(x^n) localized at (x) has length n.
        let x_n = MonomialIdeal::prime_power(2, Face::from_vars([1]), n);
        assert_eq!(
            local_multiplicity_oracle(&x_n, Face::from_vars([1])),
            u64::from(n)
        );
    }
    // The minimal prime (0) of the domain k[x,y]: A/(0)^n = A, bounded at 1.
    assert_eq!(
        local_multiplicity_oracle(&MonomialIdeal::zero(2), Face::full(2)),
        1
    );
}
