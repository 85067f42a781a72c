//! Modules over a local principal ideal domain whose maximal ideal `I` has infinite index.
//!
//! Such a ring has infinite simple modules, so the reduced length no longer computes the
//! Cantor-Bendixson rank. A finitely generated module is `A^r ⊕ T` with
//! `T ≅ M_1^{n_1} ⊕ … ⊕ M_k^{n_k}`, `M_i = A/I^i`, and its rank has a closed form in `r` and
//! the `n_i`. The ring is purely symbolic: nothing here depends on its elements.
//!
//! Two notions of reduced length appear below. [`LocalPidModule::length_vector`] places the
//! free part at coheight 1 and the torsion at coheight 0, and its shift gives `ℓ' = r`, which is
//! the value `ℓ'(M×M) = 0` for `M` simple. [`lengths_local_pid`] instead returns the displayed
//! closed form `ℓ'(A^k ⊕ T) = ℓ(T)` unchanged. The two disagree whenever `r ≠ ℓ(T)`.

use alloc::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::Zero;

use crate::length::LengthVector;
use crate::ordinal::Ordinal;

/// `A^free_rank ⊕ ⊕_i (A/I^i)^{n_i}`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LocalPidModule {
    pub free_rank: u64,
    /// `i ↦ n_i`; zero multiplicities are ignored.
    pub torsion: BTreeMap<u64, u64>,
}

impl LocalPidModule {
    pub fn new(free_rank: u64, torsion: impl IntoIterator<Item = (u64, u64)>) -> Self {
        let mut map = BTreeMap::new();
        for (i, n) in torsion {
            if n > 0 && i > 0 {
                *map.entry(i).or_insert(0) += n;
            }
        }
        LocalPidModule {
            free_rank,
            torsion: map,
        }
    }

    /// `{1: r, 0: ℓ(T)}`: `(0)` has coheight 1 and `I` coheight 0.
    pub fn length_vector(&self) -> LengthVector {
        LengthVector::from_counts([
            (1, BigUint::from(self.free_rank)),
            (0, torsion_length(&self.torsion)),
        ])
    }
}

/// `k`: the largest `i` with `n_i > 0`, or 0.
pub fn torsion_exponent(torsion: &BTreeMap<u64, u64>) -> u64 {
    torsion
        .iter()
        .filter(|&(_, &n)| n > 0)
        .map(|(&i, _)| i)
        .max()
        .unwrap_or(0)
}

/// `ℓ(T) = Σ i·n_i`.
pub fn torsion_length(torsion: &BTreeMap<u64, u64>) -> BigUint {
    torsion
        .iter()
        .map(|(&i, &n)| BigUint::from(i) * BigUint::from(n))
        .sum()
}

/// `ℓ*(T) = ℓ(T) - k`, with `ℓ*(0) = 0`.
pub fn ell_star(torsion: &BTreeMap<u64, u64>) -> BigUint {
    let l = torsion_length(torsion);
    if l.is_zero() {
        return l;
    }
    l - BigUint::from(torsion_exponent(torsion))
}

/// `A^{2n} ⊕ T ↦ ω·n + ℓ*(T)` and `A^{2n+1} ⊕ T ↦ ω·n + ℓ(T) + 1`.
pub fn cb_rank_local_pid(m: &LocalPidModule) -> Ordinal {
    let n = m.free_rank / 2;
    let limit_part = Ordinal::finite(n).left_mul_omega();
    let finite_part = if m.free_rank.is_multiple_of(2) {
        ell_star(&m.torsion)
    } else {
        torsion_length(&m.torsion) + 1u32
    };
    limit_part.add(&Ordinal::finite(finite_part))
}

/// `(ℓ, ℓ') = (ω·r + ℓ(T), ℓ(T))`, as in the closed form for `A^r ⊕ T`.
pub fn lengths_local_pid(m: &LocalPidModule) -> (Ordinal, Ordinal) {
    let t = torsion_length(&m.torsion);
    let length = Ordinal::finite(m.free_rank)
        .left_mul_omega()
        .add(&Ordinal::finite(t.clone()));
    (length, Ordinal::finite(t))
}
