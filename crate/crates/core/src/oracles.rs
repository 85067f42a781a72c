//! Brute-force verifiers.
//!
//! * Finite abelian groups are materialized element by element; their subgroup lattices give
//!   every proper quotient, so the recursive characterization of length can be evaluated
//!   directly and compared with `Σ Ω(d_i)`.
//! * Seeded random short exact sequences of `Z`-modules check additivity of `ℓ_1` and `ℓ_0`.
//! * Seeded random monomial ideals check standard pairs against the saturation oracle.
//!
//! Every randomized check is reproducible from `(trials, seed)`: trials draw from one
//! ChaCha8 stream in index order.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::length::LengthVector;
use crate::monomial::{
    dimension, face_count_vector, local_multiplicity_oracle, minimalize, standard_pairs, Face,
    MonomialIdeal,
};
use crate::zmodule::{
    factorize, length_vector_z, quotient_z, smith_normal_form, submodule_z, FactorBound,
    ZNormalForm, ZPresentation,
};

/// Largest group order the element-wise oracles accept.
pub const MAX_GROUP_ORDER: u64 = 10_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OracleError {
    TooLarge { order: BigUint },
    NotPrimePower(u64),
}

impl fmt::Display for OracleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OracleError::TooLarge { order } => {
                write!(
                    f,
                    "group of order {order} exceeds the limit {MAX_GROUP_ORDER}"
                )
            }
            OracleError::NotPrimePower(q) => write!(f, "{q} is not a prime power ≥ 2"),
        }
    }
}

/// `⊕ Z/q_i` with every `q_i` a prime power, kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FiniteAbelianGroup {
    factors: Vec<u64>,
}

fn prime_power_base(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let fs = factorize(&BigUint::from(q), FactorBound::default()).ok()?;
    match fs.as_slice() {
        [(p, e)] => Some((p.to_u64()?, *e)),
        _ => None,
    }
}

impl FiniteAbelianGroup {
    pub fn trivial() -> Self {
        FiniteAbelianGroup {
            factors: Vec::new(),
        }
    }

    pub fn from_prime_powers(mut factors: Vec<u64>) -> Result<Self, OracleError> {
        for &q in &factors {
            if prime_power_base(q).is_none() {
                return Err(OracleError::NotPrimePower(q));
            }
        }
        factors.sort_unstable();
        Ok(FiniteAbelianGroup { factors })
    }

    /// `Z/n_1 ⊕ … ⊕ Z/n_s` for arbitrary positive moduli, split into primary parts.
    pub fn from_cyclic_orders(orders: &[u64]) -> Self {
        let mut factors = Vec::new();
        for &n in orders {
            assert!(n > 0, "cyclic order must be positive");
            for (p, e) in factorize(&BigUint::from(n), FactorBound::default()).expect("small") {
                factors.push(p.to_u64().expect("small").pow(e));
            }
        }
        factors.sort_unstable();
        FiniteAbelianGroup { factors }
    }

    /// The finite group with the given normal form; `None` when the free rank is positive.
    pub fn from_normal_form(m: &ZNormalForm) -> Option<Self> {
        if m.free_rank > 0 {
            return None;
        }
        let orders: Option<Vec<u64>> = m.invariant_factors.iter().map(|d| d.to_u64()).collect();
        Some(Self::from_cyclic_orders(&orders?))
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn order(&self) -> BigUint {
        self.factors.iter().map(|&q| BigUint::from(q)).product()
    }

    /// Composition length: the number of prime factors of the order.
    pub fn composition_length(&self) -> u64 {
        self.factors
            .iter()
            .map(|&q| u64::from(prime_power_base(q).expect("prime power").1))
            .sum()
    }

    pub fn presentation(&self) -> ZPresentation {
        let moduli: Vec<BigUint> = self.factors.iter().map(|&q| BigUint::from(q)).collect();
        ZPresentation::diagonal(&moduli)
    }

    fn checked_order(&self) -> Result<usize, OracleError> {
        let order = self.order();
        match order.to_u64() {
            Some(o) if o <= MAX_GROUP_ORDER => Ok(o as usize),
            _ => Err(OracleError::TooLarge { order }),
        }
    }
}

impl fmt::Display for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("0");
        }
        for (i, q) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "Z/{q}")?;
        }
        Ok(())
    }
}

/// A subgroup, by generators (as coordinate vectors) together with its quotient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    pub order: u64,
    pub generators: Vec<Vec<u64>>,
    pub quotient: FiniteAbelianGroup,
}

/// Mixed-radix encoding of group elements as integers `0..|G|`.
struct ElementCodec<'a> {
    moduli: &'a [u64],
}

impl ElementCodec<'_> {
    fn decode(&self, mut x: usize) -> Vec<u64> {
        self.moduli
            .iter()
            .map(|&q| {
                let c = (x as u64) % q;
                x /= q as usize;
                c
            })
            .collect()
    }

    fn encode(&self, v: &[u64]) -> usize {
        let mut x = 0usize;
        for (&c, &q) in v.iter().zip(self.moduli).rev() {
            x = x * q as usize + c as usize;
        }
        x
    }

    fn add(&self, a: usize, b: usize) -> usize {
        let (va, vb) = (self.decode(a), self.decode(b));
        let sum: Vec<u64> = va
            .iter()
            .zip(&vb)
            .zip(self.moduli)
            .map(|((x, y), q)| (x + y) % q)
            .collect();
        self.encode(&sum)
    }
}

fn bit(set: &[u64], x: usize) -> bool {
    set[x / 64] >> (x % 64) & 1 == 1
}

fn set_bit(set: &mut [u64], x: usize) {
    set[x / 64] |= 1 << (x % 64);
}

fn members(set: &[u64], order: usize) -> Vec<usize> {
    (0..order).filter(|&x| bit(set, x)).collect()
}

/// Every subgroup of `g`, found by breadth-first search over cyclic extensions
/// `⟨H, x⟩` starting from the trivial subgroup, deduplicated by element set.
/// The trivial subgroup comes first; the list is ordered by discovery.
pub fn enumerate_subgroups(g: &FiniteAbelianGroup) -> Result<Vec<Subgroup>, OracleError> {
    let order = g.checked_order()?;
    let codec = ElementCodec { moduli: &g.factors };
    let words = order.div_ceil(64);

    let mut trivial = vec![0u64; words];
    set_bit(&mut trivial, 0);
    let mut seen: BTreeSet<Vec<u64>> = BTreeSet::new();
    seen.insert(trivial.clone());
    let mut found: Vec<(Vec<u64>, Vec<usize>)> = vec![(trivial, Vec::new())];
    let mut next = 0;
    while next < found.len() {
        let (set, gens) = found[next].clone();
        next += 1;
        let elems = members(&set, order);
        for x in 0..order {
            if bit(&set, x) {
                continue;
            }
            let mut extended = set.clone();
            let mut coset_rep = x;
            while !bit(&set, coset_rep) {
                for &h in &elems {
                    set_bit(&mut extended, codec.add(h, coset_rep));
                }
                coset_rep = codec.add(coset_rep, x);
            }
            if seen.insert(extended.clone()) {
                let mut new_gens = gens.clone();
                new_gens.push(x);
                found.push((extended, new_gens));
            }
        }
    }

    let base = g.presentation();
    Ok(found
        .into_iter()
        .map(|(set, gens)| {
            let generators: Vec<Vec<u64>> = gens.iter().map(|&x| codec.decode(x)).collect();
            let extra: Vec<Vec<BigInt>> = generators
                .iter()
                .map(|v| v.iter().map(|&c| BigInt::from(c)).collect())
                .collect();
            let q = quotient_z(&base, &extra).expect("heights match");
            let quotient = FiniteAbelianGroup::from_normal_form(&smith_normal_form(&q))
                .expect("finite quotient");
            Subgroup {
                order: set.iter().map(|w| u64::from(w.count_ones())).sum(),
                generators,
                quotient,
            }
        })
        .collect())
}

/// `ℓ(G) = sup{ℓ(G/H) + 1 : H ≠ 0}` evaluated over the subgroup lattice, memoized by
/// isomorphism type.
pub fn recursive_length(
    g: &FiniteAbelianGroup,
    memo: &mut BTreeMap<FiniteAbelianGroup, u64>,
) -> Result<u64, OracleError> {
    if let Some(&l) = memo.get(g) {
        return Ok(l);
    }
    let mut best = 0;
    for h in enumerate_subgroups(g)? {
        if h.order == 1 {
            continue;
        }
        best = best.max(recursive_length(&h.quotient, memo)? + 1);
    }
    memo.insert(g.clone(), best);
    Ok(best)
}

/// The recursive length agrees with both the composition length and `Σ Ω(d_i)` from the
/// Smith normal form.
pub fn check_caractl(g: &FiniteAbelianGroup) -> Result<bool, OracleError> {
    check_caractl_memo(g, &mut BTreeMap::new())
}

pub fn check_caractl_memo(
    g: &FiniteAbelianGroup,
    memo: &mut BTreeMap<FiniteAbelianGroup, u64>,
) -> Result<bool, OracleError> {
    let recursive = recursive_length(g, memo)?;
    let closed = length_vector_z(
        &smith_normal_form(&g.presentation()),
        FactorBound::default(),
    )
    .expect("small factors")
    .get(0);
    Ok(BigUint::from(recursive) == closed && recursive == g.composition_length())
}

/// All abelian groups of order exactly `n`, one per isomorphism type.
pub fn abelian_groups_of_order(n: u64) -> Vec<FiniteAbelianGroup> {
    let fs = factorize(&BigUint::from(n), FactorBound::default()).expect("small");
    let mut groups = vec![Vec::new()];
    for (p, e) in fs {
        let p = p.to_u64().expect("small");
        let mut next = Vec::new();
        for partition in partitions(e) {
            for g in &groups {
                let mut factors: Vec<u64> = g.clone();
                factors.extend(partition.iter().map(|&k| p.pow(k)));
                next.push(factors);
            }
        }
        groups = next;
    }
    groups
        .into_iter()
        .map(|f| FiniteAbelianGroup::from_prime_powers(f).expect("prime powers"))
        .collect()
}

/// Partitions of `n` into positive parts, each in non-increasing order.
pub fn partitions(n: u32) -> Vec<Vec<u32>> {
    fn go(n: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        for k in (1..=n.min(max)).rev() {
            prefix.push(k);
            go(n - k, k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// Outcome of a randomized suite.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TrialReport {
    pub suite: &'static str,
    pub trials: u64,
    pub seed: u64,
    /// Individual equalities checked across all trials.
    pub checks: u64,
    pub failures: Vec<String>,
}

impl TrialReport {
    fn new(suite: &'static str, trials: u64, seed: u64) -> Self {
        TrialReport {
            suite,
            trials,
            seed,
            ..Default::default()
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(describe());
        }
    }
}

fn random_vector(rng: &mut ChaCha8Rng, k: usize, max: i64) -> Vec<BigInt> {
    (0..k)
        .map(|_| BigInt::from(rng.gen_range(-max..=max)))
        .collect()
}

/// Random presentation with `k ≤ 4` generators and entries in `[-20, 20]`. Relations are
/// sparse often enough that both free and torsion parts show up.
pub fn random_presentation(rng: &mut ChaCha8Rng) -> ZPresentation {
    let k = rng.gen_range(1..=4usize);
    let n_rel = rng.gen_range(0..=k);
    let relations = (0..n_rel)
        .map(|_| {
            if rng.gen_bool(0.5) {
                let mut col = vec![BigInt::zero(); k];
                col[rng.gen_range(0..k)] = BigInt::from(rng.gen_range(-20i64..=20));
                col
            } else {
                random_vector(rng, k, 20)
            }
        })
        .collect();
    ZPresentation::new(k, relations).expect("heights match")
}

/// Elements of finite order in `M`: each relation divided by its content `c > 1` is killed by `c`.
fn torsion_candidates(m: &ZPresentation) -> Vec<Vec<BigInt>> {
    m.relations()
        .iter()
        .filter_map(|r| {
            let content = r.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
            (content > BigInt::from(1)).then(|| r.iter().map(|x| x / &content).collect())
        })
        .collect()
}

/// Random submodule generators; with `finite` set they are drawn from torsion elements only
/// (possibly none, giving `K = 0`).
fn random_submodule(rng: &mut ChaCha8Rng, m: &ZPresentation, finite: bool) -> Vec<Vec<BigInt>> {
    let k = m.generators();
    let count = rng.gen_range(0..=3usize);
    if finite {
        let candidates = torsion_candidates(m);
        if candidates.is_empty() {
            return Vec::new();
        }
        return (0..count)
            .map(|_| {
                let base = &candidates[rng.gen_range(0..candidates.len())];
                let scale = BigInt::from(rng.gen_range(1i64..=5));
                base.iter().map(|x| x * &scale).collect()
            })
            .collect();
    }
    (0..count).map(|_| random_vector(rng, k, 20)).collect()
}

/// `0 → K → M → M/K → 0` in normal form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactSequence {
    pub middle: ZNormalForm,
    pub kernel: ZNormalForm,
    pub quotient: ZNormalForm,
}

/// One sampled sequence, as drawn by the additivity suites. Returns the presentation of `M`
/// and the generators of `K` alongside the normal forms.
pub fn sample_sequence(
    rng: &mut ChaCha8Rng,
    finite_kernel: bool,
) -> (ZPresentation, Vec<Vec<BigInt>>, ExactSequence) {
    let m = random_presentation(rng);
    let gens = random_submodule(rng, &m, finite_kernel);
    let kernel = smith_normal_form(&submodule_z(&m, &gens).expect("heights match"));
    let quotient = smith_normal_form(&quotient_z(&m, &gens).expect("heights match"));
    let seq = ExactSequence {
        middle: smith_normal_form(&m),
        kernel,
        quotient,
    };
    (m, gens, seq)
}

fn lv(m: &ZNormalForm) -> LengthVector {
    length_vector_z(m, FactorBound::default()).expect("small factors")
}

/// `ℓ_α(M) = ℓ_α(M/K) + ℓ_α(K)` whenever `dim K ≤ α`: always at `α = 1`, and at `α = 0` when
/// `K` is finite. Odd trials use torsion-generated kernels.
pub fn check_additivity_z(trials: u64, seed: u64) -> TrialReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = TrialReport::new("additivity", trials, seed);
    for trial in 0..trials {
        let (m, gens, seq) = sample_sequence(&mut rng, trial % 2 == 1);
        let (lm, lk, ln) = (lv(&seq.middle), lv(&seq.kernel), lv(&seq.quotient));
        let describe = |alpha: u32| {
            format!(
                "trial {trial}: l_{alpha} not additive for M = Z^{} / {:?}, K = <{:?}>: {} != {} + {}",
                m.generators(),
                m.relations(),
                gens,
                lm.get(alpha),
                ln.get(alpha),
                lk.get(alpha)
            )
        };
        report.check(lm.get(1) == ln.get(1) + lk.get(1), || describe(1));
        if seq.kernel.free_rank == 0 {
            report.check(lm.get(0) == ln.get(0) + lk.get(0), || describe(0));
        }
    }
    report
}

/// Quotienting by a finite submodule leaves `ℓ'` unchanged.
pub fn check_sigmaprime_artinian_kernel(trials: u64, seed: u64) -> TrialReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = TrialReport::new("sigmaprime", trials, seed);
    for trial in 0..trials {
        let (m, gens, seq) = sample_sequence(&mut rng, true);
        report.check(seq.kernel.free_rank == 0, || {
            format!("trial {trial}: sampled kernel <{gens:?}> is not finite")
        });
        let before = lv(&seq.middle).reduced_length();
        let after = lv(&seq.quotient).reduced_length();
        report.check(before == after, || {
            format!(
                "trial {trial}: l' changed from {before} to {after} for M = Z^{} / {:?}, K = <{gens:?}>",
                m.generators(),
                m.relations()
            )
        });
    }
    report
}

/// Random monomial ideal: `n ≤ 4` variables, 1 to 8 generators, exponents at most 5.
pub fn random_monomial_ideal(rng: &mut ChaCha8Rng) -> MonomialIdeal {
    let n = rng.gen_range(1..=4usize);
    let count = rng.gen_range(1..=8usize);
    minimalize(
        n,
        (0..count).map(|_| (0..n).map(|_| rng.gen_range(0..=5u32)).collect()),
    )
}

/// Standard pairs per face against the saturation-counting oracle.
pub fn check_oracle_equivalence(trials: u64, seed: u64) -> TrialReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = TrialReport::new("oracle-equivalence", trials, seed);
    for trial in 0..trials {
        let ideal = random_monomial_ideal(&mut rng);
        let pairs = standard_pairs(&ideal);
        for face in Face::all(ideal.n_vars()) {
            let from_pairs = pairs.iter().filter(|p| p.face == face).count() as u64;
            let from_oracle = local_multiplicity_oracle(&ideal, face);
            report.check(from_pairs == from_oracle, || {
                format!(
                    "trial {trial}: ideal {ideal} face {:#b}: {from_pairs} standard pairs, oracle {from_oracle}",
                    face.0
                )
            });
        }
    }
    report
}

/// For monomial `I ⊊ J`, face counts above `dim(J/I)` agree between `A/I` and `A/J`, the count
/// at `dim(J/I)` does not increase, and `ℓ(A/I) > ℓ(A/J)`.
pub fn check_monomial_additivity(trials: u64, seed: u64) -> TrialReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = TrialReport::new("monomial-additivity", trials, seed);
    let mut done = 0;
    while done < trials {
        let small = random_monomial_ideal(&mut rng);
        let n = small.n_vars();
        let extra: Vec<u32> = (0..n).map(|_| rng.gen_range(0..=4u32)).collect();
        let big = small.sum(&minimalize(n, [extra]));
        if big == small {
            continue;
        }
        done += 1;
        // dim(J/I) = max over generators g ∉ I of dim A/(I : g).
        let Some(alpha) = big
            .generators()
            .iter()
            .filter(|g| !small.contains(g))
            .filter_map(|g| dimension(&small.colon_monomial(g)))
            .max()
        else {
            report.check(false, || format!("{big} ⊋ {small} but J/I looks zero"));
            continue;
        };
        let s_small = face_count_vector(&small);
        let s_big = face_count_vector(&big);
        let at = |s: &BTreeMap<usize, u64>, f: usize| s.get(&f).copied().unwrap_or(0);
        for f in alpha + 1..=n {
            report.check(at(&s_small, f) == at(&s_big, f), || {
                format!("I = {small}, J = {big}: counts at face size {f} differ above dim(J/I) = {alpha}")
            });
        }
        report.check(at(&s_small, alpha) > at(&s_big, alpha), || {
            format!("I = {small}, J = {big}: count at dim(J/I) = {alpha} did not drop")
        });
        let to_vector = |s: &BTreeMap<usize, u64>| {
            LengthVector::from_counts(s.iter().map(|(&f, &c)| (f as u32, c)))
        };
        report.check(
            to_vector(&s_small).length() > to_vector(&s_big).length(),
            || format!("I = {small}, J = {big}: length did not drop"),
        );
    }
    report
}
