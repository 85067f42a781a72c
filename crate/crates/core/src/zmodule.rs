//! Finitely generated abelian groups given by integer presentation matrices.
//!
//! A [`ZPresentation`] with `k` generators and relation columns `r_1..r_c` denotes
//! `Z^k / span(r_1..r_c)`. Its isomorphism type is read off the Smith normal form as
//! `Z^r ⊕ Z/d_1 ⊕ … ⊕ Z/d_s` with `d_1 | d_2 | … | d_s` and every `d_i ≥ 2`.
//!
//! Over `Z` the prime `(0)` has coheight 1 and every `(p)` coheight 0, so the length
//! vector of such a group is `{1: r, 0: Σ Ω(d_i)}`.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::length::LengthVector;

/// Upper limit on trial divisors used when factoring invariant factors.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FactorBound(pub u64);

impl Default for FactorBound {
    fn default() -> Self {
        FactorBound(1_000_000)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ZModuleError {
    /// A relation column does not have one entry per generator.
    HeightMismatch {
        column: usize,
        expected: usize,
        found: usize,
    },
    /// Trial division up to the bound could not certify the factorization.
    FactorBoundExceeded { value: BigUint, bound: u64 },
}

impl fmt::Display for ZModuleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ZModuleError::HeightMismatch {
                column,
                expected,
                found,
            } => write!(
                f,
                "relation {column} has {found} entries but there are {expected} generators"
            ),
            ZModuleError::FactorBoundExceeded { value, bound } => write!(
                f,
                "cannot factor {value}: it has no prime factor up to the trial-division bound {bound}"
            ),
        }
    }
}

/// Prime factorization `n = Π p^e` by trial division, primes in increasing order.
///
/// Fails when a cofactor remains that is neither 1 nor certifiably prime, i.e. it
/// exceeds `bound²` and has no divisor up to `bound`.
pub fn factorize(n: &BigUint, bound: FactorBound) -> Result<Vec<(BigUint, u32)>, ZModuleError> {
    assert!(!n.is_zero(), "factorize(0)");
    if let Some(small) = n.to_u64() {
        return factorize_u64(small, bound)
            .map(|fs| fs.into_iter().map(|(p, e)| (BigUint::from(p), e)).collect());
    }
    let mut rest = n.clone();
    let mut out = Vec::new();
    let mut d = 2u64;
    while d <= bound.0 {
        let big_d = BigUint::from(d);
        if &big_d * &big_d > rest {
            break;
        }
        let mut e = 0;
        while (&rest % &big_d).is_zero() {
            rest /= &big_d;
            e += 1;
        }
        if e > 0 {
            out.push((big_d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    finish_cofactor(rest, d, bound, &mut out)?;
    Ok(out)
}

fn factorize_u64(mut n: u64, bound: FactorBound) -> Result<Vec<(u64, u32)>, ZModuleError> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d <= bound.0 && d.saturating_mul(d) <= n {
        let mut e = 0;
        while n.is_multiple_of(d) {
            n /= d;
            e += 1;
        }
        if e > 0 {
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    let mut big = Vec::new();
    finish_cofactor(BigUint::from(n), d, bound, &mut big)?;
    out.extend(big.into_iter().map(|(p, e)| (p.to_u64().expect("fits"), e)));
    Ok(out)
}

/// `next_divisor` is the first trial divisor that was not tested.
fn finish_cofactor(
    rest: BigUint,
    next_divisor: u64,
    bound: FactorBound,
    out: &mut Vec<(BigUint, u32)>,
) -> Result<(), ZModuleError> {
    if rest.is_one() {
        return Ok(());
    }
    let d = BigUint::from(next_divisor);
    if &d * &d > rest {
        out.push((rest, 1));
        Ok(())
    } else {
        Err(ZModuleError::FactorBoundExceeded {
            value: rest,
            bound: bound.0,
        })
    }
}

/// Ω(n): number of prime factors counted with multiplicity.
pub fn big_omega(n: &BigUint, bound: FactorBound) -> Result<BigUint, ZModuleError> {
    Ok(factorize(n, bound)?
        .into_iter()
        .map(|(_, e)| BigUint::from(e))
        .sum())
}

/// `n > 0` with no repeated prime factor.
pub fn is_squarefree(n: &BigUint, bound: FactorBound) -> Result<bool, ZModuleError> {
    Ok(factorize(n, bound)?.iter().all(|&(_, e)| e == 1))
}

pub fn is_prime(n: &BigUint, bound: FactorBound) -> Result<bool, ZModuleError> {
    if n <= &BigUint::one() {
        return Ok(false);
    }
    let fs = factorize(n, bound)?;
    Ok(fs.len() == 1 && fs[0].1 == 1)
}

/// `Z^generators / span(relations)`; each relation is a column of height `generators`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZPresentation {
    generators: usize,
    relations: Vec<Vec<BigInt>>,
}

impl ZPresentation {
    pub fn new(generators: usize, relations: Vec<Vec<BigInt>>) -> Result<Self, ZModuleError> {
        for (column, r) in relations.iter().enumerate() {
            if r.len() != generators {
                return Err(ZModuleError::HeightMismatch {
                    column,
                    expected: generators,
                    found: r.len(),
                });
            }
        }
        Ok(ZPresentation {
            generators,
            relations,
        })
    }

    /// Convenience constructor from small integers.
    pub fn from_i64(generators: usize, relations: &[&[i64]]) -> Result<Self, ZModuleError> {
        Self::new(
            generators,
            relations
                .iter()
                .map(|col| col.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    /// The free module `Z^k`.
    pub fn free(k: usize) -> Self {
        ZPresentation {
            generators: k,
            relations: Vec::new(),
        }
    }

    /// `Z/d_1 ⊕ … ⊕ Z/d_s` (a zero modulus gives a copy of `Z`).
    pub fn diagonal(moduli: &[BigUint]) -> Self {
        let k = moduli.len();
        let relations = moduli
            .iter()
            .enumerate()
            .map(|(i, d)| {
                let mut col = vec![BigInt::zero(); k];
                col[i] = BigInt::from(d.clone());
                col
            })
            .collect();
        ZPresentation {
            generators: k,
            relations,
        }
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn relations(&self) -> &[Vec<BigInt>] {
        &self.relations
    }
}

/// Isomorphism invariants `Z^free_rank ⊕ ⊕ Z/d_i`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ZNormalForm {
    pub free_rank: usize,
    pub invariant_factors: Vec<BigUint>,
}

impl ZNormalForm {
    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.invariant_factors.is_empty()
    }

    /// Order of the torsion subgroup, `Π d_i`.
    pub fn torsion_order(&self) -> BigUint {
        self.invariant_factors.iter().product()
    }
}

/// Smith normal form of a `rows × cols` matrix given as rows. Returns the nonzero
/// diagonal entries (made positive) in divisibility order.
///
/// Pivot: smallest absolute nonzero entry of the remaining block, ties broken by the
/// lowest `(row, column)`.
pub fn smith_diagonal(mut a: Vec<Vec<BigInt>>, cols: usize) -> Vec<BigUint> {
    let rows = a.len();
    let mut diag = Vec::new();
    for t in 0..rows.min(cols) {
        loop {
            let Some((pi, pj)) = find_pivot(&a, t, cols) else {
                return diag;
            };
            a.swap(t, pi);
            if pj != t {
                for row in a.iter_mut() {
                    row.swap(t, pj);
                }
            }
            let mut dirty = false;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = &a[i][t] / &a[t][t];
                let (head, tail) = a.split_at_mut(i);
                for (x, y) in tail[0][t..].iter_mut().zip(&head[t][t..]) {
                    *x -= &q * y;
                }
                dirty |= !a[i][t].is_zero();
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = &a[t][j] / &a[t][t];
                for row in a[t..].iter_mut() {
                    let sub = &q * &row[t];
                    row[j] -= sub;
                }
                dirty |= !a[t][j].is_zero();
            }
            if dirty {
                continue;
            }
            let pivot = a[t][t].clone();
            let offender =
                (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a[i][j].is_multiple_of(&pivot)));
            match offender {
                Some(i) => {
                    let (head, tail) = a.split_at_mut(i);
                    for (x, y) in head[t][t..].iter_mut().zip(&tail[0][t..]) {
                        *x += y;
                    }
                }
                None => break,
            }
        }
        diag.push(a[t][t].magnitude().clone());
    }
    diag
}

fn find_pivot(a: &[Vec<BigInt>], t: usize, cols: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for (i, row) in a.iter().enumerate().skip(t) {
        for (j, x) in row.iter().enumerate().take(cols).skip(t) {
            if x.is_zero() {
                continue;
            }
            match best {
                Some((bi, bj)) if a[bi][bj].magnitude() <= x.magnitude() => {}
                _ => best = Some((i, j)),
            }
        }
    }
    best
}

/// The relation columns of `p` laid out as a `k × c` row-major matrix.
fn relation_matrix(k: usize, columns: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    (0..k)
        .map(|i| columns.iter().map(|col| col[i].clone()).collect())
        .collect()
}

pub fn smith_normal_form(p: &ZPresentation) -> ZNormalForm {
    let matrix = relation_matrix(p.generators, &p.relations);
    let diag = smith_diagonal(matrix, p.relations.len());
    ZNormalForm {
        free_rank: p.generators - diag.len(),
        invariant_factors: diag.into_iter().filter(|d| !d.is_one()).collect(),
    }
}

/// `{1: free_rank, 0: Σ Ω(d_i)}`.
pub fn length_vector_z(m: &ZNormalForm, bound: FactorBound) -> Result<LengthVector, ZModuleError> {
    let mut v = LengthVector::new();
    v.add_at(1, BigUint::from(m.free_rank));
    for d in &m.invariant_factors {
        v.add_at(0, big_omega(d, bound)?);
    }
    Ok(v)
}

/// A prime ideal of `Z`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ZPrime {
    Zero,
    Rational(BigUint),
}

impl fmt::Display for ZPrime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ZPrime::Zero => f.write_str("(0)"),
            ZPrime::Rational(p) => write!(f, "({p})"),
        }
    }
}

pub fn associated_primes_z(
    m: &ZNormalForm,
    bound: FactorBound,
) -> Result<BTreeSet<ZPrime>, ZModuleError> {
    let mut out = BTreeSet::new();
    if m.free_rank > 0 {
        out.insert(ZPrime::Zero);
    }
    for d in &m.invariant_factors {
        for (p, _) in factorize(d, bound)? {
            out.insert(ZPrime::Rational(p));
        }
    }
    Ok(out)
}

/// Λ(M): the elements generating finite-length (here: finite) cyclic subgroups.
pub fn lambda_z(m: &ZNormalForm) -> ZNormalForm {
    ZNormalForm {
        free_rank: 0,
        invariant_factors: m.invariant_factors.clone(),
    }
}

/// Presentation of `M / ⟨extra⟩`.
pub fn quotient_z(p: &ZPresentation, extra: &[Vec<BigInt>]) -> Result<ZPresentation, ZModuleError> {
    let mut relations = p.relations.clone();
    relations.extend(extra.iter().cloned());
    ZPresentation::new(p.generators, relations)
}

/// Presentation of the subgroup of `M` generated by the images of `gens`, as a quotient of
/// the free group on those generators: its relations are the `c ∈ Z^s` with
/// `Σ c_i·gens_i ∈ span(relations of M)`.
pub fn submodule_z(p: &ZPresentation, gens: &[Vec<BigInt>]) -> Result<ZPresentation, ZModuleError> {
    // Validate heights through the same constructor.
    ZPresentation::new(p.generators, gens.to_vec())?;
    let s = gens.len();
    let mut columns: Vec<Vec<BigInt>> = gens.to_vec();
    columns.extend(p.relations.iter().cloned());
    let matrix = relation_matrix(p.generators, &columns);
    let relations = integer_kernel(matrix, columns.len())
        .into_iter()
        .map(|mut v| {
            v.truncate(s);
            v
        })
        .filter(|v| v.iter().any(|x| !x.is_zero()))
        .collect();
    ZPresentation::new(s, relations)
}

/// A basis of `{x ∈ Z^cols : A x = 0}` for a row-major matrix `A`, by unimodular column
/// reduction of `A` while tracking the transform.
pub fn integer_kernel(mut a: Vec<Vec<BigInt>>, cols: usize) -> Vec<Vec<BigInt>> {
    // u[j] is column j of the transform.
    let mut u: Vec<Vec<BigInt>> = (0..cols)
        .map(|j| {
            let mut col = vec![BigInt::zero(); cols];
            col[j] = BigInt::one();
            col
        })
        .collect();
    let mut lead = 0;
    for r in 0..a.len() {
        if lead == cols {
            break;
        }
        loop {
            let pivot = (lead..cols)
                .filter(|&j| !a[r][j].is_zero())
                .min_by(|&x, &y| a[r][x].magnitude().cmp(a[r][y].magnitude()));
            let Some(pj) = pivot else { break };
            swap_columns(&mut a, &mut u, lead, pj);
            let mut done = true;
            for j in lead + 1..cols {
                if a[r][j].is_zero() {
                    continue;
                }
                let q = &a[r][j] / &a[r][lead];
                for row in a.iter_mut() {
                    let sub = &q * &row[lead];
                    row[j] -= sub;
                }
                let (left, right) = u.split_at_mut(j);
                for (x, y) in right[0].iter_mut().zip(&left[lead]) {
                    *x -= &q * y;
                }
                done &= a[r][j].is_zero();
            }
            if done {
                lead += 1;
                break;
            }
        }
    }
    u.drain(lead..).collect()
}

fn swap_columns(a: &mut [Vec<BigInt>], u: &mut [Vec<BigInt>], i: usize, j: usize) {
    if i == j {
        return;
    }
    for row in a.iter_mut() {
        row.swap(i, j);
    }
    u.swap(i, j);
}
