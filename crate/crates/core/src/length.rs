//! Length vectors, ordinal length, reduced length and Cantor-Bendixson rank of modules over
//! `Z`, `GF(p)[x..]`, `Q[x..]` and `Z[x..]`.
//!
//! Supported modules are finite direct sums of cyclic pieces `A/I` with
//! `I = ⟨m, monomials⟩` (`m` a squarefree integer, only over `Z[x..]`), plus arbitrary
//! integer presentations over `Z` itself. In this family associated primes are monomial primes
//! (possibly with a rational prime `p | m` added) and their local multiplicities are counted by
//! standard pairs, so no Gröbner machinery is needed.
//!
//! Coheights: over a field `k`, `⟨x_j : j ∉ F⟩ ⊂ k[x..]` has coheight `|F|`. Over `Z`, the
//! same prime has coheight `|F| + 1`, while `⟨p, x_j : j ∉ F⟩` has coheight `|F|`.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::monomial::{face_count_vector, MonomialIdeal};
use crate::ordinal::Ordinal;
use crate::zmodule::{
    factorize, is_prime, length_vector_z, smith_normal_form, FactorBound, ZModuleError,
    ZNormalForm, ZPresentation,
};

/// Finitely supported map `α ↦ ℓ_α(M)`. Zero entries are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LengthVector {
    counts: BTreeMap<u32, BigUint>,
}

impl LengthVector {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_counts<C: Into<BigUint>>(counts: impl IntoIterator<Item = (u32, C)>) -> Self {
        let mut v = Self::new();
        for (alpha, c) in counts {
            v.add_at(alpha, c.into());
        }
        v
    }

    pub fn add_at(&mut self, coheight: u32, count: BigUint) {
        if count.is_zero() {
            return;
        }
        *self.counts.entry(coheight).or_default() += count;
    }

    /// `ℓ_α`, zero outside the support.
    pub fn get(&self, coheight: u32) -> BigUint {
        self.counts.get(&coheight).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, &BigUint)> {
        self.counts.iter().map(|(&a, c)| (a, c))
    }

    pub fn is_zero(&self) -> bool {
        self.counts.is_empty()
    }

    /// Pointwise sum, i.e. the length vector of a direct sum.
    pub fn plus(&self, other: &LengthVector) -> LengthVector {
        let mut out = self.clone();
        for (a, c) in other.iter() {
            out.add_at(a, c.clone());
        }
        out
    }

    /// `ℓ = Σ ω^α · ℓ_α`, largest coheight first.
    pub fn length(&self) -> Ordinal {
        Ordinal::from_length_vector(self.iter().map(|(a, c)| (a, c.clone())))
    }

    /// `ℓ' = Σ ω^α · ℓ_{α+1}`; the coheight-0 part is dropped.
    pub fn reduced_length(&self) -> Ordinal {
        Ordinal::from_length_vector(
            self.iter()
                .filter(|&(a, _)| a > 0)
                .map(|(a, c)| (a - 1, c.clone())),
        )
    }

    /// Largest coheight in the support.
    pub fn krull_dimension(&self) -> Result<u32, LengthError> {
        self.counts
            .keys()
            .next_back()
            .copied()
            .ok_or(LengthError::DimensionOfZeroModule)
    }

    /// Checks `ℓ = ω·ℓ' + ℓ_0`.
    pub fn satisfies_length_identity(&self) -> bool {
        let rebuilt = self
            .reduced_length()
            .left_mul_omega()
            .add(&Ordinal::finite(self.get(0)));
        rebuilt == self.length()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum BaseRing {
    Integers,
    /// `GF(p)`, `p` prime.
    FiniteField(BigUint),
    Rationals,
}

impl fmt::Display for BaseRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseRing::Integers => f.write_str("Z"),
            BaseRing::FiniteField(p) => write!(f, "GF({p})"),
            BaseRing::Rationals => f.write_str("Q"),
        }
    }
}

/// A polynomial ring over `Z`, `GF(p)` or `Q` in named variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingDescriptor {
    base: BaseRing,
    vars: Vec<String>,
}

impl RingDescriptor {
    pub fn new(base: BaseRing, vars: Vec<String>, bound: FactorBound) -> Result<Self, LengthError> {
        if let BaseRing::FiniteField(p) = &base {
            if !is_prime(p, bound)? {
                return Err(LengthError::NotPrime(p.clone()));
            }
        }
        if vars.len() > 31 {
            return Err(LengthError::TooManyVariables(vars.len()));
        }
        for (i, v) in vars.iter().enumerate() {
            if vars[..i].contains(v) {
                return Err(LengthError::DuplicateVariable(v.clone()));
            }
        }
        Ok(RingDescriptor { base, vars })
    }

    pub fn integers() -> Self {
        RingDescriptor {
            base: BaseRing::Integers,
            vars: Vec::new(),
        }
    }

    pub fn base(&self) -> &BaseRing {
        &self.base
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn n_vars(&self) -> usize {
        self.vars.len()
    }

    /// Every finitely generated simple module is finite. True exactly for the finitely
    /// generated rings `Z[x..]` and `GF(p)[x..]`.
    pub fn finite_simple_modules(&self) -> bool {
        !matches!(self.base, BaseRing::Rationals)
    }

    /// Krull dimension of the ring itself.
    pub fn dimension(&self) -> u32 {
        let n = self.vars.len() as u32;
        match self.base {
            BaseRing::Integers => n + 1,
            _ => n,
        }
    }
}

impl fmt::Display for RingDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.base)?;
        if !self.vars.is_empty() {
            write!(f, "[{}]", self.vars.join(","))?;
        }
        Ok(())
    }
}

/// The cyclic module `A / ⟨integer_part, monomial_part⟩`; `integer_part = 0` adds nothing.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CyclicPiece {
    pub integer_part: BigUint,
    pub monomial_part: MonomialIdeal,
}

impl CyclicPiece {
    pub fn monomial(ideal: MonomialIdeal) -> Self {
        CyclicPiece {
            integer_part: BigUint::zero(),
            monomial_part: ideal,
        }
    }

    /// The free cyclic module `A` itself.
    pub fn free(n_vars: usize) -> Self {
        Self::monomial(MonomialIdeal::zero(n_vars))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModuleBody {
    /// Direct sum of cyclic pieces; the piece count is the number of marked generators.
    Pieces(Vec<CyclicPiece>),
    /// An integer presentation, only over `Z` without variables.
    Presentation(ZPresentation),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleDescriptor {
    ring: RingDescriptor,
    body: ModuleBody,
}

impl ModuleDescriptor {
    /// Validates piece invariants against the ring.
    pub fn new(
        ring: RingDescriptor,
        body: ModuleBody,
        bound: FactorBound,
    ) -> Result<Self, LengthError> {
        match &body {
            ModuleBody::Presentation(_) => {
                if ring.base != BaseRing::Integers || !ring.vars.is_empty() {
                    return Err(LengthError::PresentationNeedsIntegers);
                }
            }
            ModuleBody::Pieces(pieces) => {
                for (index, piece) in pieces.iter().enumerate() {
                    if piece.monomial_part.n_vars() != ring.n_vars() {
                        return Err(LengthError::VariableCountMismatch {
                            piece: index,
                            expected: ring.n_vars(),
                            found: piece.monomial_part.n_vars(),
                        });
                    }
                    if piece.integer_part.is_zero() {
                        continue;
                    }
                    if ring.base != BaseRing::Integers {
                        return Err(LengthError::IntegerOverField { piece: index });
                    }
                    if !ring.vars.is_empty()
                        && !crate::zmodule::is_squarefree(&piece.integer_part, bound)?
                    {
                        return Err(LengthError::NotSquarefree {
                            piece: index,
                            value: piece.integer_part.clone(),
                        });
                    }
                }
            }
        }
        Ok(ModuleDescriptor { ring, body })
    }

    /// The ring `A/I` viewed as a module over `A` with one marked generator.
    pub fn quotient_ring(
        ring: RingDescriptor,
        piece: CyclicPiece,
        bound: FactorBound,
    ) -> Result<Self, LengthError> {
        Self::new(ring, ModuleBody::Pieces(alloc::vec![piece]), bound)
    }

    pub fn ring(&self) -> &RingDescriptor {
        &self.ring
    }

    pub fn body(&self) -> &ModuleBody {
        &self.body
    }

    /// Number of marked generators `k` (the module is a quotient of `A^k`).
    pub fn marking_rank(&self) -> usize {
        match &self.body {
            ModuleBody::Pieces(p) => p.len(),
            ModuleBody::Presentation(p) => p.generators(),
        }
    }

    /// Direct sum with another module over the same ring.
    pub fn direct_sum(&self, other: &ModuleDescriptor) -> Option<ModuleDescriptor> {
        if self.ring != other.ring {
            return None;
        }
        let body = match (&self.body, &other.body) {
            (ModuleBody::Pieces(a), ModuleBody::Pieces(b)) => {
                ModuleBody::Pieces(a.iter().chain(b).cloned().collect())
            }
            _ => {
                let a = self.as_presentation()?;
                let b = other.as_presentation()?;
                let k = a.generators() + b.generators();
                let mut rel = Vec::new();
                for r in a.relations() {
                    let mut col = r.clone();
                    col.resize(k, Zero::zero());
                    rel.push(col);
                }
                for r in b.relations() {
                    let mut col = alloc::vec![Zero::zero(); a.generators()];
                    col.extend(r.iter().cloned());
                    rel.push(col);
                }
                ModuleBody::Presentation(ZPresentation::new(k, rel).ok()?)
            }
        };
        Some(ModuleDescriptor {
            ring: self.ring.clone(),
            body,
        })
    }

    /// Over `Z` without variables, the module as an integer presentation.
    pub fn as_presentation(&self) -> Option<ZPresentation> {
        if self.ring.base != BaseRing::Integers || !self.ring.vars.is_empty() {
            return None;
        }
        Some(match &self.body {
            ModuleBody::Presentation(p) => p.clone(),
            ModuleBody::Pieces(pieces) => {
                let moduli: Vec<BigUint> = pieces
                    .iter()
                    .map(|p| {
                        if p.monomial_part.is_unit() {
                            BigUint::one()
                        } else {
                            p.integer_part.clone()
                        }
                    })
                    .collect();
                ZPresentation::diagonal(&moduli)
            }
        })
    }
}

/// Cantor-Bendixson rank: exact, or bracketed when only bounds are known.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CbResult {
    Exact(Ordinal),
    Bounds { lower: Ordinal, upper: Ordinal },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LengthError {
    NotPrime(BigUint),
    DuplicateVariable(String),
    TooManyVariables(usize),
    /// An integer generator over `GF(p)` or `Q`.
    IntegerOverField {
        piece: usize,
    },
    /// `Z[x..]/(m, ..)` with `m` not squarefree is outside the supported family.
    NotSquarefree {
        piece: usize,
        value: BigUint,
    },
    VariableCountMismatch {
        piece: usize,
        expected: usize,
        found: usize,
    },
    PresentationNeedsIntegers,
    DimensionOfZeroModule,
    Integer(ZModuleError),
}

impl From<ZModuleError> for LengthError {
    fn from(e: ZModuleError) -> Self {
        LengthError::Integer(e)
    }
}

impl fmt::Display for LengthError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LengthError::NotPrime(p) => write!(f, "GF({p}): {p} is not prime"),
            LengthError::DuplicateVariable(v) => write!(f, "variable `{v}` declared twice"),
            LengthError::TooManyVariables(n) => write!(f, "{n} variables; at most 31 are supported"),
            LengthError::IntegerOverField { piece } => write!(
                f,
                "unsupported ideal in piece {piece}: integer generators are only allowed over Z"
            ),
            LengthError::NotSquarefree { piece, value } => write!(
                f,
                "unsupported ideal in piece {piece}: integer generator {value} must be squarefree when variables are present"
            ),
            LengthError::VariableCountMismatch {
                piece,
                expected,
                found,
            } => write!(f, "piece {piece} uses {found} variables, the ring has {expected}"),
            LengthError::PresentationNeedsIntegers => {
                f.write_str("unsupported ring: presentation matrices are only supported over Z")
            }
            LengthError::DimensionOfZeroModule => {
                f.write_str("the Krull dimension of the zero module is undefined")
            }
            LengthError::Integer(e) => write!(f, "{e}"),
        }
    }
}

/// Face counts of one piece shifted to coheights of the ambient ring.
fn piece_length_vector(
    ring: &RingDescriptor,
    piece: &CyclicPiece,
    bound: FactorBound,
) -> Result<LengthVector, LengthError> {
    let counts = face_count_vector(&piece.monomial_part);
    let mut v = LengthVector::new();
    match ring.base {
        BaseRing::FiniteField(_) | BaseRing::Rationals => {
            for (f, c) in counts {
                v.add_at(f as u32, c.into());
            }
        }
        BaseRing::Integers if piece.integer_part.is_zero() => {
            for (f, c) in counts {
                v.add_at(f as u32 + 1, c.into());
            }
        }
        BaseRing::Integers => {
            let primes = factorize(&piece.integer_part, bound)?;
            if primes.iter().any(|&(_, e)| e > 1) {
                return Err(LengthError::NotSquarefree {
                    piece: 0,
                    value: piece.integer_part.clone(),
                });
            }
            let t = BigUint::from(primes.len());
            for (f, c) in counts {
                v.add_at(f as u32, &t * BigUint::from(c));
            }
        }
    }
    Ok(v)
}

/// `α ↦ ℓ_α(M)` for a supported module.
pub fn length_vector(
    m: &ModuleDescriptor,
    bound: FactorBound,
) -> Result<LengthVector, LengthError> {
    if let Some(p) = m.as_presentation() {
        return Ok(length_vector_z(&smith_normal_form(&p), bound)?);
    }
    let ModuleBody::Pieces(pieces) = &m.body else {
        unreachable!("presentations are only built over Z");
    };
    let mut total = LengthVector::new();
    for (index, piece) in pieces.iter().enumerate() {
        let v = piece_length_vector(&m.ring, piece, bound).map_err(|e| match e {
            LengthError::NotSquarefree { value, .. } => LengthError::NotSquarefree {
                piece: index,
                value,
            },
            other => other,
        })?;
        total = total.plus(&v);
    }
    Ok(total)
}

/// Normal form of an integer module descriptor, when it is one.
pub fn integer_normal_form(m: &ModuleDescriptor) -> Option<ZNormalForm> {
    m.as_presentation().map(|p| smith_normal_form(&p))
}

/// Cantor-Bendixson rank from a length vector and the ring's eligibility flag.
///
/// With finite simple modules the rank is exactly `ℓ'`. Otherwise it lies between `ℓ'` and `ℓ`,
/// and below `ℓ - 1` when `ℓ` is a successor.
pub fn cb_rank_from_vector(ring: &RingDescriptor, v: &LengthVector) -> CbResult {
    if v.is_zero() {
        return CbResult::Exact(Ordinal::zero());
    }
    let reduced = v.reduced_length();
    if ring.finite_simple_modules() {
        CbResult::Exact(reduced)
    } else {
        CbResult::Bounds {
            lower: reduced,
            upper: v.length().saturating_pred(),
        }
    }
}

pub fn cb_rank(m: &ModuleDescriptor, bound: FactorBound) -> Result<CbResult, LengthError> {
    Ok(cb_rank_from_vector(&m.ring, &length_vector(m, bound)?))
}

/// All invariants of a module in one place.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LengthReport {
    pub length_vector: LengthVector,
    pub length: Ordinal,
    pub reduced_length: Ordinal,
    pub cb_rank: CbResult,
    /// `None` for the zero module.
    pub dimension: Option<u32>,
}

pub fn analyze(m: &ModuleDescriptor, bound: FactorBound) -> Result<LengthReport, LengthError> {
    let v = length_vector(m, bound)?;
    debug_assert!(v.satisfies_length_identity());
    Ok(LengthReport {
        length: v.length(),
        reduced_length: v.reduced_length(),
        cb_rank: cb_rank_from_vector(&m.ring, &v),
        dimension: v.krull_dimension().ok(),
        length_vector: v,
    })
}
