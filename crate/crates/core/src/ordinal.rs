//! Ordinals below ω^ω in Cantor normal form.
//!
//! An [`Ordinal`] is stored as its list of terms `ω^e·c` with strictly decreasing
//! exponents and positive coefficients, so structural equality is ordinal equality.
//! Both exponents and coefficients are arbitrary-precision naturals.
//!
//! The textual form uses `w` for ω: `w^3*2 + w + 4`. The zero ordinal is `0`.

use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

/// One Cantor normal form term `ω^exponent · coefficient`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub exponent: BigUint,
    pub coefficient: BigUint,
}

impl Term {
    pub fn new(exponent: impl Into<BigUint>, coefficient: impl Into<BigUint>) -> Self {
        Term {
            exponent: exponent.into(),
            coefficient: coefficient.into(),
        }
    }
}

/// An ordinal below ω^ω.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Ordinal {
    terms: Vec<Term>,
}

/// Rejected term list passed to [`Ordinal::from_terms`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NonCanonical {
    ZeroCoefficient { index: usize },
    ExponentsNotDecreasing { index: usize },
}

impl fmt::Display for NonCanonical {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NonCanonical::ZeroCoefficient { index } => {
                write!(f, "term {index} has a zero coefficient")
            }
            NonCanonical::ExponentsNotDecreasing { index } => {
                write!(
                    f,
                    "term {index} does not have a smaller exponent than its predecessor"
                )
            }
        }
    }
}

impl Ordinal {
    pub fn zero() -> Self {
        Ordinal { terms: Vec::new() }
    }

    /// ω itself.
    pub fn omega() -> Self {
        Self::omega_pow(1u32)
    }

    /// ω^e.
    pub fn omega_pow(exponent: impl Into<BigUint>) -> Self {
        Ordinal {
            terms: alloc::vec![Term::new(exponent, 1u32)],
        }
    }

    pub fn finite(n: impl Into<BigUint>) -> Self {
        let n = n.into();
        if n.is_zero() {
            Self::zero()
        } else {
            Ordinal {
                terms: alloc::vec![Term {
                    exponent: BigUint::zero(),
                    coefficient: n,
                }],
            }
        }
    }

    /// Builds an ordinal from an explicit term list, checking the canonical-form invariants.
    pub fn from_terms(terms: Vec<Term>) -> Result<Self, NonCanonical> {
        for (index, term) in terms.iter().enumerate() {
            if term.coefficient.is_zero() {
                return Err(NonCanonical::ZeroCoefficient { index });
            }
            if index > 0 && terms[index - 1].exponent <= term.exponent {
                return Err(NonCanonical::ExponentsNotDecreasing { index });
            }
        }
        Ok(Ordinal { terms })
    }

    /// `Σ ω^α · counts(α)`, summed from the largest `α` down.
    ///
    /// Entries may come in any order; repeated exponents accumulate and zero counts vanish.
    pub fn from_length_vector<E, C, I>(counts: I) -> Self
    where
        I: IntoIterator<Item = (E, C)>,
        E: Into<BigUint>,
        C: Into<BigUint>,
    {
        let mut merged: alloc::collections::BTreeMap<BigUint, BigUint> = Default::default();
        for (e, c) in counts {
            let c = c.into();
            if c.is_zero() {
                continue;
            }
            *merged.entry(e.into()).or_default() += c;
        }
        Ordinal {
            terms: merged
                .into_iter()
                .rev()
                .map(|(exponent, coefficient)| Term {
                    exponent,
                    coefficient,
                })
                .collect(),
        }
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.terms.iter().all(|t| t.exponent.is_zero())
    }

    /// True for ordinals of the form `β + 1`.
    pub fn is_successor(&self) -> bool {
        self.terms.last().is_some_and(|t| t.exponent.is_zero())
    }

    /// The coefficient of ω^e (zero when absent).
    pub fn coefficient(&self, exponent: &BigUint) -> BigUint {
        self.terms
            .iter()
            .find(|t| &t.exponent == exponent)
            .map(|t| t.coefficient.clone())
            .unwrap_or_default()
    }

    /// The finite tail `n` of `ω·β + n`.
    pub fn finite_part(&self) -> BigUint {
        self.coefficient(&BigUint::zero())
    }

    /// Ordinal sum `self + rhs`. Terms of `self` below the leading exponent of `rhs` are absorbed.
    pub fn add(&self, rhs: &Ordinal) -> Ordinal {
        let Some(lead) = rhs.terms.first() else {
            return self.clone();
        };
        let mut terms: Vec<Term> = self
            .terms
            .iter()
            .take_while(|t| t.exponent >= lead.exponent)
            .cloned()
            .collect();
        let mut rest = rhs.terms.iter();
        match terms.last_mut() {
            Some(last) if last.exponent == lead.exponent => {
                last.coefficient += &lead.coefficient;
                rest.next();
            }
            _ => {}
        }
        terms.extend(rest.cloned());
        Ordinal { terms }
    }

    /// `ω · self`, distributing on the left: every exponent moves up by one.
    pub fn left_mul_omega(&self) -> Ordinal {
        Ordinal {
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    exponent: &t.exponent + 1u32,
                    coefficient: t.coefficient.clone(),
                })
                .collect(),
        }
    }

    /// `(β+1) - 1 = β`; limits and zero are returned unchanged.
    pub fn saturating_pred(&self) -> Ordinal {
        let mut out = self.clone();
        if let Some(last) = out.terms.last_mut() {
            if last.exponent.is_zero() {
                last.coefficient -= 1u32;
                if last.coefficient.is_zero() {
                    out.terms.pop();
                }
            }
        }
        out
    }

    pub fn parse(s: &str) -> Result<Ordinal, OrdinalParseError> {
        Parser { src: s, pos: 0 }.ordinal()
    }
}

impl Ord for Ordinal {
    fn cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.terms.iter().zip(&other.terms) {
            let ord = a
                .exponent
                .cmp(&b.exponent)
                .then_with(|| a.coefficient.cmp(&b.coefficient));
            if ord != Ordering::Equal {
                return ord;
            }
        }
        self.terms.len().cmp(&other.terms.len())
    }
}

impl PartialOrd for Ordinal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<u64> for Ordinal {
    fn from(n: u64) -> Self {
        Ordinal::finite(n)
    }
}

impl fmt::Display for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if t.exponent.is_zero() {
                write!(f, "{}", t.coefficient)?;
                continue;
            }
            if t.exponent.is_one() {
                f.write_str("w")?;
            } else {
                write!(f, "w^{}", t.exponent)?;
            }
            if !t.coefficient.is_one() {
                write!(f, "*{}", t.coefficient)?;
            }
        }
        Ok(())
    }
}

/// Malformed ordinal string. `position` is a byte offset into the input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrdinalParseError {
    pub position: usize,
    pub message: String,
}

impl fmt::Display for OrdinalParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at byte {}: {}", self.position, self.message)
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn fail<T>(&self, message: &str) -> Result<T, OrdinalParseError> {
        Err(OrdinalParseError {
            position: self.pos,
            message: message.into(),
        })
    }

    fn rest(&self) -> &str {
        &self.src[self.pos..]
    }

    fn eat(&mut self, token: &str) -> bool {
        if self.rest().starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn nat(&mut self) -> Result<BigUint, OrdinalParseError> {
        let digits = self.rest().bytes().take_while(u8::is_ascii_digit).count();
        if digits == 0 {
            return self.fail("expected a natural number");
        }
        let text = &self.src[self.pos..self.pos + digits];
        let value = BigUint::parse_bytes(text.as_bytes(), 10).expect("ascii digits");
        self.pos += digits;
        Ok(value)
    }

    fn term(&mut self) -> Result<Term, OrdinalParseError> {
        let start = self.pos;
        if self.eat("w") {
            let exponent = if self.eat("^") {
                self.nat()?
            } else {
                BigUint::one()
            };
            let coefficient = if self.eat("*") {
                self.nat()?
            } else {
                BigUint::one()
            };
            if coefficient.is_zero() {
                self.pos = start;
                return self.fail("zero coefficient");
            }
            Ok(Term {
                exponent,
                coefficient,
            })
        } else {
            let coefficient = self.nat()?;
            if coefficient.is_zero() {
                self.pos = start;
                return self.fail("zero term; `0` is only valid as the whole ordinal");
            }
            Ok(Term {
                exponent: BigUint::zero(),
                coefficient,
            })
        }
    }

    fn ordinal(mut self) -> Result<Ordinal, OrdinalParseError> {
        if self.src == "0" {
            return Ok(Ordinal::zero());
        }
        let mut terms: Vec<Term> = Vec::new();
        loop {
            let start = self.pos;
            let term = self.term()?;
            if let Some(prev) = terms.last() {
                if prev.exponent <= term.exponent {
                    self.pos = start;
                    return self.fail("exponents must be strictly decreasing");
                }
            }
            terms.push(term);
            if self.pos == self.src.len() {
                break;
            }
            if !self.eat(" + ") {
                return self.fail("expected ` + ` or end of input");
            }
        }
        Ok(Ordinal { terms })
    }
}
