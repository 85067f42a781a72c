//! Text grammars for rings, ideals, modules, matrices and torsion tables.
//!
//! ```text
//! ring   := base ( "[" var ( "," var )* "]" )?
//! base   := "Z" | "Q" | "GF(" digits ")"
//! module := piece ( "(+)" piece )*
//! piece  := "(" gens? ")"
//! gens   := gen ( "," gen )*
//! gen    := digits | "1" | factor ( "*" factor )*
//! factor := var ( "^" digits )?
//! ```
//!
//! Whitespace is allowed between tokens. Several integer generators in one piece are
//! replaced by their gcd.

use std::collections::BTreeMap;

use lenkrull_core::length::{BaseRing, CyclicPiece, ModuleBody, ModuleDescriptor, RingDescriptor};
use lenkrull_core::monomial::{minimalize, Monomial};
use lenkrull_core::zmodule::{is_squarefree, FactorBound, ZPresentation};
use lenkrull_core::LocalPidModule;
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;

use crate::error::{CliError, ErrorCode, Field};

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
    field: Field,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str, field: Field) -> Self {
        Cursor { src, pos: 0, field }
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.rest().chars().next() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn error(&self, start: usize, end: usize, message: impl Into<String>) -> CliError {
        CliError::syntax(self.field, start, end.max(start), message)
    }

    fn unexpected(&mut self, expected: &str) -> CliError {
        self.skip_ws();
        let width = self.rest().chars().next().map_or(0, char::len_utf8);
        let found = match self.rest().chars().next() {
            Some(c) => format!("`{c}`"),
            None => "end of input".to_string(),
        };
        self.error(
            self.pos,
            self.pos + width,
            format!("expected {expected}, found {found}"),
        )
    }

    fn expect(&mut self, token: &str) -> Result<(), CliError> {
        if self.eat(token) {
            Ok(())
        } else {
            Err(self.unexpected(&format!("`{token}`")))
        }
    }

    fn finish(&mut self) -> Result<(), CliError> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.unexpected("end of input"))
        }
    }

    fn take_while(&mut self, f: impl Fn(char) -> bool) -> (usize, &'a str) {
        self.skip_ws();
        let start = self.pos;
        let len = self
            .rest()
            .find(|c: char| !f(c))
            .unwrap_or(self.rest().len());
        self.pos += len;
        (start, &self.src[start..self.pos])
    }

    fn digits(&mut self) -> Result<(usize, BigUint), CliError> {
        let (start, s) = self.take_while(|c| c.is_ascii_digit());
        if s.is_empty() {
            return Err(self.unexpected("a number"));
        }
        Ok((start, s.parse().expect("ascii digits")))
    }

    fn small(&mut self, what: &str) -> Result<u64, CliError> {
        let (start, n) = self.digits()?;
        u64::try_from(&n)
            .map_err(|_| self.error(start, self.pos, format!("{what} {n} is too large")))
    }

    fn signed(&mut self) -> Result<BigInt, CliError> {
        let negative = self.eat("-");
        let (_, n) = self.digits()?;
        let n = BigInt::from(n);
        Ok(if negative { -n } else { n })
    }

    fn ident(&mut self) -> Result<(usize, &'a str), CliError> {
        self.skip_ws();
        match self.rest().chars().next() {
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
            _ => return Err(self.unexpected("a variable name")),
        }
        Ok(self.take_while(|c| c.is_ascii_alphanumeric() || c == '_'))
    }
}

pub fn parse_ring(s: &str, bound: FactorBound) -> Result<RingDescriptor, CliError> {
    let mut c = Cursor::new(s, Field::Ring);
    let base_start = {
        c.skip_ws();
        c.pos
    };
    let base = if c.eat("GF(") {
        let (start, p) = c.digits()?;
        let end = c.pos;
        c.expect(")")?;
        match lenkrull_core::zmodule::is_prime(&p, bound) {
            Ok(true) => BaseRing::FiniteField(p),
            Ok(false) => {
                return Err(CliError::new(
                    ErrorCode::NotPrime,
                    format!("GF({p}): {p} is not prime"),
                )
                .at(Field::Ring, start, end))
            }
            Err(e) => return Err(CliError::from(e).at(Field::Ring, start, end)),
        }
    } else if c.eat("Z") {
        BaseRing::Integers
    } else if c.eat("Q") {
        BaseRing::Rationals
    } else {
        return Err(c.unexpected("`Z`, `Q` or `GF(p)`"));
    };
    let base_end = c.pos;
    let mut vars: Vec<String> = Vec::new();
    if c.eat("[") {
        loop {
            let (start, name) = c.ident()?;
            if vars.iter().any(|v| v == name) {
                return Err(CliError::new(
                    ErrorCode::DuplicateVariable,
                    format!("variable `{name}` declared twice"),
                )
                .at(Field::Ring, start, c.pos));
            }
            vars.push(name.to_string());
            if !c.eat(",") {
                break;
            }
        }
        c.expect("]")?;
    }
    c.finish()?;
    RingDescriptor::new(base, vars, bound)
        .map_err(|e| CliError::from(e).at(Field::Ring, base_start, base_end))
}

/// Generators of one ideal: integers (combined by gcd) and monomials.
struct Generators {
    integer: BigUint,
    integer_spans: Vec<(usize, usize)>,
    monomials: Vec<Monomial>,
}

fn parse_generators(
    c: &mut Cursor<'_>,
    ring: &RingDescriptor,
    close: Option<&str>,
) -> Result<Generators, CliError> {
    let n = ring.n_vars();
    let mut out = Generators {
        integer: BigUint::default(),
        integer_spans: Vec::new(),
        monomials: Vec::new(),
    };
    let empty = match close {
        Some(t) => c.rest().trim_start().starts_with(t),
        None => c.at_end(),
    };
    if empty {
        return Ok(out);
    }
    loop {
        match c.peek() {
            Some(d) if d.is_ascii_digit() => {
                let (start, value) = c.digits()?;
                let end = c.pos;
                if c.peek() == Some('*') || c.peek() == Some('^') {
                    return Err(c.error(start, end, "integer coefficients are not supported; list integers as separate generators"));
                }
                if ring.base() != &BaseRing::Integers && value > BigUint::from(1u32) {
                    return Err(CliError::new(
                        ErrorCode::IntegerOverField,
                        format!(
                            "unsupported ideal: integer generator {value} is only allowed over Z"
                        ),
                    )
                    .at(c.field, start, end));
                }
                if value == BigUint::from(1u32) {
                    out.monomials.push(vec![0; n]);
                } else {
                    out.integer = out.integer.gcd(&value);
                    out.integer_spans.push((start, end));
                }
            }
            _ => {
                let mut m = vec![0u32; n];
                loop {
                    let (start, name) = c.ident()?;
                    let end = c.pos;
                    let Some(j) = ring.vars().iter().position(|v| v == name) else {
                        return Err(CliError::new(
                            ErrorCode::UnknownVariable,
                            format!("unknown variable `{name}` for ring {ring}"),
                        )
                        .at(c.field, start, end));
                    };
                    let e = if c.eat("^") {
                        let e = c.small("exponent")?;
                        u32::try_from(e)
                            .map_err(|_| c.error(start, c.pos, "exponent is too large"))?
                    } else {
                        1
                    };
                    m[j] = m[j]
                        .checked_add(e)
                        .ok_or_else(|| c.error(start, c.pos, "exponent is too large"))?;
                    if !c.eat("*") {
                        break;
                    }
                }
                out.monomials.push(m);
            }
        }
        if !c.eat(",") {
            break;
        }
    }
    Ok(out)
}

fn piece_from(
    g: Generators,
    ring: &RingDescriptor,
    bound: FactorBound,
    field: Field,
    piece_span: (usize, usize),
) -> Result<CyclicPiece, CliError> {
    if ring.n_vars() > 0 && g.integer > BigUint::from(1u32) {
        let (start, end) = match g.integer_spans.as_slice() {
            [one] => *one,
            _ => piece_span,
        };
        match is_squarefree(&g.integer, bound) {
            Ok(true) => {}
            Ok(false) => {
                let value = &g.integer;
                return Err(CliError::new(
                    ErrorCode::NotSquarefree,
                    format!("unsupported ideal: integer generator {value} must be squarefree when variables are present"),
                )
                .at(field, start, end));
            }
            Err(e) => return Err(CliError::from(e).at(field, start, end)),
        }
    }
    // An integer 1 makes the whole piece zero.
    let monomials = if g.integer == BigUint::from(1u32) {
        vec![vec![0; ring.n_vars()]]
    } else {
        g.monomials
    };
    let integer_part = if g.integer == BigUint::from(1u32) {
        BigUint::default()
    } else {
        g.integer
    };
    Ok(CyclicPiece {
        integer_part,
        monomial_part: minimalize(ring.n_vars(), monomials),
    })
}

/// An ideal written as a bare generator list, e.g. `x^2, x*y` or `6, x`.
pub fn parse_ideal(
    ring: &RingDescriptor,
    s: &str,
    bound: FactorBound,
) -> Result<CyclicPiece, CliError> {
    let mut c = Cursor::new(s, Field::Ideal);
    let parens = c.eat("(");
    let g = parse_generators(&mut c, ring, parens.then_some(")"))?;
    if parens {
        c.expect(")")?;
    }
    c.finish()?;
    piece_from(g, ring, bound, Field::Ideal, (0, s.len()))
}

pub fn parse_module(
    ring: &RingDescriptor,
    s: &str,
    bound: FactorBound,
) -> Result<ModuleDescriptor, CliError> {
    let mut c = Cursor::new(s, Field::Module);
    let mut pieces = Vec::new();
    loop {
        c.skip_ws();
        let start = c.pos;
        c.expect("(")?;
        let g = parse_generators(&mut c, ring, Some(")"))?;
        c.expect(")")?;
        pieces.push(piece_from(g, ring, bound, Field::Module, (start, c.pos))?);
        if !c.eat("(+)") {
            break;
        }
    }
    c.finish()?;
    Ok(ModuleDescriptor::new(
        ring.clone(),
        ModuleBody::Pieces(pieces),
        bound,
    )?)
}

/// Rows of a `k × c` matrix, e.g. `[[2,0],[0,0]]`. Each column is one relation.
pub fn parse_matrix(s: &str) -> Result<ZPresentation, CliError> {
    let mut c = Cursor::new(s, Field::Matrix);
    let rows = parse_rows(&mut c)?;
    c.finish()?;
    let k = rows.len();
    let width = rows.first().map_or(0, Vec::len);
    if let Some(i) = rows.iter().position(|r| r.len() != width) {
        return Err(CliError::syntax(
            Field::Matrix,
            0,
            s.len(),
            format!("row {i} has {} entries, row 0 has {width}", rows[i].len()),
        ));
    }
    let columns = (0..width)
        .map(|j| rows.iter().map(|r| r[j].clone()).collect())
        .collect();
    Ok(ZPresentation::new(k, columns)?)
}

fn parse_rows(c: &mut Cursor<'_>) -> Result<Vec<Vec<BigInt>>, CliError> {
    c.expect("[")?;
    let mut rows = Vec::new();
    if c.eat("]") {
        return Ok(rows);
    }
    loop {
        c.expect("[")?;
        let mut row = Vec::new();
        if !c.eat("]") {
            loop {
                row.push(c.signed()?);
                if !c.eat(",") {
                    break;
                }
            }
            c.expect("]")?;
        }
        rows.push(row);
        if !c.eat(",") {
            break;
        }
    }
    c.expect("]")?;
    Ok(rows)
}

/// `{"generators": k, "relations": [[..], ..]}` with relations listed as columns.
pub fn parse_presentation_json(s: &str) -> Result<ZPresentation, CliError> {
    #[derive(serde::Deserialize)]
    #[serde(deny_unknown_fields)]
    struct Json {
        generators: usize,
        relations: Vec<Vec<serde_json::Number>>,
    }
    let bad = |message: String| CliError::syntax(Field::Presentation, 0, s.len(), message);
    let json: Json = serde_json::from_str(s).map_err(|e| bad(e.to_string()))?;
    let mut relations = Vec::new();
    for r in json.relations {
        let col: Result<Vec<BigInt>, _> = r.iter().map(|x| x.as_str().parse::<BigInt>()).collect();
        relations.push(col.map_err(|_| bad("relation entries must be integers".to_string()))?);
    }
    Ok(ZPresentation::new(json.generators, relations)?)
}

/// `i:n_i` pairs, e.g. `1:2, 3:1` for `M_1^2 ⊕ M_3`.
pub fn parse_torsion(s: &str) -> Result<BTreeMap<u64, u64>, CliError> {
    let mut c = Cursor::new(s, Field::Torsion);
    let mut out = BTreeMap::new();
    if c.at_end() {
        return Ok(out);
    }
    loop {
        c.skip_ws();
        let start = c.pos;
        let i = c.small("index")?;
        if i == 0 {
            return Err(c.error(start, c.pos, "torsion indices start at 1"));
        }
        c.expect(":")?;
        let n = c.small("multiplicity")?;
        *out.entry(i).or_insert(0) += n;
        if !c.eat(",") {
            break;
        }
    }
    c.finish()?;
    out.retain(|_, n| *n > 0);
    Ok(out)
}

pub fn local_pid_module(free: u64, torsion: &BTreeMap<u64, u64>) -> LocalPidModule {
    LocalPidModule::new(free, torsion.iter().map(|(&i, &n)| (i, n)))
}
