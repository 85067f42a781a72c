//! Monomial ideals in `k[x_1..x_n]`, standard pairs and local multiplicities.
//!
//! A face `F ⊆ {1..n}` stands for the monomial prime `P_F̄ = ⟨x_j : j ∉ F⟩`, whose coheight in
//! `k[x_1..x_n]` is `|F|`. For `M = A/I` the local multiplicity `ℓ_P(M)` at `P = P_F̄` is the
//! length of the finite-length part of `M` localized at `P`. Inverting the `x_i` with `i ∈ F`
//! turns `I` into `I' = I : (Π_{i∈F} x_i)^∞`, and the finite-length part is
//! `(I' : P^∞) / I'`, whose length is the number of monomials in the variables `F̄` lying in
//! `(I' : P^∞)` but not in `I'`. [`local_multiplicity_oracle`] counts those monomials directly;
//! [`standard_pairs`] produces the same numbers as the count of standard pairs with face `F`.
//!
//! # Enumeration box
//!
//! Let `d_i` be the largest exponent of `x_i` among the minimal generators. If a monomial `m`
//! has `m_i ≥ d_i` then no generator's `x_i`-exponent is binding, so `m ∈ I ⟺ m·x_i ∈ I`, and
//! by induction `m ∈ I ⟺ m·x_i^N ∈ I` for all `N`. Hence `m ∉ I` implies
//! `m ∉ (I : x_i^∞)`. Consequently a monomial outside the box `{m : m_i < d_i}` lies in a
//! saturation `(I : x_i^∞)` only if it already lies in `I`, so gap monomials and standard-pair
//! roots all live in the box (roots have `a_i = 0` on their face), and enumerating the box is
//! complete. When `d_i = 0` the box is empty in that coordinate.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// An exponent vector.
pub type Monomial = Vec<u32>;

/// A set of variable indices, stored as a bitmask (bit `i` is variable `i`, zero-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Face(pub u32);

impl Face {
    pub const EMPTY: Face = Face(0);

    pub fn full(n_vars: usize) -> Face {
        assert!(n_vars <= 31, "at most 31 variables are supported");
        Face((1u32 << n_vars) - 1)
    }

    pub fn from_vars(vars: impl IntoIterator<Item = usize>) -> Face {
        Face(vars.into_iter().fold(0, |acc, i| acc | (1 << i)))
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 & (1 << i) != 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn with(self, i: usize) -> Face {
        Face(self.0 | (1 << i))
    }

    pub fn complement(self, n_vars: usize) -> Face {
        Face(!self.0 & Face::full(n_vars).0)
    }

    pub fn vars(self) -> impl Iterator<Item = usize> {
        (0..32).filter(move |&i| self.contains(i))
    }

    /// All faces of `n_vars` variables, by decreasing size and then numerically.
    pub fn all(n_vars: usize) -> Vec<Face> {
        let mut faces: Vec<Face> = (0..=Face::full(n_vars).0).map(Face).collect();
        faces.sort_by(|a, b| b.len().cmp(&a.len()).then(a.0.cmp(&b.0)));
        faces
    }
}

/// A monomial ideal, kept as its sorted set of minimal generators.
///
/// The zero ideal has no generators; the unit ideal is generated by the zero vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    n_vars: usize,
    generators: Vec<Monomial>,
}

/// `a` divides `b` componentwise.
pub fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

pub fn lcm(a: &[u32], b: &[u32]) -> Monomial {
    a.iter().zip(b).map(|(&x, &y)| x.max(y)).collect()
}

/// Drops every generator that is a multiple of another one.
pub fn minimalize(n_vars: usize, gens: impl IntoIterator<Item = Monomial>) -> MonomialIdeal {
    let mut gens: Vec<Monomial> = gens.into_iter().collect();
    for g in &gens {
        assert_eq!(g.len(), n_vars, "exponent vector of the wrong length");
    }
    // After sorting by total degree a generator can only be divided by an earlier one.
    gens.sort_by(|a, b| {
        let da: u64 = a.iter().map(|&x| x as u64).sum();
        let db: u64 = b.iter().map(|&x| x as u64).sum();
        da.cmp(&db).then_with(|| a.cmp(b))
    });
    gens.dedup();
    let mut kept: Vec<Monomial> = Vec::with_capacity(gens.len());
    for g in gens {
        if !kept.iter().any(|k| divides(k, &g)) {
            kept.push(g);
        }
    }
    kept.sort();
    MonomialIdeal {
        n_vars,
        generators: kept,
    }
}

impl MonomialIdeal {
    pub fn zero(n_vars: usize) -> Self {
        MonomialIdeal {
            n_vars,
            generators: Vec::new(),
        }
    }

    pub fn unit(n_vars: usize) -> Self {
        MonomialIdeal {
            n_vars,
            generators: vec![vec![0; n_vars]],
        }
    }

    /// The monomial prime `⟨x_j : j ∉ face⟩`.
    pub fn prime(n_vars: usize, face: Face) -> Self {
        minimalize(
            n_vars,
            face.complement(n_vars)
                .vars()
                .map(|j| unit_vector(n_vars, j, 1)),
        )
    }

    /// `⟨x_j : j ∉ face⟩^power`: all monomials of degree `power` in the variables off the face.
    pub fn prime_power(n_vars: usize, face: Face, power: u32) -> Self {
        let vars: Vec<usize> = face.complement(n_vars).vars().collect();
        let mut gens = Vec::new();
        let mut current = vec![0u32; n_vars];
        compositions(&vars, power, &mut current, &mut gens);
        minimalize(n_vars, gens)
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.generators
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.generators.iter().any(|g| g.iter().all(|&x| x == 0))
    }

    pub fn contains(&self, m: &[u32]) -> bool {
        self.generators.iter().any(|g| divides(g, m))
    }

    /// `I ⊆ J`.
    pub fn is_subset_of(&self, other: &MonomialIdeal) -> bool {
        self.generators.iter().all(|g| other.contains(g))
    }

    /// `d_i`: the largest exponent of `x_i` over the minimal generators.
    pub fn max_exponents(&self) -> Vec<u32> {
        let mut d = vec![0; self.n_vars];
        for g in &self.generators {
            for (di, &x) in d.iter_mut().zip(g) {
                *di = (*di).max(x);
            }
        }
        d
    }

    /// `I + J`.
    pub fn sum(&self, other: &MonomialIdeal) -> MonomialIdeal {
        minimalize(
            self.n_vars,
            self.generators.iter().chain(&other.generators).cloned(),
        )
    }

    /// `I ∩ J` by pairwise lcm of generators.
    pub fn intersect(&self, other: &MonomialIdeal) -> MonomialIdeal {
        let mut gens = Vec::with_capacity(self.generators.len() * other.generators.len());
        for a in &self.generators {
            for b in &other.generators {
                gens.push(lcm(a, b));
            }
        }
        minimalize(self.n_vars, gens)
    }

    /// `(I : m)`, generated by `g / gcd(g, m)`.
    pub fn colon_monomial(&self, m: &[u32]) -> MonomialIdeal {
        minimalize(
            self.n_vars,
            self.generators.iter().map(|g| {
                g.iter()
                    .zip(m)
                    .map(|(&x, &y)| x.saturating_sub(y))
                    .collect()
            }),
        )
    }

    /// Sets the exponents of all variables in `face` to zero: `(I : (Π_{i∈face} x_i)^∞)`.
    pub fn strip(&self, face: Face) -> MonomialIdeal {
        minimalize(
            self.n_vars,
            self.generators.iter().map(|g| {
                g.iter()
                    .enumerate()
                    .map(|(i, &x)| if face.contains(i) { 0 } else { x })
                    .collect()
            }),
        )
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, g) in self.generators.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write_monomial(f, g, None)?;
        }
        f.write_str(")")
    }
}

/// Writes `m` as `x1^2*x3`, or with the given variable names. The empty monomial is `1`.
pub fn write_monomial(
    f: &mut dyn fmt::Write,
    m: &[u32],
    names: Option<&[alloc::string::String]>,
) -> fmt::Result {
    let mut first = true;
    for (i, &e) in m.iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !first {
            f.write_str("*")?;
        }
        first = false;
        match names {
            Some(names) => f.write_str(&names[i])?,
            None => write!(f, "x{}", i + 1)?,
        }
        if e > 1 {
            write!(f, "^{e}")?;
        }
    }
    if first {
        f.write_str("1")?;
    }
    Ok(())
}

fn unit_vector(n_vars: usize, i: usize, e: u32) -> Monomial {
    let mut v = vec![0; n_vars];
    v[i] = e;
    v
}

fn compositions(vars: &[usize], remaining: u32, current: &mut Monomial, out: &mut Vec<Monomial>) {
    match vars {
        [] => {
            if remaining == 0 {
                out.push(current.clone());
            }
        }
        [last] => {
            current[*last] = remaining;
            out.push(current.clone());
            current[*last] = 0;
        }
        [head, rest @ ..] => {
            for e in 0..=remaining {
                current[*head] = e;
                compositions(rest, remaining - e, current, out);
            }
            current[*head] = 0;
        }
    }
}

/// `(I : x_i^∞)`.
pub fn saturate_variable(ideal: &MonomialIdeal, i: usize) -> MonomialIdeal {
    ideal.strip(Face::EMPTY.with(i))
}

/// `⋂_{j∈vars} (I : x_j^∞)`, which is `(I : ⟨x_j : j ∈ vars⟩^∞)`. An empty `vars` returns `I`.
pub fn face_saturation(ideal: &MonomialIdeal, vars: Face) -> MonomialIdeal {
    let mut iter = vars.vars().filter(|&j| j < ideal.n_vars);
    let Some(first) = iter.next() else {
        return ideal.clone();
    };
    iter.fold(saturate_variable(ideal, first), |acc, j| {
        acc.intersect(&saturate_variable(ideal, j))
    })
}

/// Calls `visit` on every exponent vector `a` with `a_i < bounds[i]`, in lex order.
/// Coordinates with bound 0 make the box empty.
pub fn for_each_in_box(bounds: &[u32], mut visit: impl FnMut(&[u32])) {
    if bounds.contains(&0) {
        return;
    }
    let n = bounds.len();
    let mut a = vec![0u32; n];
    loop {
        visit(&a);
        let mut i = n;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            a[i] += 1;
            if a[i] < bounds[i] {
                break;
            }
            a[i] = 0;
        }
    }
}

/// `ℓ_P(A/I)` at `P = ⟨x_j : j ∉ face⟩`, by counting gap monomials of the saturation.
pub fn local_multiplicity_oracle(ideal: &MonomialIdeal, face: Face) -> u64 {
    let n = ideal.n_vars;
    let off_face = face.complement(n);
    let stripped = ideal.strip(face);
    if off_face.is_empty() {
        // P = (0): the localization is a field or zero.
        return u64::from(!stripped.is_unit());
    }
    let saturated = face_saturation(&stripped, off_face);
    let d = stripped.max_exponents();
    let bounds: Vec<u32> = (0..n)
        .map(|i| if face.contains(i) { 1 } else { d[i] })
        .collect();
    let mut count = 0;
    for_each_in_box(&bounds, |m| {
        if saturated.contains(m) && !stripped.contains(m) {
            count += 1;
        }
    });
    count
}

/// A standard pair `(x^root, face)`: the monomials `x^root · x_F^*` avoid `I`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StandardPair {
    pub root: Monomial,
    pub face: Face,
}

/// The standard pairs of `I`, grouped by face (decreasing size, then numeric) and with roots in
/// lex order within a face.
///
/// `(a, F)` is admissible when `a` vanishes on `F` and `a ∉ (I : x_F^∞)`. An admissible pair is
/// dominated by a larger admissible pair exactly when it is dominated by `(a', F ∪ {i})` for a
/// single `i ∉ F`, with `a'` equal to `a` except `a'_i = 0`: admissibility only gets harder as
/// the face grows, so checking the one-step extensions suffices.
pub fn standard_pairs(ideal: &MonomialIdeal) -> Vec<StandardPair> {
    let n = ideal.n_vars;
    let d = ideal.max_exponents();
    let saturations: BTreeMap<Face, MonomialIdeal> = Face::all(n)
        .into_iter()
        .map(|f| (f, ideal.strip(f)))
        .collect();
    let mut pairs = Vec::new();
    for face in Face::all(n) {
        let sat = &saturations[&face];
        let bounds: Vec<u32> = (0..n)
            .map(|i| if face.contains(i) { 1 } else { d[i] })
            .collect();
        for_each_in_box(&bounds, |a| {
            if sat.contains(a) {
                return;
            }
            let dominated = (0..n).filter(|&i| !face.contains(i)).any(|i| {
                let mut shorter = a.to_vec();
                shorter[i] = 0;
                !saturations[&face.with(i)].contains(&shorter)
            });
            if !dominated {
                pairs.push(StandardPair {
                    root: a.to_vec(),
                    face,
                });
            }
        });
    }
    pairs
}

/// `s(f)`: number of standard pairs whose face has `f` variables (nonzero entries only).
pub fn face_count_vector(ideal: &MonomialIdeal) -> BTreeMap<usize, u64> {
    let mut counts = BTreeMap::new();
    for p in standard_pairs(ideal) {
        *counts.entry(p.face.len()).or_insert(0) += 1;
    }
    counts
}

/// Krull dimension of `A/I`: the largest face among the standard pairs, `None` for the unit ideal.
pub fn dimension(ideal: &MonomialIdeal) -> Option<usize> {
    standard_pairs(ideal).iter().map(|p| p.face.len()).max()
}
