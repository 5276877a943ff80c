use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::rat::{parse_rat, rat_to_string, Rat};
use crate::error::{Error, Result};

/// The formal variables a polynomial may use.
///
/// `Z`, `Y`, `W`, `X` are group parameters (points of the additive line) and
/// `T` is the generator of the Hopf algebra `Q[T]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    Z,
    Y,
    W,
    X,
    T,
}

impl Var {
    pub const ALL: [Var; 5] = [Var::Z, Var::Y, Var::W, Var::X, Var::T];

    fn slot(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::Z => "z",
            Var::Y => "y",
            Var::W => "w",
            Var::X => "x",
            Var::T => "T",
        }
    }

    pub fn from_name(name: &str) -> Option<Var> {
        Var::ALL.into_iter().find(|v| v.name() == name)
    }
}

/// Exponent vector over [`Var::ALL`], ordered graded-lexicographically.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial([u32; 5]);

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn var(v: Var, exp: u32) -> Self {
        let mut m = Monomial::default();
        m.0[v.slot()] = exp;
        m
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.0[v.slot()]
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn times(&self, other: &Monomial) -> Monomial {
        let mut out = *self;
        for (a, b) in out.0.iter_mut().zip(other.0.iter()) {
            *a += b;
        }
        out
    }

    fn without(&self, v: Var) -> Monomial {
        let mut out = *self;
        out.0[v.slot()] = 0;
        out
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// No zero coefficient is ever stored, so structural equality is
/// mathematical equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct MPoly {
    terms: BTreeMap<Monomial, Rat>,
}

impl MPoly {
    pub fn zero() -> Self {
        MPoly::default()
    }

    pub fn one() -> Self {
        MPoly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        MPoly::term(c, Monomial::one())
    }

    pub fn var(v: Var) -> Self {
        MPoly::term(Rat::one(), Monomial::var(v, 1))
    }

    pub fn term(c: Rat, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MPoly { terms }
    }

    /// `c * v^exp`
    pub fn var_pow(c: Rat, v: Var, exp: u32) -> Self {
        MPoly::term(c, Monomial::var(v, exp))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn constant_term(&self) -> Rat {
        self.coefficient(&Monomial::one())
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms.keys().map(|m| m.exponent(v)).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    /// Variables that occur with positive exponent.
    pub fn variables(&self) -> Vec<Var> {
        Var::ALL
            .into_iter()
            .filter(|&v| self.terms.keys().any(|m| m.exponent(v) > 0))
            .collect()
    }

    pub fn uses_only(&self, allowed: &[Var]) -> bool {
        self.variables().iter().all(|v| allowed.contains(v))
    }

    /// Coefficient of `v^k`, as a polynomial in the remaining variables.
    pub fn coefficient_in(&self, v: Var, k: u32) -> MPoly {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.exponent(v) == k)
            .map(|(m, c)| (m.without(v), c.clone()))
            .collect();
        MPoly { terms }
    }

    pub fn scale(&self, c: &Rat) -> MPoly {
        if c.is_zero() {
            return MPoly::zero();
        }
        let terms = self.terms.iter().map(|(m, a)| (*m, a * c)).collect();
        MPoly { terms }
    }

    pub fn pow(&self, n: u32) -> MPoly {
        let mut acc = MPoly::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    fn add_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Replace every occurrence of `v` by `replacement`.
    ///
    /// The replacement may mention `v` itself; the substitution is
    /// simultaneous.
    pub fn substitute(&self, v: Var, replacement: &MPoly) -> MPoly {
        if self.degree_in(v) == 0 {
            return self.clone();
        }
        let mut powers = vec![MPoly::one()];
        let mut out = MPoly::zero();
        for (m, c) in &self.terms {
            let k = m.exponent(v) as usize;
            while powers.len() <= k {
                let next = powers.last().unwrap() * replacement;
                powers.push(next);
            }
            let rest = MPoly::term(c.clone(), m.without(v));
            out += &(&rest * &powers[k]);
        }
        out
    }

    /// Set `v` to zero.
    pub fn at_zero(&self, v: Var) -> MPoly {
        self.coefficient_in(v, 0)
    }

    pub fn to_records(&self) -> Vec<TermRecord> {
        self.terms
            .iter()
            .map(|(m, c)| TermRecord {
                exponents: Var::ALL
                    .into_iter()
                    .filter(|&v| m.exponent(v) > 0)
                    .map(|v| (v.name().to_string(), m.exponent(v)))
                    .collect(),
                coefficient: rat_to_string(c),
            })
            .collect()
    }

    pub fn from_records(records: &[TermRecord]) -> Result<MPoly> {
        let mut out = MPoly::zero();
        for rec in records {
            let mut m = Monomial::one();
            for (name, &e) in &rec.exponents {
                let v = Var::from_name(name)
                    .ok_or_else(|| Error::Parse(format!("unknown variable {name:?}")))?;
                m.0[v.slot()] += e;
            }
            out.add_term(m, parse_rat(&rec.coefficient)?);
        }
        Ok(out)
    }
}

/// Serialized form of one polynomial term.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermRecord {
    pub exponents: BTreeMap<String, u32>,
    pub coefficient: String,
}

impl Serialize for MPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_records().serialize(s)
    }
}

impl<'de> Deserialize<'de> for MPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let records = Vec::<TermRecord>::deserialize(d)?;
        MPoly::from_records(&records).map_err(serde::de::Error::custom)
    }
}

impl From<Rat> for MPoly {
    fn from(c: Rat) -> Self {
        MPoly::constant(c)
    }
}

impl From<Var> for MPoly {
    fn from(v: Var) -> Self {
        MPoly::var(v)
    }
}

impl AddAssign<&MPoly> for MPoly {
    fn add_assign(&mut self, rhs: &MPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, c.clone());
        }
    }
}

impl SubAssign<&MPoly> for MPoly {
    fn sub_assign(&mut self, rhs: &MPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, -c);
        }
    }
}

impl Add for &MPoly {
    type Output = MPoly;
    fn add(self, rhs: &MPoly) -> MPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for MPoly {
    type Output = MPoly;
    fn add(mut self, rhs: MPoly) -> MPoly {
        self += &rhs;
        self
    }
}

impl Sub for &MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &MPoly) -> MPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for MPoly {
    type Output = MPoly;
    fn sub(mut self, rhs: MPoly) -> MPoly {
        self -= &rhs;
        self
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        let terms = self.terms.iter().map(|(m, c)| (*m, -c)).collect();
        MPoly { terms }
    }
}

impl Neg for MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        -&self
    }
}

impl Mul for &MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &MPoly) -> MPoly {
        let mut out = MPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.times(mb), ca * cb);
            }
        }
        out
    }
}

impl Mul for MPoly {
    type Output = MPoly;
    fn mul(self, rhs: MPoly) -> MPoly {
        &self * &rhs
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        // highest degree first
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if negative { "-" } else { "+" })?;
            }
            let vars: Vec<String> = Var::ALL
                .into_iter()
                .filter(|&v| m.exponent(v) > 0)
                .map(|v| match m.exponent(v) {
                    1 => v.name().to_string(),
                    e => format!("{}^{}", v.name(), e),
                })
                .collect();
            if vars.is_empty() {
                write!(f, "{}", rat_to_string(&abs))?;
            } else if abs.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{}*{}", rat_to_string(&abs), vars.join("*"))?;
            }
        }
        Ok(())
    }
}
