use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::{rat_to_string, Rat};
use crate::finalg::{DiOp, Model};

/// Monomial of the free associative dialgebra: a word with one marked
/// letter, `x_0 ⊢ … ⊢ x_c ⊣ … ⊣ x_n`. The center is a 0-based position.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DiWord {
    letters: Vec<usize>,
    center: usize,
}

impl DiWord {
    pub fn new(letters: Vec<usize>, center: usize) -> Result<Self> {
        if center >= letters.len() {
            return Err(Error::VariableOutOfRange { index: center, arity: letters.len() });
        }
        Ok(DiWord { letters, center })
    }

    pub fn letter(x: usize) -> Self {
        DiWord { letters: vec![x], center: 0 }
    }

    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    pub fn center(&self) -> usize {
        self.center
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub(crate) fn from_parts(letters: Vec<usize>, center: usize) -> Self {
        debug_assert!(center < letters.len());
        DiWord { letters, center }
    }

    /// Renders the word with the given letter names, e.g. `a ⊢ b ⊣ c`.
    pub fn render(&self, names: &[String]) -> String {
        let name = |x: usize| names.get(x).cloned().unwrap_or_else(|| format!("x{x}"));
        let mut out = String::new();
        for (i, &x) in self.letters.iter().enumerate() {
            if i > 0 {
                out.push_str(if i <= self.center { " ⊢ " } else { " ⊣ " });
            }
            out.push_str(&name(x));
        }
        out
    }
}

impl fmt::Display for DiWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(&[]))
    }
}

/// `(u ⊣ v, u ⊢ v)`: both concatenate, `⊣` keeps the center of `u` and `⊢`
/// moves it to the center of `v`.
pub fn diword_products(u: &DiWord, v: &DiWord) -> (DiWord, DiWord) {
    let mut letters = u.letters.clone();
    letters.extend_from_slice(&v.letters);
    let left = DiWord { letters: letters.clone(), center: u.center };
    let right = DiWord { letters, center: u.len() + v.center };
    (left, right)
}

/// Rational combination of [`DiWord`]s without zero coefficients.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct DiPoly {
    terms: BTreeMap<DiWord, Rat>,
}

impl DiPoly {
    pub fn zero() -> Self {
        DiPoly::default()
    }

    pub fn word(w: DiWord) -> Self {
        DiPoly::term(Rat::from_integer(1.into()), w)
    }

    pub fn term(c: Rat, w: DiWord) -> Self {
        let mut p = DiPoly::zero();
        p.add_term(c, w);
        p
    }

    pub fn add_term(&mut self, c: Rat, w: DiWord) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(w);
        match entry {
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&DiWord, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn max_len(&self) -> usize {
        self.terms.keys().map(DiWord::len).max().unwrap_or(0)
    }

    pub fn add(&self, other: &DiPoly) -> DiPoly {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(c.clone(), w.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> DiPoly {
        let mut out = DiPoly::zero();
        for (w, d) in &self.terms {
            out.add_term(c * d, w.clone());
        }
        out
    }

    /// Bilinear extension of [`diword_products`].
    pub fn mul(&self, op: DiOp, other: &DiPoly) -> DiPoly {
        let mut out = DiPoly::zero();
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                let (left, right) = diword_products(u, v);
                let w = match op {
                    DiOp::Left => left,
                    DiOp::Right => right,
                };
                out.add_term(a * b, w);
            }
        }
        out
    }

    pub fn render(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|(w, c)| format!("{} ({})", rat_to_string(c), w.render(names)))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl fmt::Display for DiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(&[]))
    }
}

/// The center-marked word model of the free associative dialgebra.
#[derive(Debug, Clone, Copy, Default)]
pub struct FreeDialgebra;

impl Model<DiOp> for FreeDialgebra {
    type Value = DiPoly;

    fn product(&self, op: DiOp, a: &DiPoly, b: &DiPoly) -> DiPoly {
        a.mul(op, b)
    }

    fn combine(&self, terms: &[(Rat, DiPoly)]) -> DiPoly {
        terms.iter().fold(DiPoly::zero(), |acc, (c, p)| acc.add(&p.scale(c)))
    }

    fn is_zero(&self, v: &DiPoly) -> bool {
        v.is_zero()
    }
}

/// Every word of length `1..=max_len` over `alphabet` letters, with every
/// choice of center.
pub fn all_words(alphabet: usize, max_len: usize) -> Vec<DiWord> {
    let mut out = Vec::new();
    let mut layer: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w| {
                (0..alphabet).map(move |x| {
                    let mut w = w.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
        for letters in &layer {
            for c in 0..letters.len() {
                out.push(DiWord { letters: letters.clone(), center: c });
            }
        }
    }
    out
}
