use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use super::word::{DiPoly, DiWord};
use crate::error::{Error, Result};
use crate::exact::{rat_to_string, Rat};
use crate::finalg::{leibniz_quotient, DiOp, LeibnizQuotient, StructureAlgebra};

/// A basis `B = {a_i} ∪ {b_j}` of `L`: the `a_i` are the standard basis
/// vectors whose images form the basis of `L^alg` (ordered by index), the
/// `b_j` the echelon basis of the kernel of `L -> L^alg`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderedBasis {
    vectors: Vec<Vec<Rat>>,
    names: Vec<String>,
    a_len: usize,
    complement: Vec<usize>,
    kernel_pivots: Vec<usize>,
}

impl OrderedBasis {
    pub fn from_quotient(l: &StructureAlgebra, q: &LeibnizQuotient) -> Self {
        let mut vectors = Vec::new();
        let mut names = Vec::new();
        for &c in &q.complement {
            vectors.push(l.unit_vector(c));
            names.push(l.basis_names()[c].clone());
        }
        for (j, (row, &p)) in q.kernel_basis.iter().zip(&q.kernel_pivots).enumerate() {
            let is_unit = row.iter().enumerate().all(|(k, c)| k == p || c.is_zero());
            names.push(if is_unit { l.basis_names()[p].clone() } else { format!("k{j}") });
            vectors.push(row.clone());
        }
        OrderedBasis {
            vectors,
            names,
            a_len: q.complement.len(),
            complement: q.complement.clone(),
            kernel_pivots: q.kernel_pivots.clone(),
        }
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// `|I|`, the number of `a`-letters.
    pub fn a_len(&self) -> usize {
        self.a_len
    }

    pub fn is_a(&self, idx: usize) -> bool {
        idx < self.a_len
    }

    pub fn vector(&self, idx: usize) -> &[Rat] {
        &self.vectors[idx]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Coordinates of `x` (standard coordinates) over `B`.
    pub fn coords(&self, x: &[Rat]) -> Vec<Rat> {
        let beta: Vec<Rat> = self.kernel_pivots.iter().map(|&p| x[p].clone()).collect();
        let mut out = Vec::with_capacity(self.len());
        for &c in &self.complement {
            let mut a = x[c].clone();
            for (bj, row) in beta.iter().zip(&self.vectors[self.a_len..]) {
                a -= bj * &row[c];
            }
            out.push(a);
        }
        out.extend(beta);
        out
    }
}

/// `c̃ ⊣ ã_{i1} ⊣ … ⊣ ã_{in}` with `c ∈ B` and `i1 <= … <= in`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NormalWord {
    pub head: usize,
    pub tail: Vec<usize>,
}

impl NormalWord {
    pub fn len(&self) -> usize {
        1 + self.tail.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// The same word as a [`DiWord`] over `B`-letters.
    pub fn to_word(&self) -> DiWord {
        let mut letters = vec![self.head];
        letters.extend_from_slice(&self.tail);
        DiWord::from_parts(letters, 0)
    }
}

/// Element of `U(L)` written over normal words.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct UEnvElement {
    terms: BTreeMap<NormalWord, Rat>,
}

impl UEnvElement {
    pub fn zero() -> Self {
        UEnvElement::default()
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (NormalWord, Rat)>) -> Self {
        let mut out = UEnvElement::zero();
        for (w, c) in terms {
            out.add_term(w, c);
        }
        out
    }

    fn add_term(&mut self, w: NormalWord, c: Rat) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(w).or_insert_with(Rat::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.retain(|_, c| !c.is_zero());
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&NormalWord, &Rat)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, w: &NormalWord) -> Rat {
        self.terms.get(w).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The combination of [`DiWord`]s over `B`-letters.
    pub fn lift(&self) -> DiPoly {
        let mut p = DiPoly::zero();
        for (w, c) in &self.terms {
            p.add_term(c.clone(), w.to_word());
        }
        p
    }

    pub fn render(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|(w, c)| format!("{} ({})", rat_to_string(c), w.to_word().render(names)))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl fmt::Display for UEnvElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(&[]))
    }
}

/// Whether the rewriting keeps the bracket correction terms. Dropping them
/// gives a deliberately wrong system, used as a negative control.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Rewriting {
    #[default]
    Full,
    WithoutCorrections,
}

/// `U(L)` for a fixed Leibniz algebra `L` and ordered basis `B`.
#[derive(Debug, Clone)]
pub struct Envelope {
    l: StructureAlgebra,
    quotient: LeibnizQuotient,
    basis: OrderedBasis,
    // B-coordinates of [B_s B_t], sparse
    bracket: Vec<Vec<Vec<(usize, Rat)>>>,
}

// (length, letters left of center, tail inversions)
type Measure = (usize, usize, usize);

fn measure(letters: &[usize], center: usize) -> Measure {
    let tail = &letters[center + 1..];
    let mut inv = 0;
    for i in 0..tail.len() {
        for j in i + 1..tail.len() {
            if tail[i] > tail[j] {
                inv += 1;
            }
        }
    }
    (letters.len(), center, inv)
}

impl Envelope {
    pub fn new(l: &StructureAlgebra) -> Result<Self> {
        let quotient = leibniz_quotient(l)?;
        Ok(Envelope::with_quotient(l, quotient))
    }

    pub fn with_quotient(l: &StructureAlgebra, quotient: LeibnizQuotient) -> Self {
        let basis = OrderedBasis::from_quotient(l, &quotient);
        let n = basis.len();
        let bracket = (0..n)
            .map(|s| {
                (0..n)
                    .map(|t| {
                        let v = l.mul(basis.vector(s), basis.vector(t));
                        basis
                            .coords(&v)
                            .into_iter()
                            .enumerate()
                            .filter(|(_, c)| !c.is_zero())
                            .collect()
                    })
                    .collect()
            })
            .collect();
        Envelope { l: l.clone(), quotient, basis, bracket }
    }

    pub fn algebra(&self) -> &StructureAlgebra {
        &self.l
    }

    pub fn quotient(&self) -> &LeibnizQuotient {
        &self.quotient
    }

    pub fn basis(&self) -> &OrderedBasis {
        &self.basis
    }

    /// `[B_s B_t]` over `B`.
    pub fn bracket(&self, s: usize, t: usize) -> &[(usize, Rat)] {
        &self.bracket[s][t]
    }

    /// Rewrites letters given as standard basis indices of `L` over `B`.
    pub fn to_basis_letters(&self, p: &DiPoly) -> Result<DiPoly> {
        let n = self.l.dim();
        let coords: Vec<Vec<(usize, Rat)>> = (0..n)
            .map(|i| {
                self.basis
                    .coords(&self.l.unit_vector(i))
                    .into_iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .collect()
            })
            .collect();
        let mut out = DiPoly::zero();
        for (w, c) in p.terms() {
            if let Some(&x) = w.letters().iter().find(|&&x| x >= n) {
                return Err(Error::UnknownLetter(x));
            }
            let mut partial: Vec<(Vec<usize>, Rat)> = vec![(Vec::new(), c.clone())];
            for &x in w.letters() {
                partial = partial
                    .iter()
                    .flat_map(|(letters, c)| {
                        coords[x].iter().map(move |(b, d)| {
                            let mut l = letters.clone();
                            l.push(*b);
                            (l, c * d)
                        })
                    })
                    .collect();
            }
            for (letters, c) in partial {
                out.add_term(c, DiWord::from_parts(letters, w.center()));
            }
        }
        Ok(out)
    }

    /// Normal form of a combination of words in the standard letters of `L`.
    pub fn normal_form(&self, p: &DiPoly) -> Result<UEnvElement> {
        Ok(self.reduce(&self.to_basis_letters(p)?, Rewriting::Full))
    }

    /// Normal form of a combination of words in `B`-letters.
    ///
    /// Moves, applied to the largest pending word first:
    /// * a letter left of the center: `x ⊢ y = y ⊣ x + [xy]` on the two
    ///   letters at the center, which moves the center one step left;
    /// * a `b`-letter right of the center kills the word;
    /// * the leftmost tail inversion: `w ⊣ x ⊣ y = w ⊣ y ⊣ x + w ⊣ [xy]`.
    ///
    /// Every new word is strictly smaller in (length, center, inversions).
    pub fn reduce(&self, p: &DiPoly, rewriting: Rewriting) -> UEnvElement {
        let nb = self.basis.len();
        let mut pending: BTreeMap<(Measure, Vec<usize>, usize), Rat> = BTreeMap::new();
        let push = |pending: &mut BTreeMap<(Measure, Vec<usize>, usize), Rat>,
                    letters: Vec<usize>,
                    center: usize,
                    c: Rat| {
            if c.is_zero() {
                return;
            }
            let key = (measure(&letters, center), letters, center);
            let entry = pending.entry(key).or_insert_with(Rat::zero);
            *entry += c;
        };
        for (w, c) in p.terms() {
            assert!(w.letters().iter().all(|&x| x < nb), "letter outside B");
            push(&mut pending, w.letters().to_vec(), w.center(), c.clone());
        }

        let mut out = UEnvElement::zero();
        while let Some(((m, letters, center), c)) = pending.pop_last() {
            if c.is_zero() {
                continue;
            }
            let mut children: Vec<(Vec<usize>, usize, Rat)> = Vec::new();
            if center > 0 {
                let (x, y) = (letters[center - 1], letters[center]);
                let mut swapped = letters.clone();
                swapped.swap(center - 1, center);
                children.push((swapped, center - 1, c.clone()));
                if rewriting == Rewriting::Full {
                    for (k, d) in &self.bracket[x][y] {
                        let mut shorter = letters[..center - 1].to_vec();
                        shorter.push(*k);
                        shorter.extend_from_slice(&letters[center + 1..]);
                        children.push((shorter, center - 1, &c * d));
                    }
                }
            } else if letters[1..].iter().any(|&x| !self.basis.is_a(x)) {
                continue;
            } else if let Some(pos) = (1..letters.len().saturating_sub(1)).find(|&i| letters[i] > letters[i + 1]) {
                let (x, y) = (letters[pos], letters[pos + 1]);
                let mut swapped = letters.clone();
                swapped.swap(pos, pos + 1);
                children.push((swapped, 0, c.clone()));
                if rewriting == Rewriting::Full {
                    for (k, d) in &self.bracket[x][y] {
                        let mut shorter = letters[..pos].to_vec();
                        shorter.push(*k);
                        shorter.extend_from_slice(&letters[pos + 2..]);
                        children.push((shorter, 0, &c * d));
                    }
                }
            } else {
                let head = letters[0];
                out.add_term(NormalWord { head, tail: letters[1..].to_vec() }, c);
                continue;
            }
            for (letters, center, d) in children {
                assert!(measure(&letters, center) < m, "rewriting step did not decrease the measure");
                push(&mut pending, letters, center, d);
            }
        }
        out
    }

    /// `p ⊣ q` or `p ⊢ q` in `U(L)`.
    pub fn u_product(&self, p: &UEnvElement, q: &UEnvElement, op: DiOp) -> UEnvElement {
        self.reduce(&p.lift().mul(op, &q.lift()), Rewriting::Full)
    }

    /// All normal words of length `<= n`.
    pub fn normal_words(&self, n: usize) -> Vec<NormalWord> {
        let mut tails: Vec<Vec<usize>> = vec![Vec::new()];
        let mut all_tails = tails.clone();
        for _ in 1..n {
            tails = tails
                .iter()
                .flat_map(|t| {
                    let start = t.last().copied().unwrap_or(0);
                    (start..self.basis.a_len()).map(move |i| {
                        let mut t = t.clone();
                        t.push(i);
                        t
                    })
                })
                .collect();
            all_tails.extend(tails.iter().cloned());
        }
        if n == 0 {
            return Vec::new();
        }
        let mut out = Vec::new();
        for head in 0..self.basis.len() {
            for tail in &all_tails {
                out.push(NormalWord { head, tail: tail.clone() });
            }
        }
        out
    }
}
