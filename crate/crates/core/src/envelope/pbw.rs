use std::collections::BTreeMap;

use num_integer::binomial;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::Rat;
use crate::finalg::StructureAlgebra;

/// Nondecreasing sequence of basis indices of a Lie algebra, standing for
/// the ordered product `ā_{i1} ā_{i2} … ā_{in}` in its enveloping algebra.
pub type PbwMonomial = Vec<usize>;

/// Sparse combination of PBW monomials.
pub type PbwElement = BTreeMap<PbwMonomial, Rat>;

fn add_into(acc: &mut PbwElement, m: PbwMonomial, c: Rat) {
    if c.is_zero() {
        return;
    }
    let entry = acc.entry(m).or_insert_with(Rat::zero);
    *entry += c;
}

fn prune(mut e: PbwElement) -> PbwElement {
    e.retain(|_, c| !c.is_zero());
    e
}

/// The enveloping algebra of a Lie algebra, truncated at degree `bound`.
/// Products that would leave the truncation fail with `DegreeOverflow`.
#[derive(Debug, Clone)]
pub struct PbwAlgebra {
    lie: StructureAlgebra,
    bound: usize,
}

impl PbwAlgebra {
    pub fn new(lie: StructureAlgebra, bound: usize) -> Result<Self> {
        if bound == 0 {
            return Err(Error::DegreeOverflow { needed: 1, bound: 0 });
        }
        Ok(PbwAlgebra { lie, bound })
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn lie(&self) -> &StructureAlgebra {
        &self.lie
    }

    /// `ā_i · m`, straightened with `ā_i ā_j = ā_j ā_i + [ā_i ā_j]`.
    pub fn generator_times(&self, i: usize, m: &[usize]) -> Result<PbwElement> {
        if m.len() + 1 > self.bound {
            return Err(Error::DegreeOverflow { needed: m.len() + 1, bound: self.bound });
        }
        let mut out = PbwElement::new();
        match m.first() {
            Some(&j) if i > j => {
                let rest = &m[1..];
                let inner = self.generator_times(i, rest)?;
                for (mono, c) in inner {
                    for (mm, d) in self.generator_times(j, &mono)? {
                        add_into(&mut out, mm, &c * d);
                    }
                }
                for (k, c) in self.lie.product_of_basis(i, j).iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    for (mm, d) in self.generator_times(k, rest)? {
                        add_into(&mut out, mm, c * d);
                    }
                }
            }
            _ => {
                let mut mono = Vec::with_capacity(m.len() + 1);
                mono.push(i);
                mono.extend_from_slice(m);
                out.insert(mono, num_traits::One::one());
            }
        }
        Ok(prune(out))
    }

    /// `x · e` for `x` in Lie-algebra coordinates.
    pub fn act(&self, x: &[Rat], e: &PbwElement) -> Result<PbwElement> {
        let mut out = PbwElement::new();
        for (i, xi) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (m, c) in e {
                for (mm, d) in self.generator_times(i, m)? {
                    add_into(&mut out, mm, xi * c * d);
                }
            }
        }
        Ok(prune(out))
    }

    /// The product `p q`.
    pub fn mul(&self, p: &PbwElement, q: &PbwElement) -> Result<PbwElement> {
        let mut out = PbwElement::new();
        for (m, c) in p {
            let mut acc: PbwElement = q.clone();
            for &i in m.iter().rev() {
                let mut next = PbwElement::new();
                for (mm, d) in &acc {
                    for (m2, e) in self.generator_times(i, mm)? {
                        add_into(&mut next, m2, d * e);
                    }
                }
                acc = prune(next);
            }
            for (mm, d) in acc {
                add_into(&mut out, mm, c * d);
            }
        }
        Ok(prune(out))
    }

    /// All monomials of degree `<= degree`.
    pub fn monomials(&self, degree: usize) -> Vec<PbwMonomial> {
        let mut layer: Vec<PbwMonomial> = vec![Vec::new()];
        let mut out = layer.clone();
        for _ in 0..degree {
            layer = layer
                .iter()
                .flat_map(|m| {
                    let start = m.last().copied().unwrap_or(0);
                    (start..self.lie.dim()).map(move |i| {
                        let mut m = m.clone();
                        m.push(i);
                        m
                    })
                })
                .collect();
            out.extend(layer.iter().cloned());
        }
        out
    }
}

/// Number of monomials of degree `<= degree` in `generators` commuting
/// variables: `Σ_k C(generators + k - 1, k)`.
pub fn monomial_count(generators: usize, degree: usize) -> usize {
    if generators == 0 {
        return 1;
    }
    (0..=degree).map(|k| binomial(generators + k - 1, k)).sum()
}
