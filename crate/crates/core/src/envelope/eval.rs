use std::collections::BTreeMap;

use num_traits::Zero;

use super::pbw::{PbwAlgebra, PbwElement, PbwMonomial};
use super::rewrite::{Envelope, UEnvElement};
use super::word::DiPoly;
use crate::error::Result;
use crate::exact::Rat;

/// Basis element of `M0 = V ⊕ (L ⊗ V)` with `V` the truncated enveloping
/// algebra of `L^alg`: `V(m)` or `Tensor(i, m) = e_i ⊗ m`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum M0Key {
    V(PbwMonomial),
    Tensor(usize, PbwMonomial),
}

pub type M0Vector = BTreeMap<M0Key, Rat>;

/// `constant + z · linear`, the value of `w ∘_z 1`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ZValue {
    pub constant: M0Vector,
    pub linear: M0Vector,
}

impl ZValue {
    fn add_scaled(&mut self, c: &Rat, other: &ZValue) {
        for (dst, src) in [(&mut self.constant, &other.constant), (&mut self.linear, &other.linear)] {
            for (k, v) in src {
                add_into(dst, k.clone(), c * v);
            }
            dst.retain(|_, v| !v.is_zero());
        }
    }
}

fn add_into(acc: &mut M0Vector, k: M0Key, c: Rat) {
    if c.is_zero() {
        return;
    }
    let entry = acc.entry(k).or_insert_with(Rat::zero);
    *entry += c;
}

/// Evaluates dialgebra words on `1 ∈ V` through the representation of `L`
/// on `Q[T] ⊗ M0`, where letters act by
///
/// ```text
/// ρ(x) ∘_λ m       = x̄ m + λ (x ⊗ m)
/// ρ(x) ∘_λ (c ⊗ m) = c ⊗ x̄ m + [xc] ⊗ m
/// ```
///
/// In `x_0 ⊢ … ⊢ x_c ⊣ … ⊣ x_n` the center letter acts at `z` and every
/// other letter at `0`, applied right to left.
#[derive(Debug, Clone)]
pub struct Evaluator<'a> {
    env: &'a Envelope,
    pbw: PbwAlgebra,
}

impl<'a> Evaluator<'a> {
    pub fn new(env: &'a Envelope, truncation: usize) -> Result<Self> {
        let pbw = PbwAlgebra::new(env.quotient().lie.clone(), truncation)?;
        Ok(Evaluator { env, pbw })
    }

    pub fn pbw(&self) -> &PbwAlgebra {
        &self.pbw
    }

    /// `ρ(x) ∘_λ`, split into the part independent of `λ` and the
    /// coefficient of `λ`.
    fn act(&self, x: &[Rat], m: &M0Vector) -> Result<(M0Vector, M0Vector)> {
        let l = self.env.algebra();
        let xbar = self.env.quotient().project(x);
        let mut constant = M0Vector::new();
        let mut linear = M0Vector::new();
        for (key, c) in m {
            match key {
                M0Key::V(mono) => {
                    let single: PbwElement = [(mono.clone(), c.clone())].into_iter().collect();
                    for (mm, d) in self.pbw.act(&xbar, &single)? {
                        add_into(&mut constant, M0Key::V(mm), d);
                    }
                    for (i, xi) in x.iter().enumerate() {
                        add_into(&mut linear, M0Key::Tensor(i, mono.clone()), xi * c);
                    }
                }
                M0Key::Tensor(b, mono) => {
                    let single: PbwElement = [(mono.clone(), c.clone())].into_iter().collect();
                    for (mm, d) in self.pbw.act(&xbar, &single)? {
                        add_into(&mut constant, M0Key::Tensor(*b, mm), d);
                    }
                    let xb = l.mul(x, &l.unit_vector(*b));
                    for (k, d) in xb.iter().enumerate() {
                        add_into(&mut constant, M0Key::Tensor(k, mono.clone()), d * c);
                    }
                }
            }
        }
        constant.retain(|_, c| !c.is_zero());
        linear.retain(|_, c| !c.is_zero());
        Ok((constant, linear))
    }

    /// `w ∘_z 1` for a word whose letters are arbitrary vectors of `L`.
    pub fn eval_letters(&self, letters: &[Vec<Rat>], center: usize) -> Result<ZValue> {
        let mut value = ZValue::default();
        value.constant.insert(M0Key::V(Vec::new()), num_traits::One::one());
        for (pos, x) in letters.iter().enumerate().rev() {
            let (c0, c1) = self.act(x, &value.constant)?;
            let (l0, l1) = self.act(x, &value.linear)?;
            value = if pos == center {
                debug_assert!(l1.is_empty() || value.linear.is_empty());
                let mut linear = l0;
                for (k, v) in c1 {
                    add_into(&mut linear, k, v);
                }
                linear.retain(|_, v| !v.is_zero());
                ZValue { constant: c0, linear }
            } else {
                ZValue { constant: c0, linear: l0 }
            };
        }
        Ok(value)
    }

    /// `p ∘_z 1` for `p` over the standard letters of `L`.
    pub fn eval_standard(&self, p: &DiPoly) -> Result<ZValue> {
        let l = self.env.algebra();
        self.eval_with(p, |x| l.unit_vector(x))
    }

    /// `p ∘_z 1` for `p` over `B`-letters.
    pub fn eval_basis(&self, p: &DiPoly) -> Result<ZValue> {
        let b = self.env.basis();
        self.eval_with(p, |x| b.vector(x).to_vec())
    }

    pub fn eval_normal(&self, u: &UEnvElement) -> Result<ZValue> {
        self.eval_basis(&u.lift())
    }

    fn eval_with(&self, p: &DiPoly, letter: impl Fn(usize) -> Vec<Rat>) -> Result<ZValue> {
        let mut total = ZValue::default();
        for (w, c) in p.terms() {
            let letters: Vec<Vec<Rat>> = w.letters().iter().map(|&x| letter(x)).collect();
            total.add_scaled(c, &self.eval_letters(&letters, w.center())?);
        }
        Ok(total)
    }
}
