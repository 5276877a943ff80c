use std::collections::BTreeMap;

use num_traits::Zero;

use super::group;
use crate::error::{Error, Result};
use crate::exact::{MPoly, Monomial, Rat, RatMatrix, Var};
use crate::finalg::{DiOp, Model};

/// Element of `M = Q[T] ⊗ M0` (or of `Q[params] ⊗ M`): one polynomial per
/// basis vector of `M0`.
pub type ModuleElem = Vec<MPoly>;

/// The variable in which a [`ConfMap`] table records its action.
pub const ACTION: Var = Var::Z;

// Scratch variable used while composing; never present in stored tables.
const SCRATCH: Var = Var::W;

/// Conformal endomorphism of a free module `Q[T] ⊗ M0`, described by its
/// action on the generators: `a ∘_z e_u = Σ_v table[u][v](z, T) e_v`.
///
/// Entries may also contain the parameters `x` and `y` when the map is a
/// member of a family such as `(a ∘_x b)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ConfMap {
    table: Vec<Vec<MPoly>>,
}

pub fn module_zero(dim: usize) -> ModuleElem {
    vec![MPoly::zero(); dim]
}

pub fn module_basis(dim: usize, u: usize) -> ModuleElem {
    let mut m = module_zero(dim);
    m[u] = MPoly::one();
    m
}

pub fn module_is_zero(m: &[MPoly]) -> bool {
    m.iter().all(MPoly::is_zero)
}

/// `h(T) · m` for `h ∈ Q[T]`.
pub fn module_scale(h: &MPoly, m: &[MPoly]) -> ModuleElem {
    m.iter().map(|c| h * c).collect()
}

pub fn module_add(a: &[MPoly], b: &[MPoly]) -> ModuleElem {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

impl ConfMap {
    pub fn zero(dim: usize) -> Self {
        ConfMap { table: vec![vec![MPoly::zero(); dim]; dim] }
    }

    /// `a ∘_z e_u = e_u` for every generator.
    pub fn identity(dim: usize) -> Self {
        let mut a = ConfMap::zero(dim);
        for u in 0..dim {
            a.table[u][u] = MPoly::one();
        }
        a
    }

    /// `table[u]` is the image of `e_u`.
    pub fn from_table(table: Vec<Vec<MPoly>>) -> Result<Self> {
        let dim = table.len();
        for row in &table {
            if row.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: row.len() });
            }
            for p in row {
                if p.degree_in(SCRATCH) > 0 {
                    return Err(Error::Parse("conformal map entries may not use w".into()));
                }
            }
        }
        Ok(ConfMap { table })
    }

    pub fn dim(&self) -> usize {
        self.table.len()
    }

    pub fn entry(&self, u: usize, v: usize) -> &MPoly {
        &self.table[u][v]
    }

    pub fn set_entry(&mut self, u: usize, v: usize, p: MPoly) {
        self.table[u][v] = p;
    }

    /// `a ∘_z e_u`.
    pub fn image(&self, u: usize) -> &[MPoly] {
        &self.table[u]
    }

    pub fn is_zero(&self) -> bool {
        self.table.iter().all(|r| module_is_zero(r))
    }

    pub fn add(&self, other: &ConfMap) -> ConfMap {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &ConfMap) -> ConfMap {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, c: &Rat) -> ConfMap {
        let table = self.table.iter().map(|r| r.iter().map(|p| p.scale(c)).collect()).collect();
        ConfMap { table }
    }

    /// `h · a` for `h ∈ Q[T]`, i.e. `(h a) ∘_z u = h(-z) (a ∘_z u)`.
    pub fn h_scale(&self, h: &MPoly) -> ConfMap {
        let factor = h.substitute(Var::T, &group::inverse(&MPoly::var(ACTION)));
        let table = self.table.iter().map(|r| r.iter().map(|p| p * &factor).collect()).collect();
        ConfMap { table }
    }

    fn zip_with(&self, other: &ConfMap, f: impl Fn(&MPoly, &MPoly) -> MPoly) -> ConfMap {
        assert_eq!(self.dim(), other.dim(), "conformal maps on different modules");
        let table = self
            .table
            .iter()
            .zip(&other.table)
            .map(|(r1, r2)| r1.iter().zip(r2).map(|(a, b)| f(a, b)).collect())
            .collect();
        ConfMap { table }
    }

    /// Largest exponent of `v` over all entries.
    pub fn degree_in(&self, v: Var) -> u32 {
        self.table.iter().flatten().map(|p| p.degree_in(v)).max().unwrap_or(0)
    }

    /// Substitutes a parameter (`x` or `y`) in every entry.
    pub fn specialize(&self, param: Var, value: &MPoly) -> ConfMap {
        assert!(param != ACTION && param != Var::T, "only parameters can be specialised");
        let table = self
            .table
            .iter()
            .map(|r| r.iter().map(|p| p.substitute(param, value)).collect())
            .collect();
        ConfMap { table }
    }

    /// `a ∘_λ m` for `m ∈ M`.
    ///
    /// Extends the table by `a ∘_λ (h(T) e_u) = h(λ + T) (a ∘_λ e_u)`.
    /// Variables of `m` other than `T` are treated as scalars.
    pub fn apply(&self, at: &MPoly, m: &[MPoly]) -> ModuleElem {
        assert_eq!(m.len(), self.dim(), "module element has wrong length");
        let shifted_t = group::mul(at, &MPoly::var(Var::T));
        let mut out = module_zero(self.dim());
        let mut row_cache: BTreeMap<usize, Vec<MPoly>> = BTreeMap::new();
        for (u, coeff) in m.iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            let c = coeff.substitute(Var::T, &shifted_t);
            let row = row_cache.entry(u).or_insert_with(|| {
                self.table[u].iter().map(|p| p.substitute(ACTION, at)).collect()
            });
            for (o, p) in out.iter_mut().zip(row.iter()) {
                if !p.is_zero() {
                    *o += &(&c * p);
                }
            }
        }
        out
    }

    fn from_scratch_action(rows: Vec<ModuleElem>) -> ConfMap {
        let table = rows
            .into_iter()
            .map(|r| {
                r.into_iter()
                    .map(|p| {
                        debug_assert_eq!(p.degree_in(ACTION), 0);
                        p.substitute(SCRATCH, &MPoly::var(ACTION))
                    })
                    .collect()
            })
            .collect();
        ConfMap { table }
    }
}

fn check_operands(a: &ConfMap, b: &ConfMap, at: &MPoly) {
    assert_eq!(a.dim(), b.dim(), "conformal maps on different modules");
    assert!(
        at.uses_only(&[Var::X, Var::Y]),
        "product parameter must be a polynomial in x, y"
    );
}

/// `(a ∘_λ b)`, determined by `(a ∘_λ b) ∘_w u = a ∘_λ (b ∘_{w-λ} u)`.
///
/// Pass `MPoly::var(Var::X)` for the whole family, or `0` for `a ⊢ b`.
pub fn circle(a: &ConfMap, b: &ConfMap, at: &MPoly) -> ConfMap {
    check_operands(a, b, at);
    let w = MPoly::var(SCRATCH);
    let inner_at = group::mul(&w, &group::inverse(at));
    let rows = (0..a.dim())
        .map(|u| {
            let inner = b.apply(&inner_at, &module_basis(b.dim(), u));
            a.apply(at, &inner)
        })
        .collect();
    ConfMap::from_scratch_action(rows)
}

/// `{a ∘_λ b}`, determined by `{a ∘_λ b} ∘_w u = a ∘_{w+λ} (b ∘_{-λ} u)`.
pub fn brace(a: &ConfMap, b: &ConfMap, at: &MPoly) -> ConfMap {
    check_operands(a, b, at);
    let w = MPoly::var(SCRATCH);
    let outer_at = group::mul(&w, at);
    let inner_at = group::inverse(at);
    let rows = (0..a.dim())
        .map(|u| {
            let inner = b.apply(&inner_at, &module_basis(b.dim(), u));
            a.apply(&outer_at, &inner)
        })
        .collect();
    ConfMap::from_scratch_action(rows)
}

/// `(a ⊢ b, a ⊣ b) = ((a ∘_0 b), {a ∘_0 b})`.
pub fn dialgebra_ops(a: &ConfMap, b: &ConfMap) -> (ConfMap, ConfMap) {
    let e = group::unit();
    (circle(a, b, &e), brace(a, b, &e))
}

/// `[ab] = (a ∘_0 b) - {b ∘_0 a}`.
pub fn gc_bracket(a: &ConfMap, b: &ConfMap) -> ConfMap {
    let e = group::unit();
    circle(a, b, &e).sub(&brace(b, a, &e))
}

/// `Cend M^(0)` as a model for dialgebra terms.
#[derive(Debug, Clone, Copy)]
pub struct CendDialgebra {
    pub dim: usize,
}

impl Model<DiOp> for CendDialgebra {
    type Value = ConfMap;

    fn product(&self, op: DiOp, a: &ConfMap, b: &ConfMap) -> ConfMap {
        let e = group::unit();
        match op {
            DiOp::Right => circle(a, b, &e),
            DiOp::Left => brace(a, b, &e),
        }
    }

    fn combine(&self, terms: &[(Rat, ConfMap)]) -> ConfMap {
        terms
            .iter()
            .fold(ConfMap::zero(self.dim), |acc, (c, a)| acc.add(&a.scale(c)))
    }

    fn is_zero(&self, v: &ConfMap) -> bool {
        v.is_zero()
    }
}

/// One identity of a conformal identity check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityOutcome {
    pub name: &'static str,
    pub holds: bool,
}

/// Outcome of [`check_conformal_identities`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConformalReport {
    pub outcomes: Vec<IdentityOutcome>,
}

impl ConformalReport {
    pub fn all_hold(&self) -> bool {
        self.outcomes.iter().all(|o| o.holds)
    }

    pub fn violated(&self) -> Vec<&'static str> {
        self.outcomes.iter().filter(|o| !o.holds).map(|o| o.name).collect()
    }
}

/// Verifies conformal associativity and the two brace identities as
/// polynomial identities in the formal group parameters (named `x` and `y`
/// here):
///
/// * `a ∘_x (b ∘_y c) = (a ∘_x b) ∘_{x+y} c`
/// * `{{a ∘_x b} ∘_y c} = {a ∘_{x+y} {b ∘_y c}} = {a ∘_{x+y} (b ∘_{-x} c)}`
/// * `({a ∘_x b} ∘_y c) = ((a ∘_{x+y} b) ∘_y c) = (a ∘_{x+y} (b ∘_{-x} c))`
pub fn check_conformal_identities(a: &ConfMap, b: &ConfMap, c: &ConfMap) -> ConformalReport {
    let x = MPoly::var(Var::X);
    let y = MPoly::var(Var::Y);
    let xy = group::mul(&y, &x);
    let x_inv = group::inverse(&x);

    let assoc_lhs = circle(a, &circle(b, c, &y), &x);
    let assoc_rhs = circle(&circle(a, b, &x), c, &xy);

    let brace_1 = brace(&brace(a, b, &x), c, &y);
    let brace_2 = brace(a, &brace(b, c, &y), &xy);
    let brace_3 = brace(a, &circle(b, c, &x_inv), &xy);

    let mixed_1 = circle(&brace(a, b, &x), c, &y);
    let mixed_2 = circle(&circle(a, b, &xy), c, &y);
    let mixed_3 = circle(a, &circle(b, c, &x_inv), &xy);

    let outcomes = vec![
        IdentityOutcome { name: "associativity", holds: assoc_lhs == assoc_rhs },
        IdentityOutcome { name: "brace, first equality", holds: brace_1 == brace_2 },
        IdentityOutcome { name: "brace, second equality", holds: brace_2 == brace_3 },
        IdentityOutcome { name: "mixed, first equality", holds: mixed_1 == mixed_2 },
        IdentityOutcome { name: "mixed, second equality", holds: mixed_2 == mixed_3 },
    ];
    ConformalReport { outcomes }
}

/// Stacks the coefficients of every table entry of every map into the rows
/// of a matrix over a common coordinate system.
pub fn coefficient_matrix(maps: &[ConfMap]) -> RatMatrix {
    let mut coords: BTreeMap<(usize, usize, Monomial), usize> = BTreeMap::new();
    for a in maps {
        for (u, row) in a.table.iter().enumerate() {
            for (v, p) in row.iter().enumerate() {
                for (m, _) in p.terms() {
                    let next = coords.len();
                    coords.entry((u, v, *m)).or_insert(next);
                }
            }
        }
    }
    let rows = maps
        .iter()
        .map(|a| {
            let mut row = vec![Rat::zero(); coords.len()];
            for (u, r) in a.table.iter().enumerate() {
                for (v, p) in r.iter().enumerate() {
                    for (m, c) in p.terms() {
                        row[coords[&(u, v, *m)]] = c.clone();
                    }
                }
            }
            row
        })
        .collect();
    RatMatrix::from_rows(coords.len(), rows).expect("rows built with common width")
}
