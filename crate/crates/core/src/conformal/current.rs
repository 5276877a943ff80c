use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::Zero;

use super::confmap::{module_add, module_scale, module_zero, ConfMap, ModuleElem, ACTION};
use super::group;
use crate::error::{Error, Result};
use crate::exact::{rat, MPoly, Rat, RatMatrix, Var};
use crate::finalg::StructureAlgebra;

/// An algebra whose basis products are known, used as the coefficient
/// algebra of a current algebra.
pub trait CoefficientAlgebra {
    fn dim(&self) -> usize;
    /// `e_i e_j` as a sparse combination of basis vectors.
    fn basis_product(&self, i: usize, j: usize) -> Vec<(usize, Rat)>;
}

impl CoefficientAlgebra for StructureAlgebra {
    fn dim(&self) -> usize {
        StructureAlgebra::dim(self)
    }

    fn basis_product(&self, i: usize, j: usize) -> Vec<(usize, Rat)> {
        self.product_of_basis(i, j)
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (k, c.clone()))
            .collect()
    }
}

/// `End(Q^n)` with the matrix units `E_rc` (index `r * n + c`) as basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MatrixAlgebra {
    pub n: usize,
}

impl MatrixAlgebra {
    pub fn unit_index(&self, row: usize, col: usize) -> usize {
        row * self.n + col
    }

    /// The defining action on `Q^n`: basis element `k` acts as its matrix
    /// unit.
    pub fn defining_action(&self) -> Vec<RatMatrix> {
        (0..self.n * self.n)
            .map(|k| {
                let mut m = RatMatrix::zeros(self.n, self.n);
                m[(k / self.n, k % self.n)] = num_traits::One::one();
                m
            })
            .collect()
    }
}

impl CoefficientAlgebra for MatrixAlgebra {
    fn dim(&self) -> usize {
        self.n * self.n
    }

    fn basis_product(&self, i: usize, j: usize) -> Vec<(usize, Rat)> {
        let (r1, c1) = (i / self.n, i % self.n);
        let (r2, c2) = (j / self.n, j % self.n);
        if c1 == r2 {
            vec![(self.unit_index(r1, c2), num_traits::One::one())]
        } else {
            Vec::new()
        }
    }
}

/// Element `Σ_k f_k(T) ⊗ e_k` of the current algebra `Cur A`.
///
/// Coefficients of `z`-products additionally contain the variable `z`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurElement {
    pub coeffs: Vec<MPoly>,
}

impl CurElement {
    pub fn zero(dim: usize) -> Self {
        CurElement { coeffs: vec![MPoly::zero(); dim] }
    }

    /// `f ⊗ e_k`.
    pub fn pure(dim: usize, f: MPoly, k: usize) -> Self {
        let mut u = CurElement::zero(dim);
        u.coeffs[k] = f;
        u
    }

    /// `1 ⊗ a0 - T ⊗ a1` for matrices over `End(Q^n)`.
    pub fn from_matrices(a0: &RatMatrix, a1: &RatMatrix) -> Self {
        let n = a0.rows();
        let alg = MatrixAlgebra { n };
        let mut u = CurElement::zero(n * n);
        let t = MPoly::var(Var::T);
        for r in 0..n {
            for c in 0..n {
                let p = &MPoly::constant(a0[(r, c)].clone()) - &t.scale(&a1[(r, c)]);
                u.coeffs[alg.unit_index(r, c)] = p;
            }
        }
        u
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn add(&self, other: &CurElement) -> CurElement {
        CurElement { coeffs: module_add(&self.coeffs, &other.coeffs) }
    }

    pub fn sub(&self, other: &CurElement) -> CurElement {
        CurElement { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(MPoly::is_zero)
    }
}

fn check_dims(alg: &impl CoefficientAlgebra, u: &CurElement, v: &CurElement) -> Result<()> {
    for w in [u, v] {
        if w.dim() != alg.dim() {
            return Err(Error::DimensionMismatch { expected: alg.dim(), found: w.dim() });
        }
    }
    Ok(())
}

// Σ_{a,b} F(f_a, g_b) ⊗ e_a e_b
fn bilinear_current(
    alg: &impl CoefficientAlgebra,
    u: &CurElement,
    v: &CurElement,
    f: impl Fn(&MPoly, &MPoly) -> MPoly,
) -> CurElement {
    let mut out = CurElement::zero(alg.dim());
    for (a, fa) in u.coeffs.iter().enumerate().filter(|(_, p)| !p.is_zero()) {
        for (b, gb) in v.coeffs.iter().enumerate().filter(|(_, p)| !p.is_zero()) {
            let prod = alg.basis_product(a, b);
            if prod.is_empty() {
                continue;
            }
            let coeff = f(fa, gb);
            for (k, c) in prod {
                out.coeffs[k] += &coeff.scale(&c);
            }
        }
    }
    out
}

/// `(u ⊢ v, u ⊣ v)` in `(Cur A)^(0)`:
/// `(f⊗a) ⊢ (g⊗b) = f(0) g(T) ⊗ ab` and `(f⊗a) ⊣ (g⊗b) = f(T) g(0) ⊗ ab`.
pub fn cur_dialgebra(
    alg: &impl CoefficientAlgebra,
    u: &CurElement,
    v: &CurElement,
) -> Result<(CurElement, CurElement)> {
    check_dims(alg, u, v)?;
    let right = bilinear_current(alg, u, v, |f, g| &f.at_zero(Var::T) * g);
    let left = bilinear_current(alg, u, v, |f, g| f * &g.at_zero(Var::T));
    Ok((right, left))
}

/// `(f⊗a) ∘_z (g⊗b) = f(-z) g(z + T) ⊗ ab`.
pub fn cur_z_product(alg: &impl CoefficientAlgebra, u: &CurElement, v: &CurElement) -> Result<CurElement> {
    check_dims(alg, u, v)?;
    let z = MPoly::var(ACTION);
    let minus_z = group::inverse(&z);
    let shifted = group::mul(&z, &MPoly::var(Var::T));
    Ok(bilinear_current(alg, u, v, |f, g| {
        &f.substitute(Var::T, &minus_z) * &g.substitute(Var::T, &shifted)
    }))
}

/// The unique expansion `Σ_i x^i ⊗ 1 ⊗_H m_i` of an element of
/// `(H ⊗ H) ⊗_H M`; `x` stands for `T` in the first tensor slot.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Straightened {
    pub dim: usize,
    pub parts: BTreeMap<u32, ModuleElem>,
}

impl Straightened {
    /// Pairs `(x^i, m_i)`, lowest power first.
    pub fn to_pairs(&self) -> Vec<(MPoly, ModuleElem)> {
        self.parts
            .iter()
            .map(|(i, m)| (MPoly::var_pow(num_traits::One::one(), Var::X, *i), m.clone()))
            .collect()
    }

    /// `Σ ε(x^i) m_i`.
    pub fn counit_part(&self) -> ModuleElem {
        self.parts.get(&0).cloned().unwrap_or_else(|| module_zero(self.dim))
    }

    /// `Σ T^i m_i`.
    pub fn multiply_out(&self) -> ModuleElem {
        self.parts.iter().fold(module_zero(self.dim), |acc, (i, m)| {
            let h = MPoly::var(Var::T).pow(*i);
            module_add(&acc, &module_scale(&h, m))
        })
    }

    /// `Σ h_i(z⁻¹) m_i` with `h_i = x^i`, i.e. the `z`-product.
    pub fn at_group_point(&self, z: &MPoly) -> ModuleElem {
        let inv = group::inverse(z);
        self.parts.iter().fold(module_zero(self.dim), |acc, (i, m)| {
            module_add(&acc, &module_scale(&inv.pow(*i), m))
        })
    }
}

/// Rewrites `f ⊗ g ⊗_H m` (with `f, g ∈ Q[T]`) over the free right
/// `H`-basis `{x^i ⊗ 1}` of `H ⊗ H`:
/// `f ⊗ T^k = Σ_j C(k, j) (f · (-x)^j ⊗ 1) T^(k-j)`.
pub fn straighten(f: &MPoly, g: &MPoly, m: &[MPoly]) -> Straightened {
    let dim = m.len();
    let mut parts: BTreeMap<u32, ModuleElem> = BTreeMap::new();
    for (mf, cf) in f.terms() {
        let p = mf.exponent(Var::T);
        for (mg, cg) in g.terms() {
            let k = mg.exponent(Var::T);
            for j in 0..=k {
                let sign = if j % 2 == 0 { rat(1) } else { rat(-1) };
                let c = cf * cg * Rat::from_integer(binomial(BigInt::from(k), BigInt::from(j))) * sign;
                let h = MPoly::var_pow(c, Var::T, k - j);
                let entry = parts.entry(p + j).or_insert_with(|| module_zero(dim));
                *entry = module_add(entry, &module_scale(&h, m));
            }
        }
    }
    parts.retain(|_, m| !m.iter().all(MPoly::is_zero));
    Straightened { dim, parts }
}

/// The pseudo-product `u * v` of `Cur A` in straightened form: for
/// `u = f ⊗ a`, `v = g ⊗ b` it is `f ⊗ g ⊗_H (1 ⊗ ab)`.
pub fn cur_pseudo_product(
    alg: &impl CoefficientAlgebra,
    u: &CurElement,
    v: &CurElement,
) -> Result<Straightened> {
    check_dims(alg, u, v)?;
    let dim = alg.dim();
    let mut total = Straightened { dim, parts: BTreeMap::new() };
    for (a, fa) in u.coeffs.iter().enumerate().filter(|(_, p)| !p.is_zero()) {
        for (b, gb) in v.coeffs.iter().enumerate().filter(|(_, p)| !p.is_zero()) {
            let mut ab = module_zero(dim);
            for (k, c) in alg.basis_product(a, b) {
                ab[k] = MPoly::constant(c);
            }
            for (i, m) in straighten(fa, gb, &ab).parts {
                let entry = total.parts.entry(i).or_insert_with(|| module_zero(dim));
                *entry = module_add(entry, &m);
            }
        }
    }
    total.parts.retain(|_, m| !m.iter().all(MPoly::is_zero));
    Ok(total)
}

/// The embedding `Cur A -> Cend M` for an `A`-module `M0` given by one
/// matrix per basis element of `A`: `(f ⊗ e) ∘_z m = f(-z) (e · m)`.
pub fn cur_to_cend(u: &CurElement, action: &[RatMatrix]) -> Result<ConfMap> {
    if action.len() != u.dim() {
        return Err(Error::DimensionMismatch { expected: u.dim(), found: action.len() });
    }
    let n = action.first().map_or(0, RatMatrix::rows);
    let minus_z = group::inverse(&MPoly::var(ACTION));
    let mut a = ConfMap::zero(n);
    for (k, f) in u.coeffs.iter().enumerate() {
        if f.is_zero() {
            continue;
        }
        let mat = &action[k];
        if mat.rows() != n || mat.cols() != n {
            return Err(Error::DimensionMismatch { expected: n, found: mat.rows() });
        }
        let g = f.substitute(Var::T, &minus_z);
        for col in 0..n {
            for row in 0..n {
                let c = &mat[(row, col)];
                if !c.is_zero() {
                    let updated = a.entry(col, row) + &g.scale(c);
                    a.set_entry(col, row, updated);
                }
            }
        }
    }
    Ok(a)
}
