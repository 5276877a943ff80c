use super::algebra::{basis_vectors, StructureAlgebra, StructureDialgebra};
use super::term::{DiOp, DiTerm, IdentityTerm, Product};
use crate::error::{Error, Result};
use crate::exact::{Rat, RatMatrix};

pub fn associativity() -> IdentityTerm {
    IdentityTerm::parse("(x1*x2)*x3 - x1*(x2*x3)").expect("static term")
}

/// Anticommutativity and Jacobi, the latter written as the left Leibniz
/// identity.
pub fn lie_identities() -> Vec<IdentityTerm> {
    vec![
        IdentityTerm::parse("x1*x2 + x2*x1").expect("static term"),
        IdentityTerm::parse("x1*(x2*x3) - x2*(x1*x3) - (x1*x2)*x3").expect("static term"),
    ]
}

/// `[x1[x2x3]] - [[x1x2]x3] - [x2[x1x3]]`
pub fn left_leibniz() -> IdentityTerm {
    IdentityTerm::parse("x1*(x2*x3) - (x1*x2)*x3 - x2*(x1*x3)").expect("static term")
}

/// The two identities every dialgebra of every variety satisfies.
pub fn bar_identities() -> Vec<DiTerm> {
    vec![
        DiTerm::parse("(x1 ⊣ x2) ⊢ x3 - (x1 ⊢ x2) ⊢ x3").expect("static term"),
        DiTerm::parse("x1 ⊣ (x2 ⊢ x3) - x1 ⊣ (x2 ⊣ x3)").expect("static term"),
    ]
}

/// Turns `t` into its dialgebra version centred at variable `center`
/// (1-based).
///
/// In each monomial the multiplications to the left of `x_center` (in
/// reading order) become `⊢` and those to its right become `⊣`; the
/// bracketing is kept.
pub fn di_translate(t: &IdentityTerm, center: usize) -> Result<DiTerm> {
    if center == 0 || center > t.arity() {
        return Err(Error::VariableOutOfRange { index: center, arity: t.arity() });
    }
    let var = center - 1;
    let monomials = t
        .monomials()
        .iter()
        .map(|(c, tree)| {
            let pos = tree
                .leaves()
                .iter()
                .position(|&l| l == var)
                .expect("polylinear monomial contains every variable");
            let translated = tree.relabel(&mut |_: Product, split| {
                if pos >= split {
                    DiOp::Right
                } else {
                    DiOp::Left
                }
            });
            (c.clone(), translated)
        })
        .collect();
    DiTerm::new(t.arity(), monomials)
}

/// The bar identities followed by `t_1, ..., t_n` for each `t` in `sigma`.
pub fn variety_identities(sigma: &[IdentityTerm]) -> Vec<DiTerm> {
    let mut out = bar_identities();
    for t in sigma {
        for i in 1..=t.arity() {
            out.push(di_translate(t, i).expect("index within arity"));
        }
    }
    out
}

/// A failed identity together with the basis tuple witnessing it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub identity: String,
    pub witness: Vec<usize>,
}

pub fn check_algebra(alg: &StructureAlgebra, identities: &[IdentityTerm]) -> Option<Violation> {
    let basis = basis_vectors(alg.dim());
    identities.iter().find_map(|t| {
        t.find_violation(alg, &basis)
            .map(|witness| Violation { identity: t.to_string(), witness })
    })
}

pub fn check_dialgebra(d: &StructureDialgebra, identities: &[DiTerm]) -> Option<Violation> {
    let basis = basis_vectors(d.dim());
    identities.iter().find_map(|t| {
        t.find_violation(d, &basis)
            .map(|witness| Violation { identity: t.to_string(), witness })
    })
}

/// Checks the full family for the variety defined by `sigma`.
pub fn check_variety(d: &StructureDialgebra, sigma: &[IdentityTerm]) -> Option<Violation> {
    check_dialgebra(d, &variety_identities(sigma))
}

pub fn is_leibniz(alg: &StructureAlgebra) -> bool {
    check_algebra(alg, &[left_leibniz()]).is_none()
}

/// `[xx] = 0` for all `x` together with the Jacobi identity.
pub fn is_lie(alg: &StructureAlgebra) -> bool {
    use num_traits::Zero;
    let squares_vanish = (0..alg.dim()).all(|i| alg.product_of_basis(i, i).iter().all(Zero::is_zero));
    squares_vanish && check_algebra(alg, &lie_identities()).is_none()
}

/// `x ⊢ y = [xy]`, `x ⊣ y = -[yx]`.
pub fn leibniz_to_dialgebra(l: &StructureAlgebra) -> Result<StructureDialgebra> {
    if let Some(v) = check_algebra(l, &[left_leibniz()]) {
        return Err(Error::NotLeibniz(v.witness));
    }
    let n = l.dim();
    let mut d = StructureDialgebra::zero(l.name(), l.basis_names().to_vec());
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                d.set_constant(DiOp::Right, i, j, k, l.constant(i, j, k).clone());
                d.set_constant(DiOp::Left, i, j, k, -l.constant(j, i, k).clone());
            }
        }
    }
    Ok(d)
}

/// The Leibniz algebra `A^(-)` with `[ab] = a ⊢ b - b ⊣ a`.
pub fn minus_functor(a: &StructureDialgebra) -> Result<StructureAlgebra> {
    if let Some(v) = check_variety(a, &[associativity()]) {
        return Err(Error::NotAssociativeDialgebra(v.witness));
    }
    let n = a.dim();
    let mut out = StructureAlgebra::zero(a.name(), a.basis_names().to_vec());
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let c = a.constant(DiOp::Right, i, j, k) - a.constant(DiOp::Left, j, i, k);
                out.set_constant(i, j, k, c);
            }
        }
    }
    Ok(out)
}

/// `L^alg = L / Span{[ab] + [ba]}` together with the data needed to move
/// between `L` and the quotient.
#[derive(Debug, Clone)]
pub struct LeibnizQuotient {
    /// The Lie algebra, with basis the images of the standard basis vectors
    /// listed in `complement`.
    pub lie: StructureAlgebra,
    /// `dim L^alg x dim L` matrix of the projection.
    pub proj: RatMatrix,
    /// Reduced echelon basis of the kernel of the projection.
    pub kernel_basis: Vec<Vec<Rat>>,
    /// Pivot column of each kernel basis vector.
    pub kernel_pivots: Vec<usize>,
    /// Standard basis indices whose images form the basis of `L^alg`.
    pub complement: Vec<usize>,
}

impl LeibnizQuotient {
    /// Coordinates in `L^alg` of an element of `L`.
    pub fn project(&self, x: &[Rat]) -> Vec<Rat> {
        self.proj.mul_vec(x)
    }
}

pub fn leibniz_quotient(l: &StructureAlgebra) -> Result<LeibnizQuotient> {
    if let Some(v) = check_algebra(l, &[left_leibniz()]) {
        return Err(Error::NotLeibniz(v.witness));
    }
    let n = l.dim();
    let mut sym = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in i..n {
            let v: Vec<Rat> = l
                .product_of_basis(i, j)
                .iter()
                .zip(l.product_of_basis(j, i))
                .map(|(a, b)| a + b)
                .collect();
            sym.push(v);
        }
    }
    let (kernel_basis, kernel_pivots) = RatMatrix::from_rows(n, sym)?.row_space_basis();
    let complement: Vec<usize> = (0..n).filter(|c| !kernel_pivots.contains(c)).collect();

    // x maps to its remainder modulo the echelon kernel basis, read off on
    // the complement columns.
    let mut proj = RatMatrix::zeros(complement.len(), n);
    for col in 0..n {
        let mut x = l.unit_vector(col);
        for (row, &p) in kernel_basis.iter().zip(&kernel_pivots) {
            let f = x[p].clone();
            for (xi, ri) in x.iter_mut().zip(row) {
                *xi -= &f * ri;
            }
        }
        for (r, &c) in complement.iter().enumerate() {
            proj[(r, col)] = x[c].clone();
        }
    }

    let names: Vec<String> = complement.iter().map(|&c| l.basis_names()[c].clone()).collect();
    let mut lie = StructureAlgebra::zero(format!("{}^alg", l.name()), names);
    for (a, &i) in complement.iter().enumerate() {
        for (b, &j) in complement.iter().enumerate() {
            let image = proj.mul_vec(l.product_of_basis(i, j));
            for (k, c) in image.into_iter().enumerate() {
                lie.set_constant(a, b, k, c);
            }
        }
    }
    Ok(LeibnizQuotient { lie, proj, kernel_basis, kernel_pivots, complement })
}
