use num_traits::Zero;

use super::term::{DiOp, Model, Product};
use crate::error::{Error, Result};
use crate::exact::Rat;

/// Finite-dimensional algebra given by structure constants:
/// `e_i * e_j = sum_k c[i][j][k] e_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureAlgebra {
    name: String,
    basis: Vec<String>,
    // row (i * dim + j) holds the coordinates of e_i * e_j
    table: Vec<Vec<Rat>>,
}

impl StructureAlgebra {
    /// The algebra with the given basis and zero multiplication.
    pub fn zero(name: impl Into<String>, basis: Vec<String>) -> Self {
        let dim = basis.len();
        StructureAlgebra {
            name: name.into(),
            basis,
            table: vec![vec![Rat::zero(); dim]; dim * dim],
        }
    }

    /// Builds an algebra from sparse product entries `(i, j, [(k, c)])`.
    pub fn from_products(
        name: impl Into<String>,
        basis: Vec<String>,
        products: &[(usize, usize, Vec<(usize, Rat)>)],
    ) -> Result<Self> {
        let mut alg = StructureAlgebra::zero(name, basis);
        for (i, j, value) in products {
            for (k, c) in value {
                alg.check_index(*i)?;
                alg.check_index(*j)?;
                alg.check_index(*k)?;
                let dim = alg.dim();
                alg.table[i * dim + j][*k] += c;
            }
        }
        Ok(alg)
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i < self.dim() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { expected: self.dim(), found: i })
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> &Rat {
        &self.table[i * self.dim() + j][k]
    }

    pub fn set_constant(&mut self, i: usize, j: usize, k: usize, c: Rat) {
        let dim = self.dim();
        self.table[i * dim + j][k] = c;
    }

    /// Coordinates of `e_i * e_j`.
    pub fn product_of_basis(&self, i: usize, j: usize) -> &[Rat] {
        &self.table[i * self.dim() + j]
    }

    pub fn mul(&self, x: &[Rat], y: &[Rat]) -> Vec<Rat> {
        bilinear(self.dim(), &self.table, x, y)
    }

    pub fn is_abelian(&self) -> bool {
        self.table.iter().flatten().all(Zero::is_zero)
    }

    pub fn unit_vector(&self, i: usize) -> Vec<Rat> {
        unit(self.dim(), i)
    }
}

/// Finite-dimensional dialgebra: two structure tensors for `⊣` and `⊢`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureDialgebra {
    name: String,
    basis: Vec<String>,
    left: Vec<Vec<Rat>>,
    right: Vec<Vec<Rat>>,
}

impl StructureDialgebra {
    pub fn zero(name: impl Into<String>, basis: Vec<String>) -> Self {
        let dim = basis.len();
        StructureDialgebra {
            name: name.into(),
            basis,
            left: vec![vec![Rat::zero(); dim]; dim * dim],
            right: vec![vec![Rat::zero(); dim]; dim * dim],
        }
    }

    /// `left` entries define `⊣`, `right` entries define `⊢`.
    pub fn from_products(
        name: impl Into<String>,
        basis: Vec<String>,
        left: &[(usize, usize, Vec<(usize, Rat)>)],
        right: &[(usize, usize, Vec<(usize, Rat)>)],
    ) -> Result<Self> {
        let mut d = StructureDialgebra::zero(name, basis);
        let dim = d.dim();
        for (op, entries) in [(DiOp::Left, left), (DiOp::Right, right)] {
            for (i, j, value) in entries {
                for (k, c) in value {
                    if *i >= dim || *j >= dim || *k >= dim {
                        return Err(Error::DimensionMismatch { expected: dim, found: *i.max(j).max(k) });
                    }
                    d.table_mut(op)[i * dim + j][*k] += c;
                }
            }
        }
        Ok(d)
    }

    /// The dialgebra with `⊣ = ⊢ =` the product of `a`.
    pub fn from_associative(a: &StructureAlgebra) -> Self {
        StructureDialgebra {
            name: a.name.clone(),
            basis: a.basis.clone(),
            left: a.table.clone(),
            right: a.table.clone(),
        }
    }

    fn table_mut(&mut self, op: DiOp) -> &mut Vec<Vec<Rat>> {
        match op {
            DiOp::Left => &mut self.left,
            DiOp::Right => &mut self.right,
        }
    }

    fn table(&self, op: DiOp) -> &Vec<Vec<Rat>> {
        match op {
            DiOp::Left => &self.left,
            DiOp::Right => &self.right,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis
    }

    pub fn constant(&self, op: DiOp, i: usize, j: usize, k: usize) -> &Rat {
        &self.table(op)[i * self.dim() + j][k]
    }

    pub fn set_constant(&mut self, op: DiOp, i: usize, j: usize, k: usize, c: Rat) {
        let dim = self.dim();
        self.table_mut(op)[i * dim + j][k] = c;
    }

    pub fn product_of_basis(&self, op: DiOp, i: usize, j: usize) -> &[Rat] {
        &self.table(op)[i * self.dim() + j]
    }

    pub fn mul(&self, op: DiOp, x: &[Rat], y: &[Rat]) -> Vec<Rat> {
        bilinear(self.dim(), self.table(op), x, y)
    }
}

fn unit(dim: usize, i: usize) -> Vec<Rat> {
    let mut v = vec![Rat::zero(); dim];
    v[i] = num_traits::One::one();
    v
}

fn bilinear(dim: usize, table: &[Vec<Rat>], x: &[Rat], y: &[Rat]) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); dim];
    for (i, xi) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
        for (j, yj) in y.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            let coeff = xi * yj;
            for (o, c) in out.iter_mut().zip(&table[i * dim + j]) {
                if !c.is_zero() {
                    *o += &coeff * c;
                }
            }
        }
    }
    out
}

fn combine_vectors(dim: usize, terms: &[(Rat, Vec<Rat>)]) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); dim];
    for (c, v) in terms {
        for (o, x) in out.iter_mut().zip(v) {
            *o += c * x;
        }
    }
    out
}

impl Model<Product> for StructureAlgebra {
    type Value = Vec<Rat>;

    fn product(&self, _: Product, a: &Vec<Rat>, b: &Vec<Rat>) -> Vec<Rat> {
        self.mul(a, b)
    }

    fn combine(&self, terms: &[(Rat, Vec<Rat>)]) -> Vec<Rat> {
        combine_vectors(self.dim(), terms)
    }

    fn is_zero(&self, v: &Vec<Rat>) -> bool {
        v.iter().all(Zero::is_zero)
    }
}

impl Model<DiOp> for StructureDialgebra {
    type Value = Vec<Rat>;

    fn product(&self, op: DiOp, a: &Vec<Rat>, b: &Vec<Rat>) -> Vec<Rat> {
        self.mul(op, a, b)
    }

    fn combine(&self, terms: &[(Rat, Vec<Rat>)]) -> Vec<Rat> {
        combine_vectors(self.dim(), terms)
    }

    fn is_zero(&self, v: &Vec<Rat>) -> bool {
        v.iter().all(Zero::is_zero)
    }
}

/// Basis vectors of an algebra or dialgebra, the inputs of exhaustive
/// identity checks.
pub fn basis_vectors(dim: usize) -> Vec<Vec<Rat>> {
    (0..dim).map(|i| unit(dim, i)).collect()
}
