//! Faithful conformal representations of Leibniz algebras.
//!
//! Given a Leibniz algebra `L` and a module `V` over `L^alg`, the space
//! `M0 = V ⊕ (L ⊗ V)` carries the representation
//!
//! ```text
//! ρ(a) ∘_z v       = āv + z (a ⊗ v)
//! ρ(a) ∘_z (b ⊗ v) = b ⊗ āv + [ab] ⊗ v
//! ```
//!
//! of `L` in `gc M^(0)`, where `M = Q[T] ⊗ M0`.

use num_traits::Zero;

use crate::conformal::{
    coefficient_matrix, cur_dialgebra, cur_to_cend, gc_bracket, ConfMap, CurElement, MatrixAlgebra,
    ACTION,
};
use crate::error::{Error, Result};
use crate::exact::{MPoly, Rat, RatMatrix, Var};
use crate::finalg::{leibniz_quotient, LeibnizQuotient, StructureAlgebra};

/// A finite-dimensional module over a Lie algebra: one matrix per basis
/// element, `action[i][(q, p)]` being the `v_q` coordinate of `e_i · v_p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieModule {
    lie: StructureAlgebra,
    basis: Vec<String>,
    action: Vec<RatMatrix>,
}

impl LieModule {
    /// Validates the module law `[xy]· = x·y· - y·x·` on all basis pairs.
    pub fn new(lie: StructureAlgebra, basis: Vec<String>, action: Vec<RatMatrix>) -> Result<Self> {
        let n = basis.len();
        if n == 0 {
            return Err(Error::EmptyModule);
        }
        if action.len() != lie.dim() {
            return Err(Error::DimensionMismatch { expected: lie.dim(), found: action.len() });
        }
        for m in &action {
            if m.rows() != n || m.cols() != n {
                return Err(Error::DimensionMismatch { expected: n, found: m.rows() });
            }
        }
        let module = LieModule { lie, basis, action };
        for i in 0..module.lie.dim() {
            for j in 0..module.lie.dim() {
                let lhs = module.acting(module.lie.product_of_basis(i, j));
                let xy = module.action[i].mul(&module.action[j])?;
                let yx = module.action[j].mul(&module.action[i])?;
                if lhs != xy.sub(&yx) {
                    return Err(Error::ModuleLaw(i, j));
                }
            }
        }
        Ok(module)
    }

    /// `dim_v` copies of the trivial module.
    pub fn trivial(lie: StructureAlgebra, dim_v: usize) -> Result<Self> {
        let action = vec![RatMatrix::zeros(dim_v, dim_v); lie.dim()];
        let basis = (0..dim_v).map(|p| format!("v{p}")).collect();
        LieModule::new(lie, basis, action)
    }

    /// The adjoint module `x · y = [xy]`.
    pub fn adjoint(lie: StructureAlgebra) -> Result<Self> {
        let n = lie.dim();
        let action = (0..n)
            .map(|i| {
                let mut m = RatMatrix::zeros(n, n);
                for j in 0..n {
                    for k in 0..n {
                        m[(k, j)] = lie.constant(i, j, k).clone();
                    }
                }
                m
            })
            .collect();
        let basis = lie.basis_names().to_vec();
        LieModule::new(lie, basis, action)
    }

    pub fn lie(&self) -> &StructureAlgebra {
        &self.lie
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis
    }

    pub fn action(&self) -> &[RatMatrix] {
        &self.action
    }

    /// The matrix by which `x = Σ x_i e_i` acts.
    pub fn acting(&self, x: &[Rat]) -> RatMatrix {
        let n = self.dim();
        x.iter()
            .zip(&self.action)
            .filter(|(c, _)| !c.is_zero())
            .fold(RatMatrix::zeros(n, n), |acc, (c, m)| acc.add(&m.scale(c)))
    }
}

/// Basis bookkeeping for `M0 = V ⊕ (L ⊗ V)`: `v_p` has index `p`, and
/// `e_i ⊗ v_p` has index `dim_v + i * dim_v + p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepSpace {
    pub dim_l: usize,
    pub dim_v: usize,
    labels: Vec<String>,
}

impl RepSpace {
    pub fn new(l_names: &[String], v_names: &[String]) -> Self {
        let mut labels = v_names.to_vec();
        for a in l_names {
            for v in v_names {
                labels.push(format!("{a}⊗{v}"));
            }
        }
        RepSpace { dim_l: l_names.len(), dim_v: v_names.len(), labels }
    }

    pub fn m0_dim(&self) -> usize {
        self.dim_v * (1 + self.dim_l)
    }

    pub fn v_index(&self, p: usize) -> usize {
        p
    }

    pub fn tensor_index(&self, i: usize, p: usize) -> usize {
        self.dim_v + i * self.dim_v + p
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }
}

/// The representation `ρ` on the basis of `L`.
#[derive(Debug, Clone)]
pub struct Representation {
    pub space: RepSpace,
    pub maps: Vec<ConfMap>,
}

impl Representation {
    pub fn image(&self, a: usize) -> &ConfMap {
        &self.maps[a]
    }

    /// `ρ(x)` for an arbitrary element of `L`.
    pub fn image_of(&self, x: &[Rat]) -> ConfMap {
        x.iter()
            .zip(&self.maps)
            .filter(|(c, _)| !c.is_zero())
            .fold(ConfMap::zero(self.space.m0_dim()), |acc, (c, m)| acc.add(&m.scale(c)))
    }
}

fn add(rho: &mut ConfMap, from: usize, to: usize, p: &MPoly) {
    let updated = rho.entry(from, to) + p;
    rho.set_entry(from, to, updated);
}

fn same_structure(a: &StructureAlgebra, b: &StructureAlgebra) -> bool {
    let n = a.dim();
    n == b.dim()
        && (0..n).all(|i| (0..n).all(|j| a.product_of_basis(i, j) == b.product_of_basis(i, j)))
}

pub fn build_rho(l: &StructureAlgebra, v: &LieModule) -> Result<Representation> {
    let q = leibniz_quotient(l)?;
    build_rho_with(l, &q, v)
}

/// As [`build_rho`], reusing an already computed quotient.
pub fn build_rho_with(l: &StructureAlgebra, q: &LeibnizQuotient, v: &LieModule) -> Result<Representation> {
    if !same_structure(&q.lie, v.lie()) {
        return Err(Error::QuotientMismatch);
    }
    let space = RepSpace::new(l.basis_names(), v.basis_names());
    let n = l.dim();
    let dv = v.dim();
    let z = MPoly::var(ACTION);
    let mut maps = Vec::with_capacity(n);
    for a in 0..n {
        let abar = v.acting(&q.project(&l.unit_vector(a)));
        let mut rho = ConfMap::zero(space.m0_dim());
        for p in 0..dv {
            for qv in 0..dv {
                let c = &abar[(qv, p)];
                if c.is_zero() {
                    continue;
                }
                let c = MPoly::constant(c.clone());
                add(&mut rho, space.v_index(p), space.v_index(qv), &c);
                for b in 0..n {
                    add(&mut rho, space.tensor_index(b, p), space.tensor_index(b, qv), &c);
                }
            }
            add(&mut rho, space.v_index(p), space.tensor_index(a, p), &z);
            for b in 0..n {
                for (k, c) in l.product_of_basis(a, b).iter().enumerate() {
                    if !c.is_zero() {
                        let c = MPoly::constant(c.clone());
                        add(&mut rho, space.tensor_index(b, p), space.tensor_index(k, p), &c);
                    }
                }
            }
        }
        maps.push(rho);
    }
    Ok(Representation { space, maps })
}

/// First basis pair `(a, b)` with `gc_bracket(ρ(a), ρ(b)) != ρ([ab])`, with
/// the bracket `[ab]` taken in `l`.
pub fn representation_violation(rho: &Representation, l: &StructureAlgebra) -> Option<(usize, usize)> {
    let n = l.dim();
    for a in 0..n {
        for b in 0..n {
            let lhs = gc_bracket(&rho.maps[a], &rho.maps[b]);
            if lhs != rho.image_of(l.product_of_basis(a, b)) {
                return Some((a, b));
            }
        }
    }
    None
}

pub fn check_representation(rho: &Representation, l: &StructureAlgebra) -> bool {
    representation_violation(rho, l).is_none()
}

/// Rank of `L -> Cend M` over the coefficients of the tables.
pub fn representation_rank(rho: &Representation) -> usize {
    coefficient_matrix(&rho.maps).rank()
}

pub fn check_faithful(rho: &Representation, l: &StructureAlgebra) -> bool {
    representation_rank(rho) == l.dim()
}

/// Splits a table of `z`-degree at most 1 and no `T` into `(a0, a1)` with
/// `ρ(a) = 1 ⊗ a0 - T ⊗ a1`, i.e. `table[u][v] = a0[v][u] + z a1[v][u]`.
pub fn decompose(a: &ConfMap) -> Result<(RatMatrix, RatMatrix)> {
    if a.degree_in(Var::T) > 0 {
        return Err(Error::NotCurrentShape("table depends on T".into()));
    }
    if a.degree_in(ACTION) > 1 {
        return Err(Error::NotCurrentShape("table has z-degree above 1".into()));
    }
    let n = a.dim();
    let mut a0 = RatMatrix::zeros(n, n);
    let mut a1 = RatMatrix::zeros(n, n);
    for u in 0..n {
        for v in 0..n {
            let p = a.entry(u, v);
            if !p.uses_only(&[ACTION]) {
                return Err(Error::NotCurrentShape(format!("entry ({u}, {v}) has parameters")));
            }
            a0[(v, u)] = p.constant_term();
            a1[(v, u)] = p.coefficient_in(ACTION, 1).constant_term();
        }
    }
    Ok((a0, a1))
}

/// `1 ⊗ a0 - T ⊗ a1` in `Cur End(M0)`.
pub fn current_image(a: &ConfMap) -> Result<CurElement> {
    let (a0, a1) = decompose(a)?;
    Ok(CurElement::from_matrices(&a0, &a1))
}

/// The round trip `cur_to_cend(1 ⊗ a0 - T ⊗ a1) = ρ(a)` on every basis
/// element; returns the first failing index.
pub fn round_trip_violation(rho: &Representation) -> Result<Option<usize>> {
    let n = rho.space.m0_dim();
    let action = MatrixAlgebra { n }.defining_action();
    for (a, m) in rho.maps.iter().enumerate() {
        if &cur_to_cend(&current_image(m)?, &action)? != m {
            return Ok(Some(a));
        }
    }
    Ok(None)
}

/// Checks that `a ↦ 1 ⊗ a0 - T ⊗ a1` is an injective homomorphism from `l`
/// into `Cur End(M0)` with the bracket `u ⊢ v - v ⊣ u`. Returns the first
/// failing pair, or `(dim, dim)` if injectivity fails.
pub fn current_embedding_violation(
    rho: &Representation,
    l: &StructureAlgebra,
) -> Result<Option<(usize, usize)>> {
    let alg = MatrixAlgebra { n: rho.space.m0_dim() };
    let images: Vec<CurElement> = rho.maps.iter().map(current_image).collect::<Result<_>>()?;
    let n = l.dim();
    for a in 0..n {
        for b in 0..n {
            let (ab_right, _) = cur_dialgebra(&alg, &images[a], &images[b])?;
            let (_, ba_left) = cur_dialgebra(&alg, &images[b], &images[a])?;
            let bracket = ab_right.sub(&ba_left);
            let expected = l
                .product_of_basis(a, b)
                .iter()
                .zip(&images)
                .filter(|(c, _)| !c.is_zero())
                .fold(CurElement::zero(alg.n * alg.n), |acc, (c, u)| {
                    acc.add(&CurElement { coeffs: u.coeffs.iter().map(|p| p.scale(c)).collect() })
                });
            if bracket != expected {
                return Ok(Some((a, b)));
            }
        }
    }
    let rows: Vec<Vec<Rat>> = images
        .iter()
        .map(|u| {
            u.coeffs
                .iter()
                .flat_map(|p| [p.constant_term(), p.coefficient_in(Var::T, 1).constant_term()])
                .collect()
        })
        .collect();
    if n > 0 && RatMatrix::from_rows(rows[0].len(), rows)?.rank() != n {
        return Ok(Some((n, n)));
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::finalg::samples::{abelian, l2, leibniz_corpus, nonabelian2};

    fn z() -> MPoly {
        MPoly::var(ACTION)
    }

    fn one() -> MPoly {
        MPoly::constant(rat(1))
    }

    #[test]
    fn l2_trivial_tables() {
        let l = l2();
        let q = leibniz_quotient(&l).unwrap();
        let v = LieModule::trivial(q.lie.clone(), 1).unwrap();
        let rho = build_rho(&l, &v).unwrap();
        // indices: v = 0, a⊗v = 1, b⊗v = 2
        assert_eq!(rho.space.labels(), &["v0", "a⊗v0", "b⊗v0"]);
        let ra = rho.image(0);
        assert_eq!(ra.entry(0, 1), &z());
        assert_eq!(ra.entry(1, 2), &one());
        assert!(ra.image(2).iter().all(MPoly::is_zero));
        let rb = rho.image(1);
        assert_eq!(rb.entry(0, 2), &z());
        assert!(rb.image(1).iter().all(MPoly::is_zero));
        assert!(rb.image(2).iter().all(MPoly::is_zero));
        assert!(check_representation(&rho, &l));
        assert!(check_faithful(&rho, &l));

        let (a0, a1) = decompose(ra).unwrap();
        let mut e0 = RatMatrix::zeros(3, 3);
        e0[(2, 1)] = rat(1);
        let mut e1 = RatMatrix::zeros(3, 3);
        e1[(1, 0)] = rat(1);
        assert_eq!((a0, a1), (e0, e1));
    }

    #[test]
    fn abelian_trivial_tables() {
        let l = abelian(2);
        let q = leibniz_quotient(&l).unwrap();
        let rho = build_rho(&l, &LieModule::trivial(q.lie, 1).unwrap()).unwrap();
        for a in 0..2 {
            let (a0, _) = decompose(rho.image(a)).unwrap();
            assert!(a0.is_zero());
            for row in 1..3 {
                assert!(rho.image(a).image(row).iter().all(MPoly::is_zero));
            }
        }
    }

    #[test]
    fn adjoint_r2_by_hand() {
        // [ef] = f, [fe] = -f; V = L with ad; M0 = V ⊕ L⊗V of dim 6
        let l = nonabelian2();
        let q = leibniz_quotient(&l).unwrap();
        let v = LieModule::adjoint(q.lie).unwrap();
        let rho = build_rho(&l, &v).unwrap();
        let s = &rho.space;
        let re = rho.image(0);
        // ρ(e) ∘_z f = [ef] + z e⊗f = f + z e⊗f
        let mut expected = vec![MPoly::zero(); 6];
        expected[1] = one();
        expected[s.tensor_index(0, 1)] = z();
        assert_eq!(re.image(1), expected.as_slice());
        // ρ(e) ∘_z (f⊗e) = f⊗[ee] + [ef]⊗e = f⊗e
        let mut expected = vec![MPoly::zero(); 6];
        expected[s.tensor_index(1, 0)] = one();
        assert_eq!(re.image(s.tensor_index(1, 0)), expected.as_slice());
        // ρ(f) ∘_z (e⊗e) = e⊗[fe] + [fe]⊗e = -e⊗f - f⊗e
        let rf = rho.image(1);
        let mut expected = vec![MPoly::zero(); 6];
        expected[s.tensor_index(0, 1)] = -one();
        expected[s.tensor_index(1, 0)] = -one();
        assert_eq!(rf.image(s.tensor_index(0, 0)), expected.as_slice());
        assert!(check_representation(&rho, &l));
        assert!(check_faithful(&rho, &l));
    }

    #[test]
    fn corpus_representations() {
        for l in leibniz_corpus() {
            let q = leibniz_quotient(&l).unwrap();
            for v in [LieModule::trivial(q.lie.clone(), 1).unwrap(), LieModule::adjoint(q.lie.clone()).unwrap()] {
                let rho = build_rho(&l, &v).unwrap();
                assert!(check_representation(&rho, &l), "{}", l.name());
                assert!(check_faithful(&rho, &l), "{}", l.name());
                assert_eq!(round_trip_violation(&rho).unwrap(), None);
                assert_eq!(current_embedding_violation(&rho, &l).unwrap(), None, "{}", l.name());
                for m in &rho.maps {
                    assert!(m.degree_in(ACTION) <= 1 && m.degree_in(Var::T) == 0);
                }
            }
        }
    }

    #[test]
    fn rejects_bad_modules() {
        let lie = leibniz_quotient(&nonabelian2()).unwrap().lie;
        assert_eq!(LieModule::trivial(lie.clone(), 0), Err(Error::EmptyModule));
        // e and f both acting by the identity: [ef] = f must act by 0
        let bad = vec![RatMatrix::identity(1), RatMatrix::identity(1)];
        assert_eq!(LieModule::new(lie.clone(), vec!["v".into()], bad), Err(Error::ModuleLaw(0, 1)));
        let other = LieModule::trivial(abelian(2), 1).unwrap();
        assert!(matches!(build_rho(&nonabelian2(), &other), Err(Error::QuotientMismatch)));
    }

    #[test]
    fn corrupted_bracket_is_detected() {
        let l = l2();
        let q = leibniz_quotient(&l).unwrap();
        let rho = build_rho(&l, &LieModule::trivial(q.lie, 1).unwrap()).unwrap();
        let mut bad = l.clone();
        bad.set_constant(0, 0, 1, rat(2));
        assert_eq!(representation_violation(&rho, &bad), Some((0, 0)));
    }

    #[test]
    fn decompose_rejects_shapes() {
        let t = ConfMap::from_table(vec![vec![MPoly::var(Var::T)]]).unwrap();
        assert!(decompose(&t).is_err());
        let z2 = ConfMap::from_table(vec![vec![z().pow(2)]]).unwrap();
        assert!(decompose(&z2).is_err());
    }
}
