//! Conformal algebra machinery over `H = Q[T]` with the additive formal
//! group: `Δ(T) = T⊗1 + 1⊗T`, `ε(T) = 0`, `S(T) = -T`, so that
//! `h(z⁻¹) = h(-z)`, `h_(1)(z) h_(2) = h(z + T)` and the unit is `0`.

mod confmap;
mod current;

pub use confmap::{
    brace, check_conformal_identities, circle, coefficient_matrix, dialgebra_ops, gc_bracket,
    module_add, module_basis, module_is_zero, module_scale, module_zero, CendDialgebra, ConfMap,
    ConformalReport, IdentityOutcome, ModuleElem, ACTION,
};
pub use current::{
    cur_dialgebra, cur_pseudo_product, cur_to_cend, cur_z_product, straighten, CoefficientAlgebra,
    CurElement, MatrixAlgebra, Straightened,
};

/// The additive group law on formal parameters.
pub mod group {
    use crate::exact::MPoly;

    /// `z ↦ z⁻¹`, here `-z`.
    pub fn inverse(z: &MPoly) -> MPoly {
        -z
    }

    /// `(z, y) ↦ zy`, here `z + y`.
    pub fn mul(z: &MPoly, y: &MPoly) -> MPoly {
        z + y
    }

    pub fn unit() -> MPoly {
        MPoly::zero()
    }
}

pub mod random {
    //! Seeded random conformal maps for property checks.

    use rand::Rng;

    use super::ConfMap;
    use crate::exact::{rat, MPoly, Monomial, Var};

    /// Dense table with entries of degree `<= max_degree` separately in `z`
    /// and `T`, small integer coefficients, about half of them zero.
    pub fn conf_map(rng: &mut impl Rng, dim: usize, max_degree: u32) -> ConfMap {
        let table = (0..dim)
            .map(|_| (0..dim).map(|_| poly_zt(rng, max_degree)).collect())
            .collect();
        ConfMap::from_table(table).expect("square table")
    }

    pub fn poly_zt(rng: &mut impl Rng, max_degree: u32) -> MPoly {
        let mut p = MPoly::zero();
        for i in 0..=max_degree {
            for j in 0..=max_degree {
                if rng.gen_bool(0.5) {
                    continue;
                }
                let c = rng.gen_range(-3i64..=3);
                let m = Monomial::var(Var::Z, i);
                let t = MPoly::var_pow(rat(1), Var::T, j);
                p += &(&MPoly::term(rat(c), m) * &t);
            }
        }
        p
    }

    /// Polynomial in `T` only.
    pub fn poly_t(rng: &mut impl Rng, max_degree: u32) -> MPoly {
        let mut p = MPoly::zero();
        for j in 0..=max_degree {
            let c = rng.gen_range(-3i64..=3);
            p += &MPoly::var_pow(rat(c), Var::T, j);
        }
        p
    }
}
