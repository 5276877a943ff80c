//! Small algebras used throughout the tests, the command line tool and the
//! Python bindings.

use super::algebra::{StructureAlgebra, StructureDialgebra};
use crate::exact::{rat, Rat};

fn names(ns: &[&str]) -> Vec<String> {
    ns.iter().map(|s| s.to_string()).collect()
}

fn build(name: &str, basis: &[&str], products: &[(usize, usize, &[(usize, i64)])]) -> StructureAlgebra {
    let products: Vec<(usize, usize, Vec<(usize, Rat)>)> = products
        .iter()
        .map(|(i, j, v)| (*i, *j, v.iter().map(|(k, c)| (*k, rat(*c))).collect()))
        .collect();
    StructureAlgebra::from_products(name, names(basis), &products).expect("sample indices in range")
}

/// `<a, b | [aa] = b>`, the smallest Leibniz algebra that is not Lie.
pub fn l2() -> StructureAlgebra {
    build("L2", &["a", "b"], &[(0, 0, &[(1, 1)])])
}

/// `<a | [aa] = a>`, not Leibniz.
pub fn idempotent_line() -> StructureAlgebra {
    build("idempotent", &["a"], &[(0, 0, &[(0, 1)])])
}

pub fn abelian(dim: usize) -> StructureAlgebra {
    let basis: Vec<String> = (1..=dim).map(|i| format!("e{i}")).collect();
    StructureAlgebra::zero(format!("abelian{dim}"), basis)
}

/// `[e, f] = f`.
pub fn nonabelian2() -> StructureAlgebra {
    build("r2", &["e", "f"], &[(0, 1, &[(1, 1)]), (1, 0, &[(1, -1)])])
}

/// `[x, y] = z`.
pub fn heisenberg() -> StructureAlgebra {
    build("heisenberg", &["x", "y", "z"], &[(0, 1, &[(2, 1)]), (1, 0, &[(2, -1)])])
}

/// `[h, e] = 2e`, `[h, f] = -2f`, `[e, f] = h`.
pub fn sl2() -> StructureAlgebra {
    build(
        "sl2",
        &["e", "f", "h"],
        &[
            (2, 0, &[(0, 2)]),
            (0, 2, &[(0, -2)]),
            (2, 1, &[(1, -2)]),
            (1, 2, &[(1, 2)]),
            (0, 1, &[(2, 1)]),
            (1, 0, &[(2, -1)]),
        ],
    )
}

/// `[x, y] = z` and cyclic.
pub fn so3() -> StructureAlgebra {
    build(
        "so3",
        &["x", "y", "z"],
        &[
            (0, 1, &[(2, 1)]),
            (1, 0, &[(2, -1)]),
            (1, 2, &[(0, 1)]),
            (2, 1, &[(0, -1)]),
            (2, 0, &[(1, 1)]),
            (0, 2, &[(1, -1)]),
        ],
    )
}

/// `[x, x] = y`, `[x, y] = z`: three-dimensional, generated by one element.
pub fn null_filiform3() -> StructureAlgebra {
    build("nf3", &["x", "y", "z"], &[(0, 0, &[(1, 1)]), (0, 1, &[(2, 1)])])
}

/// `L2` plus a central direction.
pub fn l2_plus_line() -> StructureAlgebra {
    build("L2+c", &["a", "b", "c"], &[(0, 0, &[(1, 1)])])
}

/// One-dimensional Lie algebra acting on a two-dimensional module by a
/// matrix: `[x, m] = A m`, `[m, x] = 0`.
pub fn hemisemidirect_identity() -> StructureAlgebra {
    build("hemi-id", &["x", "m1", "m2"], &[(0, 1, &[(1, 1)]), (0, 2, &[(2, 1)])])
}

pub fn hemisemidirect_nilpotent() -> StructureAlgebra {
    build("hemi-nil", &["x", "m1", "m2"], &[(0, 2, &[(1, 1)])])
}

/// `r2` acting on a line through `e`.
pub fn hemisemidirect_r2() -> StructureAlgebra {
    build(
        "hemi-r2",
        &["e", "f", "m"],
        &[(0, 1, &[(1, 1)]), (1, 0, &[(1, -1)]), (0, 2, &[(2, 1)])],
    )
}

/// `[x, x] = z`, `[y, y] = z`, `[x, y] = z`.
pub fn squares_to_center() -> StructureAlgebra {
    build(
        "squares",
        &["x", "y", "z"],
        &[(0, 0, &[(2, 1)]), (1, 1, &[(2, 1)]), (0, 1, &[(2, 1)])],
    )
}

/// The named Leibniz algebras shipped with the crate.
pub fn leibniz_corpus() -> Vec<StructureAlgebra> {
    vec![
        l2(),
        abelian(1),
        abelian(2),
        nonabelian2(),
        heisenberg(),
        sl2(),
        so3(),
        null_filiform3(),
        l2_plus_line(),
        hemisemidirect_identity(),
        hemisemidirect_nilpotent(),
        hemisemidirect_r2(),
        squares_to_center(),
    ]
}

pub fn by_name(name: &str) -> Option<StructureAlgebra> {
    leibniz_corpus()
        .into_iter()
        .chain([idempotent_line()])
        .find(|a| a.name().eq_ignore_ascii_case(name))
}

/// 2x2 upper triangular matrices, basis `E11, E12, E22`.
pub fn upper_triangular2() -> StructureAlgebra {
    build(
        "ut2",
        &["E11", "E12", "E22"],
        &[(0, 0, &[(0, 1)]), (0, 1, &[(1, 1)]), (1, 2, &[(1, 1)]), (2, 2, &[(2, 1)])],
    )
}

/// `Q[x] / (x^3)`, basis `1, x, x^2`.
pub fn truncated_polynomials3() -> StructureAlgebra {
    build(
        "Q[x]/x^3",
        &["1", "x", "x2"],
        &[
            (0, 0, &[(0, 1)]),
            (0, 1, &[(1, 1)]),
            (1, 0, &[(1, 1)]),
            (0, 2, &[(2, 1)]),
            (2, 0, &[(2, 1)]),
            (1, 1, &[(2, 1)]),
        ],
    )
}

/// `x ⊣ y = x p(y)`, `x ⊢ y = p(x) y` for an idempotent endomorphism `p` of
/// an associative algebra, given as a matrix acting on coordinates.
pub fn dialgebra_from_idempotent(a: &StructureAlgebra, p: &[Vec<Rat>]) -> StructureDialgebra {
    let n = a.dim();
    let apply = |v: &[Rat]| -> Vec<Rat> {
        (0..n).map(|r| (0..n).map(|c| &p[r][c] * &v[c]).sum()).collect()
    };
    let mut d = StructureDialgebra::zero(format!("{}-dialg", a.name()), a.basis_names().to_vec());
    for i in 0..n {
        for j in 0..n {
            let ei = a.unit_vector(i);
            let ej = a.unit_vector(j);
            let left = a.mul(&ei, &apply(&ej));
            let right = a.mul(&apply(&ei), &ej);
            for k in 0..n {
                d.set_constant(super::DiOp::Left, i, j, k, left[k].clone());
                d.set_constant(super::DiOp::Right, i, j, k, right[k].clone());
            }
        }
    }
    d
}

/// Associative dialgebras with `⊣ != ⊢`.
pub fn associative_dialgebra_samples() -> Vec<StructureDialgebra> {
    let diag = vec![
        vec![rat(1), rat(0), rat(0)],
        vec![rat(0), rat(0), rat(0)],
        vec![rat(0), rat(0), rat(1)],
    ];
    let augmentation = vec![
        vec![rat(1), rat(0), rat(0)],
        vec![rat(0), rat(0), rat(0)],
        vec![rat(0), rat(0), rat(0)],
    ];
    vec![
        StructureDialgebra::from_associative(&upper_triangular2()),
        StructureDialgebra::from_associative(&truncated_polynomials3()),
        dialgebra_from_idempotent(&upper_triangular2(), &diag),
        dialgebra_from_idempotent(&truncated_polynomials3(), &augmentation),
    ]
}
