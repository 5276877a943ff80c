use std::collections::BTreeMap;

use num_traits::Zero;

use super::*;
use crate::conformal::{circle, brace, module_basis, ConfMap, ModuleElem, ACTION};
use crate::error::Error;
use crate::exact::{rat, MPoly, Rat};
use crate::finalg::samples::{abelian, l2, leibniz_corpus, nonabelian2};
use crate::finalg::DiOp;

fn w(letters: &[usize], center: usize) -> DiPoly {
    DiPoly::word(DiWord::new(letters.to_vec(), center).unwrap())
}

fn nw(head: usize, tail: &[usize]) -> NormalWord {
    NormalWord { head, tail: tail.to_vec() }
}

fn u(terms: &[(NormalWord, i64)]) -> UEnvElement {
    UEnvElement::from_terms(terms.iter().map(|(w, c)| (w.clone(), rat(*c))))
}

#[test]
fn l2_basis_and_rewriting() {
    let env = Envelope::new(&l2()).unwrap();
    assert_eq!(env.basis().a_len(), 1);
    assert_eq!(env.basis().names(), &["a", "b"]);
    // a ⊢ a = a ⊣ a + b
    assert_eq!(env.normal_form(&w(&[0, 0], 1)).unwrap(), u(&[(nw(0, &[0]), 1), (nw(1, &[]), 1)]));
    // a ⊣ b = 0
    assert!(env.normal_form(&w(&[0, 1], 0)).unwrap().is_zero());
    assert_eq!(env.normal_form(&w(&[2], 0)), Err(Error::UnknownLetter(2)));
}

#[test]
fn r2_tail_straightening() {
    // [ef] = f, e < f: e ⊣ f ⊣ e = e ⊣ e ⊣ f + e ⊣ [fe] = e ⊣ e ⊣ f - e ⊣ f
    let env = Envelope::new(&nonabelian2()).unwrap();
    let got = env.normal_form(&w(&[0, 1, 0], 0)).unwrap();
    assert_eq!(got, u(&[(nw(0, &[0, 1]), 1), (nw(0, &[1]), -1)]));
}

#[test]
fn products_in_envelope() {
    let env = Envelope::new(&l2()).unwrap();
    let a = u(&[(nw(0, &[]), 1)]);
    let b = u(&[(nw(1, &[]), 1)]);
    assert_eq!(env.u_product(&a, &a, DiOp::Left), u(&[(nw(0, &[0]), 1)]));
    assert_eq!(env.u_product(&a, &a, DiOp::Right), u(&[(nw(0, &[0]), 1), (nw(1, &[]), 1)]));
    assert!(env.u_product(&b, &b, DiOp::Left).is_zero());
}

#[test]
fn products_are_associative_on_normal_forms() {
    let env = Envelope::new(&nonabelian2()).unwrap();
    let words = env.normal_words(2);
    for x in &words {
        for y in &words {
            for z in &words {
                let (x, y, z) = (u(&[(x.clone(), 1)]), u(&[(y.clone(), 1)]), u(&[(z.clone(), 1)]));
                for op in [DiOp::Left, DiOp::Right] {
                    let lhs = env.u_product(&env.u_product(&x, &y, op), &z, op);
                    let rhs = env.u_product(&x, &env.u_product(&y, &z, op), op);
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }
}

#[test]
fn normal_form_is_idempotent() {
    for l in leibniz_corpus() {
        let env = Envelope::new(&l).unwrap();
        for word in all_words(l.dim(), 3).into_iter().take(200) {
            let nf = env.normal_form(&DiPoly::word(word)).unwrap();
            assert_eq!(env.reduce(&nf.lift(), Rewriting::Full), nf, "{}", l.name());
        }
    }
}

// Normal words counted directly: heads times nondecreasing tails.
fn count_by_enumeration(dim: usize, generators: usize, n: usize) -> usize {
    let mut tails = 0;
    for len in 0..n {
        let mut count = 0;
        let mut stack = vec![(0usize, 0usize)];
        while let Some((depth, start)) = stack.pop() {
            if depth == len {
                count += 1;
                continue;
            }
            for i in start..generators {
                stack.push((depth + 1, i));
            }
        }
        tails += count;
    }
    dim * tails
}

#[test]
fn pbw_counts() {
    let env = Envelope::new(&l2()).unwrap();
    let c = pbw_count(&env, 3).unwrap();
    assert_eq!((c.expected, c.actual), (6, 6));
    assert_eq!(count_by_enumeration(2, 1, 3), 6);

    let env = Envelope::new(&abelian(1)).unwrap();
    assert_eq!(pbw_count(&env, 4).unwrap().expected, 4);
    assert!(pbw_count(&env, 4).unwrap().passed());

    let env = Envelope::new(&nonabelian2()).unwrap();
    let c = pbw_count(&env, 2).unwrap();
    assert_eq!((c.expected, c.actual), (6, 6));
    assert_eq!(count_by_enumeration(2, 2, 4), 20);
    assert_eq!(env.normal_words(4).len(), 20);
}

#[test]
fn eval_examples() {
    let env = Envelope::new(&l2()).unwrap();
    let eval = Evaluator::new(&env, 3).unwrap();
    // a ⊣ a: ā² + z (a ⊗ ā)
    let v = eval.eval_standard(&w(&[0, 0], 0)).unwrap();
    let expected_c: M0Vector = [(M0Key::V(vec![0, 0]), rat(1))].into_iter().collect();
    let expected_l: M0Vector = [(M0Key::Tensor(0, vec![0]), rat(1))].into_iter().collect();
    assert_eq!(v, ZValue { constant: expected_c, linear: expected_l });
    // b: 0 + z (b ⊗ 1)
    let v = eval.eval_standard(&w(&[1], 0)).unwrap();
    assert!(v.constant.is_empty());
    assert_eq!(v.linear, [(M0Key::Tensor(1, vec![]), rat(1))].into_iter().collect());
    // too long for the truncation
    assert!(matches!(
        eval.eval_standard(&w(&[0, 0, 0, 0], 0)),
        Err(Error::DegreeOverflow { .. })
    ));
}

#[test]
fn normal_words_follow_closed_formula() {
    for l in leibniz_corpus() {
        let env = Envelope::new(&l).unwrap();
        let eval = Evaluator::new(&env, 3).unwrap();
        let pbw = eval.pbw();
        for word in env.normal_words(3) {
            let value = eval.eval_basis(&DiPoly::word(word.to_word())).unwrap();
            let c = env.basis().vector(word.head);
            let cbar: PbwElement = env
                .quotient()
                .project(c)
                .into_iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(k, x)| (vec![k], x))
                .collect();
            let tail: PbwElement = [(word.tail.clone(), rat(1))].into_iter().collect();
            let expected_c: M0Vector =
                pbw.mul(&cbar, &tail).unwrap().into_iter().map(|(m, x)| (M0Key::V(m), x)).collect();
            let expected_l: M0Vector = c
                .iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(i, x)| (M0Key::Tensor(i, word.tail.clone()), x.clone()))
                .collect();
            assert_eq!(value, ZValue { constant: expected_c, linear: expected_l }, "{}", l.name());
        }
    }
}

#[test]
fn faithfulness_small() {
    let env = Envelope::new(&l2()).unwrap();
    let r = verify_faithfulness(&env, 3, 3, 50, 1).unwrap();
    assert_eq!((r.normal_words, r.rank), (6, 6));
    assert!(r.passed());
    assert!(verify_faithfulness(&env, 4, 3, 10, 1).is_err());
}

#[test]
fn dropping_corrections_is_caught() {
    for l in [l2(), nonabelian2()] {
        let env = Envelope::new(&l).unwrap();
        let r = oracle_equivalence(&env, 3, 3, 100, 5, Rewriting::WithoutCorrections).unwrap();
        assert!(!r.passed(), "{}", l.name());
        assert!(oracle_equivalence(&env, 3, 3, 100, 5, Rewriting::Full).unwrap().passed());
    }
}

#[test]
fn defining_relation_in_image() {
    for l in leibniz_corpus() {
        let env = Envelope::new(&l).unwrap();
        let eval = Evaluator::new(&env, 2).unwrap();
        let n = l.dim();
        for a in 0..n {
            for b in 0..n {
                let rel = w(&[a, b], 1).add(&w(&[b, a], 0).scale(&rat(-1)));
                let mut bracket = DiPoly::zero();
                for (k, c) in l.product_of_basis(a, b).iter().enumerate() {
                    bracket.add_term(c.clone(), DiWord::letter(k));
                }
                assert_eq!(eval.eval_standard(&rel).unwrap(), eval.eval_standard(&bracket).unwrap());
            }
        }
    }
}

#[test]
fn word_model_is_free_dialgebra() {
    assert_eq!(free_dialgebra_violation(2, 2), None);
}

// Conformal maps of the representation on the truncated M0, rows at the top
// degree left at zero (never reached from 1 by short words).
fn truncated_rho(env: &Envelope, d: usize) -> (BTreeMap<M0Key, usize>, Vec<ConfMap>) {
    let l = env.algebra();
    let pbw = PbwAlgebra::new(env.quotient().lie.clone(), d).unwrap();
    let mut index = BTreeMap::new();
    for m in pbw.monomials(d) {
        let next = index.len();
        index.insert(M0Key::V(m), next);
    }
    for i in 0..l.dim() {
        for m in pbw.monomials(d) {
            let next = index.len();
            index.insert(M0Key::Tensor(i, m), next);
        }
    }
    let dim = index.len();
    let z = MPoly::var(ACTION);
    let maps = (0..l.dim())
        .map(|x| {
            let xbar = env.quotient().project(&l.unit_vector(x));
            let mut table = vec![vec![MPoly::zero(); dim]; dim];
            for (key, &row) in &index {
                let (m, tensor) = match key {
                    M0Key::V(m) => (m, None),
                    M0Key::Tensor(c, m) => (m, Some(*c)),
                };
                if m.len() == d {
                    continue;
                }
                let single: PbwElement = [(m.clone(), rat(1))].into_iter().collect();
                for (mm, c) in pbw.act(&xbar, &single).unwrap() {
                    let key = match tensor {
                        None => M0Key::V(mm),
                        Some(t) => M0Key::Tensor(t, mm),
                    };
                    table[row][index[&key]] += &MPoly::constant(c);
                }
                match tensor {
                    None => table[row][index[&M0Key::Tensor(x, m.clone())]] += &z,
                    Some(t) => {
                        for (k, c) in l.product_of_basis(x, t).iter().enumerate() {
                            table[row][index[&M0Key::Tensor(k, m.clone())]] += &MPoly::constant(c.clone());
                        }
                    }
                }
            }
            ConfMap::from_table(table).unwrap()
        })
        .collect();
    (index, maps)
}

fn word_map(maps: &[ConfMap], word: &DiWord) -> ConfMap {
    let e = MPoly::zero();
    let letters = word.letters();
    let c = word.center();
    let mut acc = maps[letters[c]].clone();
    for &x in &letters[c + 1..] {
        acc = brace(&acc, &maps[x], &e);
    }
    for &x in letters[..c].iter().rev() {
        acc = circle(&maps[x], &acc, &e);
    }
    acc
}

fn as_module(index: &BTreeMap<M0Key, usize>, v: &ZValue) -> ModuleElem {
    let mut out = vec![MPoly::zero(); index.len()];
    let z = MPoly::var(ACTION);
    for (k, c) in &v.constant {
        out[index[k]] += &MPoly::constant(c.clone());
    }
    for (k, c) in &v.linear {
        out[index[k]] += &z.scale(c);
    }
    out
}

#[test]
fn shortcut_agrees_with_conformal_composition() {
    for l in [l2(), nonabelian2()] {
        let env = Envelope::new(&l).unwrap();
        let (index, maps) = truncated_rho(&env, 3);
        let eval = Evaluator::new(&env, 3).unwrap();
        let one = module_basis(index.len(), index[&M0Key::V(Vec::new())]);
        for word in all_words(l.dim(), 3) {
            let by_maps = word_map(&maps, &word).apply(&MPoly::var(ACTION), &one);
            let by_eval = as_module(&index, &eval.eval_standard(&DiPoly::word(word.clone())).unwrap());
            assert_eq!(by_maps, by_eval, "{} {}", l.name(), word);
        }
    }
}

#[test]
fn basis_coordinates_round_trip() {
    for l in leibniz_corpus() {
        let env = Envelope::new(&l).unwrap();
        let b = env.basis();
        for i in 0..b.len() {
            let coords = b.coords(b.vector(i));
            for (j, c) in coords.iter().enumerate() {
                assert_eq!(c, &if i == j { rat(1) } else { Rat::zero() });
            }
        }
    }
}
