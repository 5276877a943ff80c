use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::eval::{Evaluator, M0Key};
use super::pbw::monomial_count;
use super::rewrite::{Envelope, NormalWord, Rewriting};
use super::word::{all_words, DiPoly, DiWord, FreeDialgebra};
use crate::error::{Error, Result};
use crate::exact::{rat, Rat, RatMatrix};
use crate::finalg::{associativity, variety_identities, Violation};

/// A random combination where `p ∘_z 1` and `normal_form(p) ∘_z 1` differ.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleMismatch {
    pub input: String,
    pub normal_form: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleReport {
    pub samples: usize,
    pub mismatch: Option<OracleMismatch>,
}

impl OracleReport {
    pub fn passed(&self) -> bool {
        self.mismatch.is_none()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FaithfulnessReport {
    pub max_length: usize,
    pub normal_words: usize,
    pub rank: usize,
    pub oracle: OracleReport,
}

impl FaithfulnessReport {
    pub fn passed(&self) -> bool {
        self.rank == self.normal_words && self.oracle.passed()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PbwCount {
    pub max_length: usize,
    pub expected: usize,
    pub actual: usize,
    pub words_enumerated: usize,
}

impl PbwCount {
    pub fn passed(&self) -> bool {
        self.expected == self.actual
    }
}

fn check_lengths(n: usize, truncation: usize) -> Result<()> {
    if n > truncation {
        return Err(Error::DegreeOverflow { needed: n, bound: truncation });
    }
    Ok(())
}

/// Matrix whose rows are the given vectors in a shared coordinate system.
fn stack<K: Ord + Clone>(rows: &[BTreeMap<K, Rat>]) -> RatMatrix {
    let mut coords: BTreeMap<K, usize> = BTreeMap::new();
    for r in rows {
        for k in r.keys() {
            let next = coords.len();
            coords.entry(k.clone()).or_insert(next);
        }
    }
    let mut m = RatMatrix::zeros(rows.len(), coords.len());
    for (i, r) in rows.iter().enumerate() {
        for (k, c) in r {
            m[(i, coords[k])] = c.clone();
        }
    }
    m
}

/// Seeded random combination of 1 to 3 words of length `<= n` in the
/// standard letters of an algebra of dimension `dim`.
pub fn random_dipoly(rng: &mut impl Rng, dim: usize, n: usize) -> DiPoly {
    let mut p = DiPoly::zero();
    for _ in 0..rng.gen_range(1..=3) {
        let len = rng.gen_range(1..=n);
        let letters: Vec<usize> = (0..len).map(|_| rng.gen_range(0..dim)).collect();
        let center = rng.gen_range(0..len);
        let mut c = 0;
        while c == 0 {
            c = rng.gen_range(-3i64..=3);
        }
        p.add_term(rat(c), DiWord::new(letters, center).expect("center in range"));
    }
    p
}

/// Compares `p ∘_z 1` with `normal_form(p) ∘_z 1` on seeded random inputs.
pub fn oracle_equivalence(
    env: &Envelope,
    n: usize,
    truncation: usize,
    samples: usize,
    seed: u64,
    rewriting: Rewriting,
) -> Result<OracleReport> {
    check_lengths(n, truncation)?;
    let eval = Evaluator::new(env, truncation)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dim = env.algebra().dim();
    let names = env.algebra().basis_names();
    for _ in 0..samples {
        let p = random_dipoly(&mut rng, dim, n);
        let nf = env.reduce(&env.to_basis_letters(&p)?, rewriting);
        if eval.eval_standard(&p)? != eval.eval_normal(&nf)? {
            return Ok(OracleReport {
                samples,
                mismatch: Some(OracleMismatch {
                    input: p.render(names),
                    normal_form: nf.render(env.basis().names()),
                }),
            });
        }
    }
    Ok(OracleReport { samples, mismatch: None })
}

/// Rank of the `z`-coefficients of `w ∘_z 1` over all normal words of
/// length `<= n`, together with the oracle check.
pub fn verify_faithfulness(
    env: &Envelope,
    n: usize,
    truncation: usize,
    samples: usize,
    seed: u64,
) -> Result<FaithfulnessReport> {
    check_lengths(n, truncation)?;
    let eval = Evaluator::new(env, truncation)?;
    let words = env.normal_words(n);
    let rows: Vec<BTreeMap<M0Key, Rat>> = words
        .iter()
        .map(|w| eval.eval_basis(&DiPoly::word(w.to_word())).map(|v| v.linear))
        .collect::<Result<_>>()?;
    let rank = stack(&rows).rank();
    let oracle = oracle_equivalence(env, n, truncation, samples, seed, Rewriting::Full)?;
    Ok(FaithfulnessReport { max_length: n, normal_words: words.len(), rank, oracle })
}

/// Expected: `dim L` times the number of PBW monomials of `U(L^alg)` of
/// degree `<= n - 1`. Actual: rank of the normal forms of every word of
/// length `<= n`, enumerated exhaustively.
pub fn pbw_count(env: &Envelope, n: usize) -> Result<PbwCount> {
    let l = env.algebra();
    let expected = if n == 0 { 0 } else { l.dim() * monomial_count(env.basis().a_len(), n - 1) };
    let words = all_words(l.dim(), n);
    let rows: Vec<BTreeMap<NormalWord, Rat>> = words
        .iter()
        .map(|w| {
            env.normal_form(&DiPoly::word(w.clone()))
                .map(|u| u.terms().map(|(k, c)| (k.clone(), c.clone())).collect())
        })
        .collect::<Result<_>>()?;
    let actual = stack(&rows).rank();
    Ok(PbwCount { max_length: n, expected, actual, words_enumerated: words.len() })
}

/// First identity of the associative dialgebra family violated by the word
/// model, over all triples of words of length `<= max_len`.
pub fn free_dialgebra_violation(alphabet: usize, max_len: usize) -> Option<Violation> {
    let words: Vec<DiPoly> = all_words(alphabet, max_len).into_iter().map(DiPoly::word).collect();
    for t in variety_identities(&[associativity()]) {
        if let Some(witness) = t.find_violation(&FreeDialgebra, &words) {
            return Some(Violation { identity: t.to_string(), witness });
        }
    }
    None
}
