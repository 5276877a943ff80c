//! JSON documents: algebra definitions, identity sets, conformal map tables
//! and check reports.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::conformal::ConfMap;
use crate::error::{Error, Result};
use crate::exact::{serde_rat, MPoly, Rat, RatMatrix, TermRecord};
use crate::finalg::{DiOp, IdentityTerm, StructureAlgebra, StructureDialgebra};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AlgebraKind {
    Algebra,
    Dialgebra,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coefficient {
    pub basis: String,
    #[serde(with = "serde_rat")]
    pub coeff: Rat,
}

/// `left * right = Σ coeff basis`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductEntry {
    pub left: String,
    pub right: String,
    pub value: Vec<Coefficient>,
}

/// An algebra (`products`) or dialgebra (`left_products` for `⊣`,
/// `right_products` for `⊢`) over named basis vectors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub name: String,
    pub kind: AlgebraKind,
    pub basis: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub products: Vec<ProductEntry>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub left_products: Vec<ProductEntry>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub right_products: Vec<ProductEntry>,
}

pub enum Loaded {
    Algebra(StructureAlgebra),
    Dialgebra(StructureDialgebra),
}

type Sparse = Vec<(usize, usize, Vec<(usize, Rat)>)>;

impl AlgebraFile {
    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("algebra files serialize")
    }

    fn index(&self) -> Result<BTreeMap<&str, usize>> {
        let mut index = BTreeMap::new();
        for (i, b) in self.basis.iter().enumerate() {
            if index.insert(b.as_str(), i).is_some() {
                return Err(Error::Parse(format!("basis name {b:?} declared twice")));
            }
        }
        Ok(index)
    }

    fn sparse(&self, entries: &[ProductEntry]) -> Result<Sparse> {
        let index = self.index()?;
        let look = |name: &str| {
            index
                .get(name)
                .copied()
                .ok_or_else(|| Error::Parse(format!("undeclared basis name {name:?}")))
        };
        entries
            .iter()
            .map(|e| {
                let value = e
                    .value
                    .iter()
                    .map(|c| Ok((look(&c.basis)?, c.coeff.clone())))
                    .collect::<Result<Vec<_>>>()?;
                Ok((look(&e.left)?, look(&e.right)?, value))
            })
            .collect()
    }

    pub fn load(&self) -> Result<Loaded> {
        match self.kind {
            AlgebraKind::Algebra => {
                if !self.left_products.is_empty() || !self.right_products.is_empty() {
                    return Err(Error::Parse("an algebra takes `products` only".into()));
                }
                let p = self.sparse(&self.products)?;
                Ok(Loaded::Algebra(StructureAlgebra::from_products(&self.name, self.basis.clone(), &p)?))
            }
            AlgebraKind::Dialgebra => {
                if !self.products.is_empty() {
                    return Err(Error::Parse("a dialgebra takes `left_products` and `right_products`".into()));
                }
                let l = self.sparse(&self.left_products)?;
                let r = self.sparse(&self.right_products)?;
                Ok(Loaded::Dialgebra(StructureDialgebra::from_products(
                    &self.name,
                    self.basis.clone(),
                    &l,
                    &r,
                )?))
            }
        }
    }

    pub fn algebra(&self) -> Result<StructureAlgebra> {
        match self.load()? {
            Loaded::Algebra(a) => Ok(a),
            Loaded::Dialgebra(_) => Err(Error::Parse(format!("{} is a dialgebra, expected an algebra", self.name))),
        }
    }

    pub fn from_algebra(a: &StructureAlgebra) -> Self {
        let n = a.dim();
        AlgebraFile {
            name: a.name().to_string(),
            kind: AlgebraKind::Algebra,
            basis: a.basis_names().to_vec(),
            products: entries(a.basis_names(), |i, j| a.product_of_basis(i, j), n),
            left_products: Vec::new(),
            right_products: Vec::new(),
        }
    }

    pub fn from_dialgebra(d: &StructureDialgebra) -> Self {
        let n = d.dim();
        AlgebraFile {
            name: d.name().to_string(),
            kind: AlgebraKind::Dialgebra,
            basis: d.basis_names().to_vec(),
            products: Vec::new(),
            left_products: entries(d.basis_names(), |i, j| d.product_of_basis(DiOp::Left, i, j), n),
            right_products: entries(d.basis_names(), |i, j| d.product_of_basis(DiOp::Right, i, j), n),
        }
    }
}

fn entries<'a>(names: &[String], f: impl Fn(usize, usize) -> &'a [Rat], n: usize) -> Vec<ProductEntry> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let value: Vec<Coefficient> = f(i, j)
                .iter()
                .enumerate()
                .filter(|(_, c)| !num_traits::Zero::is_zero(*c))
                .map(|(k, c)| Coefficient { basis: names[k].clone(), coeff: c.clone() })
                .collect();
            if !value.is_empty() {
                out.push(ProductEntry { left: names[i].clone(), right: names[j].clone(), value });
            }
        }
    }
    out
}

/// A custom set of polylinear identities, e.g.
/// `{"identities": ["(x1*x2)*x3 - x1*(x2*x3)"]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SigmaFile {
    pub identities: Vec<String>,
}

impl SigmaFile {
    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn terms(&self) -> Result<Vec<IdentityTerm>> {
        self.identities.iter().map(|s| IdentityTerm::parse(s)).collect()
    }
}

/// One nonzero table entry: `a ∘_z from` has coefficient `poly` at `to`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfMapEntry {
    pub from: String,
    pub to: String,
    pub display: String,
    pub poly: Vec<TermRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfMapDoc {
    pub base_names: Vec<String>,
    pub entries: Vec<ConfMapEntry>,
}

impl ConfMapDoc {
    pub fn new(a: &ConfMap, base_names: &[String]) -> Self {
        let mut entries = Vec::new();
        for u in 0..a.dim() {
            for v in 0..a.dim() {
                let p = a.entry(u, v);
                if !p.is_zero() {
                    entries.push(ConfMapEntry {
                        from: base_names[u].clone(),
                        to: base_names[v].clone(),
                        display: p.to_string(),
                        poly: p.to_records(),
                    });
                }
            }
        }
        ConfMapDoc { base_names: base_names.to_vec(), entries }
    }

    pub fn to_conf_map(&self) -> Result<ConfMap> {
        let n = self.base_names.len();
        let index: BTreeMap<&str, usize> =
            self.base_names.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
        let mut table = vec![vec![MPoly::zero(); n]; n];
        for e in &self.entries {
            let look = |s: &str| index.get(s).copied().ok_or_else(|| Error::Parse(format!("unknown basis {s:?}")));
            table[look(&e.from)?][look(&e.to)?] = MPoly::from_records(&e.poly)?;
        }
        ConfMap::from_table(table)
    }
}

/// Dense matrix as rows of `"p/q"` strings.
pub fn matrix_rows(m: &RatMatrix) -> Vec<Vec<String>> {
    (0..m.rows()).map(|r| m.row(r).iter().map(crate::exact::rat_to_string).collect()).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

impl From<bool> for Verdict {
    fn from(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<serde_json::Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub details: Option<serde_json::Value>,
}

/// Outcome of one command: every executed check appears exactly once.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub input: String,
    pub input_digest: String,
    pub checks: Vec<CheckResult>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub data: Option<serde_json::Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<BTreeMap<String, f64>>,
}

impl Report {
    pub fn new(command: &str, input: &str, input_digest: &str) -> Self {
        Report {
            command: command.into(),
            input: input.into(),
            input_digest: input_digest.into(),
            checks: Vec::new(),
            data: None,
            timings_ms: None,
        }
    }

    /// Appends a check; a name that is already present is a caller bug.
    pub fn push(&mut self, check: CheckResult) {
        assert!(
            self.checks.iter().all(|c| c.name != check.name),
            "check {} reported twice",
            check.name
        );
        self.checks.push(check);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.verdict == Verdict::Pass)
    }

    pub fn first_failure(&self) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.verdict == Verdict::Fail)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{} {} ({})\n", self.command, self.input, &self.input_digest);
        for c in &self.checks {
            let verdict = match c.verdict {
                Verdict::Pass => "PASS",
                Verdict::Fail => "FAIL",
            };
            out.push_str(&format!("  {verdict}  {}", c.name));
            if let Some(d) = &c.details {
                out.push_str(&format!("  {d}"));
            }
            if let Some(w) = &c.witness {
                out.push_str(&format!("  witness: {w}"));
            }
            out.push('\n');
        }
        if let Some(t) = &self.timings_ms {
            for (k, v) in t {
                out.push_str(&format!("  time {k}: {v:.1} ms\n"));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::finalg::samples::{l2, leibniz_corpus, upper_triangular2};

    const L2: &str = r#"{
        "name": "L2", "kind": "algebra", "basis": ["a", "b"],
        "products": [{"left": "a", "right": "a", "value": [{"basis": "b", "coeff": "1"}]}]
    }"#;

    #[test]
    fn parse_l2() {
        let a = AlgebraFile::from_json(L2).unwrap().algebra().unwrap();
        assert_eq!(a, l2());
    }

    #[test]
    fn round_trips() {
        for a in leibniz_corpus() {
            let back = AlgebraFile::from_json(&AlgebraFile::from_algebra(&a).to_json()).unwrap();
            assert_eq!(back.algebra().unwrap(), a);
        }
        let d = StructureDialgebra::from_associative(&upper_triangular2());
        match AlgebraFile::from_json(&AlgebraFile::from_dialgebra(&d).to_json()).unwrap().load().unwrap() {
            Loaded::Dialgebra(back) => assert_eq!(back, d),
            Loaded::Algebra(_) => panic!("kind lost"),
        }
    }

    #[test]
    fn rejects_bad_files() {
        let undeclared = L2.replace(r#""basis": "b""#, r#""basis": "c""#);
        assert!(AlgebraFile::from_json(&undeclared).unwrap().algebra().is_err());
        let bad_coeff = L2.replace(r#""coeff": "1""#, r#""coeff": "1/0""#);
        assert!(AlgebraFile::from_json(&bad_coeff).is_err());
        assert!(AlgebraFile::from_json("{").is_err());
        let twice = L2.replace(r#"["a", "b"]"#, r#"["a", "a"]"#);
        assert!(AlgebraFile::from_json(&twice).unwrap().algebra().is_err());
    }

    #[test]
    fn sigma_and_conf_map_docs() {
        let s = SigmaFile::from_json(r#"{"identities": ["x1*x2 - x2*x1"]}"#).unwrap();
        assert_eq!(s.terms().unwrap().len(), 1);
        let p = &MPoly::var(crate::exact::Var::Z) + &MPoly::constant(rat(2));
        let a = ConfMap::from_table(vec![vec![p, MPoly::zero()], vec![MPoly::zero(), MPoly::one()]]).unwrap();
        let names = vec!["u".to_string(), "v".to_string()];
        let doc = ConfMapDoc::new(&a, &names);
        assert_eq!(doc.entries.len(), 2);
        let json = serde_json::to_string(&doc).unwrap();
        let back: ConfMapDoc = serde_json::from_str(&json).unwrap();
        assert_eq!(back.to_conf_map().unwrap(), a);
    }
}
