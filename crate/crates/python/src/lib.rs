//! Python bindings: load algebras, run the checks, compute normal forms.

use pyo3::exceptions::{PyKeyError, PyValueError};
use pyo3::prelude::*;

use leibconf::envelope::{pbw_count, verify_faithfulness, DiPoly, DiWord, Envelope};
use leibconf::error::Error;
use leibconf::finalg::{check_algebra, is_lie, left_leibniz, leibniz_quotient, samples, StructureAlgebra};
use leibconf::io::{matrix_rows, AlgebraFile, ConfMapDoc};
use leibconf::leibrep::{build_rho, check_faithful, decompose, representation_violation, LieModule};

fn err(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// A finite-dimensional algebra given by structure constants.
#[pyclass(frozen, module = "pyleibconf")]
struct Algebra {
    inner: StructureAlgebra,
}

impl Algebra {
    fn index(&self, name: &str) -> PyResult<usize> {
        self.inner
            .basis_names()
            .iter()
            .position(|b| b == name)
            .ok_or_else(|| PyKeyError::new_err(name.to_string()))
    }

    fn envelope(&self) -> PyResult<Envelope> {
        Envelope::new(&self.inner).map_err(err)
    }
}

#[pymethods]
impl Algebra {
    /// Parse an algebra definition document.
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let inner = AlgebraFile::from_json(text).and_then(|f| f.algebra()).map_err(err)?;
        Ok(Algebra { inner })
    }

    /// One of the built-in samples, e.g. "L2", "r2", "sl2".
    #[staticmethod]
    fn sample(name: &str) -> PyResult<Self> {
        samples::by_name(name)
            .map(|inner| Algebra { inner })
            .ok_or_else(|| PyKeyError::new_err(name.to_string()))
    }

    fn to_json(&self) -> String {
        AlgebraFile::from_algebra(&self.inner).to_json()
    }

    #[getter]
    fn name(&self) -> &str {
        self.inner.name()
    }

    #[getter]
    fn basis(&self) -> Vec<String> {
        self.inner.basis_names().to_vec()
    }

    fn __len__(&self) -> usize {
        self.inner.dim()
    }

    fn __repr__(&self) -> String {
        format!("Algebra({:?}, dim={})", self.inner.name(), self.inner.dim())
    }

    /// Product of two basis vectors as (name, "p/q") pairs, zeros omitted.
    fn product(&self, left: &str, right: &str) -> PyResult<Vec<(String, String)>> {
        let (i, j) = (self.index(left)?, self.index(right)?);
        Ok(self
            .inner
            .product_of_basis(i, j)
            .iter()
            .zip(self.inner.basis_names())
            .filter(|(c, _)| **c != leibconf::exact::rat(0))
            .map(|(c, b)| (b.clone(), leibconf::exact::rat_to_string(c)))
            .collect())
    }

    fn is_leibniz(&self) -> bool {
        self.leibniz_witness().is_none()
    }

    /// Basis triple on which the left Leibniz identity fails, if any.
    fn leibniz_witness(&self) -> Option<Vec<String>> {
        check_algebra(&self.inner, &[left_leibniz()])
            .map(|v| v.witness.iter().map(|&i| self.inner.basis_names()[i].clone()).collect())
    }

    fn is_lie(&self) -> bool {
        is_lie(&self.inner)
    }

    /// Dimension of the Lie algebra L / span{[ab] + [ba]}.
    fn lie_quotient_dim(&self) -> PyResult<usize> {
        Ok(leibniz_quotient(&self.inner).map_err(err)?.lie.dim())
    }

    /// The conformal representation on M0 = V ⊕ (L ⊗ V) as a JSON document,
    /// with verdicts `is_representation` and `is_faithful`.
    #[pyo3(signature = (module = "trivial", dim_v = 1))]
    fn representation(&self, module: &str, dim_v: usize) -> PyResult<String> {
        let lie = leibniz_quotient(&self.inner).map_err(err)?.lie;
        let v = match module {
            "trivial" => LieModule::trivial(lie, dim_v),
            "adjoint" => LieModule::adjoint(lie),
            other => return Err(PyValueError::new_err(format!("unknown module {other:?}"))),
        }
        .map_err(err)?;
        let rho = build_rho(&self.inner, &v).map_err(err)?;
        let labels = rho.space.labels().to_vec();
        let mut images = Vec::new();
        for (a, name) in self.inner.basis_names().iter().enumerate() {
            let (a0, a1) = decompose(rho.image(a)).map_err(err)?;
            images.push(serde_json::json!({
                "element": name,
                "table": ConfMapDoc::new(rho.image(a), &labels),
                "a0": matrix_rows(&a0),
                "a1": matrix_rows(&a1),
            }));
        }
        let doc = serde_json::json!({
            "labels": labels,
            "images": images,
            "is_representation": representation_violation(&rho, &self.inner).is_none(),
            "is_faithful": check_faithful(&rho, &self.inner),
        });
        Ok(doc.to_string())
    }

    /// Normal form of a diword in the enveloping dialgebra, rendered over
    /// the ordered basis. `center` is 0-based.
    fn normal_form(&self, letters: Vec<String>, center: usize) -> PyResult<String> {
        let env = self.envelope()?;
        let idx = letters.iter().map(|l| self.index(l)).collect::<PyResult<Vec<_>>>()?;
        let word = DiWord::new(idx, center).map_err(err)?;
        let nf = env.normal_form(&DiPoly::word(word)).map_err(err)?;
        Ok(nf.render(env.basis().names()))
    }

    /// (expected, actual) dimension of the span of words of length <= n.
    fn pbw_count(&self, max_length: usize) -> PyResult<(usize, usize)> {
        let c = pbw_count(&self.envelope()?, max_length).map_err(err)?;
        Ok((c.expected, c.actual))
    }

    /// (normal words, rank, oracle passed) for words of length <= n.
    #[pyo3(signature = (max_length, truncation = None, samples = 100, seed = 1))]
    fn faithfulness(
        &self,
        max_length: usize,
        truncation: Option<usize>,
        samples: usize,
        seed: u64,
    ) -> PyResult<(usize, usize, bool)> {
        let env = self.envelope()?;
        let r = verify_faithfulness(&env, max_length, truncation.unwrap_or(max_length), samples, seed)
            .map_err(err)?;
        Ok((r.normal_words, r.rank, r.oracle.passed()))
    }
}

/// Names of the built-in Leibniz samples.
#[pyfunction]
fn sample_names() -> Vec<String> {
    samples::leibniz_corpus().iter().map(|a| a.name().to_string()).collect()
}

#[pymodule]
fn pyleibconf(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Algebra>()?;
    m.add_function(wrap_pyfunction!(sample_names, m)?)?;
    Ok(())
}
