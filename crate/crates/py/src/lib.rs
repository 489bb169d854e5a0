//! Python bindings. Words are `"0101…"` strings, permutations are lists of
//! 1-based images, and structured reports come back as JSON strings.

use adinkra_core::adinkra::{solve_dashing, Adinkra};
use adinkra_core::codeloop::{self, CodeLoop, LoopElement};
use adinkra_core::codes::CodeRecord;
use adinkra_core::dessin::{self, Dessin};
use adinkra_core::operad::{self, CompositionInput};
use adinkra_core::verify::{self, VerifyConfig};
use adinkra_core::{BinaryCode, BitWord, Permutation};
use pyo3::create_exception;
use pyo3::exceptions::PyException;
use pyo3::prelude::*;

create_exception!(adinkra_codes, AdinkraError, PyException);

fn err(e: adinkra_core::Error) -> PyErr {
    AdinkraError::new_err(format!("{}: {e}", e.kind()))
}

fn json_err(e: serde_json::Error) -> PyErr {
    AdinkraError::new_err(format!("Parse: {e}"))
}

fn word(s: &str) -> PyResult<BitWord> {
    s.parse().map_err(err)
}

fn perm(images: Vec<usize>) -> PyResult<Permutation> {
    Permutation::from_one_based(&images).map_err(err)
}

#[pyclass(name = "BinaryCode", module = "adinkra_codes", frozen)]
struct PyBinaryCode {
    inner: BinaryCode,
}

#[pymethods]
impl PyBinaryCode {
    #[new]
    #[pyo3(signature = (length, generators = Vec::new()))]
    fn new(length: usize, generators: Vec<String>) -> PyResult<Self> {
        let gens = generators.iter().map(|g| word(g)).collect::<PyResult<_>>()?;
        Ok(PyBinaryCode {
            inner: BinaryCode::new(length, gens).map_err(err)?,
        })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let record: CodeRecord = serde_json::from_str(text).map_err(json_err)?;
        Ok(PyBinaryCode {
            inner: BinaryCode::try_from(record).map_err(err)?,
        })
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string(&self.inner.to_record()).map_err(json_err)
    }

    #[getter]
    fn length(&self) -> usize {
        self.inner.length()
    }

    #[getter]
    fn dimension(&self) -> usize {
        self.inner.dimension()
    }

    #[getter]
    fn generators(&self) -> Vec<String> {
        self.inner.generators().iter().map(ToString::to_string).collect()
    }

    #[getter]
    fn size(&self) -> u128 {
        self.inner.size()
    }

    fn is_doubly_even(&self) -> bool {
        self.inner.is_doubly_even()
    }

    fn contains(&self, w: &str) -> PyResult<bool> {
        Ok(self.inner.contains(&word(w)?))
    }

    fn reduce(&self, w: &str) -> PyResult<String> {
        Ok(self.inner.reduce(&word(w)?).to_string())
    }

    #[pyo3(signature = (cap = 1 << 20))]
    fn codewords(&self, cap: u128) -> PyResult<Vec<String>> {
        let words = self.inner.codewords(cap).map_err(err)?;
        Ok(words.iter().map(ToString::to_string).collect())
    }

    #[pyo3(signature = (cap = 1 << 20))]
    fn weight_distribution(&self, cap: u128) -> PyResult<Vec<u128>> {
        self.inner.weight_distribution(cap).map_err(err)
    }

    fn permute(&self, images: Vec<usize>) -> PyResult<Self> {
        Ok(PyBinaryCode {
            inner: self.inner.permute(&perm(images)?).map_err(err)?,
        })
    }

    fn automorphisms(&self) -> PyResult<Vec<Vec<usize>>> {
        let auts = self.inner.automorphisms().map_err(err)?;
        Ok(auts.iter().map(Permutation::one_based).collect())
    }

    fn __eq__(&self, other: PyRef<'_, Self>) -> bool {
        self.inner == other.inner
    }

    fn __hash__(&self) -> u64 {
        use std::hash::{Hash, Hasher};
        let mut h = std::collections::hash_map::DefaultHasher::new();
        self.inner.hash(&mut h);
        h.finish()
    }

    fn __repr__(&self) -> String {
        format!("BinaryCode({}, {})", self.inner.length(), self.inner)
    }
}

fn codes_of(items: &[PyRef<'_, PyBinaryCode>]) -> Vec<BinaryCode> {
    items.iter().map(|c| c.inner.clone()).collect()
}

#[pyfunction]
#[pyo3(signature = (length, cap = usize::MAX))]
fn enumerate_doubly_even(length: usize, cap: usize) -> PyResult<Vec<PyBinaryCode>> {
    let codes = adinkra_core::enumerate_doubly_even(length, cap).map_err(err)?;
    Ok(codes.into_iter().map(|inner| PyBinaryCode { inner }).collect())
}

/// `γ(outer; inners)`.
#[pyfunction]
fn compose(
    outer: PyRef<'_, PyBinaryCode>,
    inners: Vec<PyRef<'_, PyBinaryCode>>,
) -> PyResult<PyBinaryCode> {
    let input = CompositionInput::new(outer.inner.clone(), codes_of(&inners)).map_err(err)?;
    Ok(PyBinaryCode {
        inner: operad::gamma(&input).map_err(err)?,
    })
}

/// `outer ∘_slot inner` with a 1-based slot.
#[pyfunction]
fn insert(
    outer: PyRef<'_, PyBinaryCode>,
    slot: usize,
    inner: PyRef<'_, PyBinaryCode>,
) -> PyResult<PyBinaryCode> {
    Ok(PyBinaryCode {
        inner: operad::insert(&outer.inner, slot, &inner.inner).map_err(err)?,
    })
}

#[pyclass(name = "Adinkra", module = "adinkra_codes", frozen)]
struct PyAdinkra {
    inner: Adinkra,
}

#[pymethods]
impl PyAdinkra {
    #[new]
    fn new(code: PyRef<'_, PyBinaryCode>) -> PyResult<Self> {
        Ok(PyAdinkra {
            inner: Adinkra::from_code(&code.inner).map_err(err)?,
        })
    }

    #[getter]
    fn n_colors(&self) -> usize {
        self.inner.n_colors()
    }

    #[getter]
    fn vertices(&self) -> Vec<String> {
        let ch = self.inner.chromotopology();
        ch.vertices().iter().map(ToString::to_string).collect()
    }

    /// `(v, w, color, dashed)` per edge.
    #[getter]
    fn edges(&self) -> Vec<(usize, usize, usize, bool)> {
        let ch = self.inner.chromotopology();
        ch.edges()
            .iter()
            .zip(&self.inner.dashing().dashed)
            .map(|(e, &d)| (e.v, e.w, e.color, d))
            .collect()
    }

    #[getter]
    fn ranking(&self) -> Vec<i64> {
        self.inner.ranking().h.clone()
    }

    fn verify_json(&self) -> PyResult<String> {
        serde_json::to_string(&self.inner.chromotopology().verify()).map_err(json_err)
    }

    fn is_odd_dashing(&self) -> bool {
        self.inner.dashing().is_odd_dashing(self.inner.chromotopology())
    }

    /// log₂ of the number of odd-dashings.
    fn dashing_nullity(&self) -> PyResult<usize> {
        Ok(solve_dashing(self.inner.chromotopology()).map_err(err)?.nullity)
    }

    fn translation_action(&self, u: &str) -> PyResult<Vec<usize>> {
        let p = self.inner.translation_action(&word(u)?).map_err(err)?;
        Ok(p.one_based())
    }

    /// The induced edge permutation, or `None` when the code is not preserved.
    fn color_permutation_action(&self, images: Vec<usize>) -> PyResult<Option<Vec<usize>>> {
        let action = self.inner.color_permutation_action(&perm(images)?).map_err(err)?;
        Ok(action.map(|a| a.edge_map.one_based()))
    }

    fn symmetry_group_order(&self) -> PyResult<u128> {
        self.inner.symmetry_group_order().map_err(err)
    }

    fn susy_relations_json(&self) -> PyResult<String> {
        serde_json::to_string(&self.inner.susy_relations()).map_err(json_err)
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string(&self.inner.to_record()).map_err(json_err)
    }

    fn export_dot(&self) -> String {
        self.inner.export_dot()
    }
}

#[pyclass(name = "CodeLoop", module = "adinkra_codes", frozen)]
struct PyCodeLoop {
    inner: CodeLoop,
}

fn element(sign: i8, w: &str) -> PyResult<LoopElement> {
    let negative = match sign {
        1 => false,
        -1 => true,
        _ => return Err(AdinkraError::new_err("sign must be 1 or -1")),
    };
    Ok(LoopElement {
        negative,
        word: word(w)?,
    })
}

#[pymethods]
impl PyCodeLoop {
    #[new]
    #[pyo3(signature = (code, element_cap = codeloop::DEFAULT_ELEMENT_CAP))]
    fn new(code: PyRef<'_, PyBinaryCode>, element_cap: usize) -> PyResult<Self> {
        Ok(PyCodeLoop {
            inner: CodeLoop::new(&code.inner, element_cap).map_err(err)?,
        })
    }

    #[getter]
    fn order(&self) -> usize {
        self.inner.order()
    }

    /// `(sign, word)` pairs in table order.
    fn elements(&self) -> Vec<(i8, String)> {
        self.inner
            .elements()
            .iter()
            .map(|x| (x.sign(), x.word.to_string()))
            .collect()
    }

    fn theta(&self, u: &str, v: &str) -> PyResult<bool> {
        self.inner.cocycle().value(&word(u)?, &word(v)?).map_err(err)
    }

    fn product(&self, x: (i8, String), y: (i8, String)) -> PyResult<(i8, String)> {
        let p = self
            .inner
            .product(&element(x.0, &x.1)?, &element(y.0, &y.1)?)
            .map_err(err)?;
        Ok((p.sign(), p.word.to_string()))
    }

    fn is_moufang(&self) -> PyResult<bool> {
        self.inner.is_moufang().map_err(err)
    }

    fn is_associative(&self) -> PyResult<bool> {
        self.inner.is_associative().map_err(err)
    }

    fn verify_extension_json(&self) -> PyResult<String> {
        serde_json::to_string(&self.inner.verify_extension().map_err(err)?).map_err(json_err)
    }

    fn cayley_csv(&self) -> PyResult<String> {
        self.inner.cayley_table().and_then(|t| t.to_csv()).map_err(err)
    }
}

#[pyclass(name = "Dessin", module = "adinkra_codes", frozen)]
struct PyDessin {
    inner: Dessin,
}

#[pymethods]
impl PyDessin {
    #[new]
    fn new(sigma0: Vec<usize>, sigma1: Vec<usize>) -> PyResult<Self> {
        Ok(PyDessin {
            inner: Dessin::new(perm(sigma0)?, perm(sigma1)?).map_err(err)?,
        })
    }

    #[staticmethod]
    fn from_code(code: PyRef<'_, PyBinaryCode>) -> PyResult<Self> {
        let adinkra = Adinkra::from_code(&code.inner).map_err(err)?;
        Ok(PyDessin {
            inner: Dessin::from_chromotopology(adinkra.chromotopology()).map_err(err)?,
        })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn sigma0(&self) -> Vec<usize> {
        self.inner.sigma0().one_based()
    }

    #[getter]
    fn sigma1(&self) -> Vec<usize> {
        self.inner.sigma1().one_based()
    }

    fn sigma_infinity(&self) -> Vec<usize> {
        self.inner.sigma_infinity().one_based()
    }

    fn verify_cycle_structure(&self, n_colors: usize, m: usize) -> bool {
        self.inner.verify_cycle_structure(n_colors, m)
    }

    fn is_transitive(&self) -> bool {
        self.inner.is_transitive()
    }

    fn genus(&self) -> PyResult<u64> {
        self.inner.genus().map_err(err)
    }

    #[pyo3(signature = (cap = dessin::DEFAULT_MONODROMY_CAP))]
    fn monodromy_order(&self, cap: usize) -> Option<usize> {
        self.inner.monodromy_order(cap)
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string(&self.inner.to_record()).map_err(json_err)
    }
}

/// Runs every invariant suite; returns `(all_passed, table)`.
#[pyfunction]
#[pyo3(signature = (length = 6))]
fn verify_all(py: Python<'_>, length: usize) -> PyResult<(bool, String)> {
    let cfg = VerifyConfig {
        length,
        ..VerifyConfig::default()
    };
    let results = py.detach(|| verify::verify_all(&cfg)).map_err(err)?;
    Ok((results.iter().all(|r| r.passed()), verify::render_table(&results)))
}

#[pymodule]
fn adinkra_codes(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("AdinkraError", m.py().get_type::<AdinkraError>())?;
    m.add_class::<PyBinaryCode>()?;
    m.add_class::<PyAdinkra>()?;
    m.add_class::<PyCodeLoop>()?;
    m.add_class::<PyDessin>()?;
    m.add_function(wrap_pyfunction!(enumerate_doubly_even, m)?)?;
    m.add_function(wrap_pyfunction!(compose, m)?)?;
    m.add_function(wrap_pyfunction!(insert, m)?)?;
    m.add_function(wrap_pyfunction!(verify_all, m)?)?;
    Ok(())
}
