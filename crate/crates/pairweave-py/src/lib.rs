//! Python bindings. Rationals cross the boundary as "p/q" strings and
//! polynomials as coefficient-string lists (constant term first), so every
//! exact value stays exact on the Python side.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use pairweave::fock::{fock_gram_psd, vacuum_moment, Regime};
use pairweave::freeprob::{
    cumulants_to_moments, free_convolve, moments_to_cumulants, mu_q_moments, verify_theorem6,
    CumulantSeq, MomentSeq,
};
use pairweave::measures::{
    density_eval, make_mu_q, mu_ab_moments, quad_moments, AtomMode,
};
use pairweave::pairings;
use pairweave::scalar::{format_rational, parse_rational, QPoly, Rational};
use pairweave::states::{
    hankel_psd, symgroup_gram_psd, word_moment, CovarianceQ, Kernel, Letter, Word,
};
use pairweave::weights::{eval_weight, verify_corollary7, Weight};
use pairweave::PairweaveError;

fn err(e: PairweaveError) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse_rat(s: &str) -> PyResult<Rational> {
    parse_rational(s).map_err(err)
}

fn poly_to_strings(p: &QPoly) -> Vec<String> {
    p.coeffs().iter().map(format_rational).collect()
}

fn moments_to_strings(m: &MomentSeq) -> PyResult<Vec<String>> {
    Ok(m.to_rationals()
        .map_err(err)?
        .iter()
        .map(format_rational)
        .collect())
}

fn moments_from_strings(ms: &[String]) -> PyResult<MomentSeq> {
    let rs = ms
        .iter()
        .map(|s| parse_rat(s))
        .collect::<PyResult<Vec<_>>>()?;
    Ok(MomentSeq::from_rationals(&rs))
}

fn parse_weight(kind: &str, mu: Option<&str>) -> PyResult<Weight> {
    Ok(match kind {
        "tq" => Weight::TQ,
        "tqneg" => Weight::TQNeg,
        "tminusone" => Weight::TMinusOne,
        "thatmu" => Weight::THatMu {
            mu: mu.map(parse_rat).transpose()?,
        },
        other => {
            return Err(PyValueError::new_err(format!(
                "unknown weight kind {other:?}; expected tq, tqneg, thatmu, or tminusone"
            )))
        }
    })
}

fn parse_atom_mode(s: &str) -> PyResult<AtomMode> {
    match s {
        "paper" => Ok(AtomMode::Paper),
        "derived" => Ok(AtomMode::Derived),
        other => Err(PyValueError::new_err(format!(
            "unknown atom mode {other:?}; expected paper or derived"
        ))),
    }
}

fn regime(signed: bool) -> Regime {
    if signed {
        Regime::Signed
    } else {
        Regime::Nonneg
    }
}

fn word_from_letters(letters: Vec<(usize, bool)>) -> Word {
    Word(
        letters
            .into_iter()
            .map(|(i, star)| if star { Letter::c_star(i) } else { Letter::c(i) })
            .collect(),
    )
}

/// A pairing of {1..n} with its crossing and block statistics.
#[pyclass(name = "Pairing")]
struct PyPairing {
    inner: pairings::Pairing,
}

#[pymethods]
impl PyPairing {
    #[new]
    fn new(pairs: Vec<(usize, usize)>) -> PyResult<Self> {
        Ok(PyPairing {
            inner: pairings::Pairing::new(pairs).map_err(err)?,
        })
    }

    #[getter]
    fn pairs(&self) -> Vec<(usize, usize)> {
        self.inner.pairs().to_vec()
    }

    #[getter]
    fn crossings(&self) -> usize {
        self.inner.crossing_count()
    }

    #[getter]
    fn blocks(&self) -> usize {
        self.inner.block_count()
    }

    #[getter]
    fn noncrossing(&self) -> bool {
        self.inner.is_noncrossing()
    }

    /// (outer, inner) block counts; only defined for non-crossing pairings.
    fn inner_outer(&self) -> PyResult<(usize, usize)> {
        self.inner.inner_outer_counts().map_err(err)
    }

    fn adjoint(&self) -> PyPairing {
        PyPairing {
            inner: self.inner.adjoint(),
        }
    }

    /// Weight value as polynomial coefficients in q, constant term first.
    #[pyo3(signature = (kind, mu=None))]
    fn weight(&self, kind: &str, mu: Option<&str>) -> PyResult<Vec<String>> {
        let w = parse_weight(kind, mu)?;
        Ok(poly_to_strings(&eval_weight(&w, &self.inner)))
    }

    fn __repr__(&self) -> String {
        format!("Pairing({:?})", self.inner.pairs())
    }
}

#[pyfunction]
fn enumerate_pairings(n: usize) -> PyResult<Vec<PyPairing>> {
    Ok(pairings::enumerate_pairings(n)
        .map_err(err)?
        .map(|p| PyPairing { inner: p })
        .collect())
}

#[pyfunction]
fn catalan(r: usize) -> u64 {
    pairings::catalan(r)
}

#[pyfunction]
fn double_factorial(n: usize) -> u64 {
    pairings::double_factorial(n)
}

/// Moments m_1..m_order of the distribution of c + c* at rational q.
#[pyfunction]
fn mu_q_moments_py(q: &str, order: usize) -> PyResult<Vec<String>> {
    let q = parse_rat(q)?;
    moments_to_strings(&mu_q_moments(&q, order).map_err(err)?)
}

#[pyfunction]
fn mu_ab_moments_py(alpha: &str, beta2: &str, order: usize) -> PyResult<Vec<String>> {
    let alpha = parse_rat(alpha)?;
    let beta2 = parse_rat(beta2)?;
    moments_to_strings(&mu_ab_moments(&alpha, &beta2, order).map_err(err)?)
}

#[pyfunction]
fn free_convolve_py(a: Vec<String>, b: Vec<String>) -> PyResult<Vec<String>> {
    let a = moments_from_strings(&a)?;
    let b = moments_from_strings(&b)?;
    moments_to_strings(&free_convolve(&a, &b).map_err(err)?)
}

#[pyfunction]
fn moments_to_cumulants_py(m: Vec<String>) -> PyResult<Vec<String>> {
    let m = moments_from_strings(&m)?;
    let k = moments_to_cumulants(&m);
    moments_to_strings(&MomentSeq(k.0))
}

#[pyfunction]
fn cumulants_to_moments_py(k: Vec<String>) -> PyResult<Vec<String>> {
    let k = moments_from_strings(&k)?;
    moments_to_strings(&cumulants_to_moments(&CumulantSeq(k.0)))
}

/// Checks the convolution identity; returns (q, lhs, rhs, equal).
#[pyfunction]
fn verify_theorem6_py(
    q1: &str,
    q2: &str,
    order: usize,
) -> PyResult<(String, Vec<String>, Vec<String>, bool)> {
    let rep = verify_theorem6(&parse_rat(q1)?, &parse_rat(q2)?, order).map_err(err)?;
    Ok((
        format_rational(&rep.q),
        rep.lhs.iter().map(format_rational).collect(),
        rep.rhs.iter().map(format_rational).collect(),
        rep.equal,
    ))
}

/// Returns (lhs coefficients, rhs coefficients, equal) for the
/// alternating-sum identity at the given half-size r.
#[pyfunction]
fn verify_corollary7_py(r: usize) -> PyResult<(Vec<String>, Vec<String>, bool)> {
    let (lhs, rhs, equal) = verify_corollary7(r).map_err(err)?;
    Ok((poly_to_strings(&lhs), poly_to_strings(&rhs), equal))
}

/// Vacuum expectation of a word of (index, star) letters, as polynomial
/// coefficients in q.
#[pyfunction]
#[pyo3(signature = (letters, signed=false))]
fn vacuum_moment_py(letters: Vec<(usize, bool)>, signed: bool) -> Vec<String> {
    poly_to_strings(&vacuum_moment(&word_from_letters(letters), regime(signed)))
}

/// The same moment computed as a pairing sum with the matching weight.
#[pyfunction]
#[pyo3(signature = (letters, signed=false))]
fn word_moment_py(letters: Vec<(usize, bool)>, signed: bool) -> Vec<String> {
    let weight = if signed { Weight::TQNeg } else { Weight::TQ };
    poly_to_strings(&word_moment(
        &word_from_letters(letters),
        &Kernel::Identity,
        &CovarianceQ::fock(),
        &weight,
    ))
}

/// PSD verdicts for the n-particle blocked-basis Gram at each q-point;
/// returns (dim, all_psd).
#[pyfunction]
#[pyo3(signature = (n, indices, qpoints, signed=false))]
fn fock_gram_psd_py(
    n: usize,
    indices: usize,
    qpoints: Vec<String>,
    signed: bool,
) -> PyResult<(usize, bool)> {
    let qs = qpoints
        .iter()
        .map(|s| parse_rat(s))
        .collect::<PyResult<Vec<_>>>()?;
    let rep = fock_gram_psd(n, indices, &qs, regime(signed)).map_err(err)?;
    Ok((rep.dim, rep.all_psd()))
}

#[pyfunction]
fn symgroup_gram_psd_py(r: usize, qpoints: Vec<String>) -> PyResult<(usize, bool)> {
    let qs = qpoints
        .iter()
        .map(|s| parse_rat(s))
        .collect::<PyResult<Vec<_>>>()?;
    let rep = symgroup_gram_psd(&Weight::TQ, r, &qs).map_err(err)?;
    Ok((rep.dim, rep.all_psd()))
}

#[pyfunction]
fn hankel_psd_py(moments: Vec<String>) -> PyResult<bool> {
    let ms = moments
        .iter()
        .map(|s| parse_rat(s))
        .collect::<PyResult<Vec<_>>>()?;
    Ok(hankel_psd(&ms).map_err(err)?.psd)
}

/// Continuous density of mu_q at a point t (atoms excluded).
#[pyfunction]
#[pyo3(signature = (q, t, atom_mode="derived"))]
fn mu_q_density(q: &str, t: f64, atom_mode: &str) -> PyResult<f64> {
    let spec = make_mu_q(&parse_rat(q)?, parse_atom_mode(atom_mode)?).map_err(err)?;
    Ok(density_eval(&spec, t))
}

/// Atoms of mu_q as (location, mass) tuples.
#[pyfunction]
#[pyo3(signature = (q, atom_mode="derived"))]
fn mu_q_atoms(q: &str, atom_mode: &str) -> PyResult<Vec<(f64, f64)>> {
    let spec = make_mu_q(&parse_rat(q)?, parse_atom_mode(atom_mode)?).map_err(err)?;
    Ok(spec.atoms)
}

/// Quadrature moments of the mu_q density plus atoms; returns
/// (moments, total_mass, error_estimate).
#[pyfunction]
#[pyo3(signature = (q, order, points=256, atom_mode="derived"))]
fn mu_q_quad_moments(
    q: &str,
    order: usize,
    points: usize,
    atom_mode: &str,
) -> PyResult<(Vec<f64>, f64, f64)> {
    let spec = make_mu_q(&parse_rat(q)?, parse_atom_mode(atom_mode)?).map_err(err)?;
    let qm = quad_moments(&spec, order, points).map_err(err)?;
    Ok((qm.moments, qm.total_mass, qm.error_estimate))
}

#[pymodule]
fn pairweave_py(_py: Python<'_>, m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPairing>()?;
    m.add_function(wrap_pyfunction!(enumerate_pairings, m)?)?;
    m.add_function(wrap_pyfunction!(catalan, m)?)?;
    m.add_function(wrap_pyfunction!(double_factorial, m)?)?;
    m.add_function(wrap_pyfunction!(mu_q_moments_py, m)?)?;
    m.add_function(wrap_pyfunction!(mu_ab_moments_py, m)?)?;
    m.add_function(wrap_pyfunction!(free_convolve_py, m)?)?;
    m.add_function(wrap_pyfunction!(moments_to_cumulants_py, m)?)?;
    m.add_function(wrap_pyfunction!(cumulants_to_moments_py, m)?)?;
    m.add_function(wrap_pyfunction!(verify_theorem6_py, m)?)?;
    m.add_function(wrap_pyfunction!(verify_corollary7_py, m)?)?;
    m.add_function(wrap_pyfunction!(vacuum_moment_py, m)?)?;
    m.add_function(wrap_pyfunction!(word_moment_py, m)?)?;
    m.add_function(wrap_pyfunction!(fock_gram_psd_py, m)?)?;
    m.add_function(wrap_pyfunction!(symgroup_gram_psd_py, m)?)?;
    m.add_function(wrap_pyfunction!(hankel_psd_py, m)?)?;
    m.add_function(wrap_pyfunction!(mu_q_density, m)?)?;
    m.add_function(wrap_pyfunction!(mu_q_atoms, m)?)?;
    m.add_function(wrap_pyfunction!(mu_q_quad_moments, m)?)?;
    Ok(())
}
