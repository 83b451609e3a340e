//! Python bindings for the spherical pair toolkit.
//!
//! Rationals cross the boundary as strings `"p/q"`.

use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;
use spherical_core::exponents::{self, ComplexFunctional, ExponentData};
use spherical_core::linalg::{self, Vector};
use spherical_core::spherical::{self, SphericalPair, SphericalRootDatum};
use spherical_core::{catalog, cli, induction, wavefront};

create_exception!(spherical_py, SphericalError, PyException);

fn err(e: spherical_core::Error) -> PyErr {
    SphericalError::new_err(e.to_string())
}

fn strs(v: &[linalg::Q]) -> Vec<String> {
    linalg::fmt_vec(v)
}

fn parse_vec(v: &[String]) -> PyResult<Vector> {
    v.iter().map(|s| linalg::parse_q(s).map_err(PyValueError::new_err)).collect()
}

/// A spherical pair in standard position with its spherical root data.
#[pyclass(frozen)]
struct Pair {
    sp: SphericalPair,
    srd: SphericalRootDatum,
}

impl Pair {
    fn root_name(&self, r: usize) -> String {
        let rs = self.sp.g.roots();
        rs.name_of(rs.root(r))
    }

    fn simple_from_names(&self, names: &[String]) -> PyResult<Vec<usize>> {
        let simple = self.sp.g.roots().simple();
        names
            .iter()
            .map(|n| {
                n.strip_prefix('a')
                    .and_then(|k| k.parse::<usize>().ok())
                    .and_then(|k| k.checked_sub(1))
                    .and_then(|k| simple.get(k).copied())
                    .ok_or_else(|| PyValueError::new_err(format!("unknown simple root {n}")))
            })
            .collect()
    }
}

#[pymethods]
impl Pair {
    #[staticmethod]
    fn from_catalog(name: &str) -> PyResult<Self> {
        let p = catalog::build(name).map_err(err)?;
        let sp = spherical::standardize(&p.g, &p.h).map_err(err)?;
        let srd = spherical::spherical_roots(&sp).map_err(err)?;
        Ok(Pair { sp, srd })
    }

    /// Loads a pair file (JSON text with a `format: 1` header).
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let pf = cli::parse_pair_file(text).map_err(|e| PyValueError::new_err(format!("{e:?}")))?;
        let (g, h) = cli::load_pair(&pf).map_err(|e| match e {
            cli::CliError::Domain(e) => err(e),
            cli::CliError::Parse(m) => PyValueError::new_err(m),
        })?;
        let sp = spherical::standardize(&g, &h).map_err(err)?;
        let srd = spherical::spherical_roots(&sp).map_err(err)?;
        Ok(Pair { sp, srd })
    }

    fn dim(&self) -> usize {
        self.sp.g.dim()
    }

    fn h_dim(&self) -> usize {
        self.sp.h.dim()
    }

    fn rank(&self) -> usize {
        self.srd.rank()
    }

    fn edge_dim(&self) -> usize {
        self.srd.edge.len()
    }

    fn f_q(&self) -> Vec<String> {
        self.sp.f_q.iter().map(|&r| self.root_name(r)).collect()
    }

    fn spherical_roots(&self) -> Vec<String> {
        self.srd.spherical_roots.iter().map(|w| self.sp.g.roots().name_of(w)).collect()
    }

    fn monoid_generators(&self) -> Vec<String> {
        self.srd.generators.iter().map(|w| self.sp.g.roots().name_of(w)).collect()
    }

    fn is_unimodular(&self) -> bool {
        self.sp.is_unimodular()
    }

    fn is_wavefront(&self) -> PyResult<bool> {
        wavefront::is_wavefront(&self.sp, &self.srd).map_err(err)
    }

    /// `ρ_Q` on the adapted basis of `a_Z`.
    fn rho_q(&self) -> Vec<String> {
        strs(&exponents::rho_q(&self.sp, &self.srd))
    }

    /// Basis of `h_I` for `I` given by indices into the spherical roots.
    fn degenerate(&self, subset: Vec<usize>) -> PyResult<Vec<Vec<String>>> {
        let (h_i, v) = spherical::verify_degeneration(&self.sp, &self.srd, &subset).map_err(err)?;
        if !v.all() {
            return Err(SphericalError::new_err(format!("degeneration check failed: {v:?}")));
        }
        Ok(h_i.basis().iter().map(|b| strs(b)).collect())
    }

    /// `(F_I, interlaced)` for each subset of the spherical roots.
    fn interlacing(&self) -> PyResult<Vec<(Vec<usize>, Vec<String>, bool)>> {
        let rep = wavefront::report(&self.sp, &self.srd).map_err(err)?;
        Ok(rep
            .per_subset
            .iter()
            .map(|i| (i.subset.clone(), i.f.iter().map(|&r| self.root_name(r)).collect(), i.interlaced_ok))
            .collect())
    }

    /// Spherical roots of the Levi-induced pair and whether the cone identity holds.
    fn induce(&self, simple: Vec<String>) -> PyResult<(Vec<String>, bool, bool)> {
        let f = self.simple_from_names(&simple)?;
        let ip = induction::induce(&self.sp, &f).map_err(err)?;
        let srd_f = spherical::spherical_roots(&ip.pair).map_err(err)?;
        let cone = induction::induced_cone_check(&self.sp, &self.srd, &f).map_err(err)?;
        let uni = ip.g_f.is_unimodular(&ip.h_f).map_err(err)?;
        let names = srd_f.spherical_roots.iter().map(|w| ip.g_f.roots().name_of(w)).collect();
        Ok((names, cone, uni))
    }

    /// Temperedness of real exponent data given on the adapted basis.
    /// Returns `(tempered, strong, optimal subsets)`.
    #[pyo3(signature = (e_lead, chi=Vec::new()))]
    fn exponents(&self, e_lead: Vec<Vec<String>>, chi: Vec<String>) -> PyResult<(bool, bool, Vec<Vec<usize>>)> {
        let chi = ComplexFunctional::real(parse_vec(&chi)?);
        let lead = e_lead
            .iter()
            .map(|l| parse_vec(l).map(ComplexFunctional::real))
            .collect::<PyResult<Vec<_>>>()?;
        let ed = ExponentData::new(&self.srd, chi, lead, 0).map_err(err)?;
        let tempered = exponents::is_tempered(&self.sp, &self.srd, &ed);
        let strong = exponents::strong_inequality(&self.sp, &self.srd, &ed);
        let optimal = if tempered {
            let rep = exponents::optimal_pairs(&self.sp, &self.srd, &ed).map_err(err)?;
            rep.optimal.into_iter().map(|o| o.subset).collect()
        } else {
            Vec::new()
        };
        Ok((tempered, strong, optimal))
    }

    fn __repr__(&self) -> String {
        format!("Pair(dim={}, rank={}, S={:?})", self.dim(), self.rank(), self.spherical_roots())
    }
}

#[pyfunction]
fn catalog_names() -> Vec<&'static str> {
    catalog::entries().iter().map(|e| e.name).collect()
}

/// Runs the command line and returns `(exit code, stdout, stderr)`.
#[pyfunction]
fn run(args: Vec<String>) -> (i32, String, String) {
    cli::run(args)
}

#[pymodule]
fn spherical_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Pair>()?;
    m.add_function(wrap_pyfunction!(catalog_names, m)?)?;
    m.add_function(wrap_pyfunction!(run, m)?)?;
    m.add("SphericalError", m.py().get_type::<SphericalError>())?;
    Ok(())
}
