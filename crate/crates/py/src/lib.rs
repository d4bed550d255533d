//! Python bindings: complexes, cochains, products, discriminants and the
//! volume applications. Exact rationals cross the boundary as strings
//! ("p/q"); exterior values as lists of (1-based blade, coefficient) pairs.

use polycup_core::complex::{CellSpec, CoboundaryWitness, Cochain, PComplex};
use polycup_core::cup::{all_levels, cech_cup, cup, is_convenient, sample_convenient};
use polycup_core::discriminant::{classify_point, discriminant, wall_crossing_delta};
use polycup_core::geom::{
    face_complex, in_tangent_ring, minkowski_sum_complex, mixed_volume_on, vol_cocycle,
    volume_by_cup,
};
use polycup_core::json;
use polycup_core::rat::{format_rat, parse_rat, rat_int, Rat, Vector};
use polycup_core::ring::{ExtElement, RingElement, RingKind};
use polycup_core::subdivision::{
    build_subdivision, res as res_impl, res_product_defect as res_product_defect_impl,
};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use std::sync::Arc;

fn value_error<E: std::fmt::Display>(e: E) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Accept an exact coordinate as either an int or a "p/q" string.
fn coord_from_py(item: &Bound<'_, PyAny>) -> PyResult<Rat> {
    if let Ok(n) = item.extract::<i64>() {
        return Ok(rat_int(n));
    }
    let text: String = item.extract()?;
    parse_rat(&text).map_err(value_error)
}

fn vector_from_py(items: Vec<Bound<'_, PyAny>>) -> PyResult<Vector> {
    items.iter().map(coord_from_py).collect()
}

fn points_from_py(rows: Vec<Vec<Bound<'_, PyAny>>>) -> PyResult<Vec<Vector>> {
    rows.into_iter().map(vector_from_py).collect()
}

fn vector_to_py(v: &[Rat]) -> Vec<String> {
    v.iter().map(format_rat).collect()
}

fn ring_from_name(name: &str, ambient: usize) -> PyResult<RingKind> {
    json::ring_kind_from_name(name, ambient).map_err(value_error)
}

fn element_to_py(py: Python<'_>, v: &RingElement) -> PyResult<Py<PyAny>> {
    match v {
        RingElement::Scalar(c) => Ok(format_rat(c).into_pyobject(py)?.into_any().unbind()),
        RingElement::Exterior(e) => {
            let terms: Vec<(Vec<usize>, String)> = e
                .terms()
                .map(|(blade, c)| (blade.iter().map(|i| i + 1).collect(), format_rat(c)))
                .collect();
            Ok(terms.into_pyobject(py)?.into_any().unbind())
        }
    }
}

fn element_from_py(item: &Bound<'_, PyAny>, ring: RingKind) -> PyResult<RingElement> {
    match ring {
        RingKind::Rational => Ok(RingElement::Scalar(coord_from_py(item)?)),
        RingKind::Exterior(n) => {
            let terms: Vec<(Vec<usize>, Bound<'_, PyAny>)> = item.extract()?;
            let mut e = ExtElement::zero(n);
            for (blade, coeff) in terms {
                let blade0: Vec<usize> = blade
                    .iter()
                    .map(|&i| {
                        if i == 0 || i > n {
                            Err(value_error(format!("blade index {i} out of range 1..={n}")))
                        } else {
                            Ok(i - 1)
                        }
                    })
                    .collect::<PyResult<_>>()?;
                e = e.add(&ExtElement::term(n, blade0, coord_from_py(&coeff)?));
            }
            Ok(RingElement::Exterior(e))
        }
    }
}

/// A validated polyhedral complex.
#[pyclass(name = "PComplex", frozen)]
struct PyPComplex {
    inner: Arc<PComplex>,
}

#[pymethods]
impl PyPComplex {
    /// Build from vertex coordinates and cell vertex lists (orientation
    /// tuples chosen deterministically). Coordinates are ints or "p/q".
    #[new]
    fn new(
        dim: usize,
        vertices: Vec<Vec<Bound<'_, PyAny>>>,
        cells: Vec<Vec<usize>>,
    ) -> PyResult<Self> {
        let vertices = points_from_py(vertices)?;
        let specs = cells.into_iter().map(CellSpec::new).collect();
        let inner = PComplex::build(dim, vertices, specs).map_err(value_error)?;
        Ok(PyPComplex { inner })
    }

    /// Build from the JSON complex format (with explicit orientations).
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let file: json::ComplexFile = serde_json::from_str(text).map_err(value_error)?;
        let inner = json::complex_from_file(&file).map_err(value_error)?;
        Ok(PyPComplex { inner })
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string_pretty(&json::complex_to_file(&self.inner)).map_err(value_error)
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    #[getter]
    fn num_cells(&self) -> usize {
        self.inner.num_cells()
    }

    fn cell_vertices(&self, cell: usize) -> Vec<usize> {
        self.inner.cell(cell).vertices.clone()
    }

    fn cell_dim(&self, cell: usize) -> usize {
        self.inner.cell(cell).dim
    }

    fn cells_of_dim(&self, p: usize) -> Vec<usize> {
        self.inner.cells_of_dim(p).to_vec()
    }

    fn cell_id(&self, vertices: Vec<usize>) -> Option<usize> {
        self.inner.cell_id_by_vertices(&vertices)
    }

    fn cohomology_rank(&self, p: usize) -> usize {
        self.inner.cohomology_rank(p)
    }

    fn cohomology_ranks(&self) -> Vec<usize> {
        (0..=self.inner.max_dim())
            .map(|p| self.inner.cohomology_rank(p))
            .collect()
    }

    /// Primitive integer normals of the discriminant hyperplanes.
    fn discriminant(&self) -> Vec<Vec<String>> {
        discriminant(&self.inner)
            .iter()
            .map(|h| vector_to_py(&h.line))
            .collect()
    }

    /// Deterministically sample a convenient covector.
    fn sample_convenient(&self, seed: u64) -> PyResult<Vec<String>> {
        let v = sample_convenient(&self.inner, seed).map_err(value_error)?;
        Ok(vector_to_py(&v))
    }

    fn is_convenient(&self, v: Vec<Bound<'_, PyAny>>) -> PyResult<bool> {
        let v = vector_from_py(v)?;
        Ok(is_convenient(&self.inner, &v, &all_levels(&self.inner)).is_convenient())
    }

    /// Classify a parameter point: ("convenient" | "unconvenient" |
    /// "uncommon" | "mixed", hyperplane normals containing it).
    fn classify_point(&self, u: Vec<Bound<'_, PyAny>>) -> PyResult<(String, Vec<Vec<String>>)> {
        let u = vector_from_py(u)?;
        let c = classify_point(&self.inner, &u);
        let name = match c.class() {
            polycup_core::discriminant::PointClass::Convenient => "convenient",
            polycup_core::discriminant::PointClass::OnUnconvenientHyperplane => "unconvenient",
            polycup_core::discriminant::PointClass::Uncommon => "uncommon",
            polycup_core::discriminant::PointClass::Mixed => "mixed",
        };
        let planes = c
            .on_hyperplanes
            .iter()
            .map(|(l, _)| vector_to_py(l))
            .collect();
        Ok((name.to_string(), planes))
    }

    fn __repr__(&self) -> String {
        format!(
            "PComplex(dim={}, cells={})",
            self.inner.dim(),
            self.inner.num_cells()
        )
    }
}

/// A cochain on a complex, valued in "Q" or "ext".
#[pyclass(name = "Cochain")]
#[derive(Clone)]
struct PyCochain {
    inner: Cochain,
}

#[pymethods]
impl PyCochain {
    #[new]
    fn new(complex: &PyPComplex, degree: usize, ring: &str) -> PyResult<Self> {
        let ring = ring_from_name(ring, complex.inner.dim())?;
        Ok(PyCochain {
            inner: Cochain::zero(&complex.inner, degree, ring),
        })
    }

    #[staticmethod]
    fn from_json(complex: &PyPComplex, text: &str) -> PyResult<Self> {
        let file: json::CochainFile = serde_json::from_str(text).map_err(value_error)?;
        let inner = json::cochain_from_file(&file, &complex.inner).map_err(value_error)?;
        Ok(PyCochain { inner })
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string_pretty(&json::cochain_to_file(&self.inner)).map_err(value_error)
    }

    #[getter]
    fn degree(&self) -> usize {
        self.inner.degree()
    }

    #[getter]
    fn ring(&self) -> &'static str {
        json::ring_kind_name(self.inner.ring())
    }

    /// Set the value on a cell: a "p/q" string or int for the rational
    /// ring, a list of (blade, coeff) pairs for the exterior ring.
    fn set(&mut self, cell: usize, value: &Bound<'_, PyAny>) -> PyResult<()> {
        let v = element_from_py(value, self.inner.ring())?;
        self.inner.set(cell, v).map_err(value_error)
    }

    fn value(&self, py: Python<'_>, cell: usize) -> PyResult<Py<PyAny>> {
        element_to_py(py, &self.inner.value(cell))
    }

    fn values(&self, py: Python<'_>) -> PyResult<Vec<(usize, Py<PyAny>)>> {
        self.inner
            .values()
            .map(|(c, v)| Ok((c, element_to_py(py, v)?)))
            .collect()
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    fn is_cocycle(&self) -> bool {
        self.inner.is_cocycle()
    }

    fn coboundary(&self) -> PyCochain {
        PyCochain {
            inner: self.inner.coboundary(),
        }
    }

    /// Exact coboundary decision: (is_coboundary, witness or None).
    fn coboundary_witness(&self) -> (bool, Option<PyCochain>) {
        match self.inner.coboundary_witness() {
            CoboundaryWitness::Witness(w) => (true, Some(PyCochain { inner: w })),
            CoboundaryWitness::ZeroInDegreeZero => (true, None),
            CoboundaryWitness::No => (false, None),
        }
    }

    fn in_tangent_ring(&self) -> bool {
        in_tangent_ring(&self.inner)
    }

    fn add(&self, other: &PyCochain) -> PyCochain {
        PyCochain {
            inner: self.inner.add(&other.inner),
        }
    }

    fn sub(&self, other: &PyCochain) -> PyCochain {
        PyCochain {
            inner: self.inner.sub(&other.inner),
        }
    }

    fn neg(&self) -> PyCochain {
        PyCochain {
            inner: self.inner.neg(),
        }
    }

    fn __eq__(&self, other: &PyCochain) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!(
            "Cochain(degree={}, ring={}, support={})",
            self.inner.degree(),
            json::ring_kind_name(self.inner.ring()),
            self.inner.values().count()
        )
    }
}

/// The volume cochain: q! times the multivector of each q-cell.
#[pyfunction]
fn vol_cochain(complex: &PyPComplex, q: usize) -> PyCochain {
    PyCochain {
        inner: vol_cocycle(&complex.inner, q),
    }
}

/// The parameterized product of two cochains.
#[pyfunction(name = "cup")]
fn cup_py(a: &PyCochain, b: &PyCochain, v: Vec<Bound<'_, PyAny>>) -> PyResult<PyCochain> {
    let v = vector_from_py(v)?;
    Ok(PyCochain {
        inner: cup(&a.inner, &b.inner, &v).map_err(value_error)?,
    })
}

/// The ordered-vertex product on a simplicial complex.
#[pyfunction(name = "cech_cup")]
fn cech_cup_py(a: &PyCochain, b: &PyCochain, order: Vec<usize>) -> PyResult<PyCochain> {
    Ok(PyCochain {
        inner: cech_cup(&a.inner, &b.inner, &order).map_err(value_error)?,
    })
}

/// Vertex ids sorted by ascending value of the covector.
#[pyfunction]
fn vertex_order(complex: &PyPComplex, v: Vec<Bound<'_, PyAny>>) -> PyResult<Vec<usize>> {
    let v = vector_from_py(v)?;
    Ok(polycup_core::cup::vertex_order_by_covector(
        &complex.inner,
        &v,
    ))
}

/// The exact correction cochain for a segment crossing one wall.
#[pyfunction(name = "wall_crossing_delta")]
fn wall_crossing_delta_py(
    a: &PyCochain,
    b: &PyCochain,
    u: Vec<Bound<'_, PyAny>>,
    v: Vec<Bound<'_, PyAny>>,
) -> PyResult<PyCochain> {
    let u = vector_from_py(u)?;
    let v = vector_from_py(v)?;
    Ok(PyCochain {
        inner: wall_crossing_delta(&a.inner, &b.inner, &u, &v).map_err(value_error)?,
    })
}

/// Normalized mixed volume of n polytopes (vertex lists) in dimension n.
#[pyfunction]
#[pyo3(signature = (summands, v=None, seed=None))]
fn mixed_volume(
    summands: Vec<Vec<Vec<Bound<'_, PyAny>>>>,
    v: Option<Vec<Bound<'_, PyAny>>>,
    seed: Option<u64>,
) -> PyResult<String> {
    let polys: Vec<Vec<Vector>> = summands
        .into_iter()
        .map(points_from_py)
        .collect::<PyResult<_>>()?;
    let (x, label) = minkowski_sum_complex(&polys).map_err(value_error)?;
    let v = match (v, seed) {
        (Some(v), None) => vector_from_py(v)?,
        (None, seed) => sample_convenient(&x, seed.unwrap_or(0)).map_err(value_error)?,
        _ => return Err(value_error("pass either v or seed, not both")),
    };
    let value = mixed_volume_on(&x, &label, polys.len(), &v).map_err(value_error)?;
    Ok(format_rat(&value))
}

/// Exact volume of a polytope by iterated products, with the triangulation
/// cross-check: returns (volume, volume_by_triangulation).
#[pyfunction]
#[pyo3(signature = (points, v=None, seed=None))]
fn polytope_volume(
    points: Vec<Vec<Bound<'_, PyAny>>>,
    v: Option<Vec<Bound<'_, PyAny>>>,
    seed: Option<u64>,
) -> PyResult<(String, String)> {
    let points = points_from_py(points)?;
    let v = match (v, seed) {
        (Some(v), None) => vector_from_py(v)?,
        (None, seed) => {
            let x = face_complex(&points).map_err(value_error)?;
            sample_convenient(&x, seed.unwrap_or(0)).map_err(value_error)?
        }
        _ => return Err(value_error("pass either v or seed, not both")),
    };
    let (by_cup, by_tri) = volume_by_cup(&points, &v).map_err(value_error)?;
    Ok((format_rat(&by_cup), format_rat(&by_tri)))
}

/// Push a cochain from a subdivision to the coarse complex.
#[pyfunction]
fn res(fine: &PyPComplex, coarse: &PyPComplex, cochain: &PyCochain) -> PyResult<PyCochain> {
    let map = build_subdivision(&fine.inner, &coarse.inner).map_err(value_error)?;
    Ok(PyCochain {
        inner: res_impl(&cochain.inner, &map),
    })
}

/// Product defect of the push-forward: (defect, is_coboundary, witness).
#[pyfunction]
fn res_product_defect(
    fine: &PyPComplex,
    coarse: &PyPComplex,
    a: &PyCochain,
    b: &PyCochain,
    v: Vec<Bound<'_, PyAny>>,
) -> PyResult<(PyCochain, bool, Option<PyCochain>)> {
    let map = build_subdivision(&fine.inner, &coarse.inner).map_err(value_error)?;
    let v = vector_from_py(v)?;
    let (defect, witness) =
        res_product_defect_impl(&a.inner, &b.inner, &v, &map).map_err(value_error)?;
    let (ok, w) = match witness {
        CoboundaryWitness::Witness(w) => (true, Some(PyCochain { inner: w })),
        CoboundaryWitness::ZeroInDegreeZero => (true, None),
        CoboundaryWitness::No => (false, None),
    };
    Ok((PyCochain { inner: defect }, ok, w))
}

#[pymodule]
fn polycup(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPComplex>()?;
    m.add_class::<PyCochain>()?;
    m.add_function(wrap_pyfunction!(vol_cochain, m)?)?;
    m.add_function(wrap_pyfunction!(cup_py, m)?)?;
    m.add_function(wrap_pyfunction!(cech_cup_py, m)?)?;
    m.add_function(wrap_pyfunction!(vertex_order, m)?)?;
    m.add_function(wrap_pyfunction!(wall_crossing_delta_py, m)?)?;
    m.add_function(wrap_pyfunction!(mixed_volume, m)?)?;
    m.add_function(wrap_pyfunction!(polytope_volume, m)?)?;
    m.add_function(wrap_pyfunction!(res, m)?)?;
    m.add_function(wrap_pyfunction!(res_product_defect, m)?)?;
    Ok(())
}
