//! Python bindings. Filled in once the core layers are complete.

use pyo3::prelude::*;

#[pymodule]
fn lasagna_py(_m: &Bound<'_, PyModule>) -> PyResult<()> {
    Ok(())
}
