use pyo3::prelude::*;

#[pymodule]
fn fpgroups_py(_m: &Bound<'_, PyModule>) -> PyResult<()> {
    Ok(())
}
